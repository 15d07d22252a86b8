use crate::error::{Error, Result};
use crate::models::{
    doeblinize_ct, doeblinize_dt, make_contact_complete, make_loopy_chain, make_mm1k_chain,
    parse_chain, uniformize, AnyChain,
};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Loopy { epsilon: f64 },
    Mm1 { rho: f64, capacity: usize },
    Contact { nodes: usize, lambda: f64 },
    File(PathBuf),
}

/// A chain family with parameters plus the optional transforms applied on
/// top. Written as `loopy:<eps>`, `mm1:<rho>:<capacity>`,
/// `contact:<nodes>:<lambda>` or `file:<path>`, optionally followed by
/// `+doeblin=<a>` and `+uniformize`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    pub family: Family,
    /// `Q -> a Q` for DT chains, `Q -> Q - a I` for CT chains.
    pub doeblin: Option<f64>,
    /// Replace a CT chain by its uniformized DT chain (after Doeblinization).
    pub uniformize: bool,
}

impl ChainSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            doeblin: None,
            uniformize: false,
        }
    }

    pub fn with_doeblin(mut self, alpha: f64) -> Self {
        self.doeblin = Some(alpha);
        self
    }

    pub fn build(&self) -> Result<AnyChain> {
        let mut chain: AnyChain = match &self.family {
            Family::Loopy { epsilon } => make_loopy_chain(*epsilon)?.into(),
            Family::Mm1 { rho, capacity } => make_mm1k_chain(*rho, *capacity)?.into(),
            Family::Contact { nodes, lambda } => make_contact_complete(*nodes, *lambda)?.into(),
            Family::File(path) => parse_chain(&std::fs::read_to_string(path)?)?,
        };
        if let Some(alpha) = self.doeblin {
            chain = match chain {
                AnyChain::Dt(c) => doeblinize_dt(&c, alpha)?.into(),
                AnyChain::Ct(c) => doeblinize_ct(&c, alpha)?.into(),
            };
        }
        if self.uniformize {
            chain = match chain {
                AnyChain::Ct(c) => uniformize(&c)?.into(),
                AnyChain::Dt(_) => {
                    return Err(Error::Domain(
                        "only continuous-time chains can be uniformized".into(),
                    ))
                }
            };
        }
        Ok(chain)
    }

    /// Substitutes `value` for every `{}` in `template` and parses the result.
    pub fn from_template(template: &str, value: &str) -> Result<Self> {
        if !template.contains("{}") {
            return Err(Error::Parse(format!(
                "chain template `{template}` has no `{{}}` placeholder"
            )));
        }
        template.replace("{}", value).parse()
    }
}

fn number<T: FromStr>(field: Option<&str>, what: &str, spec: &str) -> Result<T> {
    field
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad or missing {what} in chain spec `{spec}`")))
}

impl FromStr for ChainSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('+');
        let base = parts.next().unwrap_or_default().trim();
        let mut fields = base.splitn(2, ':');
        let head = fields.next().unwrap_or_default();
        let rest = fields.next();
        let family = match head {
            "loopy" => {
                let mut p = rest.unwrap_or_default().split(':');
                let epsilon = number(p.next(), "epsilon", s)?;
                if p.next().is_some() {
                    return Err(Error::Parse(format!("too many fields in `{s}`")));
                }
                Family::Loopy { epsilon }
            }
            "mm1" => {
                let mut p = rest.unwrap_or_default().split(':');
                let rho = number(p.next(), "rho", s)?;
                let capacity = number(p.next(), "capacity", s)?;
                if p.next().is_some() {
                    return Err(Error::Parse(format!("too many fields in `{s}`")));
                }
                Family::Mm1 { rho, capacity }
            }
            "contact" => {
                let mut p = rest.unwrap_or_default().split(':');
                let nodes = number(p.next(), "node count", s)?;
                let lambda = number(p.next(), "infection rate", s)?;
                if p.next().is_some() {
                    return Err(Error::Parse(format!("too many fields in `{s}`")));
                }
                Family::Contact { nodes, lambda }
            }
            "file" => Family::File(PathBuf::from(rest.unwrap_or_default())),
            _ if !base.is_empty() && rest.is_none() => Family::File(PathBuf::from(base)),
            _ => return Err(Error::Parse(format!("unknown chain family in `{s}`"))),
        };
        let mut spec = ChainSpec::new(family);
        for modifier in parts {
            match modifier.trim().split_once('=') {
                Some(("doeblin", a)) => spec.doeblin = Some(number(Some(a), "Doeblin factor", s)?),
                None if modifier.trim() == "uniformize" => spec.uniformize = true,
                _ => {
                    return Err(Error::Parse(format!(
                        "unknown modifier `{modifier}` in `{s}`"
                    )))
                }
            }
        }
        Ok(spec)
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Loopy { epsilon } => write!(f, "loopy:{epsilon}")?,
            Family::Mm1 { rho, capacity } => write!(f, "mm1:{rho}:{capacity}")?,
            Family::Contact { nodes, lambda } => write!(f, "contact:{nodes}:{lambda}")?,
            Family::File(path) => write!(f, "file:{}", path.display())?,
        }
        if let Some(a) = self.doeblin {
            write!(f, "+doeblin={a}")?;
        }
        if self.uniformize {
            f.write_str("+uniformize")?;
        }
        Ok(())
    }
}
