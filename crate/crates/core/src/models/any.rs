use super::{AbsorbingChainCT, AbsorbingChainDT, ChainKind};
use nalgebra::DMatrix;

/// Either kind of explicit chain, for code paths chosen at run time.
#[derive(Debug, Clone)]
pub enum AnyChain {
    Dt(AbsorbingChainDT),
    Ct(AbsorbingChainCT),
}

impl AnyChain {
    pub fn kind(&self) -> ChainKind {
        match self {
            AnyChain::Dt(_) => ChainKind::Dt,
            AnyChain::Ct(_) => ChainKind::Ct,
        }
    }

    pub fn dim(&self) -> usize {
        self.q().nrows()
    }

    pub fn q(&self) -> &DMatrix<f64> {
        match self {
            AnyChain::Dt(c) => c.q(),
            AnyChain::Ct(c) => c.q(),
        }
    }
}

impl From<AbsorbingChainDT> for AnyChain {
    fn from(c: AbsorbingChainDT) -> Self {
        AnyChain::Dt(c)
    }
}

impl From<AbsorbingChainCT> for AnyChain {
    fn from(c: AbsorbingChainCT) -> Self {
        AnyChain::Ct(c)
    }
}
