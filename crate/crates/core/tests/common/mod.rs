#![allow(dead_code)]

use nalgebra::DMatrix;
use qsdkit::models::{AbsorbingChainCT, AbsorbingChainDT};
use rand::Rng;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

pub fn rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Random irreducible substochastic block with row sums drawn from
/// `[lo, hi]`. About a third of the off-diagonal entries are zeroed; draws
/// that break irreducibility are retried.
pub fn random_dt<R: Rng>(rng: &mut R, d: usize, lo: f64, hi: f64) -> AbsorbingChainDT {
    loop {
        let mut q = DMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                if i == j || rng.gen::<f64>() > 0.33 {
                    q[(i, j)] = rng.gen::<f64>();
                }
            }
            let target = rng.gen_range(lo..=hi);
            let s: f64 = q.row(i).sum();
            if s > 0.0 {
                q.row_mut(i).scale_mut(target / s);
            }
        }
        if let Ok(c) = AbsorbingChainDT::new(q) {
            return c;
        }
    }
}

pub fn random_ct<R: Rng>(rng: &mut R, d: usize) -> AbsorbingChainCT {
    loop {
        let mut q = DMatrix::zeros(d, d);
        for i in 0..d {
            let mut out = 0.0;
            for j in 0..d {
                if i != j && rng.gen::<f64>() < 0.7 {
                    q[(i, j)] = rng.gen_range(0.1..3.0);
                    out += q[(i, j)];
                }
            }
            let kill = if rng.gen::<f64>() < 0.5 {
                rng.gen_range(0.05..1.0)
            } else {
                0.0
            };
            q[(i, i)] = -(out + kill);
        }
        q[(0, 0)] -= 0.3;
        if let Ok(c) = AbsorbingChainCT::new(q) {
            return c;
        }
    }
}

/// Normalized `1' M^(2^k)` by repeated squaring. For a primitive
/// nonnegative `m` this converges to the principal left eigenvector.
pub fn squaring_left_vector(m: &DMatrix<f64>) -> Vec<f64> {
    let mut p = m.clone();
    for _ in 0..200 {
        let next = &p * &p;
        let scale = next.max();
        let next = next / scale;
        let delta = (&next - &p).abs().max();
        p = next;
        if delta < 1e-15 {
            break;
        }
    }
    let col: Vec<f64> = (0..p.ncols()).map(|j| p.column(j).sum()).collect();
    let s: f64 = col.iter().sum();
    col.into_iter().map(|x| x / s).collect()
}

/// Independent DT oracle: squaring on the lazy block `(I + Q) / 2`, which is
/// primitive for any irreducible `Q` and shares its left eigenvectors.
pub fn dt_oracle(q: &DMatrix<f64>) -> Vec<f64> {
    let d = q.nrows();
    squaring_left_vector(&((DMatrix::identity(d, d) + q) * 0.5))
}

/// Independent CT oracle: squaring on `I + Q / c` with `c` above every exit
/// rate.
pub fn ct_oracle(q: &DMatrix<f64>) -> Vec<f64> {
    let d = q.nrows();
    let c = (0..d).map(|i| -q[(i, i)]).fold(0.0, f64::max) * 1.5;
    squaring_left_vector(&(DMatrix::identity(d, d) + q / c))
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Rayleigh-type eigenvalue `d' Q 1 / d' 1` for a left eigenvector `d`.
pub fn left_eigenvalue(q: &DMatrix<f64>, d: &[f64]) -> f64 {
    let n = q.nrows();
    let mut num = 0.0;
    for i in 0..n {
        for j in 0..n {
            num += d[i] * q[(i, j)];
        }
    }
    num / d.iter().sum::<f64>()
}
