//! Dense nonsymmetric eigenvalues: balancing, Householder reduction to upper
//! Hessenberg form, then Francis double-shift QR down to quasi-triangular form.

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix};

/// Row-major dense working copy.
struct Work {
    n: usize,
    a: Vec<f64>,
}

impl Work {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }
}

/// All eigenvalues of `q`, with algebraic multiplicity, in no particular
/// order. Complex eigenvalues come in adjacent conjugate pairs.
pub fn full_spectrum(q: &DMatrix<f64>) -> Result<Vec<Complex<f64>>> {
    if q.nrows() != q.ncols() {
        return Err(Error::Contract(format!(
            "matrix is {}x{}, not square",
            q.nrows(),
            q.ncols()
        )));
    }
    if q.iter().any(|x| !x.is_finite()) {
        return Err(Error::Contract("matrix has non-finite entries".into()));
    }
    let n = q.nrows();
    let mut w = Work {
        n,
        a: (0..n * n).map(|k| q[(k / n, k % n)]).collect(),
    };
    balance(&mut w);
    hessenberg(&mut w);
    hqr(&mut w)
}

/// Diagonal similarity by powers of two that equalizes row and column norms.
fn balance(w: &mut Work) {
    const RADIX: f64 = 2.0;
    let n = w.n;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += w.at(j, i).abs();
                    r += w.at(i, j).abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    *w.at_mut(i, j) *= g;
                    *w.at_mut(j, i) *= f;
                }
            }
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn hessenberg(w: &mut Work) {
    let n = w.n;
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let norm = (k + 1..n).map(|i| w.at(i, k).powi(2)).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = w.at(k + 1, k);
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = w.at(i, k);
        }
        v[k + 1] -= alpha;
        let vnorm = (k + 1..n).map(|i| v[i] * v[i]).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v[k + 1..n] {
            *x /= vnorm;
        }
        // A <- H A
        for j in k..n {
            let dot: f64 = (k + 1..n).map(|i| v[i] * w.at(i, j)).sum();
            for i in k + 1..n {
                *w.at_mut(i, j) -= 2.0 * v[i] * dot;
            }
        }
        // A <- A H
        for i in 0..n {
            let dot: f64 = (k + 1..n).map(|j| w.at(i, j) * v[j]).sum();
            for j in k + 1..n {
                *w.at_mut(i, j) -= 2.0 * dot * v[j];
            }
        }
        *w.at_mut(k + 1, k) = alpha;
        for i in k + 2..n {
            *w.at_mut(i, k) = 0.0;
        }
    }
}

#[inline]
fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix, eigenvalues only.
fn hqr(w: &mut Work) -> Result<Vec<Complex<f64>>> {
    const MAX_ITS: usize = 60;
    let n = w.n;
    let eps = f64::EPSILON;
    let mut out = vec![Complex::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(out);
    }
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += w.at(i, j).abs();
        }
    }
    // `active` is one past the last row of the unreduced trailing block.
    let mut active = n;
    let mut t = 0.0;
    let mut its = 0;
    while active > 0 {
        let nn = active - 1;
        let mut l = nn;
        while l > 0 {
            let mut s = w.at(l - 1, l - 1).abs() + w.at(l, l).abs();
            if s == 0.0 {
                s = anorm;
            }
            if w.at(l, l - 1).abs() <= eps * s {
                *w.at_mut(l, l - 1) = 0.0;
                break;
            }
            l -= 1;
        }
        let mut x = w.at(nn, nn);
        if l == nn {
            out[nn] = Complex::new(x + t, 0.0);
            active -= 1;
            its = 0;
            continue;
        }
        let mut y = w.at(nn - 1, nn - 1);
        let mut wv = w.at(nn, nn - 1) * w.at(nn - 1, nn);
        if l == nn - 1 {
            let p = 0.5 * (y - x);
            let q = p * p + wv;
            let mut z = q.abs().sqrt();
            x += t;
            if q >= 0.0 {
                z = p + sign(z, p);
                let hi = x + z;
                out[nn - 1] = Complex::new(hi, 0.0);
                out[nn] = Complex::new(if z != 0.0 { x - wv / z } else { hi }, 0.0);
            } else {
                out[nn] = Complex::new(x + p, -z);
                out[nn - 1] = Complex::new(x + p, z);
            }
            active -= 2;
            its = 0;
            continue;
        }
        if its == MAX_ITS {
            return Err(Error::Convergence("Hessenberg QR iteration".into()));
        }
        if its == 10 || its == 20 {
            // exceptional shift
            t += x;
            for i in 0..=nn {
                *w.at_mut(i, i) -= x;
            }
            let s = w.at(nn, nn - 1).abs() + w.at(nn - 1, nn - 2).abs();
            x = 0.75 * s;
            y = x;
            wv = -0.4375 * s * s;
        }
        its += 1;
        let (mut p, mut q, mut r);
        let mut m = nn - 2;
        loop {
            let z = w.at(m, m);
            let rr = x - z;
            let ss = y - z;
            p = (rr * ss - wv) / w.at(m + 1, m) + w.at(m, m + 1);
            q = w.at(m + 1, m + 1) - z - rr - ss;
            r = w.at(m + 2, m + 1);
            let s = p.abs() + q.abs() + r.abs();
            p /= s;
            q /= s;
            r /= s;
            if m == l {
                break;
            }
            let u = w.at(m, m - 1).abs() * (q.abs() + r.abs());
            let v = p.abs() * (w.at(m - 1, m - 1).abs() + z.abs() + w.at(m + 1, m + 1).abs());
            if u <= eps * v {
                break;
            }
            m -= 1;
        }
        for i in m..nn - 1 {
            *w.at_mut(i + 2, i) = 0.0;
            if i != m {
                *w.at_mut(i + 2, i - 1) = 0.0;
            }
        }
        for k in m..nn {
            if k != m {
                p = w.at(k, k - 1);
                q = w.at(k + 1, k - 1);
                r = if k + 1 != nn { w.at(k + 2, k - 1) } else { 0.0 };
                x = p.abs() + q.abs() + r.abs();
                if x != 0.0 {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            let s = sign((p * p + q * q + r * r).sqrt(), p);
            if s == 0.0 {
                continue;
            }
            if k == m {
                if l != m {
                    *w.at_mut(k, k - 1) = -w.at(k, k - 1);
                }
            } else {
                *w.at_mut(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            let z = r / s;
            q /= p;
            r /= p;
            for j in k..=nn {
                let mut pp = w.at(k, j) + q * w.at(k + 1, j);
                if k + 1 != nn {
                    pp += r * w.at(k + 2, j);
                    *w.at_mut(k + 2, j) -= pp * z;
                }
                *w.at_mut(k + 1, j) -= pp * y;
                *w.at_mut(k, j) -= pp * x;
            }
            let mmin = if nn < k + 3 { nn } else { k + 3 };
            for i in l..=mmin {
                let mut pp = x * w.at(i, k) + y * w.at(i, k + 1);
                if k + 1 != nn {
                    pp += z * w.at(i, k + 2);
                    *w.at_mut(i, k + 2) -= pp * r;
                }
                *w.at_mut(i, k + 1) -= pp * q;
                *w.at_mut(i, k) -= pp;
            }
        }
    }
    Ok(out)
}
