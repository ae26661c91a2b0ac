//! Symmetric tridiagonal eigenproblems.
//!
//! Lowest eigenvalues come from Sturm-sequence bisection (each count is
//! O(N), and only a handful of levels are ever needed); the full spectrum is
//! available through implicit-shift QL for cross-checking. Eigenvectors use
//! inverse iteration with a tridiagonal LU solve.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off.len()` must be `diag.len() − 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty() && off.len() + 1 == diag.len());
        SymTridiagonal { diag, off }
    }

    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let e2 = self.off[i - 1] * self.off[i - 1];
            let prev = if q == 0.0 { f64::EPSILON * (libm::fabs(self.off[i - 1]) + 1.0) } else { q };
            q = self.diag[i] - x - e2 / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { libm::fabs(self.off[i - 1]) } else { 0.0 }
                + if i + 1 < n { libm::fabs(self.off[i]) } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k` smallest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>> {
        let n = self.order();
        if k > n {
            return Err(Error::TooManyEigenvalues { k, order: n });
        }
        let (lo, hi) = self.gershgorin();
        let mut out = Vec::with_capacity(k);
        let mut left = lo;
        for j in 0..k {
            // smallest x with count(x) > j
            let (mut a, mut b) = (left, hi);
            let mut it = 0;
            while b - a > 2.0 * f64::EPSILON * libm::fabs(a).max(libm::fabs(b)) + f64::MIN_POSITIVE {
                let mid = 0.5 * (a + b);
                if self.sturm_count(mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
                it += 1;
                if it > 400 {
                    return Err(Error::EigenNotConverged { index: j, iterations: it });
                }
            }
            let v = 0.5 * (a + b);
            out.push(v);
            left = a;
        }
        Ok(out)
    }

    /// All eigenvalues by the implicit-shift QL iteration, ascending.
    pub fn eigenvalues_ql(&self) -> Result<Vec<f64>> {
        let n = self.order();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        e.push(0.0);
        for l in 0..n {
            let mut iter = 0;
            loop {
                let mut m = l;
                while m + 1 < n {
                    let dd = libm::fabs(d[m]) + libm::fabs(d[m + 1]);
                    if libm::fabs(e[m]) <= f64::EPSILON * dd {
                        break;
                    }
                    m += 1;
                }
                if m == l {
                    break;
                }
                iter += 1;
                if iter > 60 {
                    return Err(Error::EigenNotConverged { index: l, iterations: iter });
                }
                let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                let mut r = libm::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
                let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
                let mut i = m;
                let mut underflow = false;
                while i > l {
                    i -= 1;
                    let f = s * e[i];
                    let b = c * e[i];
                    r = libm::hypot(f, g);
                    e[i + 1] = r;
                    if r == 0.0 {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if underflow {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        }
        d.sort_by(f64::total_cmp);
        Ok(d)
    }

    /// Unit eigenvector for an eigenvalue estimate `mu`, by inverse iteration.
    pub fn eigenvector(&self, mu: f64) -> Vec<f64> {
        let n = self.order();
        let (lo, hi) = self.gershgorin();
        let shift = mu + 16.0 * f64::EPSILON * libm::fabs(lo).max(libm::fabs(hi)).max(1.0);
        // deterministic start with all components nonzero
        let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * libm::sin(i as f64 + 0.25)).collect();
        normalize(&mut v);
        for _ in 0..4 {
            v = self.solve_shifted(shift, &v);
            normalize(&mut v);
        }
        // sign convention: first significant component positive
        let peak = v.iter().fold(0.0_f64, |a, x| a.max(libm::fabs(*x)));
        if let Some(first) = v.iter().find(|x| libm::fabs(**x) > 1e-3 * peak) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        v
    }

    /// Solves `(T − σI)x = b` by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.order();
        // rows hold (sub, diag, sup, sup2) after pivoting
        let mut a = vec![0.0; n];
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - sigma).collect();
        let mut c = vec![0.0; n];
        let mut c2 = vec![0.0; n];
        for i in 0..n {
            if i > 0 {
                a[i] = self.off[i - 1];
            }
            if i + 1 < n {
                c[i] = self.off[i];
            }
        }
        let mut x = b.to_vec();
        let tiny = f64::EPSILON * 1e-3;
        for i in 0..n.saturating_sub(1) {
            if libm::fabs(a[i + 1]) > libm::fabs(d[i]) {
                // swap rows i and i+1
                let (di, ci, c2i, xi) = (d[i], c[i], c2[i], x[i]);
                d[i] = a[i + 1];
                c[i] = d[i + 1];
                c2[i] = c[i + 1];
                x[i] = x[i + 1];
                a[i + 1] = di;
                d[i + 1] = ci;
                c[i + 1] = c2i;
                x[i + 1] = xi;
            }
            if d[i] == 0.0 {
                d[i] = tiny;
            }
            let f = a[i + 1] / d[i];
            d[i + 1] -= f * c[i];
            c[i + 1] -= f * c2[i];
            x[i + 1] -= f * x[i];
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        x[n - 1] /= d[n - 1];
        if n >= 2 {
            x[n - 2] = (x[n - 2] - c[n - 2] * x[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - c[i] * x[i + 1] - c2[i] * x[i + 2]) / d[i];
        }
        x
    }
}

fn normalize(v: &mut [f64]) {
    let peak = v.iter().fold(0.0_f64, |a, x| a.max(libm::fabs(*x)));
    if peak == 0.0 {
        return;
    }
    let s = libm::sqrt(v.iter().map(|x| (x / peak) * (x / peak)).sum::<f64>()) * peak;
    v.iter_mut().for_each(|x| *x /= s);
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    /// Dirichlet Laplacian `tridiag(−1, 2, −1)`, eigenvalues `2 − 2cos(kπ/(n+1))`.
    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    fn exact(n: usize, k: usize) -> f64 {
        2.0 - 2.0 * libm::cos(k as f64 * PI / (n as f64 + 1.0))
    }

    #[test]
    fn bisection_matches_closed_form() {
        let t = laplacian(50);
        let ev = t.lowest_eigenvalues(5).unwrap();
        for (k, v) in ev.iter().enumerate() {
            assert!((v - exact(50, k + 1)).abs() < 1e-13);
        }
        assert!(t.lowest_eigenvalues(51).is_err());
    }

    #[test]
    fn ql_matches_bisection() {
        let n = 40;
        let diag: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 * 0.37).sin()).collect();
        let off: Vec<f64> = (0..n - 1).map(|i| 0.5 + 0.1 * (i as f64).cos()).collect();
        let t = SymTridiagonal::new(diag, off);
        let all = t.eigenvalues_ql().unwrap();
        let low = t.lowest_eigenvalues(n).unwrap();
        for (a, b) in all.iter().zip(&low) {
            assert!((a - b).abs() < 1e-12, "{a} {b}");
        }
    }

    #[test]
    fn eigenvector_residual() {
        let t = laplacian(30);
        let mu = t.lowest_eigenvalues(3).unwrap()[2];
        let v = t.eigenvector(mu);
        let n = t.order();
        for i in 0..n {
            let mut r = t.diag()[i] * v[i] - mu * v[i];
            if i > 0 {
                r += t.off()[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                r += t.off()[i] * v[i + 1];
            }
            assert!(r.abs() < 1e-10);
        }
        let sign_changes = v.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        assert_eq!(sign_changes, 2);
    }
}
