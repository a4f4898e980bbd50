//! Small dense complex matrices: Haar-random unitaries and Hermitian
//! eigenvalues. Everything here is desk scale (n <= 8), so the
//! implementations favor clarity over blocking.

use num_complex::Complex64 as C64;

use crate::rng::CounterRng;
use crate::{Error, Result};

/// Square complex matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    pub n: usize,
    pub data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> CMat {
        CMat {
            n,
            data: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_diag(d: &[f64]) -> CMat {
        let mut m = CMat::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, C64::new(*v, 0.0));
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&self, other: &CMat) -> CMat {
        debug_assert_eq!(self.n, other.n);
        CMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Largest |M_ij - conj(M_ji)|.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn real_diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.at(i, i).re).collect()
    }
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase fixed. Modified Gram-Schmidt produces R with a positive
/// real diagonal, so the phase correction is the identity by construction.
pub fn haar_unitary(n: usize, rng: &CounterRng, counter_base: u64) -> CMat {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let col: Vec<C64> = (0..n)
            .map(|i| {
                let (re, im) = rng.gaussian_pair_at(counter_base + (j * n + i) as u64);
                C64::new(re, im) / 2f64.sqrt()
            })
            .collect();
        cols.push(col);
    }
    // Modified Gram-Schmidt.
    for j in 0..n {
        for k in 0..j {
            let proj: C64 = (0..n).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..n {
                let d = proj * cols[k][i];
                cols[j][i] -= d;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in cols[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut u = CMat::zeros(n);
    for j in 0..n {
        for i in 0..n {
            u.set(i, j, cols[j][i]);
        }
    }
    u
}

/// `U diag(lambda) U^*` (Hermitian by construction).
pub fn conjugated_diag(u: &CMat, lambda: &[f64]) -> CMat {
    let n = u.n;
    let mut m = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for (k, lam) in lambda.iter().enumerate() {
                acc += u.at(i, k) * u.at(j, k).conj() * lam;
            }
            m.set(i, j, acc);
        }
    }
    m
}

/// Diagonal of `U diag(lambda) U^*` without forming the matrix.
pub fn isospectral_diagonal(u: &CMat, lambda: &[f64]) -> Vec<f64> {
    (0..u.n)
        .map(|i| {
            lambda
                .iter()
                .enumerate()
                .map(|(k, lam)| lam * u.at(i, k).norm_sqr())
                .sum()
        })
        .collect()
}

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Rejects matrices whose asymmetry exceeds `asym_tol`.
pub fn hermitian_eigenvalues(m: &CMat, asym_tol: f64) -> Result<Vec<f64>> {
    let asym = m.hermitian_asymmetry();
    if asym > asym_tol {
        return Err(Error::NonHermitian(asym));
    }
    let n = m.n;
    let mut a = m.clone();
    // Symmetrize rounding noise.
    for i in 0..n {
        for j in 0..n {
            let v = (a.at(i, j) + a.at(j, i).conj()) * 0.5;
            a.set(i, j, v);
        }
    }

    let scale: f64 = a.data.iter().map(|z| z.norm()).fold(1e-300, f64::max);
    let target = 1e-14 * scale;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.at(p, q).norm());
            }
        }
        if off <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                let r = apq.norm();
                if r <= target * 1e-2 {
                    continue;
                }
                let phase = apq / r;
                let app = a.at(p, p).re;
                let aqq = a.at(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // V = [[c, s*phase], [-s*conj(phase)... ]] folded into
                // column and row updates: A <- V^* A V.
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, akp * c - akq * phase.conj() * s);
                    a.set(k, q, akp * s + akq * phase.conj() * c);
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, apk * c - aqk * phase * s);
                    a.set(q, k, apk * s + aqk * phase * c);
                }
            }
        }
    }
    Ok(a.real_diag())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm2(a: f64, b: C64, d: f64) -> CMat {
        let mut m = CMat::zeros(2);
        m.set(0, 0, C64::new(a, 0.0));
        m.set(0, 1, b);
        m.set(1, 0, b.conj());
        m.set(1, 1, C64::new(d, 0.0));
        m
    }

    #[test]
    fn unitary_columns_orthonormal() {
        let rng = CounterRng::new(5, 1);
        for trial in 0..4u64 {
            let u = haar_unitary(3, &rng, trial * 64);
            for j in 0..3 {
                for k in 0..3 {
                    let dot: C64 = (0..3).map(|i| u.at(i, j).conj() * u.at(i, k)).sum();
                    let expect = if j == k { 1.0 } else { 0.0 };
                    assert!((dot.norm() - expect).abs() < 1e-12, "{j},{k}: {dot}");
                }
            }
        }
    }

    #[test]
    fn jacobi_matches_closed_form_2x2() {
        let m = herm2(1.0, C64::new(0.5, 0.25), -0.5);
        let mut eig = hermitian_eigenvalues(&m, 1e-12).unwrap();
        eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
        // Closed form: mean +- sqrt(delta^2 + |b|^2).
        let mean = 0.25;
        let disc = (0.75f64 * 0.75 + 0.3125).sqrt();
        assert!((eig[0] - (mean + disc)).abs() < 1e-12);
        assert!((eig[1] - (mean - disc)).abs() < 1e-12);
    }

    #[test]
    fn spectra_invariant_under_conjugation() {
        let rng = CounterRng::new(9, 2);
        let lambda = [2.0, 1.0, 0.0];
        for trial in 0..6u64 {
            let u = haar_unitary(3, &rng, 1000 + trial * 32);
            let m = conjugated_diag(&u, &lambda);
            let mut eig = hermitian_eigenvalues(&m, 1e-10).unwrap();
            eig.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (e, l) in eig.iter().zip(&lambda) {
                assert!((e - l).abs() < 1e-9, "trial {trial}: {eig:?}");
            }
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMat::zeros(2);
        m.set(0, 1, C64::new(1.0, 0.0));
        assert!(matches!(
            hermitian_eigenvalues(&m, 1e-12),
            Err(Error::NonHermitian(_))
        ));
    }
}
