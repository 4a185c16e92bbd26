//! Small dense complex matrices.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

const POWER_ITERATIONS: usize = 200;

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        CMatrix {
            dim,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_real(rows: &[&[f64]]) -> Self {
        CMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    /// Rank-one projector `|psi><psi|` onto a (not necessarily normalised)
    /// vector.
    pub fn projector(psi: &[Complex64]) -> Self {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let dim = psi.len();
        let mut m = CMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = psi[i] * psi[j].conj() / norm2;
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Complex64]> {
        self.data.chunks(self.dim.max(1))
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Kronecker product with `self` as the major (left) factor.
    pub fn kron(&self, other: &CMatrix) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut m = CMatrix::zeros(d);
        for i in 0..a {
            for j in 0..a {
                let s = self.data[i * a + j];
                if s == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        m.data[(i * b + k) * d + j * b + l] = s * other.data[k * b + l];
                    }
                }
            }
        }
        m
    }

    pub fn commutator(&self, other: &CMatrix) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    /// `Tr(M) / dim`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.trace() / self.dim as f64
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    /// `max|M - M^†|`.
    pub fn hermitian_residual(&self) -> f64 {
        (self - &self.adjoint()).max_abs()
    }

    /// `max|M^2 - M|`.
    pub fn idempotent_residual(&self) -> f64 {
        (&(self * self) - self).max_abs()
    }

    /// `tau(M^† M)` with `tau` the normalised trace.
    pub fn tau_norm_sqr(&self) -> f64 {
        self.frobenius().powi(2) / self.dim as f64
    }

    /// Operator 2-norm: the square root of the top eigenvalue of `M^† M`,
    /// found by power iteration from the normalised all-ones vector.
    pub fn op_norm(&self) -> f64 {
        let d = self.dim;
        if d == 0 || self.is_zero() {
            return 0.0;
        }
        let gram = &self.adjoint() * self;
        let start = vec![Complex64::new(1.0 / (d as f64).sqrt(), 0.0); d];
        let mut best = power_iterate(&gram, start);
        // A start vector orthogonal to the top eigenspace under-reports the
        // norm; the norm is at least ||M||_F / sqrt(d).
        let floor = self.frobenius() / (d as f64).sqrt();
        if best.sqrt() < floor * (1.0 - 1e-9) {
            for i in 0..d {
                let mut e = vec![Complex64::new(0.0, 0.0); d];
                e[i] = Complex64::new(1.0, 0.0);
                best = best.max(power_iterate(&gram, e));
            }
        }
        best.max(0.0).sqrt()
    }

    fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Rayleigh quotient after a fixed number of power steps on a Hermitian PSD
/// matrix.
fn power_iterate(m: &CMatrix, mut v: Vec<Complex64>) -> f64 {
    for _ in 0..POWER_ITERATIONS {
        let w = m.apply(&v);
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        v = w.into_iter().map(|z| z / norm).collect();
    }
    let w = m.apply(&v);
    v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum()
}

impl<'a> Mul<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let d = self.dim;
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    m.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        m
    }
}

impl<'a> Add<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CMatrix> for &'a CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// The four qubit projectors used by the explicit constructions.
pub mod qubit {
    use super::CMatrix;

    /// `|0><0|`
    pub fn p0() -> CMatrix {
        CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]])
    }

    /// `|1><1|`
    pub fn p1() -> CMatrix {
        CMatrix::from_real(&[&[0.0, 0.0], &[0.0, 1.0]])
    }

    /// `|+><+|`
    pub fn q0() -> CMatrix {
        CMatrix::from_real(&[&[0.5, 0.5], &[0.5, 0.5]])
    }

    /// `|-><-|`
    pub fn q1() -> CMatrix {
        CMatrix::from_real(&[&[0.5, -0.5], &[-0.5, 0.5]])
    }
}
