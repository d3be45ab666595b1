use crate::error::{Error, Result};
use crate::qcore::{Cplx, Ket};
use crate::scalar::Real;

/// Dense complex square matrix on 1-3 qubits.
///
/// Hermiticity and unitarity are measured against the validation tolerance at
/// construction and cached; every arithmetic result re-runs the detection, so
/// the flags always describe the stored entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Op<T> {
    dim: usize,
    entries: Vec<Cplx<T>>, // row-major
    hermitian: bool,
    unitary: bool,
}

impl<T: Real> Op<T> {
    /// Builds an operator from row-major entries, verifying finiteness and
    /// classifying it.
    pub fn new(dim: usize, entries: Vec<Cplx<T>>) -> Result<Self> {
        if !matches!(dim, 2 | 4 | 8) {
            return Err(Error::DimMismatch {
                left: dim,
                right: entries.len(),
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::BadAmplitudeCount {
                len: entries.len(),
                expected: dim * dim,
            });
        }
        if entries
            .iter()
            .any(|e| !e.re.is_finite() || !e.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        Ok(Self::classified(dim, entries))
    }

    pub(crate) fn classified(dim: usize, entries: Vec<Cplx<T>>) -> Self {
        let mut op = Self {
            dim,
            entries,
            hermitian: false,
            unitary: false,
        };
        op.hermitian = op.hermitian_deviation() <= T::validation_tol();
        op.unitary = op.unitary_deviation() <= T::validation_tol();
        op
    }

    pub fn identity(dim: usize) -> Self {
        let zero = Cplx::new(T::zero(), T::zero());
        let mut entries = vec![zero; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Cplx::new(T::one(), T::zero());
        }
        Self {
            dim,
            entries,
            hermitian: true,
            unitary: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Cplx<T>] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> Cplx<T> {
        self.entries[row * self.dim + col]
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// `max_ij |M_ij - conj(M_ji)|`.
    pub fn hermitian_deviation(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let d = (self.entry(r, c) - self.entry(c, r).conj()).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// `max_ij |(M^dag M - I)_ij|`.
    pub fn unitary_deviation(&self) -> T {
        let mut worst = T::zero();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let mut acc = Cplx::new(T::zero(), T::zero());
                for k in 0..self.dim {
                    acc += self.entry(k, r).conj() * self.entry(k, c);
                }
                if r == c {
                    acc -= Cplx::new(T::one(), T::zero());
                }
                let d = acc.norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = Vec::with_capacity(self.dim * self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                entries.push(self.entry(c, r).conj());
            }
        }
        Self::classified(self.dim, entries)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let zero = Cplx::new(T::zero(), T::zero());
        let mut entries = vec![zero; n * n];
        for r in 0..n {
            for k in 0..n {
                let lhs = self.entry(r, k);
                for c in 0..n {
                    entries[r * n + c] += lhs * rhs.entry(k, c);
                }
            }
        }
        Ok(Self::classified(n, entries))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| *a + *b)
            .collect();
        Ok(Self::classified(self.dim, entries))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| *a - *b)
            .collect();
        Ok(Self::classified(self.dim, entries))
    }

    pub fn scale(&self, s: Cplx<T>) -> Self {
        let entries = self.entries.iter().map(|a| *a * s).collect();
        Self::classified(self.dim, entries)
    }

    /// Kronecker product, left factor on the more significant qubits.
    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let dim = self.dim * rhs.dim;
        if dim > 8 {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let zero = Cplx::new(T::zero(), T::zero());
        let mut entries = vec![zero; dim * dim];
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.entry(r1, c1);
                for r2 in 0..rhs.dim {
                    for c2 in 0..rhs.dim {
                        entries[(r1 * rhs.dim + r2) * dim + (c1 * rhs.dim + c2)] =
                            a * rhs.entry(r2, c2);
                    }
                }
            }
        }
        Ok(Self::classified(dim, entries))
    }

    /// Raw matrix-vector product.
    pub(crate) fn apply_vec(&self, amps: &[Cplx<T>]) -> Vec<Cplx<T>> {
        debug_assert_eq!(amps.len(), self.dim);
        let zero = Cplx::new(T::zero(), T::zero());
        self.entries
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(amps).fold(zero, |acc, (m, x)| acc + *m * *x))
            .collect()
    }

    /// Applies a unitary to a state; norm is preserved so the result stays a
    /// valid [`Ket`].
    pub fn apply(&self, psi: &Ket<T>) -> Result<Ket<T>> {
        if self.dim != psi.dim() {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: psi.dim(),
            });
        }
        if !self.unitary {
            return Err(Error::NotUnitary {
                deviation: self.unitary_deviation().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Ket::trusted(psi.n_qubits(), self.apply_vec(psi.amps())))
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        Ok(())
    }

    /// Largest entrywise distance to another operator.
    pub fn max_abs_diff(&self, rhs: &Self) -> T {
        assert_eq!(self.dim, rhs.dim);
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), |acc, d| if d > acc { d } else { acc })
    }
}
