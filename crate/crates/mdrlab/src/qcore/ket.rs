use crate::error::{Error, Result};
use crate::qcore::Cplx;
use crate::scalar::Real;

/// Normalized pure state over 1 to 3 qubits.
///
/// Amplitude ordering: qubit 1 is the most significant bit of the index, so a
/// three-qubit basis label `|q1 q2 q3>` maps to index `4*q1 + 2*q2 + q3` with
/// the spin-up eigenstate as bit value 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket<T> {
    n_qubits: usize,
    amps: Vec<Cplx<T>>,
}

impl<T: Real> Ket<T> {
    /// Builds a state from explicit amplitudes, enforcing the invariants:
    /// 1..=3 qubits, exactly `2^n` finite amplitudes, unit norm.
    pub fn new(n_qubits: usize, amps: Vec<Cplx<T>>) -> Result<Self> {
        if !(1..=3).contains(&n_qubits) {
            return Err(Error::BadQubitCount { n: n_qubits });
        }
        let expected = 1 << n_qubits;
        if amps.len() != expected {
            return Err(Error::BadAmplitudeCount {
                len: amps.len(),
                expected,
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec_norm(&amps);
        if (norm - T::one()).abs() > T::validation_tol() {
            return Err(Error::NotNormalized {
                norm: norm.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { n_qubits, amps })
    }

    /// Like [`Ket::new`] but rescales the amplitudes to unit norm first.
    pub fn from_unnormalized(n_qubits: usize, amps: Vec<Cplx<T>>) -> Result<Self> {
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm = vec_norm(&amps);
        if norm <= T::branch_tol() {
            return Err(Error::ZeroNorm);
        }
        let scale = norm.recip();
        let scaled = amps.into_iter().map(|a| a * scale).collect();
        Self::new(n_qubits, scaled)
    }

    /// Computational basis state `|index>` on `n_qubits` qubits.
    pub fn basis(n_qubits: usize, index: usize) -> Self {
        assert!((1..=3).contains(&n_qubits) && index < (1 << n_qubits));
        let mut amps = vec![Cplx::new(T::zero(), T::zero()); 1 << n_qubits];
        amps[index] = Cplx::new(T::one(), T::zero());
        Self { n_qubits, amps }
    }

    /// Internal constructor for amplitudes already known to satisfy the
    /// invariants (tensor products and unitary images of valid states).
    pub(crate) fn trusted(n_qubits: usize, amps: Vec<Cplx<T>>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Cplx<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        vec_norm(&self.amps)
    }

    /// Inner product `<self|rhs>`.
    pub fn inner(&self, rhs: &Self) -> Result<Cplx<T>> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&rhs.amps)
            .fold(Cplx::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            }))
    }

    /// `|<self|rhs>|` - overlap magnitude, insensitive to global phase.
    pub fn overlap(&self, rhs: &Self) -> Result<T> {
        Ok(self.inner(rhs)?.norm())
    }

    /// Tensor product, left factor on the more significant qubits.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        let n = self.n_qubits + rhs.n_qubits;
        if n > 3 {
            return Err(Error::BadQubitCount { n });
        }
        let mut amps = Vec::with_capacity(self.dim() * rhs.dim());
        for a in &self.amps {
            for b in &rhs.amps {
                amps.push(*a * *b);
            }
        }
        Ok(Self::trusted(n, amps))
    }

    /// Rephases so the first amplitude of non-negligible magnitude is real
    /// and positive.
    pub(crate) fn canonicalized(mut self) -> Self {
        let floor = T::branch_tol();
        if let Some(lead) = self.amps.iter().find(|a| a.norm() > floor) {
            let phase = lead.conj() / lead.norm();
            for a in &mut self.amps {
                *a *= phase;
            }
        }
        self
    }
}

fn vec_norm<T: Real>(amps: &[Cplx<T>]) -> T {
    amps.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt()
}
