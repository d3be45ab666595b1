//! Entangled source states and projective preparation of single-qubit
//! signal states.
//!
//! The two-qubit source family is built constructively from the eigenbasis
//! along the axis perpendicular to both observable directions, so any
//! observable plane works; the familiar y-axis pair states show up as test
//! fixtures rather than code paths.

use crate::error::{Error, Result};
use crate::qcore::{pauli_op, spin_eigenbasis, Cplx, Ket, Vec3};
use crate::scalar::Real;

/// Branch label for a two-outcome projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` or `-1` in the scalar type.
    pub fn factor<T: Real>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }
}

/// Parameters of one maximally entangled source state: the parity `m` of the
/// exchange symmetry and the unit axis `c_hat` the pair is built along.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellPairSpec<T> {
    m: u8,
    c_hat: Vec3<T>,
}

impl<T: Real> BellPairSpec<T> {
    pub fn new(m: u8, c_hat: Vec3<T>) -> Result<Self> {
        if m > 1 {
            return Err(Error::BadParity { m });
        }
        Ok(Self {
            m,
            c_hat: c_hat.require_unit()?,
        })
    }

    /// Derives the pair axis from two observable directions as the
    /// normalized cross product; near-parallel axes are rejected.
    pub fn from_axes(m: u8, a: Vec3<T>, b: Vec3<T>) -> Result<Self> {
        let c = a.cross(b);
        let magnitude = c.norm();
        if magnitude <= T::axis_tol() {
            return Err(Error::DegenerateAxes {
                magnitude: magnitude.to_f64().unwrap_or(f64::NAN),
            });
        }
        Self::new(m, c * magnitude.recip())
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn c_hat(&self) -> Vec3<T> {
        self.c_hat
    }

    /// `(-1)^m`.
    pub fn parity_sign(&self) -> T {
        if self.m == 0 {
            T::one()
        } else {
            -T::one()
        }
    }
}

/// One outcome of a projective preparation: its label, its probability, and
/// the normalized signal state left on the first qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct PreparedBranch<T> {
    pub sign: Sign,
    pub prob: T,
    pub psi1: Ket<T>,
}

/// The two-qubit source state `(|+>_c|->_c + (-1)^m |->_c|+>_c)/sqrt(2)`
/// with `|+->_c` the spin eigenstates along the pair axis.
pub fn bell_state<T: Real>(spec: &BellPairSpec<T>) -> Ket<T> {
    let (plus, minus) = spin_eigenbasis(spec.c_hat).expect("spec axis is unit");
    let sign = spec.parity_sign();
    let root_half = T::lit(0.5).sqrt();
    let pm = plus.tensor(&minus).expect("two factors fit");
    let mp = minus.tensor(&plus).expect("two factors fit");
    let amps = pm
        .amps()
        .iter()
        .zip(mp.amps())
        .map(|(a, b)| (*a + *b * sign) * root_half)
        .collect();
    Ket::trusted(2, amps)
}

/// Residual of the exchange symmetry `(V x V)|psi> = (-1)^m |psi>` for a
/// unit direction `v` in the observable plane (perpendicular to the pair
/// axis). Contract: below the validation tolerance for [`bell_state`]
/// outputs.
pub fn verify_inplane_symmetry<T: Real>(
    psi12: &Ket<T>,
    spec: &BellPairSpec<T>,
    v: Vec3<T>,
) -> Result<T> {
    let v = v.require_unit()?;
    let overlap = v.dot(spec.c_hat).abs();
    if overlap > T::validation_tol() {
        return Err(Error::NotInPlane {
            overlap: overlap.to_f64().unwrap_or(f64::NAN),
        });
    }
    if psi12.n_qubits() != 2 {
        return Err(Error::BadQubitCount {
            n: psi12.n_qubits(),
        });
    }
    let v_op = pauli_op(v);
    let both = v_op.kron(&v_op)?;
    let image = both.apply_vec(psi12.amps());
    let sign = spec.parity_sign();
    let residual_sq = image
        .iter()
        .zip(psi12.amps())
        .map(|(got, want)| (*got - *want * sign).norm_sqr())
        .sum::<T>();
    Ok(residual_sq.sqrt())
}

/// Projects the second qubit of a two-qubit state onto the `sign` eigenstate
/// along `n_p`, leaving a normalized signal state on the first qubit.
pub fn project_prepare<T: Real>(
    psi12: &Ket<T>,
    n_p: Vec3<T>,
    sign: Sign,
) -> Result<PreparedBranch<T>> {
    if psi12.n_qubits() != 2 {
        return Err(Error::BadQubitCount {
            n: psi12.n_qubits(),
        });
    }
    let (plus, minus) = spin_eigenbasis(n_p)?;
    let eig = match sign {
        Sign::Plus => plus,
        Sign::Minus => minus,
    };
    let amps = psi12.amps();
    let mut reduced = [Cplx::new(T::zero(), T::zero()); 2];
    for (q1, slot) in reduced.iter_mut().enumerate() {
        for q2 in 0..2 {
            *slot += eig.amps()[q2].conj() * amps[2 * q1 + q2];
        }
    }
    let norm = (reduced[0].norm_sqr() + reduced[1].norm_sqr()).sqrt();
    if norm <= T::branch_tol() {
        return Err(Error::ZeroProbabilityBranch);
    }
    let scale = norm.recip();
    Ok(PreparedBranch {
        sign,
        prob: norm * norm,
        psi1: Ket::trusted(1, vec![reduced[0] * scale, reduced[1] * scale]),
    })
}
