//! Exact complex linear algebra for 1-3 qubit systems: spin observables,
//! eigenbases, tensor embedding, expectation and correlation functions.
//!
//! Everything here is a pure function over immutable values; dimensions never
//! exceed 8 so all matrices are dense.

mod ket;
mod op;
mod vec3;

pub use ket::Ket;
pub use op::Op;
pub use vec3::Vec3;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Complex amplitude scalar.
pub type Cplx<T> = num_complex::Complex<T>;

/// Spin observable along `a`: `a_x sigma_x + a_y sigma_y + a_z sigma_z`.
///
/// Eigenvalues are `+|a|` and `-|a|`; the zero vector yields the zero matrix.
///
/// # Panics
/// If any component of `a` is non-finite.
pub fn pauli_op<T: Real>(a: Vec3<T>) -> Op<T> {
    assert!(a.is_finite(), "observable axis must be finite");
    let zero = T::zero();
    let entries = vec![
        Cplx::new(a.z, zero),
        Cplx::new(a.x, -a.y),
        Cplx::new(a.x, a.y),
        Cplx::new(-a.z, zero),
    ];
    Op::classified(2, entries)
}

/// Commutator `AB - BA`.
pub fn commutator<T: Real>(a: &Op<T>, b: &Op<T>) -> Result<Op<T>> {
    a.mul(b)?.sub(&b.mul(a)?)
}

/// Eigenvectors of the unit-axis spin observable along `n_p`, returned as
/// `(plus, minus)` for eigenvalues `+1` and `-1`.
///
/// Phase convention: the first amplitude of non-negligible magnitude is real
/// and positive. With `n_p = (sin t cos p, sin t sin p, cos t)` the plus
/// vector is `cos(t/2)|0> + e^{ip} sin(t/2)|1>`.
pub fn spin_eigenbasis<T: Real>(n_p: Vec3<T>) -> Result<(Ket<T>, Ket<T>)> {
    let n = n_p.require_unit()?;
    let one = T::one();
    let zero = T::zero();
    let xy = Cplx::new(n.x, n.y);
    // Two algebraically equivalent eigenvector formulas; pick the branch
    // whose normalizer stays away from zero.
    let (plus, minus) = if n.z >= zero {
        let s = ((one + n.z) + (one + n.z)).sqrt();
        (
            vec![Cplx::new((one + n.z) / s, zero), xy / s],
            vec![xy.conj() / s, Cplx::new(-(one + n.z) / s, zero)],
        )
    } else {
        let s = ((one - n.z) + (one - n.z)).sqrt();
        (
            vec![xy.conj() / s, Cplx::new((one - n.z) / s, zero)],
            vec![Cplx::new((one - n.z) / s, zero), -xy / s],
        )
    };
    Ok((
        Ket::trusted(1, plus).canonicalized(),
        Ket::trusted(1, minus).canonicalized(),
    ))
}

/// Embeds a 1- or 2-qubit operator into an `n_qubits` register, acting as
/// `op` on the listed sites (1-based, site 1 = most significant amplitude
/// bit) and as the identity elsewhere.
///
/// For a two-site operator, `sites[0]` carries the more significant bit of
/// the operator's own index.
pub fn embed<T: Real>(op: &Op<T>, sites: &[usize], n_qubits: usize) -> Result<Op<T>> {
    if !(1..=3).contains(&n_qubits) {
        return Err(Error::BadQubitCount { n: n_qubits });
    }
    if sites.is_empty() || sites.len() > 2 || op.dim() != 1 << sites.len() {
        return Err(Error::DimMismatch {
            left: op.dim(),
            right: 1 << sites.len(),
        });
    }
    for (k, &site) in sites.iter().enumerate() {
        if site < 1 || site > n_qubits {
            return Err(Error::SiteOutOfRange { site, n_qubits });
        }
        if sites[..k].contains(&site) {
            return Err(Error::DuplicateSite { site });
        }
    }

    let dim = 1 << n_qubits;
    let width = sites.len();
    let mut site_mask = 0usize;
    for &site in sites {
        site_mask |= 1 << (n_qubits - site);
    }
    let rest_mask = (dim - 1) & !site_mask;

    let zero = Cplx::new(T::zero(), T::zero());
    let mut entries = vec![zero; dim * dim];
    for row in 0..dim {
        for col in 0..dim {
            if row & rest_mask != col & rest_mask {
                continue;
            }
            let mut sub_row = 0;
            let mut sub_col = 0;
            for (k, &site) in sites.iter().enumerate() {
                let bit = n_qubits - site;
                sub_row |= ((row >> bit) & 1) << (width - 1 - k);
                sub_col |= ((col >> bit) & 1) << (width - 1 - k);
            }
            entries[row * dim + col] = op.entry(sub_row, sub_col);
        }
    }
    Ok(Op::classified(dim, entries))
}

/// Expectation value `<psi|X|psi>` of a hermitian operator.
pub fn expectation<T: Real>(psi: &Ket<T>, x: &Op<T>) -> Result<T> {
    if x.dim() != psi.dim() {
        return Err(Error::DimMismatch {
            left: x.dim(),
            right: psi.dim(),
        });
    }
    if !x.is_hermitian() {
        return Err(Error::NotHermitian {
            deviation: x.hermitian_deviation().to_f64().unwrap_or(f64::NAN),
        });
    }
    let image = x.apply_vec(psi.amps());
    let value = psi
        .amps()
        .iter()
        .zip(&image)
        .fold(Cplx::new(T::zero(), T::zero()), |acc, (a, b)| {
            acc + a.conj() * *b
        });
    if value.im.abs() > T::validation_tol() {
        return Err(Error::ImaginaryResidue {
            residue: value.im.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.re)
}

/// Two-site correlation function: the expectation of `X` at `site_i` times
/// `Y` at `site_j` on a multi-qubit state.
pub fn correlation<T: Real>(
    psi: &Ket<T>,
    x: &Op<T>,
    site_i: usize,
    y: &Op<T>,
    site_j: usize,
) -> Result<T> {
    if site_i == site_j {
        return Err(Error::SameSite { site: site_i });
    }
    for obs in [x, y] {
        if obs.dim() != 2 {
            return Err(Error::DimMismatch {
                left: obs.dim(),
                right: 2,
            });
        }
        if !obs.is_hermitian() {
            return Err(Error::NotHermitian {
                deviation: obs.hermitian_deviation().to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let n = psi.n_qubits();
    let product = embed(x, &[site_i], n)?.mul(&embed(y, &[site_j], n)?)?;
    expectation(psi, &product)
}
