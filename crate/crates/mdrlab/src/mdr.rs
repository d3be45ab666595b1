//! Measurement-interaction machinery: tripartite post-interaction states,
//! root-mean-square precision and disturbance functionals, standard
//! deviations, and the exact identity tying the pooled functionals to
//! bipartite correlation functions.
//!
//! Party convention: qubit 1 carries the signal, qubit 2 is the projective
//! preparation side of the entangled pair, qubit 3 is the meter. The
//! interaction unitary couples qubits 1 and 3.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::prep::{bell_state, project_prepare, BellPairSpec, Sign};
use crate::qcore::{correlation, embed, expectation, pauli_op, Cplx, Ket, Op, Vec3};
use crate::scalar::Real;

/// Full description of one measurement experiment: exchange parity `m`,
/// observable axes `a` and `b`, preparation axis `n_p`, meter state, and the
/// signal-meter interaction unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario<T> {
    m: u8,
    a: Vec3<T>,
    b: Vec3<T>,
    n_p: Vec3<T>,
    meter: Ket<T>,
    u13: Op<T>,
}

impl<T: Real> Scenario<T> {
    pub fn new(
        m: u8,
        a: Vec3<T>,
        b: Vec3<T>,
        n_p: Vec3<T>,
        meter: Ket<T>,
        u13: Op<T>,
    ) -> Result<Self> {
        if m > 1 {
            return Err(Error::BadParity { m });
        }
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite);
        }
        let cross = a.cross(b).norm();
        if cross <= T::axis_tol() {
            return Err(Error::DegenerateAxes {
                magnitude: cross.to_f64().unwrap_or(f64::NAN),
            });
        }
        let n_p = n_p.require_unit()?;
        if meter.n_qubits() != 1 {
            return Err(Error::BadQubitCount {
                n: meter.n_qubits(),
            });
        }
        if u13.dim() != 4 {
            return Err(Error::DimMismatch {
                left: u13.dim(),
                right: 4,
            });
        }
        if !u13.is_unitary() {
            return Err(Error::NotUnitary {
                deviation: u13.unitary_deviation().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            m,
            a,
            b,
            n_p,
            meter,
            u13,
        })
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn a(&self) -> Vec3<T> {
        self.a
    }

    pub fn b(&self) -> Vec3<T> {
        self.b
    }

    pub fn n_p(&self) -> Vec3<T> {
        self.n_p
    }

    pub fn meter(&self) -> &Ket<T> {
        &self.meter
    }

    pub fn u13(&self) -> &Op<T> {
        &self.u13
    }

    /// `(-1)^m`.
    pub fn parity_sign(&self) -> T {
        if self.m == 0 {
            T::one()
        } else {
            -T::one()
        }
    }

    pub(crate) fn pair_spec(&self) -> BellPairSpec<T> {
        BellPairSpec::from_axes(self.m, self.a, self.b).expect("validated at construction")
    }
}

/// Everything measured on one scenario: per-branch precision `eps`,
/// disturbance `eta`, standard deviations, commutator means, the two
/// tripartite correlations, and the residual of the exact identity
/// `|a|^2 + |b|^2 - (-1)^m [E(A2,A3) + E(B1,B2)] = (eps+^2 + eta+^2 +
/// eps-^2 + eta-^2)/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MdrSample<T> {
    pub eps_plus: T,
    pub eps_minus: T,
    pub eta_plus: T,
    pub eta_minus: T,
    pub delta_a_plus: T,
    pub delta_a_minus: T,
    pub delta_b_plus: T,
    pub delta_b_minus: T,
    pub comm_mean_plus: T,
    pub comm_mean_minus: T,
    pub e_a2a3: T,
    pub e_b1b2: T,
    pub identity_residual: T,
}

/// The controlled-NOT interaction: the meter flips exactly when the signal
/// qubit is spin-down along z.
pub fn cnot_u13<T: Real>() -> Op<T> {
    let zero = Cplx::new(T::zero(), T::zero());
    let one = Cplx::new(T::one(), T::zero());
    let mut entries = vec![zero; 16];
    for (row, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        entries[row * 4 + col] = one;
    }
    Op::classified(4, entries)
}

/// Real-amplitude meter family `cos(theta3)|0> + sin(theta3)|1>`.
pub fn meter_state<T: Real>(theta3: T) -> Ket<T> {
    Ket::trusted(
        1,
        vec![
            Cplx::new(theta3.cos(), T::zero()),
            Cplx::new(theta3.sin(), T::zero()),
        ],
    )
}

/// Haar-distributed random unitary: a complex Gaussian matrix orthonormalized
/// column by column with the triangular factor's diagonal kept real positive.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Op<T> {
    assert!(matches!(dim, 2 | 4 | 8), "unsupported dimension {dim}");
    'resample: loop {
        let mut cols: Vec<Vec<Cplx<T>>> = (0..dim)
            .map(|_| {
                (0..dim)
                    .map(|_| {
                        let re: f64 = rng.sample(StandardNormal);
                        let im: f64 = rng.sample(StandardNormal);
                        Cplx::new(T::lit(re), T::lit(im))
                    })
                    .collect()
            })
            .collect();
        for j in 0..dim {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let basis = &done[k];
                let col = &mut rest[0];
                let mut proj = Cplx::new(T::zero(), T::zero());
                for (b, x) in basis.iter().zip(col.iter()) {
                    proj += b.conj() * *x;
                }
                for (x, b) in col.iter_mut().zip(basis.iter()) {
                    *x -= *b * proj;
                }
            }
            let norm = cols[j].iter().map(|x| x.norm_sqr()).sum::<T>().sqrt();
            if norm < T::lit(1e-8) {
                continue 'resample; // numerically dependent draw
            }
            let scale = norm.recip();
            for x in &mut cols[j] {
                *x *= scale;
            }
        }
        let mut entries = vec![Cplx::new(T::zero(), T::zero()); dim * dim];
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                entries[r * dim + c] = *x;
            }
        }
        return Op::classified(dim, entries);
    }
}

/// Applies the interaction to (entangled pair) x (meter), producing the
/// tripartite state the correlation functions are read from.
pub fn post_interaction_state<T: Real>(scenario: &Scenario<T>) -> Ket<T> {
    let pair = bell_state(&scenario.pair_spec());
    let full = pair
        .tensor(&scenario.meter)
        .expect("two plus one qubits fit");
    embed(&scenario.u13, &[1, 3], 3)
        .expect("validated interaction embeds")
        .apply(&full)
        .expect("embedded unitary stays unitary")
}

enum GapKind {
    /// `U^dag (I x M) U - M x I`: meter readout against the signal value.
    Readout,
    /// `U^dag (M x I) U - M x I`: signal observable before vs after.
    BackAction,
}

/// `<(D)^2>` on `psi1 x meter` for the requested gap operator; the quadratic
/// form is kept un-rooted so callers can recombine it without precision loss.
fn gap_sq<T: Real>(
    psi1: &Ket<T>,
    meter: &Ket<T>,
    u13: &Op<T>,
    obs: &Op<T>,
    kind: GapKind,
) -> Result<T> {
    if psi1.n_qubits() != 1 || meter.n_qubits() != 1 {
        return Err(Error::BadQubitCount {
            n: psi1.n_qubits().max(meter.n_qubits()),
        });
    }
    if u13.dim() != 4 {
        return Err(Error::DimMismatch {
            left: u13.dim(),
            right: 4,
        });
    }
    if !u13.is_unitary() {
        return Err(Error::NotUnitary {
            deviation: u13.unitary_deviation().to_f64().unwrap_or(f64::NAN),
        });
    }
    let before = embed(obs, &[1], 2)?;
    let target = match kind {
        GapKind::Readout => embed(obs, &[2], 2)?,
        GapKind::BackAction => before.clone(),
    };
    let after = u13.adjoint().mul(&target)?.mul(u13)?;
    let gap = after.sub(&before)?;
    let compound = psi1.tensor(meter)?;
    let value = expectation(&compound, &gap.mul(&gap)?)?;
    clamp_rounding(value)
}

fn clamp_rounding<T: Real>(value: T) -> Result<T> {
    if value < -T::variance_floor() {
        return Err(Error::NegativeVariance {
            variance: value.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(value.max(T::zero()))
}

/// Root-mean-square gap between the meter's readout of `a_obs` after the
/// interaction and the signal value before it.
pub fn precision_epsilon<T: Real>(
    psi1: &Ket<T>,
    meter: &Ket<T>,
    u13: &Op<T>,
    a_obs: &Op<T>,
) -> Result<T> {
    Ok(gap_sq(psi1, meter, u13, a_obs, GapKind::Readout)?.sqrt())
}

/// Root-mean-square change the interaction inflicts on the signal
/// observable `b_obs`.
pub fn disturbance_eta<T: Real>(
    psi1: &Ket<T>,
    meter: &Ket<T>,
    u13: &Op<T>,
    b_obs: &Op<T>,
) -> Result<T> {
    Ok(gap_sq(psi1, meter, u13, b_obs, GapKind::BackAction)?.sqrt())
}

/// Standard deviation `sqrt(<X^2> - <X>^2)`; rounding-level negative
/// variances clamp to zero, anything worse is reported as corruption.
pub fn std_dev<T: Real>(psi: &Ket<T>, x: &Op<T>) -> Result<T> {
    let mean = expectation(psi, x)?;
    let mean_sq = expectation(psi, &x.mul(x)?)?;
    Ok(clamp_rounding(mean_sq - mean * mean)?.sqrt())
}

/// Runs the full pipeline on one scenario: prepares both branches, evaluates
/// the per-branch functionals, builds the tripartite state, reads off the
/// correlations, and evaluates the identity residual from the retained
/// quadratic forms.
pub fn evaluate_scenario<T: Real>(scenario: &Scenario<T>) -> Result<MdrSample<T>> {
    let a_op = pauli_op(scenario.a);
    let b_op = pauli_op(scenario.b);
    let c_op = pauli_op(scenario.a.cross(scenario.b));

    let pair = bell_state(&scenario.pair_spec());
    let mut eps_sq = [T::zero(); 2];
    let mut eta_sq = [T::zero(); 2];
    let mut delta_a = [T::zero(); 2];
    let mut delta_b = [T::zero(); 2];
    let mut comm_mean = [T::zero(); 2];
    for (slot, sign) in [Sign::Plus, Sign::Minus].into_iter().enumerate() {
        let branch = project_prepare(&pair, scenario.n_p, sign)?;
        eps_sq[slot] = gap_sq(
            &branch.psi1,
            &scenario.meter,
            &scenario.u13,
            &a_op,
            GapKind::Readout,
        )?;
        eta_sq[slot] = gap_sq(
            &branch.psi1,
            &scenario.meter,
            &scenario.u13,
            &b_op,
            GapKind::BackAction,
        )?;
        delta_a[slot] = std_dev(&branch.psi1, &a_op)?;
        delta_b[slot] = std_dev(&branch.psi1, &b_op)?;
        comm_mean[slot] = expectation(&branch.psi1, &c_op)?.abs();
    }

    let psi123 = post_interaction_state(scenario);
    let e_a2a3 = correlation(&psi123, &a_op, 2, &a_op, 3)?;
    let e_b1b2 = correlation(&psi123, &b_op, 1, &b_op, 2)?;

    let quarter = T::lit(0.25);
    let correlation_side =
        scenario.a.norm_sq() + scenario.b.norm_sq() - scenario.parity_sign() * (e_a2a3 + e_b1b2);
    let functional_side = quarter * (eps_sq[0] + eta_sq[0] + eps_sq[1] + eta_sq[1]);

    Ok(MdrSample {
        eps_plus: eps_sq[0].sqrt(),
        eps_minus: eps_sq[1].sqrt(),
        eta_plus: eta_sq[0].sqrt(),
        eta_minus: eta_sq[1].sqrt(),
        delta_a_plus: delta_a[0],
        delta_a_minus: delta_a[1],
        delta_b_plus: delta_b[0],
        delta_b_minus: delta_b[1],
        comm_mean_plus: comm_mean[0],
        comm_mean_minus: comm_mean[1],
        e_a2a3,
        e_b1b2,
        identity_residual: (correlation_side - functional_side).abs(),
    })
}
