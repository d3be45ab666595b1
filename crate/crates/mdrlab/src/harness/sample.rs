//! Seeded random inputs for the fuzz campaigns.
//!
//! Each trial derives its own generator from `(seed, trial index)`, so a
//! single trial can be replayed without running its predecessors and
//! campaigns are deterministic end to end.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::mdr::{haar_unitary, Scenario};
use crate::qcore::{Cplx, Ket, Vec3};

/// Axis pairs with `|a x b|` below this are resampled; keeps sampled
/// scenarios clear of the degenerate-axes rejection in the constructors.
pub const AXIS_REJECTION: f64 = 1e-6;

/// Generator for trial `trial` of a campaign seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Unit axis from a normalized Gaussian triple.
pub fn unit_axis(rng: &mut impl Rng) -> Vec3<f64> {
    loop {
        let v = Vec3::new(gauss(rng), gauss(rng), gauss(rng));
        if let Ok(unit) = v.normalized() {
            return unit;
        }
    }
}

/// Two unit axes kept away from (anti-)parallel.
pub fn axis_pair(rng: &mut impl Rng) -> (Vec3<f64>, Vec3<f64>) {
    loop {
        let a = unit_axis(rng);
        let b = unit_axis(rng);
        if a.cross(b).norm() >= AXIS_REJECTION {
            return (a, b);
        }
    }
}

/// Pure state with normalized complex Gaussian amplitudes.
pub fn pure_state(n_qubits: usize, rng: &mut impl Rng) -> Ket<f64> {
    loop {
        let amps: Vec<Cplx<f64>> = (0..(1usize << n_qubits))
            .map(|_| Cplx::new(gauss(rng), gauss(rng)))
            .collect();
        if let Ok(ket) = Ket::from_unnormalized(n_qubits, amps) {
            return ket;
        }
    }
}

/// Fully random measurement scenario: random parity, axes, preparation
/// direction, meter state, and a Haar-distributed interaction.
pub fn random_scenario(rng: &mut impl Rng) -> Scenario<f64> {
    let (a, b) = axis_pair(rng);
    let m = u8::from(rng.random_bool(0.5));
    let n_p = unit_axis(rng);
    let meter = pure_state(1, rng);
    let u13 = haar_unitary(4, rng);
    Scenario::new(m, a, b, n_p, meter, u13).expect("sampled inputs satisfy the invariants")
}
