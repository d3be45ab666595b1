//! Independent dense-matrix oracle for the integration tests.
//!
//! Deliberately built on plain nested vectors with textbook formulas (block
//! Kronecker products, explicit loops) so it shares no code with the
//! library's bit-indexed operator machinery.

#![allow(dead_code)]

pub type C = num_complex::Complex64;
pub type Mat = Vec<Vec<C>>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn eye(n: usize) -> Mat {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|col| c(f64::from(u8::from(r == col)), 0.0))
                .collect()
        })
        .collect()
}

pub fn sigma_x() -> Mat {
    vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ]
}

pub fn sigma_y() -> Mat {
    vec![
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ]
}

pub fn sigma_z() -> Mat {
    vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ]
}

pub fn pauli(v: [f64; 3]) -> Mat {
    vec![
        vec![c(v[2], 0.0), c(v[0], -v[1])],
        vec![c(v[0], v[1]), c(-v[2], 0.0)],
    ]
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for r in 0..n {
        for k in 0..n {
            for col in 0..n {
                out[r][col] += a[r][k] * b[k][col];
            }
        }
    }
    out
}

pub fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| *x + *y).collect())
        .collect()
}

pub fn mat_sub(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| *x - *y).collect())
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for r1 in 0..na {
        for c1 in 0..na {
            for r2 in 0..nb {
                for c2 in 0..nb {
                    out[r1 * nb + r2][c1 * nb + c2] = a[r1][c1] * b[r2][c2];
                }
            }
        }
    }
    out
}

/// Single-site operator on an `n`-qubit register by chaining Kronecker
/// factors; site 1 is the leftmost (most significant) factor.
pub fn at_site(op2: &Mat, site: usize, n_qubits: usize) -> Mat {
    let mut out = if site == 1 { op2.clone() } else { eye(2) };
    for k in 2..=n_qubits {
        let factor = if k == site { op2.clone() } else { eye(2) };
        out = kron(&out, &factor);
    }
    out
}

pub fn mat_vec(m: &Mat, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, x)| *a * *x).sum())
        .collect()
}

pub fn inner(u: &[C], v: &[C]) -> C {
    u.iter().zip(v).map(|(a, b)| a.conj() * *b).sum()
}

pub fn expectation(psi: &[C], m: &Mat) -> C {
    inner(psi, &mat_vec(m, psi))
}

/// Two-site correlation by explicit contraction.
pub fn corr(psi: &[C], x: &Mat, site_i: usize, y: &Mat, site_j: usize, n_qubits: usize) -> f64 {
    let product = mat_mul(&at_site(x, site_i, n_qubits), &at_site(y, site_j, n_qubits));
    expectation(psi, &product).re
}

pub fn bloch(psi: &[C]) -> [f64; 3] {
    [
        expectation(psi, &sigma_x()).re,
        expectation(psi, &sigma_y()).re,
        expectation(psi, &sigma_z()).re,
    ]
}
