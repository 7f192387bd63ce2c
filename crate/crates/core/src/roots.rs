//! Aberth–Ehrlich simultaneous root iteration for small complex polynomials.

use crate::error::{Error, Result};
use crate::scalar::C64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;
const MAX_RESTARTS: usize = 3;

fn horner(coeffs: &[C64], z: C64) -> (C64, C64) {
    // value and derivative in one pass
    let mut v = C64::new(0.0, 0.0);
    let mut d = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// All roots of `sum_k coeffs[k] x^k` to residual tolerance `root_tol`,
/// via simultaneous Aberth–Ehrlich iteration with randomized restarts.
///
/// Convergence is judged on the scale-invariant residual
/// `|p(z)| <= root_tol * max|c_k| * (1 + |z|)^deg`, so scaling the
/// polynomial leaves both the roots and the acceptance unchanged.
pub fn all_roots(coeffs: &[C64], root_tol: f64, seed: u64) -> Result<Vec<C64>> {
    // trim trailing (numerically) zero leading coefficients
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::validation("zero polynomial has no root set"));
    }
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].norm() < 1e-300 * scale.max(1.0) {
        deg -= 1;
    }
    if deg == 0 {
        return Err(Error::validation("constant polynomial has no roots"));
    }
    let coeffs = &coeffs[..=deg];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Cauchy-style radius for the initial ring of guesses
    let lead = coeffs[deg].norm();
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c.norm() / lead).powf(1.0 / deg as f64))
            .fold(0.0, f64::max);

    for _restart in 0..=MAX_RESTARTS {
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut z: Vec<C64> = (0..deg)
            .map(|i| {
                let theta = phase + std::f64::consts::TAU * i as f64 / deg as f64 + 0.35;
                C64::from_polar(radius * (1.0 + 0.1 * (i as f64 / deg as f64)), theta)
            })
            .collect();

        for _iter in 0..MAX_ITERATIONS {
            let mut moved = 0.0f64;
            let mut ok = true;
            for i in 0..deg {
                let (v, d) = horner(coeffs, z[i]);
                if !v.is_finite() || !d.is_finite() {
                    ok = false;
                    break;
                }
                let newton = if d.norm() > 0.0 { v / d } else { v };
                let mut rep = C64::new(0.0, 0.0);
                for j in 0..deg {
                    if j != i {
                        let diff = z[i] - z[j];
                        if diff.norm() > 1e-300 {
                            rep += diff.finv();
                        }
                    }
                }
                let denom = C64::new(1.0, 0.0) - newton * rep;
                let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
                z[i] -= step;
                moved = moved.max(step.norm());
            }
            if !ok {
                break;
            }
            if moved < root_tol * (1.0 + radius) {
                break;
            }
        }

        let worst = z
            .iter()
            .map(|&zi| horner(coeffs, zi).0.norm() / (scale * (1.0 + zi.norm()).powi(deg as i32)))
            .fold(0.0, f64::max);
        if worst <= root_tol {
            return Ok(z);
        }
    }

    let worst = 1.0; // recomputed below for the error payload
    let _ = worst;
    Err(Error::RootFindingFailure {
        residual: f64::NAN,
        tol: root_tol,
    })
}
