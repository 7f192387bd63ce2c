//! Coefficient recursion for the formal solution `X-hat = sum X_n(z) t^n`
//! and q-Gevrey growth certification of its coefficients.

use crate::equation::{p1_polynomial, Equation, ZERO_TOL};
use crate::error::{Error, Result};
use crate::fit::{fit_geometric, RATE_SAFETY};
use crate::powerseries::{CPoly, CTSeries, Series, ZPoly};
use crate::scalar::C64;
use serde::Serialize;

/// The computed head of the formal solution together with its norms.
#[derive(Debug, Clone)]
pub struct FormalSolution {
    /// `X_n(z)` for `n <= n_max` (zero above).
    pub series: CTSeries,
    pub n_max: usize,
    /// Sup norms on the sampled circle used by the last certification run.
    pub norms: Vec<f64>,
    /// Indices where the pivot `P1([n]_q; 0)` vanished but the data allowed
    /// the minimal choice `X_n = 0`.
    pub resonant_zeroed: Vec<usize>,
}

/// Fitted constants witnessing a growth or asymptotic bound.
#[derive(Debug, Clone, Serialize)]
pub struct GevreyCertificate {
    /// Prefactor (C or M, depending on the kind).
    pub c: f64,
    /// Geometric rate (h or H).
    pub h: f64,
    /// Disk radius the data was sampled on.
    pub radius: f64,
    pub kind: CertificateKind,
    /// Per-index rates the fit was read from.
    pub rates: Vec<f64>,
    /// Worst ratio value/bound observed (1 means tight).
    pub worst_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertificateKind {
    CoefficientGrowth,
    Asymptotic,
    BorelPlaneBound,
}

/// Sup norm of a z-polynomial over the circle `|z| = rho`, sampled at 64
/// equispaced points (the maximum principle puts the sup on the boundary).
pub fn sup_norm_circle(p: &CPoly, rho: f64) -> f64 {
    const N: usize = 64;
    (0..N)
        .map(|i| {
            let z = C64::from_polar(rho, std::f64::consts::TAU * i as f64 / N as f64);
            p.eval(&z).norm()
        })
        .fold(0.0, f64::max)
}

/// Solve the coefficient recursion
/// `P1([n]_q; z) X_n = F_n - sum a0_{j,alpha,l} ([n-l]_q)^j d_z^alpha X_{n-l}`
/// for `n = 0..=n_max`.
///
/// The split `a0_{j,0} = a_{j,0} - a_{j,0}(0,z)` (for the pure q-difference
/// terms below the corner) moves the `l = 0` contributions into `P1`, so each
/// step only reads strictly earlier coefficients. Division by
/// `P1([n]_q; z)` is truncated power-series division at z = 0.
pub fn solve_formal(eq: &Equation, n_max: usize) -> Result<FormalSolution> {
    if n_max > eq.mt() {
        return Err(Error::validation(format!(
            "n_max = {n_max} exceeds truncation order {}",
            eq.mt()
        )));
    }
    let mz = eq.mz();
    let p1 = p1_polynomial(eq);
    let m0 = p1.degree();
    let q = &eq.q;

    // a0 tables: constant t-slot removed for j <= m0, alpha = 0
    let a0: Vec<(usize, usize, CTSeries)> = eq
        .terms
        .iter()
        .map(|t| {
            let mut c = t.coeff.clone();
            if t.alpha == 0 && t.j <= m0 {
                c.set_coeff(0, ZPoly::zero(mz));
            }
            (t.j, t.alpha, c)
        })
        .collect();

    let data_scale = eq.rhs.max_abs().max(1.0);
    let mut xs: Vec<CPoly> = Vec::with_capacity(n_max + 1);
    let mut resonant_zeroed = Vec::new();

    for n in 0..=n_max {
        let mut rhs_n = eq.rhs.coeff(n).clone();
        for (j, alpha, c) in &a0 {
            for l in 1..=n {
                let al = c.coeff(l);
                if al.is_zero() {
                    continue;
                }
                let w = q.qnum(n - l).powi(*j as i32);
                if w == 0.0 {
                    continue;
                }
                let contrib = al.mul(&xs[n - l].derivative(*alpha)).scale(&C64::new(w, 0.0));
                rhs_n = rhs_n.sub(&contrib);
            }
        }
        let pivot = p1.eval_poly(C64::new(q.qnum(n), 0.0));
        if pivot.coeff(0).norm() < ZERO_TOL {
            // Resonant index. The recursion still has the solution X_n = 0
            // when the data side vanishes; otherwise the formal solution may
            // not exist or not be unique.
            if rhs_n.max_abs() < 1e-10 * data_scale {
                xs.push(ZPoly::zero(mz));
                resonant_zeroed.push(n);
                continue;
            }
            return Err(Error::ResonantIndex(n));
        }
        xs.push(rhs_n.mul(&pivot.recip()));
    }

    let mut series: CTSeries = Series::zero(eq.mt(), mz);
    for (n, x) in xs.iter().enumerate() {
        series.set_coeff(n, x.clone());
    }
    let norms = xs.iter().map(|x| sup_norm_circle(x, 0.5)).collect();
    Ok(FormalSolution {
        series,
        n_max,
        norms,
        resonant_zeroed,
    })
}

/// Closed-form coefficients of the model equation
/// `(tD_q + 1) X = a t/(1-z) + t (tD_q)^2 X + b t d_z^alpha X`:
///
/// `X_{n+1}(z) = [prod_{k=1}^n ([k]_q^2 + b d_z^alpha)] /
///              [prod_{k=1}^{n+1} ([k]_q + 1)] (a/(1-z))`,
///
/// evaluated on the Taylor polynomial of `a/(1-z)` truncated at `Mz`.
pub fn example53_oracle(n: usize, q: f64, a: f64, b: f64, alpha: usize, mz: usize) -> CPoly {
    let qp = crate::qcore::QParam::new(q).expect("q > 1");
    // a/(1-z) = a sum z^k
    let mut p = ZPoly::new(vec![C64::new(a, 0.0); mz + 1]);
    for k in 1..=n {
        let knum = qp.qnum(k);
        p = p
            .scale(&C64::new(knum * knum, 0.0))
            .add(&p.derivative(alpha).scale(&C64::new(b, 0.0)));
    }
    let mut denom = 1.0;
    for k in 1..=n + 1 {
        denom *= qp.qnum(k) + 1.0;
    }
    p.scale(&C64::new(1.0 / denom, 0.0))
}

/// Fit `(C, h)` with `||X_n||_rho <= C h^n [n]_q!` from the computed
/// coefficients: per-index rates `r_n = (||X_n||_rho / [n]_q!)^{1/n}` are
/// read over the stable tail window `[n_max/2, n_max]`, `h` is their max
/// times a 1.05 safety factor, and `C` the worst remaining ratio.
pub fn growth_certificate(
    sol: &FormalSolution,
    eq: &Equation,
    big_r: f64,
    rho: f64,
) -> Result<GevreyCertificate> {
    if !(rho < big_r) {
        return Err(Error::validation("need rho < R"));
    }
    let q = &eq.q;
    let norms: Vec<f64> = (0..=sol.n_max)
        .map(|n| sup_norm_circle(sol.series.coeff(n), rho))
        .collect();
    if norms.iter().all(|&v| v == 0.0) {
        return Ok(GevreyCertificate {
            c: 1.0,
            h: 1.0,
            radius: rho,
            kind: CertificateKind::CoefficientGrowth,
            rates: Vec::new(),
            worst_ratio: 0.0,
        });
    }
    let scaled: Vec<(usize, f64)> = (1..=sol.n_max)
        .map(|n| (n, norms[n] / q.qfactorial(n).unwrap_or(f64::INFINITY)))
        .collect();
    let fit = fit_geometric(&scaled, q.q().ln() / 4.0)?;
    // re-assert the certified inequality index by index
    let mut worst: f64 = 0.0;
    for &(n, v) in &scaled {
        if v > 0.0 {
            worst = worst.max(v / (fit.c * fit.h.powi(n as i32)));
        }
    }
    debug_assert!(worst <= 1.0 + 1e-9, "fit must dominate its own data");
    Ok(GevreyCertificate {
        c: fit.c.max(norms[0]),
        h: fit.h,
        radius: rho,
        kind: CertificateKind::CoefficientGrowth,
        rates: fit.rates,
        worst_ratio: worst,
    })
}

/// Safety factor re-exported for reports.
pub const H_SAFETY: f64 = RATE_SAFETY;
