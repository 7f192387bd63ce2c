//! q-arithmetic kernel: q-integers and q-factorials, the two q-exponentials
//! used as Laplace/Borel kernels, the majorant functions `phi_m`, and the
//! q-shifted products that appear in Jackson integrals.
//!
//! Throughout the crate `q > 1` is fixed and `p = 1/q`.

use crate::error::{Error, Result};
use crate::scalar::{Scalar, C64};
use serde::{Deserialize, Serialize};

/// Default relative truncation tolerance for the infinite q-exponential
/// products: a factor within `PRODUCT_TOL` of 1 ends the product.
pub const PRODUCT_TOL: f64 = 1e-14;

/// Default guard for factors of the reciprocal product defining `Exp_q`;
/// a factor magnitude below this signals a pole-adjacent evaluation.
pub const POLE_GUARD: f64 = 1e-8;

/// The base of the q-calculus, with its reciprocal cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QParam {
    q: f64,
    p: f64,
}

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 1.0) || !q.is_finite() {
            return Err(Error::validation(format!("q must satisfy q > 1, got {q}")));
        }
        Ok(QParam { q, p: 1.0 / q })
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    /// [n]_q = (q^n - 1)/(q - 1).
    pub fn qnum(&self, n: usize) -> f64 {
        (self.q.powi(n as i32) - 1.0) / (self.q - 1.0)
    }

    /// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
    ///
    /// The values grow like `q^{n^2/2}`; overflow is reported rather than
    /// silently saturated.
    pub fn qfactorial(&self, n: usize) -> Result<f64> {
        let mut acc = 1.0f64;
        for k in 1..=n {
            acc *= self.qnum(k);
            if !acc.is_finite() {
                return Err(Error::Overflow(k));
            }
        }
        Ok(acc)
    }

    /// log([n]_q!) computed termwise; safe far beyond f64 overflow.
    pub fn log_qfactorial(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.qnum(k).ln()).sum()
    }
}

/// Truncation spec for the kernel majorants `phi_m(x; h)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiSpec {
    pub m: usize,
    pub h: f64,
    pub tail_eps: f64,
}

impl PhiSpec {
    pub fn new(m: usize, h: f64, tail_eps: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::validation(format!("phi rate h must be > 0, got {h}")));
        }
        if !(tail_eps > 0.0) {
            return Err(Error::validation("phi tail_eps must be > 0"));
        }
        Ok(PhiSpec { m, h, tail_eps })
    }
}

/// [n]_q in an arbitrary scalar ring, as 1 + q + ... + q^{n-1} (exact for
/// rationals).
pub fn qnum_in<S: Scalar>(n: usize, q: &S) -> S {
    let mut acc = S::zero();
    for _ in 0..n {
        acc = acc * q.clone() + S::one();
    }
    acc
}

/// [n]_q! in an arbitrary scalar ring.
pub fn qfactorial_in<S: Scalar>(n: usize, q: &S) -> S {
    let mut acc = S::one();
    for k in 1..=n {
        acc = acc * qnum_in(k, q);
    }
    acc
}

/// Scalar power with usize exponent.
pub fn pow_in<S: Scalar>(base: &S, e: usize) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

/// Entire q-exponential `exp_q(x) = sum x^n/[n]_q!`, evaluated through the
/// product `prod_{m>=0} (1 + q^{-m-1}(q-1) x)` truncated once the deviation
/// factor drops below `tol`.
pub fn exp_q(x: C64, q: &QParam, tol: f64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut scale = (q.q() - 1.0) * q.p();
    loop {
        let dev = x * scale;
        if dev.norm() < tol {
            break;
        }
        acc *= C64::new(1.0, 0.0) + dev;
        scale *= q.p();
    }
    acc
}

/// `log exp_q(x)` for real `x > 0`, summed factorwise so that arguments far
/// past f64 overflow remain evaluable.
pub fn log_exp_q(x: f64, q: &QParam, tol: f64) -> f64 {
    let mut acc = 0.0f64;
    let mut scale = (q.q() - 1.0) * q.p();
    loop {
        let dev = x * scale;
        if dev.abs() < tol {
            break;
        }
        acc += (1.0 + dev).ln();
        scale *= q.p();
    }
    acc
}

/// Partial sum of the series `exp_q(x) = sum x^n/[n]_q!` (test oracle for the
/// product form).
pub fn exp_q_series(x: C64, q: &QParam, terms: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for n in 0..terms {
        acc += term;
        term = term * x / q.qnum(n + 1);
    }
    acc
}

/// Meromorphic q-exponential `Exp_q(x) = 1 / prod_{m>=0}(1 - q^{-m-1}(q-1)x)`,
/// the q-Laplace kernel. Poles sit at `x = q^{m+1}/(q-1)`.
///
/// Returns [`Error::PoleProximity`] when some factor magnitude falls below
/// `pole_guard`; downstream this marks t-plane points inside the spiral
/// neighbourhood that the summation must skip.
pub fn exp_q_cap(x: C64, q: &QParam, tol: f64, pole_guard: f64) -> Result<C64> {
    let mut acc = C64::new(1.0, 0.0);
    let mut scale = (q.q() - 1.0) * q.p();
    loop {
        let dev = x * scale;
        if dev.norm() < tol {
            break;
        }
        let factor = C64::new(1.0, 0.0) - dev;
        if factor.norm() < pole_guard {
            return Err(Error::PoleProximity {
                guard: pole_guard,
                factor: factor.norm(),
            });
        }
        acc *= factor;
        scale *= q.p();
    }
    Ok(acc.finv())
}

/// Partial sum of `Exp_q(x) = sum q^{n(n-1)/2} x^n / [n]_q!` (test oracle).
pub fn exp_q_cap_series(x: C64, q: &QParam, terms: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for n in 0..terms {
        acc += term;
        // next term: multiply by q^n x / [n+1]_q
        term = term * x * q.q().powi(n as i32) / q.qnum(n + 1);
    }
    acc
}

/// Kernel majorant `phi_m(x; h) = sum_{i>=0} h^i x^{m+i} / [m+i]_q!` for
/// `x >= 0`, summed until the geometric tail bound drops below `tail_eps`
/// (relative to the partial sum). `phi_0(x; h) = exp_q(hx)`.
pub fn phi(spec: &PhiSpec, x: f64, q: &QParam) -> f64 {
    debug_assert!(x >= 0.0, "phi is a majorant of nonnegative arguments");
    if x == 0.0 {
        return if spec.m == 0 { 1.0 } else { 0.0 };
    }
    let log_x = x.ln();
    let log_t0 = spec.m as f64 * log_x - q.log_qfactorial(spec.m);
    // Start from the log to survive large m; early factors may exceed f64.
    let mut term = log_t0.exp();
    let mut acc = 0.0f64;
    let mut i = 0usize;
    loop {
        acc += term;
        let ratio = spec.h * x / q.qnum(spec.m + i + 1);
        term *= ratio;
        i += 1;
        // [n]_q -> infinity, so the ratio eventually decays geometrically.
        if ratio < 1.0 {
            let tail_bound = term / (1.0 - ratio);
            if tail_bound <= spec.tail_eps * (acc.abs() + spec.tail_eps) {
                break;
            }
        }
        if i > 100_000 {
            break;
        }
    }
    acc
}

/// q-shifted product `(xi - p y)^k_p = (xi - p y)(xi - p^2 y) ... (xi - p^k y)`,
/// with the empty product equal to 1.
pub fn qshift_product(xi: C64, y: C64, k: usize, q: &QParam) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut ps = q.p();
    for _ in 0..k {
        acc *= xi - y * ps;
        ps *= q.p();
    }
    acc
}

/// Both sides of the base-change identity
/// `[m]_{q^n} = (1/[n]_q) sum_{i=0}^{n-1} ((q-1)[m]_q + 1)^i [m]_q`.
pub fn qnum_base_identity(m: usize, n: usize, q: &QParam) -> (f64, f64) {
    assert!(n >= 1, "base-change identity needs n >= 1");
    let qn = QParam::new(q.q().powi(n as i32)).expect("q^n > 1");
    let lhs = qn.qnum(m);
    let mq = q.qnum(m);
    let base = (q.q() - 1.0) * mq + 1.0;
    let mut sum = 0.0;
    let mut pw = 1.0;
    for _ in 0..n {
        sum += pw * mq;
        pw *= base;
    }
    (lhs, sum / q.qnum(n))
}

/// Exact-scalar version of [`qnum_base_identity`].
pub fn qnum_base_identity_in<S: Scalar>(m: usize, n: usize, q: &S) -> (S, S) {
    assert!(n >= 1);
    let qn = pow_in(q, n);
    let lhs = qnum_in(m, &qn);
    let mq = qnum_in(m, q);
    let base = (q.clone() - S::one()) * mq.clone() + S::one();
    let mut sum = S::zero();
    let mut pw = S::one();
    for _ in 0..n {
        sum = sum + pw.clone() * mq.clone();
        pw = pw * base.clone();
    }
    (lhs, sum / qnum_in(n, q))
}
