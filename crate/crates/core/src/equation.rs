//! Data model for the linear q-difference-differential equation
//! `sum a_{j,alpha}(t,z) (tD_q)^j d_z^alpha X = F(t,z)`, its t-Newton
//! polygon, the structural assumptions gating summability, the polynomials
//! `P0`/`P1`, singular directions and the sector lower bound.

use crate::error::{Error, Result};
use crate::powerseries::{CPoly, CTSeries, Series, ZPoly};
use crate::qcore::QParam;
use crate::roots::{all_roots, DEFAULT_ROOT_TOL};
use crate::scalar::C64;
use serde::Serialize;

/// Absolute tolerance on the largest z-coefficient for "identically zero
/// near z = 0" decisions (`ord_t`, pivots, order checks).
pub const ZERO_TOL: f64 = 1e-13;

/// Floor for the fitted sector constant delta-hat.
pub const DELTA_FLOOR: f64 = 1e-9;

/// One operator term `a_{j,alpha}(t,z) (tD_q)^j d_z^alpha`.
#[derive(Debug, Clone)]
pub struct Term {
    pub j: usize,
    pub alpha: usize,
    pub coeff: CTSeries,
}

/// The full equation data: base `q`, weight `sigma`, total order `m`, the
/// operator terms and the right-hand side.
#[derive(Debug, Clone)]
pub struct Equation {
    pub q: QParam,
    pub sigma: f64,
    pub m: usize,
    pub terms: Vec<Term>,
    pub rhs: CTSeries,
}

/// `ord_t`: index of the first t-coefficient that is not identically zero
/// (above [`ZERO_TOL`] on its largest z-coefficient); `None` for the zero
/// series.
pub fn ord_t(f: &CTSeries) -> Option<usize> {
    (0..=f.mt()).find(|&n| f.coeff(n).max_abs() > ZERO_TOL)
}

impl Equation {
    pub fn new(
        q: QParam,
        sigma: f64,
        m: usize,
        terms: Vec<Term>,
        rhs: CTSeries,
    ) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::validation("sigma must be positive"));
        }
        if m == 0 {
            return Err(Error::validation("total order m must be >= 1"));
        }
        if terms.is_empty() {
            return Err(Error::validation("equation needs at least one term"));
        }
        let mt = rhs.mt();
        let mz = rhs.mz();
        let mut keys = std::collections::BTreeSet::new();
        for t in &terms {
            if !keys.insert((t.j, t.alpha)) {
                return Err(Error::validation(format!(
                    "duplicate term key (j, alpha) = ({}, {})",
                    t.j, t.alpha
                )));
            }
            if t.j as f64 + sigma * t.alpha as f64 > m as f64 + 1e-9 {
                return Err(Error::validation(format!(
                    "term (j, alpha) = ({}, {}) violates j + sigma*alpha <= m",
                    t.j, t.alpha
                )));
            }
            if t.coeff.mt() != mt || t.coeff.mz() != mz {
                return Err(Error::validation("all series must share one truncation pair"));
            }
        }
        let min_ord = terms.iter().filter_map(|t| ord_t(&t.coeff)).min();
        match min_ord {
            Some(0) => {}
            Some(o) => {
                return Err(Error::validation(format!(
                    "normalization requires min ord_t(a) = 0, found {o}"
                )))
            }
            None => return Err(Error::validation("all coefficients vanish identically")),
        }
        Ok(Equation {
            q,
            sigma,
            m,
            terms,
            rhs,
        })
    }

    pub fn mt(&self) -> usize {
        self.rhs.mt()
    }

    pub fn mz(&self) -> usize {
        self.rhs.mz()
    }

    pub fn term(&self, j: usize, alpha: usize) -> Option<&Term> {
        self.terms.iter().find(|t| t.j == j && t.alpha == alpha)
    }

    /// Apply the operator side to a series: `sum a_{j,alpha} (tD_q)^j d_z^alpha X`.
    pub fn apply_operator(&self, x: &CTSeries) -> CTSeries {
        let qn = C64::new(self.q.q(), 0.0);
        let mut acc: CTSeries = Series::zero(self.mt(), self.mz());
        for t in &self.terms {
            let mut y = x.dz(t.alpha);
            for _ in 0..t.j {
                y = crate::powerseries::tdq_apply(&y, &qn);
            }
            acc = acc.add(&t.coeff.mul(&y));
        }
        acc
    }

    /// Residual of a candidate formal solution: operator applied minus rhs.
    pub fn residual(&self, x: &CTSeries) -> CTSeries {
        self.apply_operator(x).sub(&self.rhs)
    }
}

/// The t-Newton polygon: lower boundary vertices of the convex hull of the
/// quadrants `C(j, ord_t(a_{j,alpha})) = { x <= j, y >= ord }`.
#[derive(Debug, Clone, Serialize)]
pub struct NewtonPolygon {
    /// Lower-boundary vertices, left to right, starting at the corner where
    /// the horizontal ray ends.
    pub vertices: Vec<(usize, usize)>,
    /// Corner abscissa `m0` when the polygon has the admissible shape
    /// `{ x <= m, y >= max(0, x - m0) }` with `0 <= m0 < m`.
    pub m0: Option<usize>,
    /// Slopes of the boundary segments between consecutive vertices.
    pub slopes: Vec<f64>,
}

/// Lower-left hull of the quadrant corners.
pub fn newton_polygon(eq: &Equation) -> NewtonPolygon {
    // For each j keep the smallest order (its quadrant contains the others).
    let mut best: std::collections::BTreeMap<usize, usize> = Default::default();
    for t in &eq.terms {
        if let Some(o) = ord_t(&t.coeff) {
            best.entry(t.j)
                .and_modify(|b| *b = (*b).min(o))
                .or_insert(o);
        }
    }
    let pts: Vec<(usize, usize)> = best.into_iter().collect();
    debug_assert!(!pts.is_empty(), "validated equations have a finite point");

    let x_max = pts.iter().map(|p| p.0).max().unwrap();
    let y_min = pts.iter().map(|p| p.1).min().unwrap();
    // corner where the horizontal ray y = y_min ends: largest x achieving it
    let x_corner = pts
        .iter()
        .filter(|p| p.1 == y_min)
        .map(|p| p.0)
        .max()
        .unwrap();

    // monotone-chain lower hull over points right of the corner
    let mut chain: Vec<(usize, usize)> = vec![(x_corner, y_min)];
    let mut candidates: Vec<(usize, usize)> = pts
        .iter()
        .copied()
        .filter(|&(x, _)| x > x_corner)
        .collect();
    candidates.sort();
    for p in candidates {
        while chain.len() >= 2 {
            let a = chain[chain.len() - 2];
            let b = chain[chain.len() - 1];
            // drop b when it lies on or above the segment a -> p
            let cross = (b.0 as i64 - a.0 as i64) * (p.1 as i64 - a.1 as i64)
                - (b.1 as i64 - a.1 as i64) * (p.0 as i64 - a.0 as i64);
            if cross >= 0 {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(p);
    }
    // the final vertical ray sits at x_max; ensure the chain reaches it
    if chain.last().unwrap().0 != x_max {
        // points at x_max were all above the hull; the vertical edge still
        // starts at the hull end (ties broken toward smaller j earlier)
        debug_assert!(chain.last().unwrap().0 <= x_max);
    }

    let slopes: Vec<f64> = chain
        .windows(2)
        .map(|w| (w[1].1 as f64 - w[0].1 as f64) / (w[1].0 as f64 - w[0].0 as f64))
        .collect();

    // admissible shape: y_min = 0, single slope-1 edge from (m0, 0) to
    // (m, m - m0), vertical ray exactly at x = m with 0 <= m0 < m
    let m0 = if y_min == 0
        && chain.len() == 2
        && chain[0].0 < eq.m
        && chain[1] == (eq.m, eq.m - chain[0].0)
        && (chain[1].1 as i64 - chain[0].1 as i64) == (chain[1].0 as i64 - chain[0].0 as i64)
    {
        Some(chain[0].0)
    } else {
        None
    };

    NewtonPolygon {
        vertices: chain,
        m0,
        slopes,
    }
}

/// Per-assumption report emitted by [`check_assumptions`].
#[derive(Debug, Clone, Serialize)]
pub struct AssumptionReport {
    /// Polygon has the admissible corner shape.
    pub a1: bool,
    /// Every term with alpha > 0 sits strictly inside the polygon.
    pub a2: bool,
    /// Corner coefficients do not vanish at the origin.
    pub a3: bool,
    /// Stronger order condition on mixed terms with m0 <= j < m, alpha > 0.
    pub cond_2_2: bool,
    pub m0: Option<usize>,
    /// Terms violating one of the checks, with the reason.
    pub violations: Vec<String>,
}

impl AssumptionReport {
    pub fn all_core(&self) -> bool {
        self.a1 && self.a2 && self.a3
    }
}

pub fn check_assumptions(eq: &Equation) -> AssumptionReport {
    let polygon = newton_polygon(eq);
    let mut violations = Vec::new();
    let a1 = polygon.m0.is_some();
    let m = eq.m;

    let (a2, a3, cond_2_2) = if let Some(m0) = polygon.m0 {
        let mut a2 = true;
        let mut cond = true;
        for t in &eq.terms {
            let Some(o) = ord_t(&t.coeff) else { continue };
            if t.alpha > 0 {
                let interior = t.j < m && o as i64 > (t.j as i64 - m0 as i64).max(0);
                if !interior {
                    a2 = false;
                    violations.push(format!(
                        "A2: (j, alpha) = ({}, {}) with ord_t = {o} not interior",
                        t.j, t.alpha
                    ));
                }
                if t.j >= m0 && t.j < m && (o as i64) < t.j as i64 - m0 as i64 + 2 {
                    cond = false;
                    violations.push(format!(
                        "order condition: (j, alpha) = ({}, {}) has ord_t = {o} < j - m0 + 2",
                        t.j, t.alpha
                    ));
                }
            }
        }
        // A3: a_{m0,0}(0,0) != 0 and a_{m,0}/t^{m-m0} nonzero at the origin
        let corner_low = eq
            .term(m0, 0)
            .and_then(|t| {
                let c = t.coeff.coeff(0).coeff(0);
                (c.norm() > ZERO_TOL).then_some(())
            })
            .is_some();
        let corner_high = eq
            .term(m, 0)
            .and_then(|t| {
                let k = m - m0;
                if k > t.coeff.mt() {
                    return None;
                }
                let c = t.coeff.coeff(k).coeff(0);
                (c.norm() > ZERO_TOL).then_some(())
            })
            .is_some();
        if !corner_low {
            violations.push(format!("A3: a_{{{m0},0}}(0,0) vanishes"));
        }
        if !corner_high {
            violations.push(format!("A3: a_{{{m},0}}/t^{} vanishes at the origin", m - m0));
        }
        (a2, corner_low && corner_high, cond)
    } else {
        violations.push("A1: polygon shape not admissible".into());
        (false, false, false)
    };

    AssumptionReport {
        a1,
        a2,
        a3,
        cond_2_2,
        m0: polygon.m0,
        violations,
    }
}

/// A polynomial in the Borel-direction variable with z-polynomial
/// coefficients, `sum_k coeffs[k](z) lambda^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaPoly {
    pub coeffs: Vec<CPoly>,
}

impl LambdaPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluate in lambda only.
    pub fn eval_poly(&self, lambda: C64) -> CPoly {
        let mz = self.coeffs[0].mz();
        let mut acc = ZPoly::zero(mz);
        for c in self.coeffs.iter().rev() {
            acc = acc.scale(&lambda).add(c);
        }
        acc
    }

    pub fn eval(&self, lambda: C64, z: C64) -> C64 {
        self.eval_poly(lambda).eval(&z)
    }

    /// Coefficients at z = 0.
    pub fn at_z0(&self) -> Vec<C64> {
        self.coeffs.iter().map(|c| *c.coeff(0)).collect()
    }
}

/// `P0(lambda, z) = sum_{m0<=j<=m} b_{j,0}(0,z) / q^{j(j-1)/2} * lambda^{j-m0}`,
/// where `b_{j,0} = a_{j,0}/t^{j-m0}`.
pub fn p0_polynomial(eq: &Equation) -> Result<LambdaPoly> {
    let report = check_assumptions(eq);
    let Some(m0) = report.m0 else {
        return Err(Error::ShapeMismatch);
    };
    let mz = eq.mz();
    let mut coeffs = vec![ZPoly::zero(mz); eq.m - m0 + 1];
    for j in m0..=eq.m {
        if let Some(t) = eq.term(j, 0) {
            let k = j - m0;
            if k <= t.coeff.mt() {
                // b_{j,0}(0,z) is the t^{j-m0} coefficient; division exact by (2.1)
                let b0 = t.coeff.coeff(k).clone();
                let w = C64::new(eq.q.q().powi(-((j * (j - 1) / 2) as i32)), 0.0);
                coeffs[j - m0] = b0.scale(&w);
            }
        }
    }
    Ok(LambdaPoly { coeffs })
}

/// `P1(lambda; z) = sum_{0<=j<=m0} a_{j,0}(0,z) lambda^j`.
///
/// When the polygon shape is unavailable the sum runs over all pure
/// q-difference terms with `j <= m`, which callers only use diagnostically.
pub fn p1_polynomial(eq: &Equation) -> LambdaPoly {
    let report = check_assumptions(eq);
    let m0 = report.m0.unwrap_or(eq.m);
    let mz = eq.mz();
    let mut coeffs = vec![ZPoly::zero(mz); m0 + 1];
    for j in 0..=m0 {
        if let Some(t) = eq.term(j, 0) {
            coeffs[j] = t.coeff.coeff(0).clone();
        }
    }
    LambdaPoly { coeffs }
}

/// Roots of `P0(lambda, 0)` and the singular rays through them.
#[derive(Debug, Clone, Serialize)]
pub struct DirectionSet {
    pub roots: Vec<C64>,
    /// Unit-modulus ray directions.
    pub rays: Vec<C64>,
}

impl DirectionSet {
    /// Angular distance from `arg lambda` to the nearest singular ray.
    pub fn angular_gap(&self, lambda: C64) -> f64 {
        let arg = lambda.arg();
        self.rays
            .iter()
            .map(|r| {
                let mut d = (arg - r.arg()).abs() % std::f64::consts::TAU;
                if d > std::f64::consts::PI {
                    d = std::f64::consts::TAU - d;
                }
                d
            })
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn singular_directions(eq: &Equation, root_tol: f64) -> Result<DirectionSet> {
    let p0 = p0_polynomial(eq)?;
    let coeffs = p0.at_z0();
    if coeffs.len() < 2 {
        return Err(Error::validation("P0(., 0) is constant; no directions"));
    }
    let roots = all_roots(&coeffs, root_tol, 0)?;
    for r in &roots {
        if r.norm() < root_tol {
            return Err(Error::validation(
                "P0(., 0) has a vanishing root; corner coefficient degenerate",
            ));
        }
    }
    let rays = roots.iter().map(|r| r / r.norm()).collect();
    Ok(DirectionSet { roots, rays })
}

/// Sampling density for [`sector_lower_bound`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SectorSampling {
    pub n_angles: usize,
    pub n_radii: usize,
    pub r_min: f64,
    pub r_max: f64,
    pub n_z: usize,
}

impl Default for SectorSampling {
    fn default() -> Self {
        SectorSampling {
            n_angles: 16,
            n_radii: 40,
            r_min: 1e-3,
            r_max: 1e3,
            n_z: 8,
        }
    }
}

/// Sampled lower bound `delta-hat = min |P0(xi, z)| / (1 + |xi|)^{m - m0}`
/// over the sector `arg xi in I`, `|xi|` log-spaced, and `z` on the boundary
/// circle `|z| = R` (plus the origin).
pub fn sector_lower_bound(
    eq: &Equation,
    lambda: C64,
    interval: (f64, f64),
    big_r: f64,
    samples: &SectorSampling,
) -> Result<f64> {
    let (th1, th2) = interval;
    if !(th1 < th2) {
        return Err(Error::validation("empty angle interval"));
    }
    let arg = lambda.arg();
    if !(arg > th1 && arg < th2) {
        return Err(Error::validation("arg lambda must lie inside the interval"));
    }
    let dirs = singular_directions(eq, DEFAULT_ROOT_TOL)?;
    // the interval must keep a margin from every singular ray
    for ray in &dirs.rays {
        let a = ray.arg();
        for shift in [-std::f64::consts::TAU, 0.0, std::f64::consts::TAU] {
            let as_ = a + shift;
            if as_ > th1 - 1e-9 && as_ < th2 + 1e-9 {
                return Err(Error::DegenerateSector {
                    delta: 0.0,
                    floor: DELTA_FLOOR,
                });
            }
        }
    }

    let p0 = p0_polynomial(eq)?;
    let m0 = check_assumptions(eq).m0.ok_or(Error::ShapeMismatch)?;
    let power = (eq.m - m0) as i32;
    let mut delta = f64::INFINITY;
    let log_step = (samples.r_max / samples.r_min).ln() / (samples.n_radii - 1).max(1) as f64;
    for ia in 0..samples.n_angles {
        let theta = th1 + (th2 - th1) * (ia as f64 + 0.5) / samples.n_angles as f64;
        for ir in 0..samples.n_radii {
            let r = samples.r_min * (log_step * ir as f64).exp();
            let xi = C64::from_polar(r, theta);
            let pz = p0.eval_poly(xi);
            let denom = (1.0 + r).powi(power);
            // z = 0 and the boundary circle
            let mut local = pz.eval(&C64::new(0.0, 0.0)).norm();
            for iz in 0..samples.n_z {
                let z = C64::from_polar(
                    big_r,
                    std::f64::consts::TAU * iz as f64 / samples.n_z as f64,
                );
                local = local.min(pz.eval(&z).norm());
            }
            delta = delta.min(local / denom);
        }
    }
    if delta < DELTA_FLOOR {
        return Err(Error::DegenerateSector {
            delta,
            floor: DELTA_FLOOR,
        });
    }
    Ok(delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerseries::Series;
    use crate::scalar::c64;

    pub(crate) fn constant_series(v: f64, mt: usize, mz: usize) -> CTSeries {
        Series::monomial(0, ZPoly::constant(c64(v, 0.0), mz), mt)
    }

    pub(crate) fn t_monomial(v: f64, n: usize, mt: usize, mz: usize) -> CTSeries {
        Series::monomial(n, ZPoly::constant(c64(v, 0.0), mz), mt)
    }

    /// The small benchmark equation with corner data (m0, m) = (1, 2):
    /// a t (tD_q)^2 + b (tD_q) + c + t^{n1} d^{alpha1} (tD_q) + t^{n0} d^{alpha0},
    /// right-hand side F.
    pub(crate) fn example_two_five(
        a: f64,
        b: f64,
        c: f64,
        n1: usize,
        n0: usize,
        alpha1: usize,
        alpha0: usize,
        q: f64,
        mt: usize,
        mz: usize,
    ) -> Equation {
        let q = QParam::new(q).unwrap();
        let mut terms = vec![
            Term { j: 2, alpha: 0, coeff: t_monomial(a, 1, mt, mz) },
            Term { j: 1, alpha: 0, coeff: constant_series(b, mt, mz) },
            Term { j: 1, alpha: alpha1, coeff: t_monomial(1.0, n1, mt, mz) },
            Term { j: 0, alpha: alpha0, coeff: t_monomial(1.0, n0, mt, mz) },
        ];
        if c != 0.0 {
            terms.push(Term { j: 0, alpha: 0, coeff: constant_series(c, mt, mz) });
        }
        let rhs = t_monomial(1.0, 1, mt, mz);
        Equation::new(q, 1.0, 2, terms, rhs).unwrap()
    }

    #[test]
    fn ord_t_cases() {
        let mt = 5;
        let mz = 2;
        let mut s: CTSeries = Series::zero(mt, mz);
        assert_eq!(ord_t(&s), None);
        let mut p = ZPoly::zero(mz);
        p.set_coeff(0, c64(1.0, 0.0));
        p.set_coeff(1, c64(1.0, 0.0));
        s.set_coeff(2, p);
        assert_eq!(ord_t(&s), Some(2));
        let mut zt: CTSeries = Series::zero(mt, mz);
        let mut zc = ZPoly::zero(mz);
        zc.set_coeff(1, c64(1.0, 0.0)); // coefficient z, nonzero near z = 0
        zt.set_coeff(1, zc);
        assert_eq!(ord_t(&zt), Some(1));
    }

    #[test]
    fn polygon_of_benchmark_equation() {
        let eq = example_two_five(1.0, 1.0, 0.5, 2, 1, 1, 1, 2.0, 10, 4);
        let poly = newton_polygon(&eq);
        assert_eq!(poly.m0, Some(1));
        assert_eq!(poly.vertices, vec![(1, 0), (2, 1)]);
        assert_eq!(poly.slopes, vec![1.0]);
    }

    #[test]
    fn polygon_degenerate_single_term() {
        let q = QParam::new(2.0).unwrap();
        let eq = Equation::new(
            q,
            1.0,
            1,
            vec![Term { j: 0, alpha: 0, coeff: constant_series(1.0, 4, 1) }],
            constant_series(0.0, 4, 1),
        )
        .unwrap();
        let poly = newton_polygon(&eq);
        assert_eq!(poly.vertices, vec![(0, 0)]);
        assert_eq!(poly.m0, None); // m0 < m unavailable: shape flag absent
    }

    #[test]
    fn polygon_ignores_interior_points() {
        let base = example_two_five(1.0, 1.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        let poly1 = newton_polygon(&base);
        let mut terms = base.terms.clone();
        // (j, ord) = (0, 3): strictly inside the polygon
        terms.push(Term { j: 0, alpha: 2, coeff: t_monomial(1.0, 3, 10, 4) });
        let eq2 = Equation::new(base.q, base.sigma, base.m, terms, base.rhs.clone()).unwrap();
        let poly2 = newton_polygon(&eq2);
        assert_eq!(poly1.vertices, poly2.vertices);
    }

    #[test]
    fn assumptions_on_benchmark() {
        let good = example_two_five(1.0, 1.0, 1.0, 2, 1, 1, 1, 2.0, 10, 4);
        let rep = check_assumptions(&good);
        assert!(rep.a1 && rep.a2 && rep.a3 && rep.cond_2_2);

        let weak = example_two_five(1.0, 1.0, 1.0, 1, 1, 1, 1, 2.0, 10, 4);
        let rep = check_assumptions(&weak);
        assert!(rep.a1 && rep.a2 && rep.a3);
        assert!(!rep.cond_2_2);

        // corner coefficient vanishing at the origin kills A3
        let q = QParam::new(2.0).unwrap();
        let mut terms = weak.terms.clone();
        for t in terms.iter_mut() {
            if t.j == 1 && t.alpha == 0 {
                // b * t: ord_t becomes 1, so the polygon corner moves
                t.coeff = t_monomial(1.0, 1, 10, 4);
            }
        }
        let eq = Equation::new(q, 1.0, 2, terms, weak.rhs.clone()).unwrap();
        let rep = check_assumptions(&eq);
        assert!(!(rep.a1 && rep.a3));
    }

    #[test]
    fn lemma_order_consequence_when_a1_a2_hold() {
        // whenever A1 and A2 hold, ord_t(a) >= max(0, j - m0) for alpha = 0
        // and >= max(1, j - m0 + 1) for alpha > 0
        let eq = example_two_five(2.0, -1.0, 0.3, 2, 2, 1, 2, 1.5, 12, 3);
        let rep = check_assumptions(&eq);
        assert!(rep.a1 && rep.a2);
        let m0 = rep.m0.unwrap() as i64;
        for t in &eq.terms {
            let Some(o) = ord_t(&t.coeff) else { continue };
            let o = o as i64;
            if t.alpha == 0 {
                assert!(o >= (t.j as i64 - m0).max(0));
            } else {
                assert!(o >= (t.j as i64 - m0 + 1).max(1));
            }
        }
    }

    #[test]
    fn p0_p1_of_fixtures() {
        // benchmark: P0 = b + (a/q) lambda, P1 = c + b lambda
        let eq = example_two_five(1.0, 1.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        let p0 = p0_polynomial(&eq).unwrap();
        assert_eq!(p0.degree(), 1);
        assert!((p0.at_z0()[0] - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((p0.at_z0()[1] - c64(0.5, 0.0)).norm() < 1e-14);
        let p1 = p1_polynomial(&eq);
        assert_eq!(p1.degree(), 1);
        assert!(p1.at_z0()[0].norm() < 1e-14); // c = 0
        assert!((p1.at_z0()[1] - c64(1.0, 0.0)).norm() < 1e-14);

        // scaling the pure q-difference coefficients scales P0 linearly
        let eq2 = example_two_five(2.0, 2.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        let p0b = p0_polynomial(&eq2).unwrap();
        for k in 0..=1 {
            assert!((p0b.at_z0()[k] - p0.at_z0()[k] * 2.0).norm() < 1e-14);
        }
    }

    #[test]
    fn singular_directions_of_benchmark() {
        // single root at -q b / a
        let eq = example_two_five(1.0, 1.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        let dirs = singular_directions(&eq, DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(dirs.roots.len(), 1);
        assert!((dirs.roots[0] - c64(-2.0, 0.0)).norm() < 1e-10);
        // residual bound at the reported root
        let p0 = p0_polynomial(&eq).unwrap();
        let r = dirs.roots[0];
        assert!(p0.eval(r, c64(0.0, 0.0)).norm() < 1e-10 * (1.0 + r.norm()));
    }

    #[test]
    fn sector_bound_positive_opposite_the_singular_ray() {
        let eq = example_two_five(1.0, 1.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        // singular ray at angle pi; lambda = +2 on the positive axis
        let lambda = c64(2.0, 0.0);
        let delta = sector_lower_bound(
            &eq,
            lambda,
            (-0.3, 0.3),
            0.5,
            &SectorSampling::default(),
        )
        .unwrap();
        assert!(delta > 0.0);
        // |P0| = |b + (a/q) xi| >= b on the positive real axis, so the
        // normalized bound at small radii is close to b = 1
        assert!(delta > 0.2, "delta = {delta}");

        // an interval containing the singular ray is rejected
        let err = sector_lower_bound(
            &eq,
            c64(-2.0, 0.1),
            (3.0, 3.3),
            0.5,
            &SectorSampling::default(),
        );
        assert!(matches!(err, Err(Error::DegenerateSector { .. })));
    }

    #[test]
    fn sector_bound_scales_linearly() {
        let eq1 = example_two_five(1.0, 1.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        let eq3 = example_two_five(3.0, 3.0, 0.0, 2, 1, 1, 1, 2.0, 10, 4);
        let s = SectorSampling::default();
        let l = c64(2.0, 0.0);
        let d1 = sector_lower_bound(&eq1, l, (-0.2, 0.2), 0.4, &s).unwrap();
        let d3 = sector_lower_bound(&eq3, l, (-0.2, 0.2), 0.4, &s).unwrap();
        assert!((d3 - 3.0 * d1).abs() < 1e-9 * d3.abs());
    }
}
