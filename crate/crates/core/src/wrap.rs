//! The wrapping transfer from Ad-invariant functions on the Lie algebra to
//! central functions on the group.
//!
//! An [`AdInvariantFunction`] is a closure on the torus algebra together
//! with decay metadata that drives every truncation choice. Its transform
//! [`euclid_fourier`] is computed by the radial formula
//!
//! ```text
//!   mu^(xi) = c_rad / |W| * Int pi(H)^2 mu(H) I(xi, H) dH
//! ```
//!
//! where `I` is the orbital integral; the root-polynomial factor of `I`'s
//! denominator is cancelled analytically, so the integrand is smooth
//! across Weyl walls. The wrap of `mu` then exists in two pairs of forms:
//! a lattice sum against translates of the unit lattice (dividing by the
//! Jacobian factor `j`, or not), and a character series whose coefficients
//! are the transform at the shifted weights (plainly, or orbit-averaged).
//! Poisson summation says each pair agrees; tests and the acceptance suite
//! hold the whole square of identities together numerically.

use crate::error::Error;
use crate::exec;
use crate::geom::{self, V2};
use crate::orbit;
use crate::quad::{self, QuadSpec};
use crate::rootdata::{DominantWeight, GroupId, RootSystem};
use crate::special;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Decay metadata of a profile, used to bound truncation tails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay {
    Gaussian { sigma: f64 },
    CompactSupport { radius: f64 },
    Generic,
}

impl Decay {
    /// Radius beyond which `profile * (polynomial of degree deg)` stays
    /// below `eps` relative to its scale.
    pub fn truncation_radius(&self, deg: usize, eps: f64) -> f64 {
        match *self {
            Decay::Gaussian { sigma } => {
                let target = (1.0 / eps).ln();
                let mut r = sigma * (2.0 * target).sqrt();
                for _ in 0..4 {
                    let poly = deg as f64 * r.max(1.0).ln();
                    r = sigma * (2.0 * (target + poly)).sqrt();
                }
                r
            }
            Decay::CompactSupport { radius } => radius,
            Decay::Generic => 50.0,
        }
    }

    fn dilated(&self, s: f64) -> Decay {
        match *self {
            Decay::Gaussian { sigma } => Decay::Gaussian { sigma: sigma * s },
            Decay::CompactSupport { radius } => Decay::CompactSupport { radius: radius * s },
            Decay::Generic => Decay::Generic,
        }
    }

    /// Pointwise envelope at distance `r`, used for recorded tail bounds.
    pub fn envelope(&self, r: f64) -> f64 {
        match *self {
            Decay::Gaussian { sigma } => (-r * r / (2.0 * sigma * sigma)).exp(),
            Decay::CompactSupport { radius } => {
                if r >= radius {
                    0.0
                } else {
                    1.0
                }
            }
            Decay::Generic => 1.0,
        }
    }
}

/// A Weyl-invariant profile on the torus algebra standing for an
/// Ad-invariant function on the whole Lie algebra. Closure-based so that
/// lattice translates and quadrature nodes can be sampled anywhere.
#[derive(Clone)]
pub struct AdInvariantFunction {
    profile: Arc<dyn Fn(V2) -> f64 + Send + Sync>,
    pub decay: Decay,
    pub name: String,
}

impl AdInvariantFunction {
    pub fn new(
        name: impl Into<String>,
        decay: Decay,
        profile: impl Fn(V2) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            profile: Arc::new(profile),
            decay,
            name: name.into(),
        }
    }

    /// exp(-|H|^2 / (2 sigma^2))
    pub fn gaussian(sigma: f64) -> Self {
        Self::new(
            format!("gauss({sigma})"),
            Decay::Gaussian { sigma },
            move |h| (-geom::dot(h, h) / (2.0 * sigma * sigma)).exp(),
        )
    }

    pub fn gaussian_scaled(sigma: f64, amplitude: f64) -> Self {
        Self::new(
            format!("gauss({sigma})*{amplitude}"),
            Decay::Gaussian { sigma },
            move |h| amplitude * (-geom::dot(h, h) / (2.0 * sigma * sigma)).exp(),
        )
    }

    pub fn zero() -> Self {
        Self::new("zero", Decay::CompactSupport { radius: 1.0 }, |_| 0.0)
    }

    #[inline]
    pub fn eval(&self, h: V2) -> f64 {
        (self.profile)(h)
    }

    /// The profile multiplied by the Jacobian factor j; |j| <= 1, so the
    /// decay class is unchanged.
    pub fn with_j_factor(rs: &RootSystem, inner: &AdInvariantFunction) -> Self {
        let rs = rs.clone();
        let f = inner.clone();
        Self::new(format!("j*{}", inner.name), inner.decay, move |h| {
            special::j_function(&rs, h) * f.eval(h)
        })
    }

    /// H -> profile(H / s), the sup-normalized dilation.
    pub fn dilated(&self, s: f64) -> Self {
        let f = self.clone();
        Self::new(
            format!("{}~dilate({s})", self.name),
            self.decay.dilated(s),
            move |h| f.eval(geom::scale(h, 1.0 / s)),
        )
    }

    /// Largest deviation from Weyl invariance over pseudo-random samples.
    pub fn weyl_invariance_defect(&self, rs: &RootSystem, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..samples {
            let h = [4.0 * next() - 2.0, 4.0 * next() - 2.0];
            let base = self.eval(h);
            for w in &rs.weyl_elements {
                worst = worst.max((self.eval(geom::apply(w, h)) - base).abs());
            }
        }
        worst
    }
}

impl std::fmt::Debug for AdInvariantFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdInvariantFunction")
            .field("name", &self.name)
            .field("decay", &self.decay)
            .finish()
    }
}

/// One Fourier coefficient of a central function.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub labels: Vec<i64>,
    pub coords: Vec<f64>,
    pub re: f64,
    pub im: f64,
}

impl CoefficientEntry {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// A central function stored as Fourier coefficients over a finite set of
/// dominant weights: f(exp H) = sum c_lambda d_lambda chi_lambda(exp H).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralFunction {
    pub group: GroupId,
    pub cutoff: f64,
    pub coefficients: Vec<CoefficientEntry>,
    pub tail_estimate: f64,
    pub tail_warning: bool,
}

impl CentralFunction {
    pub fn from_pairs(
        rs: &RootSystem,
        pairs: Vec<(DominantWeight, Complex64)>,
        cutoff: f64,
    ) -> Self {
        let mut coefficients: Vec<CoefficientEntry> = pairs
            .iter()
            .map(|(w, c)| CoefficientEntry {
                labels: w.labels.clone(),
                coords: w.coords[..rs.rank].to_vec(),
                re: c.re,
                im: c.im,
            })
            .collect();
        coefficients.sort_by(|a, b| {
            let na = shifted_norm_of(rs, a);
            let nb = shifted_norm_of(rs, b);
            if (na - nb).abs() > 1e-12 {
                na.partial_cmp(&nb).unwrap()
            } else {
                a.labels.cmp(&b.labels)
            }
        });
        let mut f = CentralFunction {
            group: rs.group,
            cutoff,
            coefficients,
            tail_estimate: 0.0,
            tail_warning: false,
        };
        f.refresh_tail(rs);
        f
    }

    fn refresh_tail(&mut self, rs: &RootSystem) {
        // boundary shell: the outermost occupied layer of weights
        let max_norm = self
            .coefficients
            .iter()
            .map(|e| shifted_norm_of(rs, e))
            .fold(0.0f64, f64::max);
        let mut peak: f64 = 0.0;
        let mut shell: f64 = 0.0;
        for e in &self.coefficients {
            let w = DominantWeight {
                labels: e.labels.clone(),
                coords: pad(&e.coords),
            };
            let d = rs.weyl_dimension_of(&w) as f64;
            let weight = d * e.value().norm();
            peak = peak.max(weight);
            if w.shifted_norm(rs) >= 0.85 * max_norm {
                shell = shell.max(weight);
            }
        }
        self.tail_estimate = shell;
        self.tail_warning = shell > 1e-8 * peak && peak > 0.0;
    }

    pub fn get(&self, labels: &[i64]) -> Option<Complex64> {
        self.coefficients
            .iter()
            .find(|e| e.labels == labels)
            .map(|e| e.value())
    }

    /// Coefficient-wise map, keeping weight order.
    pub fn map_coefficients(&self, mut f: impl FnMut(&CoefficientEntry) -> Complex64) -> Self {
        let mut out = self.clone();
        for e in &mut out.coefficients {
            let v = f(e);
            e.re = v.re;
            e.im = v.im;
        }
        out
    }

    pub fn evaluator<'a>(&self, rs: &'a RootSystem) -> CentralEvaluator<'a> {
        let terms: Vec<(V2, Complex64)> = self
            .coefficients
            .iter()
            .map(|e| {
                let w = DominantWeight {
                    labels: e.labels.clone(),
                    coords: pad(&e.coords),
                };
                let d = rs.weyl_dimension_of(&w) as f64;
                (w.shifted(rs), e.value() * d)
            })
            .collect();
        CentralEvaluator { rs, terms }
    }

    pub fn evaluate(&self, rs: &RootSystem, h: V2) -> Complex64 {
        self.evaluator(rs).eval(h)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json_str(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn pad(coords: &[f64]) -> V2 {
    let mut v = geom::ZERO;
    for (i, c) in coords.iter().take(2).enumerate() {
        v[i] = *c;
    }
    v
}

fn shifted_norm_of(rs: &RootSystem, e: &CoefficientEntry) -> f64 {
    geom::norm(geom::add(pad(&e.coords), rs.rho))
}

/// Precomputed evaluation state for a central function: shifted weights and
/// dimension-scaled coefficients, evaluated through the character formula
/// with one shared denominator per point.
pub struct CentralEvaluator<'a> {
    rs: &'a RootSystem,
    terms: Vec<(V2, Complex64)>,
}

impl CentralEvaluator<'_> {
    pub fn eval(&self, h: V2) -> Complex64 {
        self.eval_depth(h, 0)
    }

    fn eval_depth(&self, h: V2, depth: u8) -> Complex64 {
        let den = special::weyl_denominator_complex(self.rs, h);
        if den.norm() < special::SINGULAR_EPS && depth < 2 {
            // the sum is smooth; average two nearby regular points. The
            // denominator vanishes to order k on a full flag of walls, so
            // the step must be large enough to clear the threshold in one
            // move, and it grows with depth so repeated falls never land
            // back on the starting point.
            let step = if self.rs.num_positive_roots == 1 {
                1e-6
            } else {
                1e-3
            } * 3f64.powi(depth as i32);
            let dir = geom::scale(self.rs.rho, step / geom::norm(self.rs.rho));
            return 0.5
                * (self.eval_depth(geom::add(h, dir), depth + 1)
                    + self.eval_depth(geom::sub(h, dir), depth + 1));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (shifted, cd) in &self.terms {
            acc += *cd * special::alternating_sum(self.rs, *shifted, h);
        }
        acc / den
    }
}

/// Transform of an Ad-invariant function at a point of the torus dual,
/// with the convention fixed so that wrapped Fourier coefficients are the
/// transform at the shifted weights.
pub fn euclid_fourier(
    rs: &RootSystem,
    mu: &AdInvariantFunction,
    xi: V2,
    spec: &QuadSpec,
) -> Result<Complex64, Error> {
    euclid_fourier_depth(rs, mu, xi, spec, 0)
}

fn euclid_fourier_depth(
    rs: &RootSystem,
    mu: &AdInvariantFunction,
    xi: V2,
    spec: &QuadSpec,
    depth: u8,
) -> Result<Complex64, Error> {
    let k = rs.num_positive_roots;
    let radius = mu.decay.truncation_radius(k + 1, 1e-16);

    // mass integral: the orbital factor is identically 1 at xi = 0
    if geom::norm(xi) < 1e-9 {
        let order = rs.weyl_elements.len() as f64;
        let total: f64 = if rs.rank == 1 {
            quad::integrate_1d(
                |x| {
                    let h = [x, 0.0];
                    rs.root_poly(h).powi(2) * mu.eval(h)
                },
                -radius,
                radius,
                spec,
            )?
        } else {
            quad::integrate_2d(
                |x, y| {
                    let h = [x, y];
                    rs.root_poly(h).powi(2) * mu.eval(h)
                },
                (-radius, radius),
                (-radius, radius),
                spec,
            )?
        };
        return Ok(Complex64::new(rs.radial_const * total / order, 0.0));
    }

    let pix = rs.root_poly(xi);
    if pix.abs() < special::SINGULAR_EPS && depth < 2 {
        // xi on a Weyl wall but away from the origin. The step must be wide
        // enough that the shifted points are well conditioned (the root
        // polynomial vanishes to high order on wall intersections), so the
        // plain two-point average carries an O(step^2) bias; one Richardson
        // stage removes it.
        let step = if k == 1 { 1e-6 } else { 2e-2 };
        let dir = geom::scale(rs.rho, step / geom::norm(rs.rho));
        let two = geom::scale(dir, 2.0);
        let near = 0.5
            * (euclid_fourier_depth(rs, mu, geom::add(xi, dir), spec, depth + 1)?
                + euclid_fourier_depth(rs, mu, geom::sub(xi, dir), spec, depth + 1)?);
        if k == 1 {
            return Ok(near);
        }
        let far = 0.5
            * (euclid_fourier_depth(rs, mu, geom::add(xi, two), spec, depth + 1)?
                + euclid_fourier_depth(rs, mu, geom::sub(xi, two), spec, depth + 1)?);
        return Ok((near * 4.0 - far) / 3.0);
    }

    // rotated frequencies, signs folded into the phases below
    let rotated: Vec<(V2, f64)> = rs
        .weyl_elements
        .iter()
        .zip(&rs.weyl_signs)
        .map(|(w, s)| (geom::apply(w, xi), *s))
        .collect();

    // integrand pi(H) mu(H) sum_w sign e^{i <w xi, H>}: the root-polynomial
    // factor of the orbital integral cancels against the radial weight, so
    // Weyl walls are regular points of the integrand
    let phase_sum = |h: V2| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (wxi, s) in &rotated {
            acc += Complex64::from_polar(*s, geom::dot(*wxi, h));
        }
        acc
    };

    let integral: Complex64 = if rs.rank == 1 {
        quad::integrate_1d(
            |x| {
                let h = [x, 0.0];
                phase_sum(h) * (rs.root_poly(h) * mu.eval(h))
            },
            -radius,
            radius,
            spec,
        )?
    } else {
        quad::integrate_2d(
            |x, y| {
                let h = [x, y];
                phase_sum(h) * (rs.root_poly(h) * mu.eval(h))
            },
            (-radius, radius),
            (-radius, radius),
            spec,
        )?
    };

    let order = rs.weyl_elements.len() as f64;
    Ok(integral * rs.radial_const / (order * rs.kappa * pix))
}

/// Character-series wrap: coefficients are the transform at the shifted
/// dominant weights, computed independently per weight.
pub fn wrap_series(
    rs: &RootSystem,
    mu: &AdInvariantFunction,
    cutoff: f64,
    spec: &QuadSpec,
) -> Result<CentralFunction, Error> {
    let weights = rs.enumerate_dominant_weights(cutoff);
    let coeffs = exec::par_map(&weights, |w| euclid_fourier(rs, mu, w.shifted(rs), spec));
    let mut pairs = Vec::with_capacity(weights.len());
    for (w, c) in weights.into_iter().zip(coeffs) {
        pairs.push((w, c?));
    }
    Ok(CentralFunction::from_pairs(rs, pairs, cutoff))
}

/// Result of a truncated lattice sum.
#[derive(Clone, Copy, Debug)]
pub struct LatticeSum {
    pub value: f64,
    /// Decay envelope at the truncation radius, recorded as the tail bound.
    pub tail_bound: f64,
    pub terms: usize,
}

/// Lattice-sum wrap: sum of mu/j over unit-lattice translates. Translates
/// where j nearly vanishes are an error; the series form is the preferred
/// evaluation there.
pub fn wrap_lattice(
    rs: &RootSystem,
    mu: &AdInvariantFunction,
    h: V2,
    radius: Option<f64>,
) -> Result<LatticeSum, Error> {
    let r = radius.unwrap_or_else(|| mu.decay.truncation_radius(0, 1e-12) + geom::norm(h));
    let points = rs.enumerate_lattice(h, r);
    let mut value = 0.0;
    for gamma in &points {
        let x = geom::add(h, *gamma);
        let j = special::j_function(rs, x);
        if j.abs() < 1e-8 {
            return Err(Error::NearSingularLatticePoint {
                gamma: gamma[..rs.rank].to_vec(),
                j_value: j.abs(),
            });
        }
        value += mu.eval(x) / j;
    }
    Ok(LatticeSum {
        value,
        tail_bound: mu.decay.envelope(r),
        terms: points.len(),
    })
}

/// Lattice-sum wrap of j*mu: plain periodization of the profile, with no
/// division and no singularity concerns.
pub fn wrap_j_lattice(
    rs: &RootSystem,
    mu: &AdInvariantFunction,
    h: V2,
    radius: Option<f64>,
) -> LatticeSum {
    let r = radius.unwrap_or_else(|| mu.decay.truncation_radius(0, 1e-12) + geom::norm(h));
    let points = rs.enumerate_lattice(h, r);
    let value = points.iter().map(|g| mu.eval(geom::add(h, *g))).sum();
    LatticeSum {
        value,
        tail_bound: mu.decay.envelope(r),
        terms: points.len(),
    }
}

/// Series wrap of j*mu: coefficients are orbit averages of the transform
/// over the orbit of rho centered at the shifted weight. For SU(2) this is
/// a polar quadrature of transform values over the orbit sphere; for SU(3)
/// the nested quadrature is collapsed analytically, the orbit factor
/// becoming the Jacobian factor under the transform.
pub fn wrap_j_series(
    rs: &RootSystem,
    mu: &AdInvariantFunction,
    cutoff: f64,
    spec: &QuadSpec,
) -> Result<CentralFunction, Error> {
    let weights = rs.enumerate_dominant_weights(cutoff);
    if rs.rank == 1 {
        let coeffs = exec::par_map(&weights, |w| -> Result<Complex64, Error> {
            let err_slot = std::sync::Mutex::new(None::<Error>);
            let val = orbit::orbit_average_c(
                rs,
                |xi| match euclid_fourier(rs, mu, xi, spec) {
                    Ok(v) => v,
                    Err(e) => {
                        *err_slot.lock().unwrap() = Some(e);
                        Complex64::new(0.0, 0.0)
                    }
                },
                w.shifted(rs),
                spec,
            );
            if let Some(e) = err_slot.into_inner().unwrap() {
                return Err(e);
            }
            val
        });
        let mut pairs = Vec::with_capacity(weights.len());
        for (w, c) in weights.into_iter().zip(coeffs) {
            pairs.push((w, c?));
        }
        Ok(CentralFunction::from_pairs(rs, pairs, cutoff))
    } else {
        let jmu = AdInvariantFunction::with_j_factor(rs, mu);
        wrap_series(rs, &jmu, cutoff, spec)
    }
}

/// Central convolution is coefficient-wise multiplication.
pub fn convolve_central(
    rs: &RootSystem,
    f: &CentralFunction,
    g: &CentralFunction,
) -> Result<CentralFunction, Error> {
    if f.group != g.group {
        return Err(Error::GroupMismatch(
            f.group.to_string(),
            g.group.to_string(),
        ));
    }
    let cutoff = f.cutoff.min(g.cutoff);
    let mut pairs = Vec::new();
    for e in &f.coefficients {
        if let Some(other) = g.get(&e.labels) {
            let w = DominantWeight {
                labels: e.labels.clone(),
                coords: pad(&e.coords),
            };
            if w.shifted_norm(rs) <= cutoff + 1e-12 {
                pairs.push((w, e.value() * other));
            }
        }
    }
    Ok(CentralFunction::from_pairs(rs, pairs, cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::GroupId;
    use approx::assert_relative_eq;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn gaussian_transform_closed_form_su2() {
        // oracle: the 3-dimensional Gaussian transform in the chosen
        // normalization is gauss_ft_const * sigma^3 * exp(-sigma^2|xi|^2/2)
        let rs = RootSystem::new(GroupId::Su2);
        for sigma in [0.5, 1.0, 2.0] {
            let mu = AdInvariantFunction::gaussian(sigma);
            for r in [0.0, 0.7, 1.9, 4.2] {
                let got = euclid_fourier(&rs, &mu, [r, 0.0], &spec()).unwrap();
                let expect = rs.gauss_ft_const
                    * sigma.powi(rs.dim as i32)
                    * (-sigma * sigma * r * r / 2.0).exp();
                assert!(
                    (got - Complex64::new(expect, 0.0)).norm() < 1e-10 * (1.0 + expect),
                    "sigma={sigma} r={r}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn gaussian_transform_closed_form_su3() {
        let rs = RootSystem::new(GroupId::Su3);
        let sigma = 0.8;
        let mu = AdInvariantFunction::gaussian(sigma);
        for xi in [[0.0, 0.0], [1.3, 0.4], [0.9, 1.7]] {
            let got = euclid_fourier(&rs, &mu, xi, &spec()).unwrap();
            let expect = rs.gauss_ft_const
                * sigma.powi(rs.dim as i32)
                * (-sigma * sigma * geom::dot(xi, xi) / 2.0).exp();
            assert!(
                (got - Complex64::new(expect, 0.0)).norm() < 1e-9 * (1.0 + expect),
                "xi={xi:?}: {got} vs {expect}"
            );
        }
        // on a Weyl wall the limit evaluation holds at reduced accuracy
        let wall = [0.0, 2.0];
        let got = euclid_fourier(&rs, &mu, wall, &spec()).unwrap();
        let expect = rs.gauss_ft_const
            * sigma.powi(rs.dim as i32)
            * (-sigma * sigma * geom::dot(wall, wall) / 2.0).exp();
        assert!(
            (got - Complex64::new(expect, 0.0)).norm() < 1e-6,
            "wall: {got} vs {expect}"
        );
    }

    #[test]
    fn transform_is_weyl_invariant() {
        for group in [GroupId::Su2, GroupId::Su3] {
            let rs = RootSystem::new(group);
            let mu = AdInvariantFunction::gaussian(1.1);
            let xi = geom::add(rs.rho, geom::scale(rs.fundamental_weights[0], 0.6));
            let base = euclid_fourier(&rs, &mu, xi, &spec()).unwrap();
            for w in &rs.weyl_elements {
                let v = euclid_fourier(&rs, &mu, geom::apply(w, xi), &spec()).unwrap();
                assert!((v - base).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn poisson_summation_su2() {
        // lattice form vs series form on a small grid of regular points
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(1.0);
        let series = wrap_series(&rs, &mu, 18.0, &spec()).unwrap();
        let ev = series.evaluator(&rs);
        for i in 1..8 {
            let h = [i as f64 * 0.31, 0.0];
            let lat = wrap_lattice(&rs, &mu, h, None).unwrap();
            let ser = ev.eval(h);
            assert!(
                (lat.value - ser.re).abs() < 1e-8 && ser.im.abs() < 1e-10,
                "h={h:?}: lattice {} vs series {}",
                lat.value,
                ser
            );
        }
    }

    #[test]
    fn j_weighted_poisson_summation_su2() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(0.9);
        let series = wrap_j_series(&rs, &mu, 16.0, &spec()).unwrap();
        let ev = series.evaluator(&rs);
        for i in 0..6 {
            let h = [0.2 + i as f64 * 0.5, 0.0];
            let lat = wrap_j_lattice(&rs, &mu, h, None);
            let ser = ev.eval(h);
            assert!(
                (lat.value - ser.re).abs() < 1e-7,
                "h={h:?}: {} vs {}",
                lat.value,
                ser.re
            );
        }
    }

    #[test]
    fn j_series_polar_quadrature_matches_closed_form_su2() {
        // sphere-average of the Gaussian transform in closed form
        let rs = RootSystem::new(GroupId::Su2);
        let sigma: f64 = 1.2;
        let mu = AdInvariantFunction::gaussian(sigma);
        let f = wrap_j_series(&rs, &mu, 6.0, &spec()).unwrap();
        let r = geom::norm(rs.rho);
        let t = sigma * sigma / 2.0;
        for e in &f.coefficients {
            let a = geom::norm(geom::add(pad(&e.coords), rs.rho));
            let c = rs.gauss_ft_const * sigma.powi(3);
            let expect =
                c * (-t * (a * a + r * r)).exp() * (2.0 * t * a * r).sinh() / (2.0 * t * a * r);
            assert!(
                (e.value() - Complex64::new(expect, 0.0)).norm() < 1e-9,
                "labels {:?}: {} vs {}",
                e.labels,
                e.value(),
                expect
            );
        }
    }

    #[test]
    fn theta_sum_oracle() {
        // at H = 0 the j-weighted lattice sum is a one-dimensional theta sum
        let rs = RootSystem::new(GroupId::Su2);
        let sigma = 1.4;
        let mu = AdInvariantFunction::gaussian(sigma);
        let got = wrap_j_lattice(&rs, &mu, geom::ZERO, None);
        let step = geom::norm(rs.unit_lattice[0]);
        let oracle: f64 = (-40..=40)
            .map(|m| (-(m as f64 * step).powi(2) / (2.0 * sigma * sigma)).exp())
            .sum();
        assert_relative_eq!(got.value, oracle, max_relative = 1e-12);
    }

    #[test]
    fn j_lattice_is_periodic() {
        let rs = RootSystem::new(GroupId::Su3);
        let mu = AdInvariantFunction::gaussian(1.0);
        let h = [0.43, -0.21];
        let a = wrap_j_lattice(&rs, &mu, h, Some(14.0));
        let b = wrap_j_lattice(&rs, &mu, geom::add(h, rs.unit_lattice[0]), Some(14.0));
        assert!((a.value - b.value).abs() < 1e-10);
    }

    #[test]
    fn zero_profile_wraps_to_zero() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::zero();
        assert_eq!(wrap_j_lattice(&rs, &mu, [0.3, 0.0], Some(5.0)).value, 0.0);
        let lat = wrap_lattice(&rs, &mu, [0.3, 0.0], Some(5.0)).unwrap();
        assert_eq!(lat.value, 0.0);
    }

    #[test]
    fn near_singular_lattice_point_is_an_error() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(1.0);
        // j vanishes at alpha(H) = 2 pi, i.e. H = sqrt(2) pi
        let h = [2f64.sqrt() * std::f64::consts::PI, 0.0];
        let res = wrap_lattice(&rs, &mu, h, None);
        assert!(matches!(res, Err(Error::NearSingularLatticePoint { .. })));
    }

    #[test]
    fn tight_gaussians_flatten_the_spectrum() {
        // transform of a near-point-mass is near-constant in the weight
        let rs = RootSystem::new(GroupId::Su2);
        let mut prev_gap = f64::INFINITY;
        for sigma in [0.2, 0.1, 0.05] {
            let mu = AdInvariantFunction::gaussian(sigma);
            let f = wrap_series(&rs, &mu, 4.0, &spec()).unwrap();
            let c0 = f.coefficients[0].value().norm();
            let c1 = f.coefficients[1].value().norm();
            let gap = (c1 / c0 - 1.0).abs();
            assert!(gap < prev_gap, "spectrum must flatten as sigma shrinks");
            prev_gap = gap;
        }
    }

    #[test]
    fn series_warning_on_small_cutoff() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(1.0);
        let under = wrap_series(&rs, &mu, 2.0, &spec()).unwrap();
        assert!(under.tail_warning);
        let resolved = wrap_series(&rs, &mu, 14.0, &spec()).unwrap();
        assert!(!resolved.tail_warning);
    }

    #[test]
    fn convolution_multiplies_coefficients() {
        let rs = RootSystem::new(GroupId::Su2);
        let f = wrap_series(&rs, &AdInvariantFunction::gaussian(0.8), 8.0, &spec()).unwrap();
        let g = wrap_series(&rs, &AdInvariantFunction::gaussian(1.2), 8.0, &spec()).unwrap();
        let fg = convolve_central(&rs, &f, &g).unwrap();
        for e in &fg.coefficients {
            let expect = f.get(&e.labels).unwrap() * g.get(&e.labels).unwrap();
            assert!((e.value() - expect).norm() < 1e-14);
        }
        // all-zero second factor gives the zero function
        let z = g.map_coefficients(|_| Complex64::new(0.0, 0.0));
        let fz = convolve_central(&rs, &f, &z).unwrap();
        assert!(fz.coefficients.iter().all(|e| e.value().norm() == 0.0));
    }

    #[test]
    fn group_mismatch_is_an_error() {
        let rs2 = RootSystem::new(GroupId::Su2);
        let rs3 = RootSystem::new(GroupId::Su3);
        let f = wrap_series(&rs2, &AdInvariantFunction::gaussian(1.0), 5.0, &spec()).unwrap();
        let g = wrap_series(&rs3, &AdInvariantFunction::gaussian(1.0), 4.0, &spec()).unwrap();
        assert!(matches!(
            convolve_central(&rs2, &f, &g),
            Err(Error::GroupMismatch(_, _))
        ));
    }

    #[test]
    fn constant_coefficient_evaluates_to_one() {
        for group in [GroupId::Su2, GroupId::Su3] {
            let rs = RootSystem::new(group);
            let zero = rs.dominant_weight(&vec![0; rs.rank]).unwrap();
            let f =
                CentralFunction::from_pairs(&rs, vec![(zero, Complex64::new(1.0, 0.0))], 1.0);
            for h in [[0.31, 0.5], [1.9, -0.61]] {
                assert!((f.evaluate(&rs, h) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn evaluation_is_lattice_periodic() {
        let rs = RootSystem::new(GroupId::Su3);
        let mu = AdInvariantFunction::gaussian(0.8);
        let f = wrap_series(&rs, &mu, 7.0, &spec()).unwrap();
        let ev = f.evaluator(&rs);
        let h = [0.37, 0.72];
        let base = ev.eval(h);
        for gamma in &rs.unit_lattice {
            let v = ev.eval(geom::add(h, *gamma));
            assert!((v - base).norm() < 1e-9);
        }
    }

    #[test]
    fn value_at_identity_is_dimension_weighted_sum() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(1.0);
        let f = wrap_series(&rs, &mu, 10.0, &spec()).unwrap();
        let direct: Complex64 = f
            .coefficients
            .iter()
            .map(|e| {
                let w = rs.dominant_weight(&e.labels).unwrap();
                let d = rs.weyl_dimension_of(&w) as f64;
                e.value() * (d * d)
            })
            .sum();
        let at_identity = f.evaluate(&rs, geom::ZERO);
        assert!((at_identity - direct).norm() < 1e-7 * (1.0 + direct.norm()));
    }

    #[test]
    fn profiles_report_weyl_invariance() {
        let rs = RootSystem::new(GroupId::Su3);
        let mu = AdInvariantFunction::gaussian(1.0);
        assert!(mu.weyl_invariance_defect(&rs, 100) < 1e-10);
    }
}
