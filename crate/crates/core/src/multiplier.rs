//! Scalar Fourier multipliers on the algebra and their transfer to the
//! group.
//!
//! A symbol is a Weyl-invariant scalar function on the torus dual. Its
//! transferred action on Fourier coefficients comes in two forms: the
//! shifted form, which substitutes the shifted weight into the symbol, and
//! the orbit-averaged form, which averages the symbol over the orbit of
//! rho around the shifted weight. The two coincide with the coefficients
//! of the wrapped kernel and of the j-weighted wrapped kernel
//! respectively, which is what the coherence tests pin down.

use crate::error::Error;
use crate::exec;
use crate::geom::{self, V2};
use crate::orbit;
use crate::quad::{self, QuadSpec};
use crate::rootdata::{GroupId, RootSystem};
use crate::special;
use crate::wrap::euclid_fourier;
use crate::wrap::{AdInvariantFunction, CentralFunction, Decay};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A Weyl-invariant scalar symbol on the torus dual.
#[derive(Clone)]
pub struct MultiplierSymbol {
    eval: Arc<dyn Fn(V2) -> f64 + Send + Sync>,
    pub name: String,
}

impl MultiplierSymbol {
    pub fn new(name: impl Into<String>, f: impl Fn(V2) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(f),
            name: name.into(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("const({c})"), move |_| c)
    }

    /// Heat symbol exp(-t |xi|^2).
    pub fn gaussian(t: f64) -> Self {
        Self::new(format!("gauss-symbol({t})"), move |xi| {
            (-t * geom::dot(xi, xi)).exp()
        })
    }

    /// (1 - |xi|^2 / r^2)_+^delta.
    pub fn bochner_riesz(delta: f64, r: f64) -> Self {
        Self::new(format!("riesz({delta},{r})"), move |xi| {
            let t = 1.0 - geom::dot(xi, xi) / (r * r);
            if t > 0.0 {
                t.powf(delta)
            } else {
                0.0
            }
        })
    }

    /// Indicator of the ball of radius r.
    pub fn ball(r: f64) -> Self {
        Self::new(format!("ball({r})"), move |xi| {
            if geom::norm(xi) <= r {
                1.0
            } else {
                0.0
            }
        })
    }

    #[inline]
    pub fn eval(&self, xi: V2) -> f64 {
        (self.eval)(xi)
    }

    pub fn weyl_invariance_defect(&self, rs: &RootSystem, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        let mut state = 0x853c49e6748fea9bu64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..samples {
            let xi = [6.0 * next() - 3.0, 6.0 * next() - 3.0];
            let base = self.eval(xi);
            for w in &rs.weyl_elements {
                worst = worst.max((self.eval(geom::apply(w, xi)) - base).abs());
            }
        }
        worst
    }
}

impl std::fmt::Debug for MultiplierSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MultiplierSymbol")
            .field("name", &self.name)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferForm {
    /// Symbol evaluated at the shifted weight.
    Shifted,
    /// Symbol averaged over the orbit of rho around the shifted weight.
    OrbitAveraged,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferEntry {
    pub labels: Vec<i64>,
    pub coords: Vec<f64>,
    pub value: f64,
}

/// A transferred multiplier: one real value per dominant weight.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransferredMultiplier {
    pub group: GroupId,
    pub form: TransferForm,
    pub source: String,
    pub cutoff: f64,
    pub entries: Vec<TransferEntry>,
}

impl TransferredMultiplier {
    pub fn get(&self, labels: &[i64]) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.labels == labels)
            .map(|e| e.value)
    }

    /// Largest shifted-weight norm carrying a nonzero value.
    pub fn support_radius(&self, rs: &RootSystem) -> f64 {
        self.entries
            .iter()
            .filter(|e| e.value != 0.0)
            .map(|e| {
                let mut v = geom::ZERO;
                for (i, c) in e.coords.iter().take(2).enumerate() {
                    v[i] = *c;
                }
                geom::norm(geom::add(v, rs.rho))
            })
            .fold(0.0f64, f64::max)
    }
}

/// Shifted-form transfer: value at lambda is the symbol at lambda + rho.
pub fn transfer_star(rs: &RootSystem, psi: &MultiplierSymbol, cutoff: f64) -> TransferredMultiplier {
    let entries = rs
        .enumerate_dominant_weights(cutoff)
        .into_iter()
        .map(|w| TransferEntry {
            coords: w.coords[..rs.rank].to_vec(),
            value: psi.eval(w.shifted(rs)),
            labels: w.labels,
        })
        .collect();
    TransferredMultiplier {
        group: rs.group,
        form: TransferForm::Shifted,
        source: psi.name.clone(),
        cutoff,
        entries,
    }
}

/// Orbit-averaged transfer: value at lambda is the average of the symbol
/// over { lambda + rho - beta : beta in the orbit of rho }.
pub fn transfer_star_star(
    rs: &RootSystem,
    psi: &MultiplierSymbol,
    cutoff: f64,
    spec: &QuadSpec,
) -> Result<TransferredMultiplier, Error> {
    let weights = rs.enumerate_dominant_weights(cutoff);
    let values = exec::par_map(&weights, |w| {
        orbit::orbit_average(rs, |x| psi.eval(x), w.shifted(rs), spec)
    });
    let mut entries = Vec::with_capacity(weights.len());
    for (w, v) in weights.into_iter().zip(values) {
        entries.push(TransferEntry {
            coords: w.coords[..rs.rank].to_vec(),
            value: v?,
            labels: w.labels,
        });
    }
    Ok(TransferredMultiplier {
        group: rs.group,
        form: TransferForm::OrbitAveraged,
        source: psi.name.clone(),
        cutoff,
        entries,
    })
}

/// Seeded Monte Carlo value of the orbit-averaged transfer at one weight.
pub fn mc_transfer_star_star(
    rs: &RootSystem,
    psi: &MultiplierSymbol,
    shifted_weight: V2,
    samples: usize,
    seed: u64,
) -> f64 {
    orbit::mc_orbit_average(rs, |x| psi.eval(x), shifted_weight, samples, seed)
}

/// Kernel of a transferred multiplier as a central function: stored
/// coefficients are the values divided by the dimension, so the character
/// series of the result reproduces the plain value-weighted character sum.
pub fn kernel_on_g(rs: &RootSystem, psi: &TransferredMultiplier) -> CentralFunction {
    let pairs = psi
        .entries
        .iter()
        .map(|e| {
            let w = rs.dominant_weight(&e.labels).expect("dominant labels");
            let d = rs.weyl_dimension_of(&w) as f64;
            (w, Complex64::new(e.value / d, 0.0))
        })
        .collect();
    CentralFunction::from_pairs(rs, pairs, psi.cutoff)
}

/// Coefficient-wise action of a transferred multiplier on a central
/// function. Requires the multiplier's tabulated range to cover the
/// function and its nonzero support to lie inside the function's cutoff.
pub fn apply_multiplier(
    rs: &RootSystem,
    psi: &TransferredMultiplier,
    f: &CentralFunction,
) -> Result<CentralFunction, Error> {
    if psi.group != f.group {
        return Err(Error::GroupMismatch(
            psi.group.to_string(),
            f.group.to_string(),
        ));
    }
    if psi.cutoff + 1e-9 < f.cutoff {
        return Err(Error::CutoffMismatch {
            support: f.cutoff,
            cutoff: psi.cutoff,
        });
    }
    let support = psi.support_radius(rs);
    if support > f.cutoff + 1e-9 {
        return Err(Error::CutoffMismatch {
            support,
            cutoff: f.cutoff,
        });
    }
    Ok(f.map_coefficients(|e| {
        let v = psi.get(&e.labels).unwrap_or(0.0);
        e.value() * v
    }))
}

/// Profile on the algebra whose transform is the heat symbol
/// exp(-t |xi|^2) exactly.
pub fn gaussian_kernel(rs: &RootSystem, t: f64) -> AdInvariantFunction {
    let sigma = (2.0 * t).sqrt();
    let amplitude = 1.0 / (rs.gauss_ft_const * sigma.powi(rs.dim as i32));
    AdInvariantFunction::gaussian_scaled(sigma, amplitude)
}

/// Inverse transform of symbol * transform at the requested points of the
/// torus algebra: the multiplier acting on an Ad-invariant function.
pub fn apply_multiplier_euclid(
    rs: &RootSystem,
    psi: &MultiplierSymbol,
    mu: &AdInvariantFunction,
    points: &[V2],
    spec: &QuadSpec,
) -> Result<Vec<Complex64>, Error> {
    // near-wall evaluation points get the two-point limit treatment
    let mut out = vec![Complex64::new(0.0, 0.0); points.len()];
    let mut regular: Vec<(usize, V2)> = Vec::new();
    for (i, h) in points.iter().enumerate() {
        if rs.root_poly(*h).abs() < special::SINGULAR_EPS {
            let step = if rs.num_positive_roots == 1 { 1e-6 } else { 1e-3 };
            let dir = geom::scale(rs.rho, step / geom::norm(rs.rho));
            let pair = apply_multiplier_euclid(
                rs,
                psi,
                mu,
                &[geom::add(*h, dir), geom::sub(*h, dir)],
                spec,
            )?;
            out[i] = 0.5 * (pair[0] + pair[1]);
        } else {
            regular.push((i, *h));
        }
    }
    if regular.is_empty() {
        return Ok(out);
    }

    let k = rs.num_positive_roots;
    let radius = match mu.decay {
        Decay::Gaussian { sigma } => {
            Decay::Gaussian { sigma: 1.0 / sigma }.truncation_radius(k + 2, 1e-14)
        }
        _ => 40.0,
    };

    let kappa_conj = rs.kappa.conj();
    let order = rs.weyl_elements.len() as f64;

    let mut panels = spec.panels.max(1);
    let mut prev: Option<Vec<Complex64>> = None;
    let mut vals: Vec<Complex64> = Vec::new();
    let mut converged = false;
    for _ in 0..=spec.max_refine {
        let nodes = transform_grid(rs, radius, panels, spec.nodes);
        // the transform is the expensive factor: evaluate it once per node
        let mu_hat = exec::par_map(&nodes, |(xi, _)| euclid_fourier(rs, mu, *xi, spec));
        let mut weighted: Vec<(V2, Complex64)> = Vec::with_capacity(nodes.len());
        for ((xi, w), mh) in nodes.iter().zip(mu_hat) {
            let factor = rs.root_poly(*xi) * psi.eval(*xi) * *w;
            weighted.push((*xi, mh? * factor));
        }
        vals = exec::par_map(&regular, |(_, h)| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (xi, c) in &weighted {
                acc += *c * special::alternating_sum(rs, *xi, *h).conj();
            }
            acc * rs.inverse_ft_const / (order * kappa_conj * rs.root_poly(*h))
        });
        if let Some(p) = &prev {
            let delta = vals
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            let scale = vals.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
            if delta <= spec.tol * scale {
                converged = true;
                break;
            }
        }
        prev = Some(vals.clone());
        panels *= 2;
    }
    if !converged {
        let coarse = prev
            .as_ref()
            .map(|p| p.iter().map(|v| v.norm()).fold(0.0f64, f64::max))
            .unwrap_or(f64::NAN);
        return Err(Error::QuadratureNoConverge {
            coarse,
            fine: vals.iter().map(|v| v.norm()).fold(0.0f64, f64::max),
        });
    }
    for ((i, _), v) in regular.into_iter().zip(vals) {
        out[i] = v;
    }
    Ok(out)
}

/// Gauss-Legendre grid over the truncated frequency domain.
fn transform_grid(rs: &RootSystem, radius: f64, panels: usize, nodes: usize) -> Vec<(V2, f64)> {
    let (xs, ws) = quad::gauss_legendre(nodes);
    let h = 2.0 * radius / panels as f64;
    let mut line: Vec<(f64, f64)> = Vec::with_capacity(panels * nodes);
    for p in 0..panels {
        let mid = -radius + (p as f64 + 0.5) * h;
        for (x, w) in xs.iter().zip(&ws) {
            line.push((mid + 0.5 * h * x, 0.5 * h * w));
        }
    }
    if rs.rank == 1 {
        line.iter().map(|(x, w)| ([*x, 0.0], *w)).collect()
    } else {
        let mut grid = Vec::with_capacity(line.len() * line.len());
        for (x, wx) in &line {
            for (y, wy) in &line {
                grid.push(([*x, *y], wx * wy));
            }
        }
        grid
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::GroupId;
    use crate::wrap::wrap_series;

    fn spec() -> QuadSpec {
        QuadSpec::default()
    }

    #[test]
    fn constant_symbol_transfers_to_one() {
        for group in [GroupId::Su2, GroupId::Su3] {
            let rs = RootSystem::new(group);
            let one = MultiplierSymbol::constant(1.0);
            let star = transfer_star(&rs, &one, 6.0);
            assert!(star.entries.iter().all(|e| e.value == 1.0));
            let starstar = transfer_star_star(&rs, &one, 4.0, &spec()).unwrap();
            for e in &starstar.entries {
                assert!((e.value - 1.0).abs() < 1e-10, "{:?}", e.labels);
            }
        }
    }

    #[test]
    fn shifted_gaussian_transfer_is_substitution() {
        let rs = RootSystem::new(GroupId::Su2);
        let t = 0.7;
        let psi = MultiplierSymbol::gaussian(t);
        let star = transfer_star(&rs, &psi, 8.0);
        for e in &star.entries {
            let w = rs.dominant_weight(&e.labels).unwrap();
            let a = w.shifted_norm(&rs);
            assert!((e.value - (-t * a * a).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn ball_indicator_transfer_su2() {
        // value 1 exactly when (m+1)|alpha|/2 <= r
        let rs = RootSystem::new(GroupId::Su2);
        let r = 2.3;
        let psi = MultiplierSymbol::ball(r);
        let star = transfer_star(&rs, &psi, 8.0);
        for e in &star.entries {
            let m = e.labels[0] as f64;
            let expect = if (m + 1.0) / 2f64.sqrt() <= r { 1.0 } else { 0.0 };
            assert_eq!(e.value, expect, "m={m}");
        }
    }

    #[test]
    fn orbit_averaged_gaussian_closed_form_su2() {
        let rs = RootSystem::new(GroupId::Su2);
        let t = 0.5;
        let psi = MultiplierSymbol::gaussian(t);
        let ss = transfer_star_star(&rs, &psi, 6.0, &spec()).unwrap();
        let r = geom::norm(rs.rho);
        for e in &ss.entries {
            let w = rs.dominant_weight(&e.labels).unwrap();
            let a = w.shifted_norm(&rs);
            let oracle =
                (-t * (a * a + r * r)).exp() * (2.0 * t * a * r).sinh() / (2.0 * t * a * r);
            assert!((e.value - oracle).abs() < 1e-9, "{:?}", e.labels);
        }
    }

    #[test]
    fn ball_indicator_distinguishes_the_two_forms_near_boundary() {
        // shifted form sees a sharp cut; orbit average smears it
        let rs = RootSystem::new(GroupId::Su2);
        let lambda = rs.dominant_weight(&[2]).unwrap();
        let a = lambda.shifted_norm(&rs);
        let r = a + 0.2; // just above the shifted weight
        let psi = MultiplierSymbol::ball(r);
        let star = transfer_star(&rs, &psi, 4.0);
        assert_eq!(star.get(&[2]).unwrap(), 1.0);
        // the jump keeps panel refinement slow; a percent is plenty here
        let loose = QuadSpec {
            tol: 1e-2,
            ..QuadSpec::default()
        };
        let ss = transfer_star_star(&rs, &psi, 4.0, &loose).unwrap();
        let v = ss.get(&[2]).unwrap();
        assert!(v > 0.05 && v < 0.95, "smeared value {v}");
    }

    #[test]
    fn heat_kernel_has_exact_symbol() {
        for group in [GroupId::Su2, GroupId::Su3] {
            let rs = RootSystem::new(group);
            let t = 0.4;
            let kernel = gaussian_kernel(&rs, t);
            for xi in [[0.0, 0.0], [1.7, 0.0], [0.4, 1.1]] {
                let xi = if rs.rank == 1 { [xi[0], 0.0] } else { xi };
                let got = euclid_fourier(&rs, &kernel, xi, &spec()).unwrap();
                let expect = (-t * geom::dot(xi, xi)).exp();
                assert!(
                    (got - Complex64::new(expect, 0.0)).norm() < 1e-9,
                    "{group} xi={xi:?}"
                );
            }
        }
    }

    #[test]
    fn shifted_transfer_matches_wrapped_kernel_coefficients() {
        // the whole transform pipeline against plain substitution
        let rs = RootSystem::new(GroupId::Su2);
        let t = 0.3;
        let psi = MultiplierSymbol::gaussian(t);
        let star = transfer_star(&rs, &psi, 10.0);
        let wrapped = wrap_series(&rs, &gaussian_kernel(&rs, t), 10.0, &spec()).unwrap();
        for e in &star.entries {
            let c = wrapped.get(&e.labels).unwrap();
            assert!(
                (c - Complex64::new(e.value, 0.0)).norm() < 1e-9,
                "{:?}: {c} vs {}",
                e.labels,
                e.value
            );
        }
    }

    #[test]
    fn identity_multiplier_preserves_functions() {
        let rs = RootSystem::new(GroupId::Su2);
        let f = wrap_series(&rs, &AdInvariantFunction::gaussian(1.0), 8.0, &spec()).unwrap();
        let one = transfer_star(&rs, &MultiplierSymbol::constant(1.0), 8.0);
        let g = apply_multiplier(&rs, &one, &f).unwrap();
        for (a, b) in f.coefficients.iter().zip(&g.coefficients) {
            assert_eq!(a.value(), b.value());
        }
        let zero = transfer_star(&rs, &MultiplierSymbol::constant(0.0), 8.0);
        let z = apply_multiplier(&rs, &zero, &f).unwrap();
        assert!(z.coefficients.iter().all(|e| e.value().norm() == 0.0));
    }

    #[test]
    fn ball_projection_is_idempotent() {
        let rs = RootSystem::new(GroupId::Su2);
        let f = wrap_series(&rs, &AdInvariantFunction::gaussian(0.7), 8.0, &spec()).unwrap();
        let proj = transfer_star(&rs, &MultiplierSymbol::ball(3.0), 8.0);
        let once = apply_multiplier(&rs, &proj, &f).unwrap();
        let twice = apply_multiplier(&rs, &proj, &once).unwrap();
        for (a, b) in once.coefficients.iter().zip(&twice.coefficients) {
            assert_eq!(a.value(), b.value());
        }
    }

    #[test]
    fn multiplier_action_matches_kernel_convolution() {
        // the dimension bookkeeping: acting by Psi coefficient-wise equals
        // convolving with the central function whose plain coefficients are
        // the Psi values (the kernel's dimension-weighted coefficients)
        let rs = RootSystem::new(GroupId::Su2);
        let f = wrap_series(&rs, &AdInvariantFunction::gaussian(1.1), 8.0, &spec()).unwrap();
        let psi = transfer_star(&rs, &MultiplierSymbol::gaussian(0.25), 8.0);
        let direct = apply_multiplier(&rs, &psi, &f).unwrap();

        let kernel = kernel_on_g(&rs, &psi);
        // kernel stores value/d; convolution must see the plain values
        let kernel_as_coeffs = kernel.map_coefficients(|e| {
            let w = rs.dominant_weight(&e.labels).unwrap();
            let d = rs.weyl_dimension_of(&w) as f64;
            e.value() * d
        });
        let via_convolution = crate::wrap::convolve_central(&rs, &kernel_as_coeffs, &f).unwrap();
        for (a, b) in direct.coefficients.iter().zip(&via_convolution.coefficients) {
            assert!((a.value() - b.value()).norm() < 1e-14);
        }
    }

    #[test]
    fn kernel_of_point_mass_at_zero_weight_is_constant() {
        let rs = RootSystem::new(GroupId::Su3);
        let psi = TransferredMultiplier {
            group: rs.group,
            form: TransferForm::Shifted,
            source: "unit".into(),
            cutoff: 2.0,
            entries: vec![TransferEntry {
                labels: vec![0, 0],
                coords: vec![0.0, 0.0],
                value: 1.0,
            }],
        };
        let kernel = kernel_on_g(&rs, &psi);
        for h in [[0.3, 0.8], [1.4, -0.2]] {
            assert!((kernel.evaluate(&rs, h) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn cutoff_mismatch_is_an_error() {
        let rs = RootSystem::new(GroupId::Su2);
        let f = wrap_series(&rs, &AdInvariantFunction::gaussian(1.0), 9.0, &spec()).unwrap();
        let narrow = transfer_star(&rs, &MultiplierSymbol::constant(1.0), 4.0);
        assert!(matches!(
            apply_multiplier(&rs, &narrow, &f),
            Err(Error::CutoffMismatch { .. })
        ));
    }

    #[test]
    fn euclid_action_of_unit_symbol_inverts_the_transform() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(1.0);
        let one = MultiplierSymbol::constant(1.0);
        let pts: Vec<V2> = vec![[0.0, 0.0], [0.61, 0.0], [1.7, 0.0]];
        let vals = apply_multiplier_euclid(&rs, &one, &mu, &pts, &spec()).unwrap();
        for (h, v) in pts.iter().zip(vals) {
            let expect = mu.eval(*h);
            assert!(
                (v - Complex64::new(expect, 0.0)).norm() < 1e-6,
                "h={h:?}: {v} vs {expect}"
            );
        }
    }

    #[test]
    fn euclid_gaussian_symbol_widens_a_gaussian() {
        let rs = RootSystem::new(GroupId::Su2);
        let sigma: f64 = 0.9;
        let t = 0.35;
        let mu = AdInvariantFunction::gaussian(sigma);
        let psi = MultiplierSymbol::gaussian(t);
        let sig_out = (sigma * sigma + 2.0 * t).sqrt();
        let amp = (sigma / sig_out).powi(rs.dim as i32);
        let pts: Vec<V2> = vec![[0.25, 0.0], [1.1, 0.0]];
        let vals = apply_multiplier_euclid(&rs, &psi, &mu, &pts, &spec()).unwrap();
        for (h, v) in pts.iter().zip(vals) {
            let expect = amp * (-geom::dot(*h, *h) / (2.0 * sig_out * sig_out)).exp();
            assert!(
                (v - Complex64::new(expect, 0.0)).norm() < 1e-7,
                "h={h:?}: {v} vs {expect}"
            );
        }
    }

    #[test]
    fn zero_symbol_kills_everything() {
        let rs = RootSystem::new(GroupId::Su2);
        let mu = AdInvariantFunction::gaussian(1.0);
        let zero = MultiplierSymbol::constant(0.0);
        let vals = apply_multiplier_euclid(&rs, &zero, &mu, &[[0.4, 0.0]], &spec()).unwrap();
        assert!(vals[0].norm() < 1e-14);
    }

    #[test]
    fn monte_carlo_agrees_with_orbit_quadrature() {
        let rs = RootSystem::new(GroupId::Su2);
        let psi = MultiplierSymbol::gaussian(0.4);
        let lambda = rs.dominant_weight(&[3]).unwrap();
        let quad_v = transfer_star_star(&rs, &psi, 4.0, &spec())
            .unwrap()
            .get(&[3])
            .unwrap();
        let mc_v = mc_transfer_star_star(&rs, &psi, lambda.shifted(&rs), 200_000, 5);
        assert!((quad_v - mc_v).abs() < 1e-2);
    }

    #[test]
    fn symbols_report_weyl_invariance() {
        let rs = RootSystem::new(GroupId::Su3);
        assert!(MultiplierSymbol::gaussian(0.5).weyl_invariance_defect(&rs, 200) < 1e-12);
        assert!(MultiplierSymbol::ball(2.0).weyl_invariance_defect(&rs, 200) < 1e-12);
    }
}
