//! The verification suite behind `verify-all`: every numbered check runs
//! at its pinned tolerance and reports one pass/fail line. The same
//! functions back the integration test suite.

use crate::commands::{self, cell_grid, Common};
use anyhow::{Context, Result};
use liewrap::fourier_sums::{dilate_enumerate, partial_sum, polynomial_decay_target, Polyhedron};
use liewrap::geom::V2;
use liewrap::multiplier::{
    gaussian_kernel, mc_transfer_star_star, transfer_star, transfer_star_star, MultiplierSymbol,
};
use liewrap::norms::{
    check_bound, heat_cutoff, j_lp_probe, lp_norm_on_central, parseval_l2_norm, InequalityId, Lp,
};
use liewrap::rootdata::{DominantWeight, GroupId, RootSystem};
use liewrap::special;
use liewrap::wrap::{
    convolve_central, wrap_j_lattice, wrap_lattice, wrap_j_series, wrap_series,
    AdInvariantFunction, CentralFunction,
};
use liewrap::QuadSpec;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl CriterionResult {
    fn check(id: usize, name: &'static str, ok: bool, detail: String) -> Self {
        CriterionResult {
            id,
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail,
        }
    }
}

pub fn all_passed(results: &[CriterionResult]) -> bool {
    results.iter().all(|r| r.status != Status::Fail)
}

fn spec() -> QuadSpec {
    QuadSpec::default()
}

/// Run every criterion applicable to the chosen group.
pub fn run_criteria(group: GroupId, seed: u64, with_mc: bool) -> Result<Vec<CriterionResult>> {
    let rs = RootSystem::new(group);
    let mut out = Vec::new();
    out.push(normalization_gate(&rs).context("criterion 1")?);
    out.push(kirillov_identity(&rs).context("criterion 2")?);
    if group == GroupId::Su2 {
        out.push(poisson_summation(&rs).context("criterion 3")?);
        out.push(homomorphism(&rs).context("criterion 4")?);
        out.push(heat_spectrum(&rs).context("criterion 5")?);
    }
    out.push(transfer_coherence(&rs, seed, with_mc).context("criterion 6")?);
    if group == GroupId::Su2 {
        out.push(norm_inequalities(&rs).context("criterion 7")?);
        out.push(jacobian_integrability_threshold(&rs).context("criterion 8")?);
        out.push(partial_sum_checks(&rs).context("criterion 9")?);
        out.push(determinism(&rs, seed).context("criterion 10")?);
    }
    Ok(out)
}

/// Criterion 1: The constant function has unit Lp norm for p in {1, 2, 4}.
fn normalization_gate(rs: &RootSystem) -> Result<CriterionResult> {
    let zero = rs.dominant_weight(&vec![0; rs.rank])?;
    let one = CentralFunction::from_pairs(rs, vec![(zero, Complex64::new(1.0, 0.0))], 1.0);
    let mut worst: f64 = 0.0;
    for p in [1.0, 2.0, 4.0] {
        let v = lp_norm_on_central(rs, &one, Lp::P(p), &spec())?;
        worst = worst.max((v - 1.0).abs());
    }
    Ok(CriterionResult::check(
        1,
        "normalization gate",
        worst <= 1e-8,
        format!("max | ||1||_p - 1 | = {worst:.3e} (tol 1e-8, p in {{1,2,4}})"),
    ))
}

/// Regular grid of `want` points inside the cell, bounded away from walls.
fn regular_grid(rs: &RootSystem, want: usize) -> Vec<V2> {
    let mut out = Vec::with_capacity(want);
    let candidates = cell_grid(rs, want * 2);
    for h in candidates {
        if rs.root_poly(h).abs() > 1e-2 && special::weyl_denominator(rs, h).abs() > 1e-2 {
            out.push(h);
            if out.len() == want {
                break;
            }
        }
    }
    out
}

fn first_dominant_weights(rs: &RootSystem, n: usize) -> Vec<DominantWeight> {
    let mut radius = 4.0;
    loop {
        let weights = rs.enumerate_dominant_weights(radius);
        if weights.len() >= n {
            return weights.into_iter().take(n).collect();
        }
        radius *= 1.5;
    }
}

/// Criterion 2: Orbit transform equals Jacobian factor times character on a
/// 200-point regular grid, for the first ten dominant weights.
fn kirillov_identity(rs: &RootSystem) -> Result<CriterionResult> {
    let grid = regular_grid(rs, 200);
    let weights = first_dominant_weights(rs, 10);
    let mut worst: f64 = 0.0;
    for w in &weights {
        for h in &grid {
            let lhs = special::kirillov_orbit_transform(rs, w, *h);
            let rhs = special::j_function(rs, *h) * special::character(rs, w, *h);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(CriterionResult::check(
        2,
        "Kirillov identity",
        worst <= 1e-9,
        format!(
            "max |orbit transform - j*chi| = {worst:.3e} over {} points x 10 weights (tol 1e-9)",
            grid.len()
        ),
    ))
}

/// Criterion 3: Lattice and series forms of both wraps agree on the grid for the
/// Gaussian family.
fn poisson_summation(rs: &RootSystem) -> Result<CriterionResult> {
    let grid = cell_grid(rs, 200);
    let mut worst_plain: f64 = 0.0;
    let mut worst_j: f64 = 0.0;
    for sigma in [0.5, 1.0, 2.0] {
        let mu = AdInvariantFunction::gaussian(sigma);
        let cutoff = heat_cutoff(rs, sigma);
        let series = wrap_series(rs, &mu, cutoff, &spec())?;
        let ev = series.evaluator(rs);
        let jseries = wrap_j_series(rs, &mu, cutoff, &spec())?;
        let ev_j = jseries.evaluator(rs);
        for h in &grid {
            let lat = wrap_lattice(rs, &mu, *h, None)?;
            let ser = ev.eval(*h);
            worst_plain = worst_plain.max((lat.value - ser.re).hypot(ser.im));
            let jlat = wrap_j_lattice(rs, &mu, *h, None);
            let jser = ev_j.eval(*h);
            worst_j = worst_j.max((jlat.value - jser.re).hypot(jser.im));
        }
    }
    Ok(CriterionResult::check(
        3,
        "Poisson summation",
        worst_plain <= 1e-7 && worst_j <= 1e-6,
        format!(
            "plain pair max diff {worst_plain:.3e} (tol 1e-7); orbit pair max diff {worst_j:.3e} (tol 1e-6)"
        ),
    ))
}

/// Criterion 4: Wrapping turns the closed-form Gaussian convolution into the
/// coefficient product.
fn homomorphism(rs: &RootSystem) -> Result<CriterionResult> {
    let (s1, s2) = (0.8f64, 1.2f64);
    let s3 = (s1 * s1 + s2 * s2).sqrt();
    let s = s1 * s2 / s3;
    let amplitude = rs.gauss_ft_const * s.powi(rs.dim as i32);
    let convolved = AdInvariantFunction::gaussian_scaled(s3, amplitude);
    let cutoff = 20.0;
    let lhs = wrap_series(rs, &convolved, cutoff, &spec())?;
    let a = wrap_series(rs, &AdInvariantFunction::gaussian(s1), cutoff, &spec())?;
    let b = wrap_series(rs, &AdInvariantFunction::gaussian(s2), cutoff, &spec())?;
    let rhs = convolve_central(rs, &a, &b)?;
    let mut worst: f64 = 0.0;
    for (x, y) in lhs.coefficients.iter().zip(&rhs.coefficients) {
        worst = worst.max((x.value() - y.value()).norm());
    }
    Ok(CriterionResult::check(
        4,
        "wrapping homomorphism",
        worst <= 1e-8,
        format!(
            "max coefficient diff {worst:.3e} over {} weights (tol 1e-8)",
            lhs.coefficients.len()
        ),
    ))
}

/// Criterion 5: Wrapped heat coefficients match the closed-form spectrum.
fn heat_spectrum(rs: &RootSystem) -> Result<CriterionResult> {
    let mut worst: f64 = 0.0;
    for t in [0.5f64, 1.0] {
        let sigma = t.sqrt();
        let mu = AdInvariantFunction::gaussian(sigma);
        let f = wrap_series(rs, &mu, heat_cutoff(rs, sigma), &spec())?;
        let scale = rs.gauss_ft_const * sigma.powi(rs.dim as i32);
        for e in &f.coefficients {
            let w = rs.dominant_weight(&e.labels)?;
            let a = w.shifted_norm(rs);
            let expect = scale * (-t * a * a / 2.0).exp();
            worst = worst.max((e.value() - Complex64::new(expect, 0.0)).norm());
        }
    }
    Ok(CriterionResult::check(
        5,
        "heat spectrum",
        worst <= 1e-8,
        format!("max |coefficient - closed form| = {worst:.3e} (tol 1e-8, t in {{0.5,1}})"),
    ))
}

/// Criterion 6: The two transfer forms match the two wrap forms, with a seeded
/// Monte Carlo oracle behind the orbit quadrature.
fn transfer_coherence(rs: &RootSystem, seed: u64, with_mc: bool) -> Result<CriterionResult> {
    let t = 0.5;
    let psi = MultiplierSymbol::gaussian(t);
    let kernel = gaussian_kernel(rs, t);
    let cutoff = if rs.rank == 1 { 8.0 } else { 5.0 };

    let star = transfer_star(rs, &psi, cutoff);
    let wrapped = wrap_series(rs, &kernel, cutoff, &spec())?;
    let mut worst_star: f64 = 0.0;
    for e in &star.entries {
        let c = wrapped.get(&e.labels).expect("same enumeration");
        worst_star = worst_star.max((c - Complex64::new(e.value, 0.0)).norm());
    }

    let orbit_spec = QuadSpec {
        tol: 1e-9,
        ..QuadSpec::default()
    };
    let starstar = transfer_star_star(rs, &psi, cutoff, &orbit_spec)?;
    let jwrapped = wrap_j_series(rs, &kernel, cutoff, &spec())?;
    let mut worst_ss: f64 = 0.0;
    for e in &starstar.entries {
        let c = jwrapped.get(&e.labels).expect("same enumeration");
        worst_ss = worst_ss.max((c - Complex64::new(e.value, 0.0)).norm());
    }

    let mut detail = format!(
        "shifted vs wrapped kernel {worst_star:.3e} (tol 1e-8); orbit-averaged vs j-wrap {worst_ss:.3e} (tol 1e-6)"
    );
    let mut ok = worst_star <= 1e-8 && worst_ss <= 1e-6;

    if with_mc {
        let mut worst_mc: f64 = 0.0;
        for (i, e) in starstar.entries.iter().take(5).enumerate() {
            let w = rs.dominant_weight(&e.labels)?;
            let mc = mc_transfer_star_star(
                rs,
                &psi,
                w.shifted(rs),
                1_000_000,
                seed.wrapping_add(i as u64),
            );
            worst_mc = worst_mc.max((mc - e.value).abs());
        }
        detail.push_str(&format!(
            "; Monte Carlo oracle (1e6 samples) vs quadrature {worst_mc:.3e} (tol 1e-2)"
        ));
        ok = ok && worst_mc <= 1e-2;
    } else {
        detail.push_str("; Monte Carlo oracle skipped (enable --with-mc-oracle)");
    }

    Ok(CriterionResult::check(6, "transfer coherence", ok, detail))
}

/// Criterion 7: The norm-inequality harness over the 16x Gaussian dilation sweep.
fn norm_inequalities(rs: &RootSystem) -> Result<CriterionResult> {
    let sigmas = commands::parse_family("gauss:0.25..4.0:9").expect("static family");
    let q_small = Lp::P(1.2); // below 2n/(n+l) = 1.5 for this group
    let q_large = Lp::P(4.0); // above 2n/(n-l) = 3 for this group
    let cases: Vec<(InequalityId, Lp, Lp, f64)> = vec![
        (InequalityId::Eq10, Lp::P(1.0), Lp::P(1.0), 1.0 + 1e-6),
        (InequalityId::Eq11, Lp::P(1.0), Lp::P(1.0), 1.0 + 1e-6),
        (InequalityId::Thm2J, Lp::P(1.0), Lp::P(1.0), 10.0),
        (InequalityId::Thm2J, Lp::P(2.0), Lp::P(2.0), 10.0),
        (InequalityId::Thm2J, Lp::P(4.0), Lp::P(4.0), 10.0),
        (InequalityId::Thm2J, Lp::Infinity, Lp::Infinity, 10.0),
        (InequalityId::Thm2Plain, Lp::P(2.0), Lp::P(2.0), 10.0),
        (InequalityId::Thm2Plain, Lp::P(4.0), Lp::P(4.0), 10.0),
        (InequalityId::Thm3Q1, Lp::P(1.0), q_small, 10.0),
        (InequalityId::Thm3InfQ, q_large, Lp::Infinity, 10.0),
        (InequalityId::Thm4L2, Lp::P(2.0), Lp::P(2.0), 1.0 + 1e-6),
        (InequalityId::Lem3a, Lp::P(2.0), Lp::P(2.0), 10.0),
        (InequalityId::Lem3a, Lp::P(4.0), Lp::P(4.0), 10.0),
    ];
    let mut failures: Vec<String> = Vec::new();
    let mut summary: Vec<String> = Vec::new();
    for (id, p, q, max_allowed) in cases {
        let report = check_bound(rs, id, p, q, &sigmas, &spec())?;
        let ok = report.max_ratio <= max_allowed && report.growth_factor <= 2.0;
        summary.push(format!("{id}(p={p}): ratio {:.4}", report.max_ratio));
        if !ok {
            failures.push(format!(
                "{id}(p={p},q={q}): max ratio {:.6} (allowed {max_allowed}), growth {:.3}",
                report.max_ratio, report.growth_factor
            ));
        }
        if !report.in_stated_range {
            failures.push(format!("{id}: exponents unexpectedly out of range"));
        }
    }
    let ok = failures.is_empty();
    Ok(CriterionResult::check(
        7,
        "norm inequalities",
        ok,
        if ok {
            format!("13 inequality cases pass; {}", summary.join("; "))
        } else {
            failures.join("; ")
        },
    ))
}

/// Criterion 8: Integrability threshold of the Jacobian factor: stabilization above,
/// divergence trends below.
fn jacobian_integrability_threshold(rs: &RootSystem) -> Result<CriterionResult> {
    let radii = [10.0, 100.0, 1000.0, 10000.0];
    let above = j_lp_probe(rs, 4.0, &radii)?;
    let rel_inc = (above[3] - above[2]) / above[3];
    let mut ok = rel_inc < 1e-3;
    let mut detail = format!("p=4 final-decade relative increment {rel_inc:.3e} (tol 1e-3)");
    for p in [2.0, 3.0] {
        let probe = j_lp_probe(rs, p, &radii)?;
        let inc_prev = probe[2] - probe[1];
        let inc_last = probe[3] - probe[2];
        let ratio = inc_last / inc_prev;
        detail.push_str(&format!("; p={p} increment ratio {ratio:.3} (must exceed 0.5)"));
        ok = ok && ratio > 0.5;
    }
    Ok(CriterionResult::check(
        8,
        "integrability threshold",
        ok,
        detail,
    ))
}

/// Criterion 9: Partial sums: Parseval tail identity, projection algebra, and
/// monotone error curves for the polynomial-decay target.
fn partial_sum_checks(rs: &RootSystem) -> Result<CriterionResult> {
    let region = Polyhedron::interval(1.0)?;
    let target = polynomial_decay_target(rs, 3.0, 12.0);
    let family = dilate_enumerate(rs, &region, 16.0)?;

    // Parseval tail at a middle region
    let n = family.len() / 2;
    let diff = target.map_coefficients(|e| {
        if family.member(n, &e.labels) {
            Complex64::new(0.0, 0.0)
        } else {
            e.value()
        }
    });
    let exact = parseval_l2_norm(rs, &diff);
    let grid = lp_norm_on_central(rs, &diff, Lp::P(2.0), &spec())?;
    let parseval_err = (exact - grid).abs() / exact.max(1e-30);
    let mut ok = parseval_err <= 1e-6;
    let mut detail = format!("Parseval tail relative error {parseval_err:.3e} (tol 1e-6)");

    // projection algebra, exact on coefficients
    let m = 2.min(family.len() - 1);
    let k = 5.min(family.len() - 1);
    let sk = partial_sum(&family, k, &target)?;
    let smsk = partial_sum(&family, m, &sk)?;
    let smin = partial_sum(&family, m.min(k), &target)?;
    let algebra_exact = smsk
        .coefficients
        .iter()
        .zip(&smin.coefficients)
        .all(|(a, b)| a.value() == b.value());
    ok = ok && algebra_exact;
    detail.push_str(&format!("; projection algebra exact: {algebra_exact}"));

    // monotone error curves at p in {2, 4}
    let curve = liewrap::fourier_sums::convergence_experiment(
        rs,
        &family,
        &target,
        &[Lp::P(2.0), Lp::P(4.0)],
        &spec(),
    )?;
    let monotone = curve.windows(2).all(|w| {
        (0..2).all(|i| w[1].errors[i].1 <= w[0].errors[i].1 + 1e-12)
    });
    ok = ok && monotone;
    detail.push_str(&format!(
        "; error curves monotone over {} regions: {monotone}",
        curve.len()
    ));

    Ok(CriterionResult::check(9, "partial sums", ok, detail))
}

/// Criterion 10: Identical configuration and seed produce byte-identical outputs.
fn determinism(rs: &RootSystem, seed: u64) -> Result<CriterionResult> {
    let common = Common {
        group: rs.group,
        cutoff: None,
        quad_panels: 8,
        seed,
        with_mc_oracle: false,
    };
    let render = || -> Result<String> {
        let mut blob = String::new();
        let wrap_out = commands::build_wrap(&common, 1.0, 60)?;
        for (name, contents) in &wrap_out.files {
            blob.push_str(name);
            blob.push_str(contents);
        }
        let bounds = commands::build_verify_bounds(
            &common,
            &commands::BoundsParams {
                inequality: "eq10".into(),
                p: None,
                q: None,
                family: "gauss:0.5..2.0:3".into(),
            },
        )?;
        for (name, contents) in &bounds.files {
            blob.push_str(name);
            blob.push_str(contents);
        }
        Ok(blob)
    };
    let first = render()?;
    let second = render()?;
    let ok = first == second;
    Ok(CriterionResult::check(
        10,
        "determinism",
        ok,
        format!(
            "two in-process runs produced {} bytes each, byte-identical: {ok}",
            first.len()
        ),
    ))
}
