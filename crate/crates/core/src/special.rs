//! Scalar special functions on the torus algebra: the analytic Jacobian
//! factor of exp, the Weyl denominator, irreducible characters, and the
//! orbital integral.
//!
//! Characters are evaluated by the Weyl character formula as a ratio of
//! alternating sums. The denominator is computed in stable product form,
//! and points too close to a Weyl wall fall back to an averaged evaluation
//! at two nearby regular points. A second, cancellation-free evaluation
//! path through explicit weight multiplicities (Freudenthal recursion)
//! backs grid sweeps and cross-checks the formula in tests.

use crate::geom::{self, V2};
use crate::rootdata::{DominantWeight, RootSystem};
use num_complex::Complex64;

/// Threshold below which an alternating-sum denominator triggers the
/// limit evaluation.
pub const SINGULAR_EPS: f64 = 1e-10;
/// Step used by the two-point limit evaluation near Weyl walls.
pub const PERTURB_STEP: f64 = 1e-6;

/// Wall-perturbation step that keeps the alternating sum well conditioned:
/// it vanishes to order k at a full flag of walls, so the step must grow
/// with k for the perturbed ratio to stay above roundoff.
fn wall_step(rs: &RootSystem) -> f64 {
    if rs.num_positive_roots == 1 {
        PERTURB_STEP
    } else {
        5e-3
    }
}

#[inline]
fn sinc_half(x: f64) -> f64 {
    // sin(x/2)/(x/2) with the removable singularity filled in
    let t = 0.5 * x;
    if t.abs() < 1e-8 {
        1.0 - t * t / 6.0
    } else {
        t.sin() / t
    }
}

/// Analytic square root of the Jacobian of exp; equals 1 at the origin.
pub fn j_function(rs: &RootSystem, h: V2) -> f64 {
    rs.positive_roots
        .iter()
        .map(|a| sinc_half(geom::dot(*a, h)))
        .product()
}

/// Weyl denominator on the group: product of 2 sin(alpha(H)/2).
pub fn weyl_denominator(rs: &RootSystem, h: V2) -> f64 {
    rs.positive_roots
        .iter()
        .map(|a| 2.0 * (0.5 * geom::dot(*a, h)).sin())
        .product()
}

/// Product of the positive-root pairings; alternates under the Weyl group.
pub fn root_polynomial(rs: &RootSystem, h: V2) -> f64 {
    rs.root_poly(h)
}

/// Signed alternating exponential sum over the Weyl group.
pub fn alternating_sum(rs: &RootSystem, xi: V2, h: V2) -> Complex64 {
    rs.weyl_elements
        .iter()
        .zip(&rs.weyl_signs)
        .map(|(w, sign)| Complex64::from_polar(1.0, geom::dot(geom::apply(w, xi), h)) * *sign)
        .sum()
}

/// The alternating sum at xi = rho, in stable product form
/// prod (2 i sin(alpha(H)/2)).
pub fn weyl_denominator_complex(rs: &RootSystem, h: V2) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for a in &rs.positive_roots {
        acc *= Complex64::new(0.0, 2.0 * (0.5 * geom::dot(*a, h)).sin());
    }
    acc
}

/// Irreducible character at exp(H) by the Weyl character formula. When H
/// sits on a Weyl wall the denominator vanishes; the limit value is then
/// taken from the cancellation-free weight-multiplicity expansion, which
/// agrees with the two-point average of the ratio form but stays accurate
/// for every rank.
pub fn character(rs: &RootSystem, lambda: &DominantWeight, h: V2) -> Complex64 {
    let den = weyl_denominator_complex(rs, h);
    if den.norm() < SINGULAR_EPS {
        return weight_system(rs, lambda).eval(h);
    }
    alternating_sum(rs, lambda.shifted(rs), h) / den
}

/// Fourier transform of the invariant orbit measure through `xi`,
/// normalized to total mass one. Weyl-invariant in both arguments, and
/// equal to 1 when either argument vanishes.
pub fn orbital_integral(rs: &RootSystem, xi: V2, h: V2) -> Complex64 {
    orbital_depth(rs, xi, h, 0)
}

fn orbital_depth(rs: &RootSystem, xi: V2, h: V2, depth: u8) -> Complex64 {
    // Near a vanishing argument the transform is 1 up to second order in
    // |xi||H|, far below every tolerance used in this crate.
    if geom::norm(xi) * geom::norm(h) < 1e-6 {
        return Complex64::new(1.0, 0.0);
    }
    let pix = rs.root_poly(xi);
    let pih = rs.root_poly(h);
    if depth < 3 {
        let step = wall_step(rs);
        if pix.abs() < SINGULAR_EPS {
            let dir = geom::scale(rs.rho, step / geom::norm(rs.rho));
            return 0.5
                * (orbital_depth(rs, geom::add(xi, dir), h, depth + 1)
                    + orbital_depth(rs, geom::sub(xi, dir), h, depth + 1));
        }
        if pih.abs() < SINGULAR_EPS {
            let dir = geom::scale(rs.rho, step / geom::norm(rs.rho));
            return 0.5
                * (orbital_depth(rs, xi, geom::add(h, dir), depth + 1)
                    + orbital_depth(rs, xi, geom::sub(h, dir), depth + 1));
        }
    }
    alternating_sum(rs, xi, h) / (rs.kappa * pix * pih)
}

/// Fourier transform of the orbit measure through lambda + rho carrying
/// total mass d_lambda. Tends to d_lambda as H tends to 0 and satisfies
/// the character identity: equals j(H) * character(lambda, H).
pub fn kirillov_orbit_transform(rs: &RootSystem, lambda: &DominantWeight, h: V2) -> Complex64 {
    let pih = rs.root_poly(h);
    if pih.abs() < SINGULAR_EPS {
        // limit value along the wall, through the stable character table
        return j_function(rs, h) * weight_system(rs, lambda).eval(h);
    }
    // d_lambda * alt(lambda+rho, H) / (kappa pi(lambda+rho) pi(H)) with the
    // dimension formula folded in: d_lambda pi(rho) = pi(lambda+rho).
    alternating_sum(rs, lambda.shifted(rs), h) / (rs.kappa * rs.pi_rho * pih)
}

/// Weight multiplicities of an irreducible representation, expanded over
/// the whole Weyl orbit. Evaluating the character through this table is
/// free of cancellation at Weyl walls.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    /// (weight coordinates, multiplicity), every weight of the module.
    pub entries: Vec<(V2, f64)>,
}

impl WeightSystem {
    pub fn eval(&self, h: V2) -> Complex64 {
        self.entries
            .iter()
            .map(|(nu, m)| Complex64::from_polar(1.0, geom::dot(*nu, h)) * *m)
            .sum()
    }

    pub fn dimension(&self) -> f64 {
        self.entries.iter().map(|(_, m)| *m).sum()
    }
}

/// Weight system of the highest-weight module by Freudenthal's recursion
/// over dominant weights, then orbit expansion.
pub fn weight_system(rs: &RootSystem, lambda: &DominantWeight) -> WeightSystem {
    let shifted = lambda.shifted(rs);
    let top_norm2 = geom::dot(shifted, shifted);

    // Dominant weights of the module: lambda minus nonnegative root
    // combinations, with |mu + rho| <= |lambda + rho|.
    let height_bound = lambda.labels.iter().sum::<i64>() * 2 + 4;
    let mut dominants: Vec<(Vec<i64>, V2, i64)> = Vec::new(); // labels, coords, height
    let push_candidate = |dominants: &mut Vec<(Vec<i64>, V2, i64)>, n: &[i64]| {
        let mut mu = lambda.coords;
        for (ni, a) in n.iter().zip(&rs.simple_roots) {
            mu = geom::sub(mu, geom::scale(*a, *ni as f64));
        }
        if !rs.is_dominant_coords(mu) {
            return;
        }
        let mu_rho = geom::add(mu, rs.rho);
        if geom::dot(mu_rho, mu_rho) > top_norm2 + 1e-9 {
            return;
        }
        dominants.push((rs.labels_of(mu), mu, n.iter().sum()));
    };
    if rs.rank == 1 {
        for n in 0..=height_bound {
            push_candidate(&mut dominants, &[n]);
        }
    } else {
        for n1 in 0..=height_bound {
            for n2 in 0..=height_bound {
                push_candidate(&mut dominants, &[n1, n2]);
            }
        }
    }
    dominants.sort_by_key(|(_, _, h)| *h);

    // multiplicity lookup by labels of the dominant representative
    let mut mult: std::collections::HashMap<Vec<i64>, f64> = std::collections::HashMap::new();
    for (labels, mu, height) in &dominants {
        if *height == 0 {
            mult.insert(labels.clone(), 1.0);
            continue;
        }
        let mu_rho = geom::add(*mu, rs.rho);
        let denom = top_norm2 - geom::dot(mu_rho, mu_rho);
        let mut num = 0.0;
        for alpha in &rs.positive_roots {
            let mut j = 1.0;
            loop {
                let nu = geom::add(*mu, geom::scale(*alpha, j));
                let rep = rs.dominant_rep(nu);
                let key = rs.labels_of(rep);
                match mult.get(&key) {
                    Some(m) => num += 2.0 * m * geom::dot(nu, *alpha),
                    None => break,
                }
                j += 1.0;
            }
        }
        let m = num / denom;
        debug_assert!(
            (m - m.round()).abs() < 1e-6,
            "multiplicity {m} not integral"
        );
        mult.insert(labels.clone(), m.round());
    }

    let mut entries: Vec<(V2, f64)> = Vec::new();
    for (labels, mu, _) in &dominants {
        let m = mult[labels];
        if m <= 0.0 {
            continue;
        }
        for nu in rs.weyl_orbit(*mu) {
            entries.push((nu, m));
        }
    }
    WeightSystem { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::GroupId;
    use approx::assert_relative_eq;

    fn rs2() -> RootSystem {
        RootSystem::new(GroupId::Su2)
    }
    fn rs3() -> RootSystem {
        RootSystem::new(GroupId::Su3)
    }

    /// H with a prescribed value of alpha(H) for SU(2).
    fn h_su2(alpha_h: f64) -> V2 {
        [alpha_h / 2f64.sqrt(), 0.0]
    }

    #[test]
    fn j_at_origin_is_one() {
        for rs in [rs2(), rs3()] {
            assert_relative_eq!(j_function(&rs, geom::ZERO), 1.0);
        }
    }

    #[test]
    fn j_su2_values() {
        let rs = rs2();
        // alpha(H) = pi: sin(pi/2)/(pi/2) = 2/pi
        assert_relative_eq!(
            j_function(&rs, h_su2(std::f64::consts::PI)),
            2.0 / std::f64::consts::PI,
            max_relative = 1e-14
        );
        // first zero at alpha(H) = 2 pi
        assert!(j_function(&rs, h_su2(2.0 * std::f64::consts::PI)).abs() < 1e-15);
    }

    #[test]
    fn weyl_denominator_values() {
        let rs = rs2();
        assert_relative_eq!(weyl_denominator(&rs, geom::ZERO), 0.0);
        assert_relative_eq!(
            weyl_denominator(&rs, h_su2(std::f64::consts::PI)),
            2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn denominator_product_identity() {
        // |Delta(exp H)| = |j(H)| * prod |alpha(H)| at generic points
        for rs in [rs2(), rs3()] {
            for t in [0.3, 0.9, 1.7] {
                let h = [t, 0.4 * t];
                assert_relative_eq!(
                    weyl_denominator(&rs, h).abs(),
                    (j_function(&rs, h) * root_polynomial(&rs, h)).abs(),
                    max_relative = 1e-12
                );
            }
        }
    }

    #[test]
    fn complex_denominator_matches_alternating_sum() {
        for rs in [rs2(), rs3()] {
            for t in [0.21, 0.77, 1.33] {
                let h = [t, -0.6 * t];
                let a = alternating_sum(&rs, rs.rho, h);
                let b = weyl_denominator_complex(&rs, h);
                assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()));
            }
        }
    }

    #[test]
    fn root_polynomial_alternates() {
        for rs in [rs2(), rs3()] {
            let h = [0.83, 0.31];
            let base = root_polynomial(&rs, h);
            for (w, sign) in rs.weyl_elements.iter().zip(&rs.weyl_signs) {
                let v = root_polynomial(&rs, geom::apply(w, h));
                assert_relative_eq!(v, sign * base, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn su2_character_closed_form() {
        // oracle: trace of diag(e^{i m theta}, e^{i (m-2) theta}, ...)
        let rs = rs2();
        for m in [0i64, 1, 2, 5, 11] {
            let lambda = rs.dominant_weight(&[m]).unwrap();
            for theta in [0.3, 1.1, 2.4] {
                let h = h_su2(2.0 * theta);
                let oracle: Complex64 = (0..=m)
                    .map(|j| Complex64::from_polar(1.0, (m - 2 * j) as f64 * theta))
                    .sum();
                let chi = character(&rs, &lambda, h);
                assert!((chi - oracle).norm() < 1e-11, "m={m} theta={theta}");
            }
        }
    }

    #[test]
    fn trivial_character_is_one() {
        for rs in [rs2(), rs3()] {
            let zero = rs.dominant_weight(&vec![0; rs.rank]).unwrap();
            for h in [[0.4, 0.9], [2.2, -0.3], [0.0, 0.0]] {
                let chi = character(&rs, &zero, h);
                assert!((chi - Complex64::new(1.0, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn character_at_identity_is_dimension() {
        for rs in [rs2(), rs3()] {
            for labels in [vec![2, 1], vec![0, 3], vec![4, 0]] {
                let labels: Vec<i64> = labels.into_iter().take(rs.rank).collect();
                let lambda = rs.dominant_weight(&labels).unwrap();
                let d = rs.weyl_dimension_of(&lambda) as f64;
                let chi = character(&rs, &lambda, geom::ZERO);
                assert!(
                    (chi.re - d).abs() < 1e-6 && chi.im.abs() < 1e-6,
                    "{labels:?}: chi(e) = {chi}"
                );
            }
        }
    }

    #[test]
    fn character_is_lattice_periodic() {
        for rs in [rs2(), rs3()] {
            let labels: Vec<i64> = vec![2; rs.rank];
            let lambda = rs.dominant_weight(&labels).unwrap();
            let h = [0.73, 0.19];
            let base = character(&rs, &lambda, h);
            for gamma in &rs.unit_lattice {
                let shifted = character(&rs, &lambda, geom::add(h, *gamma));
                assert!((base - shifted).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn weight_system_dimensions() {
        let rs = rs3();
        for (labels, d) in [
            (vec![0i64, 0], 1.0),
            (vec![1, 0], 3.0),
            (vec![1, 1], 8.0),
            (vec![3, 1], 24.0),
            (vec![2, 2], 27.0),
        ] {
            let lambda = rs.dominant_weight(&labels).unwrap();
            let ws = weight_system(&rs, &lambda);
            assert_relative_eq!(ws.dimension(), d, max_relative = 1e-12);
            assert_eq!(ws.dimension() as u64, rs.weyl_dimension_of(&lambda));
        }
    }

    #[test]
    fn weight_sum_matches_character_formula() {
        for rs in [rs2(), rs3()] {
            let labels: Vec<i64> = if rs.rank == 1 { vec![4] } else { vec![2, 1] };
            let lambda = rs.dominant_weight(&labels).unwrap();
            let ws = weight_system(&rs, &lambda);
            for h in [[0.31, 0.77], [1.21, -0.45], [2.7, 0.9]] {
                let a = ws.eval(h);
                let b = character(&rs, &lambda, h);
                assert!((a - b).norm() < 1e-9, "h={h:?} {a} vs {b}");
            }
        }
    }

    #[test]
    fn ratio_form_agrees_with_weight_table_near_wall() {
        // just above the fallback threshold the ratio form still runs and
        // must match the cancellation-free table
        let rs = rs3();
        let lambda = rs.dominant_weight(&[2, 1]).unwrap();
        let ws = weight_system(&rs, &lambda);
        let h = [1e-4, 0.9];
        let a = character(&rs, &lambda, h);
        let b = ws.eval(h);
        assert!((a - b).norm() < 1e-9, "{a} vs {b}");
        // exactly on the wall the fallback takes over
        let on_wall = character(&rs, &lambda, [0.0, 0.9]);
        assert!((on_wall - ws.eval([0.0, 0.9])).norm() < 1e-12);
    }

    #[test]
    fn orbital_integral_normalization_and_symmetry() {
        for rs in [rs2(), rs3()] {
            let h = [0.62, 0.35];
            let one = orbital_integral(&rs, geom::ZERO, h);
            assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-8);

            let xi = geom::add(rs.rho, geom::scale(rs.fundamental_weights[0], 0.4));
            let base = orbital_integral(&rs, xi, h);
            for w in &rs.weyl_elements {
                let v = orbital_integral(&rs, geom::apply(w, xi), h);
                assert!((v - base).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn orbital_integral_su2_sinc() {
        // oracle: the orbit is a round sphere, so the transform is
        // sin(|xi||H|)/(|xi||H|)
        let rs = rs2();
        for (r, s) in [(0.8, 1.3), (2.0, 0.4), (3.3, 2.1)] {
            let xi = [r, 0.0];
            let h = [s, 0.0];
            let v = orbital_integral(&rs, xi, h);
            let oracle = (r * s).sin() / (r * s);
            assert!((v - Complex64::new(oracle, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn kirillov_identity_on_samples() {
        // j(H) chi_lambda(exp H) equals the orbit transform with mass d
        for rs in [rs2(), rs3()] {
            let labels: Vec<i64> = if rs.rank == 1 { vec![3] } else { vec![1, 2] };
            let lambda = rs.dominant_weight(&labels).unwrap();
            for h in [[0.41, 0.23], [1.3, -0.8], [2.2, 0.6]] {
                let lhs = kirillov_orbit_transform(&rs, &lambda, h);
                let rhs = j_function(&rs, h) * character(&rs, &lambda, h);
                assert!((lhs - rhs).norm() < 1e-10, "h={h:?}");
            }
        }
    }

    #[test]
    fn kirillov_total_mass() {
        for rs in [rs2(), rs3()] {
            let labels: Vec<i64> = if rs.rank == 1 { vec![5] } else { vec![2, 0] };
            let lambda = rs.dominant_weight(&labels).unwrap();
            let d = rs.weyl_dimension_of(&lambda) as f64;
            let v = kirillov_orbit_transform(&rs, &lambda, geom::ZERO);
            assert!((v - Complex64::new(d, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn kirillov_at_zero_weight_is_j() {
        let rs = rs3();
        let zero = rs.dominant_weight(&[0, 0]).unwrap();
        for h in [[0.5, 0.1], [1.9, -1.1]] {
            let v = kirillov_orbit_transform(&rs, &zero, h);
            assert!((v.re - j_function(&rs, h)).abs() < 1e-12);
            assert!(v.im.abs() < 1e-12);
        }
    }
}
