//! Averages over the invariant orbit of rho, used by the orbit-averaged
//! multiplier transfer and by the series form of the j-weighted wrap.
//!
//! The integrand is always a Weyl-invariant function on the torus dual,
//! evaluated at the invariant representative of `center - beta` as beta
//! runs over the orbit of rho. For SU(2) the orbit is a round sphere and
//! the average reduces to one polar integral. For SU(3) the orbit is the
//! full flag manifold; conjugation symmetry reduces the average to four
//! coordinates (a simplex pair for the top eigenline, one modulus and one
//! phase for the second), each with an explicit uniform density, and the
//! representative comes from a closed-form 3x3 Hermitian eigensolve.
//! A seeded Monte Carlo estimator over Haar-random unitaries provides an
//! independent oracle for both groups.

use crate::error::Error;
use crate::exec;
use crate::geom::{self, V2};
use crate::quad::{self, QuadSpec};
use crate::rootdata::RootSystem;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Average of `f` over { center - beta : beta in the orbit of rho }, with
/// `f` evaluated at the dominant representative of its argument.
pub fn orbit_average<F>(rs: &RootSystem, f: F, center: V2, spec: &QuadSpec) -> Result<f64, Error>
where
    F: Fn(V2) -> f64 + Sync,
{
    let v = orbit_average_c(rs, |x| Complex64::new(f(x), 0.0), center, spec)?;
    Ok(v.re)
}

/// Complex-valued variant of [`orbit_average`].
pub fn orbit_average_c<F>(
    rs: &RootSystem,
    f: F,
    center: V2,
    spec: &QuadSpec,
) -> Result<Complex64, Error>
where
    F: Fn(V2) -> Complex64 + Sync,
{
    match rs.rank {
        1 => sphere_average(rs, &f, center, spec),
        _ => flag_average(rs, &f, center, spec),
    }
}

/// SU(2): the orbit of rho is the sphere of radius |rho|, and the cosine
/// of the polar angle is uniform on [-1, 1].
fn sphere_average<F>(
    rs: &RootSystem,
    f: &F,
    center: V2,
    spec: &QuadSpec,
) -> Result<Complex64, Error>
where
    F: Fn(V2) -> Complex64 + Sync,
{
    let a = geom::norm(center);
    let r = geom::norm(rs.rho);
    let g = |u: f64| {
        let d2 = (a * a + r * r - 2.0 * a * r * u).max(0.0);
        f([d2.sqrt(), 0.0])
    };
    let v: Complex64 = quad::integrate_1d(g, -1.0, 1.0, spec)?;
    Ok(0.5 * v)
}

/// SU(3): quadrature over the flag coordinates. Conjugating by the torus
/// fixes the phases of the top eigenvector, whose squared moduli are
/// uniform on the simplex; the second eigenvector is uniform on the
/// projective line of the orthogonal complement.
fn flag_average<F>(
    rs: &RootSystem,
    f: &F,
    center: V2,
    spec: &QuadSpec,
) -> Result<Complex64, Error>
where
    F: Fn(V2) -> Complex64 + Sync,
{
    let c_trip = rs.to_eigen_triple(center);
    let r_trip = rs.to_eigen_triple(rs.rho);

    let mut n = spec.nodes.max(8);
    let mut prev: Option<Complex64> = None;
    for _ in 0..=spec.max_refine {
        let val = flag_pass(rs, f, &c_trip, &r_trip, n);
        if let Some(p) = prev {
            if (val - p).norm() <= spec.tol * val.norm().max(1.0) {
                return Ok(val);
            }
        }
        prev = Some(val);
        n *= 2;
    }
    let coarse = prev.map(|v| v.norm()).unwrap_or(f64::NAN);
    Err(Error::QuadratureNoConverge {
        coarse,
        fine: coarse,
    })
}

fn flag_pass<F>(rs: &RootSystem, f: &F, c_trip: &[f64], r_trip: &[f64], n: usize) -> Complex64
where
    F: Fn(V2) -> Complex64 + Sync,
{
    let (xs, ws) = quad::gauss_legendre(n);
    // map [-1,1] nodes to [0,1]
    let unit: Vec<(f64, f64)> = xs
        .iter()
        .zip(&ws)
        .map(|(x, w)| (0.5 * (x + 1.0), 0.5 * w))
        .collect();
    let m = 2 * n; // phase nodes
    let rows = exec::par_map_range(unit.len(), |iu| {
        let (u, wu) = unit[iu];
        let mut acc = Complex64::new(0.0, 0.0);
        for (v, wv) in &unit {
            // simplex coordinates with the product-rule Jacobian (1 - u);
            // the simplex density is the constant 2
            let x1 = u;
            let x2 = v * (1.0 - u);
            let x3 = (1.0 - x1 - x2).max(0.0);
            let z = [x1.sqrt(), x2.sqrt(), x3.sqrt()];
            let w_simplex = 2.0 * (1.0 - u) * wu * wv;
            // orthonormal real basis of the complement of z
            let b1 = complement_unit(z);
            let b2 = real_cross(z, b1);
            for (s, wsw) in &unit {
                let cs = s.sqrt();
                let sn = (1.0 - s).max(0.0).sqrt();
                for it in 0..m {
                    let theta = 2.0 * std::f64::consts::PI * it as f64 / m as f64;
                    let phase = Complex64::from_polar(1.0, theta);
                    // second eigenvector w = cs*b1 + sn*e^{i theta} b2
                    let w: [Complex64; 3] = [
                        Complex64::new(cs * b1[0], 0.0) + phase * (sn * b2[0]),
                        Complex64::new(cs * b1[1], 0.0) + phase * (sn * b2[1]),
                        Complex64::new(cs * b1[2], 0.0) + phase * (sn * b2[2]),
                    ];
                    let rep = rep_of_difference(rs, c_trip, r_trip, z, &w);
                    acc += f(rep) * (w_simplex * wsw / m as f64);
                }
            }
        }
        acc
    });
    rows.into_iter().sum()
}

/// Unit vector orthogonal to a nonnegative unit vector z, chosen smoothly
/// on the open simplex.
fn complement_unit(z: [f64; 3]) -> [f64; 3] {
    let (a, b) = (z[0], z[1]);
    let nrm = (a * a + b * b).sqrt();
    if nrm < 1e-14 {
        return [1.0, 0.0, 0.0];
    }
    [b / nrm, -a / nrm, 0.0]
}

fn real_cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Dominant representative of diag(c) - (r1 P_z + r2 P_w + r3 P_v).
fn rep_of_difference(
    rs: &RootSystem,
    c_trip: &[f64],
    r_trip: &[f64],
    z: [f64; 3],
    w: &[Complex64; 3],
) -> V2 {
    // B = r3 I + (r1 - r3) P_z + (r2 - r3) P_w, so M = diag(c) - B
    let dz = r_trip[0] - r_trip[2];
    let dw = r_trip[1] - r_trip[2];
    let mut mat = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for k in 0..3 {
            let pz = Complex64::new(z[i] * z[k], 0.0);
            let pw = w[i] * w[k].conj();
            mat[i][k] = -(pz * dz + pw * dw);
        }
        mat[i][i] += Complex64::new(c_trip[i] - r_trip[2], 0.0);
    }
    let eigs = hermitian3_eigs_desc(&mat);
    rs.from_eigen_triple(&eigs)
}

/// Eigenvalues of a 3x3 Hermitian matrix, descending, by the trigonometric
/// solution of the characteristic cubic.
pub fn hermitian3_eigs_desc(m: &[[Complex64; 3]; 3]) -> [f64; 3] {
    let q = (m[0][0].re + m[1][1].re + m[2][2].re) / 3.0;
    let off = m[0][1].norm_sqr() + m[0][2].norm_sqr() + m[1][2].norm_sqr();
    let dd = (m[0][0].re - q).powi(2) + (m[1][1].re - q).powi(2) + (m[2][2].re - q).powi(2);
    let p2 = dd + 2.0 * off;
    if p2 < 1e-28 {
        return [q, q, q];
    }
    let p = (p2 / 6.0).sqrt();
    // B = (M - qI)/p, r = det(B)/2
    let b = |i: usize, k: usize| {
        let mut v = m[i][k];
        if i == k {
            v -= Complex64::new(q, 0.0);
        }
        v / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det.re / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    let mut eigs = [e1, e2, e3];
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    eigs
}

/// Seeded Monte Carlo estimate of the same orbit average, by Haar-random
/// conjugation in the defining representation. Slow but fully independent
/// of the quadrature path.
pub fn mc_orbit_average<F>(rs: &RootSystem, f: F, center: V2, samples: usize, seed: u64) -> f64
where
    F: Fn(V2) -> f64,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match rs.rank {
        1 => {
            // uniform directions on the 2-sphere
            let a = geom::norm(center);
            let r = geom::norm(rs.rho);
            let mut acc = 0.0;
            for _ in 0..samples {
                let u: f64 = rng.gen_range(-1.0..=1.0);
                let d2 = (a * a + r * r - 2.0 * a * r * u).max(0.0);
                acc += f([d2.sqrt(), 0.0]);
            }
            acc / samples as f64
        }
        _ => {
            let c_trip = rs.to_eigen_triple(center);
            let r_trip = rs.to_eigen_triple(rs.rho);
            let mut acc = 0.0;
            for _ in 0..samples {
                let u = haar_unitary3(&mut rng);
                // M = diag(c) - U diag(r) U*
                let mut mat = [[Complex64::new(0.0, 0.0); 3]; 3];
                for i in 0..3 {
                    for k in 0..3 {
                        let mut s = Complex64::new(0.0, 0.0);
                        for l in 0..3 {
                            s += u[i][l] * u[k][l].conj() * r_trip[l];
                        }
                        mat[i][k] = -s;
                    }
                    mat[i][i] += Complex64::new(c_trip[i], 0.0);
                }
                let eigs = hermitian3_eigs_desc(&mat);
                acc += f(rs.from_eigen_triple(&eigs));
            }
            acc / samples as f64
        }
    }
}

fn gaussian_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    // Box-Muller
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * std::f64::consts::PI * u2;
    (r * t.cos(), r * t.sin())
}

/// Haar-random U(3) via Gram-Schmidt on a complex Ginibre matrix with the
/// standard phase correction. Conjugation only sees the projective action,
/// so U(3) sampling gives the orbit measure.
fn haar_unitary3(rng: &mut ChaCha8Rng) -> [[Complex64; 3]; 3] {
    let mut g = [[Complex64::new(0.0, 0.0); 3]; 3];
    for row in &mut g {
        for entry in row.iter_mut() {
            let (a, b) = gaussian_pair(rng);
            *entry = Complex64::new(a, b);
        }
    }
    // modified Gram-Schmidt on columns, diagonal phases fixed
    let mut q = g;
    for j in 0..3 {
        for i in 0..j {
            let mut proj = Complex64::new(0.0, 0.0);
            for row in &q {
                proj += row[i].conj() * row[j];
            }
            for row in &mut q {
                let qi = row[i];
                row[j] -= proj * qi;
            }
        }
        let mut nrm = 0.0;
        for row in &q {
            nrm += row[j].norm_sqr();
        }
        // Gram-Schmidt keeps the R-diagonal real positive, which is the
        // normalization that makes Q Haar-distributed.
        let nrm = nrm.sqrt();
        for row in &mut q {
            row[j] /= nrm;
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::GroupId;

    fn spec() -> QuadSpec {
        QuadSpec {
            tol: 1e-9,
            ..QuadSpec::default()
        }
    }

    #[test]
    fn constant_averages_to_itself() {
        for group in [GroupId::Su2, GroupId::Su3] {
            let rs = RootSystem::new(group);
            let c = geom::add(rs.rho, rs.fundamental_weights[0]);
            let v = orbit_average(&rs, |_| 1.0, c, &spec()).unwrap();
            assert!((v - 1.0).abs() < 1e-10, "{group}: {v}");
        }
    }

    #[test]
    fn second_moment_sees_the_zero_barycenter() {
        // the orbit of rho has barycenter zero, so the squared-distance
        // moment of center - beta is |center|^2 + |rho|^2 exactly
        for group in [GroupId::Su2, GroupId::Su3] {
            let rs = RootSystem::new(group);
            let c = geom::add(rs.rho, geom::scale(rs.fundamental_weights[0], 2.0));
            let v = orbit_average(&rs, |x| geom::dot(x, x), c, &spec()).unwrap();
            let expect = geom::dot(c, c) + geom::dot(rs.rho, rs.rho);
            assert!((v - expect).abs() < 1e-8, "{group}: {v} vs {expect}");
        }
    }

    #[test]
    fn su2_gaussian_average_closed_form() {
        let rs = RootSystem::new(GroupId::Su2);
        let t = 0.6;
        let c = [2.3, 0.0];
        let a = geom::norm(c);
        let r = geom::norm(rs.rho);
        let v = orbit_average(&rs, |x| (-t * geom::dot(x, x)).exp(), c, &spec()).unwrap();
        let oracle = (-t * (a * a + r * r)).exp() * (2.0 * t * a * r).sinh() / (2.0 * t * a * r);
        assert!((v - oracle).abs() < 1e-10, "{v} vs {oracle}");
    }

    #[test]
    fn flag_quadrature_matches_monte_carlo() {
        let rs = RootSystem::new(GroupId::Su3);
        let c = geom::add(rs.rho, rs.fundamental_weights[1]);
        let t = 0.4;
        let f = |x: V2| (-t * geom::dot(x, x)).exp();
        let quad_v = orbit_average(&rs, f, c, &spec()).unwrap();
        let mc_v = mc_orbit_average(&rs, f, c, 200_000, 11);
        assert!(
            (quad_v - mc_v).abs() < 5e-3,
            "quad {quad_v} vs mc {mc_v}"
        );
    }

    #[test]
    fn su2_quadrature_matches_monte_carlo() {
        let rs = RootSystem::new(GroupId::Su2);
        let c = [1.7, 0.0];
        let f = |x: V2| 1.0 / (1.0 + geom::dot(x, x));
        let quad_v = orbit_average(&rs, f, c, &spec()).unwrap();
        let mc_v = mc_orbit_average(&rs, f, c, 400_000, 7);
        assert!((quad_v - mc_v).abs() < 5e-3);
    }

    #[test]
    fn eigensolver_reproduces_known_spectrum() {
        // matrix with spectrum {2, -1, -1}: 3 P_z - I with z = e1
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        m[0][0] = Complex64::new(2.0, 0.0);
        m[1][1] = Complex64::new(-1.0, 0.0);
        m[2][2] = Complex64::new(-1.0, 0.0);
        let e = hermitian3_eigs_desc(&m);
        assert!((e[0] - 2.0).abs() < 1e-12);
        assert!((e[1] + 1.0).abs() < 1e-12);
        assert!((e[2] + 1.0).abs() < 1e-12);

        // a non-diagonal Hermitian check against the invariants
        let mut h = [[Complex64::new(0.0, 0.0); 3]; 3];
        h[0][0] = Complex64::new(0.3, 0.0);
        h[1][1] = Complex64::new(-0.5, 0.0);
        h[2][2] = Complex64::new(0.2, 0.0);
        h[0][1] = Complex64::new(0.4, 0.7);
        h[1][0] = h[0][1].conj();
        h[0][2] = Complex64::new(-0.2, 0.1);
        h[2][0] = h[0][2].conj();
        h[1][2] = Complex64::new(0.05, -0.3);
        h[2][1] = h[1][2].conj();
        let e = hermitian3_eigs_desc(&h);
        let tr: f64 = e.iter().sum();
        assert!((tr - 0.0).abs() < 1e-12);
        let tr2: f64 = e.iter().map(|x| x * x).sum();
        let frob: f64 = (0..3)
            .map(|i| (0..3).map(|k| h[i][k].norm_sqr()).sum::<f64>())
            .sum();
        assert!((tr2 - frob).abs() < 1e-12);
    }

    #[test]
    fn haar_columns_are_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = haar_unitary3(&mut rng);
        for i in 0..3 {
            for k in 0..3 {
                let mut s = Complex64::new(0.0, 0.0);
                for r in 0..3 {
                    s += u[r][i].conj() * u[r][k];
                }
                let expect = if i == k { 1.0 } else { 0.0 };
                assert!((s - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn monte_carlo_is_seed_deterministic() {
        let rs = RootSystem::new(GroupId::Su3);
        let c = rs.rho;
        let f = |x: V2| geom::norm(x);
        let a = mc_orbit_average(&rs, f, c, 10_000, 42);
        let b = mc_orbit_average(&rs, f, c, 10_000, 42);
        assert_eq!(a, b);
    }
}
