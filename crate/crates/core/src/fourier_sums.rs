//! Weyl-invariant polyhedral partial sums of central Fourier series, their
//! Euclidean counterparts, and convergence experiments.
//!
//! A region is a convex polytope in the torus dual, Weyl-invariant as a
//! halfspace set and containing the origin. Dilating it sweeps out finitely
//! many distinct sets of dominant weights below a cutoff; the partial-sum
//! operator for the N-th set is the spectral projection onto those weights.
//! Membership is tested on the weight itself; the shifted-weight variant
//! used by transfer arguments is reported as a discrepancy set per region
//! rather than silently merged.

use crate::error::Error;
use crate::exec;
use crate::geom::{self, V2};
use crate::multiplier::MultiplierSymbol;
use crate::norms::{lp_norm_on_central, parseval_l2_norm, Lp};
use crate::quad::{self, QuadSpec};
use crate::rootdata::{DominantWeight, RootSystem};
use crate::special;
use crate::wrap::{euclid_fourier, AdInvariantFunction, CentralFunction};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A closed convex polytope with the origin interior, Weyl-invariant as a
/// set, stored as unit outward normals with positive offsets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Polyhedron {
    pub name: String,
    /// (unit outward normal, offset): x is inside t*R iff <u, x> <= t*b.
    pub halfspaces: Vec<(V2, f64)>,
}

impl Polyhedron {
    pub fn new(name: impl Into<String>, halfspaces: Vec<(V2, f64)>) -> Result<Self, Error> {
        let p = Polyhedron {
            name: name.into(),
            halfspaces,
        };
        if p.halfspaces.is_empty() {
            return Err(Error::InvalidPolyhedron("no halfspaces".into()));
        }
        for (u, b) in &p.halfspaces {
            if geom::norm(*u) < 1e-12 {
                return Err(Error::InvalidPolyhedron("zero normal".into()));
            }
            if *b <= 0.0 {
                return Err(Error::InvalidPolyhedron(
                    "origin must be interior (offsets positive)".into(),
                ));
            }
        }
        Ok(p)
    }

    /// Check that the halfspace set is carried to itself by every Weyl
    /// element.
    pub fn validate_weyl_invariance(&self, rs: &RootSystem) -> Result<(), Error> {
        for w in &rs.weyl_elements {
            for (u, b) in &self.halfspaces {
                let wu = geom::apply(w, *u);
                let found = self.halfspaces.iter().any(|(v, c)| {
                    geom::vec_approx_eq(*v, wu, 1e-9) && (c - b).abs() < 1e-9
                });
                if !found {
                    return Err(Error::InvalidPolyhedron(format!(
                        "halfspace set is not Weyl-invariant (image of normal {u:?} missing)"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Membership in the t-dilate.
    pub fn contains(&self, x: V2, t: f64) -> bool {
        self.halfspaces
            .iter()
            .all(|(u, b)| geom::dot(*u, x) <= t * b + 1e-12)
    }

    /// Smallest dilation parameter whose dilate contains x.
    pub fn entry_time(&self, x: V2) -> f64 {
        self.halfspaces
            .iter()
            .map(|(u, b)| geom::dot(*u, x) / b)
            .fold(0.0f64, f64::max)
    }

    /// Radial extent of the unit dilate in a given direction.
    pub fn boundary_radius(&self, dir: V2) -> f64 {
        self.halfspaces
            .iter()
            .filter_map(|(u, b)| {
                let d = geom::dot(*u, dir);
                if d > 1e-12 {
                    Some(b / d)
                } else {
                    None
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Symmetric interval for the rank-one case.
    pub fn interval(half_length: f64) -> Result<Self, Error> {
        Self::new(
            format!("interval({half_length})"),
            vec![([1.0, 0.0], half_length), ([-1.0, 0.0], half_length)],
        )
    }

    /// Convex hull of the Weyl orbit of a vector (plus its negative, to
    /// keep rank-one regions symmetric).
    pub fn orbit_hull(rs: &RootSystem, v: V2, name: impl Into<String>) -> Result<Self, Error> {
        if rs.rank == 1 {
            return Self::interval(geom::norm(v));
        }
        let mut pts = rs.weyl_orbit(v);
        for w in rs.weyl_orbit(geom::scale(v, -1.0)) {
            pts.push(w);
        }
        let halfspaces = hull_halfspaces(&pts)?;
        let p = Polyhedron {
            name: name.into(),
            halfspaces,
        };
        p.validate_weyl_invariance(rs)?;
        Ok(p)
    }

    /// Weyl-invariant polygonal stand-in for the ball of radius r.
    pub fn ball_polygon(rs: &RootSystem, r: f64) -> Result<Self, Error> {
        if rs.rank == 1 {
            return Self::interval(r);
        }
        let mut pts: Vec<V2> = Vec::new();
        for i in 0..4 {
            let phi = std::f64::consts::PI / 3.0 * (i as f64 / 4.0);
            let v = [r * phi.cos(), r * phi.sin()];
            for w in rs.weyl_orbit(v) {
                pts.push(w);
            }
            for w in rs.weyl_orbit(geom::scale(v, -1.0)) {
                pts.push(w);
            }
        }
        let halfspaces = hull_halfspaces(&pts)?;
        let p = Polyhedron {
            name: format!("ball24({r})"),
            halfspaces,
        };
        p.validate_weyl_invariance(rs)?;
        Ok(p)
    }

    /// Orbit hull of rho: a hexagon for the rank-two group.
    pub fn hexagon(rs: &RootSystem, scale: f64) -> Result<Self, Error> {
        Self::orbit_hull(rs, geom::scale(rs.rho, scale), format!("hexagon({scale})"))
    }

    /// Indicator of the t-dilate as a multiplier symbol.
    pub fn indicator_symbol(&self, t: f64) -> MultiplierSymbol {
        let poly = self.clone();
        MultiplierSymbol::new(format!("{}@{t}", self.name), move |xi| {
            if poly.contains(xi, t) {
                1.0
            } else {
                0.0
            }
        })
    }
}

/// Outward halfspaces of the convex hull of a 2-d point set.
fn hull_halfspaces(pts: &[V2]) -> Result<Vec<(V2, f64)>, Error> {
    let mut pts: Vec<V2> = pts.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| geom::vec_approx_eq(*a, *b, 1e-12));
    if pts.len() < 3 {
        return Err(Error::InvalidPolyhedron("hull needs three points".into()));
    }
    // Andrew monotone chain
    let cross = |o: V2, a: V2, b: V2| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut hull: Vec<V2> = Vec::new();
    for &p in pts.iter().chain(pts.iter().rev()) {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 1e-14 {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    // split point duplicated at the turn of the chain
    let half = hull.len() / 2;
    let mut ccw: Vec<V2> = hull;
    ccw.dedup_by(|a, b| geom::vec_approx_eq(*a, *b, 1e-12));
    let _ = half;
    let mut out = Vec::with_capacity(ccw.len());
    for i in 0..ccw.len() {
        let p = ccw[i];
        let q = ccw[(i + 1) % ccw.len()];
        let d = geom::sub(q, p);
        let n = [d[1], -d[0]];
        let len = geom::norm(n);
        if len < 1e-12 {
            continue;
        }
        let n = geom::scale(n, 1.0 / len);
        let b = geom::dot(n, p);
        if b <= 0.0 {
            return Err(Error::InvalidPolyhedron(
                "hull does not contain the origin".into(),
            ));
        }
        out.push((n, b));
    }
    Ok(out)
}

/// The distinct dominant-weight sets swept out by dilating a region, below
/// an enumeration cutoff on |lambda|.
#[derive(Clone, Debug)]
pub struct RegionFamily {
    pub base: Polyhedron,
    /// Dilation parameters at which membership changes, ascending.
    pub breakpoints: Vec<f64>,
    /// Cumulative member labels per breakpoint.
    pub sets: Vec<Vec<Vec<i64>>>,
    /// All enumerated weights, for discrepancy reports.
    pub weights: Vec<DominantWeight>,
}

impl RegionFamily {
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    pub fn member(&self, n: usize, labels: &[i64]) -> bool {
        self.sets[n].iter().any(|l| l == labels)
    }
}

/// Enumerate the distinct dilates: for every dominant weight with
/// |lambda| <= cutoff, its entry time; breakpoints are the distinct entry
/// times in ascending order.
pub fn dilate_enumerate(
    rs: &RootSystem,
    base: &Polyhedron,
    cutoff: f64,
) -> Result<RegionFamily, Error> {
    base.validate_weyl_invariance(rs)?;
    let weights: Vec<DominantWeight> = rs
        .enumerate_dominant_weights(cutoff + geom::norm(rs.rho))
        .into_iter()
        .filter(|w| geom::norm(w.coords) <= cutoff + 1e-12)
        .collect();
    let mut times: Vec<f64> = weights.iter().map(|w| base.entry_time(w.coords)).collect();
    let mut breakpoints = times.clone();
    breakpoints.sort_by(|a, b| a.partial_cmp(b).unwrap());
    breakpoints.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let sets: Vec<Vec<Vec<i64>>> = breakpoints
        .iter()
        .map(|t| {
            weights
                .iter()
                .zip(&times)
                .filter(|(_, tm)| **tm <= t + 1e-12)
                .map(|(w, _)| w.labels.clone())
                .collect()
        })
        .collect();
    times.clear();
    // strictly increasing by construction of distinct breakpoints
    debug_assert!(sets.windows(2).all(|p| p[0].len() < p[1].len()));
    Ok(RegionFamily {
        base: base.clone(),
        breakpoints,
        sets,
        weights,
    })
}

/// Spectral projection onto the N-th region: coefficients retained inside,
/// zeroed outside.
pub fn partial_sum(
    family: &RegionFamily,
    n: usize,
    f: &CentralFunction,
) -> Result<CentralFunction, Error> {
    if n >= family.len() {
        return Err(Error::RegionIndexOutOfRange {
            index: n,
            len: family.len(),
        });
    }
    Ok(f.map_coefficients(|e| {
        if family.member(n, &e.labels) {
            e.value()
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Weights whose membership flips between the plain region test and the
/// shifted-weight test against the same dilate.
pub fn shift_discrepancy(rs: &RootSystem, family: &RegionFamily, n: usize) -> Vec<Vec<i64>> {
    let t = family.breakpoints[n];
    family
        .weights
        .iter()
        .filter(|w| {
            let plain = family.base.contains(w.coords, t);
            let shifted = family.base.contains(w.shifted(rs), t);
            plain != shifted
        })
        .map(|w| w.labels.clone())
        .collect()
}

/// Truncated inverse transform over the dilated region: the Euclidean
/// counterpart of the partial-sum operator.
pub fn euclid_partial(
    rs: &RootSystem,
    region: &Polyhedron,
    t: f64,
    mu: &AdInvariantFunction,
    points: &[V2],
    spec: &QuadSpec,
) -> Result<Vec<Complex64>, Error> {
    let mut out = vec![Complex64::new(0.0, 0.0); points.len()];
    let mut regular: Vec<(usize, V2)> = Vec::new();
    for (i, h) in points.iter().enumerate() {
        if rs.root_poly(*h).abs() < special::SINGULAR_EPS {
            let step = if rs.num_positive_roots == 1 { 1e-6 } else { 1e-3 };
            let dir = geom::scale(rs.rho, step / geom::norm(rs.rho));
            let pair = euclid_partial(
                rs,
                region,
                t,
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

    let kappa_conj = rs.kappa.conj();
    let order = rs.weyl_elements.len() as f64;
    let value_at = |nodes: &[(V2, f64)], h: V2| -> Result<Complex64, Error> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (xi, w) in nodes {
            let mh = euclid_fourier(rs, mu, *xi, spec)?;
            acc += mh * (rs.root_poly(*xi) * w) * special::alternating_sum(rs, *xi, h).conj();
        }
        Ok(acc * rs.inverse_ft_const / (order * kappa_conj * rs.root_poly(h)))
    };

    let mut panels = spec.panels.max(1);
    let mut prev: Option<Vec<Complex64>> = None;
    for _ in 0..=spec.max_refine {
        let nodes = region_grid(rs, region, t, panels, spec.nodes);
        let vals_r: Vec<Result<Complex64, Error>> =
            exec::par_map(&regular, |(_, h)| value_at(&nodes, *h));
        let mut vals = Vec::with_capacity(vals_r.len());
        for v in vals_r {
            vals.push(v?);
        }
        if let Some(p) = &prev {
            let delta = vals
                .iter()
                .zip(p)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            let scale = vals.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
            if delta <= spec.tol * scale {
                for ((i, _), v) in regular.into_iter().zip(vals) {
                    out[i] = v;
                }
                return Ok(out);
            }
        }
        prev = Some(vals);
        panels *= 2;
    }
    Err(Error::QuadratureNoConverge {
        coarse: f64::NAN,
        fine: f64::NAN,
    })
}

/// Quadrature nodes over the t-dilate of a region (exact boundary).
fn region_grid(
    rs: &RootSystem,
    region: &Polyhedron,
    t: f64,
    panels: usize,
    nodes: usize,
) -> Vec<(V2, f64)> {
    let (xs, ws) = quad::gauss_legendre(nodes);
    if rs.rank == 1 {
        let rmax = t * region.boundary_radius([1.0, 0.0]);
        let rmin = -t * region.boundary_radius([-1.0, 0.0]);
        let h = (rmax - rmin) / panels as f64;
        let mut out = Vec::with_capacity(panels * nodes);
        for p in 0..panels {
            let mid = rmin + (p as f64 + 0.5) * h;
            for (x, w) in xs.iter().zip(&ws) {
                out.push(([mid + 0.5 * h * x, 0.0], 0.5 * h * w));
            }
        }
        out
    } else {
        let angular = (8 * panels).max(32);
        let mut out = Vec::new();
        for a in 0..angular {
            let phi = 2.0 * std::f64::consts::PI * a as f64 / angular as f64;
            let dir = [phi.cos(), phi.sin()];
            let rmax = t * region.boundary_radius(dir);
            let dphi = 2.0 * std::f64::consts::PI / angular as f64;
            let h = rmax / panels as f64;
            for p in 0..panels {
                let mid = (p as f64 + 0.5) * h;
                for (x, w) in xs.iter().zip(&ws) {
                    let r = mid + 0.5 * h * x;
                    out.push(([r * dir[0], r * dir[1]], r * dphi * 0.5 * h * w));
                }
            }
        }
        out
    }
}

/// Central function with polynomially decaying coefficients, the standard
/// slow-convergence target.
pub fn polynomial_decay_target(rs: &RootSystem, s: f64, cutoff: f64) -> CentralFunction {
    let pairs = rs
        .enumerate_dominant_weights(cutoff)
        .into_iter()
        .map(|w| {
            let c = (1.0 + w.shifted_norm(rs)).powf(-s);
            (w, Complex64::new(c, 0.0))
        })
        .collect();
    CentralFunction::from_pairs(rs, pairs, cutoff)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvergencePoint {
    pub n: usize,
    pub t: f64,
    pub members: usize,
    /// (exponent label, error norm)
    pub errors: Vec<(String, f64)>,
}

/// Error curve of the partial sums against the full function for each
/// requested exponent.
pub fn convergence_experiment(
    rs: &RootSystem,
    family: &RegionFamily,
    target: &CentralFunction,
    ps: &[Lp],
    spec: &QuadSpec,
) -> Result<Vec<ConvergencePoint>, Error> {
    let mut out = Vec::with_capacity(family.len());
    for n in 0..family.len() {
        let snf = partial_sum(family, n, target)?;
        let diff = target.map_coefficients(|e| {
            if family.member(n, &e.labels) {
                Complex64::new(0.0, 0.0)
            } else {
                e.value()
            }
        });
        let mut errors = Vec::new();
        for p in ps {
            let v = match p {
                Lp::P(two) if (*two - 2.0).abs() < 1e-12 => parseval_l2_norm(rs, &diff),
                _ => lp_norm_on_central(rs, &diff, *p, spec)?,
            };
            errors.push((p.to_string(), v));
        }
        let _ = snf;
        out.push(ConvergencePoint {
            n,
            t: family.breakpoints[n],
            members: family.sets[n].len(),
            errors,
        });
    }
    Ok(out)
}
