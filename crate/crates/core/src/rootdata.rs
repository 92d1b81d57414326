//! Root systems, Weyl groups, and lattices for SU(2) and SU(3).
//!
//! Roots are realized in Euclidean coordinates normalized so every root has
//! squared length 2 (both groups are simply laced). With that normalization
//! integral weights pair integrally with roots, coroots coincide with roots,
//! and the unit lattice of the exponential map is 2*pi times the coroot
//! lattice. All measure and transform constants used elsewhere in the crate
//! are derived here at construction time: the alternating-limit constant of
//! the orbital integral is fixed by requiring total orbit mass one, and the
//! radial measure constant on the algebra is fixed by requiring that the
//! character-series and lattice-sum forms of the wrap agree.

use crate::error::Error;
use crate::geom::{self, M2, V2};
use crate::quad::{self, QuadSpec};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

const DEDUP_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupId {
    Su2,
    Su3,
}

impl GroupId {
    pub fn name(self) -> &'static str {
        match self {
            GroupId::Su2 => "su2",
            GroupId::Su3 => "su3",
        }
    }
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GroupId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "su2" | "a1" => Ok(GroupId::Su2),
            "su3" | "a2" => Ok(GroupId::Su3),
            other => Err(Error::UnsupportedGroup(other.to_string())),
        }
    }
}

/// A dominant integral weight, stored both as fundamental-weight labels and
/// as coordinates in the orthonormal torus basis.
#[derive(Clone, Debug, PartialEq)]
pub struct DominantWeight {
    pub labels: Vec<i64>,
    pub coords: V2,
}

impl DominantWeight {
    /// |lambda + rho| for the owning root system.
    pub fn shifted_norm(&self, rs: &RootSystem) -> f64 {
        geom::norm(geom::add(self.coords, rs.rho))
    }

    pub fn shifted(&self, rs: &RootSystem) -> V2 {
        geom::add(self.coords, rs.rho)
    }
}

/// Immutable table of root, Weyl, and lattice data plus the derived measure
/// constants. Safe to share across threads; every operation is pure.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub group: GroupId,
    /// Rank of the maximal torus.
    pub rank: usize,
    /// Dimension of the group.
    pub dim: usize,
    /// Number of positive roots.
    pub num_positive_roots: usize,
    pub simple_roots: Vec<V2>,
    pub positive_roots: Vec<V2>,
    /// Half the sum of the positive roots.
    pub rho: V2,
    /// The full Weyl group as orthogonal matrices, identity first.
    pub weyl_elements: Vec<M2>,
    /// Determinants of the Weyl elements.
    pub weyl_signs: Vec<f64>,
    /// Fundamental weights (dual basis to the simple coroots).
    pub fundamental_weights: Vec<V2>,
    /// Generators of the kernel of exp on the torus algebra.
    pub unit_lattice: Vec<V2>,

    /// Covolume of the unit lattice.
    pub covolume: f64,
    /// Product of pairings of rho with the positive roots.
    pub pi_rho: f64,
    /// Leading alternating-sum coefficient: sum_w det(w) <w xi, H>^k equals
    /// this constant times the root polynomials of xi and H.
    pub hc_limit: f64,
    /// i^k * hc_limit / k!, the denominator constant of the orbital integral.
    pub kappa: Complex64,
    /// Constant in the radial integration formula on the algebra.
    pub radial_const: f64,
    /// Constant relating Euclidean Lebesgue measure to the radial formula.
    pub euclid_fold_const: f64,
    /// Value at 0 of the transform of the unit-width Gaussian profile.
    pub gauss_ft_const: f64,
    /// Constant of the inverse transform in the radial picture.
    pub inverse_ft_const: f64,
}

impl RootSystem {
    pub fn new(group: GroupId) -> Self {
        let simple_roots: Vec<V2> = match group {
            GroupId::Su2 => vec![[2f64.sqrt(), 0.0]],
            GroupId::Su3 => vec![
                [2f64.sqrt(), 0.0],
                [-2f64.sqrt() / 2.0, 6f64.sqrt() / 2.0],
            ],
        };
        let rank = simple_roots.len();
        let positive_roots: Vec<V2> = match group {
            GroupId::Su2 => vec![simple_roots[0]],
            GroupId::Su3 => vec![
                simple_roots[0],
                simple_roots[1],
                geom::add(simple_roots[0], simple_roots[1]),
            ],
        };
        let k = positive_roots.len();
        let dim = rank + 2 * k;

        let mut rho = geom::ZERO;
        for alpha in &positive_roots {
            rho = geom::add(rho, geom::scale(*alpha, 0.5));
        }

        let weyl_elements = generate_weyl(&simple_roots, rank);
        let weyl_signs: Vec<f64> = weyl_elements
            .iter()
            .map(|w| {
                if rank == 1 {
                    w[0][0]
                } else {
                    geom::det(w)
                }
            })
            .collect();
        debug_assert_eq!(weyl_elements.len(), if rank == 1 { 2 } else { 6 });

        // Fundamental weights from the inverse Cartan matrix; coroots equal
        // roots in this normalization.
        let fundamental_weights: Vec<V2> = match group {
            GroupId::Su2 => vec![geom::scale(simple_roots[0], 0.5)],
            GroupId::Su3 => {
                let a1 = simple_roots[0];
                let a2 = simple_roots[1];
                vec![
                    geom::scale(geom::add(geom::scale(a1, 2.0), a2), 1.0 / 3.0),
                    geom::scale(geom::add(a1, geom::scale(a2, 2.0)), 1.0 / 3.0),
                ]
            }
        };

        let unit_lattice: Vec<V2> = simple_roots
            .iter()
            .map(|a| geom::scale(*a, 2.0 * PI))
            .collect();
        let covolume = match rank {
            1 => geom::norm(unit_lattice[0]),
            _ => (unit_lattice[0][0] * unit_lattice[1][1]
                - unit_lattice[0][1] * unit_lattice[1][0])
                .abs(),
        };

        let pi_rho = positive_roots.iter().map(|a| geom::dot(rho, *a)).product();

        let mut rs = RootSystem {
            group,
            rank,
            dim,
            num_positive_roots: k,
            simple_roots,
            positive_roots,
            rho,
            weyl_elements,
            weyl_signs,
            fundamental_weights,
            unit_lattice,
            covolume,
            pi_rho,
            hc_limit: 0.0,
            kappa: Complex64::new(0.0, 0.0),
            radial_const: 0.0,
            euclid_fold_const: 0.0,
            gauss_ft_const: 0.0,
            inverse_ft_const: 0.0,
        };
        rs.fix_constants();
        rs
    }

    pub fn from_name(name: &str) -> Result<Self, Error> {
        Ok(Self::new(name.parse::<GroupId>()?))
    }

    /// Fix the orbital-integral and measure constants at runtime instead of
    /// reading them from a table. `hc_limit` comes from evaluating the
    /// minimal-degree term of the alternating sum at a generic pair, and the
    /// radial constant follows from it together with the lattice covolume.
    fn fix_constants(&mut self) {
        let k = self.num_positive_roots;
        let xi0 = self.rho;
        let h0: V2 = if self.rank == 1 {
            [0.93, 0.0]
        } else {
            [0.93, 0.41]
        };
        let s = self.alternating_power_ratio(xi0, h0, k);
        if cfg!(debug_assertions) {
            let h1: V2 = if self.rank == 1 { [1.7, 0.0] } else { [1.31, 0.27] };
            let xi1 = geom::add(self.rho, geom::scale(self.fundamental_weights[0], 0.37));
            let s2 = self.alternating_power_ratio(xi1, h1, k);
            debug_assert!((s - s2).abs() < 1e-9 * s.abs().max(1.0));
        }
        self.hc_limit = s;
        let kfact: f64 = (1..=k).map(|i| i as f64).product();
        self.kappa = Complex64::i().powu(k as u32) * s / kfact;
        self.radial_const = s * self.pi_rho / (kfact * self.covolume);

        // Euclidean folding constant via the Gaussian integral identity.
        let mehta = self.gaussian_radial_moment();
        self.euclid_fold_const = (2.0 * PI).powf(self.dim as f64 / 2.0) / mehta;
        self.gauss_ft_const = self.radial_const * mehta;
        self.inverse_ft_const = self.euclid_fold_const * self.euclid_fold_const
            / ((2.0 * PI).powi(self.dim as i32) * self.radial_const);
    }

    fn alternating_power_ratio(&self, xi: V2, h: V2, k: usize) -> f64 {
        let num: f64 = self
            .weyl_elements
            .iter()
            .zip(&self.weyl_signs)
            .map(|(w, sign)| sign * geom::dot(geom::apply(w, xi), h).powi(k as i32))
            .sum();
        num / (self.root_poly(xi) * self.root_poly(h))
    }

    /// Integral over the positive chamber of the squared root polynomial
    /// against the unit Gaussian.
    fn gaussian_radial_moment(&self) -> f64 {
        let spec = QuadSpec {
            tol: 1e-12,
            ..QuadSpec::default()
        };
        let order = self.weyl_elements.len() as f64;
        if self.rank == 1 {
            let f = |h: f64| {
                let v = [h, 0.0];
                self.root_poly(v).powi(2) * (-h * h / 2.0).exp()
            };
            quad::integrate_1d(f, -14.0, 14.0, &spec).expect("moment quadrature") / order
        } else {
            let f = |x: f64, y: f64| {
                let v = [x, y];
                self.root_poly(v).powi(2) * (-(x * x + y * y) / 2.0).exp()
            };
            quad::integrate_2d(f, (-14.0, 14.0), (-14.0, 14.0), &spec)
                .expect("moment quadrature")
                / order
        }
    }

    /// Product of pairings with the positive roots.
    pub fn root_poly(&self, v: V2) -> f64 {
        self.positive_roots
            .iter()
            .map(|a| geom::dot(*a, v))
            .product()
    }

    /// True when v pairs nonnegatively with every positive root.
    pub fn is_dominant_coords(&self, v: V2) -> bool {
        self.positive_roots
            .iter()
            .all(|a| geom::dot(*a, v) >= -1e-9)
    }

    /// Fundamental-weight labels of a lattice vector (must be integral).
    pub fn labels_of(&self, v: V2) -> Vec<i64> {
        self.simple_roots
            .iter()
            .map(|a| geom::dot(*a, v).round() as i64)
            .collect()
    }

    pub fn weight_coords(&self, labels: &[i64]) -> V2 {
        let mut v = geom::ZERO;
        for (m, w) in labels.iter().zip(&self.fundamental_weights) {
            v = geom::add(v, geom::scale(*w, *m as f64));
        }
        v
    }

    /// Validated dominant integral weight from labels.
    pub fn dominant_weight(&self, labels: &[i64]) -> Result<DominantWeight, Error> {
        if labels.len() != self.rank || labels.iter().any(|&m| m < 0) {
            return Err(Error::NonDominantWeight(labels.to_vec()));
        }
        Ok(DominantWeight {
            labels: labels.to_vec(),
            coords: self.weight_coords(labels),
        })
    }

    /// Orbit of a vector under the full Weyl group, deduplicated.
    pub fn weyl_orbit(&self, v: V2) -> Vec<V2> {
        let mut orbit: Vec<V2> = Vec::with_capacity(self.weyl_elements.len());
        for w in &self.weyl_elements {
            let image = geom::apply(w, v);
            if !orbit.iter().any(|o| geom::vec_approx_eq(*o, image, DEDUP_TOL)) {
                orbit.push(image);
            }
        }
        orbit
    }

    /// Dimension of the irreducible representation with highest weight
    /// `labels`, by the product formula over positive roots.
    pub fn weyl_dimension(&self, labels: &[i64]) -> Result<u64, Error> {
        let w = self.dominant_weight(labels)?;
        Ok(self.weyl_dimension_of(&w))
    }

    pub fn weyl_dimension_of(&self, w: &DominantWeight) -> u64 {
        let shifted = w.shifted(self);
        let d: f64 = self
            .positive_roots
            .iter()
            .map(|a| geom::dot(shifted, *a) / geom::dot(self.rho, *a))
            .product();
        debug_assert!((d - d.round()).abs() < 1e-9, "dimension {d} not integral");
        d.round() as u64
    }

    /// All dominant integral weights with |lambda + rho| <= radius, sorted
    /// by that norm and then by label order.
    pub fn enumerate_dominant_weights(&self, radius: f64) -> Vec<DominantWeight> {
        let bound = ((radius * 1.5).ceil() as i64 + 2).max(0);
        let mut out: Vec<DominantWeight> = Vec::new();
        match self.rank {
            1 => {
                for m in 0..=bound {
                    let w = self.dominant_weight(&[m]).expect("labels nonneg");
                    if w.shifted_norm(self) <= radius + 1e-12 {
                        out.push(w);
                    }
                }
            }
            _ => {
                for a in 0..=bound {
                    for b in 0..=bound {
                        let w = self.dominant_weight(&[a, b]).expect("labels nonneg");
                        if w.shifted_norm(self) <= radius + 1e-12 {
                            out.push(w);
                        }
                    }
                }
            }
        }
        out.sort_by(|x, y| {
            let nx = x.shifted_norm(self);
            let ny = y.shifted_norm(self);
            if (nx - ny).abs() > DEDUP_TOL {
                nx.partial_cmp(&ny).unwrap()
            } else {
                x.labels.cmp(&y.labels)
            }
        });
        out
    }

    /// All unit-lattice points gamma with |center + gamma| <= radius,
    /// sorted by that norm and then lexicographically.
    pub fn enumerate_lattice(&self, center: V2, radius: f64) -> Vec<V2> {
        let reach = radius + geom::norm(center);
        let mut out: Vec<V2> = Vec::new();
        // Coefficient bounds from the dual basis of the unit lattice.
        let duals: Vec<V2> = self
            .fundamental_weights
            .iter()
            .map(|w| geom::scale(*w, 1.0 / (2.0 * PI)))
            .collect();
        let bounds: Vec<i64> = duals
            .iter()
            .map(|d| (reach * geom::norm(*d)).ceil() as i64 + 1)
            .collect();
        let push_if = |out: &mut Vec<V2>, gamma: V2| {
            if geom::norm(geom::add(center, gamma)) <= radius + 1e-12 {
                out.push(gamma);
            }
        };
        match self.rank {
            1 => {
                for n in -bounds[0]..=bounds[0] {
                    push_if(&mut out, geom::scale(self.unit_lattice[0], n as f64));
                }
            }
            _ => {
                for n1 in -bounds[0]..=bounds[0] {
                    for n2 in -bounds[1]..=bounds[1] {
                        let gamma = geom::add(
                            geom::scale(self.unit_lattice[0], n1 as f64),
                            geom::scale(self.unit_lattice[1], n2 as f64),
                        );
                        push_if(&mut out, gamma);
                    }
                }
            }
        }
        out.sort_by(|a, b| {
            let na = geom::norm(geom::add(center, *a));
            let nb = geom::norm(geom::add(center, *b));
            if (na - nb).abs() > DEDUP_TOL {
                na.partial_cmp(&nb).unwrap()
            } else {
                a.partial_cmp(b).unwrap()
            }
        });
        out
    }

    /// Coordinates in the diagonal matrix model of the defining
    /// representation: a vector in the torus dual maps to the (traceless)
    /// diagonal of the corresponding Hermitian matrix.
    pub fn to_eigen_triple(&self, v: V2) -> Vec<f64> {
        match self.rank {
            1 => {
                let s = 2f64.sqrt();
                vec![v[0] / s, -v[0] / s]
            }
            _ => {
                let u1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
                let u2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
                (0..3).map(|i| v[0] * u1[i] + v[1] * u2[i]).collect()
            }
        }
    }

    /// Inverse of [`Self::to_eigen_triple`] for traceless tuples.
    pub fn from_eigen_triple(&self, t: &[f64]) -> V2 {
        match self.rank {
            1 => [(t[0] - t[1]) / 2f64.sqrt(), 0.0],
            _ => {
                let u1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
                let u2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
                let x = (0..3).map(|i| t[i] * u1[i]).sum();
                let y = (0..3).map(|i| t[i] * u2[i]).sum();
                [x, y]
            }
        }
    }

    /// Dominant-chamber representative of the Weyl orbit: sorted eigenvalue
    /// tuples map into the closed positive chamber.
    pub fn dominant_rep(&self, v: V2) -> V2 {
        let mut t = self.to_eigen_triple(v);
        t.sort_by(|a, b| b.partial_cmp(a).unwrap());
        self.from_eigen_triple(&t)
    }

    pub fn tables(&self) -> RootTables {
        RootTables {
            group: self.group,
            rank: self.rank,
            dim: self.dim,
            num_positive_roots: self.num_positive_roots,
            positive_roots: trim(&self.positive_roots, self.rank),
            rho: self.rho[..self.rank].to_vec(),
            weyl_elements: self
                .weyl_elements
                .iter()
                .map(|m| {
                    (0..self.rank)
                        .map(|i| m[i][..self.rank].to_vec())
                        .collect()
                })
                .collect(),
            weyl_signs: self.weyl_signs.clone(),
            fundamental_weights: trim(&self.fundamental_weights, self.rank),
            unit_lattice: trim(&self.unit_lattice, self.rank),
        }
    }
}

fn trim(vs: &[V2], rank: usize) -> Vec<Vec<f64>> {
    vs.iter().map(|v| v[..rank].to_vec()).collect()
}

/// Serializable view of the group tables, used by golden-file tests and the
/// `groups` subcommand.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootTables {
    pub group: GroupId,
    pub rank: usize,
    pub dim: usize,
    pub num_positive_roots: usize,
    pub positive_roots: Vec<Vec<f64>>,
    pub rho: Vec<f64>,
    pub weyl_elements: Vec<Vec<Vec<f64>>>,
    pub weyl_signs: Vec<f64>,
    pub fundamental_weights: Vec<Vec<f64>>,
    pub unit_lattice: Vec<Vec<f64>>,
}

fn generate_weyl(simple_roots: &[V2], rank: usize) -> Vec<M2> {
    let mut gens: Vec<M2> = simple_roots.iter().map(|a| geom::reflection(*a)).collect();
    if rank == 1 {
        // Keep the unused coordinate fixed so matrices stay orthogonal.
        gens[0][1][1] = 1.0;
    }
    let mut group: Vec<M2> = vec![geom::IDENTITY];
    let mut queue: std::collections::VecDeque<M2> = std::collections::VecDeque::new();
    queue.push_back(geom::IDENTITY);
    while let Some(next) = queue.pop_front() {
        for g in &gens {
            let prod = geom::mat_mul(g, &next);
            if !group.iter().any(|m| geom::mat_approx_eq(m, &prod, 1e-10)) {
                group.push(prod);
                queue.push_back(prod);
            }
        }
    }
    group
}
