//! Composite Gauss-Legendre quadrature with automatic panel refinement.
//!
//! All integrands in this crate are smooth away from Weyl walls, and the
//! integrands that touch walls carry polynomial factors that vanish there,
//! so composite Gauss-Legendre panels converge fast. Each driver doubles
//! the panel count until two successive passes agree to `tol` and reports
//! a diagnostic error (with both values) when they never do.

use crate::error::Error;
use crate::exec;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct QuadSpec {
    /// Panels per dimension for the first pass.
    pub panels: usize,
    /// Gauss-Legendre nodes per panel.
    pub nodes: usize,
    /// Relative agreement required between successive refinements.
    pub tol: f64,
    /// Number of panel doublings to attempt before giving up.
    pub max_refine: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        Self {
            panels: 8,
            nodes: 16,
            tol: 1e-10,
            max_refine: 7,
        }
    }
}

impl QuadSpec {
    pub fn with_panels(panels: usize) -> Self {
        Self {
            panels: panels.max(1),
            ..Self::default()
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }
}

/// Scalar types a quadrature rule can accumulate.
pub trait QuadValue:
    Copy + Send + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self>
{
    fn zero() -> Self;
    fn scale(self, s: f64) -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on
/// the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "need at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn pass_1d<V, F>(f: &F, a: f64, b: f64, panels: usize, xs: &[f64], ws: &[f64]) -> V
where
    V: QuadValue,
    F: Fn(f64) -> V + Sync,
{
    let h = (b - a) / panels as f64;
    let partials = exec::par_map_range(panels, |p| {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = V::zero();
        for (x, w) in xs.iter().zip(ws) {
            acc = acc + f(mid + half * x).scale(w * half);
        }
        acc
    });
    partials.into_iter().fold(V::zero(), |s, v| s + v)
}

/// Composite Gauss-Legendre on [a, b] with panel-doubling refinement.
pub fn integrate_1d<V, F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<V, Error>
where
    V: QuadValue,
    F: Fn(f64) -> V + Sync,
{
    let (xs, ws) = gauss_legendre(spec.nodes);
    let mut panels = spec.panels.max(1);
    let mut prev: Option<V> = None;
    for _ in 0..=spec.max_refine {
        let val = pass_1d(&f, a, b, panels, &xs, &ws);
        if let Some(p) = prev {
            if (val - p).magnitude() <= spec.tol * val.magnitude().max(1.0) {
                return Ok(val);
            }
        }
        prev = Some(val);
        panels *= 2;
    }
    let coarse = prev.map(|v| v.magnitude()).unwrap_or(f64::NAN);
    Err(Error::QuadratureNoConverge {
        coarse,
        fine: coarse,
    })
}

fn pass_2d<V, F>(
    f: &F,
    (ax, bx): (f64, f64),
    (ay, by): (f64, f64),
    panels: usize,
    xs: &[f64],
    ws: &[f64],
) -> V
where
    V: QuadValue,
    F: Fn(f64, f64) -> V + Sync,
{
    let hx = (bx - ax) / panels as f64;
    let hy = (by - ay) / panels as f64;
    let rows = exec::par_map_range(panels * panels, |cell| {
        let px = cell / panels;
        let py = cell % panels;
        let cx = ax + (px as f64 + 0.5) * hx;
        let cy = ay + (py as f64 + 0.5) * hy;
        let mut acc = V::zero();
        for (x, wx) in xs.iter().zip(ws) {
            let u = cx + 0.5 * hx * x;
            for (y, wy) in xs.iter().zip(ws) {
                let v = cy + 0.5 * hy * y;
                acc = acc + f(u, v).scale(wx * wy * 0.25 * hx * hy);
            }
        }
        acc
    });
    rows.into_iter().fold(V::zero(), |s, v| s + v)
}

/// Tensor-product composite Gauss-Legendre on a rectangle.
pub fn integrate_2d<V, F>(
    f: F,
    x_range: (f64, f64),
    y_range: (f64, f64),
    spec: &QuadSpec,
) -> Result<V, Error>
where
    V: QuadValue,
    F: Fn(f64, f64) -> V + Sync,
{
    let (xs, ws) = gauss_legendre(spec.nodes);
    let mut panels = spec.panels.max(1);
    let mut prev: Option<V> = None;
    for _ in 0..=spec.max_refine {
        let val = pass_2d(&f, x_range, y_range, panels, &xs, &ws);
        if let Some(p) = prev {
            if (val - p).magnitude() <= spec.tol * val.magnitude().max(1.0) {
                return Ok(val);
            }
        }
        prev = Some(val);
        panels *= 2;
    }
    let coarse = prev.map(|v| v.magnitude()).unwrap_or(f64::NAN);
    Err(Error::QuadratureNoConverge {
        coarse,
        fine: coarse,
    })
}

/// Uniform trapezoid rule over one period of a periodic integrand, with
/// doubling. Spectrally accurate for smooth periodic data.
pub fn integrate_periodic<V, F>(f: F, period: f64, spec: &QuadSpec) -> Result<V, Error>
where
    V: QuadValue,
    F: Fn(f64) -> V + Sync,
{
    let mut n = (spec.panels * spec.nodes).max(8);
    let mut prev: Option<V> = None;
    for _ in 0..=spec.max_refine {
        let h = period / n as f64;
        let partials = exec::par_map_range(n, |i| f(i as f64 * h).scale(h));
        let val = partials.into_iter().fold(V::zero(), |s, v| s + v);
        if let Some(p) = prev {
            if (val - p).magnitude() <= spec.tol * val.magnitude().max(1.0) {
                return Ok(val);
            }
        }
        prev = Some(val);
        n *= 2;
    }
    let coarse = prev.map(|v| v.magnitude()).unwrap_or(f64::NAN);
    Err(Error::QuadratureNoConverge {
        coarse,
        fine: coarse,
    })
}
