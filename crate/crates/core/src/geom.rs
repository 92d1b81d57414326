//! Small fixed-size vector/matrix helpers for the Cartan subalgebra.
//!
//! Ranks here are 1 or 2, so every vector lives in `[f64; 2]` (rank-1 data
//! keeps a zero second coordinate) and Weyl elements are 2x2 orthogonal
//! matrices. The inner product is the Euclidean one of the chosen root
//! realization, which identifies the torus algebra with its dual.

pub type V2 = [f64; 2];
pub type M2 = [[f64; 2]; 2];

pub const ZERO: V2 = [0.0, 0.0];

#[inline]
pub fn dot(a: V2, b: V2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn add(a: V2, b: V2) -> V2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn sub(a: V2, b: V2) -> V2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn scale(a: V2, s: f64) -> V2 {
    [a[0] * s, a[1] * s]
}

#[inline]
pub fn norm(a: V2) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn apply(m: &M2, v: V2) -> V2 {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

pub fn mat_mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

#[inline]
pub fn det(m: &M2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

pub const IDENTITY: M2 = [[1.0, 0.0], [0.0, 1.0]];

pub fn mat_approx_eq(a: &M2, b: &M2, tol: f64) -> bool {
    (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).abs() <= tol))
}

pub fn vec_approx_eq(a: V2, b: V2, tol: f64) -> bool {
    (a[0] - b[0]).abs() <= tol && (a[1] - b[1]).abs() <= tol
}

/// Householder reflection through the hyperplane orthogonal to `alpha`.
pub fn reflection(alpha: V2) -> M2 {
    let n2 = dot(alpha, alpha);
    let mut m = IDENTITY;
    for i in 0..2 {
        for j in 0..2 {
            m[i][j] -= 2.0 * alpha[i] * alpha[j] / n2;
        }
    }
    m
}
