//! Points, lines, cross ratios and projective maps of the real projective plane.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{HilbertError, Result};

/// Tolerance on unit-normalized triple products below which points count as collinear.
pub const COLLINEAR_TOL: f64 = 1e-12;
/// Homogeneous weight below which a point is treated as lying at infinity.
pub const VANISHING_TOL: f64 = 1e-14;

/// A point of the Euclidean plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the planar cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, s: f64) -> Point {
        Point::new((1.0 - s) * self.x + s * o.x, (1.0 - s) * self.y + s * o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// The line `a x + b y + c = 0`, stored with `a² + b² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HomLine {
    a: f64,
    b: f64,
    c: f64,
}

impl HomLine {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let n = a.hypot(b);
        if !(n > 0.0 && n.is_finite() && c.is_finite()) {
            return Err(HilbertError::DegenerateConfiguration(
                "line needs (a, b) != (0, 0)".into(),
            ));
        }
        Ok(HomLine {
            a: a / n,
            b: b / n,
            c: c / n,
        })
    }

    /// Line through `p` with direction `d`.
    pub fn through(p: Point, d: Point) -> Result<Self> {
        HomLine::new(-d.y, d.x, d.y * p.x - d.x * p.y)
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// Signed Euclidean distance of `p` from the line.
    pub fn eval(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    /// Unit normal `(a, b)`.
    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    /// Unit direction; the normal is its clockwise quarter turn.
    pub fn direction(&self) -> Point {
        Point::new(self.b, -self.a)
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.eval(p).abs() <= tol
    }

    /// Same line expressed in coordinates centred at `origin`.
    pub fn translated(&self, origin: Point) -> HomLine {
        HomLine {
            a: self.a,
            b: self.b,
            c: self.eval(origin),
        }
    }

    pub fn is_parallel_to(&self, other: &HomLine, tol: f64) -> bool {
        self.normal().cross(other.normal()).abs() <= tol
    }
}

/// Line through two distinct points.
pub fn join(p1: Point, p2: Point) -> Result<HomLine> {
    let d = p2 - p1;
    if d.norm() == 0.0 {
        return Err(HilbertError::DegenerateConfiguration(
            "join of coincident points".into(),
        ));
    }
    HomLine::through(p1, d)
}

/// Meet of two lines, `None` when they are parallel.
pub fn intersect(l1: &HomLine, l2: &HomLine) -> Option<Point> {
    let w = l1.a * l2.b - l2.a * l1.b;
    if w.abs() < VANISHING_TOL {
        return None;
    }
    let x = l1.b * l2.c - l2.b * l1.c;
    let y = l2.a * l1.c - l1.a * l2.c;
    Some(Point::new(x / w, y / w))
}

/// Four collinear points in the order `p, q, q′, p′`; along the line they sit as `p′, p, q, q′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollinearQuad {
    pub p: Point,
    pub q: Point,
    pub qp: Point,
    pub pp: Point,
}

impl CollinearQuad {
    pub fn new(p: Point, q: Point, qp: Point, pp: Point) -> Result<Self> {
        let (a, b) = (pp, qp);
        let d = b - a;
        let len = d.norm();
        if len == 0.0 {
            return Err(HilbertError::DegenerateConfiguration(
                "quad endpoints coincide".into(),
            ));
        }
        for x in [p, q] {
            if (d.cross(x - a) / len).abs() > COLLINEAR_TOL * len.max(1.0) {
                return Err(HilbertError::DegenerateConfiguration(
                    "quad points are not collinear".into(),
                ));
            }
        }
        Ok(CollinearQuad { p, q, qp, pp })
    }
}

/// `(|p′−q|·|q′−p|) / (|p′−p|·|q′−q|)`.
pub fn cross_ratio(quad: &CollinearQuad) -> Result<f64> {
    let CollinearQuad { p, q, qp, pp } = *quad;
    let den_p = pp.dist(p);
    let den_q = qp.dist(q);
    if den_p == 0.0 || den_q == 0.0 {
        return Err(HilbertError::PointOnBoundary);
    }
    Ok((pp.dist(q) * qp.dist(p)) / (den_p * den_q))
}

type Mat3 = [[f64; 3]; 3];

fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn adjugate(m: &Mat3) -> Mat3 {
    let c =
        |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

fn matmul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut r = [[0.0; 3]; 3];
    for (i, row) in r.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    r
}

/// Invertible 3×3 map on homogeneous coordinates `(x : y : 1)`, scaled so its
/// largest-magnitude entry equals 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveMap {
    m: Mat3,
}

impl ProjectiveMap {
    pub fn identity() -> Self {
        ProjectiveMap {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    pub fn from_matrix(m: Mat3) -> Result<Self> {
        let big =
            m.iter()
                .flatten()
                .copied()
                .fold(0.0_f64, |acc, v| if v.abs() > acc.abs() { v } else { acc });
        if !(big.abs() > 0.0) || m.iter().flatten().any(|v| !v.is_finite()) {
            return Err(HilbertError::DegenerateConfiguration(
                "zero or non-finite matrix".into(),
            ));
        }
        let mut n = m;
        n.iter_mut().flatten().for_each(|v| *v /= big);
        if det3(&n).abs() < 1e-14 {
            return Err(HilbertError::DegenerateConfiguration(
                "singular matrix".into(),
            ));
        }
        Ok(ProjectiveMap { m: n })
    }

    /// `x ↦ A x + t`.
    pub fn affine(a: [[f64; 2]; 2], t: Point) -> Result<Self> {
        Self::from_matrix([
            [a[0][0], a[0][1], t.x],
            [a[1][0], a[1][1], t.y],
            [0.0, 0.0, 1.0],
        ])
    }

    pub fn matrix(&self) -> Mat3 {
        self.m
    }

    pub fn inverse(&self) -> Self {
        Self::from_matrix(adjugate(&self.m)).expect("inverse of an invertible map")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ProjectiveMap) -> Self {
        Self::from_matrix(matmul(&self.m, &other.m)).expect("product of invertible maps")
    }

    pub fn apply_homogeneous(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.m;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    /// Homogeneous weight of the image of `p`; zero on the vanishing line.
    pub fn weight(&self, p: Point) -> f64 {
        self.m[2][0] * p.x + self.m[2][1] * p.y + self.m[2][2]
    }

    pub fn apply(&self, p: Point) -> Result<Point> {
        let [x, y, w] = self.apply_homogeneous([p.x, p.y, 1.0]);
        if w.abs() < VANISHING_TOL {
            return Err(HilbertError::VanishingLine);
        }
        Ok(Point::new(x / w, y / w))
    }

    /// Image of a line: points satisfying `l` map to points satisfying the result.
    pub fn apply_line(&self, l: &HomLine) -> Result<HomLine> {
        let inv = adjugate(&self.m);
        let (a, b, c) = l.coefficients();
        HomLine::new(
            a * inv[0][0] + b * inv[1][0] + c * inv[2][0],
            a * inv[0][1] + b * inv[1][1] + c * inv[2][1],
            a * inv[0][2] + b * inv[1][2] + c * inv[2][2],
        )
    }

    /// Image of a curve point together with its first and second derivatives.
    pub fn apply_jet(&self, p: Point, d1: Point, d2: Point) -> Result<(Point, Point, Point)> {
        let [x, y, w] = self.apply_homogeneous([p.x, p.y, 1.0]);
        if w.abs() < VANISHING_TOL {
            return Err(HilbertError::VanishingLine);
        }
        let [x1, y1, w1] = self.apply_homogeneous([d1.x, d1.y, 0.0]);
        let [x2, y2, w2] = self.apply_homogeneous([d2.x, d2.y, 0.0]);
        let q = Point::new(x / w, y / w);
        // q = X/W, q' = (X' − q W')/W, q'' = (X'' − 2 q' W' − q W'')/W
        let q1 = Point::new((x1 - q.x * w1) / w, (y1 - q.y * w1) / w);
        let q2 = Point::new(
            (x2 - 2.0 * q1.x * w1 - q.x * w2) / w,
            (y2 - 2.0 * q1.y * w1 - q.y * w2) / w,
        );
        Ok((q, q1, q2))
    }
}

fn check_general_position(pts: &[Point; 4]) -> Result<()> {
    for i in 0..4 {
        for j in (i + 1)..4 {
            for k in (j + 1)..4 {
                let (u, v) = (pts[j] - pts[i], pts[k] - pts[i]);
                let (nu, nv) = (u.norm(), v.norm());
                if nu == 0.0 || nv == 0.0 || (u.cross(v) / (nu * nv)).abs() < COLLINEAR_TOL {
                    return Err(HilbertError::DegenerateConfiguration(format!(
                        "points {i}, {j}, {k} are collinear"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Matrix sending the standard frame `e1, e2, e3, e1+e2+e3` to `pts`.
fn frame_matrix(pts: &[Point; 4]) -> Mat3 {
    let cols: Mat3 = [
        [pts[0].x, pts[1].x, pts[2].x],
        [pts[0].y, pts[1].y, pts[2].y],
        [1.0, 1.0, 1.0],
    ];
    let adj = adjugate(&cols);
    let det = det3(&cols);
    let rhs = [pts[3].x, pts[3].y, 1.0];
    let lam: Vec<f64> = (0..3)
        .map(|i| (0..3).map(|k| adj[i][k] * rhs[k]).sum::<f64>() / det)
        .collect();
    let mut m = cols;
    for row in m.iter_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            *v *= lam[j];
        }
    }
    m
}

/// The unique projective map with `src[i] ↦ dst[i]`.
pub fn map_from_correspondence(src: [Point; 4], dst: [Point; 4]) -> Result<ProjectiveMap> {
    check_general_position(&src)?;
    check_general_position(&dst)?;
    let a = frame_matrix(&src);
    let b = frame_matrix(&dst);
    ProjectiveMap::from_matrix(matmul(&b, &adjugate(&a)))
}
