use super::{total_turning, turning_ok, BoundaryLocation, Frame, Violation};
use crate::projective::{HomLine, Point};
use crate::{HilbertError, Result};

/// Convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonDomain {
    vertices: Vec<Point>,
}

impl PolygonDomain {
    /// Wraps the vertex list without checking it; see [`super::ConvexDomain::validate`].
    pub fn from_vertices(vertices: Vec<Point>) -> Self {
        PolygonDomain { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edge(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn position(&self, loc: BoundaryLocation) -> Point {
        match loc {
            BoundaryLocation::Vertex(i) => self.vertices[i],
            BoundaryLocation::Edge { index, s } => {
                let (a, b) = self.edge(index);
                a.lerp(b, s)
            }
            BoundaryLocation::Piece { .. } => Point::new(f64::NAN, f64::NAN),
        }
    }

    /// Index of the vertex within `tol` of `p`, if any.
    pub fn vertex_near(&self, p: Point, tol: f64) -> Option<usize> {
        self.vertices.iter().position(|v| v.dist(p) <= tol)
    }

    pub(super) fn validate(&self) -> Vec<Violation> {
        let v = &self.vertices;
        let n = v.len();
        let mut out = Vec::new();
        if n < 3 {
            out.push(Violation::new(
                "vertices",
                "polygon needs at least 3 vertices",
            ));
            return out;
        }
        for (i, p) in v.iter().enumerate() {
            if !p.is_finite() {
                out.push(Violation::new(format!("index {i}"), "non-finite vertex"));
            }
            if v[(i + 1) % n] == *p {
                out.push(Violation::new(
                    format!("index {i}"),
                    format!("repeated vertex at index {i}"),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        let dirs: Vec<Point> = (0..n).map(|i| v[(i + 1) % n] - v[i]).collect();
        for i in 0..n {
            let prev = dirs[(i + n - 1) % n];
            if prev.cross(dirs[i]) <= 0.0 {
                out.push(Violation::new(
                    format!("index {i}"),
                    format!("non-convex at index {i}"),
                ));
            }
        }
        if out.is_empty() && !turning_ok(total_turning(&dirs)) {
            out.push(Violation::new(
                "vertices",
                "vertex sequence winds more than once",
            ));
        }
        out
    }

    pub(super) fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let (a, b) = self.edge(i);
            let e = b - a;
            let d = e.cross(p - a) / e.norm();
            d > 8.0 * f64::EPSILON * (a.norm() + p.norm())
        })
    }

    /// Edges passing through the frame anchor, with the anchor's parameter on each.
    fn anchored_edges(&self, frame: &Frame) -> Vec<(usize, f64)> {
        let n = self.vertices.len();
        match frame.anchor {
            Some(BoundaryLocation::Edge { index, s }) if s > 0.0 && s < 1.0 => vec![(index, s)],
            Some(BoundaryLocation::Edge { index, s }) if s <= 0.0 => {
                vec![((index + n - 1) % n, 1.0), (index, 0.0)]
            }
            Some(BoundaryLocation::Edge { index, .. }) => {
                vec![(index, 1.0), ((index + 1) % n, 0.0)]
            }
            Some(BoundaryLocation::Vertex(k)) => vec![((k + n - 1) % n, 1.0), (k, 0.0)],
            _ => Vec::new(),
        }
    }

    pub(super) fn chord_rel(
        &self,
        frame: &Frame,
        line: &HomLine,
    ) -> Result<[(Point, BoundaryLocation); 2]> {
        let n = self.vertices.len();
        let anchored = self.anchored_edges(frame);
        // vertex coordinates in the frame; vertices on an anchored edge are rebuilt from
        // the edge direction so that the edge passes exactly through the origin
        let mut w: Vec<Point> = self.vertices.iter().map(|v| *v - frame.origin).collect();
        for &(j, s) in &anchored {
            let (a, b) = self.edge(j);
            let e = b - a;
            w[j] = e * (-s);
            w[(j + 1) % n] = e * (1.0 - s);
        }
        let r: Vec<f64> = w.iter().map(|p| line.eval(*p)).collect();
        if !(r.iter().any(|v| *v > 0.0) && r.iter().any(|v| *v < 0.0)) {
            return Err(HilbertError::LineMissesDomain);
        }
        let dir = line.direction();
        let mut hits: Vec<(Point, BoundaryLocation)> = Vec::with_capacity(4);
        for j in 0..n {
            let k = (j + 1) % n;
            if r[j] == 0.0 {
                hits.push((w[j], BoundaryLocation::Vertex(j)));
                continue;
            }
            if r[k] == 0.0 || r[j].signum() == r[k].signum() {
                continue;
            }
            if let Some(&(_, s)) = anchored.iter().find(|(idx, _)| *idx == j) {
                let (a, b) = self.edge(j);
                let e = b - a;
                let ne = line.normal().dot(e);
                let (_, _, c) = line.coefficients();
                let lam = (-c / ne).clamp(-s, 1.0 - s);
                hits.push((
                    e * lam,
                    BoundaryLocation::Edge {
                        index: j,
                        s: s + lam,
                    },
                ));
            } else {
                let t = r[j] / (r[j] - r[k]);
                hits.push((
                    w[j].lerp(w[k], t),
                    BoundaryLocation::Edge { index: j, s: t },
                ));
            }
        }
        let key = |p: &Point| p.dot(dir);
        let lo = hits
            .iter()
            .min_by(|a, b| key(&a.0).total_cmp(&key(&b.0)))
            .copied();
        let hi = hits
            .iter()
            .max_by(|a, b| key(&a.0).total_cmp(&key(&b.0)))
            .copied();
        match (lo, hi) {
            (Some(a), Some(b)) if key(&b.0) > key(&a.0) => Ok([a, b]),
            _ => Err(HilbertError::LineMissesDomain),
        }
    }
}
