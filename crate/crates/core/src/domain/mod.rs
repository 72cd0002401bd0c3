//! Bounded convex planar domains: polygons, smooth closed curves and piecewise boundaries.

mod boundary;
mod curve;
mod polygon;
mod spec;

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

pub use curve::{ArcModel, Curve, Ellipse, GraphArc, Piece, Projected, Reversed, Segment};
pub use polygon::PolygonDomain;
pub use spec::{ArcSpec, DomainSpec, ModelSpec, PieceSpec};

use crate::projective::{HomLine, Point, ProjectiveMap};
use crate::{HilbertError, Result};

/// Where a boundary point sits on ∂Ω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryLocation {
    /// A polygon vertex.
    Vertex(usize),
    /// Polygon edge `index` (from vertex `index` to `index + 1`) at parameter `s ∈ [0, 1]`.
    Edge { index: usize, s: f64 },
    /// Curve piece `index` at parameter `s ∈ [0, 1]`.
    Piece { index: usize, s: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub point: Point,
    pub location: BoundaryLocation,
}

/// One failed invariant, with where it failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub location: String,
    pub message: String,
}

impl Violation {
    pub(crate) fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.message, self.location)
    }
}

/// Domain bounded by one closed C² curve.
#[derive(Debug, Clone)]
pub struct SmoothDomain {
    pieces: Vec<Piece>,
    pub curvature_positive_everywhere: bool,
}

impl SmoothDomain {
    pub fn curve(&self) -> &dyn Curve {
        self.pieces[0].curve()
    }
}

/// Domain bounded by a cycle of segments and C² arcs.
#[derive(Debug, Clone)]
pub struct PiecewiseDomain {
    pieces: Vec<Piece>,
}

impl PiecewiseDomain {
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }
}

#[derive(Debug, Clone)]
pub enum ConvexDomain {
    Polygon(PolygonDomain),
    Smooth(SmoothDomain),
    Piecewise(PiecewiseDomain),
}

fn reject_violations(d: ConvexDomain) -> Result<ConvexDomain> {
    let v = d.validate();
    if v.is_empty() {
        Ok(d)
    } else {
        Err(HilbertError::InvalidDomain(v))
    }
}

/// Coordinates relative to an origin, optionally anchored at a boundary point so that
/// geometry near that point keeps full relative precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    pub origin: Point,
    pub anchor: Option<BoundaryLocation>,
}

impl Frame {
    pub const ABSOLUTE: Frame = Frame {
        origin: Point::new(0.0, 0.0),
        anchor: None,
    };

    pub fn at(b: &BoundaryPoint) -> Frame {
        Frame {
            origin: b.point,
            anchor: Some(b.location),
        }
    }
}

impl ConvexDomain {
    /// Validated polygon from counterclockwise vertices.
    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        reject_violations(ConvexDomain::Polygon(PolygonDomain::from_vertices(
            vertices,
        )))
    }

    /// Axis-aligned ellipse.
    pub fn ellipse(center: Point, rx: f64, ry: f64) -> Result<Self> {
        if !(rx > 0.0 && ry > 0.0 && rx.is_finite() && ry.is_finite() && center.is_finite()) {
            return Err(HilbertError::ParameterRange(
                "ellipse semi-axes must be positive".into(),
            ));
        }
        reject_violations(ConvexDomain::Smooth(SmoothDomain {
            pieces: vec![Piece::Ellipse(Ellipse { center, rx, ry })],
            curvature_positive_everywhere: true,
        }))
    }

    /// `{ |x|³ < y < w³, |x| < w }`.
    pub fn cubic_graph(half_width: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(HilbertError::ParameterRange(
                "half_width must be positive".into(),
            ));
        }
        let w = half_width;
        let top = w * w * w;
        ConvexDomain::piecewise(vec![
            Piece::Graph(GraphArc::new(-w, w, ArcModel::Cubic { k: 1.0 })?),
            Piece::Segment(Segment {
                from: Point::new(w, top),
                to: Point::new(-w, top),
            }),
        ])
    }

    /// Validated piecewise boundary, listed counterclockwise.
    pub fn piecewise(pieces: Vec<Piece>) -> Result<Self> {
        reject_violations(ConvexDomain::Piecewise(PiecewiseDomain { pieces }))
    }

    /// Piecewise boundary without validation, for inspection of broken inputs.
    pub fn piecewise_unchecked(pieces: Vec<Piece>) -> Self {
        ConvexDomain::Piecewise(PiecewiseDomain { pieces })
    }

    pub fn from_spec(spec: &DomainSpec) -> Result<Self> {
        spec::build(spec)
    }

    pub fn to_spec(&self) -> Result<DomainSpec> {
        spec::describe(self)
    }

    pub(crate) fn pieces(&self) -> Option<&[Piece]> {
        match self {
            ConvexDomain::Polygon(_) => None,
            ConvexDomain::Smooth(s) => Some(&s.pieces),
            ConvexDomain::Piecewise(p) => Some(&p.pieces),
        }
    }

    pub fn as_polygon(&self) -> Option<&PolygonDomain> {
        match self {
            ConvexDomain::Polygon(p) => Some(p),
            _ => None,
        }
    }

    /// Boundary samples in counterclockwise order.
    pub fn boundary_samples(&self, per_piece: usize) -> Vec<Point> {
        match self {
            ConvexDomain::Polygon(p) => p.vertices().to_vec(),
            _ => {
                let pieces = self.pieces().expect("curve boundary");
                let m = per_piece.max(2);
                let mut out = Vec::with_capacity(pieces.len() * m);
                for piece in pieces {
                    for i in 0..m {
                        out.push(piece.curve().position(i as f64 / m as f64));
                    }
                }
                out
            }
        }
    }

    /// Largest coordinate magnitude on the boundary, at least 1.
    pub fn scale(&self) -> f64 {
        self.boundary_samples(64)
            .iter()
            .fold(1.0_f64, |m, p| m.max(p.x.abs()).max(p.y.abs()))
    }

    /// Every invariant violation found.
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            ConvexDomain::Polygon(p) => p.validate(),
            ConvexDomain::Smooth(s) => {
                let mut v = boundary::validate_pieces(&s.pieces);
                v.extend(validate_smooth_oracles(s));
                v
            }
            ConvexDomain::Piecewise(p) => boundary::validate_pieces(&p.pieces),
        }
    }

    /// Strict interior membership.
    pub fn contains(&self, p: Point) -> bool {
        if !p.is_finite() {
            return false;
        }
        match self {
            ConvexDomain::Polygon(poly) => poly.contains(p),
            _ => {
                // the chord from an interior point crosses the boundary transversally
                let c = self.interior_reference();
                let d = p - c;
                if d.norm() <= 8.0 * f64::EPSILON * c.norm().max(1.0) {
                    return true;
                }
                let Ok(line) = HomLine::through(c, d) else {
                    return false;
                };
                let Ok([_, (b, _)]) = self.chord_rel(&Frame::ABSOLUTE, &line) else {
                    return false;
                };
                let reach = (b - c).dot(d) / d.dot(d);
                reach > 1.0 + 8.0 * f64::EPSILON * (1.0 + c.norm() / d.norm())
            }
        }
    }

    /// Centroid of three boundary points spread around a curved boundary.
    fn interior_reference(&self) -> Point {
        let pieces = self.pieces().expect("curve boundary");
        let n = pieces.len() as f64;
        let at = |g: f64| {
            let j = (g.floor() as usize).min(pieces.len() - 1);
            pieces[j].curve().position(g - j as f64)
        };
        let (a, b, c) = (at(0.0), at(n / 3.0), at(2.0 * n / 3.0));
        Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    /// The two boundary intersections of `line`, ordered along its direction.
    pub fn chord(&self, line: &HomLine) -> Result<(BoundaryPoint, BoundaryPoint)> {
        let [(a, la), (b, lb)] = self.chord_rel(&Frame::ABSOLUTE, line)?;
        Ok((
            BoundaryPoint {
                point: a,
                location: la,
            },
            BoundaryPoint {
                point: b,
                location: lb,
            },
        ))
    }

    /// Chord computed in frame coordinates; `line` is expressed in the same frame.
    pub(crate) fn chord_rel(
        &self,
        frame: &Frame,
        line: &HomLine,
    ) -> Result<[(Point, BoundaryLocation); 2]> {
        match self {
            ConvexDomain::Polygon(p) => p.chord_rel(frame, line),
            _ => boundary::chord_rel(self.pieces().expect("curve boundary"), frame, line),
        }
    }

    fn joint_is_c2(&self, index: usize, at_end: bool) -> bool {
        let pieces = self.pieces().expect("curve boundary");
        let n = pieces.len();
        let (a, b) = if at_end {
            (index, (index + 1) % n)
        } else {
            ((index + n - 1) % n, index)
        };
        if n == 1 && pieces[0].curve().is_closed() {
            return true;
        }
        boundary::joint_kind(&pieces[a], &pieces[b]) == boundary::Joint::Smooth
    }

    /// Unsigned curvature at a boundary point.
    pub fn curvature_at(&self, b: &BoundaryPoint) -> Result<f64> {
        match b.location {
            BoundaryLocation::Vertex(_) => Err(HilbertError::NotC2),
            BoundaryLocation::Edge { s, .. } => {
                if s <= 0.0 || s >= 1.0 {
                    Err(HilbertError::NotC2)
                } else {
                    Ok(0.0)
                }
            }
            BoundaryLocation::Piece { index, s } => {
                let pieces = self.pieces().ok_or(HilbertError::NotC2)?;
                let piece = pieces.get(index).ok_or(HilbertError::NotC2)?;
                if (s <= 0.0 && !self.joint_is_c2(index, false))
                    || (s >= 1.0 && !self.joint_is_c2(index, true))
                {
                    return Err(HilbertError::NotC2);
                }
                Ok(piece.curve().signed_curvature(s).abs())
            }
        }
    }

    /// Support line at a boundary point where the boundary is C¹.
    pub fn support_line(&self, b: &BoundaryPoint) -> Result<HomLine> {
        match (self, b.location) {
            (ConvexDomain::Polygon(p), BoundaryLocation::Edge { index, s })
                if s > 0.0 && s < 1.0 =>
            {
                let (v0, v1) = p.edge(index);
                crate::projective::join(v0, v1)
            }
            (ConvexDomain::Polygon(_), _) => Err(HilbertError::SupportLineUndefined),
            (_, BoundaryLocation::Piece { index, s }) => {
                let pieces = self.pieces().expect("curve boundary");
                let piece = pieces
                    .get(index)
                    .ok_or(HilbertError::SupportLineUndefined)?;
                let n = pieces.len();
                let corner = |a: usize, c: usize| {
                    boundary::joint_kind(&pieces[a], &pieces[c]) == boundary::Joint::Corner
                };
                let closed = n == 1 && piece.curve().is_closed();
                if !closed
                    && ((s <= 0.0 && corner((index + n - 1) % n, index))
                        || (s >= 1.0 && corner(index, (index + 1) % n)))
                {
                    return Err(HilbertError::SupportLineUndefined);
                }
                HomLine::through(b.point, piece.curve().d1(s))
            }
            _ => Err(HilbertError::SupportLineUndefined),
        }
    }

    /// Image under `m`, reoriented counterclockwise and revalidated.
    pub fn transform(&self, m: &ProjectiveMap) -> Result<ConvexDomain> {
        let samples = match self {
            ConvexDomain::Polygon(p) => p.vertices().to_vec(),
            _ => self.boundary_samples(256.max(1024 / self.pieces().map_or(1, <[Piece]>::len))),
        };
        let weights: Vec<f64> = samples.iter().map(|p| m.weight(*p)).collect();
        let sign = weights[0].signum();
        if weights
            .iter()
            .any(|w| w.abs() < 1e-10 || w.signum() != sign)
        {
            return Err(HilbertError::UnboundedImage);
        }
        let out = match self {
            ConvexDomain::Polygon(p) => {
                let mut v = p
                    .vertices()
                    .iter()
                    .map(|x| m.apply(*x))
                    .collect::<Result<Vec<_>>>()?;
                if signed_area(&v) < 0.0 {
                    v.reverse();
                }
                ConvexDomain::Polygon(PolygonDomain::from_vertices(v))
            }
            _ => {
                let pieces = self.pieces().expect("curve boundary");
                let mapped: Vec<Piece> = pieces
                    .iter()
                    .map(|p| {
                        Piece::Other(Arc::new(Projected {
                            inner: p.clone(),
                            map: *m,
                        }))
                    })
                    .collect();
                let images: Vec<Point> =
                    samples.iter().map(|p| m.apply(*p)).collect::<Result<_>>()?;
                let mapped = if signed_area(&images) < 0.0 {
                    mapped
                        .into_iter()
                        .rev()
                        .map(|p| Piece::Other(Arc::new(Reversed(p))))
                        .collect()
                } else {
                    mapped
                };
                match self {
                    ConvexDomain::Smooth(s) => ConvexDomain::Smooth(SmoothDomain {
                        pieces: mapped,
                        curvature_positive_everywhere: s.curvature_positive_everywhere,
                    }),
                    _ => ConvexDomain::Piecewise(PiecewiseDomain { pieces: mapped }),
                }
            }
        };
        reject_violations(out)
    }
}

/// Shoelace area, positive for counterclockwise order.
pub fn signed_area(pts: &[Point]) -> f64 {
    let n = pts.len();
    0.5 * (0..n).map(|i| pts[i].cross(pts[(i + 1) % n])).sum::<f64>()
}

fn validate_smooth_oracles(s: &SmoothDomain) -> Vec<Violation> {
    let mut out = Vec::new();
    let c = s.curve();
    if !c.is_closed() {
        out.push(Violation::new(
            "boundary",
            "smooth boundary must be a closed curve",
        ));
    }
    for i in 0..32 {
        let t = (i as f64 + 0.5) / 32.0;
        let (h1, h2) = (1e-5, 1e-4);
        let fd1 = (c.position(t + h1) - c.position(t - h1)) * (0.5 / h1);
        let fd2 =
            (c.position(t + h2) - c.position(t) * 2.0 + c.position(t - h2)) * (1.0 / (h2 * h2));
        let (d1, d2) = (c.d1(t), c.d2(t));
        if (fd1 - d1).norm() > 1e-6 * d1.norm().max(1e-300) {
            out.push(Violation::new(
                format!("s = {t}"),
                "first-derivative oracle disagrees with finite differences",
            ));
        }
        if (fd2 - d2).norm() > 1e-6 * d2.norm().max(d1.norm()) {
            out.push(Violation::new(
                format!("s = {t}"),
                "second-derivative oracle disagrees with finite differences",
            ));
        }
        if s.curvature_positive_everywhere && c.signed_curvature(t) <= 0.0 {
            out.push(Violation::new(
                format!("s = {t}"),
                "curvature flagged positive but is not",
            ));
        }
    }
    out
}

/// Total turning of a closed polygonal path, in radians.
pub(crate) fn total_turning(dirs: &[Point]) -> f64 {
    let n = dirs.len();
    (0..n)
        .map(|i| {
            dirs[i]
                .cross(dirs[(i + 1) % n])
                .atan2(dirs[i].dot(dirs[(i + 1) % n]))
        })
        .sum()
}

pub(crate) fn turning_ok(total: f64) -> bool {
    (total - TAU).abs() < 1e-6
}

pub(crate) fn angle_between(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}
