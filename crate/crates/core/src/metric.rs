//! The Hilbert distance and straight-chord geodesics parametrized by Hilbert arc length.

use crate::domain::{BoundaryPoint, ConvexDomain, Frame};
use crate::projective::{HomLine, Point};
use crate::{HilbertError, Result};

/// Hilbert distance between interior points `p` and `q`.
pub fn hilbert_distance(domain: &ConvexDomain, p: Point, q: Point) -> Result<f64> {
    hilbert_distance_rel(domain, &Frame::ABSOLUTE, p, q)
}

/// Positions of the chord endpoints beyond `p` and beyond `q`, in units of `|q − p|`.
fn chord_margins(
    domain: &ConvexDomain,
    frame: &Frame,
    p: Point,
    q: Point,
) -> Result<(f64, f64, [BoundaryPoint; 2])> {
    let d = q - p;
    let line = HomLine::through(p, d)?;
    let [(e1, l1), (e2, l2)] = domain.chord_rel(frame, &line)?;
    let dd = d.dot(d);
    let behind = (p - e1).dot(d) / dd;
    let beyond = (e2 - q).dot(d) / dd;
    let outside = |x: Point| HilbertError::PointNotInterior {
        x: x.x + frame.origin.x,
        y: x.y + frame.origin.y,
    };
    if !(behind > 0.0) {
        return Err(outside(p));
    }
    if !(beyond > 0.0) {
        return Err(outside(q));
    }
    Ok((
        behind,
        beyond,
        [
            BoundaryPoint {
                point: e1 + frame.origin,
                location: l1,
            },
            BoundaryPoint {
                point: e2 + frame.origin,
                location: l2,
            },
        ],
    ))
}

/// Hilbert distance for points given relative to `frame`.
pub(crate) fn hilbert_distance_rel(
    domain: &ConvexDomain,
    frame: &Frame,
    p: Point,
    q: Point,
) -> Result<f64> {
    if p == q {
        let abs = p + frame.origin;
        return if domain.contains(abs) {
            Ok(0.0)
        } else {
            Err(HilbertError::PointNotInterior { x: abs.x, y: abs.y })
        };
    }
    let (behind, beyond, _) = chord_margins(domain, frame, p, q)?;
    let (r1, r2) = (1.0 / behind, 1.0 / beyond);
    // cross ratio minus one; ln_1p only where 1 + x would round away digits
    let x = r1 + r2 + r1 * r2;
    Ok(if x < 1.0 { x.ln_1p() } else { (1.0 + x).ln() })
}

/// Euclidean distance from a geodesic point to the forward endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclidGap {
    pub t: f64,
    pub value: f64,
}

/// A chord `(a, b)` with `f(0) = a + u₀(b − a)`, moving toward `b` as `t` grows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicLine {
    a: BoundaryPoint,
    b: BoundaryPoint,
    u0: f64,
    base: Point,
}

impl GeodesicLine {
    pub fn new(domain: &ConvexDomain, a: BoundaryPoint, b: BoundaryPoint, u0: f64) -> Result<Self> {
        if !(u0 > 0.0 && u0 < 1.0) {
            return Err(HilbertError::ParameterRange(format!(
                "u0 = {u0} must lie in (0, 1)"
            )));
        }
        if a.point == b.point {
            return Err(HilbertError::DegenerateConfiguration(
                "geodesic endpoints coincide".into(),
            ));
        }
        let base = a.point + (b.point - a.point) * u0;
        if !domain.contains(base) {
            return Err(HilbertError::PointNotInterior {
                x: base.x,
                y: base.y,
            });
        }
        Ok(GeodesicLine { a, b, u0, base })
    }

    pub(crate) fn from_parts(a: BoundaryPoint, b: BoundaryPoint, u0: f64, base: Point) -> Self {
        GeodesicLine { a, b, u0, base }
    }

    /// f(−∞).
    pub fn backward(&self) -> BoundaryPoint {
        self.a
    }

    /// f(+∞).
    pub fn forward(&self) -> BoundaryPoint {
        self.b
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn length(&self) -> f64 {
        self.a.point.dist(self.b.point)
    }

    /// `(u(t), 1 − u(t))`, both computed without cancellation.
    pub fn weights(&self, t: f64) -> (f64, f64) {
        let u0 = self.u0;
        if t >= 0.0 {
            let e = (-t).exp();
            let den = u0 + (1.0 - u0) * e;
            (u0 / den, (1.0 - u0) * e / den)
        } else {
            let e = t.exp();
            let den = 1.0 - u0 + u0 * e;
            (u0 * e / den, (1.0 - u0) / den)
        }
    }

    pub fn point_at(&self, t: f64) -> Point {
        if t == 0.0 {
            return self.base;
        }
        let (u, w) = self.weights(t);
        if u <= 0.5 {
            self.a.point + (self.b.point - self.a.point) * u
        } else {
            self.b.point + (self.a.point - self.b.point) * w
        }
    }

    /// `f(t) − f(+∞)` with full relative precision.
    pub fn offset_from_forward(&self, t: f64) -> Point {
        (self.a.point - self.b.point) * self.weights(t).1
    }

    pub fn euclid_gap(&self, t: f64) -> EuclidGap {
        EuclidGap {
            t,
            value: self.weights(t).1 * self.length(),
        }
    }

    /// Same chord, base moved to normalized position `u0`.
    pub fn with_base(&self, domain: &ConvexDomain, u0: f64) -> Result<Self> {
        GeodesicLine::new(domain, self.a, self.b, u0)
    }

    /// Same chord, base moved to `point_at(t)`.
    pub fn shifted(&self, domain: &ConvexDomain, t: f64) -> Result<Self> {
        let mut g = GeodesicLine::new(domain, self.a, self.b, self.weights(t).0)?;
        g.base = self.point_at(t);
        Ok(g)
    }
}

/// Geodesic with `f(0) = p` heading through `q`.
pub fn geodesic_through(domain: &ConvexDomain, p: Point, q: Point) -> Result<GeodesicLine> {
    if p == q {
        return Err(HilbertError::DegenerateConfiguration(
            "geodesic needs two distinct points".into(),
        ));
    }
    let (behind, beyond, [a, b]) = chord_margins(domain, &Frame::ABSOLUTE, p, q)?;
    let u0 = behind / (behind + 1.0 + beyond);
    Ok(GeodesicLine { a, b, u0, base: p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk() -> ConvexDomain {
        ConvexDomain::ellipse(Point::new(0.0, 0.0), 1.0, 1.0).unwrap()
    }

    fn trapezoid() -> ConvexDomain {
        ConvexDomain::polygon(vec![
            Point::new(-1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(3.0, 1.0),
            Point::new(-2.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn distance_examples() {
        let h = hilbert_distance(&disk(), Point::new(0.0, 0.0), Point::new(0.5, 0.0)).unwrap();
        assert!((h - 3f64.ln()).abs() < 1e-14);
        assert_eq!(
            hilbert_distance(&disk(), Point::new(0.3, 0.1), Point::new(0.3, 0.1)),
            Ok(0.0)
        );
        let h = hilbert_distance(&trapezoid(), Point::new(1.0, 0.5), Point::new(0.0, 0.5)).unwrap();
        assert!((h - 2.0 * (5.0f64 / 3.0).ln()).abs() < 1e-14);
        assert!(matches!(
            hilbert_distance(&disk(), Point::new(0.0, 0.0), Point::new(1.0, 0.0)),
            Err(HilbertError::PointNotInterior { .. })
        ));
        assert!(hilbert_distance(&disk(), Point::new(2.0, 0.0), Point::new(2.0, 0.0)).is_err());
    }

    #[test]
    fn disk_closed_form() {
        for r in [0.1, 0.5, 0.9] {
            let h = hilbert_distance(&disk(), Point::new(0.0, 0.0), Point::new(r, 0.0)).unwrap();
            assert!((h - ((1.0 + r) / (1.0 - r)).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_examples() {
        let f =
            geodesic_through(&trapezoid(), Point::new(0.5, 0.5), Point::new(0.75, 0.75)).unwrap();
        assert!(f.backward().point.dist(Point::new(0.0, 0.0)) < 1e-15);
        assert!(f.forward().point.dist(Point::new(1.0, 1.0)) < 1e-15);
        assert!(
            geodesic_through(&trapezoid(), Point::new(0.5, 0.5), Point::new(0.5, 0.5)).is_err()
        );

        let g = geodesic_through(&disk(), Point::new(0.0, 0.0), Point::new(0.5, 0.0)).unwrap();
        assert!(g.backward().point.dist(Point::new(-1.0, 0.0)) < 1e-12);
        assert!(g.forward().point.dist(Point::new(1.0, 0.0)) < 1e-12);
        assert!((g.u0() - 0.5).abs() < 1e-12);

        let cubic = ConvexDomain::cubic_graph(1.0).unwrap();
        let c = geodesic_through(&cubic, Point::new(0.5, 0.5), Point::new(0.25, 0.25)).unwrap();
        assert!(c.backward().point.dist(Point::new(1.0, 1.0)) < 1e-15);
        assert!(c.forward().point.norm() < 1e-15);
        for t in [0.0, 1.0, 5.0, 20.0] {
            let p = c.point_at(t);
            let y = 1.0 / (t.exp() + 1.0);
            assert!(
                (p.x - y).abs() <= 1e-15 * y.max(1e-300) + 1e-300
                    && (p.y - y).abs() <= 1e-15 * y + 1e-300
            );
        }
    }

    #[test]
    fn euclid_gap_normalized() {
        let seg = ConvexDomain::polygon(vec![
            Point::new(0.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let f = geodesic_through(&seg, Point::new(0.5, 0.0), Point::new(0.75, 0.0)).unwrap();
        assert_eq!(f.point_at(0.0), Point::new(0.5, 0.0));
        assert!((f.euclid_gap(0.0).value - 0.5).abs() < 1e-15);
        assert!((f.euclid_gap(3f64.ln()).value - 0.25).abs() < 1e-15);
        for t in [1.0, 5.0] {
            assert!(
                (f.point_at(t).dist(Point::new(1.0, 0.0)) - 1.0 / (t.exp() + 1.0)).abs() < 1e-15
            );
        }
        let diag =
            geodesic_through(&trapezoid(), Point::new(0.5, 0.5), Point::new(0.6, 0.6)).unwrap();
        assert!((diag.euclid_gap(0.0).value - 2f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn arc_length_identity() {
        let f = geodesic_through(&disk(), Point::new(-0.2, 0.1), Point::new(0.3, 0.4)).unwrap();
        for (t1, t2) in [(0.0, 1.0), (-3.0, 2.5), (4.0, 9.0), (-8.0, -7.5)] {
            let h = hilbert_distance(&disk(), f.point_at(t1), f.point_at(t2)).unwrap();
            assert!((h - (t1 - t2).abs()).abs() < 1e-9, "{t1} {t2} {h}");
        }
    }
}
