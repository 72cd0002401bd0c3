//! Parametric boundary pieces and the graph models used for arcs.

use std::f64::consts::TAU;
use std::fmt::Debug;
use std::sync::Arc;

use crate::hp::Hp;
use crate::projective::{Point, ProjectiveMap};
use crate::{HilbertError, Result};

/// A C² parametric curve on `s ∈ [0, 1]`.
pub trait Curve: Debug + Send + Sync {
    fn position(&self, s: f64) -> Point;
    fn d1(&self, s: f64) -> Point;
    fn d2(&self, s: f64) -> Point;

    /// `position(s) − position(s_ref)`, accurate when the two parameters are close.
    fn offset(&self, s: f64, s_ref: f64) -> Point {
        self.position(s) - self.position(s_ref)
    }

    /// `position(s_ref + ds) − position(s_ref)`, keeping relative precision in small `ds`.
    fn offset_by(&self, ds: f64, s_ref: f64) -> Point {
        self.offset(s_ref + ds, s_ref)
    }

    /// Closed curves are periodic with period 1.
    fn is_closed(&self) -> bool {
        false
    }

    /// Signed curvature, positive when turning left.
    fn signed_curvature(&self, s: f64) -> f64 {
        let (a, b) = (self.d1(s), self.d2(s));
        a.cross(b) / a.norm().powi(3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
}

impl Curve for Segment {
    fn position(&self, s: f64) -> Point {
        self.from.lerp(self.to, s)
    }
    fn d1(&self, _s: f64) -> Point {
        self.to - self.from
    }
    fn d2(&self, _s: f64) -> Point {
        Point::default()
    }
    fn offset(&self, s: f64, s_ref: f64) -> Point {
        (self.to - self.from) * (s - s_ref)
    }
    fn offset_by(&self, ds: f64, _s_ref: f64) -> Point {
        (self.to - self.from) * ds
    }
}

/// Axis-aligned ellipse traversed counterclockwise from its rightmost point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    pub center: Point,
    pub rx: f64,
    pub ry: f64,
}

fn wrap_unit(d: f64) -> f64 {
    d - d.round()
}

impl Curve for Ellipse {
    fn position(&self, s: f64) -> Point {
        let th = TAU * s;
        Point::new(
            self.center.x + self.rx * th.cos(),
            self.center.y + self.ry * th.sin(),
        )
    }
    fn d1(&self, s: f64) -> Point {
        let th = TAU * s;
        Point::new(-self.rx * TAU * th.sin(), self.ry * TAU * th.cos())
    }
    fn d2(&self, s: f64) -> Point {
        let th = TAU * s;
        let k = TAU * TAU;
        Point::new(-self.rx * k * th.cos(), -self.ry * k * th.sin())
    }
    fn offset(&self, s: f64, s_ref: f64) -> Point {
        self.offset_by(s - s_ref, s_ref)
    }
    fn offset_by(&self, ds: f64, s_ref: f64) -> Point {
        let half = 0.5 * TAU * wrap_unit(ds);
        let mid = TAU * s_ref + half;
        let sh = half.sin();
        Point::new(
            -2.0 * self.rx * mid.sin() * sh,
            2.0 * self.ry * mid.cos() * sh,
        )
    }
    fn is_closed(&self) -> bool {
        true
    }
}

/// Graph models `y = σ(x)` available for arcs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcModel {
    /// Circular arc of the given curvature through `(x_start, y0)` and `(x_end, y1)`.
    /// Traversed left to right it bulges downward (convex graph), right to left upward.
    ConstantCurvature { y0: f64, y1: f64, curvature: f64 },
    /// `y = k |x|³`.
    Cubic { k: f64 },
    /// Quintic matching value, slope and second derivative at both interval ends.
    HermiteQuintic {
        y0: f64,
        d0: f64,
        s0: f64,
        y1: f64,
        d1: f64,
        s1: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct CircleGeom {
    sign: f64,
    xl: f64,
    yl: f64,
    xr: f64,
    yr: f64,
    slope: f64,
    h_mid: f64,
    mx: f64,
    radius: f64,
}

impl CircleGeom {
    fn new(xs: f64, ys: f64, xe: f64, ye: f64, curvature: f64) -> Result<Self> {
        if !(curvature > 0.0 && curvature.is_finite()) {
            return Err(HilbertError::ParameterRange(
                "arc curvature must be positive".into(),
            ));
        }
        let sign = if xe > xs { 1.0 } else { -1.0 };
        let (xl, yl, xr, yr) = if xe > xs {
            (xs, ys, xe, ye)
        } else {
            (xe, ye, xs, ys)
        };
        let (yl, yr) = (sign * yl, sign * yr);
        let slope = (yr - yl) / (xr - xl);
        let w = slope.hypot(1.0);
        let half_chord = 0.5 * (xr - xl) * w;
        let radius = 1.0 / curvature;
        if half_chord > radius {
            return Err(HilbertError::ParameterRange(
                "arc curvature too large for its chord".into(),
            ));
        }
        let h = ((radius - half_chord) * (radius + half_chord)).sqrt();
        Ok(CircleGeom {
            sign,
            xl,
            yl,
            xr,
            yr,
            slope,
            h_mid: h / w,
            mx: 0.5 * (xl + xr),
            radius,
        })
    }

    // returns (σ, height of centre above σ) for the downward-bulging normal form
    fn lower(&self, x: f64) -> (f64, f64) {
        let chord = if x == self.xr {
            self.yr
        } else {
            self.yl + self.slope * (x - self.xl)
        };
        let h = self.h_mid - self.slope * (x - self.mx);
        let q = (x - self.xl) * (self.xr - x) * (1.0 + self.slope * self.slope);
        let gap = q / (h + (h * h + q).sqrt());
        (chord - gap, h + gap)
    }

    fn value(&self, x: f64) -> f64 {
        self.sign * self.lower(x).0
    }

    fn slope_at(&self, x: f64) -> f64 {
        let (_, up) = self.lower(x);
        self.sign * (x - self.mx + self.slope * self.h_mid) / up
    }

    fn second(&self, x: f64) -> f64 {
        let (_, up) = self.lower(x);
        self.sign * self.radius * self.radius / (up * up * up)
    }

    // centre height above the chord at x, chord value and chord term q, all in high precision;
    // the chord interpolates both endpoints exactly so neighbouring pieces join without a jump
    fn parts_hp(&self, x: &Hp) -> (Hp, Hp, Hp, Hp) {
        let xl = Hp::from_f64(self.xl);
        let xr = Hp::from_f64(self.xr);
        let yl = Hp::from_f64(self.yl);
        let span = &xr - &xl;
        let slope = &(&Hp::from_f64(self.yr) - &yl) / &span;
        let w2 = &Hp::from_f64(1.0) + &(&slope * &slope);
        let dx = x - &xl;
        let chord = &yl + &(&slope * &dx);
        let r = Hp::from_f64(self.radius);
        let h_mid = (&(&r * &r) - &(&(&span * &span) * &w2 * 0.25)).sqrt() / w2.sqrt();
        let mx = (&xl + &xr) * 0.5;
        let h = &h_mid - &(&slope * &(x - &mx));
        let q = &(&dx * &(&xr - x)) * &w2;
        let gap = &q / &(&h + &(&(&h * &h) + &q).sqrt());
        let lead = &(x - &mx) + &(&slope * &h_mid);
        (chord, gap, h, lead)
    }

    fn value_hp(&self, x: &Hp) -> Hp {
        let (chord, gap, _, _) = self.parts_hp(x);
        (chord - gap) * self.sign
    }

    fn slope_hp(&self, x: &Hp) -> Hp {
        let (_, gap, h, lead) = self.parts_hp(x);
        (lead / (h + gap)) * self.sign
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Geom {
    Circle(CircleGeom),
    Cubic(f64),
    Quintic,
}

/// Arc of a graph `y = σ(x)` for `x` running from `x_start` to `x_end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphArc {
    x_start: f64,
    x_end: f64,
    model: ArcModel,
    geom: Geom,
}

// quintic Hermite basis and its first two u-derivatives
fn hermite5(u: f64) -> [[f64; 6]; 3] {
    let u2 = u * u;
    let u3 = u2 * u;
    [
        [
            1.0 + u3 * (-10.0 + u * (15.0 - 6.0 * u)),
            u + u3 * (-6.0 + u * (8.0 - 3.0 * u)),
            0.5 * u2 * (1.0 + u * (-3.0 + u * (3.0 - u))),
            u3 * (10.0 + u * (-15.0 + 6.0 * u)),
            u3 * (-4.0 + u * (7.0 - 3.0 * u)),
            0.5 * u3 * (1.0 + u * (-2.0 + u)),
        ],
        [
            u2 * (-30.0 + u * (60.0 - 30.0 * u)),
            1.0 + u2 * (-18.0 + u * (32.0 - 15.0 * u)),
            0.5 * u * (2.0 + u * (-9.0 + u * (12.0 - 5.0 * u))),
            u2 * (30.0 + u * (-60.0 + 30.0 * u)),
            u2 * (-12.0 + u * (28.0 - 15.0 * u)),
            0.5 * u2 * (3.0 + u * (-8.0 + 5.0 * u)),
        ],
        [
            u * (-60.0 + u * (180.0 - 120.0 * u)),
            u * (-36.0 + u * (96.0 - 60.0 * u)),
            0.5 * (2.0 + u * (-18.0 + u * (36.0 - 20.0 * u))),
            u * (60.0 + u * (-180.0 + 120.0 * u)),
            u * (-24.0 + u * (84.0 - 60.0 * u)),
            0.5 * u * (6.0 + u * (-24.0 + 20.0 * u)),
        ],
    ]
}

fn hermite5_hp(u: &Hp) -> [Hp; 6] {
    let c = Hp::from_f64;
    let u2 = u * u;
    let u3 = &u2 * u;
    [
        &c(1.0) + &(&u3 * &(&c(-10.0) + &(u * &(&c(15.0) - &(u * 6.0))))),
        u + &(&u3 * &(&c(-6.0) + &(u * &(&c(8.0) - &(u * 3.0))))),
        &(&u2 * 0.5) * &(&c(1.0) + &(u * &(&c(-3.0) + &(u * &(&c(3.0) - u))))),
        &u3 * &(&c(10.0) + &(u * &(&c(-15.0) + &(u * 6.0)))),
        &u3 * &(&c(-4.0) + &(u * &(&c(7.0) - &(u * 3.0)))),
        &(&u3 * 0.5) * &(&c(1.0) + &(u * &(&c(-2.0) + u))),
    ]
}

impl GraphArc {
    pub fn new(x_start: f64, x_end: f64, model: ArcModel) -> Result<Self> {
        if !(x_start.is_finite() && x_end.is_finite()) || x_start == x_end {
            return Err(HilbertError::ParameterRange(
                "arc interval must be nondegenerate".into(),
            ));
        }
        let geom = match model {
            ArcModel::ConstantCurvature { y0, y1, curvature } => {
                Geom::Circle(CircleGeom::new(x_start, y0, x_end, y1, curvature)?)
            }
            ArcModel::Cubic { k } => {
                if !k.is_finite() {
                    return Err(HilbertError::ParameterRange("cubic coefficient".into()));
                }
                Geom::Cubic(k)
            }
            ArcModel::HermiteQuintic {
                y0,
                d0,
                s0,
                y1,
                d1,
                s1,
            } => {
                if ![y0, d0, s0, y1, d1, s1].iter().all(|v| v.is_finite()) {
                    return Err(HilbertError::ParameterRange(
                        "quintic data must be finite".into(),
                    ));
                }
                Geom::Quintic
            }
        };
        Ok(GraphArc {
            x_start,
            x_end,
            model,
            geom,
        })
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.x_start, self.x_end)
    }

    pub fn model(&self) -> ArcModel {
        self.model
    }

    pub fn x_at(&self, s: f64) -> f64 {
        (1.0 - s) * self.x_start + s * self.x_end
    }

    /// Parameter of the abscissa `x`.
    pub fn s_at(&self, x: f64) -> f64 {
        if x == self.x_end {
            1.0
        } else {
            (x - self.x_start) / (self.x_end - self.x_start)
        }
    }

    /// `(σ, σ′, σ″)` at `x`.
    pub fn jet(&self, x: f64) -> (f64, f64, f64) {
        match self.geom {
            Geom::Circle(c) => (c.value(x), c.slope_at(x), c.second(x)),
            Geom::Cubic(k) => {
                let a = x.abs();
                (k * (a * a * a), 3.0 * k * x * a, 6.0 * k * a)
            }
            Geom::Quintic => {
                let ArcModel::HermiteQuintic {
                    y0,
                    d0,
                    s0,
                    y1,
                    d1,
                    s1,
                } = self.model
                else {
                    unreachable!()
                };
                let h = self.x_end - self.x_start;
                let u = if x == self.x_end {
                    1.0
                } else {
                    (x - self.x_start) / h
                };
                let b = hermite5(u);
                let coef = [y0, h * d0, h * h * s0, y1, h * d1, h * h * s1];
                let comb =
                    |row: &[f64; 6]| row.iter().zip(coef.iter()).map(|(a, c)| a * c).sum::<f64>();
                (comb(&b[0]), comb(&b[1]) / h, comb(&b[2]) / (h * h))
            }
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.geom {
            Geom::Cubic(k) => {
                let a = x.abs();
                k * (a * a * a)
            }
            Geom::Circle(c) => c.value(x),
            Geom::Quintic => self.jet(x).0,
        }
    }

    /// `σ(x) − σ(x_ref)` without cancellation for the cubic model.
    pub fn value_diff(&self, x: f64, x_ref: f64) -> f64 {
        match self.geom {
            Geom::Cubic(k) if x * x_ref >= 0.0 => {
                let sign = if x + x_ref >= 0.0 { 1.0 } else { -1.0 };
                sign * k * (x - x_ref) * (x * x + x * x_ref + x_ref * x_ref)
            }
            _ => self.value(x) - self.value(x_ref),
        }
    }

    /// `σ(x_ref + h) − σ(x_ref)`.
    fn value_step(&self, x_ref: f64, h: f64) -> f64 {
        let x = x_ref + h;
        match self.geom {
            Geom::Cubic(k) if x * x_ref >= 0.0 => {
                let sign = if x + x_ref >= 0.0 { 1.0 } else { -1.0 };
                sign * k * h * (x * x + x * x_ref + x_ref * x_ref)
            }
            _ => self.value(x) - self.value(x_ref),
        }
    }

    pub(crate) fn value_hp(&self, x: &Hp) -> Hp {
        match self.geom {
            Geom::Cubic(k) => {
                let a = x.abs();
                &(&a * &a) * &a * k
            }
            Geom::Circle(c) => c.value_hp(x),
            Geom::Quintic => self.quintic_hp(x, false),
        }
    }

    pub(crate) fn slope_hp(&self, x: &Hp) -> Hp {
        match self.geom {
            Geom::Cubic(k) => &(x * &x.abs()) * (3.0 * k),
            Geom::Circle(c) => c.slope_hp(x),
            Geom::Quintic => self.quintic_hp(x, true),
        }
    }

    fn quintic_hp(&self, x: &Hp, derivative: bool) -> Hp {
        let ArcModel::HermiteQuintic {
            y0,
            d0,
            s0,
            y1,
            d1,
            s1,
        } = self.model
        else {
            unreachable!()
        };
        let x0 = Hp::from_f64(self.x_start);
        let h = &Hp::from_f64(self.x_end) - &x0;
        let u = &(x - &x0) / &h;
        let hh = &h * &h;
        let coef = [
            Hp::from_f64(y0),
            &h * d0,
            &hh * s0,
            Hp::from_f64(y1),
            &h * d1,
            &hh * s1,
        ];
        if derivative {
            // u-derivatives of the quintic basis
            let c = Hp::from_f64;
            let u2 = &u * &u;
            let basis = [
                &u2 * &(&c(-30.0) + &(&u * &(&c(60.0) - &(&u * 30.0)))),
                &c(1.0) + &(&u2 * &(&c(-18.0) + &(&u * &(&c(32.0) - &(&u * 15.0))))),
                &(&u * 0.5) * &(&c(2.0) + &(&u * &(&c(-9.0) + &(&u * &(&c(12.0) - &(&u * 5.0)))))),
                &u2 * &(&c(30.0) + &(&u * &(&c(-60.0) + &(&u * 30.0)))),
                &u2 * &(&c(-12.0) + &(&u * &(&c(28.0) - &(&u * 15.0)))),
                &(&u2 * 0.5) * &(&c(3.0) + &(&u * &(&c(-8.0) + &(&u * 5.0)))),
            ];
            let mut acc = Hp::from_f64(0.0);
            for (b, k) in basis.iter().zip(coef.iter()) {
                acc = acc + b * k;
            }
            acc / h
        } else {
            let basis = hermite5_hp(&u);
            let mut acc = Hp::from_f64(0.0);
            for (b, k) in basis.iter().zip(coef.iter()) {
                acc = acc + b * k;
            }
            acc
        }
    }
}

impl Curve for GraphArc {
    fn position(&self, s: f64) -> Point {
        let x = self.x_at(s);
        Point::new(x, self.value(x))
    }
    fn d1(&self, s: f64) -> Point {
        let dx = self.x_end - self.x_start;
        let (_, d, _) = self.jet(self.x_at(s));
        Point::new(dx, d * dx)
    }
    fn d2(&self, s: f64) -> Point {
        let dx = self.x_end - self.x_start;
        let (_, _, dd) = self.jet(self.x_at(s));
        Point::new(0.0, dd * dx * dx)
    }
    fn offset(&self, s: f64, s_ref: f64) -> Point {
        let (x, xr) = (self.x_at(s), self.x_at(s_ref));
        Point::new(x - xr, self.value_diff(x, xr))
    }
    fn offset_by(&self, ds: f64, s_ref: f64) -> Point {
        let xr = self.x_at(s_ref);
        let h = ds * (self.x_end - self.x_start);
        Point::new(h, self.value_step(xr, h))
    }
}

/// One piece of a closed boundary.
#[derive(Debug, Clone)]
pub enum Piece {
    Segment(Segment),
    Graph(GraphArc),
    Ellipse(Ellipse),
    Other(Arc<dyn Curve>),
}

impl Piece {
    pub fn curve(&self) -> &dyn Curve {
        match self {
            Piece::Segment(s) => s,
            Piece::Graph(g) => g,
            Piece::Ellipse(e) => e,
            Piece::Other(c) => c.as_ref(),
        }
    }

    pub fn start(&self) -> Point {
        self.curve().position(0.0)
    }

    pub fn end(&self) -> Point {
        self.curve().position(1.0)
    }

    pub fn is_segment(&self) -> bool {
        matches!(self, Piece::Segment(_))
    }
}

/// Image of a piece under a projective map.
#[derive(Debug, Clone)]
pub struct Projected {
    pub inner: Piece,
    pub map: ProjectiveMap,
}

impl Projected {
    fn jet(&self, s: f64) -> (Point, Point, Point) {
        let c = self.inner.curve();
        self.map
            .apply_jet(c.position(s), c.d1(s), c.d2(s))
            .unwrap_or((
                Point::new(f64::NAN, f64::NAN),
                Point::default(),
                Point::default(),
            ))
    }
}

impl Curve for Projected {
    fn position(&self, s: f64) -> Point {
        self.jet(s).0
    }
    fn d1(&self, s: f64) -> Point {
        self.jet(s).1
    }
    fn d2(&self, s: f64) -> Point {
        self.jet(s).2
    }
    fn is_closed(&self) -> bool {
        self.inner.curve().is_closed()
    }
}

/// The same piece traversed backwards.
#[derive(Debug, Clone)]
pub struct Reversed(pub Piece);

impl Curve for Reversed {
    fn position(&self, s: f64) -> Point {
        self.0.curve().position(1.0 - s)
    }
    fn d1(&self, s: f64) -> Point {
        -self.0.curve().d1(1.0 - s)
    }
    fn d2(&self, s: f64) -> Point {
        self.0.curve().d2(1.0 - s)
    }
    fn offset(&self, s: f64, s_ref: f64) -> Point {
        self.0.curve().offset(1.0 - s, 1.0 - s_ref)
    }
    fn offset_by(&self, ds: f64, s_ref: f64) -> Point {
        self.0.curve().offset_by(-ds, 1.0 - s_ref)
    }
    fn is_closed(&self) -> bool {
        self.0.curve().is_closed()
    }
}
