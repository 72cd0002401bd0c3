//! A C² convex domain, flat only at the origin, whose asymptotic distance profile keeps
//! losing convexity at arbitrarily late times.
//!
//! The lower boundary is `y = |x|³` with the subarc over `[bₙ, xₙ]`, `xₙ = x₀/4ⁿ`, replaced by
//! a circular arc of tiny curvature close to the secant `y = 2xₙ²x − xₙ³`, and C² arcs
//! bridging consecutive levels.

mod interp;
mod precise;

pub use interp::{c2_interpolant, feasibility_check, C2Arc, Feasibility, InterpolationData};
pub use precise::{verify_nonconvexity, NonconvexityReport, Probe, ProbeWindow};

use crate::asymptotic::{convexity_report, distance_profile, ConvexityReport};
use crate::domain::{ArcModel, ConvexDomain, GraphArc, Piece, Segment, Violation};
use crate::metric::geodesic_through;
use crate::projective::Point;
use crate::{HilbertError, Result};

/// `(√5 − 1)/2`.
pub const FLAT_ENDPOINT_RATIO: f64 = 0.618_033_988_749_894_9;

/// Left endpoint `b` of the secant `y = 2xₙ²x − xₙ³` on the cubic, i.e. the root of
/// `b³ = 2xₙ²b − xₙ³` in `(xₙ/2, 3xₙ/4)`.
pub fn flat_segment_endpoint(xn: f64) -> f64 {
    let b = xn * FLAT_ENDPOINT_RATIO;
    debug_assert!(b > xn / 2.0 && b < 0.75 * xn);
    b
}

/// `D′`, `D″·𝒞` and `𝒞` for the chord height `y = c/(eᵗ+1)` on the line `y = Ax + B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileDerivatives {
    pub d1: f64,
    pub d2_scaled: f64,
    pub scale: f64,
}

impl ProfileDerivatives {
    pub fn d2(&self) -> f64 {
        self.d2_scaled / self.scale
    }
}

pub fn d_profile_derivatives(a: f64, b: f64, c: f64, t: f64) -> Result<ProfileDerivatives> {
    if !(b < 0.0 && c > 0.0 && a > 0.0) {
        return Err(HilbertError::ParameterRange(
            "need A > 0, B < 0 and c > 0".into(),
        ));
    }
    let y = c * crate::closed_form::normalized_gap(t);
    let x = (y - b) / a;
    if !(x > y && y > 0.0) {
        return Err(HilbertError::DegenerateChord);
    }
    let dy = y * y / c - y;
    let xx_yy = (x - y) * (x + y);
    let d1 = 4.0 * (a * x - y) / xx_yy / a * dy;
    let d2_scaled = 2.0 * (a * y - x) * (-dy) + xx_yy * (a - 2.0 * y * a / c);
    let scale = a * a * xx_yy * xx_yy / (-4.0 * b * (-dy));
    Ok(ProfileDerivatives {
        d1,
        d2_scaled,
        scale,
    })
}

/// Sign of `D″(t₀)` at the contact height `y = x₀³` of the first secant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactSign {
    /// `D″(t₀)·𝒞 = −(2/c)x₀⁷ + 2x₀⁸`.
    pub value: f64,
    /// `𝒞` at the contact point; positive whenever `y < c`.
    pub scale: f64,
    pub negative: bool,
}

pub fn d2_at_contact(x0: f64, c: f64) -> Result<ContactSign> {
    if !(x0 > 0.0 && x0 < 1.0 && c > 0.0) {
        return Err(HilbertError::ParameterRange(
            "need x0 in (0, 1) and c > 0".into(),
        ));
    }
    let x7 = x0.powi(7);
    let value = 2.0 * x7 * (x0 - 1.0 / c);
    let (a, b, y) = (2.0 * x0 * x0, -x0.powi(3), x0.powi(3));
    if !(y < c) {
        return Err(HilbertError::ParameterRange(
            "contact height must stay below c".into(),
        ));
    }
    let xx_yy = (x0 - y) * (x0 + y);
    let scale = a * a * xx_yy * xx_yy / (-4.0 * b * (y - y * y / c));
    Ok(ContactSign {
        value,
        scale,
        negative: value < 0.0,
    })
}

/// Sufficient bounds for the first bridge, each divided by `x₀³` and obtained with
/// `b` replaced by the ends of `(x₀/2, 3x₀/4)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientBounds {
    /// `(3/4)³ − (1/4)³`, to be below `right_rhs`.
    pub right_lhs: f64,
    /// `2(1/2 − 1/4)`.
    pub right_rhs: f64,
    /// `2(1/4)²(3/4 − 1/4)`, to be below `left_rhs`.
    pub left_lhs: f64,
    /// `(1/2)³ − (1/4)³`.
    pub left_rhs: f64,
}

/// Evaluates the sufficient bounds for the bridge between levels 1 and 0 at `x0`.
pub fn sufficient_bounds(x0: f64) -> SufficientBounds {
    let a = x0 / 4.0;
    let (b_lo, b_hi) = (x0 / 2.0, 0.75 * x0);
    let cube = x0 * x0 * x0;
    SufficientBounds {
        right_lhs: (b_hi.powi(3) - a.powi(3)) / cube,
        right_rhs: 2.0 * x0 * x0 * (b_lo - a) / cube,
        left_lhs: 2.0 * a * a * (b_hi - a) / cube,
        left_rhs: (b_lo.powi(3) - a.powi(3)) / cube,
    }
}

/// Bridge data between the secants of levels `n + 1` and `n`, as stated for the segments.
pub fn segment_bridge_data(x0: f64, n: u32) -> InterpolationData {
    let xn = x0 / 4f64.powi(n as i32);
    let a = xn / 4.0;
    let b = flat_segment_endpoint(xn);
    InterpolationData {
        alpha: a,
        beta: b,
        start: [a * a * a, 2.0 * a * a, 1.0],
        end: [b * b * b, 2.0 * xn * xn, 1.0],
    }
}

/// Inputs of the construction.
#[derive(Debug, Clone, PartialEq)]
pub struct CounterexampleParams {
    pub x0: f64,
    /// Highest level built; levels `0..=levels` get a flattened arc.
    pub levels: usize,
    /// Requested arc curvature per level, strictly decreasing and positive.
    pub curvatures: Vec<f64>,
    /// Profile constant in `y(t) = c/(eᵗ+1)`.
    pub c: f64,
}

impl CounterexampleParams {
    /// Default schedule `κₙ = xₙ⁵/10` and `c = 1`.
    pub fn new(x0: f64, levels: usize) -> Result<Self> {
        let curvatures = (0..=levels)
            .map(|n| 0.1 * (x0 / 4f64.powi(n as i32)).powi(5))
            .collect();
        Self::with_curvatures(x0, levels, curvatures)
    }

    pub fn with_curvatures(x0: f64, levels: usize, curvatures: Vec<f64>) -> Result<Self> {
        let p = CounterexampleParams {
            x0,
            levels,
            curvatures,
            c: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(HilbertError::ParameterRange(m));
        if !(self.x0 > 0.0 && self.x0 < 1.0) {
            return bad(format!("x0 = {} must lie in (0, 1)", self.x0));
        }
        if !(self.c > 0.0 && self.x0 < 1.0 / self.c) {
            return bad(format!("need c > 0 and x0 < 1/c (c = {})", self.c));
        }
        if self.curvatures.len() != self.levels + 1 {
            return bad(format!(
                "expected {} curvatures, got {}",
                self.levels + 1,
                self.curvatures.len()
            ));
        }
        if let Some(k) = self
            .curvatures
            .iter()
            .find(|k| !(**k > 0.0 && k.is_finite()))
        {
            return bad(format!("arc curvature {k} must be positive"));
        }
        if self.curvatures.windows(2).any(|w| w[1] >= w[0]) {
            return bad("arc curvatures must strictly decrease".into());
        }
        Ok(())
    }

    pub fn scale_at(&self, n: usize) -> f64 {
        self.x0 / 4f64.powi(n as i32)
    }

    /// `tₙ = log(c/xₙ³ − 1)`, where the chord height reaches `xₙ³`.
    pub fn contact_time(&self, n: usize) -> f64 {
        let x = self.scale_at(n);
        (self.c / (x * x * x) - 1.0).ln()
    }
}

/// Geometry of one flattened level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelInfo {
    pub n: usize,
    pub x_n: f64,
    pub b_n: f64,
    /// Secant slope `2xₙ²`.
    pub slope: f64,
    /// Secant intercept `−xₙ³`.
    pub intercept: f64,
    /// Curvature actually used (request capped by the gap bound).
    pub curvature: f64,
    /// Largest vertical gap between the arc and its secant.
    pub gap: f64,
    pub contact_time: f64,
    /// Smallest sampled curvature on the arc and the bridge just outside it.
    pub curvature_floor: f64,
}

/// The built domain together with its right and left lower-boundary arcs.
#[derive(Debug, Clone)]
pub struct CounterexampleDomain {
    params: CounterexampleParams,
    domain: ConvexDomain,
    levels: Vec<LevelInfo>,
    /// Lower boundary for `x ≥ 0`, by increasing `x`, starting with the central cubic.
    right: Vec<GraphArc>,
    /// Mirror images for `x ≤ 0`, by increasing `x`, ending with the central cubic.
    left: Vec<GraphArc>,
}

fn mirror(arc: &GraphArc) -> Result<GraphArc> {
    let (a, b) = arc.interval();
    let model = match arc.model() {
        ArcModel::ConstantCurvature { y0, y1, curvature } => ArcModel::ConstantCurvature {
            y0: y1,
            y1: y0,
            curvature,
        },
        ArcModel::Cubic { k } => ArcModel::Cubic { k },
        ArcModel::HermiteQuintic {
            y0,
            d0,
            s0,
            y1,
            d1,
            s1,
        } => ArcModel::HermiteQuintic {
            y0: y1,
            d0: -d1,
            s0: s1,
            y1: y0,
            d1: -d0,
            s1: s0,
        },
    };
    GraphArc::new(-b, -a, model)
}

fn jet_data(arc: &GraphArc, x: f64, exact_value: f64) -> [f64; 3] {
    let (_, d, s) = arc.jet(x);
    [exact_value, d, s]
}

fn min_curvature(arcs: &[GraphArc]) -> f64 {
    use crate::domain::Curve;
    arcs.iter()
        .flat_map(|a| (0..=64).map(move |i| a.signed_curvature(i as f64 / 64.0)))
        .fold(f64::INFINITY, f64::min)
}

pub fn build_counterexample_domain(params: &CounterexampleParams) -> Result<CounterexampleDomain> {
    params.validate()?;
    if params.c != 1.0 {
        return Err(HilbertError::ParameterRange(
            "the built domain realizes c = 1 only".into(),
        ));
    }
    let k_top = params.levels;
    let x0 = params.x0;
    let x_out = (2.0 * x0).min(0.5 * (x0 + 1.0));
    let x_in = params.scale_at(k_top + 1);

    let mut arcs = Vec::with_capacity(k_top + 1);
    let mut levels = Vec::with_capacity(k_top + 1);
    for n in 0..=k_top {
        let xn = params.scale_at(n);
        let bn = flat_segment_endpoint(xn);
        let slope = 2.0 * xn * xn;
        let chord_sq = (xn - bn) * (xn - bn) * (1.0 + slope * slope);
        let curvature = params.curvatures[n].min(8e-4 * xn * xn * xn / chord_sq);
        let arc = GraphArc::new(
            bn,
            xn,
            ArcModel::ConstantCurvature {
                y0: bn * bn * bn,
                y1: xn * xn * xn,
                curvature,
            },
        )?;
        levels.push(LevelInfo {
            n,
            x_n: xn,
            b_n: bn,
            slope,
            intercept: -xn * xn * xn,
            curvature,
            gap: curvature * chord_sq / 8.0,
            contact_time: params.contact_time(n),
            curvature_floor: 0.0,
        });
        arcs.push(arc);
    }

    let center = GraphArc::new(-x_in, x_in, ArcModel::Cubic { k: 1.0 })?;
    let cubic_jet = |x: f64| [x * x * x, 3.0 * x * x, 6.0 * x];
    let mut right = vec![center];
    let mut bridges: Vec<[GraphArc; 2]> = Vec::new();
    // innermost bridge: cubic at x_in to the deepest arc
    let deepest = &arcs[k_top];
    let data = InterpolationData {
        alpha: x_in,
        beta: levels[k_top].b_n,
        start: cubic_jet(x_in),
        end: jet_data(deepest, levels[k_top].b_n, levels[k_top].b_n.powi(3)),
    };
    let bridge = c2_interpolant(&data)?.pieces()?;
    right.extend(bridge);
    for n in (0..=k_top).rev() {
        right.push(arcs[n]);
        let xn = levels[n].x_n;
        let start = jet_data(&arcs[n], xn, xn * xn * xn);
        let data = if n > 0 {
            let b = levels[n - 1].b_n;
            InterpolationData {
                alpha: xn,
                beta: b,
                start,
                end: jet_data(&arcs[n - 1], b, b * b * b),
            }
        } else {
            InterpolationData {
                alpha: xn,
                beta: x_out,
                start,
                end: cubic_jet(x_out),
            }
        };
        let bridge = c2_interpolant(&data)?.pieces()?;
        bridges.push(bridge);
        right.extend(bridge);
    }
    right.push(GraphArc::new(x_out, 1.0, ArcModel::Cubic { k: 1.0 })?);

    // bridges were pushed from the deepest level outward
    for (info, bridge) in levels.iter_mut().rev().zip(&bridges) {
        let arc = arcs[info.n];
        info.curvature_floor = min_curvature(&[arc, bridge[0], bridge[1]]);
    }

    let mut left: Vec<GraphArc> = right[1..].iter().rev().map(mirror).collect::<Result<_>>()?;
    left.push(center);

    let mut pieces = vec![Piece::Segment(Segment {
        from: Point::new(1.0, 1.0),
        to: Point::new(-1.0, 1.0),
    })];
    pieces.extend(left[..left.len() - 1].iter().map(|a| Piece::Graph(*a)));
    pieces.push(Piece::Graph(center));
    pieces.extend(right[1..].iter().map(|a| Piece::Graph(*a)));
    let domain = ConvexDomain::piecewise(pieces)?;
    let cd = CounterexampleDomain {
        params: params.clone(),
        domain,
        levels,
        right,
        left,
    };
    if let Some(v) = cd.joint_violations().first() {
        return Err(HilbertError::ConvexityViolated(v.to_string()));
    }
    Ok(cd)
}

impl CounterexampleDomain {
    pub fn params(&self) -> &CounterexampleParams {
        &self.params
    }

    pub fn domain(&self) -> &ConvexDomain {
        &self.domain
    }

    pub fn levels(&self) -> &[LevelInfo] {
        &self.levels
    }

    pub(crate) fn right_arcs(&self) -> &[GraphArc] {
        &self.right
    }

    pub(crate) fn left_arcs(&self) -> &[GraphArc] {
        &self.left
    }

    /// Abscissas where consecutive lower-boundary arcs meet.
    pub fn joints(&self) -> Vec<f64> {
        self.left
            .iter()
            .chain(&self.right[1..])
            .skip(1)
            .map(|a| a.interval().0)
            .collect()
    }

    /// Lower-boundary joints whose value, slope or second derivative disagree
    /// (relative tolerances 1e-12, 1e-9, 1e-6), plus negative sampled curvature.
    pub fn joint_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let chain: Vec<&GraphArc> = self.left.iter().chain(&self.right[1..]).collect();
        for pair in chain.windows(2) {
            let x = pair[0].interval().1;
            let (a, b) = (pair[0].jet(x), pair[1].jet(x));
            let close = |p: f64, q: f64, tol: f64| {
                (p - q).abs() <= tol * p.abs().max(q.abs()).max(f64::MIN_POSITIVE)
            };
            if !(close(a.0, b.0, 1e-12) && close(a.1, b.1, 1e-9) && close(a.2, b.2, 1e-6)) {
                out.push(Violation::new(
                    format!("x = {x:e}"),
                    format!("arcs do not join C² ({a:?} vs {b:?})"),
                ));
            }
        }
        let k = min_curvature(&chain.iter().map(|a| **a).collect::<Vec<_>>());
        if k < -1e-10 {
            out.push(Violation::new(
                "lower boundary",
                format!("negative curvature {k:e}"),
            ));
        }
        out
    }

    /// The geodesics `y = x` and `y = −x` into the origin, with `f(0) = (½, ½)`.
    pub fn geodesic_pair(&self) -> Result<(crate::GeodesicLine, crate::GeodesicLine)> {
        pair_into_origin(&self.domain)
    }
}

fn pair_into_origin(domain: &ConvexDomain) -> Result<(crate::GeodesicLine, crate::GeodesicLine)> {
    let f = geodesic_through(domain, Point::new(0.5, 0.5), Point::new(0.25, 0.25))?;
    let g = geodesic_through(domain, Point::new(-0.5, 0.5), Point::new(-0.25, 0.25))?;
    Ok((f, g))
}

/// Convexity report of the unmodified cubic domain on `[0, t_max]` with step `delta`.
pub fn reference_cubic_report(t_max: f64, delta: f64, tol: f64) -> Result<ConvexityReport> {
    let domain = ConvexDomain::cubic_graph(1.0)?;
    let (f, g) = pair_into_origin(&domain)?;
    let n = (t_max / delta).round() as usize + 1;
    let profile = distance_profile(&domain, &f, &g, 0.0, t_max, n)?;
    Ok(convexity_report(&profile, tol))
}
