//! C² convex arcs with prescribed value, slope and second derivative at both ends.

use crate::domain::{ArcModel, GraphArc};
use crate::roots::bracketed_root;
use crate::{HilbertError, Result};

/// Endpoint jets `(σ, σ′, σ″)` at `α` and `β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationData {
    pub alpha: f64,
    pub beta: f64,
    pub start: [f64; 3],
    pub end: [f64; 3],
}

/// The sandwich `α⁽¹⁾(β−α) < β⁽⁰⁾−α⁽⁰⁾ < β⁽¹⁾(β−α)` and how much room each side leaves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Feasibility {
    pub holds: bool,
    /// `β⁽⁰⁾ − α⁽⁰⁾ − α⁽¹⁾(β − α)`.
    pub left_margin: f64,
    /// `β⁽¹⁾(β − α) − (β⁽⁰⁾ − α⁽⁰⁾)`.
    pub right_margin: f64,
}

pub fn feasibility_check(data: &InterpolationData) -> Feasibility {
    let len = data.beta - data.alpha;
    let rise = data.end[0] - data.start[0];
    let left_margin = rise - data.start[1] * len;
    let right_margin = data.end[1] * len - rise;
    Feasibility {
        holds: left_margin > 0.0 && right_margin > 0.0,
        left_margin,
        right_margin,
    }
}

impl InterpolationData {
    fn check_ordering(&self) -> Result<()> {
        let [a0, a1, a2] = self.start;
        let [b0, b1, b2] = self.end;
        let fail = |m: &str| Err(HilbertError::InfeasibleData(m.into()));
        if !(self.alpha < self.beta) {
            return fail("interval must satisfy α < β");
        }
        if !(0.0 < a0 && a0 < b0) {
            return fail("values must satisfy 0 < α⁽⁰⁾ < β⁽⁰⁾");
        }
        if !(0.0 < a1 && a1 < b1) {
            return fail("slopes must satisfy 0 < α⁽¹⁾ < β⁽¹⁾");
        }
        if !(a2 > 0.0 && b2 > 0.0) {
            return fail("second derivatives must be positive");
        }
        Ok(())
    }
}

/// `σ` on `[α, β]` whose derivative is a C¹ pair of cubic Hermite pieces meeting at a knot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C2Arc {
    data: InterpolationData,
    knot: f64,
    knot_jet: [f64; 3],
}

/// Knot placement for blend parameter `λ ∈ (0, 1)`: the knot sits at `β − λ(β − α)` with
/// slope `α⁽¹⁾ + λ(β⁽¹⁾ − α⁽¹⁾)`. Returns `(knot, slope, second derivative, ∫σ′)`.
fn blend(data: &InterpolationData, lambda: f64) -> (f64, f64, f64, f64) {
    let [_, a1, a2] = data.start;
    let [_, b1, b2] = data.end;
    let m = data.beta - lambda * (data.beta - data.alpha);
    let v = a1 + lambda * (b1 - a1);
    let (h1, h2) = (m - data.alpha, data.beta - m);
    let (d1, d2) = ((v - a1) / h1, (b1 - v) / h2);
    let sk = 2.0 * d1 * d2 / (d1 + d2);
    let integral = h1 * (a1 + v) / 2.0
        + h1 * h1 * (a2 - sk) / 12.0
        + h2 * (v + b1) / 2.0
        + h2 * h2 * (sk - b2) / 12.0;
    (m, v, sk, integral)
}

pub fn c2_interpolant(data: &InterpolationData) -> Result<C2Arc> {
    data.check_ordering()?;
    let feas = feasibility_check(data);
    if !feas.holds {
        return Err(HilbertError::InfeasibleData(format!(
            "secant sandwich fails (margins {:e}, {:e})",
            feas.left_margin, feas.right_margin
        )));
    }
    let rise = data.end[0] - data.start[0];
    let residual = |lambda: f64| blend(data, lambda).3 - rise;
    let (lo, hi) = (1e-9, 1.0 - 1e-9);
    let (r_lo, r_hi) = (residual(lo), residual(hi));
    if r_lo.signum() == r_hi.signum() {
        return Err(HilbertError::SolverDidNotConverge(
            "knot parameter has no bracket".into(),
        ));
    }
    let lambda = bracketed_root(residual, lo, hi, r_lo, r_hi);
    if residual(lambda).abs() > 1e-12 * rise.abs().max(f64::MIN_POSITIVE) {
        return Err(HilbertError::SolverDidNotConverge(format!(
            "integral residual {:e}",
            residual(lambda)
        )));
    }
    let (knot, v, sk, _) = blend(data, lambda);
    let h1 = knot - data.alpha;
    let knot_value =
        data.start[0] + h1 * (data.start[1] + v) / 2.0 + h1 * h1 * (data.start[2] - sk) / 12.0;
    let arc = C2Arc {
        data: *data,
        knot,
        knot_jet: [knot_value, v, sk],
    };
    let pieces = arc.pieces()?;
    let n = 1000;
    for i in 0..=n {
        let x = data.alpha + (data.beta - data.alpha) * i as f64 / n as f64;
        let piece = if x <= knot { &pieces[0] } else { &pieces[1] };
        if !(piece.jet(x).2 > 0.0) {
            return Err(HilbertError::InfeasibleData(format!(
                "second derivative not positive at x = {x:e}"
            )));
        }
    }
    Ok(arc)
}

impl C2Arc {
    pub fn data(&self) -> &InterpolationData {
        &self.data
    }

    pub fn knot(&self) -> f64 {
        self.knot
    }

    /// The two quintic Hermite graph arcs `[α, knot]` and `[knot, β]`.
    pub fn pieces(&self) -> Result<[GraphArc; 2]> {
        let d = &self.data;
        let [k0, k1, k2] = self.knot_jet;
        let left = ArcModel::HermiteQuintic {
            y0: d.start[0],
            d0: d.start[1],
            s0: d.start[2],
            y1: k0,
            d1: k1,
            s1: k2,
        };
        let right = ArcModel::HermiteQuintic {
            y0: k0,
            d0: k1,
            s0: k2,
            y1: d.end[0],
            d1: d.end[1],
            s1: d.end[2],
        };
        Ok([
            GraphArc::new(d.alpha, self.knot, left)?,
            GraphArc::new(self.knot, d.beta, right)?,
        ])
    }

    /// `(σ, σ′, σ″)` at `x`.
    pub fn jet(&self, x: f64) -> (f64, f64, f64) {
        let pieces = self.pieces().expect("validated at construction");
        if x <= self.knot {
            pieces[0].jet(x)
        } else {
            pieces[1].jet(x)
        }
    }

    /// `∫ σ′` over `[α, β]` by composite Gauss–Legendre on each piece.
    pub fn slope_integral(&self) -> f64 {
        const NODES: [(f64, f64); 3] = [
            (-0.774_596_669_241_483_4, 5.0 / 9.0),
            (0.0, 8.0 / 9.0),
            (0.774_596_669_241_483_4, 5.0 / 9.0),
        ];
        let pieces = self.pieces().expect("validated at construction");
        pieces
            .iter()
            .map(|p| {
                let (a, b) = p.interval();
                let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
                NODES
                    .iter()
                    .map(|(x, w)| w * p.jet(mid + half * x).1)
                    .sum::<f64>()
                    * half
            })
            .sum()
    }
}
