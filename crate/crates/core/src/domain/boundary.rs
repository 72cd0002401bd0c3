//! Chords and validation for boundaries made of parametric pieces.

use super::{angle_between, turning_ok, BoundaryLocation, Frame, Piece, Violation};
use crate::projective::{HomLine, Point};
use crate::roots::{bracketed_root, golden_min};
use crate::{HilbertError, Result};

const SAMPLES: usize = 1024;
const TANGENT_TOL: f64 = 1e-9;
const CURVATURE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Joint {
    Smooth,
    Corner,
    Reflex,
}

/// Classifies the joint where `a` ends and `b` begins.
pub(super) fn joint_kind(a: &Piece, b: &Piece) -> Joint {
    let ta = a.curve().d1(1.0);
    let tb = b.curve().d1(0.0);
    let turn = angle_between(ta, tb);
    if turn.abs() <= TANGENT_TOL {
        Joint::Smooth
    } else if turn > 0.0 {
        Joint::Corner
    } else {
        Joint::Reflex
    }
}

fn pos_rel(pieces: &[Piece], frame: &Frame, j: usize, s: f64) -> Point {
    match frame.anchor {
        Some(BoundaryLocation::Piece { index, s: s_ref }) if index == j => {
            pieces[j].curve().offset(s, s_ref)
        }
        _ => pieces[j].curve().position(s) - frame.origin,
    }
}

// A crossing sitting on a closed piece's seam can leave a bracket whose ends agree in sign
// because position(1) and position(0) differ by rounding; the closer end is then the root.
fn root_or_nearest(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (fa, fb) = (f(a), f(b));
    if fa != 0.0 && fb != 0.0 && fa.signum() == fb.signum() {
        return if fa.abs() <= fb.abs() { a } else { b };
    }
    bracketed_root(f, a, b, fa, fb)
}

struct Walk<'a> {
    pieces: &'a [Piece],
    frame: &'a Frame,
    line: &'a HomLine,
    n: usize,
}

impl Walk<'_> {
    // global parameter g ∈ [0, n) → (piece, s); values outside wrap around
    fn split(&self, g: f64) -> (usize, f64) {
        let n = self.n as f64;
        let g = g.rem_euclid(n);
        let j = (g.floor() as usize).min(self.n - 1);
        (j, (g - j as f64).clamp(0.0, 1.0))
    }

    fn residual_at(&self, j: usize, s: f64) -> f64 {
        self.line.eval(pos_rel(self.pieces, self.frame, j, s))
    }

    fn residual(&self, g: f64) -> f64 {
        let (j, s) = self.split(g);
        self.residual_at(j, s)
    }

    /// Root of the residual between global parameters `ga < gb` with opposite signs.
    fn root_between(&self, ga: f64, gb: f64) -> (usize, f64, Point) {
        let (ja, sa) = self.split(ga);
        let (jb, sb) = self.split(gb);
        let (j, s0, s1) = if ja == jb && sb >= sa {
            (ja, sa, sb)
        } else {
            // spans the end of piece ja: decide which side of the joint holds the root
            let ra = self.residual_at(ja, sa);
            let r_end = self.residual_at(ja, 1.0);
            if r_end == 0.0 {
                return (ja, 1.0, pos_rel(self.pieces, self.frame, ja, 1.0));
            }
            if ra.signum() != r_end.signum() {
                (ja, sa, 1.0)
            } else {
                (jb, 0.0, sb)
            }
        };
        match self.frame.anchor {
            // solve for the parameter step from the anchor so points near it keep relative precision
            Some(BoundaryLocation::Piece { index, s: s_ref }) if index == j => {
                let curve = self.pieces[j].curve();
                let f = |ds: f64| self.line.eval(curve.offset_by(ds, s_ref));
                let (d0, d1) = (s0 - s_ref, s1 - s_ref);
                let ds = root_or_nearest(f, d0, d1);
                (j, s_ref + ds, curve.offset_by(ds, s_ref))
            }
            _ => {
                let f = |s: f64| self.residual_at(j, s);
                let s = root_or_nearest(f, s0, s1);
                (j, s, pos_rel(self.pieces, self.frame, j, s))
            }
        }
    }
}

pub(super) fn chord_rel(
    pieces: &[Piece],
    frame: &Frame,
    line: &HomLine,
) -> Result<[(Point, BoundaryLocation); 2]> {
    let n = pieces.len();
    let walk = Walk {
        pieces,
        frame,
        line,
        n,
    };
    let m = (SAMPLES / n).max(16);
    let total = n * m;
    let step = 1.0 / m as f64;
    let grid: Vec<f64> = (0..total)
        .map(|i| (i / m) as f64 + (i % m) as f64 * step)
        .collect();
    let vals: Vec<f64> = grid.iter().map(|g| walk.residual(*g)).collect();
    let argmin = (0..total)
        .min_by(|a, b| vals[*a].total_cmp(&vals[*b]))
        .expect("samples");
    let argmax = (0..total)
        .max_by(|a, b| vals[*a].total_cmp(&vals[*b]))
        .expect("samples");
    let nf = n as f64;
    let refine = |idx: usize, sign: f64| -> (f64, f64) {
        let lo = grid[idx] - step;
        let hi = grid[idx] + step;
        let (g, v) = golden_min(|g| sign * walk.residual(g), lo, hi);
        if v < sign * vals[idx] {
            (g.rem_euclid(nf), sign * v)
        } else {
            (grid[idx], vals[idx])
        }
    };
    let (g_min, r_min) = refine(argmin, 1.0);
    let (g_max, r_max) = refine(argmax, -1.0);
    if !(r_min < 0.0 && r_max > 0.0) {
        return Err(HilbertError::LineMissesDomain);
    }
    // walk forward from `from` to `to` (cyclically) and bracket the single sign change
    let crossing = |from: f64, to: f64| -> (usize, f64, Point) {
        let to = if to <= from { to + nf } else { to };
        let mut prev = from;
        let mut prev_r = walk.residual(from);
        let start = ((from * m as f64).floor() as usize) + 1;
        let mut i = start;
        loop {
            let g = (i as f64 / m as f64).min(to);
            let r = walk.residual(g);
            if r == 0.0 || r.signum() != prev_r.signum() || g >= to {
                if prev_r == 0.0 {
                    let (j, s) = walk.split(prev);
                    return (j, s, pos_rel(pieces, frame, j, s));
                }
                return walk.root_between(prev, g);
            }
            prev = g;
            prev_r = r;
            i += 1;
        }
    };
    let (j1, s1, p1) = crossing(g_min, g_max);
    let (j2, s2, p2) = crossing(g_max, g_min);

    let a = (p1, BoundaryLocation::Piece { index: j1, s: s1 });
    let b = (p2, BoundaryLocation::Piece { index: j2, s: s2 });
    let dir = line.direction();
    if p1.dot(dir) <= p2.dot(dir) {
        Ok([a, b])
    } else {
        Ok([b, a])
    }
}

pub(super) fn validate_pieces(pieces: &[Piece]) -> Vec<Violation> {
    let mut out = Vec::new();
    let n = pieces.len();
    if n == 0 {
        out.push(Violation::new("pieces", "boundary has no pieces"));
        return out;
    }
    let closed_single = n == 1 && pieces[0].curve().is_closed();
    if n == 1 && !closed_single {
        out.push(Violation::new(
            "piece 0",
            "a single piece must be a closed curve",
        ));
        return out;
    }
    let scale = pieces
        .iter()
        .flat_map(|p| [p.start(), p.end()])
        .fold(1.0_f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
    let mut turning = 0.0;
    for (j, piece) in pieces.iter().enumerate() {
        let c = piece.curve();
        let samples = 64;
        let mut prev_dir = c.d1(0.0);
        for i in 0..=samples {
            let s = i as f64 / samples as f64;
            let p = c.position(s);
            if !p.is_finite() {
                out.push(Violation::new(
                    format!("piece {j}"),
                    "non-finite boundary point",
                ));
                return out;
            }
            if !piece.is_segment() {
                let k = c.signed_curvature(s);
                if k < -1e-10 {
                    out.push(Violation::new(
                        format!("piece {j}, s = {s}"),
                        format!("negative curvature {k:e}"),
                    ));
                }
            }
            let d = c.d1(s);
            if d.norm() == 0.0 {
                out.push(Violation::new(
                    format!("piece {j}, s = {s}"),
                    "vanishing tangent",
                ));
                return out;
            }
            if i > 0 {
                turning += angle_between(prev_dir, d);
            }
            prev_dir = d;
        }
        if closed_single {
            continue;
        }
        let next = &pieces[(j + 1) % n];
        let gap = piece.end().dist(next.start());
        if gap > 1e-12 * scale {
            out.push(Violation::new(
                format!("joint {j}"),
                format!(
                    "pieces {j} and {} do not share an endpoint (gap {gap:e})",
                    (j + 1) % n
                ),
            ));
            continue;
        }
        let turn = angle_between(c.d1(1.0), next.curve().d1(0.0));
        turning += turn;
        match joint_kind(piece, next) {
            Joint::Reflex => out.push(Violation::new(
                format!("joint {j}"),
                format!("non-convex at joint {j}"),
            )),
            Joint::Corner => {}
            Joint::Smooth => {
                let k0 = c.signed_curvature(1.0);
                let k1 = next.curve().signed_curvature(0.0);
                if (k0 - k1).abs() > CURVATURE_TOL * k0.abs().max(k1.abs()).max(1.0) {
                    out.push(Violation::new(
                        format!("joint {j}"),
                        format!("second derivatives disagree at joint {j} ({k0:e} vs {k1:e})"),
                    ));
                }
            }
        }
    }
    if closed_single {
        turning += angle_between(pieces[0].curve().d1(1.0), pieces[0].curve().d1(0.0));
    }
    if !turning_ok(turning) {
        out.push(Violation::new(
            "boundary",
            format!("total turning {turning} is not one counterclockwise turn"),
        ));
    }
    out
}
