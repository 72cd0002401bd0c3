//! Extended-precision sampling of the counterexample profile near each contact time.
//!
//! The non-convexity at level `n` lives in a `t`-window of width about `xₙ³` where
//! `D″ ≈ −2xₙ⁵`, far below what double-precision second differences can resolve.

use super::CounterexampleDomain;
use crate::domain::GraphArc;
use crate::hp::Hp;
use crate::roots::bracketed_root;
use crate::{HilbertError, Result};

/// Sampling request: `2·half_count + 1` points spaced `step` apart around `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub level: usize,
    pub center: f64,
    pub step: f64,
    pub half_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeWindow {
    pub level: usize,
    pub start: f64,
    pub end: f64,
    pub step: f64,
    pub min_second_difference: f64,
    /// Grid point where the minimum occurs.
    pub argmin: f64,
    pub negative_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonconvexityReport {
    pub windows: Vec<ProbeWindow>,
    /// Every probed window contains a strictly negative second difference.
    pub every_window_negative: bool,
}

impl CounterexampleDomain {
    /// One probe per level: 65 points spaced `xₙ³/8` centered on `tₙ`.
    pub fn default_probes(&self) -> Vec<Probe> {
        self.levels()
            .iter()
            .map(|l| Probe {
                level: l.n,
                center: l.contact_time,
                step: l.x_n.powi(3) / 8.0,
                half_count: 32,
            })
            .collect()
    }
}

struct Side {
    arcs: Vec<(GraphArc, f64, f64, Hp, Hp)>,
}

impl Side {
    /// Arcs restricted to one half-plane (`sign` of x), with their end values in high precision.
    fn new(arcs: &[GraphArc], sign: f64) -> Side {
        let arcs = arcs
            .iter()
            .map(|a| {
                let (mut lo, mut hi) = a.interval();
                if sign > 0.0 {
                    lo = lo.max(0.0);
                } else {
                    hi = hi.min(0.0);
                }
                let (vl, vh) = (a.value_hp(&Hp::from_f64(lo)), a.value_hp(&Hp::from_f64(hi)));
                let (vmin, vmax) = if vl <= vh { (vl, vh) } else { (vh, vl) };
                (*a, lo, hi, vmin, vmax)
            })
            .collect();
        Side { arcs }
    }

    /// Abscissa where the lower boundary reaches height `y`.
    fn solve(&self, y: &Hp) -> Result<Hp> {
        let (arc, lo, hi) = self
            .arcs
            .iter()
            .find(|(_, _, _, vmin, vmax)| vmin <= y && y <= vmax)
            .map(|(a, lo, hi, _, _)| (a, *lo, *hi))
            .ok_or_else(|| {
                HilbertError::SolverDidNotConverge("height outside the lower boundary".into())
            })?;
        let yd = y.to_f64();
        let r = |x: f64| arc.value(x) - yd;
        let (rl, rh) = (r(lo), r(hi));
        let guess = if rl.signum() == rh.signum() {
            if rl.abs() < rh.abs() {
                lo
            } else {
                hi
            }
        } else {
            bracketed_root(r, lo, hi, rl, rh)
        };
        let mut x = Hp::from_f64(guess);
        let tiny = Hp::from_f64(2f64.powi(-170));
        for _ in 0..12 {
            let step = &(&arc.value_hp(&x) - y) / &arc.slope_hp(&x);
            x = &x - &step;
            if step.abs() <= &tiny * &x.abs() {
                return Ok(x);
            }
        }
        Err(HilbertError::SolverDidNotConverge(
            "boundary abscissa did not converge".into(),
        ))
    }
}

/// `D(t)` for the chords `y = ±x` into the origin, at height `y = 1/(eᵗ+1)`.
fn profile_hp(right: &Side, left: &Side, t: &Hp) -> Result<Hp> {
    let one = Hp::from_f64(1.0);
    let y = &one / &(&t.exp() + &one);
    let x = right.solve(&y)?;
    let xl = left.solve(&y)?.abs();
    let term = |x: &Hp| (&(x + &y) / &(x - &y)).ln();
    Ok(term(&x) + term(&xl))
}

pub fn verify_nonconvexity(
    domain: &CounterexampleDomain,
    probes: &[Probe],
) -> Result<NonconvexityReport> {
    let right = Side::new(domain.right_arcs(), 1.0);
    let left = Side::new(domain.left_arcs(), -1.0);
    let mut windows = Vec::with_capacity(probes.len());
    for p in probes {
        if !(p.step > 0.0 && p.half_count >= 1) {
            return Err(HilbertError::ParameterRange(
                "probe needs a positive step and at least 3 points".into(),
            ));
        }
        let center = Hp::from_f64(p.center);
        let step = Hp::from_f64(p.step);
        let count = 2 * p.half_count + 1;
        let values = (0..count)
            .map(|k| {
                profile_hp(
                    &right,
                    &left,
                    &(&center + &(&step * (k as f64 - p.half_count as f64))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let h2 = &step * &step;
        let mut min = f64::INFINITY;
        let mut argmin = p.center;
        let mut negative_count = 0;
        for k in 1..count - 1 {
            let sd = (&(&(&values[k - 1] - &(&values[k] * 2.0)) + &values[k + 1]) / &h2).to_f64();
            if sd < 0.0 {
                negative_count += 1;
            }
            if sd < min {
                min = sd;
                argmin = p.center + p.step * (k as f64 - p.half_count as f64);
            }
        }
        let half = p.step * p.half_count as f64;
        windows.push(ProbeWindow {
            level: p.level,
            start: p.center - half,
            end: p.center + half,
            step: p.step,
            min_second_difference: min,
            argmin,
            negative_count,
        });
    }
    let every_window_negative = windows.iter().all(|w| w.min_second_difference < 0.0);
    Ok(NonconvexityReport {
        windows,
        every_window_negative,
    })
}
