//! Closed-form profiles used as oracles for the sampler.

use crate::domain::{BoundaryLocation, BoundaryPoint, ConvexDomain};
use crate::metric::GeodesicLine;
use crate::projective::Point;
use crate::{HilbertError, Result};

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// `E(t) = 1/(eᵗ + 1)`, the normalized Euclidean gap to the forward endpoint.
pub fn normalized_gap(t: f64) -> f64 {
    if t >= 0.0 {
        let e = (-t).exp();
        e / (1.0 + e)
    } else {
        1.0 / (t.exp() + 1.0)
    }
}

/// `(E, E′, E″)` at `t`.
fn gap_jet(t: f64) -> (f64, f64, f64) {
    let e = normalized_gap(t);
    let v = normalized_gap(-t); // 1 − E without cancellation
    let d1 = -e * v;
    (e, d1, e * v * (v - e))
}

/// Parameters of `φ(t) = log (β + (α + ½)E(t)) / (β + (α − ½)E(t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiParams {
    pub alpha: f64,
    pub beta: f64,
}

impl PhiParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(beta > 0.0 && beta.is_finite() && alpha.is_finite()) {
            return Err(HilbertError::ParameterRange(format!(
                "beta = {beta} must be positive"
            )));
        }
        Ok(PhiParams { alpha, beta })
    }

    fn denominators(&self, e: f64) -> Result<(f64, f64)> {
        let n = self.beta + (self.alpha + 0.5) * e;
        let m = self.beta + (self.alpha - 0.5) * e;
        if n > 0.0 && m > 0.0 {
            Ok((n, m))
        } else {
            Err(HilbertError::DenominatorNonpositive)
        }
    }
}

pub fn phi_value(p: PhiParams, t: f64) -> Result<f64> {
    let e = normalized_gap(t);
    let (_, m) = p.denominators(e)?;
    // log(N/M) = log1p(E/M) since N − M = E
    Ok((e / m).ln_1p())
}

/// `φ″(t) = Φ / (N M)²` with `N, M = β + (α ± ½)E` and
/// `Φ = β [E″ N M − (α + ½) E′² M − (α − ½) E′² N]`.
pub fn phi_second(p: PhiParams, t: f64) -> Result<f64> {
    let (e, d1, d2) = gap_jet(t);
    let (n, m) = p.denominators(e)?;
    let d1sq = d1 * d1;
    let numerator = p.beta * (d2 * n * m - (p.alpha + 0.5) * d1sq * m - (p.alpha - 0.5) * d1sq * n);
    Ok(numerator / (n * m * n * m))
}

/// Smallest grid point of `[0, t_max]` (step 0.01) from which `φ″ > 0` on the rest of the grid.
pub fn phi_convexity_onset(p: PhiParams, t_max: f64) -> Result<Option<f64>> {
    let n = (t_max / 0.01).round() as usize;
    let mut onset = None;
    for i in (0..=n).rev() {
        let t = i as f64 * 0.01;
        if phi_second(p, t)? > 0.0 {
            onset = Some(t);
        } else {
            break;
        }
    }
    Ok(onset)
}

/// Configurations with a known profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedFormKind {
    /// Parallel chords `x = 1`, `x = 0` of the trapezoid `(−1,0), (2,0), (3,1), (−2,1)`.
    ParallelChords,
    /// Chords `y = x` and `y = 1 − x` of the same trapezoid, crossing at `(½, ½)`.
    CrossingChords,
    /// Polygon with edges through ξ = 0 of slopes given by `alpha` and `alpha_prime`,
    /// the right edge offset by `beta`.
    EdgePoint {
        alpha: f64,
        beta: f64,
        alpha_prime: f64,
    },
}

fn check_case1(alpha: f64, beta: f64, alpha_prime: f64) -> Result<()> {
    if !(alpha_prime > 1.0 / 3f64.sqrt()) {
        return Err(HilbertError::ParameterRange(format!(
            "alpha' = {alpha_prime} must exceed 1/√3"
        )));
    }
    if !(beta > 0.0) {
        return Err(HilbertError::ParameterRange(format!(
            "beta = {beta} must be positive"
        )));
    }
    if !alpha.is_finite() || !beta.is_finite() || !alpha_prime.is_finite() {
        return Err(HilbertError::ParameterRange(
            "parameters must be finite".into(),
        ));
    }
    Ok(())
}

/// `h(f(t), g(t))` for the configuration `kind`.
pub fn closed_form_example(kind: ClosedFormKind, t: f64) -> Result<f64> {
    let e = normalized_gap(t);
    match kind {
        ClosedFormKind::ParallelChords => Ok(2.0 * (1.0 / (1.0 + e)).ln_1p()),
        ClosedFormKind::CrossingChords => Ok(2.0 * (2.0 / (1.0 + 2.0 * e)).ln()),
        ClosedFormKind::EdgePoint {
            alpha,
            beta,
            alpha_prime,
        } => {
            check_case1(alpha, beta, alpha_prime)?;
            let a = alpha_prime * SQRT3_2;
            let log_a_prime = (1.0 / (a - 0.5)).ln_1p();
            Ok(phi_value(PhiParams::new(alpha * SQRT3_2, beta)?, t)? + log_a_prime)
        }
    }
}

fn example_trapezoid() -> ConvexDomain {
    ConvexDomain::polygon(vec![
        Point::new(-1.0, 0.0),
        Point::new(2.0, 0.0),
        Point::new(3.0, 1.0),
        Point::new(-2.0, 1.0),
    ])
    .expect("trapezoid is convex")
}

fn on_edge(point: Point, index: usize, s: f64) -> BoundaryPoint {
    BoundaryPoint {
        point,
        location: BoundaryLocation::Edge { index, s },
    }
}

/// Domain and geodesic pair realizing `kind`.
pub fn closed_form_setup(
    kind: ClosedFormKind,
) -> Result<(ConvexDomain, GeodesicLine, GeodesicLine)> {
    match kind {
        ClosedFormKind::ParallelChords => {
            let d = example_trapezoid();
            let f = GeodesicLine::new(
                &d,
                on_edge(Point::new(1.0, 1.0), 2, 0.4),
                on_edge(Point::new(1.0, 0.0), 0, 2.0 / 3.0),
                0.5,
            )?;
            let g = GeodesicLine::new(
                &d,
                on_edge(Point::new(0.0, 1.0), 2, 0.6),
                on_edge(Point::new(0.0, 0.0), 0, 1.0 / 3.0),
                0.5,
            )?;
            Ok((d, f, g))
        }
        ClosedFormKind::CrossingChords => {
            let d = example_trapezoid();
            let f = GeodesicLine::new(
                &d,
                on_edge(Point::new(1.0, 1.0), 2, 0.4),
                on_edge(Point::new(0.0, 0.0), 0, 1.0 / 3.0),
                0.5,
            )?;
            let g = GeodesicLine::new(
                &d,
                on_edge(Point::new(0.0, 1.0), 2, 0.6),
                on_edge(Point::new(1.0, 0.0), 0, 2.0 / 3.0),
                0.5,
            )?;
            Ok((d, f, g))
        }
        ClosedFormKind::EdgePoint {
            alpha,
            beta,
            alpha_prime,
        } => edge_point_polygon(alpha, beta, alpha_prime),
    }
}

/// Quadrilateral with ξ = (0, 0) inside the edge `x = −α′y`, right edge `x = β + αy`, top
/// edge `y = √3/2`, and the pair `f`, `g` running from `(±½, √3/2)` to ξ with
/// `f(0) = (¼, √3/4)`, `g(0) = (−¼, √3/4)`.
pub fn edge_point_polygon(
    alpha: f64,
    beta: f64,
    alpha_prime: f64,
) -> Result<(ConvexDomain, GeodesicLine, GeodesicLine)> {
    check_case1(alpha, beta, alpha_prime)?;
    let right_top = alpha * SQRT3_2 + beta;
    if !(right_top > 0.5) {
        return Err(HilbertError::ParameterRange(
            "the right edge must meet the top edge beyond x = 1/2".into(),
        ));
    }
    let d = (0.5 * beta / (alpha + alpha_prime).max(1e-3)).min(0.5);
    let left_top = -alpha_prime * SQRT3_2;
    let domain = ConvexDomain::polygon(vec![
        Point::new(alpha_prime * d, -d),
        Point::new(beta - alpha * d, -d),
        Point::new(right_top, SQRT3_2),
        Point::new(left_top, SQRT3_2),
    ])?;
    let top_len = right_top - left_top;
    let start = |x: f64| on_edge(Point::new(x, SQRT3_2), 2, (right_top - x) / top_len);
    let xi = on_edge(Point::new(0.0, 0.0), 3, SQRT3_2 / (SQRT3_2 + d));
    let f = GeodesicLine::new(&domain, start(0.5), xi, 0.5)?;
    let g = GeodesicLine::new(&domain, start(-0.5), xi, 0.5)?;
    Ok((domain, f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotic::distance_profile;

    #[test]
    fn gap_and_phi_values() {
        assert_eq!(normalized_gap(0.0), 0.5);
        assert!((normalized_gap(3.0) + normalized_gap(-3.0) - 1.0).abs() < 1e-15);
        let p = PhiParams::new(0.5, 1.0).unwrap();
        assert!((phi_value(p, 0.0).unwrap() - 1.5f64.ln()).abs() < 1e-15);
        assert!(PhiParams::new(0.0, 0.0).is_err());
        assert_eq!(
            phi_value(PhiParams::new(-3.0, 0.1).unwrap(), 0.0),
            Err(HilbertError::DenominatorNonpositive)
        );
    }

    #[test]
    fn phi_second_matches_differences() {
        let h = 1e-3;
        for (a, b) in [(0.0, 1.0), (0.5, 0.3), (-0.2, 2.0), (3.0, 0.1)] {
            let p = PhiParams::new(a, b).unwrap();
            for t in [0.0, 1.0, 4.0, 9.0] {
                let fd = (phi_value(p, t + h).unwrap() - 2.0 * phi_value(p, t).unwrap()
                    + phi_value(p, t - h).unwrap())
                    / (h * h);
                assert!((phi_second(p, t).unwrap() - fd).abs() < 1e-6, "{a} {b} {t}");
            }
        }
    }

    #[test]
    fn example_values() {
        assert!(
            (closed_form_example(ClosedFormKind::ParallelChords, 0.0).unwrap()
                - 2.0 * (5.0f64 / 3.0).ln())
            .abs()
                < 1e-15
        );
        assert_eq!(
            closed_form_example(ClosedFormKind::CrossingChords, 0.0).unwrap(),
            0.0
        );
        assert!(
            (closed_form_example(ClosedFormKind::CrossingChords, 60.0).unwrap() - 2.0 * 2f64.ln()).abs()
                < 1e-15
        );
        let bad = ClosedFormKind::EdgePoint {
            alpha: 0.0,
            beta: 1.0,
            alpha_prime: 0.5,
        };
        assert!(closed_form_example(bad, 0.0).is_err());
    }

    #[test]
    fn setups_reproduce_closed_forms() {
        for kind in [
            ClosedFormKind::ParallelChords,
            ClosedFormKind::CrossingChords,
            ClosedFormKind::EdgePoint {
                alpha: 0.5,
                beta: 0.8,
                alpha_prime: 0.7,
            },
            ClosedFormKind::EdgePoint {
                alpha: -0.3,
                beta: 1.2,
                alpha_prime: 2.0,
            },
        ] {
            let (d, f, g) = closed_form_setup(kind).unwrap();
            let prof = distance_profile(&d, &f, &g, 0.0, 10.0, 101).unwrap();
            for (t, v) in prof.grid().iter().zip(prof.values()) {
                let want = closed_form_example(kind, *t).unwrap();
                assert!((v - want).abs() < 1e-12, "{kind:?} t = {t}: {v} vs {want}");
            }
        }
    }
}
