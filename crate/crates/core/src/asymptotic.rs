//! Asymptotic geodesic pairs, their distance profiles and convexity certificates.

use crate::domain::{BoundaryLocation, BoundaryPoint, ConvexDomain, Frame};
use crate::metric::{hilbert_distance_rel, GeodesicLine};
use crate::projective::{intersect, join, map_from_correspondence, HomLine, Point, ProjectiveMap};
use crate::{HilbertError, Result};

/// Forward endpoints closer than this count as the same boundary point.
pub const SHARED_ENDPOINT_TOL: f64 = 1e-10;
const PARALLEL_TOL: f64 = 1e-12;

/// The pencil of lines `L_t` used to synchronize a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilFrame {
    /// `L`, through both backward endpoints.
    pub base_line: HomLine,
    /// Support line at the shared forward endpoint.
    pub support: HomLine,
    /// `L ∩ support`; `None` when they are parallel and every `L_t` is parallel to `L`.
    pub center: Option<Point>,
}

impl PencilFrame {
    /// The member of the pencil through `p`.
    pub fn line_through(&self, p: Point) -> Result<HomLine> {
        match self.center {
            Some(c) => join(c, p),
            None => HomLine::through(p, self.base_line.direction()),
        }
    }
}

/// Two geodesics sharing their forward endpoint, with `f` synchronized to `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticPair {
    f: GeodesicLine,
    g: GeodesicLine,
    pencil: PencilFrame,
    normalizing: ProjectiveMap,
}

impl AsymptoticPair {
    pub fn f(&self) -> &GeodesicLine {
        &self.f
    }

    pub fn g(&self) -> &GeodesicLine {
        &self.g
    }

    /// The shared forward endpoint ξ.
    pub fn xi(&self) -> BoundaryPoint {
        self.g.forward()
    }

    pub fn pencil(&self) -> &PencilFrame {
        &self.pencil
    }

    /// Map sending the pencil center to infinity, so that every `L_t` becomes parallel to `L`.
    /// Identity when the support line is already parallel to `L`.
    pub fn normalizing_map(&self) -> &ProjectiveMap {
        &self.normalizing
    }

    /// Map sending ξ to the origin, the backward endpoints to `(±1/2, √3/2)` and
    /// `f(0)`, `g(0)` to the midpoints of the two sides.
    pub fn canonical_frame(&self) -> Result<ProjectiveMap> {
        let h = 3f64.sqrt() / 2.0;
        map_from_correspondence(
            [
                self.f.backward().point,
                self.g.backward().point,
                self.f.point_at(0.0),
                self.g.point_at(0.0),
            ],
            [
                Point::new(0.5, h),
                Point::new(-0.5, h),
                Point::new(0.25, h / 2.0),
                Point::new(-0.25, h / 2.0),
            ],
        )
    }

    pub fn profile(
        &self,
        domain: &ConvexDomain,
        t0: f64,
        t1: f64,
        n: usize,
    ) -> Result<DistanceProfile> {
        distance_profile(domain, &self.f, &self.g, t0, t1, n)
    }
}

fn check_asymptotic(f: &GeodesicLine, g: &GeodesicLine) -> Result<()> {
    let gap = f.forward().point.dist(g.forward().point);
    if !(gap < SHARED_ENDPOINT_TOL) {
        return Err(HilbertError::NotAsymptotic(format!(
            "forward endpoints are {gap:e} apart"
        )));
    }
    if f.backward().point.dist(g.backward().point) < SHARED_ENDPOINT_TOL {
        return Err(HilbertError::DegenerateConfiguration("Im f = Im g".into()));
    }
    Ok(())
}

/// Reparametrizes `f` so that `f(t)` lies on the pencil line through `g(t)`.
pub fn synchronize(
    domain: &ConvexDomain,
    f: &GeodesicLine,
    g: &GeodesicLine,
) -> Result<AsymptoticPair> {
    synchronize_with_support(domain, f, g, None)
}

/// As [`synchronize`], with an explicit support line at ξ (needed at polygon vertices).
pub fn synchronize_with_support(
    domain: &ConvexDomain,
    f: &GeodesicLine,
    g: &GeodesicLine,
    support: Option<HomLine>,
) -> Result<AsymptoticPair> {
    check_asymptotic(f, g)?;
    let xi = g.forward();
    let support = match support {
        Some(l) => l,
        None => domain.support_line(&xi)?,
    };
    let base_line = join(f.backward().point, g.backward().point)?;
    let center = if support.is_parallel_to(&base_line, PARALLEL_TOL) {
        None
    } else {
        intersect(&support, &base_line)
    };
    if center.is_some_and(|c| c.dist(xi.point) < SHARED_ENDPOINT_TOL) {
        return Err(HilbertError::DegenerateConfiguration(
            "backward endpoints are collinear with ξ".into(),
        ));
    }
    let pencil = PencilFrame {
        base_line,
        support,
        center,
    };

    let (fa, fb) = (f.backward().point, f.forward().point);
    let image_f = join(fa, fb)?;
    let g0 = g.point_at(0.0);
    let base = intersect(&pencil.line_through(g0)?, &image_f).ok_or_else(|| {
        HilbertError::DegenerateConfiguration("pencil line is parallel to Im f".into())
    })?;
    let chord = fb - fa;
    let u0 = (base - fa).dot(chord) / chord.dot(chord);
    if !(u0 > 0.0 && u0 < 1.0) {
        return Err(HilbertError::DegenerateConfiguration(
            "synchronized base point leaves the chord".into(),
        ));
    }
    let synced = GeodesicLine::from_parts(f.backward(), f.forward(), u0, base);

    let unit = crate::metric::hilbert_distance(domain, synced.point_at(0.0), synced.point_at(1.0))?;
    if (unit - 1.0).abs() > 1e-9 {
        return Err(HilbertError::SolverDidNotConverge(format!(
            "reparametrized f has speed {unit}"
        )));
    }

    let normalizing = match center {
        Some(c) => vanishing_map(domain, c, g0)?,
        None => ProjectiveMap::identity(),
    };
    Ok(AsymptoticPair {
        f: synced,
        g: *g,
        pencil,
        normalizing,
    })
}

/// Projective map whose vanishing line passes through `c` and misses the closed domain.
fn vanishing_map(domain: &ConvexDomain, c: Point, interior: Point) -> Result<ProjectiveMap> {
    let samples = match domain.as_polygon() {
        Some(p) => p.vertices().to_vec(),
        None => domain.boundary_samples(256),
    };
    let reference = interior - c;
    let angles: Vec<f64> = samples
        .iter()
        .map(|p| {
            let d = *p - c;
            reference.cross(d).atan2(reference.dot(d))
        })
        .collect();
    let lo = angles.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = angles.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mid = 0.5 * (lo + hi);
    let r = reference * (1.0 / reference.norm());
    let axis = Point::new(
        r.x * mid.cos() - r.y * mid.sin(),
        r.x * mid.sin() + r.y * mid.cos(),
    );
    let level = |p: Point| axis.dot(p - c);
    if samples.iter().any(|p| level(*p) <= 0.0) {
        return Err(HilbertError::VanishingLine);
    }
    let s = 1.0 / level(interior);
    ProjectiveMap::from_matrix([
        [1.0, 0.0, -interior.x],
        [0.0, 1.0, -interior.y],
        [axis.x * s, axis.y * s, -axis.dot(c) * s],
    ])
}

/// Samples of `D(t) = h(f(t), g(t))` on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceProfile {
    grid: Vec<f64>,
    values: Vec<f64>,
    step: f64,
}

impl DistanceProfile {
    /// Rebuilds a profile from stored samples, checking the grid is uniform.
    pub fn from_samples(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let n = grid.len();
        if n < 3 || values.len() != n {
            return Err(HilbertError::ParameterRange(
                "a profile needs at least 3 (t, D) samples".into(),
            ));
        }
        let step = (grid[n - 1] - grid[0]) / (n - 1) as f64;
        if !(step > 0.0) || !step.is_finite() {
            return Err(HilbertError::ParameterRange(
                "grid must be strictly increasing".into(),
            ));
        }
        for (i, t) in grid.iter().enumerate() {
            let expected = grid[0] + step * i as f64;
            if (t - expected).abs() > 1e-12 * t.abs().max(1.0) {
                return Err(HilbertError::ParameterRange(format!(
                    "grid is not uniform at index {i}"
                )));
            }
        }
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(HilbertError::ParameterRange(format!(
                "distance at index {i} is negative or not finite"
            )));
        }
        Ok(DistanceProfile { grid, values, step })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Central second differences at the interior grid points `1..n-1`.
    pub fn second_differences(&self) -> Vec<f64> {
        let h2 = self.step * self.step;
        self.values
            .windows(3)
            .map(|w| (w[0] - 2.0 * w[1] + w[2]) / h2)
            .collect()
    }
}

fn uniform_grid(t0: f64, t1: f64, n: usize) -> Result<Vec<f64>> {
    if !(t0 < t1) || !t0.is_finite() || !t1.is_finite() {
        return Err(HilbertError::ParameterRange(format!(
            "need t0 < t1, got [{t0}, {t1}]"
        )));
    }
    if n < 3 {
        return Err(HilbertError::ParameterRange(format!(
            "need at least 3 samples, got {n}"
        )));
    }
    let h = (t1 - t0) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i == n - 1 { t1 } else { t0 + h * i as f64 })
        .collect())
}

/// Samples `h(f(t), g(t))` at `n` uniform points of `[t0, t1]`.
///
/// When the forward endpoints coincide, both points are expressed relative to the shared
/// endpoint so that the profile keeps full precision as the points approach it.
pub fn distance_profile(
    domain: &ConvexDomain,
    f: &GeodesicLine,
    g: &GeodesicLine,
    t0: f64,
    t1: f64,
    n: usize,
) -> Result<DistanceProfile> {
    let grid = uniform_grid(t0, t1, n)?;
    let xi = f.forward();
    let shared = xi.point.dist(g.forward().point) < SHARED_ENDPOINT_TOL;
    let values = if shared {
        let frame = Frame::at(&xi);
        let drift = g.forward().point - xi.point;
        grid.iter()
            .map(|t| {
                hilbert_distance_rel(
                    domain,
                    &frame,
                    f.offset_from_forward(*t),
                    g.offset_from_forward(*t) + drift,
                )
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        grid.iter()
            .map(|t| hilbert_distance_rel(domain, &Frame::ABSOLUTE, f.point_at(*t), g.point_at(*t)))
            .collect::<Result<Vec<_>>>()?
    };
    DistanceProfile::from_samples(grid, values)
}

/// A maximal run of grid points whose second difference is below `-tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NegativeWindow {
    pub start: f64,
    pub end: f64,
    /// Most negative second difference in the run.
    pub min: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    /// Grid point from which every second difference is `≥ −tol`; `None` when the last one is negative.
    pub t_certified: Option<f64>,
    /// Minimum second difference on `[T, t_max]`, or over the whole grid when uncertified.
    pub min_second_difference: f64,
    pub windows: Vec<NegativeWindow>,
    pub tol: f64,
    /// Second differences at the interior grid points.
    pub second_differences: Vec<f64>,
}

pub fn convexity_report(profile: &DistanceProfile, tol: f64) -> ConvexityReport {
    let sd = profile.second_differences();
    let grid = profile.grid();
    let negative = |v: f64| v < -tol;
    // sd[i] belongs to grid point i + 1
    let last_bad = sd.iter().rposition(|v| negative(*v));
    let (t_certified, from) = match last_bad {
        None => (Some(grid[0]), 0),
        Some(j) if j + 1 == sd.len() => (None, 0),
        Some(j) => (Some(grid[j + 2]), j + 1),
    };
    let min_second_difference = sd[from..].iter().copied().fold(f64::INFINITY, f64::min);

    let mut windows = Vec::new();
    let mut i = 0;
    while i < sd.len() {
        if !negative(sd[i]) {
            i += 1;
            continue;
        }
        let start = i;
        let mut min = sd[i];
        while i < sd.len() && negative(sd[i]) {
            min = min.min(sd[i]);
            i += 1;
        }
        windows.push(NegativeWindow {
            start: grid[start + 1],
            end: grid[i],
            min,
        });
    }
    ConvexityReport {
        t_certified,
        min_second_difference,
        windows,
        tol,
        second_differences: sd,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    /// Mean of the last 10% of samples.
    pub value: f64,
    /// Total variation of the tail beyond its net change.
    pub oscillation: f64,
    /// `oscillation < 1e-6`.
    pub settles: bool,
}

/// Tail estimate of `lim D(t)`; needs samples up to at least `t = 10`.
pub fn limit_estimate(profile: &DistanceProfile) -> Result<LimitEstimate> {
    let t_max = *profile.grid().last().expect("nonempty profile");
    if t_max < 10.0 {
        return Err(HilbertError::ParameterRange(format!(
            "limit estimate needs t_max ≥ 10, got {t_max}"
        )));
    }
    let v = profile.values();
    let k = v.len().div_ceil(10).max(2);
    let tail = &v[v.len() - k..];
    let value = tail.iter().sum::<f64>() / k as f64;
    let variation: f64 = tail.windows(2).map(|w| (w[1] - w[0]).abs()).sum();
    let oscillation = (variation - (tail[k - 1] - tail[0]).abs()).max(0.0);
    Ok(LimitEstimate {
        value,
        oscillation,
        settles: oscillation < 1e-6,
    })
}

/// Minimum of `D` over `[0, t_max]` (step 0.05) for a pair asymptotic to a polygon vertex.
pub fn vertex_lower_bound_check(
    domain: &ConvexDomain,
    f: &GeodesicLine,
    g: &GeodesicLine,
    t_max: f64,
) -> Result<f64> {
    check_asymptotic(f, g)?;
    let polygon = domain.as_polygon().ok_or(HilbertError::NotAVertex)?;
    let xi = f.forward();
    let at_vertex = match xi.location {
        BoundaryLocation::Vertex(_) => true,
        _ => polygon
            .vertex_near(xi.point, 1e-12 * domain.scale())
            .is_some(),
    };
    if !at_vertex {
        return Err(HilbertError::NotAVertex);
    }
    let n = ((t_max / 0.05).round() as usize).max(2) + 1;
    let profile = distance_profile(domain, f, g, 0.0, t_max, n)?;
    Ok(profile
        .values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}
