//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use hilbert_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

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

fn cubic() -> ConvexDomain {
    ConvexDomain::cubic_graph(1.0).unwrap()
}

fn random_interior(rng: &mut ChaCha8Rng, k: usize) -> Point {
    match k {
        0 => {
            let (r, a) = (
                0.95 * rng.gen::<f64>().sqrt(),
                std::f64::consts::TAU * rng.gen::<f64>(),
            );
            Point::new(r * a.cos(), r * a.sin())
        }
        1 => {
            let y = rng.gen_range(0.05..0.95);
            Point::new(rng.gen_range(-0.95 - y..1.95 + y), y)
        }
        _ => {
            let x: f64 = rng.gen_range(-0.9..0.9);
            Point::new(x, rng.gen_range(x.abs().powi(3) + 0.02..0.98))
        }
    }
}

fn domain(k: usize) -> ConvexDomain {
    [disk, trapezoid, cubic][k]()
}

/// Pair through `p` and `q` into the boundary point hit from `p` toward `xi`, sharing that endpoint exactly.
fn pair_into(
    d: &ConvexDomain,
    p: Point,
    q: Point,
    xi: Point,
) -> Result<(GeodesicLine, GeodesicLine)> {
    let f = geodesic_through(d, p, p.lerp(xi, 0.5))?;
    let g0 = geodesic_through(d, q, q.lerp(f.forward().point, 0.5))?;
    let g = GeodesicLine::new(d, g0.backward(), f.forward(), g0.u0())?;
    Ok((f, g))
}

fn criterion1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut sym, mut slack) = (0.0f64, f64::INFINITY);
    for k in 0..3 {
        let d = domain(k);
        for _ in 0..1000 {
            let [p, q, r] = [0; 3].map(|_| random_interior(&mut rng, k));
            let pq = hilbert_distance(&d, p, q).unwrap();
            let qp = hilbert_distance(&d, q, p).unwrap();
            let pr = hilbert_distance(&d, p, r).unwrap();
            let qr = hilbert_distance(&d, q, r).unwrap();
            sym = sym.max((pq - qp).abs() / pq.max(1.0));
            slack = slack.min(pq + qr - pr);
        }
    }
    let closed = [0.1, 0.5, 0.9]
        .iter()
        .map(|r| {
            (hilbert_distance(&disk(), Point::new(0.0, 0.0), Point::new(*r, 0.0)).unwrap()
                - ((1.0 + r) / (1.0 - r)).ln())
            .abs()
        })
        .fold(0.0, f64::max);
    outcome(
        sym <= 1e-12 && slack >= -1e-9 && closed < 1e-12,
        format!("symmetry {sym:.1e}, triangle slack {slack:.1e}, disk closed form {closed:.1e}"),
    )
}

fn criterion2() -> Outcome {
    let strip = ConvexDomain::polygon(vec![
        Point::new(0.0, -1.0),
        Point::new(1.0, -1.0),
        Point::new(1.0, 1.0),
        Point::new(0.0, 1.0),
    ])
    .unwrap();
    let f = geodesic_through(&strip, Point::new(0.5, 0.0), Point::new(0.75, 0.0)).unwrap();
    let err = (0..400)
        .map(|i| {
            let t = 20.0 * i as f64 / 399.0;
            (f.euclid_gap(t).value - normalized_gap(t)).abs()
        })
        .fold(0.0, f64::max);
    outcome(
        err < 1e-10,
        format!("max |E(t) − 1/(eᵗ+1)| = {err:.1e} over 400 samples"),
    )
}

fn criterion3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let domains = [disk(), trapezoid(), cubic()];
    let mut worst = 0.0f64;
    let mut cases = 0;
    while cases < 500 {
        let k = rng.gen_range(0..3);
        let (p, q) = (random_interior(&mut rng, k), random_interior(&mut rng, k));
        if p.dist(q) < 1e-3 {
            continue;
        }
        let a: [f64; 4] = [0; 4].map(|_| rng.gen_range(-0.5..0.5));
        let s = if k == 1 { 1.0 / 3.5 } else { 1.0 };
        let m = ProjectiveMap::from_matrix([
            [1.0 + a[0], a[1], rng.gen_range(-0.5..0.5)],
            [a[2], 1.0 + a[3], rng.gen_range(-0.5..0.5)],
            [
                s * rng.gen_range(-0.3..0.3),
                s * rng.gen_range(-0.3..0.3),
                1.0,
            ],
        ]);
        let Ok(m) = m else { continue };
        let Ok(image) = domains[k].transform(&m) else {
            continue;
        };
        let before = hilbert_distance(&domains[k], p, q).unwrap();
        let after = hilbert_distance(&image, m.apply(p).unwrap(), m.apply(q).unwrap()).unwrap();
        worst = worst.max((after - before).abs() / before);
        cases += 1;
    }
    outcome(
        worst < 1e-8,
        format!("500 cases, worst relative change {worst:.1e}"),
    )
}

fn ellipse_pair() -> (ConvexDomain, GeodesicLine, GeodesicLine) {
    let d = ConvexDomain::ellipse(Point::new(0.0, 1.0), 1.5, 1.0).unwrap();
    let (f, g) = pair_into(
        &d,
        Point::new(0.3, 0.8),
        Point::new(-0.5, 1.2),
        Point::new(0.0, 0.0),
    )
    .unwrap();
    (d, f, g)
}

fn criterion4() -> Outcome {
    // D decays like e^{-t/2}, so the 1e-3 bound at t = 10 calls for a pair starting near D ≈ 0.1
    let d = ConvexDomain::ellipse(Point::new(0.0, 1.0), 1.5, 1.0).unwrap();
    let (f, g) = pair_into(
        &d,
        Point::new(0.02, 1.5),
        Point::new(-0.02, 1.5),
        Point::new(0.0, 0.0),
    )
    .unwrap();
    let pair = synchronize(&d, &f, &g).unwrap();
    let prof = pair.profile(&d, 0.0, 10.0, 201).unwrap();
    let v = prof.values();
    let decreasing = prof
        .grid()
        .iter()
        .zip(v.windows(2))
        .filter(|(t, _)| **t >= 2.0)
        .all(|(_, w)| w[1] < w[0]);
    let rate = (v[100] / v[200]).ln() / 5.0;
    let lim = limit_estimate(&prof).unwrap();
    outcome(
        decreasing && lim.value < 1e-3 && (rate - 0.5).abs() < 0.01,
        format!(
            "D(0) {:.2e}, strictly decreasing on [2, 10]: {decreasing}, decay rate {rate:.4}, limit estimate {:.2e}",
            v[0], lim.value
        ),
    )
}

fn criterion5() -> Outcome {
    let sq = ConvexDomain::polygon(vec![
        Point::new(-1.0, -1.0),
        Point::new(1.0, -1.0),
        Point::new(1.0, 1.0),
        Point::new(-1.0, 1.0),
    ])
    .unwrap();
    let corner = BoundaryPoint {
        point: Point::new(1.0, 1.0),
        location: BoundaryLocation::Vertex(2),
    };
    let left = BoundaryPoint {
        point: Point::new(-1.0, 0.0),
        location: BoundaryLocation::Edge { index: 3, s: 0.5 },
    };
    let bottom = BoundaryPoint {
        point: Point::new(0.0, -1.0),
        location: BoundaryLocation::Edge { index: 0, s: 0.5 },
    };
    let f = GeodesicLine::new(&sq, left, corner, 0.5).unwrap();
    let g = GeodesicLine::new(&sq, bottom, corner, 0.5).unwrap();
    // both support lines through the corner are edges; sine ratio 1 on each side
    let floor = 2.0 * 2f64.ln();
    let m = vertex_lower_bound_check(&sq, &f, &g, 15.0).unwrap();
    outcome(
        m >= floor * (1.0 - 1e-12),
        format!("min D on [0, 15] = {m:.12}, floor 2 log 2 = {floor:.12}"),
    )
}

fn random_polygon(rng: &mut ChaCha8Rng) -> ConvexDomain {
    let n = rng.gen_range(5..=10);
    loop {
        let mut angles: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let (rx, ry) = (rng.gen_range(0.8..1.5), rng.gen_range(0.8..1.5));
        let v: Vec<Point> = angles
            .iter()
            .map(|a| Point::new(rx * a.cos(), ry * a.sin()))
            .collect();
        if let Ok(d) = ConvexDomain::polygon(v) {
            return d;
        }
    }
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    let mut uncertified = 0;
    let mut built = 0;
    while built < 20 {
        let d = random_polygon(&mut rng);
        let poly = d.as_polygon().unwrap();
        let i = rng.gen_range(0..poly.vertices().len());
        let (a, b) = poly.edge(i);
        let xi = a.lerp(b, rng.gen_range(0.2..0.8));
        let c = Point::new(0.0, 0.0);
        let p = c.lerp(a, rng.gen_range(0.0..0.6));
        let q = c.lerp(b, rng.gen_range(0.0..0.6));
        let Ok((f, g)) = pair_into(&d, p, q, xi) else {
            continue;
        };
        if !matches!(f.forward().location, BoundaryLocation::Edge { .. }) {
            continue;
        }
        let prof = distance_profile(&d, &f, &g, 0.0, 25.0, 501).unwrap();
        match convexity_report(&prof, 1e-9).t_certified {
            Some(t) => worst = worst.max(t),
            None => uncertified += 1,
        }
        built += 1;
    }
    outcome(
        uncertified == 0 && worst <= 15.0,
        format!("20 polygons, worst T_certified {worst:.2}, uncertified {uncertified}"),
    )
}

fn criterion7() -> Outcome {
    let (d, f, g) = ellipse_pair();
    let prof = distance_profile(&d, &f, &g, 0.0, 25.0, 501).unwrap();
    let t_ellipse = convexity_report(&prof, 1e-9).t_certified;
    let mut worst = 0.0f64;
    let mut onsets = 0;
    let h = 1e-3;
    for alpha in [0.5, 0.75, 1.0, 1.5, 2.0] {
        for beta in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let p = PhiParams::new(alpha, beta).unwrap();
            for i in 0..20 {
                let t = 0.5 * i as f64;
                let fd = (phi_value(p, t + h).unwrap() - 2.0 * phi_value(p, t).unwrap()
                    + phi_value(p, t - h).unwrap())
                    / (h * h);
                worst = worst.max((phi_second(p, t).unwrap() - fd).abs() / fd.abs().max(1.0));
            }
            if phi_convexity_onset(p, 25.0).unwrap().is_some() {
                onsets += 1;
            }
        }
    }
    outcome(
        t_ellipse.is_some() && worst < 1e-6 && onsets == 25,
        format!("ellipse T_certified {t_ellipse:?}, φ″ vs differences {worst:.1e} on 500 points, onset found {onsets}/25"),
    )
}

fn criterion8() -> Outcome {
    let mut worst = 0.0f64;
    let mut all_negative = true;
    for kind in [ClosedFormKind::ParallelChords, ClosedFormKind::CrossingChords] {
        let (d, f, g) = closed_form_setup(kind).unwrap();
        let prof = distance_profile(&d, &f, &g, 0.0, 10.0, 201).unwrap();
        for (t, v) in prof.grid().iter().zip(prof.values()) {
            worst = worst.max((v - closed_form_example(kind, *t).unwrap()).abs());
        }
        let sd = prof.second_differences();
        all_negative &= prof.grid()[1..prof.len() - 1]
            .iter()
            .zip(&sd)
            .filter(|(t, _)| **t >= 2.0)
            .all(|(_, s)| *s < 0.0);
    }
    outcome(
        worst < 1e-9 && all_negative,
        format!(
            "max deviation {worst:.1e}, all second differences on [2, 10] negative: {all_negative}"
        ),
    )
}

fn criterion9() -> Outcome {
    let mut worst = 0.0f64;
    for (alpha, beta, alpha_prime) in [
        (0.0, 1.0, 1.0),
        (0.5, 0.8, 0.7),
        (-0.3, 1.2, 2.0),
        (1.0, 0.4, 0.6),
        (0.2, 0.5, 1.5),
    ] {
        let kind = ClosedFormKind::EdgePoint {
            alpha,
            beta,
            alpha_prime,
        };
        let (d, f, g) = closed_form_setup(kind).unwrap();
        let prof = distance_profile(&d, &f, &g, 0.0, 10.0, 201).unwrap();
        for (t, v) in prof.grid().iter().zip(prof.values()) {
            worst = worst.max((v - closed_form_example(kind, *t).unwrap()).abs());
        }
    }
    outcome(
        worst < 1e-9,
        format!("5 parameter choices, max deviation {worst:.1e}"),
    )
}

fn criterion10() -> Outcome {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let ratio_err = (0..=6)
        .map(|n| 0.25 / 4f64.powi(n))
        .map(|x| (flat_segment_endpoint(x) / x - golden).abs())
        .fold(0.0, f64::max);
    let part1 = ratio_err < 1e-14;

    let b = sufficient_bounds(0.25);
    let eq = |x: f64, y: f64| (x - y).abs() <= 1e-15;
    let part2 = eq(b.right_lhs, 26.0 / 64.0)
        && eq(b.right_rhs, 0.5)
        && eq(b.left_lhs, 1.0 / 32.0)
        && eq(b.left_rhs, 7.0 / 64.0);

    let cd = build_counterexample_domain(&CounterexampleParams::new(0.25, 3).unwrap()).unwrap();
    let origin_curvature = cd
        .domain()
        .curvature_at(&cd.geodesic_pair().unwrap().0.forward())
        .unwrap();
    let part3 = cd.domain().validate().is_empty()
        && cd.joint_violations().is_empty()
        && origin_curvature.abs() < 1e-8
        && cd.levels().iter().all(|l| l.curvature_floor > 0.0);

    let report = verify_nonconvexity(&cd, &cd.default_probes()).unwrap();
    let cubic_t = reference_cubic_report(25.0, 0.05, 1e-9)
        .unwrap()
        .t_certified;
    let part4 = report.windows.len() == 4
        && report.every_window_negative
        && cubic_t.is_some_and(|t| t <= 6.0);
    let mins: Vec<String> = report
        .windows
        .iter()
        .map(|w| format!("{:.2e}", w.min_second_difference))
        .collect();

    outcome(
        part1 && part2 && part3 && part4,
        format!(
            "(i) {} ratio error {ratio_err:.1e}; (ii) {} right {}/{} left {}/{} (scaled by x0³); (iii) {}; (iv) {} min D″ per level [{}], cubic T {cubic_t:?}",
            tag(part1),
            tag(part2),
            b.right_lhs,
            b.right_rhs,
            b.left_lhs,
            b.left_rhs,
            tag(part3),
            tag(part4),
            mins.join(", "),
        ),
    )
}

fn tag(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

/// Name, check and optional wall-clock budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "metric correctness",
            criterion1,
            Some(Duration::from_secs(5)),
        ),
        ("normalized gap", criterion2, Some(Duration::from_secs(1))),
        ("projective invariance", criterion3, None),
        (
            "synchronized ellipse pair decays",
            criterion4,
            Some(Duration::from_secs(2)),
        ),
        ("vertex pair stays apart", criterion5, None),
        (
            "polygon pairs eventually convex",
            criterion6,
            Some(Duration::from_secs(30)),
        ),
        ("smooth pair convex and φ″ oracle", criterion7, None),
        ("closed-form examples 1 and 2", criterion8, None),
        ("polygon closed form φ + log A′", criterion9, None),
        (
            "flat-point counterexample pipeline",
            criterion10,
            Some(Duration::from_secs(60)),
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = budget.is_none_or(|b| took <= b);
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget = budget.map_or(String::new(), |b| format!(" / {}s", b.as_secs()));
        println!(
            "criterion {:>2} {}: {name}: {} [{:.2}s{budget}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            took.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
