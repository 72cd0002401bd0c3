use hilbert_core::*;
use proptest::prelude::*;

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

/// Interior point of domain `k` from two unit-interval coordinates.
fn interior(k: usize, s: f64, r: f64) -> Point {
    match k {
        0 => {
            let (rad, ang) = (0.95 * r.sqrt(), std::f64::consts::TAU * s);
            Point::new(rad * ang.cos(), rad * ang.sin())
        }
        1 => {
            let y = 0.05 + 0.9 * r;
            let (lo, hi) = (-1.0 - y, 2.0 + y);
            Point::new(lo + 0.05 + (hi - lo - 0.1) * s, y)
        }
        _ => {
            let x = -0.9 + 1.8 * s;
            let lo = x.abs().powi(3);
            Point::new(x, lo + 0.02 + (0.96 - lo) * r)
        }
    }
}

fn domain(k: usize) -> ConvexDomain {
    match k {
        0 => disk(),
        1 => trapezoid(),
        _ => ConvexDomain::cubic_graph(1.0).unwrap(),
    }
}

fn unit() -> impl Strategy<Value = f64> {
    0.0..1.0f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn metric_axioms(k in 0usize..3, c in prop::array::uniform6(unit())) {
        let d = domain(k);
        let (p, q, r) = (interior(k, c[0], c[1]), interior(k, c[2], c[3]), interior(k, c[4], c[5]));
        let pq = hilbert_distance(&d, p, q).unwrap();
        let qp = hilbert_distance(&d, q, p).unwrap();
        prop_assert!((pq - qp).abs() <= 1e-12 * pq.max(1.0));
        let pr = hilbert_distance(&d, p, r).unwrap();
        let qr = hilbert_distance(&d, q, r).unwrap();
        prop_assert!(pr <= pq + qr + 1e-9);
        prop_assert_eq!(hilbert_distance(&d, p, p).unwrap(), 0.0);
    }

    #[test]
    fn chord_brackets_both_points(k in 0usize..3, c in prop::array::uniform4(unit())) {
        let d = domain(k);
        let (p, q) = (interior(k, c[0], c[1]), interior(k, c[2], c[3]));
        prop_assume!(p.dist(q) > 1e-6);
        let (a, b) = d.chord(&join(p, q).unwrap()).unwrap();
        let dir = b.point - a.point;
        let (sp, sq) = ((p - a.point).dot(dir) / dir.dot(dir), (q - a.point).dot(dir) / dir.dot(dir));
        prop_assert!(sp > 0.0 && sp < 1.0 && sq > 0.0 && sq < 1.0);
        prop_assert!(!d.contains(a.point) && !d.contains(b.point));
    }

    #[test]
    fn arc_length_identity(k in 0usize..3, c in prop::array::uniform4(unit()), t1 in -10.0..10.0f64, t2 in -10.0..10.0f64) {
        let d = domain(k);
        let (p, q) = (interior(k, c[0], c[1]), interior(k, c[2], c[3]));
        prop_assume!(p.dist(q) > 1e-3);
        let f = geodesic_through(&d, p, q).unwrap();
        let h = hilbert_distance(&d, f.point_at(t1), f.point_at(t2)).unwrap();
        prop_assert!((h - (t1 - t2).abs()).abs() < 1e-9, "{} vs {}", h, (t1 - t2).abs());
    }

    #[test]
    fn distance_is_projectively_invariant(
        k in 0usize..3,
        c in prop::array::uniform4(unit()),
        lin in prop::array::uniform4(-1.0..1.0f64),
        persp in prop::array::uniform2(-0.3..0.3f64),
    ) {
        let d = domain(k);
        let (p, q) = (interior(k, c[0], c[1]), interior(k, c[2], c[3]));
        prop_assume!(p.dist(q) > 1e-3);
        let a = [[1.0 + 0.5 * lin[0], 0.5 * lin[1]], [0.5 * lin[2], 1.0 + 0.5 * lin[3]]];
        prop_assume!((a[0][0] * a[1][1] - a[0][1] * a[1][0]).abs() > 0.1);
        // perspective weights are scaled to the domain so the image stays bounded
        let s = if k == 1 { 1.0 / 3.5 } else { 1.0 };
        let m = ProjectiveMap::from_matrix([[a[0][0], a[0][1], 0.2], [a[1][0], a[1][1], -0.1], [persp[0] * s, persp[1] * s, 1.0]]).unwrap();
        let image = d.transform(&m).unwrap();
        let before = hilbert_distance(&d, p, q).unwrap();
        let after = hilbert_distance(&image, m.apply(p).unwrap(), m.apply(q).unwrap()).unwrap();
        prop_assert!((after - before).abs() <= 1e-8 * before.max(1.0), "{} vs {}", after, before);
    }

    #[test]
    fn cross_ratio_invariance(
        s in prop::array::uniform4(unit()),
        lin in prop::array::uniform4(-1.0..1.0f64),
        persp in prop::array::uniform2(-0.3..0.3f64),
    ) {
        let mut u = s;
        u.sort_by(f64::total_cmp);
        prop_assume!(u.windows(2).all(|w| w[1] - w[0] > 1e-3));
        let (a, b) = (Point::new(-0.8, -0.3), Point::new(0.7, 0.5));
        let at = |x: f64| a.lerp(b, x);
        let quad = CollinearQuad::new(at(u[1]), at(u[2]), at(u[3]), at(u[0])).unwrap();
        let m = ProjectiveMap::from_matrix([[1.0 + 0.5 * lin[0], 0.5 * lin[1], 0.1], [0.5 * lin[2], 1.0 + 0.5 * lin[3], 0.3], [persp[0], persp[1], 1.0]]);
        prop_assume!(m.is_ok());
        let m = m.unwrap();
        let img = |x: Point| m.apply(x).unwrap();
        let mapped = CollinearQuad::new(img(quad.p), img(quad.q), img(quad.qp), img(quad.pp));
        prop_assume!(mapped.is_ok());
        let before = cross_ratio(&quad).unwrap();
        let after = cross_ratio(&mapped.unwrap()).unwrap();
        prop_assert!(before >= 1.0);
        prop_assert!((after - before).abs() / before < 1e-9);
    }

    #[test]
    fn correspondence_reproduces_points(v in prop::array::uniform8(-1.0..1.0f64)) {
        let src = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
        let dst = [
            Point::new(-1.0 + 0.3 * v[0], -1.0 + 0.3 * v[1]),
            Point::new(1.0 + 0.3 * v[2], -1.0 + 0.3 * v[3]),
            Point::new(1.0 + 0.3 * v[4], 1.0 + 0.3 * v[5]),
            Point::new(-1.0 + 0.3 * v[6], 1.0 + 0.3 * v[7]),
        ];
        let m = map_from_correspondence(src, dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            prop_assert!(m.apply(*s).unwrap().dist(*d) < 1e-10);
        }
    }

    #[test]
    fn euclid_gap_decreases_with_logistic_shape(k in 0usize..3, c in prop::array::uniform4(unit())) {
        let d = domain(k);
        let (p, q) = (interior(k, c[0], c[1]), interior(k, c[2], c[3]));
        prop_assume!(p.dist(q) > 1e-3);
        let f = geodesic_through(&d, p, q).unwrap();
        let h = 0.05;
        let gaps: Vec<f64> = (0..=400).map(|i| f.euclid_gap(i as f64 * h).value).collect();
        prop_assert!(gaps.windows(2).all(|w| w[1] < w[0]));
        // log E = const − log(u₀eᵗ + 1 − u₀) is concave, and E is convex once u(t) ≥ ½
        let logs: Vec<f64> = gaps.iter().map(|g| g.ln()).collect();
        prop_assert!(logs.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] <= 1e-10));
        let onset = (0..=400).find(|i| f.weights(*i as f64 * h).0 >= 0.5).unwrap_or(400);
        for w in gaps[onset..].windows(3) {
            prop_assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-15 * w[0]);
        }
    }

    #[test]
    fn phi_second_matches_differences(alpha in -2.0..2.0f64, beta in 0.1..10.0f64, t in 0.0..20.0f64) {
        let p = PhiParams::new(alpha, beta).unwrap();
        let e = normalized_gap(t);
        // keep clear of the pole where the difference quotient loses accuracy
        prop_assume!((beta + (alpha - 0.5) * e).min(beta + (alpha + 0.5) * e) > 0.5 * beta);
        let h = 1e-3;
        let fd = (phi_value(p, t + h).unwrap() - 2.0 * phi_value(p, t).unwrap() + phi_value(p, t - h).unwrap()) / (h * h);
        prop_assert!((phi_second(p, t).unwrap() - fd).abs() < 1e-6 * fd.abs().max(1.0));
    }

    #[test]
    fn flat_endpoint_ratio_is_exact(x in 1e-4..1.0f64) {
        let b = x * FLAT_ENDPOINT_RATIO;
        prop_assert!((b.powi(3) - 2.0 * x * x * b + x.powi(3)).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn interpolant_is_convex_and_exact(
        len in 0.1..2.0f64,
        a0 in 0.1..1.0f64,
        a1 in 0.1..1.0f64,
        grow in 0.2..3.0f64,
        mix in 0.1..0.9f64,
        s in prop::array::uniform2(0.1..5.0f64),
    ) {
        let b1 = a1 + grow;
        let rise = len * (a1 + mix * (b1 - a1));
        let data = InterpolationData { alpha: 0.3, beta: 0.3 + len, start: [a0, a1, s[0]], end: [a0 + rise, b1, s[1]] };
        prop_assert!(feasibility_check(&data).holds);
        let arc = match c2_interpolant(&data) {
            Ok(arc) => arc,
            // the one-parameter scheme does not cover every feasible configuration
            Err(HilbertError::InfeasibleData(_)) | Err(HilbertError::SolverDidNotConverge(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let (lo, hi) = (arc.jet(data.alpha), arc.jet(data.beta));
        prop_assert!((lo.0 - a0).abs() < 1e-10 && (lo.1 - a1).abs() < 1e-10 && (lo.2 - s[0]).abs() < 1e-8);
        prop_assert!((hi.0 - data.end[0]).abs() < 1e-10 && (hi.1 - b1).abs() < 1e-10 && (hi.2 - s[1]).abs() < 1e-8);
        prop_assert!((arc.slope_integral() - rise).abs() < 1e-10);
        for i in 1..1000 {
            let x = data.alpha + len * i as f64 / 1000.0;
            prop_assert!(arc.jet(x).2 > 0.0);
        }
    }

    #[test]
    fn refinement_keeps_certified_signs(cx in -0.3..0.3f64, cy in -0.3..0.3f64, ang in 0.0..std::f64::consts::TAU) {
        let d = ConvexDomain::ellipse(Point::new(0.0, 0.0), 1.5, 1.0).unwrap();
        let xi = Point::new(1.5 * ang.cos(), ang.sin());
        let p = Point::new(cx, cy);
        let f = geodesic_through(&d, p, p.lerp(xi, 0.5)).unwrap();
        let q = Point::new(-cx * 0.5, cy * 0.5 + 0.2);
        let g = geodesic_through(&d, q, q.lerp(f.forward().point, 0.5)).unwrap();
        let coarse = convexity_report(&distance_profile(&d, &f, &g, 0.0, 12.0, 121).unwrap(), 1e-9);
        let fine = convexity_report(&distance_profile(&d, &f, &g, 0.0, 12.0, 241).unwrap(), 1e-9);
        // coarse second difference i sits at grid i + 1 = fine grid 2i + 2
        let from = coarse.t_certified.map_or(usize::MAX, |t| (t / 0.1).round() as usize);
        for (i, sd) in coarse.second_differences.iter().enumerate().skip(from) {
            let fsd = fine.second_differences[2 * i + 1];
            if *sd >= 0.0 {
                prop_assert!(fsd >= -1e-9, "i = {}: {} vs {}", i, sd, fsd);
            }
        }
    }
}
