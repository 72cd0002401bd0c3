//! CSV and SVG encodings of profiles, and atomic file writes.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use hilbert_core::{ConvexityReport, DistanceProfile};

use crate::CliError;

/// Writes `bytes` to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(bytes).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn profile_csv(profile: &DistanceProfile) -> String {
    let sd = profile.second_differences();
    let mut out = String::from("t,D,second_difference\n");
    let last = profile.len() - 1;
    for (i, (t, d)) in profile.grid().iter().zip(profile.values()).enumerate() {
        let second = if i == 0 || i == last { String::new() } else { num(sd[i - 1]) };
        let _ = writeln!(out, "{},{},{second}", num(*t), num(*d));
    }
    out
}

pub fn parse_profile_csv(text: &str) -> Result<DistanceProfile, CliError> {
    let bad = |m: String| CliError::Validation(format!("profile CSV: {m}"));
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == "t,D,second_difference" => {}
        _ => return Err(bad("missing header `t,D,second_difference`".into())),
    }
    let (mut grid, mut values) = (Vec::new(), Vec::new());
    for (k, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let mut cols = line.split(',');
        let mut field = |name: &str| -> Result<f64, CliError> {
            let raw = cols.next().ok_or_else(|| bad(format!("row {}: missing {name}", k + 2)))?;
            raw.trim().parse::<f64>().map_err(|_| bad(format!("row {}: bad {name} `{raw}`", k + 2)))
        };
        grid.push(field("t")?);
        values.push(field("D")?);
    }
    Ok(DistanceProfile::from_samples(grid, values)?)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 50.0;

pub fn profile_svg(profile: &DistanceProfile, report: &ConvexityReport) -> String {
    let (t, d) = (profile.grid(), profile.values());
    let (t0, t1) = (t[0], t[t.len() - 1]);
    let (lo, hi) = d.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |v: f64| MARGIN + (v - t0) / (t1 - t0) * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - (v - lo) / span * (HEIGHT - 2.0 * MARGIN);
    let half = 0.5 * profile.step();

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="0 0 800 600">"#);
    let _ = writeln!(out, r#"<rect x="0" y="0" width="800" height="600" fill="white"/>"#);
    for w in &report.windows {
        let (a, b) = (x((w.start - half).max(t0)), x((w.end + half).min(t1)));
        let _ = writeln!(
            out,
            r##"<rect x="{a:.3}" y="{MARGIN:.3}" width="{:.3}" height="{:.3}" fill="#f4b6b6" fill-opacity="0.6"/>"##,
            b - a,
            HEIGHT - 2.0 * MARGIN
        );
    }
    let _ = writeln!(
        out,
        r#"<rect x="{MARGIN:.3}" y="{MARGIN:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let points: Vec<String> = t.iter().zip(d).map(|(a, b)| format!("{:.3},{:.3}", x(*a), y(*b))).collect();
    let _ = writeln!(out, r##"<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="{}"/>"##, points.join(" "));
    let label = |v: f64| format!("{v:.6e}");
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}" font-size="12">t = {}</text>"#, HEIGHT - 20.0, label(t0));
    let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12" text-anchor="end">t = {}</text>"#, WIDTH - MARGIN, HEIGHT - 20.0, label(t1));
    let _ = writeln!(out, r#"<text x="10" y="{}" font-size="12">D = {}</text>"#, MARGIN - 10.0, label(hi));
    let _ = writeln!(out, r#"<text x="10" y="{}" font-size="12">D = {}</text>"#, HEIGHT - MARGIN + 15.0, label(lo));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hilbert_core::convexity_report;

    fn line() -> DistanceProfile {
        DistanceProfile::from_samples(vec![0.0, 1.0, 2.0], vec![1.0, 2.0, 3.0]).unwrap()
    }

    #[test]
    fn three_point_csv() {
        let csv = profile_csv(&line());
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows[0], "t,D,second_difference");
        assert!(rows[1].ends_with(','));
        assert_eq!(rows[2], "1.0000000000000000e0,2.0000000000000000e0,0.0000000000000000e0");
        assert!(rows[3].ends_with(','));
        assert!(csv.ends_with('\n'));
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let grid: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let values: Vec<f64> = grid.iter().map(|t| (1.0 / (t + 0.3)).ln_1p()).collect();
        let p = DistanceProfile::from_samples(grid, values).unwrap();
        let back = parse_profile_csv(&profile_csv(&p)).unwrap();
        assert_eq!(back.grid(), p.grid());
        assert_eq!(back.values(), p.values());
        assert!(parse_profile_csv("t,D\n0,1\n").is_err());
        assert!(parse_profile_csv("t,D,second_difference\n0,x,\n").is_err());
    }

    #[test]
    fn svg_is_deterministic() {
        let p = line();
        let r = convexity_report(&p, 1e-9);
        let svg = profile_svg(&p, &r);
        assert_eq!(svg, profile_svg(&p, &r));
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    }
}
