//! Scalar root bracketing and extremum refinement.

/// Root of `f` in `[a, b]` given `f(a)` and `f(b)` of opposite sign (or zero).
///
/// Secant steps are taken when they land inside the bracket and shrink it fast
/// enough; otherwise the bracket is bisected. Iterates to machine resolution.
pub fn bracketed_root(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
) -> f64 {
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa.signum() != fb.signum());
    let mut use_secant = true;
    for _ in 0..400 {
        let width = b - a;
        let mid = a + 0.5 * width;
        if mid <= a.min(b) || mid >= a.max(b) || width.abs() <= f64::EPSILON * a.abs().max(b.abs())
        {
            break;
        }
        let mut x = mid;
        if use_secant {
            let s = a - fa * (b - a) / (fb - fa);
            let (lo, hi) = (a.min(b), a.max(b));
            if s > lo && s < hi {
                x = s;
            }
        }
        let fx = f(x);
        if fx == 0.0 {
            return x;
        }
        let old = (b - a).abs();
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        // fall back to bisection whenever a step fails to halve the bracket
        use_secant = (b - a).abs() < 0.5 * old;
    }
    if fa.abs() <= fb.abs() {
        a
    } else {
        b
    }
}

/// Golden-section refinement of a minimum of `f` bracketed in `[a, b]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0) {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}
