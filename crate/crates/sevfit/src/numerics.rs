//! Shared numerical routines: composite Gauss-Legendre quadrature and a
//! bracketing Brent root finder.

use std::sync::OnceLock;

use thiserror::Error;

/// Nodes per quadrature panel.
const GL_ORDER: usize = 32;
/// Hard cap on integrand evaluations at the finest refinement level.
const MAX_NODES: usize = 1 << 14;
/// Panel refinement stops when successive composite estimates differ by less
/// than this (scaled by `max(1, |I|)`).
const QUAD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RootError {
    #[error("no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("root iteration did not converge within {max_iter} iterations")]
    NoConvergence { max_iter: u32 },
}

/// Outcome of a bracketed root solve, kept for fit diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSolve {
    pub root: f64,
    pub iterations: u32,
    pub bracket: (f64, f64),
    pub residual: f64,
}

fn legendre_p_dp(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let jf = j as f64;
        let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Nodes and weights of the order-32 Gauss-Legendre rule on [-1, 1].
fn gl_nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..60 {
                let (p, dp) = legendre_p_dp(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let (_, dp) = legendre_p_dp(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push((x, w));
        }
        out
    })
}

fn gl_panels<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let nodes = gl_nodes();
    let width = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        let mut acc = 0.0;
        for &(x, w) in nodes {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Composite Gauss-Legendre integral of `f` over `[a, b]`, doubling the panel
/// count until successive estimates agree or the node cap is reached.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let mut prev = gl_panels(&f, a, b, 1);
    let mut panels = 2;
    while panels * GL_ORDER <= MAX_NODES {
        let cur = gl_panels(&f, a, b, panels);
        if (cur - prev).abs() < QUAD_TOL * cur.abs().max(1.0) {
            return cur;
        }
        prev = cur;
        panels *= 2;
    }
    prev
}

/// As [`integrate`], splitting `[a, b]` at the interior `breaks` first so each
/// piece is smooth.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breaks: &[f64]) -> f64 {
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&v| v > a + 1e-14 && v < b - 1e-14)
        .collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();
    let mut total = 0.0;
    let mut lo = a;
    for cut in cuts {
        total += integrate(&f, lo, cut);
        lo = cut;
    }
    total + integrate(&f, lo, b)
}

/// Brent's method on a sign-changing bracket.
pub fn brent<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: u32,
) -> Result<RootSolve, RootError> {
    let mut a = lo;
    let mut b = hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(RootSolve { root: a, iterations: 0, bracket: (lo, hi), residual: 0.0 });
    }
    if fb == 0.0 {
        return Ok(RootSolve { root: b, iterations: 0, bracket: (lo, hi), residual: 0.0 });
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoSignChange { lo, hi, f_lo: fa, f_hi: fb });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(RootSolve { root: b, iterations: iter, bracket: (lo, hi), residual: fb });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }
    Err(RootError::NoConvergence { max_iter })
}

/// Expand an initial bracket geometrically until `f` changes sign, then solve.
///
/// Expansion is clamped to `limits`; failure to bracket reports the final
/// bracket endpoints and values.
pub fn bracket_and_solve<F: Fn(f64) -> f64>(
    f: F,
    init: (f64, f64),
    limits: (f64, f64),
    tol: f64,
) -> Result<RootSolve, RootError> {
    let (mut lo, mut hi) = init;
    lo = lo.max(limits.0);
    hi = hi.min(limits.1);
    let mut f_lo = f(lo);
    let mut f_hi = f(hi);
    for _ in 0..64 {
        if f_lo == 0.0 || f_hi == 0.0 || f_lo.signum() != f_hi.signum() {
            break;
        }
        let mut moved = false;
        if lo > limits.0 {
            lo = (lo / 10.0).max(limits.0);
            f_lo = f(lo);
            moved = true;
        }
        if hi < limits.1 {
            hi = (hi * 10.0).min(limits.1);
            f_hi = f(hi);
            moved = true;
        }
        if !moved {
            break;
        }
    }
    if f_lo.signum() == f_hi.signum() && f_lo != 0.0 && f_hi != 0.0 {
        return Err(RootError::NoSignChange { lo, hi, f_lo, f_hi });
    }
    brent(f, lo, hi, tol, 200)
}

/// Standard normal quantile.
pub fn normal_quantile(p: f64) -> f64 {
    use statrs::distribution::ContinuousCDF;
    static NORMAL: OnceLock<statrs::distribution::Normal> = OnceLock::new();
    NORMAL
        .get_or_init(|| statrs::distribution::Normal::new(0.0, 1.0).unwrap())
        .inverse_cdf(p)
}
