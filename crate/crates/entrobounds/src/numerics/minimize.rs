//! Scalar minimization: Brent's golden-section / parabolic method with a
//! coarse grid pre-scan for bracket selection.

use crate::error::{Error, Result};

/// Golden section ratio (3 - sqrt(5)) / 2.
const GSR: f64 = 0.381_966_011_250_105_2;

#[derive(Debug, Clone, Copy)]
pub struct MinimizeResult {
    pub argmin: f64,
    pub min_value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

/// Minimize a unimodal `f` on [lo, hi] to an interval width <= tol.
pub fn minimize_scalar(
    f: impl Fn(f64) -> f64,
    bracket: (f64, f64),
    tol: f64,
) -> Result<MinimizeResult> {
    let (lo, hi) = bracket;
    if !(lo < hi) {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let tol = tol.max(f64::EPSILON);

    let mut a = lo;
    let mut b = hi;
    let mut x = a + GSR * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x);
    let mut fw = fx;
    let mut fv = fx;
    let mut evals = 1usize;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    const MAX_ITERS: usize = 200;
    #[allow(clippy::explicit_counter_loop)] // evals counts f calls, not iterations
    for _ in 0..MAX_ITERS {
        let m = 0.5 * (a + b);
        let tol1 = tol * x.abs().max(1.0) * 0.5 + 1e-15;
        let tol2 = 2.0 * tol1;
        if (x - m).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(MinimizeResult {
                argmin: x,
                min_value: fx,
                evaluations: evals,
                converged: true,
            });
        }
        let mut use_golden = true;
        if e.abs() > tol1 {
            // Trial parabolic fit through (v, fv), (w, fw), (x, fx).
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_old = e;
            e = d;
            if p.abs() < (0.5 * q * e_old).abs() && p > q * (a - x) && p < q * (b - x) {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = if m > x { tol1 } else { -tol1 };
                }
                use_golden = false;
            }
        }
        if use_golden {
            e = if x < m { b - x } else { a - x };
            d = GSR * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else if d > 0.0 {
            x + tol1
        } else {
            x - tol1
        };
        let fu = f(u);
        evals += 1;
        if fu <= fx {
            if u < x {
                b = x;
            } else {
                a = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::NonConvergence {
        what: "minimize_scalar iteration budget exhausted".into(),
        partial: x,
        err_estimate: b - a,
    })
}

/// Evaluate `f` on an `n`-point grid over [lo, hi] (log-spaced when both
/// endpoints are positive) and return a bracket around the grid argmin.
///
/// The pre-scan doubles as a unimodality guard: callers that cannot prove
/// unimodality pick their bracket from the coarse landscape.
pub fn bracket_via_grid(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    n: usize,
) -> Result<(f64, f64)> {
    if !(lo < hi) || n < 3 {
        return Err(Error::InvalidBracket { lo, hi });
    }
    let log_spaced = lo > 0.0;
    let point = |i: usize| -> f64 {
        let s = i as f64 / (n - 1) as f64;
        if log_spaced {
            (lo.ln() + s * (hi.ln() - lo.ln())).exp()
        } else {
            lo + s * (hi - lo)
        }
    };
    let mut best = 0;
    let mut best_val = f64::INFINITY;
    for i in 0..n {
        let v = f(point(i));
        if v < best_val {
            best_val = v;
            best = i;
        }
    }
    let a = point(best.saturating_sub(1));
    let b = point((best + 1).min(n - 1));
    Ok((a, b))
}
