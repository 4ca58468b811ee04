//! Adaptive Simpson quadrature with accuracy diagnostics.

use crate::error::CoreError;

const MAX_DEPTH: u32 = 64;

/// Integrates `f` over `[a, b]` to the requested relative tolerance.
///
/// Classic adaptive Simpson with Richardson correction. Panels that hit the
/// depth cap contribute their residual error estimate; if the accumulated
/// residual exceeds the requested tolerance the integration is reported as
/// nonconvergent along with the accuracy actually achieved.
pub(crate) fn integrate<F>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64, CoreError>
where
    F: Fn(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = simpson(a, b, fa, fm, fb);

    // One refinement level to set the magnitude scale for the tolerance.
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let refined =
        simpson(a, m, fa, flm, fm) + simpson(m, b, fm, frm, fb);
    let scale = libm::fabs(refined).max(libm::fabs(whole)).max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale;

    let mut residual = 0.0;
    let left = adaptive(
        f,
        a,
        m,
        fa,
        flm,
        fm,
        simpson(a, m, fa, flm, fm),
        0.5 * tol,
        MAX_DEPTH,
        &mut residual,
    );
    let right = adaptive(
        f,
        m,
        b,
        fm,
        frm,
        fb,
        simpson(m, b, fm, frm, fb),
        0.5 * tol,
        MAX_DEPTH,
        &mut residual,
    );
    let value = left + right;

    let achieved = residual / libm::fabs(value).max(f64::MIN_POSITIVE);
    if achieved > rel_tol {
        return Err(CoreError::Quadrature {
            requested: rel_tol,
            achieved,
        });
    }
    Ok(value)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    residual: &mut f64,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if libm::fabs(delta) <= 15.0 * tol || b - a <= f64::EPSILON * libm::fabs(a).max(1.0) {
        if libm::fabs(delta) > 15.0 * tol {
            *residual += libm::fabs(delta) / 15.0;
        }
        return left + right + delta / 15.0;
    }
    if depth == 0 {
        *residual += libm::fabs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, residual)
        + adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, residual)
}
