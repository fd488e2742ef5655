//! Adaptive numerical quadrature and bracketed scalar root finding.
//!
//! The quadrature is an adaptive Gauss-Kronrod scheme: each interval is
//! evaluated with the 15-point Kronrod rule, the embedded 7-point Gauss rule
//! supplies the error estimate, and the interval with the largest estimated
//! error is bisected until the requested tolerance is met. The root finder is
//! Brent's method, which keeps a guaranteed bracket while accelerating with
//! inverse quadratic interpolation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Default relative tolerance for both quadrature and root finding.
pub const DEFAULT_REL_TOL: f64 = 1e-12;

/// Absolute floor below which quadrature error demands are not tightened.
const ABS_FLOOR: f64 = 1e-15;

/// Maximum bisection depth for a single interval.
const MAX_DEPTH: u32 = 60;

/// Maximum number of simultaneously tracked intervals.
const MAX_SEGMENTS: usize = 20_000;

/// Maximum Brent iterations before reporting budget exhaustion.
const MAX_ROOT_ITER: usize = 200;

// 15-point Kronrod abscissae (positive half, descending) with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_813,
    0.949_107_912_342_759,
    0.864_864_423_359_769,
    0.741_531_185_599_394,
    0.586_087_235_467_691,
    0.405_845_151_377_397,
    0.207_784_955_007_898,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529,
    0.063_092_092_629_979,
    0.104_790_010_322_250,
    0.140_653_259_715_525,
    0.169_004_726_639_267,
    0.190_350_578_064_785,
    0.204_432_940_075_298,
    0.209_482_141_084_728,
];

const WG: [f64; 4] = [
    0.129_484_966_168_870,
    0.279_705_391_489_277,
    0.381_830_050_505_119,
    0.417_959_183_673_469,
];

/// Outcome of an adaptive quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    /// Estimated value of the integral.
    pub value: f64,
    /// Estimated absolute error of `value`.
    pub abs_error_estimate: f64,
    /// Number of integrand evaluations performed.
    pub evaluations: usize,
}

/// A bracket `[lo, hi]` known to contain a root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
}

impl RootBracket {
    /// Builds a bracket, rejecting non-finite or unordered bounds.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidBracket { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// Integral of |f| over the segment, used for the roundoff floor.
    res_abs: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// QUADPACK-style rescaling of the raw Kronrod/Gauss difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// Evaluates the 15-point Kronrod rule on `[a, b]`.
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteEvaluation { abscissa: x })
        }
    };

    let f_center = eval(center)?;
    let mut res_kronrod = WGK[7] * f_center;
    let mut res_gauss = WG[3] * f_center;
    let mut res_abs = res_kronrod.abs();

    let mut values = [0.0_f64; 14];
    for (j, &x) in XGK.iter().take(7).enumerate() {
        let lo = eval(center - half * x)?;
        let hi = eval(center + half * x)?;
        values[2 * j] = lo;
        values[2 * j + 1] = hi;
        let sum = lo + hi;
        res_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * sum;
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for (j, &w) in WGK.iter().take(7).enumerate() {
        res_asc += w * ((values[2 * j] - mean).abs() + (values[2 * j + 1] - mean).abs());
    }

    let raw_err = (res_kronrod - res_gauss) * half;
    Ok(Segment {
        a,
        b,
        value: res_kronrod * half,
        error: rescale_error(raw_err, res_abs * half.abs(), res_asc * half.abs()),
        res_abs: res_abs * half.abs(),
        depth,
    })
}

/// Integrates `f` over `[a, b]` to the requested relative tolerance.
///
/// The result is deterministic for fixed inputs. Non-finite integrand values
/// and exhaustion of the subdivision budget are reported as errors; the
/// budget error carries the best estimate obtained so far.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
) -> Result<QuadratureResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
        return Err(Error::InvalidTolerance(rel_tol));
    }

    let mut active: BinaryHeap<Segment> = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    let mut evaluations = 15_usize;
    let first = gk15(&f, a, b, 0)?;

    let mut total_value = first.value;
    let mut total_error = first.error;
    let mut total_res_abs = first.res_abs;
    active.push(first);

    loop {
        // Stop at the requested tolerance, or once the error is down at the
        // roundoff level that |f|'s magnitude permits in double precision.
        let target = (rel_tol * total_value.abs())
            .max(ABS_FLOOR)
            .max(100.0 * f64::EPSILON * total_res_abs);
        if total_error <= target {
            // Recompute the sums once to shed incremental rounding.
            let value: f64 = active.iter().chain(frozen.iter()).map(|s| s.value).sum();
            let error: f64 = active.iter().chain(frozen.iter()).map(|s| s.error).sum();
            return Ok(QuadratureResult {
                value,
                abs_error_estimate: error,
                evaluations,
            });
        }

        let budget_exhausted = active.len() + frozen.len() >= MAX_SEGMENTS;
        let worst = if budget_exhausted { None } else { active.pop() };
        let Some(seg) = worst else {
            return Err(Error::QuadratureBudget {
                partial: QuadratureResult {
                    value: total_value,
                    abs_error_estimate: total_error,
                    evaluations,
                },
            });
        };

        let mid = 0.5 * (seg.a + seg.b);
        if seg.depth >= MAX_DEPTH || mid <= seg.a || mid >= seg.b {
            // Cannot refine further; park the segment and keep going.
            frozen.push(seg);
            continue;
        }

        let left = gk15(&f, seg.a, mid, seg.depth + 1)?;
        let right = gk15(&f, mid, seg.b, seg.depth + 1)?;
        evaluations += 30;
        total_value += left.value + right.value - seg.value;
        total_error += left.error + right.error - seg.error;
        total_res_abs += left.res_abs + right.res_abs - seg.res_abs;
        active.push(left);
        active.push(right);
    }
}

/// Finds a root of `g` inside `bracket` using Brent's method.
///
/// The returned abscissa always lies inside the initial bracket, with the
/// final bracket width at most `rel_tol` times the root magnitude.
pub fn find_root<F: Fn(f64) -> f64>(g: F, bracket: RootBracket, rel_tol: f64) -> Result<f64> {
    if !(rel_tol > 0.0 && rel_tol < 0.5) {
        return Err(Error::InvalidTolerance(rel_tol));
    }

    let eval = |x: f64| -> Result<f64> {
        let y = g(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteEvaluation { abscissa: x })
        }
    };

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let mut fa = eval(a)?;
    let mut fb = eval(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange {
            lo: a,
            hi: b,
            g_lo: fa,
            g_hi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ROOT_ITER {
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

        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs() + f64::MIN_POSITIVE;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }

        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt inverse quadratic interpolation (secant when a == c).
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
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
        fb = eval(b)?;
    }

    Err(Error::RootBudget {
        lo: b.min(c),
        hi: b.max(c),
    })
}
