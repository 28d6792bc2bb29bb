//! Smooth bumps, shifted convolution sums and their main terms, the error
//! exponent experiment, and a both-sides check of the Voronoi formula for
//! twisted divisor functions.

use crate::arith::{epsilon, gauss_sum_real, gcd, real_char, sigma_shift, ArithError, Factorization, FieldParams};
use crate::lfun::{hecke_coefficients, l_one_chi, multiplicative_table, LfunError};
use crate::quadforms::{characters, enumerate_class_group};
use crate::special::bessel_j0;
use crate::sum::{ComplexSum, KahanSum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConvError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error("bump scale X = {0} must be at least 1/2")]
    BadScale(f64),
    #[error("bump normalization fails on the check grid: max x^k |g^(k)| = {0}")]
    Normalization(f64),
    #[error("coefficient table holds {have} terms but {need} are required")]
    CacheTooShort { have: usize, need: usize },
    #[error("X list needs at least 3 values, got {0}")]
    TooFewScales(usize),
    #[error("X list is not geometric")]
    NotGeometric,
    #[error("X = {0} exceeds 1e6")]
    ScaleTooLarge(f64),
    #[error("a = {a} is not coprime to c = {c}")]
    NotCoprime { a: i64, c: u64 },
    #[error("modulus c = {0} outside 1..=20")]
    BadModulus(u64),
    #[error("dual sum has not decayed below the threshold by n = {0}")]
    DualNotConverged(usize),
    #[error("character {0} has no cusp or genus channel here")]
    NoSuchCharacter(usize),
}

/// g(x) = kappa exp(-1/(u(1-u))), u = x/X - 1, on (X, 2X).
#[derive(Debug, Clone, PartialEq)]
pub struct BumpFunction {
    pub x: f64,
    pub kappa: f64,
    /// int_0^1 exp(-1/(u(1-u))) du
    profile_integral: f64,
}

/// exp(-1/p) with p = u(1-u) and its first two u-derivatives.
fn profile(u: f64) -> [f64; 3] {
    if u <= 0.0 || u >= 1.0 {
        return [0.0; 3];
    }
    let p = u * (1.0 - u);
    let dp = 1.0 - 2.0 * u;
    let e = (-1.0 / p).exp();
    if e == 0.0 {
        return [0.0; 3];
    }
    let p2 = p * p;
    let d1 = e * dp / p2;
    let d2 = e * (dp * dp / (p2 * p2) - 2.0 / p2 - 2.0 * dp * dp / (p2 * p));
    [e, d1, d2]
}

/// max over nu of (1+u)^nu |d^nu/du^nu profile| on an n-point grid.
fn normalized_peak(n: usize) -> f64 {
    (1..n)
        .map(|j| {
            let u = j as f64 / n as f64;
            let [f, d1, d2] = profile(u);
            f.max((1.0 + u) * d1.abs()).max((1.0 + u).powi(2) * d2.abs())
        })
        .fold(0.0, f64::max)
}

/// Trapezoid integral of the profile; the integrand is flat at both ends.
fn profile_integral(n: usize) -> f64 {
    ksum_range(n, |j| profile(j as f64 / n as f64)[0]) / n as f64
}

fn ksum_range(n: usize, f: impl Fn(usize) -> f64) -> f64 {
    let mut acc = KahanSum::new();
    for j in 1..n {
        acc.add(f(j));
    }
    acc.value()
}

impl BumpFunction {
    pub fn eval(&self, x: f64) -> f64 {
        self.kappa * profile(x / self.x - 1.0)[0]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        self.kappa * profile(x / self.x - 1.0)[1] / self.x
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        self.kappa * profile(x / self.x - 1.0)[2] / (self.x * self.x)
    }

    pub fn integral(&self) -> f64 {
        self.kappa * self.x * self.profile_integral
    }

    /// max over a grid of x^nu |g^(nu)(x)|, nu = 0, 1, 2.
    pub fn check_normalization(&self, points: usize) -> f64 {
        (0..=points)
            .map(|j| {
                let x = self.x * (1.0 + j as f64 / points as f64);
                self.eval(x)
                    .abs()
                    .max(x * self.derivative(x).abs())
                    .max(x * x * self.second_derivative(x).abs())
            })
            .fold(0.0, f64::max)
    }
}

pub fn make_bump(x: f64) -> Result<BumpFunction, ConvError> {
    if !(x >= 0.5) {
        return Err(ConvError::BadScale(x));
    }
    // x^nu g^(nu)(x) = kappa (1+u)^nu profile^(nu)(u), independent of X
    let mut g = BumpFunction {
        x,
        kappa: 1.0 / normalized_peak(100_000),
        profile_integral: profile_integral(1 << 14),
    };
    for _ in 0..2 {
        let worst = g.check_normalization(10_000);
        if worst <= 1.0 {
            return Ok(g);
        }
        g.kappa *= 0.99 / worst;
    }
    Err(ConvError::Normalization(g.check_normalization(10_000)))
}

/// tau(n; chi_v, chi_w) for 1 <= n <= n_max; index 0 is unused.
pub fn twisted_divisor_table(f: &Factorization, n_max: usize) -> Vec<f64> {
    multiplicative_table(n_max, |p, e| {
        let a = f.chi_v(p as i64) as f64;
        let b = f.chi_w(p as i64) as f64;
        (0..=e).map(|j| a.powi(j as i32) * b.powi((e - j) as i32)).sum()
    })
}

/// B(h) = sum over m - n = h of lambda(m) lambda(n) g1(m) g2(n), n-major.
pub fn shifted_convolution_brute(
    coeffs: &[f64],
    h: i64,
    g1: &BumpFunction,
    g2: &BumpFunction,
) -> Result<f64, ConvError> {
    let need = (2.0 * g1.x.max(g2.x)).ceil() as usize + h.unsigned_abs() as usize;
    if coeffs.len() <= need {
        return Err(ConvError::CacheTooShort {
            have: coeffs.len().saturating_sub(1),
            need,
        });
    }
    let mut acc = KahanSum::new();
    for n in (g2.x.ceil() as i64)..=((2.0 * g2.x).floor() as i64) {
        let m = n + h;
        if n < 1 || m < 1 {
            continue;
        }
        let w = g1.eval(m as f64) * g2.eval(n as f64);
        if w != 0.0 {
            acc.add(coeffs[m as usize] * coeffs[n as usize] * w);
        }
    }
    Ok(acc.value())
}

/// int g1(x + h) g2(x) dx by trapezoid doubling until the relative change is
/// below 1e-13; the integrand is flat at the ends of the overlap.
pub fn overlap_integral(h: i64, g1: &BumpFunction, g2: &BumpFunction) -> f64 {
    let h = h as f64;
    let lo = g2.x.max(g1.x - h);
    let hi = (2.0 * g2.x).min(2.0 * g1.x - h);
    if hi <= lo {
        return 0.0;
    }
    let f = |x: f64| g1.eval(x + h) * g2.eval(x);
    let mut n = 64usize;
    let mut prev = f64::NAN;
    loop {
        let step = (hi - lo) / n as f64;
        let val = ksum_range(n, |j| f(lo + j as f64 * step)) * step;
        if (val - prev).abs() <= 1e-13 * val.abs() || n >= 1 << 22 {
            return val;
        }
        prev = val;
        n *= 2;
    }
}

/// sigma(h) int g1(x + h) g2(x) dx for the Eisenstein channel of `f`.
pub fn shifted_convolution_main(
    h: i64,
    f: &Factorization,
    g1: &BumpFunction,
    g2: &BumpFunction,
    l1: f64,
) -> Result<f64, ConvError> {
    let overlap = overlap_integral(h, g1, g2);
    if overlap == 0.0 {
        return Ok(0.0);
    }
    Ok(sigma_shift(h, f, l1)? * overlap)
}

/// Coefficient source of a convolution experiment.
#[derive(Debug, Clone, PartialEq)]
pub enum Channel {
    /// tau(n; chi_v, chi_w), main term sigma(h) times the overlap.
    Eisenstein(Factorization),
    /// lambda(n) of a class group character: the genus channel when the
    /// character is real, else a cusp form with no main term.
    Hecke { q: u64, index: usize },
    /// lambda(n) = 1 with main term 0: no cancellation at all.
    Synthetic,
}

struct ChannelData {
    coeffs: Vec<f64>,
    genus: Option<(Factorization, f64)>,
}

fn channel_data(channel: &Channel, n_max: usize) -> Result<ChannelData, ConvError> {
    Ok(match channel {
        Channel::Eisenstein(f) => {
            let l1 = l_one_chi(&FieldParams::new(f.q())?)?;
            ChannelData {
                coeffs: twisted_divisor_table(f, n_max),
                genus: Some((*f, l1)),
            }
        }
        Channel::Hecke { q, index } => {
            let params = FieldParams::new(*q)?;
            let group = enumerate_class_group(&params);
            let chars = characters(&group);
            let psi = chars.get(*index).ok_or(ConvError::NoSuchCharacter(*index))?;
            let l1 = l_one_chi(&params)?;
            ChannelData {
                coeffs: hecke_coefficients(&group, psi, n_max)?,
                genus: psi.genus.map(|f| (f, l1)),
            }
        }
        Channel::Synthetic => ChannelData {
            coeffs: vec![1.0; n_max + 1],
            genus: None,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExperimentRow {
    #[serde(rename = "X")]
    pub x: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub main: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    #[serde(skip)]
    pub rows: Vec<ExperimentRow>,
    /// None when every error is below 1e-9 (error floor).
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub gate: bool,
    pub error_floor: bool,
}

pub const SLOPE_GATE: f64 = 0.85;

/// Least-squares line through (x, y); returns (slope, intercept).
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Slope of log |B(h) - main(h)| against log X with g1 = g2 = make_bump(X).
pub fn exponent_experiment(channel: &Channel, h: i64, xs: &[f64]) -> Result<ExponentFit, ConvError> {
    if xs.len() < 3 {
        return Err(ConvError::TooFewScales(xs.len()));
    }
    let ratio = xs[1] / xs[0];
    if xs.windows(2).any(|w| ((w[1] / w[0]) / ratio - 1.0).abs() > 1e-9) || ratio <= 1.0 {
        return Err(ConvError::NotGeometric);
    }
    let top = xs.iter().copied().fold(0.0, f64::max);
    if top > 1e6 {
        return Err(ConvError::ScaleTooLarge(top));
    }
    let data = channel_data(channel, (2.0 * top).ceil() as usize + h.unsigned_abs() as usize + 1)?;
    let rows = xs
        .par_iter()
        .map(|&x| -> Result<ExperimentRow, ConvError> {
            let g = make_bump(x)?;
            let b = shifted_convolution_brute(&data.coeffs, h, &g, &g)?;
            let main = match &data.genus {
                Some((f, l1)) => shifted_convolution_main(h, f, &g, &g, *l1)?,
                None => 0.0,
            };
            Ok(ExperimentRow {
                x,
                b,
                main,
                abs_error: (b - main).abs(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if rows.iter().all(|r| r.abs_error < 1e-9) {
        return Ok(ExponentFit {
            rows,
            slope: None,
            intercept: None,
            gate: false,
            error_floor: true,
        });
    }
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.x.ln(), r.abs_error.max(1e-300).ln())).collect();
    let (slope, intercept) = least_squares(&pts);
    Ok(ExponentFit {
        rows,
        slope: Some(slope),
        intercept: Some(intercept),
        gate: slope <= SLOPE_GATE,
        error_floor: false,
    })
}

pub fn experiment_csv(fit: &ExponentFit) -> String {
    let mut out = String::from("X,B,main,abs_error\n");
    for r in &fit.rows {
        out.push_str(&format!("{},{:.12e},{:.12e},{:.12e}\n", r.x, r.b, r.main, r.abs_error));
    }
    out
}

/// e(k/c) = exp(2 pi i k / c) with k reduced mod c first.
fn e_frac(k: i64, c: u64) -> Complex64 {
    let k = k.rem_euclid(c as i64);
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / c as f64)
}

fn inverse_mod(a: i64, c: u64) -> i64 {
    let c = c as i64;
    let a = a.rem_euclid(c);
    (1..=c).find(|&x| (a * x) % c == 1 % c).unwrap_or(0)
}

/// I(n) = int g(x) J0((4 pi / c) sqrt(n x / r)) dx for n = 1, 2, ... until the
/// integrals stay below threshold * int g for a window of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct DualIntegrals {
    pub q: u64,
    pub c: u64,
    pub r: u64,
    pub threshold: f64,
    /// values[n - 1] = I(n)
    pub values: Vec<f64>,
    /// |I(n)| difference between the chosen grid and its even subgrid
    pub quad_err: Vec<f64>,
}

const BASE_NODES: usize = 256;
const LEVELS: u32 = 7;
const WINDOW: usize = 64;
const MAX_DUAL: usize = 2_000_000;

pub fn dual_integrals(q: u64, c: u64, g: &BumpFunction, threshold: f64) -> Result<DualIntegrals, ConvError> {
    if !(1..=20).contains(&c) {
        return Err(ConvError::BadModulus(c));
    }
    let r = q / gcd(c, q);
    let m_max = BASE_NODES << (LEVELS - 1);
    let h = g.x / m_max as f64;
    let nodes: Vec<(f64, f64)> = (1..m_max)
        .map(|j| {
            let x = g.x + j as f64 * h;
            (g.eval(x), x.sqrt())
        })
        .collect();
    let scale = g.integral();
    let mut values = Vec::new();
    let mut quad_err = Vec::new();
    let mut recent = std::collections::VecDeque::with_capacity(WINDOW);
    for n in 1..=MAX_DUAL {
        let b = 4.0 * PI / c as f64 * (n as f64 / r as f64).sqrt();
        // phase of J0 per node at most 0.2 on the chosen grid
        let level = (0..LEVELS)
            .find(|&k| b * g.x.sqrt() / (2.0 * (BASE_NODES << k) as f64) <= 0.2)
            .ok_or(ConvError::DualNotConverged(n))?;
        let stride = 1usize << (LEVELS - 1 - level);
        let mut fine = KahanSum::new();
        let mut coarse = KahanSum::new();
        for (j, &(gx, sx)) in nodes.iter().enumerate().skip(stride - 1).step_by(stride) {
            if gx == 0.0 {
                continue;
            }
            let v = gx * bessel_j0(b * sx);
            fine.add(v);
            if ((j + 1) / stride).is_multiple_of(2) {
                coarse.add(v);
            }
        }
        let step = h * stride as f64;
        let val = fine.value() * step;
        values.push(val);
        quad_err.push((val - coarse.value() * 2.0 * step).abs());
        if recent.len() == WINDOW {
            recent.pop_front();
        }
        recent.push_back(val.abs());
        if recent.len() == WINDOW && recent.iter().all(|&a| a < threshold * scale) {
            return Ok(DualIntegrals {
                q,
                c,
                r,
                threshold,
                values,
                quad_err,
            });
        }
    }
    Err(ConvError::DualNotConverged(MAX_DUAL))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VoronoiCheck {
    pub q: u64,
    pub v: u64,
    pub w: u64,
    pub c: u64,
    pub a: i64,
    #[serde(serialize_with = "ser_complex")]
    pub lhs: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub leading: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub dual: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub rhs: Complex64,
    #[serde(serialize_with = "ser_complex")]
    pub sigma: Complex64,
    pub residual: f64,
    /// residual / sum |tau(n)| g(n)
    pub relative: f64,
    pub dual_terms: usize,
    pub quad_err: f64,
    /// lhs matches leading - dual much better than leading + dual
    pub sign_flip: bool,
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub fn voronoi_verify(
    f: &Factorization,
    c: u64,
    a: i64,
    g: &BumpFunction,
    threshold: f64,
) -> Result<VoronoiCheck, ConvError> {
    if gcd(a.unsigned_abs(), c) != 1 {
        return Err(ConvError::NotCoprime { a, c });
    }
    let dual = dual_integrals(f.q(), c, g, threshold)?;
    voronoi_with(&dual, f, a, g)
}

/// Both sides of the Voronoi formula for tau(n; chi_v, chi_w) e(an/c) g(n),
/// reusing precomputed dual integrals (they depend only on q, c and g).
pub fn voronoi_with(
    dual: &DualIntegrals,
    f: &Factorization,
    a: i64,
    g: &BumpFunction,
) -> Result<VoronoiCheck, ConvError> {
    let c = dual.c;
    let q = f.q();
    if gcd(a.unsigned_abs(), c) != 1 {
        return Err(ConvError::NotCoprime { a, c });
    }
    let (v, w) = (f.v, f.w);
    let l1 = l_one_chi(&FieldParams::new(q)?)?;

    let top = (2.0 * g.x).floor() as usize;
    let tau = twisted_divisor_table(f, top);
    let mut lhs = ComplexSum::new();
    let mut scale = KahanSum::new();
    for n in (g.x.ceil() as usize).max(1)..=top {
        let gn = g.eval(n as f64);
        lhs.add(e_frac(a * n as i64, c) * (tau[n] * gn));
        scale.add(tau[n].abs() * gn);
    }
    let lhs = lhs.value();
    let scale = scale.value();

    // chi(z) = 0 when z is not an integer
    let term = |x: u64, y: u64| -> Result<Complex64, ConvError> {
        if !c.is_multiple_of(x) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(gauss_sum_real(x)? * (real_char(x, a) * real_char(y, (c / x) as i64)) as f64)
    };
    let leading = (term(v, w)? + term(w, v)?) * (l1 / c as f64 * g.integral());

    let s = gcd(c, q);
    let r = q / s;
    let cv = gcd(c, v);
    let cw = gcd(c, w);
    let sigma = epsilon(v)
        * epsilon(v * s)
        * (real_char(s, a * (v / cv) as i64) * real_char(r, (c / cv) as i64) * real_char(gcd(r, v), -1)) as f64;
    let dual_f = Factorization {
        v: cv * w / cw,
        w: cw * v / cv,
    };
    let n_dual = dual.values.len();
    let tau_dual = twisted_divisor_table(&dual_f, n_dual);
    let abar = inverse_mod(a * r as i64, c);
    let mut acc = ComplexSum::new();
    let mut quad = KahanSum::new();
    for n in 1..=n_dual {
        acc.add(e_frac(-abar * n as i64, c) * (tau_dual[n] * dual.values[n - 1]));
        quad.add(tau_dual[n].abs() * dual.quad_err[n - 1]);
    }
    let pref = 2.0 * PI / (c as f64 * (r as f64).sqrt());
    let dual_sum = sigma * acc.value() * pref;
    let rhs = leading + dual_sum;
    let residual = (lhs - rhs).norm();
    let flipped = (lhs - (leading - dual_sum)).norm();
    Ok(VoronoiCheck {
        q,
        v,
        w,
        c,
        a,
        lhs,
        leading,
        dual: dual_sum,
        rhs,
        sigma,
        residual,
        relative: residual / scale,
        dual_terms: n_dual,
        quad_err: quad.value() * pref,
        sign_flip: residual > 1e-6 * scale && flipped < 1e-3 * residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::twisted_divisor;

    #[test]
    fn bump_vanishes_at_ends_and_is_normalized() {
        let g = make_bump(100.0).unwrap();
        assert_eq!(g.eval(100.0), 0.0);
        assert_eq!(g.eval(200.0), 0.0);
        assert!(g.eval(150.0) > 0.0);
        assert!(g.check_normalization(10_000) <= 1.0);
        // kappa is tight: the normalization is nearly attained
        assert!(g.check_normalization(10_000) > 0.99);
        assert!(make_bump(0.4).is_err());
    }

    #[test]
    fn bump_derivatives_match_differences() {
        let g = make_bump(50.0).unwrap();
        for &x in &[56.0, 75.0, 91.0] {
            let h = 1e-4;
            let d1 = (g.eval(x + h) - g.eval(x - h)) / (2.0 * h);
            let d2 = (g.derivative(x + h) - g.derivative(x - h)) / (2.0 * h);
            assert!((d1 - g.derivative(x)).abs() < 1e-9);
            assert!((d2 - g.second_derivative(x)).abs() < 1e-9);
        }
    }

    #[test]
    fn bump_integral_against_simpson() {
        // composite Simpson on a much finer grid of the profile
        let n = 200_000;
        let hstep = 1.0 / n as f64;
        let mut acc = KahanSum::new();
        for j in 1..n {
            let wt = if j % 2 == 1 { 4.0 } else { 2.0 };
            acc.add(wt * profile(j as f64 * hstep)[0]);
        }
        let reference = acc.value() * hstep / 3.0;
        let g = make_bump(1000.0).unwrap();
        assert!((g.integral() - g.kappa * 1000.0 * reference).abs() < 1e-12 * g.integral());
    }

    #[test]
    fn twisted_table_matches_divisor_sum() {
        let f = Factorization::new(39, 3).unwrap();
        let t = twisted_divisor_table(&f, 2000);
        for n in 1..=2000u64 {
            assert_eq!(t[n as usize] as i64, twisted_divisor(n, &f));
        }
    }

    #[test]
    fn brute_sum_edge_cases_and_reordering() {
        let f = Factorization::new(23, 1).unwrap();
        let tau = twisted_divisor_table(&f, 3000);
        // supports between integers
        let tiny = make_bump(0.6).unwrap();
        assert_eq!(shifted_convolution_brute(&tau, 1, &tiny, &tiny).unwrap(), 0.0);
        let g = make_bump(1000.0).unwrap();
        assert_eq!(shifted_convolution_brute(&tau, 999, &g, &g).unwrap(), 0.0);
        let b = shifted_convolution_brute(&tau, 1, &g, &g).unwrap();
        // m-major order
        let mut acc = KahanSum::new();
        for m in (1001..2000).rev() {
            acc.add(tau[m] * tau[m - 1] * g.eval(m as f64) * g.eval((m - 1) as f64));
        }
        assert!((b - acc.value()).abs() <= 1e-9 * b.abs());
        assert!(shifted_convolution_brute(&tau[..1500], 1, &g, &g).is_err());
    }

    #[test]
    fn reflection_swaps_bumps() {
        let f = Factorization::new(23, 1).unwrap();
        let tau = twisted_divisor_table(&f, 5000);
        let g1 = make_bump(1000.0).unwrap();
        let g2 = make_bump(1100.0).unwrap();
        for h in [1i64, 3, 17] {
            let fwd = shifted_convolution_brute(&tau, h, &g1, &g2).unwrap();
            let back = shifted_convolution_brute(&tau, -h, &g2, &g1).unwrap();
            assert!((fwd - back).abs() <= 1e-9 * fwd.abs().max(1.0));
        }
    }

    #[test]
    fn main_term_edge_cases() {
        let f = Factorization::new(23, 1).unwrap();
        let g = make_bump(100.0).unwrap();
        assert_eq!(shifted_convolution_main(150, &f, &g, &g, 1.0).unwrap(), 0.0);
        assert!(shifted_convolution_main(0, &f, &g, &g, 1.0).is_err());
    }

    #[test]
    fn main_term_tracks_brute_sum() {
        let f = Factorization::new(23, 1).unwrap();
        let x: f64 = 1e4;
        let g = make_bump(x).unwrap();
        let tau = twisted_divisor_table(&f, 2 * x as usize + 2);
        let l1 = l_one_chi(&FieldParams::new(23).unwrap()).unwrap();
        let b = shifted_convolution_brute(&tau, 1, &g, &g).unwrap();
        let main = shifted_convolution_main(1, &f, &g, &g, l1).unwrap();
        assert!((b - main).abs() <= 50.0 * x.powf(0.75) * (3.0 * x).ln().powi(2));
    }

    #[test]
    fn synthetic_control_has_unit_slope() {
        let fit = exponent_experiment(&Channel::Synthetic, 1, &[1e3, 1e4, 1e5]).unwrap();
        assert!((fit.slope.unwrap() - 1.0).abs() < 0.05);
        assert!(!fit.gate);
        assert!(exponent_experiment(&Channel::Synthetic, 1, &[1e3, 1e4]).is_err());
        assert!(exponent_experiment(&Channel::Synthetic, 1, &[1e3, 1e4, 2e4]).is_err());
    }

    #[test]
    fn cusp_channel_has_no_main_term() {
        let fit = exponent_experiment(&Channel::Hecke { q: 23, index: 1 }, 1, &[1e2, 1e3, 1e4]).unwrap();
        assert!(fit.rows.iter().all(|r| r.main == 0.0));
    }

    #[test]
    fn voronoi_trivial_modulus() {
        let f = Factorization::new(23, 1).unwrap();
        let g = make_bump(100.0).unwrap();
        let chk = voronoi_verify(&f, 1, 0, &g, 1e-12).unwrap();
        let l1 = l_one_chi(&FieldParams::new(23).unwrap()).unwrap();
        assert!((chk.leading - l1 * g.integral()).norm() < 1e-12 * chk.leading.norm());
        assert!(chk.relative <= 1e-6, "{chk:?}");
        assert!(!chk.sign_flip);
    }

    #[test]
    fn voronoi_leading_term_vanishes_off_divisors() {
        let f = Factorization::new(39, 3).unwrap();
        let g = make_bump(100.0).unwrap();
        // neither 3 nor 13 divides 2
        let chk = voronoi_verify(&f, 2, 1, &g, 1e-9).unwrap();
        assert_eq!(chk.leading, Complex64::new(0.0, 0.0));
        assert!(voronoi_verify(&f, 6, 3, &g, 1e-9).is_err());
    }

    #[test]
    fn voronoi_modulus_three() {
        let f = Factorization::new(23, 1).unwrap();
        let g = make_bump(100.0).unwrap();
        let chk = voronoi_verify(&f, 3, 1, &g, 1e-12).unwrap();
        assert!(chk.relative <= 1e-6, "{chk:?}");
    }
}
