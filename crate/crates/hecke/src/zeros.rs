//! Zeros of the Hardy function on the critical line, nearest-neighbour gaps,
//! the small-gap count D(alpha, T), difference quotients of L and X, pair
//! correlation histograms and the small-gap hypothesis report.

use crate::lfun::{gamma_factor_x, HeckeLSeries, LfunError};
use crate::special::digamma;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fs;
use std::path::{Path, PathBuf};

/// Bracket width at which a sign change is accepted as a zero.
pub const RESOLUTION: f64 = 1e-9;
/// Panels are [4k, 4k + 4]; every scan uses the same panel grid.
const PANEL: f64 = 4.0;
const REFINE: [usize; 3] = [1, 4, 16];
/// |Z| below this at a sign-less local minimum counts as a touching zero.
const TOUCH: f64 = 1e-7;
const HIGHEST: f64 = 1000.0;

pub const DISCLAIMER: &str =
    "conditional illustration; desk-scale T cannot satisfy log T >= (log q)^(A+6) for interesting q";

#[derive(Debug, thiserror::Error)]
pub enum ZeroError {
    #[error(transparent)]
    Lfun(#[from] LfunError),
    #[error("scan range [{t_min}, {t_max}] must satisfy 2 <= t_min <= t_max <= 1000")]
    BadRange { t_min: f64, t_max: f64 },
    #[error("need at least {need} zeros, got {have}")]
    TooFewZeros { need: usize, have: usize },
    #[error("alpha = {0} outside (0, 1]")]
    BadAlpha(f64),
    #[error("height T = {t} outside [2, {t_max}]")]
    BadHeight { t: f64, t_max: f64 },
    #[error("quotient points need Re s = 1/2 and Im s >= 1, got {0}")]
    BadQuotientPoint(Complex64),
    #[error("bin width {0} must be positive")]
    BadBinWidth(f64),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A panel (or the whole range) whose sign-change count stays below the
/// zero-counting estimate after refinement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deficit {
    pub t_lo: f64,
    pub t_hi: f64,
    pub found: usize,
    pub expected: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub q: u64,
    pub char_index: usize,
    pub zeros: Vec<f64>,
    /// Members of `zeros` that are merged close pairs or touching minima.
    pub flagged: Vec<f64>,
    pub t_min: f64,
    pub t_max: f64,
    pub resolution: f64,
    pub deficits: Vec<Deficit>,
}

impl ZeroSet {
    /// A zero set from given ordinates (sorted here), for synthetic input.
    pub fn from_ordinates(q: u64, char_index: usize, mut zeros: Vec<f64>, t_max: f64) -> Self {
        zeros.sort_by(f64::total_cmp);
        ZeroSet {
            q,
            char_index,
            t_min: zeros.first().copied().unwrap_or(2.0).min(2.0),
            t_max,
            zeros,
            flagged: Vec::new(),
            resolution: RESOLUTION,
            deficits: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn is_flagged(&self, t: f64) -> bool {
        self.flagged.contains(&t)
    }

    /// Number of zeros up to t.
    pub fn count_to(&self, t: f64) -> usize {
        self.zeros.partition_point(|&g| g <= t)
    }
}

/// (T/pi) log(T sqrt(q) / 2 pi) - T/pi.
pub fn expected_zero_count(q: u64, t: f64) -> f64 {
    t / PI * (t * (q as f64).sqrt() / (2.0 * PI)).ln() - t / PI
}

/// Allowed deviation 3 log(qT) of the zero count from `expected_zero_count`.
pub fn count_tolerance(q: u64, t: f64) -> f64 {
    3.0 * (q as f64 * t).ln()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct PanelResult {
    q: u64,
    char_index: usize,
    a_test: u32,
    index: usize,
    zeros: Vec<f64>,
    flagged: Vec<f64>,
    deficit: Option<Deficit>,
}

/// Illinois regula falsi on a bracket with fa * fb < 0, down to width `tol`.
fn illinois(
    f: &impl Fn(f64) -> Result<f64, LfunError>,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    tol: f64,
) -> Result<f64, LfunError> {
    let mut side = 0;
    let mut iter = 0;
    while b - a > tol {
        iter += 1;
        let mut c = if iter > 60 {
            0.5 * (a + b)
        } else {
            (a * fb - b * fa) / (fb - fa)
        };
        if !(c > a && c < b) {
            c = 0.5 * (a + b);
        }
        // step over the root once the secant stalls at one end
        c = c.clamp(a + 0.25 * tol, b - 0.25 * tol);
        let fc = f(c)?;
        if fc == 0.0 {
            return Ok(c);
        }
        if (fc > 0.0) == (fa > 0.0) {
            a = c;
            fa = fc;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        } else {
            b = c;
            fb = fc;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section minimum of f on [a, b]; returns (argmin, min).
fn golden_min(
    f: &impl Fn(f64) -> Result<f64, LfunError>,
    mut a: f64,
    mut b: f64,
    tol: f64,
) -> Result<(f64, f64), LfunError> {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d)?;
        }
    }
    Ok(if fc < fd { (c, fc) } else { (d, fd) })
}

/// Zeros on one grid: sign changes, plus pairs hidden inside a same-sign dip
/// of |Z|, found by minimizing sign * Z over the dip. A dip whose minimum
/// stays within TOUCH of zero is reported once and flagged.
fn grid_zeros(series: &HeckeLSeries, grid: &[f64], z: &[f64]) -> Result<(Vec<f64>, Vec<f64>), LfunError> {
    let f = |t: f64| series.hardy_z(t);
    let mut out = Vec::new();
    let mut flagged = Vec::new();
    for j in 1..grid.len() {
        if z[j] == 0.0 {
            out.push(grid[j]);
        } else if z[j - 1] != 0.0 && (z[j - 1] > 0.0) != (z[j] > 0.0) {
            out.push(illinois(&f, grid[j - 1], grid[j], z[j - 1], z[j], RESOLUTION)?);
        }
        if j + 1 == grid.len() || z[j] == 0.0 {
            continue;
        }
        let sign = z[j].signum();
        let same = z[j - 1] * sign > 0.0 && z[j + 1] * sign > 0.0;
        if same && z[j].abs() < z[j - 1].abs() && z[j].abs() < z[j + 1].abs() {
            let g = |t: f64| f(t).map(|v| v * sign);
            let (tm, gm) = golden_min(&g, grid[j - 1], grid[j + 1], RESOLUTION)?;
            if gm < 0.0 {
                let zm = gm * sign;
                out.push(illinois(&f, grid[j - 1], tm, z[j - 1], zm, RESOLUTION)?);
                out.push(illinois(&f, tm, grid[j + 1], zm, z[j + 1], RESOLUTION)?);
            } else if gm <= TOUCH {
                out.push(tm);
                flagged.push(tm);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    Ok((out, flagged))
}

fn scan_panel(series: &HeckeLSeries, k: usize) -> Result<PanelResult, LfunError> {
    let a = k as f64 * PANEL;
    let b = a + PANEL;
    let expected = (series.theta(b) - series.theta(a)) / PI;
    let base = PI / (8.0 * (series.params.big_q * b).max(E).ln());
    let mut best = None;
    for &factor in &REFINE {
        let n = ((b - a) * factor as f64 / base).ceil() as usize;
        let grid: Vec<f64> = (0..=n).map(|j| a + (b - a) * j as f64 / n as f64).collect();
        let z = grid.iter().map(|&t| series.hardy_z(t)).collect::<Result<Vec<_>, _>>()?;
        let (zeros, flagged) = grid_zeros(series, &grid, &z)?;
        let done = zeros.len() as f64 > expected - 1.5;
        best = Some((zeros, flagged));
        if done {
            break;
        }
    }
    let (zeros, flagged) = best.expect("at least one refinement level");
    // a remaining shortfall of two or more is beyond the fluctuation of arg L
    let deficit = (zeros.len() as f64 <= expected - 2.5).then_some(Deficit {
        t_lo: a,
        t_hi: b,
        found: zeros.len(),
        expected,
    });
    Ok(PanelResult {
        q: series.params.q,
        char_index: series.char_index,
        a_test: series.a_test,
        index: k,
        zeros,
        flagged,
        deficit,
    })
}

fn panel_path(dir: &Path, series: &HeckeLSeries, k: usize) -> PathBuf {
    dir.join(format!(
        "q{}_c{}_a{}",
        series.params.q, series.char_index, series.a_test
    ))
    .join(format!("panel_{k:04}.json"))
}

fn io_err(path: &Path, e: impl ToString) -> ZeroError {
    ZeroError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    }
}

/// Panel from the cache when a matching record exists, else scanned and stored.
fn cached_panel(series: &HeckeLSeries, k: usize, cache: Option<&Path>) -> Result<PanelResult, ZeroError> {
    let Some(dir) = cache else {
        return Ok(scan_panel(series, k)?);
    };
    let path = panel_path(dir, series, k);
    if let Ok(text) = fs::read_to_string(&path) {
        if let Ok(p) = serde_json::from_str::<PanelResult>(&text) {
            if p.q == series.params.q && p.char_index == series.char_index && p.a_test == series.a_test && p.index == k
            {
                return Ok(p);
            }
        }
    }
    let p = scan_panel(series, k)?;
    let parent = path.parent().expect("panel path has a parent");
    fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
    let tmp = path.with_extension("json.tmp");
    let text = serde_json::to_string(&p).expect("panel serializes");
    fs::write(&tmp, text).map_err(|e| io_err(&tmp, e))?;
    fs::rename(&tmp, &path).map_err(|e| io_err(&path, e))?;
    Ok(p)
}

pub fn scan_zeros(series: &HeckeLSeries, t_min: f64, t_max: f64) -> Result<ZeroSet, ZeroError> {
    scan_zeros_cached(series, t_min, t_max, None)
}

/// Scan [t_min, t_max] panel by panel (in parallel on the current rayon pool),
/// reusing and filling per-panel records under `cache` when given.
pub fn scan_zeros_cached(
    series: &HeckeLSeries,
    t_min: f64,
    t_max: f64,
    cache: Option<&Path>,
) -> Result<ZeroSet, ZeroError> {
    if !(t_min >= 2.0 && t_min <= t_max && t_max <= HIGHEST) {
        return Err(ZeroError::BadRange { t_min, t_max });
    }
    let mut out = ZeroSet {
        q: series.params.q,
        char_index: series.char_index,
        zeros: Vec::new(),
        flagged: Vec::new(),
        t_min,
        t_max,
        resolution: RESOLUTION,
        deficits: Vec::new(),
    };
    if t_min == t_max {
        return Ok(out);
    }
    let first = (t_min / PANEL).floor() as usize;
    let last = ((t_max / PANEL).ceil() as usize).max(first + 1);
    let panels = (first..last)
        .into_par_iter()
        .map(|k| cached_panel(series, k, cache))
        .collect::<Result<Vec<_>, _>>()?;
    let inside = |t: &f64| *t >= t_min && *t <= t_max;
    for p in panels {
        out.zeros.extend(p.zeros.iter().copied().filter(inside));
        out.flagged.extend(p.flagged.iter().copied().filter(inside));
        out.deficits.extend(p.deficit);
    }
    // pairs closer than the resolution cannot be told apart
    let mut merged: Vec<f64> = Vec::with_capacity(out.zeros.len());
    for &g in &out.zeros {
        match merged.last() {
            Some(&prev) if g - prev <= RESOLUTION => {
                if !out.flagged.contains(&prev) {
                    out.flagged.push(prev);
                }
            }
            _ => merged.push(g),
        }
    }
    out.zeros = merged;
    out.flagged.retain(|f| out.zeros.contains(f));
    out.flagged.sort_by(f64::total_cmp);
    if out.deficits.is_empty() {
        let expected = (series.theta(t_max) - series.theta(t_min)) / PI;
        if out.zeros.len() as f64 <= expected - 2.5 {
            out.deficits.push(Deficit {
                t_lo: t_min,
                t_hi: t_max,
                found: out.zeros.len(),
                expected,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapRecord {
    pub gamma: f64,
    pub gamma_prime: f64,
    pub normalized_gap: f64,
}

/// Nearest other zero for each zero; flagged zeros are their own companion.
pub fn nearest_gaps(zs: &ZeroSet) -> Result<Vec<GapRecord>, ZeroError> {
    let z = &zs.zeros;
    if z.len() < 2 {
        return Err(ZeroError::TooFewZeros { need: 2, have: z.len() });
    }
    Ok((0..z.len())
        .map(|i| {
            let g = z[i];
            let gp = if zs.is_flagged(g) {
                g
            } else if i == 0 {
                z[1]
            } else if i + 1 == z.len() {
                z[i - 1]
            } else if z[i + 1] - g < g - z[i - 1] {
                z[i + 1]
            } else {
                z[i - 1]
            };
            GapRecord {
                gamma: g,
                gamma_prime: gp,
                normalized_gap: (g - gp).abs() * g.ln() / PI,
            }
        })
        .collect())
}

fn check_alpha(alpha: f64) -> Result<(), ZeroError> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(ZeroError::BadAlpha(alpha))
    }
}

/// #{gamma in [2, T] : |gamma - gamma'| <= pi (1 - alpha) / log gamma}.
pub fn d_statistic(zs: &ZeroSet, alpha: f64, t: f64) -> Result<usize, ZeroError> {
    check_alpha(alpha)?;
    if !(2.0..=zs.t_max).contains(&t) {
        return Err(ZeroError::BadHeight { t, t_max: zs.t_max });
    }
    if zs.len() < 2 {
        return Ok(0);
    }
    Ok(nearest_gaps(zs)?
        .iter()
        .filter(|r| {
            r.gamma >= 2.0 && r.gamma <= t && (r.gamma - r.gamma_prime).abs() <= PI * (1.0 - alpha) / r.gamma.ln()
        })
        .count())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientCheck {
    /// (L(s) - L(s')) / (s - s'), or L'(s).
    pub ell: Complex64,
    /// (X(s) - X(s')) / (s - s'), or X'(s).
    pub x: Complex64,
    /// -2 (e/tQ)^{it} (e/t'Q)^{it'} sin((t - t') log tQ) / (t - t').
    pub x_asymptotic: Complex64,
    /// 2 |sin((t - t') log tQ) / (t - t')|.
    pub x_closed_abs: f64,
    /// | |x| - x_closed_abs |, expected O(1/t).
    pub closed_defect: f64,
    /// Largest alpha with |t - t'| log tQ <= pi (1 - alpha), if positive.
    pub alpha_max: Option<f64>,
    /// 2 alpha_max log tQ - |x|, expected at most O(1/t).
    pub lower_defect: Option<f64>,
}

/// sin(d L) / d with the limit L at d = 0.
fn sinc_ratio(d: f64, l: f64) -> f64 {
    if d == 0.0 {
        l
    } else {
        (d * l).sin() / d
    }
}

pub fn quotient_checks(series: &HeckeLSeries, s: Complex64, s_prime: Complex64) -> Result<QuotientCheck, ZeroError> {
    for p in [s, s_prime] {
        if p.re != 0.5 || p.im < 1.0 {
            return Err(ZeroError::BadQuotientPoint(p));
        }
    }
    let params = &series.params;
    let l = |t: f64| -> Result<Complex64, LfunError> { Ok(series.l_value(Complex64::new(0.5, t))?.value) };
    let (t, tp) = (s.im, s_prime.im);
    let (ell, x) = if s == s_prime {
        // Richardson-extrapolated central difference along the line; d/ds = -i d/dt
        let h = 1e-4;
        let d1 = l(t + h)? - l(t - h)?;
        let d2 = l(t + 2.0 * h)? - l(t - 2.0 * h)?;
        let dl = (8.0 * d1 - d2) / (12.0 * h);
        let ds = -Complex64::i() * dl;
        let xs = gamma_factor_x(s, params)?;
        let big_q = params.big_q;
        (ds, xs * (-2.0 * big_q.ln() - digamma(1.0 - s) - digamma(s)))
    } else {
        let ell = (l(t)? - l(tp)?) / (s - s_prime);
        let x = (gamma_factor_x(s, params)? - gamma_factor_x(s_prime, params)?) / (s - s_prime);
        (ell, x)
    };
    let ltq = (t * params.big_q).ln();
    let ltq_p = (tp * params.big_q).ln();
    let phase = Complex64::from_polar(1.0, t * (1.0 - ltq) + tp * (1.0 - ltq_p));
    let ratio = sinc_ratio(t - tp, ltq);
    let x_asymptotic = -2.0 * phase * ratio;
    let x_closed_abs = 2.0 * ratio.abs();
    let alpha = 1.0 - (t - tp).abs() * ltq / PI;
    let alpha_max = (alpha > 0.0).then_some(alpha);
    Ok(QuotientCheck {
        ell,
        x,
        x_asymptotic,
        x_closed_abs,
        closed_defect: (x.norm() - x_closed_abs).abs(),
        alpha_max,
        lower_defect: alpha_max.map(|a| 2.0 * a * ltq - x.norm()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairBin {
    pub u_lo: f64,
    pub u_hi: f64,
    pub count: usize,
    /// count / (number of zeros * bin width)
    pub density: f64,
    /// mean of 1 - (sin pi u / pi u)^2 over the bin
    pub pcc: f64,
}

fn pcc_density(u: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    let x = PI * u;
    1.0 - (x.sin() / x).powi(2)
}

/// Histogram of (gamma_m - gamma_n) log T / 2 pi over pairs m > n, on [0, u_max).
pub fn pair_correlation(zs: &ZeroSet, bin_width: f64, u_max: f64) -> Result<Vec<PairBin>, ZeroError> {
    if zs.len() < 10 {
        return Err(ZeroError::TooFewZeros {
            need: 10,
            have: zs.len(),
        });
    }
    if !(bin_width > 0.0) {
        return Err(ZeroError::BadBinWidth(bin_width));
    }
    let nbins = (u_max / bin_width).ceil() as usize;
    let scale = zs.t_max.ln() / (2.0 * PI);
    let mut counts = vec![0usize; nbins];
    let z = &zs.zeros;
    for i in 0..z.len() {
        for &g in &z[i + 1..] {
            let u = (g - z[i]) * scale;
            if u >= u_max {
                break;
            }
            counts[(u / bin_width) as usize] += 1;
        }
    }
    let n = z.len() as f64;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(b, &count)| {
            let lo = b as f64 * bin_width;
            let hi = lo + bin_width;
            // Simpson on the bin
            let pcc = (pcc_density(lo) + 4.0 * pcc_density(0.5 * (lo + hi)) + pcc_density(hi)) / 6.0;
            PairBin {
                u_lo: lo,
                u_hi: hi,
                count,
                density: count as f64 / (n * bin_width),
                pcc,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub q: u64,
    pub char_index: usize,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub alpha: f64,
    pub c: f64,
    /// (gamma, gamma') of the selected well-spaced points.
    pub selected: Vec<(f64, f64)>,
    #[serde(rename = "R_selected")]
    pub r_selected: usize,
    pub threshold: f64,
    pub verdict: bool,
    pub implied_bound: f64,
    /// Whether |ell| <= (log q)^{7/2} was evaluated rather than taken as automatic.
    pub quotient_checked: bool,
    pub max_quotient: Option<f64>,
    pub variant_count: usize,
    pub variant_threshold: f64,
    pub variant_verdict: bool,
    pub disclaimer: String,
}

/// Leftmost-first selection of points pairwise at least `spacing` apart.
pub fn greedy_spaced(points: &[f64], spacing: f64) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, &p) in points.iter().enumerate() {
        if out.last().is_none_or(|&j| p - points[j] >= spacing) {
            out.push(i);
        }
    }
    out
}

/// Small-gap report: well-spaced zeros with a companion inside the alpha
/// window, the quotient condition (checked with `series` when given), the
/// count threshold c T / (alpha (log q)^A) and the implied lower bound for
/// L(1, chi), plus the variant counted against c T (log T)^{4/5}.
pub fn hypothesis_report(
    zs: &ZeroSet,
    a: f64,
    alpha: f64,
    t: f64,
    c: f64,
    series: Option<&HeckeLSeries>,
) -> Result<HypothesisReport, ZeroError> {
    check_alpha(alpha)?;
    let records = if zs.len() >= 2 { nearest_gaps(zs)? } else { Vec::new() };
    let candidates: Vec<GapRecord> = records
        .iter()
        .filter(|r| {
            r.gamma >= 2.0 && r.gamma <= t && (r.gamma - r.gamma_prime).abs() <= PI * (1.0 - alpha) / r.gamma.ln()
        })
        .copied()
        .collect();
    let log_q = (zs.q as f64).ln();
    let ell_bound = log_q.powf(3.5);
    let mut selected: Vec<(f64, f64)> = Vec::new();
    let mut max_quotient: Option<f64> = None;
    for r in &candidates {
        if selected.last().is_some_and(|&(g, _)| r.gamma - g < 1.0) {
            continue;
        }
        if let Some(series) = series {
            let s = Complex64::new(0.5, r.gamma);
            let sp = Complex64::new(0.5, r.gamma_prime);
            let ell = quotient_checks(series, s, sp)?.ell.norm();
            max_quotient = Some(max_quotient.map_or(ell, |m: f64| m.max(ell)));
            if ell > ell_bound {
                continue;
            }
        }
        selected.push((r.gamma, r.gamma_prime));
    }
    let threshold = c * t / (alpha * log_q.powf(a));
    let r_selected = selected.len();
    let variant_count = records
        .iter()
        .filter(|r| {
            let lg = r.gamma.ln();
            r.gamma > 0.0
                && r.gamma <= t
                && lg > 0.0
                && (r.gamma - r.gamma_prime).abs() <= PI / lg * (1.0 - 1.0 / lg.sqrt())
        })
        .count();
    let variant_threshold = c * t * t.ln().powf(0.8);
    Ok(HypothesisReport {
        q: zs.q,
        char_index: zs.char_index,
        a,
        t,
        alpha,
        c,
        selected,
        r_selected,
        threshold,
        verdict: r_selected as f64 >= threshold,
        implied_bound: t.ln().powi(-2) * log_q.powf(-2.0 * a - 6.0),
        quotient_checked: series.is_some(),
        max_quotient,
        variant_count,
        variant_threshold,
        variant_verdict: variant_count as f64 >= variant_threshold,
        disclaimer: DISCLAIMER.to_string(),
    })
}

/// x rounded to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// One line of the zero cache.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub q: u64,
    #[serde(rename = "char")]
    pub char_index: usize,
    pub t: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub multiple: bool,
}

pub fn zeros_jsonl(zs: &ZeroSet) -> String {
    let mut out = String::new();
    for &t in &zs.zeros {
        let rec = ZeroRecord {
            q: zs.q,
            char_index: zs.char_index,
            t: sig12(t),
            multiple: zs.is_flagged(t),
        };
        out.push_str(&serde_json::to_string(&rec).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn read_zeros_jsonl(text: &str) -> Result<Vec<ZeroRecord>, ZeroError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ZeroError::Parse {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Zero set from cache records; `t_max` defaults to the largest ordinate.
pub fn zero_set_from_records(q: u64, char_index: usize, records: &[ZeroRecord], t_max: Option<f64>) -> ZeroSet {
    let zeros: Vec<f64> = records.iter().map(|r| r.t).collect();
    let top = zeros.iter().copied().fold(2.0, f64::max);
    let mut zs = ZeroSet::from_ordinates(q, char_index, zeros, t_max.unwrap_or(top));
    zs.flagged = records.iter().filter(|r| r.multiple).map(|r| r.t).collect();
    zs
}

pub fn gaps_csv(records: &[GapRecord]) -> String {
    let mut out = String::from("gamma,gamma_prime,norm_gap\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{}\n",
            sig12(r.gamma),
            sig12(r.gamma_prime),
            sig12(r.normalized_gap)
        ));
    }
    out
}
