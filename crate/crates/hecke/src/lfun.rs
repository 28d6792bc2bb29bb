//! Hecke L-functions of class group characters: coefficients, the smoothed
//! two-sided series inside the critical strip, the completed and rotated
//! functions, mollifier partial sums and the Rankin-Selberg product.

use crate::arith::{divisor_count, jacobi, prime_divisors, FieldParams};
use crate::quadforms::{
    characters, class_number, enumerate_class_group, weighted_representation_table, ClassCharacter, ClassGroup,
};
use crate::special::{hurwitz_zeta, ln_gamma, zeta, ZETA_2};
use crate::sum::{ComplexSum, KahanSum};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LfunError {
    #[error(transparent)]
    Arith(#[from] crate::arith::ArithError),
    #[error("character index {index} out of range for class number {h}")]
    NoSuchCharacter { index: usize, h: usize },
    #[error("coefficients of character {index} have imaginary residue {residue:e}")]
    ComplexCoefficients { index: usize, residue: f64 },
    #[error("coefficient cache holds {have} terms but {need} are required")]
    CacheTooShort { have: usize, need: usize },
    #[error("s = {0} lies outside 0 < Re s < 1")]
    OutsideStrip(Complex64),
    #[error("s = {0} is a pole")]
    Pole(Complex64),
    #[error("L(1, chi) from the class number ({class}) and the series ({series}) differ by more than {bound:e}")]
    ClassNumberMismatch { class: f64, series: f64, bound: f64 },
    #[error("hardy Z at t = {t} has imaginary part {im:e}")]
    NotReal { t: f64, im: f64 },
    #[error("quadrature estimate {err:e} exceeds tolerance {tol:e}")]
    Quadrature { err: f64, tol: f64 },
    #[error("mollifier sums need q <= 60, got {0}")]
    ModulusTooLarge(u64),
    #[error("test exponent A = {0} must be even and at least 4")]
    BadTestExponent(u32),
    #[error("series side needs Re s > 1, got {0}")]
    NotAbsolutelyConvergent(Complex64),
}

pub const DEFAULT_A: u32 = 48;
const STEP: f64 = 0.05;
const WINDOW_PAD: f64 = 60.0;

/// A value together with its truncation length and error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: Complex64,
    pub truncation_n: usize,
    pub est_error: f64,
}

/// lambda(n) = (1/2) sum_A psi(A) r_A(n) for 1 <= n <= n_max; index 0 is unused.
pub fn hecke_coefficients(group: &ClassGroup, psi: &ClassCharacter, n_max: usize) -> Result<Vec<f64>, LfunError> {
    let table = weighted_representation_table(group, &psi.values, n_max);
    let mut out = vec![0.0; n_max + 1];
    let mut residue: f64 = 0.0;
    for n in 1..=n_max {
        out[n] = 0.5 * table[n].re;
        residue = residue.max(table[n].im.abs());
    }
    if residue > 1e-9 {
        return Err(LfunError::ComplexCoefficients {
            index: psi.index,
            residue,
        });
    }
    Ok(out)
}

/// Smallest prime factor of every n <= n_max.
fn smallest_prime_factors(n_max: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n_max + 1];
    for i in 2..=n_max {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n_max {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Builds a multiplicative function from its values on prime powers.
pub(crate) fn multiplicative_table(n_max: usize, mut local: impl FnMut(u64, u32) -> f64) -> Vec<f64> {
    let spf = smallest_prime_factors(n_max);
    let mut out = vec![0.0; n_max + 1];
    if n_max >= 1 {
        out[1] = 1.0;
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        out[n] = out[m] * local(p as u64, e);
    }
    out
}

/// Dirichlet inverse of lambda from the degree two Euler product:
/// lambda*(p) = -lambda(p), lambda*(p^2) = chi(p), zero beyond.
pub fn inverse_coefficients(lambda: &[f64], q: u64) -> Vec<f64> {
    let n_max = lambda.len().saturating_sub(1);
    multiplicative_table(n_max, |p, e| match e {
        1 => -lambda[p as usize],
        2 => jacobi(p as i64, q) as f64,
        _ => 0.0,
    })
}

/// tau(n, chi) = sum_{d | n} chi(d) for n <= n_max, as exact integers.
pub fn tau_chi_table(q: u64, n_max: usize) -> Vec<i64> {
    multiplicative_table(n_max, |p, e| {
        let c = jacobi(p as i64, q);
        (0..=e).map(|j| c.pow(j) as f64).sum()
    })
    .into_iter()
    .map(|x| x as i64)
    .collect()
}

/// Certified partial sum of sum chi(n)/n: returns (value, tail bound).
pub fn l_one_chi_series(q: u64) -> (f64, f64) {
    let chi: Vec<i32> = (0..q).map(|a| jacobi(a as i64, q)).collect();
    let mut s = 0i64;
    let mut b = 0i64;
    for &c in &chi {
        s += c as i64;
        b = b.max(s.abs());
    }
    // |tail| <= 2B/(M+1); aim for 0.05/sqrt(q)
    let target = 0.05 / (q as f64).sqrt();
    let periods = ((2.0 * b as f64 / target) / q as f64).ceil().max(1.0) as u64;
    let m = periods * q;
    let mut acc = KahanSum::new();
    for n in 1..=m {
        let c = chi[(n % q) as usize];
        if c != 0 {
            acc.add(c as f64 / n as f64);
        }
    }
    (acc.value(), 2.0 * b as f64 / (m + 1) as f64)
}

/// L(1, chi) = pi h / sqrt(q), cross-checked against the truncated series.
pub fn l_one_chi(params: &FieldParams) -> Result<f64, LfunError> {
    let h = class_number(params.q) as f64;
    let class = PI * h / (params.q as f64).sqrt();
    let (series, bound) = l_one_chi_series(params.q);
    if (class - series).abs() > bound {
        return Err(LfunError::ClassNumberMismatch { class, series, bound });
    }
    Ok(class)
}

/// G(u) = cos(pi u / A)^-A.
pub fn g_weight(u: Complex64, a_test: u32) -> Complex64 {
    let a = a_test as f64;
    (-a * (u * (PI / a)).cos().ln()).exp()
}

fn check_a(a_test: u32) -> Result<(), LfunError> {
    if a_test < 4 || a_test % 2 == 1 {
        Err(LfunError::BadTestExponent(a_test))
    } else {
        Ok(())
    }
}

/// Integration nodes u = 1 + i tau on the window |tau| <= |Im s| + 60.
fn nodes(s: Complex64) -> (f64, usize) {
    let w = s.im.abs() + WINDOW_PAD;
    let k = (2.0 * w / STEP).round() as usize;
    (-w, k)
}

/// V_s(y) = (1/2 pi i) int_(1) Gamma(s+u)/Gamma(s) G(u)/u y^-u du by the
/// trapezoid rule; the error is the step-halving difference.
pub fn test_function_v(s: Complex64, y: f64, a_test: u32) -> Result<(Complex64, f64), LfunError> {
    check_a(a_test)?;
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(LfunError::OutsideStrip(s));
    }
    let (tau0, k) = nodes(s);
    let lg_s = ln_gamma(s);
    let ly = y.ln();
    let mut fine = ComplexSum::new();
    let mut coarse = ComplexSum::new();
    for j in 0..=k {
        let u = Complex64::new(1.0, tau0 + j as f64 * STEP);
        let f = (ln_gamma(s + u) - lg_s - u * ly).exp() * g_weight(u, a_test) / u;
        let wt = if j == 0 || j == k { 0.5 } else { 1.0 };
        fine.add(f * wt);
        if j % 2 == 0 {
            coarse.add(f * wt);
        }
    }
    let v_fine = fine.value() * (STEP / (2.0 * PI));
    let v_coarse = coarse.value() * (2.0 * STEP / (2.0 * PI));
    Ok((v_fine, (v_fine - v_coarse).norm()))
}

/// X(s) = Q^{1-2s} Gamma(1-s)/Gamma(s).
pub fn gamma_factor_x(s: Complex64, params: &FieldParams) -> Result<Complex64, LfunError> {
    let one_minus = 1.0 - s;
    if one_minus.im == 0.0 && one_minus.re <= 0.0 && one_minus.re.fract() == 0.0 {
        return Err(LfunError::Pole(s));
    }
    Ok(((1.0 - 2.0 * s) * params.big_q.ln() + ln_gamma(one_minus) - ln_gamma(s)).exp())
}

/// Series truncation point Q (|s| + 40 A).
pub fn truncation_point(params: &FieldParams, s: Complex64, a_test: u32) -> usize {
    (params.big_q * (s.norm() + 40.0 * a_test as f64)).ceil() as usize
}

/// sum_{d(n) n^-a} over n > N, from sum_{n <= x} d(n) <= x (1 + log x).
fn divisor_tail(n: f64, a: f64) -> f64 {
    let l = 1.0 + n.ln();
    a * n.powf(1.0 - a) * (l / (a - 1.0) + 1.0 / ((a - 1.0) * (a - 1.0)))
}

/// sum_{n <= N} lambda(n) n^-s V_s(n/Q) with quadrature and truncation errors.
fn smoothed_sum(lambda: &[f64], s: Complex64, n_trunc: usize, big_q: f64, a_test: u32) -> (Complex64, f64) {
    let (tau0, k) = nodes(s);
    let lg_s = ln_gamma(s);
    let lq = big_q.ln();
    let n_trunc = n_trunc.min(lambda.len() - 1);
    let logs: Vec<f64> = (0..=n_trunc).map(|n| (n.max(1) as f64).ln()).collect();
    let d_abs: f64 = (1..=n_trunc)
        .map(|n| lambda[n].abs() * (-(s.re + 1.0) * logs[n]).exp())
        .sum();

    // prefactors Gamma(s+u)/Gamma(s) G(u)/u Q^u and the significant node range
    let prefactor = |j: usize| {
        let u = Complex64::new(1.0, tau0 + j as f64 * STEP);
        (ln_gamma(s + u) - lg_s + u * lq).exp() * g_weight(u, a_test) / u
    };
    let negligible = 1e-22 / (d_abs * STEP).max(1e-300);
    let mut pre = vec![Complex64::new(0.0, 0.0); k + 1];
    let mut lo = k + 1;
    let mut hi = 0;
    for (j, p) in pre.iter_mut().enumerate() {
        *p = prefactor(j);
        if p.norm() > negligible {
            lo = lo.min(j);
            hi = hi.max(j);
        }
    }
    let mut fine = ComplexSum::new();
    let mut coarse = ComplexSum::new();
    if lo <= hi {
        let support: Vec<usize> = (1..=n_trunc).filter(|&n| lambda[n] != 0.0).collect();
        let rot: Vec<Complex64> = support
            .iter()
            .map(|&n| Complex64::from_polar(1.0, -STEP * logs[n]))
            .collect();
        let anchor = |j: usize| -> Vec<Complex64> {
            let u = Complex64::new(1.0, tau0 + j as f64 * STEP);
            support
                .iter()
                .map(|&n| lambda[n] * (-(s + u) * logs[n]).exp())
                .collect()
        };
        let mut terms = anchor(lo);
        for j in lo..=hi {
            if (j - lo) % 128 == 0 && j != lo {
                terms = anchor(j);
            }
            let d: Complex64 = terms.iter().sum();
            let f = pre[j] * d;
            let wt = if j == 0 || j == k { 0.5 } else { 1.0 };
            fine.add(f * wt);
            if j % 2 == 0 {
                coarse.add(f * wt);
            }
            for (t, r) in terms.iter_mut().zip(&rot) {
                *t *= r;
            }
        }
    }
    let v_fine = fine.value() * (STEP / (2.0 * PI));
    let v_coarse = coarse.value() * (2.0 * STEP / (2.0 * PI));
    let quad_err = (v_fine - v_coarse).norm() + 1e-15 * d_abs;

    // truncation: for 0 < c < A/2, |V_s(y)| <= K_c y^-c; take the best c
    let tail = (1..a_test / 6)
        .map(|c| 3.0 * c as f64)
        .chain(std::iter::once(a_test as f64 / 2.0 - 0.5))
        .map(|c| contour_bound(s, lg_s, c, a_test) * big_q.powf(c) * divisor_tail(n_trunc as f64, s.re + c))
        .fold(f64::INFINITY, f64::min);
    (v_fine, quad_err + tail)
}

/// K_c = (1/2 pi) int |Gamma(s+u)/Gamma(s) G(u)/u| on Re u = c, by a coarse
/// trapezoid over the same window.
fn contour_bound(s: Complex64, lg_s: Complex64, c: f64, a_test: u32) -> f64 {
    let h = 0.25;
    let w = s.im.abs() + WINDOW_PAD;
    let k = (2.0 * w / h).round() as usize;
    let mut acc = KahanSum::new();
    for j in 0..=k {
        let u = Complex64::new(c, -w + j as f64 * h);
        acc.add(((ln_gamma(s + u) - lg_s).exp() * g_weight(u, a_test) / u).norm());
    }
    acc.value() * h / (2.0 * PI)
}

/// A Hecke L-series attached to one class group character.
#[derive(Debug, Clone)]
pub struct HeckeLSeries {
    pub params: FieldParams,
    pub char_index: usize,
    pub psi: ClassCharacter,
    pub trivial: bool,
    pub a_test: u32,
    pub l1: f64,
    lambda: Vec<f64>,
    lambda_star: Vec<f64>,
}

impl HeckeLSeries {
    pub fn new(
        params: &FieldParams,
        group: &ClassGroup,
        psi: &ClassCharacter,
        n_max: usize,
        a_test: u32,
    ) -> Result<Self, LfunError> {
        check_a(a_test)?;
        let lambda = hecke_coefficients(group, psi, n_max.max(1))?;
        let lambda_star = inverse_coefficients(&lambda, params.q);
        Ok(HeckeLSeries {
            params: params.clone(),
            char_index: psi.index,
            psi: psi.clone(),
            trivial: psi.index == 0,
            a_test,
            l1: l_one_chi(params)?,
            lambda,
            lambda_star,
        })
    }

    /// Series for character `index` with enough coefficients for |Im s| <= t_max.
    pub fn for_character(q: u64, index: usize, t_max: f64) -> Result<Self, LfunError> {
        let params = FieldParams::new(q)?;
        let group = enumerate_class_group(&params);
        let chars = characters(&group);
        let psi = chars
            .get(index)
            .ok_or(LfunError::NoSuchCharacter { index, h: group.h() })?;
        let n_max = truncation_point(&params, Complex64::new(1.0, t_max), DEFAULT_A) + 1;
        Self::new(&params, &group, psi, n_max, DEFAULT_A)
    }

    pub fn with_test_exponent(&self, a_test: u32) -> Result<Self, LfunError> {
        check_a(a_test)?;
        Ok(HeckeLSeries { a_test, ..self.clone() })
    }

    pub fn n_max(&self) -> usize {
        self.lambda.len() - 1
    }

    pub fn lambda(&self, n: usize) -> f64 {
        self.lambda[n]
    }

    pub fn lambda_star(&self, n: usize) -> f64 {
        self.lambda_star[n]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.lambda
    }

    pub fn inverse_coefficients(&self) -> &[f64] {
        &self.lambda_star
    }

    /// The residual terms present for the trivial character only.
    fn residual(&self, s: Complex64) -> Complex64 {
        if !self.trivial {
            return Complex64::new(0.0, 0.0);
        }
        let big_q = self.params.big_q;
        let pre = ((1.0 - s) * big_q.ln() - ln_gamma(s)).exp() * self.l1;
        pre * (g_over_u(s - 1.0, self.a_test) - g_over_u(s, self.a_test))
    }

    /// L(s) for 0 < Re s < 1 from the smoothed two-sided series.
    pub fn l_value(&self, s: Complex64) -> Result<EvalResult, LfunError> {
        if !(s.re > 0.0 && s.re < 1.0) {
            return Err(LfunError::OutsideStrip(s));
        }
        let n = truncation_point(&self.params, s, self.a_test);
        if n > self.n_max() {
            return Err(LfunError::CacheTooShort {
                have: self.n_max(),
                need: n,
            });
        }
        let big_q = self.params.big_q;
        let (s1, e1) = smoothed_sum(&self.lambda, s, n, big_q, self.a_test);
        let (s2, e2) = smoothed_sum(&self.lambda, 1.0 - s, n, big_q, self.a_test);
        let x = gamma_factor_x(s, &self.params)?;
        let value = s1 + x * s2 + self.residual(s);
        Ok(EvalResult {
            value,
            truncation_n: n,
            est_error: e1 + x.norm() * e2,
        })
    }

    /// Lambda(s) = Q^s Gamma(s) L(s).
    pub fn completed_lambda(&self, s: Complex64) -> Result<Complex64, LfunError> {
        let l = self.l_value(s)?.value;
        Ok((s * self.params.big_q.ln() + ln_gamma(s)).exp() * l)
    }

    /// theta(t) = t log Q + Im log Gamma(1/2 + it).
    pub fn theta(&self, t: f64) -> f64 {
        t * self.params.big_q.ln() + ln_gamma(Complex64::new(0.5, t)).im
    }

    /// Z(t) = e^{i theta(t)} L(1/2 + it), real valued.
    pub fn hardy_z(&self, t: f64) -> Result<f64, LfunError> {
        let l = self.l_value(Complex64::new(0.5, t))?.value;
        let z = Complex64::from_polar(1.0, self.theta(t)) * l;
        if z.im.abs() > 1e-9 * (1.0 + l.norm()) {
            return Err(LfunError::NotReal { t, im: z.im });
        }
        Ok(z.re)
    }
}

/// G(u)/u, with the removable structure near u = 0 handled by the even
/// expansion G(u) = 1 + g2 u^2 + g4 u^4.
fn g_over_u(u: Complex64, a_test: u32) -> Complex64 {
    if u.norm() < 1e-3 {
        // log cos x = -x^2/2 - x^4/12, x = pi u / A
        let a = a_test as f64;
        let x2 = u * u * (PI / a) * (PI / a);
        let lg = a * (x2 / 2.0 + x2 * x2 / 12.0);
        return lg.exp() / u;
    }
    g_weight(u, a_test) / u
}

/// Dirichlet L(s, (./m)) for squarefree odd m (m = 1 gives zeta), s != 1.
pub fn dirichlet_l(m: u64, s: Complex64) -> Complex64 {
    if m == 1 {
        return zeta(s);
    }
    let mut acc = ComplexSum::new();
    for a in 1..m {
        let c = jacobi(a as i64, m);
        if c != 0 {
            acc.add(hurwitz_zeta(s, a as f64 / m as f64) * c as f64);
        }
    }
    acc.value() * (-s * (m as f64).ln()).exp()
}

/// Partial Dirichlet polynomials N(s), M(s) and B(s) = M(s) N(s) - 1.
#[derive(Debug, Clone, Copy)]
pub struct MollifierSums {
    pub length: usize,
    pub n_value: Complex64,
    pub m_value: Complex64,
    pub b_value: Complex64,
}

pub fn mollifier_sums(series: &HeckeLSeries, s: Complex64) -> Result<MollifierSums, LfunError> {
    let q = series.params.q;
    if q > 60 {
        return Err(LfunError::ModulusTooLarge(q));
    }
    let len = (q as usize).pow(4);
    if len > series.n_max() {
        return Err(LfunError::CacheTooShort {
            have: series.n_max(),
            need: len,
        });
    }
    let mut n_acc = ComplexSum::new();
    let mut m_acc = ComplexSum::new();
    for n in 1..=len {
        let p = (-s * (n as f64).ln()).exp();
        n_acc.add(p * series.lambda[n]);
        m_acc.add(p * series.lambda_star[n]);
    }
    let n_value = n_acc.value();
    let m_value = m_acc.value();
    Ok(MollifierSums {
        length: len,
        n_value,
        m_value,
        b_value: m_value * n_value - 1.0,
    })
}

/// Coefficient of l^-s in M(s) N(s) with both factors truncated at `len`.
pub fn truncated_product_coefficient(series: &HeckeLSeries, len: usize, l: usize) -> f64 {
    let mut acc = KahanSum::new();
    let mut a = 1;
    while a * a <= l {
        if l.is_multiple_of(a) {
            let b = l / a;
            if a <= len && b <= len {
                acc.add(series.lambda[a] * series.lambda_star[b]);
            }
            if a != b && a <= len && b <= len {
                acc.add(series.lambda[b] * series.lambda_star[a]);
            }
        }
        a += 1;
    }
    acc.value()
}

/// Outcome of comparing sum tau^2(n, chi) n^-s with its closed form.
#[derive(Debug, Clone, Copy)]
pub struct RankinCheck {
    pub partial: Complex64,
    pub tail_estimate: Complex64,
    pub tail_bound: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub alpha_hat: f64,
    pub alpha: f64,
}

/// zeta^2(s) L^2(s, chi) / zeta(2s) prod_{p | q} (1 + p^-s)^-1.
pub fn rankin_closed_form(params: &FieldParams, s: Complex64) -> Complex64 {
    let z = zeta(s);
    let l = dirichlet_l(params.q, s);
    let mut val = z * z * l * l / zeta(2.0 * s);
    for p in prime_divisors(params.q) {
        val /= 1.0 + (-s * (p as f64).ln()).exp();
    }
    val
}

/// (q/nu(q)) L(1,chi)^2 / zeta(2).
pub fn rankin_alpha(params: &FieldParams, l1: f64) -> f64 {
    params.q as f64 / params.nu_q as f64 * l1 * l1 / ZETA_2
}

/// lim (s-1)^2 R_K(s) from the closed form at s = 1 + 10^-3 with one
/// Richardson step.
pub fn rankin_alpha_numeric(params: &FieldParams) -> f64 {
    let f = |e: f64| (rankin_closed_form(params, Complex64::new(1.0 + e, 0.0)) * e * e).re;
    let e = 1e-3;
    2.0 * f(e / 2.0) - f(e)
}

pub fn rankin_selberg_check(params: &FieldParams, s: Complex64, n_terms: usize) -> Result<RankinCheck, LfunError> {
    if s.re <= 1.0 {
        return Err(LfunError::NotAbsolutelyConvergent(s));
    }
    let tau = tau_chi_table(params.q, n_terms);
    let mut acc = ComplexSum::new();
    for (n, &t) in tau.iter().enumerate().skip(1) {
        if t != 0 {
            acc.add((-s * (n as f64).ln()).exp() * (t * t) as f64);
        }
    }
    let partial = acc.value();
    let l1 = l_one_chi(params)?;
    let alpha = rankin_alpha(params, l1);
    // tail from the mean value sum_{n <= x} tau^2 ~ x (alpha log x + alpha')
    let n = n_terms as f64;
    let sm1 = s - 1.0;
    let ln = n.ln();
    let tail_estimate = (-sm1 * ln).exp() * alpha * (ln / sm1 + 1.0 / (sm1 * sm1) + 1.0 / sm1);
    // certified: tau^2(n,chi) <= d(n)^2 <= d_4(n), sum_{n<=x} d_4 <= x (1+log x)^3
    let a = s.re - 1.0;
    let l = 1.0 + ln;
    let tail_bound =
        s.re * n.powf(-a) * (l.powi(3) / a + 3.0 * l * l / (a * a) + 6.0 * l / a.powi(3) + 6.0 / a.powi(4));
    Ok(RankinCheck {
        partial,
        tail_estimate,
        tail_bound,
        lhs: partial + tail_estimate,
        rhs: rankin_closed_form(params, s),
        alpha_hat: rankin_alpha_numeric(params),
        alpha,
    })
}

/// sum_{X <= n <= Y} tau^2(n, chi)/n against L(Y) log(Y/X) + (q/X)^(1/2), with
/// L(Y) = L1 (L1 log Y + |L'(1, chi)|). Returns (sum, reference, ratio).
pub fn rankin_partial_ratio(params: &FieldParams, x: usize, y: usize) -> Result<(f64, f64, f64), LfunError> {
    let tau = tau_chi_table(params.q, y);
    let sum: f64 = (x..=y)
        .map(|n| (tau[n] * tau[n]) as f64 / n as f64)
        .collect::<KahanSum>()
        .value();
    let l1 = l_one_chi(params)?;
    let h = 1e-3;
    let d = |e: f64| {
        (dirichlet_l(params.q, Complex64::new(1.0 + e, 0.0)) - dirichlet_l(params.q, Complex64::new(1.0 - e, 0.0))).re
            / (2.0 * e)
    };
    let l_prime = (4.0 * d(h / 2.0) - d(h)) / 3.0;
    let script_l = l1 * (l1 * (y as f64).ln() + l_prime.abs());
    let reference = script_l * (y as f64 / x as f64).ln() + (params.q as f64 / x as f64).sqrt();
    Ok((sum, reference, sum / reference))
}

/// |lambda(n)| <= tau(n, chi) <= d(n) helper for reports.
pub fn divisor_bound(n: u64) -> u64 {
    divisor_count(n)
}
