//! Multiplicative arithmetic attached to Q(sqrt(-q)): Jacobi symbols, twisted
//! divisor sums, Ramanujan and Gauss sums, and the shifted-convolution
//! constants sigma(h) with their generating series.

use crate::special::{zeta, ZETA_0, ZETA_2};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ArithError {
    #[error("q = {0} must be odd, squarefree, 3 mod 4 and greater than 4")]
    InvalidModulus(u64),
    #[error("modulus {0} must be odd and positive")]
    BadJacobiModulus(i64),
    #[error("v = {v} is not a divisor of q = {q}")]
    BadFactorization { q: u64, v: u64 },
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),
    #[error("shift h must be nonzero")]
    ZeroShift,
    #[error("s = {0} is a pole")]
    Pole(Complex64),
    #[error("gauss sum for v = {v}: direct {direct} differs from closed form {closed}")]
    GaussSumMismatch {
        v: u64,
        direct: Complex64,
        closed: Complex64,
    },
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Prime factorization by trial division, as (p, exponent) in increasing p.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Jacobi symbol (n/m) for odd m >= 1; no argument checks.
pub fn jacobi(n: i64, m: u64) -> i32 {
    debug_assert!(m % 2 == 1);
    let mut a = n.rem_euclid(m as i64) as u64;
    let mut m = m;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a %= m;
    }
    if m == 1 {
        t
    } else {
        0
    }
}

/// The Jacobi/Kronecker symbol (n/m) for odd positive m.
pub fn kronecker_symbol(n: i64, m: i64) -> Result<i32, ArithError> {
    if m <= 0 || m % 2 == 0 {
        return Err(ArithError::BadJacobiModulus(m));
    }
    Ok(jacobi(n, m as u64))
}

/// The real primitive character n -> (n/m) for squarefree odd m; m = 1 is trivial.
pub fn real_char(m: u64, n: i64) -> i32 {
    if m == 1 {
        1
    } else {
        jacobi(n, m)
    }
}

/// Global data of the field Q(sqrt(-q)).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldParams {
    pub q: u64,
    /// sqrt(q) / (2 pi)
    pub big_q: f64,
    /// q * prod_{p | q} (1 + 1/p)
    pub nu_q: u64,
}

impl FieldParams {
    pub fn new(q: u64) -> Result<Self, ArithError> {
        if q <= 4 || q % 4 != 3 || !is_squarefree(q) {
            return Err(ArithError::InvalidModulus(q));
        }
        let nu_q = prime_divisors(q).iter().map(|p| p + 1).product();
        Ok(FieldParams {
            q,
            big_q: (q as f64).sqrt() / (2.0 * PI),
            nu_q,
        })
    }

    pub fn chi(&self, n: i64) -> i32 {
        jacobi(n, self.q)
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_divisors(self.q)
    }

    /// Every factorization q = v w, with v running over the divisors of q.
    pub fn factorizations(&self) -> Vec<Factorization> {
        divisors(self.q)
            .into_iter()
            .map(|v| Factorization { v, w: self.q / v })
            .collect()
    }

    /// One representative per unordered pair {v, w}, with v < w.
    pub fn genus_factorizations(&self) -> Vec<Factorization> {
        self.factorizations().into_iter().filter(|f| f.v < f.w).collect()
    }
}

/// A splitting q = v w into coprime factors, with attached characters (./v), (./w).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factorization {
    pub v: u64,
    pub w: u64,
}

impl Factorization {
    pub fn new(q: u64, v: u64) -> Result<Self, ArithError> {
        if v == 0 || !q.is_multiple_of(v) {
            return Err(ArithError::BadFactorization { q, v });
        }
        let w = q / v;
        if gcd(v, w) != 1 {
            return Err(ArithError::BadFactorization { q, v });
        }
        Ok(Factorization { v, w })
    }

    pub fn q(&self) -> u64 {
        self.v * self.w
    }

    pub fn swapped(&self) -> Self {
        Factorization { v: self.w, w: self.v }
    }

    pub fn chi_v(&self, n: i64) -> i32 {
        real_char(self.v, n)
    }

    pub fn chi_w(&self, n: i64) -> i32 {
        real_char(self.w, n)
    }
}

/// tau(n; chi_v, chi_w) = sum over n1 n2 = n of chi_v(n1) chi_w(n2).
pub fn twisted_divisor(n: u64, f: &Factorization) -> i64 {
    assert!(n >= 1);
    divisors(n)
        .into_iter()
        .map(|d| (f.chi_v(d as i64) * f.chi_w((n / d) as i64)) as i64)
        .sum()
}

/// r_c(h) = sum_{d | (c,h)} d mu(c/d).
pub fn ramanujan_sum(c: u64, h: i64) -> i64 {
    assert!(c >= 1);
    let g = gcd(c, h.unsigned_abs());
    divisors(g).into_iter().map(|d| d as i64 * mobius(c / d)).sum()
}

/// epsilon_m = 1 for m = 1 mod 4, i for m = 3 mod 4.
pub fn epsilon(m: u64) -> Complex64 {
    if m % 4 == 1 {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    }
}

/// Gauss sum of (./v): the closed form epsilon_v sqrt(v), checked against the
/// direct exponential sum.
pub fn gauss_sum_real(v: u64) -> Result<Complex64, ArithError> {
    if v.is_multiple_of(2) || !is_squarefree(v) {
        return Err(ArithError::NotSquarefree(v));
    }
    let closed = epsilon(v) * (v as f64).sqrt();
    let mut direct = Complex64::new(0.0, 0.0);
    for a in 0..v {
        let c = real_char(v, a as i64);
        if c != 0 {
            let th = 2.0 * PI * a as f64 / v as f64;
            direct += Complex64::new(th.cos(), th.sin()) * c as f64;
        }
    }
    if (direct - closed).norm() > 1e-10 * (1.0 + closed.norm()) {
        return Err(ArithError::GaussSumMismatch { v, direct, closed });
    }
    Ok(closed)
}

/// zeta_q(2) = prod_{p | q} (1 - p^-2)^-1.
pub fn zeta_q_two(q: u64) -> f64 {
    prime_divisors(q)
        .iter()
        .map(|&p| {
            let p2 = (p * p) as f64;
            p2 / (p2 - 1.0)
        })
        .product()
}

/// mu(v/(h,v)) (h,v)/v prod_{p | (h,v)} (1 - p^-a - p^-a-1), where p^a || h.
fn local_sigma_factor(h: u64, v: u64) -> f64 {
    let g = gcd(h, v);
    let mut val = mobius(v / g) as f64 * g as f64 / v as f64;
    for p in prime_divisors(g) {
        let mut a = 0;
        let mut hh = h;
        while hh.is_multiple_of(p) {
            hh /= p;
            a += 1;
        }
        let pa = (p as f64).powi(a);
        val *= 1.0 - 1.0 / pa - 1.0 / (pa * p as f64);
    }
    val
}

/// The shifted-convolution constant sigma(h) in closed form, given L1 = L(1, chi).
pub fn sigma_shift(h: i64, f: &Factorization, l1: f64) -> Result<f64, ArithError> {
    if h == 0 {
        return Err(ArithError::ZeroShift);
    }
    let h = h.unsigned_abs();
    let q = f.q();
    let local = local_sigma_factor(h, f.v) + local_sigma_factor(h, f.w);
    let coprime_div: f64 = divisors(h)
        .into_iter()
        .filter(|&d| gcd(d, q) == 1)
        .map(|d| 1.0 / d as f64)
        .sum();
    Ok(local * zeta_q_two(q) / ZETA_2 * coprime_div * l1 * l1)
}

/// The generating series Z(s) = sum_h sigma(h) h^-s in closed form. Each
/// half carries mu(v) (resp. mu(w)): the Euler factor of sum_c r_c(h) c^-2
/// at p | v is (p^{1-s} - 1) / p.
pub fn sigma_zeta(s: Complex64, f: &Factorization, l1: f64) -> Result<Complex64, ArithError> {
    if s.norm() < 1e-12 || (s - 1.0).norm() < 1e-12 {
        return Err(ArithError::Pole(s));
    }
    let one = Complex64::new(1.0, 0.0);
    let euler = |a: u64, b: u64| -> Complex64 {
        let mut prod = one * (mobius(a) as f64 / a as f64);
        for p in prime_divisors(a) {
            prod *= one - (-(s - 1.0) * (p as f64).ln()).exp();
        }
        for p in prime_divisors(b) {
            prod *= one - (-(s + 1.0) * (p as f64).ln()).exp();
        }
        prod
    };
    let bracket = euler(f.v, f.w) + euler(f.w, f.v);
    Ok(bracket * (zeta_q_two(f.q()) / ZETA_2) * zeta(s) * zeta(s + 1.0) * (l1 * l1))
}

/// Residue of Z(s) at s = 1: L1^2 when v = 1 or w = 1, otherwise 0.
pub fn sigma_zeta_residue_one(f: &Factorization, l1: f64) -> f64 {
    if f.v == 1 || f.w == 1 {
        l1 * l1
    } else {
        0.0
    }
}

/// Residue of Z(s) at s = 0: 2 (q/nu(q)) (zeta(0)/zeta(2)) L1^2, the same for
/// every factorization since mu(v)^2 = 1.
pub fn sigma_zeta_residue_zero(f: &Factorization, l1: f64) -> f64 {
    let q = f.q();
    let nu: u64 = prime_divisors(q).iter().map(|p| p + 1).product();
    2.0 * (q as f64 / nu as f64) * (ZETA_0 / ZETA_2) * l1 * l1
}
