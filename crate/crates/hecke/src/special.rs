//! Special functions: complex log-gamma, Hurwitz and Riemann zeta, Bessel J0.

use crate::sum::ComplexSum;
use num_complex::Complex64;
use std::f64::consts::PI;

pub const ZETA_2: f64 = PI * PI / 6.0;
pub const ZETA_0: f64 = -0.5;

/// B_2, B_4, ..., B_30.
const BERNOULLI: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn stirling(z: Complex64) -> Complex64 {
    let mut acc = (z - 0.5) * z.ln() - z + LN_SQRT_2PI;
    let zinv = z.inv();
    let z2inv = zinv * zinv;
    let mut pow = zinv;
    for (k, b) in BERNOULLI.iter().take(12).enumerate() {
        let k2 = 2.0 * (k as f64 + 1.0);
        acc += pow * (b / (k2 * (k2 - 1.0)));
        pow *= z2inv;
    }
    acc
}

/// log Gamma(z). On Re z >= 1/2 this is the analytic branch that is continuous
/// in z (real on the real axis). Left of that line the value is only correct
/// modulo 2*pi*i.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(1.0 - z);
    }
    if z.im.abs() >= 20.0 || z.re >= 20.0 {
        return stirling(z);
    }
    let shift = (20.0 - z.re).ceil() as usize;
    let mut logs = ComplexSum::new();
    for k in 0..shift {
        logs.add((z + k as f64).ln());
    }
    stirling(z + shift as f64) - logs.value()
}

/// log sin(pi z), up to a multiple of 2*pi*i, without overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    if z.im.abs() < 5.0 {
        return (z * PI).sin().ln();
    }
    if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (e^{2 pi i z} - 1) / (2i)
        -i * PI * z + ((2.0 * PI * i * z).exp() - 1.0).ln() - (2.0 * i).ln()
    } else {
        i * PI * z + (1.0 - (-2.0 * PI * i * z).exp()).ln() - (2.0 * i).ln()
    }
}

/// digamma psi(z) = Gamma'(z)/Gamma(z).
pub fn digamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return digamma(1.0 - z) - PI / (z * PI).tan();
    }
    let mut shift = ComplexSum::new();
    let mut w = z;
    while w.norm() < 20.0 {
        shift.add(-w.inv());
        w += 1.0;
    }
    let winv = w.inv();
    let w2inv = winv * winv;
    let mut acc = w.ln() - winv * 0.5;
    let mut pow = w2inv;
    for (k, b) in BERNOULLI.iter().take(10).enumerate() {
        acc -= pow * (b / (2.0 * (k as f64 + 1.0)));
        pow *= w2inv;
    }
    acc + shift.value()
}

pub fn gamma(z: Complex64) -> Complex64 {
    ln_gamma(z).exp()
}

/// Hurwitz zeta(s, a) for a > 0 and s != 1 by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Complex64 {
    let n = 12 + s.norm().ceil() as usize;
    let mut acc = ComplexSum::new();
    for k in 0..n {
        acc.add((-s * (k as f64 + a).ln()).exp());
    }
    let x = n as f64 + a;
    let lnx = x.ln();
    let x_pow = (-s * lnx).exp();
    acc.add(x_pow * x / (s - 1.0));
    acc.add(x_pow * 0.5);
    // sum_j B_2j/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut xp = x_pow / x;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = rising * xp * (b / fact);
        acc.add(term);
        if term.norm() < 1e-18 * acc.value().norm() {
            break;
        }
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        fact *= (m + 3.0) * (m + 4.0);
        xp /= x * x;
    }
    acc.value()
}

/// Riemann zeta(s), s != 1.
pub fn zeta(s: Complex64) -> Complex64 {
    hurwitz_zeta(s, 1.0)
}

/// Bessel J0 on x >= 0: power series below 12, Hankel expansion above.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x < 12.0 {
        let y = -0.25 * x * x;
        let mut term: f64 = 1.0;
        let mut sum: f64 = 1.0;
        let mut k = 1.0;
        while term.abs() > 1e-17 * sum.abs().max(1e-300) || k < 3.0 {
            term *= y / (k * k);
            sum += term;
            k += 1.0;
            if k > 200.0 {
                break;
            }
        }
        return sum;
    }
    let (p, q) = hankel_pq(x);
    let chi = x - 0.25 * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Asymptotic P and Q of order zero, truncated at the smallest term.
fn hankel_pq(x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut last = f64::INFINITY;
    let mut k = 0usize;
    loop {
        if k > 0 {
            let m = (2 * k - 1) as f64;
            a *= m * m / (8.0 * k as f64 * x);
        }
        if a >= last {
            break;
        }
        // a_k(0) carries (-1)^k, the expansion another (-1)^{floor(k/2)}
        let sign = if (k / 2 + k).is_multiple_of(2) { 1.0 } else { -1.0 };
        if k.is_multiple_of(2) {
            p += sign * a;
        } else {
            q += sign * a;
        }
        last = a;
        k += 1;
        if a < 1e-17 {
            break;
        }
    }
    (p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_integer_and_half() {
        assert!((gamma(c(5.0, 0.0)).re - 24.0).abs() < 1e-11);
        assert!((gamma(c(0.5, 0.0)).re - PI.sqrt()).abs() < 1e-13);
        assert!((ln_gamma(c(1.0, 0.0))).norm() < 1e-14);
    }

    #[test]
    fn gamma_recurrence_off_axis() {
        for &(x, y) in &[(0.3, 2.0), (0.5, 14.0), (2.5, -31.0), (0.7, 120.0)] {
            let z = c(x, y);
            let lhs = ln_gamma(z + 1.0);
            let rhs = ln_gamma(z) + z.ln();
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()), "{z}");
        }
    }

    #[test]
    fn gamma_reflection_on_left() {
        let z = c(-1.3, 0.4);
        let prod = gamma(z) * gamma(1.0 - z) * (z * PI).sin();
        assert!((prod - PI).norm() < 1e-11);
    }

    #[test]
    fn ln_gamma_critical_line_modulus() {
        // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
        for &t in &[1.0, 7.5, 30.0] {
            let g = ln_gamma(c(0.5, t));
            let expect = 0.5 * (PI / (PI * t).cosh()).ln();
            assert!((g.re - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn digamma_values_and_derivative() {
        // psi(1) = -Euler gamma, psi(1/2) = -gamma - 2 log 2
        let eg = 0.577_215_664_901_532_9;
        assert!((digamma(c(1.0, 0.0)).re + eg).abs() < 1e-14);
        assert!((digamma(c(0.5, 0.0)).re + eg + 2.0 * 2f64.ln()).abs() < 1e-14);
        let z = c(0.5, 17.0);
        let h = 1e-5;
        let fd = (ln_gamma(z + h) - ln_gamma(z - h)) / (2.0 * h);
        assert!((digamma(z) - fd).norm() < 1e-9);
        let z = c(-2.3, 0.7);
        assert!((digamma(z + 1.0) - digamma(z) - z.inv()).norm() < 1e-12);
    }

    #[test]
    fn zeta_known_values() {
        assert!((zeta(c(2.0, 0.0)).re - ZETA_2).abs() < 1e-14);
        assert!((zeta(c(0.0, 0.0)).re - ZETA_0).abs() < 1e-14);
        // first nontrivial zero
        assert!(zeta(c(0.5, 14.134_725_141_734_693)).norm() < 1e-12);
    }

    /// J0(x) = (1/pi) int_0^pi cos(x sin t) dt; the trapezoid rule on the
    /// periodic integrand converges geometrically.
    fn j0_integral(x: f64) -> f64 {
        let n = 400;
        let mut acc = crate::sum::KahanSum::new();
        for k in 0..n {
            acc.add((x * (PI * k as f64 / n as f64).sin()).cos());
        }
        acc.value() / n as f64
    }

    #[test]
    fn j0_against_integral_on_0_50() {
        let mut worst: f64 = 0.0;
        for k in 0..=5000 {
            let x = k as f64 * 0.01;
            worst = worst.max((bessel_j0(x) - j0_integral(x)).abs());
        }
        assert!(worst < 1e-12, "{worst:e}");
    }

    #[test]
    fn j0_known_values() {
        assert_eq!(bessel_j0(0.0), 1.0);
        // first zero of J0
        assert!(bessel_j0(2.404_825_557_695_773).abs() < 1e-15);
        assert!((bessel_j0(1.0) - 0.765_197_686_557_966_6).abs() < 1e-15);
        assert!((bessel_j0(20.0) - 0.167_024_664_340_583_1).abs() < 1e-14);
    }
}
