//! Positive definite binary quadratic forms of discriminant -q, the class
//! group they form under composition, and its characters.

use crate::arith::{gcd, jacobi, real_char, Factorization, FieldParams};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormError {
    #[error("form ({a},{b},{c}) is not primitive")]
    NotPrimitive { a: i64, b: i64, c: i64 },
    #[error("form ({a},{b},{c}) is not positive definite of discriminant -{q}")]
    WrongDiscriminant { a: i64, b: i64, c: i64, q: u64 },
    #[error("forms have different discriminants {0} and {1}")]
    MismatchedDiscriminants(i64, i64),
    #[error("genus recipe for {v}*{w} is inconsistent at the prime {p}")]
    GenusInconsistent { v: u64, w: u64, p: u64 },
    #[error("no character of the class group matches the genus recipe for {v}*{w}")]
    GenusNotFound { v: u64, w: u64 },
}

/// The form a x^2 + b x y + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadForm { a, b, c }
    }

    /// The principal form of discriminant -q (q = 3 mod 4).
    pub fn principal(q: u64) -> Self {
        QuadForm::new(1, 1, (1 + q as i64) / 4)
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        gcd(gcd(self.a.unsigned_abs(), self.b.unsigned_abs()), self.c.unsigned_abs()) == 1
    }

    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    pub fn mirror(&self) -> Self {
        QuadForm::new(self.a, -self.b, self.c)
    }

    fn check(&self, q: u64) -> Result<(), FormError> {
        let (a, b, c) = (self.a, self.b, self.c);
        if a <= 0 || self.discriminant() != -(q as i64) {
            return Err(FormError::WrongDiscriminant { a, b, c, q });
        }
        if !self.is_primitive() {
            return Err(FormError::NotPrimitive { a, b, c });
        }
        Ok(())
    }

    fn reduce_unchecked(self) -> Self {
        let QuadForm { mut a, mut b, mut c } = self;
        loop {
            // translate b into (-a, a]
            let k = (a - b).div_euclid(2 * a);
            c += k * (a * k + b);
            b += 2 * a * k;
            if a > c {
                (a, b, c) = (c, -b, a);
            } else {
                break;
            }
        }
        if a == c && b < 0 {
            b = -b;
        }
        QuadForm { a, b, c }
    }
}

impl Serialize for QuadForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b, self.c].serialize(s)
    }
}

/// Reduced representative of the class of f.
pub fn reduce_form(f: QuadForm, q: u64) -> Result<QuadForm, FormError> {
    f.check(q)?;
    Ok(f.reduce_unchecked())
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Dirichlet composition, returned reduced.
pub fn compose_forms(f1: QuadForm, f2: QuadForm) -> Result<QuadForm, FormError> {
    let d1 = f1.discriminant();
    let d2 = f2.discriminant();
    if d1 != d2 {
        return Err(FormError::MismatchedDiscriminants(d1, d2));
    }
    let q = (-d1) as u64;
    f1.check(q)?;
    f2.check(q)?;
    Ok(compose_unchecked(f1, f2))
}

fn compose_unchecked(f1: QuadForm, f2: QuadForm) -> QuadForm {
    let d = f1.discriminant() as i128;
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2) = (f2.a as i128, f2.b as i128);
    let beta = (b1 + b2) / 2;
    let (g1, x1, y1) = ext_gcd(a1, a2);
    let (e, s, t) = ext_gcd(g1, beta);
    let (x, y, z) = (s * x1, s * y1, t);
    let a3 = a1 * a2 / (e * e);
    let b3 = (a1 * b2 * x + a2 * b1 * y + z * (b1 * b2 + d) / 2) / e;
    let b3 = b3.rem_euclid(2 * a3);
    let c3 = (b3 * b3 - d) / (4 * a3);
    QuadForm::new(a3 as i64, b3 as i64, c3 as i64).reduce_unchecked()
}

/// Reduced primitive forms of discriminant -q, principal form first, then by
/// (a, |b|, -b).
pub fn reduced_forms(q: u64) -> Vec<QuadForm> {
    let q = q as i64;
    let mut out = Vec::new();
    let mut b = 1i64;
    while 3 * b * b <= q {
        let num = b * b + q;
        let mut a = b.max(1);
        while 4 * a * a <= num {
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                if c >= a {
                    let f = QuadForm::new(a, b, c);
                    if f.is_primitive() {
                        out.push(f);
                        if b > 0 && b < a && a < c {
                            out.push(f.mirror());
                        }
                    }
                }
            }
            a += 1;
        }
        b += 2;
    }
    out.sort_by_key(|f| (f.a, f.b.abs(), -f.b));
    out
}

/// The class number by counting reduced forms.
pub fn class_number(q: u64) -> usize {
    reduced_forms(q).len()
}

/// The class group with a cyclic decomposition.
#[derive(Debug, Clone)]
pub struct ClassGroup {
    pub q: u64,
    pub forms: Vec<QuadForm>,
    /// (class index, order) for each cyclic factor
    pub generators: Vec<(usize, u64)>,
    /// exponent vector of each class against the generators
    pub dlog: Vec<Vec<u64>>,
    index: HashMap<QuadForm, usize>,
}

#[derive(Serialize)]
struct ClassGroupJson<'a> {
    q: u64,
    h: usize,
    /// orders of the cyclic factors
    structure: Vec<u64>,
    forms: &'a [QuadForm],
    generators: &'a [(usize, u64)],
}

impl ClassGroup {
    pub fn h(&self) -> usize {
        self.forms.len()
    }

    pub fn index_of(&self, f: &QuadForm) -> Option<usize> {
        self.index.get(f).copied()
    }

    /// Index of the product of classes i and j.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        let f = compose_unchecked(self.forms[i], self.forms[j]);
        self.index[&f]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&self.forms[i].mirror().reduce_unchecked()]
    }

    pub fn pow(&self, i: usize, mut k: u64) -> usize {
        let mut acc = 0;
        let mut base = i;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Class of the form (a, b, c) reduced.
    pub fn class_of(&self, f: QuadForm) -> Option<usize> {
        reduce_form(f, self.q).ok().and_then(|r| self.index_of(&r))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ClassGroupJson {
            q: self.q,
            h: self.h(),
            structure: self.generators.iter().map(|g| g.1).collect(),
            forms: &self.forms,
            generators: &self.generators,
        })
        .expect("class group serializes")
    }

    /// A class containing an ideal of norm p for a prime p with chi(p) != -1.
    pub fn prime_class(&self, p: u64) -> Option<usize> {
        let q = self.q as i64;
        let p = p as i64;
        // b^2 = -q mod 4p with b odd
        (0..2 * p)
            .map(|b| 2 * b + 1 - 2 * p)
            .find(|&b| (b * b + q) % (4 * p) == 0)
            .and_then(|b| self.class_of(QuadForm::new(p, b, (b * b + q) / (4 * p))))
    }
}

/// Enumerate the class group of discriminant -q and find a cyclic decomposition.
pub fn enumerate_class_group(params: &FieldParams) -> ClassGroup {
    let forms = reduced_forms(params.q);
    let h = forms.len();
    let index: HashMap<QuadForm, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut group = ClassGroup {
        q: params.q,
        forms,
        generators: Vec::new(),
        dlog: Vec::new(),
        index,
    };

    // in_sub[i]: exponent vector of class i in the subgroup generated so far
    let mut in_sub: Vec<Option<Vec<u64>>> = vec![None; h];
    in_sub[0] = Some(Vec::new());
    let mut sub_size = 1;
    while sub_size < h {
        let mut best: Option<(usize, u64)> = None;
        for g in 0..h {
            if in_sub[g].is_some() {
                continue;
            }
            let mut k = 1;
            let mut x = g;
            while in_sub[x].is_none() {
                x = group.mul(x, g);
                k += 1;
            }
            // g^k lands in the subgroup; require it to be the identity so that
            // the new factor splits off
            if x != 0 {
                continue;
            }
            if best.is_none_or(|(_, bk)| k > bk) {
                best = Some((g, k));
            }
        }
        let (g, k) = best.expect("a splitting element of maximal order exists");
        group.generators.push((g, k));
        let members: Vec<(usize, Vec<u64>)> = in_sub
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.clone().map(|e| (i, e)))
            .collect();
        let mut next: Vec<Option<Vec<u64>>> = vec![None; h];
        for (i, e) in &members {
            let mut x = *i;
            for j in 0..k {
                let mut ev = e.clone();
                ev.push(j);
                next[x] = Some(ev);
                x = group.mul(x, g);
            }
        }
        in_sub = next;
        sub_size *= k as usize;
    }
    group.dlog = in_sub
        .into_iter()
        .map(|e| {
            let mut e = e.expect("every class is reached");
            e.resize(group.generators.len(), 0);
            e
        })
        .collect();
    group
}

/// A character of the class group, given by exponents against the generators.
#[derive(Debug, Clone)]
pub struct ClassCharacter {
    pub index: usize,
    pub exponents: Vec<u64>,
    pub values: Vec<Complex64>,
    pub is_real: bool,
    pub genus: Option<Factorization>,
}

fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    if num == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * num == den {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * num == den {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * num == 3 * den {
        return Complex64::new(0.0, -1.0);
    }
    let th = 2.0 * PI * num as f64 / den as f64;
    Complex64::new(th.cos(), th.sin())
}

/// All h characters, indexed lexicographically by exponent vector (index 0 trivial).
pub fn characters(group: &ClassGroup) -> Vec<ClassCharacter> {
    let orders: Vec<u64> = group.generators.iter().map(|&(_, n)| n).collect();
    let lcm = orders.iter().fold(1u64, |l, &n| l / gcd(l, n) * n);
    let h = group.h();
    let mut out = Vec::with_capacity(h);
    let mut exps = vec![0u64; orders.len()];
    for index in 0..h {
        let values = group
            .dlog
            .iter()
            .map(|e| {
                let num: u64 = e
                    .iter()
                    .zip(&exps)
                    .zip(&orders)
                    .map(|((ei, ji), ni)| ei * ji * (lcm / ni))
                    .sum();
                root_of_unity(num % lcm, lcm)
            })
            .collect();
        let is_real = exps.iter().zip(&orders).all(|(j, n)| (2 * j) % n == 0);
        out.push(ClassCharacter {
            index,
            exponents: exps.clone(),
            values,
            is_real,
            genus: None,
        });
        // lexicographic increment, last coordinate fastest
        for pos in (0..exps.len()).rev() {
            exps[pos] += 1;
            if exps[pos] < orders[pos] {
                break;
            }
            exps[pos] = 0;
        }
    }
    let params = FieldParams::new(group.q).expect("group built from valid params");
    for f in params.genus_factorizations() {
        if let Ok(idx) = genus_character_index(&f, group, &out) {
            out[idx].genus = Some(f);
        }
    }
    out
}

/// Genus value on class A: chi_v(n) = chi_w(n) for any n coprime to q represented by A.
fn genus_values(f: &Factorization, group: &ClassGroup) -> Vec<i32> {
    let q = group.q;
    group
        .forms
        .iter()
        .map(|form| {
            let mut n = None;
            'scan: for r in 1i64.. {
                for x in -r..=r {
                    for y in [-r, r] {
                        let m = form.eval(x, y);
                        if gcd(m as u64, q) == 1 {
                            n = Some(m);
                            break 'scan;
                        }
                        let m = form.eval(y, x);
                        if gcd(m as u64, q) == 1 {
                            n = Some(m);
                            break 'scan;
                        }
                    }
                }
            }
            let n = n.expect("every form represents integers coprime to q");
            real_char(f.v, n)
        })
        .collect()
}

fn genus_character_index(f: &Factorization, group: &ClassGroup, chars: &[ClassCharacter]) -> Result<usize, FormError> {
    let vals = genus_values(f, group);
    // consistency on prime ideals of small norm
    let (v, w) = (f.v, f.w);
    for p in (3..1000u64).step_by(2) {
        if crate::arith::factorize(p) != [(p, 1)] {
            continue;
        }
        if jacobi(p as i64, group.q) == -1 {
            continue;
        }
        let class = group.prime_class(p).ok_or(FormError::GenusInconsistent { v, w, p })?;
        let expect = if v % p != 0 {
            f.chi_v(p as i64)
        } else {
            f.chi_w(p as i64)
        };
        let other = if w % p != 0 { Some(f.chi_w(p as i64)) } else { None };
        if vals[class] != expect || other.is_some_and(|o| o != expect) {
            return Err(FormError::GenusInconsistent { v, w, p });
        }
    }
    chars
        .iter()
        .position(|c| {
            c.values
                .iter()
                .zip(&vals)
                .all(|(z, &s)| (z - Complex64::new(s as f64, 0.0)).norm() < 1e-12)
        })
        .ok_or(FormError::GenusNotFound { v, w })
}

/// The genus character attached to q = v w, as a character of the class group.
pub fn genus_character(f: &Factorization, group: &ClassGroup) -> Result<ClassCharacter, FormError> {
    let chars = characters(group);
    let idx = genus_character_index(f, group, &chars)?;
    let mut c = chars[idx].clone();
    c.genus = Some(if f.v < f.w { *f } else { f.swapped() });
    Ok(c)
}

/// #{(x, y) in Z^2 : f(x, y) = n} for a positive definite form f.
pub fn representation_count(f: &QuadForm, n: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    let (a, b, c) = (f.a as i128, f.b as i128, f.c as i128);
    let q = -(b * b - 4 * a * c);
    let n = n as i128;
    // 4a f = (2ax + by)^2 + q y^2
    let ymax = ((4 * a * n / q) as f64).sqrt() as i128 + 1;
    let mut count = 0;
    for y in -ymax..=ymax {
        let disc = 4 * a * n - q * y * y;
        if disc < 0 {
            continue;
        }
        let r = isqrt(disc as u128) as i128;
        if r * r != disc {
            continue;
        }
        for sgn in if r == 0 { vec![1] } else { vec![1, -1] } {
            let num = -b * y + sgn * r;
            if num.rem_euclid(2 * a) == 0 {
                count += 1;
            }
        }
    }
    count
}

pub fn isqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// For every n <= n_max, the representation counts of n by each class, summed
/// against `weights`: sum_A weights[A] * r_A(n).
pub fn weighted_representation_table(group: &ClassGroup, weights: &[Complex64], n_max: usize) -> Vec<Complex64> {
    let mut table = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let q = group.q as i64;
    let n_max_i = n_max as i64;
    for (form, &wt) in group.forms.iter().zip(weights) {
        let (a, b) = (form.a, form.b);
        let ymax = ((4 * a * n_max_i) as f64 / q as f64).sqrt() as i64 + 1;
        for y in -ymax..=ymax {
            let rest = 4 * a * n_max_i - q * y * y;
            if rest < 0 {
                continue;
            }
            // (2ax + by)^2 <= rest
            let r = isqrt(rest as u128) as i64;
            let xlo = (-r - b * y).div_euclid(2 * a) - 1;
            let xhi = (r - b * y).div_euclid(2 * a) + 1;
            for x in xlo..=xhi {
                let n = form.eval(x, y);
                if n >= 1 && n <= n_max_i {
                    table[n as usize] += wt;
                }
            }
        }
    }
    table
}
