//! Arithmetic in `F_p` and `F_{p^2} = F_p(sqrt(tau))`, multiplicative and
//! additive characters, classical Gauss sums and the elementary arithmetic
//! functions used by the coefficient formulas.
//!
//! Everything that needs per-prime tables hangs off [`PrimeField`], which is
//! built once and shared behind an `Arc`. Discrete logarithms for both unit
//! groups are tabulated at construction, so character evaluation is a pair of
//! table lookups.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Complex character and Gauss sum values.
pub type ComplexValue = Complex64;

/// Default comparison: `|a - b| <= max(1e-9 |b|, 1e-6)`.
pub fn approx_eq(a: ComplexValue, b: ComplexValue) -> bool {
    (a - b).norm() <= (1e-9 * b.norm()).max(1e-6)
}

/// `e(num / den) = exp(2 pi i num / den)`, with `num` reduced first.
pub fn unit_root(num: i64, den: u64) -> ComplexValue {
    let r = num.rem_euclid(den as i64) as f64;
    let (s, c) = (TAU * r / den as f64).sin_cos();
    Complex64::new(c, s)
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_odd_prime(p: u64) -> Result<()> {
    if p >= 3 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Divisors, Moebius value, totient and divisor count of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArithFunctions {
    pub divisors: Vec<u64>,
    pub mobius: i8,
    pub totient: u64,
    pub num_divisors: u64,
}

pub fn arith_functions(n: u64) -> Result<ArithFunctions> {
    if n == 0 {
        return Err(Error::ZeroArgument);
    }
    let fac = factorize(n);
    let mut divisors = vec![1u64];
    for &(q, e) in &fac {
        let len = divisors.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= q;
            for i in 0..len {
                divisors.push(divisors[i] * pk);
            }
        }
    }
    divisors.sort_unstable();
    let mobius = if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    };
    let totient = fac.iter().fold(n, |acc, &(q, _)| acc / q * (q - 1));
    let num_divisors = divisors.len() as u64;
    Ok(ArithFunctions {
        divisors,
        mobius,
        totient,
        num_divisors,
    })
}

/// Moebius function.
pub fn mobius(n: u64) -> i8 {
    let fac = factorize(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(q, _)| acc / q * (q - 1))
}

/// Residue in `[0, p)` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    /// Reduces `value` mod `p`; `p` must be an odd prime.
    pub fn new(value: i64, p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self::from_raw(value.rem_euclid(p as i64) as u64, p))
    }

    pub(crate) fn from_raw(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Self { value, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same(self, other: Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn checked_add(self, o: Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_raw(
            (self.value + o.value) % self.modulus,
            self.modulus,
        ))
    }

    pub fn checked_mul(self, o: Self) -> Result<Self> {
        self.same(o)?;
        Ok(Self::from_raw(
            self.value * o.value % self.modulus,
            self.modulus,
        ))
    }

    pub fn pow(self, e: u64) -> Self {
        Self::from_raw(pow_mod(self.value, e, self.modulus), self.modulus)
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::NotInvertible);
        }
        Ok(self.pow(self.modulus - 2))
    }

    /// Legendre symbol.
    pub fn legendre(self) -> i8 {
        match self.pow((self.modulus - 1) / 2).value {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.checked_add(o).expect("modulus mismatch")
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_raw((self.modulus - self.value) % self.modulus, self.modulus)
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.checked_mul(o).expect("modulus mismatch")
    }
}

/// `x + tau' y` with `tau'^2 = tau`, `tau` a fixed non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadExtElement {
    pub x: FieldElement,
    pub y: FieldElement,
    pub tau: FieldElement,
}

impl QuadExtElement {
    pub fn new(x: FieldElement, y: FieldElement, tau: FieldElement) -> Result<Self> {
        x.same(y)?;
        x.same(tau)?;
        if tau.legendre() != -1 {
            return Err(Error::InvalidLabel(format!(
                "tau = {tau} is a square mod {}",
                tau.modulus
            )));
        }
        Ok(Self { x, y, tau })
    }

    pub fn one(tau: FieldElement) -> Self {
        let p = tau.modulus;
        Self {
            x: FieldElement::from_raw(1, p),
            y: FieldElement::from_raw(0, p),
            tau,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Frobenius image `x - tau' y`.
    pub fn conj(&self) -> Self {
        Self {
            y: -self.y,
            ..*self
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.tau);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl Mul for QuadExtElement {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.tau, o.tau, "extension mismatch");
        Self {
            x: self.x * o.x + self.tau * self.y * o.y,
            y: self.x * o.y + o.x * self.y,
            tau: self.tau,
        }
    }
}

/// Norm `F_{p^2}^* -> F_p^*`: `x^2 - tau y^2`.
pub fn quad_ext_norm(z: &QuadExtElement) -> FieldElement {
    z.x * z.x - z.tau * z.y * z.y
}

const NO_LOG: u32 = u32::MAX;

/// Per-prime tables: non-residue `tau`, canonical generators, discrete logs,
/// square roots and roots of unity.
#[derive(Debug)]
pub struct PrimeField {
    p: u32,
    tau: u32,
    generator: u32,
    quad_generator: (u32, u32),
    dlog: Vec<u32>,
    quad_dlog: Vec<u32>,
    sqrt: Vec<u32>,
    additive_roots: Vec<ComplexValue>,
    unit_roots: Vec<ComplexValue>,
    quad_roots: Vec<ComplexValue>,
}

/// Largest prime the table-driven layer accepts.
pub const MAX_PRIME: u64 = 101;

impl PrimeField {
    pub fn new(p: u64) -> Result<Arc<Self>> {
        check_odd_prime(p)?;
        if p > MAX_PRIME {
            return Err(Error::PrimeOutOfRange {
                p,
                min: 3,
                max: MAX_PRIME,
            });
        }
        let pu = p as u32;
        let tau = (2..p)
            .find(|&a| pow_mod(a, (p - 1) / 2, p) == p - 1)
            .expect("odd prime has a non-residue") as u32;

        let order = p - 1;
        let order_primes: Vec<u64> = factorize(order).into_iter().map(|(q, _)| q).collect();
        let generator = (2..p)
            .find(|&g| order_primes.iter().all(|&q| pow_mod(g, order / q, p) != 1))
            .unwrap_or(1) as u32;
        let mut dlog = vec![NO_LOG; p as usize];
        let mut acc = 1u64;
        for j in 0..order {
            dlog[acc as usize] = j as u32;
            acc = acc * generator as u64 % p;
        }

        let qorder = p * p - 1;
        let qprimes: Vec<u64> = factorize(qorder).into_iter().map(|(q, _)| q).collect();
        let mul = |a: (u64, u64), b: (u64, u64)| -> (u64, u64) {
            (
                (a.0 * b.0 + tau as u64 * (a.1 * b.1 % p)) % p,
                (a.0 * b.1 + a.1 * b.0) % p,
            )
        };
        let qpow = |mut b: (u64, u64), mut e: u64| -> (u64, u64) {
            let mut r = (1u64, 0u64);
            while e > 0 {
                if e & 1 == 1 {
                    r = mul(r, b);
                }
                b = mul(b, b);
                e >>= 1;
            }
            r
        };
        let quad_generator = (0..p)
            .flat_map(|x| (0..p).map(move |y| (x, y)))
            .filter(|&z| z != (0, 0))
            .find(|&z| qprimes.iter().all(|&q| qpow(z, qorder / q) != (1, 0)))
            .expect("F_{p^2}^* is cyclic");
        let mut quad_dlog = vec![NO_LOG; (p * p) as usize];
        let mut acc = (1u64, 0u64);
        for j in 0..qorder {
            quad_dlog[(acc.0 * p + acc.1) as usize] = j as u32;
            acc = mul(acc, quad_generator);
        }

        let mut sqrt = vec![NO_LOG; p as usize];
        for r in 0..p {
            let s = (r * r % p) as usize;
            if sqrt[s] == NO_LOG {
                sqrt[s] = r as u32;
            }
        }

        let roots = |n: u64| (0..n).map(|j| unit_root(j as i64, n)).collect::<Vec<_>>();
        Ok(Arc::new(Self {
            p: pu,
            tau,
            generator,
            quad_generator: (quad_generator.0 as u32, quad_generator.1 as u32),
            dlog,
            quad_dlog,
            sqrt,
            additive_roots: roots(p),
            unit_roots: roots(order),
            quad_roots: roots(qorder),
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn tau_element(&self) -> FieldElement {
        FieldElement::from_raw(self.tau as u64, self.p as u64)
    }

    /// Smallest positive primitive root.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    /// First generator of `F_{p^2}^*` in lexicographic `(x, y)` order.
    pub fn quad_generator(&self) -> (u32, u32) {
        self.quad_generator
    }

    pub fn element(&self, v: i64) -> FieldElement {
        FieldElement::from_raw(v.rem_euclid(self.p as i64) as u64, self.p as u64)
    }

    pub fn quad_element(&self, x: i64, y: i64) -> QuadExtElement {
        QuadExtElement {
            x: self.element(x),
            y: self.element(y),
            tau: self.tau_element(),
        }
    }

    pub fn unit_order(&self) -> u64 {
        self.p as u64 - 1
    }

    pub fn quad_unit_order(&self) -> u64 {
        let p = self.p as u64;
        p * p - 1
    }

    /// `e_p(t) = e(t / p)`.
    #[inline]
    pub fn ep(&self, t: u32) -> ComplexValue {
        self.additive_roots[t as usize]
    }

    #[inline]
    pub fn dlog(&self, a: u32) -> Option<u32> {
        let d = self.dlog[a as usize];
        (d != NO_LOG).then_some(d)
    }

    #[inline]
    pub fn quad_dlog(&self, x: u32, y: u32) -> Option<u32> {
        let d = self.quad_dlog[(x * self.p + y) as usize];
        (d != NO_LOG).then_some(d)
    }

    /// Some square root of `a`, or `None` for a non-residue.
    #[inline]
    pub fn sqrt(&self, a: u32) -> Option<u32> {
        let s = self.sqrt[a as usize];
        (s != NO_LOG).then_some(s)
    }

    #[inline]
    pub fn is_square(&self, a: u32) -> bool {
        self.sqrt[a as usize] != NO_LOG
    }

    pub fn legendre(&self, a: i64) -> i8 {
        let a = a.rem_euclid(self.p as i64) as u32;
        if a == 0 {
            0
        } else if self.is_square(a) {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u32
    }

    /// `chi_k(a)` on `F_p^*`; `a` must be nonzero.
    #[inline]
    pub fn base_char(&self, k: u64, a: u32) -> ComplexValue {
        let n = self.unit_order();
        let d = self.dlog[a as usize] as u64;
        self.unit_roots[((k % n) * d % n) as usize]
    }

    /// `phi_k(x + tau' y)` on `F_{p^2}^*`; the element must be nonzero.
    #[inline]
    pub fn quad_char(&self, k: u64, x: u32, y: u32) -> ComplexValue {
        let n = self.quad_unit_order();
        let d = self.quad_dlog[(x * self.p + y) as usize] as u64;
        self.quad_roots[((k % n) * d % n) as usize]
    }

    /// Multiplicative order of a unit of `F_{p^2}`.
    pub fn quad_element_order(&self, x: u32, y: u32) -> Option<u64> {
        let n = self.quad_unit_order();
        self.quad_dlog(x, y).map(|d| n / gcd(d as u64, n))
    }
}

/// Which unit group a character lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CharGroup {
    BaseUnits,
    QuadUnits,
}

/// `chi_k(g^j) = e(k j / ord)` against the canonical generator.
#[derive(Debug, Clone)]
pub struct MulCharacter {
    field: Arc<PrimeField>,
    group: CharGroup,
    k: u64,
}

/// A unit of either group.
#[derive(Debug, Clone, Copy)]
pub enum GroupElement {
    Base(FieldElement),
    Quad(QuadExtElement),
}

impl MulCharacter {
    pub fn new(field: Arc<PrimeField>, group: CharGroup, k: u64) -> Self {
        let ord = match group {
            CharGroup::BaseUnits => field.unit_order(),
            CharGroup::QuadUnits => field.quad_unit_order(),
        };
        Self {
            field,
            group,
            k: k % ord,
        }
    }

    pub fn index(&self) -> u64 {
        self.k
    }

    pub fn group(&self) -> CharGroup {
        self.group
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn group_order(&self) -> u64 {
        match self.group {
            CharGroup::BaseUnits => self.field.unit_order(),
            CharGroup::QuadUnits => self.field.quad_unit_order(),
        }
    }

    /// Order of the character in the dual group.
    pub fn order(&self) -> u64 {
        let n = self.group_order();
        n / gcd(self.k, n)
    }

    pub fn is_trivial(&self) -> bool {
        self.k == 0
    }
}

/// Evaluates `chi` at a unit, via the discrete-log table.
pub fn mul_char_value(chi: &MulCharacter, u: GroupElement) -> Result<ComplexValue> {
    let f = &chi.field;
    let p = f.p as u64;
    match (chi.group, u) {
        (CharGroup::BaseUnits, GroupElement::Base(a)) => {
            if a.modulus() != p {
                return Err(Error::ModulusMismatch(p, a.modulus()));
            }
            if a.is_zero() {
                return Err(Error::NotInvertible);
            }
            Ok(f.base_char(chi.k, a.value() as u32))
        }
        (CharGroup::QuadUnits, GroupElement::Quad(z)) => {
            if z.x.modulus() != p {
                return Err(Error::ModulusMismatch(p, z.x.modulus()));
            }
            if z.tau.value() != f.tau as u64 {
                return Err(Error::Mismatch(format!(
                    "element built over tau = {}, field uses tau = {}",
                    z.tau, f.tau
                )));
            }
            if z.is_zero() {
                return Err(Error::NotInvertible);
            }
            Ok(f.quad_char(chi.k, z.x.value() as u32, z.y.value() as u32))
        }
        _ => Err(Error::Mismatch(
            "character and element live in different groups".into(),
        )),
    }
}

/// `G(chi) = sum_{a in F_p^*} chi(a) e_p(a)`.
pub fn classical_gauss_sum(field: &PrimeField, k: u64) -> ComplexValue {
    (1..field.p)
        .map(|a| field.base_char(k, a) * field.ep(a))
        .sum()
}
