//! `GL(2, F_p)` and integer 2x2 matrices: conjugacy classification, the class
//! inventory, Bruhat-cell factorization and the element subsets used by the
//! counting layer (elliptic, primitive, discriminant zero, single classes).

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{arith_functions, factorize, PrimeField};
use crate::error::{Error, Result};

/// Largest prime for which the full group is materialised.
pub const ENUMERATION_MAX_PRIME: u32 = 31;

/// A 2x2 matrix over `F_p`, entries `[a11, a12, a21, a22]` in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Mat2 {
    e: [u32; 4],
    p: u32,
}

impl Mat2 {
    pub fn new(p: u32, entries: [i64; 4]) -> Self {
        let r = |v: i64| v.rem_euclid(p as i64) as u32;
        Self {
            e: [r(entries[0]), r(entries[1]), r(entries[2]), r(entries[3])],
            p,
        }
    }

    #[inline]
    pub(crate) fn from_raw(p: u32, e: [u32; 4]) -> Self {
        Self { e, p }
    }

    pub fn identity(p: u32) -> Self {
        Self::from_raw(p, [1, 0, 0, 1])
    }

    pub fn zero(p: u32) -> Self {
        Self::from_raw(p, [0; 4])
    }

    pub fn scalar(p: u32, a: i64) -> Self {
        Self::new(p, [a, 0, 0, a])
    }

    /// The Weyl element `(0 1; 1 0)`.
    pub fn weyl(p: u32) -> Self {
        Self::from_raw(p, [0, 1, 1, 0])
    }

    /// Lower unipotent `(1 0; u 1)`.
    pub fn x_u(p: u32, u: u32) -> Self {
        Self::from_raw(p, [1, 0, u % p, 1])
    }

    /// `diag(l, 1)`.
    pub fn x_l(p: u32, l: u32) -> Self {
        Self::from_raw(p, [l % p, 0, 0, 1])
    }

    /// `diag(1, m)`.
    pub fn x_m(p: u32, m: u32) -> Self {
        Self::from_raw(p, [1, 0, 0, m % p])
    }

    /// Upper unipotent `(1 u'; 0 1)`.
    pub fn x_u_prime(p: u32, u: u32) -> Self {
        Self::from_raw(p, [1, u % p, 0, 1])
    }

    /// Singular representative `A_a = (a 0; 0 0)`.
    pub fn semisimple_singular(p: u32, a: u32) -> Self {
        Self::from_raw(p, [a % p, 0, 0, 0])
    }

    /// Nilpotent representative `N = (0 1; 0 0)`.
    pub fn nilpotent(p: u32) -> Self {
        Self::from_raw(p, [0, 1, 0, 0])
    }

    pub fn entries(&self) -> [u32; 4] {
        self.e
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn det(&self) -> u32 {
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        ((a * d + p * p - b * c % p) % p) as u32
    }

    #[inline]
    pub fn trace(&self) -> u32 {
        (self.e[0] + self.e[3]) % self.p
    }

    pub fn is_invertible(&self) -> bool {
        self.det() != 0
    }

    pub fn is_scalar(&self) -> bool {
        self.e[1] == 0 && self.e[2] == 0 && self.e[0] == self.e[3]
    }

    pub fn is_zero(&self) -> bool {
        self.e == [0; 4]
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self::from_raw(p, self.e.map(|v| (p - v) % p))
    }

    pub fn inverse(&self) -> Result<Self> {
        let det = self.det();
        if det == 0 {
            return Err(Error::NotInGl2);
        }
        let p = self.p as u64;
        let di = pow_mod(det as u64, p - 2, p);
        let [a, b, c, d] = self.e.map(u64::from);
        let f = |v: u64| (v % p * di % p) as u32;
        Ok(Self::from_raw(self.p, [f(d), f(p - b), f(p - c), f(a)]))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Packed index `((a11 p + a12) p + a21) p + a22`.
    pub fn index(&self) -> u32 {
        let p = self.p;
        ((self.e[0] * p + self.e[1]) * p + self.e[2]) * p + self.e[3]
    }

    pub fn from_index(p: u32, mut idx: u32) -> Self {
        let mut e = [0u32; 4];
        for slot in e.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        Self::from_raw(p, e)
    }

    /// `Z M Z^{-1}`.
    pub fn conjugate_by(&self, z: &Self) -> Result<Self> {
        Ok(*z * *self * z.inverse()?)
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let [a, b, c, d] = self.e.map(u64::from);
        let [w, x, y, z] = o.e.map(u64::from);
        Self::from_raw(
            self.p,
            [
                ((a * w + b * y) % p) as u32,
                ((a * x + b * z) % p) as u32,
                ((c * w + d * y) % p) as u32,
                ((c * x + d * z) % p) as u32,
            ],
        )
    }
}

impl std::ops::Add for Mat2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let p = self.p;
        Self::from_raw(p, [0, 1, 2, 3].map(|i| (self.e[i] + o.e[i]) % p))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.e[0], self.e[1], self.e[2], self.e[3])
    }
}

/// Inverse of a nonzero residue mod `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a as u64, p as u64 - 2, p as u64) as u32
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

/// An integer 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IntMat2 {
    pub e: [i64; 4],
}

impl IntMat2 {
    pub fn new(e: [i64; 4]) -> Self {
        Self { e }
    }

    /// `h(A) = max |a_ij|`.
    pub fn height(&self) -> u64 {
        self.e.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn reduce(&self, p: u32) -> Mat2 {
        Mat2::new(p, self.e)
    }

    pub fn det(&self) -> i64 {
        self.e[0] * self.e[3] - self.e[1] * self.e[2]
    }

    pub fn trace(&self) -> i64 {
        self.e[0] + self.e[3]
    }
}

impl std::ops::Mul for IntMat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [a, b, c, d] = self.e;
        let [w, x, y, z] = o.e;
        Self::new([a * w + b * y, a * x + b * z, c * w + d * y, c * x + d * z])
    }
}

/// Parses `"a11,a12;a21,a22"`.
impl FromStr for IntMat2 {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        if rows.len() != 2 {
            return Err(Error::MatrixLiteral(s.to_string()));
        }
        let mut e = [0i64; 4];
        for (r, row) in rows.iter().enumerate() {
            let cols: Vec<&str> = row.split(',').collect();
            if cols.len() != 2 {
                return Err(Error::MatrixLiteral(s.to_string()));
            }
            for (c, v) in cols.iter().enumerate() {
                e[2 * r + c] = v
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| Error::MatrixLiteral(s.to_string()))?;
            }
        }
        Ok(Self { e })
    }
}

/// Canonical conjugacy class tag in `GL(2, F_p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    /// Scalar `a I`.
    Central(u32),
    /// `(a 1; 0 a)`.
    NonSemisimple(u32),
    /// `diag(a, b)` with `a < b`.
    Split(u32, u32),
    /// Eigenvalues `x +- tau' y`, `1 <= y <= (p-1)/2`.
    Elliptic(u32, u32),
}

impl ClassLabel {
    pub fn kind(&self) -> &'static str {
        match self {
            ClassLabel::Central(_) => "central",
            ClassLabel::NonSemisimple(_) => "nonss",
            ClassLabel::Split(..) => "split",
            ClassLabel::Elliptic(..) => "elliptic",
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            ClassLabel::Central(a) | ClassLabel::NonSemisimple(a) => vec![a],
            ClassLabel::Split(a, b) | ClassLabel::Elliptic(a, b) => vec![a, b],
        }
    }

    fn validate(&self, p: u32) -> Result<()> {
        let ok = match *self {
            ClassLabel::Central(a) | ClassLabel::NonSemisimple(a) => (1..p).contains(&a),
            ClassLabel::Split(a, b) => a >= 1 && a < b && b < p,
            ClassLabel::Elliptic(x, y) => x < p && y >= 1 && y <= (p - 1) / 2,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("{self} for p = {p}")))
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(u32::to_string).collect();
        write!(f, "{}:{}", self.kind(), params.join(","))
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn parse_params(s: &str, n: usize, label: &str) -> Result<Vec<u32>> {
    let v: Vec<u32> = s
        .split(',')
        .map(|t| t.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidLabel(label.to_string()))?;
    if v.len() != n {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(v)
}

/// Parses `central:a`, `nonss:a`, `split:a,b`, `elliptic:x,y`.
impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
        match kind.trim().to_ascii_lowercase().as_str() {
            "central" => Ok(ClassLabel::Central(parse_params(rest, 1, s)?[0])),
            "nonss" | "nonsemisimple" => {
                Ok(ClassLabel::NonSemisimple(parse_params(rest, 1, s)?[0]))
            }
            "split" => {
                let v = parse_params(rest, 2, s)?;
                Ok(ClassLabel::Split(v[0].min(v[1]), v[0].max(v[1])))
            }
            "elliptic" => {
                let v = parse_params(rest, 2, s)?;
                Ok(ClassLabel::Elliptic(v[0], v[1]))
            }
            _ => Err(Error::InvalidLabel(s.to_string())),
        }
    }
}

/// One row of the class inventory.
#[derive(Debug, Clone, Serialize)]
pub struct ClassInfo {
    pub label: ClassLabel,
    pub representative: Mat2,
    pub size: u64,
    pub element_order: u64,
}

/// Bruhat cell of `GL(2, F_p) = P U' ⊔ w P'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BruhatCell {
    /// `x_u x_l x_m x_{u'}`, exactly the matrices with `a11 != 0`.
    PUPrime,
    /// `w x_l x_m x_{u'}`.
    WPPrime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BruhatFactorization {
    pub cell: BruhatCell,
    pub u: Option<u32>,
    pub l: u32,
    pub m: u32,
    pub u_prime: u32,
}

impl BruhatFactorization {
    pub fn reassemble(&self, p: u32) -> Mat2 {
        let tail = Mat2::x_l(p, self.l) * Mat2::x_m(p, self.m) * Mat2::x_u_prime(p, self.u_prime);
        match self.cell {
            BruhatCell::PUPrime => Mat2::x_u(p, self.u.unwrap_or(0)) * tail,
            BruhatCell::WPPrime => Mat2::weyl(p) * tail,
        }
    }
}

/// Closed-form Bruhat factorization.
pub fn bruhat_factorize(m: &Mat2) -> Result<BruhatFactorization> {
    let det = m.det();
    if det == 0 {
        return Err(Error::NotInGl2);
    }
    let p = m.p() as u64;
    let [a, b, c, d] = m.entries().map(u64::from);
    let inv = |v: u64| pow_mod(v, p - 2, p);
    if a != 0 {
        // (l, l u'; u l, u l u' + m)
        let li = inv(a);
        Ok(BruhatFactorization {
            cell: BruhatCell::PUPrime,
            u: Some((c * li % p) as u32),
            l: a as u32,
            m: (det as u64 * li % p) as u32,
            u_prime: (b * li % p) as u32,
        })
    } else {
        // (0, m; l, l u')
        Ok(BruhatFactorization {
            cell: BruhatCell::WPPrime,
            u: None,
            l: c as u32,
            m: b as u32,
            u_prime: (d * inv(c) % p) as u32,
        })
    }
}

/// Residue subsets the counting layer works with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetKind {
    Nonsingular,
    Elliptic,
    Primitive,
    /// `(a - d)^2 + 4 bc = 0`, singular matrices included.
    DiscZero,
    Class(ClassLabel),
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::Nonsingular => write!(f, "nonsingular"),
            SetKind::Elliptic => write!(f, "elliptic"),
            SetKind::Primitive => write!(f, "primitive"),
            SetKind::DiscZero => write!(f, "disc-zero"),
            SetKind::Class(c) => write!(f, "class:{c}"),
        }
    }
}

impl Serialize for SetKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for SetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nonsingular" => Ok(SetKind::Nonsingular),
            "elliptic" => Ok(SetKind::Elliptic),
            "primitive" => Ok(SetKind::Primitive),
            "disc-zero" | "disc_zero" => Ok(SetKind::DiscZero),
            other => match other.strip_prefix("class:") {
                Some(rest) => Ok(SetKind::Class(rest.parse()?)),
                None => Err(Error::InvalidLabel(format!("unknown set kind {other}"))),
            },
        }
    }
}

/// Class key of an arbitrary residue matrix.
pub const SINGULAR: u32 = u32::MAX;

/// `GL(2, F_p)` with its class list and fast classification tables.
#[derive(Debug)]
pub struct Gl2 {
    field: Arc<PrimeField>,
    p: u32,
    inv: Vec<u32>,
    inv_four_tau: u32,
    half: u32,
    split_index: Vec<u32>,
    classes: Vec<ClassInfo>,
    primitive: Vec<bool>,
    order_primes: Vec<u64>,
    elements: OnceLock<Vec<(u32, u32)>>,
}

impl Gl2 {
    pub fn new(p: u64) -> Result<Arc<Self>> {
        Ok(Self::with_field(PrimeField::new(p)?))
    }

    pub fn with_field(field: Arc<PrimeField>) -> Arc<Self> {
        let p = field.p();
        let pu = p as u64;
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = pow_mod(a as u64, pu - 2, pu) as u32;
        }
        let half = inv[2];
        let inv_four_tau = inv[(4 * field.tau() as u64 % pu) as usize];

        let mut split_index = vec![SINGULAR; (p * p) as usize];
        let mut labels = Vec::with_capacity((p * p - 1) as usize);
        for a in 1..p {
            labels.push(ClassLabel::Central(a));
        }
        for a in 1..p {
            labels.push(ClassLabel::NonSemisimple(a));
        }
        for a in 1..p {
            for b in a + 1..p {
                split_index[(a * p + b) as usize] = labels.len() as u32;
                labels.push(ClassLabel::Split(a, b));
            }
        }
        for x in 0..p {
            for y in 1..=(p - 1) / 2 {
                labels.push(ClassLabel::Elliptic(x, y));
            }
        }

        let n = pu * (pu * pu - 1);
        let order_primes: Vec<u64> = factorize(n).into_iter().map(|(q, _)| q).collect();
        let tau = field.tau();
        let mut g = Self {
            field,
            p,
            inv,
            inv_four_tau,
            half,
            split_index,
            classes: Vec::new(),
            primitive: Vec::new(),
            order_primes,
            elements: OnceLock::new(),
        };
        let classes: Vec<ClassInfo> = labels
            .into_iter()
            .map(|label| {
                let representative = match label {
                    ClassLabel::Central(a) => Mat2::from_raw(p, [a, 0, 0, a]),
                    ClassLabel::NonSemisimple(a) => Mat2::from_raw(p, [a, 1, 0, a]),
                    ClassLabel::Split(a, b) => Mat2::from_raw(p, [a, 0, 0, b]),
                    ClassLabel::Elliptic(x, y) => {
                        Mat2::from_raw(p, [x, (tau as u64 * y as u64 % pu) as u32, y, x])
                    }
                };
                let size = match label {
                    ClassLabel::Central(_) => 1,
                    ClassLabel::NonSemisimple(_) => pu * pu - 1,
                    ClassLabel::Split(..) => pu * pu + pu,
                    ClassLabel::Elliptic(..) => pu * pu - pu,
                };
                ClassInfo {
                    label,
                    representative,
                    size,
                    element_order: g.element_order(&representative),
                }
            })
            .collect();
        let primitive = classes
            .iter()
            .map(|c| matches!(c.label, ClassLabel::Elliptic(..)) && c.element_order == pu * pu - 1)
            .collect();
        g.classes = classes;
        g.primitive = primitive;
        Arc::new(g)
    }

    pub fn field(&self) -> &Arc<PrimeField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `|GL(2, F_p)| = (p^2 - 1)(p^2 - p)`.
    pub fn order(&self) -> u64 {
        let p = self.p as u64;
        (p * p - 1) * (p * p - p)
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn is_primitive_class(&self, idx: usize) -> bool {
        self.primitive[idx]
    }

    pub fn class_index(&self, label: &ClassLabel) -> Result<usize> {
        label.validate(self.p)?;
        let p = self.p as usize;
        Ok(match *label {
            ClassLabel::Central(a) => a as usize - 1,
            ClassLabel::NonSemisimple(a) => p - 1 + a as usize - 1,
            ClassLabel::Split(a, b) => self.split_index[a as usize * p + b as usize] as usize,
            ClassLabel::Elliptic(x, y) => {
                let h = (p - 1) / 2;
                2 * (p - 1) + (p - 1) * (p - 2) / 2 + x as usize * h + y as usize - 1
            }
        })
    }

    /// Class index, or [`SINGULAR`] for a singular matrix.
    #[inline]
    pub fn class_key(&self, e: [u32; 4]) -> u32 {
        let p = self.p as u64;
        let [a, b, c, d] = e.map(u64::from);
        let det = ((a * d + p * p - b * c % p) % p) as u32;
        if det == 0 {
            return SINGULAR;
        }
        let t = ((a + d) % p) as u32;
        let disc = ((t as u64 * t as u64 + 4 * (p - det as u64)) % p) as u32;
        let pu = self.p as usize;
        if disc == 0 {
            let half_t = (t as u64 * self.half as u64 % p) as usize;
            if b == 0 && c == 0 {
                half_t as u32 - 1
            } else {
                (pu - 1 + half_t - 1) as u32
            }
        } else if let Some(s) = self.field.sqrt(disc) {
            let r1 = ((t as u64 + s as u64) * self.half as u64 % p) as usize;
            let r2 = ((t as u64 + p - s as u64) * self.half as u64 % p) as usize;
            let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
            self.split_index[lo * pu + hi]
        } else {
            let y2 = (disc as u64 * self.inv_four_tau as u64 % p) as u32;
            let y = self.field.sqrt(y2).expect("disc/tau is a square");
            let y = y.min(self.p - y) as usize;
            let x = (t as u64 * self.half as u64 % p) as usize;
            let h = (pu - 1) / 2;
            (2 * (pu - 1) + (pu - 1) * (pu - 2) / 2 + x * h + y - 1) as u32
        }
    }

    pub fn classify(&self, m: &Mat2) -> Result<ClassLabel> {
        match self.class_key(m.entries()) {
            SINGULAR => Err(Error::NotInGl2),
            k => Ok(self.classes[k as usize].label),
        }
    }

    /// Order of an invertible matrix by divisor testing against `p(p^2-1)`.
    pub fn element_order(&self, m: &Mat2) -> u64 {
        let p = self.p as u64;
        let id = Mat2::identity(self.p);
        let mut ord = p * (p * p - 1);
        for &q in &self.order_primes {
            while ord % q == 0 && m.pow(ord / q) == id {
                ord /= q;
            }
        }
        ord
    }

    #[inline]
    pub fn inv_raw(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// Every invertible matrix in row-major lexicographic order, with its
    /// class index. Materialised on first use; `p <= 31`.
    pub fn elements(&self) -> Result<&[(u32, u32)]> {
        if self.p > ENUMERATION_MAX_PRIME {
            return Err(Error::PrimeOutOfRange {
                p: self.p as u64,
                min: 3,
                max: ENUMERATION_MAX_PRIME as u64,
            });
        }
        Ok(self.elements.get_or_init(|| {
            let p = self.p;
            (0..p)
                .into_par_iter()
                .flat_map_iter(|a| {
                    let mut v = Vec::new();
                    for b in 0..p {
                        for c in 0..p {
                            for d in 0..p {
                                let e = [a, b, c, d];
                                let k = self.class_key(e);
                                if k != SINGULAR {
                                    v.push((Mat2::from_raw(p, e).index(), k));
                                }
                            }
                        }
                    }
                    v.into_iter()
                })
                .collect()
        }))
    }

    /// Whether a residue matrix lies in `kind`.
    pub fn set_membership(&self, m: &Mat2, kind: &SetKind) -> Result<bool> {
        let key = self.class_key(m.entries());
        Ok(match kind {
            SetKind::Nonsingular => key != SINGULAR,
            SetKind::DiscZero => {
                let p = self.p as u64;
                let [a, b, c, d] = m.entries().map(u64::from);
                let diff = (a + p - d) % p;
                (diff * diff + 4 * b * c) % p == 0
            }
            SetKind::Elliptic => {
                key != SINGULAR
                    && matches!(self.classes[key as usize].label, ClassLabel::Elliptic(..))
            }
            SetKind::Primitive => key != SINGULAR && self.primitive[key as usize],
            SetKind::Class(label) => {
                let idx = self.class_index(label)?;
                key as usize == idx
            }
        })
    }

    /// Whether every element of class `idx` lies in `kind`.
    pub fn class_in_set(&self, idx: usize, kind: &SetKind) -> Result<bool> {
        let label = self.classes[idx].label;
        Ok(match kind {
            SetKind::Nonsingular => true,
            SetKind::DiscZero => {
                matches!(label, ClassLabel::Central(_) | ClassLabel::NonSemisimple(_))
            }
            SetKind::Elliptic => matches!(label, ClassLabel::Elliptic(..)),
            SetKind::Primitive => self.primitive[idx],
            SetKind::Class(c) => self.class_index(c)? == idx,
        })
    }

    /// Closed-form cardinality of `kind` inside `M(2, F_p)`.
    pub fn set_cardinality(&self, kind: &SetKind) -> Result<u64> {
        let p = self.p as u64;
        Ok(match kind {
            SetKind::Nonsingular => self.order(),
            SetKind::Elliptic => (p * p - p) * (p * p - p) / 2,
            SetKind::Primitive => {
                let phi = arith_functions(p * p - 1)?.totient;
                (p * p - p) * phi / 2
            }
            SetKind::DiscZero => p * p * p,
            SetKind::Class(c) => self.classes[self.class_index(c)?].size,
        })
    }
}

/// Class inventory for `p`: label, representative, size and element order.
pub fn class_inventory(p: u64) -> Result<Vec<ClassInfo>> {
    Ok(Gl2::new(p)?.classes().to_vec())
}
