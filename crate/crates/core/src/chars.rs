//! Irreducible characters of `GL(2, F_p)`, the induced-character oracle and
//! explicit induced models with their subgroup projections.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{gcd, ComplexValue};
use crate::error::{Error, Result};
use crate::group::{ClassLabel, Gl2, Mat2, SINGULAR};

/// Canonical tag of an irreducible representation.
///
/// Indices are exponents against the canonical generators: mod `p - 1` for
/// the first three kinds, mod `p^2 - 1` for `Cuspidal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    /// `U_chi = chi o det`.
    OneDim(u32),
    /// `I_{chi_k, chi_l}`, `k < l`.
    Principal(u32, u32),
    /// `St_chi = St (x) (chi o det)`.
    SteinbergTwist(u32),
    /// `X_phi`.
    Cuspidal(u32),
}

impl IrrepLabel {
    pub const TRIVIAL: IrrepLabel = IrrepLabel::OneDim(0);
    pub const STEINBERG: IrrepLabel = IrrepLabel::SteinbergTwist(0);

    pub fn kind(&self) -> &'static str {
        match self {
            IrrepLabel::OneDim(_) => "onedim",
            IrrepLabel::Principal(..) => "principal",
            IrrepLabel::SteinbergTwist(_) => "steinberg",
            IrrepLabel::Cuspidal(_) => "cuspidal",
        }
    }

    pub fn params(&self) -> Vec<u32> {
        match *self {
            IrrepLabel::OneDim(k) | IrrepLabel::SteinbergTwist(k) | IrrepLabel::Cuspidal(k) => {
                vec![k]
            }
            IrrepLabel::Principal(k, l) => vec![k, l],
        }
    }

    pub fn dim(&self, p: u32) -> u64 {
        let p = p as u64;
        match self {
            IrrepLabel::OneDim(_) => 1,
            IrrepLabel::Principal(..) => p + 1,
            IrrepLabel::SteinbergTwist(_) => p,
            IrrepLabel::Cuspidal(_) => p - 1,
        }
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::TRIVIAL
    }

    /// Reduces indices and puts the label in canonical form for `p`.
    pub fn canonical(self, p: u32) -> Result<Self> {
        let n = p - 1;
        let q = p * p - 1;
        let bad = || Err(Error::InvalidLabel(format!("{self} for p = {p}")));
        Ok(match self {
            IrrepLabel::OneDim(k) => IrrepLabel::OneDim(k % n),
            IrrepLabel::SteinbergTwist(k) => IrrepLabel::SteinbergTwist(k % n),
            IrrepLabel::Principal(k, l) => {
                let (k, l) = (k % n, l % n);
                if k == l {
                    return bad();
                }
                IrrepLabel::Principal(k.min(l), k.max(l))
            }
            IrrepLabel::Cuspidal(k) => {
                let k = k % q;
                if k % (p + 1) == 0 {
                    return bad();
                }
                let kp = (k as u64 * p as u64 % q as u64) as u32;
                IrrepLabel::Cuspidal(k.min(kp))
            }
        })
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(u32::to_string).collect();
        write!(f, "{}:{}", self.kind(), params.join(","))
    }
}

impl Serialize for IrrepLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `trivial`, `st`, `onedim:k`, `principal:k,l`, `steinberg:k`,
/// `cuspidal:k`. The result is not yet canonical for a given `p`.
impl FromStr for IrrepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "trivial" => return Ok(Self::TRIVIAL),
            "st" | "steinberg" => return Ok(Self::STEINBERG),
            _ => {}
        }
        let bad = || Error::InvalidLabel(s.to_string());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let v: Vec<u32> = rest
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind.trim().to_ascii_lowercase().as_str(), v.as_slice()) {
            ("onedim", [k]) => Ok(IrrepLabel::OneDim(*k)),
            ("principal", [k, l]) => Ok(IrrepLabel::Principal(*k, *l)),
            ("steinberg" | "st", [k]) => Ok(IrrepLabel::SteinbergTwist(*k)),
            ("cuspidal", [k]) => Ok(IrrepLabel::Cuspidal(*k)),
            _ => Err(bad()),
        }
    }
}

/// All irreps for `p` in table order.
pub fn irrep_labels(p: u32) -> Vec<IrrepLabel> {
    let n = p - 1;
    let q = p * p - 1;
    let mut v = Vec::with_capacity(q as usize);
    v.extend((0..n).map(IrrepLabel::OneDim));
    for k in 0..n {
        for l in k + 1..n {
            v.push(IrrepLabel::Principal(k, l));
        }
    }
    v.extend((0..n).map(IrrepLabel::SteinbergTwist));
    for k in 1..q {
        if k % (p + 1) == 0 {
            continue;
        }
        let kp = (k as u64 * p as u64 % q as u64) as u32;
        if k < kp {
            v.push(IrrepLabel::Cuspidal(k));
        }
    }
    v
}

/// Either a class label or a concrete matrix.
#[derive(Debug, Clone, Copy)]
pub enum CharArg {
    Class(ClassLabel),
    Matrix(Mat2),
}

/// Complete character table of `GL(2, F_p)`.
#[derive(Debug)]
pub struct CharacterTable {
    gl2: Arc<Gl2>,
    irreps: Vec<IrrepLabel>,
    dims: Vec<u64>,
    values: Vec<ComplexValue>,
}

/// Builds the table for `3 <= p <= 101`.
pub fn build_table(p: u64) -> Result<CharacterTable> {
    Ok(CharacterTable::new(Gl2::new(p)?))
}

impl CharacterTable {
    pub fn new(gl2: Arc<Gl2>) -> Self {
        let p = gl2.p();
        let irreps = irrep_labels(p);
        let dims = irreps.iter().map(|r| r.dim(p)).collect();
        let nc = gl2.num_classes();
        let mut values = vec![Complex64::new(0.0, 0.0); irreps.len() * nc];
        for (ri, rho) in irreps.iter().enumerate() {
            for (ci, c) in gl2.classes().iter().enumerate() {
                values[ri * nc + ci] = standard_value(&gl2, rho, &c.label);
            }
        }
        Self {
            gl2,
            irreps,
            dims,
            values,
        }
    }

    pub fn p(&self) -> u32 {
        self.gl2.p()
    }

    pub fn group(&self) -> &Arc<Gl2> {
        &self.gl2
    }

    pub fn irreps(&self) -> &[IrrepLabel] {
        &self.irreps
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn num_classes(&self) -> usize {
        self.gl2.num_classes()
    }

    pub fn irrep_index(&self, label: &IrrepLabel) -> Result<usize> {
        let c = label.canonical(self.p())?;
        self.irreps
            .binary_search_by(|r| irrep_order(r).cmp(&irrep_order(&c)))
            .map_err(|_| Error::InvalidLabel(label.to_string()))
    }

    #[inline]
    pub fn value(&self, irrep: usize, class: usize) -> ComplexValue {
        self.values[irrep * self.num_classes() + class]
    }

    pub fn row(&self, irrep: usize) -> &[ComplexValue] {
        let nc = self.num_classes();
        &self.values[irrep * nc..(irrep + 1) * nc]
    }

    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    /// Character value; singular matrices give 0.
    pub fn char_value(&self, irrep: &IrrepLabel, arg: CharArg) -> Result<ComplexValue> {
        let ri = self.irrep_index(irrep)?;
        let ci = match arg {
            CharArg::Class(c) => self.gl2.class_index(&c)?,
            CharArg::Matrix(m) => {
                if m.p() != self.p() {
                    return Err(Error::ModulusMismatch(self.p() as u64, m.p() as u64));
                }
                match self.gl2.class_key(m.entries()) {
                    SINGULAR => return Ok(Complex64::new(0.0, 0.0)),
                    k => k as usize,
                }
            }
        };
        Ok(self.value(ri, ci))
    }

    /// `<f, g> = |G|^{-1} sum_C |C| f(C) conj(g(C))`.
    pub fn inner(&self, f: &[ComplexValue], g: &[ComplexValue]) -> ComplexValue {
        let s: ComplexValue = self
            .gl2
            .classes()
            .iter()
            .zip(f.iter().zip(g))
            .map(|(c, (a, b))| c.size as f64 * a * b.conj())
            .sum();
        s / self.gl2.order() as f64
    }

    /// Largest deviation of the row Gram matrix from the identity.
    pub fn row_orthogonality_deviation(&self) -> f64 {
        let n = self.irreps.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                let ip = self.inner(self.row(i), self.row(j));
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }

    /// Largest deviation of `sum_rho chi(C) conj(chi(C')) |C| / |G|` from
    /// `[C = C']`.
    pub fn column_orthogonality_deviation(&self) -> f64 {
        let nc = self.num_classes();
        let order = self.gl2.order() as f64;
        let mut worst: f64 = 0.0;
        for a in 0..nc {
            let sa = self.gl2.classes()[a].size as f64;
            for b in a..nc {
                let s: ComplexValue = (0..self.irreps.len())
                    .map(|r| self.value(r, a) * self.value(r, b).conj())
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s * sa / order - target).norm());
            }
        }
        worst
    }
}

fn irrep_order(r: &IrrepLabel) -> (u8, u32, u32) {
    match *r {
        IrrepLabel::OneDim(k) => (0, k, 0),
        IrrepLabel::Principal(k, l) => (1, k, l),
        IrrepLabel::SteinbergTwist(k) => (2, k, 0),
        IrrepLabel::Cuspidal(k) => (3, k, 0),
    }
}

fn standard_value(g: &Gl2, rho: &IrrepLabel, class: &ClassLabel) -> ComplexValue {
    let f = g.field();
    let p = g.p();
    let pu = p as u64;
    let tau = f.tau() as u64;
    let mulp = |a: u32, b: u32| (a as u64 * b as u64 % pu) as u32;
    let norm = |x: u32, y: u32| {
        let x2 = x as u64 * x as u64 % pu;
        let ty2 = tau * (y as u64 * y as u64 % pu) % pu;
        ((x2 + pu - ty2) % pu) as u32
    };
    let zero = Complex64::new(0.0, 0.0);
    match *rho {
        IrrepLabel::OneDim(k) => {
            let det = match *class {
                ClassLabel::Central(a) | ClassLabel::NonSemisimple(a) => mulp(a, a),
                ClassLabel::Split(a, b) => mulp(a, b),
                ClassLabel::Elliptic(x, y) => norm(x, y),
            };
            f.base_char(k as u64, det)
        }
        IrrepLabel::SteinbergTwist(k) => {
            let k = k as u64;
            match *class {
                ClassLabel::Central(a) => pu as f64 * f.base_char(k, mulp(a, a)),
                ClassLabel::NonSemisimple(_) => zero,
                ClassLabel::Split(a, b) => f.base_char(k, mulp(a, b)),
                ClassLabel::Elliptic(x, y) => -f.base_char(k, norm(x, y)),
            }
        }
        IrrepLabel::Principal(k, l) => {
            let (k, l) = (k as u64, l as u64);
            match *class {
                ClassLabel::Central(a) => (pu + 1) as f64 * f.base_char(k, a) * f.base_char(l, a),
                ClassLabel::NonSemisimple(a) => f.base_char(k, a) * f.base_char(l, a),
                ClassLabel::Split(a, b) => {
                    f.base_char(k, a) * f.base_char(l, b) + f.base_char(k, b) * f.base_char(l, a)
                }
                ClassLabel::Elliptic(..) => zero,
            }
        }
        IrrepLabel::Cuspidal(k) => {
            let k = k as u64;
            match *class {
                ClassLabel::Central(a) => (pu - 1) as f64 * f.quad_char(k, a, 0),
                ClassLabel::NonSemisimple(a) => -f.quad_char(k, a, 0),
                ClassLabel::Split(..) => zero,
                ClassLabel::Elliptic(x, y) => {
                    -(f.quad_char(k, x, y) + f.quad_char(k, x, (p - y) % p))
                }
            }
        }
    }
}

/// `k(rho)`: multiplicity of the eigenvalue 1 in the semisimple class
/// attached to `rho`.
pub fn unit_multiplicity(irrep: &IrrepLabel) -> u32 {
    match *irrep {
        IrrepLabel::OneDim(0) | IrrepLabel::SteinbergTwist(0) => 2,
        IrrepLabel::Principal(0, _) => 1,
        _ => 0,
    }
}

/// Subgroups used for induction and projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    /// Upper-triangular Borel `P' = {(a b; 0 d)}`.
    PPrime,
    /// `MU' = {(1 u'; 0 m)}`.
    MuPrime,
}

impl Subgroup {
    pub fn contains(&self, m: &Mat2) -> bool {
        let [a, _, c, d] = m.entries();
        match self {
            Subgroup::PPrime => c == 0 && a != 0 && d != 0,
            Subgroup::MuPrime => c == 0 && a == 1 && d != 0,
        }
    }

    pub fn order(&self, p: u32) -> u64 {
        let p = p as u64;
        match self {
            Subgroup::PPrime => p * (p - 1) * (p - 1),
            Subgroup::MuPrime => p * (p - 1),
        }
    }

    pub fn elements(&self, p: u32) -> Vec<Mat2> {
        let mut v = Vec::with_capacity(self.order(p) as usize);
        let first = match self {
            Subgroup::PPrime => 1..p,
            Subgroup::MuPrime => 1..2,
        };
        for a in first {
            for b in 0..p {
                for d in 1..p {
                    v.push(Mat2::from_raw(p, [a, b, 0, d]));
                }
            }
        }
        v
    }
}

/// Inducing data: a character `chi_k (x) chi_l` of `P'`, or `1` on `MU'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inducing {
    PPrime { k: u32, l: u32 },
    MuTrivial,
}

impl Inducing {
    fn subgroup(&self) -> Subgroup {
        match self {
            Inducing::PPrime { .. } => Subgroup::PPrime,
            Inducing::MuTrivial => Subgroup::MuPrime,
        }
    }

    fn theta(&self, g: &Gl2, h: &Mat2) -> ComplexValue {
        match *self {
            Inducing::PPrime { k, l } => {
                let [a, _, _, d] = h.entries();
                g.field().base_char(k as u64, a) * g.field().base_char(l as u64, d)
            }
            Inducing::MuTrivial => Complex64::new(1.0, 0.0),
        }
    }
}

/// `Ind_H^G(theta)` at one class, by the averaged conjugation formula.
pub fn induced_character(g: &Gl2, data: Inducing, class: &ClassLabel) -> Result<ComplexValue> {
    let idx = g.class_index(class)?;
    let target = g.classes()[idx].representative;
    let h = data.subgroup();
    let p = g.p();
    let mut s = Complex64::new(0.0, 0.0);
    for &(xi, _) in g.elements()? {
        let x = Mat2::from_index(p, xi);
        let y = x.inverse()? * target * x;
        if h.contains(&y) {
            s += data.theta(g, &y);
        }
    }
    Ok(s / h.order(p) as f64)
}

/// Induced character as a full class function.
pub fn induced_class_function(g: &Gl2, data: Inducing) -> Result<Vec<ComplexValue>> {
    g.classes()
        .iter()
        .map(|c| induced_character(g, data, &c.label))
        .collect()
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub n: usize,
    pub a: Vec<ComplexValue>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            a: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ComplexValue {
        self.a[i * self.n + j]
    }

    pub fn trace(&self) -> ComplexValue {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut r = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let v = self.a[i * n + k];
                if v == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    r.a[i * n + j] += v * o.a[k * n + j];
                }
            }
        }
        r
    }

    pub fn apply(&self, v: &[ComplexValue]) -> Vec<ComplexValue> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.a
            .iter()
            .zip(&o.a)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }
}

/// Which concrete model an [`InducedModel`] realises.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    /// `Ind_{P'}^G(chi_k (x) chi_l)` on functions on `P^1`.
    PPrime { k: u32, l: u32 },
    /// The sum-zero subspace of `Ind_{P'}^G(1)`.
    Steinberg,
    /// `Ind_{MU'}^G(1)`, the permutation action on nonzero vectors.
    MuTrivial,
}

/// Largest prime for which the `MU'`-induced model is materialised.
pub const MU_MODEL_MAX_PRIME: u32 = 13;

/// An explicit matrix model of an induced representation.
#[derive(Debug, Clone)]
pub struct InducedModel {
    gl2: Arc<Gl2>,
    kind: ModelKind,
}

impl InducedModel {
    pub fn new(gl2: Arc<Gl2>, kind: ModelKind) -> Result<Self> {
        let p = gl2.p();
        if let ModelKind::PPrime { k, l } = kind {
            if k >= p - 1 || l >= p - 1 {
                return Err(Error::InvalidLabel(format!("character pair ({k}, {l})")));
            }
        }
        if kind == ModelKind::MuTrivial && p > MU_MODEL_MAX_PRIME {
            return Err(Error::PrimeOutOfRange {
                p: p as u64,
                min: 3,
                max: MU_MODEL_MAX_PRIME as u64,
            });
        }
        Ok(Self { gl2, kind })
    }

    /// `I_{chi, 1}` realised as `Ind_{P'}(chi (x) 1)`.
    pub fn principal_with_trivial(gl2: Arc<Gl2>, k: u32) -> Result<Self> {
        Self::new(gl2, ModelKind::PPrime { k, l: 0 })
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.gl2.p()
    }

    pub fn dim(&self) -> usize {
        let p = self.p() as usize;
        match self.kind {
            ModelKind::PPrime { .. } => p + 1,
            ModelKind::Steinberg => p,
            ModelKind::MuTrivial => p * p - 1,
        }
    }

    /// Point of `P^1` as index: `[v:1] -> v`, infinity `-> p`.
    fn act_p1(p: u32, g: &Mat2, pt: u32) -> u32 {
        let [a, b, c, d] = g.entries().map(u64::from);
        let pu = p as u64;
        let (x, y) = if pt == p { (1, 0) } else { (pt as u64, 1) };
        let nx = (a * x + b * y) % pu;
        let ny = (c * x + d * y) % pu;
        if ny == 0 {
            p
        } else {
            let inv = crate::group::inv_mod(ny as u32, p) as u64;
            (nx * inv % pu) as u32
        }
    }

    fn coset_rep(p: u32, pt: u32) -> Mat2 {
        if pt == p {
            Mat2::identity(p)
        } else {
            Mat2::from_raw(p, [pt, 1, 1, 0])
        }
    }

    fn p1_matrix(&self, g: &Mat2, k: u32, l: u32) -> Result<DenseMatrix> {
        let p = self.p();
        let n = p as usize + 1;
        let gi = g.inverse()?;
        let f = self.gl2.field();
        let mut m = DenseMatrix::zeros(n);
        for pt in 0..=p {
            let src = Self::act_p1(p, &gi, pt);
            let q = Self::coset_rep(p, src).inverse()? * gi * Self::coset_rep(p, pt);
            let [a, _, c, d] = q.entries();
            debug_assert_eq!(c, 0);
            let theta = f.base_char(k as u64, a) * f.base_char(l as u64, d);
            m.a[pt as usize * n + src as usize] = theta.conj();
        }
        Ok(m)
    }

    /// `rho(g)` as a dense matrix.
    pub fn matrix(&self, g: &Mat2) -> Result<DenseMatrix> {
        if g.p() != self.p() {
            return Err(Error::ModulusMismatch(self.p() as u64, g.p() as u64));
        }
        let p = self.p();
        match self.kind {
            ModelKind::PPrime { k, l } => self.p1_matrix(g, k, l),
            ModelKind::Steinberg => {
                // basis f_i = e_i - e_inf, i < p
                let n = p as usize;
                let inf = Self::act_p1(p, g, p);
                let mut m = DenseMatrix::zeros(n);
                for i in 0..p {
                    let t = Self::act_p1(p, g, i);
                    if t != p {
                        m.a[t as usize * n + i as usize] += 1.0;
                    }
                    if inf != p {
                        m.a[inf as usize * n + i as usize] -= 1.0;
                    }
                }
                Ok(m)
            }
            ModelKind::MuTrivial => {
                if !g.is_invertible() {
                    return Err(Error::NotInGl2);
                }
                let n = (p * p - 1) as usize;
                let pu = p as u64;
                let [a, b, c, d] = g.entries().map(u64::from);
                let mut m = DenseMatrix::zeros(n);
                for v in 1..p * p {
                    let (x, y) = ((v / p) as u64, (v % p) as u64);
                    let w = ((a * x + b * y) % pu) * pu + (c * x + d * y) % pu;
                    m.a[(w as usize - 1) * n + v as usize - 1] = Complex64::new(1.0, 0.0);
                }
                Ok(m)
            }
        }
    }

    /// `Pr_H = |H|^{-1} sum_{h in H} rho(h)`.
    pub fn projection(&self, h: Subgroup) -> Result<DenseMatrix> {
        let p = self.p();
        let elems = h.elements(p);
        let n = self.dim();
        let mut acc = DenseMatrix::zeros(n);
        for e in &elems {
            let m = self.matrix(e)?;
            for (x, y) in acc.a.iter_mut().zip(&m.a) {
                *x += y;
            }
        }
        let s = elems.len() as f64;
        acc.a.iter_mut().for_each(|x| *x /= s);
        Ok(acc)
    }
}

/// Rank of `Pr_H` on the model, and an invariant vector when the rank is 1.
#[derive(Debug, Clone)]
pub struct ProjectionRank {
    pub rank: u32,
    pub invariant_vector: Option<Vec<ComplexValue>>,
    pub idempotence_error: f64,
}

/// Rank of the `H`-projection by the rounded trace of `Pr_H`.
pub fn projection_rank(model: &InducedModel, h: Subgroup, p: u32) -> Result<ProjectionRank> {
    if p != model.p() {
        return Err(Error::Mismatch(format!(
            "model built for p = {}, subgroup requested for p = {p}",
            model.p()
        )));
    }
    let pr = model.projection(h)?;
    let idempotence_error = pr.mul(&pr).max_abs_diff(&pr);
    let t = pr.trace();
    let rank = t.re.round();
    if (t.re - rank).abs() > 0.01 || t.im.abs() > 0.01 {
        return Err(Error::Mismatch(format!(
            "projection trace {t} is not an integer"
        )));
    }
    let rank = rank as u32;
    let invariant_vector = if rank == 1 {
        // the column of Pr with the largest norm spans the image
        let n = pr.n;
        let best = (0..n)
            .max_by(|&i, &j| {
                let ni: f64 = (0..n).map(|r| pr.get(r, i).norm_sqr()).sum();
                let nj: f64 = (0..n).map(|r| pr.get(r, j).norm_sqr()).sum();
                ni.total_cmp(&nj)
            })
            .unwrap_or(0);
        Some((0..n).map(|r| pr.get(r, best)).collect())
    } else {
        None
    };
    Ok(ProjectionRank {
        rank,
        invariant_vector,
        idempotence_error,
    })
}

/// Whether `v` is a nonzero multiple of `w`.
pub fn proportional(v: &[ComplexValue], w: &[ComplexValue], tol: f64) -> bool {
    let Some(i) = (0..w.len()).max_by(|&a, &b| w[a].norm().total_cmp(&w[b].norm())) else {
        return false;
    };
    if w[i].norm() < tol || v[i].norm() < tol {
        return false;
    }
    let s = v[i] / w[i];
    v.iter().zip(w).all(|(a, b)| (a - s * b).norm() <= tol)
}

/// Order of a character of `F_p^*` with index `k`.
pub fn base_char_order(p: u32, k: u32) -> u64 {
    let n = (p - 1) as u64;
    n / gcd(k as u64, n)
}

/// Order of a character of `F_{p^2}^*` with index `k`.
pub fn quad_char_order(p: u32, k: u32) -> u64 {
    let n = p as u64 * p as u64 - 1;
    n / gcd(k as u64, n)
}
