//! Fourier analysis on `M(2, F_p)`: interval indicators, the Plancherel
//! identity and character sums over integer matrix boxes.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ComplexValue, PrimeField};
use crate::chars::{CharacterTable, IrrepLabel};
use crate::error::{Error, Result};
use crate::gauss::{GaussTable, MatKey};
use crate::group::{Gl2, IntMat2, Mat2, SINGULAR};

/// Direct enumeration refuses boxes with more points than this.
pub const DIRECT_MAX_POINTS: u128 = 100_000_000;

/// Product of four inclusive integer intervals, in entry order
/// `I11, I12, I21, I22`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MatrixInterval {
    pub comps: [(i64, i64); 4],
}

impl MatrixInterval {
    pub fn new(comps: [(i64, i64); 4]) -> Result<Self> {
        for &(lo, hi) in &comps {
            if lo > hi {
                return Err(Error::EmptyInterval { lo, hi });
            }
        }
        Ok(Self { comps })
    }

    /// `[-x, x]^4`.
    pub fn centered(x: u64) -> Self {
        let x = x as i64;
        Self {
            comps: [(-x, x); 4],
        }
    }

    /// `A0 + [-x, x]^4`.
    pub fn shifted(a0: &IntMat2, x: u64) -> Self {
        let x = x as i64;
        Self {
            comps: a0.e.map(|c| (c - x, c + x)),
        }
    }

    /// `[0, p-1]^4`.
    pub fn full(p: u32) -> Self {
        Self {
            comps: [(0, p as i64 - 1); 4],
        }
    }

    pub fn len(&self, i: usize) -> u64 {
        (self.comps[i].1 - self.comps[i].0 + 1) as u64
    }

    pub fn max_len(&self) -> u64 {
        (0..4).map(|i| self.len(i)).max().unwrap_or(0)
    }

    pub fn cardinality(&self) -> u128 {
        (0..4).map(|i| self.len(i) as u128).product()
    }

    /// Smallest `c` with every component length at most `c p`.
    pub fn c_budget(&self, p: u32) -> f64 {
        self.max_len() as f64 / p as f64
    }

    /// `cnt[r]`: number of integers in component `i` congruent to `r`.
    pub fn residue_counts(&self, i: usize, p: u32) -> Vec<u64> {
        let (lo, hi) = self.comps[i];
        let p = p as i64;
        (0..p)
            .map(|r| {
                // count n in [lo, hi] with n = r mod p
                let first = lo + (r - lo).rem_euclid(p);
                if first > hi {
                    0
                } else {
                    ((hi - first) / p + 1) as u64
                }
            })
            .collect()
    }
}

/// `sum_{n = lo}^{hi} e_p(b n)` in closed form.
pub fn additive_interval_sum(field: &PrimeField, b: i64, lo: i64, hi: i64) -> ComplexValue {
    let p = field.p() as i64;
    let n = hi - lo + 1;
    if n <= 0 {
        return Complex64::new(0.0, 0.0);
    }
    let b = b.rem_euclid(p);
    if b == 0 {
        return Complex64::new(n as f64, 0.0);
    }
    let r = |t: i64| field.ep(t.rem_euclid(p) as u32);
    let start = r(b * lo.rem_euclid(p));
    let num = Complex64::new(1.0, 0.0) - r(b * n.rem_euclid(p));
    let den = Complex64::new(1.0, 0.0) - r(b);
    start * num / den
}

/// `min(N, 1 / (2 ||b/p||))`.
pub fn linear_sum_bound(p: u32, b: i64, n: u64) -> f64 {
    let b = b.rem_euclid(p as i64) as f64;
    let frac = b / p as f64;
    let dist = frac.min(1.0 - frac);
    if dist == 0.0 {
        n as f64
    } else {
        (n as f64).min(1.0 / (2.0 * dist))
    }
}

/// Per-entry factor tables `F_ij[b] = sum_{x in I_ij} e_p(b x)`.
fn factor_tables(field: &PrimeField, iv: &MatrixInterval) -> [Vec<ComplexValue>; 4] {
    let p = field.p() as i64;
    std::array::from_fn(|i| {
        let (lo, hi) = iv.comps[i];
        (0..p)
            .map(|b| additive_interval_sum(field, b, lo, hi))
            .collect()
    })
}

/// `delta-hat(B) = p^{-4} sum_{X in I} e_p(-Tr(BX))`, counted with
/// multiplicity for components longer than `p`.
pub fn interval_indicator_ft(field: &PrimeField, iv: &MatrixInterval, b: &Mat2) -> ComplexValue {
    let [b11, b12, b21, b22] = b.entries().map(|v| v as i64);
    // Tr(BX) = b11 x11 + b12 x21 + b21 x12 + b22 x22
    let f = |bij: i64, comp: usize| {
        let (lo, hi) = iv.comps[comp];
        additive_interval_sum(field, -bij, lo, hi)
    };
    let p4 = (field.p() as f64).powi(4);
    f(b11, 0) * f(b12, 2) * f(b21, 1) * f(b22, 3) / p4
}

/// `p^{-4} prod min(cp, 1 / ||b_ij / p||)`.
pub fn indicator_ft_bound(p: u32, c: f64, b: &Mat2) -> f64 {
    let cp = c * p as f64;
    let prod: f64 = b
        .entries()
        .iter()
        .map(|&v| {
            let frac = v as f64 / p as f64;
            let d = frac.min(1.0 - frac);
            if d == 0.0 {
                cp
            } else {
                cp.min(1.0 / d)
            }
        })
        .product();
    prod / (p as f64).powi(4)
}

/// `sum_B |delta-hat(B)| = p^{-4} prod_ij sum_b |F_ij(b)|`.
pub fn indicator_ft_l1(field: &PrimeField, iv: &MatrixInterval) -> f64 {
    let t = factor_tables(field, iv);
    let p4 = (field.p() as f64).powi(4);
    t.iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .product::<f64>()
        / p4
}

/// `((c+3)/2)^4 (log p)^4`.
pub fn box_l1_bound(p: u32, c: f64) -> f64 {
    ((c + 3.0) / 2.0).powi(4) * (p as f64).ln().powi(4)
}

/// Summation method for box character sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxMethod {
    Direct,
    Plancherel,
}

/// `D[key] = sum_{B : key(-B) = key} prod_ij F_ij(b_ij)`, so that
/// `S(rho, I) = p^{-4} sum_key Tr G(rho, key) D[key]`.
pub fn plancherel_weights(gl2: &Gl2, iv: &MatrixInterval) -> Vec<ComplexValue> {
    let p = gl2.p();
    let f = factor_tables(gl2.field(), iv);
    let nkeys = MatKey::count(p);
    let zero = || vec![Complex64::new(0.0, 0.0); nkeys];
    (0..p)
        .into_par_iter()
        .fold(zero, |mut acc, b11| {
            let neg = |v: u32| (p - v) % p;
            for b12 in 0..p {
                // b12 pairs with x21, b21 with x12
                let w12 = f[0][b11 as usize] * f[2][b12 as usize];
                for b21 in 0..p {
                    let w = w12 * f[1][b21 as usize];
                    for b22 in 0..p {
                        let m = Mat2::from_raw(p, [neg(b11), neg(b12), neg(b21), neg(b22)]);
                        let key = MatKey::of(gl2, &m).index(p);
                        acc[key] += w * f[3][b22 as usize];
                    }
                }
            }
            acc
        })
        .reduce(zero, |mut l, r| {
            l.iter_mut().zip(&r).for_each(|(x, y)| *x += y);
            l
        })
}

fn key_from_index(p: u32, k: usize) -> MatKey {
    let pu = p as usize;
    if k == 0 {
        MatKey::Zero
    } else if k < pu {
        MatKey::Semisimple(k as u32)
    } else if k == pu {
        MatKey::Nilpotent
    } else {
        MatKey::Invertible(k - pu - 1)
    }
}

/// Box sums for every irrep from one set of Plancherel weights.
pub fn plancherel_box_sums(gt: &GaussTable, weights: &[ComplexValue]) -> Vec<ComplexValue> {
    let t = gt.table();
    let p = t.p();
    let p4 = (p as f64).powi(4);
    let keys: Vec<(MatKey, ComplexValue)> = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.norm() > 0.0)
        .map(|(k, w)| (key_from_index(p, k), *w))
        .collect();
    (0..t.irreps().len())
        .into_par_iter()
        .map(|ri| {
            keys.iter()
                .map(|&(k, w)| gt.trace_by_key(ri, k) * w)
                .sum::<ComplexValue>()
                / p4
        })
        .collect()
}

/// Number of integer points of the box landing in each class (singular
/// points dropped), by literal enumeration.
pub fn enumerate_class_counts(gl2: &Gl2, iv: &MatrixInterval) -> Result<Vec<u64>> {
    let n = iv.cardinality();
    if n > DIRECT_MAX_POINTS {
        return Err(Error::CardinalityOverflow(n));
    }
    let p = gl2.p() as i64;
    let nc = gl2.num_classes();
    let [c0, c1, c2, c3] = iv.comps;
    let r = |v: i64| v.rem_euclid(p) as u32;
    Ok((c0.0..=c0.1)
        .into_par_iter()
        .fold(
            || vec![0u64; nc],
            |mut acc, a| {
                for b in c1.0..=c1.1 {
                    for c in c2.0..=c2.1 {
                        for d in c3.0..=c3.1 {
                            let k = gl2.class_key([r(a), r(b), r(c), r(d)]);
                            if k != SINGULAR {
                                acc[k as usize] += 1;
                            }
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; nc],
            |mut l, r| {
                l.iter_mut().zip(&r).for_each(|(x, y)| *x += y);
                l
            },
        ))
}

/// `S(chi_rho, I) = sum_{A in I} chi_rho(A)`.
pub fn box_char_sum(
    gt: &GaussTable,
    irrep: &IrrepLabel,
    iv: &MatrixInterval,
    method: BoxMethod,
) -> Result<ComplexValue> {
    let t = gt.table();
    let ri = t.irrep_index(irrep)?;
    match method {
        BoxMethod::Direct => {
            let counts = enumerate_class_counts(t.group(), iv)?;
            Ok(counts
                .iter()
                .enumerate()
                .map(|(ci, &n)| n as f64 * t.value(ri, ci))
                .sum())
        }
        BoxMethod::Plancherel => {
            let w = plancherel_weights(t.group(), iv);
            let p = t.p();
            let p4 = (p as f64).powi(4);
            Ok(w.iter()
                .enumerate()
                .map(|(k, w)| gt.trace_by_key(ri, key_from_index(p, k)) * w)
                .sum::<ComplexValue>()
                / p4)
        }
    }
}

/// `|S| / (d p^2 (log p)^4)`.
pub fn pv_ratio(abs_sum: f64, dim: u64, p: u32) -> f64 {
    let p = p as f64;
    abs_sum / (dim as f64 * p * p * p.ln().powi(4))
}

/// One row of a PV scan.
#[derive(Debug, Clone, Serialize)]
pub struct PvRow {
    pub p: u32,
    pub irrep: IrrepLabel,
    pub dim: u64,
    pub x: u64,
    pub abs_sum: f64,
    pub ratio: f64,
}

/// Scan report with the asserted constant.
#[derive(Debug, Clone, Serialize)]
pub struct PvReport {
    pub p: u32,
    pub c: f64,
    pub constant: f64,
    /// Whether the bound is asserted for this grid.
    pub asserted: bool,
    pub max_ratio: f64,
    pub holds: bool,
    pub rows: Vec<PvRow>,
}

/// PV scan over boxes `offset + [-x, x]^4` for each `x`, all nontrivial
/// irreps.
///
/// With no offset, the constant is 16 and it is asserted when `p >= 11`
/// and every `x < p`. With an offset, the constant is `((c+3)/2)^4` and it
/// is asserted when `p >= 11` and `2x + 1 <= c p` for every `x`.
pub fn pv_scan(gt: &GaussTable, x_values: &[u64], offset: Option<&IntMat2>, c: f64) -> PvReport {
    let t = gt.table();
    let p = t.p();
    let mut rows = Vec::new();
    for &x in x_values {
        let iv = match offset {
            Some(a0) => MatrixInterval::shifted(a0, x),
            None => MatrixInterval::centered(x),
        };
        let w = plancherel_weights(t.group(), &iv);
        let sums = plancherel_box_sums(gt, &w);
        for (ri, r) in t.irreps().iter().enumerate() {
            if r.is_trivial() {
                continue;
            }
            let abs_sum = sums[ri].norm();
            let dim = t.dims()[ri];
            rows.push(PvRow {
                p,
                irrep: *r,
                dim,
                x,
                abs_sum,
                ratio: pv_ratio(abs_sum, dim, p),
            });
        }
    }
    let (constant, in_regime) = match offset {
        None => (16.0, x_values.iter().all(|&x| x < p as u64)),
        Some(_) => (
            ((c + 3.0) / 2.0).powi(4),
            x_values.iter().all(|&x| (2 * x + 1) as f64 <= c * p as f64),
        ),
    };
    let asserted = p >= 11 && in_regime;
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    PvReport {
        p,
        c,
        constant,
        asserted,
        max_ratio,
        holds: !asserted || max_ratio <= constant,
        rows,
    }
}

/// `|LHS - RHS|` of `p^{-4} sum f conj(g) = sum_B f-hat(B) conj(g-hat(B))`,
/// value lists indexed by [`Mat2::index`].
pub fn plancherel_check(field: &PrimeField, f: &[ComplexValue], g: &[ComplexValue]) -> Result<f64> {
    let p = field.p();
    let n = (p as usize).pow(4);
    for v in [f, g] {
        if v.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    let p4 = n as f64;
    let lhs: ComplexValue = f
        .iter()
        .zip(g)
        .map(|(a, b)| a * b.conj())
        .sum::<ComplexValue>()
        / p4;
    let fh = fourier_transform(field, f);
    let gh = fourier_transform(field, g);
    let rhs: ComplexValue = fh.iter().zip(&gh).map(|(a, b)| a * b.conj()).sum();
    Ok((lhs - rhs).norm())
}

/// `f-hat(B) = p^{-4} sum_X f(X) e_p(-Tr(BX))`, as four successive
/// one-dimensional transforms.
pub fn fourier_transform(field: &PrimeField, f: &[ComplexValue]) -> Vec<ComplexValue> {
    let p = field.p() as usize;
    let mut cur = f.to_vec();
    // Tr(BX) pairs b11-x11, b12-x21, b21-x12, b22-x22: transform each axis,
    // then swap the two off-diagonal axes.
    for axis in 0..4 {
        let stride = p.pow(3 - axis as u32);
        let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
        for (idx, slot) in next.iter_mut().enumerate() {
            let b = (idx / stride) % p;
            let base = idx - b * stride;
            let mut s = Complex64::new(0.0, 0.0);
            for x in 0..p {
                let t = (p - (b * x) % p) % p;
                s += cur[base + x * stride] * field.ep(t as u32);
            }
            *slot = s;
        }
        cur = next;
    }
    let p4 = (p as f64).powi(4);
    let mut out = vec![Complex64::new(0.0, 0.0); cur.len()];
    for (idx, v) in cur.iter().enumerate() {
        let m = Mat2::from_index(p as u32, idx as u32).entries();
        let swapped = Mat2::from_raw(p as u32, [m[0], m[2], m[1], m[3]]);
        out[swapped.index() as usize] = v / p4;
    }
    out
}

/// Extended character of `irrep` as a value list over `M(2, F_p)`.
pub fn extended_character(t: &CharacterTable, irrep: &IrrepLabel) -> Result<Vec<ComplexValue>> {
    let ri = t.irrep_index(irrep)?;
    let p = t.p();
    let g = t.group();
    Ok((0..p.pow(4))
        .map(|i| match g.class_key(Mat2::from_index(p, i).entries()) {
            SINGULAR => Complex64::new(0.0, 0.0),
            k => t.value(ri, k as usize),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::build_table;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn naive_sum(field: &PrimeField, b: i64, lo: i64, hi: i64) -> ComplexValue {
        (lo..=hi)
            .map(|n| field.ep((b * n).rem_euclid(field.p() as i64) as u32))
            .sum()
    }

    #[test]
    fn additive_sum_examples() {
        let f = PrimeField::new(5).unwrap();
        assert!((additive_interval_sum(&f, 0, 3, 9) - 7.0).norm() < 1e-12);
        assert!(additive_interval_sum(&f, 2, -7, -3).norm() < 1e-12);
        let v = additive_interval_sum(&f, 1, 0, 2);
        assert!((v - naive_sum(&f, 1, 0, 2)).norm() < 1e-12);
        assert!(v.norm() <= linear_sum_bound(5, 1, 3) + 1e-12);
        for p in [3u64, 7, 13] {
            let f = PrimeField::new(p).unwrap();
            for b in -3..(p as i64 + 2) {
                for lo in -20..5 {
                    for hi in lo..lo + 30 {
                        let v = additive_interval_sum(&f, b, lo, hi);
                        assert!((v - naive_sum(&f, b, lo, hi)).norm() < 1e-9);
                        let n = (hi - lo + 1) as u64;
                        assert!(v.norm() <= linear_sum_bound(p as u32, b, n) + 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn indicator_examples() {
        let f = PrimeField::new(5).unwrap();
        let full = MatrixInterval::full(5);
        assert!((interval_indicator_ft(&f, &full, &Mat2::zero(5)) - 1.0).norm() < 1e-12);
        for i in 1..625 {
            assert!(interval_indicator_ft(&f, &full, &Mat2::from_index(5, i)).norm() < 1e-12);
        }
    }

    #[test]
    fn indicator_matches_definition_and_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = PrimeField::new(5).unwrap();
        for _ in 0..20 {
            let comps = [0; 4].map(|_| {
                let lo = rng.gen_range(-6i64..6);
                (lo, lo + rng.gen_range(0i64..5))
            });
            let iv = MatrixInterval::new(comps).unwrap();
            let b = Mat2::from_index(5, rng.gen_range(0..625));
            let [b11, b12, b21, b22] = b.entries().map(|v| v as i64);
            let mut s = Complex64::new(0.0, 0.0);
            for x11 in comps[0].0..=comps[0].1 {
                for x12 in comps[1].0..=comps[1].1 {
                    for x21 in comps[2].0..=comps[2].1 {
                        for x22 in comps[3].0..=comps[3].1 {
                            let tr = b11 * x11 + b12 * x21 + b21 * x12 + b22 * x22;
                            s += f.ep((-tr).rem_euclid(5) as u32);
                        }
                    }
                }
            }
            let v = interval_indicator_ft(&f, &iv, &b);
            assert!((v - s / 625.0).norm() < 1e-12);
            assert!(v.norm() <= indicator_ft_bound(5, 1.0, &b) + 1e-12);
        }
    }

    #[test]
    fn box_sums_small() {
        let t = build_table(3).unwrap();
        let gt = GaussTable::new(&t);
        let iv = MatrixInterval::centered(1);
        let triv = box_char_sum(&gt, &IrrepLabel::TRIVIAL, &iv, BoxMethod::Direct).unwrap();
        assert!((triv - 48.0).norm() < 1e-9);
        let d = box_char_sum(&gt, &IrrepLabel::STEINBERG, &iv, BoxMethod::Direct).unwrap();
        let pl = box_char_sum(&gt, &IrrepLabel::STEINBERG, &iv, BoxMethod::Plancherel).unwrap();
        assert!((d - pl).norm() < 1e-5 * 3.0 * 9.0);
        for r in t.irreps().iter().filter(|r| !r.is_trivial()) {
            let s = box_char_sum(&gt, r, &MatrixInterval::full(3), BoxMethod::Plancherel).unwrap();
            assert!(s.norm() < 1e-9);
        }
    }

    #[test]
    fn direct_matches_plancherel_random_boxes() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for p in [5u32, 7] {
            let t = build_table(p as u64).unwrap();
            let gt = GaussTable::new(&t);
            for _ in 0..4 {
                let comps = [0; 4].map(|_| {
                    let lo = rng.gen_range(-10i64..10);
                    (lo, lo + rng.gen_range(0i64..(2 * p as i64)))
                });
                let iv = MatrixInterval::new(comps).unwrap();
                let w = plancherel_weights(t.group(), &iv);
                let sums = plancherel_box_sums(&gt, &w);
                let counts = enumerate_class_counts(t.group(), &iv).unwrap();
                for ri in 0..t.irreps().len() {
                    let d: ComplexValue = counts
                        .iter()
                        .enumerate()
                        .map(|(c, &n)| n as f64 * t.value(ri, c))
                        .sum();
                    let tol = 1e-5 * t.dims()[ri] as f64 * (p * p) as f64;
                    assert!((d - sums[ri]).norm() < tol);
                }
            }
        }
    }

    #[test]
    fn plancherel_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for p in [3u64, 5] {
            let f = PrimeField::new(p).unwrap();
            let n = (p as usize).pow(4);
            let mut delta = vec![Complex64::new(0.0, 0.0); n];
            delta[0] = Complex64::new(1.0, 0.0);
            assert!(plancherel_check(&f, &delta, &delta).unwrap() < 1e-12);
            let ones = vec![Complex64::new(1.0, 0.0); n];
            assert!(plancherel_check(&f, &ones, &ones).unwrap() < 1e-10);
            for _ in 0..20 {
                let mut r = || -> Vec<ComplexValue> {
                    (0..n)
                        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                };
                let (a, b) = (r(), r());
                let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                assert!(plancherel_check(&f, &a, &b).unwrap() <= 1e-8 * na * nb);
            }
        }
        assert!(plancherel_check(&PrimeField::new(3).unwrap(), &[], &[]).is_err());
    }

    #[test]
    fn transform_matches_char_ft() {
        let t = build_table(3).unwrap();
        let gt = GaussTable::new(&t);
        let f = t.group().field().clone();
        for (ri, r) in t.irreps().iter().enumerate() {
            let ext = extended_character(&t, r).unwrap();
            let hat = fourier_transform(&f, &ext);
            for i in 0..81 {
                let b = Mat2::from_index(3, i);
                let expect = gt.trace(ri, &b.neg()) / 81.0;
                assert!((hat[i as usize] - expect).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn dual_pairing_orthogonal_p3() {
        let f = PrimeField::new(3).unwrap();
        let tr = |a: &Mat2, x: &Mat2| (*a * *x).trace();
        for i in 0..81 {
            for j in i..81 {
                let (a, b) = (Mat2::from_index(3, i), Mat2::from_index(3, j));
                let s: ComplexValue = (0..81)
                    .map(|k| {
                        let x = Mat2::from_index(3, k);
                        f.ep(tr(&a, &x)) * f.ep(tr(&b, &x)).conj()
                    })
                    .sum();
                let expect = if i == j { 81.0 } else { 0.0 };
                assert!((s - expect).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn cardinality_guard() {
        let t = build_table(3).unwrap();
        let gt = GaussTable::new(&t);
        let big = MatrixInterval::centered(60);
        assert!(matches!(
            box_char_sum(&gt, &IrrepLabel::STEINBERG, &big, BoxMethod::Direct),
            Err(Error::CardinalityOverflow(_))
        ));
        assert!(MatrixInterval::new([(1, 0), (0, 0), (0, 0), (0, 0)]).is_err());
    }

    #[test]
    fn residue_counts_match() {
        let iv = MatrixInterval::new([(-7, 11), (0, 0), (3, 3), (-2, 40)]).unwrap();
        for i in 0..4 {
            let c = iv.residue_counts(i, 5);
            let (lo, hi) = iv.comps[i];
            for r in 0..5 {
                let n = (lo..=hi).filter(|v| v.rem_euclid(5) == r as i64).count() as u64;
                assert_eq!(c[r], n);
            }
        }
    }
}
