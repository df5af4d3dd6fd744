//! Exact counts of bounded-height integer matrices by residue class, the
//! Fourier coefficients of the primitive-element indicator, and the
//! one-parameter (shifted generator) counts.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{arith_functions, gcd, mobius, unit_root, ComplexValue, PrimeField};
use crate::chars::{CharacterTable, IrrepLabel};
use crate::error::{Error, Result};
use crate::fourier::MatrixInterval;
use crate::group::{ClassLabel, Gl2, Mat2, SetKind, SINGULAR};

/// `sum_{residue tuples r} w(r) prod_ij cnt_ij[r_ij]` over `M(2, F_p)`.
pub fn residue_box_sum<F>(p: u32, iv: &MatrixInterval, weight: F) -> i128
where
    F: Fn([u32; 4]) -> i64 + Sync,
{
    let cnt: [Vec<u64>; 4] = std::array::from_fn(|i| iv.residue_counts(i, p));
    (0..p)
        .into_par_iter()
        .map(|a| {
            let ca = cnt[0][a as usize] as i128;
            if ca == 0 {
                return 0;
            }
            let mut s: i128 = 0;
            for b in 0..p {
                let cb = ca * cnt[1][b as usize] as i128;
                if cb == 0 {
                    continue;
                }
                for c in 0..p {
                    let cc = cb * cnt[2][c as usize] as i128;
                    if cc == 0 {
                        continue;
                    }
                    for d in 0..p {
                        let w = weight([a, b, c, d]);
                        if w != 0 {
                            s += cc * cnt[3][d as usize] as i128 * w as i128;
                        }
                    }
                }
            }
            s
        })
        .sum()
}

/// Number of integer matrices in the box whose reduction satisfies `pred`.
pub fn residue_box_count<F>(p: u32, iv: &MatrixInterval, pred: F) -> u128
where
    F: Fn([u32; 4]) -> bool + Sync,
{
    residue_box_sum(p, iv, |e| pred(e) as i64) as u128
}

/// Number of integer matrices in the box landing in each class; the last
/// slot counts singular reductions.
pub fn residue_class_tally(gl2: &Gl2, iv: &MatrixInterval) -> Vec<u128> {
    let p = gl2.p();
    let nc = gl2.num_classes();
    let cnt: [Vec<u64>; 4] = std::array::from_fn(|i| iv.residue_counts(i, p));
    let zero = || vec![0u128; nc + 1];
    (0..p)
        .into_par_iter()
        .fold(zero, |mut acc, a| {
            let ca = cnt[0][a as usize] as u128;
            for b in 0..p {
                let cb = ca * cnt[1][b as usize] as u128;
                for c in 0..p {
                    let cc = cb * cnt[2][c as usize] as u128;
                    if cc == 0 {
                        continue;
                    }
                    for d in 0..p {
                        let k = gl2.class_key([a, b, c, d]);
                        let slot = if k == SINGULAR { nc } else { k as usize };
                        acc[slot] += cc * cnt[3][d as usize] as u128;
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

/// Literal enumeration of `[-x, x]^4`, used as the oracle for the residue
/// fast path.
pub fn naive_box_count<F>(p: u32, x: u64, pred: F) -> u128
where
    F: Fn([u32; 4]) -> bool + Sync,
{
    let x = x as i64;
    let r = |v: i64| v.rem_euclid(p as i64) as u32;
    (-x..=x)
        .into_par_iter()
        .map(|a| {
            let mut n = 0u128;
            for b in -x..=x {
                for c in -x..=x {
                    for d in -x..=x {
                        if pred([r(a), r(b), r(c), r(d)]) {
                            n += 1;
                        }
                    }
                }
            }
            n
        })
        .sum()
}

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Enumeration,
    ResidueCount,
    Fourier,
}

/// Exact count with its main term and normalized residual.
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub p: u32,
    pub x: u64,
    pub set_kind: String,
    pub exact_count: u128,
    pub main_term: f64,
    pub residual: f64,
    pub normalized_residual: f64,
    pub method: CountMethod,
}

impl CountReport {
    fn new(
        p: u32,
        x: u64,
        set_kind: String,
        exact_count: u128,
        main_term: f64,
        envelope: f64,
        method: CountMethod,
    ) -> Self {
        let residual = exact_count as f64 - main_term;
        Self {
            p,
            x,
            set_kind,
            exact_count,
            main_term,
            residual,
            normalized_residual: if envelope == 0.0 {
                0.0
            } else {
                residual / envelope
            },
            method,
        }
    }

    /// `exact / (2x+1)^4`.
    pub fn density(&self) -> f64 {
        self.exact_count as f64 / ((2 * self.x + 1) as f64).powi(4)
    }
}

/// `gamma_p = 1 - 1/p - 1/p^2 + 1/p^3`.
pub fn gamma_p(p: u32) -> f64 {
    let q = p as f64;
    1.0 - 1.0 / q - 1.0 / (q * q) + 1.0 / (q * q * q)
}

/// `(main term, error envelope)` for `kind` at height `x`.
pub fn main_term(gl2: &Gl2, x: u64, kind: &SetKind) -> Result<(f64, f64)> {
    let p = gl2.p() as f64;
    let xf = x as f64;
    let x3 = xf.powi(3);
    let x4 = xf.powi(4);
    let lp = p.ln();
    let ell = 1.0 - 2.0 / p + 1.0 / (p * p);
    Ok(match kind {
        SetKind::Nonsingular => (16.0 * gamma_p(gl2.p()) * x4, x3),
        SetKind::DiscZero => (16.0 * x4 / p, x3),
        SetKind::Class(c) => {
            let size = gl2.classes()[gl2.class_index(c)?].size as f64;
            (16.0 * size * gamma_p(gl2.p()) / gl2.order() as f64 * x4, x3)
        }
        SetKind::Elliptic => (8.0 * ell * x4, x3 * p.sqrt() * lp),
        SetKind::Primitive => {
            let q = p * p - 1.0;
            let phi = arith_functions(q as u64)?.totient as f64;
            (
                8.0 * phi / q * gamma_p(gl2.p()) * x4,
                x3 * p.sqrt() * lp + xf * xf * p * lp + p * p,
            )
        }
    })
}

/// Exact count over `[-x, x]^4` by the residue fast path, with main term.
pub fn count_with_main_term(gl2: &Gl2, x: u64, kind: &SetKind) -> Result<CountReport> {
    // validate the label before the sweep
    if let SetKind::Class(c) = kind {
        gl2.class_index(c)?;
    }
    let p = gl2.p();
    let iv = MatrixInterval::centered(x);
    let exact = residue_box_count(p, &iv, |e| {
        gl2.set_membership(&Mat2::from_raw(p, e), kind)
            .unwrap_or(false)
    });
    let (main, env) = main_term(gl2, x, kind)?;
    Ok(CountReport::new(
        p,
        x,
        kind.to_string(),
        exact,
        main,
        env,
        CountMethod::ResidueCount,
    ))
}

/// `sum_{d | p^2 - 1, ord | d} mu(d) / d`.
fn mobius_tail(p: u32, ord: u64) -> Result<f64> {
    let q = p as u64 * p as u64 - 1;
    Ok(arith_functions(q)?
        .divisors
        .iter()
        .filter(|&&d| d % ord == 0)
        .map(|&d| mobius(d) as f64 / d as f64)
        .sum())
}

/// Closed-form Fourier coefficient `c_rho` of the primitive indicator.
pub fn fourier_coeff(p: u32, irrep: &IrrepLabel) -> Result<f64> {
    let irrep = irrep.canonical(p)?;
    let n = (p - 1) as u64;
    let q = p as u64 * p as u64 - 1;
    Ok(match irrep {
        IrrepLabel::OneDim(k) => 0.5 * mobius_tail(p, n / gcd(k as u64, n))?,
        IrrepLabel::SteinbergTwist(k) => -0.5 * mobius_tail(p, n / gcd(k as u64, n))?,
        IrrepLabel::Principal(..) => 0.0,
        IrrepLabel::Cuspidal(k) => -mobius_tail(p, q / gcd(k as u64, q))?,
    })
}

/// `c_rho = (p^2 - 1)^{-1} sum_{primitive classes t} conj(chi_rho(t))`.
pub fn fourier_coeff_oracle(table: &CharacterTable, irrep: &IrrepLabel) -> Result<ComplexValue> {
    let ri = table.irrep_index(irrep)?;
    let g = table.group();
    let p = g.p() as f64;
    let s: ComplexValue = (0..g.num_classes())
        .filter(|&c| g.is_primitive_class(c))
        .map(|c| table.value(ri, c).conj())
        .sum();
    Ok(s / (p * p - 1.0))
}

/// `sum_{d | m} mu(d)/d sum_{i < d} e(i n / d)`, rounded; equals
/// `[gcd(n, m) = 1]`.
pub fn generator_indicator(m: u64, n: u64) -> Result<u8> {
    let f = arith_functions(m)?;
    let n = n % m;
    let s: ComplexValue = f
        .divisors
        .iter()
        .map(|&d| {
            let inner: ComplexValue = (0..d).map(|i| unit_root((i * n % d) as i64, d)).sum();
            mobius(d) as f64 / d as f64 * inner
        })
        .sum();
    Ok(s.re.round() as u8)
}

/// Family sums of `|c_rho|` with the divisor-count bound.
#[derive(Debug, Clone, Serialize)]
pub struct CoeffSums {
    pub p: u32,
    pub sum_onedim: f64,
    pub sum_steinberg: f64,
    pub sum_cuspidal: f64,
    pub bound: u64,
}

impl CoeffSums {
    pub fn holds(&self) -> bool {
        let b = self.bound as f64 + 1e-9;
        self.sum_onedim <= b && self.sum_steinberg <= b && self.sum_cuspidal <= b
    }
}

pub fn coeff_sum_report(p: u32) -> Result<CoeffSums> {
    let mut s = [0.0f64; 3];
    for r in crate::chars::irrep_labels(p) {
        let c = fourier_coeff(p, &r)?.abs();
        match r {
            IrrepLabel::OneDim(_) => s[0] += c,
            IrrepLabel::SteinbergTwist(_) => s[1] += c,
            IrrepLabel::Cuspidal(_) => s[2] += c,
            IrrepLabel::Principal(..) => {}
        }
    }
    Ok(CoeffSums {
        p,
        sum_onedim: s[0],
        sum_steinberg: s[1],
        sum_cuspidal: s[2],
        bound: arith_functions(p as u64 * p as u64 - 1)?.num_divisors,
    })
}

/// `|#primitive - sum_rho c_rho S(chi_rho, [-x,x]^4)|`, the box sums taken
/// from the per-class tally of the box.
pub fn fourier_expansion_residual(table: &CharacterTable, x: u64) -> Result<f64> {
    let g = table.group();
    let p = g.p();
    let iv = MatrixInterval::centered(x);
    let tally = residue_class_tally(g, &iv);
    let exact = count_with_main_term(g, x, &SetKind::Primitive)?.exact_count as f64;
    let mut total = Complex64::new(0.0, 0.0);
    for (ri, r) in table.irreps().iter().enumerate() {
        let c = fourier_coeff(p, r)?;
        if c == 0.0 {
            continue;
        }
        let s: ComplexValue = (0..g.num_classes())
            .map(|ci| tally[ci] as f64 * table.value(ri, ci))
            .sum();
        total += c * s;
    }
    Ok((total - exact).norm())
}

/// `|sum (chi_1 - chi_St) - (2 S(Omega_e) + S(nonss) + (1-p) S(central))|`
/// over `[-x, x]^4`.
pub fn class_type_identity_check(table: &CharacterTable, x: u64) -> Result<f64> {
    let g = table.group();
    let p = g.p();
    let iv = MatrixInterval::centered(x);
    let tally = residue_class_tally(g, &iv);
    let one = table.irrep_index(&IrrepLabel::TRIVIAL)?;
    let st = table.irrep_index(&IrrepLabel::STEINBERG)?;
    let lhs: ComplexValue = (0..g.num_classes())
        .map(|c| tally[c] as f64 * (table.value(one, c) - table.value(st, c)))
        .sum();
    let of_kind = |f: fn(&ClassLabel) -> bool| {
        residue_box_count(p, &iv, |e| {
            let k = g.class_key(e);
            k != SINGULAR && f(&g.classes()[k as usize].label)
        }) as i128
    };
    let ell = of_kind(|l| matches!(l, ClassLabel::Elliptic(..)));
    let nonss = of_kind(|l| matches!(l, ClassLabel::NonSemisimple(_)));
    let central = of_kind(|l| matches!(l, ClassLabel::Central(_)));
    let rhs = 2 * ell + nonss + (1 - p as i128) * central;
    Ok((lhs - rhs as f64).norm())
}

/// The terms of `2S = (2x+1)^4 - S' = 2 S(Omega_e) + S(Delta)`.
#[derive(Debug, Clone, Serialize)]
pub struct DiscriminantIdentity {
    pub box_size: i128,
    pub legendre_sum: i128,
    pub elliptic: i128,
    pub disc_zero: i128,
}

impl DiscriminantIdentity {
    /// `S = ((2x+1)^4 - S') / 2`.
    pub fn s(&self) -> f64 {
        (self.box_size - self.legendre_sum) as f64 / 2.0
    }

    pub fn holds(&self) -> bool {
        self.box_size - self.legendre_sum == 2 * self.elliptic + self.disc_zero
    }
}

pub fn discriminant_identity(gl2: &Gl2, x: u64) -> DiscriminantIdentity {
    let p = gl2.p();
    let f = gl2.field();
    let iv = MatrixInterval::centered(x);
    let pu = p as u64;
    let disc = |e: [u32; 4]| {
        let [a, b, c, d] = e.map(u64::from);
        let diff = (a + pu - d) % pu;
        ((diff * diff + 4 * b * c) % pu) as i64
    };
    let legendre_sum = residue_box_sum(p, &iv, |e| f.legendre(disc(e)) as i64);
    let elliptic = residue_box_count(p, &iv, |e| {
        gl2.set_membership(&Mat2::from_raw(p, e), &SetKind::Elliptic)
            .unwrap_or(false)
    }) as i128;
    let disc_zero = residue_box_count(p, &iv, |e| disc(e) == 0) as i128;
    DiscriminantIdentity {
        box_size: ((2 * x + 1) as i128).pow(4),
        legendre_sum,
        elliptic,
        disc_zero,
    }
}

/// `sum_{start <= n < start + length} (n / p)`.
pub fn legendre_interval_sum(field: &PrimeField, start: i64, length: u64) -> Result<ComplexValue> {
    if length == 0 {
        return Err(Error::ZeroArgument);
    }
    let s: i64 = (0..length as i64)
        .map(|i| field.legendre(start + i) as i64)
        .sum();
    Ok(Complex64::new(s as f64, 0.0))
}

/// `sqrt(p) log p`.
pub fn legendre_pv_bound(p: u32) -> f64 {
    (p as f64).sqrt() * (p as f64).ln()
}

/// Largest `|sum|` over all starts in `[0, p)` and lengths `1..=p`, using
/// prefix sums over two periods.
pub fn legendre_pv_scan(field: &PrimeField) -> i64 {
    let p = field.p() as i64;
    let mut prefix = vec![0i64; 2 * p as usize + 1];
    for n in 0..2 * p {
        prefix[n as usize + 1] = prefix[n as usize] + field.legendre(n) as i64;
    }
    let mut worst = 0;
    for s in 0..p {
        for len in 1..=p {
            let v = prefix[(s + len) as usize] - prefix[s as usize];
            worst = worst.max(v.abs());
        }
    }
    worst
}

fn check_theta(field: &PrimeField, theta: (u32, u32)) -> Result<()> {
    let p = field.p();
    if theta.0 >= p || theta.1 >= p {
        return Err(Error::InvalidLabel(format!("theta {theta:?} for p = {p}")));
    }
    if theta.1 == 0 {
        return Err(Error::ThetaInSubfield);
    }
    Ok(())
}

/// `#{0 <= m <= x : theta + m generates F_{p^2}^*}` by order testing,
/// `theta = t0 + tau' t1`.
pub fn ps_shifted_generator_count(
    field: &PrimeField,
    theta: (u32, u32),
    x: u64,
) -> Result<CountReport> {
    check_theta(field, theta)?;
    let p = field.p();
    let q = field.quad_unit_order();
    let exact = (0..=x)
        .filter(|&m| {
            let xm = ((theta.0 as u64 + m) % p as u64) as u32;
            field.quad_element_order(xm, theta.1) == Some(q)
        })
        .count() as u128;
    let phi = arith_functions(q)?.totient as f64;
    let main = phi / q as f64 * x as f64;
    Ok(CountReport::new(
        p,
        x,
        format!("shifted-generator:{},{}", theta.0, theta.1),
        exact,
        main,
        2.0 * legendre_pv_bound(p),
        CountMethod::Enumeration,
    ))
}

/// `max_{phi nontrivial} |sum_{0 <= m <= x} phi(theta + m)|`.
pub fn ps_char_sum_scan(field: &PrimeField, theta: (u32, u32), x: u64) -> Result<f64> {
    check_theta(field, theta)?;
    let p = field.p() as u64;
    let q = field.quad_unit_order();
    let logs: Vec<u64> = (0..=x)
        .map(|m| {
            let xm = ((theta.0 as u64 + m) % p) as u32;
            field.quad_dlog(xm, theta.1).expect("theta + m is a unit") as u64
        })
        .collect();
    Ok((1..q)
        .into_par_iter()
        .map(|k| {
            logs.iter()
                .map(|&l| unit_root((k * l % q) as i64, q))
                .sum::<ComplexValue>()
                .norm()
        })
        .reduce(|| 0.0, f64::max))
}

/// `max_{phi nontrivial, 0 <= y <= x} |sum_{0 <= m <= y} phi(theta + m)|`.
pub fn ps_char_sum_scan_prefixes(field: &PrimeField, theta: (u32, u32), x: u64) -> Result<f64> {
    check_theta(field, theta)?;
    let p = field.p() as u64;
    let q = field.quad_unit_order();
    let logs: Vec<u64> = (0..=x)
        .map(|m| {
            let xm = ((theta.0 as u64 + m) % p) as u32;
            field.quad_dlog(xm, theta.1).expect("theta + m is a unit") as u64
        })
        .collect();
    Ok((1..q)
        .into_par_iter()
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut best: f64 = 0.0;
            for &l in &logs {
                acc += unit_root((k * l % q) as i64, q);
                best = best.max(acc.norm());
            }
            best
        })
        .reduce(|| 0.0, f64::max))
}

/// `2 sqrt(p) log p`.
pub fn ps_bound(p: u32) -> f64 {
    2.0 * legendre_pv_bound(p)
}

/// Primitive count over `[-x, x]^4` by families `{B + nI}`: each family is
/// fixed by `(a12, a21, a11 - a22)`, and its members by `a22`.
pub fn partition_primitive_count(gl2: &Gl2, x: u64) -> Result<u128> {
    let p = gl2.p();
    if x >= p as u64 {
        return Err(Error::OutsideRegime { x, p: p as u64 });
    }
    let x = x as i64;
    let r = |v: i64| v.rem_euclid(p as i64) as u32;
    Ok((-2 * x..=2 * x)
        .into_par_iter()
        .map(|delta| {
            let lo = (-x).max(-x - delta);
            let hi = x.min(x - delta);
            let mut n = 0u128;
            for b in -x..=x {
                for c in -x..=x {
                    for a22 in lo..=hi {
                        let m = Mat2::from_raw(p, [r(a22 + delta), r(b), r(c), r(a22)]);
                        let k = gl2.class_key(m.entries());
                        if k != SINGULAR && gl2.is_primitive_class(k as usize) {
                            n += 1;
                        }
                    }
                }
            }
            n
        })
        .sum())
}
