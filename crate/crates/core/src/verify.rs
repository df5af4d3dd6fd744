//! One-prime verification suite: every closed form against its oracle,
//! scaled so that large primes skip the quadratic-in-|G| pieces.

use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{classical_gauss_sum, ComplexValue};
use crate::chars::{
    induced_class_function, projection_rank, unit_multiplicity, CharacterTable, InducedModel,
    Inducing, IrrepLabel, ModelKind, Subgroup,
};
use crate::counting::{
    class_type_identity_check, coeff_sum_report, count_with_main_term, discriminant_identity,
    fourier_coeff, fourier_coeff_oracle, fourier_expansion_residual, legendre_pv_bound,
    legendre_pv_scan, naive_box_count, partition_primitive_count, ps_bound, ps_char_sum_scan,
    ps_shifted_generator_count, residue_box_count,
};
use crate::error::Result;
use crate::fourier::{
    box_l1_bound, indicator_ft_l1, plancherel_box_sums, plancherel_weights, pv_scan, MatrixInterval,
};
use crate::gauss::{GaussTable, TraceProfile};
use crate::group::{Gl2, Mat2, SetKind};

/// Brute-force group sweeps run only up to this prime.
pub const BRUTE_MAX_PRIME: u32 = 13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// The statement the check certifies.
    pub anchor: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub p: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

type Outcome = std::result::Result<String, String>;

fn run(
    checks: &mut Vec<Check>,
    name: &'static str,
    anchor: &'static str,
    enabled: bool,
    f: impl FnOnce() -> Result<Outcome>,
) {
    let t0 = Instant::now();
    let (status, detail) = if !enabled {
        (Status::Skipped, "out of range for this prime".to_string())
    } else {
        match f() {
            Ok(Ok(d)) => (Status::Pass, d),
            Ok(Err(d)) => (Status::Fail, d),
            Err(e) => (Status::Fail, format!("error: {e}")),
        }
    };
    checks.push(Check {
        name,
        anchor,
        status,
        detail,
        elapsed_ms: t0.elapsed().as_millis(),
    });
}

fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// Runs every check that is affordable at `p`.
pub fn verify_prime(p: u64) -> Result<VerifyReport> {
    let gl2 = Gl2::new(p)?;
    let table = CharacterTable::new(gl2.clone());
    let gt = GaussTable::new(&table);
    let p = gl2.p();
    let pf = p as f64;
    let small = p <= BRUTE_MAX_PRIME;
    let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
    let mut checks = Vec::new();

    run(
        &mut checks,
        "singular-gauss-sums",
        "singular Gauss sum closed forms",
        small,
        || {
            let mut mats = vec![Mat2::nilpotent(p)];
            mats.extend((1..p).map(|a| Mat2::semisimple_singular(p, a)));
            let base = mats.clone();
            for m in base {
                for _ in 0..3 {
                    let z = random_invertible(&mut rng, p);
                    mats.push(m.conjugate_by(&z)?);
                }
            }
            let tol = 1e-6 * pf * pf;
            for a in &mats {
                let prof = TraceProfile::new(&gl2, a)?;
                for ri in 0..table.irreps().len() {
                    let (b, c) = (prof.total(&table, ri), gt.trace(ri, a));
                    if !close(b, c, tol) {
                        return Ok(Err(format!(
                            "{} at {a}: brute {b} closed {c}",
                            table.irreps()[ri]
                        )));
                    }
                }
            }
            let st = table.irrep_index(&IrrepLabel::STEINBERG)?;
            let v = gt.trace(st, &Mat2::nilpotent(p));
            let expect = pf * pf * (pf - 1.0);
            if !close(v, Complex64::new(expect, 0.0), 1e-6) {
                return Ok(Err(format!("Tr G(St, N) = {v}, expected {expect}")));
            }
            Ok(Ok(format!(
                "{} matrices x {} irreps",
                mats.len(),
                table.irreps().len()
            )))
        },
    );

    run(
        &mut checks,
        "cell-split",
        "Bruhat-cell partial traces",
        small,
        || {
            let one = table.irrep_index(&IrrepLabel::TRIVIAL)?;
            let st = table.irrep_index(&IrrepLabel::STEINBERG)?;
            let c = |re: f64| Complex64::new(re, 0.0);
            let q = pf;
            let n = Mat2::nilpotent(p);
            let pn = TraceProfile::new(&gl2, &n)?;
            let mut expect = vec![
                (one, pn.clone(), c(0.0), c(-q * (q - 1.0))),
                (st, pn.clone(), c((q + 1.0) * (q - 1.0).powi(2)), c(q - 1.0)),
            ];
            for a in 1..p {
                let pa = TraceProfile::new(&gl2, &Mat2::semisimple_singular(p, a))?;
                expect.push((
                    one,
                    pa.clone(),
                    c(-q * q * (q - 1.0)),
                    c(q * (q - 1.0).powi(2)),
                ));
                expect.push((st, pa.clone(), c(-(q - 1.0)), c(-(q - 1.0).powi(2))));
                for l in 1..p - 1 {
                    let ri = table.irrep_index(&IrrepLabel::Principal(0, l))?;
                    let g = classical_gauss_sum(gl2.field(), l as u64);
                    let chi = gl2.field().base_char(l as u64, a);
                    expect.push((ri, pa.clone(), q * (q - 1.0) * chi.conj() * g, c(0.0)));
                    expect.push((ri, pn.clone(), c(0.0), c(0.0)));
                }
            }
            for (ri, prof, g1, g2) in &expect {
                let (b1, b2) = prof.cells(&table, *ri);
                if !close(b1, *g1, 1e-6) || !close(b2, *g2, 1e-6) {
                    return Ok(Err(format!(
                        "{}: cells ({b1}, {b2}) expected ({g1}, {g2})",
                        table.irreps()[*ri]
                    )));
                }
            }
            Ok(Ok(format!("{} partial-trace pairs", expect.len())))
        },
    );

    run(
        &mut checks,
        "kondo-magnitude",
        "|g(rho)| = p^((4-k)/2)",
        true,
        || {
            for (ri, r) in table.irreps().iter().enumerate() {
                let k = unit_multiplicity(r) as i32;
                let expect = pf.powf((4 - k) as f64 / 2.0);
                let got = gt.g(ri).norm();
                if (got - expect).abs() > 1e-6 * expect {
                    return Ok(Err(format!("{r}: |g| = {got}, expected {expect}")));
                }
            }
            Ok(Ok(format!("{} irreps", table.irreps().len())))
        },
    );

    run(
        &mut checks,
        "character-table",
        "orthogonality and induction",
        small,
        || {
            let rows = table.row_orthogonality_deviation();
            let cols = table.column_orthogonality_deviation();
            if rows > 1e-8 || cols > 1e-8 {
                return Ok(Err(format!("row dev {rows:e}, column dev {cols:e}")));
            }
            let dims: u64 = table.dims().iter().map(|d| d * d).sum();
            if dims != gl2.order() {
                return Ok(Err(format!("sum d^2 = {dims}")));
            }
            let ind = induced_class_function(&gl2, Inducing::MuTrivial)?;
            for (ri, r) in table.irreps().iter().enumerate() {
                let m = table.inner(&ind, table.row(ri));
                let expect = match r {
                    IrrepLabel::OneDim(0) | IrrepLabel::SteinbergTwist(0) => 1.0,
                    IrrepLabel::Principal(0, _) => 1.0,
                    _ => 0.0,
                };
                if !close(m, Complex64::new(expect, 0.0), 1e-8) {
                    return Ok(Err(format!("<Ind_MU'(1), {r}> = {m}")));
                }
            }
            let st = InducedModel::new(gl2.clone(), ModelKind::Steinberg)?;
            let ranks = [
                (projection_rank(&st, Subgroup::MuPrime, p)?.rank, 1),
                (projection_rank(&st, Subgroup::PPrime, p)?.rank, 1),
            ];
            for l in 1..p - 1 {
                let m = InducedModel::principal_with_trivial(gl2.clone(), l)?;
                let r_mu = projection_rank(&m, Subgroup::MuPrime, p)?.rank;
                let r_p = projection_rank(&m, Subgroup::PPrime, p)?.rank;
                if r_mu != 1 || r_p != 0 {
                    return Ok(Err(format!("I(chi_{l},1): ranks MU' {r_mu}, P' {r_p}")));
                }
            }
            if ranks.iter().any(|(a, b)| a != b) {
                return Ok(Err(format!("Steinberg ranks {ranks:?}")));
            }
            Ok(Ok(format!("row dev {rows:.1e}, column dev {cols:.1e}")))
        },
    );

    run(
        &mut checks,
        "pv-bound",
        "|S| <= 16 d p^2 (log p)^4",
        p >= 11,
        || {
            let xs: Vec<u64> = if small {
                (1..p as u64).collect()
            } else {
                let q = p as u64;
                vec![1, q / 4, q / 2, q - 1]
            };
            let report = pv_scan(&gt, &xs, None, 1.0);
            let full =
                plancherel_box_sums(&gt, &plancherel_weights(&gl2, &MatrixInterval::full(p)));
            let worst_full = table
                .irreps()
                .iter()
                .zip(&full)
                .filter(|(r, _)| !r.is_trivial())
                .map(|(_, s)| s.norm())
                .fold(0.0, f64::max);
            if !report.holds {
                return Ok(Err(format!("max ratio {:.4} > 16", report.max_ratio)));
            }
            if worst_full > 1e-5 {
                return Ok(Err(format!("full-box sum {worst_full:e}")));
            }
            Ok(Ok(format!(
                "max ratio {:.4} over {} x-values",
                report.max_ratio,
                xs.len()
            )))
        },
    );

    run(
        &mut checks,
        "box-l1",
        "sum_B |delta-hat| <= ((c+3)/2)^4 (log p)^4",
        p >= 11,
        || {
            for c in [1u64, 2] {
                for x in [1, p as u64 / 3, (c * p as u64 - 1) / 2] {
                    let iv = MatrixInterval::centered(x);
                    let l1 = indicator_ft_l1(gl2.field(), &iv);
                    let bound = box_l1_bound(p, c as f64);
                    if l1 > bound {
                        return Ok(Err(format!("c={c} x={x}: {l1} > {bound}")));
                    }
                }
            }
            Ok(Ok("c in {1, 2}".into()))
        },
    );

    run(
        &mut checks,
        "fourier-coefficients",
        "closed forms vs class-sum oracle",
        true,
        || {
            for r in table.irreps() {
                let c = fourier_coeff(p, r)?;
                let o = fourier_coeff_oracle(&table, r)?;
                if (c - o.re).abs() > 1e-9 || o.im.abs() > 1e-9 {
                    return Ok(Err(format!("{r}: closed {c}, oracle {o}")));
                }
            }
            let s = coeff_sum_report(p)?;
            if !s.holds() {
                return Ok(Err(format!("family sums {s:?}")));
            }
            Ok(Ok(format!(
                "family sums {:.4}, {:.4}, {:.4} <= {}",
                s.sum_onedim, s.sum_steinberg, s.sum_cuspidal, s.bound
            )))
        },
    );

    run(
        &mut checks,
        "exact-counts",
        "residue counts, expansions and identities",
        true,
        || {
            let xmax = if small { 15 } else { 3 };
            for x in 1..=xmax {
                let iv = MatrixInterval::centered(x);
                let pred = |e: [u32; 4]| {
                    gl2.set_membership(&Mat2::from_raw(p, e), &SetKind::Primitive)
                        .unwrap_or(false)
                };
                let fast = residue_box_count(p, &iv, pred);
                let naive = naive_box_count(p, x, pred);
                if fast != naive {
                    return Ok(Err(format!("x={x}: residue {fast} vs naive {naive}")));
                }
                if small {
                    let r = fourier_expansion_residual(&table, x)?;
                    if r > 1e-4 {
                        return Ok(Err(format!("x={x}: expansion residual {r}")));
                    }
                    let r = class_type_identity_check(&table, x)?;
                    if r != 0.0 {
                        return Ok(Err(format!("x={x}: class-type residual {r}")));
                    }
                }
                if !discriminant_identity(&gl2, x).holds() {
                    return Ok(Err(format!("x={x}: discriminant identity")));
                }
                if x < p as u64 && x <= 8 && partition_primitive_count(&gl2, x)? != fast {
                    return Ok(Err(format!("x={x}: partition count")));
                }
            }
            Ok(Ok(format!("x = 1..={xmax}")))
        },
    );

    run(
        &mut checks,
        "density",
        "elliptic and primitive densities at x = 20p",
        p >= 11,
        || {
            let x = 20 * p as u64;
            let ell = count_with_main_term(&gl2, x, &SetKind::Elliptic)?;
            let prim = count_with_main_term(&gl2, x, &SetKind::Primitive)?;
            let x4 = 16.0 * (x as f64).powi(4);
            let (de, dp) = (ell.main_term / x4, prim.main_term / x4);
            let (re, rp) = (
                (ell.density() - de).abs() / de,
                (prim.density() - dp).abs() / dp,
            );
            if re > 0.02 || rp > 0.05 {
                return Ok(Err(format!("relative density errors {re:.4}, {rp:.4}")));
            }
            Ok(Ok(format!("relative density errors {re:.4}, {rp:.4}")))
        },
    );

    run(
        &mut checks,
        "legendre-pv",
        "|sum (n/p)| <= sqrt(p) log p",
        true,
        || {
            let worst = legendre_pv_scan(gl2.field());
            let bound = legendre_pv_bound(p);
            if worst as f64 > bound {
                return Ok(Err(format!("{worst} > {bound}")));
            }
            Ok(Ok(format!("max {worst} <= {bound:.3}")))
        },
    );

    run(
        &mut checks,
        "shifted-generators",
        "|sum phi(theta+m)| <= 2 sqrt(p) log p",
        p <= 31,
        || {
            let f = gl2.field();
            let bound = ps_bound(p);
            let mut worst: f64 = 0.0;
            for t0 in 0..p {
                for t1 in 1..p {
                    worst = worst.max(ps_char_sum_scan(f, (t0, t1), p as u64)?);
                    let r = ps_shifted_generator_count(f, (t0, t1), p as u64 - 1)?;
                    let oracle = (0..p)
                        .filter(|&m| {
                            let z = f.quad_element((t0 + m) as i64, t1 as i64);
                            z.pow(f.quad_unit_order()) == f.quad_element(1, 0)
                                && crate::arith::factorize(f.quad_unit_order()).iter().all(
                                    |&(q, _)| {
                                        z.pow(f.quad_unit_order() / q) != f.quad_element(1, 0)
                                    },
                                )
                        })
                        .count() as u128;
                    if r.exact_count != oracle {
                        return Ok(Err(format!(
                            "theta=({t0},{t1}): {} vs {oracle}",
                            r.exact_count
                        )));
                    }
                }
            }
            if worst > bound {
                return Ok(Err(format!("max {worst} > {bound}")));
            }
            Ok(Ok(format!("max {worst:.3} <= {bound:.3}")))
        },
    );

    Ok(VerifyReport { p, checks })
}

fn random_invertible(rng: &mut impl Rng, p: u32) -> Mat2 {
    loop {
        let m = Mat2::new(p, [0; 4].map(|_| rng.gen_range(0..p as i64)));
        if m.is_invertible() {
            return m;
        }
    }
}
