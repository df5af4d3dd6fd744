//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use gl2pv::arith::classical_gauss_sum;
use gl2pv::chars::{
    induced_class_function, projection_rank, unit_multiplicity, InducedModel, Inducing, ModelKind,
    Subgroup,
};
use gl2pv::counting::{
    class_type_identity_check, coeff_sum_report, count_with_main_term, discriminant_identity,
    fourier_coeff, fourier_coeff_oracle, fourier_expansion_residual, naive_box_count,
    partition_primitive_count, ps_bound, ps_char_sum_scan_prefixes, ps_shifted_generator_count,
    residue_box_count,
};
use gl2pv::fourier::{plancherel_box_sums, plancherel_weights, pv_scan, MatrixInterval};
use gl2pv::gauss::{GaussTable, TraceProfile};
use gl2pv::{CharacterTable, ComplexValue, Gl2, IrrepLabel, Mat2, SetKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn c(re: f64) -> ComplexValue {
    Complex64::new(re, 0.0)
}

fn close(a: ComplexValue, b: ComplexValue, tol: f64) -> bool {
    (a - b).norm() <= tol
}

fn random_conjugator(rng: &mut ChaCha8Rng, p: u32) -> Mat2 {
    loop {
        let m = Mat2::new(p, [0; 4].map(|_| rng.gen_range(0..p as i64)));
        if m.is_invertible() {
            return m;
        }
    }
}

/// Nonzero entries of the singular table, written out independently.
fn tabulated_trace(p: u32, gl2: &Gl2, r: &IrrepLabel, a: Option<u32>) -> ComplexValue {
    let q = p as f64;
    match (r, a) {
        (IrrepLabel::OneDim(0), Some(_)) | (IrrepLabel::SteinbergTwist(0), Some(_)) => {
            c(-q * (q - 1.0))
        }
        (IrrepLabel::Principal(0, l), Some(a)) => {
            let chi = gl2.field().base_char(*l as u64, a);
            q * (q - 1.0) * chi.conj() * classical_gauss_sum(gl2.field(), *l as u64)
        }
        (IrrepLabel::OneDim(0), None) => c(-q * (q - 1.0)),
        (IrrepLabel::SteinbergTwist(0), None) => c(q * q * (q - 1.0)),
        _ => c(0.0),
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut st_n = Vec::new();
    for p in [3u32, 5, 7, 11] {
        let table = CharacterTable::new(Gl2::new(p as u64).map_err(|e| e.to_string())?);
        let gl2 = table.group().clone();
        let gt = GaussTable::new(&table);
        let tol = 1e-6 * (p * p) as f64;
        let mut base: Vec<(Mat2, Option<u32>)> = (1..p)
            .map(|a| (Mat2::semisimple_singular(p, a), Some(a)))
            .collect();
        base.push((Mat2::nilpotent(p), None));
        for (a0, tag) in base {
            let mut mats = vec![a0];
            for _ in 0..5 {
                let z = random_conjugator(&mut rng, p);
                mats.push(a0.conjugate_by(&z).map_err(|e| e.to_string())?);
            }
            for a in mats {
                let prof = TraceProfile::new(&gl2, &a).map_err(|e| e.to_string())?;
                for (ri, r) in table.irreps().iter().enumerate() {
                    let brute = prof.total(&table, ri);
                    let closed = gt.trace(ri, &a);
                    let shown = tabulated_trace(p, &gl2, r, tag);
                    if !close(brute, closed, tol) {
                        return Err(format!("p={p} {r} A={a}: brute {brute} closed {closed}"));
                    }
                    if !close(brute, shown, tol) {
                        return Err(format!("p={p} {r} A={a}: brute {brute} table {shown}"));
                    }
                }
            }
        }
        let st = table
            .irrep_index(&IrrepLabel::STEINBERG)
            .map_err(|e| e.to_string())?;
        st_n.push(gt.trace(st, &Mat2::nilpotent(p)).re.round() as i64);
    }
    if st_n != [18, 100, 294, 1210] {
        return Err(format!("Tr G(St, N) = {st_n:?}"));
    }
    Ok(format!(
        "Tr G(St,N) = {st_n:?}; Tr G(I_chi,1, N) = 0 by brute force (quoted p(p-1)G(chi) corrected, see README)"
    ))
}

fn criterion_2() -> Outcome {
    let mut n = 0;
    for p in [3u32, 5, 7] {
        let table = CharacterTable::new(Gl2::new(p as u64).map_err(|e| e.to_string())?);
        let gl2 = table.group().clone();
        let q = p as f64;
        let one = table
            .irrep_index(&IrrepLabel::TRIVIAL)
            .map_err(|e| e.to_string())?;
        let st = table
            .irrep_index(&IrrepLabel::STEINBERG)
            .map_err(|e| e.to_string())?;
        let pn = TraceProfile::new(&gl2, &Mat2::nilpotent(p)).map_err(|e| e.to_string())?;
        let mut cases = vec![
            ("1_G", "N", one, &pn, c(0.0), c(-q * (q - 1.0))),
            (
                "St",
                "N",
                st,
                &pn,
                c((q + 1.0) * (q - 1.0).powi(2)),
                c(q - 1.0),
            ),
        ];
        let profiles: Vec<_> = (1..p)
            .map(|a| TraceProfile::new(&gl2, &Mat2::semisimple_singular(p, a)).unwrap())
            .collect();
        let mut chi_cases = Vec::new();
        for (i, pa) in profiles.iter().enumerate() {
            let a = i as u32 + 1;
            cases.push((
                "1_G",
                "A_a",
                one,
                pa,
                c(-q * q * (q - 1.0)),
                c(q * (q - 1.0).powi(2)),
            ));
            cases.push(("St", "A_a", st, pa, c(-(q - 1.0)), c(-(q - 1.0).powi(2))));
            for l in 1..p - 1 {
                let ri = table.irrep_index(&IrrepLabel::Principal(0, l)).unwrap();
                let g = classical_gauss_sum(gl2.field(), l as u64);
                let chi = gl2.field().base_char(l as u64, a);
                chi_cases.push((ri, pa, q * (q - 1.0) * chi.conj() * g, c(0.0)));
                if a == 1 {
                    // The quoted G2 at N is p(p-1)G(chi); brute force gives 0.
                    let (b1, b2) = pn.cells(&table, ri);
                    let shown = q * (q - 1.0) * g;
                    if !close(b1, c(0.0), 1e-6) || !close(b2, c(0.0), 1e-6) {
                        return Err(format!("p={p} I(chi_{l},1) at N: cells ({b1}, {b2})"));
                    }
                    if close(b2, shown, 1e-6) {
                        return Err("quoted G2(I_chi,1, N) unexpectedly reproduced".into());
                    }
                }
            }
        }
        for (r, at, ri, prof, g1, g2) in &cases {
            let (b1, b2) = prof.cells(&table, *ri);
            if !close(b1, *g1, 1e-6) || !close(b2, *g2, 1e-6) {
                return Err(format!("p={p} {r} at {at}: ({b1}, {b2}) vs ({g1}, {g2})"));
            }
        }
        for (ri, prof, g1, g2) in &chi_cases {
            let (b1, b2) = prof.cells(&table, *ri);
            if !close(b1, *g1, 1e-6) || !close(b2, *g2, 1e-6) {
                return Err(format!(
                    "p={p} {} at A_a: ({b1}, {b2})",
                    table.irreps()[*ri]
                ));
            }
        }
        n += cases.len() + chi_cases.len();
    }
    Ok(format!(
        "{n} cell pairs match; G2(I_chi,1, N) = 0 (quoted p(p-1)G(chi) corrected, see README)"
    ))
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for p in [3u32, 5, 7, 11] {
        let table = CharacterTable::new(Gl2::new(p as u64).map_err(|e| e.to_string())?);
        let gt = GaussTable::new(&table);
        for (ri, r) in table.irreps().iter().enumerate() {
            let k = unit_multiplicity(r) as f64;
            let expect = (p as f64).powf((4.0 - k) / 2.0);
            let got = gt.g(ri).norm();
            if (got - expect).abs() > 1e-6 * expect {
                return Err(format!("p={p} {r}: |g| = {got}, expected {expect}"));
            }
            count += 1;
        }
    }
    Ok(format!("{count} irreps over p <= 11"))
}

fn criterion_4() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [3u32, 5, 7, 11, 13] {
        let gl2 = Gl2::new(p as u64).map_err(|e| e.to_string())?;
        let table = CharacterTable::new(gl2.clone());
        let dev = table
            .row_orthogonality_deviation()
            .max(table.column_orthogonality_deviation());
        worst = worst.max(dev);
        if dev > 1e-8 {
            return Err(format!("p={p}: orthogonality deviation {dev:e}"));
        }
        let sum: u64 = table.dims().iter().map(|d| d * d).sum();
        if sum != gl2.order() {
            return Err(format!("p={p}: sum d^2 = {sum}"));
        }
        let ind = induced_class_function(&gl2, Inducing::MuTrivial).map_err(|e| e.to_string())?;
        for (ri, r) in table.irreps().iter().enumerate() {
            let m = table.inner(&ind, table.row(ri));
            let expect = match r {
                IrrepLabel::OneDim(0)
                | IrrepLabel::SteinbergTwist(0)
                | IrrepLabel::Principal(0, _) => 1.0,
                _ => 0.0,
            };
            if !close(m, c(expect), 1e-8) {
                return Err(format!("p={p}: <Ind(1), {r}> = {m}"));
            }
        }
        let err = |e: gl2pv::Error| e.to_string();
        let st = InducedModel::new(gl2.clone(), ModelKind::Steinberg).map_err(err)?;
        let st_ranks = (
            projection_rank(&st, Subgroup::MuPrime, p)
                .map_err(err)?
                .rank,
            projection_rank(&st, Subgroup::PPrime, p).map_err(err)?.rank,
        );
        if st_ranks != (1, 1) {
            return Err(format!("p={p}: St ranks {st_ranks:?}"));
        }
        for l in 1..p - 1 {
            let m = InducedModel::principal_with_trivial(gl2.clone(), l).map_err(err)?;
            let ranks = (
                projection_rank(&m, Subgroup::MuPrime, p).map_err(err)?.rank,
                projection_rank(&m, Subgroup::PPrime, p).map_err(err)?.rank,
            );
            if ranks != (1, 0) {
                return Err(format!("p={p}: I(chi_{l},1) ranks {ranks:?}"));
            }
        }
    }
    Ok(format!("max orthogonality deviation {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in [11u32, 13] {
        let table = CharacterTable::new(Gl2::new(p as u64).map_err(|e| e.to_string())?);
        let gt = GaussTable::new(&table);
        let xs: Vec<u64> = (1..p as u64).collect();
        let rep = pv_scan(&gt, &xs, None, 1.0);
        if !rep.asserted || !rep.holds || rep.constant != 16.0 {
            return Err(format!(
                "p={p}: max ratio {} (constant {})",
                rep.max_ratio, rep.constant
            ));
        }
        worst = worst.max(rep.max_ratio);
        let w = plancherel_weights(table.group(), &MatrixInterval::full(p));
        let sums = plancherel_box_sums(&gt, &w);
        for (r, s) in table.irreps().iter().zip(&sums) {
            if !r.is_trivial() && s.norm() > 1e-5 {
                return Err(format!("p={p} {r}: full-box sum {s}"));
            }
        }
    }
    Ok(format!("max ratio {worst:.4} <= 16; full-box sums vanish"))
}

fn criterion_6() -> Outcome {
    for p in [3u32, 5, 7, 11, 13] {
        let table = CharacterTable::new(Gl2::new(p as u64).map_err(|e| e.to_string())?);
        for r in table.irreps() {
            let closed = fourier_coeff(p, r).map_err(|e| e.to_string())?;
            let oracle = fourier_coeff_oracle(&table, r).map_err(|e| e.to_string())?;
            if !close(c(closed), oracle, 1e-9) {
                return Err(format!("p={p} {r}: closed {closed}, oracle {oracle}"));
            }
            match r {
                IrrepLabel::Principal(..) if closed != 0.0 => {
                    return Err(format!("p={p} {r}: nonzero principal coefficient"));
                }
                IrrepLabel::OneDim(k) => {
                    let st = fourier_coeff(p, &IrrepLabel::SteinbergTwist(*k)).unwrap();
                    if (closed + st).abs() > 1e-12 {
                        return Err(format!("p={p} k={k}: c_U = {closed}, c_St = {st}"));
                    }
                }
                _ => {}
            }
        }
        let sums = coeff_sum_report(p).map_err(|e| e.to_string())?;
        if !sums.holds() {
            return Err(format!("p={p}: family sums {sums:?}"));
        }
    }
    Ok("closed = oracle, principal 0, c_U = -c_St, family sums <= tau(p^2-1)".into())
}

fn criterion_7() -> Outcome {
    let kinds = [SetKind::Nonsingular, SetKind::Elliptic, SetKind::Primitive];
    let mut cells = 0;
    for p in [3u32, 5, 7, 11, 13] {
        let gl2 = Gl2::new(p as u64).map_err(|e| e.to_string())?;
        let table = CharacterTable::new(gl2.clone());
        for x in 1..=15u64 {
            let iv = MatrixInterval::centered(x);
            for kind in &kinds {
                let pred = |e: [u32; 4]| {
                    gl2.set_membership(&Mat2::new(p, e.map(i64::from)), kind)
                        .unwrap()
                };
                let fast = residue_box_count(p, &iv, pred);
                let naive = naive_box_count(p, x, pred);
                if fast != naive {
                    return Err(format!("p={p} x={x} {kind}: residue {fast}, naive {naive}"));
                }
                if *kind == SetKind::Primitive && x < p as u64 {
                    let part = partition_primitive_count(&gl2, x).map_err(|e| e.to_string())?;
                    if part != naive {
                        return Err(format!("p={p} x={x}: partition {part}, direct {naive}"));
                    }
                }
            }
            let r = fourier_expansion_residual(&table, x).map_err(|e| e.to_string())?;
            if r > 1e-4 {
                return Err(format!("p={p} x={x}: expansion residual {r}"));
            }
            let r = class_type_identity_check(&table, x).map_err(|e| e.to_string())?;
            if r != 0.0 {
                return Err(format!("p={p} x={x}: class-type residual {r}"));
            }
            let d = discriminant_identity(&gl2, x);
            if !d.holds() || d.s() != (d.elliptic as f64 + d.disc_zero as f64 / 2.0) {
                return Err(format!("p={p} x={x}: discriminant identity {d:?}"));
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} (p, x) cells"))
}

fn criterion_8() -> Outcome {
    let gl2 = Gl2::new(3).map_err(|e| e.to_string())?;
    let want = [
        (SetKind::Nonsingular, 48u128),
        (SetKind::Elliptic, 18),
        (SetKind::Primitive, 12),
        (SetKind::DiscZero, 27),
    ];
    let mut got = Vec::new();
    for (kind, n) in want {
        let r = count_with_main_term(&gl2, 1, &kind).map_err(|e| e.to_string())?;
        if r.exact_count != n {
            return Err(format!("{kind}: {} vs {n}", r.exact_count));
        }
        got.push(r.exact_count);
    }
    Ok(format!("{got:?}"))
}

fn criterion_9() -> Outcome {
    let mut out = Vec::new();
    for p in [11u32, 13] {
        let gl2 = Gl2::new(p as u64).map_err(|e| e.to_string())?;
        let x = 20 * p as u64;
        let q = p as f64;
        let ell = count_with_main_term(&gl2, x, &SetKind::Elliptic).map_err(|e| e.to_string())?;
        let target = 8.0 * (1.0 - 2.0 / q + 1.0 / (q * q)) / 16.0;
        let re = (ell.density() - target).abs() / target;
        let prim = count_with_main_term(&gl2, x, &SetKind::Primitive).map_err(|e| e.to_string())?;
        let main_density = prim.main_term / (16.0 * (x as f64).powi(4));
        let rp = (prim.density() - main_density).abs() / main_density;
        if re > 0.02 || rp > 0.05 {
            return Err(format!("p={p}: elliptic {re:.4}, primitive {rp:.4}"));
        }
        out.push(format!("p={p}: elliptic {re:.4}, primitive {rp:.4}"));
        let quoted = 8.0 * (1.0 - 2.0 / q + 1.0 / (q * q)) * prim.main_term
            / (8.0 * gl2pv::counting::gamma_p(p));
        if p == 13 {
            out.push(format!(
                "primitive main term 8 phi/(p^2-1) gamma_p x^4 (quoted (1-2/p+1/p^2) form is off by p/(p+1), {:.4} here; see README)",
                (prim.density() - quoted / (16.0 * (x as f64).powi(4))).abs() * 16.0 * (x as f64).powi(4) / quoted
            ));
        }
    }
    Ok(out.join("; "))
}

/// `theta = t0 + t1 sqrt(tau)`, `tau` the least non-residue; order by
/// repeated multiplication.
fn quad_order(p: u64, tau: u64, t: (u64, u64)) -> u64 {
    let mul = |a: (u64, u64), b: (u64, u64)| {
        (
            (a.0 * b.0 + tau * a.1 % p * b.1) % p,
            (a.0 * b.1 + a.1 * b.0) % p,
        )
    };
    let mut z = t;
    let mut n = 1;
    while z != (1, 0) {
        z = mul(z, t);
        n += 1;
    }
    n
}

fn criterion_10() -> Outcome {
    let mut worst_ratio: f64 = 0.0;
    for p in [7u32, 11, 31] {
        let gl2 = Gl2::new(p as u64).map_err(|e| e.to_string())?;
        let f = gl2.field();
        let pu = p as u64;
        let tau = (2..pu).find(|&t| (1..pu).all(|s| s * s % pu != t)).unwrap();
        if tau != f.tau() as u64 {
            return Err(format!("p={p}: tau mismatch"));
        }
        let bound = ps_bound(p);
        for t0 in 0..p {
            for t1 in 1..p {
                let m = ps_char_sum_scan_prefixes(f, (t0, t1), pu).map_err(|e| e.to_string())?;
                if m > bound {
                    return Err(format!("p={p} theta=({t0},{t1}): {m} > {bound}"));
                }
                worst_ratio = worst_ratio.max(m / bound);
                let r = ps_shifted_generator_count(f, (t0, t1), pu).map_err(|e| e.to_string())?;
                let oracle = (0..=pu)
                    .filter(|&m| {
                        quad_order(pu, tau, ((t0 as u64 + m) % pu, t1 as u64)) == pu * pu - 1
                    })
                    .count() as u128;
                if r.exact_count != oracle {
                    return Err(format!(
                        "p={p} theta=({t0},{t1}): {} vs {oracle}",
                        r.exact_count
                    ));
                }
            }
        }
    }
    Ok(format!("max |sum| / (2 sqrt(p) log p) = {worst_ratio:.4}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("singular Gauss sum table", criterion_1),
        ("cell-split values", criterion_2),
        ("Kondo magnitude", criterion_3),
        ("character-table certification", criterion_4),
        ("PV bound", criterion_5),
        ("Fourier coefficients", criterion_6),
        ("exact count cross-checks", criterion_7),
        ("spot counts p=3, x=1", criterion_8),
        ("density convergence", criterion_9),
        ("shifted generators", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let res = f();
        let secs = t0.elapsed().as_secs_f64();
        match res {
            Ok(d) => println!("criterion {:>2} PASS  {name} [{secs:.1}s]: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.1}s]: {d}", i + 1)
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
