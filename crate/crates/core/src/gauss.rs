//! Traces of matrix Gauss sums `Tr G(rho, A) = sum_X chi_rho(X) e_p(Tr(AX))`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::arith::{classical_gauss_sum, ComplexValue};
use crate::chars::{CharacterTable, IrrepLabel};
use crate::error::{Error, Result};
use crate::group::{Gl2, Mat2, SINGULAR};

/// Conjugacy type of an arbitrary residue matrix, as far as Gauss traces
/// care.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatKey {
    Zero,
    /// Rank one with nonzero trace `a`, conjugate to `A_a = diag(a, 0)`.
    Semisimple(u32),
    /// Rank one, trace zero, conjugate to `N`.
    Nilpotent,
    /// Invertible, in the class with this index.
    Invertible(usize),
}

impl MatKey {
    pub fn of(g: &Gl2, m: &Mat2) -> Self {
        match g.class_key(m.entries()) {
            SINGULAR if m.is_zero() => MatKey::Zero,
            SINGULAR => match m.trace() {
                0 => MatKey::Nilpotent,
                t => MatKey::Semisimple(t),
            },
            k => MatKey::Invertible(k as usize),
        }
    }

    /// Dense index in `0..p + 1 + #classes`: zero, `A_1..A_{p-1}`, `N`,
    /// then the classes.
    pub fn index(&self, p: u32) -> usize {
        match *self {
            MatKey::Zero => 0,
            MatKey::Semisimple(a) => a as usize,
            MatKey::Nilpotent => p as usize,
            MatKey::Invertible(c) => p as usize + 1 + c,
        }
    }

    pub fn count(p: u32) -> usize {
        (p as usize + 1) + (p as usize * p as usize - 1)
    }
}

/// Counts `#{X in G : X in class C, Tr(AX) = t}` for one `A`, split by
/// Bruhat cell (`a11 != 0` vs `a11 = 0`).
#[derive(Debug, Clone)]
pub struct TraceProfile {
    p: u32,
    /// `[cell][class * p + t]`
    counts: [Vec<u32>; 2],
}

impl TraceProfile {
    pub fn new(g: &Gl2, a: &Mat2) -> Result<Self> {
        let p = g.p();
        if a.p() != p {
            return Err(Error::ModulusMismatch(p as u64, a.p() as u64));
        }
        let nc = g.num_classes();
        let [a11, a12, a21, a22] = a.entries().map(u64::from);
        let pu = p as u64;
        let elems = g.elements()?;
        let chunk = (elems.len() / rayon::current_num_threads().max(1)).max(4096);
        let zero = || [vec![0u32; nc * p as usize], vec![0u32; nc * p as usize]];
        let counts = elems
            .par_chunks(chunk)
            .map(|part| {
                let mut c = zero();
                for &(idx, class) in part {
                    let x = Mat2::from_index(p, idx).entries().map(u64::from);
                    // Tr(AX) = a11 x11 + a12 x21 + a21 x12 + a22 x22
                    let t = (a11 * x[0] + a12 * x[2] + a21 * x[1] + a22 * x[3]) % pu;
                    let cell = (x[0] == 0) as usize;
                    c[cell][class as usize * p as usize + t as usize] += 1;
                }
                c
            })
            .reduce(zero, |mut l, r| {
                for cell in 0..2 {
                    l[cell].iter_mut().zip(&r[cell]).for_each(|(x, y)| *x += y);
                }
                l
            });
        Ok(Self { p, counts })
    }

    fn cell_value(&self, table: &CharacterTable, ri: usize, cell: usize) -> ComplexValue {
        let p = self.p as usize;
        let f = table.group().field();
        let row = table.row(ri);
        let mut total = Complex64::new(0.0, 0.0);
        for (ci, chi) in row.iter().enumerate() {
            let counts = &self.counts[cell][ci * p..(ci + 1) * p];
            let s: ComplexValue = counts
                .iter()
                .enumerate()
                .filter(|(_, &n)| n != 0)
                .map(|(t, &n)| n as f64 * f.ep(t as u32))
                .sum();
            total += chi * s;
        }
        total
    }

    /// `(G1, G2)` for the irrep with table index `ri`.
    pub fn cells(&self, table: &CharacterTable, ri: usize) -> (ComplexValue, ComplexValue) {
        (self.cell_value(table, ri, 0), self.cell_value(table, ri, 1))
    }

    pub fn total(&self, table: &CharacterTable, ri: usize) -> ComplexValue {
        let (a, b) = self.cells(table, ri);
        a + b
    }
}

/// `Tr G(rho, A)` by summing over every invertible `X`.
pub fn gauss_trace_bruteforce(
    table: &CharacterTable,
    irrep: &IrrepLabel,
    a: &Mat2,
) -> Result<ComplexValue> {
    let ri = table.irrep_index(irrep)?;
    Ok(TraceProfile::new(table.group(), a)?.total(table, ri))
}

/// `(G1, G2)`: the brute-force sum restricted to the cells `PU'` and `wP'`.
pub fn gauss_trace_cells(
    table: &CharacterTable,
    irrep: &IrrepLabel,
    a: &Mat2,
) -> Result<(ComplexValue, ComplexValue)> {
    let ri = table.irrep_index(irrep)?;
    Ok(TraceProfile::new(table.group(), a)?.cells(table, ri))
}

/// `Tr G(rho, I) = sum_C |C| chi(C) e_p(Tr C)`.
fn trace_at_identity(table: &CharacterTable, ri: usize) -> ComplexValue {
    let g = table.group();
    let f = g.field();
    g.classes()
        .iter()
        .enumerate()
        .map(|(ci, c)| c.size as f64 * table.value(ri, ci) * f.ep(c.representative.trace()))
        .sum()
}

/// `g(rho) = Tr G(rho, I) / d(rho)`.
pub fn g_scalar(table: &CharacterTable, irrep: &IrrepLabel) -> Result<ComplexValue> {
    let ri = table.irrep_index(irrep)?;
    Ok(trace_at_identity(table, ri) / table.dims()[ri] as f64)
}

/// Closed-form Gauss traces with `g(rho)` and the classical Gauss sums
/// precomputed for every irrep.
#[derive(Debug)]
pub struct GaussTable<'a> {
    table: &'a CharacterTable,
    g: Vec<ComplexValue>,
    classical: Vec<ComplexValue>,
    inverse_class: Vec<usize>,
}

impl<'a> GaussTable<'a> {
    pub fn new(table: &'a CharacterTable) -> Self {
        let n = table.irreps().len();
        let g: Vec<ComplexValue> = (0..n)
            .into_par_iter()
            .map(|ri| trace_at_identity(table, ri) / table.dims()[ri] as f64)
            .collect();
        let gl2 = table.group();
        let f = gl2.field();
        let classical = (0..f.unit_order())
            .map(|k| classical_gauss_sum(f, k))
            .collect();
        let inverse_class = gl2
            .classes()
            .iter()
            .map(|c| {
                let inv = c
                    .representative
                    .inverse()
                    .expect("class representatives are invertible");
                gl2.class_key(inv.entries()) as usize
            })
            .collect();
        Self {
            table,
            g,
            classical,
            inverse_class,
        }
    }

    pub fn table(&self) -> &CharacterTable {
        self.table
    }

    pub fn g(&self, ri: usize) -> ComplexValue {
        self.g[ri]
    }

    /// `Tr G(rho, A)` for `A` of the given type.
    pub fn trace_by_key(&self, ri: usize, key: MatKey) -> ComplexValue {
        let t = self.table;
        let p = t.p() as f64;
        let irrep = t.irreps()[ri];
        let zero = Complex64::new(0.0, 0.0);
        let f = t.group().field();
        match key {
            MatKey::Zero => {
                if irrep.is_trivial() {
                    Complex64::new(t.group().order() as f64, 0.0)
                } else {
                    zero
                }
            }
            MatKey::Semisimple(a) => match irrep {
                IrrepLabel::OneDim(0) => Complex64::new(-p * (p - 1.0), 0.0),
                IrrepLabel::SteinbergTwist(0) => Complex64::new(-p * (p - 1.0), 0.0),
                IrrepLabel::Principal(0, l) => {
                    p * (p - 1.0) * f.base_char(l as u64, a).conj() * self.classical[l as usize]
                }
                _ => zero,
            },
            MatKey::Nilpotent => match irrep {
                IrrepLabel::OneDim(0) => Complex64::new(-p * (p - 1.0), 0.0),
                IrrepLabel::SteinbergTwist(0) => Complex64::new(p * p * (p - 1.0), 0.0),
                _ => zero,
            },
            MatKey::Invertible(c) => self.g[ri] * t.value(ri, self.inverse_class[c]),
        }
    }

    pub fn trace(&self, ri: usize, a: &Mat2) -> ComplexValue {
        self.trace_by_key(ri, MatKey::of(self.table.group(), a))
    }
}

/// `Tr G(rho, A)` in closed form.
pub fn gauss_trace_closed(
    table: &CharacterTable,
    irrep: &IrrepLabel,
    a: &Mat2,
) -> Result<ComplexValue> {
    let ri = table.irrep_index(irrep)?;
    if a.p() != table.p() {
        return Err(Error::ModulusMismatch(table.p() as u64, a.p() as u64));
    }
    Ok(GaussTable::new(table).trace(ri, a))
}

/// Fourier transform of the extended character, `p^{-4} Tr G(rho, -A)`.
pub fn char_ft(table: &CharacterTable, irrep: &IrrepLabel, a: &Mat2) -> Result<ComplexValue> {
    let p4 = (table.p() as f64).powi(4);
    Ok(gauss_trace_closed(table, irrep, &a.neg())? / p4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chars::{build_table, unit_multiplicity};

    #[test]
    fn zero_matrix() {
        let t = build_table(3).unwrap();
        let z = Mat2::zero(3);
        for r in t.irreps() {
            let b = gauss_trace_bruteforce(&t, r, &z).unwrap();
            if r.is_trivial() {
                assert!((b - 48.0).norm() < 1e-9);
            } else {
                assert!(b.norm() < 1e-9);
            }
            assert!((gauss_trace_closed(&t, r, &z).unwrap() - b).norm() < 1e-9);
        }
    }

    #[test]
    fn steinberg_nilpotent_p3() {
        let t = build_table(3).unwrap();
        let n = Mat2::nilpotent(3);
        let v = gauss_trace_bruteforce(&t, &IrrepLabel::STEINBERG, &n).unwrap();
        assert!((v - 18.0).norm() < 1e-9);
        let (g1, g2) = gauss_trace_cells(&t, &IrrepLabel::STEINBERG, &n).unwrap();
        assert!((g1 - 16.0).norm() < 1e-9 && (g2 - 2.0).norm() < 1e-9);
        let (g1, g2) =
            gauss_trace_cells(&t, &IrrepLabel::STEINBERG, &Mat2::semisimple_singular(3, 1))
                .unwrap();
        assert!((g1 + 2.0).norm() < 1e-9 && (g2 + 4.0).norm() < 1e-9);
        let (g1, g2) =
            gauss_trace_cells(&t, &IrrepLabel::TRIVIAL, &Mat2::semisimple_singular(3, 1)).unwrap();
        assert!((g1 + 18.0).norm() < 1e-9 && (g2 - 12.0).norm() < 1e-9);
    }

    #[test]
    fn legendre_principal_example() {
        let t = build_table(5).unwrap();
        // Legendre character is chi_2 mod 5
        let v = gauss_trace_closed(
            &t,
            &IrrepLabel::Principal(0, 2),
            &Mat2::semisimple_singular(5, 1),
        )
        .unwrap();
        assert!((v - Complex64::new(20.0 * 5f64.sqrt(), 0.0)).norm() < 1e-9);
    }

    #[test]
    fn closed_matches_brute_all_keys_small() {
        for p in [3u32, 5] {
            let t = build_table(p as u64).unwrap();
            let gt = GaussTable::new(&t);
            let g = t.group();
            let mut mats = vec![Mat2::zero(p), Mat2::nilpotent(p), Mat2::identity(p)];
            mats.extend((1..p).map(|a| Mat2::semisimple_singular(p, a)));
            mats.extend(g.classes().iter().map(|c| c.representative));
            mats.push(Mat2::new(p as u32, [1, 2, 2, 4]));
            for a in &mats {
                let prof = TraceProfile::new(g, a).unwrap();
                for ri in 0..t.irreps().len() {
                    let b = prof.total(&t, ri);
                    let c = gt.trace(ri, a);
                    assert!(
                        (b - c).norm() < 1e-6 * (p * p) as f64,
                        "p={p} {} A={a}",
                        t.irreps()[ri]
                    );
                }
            }
        }
    }

    #[test]
    fn kondo_magnitude() {
        for p in [3u64, 5, 7, 11] {
            let t = build_table(p).unwrap();
            for r in t.irreps() {
                let g = g_scalar(&t, r).unwrap();
                let k = unit_multiplicity(r) as i32;
                let expect = (p as f64).powf((4 - k) as f64 / 2.0);
                assert!(
                    (g.norm() - expect).abs() <= 1e-6 * expect,
                    "p={p} {r}: {}",
                    g.norm()
                );
            }
        }
    }

    #[test]
    fn char_ft_bounds() {
        let t = build_table(5).unwrap();
        let gt = GaussTable::new(&t);
        let p4 = 625.0;
        for idx in 1..625u32 {
            let a = Mat2::from_index(5, idx);
            for (ri, r) in t.irreps().iter().enumerate() {
                if r.is_trivial() {
                    continue;
                }
                let v = gt.trace(ri, &a.neg()).norm() / p4;
                assert!(v <= t.dims()[ri] as f64 / 25.0 + 1e-12);
                if a.is_invertible() && !a.is_scalar() {
                    assert!(v <= 2.0 / 25.0 + 1e-12);
                }
            }
        }
        let z = char_ft(&t, &IrrepLabel::STEINBERG, &Mat2::zero(5)).unwrap();
        assert!(z.norm() < 1e-12);
    }
}
