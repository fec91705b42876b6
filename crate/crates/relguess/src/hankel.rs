//! Multi-Hankel matrices, leftmost column rank profiles and relation solving.
//!
//! The entry at row `x^i`, column `t^k x^j` is the bracket `[t^k x^(j+i)]_u`,
//! so in pure-`x` mode the matrix is multi-level Hankel. Elimination is dense
//! with column pivoting in label order and row pivoting by first nonzero;
//! rectangular shapes with more rows than columns use every row as a
//! constraint.

use crate::field::Field;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::tables::{bracket_monomial, TableSource};
use crate::{par, Error, Result};

#[derive(Clone, Debug)]
pub struct MultiHankelMatrix<F: Field> {
    field: F,
    row_labels: Vec<Monomial>,
    col_labels: Vec<Monomial>,
    /// row-major entries
    data: Vec<F::Elem>,
}

impl<F: Field> MultiHankelMatrix<F> {
    /// Builds `H_{X,T}` from a table; rows must be pure-`x` monomials. The
    /// table is queried only at the index sums `{i + j}`.
    pub fn build(
        field: &F,
        table: &dyn TableSource<F>,
        rows: &[Monomial],
        cols: &[Monomial],
    ) -> Result<Self> {
        for r in rows {
            if !r.is_pure_x() {
                return Err(Error::Invalid(format!(
                    "row label {} is not a pure x monomial",
                    r.plain_string()
                )));
            }
        }
        let data_rows: Vec<Result<Vec<F::Elem>>> = par::map_slice(rows, |r| {
            cols.iter()
                .map(|c| bracket_monomial(field, table, c, r))
                .collect()
        });
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for row in data_rows {
            data.extend(row?);
        }
        Ok(MultiHankelMatrix {
            field: field.clone(),
            row_labels: rows.to_vec(),
            col_labels: cols.to_vec(),
            data,
        })
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[Monomial] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Monomial] {
        &self.col_labels
    }

    pub fn entry(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.col_labels.len() + j]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.nrows()).map(|i| self.entry(i, j).clone()).collect()
    }

    /// Indices of the leftmost maximal linearly independent column set.
    pub fn column_rank_profile(&self) -> Vec<usize> {
        let mut elim = Elimination::new(self.field.clone(), self.nrows());
        let mut profile = Vec::new();
        for j in 0..self.ncols() {
            if let PushOutcome::Independent = elim.push_column(self.column(j)) {
                profile.push(j);
            }
        }
        profile
    }

    pub fn rank(&self) -> usize {
        self.column_rank_profile().len()
    }

    /// Aligned text dump in the bordered layout used for golden tests.
    pub fn dump(&self, name: impl Fn(&Monomial) -> String) -> String {
        let header: Vec<String> = self.col_labels.iter().map(&name).collect();
        let rows: Vec<Vec<String>> = (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| self.field.format(self.entry(i, j)))
                    .collect()
            })
            .collect();
        let row_names: Vec<String> = self.row_labels.iter().map(&name).collect();
        let mut widths = vec![0usize; self.ncols() + 1];
        widths[0] = row_names.iter().map(|s| s.len()).max().unwrap_or(0);
        for j in 0..self.ncols() {
            widths[j + 1] = header[j].len();
            for row in &rows {
                widths[j + 1] = widths[j + 1].max(row[j].len());
            }
        }
        let mut out = String::new();
        let pad = |s: &str, w: usize| format!("{s:>w$}");
        out.push_str(&pad("", widths[0]));
        for (j, h) in header.iter().enumerate() {
            out.push_str("  ");
            out.push_str(&pad(h, widths[j + 1]));
        }
        out.push('\n');
        for (i, row) in rows.iter().enumerate() {
            out.push_str(&pad(&row_names[i], widths[0]));
            for (j, v) in row.iter().enumerate() {
                out.push_str("  ");
                out.push_str(&pad(v, widths[j + 1]));
            }
            out.push('\n');
        }
        out
    }
}

/// Outcome of feeding one column to the elimination.
pub enum PushOutcome<F: Field> {
    Independent,
    /// The column equals the combination of the accepted columns with these
    /// coefficients (aligned with the accepted order).
    Dependent(Vec<F::Elem>),
}

/// Incremental column elimination over a growing row set.
///
/// Columns are fed in label order; accepted columns keep both their original
/// entries and a reduced form, plus the coefficients expressing the reduced
/// form in terms of the original columns, so rows can be appended later and
/// dependencies are always reported in the original column basis.
#[derive(Clone)]
pub struct Elimination<F: Field> {
    field: F,
    nrows: usize,
    orig: Vec<Vec<F::Elem>>,
    reduced: Vec<Vec<F::Elem>>,
    pivot_row: Vec<usize>,
    /// `mu[i]` has length `i + 1`: `reduced[i] = sum_j mu[i][j] * orig[j]`.
    mu: Vec<Vec<F::Elem>>,
}

impl<F: Field> Elimination<F> {
    pub fn new(field: F, nrows: usize) -> Self {
        Elimination {
            field,
            nrows,
            orig: Vec::new(),
            reduced: Vec::new(),
            pivot_row: Vec::new(),
            mu: Vec::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn rank(&self) -> usize {
        self.orig.len()
    }

    pub fn push_column(&mut self, col: Vec<F::Elem>) -> PushOutcome<F> {
        assert_eq!(col.len(), self.nrows, "column height mismatch");
        let f = &self.field;
        let mut r = col.clone();
        let mut factors = vec![f.zero(); self.orig.len()];
        for i in 0..self.orig.len() {
            let pr = self.pivot_row[i];
            if f.is_zero(&r[pr]) {
                continue;
            }
            let factor = f
                .div(&r[pr], &self.reduced[i][pr])
                .expect("pivot entries are nonzero");
            for (rv, red) in r.iter_mut().zip(&self.reduced[i]) {
                let sub = f.mul(&factor, red);
                *rv = f.sub(rv, &sub);
            }
            factors[i] = factor;
        }
        match r.iter().position(|v| !f.is_zero(v)) {
            Some(pr) => {
                // mu_new = e_new - sum_i factors[i] * mu[i]
                let mut mu_new = vec![f.zero(); self.orig.len() + 1];
                mu_new[self.orig.len()] = f.one();
                for (i, factor) in factors.iter().enumerate() {
                    if f.is_zero(factor) {
                        continue;
                    }
                    for (j, m) in self.mu[i].iter().enumerate() {
                        let sub = f.mul(factor, m);
                        mu_new[j] = f.sub(&mu_new[j], &sub);
                    }
                }
                self.orig.push(col);
                self.reduced.push(r);
                self.pivot_row.push(pr);
                self.mu.push(mu_new);
                PushOutcome::Independent
            }
            None => {
                // col = sum_i factors[i] * reduced[i] = sum_j gamma[j] * orig[j]
                let mut gamma = vec![f.zero(); self.orig.len()];
                for (i, factor) in factors.iter().enumerate() {
                    if f.is_zero(factor) {
                        continue;
                    }
                    for (j, m) in self.mu[i].iter().enumerate() {
                        let add = f.mul(factor, m);
                        gamma[j] = f.add(&gamma[j], &add);
                    }
                }
                PushOutcome::Dependent(gamma)
            }
        }
    }

    /// Appends one row; `entries[i]` is the new row's value in the `i`-th
    /// accepted original column.
    pub fn add_row(&mut self, entries: &[F::Elem]) {
        assert_eq!(entries.len(), self.orig.len(), "row width mismatch");
        let f = &self.field;
        for i in 0..self.orig.len() {
            self.orig[i].push(entries[i].clone());
            let mut v = f.zero();
            for (j, m) in self.mu[i].iter().enumerate() {
                v = f.add(&v, &f.mul(m, &entries[j]));
            }
            self.reduced[i].push(v);
        }
        self.nrows += 1;
    }
}

/// Result of solving for a relation with prescribed staircase support.
pub enum SolveOutcome<F: Field> {
    /// Coefficients `gamma` with `H_{rows,S} gamma = -H_{rows,{g}}`; the
    /// relation is `g + sum gamma_s s`.
    Relation(Vec<F::Elem>),
    /// The target column is independent of the staircase columns.
    Independent,
}

/// Solves `H_{rows,S} gamma + H_{rows,{g}} = 0` for the relation with leading
/// monomial `g` and support in the staircase `S`. All given rows act as
/// constraints. A dependent staircase column is a caller logic error.
pub fn solve_relation<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    rows: &[Monomial],
    staircase: &[Monomial],
    g: &Monomial,
) -> Result<SolveOutcome<F>> {
    let h = MultiHankelMatrix::build(field, table, rows, staircase)?;
    let mut elim = Elimination::new(field.clone(), rows.len());
    for j in 0..staircase.len() {
        if let PushOutcome::Dependent(_) = elim.push_column(h.column(j)) {
            return Err(Error::Singular(format!(
                "staircase column {} is dependent",
                staircase[j].plain_string()
            )));
        }
    }
    let target: Vec<F::Elem> = rows
        .iter()
        .map(|r| bracket_monomial(field, table, g, r))
        .collect::<Result<_>>()?;
    match elim.push_column(target) {
        PushOutcome::Independent => Ok(SolveOutcome::Independent),
        PushOutcome::Dependent(expr) => {
            Ok(SolveOutcome::Relation(expr.iter().map(|c| field.neg(c)).collect()))
        }
    }
}

/// Assembles the monic relation polynomial `g + sum gamma_s s`.
pub fn relation_poly<F: Field>(
    field: &F,
    staircase: &[Monomial],
    gamma: &[F::Elem],
    g: &Monomial,
) -> Poly<F> {
    let mut p = Poly::monomial(g.nvars(), g.clone(), field.one());
    for (s, c) in staircase.iter().zip(gamma) {
        p.add_term(field, s.clone(), c.clone());
    }
    p
}

/// True when `poly` brackets to zero against every listed row shift.
pub fn verify_relation<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    poly: &Poly<F>,
    rows: &[Monomial],
) -> Result<bool> {
    for r in rows {
        let v = crate::tables::bracket(field, table, &poly.mul_monomial(r))?;
        if !field.is_zero(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sorted leading monomials of the reduced relation set: drops every
/// candidate whose leading monomial is a universe-multiple of a kept one.
pub fn remove_multiples<F: Field>(
    order: &MonomialOrder,
    relations: Vec<(Monomial, Poly<F>)>,
    in_universe: impl Fn(&Monomial) -> bool,
) -> Vec<(Monomial, Poly<F>)> {
    let mut sorted = relations;
    sorted.sort_by(|a, b| order.compare(&a.0, &b.0));
    let mut kept: Vec<(Monomial, Poly<F>)> = Vec::new();
    'cand: for (lm, poly) in sorted {
        for (k, _) in &kept {
            if let Some(q) = lm.try_div(k) {
                if in_universe(&q) {
                    continue 'cand;
                }
            }
        }
        kept.push((lm, poly));
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::monomial::{enumerate_x, EnumBound, OrderKind};
    use crate::tables::FnTable;
    use num_rational::BigRational;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn example_table() -> (PrimeField, FnTable<PrimeField, impl Fn(&[u32]) -> u64>) {
        let f = PrimeField::new(7).unwrap();
        let fc = f.clone();
        let t = FnTable::new(2, move |idx: &[u32]| {
            crate::tables::testutil::example_value(&fc, idx[0] as u64, idx[1] as u64)
        });
        (f, t)
    }

    #[test]
    fn build_matches_bracket_definition() {
        let (f, t) = example_table();
        // X = {1, y, x, y^2, xy, x^2}, T = {1, u, t, y, x, uy, ty, ux, tx}
        let x = |a: u32, b: u32| Monomial::from_x(vec![a, b]);
        let tx = |t1: u32, t2: u32, a: u32, b: u32| Monomial::from_tx(vec![t1, t2], vec![a, b]);
        let rows = vec![x(0, 0), x(0, 1), x(1, 0), x(0, 2), x(1, 1), x(2, 0)];
        let cols = vec![
            tx(0, 0, 0, 0),
            tx(0, 1, 0, 0),
            tx(1, 0, 0, 0),
            tx(0, 0, 0, 1),
            tx(0, 0, 1, 0),
            tx(0, 1, 0, 1),
            tx(1, 0, 0, 1),
            tx(0, 1, 1, 0),
            tx(1, 0, 1, 0),
        ];
        let h = MultiHankelMatrix::build(&f, &t, &rows, &cols).unwrap();
        let u = |i: u64, j: u64| crate::tables::testutil::example_value(&f, i, j);
        // spot checks against the displayed matrix
        assert_eq!(*h.entry(0, 2), 0); // [t*1] = 0
        assert_eq!(*h.entry(4, 5), f.mul(&2, &u(1, 2))); // [uy * xy] = 2 u_{1,2}
        assert_eq!(*h.entry(2, 8), f.mul(&2, &u(2, 0))); // [tx * x] = 2 u_{2,0}
        assert_eq!(*h.entry(5, 8), f.mul(&3, &u(3, 0))); // [tx * x^2] = 3 u_{3,0}
        assert_eq!(*h.entry(1, 1), u(0, 1)); // [u y * y]... t2 exp at index 1
        assert_eq!(*h.entry(0, 0), u(0, 0));
    }

    #[test]
    fn hankel_structure_in_pure_x_mode() {
        let (f, t) = example_table();
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        let ms = enumerate_x(&drl, 2, &EnumBound::TotalDegree(3), |_| true);
        let h = MultiHankelMatrix::build(&f, &t, &ms, &ms).unwrap();
        for (i, mi) in ms.iter().enumerate() {
            for (j, mj) in ms.iter().enumerate() {
                for (k, mk) in ms.iter().enumerate() {
                    for (l, ml) in ms.iter().enumerate() {
                        if mi.mul(mj) == mk.mul(ml) {
                            assert_eq!(h.entry(i, j), h.entry(k, l));
                        }
                    }
                }
            }
        }
        let one = vec![Monomial::one(2)];
        let h1 = MultiHankelMatrix::build(&f, &t, &one, &one).unwrap();
        assert_eq!(*h1.entry(0, 0), 1);
    }

    #[test]
    fn rank_profile_lattice_example() {
        // H = [[1,2,2],[2,0,0],[2,0,0]] over Q has profile {0, 1}
        let q = Rationals;
        let rows = vec![
            Monomial::one(1),
            Monomial::x_power(1, 0, 1),
            Monomial::x_power(1, 0, 4),
        ];
        let vals = [[1i64, 2, 2], [2, 0, 0], [2, 0, 0]];
        let table = FnTable::<Rationals, _>::new(1, move |idx: &[u32]| {
            // index sums: 0,1,4 -> row/col positions; emulate via lookup
            let v: i64 = match idx[0] {
                0 => 1,
                1 => 2,
                2 => 0,
                5 => 0,
                8 => 0,
                4 => 2,
                _ => unreachable!("unexpected index {}", idx[0]),
            };
            BigRational::from_integer(v.into())
        });
        let h = MultiHankelMatrix::build(&q, &table, &rows, &rows).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(
                    *h.entry(i, j),
                    BigRational::from_integer(vals[i][j].into())
                );
            }
        }
        assert_eq!(h.column_rank_profile(), vec![0, 1]);
    }

    #[test]
    fn zero_matrix_profile_is_empty() {
        let f = PrimeField::new(7).unwrap();
        let t = FnTable::<PrimeField, _>::new(1, |_: &[u32]| 0u64);
        let rows: Vec<Monomial> = (0..4).map(|e| Monomial::x_power(1, 0, e)).collect();
        let h = MultiHankelMatrix::build(&f, &t, &rows, &rows).unwrap();
        assert!(h.column_rank_profile().is_empty());
    }

    /// Brute-force prefix-rank oracle: the profile contains column j iff the
    /// rank of columns 0..=j exceeds the rank of columns 0..j.
    fn profile_oracle(f: &PrimeField, cols: &[Vec<u64>]) -> Vec<usize> {
        let rank = |upto: usize| -> usize {
            let mut elim = Elimination::new(f.clone(), cols[0].len());
            let mut r = 0;
            for c in &cols[..upto] {
                if matches!(elim.push_column(c.clone()), PushOutcome::Independent) {
                    r += 1;
                }
            }
            r
        };
        // recompute ranks column by column from scratch
        let mut out = Vec::new();
        for j in 0..cols.len() {
            if rank(j + 1) > rank(j) {
                out.push(j);
            }
        }
        out
    }

    #[test]
    fn rank_profile_matches_prefix_oracle() {
        let f = PrimeField::new(5).unwrap();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6usize);
            let m = rng.gen_range(1..=6usize);
            let cols: Vec<Vec<u64>> = (0..m)
                .map(|_| (0..n).map(|_| rng.gen_range(0..5u64)).collect())
                .collect();
            let mut elim = Elimination::new(f.clone(), n);
            let mut profile = Vec::new();
            for (j, c) in cols.iter().enumerate() {
                if matches!(elim.push_column(c.clone()), PushOutcome::Independent) {
                    profile.push(j);
                }
            }
            assert_eq!(profile, profile_oracle(&f, &cols));
        }
    }

    #[test]
    fn dependency_coefficients_are_exact() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..200 {
            let n = rng.gen_range(2..7usize);
            let k = rng.gen_range(1..n);
            let basis: Vec<Vec<u64>> = (0..k)
                .map(|_| (0..n).map(|_| rng.gen_range(0..101u64)).collect())
                .collect();
            let coeffs: Vec<u64> = (0..k).map(|_| rng.gen_range(0..101u64)).collect();
            let mut target = vec![0u64; n];
            for (c, b) in coeffs.iter().zip(&basis) {
                for (t, v) in target.iter_mut().zip(b) {
                    *t = f.add(t, &f.mul(c, v));
                }
            }
            let mut elim = Elimination::new(f.clone(), n);
            let mut accepted = Vec::new();
            for b in &basis {
                if matches!(elim.push_column(b.clone()), PushOutcome::Independent) {
                    accepted.push(b.clone());
                }
            }
            match elim.push_column(target.clone()) {
                PushOutcome::Independent => panic!("target must be dependent"),
                PushOutcome::Dependent(gamma) => {
                    let mut rebuilt = vec![0u64; n];
                    for (g, b) in gamma.iter().zip(&accepted) {
                        for (t, v) in rebuilt.iter_mut().zip(b) {
                            *t = f.add(t, &f.mul(g, v));
                        }
                    }
                    assert_eq!(rebuilt, target);
                }
            }
        }
    }

    #[test]
    fn add_row_matches_fresh_elimination() {
        let f = PrimeField::new(13).unwrap();
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..100 {
            // build a random matrix, interleave column pushes and row adds,
            // compare the final profile with a from-scratch run
            let total_rows = rng.gen_range(2..6usize);
            let total_cols = rng.gen_range(2..6usize);
            let m: Vec<Vec<u64>> = (0..total_rows)
                .map(|_| (0..total_cols).map(|_| rng.gen_range(0..13u64)).collect())
                .collect();
            let start_rows = rng.gen_range(1..=total_rows);

            let mut elim = Elimination::new(f.clone(), start_rows);
            let mut rows_now = start_rows;
            let mut accepted_cols: Vec<usize> = Vec::new();
            let mut profile_inc = Vec::new();
            for j in 0..total_cols {
                // maybe grow rows before pushing
                while rows_now < total_rows && rng.gen_bool(0.4) {
                    let entries: Vec<u64> =
                        accepted_cols.iter().map(|&c| m[rows_now][c]).collect();
                    elim.add_row(&entries);
                    rows_now += 1;
                }
                let col: Vec<u64> = (0..rows_now).map(|i| m[i][j]).collect();
                if matches!(elim.push_column(col), PushOutcome::Independent) {
                    profile_inc.push(j);
                    accepted_cols.push(j);
                }
            }
            // fresh run over the same row counts is not directly comparable;
            // instead verify the invariant: each accepted column remains
            // independent and each rejected one dependent when re-eliminated
            // over the rows that were present at its decision point. The
            // cheap global check: rank of the full matrix restricted to
            // accepted columns equals their count.
            let mut check = Elimination::new(f.clone(), rows_now);
            for &j in &accepted_cols {
                let col: Vec<u64> = (0..rows_now).map(|i| m[i][j]).collect();
                assert!(matches!(check.push_column(col), PushOutcome::Independent));
            }
        }
    }

    #[test]
    fn solve_relation_example_one() {
        let (f, t) = example_table();
        // S = {1, y, y^2, y^3}: relation for y^4 is y^4 + 6 y^2 + 2
        let s: Vec<Monomial> = (0..4).map(|e| Monomial::from_x(vec![0, e])).collect();
        let y4 = Monomial::from_x(vec![0, 4]);
        match solve_relation(&f, &t, &s, &s, &y4).unwrap() {
            SolveOutcome::Relation(gamma) => {
                assert_eq!(gamma, vec![2, 0, 6, 0]);
            }
            SolveOutcome::Independent => panic!("y^4 must be dependent"),
        }
        // and for x: x + 2 y^3 + 5 y
        let x = Monomial::from_x(vec![1, 0]);
        match solve_relation(&f, &t, &s, &s, &x).unwrap() {
            SolveOutcome::Relation(gamma) => {
                assert_eq!(gamma, vec![0, 5, 0, 2]);
            }
            SolveOutcome::Independent => panic!("x must be dependent"),
        }
    }

    #[test]
    fn solve_relation_empty_staircase() {
        let f = PrimeField::new(7).unwrap();
        let t = FnTable::<PrimeField, _>::new(1, |_: &[u32]| 0u64);
        let g = Monomial::x_power(1, 0, 2);
        match solve_relation(&f, &t, &[], &[], &g).unwrap() {
            SolveOutcome::Relation(gamma) => assert!(gamma.is_empty()),
            SolveOutcome::Independent => panic!("empty system is trivially consistent"),
        }
    }

    #[test]
    fn profile_may_need_closing() {
        // u = (1,1,1,1,5): column x depends on 1 but x^2 does not
        let f = PrimeField::new(7).unwrap();
        let vals = [1u64, 1, 1, 1, 5];
        let t = FnTable::<PrimeField, _>::new(1, move |idx: &[u32]| vals[idx[0] as usize]);
        let ms: Vec<Monomial> = (0..3).map(|e| Monomial::x_power(1, 0, e)).collect();
        let h = MultiHankelMatrix::build(&f, &t, &ms, &ms).unwrap();
        assert_eq!(h.column_rank_profile(), vec![0, 2]);
        // the closed set {1, x, x^2} is a staircase again
        let drl = MonomialOrder::new(OrderKind::Drl, 1);
        let closed = crate::monomial::staircase_close(
            &drl,
            &[ms[0].clone(), ms[2].clone()],
            &ms,
        );
        assert_eq!(closed.len(), 3);
        crate::monomial::check_staircase(&closed).unwrap();
    }

    #[test]
    fn dump_is_aligned() {
        let (f, t) = example_table();
        let ms: Vec<Monomial> = (0..2).map(|e| Monomial::from_x(vec![0, e])).collect();
        let h = MultiHankelMatrix::build(&f, &t, &ms, &ms).unwrap();
        let s = h.dump(|m| m.plain_string());
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].ends_with("x2"));
    }
}
