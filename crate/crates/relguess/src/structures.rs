//! Support-structure descriptors: cones (finitely generated submonoids of
//! `N^n`), full-rank integer lattices with a fundamental domain, and degree
//! maps for diagonal group actions.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::monomial::Monomial;
use crate::{Error, Result};

/// A finitely generated submonoid of `N^n`, given by its generators.
///
/// Membership is decided by dynamic programming (reachability by generator
/// additions) and memoized per instance; the memo tolerates concurrent
/// lookups and duplicate inserts.
#[derive(Debug)]
pub struct Cone {
    n: usize,
    generators: Vec<Vec<u32>>,
    memo: Mutex<HashMap<Vec<u32>, bool>>,
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone {
            n: self.n,
            generators: self.generators.clone(),
            memo: Mutex::new(HashMap::new()),
        }
    }
}

impl Cone {
    pub fn new(n: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
            if g.iter().all(|&e| e == 0) {
                return Err(Error::Invalid("zero vector as cone generator".into()));
            }
        }
        Ok(Cone {
            n,
            generators,
            memo: Mutex::new(HashMap::new()),
        })
    }

    /// The full orthant `N^n`.
    pub fn orthant(n: usize) -> Self {
        let generators = (0..n)
            .map(|p| {
                let mut e = vec![0u32; n];
                e[p] = 1;
                e
            })
            .collect();
        Cone::new(n, generators).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    /// True iff `point` is a nonnegative integer combination of the
    /// generators.
    pub fn contains(&self, point: &[u32]) -> bool {
        assert_eq!(point.len(), self.n, "dimension mismatch");
        if point.iter().all(|&e| e == 0) {
            return true;
        }
        if let Some(&v) = self.memo.lock().unwrap().get(point) {
            return v;
        }
        let mut v = false;
        for g in &self.generators {
            if g.iter().zip(point).all(|(a, b)| a <= b) {
                let rest: Vec<u32> = point.iter().zip(g).map(|(b, a)| b - a).collect();
                if self.contains(&rest) {
                    v = true;
                    break;
                }
            }
        }
        self.memo.lock().unwrap().insert(point.to_vec(), v);
        v
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.contains(m.x_exponents())
    }
}

/// Column-style Hermite normal form data: `h` is lower triangular with
/// positive diagonal, obtained from the input columns by unimodular column
/// operations.
#[derive(Clone, Debug)]
struct Hnf {
    n: usize,
    h: Vec<Vec<i64>>, // h[r][c]
}

impl Hnf {
    /// `cols` are the lattice generators as columns; fails when they do not
    /// have full rank.
    fn new(n: usize, cols: Vec<Vec<i64>>) -> Result<Self> {
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let ncols = cols.len();
        let mut next = 0usize;
        for r in 0..n {
            // euclid on row r among columns next..
            loop {
                let mut best: Option<usize> = None;
                for c in next..ncols {
                    if m[r][c] != 0 {
                        best = match best {
                            None => Some(c),
                            Some(b) if m[r][c].abs() < m[r][b].abs() => Some(c),
                            other => other,
                        };
                    }
                }
                let Some(b) = best else {
                    return Err(Error::RankDeficient);
                };
                let mut reduced = true;
                for c in next..ncols {
                    if c != b && m[r][c] != 0 {
                        let q = div_round(m[r][c], m[r][b]);
                        for row in m.iter_mut() {
                            row[c] -= q.checked_mul(row[b]).expect("lattice overflow");
                        }
                        if m[r][c] != 0 {
                            reduced = false;
                        }
                    }
                }
                if reduced {
                    for row in m.iter_mut() {
                        row.swap(next, b);
                    }
                    break;
                }
            }
            if m[r][next] < 0 {
                for row in m.iter_mut() {
                    row[next] = -row[next];
                }
            }
            next += 1;
        }
        let h: Vec<Vec<i64>> = (0..n).map(|r| m[r][..n].to_vec()).collect();
        Ok(Hnf { n, h })
    }

    fn diag(&self, r: usize) -> i64 {
        self.h[r][r]
    }

    fn det(&self) -> i64 {
        (0..self.n).map(|r| self.h[r][r]).product()
    }

    /// Canonical coset representative: reduce `v` by the columns top-down so
    /// every coordinate lands in `[0, h_rr)`.
    fn canonical_rep(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for r in 0..self.n {
            let q = v[r].div_euclid(self.h[r][r]);
            if q != 0 {
                for row in r..self.n {
                    v[row] -= q * self.h[row][r];
                }
            }
        }
        v
    }
}

fn div_round(a: i64, b: i64) -> i64 {
    // quotient minimizing |a - q b|
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

/// A full-rank sublattice of `Z^n` together with a fundamental domain
/// (one nonnegative representative per coset, containing 0).
#[derive(Clone, Debug)]
pub struct Lattice {
    n: usize,
    basis: Vec<Vec<i64>>,
    hnf: Hnf,
    domain: Vec<Vec<u32>>,
    rep_index: HashMap<Vec<i64>, usize>,
}

impl Lattice {
    /// `basis` rows generate the lattice. When `domain` is absent the box
    /// representatives of the Hermite form are used.
    pub fn new(n: usize, basis: Vec<Vec<i64>>, domain: Option<Vec<Vec<u32>>>) -> Result<Self> {
        for b in &basis {
            if b.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: b.len(),
                });
            }
        }
        let cols: Vec<Vec<i64>> = basis.clone();
        let hnf = Hnf::new(n, cols)?;
        let det = hnf.det().unsigned_abs();
        let domain: Vec<Vec<u32>> = match domain {
            Some(d) => d,
            None => {
                // box representatives, row-major
                let mut reps = vec![vec![]];
                for r in 0..n {
                    let mut next = Vec::new();
                    for rep in reps {
                        for v in 0..hnf.diag(r) {
                            let mut e: Vec<u32> = rep.clone();
                            e.push(v as u32);
                            next.push(e);
                        }
                    }
                    reps = next;
                }
                reps
            }
        };
        if domain.len() as u64 != det {
            return Err(Error::Invalid(format!(
                "fundamental domain has {} points but the lattice index is {det}",
                domain.len()
            )));
        }
        if !domain.iter().any(|a| a.iter().all(|&e| e == 0)) {
            return Err(Error::Invalid("fundamental domain must contain 0".into()));
        }
        let mut rep_index = HashMap::new();
        for (i, a) in domain.iter().enumerate() {
            if a.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: a.len(),
                });
            }
            let signed: Vec<i64> = a.iter().map(|&e| e as i64).collect();
            let rep = hnf.canonical_rep(&signed);
            if rep_index.insert(rep, i).is_some() {
                return Err(Error::Invalid(
                    "fundamental domain points share a coset".into(),
                ));
            }
        }
        Ok(Lattice {
            n,
            basis,
            hnf,
            domain,
            rep_index,
        })
    }

    /// `Z^n` itself, with domain `{0}`.
    pub fn full(n: usize) -> Self {
        let basis = (0..n)
            .map(|p| {
                let mut e = vec![0i64; n];
                e[p] = 1;
                e
            })
            .collect();
        Lattice::new(n, basis, None).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn domain(&self) -> &[Vec<u32>] {
        &self.domain
    }

    pub fn index(&self) -> usize {
        self.domain.len()
    }

    /// Index into the fundamental domain of the coset of `point`.
    pub fn coset_index(&self, point: &[i64]) -> Result<usize> {
        let rep = self.hnf.canonical_rep(point);
        self.rep_index
            .get(&rep)
            .copied()
            .ok_or_else(|| Error::CosetNotCovered(point.to_vec()))
    }

    /// The unique fundamental-domain point congruent to `point`.
    pub fn coset(&self, point: &[i64]) -> Result<&[u32]> {
        Ok(&self.domain[self.coset_index(point)?])
    }

    pub fn coset_of_monomial(&self, m: &Monomial) -> Result<usize> {
        let signed: Vec<i64> = m.x_exponents().iter().map(|&e| e as i64).collect();
        self.coset_index(&signed)
    }

    pub fn contains(&self, point: &[i64]) -> bool {
        self.hnf.canonical_rep(point).iter().all(|&e| e == 0)
    }
}

/// Degrees of a diagonal action of `Z/q_1 x ... x Z/q_l` (with
/// `q_1 | ... | q_l`): each `x` variable carries a tuple of residues, `t`
/// variables carry zero, and degrees add under multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GDegreeMap {
    factors: Vec<u32>,
    var_degrees: Vec<Vec<u32>>,
}

impl GDegreeMap {
    pub fn new(factors: Vec<u32>, var_degrees: Vec<Vec<u32>>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&q| q == 0) {
            return Err(Error::Invalid("invariant factors must be positive".into()));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::Invalid(format!(
                    "invariant factors must divide in order: {} does not divide {}",
                    w[0], w[1]
                )));
            }
        }
        let var_degrees: Vec<Vec<u32>> = var_degrees
            .into_iter()
            .map(|d| {
                if d.len() != factors.len() {
                    Err(Error::DimensionMismatch {
                        expected: factors.len(),
                        got: d.len(),
                    })
                } else {
                    Ok(d.iter().zip(&factors) .map(|(&e, &q)| e % q).collect())
                }
            })
            .collect::<Result<_>>()?;
        Ok(GDegreeMap {
            factors,
            var_degrees,
        })
    }

    /// The trivial action on `n` variables.
    pub fn trivial(n: usize) -> Self {
        GDegreeMap {
            factors: vec![1],
            var_degrees: vec![vec![0]; n],
        }
    }

    /// `Z/q` acting with the given single-factor degree per variable.
    pub fn cyclic(q: u32, degrees: Vec<u32>) -> Result<Self> {
        let var_degrees = degrees.into_iter().map(|d| vec![d]).collect();
        GDegreeMap::new(vec![q], var_degrees)
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn nvars(&self) -> usize {
        self.var_degrees.len()
    }

    /// Group order `q_1 * ... * q_l`.
    pub fn group_order(&self) -> u64 {
        self.factors.iter().map(|&q| q as u64).product()
    }

    pub fn variable_degree(&self, p: usize) -> &[u32] {
        &self.var_degrees[p]
    }

    pub fn zero_degree(&self) -> Vec<u32> {
        vec![0; self.factors.len()]
    }

    pub fn add_degrees(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &q)| (x + y) % q)
            .collect()
    }

    pub fn scale_degree(&self, a: &[u32], k: u64) -> Vec<u32> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &q)| ((x as u64 * (k % q as u64)) % q as u64) as u32)
            .collect()
    }

    /// Degree of a monomial: the `x` exponents weigh in, `t` exponents do
    /// not.
    pub fn degree(&self, m: &Monomial) -> Vec<u32> {
        assert_eq!(m.nvars(), self.nvars(), "dimension mismatch");
        let mut acc = self.zero_degree();
        for (p, &e) in m.x_exponents().iter().enumerate() {
            if e > 0 {
                let scaled = self.scale_degree(&self.var_degrees[p], e as u64);
                acc = self.add_degrees(&acc, &scaled);
            }
        }
        acc
    }

    /// The lattice of exponent vectors whose monomials have degree zero,
    /// with the box representatives of its Hermite form as fundamental
    /// domain (one per achieved degree).
    pub fn zero_degree_lattice(&self, n: usize) -> Result<Lattice> {
        if n != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                got: n,
            });
        }
        let l = self.factors.len();
        // integer kernel of [D | -Q]: D is l x n with the variable degrees as
        // columns, Q = diag(q). Unimodular column operations bring the matrix
        // to column echelon form; columns that vanish are kernel vectors, and
        // their first n coordinates generate the zero-degree lattice.
        let width = n + l;
        let mut m: Vec<Vec<i64>> = (0..l)
            .map(|r| {
                let mut row: Vec<i64> = (0..n).map(|c| self.var_degrees[c][r] as i64).collect();
                for j in 0..l {
                    row.push(if j == r { -(self.factors[r] as i64) } else { 0 });
                }
                row
            })
            .collect();
        let mut u: Vec<Vec<i64>> = (0..width)
            .map(|r| (0..width).map(|c| i64::from(r == c)).collect())
            .collect();
        let mut next = 0usize;
        for r in 0..l {
            loop {
                let mut best: Option<usize> = None;
                for c in next..width {
                    if m[r][c] != 0 {
                        best = match best {
                            None => Some(c),
                            Some(b) if m[r][c].abs() < m[r][b].abs() => Some(c),
                            other => other,
                        };
                    }
                }
                let Some(b) = best else { break };
                let mut done = true;
                for c in next..width {
                    if c != b && m[r][c] != 0 {
                        let q = div_round(m[r][c], m[r][b]);
                        for rr in 0..l {
                            m[rr][c] -= q * m[rr][b];
                        }
                        for rr in 0..width {
                            u[rr][c] -= q * u[rr][b];
                        }
                        if m[r][c] != 0 {
                            done = false;
                        }
                    }
                }
                if done {
                    for rr in 0..l {
                        m[rr].swap(next, b);
                    }
                    for rr in 0..width {
                        u[rr].swap(next, b);
                    }
                    next += 1;
                    break;
                }
            }
        }
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for c in 0..width {
            if (0..l).all(|r| m[r][c] == 0) {
                gens.push((0..n).map(|r| u[r][c]).collect());
            }
        }
        // a full-rank set: q_l * e_p is always in the kernel
        for p in 0..n {
            let mut e = vec![0i64; n];
            e[p] = *self.factors.last().unwrap() as i64;
            gens.push(e);
        }
        let hnf = Hnf::new(n, gens)?;
        let basis: Vec<Vec<i64>> = (0..n)
            .map(|c| (0..n).map(|r| hnf.h[r][c]).collect())
            .collect();
        Lattice::new(n, basis, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn cone_membership_examples() {
        let c = Cone::new(2, vec![vec![1, 1], vec![1, 2], vec![2, 1]]).unwrap();
        // (3,3) = 3*(1,1) = (1,2)+(2,1)
        assert!(c.contains(&[3, 3]));
        assert!(c.contains(&[0, 0]));
        assert!(!c.contains(&[1, 0]));
    }

    #[test]
    fn cone_membership_matches_exhaustive_search() {
        // oracle: try all combinations with small coefficient sums
        let gens = vec![vec![1u32, 1], vec![1, 2], vec![2, 1]];
        let c = Cone::new(2, gens.clone()).unwrap();
        for i in 0..8u32 {
            for j in 0..8u32 {
                let mut reachable = false;
                for a in 0..=8u32 {
                    for b in 0..=8u32 {
                        for d in 0..=8u32 {
                            let p = [
                                a * gens[0][0] + b * gens[1][0] + d * gens[2][0],
                                a * gens[0][1] + b * gens[1][1] + d * gens[2][1],
                            ];
                            if p == [i, j] {
                                reachable = true;
                            }
                        }
                    }
                }
                assert_eq!(c.contains(&[i, j]), reachable, "at ({i},{j})");
            }
        }
    }

    #[test]
    fn cone_closed_under_addition() {
        let c = Cone::new(2, vec![vec![2, 0], vec![2, 1]]).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        let mut members = Vec::new();
        while members.len() < 30 {
            let p = [rng.gen_range(0..20u32), rng.gen_range(0..20u32)];
            if c.contains(&p) {
                members.push(p);
            }
        }
        for a in &members {
            for b in &members {
                assert!(c.contains(&[a[0] + b[0], a[1] + b[1]]));
            }
        }
    }

    #[test]
    fn lattice_cosets_mod_three() {
        // (0,3)Z + (1,0)Z with domain {(0,0),(0,1),(0,2)}
        let l = Lattice::new(
            2,
            vec![vec![0, 3], vec![1, 0]],
            Some(vec![vec![0, 0], vec![0, 1], vec![0, 2]]),
        )
        .unwrap();
        assert_eq!(l.index(), 3);
        // coset of (i, j) is (0, j mod 3): y^5 -> (0, 2)
        assert_eq!(l.coset(&[0, 5]).unwrap(), &[0, 2]);
        assert_eq!(l.coset(&[4, 6]).unwrap(), &[0, 0]);
        assert_eq!(l.coset(&[1, 1]).unwrap(), &[0, 1]);
    }

    #[test]
    fn full_lattice_single_coset() {
        let l = Lattice::full(3);
        assert_eq!(l.index(), 1);
        assert_eq!(l.coset(&[5, -2, 9]).unwrap(), &[0, 0, 0]);
    }

    #[test]
    fn lattice_coset_random_oracle() {
        // random basis; verify with an exact integral solve of B z = i - a
        let mut rng = StdRng::seed_from_u64(41);
        for _ in 0..50 {
            let basis = vec![
                vec![rng.gen_range(1..4i64), rng.gen_range(0..3i64)],
                vec![rng.gen_range(-2..3i64), rng.gen_range(1..5i64)],
            ];
            let Ok(l) = Lattice::new(2, basis.clone(), None) else {
                continue;
            };
            let p = [rng.gen_range(0..30i64), rng.gen_range(0..30i64)];
            let a = l.coset(&p).unwrap();
            let diff = [p[0] - a[0] as i64, p[1] - a[1] as i64];
            // solve z0*b0 + z1*b1 = diff over the rationals, check integral
            let det = basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0];
            assert_ne!(det, 0);
            let z0_num = diff[0] * basis[1][1] - diff[1] * basis[1][0];
            let z1_num = basis[0][0] * diff[1] - basis[0][1] * diff[0];
            assert_eq!(z0_num % det, 0, "coset rep not congruent");
            assert_eq!(z1_num % det, 0, "coset rep not congruent");
        }
    }

    #[test]
    fn lattice_coset_constant_on_translates() {
        let l = Lattice::new(2, vec![vec![0, 3], vec![1, 0]], None).unwrap();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let p = [rng.gen_range(0..40i64), rng.gen_range(0..40i64)];
            let k0 = rng.gen_range(-3..4i64);
            let k1 = rng.gen_range(-3..4i64);
            let shifted = [p[0] + k1, p[1] + 3 * k0];
            assert_eq!(l.coset_index(&p).unwrap(), l.coset_index(&shifted).unwrap());
        }
        // distinct domain points classify distinct cosets by construction
        let idx: Vec<usize> = l
            .domain()
            .iter()
            .map(|a| {
                let signed: Vec<i64> = a.iter().map(|&e| e as i64).collect();
                l.coset_index(&signed).unwrap()
            })
            .collect();
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), idx.len());
    }

    #[test]
    fn rank_deficient_basis_rejected() {
        assert!(matches!(
            Lattice::new(2, vec![vec![1, 2], vec![2, 4]], None),
            Err(Error::RankDeficient)
        ));
    }

    #[test]
    fn gdegree_examples() {
        let g = GDegreeMap::cyclic(3, vec![1, 1]).unwrap();
        let xy2 = Monomial::from_x(vec![1, 2]);
        assert_eq!(g.degree(&xy2), vec![0]);
        assert_eq!(g.degree(&Monomial::one(2)), vec![0]);
        // t exponents contribute nothing
        let t_xy2 = Monomial::from_tx(vec![4, 1], vec![1, 2]);
        assert_eq!(g.degree(&t_xy2), vec![0]);
    }

    #[test]
    fn gdegree_additive() {
        let g = GDegreeMap::new(vec![2, 4], vec![vec![1, 3], vec![0, 2], vec![1, 1]]).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let a = Monomial::from_x((0..3).map(|_| rng.gen_range(0..5u32)).collect());
            let b = Monomial::from_x((0..3).map(|_| rng.gen_range(0..5u32)).collect());
            let sum = g.add_degrees(&g.degree(&a), &g.degree(&b));
            assert_eq!(g.degree(&a.mul(&b)), sum);
        }
    }

    #[test]
    fn zero_degree_lattice_one_var() {
        let g = GDegreeMap::cyclic(3, vec![1]).unwrap();
        let l = g.zero_degree_lattice(1).unwrap();
        assert_eq!(l.index(), 3);
        assert!(l.contains(&[3]));
        assert!(!l.contains(&[1]));
        assert_eq!(l.domain(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn zero_degree_lattice_two_vars() {
        let g = GDegreeMap::cyclic(3, vec![1, 1]).unwrap();
        let l = g.zero_degree_lattice(2).unwrap();
        assert_eq!(l.index(), 3);
        // kernel of (i, j) -> i + j mod 3; classify the box exhaustively
        for i in 0..9i64 {
            for j in 0..9i64 {
                assert_eq!(l.contains(&[i, j]), (i + j) % 3 == 0, "at ({i},{j})");
            }
        }
        // coset representative has the same degree as the point
        for i in 0..9i64 {
            for j in 0..9i64 {
                let a = l.coset(&[i, j]).unwrap();
                let da = (a[0] as i64 + a[1] as i64) % 3;
                assert_eq!(da, (i + j) % 3);
            }
        }
    }

    #[test]
    fn zero_degree_lattice_trivial_degrees() {
        let g = GDegreeMap::cyclic(5, vec![0, 0]).unwrap();
        let l = g.zero_degree_lattice(2).unwrap();
        assert_eq!(l.index(), 1);
    }

    #[test]
    fn gdegree_constant_on_cosets() {
        let g = GDegreeMap::cyclic(4, vec![1, 2]).unwrap();
        let l = g.zero_degree_lattice(2).unwrap();
        for a in l.domain() {
            let base = g.degree(&Monomial::from_x(a.clone()));
            for i in 0..10i64 {
                for j in 0..10i64 {
                    let p = [a[0] as i64 + i, a[1] as i64 + j];
                    if l.contains(&[i, j]) {
                        let m = Monomial::from_x(vec![p[0] as u32, p[1] as u32]);
                        assert_eq!(g.degree(&m), base);
                    }
                }
            }
        }
    }
}
