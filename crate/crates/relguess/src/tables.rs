//! Table sources and bracket evaluation.
//!
//! A table is a deterministic map from `N^n` indices to field elements. Walk
//! tables count constrained lattice walks with a frontier dynamic program
//! over big integers, reducing into the coefficient field only at query time
//! so the same table serves several primes. Query accounting counts distinct
//! indices, which is what matters when each table term is expensive.

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::field::Field;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::{Error, Result};

/// A queryable n-dimensional table. Implementations must be deterministic
/// and safe to query concurrently.
pub trait TableSource<F: Field>: Send + Sync {
    fn dim(&self) -> usize;
    fn query(&self, index: &[u32]) -> Result<F::Elem>;
}

/// Wraps a source and counts distinct queried indices.
pub struct CountingSource<'a, F: Field> {
    inner: &'a dyn TableSource<F>,
    seen: Mutex<HashSet<Vec<u32>>>,
}

impl<'a, F: Field> CountingSource<'a, F> {
    pub fn new(inner: &'a dyn TableSource<F>) -> Self {
        CountingSource {
            inner,
            seen: Mutex::new(HashSet::new()),
        }
    }

    pub fn distinct_queries(&self) -> usize {
        self.seen.lock().unwrap().len()
    }
}

impl<'a, F: Field> TableSource<F> for CountingSource<'a, F> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn query(&self, index: &[u32]) -> Result<F::Elem> {
        self.seen.lock().unwrap().insert(index.to_vec());
        self.inner.query(index)
    }
}

/// Explicit table with declared bounds. Indices inside the bounds but not
/// stored are zero; indices outside the bounds are an error, distinct from a
/// stored zero.
#[derive(Clone, Debug)]
pub struct ExplicitTable<F: Field> {
    field: F,
    bounds: Vec<u32>,
    values: HashMap<Vec<u32>, F::Elem>,
}

impl<F: Field> ExplicitTable<F> {
    pub fn new(field: &F, bounds: Vec<u32>, values: HashMap<Vec<u32>, F::Elem>) -> Result<Self> {
        for idx in values.keys() {
            if idx.len() != bounds.len() {
                return Err(Error::DimensionMismatch {
                    expected: bounds.len(),
                    got: idx.len(),
                });
            }
            if idx.iter().zip(&bounds).any(|(i, b)| i >= b) {
                return Err(Error::OutOfRange(idx.clone()));
            }
        }
        Ok(ExplicitTable {
            field: field.clone(),
            bounds,
            values,
        })
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &F::Elem)> {
        self.values.iter()
    }

    /// Fills a table from a closure over a rectangular region.
    pub fn tabulate(
        field: &F,
        bounds: Vec<u32>,
        f: impl Fn(&[u32]) -> F::Elem,
    ) -> Self {
        let mut values = HashMap::new();
        let mut idx = vec![0u32; bounds.len()];
        loop {
            let v = f(&idx);
            if !field.is_zero(&v) {
                values.insert(idx.clone(), v);
            }
            let mut p = bounds.len();
            loop {
                if p == 0 {
                    return ExplicitTable {
                        field: field.clone(),
                        bounds,
                        values,
                    };
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < bounds[p] {
                    break;
                }
                idx[p] = 0;
            }
        }
    }
}

impl<F: Field> TableSource<F> for ExplicitTable<F> {
    fn dim(&self) -> usize {
        self.bounds.len()
    }

    fn query(&self, index: &[u32]) -> Result<F::Elem> {
        if index.len() != self.bounds.len() {
            return Err(Error::DimensionMismatch {
                expected: self.bounds.len(),
                got: index.len(),
            });
        }
        if index.iter().zip(&self.bounds).any(|(i, b)| i >= b) {
            return Err(Error::OutOfRange(index.to_vec()));
        }
        Ok(self
            .values
            .get(index)
            .cloned()
            .unwrap_or_else(|| self.field.zero()))
    }
}

/// Table backed by a closure; handy for formula-defined sequences.
pub struct FnTable<F: Field, G> {
    dim: usize,
    f: G,
    _marker: std::marker::PhantomData<F>,
}

impl<F: Field, G: Fn(&[u32]) -> F::Elem + Send + Sync> FnTable<F, G> {
    pub fn new(dim: usize, f: G) -> Self {
        FnTable {
            dim,
            f,
            _marker: std::marker::PhantomData,
        }
    }
}

impl<F: Field, G: Fn(&[u32]) -> F::Elem + Send + Sync> TableSource<F> for FnTable<F, G> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn query(&self, index: &[u32]) -> Result<F::Elem> {
        assert_eq!(index.len(), self.dim);
        Ok((self.f)(index))
    }
}

/// Walk counter: `u[s, p]` is the number of `s`-step walks from the origin
/// to position `p` that use the given step set and never leave `N^k`.
///
/// `project` marks position coordinates pinned to zero; the projected table
/// has one time index plus the free coordinates. Counts are exact big
/// integers shared across fields.
#[derive(Debug)]
pub struct WalkTable {
    steps: Vec<Vec<i64>>,
    k: usize,
    project: Vec<bool>,
    layers: Mutex<Vec<HashMap<Vec<u32>, BigUint>>>,
}

impl WalkTable {
    pub fn new(k: usize, steps: Vec<Vec<i64>>, project: Vec<bool>) -> Result<Self> {
        if project.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: project.len(),
            });
        }
        for s in &steps {
            if s.len() != k {
                return Err(Error::DimensionMismatch {
                    expected: k,
                    got: s.len(),
                });
            }
        }
        let mut origin = HashMap::new();
        origin.insert(vec![0u32; k], BigUint::from(1u32));
        Ok(WalkTable {
            steps,
            k,
            project,
            layers: Mutex::new(vec![origin]),
        })
    }

    pub fn steps(&self) -> &[Vec<i64>] {
        &self.steps
    }

    pub fn space_dim(&self) -> usize {
        self.k
    }

    pub fn project(&self) -> &[bool] {
        &self.project
    }

    /// Table dimension after projection: time plus free coordinates.
    pub fn table_dim(&self) -> usize {
        1 + self.project.iter().filter(|&&b| !b).count()
    }

    /// Exact count for a full (unprojected) position.
    pub fn count(&self, time: u32, position: &[u32]) -> BigUint {
        assert_eq!(position.len(), self.k);
        let mut layers = self.layers.lock().unwrap();
        while layers.len() <= time as usize {
            let last = layers.last().unwrap();
            let mut next: HashMap<Vec<u32>, BigUint> = HashMap::new();
            for (pos, cnt) in last {
                for step in &self.steps {
                    let mut q = Vec::with_capacity(self.k);
                    let mut ok = true;
                    for (p, s) in pos.iter().zip(step) {
                        let v = *p as i64 + s;
                        if v < 0 {
                            ok = false;
                            break;
                        }
                        q.push(v as u32);
                    }
                    if ok {
                        *next.entry(q).or_insert_with(BigUint::zero) += cnt;
                    }
                }
            }
            layers.push(next);
        }
        layers[time as usize]
            .get(position)
            .cloned()
            .unwrap_or_else(BigUint::zero)
    }

    /// Projected count: `index[0]` is the time, the rest fill the free
    /// coordinates in order; pinned coordinates are zero.
    pub fn count_projected(&self, index: &[u32]) -> BigUint {
        assert_eq!(index.len(), self.table_dim(), "dimension mismatch");
        let mut position = vec![0u32; self.k];
        let mut it = index[1..].iter();
        for (p, pinned) in self.project.iter().enumerate() {
            if !pinned {
                position[p] = *it.next().unwrap();
            }
        }
        self.count(index[0], &position)
    }

    /// View as a table over a specific field.
    pub fn as_source<F: Field>(&self, field: F) -> WalkSource<'_, F> {
        WalkSource { walk: self, field }
    }
}

pub struct WalkSource<'a, F: Field> {
    walk: &'a WalkTable,
    field: F,
}

impl<'a, F: Field> TableSource<F> for WalkSource<'a, F> {
    fn dim(&self) -> usize {
        self.walk.table_dim()
    }

    fn query(&self, index: &[u32]) -> Result<F::Elem> {
        Ok(self.field.from_biguint(&self.walk.count_projected(index)))
    }
}

/// Evaluates the bracket of a polynomial against a table:
/// the term `c * t^k * x^i` contributes `c * i^k * u_i` (componentwise
/// powers, with `0^0 = 1`).
pub fn bracket<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    g: &Poly<F>,
) -> Result<F::Elem> {
    let mut acc = field.zero();
    for (m, c) in g.terms() {
        let u = table.query(m.x_exponents())?;
        let mut term = field.mul(c, &u);
        for (p, &k) in m.t_exponents().iter().enumerate() {
            if k > 0 {
                let f = field.index_pow(m.x_exponents()[p] as u64, k);
                term = field.mul(&term, &f);
            }
        }
        acc = field.add(&acc, &term);
    }
    Ok(acc)
}

/// Bracket of a single monomial shifted by a pure-`x` monomial:
/// `[t^k x^(j+i)]_u` for column label `t^k x^j` and row label `x^i`.
pub fn bracket_monomial<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    col: &Monomial,
    row_shift: &Monomial,
) -> Result<F::Elem> {
    debug_assert!(row_shift.is_pure_x());
    let shifted = col.mul(row_shift);
    let u = table.query(shifted.x_exponents())?;
    let mut term = u;
    for (p, &k) in shifted.t_exponents().iter().enumerate() {
        if k > 0 {
            let f = field.index_pow(shifted.x_exponents()[p] as u64, k);
            term = field.mul(&term, &f);
        }
    }
    Ok(term)
}

#[cfg(test)]
pub(crate) mod testutil {
    use crate::field::{Field, PrimeField};

    /// `(5+4i+3j) 2^(i+j) + (3+6i+j) 5^(i+j)` in `GF(7)`.
    pub fn example_value(f: &PrimeField, i: u64, j: u64) -> u64 {
        let a = f.from_i64((5 + 4 * i + 3 * j) as i64);
        let b = f.from_i64((3 + 6 * i + j) as i64);
        let p2 = f.pow(&2, i + j);
        let p5 = f.pow(&5, i + j);
        f.add(&f.mul(&a, &p2), &f.mul(&b, &p5))
    }
}
