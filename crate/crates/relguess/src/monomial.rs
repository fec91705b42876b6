//! Monomials in `x_1..x_n` and `t_1..t_n`, monomial orderings, enumeration
//! and staircase manipulation.
//!
//! A monomial carries both exponent blocks; pure `x` monomials keep the `t`
//! block at zero. Orderings place every `t` variable below every `x`
//! variable, so LEX and DRL extend to the mixed setting and DRL enumerates
//! all mixed monomials in increasing order.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::{Error, Result};

/// Exponent vector over `x` (and optionally `t`) variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    t: Vec<u32>,
    x: Vec<u32>,
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.plain_string())
    }
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            t: vec![0; nvars],
            x: vec![0; nvars],
        }
    }

    /// The variable `x_{p+1}` (0-based index `p`).
    pub fn x_var(nvars: usize, p: usize) -> Self {
        Self::x_power(nvars, p, 1)
    }

    pub fn x_power(nvars: usize, p: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.x[p] = e;
        m
    }

    pub fn from_x(x: Vec<u32>) -> Self {
        Monomial {
            t: vec![0; x.len()],
            x,
        }
    }

    pub fn from_tx(t: Vec<u32>, x: Vec<u32>) -> Self {
        assert_eq!(t.len(), x.len(), "t and x blocks must have equal length");
        Monomial { t, x }
    }

    pub fn nvars(&self) -> usize {
        self.x.len()
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn t_exponents(&self) -> &[u32] {
        &self.t
    }

    pub fn is_one(&self) -> bool {
        self.t.iter().all(|&e| e == 0) && self.x.iter().all(|&e| e == 0)
    }

    pub fn is_pure_x(&self) -> bool {
        self.t.iter().all(|&e| e == 0)
    }

    /// The pure-`x` part, dropping all `t` exponents.
    pub fn x_part(&self) -> Monomial {
        Monomial::from_x(self.x.clone())
    }

    pub fn x_degree(&self) -> u64 {
        self.x.iter().map(|&e| e as u64).sum()
    }

    pub fn t_degree(&self) -> u64 {
        self.t.iter().map(|&e| e as u64).sum()
    }

    pub fn total_degree(&self) -> u64 {
        self.x_degree() + self.t_degree()
    }

    /// Commutative product: exponents add. Overflow is a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        let add = |a: &[u32], b: &[u32]| {
            a.iter()
                .zip(b)
                .map(|(&p, &q)| p.checked_add(q).expect("monomial exponent overflow"))
                .collect::<Vec<_>>()
        };
        Monomial {
            t: add(&self.t, &other.t),
            x: add(&self.x, &other.x),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.nvars() == other.nvars()
            && self.t.iter().zip(&other.t).all(|(a, b)| a <= b)
            && self.x.iter().zip(&other.x).all(|(a, b)| a <= b)
    }

    pub fn try_div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial {
            t: self.t.iter().zip(&divisor.t).map(|(a, b)| a - b).collect(),
            x: self.x.iter().zip(&divisor.x).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.nvars(), other.nvars(), "variable count mismatch");
        Monomial {
            t: self.t.iter().zip(&other.t).map(|(a, b)| *a.max(b)).collect(),
            x: self.x.iter().zip(&other.x).map(|(a, b)| *a.max(b)).collect(),
        }
    }

    /// Debug rendering with canonical `t#`/`x#` names.
    pub fn plain_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.t.iter().enumerate() {
            if e == 1 {
                parts.push(format!("t{}", i + 1));
            } else if e > 1 {
                parts.push(format!("t{}^{}", i + 1, e));
            }
        }
        for (i, &e) in self.x.iter().enumerate() {
            if e == 1 {
                parts.push(format!("x{}", i + 1));
            } else if e > 1 {
                parts.push(format!("x{}^{}", i + 1, e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    Drl,
}

/// A monomial ordering: LEX or DRL over a significance permutation of the
/// `x` variables. Mixed monomials order with every `t` below every `x`; the
/// `t` block reuses the same significance pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Variable indices from most significant to least significant.
    sig: Vec<usize>,
}

impl MonomialOrder {
    /// Default significance `x_1 > x_2 > ... > x_n` (the chain
    /// `x_n < ... < x_1`).
    pub fn new(kind: OrderKind, nvars: usize) -> Self {
        MonomialOrder {
            kind,
            sig: (0..nvars).collect(),
        }
    }

    /// `sig[0]` is the most significant variable index.
    pub fn with_significance(kind: OrderKind, sig: Vec<usize>) -> Result<Self> {
        let n = sig.len();
        let mut seen = vec![false; n];
        for &v in &sig {
            if v >= n || seen[v] {
                return Err(Error::Invalid(format!("bad variable permutation {sig:?}")));
            }
            seen[v] = true;
        }
        Ok(MonomialOrder { kind, sig })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.sig.len()
    }

    /// Index of the least significant variable (`x_n` in the chain
    /// `x_n < ... < x_1`).
    pub fn least_variable(&self) -> usize {
        *self.sig.last().expect("order over zero variables")
    }

    pub fn significance(&self) -> &[usize] {
        &self.sig
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.nvars(), self.sig.len(), "variable count mismatch");
        assert_eq!(b.nvars(), self.sig.len(), "variable count mismatch");
        match self.kind {
            OrderKind::Lex => {
                // x block first (most significant), then t block
                for &v in &self.sig {
                    match a.x[v].cmp(&b.x[v]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                for &v in &self.sig {
                    match a.t[v].cmp(&b.t[v]) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Drl => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // reverse scan from the least significant position; the
                // monomial with the larger exponent at the first difference
                // is the smaller one
                for &v in self.sig.iter().rev() {
                    match a.t[v].cmp(&b.t[v]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                for &v in self.sig.iter().rev() {
                    match a.x[v].cmp(&b.x[v]) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn sort(&self, monos: &mut [Monomial]) {
        monos.sort_by(|a, b| self.compare(a, b));
    }

    pub fn max<'a>(&self, monos: impl IntoIterator<Item = &'a Monomial>) -> Option<&'a Monomial> {
        monos.into_iter().max_by(|a, b| self.compare(a, b))
    }
}

/// Size bound for monomial enumeration.
#[derive(Clone, Debug)]
pub enum EnumBound {
    /// All monomials of total `x` degree at most the bound.
    TotalDegree(u32),
    /// Per-variable exponent caps (inclusive).
    Caps(Vec<u32>),
}

impl EnumBound {
    fn admits(&self, exps: &[u32]) -> bool {
        match self {
            EnumBound::TotalDegree(d) => exps.iter().map(|&e| e as u64).sum::<u64>() <= *d as u64,
            EnumBound::Caps(caps) => exps.iter().zip(caps).all(|(e, c)| e <= c),
        }
    }
}

fn tuples_within(n: usize, bound: &EnumBound) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(
        pos: usize,
        n: usize,
        bound: &EnumBound,
        cur: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == n {
            out.push(cur.clone());
            return;
        }
        let mut e = 0u32;
        loop {
            cur[pos] = e;
            if !bound.admits(&cur[..=pos]) && e > 0 {
                cur[pos] = 0;
                return;
            }
            if bound.admits(&cur[..=pos]) {
                rec(pos + 1, n, bound, cur, out);
            } else {
                cur[pos] = 0;
                return;
            }
            e += 1;
        }
    }
    rec(0, n, bound, &mut cur, &mut out);
    out
}

/// All pure-`x` monomials within `bound` passing `filter`, sorted increasing
/// for `order`. Every divisor (within the filtered set) of an emitted
/// monomial is emitted earlier because both orders refine divisibility.
pub fn enumerate_x<F>(
    order: &MonomialOrder,
    n: usize,
    bound: &EnumBound,
    filter: F,
) -> Vec<Monomial>
where
    F: Fn(&[u32]) -> bool,
{
    let mut monos: Vec<Monomial> = tuples_within(n, bound)
        .into_iter()
        .filter(|t| filter(t))
        .map(Monomial::from_x)
        .collect();
    order.sort(&mut monos);
    monos
}

/// Mixed `(t, x)` monomials: `x` part within `x_bound` and passing
/// `x_filter`, total `t` degree at most `t_degree_cap`. Sorted for `order`.
pub fn enumerate_mixed<F>(
    order: &MonomialOrder,
    n: usize,
    x_bound: &EnumBound,
    t_degree_cap: u32,
    x_filter: F,
) -> Vec<Monomial>
where
    F: Fn(&[u32]) -> bool,
{
    let x_tuples: Vec<Vec<u32>> = tuples_within(n, x_bound)
        .into_iter()
        .filter(|t| x_filter(t))
        .collect();
    let t_tuples = tuples_within(n, &EnumBound::TotalDegree(t_degree_cap));
    let mut monos = Vec::with_capacity(x_tuples.len() * t_tuples.len());
    for xs in &x_tuples {
        for ts in &t_tuples {
            monos.push(Monomial::from_tx(ts.clone(), xs.clone()));
        }
    }
    order.sort(&mut monos);
    monos
}

/// Increasing stream of pure-`x` monomials passing a filter.
///
/// DRL streams grow their degree bound lazily and never run dry; LEX streams
/// must be capped per variable up front, otherwise they are not well-ordered
/// in practice.
pub struct XStream<'a> {
    order: &'a MonomialOrder,
    filter: Box<dyn Fn(&[u32]) -> bool + 'a>,
    buffer: Vec<Monomial>,
    next: usize,
    degree: u32,
    capped: bool,
}

impl<'a> XStream<'a> {
    pub fn new<F>(
        order: &'a MonomialOrder,
        caps: Option<Vec<u32>>,
        filter: F,
    ) -> Result<XStream<'a>>
    where
        F: Fn(&[u32]) -> bool + 'a,
    {
        let n = order.nvars();
        match (order.kind, caps) {
            (OrderKind::Lex, None) => Err(Error::UnboundedLex),
            (_, Some(caps)) => {
                if caps.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: caps.len(),
                    });
                }
                let buffer = enumerate_x(order, n, &EnumBound::Caps(caps), &filter);
                Ok(XStream {
                    order,
                    filter: Box::new(filter),
                    buffer,
                    next: 0,
                    degree: 0,
                    capped: true,
                })
            }
            (OrderKind::Drl, None) => Ok(XStream {
                order,
                filter: Box::new(filter),
                buffer: Vec::new(),
                next: 0,
                degree: 0,
                capped: false,
            }),
        }
    }

    /// Next monomial in increasing order, or `None` when a capped stream is
    /// exhausted.
    pub fn next_monomial(&mut self) -> Option<Monomial> {
        loop {
            if self.next < self.buffer.len() {
                let m = self.buffer[self.next].clone();
                self.next += 1;
                return Some(m);
            }
            if self.capped {
                return None;
            }
            // grow the degree bound; keep only the fresh outer layer
            let prev = self.degree;
            self.degree += 8;
            let d = self.degree;
            let all = enumerate_x(
                self.order,
                self.order.nvars(),
                &EnumBound::TotalDegree(d),
                &self.filter,
            );
            let fresh: Vec<Monomial> = all
                .into_iter()
                .filter(|m| prev == 0 || m.x_degree() > prev as u64)
                .collect();
            self.buffer = fresh;
            self.next = 0;
        }
    }
}

/// First `count` pure-`x` universe monomials after skipping `skip`, in
/// increasing order.
pub fn first_n_x<F>(
    order: &MonomialOrder,
    caps: Option<Vec<u32>>,
    filter: F,
    count: usize,
    skip: usize,
) -> Result<Vec<Monomial>>
where
    F: Fn(&[u32]) -> bool,
{
    let mut stream = XStream::new(order, caps, filter)?;
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0usize;
    while out.len() < count {
        let Some(m) = stream.next_monomial() else { break };
        if skipped < skip {
            skipped += 1;
            continue;
        }
        out.push(m);
    }
    Ok(out)
}

/// First `count` mixed monomials whose `x` part passes the filter and whose
/// `t` degree is capped, in increasing order. Grows the enumeration bound
/// until the prefix is trustworthy.
pub fn first_n_mixed<F>(
    order: &MonomialOrder,
    filter: F,
    t_degree_cap: u32,
    count: usize,
) -> Result<Vec<Monomial>>
where
    F: Fn(&[u32]) -> bool,
{
    let n = order.nvars();
    let mut bound = 4u32;
    loop {
        let all = enumerate_mixed(order, n, &EnumBound::TotalDegree(bound), t_degree_cap, &filter);
        let safe: Vec<Monomial> = all
            .into_iter()
            .take_while(|m| m.total_degree() <= bound as u64)
            .collect();
        if safe.len() >= count {
            return Ok(safe.into_iter().take(count).collect());
        }
        if bound > 1 << 14 {
            return Err(Error::Invalid(format!(
                "cannot collect {count} mixed monomials"
            )));
        }
        bound *= 2;
    }
}

/// Augments `s` with every monomial of `t` that divides some element of `s`,
/// making the result division-closed within `t`. Output sorted for `order`.
pub fn staircase_close(
    order: &MonomialOrder,
    s: &[Monomial],
    t: &[Monomial],
) -> Vec<Monomial> {
    let have: HashSet<&Monomial> = s.iter().collect();
    let mut out: Vec<Monomial> = s.to_vec();
    for m in t {
        if !have.contains(m) && s.iter().any(|b| m.divides(b)) {
            out.push(m.clone());
        }
    }
    order.sort(&mut out);
    out
}

/// Checks division closure of `set` (over the full monomial universe):
/// for every member and every variable with positive exponent, the decrement
/// must be a member.
pub fn check_staircase(set: &[Monomial]) -> Result<()> {
    let have: HashSet<&Monomial> = set.iter().collect();
    for m in set {
        for p in 0..m.nvars() {
            for (block, is_t) in [(m.x_exponents(), false), (m.t_exponents(), true)] {
                if block[p] > 0 {
                    let mut d = m.clone();
                    if is_t {
                        d.t[p] -= 1;
                    } else {
                        d.x[p] -= 1;
                    }
                    if !have.contains(&d) {
                        return Err(Error::NotStaircase(format!(
                            "{} present but its divisor {} is missing",
                            m.plain_string(),
                            d.plain_string()
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Division closure within a cone universe: for every member `m` and every
/// factorization `m = a * b` with both parts in the universe, both parts must
/// be members.
pub fn check_staircase_in_cone(set: &[Monomial], cone: &crate::structures::Cone) -> Result<()> {
    let have: HashSet<&Monomial> = set.iter().collect();
    for m in set {
        let caps = EnumBound::Caps(m.x_exponents().to_vec());
        for a in tuples_within(m.nvars(), &caps) {
            if !cone.contains(&a) {
                continue;
            }
            let b: Vec<u32> = m
                .x_exponents()
                .iter()
                .zip(&a)
                .map(|(e, f)| e - f)
                .collect();
            if !cone.contains(&b) {
                continue;
            }
            let am = Monomial::from_x(a);
            if !have.contains(&am) {
                return Err(Error::NotStaircase(format!(
                    "{} present but its cone divisor {} is missing",
                    m.plain_string(),
                    am.plain_string()
                )));
            }
        }
    }
    Ok(())
}

/// Validates that `set` is strictly increasing for `order`.
pub fn check_sorted(order: &MonomialOrder, set: &[Monomial]) -> Result<()> {
    for w in set.windows(2) {
        if order.compare(&w[0], &w[1]) != Ordering::Less {
            return Err(Error::NotSorted);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m2(x0: u32, x1: u32) -> Monomial {
        Monomial::from_x(vec![x0, x1])
    }

    #[test]
    fn drl_compare_examples() {
        // DRL(y < x), x = var 0, y = var 1: xy < y^3 because of degrees
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        assert_eq!(drl.compare(&m2(1, 1), &m2(0, 3)), Ordering::Less);
        // within degree 2: y^2 < xy < x^2
        assert_eq!(drl.compare(&m2(0, 2), &m2(1, 1)), Ordering::Less);
        assert_eq!(drl.compare(&m2(1, 1), &m2(2, 0)), Ordering::Less);
    }

    #[test]
    fn lex_compare_examples() {
        // LEX(y < x): x > y^4
        let lex = MonomialOrder::new(OrderKind::Lex, 2);
        assert_eq!(lex.compare(&m2(1, 0), &m2(0, 4)), Ordering::Greater);
        // 1 < m for any m != 1
        for m in [m2(0, 1), m2(1, 0), m2(3, 2)] {
            assert_eq!(lex.compare(&Monomial::one(2), &m), Ordering::Less);
        }
    }

    #[test]
    fn mixed_drl_puts_t_below_x() {
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        let t1 = Monomial::from_tx(vec![1, 0], vec![0, 0]);
        let t2 = Monomial::from_tx(vec![0, 1], vec![0, 0]);
        let x = Monomial::from_tx(vec![0, 0], vec![1, 0]);
        let y = Monomial::from_tx(vec![0, 0], vec![0, 1]);
        // t2 < t1 < y < x at degree one
        assert_eq!(drl.compare(&t2, &t1), Ordering::Less);
        assert_eq!(drl.compare(&t1, &y), Ordering::Less);
        assert_eq!(drl.compare(&y, &x), Ordering::Less);
    }

    #[test]
    fn drl_enumeration_two_vars() {
        // 1, y, x, y^2, xy, x^2, ...
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        let ms = enumerate_x(&drl, 2, &EnumBound::TotalDegree(2), |_| true);
        let expect = vec![m2(0, 0), m2(0, 1), m2(1, 0), m2(0, 2), m2(1, 1), m2(2, 0)];
        assert_eq!(ms, expect);
    }

    #[test]
    fn filtered_enumeration_can_be_empty() {
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        let ms = enumerate_x(&drl, 2, &EnumBound::TotalDegree(5), |_| false);
        assert!(ms.is_empty());
    }

    #[test]
    fn lex_stream_requires_caps() {
        let lex = MonomialOrder::new(OrderKind::Lex, 2);
        assert!(matches!(
            XStream::new(&lex, None, |_| true),
            Err(Error::UnboundedLex)
        ));
        let mut s = XStream::new(&lex, Some(vec![2, 2]), |_| true).unwrap();
        assert_eq!(s.next_monomial().unwrap(), m2(0, 0));
        assert_eq!(s.next_monomial().unwrap(), m2(0, 1));
        assert_eq!(s.next_monomial().unwrap(), m2(0, 2));
        assert_eq!(s.next_monomial().unwrap(), m2(1, 0));
    }

    #[test]
    fn drl_stream_is_lazy_and_increasing() {
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        let mut s = XStream::new(&drl, None, |_| true).unwrap();
        let mut prev = s.next_monomial().unwrap();
        assert!(prev.is_one());
        for _ in 0..200 {
            let m = s.next_monomial().unwrap();
            assert_eq!(drl.compare(&prev, &m), Ordering::Less);
            prev = m;
        }
    }

    #[test]
    fn staircase_close_examples() {
        let drl = MonomialOrder::new(OrderKind::Drl, 1);
        let one = Monomial::one(1);
        let y = Monomial::x_power(1, 0, 1);
        let y2 = Monomial::x_power(1, 0, 2);
        // S = {1, y^2}, T = {1, y, y^2} -> {1, y, y^2}
        let closed = staircase_close(
            &drl,
            &[one.clone(), y2.clone()],
            &[one.clone(), y.clone(), y2.clone()],
        );
        assert_eq!(closed, vec![one.clone(), y.clone(), y2.clone()]);
        // S = {1} stays {1}
        let closed = staircase_close(&drl, &[one.clone()], &[one.clone(), y, y2]);
        assert_eq!(closed, vec![one]);
    }

    #[test]
    fn staircase_check_catches_gaps() {
        let one = Monomial::one(2);
        let x = m2(1, 0);
        let x2 = m2(2, 0);
        assert!(check_staircase(&[one.clone(), x.clone(), x2.clone()]).is_ok());
        assert!(check_staircase(&[one, x2]).is_err());
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_overflow_is_fatal() {
        let a = Monomial::x_power(1, 0, u32::MAX);
        let b = Monomial::x_power(1, 0, 1);
        let _ = a.mul(&b);
    }

    proptest! {
        // multiplicativity: a < b implies ac < bc
        #[test]
        fn order_multiplicative(
            ax in proptest::collection::vec(0u32..6, 3),
            bx in proptest::collection::vec(0u32..6, 3),
            cx in proptest::collection::vec(0u32..6, 3),
            kind in prop_oneof![Just(OrderKind::Lex), Just(OrderKind::Drl)],
        ) {
            let order = MonomialOrder::new(kind, 3);
            let a = Monomial::from_x(ax);
            let b = Monomial::from_x(bx);
            let c = Monomial::from_x(cx);
            let ord = order.compare(&a, &b);
            prop_assert_eq!(order.compare(&a.mul(&c), &b.mul(&c)), ord);
        }

        // 1 <= m, totality and antisymmetry on samples
        #[test]
        fn order_axioms(
            ax in proptest::collection::vec(0u32..6, 2),
            bx in proptest::collection::vec(0u32..6, 2),
            kind in prop_oneof![Just(OrderKind::Lex), Just(OrderKind::Drl)],
        ) {
            let order = MonomialOrder::new(kind, 2);
            let a = Monomial::from_x(ax);
            let b = Monomial::from_x(bx);
            let one = Monomial::one(2);
            prop_assert_ne!(order.compare(&one, &a), Ordering::Greater);
            prop_assert_eq!(order.compare(&a, &b), order.compare(&b, &a).reverse());
            prop_assert_eq!(order.compare(&a, &b) == Ordering::Equal, a == b);
        }

        // enumeration is strictly increasing and divisor-complete
        #[test]
        fn enumeration_divisor_complete(d in 1u32..6) {
            let drl = MonomialOrder::new(OrderKind::Drl, 2);
            let ms = enumerate_x(&drl, 2, &EnumBound::TotalDegree(d), |_| true);
            for (i, m) in ms.iter().enumerate() {
                for (j, dvs) in ms.iter().enumerate() {
                    if dvs.divides(m) && dvs != m {
                        prop_assert!(j < i);
                    }
                }
            }
        }
    }
}
