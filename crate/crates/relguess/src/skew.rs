//! Quasi-commutative arithmetic in `K[t]<x>` under `t_p x_p = x_p (t_p + 1)`,
//! right-ideal S-polynomials and a small truncated Buchberger procedure with
//! cone restriction and group-homogeneity filtering.
//!
//! Monomials are kept in the normal form `t^k x^i`. The product of two
//! monomials expands by `t^l x^j * t^k x^i = t^l (t - j)^k x^(j+i)`. Ideals
//! of relations are right ideals, so reducers and S-polynomial multipliers
//! always act on the right; scalars are the only two-sided units used for
//! normalization.

use crate::field::Field;
use crate::monomial::{enumerate_x, EnumBound, Monomial, MonomialOrder};
use crate::poly::Poly;
use crate::structures::{Cone, GDegreeMap};
use crate::{Error, Result};

/// Pascal-triangle binomials as field elements, rows `0..=n`.
fn binomial_rows<F: Field>(field: &F, n: u32) -> Vec<Vec<F::Elem>> {
    let mut rows: Vec<Vec<F::Elem>> = vec![vec![field.one()]];
    for k in 1..=n as usize {
        let prev = &rows[k - 1];
        let mut row = Vec::with_capacity(k + 1);
        row.push(field.one());
        for i in 1..k {
            row.push(field.add(&prev[i - 1], &prev[i]));
        }
        row.push(field.one());
        rows.push(row);
    }
    rows
}

/// Product of two monomials as a polynomial:
/// `t^l x^j * t^k x^i = t^l (t-j)^k x^(j+i)`.
pub fn skew_mul_monomials<F: Field>(field: &F, a: &Monomial, b: &Monomial) -> Poly<F> {
    let n = a.nvars();
    assert_eq!(n, b.nvars(), "variable count mismatch");
    let x_out: Vec<u32> = a
        .x_exponents()
        .iter()
        .zip(b.x_exponents())
        .map(|(p, q)| p.checked_add(*q).expect("monomial exponent overflow"))
        .collect();
    let kmax = *b.t_exponents().iter().max().unwrap_or(&0);
    let binom = binomial_rows(field, kmax);
    // expand prod_p (t_p - j_p)^{k_p}
    let mut terms: Vec<(Vec<u32>, F::Elem)> = vec![(vec![0u32; n], field.one())];
    for p in 0..n {
        let k = b.t_exponents()[p];
        if k == 0 {
            continue;
        }
        let j = a.x_exponents()[p];
        let neg_j = field.from_i64(-(j as i64));
        let mut next = Vec::with_capacity(terms.len() * (k as usize + 1));
        for (texp, coeff) in &terms {
            for q in 0..=k {
                let mut e = texp.clone();
                e[p] += q;
                let c = field.mul(
                    coeff,
                    &field.mul(&binom[k as usize][q as usize], &field.pow(&neg_j, (k - q) as u64)),
                );
                next.push((e, c));
            }
        }
        terms = next;
    }
    let mut out = Poly::zero(n);
    for (mut texp, coeff) in terms {
        for (e, la) in texp.iter_mut().zip(a.t_exponents()) {
            *e = e.checked_add(*la).expect("monomial exponent overflow");
        }
        out.add_term(field, Monomial::from_tx(texp, x_out.clone()), coeff);
    }
    out
}

/// Quasi-commutative product; associative and distributive, restricting to
/// the commutative product on pure-`x` inputs.
pub fn skew_mul<F: Field>(field: &F, f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let mut out = Poly::zero(f.nvars());
    for (fm, fc) in f.terms() {
        for (gm, gc) in g.terms() {
            let prod = skew_mul_monomials(field, fm, gm);
            let c = field.mul(fc, gc);
            for (m, pc) in prod.terms() {
                out.add_term(field, m.clone(), field.mul(pc, &c));
            }
        }
    }
    out
}

/// The common degree of all monomials, or `None` when mixed.
pub fn is_g_homogeneous<F: Field>(poly: &Poly<F>, gmap: &GDegreeMap) -> Option<Vec<u32>> {
    let mut common: Option<Vec<u32>> = None;
    for (m, _) in poly.terms() {
        let d = gmap.degree(m);
        match &common {
            None => common = Some(d),
            Some(c) if *c != d => return None,
            _ => {}
        }
    }
    common
}

/// Monomial universe for the right-ideal operations: multipliers have free
/// `t` part and `x` part constrained to the cone when one is given.
fn multiplier_in_universe(cone: Option<&Cone>, m: &Monomial) -> bool {
    cone.map_or(true, |c| c.contains(m.x_exponents()))
}

/// Right-divisibility within the universe: `m = d * q` with `q` admissible.
fn universe_right_div(cone: Option<&Cone>, d: &Monomial, m: &Monomial) -> Option<Monomial> {
    let q = m.try_div(d)?;
    multiplier_in_universe(cone, &q).then_some(q)
}

/// Least common multiple of two leading monomials within the universe.
///
/// The componentwise lcm works whenever its multipliers stay admissible;
/// otherwise small cone translates of it are scanned. `None` means no common
/// multiple was found within the degree budget.
fn universe_lcm(
    order: &MonomialOrder,
    cone: Option<&Cone>,
    a: &Monomial,
    b: &Monomial,
    budget: u64,
) -> Option<Monomial> {
    let plain = a.lcm(b);
    if universe_right_div(cone, a, &plain).is_some()
        && universe_right_div(cone, b, &plain).is_some()
    {
        return Some(plain);
    }
    let cone = cone?;
    let n = a.nvars();
    let room = budget.saturating_sub(plain.total_degree());
    if room == 0 {
        return None;
    }
    let shifts = enumerate_x(order, n, &EnumBound::TotalDegree(room as u32), |e| {
        cone.contains(e)
    });
    for s in shifts {
        let cand = plain.mul(&s);
        if universe_right_div(Some(cone), a, &cand).is_some()
            && universe_right_div(Some(cone), b, &cand).is_some()
        {
            return Some(cand);
        }
    }
    None
}

/// S-polynomial with right multipliers chosen in the universe; the leading
/// terms cancel.
pub fn skew_spoly<F: Field>(
    field: &F,
    f: &Poly<F>,
    g: &Poly<F>,
    order: &MonomialOrder,
    cone: Option<&Cone>,
) -> Result<Poly<F>> {
    let lmf = f
        .leading_monomial(order)
        .ok_or_else(|| Error::Invalid("S-polynomial of zero".into()))?
        .clone();
    let lmg = g
        .leading_monomial(order)
        .ok_or_else(|| Error::Invalid("S-polynomial of zero".into()))?
        .clone();
    let budget = lmf.total_degree() + lmg.total_degree() + 8;
    let lcm = universe_lcm(order, cone, &lmf, &lmg, budget).ok_or_else(|| {
        Error::Invalid(format!(
            "no common multiple of {} and {} in the universe",
            lmf.plain_string(),
            lmg.plain_string()
        ))
    })?;
    let mf = universe_right_div(cone, &lmf, &lcm).expect("checked by universe_lcm");
    let mg = universe_right_div(cone, &lmg, &lcm).expect("checked by universe_lcm");
    let fa = skew_mul(field, f, &Poly::monomial(f.nvars(), mf, field.inv(f.coefficient(&lmf).unwrap())?));
    let gb = skew_mul(field, g, &Poly::monomial(g.nvars(), mg, field.inv(g.coefficient(&lmg).unwrap())?));
    Ok(fa.sub(field, &gb))
}

/// Remainder of a full right-reduction plus the right multipliers used per
/// basis element, so `h = r + sum basis_i * used_i`.
pub fn reduce_full<F: Field>(
    field: &F,
    h: &Poly<F>,
    basis: &[Poly<F>],
    order: &MonomialOrder,
    cone: Option<&Cone>,
) -> (Poly<F>, Vec<Poly<F>>) {
    let n = h.nvars();
    let mut rem = h.clone();
    let mut used: Vec<Poly<F>> = vec![Poly::zero(n); basis.len()];
    'outer: loop {
        if rem.is_zero() {
            break;
        }
        // scan monomials from the largest down for a reducible one
        let mut monos: Vec<Monomial> = rem.terms().map(|(m, _)| m.clone()).collect();
        monos.sort_by(|a, b| order.compare(b, a));
        for m in monos {
            for (i, b) in basis.iter().enumerate() {
                let Some(lmb) = b.leading_monomial(order) else {
                    continue;
                };
                if let Some(q) = universe_right_div(cone, lmb, &m) {
                    let c = rem.coefficient(&m).unwrap().clone();
                    let factor = field
                        .div(&c, b.coefficient(lmb).unwrap())
                        .expect("leading coefficient is nonzero");
                    let mult = Poly::monomial(n, q, factor);
                    rem = rem.sub(field, &skew_mul(field, b, &mult));
                    used[i] = used[i].add(field, &mult);
                    continue 'outer;
                }
            }
        }
        break;
    }
    (rem, used)
}

/// Options for the truncated right-ideal Buchberger run.
#[derive(Clone, Debug)]
pub struct SkewOpts {
    pub cone: Option<Cone>,
    pub gmap: Option<GDegreeMap>,
    /// Total-degree budget on S-polynomial least common multiples.
    pub max_degree: u64,
}

impl Default for SkewOpts {
    fn default() -> Self {
        SkewOpts {
            cone: None,
            gmap: None,
            max_degree: 24,
        }
    }
}

/// Output basis with its provenance: each element carries the right
/// multipliers expressing it as a combination of the input generators.
pub struct SkewBasis<F: Field> {
    pub basis: Vec<Poly<F>>,
    /// `combinations[i][j]`: multiplier of generator `j` in basis element
    /// `i`.
    pub combinations: Vec<Vec<Poly<F>>>,
    /// Some S-polynomial exceeded the degree budget.
    pub truncated: bool,
}

impl<F: Field> SkewBasis<F> {
    /// Replays the stored combinations against the generators.
    pub fn verify_combinations(&self, field: &F, gens: &[Poly<F>]) -> bool {
        self.basis.iter().zip(&self.combinations).all(|(b, comb)| {
            let mut acc = Poly::zero(b.nvars());
            for (g, m) in gens.iter().zip(comb) {
                acc = acc.add(field, &skew_mul(field, g, m));
            }
            acc == *b
        })
    }
}

/// Truncated right-ideal Gröbner basis, interreduced; supports stay in the
/// cone universe and stay homogeneous for the group degree when those
/// structures are given.
pub fn skew_buchberger<F: Field>(
    field: &F,
    gens: &[Poly<F>],
    order: &MonomialOrder,
    opts: &SkewOpts,
) -> Result<SkewBasis<F>> {
    let n = order.nvars();
    let cone = opts.cone.as_ref();
    if let Some(gmap) = &opts.gmap {
        for g in gens {
            if !g.is_zero() && is_g_homogeneous(g, gmap).is_none() {
                return Err(Error::NotGHomogeneous(format!(
                    "generator with {} terms mixes group degrees",
                    g.num_terms()
                )));
            }
        }
    }
    let check_support = |p: &Poly<F>| -> Result<()> {
        if let Some(c) = cone {
            for (m, _) in p.terms() {
                if !c.contains(m.x_exponents()) {
                    return Err(Error::Invalid(format!(
                        "support left the cone at {}",
                        m.plain_string()
                    )));
                }
            }
        }
        Ok(())
    };

    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut combos: Vec<Vec<Poly<F>>> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        check_support(g)?;
        let lc = g.leading_coefficient(order).unwrap().clone();
        let inv = field.inv(&lc)?;
        basis.push(g.scale(field, &inv));
        let mut comb = vec![Poly::zero(n); gens.len()];
        comb[i] = Poly::monomial(n, Monomial::one(n), inv);
        combos.push(comb);
    }

    let mut truncated = false;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let mut best = 0usize;
        let mut best_lcm: Option<Monomial> = None;
        for (idx, (i, j)) in pairs.iter().enumerate() {
            let l = basis[*i]
                .leading_monomial(order)
                .unwrap()
                .lcm(basis[*j].leading_monomial(order).unwrap());
            if best_lcm
                .as_ref()
                .map_or(true, |bl| order.compare(&l, bl) == std::cmp::Ordering::Less)
            {
                best_lcm = Some(l);
                best = idx;
            }
        }
        let (i, j) = pairs.remove(best);
        let lmi = basis[i].leading_monomial(order).unwrap().clone();
        let lmj = basis[j].leading_monomial(order).unwrap().clone();
        // product criterion on the commutative pure-x part
        if lmi.is_pure_x()
            && lmj.is_pure_x()
            && lmi
                .x_exponents()
                .iter()
                .zip(lmj.x_exponents())
                .all(|(a, b)| *a.min(b) == 0)
        {
            continue;
        }
        let lcm = best_lcm.unwrap();
        if lcm.total_degree() > opts.max_degree {
            truncated = true;
            continue;
        }
        let Ok(spoly) = skew_spoly(field, &basis[i], &basis[j], order, cone) else {
            // no common multiple inside the cone universe
            continue;
        };
        if let Some(gmap) = &opts.gmap {
            if !spoly.is_zero() && is_g_homogeneous(&spoly, gmap).is_none() {
                return Err(Error::NotGHomogeneous(
                    "S-polynomial mixes group degrees".into(),
                ));
            }
        }
        let (rem, used) = reduce_full(field, &spoly, &basis, order, cone);
        if rem.is_zero() {
            continue;
        }
        check_support(&rem)?;
        if rem.leading_monomial(order).unwrap().total_degree() > opts.max_degree {
            truncated = true;
            continue;
        }
        // trace: rem = b_i * (m_i / lc_i) - b_j * (m_j / lc_j) - sum b_k used_k
        let mfi = universe_right_div(cone, &lmi, &lcm).unwrap();
        let mfj = universe_right_div(cone, &lmj, &lcm).unwrap();
        let mut comb = vec![Poly::zero(n); gens.len()];
        let add_scaled = |comb: &mut Vec<Poly<F>>, src: usize, mult: &Poly<F>, combos: &Vec<Vec<Poly<F>>>| {
            for (dst, base) in comb.iter_mut().zip(&combos[src]) {
                if !base.is_zero() && !mult.is_zero() {
                    *dst = dst.add(field, &skew_mul(field, base, mult));
                }
            }
        };
        add_scaled(&mut comb, i, &Poly::monomial(n, mfi, field.one()), &combos);
        add_scaled(
            &mut comb,
            j,
            &Poly::monomial(n, mfj, field.neg(&field.one())),
            &combos,
        );
        for (k, u) in used.iter().enumerate() {
            if !u.is_zero() {
                let negu = u.scale(field, &field.neg(&field.one()));
                add_scaled(&mut comb, k, &negu, &combos);
            }
        }
        let lc = rem.leading_coefficient(order).unwrap().clone();
        let inv = field.inv(&lc)?;
        let rem = rem.scale(field, &inv);
        let comb: Vec<Poly<F>> = comb.iter().map(|c| c.scale(field, &inv)).collect();
        basis.push(rem);
        combos.push(comb);
        let new = basis.len() - 1;
        for k in 0..new {
            pairs.push((k, new));
        }
    }

    // interreduce: drop elements whose leading monomial is a universe
    // multiple of another's, then tail-reduce the survivors
    let mut keep: Vec<usize> = (0..basis.len()).collect();
    keep.sort_by(|&a, &b| {
        order.compare(
            basis[a].leading_monomial(order).unwrap(),
            basis[b].leading_monomial(order).unwrap(),
        )
    });
    let mut kept: Vec<usize> = Vec::new();
    for idx in keep {
        let lm = basis[idx].leading_monomial(order).unwrap();
        if !kept.iter().any(|&k| {
            universe_right_div(cone, basis[k].leading_monomial(order).unwrap(), lm).is_some()
        }) {
            kept.push(idx);
        }
    }
    let mut out_basis: Vec<Poly<F>> = Vec::new();
    let mut out_combos: Vec<Vec<Poly<F>>> = Vec::new();
    for &idx in &kept {
        let others: Vec<Poly<F>> = kept
            .iter()
            .filter(|&&k| k != idx)
            .map(|&k| basis[k].clone())
            .collect();
        let (mut red, used) = reduce_full(field, &basis[idx], &others, order, cone);
        // head terms never reduce thanks to the divisibility filter above
        let mut comb = combos[idx].clone();
        let mut oi = 0usize;
        for &k in kept.iter().filter(|&&k| k != idx) {
            let u = &used[oi];
            oi += 1;
            if u.is_zero() {
                continue;
            }
            let negu = u.scale(field, &field.neg(&field.one()));
            for (dst, base) in comb.iter_mut().zip(&combos[k]) {
                if !base.is_zero() {
                    *dst = dst.add(field, &skew_mul(field, base, &negu));
                }
            }
        }
        if !red.is_zero() {
            let lc = red.leading_coefficient(order).unwrap().clone();
            let inv = field.inv(&lc)?;
            red = red.scale(field, &inv);
            let comb: Vec<Poly<F>> = comb.iter().map(|c| c.scale(field, &inv)).collect();
            out_basis.push(red);
            out_combos.push(comb);
        }
    }

    if let Some(gmap) = &opts.gmap {
        for b in &out_basis {
            if is_g_homogeneous(b, gmap).is_none() {
                return Err(Error::NotGHomogeneous(
                    "basis element mixes group degrees".into(),
                ));
            }
        }
    }
    for b in &out_basis {
        check_support(b)?;
    }
    Ok(SkewBasis {
        basis: out_basis,
        combinations: out_combos,
        truncated,
    })
}
