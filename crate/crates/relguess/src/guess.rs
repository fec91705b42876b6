//! The guessing algorithms: batch and adaptive, plain and lattice, plus
//! kernel-based guessing of relations with polynomial coefficients and
//! fake-relation classification.
//!
//! Batch mode computes the column rank profile of `H_{T,T}`, stabilizes it
//! into a staircase and solves one linear system per minimal leading
//! monomial. Adaptive mode grows a full-rank matrix one monomial at a time,
//! emitting a relation whenever the new column fails to increase the rank.
//! Cone mode draws candidate monomials from the cone only; lattice mode runs
//! one matrix per coset of the fundamental domain, always carrying the row
//! and column labeled 1.

use crate::field::Field;
use crate::hankel::{
    relation_poly, Elimination, MultiHankelMatrix, PushOutcome,
};
use crate::monomial::{
    check_sorted, check_staircase, check_staircase_in_cone, Monomial, MonomialOrder, XStream,
};
use crate::poly::Poly;
use crate::structures::{Cone, Lattice};
use crate::tables::{bracket_monomial, CountingSource, TableSource};
use crate::{par, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationStatus {
    Unverified,
    CorrectSoFar,
    Fake,
}

#[derive(Clone, Debug)]
pub struct Relation<F: Field> {
    pub poly: Poly<F>,
    pub leading: Monomial,
    pub status: RelationStatus,
}

/// One per-coset matrix kept for inspection.
#[derive(Clone, Debug)]
pub struct CosetDetail<F: Field> {
    pub representative: Vec<u32>,
    pub matrix: MultiHankelMatrix<F>,
    pub profile: Vec<Monomial>,
}

/// One adaptive step: the square matrix that was tested and what happened.
#[derive(Clone, Debug)]
pub struct TraceStep<F: Field> {
    pub coset: Option<Vec<u32>>,
    pub candidate: Monomial,
    pub labels: Vec<Monomial>,
    pub matrix: Vec<Vec<F::Elem>>,
    pub full_rank: bool,
    pub relation: Option<Poly<F>>,
}

#[derive(Clone, Debug)]
pub struct GuessReport<F: Field> {
    pub relations: Vec<Relation<F>>,
    pub staircase: Vec<Monomial>,
    /// Distinct table indices read while guessing.
    pub query_count: usize,
    /// Row/column shape per matrix built (one per coset in lattice mode).
    pub matrix_shapes: Vec<(usize, usize)>,
    /// Set when the input table gave no information (all-zero matrix).
    pub degenerate: bool,
    pub details: Vec<CosetDetail<F>>,
    pub trace: Vec<TraceStep<F>>,
}

impl<F: Field> GuessReport<F> {
    fn new() -> Self {
        GuessReport {
            relations: Vec::new(),
            staircase: Vec::new(),
            query_count: 0,
            matrix_shapes: Vec::new(),
            degenerate: false,
            details: Vec::new(),
            trace: Vec::new(),
        }
    }

    /// Canonical text form used for report diffing; stable across worker
    /// counts.
    pub fn canonical_text(&self, field: &F, names: &crate::io::VarNames) -> String {
        let mut out = String::new();
        out.push_str("relations:\n");
        for r in &self.relations {
            let status = match r.status {
                RelationStatus::Unverified => "unverified",
                RelationStatus::CorrectSoFar => "correct-so-far",
                RelationStatus::Fake => "fake",
            };
            out.push_str(&format!(
                "  {} [{}]\n",
                crate::io::format_poly(field, &r.poly, names),
                status
            ));
        }
        out.push_str("staircase:");
        for s in &self.staircase {
            out.push(' ');
            out.push_str(&names.monomial(s));
        }
        out.push('\n');
        out.push_str(&format!("queries: {}\n", self.query_count));
        out.push_str(&format!("shapes: {:?}\n", self.matrix_shapes));
        out
    }
}

/// Options shared by the guessers.
#[derive(Clone, Debug)]
pub struct GuessOpts {
    /// Restrict the monomial universe to this cone.
    pub cone: Option<Cone>,
    /// Extra verification rows beyond the square part.
    pub extra_rows: usize,
    /// Adaptive modes stop once the staircase reaches this size.
    pub max_staircase: usize,
    /// Per-variable caps for enumerated candidate streams (required for LEX).
    pub caps: Option<Vec<u32>>,
    /// Keep the per-coset matrices in the report.
    pub record_details: bool,
    /// Keep the adaptive step trace in the report.
    pub record_trace: bool,
}

impl Default for GuessOpts {
    fn default() -> Self {
        GuessOpts {
            cone: None,
            extra_rows: 0,
            max_staircase: 1 << 20,
            caps: None,
            record_details: false,
            record_trace: false,
        }
    }
}

fn universe_divides(cone: Option<&Cone>, d: &Monomial, m: &Monomial) -> bool {
    match m.try_div(d) {
        None => false,
        Some(q) => match cone {
            None => true,
            Some(c) => c.contains(q.x_exponents()),
        },
    }
}

/// Validates that `t_set` is sorted and division-closed for the active
/// universe.
fn validate_t_set(order: &MonomialOrder, t_set: &[Monomial], cone: Option<&Cone>) -> Result<()> {
    check_sorted(order, t_set)?;
    match cone {
        None => check_staircase(t_set),
        Some(c) => {
            for m in t_set {
                if !c.contains(m.x_exponents()) {
                    return Err(Error::Invalid(format!(
                        "{} is not in the cone",
                        m.plain_string()
                    )));
                }
            }
            check_staircase_in_cone(t_set, c)
        }
    }
}

/// Extra row labels past the greatest element of `t_set`, drawn from the
/// universe stream.
fn extension_rows(
    order: &MonomialOrder,
    t_set: &[Monomial],
    opts: &GuessOpts,
    count: usize,
) -> Result<Vec<Monomial>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let cone = opts.cone.clone();
    let filter = move |e: &[u32]| cone.as_ref().map_or(true, |c| c.contains(e));
    let mut stream = XStream::new(order, opts.caps.clone(), filter)?;
    let mut out = Vec::new();
    let in_t: std::collections::HashSet<&Monomial> = t_set.iter().collect();
    while out.len() < count {
        let Some(m) = stream.next_monomial() else {
            break;
        };
        if !in_t.contains(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Batch guesser: rank profile of `H_{T,T}` (with an optional row buffer),
/// staircase stabilization, then one solve per minimal leading monomial. In
/// cone mode `T` must lie in the cone and the support of every output does
/// too.
pub fn sfglm<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    t_set: &[Monomial],
    opts: &GuessOpts,
) -> Result<GuessReport<F>> {
    validate_t_set(order, t_set, opts.cone.as_ref())?;
    let counting = CountingSource::new(table);
    let mut report = GuessReport::new();
    if t_set.is_empty() {
        return Ok(report);
    }

    let mut rows = t_set.to_vec();
    rows.extend(extension_rows(order, t_set, opts, opts.extra_rows)?);
    let h = MultiHankelMatrix::build(field, &counting, &rows, t_set)?;
    report.matrix_shapes.push((rows.len(), t_set.len()));

    let mut elim = Elimination::new(field.clone(), rows.len());
    let mut profile: Vec<Monomial> = Vec::new();
    let mut profile_cols: Vec<usize> = Vec::new();
    for j in 0..t_set.len() {
        if let PushOutcome::Independent = elim.push_column(h.column(j)) {
            profile.push(t_set[j].clone());
            profile_cols.push(j);
        }
    }
    report.degenerate = profile.is_empty();

    let staircase = crate::monomial::staircase_close(order, &profile, t_set);

    // relations: smallest leading monomials outside the staircase
    let mut pending: Vec<Monomial> = t_set
        .iter()
        .filter(|m| !staircase.contains(m))
        .cloned()
        .collect();
    let mut relations: Vec<Relation<F>> = Vec::new();
    while let Some(g) = pending.first().cloned() {
        pending.remove(0);
        let column: Vec<F::Elem> = rows
            .iter()
            .map(|r| bracket_monomial(field, &counting, &g, r))
            .collect::<Result<_>>()?;
        let gamma = match elim.push_column(column) {
            PushOutcome::Dependent(expr) => expr.iter().map(|c| field.neg(c)).collect::<Vec<_>>(),
            PushOutcome::Independent => {
                return Err(Error::Singular(format!(
                    "column {} escaped the rank profile",
                    g.plain_string()
                )))
            }
        };
        let poly = relation_poly(field, &profile, &gamma, &g);
        debug_assert!(crate::hankel::verify_relation(field, &counting, &poly, &rows)?);
        relations.push(Relation {
            poly,
            leading: g.clone(),
            status: RelationStatus::Unverified,
        });
        pending.retain(|m| !universe_divides(opts.cone.as_ref(), &g, m));
    }

    if opts.record_details {
        report.details.push(CosetDetail {
            representative: vec![0; order.nvars()],
            matrix: h,
            profile: profile.clone(),
        });
    }
    report.relations = relations;
    report.staircase = staircase;
    report.query_count = counting.distinct_queries();
    Ok(report)
}

/// Lattice guesser: partitions `T` over the cosets of the fundamental
/// domain, computes one rank profile per coset on the 1-augmented matrix,
/// merges and stabilizes the staircases, and solves each relation inside its
/// own coset. Every output polynomial has support in `{1}` union one coset.
pub fn lattice_sfglm<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    t_set: &[Monomial],
    lattice: &Lattice,
    opts: &GuessOpts,
) -> Result<GuessReport<F>> {
    check_sorted(order, t_set)?;
    check_staircase(t_set)?;
    if lattice.dim() != order.nvars() {
        return Err(Error::DimensionMismatch {
            expected: order.nvars(),
            got: lattice.dim(),
        });
    }
    let counting = CountingSource::new(table);
    let mut report = GuessReport::new();
    let n = order.nvars();
    let one = Monomial::one(n);

    let ncosets = lattice.index();
    let mut parts: Vec<Vec<Monomial>> = vec![Vec::new(); ncosets];
    for m in t_set {
        parts[lattice.coset_of_monomial(m)?].push(m.clone());
    }
    // always carry the row and column labeled 1
    let labelled: Vec<Vec<Monomial>> = parts
        .iter()
        .map(|part| {
            let mut labels = part.clone();
            if !labels.contains(&one) {
                labels.insert(0, one.clone());
            }
            labels
        })
        .collect();

    struct CosetState<F: Field> {
        labels: Vec<Monomial>,
        elim: Elimination<F>,
        profile: Vec<Monomial>,
        matrix: MultiHankelMatrix<F>,
    }
    let states: Vec<Result<CosetState<F>>> = par::map_slice(&labelled, |labels| {
        let h = MultiHankelMatrix::build(field, &counting, labels, labels)?;
        let mut elim = Elimination::new(field.clone(), labels.len());
        let mut profile = Vec::new();
        for j in 0..labels.len() {
            if let PushOutcome::Independent = elim.push_column(h.column(j)) {
                profile.push(labels[j].clone());
            }
        }
        Ok(CosetState {
            labels: labels.clone(),
            elim,
            profile,
            matrix: h,
        })
    });
    let mut states: Vec<CosetState<F>> = states.into_iter().collect::<Result<_>>()?;

    let mut union: Vec<Monomial> = Vec::new();
    for st in &states {
        for m in &st.profile {
            if !union.contains(m) {
                union.push(m.clone());
            }
        }
    }
    order.sort(&mut union);
    report.degenerate = union.is_empty();
    let staircase = crate::monomial::staircase_close(order, &union, t_set);

    let mut pending: Vec<Monomial> = t_set
        .iter()
        .filter(|m| !staircase.contains(m))
        .cloned()
        .collect();
    let mut relations: Vec<Relation<F>> = Vec::new();
    while let Some(g) = pending.first().cloned() {
        pending.remove(0);
        let a = lattice.coset_of_monomial(&g)?;
        let st = &mut states[a];
        let column: Vec<F::Elem> = st
            .labels
            .iter()
            .map(|r| bracket_monomial(field, &counting, &g, r))
            .collect::<Result<_>>()?;
        let gamma = match st.elim.push_column(column) {
            PushOutcome::Dependent(expr) => expr.iter().map(|c| field.neg(c)).collect::<Vec<_>>(),
            PushOutcome::Independent => {
                // T was too small for this coset; report the bare monomial
                Vec::new()
            }
        };
        let support: &[Monomial] = if gamma.is_empty() { &[] } else { &st.profile };
        let poly = relation_poly(field, support, &gamma, &g);
        relations.push(Relation {
            poly,
            leading: g.clone(),
            status: RelationStatus::Unverified,
        });
        pending.retain(|m| !universe_divides(None, &g, m));
    }

    for (labels, st) in labelled.iter().zip(&states) {
        report.matrix_shapes.push((labels.len(), labels.len()));
        if opts.record_details {
            report.details.push(CosetDetail {
                representative: lattice.domain()[report.details.len()].clone(),
                matrix: st.matrix.clone(),
                profile: st.profile.clone(),
            });
        }
    }
    report.relations = relations;
    report.staircase = staircase;
    report.query_count = counting.distinct_queries();
    Ok(report)
}

/// Per-coset growing state for the adaptive variants.
struct AdaptiveState<F: Field> {
    elim: Elimination<F>,
    staircase: Vec<Monomial>,
}

impl<F: Field> AdaptiveState<F> {
    fn start(
        field: &F,
        table: &dyn TableSource<F>,
        one: &Monomial,
    ) -> Result<Self> {
        let mut elim = Elimination::new(field.clone(), 1);
        let u0 = bracket_monomial(field, table, one, one)?;
        let PushOutcome::Independent = elim.push_column(vec![u0]) else {
            return Err(Error::Singular("table starts at zero".into()));
        };
        Ok(AdaptiveState {
            elim,
            staircase: vec![one.clone()],
        })
    }
}

/// Outcome of testing one candidate column against a coset state.
enum StepOutcome<F: Field> {
    Grew,
    Found(Poly<F>),
}

fn adaptive_step<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    state: &mut AdaptiveState<F>,
    m: &Monomial,
    buffer: &[Monomial],
) -> Result<StepOutcome<F>> {
    // test against rows S + {m} + buffer on a scratch copy; commit only when
    // the rank grows, so a rejected candidate leaves no stale row behind
    let mut scratch = state.elim.clone();
    let mut all_rows: Vec<Monomial> = state.staircase.clone();
    for extra in std::iter::once(m).chain(buffer) {
        let entries: Vec<F::Elem> = state
            .staircase
            .iter()
            .map(|c| bracket_monomial(field, table, c, extra))
            .collect::<Result<_>>()?;
        scratch.add_row(&entries);
        all_rows.push(extra.clone());
    }
    let column: Vec<F::Elem> = all_rows
        .iter()
        .map(|r| bracket_monomial(field, table, m, r))
        .collect::<Result<_>>()?;
    match scratch.push_column(column) {
        PushOutcome::Independent => {
            state.elim = scratch;
            state.staircase.push(m.clone());
            Ok(StepOutcome::Grew)
        }
        PushOutcome::Dependent(expr) => {
            let gamma: Vec<F::Elem> = expr.iter().map(|c| field.neg(c)).collect();
            Ok(StepOutcome::Found(relation_poly(
                field,
                &state.staircase,
                &gamma,
                m,
            )))
        }
    }
}

/// Square matrix over the given labels, for trace recording.
fn square_matrix<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    labels: &[Monomial],
) -> Result<Vec<Vec<F::Elem>>> {
    labels
        .iter()
        .map(|r| {
            labels
                .iter()
                .map(|c| bracket_monomial(field, table, c, r))
                .collect()
        })
        .collect()
}

/// Ordered candidate supply: either an enumerated universe stream (cone
/// mode) or the product queue fed by staircase growth.
enum Candidates<'a> {
    Stream(XStream<'a>),
    Queue {
        order: &'a MonomialOrder,
        queue: Vec<Monomial>,
    },
}

impl<'a> Candidates<'a> {
    fn next(&mut self) -> Option<Monomial> {
        match self {
            Candidates::Stream(s) => s.next_monomial(),
            Candidates::Queue { queue, .. } => {
                if queue.is_empty() {
                    None
                } else {
                    Some(queue.remove(0))
                }
            }
        }
    }

    fn feed_products(&mut self, m: &Monomial, found: &[Monomial], cone: Option<&Cone>) {
        if let Candidates::Queue { order, queue } = self {
            let n = m.nvars();
            for p in 0..n {
                let cand = m.mul(&Monomial::x_var(n, p));
                if queue.contains(&cand) {
                    continue;
                }
                if found.iter().any(|lm| universe_divides(cone, lm, &cand)) {
                    continue;
                }
                let pos = queue
                    .binary_search_by(|q| order.compare(q, &cand))
                    .unwrap_or_else(|e| e);
                queue.insert(pos, cand);
            }
        }
    }

    fn prune(&mut self, lm: &Monomial, cone: Option<&Cone>) {
        if let Candidates::Queue { queue, .. } = self {
            queue.retain(|m| !universe_divides(cone, lm, m));
        }
    }
}

fn adaptive_core<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    lattice: Option<&Lattice>,
    opts: &GuessOpts,
) -> Result<GuessReport<F>> {
    let n = order.nvars();
    let one = Monomial::one(n);
    let counting = CountingSource::new(table);
    let mut report = GuessReport::new();

    // a table starting at zero yields the single relation 1
    let u0 = counting.query(&vec![0u32; n])?;
    if field.is_zero(&u0) {
        report.relations.push(Relation {
            poly: Poly::monomial(n, one.clone(), field.one()),
            leading: one,
            status: RelationStatus::Unverified,
        });
        report.degenerate = true;
        report.query_count = counting.distinct_queries();
        return Ok(report);
    }

    let ncosets = lattice.map_or(1, |l| l.index());
    let mut states: Vec<AdaptiveState<F>> = (0..ncosets)
        .map(|_| AdaptiveState::start(field, &counting, &one))
        .collect::<Result<_>>()?;
    if opts.record_trace {
        for (a, st) in states.iter().enumerate() {
            report.trace.push(TraceStep {
                coset: lattice.map(|l| l.domain()[a].clone()),
                candidate: one.clone(),
                labels: st.staircase.clone(),
                matrix: square_matrix(field, &counting, &st.staircase)?,
                full_rank: true,
                relation: None,
            });
        }
    }

    let cone_filter = opts.cone.clone();
    let mut candidates = match &opts.cone {
        Some(_) => {
            let filter = move |e: &[u32]| {
                let inside = cone_filter.as_ref().unwrap().contains(e);
                inside && e.iter().any(|&v| v > 0)
            };
            Candidates::Stream(XStream::new(order, opts.caps.clone(), filter)?)
        }
        None => {
            let mut queue: Vec<Monomial> = (0..n).map(|p| Monomial::x_var(n, p)).collect();
            order.sort(&mut queue);
            Candidates::Queue { order, queue }
        }
    };

    let mut found_lms: Vec<Monomial> = Vec::new();
    let mut relations: Vec<Relation<F>> = Vec::new();
    let mut staircase_total = 1usize;
    while let Some(m) = candidates.next() {
        if staircase_total >= opts.max_staircase {
            break;
        }
        if found_lms
            .iter()
            .any(|lm| universe_divides(opts.cone.as_ref(), lm, &m))
        {
            continue;
        }
        let a = match lattice {
            Some(l) => l.coset_of_monomial(&m)?,
            None => 0,
        };
        // buffer rows: the next few universe monomials past the candidate
        let buffer = if opts.extra_rows > 0 {
            let with_m: Vec<Monomial> = states[a]
                .staircase
                .iter()
                .cloned()
                .chain(std::iter::once(m.clone()))
                .collect();
            extension_rows(order, &with_m, opts, opts.extra_rows)?
        } else {
            Vec::new()
        };
        let outcome = adaptive_step(field, &counting, &mut states[a], &m, &buffer)?;
        match outcome {
            StepOutcome::Grew => {
                staircase_total += 1;
                if opts.record_trace {
                    let labels = states[a].staircase.clone();
                    report.trace.push(TraceStep {
                        coset: lattice.map(|l| l.domain()[a].clone()),
                        candidate: m.clone(),
                        labels: labels.clone(),
                        matrix: square_matrix(field, &counting, &labels)?,
                        full_rank: true,
                        relation: None,
                    });
                }
                candidates.feed_products(&m, &found_lms, opts.cone.as_ref());
            }
            StepOutcome::Found(poly) => {
                if opts.record_trace {
                    let mut labels = states[a].staircase.clone();
                    labels.push(m.clone());
                    report.trace.push(TraceStep {
                        coset: lattice.map(|l| l.domain()[a].clone()),
                        candidate: m.clone(),
                        labels: labels.clone(),
                        matrix: square_matrix(field, &counting, &labels)?,
                        full_rank: false,
                        relation: Some(poly.clone()),
                    });
                }
                relations.push(Relation {
                    poly,
                    leading: m.clone(),
                    status: RelationStatus::Unverified,
                });
                found_lms.push(m.clone());
                candidates.prune(&m, opts.cone.as_ref());
            }
        }
    }

    let mut staircase: Vec<Monomial> = Vec::new();
    for st in &states {
        for m in &st.staircase {
            if !staircase.contains(m) {
                staircase.push(m.clone());
            }
        }
        report
            .matrix_shapes
            .push((st.staircase.len(), st.staircase.len()));
    }
    order.sort(&mut staircase);
    report.relations = relations;
    report.staircase = staircase;
    report.query_count = counting.distinct_queries();
    Ok(report)
}

/// Adaptive guesser: grows the staircase one monomial at a time, pruning
/// every multiple of a found leading monomial. Candidates come from the cone
/// stream in cone mode, otherwise from products of staircase members.
pub fn adaptive_sfglm<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    opts: &GuessOpts,
) -> Result<GuessReport<F>> {
    adaptive_core(field, table, order, None, opts)
}

/// Adaptive lattice guesser: one growing matrix per coset; a relation found
/// in one coset prunes its leading monomial's multiples everywhere.
pub fn lattice_adaptive_sfglm<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    lattice: &Lattice,
    opts: &GuessOpts,
) -> Result<GuessReport<F>> {
    if lattice.dim() != order.nvars() {
        return Err(Error::DimensionMismatch {
            expected: order.nvars(),
            got: lattice.dim(),
        });
    }
    adaptive_core(field, table, order, Some(lattice), opts)
}

/// Kernel guesser for relations with polynomial coefficients: computes the
/// right kernel of `H_{X,T}` with `X` pure-`x` rows and `T` mixed columns,
/// reduced so leading monomials are pairwise non-divisible.
pub fn guess_prels<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    x_rows: &[Monomial],
    t_cols: &[Monomial],
    opts: &GuessOpts,
) -> Result<GuessReport<F>> {
    check_sorted(order, t_cols)?;
    if let Some(c) = &opts.cone {
        for m in x_rows.iter().chain(t_cols) {
            if !c.contains(m.x_exponents()) {
                return Err(Error::Invalid(format!(
                    "{} has its x part outside the cone",
                    m.plain_string()
                )));
            }
        }
    }
    let counting = CountingSource::new(table);
    let mut report = GuessReport::new();
    let h = MultiHankelMatrix::build(field, &counting, x_rows, t_cols)?;
    report.matrix_shapes.push((x_rows.len(), t_cols.len()));

    let mut elim = Elimination::new(field.clone(), x_rows.len());
    let mut profile: Vec<Monomial> = Vec::new();
    let mut kernel: Vec<(Monomial, Poly<F>)> = Vec::new();
    for j in 0..t_cols.len() {
        match elim.push_column(h.column(j)) {
            PushOutcome::Independent => profile.push(t_cols[j].clone()),
            PushOutcome::Dependent(expr) => {
                let gamma: Vec<F::Elem> = expr.iter().map(|c| field.neg(c)).collect();
                let poly = relation_poly(field, &profile, &gamma, &t_cols[j]);
                kernel.push((t_cols[j].clone(), poly));
            }
        }
    }
    report.degenerate = profile.is_empty();

    let cone = opts.cone.clone();
    let kept = crate::hankel::remove_multiples(order, kernel, |q| {
        cone.as_ref().map_or(true, |c| c.contains(q.x_exponents()))
    });
    report.relations = kept
        .into_iter()
        .map(|(leading, poly)| Relation {
            poly,
            leading,
            status: RelationStatus::Unverified,
        })
        .collect();
    report.staircase = profile;
    report.query_count = counting.distinct_queries();
    Ok(report)
}

/// Tests each relation against extra shifts; a relation is fake as soon as
/// one extended bracket is nonzero.
pub fn classify_relations<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    relations: &mut [Relation<F>],
    shifts: &[Monomial],
) -> Result<()> {
    let verdicts: Vec<Result<RelationStatus>> = par::map_slice(relations, |rel| {
        for s in shifts {
            let v = crate::tables::bracket(field, table, &rel.poly.mul_monomial(s))?;
            if !field.is_zero(&v) {
                return Ok(RelationStatus::Fake);
            }
        }
        Ok(RelationStatus::CorrectSoFar)
    });
    for (rel, verdict) in relations.iter_mut().zip(verdicts) {
        rel.status = verdict?;
    }
    Ok(())
}
