use std::fs;

use anyhow::{anyhow, bail, Context, Result};

use relguess::field::Field;
use relguess::guess::{self, GuessOpts, GuessReport, RelationStatus};
use relguess::io::{self, FieldSpec, VarNames};
use relguess::monomial::{enumerate_x, EnumBound, Monomial, MonomialOrder, OrderKind};
use relguess::structures::Cone;
use relguess::tables::{ExplicitTable, TableSource, WalkTable};
use relguess::{fglm, PrimeField, Rationals};

use crate::output::{self, write_output};
use crate::{BenchTable1Args, FglmArgs, GuessArgs, InputArgs, VerifyArgs, WalkTableArgs};

const DEFAULT_PRIME: u64 = 2305843009213693951;

fn parse_order_kind(s: &str) -> Result<OrderKind> {
    match s {
        "lex" => Ok(OrderKind::Lex),
        "drl" => Ok(OrderKind::Drl),
        other => bail!("unknown order `{other}` (use lex or drl)"),
    }
}

fn parse_caps(s: &Option<String>, n: usize) -> Result<Option<Vec<u32>>> {
    match s {
        None => Ok(None),
        Some(text) => {
            let caps: Vec<u32> = text
                .split(',')
                .map(|t| t.trim().parse::<u32>().context("bad cap"))
                .collect::<Result<_>>()?;
            if caps.len() != n {
                bail!("expected {n} caps, got {}", caps.len());
            }
            Ok(Some(caps))
        }
    }
}

fn var_names(vars: &Option<String>, n: usize) -> Result<VarNames> {
    match vars {
        None => Ok(VarNames::canonical(n)),
        Some(list) => {
            let x: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
            if x.len() != n {
                bail!("expected {n} variable names, got {}", x.len());
            }
            Ok(VarNames::with_x_names(x))
        }
    }
}

enum Input<F: Field> {
    Table(ExplicitTable<F>),
    Walk(WalkTable),
}

fn resolve_field(input: &InputArgs) -> Result<FieldSpec> {
    if let Some(f) = &input.field {
        return Ok(FieldSpec::parse(f)?);
    }
    if let Some(path) = &input.table {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        return Ok(io::read_table_file(&text)?.field);
    }
    Ok(FieldSpec::Prime(DEFAULT_PRIME))
}

fn load_input<F: Field>(field: &F, input: &InputArgs) -> Result<(Input<F>, usize)> {
    if let Some(path) = &input.table {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let file = io::read_table_file(&text)?;
        let dim = file.bounds.len();
        let table = io::table_from_file(field, &file)?;
        Ok((Input::Table(table), dim))
    } else if let Some(path) = &input.walk {
        let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
        let walk = io::read_walk_spec(&text)?;
        let dim = walk.table_dim();
        Ok((Input::Walk(walk), dim))
    } else {
        bail!("one of --table or --walk is required");
    }
}

/// First `count` universe monomials in increasing order.
fn stream_prefix(
    order: &MonomialOrder,
    caps: Option<Vec<u32>>,
    cone: Option<&Cone>,
    count: usize,
    skip: usize,
) -> Result<Vec<Monomial>> {
    let cone = cone.cloned();
    let filter = move |e: &[u32]| cone.as_ref().map_or(true, |c| c.contains(e));
    Ok(relguess::monomial::first_n_x(order, caps, filter, count, skip)?)
}

/// First `count` mixed monomials with `x` part in the region and bounded
/// `t` degree, in increasing global order.
fn mixed_prefix(
    order: &MonomialOrder,
    cone: Option<&Cone>,
    tdeg: u32,
    count: usize,
) -> Result<Vec<Monomial>> {
    Ok(relguess::monomial::first_n_mixed(
        order,
        |e| cone.map_or(true, |c| c.contains(e)),
        tdeg,
        count,
    )?)
}

pub fn guess(args: &GuessArgs) -> Result<()> {
    let spec = resolve_field(&args.input)?;
    let doc = io::with_field(
        &spec,
        |f| run_guess(f, args).map_err(to_lib_err),
        |f| run_guess(f, args).map_err(to_lib_err),
    )
    .map_err(|e| anyhow!("{e}"))?;
    write_output(&doc, args.out.as_deref())
}

fn to_lib_err(e: anyhow::Error) -> relguess::Error {
    relguess::Error::Invalid(e.to_string())
}

fn run_guess<F: Field>(field: F, args: &GuessArgs) -> Result<output::Document> {
    let (input, nvars) = load_input(&field, &args.input)?;
    let kind = parse_order_kind(&args.order)?;
    let order = MonomialOrder::new(kind, nvars);
    let names = var_names(&args.vars, nvars)?;
    let caps = parse_caps(&args.caps, nvars)?;
    let cone = match &args.cone {
        Some(path) => Some(io::read_cone(&fs::read_to_string(path)?)?),
        None => None,
    };
    let lattice = match &args.lattice {
        Some(path) => Some(io::read_lattice(&fs::read_to_string(path)?)?),
        None => None,
    };
    let opts = GuessOpts {
        cone: cone.clone(),
        extra_rows: 0,
        max_staircase: args.max_staircase,
        caps: caps.clone(),
        record_details: args.dump_matrices,
        record_trace: args.dump_matrices,
    };

    let run = |table: &dyn TableSource<F>| -> Result<GuessReport<F>> {
        if args.prels {
            let cols = args.cols.context("--prels needs --cols")?;
            let rows = args.rows.unwrap_or(cols + 2);
            let x_rows = stream_prefix(&order, caps.clone(), cone.as_ref(), rows, 0)?;
            let t_cols = mixed_prefix(&order, cone.as_ref(), args.tdeg, cols)?;
            let mut report = guess::guess_prels(&field, table, &order, &x_rows, &t_cols, &opts)?;
            if args.verify_shifts > 0 {
                let shifts =
                    stream_prefix(&order, caps.clone(), cone.as_ref(), args.verify_shifts, rows)?;
                guess::classify_relations(&field, table, &mut report.relations, &shifts)?;
            }
            return Ok(report);
        }
        if args.adaptive {
            let report = match &lattice {
                Some(l) => guess::lattice_adaptive_sfglm(&field, table, &order, l, &opts)?,
                None => guess::adaptive_sfglm(&field, table, &order, &opts)?,
            };
            return classify_tail(&field, table, &order, caps.clone(), cone.as_ref(), args, report);
        }
        // batch: T is either everything up to a degree or a stream prefix
        let t_set = match (args.degree, args.cols) {
            (Some(d), _) => enumerate_x(&order, nvars, &EnumBound::TotalDegree(d), |e| {
                cone.as_ref().map_or(true, |c| c.contains(e))
            }),
            (None, Some(c)) => stream_prefix(&order, caps.clone(), cone.as_ref(), c, 0)?,
            (None, None) => bail!("batch mode needs --cols or --degree"),
        };
        let extra = args
            .rows
            .map(|r| r.saturating_sub(t_set.len()))
            .unwrap_or(2);
        let opts = GuessOpts {
            extra_rows: extra,
            ..opts.clone()
        };
        let report = match &lattice {
            Some(l) => guess::lattice_sfglm(&field, table, &order, &t_set, l, &opts)?,
            None => guess::sfglm(&field, table, &order, &t_set, &opts)?,
        };
        classify_tail(&field, table, &order, caps.clone(), cone.as_ref(), args, report)
    };

    let report = match &input {
        Input::Table(t) => run(t)?,
        Input::Walk(w) => {
            let src = w.as_source(field.clone());
            run(&src)?
        }
    };
    let mode = match (args.prels, args.adaptive, &lattice) {
        (true, _, _) => "prels",
        (false, true, Some(_)) => "lattice-adaptive",
        (false, true, None) => "adaptive",
        (false, false, Some(_)) => "lattice",
        (false, false, None) => "batch",
    };
    Ok(output::guess_document(
        &field, &order, &names, mode, args.seed, &report,
    ))
}

/// Classification pass shared by the C-relation modes.
fn classify_tail<F: Field>(
    field: &F,
    table: &dyn TableSource<F>,
    order: &MonomialOrder,
    caps: Option<Vec<u32>>,
    cone: Option<&Cone>,
    args: &GuessArgs,
    mut report: GuessReport<F>,
) -> Result<GuessReport<F>> {
    if args.verify_shifts > 0 {
        let skip = report.staircase.len() + report.relations.len();
        let shifts = stream_prefix(order, caps, cone, args.verify_shifts, skip)?;
        guess::classify_relations(field, table, &mut report.relations, &shifts)?;
    }
    Ok(report)
}

pub fn fglm(args: &FglmArgs) -> Result<()> {
    let spec = FieldSpec::parse(&args.field)?;
    let doc = io::with_field(
        &spec,
        |f| run_fglm(f, args).map_err(to_lib_err),
        |f| run_fglm(f, args).map_err(to_lib_err),
    )
    .map_err(|e| anyhow!("{e}"))?;
    write_output(&doc, args.out.as_deref())
}

fn run_fglm<F: Field>(field: F, args: &FglmArgs) -> Result<output::Document> {
    let (matrix, names) = if let Some(path) = &args.matrix {
        let text = fs::read_to_string(path)?;
        let m = fglm::read_matrix_file(&field, &text)?;
        let names = VarNames::canonical(m.nvars());
        (m, names)
    } else if let Some(path) = &args.gb {
        let text = fs::read_to_string(path)?;
        let (order, names, polys) = io::read_gb(&field, &text)?;
        (
            fglm::SparseMultMatrix::from_basis(&field, &order, &polys)?,
            names,
        )
    } else {
        bail!("one of --matrix or --gb is required");
    };
    let gmap = match &args.gdeg {
        Some(path) => Some(io::read_gdegree(&fs::read_to_string(path)?)?),
        None => None,
    };
    if args.bench {
        let g = gmap.context("--bench needs --gdeg")?;
        let (report, basis) = fglm::blocked_speedup_bench(&field, &matrix, &g, args.seed)?;
        return Ok(output::fglm_bench_document(&field, &names, &basis, &report));
    }
    let (basis, stats) = fglm::solve_shape_basis(&field, &matrix, gmap.as_ref(), args.seed)?;
    Ok(output::fglm_document(&field, &names, &basis, &stats))
}

pub fn verify(args: &VerifyArgs) -> Result<()> {
    let spec = resolve_field(&args.input)?;
    let doc = io::with_field(
        &spec,
        |f| run_verify(f, args).map_err(to_lib_err),
        |f| run_verify(f, args).map_err(to_lib_err),
    )
    .map_err(|e| anyhow!("{e}"))?;
    write_output(&doc, args.out.as_deref())
}

fn run_verify<F: Field>(field: F, args: &VerifyArgs) -> Result<output::Document> {
    let (input, nvars) = load_input(&field, &args.input)?;
    let text = fs::read_to_string(&args.relations)?;
    // the relations file may carry its own order line
    let (order, names, polys) = if text.trim_start().starts_with("order") {
        io::read_gb(&field, &text)?
    } else {
        let order = MonomialOrder::new(parse_order_kind(&args.order)?, nvars);
        let names = var_names(&args.vars, nvars)?;
        let polys = text
            .lines()
            .map(|l| l.trim())
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| io::parse_poly(&field, l, &names))
            .collect::<relguess::Result<Vec<_>>>()?;
        (order, names, polys)
    };
    if names.nvars() != nvars {
        bail!(
            "relations use {} variables but the table has {nvars}",
            names.nvars()
        );
    }
    let mut relations: Vec<guess::Relation<F>> = polys
        .into_iter()
        .map(|poly| {
            let leading = poly
                .leading_monomial(&order)
                .cloned()
                .unwrap_or_else(|| Monomial::one(nvars));
            guess::Relation {
                poly,
                leading,
                status: RelationStatus::Unverified,
            }
        })
        .collect();
    // shift enumeration is order independent; DRL streams need no caps
    let drl = MonomialOrder::new(OrderKind::Drl, nvars);
    let shifts = stream_prefix(&drl, None, None, args.shifts, 0)?;
    match &input {
        Input::Table(t) => guess::classify_relations(&field, t, &mut relations, &shifts)?,
        Input::Walk(w) => {
            let src = w.as_source(field.clone());
            guess::classify_relations(&field, &src, &mut relations, &shifts)?
        }
    }
    Ok(output::verify_document(
        &field,
        &order,
        &names,
        args.shifts,
        &relations,
    ))
}

pub fn walk_table(args: &WalkTableArgs) -> Result<()> {
    let spec = FieldSpec::parse(&args.field)?;
    let text = fs::read_to_string(&args.walk)?;
    let walk = io::read_walk_spec(&text)?;
    let dim = walk.table_dim();
    let bounds = vec![args.bound; dim];
    let rendered = io::with_field(
        &spec,
        |f| {
            let table = ExplicitTable::tabulate(&f, bounds.clone(), |idx| {
                f.from_biguint(&walk.count_projected(idx))
            });
            Ok(io::write_table_file(&f, &spec, &table))
        },
        |f| {
            let table = ExplicitTable::tabulate(&f, bounds.clone(), |idx| {
                f.from_biguint(&walk.count_projected(idx))
            });
            Ok(io::write_table_file(&f, &spec, &table))
        },
    )
    .map_err(|e| anyhow!("{e}"))?;
    fs::write(&args.out, rendered)?;
    println!("wrote {}^{dim} table to {}", args.bound, args.out);
    Ok(())
}

/// Region modes for the walk benchmark.
fn region_cone(mode: &str, dim: usize, cone_file: &Cone) -> Result<Cone> {
    match mode {
        "full" => Ok(Cone::orthant(dim)),
        "half" => {
            // even time index: double the first unit generator
            let mut gens: Vec<Vec<u32>> = Vec::new();
            for p in 0..dim {
                let mut e = vec![0u32; dim];
                e[p] = if p == 0 { 2 } else { 1 };
                gens.push(e);
            }
            Ok(Cone::new(dim, gens)?)
        }
        "cone" => Ok(cone_file.clone()),
        other => bail!("unknown region mode `{other}`"),
    }
}

pub fn bench_table1(args: &BenchTable1Args) -> Result<()> {
    let spec = FieldSpec::parse(&args.field)?;
    let FieldSpec::Prime(p) = spec else {
        bail!("bench-table1 runs over a prime field");
    };
    let field = PrimeField::new(p).map_err(|e| anyhow!("{e}"))?;
    let _ = Rationals; // single-field command
    let walk = io::read_walk_spec(&fs::read_to_string(&args.walk)?)?;
    let dim = walk.table_dim();
    let cone = io::read_cone(&fs::read_to_string(&args.cone)?)?;
    let order = MonomialOrder::new(OrderKind::Drl, dim);
    let names = VarNames::canonical(dim);

    let mut rows_out = Vec::new();
    for mode in args.modes.split(',') {
        let mode = mode.trim();
        let region = region_cone(mode, dim, &cone)?;
        let x_rows = stream_prefix(&order, None, Some(&region), args.rows, 0)?;
        let t_cols = mixed_prefix(&order, Some(&region), args.tdeg, args.cols)?;
        let opts = GuessOpts {
            cone: Some(region.clone()),
            ..Default::default()
        };
        let src = walk.as_source(field.clone());
        let mut report = guess::guess_prels(&field, &src, &order, &x_rows, &t_cols, &opts)?;
        let queries = report.query_count;
        let shifts = stream_prefix(&order, None, Some(&region), args.verify_shifts, args.rows)?;
        guess::classify_relations(&field, &src, &mut report.relations, &shifts)?;
        let fake = report
            .relations
            .iter()
            .filter(|r| r.status == RelationStatus::Fake)
            .count();
        let correct = report.relations.len() - fake;
        rows_out.push(output::BenchRow {
            mode: mode.to_string(),
            rows: x_rows.len(),
            cols: t_cols.len(),
            queries,
            relations: report
                .relations
                .iter()
                .map(|r| output::relation_entry(&field, &order, &names, r))
                .collect(),
            fake,
            correct,
        });
    }
    let doc = output::bench_document(&field.name(), args.seed, rows_out);
    write_output(&doc, args.out.as_deref())
}
