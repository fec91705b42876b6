//! Structured run documents: one JSON value per run with stable key order,
//! plus a compact human rendering.

use anyhow::Result;
use serde::Serialize;

use relguess::field::Field;
use relguess::fglm::{ShapeLexBasis, SolveStats, SpeedupReport};
use relguess::guess::{GuessReport, Relation, RelationStatus};
use relguess::io::{format_poly_ordered, VarNames};
use relguess::monomial::MonomialOrder;

#[derive(Serialize, Debug)]
pub struct RelationEntry {
    pub poly: String,
    pub leading: String,
    pub status: String,
}

#[derive(Serialize, Debug)]
pub struct BenchRow {
    pub mode: String,
    pub rows: usize,
    pub cols: usize,
    pub queries: usize,
    pub fake: usize,
    pub correct: usize,
    pub relations: Vec<RelationEntry>,
}

#[derive(Serialize, Debug)]
#[serde(tag = "command")]
pub enum Document {
    #[serde(rename = "guess")]
    Guess {
        field: String,
        order: String,
        vars: Vec<String>,
        mode: String,
        seed: u64,
        relations: Vec<RelationEntry>,
        staircase: Vec<String>,
        queries: usize,
        shapes: Vec<(usize, usize)>,
        degenerate: bool,
        trace: Vec<String>,
    },
    #[serde(rename = "fglm")]
    Fglm {
        field: String,
        dim: usize,
        basis: Vec<String>,
        table_reads: usize,
        seq_gen_ms: f64,
        solve_ms: f64,
    },
    #[serde(rename = "fglm-bench")]
    FglmBench {
        field: String,
        dim: usize,
        group_order: u64,
        basis: Vec<String>,
        seq_gen_plain_ms: f64,
        guess_plain_ms: f64,
        seq_gen_blocked_ms: f64,
        guess_blocked_ms: f64,
        seq_speedup: f64,
        guess_speedup: f64,
    },
    #[serde(rename = "verify")]
    Verify {
        field: String,
        shifts: usize,
        verdicts: Vec<RelationEntry>,
    },
    #[serde(rename = "bench-table1")]
    BenchTable1 {
        field: String,
        seed: u64,
        regions: Vec<BenchRow>,
    },
}

pub fn status_str(s: &RelationStatus) -> &'static str {
    match s {
        RelationStatus::Unverified => "unverified",
        RelationStatus::CorrectSoFar => "correct-so-far",
        RelationStatus::Fake => "fake",
    }
}

pub fn relation_entry<F: Field>(
    field: &F,
    order: &MonomialOrder,
    names: &VarNames,
    r: &Relation<F>,
) -> RelationEntry {
    RelationEntry {
        poly: format_poly_ordered(field, &r.poly, names, order),
        leading: names.monomial(&r.leading),
        status: status_str(&r.status).to_string(),
    }
}

pub fn guess_document<F: Field>(
    field: &F,
    order: &MonomialOrder,
    names: &VarNames,
    mode: &str,
    seed: u64,
    report: &GuessReport<F>,
) -> Document {
    let trace = report
        .trace
        .iter()
        .map(|step| {
            let labels: Vec<String> = step.labels.iter().map(|m| names.monomial(m)).collect();
            let matrix: Vec<String> = step
                .matrix
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| field.format(v))
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            format!(
                "{}{} [{}] [{}] {}",
                match &step.coset {
                    Some(rep) => format!("coset{rep:?} "),
                    None => String::new(),
                },
                names.monomial(&step.candidate),
                labels.join(", "),
                matrix.join("; "),
                if step.full_rank { "full" } else { "drop" }
            )
        })
        .collect();
    Document::Guess {
        field: field.name(),
        order: format!("{:?}", order.kind()).to_lowercase(),
        vars: names.x_names().to_vec(),
        mode: mode.to_string(),
        seed,
        relations: report
            .relations
            .iter()
            .map(|r| relation_entry(field, order, names, r))
            .collect(),
        staircase: report.staircase.iter().map(|m| names.monomial(m)).collect(),
        queries: report.query_count,
        shapes: report.matrix_shapes.clone(),
        degenerate: report.degenerate,
        trace,
    }
}

fn basis_strings<F: Field>(field: &F, names: &VarNames, basis: &ShapeLexBasis<F>) -> Vec<String> {
    let order = MonomialOrder::new(relguess::monomial::OrderKind::Lex, basis.nvars);
    basis
        .to_polys(field)
        .iter()
        .map(|p| format_poly_ordered(field, p, names, &order))
        .collect()
}

pub fn fglm_document<F: Field>(
    field: &F,
    names: &VarNames,
    basis: &ShapeLexBasis<F>,
    stats: &SolveStats,
) -> Document {
    Document::Fglm {
        field: field.name(),
        dim: basis.dim,
        basis: basis_strings(field, names, basis),
        table_reads: stats.reads.total(),
        seq_gen_ms: stats.seq_gen.as_secs_f64() * 1e3,
        solve_ms: stats.solve.as_secs_f64() * 1e3,
    }
}

pub fn fglm_bench_document<F: Field>(
    field: &F,
    names: &VarNames,
    basis: &ShapeLexBasis<F>,
    report: &SpeedupReport,
) -> Document {
    Document::FglmBench {
        field: field.name(),
        dim: basis.dim,
        group_order: report.group_order,
        basis: basis_strings(field, names, basis),
        seq_gen_plain_ms: report.seq_gen_plain.as_secs_f64() * 1e3,
        guess_plain_ms: report.solve_plain.as_secs_f64() * 1e3,
        seq_gen_blocked_ms: report.seq_gen_blocked.as_secs_f64() * 1e3,
        guess_blocked_ms: report.solve_blocked.as_secs_f64() * 1e3,
        seq_speedup: report.seq_speedup,
        guess_speedup: report.solve_speedup,
    }
}

pub fn verify_document<F: Field>(
    field: &F,
    order: &MonomialOrder,
    names: &VarNames,
    shifts: usize,
    relations: &[Relation<F>],
) -> Document {
    Document::Verify {
        field: field.name(),
        shifts,
        verdicts: relations
            .iter()
            .map(|r| relation_entry(field, order, names, r))
            .collect(),
    }
}

pub fn bench_document(field: &str, seed: u64, regions: Vec<BenchRow>) -> Document {
    Document::BenchTable1 {
        field: field.to_string(),
        seed,
        regions,
    }
}

/// Human text first; the JSON document goes to `--out` (or stdout for `-`).
pub fn write_output(doc: &Document, out: Option<&str>) -> Result<()> {
    print_human(doc);
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(doc)?;
        if path == "-" {
            println!("{json}");
        } else {
            std::fs::write(path, json)?;
        }
    }
    Ok(())
}

fn print_human(doc: &Document) {
    match doc {
        Document::Guess {
            field,
            mode,
            relations,
            staircase,
            queries,
            shapes,
            degenerate,
            trace,
            ..
        } => {
            println!("mode {mode} over {field}");
            println!("matrix shapes {shapes:?}, {queries} distinct table queries");
            if *degenerate {
                println!("(degenerate input: the table gave no information)");
            }
            println!("staircase ({}): {}", staircase.len(), staircase.join(" "));
            println!("relations ({}):", relations.len());
            for r in relations {
                println!("  {}  [{}]", r.poly, r.status);
            }
            for line in trace {
                println!("trace {line}");
            }
        }
        Document::Fglm {
            field,
            dim,
            basis,
            table_reads,
            seq_gen_ms,
            solve_ms,
        } => {
            println!("shape basis over {field}, degree {dim}");
            for p in basis {
                println!("  {p}");
            }
            println!(
                "{table_reads} table terms, sequence {seq_gen_ms:.2} ms, solve {solve_ms:.2} ms"
            );
        }
        Document::FglmBench {
            field,
            dim,
            group_order,
            seq_gen_plain_ms,
            guess_plain_ms,
            seq_gen_blocked_ms,
            guess_blocked_ms,
            seq_speedup,
            guess_speedup,
            ..
        } => {
            println!("degree {dim} over {field}, group order {group_order}");
            println!("            seq. gen.    guess.");
            println!("plain     {seq_gen_plain_ms:>10.2}ms {guess_plain_ms:>8.2}ms");
            println!("blocked   {seq_gen_blocked_ms:>10.2}ms {guess_blocked_ms:>8.2}ms");
            println!("speedup   {seq_speedup:>10.2}x {guess_speedup:>8.2}x");
        }
        Document::Verify {
            field,
            shifts,
            verdicts,
        } => {
            println!("verified {} relations over {field} with {shifts} shifts", verdicts.len());
            for v in verdicts {
                println!("  {}  [{}]", v.poly, v.status);
            }
        }
        Document::BenchTable1 {
            field,
            regions,
            ..
        } => {
            println!("walk benchmark over {field}");
            println!("{:<6} {:>6} {:>6} {:>8} {:>6} {:>8}", "mode", "rows", "cols", "queries", "fake", "correct");
            for r in regions {
                println!(
                    "{:<6} {:>6} {:>6} {:>8} {:>6} {:>8}",
                    r.mode, r.rows, r.cols, r.queries, r.fake, r.correct
                );
            }
        }
    }
}
