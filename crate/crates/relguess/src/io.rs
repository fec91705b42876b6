//! Text formats: polynomials, tables, walk specs, cones, lattices and
//! group-degree files.
//!
//! Polynomials are sums of terms `c*t1^a1*...*x1^b1*...` with `*` and `^1`
//! optional and coefficients given as integers or `num/den`. All other files
//! are line oriented; `#` starts a comment.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::field::{Field, PrimeField, Rationals};
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::Poly;
use crate::structures::{Cone, GDegreeMap, Lattice};
use crate::tables::{ExplicitTable, WalkTable};
use crate::{Error, Result};

/// Display and parse names for the `x` and `t` variable blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    x: Vec<String>,
    t: Vec<String>,
}

impl VarNames {
    pub fn new(x: Vec<String>, t: Vec<String>) -> Self {
        assert_eq!(x.len(), t.len(), "t and x blocks must pair up");
        VarNames { x, t }
    }

    /// `x1..xn` with `t1..tn`.
    pub fn canonical(n: usize) -> Self {
        VarNames {
            x: (1..=n).map(|i| format!("x{i}")).collect(),
            t: (1..=n).map(|i| format!("t{i}")).collect(),
        }
    }

    /// Custom `x` names with default `t` names; two variables get the
    /// traditional `t, u`.
    pub fn with_x_names(x: Vec<String>) -> Self {
        let n = x.len();
        let t = if n == 2 && !x.contains(&"t".to_string()) && !x.contains(&"u".to_string()) {
            vec!["t".to_string(), "u".to_string()]
        } else {
            (1..=n).map(|i| format!("t{i}")).collect()
        };
        VarNames { x, t }
    }

    pub fn nvars(&self) -> usize {
        self.x.len()
    }

    pub fn x_names(&self) -> &[String] {
        &self.x
    }

    pub fn t_names(&self) -> &[String] {
        &self.t
    }

    pub fn monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.t_exponents().iter().enumerate() {
            if e == 1 {
                parts.push(self.t[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.t[i], e));
            }
        }
        for (i, &e) in m.x_exponents().iter().enumerate() {
            if e == 1 {
                parts.push(self.x[i].clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.x[i], e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Formats a polynomial with terms in decreasing order for `order`.
pub fn format_poly_ordered<F: Field>(
    field: &F,
    poly: &Poly<F>,
    names: &VarNames,
    order: &MonomialOrder,
) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Monomial, &F::Elem)> = poly.terms().collect();
    terms.sort_by(|a, b| order.compare(b.0, a.0));
    let mut out = String::new();
    for (m, c) in terms {
        let cs = field.format(c);
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        if m.is_one() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&names.monomial(m));
        } else {
            out.push_str(&mag);
            out.push('*');
            out.push_str(&names.monomial(m));
        }
    }
    out
}

/// Formats with the default DRL order, which matches how reports list
/// degree-graded output.
pub fn format_poly<F: Field>(field: &F, poly: &Poly<F>, names: &VarNames) -> String {
    let order = MonomialOrder::new(OrderKind::Drl, poly.nvars());
    format_poly_ordered(field, poly, names, &order)
}

#[derive(Debug, PartialEq)]
enum Token {
    Num(String),
    Ident(String),
    Caret,
    Star,
    Plus,
    Minus,
    Slash,
}

fn lex_poly(s: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '0'..='9' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Num(num));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut id = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        id.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(id));
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in polynomial"
                )))
            }
        }
    }
    Ok(tokens)
}

/// Parses a polynomial in the shared text format.
pub fn parse_poly<F: Field>(field: &F, s: &str, names: &VarNames) -> Result<Poly<F>> {
    let n = names.nvars();
    let mut var_of: HashMap<&str, (bool, usize)> = HashMap::new();
    for (i, name) in names.x.iter().enumerate() {
        var_of.insert(name.as_str(), (false, i));
    }
    for (i, name) in names.t.iter().enumerate() {
        var_of.insert(name.as_str(), (true, i));
    }
    let tokens = lex_poly(s)?;
    let mut poly = Poly::zero(n);
    let mut pos = 0usize;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    while pos < tokens.len() {
        let mut sign = false;
        loop {
            match tokens.get(pos) {
                Some(Token::Plus) => pos += 1,
                Some(Token::Minus) => {
                    sign = !sign;
                    pos += 1;
                }
                _ => break,
            }
        }
        let mut coeff = field.one();
        let mut t_exp = vec![0u32; n];
        let mut x_exp = vec![0u32; n];
        let mut any_factor = false;
        let mut pending_star = false;
        loop {
            match tokens.get(pos) {
                Some(Token::Num(num)) => {
                    pos += 1;
                    pending_star = false;
                    let text = if matches!(tokens.get(pos), Some(Token::Slash)) {
                        pos += 1;
                        let Some(Token::Num(den)) = tokens.get(pos) else {
                            return Err(Error::Parse(format!("missing denominator in `{s}`")));
                        };
                        pos += 1;
                        format!("{num}/{den}")
                    } else {
                        num.clone()
                    };
                    coeff = field.mul(&coeff, &field.parse(&text)?);
                    any_factor = true;
                }
                Some(Token::Ident(id)) => {
                    pos += 1;
                    pending_star = false;
                    let Some(&(is_t, idx)) = var_of.get(id.as_str()) else {
                        return Err(Error::Parse(format!("unknown variable `{id}`")));
                    };
                    let mut exp = 1u32;
                    if matches!(tokens.get(pos), Some(Token::Caret)) {
                        pos += 1;
                        let Some(Token::Num(e)) = tokens.get(pos) else {
                            return Err(Error::Parse(format!("missing exponent in `{s}`")));
                        };
                        pos += 1;
                        exp = e
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad exponent `{e}`")))?;
                    }
                    if is_t {
                        t_exp[idx] += exp;
                    } else {
                        x_exp[idx] += exp;
                    }
                    any_factor = true;
                }
                Some(Token::Star) => {
                    pos += 1;
                    pending_star = true;
                }
                _ => break,
            }
        }
        if !any_factor {
            return Err(Error::Parse(format!("dangling sign in `{s}`")));
        }
        if pending_star {
            return Err(Error::Parse(format!("dangling `*` in `{s}`")));
        }
        if sign {
            coeff = field.neg(&coeff);
        }
        poly.add_term(field, Monomial::from_tx(t_exp, x_exp), coeff);
    }
    Ok(poly)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(p) => &line[..p],
        None => line,
    }
}

/// Field declared in a table file header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Prime(u64),
    Rational,
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("qq") {
            Ok(FieldSpec::Rational)
        } else {
            let p = s
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad field spec `{s}`")))?;
            Ok(FieldSpec::Prime(p))
        }
    }

    pub fn render(&self) -> String {
        match self {
            FieldSpec::Prime(p) => p.to_string(),
            FieldSpec::Rational => "Q".to_string(),
        }
    }
}

/// Header plus entry lines of an explicit table file.
pub struct TableFile {
    pub field: FieldSpec,
    pub bounds: Vec<u32>,
    pub entries: Vec<(Vec<u32>, String)>,
}

/// Reads `dim n; field p|Q; bounds b1..bn` and `i1 ... in value` lines.
pub fn read_table_file(text: &str) -> Result<TableFile> {
    let mut lines = text.lines().map(strip_comment).filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty table file".into()))?;
    let mut dim = None;
    let mut field = None;
    let mut bounds = None;
    for part in header.split(';') {
        let part = part.trim();
        if let Some(rest) = part.strip_prefix("dim") {
            dim = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dim `{rest}`")))?,
            );
        } else if let Some(rest) = part.strip_prefix("field") {
            field = Some(FieldSpec::parse(rest)?);
        } else if let Some(rest) = part.strip_prefix("bounds") {
            bounds = Some(parse_u32_list(rest)?);
        } else if !part.is_empty() {
            return Err(Error::Parse(format!("bad header clause `{part}`")));
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse("table header misses dim".into()))?;
    let field = field.ok_or_else(|| Error::Parse("table header misses field".into()))?;
    let bounds = bounds.ok_or_else(|| Error::Parse("table header misses bounds".into()))?;
    if bounds.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bounds.len(),
        });
    }
    let mut entries = Vec::new();
    for line in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != dim + 1 {
            return Err(Error::Parse(format!("bad table line `{line}`")));
        }
        let idx = fields[..dim]
            .iter()
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad index `{s}`")))
            })
            .collect::<Result<Vec<u32>>>()?;
        entries.push((idx, fields[dim].to_string()));
    }
    Ok(TableFile {
        field,
        bounds,
        entries,
    })
}

/// Materializes a parsed table file over a concrete field.
pub fn table_from_file<F: Field>(field: &F, file: &TableFile) -> Result<ExplicitTable<F>> {
    let mut values = HashMap::new();
    for (idx, text) in &file.entries {
        let v = field.parse(text)?;
        if !field.is_zero(&v) {
            values.insert(idx.clone(), v);
        }
    }
    ExplicitTable::new(field, file.bounds.clone(), values)
}

/// Serializes an explicit table; entries are written in index order so the
/// round trip is byte stable.
pub fn write_table_file<F: Field>(
    field: &F,
    spec: &FieldSpec,
    table: &ExplicitTable<F>,
) -> String {
    let mut out = format!(
        "dim {}; field {}; bounds {}\n",
        table.bounds().len(),
        spec.render(),
        table
            .bounds()
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let mut entries: Vec<(Vec<u32>, String)> = table
        .entries()
        .map(|(idx, v)| (idx.clone(), field.format(v)))
        .collect();
    entries.sort();
    for (idx, v) in entries {
        let idx_s: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", idx_s.join(" "), v));
    }
    out
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
        })
        .collect()
}

fn parse_i64_list(s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
        })
        .collect()
}

/// Reads `dim k; steps: (s11,...,s1k); ...; project: mask` where the mask
/// marks coordinates pinned to zero.
pub fn read_walk_spec(text: &str) -> Result<WalkTable> {
    let joined: String = text
        .lines()
        .map(strip_comment)
        .collect::<Vec<_>>()
        .join(" ");
    let mut dim = None;
    let mut steps: Vec<Vec<i64>> = Vec::new();
    let mut project: Option<Vec<bool>> = None;
    let mut in_steps = false;
    for part in joined.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if let Some(rest) = part.strip_prefix("dim") {
            dim = Some(
                rest.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad dim `{rest}`")))?,
            );
            in_steps = false;
        } else if let Some(rest) = part.strip_prefix("steps:").or_else(|| part.strip_prefix("steps")) {
            in_steps = true;
            let rest = rest.trim();
            if !rest.is_empty() {
                steps.push(parse_step_tuple(rest)?);
            }
        } else if let Some(rest) = part.strip_prefix("project:").or_else(|| part.strip_prefix("project")) {
            in_steps = false;
            let mask = parse_u32_list(rest)?;
            project = Some(mask.iter().map(|&b| b != 0).collect());
        } else if in_steps {
            steps.push(parse_step_tuple(part)?);
        } else {
            return Err(Error::Parse(format!("bad walk clause `{part}`")));
        }
    }
    let dim = dim.ok_or_else(|| Error::Parse("walk spec misses dim".into()))?;
    if steps.is_empty() {
        return Err(Error::Parse("walk spec has no steps".into()));
    }
    let project = project.unwrap_or_else(|| vec![false; dim]);
    WalkTable::new(dim, steps, project)
}

fn parse_step_tuple(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad step tuple `{s}`")))?;
    inner
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad step component `{t}`")))
        })
        .collect()
}

/// One generator vector per line.
pub fn read_cone(text: &str) -> Result<Cone> {
    let mut gens = Vec::new();
    for line in text.lines().map(strip_comment) {
        if line.trim().is_empty() {
            continue;
        }
        gens.push(parse_u32_list(line)?);
    }
    if gens.is_empty() {
        return Err(Error::Parse("cone file has no generators".into()));
    }
    let n = gens[0].len();
    Cone::new(n, gens)
}

/// `basis` section with one generator row per line, optional `domain`
/// section with one representative per line.
pub fn read_lattice(text: &str) -> Result<Lattice> {
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut domain: Vec<Vec<u32>> = Vec::new();
    let mut section = "";
    for line in text.lines().map(strip_comment) {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "basis" => section = "basis",
            "domain" => section = "domain",
            data => match section {
                "basis" => basis.push(parse_i64_list(data)?),
                "domain" => domain.push(parse_u32_list(data)?),
                _ => return Err(Error::Parse(format!("data before section header: `{data}`"))),
            },
        }
    }
    if basis.is_empty() {
        return Err(Error::Parse("lattice file has no basis".into()));
    }
    let n = basis[0].len();
    Lattice::new(n, basis, if domain.is_empty() { None } else { Some(domain) })
}

/// `factors q1 .. ql` then one degree tuple line per `x` variable.
pub fn read_gdegree(text: &str) -> Result<GDegreeMap> {
    let mut lines = text.lines().map(strip_comment).filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty group-degree file".into()))?;
    let factors = header
        .trim()
        .strip_prefix("factors")
        .ok_or_else(|| Error::Parse("group-degree file must start with `factors`".into()))
        .and_then(parse_u32_list)?;
    let mut degrees = Vec::new();
    for line in lines {
        degrees.push(parse_u32_list(line)?);
    }
    GDegreeMap::new(factors, degrees)
}

/// Gröbner basis file: `order lex|drl v1 v2 ...` then one polynomial per
/// line, most significant variable first.
pub fn read_gb<F: Field>(
    field: &F,
    text: &str,
) -> Result<(MonomialOrder, VarNames, Vec<Poly<F>>)> {
    let mut lines = text.lines().map(strip_comment).filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty basis file".into()))?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("order") {
        return Err(Error::Parse("basis file must start with `order`".into()));
    }
    let kind = match parts.next() {
        Some("lex") => OrderKind::Lex,
        Some("drl") => OrderKind::Drl,
        other => return Err(Error::Parse(format!("bad order kind {other:?}"))),
    };
    let x_names: Vec<String> = parts.map(|s| s.to_string()).collect();
    if x_names.is_empty() {
        return Err(Error::Parse("basis file order names no variables".into()));
    }
    let names = VarNames::with_x_names(x_names);
    let order = MonomialOrder::new(kind, names.nvars());
    let polys: Vec<Poly<F>> = lines
        .map(|l| parse_poly(field, l, &names))
        .collect::<Result<_>>()?;
    Ok((order, names, polys))
}

/// Dispatch helper to run generic code over the field named in a spec.
pub fn with_field<T>(
    spec: &FieldSpec,
    prime: impl FnOnce(PrimeField) -> Result<T>,
    rational: impl FnOnce(Rationals) -> Result<T>,
) -> Result<T> {
    match spec {
        FieldSpec::Prime(p) => prime(PrimeField::new(*p)?),
        FieldSpec::Rational => rational(Rationals),
    }
}

/// Deterministic tie-break ordering used when listing monomials in reports.
pub fn report_monomial_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree()
        .cmp(&b.total_degree())
        .then_with(|| a.cmp(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::TableSource;
    use num_rational::BigRational;

    #[test]
    fn poly_round_trip_f7() {
        let f = PrimeField::new(7).unwrap();
        let names = VarNames::with_x_names(vec!["x".into(), "y".into()]);
        let p = parse_poly(&f, "y^4+6*y^2+2", &names).unwrap();
        assert_eq!(p.num_terms(), 3);
        let order = MonomialOrder::new(OrderKind::Lex, 2);
        assert_eq!(format_poly_ordered(&f, &p, &names, &order), "y^4+6*y^2+2");
        let q = parse_poly(&f, "x + 2*y^3 + 5y", &names).unwrap();
        assert_eq!(format_poly_ordered(&f, &q, &names, &order), "x+2*y^3+5*y");
    }

    #[test]
    fn poly_mixed_vars_and_rationals() {
        let q = Rationals;
        let names = VarNames::with_x_names(vec!["x".into(), "y".into()]);
        // u is t_2 with the traditional names
        let p = parse_poly(&q, "u*y-t+u", &names).unwrap();
        assert_eq!(p.num_terms(), 3);
        let drl = MonomialOrder::new(OrderKind::Drl, 2);
        assert_eq!(format_poly_ordered(&q, &p, &names, &drl), "u*y-t+u");
        let r = parse_poly(&q, "-3/2*x+1", &names).unwrap();
        assert_eq!(format_poly_ordered(&q, &r, &names, &drl), "-3/2*x+1");
        assert_eq!(
            *r.coefficient(&Monomial::from_x(vec![1, 0])).unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
    }

    #[test]
    fn poly_parse_rejects_unknowns() {
        let f = PrimeField::new(7).unwrap();
        let names = VarNames::with_x_names(vec!["x".into()]);
        assert!(parse_poly(&f, "x+z", &names).is_err());
        assert!(parse_poly(&f, "", &names).is_err());
        assert!(parse_poly(&f, "2*", &names).is_err());
    }

    #[test]
    fn table_file_round_trip() {
        let f = PrimeField::new(7).unwrap();
        let text = "dim 2; field 7; bounds 3 3\n0 0 1\n1 2 5\n";
        let file = read_table_file(text).unwrap();
        assert_eq!(file.bounds, vec![3, 3]);
        let table = table_from_file(&f, &file).unwrap();
        assert_eq!(table.query(&[1, 2]).unwrap(), 5);
        assert_eq!(table.query(&[2, 2]).unwrap(), 0);
        assert!(table.query(&[3, 0]).is_err());
        let out = write_table_file(&f, &FieldSpec::Prime(7), &table);
        let file2 = read_table_file(&out).unwrap();
        let table2 = table_from_file(&f, &file2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(table.query(&[i, j]).unwrap(), table2.query(&[i, j]).unwrap());
            }
        }
    }

    #[test]
    fn empty_table_file_fails() {
        assert!(read_table_file("").is_err());
        assert!(read_table_file("# only a comment\n").is_err());
    }

    #[test]
    fn walk_spec_round_trip() {
        let spec = "dim 2; steps: (1,0); (1,1); (-1,0); (-1,-1); project: 1 0";
        let walk = read_walk_spec(spec).unwrap();
        assert_eq!(walk.space_dim(), 2);
        assert_eq!(walk.steps().len(), 4);
        assert_eq!(walk.table_dim(), 2);
        assert_eq!(walk.project(), &[true, false]);
    }

    #[test]
    fn cone_lattice_gdegree_files() {
        let cone = read_cone("2 0\n2 1\n").unwrap();
        assert!(cone.contains(&[4, 1]));
        assert!(!cone.contains(&[1, 0]));

        let lattice = read_lattice("basis\n0 3\n1 0\ndomain\n0 0\n0 1\n0 2\n").unwrap();
        assert_eq!(lattice.index(), 3);
        assert_eq!(lattice.coset(&[2, 4]).unwrap(), &[0, 1]);

        let g = read_gdegree("factors 3\n1\n1\n").unwrap();
        assert_eq!(g.group_order(), 3);
        assert_eq!(g.degree(&Monomial::from_x(vec![1, 2])), vec![0]);
    }

    #[test]
    fn gb_file_parses_order_line() {
        let f = PrimeField::new(7).unwrap();
        let text = "order lex x y\ny^4+6*y^2+2\nx+2*y^3+5*y\n";
        let (order, names, polys) = read_gb(&f, text).unwrap();
        assert_eq!(order.kind(), OrderKind::Lex);
        assert_eq!(names.x_names(), &["x".to_string(), "y".to_string()]);
        assert_eq!(polys.len(), 2);
        assert_eq!(
            format_poly_ordered(&f, &polys[0], &names, &order),
            "y^4+6*y^2+2"
        );
    }
}
