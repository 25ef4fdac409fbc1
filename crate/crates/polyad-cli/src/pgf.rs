//! The PGF text format for n-ary groupoids. See `docs/pgf.md` for the
//! grammar.

use std::fmt::Write as _;

use polyad::constructions::{coset_groupoid, derived_groupoid, gluskin_groupoid, product_groupoid};
use polyad::groupoid::Backing;
use polyad::permutations::permutation_groupoid;
use polyad::{BinaryGroupTable, ElemSet, ElementId, Limits, NaryGroupoid, PermutationMap};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum PgfError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid document: {0}")]
    Invalid(#[from] polyad::Error),
}

fn syntax<T>(line: usize, msg: impl Into<String>) -> Result<T, PgfError> {
    Err(PgfError::Syntax { line, msg: msg.into() })
}

/// Annotation lines carried alongside a document and ignored on load.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Notes {
    pub grades: Vec<(usize, Vec<usize>)>,
}

pub fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn join_nums<I: IntoIterator<Item = T>, T: std::fmt::Display>(xs: I) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_rows(out: &mut String, table: &[u32], width: usize) {
    for row in table.chunks(width) {
        let _ = writeln!(out, "row {}", join_nums(row));
    }
}

fn write_labels(out: &mut String, key: &str, labels: &[String]) {
    let quoted: Vec<String> = labels.iter().map(|l| quote(l)).collect();
    let _ = writeln!(out, "{key} {}", quoted.join(" "));
}

pub fn save(g: &NaryGroupoid) -> String {
    save_with_notes(g, &Notes::default())
}

pub fn save_with_notes(g: &NaryGroupoid, notes: &Notes) -> String {
    let mut out = String::new();
    write_doc(&mut out, g, notes);
    out
}

fn write_doc(out: &mut String, g: &NaryGroupoid, notes: &Notes) {
    let kind = match g.backing() {
        Backing::FullTable(_) => "table",
        Backing::Derived { .. } => "derived",
        Backing::Gluskin { .. } => "gluskin",
        Backing::Coset { .. } => "coset",
        Backing::Product(_) => "product",
        Backing::Permutation { .. } => "permutation",
    };
    let _ = writeln!(out, "pgf {FORMAT_VERSION}");
    let _ = writeln!(out, "kind {kind}");
    let _ = writeln!(out, "arity {}", g.arity());
    let _ = writeln!(out, "size {}", g.size());
    write_labels(out, "labels", g.labels());
    match g.backing() {
        Backing::FullTable(t) => write_rows(out, t, g.size()),
        Backing::Derived { base, central } => {
            write_rows(out, base.table(), base.size());
            let _ = writeln!(out, "central {}", central.index());
        }
        Backing::Gluskin { base, beta, d } => {
            write_rows(out, base.table(), base.size());
            let _ = writeln!(out, "beta {}", join_nums(beta.images()));
            let _ = writeln!(out, "d {}", d.index());
        }
        Backing::Coset { base, subgroup, g: gen } => {
            let _ = writeln!(out, "base-size {}", base.size());
            write_labels(out, "base-labels", base.labels());
            write_rows(out, base.table(), base.size());
            let _ = writeln!(out, "subgroup {}", subgroup.to_bit_string());
            let _ = writeln!(out, "g {}", gen.index());
        }
        Backing::Product(factors) => {
            for f in factors {
                write_doc(out, f, &Notes::default());
            }
        }
        Backing::Permutation { q, n, sigma } => {
            let _ = writeln!(out, "q {q}");
            let _ = writeln!(out, "width {}", n - 1);
            let _ = writeln!(out, "sigma {}", quote(&sigma.cycle_string()));
        }
    }
    for (i, members) in &notes.grades {
        let _ = writeln!(out, "grade {i} {}", join_nums(members));
    }
    let _ = writeln!(out, "end");
}

#[derive(Debug)]
struct Line<'a> {
    no: usize,
    key: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let l = strip_comment(raw).trim();
            if l.is_empty() {
                return None;
            }
            let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            Some(Line { no: i + 1, key, rest: rest.trim() })
        })
        .collect()
}

/// Drops a `#` comment that is not inside a quoted string.
fn strip_comment(line: &str) -> &str {
    let mut in_str = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_str => escaped = true,
            '"' => in_str = !in_str,
            '#' if !in_str => return &line[..i],
            _ => {}
        }
    }
    line
}

fn parse_strings(no: usize, s: &str) -> Result<Vec<String>, PgfError> {
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        match chars.next() {
            None => return Ok(out),
            Some('"') => {}
            Some(c) => return syntax(no, format!("expected a quoted string, found {c:?}")),
        }
        let mut cur = String::new();
        loop {
            match chars.next() {
                None => return syntax(no, "unterminated string"),
                Some('"') => break,
                Some('\\') => match chars.next() {
                    Some('n') => cur.push('\n'),
                    Some(c @ ('"' | '\\')) => cur.push(c),
                    _ => return syntax(no, "bad escape"),
                },
                Some(c) => cur.push(c),
            }
        }
        out.push(cur);
    }
}

fn parse_nums(no: usize, s: &str) -> Result<Vec<usize>, PgfError> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().or_else(|_| syntax(no, format!("expected a number, found {t:?}"))))
        .collect()
}

fn parse_one(no: usize, s: &str) -> Result<usize, PgfError> {
    match parse_nums(no, s)?.as_slice() {
        [x] => Ok(*x),
        _ => syntax(no, "expected one number"),
    }
}

#[derive(Default)]
struct Fields {
    kind: Option<(usize, String)>,
    arity: Option<usize>,
    size: Option<usize>,
    labels: Option<Vec<String>>,
    base_size: Option<usize>,
    base_labels: Option<Vec<String>>,
    rows: Vec<u32>,
    central: Option<usize>,
    beta: Option<Vec<usize>>,
    d: Option<usize>,
    subgroup: Option<String>,
    g: Option<usize>,
    q: Option<usize>,
    width: Option<usize>,
    sigma: Option<String>,
    children: Vec<NaryGroupoid>,
    notes: Notes,
}

/// Parses one document and builds its groupoid. The group axioms are
/// not checked here.
pub fn load(text: &str, limits: &Limits) -> Result<NaryGroupoid, PgfError> {
    Ok(load_with_notes(text, limits)?.0)
}

pub fn load_with_notes(text: &str, limits: &Limits) -> Result<(NaryGroupoid, Notes), PgfError> {
    let ls = lines(text);
    let mut pos = 0;
    let doc = parse_doc(&ls, &mut pos, limits)?;
    if let Some(l) = ls.get(pos) {
        return syntax(l.no, "content after the final `end`");
    }
    Ok(doc)
}

fn parse_doc(ls: &[Line<'_>], pos: &mut usize, limits: &Limits) -> Result<(NaryGroupoid, Notes), PgfError> {
    let Some(head) = ls.get(*pos) else {
        return syntax(0, "empty document");
    };
    if head.key != "pgf" {
        return syntax(head.no, "document must start with `pgf <version>`");
    }
    let version = parse_one(head.no, head.rest)?;
    if version != FORMAT_VERSION as usize {
        return syntax(head.no, format!("unsupported format version {version}"));
    }
    *pos += 1;
    let mut f = Fields::default();
    let mut last = head.no;
    loop {
        let Some(l) = ls.get(*pos) else {
            return syntax(last, "missing `end`");
        };
        last = l.no;
        let no = l.no;
        match l.key {
            "end" => {
                *pos += 1;
                break;
            }
            "pgf" => {
                let (child, _) = parse_doc(ls, pos, limits)?;
                f.children.push(child);
                continue;
            }
            "kind" => f.kind = Some((no, l.rest.to_string())),
            "arity" => f.arity = Some(parse_one(no, l.rest)?),
            "size" => f.size = Some(parse_one(no, l.rest)?),
            "labels" => f.labels = Some(parse_strings(no, l.rest)?),
            "base-size" => f.base_size = Some(parse_one(no, l.rest)?),
            "base-labels" => f.base_labels = Some(parse_strings(no, l.rest)?),
            "row" => f.rows.extend(parse_nums(no, l.rest)?.into_iter().map(|x| x as u32)),
            "central" => f.central = Some(parse_one(no, l.rest)?),
            "beta" => f.beta = Some(parse_nums(no, l.rest)?),
            "d" => f.d = Some(parse_one(no, l.rest)?),
            "subgroup" => {
                if !l.rest.chars().all(|c| c == '0' || c == '1') || l.rest.is_empty() {
                    return syntax(no, "subgroup must be a bit string");
                }
                f.subgroup = Some(l.rest.to_string());
            }
            "g" => f.g = Some(parse_one(no, l.rest)?),
            "q" => f.q = Some(parse_one(no, l.rest)?),
            "width" => f.width = Some(parse_one(no, l.rest)?),
            "sigma" => match parse_strings(no, l.rest)?.as_slice() {
                [s] => f.sigma = Some(s.clone()),
                _ => return syntax(no, "sigma takes one quoted cycle string"),
            },
            "grade" => {
                let nums = parse_nums(no, l.rest)?;
                let Some((&i, members)) = nums.split_first() else {
                    return syntax(no, "grade needs an index");
                };
                f.notes.grades.push((i, members.to_vec()));
            }
            other => return syntax(no, format!("unknown key `{other}`")),
        }
        *pos += 1;
    }
    let notes = std::mem::take(&mut f.notes);
    Ok((build(f, head.no, limits)?, notes))
}

fn need<T>(v: Option<T>, line: usize, key: &str) -> Result<T, PgfError> {
    v.map_or_else(|| syntax(line, format!("missing `{key}`")), Ok)
}

fn base_group(f: &Fields, line: usize, size: usize, labels: Option<Vec<String>>) -> Result<BinaryGroupTable, PgfError> {
    if f.rows.len() != size * size {
        return syntax(line, format!("base table has {} entries, expected {}", f.rows.len(), size * size));
    }
    Ok(BinaryGroupTable::from_table(size, f.rows.clone(), labels)?)
}

fn element(line: usize, x: usize, size: usize) -> Result<ElementId, PgfError> {
    if x < size {
        Ok(ElementId::new(x))
    } else {
        syntax(line, format!("element {x} out of range for size {size}"))
    }
}

fn build(f: Fields, line: usize, limits: &Limits) -> Result<NaryGroupoid, PgfError> {
    let (kline, kind) = need(f.kind.clone(), line, "kind")?;
    let n = need(f.arity, line, "arity")?;
    let k = need(f.size, line, "size")?;
    if let Some(l) = &f.labels {
        if l.len() != k {
            return syntax(line, format!("{} labels for size {k}", l.len()));
        }
    }
    let g = match kind.as_str() {
        "table" => {
            let expected = polyad::groupoid::pow_u128(k, n);
            if expected > limits.table_cap as u128 {
                return Err(polyad::Error::BudgetExceeded { needed: expected, budget: limits.table_cap }.into());
            }
            NaryGroupoid::from_table(k, n, f.rows.clone(), f.labels.clone())?
        }
        "derived" => {
            let base = base_group(&f, line, k, f.labels.clone())?;
            let c = element(line, need(f.central, line, "central")?, k)?;
            derived_groupoid(&base, c, n, limits)?
        }
        "gluskin" => {
            let base = base_group(&f, line, k, f.labels.clone())?;
            let beta =
                PermutationMap::new(need(f.beta.clone(), line, "beta")?.into_iter().map(|x| x as u32).collect())?;
            let d = element(line, need(f.d, line, "d")?, k)?;
            gluskin_groupoid(&base, &beta, d, n, limits)?
        }
        "coset" => {
            let m = need(f.base_size, line, "base-size")?;
            let base = base_group(&f, line, m, f.base_labels.clone())?;
            let bits = need(f.subgroup.clone(), line, "subgroup")?;
            if bits.len() != m {
                return syntax(line, "subgroup bit string length differs from base-size");
            }
            let h = ElemSet::from_elements(
                m,
                bits.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| ElementId::new(i)),
            );
            let gen = element(line, need(f.g, line, "g")?, m)?;
            let g = coset_groupoid(&base, &h, gen, n, limits)?;
            if g.size() != k {
                return syntax(line, format!("coset has {} elements, size says {k}", g.size()));
            }
            match f.labels.clone() {
                Some(l) => g.with_labels(l)?,
                None => g,
            }
        }
        "product" => {
            if f.children.is_empty() {
                return syntax(line, "product without factors");
            }
            let g = product_groupoid(&f.children, limits)?;
            if g.size() != k || g.arity() != n {
                return syntax(line, "product size or arity differs from its factors");
            }
            match f.labels.clone() {
                Some(l) => g.with_labels(l)?,
                None => g,
            }
        }
        "permutation" => {
            let q = need(f.q, line, "q")?;
            let w = need(f.width, line, "width")?;
            let sigma = PermutationMap::parse_cycles(&need(f.sigma.clone(), line, "sigma")?, w)?;
            let g = permutation_groupoid(q, &sigma, Some(n), limits)?;
            if g.size() != k {
                return syntax(line, format!("permutation group has {} elements, size says {k}", g.size()));
            }
            match f.labels.clone() {
                Some(l) => g.with_labels(l)?,
                None => g,
            }
        }
        other => return syntax(kline, format!("unknown kind `{other}`")),
    };
    if !f.children.is_empty() && kind != "product" {
        return syntax(line, "nested documents are only allowed in a product");
    }
    if g.arity() != n || g.size() != k {
        return syntax(line, "arity or size differs from the payload");
    }
    Ok(g)
}
