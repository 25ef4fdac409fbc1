use std::fmt::Write as _;
use std::io::Read;

use polyad::{ElemSet, ElementId, Limits, NaryGroup, NaryGroupoid};
use serde_json::{json, Value};

use crate::pgf::{self, PgfError};

/// A failure with its exit code: 1 when a verification fails, 2 for bad
/// input.
#[derive(Debug)]
pub enum CliError {
    Verification(String),
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Verification(m) | CliError::Input(m) => m,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

impl From<PgfError> for CliError {
    fn from(e: PgfError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<polyad::Error> for CliError {
    fn from(e: polyad::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

/// What a command prints: plain text, or JSON under `--json`.
pub struct Output {
    pub text: String,
    pub json: Value,
}

pub struct Ctx {
    pub limits: Limits,
}

pub fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input(format!("cannot read {path}: {e}")))
    }
}

pub fn load_groupoid(ctx: &Ctx, path: &str) -> CliResult<NaryGroupoid> {
    Ok(pgf::load(&read_source(path)?, &ctx.limits)?)
}

/// Loads a document and checks the group axioms, exhaustively when the
/// budget allows and on a fixed sample otherwise.
pub fn load_group(ctx: &Ctx, path: &str) -> CliResult<NaryGroup> {
    let g = load_groupoid(ctx, path)?;
    to_group(g, &ctx.limits)
}

pub fn to_group(g: NaryGroupoid, limits: &Limits) -> CliResult<NaryGroup> {
    let labels = g.labels().to_vec();
    NaryGroup::trusted(g, limits).map_err(|e| verification_error(e, &labels))
}

pub fn verification_error(e: polyad::Error, labels: &[String]) -> CliError {
    let word = |xs: &[ElementId]| xs.iter().map(|x| labels[x.index()].as_str()).collect::<Vec<_>>().join(" ");
    match e {
        polyad::Error::NotAssociative(v) => CliError::Verification(format!(
            "not associative: on ({}) the bracket at position 0 gives {} but the bracket at position {} gives {}",
            word(&v.tuple),
            labels[v.left.index()],
            v.position,
            labels[v.right.index()]
        )),
        polyad::Error::NotGroup(v) => {
            let shape = if v.left_unknown {
                format!("[x {}] = {}", word(&v.known), labels[v.rhs.index()])
            } else {
                format!("[{} y] = {}", word(&v.known), labels[v.rhs.index()])
            };
            CliError::Verification(format!("not a group: {shape} has no solution"))
        }
        other => CliError::Input(other.to_string()),
    }
}

/// An element by label, or by index when no label matches.
pub fn parse_element(g: &NaryGroup, token: &str) -> CliResult<ElementId> {
    let token = token.trim();
    if let Some(x) = g.elements().find(|&x| g.label(x) == token) {
        return Ok(x);
    }
    match token.parse::<usize>() {
        Ok(i) if i < g.size() => Ok(ElementId::new(i)),
        _ => Err(input(format!("unknown element `{token}`"))),
    }
}

/// Splits on commas outside parentheses, so product labels like `(a,b)`
/// stay whole.
pub fn split_list(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|t| !t.is_empty()).collect()
}

pub fn parse_subset(g: &NaryGroup, s: &str) -> CliResult<ElemSet> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}');
    let ids = split_list(s).into_iter().map(|t| parse_element(g, t)).collect::<CliResult<Vec<_>>>()?;
    if ids.is_empty() {
        return Err(input("empty subset"));
    }
    Ok(ElemSet::from_elements(g.size(), ids))
}

pub fn parse_subgroup(g: &NaryGroup, s: &str) -> CliResult<ElemSet> {
    let b = parse_subset(g, s)?;
    if !polyad::subgroups::is_subgroup(g, &b) {
        return Err(input(format!("{} is not a subgroup", fmt_set(g, &b))));
    }
    Ok(b)
}

pub fn fmt_set(g: &NaryGroup, s: &ElemSet) -> String {
    let items: Vec<&str> = s.iter().map(|x| g.label(x)).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn set_json(g: &NaryGroup, s: &ElemSet) -> Value {
    json!(s.iter().map(|x| g.label(x)).collect::<Vec<_>>())
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub struct Text(pub String);

impl Text {
    pub fn new() -> Self {
        Text(String::new())
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        let _ = writeln!(self.0, "{}", s.as_ref());
        self
    }
}
