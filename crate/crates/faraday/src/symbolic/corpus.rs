//! Identity corpus: a plain-text stanza format for algebraic identities,
//! plus a runner that checks each one exactly.
//!
//! ```text
//! # comment
//! [name-of-identity]
//! signature = 1,3
//! scalars = a b          (optional, space separated)
//! vectors = E B          (optional, spatial 3-vectors)
//! vectors4 = u v         (optional, full vectors)
//! lhs = some expression
//!       that may continue on indented lines
//! rhs = another expression
//! ```
//!
//! Stanzas are independent: each carries its own signature and symbols.

use super::eval::{SymbolKind, SymbolTable};
use super::SymbolicError;
use crate::algebra::Signature;

/// The identities shipped with the crate.
pub const IDENTITY_CORPUS: &str = include_str!("../../corpus/identities.corpus");
/// A deliberately wrong corpus used to prove the checker can fail.
pub const NEGATIVE_CONTROL_CORPUS: &str = include_str!("../../corpus/negative_control.corpus");

#[derive(Debug, Clone)]
pub struct IdentityCase {
    pub name: String,
    pub sig: Signature,
    pub scalars: Vec<String>,
    pub vectors3: Vec<String>,
    pub vectors4: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

impl IdentityCase {
    pub fn symbol_table(&self) -> Result<SymbolTable, SymbolicError> {
        let mut t = SymbolTable::new();
        for s in &self.scalars {
            t.declare(s, SymbolKind::Scalar)?;
        }
        for v in &self.vectors3 {
            t.declare(v, SymbolKind::Vector3)?;
        }
        for v in &self.vectors4 {
            t.declare(v, SymbolKind::Vector4)?;
        }
        Ok(t)
    }
}

fn corpus_err(line: usize, msg: impl Into<String>) -> SymbolicError {
    SymbolicError::Corpus { line, msg: msg.into() }
}

struct Draft {
    name: String,
    line: usize,
    sig: Option<Signature>,
    scalars: Vec<String>,
    vectors3: Vec<String>,
    vectors4: Vec<String>,
    lhs: Option<String>,
    rhs: Option<String>,
}

impl Draft {
    fn finish(self) -> Result<IdentityCase, SymbolicError> {
        let sig = self.sig.ok_or_else(|| corpus_err(self.line, format!("[{}] missing 'signature ='", self.name)))?;
        let lhs = self.lhs.ok_or_else(|| corpus_err(self.line, format!("[{}] missing 'lhs ='", self.name)))?;
        let rhs = self.rhs.ok_or_else(|| corpus_err(self.line, format!("[{}] missing 'rhs ='", self.name)))?;
        Ok(IdentityCase {
            name: self.name,
            sig,
            scalars: self.scalars,
            vectors3: self.vectors3,
            vectors4: self.vectors4,
            lhs,
            rhs,
        })
    }
}

fn parse_signature(value: &str, line: usize) -> Result<Signature, SymbolicError> {
    let (p, q) = value
        .split_once(',')
        .ok_or_else(|| corpus_err(line, "signature must be 'p,q'"))?;
    let p: u32 = p.trim().parse().map_err(|_| corpus_err(line, "signature must be 'p,q'"))?;
    let q: u32 = q.trim().parse().map_err(|_| corpus_err(line, "signature must be 'p,q'"))?;
    Signature::new(p, q).map_err(|e| corpus_err(line, e.to_string()))
}

fn names(value: &str) -> Vec<String> {
    value.split_whitespace().map(str::to_string).collect()
}

pub fn parse_corpus(src: &str) -> Result<Vec<IdentityCase>, SymbolicError> {
    let mut cases = Vec::new();
    let mut draft: Option<Draft> = None;
    // which field indented continuation lines extend
    let mut open_field: Option<&'static str> = None;

    for (idx, raw) in src.lines().enumerate() {
        let lineno = idx + 1;
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let indented = raw.starts_with(|c: char| c == ' ' || c == '\t');
        let line = raw.trim();

        if line.starts_with('[') {
            let name = line
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| corpus_err(lineno, "malformed [name] header"))?
                .trim()
                .to_string();
            if name.is_empty() {
                return Err(corpus_err(lineno, "empty stanza name"));
            }
            if let Some(d) = draft.take() {
                cases.push(d.finish()?);
            }
            draft = Some(Draft {
                name,
                line: lineno,
                sig: None,
                scalars: Vec::new(),
                vectors3: Vec::new(),
                vectors4: Vec::new(),
                lhs: None,
                rhs: None,
            });
            open_field = None;
            continue;
        }

        let d = draft
            .as_mut()
            .ok_or_else(|| corpus_err(lineno, "content before the first [name] header"))?;

        if indented {
            // continuation of the previous lhs/rhs value
            let field = open_field
                .ok_or_else(|| corpus_err(lineno, "indented line continues nothing"))?;
            let slot = if field == "lhs" { &mut d.lhs } else { &mut d.rhs };
            match slot {
                Some(v) => {
                    v.push(' ');
                    v.push_str(line);
                }
                None => return Err(corpus_err(lineno, "indented line continues nothing")),
            }
            continue;
        }

        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| corpus_err(lineno, "expected 'key = value'"))?;
        let (key, value) = (key.trim(), value.trim());
        open_field = None;
        match key {
            "signature" => d.sig = Some(parse_signature(value, lineno)?),
            "scalars" => d.scalars.extend(names(value)),
            "vectors" => d.vectors3.extend(names(value)),
            "vectors4" => d.vectors4.extend(names(value)),
            "lhs" => {
                d.lhs = Some(value.to_string());
                open_field = Some("lhs");
            }
            "rhs" => {
                d.rhs = Some(value.to_string());
                open_field = Some("rhs");
            }
            other => return Err(corpus_err(lineno, format!("unknown key '{other}'"))),
        }
    }
    if let Some(d) = draft.take() {
        cases.push(d.finish()?);
    }
    Ok(cases)
}

/// Verdict for one corpus case. A case that fails to parse or evaluate is
/// reported as failed, never skipped.
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub name: String,
    pub sig: Signature,
    pub passed: bool,
    /// Empty on success; mismatch or error lines on failure.
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct CorpusReport {
    pub outcomes: Vec<CaseOutcome>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }
    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }
    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

pub fn run_corpus(cases: &[IdentityCase]) -> CorpusReport {
    let mut report = CorpusReport::default();
    for case in cases {
        let outcome = run_case(case);
        report.outcomes.push(outcome);
    }
    report
}

fn run_case(case: &IdentityCase) -> CaseOutcome {
    let fail = |detail: Vec<String>| CaseOutcome {
        name: case.name.clone(),
        sig: case.sig,
        passed: false,
        detail,
    };
    let table = match case.symbol_table() {
        Ok(t) => t,
        Err(e) => return fail(vec![format!("symbol declarations: {e}")]),
    };
    match super::eval::verify_identity(&case.lhs, &case.rhs, case.sig, &table) {
        Ok(check) if check.equal => CaseOutcome {
            name: case.name.clone(),
            sig: case.sig,
            passed: true,
            detail: Vec::new(),
        },
        Ok(check) => {
            let mut detail = check.mismatches;
            detail.push(format!("lhs canonical: {}", check.lhs_canonical));
            detail.push(format!("rhs canonical: {}", check.rhs_canonical));
            fail(detail)
        }
        Err(e) => fail(vec![e.to_string()]),
    }
}
