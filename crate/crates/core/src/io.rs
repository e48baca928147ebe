//! Line-oriented text formats.
//!
//! Strings instance:
//!
//! ```text
//! strings <σ> <ℓ> <n>
//! param <d|k> <value>
//! <n lines of ℓ symbol characters, 0-9 then a-z>
//! ```
//!
//! 2-CNF in DIMACS style (`p cnf <n> <m>`, then `±i ±j 0` per clause, `c`
//! comment lines allowed), graphs in DIMACS edge format (`p edge <V> <E>`,
//! then `e u v`), and the reduction certificate sidecar (`key=value` lines
//! with one `map=<string> <kind> <ref>` line per generated string). All
//! indices in these formats are 1-based.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reductions::{ReductionCertificate, SourceRef};
use crate::sat::{Clause, Literal, Max2SatInstance};
use crate::strings::{
    Alphabet, CksInstance, CmsInstance, FfmsInstance, MsfbcInstance, StringSet, Word,
};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn number<T: std::str::FromStr>(line: usize, (col, tok): (usize, &str), what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| parse_err(line, col, format!("expected {what}, found {tok:?}")))
}

/// Parameter line of a strings file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    /// Distance bound (Close to / Far from Most Strings).
    D(usize),
    /// String count or bad-column bound (Closest to k Strings / Most Strings
    /// with Few Bad Columns).
    K(usize),
}

/// A parsed strings file. The grammar does not say which of the four
/// problems is meant, so conversion to an instance type is explicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringsFile {
    pub set: StringSet,
    pub param: Param,
}

impl StringsFile {
    fn expect_d(&self) -> Result<usize> {
        match self.param {
            Param::D(d) => Ok(d),
            Param::K(_) => Err(Error::Input("expected `param d`, found `param k`".into())),
        }
    }

    fn expect_k(&self) -> Result<usize> {
        match self.param {
            Param::K(k) => Ok(k),
            Param::D(_) => Err(Error::Input("expected `param k`, found `param d`".into())),
        }
    }

    pub fn to_cms(&self) -> Result<CmsInstance> {
        CmsInstance::new(self.set.clone(), self.expect_d()?)
    }

    pub fn to_ffms(&self) -> Result<FfmsInstance> {
        FfmsInstance::new(self.set.clone(), self.expect_d()?)
    }

    pub fn to_cks(&self) -> Result<CksInstance> {
        CksInstance::new(self.set.clone(), self.expect_k()?)
    }

    pub fn to_msfbc(&self) -> Result<MsfbcInstance> {
        MsfbcInstance::new(self.set.clone(), self.expect_k()?)
    }
}

impl From<&CmsInstance> for StringsFile {
    fn from(inst: &CmsInstance) -> Self {
        StringsFile {
            set: inst.set().clone(),
            param: Param::D(inst.d()),
        }
    }
}

impl From<&FfmsInstance> for StringsFile {
    fn from(inst: &FfmsInstance) -> Self {
        StringsFile {
            set: inst.set().clone(),
            param: Param::D(inst.d()),
        }
    }
}

impl From<&CksInstance> for StringsFile {
    fn from(inst: &CksInstance) -> Self {
        StringsFile {
            set: inst.set().clone(),
            param: Param::K(inst.k()),
        }
    }
}

impl From<&MsfbcInstance> for StringsFile {
    fn from(inst: &MsfbcInstance) -> Self {
        StringsFile {
            set: inst.set().clone(),
            param: Param::K(inst.k()),
        }
    }
}

pub fn parse_strings_instance(text: &str) -> Result<StringsFile> {
    let mut lines = text.lines().map(|l| l.trim_end_matches('\r')).enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing `strings <σ> <ℓ> <n>` header"))?;
    let toks = tokens(header);
    if toks.len() != 4 || toks[0].1 != "strings" {
        return Err(parse_err(1, 1, "expected `strings <σ> <ℓ> <n>`"));
    }
    let sigma: usize = number(1, toks[1], "alphabet size")?;
    let len: usize = number(1, toks[2], "string length")?;
    let n: usize = number(1, toks[3], "string count")?;
    let alphabet = Alphabet::new(sigma).map_err(|e| parse_err(1, toks[1].0, e.to_string()))?;
    if len == 0 {
        return Err(parse_err(1, toks[2].0, "string length must be at least 1"));
    }
    if n == 0 {
        return Err(parse_err(1, toks[3].0, "string count must be at least 1"));
    }

    let (_, param_line) = lines
        .next()
        .ok_or_else(|| parse_err(2, 1, "missing `param <d|k> <value>` line"))?;
    let toks = tokens(param_line);
    if toks.len() != 3 || toks[0].1 != "param" {
        return Err(parse_err(2, 1, "expected `param <d|k> <value>`"));
    }
    let value: usize = number(2, toks[2], "parameter value")?;
    let param = match toks[1].1 {
        "d" => Param::D(value),
        "k" => Param::K(value),
        other => {
            return Err(parse_err(
                2,
                toks[1].0,
                format!("parameter must be `d` or `k`, found {other:?}"),
            ))
        }
    };

    let mut words = Vec::with_capacity(n);
    for (idx, line) in lines.by_ref() {
        let line_no = idx + 1;
        if words.len() == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(
                line_no,
                1,
                format!("unexpected content after {n} strings"),
            ));
        }
        let found = line.chars().count();
        if found != len {
            return Err(parse_err(
                line_no,
                1,
                format!(
                    "string {} has length {found}, expected {len}",
                    words.len() + 1
                ),
            ));
        }
        let word = Word::parse(alphabet, line).map_err(|e| match e {
            Error::SymbolOutOfRange { position, .. } => parse_err(line_no, position, e.to_string()),
            other => parse_err(line_no, 1, other.to_string()),
        })?;
        words.push(word);
    }
    if words.len() < n {
        let last = text.lines().count().max(2);
        return Err(parse_err(
            last + 1,
            1,
            format!("expected {n} strings, found {}", words.len()),
        ));
    }
    let set = StringSet::new(words)?;
    let file = StringsFile { set, param };
    // validate the parameter against at least one problem's range
    match param {
        Param::D(d) if d > len => Err(parse_err(
            2,
            toks[2].0,
            format!("d = {d} exceeds ℓ = {len}"),
        )),
        Param::K(k) if k > len.max(n) => Err(parse_err(
            2,
            toks[2].0,
            format!("k = {k} exceeds both ℓ = {len} and n = {n}"),
        )),
        _ => Ok(file),
    }
}

pub fn write_strings_instance(file: &StringsFile) -> String {
    let set = &file.set;
    let mut out = format!(
        "strings {} {} {}\n",
        set.alphabet().size(),
        set.word_len(),
        set.len()
    );
    match file.param {
        Param::D(d) => writeln!(out, "param d {d}"),
        Param::K(k) => writeln!(out, "param k {k}"),
    }
    .expect("write to String");
    for w in set.words() {
        writeln!(out, "{w}").expect("write to String");
    }
    out
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .map(|l| l.trim_end_matches('\r'))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !(t == "c" || t.starts_with("c ") || t.starts_with("c\t"))
        })
}

fn dimacs_header(line_no: usize, line: &str, kind: &str) -> Result<(usize, usize)> {
    let toks = tokens(line);
    if toks.len() != 4 || toks[0].1 != "p" || toks[1].1 != kind {
        return Err(parse_err(
            line_no,
            1,
            format!("expected `p {kind} <count> <count>`"),
        ));
    }
    Ok((
        number(line_no, toks[2], "a count")?,
        number(line_no, toks[3], "a count")?,
    ))
}

pub fn parse_cnf(text: &str) -> Result<Max2SatInstance> {
    let mut lines = content_lines(text);
    let (hl, h) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing `p cnf <n> <m>` header"))?;
    let (n, m) = dimacs_header(hl, h, "cnf")?;
    if n == 0 {
        return Err(parse_err(hl, 1, "a 2-CNF needs at least one variable"));
    }
    let mut clauses = Vec::with_capacity(m);
    for (line_no, line) in lines {
        let toks = tokens(line);
        let index = clauses.len() + 1;
        if clauses.len() == m {
            return Err(parse_err(
                line_no,
                1,
                format!("more than the declared {m} clauses"),
            ));
        }
        if toks.len() != 3 || toks[2].1 != "0" {
            return Err(parse_err(
                line_no,
                1,
                format!("clause {index} must be two literals followed by 0"),
            ));
        }
        let mut lits = [Literal::positive(0); 2];
        for (slot, &tok) in lits.iter_mut().zip(&toks[..2]) {
            let raw: i64 = number(line_no, tok, "a literal")?;
            let lit = Literal::from_dimacs(raw)
                .filter(|l| l.var() < n)
                .ok_or_else(|| {
                    parse_err(line_no, tok.0, format!("literal {raw} outside ±[1, {n}]"))
                })?;
            *slot = lit;
        }
        let clause = Clause::new(lits[0], lits[1]).map_err(|_| {
            parse_err(
                line_no,
                1,
                format!("clause {index} ({} ∨ {}) is tautological", lits[0], lits[1]),
            )
        })?;
        clauses.push(clause);
    }
    if clauses.len() != m {
        return Err(parse_err(
            text.lines().count() + 1,
            1,
            format!("declared {m} clauses, found {}", clauses.len()),
        ));
    }
    Max2SatInstance::new(n, clauses).map_err(|e| parse_err(hl, 1, e.to_string()))
}

pub fn write_cnf(phi: &Max2SatInstance) -> String {
    let mut out = format!("p cnf {} {}\n", phi.variable_count(), phi.clause_count());
    for c in phi.clauses() {
        let lits: Vec<i64> = c.literals().map(Literal::to_dimacs).collect();
        let second = lits.get(1).copied().unwrap_or(lits[0]);
        writeln!(out, "{} {} 0", lits[0], second).expect("write to String");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, h) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "missing `p edge <V> <E>` header"))?;
    let (v, e) = dimacs_header(hl, h, "edge")?;
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(e);
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        let toks = tokens(line);
        if toks.len() != 3 || toks[0].1 != "e" {
            return Err(parse_err(line_no, 1, "expected `e <u> <v>`"));
        }
        let mut ends = [0usize; 2];
        for (slot, &tok) in ends.iter_mut().zip(&toks[1..]) {
            let x: usize = number(line_no, tok, "a vertex")?;
            if x == 0 || x > v {
                return Err(parse_err(
                    line_no,
                    tok.0,
                    format!("vertex {x} outside [1, {v}]"),
                ));
            }
            *slot = x - 1;
        }
        let [a, b] = ends;
        if a == b {
            return Err(parse_err(line_no, 1, format!("loop on vertex {}", a + 1)));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(parse_err(
                line_no,
                1,
                format!("duplicate edge {} {}", a + 1, b + 1),
            ));
        }
        edges.push((a, b));
    }
    if edges.len() != e {
        return Err(parse_err(
            text.lines().count() + 1,
            1,
            format!("declared {e} edges, found {}", edges.len()),
        ));
    }
    Graph::new(v, edges).map_err(|err| parse_err(hl, 1, err.to_string()))
}

pub fn write_graph(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.vertex_count(), graph.edge_count());
    for (u, v) in graph.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).expect("write to String");
    }
    out
}

pub fn write_certificate(cert: &ReductionCertificate) -> String {
    let mut out = String::new();
    if let Some(seed) = cert.seed {
        writeln!(out, "seed={seed}").expect("write to String");
    }
    if let Some(c) = cert.c {
        writeln!(out, "c={c}").expect("write to String");
    }
    if let Some(d) = cert.d {
        writeln!(out, "d={d}").expect("write to String");
    }
    if let Some(k) = cert.k {
        writeln!(out, "k={k}").expect("write to String");
    }
    writeln!(out, "source={}", cert.source).expect("write to String");
    for (i, r) in cert.map.iter().enumerate() {
        writeln!(out, "map={} {r}", i + 1).expect("write to String");
    }
    out
}

pub fn parse_certificate(text: &str) -> Result<ReductionCertificate> {
    let mut cert = ReductionCertificate {
        source: String::new(),
        seed: None,
        c: None,
        d: None,
        k: None,
        map: Vec::new(),
    };
    let mut have_source = false;
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, 1, "expected `key=value`"))?;
        let col = key.chars().count() + 2;
        let int = |v: &str| -> Result<u64> {
            v.parse()
                .map_err(|_| parse_err(line_no, col, format!("expected an integer, found {v:?}")))
        };
        match key {
            "seed" => cert.seed = Some(int(value)?),
            "c" => cert.c = Some(int(value)? as usize),
            "d" => cert.d = Some(int(value)? as usize),
            "k" => cert.k = Some(int(value)? as usize),
            "source" => {
                cert.source = value.to_string();
                have_source = true;
            }
            "map" => {
                let parts: Vec<&str> = value.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(parse_err(
                        line_no,
                        col,
                        "expected `map=<index> <kind> <ref>`",
                    ));
                }
                let index = int(parts[0])? as usize;
                if index != cert.map.len() + 1 {
                    return Err(parse_err(
                        line_no,
                        col,
                        format!(
                            "map index {index} out of sequence, expected {}",
                            cert.map.len() + 1
                        ),
                    ));
                }
                let ordinal = || -> Result<usize> {
                    match int(parts[2])? {
                        0 => Err(parse_err(line_no, col, "references are 1-based")),
                        r => Ok(r as usize - 1),
                    }
                };
                let r = match parts[1] {
                    "clause" => SourceRef::Clause(ordinal()?),
                    "fixing" => SourceRef::Fixing(ordinal()?),
                    "edge" => SourceRef::Edge(ordinal()?),
                    "zero" => SourceRef::Zero,
                    other => {
                        return Err(parse_err(line_no, col, format!("unknown kind {other:?}")))
                    }
                };
                cert.map.push(r);
            }
            other => return Err(parse_err(line_no, 1, format!("unknown key {other:?}"))),
        }
    }
    if !have_source {
        return Err(parse_err(1, 1, "certificate has no `source=` line"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn strings_example() {
        let f = parse_strings_instance("strings 2 2 3\nparam d 1\n00\n01\n11\n").unwrap();
        let inst = f.to_cms().unwrap();
        assert_eq!(inst.set().alphabet().size(), 2);
        assert_eq!(
            (inst.set().word_len(), inst.set().len(), inst.d()),
            (2, 3, 1)
        );
        assert!(f.to_cks().is_err());
    }

    #[test]
    fn strings_errors() {
        let e = parse_strings_instance("strings 2 2 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_strings_instance("strings 2 6 2\nparam k 1\n000000\n00000\n").unwrap_err();
        assert_eq!(e, parse_err(4, 1, "string 2 has length 5, expected 6"));
        let e = parse_strings_instance("strings 2 3 1\nparam d 1\n012\n").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 3,
                    column: 3,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_strings_instance("strings 2 2 1\nparam d 1\n00\n11\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }), "{e}");
        let e = parse_strings_instance("strings 2 2 2\nparam d 1\n00\n").unwrap_err();
        assert!(e.to_string().contains("expected 2 strings, found 1"));
        let e = parse_strings_instance("strings 2 2 1\nparam x 1\n00\n").unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 2,
                    column: 7,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_strings_instance("strings 2 2 1\nparam d 3\n00\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn cnf_examples() {
        let phi = parse_cnf("p cnf 2 1\n1 -2 0\n").unwrap();
        assert_eq!(phi.variable_count(), 2);
        assert_eq!(phi.clauses()[0].to_string(), "(x1 ∨ ¬x2)");
        let e = parse_cnf("p cnf 2 1\n1 -1 0\n").unwrap_err();
        assert!(e.to_string().contains("clause 1"), "{e}");
        let phi = parse_cnf("c comment\np cnf 3 2\n1 2 0\n-1 3 0\n").unwrap();
        assert_eq!((phi.variable_count(), phi.clause_count()), (3, 2));
        assert!(parse_cnf("p cnf 2 1\n1 3 0\n").is_err());
        assert!(parse_cnf("p cnf 2 2\n1 2 0\n").is_err());
        let unit = parse_cnf("p cnf 2 1\n2 2 0\n").unwrap();
        assert_eq!(unit.clauses()[0].width(), 1);
        assert_eq!(parse_cnf(&write_cnf(&unit)).unwrap(), unit);
    }

    #[test]
    fn graph_examples() {
        let g = parse_graph("p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        let e = parse_graph("p edge 3 1\ne 1 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }) && e.to_string().contains("loop"));
        let e = parse_graph("p edge 3 1\ne 1 4\n").unwrap_err();
        assert!(e.to_string().contains("outside [1, 3]"));
        let e = parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }) && e.to_string().contains("duplicate"));
    }

    #[test]
    fn certificate_roundtrip() {
        let cert = ReductionCertificate {
            source: "phi.cnf".into(),
            seed: Some(7),
            c: Some(20),
            d: Some(3),
            k: None,
            map: vec![
                SourceRef::Clause(0),
                SourceRef::Fixing(0),
                SourceRef::Zero,
                SourceRef::Edge(4),
            ],
        };
        let text = write_certificate(&cert);
        assert!(text.starts_with("seed=7\nc=20\nd=3\nsource=phi.cnf\nmap=1 clause 1\n"));
        assert_eq!(parse_certificate(&text).unwrap(), cert);
        assert!(parse_certificate("seed=1\n").is_err());
        assert!(parse_certificate("source=x\nmap=2 zero -\n").is_err());
    }

    fn strings_file() -> impl Strategy<Value = StringsFile> {
        (2usize..=36, 1usize..12, 1usize..8).prop_flat_map(|(sigma, len, n)| {
            (
                proptest::collection::vec(proptest::collection::vec(0..sigma as u8, len), n),
                0..=len,
                any::<bool>(),
            )
                .prop_map(move |(rows, p, is_d)| {
                    let a = Alphabet::new(sigma).unwrap();
                    let words = rows.iter().map(|r| Word::new(a, r).unwrap()).collect();
                    StringsFile {
                        set: StringSet::new(words).unwrap(),
                        param: if is_d { Param::D(p) } else { Param::K(p) },
                    }
                })
        })
    }

    proptest! {
        #[test]
        fn strings_roundtrip(f in strings_file()) {
            prop_assert_eq!(parse_strings_instance(&write_strings_instance(&f)).unwrap(), f);
        }

        #[test]
        fn cnf_roundtrip(n in 2usize..10, m in 1usize..30, seed in any::<u64>()) {
            let phi = Max2SatInstance::random(n, m, &mut crate::rng::seeded(seed)).unwrap();
            prop_assert_eq!(parse_cnf(&write_cnf(&phi)).unwrap(), phi);
        }

        #[test]
        fn graph_roundtrip(v in 1usize..12, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = Graph::random(v, p, &mut crate::rng::seeded(seed));
            prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        }
    }
}
