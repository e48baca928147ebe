//! Hardness reductions as instance generators.
//!
//! * Max-2-SAT → Close to Most Strings (randomized). Each clause becomes a
//!   word of length `2n` built from two-symbol blocks, and `c·m` random
//!   "fixing" words from `{01, 10}^n` are added. The distance bound is
//!   `d = n`. An assignment `x` is encoded as the canonical word `x̂` in
//!   `{00, 11}^n`.
//! * Densest-k-Subgraph → Most Strings with Few Bad Columns
//!   (deterministic). Each edge becomes its 0-1 incidence word and one
//!   all-zero word is appended; `k` is passed through unchanged.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{solve_dks_exact, solve_msfbc_subsets, Budget};
use crate::graph::Graph;
use crate::rng;
use crate::sat::{Assignment, Clause, Max2SatInstance};
use crate::strings::{bad_columns, hamming, Alphabet, CmsInstance, MsfbcInstance, StringSet, Word};

/// Default number of fixing strings per clause.
pub const DEFAULT_C: usize = 20;

/// What a generated string stands for. Ordinals are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SourceRef {
    Clause(usize),
    Fixing(usize),
    Edge(usize),
    Zero,
}

impl SourceRef {
    pub fn kind(&self) -> &'static str {
        match self {
            SourceRef::Clause(_) => "clause",
            SourceRef::Fixing(_) => "fixing",
            SourceRef::Edge(_) => "edge",
            SourceRef::Zero => "zero",
        }
    }
}

impl fmt::Display for SourceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceRef::Clause(j) | SourceRef::Fixing(j) | SourceRef::Edge(j) => {
                write!(f, "{} {}", self.kind(), j + 1)
            }
            SourceRef::Zero => write!(f, "zero -"),
        }
    }
}

/// Binds a generated instance to its source and the randomness used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub source: String,
    pub seed: Option<u64>,
    pub c: Option<usize>,
    pub d: Option<usize>,
    pub k: Option<usize>,
    /// `map[i]` describes generated string `i`.
    pub map: Vec<SourceRef>,
}

/// Clause word of length `2n`: block `i` is `00` if the clause contains
/// `¬x_i`, `11` if it contains `x_i`, and `01` otherwise.
pub fn clause_string(clause: &Clause, n: usize) -> Result<Word> {
    if clause.max_var() >= n {
        return Err(Error::Input(format!(
            "clause {clause} mentions a variable beyond x{n}"
        )));
    }
    let mut symbols = Vec::with_capacity(2 * n);
    for var in 0..n {
        let block = match clause.literal_on(var) {
            Some(l) if l.is_positive() => [1, 1],
            Some(_) => [0, 0],
            None => [0, 1],
        };
        symbols.extend(block);
    }
    Word::new(Alphabet::BINARY, &symbols)
}

/// Canonical word `x̂`: block `11` for a true variable, `00` for a false one.
pub fn encode_assignment(x: &Assignment) -> Result<Word> {
    let symbols: Vec<u8> = x
        .values()
        .iter()
        .flat_map(|&v| if v { [1, 1] } else { [0, 0] })
        .collect();
    Word::new(Alphabet::BINARY, &symbols)
}

/// Inverse of [`encode_assignment`]. Fails on any `01`/`10` block.
pub fn decode_center(s: &Word) -> Result<Assignment> {
    if !s.alphabet().is_binary() {
        return Err(Error::NotBinary(s.alphabet().size()));
    }
    if !s.len().is_multiple_of(2) {
        return Err(Error::Input(format!(
            "center length {} is not a whole number of blocks",
            s.len()
        )));
    }
    (0..s.len() / 2)
        .map(|i| match (s.get(2 * i), s.get(2 * i + 1)) {
            (1, 1) => Ok(true),
            (0, 0) => Ok(false),
            (a, b) => Err(Error::NonCanonicalCenter {
                block: i + 1,
                pattern: format!("{a}{b}"),
            }),
        })
        .collect::<Result<Vec<bool>>>()
        .map(Assignment::new)
}

/// `count` words from `{01, 10}^n`, each block chosen by a fair coin.
pub fn fixing_strings_from<R: Rng>(count: usize, n: usize, rng: &mut R) -> Result<Vec<Word>> {
    (0..count)
        .map(|_| {
            let symbols: Vec<u8> = (0..n)
                .flat_map(|_| if rng.gen::<bool>() { [1, 0] } else { [0, 1] })
                .collect();
            Word::new(Alphabet::BINARY, &symbols)
        })
        .collect()
}

/// [`fixing_strings_from`] driven by a fresh generator for `seed`.
pub fn fixing_strings(count: usize, n: usize, seed: u64) -> Result<Vec<Word>> {
    fixing_strings_from(count, n, &mut rng::seeded(seed))
}

/// Builds the Close to Most Strings instance for `phi`.
///
/// String order: the `m` clause words, then the `c·m` fixing words.
pub fn reduce_max2sat_to_cms(
    phi: &Max2SatInstance,
    c: usize,
    seed: u64,
) -> Result<(CmsInstance, ReductionCertificate)> {
    let (n, m) = (phi.variable_count(), phi.clause_count());
    if m < n {
        return Err(Error::Input(format!(
            "the reduction needs at least as many clauses as variables (m = {m} < n = {n}); \
             eliminate variables occurring in at most one clause first"
        )));
    }
    if c == 0 {
        return Err(Error::Input("c must be at least 1".into()));
    }
    let mut words = phi
        .clauses()
        .iter()
        .map(|cl| clause_string(cl, n))
        .collect::<Result<Vec<_>>>()?;
    words.extend(fixing_strings(c * m, n, seed)?);
    let map = (0..m)
        .map(SourceRef::Clause)
        .chain((0..c * m).map(SourceRef::Fixing))
        .collect();
    let inst = CmsInstance::new(StringSet::new(words)?, n)?;
    let cert = ReductionCertificate {
        source: format!("max2sat n={n} m={m}"),
        seed: Some(seed),
        c: Some(c),
        d: Some(n),
        k: None,
        map,
    };
    Ok((inst, cert))
}

/// `hamming(x̂, clause_string(ω))`, which equals
/// `n − |ω| + 2·(literals of ω falsified by x)`.
pub fn clause_distance_identity(x: &Assignment, clause: &Clause, n: usize) -> Result<usize> {
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: x.len(),
        });
    }
    hamming(&encode_assignment(x)?, &clause_string(clause, n)?)
}

/// 0-1 word of length `vertex_count` with ones at the edge's endpoints.
pub fn incidence_vector(edge: (usize, usize), vertex_count: usize) -> Result<Word> {
    let (u, v) = edge;
    if u == v {
        return Err(Error::Input(format!("loop edge on vertex {}", u + 1)));
    }
    if u >= vertex_count || v >= vertex_count {
        return Err(Error::Input(format!(
            "edge ({}, {}) outside [1, {vertex_count}]",
            u + 1,
            v + 1
        )));
    }
    let mut symbols = vec![0u8; vertex_count];
    symbols[u] = 1;
    symbols[v] = 1;
    Word::new(Alphabet::BINARY, &symbols)
}

/// Builds the Most Strings with Few Bad Columns instance for `(graph, k)`.
///
/// String order: one incidence word per edge in edge order, then the
/// all-zero word.
pub fn reduce_dks_to_msfbc(
    graph: &Graph,
    k: usize,
) -> Result<(MsfbcInstance, ReductionCertificate)> {
    let v = graph.vertex_count();
    if k == 0 || k > v {
        return Err(Error::Input(format!("k = {k} outside [1, {v}]")));
    }
    let mut words = graph
        .edges()
        .iter()
        .map(|&e| incidence_vector(e, v))
        .collect::<Result<Vec<_>>>()?;
    words.push(Word::zeros(Alphabet::BINARY, v)?);
    let map = (0..graph.edge_count())
        .map(SourceRef::Edge)
        .chain(std::iter::once(SourceRef::Zero))
        .collect();
    let inst = MsfbcInstance::new(StringSet::new(words)?, k)?;
    let cert = ReductionCertificate {
        source: format!("graph V={v} E={}", graph.edge_count()),
        seed: None,
        c: None,
        d: None,
        k: Some(k),
        map,
    };
    Ok((inst, cert))
}

fn zero_index(inst: &MsfbcInstance) -> Result<usize> {
    inst.set()
        .words()
        .iter()
        .position(|w| w.weight() == 0)
        .ok_or_else(|| Error::Input("instance has no all-zero string".into()))
}

fn sorted_unique(indices: &[usize]) -> Vec<usize> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Rewrites a feasible subset of a reduced instance into one that contains
/// the all-zero string, is no smaller, and has no more bad columns.
///
/// If adding the zero string would create a new bad column, that column is
/// all ones on the subset, so every chosen word is an edge at a common vertex
/// `v`. Dropping one such edge `vw` and adding zero trades column `w` for
/// column `v`. The dropped edge is the lexicographically first word of the
/// subset.
pub fn normalize_contains_zero(inst: &MsfbcInstance, subset: &[usize]) -> Result<Vec<usize>> {
    let k = inst.k();
    let zero = zero_index(inst)?;
    let set = inst.set();
    let mut t = sorted_unique(subset);
    let bad_t = if t.is_empty() {
        0
    } else {
        inst.bad_column_count(&t)?
    };
    if bad_t > k {
        return Err(Error::Input(format!(
            "subset has {bad_t} bad columns, more than k = {k}"
        )));
    }
    if t.contains(&zero) {
        return Ok(t);
    }
    let mut with_zero = t.clone();
    with_zero.push(zero);
    with_zero.sort_unstable();
    if inst.bad_column_count(&with_zero)? <= k {
        return Ok(with_zero);
    }
    let words = set.select(&t)?;
    let all_ones = (0..set.word_len()).find(|&col| words.iter().all(|w| w.get(col) == 1));
    if all_ones.is_none() {
        return Err(Error::Input(
            "subset is not made of incidence words sharing a vertex".into(),
        ));
    }
    let drop = *t
        .iter()
        .min_by(|&&a, &&b| set.get(a).cmp(set.get(b)).then(a.cmp(&b)))
        .expect("non-empty: adding zero changed the bad-column count");
    t.retain(|&i| i != drop);
    t.push(zero);
    t.sort_unstable();
    Ok(t)
}

/// Maps a feasible subset back to `k` vertices: the bad columns of the
/// normalized subset, padded with the lowest-index unused vertices. The
/// result induces at least `|subset| − 1` edges.
pub fn decode_msfbc_solution(
    inst: &MsfbcInstance,
    subset: &[usize],
    graph: &Graph,
) -> Result<Vec<usize>> {
    let k = inst.k();
    if inst.set().word_len() != graph.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: graph.vertex_count(),
            found: inst.set().word_len(),
        });
    }
    let normalized = normalize_contains_zero(inst, subset)?;
    let bad = bad_columns(inst.set().select(&normalized)?)?;
    if bad.count() > k {
        return Err(Error::Invariant(format!(
            "normalized subset has {} bad columns, more than k = {k}",
            bad.count()
        )));
    }
    let mut vertices = bad.to_vec();
    for v in 0..graph.vertex_count() {
        if vertices.len() >= k {
            break;
        }
        if !bad.contains(v) {
            vertices.push(v);
        }
    }
    vertices.sort_unstable();
    Ok(vertices)
}

/// Optimal values of both sides of the Densest-k-Subgraph reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    /// Densest-k-Subgraph optimum.
    pub alpha: usize,
    /// Optimum of the reduced bad-columns instance.
    pub beta: usize,
    /// `beta == alpha + 1`.
    pub pass: bool,
}

/// Solves both sides exactly and checks `β = α + 1`.
pub fn verify_claim_optval(graph: &Graph, k: usize, budget: &Budget) -> Result<ClaimReport> {
    let (_, alpha) = solve_dks_exact(graph, k, budget)?;
    let (inst, _) = reduce_dks_to_msfbc(graph, k)?;
    let beta = solve_msfbc_subsets(&inst, budget)?.size();
    Ok(ClaimReport {
        alpha,
        beta,
        pass: beta == alpha + 1,
    })
}
