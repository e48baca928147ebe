//! Brute-force exact solvers.
//!
//! These are the ground-truth oracles for everything else in the crate, so
//! they never truncate: a search larger than its [`Budget`] is an error.
//! Every solver is deterministic, with ties broken lexicographically (by
//! center word, by sorted index list, or by assignment with false < true).

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sat::{Assignment, Max2SatInstance};
use crate::strings::{
    Alphabet, CksInstance, CmsInstance, ColumnSet, FfmsInstance, MsfbcInstance, StringSet, Word,
};

/// Enumeration limits for the exact solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate centers `σ^ℓ`.
    pub centers: u64,
    /// Maximum number of strings for subset enumeration (`2^n` subsets).
    pub subset_strings: usize,
    /// Maximum number of column sets `C(ℓ, k)`.
    pub column_sets: u64,
    /// Maximum number of Boolean variables (`2^n` assignments).
    pub sat_variables: usize,
    /// Maximum number of vertex subsets `C(|V|, k)`.
    pub vertex_subsets: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            centers: 1 << 24,
            subset_strings: 20,
            column_sets: 1 << 24,
            sat_variables: 24,
            vertex_subsets: 1 << 24,
        }
    }
}

/// A center together with its objective value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterResult {
    pub center: Word,
    /// Coverage, anticoverage, or radius depending on the problem.
    pub value: usize,
    /// Sorted string indices of `S*` (Closest to k Strings only).
    pub chosen_subset: Option<Vec<usize>>,
}

/// A subset of strings and its number of bad columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetResult {
    pub indices: Vec<usize>,
    pub bad_column_count: usize,
}

impl SubsetResult {
    pub fn size(&self) -> usize {
        self.indices.len()
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn check_budget(what: &'static str, required: u128, limit: u128) -> Result<()> {
    if required > limit {
        return Err(Error::Budget {
            what,
            required,
            limit,
        });
    }
    Ok(())
}

/// Number of words of length `len` over `alphabet`, saturating.
pub fn center_count(alphabet: Alphabet, len: usize) -> u128 {
    (0..len).fold(1u128, |acc, _| acc.saturating_mul(alphabet.size() as u128))
}

/// Visits every word of `Σ^len` in lexicographic order.
pub fn for_each_center(
    alphabet: Alphabet,
    len: usize,
    budget: &Budget,
    mut visit: impl FnMut(&Word),
) -> Result<()> {
    check_budget(
        "center enumeration",
        center_count(alphabet, len),
        budget.centers as u128,
    )?;
    let sigma = alphabet.size() as u8;
    let mut center = Word::zeros(alphabet, len)?;
    let mut digits = vec![0u8; len];
    loop {
        visit(&center);
        let mut pos = len;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            if digits[pos] + 1 < sigma {
                digits[pos] += 1;
                center.set(pos, digits[pos]);
                break;
            }
            digits[pos] = 0;
            center.set(pos, 0);
        }
    }
}

fn best_center_by_count(
    set: &StringSet,
    budget: &Budget,
    qualifies: impl Fn(usize) -> bool,
) -> Result<CenterResult> {
    let mut best: Option<(usize, Word)> = None;
    for_each_center(set.alphabet(), set.word_len(), budget, |c| {
        let value = set
            .words()
            .iter()
            .filter(|w| qualifies(w.distance(c)))
            .count();
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, c.clone()));
        }
    })?;
    let (value, center) = best.expect("Σ^ℓ is non-empty");
    Ok(CenterResult {
        center,
        value,
        chosen_subset: None,
    })
}

/// Close to Most Strings by full center enumeration.
pub fn solve_cms_exact(inst: &CmsInstance, budget: &Budget) -> Result<CenterResult> {
    let d = inst.d();
    best_center_by_count(inst.set(), budget, |dist| dist <= d)
}

/// Far from Most Strings by full center enumeration.
pub fn solve_ffms_exact(inst: &FfmsInstance, budget: &Budget) -> Result<CenterResult> {
    let d = inst.d();
    best_center_by_count(inst.set(), budget, |dist| dist >= d)
}

/// The `k` strings nearest to `center`, ties by lowest index, returned sorted,
/// along with their radius.
pub fn nearest_k(set: &StringSet, center: &Word, k: usize) -> Result<(usize, Vec<usize>)> {
    let dists = set.distances(center)?;
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by_key(|&i| (dists[i], i));
    order.truncate(k);
    let radius = order.iter().map(|&i| dists[i]).max().unwrap_or(0);
    order.sort_unstable();
    Ok((radius, order))
}

/// Closest to k Strings by full center enumeration. For a fixed center the
/// best `S*` is its `k` nearest strings, so the radius is the `k`-th smallest
/// distance.
pub fn solve_cks_exact(inst: &CksInstance, budget: &Budget) -> Result<CenterResult> {
    let set = inst.set();
    let k = inst.k();
    let mut best: Option<(usize, Word)> = None;
    let mut dists = vec![0usize; set.len()];
    for_each_center(set.alphabet(), set.word_len(), budget, |c| {
        for (slot, w) in dists.iter_mut().zip(set.words()) {
            *slot = w.distance(c);
        }
        let (_, kth, _) = dists.select_nth_unstable(k - 1);
        let radius = *kth;
        if best.as_ref().is_none_or(|(r, _)| radius < *r) {
            best = Some((radius, c.clone()));
        }
    })?;
    let (value, center) = best.expect("Σ^ℓ is non-empty");
    let (radius, subset) = nearest_k(set, &center, k)?;
    debug_assert_eq!(radius, value);
    Ok(CenterResult {
        center,
        value,
        chosen_subset: Some(subset),
    })
}

/// Pairwise mismatch columns, `masks[a][b]`.
fn mismatch_table(set: &StringSet) -> Vec<Vec<ColumnSet>> {
    let words = set.words();
    words
        .iter()
        .map(|a| words.iter().map(|b| a.mismatches(b)).collect())
        .collect()
}

/// Most Strings with Few Bad Columns by exhaustive subset search.
///
/// Depth-first over include/exclude decisions in index order, trying
/// "include" first. A branch is cut when it already has more than `k` bad
/// columns (adding strings never removes one) or when it cannot beat the best
/// size found. Include-first order reaches the lexicographically smallest
/// index list of each size first, so strict improvement yields the tie-break
/// winner.
pub fn solve_msfbc_subsets(inst: &MsfbcInstance, budget: &Budget) -> Result<SubsetResult> {
    let set = inst.set();
    let n = set.len();
    if n > budget.subset_strings {
        return Err(Error::Budget {
            what: "subset enumeration",
            required: 1u128 << n.min(127),
            limit: 1u128 << budget.subset_strings.min(127),
        });
    }
    let masks = mismatch_table(set);
    let mut search = SubsetSearch {
        masks: &masks,
        k: inst.k(),
        n,
        chosen: Vec::with_capacity(n),
        best: Vec::new(),
        best_bad: 0,
    };
    search.descend(0, &ColumnSet::empty(set.word_len()));
    Ok(SubsetResult {
        indices: search.best,
        bad_column_count: search.best_bad,
    })
}

struct SubsetSearch<'a> {
    masks: &'a [Vec<ColumnSet>],
    k: usize,
    n: usize,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_bad: usize,
}

impl SubsetSearch<'_> {
    fn descend(&mut self, next: usize, bad: &ColumnSet) {
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
            self.best_bad = bad.count();
        }
        if next == self.n || self.chosen.len() + (self.n - next) <= self.best.len() {
            return;
        }
        let grown = match self.chosen.first() {
            None => Some(bad.clone()),
            Some(&first) => {
                let mut g = bad.clone();
                g.union_with(&self.masks[first][next]);
                (g.count() <= self.k).then_some(g)
            }
        };
        if let Some(g) = grown {
            self.chosen.push(next);
            self.descend(next + 1, &g);
            self.chosen.pop();
        }
        self.descend(next + 1, bad);
    }
}

/// Most Strings with Few Bad Columns by enumerating column sets.
///
/// A subset has at most `k` bad columns iff its words agree outside some set
/// `J` of `min(k, ℓ)` columns, so the optimum is the largest class of words
/// that coincide off `J`, over all such `J`.
pub fn solve_msfbc_columns(inst: &MsfbcInstance, budget: &Budget) -> Result<SubsetResult> {
    let set = inst.set();
    let len = set.word_len();
    let j = inst.k().min(len);
    check_budget(
        "column-set enumeration",
        binomial(len as u64, j as u64),
        budget.column_sets as u128,
    )?;
    let symbols: Vec<Vec<u8>> = set.words().iter().map(Word::to_symbols).collect();
    let mut best: Option<Vec<usize>> = None;
    for free in (0..len).combinations(j) {
        let mut fixed = vec![true; len];
        for &c in &free {
            fixed[c] = false;
        }
        let mut groups: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
        for (i, syms) in symbols.iter().enumerate() {
            let key: Vec<u8> = syms
                .iter()
                .zip(&fixed)
                .filter(|(_, &f)| f)
                .map(|(&s, _)| s)
                .collect();
            groups.entry(key).or_default().push(i);
        }
        for group in groups.into_values() {
            let better = match &best {
                None => true,
                Some(b) => group.len() > b.len() || (group.len() == b.len() && group < *b),
            };
            if better {
                best = Some(group);
            }
        }
    }
    let indices = best.expect("at least one group");
    let bad_column_count = inst.bad_column_count(&indices)?;
    Ok(SubsetResult {
        indices,
        bad_column_count,
    })
}

/// Max-2-SAT by enumerating all assignments.
pub fn solve_max2sat_exact(phi: &Max2SatInstance, budget: &Budget) -> Result<(Assignment, usize)> {
    let n = phi.variable_count();
    if n > budget.sat_variables {
        return Err(Error::Budget {
            what: "assignment enumeration",
            required: 1u128 << n.min(127),
            limit: 1u128 << budget.sat_variables.min(127),
        });
    }
    let mut best: Option<(Assignment, usize)> = None;
    for x in Assignment::all(n) {
        let sat = phi.satisfied_count(&x)?;
        if best.as_ref().is_none_or(|(_, s)| sat > *s) {
            best = Some((x, sat));
        }
    }
    Ok(best.expect("at least one assignment"))
}

/// Densest-k-Subgraph by enumerating all `k`-subsets of vertices.
pub fn solve_dks_exact(graph: &Graph, k: usize, budget: &Budget) -> Result<(Vec<usize>, usize)> {
    let v = graph.vertex_count();
    if k > v {
        return Err(Error::Input(format!("k = {k} exceeds the {v} vertices")));
    }
    check_budget(
        "vertex-subset enumeration",
        binomial(v as u64, k as u64),
        budget.vertex_subsets as u128,
    )?;
    let mut best: Option<(Vec<usize>, usize)> = None;
    for subset in (0..v).combinations(k) {
        let edges = graph.induced_edge_count(&subset);
        if best.as_ref().is_none_or(|(_, e)| edges > *e) {
            best = Some((subset, edges));
        }
    }
    Ok(best.expect("C(v, k) >= 1 for k <= v"))
}
