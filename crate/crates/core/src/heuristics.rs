//! Hill climbing for Close to Most Strings and Far from Most Strings.
//!
//! Each step scans every single-position change in (position, symbol) order
//! and takes the best one, keeping the earliest on ties. A step is taken
//! only if it strictly increases the objective; on a plateau the restart
//! ends. The best center over all restarts wins by (value, then
//! lexicographically smallest center).

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::CenterResult;
use crate::rng;
use crate::strings::{CmsInstance, FfmsInstance, StringSet, Word};

/// Where each restart begins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartStrategy {
    /// Uniformly random words, one per restart.
    Random,
    /// Every input string once; `restarts` is ignored.
    InputStrings,
    /// Random canonical words from `{00, 11}^{ℓ/2}`, for instances produced
    /// by the Max-2-SAT reduction. Requires a binary alphabet and even `ℓ`.
    Canonical,
    /// Exactly these words, in order; `restarts` is ignored.
    Given(Vec<Word>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
    pub start: StartStrategy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            restarts: 10,
            max_iterations: 10_000,
            start: StartStrategy::InputStrings,
        }
    }
}

#[derive(Clone, Copy)]
enum Goal {
    Close(usize),
    Far(usize),
}

impl Goal {
    fn qualifies(self, dist: usize) -> bool {
        match self {
            Goal::Close(d) => dist <= d,
            Goal::Far(d) => dist >= d,
        }
    }
}

fn starts(set: &StringSet, cfg: &SearchConfig) -> Result<Vec<Word>> {
    if cfg.restarts == 0 || cfg.max_iterations == 0 {
        return Err(Error::Input(
            "restarts and max_iterations must be positive".into(),
        ));
    }
    let sigma = set.alphabet();
    let len = set.word_len();
    let random_word = |i: usize, canonical: bool| -> Result<Word> {
        let mut r = rng::seeded(rng::derive_seed(cfg.seed, i as u64));
        let symbols: Vec<u8> = if canonical {
            (0..len / 2)
                .flat_map(|_| {
                    let b = r.gen_range(0..2u8);
                    [b, b]
                })
                .collect()
        } else {
            (0..len)
                .map(|_| r.gen_range(0..sigma.size() as u8))
                .collect()
        };
        Word::new(sigma, &symbols)
    };
    match &cfg.start {
        StartStrategy::Random => (0..cfg.restarts).map(|i| random_word(i, false)).collect(),
        StartStrategy::Canonical => {
            if !sigma.is_binary() || !len.is_multiple_of(2) {
                return Err(Error::Input(
                    "canonical starts need a binary alphabet and even word length".into(),
                ));
            }
            (0..cfg.restarts).map(|i| random_word(i, true)).collect()
        }
        StartStrategy::InputStrings => Ok(set.words().to_vec()),
        StartStrategy::Given(words) => {
            if words.is_empty() {
                return Err(Error::Input("no start words given".into()));
            }
            for w in words {
                set.check_word(w)?;
            }
            Ok(words.clone())
        }
    }
}

fn climb(set: &StringSet, goal: Goal, start: Word, max_iterations: usize) -> (usize, Word) {
    let sigma = set.alphabet().size() as u8;
    let mut center = start;
    let mut dists: Vec<usize> = set.words().iter().map(|w| w.distance(&center)).collect();
    let mut value = dists.iter().filter(|&&x| goal.qualifies(x)).count();
    let column: Vec<Vec<u8>> = (0..set.word_len())
        .map(|j| set.words().iter().map(|w| w.get(j)).collect())
        .collect();
    for _ in 0..max_iterations {
        let mut best: Option<(usize, usize, u8)> = None;
        for (pos, col) in column.iter().enumerate() {
            let current = center.get(pos);
            for symbol in (0..sigma).filter(|&s| s != current) {
                let moved = col
                    .iter()
                    .zip(&dists)
                    .filter(|(&c, &dist)| {
                        let next = if c == current {
                            dist + 1
                        } else if c == symbol {
                            dist - 1
                        } else {
                            dist
                        };
                        goal.qualifies(next)
                    })
                    .count();
                if best.is_none_or(|(v, _, _)| moved > v) {
                    best = Some((moved, pos, symbol));
                }
            }
        }
        match best {
            Some((v, pos, symbol)) if v > value => {
                let current = center.get(pos);
                for (dist, &c) in dists.iter_mut().zip(&column[pos]) {
                    if c == current {
                        *dist += 1;
                    } else if c == symbol {
                        *dist -= 1;
                    }
                }
                center.set(pos, symbol);
                value = v;
            }
            _ => break,
        }
    }
    (value, center)
}

fn search(set: &StringSet, goal: Goal, cfg: &SearchConfig) -> Result<CenterResult> {
    let starts = starts(set, cfg)?;
    let (value, center) = starts
        .into_par_iter()
        .map(|s| climb(set, goal, s, cfg.max_iterations))
        .reduce_with(|a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        })
        .expect("at least one start");
    Ok(CenterResult {
        center,
        value,
        chosen_subset: None,
    })
}

pub fn local_search_cms(inst: &CmsInstance, cfg: &SearchConfig) -> Result<CenterResult> {
    search(inst.set(), Goal::Close(inst.d()), cfg)
}

pub fn local_search_ffms(inst: &FfmsInstance, cfg: &SearchConfig) -> Result<CenterResult> {
    search(inst.set(), Goal::Far(inst.d()), cfg)
}
