//! Deciding "is there a center within radius `d` of some `k` strings?" with
//! a single call to a `(1+ε)`-approximation oracle for Closest to k Strings.
//!
//! Radii are integers, so with `(1+ε)·d < d+1` an oracle answer `d_ALG` on an
//! instance with `d_OPT <= d` must satisfy `d_ALG <= (1+ε)·d_OPT < d+1`, hence
//! `d_ALG <= d`; and if `d_OPT > d` then `d_ALG >= d_OPT > d`. The wrapper
//! uses `ε = 1/(2(d+1))`, which is below `1/d` for every `d >= 1`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exact::{self, nearest_k, Budget, CenterResult};
use crate::rng;
use crate::strings::CksInstance;

/// A `(1+ε)`-approximation for Closest to k Strings.
///
/// Implementations must return a feasible center and a `k`-subset whose
/// radius is the reported value and lies in `[d_OPT, (1+ε)·d_OPT]`.
pub trait ApproxOracle {
    fn approximate(&mut self, inst: &CksInstance, eps: f64) -> Result<CenterResult>;
}

/// Exact solver used as an oracle; ignores `ε`.
#[derive(Clone, Debug, Default)]
pub struct ExactOracle {
    pub budget: Budget,
}

impl ApproxOracle for ExactOracle {
    fn approximate(&mut self, inst: &CksInstance, _eps: f64) -> Result<CenterResult> {
        exact::solve_cks_exact(inst, &self.budget)
    }
}

/// Loosest contract-honoring oracle; each call draws a fresh sub-seed.
#[derive(Clone, Debug)]
pub struct InflatingOracle {
    pub seed: u64,
    pub budget: Budget,
    calls: u64,
}

impl InflatingOracle {
    pub fn new(seed: u64) -> Self {
        InflatingOracle {
            seed,
            budget: Budget::default(),
            calls: 0,
        }
    }
}

impl ApproxOracle for InflatingOracle {
    fn approximate(&mut self, inst: &CksInstance, eps: f64) -> Result<CenterResult> {
        let seed = rng::derive_seed(self.seed, self.calls);
        self.calls += 1;
        synthetic_inflating_oracle(inst, eps, seed, &self.budget)
    }
}

/// Largest radius a `(1+ε)`-approximation may report when the optimum is
/// `opt`.
pub fn inflation_ceiling(opt: usize, eps: f64) -> usize {
    // small slack absorbs rounding in (1+ε)·opt for exact integer products
    ((1.0 + eps) * opt as f64 + 1e-9).floor() as usize
}

/// Returns a feasible solution whose radius is drawn uniformly from
/// `[d_OPT, ⌊(1+ε)·d_OPT⌋]`, with the center and subset picked at random among
/// those attaining it. Falls back to the exact solution if nothing attains
/// the drawn radius.
pub fn synthetic_inflating_oracle(
    inst: &CksInstance,
    eps: f64,
    seed: u64,
    budget: &Budget,
) -> Result<CenterResult> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(Error::Input(format!(
            "ε must be a finite non-negative number, got {eps}"
        )));
    }
    let exact = exact::solve_cks_exact(inst, budget)?;
    let opt = exact.value;
    let ceiling = inflation_ceiling(opt, eps);
    let mut r = rng::seeded(seed);
    let target = r.gen_range(opt..=ceiling);
    if target == opt {
        return Ok(exact);
    }
    let set = inst.set();
    let k = inst.k();
    // a k-subset with radius exactly `target` exists around a center iff some
    // string sits at distance `target` and at least k strings are within it
    let mut chosen: Option<(crate::strings::Word, u64)> = None;
    exact::for_each_center(set.alphabet(), set.word_len(), budget, |c| {
        let dists: Vec<usize> = set.words().iter().map(|w| w.distance(c)).collect();
        let within = dists.iter().filter(|&&x| x <= target).count();
        if within >= k && dists.contains(&target) {
            let ticket = r.gen::<u64>();
            if chosen.as_ref().is_none_or(|(_, t)| ticket < *t) {
                chosen = Some((c.clone(), ticket));
            }
        }
    })?;
    let Some((center, _)) = chosen else {
        return Ok(exact);
    };
    let dists = set.distances(&center)?;
    let on_rim: Vec<usize> = (0..set.len()).filter(|&i| dists[i] == target).collect();
    let rim = *on_rim.choose(&mut r).expect("non-empty by construction");
    let mut inside: Vec<usize> = (0..set.len())
        .filter(|&i| i != rim && dists[i] <= target)
        .collect();
    inside.shuffle(&mut r);
    inside.truncate(k - 1);
    inside.push(rim);
    inside.sort_unstable();
    Ok(CenterResult {
        center,
        value: target,
        chosen_subset: Some(inside),
    })
}

/// `ε` used by [`decide_cks`] for query radius `d`.
pub fn epsilon_for(d: usize) -> f64 {
    1.0 / (2.0 * (d as f64 + 1.0))
}

fn check_contract(inst: &CksInstance, result: &CenterResult) -> Result<()> {
    let set = inst.set();
    set.check_word(&result.center)
        .map_err(|e| Error::ContractViolation(format!("infeasible center: {e}")))?;
    let subset = result
        .chosen_subset
        .as_ref()
        .ok_or_else(|| Error::ContractViolation("no subset returned".into()))?;
    let mut sorted = subset.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != inst.k() || sorted.iter().any(|&i| i >= set.len()) {
        return Err(Error::ContractViolation(format!(
            "subset must be {} distinct indices in range",
            inst.k()
        )));
    }
    let radius = sorted
        .iter()
        .map(|&i| set.get(i).distance(&result.center))
        .max()
        .unwrap_or(0);
    if radius != result.value {
        return Err(Error::ContractViolation(format!(
            "reported radius {} but the solution re-scores to {radius}",
            result.value
        )));
    }
    Ok(())
}

/// Is there a center and `k` strings all within distance `d` of it?
///
/// `d = 0` is answered directly (some string must occur `k` times).
/// Otherwise the oracle is called once with `ε = 1/(2(d+1))`.
pub fn decide_cks(inst: &CksInstance, d: usize, oracle: &mut dyn ApproxOracle) -> Result<bool> {
    if d == 0 {
        let words = inst.set().words();
        let max_mult = words
            .iter()
            .map(|w| words.iter().filter(|v| *v == w).count())
            .max()
            .unwrap_or(0);
        return Ok(max_mult >= inst.k());
    }
    let result = oracle.approximate(inst, epsilon_for(d))?;
    check_contract(inst, &result)?;
    Ok(result.value <= d)
}

/// The radius-`d` decision evaluated by brute force, for cross-checking.
pub fn decide_cks_brute(inst: &CksInstance, d: usize, budget: &Budget) -> Result<bool> {
    let mut yes = false;
    let set = inst.set();
    exact::for_each_center(set.alphabet(), set.word_len(), budget, |c| {
        if !yes {
            yes = nearest_k(set, c, inst.k())
                .map(|(r, _)| r <= d)
                .unwrap_or(false);
        }
    })?;
    Ok(yes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::{StringSet, Word};

    fn inst(words: &[&str], k: usize) -> CksInstance {
        CksInstance::new(StringSet::binary(words).unwrap(), k).unwrap()
    }

    #[test]
    fn decide_with_exact_oracle() {
        let i = inst(&["000", "011", "111"], 2);
        assert_eq!(
            exact::solve_cks_exact(&i, &Budget::default())
                .unwrap()
                .value,
            1
        );
        let mut o = ExactOracle::default();
        assert!(decide_cks(&i, 1, &mut o).unwrap());
        assert!(!decide_cks(&i, 0, &mut o).unwrap());
        assert!(decide_cks(&inst(&["00", "00"], 2), 0, &mut o).unwrap());
    }

    #[test]
    fn epsilon_threshold_is_integral_gap() {
        for d in 1..10_000usize {
            let eps = epsilon_for(d);
            assert!((1.0 + eps) * (d as f64) < d as f64 + 1.0);
            assert!(eps < 1.0 / d as f64);
        }
    }

    #[test]
    fn inflation_ceiling_floor_arithmetic() {
        assert_eq!(inflation_ceiling(4, 0.2), 4);
        assert_eq!(inflation_ceiling(10, 0.2), 12);
        assert_eq!(inflation_ceiling(7, 0.0), 7);
    }

    #[test]
    fn inflating_oracle_stays_in_range() {
        let sigma = crate::strings::Alphabet::new(3).unwrap();
        let set = StringSet::parse(sigma, &["0000", "1111", "2222", "0120", "2101"]).unwrap();
        let i = CksInstance::new(set, 4).unwrap();
        let b = Budget::default();
        let opt = exact::solve_cks_exact(&i, &b).unwrap().value;
        let mut seen = std::collections::BTreeSet::new();
        for seed in 0..200 {
            let r = synthetic_inflating_oracle(&i, 0.5, seed, &b).unwrap();
            check_contract(&i, &r).unwrap();
            assert!(r.value >= opt && r.value <= inflation_ceiling(opt, 0.5));
            seen.insert(r.value);
        }
        assert!(seen.len() > 1, "oracle never inflated: {seen:?}");
        let r = synthetic_inflating_oracle(&i, 0.0, 3, &b).unwrap();
        assert_eq!(r.value, opt);
    }

    struct Liar;
    impl ApproxOracle for Liar {
        fn approximate(&mut self, inst: &CksInstance, _eps: f64) -> Result<CenterResult> {
            Ok(CenterResult {
                center: Word::zeros(inst.set().alphabet(), inst.set().word_len()).unwrap(),
                value: 0,
                chosen_subset: Some((0..inst.k()).collect()),
            })
        }
    }

    #[test]
    fn contract_violation_detected() {
        let i = inst(&["011", "111"], 2);
        assert!(matches!(
            decide_cks(&i, 1, &mut Liar),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn soundness_against_brute_force() {
        let b = Budget::default();
        let mut r = rng::seeded(5);
        for trial in 0..30u64 {
            let len = r.gen_range(1..=5);
            let n = r.gen_range(1..=5);
            let words: Vec<Word> = (0..n)
                .map(|_| {
                    let s: Vec<u8> = (0..len).map(|_| r.gen_range(0..2)).collect();
                    Word::new(crate::strings::Alphabet::BINARY, &s).unwrap()
                })
                .collect();
            let i = CksInstance::new(StringSet::new(words).unwrap(), r.gen_range(1..=n)).unwrap();
            let mut o = InflatingOracle::new(trial);
            for d in 0..=len {
                assert_eq!(
                    decide_cks(&i, d, &mut o).unwrap(),
                    decide_cks_brute(&i, d, &b).unwrap()
                );
            }
        }
    }
}
