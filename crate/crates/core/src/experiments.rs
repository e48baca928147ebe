//! Verification campaigns for the Max-2-SAT → Close to Most Strings
//! reduction: the fixing-string structural property, the per-pair
//! probability bounds behind it, the arithmetic that fixes `c = 20`, and the
//! Las-Vegas retry loop.
//!
//! Words of length `2n` are handled as `u64` bit patterns here (position `j`
//! at bit `j`), which caps the exhaustive checks at `n <= 8`.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::CenterResult;
use crate::reductions::{decode_center, fixing_strings, reduce_max2sat_to_cms};
use crate::rng;
use crate::sat::{Assignment, Max2SatInstance};
use crate::strings::{CmsInstance, Word};

/// Largest `n` for exhaustive enumeration of `{0,1}^{2n}`.
pub const MAX_EXHAUSTIVE_N: usize = 8;

/// Default number of Las-Vegas trials before giving up.
pub const DEFAULT_TRIAL_CAP: usize = 1000;

/// One-sided 95% standard normal quantile.
const Z_95: f64 = 1.644_853_626_951_472_2;

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Input("n must be at least 1".into()));
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Budget {
            what: "enumeration of {0,1}^(2n)",
            required: 1u128 << (2 * n).min(127),
            limit: 1u128 << (2 * MAX_EXHAUSTIVE_N),
        });
    }
    Ok(())
}

fn is_canonical(s: u64, n: usize) -> bool {
    (0..n).all(|i| (s >> (2 * i)) & 1 == (s >> (2 * i + 1)) & 1)
}

/// Fixing string number `g` of `{01, 10}^n`: block `i` is `10` if bit `i` of
/// `g` is set, else `01`.
fn fixing_pattern(g: u64, n: usize) -> u64 {
    (0..n).fold(0, |acc, i| {
        let bit = if (g >> i) & 1 == 1 { 2 * i } else { 2 * i + 1 };
        acc | (1 << bit)
    })
}

fn distance(a: u64, b: u64) -> usize {
    (a ^ b).count_ones() as usize
}

fn non_canonical(n: usize) -> impl Iterator<Item = u64> {
    (0..1u64 << (2 * n)).filter(move |&s| !is_canonical(s, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub trial: usize,
    pub word: Word,
    /// Number of fixing strings at distance greater than `n`.
    pub far_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixingTrial {
    pub holds: bool,
    /// A non-canonical word with the fewest far fixing strings, when the
    /// property fails.
    pub witness: Option<Witness>,
}

/// Draws `c·m` fixing strings (the same ones [`reduce_max2sat_to_cms`] draws
/// for `seed`) and checks that every non-canonical word of length `2n` is at
/// distance greater than `n` from at least `m` of them.
pub fn lemma_fixing_trial(n: usize, m: usize, c: usize, seed: u64) -> Result<FixingTrial> {
    check_n(n)?;
    if m < n {
        return Err(Error::Input(format!("need m >= n, got m = {m}, n = {n}")));
    }
    let fixing: Vec<u64> = fixing_strings(c * m, n, seed)?
        .iter()
        .map(|w| w.to_bits().expect("length 2n <= 16"))
        .collect();
    let worst = non_canonical(n)
        .map(|s| (fixing.iter().filter(|&&f| distance(s, f) > n).count(), s))
        .min();
    Ok(match worst {
        Some((far, s)) if far < m => FixingTrial {
            holds: false,
            witness: Some(Witness {
                trial: 0,
                word: Word::from_bits(s, 2 * n)?,
                far_count: far,
            }),
        },
        _ => FixingTrial {
            holds: true,
            witness: None,
        },
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub trials: usize,
    pub seed: u64,
    pub failures: usize,
    /// Failing trials in trial order.
    pub witnesses: Vec<Witness>,
    /// `0.9^n`.
    pub bound: f64,
    /// One-sided 95% normal-approximation slack on the bound.
    pub slack: f64,
    /// `None` when no trials ran.
    pub within_bound: Option<bool>,
}

impl TrialReport {
    pub fn failure_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures as f64 / self.trials as f64
        }
    }
}

/// Runs `trials` independent fixing-lemma trials (trial `t` uses
/// `derive_seed(seed, t)`) and compares the failure fraction with `0.9^n`.
pub fn lemma_fixing_campaign(
    n: usize,
    m: usize,
    c: usize,
    trials: usize,
    seed: u64,
) -> Result<TrialReport> {
    check_n(n)?;
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| lemma_fixing_trial(n, m, c, rng::derive_seed(seed, t as u64)))
        .collect::<Result<Vec<_>>>()?;
    let witnesses: Vec<Witness> = outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(t, o)| o.witness.map(|w| Witness { trial: t, ..w }))
        .collect();
    let bound = 0.9f64.powi(n as i32);
    let slack = if trials == 0 {
        0.0
    } else {
        Z_95 * (bound * (1.0 - bound) / trials as f64).sqrt()
    };
    let failures = witnesses.len();
    let within_bound = (trials > 0).then(|| failures as f64 / trials as f64 <= bound + slack);
    Ok(TrialReport {
        n,
        m,
        c,
        trials,
        seed,
        failures,
        witnesses,
        bound,
        slack,
        within_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBound {
    pub n: usize,
    pub minimum: Ratio<u64>,
    /// Non-canonical word attaining the minimum (first in enumeration order).
    pub argmin: Word,
    pub holds: bool,
}

/// Exact minimum, over non-canonical `s`, of the fraction of fixing strings
/// at distance at least `n+1` from `s`. Should be at least 1/4.
pub fn per_pair_quarter_bound(n: usize) -> Result<PairBound> {
    check_n(n)?;
    let total = 1u64 << n;
    let fixing: Vec<u64> = (0..total).map(|g| fixing_pattern(g, n)).collect();
    let (count, s) = non_canonical(n)
        .map(|s| {
            (
                fixing.iter().filter(|&&f| distance(s, f) > n).count() as u64,
                s,
            )
        })
        .min_by_key(|&(count, s)| (count, s))
        .expect("n >= 1 has non-canonical words");
    let minimum = Ratio::new(count, total);
    Ok(PairBound {
        n,
        minimum,
        argmin: Word::from_bits(s, 2 * n)?,
        holds: minimum >= Ratio::new(1, 4),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionalBound {
    pub n: usize,
    pub minimum: Ratio<u64>,
    pub argmin: Word,
    /// 1-based mismatched block conditioned on at the minimum.
    pub block: usize,
    /// Every conditional distance histogram was symmetric about `n+1`.
    pub symmetric: bool,
    pub holds: bool,
}

/// For each non-canonical `s` and each mismatched block `i` of `s`, restricts
/// to fixing strings whose block `i` is the complement of `s`'s (so the block
/// contributes distance 2) and computes the exact fraction at distance at
/// least `n+1`. Returns the minimum, which should be at least 1/2.
pub fn conditional_half_bound(n: usize) -> Result<ConditionalBound> {
    check_n(n)?;
    let total = 1u64 << n;
    let fixing: Vec<u64> = (0..total).map(|g| fixing_pattern(g, n)).collect();
    let mut best: Option<(Ratio<u64>, u64, usize)> = None;
    let mut symmetric = true;
    for s in non_canonical(n) {
        for i in 0..n {
            let block = (s >> (2 * i)) & 3;
            if block != 0b01 && block != 0b10 {
                continue;
            }
            let opposite = block ^ 0b11;
            let mut hist = vec![0u64; 2 * n + 1];
            for &f in fixing.iter().filter(|&&f| (f >> (2 * i)) & 3 == opposite) {
                hist[distance(s, f)] += 1;
            }
            let conditioned: u64 = hist.iter().sum();
            let far: u64 = hist[n + 1..].iter().sum();
            symmetric &= (0..=n + 1).all(|t| {
                let lo = n + 1 - t;
                let hi = n + 1 + t;
                hist[lo] == hist.get(hi).copied().unwrap_or(0)
            });
            let frac = Ratio::new(far, conditioned);
            let candidate = (frac, s, i);
            if best
                .as_ref()
                .is_none_or(|b| (candidate.0, candidate.1) < (b.0, b.1))
            {
                best = Some(candidate);
            }
        }
    }
    let (minimum, s, i) = best.expect("n >= 1 has non-canonical words");
    Ok(ConditionalBound {
        n,
        minimum,
        argmin: Word::from_bits(s, 2 * n)?,
        block: i + 1,
        symmetric,
        holds: minimum >= Ratio::new(1, 2) && symmetric,
    })
}

/// A single failed grid point, kept for reporting.
#[derive(Clone, Debug, PartialEq)]
pub enum InequalityFailure {
    /// `(cm + k)/(1+ε) > cm + 21k/22` failed.
    Amplification { m: usize, k: usize, eps: f64 },
    /// `1 + ε < (cm + m/2)/(cm)` failed.
    Structural { m: usize, eps: f64 },
    /// `(4^n − 2^n)·exp(−(c−4)²n/(8c)) <= 0.9^n` failed.
    UnionBound {
        n: usize,
        log_lhs: f64,
        log_rhs: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct InequalityReport {
    pub c: usize,
    pub m_max: usize,
    /// `1/(21+44c)`.
    pub epsilon_threshold: Ratio<u64>,
    /// `−(c−4)²/(8c)`.
    pub exponent: f64,
    pub amplification_checked: u64,
    pub structural_checked: u64,
    pub union_checked: u64,
    pub failures: Vec<InequalityFailure>,
}

impl InequalityReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Largest `n` in the union-bound grid.
pub const UNION_BOUND_N_MAX: usize = 60;

/// Grid check of the three inequalities that pin down `c` and `ε`.
///
/// The ε grid is `{0.1, 0.5, 0.9}·1/(21+44c)`; the first two checks are
/// evaluated in exact integer arithmetic, the union bound in log space.
pub fn inequality_checks(c: usize, m_max: usize) -> Result<InequalityReport> {
    if c < 5 || m_max < 2 {
        return Err(Error::Input(format!(
            "inequality checks need c >= 5 and m_max >= 2, got c = {c}, m_max = {m_max}"
        )));
    }
    let t = 21 + 44 * c as u128;
    let eps_num: [u128; 3] = [1, 5, 9];
    let eps_f = |f: u128| f as f64 / (10.0 * t as f64);
    let cc = c as u128;

    // (cm+k)/(1+ε) > cm + 21k/22 with ε = f/(10t)
    //   ⟺ 220t(cm + k) > (10t + f)(22cm + 21k)
    let amp: Vec<(u64, Vec<InequalityFailure>)> = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let mm = m as u128;
            let mut failures = Vec::new();
            let mut checked = 0u64;
            for k in m.div_ceil(2)..=m {
                let kk = k as u128;
                for &f in &eps_num {
                    checked += 1;
                    if 220 * t * (cc * mm + kk) <= (10 * t + f) * (22 * cc * mm + 21 * kk) {
                        failures.push(InequalityFailure::Amplification {
                            m,
                            k,
                            eps: eps_f(f),
                        });
                    }
                }
            }
            (checked, failures)
        })
        .collect();
    let mut failures = Vec::new();
    let mut amplification_checked = 0;
    for (checked, f) in amp {
        amplification_checked += checked;
        failures.extend(f);
    }

    // 1 + ε < (cm + m/2)/(cm)  ⟺  2cm(10t + f) < 10t(2cm + m)
    let mut structural_checked = 0;
    for m in 1..=m_max {
        let mm = m as u128;
        for &f in &eps_num {
            structural_checked += 1;
            if 2 * cc * mm * (10 * t + f) >= 10 * t * (2 * cc * mm + mm) {
                failures.push(InequalityFailure::Structural { m, eps: eps_f(f) });
            }
        }
    }

    let exponent = -((c as f64 - 4.0).powi(2)) / (8.0 * c as f64);
    let mut union_checked = 0;
    for n in 1..=UNION_BOUND_N_MAX {
        union_checked += 1;
        let nf = n as f64;
        // ln(4^n − 2^n) = n ln 4 + ln(1 − 2^−n)
        let log_lhs = nf * 4f64.ln() + (-(0.5f64.powi(n as i32))).ln_1p() + exponent * nf;
        let log_rhs = nf * 0.9f64.ln();
        if log_lhs > log_rhs {
            failures.push(InequalityFailure::UnionBound {
                n,
                log_lhs,
                log_rhs,
            });
        }
    }

    Ok(InequalityReport {
        c,
        m_max,
        epsilon_threshold: Ratio::new(1, t as u64),
        exponent,
        amplification_checked,
        structural_checked,
        union_checked,
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LasVegasTrial {
    pub seed: u64,
    pub canonical: bool,
    /// Outcome of [`lemma_fixing_trial`] for this trial's fixing strings,
    /// when `n` is small enough to check.
    pub lemma_holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LasVegasOutcome {
    pub assignment: Assignment,
    pub trials: usize,
    pub history: Vec<LasVegasTrial>,
}

impl LasVegasOutcome {
    /// Structural property of the final (accepted) trial.
    pub fn final_lemma_holds(&self) -> Option<bool> {
        self.history.last().and_then(|t| t.lemma_holds)
    }
}

/// Reduce with fresh randomness, solve, and decode, until the solver returns
/// a canonical center. Trial `t` uses `derive_seed(seed, t)`.
pub fn las_vegas_loop(
    phi: &Max2SatInstance,
    c: usize,
    seed: u64,
    solver: &mut dyn FnMut(&CmsInstance) -> Result<CenterResult>,
    max_trials: usize,
) -> Result<LasVegasOutcome> {
    let (n, m) = (phi.variable_count(), phi.clause_count());
    let mut history = Vec::new();
    for t in 0..max_trials {
        let sub = rng::derive_seed(seed, t as u64);
        let (inst, _) = reduce_max2sat_to_cms(phi, c, sub)?;
        let center = solver(&inst)?.center;
        let lemma_holds = if n <= MAX_EXHAUSTIVE_N {
            Some(lemma_fixing_trial(n, m, c, sub)?.holds)
        } else {
            None
        };
        match decode_center(&center) {
            Ok(assignment) => {
                history.push(LasVegasTrial {
                    seed: sub,
                    canonical: true,
                    lemma_holds,
                });
                return Ok(LasVegasOutcome {
                    assignment,
                    trials: t + 1,
                    history,
                });
            }
            Err(Error::NonCanonicalCenter { .. }) => history.push(LasVegasTrial {
                seed: sub,
                canonical: false,
                lemma_holds,
            }),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Budget {
        what: "Las-Vegas trials",
        required: max_trials as u128 + 1,
        limit: max_trials as u128,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{solve_cms_exact, solve_max2sat_exact, Budget};
    use crate::strings::hamming;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    /// P[2·Bin(j, 1/2) >= j + 1], the far probability for a word with `j`
    /// mismatched blocks.
    fn far_probability(j: u64) -> Ratio<u64> {
        let total = 1u64 << j;
        let far: u64 = (0..=j).filter(|&b| 2 * b > j).map(|b| binom(j, b)).sum();
        Ratio::new(far, total)
    }

    #[test]
    fn fixing_patterns_are_fixing_strings() {
        for g in 0..16 {
            let w = Word::from_bits(fixing_pattern(g, 4), 8).unwrap();
            for i in 0..4 {
                assert_ne!(w.get(2 * i), w.get(2 * i + 1));
            }
        }
        assert_eq!(
            Word::from_bits(fixing_pattern(0, 2), 4)
                .unwrap()
                .to_string(),
            "0101"
        );
        assert_eq!(
            Word::from_bits(fixing_pattern(1, 2), 4)
                .unwrap()
                .to_string(),
            "1001"
        );
    }

    #[test]
    fn quarter_bound_matches_closed_form() {
        // minimum over j in 1..=n mismatched blocks of the binomial tail
        for n in 1..=8usize {
            let expect = (1..=n as u64).map(far_probability).min().unwrap();
            let got = per_pair_quarter_bound(n).unwrap();
            assert_eq!(got.minimum, expect, "n = {n}");
            assert!(got.holds);
            assert!(got.minimum <= Ratio::from_integer(1));
        }
        assert_eq!(per_pair_quarter_bound(1).unwrap().minimum, Ratio::new(1, 2));
        assert_eq!(per_pair_quarter_bound(2).unwrap().minimum, Ratio::new(1, 4));
    }

    #[test]
    fn half_bound_small_cases() {
        let one = conditional_half_bound(1).unwrap();
        assert_eq!(one.minimum, Ratio::from_integer(1));
        for n in 2..=6 {
            let r = conditional_half_bound(n).unwrap();
            assert_eq!(r.minimum, Ratio::new(1, 2), "n = {n}");
            assert!(r.symmetric && r.holds);
        }
        assert!(matches!(
            conditional_half_bound(9),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn fixing_trial_n1() {
        // s ∈ {01, 10}; each needs a fixing string equal to its complement
        for seed in 0..20 {
            let f = fixing_strings(20, 1, seed).unwrap();
            let has = |s: &str| {
                f.iter()
                    .any(|w| hamming(w, &Word::binary(s).unwrap()).unwrap() == 2)
            };
            let expect = has("01") && has("10");
            assert_eq!(lemma_fixing_trial(1, 1, 20, seed).unwrap().holds, expect);
        }
        assert_eq!(
            lemma_fixing_trial(3, 3, 20, 77).unwrap(),
            lemma_fixing_trial(3, 3, 20, 77).unwrap()
        );
    }

    #[test]
    fn fixing_trial_fails_without_fixing_strings() {
        let r = lemma_fixing_trial(2, 2, 1, 0).unwrap();
        if let Some(w) = &r.witness {
            assert!(w.far_count < 2);
            assert!(decode_center(&w.word).is_err());
        }
    }

    #[test]
    fn campaign_report_shape() {
        let empty = lemma_fixing_campaign(4, 4, 20, 0, 1).unwrap();
        assert_eq!(empty.within_bound, None);
        assert_eq!(empty.failures, 0);
        let r = lemma_fixing_campaign(3, 3, 20, 40, 1).unwrap();
        assert!(r.failures <= r.trials);
        assert_eq!(r, lemma_fixing_campaign(3, 3, 20, 40, 1).unwrap());
    }

    #[test]
    fn inequality_examples() {
        let r = inequality_checks(20, 200).unwrap();
        assert_eq!(r.epsilon_threshold, Ratio::new(1, 901));
        assert!((r.exponent + 1.6).abs() < 1e-12);
        assert!(r.pass(), "{:?}", r.failures);
        // direct evaluation at n = 10
        let lhs = (4f64.powi(10) - 2f64.powi(10)) * (-16.0f64).exp();
        assert!((lhs - 0.1179).abs() < 1e-3 && lhs <= 0.9f64.powi(10));
        // c = 5 is too small for the union bound
        let weak = inequality_checks(5, 10).unwrap();
        assert!(weak
            .failures
            .iter()
            .any(|f| matches!(f, InequalityFailure::UnionBound { .. })));
        assert!(inequality_checks(4, 10).is_err());
    }

    #[test]
    fn amplification_tight_at_threshold() {
        // ε = 1/(21+44c) turns the k = m/2 case into an equality
        let c = 20u128;
        let t = 21 + 44 * c;
        let (m, k) = (10u128, 5u128);
        assert_eq!(22 * t * (c * m + k), (t + 1) * (22 * c * m + 21 * k));
    }

    #[test]
    fn las_vegas_recovers_optimum() {
        let mut r = rng::seeded(4);
        let budget = Budget::default();
        for i in 0..5 {
            let phi = Max2SatInstance::random(3, 3, &mut r).unwrap();
            let out = las_vegas_loop(
                &phi,
                20,
                i,
                &mut |inst| solve_cms_exact(inst, &budget),
                DEFAULT_TRIAL_CAP,
            )
            .unwrap();
            assert!(out.trials >= 1);
            if out.final_lemma_holds() == Some(true) {
                let (_, opt) = solve_max2sat_exact(&phi, &budget).unwrap();
                assert_eq!(phi.satisfied_count(&out.assignment).unwrap(), opt);
            }
        }
    }

    #[test]
    fn las_vegas_cap_is_an_error() {
        let phi = Max2SatInstance::random(2, 2, &mut rng::seeded(1)).unwrap();
        let mut bad = |_: &CmsInstance| -> Result<CenterResult> {
            Ok(CenterResult {
                center: Word::binary("0110").unwrap(),
                value: 0,
                chosen_subset: None,
            })
        };
        assert!(matches!(
            las_vegas_loop(&phi, 1, 0, &mut bad, 3),
            Err(Error::Budget { .. })
        ));
    }
}
