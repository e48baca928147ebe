use proptest::collection::vec;
use proptest::prelude::*;
use proptest::sample::subsequence;

use strsel::exact::{solve_dks_exact, solve_max2sat_exact, solve_msfbc_subsets, Budget};
use strsel::reductions::{
    clause_distance_identity, decode_center, decode_msfbc_solution, encode_assignment,
    normalize_contains_zero, reduce_dks_to_msfbc, reduce_max2sat_to_cms, verify_claim_optval,
    SourceRef,
};
use strsel::rng::seeded;
use strsel::{coverage, hamming, Assignment, Graph, Max2SatInstance};

fn formula(max_n: usize) -> impl Strategy<Value = Max2SatInstance> {
    (2..=max_n, any::<u64>()).prop_flat_map(|(n, seed)| {
        (n..=2 * n).prop_map(move |m| Max2SatInstance::random(n, m, &mut seeded(seed)).unwrap())
    })
}

fn graph(max_v: usize) -> impl Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(|v| {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .collect();
        let len = pairs.len();
        subsequence(pairs, 0..=len).prop_map(move |edges| Graph::new(v, edges).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coverage_identity_and_fixing_law(phi in formula(8), c in 1usize..=20, seed in any::<u64>()) {
        let (n, m) = (phi.variable_count(), phi.clause_count());
        let (inst, cert) = reduce_max2sat_to_cms(&phi, c, seed).unwrap();
        prop_assert_eq!(inst.set().len(), (c + 1) * m);
        prop_assert_eq!(inst.d(), n);
        for x in Assignment::all(n) {
            let xh = encode_assignment(&x).unwrap();
            prop_assert_eq!(
                coverage(&xh, &inst).unwrap(),
                c * m + phi.satisfied_count(&x).unwrap()
            );
            for (w, src) in inst.set().words().iter().zip(&cert.map) {
                if let SourceRef::Fixing(_) = src {
                    prop_assert_eq!(hamming(&xh, w).unwrap(), n);
                }
            }
        }
    }

    #[test]
    fn clause_distance_law(phi in formula(10), index in any::<u64>()) {
        let n = phi.variable_count();
        let x = Assignment::from_index(n, index % (1 << n));
        for clause in phi.clauses() {
            let d = clause_distance_identity(&x, clause, n).unwrap();
            prop_assert_eq!(d, n - 2 + 2 * clause.falsified_count(&x));
            prop_assert!(d == n - 2 || d == n || d == n + 2);
        }
    }

    #[test]
    fn reduction_is_deterministic(phi in formula(6), seed in any::<u64>()) {
        let a = reduce_max2sat_to_cms(&phi, 20, seed).unwrap();
        let b = reduce_max2sat_to_cms(&phi, 20, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn assignment_round_trip(bits in vec(any::<bool>(), 1..40)) {
        let x = Assignment::new(bits);
        prop_assert_eq!(decode_center(&encode_assignment(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn normalization_and_decode(g in graph(7), k_frac in 0.0f64..=1.0, pick in vec(any::<bool>(), 22)) {
        let v = g.vertex_count();
        let k = 1 + ((v - 1) as f64 * k_frac).round() as usize;
        let (inst, _) = reduce_dks_to_msfbc(&g, k).unwrap();
        let zero = inst.set().len() - 1;
        // greedy feasible subset driven by the pick mask
        let mut t: Vec<usize> = Vec::new();
        for i in (0..inst.set().len()).filter(|&i| pick[i % pick.len()]) {
            t.push(i);
            if inst.bad_column_count(&t).unwrap() > k {
                t.pop();
            }
        }
        if !t.is_empty() {
            let t2 = normalize_contains_zero(&inst, &t).unwrap();
            prop_assert!(t2.contains(&zero));
            prop_assert!(t2.len() >= t.len());
            let bad2 = inst.bad_column_count(&t2).unwrap();
            prop_assert!(bad2 <= k);
            if t.contains(&zero) {
                prop_assert_eq!(&t2, &t);
            } else if t2.len() == t.len() {
                // swap case keeps the bad-column count
                prop_assert_eq!(bad2, inst.bad_column_count(&t).unwrap());
            }
            let u = decode_msfbc_solution(&inst, &t, &g).unwrap();
            prop_assert_eq!(u.len(), k);
            prop_assert!(g.induced_edge_count(&u) + 1 >= t.len());
        }

        let best = solve_msfbc_subsets(&inst, &Budget { subset_strings: 32, ..Budget::default() }).unwrap();
        let u = decode_msfbc_solution(&inst, &best.indices, &g).unwrap();
        let (_, alpha) = solve_dks_exact(&g, k, &Budget::default()).unwrap();
        prop_assert_eq!(g.induced_edge_count(&u), alpha);
        prop_assert_eq!(best.size(), alpha + 1);
    }

    #[test]
    fn claim_on_random_graphs(g in graph(6)) {
        let budget = Budget { subset_strings: 32, ..Budget::default() };
        for k in 1..=g.vertex_count() {
            let r = verify_claim_optval(&g, k, &budget).unwrap();
            prop_assert!(r.pass, "k = {}: α = {}, β = {}", k, r.alpha, r.beta);
        }
    }
}

#[test]
fn cms_optimum_tracks_max2sat_on_small_formulas() {
    let budget = Budget::default();
    for seed in 0..20u64 {
        let mut r = seeded(seed);
        let phi = Max2SatInstance::random(3, 3 + (seed % 3) as usize, &mut r).unwrap();
        let (inst, _) = reduce_max2sat_to_cms(&phi, 20, seed).unwrap();
        let lemma =
            strsel::experiments::lemma_fixing_trial(3, phi.clause_count(), 20, seed).unwrap();
        if !lemma.holds {
            continue;
        }
        let cms = strsel::exact::solve_cms_exact(&inst, &budget).unwrap();
        let (_, opt) = solve_max2sat_exact(&phi, &budget).unwrap();
        assert_eq!(cms.value, 20 * phi.clause_count() + opt);
        let x = decode_center(&cms.center).unwrap();
        assert_eq!(phi.satisfied_count(&x).unwrap(), opt);
    }
}

#[test]
fn triangle_and_edgeless_claims() {
    let budget = Budget::default();
    let k3 = Graph::complete(3);
    assert_eq!(verify_claim_optval(&k3, 3, &budget).unwrap().beta, 4);
    assert_eq!(verify_claim_optval(&k3, 2, &budget).unwrap().alpha, 1);
    let r = verify_claim_optval(&Graph::edgeless(4), 1, &budget).unwrap();
    assert_eq!((r.alpha, r.beta, r.pass), (0, 1, true));
}
