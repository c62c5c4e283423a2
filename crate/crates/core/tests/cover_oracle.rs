use std::collections::{BTreeSet, HashSet};

use hyperrecon::cover_oracle::{
    clique_g_closed_form, enumerate_covers, g_restricted, g_value, is_valid_cover,
    star_g_closed_form, within_relaxation_bound, Cover, CoverTable, DeltaProfile, EdgeSet,
};
use hyperrecon::scalar::ratio;
use hyperrecon::{Ext, ExactProfile, Rational};
use proptest::prelude::*;

fn subsets_of_size_at_least_two(vs: &[usize]) -> Vec<Vec<usize>> {
    let k = vs.len();
    (0u32..1 << k)
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..k).filter(|i| m & (1 << i) != 0).map(|i| vs[i]).collect())
        .collect()
}

fn pairs_of(u: &[usize]) -> HashSet<(usize, usize)> {
    let mut out = HashSet::new();
    for (i, &a) in u.iter().enumerate() {
        for &b in &u[i + 1..] {
            out.insert((a, b));
        }
    }
    out
}

/// Validity straight from the definition, on hash sets of pairs.
fn naive_valid(e: &EdgeSet, family: &[Vec<usize>]) -> bool {
    let covered = |skip: Option<usize>| -> bool {
        let mut all = HashSet::new();
        for (i, u) in family.iter().enumerate() {
            if Some(i) != skip {
                all.extend(pairs_of(u));
            }
        }
        e.edges().iter().all(|p| all.contains(p))
    };
    covered(None) && (0..family.len()).all(|i| !covered(Some(i)))
}

/// Every family of subsets of V, filtered by the definition.
fn reference_covers(e: &EdgeSet, cap: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let candidates: Vec<Vec<usize>> = subsets_of_size_at_least_two(e.vertices())
        .into_iter()
        .filter(|u| u.len() <= cap)
        .collect();
    assert!(candidates.len() <= 16);
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << candidates.len() {
        let mut family: Vec<Vec<usize>> = (0..candidates.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| candidates[i].clone())
            .collect();
        if naive_valid(e, &family) {
            family.sort();
            out.insert(family);
        }
    }
    out
}

fn all_pairs(k: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            v.push((a, b));
        }
    }
    v
}

#[test]
fn enumeration_matches_doubly_exhaustive_reference() {
    let pairs = all_pairs(4);
    for mask in 1u32..1 << pairs.len() {
        let e = EdgeSet::new(
            (0..pairs.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| pairs[i]),
        )
        .unwrap();
        for cap in 2..=e.vertices().len() {
            let got: BTreeSet<Vec<Vec<usize>>> = enumerate_covers(&e, cap)
                .unwrap()
                .into_iter()
                .map(|c| c.members().to_vec())
                .collect();
            assert_eq!(got, reference_covers(&e, cap), "edges {:?} cap {cap}", e.edges());
        }
    }
}

#[test]
fn enumeration_yields_each_cover_once_in_canonical_order() {
    for e in [EdgeSet::complete(5), EdgeSet::star(6), EdgeSet::new([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()] {
        let covers = enumerate_covers(&e, 5).unwrap();
        let distinct: HashSet<&Cover> = covers.iter().collect();
        assert_eq!(distinct.len(), covers.len());
        assert!(covers.iter().all(|c| is_valid_cover(&e, c)));
        assert!(covers.windows(2).all(|w| {
            (w[0].len(), w[0].members()) < (w[1].len(), w[1].members())
        }));
    }
}

#[test]
fn triangle_has_exactly_two_covers() {
    let covers = enumerate_covers(&EdgeSet::complete(3), 3).unwrap();
    assert_eq!(covers.len(), 2);
    assert_eq!(reference_covers(&EdgeSet::complete(3), 3).len(), 2);
}

fn tenth(k: i64) -> Rational {
    ratio(k, 10)
}

#[test]
fn clique_exponent_matches_closed_form() {
    for d in 3..=5usize {
        let table = CoverTable::new(&EdgeSet::complete(d), d - 1).unwrap();
        for k in 1..=9 {
            let p = DeltaProfile::without_full_clique(tenth(k), d).unwrap();
            assert_eq!(table.g(&p), Ext::Finite(clique_g_closed_form(d, tenth(k))), "d={d} k={k}");
            // the direct entry point agrees with the cached table
            assert_eq!(g_value(&EdgeSet::complete(d), &p).unwrap(), table.g(&p));
        }
    }
}

#[test]
fn star_exponent_matches_closed_form_for_dominant_pair_density() {
    for d in 2..=6usize {
        let e = EdgeSet::star(d);
        for k in 1..=9 {
            let top = tenth(k);
            // Δ_2 is the largest entry; larger sizes get smaller values
            let values: Vec<Ext<Rational>> = (2..=d)
                .map(|s| Ext::Finite(top / Rational::from_integer(s as i64 - 1)))
                .collect();
            let p = DeltaProfile::new(values).unwrap();
            assert_eq!(g_value(&e, &p).unwrap(), Ext::Finite(star_g_closed_form(d, top)));
        }
    }
}

#[test]
fn induction_quantity_over_small_cover_sizes() {
    for d in 3..=5usize {
        let e = EdgeSet::complete(d);
        for k in 1..=9 {
            let delta = tenth(k);
            let p = DeltaProfile::without_full_clique(delta, d).unwrap();
            let h = (2..=d)
                .map(|m| g_restricted(&e, &p, m).unwrap())
                .fold(Ext::NegInf, Ext::max);
            let dd = Rational::from_integer(d as i64);
            assert_eq!(h, Ext::Finite(dd * delta - Rational::from_integer(2) * dd + Rational::from_integer(3)));
        }
    }
}

#[test]
fn relaxation_dominates_every_cover_without_the_full_clique() {
    for d in 3..=5usize {
        let table = CoverTable::new(&EdgeSet::complete(d), d - 1).unwrap();
        for k in 1..=9 {
            let p = DeltaProfile::without_full_clique(tenth(k), d).unwrap();
            for c in table.covers().iter().filter(|c| c.len() >= 2) {
                let Ext::Finite(v) = c.value(&p) else { panic!("finite cover expected") };
                assert!(within_relaxation_bound(d, tenth(k), c.len(), v), "d={d} cover {c}");
            }
        }
    }
}

fn arb_edge_set(max_vertices: usize) -> impl Strategy<Value = EdgeSet> {
    let pairs = all_pairs(max_vertices);
    let m = pairs.len();
    (1u32..(1u32 << m)).prop_map(move |mask| {
        EdgeSet::new((0..m).filter(|i| mask & (1 << i) != 0).map(|i| pairs[i])).unwrap()
    })
}

fn arb_entry() -> impl Strategy<Value = Ext<Rational>> {
    prop_oneof![
        1 => Just(Ext::NegInf),
        4 => (1i64..=9).prop_map(|k| Ext::Finite(tenth(k))),
    ]
}

fn arb_profile(max_size: usize) -> impl Strategy<Value = ExactProfile> {
    proptest::collection::vec(arb_entry(), max_size - 1)
        .prop_map(|v| DeltaProfile::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn raising_an_entry_never_lowers_g(
        e in arb_edge_set(5),
        p in arb_profile(5),
        size in 2usize..=5,
        bump in 1i64..=9,
    ) {
        let raised = match p.get(size) {
            Ext::NegInf => Ext::Finite(tenth(bump)),
            Ext::Finite(v) => Ext::Finite(v.max(tenth(bump))),
        };
        let q = p.with(size, raised).unwrap();
        prop_assert!(g_value(&e, &q).unwrap() >= g_value(&e, &p).unwrap());
    }

    #[test]
    fn flattening_to_star_delta_is_an_upper_bound(e in arb_edge_set(5), p in arb_profile(5)) {
        prop_assert!(g_value(&e, &p).unwrap() <= g_value(&e, &p.flattened()).unwrap());
    }

    #[test]
    fn g_is_the_max_of_restricted_g(e in arb_edge_set(4), p in arb_profile(4)) {
        let k = e.vertices().len();
        let best = (1..=k * (k - 1) / 2)
            .map(|m| g_restricted(&e, &p, m).unwrap())
            .fold(Ext::NegInf, Ext::max);
        prop_assert_eq!(best, g_value(&e, &p).unwrap());
    }
}
