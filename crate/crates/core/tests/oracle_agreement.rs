use magc_core::analysis::{find_nontrivial_automorphism, DEFAULT_SEARCH_LIMIT};
use magc_core::family::{self, FamilySpec};
use magc_core::ordering::{edge_index_of, edge_sequence, index_edge, EdgeIndex};
use magc_core::{num_possible_edges, CompanionTuple};
use magc_testkit::{oracle_automorphisms, oracle_edge_sequence, oracle_family_sequence, random_edges, test_rng};
use rand::Rng;

fn t(s: &[u64]) -> CompanionTuple {
    CompanionTuple::new(s.to_vec()).unwrap()
}

const TAUS: &[&[u64]] = &[
    &[1], &[2], &[3], &[7], &[50],
    &[1, 1], &[1, 5], &[5, 1], &[2, 2], &[3, 2], &[2, 3], &[4, 4], &[7, 7], &[5, 10],
    &[1, 1, 1], &[2, 2, 2], &[3, 2, 1], &[1, 2, 3], &[2, 3, 4], &[3, 3, 3],
];

#[test]
fn per_mag_ordering_matches_oracle() {
    for sizes in TAUS {
        let tau = t(sizes);
        let oracle = oracle_edge_sequence(&tau).unwrap();
        let m: u64 = num_possible_edges(&tau).unwrap();
        assert_eq!(oracle.len() as u64, m, "tau {tau}");
        assert_eq!(edge_sequence(&tau).collect::<Vec<_>>(), oracle, "tau {tau}");
        for (i, e) in oracle.iter().enumerate() {
            let j = i as u64 + 1;
            assert_eq!(edge_index_of::<u64>(e, &tau).unwrap(), EdgeIndex::Index(j), "tau {tau} edge {e}");
            assert_eq!(index_edge(&j, &tau).unwrap().as_ref(), Some(e), "tau {tau} j {j}");
        }
        assert_eq!(index_edge(&0u64, &tau).unwrap(), None);
        assert_eq!(index_edge(&(m + 1), &tau).unwrap(), None);
    }
}

#[test]
fn family_ordering_matches_oracle() {
    for p in 1..=2 {
        for n0 in 1..=2 {
            let spec = FamilySpec::new(p, n0).unwrap();
            for s_max in n0..=5 {
                let oracle = oracle_family_sequence(&spec, s_max).unwrap();
                let m: u64 = spec.cumulative(s_max).unwrap();
                assert_eq!(oracle.len() as u64, m);
                let closed: Vec<_> = family::family_edge_sequence(&spec, s_max).unwrap().collect();
                assert_eq!(closed, oracle, "p={p} n0={n0} s_max={s_max}");
                for (i, e) in oracle.iter().enumerate() {
                    let j = i as u64 + 1;
                    assert_eq!(family::family_edge_index_of::<u64>(e, &spec).unwrap(), j);
                    assert_eq!(family::family_index_edge(&j, &spec).unwrap().as_ref(), Some(e));
                }
            }
        }
    }
}

#[test]
fn automorphism_existence_matches_brute_force() {
    let mut rng = test_rng(2024);
    let mut rigid = 0;
    for trial in 0..200 {
        let tau = magc_testkit::random_tau(&mut rng, 7);
        let density = rng.gen_range(0.2..0.8);
        let g = random_edges(&mut rng, &tau, density);
        let all = oracle_automorphisms(&g).unwrap();
        let found = find_nontrivial_automorphism(&g, DEFAULT_SEARCH_LIMIT).unwrap();
        assert_eq!(found.is_some(), all.len() > 1, "trial {trial}: {g:?}");
        if let Some(images) = found {
            assert!(all.contains(&images), "trial {trial}: witness is not an automorphism");
        } else {
            rigid += 1;
        }
    }
    // the generator must exercise both outcomes
    assert!(rigid > 0);
}
