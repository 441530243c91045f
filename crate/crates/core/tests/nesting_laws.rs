use magc_core::codec::{mag_to_char_string_family, EdgeSetString, Indexer, Layout};
use magc_core::family::FamilySpec;
use magc_core::nesting::{
    build_bitdriven_tau, grow_family, is_submag, is_vertex_induced_submag, recover_bits,
    recover_bits_from_mag, recover_bits_from_stream, witnessing_mag, BitSource,
};
use magc_core::{BitString, MagError};
use magc_testkit::test_rng;
use rand::Rng;

#[test]
fn grown_families_form_induced_chains() {
    let spec = FamilySpec::new(2, 2).unwrap();
    for seed in 0..20 {
        let fam = grow_family(&mut BitSource::seeded(seed), &spec, 5).unwrap();
        let members = fam.members();
        assert_eq!(members.len(), 4);
        for w in members.windows(2) {
            assert!(is_vertex_induced_submag(&w[0], &w[1]).unwrap());
        }
        for a in members {
            for b in members {
                let ab = is_submag(a, b).unwrap();
                let ba = is_submag(b, a).unwrap();
                assert!(ab || ba, "chain is total");
                assert_eq!(ab && ba, a == b, "antisymmetry");
                for c in members {
                    if ab && is_submag(b, c).unwrap() {
                        assert!(is_submag(a, c).unwrap(), "transitivity");
                    }
                }
            }
        }
    }
}

#[test]
fn members_spell_prefixes_of_the_source() {
    let spec = FamilySpec::new(1, 2).unwrap();
    let mut src = BitSource::seeded(99);
    let fam = grow_family(&mut src, &spec, 12).unwrap();
    src.reset();
    let stream = src.take(spec.cumulative(12).unwrap()).unwrap();
    for s in 2..=12 {
        let m: u64 = spec.cumulative(s).unwrap();
        let x = mag_to_char_string_family(fam.member(s).unwrap(), &spec).unwrap();
        assert_eq!(x, stream.prefix(m as usize), "size {s}");
    }
    assert_eq!(fam.source_id(), "seeded:chacha20:99");
}

#[test]
fn growth_is_deterministic_per_source() {
    let spec = FamilySpec::new(2, 1).unwrap();
    let a = grow_family(&mut BitSource::seeded(7), &spec, 4).unwrap();
    let b = grow_family(&mut BitSource::seeded(7), &spec, 4).unwrap();
    let c = grow_family(&mut BitSource::seeded(8), &spec, 4).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.members(), c.members());
}

#[test]
fn file_and_constant_sources() {
    let spec = FamilySpec::new(1, 2).unwrap();
    let bits: BitString = "101101".parse().unwrap();
    let fam = grow_family(&mut BitSource::file("six", bits.clone()), &spec, 4).unwrap();
    assert_eq!(fam.member(4).unwrap().edge_count(), 4);
    assert!(matches!(
        grow_family(&mut BitSource::file("six", bits), &spec, 5),
        Err(MagError::SourceExhausted { needed: 10, available: 6 })
    ));
    let ones = grow_family(&mut BitSource::constant("1".parse().unwrap()).unwrap(), &spec, 5).unwrap();
    assert_eq!(ones.member(5).unwrap().edge_count(), 10);
}

#[test]
fn bit_recovery_from_witnessing_mags() {
    let mut rng = test_rng(35);
    for trial in 0..200 {
        let len = rng.gen_range(1..=16);
        let bits: BitString = (0..len).map(|_| rng.gen_bool(0.5)).collect();
        let tau = build_bitdriven_tau(&bits).unwrap();
        let g = witnessing_mag(&tau, trial, 64);
        let r = recover_bits_from_mag(&g);
        assert!(r.is_witnessed(), "trial {trial}");
        assert_eq!(r.bits, bits, "trial {trial}");
        if bits.count_ones() <= 8 {
            let s = EdgeSetString::from_mag(&g, &Indexer::PerMag).unwrap();
            assert_eq!(recover_bits(&s), r);
            let stream = s.encode(Layout::Full).unwrap();
            assert_eq!(recover_bits_from_stream(&stream, &Indexer::PerMag).unwrap(), r);
        }
    }
}
