use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::Index;

use stringalg::oracle::naive_violations;
use stringalg::*;

struct Fixture {
    alg: StringAlgebra,
    strings: Vec<Word>,
}

fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        fixtures::ALL
            .iter()
            .map(|(name, _)| {
                let alg = fixtures::by_name(name).unwrap();
                let strings = alg.enumerate_strings(8, false);
                Fixture { alg, strings }
            })
            .collect()
    })
}

fn pick(f: Index, w: Index) -> (&'static StringAlgebra, &'static Word) {
    let fx = &fixtures()[f.index(fixtures().len())];
    (&fx.alg, &fx.strings[w.index(fx.strings.len())])
}

/// Random quivers with at most six arrows and composable relations of length two or three.
fn presentation() -> impl Strategy<Value = QuiverPresentation> {
    (1..=4usize)
        .prop_flat_map(|k| {
            (
                Just(k),
                prop::collection::vec((0..k, 0..k), 1..=6),
                any::<u64>(),
            )
        })
        .prop_map(|(k, ends, mask)| {
            let arrows: Vec<Arrow> = ends
                .iter()
                .enumerate()
                .map(|(i, &(source, target))| Arrow {
                    id: format!("x{i}"),
                    source,
                    target,
                })
                .collect();
            let n = arrows.len();
            let mut candidates = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    if arrows[a].target == arrows[b].source {
                        candidates.push(vec![b, a]);
                        for c in 0..n {
                            if arrows[b].target == arrows[c].source {
                                candidates.push(vec![c, b, a]);
                            }
                        }
                    }
                }
            }
            let relations = candidates
                .into_iter()
                .enumerate()
                .filter(|(i, r)| mask >> (i % 64) & 1 == 1 && (r.len() == 2 || i % 5 == 0))
                .map(|(_, r)| r)
                .collect();
            QuiverPresentation {
                name: "Random".into(),
                vertices: (0..k).map(|v| format!("v{v}")).collect(),
                arrows,
                relations,
                signs: None,
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn validation_matches_path_walk(p in presentation()) {
        let kinds = [Axiom::Finiteness, Axiom::OutDegree, Axiom::InDegree, Axiom::UniqueSuccessor, Axiom::UniquePredecessor];
        let fast: BTreeSet<Axiom> = validate_string_algebra(&p)
            .violations
            .iter()
            .map(|v| v.axiom)
            .filter(|a| kinds.contains(a))
            .collect();
        prop_assert_eq!(fast, naive_violations(&p));
    }

    #[test]
    fn validity_iff_no_violations(p in presentation()) {
        let r = validate_string_algebra(&p);
        prop_assert_eq!(r.is_string_algebra, r.violations.is_empty());
    }

    #[test]
    fn derived_signs_satisfy_conditions(p in presentation()) {
        prop_assume!(validate_string_algebra(&p).is_string_algebra);
        let Ok(s) = derive_signs(&p) else { return Ok(()) };
        let rels: BTreeSet<Vec<usize>> = p.relations.iter().cloned().collect();
        for (x, a) in p.arrows.iter().enumerate() {
            for (y, b) in p.arrows.iter().enumerate() {
                if x != y && a.source == b.source {
                    prop_assert_ne!(s.sigma[x], s.sigma[y]);
                }
                if x != y && a.target == b.target {
                    prop_assert_ne!(s.epsilon[x], s.epsilon[y]);
                }
                if a.target == b.source && !rels.contains(&vec![y, x]) {
                    prop_assert_eq!(s.sigma[y], -s.epsilon[x]);
                }
            }
        }
    }

    #[test]
    fn serialization_round_trips(p in presentation()) {
        prop_assert_eq!(parse_presentation(&p.to_sqa()).unwrap(), p);
    }

    #[test]
    fn inversion_dualizes_signs(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        let inv = a.invert(u);
        prop_assert!(a.is_string(&inv));
        prop_assert_eq!(a.sigma(&inv), a.epsilon(u));
        prop_assert_eq!(a.epsilon(&inv), a.sigma(u));
        prop_assert_eq!(&a.invert(&inv), u);
    }

    #[test]
    fn literals_round_trip(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        prop_assert_eq!(&a.parse_word(&a.render(u)).unwrap(), u);
    }

    #[test]
    fn concatenation_lengths(f: Index, w1: Index, w2: Index) {
        let (a, u) = pick(f, w1);
        let (_, v) = pick(f, w2);
        if let Ok(vu) = a.concat(v, u) {
            prop_assert!(a.is_string(&vu));
            prop_assert_eq!(vu.len(), v.len() + u.len());
            prop_assert_eq!(a.source(&vu), a.source(u));
            prop_assert_eq!(a.target(&vu), a.target(v));
        }
    }

    #[test]
    fn image_substrings_survive_inversion(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        let n = u.len();
        let inv = a.invert(u);
        let dual: BTreeSet<(usize, usize)> = a
            .image_substrings(&inv, false)
            .iter()
            .map(|s| (s.start, s.end))
            .collect();
        for s in a.image_substrings(u, false) {
            prop_assert!(dual.contains(&(n - s.end, n - s.start)), "{} at {}..{}", a.render(u), s.start, s.end);
            let piece = a.substring(u, s.start, s.end);
            let mirrored = a.substring(&inv, n - s.end, n - s.start);
            prop_assert_eq!(a.invert(&piece), mirrored);
        }
    }

    #[test]
    fn band_rotations_are_bands(f: Index, b: Index, k: Index) {
        let a = &fixtures()[f.index(fixtures().len())].alg;
        let bands = a.prime_bands();
        let band = &bands[b.index(bands.len())];
        let s = band.syllables();
        let r = stringalg::bands::rotation(s, k.index(s.len()));
        prop_assert!(a.is_band_syllables(&r));
        prop_assert!(a.is_prime_syllables(&r));
        prop_assert_eq!(a.canonical_band(&Word::Path(r)).unwrap(), band.clone());
    }

    #[test]
    fn hammock_neighbours_alternate_length(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        let h = a.left_hammock_of(u);
        for n in [a.successor(u, h).unwrap(), a.predecessor(u, h).unwrap()].into_iter().flatten() {
            prop_assert_ne!(n.len(), u.len());
            prop_assert!(a.in_hammock(&n, h));
        }
        if let Some(s) = a.successor(u, h).unwrap() {
            prop_assert_eq!(a.predecessor(&s, h).unwrap(), Some(u.clone()));
        }
    }

    #[test]
    fn right_hammock_mirrors_left(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        let h = a.right_hammock_of(u);
        let inv = a.invert(u);
        let hl = a.left_hammock_of(&inv);
        let mirrored = a.successor(&inv, hl).unwrap().map(|x| a.invert(&x));
        prop_assert_eq!(a.successor(u, h).unwrap(), mirrored);
    }

    #[test]
    fn expansions_are_strings(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        for op in [Op::L, Op::LBar] {
            let e = a.one_sided_expansion(u, op);
            if !e.is_defined() {
                continue;
            }
            let mut s = u.syllables().to_vec();
            s.extend_from_slice(&e.preperiod);
            prop_assert!(s.is_empty() || a.is_string_syllables(&s));
            s.extend_from_slice(&e.period);
            s.extend_from_slice(&e.period);
            prop_assert!(a.is_string_syllables(&s));
            prop_assert!(a.is_prime_syllables(&e.period));
        }
    }

    #[test]
    fn generation_round_trips(f: Index, w: Index) {
        let (a, u) = pick(f, w);
        let p = a.find_generating_path(u).unwrap();
        prop_assert!(p.exponents.iter().all(|&e| e >= -1));
        prop_assert_eq!(&a.generate_string(&p).unwrap(), u);
    }
}

#[test]
fn bridges_are_weak_bridges() {
    for fx in fixtures() {
        let a = &fx.alg;
        let n = a.prime_bands().len();
        for x in 0..n {
            for y in 0..n {
                let weak = a.weak_bridges(x, y);
                for b in a.bridges_between(x, y) {
                    assert!(weak.iter().any(|w| w.label == b.label), "{}", a.name());
                }
            }
        }
    }
}

#[test]
fn meta_union_cyclic_is_not_domestic() {
    for fx in fixtures() {
        let c = fx.alg.classify_algebra();
        assert!(!c.meta_union_cyclic || !c.domestic, "{}", fx.alg.name());
    }
}

#[test]
fn quiver_is_stable_under_larger_band_free_bound() {
    for fx in fixtures() {
        let a = &fx.alg;
        let bound = a.band_free_bound();
        let now = a.enumerate_band_free_upto(bound);
        let more = a.enumerate_band_free_upto(bound + 1);
        assert_eq!(now.strings.len(), more.strings.len(), "{}", a.name());
    }
}

#[test]
fn stable_rank_within_bounds() {
    for fx in fixtures() {
        let a = &fx.alg;
        if a.classify_algebra().meta_torsion_free {
            let est = a.stable_rank_estimate().unwrap();
            assert!(matches!(
                est.value,
                StableRank::Omega | StableRank::OmegaPlusOne | StableRank::OmegaPlusTwo
            ));
        }
    }
}

#[test]
fn reports_serialize() {
    let g = fixtures::gp23();
    let json = serde_json::to_value(g.classify_algebra()).unwrap();
    assert_eq!(json["domestic"], false);
    let q = serde_json::to_value(g.build_extended_bridge_quiver(true)).unwrap();
    assert!(q["arrows"].as_array().is_some_and(|a| !a.is_empty()));
}
