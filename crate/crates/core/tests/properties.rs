use std::collections::BTreeSet;

use moore_kit::chain::{chain_homs, ttf_decompose, ChainComplex, Theory};
use moore_kit::corpus::{crossed_module_corpus, random_proper_complex};
use moore_kit::crossed::mutate::{mutation_sweep, Structure};
use moore_kit::crossed::{PeifferModule, TwoCrossedModule};
use moore_kit::document::{simplicial_document, Document};
use moore_kit::group::library::symmetric;
use moore_kit::par::ExecMode;
use moore_kit::simplicial::{dold_kan_gamma, moore};
use moore_kit::torsion::{
    adjacent_pairs, classify_trivial_object, remark_factorizations, tt_axioms_check, Object, TrivialPattern,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex(seed: u64, width: usize) -> ChainComplex {
    random_proper_complex(&mut ChaCha8Rng::seed_from_u64(seed), 0, width).unwrap()
}

fn homology_order(c: &ChainComplex, n: i32) -> usize {
    let ker = c.group(n).elements().filter(|&x| c.diff(n).apply(x) == 0).count();
    let im: BTreeSet<usize> = c.group(n + 1).elements().map(|x| c.diff(n + 1).apply(x)).collect();
    ker / im.len()
}

fn theories() -> Vec<Theory> {
    (0..=3).flat_map(|n| [Theory::MuNgeq(n), Theory::MuGeq(n)]).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn decompositions_are_torsion_by_free(seed in any::<u64>(), width in 1usize..=4) {
        let c = complex(seed, width);
        for t in theories() {
            let ses = t.decompose(&c).unwrap();
            prop_assert!(t.is_torsion(&ses.sub), "{t}");
            prop_assert!(t.is_torsion_free(&ses.quotient), "{t}");
            prop_assert!(ses.iota.is_injective() && ses.pi.is_surjective());
            for n in c.lo()..=c.hi() {
                prop_assert_eq!(ses.sub.order(n) * ses.quotient.order(n), c.order(n));
            }
        }
    }

    #[test]
    fn torsion_classes_grow_along_the_lattice(seed in any::<u64>(), width in 1usize..=4) {
        let c = complex(seed, width);
        for (s, l) in adjacent_pairs(Theory::MuGeq(3), Theory::MuNgeq(0)) {
            let sub = s.decompose(&c).unwrap().sub;
            prop_assert!(l.is_torsion(&sub), "{s} torsion part not {l}-torsion");
            let quo = l.decompose(&c).unwrap().quotient;
            prop_assert!(s.is_torsion_free(&quo), "{l} free part not {s}-free");
        }
    }

    #[test]
    fn ttf_sequences_agree(seed in any::<u64>(), width in 2usize..=4, n in 1i32..=3) {
        let r = ttf_decompose(&complex(seed, width), n).unwrap();
        prop_assert!(r.middle_agrees && r.outer_agrees);
    }

    #[test]
    fn trivial_patterns_match_homology(seed in any::<u64>(), width in 1usize..=4, n in 0i32..=2) {
        let c = complex(seed, width);
        match classify_trivial_object(&c, Theory::MuNgeq(n), Theory::MuGeq(n)).unwrap() {
            TrivialPattern::EilenbergMacLane { n: k, order } => {
                for i in c.lo()..=c.hi() {
                    prop_assert_eq!(homology_order(&c, i), if i == k { order } else { 1 });
                }
            }
            TrivialPattern::NotTrivial => prop_assert!(!(Theory::MuGeq(n).is_torsion(&c) && Theory::MuNgeq(n).is_torsion_free(&c))),
            _ => {}
        }
        if let TrivialPattern::GroupLike { .. } = classify_trivial_object(&c, Theory::MuGeq(n + 1), Theory::MuNgeq(n)).unwrap() {
            for i in c.lo()..=c.hi() {
                prop_assert_eq!(homology_order(&c, i), 1);
            }
        }
    }

    #[test]
    fn remark_factorizations_hold(seed in any::<u64>(), k in 0usize..4) {
        let pairs = adjacent_pairs(Theory::MuGeq(2), Theory::MuNgeq(0));
        let (s, l) = pairs[k % pairs.len()];
        let x = l.decompose(&complex(seed, 3)).unwrap().sub.trimmed();
        let y = s.decompose(&complex(seed ^ 0x5eed, 3)).unwrap().quotient.trimmed();
        for alpha in chain_homs(&x, &y).unwrap().iter().take(64) {
            let r = remark_factorizations(alpha, s, l).unwrap();
            prop_assert!(r.passed(), "{s} <= {l}: {r:?}");
        }
    }

    #[test]
    fn gamma_then_moore_preserves_homology(seed in any::<u64>(), width in 1usize..=3) {
        let c = complex(seed, width);
        prop_assume!(c.is_abelian());
        let x = dold_kan_gamma(&c, width + 1).unwrap();
        let m = moore(&x).unwrap().chain.into_chain();
        for n in 0..width as i32 {
            prop_assert_eq!(m.order(n), c.order(n));
            prop_assert_eq!(homology_order(&m, n), homology_order(&c, n));
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>(), width in 1usize..=3) {
        let c = complex(seed, width);
        prop_assume!(c.is_abelian());
        let x = dold_kan_gamma(&c, 2).unwrap();
        let text = serde_json::to_string(&simplicial_document("x", &x)).unwrap();
        let y = Document::parse(&text).unwrap().simplicial("x").unwrap();
        prop_assert_eq!(y.orders(), x.orders());
        for n in 1..=2 {
            for (f, g) in x.faces(n).iter().zip(y.faces(n)) {
                prop_assert_eq!(f.map(), g.map());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn sequential_and_parallel_sweeps_agree(seed in any::<u64>()) {
        let corpus: Vec<Object> = (0..4).map(|i| Object::new(format!("c{i}"), complex(seed.wrapping_add(i), 3))).collect();
        for t in [Theory::MuNgeq(0), Theory::MuGeq(1), Theory::MuNgeq(1)] {
            let a = tt_axioms_check(t, &corpus, ExecMode::Sequential).unwrap();
            let b = tt_axioms_check(t, &corpus, ExecMode::Parallel).unwrap();
            prop_assert_eq!(serde_json::to_value(&a).unwrap(), serde_json::to_value(&b).unwrap());
        }
    }

    #[test]
    fn mutation_sweeps_are_deterministic(seed in any::<u64>()) {
        let xm = crossed_module_corpus().unwrap().swap_remove(0).1;
        let s3 = symmetric(3);
        let bases = [
            Structure::Crossed(xm.clone()),
            Structure::TwoCrossed(TwoCrossedModule::from_crossed_module(&xm)),
            Structure::Reduced(PeifferModule::commutator(&s3)),
            Structure::Stable(PeifferModule::commutator(&s3)),
        ];
        for base in &bases {
            let a = mutation_sweep(base, 12, seed, ExecMode::Sequential).unwrap();
            let b = mutation_sweep(base, 12, seed, ExecMode::Parallel).unwrap();
            prop_assert_eq!(a.detected, b.detected);
            prop_assert_eq!(&a.undetected, &b.undetected);
            prop_assert_eq!(a.detected, 12, "{}", a.kind);
        }
    }
}
