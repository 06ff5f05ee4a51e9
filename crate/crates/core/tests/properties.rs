use std::sync::Arc;

use proptest::prelude::*;
use sandwich::campaign::{random_elementary, run_trial, trial_rng, Target};
use sandwich::congruence::level_of;
use sandwich::hyperbolic::FormRingContext;
use sandwich::linalg::{determinant, inverse};
use sandwich::ortho_decomp::o_entry_word;
use sandwich::{ConjWord, ElemWord, FormParam, Group, Ring, RingSpec};

fn gaussian5() -> Arc<Ring> {
    Arc::new(Ring::new(RingSpec::gaussian(5, 1)).unwrap())
}

fn symplectic4() -> Arc<Group> {
    let r = Arc::new(Ring::new(RingSpec::integers_mod(4, -1)).unwrap());
    let form = FormParam::max(&r).unwrap();
    Arc::new(Group::unitary(r, 3, form).unwrap())
}

fn z6_gl() -> Arc<Group> {
    Arc::new(Group::linear(Arc::new(Ring::new(RingSpec::integers_mod(6, 1)).unwrap()), 3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn involution_is_an_involutive_ring_map(a in 0usize..25, b in 0usize..25) {
        let r = gaussian5();
        let (x, y) = (r.element(a), r.element(b));
        prop_assert_eq!(r.involute(r.involute(x)), x);
        prop_assert_eq!(r.involute(r.mul(x, y)), r.mul(r.involute(x), r.involute(y)));
        prop_assert_eq!(r.involute(r.add(x, y)), r.add(r.involute(x), r.involute(y)));
    }

    #[test]
    fn elementary_words_have_unit_determinant(seed in any::<u64>(), len in 0usize..30) {
        let g = z6_gl();
        let m = random_elementary(&g, &mut trial_rng(seed, 0), len);
        prop_assert_eq!(determinant(g.ring(), &m), g.ring().one());
        let inv = inverse(g.ring(), &m).unwrap();
        prop_assert!(g.mul(&m, &inv).is_identity(g.ring()));
    }

    #[test]
    fn random_unitary_words_are_members(seed in any::<u64>()) {
        let g = symplectic4();
        let ctx = FormRingContext::from_group(g.clone()).unwrap();
        let m = random_elementary(&g, &mut trial_rng(seed, 0), 20);
        prop_assert!(ctx.is_unitary_member(&m).unwrap());
    }

    #[test]
    fn level_is_invariant_under_elementary_conjugation(seed in any::<u64>()) {
        let g = z6_gl();
        let mut rng = trial_rng(seed, 0);
        let x = g.ring().random(&mut rng);
        let sigma = g.matrix(&g.t(1, 2, x));
        let conj = g.random_word(&mut rng, 10);
        let a = level_of(&g, &sigma).unwrap().members(g.ring());
        let b = level_of(&g, &g.conj_mat(&conj, &sigma)).unwrap().members(g.ring());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn word_calculus_tracks_targets(seed in any::<u64>()) {
        let g = symplectic4();
        let ctx = FormRingContext::from_group(g.clone()).unwrap();
        let mut rng = trial_rng(seed, 0);
        let base = ctx.base(random_elementary(&g, &mut rng, 16)).unwrap();
        let e: ElemWord = g.random_word(&mut rng, 4);
        let w = ConjWord::sigma(&base, 1).conj_by(&e).concat(ConjWord::sigma(&base, -1)).unwrap();
        prop_assert!(w.verify());
        let inv = w.invert();
        prop_assert!(inv.verify());
        prop_assert!(g.mul(inv.target(), w.target()).is_identity(g.ring()));
        let c = w.commutator_with(&g.random_word(&mut rng, 3));
        prop_assert_eq!(c.count(), 2 * w.count());
        prop_assert!(c.verify());
        prop_assert!(c.prune().verify());
    }

    #[test]
    fn orthogonal_entry_words_verify(seed in any::<u64>()) {
        let r = Arc::new(Ring::new(RingSpec::integers_mod(4, 1)).unwrap());
        let ctx = FormRingContext::orthogonal(r, 3).unwrap();
        let g = ctx.group();
        let mut rng = trial_rng(seed, 0);
        let base = ctx.base(random_elementary(g, &mut rng, 20)).unwrap();
        let ix = Target::OEntry.random_indices(g, &mut rng);
        let w = o_entry_word(&base, ix[0], ix[1], ix[2], ix[3]).unwrap();
        prop_assert_eq!(w.count(), 8);
        prop_assert_eq!(w.evaluate(), ctx.T(ix[2], ix[3], base.at(ix[0], ix[1])).unwrap());
    }

    #[test]
    fn trials_are_reproducible(seed in any::<u64>(), trial in 0u64..1000) {
        let g = z6_gl();
        prop_assert_eq!(run_trial(&g, Target::GlDiagdiff, seed, trial, 12), run_trial(&g, Target::GlDiagdiff, seed, trial, 12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn unitary_entry_words_verify(seed in any::<u64>()) {
        let g = symplectic4();
        let rec = run_trial(&g, Target::UEntry, seed, 0, 16);
        prop_assert!(rec.passed(), "{:?}", rec.error);
    }
}
