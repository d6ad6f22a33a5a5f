use proptest::prelude::*;

use oritree::embed::{
    check_hypotheses, embed_tree, validate_embedding, EmbedMode, EmbedOptions, EmbedState, EmbedStatus, Move,
};
use oritree::lab::{
    gen_girth6_digon_host, gen_random_digraph, gen_random_tree, oracle_embed, Decision, HostConstraint, TreeKind,
};
use oritree::{Digraph, OrientedTree, Side};

const NONE: usize = usize::MAX;

fn random_pair(seed: u64) -> Option<(OrientedTree, Digraph)> {
    let k = 4 + (seed % 6) as usize;
    let t = gen_random_tree(k, TreeKind::Any, seed).ok()?;
    let n = k + 1 + (seed % 5) as usize;
    let m = 2 * n + (seed % 7) as usize * n / 2;
    let constraint = [HostConstraint::None, HostConstraint::C4Free, HostConstraint::C4StarFree][(seed % 3) as usize];
    let d = gen_random_digraph(n, m, constraint, seed).ok()?;
    Some((t, d))
}

/// Injective and arc-preserving on the placed part; returns the placed set.
fn check_partial(t: &OrientedTree, d: &Digraph, place: &[usize]) -> Vec<usize> {
    let placed: Vec<usize> = (0..t.n()).filter(|&x| place[x] != NONE).collect();
    let mut images: Vec<usize> = placed.iter().map(|&x| place[x]).collect();
    images.sort_unstable();
    images.dedup();
    assert_eq!(images.len(), placed.len(), "not injective");
    for &(x, y) in t.arcs() {
        if place[x] != NONE && place[y] != NONE {
            assert!(d.has_arc(place[x], place[y]), "arc ({x},{y}) not preserved");
        }
    }
    placed
}

fn members(mask: &[bool]) -> Vec<usize> {
    (0..mask.len()).filter(|&x| mask[x]).collect()
}

#[test]
fn complete_digraph_takes_every_tree() {
    for k in 1..=7 {
        for seed in 0..10 {
            let t = gen_random_tree(k, TreeKind::Any, seed).unwrap();
            let d = Digraph::complete(k + 1);
            let r = embed_tree(&t, &d, EmbedMode::General, &EmbedOptions::default()).unwrap();
            assert_eq!(r.status, EmbedStatus::Embedded);
            assert!(!r.backtracked());
        }
    }
}

#[test]
fn repair_moves_fire_and_keep_partial_embeddings_valid() {
    let (mut case_a, mut case_b, mut b_refused) = (0, 0, 0);
    for seed in 0..2500 {
        let Some((t, d)) = random_pair(seed) else { continue };
        let t = if t.out_degree(t.anchor_vertex()) < t.in_degree(t.anchor_vertex()) { t.reverse() } else { t };
        let d = if seed % 2 == 0 { d } else { d.reverse() };
        let mut s = EmbedState::new(&t, &d, EmbedMode::General, t.stripping_sequence());
        if s.embed_core().is_err() {
            continue;
        }
        let core: Vec<usize> = s.sequence().core.clone();
        assert_eq!(check_partial(&t, &d, s.placement()), core);
        for i in 0..s.step_count() {
            let ctx = s.context(i);
            let before = s.image_size();
            let target = members(&s.sequence().subtree_mask(t.n(), i + 2));
            if s.extend_direct(&ctx).is_some() {
                assert_eq!(check_partial(&t, &d, s.placement()), target);
                continue;
            }
            // a failed direct move leaves the state untouched
            assert_eq!(s.image_size(), before);
            let q = s.candidates(&ctx).len();
            assert!(q >= 1);
            let m = match q {
                2 => s.repair_case_a(i, &ctx),
                1 => s.repair_case_b(i, &ctx),
                _ => None,
            };
            match m {
                Some(Move::CaseA { .. }) => case_a += 1,
                Some(Move::CaseB { .. }) => case_b += 1,
                Some(other) => panic!("{other:?}"),
                None => {
                    b_refused += (q == 1) as usize;
                    assert_eq!(s.image_size(), before);
                    check_partial(&t, &d, s.placement());
                    break;
                }
            }
            assert_eq!(check_partial(&t, &d, s.placement()), target);
        }
    }
    assert!(case_a > 0 && case_b > 0 && b_refused > 0, "A {case_a}, B {case_b}, refused {b_refused}");
}

#[test]
fn case_b_needs_a_sibling_of_u() {
    // T: 0 -> 1 -> 2 -> 3 -> 4 -> 5 -> 6, anchor 1, core {0..4}; step 1 hangs
    // 5 on 4, step 2 hangs 6 on 5. Host: embed 0..5 along a path whose last
    // vertex has no spare out-neighbour, and v = 4 has no other out-neighbour.
    let t = OrientedTree::directed_path(6).unwrap();
    let seq = t.stripping_sequence();
    assert_eq!(seq.steps.len(), 2);
    let d = Digraph::new(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (1, 6)]).unwrap();
    let mut s = EmbedState::with_placement(&t, &d, EmbedMode::General, seq, &(0..6).map(|x| (x, x)).collect::<Vec<_>>());
    let ctx = s.context(1);
    assert_eq!((ctx.u, ctx.v, ctx.diamond), (5, 4, Side::Out));
    assert!(s.extend_direct(&ctx).is_none());
    assert_eq!(s.candidates(&ctx), vec![5]);
    assert!(s.repair_case_b(1, &ctx).is_none());
    assert_eq!(s.image_size(), 6);
}

#[test]
fn move_log_grows_the_image() {
    for seed in 0..600 {
        let Some((t, d)) = random_pair(seed) else { continue };
        let r = embed_tree(&t, &d, EmbedMode::General, &EmbedOptions::default()).unwrap();
        let Some(first) = r.moves.first() else { continue };
        match &first.action {
            Move::Core { vertices, .. } => {
                assert_eq!(*vertices, t.stripping_sequence().core.len());
                let mut last = first.image_size;
                for m in &r.moves[1..] {
                    match m.action {
                        Move::Direct { .. } | Move::CaseA { .. } | Move::CaseB { .. } => assert!(m.image_size > last),
                        Move::Backtrack { .. } => assert_eq!(m.image_size, t.n()),
                        Move::Core { .. } => panic!("core twice"),
                    }
                    last = m.image_size;
                }
            }
            Move::Backtrack { .. } => assert_eq!(r.moves.len(), 1),
            other => panic!("log starts with {other:?}"),
        }
    }
}

#[test]
fn antidirected_mode_reads_one_side_only() {
    let (mut runs, mut reads) = (0, 0);
    for seed in 0..800 {
        let Some((_, d)) = random_pair(seed) else { continue };
        let t = gen_random_tree(4 + (seed % 5) as usize, TreeKind::Antidirected, seed).unwrap();
        let r = embed_tree(&t, &d, EmbedMode::Antidirected, &EmbedOptions::default()).unwrap();
        reads += r.access.reads;
        assert_eq!(r.access.off_side_reads, 0, "seed {seed}");
        runs += 1;
    }
    assert!(runs > 100 && reads > 0);
}

#[test]
fn oracle_agreement_on_small_instances() {
    for seed in 0..400 {
        let Some((t, d)) = random_pair(seed) else { continue };
        if t.k() > 6 || d.n() > 14 {
            continue;
        }
        let opts = EmbedOptions { oracle: Some(2_000_000), ..Default::default() };
        let r = embed_tree(&t, &d, EmbedMode::General, &opts).unwrap();
        match oracle_embed(&t, &d, 2_000_000).decision {
            Decision::Yes(f) => {
                assert!(validate_embedding(&t, &d, &f).is_ok());
                assert_eq!(r.status, EmbedStatus::Embedded, "seed {seed}");
            }
            Decision::No => assert_eq!(r.status, EmbedStatus::NotEmbeddable, "seed {seed}"),
            Decision::Unknown => {}
        }
    }
}

#[test]
fn theorem_families_never_violate() {
    for (q, k) in [(2, 6), (3, 8), (4, 10)] {
        let d = gen_girth6_digon_host(q).unwrap();
        for seed in 0..60 {
            let t = gen_random_tree(k, TreeKind::Any, seed).unwrap();
            let h = check_hypotheses(&t, &d, EmbedMode::General).unwrap();
            let opts = EmbedOptions { assert_constructive: true, ..Default::default() };
            let r = embed_tree(&t, &d, EmbedMode::General, &opts).unwrap();
            if h.all_hold {
                assert_eq!(r.status, EmbedStatus::Embedded, "q={q} seed={seed} {:?}", r.anomalies);
                assert!(r.anomalies.is_empty());
            }
        }
    }
}

#[test]
fn assert_constructive_flags_backtracking_only_under_hypotheses() {
    // violated hypotheses: backtracking is fine
    let t = OrientedTree::spider(&[1, 1, 2]).unwrap();
    let d = Digraph::complete(5);
    let opts = EmbedOptions { assert_constructive: true, ..Default::default() };
    let r = embed_tree(&t, &d, EmbedMode::General, &opts).unwrap();
    assert!(!r.hypotheses.all_hold);
    assert_eq!(r.status, EmbedStatus::Embedded);
}

fn arb_pair() -> impl Strategy<Value = (OrientedTree, Digraph)> {
    (1usize..=7, 0u64..1_000_000, 0usize..3).prop_flat_map(|(k, seed, c)| {
        let t = gen_random_tree(k, TreeKind::Any, seed).unwrap();
        let lo = t.n().max(4);
        (Just(t), lo..=12usize, Just(seed), Just(c))
            .prop_map(|(t, n, seed, c)| {
                let constraint = [HostConstraint::None, HostConstraint::C4Free, HostConstraint::C4StarFree][c];
                let m = if c == 0 { n * (n - 1) / 3 } else { 3 * n / 2 };
                let d = gen_random_digraph(n, m, constraint, seed).unwrap();
                (t, d)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn embedded_reports_carry_valid_certificates((t, d) in arb_pair()) {
        let r = embed_tree(&t, &d, EmbedMode::General, &EmbedOptions::default()).unwrap();
        if r.status == EmbedStatus::Embedded {
            prop_assert!(validate_embedding(&t, &d, &r.map().unwrap()).is_ok());
        } else {
            prop_assert!(r.embedding.is_none());
        }
    }

    #[test]
    fn mirror_invariance((t, d) in arb_pair()) {
        let opts = EmbedOptions { oracle: Some(1_000_000), ..Default::default() };
        let a = embed_tree(&t, &d, EmbedMode::General, &opts).unwrap();
        let b = embed_tree(&t.reverse(), &d.reverse(), EmbedMode::General, &opts).unwrap();
        prop_assert_eq!(a.status, b.status);
    }

    #[test]
    fn deterministic((t, d) in arb_pair()) {
        let a = embed_tree(&t, &d, EmbedMode::General, &EmbedOptions::default()).unwrap();
        let b = embed_tree(&t, &d, EmbedMode::General, &EmbedOptions::default()).unwrap();
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
