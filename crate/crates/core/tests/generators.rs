use oritree::cycles::{is_c4_free, is_c4_star_free};
use oritree::lab::generators::balanced_spider_legs;
use oritree::lab::{
    gen_blowup_cycle, gen_girth6_digon_host, gen_oriented_girth6_host, gen_random_digraph,
    gen_two_clique_host, HostConstraint, LabError,
};

#[test]
fn two_clique_hosts() {
    for k in 4..=12 {
        let d = gen_two_clique_host(k).unwrap();
        let p = d.degree_profile();
        assert!(2 * p.semidegree >= k, "k={k}");
        assert_eq!(d.n(), 2 * k.div_ceil(2) + 1);
        // removing the universal vertex 0 disconnects the rest
        assert!(d.underlying_distance(1, d.n() - 1).is_some());
        let cut = d.filter_arcs(|u, v| u != 0 && v != 0);
        assert!(cut.underlying_distance(1, d.n() - 1).is_none());
    }
    assert!(matches!(gen_two_clique_host(3), Err(LabError::KTooSmall { .. })));
}

#[test]
fn blowups_are_regular() {
    for len in 3..=6 {
        for s in 1..=3 {
            let d = gen_blowup_cycle(len, s).unwrap();
            assert_eq!(d.n(), len * s);
            let p = d.degree_profile();
            assert_eq!((p.min_out, p.max_out, p.min_in, p.max_in), (s, s, s, s));
            // two consecutive classes of size two already span an alternating 4-cycle
            assert_eq!(is_c4_star_free(&d), s == 1, "len {len} s {s}");
        }
    }
    assert!(!is_c4_free(&gen_blowup_cycle(3, 2).unwrap()));
}

#[test]
fn girth_six_hosts() {
    for q in [2, 3, 4] {
        let d = gen_girth6_digon_host(q).unwrap();
        assert_eq!(d.n(), 2 * (q * q + q + 1));
        assert_eq!(d.degree_profile().semidegree, q + 1);
        assert_eq!(d.underlying_girth(), Some(6));
        assert!(is_c4_free(&d));
        for hub in [false, true] {
            let o = gen_oriented_girth6_host(q, hub).unwrap();
            assert!(o.is_oriented());
            assert_eq!(o.underlying_girth(), Some(6));
        }
    }
}

#[test]
fn random_digraphs_meet_their_constraint() {
    for seed in 0..40 {
        for (c, check) in [
            (HostConstraint::C4Free, is_c4_free as fn(&_) -> bool),
            (HostConstraint::C4StarFree, is_c4_star_free),
        ] {
            let d = gen_random_digraph(12, 14, c, seed).unwrap();
            assert_eq!(d.arc_count(), 14);
            assert!(check(&d));
            assert_eq!(gen_random_digraph(12, 14, c, seed).unwrap(), d);
        }
    }
    assert!(gen_random_digraph(3, 7, HostConstraint::None, 0).is_err());
}

#[test]
fn spider_legs_balance() {
    for k in 1..=20 {
        let legs = balanced_spider_legs(k);
        assert_eq!(legs.iter().sum::<usize>(), k);
        assert!(legs.iter().max().unwrap() - legs.iter().min().unwrap() <= 1);
    }
}
