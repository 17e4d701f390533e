//! Cross-checks between independent routes to the same answer.

mod common;

use std::collections::BTreeSet;

use loopforge::corpus::corpus;
use loopforge::finder::{solve, Mode, SearchProblem, Status};
use loopforge::perm::{mlt, mlt1, schreier_stabilizer};
use loopforge::steiner::{affine_plane_9, fano, loop_to_system, steiner_loop, z13_system};
use loopforge::varieties::{is_ip, is_rif_by_generators, is_rif_by_identities, is_steiner};
use loopforge::{classify, CayleyLoop, Property};

fn small_loops() -> Vec<(String, CayleyLoop)> {
    let mut out: Vec<(String, CayleyLoop)> = corpus()
        .into_iter()
        .filter(|e| e.cayley.order() <= 14)
        .map(|e| (e.name.to_string(), e.cayley))
        .collect();
    let isotopes: Vec<(String, CayleyLoop)> = out
        .iter()
        .filter(|(_, l)| l.order() >= 5)
        .flat_map(|(name, l)| {
            [(1, 2), (2, 3)].map(|(a, b)| {
                (
                    format!("{name}@{a},{b}"),
                    common::principal_isotope(l, a, b),
                )
            })
        })
        .collect();
    out.extend(isotopes);
    out
}

#[test]
fn finder_class_counts_match_naive_generator() {
    for n in 1..=5 {
        let out = solve(&SearchProblem::new(n).with_mode(Mode::EnumerateUpToIso)).unwrap();
        assert_eq!(out.models.len(), common::naive_class_count(n), "order {n}");
        assert_eq!(
            out.count as usize,
            common::naive_loops(n).len(),
            "order {n}"
        );
    }
}

#[test]
fn finder_count_matches_naive_at_order_six() {
    let out = solve(&SearchProblem::new(6).with_mode(Mode::Count)).unwrap();
    assert_eq!(out.status, Status::Sat);
    assert_eq!(out.count as usize, common::naive_loops(6).len());
}

#[test]
fn inner_mapping_group_equals_stabilizer_of_identity() {
    for (name, l) in small_loops() {
        let by_generators = mlt1(&l);
        let by_schreier = schreier_stabilizer(&l);
        assert!(by_generators.same_group(&by_schreier), "{name}");
        if l.order() <= 8 {
            let mut full = mlt(&l);
            let stab: BTreeSet<_> = full
                .close()
                .unwrap()
                .iter()
                .filter(|p| p.fixes(0))
                .cloned()
                .collect();
            let mut inner = mlt1(&l);
            let inner: BTreeSet<_> = inner.close().unwrap().iter().cloned().collect();
            assert_eq!(inner, stab, "{name}");
        }
    }
}

#[test]
fn rif_routes_agree() {
    let mut ip_seen = 0;
    for (name, l) in small_loops() {
        if is_ip(&l) {
            ip_seen += 1;
            assert_eq!(
                is_rif_by_generators(&l).unwrap(),
                is_rif_by_identities(&l).unwrap(),
                "{name}"
            );
        }
    }
    assert!(ip_seen >= 10);
}

#[test]
fn steiner_loops_have_the_listed_properties() {
    use Property::*;
    for ts in [fano(), affine_plane_9(), z13_system()] {
        let l = steiner_loop(&ts).unwrap();
        let r = classify(&l).unwrap();
        for p in [Commutative, Ip, CLoop, Rif, Arif, Diassociative, Steiner] {
            assert!(r.holds(p), "v = {}: {p}", ts.v);
        }
        assert_eq!(r.holds(Moufang), r.holds(BooleanGroup), "v = {}", ts.v);
        for x in l.elements() {
            assert_eq!(l.mul(x, x), 0);
            for y in l.elements() {
                let size = l.subloop_closure([x, y]).len();
                assert!(
                    [1, 2, 4].contains(&size),
                    "v = {}: <{x}, {y}> has {size}",
                    ts.v
                );
            }
        }
        let back = loop_to_system(&l).unwrap();
        assert_eq!(back, ts);
        assert!(steiner_loop(&back).unwrap().isomorphic(&l));
        assert!(is_steiner(&l));
    }
}
