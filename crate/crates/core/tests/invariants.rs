use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use tamejumps_core::catalog::lookup_str;
use tamejumps_core::exactalg::GroupRingElement;
use tamejumps_core::fiber::{
    genus, h1_character, total_trace, total_trace_with, FiberGraph, Vertex,
};
use tamejumps_core::jumps::{compute_jumps, JumpOptions};
use tamejumps_core::resolution::{
    collapsed_chain, is_stable, resolve, universal_polys, ResolutionData, Singularity,
};
use tamejumps_core::singtrace::{trace_closed_form, trace_polynomial, ClosedForm};

fn res(m1: u64, m2: u64, n: u64) -> ResolutionData {
    resolve(Singularity::new(m1, m2, n).unwrap()).unwrap()
}

fn sweep() -> impl Iterator<Item = (u64, u64, u64)> {
    (1..=8u64).flat_map(|m1| {
        (1..=8u64).flat_map(move |m2| {
            (2..=200u64)
                .filter(move |n| n.gcd(&m1) == 1 && n.gcd(&m2) == 1)
                .map(move |n| (m1, m2, n))
        })
    })
}

#[test]
fn resolution_data_invariants_on_sweep() {
    for (m1, m2, n) in sweep() {
        let d = res(m1, m2, n);
        let len = d.len();
        assert_eq!(m1 + d.r * m2, n * d.mu_first(), "({m1},{m2},{n})");
        assert_eq!(d.mu[0], m2);
        assert_eq!(d.mu[len + 1], m1);
        for l in 1..=len {
            assert_eq!(d.mu[l + 1] + d.mu[l - 1], d.b_at(l) * d.mu[l]);
        }
        assert!(d.mu.iter().all(|x| x % d.m == 0));
        for l in 1..=len {
            let (a, b, c) = (d.mu[l - 1], d.mu[l], d.mu[l + 1]);
            assert!(
                !(a < b && c <= b) && !(a <= b && c < b),
                "({m1},{m2},{n}) {:?}",
                d.mu
            );
        }
        if m1 == m2 {
            assert!(d.mu.iter().all(|&x| x == m1));
        }
        if m2 > m1 {
            assert!(d.mu_first() < m2, "({m1},{m2},{n})");
        }
        let p = universal_polys(&d);
        assert_eq!(p[0], 0);
        assert_eq!(p[1], 1);
        for l in 0..=len {
            let lhs = (p[l + 1] as i128 * d.r as i128).rem_euclid(n as i128);
            assert_eq!(lhs as u64, d.r_at(l as isize));
        }
    }
}

#[test]
fn collapsed_chains_agree_within_a_class() {
    for m1 in 1..=6u64 {
        for m2 in 1..=6u64 {
            let big_m = m1.lcm(&m2);
            for c in (1..=big_m).filter(|c| c.gcd(&big_m) == 1) {
                let chains: Vec<Vec<u64>> = (1..40u64)
                    .map(|i| c + big_m * i)
                    .map(|n| res(m1, m2, n))
                    .filter(is_stable)
                    .map(|d| collapsed_chain(&d))
                    .collect();
                assert!(chains.len() > 2);
                assert!(
                    chains.windows(2).all(|w| w[0] == w[1]),
                    "({m1},{m2}) class {c}"
                );
            }
        }
    }
}

#[test]
fn trace_at_one_matches_closed_form() {
    for (m1, m2, n) in sweep().filter(|&(_, _, n)| n > 64) {
        let d = res(m1, m2, n);
        if let Ok(cf) = trace_closed_form(&d) {
            assert_eq!(trace_polynomial(&d).eval_at_one(), cf.eval_at_one());
        }
    }
}

fn relabel(g: &FiberGraph, prefix: &str, reverse_edges: bool) -> FiberGraph {
    let vertices = g
        .vertices()
        .iter()
        .rev()
        .map(|v| Vertex {
            id: format!("{prefix}{}", v.id),
            ..v.clone()
        })
        .collect();
    let mut edges: Vec<(String, String)> = g
        .edges()
        .map(|(a, b)| (format!("{prefix}{b}"), format!("{prefix}{a}")))
        .collect();
    if reverse_edges {
        edges.reverse();
    }
    FiberGraph::new(vertices, &edges).unwrap()
}

const CATALOG: &[&str] = &[
    "kodaira:I",
    "kodaira:I*",
    "kodaira:In:1",
    "kodaira:In:2",
    "kodaira:In:5",
    "kodaira:In*:1",
    "kodaira:In*:3",
    "kodaira:II",
    "kodaira:II*",
    "kodaira:III",
    "kodaira:III*",
    "kodaira:IV",
    "kodaira:IV*",
    "ogg:4",
];

#[test]
fn catalog_graphs_are_admissible_for_every_n() {
    for id in CATALOG {
        let g = lookup_str(id).unwrap();
        let l = g.mult_lcm();
        let expected_genus = if *id == "ogg:4" { 2 } else { 1 };
        for n in (2..300u64).filter(|n| n.gcd(&l) == 1) {
            let ch = h1_character(&g, n).unwrap_or_else(|e| panic!("{id} at {n}: {e}"));
            assert_eq!(ch.total(), expected_genus, "{id} at {n}");
            assert_eq!(genus(&g, n).unwrap(), BigInt::from(expected_genus));
        }
    }
}

#[test]
fn total_trace_ignores_labels_and_edge_order() {
    for id in CATALOG {
        let g = lookup_str(id).unwrap();
        let h = relabel(&g, "q", true);
        let l = g.mult_lcm();
        for n in (50..120u64).filter(|n| n.gcd(&l) == 1) {
            assert_eq!(
                total_trace(&g, n).unwrap(),
                total_trace(&h, n).unwrap(),
                "{id} at {n}"
            );
        }
    }
}

#[test]
fn closed_form_total_trace_matches_for_large_n() {
    for id in CATALOG {
        let g = lookup_str(id).unwrap();
        let n = 1 + 1000 * g.mult_lcm();
        assert_eq!(
            total_trace(&g, n).unwrap(),
            total_trace_with(&g, n, &ClosedForm).unwrap(),
            "{id}"
        );
    }
}

#[test]
fn jumps_count_equals_genus_and_are_sample_independent() {
    for id in CATALOG {
        let g = lookup_str(id).unwrap();
        let a = compute_jumps(&g, &JumpOptions::default()).unwrap();
        let b = compute_jumps(
            &g,
            &JumpOptions {
                n_min: 5000,
                cross_check_residue: true,
                ..JumpOptions::default()
            },
        )
        .unwrap();
        assert_eq!(a.jumps, b.jumps, "{id}");
        let n = a.witnesses[0];
        let g_count = (BigInt::from(1) - total_trace(&g, n).unwrap().eval_at_one())
            .try_into()
            .unwrap_or(usize::MAX);
        assert_eq!(a.jumps.len(), g_count, "{id}");
        assert!(a.jumps.iter().all(|j| a.n_tilde.is_multiple_of(*j.denom())));
    }
}

#[test]
fn cycles_of_reduced_curves_have_zero_jumps() {
    for k in 1..=8 {
        let g = lookup_str(&format!("kodaira:In:{k}")).unwrap();
        let js = compute_jumps(&g, &JumpOptions::default()).unwrap();
        assert_eq!(js.formatted(), vec!["0/1"]);
        assert_eq!(js.n_tilde, 1);
    }
}

fn group_element(n: u64) -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec((0i128..n as i128, -9i64..9), 0..12)
        .prop_map(move |terms| GroupRingElement::from_terms(n, terms))
}

proptest! {
    #[test]
    fn ring_axioms(
        (a, b, c) in (1u64..60).prop_flat_map(|n| (group_element(n), group_element(n), group_element(n)))
    ) {
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(
            a.try_mul(&b).unwrap().eval_at_one(),
            a.eval_at_one() * b.eval_at_one()
        );
    }

    #[test]
    fn branch_symmetry(m1 in 1u64..10, m2 in 1u64..10, n in 2u64..500) {
        prop_assume!(n.gcd(&m1) == 1 && n.gcd(&m2) == 1);
        prop_assert_eq!(trace_polynomial(&res(m1, m2, n)), trace_polynomial(&res(m2, m1, n)));
    }

    #[test]
    fn closed_form_matches_chain_when_stable(m1 in 1u64..10, m2 in 1u64..10, n in 2u64..800) {
        prop_assume!(n.gcd(&m1) == 1 && n.gcd(&m2) == 1);
        let d = res(m1, m2, n);
        prop_assume!(is_stable(&d));
        prop_assert_eq!(trace_closed_form(&d).unwrap(), trace_polynomial(&d));
    }

    #[test]
    fn subdividing_equal_multiplicity_edges_keeps_jumps(
        id in prop::sample::select(CATALOG.to_vec()),
        pick in any::<prop::sample::Index>(),
    ) {
        let g = lookup_str(id).unwrap();
        let equal: Vec<usize> = g
            .edges()
            .enumerate()
            .filter(|(_, (a, b))| g.vertex(a).unwrap().mult == g.vertex(b).unwrap().mult)
            .map(|(k, _)| k)
            .collect();
        prop_assume!(!equal.is_empty());
        let k = equal[pick.index(equal.len())];
        let (a, _) = g.edges().nth(k).unwrap();
        let m = g.vertex(a).unwrap().mult;
        let h = g.subdivide_edge(k, "new", m).unwrap();
        let opts = JumpOptions::default();
        prop_assert_eq!(compute_jumps(&g, &opts).unwrap().jumps, compute_jumps(&h, &opts).unwrap().jumps);
    }
}
