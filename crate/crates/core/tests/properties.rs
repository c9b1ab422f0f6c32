use cobweb_core::chains::Enumerator;
use cobweb_core::fibcalc::{falling_f_factorial, fib, fib_factorial, fibonomial};
use cobweb_core::{build_cobweb, zeta_matrix, LayerSpec, Vertex};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

#[test]
fn poset_axioms_exhaustive_up_to_6() {
    for n in 1..=6 {
        let p = build_cobweb(n).unwrap();
        let vs: Vec<Vertex> = p.vertices().collect();
        for &x in &vs {
            assert!(p.leq(x, x).unwrap());
            for &y in &vs {
                let xy = p.leq(x, y).unwrap();
                if xy && x != y {
                    assert!(x.level < y.level, "graded: {x} < {y}");
                    assert!(!p.leq(y, x).unwrap());
                }
                for &z in &vs {
                    if xy && p.leq(y, z).unwrap() {
                        assert!(p.leq(x, z).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn zeta_reconstructs_the_relation() {
    for n in 1..=6 {
        let p = build_cobweb(n).unwrap();
        let m = zeta_matrix(&p).unwrap();
        let vs: Vec<Vertex> = p.vertices().collect();
        for (i, &x) in vs.iter().enumerate() {
            for (j, &y) in vs.iter().enumerate() {
                assert_eq!(m.get(i, j) == 1, p.leq(x, y).unwrap());
            }
        }
        assert_eq!(m.to_poset().unwrap(), p);
    }
}

#[test]
fn every_root_chain_has_one_vertex_per_level() {
    let p = build_cobweb(6).unwrap();
    let e = Enumerator::new(&p);
    let visited = e
        .for_each_chain_from_root(6, |c| {
            let levels: Vec<usize> = c.vertices.iter().map(|v| v.level).collect();
            assert_eq!(levels, (1..=6).collect::<Vec<_>>());
        })
        .unwrap();
    assert_eq!(BigUint::from(visited), fib_factorial(6));
}

#[test]
fn enumeration_is_thread_count_independent() {
    let p = build_cobweb(9).unwrap();
    let baseline = Enumerator::new(&p).count_from_root(9).unwrap();
    for threads in [2, 4, 7] {
        let e = Enumerator::new(&p).with_threads(threads);
        assert_eq!(e.count_from_root(9).unwrap(), baseline);
        for k in 1..9 {
            let spec = LayerSpec::new(Vertex::new(k, 0), 9).unwrap();
            assert_eq!(
                e.count_layer(spec).unwrap(),
                Enumerator::new(&p).count_layer(spec).unwrap()
            );
        }
    }
}

proptest! {
    #[test]
    fn layer_count_independent_of_start(n in 2usize..=9, k_seed in 0usize..100, idx_seed in 0usize..1000) {
        let k = 1 + k_seed % (n - 1);
        let p = build_cobweb(n).unwrap();
        let width = fib(k).to_usize().unwrap();
        let spec = LayerSpec::new(Vertex::new(k, idx_seed % width), n).unwrap();
        prop_assert_eq!(
            Enumerator::new(&p).count_layer(spec).unwrap(),
            falling_f_factorial(n, n - k)
        );
    }

    #[test]
    fn guard_admits_only_terminating_exact_runs(n in 1usize..=9, guard in 0u64..3_000_000) {
        let p = build_cobweb(n).unwrap();
        match Enumerator::new(&p).with_guard(guard).count_from_root(n) {
            Ok(count) => {
                prop_assert!(count <= BigUint::from(guard));
                prop_assert_eq!(count, fib_factorial(n));
            }
            Err(_) => prop_assert!(fib_factorial(n) > BigUint::from(guard)),
        }
    }

    #[test]
    fn quotient_divisibility(n in 2usize..=60, k_seed in 0usize..1000) {
        let k = 1 + k_seed % (n - 1);
        let (q, r) = falling_f_factorial(n, n - k).div_rem(&fib_factorial(n - k));
        prop_assert!(r.is_zero());
        prop_assert_eq!(q, fibonomial(n, k));
    }
}
