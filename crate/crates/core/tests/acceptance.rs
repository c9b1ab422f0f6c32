//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Run with `cargo test -p cobweb-core --test acceptance`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cobweb_core::chains::{Enumerator, DEFAULT_GUARD};
use cobweb_core::cli::bench;
use cobweb_core::fibcalc::{
    falling_f_factorial, fib, fib_factorial, fibonomial, fibonomial_factorial_ratio,
};
use cobweb_core::{
    build_cobweb, induced_copy_count, obs3_quotient, staircase_check, zeta_matrix, CountMode,
    LayerSpec, Vertex,
};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

const ZETA_P3: &str = include_str!("golden/zeta_p3.csv");
const ZETA_P5: &str = include_str!("golden/zeta_p5.csv");

fn within(start: Instant, limit: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(elapsed < limit, "{what} took {elapsed:?}, limit {limit:?}");
}

/// Chains from the root of P_9 to each level n equal n_F!.
fn ac1_root_chains() -> String {
    let start = Instant::now();
    let poset = build_cobweb(9).unwrap();
    let e = Enumerator::new(&poset);
    for n in 1..=9 {
        assert_eq!(e.count_from_root(n).unwrap(), fib_factorial(n), "n = {n}");
    }
    assert_eq!(e.count_from_root(9).unwrap(), BigUint::from(2_227_680u32));
    within(start, Duration::from_secs(30), "root sweep");
    format!("n = 1..9, 9 -> 2227680 chains, {:?}", start.elapsed())
}

/// Layer chains from every start vertex equal n_F^(n-k), independent of the start.
fn ac2_layer_chains() -> String {
    let start = Instant::now();
    let poset = build_cobweb(9).unwrap();
    let e = Enumerator::new(&poset);
    let mut triples = 0;
    for n in 2..=9 {
        for k in 1..n {
            let expected = falling_f_factorial(n, n - k);
            for index in poset.level_indices(k).unwrap() {
                let spec = LayerSpec::new(Vertex::new(k, index), n).unwrap();
                assert_eq!(
                    e.count_layer(spec).unwrap(),
                    expected,
                    "k={k} n={n} start={index}"
                );
                triples += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), "layer sweep");
    format!("{triples} (k, n, start) triples, {:?}", start.elapsed())
}

/// (n-k)_F! divides n_F^(n-k) and the quotient is the factorial-ratio Fibonomial.
fn ac3_quotient() -> String {
    let start = Instant::now();
    let mut pairs = 0;
    for n in 2..=60 {
        for k in 1..n {
            let layer = falling_f_factorial(n, n - k);
            let per_copy = fib_factorial(n - k);
            let (q, r) = layer.div_rem(&per_copy);
            assert!(r.is_zero(), "k={k} n={n}");
            assert_eq!(q, fibonomial_factorial_ratio(n, k), "k={k} n={n}");
            assert_eq!(obs3_quotient(k, n, CountMode::Formula).unwrap(), q);
            pairs += 1;
        }
    }
    within(start, Duration::from_secs(5), "quotient sweep");
    format!("{pairs} (k, n) pairs, {:?}", start.elapsed())
}

/// Fibonomials are integers, symmetric, and both defining forms agree.
fn ac4_integrality_symmetry() -> String {
    let start = Instant::now();
    for n in 0..=60 {
        for k in 0..=n {
            let ratio_form = fibonomial_factorial_ratio(n, k);
            let (q, r) = falling_f_factorial(n, k).div_rem(&fib_factorial(k));
            assert!(r.is_zero(), "falling form not integral at ({n} {k})");
            assert_eq!(q, ratio_form, "({n} {k})");
            let (q2, r2) = fib_factorial(n).div_rem(&(fib_factorial(k) * fib_factorial(n - k)));
            assert!(r2.is_zero());
            assert_eq!(q2, ratio_form);
            assert_eq!(fibonomial(n, k), ratio_form);
            assert_eq!(fibonomial(n, k), fibonomial(n, n - k));
        }
    }
    within(start, Duration::from_secs(5), "fibonomial sweep");
    format!("0 <= k <= n <= 60, {:?}", start.elapsed())
}

/// Staircase, triangularity, exact level blocks, and golden CSVs.
fn ac5_zeta_structure() -> String {
    let start = Instant::now();
    for n in 1..=8 {
        let poset = build_cobweb(n).unwrap();
        let m = zeta_matrix(&poset).unwrap();
        assert!(staircase_check(&m, &poset).unwrap(), "n = {n}");
        assert!(m.is_upper_triangular() && m.has_unit_diagonal(), "n = {n}");
        // Level boundaries from Fibonacci numbers, not from the poset.
        let mut bounds = Vec::new();
        let mut offset = 0;
        for s in 1..=n {
            let size = fib(s).to_usize().unwrap();
            bounds.push(offset..offset + size);
            offset += size;
        }
        assert_eq!(offset, m.dim());
        for (s, rows) in bounds.iter().enumerate() {
            for (t, cols) in bounds.iter().enumerate() {
                for i in rows.clone() {
                    for j in cols.clone() {
                        let want = match s.cmp(&t) {
                            std::cmp::Ordering::Equal => (i == j) as u8,
                            std::cmp::Ordering::Less => 1,
                            std::cmp::Ordering::Greater => 0,
                        };
                        assert_eq!(m.get(i, j), want, "n={n} block ({s},{t}) entry ({i},{j})");
                    }
                }
            }
        }
    }
    assert_eq!(
        zeta_matrix(&build_cobweb(3).unwrap())
            .unwrap()
            .to_csv()
            .as_bytes(),
        ZETA_P3.as_bytes()
    );
    assert_eq!(
        zeta_matrix(&build_cobweb(5).unwrap())
            .unwrap()
            .to_csv()
            .as_bytes(),
        ZETA_P5.as_bytes()
    );
    within(start, Duration::from_secs(5), "zeta checks");
    format!(
        "n <= 8, P_3/P_5 golden CSV identical, {:?}",
        start.elapsed()
    )
}

/// Poset axioms and leq = reflexive-transitive closure of covers, over P_6.
fn ac6_poset_axioms() -> String {
    let start = Instant::now();
    let poset = build_cobweb(6).unwrap();
    let vs: Vec<Vertex> = poset.vertices().collect();
    assert_eq!(vs.len(), 20);
    let leq = |x, y| poset.leq(x, y).unwrap();
    for &x in &vs {
        assert!(leq(x, x));
        for &y in &vs {
            if leq(x, y) && leq(y, x) {
                assert_eq!(x, y);
            }
            for &z in &vs {
                if leq(x, y) && leq(y, z) {
                    assert!(leq(x, z));
                }
            }
        }
    }
    // Closure of the cover relation by repeated relaxation.
    let idx = |v: Vertex| vs.iter().position(|&w| w == v).unwrap();
    let count = vs.len();
    let mut reach = vec![vec![false; count]; count];
    for i in 0..count {
        reach[i][i] = true;
        for j in 0..count {
            if poset.is_cover(vs[i], vs[j]).unwrap() {
                reach[i][j] = true;
            }
        }
    }
    for mid in 0..count {
        for i in 0..count {
            for j in 0..count {
                if reach[i][mid] && reach[mid][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    for &x in &vs {
        for &y in &vs {
            assert_eq!(reach[idx(x)][idx(y)], leq(x, y), "{x} vs {y}");
        }
    }
    within(start, Duration::from_secs(5), "poset axioms");
    format!("20 vertices, 8000 triples, {:?}", start.elapsed())
}

/// The induced-copy reading overcounts: 6 against a Fibonomial of 3.
fn ac7_diagnostic() -> String {
    let induced = induced_copy_count(1, 4, &[1, 1, 2]).unwrap();
    let fibo = fibonomial(4, 1);
    assert_eq!(induced, BigUint::from(6u32));
    assert_eq!(fibo, BigUint::from(3u32));
    assert_ne!(induced, fibo);
    format!("induced_copy_count(1,4,[1,1,2]) = {induced}, fibonomial(4,1) = {fibo}")
}

/// fibonomial(1000, 500) is fast and exact; formula beats enumeration 100x at n = 9.
fn ac8_performance() -> String {
    let start = Instant::now();
    let big = fibonomial(1000, 500);
    let took = start.elapsed();
    assert!(
        took < Duration::from_secs(5),
        "fibonomial(1000, 500) took {took:?}"
    );
    assert_eq!(big, fibonomial_factorial_ratio(1000, 500));

    let rows = bench(9, DEFAULT_GUARD).unwrap();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r.agrees()));
    let row9 = &rows[8];
    assert_eq!(
        row9.enumeration.as_ref().unwrap().0,
        BigUint::from(2_227_680u32)
    );
    let speedup = row9.speedup().unwrap();
    assert!(speedup >= 100.0, "speedup at n = 9 only {speedup:.1}x");
    format!(
        "fibonomial(1000,500) has {} digits in {took:?}; n = 9 speedup {speedup:.0}x",
        big.to_string().len()
    )
}

type Criterion = (&'static str, fn() -> String);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("AC1 root chains = n_F!", ac1_root_chains),
        ("AC2 layer chains = falling F-factorial", ac2_layer_chains),
        ("AC3 chain quotient = Fibonomial", ac3_quotient),
        (
            "AC4 Fibonomial integrality and symmetry",
            ac4_integrality_symmetry,
        ),
        ("AC5 zeta structure and golden CSVs", ac5_zeta_structure),
        ("AC6 poset axioms on P_6", ac6_poset_axioms),
        ("AC7 induced-copy discrepancy", ac7_diagnostic),
        ("AC8 performance", ac8_performance),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (name, check) in criteria {
        match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(payload) => {
                failures += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("FAIL  {name}: {msg}");
            }
        }
    }
    let _ = panic::take_hook();
    println!("{} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
