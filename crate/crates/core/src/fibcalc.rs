//! Exact Fibonacci numbers and the Fibonomial calculus.
//!
//! Conventions: `F_0 = 0`, `F_1 = F_2 = 1`, `n_F! = F_1 F_2 ... F_n` with
//! `0_F! = 1`, and the falling F-factorial `n_F^(k) = F_n F_{n-1} ... F_{n-k+1}`.
//! Everything is computed over [`BigUint`]; there is no floating point here.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Index into the Fibonacci sequence.
pub type FIndex = usize;

/// Arbitrary-precision count.
pub type BigCount = BigUint;

/// Returns `F_n`.
pub fn fib(n: FIndex) -> BigCount {
    // Fast doubling on the binary expansion of n:
    //   F(2k)   = F(k) * (2F(k+1) - F(k))
    //   F(2k+1) = F(k)^2 + F(k+1)^2
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    if n == 0 {
        return a;
    }
    let bits = usize::BITS - n.leading_zeros();
    for i in (0..bits).rev() {
        let two_b = &b << 1usize;
        let c = &a * (&two_b - &a);
        let d = &a * &a + &b * &b;
        if (n >> i) & 1 == 0 {
            a = c;
            b = d;
        } else {
            b = &c + &d;
            a = d;
        }
    }
    a
}

/// Returns `F_1, ..., F_n` as a vector indexed from zero (so `out[s - 1] = F_s`).
pub fn fib_prefix(n: FIndex) -> Vec<BigCount> {
    let mut out = Vec::with_capacity(n);
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        out.push(cur.clone());
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// `n_F!`, with `0_F! = 1`.
pub fn fib_factorial(n: FIndex) -> BigCount {
    fib_prefix(n).into_iter().product()
}

/// `n_F^(k) = F_n F_{n-1} ... F_{n-k+1}`.
///
/// The empty product (`k = 0`) is 1. For `k > n` the product runs through
/// `F_0 = 0`, so the result is 0.
pub fn falling_f_factorial(n: FIndex, k: FIndex) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    // F_{n-k+1} .. F_n, walked upward.
    let low = n - k + 1;
    let mut prev = fib(low - 1);
    let mut cur = fib(low);
    let mut acc = BigUint::one();
    for _ in 0..k {
        acc *= &cur;
        let next = &prev + &cur;
        prev = std::mem::replace(&mut cur, next);
    }
    acc
}

/// The Fibonomial coefficient `(n k)_F = n_F^(k) / k_F!`, or 0 when `k > n`.
///
/// # Panics
///
/// Panics if the quotient is not exact. That would be a bug in this module,
/// not a caller error.
pub fn fibonomial(n: FIndex, k: FIndex) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    // Symmetry keeps the products short.
    let k = k.min(n - k);
    let num = falling_f_factorial(n, k);
    let den = fib_factorial(k);
    let (q, r) = num.div_rem(&den);
    assert!(
        r.is_zero(),
        "fibonomial({n}, {k}): {num} is not divisible by {den}"
    );
    q
}

/// The Fibonomial coefficient from the factorial-ratio form
/// `n_F! / (k_F! (n-k)_F!)`, evaluated with three full F-factorials.
///
/// Slower than [`fibonomial`]; kept as an independent route for cross-checks.
pub fn fibonomial_factorial_ratio(n: FIndex, k: FIndex) -> BigCount {
    if k > n {
        return BigUint::zero();
    }
    let num = fib_factorial(n);
    let den = fib_factorial(k) * fib_factorial(n - k);
    let (q, r) = num.div_rem(&den);
    assert!(
        r.is_zero(),
        "{n}_F! is not divisible by {k}_F! ({})_F!",
        n - k
    );
    q
}

/// `[(n 0)_F, (n 1)_F, ..., (n n)_F]`.
pub fn fibonomial_row(n: FIndex) -> Vec<BigCount> {
    let mut row = Vec::with_capacity(n + 1);
    for k in 0..=n / 2 {
        row.push(fibonomial(n, k));
    }
    for k in n / 2 + 1..=n {
        let mirrored = row[n - k].clone();
        row.push(mirrored);
    }
    row
}
