//! Integer helpers: deterministic primality, factoring, lcm and divisor
//! enumeration in 128-bit arithmetic.
//!
//! Everything here is exact. Quantities that would overflow `u128` are
//! reported as [`Error::SizeLimit`] instead of wrapping.

use crate::error::{Error, Result};
use num_bigint::BigUint;

/// Trial-division bound used before switching to Pollard rho.
const TRIAL_BOUND: u128 = 1_000_000;

fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m <= u64::MAX as u128 {
        // operands are reduced, so the product fits in u128
        (a % m) * (b % m) % m
    } else {
        let r = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        let digits = r.to_u64_digits();
        let lo = digits.first().copied().unwrap_or(0) as u128;
        let hi = digits.get(1).copied().unwrap_or(0) as u128;
        (hi << 64) | lo
    }
}

fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        exp >>= 1;
        if exp > 0 {
            base = mulmod(base, base, m);
        }
    }
    acc
}

/// Deterministic Miller-Rabin. The fixed base set is proven sufficient for
/// all 64-bit inputs; above that the test is heuristic but has no known
/// counterexample, and this crate only feeds it numbers below 2^127.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard rho with Brent's cycle detection. Deterministic: the polynomial
/// increment starts at 1 and is bumped on failure, so identical inputs
/// always walk the same sequence.
fn pollard_rho(n: u128) -> u128 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    for c in 1u128.. {
        let f = |x: u128| (mulmod(x, x, n) + c) % n;
        let mut x: u128 = 2;
        let mut y: u128 = 2;
        let mut d: u128 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

/// Complete prime factorization, ascending primes with multiplicities.
///
/// Trial division up to 10^6, then recursive Pollard rho on what remains.
pub fn factor(n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let mut n = n;
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |p: u128, e: u32, out: &mut Vec<(u128, u32)>| {
        if let Some(last) = out.last_mut() {
            if last.0 == p {
                last.1 += e;
                return;
            }
        }
        out.push((p, e));
    };
    for p in std::iter::once(2u128).chain((3..=TRIAL_BOUND).step_by(2)) {
        if p * p > n {
            break;
        }
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            push(p, e, &mut out);
        }
    }
    // remaining cofactor has no prime factor <= 10^6
    let mut stack = vec![n];
    let mut big: Vec<u128> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            big.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    big.sort_unstable();
    for p in big {
        push(p, 1, &mut out);
    }
    out.sort_unstable();
    Ok(out)
}

/// All divisors of `n`, ascending.
pub fn divisors_sorted(n: u128) -> Result<Vec<u128>> {
    let fac = factor(n)?;
    let mut divs: Vec<u128> = vec![1];
    for (p, e) in fac {
        let prev = divs.clone();
        let mut pk: u128 = 1;
        for _ in 0..e {
            pk = pk
                .checked_mul(p)
                .ok_or_else(|| Error::SizeLimit("divisor overflows u128".into()))?;
            for d in &prev {
                let v = d
                    .checked_mul(pk)
                    .ok_or_else(|| Error::SizeLimit("divisor overflows u128".into()))?;
                divs.push(v);
            }
        }
    }
    divs.sort_unstable();
    Ok(divs)
}

/// Least common multiple of a list of positive integers.
pub fn lcm_list(xs: &[u128]) -> Result<u128> {
    let mut acc: u128 = 1;
    for &x in xs {
        if x == 0 {
            return Err(Error::NonPositive);
        }
        let g = gcd_u128(acc, x);
        acc = (acc / g)
            .checked_mul(x)
            .ok_or_else(|| Error::SizeLimit("lcm overflows u128".into()))?;
    }
    Ok(acc)
}

/// `base^exp` with overflow reported as a size-limit error.
pub fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::SizeLimit(format!("{base}^{exp} overflows u128")))
}

/// Binomial coefficient C(n, k) mod p by Lucas' theorem (p prime).
pub fn binomial_mod_p(mut n: u128, mut k: u128, p: u64) -> u64 {
    debug_assert!(is_prime(p as u128));
    if k > n {
        return 0;
    }
    let mut acc: u64 = 1;
    while n > 0 || k > 0 {
        let (nd, kd) = ((n % p as u128) as u64, (k % p as u128) as u64);
        acc = acc * binomial_small_mod_p(nd, kd, p) % p;
        if acc == 0 {
            return 0;
        }
        n /= p as u128;
        k /= p as u128;
    }
    acc
}

// C(a, b) mod p for a, b < p, via modular inverses.
fn binomial_small_mod_p(a: u64, b: u64, p: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 0..b {
        num = (num as u128 * ((a - i) % p) as u128 % p as u128) as u64;
        den = (den as u128 * ((i + 1) % p) as u128 % p as u128) as u64;
    }
    (num as u128 * powmod(den as u128, p as u128 - 2, p as u128)) as u64 % p
}
