//! Integer arithmetic shared by the decision rules.
//!
//! Inputs here are small (triples in the hundreds, group orders below
//! 10^5), so trial division and plain loops are all that is needed. Anything
//! that can outgrow `u64` goes through checked `u128` arithmetic and reports
//! [`Error::Overflow`] instead of wrapping.

use crate::error::{Error, Result};

/// Prime factorization as `(prime, exponent)` pairs, ascending by prime.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization(Vec<(u64, u32)>);

impl Factorization {
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.0
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    /// Multiplies the factorization back out.
    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn gcd(mut x: u64, mut y: u64) -> u64 {
    while y != 0 {
        let r = x % y;
        x = y;
        y = r;
    }
    x
}

/// Returns `(gcd(x, y), lcm(x, y))`.
///
/// Panics if the lcm does not fit in a `u64`; callers in this crate never get
/// near that.
pub fn gcd_lcm(x: u64, y: u64) -> (u64, u64) {
    assert!(x >= 1 && y >= 1, "gcd_lcm expects positive integers");
    let g = gcd(x, y);
    let l = (x / g).checked_mul(y).expect("lcm overflows u64");
    (g, l)
}

pub fn lcm(x: u64, y: u64) -> u64 {
    gcd_lcm(x, y).1
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn factorize(mut n: u64) -> Factorization {
    assert!(n >= 1, "factorize expects a positive integer");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Factorization(out)
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi expects a positive integer");
    factorize(n)
        .pairs()
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in factorize(n).pairs() {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Ordinary binomial coefficient, exact.
pub fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc
            .checked_mul(n as u128 - k as u128 + i)
            .ok_or(Error::Overflow("binomial"))?
            / i;
    }
    Ok(acc)
}

fn checked_pow(base: u128, exp: u64) -> Result<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base).ok_or(Error::Overflow("power"))?;
    }
    Ok(acc)
}

pub fn checked_pow_u64(base: u64, exp: u64) -> Result<u128> {
    checked_pow(base as u128, exp)
}

/// Gaussian binomial coefficient `[n choose d]_q`.
///
/// Each partial product `prod_{i<=k} (q^{n-d+i} - 1) / (q^i - 1)` is itself a
/// Gaussian binomial, so dividing right after each multiplication stays exact.
pub fn q_binomial(n: u64, d: u64, q: u64) -> Result<u128> {
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "q_binomial needs d <= n, got d={d}, n={n}"
        )));
    }
    if q == 0 {
        return Err(Error::InvalidArgument("q_binomial needs q >= 1".into()));
    }
    if q == 1 {
        return binomial(n, d);
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 1..=d {
        let num = checked_pow(q, n - d + i)? - 1;
        let den = checked_pow(q, i)? - 1;
        acc = acc.checked_mul(num).ok_or(Error::Overflow("q_binomial"))?;
        debug_assert_eq!(acc % den, 0);
        acc /= den;
    }
    Ok(acc)
}

/// Least `t >= 1` with `u^t = 1 (mod n)`.
pub fn multiplicative_order(u: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let r = u.rem_euclid(n as i64) as u64;
    if gcd(r, n) != 1 {
        return Err(Error::NotCoprime { u, n });
    }
    let n128 = n as u128;
    let mut x = r as u128 % n128;
    let mut t = 1;
    while x != 1 {
        x = x * r as u128 % n128;
        t += 1;
    }
    Ok(t)
}
