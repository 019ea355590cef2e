//! Integer arithmetic helpers: primality, Legendre symbols, modular square
//! roots, bounded factorization and Hilbert symbols over `Q_p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mut b128 = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn legendre_big(a: &BigInt, p: u64) -> i32 {
    let r = a.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    legendre(r, p)
}

/// Square root modulo an odd prime (Tonelli–Shanks), `None` for nonresidues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| legendre(z, p) == -1).unwrap();
    let mulm = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulm(tt, tt);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulm(b, b);
        t = mulm(t, c);
        r = mulm(r, b);
    }
    Some(r.min(p - r))
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization of `|n|` (n ≠ 0) by trial division up to 10^6.
/// A cofactor without small prime factors is accepted when below 10^18
/// (then it is a prime, a prime square or a product of two distinct primes,
/// which is all that square-class computations need); larger cofactors are
/// reported as `FactorizationLimit`.
pub fn factor_for_squares(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut p = 2u64;
    while p <= TRIAL_BOUND {
        let bp = BigInt::from(p);
        if &bp * &bp > m {
            break;
        }
        let mut k = 0;
        while (&m % &bp).is_zero() {
            m /= &bp;
            k += 1;
        }
        if k > 0 {
            out.push((bp, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m.is_one() {
        return Ok(out);
    }
    let small = BigInt::from(TRIAL_BOUND);
    if m <= &small * &small || m.bits() <= 32 {
        out.push((m, 1));
        return Ok(out);
    }
    if m < BigInt::from(10u64.pow(18)) {
        let r = m.sqrt();
        if &r * &r == m {
            out.push((r, 2));
        } else {
            // prime or a product of two distinct primes: squarefree either way
            out.push((m, 1));
        }
        return Ok(out);
    }
    Err(Error::FactorizationLimit(n.to_string()))
}

/// Signed squarefree part of a nonzero integer.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let mut s = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, k) in factor_for_squares(n)? {
        if k % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

/// Primes dividing `|n|` (bounded factorization).
pub fn prime_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    Ok(factor_for_squares(n)?.into_iter().map(|(p, _)| p).collect())
}

pub fn valuation_int(n: &BigInt, p: &BigInt) -> u32 {
    let mut k = 0;
    let mut m = n.clone();
    if m.is_zero() {
        return u32::MAX;
    }
    while (&m % p).is_zero() {
        m /= p;
        k += 1;
    }
    k
}

fn split_p(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut k = 0;
    let mut m = n.clone();
    while (&m % p).is_zero() {
        m /= p;
        k += 1;
    }
    (k, m)
}

/// Hilbert symbol `(a, b)_p` for nonzero integers; `p = None` is the real place.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, p: Option<&BigInt>) -> i32 {
    match p {
        None => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Some(p) if *p == BigInt::from(2) => {
            let (alpha, u) = split_p(a, p);
            let (beta, v) = split_p(b, p);
            let eps = |x: &BigInt| -> i64 {
                // (x-1)/2 mod 2 for odd x
                let r = x.mod_floor(&BigInt::from(4)).to_i64().unwrap();
                if r == 3 {
                    1
                } else {
                    0
                }
            };
            let omega = |x: &BigInt| -> i64 {
                // (x^2-1)/8 mod 2 for odd x
                let r = x.mod_floor(&BigInt::from(8)).to_i64().unwrap();
                if r == 3 || r == 5 {
                    1
                } else {
                    0
                }
            };
            let e = eps(&u) * eps(&v) + alpha as i64 * omega(&v) + beta as i64 * omega(&u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Some(p) => {
            let (alpha, u) = split_p(a, p);
            let (beta, v) = split_p(b, p);
            let pu = p.to_u64().expect("prime too large");
            let mut s = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && pu % 4 == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre_big(&u, pu);
            }
            if alpha % 2 == 1 {
                s *= legendre_big(&v, pu);
            }
            s
        }
    }
}
