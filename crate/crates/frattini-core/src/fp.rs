//! Arithmetic in the prime field `F_p` and small number-theoretic helpers.
//!
//! Residues are least non-negative and every operation reduces eagerly.
//! `p` fits in a machine word; desk scale never needs multiprecision.

use crate::error::{Error, Result};
use alloc::vec::Vec;

/// An odd prime modulus together with the field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Requires `p` to be an odd prime with `p ≥ 3`. The construction
    /// pipeline additionally requires `p ≥ 5`; that is checked there.
    pub fn new(p: u64) -> Result<Self> {
        if !(3..=(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduce a possibly negative integer to its least non-negative residue.
    #[inline]
    pub fn reduce_signed(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero residue (Fermat).
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// The least primitive root mod p.
    pub fn primitive_root(&self) -> u64 {
        let factors = factorize(self.p - 1);
        'outer: for g in 2..self.p {
            for &(q, _) in &factors {
                if self.pow(g, (self.p - 1) / q) == 1 {
                    continue 'outer;
                }
            }
            return g;
        }
        unreachable!("every prime has a primitive root")
    }

    /// The least quadratic non-residue mod p.
    pub fn least_non_residue(&self) -> u64 {
        (2..self.p)
            .find(|&a| self.pow(a, (self.p - 1) / 2) != 1)
            .expect("p > 2 has a non-residue")
    }
}

/// Deterministic trial-division primality test, adequate for word-size input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorisation by trial division, as (prime, multiplicity) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(q, e)| q.pow(e - 1) * (q - 1))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_rejects_non_primes() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn inverse_of_two_mod_five() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.mul(2, 3), 1);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(PrimeField::new(5).unwrap().primitive_root(), 2);
        assert_eq!(PrimeField::new(7).unwrap().primitive_root(), 3);
    }

    #[test]
    fn least_non_residues() {
        assert_eq!(PrimeField::new(5).unwrap().least_non_residue(), 2);
        assert_eq!(PrimeField::new(7).unwrap().least_non_residue(), 3);
    }

    #[test]
    fn moebius_small() {
        let mu: Vec<i64> = (1..=10).map(moebius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn phi_small() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(625), 500);
    }
}
