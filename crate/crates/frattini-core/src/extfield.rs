//! Explicit models of `F_{p^r}` (`r` prime) and their embedding into
//! `r × r` matrices over `F_p`, for the field-extension stabilisers.
//!
//! Elements are coordinate vectors of length `r` in the power basis
//! `1, x, …, x^{r−1}` of `F_p[x]/(modulus)`. Both the modulus and the
//! primitive element are found by deterministic lexicographic search, so
//! the field presentation is reproducible.

use crate::error::{Error, Result};
use crate::fp::{factorize, PrimeField};
use crate::matrix::FpMatrix;
use crate::poly::Poly;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub struct ExtFieldData {
    base: PrimeField,
    r: u64,
    modulus: Poly,
    primitive_elt: Vec<u64>,
    frobenius: FpMatrix,
    mult_tables: Vec<FpMatrix>,
}

/// Construct `F_{p^r}` for prime `r`, with `p^r` small enough to enumerate.
pub fn build_ext_field(base: PrimeField, r: u64) -> Result<ExtFieldData> {
    let p = base.p();
    if !crate::fp::is_prime(r) {
        return Err(Error::InvalidPrime(r));
    }
    let size = p.checked_pow(r as u32).filter(|&s| s <= 1_000_000);
    let Some(size) = size else {
        return Err(Error::ExtFieldSearchFailed("p^r exceeds the desk-scale bound 10^6"));
    };

    let modulus = find_irreducible(base, r)?;

    // multiplication-by-x^i tables in the power basis
    let rr = r as usize;
    let mut mult_tables = Vec::with_capacity(rr);
    for i in 0..rr {
        let mut table = FpMatrix::zeros(base, rr, rr);
        for k in 0..rr {
            // row k = coordinates of x^k · x^i mod modulus
            let mut mono = vec![0u64; k + i + 1];
            mono[k + i] = 1;
            let reduced = Poly::new(base, mono).rem(&modulus);
            for (j, &c) in reduced.coeffs().iter().enumerate() {
                table.set(k, j, c);
            }
        }
        mult_tables.push(table);
    }

    // frobenius matrix: row k = coordinates of (x^k)^p
    let mut frobenius = FpMatrix::zeros(base, rr, rr);
    let xp = Poly::x(base).pow_mod(p, &modulus);
    let mut power = Poly::one(base);
    for k in 0..rr {
        for (j, &c) in power.coeffs().iter().enumerate() {
            frobenius.set(k, j, c);
        }
        power = power.mul(&xp).rem(&modulus);
    }

    let mut ext = ExtFieldData {
        base,
        r,
        modulus,
        primitive_elt: vec![0; rr],
        frobenius,
        mult_tables,
    };
    ext.primitive_elt = ext.find_primitive(size)?;
    Ok(ext)
}

/// Monic irreducible polynomials of prime degree r have no root in `F_p`
/// and satisfy `x^{p^r} ≡ x`; candidates are scanned in lexicographic
/// coefficient order, constant term fastest.
fn find_irreducible(base: PrimeField, r: u64) -> Result<Poly> {
    let p = base.p();
    let rr = r as usize;
    let count = p.pow(r as u32);
    for k in 0..count {
        let mut coeffs = vec![0u64; rr + 1];
        let mut v = k;
        for c in coeffs.iter_mut().take(rr) {
            *c = v % p;
            v /= p;
        }
        coeffs[rr] = 1;
        let f = Poly::new(base, coeffs);
        if is_irreducible_prime_degree(&f, base, r) {
            return Ok(f);
        }
    }
    Err(Error::ExtFieldSearchFailed("no irreducible modulus found"))
}

fn is_irreducible_prime_degree(f: &Poly, base: PrimeField, r: u64) -> bool {
    let p = base.p();
    let x = Poly::x(base);
    // no linear factor: gcd(x^p − x, f) = 1
    let xp = x.pow_mod(p, f);
    if xp.sub(&x).gcd(f).degree() != 0 {
        return false;
    }
    // x^{p^r} ≡ x (mod f)
    let mut h = x.clone();
    for _ in 0..r {
        h = h.pow_mod(p, f);
    }
    h.sub(&x).rem(f).is_zero()
}

impl ExtFieldData {
    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn size(&self) -> u64 {
        self.base.p().pow(self.r as u32)
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn primitive_elt(&self) -> &[u64] {
        &self.primitive_elt
    }

    pub fn frobenius(&self) -> &FpMatrix {
        &self.frobenius
    }

    pub fn mult_tables(&self) -> &[FpMatrix] {
        &self.mult_tables
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.r as usize]
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b.iter()).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let pa = Poly::new(self.base, a.to_vec());
        let pb = Poly::new(self.base, b.to_vec());
        let mut out = pa.mul(&pb).rem(&self.modulus).coeffs().to_vec();
        out.resize(self.r as usize, 0);
        out
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &[u64]) -> Vec<u64> {
        debug_assert!(!self.is_zero(a));
        self.pow(a, self.size() - 2)
    }

    /// Multiplicative order by brute-force repeated multiplication.
    pub fn element_order(&self, a: &[u64]) -> u64 {
        assert!(!self.is_zero(a));
        let one = self.one();
        let mut acc = a.to_vec();
        let mut k = 1;
        while acc != one {
            acc = self.mul(&acc, a);
            k += 1;
        }
        k
    }

    /// The matrix of `z ↦ z·a` in the power basis: the regular-representation
    /// embedding `F_{p^r} → M_r(F_p)`.
    pub fn mult_matrix(&self, a: &[u64]) -> FpMatrix {
        let rr = self.r as usize;
        let mut m = FpMatrix::zeros(self.base, rr, rr);
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for k in 0..rr {
                for j in 0..rr {
                    let x = self.base.add(m.get(k, j), self.base.mul(c, self.mult_tables[i].get(k, j)));
                    m.set(k, j, x);
                }
            }
        }
        m
    }

    /// Elements in lexicographic coordinate order, constant coordinate
    /// fastest; the first one of full multiplicative order wins.
    fn find_primitive(&self, size: u64) -> Result<Vec<u64>> {
        let p = self.base.p();
        let group_order = size - 1;
        let prime_divisors: Vec<u64> = factorize(group_order).into_iter().map(|(q, _)| q).collect();
        'next: for k in 1..size {
            let mut coords = vec![0u64; self.r as usize];
            let mut v = k;
            for c in coords.iter_mut() {
                *c = v % p;
                v /= p;
            }
            if self.pow(&coords, group_order) != self.one() {
                continue;
            }
            for &q in &prime_divisors {
                if self.pow(&coords, group_order / q) == self.one() {
                    continue 'next;
                }
            }
            return Ok(coords);
        }
        Err(Error::ExtFieldSearchFailed("no primitive element found"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn f25_basics() {
        let ext = build_ext_field(f5(), 2).unwrap();
        // x^2 + c is only irreducible when −c is a non-residue; the search
        // found some degree-2 irreducible
        assert_eq!(ext.modulus().degree(), 2);
        assert!(ext.modulus().is_monic());
        // frobenius^2 = identity for r = 2
        let sq = ext.frobenius().mul(ext.frobenius()).unwrap();
        assert!(sq.is_identity());
        // primitive element has exact order 24 (brute force)
        assert_eq!(ext.element_order(ext.primitive_elt()), 24);
    }

    #[test]
    fn f25_modulus_is_first_in_lex_order() {
        // squares mod 5 are {0, 1, 4}, so x^2 + 2 = x^2 − 3 is the first
        // irreducible in constant-term-fastest order
        let ext = build_ext_field(f5(), 2).unwrap();
        assert_eq!(ext.modulus().coeffs(), &[2, 0, 1]);
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        let ext = build_ext_field(f5(), 3).unwrap();
        let cube = ext.frobenius().mul(ext.frobenius()).unwrap().mul(ext.frobenius()).unwrap();
        assert!(cube.is_identity());
        // frobenius really is a ↦ a^5 on coordinates
        let a = vec![2, 3, 1];
        let via_matrix = ext.frobenius().apply_to_row(&a).unwrap();
        assert_eq!(via_matrix, ext.pow(&a, 5));
    }

    #[test]
    fn mult_matrix_is_ring_homomorphism() {
        let ext = build_ext_field(f5(), 2).unwrap();
        let mut rng = crate::rng::SeededRng::new(11);
        for _ in 0..50 {
            let a = rng.fp_vec(5, 2);
            let b = rng.fp_vec(5, 2);
            let lhs = ext.mult_matrix(&a).mul(&ext.mult_matrix(&b)).unwrap();
            let rhs = ext.mult_matrix(&ext.mul(&a, &b));
            assert_eq!(lhs, rhs);
            let sum = ext.mult_matrix(&ext.add(&a, &b));
            assert_eq!(sum, ext.mult_matrix(&a).add(&ext.mult_matrix(&b)).unwrap());
        }
    }
}
