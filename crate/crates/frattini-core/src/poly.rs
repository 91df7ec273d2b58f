//! Univariate polynomials over `F_p`: arithmetic, gcd, factorisation, and
//! characteristic/minimal polynomials of matrices.
//!
//! A polynomial is a coefficient vector, lowest degree first, with no
//! trailing zeros (the zero polynomial is the empty vector).

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::matrix::FpMatrix;
use crate::rng::SeededRng;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: PrimeField) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    pub fn x(field: PrimeField) -> Self {
        Poly { field, coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 for convenience.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = f.add(a, b);
        }
        Poly::new(f, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = f.sub(a, b);
        }
        Poly::new(f, out)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: u64) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let f = self.field;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = divisor.coeffs.len();
        let lead_inv = f.inv(divisor.leading());
        let mut quot = vec![0u64; rem.len() - dl + 1];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dl - 1], lead_inv);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &dcoef) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, dcoef));
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).div_rem(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let d: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.reduce(i as u64), c))
            .collect();
        Poly::new(f, d)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// `self^e mod m` by square and multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.field);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at a square matrix.
    pub fn eval_matrix(&self, m: &FpMatrix) -> Result<FpMatrix> {
        if m.rows() != m.cols() {
            return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
        }
        let mut acc = FpMatrix::zeros(m.field(), m.rows(), m.cols());
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?;
            for i in 0..m.rows() {
                acc.set(i, i, m.field().add(acc.get(i, i), c));
            }
        }
        Ok(acc)
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coeffs).
pub fn factor(poly: &Poly, rng: &mut SeededRng) -> Vec<(Poly, u32)> {
    assert!(!poly.is_zero());
    let mut work = poly.monic();
    let mut found: Vec<(Poly, u32)> = Vec::new();
    while work.degree() >= 1 {
        let sqfree = squarefree_part(&work);
        for irred in factor_squarefree(&sqfree, rng) {
            let mut mult = 0u32;
            loop {
                let (q, r) = work.div_rem(&irred);
                if !r.is_zero() {
                    break;
                }
                work = q;
                mult += 1;
            }
            found.push((irred, mult));
        }
    }
    found.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs()).cmp(&(b.0.degree(), b.0.coeffs()))
    });
    found
}

fn squarefree_part(poly: &Poly) -> Poly {
    let d = poly.derivative();
    if d.is_zero() {
        // f = g(x^p); at desk-scale degrees this only happens transiently and
        // the outer loop strips repeated factors one multiplicity at a time,
        // so dividing by gcd(f, f') = f would stall. Extract x^p-th roots.
        let f = poly.field;
        let p = f.p() as usize;
        let root: Vec<u64> = poly.coeffs().iter().step_by(p).copied().collect();
        return squarefree_part(&Poly::new(f, root));
    }
    poly.div_rem(&poly.gcd(&d)).0.monic()
}

/// Distinct-degree then equal-degree (Cantor–Zassenhaus) splitting.
fn factor_squarefree(poly: &Poly, rng: &mut SeededRng) -> Vec<Poly> {
    let f = poly.field;
    let p = f.p();
    let mut out = Vec::new();
    let mut work = poly.monic();
    let mut h = Poly::x(f);
    let mut k = 0u64;
    while work.degree() >= 1 {
        if work.degree() as u64 <= k + 1 {
            out.push(work.clone());
            break;
        }
        k += 1;
        h = h.pow_mod(p, &work);
        let g = h.sub(&Poly::x(f)).gcd(&work);
        if g.degree() >= 1 {
            split_equal_degree(&g, k as usize, rng, &mut out);
            work = work.div_rem(&g).0;
            h = h.rem(&work);
        }
    }
    out
}

fn split_equal_degree(poly: &Poly, k: usize, rng: &mut SeededRng, out: &mut Vec<Poly>) {
    if poly.degree() == k {
        out.push(poly.monic());
        return;
    }
    let f = poly.field;
    let p = f.p();
    // trace-map splitting (odd p): T(a) = a + a^p + … + a^{p^{k−1}} lands in
    // the prime field of each residue component, and T(a)^{(p−1)/2} − 1
    // vanishes on roughly half of them; this avoids the huge exponent
    // (p^k − 1)/2 entirely
    loop {
        let a = Poly::new(f, (0..poly.degree()).map(|_| rng.below(p)).collect());
        if a.is_zero() {
            continue;
        }
        let mut trace = a.clone();
        let mut frob = a.clone();
        for _ in 1..k {
            frob = frob.pow_mod(p, poly);
            trace = trace.add(&frob).rem(poly);
        }
        let b = trace.pow_mod((p - 1) / 2, poly).sub(&Poly::one(f));
        let g = b.gcd(poly);
        if g.degree() >= 1 && g.degree() < poly.degree() {
            split_equal_degree(&g, k, rng, out);
            split_equal_degree(&poly.div_rem(&g).0, k, rng, out);
            return;
        }
    }
}

/// Characteristic polynomial via Hessenberg reduction (monic, degree n).
pub fn charpoly(m: &FpMatrix) -> Result<Poly> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Ok(Poly::one(f));
    }
    let mut h = m.clone();
    // similarity reduction to upper Hessenberg form with exact pivoting
    for col in 0..n.saturating_sub(2) {
        let Some(pr) = (col + 1..n).find(|&r| h.get(r, col) != 0) else {
            continue;
        };
        if pr != col + 1 {
            for j in 0..n {
                let a = h.get(col + 1, j);
                let b = h.get(pr, j);
                h.set(col + 1, j, b);
                h.set(pr, j, a);
            }
            for i in 0..n {
                let a = h.get(i, col + 1);
                let b = h.get(i, pr);
                h.set(i, col + 1, b);
                h.set(i, pr, a);
            }
        }
        let inv = f.inv(h.get(col + 1, col));
        for r in col + 2..n {
            let c = f.mul(h.get(r, col), inv);
            if c == 0 {
                continue;
            }
            // row r -= c · row col+1, then column col+1 += c · column r
            for j in 0..n {
                let x = f.sub(h.get(r, j), f.mul(c, h.get(col + 1, j)));
                h.set(r, j, x);
            }
            for i in 0..n {
                let x = f.add(h.get(i, col + 1), f.mul(c, h.get(i, r)));
                h.set(i, col + 1, x);
            }
        }
    }
    // recurrence: p_0 = 1, p_k = char poly of the leading k×k block of xI − H
    let mut polys: Vec<Poly> = Vec::with_capacity(n + 1);
    polys.push(Poly::one(f));
    for k in 1..=n {
        // p_k = (x − h[k-1][k-1])·p_{k-1} − Σ_{i} h[i-1][k-1]·(∏ subdiag)·p_{i-1}
        let x_minus = Poly::new(f, vec![f.neg(h.get(k - 1, k - 1)), 1]);
        let mut pk = x_minus.mul(&polys[k - 1]);
        let mut beta = 1u64;
        for i in (1..k).rev() {
            beta = f.mul(beta, h.get(i, i - 1));
            if beta == 0 {
                break;
            }
            let c = f.mul(beta, h.get(i - 1, k - 1));
            if c != 0 {
                pk = pk.sub(&polys[i - 1].scale(c));
            }
        }
        polys.push(pk);
    }
    Ok(polys.pop().expect("n >= 1"))
}

/// Minimal polynomial via Krylov subspaces (lcm of local minimal polynomials
/// of the standard basis vectors).
pub fn minpoly(m: &FpMatrix) -> Result<Poly> {
    if m.rows() != m.cols() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let f = m.field();
    let n = m.rows();
    let mut acc = Poly::one(f);
    for start in 0..n {
        let mut seed = vec![0u64; n];
        seed[start] = 1;
        // quick skip: if the current acc already annihilates the seed vector
        // there is nothing to learn from it
        if acc.degree() >= 1 {
            let img = apply_poly_to_row(&acc, m, &seed)?;
            if img.iter().all(|&x| x == 0) {
                continue;
            }
        }
        let local = local_minpoly(m, &seed)?;
        acc = acc.lcm(&local);
        if acc.degree() == n {
            break;
        }
    }
    Ok(acc)
}

fn local_minpoly(m: &FpMatrix, seed: &[u64]) -> Result<Poly> {
    let f = m.field();
    let n = m.rows();
    // spin the Krylov sequence, keeping an rref basis with coordinates of
    // each reduced vector in terms of the raw sequence
    let mut basis: Vec<Vec<u64>> = Vec::new(); // reduced vectors
    let mut combos: Vec<Vec<u64>> = Vec::new(); // expression in raw iterates
    let mut v = seed.to_vec();
    let mut step = 0usize;
    loop {
        // reduce v against basis, tracking the combination
        let mut w = v.clone();
        let mut combo = vec![0u64; step + 1];
        combo[step] = 1;
        for (b, c) in basis.iter().zip(combos.iter()) {
            let pc = b.iter().position(|&x| x != 0).expect("basis rows nonzero");
            let coef = w[pc];
            if coef == 0 {
                continue;
            }
            for (wi, &bi) in w.iter_mut().zip(b.iter()) {
                *wi = f.sub(*wi, f.mul(coef, bi));
            }
            for (ci, &cc) in combo.iter_mut().zip(c.iter()) {
                *ci = f.sub(*ci, f.mul(coef, cc));
            }
        }
        if w.iter().all(|&x| x == 0) {
            // dependency found: combo gives the minimal polynomial
            return Ok(Poly::new(f, combo).monic());
        }
        // normalise so the leading position is 1 and store
        let pc = w.iter().position(|&x| x != 0).unwrap();
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        let mut combo_n = combo;
        for x in combo_n.iter_mut() {
            *x = f.mul(*x, inv);
        }
        basis.push(w);
        combos.push(combo_n);
        step += 1;
        if step > n {
            unreachable!("Krylov sequence must become dependent by degree n");
        }
        v = m.apply_to_row(&v)?;
    }
}

fn apply_poly_to_row(poly: &Poly, m: &FpMatrix, v: &[u64]) -> Result<Vec<u64>> {
    let f = m.field();
    let mut acc = vec![0u64; v.len()];
    let mut power = v.to_vec();
    for &c in poly.coeffs() {
        if c != 0 {
            for (a, &x) in acc.iter_mut().zip(power.iter()) {
                *a = f.add(*a, f.mul(c, x));
            }
        }
        power = m.apply_to_row(&power)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeededRng;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn div_rem_roundtrip() {
        let f = f5();
        let a = Poly::new(f, vec![1, 0, 2, 3]);
        let b = Poly::new(f, vec![2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree() || r.is_zero());
    }

    #[test]
    fn factor_known_product() {
        let f = f5();
        // (x + 1)^2 (x^2 + 2) — x^2 + 2 is irreducible since 3 is a
        // non-residue mod 5
        let a = Poly::new(f, vec![1, 1]);
        let b = Poly::new(f, vec![2, 0, 1]);
        let prod = a.mul(&a).mul(&b);
        let mut rng = SeededRng::new(7);
        let factors = factor(&prod, &mut rng);
        assert_eq!(factors, vec![(a, 2), (b, 1)]);
    }

    #[test]
    fn charpoly_companion() {
        let f = f5();
        // companion matrix of x^3 + 2x + 4 (acting on rows)
        let m = FpMatrix::from_signed(
            f,
            &[vec![0, 1, 0], vec![0, 0, 1], vec![-4, -2, 0]],
        )
        .unwrap();
        let cp = charpoly(&m).unwrap();
        assert_eq!(cp.coeffs(), &[4, 2, 0, 1]);
        // Cayley–Hamilton
        assert!(cp.eval_matrix(&m).unwrap().is_zero());
        // here the minimal polynomial equals the characteristic one
        assert_eq!(minpoly(&m).unwrap(), cp);
    }

    #[test]
    fn minpoly_of_identity() {
        let f = f5();
        let id = FpMatrix::identity(f, 4);
        let mp = minpoly(&id).unwrap();
        assert_eq!(mp.coeffs(), &[4, 1]); // x − 1
        let cp = charpoly(&id).unwrap();
        assert_eq!(cp.degree(), 4);
        assert!(cp.rem(&mp).is_zero());
    }
}
