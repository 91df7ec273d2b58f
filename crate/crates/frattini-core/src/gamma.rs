//! Arithmetic in the relatively free exponent-p groups `Γ_n(V)` for `n ≤ 4`
//! via Lie n-tuples, and in quotients `Γ_n(V)/M` by a central submodule
//! `M ≤ L^n V`.
//!
//! An element is a tuple `(v_1, …, v_n)` of Lie-power coordinate vectors.
//! Multiplication follows the closed rules for `n ≤ 4`; all brackets are
//! table-driven. When a quotient submodule is present, the top coordinate is
//! kept as the canonical coset representative (eliminated against the rref
//! pivots of M), so element equality is a plain comparison.

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::lie::LiePowers;
use crate::matrix::{in_row_space, FpMatrix};
use crate::rng::SeededRng;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GammaElement {
    coords: Vec<Vec<u64>>,
}

impl GammaElement {
    pub fn coords(&self) -> &[Vec<u64>] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &[u64] {
        &self.coords[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.iter().all(|&x| x == 0))
    }
}

/// A context for `Γ_n(V)` or a quotient `Γ_n(V)/M`. Immutable once built.
#[derive(Clone, Debug)]
pub struct GammaContext {
    powers: LiePowers,
    quotient: Option<FpMatrix>,
}

impl GammaContext {
    /// The full group `Γ_n(V)`, `V = F_p^d`. Requires `p > n`.
    pub fn new(field: PrimeField, d: usize, n: usize) -> Result<Self> {
        let powers = LiePowers::build(field, d, n)?;
        Ok(GammaContext { powers, quotient: None })
    }

    /// The quotient by the row space of `m_basis ≤ L^n V` (given in `L^n V`
    /// coordinates). The basis is canonicalised to rref.
    pub fn quotient(powers: LiePowers, m_basis: &FpMatrix) -> Result<Self> {
        let top = powers.space(powers.max_degree()).dim();
        if m_basis.cols() != top {
            return Err(Error::DimensionMismatch { expected: top, found: m_basis.cols() });
        }
        let quotient = m_basis.row_basis();
        Ok(GammaContext { powers, quotient: Some(quotient) })
    }

    pub fn from_powers(powers: LiePowers) -> Self {
        GammaContext { powers, quotient: None }
    }

    pub fn field(&self) -> PrimeField {
        self.powers.field()
    }

    pub fn d(&self) -> usize {
        self.powers.d()
    }

    pub fn class_bound(&self) -> usize {
        self.powers.max_degree()
    }

    pub fn powers(&self) -> &LiePowers {
        &self.powers
    }

    /// rref basis of the quotient submodule M, if any.
    pub fn quotient_basis(&self) -> Option<&FpMatrix> {
        self.quotient.as_ref()
    }

    pub fn coord_dim(&self, i: usize) -> usize {
        self.powers.space(i).dim()
    }

    pub fn identity(&self) -> GammaElement {
        let n = self.class_bound();
        GammaElement { coords: (1..=n).map(|i| vec![0; self.coord_dim(i)]).collect() }
    }

    /// Build an element from coordinate vectors, validating lengths and
    /// reducing everything (including the coset representative).
    pub fn element(&self, coords: &[Vec<u64>]) -> Result<GammaElement> {
        let n = self.class_bound();
        if coords.len() != n {
            return Err(Error::ContextMismatch);
        }
        let f = self.field();
        let mut out: Vec<Vec<u64>> = Vec::with_capacity(n);
        for (i, c) in coords.iter().enumerate() {
            let want = self.coord_dim(i + 1);
            if c.len() != want {
                return Err(Error::DimensionMismatch { expected: want, found: c.len() });
            }
            out.push(c.iter().map(|&x| f.reduce(x)).collect());
        }
        let top = out.pop().expect("n >= 1");
        out.push(self.reduce_top(top));
        Ok(GammaElement { coords: out })
    }

    /// The generator image of `v ∈ V`: the tuple `(v, 0, …, 0)`.
    pub fn from_degree_one(&self, v: &[u64]) -> Result<GammaElement> {
        if v.len() != self.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), found: v.len() });
        }
        let f = self.field();
        let mut coords: Vec<Vec<u64>> =
            (1..=self.class_bound()).map(|i| vec![0; self.coord_dim(i)]).collect();
        coords[0] = v.iter().map(|&x| f.reduce(x)).collect();
        Ok(GammaElement { coords })
    }

    pub fn random_element(&self, rng: &mut SeededRng) -> GammaElement {
        let p = self.field().p();
        let mut coords: Vec<Vec<u64>> =
            (1..=self.class_bound()).map(|i| rng.fp_vec(p, self.coord_dim(i))).collect();
        let top = coords.pop().expect("n >= 1");
        coords.push(self.reduce_top(top));
        GammaElement { coords }
    }

    /// Canonical coset representative modulo M: eliminate against the rref
    /// pivots of the quotient basis.
    fn reduce_top(&self, mut v: Vec<u64>) -> Vec<u64> {
        let Some(m) = &self.quotient else {
            return v;
        };
        let f = self.field();
        for i in 0..m.rows() {
            let pc = m.row(i).iter().position(|&x| x != 0).expect("rref rows nonzero");
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (vj, &mj) in v.iter_mut().zip(m.row(i).iter()) {
                *vj = f.sub(*vj, f.mul(c, mj));
            }
        }
        v
    }

    fn vec_add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.field();
        a.iter().zip(b.iter()).map(|(&x, &y)| f.add(x, y)).collect()
    }

    fn vec_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.field();
        a.iter().zip(b.iter()).map(|(&x, &y)| f.sub(x, y)).collect()
    }

    fn vec_scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        let f = self.field();
        a.iter().map(|&x| f.mul(x, c)).collect()
    }

    fn vec_neg(&self, a: &[u64]) -> Vec<u64> {
        let f = self.field();
        a.iter().map(|&x| f.neg(x)).collect()
    }

    fn check_member(&self, a: &GammaElement) -> Result<()> {
        if a.coords.len() != self.class_bound() {
            return Err(Error::ContextMismatch);
        }
        for (i, c) in a.coords.iter().enumerate() {
            if c.len() != self.coord_dim(i + 1) {
                return Err(Error::ContextMismatch);
            }
        }
        Ok(())
    }

    /// The closed multiplication rules for Lie n-tuples, `n ≤ 4`.
    pub fn multiply(&self, a: &GammaElement, b: &GammaElement) -> Result<GammaElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        let n = self.class_bound();
        let lp = &self.powers;
        let f = self.field();
        let three = f.reduce(3);

        let v1 = &a.coords[0];
        let w1 = &b.coords[0];
        let mut out = Vec::with_capacity(n);
        out.push(self.vec_add(v1, w1));

        if n >= 2 {
            // v2 + w2 + [v1, w1]
            let mut c2 = self.vec_add(&a.coords[1], &b.coords[1]);
            c2 = self.vec_add(&c2, &lp.bracket(1, 1, v1, w1)?);
            out.push(c2);
        }
        if n >= 3 {
            // v3 + w3 + 3[v1, w2] + 3[v2, w1] + [v1, w1, w1 − v1]
            let v2 = &a.coords[1];
            let w2 = &b.coords[1];
            let mut c3 = self.vec_add(&a.coords[2], &b.coords[2]);
            c3 = self.vec_add(&c3, &self.vec_scale(&lp.bracket(1, 2, v1, w2)?, three));
            c3 = self.vec_add(&c3, &self.vec_scale(&lp.bracket(2, 1, v2, w1)?, three));
            let v1w1 = lp.bracket(1, 1, v1, w1)?;
            let diff1 = self.vec_sub(w1, v1);
            c3 = self.vec_add(&c3, &lp.bracket(2, 1, &v1w1, &diff1)?);
            out.push(c3);
        }
        if n >= 4 {
            // v4 + w4 + [v1, w3] + 3[v2, w2] + [v3, w1]
            //   + [v2, w1, w1 − v1] + [v1, w2, w1 − v1] + [v1, w1, w2 − v2]
            //   − [v1, w1, v1, w1]
            let v2 = &a.coords[1];
            let w2 = &b.coords[1];
            let v3 = &a.coords[2];
            let w3 = &b.coords[2];
            let diff1 = self.vec_sub(w1, v1);
            let diff2 = self.vec_sub(w2, v2);
            let v1w1 = lp.bracket(1, 1, v1, w1)?;

            let mut c4 = self.vec_add(&a.coords[3], &b.coords[3]);
            c4 = self.vec_add(&c4, &lp.bracket(1, 3, v1, w3)?);
            c4 = self.vec_add(&c4, &self.vec_scale(&lp.bracket(2, 2, v2, w2)?, three));
            c4 = self.vec_add(&c4, &lp.bracket(3, 1, v3, w1)?);
            let v2w1 = lp.bracket(2, 1, v2, w1)?;
            c4 = self.vec_add(&c4, &lp.bracket(3, 1, &v2w1, &diff1)?);
            let v1w2 = lp.bracket(1, 2, v1, w2)?;
            c4 = self.vec_add(&c4, &lp.bracket(3, 1, &v1w2, &diff1)?);
            c4 = self.vec_add(&c4, &lp.bracket(2, 2, &v1w1, &diff2)?);
            let tri = lp.bracket(2, 1, &v1w1, v1)?;
            c4 = self.vec_sub(&c4, &lp.bracket(3, 1, &tri, w1)?);
            out.push(c4);
        }

        let top = out.pop().expect("n >= 1");
        out.push(self.reduce_top(top));
        Ok(GammaElement { coords: out })
    }

    /// `(−v_1, …, −v_n)`.
    pub fn inverse(&self, a: &GammaElement) -> Result<GammaElement> {
        self.check_member(a)?;
        Ok(GammaElement { coords: a.coords.iter().map(|c| self.vec_neg(c)).collect() })
    }

    /// Group power by repeated multiplication (the closed form
    /// `(k v_1, …, k v_n)` is what the tests check it against).
    pub fn power(&self, a: &GammaElement, k: i64) -> Result<GammaElement> {
        let (base, mut e) = if k < 0 {
            (self.inverse(a)?, (-k) as u64)
        } else {
            (a.clone(), k as u64)
        };
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &sq)?;
            }
            sq = self.multiply(&sq, &sq)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Left-normed group commutator `[a_1, …, a_ℓ]`, computed by iterated
    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, elements: &[GammaElement]) -> Result<GammaElement> {
        if elements.is_empty() || elements.len() > self.class_bound() {
            return Err(Error::CommutatorTooLong {
                len: elements.len(),
                class: self.class_bound(),
            });
        }
        let mut acc = elements[0].clone();
        for b in &elements[1..] {
            let ai = self.inverse(&acc)?;
            let bi = self.inverse(b)?;
            acc = self.multiply(&self.multiply(&self.multiply(&ai, &bi)?, &acc)?, b)?;
        }
        Ok(acc)
    }

    /// Precompute the coordinatewise action of `α_g`. If the context is a
    /// quotient, `g` must stabilise M; a failure reports a witness row.
    pub fn automorphism(&self, g: &FpMatrix) -> Result<GammaAutomorphism> {
        if g.rows() != self.d() || g.cols() != self.d() {
            return Err(Error::DimensionMismatch { expected: self.d(), found: g.rows() });
        }
        let n = self.class_bound();
        let mut mats = Vec::with_capacity(n);
        for i in 1..=n {
            mats.push(self.powers.induced_action(g, i)?);
        }
        if let Some(m) = &self.quotient {
            let top = &mats[n - 1];
            for r in 0..m.rows() {
                let image = top.apply_to_row(m.row(r))?;
                if !in_row_space(m, &image)? {
                    return Err(Error::DoesNotStabilizeQuotient { witness_row: r });
                }
            }
        }
        Ok(GammaAutomorphism { mats })
    }

    /// `α_g` applied to a single element; for bulk use build the
    /// [`GammaAutomorphism`] once.
    pub fn apply_automorphism(&self, g: &FpMatrix, a: &GammaElement) -> Result<GammaElement> {
        let auto = self.automorphism(g)?;
        self.apply(&auto, a)
    }

    pub fn apply(&self, auto: &GammaAutomorphism, a: &GammaElement) -> Result<GammaElement> {
        self.check_member(a)?;
        let mut coords = Vec::with_capacity(a.coords.len());
        for (c, m) in a.coords.iter().zip(auto.mats.iter()) {
            coords.push(m.apply_to_row(c)?);
        }
        let top = coords.pop().expect("n >= 1");
        coords.push(self.reduce_top(top));
        Ok(GammaElement { coords })
    }

    /// The exponent m with `|G| = p^m`.
    pub fn order_exponent(&self) -> u64 {
        let mut m: u64 = (1..=self.class_bound()).map(|i| self.coord_dim(i) as u64).sum();
        if let Some(q) = &self.quotient {
            m -= q.rows() as u64;
        }
        m
    }

    /// Nilpotency class with an explicit witness. Deterministic standard
    /// basis commutators are scanned first (they generate the lower central
    /// sections, so the scan is conclusive); a seeded random probe budget
    /// backs them up for quotient corner cases.
    pub fn nilpotency_class(&self, seed: u64) -> Result<ClassWitness> {
        let n = self.class_bound();
        let d = self.d();
        for len in (1..=n).rev() {
            // standard-basis tuples in lexicographic order
            let count = d.pow(len as u32);
            for flat in 0..count {
                let mut tuple = Vec::with_capacity(len);
                let mut v = flat;
                for _ in 0..len {
                    tuple.push(v % d);
                    v /= d;
                }
                tuple.reverse();
                let elements: Vec<GammaElement> = tuple
                    .iter()
                    .map(|&i| {
                        let mut e = vec![0u64; d];
                        e[i] = 1;
                        self.from_degree_one(&e).expect("basis vector")
                    })
                    .collect();
                let c = self.commutator(&elements)?;
                if !c.is_identity() {
                    return Ok(ClassWitness { class: len as u32, tuple: Some(tuple), element: c });
                }
            }
            // random fallback within the documented budget
            let mut rng = SeededRng::new(seed ^ (len as u64));
            for _ in 0..200 {
                let elements: Vec<GammaElement> =
                    (0..len).map(|_| self.random_element(&mut rng)).collect();
                let c = self.commutator(&elements)?;
                if !c.is_identity() {
                    return Ok(ClassWitness { class: len as u32, tuple: None, element: c });
                }
            }
        }
        Ok(ClassWitness { class: 0, tuple: None, element: self.identity() })
    }
}

/// The coordinatewise matrices of one automorphism `α_g`.
#[derive(Clone, Debug)]
pub struct GammaAutomorphism {
    mats: Vec<FpMatrix>,
}

impl GammaAutomorphism {
    pub fn matrices(&self) -> &[FpMatrix] {
        &self.mats
    }
}

/// Outcome of the class probe: the class and a nonidentity commutator of
/// that length (with the generating tuple when the deterministic scan won).
#[derive(Clone, Debug)]
pub struct ClassWitness {
    pub class: u32,
    pub tuple: Option<Vec<usize>>,
    pub element: GammaElement,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: usize, n: usize) -> GammaContext {
        GammaContext::new(PrimeField::new(5).unwrap(), d, n).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let g = ctx(2, 4);
        let mut rng = SeededRng::new(1);
        for _ in 0..20 {
            let a = g.random_element(&mut rng);
            assert_eq!(g.multiply(&a, &g.identity()).unwrap(), a);
            assert_eq!(g.multiply(&g.identity(), &a).unwrap(), a);
        }
    }

    #[test]
    fn gamma2_product_rule() {
        // (v, 0)·(w, 0) = (v + w, [v, w])
        let g = ctx(3, 2);
        let mut rng = SeededRng::new(2);
        for _ in 0..20 {
            let v = rng.fp_vec(5, 3);
            let w = rng.fp_vec(5, 3);
            let a = g.from_degree_one(&v).unwrap();
            let b = g.from_degree_one(&w).unwrap();
            let ab = g.multiply(&a, &b).unwrap();
            assert_eq!(ab.coord(1), &g.vec_add(&v, &w)[..]);
            assert_eq!(ab.coord(2), &g.powers().bracket(1, 1, &v, &w).unwrap()[..]);
        }
    }

    #[test]
    fn inverse_and_powers() {
        let g = ctx(2, 4);
        let mut rng = SeededRng::new(3);
        assert_eq!(g.inverse(&g.identity()).unwrap(), g.identity());
        for _ in 0..30 {
            let a = g.random_element(&mut rng);
            assert!(g.multiply(&a, &g.inverse(&a).unwrap()).unwrap().is_identity());
            // power agrees with the definition ...
            assert_eq!(g.power(&a, 2).unwrap(), g.multiply(&a, &a).unwrap());
            // ... and with the closed form (k v_1, …, k v_n)
            let pk = g.power(&a, 3).unwrap();
            for i in 1..=4 {
                assert_eq!(pk.coord(i), &g.vec_scale(a.coord(i), 3)[..]);
            }
            // exponent p
            assert!(g.power(&a, 5).unwrap().is_identity());
        }
    }

    #[test]
    fn associativity_spot_check() {
        let g = ctx(2, 4);
        let mut rng = SeededRng::new(4);
        for _ in 0..100 {
            let a = g.random_element(&mut rng);
            let b = g.random_element(&mut rng);
            let c = g.random_element(&mut rng);
            let left = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn commutator_identities() {
        // [g, g'] = (0, 2[v1, v1']) in Γ₂
        let g2 = ctx(3, 2);
        let mut rng = SeededRng::new(5);
        for _ in 0..50 {
            let a = g2.random_element(&mut rng);
            let b = g2.random_element(&mut rng);
            let c = g2.commutator(&[a.clone(), b.clone()]).unwrap();
            assert!(c.coord(1).iter().all(|&x| x == 0));
            let expect =
                g2.vec_scale(&g2.powers().bracket(1, 1, a.coord(1), b.coord(1)).unwrap(), 2);
            assert_eq!(c.coord(2), &expect[..]);
        }
        // [g, g', g''] = (0, 0, 12[v1, v1', v1'']) in Γ₃
        let g3 = ctx(2, 3);
        for _ in 0..50 {
            let a = g3.random_element(&mut rng);
            let b = g3.random_element(&mut rng);
            let c = g3.random_element(&mut rng);
            let com = g3.commutator(&[a.clone(), b.clone(), c.clone()]).unwrap();
            assert!(com.coord(1).iter().all(|&x| x == 0));
            assert!(com.coord(2).iter().all(|&x| x == 0));
            let br = g3
                .powers()
                .bracket(
                    2,
                    1,
                    &g3.powers().bracket(1, 1, a.coord(1), b.coord(1)).unwrap(),
                    c.coord(1),
                )
                .unwrap();
            assert_eq!(com.coord(3), &g3.vec_scale(&br, 12)[..]);
        }
    }

    #[test]
    fn orders_and_class() {
        // d(d+1)/2, d(d+1)(2d+1)/6, d(d+1)(3d²+d+2)/12
        for d in 2..=3usize {
            let du = d as u64;
            assert_eq!(ctx(d, 2).order_exponent(), du * (du + 1) / 2);
            assert_eq!(ctx(d, 3).order_exponent(), du * (du + 1) * (2 * du + 1) / 6);
            assert_eq!(ctx(d, 4).order_exponent(), du * (du + 1) * (3 * du * du + du + 2) / 12);
        }
        let g = ctx(2, 4);
        assert_eq!(g.order_exponent(), 8);
        let w = g.nilpotency_class(0).unwrap();
        assert_eq!(w.class, 4);
        assert!(w.tuple.is_some());
    }

    #[test]
    fn quotient_by_full_top_power_drops_class() {
        let g = ctx(2, 3);
        let full = g.powers().space(3).dim();
        let m = FpMatrix::identity(g.field(), full);
        let q = GammaContext::quotient(g.powers().clone(), &m).unwrap();
        assert_eq!(q.nilpotency_class(0).unwrap().class, 2);
        assert_eq!(q.order_exponent(), g.order_exponent() - full as u64);
    }

    #[test]
    fn automorphism_is_homomorphism() {
        let g = ctx(3, 3);
        let f = g.field();
        let mat = FpMatrix::from_rows(f, &[vec![1, 2, 0], vec![0, 1, 0], vec![3, 0, 1]]).unwrap();
        let auto = g.automorphism(&mat).unwrap();
        let mut rng = SeededRng::new(6);
        for _ in 0..50 {
            let a = g.random_element(&mut rng);
            let b = g.random_element(&mut rng);
            let lhs = g.apply(&auto, &g.multiply(&a, &b).unwrap()).unwrap();
            let rhs =
                g.multiply(&g.apply(&auto, &a).unwrap(), &g.apply(&auto, &b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
        // identity automorphism fixes everything
        let ida = g.automorphism(&FpMatrix::identity(f, 3)).unwrap();
        let a = g.random_element(&mut rng);
        assert_eq!(g.apply(&ida, &a).unwrap(), a);
    }
}
