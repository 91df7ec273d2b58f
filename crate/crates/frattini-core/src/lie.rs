//! The Lie powers `L^1 V … L^4 V` as explicit subspaces of tensor powers.
//!
//! `T^n V` has the standard basis of decomposable tensors `e_{i_1} ⊗ … ⊗
//! e_{i_n}`, flat-indexed by the base-d number `i_1 i_2 … i_n`. `L^n V` is
//! spanned by the left-normed brackets `[e_{i_1}, …, e_{i_n}]` with
//! `[u, v] = u ⊗ v − v ⊗ u`; echelonising those spanning vectors fixes a
//! reproducible basis. Bracket structure constants are precomputed so group
//! arithmetic downstream is table-driven.

use crate::error::{Error, Result};
use crate::fp::{moebius, PrimeField};
use crate::matrix::{solve_membership, FpMatrix};
use alloc::vec;
use alloc::vec::Vec;

/// The rank of the degree-k homogeneous component of the free Lie ring:
/// `f(d, k) = (1/k) Σ_{i|k} μ(i) d^{k/i}`.
fn witt_formula(d: u64, k: u64) -> u64 {
    let mut sum: i128 = 0;
    for i in 1..=k {
        if k % i != 0 {
            continue;
        }
        sum += i128::from(moebius(i)) * i128::from(d.pow((k / i) as u32));
    }
    debug_assert!(sum > 0 && sum % i128::from(k) == 0);
    (sum / i128::from(k)) as u64
}

/// Witt dimension of `L^k V` over `F_p` with `dim V = d`. The modular and
/// characteristic-zero formulas agree when `p > k`; the regime `p ≤ k` is
/// rejected rather than guessed at.
pub fn witt_dims(d: u64, k: u64, p: u64) -> Result<u64> {
    if d < 2 || k < 1 {
        return Err(Error::DimensionMismatch { expected: 2, found: d as usize });
    }
    if p <= k {
        return Err(Error::CharacteristicTooSmall { p, k });
    }
    Ok(witt_formula(d, k))
}

/// Diagnostic evaluation of the modular Witt formula
/// `f_p(d, k) = (1/k) Σ_{i|k} μ(i_0) φ(p^h) d^{k/i}` with `i = i_0 p^h`,
/// `p ∤ i_0`. Agrees with [`witt_dims`] whenever `p > k`.
pub fn witt_dims_mod_p(d: u64, k: u64, p: u64) -> u64 {
    let mut sum: i128 = 0;
    for i in 1..=k {
        if k % i != 0 {
            continue;
        }
        let mut i0 = i;
        let mut ph = 1u64;
        while i0 % p == 0 {
            i0 /= p;
            ph *= p;
        }
        let phi = crate::fp::euler_phi(ph);
        sum += i128::from(moebius(i0)) * i128::from(phi) * i128::from(d.pow((k / i) as u32));
    }
    debug_assert!(sum > 0 && sum % i128::from(k) == 0);
    (sum / i128::from(k)) as u64
}

/// Index bookkeeping for `T^n V`.
#[derive(Clone, Copy, Debug)]
pub struct TensorSpace {
    pub d: usize,
    pub n: usize,
}

impl TensorSpace {
    pub fn dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Flat index of the multi-index, first factor most significant.
    pub fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.n);
        idx.iter().fold(0, |acc, &i| acc * self.d + i)
    }

    pub fn unflatten(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.n];
        for slot in (0..self.n).rev() {
            idx[slot] = flat % self.d;
            flat /= self.d;
        }
        idx
    }
}

/// `a ⊗ b` of tensors (coordinatewise).
pub fn tensor_product(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() * b.len()];
    for (ai, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let dst = &mut out[ai * b.len()..(ai + 1) * b.len()];
        for (o, &y) in dst.iter_mut().zip(b.iter()) {
            *o = field.mul(x, y);
        }
    }
    out
}

/// `[a, b] = a ⊗ b − b ⊗ a` in `T^{i+j} V`. Both products live in the same
/// flat-indexed tensor space, so the difference is coordinatewise.
pub fn tensor_bracket(field: PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = tensor_product(field, a, b);
    let ba = tensor_product(field, b, a);
    for (o, &y) in out.iter_mut().zip(ba.iter()) {
        *o = field.sub(*o, y);
    }
    out
}

/// Apply the diagonal action `g ⊗ … ⊗ g` to a `T^n V` coordinate vector,
/// one tensor slot at a time.
pub fn apply_diagonal(field: PrimeField, d: usize, n: usize, g: &FpMatrix, v: &[u64]) -> Vec<u64> {
    debug_assert_eq!(g.rows(), d);
    debug_assert_eq!(v.len(), d.pow(n as u32));
    let mut cur = v.to_vec();
    for slot in 0..n {
        let outer = d.pow(slot as u32);
        let inner = d.pow((n - slot - 1) as u32);
        let mut next = vec![0u64; cur.len()];
        for a in 0..outer {
            for i in 0..d {
                let src_base = (a * d + i) * inner;
                for j in 0..d {
                    let c = g.get(i, j);
                    if c == 0 {
                        continue;
                    }
                    let dst_base = (a * d + j) * inner;
                    for b in 0..inner {
                        let x = field.add(next[dst_base + b], field.mul(c, cur[src_base + b]));
                        next[dst_base + b] = x;
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

/// The induced action of `g ∈ GL(d, p)` on a subspace of `T^n V` given by an
/// rref row basis. Fails with `NotInSubspace` if the subspace is not
/// invariant under `g`.
pub fn induced_action_on_basis(g: &FpMatrix, basis: &FpMatrix, n: usize) -> Result<FpMatrix> {
    let field = basis.field();
    let d = g.rows();
    let mut out = FpMatrix::zeros(field, basis.rows(), basis.rows());
    for i in 0..basis.rows() {
        let image = apply_diagonal(field, d, n, g, basis.row(i));
        let coords = solve_membership(basis, &image)?.ok_or(Error::NotInSubspace)?;
        for (j, &c) in coords.iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// One Lie power with its canonical basis inside the tensor power.
#[derive(Clone, Debug)]
pub struct LiePowerSpace {
    d: usize,
    n: usize,
    basis: FpMatrix,
}

impl LiePowerSpace {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn tensor_dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// rref basis rows, coordinates in `T^n V`.
    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    /// Lift coordinates in the Lie-power basis to a `T^n V` vector.
    pub fn embed(&self, coords: &[u64]) -> Result<Vec<u64>> {
        self.basis.apply_to_row(coords)
    }

    /// Express a `T^n V` vector in the Lie-power basis, if it lies there.
    pub fn project(&self, tensor: &[u64]) -> Result<Option<Vec<u64>>> {
        solve_membership(&self.basis, tensor)
    }

    pub fn induced_action(&self, g: &FpMatrix) -> Result<FpMatrix> {
        induced_action_on_basis(g, &self.basis, self.n)
    }
}

/// Structure constants for `[L^i V, L^j V] ⊆ L^{i+j} V`: row `a·dim_j + b`
/// holds the `L^{i+j}`-coordinates of the bracket of basis elements a and b.
#[derive(Clone, Debug)]
pub struct BracketTable {
    pub i: usize,
    pub j: usize,
    pub rows: FpMatrix,
}

/// The tower `L^1 V, …, L^n V` with every bracket table of total degree ≤ n.
#[derive(Clone, Debug)]
pub struct LiePowers {
    field: PrimeField,
    d: usize,
    n: usize,
    spaces: Vec<LiePowerSpace>,
    tables: Vec<BracketTable>,
}

impl LiePowers {
    /// Build bases and structure constants. Requires `d ≥ 2`, `1 ≤ n ≤ 4`
    /// and `p > n`.
    pub fn build(field: PrimeField, d: usize, n: usize) -> Result<Self> {
        if !(1..=4).contains(&n) {
            return Err(Error::DegreeOverflow { degree: n });
        }
        witt_dims(d as u64, n as u64, field.p())?;
        let mut spaces = Vec::with_capacity(n);
        for k in 1..=n {
            spaces.push(Self::build_space(field, d, k)?);
        }
        let mut tables = Vec::new();
        for i in 1..n {
            for j in 1..=(n - i) {
                tables.push(Self::build_table(field, &spaces, i, j)?);
            }
        }
        Ok(LiePowers { field, d, n, spaces, tables })
    }

    /// Reassemble from cached parts; dimensions are validated against the
    /// Witt formula and table shapes are checked before use.
    pub fn from_parts(
        field: PrimeField,
        d: usize,
        n: usize,
        bases: Vec<FpMatrix>,
        tables: Vec<BracketTable>,
    ) -> Result<Self> {
        if bases.len() != n || !(1..=4).contains(&n) {
            return Err(Error::DegreeOverflow { degree: n });
        }
        let mut spaces = Vec::with_capacity(n);
        for (k0, basis) in bases.into_iter().enumerate() {
            let k = k0 + 1;
            let expect = witt_dims(d as u64, k as u64, field.p())? as usize;
            if basis.rows() != expect || basis.cols() != d.pow(k as u32) {
                return Err(Error::DimensionMismatch { expected: expect, found: basis.rows() });
            }
            spaces.push(LiePowerSpace { d, n: k, basis });
        }
        let mut expected_pairs: Vec<(usize, usize)> = Vec::new();
        for i in 1..n {
            for j in 1..=(n - i) {
                expected_pairs.push((i, j));
            }
        }
        if tables.len() != expected_pairs.len() {
            return Err(Error::DimensionMismatch {
                expected: expected_pairs.len(),
                found: tables.len(),
            });
        }
        for table in &tables {
            if !expected_pairs.contains(&(table.i, table.j)) {
                return Err(Error::DegreeOverflow { degree: table.i + table.j });
            }
            let di = spaces[table.i - 1].dim();
            let dj = spaces[table.j - 1].dim();
            let dn = spaces[table.i + table.j - 1].dim();
            if table.rows.rows() != di * dj || table.rows.cols() != dn {
                return Err(Error::DimensionMismatch {
                    expected: di * dj,
                    found: table.rows.rows(),
                });
            }
        }
        Ok(LiePowers { field, d, n, spaces, tables })
    }

    fn build_space(field: PrimeField, d: usize, k: usize) -> Result<LiePowerSpace> {
        if k == 1 {
            return Ok(LiePowerSpace { d, n: 1, basis: FpMatrix::identity(field, d) });
        }
        let ts = TensorSpace { d, n: k };
        let mut spanning = FpMatrix::zeros(field, ts.dim(), ts.dim());
        for flat in 0..ts.dim() {
            let idx = ts.unflatten(flat);
            // left-normed bracket [e_{i1}, e_{i2}, …, e_{ik}]
            let mut t = vec![0u64; d];
            t[idx[0]] = 1;
            for &i in &idx[1..] {
                let mut e = vec![0u64; d];
                e[i] = 1;
                t = tensor_bracket(field, &t, &e);
            }
            for (j, &x) in t.iter().enumerate() {
                spanning.set(flat, j, x);
            }
        }
        let basis = spanning.row_basis();
        let expect = witt_dims(d as u64, k as u64, field.p())? as usize;
        if basis.rows() != expect {
            return Err(Error::DimensionMismatch { expected: expect, found: basis.rows() });
        }
        Ok(LiePowerSpace { d, n: k, basis })
    }

    fn build_table(
        field: PrimeField,
        spaces: &[LiePowerSpace],
        i: usize,
        j: usize,
    ) -> Result<BracketTable> {
        let si = &spaces[i - 1];
        let sj = &spaces[j - 1];
        let sn = &spaces[i + j - 1];
        let mut rows = FpMatrix::zeros(field, si.dim() * sj.dim(), sn.dim());
        for a in 0..si.dim() {
            for b in 0..sj.dim() {
                let t = tensor_bracket(field, si.basis().row(a), sj.basis().row(b));
                let coords = sn.project(&t)?.ok_or(Error::NotInSubspace)?;
                for (c, &x) in coords.iter().enumerate() {
                    rows.set(a * sj.dim() + b, c, x);
                }
            }
        }
        Ok(BracketTable { i, j, rows })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.n
    }

    pub fn space(&self, k: usize) -> &LiePowerSpace {
        &self.spaces[k - 1]
    }

    pub fn table(&self, i: usize, j: usize) -> Option<&BracketTable> {
        self.tables.iter().find(|t| t.i == i && t.j == j)
    }

    pub fn tables(&self) -> &[BracketTable] {
        &self.tables
    }

    /// Table-driven bracket `L^i V × L^j V → L^{i+j} V` on coordinates.
    pub fn bracket(&self, i: usize, j: usize, u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
        if i + j > self.n {
            return Err(Error::DegreeOverflow { degree: i + j });
        }
        let table = self.table(i, j).ok_or(Error::DegreeOverflow { degree: i + j })?;
        let dj = self.space(j).dim();
        if u.len() != self.space(i).dim() || v.len() != dj {
            return Err(Error::DimensionMismatch { expected: self.space(i).dim(), found: u.len() });
        }
        let f = self.field;
        let mut out = vec![0u64; self.space(i + j).dim()];
        for (a, &ua) in u.iter().enumerate() {
            if ua == 0 {
                continue;
            }
            for (b, &vb) in v.iter().enumerate() {
                if vb == 0 {
                    continue;
                }
                let c = f.mul(ua, vb);
                for (o, &t) in out.iter_mut().zip(table.rows.row(a * dj + b).iter()) {
                    *o = f.add(*o, f.mul(c, t));
                }
            }
        }
        Ok(out)
    }

    /// The same bracket computed by raw tensor expansion; the independent
    /// route used to cross-check the tables.
    pub fn bracket_raw(&self, i: usize, j: usize, u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
        if i + j > self.n {
            return Err(Error::DegreeOverflow { degree: i + j });
        }
        let tu = self.space(i).embed(u)?;
        let tv = self.space(j).embed(v)?;
        let t = tensor_bracket(self.field, &tu, &tv);
        self.space(i + j).project(&t)?.ok_or(Error::NotInSubspace)
    }

    pub fn induced_action(&self, g: &FpMatrix, k: usize) -> Result<FpMatrix> {
        self.space(k).induced_action(g)
    }
}

/// Alternating, symmetric (and for n = 3 the mixed) components of `T^n V`,
/// cut out by the idempotents of the symmetric-group action.
#[derive(Clone, Debug)]
pub struct SymAltSpaces {
    pub d: usize,
    pub n: usize,
    pub alt_basis: FpMatrix,
    pub sym_basis: FpMatrix,
    pub mixed_basis: Option<FpMatrix>,
}

const PERMS_2: [[usize; 2]; 2] = [[0, 1], [1, 0]];
const PERMS_3: [[usize; 3]; 6] =
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn perm_is_even(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

pub fn build_sym_alt(field: PrimeField, d: usize, n: usize) -> Result<SymAltSpaces> {
    if !(n == 2 || n == 3) {
        return Err(Error::DegreeOverflow { degree: n });
    }
    if field.p() <= n as u64 {
        return Err(Error::CharacteristicTooSmall { p: field.p(), k: n as u64 });
    }
    let ts = TensorSpace { d, n };
    let dim = ts.dim();
    let perms: &[&[usize]] = if n == 2 {
        &[&PERMS_2[0], &PERMS_2[1]]
    } else {
        &[&PERMS_3[0], &PERMS_3[1], &PERMS_3[2], &PERMS_3[3], &PERMS_3[4], &PERMS_3[5]]
    };
    let fact_inv = field.inv(field.reduce((1..=n as u64).product()));
    // images of every basis tensor under e_sym and e_alt; e_mixed = 1 − e_sym − e_alt
    let mut sym = FpMatrix::zeros(field, dim, dim);
    let mut alt = FpMatrix::zeros(field, dim, dim);
    for flat in 0..dim {
        let tuple = ts.unflatten(flat);
        for perm in perms {
            // position perm(s) of the image receives the factor at position s
            let mut image = vec![0usize; n];
            for (s, &ps) in perm.iter().enumerate() {
                image[ps] = tuple[s];
            }
            let target = ts.flatten(&image);
            sym.set(flat, target, field.add(sym.get(flat, target), fact_inv));
            let signed = if perm_is_even(perm) { fact_inv } else { field.neg(fact_inv) };
            alt.set(flat, target, field.add(alt.get(flat, target), signed));
        }
    }
    let mixed_basis = if n == 3 {
        let mut mixed = FpMatrix::zeros(field, dim, dim);
        for flat in 0..dim {
            for j in 0..dim {
                let unit = u64::from(flat == j);
                let x = field.sub(field.sub(unit, sym.get(flat, j)), alt.get(flat, j));
                mixed.set(flat, j, x);
            }
        }
        Some(mixed.row_basis())
    } else {
        None
    };
    Ok(SymAltSpaces { d, n, alt_basis: alt.row_basis(), sym_basis: sym.row_basis(), mixed_basis })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn witt_values_from_closed_forms() {
        // closed forms (d² − d)/2 and (d³ − d)/3, and the degree-4 instance
        // (d⁴ − d²)/4
        for d in 2..=6u64 {
            assert_eq!(witt_dims(d, 1, 5).unwrap(), d);
            assert_eq!(witt_dims(d, 2, 5).unwrap(), (d * d - d) / 2);
            assert_eq!(witt_dims(d, 3, 5).unwrap(), (d * d * d - d) / 3);
            assert_eq!(witt_dims(d, 4, 7).unwrap(), (d.pow(4) - d * d) / 4);
        }
        assert_eq!(witt_dims(2, 3, 5).unwrap(), 2);
        assert_eq!(witt_dims(2, 4, 5).unwrap(), 3);
        assert_eq!(witt_dims(3, 3, 5).unwrap(), 8);
        // the regime p ≤ k is rejected
        assert!(matches!(witt_dims(2, 4, 3), Err(Error::CharacteristicTooSmall { .. })));
        // modular diagnostic agrees when p > k
        for d in 2..=5u64 {
            for k in 1..=4u64 {
                assert_eq!(witt_dims_mod_p(d, k, 5), witt_formula(d, k));
            }
        }
        // and genuinely differs in small characteristic: for p = k = 2 the
        // i = 2 term contributes φ(2)·d instead of −d
        assert_eq!(witt_dims_mod_p(2, 2, 2), 3);
    }

    #[test]
    fn lie_power_dimensions() {
        for d in 2..=4usize {
            let lp = LiePowers::build(f5(), d, 4).unwrap();
            for k in 1..=4usize {
                assert_eq!(lp.space(k).dim() as u64, witt_dims(d as u64, k as u64, 5).unwrap());
            }
        }
    }

    #[test]
    fn l2_of_plane_is_spanned_by_e1e2_minus_e2e1() {
        let lp = LiePowers::build(f5(), 2, 2).unwrap();
        let s = lp.space(2);
        assert_eq!(s.dim(), 1);
        // e1 ⊗ e2 − e2 ⊗ e1 has flat coordinates (0, 1, −1, 0)
        assert_eq!(s.basis().row(0), &[0, 1, 4, 0]);
    }

    #[test]
    fn bracket_table_matches_raw_expansion() {
        let lp = LiePowers::build(f5(), 3, 4).unwrap();
        let mut rng = crate::rng::SeededRng::new(3);
        for (i, j) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2)] {
            for _ in 0..20 {
                let u = rng.fp_vec(5, lp.space(i).dim());
                let v = rng.fp_vec(5, lp.space(j).dim());
                assert_eq!(lp.bracket(i, j, &u, &v).unwrap(), lp.bracket_raw(i, j, &u, &v).unwrap());
            }
        }
    }

    #[test]
    fn bracket_is_alternating_and_satisfies_jacobi() {
        let f = f5();
        let lp = LiePowers::build(f, 2, 4).unwrap();
        let mut rng = crate::rng::SeededRng::new(4);
        for _ in 0..100 {
            let u = rng.fp_vec(5, 2);
            let v = rng.fp_vec(5, 2);
            let w = rng.fp_vec(5, 2);
            assert!(lp.bracket(1, 1, &u, &u).unwrap().iter().all(|&x| x == 0));
            let uv = lp.bracket(1, 1, &u, &v).unwrap();
            let vu = lp.bracket(1, 1, &v, &u).unwrap();
            assert!(uv.iter().zip(vu.iter()).all(|(&a, &b)| f.add(a, b) == 0));
            // [[u,v],w] + [[v,w],u] + [[w,u],v] = 0
            let t1 = lp.bracket(2, 1, &lp.bracket(1, 1, &u, &v).unwrap(), &w).unwrap();
            let t2 = lp.bracket(2, 1, &lp.bracket(1, 1, &v, &w).unwrap(), &u).unwrap();
            let t3 = lp.bracket(2, 1, &lp.bracket(1, 1, &w, &u).unwrap(), &v).unwrap();
            for k in 0..t1.len() {
                assert_eq!(f.add(f.add(t1[k], t2[k]), t3[k]), 0);
            }
        }
    }

    #[test]
    fn induced_action_basics() {
        let f = f5();
        let lp = LiePowers::build(f, 2, 4).unwrap();
        let id = FpMatrix::identity(f, 2);
        for k in 1..=4 {
            assert!(lp.induced_action(&id, k).unwrap().is_identity());
        }
        // λ·I acts as λ^n on L^n V
        let lam = FpMatrix::from_rows(f, &[vec![3, 0], vec![0, 3]]).unwrap();
        for k in 1..=4usize {
            let a = lp.induced_action(&lam, k).unwrap();
            let expect = FpMatrix::identity(f, lp.space(k).dim()).scale(f.pow(3, k as u64));
            assert_eq!(a, expect);
        }
        // on L²V of a plane the action is the 1×1 matrix [det g]: apply g⊗g
        // to e1⊗e2 − e2⊗e1 and read off the scalar
        let g = FpMatrix::from_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let a = lp.induced_action(&g, 2).unwrap();
        assert_eq!(a.get(0, 0), g.determinant().unwrap());
    }

    #[test]
    fn sym_alt_dimensions_and_n2_split() {
        let f = f5();
        let binom3 = |x: usize| x * (x - 1) * (x - 2) / 6;
        for d in 2..=4usize {
            let sa = build_sym_alt(f, d, 2).unwrap();
            assert_eq!(sa.sym_basis.rows(), d * (d + 1) / 2);
            assert_eq!(sa.alt_basis.rows(), d * (d - 1) / 2);
            // T²V = A²V ⊕ S²V: dimensions add and the sum has full rank
            let mut all = Vec::new();
            for i in 0..sa.sym_basis.rows() {
                all.push(sa.sym_basis.row(i).to_vec());
            }
            for i in 0..sa.alt_basis.rows() {
                all.push(sa.alt_basis.row(i).to_vec());
            }
            let joint = FpMatrix::from_rows(f, &all).unwrap();
            assert_eq!(joint.rank(), d * d);

            let sa3 = build_sym_alt(f, d, 3).unwrap();
            assert_eq!(sa3.sym_basis.rows(), binom3(d + 2));
            assert_eq!(sa3.alt_basis.rows(), binom3(d));
            let expected_mixed = d * d * d - binom3(d + 2) - binom3(d);
            assert_eq!(sa3.mixed_basis.as_ref().unwrap().rows(), expected_mixed);
            assert_eq!(expected_mixed as u64, 2 * witt_dims(d as u64, 3, 5).unwrap());
        }
    }

    #[test]
    fn d3_n3_component_dims() {
        // 27 = 10 + 8 + 8 + 1
        let sa = build_sym_alt(f5(), 3, 3).unwrap();
        assert_eq!(sa.alt_basis.rows(), 1);
        assert_eq!(sa.sym_basis.rows(), 10);
        assert_eq!(sa.mixed_basis.as_ref().unwrap().rows(), 16);
    }

    #[test]
    fn a2_basis_equals_l2_basis() {
        // v ∧ w = [v, w] for n = 2, so the subspaces coincide
        for d in 2..=4usize {
            let lp = LiePowers::build(f5(), d, 2).unwrap();
            let sa = build_sym_alt(f5(), d, 2).unwrap();
            assert_eq!(lp.space(2).basis(), &sa.alt_basis);
        }
    }
}
