//! Explicit generator matrices for the geometric maximal subgroups of
//! `GL(d, p)`: subspace stabilisers (C1), imprimitive wreaths (C2),
//! field-extension stabilisers (C3), tensor-product stabilisers (C4),
//! tensor-induced wreaths (C7) and conformal form stabilisers (C8).
//!
//! Each generator set carries a serialisable description of the geometric
//! object it stabilises, and [`stabilizes`] is the executable meaning of
//! "g respects the object" for each class.

use crate::error::{Error, Result};
use crate::extfield::{build_ext_field, ExtFieldData};
use crate::fp::PrimeField;
use crate::matrix::{in_row_space, FpMatrix};
use crate::rng::SeededRng;
use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormKind {
    Symplectic,
    OrthogonalPlus,
    OrthogonalMinus,
    OrthogonalOdd,
}

impl FormKind {
    pub fn name(&self) -> &'static str {
        match self {
            FormKind::Symplectic => "symplectic",
            FormKind::OrthogonalPlus => "orthogonal-plus",
            FormKind::OrthogonalMinus => "orthogonal-minus",
            FormKind::OrthogonalOdd => "orthogonal-odd",
        }
    }

    pub fn parse(s: &str) -> Option<FormKind> {
        match s {
            "symplectic" => Some(FormKind::Symplectic),
            "orthogonal-plus" => Some(FormKind::OrthogonalPlus),
            "orthogonal-minus" => Some(FormKind::OrthogonalMinus),
            "orthogonal-odd" => Some(FormKind::OrthogonalOdd),
            _ => None,
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        !matches!(self, FormKind::Symplectic)
    }
}

/// Tagged description of a maximal subgroup in the implemented classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SubgroupSpec {
    /// Stabiliser of an r-dimensional subspace.
    C1 { r: usize },
    /// Stabiliser of an equidimensional decomposition into r summands.
    C2 { r: usize },
    /// Stabiliser of an `F_{p^r}` extension-field structure, r prime.
    C3 { r: usize },
    /// Stabiliser of a tensor decomposition `V_1 ⊗ V_2`, `2 ≤ d_1 < d_2`.
    C4 { d1: usize, d2: usize },
    /// Stabiliser of an equidimensional tensor decomposition `V_1^{⊗ r}`.
    C7 { t: usize, r: usize },
    /// Conformal stabiliser of a non-degenerate form.
    C8 { form: FormKind },
}

impl SubgroupSpec {
    pub fn class_name(&self) -> &'static str {
        match self {
            SubgroupSpec::C1 { .. } => "C1",
            SubgroupSpec::C2 { .. } => "C2",
            SubgroupSpec::C3 { .. } => "C3",
            SubgroupSpec::C4 { .. } => "C4",
            SubgroupSpec::C7 { .. } => "C7",
            SubgroupSpec::C8 { .. } => "C8",
        }
    }

    pub fn params_string(&self) -> String {
        match self {
            SubgroupSpec::C1 { r } | SubgroupSpec::C2 { r } | SubgroupSpec::C3 { r } => {
                format!("r={r}")
            }
            SubgroupSpec::C4 { d1, d2 } => format!("d1={d1},d2={d2}"),
            SubgroupSpec::C7 { t, r } => format!("t={t},r={r}"),
            SubgroupSpec::C8 { form } => format!("form={}", form.name()),
        }
    }

    /// Check the class-dependent parameter constraints against (d, p).
    pub fn validate(&self, d: usize, p: u64) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSpec(msg));
        if d < 2 {
            return fail("d must be at least 2".to_owned());
        }
        match *self {
            SubgroupSpec::C1 { r } => {
                if r == 0 || r >= d {
                    return fail(format!("C1 needs 0 < r < d, got r={r}, d={d}"));
                }
            }
            SubgroupSpec::C2 { r } => {
                if r < 2 || r > d || d % r != 0 {
                    return fail(format!("C2 needs 1 < r ≤ d with r | d, got r={r}, d={d}"));
                }
            }
            SubgroupSpec::C3 { r } => {
                if r < 2 || r > d || d % r != 0 || !crate::fp::is_prime(r as u64) {
                    return fail(format!("C3 needs prime r | d with 1 < r ≤ d, got r={r}, d={d}"));
                }
                if p.pow(r as u32) > 1_000_000 {
                    return fail(format!("C3 field F_{{{p}^{r}}} exceeds the desk-scale bound"));
                }
            }
            SubgroupSpec::C4 { d1, d2 } => {
                if d1 < 2 || d1 >= d2 || d1 * d2 != d {
                    return fail(format!(
                        "C4 needs 2 ≤ d1 < d2 with d = d1·d2, got d1={d1}, d2={d2}, d={d}"
                    ));
                }
            }
            SubgroupSpec::C7 { t, r } => {
                if t < 2 || r < 2 || t.pow(r as u32) != d {
                    return fail(format!("C7 needs t ≥ 2, r ≥ 2, d = t^r, got t={t}, r={r}, d={d}"));
                }
            }
            SubgroupSpec::C8 { form } => match form {
                FormKind::Symplectic | FormKind::OrthogonalPlus | FormKind::OrthogonalMinus => {
                    if d % 2 != 0 {
                        return fail(format!("{} form needs even d, got d={d}", form.name()));
                    }
                }
                FormKind::OrthogonalOdd => {
                    if d % 2 == 0 {
                        return fail(format!("orthogonal-odd form needs odd d, got d={d}"));
                    }
                }
            },
        }
        Ok(())
    }
}

/// A non-degenerate bilinear form given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct FormSpec {
    pub kind: FormKind,
    pub gram: FpMatrix,
}

impl FormSpec {
    pub fn evaluate(&self, u: &[u64], v: &[u64]) -> Result<u64> {
        let f = self.gram.field();
        let gv = self.gram.apply_to_row(u)?;
        if v.len() != gv.len() {
            return Err(Error::DimensionMismatch { expected: gv.len(), found: v.len() });
        }
        Ok(v.iter().zip(gv.iter()).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
    }
}

/// The geometric object a generator set stabilises.
#[derive(Clone, Debug)]
pub enum StabilizedObject {
    /// rref basis of the distinguished subspace U.
    Subspace { basis: FpMatrix },
    /// Equidimensional decomposition into r consecutive coordinate blocks.
    BlockDecomposition { r: usize, block_dim: usize },
    /// Extension-field structure, embedded via the regular representation
    /// block-diagonally on `E^t`.
    FieldStructure { ext: ExtFieldData, t: usize },
    /// Tensor decomposition with unequal factor dimensions.
    TensorDecomposition { d1: usize, d2: usize },
    /// Equidimensional tensor decomposition with r slots of dimension t.
    TensorInduced { t: usize, r: usize },
    /// A non-degenerate form, preserved up to similitude.
    Form(FormSpec),
}

/// Generators of a maximal subgroup together with their stabilised object;
/// for C8 the similitude character of each generator is recorded.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub spec: SubgroupSpec,
    pub d: usize,
    pub gens: Vec<FpMatrix>,
    pub object: StabilizedObject,
    pub similitude_characters: Option<Vec<u64>>,
}

/// Standard two-generator sets for `GL(d, p)` and `SL(d, p)`:
/// `diag(ω, 1, …, 1)` (resp. `diag(ω, ω⁻¹, 1, …, 1)`) together with the
/// almost-cycle with first row `(−1, 0, …, 0, 1)` and subdiagonal `−1`.
pub fn gl_sl_generators(field: PrimeField, d: usize) -> Result<([FpMatrix; 2], [FpMatrix; 2])> {
    if d < 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: d });
    }
    let omega = field.primitive_root();
    let mut gl1 = FpMatrix::identity(field, d);
    gl1.set(0, 0, omega);
    let mut sl1 = FpMatrix::identity(field, d);
    sl1.set(0, 0, omega);
    sl1.set(1, 1, field.inv(omega));
    let mut cycle = FpMatrix::zeros(field, d, d);
    cycle.set(0, 0, field.neg(1));
    cycle.set(0, d - 1, 1);
    for i in 1..d {
        cycle.set(i, i - 1, field.neg(1));
    }
    Ok(([gl1, cycle.clone()], [sl1, cycle]))
}

/// Identity matrix with `small` written at diagonal offset `at`.
fn embed_block(field: PrimeField, d: usize, at: usize, small: &FpMatrix) -> FpMatrix {
    let mut out = FpMatrix::identity(field, d);
    for i in 0..small.rows() {
        for j in 0..small.cols() {
            out.set(at + i, at + j, small.get(i, j));
        }
    }
    out
}

/// Generators of GL on a block of size k, as d×d matrices at offset `at`
/// (a single scalar ω when k = 1).
fn block_gl_generators(field: PrimeField, d: usize, at: usize, k: usize) -> Result<Vec<FpMatrix>> {
    if k == 1 {
        let mut m = FpMatrix::identity(field, d);
        m.set(at, at, field.primitive_root());
        return Ok(vec![m]);
    }
    let (gl, _) = gl_sl_generators(field, k)?;
    Ok(gl.iter().map(|g| embed_block(field, d, at, g)).collect())
}

/// The standard Gram matrix for each form kind: antidiagonal ±1 with the
/// central block of the minus/odd types twisted by the least non-residue.
pub fn standard_form(kind: FormKind, d: usize, field: PrimeField) -> Result<FormSpec> {
    let even = d % 2 == 0;
    match kind {
        FormKind::Symplectic | FormKind::OrthogonalPlus | FormKind::OrthogonalMinus if !even => {
            return Err(Error::InvalidSpec(format!("{} form needs even d", kind.name())));
        }
        FormKind::OrthogonalOdd if even => {
            return Err(Error::InvalidSpec("orthogonal-odd form needs odd d".to_owned()));
        }
        _ => {}
    }
    let mut gram = FpMatrix::zeros(field, d, d);
    let nu = field.least_non_residue();
    match kind {
        FormKind::Symplectic => {
            let k = d / 2;
            for i in 0..d {
                gram.set(i, d - 1 - i, if i < k { 1 } else { field.neg(1) });
            }
        }
        FormKind::OrthogonalPlus => {
            for i in 0..d {
                gram.set(i, d - 1 - i, 1);
            }
        }
        FormKind::OrthogonalMinus => {
            let k = d / 2;
            for i in 0..d {
                if i == k - 1 || i == k {
                    continue;
                }
                gram.set(i, d - 1 - i, 1);
            }
            gram.set(k - 1, k - 1, 1);
            gram.set(k, k, field.neg(nu));
        }
        FormKind::OrthogonalOdd => {
            let k = d / 2;
            for i in 0..d {
                if i == k {
                    continue;
                }
                gram.set(i, d - 1 - i, 1);
            }
            gram.set(k, k, nu);
        }
    }
    debug_assert!(gram.determinant().unwrap_or(0) != 0);
    Ok(FormSpec { kind, gram })
}

/// The similitude character of `g` for the form: the δ with
/// `g·gram·gᵀ = δ·gram`, or `None` if `g` is not a similitude.
pub fn similitude_character(g: &FpMatrix, form: &FormSpec) -> Option<u64> {
    let f = g.field();
    let a = g.mul(&form.gram).ok()?.mul(&g.transpose()).ok()?;
    let mut delta = None;
    for i in 0..form.gram.rows() {
        for j in 0..form.gram.cols() {
            let expect = form.gram.get(i, j);
            let got = a.get(i, j);
            if expect == 0 {
                if got != 0 {
                    return None;
                }
                continue;
            }
            let candidate = f.div(got, expect);
            match delta {
                None => delta = Some(candidate),
                Some(d0) if d0 != candidate => return None,
                _ => {}
            }
        }
    }
    delta.filter(|&d0| d0 != 0)
}

fn symplectic_transvection(form: &FormSpec, v: &[u64]) -> Result<FpMatrix> {
    // x ↦ x + β(x, v)·v
    let f = form.gram.field();
    let d = form.gram.rows();
    let mut t = FpMatrix::identity(f, d);
    for i in 0..d {
        let mut e = vec![0u64; d];
        e[i] = 1;
        let c = form.evaluate(&e, v)?;
        if c == 0 {
            continue;
        }
        for (j, &vj) in v.iter().enumerate() {
            t.set(i, j, f.add(t.get(i, j), f.mul(c, vj)));
        }
    }
    Ok(t)
}

fn reflection(form: &FormSpec, v: &[u64]) -> Result<FpMatrix> {
    // x ↦ x − 2 β(x, v)/β(v, v) · v, for anisotropic v
    let f = form.gram.field();
    let d = form.gram.rows();
    let q = form.evaluate(v, v)?;
    debug_assert!(q != 0, "reflection vector must be anisotropic");
    let scale = f.div(f.reduce(2), q);
    let mut t = FpMatrix::identity(f, d);
    for i in 0..d {
        let mut e = vec![0u64; d];
        e[i] = 1;
        let c = f.mul(form.evaluate(&e, v)?, scale);
        if c == 0 {
            continue;
        }
        for (j, &vj) in v.iter().enumerate() {
            t.set(i, j, f.sub(t.get(i, j), f.mul(c, vj)));
        }
    }
    Ok(t)
}

/// A similitude with non-square multiplier ω, for even-dimensional forms.
fn proper_similitude(form: &FormSpec, field: PrimeField, d: usize) -> Result<FpMatrix> {
    let omega = field.primitive_root();
    let k = d / 2;
    match form.kind {
        FormKind::Symplectic | FormKind::OrthogonalPlus => {
            // scale one half of each hyperbolic pair
            let mut s = FpMatrix::identity(field, d);
            for i in k..d {
                s.set(i, i, omega);
            }
            Ok(s)
        }
        FormKind::OrthogonalMinus => {
            let mut s = FpMatrix::identity(field, d);
            for i in 0..d {
                if i == k - 1 || i == k {
                    continue;
                }
                if i >= k {
                    s.set(i, i, omega);
                }
            }
            // central anisotropic 2×2 block: brute-force the least matrix
            // with S_c·C·S_cᵀ = ω·C
            let f = field;
            let p = f.p();
            let c00 = form.gram.get(k - 1, k - 1);
            let c11 = form.gram.get(k, k);
            for flat in 0..p.pow(4) {
                let a = flat % p;
                let b = (flat / p) % p;
                let c = (flat / (p * p)) % p;
                let e = (flat / (p * p * p)) % p;
                // rows (a, b), (c, e): need a²c00 + b²c11 = ω c00,
                // c²c00 + e²c11 = ω c11, a c c00 + b e c11 = 0
                let lhs00 = f.add(f.mul(f.mul(a, a), c00), f.mul(f.mul(b, b), c11));
                let lhs11 = f.add(f.mul(f.mul(c, c), c00), f.mul(f.mul(e, e), c11));
                let lhs01 = f.add(f.mul(f.mul(a, c), c00), f.mul(f.mul(b, e), c11));
                if lhs00 == f.mul(omega, c00) && lhs11 == f.mul(omega, c11) && lhs01 == 0 {
                    s.set(k - 1, k - 1, a);
                    s.set(k - 1, k, b);
                    s.set(k, k - 1, c);
                    s.set(k, k, e);
                    return Ok(s);
                }
            }
            Err(Error::InvalidSpec("no ω-similitude found for the minus-type form".to_owned()))
        }
        FormKind::OrthogonalOdd => {
            // odd dimension forces square multipliers; the ω-scalar already
            // realises every attainable character
            Err(Error::InvalidSpec("odd orthogonal forms have no non-square similitude".to_owned()))
        }
    }
}

/// Deterministic anisotropic vectors for reflection generation: scan the
/// fixed pattern list, keep the first `want`.
fn anisotropic_vectors(form: &FormSpec, d: usize, want: usize) -> Vec<Vec<u64>> {
    let f = form.gram.field();
    let mut out = Vec::new();
    let push_if = |v: Vec<u64>, out: &mut Vec<Vec<u64>>| {
        if out.len() < want && form.evaluate(&v, &v).map(|q| q != 0).unwrap_or(false) {
            out.push(v);
        }
    };
    for i in 0..d {
        let mut v = vec![0u64; d];
        v[i] = 1;
        push_if(v, &mut out);
    }
    for c in 1..f.p() {
        for i in 0..d {
            for j in 0..d {
                if i == j {
                    continue;
                }
                let mut v = vec![0u64; d];
                v[i] = 1;
                v[j] = c;
                push_if(v, &mut out);
            }
        }
        if out.len() >= want {
            break;
        }
    }
    out
}

/// Generators for the maximal subgroup described by `spec` inside
/// `GL(d, p)`, with the stabilised geometric object attached.
pub fn build_generators(spec: SubgroupSpec, d: usize, field: PrimeField) -> Result<GeneratorSet> {
    spec.validate(d, field.p())?;
    match spec {
        SubgroupSpec::C1 { r } => {
            let mut gens = block_gl_generators(field, d, 0, r)?;
            gens.extend(block_gl_generators(field, d, r, d - r)?);
            // one full lower-left elementary block
            let mut u = FpMatrix::identity(field, d);
            u.set(r, 0, 1);
            gens.push(u);
            let mut ub = FpMatrix::zeros(field, r, d);
            for i in 0..r {
                ub.set(i, i, 1);
            }
            Ok(GeneratorSet {
                spec,
                d,
                gens,
                object: StabilizedObject::Subspace { basis: ub },
                similitude_characters: None,
            })
        }
        SubgroupSpec::C2 { r } => {
            let t = d / r;
            let mut gens = block_gl_generators(field, d, 0, t)?;
            // block r-cycle
            let mut cyc = FpMatrix::zeros(field, d, d);
            for i in 0..r {
                for j in 0..t {
                    cyc.set(i * t + j, ((i + 1) % r) * t + j, 1);
                }
            }
            gens.push(cyc);
            if r > 2 {
                let mut swap = FpMatrix::identity(field, d);
                for j in 0..t {
                    swap.set(j, j, 0);
                    swap.set(t + j, t + j, 0);
                    swap.set(j, t + j, 1);
                    swap.set(t + j, j, 1);
                }
                gens.push(swap);
            }
            Ok(GeneratorSet {
                spec,
                d,
                gens,
                object: StabilizedObject::BlockDecomposition { r, block_dim: t },
                similitude_characters: None,
            })
        }
        SubgroupSpec::C3 { r } => {
            let t = d / r;
            let ext = build_ext_field(field, r as u64)?;
            let mut gens = Vec::new();
            if t == 1 {
                gens.push(ext.mult_matrix(ext.primitive_elt()));
            } else {
                // GL(t, E) pair embedded through the regular representation
                let zeta = ext.primitive_elt().to_vec();
                let one = ext.one();
                let mut diag: Vec<Vec<Vec<u64>>> =
                    vec![vec![ext.zero(); t]; t];
                for (i, row) in diag.iter_mut().enumerate() {
                    row[i] = if i == 0 { zeta.clone() } else { one.clone() };
                }
                gens.push(embed_ext_matrix(&ext, t, &diag));
                let neg_one = ext.neg(&ext.one());
                let mut cyc: Vec<Vec<Vec<u64>>> = vec![vec![ext.zero(); t]; t];
                cyc[0][0] = neg_one.clone();
                cyc[0][t - 1] = one.clone();
                for i in 1..t {
                    cyc[i][i - 1] = neg_one.clone();
                }
                gens.push(embed_ext_matrix(&ext, t, &cyc));
            }
            // blockwise field automorphism
            let mut frob = FpMatrix::zeros(field, d, d);
            let rr = r;
            for b in 0..t {
                for i in 0..rr {
                    for j in 0..rr {
                        frob.set(b * rr + i, b * rr + j, ext.frobenius().get(i, j));
                    }
                }
            }
            gens.push(frob);
            Ok(GeneratorSet {
                spec,
                d,
                gens,
                object: StabilizedObject::FieldStructure { ext, t },
                similitude_characters: None,
            })
        }
        SubgroupSpec::C4 { d1, d2 } => {
            let (gl1, _) = gl_sl_generators(field, d1)?;
            let (gl2, _) = gl_sl_generators(field, d2)?;
            let id1 = FpMatrix::identity(field, d1);
            let id2 = FpMatrix::identity(field, d2);
            let mut gens = Vec::new();
            for g in &gl1 {
                gens.push(g.kronecker(&id2));
            }
            for h in &gl2 {
                gens.push(id1.kronecker(&h.clone()));
            }
            Ok(GeneratorSet {
                spec,
                d,
                gens,
                object: StabilizedObject::TensorDecomposition { d1, d2 },
                similitude_characters: None,
            })
        }
        SubgroupSpec::C7 { t, r } => {
            let (glt, _) = gl_sl_generators(field, t)?;
            let mut gens = Vec::new();
            for slot in 0..r {
                for g in &glt {
                    let mut m = FpMatrix::identity(field, 1);
                    for s in 0..r {
                        let factor =
                            if s == slot { g.clone() } else { FpMatrix::identity(field, t) };
                        m = m.kronecker(&factor);
                    }
                    gens.push(m);
                }
            }
            gens.push(slot_permutation(field, t, r, &cycle_perm(r)));
            if r > 2 {
                let mut swap: Vec<usize> = (0..r).collect();
                swap.swap(0, 1);
                gens.push(slot_permutation(field, t, r, &swap));
            }
            Ok(GeneratorSet {
                spec,
                d,
                gens,
                object: StabilizedObject::TensorInduced { t, r },
                similitude_characters: None,
            })
        }
        SubgroupSpec::C8 { form: kind } => {
            let form = standard_form(kind, d, field)?;
            let mut gens = Vec::new();
            if kind == FormKind::Symplectic {
                // transvections over the deterministic list plus seeded extras
                let mut vectors: Vec<Vec<u64>> = Vec::new();
                for i in 0..d {
                    let mut v = vec![0u64; d];
                    v[i] = 1;
                    vectors.push(v);
                }
                let mut v = vec![0u64; d];
                v[0] = 1;
                v[1] = 1;
                vectors.push(v);
                let mut v = vec![0u64; d];
                v[0] = 1;
                v[d - 1] = 1;
                vectors.push(v);
                let mut rng = SeededRng::new(0x5f0c);
                for _ in 0..4 {
                    vectors.push(rng.nonzero_fp_vec(field.p(), d));
                }
                for v in &vectors {
                    gens.push(symplectic_transvection(&form, v)?);
                }
            } else {
                let mut vectors = anisotropic_vectors(&form, d, d + 2);
                let mut rng = SeededRng::new(0x5f0c);
                let mut extras = 0;
                while extras < 4 {
                    let v = rng.nonzero_fp_vec(field.p(), d);
                    if form.evaluate(&v, &v)? != 0 {
                        vectors.push(v);
                        extras += 1;
                    }
                }
                for v in &vectors {
                    gens.push(reflection(&form, v)?);
                }
            }
            // scalars, and a non-square-multiplier similitude when one exists
            let omega = field.primitive_root();
            gens.push(FpMatrix::identity(field, d).scale(omega));
            if d % 2 == 0 {
                gens.push(proper_similitude(&form, field, d)?);
            }
            let mut characters = Vec::with_capacity(gens.len());
            for g in &gens {
                let delta = similitude_character(g, &form)
                    .ok_or_else(|| Error::InvalidSpec("generator is not a similitude".to_owned()))?;
                characters.push(delta);
            }
            Ok(GeneratorSet {
                spec,
                d,
                gens,
                object: StabilizedObject::Form(form),
                similitude_characters: Some(characters),
            })
        }
    }
}

fn cycle_perm(r: usize) -> Vec<usize> {
    (0..r).map(|s| (s + 1) % r).collect()
}

/// The matrix permuting tensor slots by σ: slot σ(s) of the image carries
/// slot s of the argument.
fn slot_permutation(field: PrimeField, t: usize, r: usize, sigma: &[usize]) -> FpMatrix {
    let ts = crate::lie::TensorSpace { d: t, n: r };
    let dim = ts.dim();
    let mut m = FpMatrix::zeros(field, dim, dim);
    for flat in 0..dim {
        let tuple = ts.unflatten(flat);
        let mut image = vec![0usize; r];
        for (s, &is) in tuple.iter().enumerate() {
            image[sigma[s]] = is;
        }
        m.set(flat, ts.flatten(&image), 1);
    }
    m
}

/// Matrix over E (entries as coordinate vectors) → matrix over `F_p` via the
/// regular representation blockwise.
fn embed_ext_matrix(ext: &ExtFieldData, t: usize, entries: &[Vec<Vec<u64>>]) -> FpMatrix {
    let r = ext.r() as usize;
    let field = ext.base();
    let mut out = FpMatrix::zeros(field, t * r, t * r);
    for (i, row) in entries.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            if ext.is_zero(e) {
                continue;
            }
            let block = ext.mult_matrix(e);
            for a in 0..r {
                for b in 0..r {
                    out.set(i * r + a, j * r + b, block.get(a, b));
                }
            }
        }
    }
    out
}

/// The embedded scalar matrices of the extension field: the r basis
/// matrices `blockdiag(mult_table_k, …)`, flattened for span tests.
fn field_scalar_basis(ext: &ExtFieldData, t: usize) -> FpMatrix {
    let r = ext.r() as usize;
    let d = t * r;
    let field = ext.base();
    let mut rows = Vec::with_capacity(r);
    for table in ext.mult_tables() {
        let mut z = FpMatrix::zeros(field, d, d);
        for b in 0..t {
            for i in 0..r {
                for j in 0..r {
                    z.set(b * r + i, b * r + j, table.get(i, j));
                }
            }
        }
        rows.push(z.entries().to_vec());
    }
    FpMatrix::from_rows(field, &rows).expect("equal lengths").row_basis()
}

/// Flattened span of the slot-s matrix algebra `I ⊗ … ⊗ M_t ⊗ … ⊗ I`.
fn slot_matrix_space(field: PrimeField, t: usize, r: usize, slot: usize) -> FpMatrix {
    let mut rows = Vec::with_capacity(t * t);
    for a in 0..t {
        for b in 0..t {
            let mut unit = FpMatrix::zeros(field, t, t);
            unit.set(a, b, 1);
            let mut m = FpMatrix::identity(field, 1);
            for s in 0..r {
                let factor = if s == slot { unit.clone() } else { FpMatrix::identity(field, t) };
                m = m.kronecker(&factor);
            }
            rows.push(m.entries().to_vec());
        }
    }
    FpMatrix::from_rows(field, &rows).expect("equal lengths").row_basis()
}

/// The block permutation induced by `g` on an equidimensional coordinate
/// decomposition, when `g` permutes the blocks.
pub fn block_permutation(g: &FpMatrix, r: usize, block_dim: usize) -> Option<Vec<usize>> {
    let d = g.rows();
    let mut perm = vec![usize::MAX; r];
    for i in 0..r {
        // the image of block i must have support in a single block j
        let mut target = None;
        for row in 0..block_dim {
            let grow = g.row(i * block_dim + row);
            for (col, &x) in grow.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = col / block_dim;
                match target {
                    None => target = Some(j),
                    Some(t0) if t0 != j => return None,
                    _ => {}
                }
            }
        }
        perm[i] = target?;
        let _ = d;
    }
    let mut seen = vec![false; r];
    for &j in &perm {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(perm)
}

/// The slot permutation induced by conjugation by `g` on the slot matrix
/// algebras of a tensor-induced decomposition, if one exists.
pub fn slot_permutation_of(g: &FpMatrix, t: usize, r: usize) -> Option<Vec<usize>> {
    let field = g.field();
    let ginv = g.invert().ok()?;
    let spaces: Vec<FpMatrix> = (0..r).map(|s| slot_matrix_space(field, t, r, s)).collect();
    let mut perm = vec![usize::MAX; r];
    for s in 0..r {
        let mut target = None;
        for row in 0..spaces[s].rows() {
            let z = FpMatrix::from_rows(field, &[spaces[s].row(row).to_vec()]).ok()?;
            // unflatten, conjugate, re-flatten
            let dim = g.rows();
            let mut zm = FpMatrix::zeros(field, dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    zm.set(i, j, z.get(0, i * dim + j));
                }
            }
            let conj = ginv.mul(&zm).ok()?.mul(g).ok()?;
            let flat = conj.entries().to_vec();
            let mut found = None;
            for (cand, space) in spaces.iter().enumerate() {
                if in_row_space(space, &flat).ok()? {
                    found = Some(cand);
                    break;
                }
            }
            match (target, found) {
                (_, None) => return None,
                (None, Some(j)) => target = Some(j),
                (Some(t0), Some(j)) if t0 != j => return None,
                _ => {}
            }
        }
        perm[s] = target?;
    }
    let mut seen = vec![false; r];
    for &j in &perm {
        if seen[j] {
            return None;
        }
        seen[j] = true;
    }
    Some(perm)
}

/// The executable meaning of "g stabilises the object", class by class.
pub fn stabilizes(g: &FpMatrix, object: &StabilizedObject) -> Result<bool> {
    match object {
        StabilizedObject::Subspace { basis } => {
            let mut rows = Vec::with_capacity(basis.rows());
            for i in 0..basis.rows() {
                rows.push(g.apply_to_row(basis.row(i))?);
            }
            let image = FpMatrix::from_rows(g.field(), &rows)?.row_basis();
            Ok(&image == basis)
        }
        StabilizedObject::BlockDecomposition { r, block_dim } => {
            Ok(block_permutation(g, *r, *block_dim).is_some())
        }
        StabilizedObject::FieldStructure { ext, t } => {
            let scalars = field_scalar_basis(ext, *t);
            let ginv = g.invert()?;
            for k in 0..ext.r() as usize {
                let d = g.rows();
                let mut z = FpMatrix::zeros(g.field(), d, d);
                for i in 0..d {
                    for j in 0..d {
                        z.set(i, j, scalars.get(k, i * d + j));
                    }
                }
                let conj = ginv.mul(&z)?.mul(g)?;
                if !in_row_space(&scalars, conj.entries())? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        StabilizedObject::TensorDecomposition { d1, d2 } => {
            // unequal factors cannot swap: conjugation must fix both slot
            // algebras
            let field = g.field();
            let ginv = g.invert()?;
            for (dim_a, left) in [(*d1, true), (*d2, false)] {
                let mut rows = Vec::new();
                for a in 0..dim_a {
                    for b in 0..dim_a {
                        let mut unit = FpMatrix::zeros(field, dim_a, dim_a);
                        unit.set(a, b, 1);
                        let m = if left {
                            unit.kronecker(&FpMatrix::identity(field, *d2))
                        } else {
                            FpMatrix::identity(field, *d1).kronecker(&unit)
                        };
                        rows.push(m.entries().to_vec());
                    }
                }
                let space = FpMatrix::from_rows(field, &rows)?.row_basis();
                for row in 0..space.rows() {
                    let d = g.rows();
                    let mut zm = FpMatrix::zeros(field, d, d);
                    for i in 0..d {
                        for j in 0..d {
                            zm.set(i, j, space.get(row, i * d + j));
                        }
                    }
                    let conj = ginv.mul(&zm)?.mul(g)?;
                    if !in_row_space(&space, conj.entries())? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        StabilizedObject::TensorInduced { t, r } => Ok(slot_permutation_of(g, *t, *r).is_some()),
        StabilizedObject::Form(form) => Ok(similitude_character(g, form).is_some()),
    }
}
