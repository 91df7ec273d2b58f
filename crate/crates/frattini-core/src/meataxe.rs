//! Submodule machinery for matrix group actions over `F_p`: spinning,
//! minimal and maximal submodules, irreducibility decisions with witnesses,
//! smallest-quotient dimensions, and GL-invariance witnesses.
//!
//! Two strategies are used. When the number of canonical lines
//! `(p^dim − 1)/(p − 1)` fits the configured budget, every line is spun —
//! complete and certifying. Beyond that a seeded randomised strategy runs:
//! kernels of irreducible charpoly factors of random enveloping-algebra
//! elements are spun, candidates are refined recursively until irreducible,
//! and the result is flagged non-exhaustive. Irreducibility in the large
//! regime is certified by the standard two-sided kernel-spin criterion
//! (one spin in the module, one in the transpose module, for a
//! multiplicity-one factor).

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::lie::LiePowers;
use crate::matrix::{in_row_space, solve_membership, FpMatrix};
use crate::poly::{charpoly, factor, Poly};
use crate::rng::SeededRng;
use crate::subgroups::gl_sl_generators;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

/// A list of invertible matrices acting on row vectors from the right.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    field: PrimeField,
    dim: usize,
    gens: Vec<FpMatrix>,
}

impl ModuleAction {
    pub fn new(field: PrimeField, gens: Vec<FpMatrix>) -> Result<Self> {
        let dim = gens.first().map_or(0, FpMatrix::rows);
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: g.rows() });
            }
            g.invert()?;
        }
        Ok(ModuleAction { field, dim, gens })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[FpMatrix] {
        &self.gens
    }

    /// The contragredient action (transpose inverses): submodules here are
    /// exactly the annihilators of quotients of the original module.
    pub fn dual(&self) -> Result<ModuleAction> {
        let gens = self
            .gens
            .iter()
            .map(FpMatrix::transpose_inverse)
            .collect::<Result<Vec<_>>>()?;
        ModuleAction::new(self.field, gens)
    }

    /// The transpose action (not a group action, but the right module for
    /// the two-sided irreducibility test).
    fn transpose(&self) -> Result<ModuleAction> {
        ModuleAction::new(self.field, self.gens.iter().map(FpMatrix::transpose).collect())
    }

    /// The action restricted to an invariant submodule, in its basis.
    pub fn restrict(&self, sub: &Submodule) -> Result<ModuleAction> {
        let k = sub.dim();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut m = FpMatrix::zeros(self.field, k, k);
            for i in 0..k {
                let image = g.apply_to_row(sub.basis.row(i))?;
                let coords = solve_membership(&sub.basis, &image)?.ok_or(Error::NotInSubspace)?;
                for (j, &c) in coords.iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            gens.push(m);
        }
        ModuleAction::new(self.field, gens)
    }
}

/// An invariant subspace, stored as its canonical rref row basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Submodule {
    basis: FpMatrix,
}

impl Submodule {
    pub fn from_basis(basis: &FpMatrix) -> Submodule {
        Submodule { basis: basis.row_basis() }
    }

    pub fn zero(field: PrimeField, ambient: usize) -> Submodule {
        Submodule { basis: FpMatrix::zeros(field, 0, ambient) }
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rows() == 0
    }

    pub fn is_full(&self) -> bool {
        self.basis.rows() == self.basis.cols()
    }

    pub fn contains_vector(&self, v: &[u64]) -> Result<bool> {
        in_row_space(&self.basis, v)
    }

    pub fn contains(&self, other: &Submodule) -> Result<bool> {
        for i in 0..other.basis.rows() {
            if !self.contains_vector(other.basis.row(i))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closure invariant: every basis row times every generator lands back
    /// in the row space.
    pub fn is_invariant(&self, action: &ModuleAction) -> Result<bool> {
        for g in action.gens() {
            for i in 0..self.basis.rows() {
                if !self.contains_vector(&g.apply_to_row(self.basis.row(i))?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Flattened canonical key for deterministic ordering and deduping.
    fn key(&self) -> Vec<u64> {
        let mut k = Vec::with_capacity(self.basis.rows() * self.basis.cols() + 1);
        k.push(self.basis.rows() as u64);
        k.extend_from_slice(self.basis.entries());
        k
    }
}

/// Incremental rref accumulator used by the spinning algorithm.
struct RrefAccumulator {
    field: PrimeField,
    cols: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl RrefAccumulator {
    fn new(field: PrimeField, cols: usize) -> Self {
        RrefAccumulator { field, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce and insert; returns the reduced new row if the rank grew.
    fn insert(&mut self, mut v: Vec<u64>) -> Option<Vec<u64>> {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(self.pivots.iter()) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (vj, &rj) in v.iter_mut().zip(row.iter()) {
                *vj = f.sub(*vj, f.mul(c, rj));
            }
        }
        let pc = v.iter().position(|&x| x != 0)?;
        let inv = f.inv(v[pc]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c == 0 {
                continue;
            }
            for (rj, &vj) in row.iter_mut().zip(v.iter()) {
                *rj = f.sub(*rj, f.mul(c, vj));
            }
        }
        let at = self.pivots.iter().position(|&q| q > pc).unwrap_or(self.pivots.len());
        self.rows.insert(at, v.clone());
        self.pivots.insert(at, pc);
        Some(v)
    }

    fn into_submodule(self) -> Submodule {
        let m = FpMatrix::from_rows(self.field, &self.rows)
            .unwrap_or_else(|_| FpMatrix::zeros(self.field, 0, self.cols));
        Submodule { basis: if self.rows.is_empty() { FpMatrix::zeros(self.field, 0, self.cols) } else { m } }
    }
}

/// The smallest invariant subspace containing the seed vectors.
pub fn spin(action: &ModuleAction, seeds: &[Vec<u64>]) -> Result<Submodule> {
    let mut acc = RrefAccumulator::new(action.field(), action.dim());
    let mut work: Vec<Vec<u64>> = Vec::new();
    for s in seeds {
        if s.len() != action.dim() {
            return Err(Error::DimensionMismatch { expected: action.dim(), found: s.len() });
        }
        if let Some(row) = acc.insert(s.clone()) {
            work.push(row);
        }
    }
    while let Some(v) = work.pop() {
        if acc.rank() == action.dim() {
            break;
        }
        for g in action.gens() {
            let image = g.apply_to_row(&v)?;
            if let Some(row) = acc.insert(image) {
                work.push(row);
            }
        }
    }
    Ok(acc.into_submodule())
}

/// Options for the randomised strategies; everything is seeded.
#[derive(Clone, Copy, Debug)]
pub struct MeataxeOptions {
    pub seed: u64,
    /// Randomised rounds for submodule discovery.
    pub rounds: u32,
    /// Maximum number of canonical lines the exhaustive strategy may
    /// enumerate; beyond it the randomised strategy runs.
    pub exhaustive_lines: u64,
}

impl Default for MeataxeOptions {
    fn default() -> Self {
        MeataxeOptions { seed: 0, rounds: 24, exhaustive_lines: 100_000 }
    }
}

impl MeataxeOptions {
    pub fn with_seed(seed: u64) -> Self {
        MeataxeOptions { seed, ..Self::default() }
    }
}

/// Number of canonical lines of `F_p^dim`, if it fits in the budget range.
fn line_count(p: u64, dim: usize) -> Option<u64> {
    let mut count: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..dim {
        count += power;
        power = power.checked_mul(p as u128)?;
        if count > u64::MAX as u128 {
            return None;
        }
    }
    u64::try_from(count).ok()
}

/// Canonical representatives of the lines of `F_p^dim`: first nonzero
/// coordinate equal to 1, enumerated deterministically.
struct LineIter {
    p: u64,
    dim: usize,
    pivot: usize,
    counter: u64,
    tail_count: u64,
}

impl LineIter {
    fn new(p: u64, dim: usize) -> Self {
        let tail_count = if dim >= 1 { p.pow((dim - 1) as u32) } else { 0 };
        LineIter { p, dim, pivot: 0, counter: 0, tail_count }
    }
}

impl Iterator for LineIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        while self.pivot < self.dim {
            if self.counter < self.tail_count {
                let mut v = vec![0u64; self.dim];
                v[self.pivot] = 1;
                let mut c = self.counter;
                for slot in (self.pivot + 1..self.dim).rev() {
                    v[slot] = c % self.p;
                    c /= self.p;
                }
                self.counter += 1;
                return Some(v);
            }
            self.pivot += 1;
            self.counter = 0;
            self.tail_count =
                if self.pivot < self.dim { self.p.pow((self.dim - 1 - self.pivot) as u32) } else { 0 };
        }
        None
    }
}

/// Result of a submodule search, with the strategy that produced it.
#[derive(Clone, Debug)]
pub struct SubmoduleList {
    pub modules: Vec<Submodule>,
    pub exhaustive: bool,
}

/// Outcome of an irreducibility decision. Reducible verdicts always carry
/// an explicit witness submodule.
#[derive(Clone, Debug)]
pub enum Irreducibility {
    Irreducible { exhaustive: bool },
    Reducible { witness: Submodule },
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible { .. })
    }
}

/// A random element of the enveloping algebra: a seeded linear combination
/// of short words in the generators (plus the identity).
fn random_algebra_element(action: &ModuleAction, rng: &mut SeededRng) -> Result<FpMatrix> {
    let f = action.field();
    let p = f.p();
    let dim = action.dim();
    let mut theta = FpMatrix::identity(f, dim).scale(rng.below(p));
    let words = 3 + rng.below(2);
    for _ in 0..words {
        let len = 1 + rng.below(3);
        let mut w = FpMatrix::identity(f, dim);
        for _ in 0..len {
            let g = &action.gens()[rng.below(action.gens().len() as u64) as usize];
            w = w.mul(g)?;
        }
        let c = 1 + rng.below(p - 1);
        theta = theta.add(&w.scale(c))?;
    }
    Ok(theta)
}

/// Kernels of `f(θ)` for the irreducible charpoly factors of θ with degree
/// at most `deg_cap`, returned with their multiplicities.
fn factor_kernels(
    action: &ModuleAction,
    theta: &FpMatrix,
    deg_cap: usize,
    rng: &mut SeededRng,
) -> Result<Vec<(Poly, u32, FpMatrix)>> {
    let cp = charpoly(theta)?;
    let factors = factor(&cp, rng);
    let max_needed = factors
        .iter()
        .map(|(f0, _)| f0.degree())
        .filter(|&d0| d0 <= deg_cap)
        .max()
        .unwrap_or(0);
    if max_needed == 0 {
        return Ok(Vec::new());
    }
    // precompute θ-powers once; each f(θ) is then a linear combination
    let mut powers: Vec<FpMatrix> = Vec::with_capacity(max_needed + 1);
    powers.push(FpMatrix::identity(action.field(), action.dim()));
    for k in 1..=max_needed {
        powers.push(powers[k - 1].mul(theta)?);
    }
    let mut out = Vec::new();
    for (f0, mult) in factors {
        if f0.degree() > deg_cap {
            continue;
        }
        let mut ftheta = FpMatrix::zeros(action.field(), action.dim(), action.dim());
        for (k, &c) in f0.coeffs().iter().enumerate() {
            if c != 0 {
                ftheta = ftheta.add(&powers[k].scale(c))?;
            }
        }
        let kernel = ftheta.nullspace();
        if kernel.rows() > 0 {
            out.push((f0, mult, kernel));
        }
    }
    Ok(out)
}

/// Irreducibility decision with witnesses.
pub fn is_irreducible(action: &ModuleAction, opts: &MeataxeOptions) -> Result<Irreducibility> {
    let dim = action.dim();
    if dim <= 1 {
        return Ok(Irreducibility::Irreducible { exhaustive: true });
    }
    let p = action.field().p();
    if line_count(p, dim).is_some_and(|c| c <= opts.exhaustive_lines) {
        for v in LineIter::new(p, dim) {
            let w = spin(action, &[v])?;
            if !w.is_full() {
                return Ok(Irreducibility::Reducible { witness: w });
            }
        }
        return Ok(Irreducibility::Irreducible { exhaustive: true });
    }
    // two-sided kernel-spin test on a multiplicity-one factor
    let mut rng = SeededRng::new(opts.seed ^ 0x1bb1);
    let transpose = action.transpose()?;
    for round in 0..opts.rounds.max(40) {
        let theta = random_algebra_element(action, &mut rng)?;
        let deg_cap = if round < 8 { 8 } else { dim };
        let kernels = factor_kernels(action, &theta, deg_cap, &mut rng)?;
        for (f0, mult, kernel) in kernels {
            // spin every kernel basis vector looking for a proper submodule
            for i in 0..kernel.rows() {
                let w = spin(action, &[kernel.row(i).to_vec()])?;
                if !w.is_full() && !w.is_zero() {
                    return Ok(Irreducibility::Reducible { witness: w });
                }
            }
            if mult != 1 {
                continue;
            }
            // all module-side spins were full; one transpose-side spin decides
            let mut ftheta_t = FpMatrix::zeros(action.field(), dim, dim);
            let theta_t = theta.transpose();
            let mut pw = FpMatrix::identity(action.field(), dim);
            for (k, &c) in f0.coeffs().iter().enumerate() {
                if k > 0 {
                    pw = pw.mul(&theta_t)?;
                }
                if c != 0 {
                    ftheta_t = ftheta_t.add(&pw.scale(c))?;
                }
            }
            let kernel_t = ftheta_t.nullspace();
            if kernel_t.rows() == 0 {
                continue;
            }
            let wt = spin(&transpose, &[kernel_t.row(0).to_vec()])?;
            if wt.is_full() {
                return Ok(Irreducibility::Irreducible { exhaustive: false });
            }
            // annihilator of the transpose-side submodule is a proper
            // submodule of the original
            let ann = Submodule::from_basis(&wt.basis().transpose().nullspace());
            debug_assert!(ann.is_invariant(action)?);
            return Ok(Irreducibility::Reducible { witness: ann });
        }
    }
    Err(Error::InvalidSpec(
        "irreducibility probe budget exhausted without a multiplicity-one factor".into(),
    ))
}

/// All minimal submodules the strategy can reach. The exhaustive strategy
/// (within the line budget) provably returns all of them.
pub fn minimal_submodules(action: &ModuleAction, opts: &MeataxeOptions) -> Result<SubmoduleList> {
    let dim = action.dim();
    let p = action.field().p();
    if dim == 0 {
        return Ok(SubmoduleList { modules: Vec::new(), exhaustive: true });
    }
    if line_count(p, dim).is_some_and(|c| c <= opts.exhaustive_lines) {
        return exhaustive_minimal(action);
    }
    randomized_minimal(action, opts)
}

fn exhaustive_minimal(action: &ModuleAction) -> Result<SubmoduleList> {
    let p = action.field().p();
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut candidates: Vec<Submodule> = Vec::new();
    for v in LineIter::new(p, action.dim()) {
        let w = spin(action, &[v])?;
        if seen.insert(w.key()) {
            candidates.push(w);
        }
    }
    Ok(SubmoduleList { modules: filter_minimal(candidates)?, exhaustive: true })
}

/// Keep exactly the minimal elements of a candidate list that contains, for
/// every candidate, the spins of all lines inside it (true for the
/// exhaustive sweep and for the refined randomised pool).
fn filter_minimal(mut candidates: Vec<Submodule>) -> Result<Vec<Submodule>> {
    candidates.sort_by_key(|a| (a.dim(), a.key()));
    let mut minimal: Vec<Submodule> = Vec::new();
    'outer: for cand in candidates {
        if cand.is_zero() {
            continue;
        }
        for m in &minimal {
            if cand.contains(m)? {
                continue 'outer;
            }
        }
        minimal.push(cand);
    }
    Ok(minimal)
}

fn randomized_minimal(action: &ModuleAction, opts: &MeataxeOptions) -> Result<SubmoduleList> {
    let mut rng = SeededRng::new(opts.seed ^ 0x5eed);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut pool: Vec<Submodule> = Vec::new();
    let mut stale_rounds = 0u32;
    for round in 0..opts.rounds {
        // once several consecutive rounds stop discovering anything new,
        // further rounds are very unlikely to help
        if stale_rounds >= 8 && !pool.is_empty() {
            break;
        }
        let theta = random_algebra_element(action, &mut rng)?;
        let deg_cap = if round < opts.rounds / 2 { 8 } else { 16 };
        let mut grew = false;
        for (_f, _mult, kernel) in factor_kernels(action, &theta, deg_cap, &mut rng)? {
            for i in 0..kernel.rows() {
                let w = spin(action, &[kernel.row(i).to_vec()])?;
                if !w.is_zero() && !w.is_full() && seen.insert(w.key()) {
                    pool.push(w);
                    grew = true;
                }
            }
        }
        stale_rounds = if grew { 0 } else { stale_rounds + 1 };
    }
    // nothing discovered: either the module is irreducible (its unique
    // minimal submodule is the whole space) or the rounds whiffed and the
    // irreducibility test supplies a proper witness to refine
    if pool.is_empty() {
        match is_irreducible(action, opts)? {
            Irreducibility::Irreducible { .. } => {
                return Ok(SubmoduleList {
                    modules: vec![Submodule::from_basis(&FpMatrix::identity(
                        action.field(),
                        action.dim(),
                    ))],
                    exhaustive: false,
                });
            }
            Irreducibility::Reducible { witness } => pool.push(witness),
        }
    }
    // refine every candidate down to minimal submodules by recursion into
    // restrictions; dimensions strictly decrease, so this terminates
    let mut minimal: Vec<Submodule> = Vec::new();
    let mut mseen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut work = pool;
    while let Some(cand) = work.pop() {
        let restricted = action.restrict(&cand)?;
        let sub_opts = MeataxeOptions { seed: opts.seed ^ cand.dim() as u64, ..*opts };
        match is_irreducible(&restricted, &sub_opts)? {
            Irreducibility::Irreducible { .. } => {
                if mseen.insert(cand.key()) {
                    minimal.push(cand);
                }
            }
            Irreducibility::Reducible { witness } => {
                let ambient = lift(&witness, &cand)?;
                if seen.insert(ambient.key()) {
                    work.push(ambient);
                }
            }
        }
    }
    // completeness sweep inside the sum of what was found, to pick up whole
    // isotypic families (a module X ⊕ X has p + 1 minimal submodules, not
    // two); the sweep has its own fixed budget since it is internal to the
    // randomised strategy
    const SWEEP_LINE_BUDGET: u64 = 200_000;
    let socle_sum = sum_of(action.field(), action.dim(), &minimal);
    if socle_sum.dim() > 0
        && line_count(action.field().p(), socle_sum.dim()).is_some_and(|c| c <= SWEEP_LINE_BUDGET)
    {
        let restricted = action.restrict(&socle_sum)?;
        let inner = exhaustive_minimal(&restricted)?;
        minimal.clear();
        for w in inner.modules {
            minimal.push(lift(&w, &socle_sum)?);
        }
    }
    let minimal = filter_minimal(minimal)?;
    Ok(SubmoduleList { modules: minimal, exhaustive: false })
}

/// Submodule of a restricted action, lifted back to ambient coordinates.
fn lift(inner: &Submodule, outer: &Submodule) -> Result<Submodule> {
    let mut rows = Vec::with_capacity(inner.dim());
    for i in 0..inner.dim() {
        rows.push(outer.basis().apply_to_row(inner.basis().row(i))?);
    }
    let m = FpMatrix::from_rows(outer.basis().field(), &rows)?;
    Ok(Submodule::from_basis(&m))
}

fn sum_of(field: PrimeField, ambient: usize, parts: &[Submodule]) -> Submodule {
    let mut acc = RrefAccumulator::new(field, ambient);
    for part in parts {
        for i in 0..part.dim() {
            acc.insert(part.basis().row(i).to_vec());
        }
    }
    acc.into_submodule()
}

/// Maximal submodules via the dual-module trick: they are the annihilators
/// of the minimal submodules of the contragredient action. Two structural
/// checks run on every call: the annihilator really is invariant, and
/// annihilating again recovers the dual minimal submodule.
pub fn maximal_submodules(action: &ModuleAction, opts: &MeataxeOptions) -> Result<SubmoduleList> {
    let dual = action.dual()?;
    let minimal_dual = minimal_submodules(&dual, opts)?;
    let mut modules = Vec::with_capacity(minimal_dual.modules.len());
    for w in &minimal_dual.modules {
        let ann = Submodule::from_basis(&w.basis().transpose().nullspace());
        if !ann.is_invariant(action)? {
            return Err(Error::NotInSubspace);
        }
        let back = Submodule::from_basis(&ann.basis().transpose().nullspace());
        if back.dim() != w.dim() || !back.contains(w)? {
            return Err(Error::NotInSubspace);
        }
        modules.push(ann);
    }
    modules.sort_by(|a, b| {
        let ca = a.ambient_dim() - a.dim();
        let cb = b.ambient_dim() - b.dim();
        (ca, a.key()).cmp(&(cb, b.key()))
    });
    Ok(SubmoduleList { modules, exhaustive: minimal_dual.exhaustive })
}

/// Smallest quotient-module dimension and a maximal submodule realising it.
pub fn smallest_quotient_dim(
    action: &ModuleAction,
    opts: &MeataxeOptions,
) -> Result<(u64, Submodule, bool)> {
    let maximal = maximal_submodules(action, opts)?;
    let best = maximal
        .modules
        .first()
        .cloned()
        .ok_or_else(|| Error::InvalidSpec("module has no maximal submodule".into()))?;
    let codim = (action.dim() - best.dim()) as u64;
    Ok((codim, best, maximal.exhaustive))
}

/// Check the standard GL and SL generator pairs against stabilisation of a
/// submodule of `L^n V`; `None` means invariant under all four, otherwise
/// the first non-stabilising matrix is the witness.
pub fn gl_invariance_witness(
    m: &Submodule,
    powers: &LiePowers,
    n: usize,
) -> Result<Option<FpMatrix>> {
    if m.is_zero() || m.is_full() {
        return Ok(None);
    }
    let (gl, sl) = gl_sl_generators(powers.field(), powers.d())?;
    for g in gl.iter().chain(sl.iter()) {
        let induced = powers.induced_action(g, n)?;
        for i in 0..m.dim() {
            let image = induced.apply_to_row(m.basis().row(i))?;
            if !m.contains_vector(&image)? {
                return Ok(Some(g.clone()));
            }
        }
    }
    Ok(None)
}

/// The first standard SL generator that moves `m`, for certificates.
pub fn sl_witness(m: &Submodule, powers: &LiePowers, n: usize) -> Result<Option<FpMatrix>> {
    let (_, sl) = gl_sl_generators(powers.field(), powers.d())?;
    for g in sl.iter() {
        let induced = powers.induced_action(g, n)?;
        for i in 0..m.dim() {
            let image = induced.apply_to_row(m.basis().row(i))?;
            if !m.contains_vector(&image)? {
                return Ok(Some(g.clone()));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    fn action(gens: &[Vec<Vec<u64>>]) -> ModuleAction {
        let mats: Vec<FpMatrix> =
            gens.iter().map(|g| FpMatrix::from_rows(f5(), g).unwrap()).collect();
        ModuleAction::new(f5(), mats).unwrap()
    }

    #[test]
    fn spin_basics() {
        // spin of the zero vector is the zero submodule
        let a = action(&[vec![vec![1, 1], vec![0, 1]]]);
        let z = spin(&a, &[vec![0, 0]]).unwrap();
        assert!(z.is_zero());
        // with identity generators the spin of v is its line
        let id = action(&[vec![vec![1, 0], vec![0, 1]]]);
        let w = spin(&id, &[vec![2, 3]]).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.contains_vector(&[2, 3]).unwrap());
    }

    #[test]
    fn line_iterator_counts() {
        assert_eq!(LineIter::new(5, 2).count(), 6);
        assert_eq!(LineIter::new(5, 3).count(), 31);
        assert_eq!(line_count(5, 2), Some(6));
        assert_eq!(line_count(5, 8), Some(97656));
    }

    #[test]
    fn trivial_action_has_all_lines_maximal() {
        let id = action(&[vec![vec![1, 0], vec![0, 1]]]);
        let opts = MeataxeOptions::default();
        let maximal = maximal_submodules(&id, &opts).unwrap();
        assert_eq!(maximal.modules.len(), 6); // p + 1 lines
        assert!(maximal.exhaustive);
        let minimal = minimal_submodules(&id, &opts).unwrap();
        assert_eq!(minimal.modules.len(), 6);
    }

    #[test]
    fn block_diagonal_action_decomposes() {
        // two inequivalent blocks: x2 on coordinate 0, x3 on coordinate 1
        let a = action(&[vec![vec![2, 0], vec![0, 3]]]);
        let opts = MeataxeOptions::default();
        let minimal = minimal_submodules(&a, &opts).unwrap();
        assert_eq!(minimal.modules.len(), 2);
        assert!(minimal.modules.iter().all(|m| m.dim() == 1));
        match is_irreducible(&a, &opts).unwrap() {
            Irreducibility::Reducible { witness } => assert_eq!(witness.dim(), 1),
            _ => panic!("visibly reducible"),
        }
    }

    #[test]
    fn rotationlike_action_is_irreducible() {
        // companion matrix of x² + 2 (irreducible mod 5)
        let a = action(&[vec![vec![0, 1], vec![3, 0]]]);
        let opts = MeataxeOptions::default();
        assert!(is_irreducible(&a, &opts).unwrap().is_irreducible());
        let minimal = minimal_submodules(&a, &opts).unwrap();
        assert_eq!(minimal.modules.len(), 1);
        assert!(minimal.modules[0].is_full());
    }

    #[test]
    fn triangular_action_has_unique_chain() {
        // strictly upper-triangular unipotent: unique minimal span(e0)?
        // e1·g = e0 + e1, e0·g = e0: invariant subspaces are 0 ⊂ ⟨e0⟩ ⊂ all
        let a = action(&[vec![vec![1, 0], vec![1, 1]]]);
        let opts = MeataxeOptions::default();
        let minimal = minimal_submodules(&a, &opts).unwrap();
        assert_eq!(minimal.modules.len(), 1);
        assert_eq!(minimal.modules[0].dim(), 1);
        assert!(minimal.modules[0].contains_vector(&[1, 0]).unwrap());
        let maximal = maximal_submodules(&a, &opts).unwrap();
        assert_eq!(maximal.modules.len(), 1);
        assert_eq!(maximal.modules[0].dim(), 1);
        let (q, m, _) = smallest_quotient_dim(&a, &opts).unwrap();
        assert_eq!(q, 1);
        assert_eq!(m.dim(), 1);
    }

    #[test]
    fn restriction_roundtrip() {
        let a = action(&[vec![vec![1, 0, 0], vec![2, 1, 0], vec![0, 0, 3]]]);
        let sub = spin(&a, &[vec![0, 0, 1]]).unwrap();
        assert_eq!(sub.dim(), 1);
        let r = a.restrict(&sub).unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.gens()[0].get(0, 0), 3);
    }
}
