//! Brute-force group-theoretic oracle: fully enumerate two of the
//! constructed groups and recompute order, exponent, the lower central
//! series (hence the nilpotency class) and the Frattini quotient directly
//! from the multiplication table, independently of every closed formula
//! used by the pipeline.

use std::collections::BTreeSet;

use frattini_core::gamma::{GammaContext, GammaElement};
use frattini_core::meataxe::MeataxeOptions;
use frattini_core::pipeline::construct_group;
use frattini_core::subgroups::{FormKind, SubgroupSpec};
use frattini_core::PrimeField;

fn key(e: &GammaElement) -> Vec<u64> {
    e.coords().iter().flat_map(|c| c.iter().copied()).collect()
}

/// All elements of a (small) quotient context, by enumerating raw
/// coordinates and canonicalising.
fn enumerate(ctx: &GammaContext) -> Vec<GammaElement> {
    let p = ctx.field().p();
    let dims: Vec<usize> = (1..=ctx.class_bound()).map(|i| ctx.coord_dim(i)).collect();
    let total: usize = dims.iter().sum();
    let count = p.pow(total as u32);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for flat in 0..count {
        let mut v = flat;
        let mut coords = Vec::with_capacity(dims.len());
        for &dim in &dims {
            let mut c = Vec::with_capacity(dim);
            for _ in 0..dim {
                c.push(v % p);
                v /= p;
            }
            coords.push(c);
        }
        let e = ctx.element(&coords).unwrap();
        if seen.insert(key(&e)) {
            out.push(e);
        }
    }
    out
}

/// Subgroup generated by a set, closed under multiplication (finite
/// p-group, so inverses come for free).
fn closure(ctx: &GammaContext, gens: &[GammaElement]) -> BTreeSet<Vec<u64>> {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    seen.insert(key(&ctx.identity()));
    let mut work: Vec<GammaElement> = vec![ctx.identity()];
    while let Some(x) = work.pop() {
        for g in gens {
            let y = ctx.multiply(&x, g).unwrap();
            if seen.insert(key(&y)) {
                work.push(y);
            }
        }
    }
    seen
}

/// One step of the lower central series: the subgroup generated by the
/// commutators [x, g] for x in the previous term and g in the group.
fn commutator_subgroup(
    ctx: &GammaContext,
    previous: &[GammaElement],
    group: &[GammaElement],
) -> Vec<GammaElement> {
    let mut gens = Vec::new();
    let mut seen = BTreeSet::new();
    for x in previous {
        for g in group {
            let c = ctx.commutator(&[x.clone(), g.clone()]).unwrap();
            if !c.is_identity() && seen.insert(key(&c)) {
                gens.push(c);
            }
        }
    }
    if gens.is_empty() {
        return Vec::new();
    }
    let set = closure(ctx, &gens);
    let lookup: Vec<GammaElement> = {
        // reconstruct elements for the next round by filtering the group
        group.iter().filter(|e| set.contains(&key(e))).cloned().collect()
    };
    lookup
}

fn enumerate_and_check(ctx: &GammaContext, expected_class: u32) {
    let p = ctx.field().p();
    let elements = enumerate(ctx);
    // order p^m
    assert_eq!(elements.len() as u64, p.pow(ctx.order_exponent() as u32));
    // exponent p, elementwise
    for e in &elements {
        assert!(ctx.power(e, p as i64).unwrap().is_identity());
    }
    // lower central series by brute force
    let mut term: Vec<GammaElement> = elements.clone();
    let mut class = 0u32;
    loop {
        term = commutator_subgroup(ctx, &term, &elements);
        if term.is_empty() {
            break;
        }
        class += 1;
        assert!(class <= 8, "series must terminate");
    }
    // class = length of the series below the whole group, plus one for G itself
    assert_eq!(class + 1, expected_class);
    // the Frattini quotient of an exponent-p group is G/[G,G]; its order is
    // p^d, matching the d-generator claim
    let derived = commutator_subgroup(ctx, &elements, &elements);
    let derived_order = if derived.is_empty() { 1 } else { derived.len() };
    assert_eq!(
        elements.len() / derived_order,
        p.pow(ctx.d() as u32) as usize,
        "Frattini quotient has order p^d"
    );
}

#[test]
fn enumerated_series_for_the_class_three_subspace_case() {
    // C1 at (d, r) = (2, 1): |G| = 5^4 = 625 elements, class 3
    let c = construct_group(
        SubgroupSpec::C1 { r: 1 },
        2,
        PrimeField::new(5).unwrap(),
        17,
        &MeataxeOptions::with_seed(17),
    )
    .unwrap();
    assert_eq!(c.report.order_exponent, 4);
    enumerate_and_check(&c.context, 3);
}

#[test]
fn enumerated_series_for_the_symplectic_case() {
    // C8 symplectic at d = 4: |G| = 5^5 = 3125 elements, class 2
    let c = construct_group(
        SubgroupSpec::C8 { form: FormKind::Symplectic },
        4,
        PrimeField::new(5).unwrap(),
        18,
        &MeataxeOptions::with_seed(18),
    )
    .unwrap();
    assert_eq!(c.report.order_exponent, 5);
    enumerate_and_check(&c.context, 2);
}
