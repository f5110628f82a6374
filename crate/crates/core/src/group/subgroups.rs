use super::{Perm, PermGroup, SubgroupHandle};
use crate::arith;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum StabilizerTarget {
    Element(Perm),
    Subgroup(PermGroup),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StabilizerKind {
    NormalizerOfSubgroup,
    CentralizerOfElement,
    CentralizerOfSubgroup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Characteristic {
    Derived,
    Center,
    /// Frattini subgroup of a `p`-group.
    FrattiniP(u64),
    /// Largest normal subgroup of order prime to `p`.
    OPPrime(u64),
    /// Largest normal `p`-subgroup.
    OP(u64),
}

fn normalizes(x: &Perm, h: &PermGroup) -> bool {
    h.generators().iter().all(|g| h.contains(&g.conjugate_by(x)))
}

fn subgroup_from_scan(g: &PermGroup, keep: impl Fn(&Perm) -> bool) -> Result<SubgroupHandle> {
    let idx = g.element_index()?;
    let members: Vec<Perm> = idx.elements().iter().filter(|x| keep(x)).cloned().collect();
    let sub = PermGroup::generated_by(g.degree(), &members)?;
    debug_assert_eq!(sub.order(), members.len() as u64);
    SubgroupHandle::new(g, sub)
}

/// Normalizers and centralizers by element scan.
pub fn stabilizer_subgroup(
    g: &PermGroup,
    target: &StabilizerTarget,
    kind: StabilizerKind,
) -> Result<SubgroupHandle> {
    match (kind, target) {
        (StabilizerKind::NormalizerOfSubgroup, StabilizerTarget::Subgroup(h)) => {
            if !h.is_subgroup_of(g) {
                return Err(Error::Domain("normalizer target is not a subgroup".into()));
            }
            subgroup_from_scan(g, |x| normalizes(x, h))
        }
        (StabilizerKind::NormalizerOfSubgroup, StabilizerTarget::Element(y)) => {
            if !g.contains(y) {
                return Err(Error::Domain("normalizer target is not in the group".into()));
            }
            let cyc = PermGroup::new(g.degree(), vec![y.clone()])?;
            subgroup_from_scan(g, |x| normalizes(x, &cyc))
        }
        (StabilizerKind::CentralizerOfElement, StabilizerTarget::Element(y)) => {
            if !g.contains(y) {
                return Err(Error::Domain("centralizer target is not in the group".into()));
            }
            subgroup_from_scan(g, |x| x.mul(y) == y.mul(x))
        }
        (StabilizerKind::CentralizerOfSubgroup, StabilizerTarget::Subgroup(h))
        | (StabilizerKind::CentralizerOfElement, StabilizerTarget::Subgroup(h)) => {
            if !h.is_subgroup_of(g) {
                return Err(Error::Domain("centralizer target is not a subgroup".into()));
            }
            subgroup_from_scan(g, |x| h.generators().iter().all(|y| x.mul(y) == y.mul(x)))
        }
        (StabilizerKind::CentralizerOfSubgroup, StabilizerTarget::Element(y)) => {
            if !g.contains(y) {
                return Err(Error::Domain("centralizer target is not in the group".into()));
            }
            subgroup_from_scan(g, |x| x.mul(y) == y.mul(x))
        }
    }
}

/// Smallest `k >= 1` with `x^k` in `h`.
fn order_modulo(x: &Perm, h: &PermGroup) -> u64 {
    let mut k = 1;
    let mut y = x.clone();
    while !h.contains(&y) {
        y = y.mul(x);
        k += 1;
    }
    k
}

/// A Sylow `p`-subgroup, grown one factor of `p` at a time inside the
/// normalizer of the current `p`-subgroup.
pub fn sylow_subgroup(g: &PermGroup, p: u64) -> Result<SubgroupHandle> {
    if !arith::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let target = arith::p_part(g.order(), p);
    let mut sub = PermGroup::trivial(g.degree());
    if target == 1 {
        return SubgroupHandle::new(g, sub);
    }
    let idx = g.element_index()?;
    while sub.order() < target {
        let mut grown = None;
        for x in idx.elements() {
            if sub.contains(x) || !normalizes(x, &sub) {
                continue;
            }
            let k = order_modulo(x, &sub);
            if k.is_multiple_of(p) {
                grown = Some(x.pow((k / p) as i64));
                break;
            }
        }
        let y = grown.ok_or_else(|| {
            Error::Internal("Sylow ascent found no p-element in the normalizer".into())
        })?;
        sub = sub.extend(&[y])?;
    }
    debug_assert_eq!(sub.order(), target);
    SubgroupHandle::new(g, sub)
}

/// Smallest normal subgroup of `g` containing `gens`.
pub fn normal_closure(g: &PermGroup, gens: &[Perm]) -> Result<PermGroup> {
    let mut h = PermGroup::generated_by(g.degree(), gens)?;
    loop {
        let mut extra = Vec::new();
        for y in h.generators() {
            for x in g.generators() {
                let c = y.conjugate_by(x);
                if !h.contains(&c) && !extra.contains(&c) {
                    extra.push(c);
                }
            }
        }
        if extra.is_empty() {
            return Ok(h);
        }
        h = h.extend(&extra)?;
    }
}

pub fn characteristic_subgroup(g: &PermGroup, kind: Characteristic) -> Result<SubgroupHandle> {
    match kind {
        Characteristic::Derived => {
            let gens = g.generators();
            let comms: Vec<Perm> = gens
                .iter()
                .enumerate()
                .flat_map(|(i, a)| gens[i + 1..].iter().map(move |b| Perm::commutator(a, b)))
                .collect();
            SubgroupHandle::new(g, normal_closure(g, &comms)?)
        }
        Characteristic::Center => subgroup_from_scan(g, |x| {
            g.generators().iter().all(|y| x.mul(y) == y.mul(x))
        }),
        Characteristic::FrattiniP(p) => {
            if !g.is_p_group(p) {
                return Err(Error::Domain(format!(
                    "Frattini construction needs a {p}-group, got order {}",
                    g.order()
                )));
            }
            let derived = characteristic_subgroup(g, Characteristic::Derived)?.subgroup;
            let powers: Vec<Perm> = g.generators().iter().map(|x| x.pow(p as i64)).collect();
            let phi = normal_closure(g, derived.extend(&powers)?.generators())?;
            SubgroupHandle::new(g, phi)
        }
        Characteristic::OPPrime(p) => {
            let acc = join_of_closures(g, |ord| ord % p != 0)?;
            debug_assert!(acc.order() % p != 0);
            SubgroupHandle::new(g, acc)
        }
        Characteristic::OP(p) => {
            let acc = join_of_closures(g, |ord| arith::p_part(ord, p) == ord)?;
            debug_assert!(acc.is_p_group(p));
            SubgroupHandle::new(g, acc)
        }
    }
}

/// Join of the normal closures of class representatives whose closure
/// order satisfies `keep`. Such closures generate the largest normal
/// subgroup with that property when the property is closed under joins.
fn join_of_closures(g: &PermGroup, keep: impl Fn(u64) -> bool) -> Result<PermGroup> {
    let classes = super::conjugacy_classes(g)?;
    let mut acc = PermGroup::trivial(g.degree());
    for (rep, &ord) in classes.reps.iter().zip(&classes.rep_orders) {
        if ord == 1 || !keep(ord) || acc.contains(rep) {
            continue;
        }
        let closure = normal_closure(g, std::slice::from_ref(rep))?;
        if keep(closure.order()) {
            acc = normal_closure(g, acc.join(&closure)?.generators())?;
        }
    }
    Ok(acc)
}

pub fn is_solvable(g: &PermGroup) -> Result<bool> {
    let mut h = g.clone();
    while !h.is_trivial() {
        let d = characteristic_subgroup(&h, Characteristic::Derived)?.subgroup;
        if d.order() == h.order() {
            return Ok(false);
        }
        h = d;
    }
    Ok(true)
}

/// Whether every chief factor is a `p`-group or a `p'`-group, decided by
/// walking the upper `p'`/`p` series.
pub fn is_p_solvable(g: &PermGroup, p: u64) -> Result<bool> {
    let mut h = g.clone();
    loop {
        let opp = characteristic_subgroup(&h, Characteristic::OPPrime(p))?;
        if opp.order() == h.order() {
            return Ok(true);
        }
        h = super::quotient_group(&h, &opp)?.image;
        let op = characteristic_subgroup(&h, Characteristic::OP(p))?;
        if op.order() == h.order() {
            return Ok(true);
        }
        if op.order() == 1 {
            return Ok(false);
        }
        h = super::quotient_group(&h, &op)?.image;
    }
}

/// All normal subgroups, found as joins of normal closures of classes.
/// Returns `None` when more than `cap` are found. Sorted by order; ties keep
/// their discovery order, which depends only on the class numbering.
pub fn normal_subgroups(g: &PermGroup, cap: usize) -> Result<Option<Vec<PermGroup>>> {
    let classes = super::conjugacy_classes(g)?;
    let mut found: Vec<PermGroup> = vec![PermGroup::trivial(g.degree())];
    let push = |found: &mut Vec<PermGroup>, h: PermGroup| {
        if !found.iter().any(|x| x.order() == h.order() && x.same_elements(&h)) {
            found.push(h);
        }
    };
    let atoms: Vec<PermGroup> = classes.reps[1..]
        .iter()
        .map(|r| normal_closure(g, std::slice::from_ref(r)))
        .collect::<Result<_>>()?;
    for a in &atoms {
        push(&mut found, a.clone());
    }
    let mut i = 0;
    while i < found.len() {
        if found.len() > cap {
            return Ok(None);
        }
        for a in &atoms {
            if a.is_subgroup_of(&found[i]) {
                continue;
            }
            let j = found[i].join(a)?;
            push(&mut found, j);
        }
        i += 1;
    }
    found.sort_by_key(|h| h.order());
    Ok(Some(found))
}

/// Exponent of `P/P'`: the lcm of the orders modulo `P'` of the generators.
pub fn abelianization_exponent(p: &PermGroup) -> Result<u64> {
    let derived = characteristic_subgroup(p, Characteristic::Derived)?.subgroup;
    Ok(p.generators()
        .iter()
        .fold(1, |acc, x| arith::lcm(acc, order_modulo(x, &derived))))
}
