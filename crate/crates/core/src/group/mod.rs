//! Finite permutation groups and the subgroup constructions used by the
//! character-theoretic checkers.
//!
//! A [`PermGroup`] carries a base and strong generating set built by a
//! deterministic Schreier–Sims, giving the order and membership tests.
//! Scan-based constructions (classes, centralizers, normalizers) enumerate
//! the elements and are guarded by a configurable enumeration bound.

mod builtin;
mod classes;
mod perm;
mod quotient;
mod subgroups;

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

pub use builtin::{builtin_group, parse_builtin, BuiltinSpec};
pub use classes::{conjugacy_classes, ConjClassData};
pub use perm::Perm;
pub use quotient::{quotient_group, QuotientMap};
pub use subgroups::{
    abelianization_exponent, characteristic_subgroup, is_p_solvable, is_solvable, normal_closure,
    normal_subgroups, stabilizer_subgroup, sylow_subgroup, Characteristic, StabilizerKind,
    StabilizerTarget,
};

use crate::arith;
use crate::error::{Error, Result};

static ENUMERATION_BOUND: AtomicU64 = AtomicU64::new(100_000);

/// Default bound on the order of groups whose elements may be enumerated.
pub fn enumeration_bound() -> u64 {
    ENUMERATION_BOUND.load(Ordering::Relaxed)
}

pub fn set_enumeration_bound(bound: u64) {
    ENUMERATION_BOUND.store(bound, Ordering::Relaxed);
}

#[derive(Clone)]
struct Level {
    base: u32,
    /// Strong generators first introduced at this level.
    own: Vec<Perm>,
    orbit: Vec<u32>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Perm>>,
}

/// Stabilizer chain built by Sims' algorithm with full Schreier-generator
/// testing. Deterministic for a fixed generator sequence.
#[derive(Clone)]
struct Chain {
    degree: u32,
    levels: Vec<Level>,
}

impl Chain {
    fn new(degree: u32) -> Self {
        Chain {
            degree,
            levels: Vec::new(),
        }
    }

    fn gens_at(&self, l: usize) -> impl Iterator<Item = &Perm> {
        self.levels[l..].iter().flat_map(|lv| lv.own.iter())
    }

    fn rebuild_orbit(&mut self, l: usize) {
        let degree = self.degree as usize;
        let gens: Vec<Perm> = self.gens_at(l).cloned().collect();
        let level = &mut self.levels[l];
        let mut transversal: Vec<Option<Perm>> = vec![None; degree];
        transversal[level.base as usize] = Some(Perm::identity(self.degree));
        let mut orbit = vec![level.base];
        let mut i = 0;
        while i < orbit.len() {
            let b = orbit[i];
            for s in &gens {
                let c = s.apply(b);
                if transversal[c as usize].is_none() {
                    let u = transversal[b as usize].as_ref().expect("orbit point").mul(s);
                    transversal[c as usize] = Some(u);
                    orbit.push(c);
                }
            }
            i += 1;
        }
        level.orbit = orbit;
        level.transversal = transversal;
    }

    /// Strip `g` through levels `from..`; returns the residue and the level
    /// at which stripping stopped (`levels.len()` if it passed every level).
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(level.base);
            match &level.transversal[b as usize] {
                Some(u) => h = h.mul(&u.inverse()),
                None => return (h, l),
            }
        }
        let l = self.levels.len();
        (h, l)
    }

    fn insert_at(&mut self, h: Perm, level: usize) {
        if level == self.levels.len() {
            let base = h.first_moved_point().expect("nontrivial residue");
            self.levels.push(Level {
                base,
                own: Vec::new(),
                orbit: vec![base],
                transversal: Vec::new(),
            });
        }
        self.levels[level].own.push(h);
    }

    fn add_generator(&mut self, g: &Perm) {
        let (h, j) = self.sift(g, 0);
        if h.is_identity() {
            return;
        }
        self.insert_at(h, j);
        // rebuild orbits below the insertion level, then verify Schreier
        // generators from the insertion level upwards
        for l in (0..=j).rev() {
            self.rebuild_orbit(l);
        }
        let mut l = j as isize;
        while l >= 0 {
            let lu = l as usize;
            self.rebuild_orbit(lu);
            match self.find_nontrivial_schreier(lu) {
                Some((h, m)) => {
                    self.insert_at(h, m);
                    for k in (lu + 1..=m).rev() {
                        self.rebuild_orbit(k);
                    }
                    l = m as isize;
                }
                None => l -= 1,
            }
        }
    }

    fn find_nontrivial_schreier(&self, l: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[l];
        let gens: Vec<&Perm> = self.gens_at(l).collect();
        for &b in &level.orbit {
            let ub = level.transversal[b as usize].as_ref().expect("orbit point");
            for s in &gens {
                let c = s.apply(b);
                let uc = level.transversal[c as usize].as_ref().expect("orbit point");
                let sch = ub.mul(s).mul(&uc.inverse());
                if sch.is_identity() {
                    continue;
                }
                let (h, m) = self.sift(&sch, l + 1);
                if !h.is_identity() {
                    return Some((h, m));
                }
            }
        }
        None
    }

    fn order(&self) -> u64 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u64)
            .product()
    }

    fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.sift(g, 0).0.is_identity()
    }

    fn enumerate(&self) -> Vec<Perm> {
        let mut list = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * level.orbit.len());
            for x in &list {
                for &b in &level.orbit {
                    next.push(x.mul(level.transversal[b as usize].as_ref().expect("orbit")));
                }
            }
            list = next;
        }
        list
    }
}

/// All elements of a group in ascending lexicographic order of image lists,
/// with a reverse lookup. The identity is always element 0.
pub struct ElementIndex {
    elements: Vec<Perm>,
    lookup: HashMap<Perm, u32>,
}

impl ElementIndex {
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        self.lookup.get(g).map(|&i| i as usize)
    }

    pub fn get(&self, i: usize) -> &Perm {
        &self.elements[i]
    }
}

struct GroupInner {
    degree: u32,
    generators: Vec<Perm>,
    chain: Chain,
    elements: OnceLock<Arc<ElementIndex>>,
}

/// A finite permutation group with a base and strong generating set.
///
/// Cheap to clone; all derived data is immutable and shared.
#[derive(Clone)]
pub struct PermGroup(Arc<GroupInner>);

impl PermGroup {
    /// Group generated by `gens` on `degree` points.
    pub fn new(degree: u32, gens: Vec<Perm>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::Input(format!(
                    "generator {g} has degree {} but the group acts on {degree} points",
                    g.degree()
                )));
            }
        }
        let mut chain = Chain::new(degree);
        for g in &gens {
            chain.add_generator(g);
        }
        let generators = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(PermGroup(Arc::new(GroupInner {
            degree,
            generators,
            chain,
            elements: OnceLock::new(),
        })))
    }

    /// Group generated by a non-empty generator list sharing one degree.
    pub fn from_generators(gens: Vec<Perm>) -> Result<Self> {
        let degree = gens
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::Input("empty generator list without a degree".into()))?;
        Self::new(degree, gens)
    }

    pub fn trivial(degree: u32) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.generators
    }

    pub fn order(&self) -> u64 {
        self.0.chain.order()
    }

    pub fn base(&self) -> Vec<u32> {
        self.0.chain.levels.iter().map(|l| l.base).collect()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.0.chain.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn check_enumerable(&self) -> Result<()> {
        let bound = enumeration_bound();
        if self.order() > bound {
            return Err(Error::Capacity {
                order: self.order(),
                bound,
            });
        }
        Ok(())
    }

    /// Sorted element list with reverse lookup (capacity-checked).
    pub fn element_index(&self) -> Result<Arc<ElementIndex>> {
        if let Some(e) = self.0.elements.get() {
            return Ok(Arc::clone(e));
        }
        self.check_enumerable()?;
        let mut elements = self.0.chain.enumerate();
        elements.sort_unstable();
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        let idx = Arc::new(ElementIndex { elements, lookup });
        Ok(Arc::clone(self.0.elements.get_or_init(|| idx)))
    }

    pub fn elements(&self) -> Result<Vec<Perm>> {
        Ok(self.element_index()?.elements().to_vec())
    }

    /// Add generators, reusing the existing stabilizer chain.
    pub fn extend(&self, extra: &[Perm]) -> Result<PermGroup> {
        let mut chain = self.0.chain.clone();
        let mut gens = self.0.generators.clone();
        for g in extra {
            if g.degree() != self.degree() {
                return Err(Error::Input(format!("generator {g} has wrong degree")));
            }
            if !chain.contains(g) {
                chain.add_generator(g);
                gens.push(g.clone());
            }
        }
        Ok(PermGroup(Arc::new(GroupInner {
            degree: self.degree(),
            generators: gens,
            chain,
            elements: OnceLock::new(),
        })))
    }

    /// Subgroup generated by a list of elements, adding only elements that
    /// are not already members (deterministic in the list order).
    pub fn generated_by(degree: u32, elements: &[Perm]) -> Result<PermGroup> {
        PermGroup::trivial(degree).extend(elements)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && other.order().is_multiple_of(self.order())
            && self.generators().iter().all(|g| other.contains(g))
    }

    /// Equality as subsets of the symmetric group.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other.generators().iter().all(|x| {
                self.generators()
                    .iter()
                    .all(|h| self.contains(&h.conjugate_by(x)))
            })
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        arith::p_part(self.order(), p) == self.order()
    }

    /// Exponent: lcm of element orders.
    pub fn exponent(&self) -> Result<u64> {
        let idx = self.element_index()?;
        Ok(idx
            .elements()
            .iter()
            .fold(1, |acc, g| arith::lcm(acc, g.order())))
    }

    /// Conjugate subgroup `x^-1 H x`.
    pub fn conjugate_by(&self, x: &Perm) -> PermGroup {
        let gens: Vec<Perm> = self.generators().iter().map(|g| g.conjugate_by(x)).collect();
        PermGroup::new(self.degree(), gens).expect("degrees agree")
    }

    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        let (small, big) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        let idx = small.element_index()?;
        let members: Vec<Perm> = idx
            .elements()
            .iter()
            .filter(|g| big.contains(g))
            .cloned()
            .collect();
        PermGroup::generated_by(self.degree(), &members)
    }

    /// Subgroup generated by `self` and `other`.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        self.extend(other.generators())
    }

    /// Stabilizer of `point` for a right action on `0..n`, given by the
    /// image table `action[i]` of the `i`-th generator. Returns the orbit
    /// too; the orbit-stabilizer count is checked.
    pub fn action_stabilizer(
        &self,
        action: &[Vec<usize>],
        point: usize,
    ) -> Result<(PermGroup, Vec<usize>)> {
        let gens = self.generators();
        if action.len() != gens.len() {
            return Err(Error::Input("one image table per generator is required".into()));
        }
        let mut transversal: HashMap<usize, Perm> = HashMap::new();
        transversal.insert(point, self.identity());
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            let pt = orbit[i];
            for (s, g) in gens.iter().enumerate() {
                let img = action[s][pt];
                if !transversal.contains_key(&img) {
                    let u = transversal[&pt].mul(g);
                    transversal.insert(img, u);
                    orbit.push(img);
                }
            }
            i += 1;
        }
        let mut schreier = Vec::new();
        for &pt in &orbit {
            for (s, g) in gens.iter().enumerate() {
                let img = action[s][pt];
                let h = transversal[&pt].mul(g).mul(&transversal[&img].inverse());
                if !h.is_identity() {
                    schreier.push(h);
                }
            }
        }
        let stab = PermGroup::generated_by(self.degree(), &schreier)?;
        if stab.order() * orbit.len() as u64 != self.order() {
            return Err(Error::Internal(
                "orbit-stabilizer count failed; the table is not a right action".into(),
            ));
        }
        orbit.sort_unstable();
        Ok((stab, orbit))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, gens [{}])",
            self.degree(),
            self.order(),
            self.generators()
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// A subgroup together with the group it was constructed inside.
#[derive(Clone, Debug)]
pub struct SubgroupHandle {
    pub parent: PermGroup,
    pub subgroup: PermGroup,
}

impl SubgroupHandle {
    pub fn new(parent: &PermGroup, subgroup: PermGroup) -> Result<Self> {
        if !subgroup.is_subgroup_of(parent) {
            return Err(Error::Domain("subgroup is not contained in parent".into()));
        }
        Ok(SubgroupHandle {
            parent: parent.clone(),
            subgroup,
        })
    }

    pub fn whole(parent: &PermGroup) -> Self {
        SubgroupHandle {
            parent: parent.clone(),
            subgroup: parent.clone(),
        }
    }

    pub fn order(&self) -> u64 {
        self.subgroup.order()
    }

    pub fn index(&self) -> u64 {
        self.parent.order() / self.subgroup.order()
    }

    pub fn is_normal(&self) -> bool {
        self.subgroup.is_normal_in(&self.parent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(deg: u32, s: &str) -> Perm {
        Perm::parse_cycles(deg, s).unwrap()
    }

    #[test]
    fn orders_of_small_groups() {
        assert_eq!(PermGroup::new(3, vec![p(3, "(1 2 3)")]).unwrap().order(), 3);
        let s4 = PermGroup::new(4, vec![p(4, "(1 2)"), p(4, "(1 2 3 4)")]).unwrap();
        assert_eq!(s4.order(), 24);
        assert!(s4.contains(&p(4, "(1 3)")));
        assert_eq!(PermGroup::trivial(5).order(), 1);
    }

    #[test]
    fn enumeration_matches_order_and_membership() {
        let g = PermGroup::new(6, vec![p(6, "(1 2 3 4 5 6)"), p(6, "(1 6)(2 5)(3 4)")]).unwrap();
        let idx = g.element_index().unwrap();
        assert_eq!(idx.len() as u64, g.order());
        assert!(idx.get(0).is_identity());
        assert!(idx.elements().iter().all(|x| g.contains(x)));
        assert!(!g.contains(&p(6, "(1 2)")));
    }

    #[test]
    fn degree_mismatch_is_input_error() {
        assert!(matches!(
            PermGroup::new(4, vec![p(3, "(1 2)")]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn capacity_bound_enforced() {
        // S_9 has order 362880 > default bound
        let g = PermGroup::new(9, vec![p(9, "(1 2)"), p(9, "(1 2 3 4 5 6 7 8 9)")]).unwrap();
        assert_eq!(g.order(), 362_880);
        assert!(matches!(g.element_index(), Err(Error::Capacity { .. })));
    }
}
