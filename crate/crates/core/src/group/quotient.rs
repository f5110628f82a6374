use std::sync::Arc;

use super::{ElementIndex, Perm, PermGroup, SubgroupHandle};
use crate::error::{Error, Result};

/// The natural map `G -> G/N`, with `G/N` acting on the right cosets `Nx`.
#[derive(Clone)]
pub struct QuotientMap {
    pub source: PermGroup,
    pub kernel: SubgroupHandle,
    pub image: PermGroup,
    elements: Arc<ElementIndex>,
    coset_of: Vec<u32>,
    /// Least element of each coset; coset 0 is `N` itself.
    reps: Vec<Perm>,
}

pub fn quotient_group(g: &PermGroup, n: &SubgroupHandle) -> Result<QuotientMap> {
    if !n.subgroup.is_normal_in(g) {
        return Err(Error::Domain(format!(
            "subgroup of order {} is not normal in group of order {}",
            n.subgroup.order(),
            g.order()
        )));
    }
    let idx = g.element_index()?;
    let kernel_elems = n.subgroup.elements()?;
    let mut coset_of = vec![u32::MAX; idx.len()];
    let mut reps = Vec::new();
    for start in 0..idx.len() {
        if coset_of[start] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        let x = idx.get(start);
        for k in &kernel_elems {
            let j = idx.index_of(&k.mul(x)).expect("coset element in group");
            coset_of[j] = c;
        }
        reps.push(x.clone());
    }
    let index = reps.len() as u32;
    let forward_of = |x: &Perm| -> Result<Perm> {
        Perm::from_images(
            reps.iter()
                .map(|r| coset_of[idx.index_of(&r.mul(x)).expect("member")])
                .collect(),
        )
    };
    let gens = g
        .generators()
        .iter()
        .map(forward_of)
        .collect::<Result<Vec<_>>>()?;
    let image = PermGroup::new(index, gens)?;
    if image.order() * n.subgroup.order() != g.order() {
        return Err(Error::Internal("quotient order mismatch".into()));
    }
    Ok(QuotientMap {
        source: g.clone(),
        kernel: SubgroupHandle::new(g, n.subgroup.clone())?,
        image,
        elements: idx,
        coset_of,
        reps,
    })
}

impl QuotientMap {
    /// Image of a source element as a permutation of the cosets.
    pub fn forward(&self, x: &Perm) -> Result<Perm> {
        if self.elements.index_of(x).is_none() {
            return Err(Error::Domain(format!("{x} is not in the source group")));
        }
        Perm::from_images(
            self.reps
                .iter()
                .map(|r| self.coset_of[self.elements.index_of(&r.mul(x)).expect("member")])
                .collect(),
        )
    }

    /// Coset index of a source element.
    pub fn coset(&self, x: &Perm) -> Option<usize> {
        self.elements.index_of(x).map(|i| self.coset_of[i] as usize)
    }

    /// Coset representative mapping to the given image element.
    pub fn section(&self, y: &Perm) -> Perm {
        self.reps[y.apply(0) as usize].clone()
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Preimage of a subgroup of the image.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = sub.generators().iter().map(|y| self.section(y)).collect();
        gens.extend(self.kernel.subgroup.generators().iter().cloned());
        PermGroup::generated_by(self.source.degree(), &gens)
    }

    /// Image of a subgroup of the source.
    pub fn image_of(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|x| self.forward(x))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.image.degree(), gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{
        builtin_group, characteristic_subgroup, conjugacy_classes, parse_builtin, Characteristic,
    };

    fn grp(s: &str) -> PermGroup {
        builtin_group(&parse_builtin(s).unwrap()).unwrap()
    }

    #[test]
    fn d24_mod_o3prime_is_s3() {
        let d24 = grp("dihedral(24)");
        let o = characteristic_subgroup(&d24, Characteristic::OPPrime(3)).unwrap();
        let q = quotient_group(&d24, &o).unwrap();
        assert_eq!(q.image.order(), 6);
        assert_eq!(conjugacy_classes(&q.image).unwrap().len(), 3);
        assert!(!q.image.is_abelian());
    }

    #[test]
    fn trivial_and_cyclic_quotients() {
        let g = grp("symmetric(4)");
        let q = quotient_group(&g, &SubgroupHandle::whole(&g)).unwrap();
        assert_eq!(q.image.order(), 1);
        let c9 = grp("cyclic(9)");
        let phi = characteristic_subgroup(&c9, Characteristic::FrattiniP(3)).unwrap();
        let q = quotient_group(&c9, &phi).unwrap();
        assert_eq!(q.image.order(), 3);
        assert!(q.image.is_abelian());
    }

    #[test]
    fn homomorphism_and_section() {
        let g = grp("symmetric(4)");
        let v4 = characteristic_subgroup(&g, Characteristic::OPPrime(3)).unwrap();
        let q = quotient_group(&g, &v4).unwrap();
        let els = g.elements().unwrap();
        for a in els.iter().step_by(5) {
            for b in els.iter().step_by(7) {
                assert_eq!(
                    q.forward(&a.mul(b)).unwrap(),
                    q.forward(a).unwrap().mul(&q.forward(b).unwrap())
                );
            }
        }
        for y in q.image.elements().unwrap() {
            assert_eq!(q.forward(&q.section(&y)).unwrap(), y);
        }
    }

    #[test]
    fn non_normal_kernel_rejected() {
        let g = grp("symmetric(3)");
        let t = PermGroup::new(3, vec![Perm::parse_cycles(3, "(1 2)").unwrap()]).unwrap();
        let h = SubgroupHandle::new(&g, t).unwrap();
        assert!(matches!(quotient_group(&g, &h), Err(Error::Domain(_))));
    }
}
