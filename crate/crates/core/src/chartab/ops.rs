use num_bigint::BigInt;
use num_rational::BigRational;

use super::{into_field, Character, CharacterTable, ClassFunction, ClassValues};
use crate::arith;
use crate::cyclotomic::{CycNum, GaloisAut};
use crate::error::{Error, Result};
use crate::group::{Perm, PermGroup, QuotientMap, SubgroupHandle};

/// For each class of `sub`'s table, the class of `table` containing it.
pub fn fusion(sub: &CharacterTable, table: &CharacterTable) -> Result<Vec<usize>> {
    if sub.group().degree() != table.group().degree() || !sub.group().is_subgroup_of(table.group()) {
        return Err(Error::Domain(format!(
            "group of order {} is not a subgroup of the group of order {}",
            sub.order(),
            table.order()
        )));
    }
    Ok(sub
        .classes()
        .reps
        .iter()
        .map(|r| table.classes().class_of(r).expect("subgroup element lies in group"))
        .collect())
}

/// Restriction of a class function of `table` to the subgroup of `sub`.
pub fn restrict(
    f: &impl ClassValues,
    table: &CharacterTable,
    sub: &CharacterTable,
) -> Result<ClassFunction> {
    table.check_owner(f)?;
    let fus = fusion(sub, table)?;
    let e = sub.exponent();
    sub.class_function(fus.iter().map(|&c| into_field(&f.values()[c], e)).collect())
}

/// Induction of a class function of `sub` up to `table`.
pub fn induce(
    f: &impl ClassValues,
    sub: &CharacterTable,
    table: &CharacterTable,
) -> Result<ClassFunction> {
    sub.check_owner(f)?;
    let fus = fusion(sub, table)?;
    let e = table.exponent();
    let mut sums = vec![CycNum::zero(e); table.len()];
    for (l, &k) in fus.iter().enumerate() {
        let term = into_field(&f.values()[l], e).scale_int(sub.classes().sizes[l] as i64);
        sums[k] = &sums[k] + &term;
    }
    let h = BigInt::from(sub.order());
    let values = sums
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            let c = BigInt::from(table.classes().centralizer_order(k));
            s.scale(&BigRational::new(c, h.clone()))
        })
        .collect();
    table.class_function(values)
}

impl CharacterTable {
    /// `chi^tau`, again a row of this table.
    pub fn twist_galois(&self, chi: &Character, tau: &GaloisAut) -> Result<&Character> {
        self.check_owner(chi)?;
        if !tau.modulus().is_multiple_of(self.exponent()) {
            return Err(Error::Domain(format!(
                "automorphism modulus {} is not a multiple of the exponent {}",
                tau.modulus(),
                self.exponent()
            )));
        }
        let values = chi
            .values()
            .iter()
            .map(|v| v.galois(tau))
            .collect::<Result<Vec<_>>>()?;
        let row = self
            .find_row(&values)
            .ok_or_else(|| Error::Internal("Galois twist is not a row of the table".into()))?;
        Ok(self.character(row))
    }

    /// Class permutation induced by `x -> g x g^-1` for `g` normalizing the
    /// group of this table: entry `c` is the class of `g rep_c g^-1`.
    pub fn conjugation_action(&self, g: &Perm) -> Result<Vec<usize>> {
        let grp = self.group();
        if g.degree() != grp.degree()
            || !grp.generators().iter().all(|x| grp.contains(&x.conjugate_by(g)))
        {
            return Err(Error::Domain(format!("{g} does not normalize the group")));
        }
        let ginv = g.inverse();
        Ok(self
            .classes()
            .reps
            .iter()
            .map(|r| {
                self.classes()
                    .class_of(&r.conjugate_by(&ginv))
                    .expect("normalizing element preserves the group")
            })
            .collect())
    }

    /// `theta^g` with `theta^g(x) = theta(g x g^-1)`.
    pub fn twist_conjugation(&self, theta: &Character, g: &Perm) -> Result<&Character> {
        self.check_owner(theta)?;
        let action = self.conjugation_action(g)?;
        let values: Vec<CycNum> = action.iter().map(|&c| theta.values()[c].clone()).collect();
        let row = self
            .find_row(&values)
            .ok_or_else(|| Error::Internal("conjugate character is not a row of the table".into()))?;
        Ok(self.character(row))
    }

    /// Rows in the Galois orbit of `theta`, using `chi^(sigma_t)(g) = chi(g^t)`.
    pub fn galois_orbit(&self, theta: &Character) -> Result<Vec<usize>> {
        self.check_owner(theta)?;
        let classes = self.classes();
        let mut out: Vec<usize> = arith::units(self.exponent() as u64)
            .into_iter()
            .map(|t| {
                let values: Vec<CycNum> = (0..self.len())
                    .map(|c| theta.values()[classes.power_map(c, t as i64)].clone())
                    .collect();
                self.find_row(&values)
                    .ok_or_else(|| Error::Internal("Galois twist is not a row of the table".into()))
            })
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// For every row, the least row of its Galois orbit.
    pub fn galois_orbit_minima(&self) -> Result<&[usize]> {
        if let Some(v) = self.0.galois_min.get() {
            return Ok(v);
        }
        let mut mins = vec![usize::MAX; self.len()];
        for r in 0..self.len() {
            if mins[r] != usize::MAX {
                continue;
            }
            for s in self.galois_orbit(self.character(r))? {
                mins[s] = r;
            }
        }
        Ok(self.0.galois_min.get_or_init(|| mins))
    }
}

/// Inertia group `G_theta` and semi-inertia group `G*_theta` of an
/// irreducible character of a normal subgroup.
pub fn inertia_groups(
    g: &PermGroup,
    normal: &CharacterTable,
    theta: &Character,
) -> Result<(SubgroupHandle, SubgroupHandle)> {
    normal.check_owner(theta)?;
    let n = normal.group();
    if n.degree() != g.degree() || !n.is_subgroup_of(g) || !n.is_normal_in(g) {
        return Err(Error::Domain("inertia groups need a normal subgroup".into()));
    }
    let orbit = normal.galois_orbit(theta)?;
    let row_action = g
        .generators()
        .iter()
        .map(|x| {
            let classes = normal.conjugation_action(x)?;
            normal
                .irr()
                .iter()
                .map(|chi| {
                    let values: Vec<CycNum> =
                        classes.iter().map(|&c| chi.values()[c].clone()).collect();
                    normal.find_row(&values).ok_or_else(|| {
                        Error::Internal("conjugate character is not a row of the table".into())
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    // rows of one Galois orbit collapse to the orbit's least row
    let galois_min = normal.galois_orbit_minima()?;
    let orbit_action: Vec<Vec<usize>> = row_action
        .iter()
        .map(|a| (0..normal.len()).map(|r| galois_min[a[r]]).collect())
        .collect();
    let (gt, _) = g.action_stabilizer(&row_action, theta.index())?;
    let (gs, _) = g.action_stabilizer(&orbit_action, orbit[0])?;
    Ok((SubgroupHandle::new(g, gt)?, SubgroupHandle::new(g, gs)?))
}

/// Elements where the character takes its degree.
pub fn kernel_of_character(table: &CharacterTable, chi: &Character) -> Result<SubgroupHandle> {
    table.check_owner(chi)?;
    let g = table.group();
    let deg = &chi.values()[0];
    let classes = table.classes();
    let idx = classes.element_index();
    let members: Vec<Perm> = classes
        .members()
        .into_iter()
        .enumerate()
        .filter(|(c, _)| chi.values()[*c] == *deg)
        .flat_map(|(_, m)| m.into_iter().map(|i| idx.get(i).clone()))
        .collect();
    let k = PermGroup::generated_by(g.degree(), &members)?;
    if k.order() != members.len() as u64 || !k.is_normal_in(g) {
        return Err(Error::Internal("character kernel is not a normal subgroup".into()));
    }
    SubgroupHandle::new(g, k)
}

/// Pull a character of `q.image` back to `q.source`.
pub fn inflate(
    image_table: &CharacterTable,
    chi: &Character,
    q: &QuotientMap,
    source_table: &CharacterTable,
) -> Result<Character> {
    image_table.check_owner(chi)?;
    let same = |a: &PermGroup, b: &PermGroup| a.degree() == b.degree() && a.same_elements(b);
    if !same(image_table.group(), &q.image) || !same(source_table.group(), &q.source) {
        return Err(Error::Domain("tables do not match the quotient map".into()));
    }
    let e = source_table.exponent();
    let values = source_table
        .classes()
        .reps
        .iter()
        .map(|r| {
            let y = q.forward(r)?;
            let c = image_table
                .classes()
                .class_of(&y)
                .ok_or_else(|| Error::Internal("image element outside quotient".into()))?;
            Ok(into_field(&chi.values()[c], e))
        })
        .collect::<Result<Vec<_>>>()?;
    let row = source_table
        .find_row(&values)
        .ok_or_else(|| Error::Internal("inflated character is not irreducible".into()))?;
    Ok(source_table.character(row).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::{
        builtin_group, characteristic_subgroup, parse_builtin, quotient_group, sylow_subgroup,
        Characteristic,
    };

    fn grp(s: &str) -> PermGroup {
        builtin_group(&parse_builtin(s).unwrap()).unwrap()
    }

    fn faithful_linear(t: &CharacterTable) -> &Character {
        t.irr()
            .iter()
            .find(|c| c.degree() == 1 && c.values().iter().skip(1).all(|v| !v.is_rational()))
            .expect("faithful linear character")
    }

    #[test]
    fn s3_induction_restriction() {
        let s3 = grp("symmetric(3)");
        let gt = character_table(&s3).unwrap();
        let c3 = sylow_subgroup(&s3, 3).unwrap().subgroup;
        let ht = character_table(&c3).unwrap();
        let ind = induce(ht.character(0), &ht, &gt).unwrap();
        assert_eq!(gt.decompose(&ind).unwrap(), vec![1, 1, 0]);
        let c2 = sylow_subgroup(&s3, 2).unwrap().subgroup;
        let t2 = character_table(&c2).unwrap();
        let ind = induce(t2.character(0), &t2, &gt).unwrap();
        assert_eq!(gt.decompose(&ind).unwrap(), vec![1, 0, 1]);
        let lam = faithful_linear(&ht);
        let ind = induce(lam, &ht, &gt).unwrap();
        assert_eq!(gt.decompose(&ind).unwrap(), vec![0, 0, 1]);
        assert_eq!(*ind.degree(), CycNum::from_int(1, 2));
        let res = restrict(gt.character(2), &gt, &ht).unwrap();
        let mult = ht.decompose(&res).unwrap();
        assert_eq!(mult.iter().sum::<u64>(), 2);
        assert_eq!(mult[0], 0);
    }

    #[test]
    fn twists_and_inertia() {
        let s3 = grp("symmetric(3)");
        let c3 = sylow_subgroup(&s3, 3).unwrap().subgroup;
        let ht = character_table(&c3).unwrap();
        let lam = faithful_linear(&ht);
        let other = ht.twist_galois(lam, &GaloisAut::new(3, 2).unwrap()).unwrap();
        assert_ne!(other.index(), lam.index());
        let t = crate::group::Perm::parse_cycles(3, "(1 2)").unwrap();
        assert_eq!(ht.twist_conjugation(lam, &t).unwrap().index(), other.index());
        let (gt, gs) = inertia_groups(&s3, &ht, lam).unwrap();
        assert_eq!((gt.order(), gs.order()), (3, 6));
        let (gt, gs) = inertia_groups(&s3, &ht, ht.character(0)).unwrap();
        assert_eq!((gt.order(), gs.order()), (6, 6));

        let c6 = grp("cyclic(6)");
        let n = sylow_subgroup(&c6, 3).unwrap().subgroup;
        let nt = character_table(&n).unwrap();
        let (gt, gs) = inertia_groups(&c6, &nt, faithful_linear(&nt)).unwrap();
        assert_eq!((gt.order(), gs.order()), (6, 6));
    }

    #[test]
    fn kernels_and_inflation() {
        let c9 = grp("cyclic(9)");
        let t = character_table(&c9).unwrap();
        assert_eq!(kernel_of_character(&t, faithful_linear(&t)).unwrap().order(), 1);
        assert_eq!(kernel_of_character(&t, t.character(0)).unwrap().order(), 9);

        let d24 = grp("dihedral(24)");
        let dt = character_table(&d24).unwrap();
        let o = characteristic_subgroup(&d24, Characteristic::OPPrime(3)).unwrap();
        let q = quotient_group(&d24, &o).unwrap();
        let st = character_table(&q.image).unwrap();
        assert_eq!(st.degrees(), vec![1, 1, 2]);
        let infl = inflate(&st, st.character(2), &q, &dt).unwrap();
        assert_eq!(infl.degree(), 2);
        assert_eq!(kernel_of_character(&dt, &infl).unwrap().order(), 4);
        assert_eq!(inflate(&st, st.character(0), &q, &dt).unwrap().index(), 0);
    }
}
