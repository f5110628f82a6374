//! The local side of the gap conjecture: conditions (ii.a) and (ii.b) on
//! `K = N_G(P)/M` and `Q = PM/M`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::Result;
use crate::group::{
    characteristic_subgroup, conjugacy_classes, quotient_group, stabilizer_subgroup,
    sylow_subgroup, Characteristic, Perm, PermGroup, StabilizerKind, StabilizerTarget,
    SubgroupHandle,
};

/// Which quotient of the Sylow normalizer plays the role of `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalMode {
    /// `K = N_G(P)/Phi(P)`.
    Frattini,
    /// `K = N_G(P)/O_p'(N_G(P))Phi(P)`.
    Ppal,
}

impl LocalMode {
    pub fn name(self) -> &'static str {
        match self {
            LocalMode::Frattini => "frattini",
            LocalMode::Ppal => "ppal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCheck {
    /// An element of `P` whose image is the representative `y`.
    pub y: String,
    pub normalizer_order: u64,
    pub centralizer_order: u64,
    /// `|N_K(<y>) : C_K(y)| = p - 1`.
    pub a: bool,
    /// `N_K(<y>)` fixes every class of `C_K(y)/Q`.
    pub b: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionII {
    pub mode: LocalMode,
    pub p: u64,
    /// True for `p = 2`, where the condition holds by convention.
    pub vacuous: bool,
    pub k_order: u64,
    pub q_order: u64,
    pub per_y: Vec<LocalCheck>,
    pub a: bool,
    pub b: bool,
}

impl ConditionII {
    pub fn holds(&self) -> bool {
        self.a && self.b
    }
}

/// Representatives of the `K`-classes of order-`p` subgroups of `Q`, each
/// given by the least non-identity element of a least-element subgroup.
fn cyclic_subgroup_reps(k: &PermGroup, q: &PermGroup, p: u64) -> Result<Vec<Perm>> {
    let elements = q.elements()?;
    let cyclic = |y: &Perm| -> Vec<Perm> {
        let mut s: Vec<Perm> = (0..p as i64).map(|i| y.pow(i)).collect();
        s.sort();
        s
    };
    let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
    let mut reps = Vec::new();
    for y in elements.iter().filter(|y| y.order() == p) {
        let s = cyclic(y);
        if seen.contains(&s) {
            continue;
        }
        reps.push(y.clone());
        let mut queue = vec![s.clone()];
        seen.insert(s);
        while let Some(cur) = queue.pop() {
            for g in k.generators() {
                let mut c: Vec<Perm> = cur.iter().map(|x| x.conjugate_by(g)).collect();
                c.sort();
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
    }
    Ok(reps)
}

pub fn conjb_condition_ii(g: &PermGroup, p: u64, mode: LocalMode) -> Result<ConditionII> {
    let mut out = ConditionII {
        mode,
        p,
        vacuous: p == 2,
        k_order: 0,
        q_order: 0,
        per_y: Vec::new(),
        a: true,
        b: true,
    };
    if p == 2 {
        return Ok(out);
    }
    let pg = sylow_subgroup(g, p)?.subgroup;
    let n = stabilizer_subgroup(
        g,
        &StabilizerTarget::Subgroup(pg.clone()),
        StabilizerKind::NormalizerOfSubgroup,
    )?
    .subgroup;
    let phi = characteristic_subgroup(&pg, Characteristic::FrattiniP(p))?.subgroup;
    let m = match mode {
        LocalMode::Frattini => phi,
        LocalMode::Ppal => {
            let o = characteristic_subgroup(&n, Characteristic::OPPrime(p))?.subgroup;
            o.join(&phi)?
        }
    };
    let q_map = quotient_group(&n, &SubgroupHandle::new(&n, m)?)?;
    let k = q_map.image.clone();
    let q = q_map.image_of(&pg)?;
    out.k_order = k.order();
    out.q_order = q.order();
    let p_elements = pg.elements()?;
    for y in cyclic_subgroup_reps(&k, &q, p)? {
        let ny = stabilizer_subgroup(
            &k,
            &StabilizerTarget::Element(y.clone()),
            StabilizerKind::NormalizerOfSubgroup,
        )?
        .subgroup;
        let cy = stabilizer_subgroup(
            &k,
            &StabilizerTarget::Element(y.clone()),
            StabilizerKind::CentralizerOfElement,
        )?
        .subgroup;
        let a = ny.order() / cy.order() == p - 1;
        let (b, b_violation) = acts_trivially_on_classes(&ny, &cy, &q)?;
        let lift = p_elements
            .iter()
            .find(|x| q_map.forward(x).map(|fx| fx == y).unwrap_or(false))
            .expect("every element of Q lifts to P");
        out.a &= a;
        out.b &= b;
        out.per_y.push(LocalCheck {
            y: lift.to_string(),
            normalizer_order: ny.order(),
            centralizer_order: cy.order(),
            a,
            b,
            b_violation,
        });
    }
    Ok(out)
}

/// Whether conjugation by `n` fixes every conjugacy class of `c/q`.
fn acts_trivially_on_classes(
    n: &PermGroup,
    c: &PermGroup,
    q: &PermGroup,
) -> Result<(bool, Option<String>)> {
    if !c.is_normal_in(n) {
        return Err(crate::error::Error::Internal(
            "centralizer is not normal in the normalizer".into(),
        ));
    }
    let qc = quotient_group(c, &SubgroupHandle::new(c, q.clone())?)?;
    let classes = conjugacy_classes(&qc.image)?;
    for x in n.generators() {
        for (i, rep) in classes.reps.iter().enumerate() {
            let r = qc.section(rep);
            let moved = qc.forward(&r.conjugate_by(x))?;
            let j = classes.class_of(&moved).expect("image lies in quotient");
            if j != i {
                return Ok((
                    false,
                    Some(format!(
                        "{x} moves the class of {r} (order {} modulo Q) to another class",
                        rep.order()
                    )),
                ));
            }
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, parse_builtin};

    fn grp(s: &str) -> PermGroup {
        builtin_group(&parse_builtin(s).unwrap()).unwrap()
    }

    #[test]
    fn d24_local_conditions() {
        let g = grp("dihedral(24)");
        let f = conjb_condition_ii(&g, 3, LocalMode::Frattini).unwrap();
        assert_eq!((f.k_order, f.q_order), (24, 3));
        assert_eq!(f.per_y.len(), 1);
        assert!(f.a && !f.b);
        let pp = conjb_condition_ii(&g, 3, LocalMode::Ppal).unwrap();
        assert_eq!(pp.k_order, 6);
        assert!(pp.holds());
    }

    #[test]
    fn cyclic3_fails_a() {
        let f = conjb_condition_ii(&grp("cyclic(3)"), 3, LocalMode::Frattini).unwrap();
        assert!(!f.a);
        assert_eq!(f.per_y[0].normalizer_order, f.per_y[0].centralizer_order);
    }

    #[test]
    fn prime_two_is_vacuous() {
        let f = conjb_condition_ii(&grp("symmetric(4)"), 2, LocalMode::Frattini).unwrap();
        assert!(f.vacuous && f.holds());
    }
}
