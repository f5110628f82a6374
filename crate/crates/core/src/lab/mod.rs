//! Checkers for statements about p-rationality levels, with verdicts that
//! carry witnesses.

mod audit;
mod local;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::arith;
use crate::blocks::{rationality_profile, RationalityProfile};
use crate::chartab::{character_table, CharacterTable};
use crate::error::Result;
use crate::group::{
    abelianization_exponent, is_solvable, stabilizer_subgroup, sylow_subgroup, StabilizerKind,
    StabilizerTarget,
};

pub use audit::{
    theorem_audit, AuditEntry, AuditReport, AuditStatus, Counterexample, NORMAL_SUBGROUP_CAP,
    PERMUTATION_ISOMORPHISM_CAP,
};
pub use local::{conjb_condition_ii, ConditionII, LocalCheck, LocalMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    NotApplicable,
}

/// Which rows a profile-based checker quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    All,
    B0,
}

impl Scope {
    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::B0 => "b0",
        }
    }

    fn b0_only(self) -> bool {
        self == Scope::B0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A level in `[2, alpha]` that no scoped row attains.
    MissingLevel { beta: u32 },
    /// A p'-degree row singled out by the checker.
    Row {
        row: usize,
        degree: u64,
        conductor: u32,
        level: u32,
    },
    /// A representative `y` violating a local condition.
    LocalY {
        y: String,
        a: bool,
        b: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        detail: Option<String>,
    },
    /// Both sides of a biconditional.
    SubFlags { i: bool, ii_a: bool, ii_b: bool },
    /// A (level, principal-block) pair counted differently on the two sides.
    MultisetDifference {
        level: u32,
        in_b0: bool,
        global: usize,
        local: usize,
    },
    Exponent {
        expected_level: u32,
        max_level: u32,
        attained_in_b0: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub name: String,
    pub p: u64,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ConjectureVerdict {
    fn new(name: impl Into<String>, p: u64, holds: bool, witnesses: Vec<Witness>) -> Self {
        let status = if holds { Status::Holds } else { Status::Fails };
        assert!(holds || !witnesses.is_empty(), "a failing verdict needs a witness");
        ConjectureVerdict {
            name: name.into(),
            p,
            status,
            witnesses,
            notes: Vec::new(),
        }
    }

    fn not_applicable(name: impl Into<String>, p: u64, note: String) -> Self {
        ConjectureVerdict {
            name: name.into(),
            p,
            status: Status::NotApplicable,
            witnesses: Vec::new(),
            notes: vec![note],
        }
    }

    pub fn holds(&self) -> bool {
        self.status != Status::Fails
    }
}

/// Every level between 2 and the largest scoped level occurs.
pub fn check_continuity(profile: &RationalityProfile, scope: Scope) -> ConjectureVerdict {
    let spectrum = match scope {
        Scope::All => &profile.level_spectrum_all,
        Scope::B0 => &profile.level_spectrum_b0,
    };
    let alpha = spectrum.iter().next_back().copied().unwrap_or(0);
    let missing: Vec<Witness> = (2..=alpha)
        .filter(|b| !spectrum.contains(b))
        .map(|beta| Witness::MissingLevel { beta })
        .collect();
    let mut v = ConjectureVerdict::new(
        format!("continuity-{}", scope.name()),
        profile.p,
        missing.is_empty(),
        missing,
    );
    v.notes.push(format!("largest scoped level {alpha}"));
    v
}

/// No scoped p'-degree row has level exactly 1; returns the offending rows.
pub fn conjb_condition_i(profile: &RationalityProfile, scope: Scope) -> (bool, Vec<Witness>) {
    let rows: Vec<Witness> = profile
        .p_prime_rows(scope.b0_only())
        .filter(|r| r.p_level == 1)
        .map(|r| Witness::Row {
            row: r.index,
            degree: r.degree,
            conductor: r.conductor,
            level: r.p_level,
        })
        .collect();
    (rows.is_empty(), rows)
}

/// Condition (i) holds exactly when condition (ii) does.
pub fn check_conjb(
    table: &CharacterTable,
    profile: &RationalityProfile,
    mode: LocalMode,
) -> Result<ConjectureVerdict> {
    let scope = match mode {
        LocalMode::Frattini => Scope::All,
        LocalMode::Ppal => Scope::B0,
    };
    let (i, mut witnesses) = conjb_condition_i(profile, scope);
    let ii = conjb_condition_ii(table.group(), profile.p, mode)?;
    let holds = i == ii.holds();
    for y in ii.per_y.iter().filter(|y| !(y.a && y.b)) {
        witnesses.push(Witness::LocalY {
            y: y.y.clone(),
            a: y.a,
            b: y.b,
            detail: y.b_violation.clone(),
        });
    }
    witnesses.push(Witness::SubFlags {
        i,
        ii_a: ii.a,
        ii_b: ii.b,
    });
    let mut v = ConjectureVerdict::new(format!("conjb-{}", mode.name()), profile.p, holds, witnesses);
    if ii.vacuous {
        v.notes.push("p = 2: both conditions hold trivially".into());
    } else {
        v.notes.push(format!("|K| = {}, |Q| = {}", ii.k_order, ii.q_order));
    }
    Ok(v)
}

/// Multiset of (level, in principal block) over the p'-degree rows.
fn level_block_multiset(profile: &RationalityProfile) -> BTreeMap<(u32, bool), usize> {
    let mut m = BTreeMap::new();
    for r in profile.p_prime_rows(false) {
        *m.entry((r.p_level, r.in_b0)).or_insert(0) += 1;
    }
    m
}

/// The p'-degree rows of `G` and of `N_G(P)` have the same multiset of
/// (p-part of conductor, principal-block membership).
pub fn check_mckay_multiset(
    table: &CharacterTable,
    profile: &RationalityProfile,
) -> Result<ConjectureVerdict> {
    let p = profile.p;
    let g = table.group();
    let sylow = sylow_subgroup(g, p)?.subgroup;
    let n = stabilizer_subgroup(
        g,
        &StabilizerTarget::Subgroup(sylow),
        StabilizerKind::NormalizerOfSubgroup,
    )?
    .subgroup;
    let local = if n.order() == g.order() {
        profile.clone()
    } else {
        rationality_profile(&character_table(&n)?, p)?
    };
    let a = level_block_multiset(profile);
    let b = level_block_multiset(&local);
    let mut keys: Vec<(u32, bool)> = a.keys().chain(b.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    let witnesses: Vec<Witness> = keys
        .into_iter()
        .filter_map(|k| {
            let (x, y) = (a.get(&k).copied().unwrap_or(0), b.get(&k).copied().unwrap_or(0));
            (x != y).then_some(Witness::MultisetDifference {
                level: k.0,
                in_b0: k.1,
                global: x,
                local: y,
            })
        })
        .collect();
    let mut v = ConjectureVerdict::new("mckay-multiset", p, witnesses.is_empty(), witnesses);
    v.notes.push(format!(
        "|N_G(P)| = {}, {} p'-degree rows on each side",
        n.order(),
        profile.p_prime_rows(false).count()
    ));
    Ok(v)
}

/// When `exp(P/P') >= p^2`, the largest p'-degree level is `v_p(exp(P/P'))`
/// and the principal block attains it.
pub fn check_exponent_bound(
    table: &CharacterTable,
    profile: &RationalityProfile,
) -> Result<ConjectureVerdict> {
    let p = profile.p;
    let g = table.group();
    let sylow = sylow_subgroup(g, p)?.subgroup;
    let exp = abelianization_exponent(&sylow)?;
    let name = "exponent-bound";
    if exp < p * p {
        return Ok(ConjectureVerdict::not_applicable(
            name,
            p,
            format!("exp(P/P') = {exp} < p^2"),
        ));
    }
    let expected = arith::valuation(exp, p);
    let max_level = profile.level_spectrum_all.iter().next_back().copied().unwrap_or(0);
    let attained = profile.level_spectrum_b0.contains(&expected);
    let holds = max_level == expected && attained;
    let witnesses = if holds {
        Vec::new()
    } else {
        vec![Witness::Exponent {
            expected_level: expected,
            max_level,
            attained_in_b0: attained,
        }]
    };
    let mut v = ConjectureVerdict::new(name, p, holds, witnesses);
    v.notes.push(format!("exp(P/P') = {exp}"));
    if !holds && p > 2 && !is_solvable(g)? {
        v.notes.push(
            "conjecture-relevant finding: the bound is conditional for non-solvable groups"
                .into(),
        );
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, parse_builtin};

    fn setup(s: &str, p: u64) -> (CharacterTable, RationalityProfile) {
        let g = builtin_group(&parse_builtin(s).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        let prof = rationality_profile(&t, p).unwrap();
        (t, prof)
    }

    #[test]
    fn continuity_examples() {
        let (_, prof) = setup("cyclic(27)", 3);
        assert_eq!(prof.level_spectrum_all, [0, 1, 2, 3].into_iter().collect());
        assert_eq!(check_continuity(&prof, Scope::All).status, Status::Holds);
        let (_, prof) = setup("dihedral(24)", 3);
        assert_eq!(check_continuity(&prof, Scope::B0).status, Status::Holds);
    }

    #[test]
    fn condition_i_examples() {
        let (_, prof) = setup("cyclic(3)", 3);
        let (ok, w) = conjb_condition_i(&prof, Scope::All);
        assert!(!ok);
        assert_eq!(w.len(), 2);
        let (_, prof) = setup("symmetric(3)", 3);
        assert!(conjb_condition_i(&prof, Scope::All).0);
        let (_, prof) = setup("dihedral(24)", 3);
        assert!(conjb_condition_i(&prof, Scope::B0).0);
        assert!(!conjb_condition_i(&prof, Scope::All).0);
    }

    #[test]
    fn conjb_examples() {
        for s in ["symmetric(3)", "cyclic(3)", "dicyclic(12)"] {
            let (t, prof) = setup(s, 3);
            let v = check_conjb(&t, &prof, LocalMode::Frattini).unwrap();
            assert_eq!(v.status, Status::Holds, "{s}");
        }
        let (t, prof) = setup("dicyclic(12)", 3);
        let v = check_conjb(&t, &prof, LocalMode::Frattini).unwrap();
        assert!(v.witnesses.contains(&Witness::SubFlags {
            i: true,
            ii_a: true,
            ii_b: true
        }));
        let (t, prof) = setup("dihedral(24)", 3);
        let v = check_conjb(&t, &prof, LocalMode::Frattini).unwrap();
        assert_eq!(v.status, Status::Holds);
        assert!(v.witnesses.contains(&Witness::SubFlags {
            i: false,
            ii_a: true,
            ii_b: false
        }));
        let v = check_conjb(&t, &prof, LocalMode::Ppal).unwrap();
        assert!(v.witnesses.contains(&Witness::SubFlags {
            i: true,
            ii_a: true,
            ii_b: true
        }));
    }

    #[test]
    fn mckay_examples() {
        for (s, p) in [("symmetric(4)", 2), ("dihedral(24)", 3), ("symmetric(3)", 3)] {
            let (t, prof) = setup(s, p);
            assert_eq!(check_mckay_multiset(&t, &prof).unwrap().status, Status::Holds, "{s}");
        }
        let (_, prof) = setup("symmetric(4)", 2);
        assert_eq!(level_block_multiset(&prof), [((0, true), 4)].into_iter().collect());
    }

    #[test]
    fn exponent_examples() {
        let (t, prof) = setup("cyclic(9)", 3);
        assert_eq!(check_exponent_bound(&t, &prof).unwrap().status, Status::Holds);
        let (t, prof) = setup("dihedral(18)", 3);
        assert_eq!(check_exponent_bound(&t, &prof).unwrap().status, Status::Holds);
        let (t, prof) = setup("dihedral(24)", 3);
        assert_eq!(
            check_exponent_bound(&t, &prof).unwrap().status,
            Status::NotApplicable
        );
    }
}
