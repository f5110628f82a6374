//! Conductors, p-rationality levels, sigma-invariance, p-blocks, and the
//! per-group rationality profile.

mod gf;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith;
use crate::chartab::{Character, CharacterTable, ClassValues};
use crate::cyclotomic::{field_conductor, sigma_alpha, CycNum};
use crate::error::{Error, Result};

/// Conductor of the field generated by the values of `chi`.
pub fn character_conductor(table: &CharacterTable, chi: &Character) -> u32 {
    field_conductor(chi.values(), table.exponent()).expect("values lie in Q_e")
}

/// `v_p` of the conductor.
pub fn p_level(table: &CharacterTable, chi: &Character, p: u64) -> u32 {
    arith::valuation(character_conductor(table, chi) as u64, p)
}

/// Whether `chi` is fixed by `sigma_alpha` for the given prime.
pub fn sigma_invariant(table: &CharacterTable, chi: &Character, p: u64, alpha: u32) -> Result<bool> {
    let tau = sigma_alpha(p, alpha, table.exponent());
    Ok(table.twist_galois(chi, &tau)?.index() == chi.index())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockPartition {
    pub p: u64,
    /// Row indices, each block sorted; blocks ordered by least member.
    pub blocks: Vec<Vec<usize>>,
    pub principal_index: usize,
}

impl BlockPartition {
    pub fn principal(&self) -> &[usize] {
        &self.blocks[self.principal_index]
    }

    pub fn block_of(&self, row: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&row))
            .expect("blocks cover every row")
    }
}

/// Central character values `|K| chi(g_K) / chi(1)`, asserted integral.
pub fn central_character(table: &CharacterTable, chi: &Character) -> Result<Vec<CycNum>> {
    let d = BigInt::from(chi.degree());
    chi.values()
        .iter()
        .enumerate()
        .map(|(c, v)| {
            let size = BigInt::from(table.classes().sizes[c]);
            let w = v.scale(&BigRational::new(size, d.clone()));
            if !w.is_integral() {
                return Err(Error::Internal(format!(
                    "central character value {w} of row {} is not integral",
                    chi.index()
                )));
            }
            Ok(w)
        })
        .collect()
}

/// Reduction `Z[zeta_e] -> F_{p^f}` sending `zeta_e` to a fixed primitive
/// `m`-th root of unity, where `e = p^a m`.
struct Reduction {
    field: gf::Gf,
    /// Images of `zeta_e^k` for `k < e`.
    powers: Vec<gf::Elem>,
    p: u64,
}

impl Reduction {
    fn new(e: u32, p: u64) -> Reduction {
        let (_, m) = arith::split_p(e as u64, p);
        let f = if m == 1 { 1 } else { arith::mult_order(p, m) as usize };
        let field = gf::Gf::new(p, f);
        let gamma = field.root_of_unity(m);
        let mut powers = Vec::with_capacity(e as usize);
        let mut cur = field.one();
        for _ in 0..e {
            powers.push(cur.clone());
            cur = field.mul(&cur, &gamma);
        }
        Reduction { field, powers, p }
    }

    fn reduce(&self, v: &CycNum, e: u32) -> gf::Elem {
        debug_assert_eq!(v.order(), e);
        let mut acc = self.field.zero();
        for (&k, c) in v.coeffs() {
            let c = c.to_integer() % BigInt::from(self.p);
            let c = c.to_i64().expect("residue fits i64");
            let term = self.field.scale(&self.powers[k as usize], c.rem_euclid(self.p as i64) as u64);
            acc = self.field.add(&acc, &term);
        }
        acc
    }
}

/// Rows sharing reduced central characters, per prime `p`.
pub fn block_partition(table: &CharacterTable, p: u64) -> Result<BlockPartition> {
    if !arith::is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let e = table.exponent();
    let red = Reduction::new(e, p);
    let keys = crate::par::map_slice(table.irr(), |chi| -> Result<Vec<gf::Elem>> {
        Ok(central_character(table, chi)?
            .iter()
            .map(|w| red.reduce(w, e))
            .collect())
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<usize> = Vec::new();
    for (i, key) in keys.iter().enumerate() {
        match reps.iter().position(|&r| keys[r] == *key) {
            Some(b) => blocks[b].push(i),
            None => {
                reps.push(i);
                blocks.push(vec![i]);
            }
        }
    }
    let principal_index = blocks.iter().position(|b| b.contains(&0)).expect("row 0 present");
    Ok(BlockPartition {
        p,
        blocks,
        principal_index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub index: usize,
    pub degree: u64,
    pub conductor: u32,
    pub p_level: u32,
    pub p_prime_degree: bool,
    pub in_b0: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityProfile {
    pub group_order: u64,
    pub p: u64,
    pub rows: Vec<ProfileRow>,
    /// Levels of the p'-degree rows.
    pub level_spectrum_all: BTreeSet<u32>,
    /// Levels of the p'-degree rows in the principal block.
    pub level_spectrum_b0: BTreeSet<u32>,
}

impl RationalityProfile {
    /// The p'-degree rows, optionally restricted to the principal block.
    pub fn p_prime_rows(&self, b0_only: bool) -> impl Iterator<Item = &ProfileRow> {
        self.rows
            .iter()
            .filter(move |r| r.p_prime_degree && (!b0_only || r.in_b0))
    }
}

pub fn rationality_profile(table: &CharacterTable, p: u64) -> Result<RationalityProfile> {
    let blocks = block_partition(table, p)?;
    let principal = blocks.principal();
    let rows: Vec<ProfileRow> = crate::par::map_slice(table.irr(), |chi| {
        let conductor = character_conductor(table, chi);
        ProfileRow {
            index: chi.index(),
            degree: chi.degree(),
            conductor,
            p_level: arith::valuation(conductor as u64, p),
            p_prime_degree: chi.degree() % p != 0,
            in_b0: principal.contains(&chi.index()),
        }
    });
    let spectrum = |b0: bool| {
        rows.iter()
            .filter(|r| r.p_prime_degree && (!b0 || r.in_b0))
            .map(|r| r.p_level)
            .collect()
    };
    Ok(RationalityProfile {
        group_order: table.order(),
        p,
        level_spectrum_all: spectrum(false),
        level_spectrum_b0: spectrum(true),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::{builtin_group, parse_builtin};

    fn table(s: &str) -> CharacterTable {
        character_table(&builtin_group(&parse_builtin(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_levels() {
        let t = table("cyclic(9)");
        let prof = rationality_profile(&t, 3).unwrap();
        assert_eq!(prof.level_spectrum_all, [0, 1, 2].into_iter().collect());
        let faithful = t.irr().iter().find(|c| character_conductor(&t, c) == 9).unwrap();
        assert!(!sigma_invariant(&t, faithful, 3, 1).unwrap());
        assert!(sigma_invariant(&t, faithful, 3, 2).unwrap());
        assert_eq!(block_partition(&t, 3).unwrap().blocks.len(), 1);
        let c3 = table("cyclic(3)");
        for chi in &c3.irr()[1..] {
            assert_eq!(character_conductor(&c3, chi), 3);
            assert_eq!(p_level(&c3, chi, 3), 1);
        }
    }

    #[test]
    fn d24_at_three() {
        let t = table("dihedral(24)");
        let prof = rationality_profile(&t, 3).unwrap();
        assert_eq!(prof.level_spectrum_all, [0, 1].into_iter().collect());
        assert_eq!(prof.level_spectrum_b0, [0].into_iter().collect());
        let level1: Vec<&ProfileRow> = prof.rows.iter().filter(|r| r.p_level == 1).collect();
        assert_eq!(level1.len(), 2);
        assert!(level1.iter().all(|r| r.degree == 2 && r.conductor == 12 && !r.in_b0));
        let b = block_partition(&t, 3).unwrap();
        assert_eq!(b.principal().len(), 3);
    }

    #[test]
    fn s3_single_block_at_three() {
        let t = table("symmetric(3)");
        let b = block_partition(&t, 3).unwrap();
        assert_eq!(b.blocks, vec![vec![0, 1, 2]]);
        let b2 = block_partition(&t, 2).unwrap();
        assert_eq!(b2.blocks.len(), 2);
        assert_eq!(b2.principal(), &[0, 1]);
    }
}
