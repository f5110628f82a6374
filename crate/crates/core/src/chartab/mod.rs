//! Irreducible character tables and the operations on characters used by
//! the checkers: inner products, induction and restriction, Galois and
//! conjugation twists, inertia groups, kernels, and inflation.

mod dixon;
mod modp;
mod ops;
mod serial;

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ConjClassData, PermGroup};

pub use serial::TABLE_FORMAT_VERSION;
pub use ops::{fusion, induce, inertia_groups, inflate, kernel_of_character, restrict};

static NEXT_TABLE_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_TABLE_ID.fetch_add(1, AtomicOrdering::Relaxed)
}

/// Anything carrying values indexed by the classes of one table.
pub trait ClassValues {
    fn table_id(&self) -> u64;
    fn values(&self) -> &[CycNum];
}

/// An arbitrary class function, e.g. the result of induction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    table_id: u64,
    values: Vec<CycNum>,
}

impl ClassFunction {
    pub fn degree(&self) -> &CycNum {
        &self.values[0]
    }
}

impl ClassValues for ClassFunction {
    fn table_id(&self) -> u64 {
        self.table_id
    }
    fn values(&self) -> &[CycNum] {
        &self.values
    }
}

/// An irreducible character, stored as a row of its table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    table_id: u64,
    index: usize,
    degree: u64,
    values: Vec<CycNum>,
}

impl Character {
    /// Row index in the owning table.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn as_class_function(&self) -> ClassFunction {
        ClassFunction {
            table_id: self.table_id,
            values: self.values.clone(),
        }
    }
}

impl ClassValues for Character {
    fn table_id(&self) -> u64 {
        self.table_id
    }
    fn values(&self) -> &[CycNum] {
        &self.values
    }
}

struct TableInner {
    id: u64,
    group: PermGroup,
    classes: ConjClassData,
    irr: Vec<Character>,
    exponent: u32,
    /// Least row of each row's Galois orbit, computed on demand.
    galois_min: OnceLock<Vec<usize>>,
}

/// The irreducible characters of a group, with rows ordered by degree and
/// then by their values; row 0 is the trivial character.
#[derive(Clone)]
pub struct CharacterTable(Arc<TableInner>);

pub fn character_table(g: &PermGroup) -> Result<CharacterTable> {
    let classes = conjugacy_classes(g)?;
    let exponent = classes
        .rep_orders
        .iter()
        .fold(1u64, |acc, &o| crate::arith::lcm(acc, o));
    let exponent = u32::try_from(exponent)
        .map_err(|_| Error::Capacity { order: g.order(), bound: u32::MAX as u64 })?;
    let rows = dixon::irreducible_values(&classes, exponent)?;
    CharacterTable::assemble(g.clone(), classes, exponent, rows)
}

fn row_cmp(a: &[CycNum], b: &[CycNum]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.canonical_cmp(y))
        .find(|o| *o != Ordering::Equal)
        .unwrap_or(Ordering::Equal)
}

impl CharacterTable {
    fn assemble(
        group: PermGroup,
        classes: ConjClassData,
        exponent: u32,
        mut rows: Vec<Vec<CycNum>>,
    ) -> Result<Self> {
        let degree_of = |r: &[CycNum]| -> Result<u64> {
            r[0].to_integer()
                .and_then(|d| d.to_u64())
                .filter(|&d| d > 0)
                .ok_or_else(|| Error::Internal(format!("bad degree {}", r[0])))
        };
        let one = CycNum::one(exponent);
        let is_trivial = |r: &[CycNum]| r.iter().all(|v| *v == one);
        let mut keyed = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            keyed.push((degree_of(&r)?, !is_trivial(&r), r));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)).then_with(|| row_cmp(&a.2, &b.2)));
        let id = fresh_id();
        let irr = keyed
            .into_iter()
            .enumerate()
            .map(|(index, (degree, _, values))| Character {
                table_id: id,
                index,
                degree,
                values,
            })
            .collect();
        Ok(CharacterTable(Arc::new(TableInner {
            id,
            group,
            classes,
            irr,
            exponent,
            galois_min: OnceLock::new(),
        })))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn group(&self) -> &PermGroup {
        &self.0.group
    }

    pub fn classes(&self) -> &ConjClassData {
        &self.0.classes
    }

    pub fn irr(&self) -> &[Character] {
        &self.0.irr
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.0.irr[i]
    }

    /// Exponent `e` of the group; every value lies in `Q_e`.
    pub fn exponent(&self) -> u32 {
        self.0.exponent
    }

    pub fn len(&self) -> usize {
        self.0.irr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.irr.is_empty()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.0.irr.iter().map(|c| c.degree).collect()
    }

    pub fn order(&self) -> u64 {
        self.0.group.order()
    }

    fn check_owner(&self, f: &impl ClassValues) -> Result<()> {
        if f.table_id() != self.0.id {
            return Err(Error::Domain(format!(
                "class function belongs to table {} but table {} was given",
                f.table_id(),
                self.0.id
            )));
        }
        Ok(())
    }

    /// Wrap values (one per class) as a class function of this table.
    pub fn class_function(&self, values: Vec<CycNum>) -> Result<ClassFunction> {
        if values.len() != self.len() {
            return Err(Error::Domain(format!(
                "{} values given for {} classes",
                values.len(),
                self.len()
            )));
        }
        Ok(ClassFunction {
            table_id: self.0.id,
            values,
        })
    }

    /// The character of the regular representation.
    pub fn regular_character(&self) -> ClassFunction {
        let e = self.0.exponent;
        let mut values = vec![CycNum::zero(e); self.len()];
        values[0] = CycNum::from_int(e, self.order() as i64);
        ClassFunction {
            table_id: self.0.id,
            values,
        }
    }

    /// `(1/|G|) sum_K |K| a(K) conj(b(K))`.
    pub fn inner_product(&self, a: &impl ClassValues, b: &impl ClassValues) -> Result<CycNum> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        let classes = &self.0.classes;
        let mut acc = CycNum::zero(self.0.exponent);
        for (c, (x, y)) in a.values().iter().zip(b.values()).enumerate() {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            let term = (x * &y.conj()).scale_int(classes.sizes[c] as i64);
            acc = &acc + &term;
        }
        let inv = BigRational::new(BigInt::from(1), BigInt::from(self.order()));
        Ok(acc.scale(&inv))
    }

    /// Multiplicities of the irreducibles in a character. Fails with a
    /// domain error when `f` is not a non-negative integer combination.
    pub fn decompose(&self, f: &impl ClassValues) -> Result<Vec<u64>> {
        self.0
            .irr
            .iter()
            .map(|chi| {
                let ip = self.inner_product(f, chi)?;
                ip.to_integer()
                    .filter(|m| !m.is_negative())
                    .and_then(|m| m.to_u64())
                    .ok_or_else(|| {
                        Error::Domain(format!("class function has multiplicity {ip} in row {}", chi.index))
                    })
            })
            .collect()
    }

    /// Row index of the irreducible with exactly these values.
    pub fn find_row(&self, values: &[CycNum]) -> Option<usize> {
        if values.len() != self.len() {
            return None;
        }
        self.0.irr.iter().position(|chi| chi.values.as_slice() == values)
    }

    /// Check row and column orthogonality, the degree equation, and
    /// integrality of all values, exactly.
    pub fn verify(&self) -> Result<()> {
        let k = self.len();
        let classes = &self.0.classes;
        if k != classes.len() {
            return Err(Error::Internal("row count differs from class count".into()));
        }
        let sum_sq: u64 = self.0.irr.iter().map(|c| c.degree * c.degree).sum();
        if sum_sq != self.order() {
            return Err(Error::Internal(format!(
                "degrees squared sum to {sum_sq}, group order {}",
                self.order()
            )));
        }
        if let Some(v) = self
            .0
            .irr
            .iter()
            .flat_map(|c| c.values.iter())
            .find(|v| !v.is_integral())
        {
            return Err(Error::Internal(format!("non-integral character value {v}")));
        }
        let rows = crate::par::map_range(k, |i| -> Result<()> {
            for j in i..k {
                let ip = self.inner_product(&self.0.irr[i], &self.0.irr[j])?;
                let want = CycNum::from_int(1, i64::from(i == j));
                if ip != want {
                    return Err(Error::Internal(format!("<chi_{i}, chi_{j}> = {ip}")));
                }
            }
            Ok(())
        });
        rows.into_iter().collect::<Result<()>>()?;
        let conj: Vec<Vec<CycNum>> = self
            .0
            .irr
            .iter()
            .map(|c| c.values.iter().map(CycNum::conj).collect())
            .collect();
        let cols = crate::par::map_range(k, |a| -> Result<()> {
            for b in a..k {
                let mut acc = CycNum::zero(self.0.exponent);
                for (chi, bar) in self.0.irr.iter().zip(&conj) {
                    acc = &acc + &(&chi.values[a] * &bar[b]);
                }
                let want = if a == b {
                    CycNum::from_int(1, classes.centralizer_order(a) as i64)
                } else {
                    CycNum::zero(1)
                };
                if acc != want {
                    return Err(Error::Internal(format!(
                        "column orthogonality fails for classes {a}, {b}"
                    )));
                }
            }
            Ok(())
        });
        cols.into_iter().collect::<Result<()>>()
    }
}

/// Express `v` in `Q_e` when it lies there, otherwise return it unchanged.
pub(crate) fn into_field(v: &CycNum, e: u32) -> CycNum {
    if v.order() == e {
        return v.clone();
    }
    if e.is_multiple_of(v.order()) {
        return v.embed(e).expect("order divides e");
    }
    let n = v.normalized();
    if e.is_multiple_of(n.order()) {
        n.embed(e).expect("order divides e")
    } else {
        v.clone()
    }
}

impl std::fmt::Debug for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "CharacterTable(order {}, {} classes, degrees {:?})",
            self.order(),
            self.len(),
            self.degrees()
        )
    }
}

impl std::fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for chi in self.irr() {
            let vals: Vec<String> = chi.values.iter().map(|v| v.to_string()).collect();
            writeln!(f, "X.{} [{}]", chi.index + 1, vals.join(", "))?;
        }
        Ok(())
    }
}

impl ClassFunction {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(CycNum::is_zero)
    }
}
