//! Exact arithmetic in cyclotomic fields `Q_n = Q(zeta_n)`.
//!
//! Elements are stored in the power basis `1, zeta_n, ..., zeta_n^(phi(n)-1)`
//! after reduction modulo the `n`-th cyclotomic polynomial, so equality of
//! elements of the same ambient order is equality of coefficient maps.
//! Arithmetic keeps the ambient order; [`CycNum::conductor`] and
//! [`CycNum::normalized`] find the smallest field containing an element.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Reduction data for one cyclotomic field.
struct FieldData {
    n: u32,
    phi: u32,
    /// `x^k mod Phi_n` for `0 <= k < n`, as sparse `(exponent, coefficient)`.
    powers: Vec<Vec<(u32, i64)>>,
}

fn field_cache() -> &'static RwLock<HashMap<u32, Arc<FieldData>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<FieldData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().expect("field cache poisoned").get(&n) {
        return Arc::clone(f);
    }
    let poly = cyclotomic_polynomial(n);
    let built = Arc::new(build_field(n, poly));
    let mut cache = field_cache().write().expect("field cache poisoned");
    Arc::clone(cache.entry(n).or_insert(built))
}

fn build_field(n: u32, poly: Vec<i64>) -> FieldData {
    let phi = (poly.len() - 1) as u32;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi as usize];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(
            cur.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as u32, c))
                .collect(),
        );
        // multiply by x, then replace x^phi = -(poly[0] + ... + poly[phi-1] x^(phi-1))
        let top = cur[phi as usize - 1];
        for i in (1..phi as usize).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi as usize {
                cur[i] = cur[i]
                    .checked_sub(top.checked_mul(poly[i]).expect("cyclotomic overflow"))
                    .expect("cyclotomic overflow");
            }
        }
    }
    FieldData { n, phi, powers }
}

fn poly_cache() -> &'static RwLock<HashMap<u32, Vec<i64>>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, constant term first, computed by exact
/// division of `x^n - 1` by the cyclotomic polynomials of proper divisors.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().read().expect("poly cache poisoned").get(&n) {
        return p.clone();
    }
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in arith::divisors(n as u64) {
        let d = d as u32;
        if d == n {
            continue;
        }
        let div = cyclotomic_polynomial(d);
        num = poly_div_exact(&num, &div);
    }
    poly_cache()
        .write()
        .expect("poly cache poisoned")
        .insert(n, num.clone());
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// An exact element of the cyclotomic field `Q_order`.
#[derive(Clone, Debug)]
pub struct CycNum {
    order: u32,
    coeffs: BTreeMap<u32, Rational>,
}

/// A Galois automorphism `zeta_n -> zeta_n^residue` of `Q_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GaloisAut {
    modulus: u32,
    residue: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Sub,
    Mul,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl CycNum {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        CycNum {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, rat(1))
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::from_rational(order, rat(v))
    }

    pub fn from_bigint(order: u32, v: BigInt) -> Self {
        Self::from_rational(order, Rational::from_integer(v))
    }

    pub fn from_rational(order: u32, v: Rational) -> Self {
        let mut c = Self::zero(order);
        if !v.is_zero() {
            c.coeffs.insert(0, v);
        }
        c
    }

    /// `zeta_order^k` in canonical form.
    pub fn root(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as u32;
        let f = field(order);
        let mut c = Self::zero(order);
        for &(j, v) in &f.powers[e as usize] {
            c.coeffs.insert(j, rat(v));
        }
        c
    }

    /// Build from integer multiplicities of powers of `zeta_order`
    /// (`mults[k]` is the coefficient of `zeta^k`, `k < order`).
    pub fn from_root_multiplicities(order: u32, mults: &[i64]) -> Self {
        let f = field(order);
        let mut acc = vec![0i64; f.phi as usize];
        let mut overflow = false;
        for (k, &m) in mults.iter().enumerate() {
            if m == 0 {
                continue;
            }
            for &(j, v) in &f.powers[k % order as usize] {
                match m.checked_mul(v).and_then(|x| acc[j as usize].checked_add(x)) {
                    Some(x) => acc[j as usize] = x,
                    None => overflow = true,
                }
            }
        }
        if overflow {
            let mut out = Self::zero(order);
            for (k, &m) in mults.iter().enumerate() {
                out = &out + &Self::root(order, k as i64).scale(&rat(m));
            }
            return out;
        }
        let mut c = Self::zero(order);
        for (j, v) in acc.into_iter().enumerate() {
            if v != 0 {
                c.coeffs.insert(j as u32, rat(v));
            }
        }
        c
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients over the power basis of `Q_order`.
    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if !self.is_rational() {
            return None;
        }
        Some(self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// True when every power-basis coefficient is an integer, i.e. the
    /// element lies in `Z[zeta_order]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// Re-express in `Q_m` for a multiple `m` of the current order.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if !m.is_multiple_of(self.order) {
            return Err(Error::Domain(format!(
                "cannot embed Q_{} into Q_{m}",
                self.order
            )));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = m / self.order;
        let f = field(m);
        let mut dense: Vec<Option<Rational>> = vec![None; m as usize];
        for (&k, c) in &self.coeffs {
            dense[(k * step) as usize] = Some(c.clone());
        }
        Ok(reduce_dense(&f, dense))
    }

    fn embed_unchecked(&self, m: u32) -> Self {
        self.embed(m).expect("order divides target")
    }

    /// Bring two numbers into a common field `Q_lcm`.
    fn unify(a: &CycNum, b: &CycNum) -> (u32, CycNum, CycNum) {
        if a.order == b.order {
            return (a.order, a.clone(), b.clone());
        }
        let m = arith::lcm(a.order as u64, b.order as u64) as u32;
        (m, a.embed_unchecked(m), b.embed_unchecked(m))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.order);
        }
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c * r)).collect(),
        }
    }

    pub fn scale_int(&self, v: i64) -> Self {
        self.scale(&rat(v))
    }

    /// Complex conjugation (`zeta -> zeta^-1`).
    pub fn conj(&self) -> Self {
        if self.order <= 2 || self.is_rational() {
            return self.clone();
        }
        self.apply_residue(self.order - 1)
    }

    /// Apply `zeta_order -> zeta_order^t`; `t` must be a unit mod order.
    fn apply_residue(&self, t: u32) -> Self {
        let n = self.order;
        if t % n == 1 % n || self.is_rational() {
            return self.clone();
        }
        let f = field(n);
        let mut dense: Vec<Option<Rational>> = vec![None; n as usize];
        for (&k, c) in &self.coeffs {
            let idx = ((k as u64 * t as u64) % n as u64) as usize;
            dense[idx] = Some(c.clone());
        }
        reduce_dense(&f, dense)
    }

    /// Apply a Galois automorphism whose modulus is a multiple of the order.
    pub fn galois(&self, tau: &GaloisAut) -> Result<Self> {
        if !tau.modulus.is_multiple_of(self.order) {
            return Err(Error::Domain(format!(
                "automorphism of Q_{} applied to element of Q_{}",
                tau.modulus, self.order
            )));
        }
        Ok(self.apply_residue(tau.residue % self.order))
    }

    /// Conductor of the field `Q(self)`.
    pub fn conductor(&self) -> u32 {
        if self.is_rational() {
            return 1;
        }
        let h = fixing_group(std::slice::from_ref(self), self.order)
            .expect("element lies in its own field");
        conductor_from_fixing_group(self.order, &h)
    }

    /// The same number expressed in its minimal cyclotomic field.
    pub fn normalized(&self) -> Self {
        let d = self.conductor();
        if d == self.order {
            return self.clone();
        }
        if self.is_rational() {
            return CycNum {
                order: 1,
                coeffs: self.coeffs.clone(),
            };
        }
        // Solve sum_j x_j embed(zeta_d^j) = self over Q.
        let phi_d = field(d).phi as usize;
        let phi_n = field(self.order).phi as usize;
        let basis: Vec<CycNum> = (0..phi_d)
            .map(|j| CycNum::root(d, j as i64).embed_unchecked(self.order))
            .collect();
        let mut rows: Vec<Vec<Rational>> = (0..phi_n)
            .map(|i| {
                let mut row: Vec<Rational> = basis
                    .iter()
                    .map(|b| b.coeffs.get(&(i as u32)).cloned().unwrap_or_else(Rational::zero))
                    .collect();
                row.push(
                    self.coeffs
                        .get(&(i as u32))
                        .cloned()
                        .unwrap_or_else(Rational::zero),
                );
                row
            })
            .collect();
        let sol = solve_consistent(&mut rows, phi_d).expect("element lies in Q_conductor");
        let mut out = CycNum::zero(d);
        for (j, x) in sol.into_iter().enumerate() {
            if !x.is_zero() {
                out.coeffs.insert(j as u32, x);
            }
        }
        out
    }

    /// Total order used for deterministic sorting of values living in the
    /// same field: compares coefficient maps lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let (_, a, b) = CycNum::unify(self, other);
        let mut ia = a.coeffs.iter();
        let mut ib = b.coeffs.iter();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some((_, c))) => return Rational::zero().cmp(c),
                (Some((_, c)), None) => return c.cmp(&Rational::zero()),
                (Some((ka, ca)), Some((kb, cb))) => {
                    if ka != kb {
                        // the smaller exponent has a nonzero coefficient
                        // where the other has zero
                        return if ka < kb {
                            ca.cmp(&Rational::zero())
                        } else {
                            Rational::zero().cmp(cb)
                        };
                    }
                    match ca.cmp(cb) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
            }
        }
    }

    /// Compact text encoding `order|k:num/den,...` used by the table cache.
    pub fn encode(&self) -> String {
        let mut s = format!("{}|", self.order);
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                if c.is_integer() {
                    format!("{k}:{}", c.numer())
                } else {
                    format!("{k}:{}/{}", c.numer(), c.denom())
                }
            })
            .collect();
        s.push_str(&terms.join(","));
        s
    }

    /// Floating-point approximation, used by tests and human-readable output.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (&k, c) in &self.coeffs {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / self.order as f64;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    pub fn arith(a: &CycNum, b: &CycNum, op: CycOp) -> CycNum {
        match op {
            CycOp::Add => a + b,
            CycOp::Sub => a - b,
            CycOp::Mul => a * b,
        }
    }
}

/// Gaussian elimination on an augmented system known to be consistent.
fn solve_consistent(rows: &mut [Vec<Rational>], unknowns: usize) -> Option<Vec<Rational>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].recip();
        for v in rows[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..=unknowns {
                    let d = &rows[pivot_row][c] * &f;
                    rows[r][c] -= d;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][unknowns].clone();
    }
    Some(sol)
}

fn reduce_dense(f: &FieldData, dense: Vec<Option<Rational>>) -> CycNum {
    let mut out: Vec<Option<Rational>> = vec![None; f.phi as usize];
    for (k, c) in dense.into_iter().enumerate() {
        let Some(c) = c else { continue };
        if c.is_zero() {
            continue;
        }
        for &(j, v) in &f.powers[k] {
            let term = &c * rat(v);
            match &mut out[j as usize] {
                Some(x) => *x += term,
                slot @ None => *slot = Some(term),
            }
        }
    }
    CycNum {
        order: f.n,
        coeffs: out
            .into_iter()
            .enumerate()
            .filter_map(|(j, c)| c.filter(|c| !c.is_zero()).map(|c| (j as u32, c)))
            .collect(),
    }
}

const SMALL: i64 = 1 << 40;

impl CycNum {
    /// Sparse integer coefficients when all of them are small integers.
    fn small_ints(&self) -> Option<Vec<(u32, i64)>> {
        self.coeffs
            .iter()
            .map(|(&k, c)| {
                if !c.is_integer() {
                    return None;
                }
                c.numer()
                    .to_i64()
                    .filter(|v| v.abs() < SMALL)
                    .map(|v| (k, v))
            })
            .collect()
    }
}

fn mul_small(f: &FieldData, a: &[(u32, i64)], b: &[(u32, i64)]) -> Option<CycNum> {
    let n = f.n as usize;
    let mut dense = vec![0i128; n];
    for &(i, x) in a {
        for &(j, y) in b {
            dense[(i as usize + j as usize) % n] += x as i128 * y as i128;
        }
    }
    let mut out = vec![0i128; f.phi as usize];
    for (k, c) in dense.into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        for &(j, v) in &f.powers[k] {
            out[j as usize] = out[j as usize].checked_add(c.checked_mul(v as i128)?)?;
        }
    }
    let mut coeffs = BTreeMap::new();
    for (j, c) in out.into_iter().enumerate() {
        if c != 0 {
            coeffs.insert(j as u32, Rational::from_integer(BigInt::from(c)));
        }
    }
    Some(CycNum { order: f.n, coeffs })
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = CycNum::unify(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (m, mut a, b) = if self.order == rhs.order {
            (self.order, self.clone(), rhs.clone())
        } else {
            CycNum::unify(self, rhs)
        };
        debug_assert_eq!(a.order, m);
        for (k, c) in b.coeffs {
            let e = a.coeffs.entry(k).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                a.coeffs.remove(&k);
            }
        }
        a
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if let Some(r) = rhs.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return rhs.scale(&r);
        }
        let (m, a, b) = if self.order == rhs.order {
            (self.order, self.clone(), rhs.clone())
        } else {
            CycNum::unify(self, rhs)
        };
        let f = field(m);
        if let (Some(da), Some(db)) = (a.small_ints(), b.small_ints()) {
            if let Some(c) = mul_small(&f, &da, &db) {
                return c;
            }
        }
        let mut dense: Vec<Option<Rational>> = vec![None; m as usize];
        for (&i, ci) in &a.coeffs {
            for (&j, cj) in &b.coeffs {
                let idx = ((i + j) % m) as usize;
                let term = ci * cj;
                match &mut dense[idx] {
                    Some(x) => *x += term,
                    slot @ None => *slot = Some(term),
                }
            }
        }
        reduce_dense(&f, dense)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                (&self).$m(rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("E({})", self.order),
                _ => format!("E({})^{k}", self.order),
            };
            if root.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{abs}*{root}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for CycNum {
    type Err = Error;

    /// Parses the [`CycNum::encode`] format.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("malformed cyclotomic encoding `{s}`"));
        let (order, body) = s.split_once('|').ok_or_else(bad)?;
        let order: u32 = order.trim().parse().map_err(|_| bad())?;
        if order == 0 {
            return Err(bad());
        }
        let phi = arith::euler_phi(order as u64) as u32;
        let mut c = CycNum::zero(order);
        if body.is_empty() {
            return Ok(c);
        }
        for term in body.split(',') {
            let (k, v) = term.split_once(':').ok_or_else(bad)?;
            let k: u32 = k.parse().map_err(|_| bad())?;
            let v: Rational = match v.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.parse().map_err(|_| bad())?;
                    let d: BigInt = d.parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Rational::new(n, d)
                }
                None => Rational::from_integer(v.parse().map_err(|_| bad())?),
            };
            if k >= phi || v.is_zero() || c.coeffs.insert(k, v).is_some() {
                return Err(bad());
            }
        }
        Ok(c)
    }
}

impl GaloisAut {
    pub fn new(modulus: u32, residue: i64) -> Result<Self> {
        assert!(modulus >= 1);
        let t = residue.rem_euclid(modulus as i64) as u32;
        if modulus > 1 && arith::gcd(t as u64, modulus as u64) != 1 {
            return Err(Error::InvalidAutomorphism {
                residue: t as u64,
                modulus: modulus as u64,
            });
        }
        Ok(GaloisAut {
            modulus,
            residue: if modulus == 1 { 0 } else { t },
        })
    }

    pub fn identity(modulus: u32) -> Self {
        GaloisAut::new(modulus, 1).expect("1 is a unit")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn is_identity(&self) -> bool {
        self.modulus == 1 || self.residue == 1
    }

    /// Composition; corresponds to multiplying residues.
    pub fn compose(&self, other: &GaloisAut) -> Result<GaloisAut> {
        if self.modulus != other.modulus {
            return Err(Error::Domain(format!(
                "composing automorphisms of Q_{} and Q_{}",
                self.modulus, other.modulus
            )));
        }
        GaloisAut::new(
            self.modulus,
            (self.residue as i64 * other.residue as i64) % self.modulus.max(1) as i64,
        )
    }

    /// Multiplicative order of the residue.
    pub fn order(&self) -> u64 {
        if self.modulus == 1 {
            1
        } else {
            arith::mult_order(self.residue as u64, self.modulus as u64)
        }
    }
}

impl fmt::Display for GaloisAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({})->E({})^{}", self.modulus, self.modulus, self.residue)
    }
}

/// The automorphism of `Q_n` that fixes roots of unity of order prime to `p`
/// and raises `p`-power roots of unity to the `(1 + p^alpha)`-th power.
pub fn sigma_alpha(p: u64, alpha: u32, n: u32) -> GaloisAut {
    assert!(alpha >= 1 && n >= 1);
    let (pa, m) = arith::split_p(n as u64, p);
    let t = if pa == 1 {
        1
    } else {
        let shift = match p.checked_pow(alpha) {
            Some(q) => q % pa,
            None => 0,
        };
        arith::crt((1 + shift) % pa, pa, 1 % m, m)
    };
    GaloisAut::new(n, t as i64).expect("sigma_alpha residue is a unit")
}

/// Residues `t` mod `n` whose automorphism fixes every value.
pub fn fixing_group(values: &[CycNum], n: u32) -> Result<Vec<u32>> {
    let values: Vec<CycNum> = values
        .iter()
        .map(|v| {
            if n.is_multiple_of(v.order) {
                Ok(v.clone())
            } else {
                // allow values carrying a larger ambient order that actually lie in Q_n
                let nv = v.normalized();
                if n.is_multiple_of(nv.order) {
                    Ok(nv)
                } else {
                    Err(Error::Domain(format!("value {v} does not lie in Q_{n}")))
                }
            }
        })
        .collect::<Result<_>>()?;
    let units = arith::units(n as u64);
    let fixed: Vec<u32> = units
        .into_iter()
        .map(|t| t as u32)
        .filter(|&t| {
            values
                .iter()
                .all(|v| v.apply_residue(t % v.order) == *v)
        })
        .collect();
    if n > 1 {
        let set: std::collections::HashSet<u32> = fixed.iter().copied().collect();
        for &a in &fixed {
            for &b in &fixed {
                assert!(
                    set.contains(&(((a as u64 * b as u64) % n as u64) as u32)),
                    "fixing set not closed under multiplication"
                );
            }
        }
    }
    Ok(fixed)
}

/// Smallest divisor `d` of `n` such that every unit `t = 1 (mod d)` lies in
/// the given fixing group.
pub fn conductor_from_fixing_group(n: u32, fixing: &[u32]) -> u32 {
    if n == 1 {
        return 1;
    }
    let mut member = vec![false; n as usize];
    for &t in fixing {
        member[t as usize] = true;
    }
    let units = arith::units(n as u64);
    for d in arith::divisors(n as u64) {
        if units
            .iter()
            .filter(|&&t| t % d == 1 % d)
            .all(|&t| member[t as usize])
        {
            return d as u32;
        }
    }
    n
}

/// Conductor of the field generated by a set of values in `Q_n`.
pub fn field_conductor(values: &[CycNum], n: u32) -> Result<u32> {
    let h = fixing_group(values, n)?;
    Ok(conductor_from_fixing_group(n, &h))
}

/// Degree `[Q(values) : Q]` for values in `Q_n`.
pub fn field_degree(values: &[CycNum], n: u32) -> Result<u64> {
    let h = fixing_group(values, n)?;
    Ok(arith::euler_phi(n as u64) / h.len() as u64)
}
