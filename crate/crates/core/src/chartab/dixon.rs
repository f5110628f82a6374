//! Dixon–Schneider: simultaneous eigenvectors of the class matrices over
//! `F_l` with `l = 1 (mod e)`, lifted to exact values by a discrete Fourier
//! sum over the power maps.

use std::collections::HashMap;

use super::modp::Fp;
use crate::arith;
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::{ConjClassData, Perm};
use crate::par;

/// How many admissible primes to try before giving up.
const MAX_PRIMES: usize = 24;

/// Class multiplication coefficients, computed one class at a time.
struct ClassMatrices<'a> {
    classes: &'a ConjClassData,
    members: Vec<Vec<usize>>,
    cache: HashMap<usize, Vec<Vec<u64>>>,
}

impl<'a> ClassMatrices<'a> {
    fn new(classes: &'a ConjClassData) -> Self {
        ClassMatrices {
            classes,
            members: classes.members(),
            cache: HashMap::new(),
        }
    }

    /// `m[i][l]` = number of pairs `(x, y)` in `C_i x C_j` with `xy = g_l`.
    fn matrix(&mut self, j: usize) -> &Vec<Vec<u64>> {
        if !self.cache.contains_key(&j) {
            let k = self.classes.len();
            let idx = self.classes.element_index();
            let inverses: Vec<Perm> = self.members[j]
                .iter()
                .map(|&y| idx.get(y).inverse())
                .collect();
            let columns: Vec<Vec<u64>> = par::map_range(k, |l| {
                let z = &self.classes.reps[l];
                let mut col = vec![0u64; k];
                for yinv in &inverses {
                    let x = z.mul(yinv);
                    col[self.classes.class_of(&x).expect("product lies in group")] += 1;
                }
                col
            });
            let m = (0..k)
                .map(|i| (0..k).map(|l| columns[l][i]).collect())
                .collect();
            self.cache.insert(j, m);
        }
        &self.cache[&j]
    }
}

/// Least prime `l = 1 (mod e)` with `l > bound`, after `skip` earlier ones.
fn admissible_prime(e: u64, bound: u64, skip: usize) -> u64 {
    let mut l = (bound / e) * e + 1;
    if l <= bound {
        l += e;
    }
    let mut found = 0;
    loop {
        if arith::is_prime(l) {
            if found == skip {
                return l;
            }
            found += 1;
        }
        l += e;
    }
}

/// Irreducible character values, one row per character, unordered.
pub(crate) fn irreducible_values(classes: &ConjClassData, exponent: u32) -> Result<Vec<Vec<CycNum>>> {
    let order = classes.group().order();
    let bound = 2 * (arith::integer_sqrt(order) + 1);
    let mut matrices = ClassMatrices::new(classes);
    for attempt in 0..MAX_PRIMES {
        let l = admissible_prime(exponent as u64, bound, attempt);
        if let Some(rows) = try_prime(&mut matrices, exponent, l)? {
            return Ok(rows);
        }
    }
    Err(Error::Internal(format!(
        "eigenspace splitting failed for {MAX_PRIMES} primes"
    )))
}

/// Splits `basis` (rows in reduced echelon form) into eigenspaces of `m`.
/// Returns `None` when `m` is not diagonalizable over `F_l` on the space.
fn split(f: &Fp, basis: &[Vec<u64>], pivots: &[usize], m: &[Vec<u64>]) -> Option<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let k = m.len();
    // coordinates of m * b_s in the basis, read off at the pivot columns
    let mut rt = vec![vec![0u64; d]; d];
    for (s, b) in basis.iter().enumerate() {
        let w: Vec<u64> = (0..k)
            .map(|i| {
                m[i].iter()
                    .zip(b)
                    .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x % f.l, y)))
            })
            .collect();
        let coords: Vec<u64> = pivots.iter().map(|&p| w[p]).collect();
        // the space must be invariant
        for (i, &wi) in w.iter().enumerate() {
            let recon = coords
                .iter()
                .zip(basis)
                .fold(0, |acc, (&c, bt)| f.add(acc, f.mul(c, bt[i])));
            if recon != wi {
                return None;
            }
        }
        for (t, &c) in coords.iter().enumerate() {
            rt[t][s] = c;
        }
    }
    let roots = f.roots(&f.charpoly(&rt));
    let mut parts = Vec::new();
    let mut total = 0;
    for lambda in roots {
        let shifted: Vec<Vec<u64>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| if i == j { f.sub(rt[i][j], lambda) } else { rt[i][j] })
                    .collect()
            })
            .collect();
        let mut vecs: Vec<Vec<u64>> = f
            .nullspace(&shifted)
            .into_iter()
            .map(|x| {
                (0..k)
                    .map(|i| {
                        x.iter()
                            .zip(basis)
                            .fold(0, |acc, (&c, b)| f.add(acc, f.mul(c, b[i])))
                    })
                    .collect()
            })
            .collect();
        f.rref(&mut vecs);
        total += vecs.len();
        parts.push(vecs);
    }
    (total == d).then_some(parts)
}

fn try_prime(mats: &mut ClassMatrices, exponent: u32, l: u64) -> Result<Option<Vec<Vec<CycNum>>>> {
    let f = Fp { l };
    let classes = mats.classes;
    let k = classes.len();
    let order = classes.group().order();
    let identity: Vec<Vec<u64>> = (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m = mats.matrix(j).clone();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let pivots: Vec<usize> = space
                .iter()
                .map(|r| r.iter().position(|&x| x != 0).expect("nonzero basis row"))
                .collect();
            match split(&f, &space, &pivots, &m) {
                Some(parts) => next.extend(parts),
                None => return Ok(None),
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Ok(None);
    }

    let z = f.pow(f.primitive_root(), (l - 1) / exponent as u64);
    let sqrt_bound = arith::integer_sqrt(order);
    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Ok(None);
        }
        let inv0 = f.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| f.mul(x, inv0)).collect();
        // sum_l omega_l omega_l* / |C_l| = |G| / d^2
        let s = (0..k).fold(0, |acc, c| {
            let t = f.mul(omega[c], omega[classes.inverse_class[c]]);
            f.add(acc, f.mul(t, f.inv(classes.sizes[c] % l)))
        });
        if s == 0 {
            return Ok(None);
        }
        let d2 = f.mul(order % l, f.inv(s));
        let Some(d) = (1..=sqrt_bound).find(|&d| f.mul(d % l, d % l) == d2) else {
            return Ok(None);
        };
        let chi: Vec<u64> = (0..k)
            .map(|c| f.mul(f.mul(omega[c], d), f.inv(classes.sizes[c] % l)))
            .collect();
        let mut row = Vec::with_capacity(k);
        for c in 0..k {
            let o = classes.rep_orders[c];
            let w = f.pow(z, exponent as u64 / o);
            let winv = f.inv(w);
            let oinv = f.inv(o % l);
            let mut mults = vec![0i64; exponent as usize];
            let mut total = 0;
            for kk in 0..o {
                let step = f.pow(winv, kk);
                let mut acc = 0;
                let mut pw = 1;
                for jj in 0..o {
                    let val = chi[classes.power_map(c, jj as i64)];
                    acc = f.add(acc, f.mul(val, pw));
                    pw = f.mul(pw, step);
                }
                let m = f.mul(acc, oinv);
                if m > d {
                    return Ok(None);
                }
                total += m;
                mults[(kk * (exponent as u64 / o)) as usize] = m as i64;
            }
            if total != d {
                return Ok(None);
            }
            row.push(CycNum::from_root_multiplicities(exponent, &mults));
        }
        rows.push(row);
    }
    let sum_sq: u64 = rows
        .iter()
        .map(|r| {
            let d = r[0].to_integer().and_then(|x| u64::try_from(x).ok()).unwrap_or(0);
            d * d
        })
        .sum();
    if sum_sq != order {
        return Ok(None);
    }
    Ok(Some(rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_primes() {
        assert_eq!(admissible_prime(3, 4, 0), 7);
        assert_eq!(admissible_prime(3, 4, 1), 13);
        assert_eq!(admissible_prime(12, 10, 0), 13);
        assert_eq!(admissible_prime(1, 10, 0), 11);
    }
}
