//! Dense linear algebra over a small prime field `F_l`, `l < 2^32`.

use crate::arith;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub l: u64,
}

impl Fp {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.l - b) % self.l
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }

    pub fn inv(&self, a: u64) -> u64 {
        arith::mod_inverse(a % self.l, self.l).expect("nonzero element of a prime field")
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        arith::mod_pow(a, e, self.l)
    }

    /// Least generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let factors = arith::factorize(self.l - 1);
        (2..self.l)
            .find(|&g| factors.iter().all(|&(q, _)| self.pow(g, (self.l - 1) / q) != 1))
            .unwrap_or(1)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, p);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let t = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{x : A x = 0}` for an `n x n` matrix `A`.
    pub fn nullspace(&self, a: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = a.first().map(|r| r.len()).unwrap_or(0);
        let mut m: Vec<Vec<u64>> = a.to_vec();
        let pivots = self.rref(&mut m);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![0u64; n];
                x[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    x[pc] = self.sub(0, m[row][f]);
                }
                x
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI - A)`, constant term first,
    /// via reduction to upper Hessenberg form.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        // similarity transform to Hessenberg form
        for c in 0..n.saturating_sub(2) {
            let Some(p) = (c + 1..n).find(|&i| h[i][c] != 0) else {
                continue;
            };
            if p != c + 1 {
                h.swap(p, c + 1);
                for row in h.iter_mut() {
                    row.swap(p, c + 1);
                }
            }
            let inv = self.inv(h[c + 1][c]);
            for i in c + 2..n {
                if h[i][c] == 0 {
                    continue;
                }
                let f = self.mul(h[i][c], inv);
                for j in 0..n {
                    let t = self.mul(f, h[c + 1][j]);
                    h[i][j] = self.sub(h[i][j], t);
                }
                for row in h.iter_mut() {
                    let t = self.mul(f, row[i]);
                    row[c + 1] = self.add(row[c + 1], t);
                }
            }
        }
        // recurrence for the leading principal minors of xI - H
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m in 1..=n {
            let mut pm = vec![0u64; m + 1];
            // (x - h[m-1][m-1]) * p_{m-1}
            let prev = &polys[m - 1];
            for (i, &c) in prev.iter().enumerate() {
                pm[i + 1] = self.add(pm[i + 1], c);
                let t = self.mul(h[m - 1][m - 1], c);
                pm[i] = self.sub(pm[i], t);
            }
            let mut prod = 1u64;
            for i in 1..m {
                prod = self.mul(prod, h[m - i][m - i - 1]);
                let coef = self.mul(prod, h[m - i - 1][m - 1]);
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[m - i - 1].iter().enumerate() {
                    let t = self.mul(coef, c);
                    pm[j] = self.sub(pm[j], t);
                }
            }
            polys.push(pm);
        }
        polys.pop().expect("n+1 polynomials")
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Distinct roots in `F_l`, ascending.
    pub fn roots(&self, poly: &[u64]) -> Vec<u64> {
        (0..self.l).filter(|&x| self.eval(poly, x) == 0).collect()
    }
}
