//! The finite field `F_{p^f}` as `F_p[x]/(g)` with `g` the least monic
//! irreducible polynomial of degree `f` (coefficients compared from the top).

use crate::arith;

#[derive(Clone, Debug)]
pub(crate) struct Gf {
    p: u64,
    f: usize,
    /// Monic modulus without its leading coefficient, constant term first.
    modulus: Vec<u64>,
}

/// Field element: `f` coefficients, constant term first.
pub(crate) type Elem = Vec<u64>;

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mod(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = arith::mod_inverse(m[dm], p).expect("nonzero leading coefficient");
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = r[r.len() - 1] * lead_inv % p;
        for (i, &mi) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_mod(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

impl Gf {
    pub fn new(p: u64, f: usize) -> Gf {
        assert!(arith::is_prime(p) && f >= 1);
        let count = p.checked_pow(f as u32).expect("field size fits u64");
        for idx in 0..count {
            // base-p digits of idx, constant term least significant
            let mut low = vec![0u64; f];
            let mut x = idx;
            for slot in low.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            let gf = Gf { p, f, modulus: low };
            if gf.modulus_is_irreducible() {
                return gf;
            }
        }
        unreachable!("irreducible polynomials of every degree exist")
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    fn full_modulus(&self) -> Vec<u64> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.f]
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        e[0] = 1 % self.p;
        e
    }

    pub fn x(&self) -> Elem {
        let r = poly_mod(self.p, &[0, 1], &self.full_modulus());
        self.pad(r)
    }

    fn pad(&self, mut r: Vec<u64>) -> Elem {
        r.resize(self.f, 0);
        r
    }


    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut prod = vec![0u64; 2 * self.f];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        self.pad(poly_mod(self.p, &prod, &self.full_modulus()))
    }

    pub fn scale(&self, a: &Elem, c: u64) -> Elem {
        a.iter().map(|x| x * (c % self.p) % self.p).collect()
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test: `x^(p^f) = x` and `gcd(x^(p^(f/q)) - x, g) = 1`
    /// for every prime `q | f`.
    fn modulus_is_irreducible(&self) -> bool {
        let m = self.full_modulus();
        let x = self.x();
        let frob = |k: usize| -> Elem {
            let mut y = x.clone();
            for _ in 0..k {
                y = self.pow(&y, self.p);
            }
            y
        };
        if frob(self.f) != x {
            return false;
        }
        arith::factorize(self.f as u64).iter().all(|&(q, _)| {
            let mut h = frob(self.f / q as usize);
            h = self.add(&h, &self.scale(&x, self.p - 1));
            poly_gcd(self.p, &h, &m).len() == 1
        })
    }

    /// A primitive `m`-th root of unity, `m | p^f - 1`, derived from the
    /// least multiplicative generator in enumeration order.
    pub fn root_of_unity(&self, m: u64) -> Elem {
        let n = self.size() - 1;
        assert_eq!(n % m, 0, "F_{} has no primitive {m}-th root", self.size());
        let qs = arith::factorize(n);
        for idx in 1..self.size() {
            let mut e = self.zero();
            let mut x = idx;
            for slot in e.iter_mut() {
                *slot = x % self.p;
                x /= self.p;
            }
            if qs.iter().all(|&(q, _)| self.pow(&e, n / q) != self.one()) {
                return self.pow(&e, n / m);
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f4 = Gf::new(2, 2);
        assert_eq!(f4.modulus, vec![1, 1]); // x^2 + x + 1
        let w = f4.root_of_unity(3);
        assert_ne!(w, f4.one());
        assert_eq!(f4.pow(&w, 3), f4.one());
        let f9 = Gf::new(3, 2);
        assert_eq!(f9.modulus, vec![1, 0]); // x^2 + 1
        let z = f9.root_of_unity(8);
        assert_ne!(f9.pow(&z, 4), f9.one());
        assert_eq!(f9.pow(&z, 8), f9.one());
        let f5 = Gf::new(5, 1);
        assert_eq!(f5.root_of_unity(4), vec![2]);
    }
}
