//! Named group constructions and their text grammar.
//!
//! ```text
//! spec := cyclic(n) | dihedral(2n) | symmetric(n) | alternating(n)
//!       | dicyclic(4n) | metacyclic(m, n, r)
//!       | direct_product(spec, spec)
//!       | linear(p; M; M; ...)
//!       | semidirect(p; spec; M; M; ...)
//!       | cayley_table(n; row; row; ...)
//! M    := [[a, b, ...], [c, d, ...], ...]     (entries mod p, columns act on column vectors)
//! row  := [i, j, ...]                          (1-based)
//! ```
//!
//! `metacyclic(m, n, r)` is `C_m : C_n` with the generator of `C_n` acting as
//! `a -> a^r`. `semidirect(p; H; M_1; ...)` is `F_p^k : H` where the `i`-th
//! generator of `H` acts by the matrix `M_i`. `linear(p; ...)` is the matrix
//! group acting on the nonzero vectors of `F_p^k`.

use std::fmt;

use super::{Perm, PermGroup};
use crate::arith;
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinSpec {
    Cyclic(u32),
    /// Dihedral group of the given order `2n`.
    Dihedral(u32),
    Symmetric(u32),
    Alternating(u32),
    /// Dicyclic group of the given order `4n`.
    Dicyclic(u32),
    Metacyclic { m: u32, n: u32, r: u32 },
    DirectProduct(Box<BuiltinSpec>, Box<BuiltinSpec>),
    Linear { p: u64, matrices: Vec<Matrix> },
    Semidirect {
        p: u64,
        acting: Box<BuiltinSpec>,
        matrices: Vec<Matrix>,
    },
    CayleyTable(Vec<Vec<u32>>),
}

pub fn builtin_group(spec: &BuiltinSpec) -> Result<PermGroup> {
    match spec {
        BuiltinSpec::Cyclic(n) => cyclic(*n),
        BuiltinSpec::Dihedral(order) => dihedral(*order),
        BuiltinSpec::Symmetric(n) => symmetric(*n),
        BuiltinSpec::Alternating(n) => alternating(*n),
        BuiltinSpec::Dicyclic(order) => dicyclic(*order),
        BuiltinSpec::Metacyclic { m, n, r } => metacyclic(*m, *n, *r),
        BuiltinSpec::DirectProduct(a, b) => {
            direct_product(&builtin_group(a)?, &builtin_group(b)?)
        }
        BuiltinSpec::Linear { p, matrices } => linear(*p, matrices),
        BuiltinSpec::Semidirect {
            p,
            acting,
            matrices,
        } => semidirect(*p, &builtin_group(acting)?, matrices),
        BuiltinSpec::CayleyTable(table) => cayley_table(table),
    }
}

fn cycle_perm(degree: u32, pts: impl IntoIterator<Item = u32>) -> Result<Perm> {
    let c: Vec<u32> = pts.into_iter().collect();
    if c.len() < 2 {
        return Ok(Perm::identity(degree));
    }
    Perm::from_cycles(degree, &[c])
}

fn cyclic(n: u32) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Input("cyclic(0)".into()));
    }
    PermGroup::new(n, vec![cycle_perm(n, 1..=n)?])
}

fn dihedral(order: u32) -> Result<PermGroup> {
    if order == 0 || !order.is_multiple_of(2) {
        return Err(Error::Input(format!("dihedral({order}): order must be even")));
    }
    let n = order / 2;
    if n < 3 {
        // C2 and the Klein four group: use the faithful two-block action
        return metacyclic(n, 2, (n - 1) % n);
    }
    let rot = cycle_perm(n, 1..=n)?;
    let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
    PermGroup::new(n, vec![rot, refl])
}

fn symmetric(n: u32) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Input("symmetric(0)".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::new(n, vec![cycle_perm(n, [1, 2])?, cycle_perm(n, 1..=n)?])
}

fn alternating(n: u32) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Input("alternating(0)".into()));
    }
    let gens = (3..=n)
        .map(|k| cycle_perm(n, [1, 2, k]))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(n, gens)
}

fn metacyclic(m: u32, n: u32, r: u32) -> Result<PermGroup> {
    if m == 0 || n == 0 {
        return Err(Error::Input("metacyclic with zero order".into()));
    }
    let r = r % m.max(1);
    if m > 1 && arith::gcd(r as u64, m as u64) != 1 {
        return Err(Error::Input(format!("metacyclic({m}, {n}, {r}): r must be a unit")));
    }
    if arith::mod_pow(r as u64, n as u64, m as u64) != 1 % m as u64 {
        return Err(Error::Input(format!(
            "metacyclic({m}, {n}, {r}): r^n must be 1 mod m"
        )));
    }
    let degree = m + n;
    let mut a: Vec<u32> = (0..degree).collect();
    for i in 0..m {
        a[i as usize] = (i + 1) % m;
    }
    let mut b: Vec<u32> = (0..degree).collect();
    for i in 0..m {
        b[i as usize] = ((i as u64 * r as u64) % m as u64) as u32;
    }
    for j in 0..n {
        b[(m + j) as usize] = m + (j + 1) % n;
    }
    let g = PermGroup::new(degree, vec![Perm::from_images(a)?, Perm::from_images(b)?])?;
    debug_assert_eq!(g.order(), m as u64 * n as u64);
    Ok(g)
}

fn dicyclic(order: u32) -> Result<PermGroup> {
    if order < 4 || !order.is_multiple_of(4) {
        return Err(Error::Input(format!("dicyclic({order}): order must be 4n")));
    }
    let n = order / 4;
    let two_n = 2 * n;
    // element a^i x^j has index i + 2n*j
    let mul = |(i, j): (u32, u32), (k, l): (u32, u32)| -> (u32, u32) {
        if j == 0 {
            ((i + k) % two_n, l)
        } else if l == 0 {
            ((i + two_n - k) % two_n, 1)
        } else {
            ((i + two_n - k + n) % two_n, 0)
        }
    };
    let idx = |(i, j): (u32, u32)| i + two_n * j;
    let elems: Vec<(u32, u32)> = (0..2)
        .flat_map(|j| (0..two_n).map(move |i| (i, j)))
        .collect();
    let right = |g: (u32, u32)| -> Result<Perm> {
        Perm::from_images(elems.iter().map(|&h| idx(mul(h, g))).collect())
    };
    PermGroup::new(order, vec![right((1, 0))?, right((0, 1))?])
}

pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let da = a.degree();
    let deg = da + b.degree();
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| g.shifted(0, deg)).collect();
    gens.extend(b.generators().iter().map(|g| g.shifted(da, deg)));
    PermGroup::new(deg, gens)
}

fn check_matrix(p: u64, m: &Matrix, k: usize) -> Result<()> {
    if m.len() != k || m.iter().any(|r| r.len() != k) {
        return Err(Error::Input(format!("matrix {m:?} is not {k}x{k}")));
    }
    if det_mod_p(m, p) == 0 {
        return Err(Error::Input(format!("matrix {m:?} is singular mod {p}")));
    }
    Ok(())
}

fn det_mod_p(m: &Matrix, p: u64) -> u64 {
    let k = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut det = 1u64;
    for c in 0..k {
        let Some(r) = (c..k).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if r != c {
            a.swap(r, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let inv = arith::mod_inverse(a[c][c], p).expect("prime modulus");
        for r in c + 1..k {
            let f = a[r][c] * inv % p;
            for j in c..k {
                a[r][j] = (a[r][j] + p * p - f * a[c][j] % p) % p;
            }
        }
    }
    det
}

fn vec_index(v: &[u64], p: u64) -> u32 {
    v.iter().rev().fold(0u64, |acc, &x| acc * p + x) as u32
}

fn index_vec(mut i: u64, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = i % p;
            i /= p;
            d
        })
        .collect()
}

fn apply_matrix(m: &Matrix, v: &[u64], p: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum::<u64>() % p)
        .collect()
}

fn matrix_dim(p: u64, matrices: &[Matrix]) -> Result<usize> {
    if !arith::is_prime(p) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let k = matrices.first().map(|m| m.len()).unwrap_or(0);
    if k == 0 {
        return Err(Error::Input("no matrices given".into()));
    }
    for m in matrices {
        check_matrix(p, m, k)?;
    }
    Ok(k)
}

fn linear(p: u64, matrices: &[Matrix]) -> Result<PermGroup> {
    let k = matrix_dim(p, matrices)?;
    let size = p.pow(k as u32);
    let degree = (size - 1) as u32;
    let gens = matrices
        .iter()
        .map(|m| {
            Perm::from_images(
                (1..size)
                    .map(|i| vec_index(&apply_matrix(m, &index_vec(i, p, k), p), p) - 1)
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

fn semidirect(p: u64, acting: &PermGroup, matrices: &[Matrix]) -> Result<PermGroup> {
    let k = matrix_dim(p, matrices)?;
    if matrices.len() != acting.generators().len() {
        return Err(Error::Input(format!(
            "semidirect: {} matrices for {} acting generators",
            matrices.len(),
            acting.generators().len()
        )));
    }
    let size = p.pow(k as u32) as u32;
    let hdeg = acting.degree();
    let degree = size + hdeg;
    let matrix_perm = |m: &Matrix| -> Vec<u32> {
        (0..size as u64)
            .map(|i| vec_index(&apply_matrix(m, &index_vec(i, p, k), p), p))
            .collect()
    };
    let mut acting_gens = Vec::new();
    for (m, h) in matrices.iter().zip(acting.generators()) {
        let mut images = matrix_perm(m);
        images.extend(h.images().iter().map(|&x| size + x));
        acting_gens.push(Perm::from_images(images)?);
    }
    // the diagonal action is a faithful copy of H exactly when the matrices
    // define a homomorphism H -> GL(k, p)
    let diagonal = PermGroup::new(degree, acting_gens.clone())?;
    if diagonal.order() != acting.order() {
        return Err(Error::Input(format!(
            "semidirect: matrices do not respect the relations of the acting group \
             (diagonal order {} vs {})",
            diagonal.order(),
            acting.order()
        )));
    }
    let mut gens = Vec::new();
    for i in 0..k {
        let mut e = vec![0u64; k];
        e[i] = 1;
        let mut images: Vec<u32> = (0..size as u64)
            .map(|j| {
                let v = index_vec(j, p, k);
                let w: Vec<u64> = v.iter().zip(&e).map(|(a, b)| (a + b) % p).collect();
                vec_index(&w, p)
            })
            .collect();
        images.extend(size..degree);
        gens.push(Perm::from_images(images)?);
    }
    gens.extend(acting_gens);
    PermGroup::new(degree, gens)
}

fn cayley_table(table: &[Vec<u32>]) -> Result<PermGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Input("empty Cayley table".into()));
    }
    for row in table {
        if row.len() != n {
            return Err(Error::Input("Cayley table is not square".into()));
        }
        let mut seen = vec![false; n];
        for &x in row {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(Error::Input("Cayley table row is not a permutation".into()));
            }
            seen[x as usize - 1] = true;
        }
    }
    let t = |a: usize, b: usize| table[a][b] as usize - 1;
    if !(0..n).any(|e| (0..n).all(|x| t(e, x) == x && t(x, e) == x)) {
        return Err(Error::Input("Cayley table has no identity".into()));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if t(t(a, b), c) != t(a, t(b, c)) {
                    return Err(Error::Input(format!(
                        "Cayley table is not associative at ({}, {}, {})",
                        a + 1,
                        b + 1,
                        c + 1
                    )));
                }
            }
        }
    }
    let gens = (0..n)
        .map(|g| Perm::from_images((0..n).map(|h| t(h, g) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::trivial(n as u32).extend(&gens)
}

/// Parse the text grammar described in the module docs.
pub fn parse_builtin(text: &str) -> Result<BuiltinSpec> {
    let mut parser = Parser {
        s: text.as_bytes(),
        pos: 0,
        text,
    };
    let spec = parser.spec()?;
    parser.ws();
    if parser.pos != parser.s.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(spec)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Input(format!(
            "builtin spec `{}`: {msg} at offset {}",
            self.text, self.pos
        ))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.pos < self.s.len() && self.s[self.pos] == c {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len()
            && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(self.text[start..self.pos].to_ascii_lowercase())
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        if self.pos < self.s.len() && self.s[self.pos] == b'-' {
            self.pos += 1;
        }
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn uint(&mut self) -> Result<u32> {
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.err("expected a non-negative integer"))
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        self.eat(b'[')?;
        let mut out = Vec::new();
        if self.peek() == Some(b']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                _ => return Err(self.err("expected `,` or `]`")),
            }
        }
    }

    fn matrix(&mut self, p: u64) -> Result<Matrix> {
        self.eat(b'[')?;
        let mut rows = Vec::new();
        loop {
            let row = self.int_list()?;
            rows.push(
                row.into_iter()
                    .map(|x| x.rem_euclid(p as i64) as u64)
                    .collect(),
            );
            match self.peek() {
                Some(b',') => self.pos += 1,
                Some(b']') => {
                    self.pos += 1;
                    return Ok(rows);
                }
                _ => return Err(self.err("expected `,` or `]` in matrix")),
            }
        }
    }

    fn matrices(&mut self, p: u64) -> Result<Vec<Matrix>> {
        let mut out = Vec::new();
        while self.peek() == Some(b';') {
            self.pos += 1;
            out.push(self.matrix(p)?);
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<BuiltinSpec> {
        let name = self.ident()?;
        self.eat(b'(')?;
        let spec = match name.as_str() {
            "cyclic" => BuiltinSpec::Cyclic(self.uint()?),
            "dihedral" => BuiltinSpec::Dihedral(self.uint()?),
            "symmetric" => BuiltinSpec::Symmetric(self.uint()?),
            "alternating" => BuiltinSpec::Alternating(self.uint()?),
            "dicyclic" => BuiltinSpec::Dicyclic(self.uint()?),
            "metacyclic" => {
                let m = self.uint()?;
                self.eat(b',')?;
                let n = self.uint()?;
                self.eat(b',')?;
                let r = self.int()?;
                let r = if m == 0 { 0 } else { r.rem_euclid(m as i64) as u32 };
                BuiltinSpec::Metacyclic { m, n, r }
            }
            "direct_product" => {
                let a = self.spec()?;
                self.eat(b',')?;
                let b = self.spec()?;
                BuiltinSpec::DirectProduct(Box::new(a), Box::new(b))
            }
            "linear" => {
                let p = self.uint()? as u64;
                let matrices = self.matrices(p.max(1))?;
                BuiltinSpec::Linear { p, matrices }
            }
            "semidirect" => {
                let p = self.uint()? as u64;
                self.eat(b';')?;
                let acting = self.spec()?;
                let matrices = self.matrices(p.max(1))?;
                BuiltinSpec::Semidirect {
                    p,
                    acting: Box::new(acting),
                    matrices,
                }
            }
            "cayley_table" => {
                let n = self.uint()? as usize;
                let mut rows = Vec::new();
                for _ in 0..n {
                    self.eat(b';')?;
                    let row = self.int_list()?;
                    rows.push(
                        row.into_iter()
                            .map(|x| u32::try_from(x).map_err(|_| self.err("bad entry")))
                            .collect::<Result<Vec<u32>>>()?,
                    );
                }
                BuiltinSpec::CayleyTable(rows)
            }
            other => return Err(self.err(&format!("unknown construction `{other}`"))),
        };
        self.eat(b')')?;
        Ok(spec)
    }
}

fn fmt_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            format!(
                "[{}]",
                r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("[{}]", rows.join(","))
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            BuiltinSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            BuiltinSpec::Symmetric(n) => write!(f, "symmetric({n})"),
            BuiltinSpec::Alternating(n) => write!(f, "alternating({n})"),
            BuiltinSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            BuiltinSpec::Metacyclic { m, n, r } => write!(f, "metacyclic({m},{n},{r})"),
            BuiltinSpec::DirectProduct(a, b) => write!(f, "direct_product({a},{b})"),
            BuiltinSpec::Linear { p, matrices } => {
                write!(f, "linear({p}")?;
                for m in matrices {
                    write!(f, ";{}", fmt_matrix(m))?;
                }
                write!(f, ")")
            }
            BuiltinSpec::Semidirect {
                p,
                acting,
                matrices,
            } => {
                write!(f, "semidirect({p};{acting}")?;
                for m in matrices {
                    write!(f, ";{}", fmt_matrix(m))?;
                }
                write!(f, ")")
            }
            BuiltinSpec::CayleyTable(rows) => {
                write!(f, "cayley_table({}", rows.len())?;
                for r in rows {
                    write!(
                        f,
                        ";[{}]",
                        r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                    )?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> u64 {
        builtin_group(&parse_builtin(s).unwrap()).unwrap().order()
    }

    #[test]
    fn standard_orders() {
        assert_eq!(order("cyclic(3)"), 3);
        assert_eq!(order("dihedral(24)"), 24);
        assert_eq!(order("dihedral(4)"), 4);
        assert_eq!(order("dihedral(2)"), 2);
        assert_eq!(order("symmetric(4)"), 24);
        assert_eq!(order("alternating(5)"), 60);
        assert_eq!(order("dicyclic(12)"), 12);
        assert_eq!(order("dicyclic(8)"), 8);
        assert_eq!(order("metacyclic(9, 3, 4)"), 27);
        assert_eq!(order("direct_product(symmetric(3), cyclic(2))"), 12);
        assert_eq!(order("linear(3; [[1,1],[0,1]]; [[1,0],[1,1]])"), 24);
    }

    #[test]
    fn semidirect_checks_relations() {
        // C2 acting on F_3 by inversion
        assert_eq!(order("semidirect(3; cyclic(2); [[2]])"), 6);
        // the identity matrix is always a valid action
        assert_eq!(order("semidirect(3; cyclic(2); [[1]])"), 6);
        // C2 cannot act by an element of order 4
        let bad = parse_builtin("semidirect(5; cyclic(2); [[2]])").unwrap();
        assert!(matches!(builtin_group(&bad), Err(Error::Input(_))));
        let singular = parse_builtin("semidirect(3; cyclic(2); [[0]])").unwrap();
        assert!(builtin_group(&singular).is_err());
    }

    #[test]
    fn cayley_tables() {
        assert_eq!(order("cayley_table(2; [1,2]; [2,1])"), 2);
        // no identity
        let t = parse_builtin("cayley_table(2; [2,1]; [2,1])").unwrap();
        assert!(builtin_group(&t).is_err());
        // a latin square that is not associative
        let q = parse_builtin(
            "cayley_table(3; [1,3,2]; [3,2,1]; [2,1,3])",
        )
        .unwrap();
        assert!(builtin_group(&q).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "direct_product(symmetric(3),cyclic(2))",
            "semidirect(3;dihedral(8);[[1,0],[0,1]];[[1,0],[0,2]])",
            "metacyclic(9,6,2)",
        ] {
            let spec = parse_builtin(s).unwrap();
            assert_eq!(spec.to_string(), s);
            assert_eq!(parse_builtin(&spec.to_string()).unwrap(), spec);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(parse_builtin("cyclic(").is_err());
        assert!(parse_builtin("frobnicate(3)").is_err());
        assert!(parse_builtin("cyclic(3) x").is_err());
        assert!(builtin_group(&parse_builtin("dihedral(5)").unwrap()).is_err());
        assert!(builtin_group(&parse_builtin("metacyclic(9, 2, 4)").unwrap()).is_err());
    }
}
