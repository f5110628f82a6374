//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Tolerances are pinned below. Everything else is exact. A criterion that is
//! false as literally stated is printed as FAIL with witnesses and marked
//! non-gating; the corrected statements that replace it are gating.

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use charlab::arith::{units, valuation};
use charlab::blocks::{p_level, rationality_profile, sigma_invariant, RationalityProfile};
use charlab::chartab::{character_table, CharacterTable, ClassValues};
use charlab::cyclotomic::{CycNum, GaloisAut, Rational};
use charlab::group::{
    abelianization_exponent, is_p_solvable, is_solvable, sylow_subgroup, Perm, PermGroup,
};
use charlab::lab::{
    check_conjb, check_continuity, check_exponent_bound, check_mckay_multiset, conjb_condition_ii,
    LocalMode, Scope, Status, Witness,
};
use charlab_cli::corpus::{default_manifest_path, Manifest};
use charlab_cli::groupfile::read_group_file;
use charlab_cli::report::to_json;
use charlab_cli::run::{sweep, Options};

const D24_LIMIT: Duration = Duration::from_secs(1);
const G216_LIMIT: Duration = Duration::from_secs(30);
const SWEEP_LIMIT: Duration = Duration::from_secs(600);
const ORACLE_MAX_ORDER: u64 = 24;
/// Relative size of `det(M - lambda)` below which a candidate eigenvalue is
/// handed to the exact test. Only a prefilter: acceptance is exact.
const DET_PREFILTER: f64 = 1e-6;
const PRIMES: [u64; 3] = [2, 3, 5];

struct Line {
    id: &'static str,
    pass: bool,
    gating: bool,
    detail: String,
}

struct Corpus {
    manifest: Manifest,
    groups: Vec<(String, PermGroup, CharacterTable)>,
}

impl Corpus {
    fn load() -> Corpus {
        let m = Manifest::load(&default_manifest_path()).expect("shipped manifest");
        let groups = m
            .groups
            .iter()
            .map(|e| {
                let gf = read_group_file(&m.path_of(e)).expect("corpus file");
                let t = character_table(&gf.group).expect("table");
                (e.id.clone(), gf.group, t)
            })
            .collect();
        Corpus { manifest: m, groups }
    }

    /// A fresh copy of a group, sharing nothing computed earlier.
    fn reload(&self, id: &str) -> PermGroup {
        let e = self.manifest.groups.iter().find(|e| e.id == id).expect("corpus id");
        read_group_file(&self.manifest.path_of(e)).expect("corpus file").group
    }

    fn get(&self, id: &str) -> &(String, PermGroup, CharacterTable) {
        self.groups.iter().find(|g| g.0 == id).expect("corpus id")
    }
}

fn profile(t: &CharacterTable, p: u64) -> RationalityProfile {
    rationality_profile(t, p).expect("profile")
}

fn sub_flags(w: &[Witness]) -> Option<(bool, bool, bool)> {
    w.iter().find_map(|w| match w {
        Witness::SubFlags { i, ii_a, ii_b } => Some((*i, *ii_a, *ii_b)),
        _ => None,
    })
}

fn criterion_1(c: &Corpus) -> Line {
    let start = Instant::now();
    let g = &c.reload("d24");
    let t = character_table(g).unwrap();
    let prof = profile(&t, 3);
    let fr = check_conjb(&t, &prof, LocalMode::Frattini).unwrap();
    let pp = check_conjb(&t, &prof, LocalMode::Ppal).unwrap();
    let elapsed = start.elapsed();
    let ii = conjb_condition_ii(g, 3, LocalMode::Frattini).unwrap();

    let special = prof
        .rows
        .iter()
        .filter(|r| r.degree == 2 && r.conductor == 12 && r.p_level == 1)
        .count();
    let b0: Vec<_> = prof.rows.iter().filter(|r| r.in_b0).collect();
    let b0_ok = b0.len() == 3 && b0.iter().all(|r| r.p_level == 0);
    let all_a = !ii.per_y.is_empty() && ii.per_y.iter().all(|y| y.a);
    let fr_flags = sub_flags(&fr.witnesses);
    let pp_flags = sub_flags(&pp.witnesses);
    let pass = special == 2
        && b0_ok
        && all_a
        && fr_flags == Some((false, true, false))
        && pp_flags == Some((true, true, true))
        && elapsed < D24_LIMIT;
    Line {
        id: "1",
        pass,
        gating: true,
        detail: format!(
            "D24 p=3: {special} rows (deg 2, c 12, level 1); B0 has {} rows, all level 0: {b0_ok}; \
             frattini (i, ii.a, ii.b) = {fr_flags:?}, ii.a for all {} y: {all_a}; ppal = {pp_flags:?}; \
             {:.3} s < {:?}",
            b0.len(),
            ii.per_y.len(),
            elapsed.as_secs_f64(),
            D24_LIMIT
        ),
    }
}

fn criterion_2(c: &Corpus) -> Line {
    let has_level_one = |t: &CharacterTable| {
        profile(t, 3)
            .rows
            .iter()
            .filter(|r| r.p_prime_degree && r.p_level == 1)
            .count()
    };
    let c3 = has_level_one(&c.get("c3").2);
    let start = Instant::now();
    let t216 = character_table(&c.reload("g216")).unwrap();
    let n216 = has_level_one(&t216);
    let elapsed = start.elapsed();
    Line {
        id: "2",
        pass: c3 >= 1 && n216 >= 1 && t216.order() == 216 && elapsed < G216_LIMIT,
        gating: true,
        detail: format!(
            "p=3 level-1 p'-degree rows: C3 {c3}, order-216 group {n216}; order 216 in {:.3} s < {:?}",
            elapsed.as_secs_f64(),
            G216_LIMIT
        ),
    }
}

fn criterion_3(c: &Corpus) -> Line {
    let mut tried = Vec::new();
    let mut bad = Vec::new();
    for (id, g, t) in &c.groups {
        for p in [3u64, 5] {
            if g.order() % p != 0 {
                continue;
            }
            let s = sylow_subgroup(g, p).unwrap().subgroup;
            if !s.is_normal_in(g) {
                continue;
            }
            let v = check_conjb(t, &profile(t, p), LocalMode::Frattini).unwrap();
            tried.push(format!("{id}@{p}"));
            if !v.holds() {
                bad.push(format!("{id}@{p}"));
            }
        }
    }
    Line {
        id: "3",
        pass: bad.is_empty() && !tried.is_empty(),
        gating: true,
        detail: format!("conjB frattini on {} normal-Sylow instances; false: {bad:?}", tried.len()),
    }
}

fn criterion_4(c: &Corpus) -> Line {
    let mut bad = Vec::new();
    let mut level_one = Vec::new();
    for (id, _, t) in &c.groups {
        let prof = profile(t, 2);
        if !check_continuity(&prof, Scope::B0).holds() {
            bad.push(id.clone());
        }
        for r in prof.rows.iter().filter(|r| r.p_level == 1) {
            level_one.push(format!("{id} row {}", r.index));
        }
    }
    Line {
        id: "4",
        pass: bad.is_empty() && level_one.is_empty(),
        gating: true,
        detail: format!(
            "continuity-b0 at p=2 on {} groups, false: {bad:?}; rows of 2-level 1: {level_one:?}",
            c.groups.len()
        ),
    }
}

// ---------------------------------------------------------------------------
// Criterion 5: orthogonality and an independent class-sum oracle.

fn orthogonality(t: &CharacterTable) -> bool {
    let n = t.len();
    let e = t.exponent();
    let sizes = &t.classes().sizes;
    for i in 0..n {
        for j in i..n {
            let mut s = CycNum::zero(e);
            for c in 0..n {
                let v = &t.irr()[i].values()[c] * &t.irr()[j].values()[c].conj();
                s = &s + &v.scale_int(sizes[c] as i64);
            }
            let want = if i == j { t.order() as i64 } else { 0 };
            if s != CycNum::from_int(e, want) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in a..n {
            let mut s = CycNum::zero(e);
            for chi in t.irr() {
                s = &s + &(&chi.values()[a] * &chi.values()[b].conj());
            }
            let want = if a == b { (t.order() / sizes[a]) as i64 } else { 0 };
            if s != CycNum::from_int(e, want) {
                return false;
            }
        }
    }
    t.degrees().iter().map(|d| d * d).sum::<u64>() == t.order()
}

#[derive(Clone, Copy, Debug)]
struct C64(f64, f64);

impl C64 {
    fn sub(self, o: C64) -> C64 {
        C64(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C64) -> C64 {
        C64(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C64) -> C64 {
        let d = o.0 * o.0 + o.1 * o.1;
        C64((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn abs(self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// `|det(m - lambda)|` by LU with partial pivoting, relative to the row norms.
fn relative_det(m: &[Vec<i64>], lambda: C64) -> f64 {
    let k = m.len();
    let mut a: Vec<Vec<C64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let v = C64(m[i][j] as f64, 0.0);
                    if i == j {
                        v.sub(lambda)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let scale: f64 = a
        .iter()
        .map(|r| r.iter().map(|x| x.abs()).fold(0.0, f64::max).max(1.0))
        .product();
    let mut det = 1.0;
    for col in 0..k {
        let piv = (col..k)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, piv);
        let d = a[col][col];
        if d.abs() == 0.0 {
            return 0.0;
        }
        det *= d.abs();
        for r in col + 1..k {
            let f = a[r][col].div(d);
            for c in col..k {
                let v = a[r][c].sub(f.mul(a[col][c]));
                a[r][c] = v;
            }
        }
    }
    det / scale
}

/// Inverse through the norm: the product of the other Galois conjugates,
/// divided by the (rational) norm.
fn inverse(x: &CycNum) -> CycNum {
    let n = x.order();
    let mut prod = CycNum::one(n);
    for t in units(n as u64).into_iter().filter(|&t| t != 1) {
        prod = &prod * &x.galois(&GaloisAut::new(n, t as i64).unwrap()).unwrap();
    }
    let norm = (&prod * x).to_rational().expect("norm is rational");
    prod.scale(&norm.recip())
}

/// Basis of the right nullspace of `a` (rows x cols) over `Q_e`.
fn nullspace(mut a: Vec<Vec<CycNum>>, cols: usize, e: u32) -> Vec<Vec<CycNum>> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = inverse(&a[row][col]);
        a[row] = a[row].iter().map(|v| v * &inv).collect();
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..cols {
                    let v = &a[r][c] - &(&f * &a[row][c]);
                    a[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![CycNum::zero(e); cols];
            v[f] = CycNum::one(e);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r][f];
            }
            v
        })
        .collect()
}

/// Nondecreasing sequences of length `d` over `0..o`.
fn multisets(o: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn go(o: u64, d: usize, from: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for k in from..o {
            cur.push(k);
            go(o, d, k, cur, out);
            cur.pop();
        }
    }
    go(o, d, 0, &mut cur, &mut out);
    out
}

struct OracleTable {
    /// Engine class of each oracle class.
    engine_class: Vec<usize>,
    sizes: Vec<u64>,
    rows: Vec<Vec<CycNum>>,
}

/// Character table from the class algebra only: brute-force classes,
/// structure constants, joint eigenvectors of the class-multiplication
/// matrices over `Q_e`, then `d^2 = |G| / sum_l w_l w_{l*} / |C_l|`.
fn oracle(g: &PermGroup, t: &CharacterTable) -> OracleTable {
    let elems = g.elements().unwrap();
    let pos: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let n = elems.len();
    let id = g.identity();
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<Perm> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    let order_first: Vec<usize> =
        std::iter::once(pos[&id]).chain((0..n).filter(|&i| elems[i] != id)).collect();
    for i in order_first {
        if class_of[i] != usize::MAX {
            continue;
        }
        let k = reps.len();
        let mut size = 0;
        for h in &elems {
            let c = pos[&elems[i].conjugate_by(h)];
            if class_of[c] == usize::MAX {
                class_of[c] = k;
                size += 1;
            }
        }
        reps.push(elems[i].clone());
        sizes.push(size);
    }
    let k = reps.len();
    let inv_class: Vec<usize> = reps.iter().map(|r| class_of[pos[&r.inverse()]]).collect();
    let e = reps.iter().map(|r| r.order()).fold(1, charlab::arith::lcm) as u32;

    // a[j][i][l] = #{(x, y) in C_j x C_i : xy = g_l}
    let mut a = vec![vec![vec![0i64; k]; k]; k];
    for l in 0..k {
        for x in &elems {
            let y = x.inverse().mul(&reps[l]);
            a[class_of[pos[x]]][class_of[pos[&y]]][l] += 1;
        }
    }
    let order = n as u64;
    let dmax = (1..=order).take_while(|d| d * d <= order).last().unwrap();
    let candidates: Vec<Vec<(CycNum, C64)>> = (0..k)
        .map(|j| {
            let o = reps[j].order();
            let mut seen = BTreeMap::new();
            for d in (1..=dmax).filter(|d| order.is_multiple_of(*d)) {
                for ms in multisets(o, d as usize) {
                    let mut s = CycNum::zero(e);
                    for &x in &ms {
                        s = &s + &CycNum::root(e, (x * (e as u64 / o)) as i64);
                    }
                    let lambda = s.scale(&num_ratio(sizes[j] as i64, d as i64));
                    let (re, im) = lambda.to_f64_pair();
                    seen.entry(lambda.encode()).or_insert((lambda, C64(re, im)));
                }
            }
            seen.into_values()
                .filter(|(_, z)| relative_det(&a[j], *z) < DET_PREFILTER)
                .collect()
        })
        .collect();

    // split Q_e^k into joint eigenspaces of the M_j, (M_j)_{il} = a[j][i][l]
    let unit = |i: usize| {
        let mut v = vec![CycNum::zero(e); k];
        v[i] = CycNum::one(e);
        v
    };
    let mut spaces: Vec<Vec<Vec<CycNum>>> = vec![(0..k).map(unit).collect()];
    for j in 0..k {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let r = basis.len();
            let mut found = 0;
            for (lambda, _) in &candidates[j] {
                // (M_j - lambda) B, a k x r matrix
                let m: Vec<Vec<CycNum>> = (0..k)
                    .map(|i| {
                        (0..r)
                            .map(|c| {
                                let mut s = CycNum::zero(e);
                                for l in 0..k {
                                    if a[j][i][l] != 0 {
                                        s = &s + &basis[c][l].scale_int(a[j][i][l]);
                                    }
                                }
                                &s - &(&basis[c][i] * lambda)
                            })
                            .collect()
                    })
                    .collect();
                let null = nullspace(m, r, e);
                if null.is_empty() {
                    continue;
                }
                found += null.len();
                next.push(
                    null.iter()
                        .map(|coef| {
                            (0..k)
                                .map(|i| {
                                    let mut s = CycNum::zero(e);
                                    for c in 0..r {
                                        s = &s + &(&coef[c] * &basis[c][i]);
                                    }
                                    s
                                })
                                .collect()
                        })
                        .collect(),
                );
            }
            assert_eq!(found, r, "class algebra is not split by the candidates");
        }
        spaces = next;
    }
    assert_eq!(spaces.len(), k, "joint eigenspaces are not one-dimensional");

    let rows = spaces
        .into_iter()
        .map(|mut b| {
            let v = b.pop().unwrap();
            let inv0 = inverse(&v[0]);
            let w: Vec<CycNum> = v.iter().map(|x| x * &inv0).collect();
            let mut s = CycNum::zero(e);
            for l in 0..k {
                let term = &w[l] * &w[inv_class[l]];
                s = &s + &term.scale(&num_ratio(1, sizes[l] as i64));
            }
            let s = s.to_rational().expect("rational");
            let d2 = num_ratio(order as i64, 1) * s.recip();
            assert!(d2.is_integer(), "d^2 = {d2}");
            let d2 = d2.to_integer().to_string().parse::<u64>().unwrap();
            let d = (1..=d2).find(|d| d * d >= d2).unwrap();
            assert_eq!(d * d, d2);
            (0..k)
                .map(|l| w[l].scale(&num_ratio(d as i64, sizes[l] as i64)))
                .collect()
        })
        .collect();
    OracleTable {
        engine_class: reps.iter().map(|r| t.classes().class_of(r).unwrap()).collect(),
        sizes,
        rows,
    }
}

fn num_ratio(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn oracle_matches(g: &PermGroup, t: &CharacterTable) -> Result<(), String> {
    let o = oracle(g, t);
    if o.rows.len() != t.len() {
        return Err(format!("{} oracle rows vs {} engine rows", o.rows.len(), t.len()));
    }
    let degrees: u64 = o.rows.iter().map(|r| r[0].to_integer().unwrap().to_string().parse::<u64>().unwrap().pow(2)).sum();
    if degrees != g.order() {
        return Err(format!("regular character: sum of d^2 = {degrees}"));
    }
    for (l, &c) in o.engine_class.iter().enumerate() {
        if t.classes().sizes[c] != o.sizes[l] {
            return Err(format!("class {l} size {} vs engine {}", o.sizes[l], t.classes().sizes[c]));
        }
    }
    let mut used = vec![false; t.len()];
    for row in &o.rows {
        let hit = t.irr().iter().position(|chi| {
            !used[chi.index()]
                && o.engine_class
                    .iter()
                    .enumerate()
                    .all(|(l, &c)| chi.values()[c].normalized() == row[l].normalized())
        });
        match hit {
            Some(i) => used[i] = true,
            None => return Err("oracle row missing from the engine table".into()),
        }
    }
    Ok(())
}

fn criterion_5(c: &Corpus) -> Line {
    let mut ortho_bad = Vec::new();
    let mut oracle_ids = Vec::new();
    let mut oracle_bad = Vec::new();
    for (id, g, t) in &c.groups {
        if !orthogonality(t) {
            ortho_bad.push(id.clone());
        }
        if g.order() <= ORACLE_MAX_ORDER {
            oracle_ids.push(id.clone());
            if let Err(e) = oracle_matches(g, t) {
                oracle_bad.push(format!("{id}: {e}"));
            }
        }
    }
    Line {
        id: "5",
        pass: ortho_bad.is_empty() && oracle_bad.is_empty() && !oracle_ids.is_empty(),
        gating: true,
        detail: format!(
            "orthogonality on {} tables, false: {ortho_bad:?}; class-sum oracle on {} groups of order <= {ORACLE_MAX_ORDER}, mismatches: {oracle_bad:?}",
            c.groups.len(),
            oracle_ids.len()
        ),
    }
}

fn criterion_6(c: &Corpus) -> Line {
    let mut tried = 0;
    let mut bad = Vec::new();
    for (id, g, t) in &c.groups {
        for p in PRIMES {
            if !is_p_solvable(g, p).unwrap() {
                continue;
            }
            tried += 1;
            if !check_mckay_multiset(t, &profile(t, p)).unwrap().holds() {
                bad.push(format!("{id}@{p}"));
            }
        }
    }
    Line {
        id: "6",
        pass: bad.is_empty() && tried > 0,
        gating: true,
        detail: format!("McKay multiset on {tried} p-solvable instances, false: {bad:?}"),
    }
}

fn criterion_7(c: &Corpus) -> Line {
    let mut tried = Vec::new();
    let mut bad = Vec::new();
    for (id, g, t) in &c.groups {
        if !is_solvable(g).unwrap() {
            continue;
        }
        for p in PRIMES {
            if g.order() % p != 0 {
                continue;
            }
            let s = sylow_subgroup(g, p).unwrap().subgroup;
            let v = valuation(abelianization_exponent(&s).unwrap(), p);
            if v < 2 {
                continue;
            }
            tried.push(format!("{id}@{p}"));
            let prof = profile(t, p);
            let max = prof.rows.iter().filter(|r| r.p_prime_degree).map(|r| r.p_level).max();
            let in_b0 = prof
                .rows
                .iter()
                .any(|r| r.p_prime_degree && r.in_b0 && r.p_level == v);
            let verdict = check_exponent_bound(t, &prof).unwrap();
            if max != Some(v) || !in_b0 || verdict.status != Status::Holds {
                bad.push(format!("{id}@{p}: v = {v}, max = {max:?}, in B0 {in_b0}"));
            }
        }
    }
    Line {
        id: "7",
        pass: bad.is_empty() && !tried.is_empty(),
        gating: true,
        detail: format!("exponent bound on {} instances {tried:?}, false: {bad:?}", tried.len()),
    }
}

/// |G / ker lambda| for a linear character.
fn kernel_index(t: &CharacterTable, row: usize) -> u64 {
    let chi = t.character(row);
    let kernel: u64 = (0..t.len())
        .filter(|&c| chi.values()[c] == chi.values()[0])
        .map(|c| t.classes().sizes[c])
        .sum();
    t.order() / kernel
}

fn criterion_8(c: &Corpus) -> Vec<Line> {
    let mut sigma_tried = 0;
    let mut sigma_bad = Vec::new();
    let mut sigma_tried_corrected = 0;
    let mut sigma_bad_corrected = Vec::new();
    let mut cond_tried = 0;
    let mut cond_bad = Vec::new();
    let mut cond_bad_corrected = Vec::new();
    for (id, g, t) in &c.groups {
        for p in PRIMES {
            let top = valuation(t.exponent() as u64, p);
            for chi in t.irr() {
                let level = p_level(t, chi, p);
                for alpha in 1..=top {
                    let fixed = sigma_invariant(t, chi, p, alpha).unwrap();
                    let ok = fixed == (level <= alpha);
                    sigma_tried += 1;
                    if !ok {
                        sigma_bad.push(format!("{id}@{p} row {} level {level} alpha {alpha}", chi.index()));
                    }
                    if !(p == 2 && alpha == 1) {
                        sigma_tried_corrected += 1;
                        if !ok {
                            sigma_bad_corrected.push(format!("{id}@{p} row {} alpha {alpha}", chi.index()));
                        }
                    }
                }
            }
            if !g.is_p_group(p) || g.order() == 1 {
                continue;
            }
            for chi in t.irr().iter().filter(|chi| chi.degree() == 1) {
                let o = kernel_index(t, chi.index());
                let cond = t.irr()[chi.index()]
                    .values()
                    .iter()
                    .map(|v| v.conductor())
                    .fold(1, |a, b| charlab::arith::lcm(a as u64, b as u64) as u32) as u64;
                cond_tried += 1;
                if cond != o {
                    cond_bad.push(format!("{id} row {}: |P/ker| = {o}, c = {cond}", chi.index()));
                }
                let expected = if o % 4 == 2 { o / 2 } else { o };
                if cond != expected {
                    cond_bad_corrected.push(format!("{id} row {}", chi.index()));
                }
            }
        }
    }
    let head = |v: &[String]| v.iter().take(3).cloned().collect::<Vec<_>>();
    vec![
        Line {
            id: "8",
            pass: sigma_bad.is_empty() && cond_bad.is_empty(),
            gating: false,
            detail: format!(
                "as stated: sigma equivalence {}/{sigma_tried} false, e.g. {:?}; \
                 c(lambda) = |P/ker lambda| {}/{cond_tried} false, e.g. {:?}. \
                 At p = 2 a linear character of order 2 is rational, and sigma_1 \
                 fixes Q(sqrt(-2)); replaced by 8a and 8b",
                sigma_bad.len(),
                head(&sigma_bad),
                cond_bad.len(),
                head(&cond_bad)
            ),
        },
        Line {
            id: "8a",
            pass: sigma_bad_corrected.is_empty() && sigma_tried_corrected > 0,
            gating: true,
            detail: format!(
                "sigma_alpha-invariant iff level <= alpha, all corpus rows, p in {{2,3,5}}, \
                 alpha in [1, v_p(e)] except (p, alpha) = (2, 1): {sigma_tried_corrected} pairs, false: {:?}",
                head(&sigma_bad_corrected)
            ),
        },
        Line {
            id: "8b",
            pass: cond_bad_corrected.is_empty() && cond_tried > 0,
            gating: true,
            detail: format!(
                "p-group linear characters: c(lambda) = o, or o/2 when o = 2 mod 4, o = |P/ker lambda|: \
                 {cond_tried} characters, false: {:?}",
                head(&cond_bad_corrected)
            ),
        },
    ]
}

fn criterion_9() -> Line {
    let m = Manifest::load(&default_manifest_path()).unwrap();
    let opts = Options::default();
    let start = Instant::now();
    let first = sweep(&m, &PRIMES, 1, &opts).unwrap();
    let elapsed = start.elapsed();
    let second = sweep(&m, &PRIMES, 3, &opts).unwrap();
    let same_aggregate = to_json(&first) == to_json(&second);
    let per_report = first.reports.len() == second.reports.len()
        && first
            .reports
            .iter()
            .zip(&second.reports)
            .all(|(a, b)| to_json(a) == to_json(b));
    let groups = m.groups.len();
    let max_order = first.reports.iter().map(|r| r.order).max().unwrap_or(0);
    Line {
        id: "9",
        pass: elapsed < SWEEP_LIMIT
            && groups >= 20
            && max_order <= 2000
            && first.failures.is_empty()
            && first.errors.is_empty()
            && same_aggregate
            && per_report,
        gating: true,
        detail: format!(
            "sweep of {groups} groups (max order {max_order}), {} reports in {:.1} s < {:?}; \
             false verdicts {}, errors {}; second run byte-identical: aggregate {same_aggregate}, per report {per_report}",
            first.reports.len(),
            elapsed.as_secs_f64(),
            SWEEP_LIMIT,
            first.failures.len(),
            first.errors.len()
        ),
    }
}

fn main() -> ExitCode {
    let corpus = Corpus::load();
    let mut lines = vec![
        criterion_1(&corpus),
        criterion_2(&corpus),
        criterion_3(&corpus),
        criterion_4(&corpus),
        criterion_5(&corpus),
        criterion_6(&corpus),
        criterion_7(&corpus),
    ];
    lines.extend(criterion_8(&corpus));
    lines.push(criterion_9());
    let mut ok = true;
    for l in &lines {
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let gate = if l.gating { "" } else { " (non-gating)" };
        println!("criterion {:<3} {verdict}{gate}: {}", l.id, l.detail);
        ok &= l.pass || !l.gating;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
