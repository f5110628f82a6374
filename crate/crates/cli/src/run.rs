//! The analyze, check and sweep commands.

use std::str::FromStr;
use std::time::Instant;

use charlab::arith::is_prime;
use charlab::blocks::{block_partition, rationality_profile};
use charlab::chartab::{character_table, CharacterTable};
use charlab::lab::{
    check_conjb, check_continuity, check_exponent_bound, check_mckay_multiset, theorem_audit,
    LocalMode, Scope,
};
use rayon::prelude::*;

use crate::cache::TableCache;
use crate::corpus::Manifest;
use crate::groupfile::{read_group_file, GroupFile};
use crate::report::{Aggregate, Failure, GroupError, Profile, Report, REPORT_SCHEMA, SIGMA_CONVENTION};
use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Checker {
    Continuity(Scope),
    ConjB(LocalMode),
    Mckay,
    Exponent,
    Audit,
}

impl Checker {
    /// Everything a sweep runs.
    pub const ALL: [Checker; 7] = [
        Checker::Continuity(Scope::All),
        Checker::Continuity(Scope::B0),
        Checker::ConjB(LocalMode::Frattini),
        Checker::ConjB(LocalMode::Ppal),
        Checker::Mckay,
        Checker::Exponent,
        Checker::Audit,
    ];

    /// Resolve a bare `continuity` to the given scope.
    pub fn with_scope(self, scope: Scope) -> Checker {
        match self {
            Checker::Continuity(_) => Checker::Continuity(scope),
            c => c,
        }
    }
}

impl FromStr for Checker {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Checker> {
        Ok(match s {
            "continuity" | "continuity-b0" => Checker::Continuity(Scope::B0),
            "continuity-all" => Checker::Continuity(Scope::All),
            "conjb" | "conjb-frattini" => Checker::ConjB(LocalMode::Frattini),
            "conjb-ppal" => Checker::ConjB(LocalMode::Ppal),
            "mckay" => Checker::Mckay,
            "exponent" => Checker::Exponent,
            "audit" => Checker::Audit,
            _ => {
                return Err(CliError::Input(format!(
                    "unknown checker {s:?}; expected continuity, continuity-all, conjb, \
                     conjb-ppal, mckay, exponent or audit"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub cache: Option<TableCache>,
    pub timing: bool,
}

pub fn validate_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Input(format!("{p} is not prime")))
    }
}

pub fn table_for(gf: &GroupFile, opts: &Options) -> Result<CharacterTable> {
    match &opts.cache {
        Some(c) => Ok(c.table(gf)?.0),
        None => Ok(character_table(&gf.group)?),
    }
}

/// Profile plus the requested checkers, for one prime.
pub fn build_report(
    id: &str,
    table: &CharacterTable,
    p: u64,
    checkers: &[Checker],
    timing: Option<Instant>,
) -> Result<Report> {
    validate_prime(p)?;
    let profile = rationality_profile(table, p)?;
    let blocks = block_partition(table, p)?;
    let mut verdicts = Vec::new();
    let mut audit = None;
    for c in checkers {
        match *c {
            Checker::Continuity(scope) => verdicts.push(check_continuity(&profile, scope)),
            Checker::ConjB(mode) => verdicts.push(check_conjb(table, &profile, mode)?),
            Checker::Mckay => verdicts.push(check_mckay_multiset(table, &profile)?),
            Checker::Exponent => verdicts.push(check_exponent_bound(table, &profile)?),
            Checker::Audit => audit = Some(theorem_audit(table, &profile)?),
        }
    }
    Ok(Report {
        schema: REPORT_SCHEMA,
        tool_version: charlab::VERSION,
        group: id.to_string(),
        order: table.order(),
        classes: table.len(),
        p,
        sigma_convention: SIGMA_CONVENTION,
        profile: Profile {
            rows: profile.rows,
            level_spectrum_all: profile.level_spectrum_all,
            level_spectrum_b0: profile.level_spectrum_b0,
            blocks: blocks.blocks,
        },
        verdicts,
        audit,
        timing_ms: timing.map(|t| t.elapsed().as_secs_f64() * 1e3),
    })
}

pub fn analyze(id: &str, gf: &GroupFile, p: u64, opts: &Options) -> Result<Report> {
    check(id, gf, p, &[], opts)
}

pub fn check(id: &str, gf: &GroupFile, p: u64, checkers: &[Checker], opts: &Options) -> Result<Report> {
    validate_prime(p)?;
    let start = opts.timing.then(Instant::now);
    let table = table_for(gf, opts)?;
    build_report(id, &table, p, checkers, start)
}

fn sweep_group(m: &Manifest, idx: usize, primes: &[u64], opts: &Options) -> Result<Vec<Report>> {
    let e = &m.groups[idx];
    let start = opts.timing.then(Instant::now);
    let gf = read_group_file(&m.path_of(e))?;
    if let Some(order) = e.order {
        if gf.group.order() != order {
            return Err(CliError::Input(format!(
                "expected order {order}, computed {}",
                gf.group.order()
            )));
        }
    }
    let table = table_for(&gf, opts)?;
    if let Some(k) = e.classes {
        if table.len() != k {
            return Err(CliError::Input(format!(
                "expected {k} classes, computed {}",
                table.len()
            )));
        }
    }
    primes
        .iter()
        .map(|&p| build_report(&e.id, &table, p, &Checker::ALL, start))
        .collect()
}

/// Every checker and audit on every (group, prime). Group-level errors are
/// recorded, never fatal; output order does not depend on `jobs`.
pub fn sweep(m: &Manifest, primes: &[u64], jobs: usize, opts: &Options) -> Result<Aggregate> {
    for &p in primes {
        validate_prime(p)?;
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Input(format!("cannot start {jobs} workers: {e}")))?;
    let results: Vec<(String, Result<Vec<Report>>)> = pool.install(|| {
        (0..m.groups.len())
            .into_par_iter()
            .map(|i| (m.groups[i].id.clone(), sweep_group(m, i, &primes, opts)))
            .collect()
    });
    let mut reports = Vec::new();
    let mut errors = Vec::new();
    for (id, r) in results {
        match r {
            Ok(rs) => reports.extend(rs),
            Err(e) => errors.push(GroupError {
                group: id,
                message: e.to_string(),
            }),
        }
    }
    reports.sort_by(|a, b| a.group.cmp(&b.group).then(a.p.cmp(&b.p)));
    errors.sort_by(|a, b| a.group.cmp(&b.group));
    let failures = reports
        .iter()
        .flat_map(|r| {
            r.failures().into_iter().map(|check| Failure {
                group: r.group.clone(),
                p: r.p,
                check,
            })
        })
        .collect();
    Ok(Aggregate {
        schema: REPORT_SCHEMA,
        tool_version: charlab::VERSION,
        primes,
        failures,
        errors,
        reports,
    })
}

pub fn report_exit_code(r: &Report) -> i32 {
    if r.failures().is_empty() {
        crate::exit::OK
    } else {
        crate::exit::COUNTEREXAMPLE
    }
}

pub fn aggregate_exit_code(a: &Aggregate) -> i32 {
    if !a.errors.is_empty() {
        crate::exit::INPUT_ERROR
    } else if !a.failures.is_empty() {
        crate::exit::COUNTEREXAMPLE
    } else {
        crate::exit::OK
    }
}
