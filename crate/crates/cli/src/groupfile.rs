//! Group input files.
//!
//! ```text
//! # comment
//! degree 4
//! (1 2 3 4)
//! (1 3)
//! ```
//!
//! or `cayley N` followed by `N` rows of `N` one-based indices, or a single
//! `builtin: <spec>` line. Blank lines and `#` comments are ignored.

use charlab::group::{builtin_group, parse_builtin, BuiltinSpec, Perm, PermGroup};
use serde::Serialize;

use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Generators,
    Cayley,
    Builtin,
}

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub source: Source,
    pub group: PermGroup,
    /// Significant lines only, whitespace-normalized; the cache key input.
    pub canonical: String,
}

fn input(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>().join(" ")))
        .collect();
    let Some(((first_no, first), rest)) = lines.split_first() else {
        return Err(CliError::Input("empty group file".into()));
    };
    let canonical = lines.iter().map(|(_, l)| l.as_str()).collect::<Vec<_>>().join("\n");
    let (source, group) = if let Some(spec) = first.strip_prefix("builtin:") {
        if let Some((n, _)) = rest.first() {
            return Err(input(*n, "nothing may follow a builtin line"));
        }
        let spec = parse_builtin(spec.trim()).map_err(|e| input(*first_no, e))?;
        (Source::Builtin, builtin_group(&spec).map_err(|e| input(*first_no, e))?)
    } else if let Some(n) = first.strip_prefix("degree ") {
        let degree: u32 = n
            .trim()
            .parse()
            .map_err(|_| input(*first_no, format!("bad degree {n:?}")))?;
        if degree == 0 {
            return Err(input(*first_no, "degree must be positive"));
        }
        let gens = rest
            .iter()
            .map(|(no, l)| Perm::parse_cycles(degree, l).map_err(|e| input(*no, e)))
            .collect::<Result<Vec<_>>>()?;
        (Source::Generators, PermGroup::new(degree, gens)?)
    } else if let Some(n) = first.strip_prefix("cayley ") {
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| input(*first_no, format!("bad table size {n:?}")))?;
        if rest.len() != n {
            return Err(input(*first_no, format!("expected {n} rows, found {}", rest.len())));
        }
        let rows = rest
            .iter()
            .map(|(no, l)| {
                let row = l
                    .split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<u32>().map_err(|_| input(*no, format!("bad entry {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != n {
                    return Err(input(*no, format!("expected {n} entries, found {}", row.len())));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        let g = builtin_group(&BuiltinSpec::CayleyTable(rows)).map_err(|e| input(*first_no, e))?;
        (Source::Cayley, g)
    } else {
        return Err(input(
            *first_no,
            "expected `degree N`, `cayley N` or `builtin: <spec>`",
        ));
    };
    Ok(GroupFile {
        source,
        group,
        canonical,
    })
}

pub fn read_group_file(path: &std::path::Path) -> Result<GroupFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_group_file(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}
