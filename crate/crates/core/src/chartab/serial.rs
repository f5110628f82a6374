//! Line-based text encoding of a character table, used by the table cache.
//!
//! ```text
//! charlab-table 1
//! order 6
//! exponent 6
//! classes 3
//! class 0 size 1 order 1 rep ()
//! ...
//! chi 0 degree 1 values 6|0:1;6|0:1;6|0:1
//! ```

use std::fmt::Write as _;

use super::{CharacterTable, ClassValues};
use crate::cyclotomic::CycNum;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, PermGroup};

pub const TABLE_FORMAT_VERSION: u32 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(format!("table encoding: {}", msg.into()))
}

impl CharacterTable {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let classes = self.classes();
        writeln!(s, "charlab-table {TABLE_FORMAT_VERSION}").unwrap();
        writeln!(s, "order {}", self.order()).unwrap();
        writeln!(s, "exponent {}", self.exponent()).unwrap();
        writeln!(s, "classes {}", classes.len()).unwrap();
        for (i, rep) in classes.reps.iter().enumerate() {
            writeln!(
                s,
                "class {i} size {} order {} rep {rep}",
                classes.sizes[i], classes.rep_orders[i]
            )
            .unwrap();
        }
        for chi in self.irr() {
            let vals: Vec<String> = chi.values().iter().map(CycNum::encode).collect();
            writeln!(s, "chi {} degree {} values {}", chi.index(), chi.degree(), vals.join(";"))
                .unwrap();
        }
        s
    }

    /// Rebuild a table for `group` from [`CharacterTable::to_text`] output.
    /// Class data is recomputed and must agree with the encoding.
    pub fn from_text(group: &PermGroup, text: &str) -> Result<CharacterTable> {
        let mut lines = text.lines();
        let mut field = |key: &str| -> Result<String> {
            let line = lines.next().ok_or_else(|| bad(format!("missing `{key}` line")))?;
            line.strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| bad(format!("expected `{key}`, found `{line}`")))
        };
        let version = field("charlab-table")?;
        if version != TABLE_FORMAT_VERSION.to_string() {
            return Err(bad(format!("unsupported version {version}")));
        }
        let order: u64 = field("order")?.parse().map_err(|_| bad("order"))?;
        let exponent: u32 = field("exponent")?.parse().map_err(|_| bad("exponent"))?;
        let k: usize = field("classes")?.parse().map_err(|_| bad("class count"))?;
        if order != group.order() {
            return Err(bad(format!("order {order} but group has order {}", group.order())));
        }
        let classes = conjugacy_classes(group)?;
        if classes.len() != k {
            return Err(bad("class count mismatch"));
        }
        for i in 0..k {
            let line = field("class")?;
            let want = format!(
                "{i} size {} order {} rep {}",
                classes.sizes[i], classes.rep_orders[i], classes.reps[i]
            );
            if line != want {
                return Err(bad(format!("class line `{line}` does not match the group")));
            }
        }
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let line = field("chi")?;
            let (head, vals) = line.split_once(" values ").ok_or_else(|| bad("chi line"))?;
            let (idx, deg) = head.split_once(" degree ").ok_or_else(|| bad("chi line"))?;
            if idx != i.to_string() {
                return Err(bad("rows out of order"));
            }
            let deg: u64 = deg.parse().map_err(|_| bad("degree"))?;
            let row: Vec<CycNum> = vals.split(';').map(str::parse).collect::<Result<_>>()?;
            if row.len() != k || row.iter().any(|v| v.order() != exponent) {
                return Err(bad(format!("row {i} has wrong shape")));
            }
            if row[0] != CycNum::from_int(exponent, deg as i64) {
                return Err(bad(format!("row {i} degree disagrees with its values")));
            }
            rows.push(row);
        }
        if lines.next().is_some() {
            return Err(bad("trailing data"));
        }
        let table = CharacterTable::assemble(group.clone(), classes, exponent, rows)?;
        let sum_sq: u64 = table.degrees().iter().map(|d| d * d).sum();
        if sum_sq != order || table.to_text() != text {
            return Err(bad("decoded table is not canonical"));
        }
        Ok(table)
    }
}
