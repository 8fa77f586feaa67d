// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Cost tables for the ancilla-free squaring and square-root maps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::gf2field::IrreduciblePoly;
use crate::linmaps::{matrix_of_sqrt, matrix_of_squaring};
use crate::presets::nist_fields;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Squaring,
    Sqrt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub name: String,
    pub poly: String,
    pub depth: u64,
    pub cnots: u64,
}

pub fn table_row(kind: TableKind, name: &str, p: &IrreduciblePoly) -> Result<TableRow> {
    let m = match kind {
        TableKind::Squaring => matrix_of_squaring(p)?,
        TableKind::Sqrt => matrix_of_sqrt(p)?,
    };
    Ok(TableRow {
        name: name.to_string(),
        poly: p.to_string(),
        depth: m.max_degree() as u64,
        cnots: m.weight() as u64,
    })
}

/// One row per named NIST polynomial, in preset order. Rows are computed on
/// separate threads and returned in input order.
pub fn nist_table(kind: TableKind) -> Result<Vec<TableRow>> {
    let fields = nist_fields();
    std::thread::scope(|s| {
        let handles: Vec<_> = fields
            .iter()
            .map(|(name, p)| s.spawn(move || table_row(kind, name, p)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect()
    })
}

/// Plain-text rendering: a header line, then `poly depth cnots` per row.
pub struct TableText<'a>(pub &'a [TableRow]);

impl fmt::Display for TableText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self
            .0
            .iter()
            .map(|r| r.poly.len())
            .max()
            .unwrap_or(0)
            .max("polynomial".len());
        writeln!(f, "{:<w$}  {:>5}  {:>6}", "polynomial", "depth", "CNOTs")?;
        for r in self.0 {
            writeln!(f, "{:<w$}  {:>5}  {:>6}", r.poly, r.depth, r.cnots)?;
        }
        Ok(())
    }
}
