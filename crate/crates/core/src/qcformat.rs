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

//! Writer and parser for the `.qc` circuit text format.
//!
//! The grammar pinned here:
//!
//! ```text
//! .v <wire>...            all wires, in circuit order
//! .i <wire>...            input wires
//! .o <wire>...            output wires
//!
//! BEGIN <NAME>            zero or more subcircuit definitions
//! <gate line>...
//! END <NAME>
//!
//! BEGIN                   main block
//! <gate line | NAME>...
//! END
//! ```
//!
//! Gate lines are `tof <w>` (NOT), `tof <c> <t>` (CNOT), `tof <c1> <c2> <t>`
//! (Toffoli), `H <w>`, `T <w>`, `T* <w>`, `S <w>` and `S* <w>`. A main-block
//! line holding a single defined name invokes that subcircuit. Names match
//! `[A-Za-z][A-Za-z0-9_]*`. The writer separates tokens with one space and
//! ends every line with LF; the parser accepts any run of blanks, blank
//! lines and `#` comments.
//!
//! Only top-level groups become subcircuits; nested groups are flattened
//! into their parent's body. A label used more than once is written as
//! `label`, `label_2`, `label_3`, ... and [`to_circuit`] restores the
//! original label when the stem names an earlier definition.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcOp {
    Tof,
    H,
    T,
    TDagger,
    S,
    SDagger,
}

impl QcOp {
    fn token(self) -> &'static str {
        match self {
            QcOp::Tof => "tof",
            QcOp::H => "H",
            QcOp::T => "T",
            QcOp::TDagger => "T*",
            QcOp::S => "S",
            QcOp::SDagger => "S*",
        }
    }

    fn from_token(tok: &str) -> Option<QcOp> {
        Some(match tok {
            "tof" => QcOp::Tof,
            "H" => QcOp::H,
            "T" => QcOp::T,
            "T*" => QcOp::TDagger,
            "S" => QcOp::S,
            "S*" => QcOp::SDagger,
            _ => return None,
        })
    }

    fn of_kind(kind: GateKind) -> QcOp {
        match kind {
            GateKind::Not | GateKind::Cnot | GateKind::Toffoli => QcOp::Tof,
            GateKind::H => QcOp::H,
            GateKind::T => QcOp::T,
            GateKind::TDagger => QcOp::TDagger,
            GateKind::S => QcOp::S,
            GateKind::SDagger => QcOp::SDagger,
        }
    }

    fn kind(self, arity: usize) -> Option<GateKind> {
        Some(match (self, arity) {
            (QcOp::Tof, 1) => GateKind::Not,
            (QcOp::Tof, 2) => GateKind::Cnot,
            (QcOp::Tof, 3) => GateKind::Toffoli,
            (QcOp::H, 1) => GateKind::H,
            (QcOp::T, 1) => GateKind::T,
            (QcOp::TDagger, 1) => GateKind::TDagger,
            (QcOp::S, 1) => GateKind::S,
            (QcOp::SDagger, 1) => GateKind::SDagger,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QcLine {
    Gate { op: QcOp, wires: Vec<String> },
    Call(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QcDocument {
    pub variables: Vec<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    /// Definitions in file order; bodies hold gate lines only.
    pub subcircuits: Vec<(String, Vec<QcLine>)>,
    pub main: Vec<QcLine>,
}

pub fn is_valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_name(s: &str, what: &str) -> Result<()> {
    if is_valid_name(s) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} `{s}` is not a valid .qc name")))
    }
}

fn gate_line(out: &mut String, c: &Circuit, g: &Gate) {
    out.push_str(QcOp::of_kind(g.kind()).token());
    for &w in g.wires() {
        out.push(' ');
        out.push_str(c.wire_name(w).expect("gate wires are declared"));
    }
    out.push('\n');
}

fn name_list(out: &mut String, tag: &str, c: &Circuit, wires: &[u32]) {
    out.push_str(tag);
    for &w in wires {
        out.push(' ');
        out.push_str(c.wire_name(w).expect("declared wire"));
    }
    out.push('\n');
}

/// Render `c` as `.qc` text. With `group_as_subcircuits`, every top-level
/// group becomes a named block invoked from the main block.
///
/// Fails on wire or group names outside the grammar and on circuits whose
/// outputs are a nontrivial relabeling of wires, which the format cannot
/// express.
pub fn write_qc(c: &Circuit, group_as_subcircuits: bool) -> Result<String> {
    for name in c.wire_names() {
        check_name(name, "wire")?;
    }
    if c.out_permutation().iter().enumerate().any(|(i, &p)| i as u32 != p) {
        return Err(Error::Unsupported("output wire relabeling has no .qc encoding".into()));
    }
    let mut out = String::new();
    name_list(&mut out, ".v", c, &(0..c.width() as u32).collect::<Vec<_>>());
    name_list(&mut out, ".i", c, &c.inputs());
    name_list(&mut out, ".o", c, &c.outputs());
    out.push('\n');

    let groups = if group_as_subcircuits {
        c.top_level_groups()
    } else {
        Vec::new()
    };
    let mut used: HashSet<String> = HashSet::new();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let mut names = Vec::with_capacity(groups.len());
    for g in &groups {
        check_name(&g.label, "group label")?;
        let k = seen.entry(g.label.as_str()).or_insert(0);
        let mut name = g.label.clone();
        while used.contains(&name) {
            *k += 1;
            name = format!("{}_{}", g.label, *k + 1);
        }
        used.insert(name.clone());
        names.push(name);
    }
    for (g, name) in groups.iter().zip(&names) {
        let _ = writeln!(out, "BEGIN {name}");
        for gate in &c.gates()[g.start..g.end] {
            gate_line(&mut out, c, gate);
        }
        let _ = writeln!(out, "END {name}");
        out.push('\n');
    }

    out.push_str("BEGIN\n");
    let mut next = 0;
    for (g, name) in groups.iter().zip(&names) {
        for gate in &c.gates()[next..g.start] {
            gate_line(&mut out, c, gate);
        }
        out.push_str(name);
        out.push('\n');
        next = g.end;
    }
    for gate in &c.gates()[next..] {
        gate_line(&mut out, c, gate);
    }
    out.push_str("END\n");
    Ok(out)
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

enum Block {
    None,
    Sub(String, Vec<QcLine>),
    Main(Vec<QcLine>),
}

/// Parse `.qc` text, checking that names are well formed, wires declared and
/// subcircuits defined before use.
pub fn parse_qc(text: &str) -> Result<QcDocument> {
    let mut doc = QcDocument::default();
    let mut declared: HashSet<String> = HashSet::new();
    let mut defined: HashSet<String> = HashSet::new();
    let mut have_v = false;
    let mut have_main = false;
    let mut block = Block::None;
    let mut last_line = 1;

    for (idx, raw) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, head)) = toks.first() else { continue };
        let args = &toks[1..];

        if !have_v && head != ".v" {
            return Err(perr(ln, col, "expected `.v` header"));
        }
        match (head, &mut block) {
            (".v", Block::None) => {
                if have_v || !doc.subcircuits.is_empty() || have_main {
                    return Err(perr(ln, col, "`.v` must appear once, before any block"));
                }
                have_v = true;
                for &(c, name) in args {
                    if !is_valid_name(name) {
                        return Err(perr(ln, c, format!("invalid wire name `{name}`")));
                    }
                    if !declared.insert(name.to_string()) {
                        return Err(perr(ln, c, format!("wire `{name}` declared twice")));
                    }
                    doc.variables.push(name.to_string());
                }
            }
            (".i" | ".o", Block::None) => {
                let mut list = Vec::new();
                for &(c, name) in args {
                    if !declared.contains(name) {
                        return Err(perr(ln, c, format!("undeclared wire `{name}`")));
                    }
                    list.push(name.to_string());
                }
                if head == ".i" {
                    doc.inputs = list;
                } else {
                    doc.outputs = list;
                }
            }
            ("BEGIN", Block::None) => match args {
                [] if !have_main => block = Block::Main(Vec::new()),
                [] => return Err(perr(ln, col, "second main block")),
                [(c, name)] => {
                    if have_main {
                        return Err(perr(ln, col, "subcircuit defined after the main block"));
                    }
                    if !is_valid_name(name) {
                        return Err(perr(ln, *c, format!("invalid subcircuit name `{name}`")));
                    }
                    if defined.contains(*name) {
                        return Err(perr(ln, *c, format!("subcircuit `{name}` defined twice")));
                    }
                    block = Block::Sub(name.to_string(), Vec::new());
                }
                [_, (c, _), ..] => return Err(perr(ln, *c, "unexpected token after block name")),
            },
            ("END", Block::Sub(name, _)) => {
                match args {
                    [(_, n)] if n == name => {}
                    _ => return Err(perr(ln, col, format!("expected `END {name}`"))),
                }
                let Block::Sub(name, body) = std::mem::replace(&mut block, Block::None) else {
                    unreachable!()
                };
                defined.insert(name.clone());
                doc.subcircuits.push((name, body));
            }
            ("END", Block::Main(_)) => {
                if let Some(&(c, _)) = args.first() {
                    return Err(perr(ln, c, "main block END takes no name"));
                }
                let Block::Main(body) = std::mem::replace(&mut block, Block::None) else {
                    unreachable!()
                };
                doc.main = body;
                have_main = true;
            }
            (_, Block::None) => {
                return Err(perr(ln, col, format!("unexpected `{head}` outside a block")));
            }
            (_, Block::Sub(_, body)) => body.push(parse_body_line(ln, &toks, &declared, &defined, false)?),
            (_, Block::Main(body)) => body.push(parse_body_line(ln, &toks, &declared, &defined, true)?),
        }
    }
    if !have_v {
        return Err(perr(1, 1, "missing `.v` header"));
    }
    match block {
        Block::Sub(name, _) => return Err(perr(last_line, 1, format!("unterminated block `{name}`"))),
        Block::Main(_) => return Err(perr(last_line, 1, "unterminated main block")),
        Block::None => {}
    }
    if !have_main {
        return Err(perr(last_line, 1, "missing main block"));
    }
    Ok(doc)
}

fn parse_body_line(
    ln: usize,
    toks: &[(usize, &str)],
    declared: &HashSet<String>,
    defined: &HashSet<String>,
    in_main: bool,
) -> Result<QcLine> {
    let (col, head) = toks[0];
    // a lone `S`, `T` or `H` names a subcircuit: gates always carry operands
    let op = QcOp::from_token(head).filter(|_| toks.len() > 1 || !defined.contains(head));
    let Some(op) = op else {
        if toks.len() > 1 || !is_valid_name(head) {
            return Err(perr(ln, col, format!("unknown gate `{head}`")));
        }
        if !in_main {
            return Err(perr(
                ln,
                col,
                format!("subcircuit `{head}` invoked inside a subcircuit"),
            ));
        }
        if !defined.contains(head) {
            return Err(perr(
                ln,
                col,
                format!("subcircuit `{head}` invoked before its definition"),
            ));
        }
        return Ok(QcLine::Call(head.to_string()));
    };
    let args = &toks[1..];
    if op.kind(args.len()).is_none() {
        return Err(perr(ln, col, format!("wrong number of operands for `{head}`")));
    }
    let mut wires: Vec<String> = Vec::with_capacity(args.len());
    for &(c, name) in args {
        if !declared.contains(name) {
            return Err(perr(ln, c, format!("undeclared wire `{name}`")));
        }
        if wires.iter().any(|w| w == name) {
            return Err(perr(ln, c, format!("wire `{name}` repeated in one gate")));
        }
        wires.push(name.to_string());
    }
    Ok(QcLine::Gate { op, wires })
}

/// Build a circuit from a parsed document. Each invocation becomes one group.
pub fn to_circuit(doc: &QcDocument) -> Result<Circuit> {
    let mut c = Circuit::new();
    for v in &doc.variables {
        c.add_wire(v.clone())?;
    }
    let ids = |names: &[String]| -> Result<Vec<u32>> {
        names
            .iter()
            .map(|n| {
                c.wire_id(n)
                    .ok_or_else(|| Error::InvalidInput(format!("undeclared wire `{n}`")))
            })
            .collect()
    };
    let (inputs, outputs) = (ids(&doc.inputs)?, ids(&doc.outputs)?);
    c.set_inputs(inputs)?;
    c.set_outputs(outputs)?;

    let bodies: HashMap<&str, &[QcLine]> = doc
        .subcircuits
        .iter()
        .map(|(n, b)| (n.as_str(), b.as_slice()))
        .collect();
    let mut labels: HashMap<&str, String> = HashMap::new();
    for (name, _) in &doc.subcircuits {
        let label = name
            .rsplit_once('_')
            .filter(|(stem, k)| k.parse::<usize>().is_ok_and(|k| k >= 2) && labels.contains_key(stem))
            .map_or(name.clone(), |(stem, _)| labels[stem].clone());
        labels.insert(name, label);
    }
    for line in &doc.main {
        match line {
            QcLine::Gate { .. } => push_gate(&mut c, line)?,
            QcLine::Call(name) => {
                let body = bodies
                    .get(name.as_str())
                    .ok_or_else(|| Error::InvalidInput(format!("unknown subcircuit `{name}`")))?;
                c.grouped(&labels[name.as_str()], |c| {
                    body.iter().try_for_each(|l| push_gate(c, l))
                })?;
            }
        }
    }
    Ok(c)
}

fn push_gate(c: &mut Circuit, line: &QcLine) -> Result<()> {
    let QcLine::Gate { op, wires } = line else {
        return Err(Error::InvalidInput("nested subcircuit invocation".into()));
    };
    let kind = op
        .kind(wires.len())
        .ok_or_else(|| Error::InvalidInput(format!("`{}` with {} operands", op.token(), wires.len())))?;
    let ids = wires
        .iter()
        .map(|w| {
            c.wire_id(w)
                .ok_or_else(|| Error::InvalidInput(format!("undeclared wire `{w}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    c.push(kind, &ids)
}

/// `to_circuit(parse_qc(text))`.
pub fn read_qc(text: &str) -> Result<Circuit> {
    to_circuit(&parse_qc(text)?)
}
