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

//! Gate-level circuit representation and resource metrics.
//!
//! A [`Circuit`] is a flat gate list over a fixed wire table. Subcircuits are
//! labeled half-open spans of gate indices that must nest like parentheses.
//! Depth is computed by earliest-start scheduling with unit gate time; T-depth
//! uses the same per-wire recurrence but only T and T-dagger gates advance it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    Not,
    Cnot,
    Toffoli,
    H,
    T,
    TDagger,
    S,
    SDagger,
}

impl GateKind {
    pub const ALL: [GateKind; 8] = [
        GateKind::Not,
        GateKind::Cnot,
        GateKind::Toffoli,
        GateKind::H,
        GateKind::T,
        GateKind::TDagger,
        GateKind::S,
        GateKind::SDagger,
    ];

    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot => 2,
            GateKind::Toffoli => 3,
            _ => 1,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, GateKind::Not | GateKind::Cnot | GateKind::Toffoli)
    }

    pub fn is_t_like(self) -> bool {
        matches!(self, GateKind::T | GateKind::TDagger)
    }

    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::T => GateKind::TDagger,
            GateKind::TDagger => GateKind::T,
            GateKind::S => GateKind::SDagger,
            GateKind::SDagger => GateKind::S,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Cnot => "CNOT",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::H => "H",
            GateKind::T => "T",
            GateKind::TDagger => "T_DAGGER",
            GateKind::S => "S",
            GateKind::SDagger => "S_DAGGER",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A gate: controls first, target last. Unused operand slots hold `u32::MAX`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gate {
    kind: GateKind,
    wires: [u32; 3],
}

const UNUSED: u32 = u32::MAX;

impl Gate {
    pub fn new(kind: GateKind, operands: &[u32]) -> Result<Gate> {
        if operands.len() != kind.arity() {
            return Err(Error::InvalidInput(format!(
                "{kind} takes {} operand(s), got {}",
                kind.arity(),
                operands.len()
            )));
        }
        let mut wires = [UNUSED; 3];
        wires[..operands.len()].copy_from_slice(operands);
        let g = Gate { kind, wires };
        let w = g.wires();
        if (w.len() > 1 && w[0] == w[1]) || (w.len() > 2 && (w[0] == w[2] || w[1] == w[2])) {
            return Err(Error::DuplicateOperand);
        }
        Ok(g)
    }

    pub fn not(target: u32) -> Gate {
        Gate {
            kind: GateKind::Not,
            wires: [target, UNUSED, UNUSED],
        }
    }

    /// Panics if the operands coincide; use [`Gate::new`] for untrusted input.
    pub fn cnot(control: u32, target: u32) -> Gate {
        Gate::new(GateKind::Cnot, &[control, target]).expect("distinct CNOT operands")
    }

    /// Panics if the operands are not distinct; use [`Gate::new`] for untrusted input.
    pub fn toffoli(c1: u32, c2: u32, target: u32) -> Gate {
        Gate::new(GateKind::Toffoli, &[c1, c2, target]).expect("distinct Toffoli operands")
    }

    pub fn single(kind: GateKind, wire: u32) -> Gate {
        assert_eq!(kind.arity(), 1, "{kind} is not a single-qubit gate");
        Gate {
            kind,
            wires: [wire, UNUSED, UNUSED],
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn wires(&self) -> &[u32] {
        &self.wires[..self.kind.arity()]
    }

    pub fn target(&self) -> u32 {
        self.wires[self.kind.arity() - 1]
    }

    pub fn controls(&self) -> &[u32] {
        &self.wires[..self.kind.arity() - 1]
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            wires: self.wires,
        }
    }
}

impl fmt::Debug for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind, self.wires())
    }
}

/// Clifford+T replacement of `TOFFOLI(a, b, c)` without ancilla.
///
/// Operands index into `[a, b, c]`. 15 gates: 7 T/T-dagger, 6 CNOT, 2 H,
/// T-depth 4 and depth 8 under unit-time scheduling. Every output wire ends a
/// path from operand `a` through all four T layers; paths from `b` and `c`
/// cross three.
pub const TOFFOLI_TEMPLATE: [(GateKind, [usize; 2]); 15] = [
    (GateKind::H, [2, 2]),
    (GateKind::T, [0, 0]),
    (GateKind::T, [1, 1]),
    (GateKind::Cnot, [2, 0]),
    (GateKind::TDagger, [0, 0]),
    (GateKind::Cnot, [1, 2]),
    (GateKind::TDagger, [2, 2]),
    (GateKind::Cnot, [1, 0]),
    (GateKind::T, [0, 0]),
    (GateKind::Cnot, [1, 2]),
    (GateKind::Cnot, [2, 0]),
    (GateKind::TDagger, [0, 0]),
    (GateKind::T, [2, 2]),
    (GateKind::Cnot, [1, 0]),
    (GateKind::H, [2, 2]),
];

/// Expansion of one Toffoli via [`TOFFOLI_TEMPLATE`].
pub fn expand_toffoli(g: &Gate) -> impl Iterator<Item = Gate> + '_ {
    debug_assert_eq!(g.kind, GateKind::Toffoli);
    TOFFOLI_TEMPLATE.iter().map(move |&(kind, [x, y])| {
        if kind == GateKind::Cnot {
            Gate::cnot(g.wires[x], g.wires[y])
        } else {
            Gate::single(kind, g.wires[x])
        }
    })
}

/// A named, ordered list of wires; index `i` holds coefficient `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterRef {
    pub name: String,
    pub wires: Vec<u32>,
}

impl RegisterRef {
    pub fn new(name: impl Into<String>, wires: Vec<u32>) -> Result<Self> {
        let mut seen = wires.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateOperand);
        }
        Ok(RegisterRef {
            name: name.into(),
            wires,
        })
    }

    pub fn len(&self) -> usize {
        self.wires.len()
    }

    pub fn is_empty(&self) -> bool {
        self.wires.is_empty()
    }

    pub fn overlaps(&self, other: &RegisterRef) -> bool {
        self.wires.iter().any(|w| other.wires.contains(w))
    }
}

/// Fail unless the registers are pairwise disjoint.
pub fn check_disjoint(regs: &[&RegisterRef]) -> Result<()> {
    for (i, a) in regs.iter().enumerate() {
        for b in &regs[i + 1..] {
            if a.overlaps(b) {
                return Err(Error::RegisterOverlap);
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Group {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

impl Group {
    fn nests_with(&self, s: usize, e: usize) -> bool {
        e <= self.start || s >= self.end || (s >= self.start && e <= self.end) || (s <= self.start && e >= self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    wires: Vec<String>,
    name_index: HashMap<String, u32>,
    registers: Vec<RegisterRef>,
    gates: Vec<Gate>,
    groups: Vec<Group>,
    out_permutation: Vec<u32>,
    inputs: Option<Vec<u32>>,
    outputs: Option<Vec<u32>>,
}

impl Default for Circuit {
    fn default() -> Self {
        Circuit::new()
    }
}

impl Circuit {
    pub fn new() -> Self {
        Circuit {
            wires: Vec::new(),
            name_index: HashMap::new(),
            registers: Vec::new(),
            gates: Vec::new(),
            groups: Vec::new(),
            out_permutation: Vec::new(),
            inputs: None,
            outputs: None,
        }
    }

    /// Same wires, registers and I/O declarations; no gates or groups.
    pub fn empty_like(&self) -> Circuit {
        Circuit {
            gates: Vec::new(),
            groups: Vec::new(),
            out_permutation: (0..self.width() as u32).collect(),
            ..self.clone_header()
        }
    }

    fn clone_header(&self) -> Circuit {
        Circuit {
            wires: self.wires.clone(),
            name_index: self.name_index.clone(),
            registers: self.registers.clone(),
            gates: Vec::new(),
            groups: Vec::new(),
            out_permutation: self.out_permutation.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
    }

    pub fn add_wire(&mut self, name: impl Into<String>) -> Result<u32> {
        let name = name.into();
        if name.is_empty() || self.name_index.contains_key(&name) {
            return Err(Error::InvalidInput(format!("wire name `{name}` is empty or taken")));
        }
        let id = u32::try_from(self.wires.len())
            .ok()
            .filter(|&id| id != UNUSED)
            .ok_or_else(|| Error::InvalidInput("too many wires".into()))?;
        self.name_index.insert(name.clone(), id);
        self.wires.push(name);
        self.out_permutation.push(id);
        Ok(id)
    }

    /// Add `len` wires named `<name>_0 .. <name>_{len-1}`.
    pub fn add_register(&mut self, name: &str, len: usize) -> Result<RegisterRef> {
        let wires = (0..len)
            .map(|i| self.add_wire(format!("{name}_{i}")))
            .collect::<Result<Vec<_>>>()?;
        let reg = RegisterRef::new(name, wires)?;
        self.registers.push(reg.clone());
        Ok(reg)
    }

    pub fn registers(&self) -> &[RegisterRef] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&RegisterRef> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn width(&self) -> usize {
        self.wires.len()
    }

    pub fn wire_names(&self) -> &[String] {
        &self.wires
    }

    pub fn wire_name(&self, id: u32) -> Option<&str> {
        self.wires.get(id as usize).map(String::as_str)
    }

    pub fn wire_id(&self, name: &str) -> Option<u32> {
        self.name_index.get(name).copied()
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    /// Groups not contained in any other group, in gate order.
    pub fn top_level_groups(&self) -> Vec<&Group> {
        let mut out: Vec<&Group> = Vec::new();
        for g in &self.groups {
            let inside = out
                .last()
                .is_some_and(|outer| g.start >= outer.start && g.end <= outer.end && g.start < outer.end);
            if !inside {
                out.push(g);
            }
        }
        out
    }

    /// Logical wire `w` ends on physical wire `out_permutation()[w]`.
    pub fn out_permutation(&self) -> &[u32] {
        &self.out_permutation
    }

    pub fn set_out_permutation(&mut self, perm: Vec<u32>) -> Result<()> {
        let mut seen = vec![false; self.width()];
        if perm.len() != self.width() {
            return Err(Error::DimensionMismatch {
                expected: self.width(),
                got: perm.len(),
            });
        }
        for &p in &perm {
            let slot = seen.get_mut(p as usize).ok_or(Error::UnknownWire(p))?;
            if std::mem::replace(slot, true) {
                return Err(Error::InvalidInput("out_permutation is not a bijection".into()));
            }
        }
        self.out_permutation = perm;
        Ok(())
    }

    /// Declared input wires; all wires unless set.
    pub fn inputs(&self) -> Vec<u32> {
        self.inputs
            .clone()
            .unwrap_or_else(|| (0..self.width() as u32).collect())
    }

    pub fn outputs(&self) -> Vec<u32> {
        self.outputs
            .clone()
            .unwrap_or_else(|| (0..self.width() as u32).collect())
    }

    pub fn set_inputs(&mut self, wires: Vec<u32>) -> Result<()> {
        self.check_wires(&wires)?;
        self.inputs = Some(wires);
        Ok(())
    }

    pub fn set_outputs(&mut self, wires: Vec<u32>) -> Result<()> {
        self.check_wires(&wires)?;
        self.outputs = Some(wires);
        Ok(())
    }

    fn check_wires(&self, wires: &[u32]) -> Result<()> {
        match wires.iter().find(|&&w| w as usize >= self.width()) {
            Some(&w) => Err(Error::UnknownWire(w)),
            None => Ok(()),
        }
    }

    pub fn append(&mut self, gate: Gate) -> Result<()> {
        self.check_wires(gate.wires())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn push(&mut self, kind: GateKind, operands: &[u32]) -> Result<()> {
        self.append(Gate::new(kind, operands)?)
    }

    /// Label the gate span `span` as a subcircuit.
    pub fn group(&mut self, label: impl Into<String>, span: Range<usize>) -> Result<()> {
        let label = label.into();
        if span.start > span.end || span.end > self.gates.len() {
            return Err(Error::IllNestedGroup(label));
        }
        if let Some(bad) = self.groups.iter().find(|g| !g.nests_with(span.start, span.end)) {
            return Err(Error::IllNestedGroup(format!("{label} crosses {}", bad.label)));
        }
        let g = Group {
            label,
            start: span.start,
            end: span.end,
        };
        // outer groups sort before the groups they contain; an empty group
        // marks a point and sorts before spans starting there
        let key = |h: &Group| (h.start, h.end > h.start, std::cmp::Reverse(h.end));
        let pos = self.groups.partition_point(|h| key(h) <= key(&g));
        self.groups.insert(pos, g);
        Ok(())
    }

    /// Run `f` and label whatever it appended, even if that is nothing.
    pub fn grouped<T>(&mut self, label: &str, f: impl FnOnce(&mut Circuit) -> Result<T>) -> Result<T> {
        let start = self.gates.len();
        let out = f(self)?;
        let end = self.gates.len();
        self.group(label, start..end)?;
        Ok(out)
    }

    fn check_same_wires(&self, other: &Circuit) -> Result<()> {
        if self.wires != other.wires {
            return Err(Error::InvalidInput("circuits have different wire tables".into()));
        }
        Ok(())
    }

    /// Append all gates and groups of `other`, which must share this wire table.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        self.check_same_wires(other)?;
        let offset = self.gates.len();
        self.gates.extend_from_slice(&other.gates);
        for g in &other.groups {
            self.group(g.label.clone(), g.start + offset..g.end + offset)?;
        }
        let mine = std::mem::take(&mut self.out_permutation);
        self.out_permutation = mine.iter().map(|&p| other.out_permutation[p as usize]).collect();
        Ok(())
    }

    /// Append `other` and wrap its gates in one group labeled `label`.
    pub fn extend_grouped(&mut self, label: &str, other: &Circuit) -> Result<()> {
        self.grouped(label, |c| c.extend(other))
    }

    pub fn compose(c1: &Circuit, c2: &Circuit) -> Result<Circuit> {
        let mut out = c1.clone();
        out.extend(c2)?;
        Ok(out)
    }

    /// Reversed gate order with T and S daggers swapped. Group labels toggle
    /// a leading `I`, so inverting twice restores them.
    pub fn inverse(&self) -> Circuit {
        let len = self.gates.len();
        let mut inv = self.clone_header();
        inv.gates = self.gates.iter().rev().map(Gate::inverse).collect();
        let mut perm = vec![0u32; self.width()];
        for (w, &p) in self.out_permutation.iter().enumerate() {
            perm[p as usize] = w as u32;
        }
        inv.out_permutation = perm;
        for g in &self.groups {
            inv.group(toggle_inverse_label(&g.label), len - g.end..len - g.start)
                .expect("mirrored nesting stays nested");
        }
        inv
    }

    /// Every Toffoli replaced by [`TOFFOLI_TEMPLATE`]; group spans are remapped.
    pub fn decompose_toffoli(&self) -> Circuit {
        let mut out = self.clone_header();
        let mut index_map = Vec::with_capacity(self.gates.len() + 1);
        for g in &self.gates {
            index_map.push(out.gates.len());
            if g.kind == GateKind::Toffoli {
                out.gates.extend(expand_toffoli(g));
            } else {
                out.gates.push(*g);
            }
        }
        index_map.push(out.gates.len());
        for g in &self.groups {
            out.group(g.label.clone(), index_map[g.start]..index_map[g.end])
                .expect("remapped nesting stays nested");
        }
        out
    }

    pub fn is_classical(&self) -> bool {
        self.gates.iter().all(|g| g.kind.is_classical())
    }

    pub fn metrics(&self) -> ResourceReport {
        self.measure(false)
    }

    /// Metrics of [`Circuit::decompose_toffoli`] without building it.
    pub fn metrics_decomposed(&self) -> ResourceReport {
        self.measure(true)
    }

    fn measure(&self, decompose: bool) -> ResourceReport {
        let whole = measure_span(self.width(), &self.gates, decompose);
        let subcircuits = self
            .groups
            .iter()
            .map(|g| {
                let m = measure_span(self.width(), &self.gates[g.start..g.end], decompose);
                GroupReport {
                    label: g.label.clone(),
                    counts: m.counts,
                    depth: m.depth,
                    t_depth: m.t_depth,
                }
            })
            .collect();
        ResourceReport {
            counts: whole.counts,
            total_gates: whole.counts.total(),
            toffoli_count: whole.counts.toffoli,
            t_count: whole.counts.t_count(),
            cnot_count: whole.counts.cnot,
            depth: whole.depth,
            t_depth: whole.t_depth,
            width: self.width() as u64,
            subcircuits,
            bounds: BTreeMap::new(),
        }
    }
}

fn toggle_inverse_label(label: &str) -> String {
    match label.strip_prefix('I') {
        Some(rest) if !rest.is_empty() => rest.to_string(),
        _ => format!("I{label}"),
    }
}

struct SpanMetrics {
    counts: GateCounts,
    depth: u64,
    t_depth: u64,
}

/// Earliest-start scheduling over a gate stream.
struct Scheduler {
    finish: Vec<u64>,
    t_finish: Vec<u64>,
    counts: GateCounts,
}

impl Scheduler {
    fn new(width: usize) -> Self {
        Scheduler {
            finish: vec![0; width],
            t_finish: vec![0; width],
            counts: GateCounts::default(),
        }
    }

    #[inline]
    fn push(&mut self, g: &Gate) {
        let ws = g.wires();
        let mut start = 0;
        let mut t_start = 0;
        for &w in ws {
            start = start.max(self.finish[w as usize]);
            t_start = t_start.max(self.t_finish[w as usize]);
        }
        let t_end = t_start + u64::from(g.kind.is_t_like());
        for &w in ws {
            self.finish[w as usize] = start + 1;
            self.t_finish[w as usize] = t_end;
        }
        self.counts.record(g.kind);
    }

    fn finish(self) -> SpanMetrics {
        SpanMetrics {
            counts: self.counts,
            depth: self.finish.into_iter().max().unwrap_or(0),
            t_depth: self.t_finish.into_iter().max().unwrap_or(0),
        }
    }
}

fn measure_span(width: usize, gates: &[Gate], decompose: bool) -> SpanMetrics {
    let mut s = Scheduler::new(width);
    for g in gates {
        if decompose && g.kind == GateKind::Toffoli {
            for h in expand_toffoli(g) {
                s.push(&h);
            }
        } else {
            s.push(g);
        }
    }
    s.finish()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub not: u64,
    pub cnot: u64,
    pub toffoli: u64,
    pub h: u64,
    pub t: u64,
    pub t_dagger: u64,
    pub s: u64,
    pub s_dagger: u64,
}

impl GateCounts {
    pub fn record(&mut self, kind: GateKind) {
        *self.slot(kind) += 1;
    }

    fn slot(&mut self, kind: GateKind) -> &mut u64 {
        match kind {
            GateKind::Not => &mut self.not,
            GateKind::Cnot => &mut self.cnot,
            GateKind::Toffoli => &mut self.toffoli,
            GateKind::H => &mut self.h,
            GateKind::T => &mut self.t,
            GateKind::TDagger => &mut self.t_dagger,
            GateKind::S => &mut self.s,
            GateKind::SDagger => &mut self.s_dagger,
        }
    }

    pub fn get(&self, kind: GateKind) -> u64 {
        let mut copy = *self;
        *copy.slot(kind)
    }

    pub fn total(&self) -> u64 {
        GateKind::ALL.iter().map(|&k| self.get(k)).sum()
    }

    /// T plus T-dagger.
    pub fn t_count(&self) -> u64 {
        self.t + self.t_dagger
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub label: String,
    pub counts: GateCounts,
    pub depth: u64,
    pub t_depth: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub bound: u64,
    pub achieved: u64,
    /// Whether the bound must hold with equality (e.g. width).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub exact: bool,
}

impl BoundCheck {
    pub fn at_most(bound: u64, achieved: u64) -> Self {
        BoundCheck {
            bound,
            achieved,
            exact: false,
        }
    }

    pub fn exactly(bound: u64, achieved: u64) -> Self {
        BoundCheck {
            bound,
            achieved,
            exact: true,
        }
    }

    pub fn holds(&self) -> bool {
        if self.exact {
            self.achieved == self.bound
        } else {
            self.achieved <= self.bound
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub counts: GateCounts,
    pub total_gates: u64,
    pub toffoli_count: u64,
    pub t_count: u64,
    pub cnot_count: u64,
    pub depth: u64,
    pub t_depth: u64,
    pub width: u64,
    pub subcircuits: Vec<GroupReport>,
    pub bounds: BTreeMap<String, BoundCheck>,
}

impl ResourceReport {
    /// Counts summed over every group with this label.
    pub fn group_counts(&self, label: &str) -> GateCounts {
        let mut out = GateCounts::default();
        for g in self.subcircuits.iter().filter(|g| g.label == label) {
            for k in GateKind::ALL {
                *out.slot(k) += g.counts.get(k);
            }
        }
        out
    }
}
