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

//! Reversible circuit for adding a fixed affine point to an LD point.
//!
//! The circuit maps `|X1>|Y1>|Z1>|0..0>` to `|X1>|Y1>|Z1>|..|X3>|..|Y3>` with
//! `(X3, Y3, Z3)` the Al-Daoud mixed sum and every scratch register returned to
//! zero. With `A = Y1 + y2 Z1^2`, `B = X1 + x2 Z1`, `C = B Z1`, `Z3 = C^2` and
//! `D = x2 Z3` the sixteen emitted stages are:
//!
//! | stage | label(s)      | effect                                           |
//! |-------|---------------|--------------------------------------------------|
//! | 1     | `SM`          | `Y1 += y2 Z1^2`, so `Y1` holds `A`               |
//! | 2     | `X`           | `X1 += x2 Z1`, so `X1` holds `B`                 |
//! | 3     | `M`           | `C += B Z1`                                      |
//! | 4     | `S` x3        | `Z3 += C^2`, `X3 += A^2`, `Bsq += B^2`           |
//! | 5     | `a2`, `X`     | `Bsq += a2 C`, `D += x2 Z3`                      |
//! | 6     |               | `Bsq += A`, `Cp += C`, `Z3p += Z3`               |
//! | 7     | `M`, `M`, `xyZ` | `X3 += C Bsq`, `Z3p += A Cp`, `Y3 += (x2+y2) Z3^2` |
//! | 8     |               | `D += X3`                                        |
//! | 9     | `M`           | `Y3 += D Z3p`                                    |
//! | 10    |               | `D += X3`                                        |
//! | 11    | `IM`          | undo `Z3p += A Cp`                               |
//! | 12    |               | undo stage 6                                     |
//! | 13    | `IX`, `Ia2`   | undo stage 5                                     |
//! | 14    | `IS`, `SR`    | `Bsq -= B^2`, `C += sqrt(Z3)`                    |
//! | 15    | `IX`          | undo stage 2                                     |
//! | 16    | `ISM`         | undo stage 1                                     |
//!
//! `A^2` is never uncomputed because its wires become `X3`; instead `C` is
//! cleared from `Z3 = C^2` with a square-root map. Linear blocks whose constant
//! is zero emit no gates but keep their (empty) group, so labels never shift.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{BoundCheck, Circuit, Gate, RegisterRef, ResourceReport};
use crate::ecoracle::{AffinePoint, Curve, LdPoint};
use crate::error::{Error, Result};
use crate::fieldsynth::{
    multiplier_circuit, synth_add_inplace, synth_const_mul, synth_sq_then_const, synth_sqrt, synth_square,
    FieldMultiplier, ShiftAddMultiplier,
};
use crate::gf2field::{FieldElem, IrreduciblePoly};
use crate::linmaps::matrix_of_squaring;
use crate::revsim::BasisState;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MultiplierVariant {
    #[default]
    ShiftAdd,
}

impl MultiplierVariant {
    pub fn build(self) -> Box<dyn FieldMultiplier> {
        match self {
            MultiplierVariant::ShiftAdd => Box::new(ShiftAddMultiplier),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthesisOptions {
    /// Replace every Toffoli of the returned circuit by its Clifford+T template.
    pub decompose_toffoli: bool,
    /// Emit `a2 = 1` as a plain register addition and drop `a2 = 0` blocks.
    /// Without it the general constant map is used, which yields the same gates.
    pub skip_a2_block_when_trivial: bool,
    /// Accept a fixed point that does not satisfy the curve equation.
    pub allow_off_curve: bool,
    pub multiplier: MultiplierVariant,
    /// Let the multiplier computing C = B Z1 assume a zero accumulator.
    pub zero_accumulator_shortcut: bool,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            decompose_toffoli: false,
            skip_a2_block_when_trivial: true,
            allow_off_curve: false,
            multiplier: MultiplierVariant::ShiftAdd,
            zero_accumulator_shortcut: false,
        }
    }
}

/// The eleven registers in wire order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    pub x1: RegisterRef,
    pub y1: RegisterRef,
    pub z1: RegisterRef,
    /// Holds `C`; may be a reordering of the declared `C` wires.
    pub c: RegisterRef,
    pub z3: RegisterRef,
    pub x3: RegisterRef,
    pub bsq: RegisterRef,
    pub d: RegisterRef,
    pub cp: RegisterRef,
    pub z3p: RegisterRef,
    pub y3: RegisterRef,
}

pub const REGISTER_NAMES: [&str; 11] = ["X1", "Y1", "Z1", "C", "Z3", "X3", "Bsq", "D", "Cp", "Z3p", "Y3"];

impl RegisterLayout {
    fn allocate(circ: &mut Circuit, n: usize) -> Result<Self> {
        let mut regs = REGISTER_NAMES
            .iter()
            .map(|name| circ.add_register(name, n))
            .collect::<Result<Vec<_>>>()?
            .into_iter();
        let mut next = || regs.next().expect("eleven registers");
        Ok(RegisterLayout {
            x1: next(),
            y1: next(),
            z1: next(),
            c: next(),
            z3: next(),
            x3: next(),
            bsq: next(),
            d: next(),
            cp: next(),
            z3p: next(),
            y3: next(),
        })
    }

    pub fn inputs(&self) -> [&RegisterRef; 3] {
        [&self.x1, &self.y1, &self.z1]
    }

    pub fn outputs(&self) -> [&RegisterRef; 3] {
        [&self.x3, &self.y3, &self.z3]
    }

    /// Registers that must return to zero.
    pub fn ancillae(&self) -> [&RegisterRef; 5] {
        [&self.c, &self.bsq, &self.d, &self.cp, &self.z3p]
    }
}

/// Cost of one standalone multiplier after Toffoli decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierCost {
    pub gates: u64,
    pub t_gates: u64,
    pub depth: u64,
    pub t_depth: u64,
    pub ancillae: u64,
    pub toffolis: u64,
}

impl MultiplierCost {
    pub fn measure(p: &IrreduciblePoly, mult: &dyn FieldMultiplier) -> Result<Self> {
        let circ = multiplier_circuit(p, mult)?;
        let m = circ.metrics_decomposed();
        Ok(MultiplierCost {
            gates: m.total_gates,
            t_gates: m.t_count,
            depth: m.depth,
            t_depth: m.t_depth,
            ancillae: mult.ancilla_count(p.degree()) as u64,
            toffolis: circ.metrics().toffoli_count,
        })
    }
}

/// Cost of the squaring map: CNOT count and depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquaringCost {
    pub gates: u64,
    pub depth: u64,
}

impl SquaringCost {
    pub fn measure(p: &IrreduciblePoly) -> Result<Self> {
        let m = matrix_of_squaring(p)?;
        Ok(SquaringCost {
            gates: m.weight() as u64,
            depth: m.max_degree() as u64,
        })
    }
}

#[derive(Debug, Clone)]
pub struct PointAddition {
    pub circuit: Circuit,
    pub layout: RegisterLayout,
    /// Metrics of `circuit` as emitted, with the bound comparison attached.
    pub report: ResourceReport,
    /// Metrics after Toffoli decomposition (equal to `report` when already decomposed).
    pub clifford_t: ResourceReport,
    pub multiplier: MultiplierCost,
    pub squaring: SquaringCost,
    pub multiplier_variant: &'static str,
    pub n: usize,
}

impl PointAddition {
    /// Fail on the first violated bound.
    pub fn check_bounds(&self) -> Result<()> {
        check_bounds(&self.report.bounds)
    }
}

fn scratch_block(circ: &Circuit, f: impl FnOnce(&mut Circuit) -> Result<()>) -> Result<Circuit> {
    let mut block = circ.empty_like();
    f(&mut block)?;
    Ok(block)
}

/// `dst += k * src`, skipping `k = 0` and emitting `k = 1` as an addition.
fn const_block(circ: &mut Circuit, k: &FieldElem, src: &RegisterRef, dst: &RegisterRef, shortcut: bool) -> Result<()> {
    if k.is_zero() {
        Ok(())
    } else if k.is_one() && shortcut {
        synth_add_inplace(circ, src, dst)
    } else {
        synth_const_mul(circ, k, src, dst)
    }
}

/// `dst += k * src^2`, skipping `k = 0`.
fn sq_const_block(circ: &mut Circuit, k: &FieldElem, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    if k.is_zero() {
        return Ok(());
    }
    synth_sq_then_const(circ, k, src, dst)
}

/// Build the addition circuit for `P1 + p2` with `p2` fixed.
pub fn synth_point_add(curve: &Curve, p2: &AffinePoint, opts: &SynthesisOptions) -> Result<PointAddition> {
    let (x2, y2) = p2
        .coords()
        .ok_or_else(|| Error::InvalidInput("the fixed point must not be the identity".into()))?;
    let field = curve.field().clone();
    if x2.modulus() != &field || y2.modulus() != &field {
        return Err(Error::ModulusMismatch);
    }
    if !opts.allow_off_curve && !curve.on_curve_affine(p2) {
        return Err(Error::OffCurve);
    }
    let n = field.degree();
    let mult = opts.multiplier.build();
    let trivial = opts.skip_a2_block_when_trivial;
    let a2 = curve.a2();
    let xy = x2 + y2;

    let mut circ = Circuit::new();
    let mut l = RegisterLayout::allocate(&mut circ, n)?;
    circ.set_inputs(l.inputs().iter().flat_map(|r| r.wires.clone()).collect())?;
    let mut outs: Vec<u32> = l.inputs().iter().flat_map(|r| r.wires.clone()).collect();
    outs.extend(l.outputs().iter().flat_map(|r| r.wires.clone()));
    circ.set_outputs(outs)?;

    // A into Y1, B into X1
    circ.grouped("SM", |c| sq_const_block(c, y2, &l.z1, &l.y1))?;
    circ.grouped("X", |c| const_block(c, x2, &l.z1, &l.x1, false))?;
    // C = B * Z1
    l.c = circ.grouped("M", |c| {
        if opts.zero_accumulator_shortcut {
            mult.emit_into_zero(c, &field, &l.x1, &l.z1, &l.c)
        } else {
            mult.emit(c, &field, &l.x1, &l.z1, &l.c).map(|()| l.c.clone())
        }
    })?;
    // Z3 = C^2, A^2 into X3, B^2 into Bsq
    circ.grouped("S", |c| synth_square(c, &field, &l.c, &l.z3))?;
    circ.grouped("S", |c| synth_square(c, &field, &l.y1, &l.x3))?;
    circ.grouped("S", |c| synth_square(c, &field, &l.x1, &l.bsq))?;
    // Bsq += a2 C, D = x2 Z3
    circ.grouped("a2", |c| const_block(c, a2, &l.c, &l.bsq, trivial))?;
    circ.grouped("X", |c| const_block(c, x2, &l.z3, &l.d, false))?;
    // Bsq += A, copies C' and Z3'
    let copies = scratch_block(&circ, |c| {
        synth_add_inplace(c, &l.y1, &l.bsq)?;
        synth_add_inplace(c, &l.c, &l.cp)?;
        synth_add_inplace(c, &l.z3, &l.z3p)
    })?;
    circ.extend(&copies)?;
    // X3 += C (A + B^2 + a2 C), Z3' += A C', Y3 += (x2 + y2) Z3^2
    circ.grouped("M", |c| mult.emit(c, &field, &l.c, &l.bsq, &l.x3))?;
    let ac = scratch_block(&circ, |c| mult.emit(c, &field, &l.y1, &l.cp, &l.z3p))?;
    circ.extend_grouped("M", &ac)?;
    circ.grouped("xyZ", |c| sq_const_block(c, &xy, &l.z3, &l.y3))?;
    // Y3 += (D + X3) (A C + Z3)
    synth_add_inplace(&mut circ, &l.x3, &l.d)?;
    circ.grouped("M", |c| mult.emit(c, &field, &l.d, &l.z3p, &l.y3))?;
    synth_add_inplace(&mut circ, &l.x3, &l.d)?;
    // uncompute
    circ.extend_grouped("IM", &ac.inverse())?;
    circ.extend(&copies.inverse())?;
    let d_block = scratch_block(&circ, |c| const_block(c, x2, &l.z3, &l.d, false))?;
    circ.extend_grouped("IX", &d_block.inverse())?;
    let a2_block = scratch_block(&circ, |c| const_block(c, a2, &l.c, &l.bsq, trivial))?;
    circ.extend_grouped("Ia2", &a2_block.inverse())?;
    // clear B^2, then C from Z3 = C^2
    let b_sq = scratch_block(&circ, |c| synth_square(c, &field, &l.x1, &l.bsq))?;
    circ.extend_grouped("IS", &b_sq.inverse())?;
    circ.grouped("SR", |c| synth_sqrt(c, &field, &l.z3, &l.c))?;
    // restore X1 and Y1
    let b_block = scratch_block(&circ, |c| const_block(c, x2, &l.z1, &l.x1, false))?;
    circ.extend_grouped("IX", &b_block.inverse())?;
    let a_block = scratch_block(&circ, |c| sq_const_block(c, y2, &l.z1, &l.y1))?;
    circ.extend_grouped("ISM", &a_block.inverse())?;

    let multiplier = MultiplierCost::measure(&field, mult.as_ref())?;
    let squaring = SquaringCost::measure(&field)?;
    let clifford_t = circ.metrics_decomposed();
    let pre = circ.metrics();
    let bounds = bound_comparison(&pre, &clifford_t, n as u64, &multiplier, &squaring);
    let (circuit, mut report) = if opts.decompose_toffoli {
        let d = circ.decompose_toffoli();
        (d, clifford_t.clone())
    } else {
        (circ, pre)
    };
    report.bounds = bounds;
    Ok(PointAddition {
        circuit,
        layout: l,
        report,
        clifford_t,
        multiplier,
        squaring,
        multiplier_variant: mult.variant(),
        n,
    })
}

/// Achieved values against the closed-form resource bounds.
///
/// `pre` and `post` are the metrics before and after Toffoli decomposition;
/// multiplier figures are for one standalone decomposed multiplier.
pub fn bound_comparison(
    pre: &ResourceReport,
    post: &ResourceReport,
    n: u64,
    m: &MultiplierCost,
    s: &SquaringCost,
) -> BTreeMap<String, BoundCheck> {
    let linear_budget = 5 * s.gates + 10 * n * n + 10 - 2 * n;
    let mult_gates: u64 = ["M", "IM"].iter().map(|l| post.group_counts(l).total()).sum();
    let sqrt_stage: u64 = ["IS", "SR"].iter().map(|l| pre.group_counts(l).total()).sum();
    let mut b = BTreeMap::new();
    b.insert("t_count".into(), BoundCheck::at_most(5 * m.t_gates, post.t_count));
    b.insert(
        "total_gates".into(),
        BoundCheck::at_most(5 * m.gates + linear_budget, post.total_gates),
    );
    b.insert(
        "non_multiplier_gates".into(),
        BoundCheck::at_most(linear_budget, post.total_gates - mult_gates),
    );
    b.insert("t_depth".into(), BoundCheck::at_most(4 * m.t_depth, post.t_depth));
    b.insert(
        "depth".into(),
        BoundCheck::at_most(3 * m.depth + m.depth.max(n) + s.depth + 7 * n + 4, post.depth),
    );
    b.insert("width".into(), BoundCheck::exactly(11 * n + 4 * m.ancillae, post.width));
    b.insert(
        "sqrt_stage_gates".into(),
        BoundCheck::at_most(2 * s.gates + n * n - n + 1, sqrt_stage),
    );
    b.insert(
        "toffoli_count".into(),
        BoundCheck::exactly(5 * m.toffolis, pre.toffoli_count),
    );
    b
}

/// Fail with the first violated bound, in name order.
pub fn check_bounds(bounds: &BTreeMap<String, BoundCheck>) -> Result<()> {
    match bounds.iter().find(|(_, b)| !b.holds()) {
        Some((name, b)) => Err(Error::BoundViolated {
            name: name.clone(),
            bound: b.bound,
            achieved: b.achieved,
        }),
        None => Ok(()),
    }
}

/// Place an LD input point into a fresh basis state of the circuit.
pub fn input_state(pa: &PointAddition, p1: &LdPoint) -> Result<BasisState> {
    let mut s = BasisState::zeros(pa.circuit.width());
    s.write_register(&pa.layout.x1, &p1.x)?;
    s.write_register(&pa.layout.y1, &p1.y)?;
    s.write_register(&pa.layout.z1, &p1.z)?;
    Ok(s)
}

/// Gate appended by the fault-injection hook: flips the lowest `X3` wire.
pub fn fault_gate(pa: &PointAddition) -> Gate {
    Gate::not(pa.layout.x3.wires[0])
}
