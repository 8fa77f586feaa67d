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

//! Field operations compiled to reversible gates.
//!
//! Every function appends to an existing [`Circuit`] and acts on registers
//! already declared in it. Linear maps `|u>|v> -> |u>|v + M u>` cost exactly
//! `weight(M)` CNOTs: the support of `M` is read as a bipartite graph, and each
//! color class of a minimum edge coloring becomes one parallel CNOT layer, so
//! the depth equals the largest row or column weight.

use crate::circuit::{check_disjoint, Circuit, Gate};
use crate::edgecolor::{color_edges, graph_of_matrix};
use crate::error::{Error, Result};
use crate::gf2field::{FieldElem, IrreduciblePoly};
use crate::linmaps::{matrix_of_const_mul, matrix_of_sqrt, matrix_of_square_then_const, matrix_of_squaring, BinMatrix};

pub use crate::circuit::RegisterRef;

fn check_len(reg: &RegisterRef, n: usize) -> Result<()> {
    if reg.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: reg.len(),
        });
    }
    Ok(())
}

/// `dst += M * src`, one CNOT per 1-entry, layered by edge coloring.
pub fn synth_linear(circ: &mut Circuit, m: &BinMatrix, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    check_len(src, m.dim())?;
    check_len(dst, m.dim())?;
    check_disjoint(&[src, dst])?;
    let g = graph_of_matrix(m);
    let coloring = color_edges(&g);
    for class in coloring.classes() {
        for e in class {
            let (i, j) = g.edges()[e];
            circ.append(Gate::cnot(src.wires[i], dst.wires[j]))?;
        }
    }
    Ok(())
}

/// `dst += src` with `n` parallel CNOTs.
pub fn synth_add_inplace(circ: &mut Circuit, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    check_len(dst, src.len())?;
    check_disjoint(&[src, dst])?;
    for (&s, &d) in src.wires.iter().zip(&dst.wires) {
        circ.append(Gate::cnot(s, d))?;
    }
    Ok(())
}

/// `dst += src^2`.
pub fn synth_square(circ: &mut Circuit, p: &IrreduciblePoly, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    synth_linear(circ, &matrix_of_squaring(p)?, src, dst)
}

/// `dst += sqrt(src)`.
pub fn synth_sqrt(circ: &mut Circuit, p: &IrreduciblePoly, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    synth_linear(circ, &matrix_of_sqrt(p)?, src, dst)
}

/// `dst += k * src` for a nonzero constant `k`.
pub fn synth_const_mul(circ: &mut Circuit, k: &FieldElem, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    synth_linear(circ, &matrix_of_const_mul(k)?, src, dst)
}

/// `dst += k * src^2` as a single fused linear map.
pub fn synth_sq_then_const(circ: &mut Circuit, k: &FieldElem, src: &RegisterRef, dst: &RegisterRef) -> Result<()> {
    if k.is_zero() {
        return Err(Error::SingularMap);
    }
    synth_linear(circ, &matrix_of_square_then_const(k)?, src, dst)
}

/// A reversible `|a>|b>|c> -> |a>|b>|c + a*b>` circuit generator.
pub trait FieldMultiplier {
    /// Short identifier recorded in reports.
    fn variant(&self) -> &'static str;

    /// Scratch wires needed beyond the three operand registers.
    fn ancilla_count(&self, _n: usize) -> usize {
        0
    }

    /// Append `acc += a * b`, valid for every initial `acc`.
    fn emit(
        &self,
        circ: &mut Circuit,
        p: &IrreduciblePoly,
        a: &RegisterRef,
        b: &RegisterRef,
        acc: &RegisterRef,
    ) -> Result<()>;

    /// Append `acc = a * b` assuming `acc` starts at zero. The product may land
    /// on a reordering of `acc`'s wires; the returned register gives the order.
    fn emit_into_zero(
        &self,
        circ: &mut Circuit,
        p: &IrreduciblePoly,
        a: &RegisterRef,
        b: &RegisterRef,
        acc: &RegisterRef,
    ) -> Result<RegisterRef> {
        self.emit(circ, p, a, b, acc)?;
        Ok(acc.clone())
    }
}

/// Schoolbook multiplier with in-place shifts and no ancilla.
///
/// The accumulator is walked down: add `a_i * b` with `n` Toffolis, then divide
/// by `x`, for `i = 0..n`. After that the accumulator holds
/// `x^-(n-1) c + x^-(n-1) a b`, and `n - 1` multiplications by `x` bring it back.
/// Each shift by `x` or `x^-1` is a cyclic relabeling of the accumulator wires
/// plus one CNOT per middle term of `p`, so the whole multiplier costs `n^2`
/// Toffolis and `2 (n - 1) (weight(p) - 2)` CNOTs, and the relabelings cancel.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ShiftAddMultiplier;

impl ShiftAddMultiplier {
    fn middle_terms(p: &IrreduciblePoly) -> Vec<usize> {
        let n = p.degree();
        p.support().iter().copied().filter(|&s| s != 0 && s != n).collect()
    }

    fn add_row(circ: &mut Circuit, ai: u32, b: &RegisterRef, pos: &[u32]) -> Result<()> {
        for (&bj, &t) in b.wires.iter().zip(pos) {
            circ.append(Gate::toffoli(ai, bj, t))?;
        }
        Ok(())
    }

    /// `r <- r / x`; `pos` is updated to the new coefficient order.
    fn div_x(circ: &mut Circuit, middles: &[usize], pos: &mut [u32]) -> Result<()> {
        for &s in middles {
            circ.append(Gate::cnot(pos[0], pos[s]))?;
        }
        pos.rotate_left(1);
        Ok(())
    }

    /// `r <- r * x`; `pos` is updated to the new coefficient order.
    fn mul_x(circ: &mut Circuit, middles: &[usize], pos: &mut [u32]) -> Result<()> {
        let top = pos[pos.len() - 1];
        for &s in middles {
            circ.append(Gate::cnot(top, pos[s - 1]))?;
        }
        pos.rotate_right(1);
        Ok(())
    }

    fn check(p: &IrreduciblePoly, a: &RegisterRef, b: &RegisterRef, acc: &RegisterRef) -> Result<()> {
        let n = p.degree();
        for r in [a, b, acc] {
            check_len(r, n)?;
        }
        check_disjoint(&[a, b, acc])
    }
}

impl FieldMultiplier for ShiftAddMultiplier {
    fn variant(&self) -> &'static str {
        "shift-add"
    }

    fn emit(
        &self,
        circ: &mut Circuit,
        p: &IrreduciblePoly,
        a: &RegisterRef,
        b: &RegisterRef,
        acc: &RegisterRef,
    ) -> Result<()> {
        Self::check(p, a, b, acc)?;
        let n = p.degree();
        let middles = Self::middle_terms(p);
        let mut pos = acc.wires.clone();
        for i in 0..n {
            Self::add_row(circ, a.wires[i], b, &pos)?;
            if i + 1 < n {
                Self::div_x(circ, &middles, &mut pos)?;
            }
        }
        for _ in 1..n {
            Self::mul_x(circ, &middles, &mut pos)?;
        }
        debug_assert_eq!(pos, acc.wires);
        Ok(())
    }

    /// Horner from the top coefficient of `a`; skips the walk back, so only
    /// `n - 1` shifts are emitted and the result order is rotated.
    fn emit_into_zero(
        &self,
        circ: &mut Circuit,
        p: &IrreduciblePoly,
        a: &RegisterRef,
        b: &RegisterRef,
        acc: &RegisterRef,
    ) -> Result<RegisterRef> {
        Self::check(p, a, b, acc)?;
        let n = p.degree();
        let middles = Self::middle_terms(p);
        let mut pos = acc.wires.clone();
        for i in (0..n).rev() {
            if i + 1 < n {
                Self::mul_x(circ, &middles, &mut pos)?;
            }
            Self::add_row(circ, a.wires[i], b, &pos)?;
        }
        RegisterRef::new(acc.name.clone(), pos)
    }
}

/// `acc += a * b` with the default multiplier.
pub fn synth_mult(
    circ: &mut Circuit,
    p: &IrreduciblePoly,
    a: &RegisterRef,
    b: &RegisterRef,
    acc: &RegisterRef,
) -> Result<()> {
    ShiftAddMultiplier.emit(circ, p, a, b, acc)
}

/// A standalone multiplier on registers `a`, `b`, `c`, used for cost measurement.
pub fn multiplier_circuit(p: &IrreduciblePoly, mult: &dyn FieldMultiplier) -> Result<Circuit> {
    let n = p.degree();
    let mut circ = Circuit::new();
    let a = circ.add_register("a", n)?;
    let b = circ.add_register("b", n)?;
    let c = circ.add_register("c", n)?;
    for k in 0..mult.ancilla_count(n) {
        circ.add_wire(format!("anc_{k}"))?;
    }
    mult.emit(&mut circ, p, &a, &b, &c)?;
    Ok(circ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::revsim::{simulate, BasisState};

    fn field(text: &str) -> IrreduciblePoly {
        IrreduciblePoly::parse(text).unwrap()
    }

    fn two_regs(n: usize) -> (Circuit, RegisterRef, RegisterRef) {
        let mut c = Circuit::new();
        let a = c.add_register("a", n).unwrap();
        let b = c.add_register("b", n).unwrap();
        (c, a, b)
    }

    /// Check `dst += f(src)` on every input pair.
    fn check_linear_exhaustive<F: Fn(&FieldElem) -> FieldElem>(
        circ: &Circuit,
        p: &IrreduciblePoly,
        src: &RegisterRef,
        dst: &RegisterRef,
        f: F,
    ) {
        for u in p.elements().unwrap() {
            for v in p.elements().unwrap() {
                let mut s = BasisState::zeros(circ.width());
                s.write_register(src, &u).unwrap();
                s.write_register(dst, &v).unwrap();
                let out = simulate(circ, &s).unwrap();
                assert_eq!(out.read_register(src, p).unwrap(), u);
                assert_eq!(out.read_register(dst, p).unwrap(), &v + &f(&u));
            }
        }
    }

    #[test]
    fn f8_constant_multiplication_circuit() {
        let p = field("1+x+x^3");
        let k = p.parse_elem("1+x+x^2").unwrap();
        let (mut c, a, b) = two_regs(3);
        synth_const_mul(&mut c, &k, &a, &b).unwrap();
        let m = c.metrics();
        assert_eq!((m.cnot_count, m.depth, m.total_gates), (6, 3, 6));
        check_linear_exhaustive(&c, &p, &a, &b, |u| &k * u);
    }

    #[test]
    fn f128_squaring_circuit() {
        let p = field("1+x+x^7");
        let (mut c, a, b) = two_regs(7);
        synth_square(&mut c, &p, &a, &b).unwrap();
        let m = c.metrics();
        assert_eq!((m.cnot_count, m.depth), (10, 2));
        check_linear_exhaustive(&c, &p, &a, &b, FieldElem::square);
    }

    #[test]
    fn identity_map_and_addition() {
        let (mut c, a, b) = two_regs(5);
        synth_linear(&mut c, &BinMatrix::identity(5).unwrap(), &a, &b).unwrap();
        assert_eq!((c.metrics().cnot_count, c.metrics().depth), (5, 1));

        let p = field("1+x+x^3");
        let (mut c, a, b) = two_regs(3);
        synth_add_inplace(&mut c, &a, &b).unwrap();
        assert_eq!((c.metrics().cnot_count, c.metrics().depth), (3, 1));
        check_linear_exhaustive(&c, &p, &a, &b, Clone::clone);
        let twice = Circuit::compose(&c, &c).unwrap();
        check_linear_exhaustive(&twice, &p, &a, &b, |u| u.modulus().zero());
    }

    #[test]
    fn sqrt_and_fused_maps_match_field() {
        let p = field("1+x^2+x^5");
        let (mut c, a, b) = two_regs(5);
        synth_sqrt(&mut c, &p, &a, &b).unwrap();
        check_linear_exhaustive(&c, &p, &a, &b, FieldElem::sqrt);

        let k = p.parse_elem("x+x^3").unwrap();
        let (mut c, a, b) = two_regs(5);
        synth_sq_then_const(&mut c, &k, &a, &b).unwrap();
        check_linear_exhaustive(&c, &p, &a, &b, |u| &k * &u.square());

        let (mut sq, a, b) = two_regs(5);
        synth_square(&mut sq, &p, &a, &b).unwrap();
        let (mut fused, a, b) = two_regs(5);
        synth_sq_then_const(&mut fused, &p.one(), &a, &b).unwrap();
        assert_eq!(sq, fused);
        assert_eq!(
            synth_sq_then_const(&mut fused, &p.zero(), &a, &b),
            Err(Error::SingularMap)
        );
    }

    #[test]
    fn dss_linear_map_counts() {
        let p = field("1+x^74+x^233");
        let (mut c, a, b) = two_regs(233);
        synth_square(&mut c, &p, &a, &b).unwrap();
        assert_eq!((c.metrics().cnot_count, c.metrics().depth), (386, 3));

        let p = field("1+x^87+x^409");
        let (mut c, a, b) = two_regs(409);
        synth_sqrt(&mut c, &p, &a, &b).unwrap();
        assert_eq!((c.metrics().cnot_count, c.metrics().depth), (613, 2));
    }

    #[test]
    fn overlapping_registers_are_rejected() {
        let p = field("1+x+x^3");
        let (mut c, a, _) = two_regs(3);
        assert_eq!(synth_square(&mut c, &p, &a, &a), Err(Error::RegisterOverlap));
        assert_eq!(synth_add_inplace(&mut c, &a, &a), Err(Error::RegisterOverlap));
        assert_eq!(synth_mult(&mut c, &p, &a, &a, &a), Err(Error::RegisterOverlap));
    }

    #[test]
    fn one_bit_multiplier_is_one_toffoli() {
        let p = field("1+x");
        let c = multiplier_circuit(&p, &ShiftAddMultiplier).unwrap();
        let m = c.metrics();
        assert_eq!((m.toffoli_count, m.total_gates), (1, 1));
        assert_eq!(c.inverse().gates(), c.gates());
    }

    #[test]
    fn f8_multiplier_exhaustive() {
        let p = field("1+x+x^3");
        let c = multiplier_circuit(&p, &ShiftAddMultiplier).unwrap();
        let m = c.metrics();
        assert_eq!(m.toffoli_count, 9);
        assert_eq!(m.cnot_count, 4);
        let regs: Vec<_> = c.registers().to_vec();
        for idx in 0u64..512 {
            let s = BasisState::from_u64(9, idx);
            let out = simulate(&c, &s).unwrap();
            let [a, b, acc] = [0, 1, 2].map(|k| s.read_register(&regs[k], &p).unwrap());
            assert_eq!(out.read_register(&regs[0], &p).unwrap(), a);
            assert_eq!(out.read_register(&regs[1], &p).unwrap(), b);
            assert_eq!(out.read_register(&regs[2], &p).unwrap(), &acc + &(&a * &b));
        }
    }

    #[test]
    fn zero_accumulator_variant() {
        let p = field("1+x^2+x^3+x^4+x^8");
        let mut c = Circuit::new();
        let a = c.add_register("a", 8).unwrap();
        let b = c.add_register("b", 8).unwrap();
        let acc = c.add_register("c", 8).unwrap();
        let out_reg = ShiftAddMultiplier.emit_into_zero(&mut c, &p, &a, &b, &acc).unwrap();
        assert_eq!(c.metrics().cnot_count, 7 * 3);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for _ in 0..200 {
            let (x, y) = (p.random(&mut rng), p.random(&mut rng));
            let mut s = BasisState::zeros(24);
            s.write_register(&a, &x).unwrap();
            s.write_register(&b, &y).unwrap();
            let out = simulate(&c, &s).unwrap();
            assert_eq!(out.read_register(&out_reg, &p).unwrap(), &x * &y);
        }
    }

    #[test]
    fn dss_multiplier_counts() {
        for text in ["1+x^3+x^6+x^7+x^163", "1+x^74+x^233"] {
            let p = field(text);
            let n = p.degree() as u64;
            let c = multiplier_circuit(&p, &ShiftAddMultiplier).unwrap();
            let m = c.metrics();
            assert_eq!(m.toffoli_count, n * n);
            assert_eq!(m.cnot_count, 2 * (n - 1) * (p.weight() as u64 - 2));
            assert!(m.cnot_count < n * n);
        }
    }
}
