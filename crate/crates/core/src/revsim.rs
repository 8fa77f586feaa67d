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

//! Basis-state simulation of NOT/CNOT/Toffoli circuits.

use std::fmt;

use crate::circuit::{Circuit, GateKind, RegisterRef};
use crate::error::{Error, Result};
use crate::gf2field::{FieldElem, IrreduciblePoly};

/// One classical bit per wire, packed little-endian into words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasisState {
    len: usize,
    words: Vec<u64>,
}

impl BasisState {
    pub fn zeros(len: usize) -> Self {
        BasisState {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut s = BasisState::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            s.set(i, b);
        }
        s
    }

    /// The low `len` bits of `value`.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut s = BasisState::zeros(len);
        for i in 0..len.min(64) {
            s.set(i, (value >> i) & 1 == 1);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn write_register(&mut self, reg: &RegisterRef, value: &FieldElem) -> Result<()> {
        if reg.len() != value.degree_bound() {
            return Err(Error::DimensionMismatch {
                expected: reg.len(),
                got: value.degree_bound(),
            });
        }
        for (i, &w) in reg.wires.iter().enumerate() {
            self.set(w as usize, value.coeff(i));
        }
        Ok(())
    }

    pub fn read_register(&self, reg: &RegisterRef, field: &IrreduciblePoly) -> Result<FieldElem> {
        let bits: Vec<bool> = reg.wires.iter().map(|&w| self.get(w as usize)).collect();
        field.from_coeffs(&bits)
    }

    pub fn register_is_zero(&self, reg: &RegisterRef) -> bool {
        reg.wires.iter().all(|&w| !self.get(w as usize))
    }
}

impl fmt::Debug for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(">")
    }
}

fn check_classical(c: &Circuit) -> Result<()> {
    match c.gates().iter().find(|g| !g.kind().is_classical()) {
        Some(g) => Err(Error::UnsupportedGate(g.kind().to_string())),
        None => Ok(()),
    }
}

/// Apply the gates in place, ignoring the output permutation.
pub fn run_in_place(c: &Circuit, s: &mut BasisState) -> Result<()> {
    if s.len() != c.width() {
        return Err(Error::DimensionMismatch {
            expected: c.width(),
            got: s.len(),
        });
    }
    check_classical(c)?;
    for g in c.gates() {
        let w = g.wires();
        match g.kind() {
            GateKind::Not => s.flip(w[0] as usize),
            GateKind::Cnot => {
                if s.get(w[0] as usize) {
                    s.flip(w[1] as usize);
                }
            }
            GateKind::Toffoli => {
                if s.get(w[0] as usize) && s.get(w[1] as usize) {
                    s.flip(w[2] as usize);
                }
            }
            _ => unreachable!("checked above"),
        }
    }
    Ok(())
}

/// Simulate `c` on `s`. The result is indexed by logical wire: bit `w` is read
/// from physical wire `out_permutation[w]`.
pub fn simulate(c: &Circuit, s: &BasisState) -> Result<BasisState> {
    let mut raw = s.clone();
    run_in_place(c, &mut raw)?;
    let perm = c.out_permutation();
    if perm.iter().enumerate().all(|(i, &p)| p as usize == i) {
        return Ok(raw);
    }
    let mut out = BasisState::zeros(raw.len());
    for (w, &p) in perm.iter().enumerate() {
        out.set(w, raw.get(p as usize));
    }
    Ok(out)
}
