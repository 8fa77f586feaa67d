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

//! Check a synthesized addition circuit against the curve oracle by
//! simulating it on basis states.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::circuit::RegisterRef;
use crate::ecoracle::{AffinePoint, Curve, LdPoint};
use crate::error::{Error, Result};
use crate::gf2field::FieldElem;
use crate::pointadd::{input_state, PointAddition};
use crate::revsim::{simulate, BasisState};

/// Largest field degree accepted for simulation.
pub const MAX_VERIFY_DEGREE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every LD representative of every admissible input point.
    Exhaustive,
    /// This many random admissible inputs.
    Samples(usize),
}

/// The first input on which the circuit disagrees with the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub p1: LdPoint,
    pub expected: LdPoint,
    pub got: LdPoint,
    pub input: BasisState,
    pub output: BasisState,
    pub reason: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ld = |p: &LdPoint| format!("({}, {}, {})", p.x.to_hex(), p.y.to_hex(), p.z.to_hex());
        writeln!(f, "reason:   {}", self.reason)?;
        writeln!(f, "P1:       {}", ld(&self.p1))?;
        writeln!(f, "expected: {}", ld(&self.expected))?;
        writeln!(f, "got:      {}", ld(&self.got))?;
        writeln!(f, "input:    {:?}", self.input)?;
        write!(f, "output:   {:?}", self.output)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub checked: u64,
    /// Order-sensitive hash of the inputs tried, for reproducibility checks.
    pub input_digest: u64,
    pub failure: Option<Counterexample>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Simulate one input and compare with the oracle. `None` means agreement.
///
/// Checks that the inputs are restored, the scratch registers are zero, the
/// outputs equal the mixed-addition formula and, when `p2` is on the curve,
/// that they represent the affine sum.
pub fn check_one(curve: &Curve, p2: &AffinePoint, pa: &PointAddition, p1: &LdPoint) -> Result<Option<Counterexample>> {
    let on_curve = curve.on_curve_affine(p2);
    let expected = if on_curve {
        curve.aldaoud_madd(p1, p2)?
    } else {
        curve.aldaoud_madd_unchecked(p1, p2)?
    };
    let field = curve.field();
    let input = input_state(pa, p1)?;
    let output = simulate(&pa.circuit, &input)?;
    let read = |r: &RegisterRef| output.read_register(r, field);
    let l = &pa.layout;
    let got = LdPoint {
        x: read(&l.x3)?,
        y: read(&l.y3)?,
        z: read(&l.z3)?,
    };
    let restored = [(&l.x1, &p1.x), (&l.y1, &p1.y), (&l.z1, &p1.z)]
        .into_iter()
        .map(|(r, v)| read(r).map(|x| &x == v))
        .collect::<Result<Vec<_>>>()?;

    let reason = if restored.contains(&false) {
        Some("input registers not restored".to_string())
    } else if let Some(r) = l.ancillae().into_iter().find(|r| !output.register_is_zero(r)) {
        Some(format!("scratch register {} not cleared", r.name))
    } else if got != expected {
        Some("output differs from the mixed-addition formula".to_string())
    } else if on_curve && got.to_affine()? != curve.affine_add(&p1.to_affine()?, p2)? {
        Some("output does not represent the affine sum".to_string())
    } else {
        None
    };
    Ok(reason.map(|reason| Counterexample {
        p1: p1.clone(),
        expected,
        got,
        input,
        output,
        reason,
    }))
}

fn check_degree(n: usize) -> Result<()> {
    if n > MAX_VERIFY_DEGREE {
        return Err(Error::Unsupported(format!(
            "simulation is capped at degree {MAX_VERIFY_DEGREE}, got {n}"
        )));
    }
    Ok(())
}

/// Inputs in the generic branch for a fixed `p2`.
fn admissible(p1: &LdPoint, x2: &FieldElem) -> bool {
    !p1.z.is_zero() && p1.x != x2 * &p1.z
}

/// Exhaustive runs enumerate about `2^(2n)` inputs for on-curve fixed points
/// and `2^(3n)` otherwise; these caps keep that under `2^24`.
pub const MAX_EXHAUSTIVE_DEGREE: usize = 12;
pub const MAX_EXHAUSTIVE_DEGREE_OFF_CURVE: usize = 8;

fn every_input(curve: &Curve, p2: &AffinePoint) -> Result<Vec<LdPoint>> {
    let field = curve.field();
    let on_curve = curve.on_curve_affine(p2);
    let cap = if on_curve {
        MAX_EXHAUSTIVE_DEGREE
    } else {
        MAX_EXHAUSTIVE_DEGREE_OFF_CURVE
    };
    if field.degree() > cap {
        return Err(Error::Unsupported(format!(
            "exhaustive verification is capped at degree {cap}; use sampling"
        )));
    }
    let (x2, _) = p2.coords().ok_or(Error::GenericBranchViolation)?;
    let elems: Vec<FieldElem> = field.elements()?.collect();
    let mut out = Vec::new();
    if on_curve {
        for p1 in curve.affine_points()? {
            for lambda in elems.iter().filter(|l| !l.is_zero()) {
                if let AffinePoint::Finite { .. } = p1 {
                    let ld = p1.to_ld_scaled(lambda)?;
                    if admissible(&ld, x2) {
                        out.push(ld);
                    }
                }
            }
        }
    } else {
        // off-curve fixed point: the formula is checked on every triple
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    let ld = LdPoint {
                        x: x.clone(),
                        y: y.clone(),
                        z: z.clone(),
                    };
                    if admissible(&ld, x2) {
                        out.push(ld);
                    }
                }
            }
        }
    }
    Ok(out)
}

fn random_input<R: Rng + ?Sized>(curve: &Curve, p2: &AffinePoint, rng: &mut R) -> Result<LdPoint> {
    let field = curve.field();
    let (x2, _) = p2.coords().ok_or(Error::GenericBranchViolation)?;
    let on_curve = curve.on_curve_affine(p2);
    for _ in 0..10_000 {
        let ld = if on_curve {
            let p1 = curve.random_point(rng)?;
            if p1.is_infinity() {
                continue;
            }
            p1.to_ld_scaled(&field.random_nonzero(rng))?
        } else {
            LdPoint {
                x: field.random(rng),
                y: field.random(rng),
                z: field.random(rng),
            }
        };
        if admissible(&ld, x2) {
            return Ok(ld);
        }
    }
    Err(Error::Unsupported("no admissible input point found".into()))
}

/// Run the circuit against the oracle, stopping at the first disagreement.
pub fn verify_point_add<R: Rng + ?Sized>(
    curve: &Curve,
    p2: &AffinePoint,
    pa: &PointAddition,
    mode: VerifyMode,
    rng: &mut R,
) -> Result<VerifyOutcome> {
    check_degree(pa.n)?;
    let mut hasher = DefaultHasher::new();
    let mut checked = 0;
    let mut run = |p1: &LdPoint| -> Result<Option<Counterexample>> {
        for v in [&p1.x, &p1.y, &p1.z] {
            v.coeffs().hash(&mut hasher);
        }
        checked += 1;
        check_one(curve, p2, pa, p1)
    };
    let mut failure = None;
    match mode {
        VerifyMode::Exhaustive => {
            for p1 in every_input(curve, p2)? {
                failure = run(&p1)?;
                if failure.is_some() {
                    break;
                }
            }
        }
        VerifyMode::Samples(k) => {
            for _ in 0..k {
                failure = run(&random_input(curve, p2, rng)?)?;
                if failure.is_some() {
                    break;
                }
            }
        }
    }
    Ok(VerifyOutcome {
        checked,
        input_digest: hasher.finish(),
        failure,
    })
}
