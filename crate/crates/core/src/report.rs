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

//! Serializable resource report for a synthesized addition circuit.
//!
//! Field order is fixed by the struct definitions and maps are ordered, so
//! serializing the same job twice yields identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::circuit::{GateCounts, ResourceReport};
use crate::ecoracle::{AffinePoint, Curve};
use crate::pointadd::{MultiplierCost, PointAddition, SquaringCost};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubcircuitEntry {
    pub label: String,
    pub counts: GateCounts,
    pub depth: u64,
    pub t_depth: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub bound: u64,
    pub achieved: u64,
    /// `true` when the bound is an equality rather than a ceiling.
    pub exact: bool,
    pub holds: bool,
}

/// Totals after replacing every Toffoli by its Clifford+T template.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordTSummary {
    pub counts: GateCounts,
    pub total_gates: u64,
    pub t_count: u64,
    pub depth: u64,
    pub t_depth: u64,
}

/// Costs of the earlier fixed-point addition circuit in projective
/// coordinates with 13 multiplications, evaluated with this job's multiplier.
/// The `O(n)` and `O(1)` terms of that construction are unknown and omitted,
/// so the gate and depth figures are lower estimates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriorConstruction {
    pub t_count: u64,
    pub total_gates_lower_estimate: u64,
    pub t_depth: u64,
    pub depth_lower_estimate: u64,
}

impl PriorConstruction {
    pub fn evaluate(n: u64, m: &MultiplierCost) -> Self {
        PriorConstruction {
            t_count: 13 * m.t_gates,
            total_gates_lower_estimate: 13 * m.gates + 12 * n * n,
            t_depth: 4 * m.t_depth,
            depth_lower_estimate: 4 * m.depth + 4 * n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveInfo {
    pub a2: String,
    pub a6: String,
    pub x2: String,
    pub y2: String,
    pub on_curve: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub schema: u32,
    pub n: usize,
    pub poly: String,
    pub multiplier_variant: String,
    pub curve: CurveInfo,
    /// Whether the written circuit is already in Clifford+T form.
    pub decomposed: bool,
    pub counts: GateCounts,
    pub total_gates: u64,
    pub toffoli_count: u64,
    pub t_count: u64,
    pub depth: u64,
    pub t_depth: u64,
    pub width: u64,
    pub subcircuits: Vec<SubcircuitEntry>,
    pub bounds: BTreeMap<String, BoundEntry>,
    pub clifford_t: CliffordTSummary,
    pub multiplier: MultiplierCost,
    pub squaring: SquaringCost,
    pub prior_construction: PriorConstruction,
}

fn subcircuits(r: &ResourceReport) -> Vec<SubcircuitEntry> {
    r.subcircuits
        .iter()
        .map(|g| SubcircuitEntry {
            label: g.label.clone(),
            counts: g.counts,
            depth: g.depth,
            t_depth: g.t_depth,
        })
        .collect()
}

impl JsonReport {
    pub fn new(curve: &Curve, p2: &AffinePoint, pa: &PointAddition, decomposed: bool) -> Self {
        let r = &pa.report;
        let (x2, y2) = p2
            .coords()
            .map_or((String::new(), String::new()), |(x, y)| (x.to_hex(), y.to_hex()));
        let ct = &pa.clifford_t;
        JsonReport {
            schema: SCHEMA_VERSION,
            n: pa.n,
            poly: curve.field().to_string(),
            multiplier_variant: pa.multiplier_variant.to_string(),
            curve: CurveInfo {
                a2: curve.a2().to_hex(),
                a6: curve.a6().to_hex(),
                x2,
                y2,
                on_curve: curve.on_curve_affine(p2),
            },
            decomposed,
            counts: r.counts,
            total_gates: r.total_gates,
            toffoli_count: r.toffoli_count,
            t_count: r.t_count,
            depth: r.depth,
            t_depth: r.t_depth,
            width: r.width,
            subcircuits: subcircuits(r),
            bounds: r
                .bounds
                .iter()
                .map(|(k, b)| {
                    let e = BoundEntry {
                        bound: b.bound,
                        achieved: b.achieved,
                        exact: b.exact,
                        holds: b.holds(),
                    };
                    (k.clone(), e)
                })
                .collect(),
            clifford_t: CliffordTSummary {
                counts: ct.counts,
                total_gates: ct.total_gates,
                t_count: ct.t_count,
                depth: ct.depth,
                t_depth: ct.t_depth,
            },
            multiplier: pa.multiplier,
            squaring: pa.squaring,
            prior_construction: PriorConstruction::evaluate(pa.n as u64, &pa.multiplier),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2field::IrreduciblePoly;
    use crate::pointadd::{synth_point_add, SynthesisOptions};

    #[test]
    fn toy_report_fields() {
        let f = IrreduciblePoly::parse("1+x").unwrap();
        let curve = Curve::new(f.one(), f.one()).unwrap();
        let p2 = AffinePoint::new_unchecked(f.one(), f.one()).unwrap();
        let opts = SynthesisOptions {
            allow_off_curve: true,
            ..Default::default()
        };
        let pa = synth_point_add(&curve, &p2, &opts).unwrap();
        let rep = JsonReport::new(&curve, &p2, &pa, false);
        assert_eq!((rep.schema, rep.n, rep.width, rep.toffoli_count), (1, 1, 11, 5));
        assert!(!rep.curve.on_curve);
        assert_eq!(rep.clifford_t.t_count, 35);
        assert_eq!(rep.prior_construction.t_count, 13 * 7);
        assert_eq!(rep.bounds["width"].bound, 11);
        assert!(rep.bounds.values().all(|b| b.holds));
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.starts_with("{\"schema\":1,\"n\":1,\"poly\":\"1+x\""));
        let back: JsonReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
    }
}
