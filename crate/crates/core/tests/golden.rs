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

use ecadd_core::ecoracle::{AffinePoint, Curve};
use ecadd_core::gf2field::IrreduciblePoly;
use ecadd_core::pointadd::{synth_point_add, SynthesisOptions};
use ecadd_core::qcformat::{parse_qc, read_qc, write_qc};

const TOY_GOLDEN: &str = include_str!("golden/toy_point_add.qc");

fn toy_qc() -> String {
    let f = IrreduciblePoly::parse("1+x").unwrap();
    let curve = Curve::new(f.one(), f.one()).unwrap();
    let p2 = AffinePoint::new_unchecked(f.one(), f.one()).unwrap();
    let opts = SynthesisOptions {
        allow_off_curve: true,
        ..Default::default()
    };
    let pa = synth_point_add(&curve, &p2, &opts).unwrap();
    write_qc(&pa.circuit, true).unwrap()
}

#[test]
fn toy_circuit_matches_golden_file() {
    assert_eq!(toy_qc(), TOY_GOLDEN);
    assert_eq!(toy_qc(), toy_qc());
}

#[test]
fn golden_file_names_every_stage() {
    let doc = parse_qc(TOY_GOLDEN).unwrap();
    let mut stems: Vec<&str> = Vec::new();
    for (name, _) in &doc.subcircuits {
        let stem = name.rsplit_once('_').map_or(name.as_str(), |(s, _)| s);
        if !stems.contains(&stem) {
            stems.push(stem);
        }
    }
    assert_eq!(
        stems,
        ["SM", "X", "M", "S", "a2", "xyZ", "IM", "IX", "Ia2", "IS", "SR", "ISM"]
    );
    let c = read_qc(TOY_GOLDEN).unwrap();
    assert_eq!((c.width(), c.metrics().toffoli_count), (11, 5));
    assert_eq!(write_qc(&c, true).unwrap(), TOY_GOLDEN);
}
