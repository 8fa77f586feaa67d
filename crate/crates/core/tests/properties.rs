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

use ecadd_core::circuit::{Circuit, Gate, GateKind};
use ecadd_core::edgecolor::{color_edges, BipartiteGraph};
use ecadd_core::fieldsynth::{multiplier_circuit, synth_linear, ShiftAddMultiplier};
use ecadd_core::gf2field::{FieldElem, IrreduciblePoly};
use ecadd_core::linmaps::{matrix_of_sqrt, matrix_of_squaring, BinMatrix};
use ecadd_core::qcformat::{read_qc, write_qc};
use ecadd_core::revsim::{simulate, BasisState};
use ecadd_core::Error;
use proptest::prelude::*;
use proptest::test_runner::Config;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Low-weight irreducible polynomials of degree 2 to 64.
const FIELDS: [&str; 8] = [
    "1+x+x^2",
    "1+x+x^3",
    "1+x^2+x^5",
    "1+x+x^7",
    "1+x^2+x^3+x^4+x^8",
    "1+x^3+x^31",
    "1+x+x^3+x^4+x^64",
    "1+x^3+x^17",
];

fn field(i: usize) -> IrreduciblePoly {
    IrreduciblePoly::parse(FIELDS[i]).unwrap()
}

fn to_u64(e: &FieldElem) -> u64 {
    u64::from_str_radix(e.to_hex().trim_start_matches("0x"), 16).unwrap()
}

fn from_u64(p: &IrreduciblePoly, v: u64) -> FieldElem {
    p.from_hex(&format!("0x{v:x}")).unwrap()
}

/// Bitwise schoolbook product reduced by long division; shares no code with the crate.
fn reference_mul(p: &IrreduciblePoly, a: u64, b: u64) -> u64 {
    let n = p.degree();
    let modulus: u128 = p.support().iter().fold(0u128, |m, &e| m | 1u128 << e);
    let mut r: u128 = 0;
    for i in 0..n {
        if b >> i & 1 == 1 {
            r ^= (a as u128) << i;
        }
    }
    for d in (n..2 * n).rev() {
        if r >> d & 1 == 1 {
            r ^= modulus << (d - n);
        }
    }
    r as u64
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

proptest! {
    #![proptest_config(Config::with_cases(256))]

    #[test]
    fn field_axioms(fi in 0..FIELDS.len(), a: u64, b: u64, c: u64) {
        let p = field(fi);
        let m = mask(p.degree());
        let (a, b, c) = (from_u64(&p, a & m), from_u64(&p, b & m), from_u64(&p, c & m));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &a, p.zero());
        prop_assert_eq!(&a * &p.one(), a.clone());
        prop_assert_eq!(to_u64(&(&a * &b)), reference_mul(&p, to_u64(&a), to_u64(&b)));
        if a.is_zero() {
            prop_assert_eq!(a.inverse(), Err(Error::DivisionByZero));
        } else {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        prop_assert_eq!(a.sqrt().square(), a.clone());
        prop_assert_eq!(a.square(), &a * &a);
    }

    #[test]
    fn quadratic_solutions_satisfy_equation(fi in 0..FIELDS.len(), c: u64) {
        let p = field(fi);
        let c = from_u64(&p, c & mask(p.degree()));
        // odd degrees use the half-trace; even ones up to 16 search exhaustively
        if let Ok(sol) = c.solve_quadratic() {
            match sol {
                Some(z) => prop_assert_eq!(&z.square() + &z, c.clone()),
                None => prop_assert!(c.trace()),
            }
        }
    }

    #[test]
    fn squaring_and_sqrt_matrices_agree_with_field(fi in 0..FIELDS.len(), a: u64) {
        let p = field(fi);
        let a = from_u64(&p, a & mask(p.degree()));
        let sq = matrix_of_squaring(&p).unwrap();
        let rt = matrix_of_sqrt(&p).unwrap();
        prop_assert_eq!(sq.apply_elem(&a).unwrap(), a.square());
        prop_assert_eq!(rt.apply_elem(&a).unwrap(), a.sqrt());
        prop_assert_eq!(sq.multiply(&rt).unwrap(), BinMatrix::identity(p.degree()).unwrap());
    }
}

/// A random matrix of the given density, then single-entry flips until it is
/// invertible; this keeps dense samples dense.
fn random_invertible(rng: &mut ChaCha8Rng, n: usize, density: f64) -> BinMatrix {
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|_| (0..n).map(|_| u8::from(rng.gen_bool(density))).collect())
        .collect();
    let mut m = BinMatrix::from_rows(&rows).unwrap();
    while !m.is_invertible() {
        let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let v = m.get(r, c);
        m.set(r, c, !v);
    }
    m
}

proptest! {
    #![proptest_config(Config::with_cases(200))]

    /// An invertible map never needs more than `n^2 - n + 1` CNOTs.
    #[test]
    fn invertible_weight_ceiling(n in 1usize..=64, density in 0.05f64..0.98, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_invertible(&mut rng, n, density);
        prop_assert!(m.weight() <= n * n - n + 1);
        let mut c = Circuit::new();
        let a = c.add_register("a", n).unwrap();
        let b = c.add_register("b", n).unwrap();
        synth_linear(&mut c, &m, &a, &b).unwrap();
        let metrics = c.metrics();
        prop_assert_eq!(metrics.cnot_count as usize, m.weight());
        prop_assert_eq!(metrics.depth as usize, m.max_degree());
    }
}

proptest! {
    #![proptest_config(Config::with_cases(100))]

    /// Trinomials `x^n + x^m + 1` with `m <= n/2`: squaring costs at most `3n`
    /// CNOTs, and square root at most `5n` when `m` is odd.
    #[test]
    fn trinomial_ceilings(n in 2usize..=300, frac in 0.0f64..1.0) {
        let top = n / 2;
        let first = 1 + ((top.max(1) - 1) as f64 * frac) as usize;
        let found = (first..=top)
            .chain(1..first)
            .find_map(|m| IrreduciblePoly::from_exponents(&[0, m, n]).ok().map(|p| (m, p)));
        prop_assume!(found.is_some());
        let (m, p) = found.unwrap();
        prop_assert!(matrix_of_squaring(&p).unwrap().weight() <= 3 * n);
        if m % 2 == 1 {
            prop_assert!(matrix_of_sqrt(&p).unwrap().weight() <= 5 * n);
        }
    }

    /// Bipartite graphs are colored with exactly max-degree colors.
    #[test]
    fn coloring_uses_max_degree_colors(
        left in 1usize..=600,
        right in 1usize..=600,
        density in 0.0f64..0.02,
        seed: u64,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..left {
            for v in 0..right {
                if rng.gen_bool(density) {
                    edges.push((u, v));
                }
            }
        }
        let g = BipartiteGraph::new(left, right, edges).unwrap();
        let col = color_edges(&g);
        prop_assert!(col.is_proper(&g));
        prop_assert_eq!(col.num_colors, g.max_degree());
    }
}

fn random_classical(rng: &mut ChaCha8Rng, width: usize, len: usize) -> Circuit {
    let mut c = Circuit::new();
    c.add_register("q", width).unwrap();
    let mut open: Option<usize> = None;
    for i in 0..len {
        let mut wires: Vec<u32> = (0..width as u32).collect();
        for k in 0..3.min(width) {
            let j = rng.gen_range(k..width);
            wires.swap(k, j);
        }
        let arity = rng.gen_range(1..=3.min(width));
        let kind = [GateKind::Not, GateKind::Cnot, GateKind::Toffoli][arity - 1];
        c.append(Gate::new(kind, &wires[..arity]).unwrap()).unwrap();
        match open {
            Some(s) if rng.gen_bool(0.3) => {
                c.group(["M", "S", "X", "IM"][rng.gen_range(0..4)], s..i + 1).unwrap();
                open = None;
            }
            None if rng.gen_bool(0.3) => open = Some(i),
            _ => {}
        }
    }
    c
}

proptest! {
    #![proptest_config(Config::with_cases(256))]

    #[test]
    fn inverse_undoes_circuit(width in 1usize..12, len in 0usize..60, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_classical(&mut rng, width, len);
        prop_assert_eq!(c.inverse().inverse(), c.clone());
        let both = Circuit::compose(&c, &c.inverse()).unwrap();
        let s = BasisState::from_bits(&(0..width).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        prop_assert_eq!(simulate(&both, &s).unwrap(), s);
    }

    #[test]
    fn qc_round_trip(width in 1usize..12, len in 0usize..60, grouped: bool, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_classical(&mut rng, width, len);
        let text = write_qc(&c, grouped).unwrap();
        let back = read_qc(&text).unwrap();
        prop_assert_eq!(back.gates(), c.gates());
        prop_assert_eq!(back.metrics().counts, c.metrics().counts);
        prop_assert_eq!(back.metrics().depth, c.metrics().depth);
        prop_assert_eq!(write_qc(&back, grouped).unwrap(), text);
        let s = BasisState::from_bits(&(0..width).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
        prop_assert_eq!(simulate(&back, &s).unwrap(), simulate(&c, &s).unwrap());
    }

    #[test]
    fn decomposition_preserves_counts(width in 3usize..8, len in 0usize..40, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_classical(&mut rng, width, len);
        let tof = c.metrics().toffoli_count;
        let d = c.decompose_toffoli();
        prop_assert_eq!(d.metrics().t_count, 7 * tof);
        prop_assert_eq!(d.metrics(), c.metrics_decomposed());
    }
}

#[test]
fn small_multipliers_match_reference_on_random_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for fi in 0..5 {
        let p = field(fi);
        let n = p.degree();
        let c = multiplier_circuit(&p, &ShiftAddMultiplier).unwrap();
        let regs = c.registers().to_vec();
        for _ in 0..200 {
            let [a, b, acc] = [(); 3].map(|_| from_u64(&p, rng.gen::<u64>() & mask(n)));
            let mut s = BasisState::zeros(c.width());
            for (r, v) in regs.iter().zip([&a, &b, &acc]) {
                s.write_register(r, v).unwrap();
            }
            let out = simulate(&c, &s).unwrap();
            let want = to_u64(&acc) ^ reference_mul(&p, to_u64(&a), to_u64(&b));
            assert_eq!(to_u64(&out.read_register(&regs[2], &p).unwrap()), want);
        }
    }
}

/// Even middle exponents can break the `5n` square-root ceiling.
#[test]
fn even_middle_term_sqrt_counterexample() {
    let p = IrreduciblePoly::parse("1+x^2+x^29").unwrap();
    let weight = matrix_of_sqrt(&p).unwrap().weight();
    assert_eq!(weight, 148);
    assert!(weight > 5 * 29);
    assert!(matrix_of_squaring(&p).unwrap().weight() <= 3 * 29);
}
