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

use thiserror::Error;

/// Errors produced anywhere in the synthesizer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("reducible polynomial: {0}")]
    Reducible(String),
    #[error("field elements belong to different moduli")]
    ModulusMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("singular linear map")]
    SingularMap,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown wire {0}")]
    UnknownWire(u32),
    #[error("gate operands are not distinct")]
    DuplicateOperand,
    #[error("registers overlap")]
    RegisterOverlap,
    #[error("group `{0}` is not properly nested")]
    IllNestedGroup(String),
    #[error("gate {0} is not classical; simulate the circuit before Toffoli decomposition")]
    UnsupportedGate(String),
    #[error("point is not on the curve")]
    OffCurve,
    #[error("curve coefficient a6 must be nonzero")]
    SingularCurve,
    #[error("inputs violate the generic addition branch (need O != P1 != +-P2)")]
    GenericBranchViolation,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bound `{name}` violated: achieved {achieved} > bound {bound}")]
    BoundViolated { name: String, bound: u64, achieved: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
