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

//! Reversible-circuit synthesis for fixed-point addition on ordinary binary
//! elliptic curves in López-Dahab coordinates.

pub mod circuit;
pub mod ecoracle;
pub mod edgecolor;
pub mod error;
pub mod fieldsynth;
pub mod gf2field;
pub mod linmaps;
pub mod pointadd;
pub mod presets;
pub mod qcformat;
pub mod report;
pub mod revsim;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
