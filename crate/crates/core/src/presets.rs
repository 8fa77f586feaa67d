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

//! Named reduction polynomials.

use crate::error::{Error, Result};
use crate::gf2field::IrreduciblePoly;

/// The five binary-field polynomials of the NIST digital signature standard,
/// keyed by the names of their B-curves.
pub const NIST_BINARY: [(&str, &str); 5] = [
    ("B163", "1+x^3+x^6+x^7+x^163"),
    ("B233", "1+x^74+x^233"),
    ("B283", "1+x^5+x^7+x^12+x^283"),
    ("B409", "1+x^87+x^409"),
    ("B571", "1+x^2+x^5+x^10+x^571"),
];

/// One fixed low-weight irreducible polynomial per degree 1..=8.
pub const SMALL_FIELDS: [&str; 8] = [
    "1+x",
    "1+x+x^2",
    "1+x+x^3",
    "1+x+x^4",
    "1+x^2+x^5",
    "1+x+x^6",
    "1+x+x^7",
    "1+x^2+x^3+x^4+x^8",
];

pub fn nist_fields() -> Vec<(&'static str, IrreduciblePoly)> {
    NIST_BINARY
        .iter()
        .map(|&(name, text)| (name, IrreduciblePoly::parse(text).expect("preset is irreducible")))
        .collect()
}

pub fn small_field(n: usize) -> Result<IrreduciblePoly> {
    let text = n
        .checked_sub(1)
        .and_then(|i| SMALL_FIELDS.get(i))
        .ok_or_else(|| Error::Unsupported(format!("no small preset of degree {n}")))?;
    IrreduciblePoly::parse(text)
}

/// Accept a preset name (`B233`, case-insensitive) or polynomial text.
pub fn resolve_poly(text: &str) -> Result<IrreduciblePoly> {
    let t = text.trim();
    if let Some(&(_, poly)) = NIST_BINARY.iter().find(|(name, _)| name.eq_ignore_ascii_case(t)) {
        return IrreduciblePoly::parse(poly);
    }
    IrreduciblePoly::parse(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse() {
        let degrees: Vec<_> = nist_fields().iter().map(|(_, p)| p.degree()).collect();
        assert_eq!(degrees, [163, 233, 283, 409, 571]);
        for n in 1..=8 {
            assert_eq!(small_field(n).unwrap().degree(), n);
        }
        assert!(small_field(9).is_err());
        assert_eq!(resolve_poly("b233").unwrap().degree(), 233);
        assert_eq!(resolve_poly("1+x+x^3").unwrap().degree(), 3);
        assert!(matches!(resolve_poly("1+x^2"), Err(Error::Reducible(_))));
    }
}
