//! JSON spec files.
//!
//! ```json
//! {
//!   "name": "toric2d",
//!   "lattice": {"rank": 2, "torsion": []},
//!   "qudits": [3, 3],
//!   "stabilizers": [["1 - x^-1", "1 - y^-1", "0", "0"], ["0", "0", "y - 1", "1 - x"]]
//! }
//! ```
//!
//! Each stabilizer lists the `2q` entries of one column of `σ`: the
//! `a`-components of the qudits, then the `b`-components.

use serde::{Deserialize, Serialize};
use stabq_core::code::CodeSpec;
use stabq_core::ring::{lcm, LatticeGroup, LaurentPoly, Matrix, Ring};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub name: String,
    pub lattice: LatticeGroup,
    pub qudits: Vec<u64>,
    pub stabilizers: Vec<Vec<String>>,
}

impl SpecFile {
    pub fn from_spec(spec: &CodeSpec) -> SpecFile {
        let sigma = spec.sigma();
        SpecFile {
            name: spec.name.clone(),
            lattice: spec.ring().lattice().clone(),
            qudits: spec.qudits().to_vec(),
            stabilizers: sigma.columns().iter().map(|c| c.iter().map(LaurentPoly::render).collect()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }
}

/// Line and column (1-based) of byte offset `pos`.
fn line_col(text: &str, pos: usize) -> (usize, usize) {
    let before = &text[..pos.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.chars().count(), |k| before[k + 1..].chars().count()) + 1;
    (line, column)
}

/// Byte offset of the contents of the `k`-th string literal after the
/// `"stabilizers"` key.
fn stabilizer_literal(text: &str, k: usize) -> Option<usize> {
    let start = text.find("\"stabilizers\"")? + "\"stabilizers\"".len();
    let bytes = text.as_bytes();
    let mut i = start;
    let mut seen = 0;
    while i < bytes.len() {
        if bytes[i] == b'"' {
            if seen == k {
                return Some(i + 1);
            }
            seen += 1;
            i += 1;
            while i < bytes.len() && bytes[i] != b'"' {
                i += if bytes[i] == b'\\' { 2 } else { 1 };
            }
        }
        i += 1;
    }
    None
}

/// Parses and validates a spec file.
pub fn parse_spec(text: &str) -> Result<CodeSpec, CliError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    build(&file, Some(text))
}

/// Builds a code from an already deserialized spec file. `text`, when given,
/// is used to locate polynomial syntax errors.
pub fn build(file: &SpecFile, text: Option<&str>) -> Result<CodeSpec, CliError> {
    let lattice = LatticeGroup::new(file.lattice.rank, file.lattice.torsion.clone())?;
    if file.qudits.is_empty() {
        return Err(CliError::Invalid("at least one qudit is required".into()));
    }
    let n = file.qudits.iter().fold(1, |a, &d| lcm(a, d.max(1)));
    let ring = Ring::new(n, lattice)?;
    let rows = 2 * file.qudits.len();
    let mut cols = Vec::with_capacity(file.stabilizers.len());
    for (j, stab) in file.stabilizers.iter().enumerate() {
        if stab.len() != rows {
            return Err(CliError::Invalid(format!("stabilizer {j} has {} entries, expected {rows}", stab.len())));
        }
        let mut col = Vec::with_capacity(rows);
        for (i, s) in stab.iter().enumerate() {
            let p = LaurentPoly::parse(&ring, s).map_err(|e| match e {
                stabq_core::Error::Syntax { column, message } => {
                    let flat = file.stabilizers[..j].iter().map(Vec::len).sum::<usize>() + i;
                    let (line, col) = text
                        .and_then(|t| stabilizer_literal(t, flat).map(|off| line_col(t, off)))
                        .map_or((0, column), |(l, c)| (l, c + column - 1));
                    CliError::Syntax { line, column: col, message: format!("stabilizer {j}, entry {i}: {message}") }
                }
                other => other.into(),
            })?;
            col.push(p);
        }
        cols.push(col);
    }
    let sigma = Matrix::from_cols(&ring, rows, cols);
    Ok(CodeSpec::new(file.name.clone(), ring, file.qudits.clone(), sigma)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORIC: &str = r#"{
  "name": "toric2d",
  "lattice": {"rank": 2},
  "qudits": [3, 3],
  "stabilizers": [["1 - x^-1", "1 - y^-1", "0", "0"], ["0", "0", "y - 1", "1 - x"]]
}"#;

    #[test]
    fn parses_and_validates() {
        let spec = parse_spec(TORIC).unwrap();
        assert_eq!(spec.dim(), 2);
        assert_eq!(spec.q(), 2);
        assert_eq!(spec.modulus(), 3);
    }

    #[test]
    fn polynomial_errors_point_into_the_file() {
        let bad = TORIC.replace("\"1 - x\"", "\"1 - x^\"");
        match parse_spec(&bad) {
            Err(CliError::Syntax { line, column, .. }) => {
                assert_eq!(line, 5);
                let l = bad.lines().nth(4).unwrap();
                assert_eq!(column, l.rfind("1 - x^").unwrap() + 7);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_errors_carry_location() {
        match parse_spec("{\n  \"name\": 3\n}") {
            Err(CliError::Syntax { line: 2, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_commuting_columns_are_named() {
        let bad = TORIC.replace("\"1 - x\"", "\"x - 1\"");
        match parse_spec(&bad) {
            Err(CliError::Core(stabq_core::Error::NotIsotropic(0, 1, _))) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
