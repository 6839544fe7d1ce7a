//! Map files.
//!
//! A map file is a TOML document describing one [`MapSpec`]. The `kind`
//! key selects the family:
//!
//! ```toml
//! kind = "linear"
//! matrix = [[0.0, 0.5], [0.5, 0.0]]
//! ```
//!
//! | kind            | keys                                                        |
//! |-----------------|-------------------------------------------------------------|
//! | `linear`        | `matrix`: rows of nonnegative numbers                       |
//! | `chain`         | `n ≥ 2`                                                     |
//! | `flipflop`      | `lambda ∈ (0, 1)`                                           |
//! | `maxpreserving` | `n`, `[[gains]]` tables with 1-based `i`, `j` and a `gain`  |
//! | `diagonal`      | `functions`: one scalar function per component              |
//! | `composition`   | `[outer]` and `[inner]` map tables; the map is outer ∘ inner |
//!
//! Scalar functions are written `{ linear = c }`, `{ power = a }`,
//! `{ scaled_power = { coeff = c, exponent = a } }`, `{ sum = [...] }` or
//! `{ max = [...] }`.

use std::path::{Path, PathBuf};

use decaypoint::MapSpec;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid map: {0}")]
    Semantic(String),
}

/// Parses and validates a map document.
pub fn parse_map_spec(text: &str) -> Result<MapSpec, SpecError> {
    let spec: MapSpec = toml::from_str(text).map_err(|e| {
        let (line, column) = e
            .span()
            .map_or((1, 1), |span| line_column(text, span.start));
        SpecError::Syntax {
            line,
            column,
            message: e.message().trim().to_string(),
        }
    })?;
    spec.build()
        .map_err(|e| SpecError::Semantic(e.to_string()))?;
    Ok(spec)
}

pub fn read_map_spec(path: &Path) -> Result<MapSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_map_spec(&text)
}

pub fn to_toml(spec: &MapSpec) -> String {
    toml::to_string(spec).expect("map specs serialize to TOML")
}

/// 1-based line and column of a byte offset.
fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[cfg(test)]
mod tests {
    use decaypoint::ScalarFn;

    use super::*;

    #[test]
    fn parses_linear_and_chain() {
        let spec = parse_map_spec("kind = \"linear\"\nmatrix = [[0, 0.5], [0.5, 0]]\n").unwrap();
        assert_eq!(
            spec,
            MapSpec::Linear {
                matrix: vec![vec![0.0, 0.5], vec![0.5, 0.0]]
            }
        );
        assert_eq!(spec.dim(), 2);
        assert_eq!(
            parse_map_spec("kind = \"chain\"\nn = 5").unwrap(),
            MapSpec::Chain { n: 5 }
        );
    }

    #[test]
    fn negative_entry_is_semantic() {
        let err = parse_map_spec("kind = \"linear\"\nmatrix = [[-1]]").unwrap_err();
        assert!(matches!(err, SpecError::Semantic(_)));
        assert!(err.to_string().contains("negative entry"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_map_spec("kind = \"chain\"\nn = = 3\n").unwrap_err();
        match err {
            SpecError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column >= 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_map_spec("kind = \"spiral\"\n"),
            Err(SpecError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_map_spec("kind = \"chain\"\n"),
            Err(SpecError::Syntax { .. })
        ));
    }

    #[test]
    fn semantic_checks_run() {
        assert!(matches!(
            parse_map_spec("kind = \"chain\"\nn = 1"),
            Err(SpecError::Semantic(_))
        ));
        assert!(matches!(
            parse_map_spec("kind = \"flipflop\"\nlambda = 1.5"),
            Err(SpecError::Semantic(_))
        ));
        let bad_index =
            "kind = \"maxpreserving\"\nn = 2\n[[gains]]\ni = 3\nj = 1\ngain = { linear = 0.5 }\n";
        assert!(matches!(
            parse_map_spec(bad_index),
            Err(SpecError::Semantic(_))
        ));
        let mismatch = "kind = \"composition\"\n[outer]\nkind = \"chain\"\nn = 3\n[inner]\nkind = \"chain\"\nn = 2\n";
        assert!(matches!(
            parse_map_spec(mismatch),
            Err(SpecError::Semantic(_))
        ));
    }

    #[test]
    fn nested_documents_round_trip() {
        let spec = MapSpec::Composition {
            outer: Box::new(MapSpec::Linear {
                matrix: vec![vec![0.2, 0.1], vec![0.0, 0.3]],
            }),
            inner: Box::new(MapSpec::Diagonal {
                functions: vec![
                    ScalarFn::Power(2.0),
                    ScalarFn::Max(vec![
                        ScalarFn::Linear(1.0),
                        ScalarFn::ScaledPower {
                            coeff: 0.5,
                            exponent: 3.0,
                        },
                    ]),
                ],
            }),
        };
        let text = to_toml(&spec);
        assert_eq!(parse_map_spec(&text).unwrap(), spec, "{text}");
    }

    #[test]
    fn line_column_counts_from_one() {
        assert_eq!(line_column("ab\ncd", 0), (1, 1));
        assert_eq!(line_column("ab\ncd", 4), (2, 2));
    }
}
