//! Group sources: built-in specs and JSON group-definition files.

use std::fs;
use std::path::{Path, PathBuf};

use eigenspace_core::group::{closure, DEFAULT_MAX_ORDER};
use eigenspace_core::parse::{parse_scalar, ParseError};
use eigenspace_core::{builtin, GroupError, RMatrix, ReflectionGroup};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum SourceError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Json {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: generator {generator}, row {row}, entry {entry}: {error}")]
    Entry {
        path: PathBuf,
        generator: usize,
        row: usize,
        entry: usize,
        error: ParseError,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl SourceError {
    /// Orthogonality failures are verification failures; everything
    /// else is bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            SourceError::Group(GroupError::NotOrthogonal { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    name: Option<String>,
    dimension: Option<usize>,
    cyclotomic_order: Option<u32>,
    generators: Option<Vec<Vec<Vec<String>>>>,
    builtin: Option<String>,
}

impl GroupSource {
    pub fn load(&self) -> Result<ReflectionGroup, SourceError> {
        let group = match self {
            GroupSource::Builtin(spec) => builtin(spec)?,
            GroupSource::File(path) => load_file(path)?,
        };
        group.check_orthogonal()?;
        Ok(group)
    }
}

fn invalid(path: &Path, message: impl Into<String>) -> SourceError {
    SourceError::Invalid {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

pub fn load_file(path: &Path) -> Result<ReflectionGroup, SourceError> {
    let text = fs::read_to_string(path).map_err(|source| SourceError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_group_file(path, &text)
}

pub fn parse_group_file(path: &Path, text: &str) -> Result<ReflectionGroup, SourceError> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| SourceError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if let Some(spec) = &file.builtin {
        if file.generators.is_some() {
            return Err(invalid(path, "give either \"builtin\" or \"generators\", not both"));
        }
        let group = builtin(spec)?;
        return Ok(match file.name {
            Some(name) => group.with_name(name),
            None => group,
        });
    }
    let generators = file
        .generators
        .ok_or_else(|| invalid(path, "missing \"generators\" (or \"builtin\")"))?;
    let dimension = file
        .dimension
        .ok_or_else(|| invalid(path, "missing \"dimension\""))?;
    let mut matrices = Vec::with_capacity(generators.len());
    for (g, rows) in generators.iter().enumerate() {
        if rows.len() != dimension || rows.iter().any(|r| r.len() != dimension) {
            return Err(invalid(
                path,
                format!("generator {} is not a {dimension}x{dimension} matrix", g + 1),
            ));
        }
        let mut parsed = Vec::with_capacity(dimension);
        for (r, row) in rows.iter().enumerate() {
            let mut out = Vec::with_capacity(dimension);
            for (e, entry) in row.iter().enumerate() {
                let value = parse_scalar(entry).map_err(|error| SourceError::Entry {
                    path: path.to_path_buf(),
                    generator: g + 1,
                    row: r + 1,
                    entry: e + 1,
                    error,
                })?;
                if let Some(m) = file.cyclotomic_order {
                    if m == 0 || m % value.order() != 0 {
                        return Err(invalid(
                            path,
                            format!(
                                "generator {}, row {}, entry {}: {value} does not lie in Q(E({m}))",
                                g + 1,
                                r + 1,
                                e + 1
                            ),
                        ));
                    }
                }
                out.push(value);
            }
            parsed.push(out);
        }
        matrices.push(RMatrix::from_rows(parsed)?);
    }
    let group = closure(&matrices, DEFAULT_MAX_ORDER)?;
    Ok(match file.name {
        Some(name) => group.with_name(name),
        None => group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<ReflectionGroup, SourceError> {
        parse_group_file(Path::new("g.json"), text)
    }

    #[test]
    fn explicit_generators() {
        let g = parse(
            r#"{"name": "d4", "dimension": 2, "cyclotomic_order": 4,
                "generators": [[["0", "-1"], ["1", "0"]], [["1", "0"], ["0", "-1"]]]}"#,
        )
        .unwrap();
        assert_eq!((g.name(), g.order(), g.reflection_count()), ("d4", 8, 4));
    }

    #[test]
    fn cosine_entries() {
        let c = "(E(5) + E(5)^4)/2";
        let s = "(E(5) - E(5)^4)/(2*i)";
        let text = format!(
            r#"{{"name": "d5", "dimension": 2, "cyclotomic_order": 20,
                "generators": [[["{c}", "-({s})"], ["{s}", "{c}"]], [["1", "0"], ["0", "-1"]]]}}"#
        );
        let g = parse(&text).unwrap();
        assert_eq!(g.order(), 10);
    }

    #[test]
    fn builtin_reference() {
        assert_eq!(parse(r#"{"builtin": "dihedral:5"}"#).unwrap().order(), 10);
    }

    #[test]
    fn malformed_entries() {
        let err = parse(r#"{"dimension": 1, "generators": [[["E(0)"]]]}"#).unwrap_err();
        assert!(matches!(err, SourceError::Entry { generator: 1, row: 1, entry: 1, .. }));
        assert!(err.to_string().contains("1:3"));
        assert_eq!(err.exit_code(), 2);
        let err = parse("{\"dimension\": 1,\n \"generators\": [[[1]]]}").unwrap_err();
        assert!(matches!(err, SourceError::Json { line: 2, .. }));
        let err = parse(r#"{"dimension": 2, "generators": [[["1"]]]}"#).unwrap_err();
        assert!(matches!(err, SourceError::Invalid { .. }));
        let err = parse(r#"{"dimension": 1, "cyclotomic_order": 3, "generators": [[["i"]]]}"#).unwrap_err();
        assert!(err.to_string().contains("Q(E(3))"));
    }

    #[test]
    fn infinite_and_non_orthogonal_groups() {
        let err = parse(r#"{"dimension": 1, "generators": [[["2"]]]}"#).unwrap_err();
        assert!(matches!(err, SourceError::Group(GroupError::NotFinite { .. })));
        let g = parse(r#"{"dimension": 1, "generators": [[["i"]]]}"#).unwrap();
        let err = SourceError::from(g.check_orthogonal().unwrap_err());
        assert_eq!(err.exit_code(), 1);
    }
}
