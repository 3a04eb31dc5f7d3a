use thiserror::Error;

use crate::geometry::GeometryError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column} (field `{field}`): {message}")]
    Parse {
        line: usize,
        column: usize,
        field: String,
        message: String,
    },

    /// A data-model invariant does not hold. The message names the field.
    #[error("{0}")]
    Invariant(String),

    #[error(transparent)]
    Geometry(#[from] GeometryError),

    #[error("no image intersects the area of interest")]
    NoCoverage,

    #[error("catalog: {0}")]
    Catalog(String),

    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("instance has {m} images, brute force is limited to {limit}")]
    TooLarge { m: usize, limit: usize },
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}

/// Deserializes JSON, reporting the offending field path and position.
pub fn from_json_str<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        Error::Parse {
            line: inner.line(),
            column: inner.column(),
            field,
            message: inner.to_string(),
        }
    })?;
    de.end().map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        field: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Pretty JSON with a trailing newline; deterministic for equal values.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

pub(crate) fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
