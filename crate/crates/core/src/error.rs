use std::collections::BTreeSet;

/// Crate-wide error type. `is_input_error` separates bad data from bugs so
/// callers can map the two onto distinct exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: u64,
        message: String,
    },

    #[error("{file}: missing column {column:?}")]
    MissingColumn { file: String, column: String },

    #[error("rank {rank:?} is not in the salary schedule")]
    UncostedRank { rank: String },

    #[error("duplicate rank {rank:?} in salary schedule")]
    DuplicateRank { rank: String },

    #[error("non-positive cost {cost} for rank {rank:?}")]
    NonPositiveCost { rank: String, cost: f64 },

    #[error("cell ({university}, {sds}) has zero cost")]
    ZeroCostCell { university: String, sds: String },

    #[error("SDS {sds:?} is not in the sector registry")]
    UnknownSds { sds: String },

    #[error("empty reference set")]
    EmptyReferenceSet,

    #[error("publication {publication} has no reference set for category {category:?}")]
    MissingReferenceSet {
        publication: String,
        category: String,
    },

    #[error("cannot rank: value for {unit:?} is not finite")]
    NonFiniteValue { unit: String },

    #[error("cannot rank an empty list")]
    EmptyRanking,

    #[error("rankings cover different unit sets; only in one side: {}", format_units(.only_left, .only_right))]
    UnitSetMismatch {
        only_left: BTreeSet<String>,
        only_right: BTreeSet<String>,
    },

    #[error("corpus failed validation with {count} violation(s); first: {first}")]
    InvalidCorpus { count: usize, first: String },

    #[error("reconciliation entry {raw:?}: {detail}")]
    BadReconciliation { raw: String, detail: String },

    #[error("infeasible synthesis config: {0}")]
    InfeasibleConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

fn format_units(left: &BTreeSet<String>, right: &BTreeSet<String>) -> String {
    let mut parts = Vec::new();
    if !left.is_empty() {
        parts.push(format!("left {:?}", left));
    }
    if !right.is_empty() {
        parts.push(format!("right {:?}", right));
    }
    parts.join(", ")
}

impl Error {
    /// True for errors caused by what was fed in (malformed files, bad
    /// config, inconsistent data) as opposed to internal failures.
    /// True for problems in what the user supplied (bad data, bad paths);
    /// false for environment failures like a disk write going wrong.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Io { source, .. } => source.kind() == std::io::ErrorKind::NotFound,
            _ => true,
        }
    }

    pub(crate) fn parse(file: &str, line: u64, message: impl Into<String>) -> Error {
        Error::Parse {
            file: file.to_string(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Error {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
