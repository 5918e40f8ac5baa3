use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("vertex {vertex} is a source but has no kinetic-order complex")]
    MissingKinetic { vertex: u32 },

    #[error("division by zero polynomial or rational function")]
    ZeroDivision,

    #[error("invalid representative set: {0}")]
    InvalidVstar(String),

    #[error("network is not weakly reversible: linkage class {{{}}} is not strongly connected", class_display(.class))]
    NotWeaklyReversible { class: Vec<u32> },

    #[error("linkage class with {size} vertices exceeds the limit of {limit} for this algorithm")]
    ClassTooLarge { size: usize, limit: usize },

    #[error("kinetic deficiency is {found}, expected {expected}")]
    KineticDeficiencyMismatch { expected: usize, found: usize },

    #[error("network has {available} phantom edges but {needed} are needed to solve the complex-balancing conditions")]
    TooFewPhantoms { needed: usize, available: usize },

    #[error("complex-balancing condition not explicitly solvable: {}", .conditions.join("; "))]
    ConditionNotSolvable { conditions: Vec<String> },

    #[error("input is not a classical mass-action network: {0}")]
    NotClassical(String),

    #[error("translation scheme error: {0}")]
    Scheme(String),
}

fn class_display(class: &[u32]) -> String {
    class
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Process exit status for the command-line tool: parse errors exit with
    /// 2, analysis refusals with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::InvalidNetwork(_) => "invalid_network",
            Error::MissingKinetic { .. } => "missing_kinetic",
            Error::ZeroDivision => "zero_division",
            Error::InvalidVstar(_) => "invalid_vstar",
            Error::NotWeaklyReversible { .. } => "not_weakly_reversible",
            Error::ClassTooLarge { .. } => "class_too_large",
            Error::KineticDeficiencyMismatch { .. } => "kinetic_deficiency_mismatch",
            Error::TooFewPhantoms { .. } => "too_few_phantoms",
            Error::ConditionNotSolvable { .. } => "condition_not_solvable",
            Error::NotClassical(_) => "not_classical",
            Error::Scheme(_) => "scheme",
        }
    }
}
