use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("item id {0} is not defined in this transaction set")]
    InvalidItem(u32),

    #[error("unknown item name `{0}`")]
    UnknownItemName(String),

    #[error("duplicate item name `{0}`")]
    DuplicateItemName(String),

    #[error("support is undefined over an empty transaction set")]
    UndefinedSupport,

    #[error("metric is undefined: {0}")]
    UndefinedMetric(&'static str),

    #[error("joint support {joint} exceeds a marginal support (antecedent {antecedent}, consequent {consequent})")]
    InconsistentSupport {
        joint: f64,
        antecedent: f64,
        consequent: f64,
    },

    #[error("parse error at row {row}, column `{column}`: {message}")]
    Parse {
        /// 1-based line number in the source text (header is line 1).
        row: usize,
        column: String,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("capacity exceeded: {n_items} items, brute force supports at most {limit}")]
    Capacity { n_items: usize, limit: usize },

    #[error("internal contract violation: {0}")]
    Contract(String),
}
