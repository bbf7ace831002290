use thiserror::Error;

/// Errors raised by the engine. Parse errors carry a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no Euler characteristic known for class symbol [{0}]")]
    MissingChi(String),
    #[error("no value given for class symbol [{0}]")]
    MissingSymbolValue(String),
    #[error("cannot evaluate L^({exponent}) at L = {base} exactly")]
    FractionalPowerUnevaluable { base: String, exponent: String },
    #[error("expression still contains T = L^(-s); expand or specialize it first")]
    UnboundT,
    #[error("factor Fac({n}; {nu}) has no finite expansion in T")]
    InfiniteSeries { n: String, nu: String },
    #[error("invalid standard factor data: {0}")]
    BadFactor(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("group {0} is not small")]
    NotSmall(String),
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("group presentation too large: {0} tuples exceeds the enumeration bound")]
    GroupTooLarge(u128),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("group order {0} exceeds the size limit")]
    SizeLimit(u64),
    #[error("gcd({d}, {x}) != 1")]
    NotCoprime { d: i64, x: i64 },
    #[error("enumeration budget exceeded: {0} jet tuples")]
    BudgetExceeded(u128),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("undeclared class symbol [{0}]")]
    UndeclaredSymbol(String),
}

pub type Result<T> = std::result::Result<T, Error>;
