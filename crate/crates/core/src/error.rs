use thiserror::Error;

/// Errors raised by the library. Verification outcomes (an axiom that fails,
/// an identity that does not hold) are reported through report types, not
/// through this enum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field order {q} exceeds the configured cap of {cap}")]
    FieldTooLarge { q: u64, cap: u64 },
    #[error("division by zero in a finite field")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("{what}: requested {requested} exceeds the budget of {cap}")]
    BudgetExceeded {
        what: &'static str,
        requested: String,
        cap: String,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error(
        "q = 1 is degenerate for this formula: the factors (q-1)^(n-1)/gcd(n,q-1) \
         amount to 0/n rather than 1/2, an open question in the F_1 analogy"
    )]
    DegenerateQ,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(what: &'static str, requested: impl ToString, cap: impl ToString) -> Self {
        Error::BudgetExceeded {
            what,
            requested: requested.to_string(),
            cap: cap.to_string(),
        }
    }
}

/// Deserializes JSON, reporting the path of the offending field on failure.
pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Format(inner.to_string())
        } else {
            Error::Format(format!("{path}: {inner}"))
        }
    })
}
