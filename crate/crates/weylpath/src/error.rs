//! Command-line errors and their exit codes.

use weylpath_core::Error;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("assertion failed: {0}")]
    Assertion(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Assertion(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Malformed(_) => 3,
            CliError::Unsupported(_) => 4,
            CliError::Budget(_) => 5,
            CliError::Io(_) => 6,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let text = e.to_string();
        match e {
            Error::UnsupportedType(_) | Error::NotCrystallographic => CliError::Unsupported(text),
            Error::BudgetExceeded(_) => CliError::Budget(text),
            Error::MalformedPath(_) | Error::TimeOutOfRange(_) | Error::HorizonMismatch | Error::EmptyGrid => CliError::Malformed(text),
            _ => CliError::Usage(text),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        let all = [
            CliError::Assertion(String::new()),
            CliError::Usage(String::new()),
            CliError::Malformed(String::new()),
            CliError::Unsupported(String::new()),
            CliError::Budget(String::new()),
            CliError::Io(String::new()),
        ];
        let mut codes: Vec<i32> = all.iter().map(CliError::exit_code).collect();
        codes.dedup();
        assert_eq!(codes, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(CliError::from(Error::BudgetExceeded(3)).exit_code(), 5);
        assert_eq!(CliError::from(Error::UnsupportedType("E8".into())).exit_code(), 4);
    }
}
