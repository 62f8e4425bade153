//! The `hn` command-line tool: JSON object descriptions in, HN data and suite reports out.

pub mod commands;
pub mod doc;
pub mod random_spec;

/// Exit codes: 0 success, 2 invalid input, 3 oracle or certification failure.
pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 2;
pub const EXIT_FAILURE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_VALIDATION
    }
}

/// Enumeration ceiling: the flag wins over `HN_BUDGET`, which wins over the built-in defaults.
pub fn resolve_budget(flag: Option<u128>) -> Result<Option<u128>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("HN_BUDGET") {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| CliError::Validation(format!("HN_BUDGET={s:?} is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}
