use std::fmt;
use std::path::Path;

use crate::formats::FormatError;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    BadInput = 2,
    Io = 3,
    Incompatible = 4,
    Degenerate = 5,
}

impl ExitCode {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }

    pub fn bad_input(message: impl Into<String>) -> Self {
        Self::new(ExitCode::BadInput, message)
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::new(ExitCode::Io, format!("{}: {err}", path.display()))
    }

    pub fn format(path: &Path, err: FormatError) -> Self {
        Self::bad_input(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<wavesing::Error> for CliError {
    fn from(err: wavesing::Error) -> Self {
        use wavesing::Error as E;
        let code = match err {
            E::ScaleTooFine { .. }
            | E::InvalidScaleGrid(_)
            | E::TooFewScales { .. }
            | E::NoValidSamples { .. } => ExitCode::Incompatible,
            E::DegenerateFit(_) | E::LineTooShort { .. } => ExitCode::Degenerate,
            E::InvalidSignal(_)
            | E::InvalidWavelet(_)
            | E::InvalidModel(_)
            | E::InvalidHurst(_)
            | E::InvalidParameter(_)
            | E::OutOfRange(_) => ExitCode::BadInput,
        };
        Self::new(code, err.to_string())
    }
}
