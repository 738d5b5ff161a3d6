use std::path::PathBuf;

/// Exit status for bad input: unreadable files, malformed formats, values
/// outside an operation's domain.
pub const EXIT_INPUT: u8 = 2;
/// Exit status for a precondition that does not hold for otherwise valid
/// input (sample too coarse, OSC not certified, reducibility).
pub const EXIT_PRECONDITION: u8 = 3;
/// Exit status for an exhausted work budget.
pub const EXIT_BUDGET: u8 = 4;

/// A malformed file, with the 1-based line it was noticed on when known.
#[derive(Debug, thiserror::Error)]
#[error("{}{msg}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct FormatError {
    pub line: Option<usize>,
    pub msg: String,
}

impl FormatError {
    pub fn at(line: usize, msg: impl Into<String>) -> Self {
        FormatError {
            line: Some(line),
            msg: msg.into(),
        }
    }

    pub fn new(msg: impl Into<String>) -> Self {
        FormatError {
            line: None,
            msg: msg.into(),
        }
    }
}

impl From<ahlfors_core::Error> for FormatError {
    fn from(e: ahlfors_core::Error) -> Self {
        FormatError::new(e.to_string())
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError {
            line: Some(e.line()).filter(|&l| l > 0),
            msg: e.to_string(),
        }
    }
}

impl From<csv::Error> for FormatError {
    fn from(e: csv::Error) -> Self {
        let line = e.position().map(|p| p.line() as usize);
        FormatError {
            line,
            msg: e.to_string(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Format {
        path: PathBuf,
        #[source]
        source: FormatError,
    },

    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Core(#[from] ahlfors_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use ahlfors_core::Error as E;
        match self {
            CliError::Io { .. } | CliError::Format { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Core(e) => match e {
                E::Domain(_) => EXIT_INPUT,
                E::Budget { .. } => EXIT_BUDGET,
                E::Precondition(_)
                | E::Structural(_)
                | E::InsufficientContext { .. }
                | E::Inadequate { .. } => EXIT_PRECONDITION,
            },
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, source: impl Into<FormatError>) -> Self {
        CliError::Format {
            path: path.into(),
            source: source.into(),
        }
    }
}
