use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, parameters or configuration.
    Usage(String),
    /// Reading inputs or writing outputs failed.
    Io(String),
    /// The computation itself failed.
    Run(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Run(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Run(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<nbunique::Error> for CliError {
    fn from(e: nbunique::Error) -> Self {
        match e {
            nbunique::Error::InvalidParameter(_) | nbunique::Error::TooFewPoints(_) => {
                CliError::Usage(e.to_string())
            }
            nbunique::Error::Parse { .. } | nbunique::Error::EmptyInput => CliError::Io(e.to_string()),
            _ => CliError::Run(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
