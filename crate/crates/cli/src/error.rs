use std::fmt;

/// CLI failure, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad files, flags or model parameters (exit 2).
    Input(String),
    /// The problem is larger than the simulator or spectrum cap (exit 3).
    ResourceCap(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::ResourceCap(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::ResourceCap(m) => f.write_str(m),
        }
    }
}

impl From<hamcycle_qaoa::Error> for CliError {
    fn from(e: hamcycle_qaoa::Error) -> Self {
        if e.is_resource_cap() {
            CliError::ResourceCap(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
