//! Report envelope and error classification shared by every subcommand.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

use gtkit::abelian::AbelianError;
use gtkit::constructions::ConstructionError;
use gtkit::fingroup::GroupError;
use gtkit::freegrp::FreeError;
use gtkit::gaction::ActionError;
use gtkit::matgrp::MatError;
use gtkit::perm::PermError;

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: Value,
    pub result: Value,
    pub verification: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Report {
        Report {
            command: command.to_string(),
            input,
            result: Value::Null,
            verification: BTreeMap::new(),
            timing_ms: None,
            text: String::new(),
        }
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.verification.insert(name.to_string(), ok);
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn verified(&self) -> bool {
        self.verification.values().all(|&v| v)
    }

    /// Text form: the command's own lines followed by the checks.
    pub fn render(&self) -> String {
        let mut out = self.text.clone();
        if !self.verification.is_empty() {
            out.push_str("checks:\n");
            for (name, ok) in &self.verification {
                out.push_str(&format!("  {:<28} {}\n", name, if *ok { "ok" } else { "FAILED" }));
            }
        }
        if let Some(ms) = self.timing_ms {
            out.push_str(&format!("time: {ms:.3} ms\n"));
        }
        out
    }
}

/// Usage problems exit with status 2, everything else with 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Compute(_) => "compute",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Compute(m) => write!(f, "{m}"),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Parse { .. } | ConstructionError::InvalidParameter(_) | ConstructionError::Io(_) => {
                CliError::Usage(e.to_string())
            }
            ConstructionError::Group(g) => g.into(),
            ConstructionError::Matrix(m) => m.into(),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::NotPrime(_)
            | GroupError::PrimeDoesNotDivide { .. }
            | GroupError::InvalidArgument(_)
            | GroupError::InvalidTable(_)
            | GroupError::Perm(_) => CliError::Usage(e.to_string()),
            _ => CliError::Compute(e.to_string()),
        }
    }
}

impl From<PermError> for CliError {
    fn from(e: PermError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<MatError> for CliError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::Group(g) => g.into(),
            MatError::ExponentOverflow => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<AbelianError> for CliError {
    fn from(e: AbelianError) -> Self {
        match e {
            AbelianError::Group(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FreeError> for CliError {
    fn from(e: FreeError) -> Self {
        match e {
            FreeError::Group(g) => g.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ActionError> for CliError {
    fn from(e: ActionError) -> Self {
        match e {
            ActionError::Group(g) => g.into(),
            ActionError::Construction(c) => c.into(),
            ActionError::BoundExceeded { .. } | ActionError::NonIntegralCount { .. } => {
                CliError::Compute(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}
