//! The `--config` JSON file: one optional section per subcommand, keys
//! named exactly after the long flags.  Every field is optional; a value
//! given on the command line always wins, and built-in defaults are
//! applied only after the merge.

use std::path::Path;

use serde::Deserialize;

use crate::{CliError, Format};

/// Top-level shape of the configuration file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub geometry: Option<GeometrySection>,
    pub calc: Option<CalcSection>,
    pub wave: Option<WaveSection>,
    pub lorentz: Option<LorentzSection>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct GeometrySection {
    pub alpha: Option<Vec<String>>,
    pub depth: Option<usize>,
    pub cell: Option<i64>,
    pub format: Option<Format>,
    pub out: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct CalcSection {
    pub fx: Option<String>,
    pub fy: Option<String>,
    pub expr: Option<String>,
    pub at: Option<Vec<f64>>,
    pub step: Option<f64>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub panels: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct WaveSection {
    pub profile_a: Option<String>,
    pub profile_b: Option<String>,
    pub c: Option<f64>,
    pub alpha: Option<String>,
    pub depth: Option<usize>,
    pub time: Option<Vec<f64>>,
    pub y_from: Option<f64>,
    pub y_to: Option<f64>,
    pub samples: Option<usize>,
    pub panels: Option<usize>,
    pub format: Option<Format>,
    pub out_dir: Option<String>,
    pub strict: Option<bool>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct LorentzSection {
    pub chi: Option<f64>,
    pub x0: Option<f64>,
    pub y: Option<f64>,
    pub input: Option<String>,
    pub output: Option<String>,
    pub chart0: Option<String>,
    pub chart1: Option<String>,
}

/// Reads and parses the configuration file.
pub fn load(path: &Path) -> Result<FileConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|err| CliError::io(path, err))?;
    serde_json::from_str(&text).map_err(|err| {
        CliError::Validation(format!("{}: bad config: {err}", path.display()))
    })
}
