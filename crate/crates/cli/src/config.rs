use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use steiner_core::exactalg::Field;
use steiner_core::polygeom::{PointConfig, ProjPoint};
use steiner_core::steiner::SteinerPresentation;

use crate::error::{CliError, CliResult};

/// Point configuration file: `{field, n, points: [[str, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfigJson {
    pub field: String,
    pub n: usize,
    pub points: Vec<Vec<String>>,
}

impl PointConfigJson {
    pub fn from_config(z: &PointConfig) -> Self {
        PointConfigJson {
            field: z.field().to_string(),
            n: z.n(),
            points: z.points().iter().map(ProjPoint::to_strings).collect(),
        }
    }

    /// Parses the coordinates in `field`, or in the file's own field.
    pub fn to_config(&self, field: Option<Field>) -> CliResult<PointConfig> {
        let field = match field {
            Some(f) => f,
            None => Field::from_str(&self.field)?,
        };
        let pts = self
            .points
            .iter()
            .map(|c| {
                if c.len() != self.n + 1 {
                    return Err(CliError::Io(format!("point {c:?} does not have {} coordinates", self.n + 1)));
                }
                Ok(ProjPoint::parse(field, c)?)
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(PointConfig::new(field, self.n, pts)?)
    }
}

/// Settings shared by every subcommand; flags take precedence over a
/// `--config` file.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub field: Option<String>,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub points: Option<PointConfigJson>,
    pub form: Option<String>,
    pub twist: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub workers: Option<usize>,
    pub strategy: Option<String>,
    pub exhaustive: Option<bool>,
    pub out: Option<String>,
}

impl JobConfig {
    pub fn load(path: &str) -> CliResult<Self> {
        let text = read_text(path)?;
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("job config {path}: {e}")))
    }
}

/// Contents of `path`; a leading `@` is accepted and ignored.
pub fn read_text(path: &str) -> CliResult<String> {
    let p = path.strip_prefix('@').unwrap_or(path);
    fs::read_to_string(p).map_err(|e| CliError::Io(format!("{p}: {e}")))
}

pub fn read_points(path: &str, field: Option<Field>) -> CliResult<PointConfig> {
    let text = read_text(path)?;
    let dto: PointConfigJson =
        serde_json::from_str(&text).map_err(|e| CliError::Io(format!("point config {path}: {e}")))?;
    dto.to_config(field)
}

pub fn read_presentation(path: &str) -> CliResult<SteinerPresentation> {
    Ok(SteinerPresentation::from_json(&read_text(path)?)?)
}

pub fn parse_field(text: &str) -> CliResult<Field> {
    Ok(Field::from_str(text)?)
}

/// Comma- or whitespace-separated coordinates.
pub fn parse_point(field: Field, text: &str) -> CliResult<ProjPoint> {
    let parts: Vec<&str> = text
        .trim_matches(|c| c == '[' || c == ']')
        .split(|c: char| c == ',' || c == ':' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    Ok(ProjPoint::parse(field, &parts)?)
}

/// Writes `text` (plus a trailing newline) to `out`, or returns it for
/// standard output.
pub fn emit(out: Option<&str>, text: &str) -> CliResult<Option<String>> {
    let mut body = text.to_string();
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match out {
        Some(path) => {
            if let Some(parent) = Path::new(path).parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, body).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            Ok(None)
        }
        None => Ok(Some(body)),
    }
}
