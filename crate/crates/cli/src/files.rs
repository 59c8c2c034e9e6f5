//! On-disk graph and block-weight documents.

use std::path::Path;

use gepgap::processes::{BaseGraph, BlockShuffleSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub format: u32,
    pub vertices: Vec<String>,
    pub rates: Vec<RateEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateEntry {
    pub u: String,
    pub w: String,
    pub r: f64,
}

impl GraphFile {
    pub fn from_graph(x: &BaseGraph) -> Self {
        let v = x.vertices();
        Self {
            format: FORMAT_VERSION,
            vertices: v.to_vec(),
            rates: x
                .edges()
                .map(|(u, w, r)| RateEntry {
                    u: v[u].clone(),
                    w: v[w].clone(),
                    r,
                })
                .collect(),
        }
    }

    /// Each entry is mirrored; rates must be positive.
    pub fn to_graph(&self) -> Result<BaseGraph, CliError> {
        check_format(self.format)?;
        if let Some(e) = self.rates.iter().find(|e| !(e.r > 0.0 && e.r.is_finite())) {
            return Err(CliError::Usage(format!(
                "rate {}-{} must be positive, got {}",
                e.u, e.w, e.r
            )));
        }
        let edges: Vec<_> = self
            .rates
            .iter()
            .map(|e| (e.u.clone(), e.w.clone(), e.r))
            .collect();
        Ok(BaseGraph::from_edges(self.vertices.clone(), &edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaFile {
    pub format: u32,
    pub blocks: Vec<AlphaEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    pub vertices: Vec<String>,
    pub weight: f64,
}

impl AlphaFile {
    pub fn to_spec(&self, x: &BaseGraph) -> Result<BlockShuffleSpec, CliError> {
        check_format(self.format)?;
        let index = |name: &String| {
            x.vertices()
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| CliError::Usage(format!("unknown vertex {name} in block weights")))
        };
        let alpha = self
            .blocks
            .iter()
            .map(|b| {
                Ok((
                    b.vertices
                        .iter()
                        .map(index)
                        .collect::<Result<Vec<_>, _>>()?,
                    b.weight,
                ))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(BlockShuffleSpec::new(x.len(), alpha)?)
    }
}

fn check_format(format: u32) -> Result<(), CliError> {
    if format != FORMAT_VERSION {
        return Err(CliError::Usage(format!(
            "unsupported format {format}, expected {FORMAT_VERSION}"
        )));
    }
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_graph(path: &Path) -> Result<BaseGraph, CliError> {
    read_json::<GraphFile>(path)?.to_graph()
}
