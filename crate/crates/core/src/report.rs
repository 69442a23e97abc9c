//! Report envelope shared by the command line and the bindings.
//!
//! Every report records the sign convention in force and the geometry it was
//! computed on. Serialisation goes through ordered maps only, so a report is
//! byte-identical across runs with the same inputs.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::groundstate::{passing_conventions, Convention};
use crate::lattice::{HexCoord, Patch};

/// How the sign convention was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConventionChoice {
    Auto,
    RegionComponents,
    LoopCount,
}

impl ConventionChoice {
    pub fn fixed(self) -> Option<Convention> {
        match self {
            ConventionChoice::Auto => None,
            ConventionChoice::RegionComponents => Some(Convention::RegionComponents),
            ConventionChoice::LoopCount => Some(Convention::LoopCount),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionRecord {
    pub requested: ConventionChoice,
    pub resolved: Convention,
    /// Conventions passing the eigencondition test, when it was run.
    pub passing: Option<Vec<Convention>>,
}

/// Resolves `auto` by building both candidate states at size 2 and keeping
/// the one that passes every ground-state check.
pub fn resolve_convention(choice: ConventionChoice) -> Result<ConventionRecord> {
    if let Some(c) = choice.fixed() {
        return Ok(ConventionRecord { requested: choice, resolved: c, passing: None });
    }
    let passing = passing_conventions(2)?;
    match passing.as_slice() {
        [c] => Ok(ConventionRecord { requested: choice, resolved: *c, passing: Some(passing.clone()) }),
        _ => Err(crate::error::Error::NoConvention),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Geometry {
    pub n: u32,
    pub plaquettes: Vec<HexCoord>,
    pub region_edges: usize,
    pub outer_legs: usize,
    pub total_edges: usize,
}

impl Geometry {
    pub fn standard(n: u32) -> Result<Self> {
        let patch = Patch::standard(n)?;
        Ok(Geometry {
            n,
            plaquettes: patch.region().iter().collect(),
            region_edges: patch.inner_edges().len(),
            outer_legs: patch.legs().len(),
            total_edges: patch.num_edges(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report<T> {
    pub command: String,
    pub passed: bool,
    pub convention: ConventionRecord,
    pub geometry: Option<Geometry>,
    pub seed: Option<u64>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

/// Flat rows for CSV export.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: ToString>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(|x| x.to_string()).collect());
    }
}

/// Rows `label_a,label_b,value` of a square table.
pub fn pair_table(labels: &[String], values: &[u8], value_name: &str) -> Table {
    let n = labels.len();
    let mut t = Table::new(["a", "b", value_name]);
    for a in 0..n {
        for b in 0..n {
            t.push([labels[a].clone(), labels[b].clone(), values[a * n + b].to_string()]);
        }
    }
    t
}

/// Rows `label_a,label_b,label_c,value` of a cubic table.
pub fn triple_table(labels: &[String], values: &[u8], value_name: &str) -> Table {
    let n = labels.len();
    let mut t = Table::new(["a", "b", "c", value_name]);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                t.push([labels[a].clone(), labels[b].clone(), labels[c].clone(), values[(a * n + b) * n + c].to_string()]);
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn auto_resolves_to_loop_count() {
        let r = resolve_convention(ConventionChoice::Auto).unwrap();
        assert_eq!(r.resolved, Convention::LoopCount);
        assert_eq!(r.passing, Some(vec![Convention::LoopCount]));
    }

    #[test]
    fn geometry_counts() {
        let g = Geometry::standard(2).unwrap();
        assert_eq!(g.plaquettes.len(), 7);
        assert_eq!(g.outer_legs, 12);
    }
}
