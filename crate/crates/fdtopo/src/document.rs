//! Input documents and machine-readable reports.
//!
//! A schema document is one self-describing JSON file carrying the attribute
//! universe, FDs, an optional decomposition, and optional named relation
//! files (header line of attribute names, then one line of comma-separated
//! values per tuple). Join trees ship as a small JSON document of their own
//! so fixture trees can be verified against covers.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::attr::AttributeUniverse;
use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::fd::FdDeclaration;
use crate::jointree::{JoinTree, JoinTreeEdge};
use crate::relation::{Database, RelationInstance};
use crate::Schema;

/// The parsed form of a schema document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemaDocument {
    pub attributes: Vec<String>,
    #[serde(default)]
    pub fds: Vec<FdDeclaration>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<Vec<String>>>,
    /// Relation files keyed by component name `R1..Rk`, paths relative to
    /// the document.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<BTreeMap<String, String>>,
}

impl SchemaDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: SchemaDocument = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed schema document: {e}")))?;
        // Name validation happens in `schema`/`cover`, which resolve every
        // name against the universe.
        Ok(doc)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn universe(&self) -> Result<AttributeUniverse> {
        AttributeUniverse::new(self.attributes.clone())
    }

    pub fn schema(&self) -> Result<Schema> {
        Schema::new(self.universe()?, self.fds.clone())
    }

    /// The declared decomposition as a validated cover, if present.
    pub fn cover(&self, universe: &AttributeUniverse) -> Result<Option<Cover>> {
        let Some(decomposition) = &self.decomposition else {
            return Ok(None);
        };
        let components = decomposition
            .iter()
            .map(|names| universe.set_of(names.iter().map(String::as_str)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Cover::new(universe, components)?))
    }

    /// Loads the relation files into a database with one instance per
    /// decomposition component, bound by name: `R<i>` is the instance for
    /// component `i` (1-based) and must carry exactly its attributes.
    pub fn load_database(&self, base: &Path, universe: &AttributeUniverse) -> Result<Database> {
        let cover = self.cover(universe)?.ok_or_else(|| {
            Error::invalid("document has no decomposition to bind relations to")
        })?;
        let relations_map = self
            .relations
            .as_ref()
            .ok_or_else(|| Error::invalid("document has no relations section"))?;
        let mut relations = Vec::with_capacity(cover.len());
        for i in 0..cover.len() {
            let name = format!("R{}", i + 1);
            let file = relations_map.get(&name).ok_or_else(|| {
                Error::invalid(format!("relations section is missing `{name}`"))
            })?;
            let path: PathBuf = base.join(file);
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
            let instance = RelationInstance::parse(name.clone(), &text, universe)?;
            if instance.attrs() != cover.components()[i] {
                return Err(Error::invalid(format!(
                    "relation `{name}` carries attributes {} but component {} is {}",
                    universe.render_braced(&instance.attrs()),
                    i + 1,
                    universe.render_braced(&cover.components()[i]),
                )));
            }
            relations.push(instance);
        }
        Database::new(relations)
    }
}

/// One edge of a join-tree document; node indices are 1-based component
/// numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinTreeEdgeDoc {
    pub a: usize,
    pub b: usize,
    pub separator: Vec<String>,
}

/// A join tree as shipped in fixtures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinTreeDocument {
    pub nodes: usize,
    pub edges: Vec<JoinTreeEdgeDoc>,
}

impl JoinTreeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed join-tree document: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds the tree, resolving separators against `universe`. Fails when
    /// the edge list is not a tree.
    pub fn to_join_tree(&self, universe: &AttributeUniverse) -> Result<JoinTree> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for edge in &self.edges {
            if edge.a == 0 || edge.b == 0 {
                return Err(Error::invalid("join-tree node indices are 1-based"));
            }
            edges.push(JoinTreeEdge {
                a: edge.a - 1,
                b: edge.b - 1,
                separator: universe.set_of(edge.separator.iter().map(String::as_str))?,
            });
        }
        JoinTree::new(self.nodes, edges)
    }
}

/// A machine-readable report: the command, an echo of its inputs, the
/// per-analysis results, and any warnings. The JSON form is byte-stable for
/// identical inputs and parses back to an equal value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, inputs: Value, results: Value) -> Self {
        Self {
            command: command.into(),
            inputs,
            results,
            warnings: Vec::new(),
        }
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports serialize");
        text.push('\n');
        text
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed report: {e}")))
    }
}
