//! An in-memory relational kernel: named instances with set semantics,
//! natural join, projection, and semijoin.
//!
//! Instances are loadable from a header-plus-rows text format: the first
//! line lists attribute names separated by commas, every following
//! non-empty line lists the values. Tuples are stored with their values in
//! universe attribute order regardless of the column order in the file.

use std::collections::{BTreeSet, HashMap};

use crate::attr::{AttributeSet, AttributeUniverse};
use crate::error::{Error, Result};

/// A named relation instance over a fixed attribute set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationInstance {
    name: String,
    attrs: AttributeSet,
    tuples: BTreeSet<Vec<String>>,
}

/// Positions (within the ascending member list of `attrs`) of the members of
/// `subset`.
fn indices_of(attrs: &AttributeSet, subset: &AttributeSet) -> Vec<usize> {
    let members: Vec<usize> = attrs.iter().collect();
    subset
        .iter()
        .map(|pos| {
            members
                .binary_search(&pos)
                .expect("subset attribute missing from relation")
        })
        .collect()
}

impl RelationInstance {
    pub fn new(
        name: impl Into<String>,
        attrs: AttributeSet,
        tuples: impl IntoIterator<Item = Vec<String>>,
    ) -> Result<Self> {
        if attrs.is_empty() {
            return Err(Error::invalid("a relation needs at least one attribute"));
        }
        let width = attrs.len();
        let mut set = BTreeSet::new();
        for tuple in tuples {
            if tuple.len() != width {
                return Err(Error::invalid(format!(
                    "tuple width {} does not match the {} attributes of the relation",
                    tuple.len(),
                    width
                )));
            }
            set.insert(tuple);
        }
        Ok(Self {
            name: name.into(),
            attrs,
            tuples: set,
        })
    }

    pub fn empty(name: impl Into<String>, attrs: AttributeSet) -> Result<Self> {
        Self::new(name, attrs, std::iter::empty())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn attrs(&self) -> AttributeSet {
        self.attrs
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<String>> {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Parses the header-plus-rows text format against a universe.
    pub fn parse(name: impl Into<String>, text: &str, universe: &AttributeUniverse) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::invalid("relation file is empty"))?;
        let columns: Vec<&str> = header.split(',').map(str::trim).collect();
        let mut attrs = universe.empty_set();
        let mut positions = Vec::with_capacity(columns.len());
        for column in &columns {
            let pos = universe.position(column)?;
            if attrs.contains(pos) {
                return Err(Error::invalid(format!("duplicate column `{column}`")));
            }
            attrs.insert(pos);
            positions.push(pos);
        }
        // Map file column order onto ascending universe order.
        let order: Vec<usize> = attrs
            .iter()
            .map(|pos| positions.iter().position(|&p| p == pos).unwrap())
            .collect();
        let mut tuples = Vec::new();
        for (line_no, line) in lines.enumerate() {
            let values: Vec<&str> = line.split(',').map(str::trim).collect();
            if values.len() != columns.len() {
                return Err(Error::invalid(format!(
                    "row {} has {} values for {} columns",
                    line_no + 2,
                    values.len(),
                    columns.len()
                )));
            }
            tuples.push(order.iter().map(|&i| values[i].to_string()).collect());
        }
        Self::new(name, attrs, tuples)
    }

    /// Renders back to the text format, columns in universe order, rows
    /// sorted.
    pub fn render(&self, universe: &AttributeUniverse) -> String {
        let mut out = universe.render(&self.attrs).join(",");
        out.push('\n');
        for tuple in &self.tuples {
            out.push_str(&tuple.join(","));
            out.push('\n');
        }
        out
    }

    /// Restriction of one tuple to `subset` (which must be ⊆ attrs).
    fn restrict(&self, tuple: &[String], indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| tuple[i].clone()).collect()
    }
}

/// Natural join: tuples agreeing on the shared attributes, merged over the
/// attribute union. Disjoint attribute sets degenerate to a product.
pub fn natural_join(r: &RelationInstance, s: &RelationInstance) -> Result<RelationInstance> {
    r.attrs.check_universe(&s.attrs)?;
    let shared = r.attrs.intersection(&s.attrs);
    let r_shared = indices_of(&r.attrs, &shared);
    let s_shared = indices_of(&s.attrs, &shared);

    let mut by_key: HashMap<Vec<String>, Vec<&Vec<String>>> = HashMap::new();
    for tuple in &s.tuples {
        by_key
            .entry(s.restrict(tuple, &s_shared))
            .or_default()
            .push(tuple);
    }

    let union = r.attrs.union(&s.attrs);
    let union_members: Vec<usize> = union.iter().collect();
    let r_members: Vec<usize> = r.attrs.iter().collect();
    let s_members: Vec<usize> = s.attrs.iter().collect();

    let mut tuples = Vec::new();
    for r_tuple in &r.tuples {
        let key = r.restrict(r_tuple, &r_shared);
        if let Some(matches) = by_key.get(&key) {
            for s_tuple in matches {
                let merged: Vec<String> = union_members
                    .iter()
                    .map(|&pos| {
                        if let Ok(i) = r_members.binary_search(&pos) {
                            r_tuple[i].clone()
                        } else {
                            let i = s_members.binary_search(&pos).unwrap();
                            s_tuple[i].clone()
                        }
                    })
                    .collect();
                tuples.push(merged);
            }
        }
    }
    RelationInstance::new(format!("{}⋈{}", r.name, s.name), union, tuples)
}

/// Projection onto `w ⊆ attrs`, deduplicated by set semantics.
pub fn project(r: &RelationInstance, w: &AttributeSet) -> Result<RelationInstance> {
    r.attrs.check_universe(w)?;
    if !w.is_subset(&r.attrs) {
        return Err(Error::invalid(
            "projection attributes must be a subset of the relation's attributes",
        ));
    }
    if w.is_empty() {
        return Err(Error::invalid("projection onto the empty set is undefined"));
    }
    let indices = indices_of(&r.attrs, w);
    let tuples: Vec<Vec<String>> = r.tuples.iter().map(|t| r.restrict(t, &indices)).collect();
    RelationInstance::new(format!("π({})", r.name), *w, tuples)
}

/// Semijoin `r ⋉_sep s`: tuples of `r` whose `sep`-projection occurs among
/// the `sep`-projections of `s`. The attribute set of the result is
/// unchanged. An empty separator matches everything as long as `s` is
/// nonempty.
pub fn semijoin(
    r: &RelationInstance,
    s: &RelationInstance,
    sep: &AttributeSet,
) -> Result<RelationInstance> {
    r.attrs.check_universe(&s.attrs)?;
    r.attrs.check_universe(sep)?;
    if !sep.is_subset(&r.attrs.intersection(&s.attrs)) {
        return Err(Error::invalid(
            "separator must be contained in both relations' attributes",
        ));
    }
    let r_indices = indices_of(&r.attrs, sep);
    let s_indices = indices_of(&s.attrs, sep);
    let keys: BTreeSet<Vec<String>> = s.tuples.iter().map(|t| s.restrict(t, &s_indices)).collect();
    let tuples: Vec<Vec<String>> = r
        .tuples
        .iter()
        .filter(|t| keys.contains(&r.restrict(t, &r_indices)))
        .cloned()
        .collect();
    RelationInstance::new(r.name.clone(), r.attrs, tuples)
}

/// A list of relation instances with distinct names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    relations: Vec<RelationInstance>,
}

impl Database {
    pub fn new(relations: Vec<RelationInstance>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for relation in &relations {
            if !seen.insert(relation.name().to_string()) {
                return Err(Error::invalid(format!(
                    "duplicate relation name `{}`",
                    relation.name()
                )));
            }
        }
        Ok(Self { relations })
    }

    pub fn relations(&self) -> &[RelationInstance] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn universe() -> AttributeUniverse {
        AttributeUniverse::new(["A", "B", "C"]).unwrap()
    }

    fn rel(u: &AttributeUniverse, name: &str, attrs: &[&str], rows: &[&[&str]]) -> RelationInstance {
        RelationInstance::new(
            name,
            u.set_of(attrs.iter().copied()).unwrap(),
            rows.iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
        )
        .unwrap()
    }

    #[test]
    fn natural_join_on_shared_attribute() {
        let u = universe();
        let r = rel(&u, "r", &["A", "B"], &[&["1", "2"]]);
        let s = rel(&u, "s", &["B", "C"], &[&["2", "3"]]);
        let joined = natural_join(&r, &s).unwrap();
        assert_eq!(joined.tuples().iter().next().unwrap(), &vec!["1", "2", "3"]);
        assert_eq!(joined.len(), 1);

        let miss = rel(&u, "s", &["B", "C"], &[&["9", "3"]]);
        assert!(natural_join(&r, &miss).unwrap().is_empty());
    }

    #[test]
    fn disjoint_join_is_a_product() {
        let u = universe();
        let r = rel(&u, "r", &["A"], &[&["1"], &["2"]]);
        let s = rel(&u, "s", &["B"], &[&["x"], &["y"]]);
        let joined = natural_join(&r, &s).unwrap();
        assert_eq!(joined.len(), 4);
    }

    #[test]
    fn projection_dedupes_and_identity_holds() {
        let u = universe();
        let r = rel(&u, "r", &["A", "B"], &[&["1", "2"], &["1", "3"]]);
        let a = project(&r, &u.set_of(["A"]).unwrap()).unwrap();
        assert_eq!(a.len(), 1);

        let same = project(&r, &r.attrs()).unwrap();
        assert_eq!(same.tuples(), r.tuples());

        let empty = RelationInstance::empty("e", u.set_of(["A", "B"]).unwrap()).unwrap();
        assert!(project(&empty, &u.set_of(["A"]).unwrap()).unwrap().is_empty());

        assert!(project(&r, &u.set_of(["C"]).unwrap()).is_err());
    }

    #[test]
    fn semijoin_examples() {
        let u = universe();
        let r = rel(&u, "r", &["A", "B"], &[&["1", "2"], &["2", "9"]]);
        let s = rel(&u, "s", &["B", "C"], &[&["2", "3"]]);
        let sep = u.set_of(["B"]).unwrap();
        let reduced = semijoin(&r, &s, &sep).unwrap();
        assert_eq!(reduced.len(), 1);
        assert_eq!(reduced.tuples().iter().next().unwrap(), &vec!["1", "2"]);
        assert_eq!(reduced.attrs(), r.attrs());

        // Empty separator: everything passes while s is nonempty.
        let all = semijoin(&r, &s, &u.empty_set()).unwrap();
        assert_eq!(all.tuples(), r.tuples());

        let none = semijoin(&r, &RelationInstance::empty("s", s.attrs()).unwrap(), &sep).unwrap();
        assert!(none.is_empty());

        // Separator outside the shared attributes is an input error.
        assert!(semijoin(&r, &s, &u.set_of(["A"]).unwrap()).is_err());
    }

    #[test]
    fn parse_normalizes_column_order() {
        let u = universe();
        let r = RelationInstance::parse("r", "B,A\n2,1\n2,1\n3,9\n", &u).unwrap();
        assert_eq!(u.render(&r.attrs()), ["A", "B"]);
        let rows: Vec<&Vec<String>> = r.tuples().iter().collect();
        assert_eq!(rows, [&vec!["1".to_string(), "2".to_string()], &vec!["9".to_string(), "3".to_string()]]);
        let rendered = r.render(&u);
        assert_eq!(rendered, "A,B\n1,2\n9,3\n");
    }

    #[test]
    fn parse_rejects_malformed_input() {
        let u = universe();
        assert!(RelationInstance::parse("r", "", &u).is_err());
        assert!(RelationInstance::parse("r", "A,Z\n", &u).is_err());
        assert!(RelationInstance::parse("r", "A,B\n1\n", &u).is_err());
        assert!(RelationInstance::parse("r", "A,A\n", &u).is_err());
    }

    #[test]
    fn database_names_are_unique() {
        let u = universe();
        let r = rel(&u, "r", &["A"], &[]);
        let dup = rel(&u, "r", &["B"], &[]);
        assert!(Database::new(vec![r.clone(), dup]).is_err());
        assert!(Database::new(vec![r]).is_ok());
    }
}
