//! Functional dependencies, closures, canonical covers, keys, and FD
//! projection.
//!
//! All operations are the exact classical ones: attribute closure by fixpoint
//! iteration, canonical covers by extraneous-attribute and redundancy removal
//! in a fixed deterministic order, projection by bounded subset enumeration.

use serde::{Deserialize, Serialize};

use crate::attr::{AttributeSet, AttributeUniverse};
use crate::error::{Error, Result};

/// Default budget (in enumerated subsets) for FD projection.
pub const DEFAULT_PROJECTION_BUDGET: u128 = 1 << 20;

/// An FD with a single dependent attribute: `lhs -> rhs`.
///
/// Multi-attribute right-hand sides are split into singletons when a
/// [`Schema`] is constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionalDependency {
    lhs: AttributeSet,
    rhs: usize,
}

impl FunctionalDependency {
    pub fn new(lhs: AttributeSet, rhs: usize) -> Result<Self> {
        if lhs.is_empty() {
            return Err(Error::invalid("FD left-hand side must be non-empty"));
        }
        Ok(Self { lhs, rhs })
    }

    pub fn lhs(&self) -> AttributeSet {
        self.lhs
    }

    pub fn rhs(&self) -> usize {
        self.rhs
    }

    /// True when the dependent attribute already occurs on the left.
    pub fn is_trivial(&self) -> bool {
        self.lhs.contains(self.rhs)
    }

    /// All attributes mentioned by the FD: `lhs ∪ {rhs}`.
    pub fn support(&self) -> AttributeSet {
        let mut s = self.lhs;
        s.insert(self.rhs);
        s
    }

    /// The dependent attribute as a singleton set over the FD's universe.
    pub fn rhs_set(&self) -> AttributeSet {
        let mut s = self.lhs.difference(&self.lhs);
        s.insert(self.rhs);
        s
    }

    pub fn render(&self, universe: &AttributeUniverse) -> String {
        format!(
            "{}→{}",
            universe.render(&self.lhs).join(","),
            universe.name(self.rhs)
        )
    }
}

/// An FD as written in an input document: both sides are attribute-name lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdDeclaration {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// A relational schema: an attribute universe plus its declared FDs.
///
/// Declared FDs are normalized to singleton right-hand sides on construction;
/// `origins` records which declaration each singleton FD came from.
#[derive(Debug, Clone)]
pub struct Schema {
    universe: AttributeUniverse,
    fds: Vec<FunctionalDependency>,
    origins: Vec<usize>,
    declarations: Vec<FdDeclaration>,
}

impl Schema {
    pub fn new(universe: AttributeUniverse, declarations: Vec<FdDeclaration>) -> Result<Self> {
        let mut fds = Vec::new();
        let mut origins = Vec::new();
        for (decl_idx, decl) in declarations.iter().enumerate() {
            let lhs = universe.set_of(decl.lhs.iter().map(String::as_str))?;
            if decl.rhs.is_empty() {
                return Err(Error::invalid(format!(
                    "FD #{} has an empty right-hand side",
                    decl_idx + 1
                )));
            }
            for rhs_name in &decl.rhs {
                let rhs = universe.position(rhs_name)?;
                fds.push(FunctionalDependency::new(lhs, rhs)?);
                origins.push(decl_idx);
            }
        }
        Ok(Self {
            universe,
            fds,
            origins,
            declarations,
        })
    }

    pub fn universe(&self) -> &AttributeUniverse {
        &self.universe
    }

    /// The declared FDs, already split to singleton right-hand sides.
    pub fn fds(&self) -> &[FunctionalDependency] {
        &self.fds
    }

    pub fn declarations(&self) -> &[FdDeclaration] {
        &self.declarations
    }

    pub fn origin_of(&self, fd_index: usize) -> usize {
        self.origins[fd_index]
    }
}

/// A cover with singleton right-hand sides plus provenance back to the
/// declarations it was derived from.
#[derive(Debug, Clone)]
pub struct CanonicalCover {
    fds: Vec<FunctionalDependency>,
    /// Declaration indices (into the source schema) each cover FD derives from.
    provenance: Vec<Vec<usize>>,
    /// Trivial FDs (rhs ∈ lhs) dropped during canonicalization.
    dropped_trivial: Vec<FunctionalDependency>,
}

impl CanonicalCover {
    pub fn fds(&self) -> &[FunctionalDependency] {
        &self.fds
    }

    pub fn provenance(&self, i: usize) -> &[usize] {
        &self.provenance[i]
    }

    pub fn dropped_trivial(&self) -> &[FunctionalDependency] {
        &self.dropped_trivial
    }

    pub fn is_empty(&self) -> bool {
        self.fds.is_empty()
    }

    pub fn len(&self) -> usize {
        self.fds.len()
    }
}

fn check_fds_universe(x: &AttributeSet, fds: &[FunctionalDependency]) -> Result<()> {
    for fd in fds {
        x.check_universe(&fd.lhs())?;
    }
    Ok(())
}

/// Attribute closure of `x` under `fds`: the least fixpoint of FD application.
pub fn closure(x: &AttributeSet, fds: &[FunctionalDependency]) -> Result<AttributeSet> {
    check_fds_universe(x, fds)?;
    let mut result = *x;
    loop {
        let mut changed = false;
        for fd in fds {
            if fd.lhs().is_subset(&result) && !result.contains(fd.rhs()) {
                result.insert(fd.rhs());
                changed = true;
            }
        }
        if !changed {
            return Ok(result);
        }
    }
}

/// True iff `x → y` is implied by `fds`, i.e. `y ⊆ closure(x)`.
pub fn implies(fds: &[FunctionalDependency], x: &AttributeSet, y: &AttributeSet) -> Result<bool> {
    x.check_universe(y)?;
    Ok(y.is_subset(&closure(x, fds)?))
}

/// True iff `x` is a (super)key for the attribute set `u` under `fds`.
pub fn is_key(x: &AttributeSet, u: &AttributeSet, fds: &[FunctionalDependency]) -> Result<bool> {
    x.check_universe(u)?;
    if !x.is_subset(u) {
        return Err(Error::invalid("candidate key must be a subset of the keyed attribute set"));
    }
    Ok(u.is_subset(&closure(x, fds)?))
}

/// Computes the canonical (minimal) cover of a schema's FDs.
///
/// Deterministic by construction: FDs are processed in declaration order,
/// extraneous left-hand attributes are removed in attribute-index order, and
/// redundant FDs are removed in declaration order. Trivial FDs are dropped
/// up front and reported via [`CanonicalCover::dropped_trivial`].
pub fn canonical_cover(schema: &Schema) -> Result<CanonicalCover> {
    let mut working: Vec<FunctionalDependency> = Vec::new();
    let mut provenance: Vec<Vec<usize>> = Vec::new();
    let mut dropped_trivial = Vec::new();
    for (i, fd) in schema.fds().iter().enumerate() {
        if fd.is_trivial() {
            dropped_trivial.push(*fd);
        } else {
            working.push(*fd);
            provenance.push(vec![schema.origin_of(i)]);
        }
    }

    // Extraneous left-hand attributes: B is extraneous in X→A when A is still
    // implied by X∖{B} under the current cover.
    for i in 0..working.len() {
        let positions: Vec<usize> = working[i].lhs().iter().collect();
        for b in positions {
            if working[i].lhs().len() == 1 {
                break;
            }
            let mut reduced = working[i].lhs();
            reduced.remove(b);
            if implies(&working, &reduced, &working[i].rhs_set())? {
                working[i] = FunctionalDependency::new(reduced, working[i].rhs())?;
            }
        }
    }

    // Merge duplicates, keeping first occurrence and unioning provenance.
    let mut deduped: Vec<FunctionalDependency> = Vec::new();
    let mut dedup_prov: Vec<Vec<usize>> = Vec::new();
    for (fd, prov) in working.iter().zip(provenance.iter()) {
        if let Some(pos) = deduped.iter().position(|g| g == fd) {
            dedup_prov[pos].extend(prov.iter().copied());
        } else {
            deduped.push(*fd);
            dedup_prov.push(prov.clone());
        }
    }

    // Redundant FDs: drop X→A when A ∈ closure(X) under the remaining cover.
    let mut keep = vec![true; deduped.len()];
    for i in 0..deduped.len() {
        keep[i] = false;
        let rest: Vec<FunctionalDependency> = deduped
            .iter()
            .zip(keep.iter())
            .filter_map(|(fd, &k)| if k { Some(*fd) } else { None })
            .collect();
        if !implies(&rest, &deduped[i].lhs(), &deduped[i].rhs_set())? {
            keep[i] = true;
        }
    }

    let mut fds = Vec::new();
    let mut prov = Vec::new();
    for (i, fd) in deduped.into_iter().enumerate() {
        if keep[i] {
            let mut sources = dedup_prov[i].clone();
            sources.sort_unstable();
            sources.dedup();
            fds.push(fd);
            prov.push(sources);
        }
    }
    Ok(CanonicalCover {
        fds,
        provenance: prov,
        dropped_trivial,
    })
}

/// Builds a cover directly from the schema's declared FDs without
/// minimization: right-hand sides are split to singletons, trivial FDs are
/// dropped, and exact duplicates merged.
///
/// The caller asserts canonicality; nothing is checked beyond the singleton
/// form. This is the cover used to build dependency complexes from fixtures
/// that declare their cover explicitly, where minimization would change the
/// generated faces.
pub fn declared_cover(schema: &Schema) -> CanonicalCover {
    let mut fds: Vec<FunctionalDependency> = Vec::new();
    let mut provenance: Vec<Vec<usize>> = Vec::new();
    let mut dropped_trivial = Vec::new();
    for (i, fd) in schema.fds().iter().enumerate() {
        if fd.is_trivial() {
            dropped_trivial.push(*fd);
            continue;
        }
        if let Some(pos) = fds.iter().position(|g| g == fd) {
            provenance[pos].push(schema.origin_of(i));
        } else {
            fds.push(*fd);
            provenance.push(vec![schema.origin_of(i)]);
        }
    }
    CanonicalCover {
        fds,
        provenance,
        dropped_trivial,
    }
}

/// Projects `fds` onto the attribute set `w`, keeping only minimal left-hand
/// sides.
///
/// Enumerates subsets of `w` in order of increasing size; an FD `X→A` is
/// emitted when `A ∈ closure(X)`, `A ∈ w∖X`, and no already-emitted FD for
/// `A` has a left-hand side contained in `X`. Errors when `2^|w|` exceeds
/// `budget`.
pub fn project_fds(
    fds: &[FunctionalDependency],
    w: &AttributeSet,
    budget: u128,
) -> Result<Vec<FunctionalDependency>> {
    if !fds.is_empty() {
        check_fds_universe(w, fds)?;
    }
    let members: Vec<usize> = w.iter().collect();
    let subset_count = 1u128 << members.len();
    if subset_count > budget {
        return Err(Error::BudgetExceeded {
            needed: subset_count,
            budget,
            unit: "subsets",
        });
    }

    // Subsets of w grouped by size so minimal-lhs filtering is a prefix scan.
    let mut subsets: Vec<AttributeSet> = Vec::new();
    for mask in 1u64..(1u64 << members.len()) {
        let mut s = *w;
        for (bit, &pos) in members.iter().enumerate() {
            if mask & (1 << bit) == 0 {
                s.remove(pos);
            }
        }
        subsets.push(s);
    }
    subsets.sort_by_key(|s| (s.len(), *s));

    let mut result: Vec<FunctionalDependency> = Vec::new();
    for x in subsets {
        let closed = closure(&x, fds)?;
        for a in closed.intersection(w).difference(&x).iter() {
            let minimal = !result
                .iter()
                .any(|fd| fd.rhs() == a && fd.lhs().is_subset(&x));
            if minimal {
                result.push(FunctionalDependency::new(x, a)?);
            }
        }
    }
    Ok(result)
}

/// True iff the union of the FD projections onto `components` implies every
/// original FD.
pub fn is_dependency_preserving(
    components: &[AttributeSet],
    fds: &[FunctionalDependency],
    budget: u128,
) -> Result<bool> {
    let mut projected: Vec<FunctionalDependency> = Vec::new();
    for component in components {
        if !fds.is_empty() {
            check_fds_universe(component, fds)?;
        }
        projected.extend(project_fds(fds, component, budget)?);
    }
    for fd in fds {
        if !implies(&projected, &fd.lhs(), &fd.rhs_set())? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema(attrs: &[&str], fds: &[(&[&str], &[&str])]) -> Schema {
        let universe = AttributeUniverse::new(attrs.iter().copied()).unwrap();
        let decls = fds
            .iter()
            .map(|(lhs, rhs)| FdDeclaration {
                lhs: lhs.iter().map(|s| s.to_string()).collect(),
                rhs: rhs.iter().map(|s| s.to_string()).collect(),
            })
            .collect();
        Schema::new(universe, decls).unwrap()
    }

    fn chain_schema() -> Schema {
        schema(
            &["A", "B", "C", "D"],
            &[(&["A"], &["B"]), (&["B"], &["C"]), (&["A", "C"], &["D"])],
        )
    }

    #[test]
    fn closure_reaches_fixpoint() {
        let s = chain_schema();
        let a = s.universe().set_of(["A"]).unwrap();
        let closed = closure(&a, s.fds()).unwrap();
        assert_eq!(s.universe().render(&closed), ["A", "B", "C", "D"]);
    }

    #[test]
    fn closure_without_fds_is_identity() {
        let s = schema(&["A", "B"], &[]);
        let ab = s.universe().set_of(["A", "B"]).unwrap();
        assert_eq!(closure(&ab, s.fds()).unwrap(), ab);
    }

    #[test]
    fn closure_of_b_in_chain() {
        let s = chain_schema();
        let b = s.universe().set_of(["B"]).unwrap();
        let closed = closure(&b, s.fds()).unwrap();
        assert_eq!(s.universe().render(&closed), ["B", "C"]);
    }

    #[test]
    fn closure_rejects_universe_mismatch() {
        let s = chain_schema();
        let other = AttributeUniverse::new(["X"]).unwrap();
        let x = other.set_of(["X"]).unwrap();
        assert!(closure(&x, s.fds()).is_err());
    }

    #[test]
    fn implies_transitivity_reflexivity_and_failure() {
        let s = schema(&["A", "B", "C"], &[(&["A"], &["B"]), (&["B"], &["C"])]);
        let u = s.universe();
        let a = u.set_of(["A"]).unwrap();
        let b = u.set_of(["B"]).unwrap();
        let c = u.set_of(["C"]).unwrap();
        assert!(implies(s.fds(), &a, &c).unwrap());
        assert!(implies(&[], &a, &a).unwrap());
        let only_ab = schema(&["A", "B", "C"], &[(&["A"], &["B"])]);
        assert!(!implies(only_ab.fds(), &b, &a).unwrap());
    }

    #[test]
    fn is_key_examples() {
        let s = schema(&["A", "B", "C"], &[(&["A"], &["B"]), (&["B"], &["C"])]);
        let u = s.universe();
        let a = u.set_of(["A"]).unwrap();
        assert!(is_key(&a, &u.full_set(), s.fds()).unwrap());

        let single = schema(&["A"], &[]);
        let a = single.universe().set_of(["A"]).unwrap();
        assert!(is_key(&a, &a, &[]).unwrap());

        let ab = schema(&["A", "B"], &[]);
        let b = ab.universe().set_of(["B"]).unwrap();
        assert!(!is_key(&b, &ab.universe().full_set(), &[]).unwrap());

        // x ⊄ u is a contract violation, not a "no" verdict.
        let c = ab.universe().set_of(["A"]).unwrap();
        assert!(is_key(&c, &b, &[]).is_err());
    }

    #[test]
    fn multi_attribute_rhs_splits_on_construction() {
        let s = schema(&["A", "B", "C"], &[(&["A"], &["B", "C"])]);
        assert_eq!(s.fds().len(), 2);
        let cover = canonical_cover(&s).unwrap();
        let rendered: Vec<String> = cover.fds().iter().map(|fd| fd.render(s.universe())).collect();
        assert_eq!(rendered, ["A→B", "A→C"]);
        assert_eq!(cover.provenance(0), [0]);
    }

    #[test]
    fn canonical_cover_removes_duplicates() {
        let s = schema(&["A", "B"], &[(&["A"], &["B"]), (&["A"], &["B"])]);
        let cover = canonical_cover(&s).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.provenance(0), [0, 1]);
    }

    #[test]
    fn canonical_cover_removes_redundant_fd() {
        let s = schema(
            &["A", "B", "C"],
            &[(&["A"], &["B"]), (&["B"], &["C"]), (&["A"], &["C"])],
        );
        let cover = canonical_cover(&s).unwrap();
        let rendered: Vec<String> = cover.fds().iter().map(|fd| fd.render(s.universe())).collect();
        assert_eq!(rendered, ["A→B", "B→C"]);
    }

    #[test]
    fn canonical_cover_removes_extraneous_lhs_attribute() {
        // B is extraneous in AB→C because A alone implies C through B.
        let s = schema(
            &["A", "B", "C"],
            &[
                (&["A"], &["B"]),
                (&["B"], &["C"]),
                (&["C"], &["A"]),
                (&["A", "B"], &["C"]),
            ],
        );
        let cover = canonical_cover(&s).unwrap();
        let rendered: Vec<String> = cover.fds().iter().map(|fd| fd.render(s.universe())).collect();
        assert_eq!(rendered, ["A→B", "B→C", "C→A"]);
    }

    #[test]
    fn canonical_cover_drops_trivial_fds() {
        let s = schema(&["A", "B"], &[(&["A", "B"], &["A"]), (&["A"], &["B"])]);
        let cover = canonical_cover(&s).unwrap();
        assert_eq!(cover.len(), 1);
        assert_eq!(cover.dropped_trivial().len(), 1);
    }

    #[test]
    fn declared_cover_keeps_unminimized_fds() {
        let s = schema(
            &["A", "B", "C"],
            &[
                (&["A"], &["B"]),
                (&["B"], &["C"]),
                (&["C"], &["A"]),
                (&["A", "B"], &["C"]),
            ],
        );
        let cover = declared_cover(&s);
        let rendered: Vec<String> = cover.fds().iter().map(|fd| fd.render(s.universe())).collect();
        assert_eq!(rendered, ["A→B", "B→C", "C→A", "A,B→C"]);
    }

    #[test]
    fn project_fds_examples() {
        let s = schema(&["A", "B", "C"], &[(&["A"], &["B"]), (&["B"], &["C"])]);
        let u = s.universe();
        let ac = u.set_of(["A", "C"]).unwrap();
        let projected = project_fds(s.fds(), &ac, DEFAULT_PROJECTION_BUDGET).unwrap();
        let rendered: Vec<String> = projected.iter().map(|fd| fd.render(u)).collect();
        assert_eq!(rendered, ["A→C"]);

        let none = project_fds(&[], &u.set_of(["A", "B"]).unwrap(), DEFAULT_PROJECTION_BUDGET).unwrap();
        assert!(none.is_empty());

        let sab = schema(&["A", "B"], &[(&["A"], &["B"])]);
        let full = sab.universe().full_set();
        let projected = project_fds(sab.fds(), &full, DEFAULT_PROJECTION_BUDGET).unwrap();
        let rendered: Vec<String> = projected.iter().map(|fd| fd.render(sab.universe())).collect();
        assert_eq!(rendered, ["A→B"]);
    }

    #[test]
    fn project_fds_budget_overflow_is_an_error() {
        let s = schema(&["A", "B", "C"], &[(&["A"], &["B"])]);
        let w = s.universe().full_set();
        let err = project_fds(s.fds(), &w, 4).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn dependency_preservation_examples() {
        let s = schema(&["A", "B", "C"], &[(&["A"], &["B"]), (&["B"], &["C"])]);
        let u = s.universe();
        let good = [u.set_of(["A", "B"]).unwrap(), u.set_of(["B", "C"]).unwrap()];
        assert!(is_dependency_preserving(&good, s.fds(), DEFAULT_PROJECTION_BUDGET).unwrap());

        let s2 = schema(&["A", "B", "C"], &[(&["B"], &["C"])]);
        let bad = [
            s2.universe().set_of(["A", "B"]).unwrap(),
            s2.universe().set_of(["A", "C"]).unwrap(),
        ];
        assert!(!is_dependency_preserving(&bad, s2.fds(), DEFAULT_PROJECTION_BUDGET).unwrap());

        let whole = [s.universe().full_set()];
        assert!(is_dependency_preserving(&whole, s.fds(), DEFAULT_PROJECTION_BUDGET).unwrap());
    }
}
