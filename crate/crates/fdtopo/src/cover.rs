//! Decomposition covers, the binary lossless-join criterion, and the nerve
//! of a cover with its degree-1 obstruction to join-tree structure.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::attr::{AttributeSet, AttributeUniverse};
use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::fd::{implies, FunctionalDependency};
use crate::homology::{h1_cycle_basis, reduced_betti_profile, Edge};

/// A decomposition cover: components whose union is the whole universe.
///
/// Components may be contained in one another; redundant components are the
/// business of GYO reduction, not of cover validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    components: Vec<AttributeSet>,
    universe_len: usize,
}

impl Cover {
    pub fn new(universe: &AttributeUniverse, components: Vec<AttributeSet>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::invalid("a cover needs at least one component"));
        }
        let mut union = universe.empty_set();
        for (i, component) in components.iter().enumerate() {
            component.check_universe(&union)?;
            if component.is_empty() {
                return Err(Error::invalid(format!("component #{} is empty", i + 1)));
            }
            union = union.union(component);
        }
        if union != universe.full_set() {
            let missing = universe.full_set().difference(&union);
            return Err(Error::invalid(format!(
                "cover does not reach attributes {}",
                universe.render_braced(&missing)
            )));
        }
        Ok(Self {
            components,
            universe_len: universe.len(),
        })
    }

    pub fn components(&self) -> &[AttributeSet] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn universe_len(&self) -> usize {
        self.universe_len
    }
}

/// Which side(s) of a binary decomposition the intersection determines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KeyedSide {
    None,
    Left,
    Right,
    Both,
}

/// Verdict of the exact binary lossless-join criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLosslessVerdict {
    pub lossless: bool,
    pub keyed_side: KeyedSide,
    pub intersection: AttributeSet,
}

/// The classical binary test: the decomposition `(u1, u2)` of the universe is
/// lossless iff the intersection functionally determines one of the sides.
pub fn binary_lossless(
    universe: &AttributeUniverse,
    u1: &AttributeSet,
    u2: &AttributeSet,
    fds: &[FunctionalDependency],
) -> Result<BinaryLosslessVerdict> {
    u1.check_universe(u2)?;
    if u1.union(u2) != universe.full_set() {
        return Err(Error::invalid("the two components must cover the universe"));
    }
    let intersection = u1.intersection(u2);
    let left = implies(fds, &intersection, u1)?;
    let right = implies(fds, &intersection, u2)?;
    let keyed_side = match (left, right) {
        (true, true) => KeyedSide::Both,
        (true, false) => KeyedSide::Left,
        (false, true) => KeyedSide::Right,
        (false, false) => KeyedSide::None,
    };
    Ok(BinaryLosslessVerdict {
        lossless: left || right,
        keyed_side,
        intersection,
    })
}

/// How nerve faces are witnessed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NerveMode {
    /// A subfamily spans a face iff its components share an attribute.
    Attribute,
    /// A subfamily spans a face iff the induced subcomplexes of a dependency
    /// complex share a face (equivalently a vertex, by downward closure).
    Complex,
}

/// The nerve of a cover: a complex on component indices, plus the witness
/// attribute behind every face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    complex: SimplicialComplex,
    /// For each witnessing attribute (ascending), the component set it spans.
    generators: BTreeMap<usize, Vec<usize>>,
}

impl Nerve {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The smallest attribute shared by every component of `face`, if any.
    /// Faces of the nerve always have one; that attribute is the recorded
    /// witness of the face.
    pub fn witness(&self, face: &Simplex) -> Option<usize> {
        self.generators
            .iter()
            .find(|(_, span)| face.vertices().iter().all(|i| span.contains(i)))
            .map(|(&attr, _)| attr)
    }

    pub fn generators(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.generators
    }
}

/// Builds the nerve of `cover`.
///
/// In `Complex` mode only attributes that are vertices of `k_f` witness
/// faces, so `k_f` is required there.
pub fn nerve(
    cover: &Cover,
    mode: NerveMode,
    k_f: Option<&SimplicialComplex>,
) -> Result<Nerve> {
    let k_f = match mode {
        NerveMode::Attribute => None,
        NerveMode::Complex => Some(k_f.ok_or_else(|| {
            Error::invalid("complex-level nerve needs the dependency complex")
        })?),
    };
    let mut generators: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for attr in 0..cover.universe_len() {
        if let Some(k) = k_f {
            let vertex = Simplex::new(vec![attr]);
            if !k.has_face(&vertex) {
                continue;
            }
        }
        let span: Vec<usize> = cover
            .components()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(attr))
            .map(|(i, _)| i)
            .collect();
        if !span.is_empty() {
            generators.insert(attr, span);
        }
    }
    let faces: Vec<Simplex> = generators
        .values()
        .map(|span| Simplex::new(span.clone()))
        .collect();
    let complex = SimplicialComplex::from_faces(cover.len(), faces)?;
    Ok(Nerve {
        complex,
        generators,
    })
}

/// The degree-1 obstruction of a cover's (attribute-level) nerve: `b₁` and a
/// cycle basis reported as component-index cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveObstruction {
    pub b1: usize,
    /// Each cycle as a closed walk of component indices (0-based).
    pub cycles: Vec<Vec<usize>>,
}

pub fn nerve_obstruction(cover: &Cover) -> Result<NerveObstruction> {
    let nerve = nerve(cover, NerveMode::Attribute, None)?;
    if nerve.complex().is_empty() {
        // Unreachable for valid covers: every component is nonempty, so it
        // carries at least one witnessing attribute.
        return Ok(NerveObstruction { b1: 0, cycles: Vec::new() });
    }
    let profile = reduced_betti_profile(nerve.complex())?;
    let cycles = h1_cycle_basis(nerve.complex())?
        .into_iter()
        .map(|edges| edge_cycle_to_vertex_walk(&edges))
        .collect();
    Ok(NerveObstruction {
        b1: profile.betti(1),
        cycles,
    })
}

/// Converts a simple edge cycle into the closed vertex walk it traces,
/// starting at the lowest vertex and moving toward its smaller neighbor.
pub fn edge_cycle_to_vertex_walk(edges: &[Edge]) -> Vec<usize> {
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in edges {
        adjacency.entry(u).or_default().push(v);
        adjacency.entry(v).or_default().push(u);
    }
    for neighbors in adjacency.values_mut() {
        neighbors.sort_unstable();
    }
    let start = *adjacency.keys().next().expect("cycle has vertices");
    let mut walk = vec![start];
    let mut previous = None;
    let mut current = start;
    loop {
        let next = *adjacency[&current]
            .iter()
            .find(|&&n| Some(n) != previous)
            .expect("every cycle vertex has two neighbors");
        if next == start {
            break;
        }
        walk.push(next);
        previous = Some(current);
        current = next;
    }
    walk
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attr::AttributeUniverse;
    use crate::fd::{FdDeclaration, Schema};

    fn universe(names: &[&str]) -> AttributeUniverse {
        AttributeUniverse::new(names.iter().copied()).unwrap()
    }

    fn cover_of(u: &AttributeUniverse, components: &[&[&str]]) -> Cover {
        let sets = components
            .iter()
            .map(|c| u.set_of(c.iter().copied()).unwrap())
            .collect();
        Cover::new(u, sets).unwrap()
    }

    #[test]
    fn cover_must_reach_every_attribute() {
        let u = universe(&["A", "B", "C"]);
        let partial = vec![u.set_of(["A", "B"]).unwrap()];
        assert!(Cover::new(&u, partial).is_err());
    }

    #[test]
    fn binary_lossless_examples() {
        let u = universe(&["A", "B", "C"]);
        let schema = Schema::new(
            u.clone(),
            vec![FdDeclaration { lhs: vec!["A".into()], rhs: vec!["B".into()] }],
        )
        .unwrap();
        let u1 = u.set_of(["A", "B"]).unwrap();
        let u2 = u.set_of(["A", "C"]).unwrap();

        let verdict = binary_lossless(&u, &u1, &u2, schema.fds()).unwrap();
        assert!(verdict.lossless);
        assert_eq!(verdict.keyed_side, KeyedSide::Left);
        assert_eq!(u.render(&verdict.intersection), ["A"]);

        let verdict = binary_lossless(&u, &u1, &u2, &[]).unwrap();
        assert!(!verdict.lossless);
        assert_eq!(verdict.keyed_side, KeyedSide::None);

        // u1 = U always makes the right side keyed by its own attributes.
        let verdict = binary_lossless(&u, &u.full_set(), &u2, &[]).unwrap();
        assert!(verdict.lossless);
        assert!(matches!(verdict.keyed_side, KeyedSide::Right | KeyedSide::Both));
    }

    #[test]
    fn binary_lossless_rejects_non_covering_pair() {
        let u = universe(&["A", "B", "C"]);
        let u1 = u.set_of(["A"]).unwrap();
        let u2 = u.set_of(["B"]).unwrap();
        assert!(binary_lossless(&u, &u1, &u2, &[]).is_err());
    }

    #[test]
    fn nerve_of_pairwise_overlapping_cover_is_a_hollow_triangle() {
        let u = universe(&["A", "B", "C"]);
        let cover = cover_of(&u, &[&["A", "B"], &["B", "C"], &["C", "A"]]);
        let nerve = nerve(&cover, NerveMode::Attribute, None).unwrap();
        assert_eq!(nerve.complex().maximal_faces().len(), 3);
        assert_eq!(nerve.complex().face_count(1), 3);
        assert!(nerve.complex().faces(2).is_empty());
        // The face {0,1} is witnessed by B.
        let witness = nerve.witness(&Simplex::new(vec![0, 1])).unwrap();
        assert_eq!(u.name(witness), "B");

        let obstruction = nerve_obstruction(&cover).unwrap();
        assert_eq!(obstruction.b1, 1);
        assert_eq!(obstruction.cycles, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn nerve_of_single_component_is_a_vertex() {
        let u = universe(&["A", "B"]);
        let cover = cover_of(&u, &[&["A", "B"]]);
        let nerve = nerve(&cover, NerveMode::Attribute, None).unwrap();
        assert_eq!(nerve.complex().maximal_faces().len(), 1);
        assert_eq!(nerve.complex().dim(), Some(0));
    }

    #[test]
    fn common_attribute_fills_the_nerve() {
        let u = universe(&["A", "B", "C", "X"]);
        let cover = cover_of(&u, &[&["A", "X"], &["B", "X"], &["C", "X"]]);
        let nerve = nerve(&cover, NerveMode::Attribute, None).unwrap();
        assert_eq!(nerve.complex().maximal_faces().len(), 1);
        assert_eq!(nerve.complex().maximal_faces()[0], Simplex::new(vec![0, 1, 2]));
        let obstruction = nerve_obstruction(&cover).unwrap();
        assert_eq!(obstruction.b1, 0);
    }

    #[test]
    fn chain_cover_has_no_obstruction_and_square_does() {
        let u = universe(&["A", "B", "C", "D"]);
        let chain = cover_of(&u, &[&["A", "B"], &["B", "C"], &["C", "D"]]);
        assert_eq!(nerve_obstruction(&chain).unwrap().b1, 0);

        let square = cover_of(&u, &[&["A", "B"], &["B", "C"], &["C", "D"], &["D", "A"]]);
        let obstruction = nerve_obstruction(&square).unwrap();
        assert_eq!(obstruction.b1, 1);
        assert_eq!(obstruction.cycles.len(), 1);
        assert_eq!(obstruction.cycles[0].len(), 4);
    }

    #[test]
    fn complex_mode_matches_attribute_mode_when_all_attributes_are_vertices() {
        let u = universe(&["A", "B", "C"]);
        let schema = Schema::new(
            u.clone(),
            vec![FdDeclaration { lhs: vec!["A".into()], rhs: vec!["B".into()] }],
        )
        .unwrap();
        let k_f = crate::complex::dependency_complex(&crate::fd::declared_cover(&schema), &u);
        let cover = cover_of(&u, &[&["A", "B"], &["B", "C"], &["C", "A"]]);
        let attribute = nerve(&cover, NerveMode::Attribute, None).unwrap();
        let complex_level = nerve(&cover, NerveMode::Complex, Some(&k_f)).unwrap();
        assert_eq!(attribute.complex(), complex_level.complex());
    }

    #[test]
    fn complex_mode_requires_the_complex() {
        let u = universe(&["A", "B"]);
        let cover = cover_of(&u, &[&["A", "B"]]);
        assert!(nerve(&cover, NerveMode::Complex, None).is_err());
    }
}
