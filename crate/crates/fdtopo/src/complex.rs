//! Abstract simplicial complexes over integer vertex ids.
//!
//! A complex is stored by its maximal faces (an antichain under inclusion);
//! faces of each dimension are enumerated on demand, lexicographically
//! ordered, and memoized behind a write-once cell so shared use across
//! threads stays cheap and deterministic.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::attr::{AttributeSet, AttributeUniverse};
use crate::error::{Error, Result};
use crate::fd::CanonicalCover;

/// A nonempty, strictly increasing list of vertex positions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    /// Builds a simplex from arbitrary vertex ids; sorts and deduplicates.
    ///
    /// Panics when `vertices` is empty — an empty simplex is a programming
    /// error, not an input condition.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "a simplex needs at least one vertex");
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Dimension = vertex count − 1.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|v| other.contains(*v))
    }

    /// All facets (codimension-1 faces); empty for vertices.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|skip| {
                let vs: Vec<usize> = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                Simplex { vertices: vs }
            })
            .collect()
    }

    /// All sub-simplices with exactly `k` vertices, in lexicographic order.
    fn subsets_of_size(&self, k: usize) -> Vec<Simplex> {
        let n = self.vertices.len();
        if k == 0 || k > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut indices: Vec<usize> = (0..k).collect();
        loop {
            out.push(Simplex {
                vertices: indices.iter().map(|&i| self.vertices[i]).collect(),
            });
            // Advance the combination.
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if indices[i] != i + n - k {
                    break;
                }
            }
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
        }
    }

    pub fn from_attribute_set(set: &AttributeSet) -> Simplex {
        Simplex::new(set.iter().collect())
    }

    pub fn render(&self, universe: &AttributeUniverse) -> String {
        format!(
            "{{{}}}",
            self.vertices
                .iter()
                .map(|&v| universe.name(v).to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "⟩")
    }
}

/// An abstract simplicial complex given by its maximal faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_count: usize,
    maximal_faces: Vec<Simplex>,
    face_cache: OnceLock<Vec<Vec<Simplex>>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.maximal_faces == other.maximal_faces
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertex_count", &self.vertex_count)
            .field("maximal_faces", &self.maximal_faces)
            .finish()
    }
}

/// Reduces a face list to the antichain of inclusion-maximal faces, sorted
/// lexicographically and deduplicated.
fn antichain(mut faces: Vec<Simplex>) -> Vec<Simplex> {
    faces.sort();
    faces.dedup();
    let mut maximal: Vec<Simplex> = Vec::new();
    for face in &faces {
        if !faces
            .iter()
            .any(|other| other != face && face.is_face_of(other))
        {
            maximal.push(face.clone());
        }
    }
    maximal
}

impl SimplicialComplex {
    /// Builds the complex generated by `faces` over `vertex_count` vertices.
    ///
    /// Faces may overlap or contain one another; the result keeps only the
    /// inclusion-maximal ones. The complex may be empty (no faces at all).
    pub fn from_faces(vertex_count: usize, faces: Vec<Simplex>) -> Result<Self> {
        for face in &faces {
            if let Some(&max) = face.vertices().last() {
                if max >= vertex_count {
                    return Err(Error::invalid(format!(
                        "face {face:?} references vertex {max}, but the complex has {vertex_count} vertices"
                    )));
                }
            }
        }
        Ok(Self {
            vertex_count,
            maximal_faces: antichain(faces),
            face_cache: OnceLock::new(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn maximal_faces(&self) -> &[Simplex] {
        &self.maximal_faces
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_faces.is_empty()
    }

    /// Dimension of the complex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.maximal_faces.iter().map(Simplex::dim).max()
    }

    fn face_table(&self) -> &Vec<Vec<Simplex>> {
        self.face_cache.get_or_init(|| {
            let dim = match self.dim() {
                Some(d) => d,
                None => return Vec::new(),
            };
            let mut table: Vec<Vec<Simplex>> = Vec::with_capacity(dim + 1);
            for n in 0..=dim {
                let mut seen: BTreeSet<Simplex> = BTreeSet::new();
                for max_face in &self.maximal_faces {
                    for sub in max_face.subsets_of_size(n + 1) {
                        seen.insert(sub);
                    }
                }
                table.push(seen.into_iter().collect());
            }
            table
        })
    }

    /// All `n`-dimensional faces in lexicographic order.
    pub fn faces(&self, n: usize) -> &[Simplex] {
        static EMPTY: Vec<Simplex> = Vec::new();
        self.face_table().get(n).unwrap_or(&EMPTY)
    }

    pub fn face_count(&self, n: usize) -> usize {
        self.faces(n).len()
    }

    /// True iff `simplex` is a face of the complex.
    pub fn has_face(&self, simplex: &Simplex) -> bool {
        self.maximal_faces.iter().any(|m| simplex.is_face_of(m))
    }

    fn induced_by(&self, keep: impl Fn(usize) -> bool) -> SimplicialComplex {
        let mut faces = Vec::new();
        for face in &self.maximal_faces {
            let kept: Vec<usize> = face
                .vertices()
                .iter()
                .copied()
                .filter(|&v| keep(v))
                .collect();
            if !kept.is_empty() {
                faces.push(Simplex::new(kept));
            }
        }
        SimplicialComplex::from_faces(self.vertex_count, faces)
            .expect("induced faces stay within the vertex range")
    }

    /// The induced subcomplex on vertex set `w`: all faces inside `w`.
    pub fn induced(&self, w: &AttributeSet) -> Result<SimplicialComplex> {
        if let Some(max) = w.iter().last() {
            if max >= self.vertex_count {
                return Err(Error::invalid(format!(
                    "vertex {max} out of range for complex with {} vertices",
                    self.vertex_count
                )));
            }
        }
        Ok(self.induced_by(|v| w.contains(v)))
    }

    /// Induced subcomplex on an explicit vertex list, for complexes whose
    /// vertices are not attribute positions.
    pub fn induced_on(&self, vertices: &[usize]) -> Result<SimplicialComplex> {
        if let Some(&max) = vertices.iter().max() {
            if max >= self.vertex_count {
                return Err(Error::invalid(format!(
                    "vertex {max} out of range for complex with {} vertices",
                    self.vertex_count
                )));
            }
        }
        let keep: std::collections::BTreeSet<usize> = vertices.iter().copied().collect();
        Ok(self.induced_by(|v| keep.contains(&v)))
    }

    /// Union of two complexes over the same vertex range.
    pub fn union(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.vertex_count != other.vertex_count {
            return Err(Error::invalid("complexes live on different vertex ranges"));
        }
        let mut faces = self.maximal_faces.clone();
        faces.extend(other.maximal_faces.iter().cloned());
        SimplicialComplex::from_faces(self.vertex_count, faces)
    }

    /// Intersection of two complexes: all common faces.
    pub fn intersection(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if self.vertex_count != other.vertex_count {
            return Err(Error::invalid("complexes live on different vertex ranges"));
        }
        let mut faces = Vec::new();
        for a in &self.maximal_faces {
            for b in &other.maximal_faces {
                let common: Vec<usize> = a
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|&v| b.contains(v))
                    .collect();
                if !common.is_empty() {
                    faces.push(Simplex::new(common));
                }
            }
        }
        SimplicialComplex::from_faces(self.vertex_count, faces)
    }
}

/// Builds the dependency complex of a cover over `universe`.
///
/// Every FD `X→A` contributes the face `X ∪ {A}`; every attribute of the
/// universe is kept as a vertex, so the complex always lives on the full
/// attribute set and disconnected attribute groups stay visible in degree 0.
pub fn dependency_complex(cover: &CanonicalCover, universe: &AttributeUniverse) -> SimplicialComplex {
    let mut faces: Vec<Simplex> = (0..universe.len()).map(|v| Simplex::new(vec![v])).collect();
    for fd in cover.fds() {
        faces.push(Simplex::from_attribute_set(&fd.support()));
    }
    SimplicialComplex::from_faces(universe.len(), faces)
        .expect("cover attributes are always within the universe")
}

/// Dependency complex restricted to FD-supported attributes: isolated
/// attributes are not added as vertices.
pub fn dependency_complex_on_support(
    cover: &CanonicalCover,
    universe: &AttributeUniverse,
) -> SimplicialComplex {
    let faces: Vec<Simplex> = cover
        .fds()
        .iter()
        .map(|fd| Simplex::from_attribute_set(&fd.support()))
        .collect();
    SimplicialComplex::from_faces(universe.len(), faces)
        .expect("cover attributes are always within the universe")
}
