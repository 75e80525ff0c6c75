//! Python bindings for the schema-analysis toolkit.
//!
//! Exposes a `Schema` class carrying the attribute universe and FDs, with
//! methods for closures, canonical covers, dependency-complex homology,
//! lossless-join tests (criterion and chase), nerve obstructions, GYO, and
//! join trees; plus module-level helpers for plan execution and the audits.
//! All inputs and outputs are plain Python data (lists, dicts, strings).

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use fdtopo::attr::{AttributeSet, AttributeUniverse};
use fdtopo::audit::{
    audit_binary_equivalence, audit_keyed_collapse, audit_mv_exactness, audit_nerve_gyo,
    GeneratorParams,
};
use fdtopo::chase::chase_lossless;
use fdtopo::complex::dependency_complex;
use fdtopo::cover::{
    binary_lossless, nerve, nerve_obstruction, Cover, KeyedSide, NerveMode,
};
use fdtopo::fd::{
    canonical_cover, closure, declared_cover, implies, is_dependency_preserving, is_key,
    CanonicalCover, FdDeclaration, DEFAULT_PROJECTION_BUDGET,
};
use fdtopo::gyo::gyo_reduce;
use fdtopo::homology::{h1_cycle_basis, reduced_betti_profile};
use fdtopo::jointree::build_join_tree;
use fdtopo::planner::{execute_plan, naive_join, yannakakis_plan, ReductionPasses};
use fdtopo::relation::{Database, RelationInstance};

fn py_err(e: fdtopo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A relational schema: attribute names plus FDs given as
/// `(lhs_names, rhs_names)` pairs. Multi-attribute right-hand sides are
/// split into singletons.
#[pyclass]
struct Schema {
    inner: fdtopo::Schema,
}

impl Schema {
    fn set_of(&self, names: Vec<String>) -> PyResult<AttributeSet> {
        self.inner
            .universe()
            .set_of(names.iter().map(String::as_str))
            .map_err(py_err)
    }

    fn cover_of(&self, components: Vec<Vec<String>>) -> PyResult<Cover> {
        let sets = components
            .into_iter()
            .map(|c| self.set_of(c))
            .collect::<PyResult<Vec<_>>>()?;
        Cover::new(self.inner.universe(), sets).map_err(py_err)
    }

    fn working_cover(&self, minimize: bool) -> PyResult<CanonicalCover> {
        if minimize {
            canonical_cover(&self.inner).map_err(py_err)
        } else {
            Ok(declared_cover(&self.inner))
        }
    }

    fn names(&self, set: &AttributeSet) -> Vec<String> {
        self.inner.universe().render(set)
    }
}

#[pymethods]
impl Schema {
    #[new]
    fn new(attributes: Vec<String>, fds: Vec<(Vec<String>, Vec<String>)>) -> PyResult<Self> {
        let universe = AttributeUniverse::new(attributes).map_err(py_err)?;
        let decls = fds
            .into_iter()
            .map(|(lhs, rhs)| FdDeclaration { lhs, rhs })
            .collect();
        Ok(Self {
            inner: fdtopo::Schema::new(universe, decls).map_err(py_err)?,
        })
    }

    #[getter]
    fn attributes(&self) -> Vec<String> {
        self.inner.universe().names().to_vec()
    }

    /// Attribute closure of a set of names.
    fn closure(&self, attrs: Vec<String>) -> PyResult<Vec<String>> {
        let x = self.set_of(attrs)?;
        let closed = closure(&x, self.inner.fds()).map_err(py_err)?;
        Ok(self.names(&closed))
    }

    /// True iff `lhs → rhs` is implied by the schema's FDs.
    fn implies(&self, lhs: Vec<String>, rhs: Vec<String>) -> PyResult<bool> {
        let x = self.set_of(lhs)?;
        let y = self.set_of(rhs)?;
        implies(self.inner.fds(), &x, &y).map_err(py_err)
    }

    /// True iff `attrs` is a (super)key of the whole universe.
    fn is_key(&self, attrs: Vec<String>) -> PyResult<bool> {
        let x = self.set_of(attrs)?;
        is_key(&x, &self.inner.universe().full_set(), self.inner.fds()).map_err(py_err)
    }

    /// Minimized canonical cover as `(lhs_names, rhs_name)` pairs.
    fn canonical_cover(&self) -> PyResult<Vec<(Vec<String>, String)>> {
        let cover = canonical_cover(&self.inner).map_err(py_err)?;
        Ok(cover
            .fds()
            .iter()
            .map(|fd| {
                (
                    self.names(&fd.lhs()),
                    self.inner.universe().name(fd.rhs()).to_string(),
                )
            })
            .collect())
    }

    /// Maximal faces of the dependency complex, as attribute-name lists.
    #[pyo3(signature = (minimize = false))]
    fn maximal_faces(&self, minimize: bool) -> PyResult<Vec<Vec<String>>> {
        let cover = self.working_cover(minimize)?;
        let k = dependency_complex(&cover, self.inner.universe());
        Ok(k.maximal_faces()
            .iter()
            .map(|f| {
                f.vertices()
                    .iter()
                    .map(|&v| self.inner.universe().name(v).to_string())
                    .collect()
            })
            .collect())
    }

    /// Reduced Betti profile of the dependency complex (index 0 counts
    /// connected components minus one).
    #[pyo3(signature = (minimize = false))]
    fn betti(&self, minimize: bool) -> PyResult<Vec<usize>> {
        let cover = self.working_cover(minimize)?;
        let k = dependency_complex(&cover, self.inner.universe());
        Ok(reduced_betti_profile(&k).map_err(py_err)?.reduced_betti)
    }

    /// True when every positive-degree Betti number of the dependency
    /// complex vanishes.
    #[pyo3(signature = (minimize = false))]
    fn is_snf(&self, minimize: bool) -> PyResult<bool> {
        Ok(self.betti(minimize)?.iter().skip(1).all(|&b| b == 0))
    }

    /// A basis of unfilled 1-cycles, each a list of `(a, b)` attribute-name
    /// edges.
    #[pyo3(signature = (minimize = false))]
    fn h1_cycles(&self, minimize: bool) -> PyResult<Vec<Vec<(String, String)>>> {
        let cover = self.working_cover(minimize)?;
        let k = dependency_complex(&cover, self.inner.universe());
        let cycles = h1_cycle_basis(&k).map_err(py_err)?;
        Ok(cycles
            .into_iter()
            .map(|edges| {
                edges
                    .into_iter()
                    .map(|(u, v)| {
                        (
                            self.inner.universe().name(u).to_string(),
                            self.inner.universe().name(v).to_string(),
                        )
                    })
                    .collect()
            })
            .collect())
    }

    /// The exact binary lossless-join criterion for a two-component
    /// decomposition.
    fn binary_lossless<'py>(
        &self,
        py: Python<'py>,
        left: Vec<String>,
        right: Vec<String>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let u1 = self.set_of(left)?;
        let u2 = self.set_of(right)?;
        let verdict =
            binary_lossless(self.inner.universe(), &u1, &u2, self.inner.fds()).map_err(py_err)?;
        let dict = PyDict::new(py);
        dict.set_item("lossless", verdict.lossless)?;
        dict.set_item(
            "keyed_side",
            match verdict.keyed_side {
                KeyedSide::None => "none",
                KeyedSide::Left => "left",
                KeyedSide::Right => "right",
                KeyedSide::Both => "both",
            },
        )?;
        dict.set_item("intersection", self.names(&verdict.intersection))?;
        Ok(dict)
    }

    /// Tableau chase on a k-component decomposition.
    fn chase_lossless<'py>(
        &self,
        py: Python<'py>,
        components: Vec<Vec<String>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let cover = self.cover_of(components)?;
        let outcome = chase_lossless(&cover, self.inner.fds()).map_err(py_err)?;
        let dict = PyDict::new(py);
        dict.set_item("lossless", outcome.lossless)?;
        dict.set_item("steps", outcome.steps)?;
        dict.set_item("tableau", outcome.tableau.render())?;
        Ok(dict)
    }

    /// True iff the projections onto the components imply every FD.
    #[pyo3(signature = (components, budget = None))]
    fn dependency_preserving(
        &self,
        components: Vec<Vec<String>>,
        budget: Option<u128>,
    ) -> PyResult<bool> {
        let cover = self.cover_of(components)?;
        is_dependency_preserving(
            cover.components(),
            self.inner.fds(),
            budget.unwrap_or(DEFAULT_PROJECTION_BUDGET),
        )
        .map_err(py_err)
    }

    /// Nerve of a decomposition: maximal faces (1-based component indices),
    /// the degree-1 obstruction, and its cycles.
    fn nerve<'py>(
        &self,
        py: Python<'py>,
        components: Vec<Vec<String>>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let cover = self.cover_of(components)?;
        let n = nerve(&cover, NerveMode::Attribute, None).map_err(py_err)?;
        let obstruction = nerve_obstruction(&cover).map_err(py_err)?;
        let dict = PyDict::new(py);
        let faces: Vec<Vec<usize>> = n
            .complex()
            .maximal_faces()
            .iter()
            .map(|f| f.vertices().iter().map(|v| v + 1).collect())
            .collect();
        dict.set_item("faces", faces)?;
        dict.set_item("b1", obstruction.b1)?;
        let cycles: Vec<Vec<usize>> = obstruction
            .cycles
            .iter()
            .map(|c| c.iter().map(|i| i + 1).collect())
            .collect();
        dict.set_item("cycles", cycles)?;
        Ok(dict)
    }

    /// True iff GYO ear reduction empties the decomposition hypergraph.
    fn gyo_acyclic(&self, components: Vec<Vec<String>>) -> PyResult<bool> {
        Ok(gyo_reduce(&self.cover_of(components)?).acyclic)
    }

    /// Join tree edges `(a, b, separator_names)` with 1-based component
    /// indices, or `None` when no join tree exists.
    fn join_tree(
        &self,
        components: Vec<Vec<String>>,
    ) -> PyResult<Option<Vec<(usize, usize, Vec<String>)>>> {
        let cover = self.cover_of(components)?;
        Ok(build_join_tree(&cover).map(|tree| {
            tree.edges()
                .iter()
                .map(|e| (e.a + 1, e.b + 1, self.names(&e.separator)))
                .collect()
        }))
    }

    fn __repr__(&self) -> String {
        format!(
            "Schema(attributes={:?}, fds={})",
            self.inner.universe().names(),
            self.inner.fds().len()
        )
    }
}

/// Plans and executes a semijoin-reduced join over an acyclic decomposition.
///
/// `relations[i]` holds the tuples of component `i` as dicts keyed by
/// attribute name. `root` is 1-based; `passes` is `"bottomup"` or `"full"`.
/// Falls back to the naive join (with `"reduced": False`) when the
/// decomposition has no join tree.
#[pyfunction]
#[pyo3(signature = (attributes, components, relations, root = 1, passes = "full"))]
fn run_plan<'py>(
    py: Python<'py>,
    attributes: Vec<String>,
    components: Vec<Vec<String>>,
    relations: Vec<Vec<std::collections::HashMap<String, String>>>,
    root: usize,
    passes: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let universe = AttributeUniverse::new(attributes).map_err(py_err)?;
    let sets = components
        .iter()
        .map(|c| universe.set_of(c.iter().map(String::as_str)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(py_err)?;
    let cover = Cover::new(&universe, sets).map_err(py_err)?;
    if relations.len() != cover.len() {
        return Err(PyValueError::new_err(format!(
            "{} relation lists for {} components",
            relations.len(),
            cover.len()
        )));
    }
    if root == 0 || root > cover.len() {
        return Err(PyValueError::new_err("root is a 1-based component index"));
    }
    let passes = match passes {
        "bottomup" => ReductionPasses::BottomUp,
        "full" => ReductionPasses::FullReducer,
        other => {
            return Err(PyValueError::new_err(format!(
                "passes must be `bottomup` or `full`, got `{other}`"
            )))
        }
    };

    let mut instances = Vec::with_capacity(cover.len());
    for (i, rows) in relations.iter().enumerate() {
        let attrs = cover.components()[i];
        let mut tuples = Vec::with_capacity(rows.len());
        for row in rows {
            let tuple = attrs
                .iter()
                .map(|pos| {
                    row.get(universe.name(pos)).cloned().ok_or_else(|| {
                        PyValueError::new_err(format!(
                            "relation {} row is missing attribute {}",
                            i + 1,
                            universe.name(pos)
                        ))
                    })
                })
                .collect::<PyResult<Vec<String>>>()?;
            tuples.push(tuple);
        }
        instances.push(RelationInstance::new(format!("R{}", i + 1), attrs, tuples).map_err(py_err)?);
    }
    let db = Database::new(instances).map_err(py_err)?;
    let naive = naive_join(&db).map_err(py_err)?;

    let dict = PyDict::new(py);
    let (result, reduced, peak) = match build_join_tree(&cover) {
        Some(tree) => {
            let plan = yannakakis_plan(&tree, root - 1, passes).map_err(py_err)?;
            let (result, cost) = execute_plan(&plan, &db).map_err(py_err)?;
            (result, true, cost.peak_intermediate)
        }
        None => (naive.clone(), false, naive.len()),
    };
    let result_attrs: Vec<usize> = result.attrs().iter().collect();
    let rows: Vec<std::collections::HashMap<String, String>> = result
        .tuples()
        .iter()
        .map(|tuple| {
            result_attrs
                .iter()
                .zip(tuple.iter())
                .map(|(&pos, value)| (universe.name(pos).to_string(), value.clone()))
                .collect()
        })
        .collect();
    dict.set_item("result", rows)?;
    dict.set_item("cardinality", result.len())?;
    dict.set_item("reduced", reduced)?;
    dict.set_item("peak_intermediate", peak)?;
    dict.set_item(
        "matches_naive",
        result.attrs() == naive.attrs() && result.tuples() == naive.tuples(),
    )?;
    Ok(dict)
}

/// Runs one structural audit: `binary`, `keyed-collapse`, `nerve-gyo`, or
/// `mv`. Returns the claim name, trial count, violation count, and whether
/// the claim was falsified.
#[pyfunction]
#[pyo3(signature = (claim, seed = 7, trials = 200))]
fn run_audit<'py>(
    py: Python<'py>,
    claim: &str,
    seed: u64,
    trials: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let report = match claim {
        "binary" => {
            let params = GeneratorParams {
                max_attributes: 7,
                max_fds: 8,
                max_lhs: 3,
                max_components: 2,
                seed,
            };
            audit_binary_equivalence(&params, trials).map_err(py_err)?
        }
        "keyed-collapse" => {
            let params = GeneratorParams {
                max_attributes: 6,
                max_fds: 6,
                max_lhs: 2,
                max_components: 2,
                seed,
            };
            audit_keyed_collapse(&params, trials).map_err(py_err)?
        }
        "nerve-gyo" => {
            let params = GeneratorParams {
                max_attributes: 5,
                max_fds: 1,
                max_lhs: 1,
                max_components: 4,
                seed,
            };
            audit_nerve_gyo(&params).map_err(py_err)?
        }
        "mv" => {
            let params = GeneratorParams {
                max_attributes: 8,
                max_fds: 5,
                max_lhs: 2,
                max_components: 2,
                seed,
            };
            audit_mv_exactness(&params, trials).map_err(py_err)?
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown claim `{other}`; use binary, keyed-collapse, nerve-gyo, or mv"
            )))
        }
    };
    let dict = PyDict::new(py);
    dict.set_item("claim", &report.claim)?;
    dict.set_item("trials", report.trials)?;
    dict.set_item("violations", report.violations.len())?;
    dict.set_item("falsified", report.falsified())?;
    Ok(dict)
}

#[pymodule]
fn fdtopo_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Schema>()?;
    m.add_function(wrap_pyfunction!(run_plan, m)?)?;
    m.add_function(wrap_pyfunction!(run_audit, m)?)?;
    Ok(())
}
