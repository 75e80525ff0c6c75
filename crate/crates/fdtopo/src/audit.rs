//! Randomized and exhaustive audits of the toolkit's structural claims,
//! with replayable counterexample reporting.
//!
//! Four claims are covered: the binary lossless criterion agrees with the
//! chase (theorem; zero violations expected), the keyed-side homology
//! collapse (empirically false; the embedded regression instance is always
//! checked), GYO-acyclic covers have nerves without 1-cycles (theorem at
//! the audited bounds), and two-subcomplex exactness identities hold
//! (theorem; a failure means a homology bug).

use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::attr::AttributeUniverse;
use crate::chase::chase_lossless;
use crate::complex::{dependency_complex, Simplex, SimplicialComplex};
use crate::cover::{binary_lossless, nerve_obstruction, Cover};
use crate::error::{Error, Result};
use crate::fd::{canonical_cover, implies, FdDeclaration, Schema};
use crate::gyo::gyo_reduce;
use crate::homology::{mv_exactness_audit, reduced_betti_profile};
use crate::jointree::build_join_tree;
use crate::relation::{Database, RelationInstance};

/// Bounds and seed for the random generators. Generation is a pure function
/// of these fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub max_attributes: usize,
    pub max_fds: usize,
    pub max_lhs: usize,
    pub max_components: usize,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(seed: u64) -> Self {
        Self {
            max_attributes: 6,
            max_fds: 6,
            max_lhs: 2,
            max_components: 3,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_attributes == 0
            || self.max_fds == 0
            || self.max_lhs == 0
            || self.max_components == 0
        {
            return Err(Error::invalid("generator bounds must be at least 1"));
        }
        if self.max_attributes > 26 {
            return Err(Error::invalid("generators use single-letter attribute names (≤ 26)"));
        }
        Ok(())
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn attribute_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| char::from(b'A' + i as u8).to_string())
        .collect()
}

/// A random schema within the bounds: 1..=max_attributes attributes,
/// 0..=max_fds FDs with nonempty left-hand sides and a dependent attribute
/// outside the determinant.
pub fn random_schema(params: &GeneratorParams, rng: &mut ChaCha8Rng) -> Schema {
    let attr_count = rng.random_range(1..=params.max_attributes);
    let universe = AttributeUniverse::new(attribute_names(attr_count)).unwrap();
    let fd_count = rng.random_range(0..=params.max_fds);
    let mut decls = Vec::new();
    for _ in 0..fd_count {
        let lhs_size = rng.random_range(1..=params.max_lhs.min(attr_count));
        let mut positions: Vec<usize> = (0..attr_count).collect();
        positions.shuffle(rng);
        let lhs: Vec<usize> = positions[..lhs_size].to_vec();
        let outside: Vec<usize> = (0..attr_count).filter(|p| !lhs.contains(p)).collect();
        if outside.is_empty() {
            continue; // one-attribute universes admit only trivial FDs
        }
        let rhs = outside[rng.random_range(0..outside.len())];
        decls.push(FdDeclaration {
            lhs: lhs.iter().map(|&p| universe.name(p).to_string()).collect(),
            rhs: vec![universe.name(rhs).to_string()],
        });
    }
    Schema::new(universe, decls).unwrap()
}

/// A random cover of the schema's universe with 1..=max_components
/// components; every attribute is assigned to at least one component.
pub fn random_cover(schema: &Schema, params: &GeneratorParams, rng: &mut ChaCha8Rng) -> Cover {
    let universe = schema.universe();
    let k = rng.random_range(1..=params.max_components);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); k];
    for attr in 0..universe.len() {
        let mut placed = false;
        for member_list in members.iter_mut() {
            if rng.random_bool(0.4) {
                member_list.push(attr);
                placed = true;
            }
        }
        if !placed {
            members[rng.random_range(0..k)].push(attr);
        }
    }
    // Components must be nonempty; steal coverage from the full universe.
    for member_list in members.iter_mut() {
        if member_list.is_empty() {
            member_list.push(rng.random_range(0..universe.len()));
        }
    }
    let components = members
        .into_iter()
        .map(|m| universe.set_of_positions(m).unwrap())
        .collect();
    Cover::new(universe, components).unwrap()
}

/// A random binary cover: each attribute lands on the left, the right, or
/// both sides, and both sides are nonempty.
pub fn random_binary_cover(schema: &Schema, rng: &mut ChaCha8Rng) -> Cover {
    let universe = schema.universe();
    let n = universe.len();
    loop {
        let mut left = Vec::new();
        let mut right = Vec::new();
        for attr in 0..n {
            match rng.random_range(0..3) {
                0 => left.push(attr),
                1 => right.push(attr),
                _ => {
                    left.push(attr);
                    right.push(attr);
                }
            }
        }
        if left.is_empty() || right.is_empty() {
            continue;
        }
        let components = vec![
            universe.set_of_positions(left).unwrap(),
            universe.set_of_positions(right).unwrap(),
        ];
        return Cover::new(universe, components).unwrap();
    }
}

/// An independent random instance per cover component, values drawn from a
/// small domain so join collisions actually happen.
pub fn random_database(cover: &Cover, params: &GeneratorParams, rng: &mut ChaCha8Rng) -> Database {
    let _ = params;
    let relations = cover
        .components()
        .iter()
        .enumerate()
        .map(|(i, component)| {
            let rows = rng.random_range(0..=4);
            let tuples: Vec<Vec<String>> = (0..rows)
                .map(|_| {
                    component
                        .iter()
                        .map(|_| rng.random_range(0..4u8).to_string())
                        .collect()
                })
                .collect();
            RelationInstance::new(format!("R{}", i + 1), *component, tuples).unwrap()
        })
        .collect();
    Database::new(relations).unwrap()
}

/// A random instance over the whole universe that satisfies the schema's
/// FDs: tuples are drawn from a small domain, then dependent attributes are
/// overwritten to agree with the first tuple sharing the determinant.
pub fn random_satisfying_instance(
    schema: &Schema,
    rows: usize,
    rng: &mut ChaCha8Rng,
) -> RelationInstance {
    let universe = schema.universe();
    let n = universe.len();
    let fds = schema.fds();
    let mut accepted: Vec<Vec<String>> = Vec::new();
    for _ in 0..rows {
        let mut tuple: Vec<String> = (0..n).map(|_| rng.random_range(0..4u8).to_string()).collect();
        // Repair against already-accepted tuples until stable or plainly
        // convergent; fall back to duplicating the first tuple.
        let mut stable = false;
        for _ in 0..(fds.len() * n + 4) {
            let mut changed = false;
            for fd in fds {
                let lhs: Vec<usize> = fd.lhs().iter().collect();
                for prev in &accepted {
                    if lhs.iter().all(|&a| prev[a] == tuple[a]) && prev[fd.rhs()] != tuple[fd.rhs()]
                    {
                        tuple[fd.rhs()] = prev[fd.rhs()].clone();
                        changed = true;
                    }
                }
            }
            if !changed {
                stable = true;
                break;
            }
        }
        if !stable {
            tuple = accepted[0].clone();
        }
        accepted.push(tuple);
    }
    let instance =
        RelationInstance::new("r", universe.full_set(), accepted).unwrap();
    debug_assert!(instance_satisfies(&instance, schema));
    instance
}

/// FD-satisfaction scan: no two tuples agree on a determinant and disagree
/// on its dependent attribute.
pub fn instance_satisfies(instance: &RelationInstance, schema: &Schema) -> bool {
    let tuples: Vec<&Vec<String>> = instance.tuples().iter().collect();
    for fd in schema.fds() {
        let lhs: Vec<usize> = fd.lhs().iter().collect();
        for (i, a) in tuples.iter().enumerate() {
            for b in tuples.iter().skip(i + 1) {
                if lhs.iter().all(|&attr| a[attr] == b[attr]) && a[fd.rhs()] != b[fd.rhs()] {
                    return false;
                }
            }
        }
    }
    true
}

/// A random nonempty complex: a handful of faces over a small vertex range.
pub fn random_complex(max_vertices: usize, max_faces: usize, rng: &mut ChaCha8Rng) -> SimplicialComplex {
    let vertex_count = rng.random_range(3..=max_vertices.max(3));
    let face_count = rng.random_range(1..=max_faces.max(1));
    let mut faces = Vec::new();
    for _ in 0..face_count {
        let size = rng.random_range(1..=4.min(vertex_count));
        let mut vs: Vec<usize> = (0..vertex_count).collect();
        vs.shuffle(rng);
        faces.push(Simplex::new(vs[..size].to_vec()));
    }
    SimplicialComplex::from_faces(vertex_count, faces).unwrap()
}

/// Serialized inputs and observed values of one failed trial. Each variant
/// carries everything needed to rerun the cited computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "claim")]
pub enum Violation {
    BinaryEquivalence {
        attributes: Vec<String>,
        fds: Vec<FdDeclaration>,
        left: Vec<String>,
        right: Vec<String>,
        chase_lossless: bool,
        criterion_lossless: bool,
    },
    KeyedCollapse {
        instance: String,
        attributes: Vec<String>,
        fds: Vec<FdDeclaration>,
        keyed_component: Vec<String>,
        intersection: Vec<String>,
        keyed_profile: Vec<usize>,
        intersection_profile: Vec<usize>,
    },
    NerveGyo {
        attributes: Vec<String>,
        components: Vec<Vec<String>>,
        acyclic: bool,
        nerve_b1: usize,
    },
    MvExactness {
        vertex_count: usize,
        first_faces: Vec<Vec<usize>>,
        second_faces: Vec<Vec<usize>>,
        failed_checks: Vec<String>,
    },
}

impl Violation {
    /// Re-runs the cited computation from the serialized inputs and reports
    /// whether the recorded values reproduce exactly.
    pub fn replay(&self) -> Result<bool> {
        match self {
            Violation::BinaryEquivalence {
                attributes,
                fds,
                left,
                right,
                chase_lossless: recorded_chase,
                criterion_lossless: recorded_criterion,
            } => {
                let universe = AttributeUniverse::new(attributes.clone())?;
                let schema = Schema::new(universe.clone(), fds.clone())?;
                let u1 = universe.set_of(left.iter().map(String::as_str))?;
                let u2 = universe.set_of(right.iter().map(String::as_str))?;
                let cover = Cover::new(&universe, vec![u1, u2])?;
                let chase = chase_lossless(&cover, schema.fds())?.lossless;
                let criterion = binary_lossless(&universe, &u1, &u2, schema.fds())?.lossless;
                Ok(chase == *recorded_chase && criterion == *recorded_criterion)
            }
            Violation::KeyedCollapse {
                attributes,
                fds,
                keyed_component,
                intersection,
                keyed_profile,
                intersection_profile,
                ..
            } => {
                let universe = AttributeUniverse::new(attributes.clone())?;
                let schema = Schema::new(universe.clone(), fds.clone())?;
                let cover = canonical_cover(&schema)?;
                let k_f = dependency_complex(&cover, &universe);
                let keyed = universe.set_of(keyed_component.iter().map(String::as_str))?;
                let inter = universe.set_of(intersection.iter().map(String::as_str))?;
                let keyed_b = reduced_betti_profile(&k_f.induced(&keyed)?)?;
                let inter_b = reduced_betti_profile(&k_f.induced(&inter)?)?;
                Ok(keyed_b.reduced_betti == *keyed_profile
                    && inter_b.reduced_betti == *intersection_profile)
            }
            Violation::NerveGyo {
                attributes,
                components,
                acyclic,
                nerve_b1,
            } => {
                let universe = AttributeUniverse::new(attributes.clone())?;
                let sets = components
                    .iter()
                    .map(|c| universe.set_of(c.iter().map(String::as_str)))
                    .collect::<Result<Vec<_>>>()?;
                let cover = Cover::new(&universe, sets)?;
                Ok(gyo_reduce(&cover).acyclic == *acyclic
                    && nerve_obstruction(&cover)?.b1 == *nerve_b1)
            }
            Violation::MvExactness {
                vertex_count,
                first_faces,
                second_faces,
                failed_checks,
            } => {
                let k1 = SimplicialComplex::from_faces(
                    *vertex_count,
                    first_faces.iter().map(|f| Simplex::new(f.clone())).collect(),
                )?;
                let k2 = SimplicialComplex::from_faces(
                    *vertex_count,
                    second_faces.iter().map(|f| Simplex::new(f.clone())).collect(),
                )?;
                let report = mv_exactness_audit(&k1, &k2)?;
                let failed: Vec<String> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.label.clone())
                    .collect();
                Ok(failed == *failed_checks)
            }
        }
    }
}

/// Outcome of one audit run. `elapsed_ms` is informational and excluded from
/// the serialized form so reports stay byte-deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub claim: String,
    pub trials: usize,
    pub seed: u64,
    pub violations: Vec<Violation>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl AuditReport {
    fn finish(claim: &str, trials: usize, seed: u64, mut violations: Vec<Violation>, started: Instant) -> Self {
        violations.sort_by_key(|v| serde_json::to_string(v).expect("violations serialize"));
        Self {
            claim: claim.to_string(),
            trials,
            seed,
            violations,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }

    pub fn falsified(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Checks that the chase verdict and the binary criterion agree on random
/// (schema, binary cover) pairs. Disagreement would falsify the classical
/// equivalence, so the expected violation count is zero.
pub fn audit_binary_equivalence(params: &GeneratorParams, trials: usize) -> Result<AuditReport> {
    params.validate()?;
    let started = Instant::now();
    let mut rng = params.rng();
    let mut violations = Vec::new();
    for _ in 0..trials {
        let schema = random_schema(params, &mut rng);
        if schema.universe().len() < 2 {
            continue;
        }
        let cover = random_binary_cover(&schema, &mut rng);
        let u1 = cover.components()[0];
        let u2 = cover.components()[1];
        let chase = chase_lossless(&cover, schema.fds())?.lossless;
        let criterion = binary_lossless(schema.universe(), &u1, &u2, schema.fds())?.lossless;
        if chase != criterion {
            violations.push(Violation::BinaryEquivalence {
                attributes: schema.universe().names().to_vec(),
                fds: schema.declarations().to_vec(),
                left: schema.universe().render(&u1),
                right: schema.universe().render(&u2),
                chase_lossless: chase,
                criterion_lossless: criterion,
            });
        }
    }
    Ok(AuditReport::finish("binary-lossless-equivalence", trials, params.seed, violations, started))
}

/// The embedded regression instance for the keyed-side homology collapse:
/// a three-cycle of FDs with a pendant attribute. The intersection `{A}` is
/// a key for `{A,B,C}`, yet the induced complex on the keyed side is a
/// hollow triangle while the intersection is a point.
pub fn keyed_collapse_regression_instance() -> (Schema, Vec<String>, Vec<String>) {
    let universe = AttributeUniverse::new(["A", "B", "C", "D"]).unwrap();
    let decls = vec![
        FdDeclaration { lhs: vec!["A".into()], rhs: vec!["B".into()] },
        FdDeclaration { lhs: vec!["B".into()], rhs: vec!["C".into()] },
        FdDeclaration { lhs: vec!["C".into()], rhs: vec!["A".into()] },
    ];
    let schema = Schema::new(universe, decls).unwrap();
    (
        schema,
        vec!["A".into(), "B".into(), "C".into()],
        vec!["A".into(), "D".into()],
    )
}

fn check_keyed_collapse(
    schema: &Schema,
    left_names: &[String],
    right_names: &[String],
    instance: &str,
    violations: &mut Vec<Violation>,
) -> Result<()> {
    let universe = schema.universe();
    let u1 = universe.set_of(left_names.iter().map(String::as_str))?;
    let u2 = universe.set_of(right_names.iter().map(String::as_str))?;
    let intersection = u1.intersection(&u2);
    if intersection.is_empty() {
        return Ok(());
    }
    let cover = canonical_cover(schema)?;
    let k_f = dependency_complex(&cover, universe);
    let inter_complex = k_f.induced(&intersection)?;
    if inter_complex.is_empty() {
        return Ok(());
    }
    let inter_profile = reduced_betti_profile(&inter_complex)?;
    for (side, side_names) in [(u1, left_names), (u2, right_names)] {
        if !implies(schema.fds(), &intersection, &side)? {
            continue;
        }
        let side_complex = k_f.induced(&side)?;
        if side_complex.is_empty() {
            continue;
        }
        let side_profile = reduced_betti_profile(&side_complex)?;
        let max_dim = side_profile.reduced_betti.len().max(inter_profile.reduced_betti.len());
        let mismatch = (1..max_dim).any(|n| side_profile.betti(n) != inter_profile.betti(n));
        if mismatch {
            violations.push(Violation::KeyedCollapse {
                instance: instance.to_string(),
                attributes: universe.names().to_vec(),
                fds: schema.declarations().to_vec(),
                keyed_component: side_names.to_vec(),
                intersection: universe.render(&intersection),
                keyed_profile: side_profile.reduced_betti.clone(),
                intersection_profile: inter_profile.reduced_betti.clone(),
            });
        }
    }
    Ok(())
}

/// Audits the claim that when the intersection of a binary cover keys one
/// side, inclusion of the intersection's induced complex into the keyed
/// side's induced complex preserves positive-degree homology.
///
/// The embedded regression instance is always checked first and is a known
/// counterexample, so this audit reports at least one violation: the claim
/// is empirically falsified as stated.
pub fn audit_keyed_collapse(params: &GeneratorParams, trials: usize) -> Result<AuditReport> {
    params.validate()?;
    let started = Instant::now();
    let mut violations = Vec::new();
    let (schema, left, right) = keyed_collapse_regression_instance();
    check_keyed_collapse(&schema, &left, &right, "embedded", &mut violations)?;

    let mut rng = params.rng();
    for trial in 0..trials {
        let schema = random_schema(params, &mut rng);
        if schema.universe().len() < 2 {
            continue;
        }
        let cover = random_binary_cover(&schema, &mut rng);
        let left = schema.universe().render(&cover.components()[0]);
        let right = schema.universe().render(&cover.components()[1]);
        check_keyed_collapse(&schema, &left, &right, &format!("trial-{trial}"), &mut violations)?;
    }
    Ok(AuditReport::finish("keyed-side-homology-collapse", trials, params.seed, violations, started))
}

/// Exhaustively enumerates covers (≤ `max_components` components of size
/// 2..=3 over ≤ `max_attributes` ≤ 5 attributes) and checks that GYO-acyclic
/// covers have nerves with `b₁ = 0`.
pub fn audit_nerve_gyo(bounds: &GeneratorParams) -> Result<AuditReport> {
    bounds.validate()?;
    if bounds.max_attributes > 5 || bounds.max_components > 4 {
        return Err(Error::BudgetExceeded {
            needed: bounds.max_attributes.max(bounds.max_components) as u128,
            budget: 5,
            unit: "exhaustive-enumeration bounds (≤ 5 attributes, ≤ 4 components)",
        });
    }
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut enumerated = 0usize;
    for attr_count in 2..=bounds.max_attributes {
        let universe = AttributeUniverse::new(attribute_names(attr_count))?;
        // Candidate components: subsets of size 2 or 3.
        let mut candidates = Vec::new();
        for mask in 1u32..(1 << attr_count) {
            let size = mask.count_ones();
            if size == 2 || size == 3 {
                let positions: Vec<usize> =
                    (0..attr_count).filter(|&p| mask & (1 << p) != 0).collect();
                candidates.push(universe.set_of_positions(positions)?);
            }
        }
        // All subsets of candidates with 1..=max_components members.
        let mut choice: Vec<usize> = Vec::new();
        enumerate_covers(
            &universe,
            &candidates,
            bounds.max_components,
            0,
            &mut choice,
            &mut enumerated,
            &mut violations,
        )?;
    }
    Ok(AuditReport::finish(
        "gyo-acyclic-implies-trivial-nerve",
        enumerated,
        bounds.seed,
        violations,
        started,
    ))
}

fn enumerate_covers(
    universe: &AttributeUniverse,
    candidates: &[crate::attr::AttributeSet],
    max_components: usize,
    start: usize,
    choice: &mut Vec<usize>,
    enumerated: &mut usize,
    violations: &mut Vec<Violation>,
) -> Result<()> {
    if !choice.is_empty() {
        let components: Vec<crate::attr::AttributeSet> =
            choice.iter().map(|&i| candidates[i]).collect();
        let union = components
            .iter()
            .fold(universe.empty_set(), |acc, c| acc.union(c));
        if union == universe.full_set() {
            *enumerated += 1;
            let cover = Cover::new(universe, components.clone())?;
            let acyclic = gyo_reduce(&cover).acyclic;
            let b1 = nerve_obstruction(&cover)?.b1;
            if acyclic && b1 > 0 {
                violations.push(Violation::NerveGyo {
                    attributes: universe.names().to_vec(),
                    components: components.iter().map(|c| universe.render(c)).collect(),
                    acyclic,
                    nerve_b1: b1,
                });
            }
        }
    }
    if choice.len() == max_components {
        return Ok(());
    }
    for next in start..candidates.len() {
        choice.push(next);
        enumerate_covers(universe, candidates, max_components, next + 1, choice, enumerated, violations)?;
        choice.pop();
    }
    Ok(())
}

/// Runs the exactness audit on random complexes split into two induced
/// subcomplexes that cover them. Exactness is a theorem, so any failure
/// flags an implementation bug in the homology pipeline.
pub fn audit_mv_exactness(params: &GeneratorParams, trials: usize) -> Result<AuditReport> {
    params.validate()?;
    let started = Instant::now();
    let mut rng = params.rng();
    let mut violations = Vec::new();
    for _ in 0..trials {
        let k = random_complex(params.max_attributes.max(5), 5, &mut rng);
        let faces = k.maximal_faces().to_vec();
        // Induced subcomplexes on the vertex spans of two face groups cover
        // the complex: every maximal face lands in one side or the other.
        let split = rng.random_range(1..=faces.len());
        let mut first_vertices: Vec<usize> = Vec::new();
        let mut second_vertices: Vec<usize> = Vec::new();
        for (i, face) in faces.iter().enumerate() {
            let bucket = if i < split { &mut first_vertices } else { &mut second_vertices };
            bucket.extend(face.vertices());
        }
        if second_vertices.is_empty() {
            second_vertices.extend(faces.last().unwrap().vertices());
        }
        let k1 = k.induced_on(&first_vertices)?;
        let k2 = k.induced_on(&second_vertices)?;
        if k1.is_empty() || k2.is_empty() {
            continue;
        }
        let report = mv_exactness_audit(&k1, &k2)?;
        if !report.all_hold {
            violations.push(Violation::MvExactness {
                vertex_count: k.vertex_count(),
                first_faces: k1.maximal_faces().iter().map(|f| f.vertices().to_vec()).collect(),
                second_faces: k2.maximal_faces().iter().map(|f| f.vertices().to_vec()).collect(),
                failed_checks: report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.label.clone())
                    .collect(),
            });
        }
    }
    Ok(AuditReport::finish("mv-exactness", trials, params.seed, violations, started))
}

/// Cross-checks GYO against join-tree construction on the exhaustive family:
/// the two must agree exactly. Returns disagreeing covers.
pub fn gyo_jointree_agreement(bounds: &GeneratorParams) -> Result<Vec<Violation>> {
    bounds.validate()?;
    let mut disagreements = Vec::new();
    for attr_count in 2..=bounds.max_attributes.min(5) {
        let universe = AttributeUniverse::new(attribute_names(attr_count))?;
        let mut candidates = Vec::new();
        for mask in 1u32..(1 << attr_count) {
            let size = mask.count_ones();
            if size == 2 || size == 3 {
                let positions: Vec<usize> =
                    (0..attr_count).filter(|&p| mask & (1 << p) != 0).collect();
                candidates.push(universe.set_of_positions(positions)?);
            }
        }
        let mut stack: Vec<Vec<usize>> = (0..candidates.len()).map(|i| vec![i]).collect();
        while let Some(choice) = stack.pop() {
            let components: Vec<crate::attr::AttributeSet> =
                choice.iter().map(|&i| candidates[i]).collect();
            let union = components
                .iter()
                .fold(universe.empty_set(), |acc, c| acc.union(c));
            if union == universe.full_set() {
                let cover = Cover::new(&universe, components.clone())?;
                let acyclic = gyo_reduce(&cover).acyclic;
                let has_tree = build_join_tree(&cover).is_some();
                if acyclic != has_tree {
                    disagreements.push(Violation::NerveGyo {
                        attributes: universe.names().to_vec(),
                        components: components.iter().map(|c| universe.render(c)).collect(),
                        acyclic,
                        nerve_b1: usize::from(has_tree),
                    });
                }
            }
            if choice.len() < bounds.max_components.min(4) {
                let last = *choice.last().unwrap();
                for next in last + 1..candidates.len() {
                    let mut extended = choice.clone();
                    extended.push(next);
                    stack.push(extended);
                }
            }
        }
    }
    Ok(disagreements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_under_a_seed() {
        let params = GeneratorParams::new(42);
        let mut rng_a = params.rng();
        let mut rng_b = params.rng();
        let a = random_schema(&params, &mut rng_a);
        let b = random_schema(&params, &mut rng_b);
        assert_eq!(a.universe().names(), b.universe().names());
        assert_eq!(a.declarations(), b.declarations());
        let ca = random_cover(&a, &params, &mut rng_a);
        let cb = random_cover(&b, &params, &mut rng_b);
        assert_eq!(ca.components(), cb.components());
        let da = random_database(&ca, &params, &mut rng_a);
        let db = random_database(&cb, &params, &mut rng_b);
        assert_eq!(da, db);
    }

    #[test]
    fn one_attribute_schemas_have_no_fds() {
        let params = GeneratorParams {
            max_attributes: 1,
            ..GeneratorParams::new(3)
        };
        let mut rng = params.rng();
        for _ in 0..20 {
            let schema = random_schema(&params, &mut rng);
            assert!(schema.fds().is_empty());
        }
    }

    #[test]
    fn satisfying_instances_pass_the_fd_scan() {
        let params = GeneratorParams::new(9);
        let mut rng = params.rng();
        for _ in 0..30 {
            let schema = random_schema(&params, &mut rng);
            let instance = random_satisfying_instance(&schema, 6, &mut rng);
            assert!(instance_satisfies(&instance, &schema));
        }
    }

    #[test]
    fn binary_equivalence_holds_on_a_quick_run() {
        let params = GeneratorParams {
            max_attributes: 5,
            max_fds: 5,
            ..GeneratorParams::new(7)
        };
        let report = audit_binary_equivalence(&params, 100).unwrap();
        assert_eq!(report.violations.len(), 0);
        assert!(!report.falsified());
    }

    #[test]
    fn zero_trials_give_an_empty_report() {
        let params = GeneratorParams::new(7);
        let report = audit_binary_equivalence(&params, 0).unwrap();
        assert_eq!(report.trials, 0);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn keyed_collapse_audit_finds_the_embedded_counterexample() {
        let params = GeneratorParams::new(5);
        let report = audit_keyed_collapse(&params, 0).unwrap();
        assert!(report.falsified());
        let embedded = report
            .violations
            .iter()
            .find(|v| matches!(v, Violation::KeyedCollapse { instance, .. } if instance == "embedded"))
            .expect("embedded instance is always reported");
        if let Violation::KeyedCollapse { keyed_profile, intersection_profile, .. } = embedded {
            assert_eq!(keyed_profile[1], 1);
            assert!(intersection_profile.get(1).copied().unwrap_or(0) == 0);
        }
        assert!(embedded.replay().unwrap());
    }

    #[test]
    fn nerve_gyo_audit_is_clean_at_small_bounds() {
        let bounds = GeneratorParams {
            max_attributes: 4,
            max_components: 3,
            ..GeneratorParams::new(1)
        };
        let report = audit_nerve_gyo(&bounds).unwrap();
        assert!(report.trials > 0);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn nerve_gyo_audit_rejects_oversized_bounds() {
        let bounds = GeneratorParams {
            max_attributes: 9,
            ..GeneratorParams::new(1)
        };
        assert!(audit_nerve_gyo(&bounds).unwrap_err().is_budget());
    }

    #[test]
    fn mv_audit_is_clean_on_a_quick_run() {
        let params = GeneratorParams::new(11);
        let report = audit_mv_exactness(&params, 40).unwrap();
        assert!(report.violations.is_empty());
    }

    #[test]
    fn reports_are_deterministic_for_a_fixed_seed() {
        let params = GeneratorParams::new(23);
        let a = audit_keyed_collapse(&params, 25).unwrap();
        let b = audit_keyed_collapse(&params, 25).unwrap();
        assert_eq!(a.violations, b.violations);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
