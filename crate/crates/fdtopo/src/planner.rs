//! Semijoin-reduction plans over a join tree and their execution, with
//! exact cardinality accounting.

use serde::{Deserialize, Serialize};

use crate::attr::AttributeSet;
use crate::error::{Error, Result};
use crate::jointree::JoinTree;
use crate::relation::{natural_join, semijoin, Database, RelationInstance};

/// One semijoin filter: `target ⋉_separator source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemijoinStep {
    pub target: usize,
    pub source: usize,
    pub separator: AttributeSet,
}

/// Which reduction passes a plan performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionPasses {
    /// One pass along the tree away from the root: each component is
    /// filtered by its already-filtered parent.
    BottomUp,
    /// Two passes: leaves-to-root (each parent filtered by its reduced
    /// children, post-order) and then the root-to-leaves pass. Leaves no
    /// dangling tuples on any instance.
    FullReducer,
}

/// A reduction-step list plus a root-directed join order over a join tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinPlan {
    pub tree: JoinTree,
    pub root: usize,
    pub passes: ReductionPasses,
    pub reduction: Vec<SemijoinStep>,
    /// Pre-order from the root; each component is tree-adjacent to the
    /// already-joined prefix.
    pub join_order: Vec<usize>,
}

/// Rooted view of the tree: `children[u]` ascending, `parent[u]` with the
/// connecting separator.
struct Rooted {
    parent: Vec<Option<(usize, AttributeSet)>>,
    children: Vec<Vec<usize>>,
    pre_order: Vec<usize>,
    post_order: Vec<usize>,
}

fn root_tree(tree: &JoinTree, root: usize) -> Rooted {
    let adjacency = tree.adjacency();
    let n = tree.node_count();
    let mut parent: Vec<Option<(usize, AttributeSet)>> = vec![None; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut pre_order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut stack = vec![root];
    visited[root] = true;
    while let Some(u) = stack.pop() {
        pre_order.push(u);
        // Push descending so ascending children are visited first.
        let mut kids: Vec<usize> = adjacency[u]
            .iter()
            .map(|&(v, _)| v)
            .filter(|&v| !visited[v])
            .collect();
        kids.sort_unstable();
        for &v in &kids {
            visited[v] = true;
            parent[v] = Some((u, tree.separator(u, v).expect("adjacent in tree")));
            children[u].push(v);
        }
        for &v in kids.iter().rev() {
            stack.push(v);
        }
    }
    // Post-order: children (ascending) before their parent.
    fn visit(u: usize, children: &[Vec<usize>], out: &mut Vec<usize>) {
        for &c in &children[u] {
            visit(c, children, out);
        }
        out.push(u);
    }
    let mut post_order = Vec::with_capacity(n);
    visit(root, &children, &mut post_order);
    Rooted {
        parent,
        children,
        pre_order,
        post_order,
    }
}

/// Builds a reduction plan over a verified join tree.
pub fn yannakakis_plan(
    tree: &JoinTree,
    root: usize,
    passes: ReductionPasses,
) -> Result<JoinPlan> {
    if root >= tree.node_count() {
        return Err(Error::invalid(format!(
            "root {} is outside the tree's {} nodes",
            root,
            tree.node_count()
        )));
    }
    let rooted = root_tree(tree, root);
    let mut reduction = Vec::new();

    if passes == ReductionPasses::FullReducer {
        // Leaves-to-root: each parent absorbs filters from its reduced
        // children.
        for &u in &rooted.post_order {
            for &child in &rooted.children[u] {
                let separator = tree.separator(u, child).expect("adjacent in tree");
                reduction.push(SemijoinStep {
                    target: u,
                    source: child,
                    separator,
                });
            }
        }
    }

    // Root-to-leaves: every non-root component filtered by its parent.
    for &u in &rooted.pre_order {
        if let Some((parent, separator)) = rooted.parent[u].clone() {
            reduction.push(SemijoinStep {
                target: u,
                source: parent,
                separator,
            });
        }
    }

    Ok(JoinPlan {
        tree: tree.clone(),
        root,
        passes,
        reduction,
        join_order: rooted.pre_order,
    })
}

/// Exact per-step cardinalities of one plan execution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemijoinStepCost {
    pub target: usize,
    pub source: usize,
    pub input: usize,
    pub output: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinStepCost {
    pub joined: usize,
    pub left: usize,
    pub right: usize,
    pub output: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CostReport {
    pub reduction: Vec<SemijoinStepCost>,
    pub joins: Vec<JoinStepCost>,
    /// Largest accumulated relation during the join phase.
    pub peak_intermediate: usize,
    /// Sum of all recorded step inputs and outputs.
    pub total_tuples_touched: usize,
}

/// Runs the plan against a database with one instance per component, in
/// component order. The result always equals the naive join of the same
/// database; the point of the plan is the cardinality profile.
pub fn execute_plan(plan: &JoinPlan, db: &Database) -> Result<(RelationInstance, CostReport)> {
    if db.len() != plan.tree.node_count() {
        return Err(Error::invalid(format!(
            "plan covers {} components but the database has {} relations",
            plan.tree.node_count(),
            db.len()
        )));
    }
    for edge in plan.tree.edges() {
        let shared = db.relations()[edge.a]
            .attrs()
            .intersection(&db.relations()[edge.b].attrs());
        if edge.separator != shared {
            return Err(Error::invalid(format!(
                "database attributes disagree with the plan's separator on edge ({}, {})",
                edge.a + 1,
                edge.b + 1
            )));
        }
    }

    let mut relations: Vec<RelationInstance> = db.relations().to_vec();
    let mut reduction_costs = Vec::with_capacity(plan.reduction.len());
    let mut touched = 0usize;
    for step in &plan.reduction {
        let input = relations[step.target].len();
        let filtered = semijoin(
            &relations[step.target],
            &relations[step.source],
            &step.separator,
        )?;
        let output = filtered.len();
        relations[step.target] = filtered;
        touched += input + output;
        reduction_costs.push(SemijoinStepCost {
            target: step.target,
            source: step.source,
            input,
            output,
        });
    }

    let mut acc = relations[plan.join_order[0]].clone();
    let mut peak = acc.len();
    let mut join_costs = Vec::new();
    for &next in &plan.join_order[1..] {
        let left = acc.len();
        let right = relations[next].len();
        acc = natural_join(&acc, &relations[next])?;
        let output = acc.len();
        peak = peak.max(output);
        touched += left + right + output;
        join_costs.push(JoinStepCost {
            joined: next,
            left,
            right,
            output,
        });
    }

    let result = RelationInstance::new("result", acc.attrs(), acc.tuples().iter().cloned())?;
    Ok((
        result,
        CostReport {
            reduction: reduction_costs,
            joins: join_costs,
            peak_intermediate: peak,
            total_tuples_touched: touched,
        },
    ))
}

/// Left-fold natural join of the whole database, in database order.
pub fn naive_join(db: &Database) -> Result<RelationInstance> {
    let (head, rest) = db
        .relations()
        .split_first()
        .ok_or_else(|| Error::invalid("cannot join an empty database"))?;
    let mut acc = head.clone();
    for relation in rest {
        acc = natural_join(&acc, relation)?;
    }
    RelationInstance::new("result", acc.attrs(), acc.tuples().iter().cloned())
}

/// Accumulated cardinalities of the naive left fold, for cost comparisons.
pub fn naive_join_peak(db: &Database) -> Result<usize> {
    let (head, rest) = db
        .relations()
        .split_first()
        .ok_or_else(|| Error::invalid("cannot join an empty database"))?;
    let mut acc = head.clone();
    let mut peak = acc.len();
    for relation in rest {
        acc = natural_join(&acc, relation)?;
        peak = peak.max(acc.len());
    }
    Ok(peak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::attr::AttributeUniverse;
    use crate::cover::Cover;
    use crate::jointree::build_join_tree;

    fn two_node_setup() -> (AttributeUniverse, Cover, JoinTree) {
        let u = AttributeUniverse::new(["A", "B", "C"]).unwrap();
        let cover = Cover::new(
            &u,
            vec![u.set_of(["A", "B"]).unwrap(), u.set_of(["B", "C"]).unwrap()],
        )
        .unwrap();
        let tree = build_join_tree(&cover).unwrap();
        (u, cover, tree)
    }

    fn db(u: &AttributeUniverse, specs: &[(&str, &[&str], &[&[&str]])]) -> Database {
        Database::new(
            specs
                .iter()
                .map(|(name, attrs, rows)| {
                    RelationInstance::new(
                        *name,
                        u.set_of(attrs.iter().copied()).unwrap(),
                        rows.iter()
                            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                    )
                    .unwrap()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn two_node_bottom_up_filters_the_child_by_the_root() {
        let (_, _, tree) = two_node_setup();
        let plan = yannakakis_plan(&tree, 0, ReductionPasses::BottomUp).unwrap();
        assert_eq!(plan.join_order, vec![0, 1]);
        assert_eq!(plan.reduction.len(), 1);
        assert_eq!((plan.reduction[0].target, plan.reduction[0].source), (1, 0));
    }

    #[test]
    fn single_node_tree_has_an_empty_reduction() {
        let u = AttributeUniverse::new(["A"]).unwrap();
        let cover = Cover::new(&u, vec![u.full_set()]).unwrap();
        let tree = build_join_tree(&cover).unwrap();
        let plan = yannakakis_plan(&tree, 0, ReductionPasses::FullReducer).unwrap();
        assert!(plan.reduction.is_empty());
        assert_eq!(plan.join_order, vec![0]);

        let database = db(&u, &[("R1", &["A"], &[&["1"], &["2"]])]);
        let (result, cost) = execute_plan(&plan, &database).unwrap();
        assert_eq!(result.tuples(), naive_join(&database).unwrap().tuples());
        assert_eq!(cost.peak_intermediate, 2);
    }

    #[test]
    fn invalid_root_is_rejected() {
        let (_, _, tree) = two_node_setup();
        assert!(yannakakis_plan(&tree, 5, ReductionPasses::BottomUp).is_err());
    }

    #[test]
    fn execution_matches_naive_join_and_counts_cards() {
        let (u, _, tree) = two_node_setup();
        let plan = yannakakis_plan(&tree, 0, ReductionPasses::FullReducer).unwrap();
        let database = db(
            &u,
            &[
                ("R1", &["A", "B"], &[&["1", "b1"], &["2", "b9"]]),
                ("R2", &["B", "C"], &[&["b1", "c"], &["b7", "c"]]),
            ],
        );
        let (result, cost) = execute_plan(&plan, &database).unwrap();
        let naive = naive_join(&database).unwrap();
        assert_eq!(result.tuples(), naive.tuples());
        assert_eq!(result.attrs(), naive.attrs());
        assert_eq!(result.len(), 1);
        // Full reduction drops both dangling tuples before the join.
        assert!(cost.reduction.iter().all(|s| s.output <= s.input));
        assert_eq!(cost.peak_intermediate, 1);
        assert!(cost.peak_intermediate <= naive_join_peak(&database).unwrap());
    }

    #[test]
    fn empty_relation_under_full_reducer_empties_everything() {
        let (u, _, tree) = two_node_setup();
        let plan = yannakakis_plan(&tree, 0, ReductionPasses::FullReducer).unwrap();
        let database = db(
            &u,
            &[
                ("R1", &["A", "B"], &[&["1", "b1"]]),
                ("R2", &["B", "C"], &[]),
            ],
        );
        let (result, _) = execute_plan(&plan, &database).unwrap();
        assert!(result.is_empty());
    }

    #[test]
    fn database_shape_is_validated() {
        let (u, _, tree) = two_node_setup();
        let plan = yannakakis_plan(&tree, 0, ReductionPasses::BottomUp).unwrap();
        let wrong_len = db(&u, &[("R1", &["A", "B"], &[])]);
        assert!(execute_plan(&plan, &wrong_len).is_err());
        let wrong_attrs = db(
            &u,
            &[("R1", &["A", "B"], &[]), ("R2", &["A", "C"], &[])],
        );
        assert!(execute_plan(&plan, &wrong_attrs).is_err());
    }
}
