//! The tableau chase for k-way lossless-join testing.
//!
//! One row per cover component; a cell holds the distinguished symbol of its
//! column or a subscripted variable named after the row it started in.
//! Chasing an FD equates the dependent symbols of any two rows that agree on
//! the determinant; the decomposition is lossless exactly when some row
//! becomes all-distinguished.

use serde::{Deserialize, Serialize};

use crate::cover::Cover;
use crate::error::Result;
use crate::fd::FunctionalDependency;

/// A tableau cell symbol. Symbols are column-local: a `Var(i)` in column `a`
/// never interacts with symbols of other columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symbol {
    Distinguished,
    Var(usize),
}

/// The chase state: `cells[row][attribute]` over the full universe width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    cells: Vec<Vec<Symbol>>,
}

impl Tableau {
    fn initial(cover: &Cover) -> Self {
        let width = cover.universe_len();
        let cells = cover
            .components()
            .iter()
            .enumerate()
            .map(|(row, component)| {
                (0..width)
                    .map(|attr| {
                        if component.contains(attr) {
                            Symbol::Distinguished
                        } else {
                            Symbol::Var(row)
                        }
                    })
                    .collect()
            })
            .collect();
        Self { cells }
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn width(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn cell(&self, row: usize, attr: usize) -> Symbol {
        self.cells[row][attr]
    }

    pub fn row_is_distinguished(&self, row: usize) -> bool {
        self.cells[row].iter().all(|s| *s == Symbol::Distinguished)
    }

    fn distinct_symbols_in_column(&self, attr: usize) -> usize {
        let mut seen: Vec<Symbol> = Vec::new();
        for row in &self.cells {
            if !seen.contains(&row[attr]) {
                seen.push(row[attr]);
            }
        }
        seen.len()
    }

    /// Rewrites every occurrence of `loser` in `attr`'s column to `winner`.
    fn merge_column_symbols(&mut self, attr: usize, winner: Symbol, loser: Symbol) {
        for row in &mut self.cells {
            if row[attr] == loser {
                row[attr] = winner;
            }
        }
    }

    /// Cells as display strings: `*` for distinguished, `r<i>` for variables.
    pub fn render(&self) -> Vec<Vec<String>> {
        self.cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| match s {
                        Symbol::Distinguished => "*".to_string(),
                        Symbol::Var(i) => format!("r{i}"),
                    })
                    .collect()
            })
            .collect()
    }
}

/// Scheduling order for the chase; the verdict is order-independent, the
/// intermediate tableaux need not be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChaseOrder {
    /// FDs in input order, row pairs ascending.
    Standard,
    /// FDs reversed, row pairs descending.
    Reversed,
}

/// Outcome of chasing a cover to fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChaseOutcome {
    pub lossless: bool,
    pub tableau: Tableau,
    pub steps: usize,
}

/// Chases `cover` under `fds` with the standard deterministic schedule.
pub fn chase_lossless(cover: &Cover, fds: &[FunctionalDependency]) -> Result<ChaseOutcome> {
    chase_lossless_ordered(cover, fds, ChaseOrder::Standard)
}

/// Chase with an explicit schedule, used to check verdict order-independence.
pub fn chase_lossless_ordered(
    cover: &Cover,
    fds: &[FunctionalDependency],
    order: ChaseOrder,
) -> Result<ChaseOutcome> {
    for fd in fds {
        cover.components()[0].check_universe(&fd.lhs())?;
    }
    let mut tableau = Tableau::initial(cover);
    let rows = tableau.rows();
    let mut steps = 0usize;

    let fd_order: Vec<&FunctionalDependency> = match order {
        ChaseOrder::Standard => fds.iter().collect(),
        ChaseOrder::Reversed => fds.iter().rev().collect(),
    };
    let mut pairs: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (i + 1..rows).map(move |j| (i, j)))
        .collect();
    if order == ChaseOrder::Reversed {
        pairs.reverse();
    }

    loop {
        let mut changed = false;
        for fd in &fd_order {
            let lhs: Vec<usize> = fd.lhs().iter().collect();
            let rhs = fd.rhs();
            for &(i, j) in &pairs {
                let agree = lhs
                    .iter()
                    .all(|&attr| tableau.cell(i, attr) == tableau.cell(j, attr));
                if !agree {
                    continue;
                }
                let (a, b) = (tableau.cell(i, rhs), tableau.cell(j, rhs));
                if a == b {
                    continue;
                }
                let (winner, loser) = match (a, b) {
                    (Symbol::Distinguished, other) => (Symbol::Distinguished, other),
                    (other, Symbol::Distinguished) => (Symbol::Distinguished, other),
                    (Symbol::Var(x), Symbol::Var(y)) => {
                        (Symbol::Var(x.min(y)), Symbol::Var(x.max(y)))
                    }
                };
                let before = tableau.distinct_symbols_in_column(rhs);
                tableau.merge_column_symbols(rhs, winner, loser);
                debug_assert_eq!(
                    tableau.distinct_symbols_in_column(rhs),
                    before - 1,
                    "each merge removes exactly one symbol class"
                );
                steps += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    debug_assert!(
        steps <= rows.saturating_mul(tableau.width()),
        "chase steps are bounded by the total symbol count"
    );
    let lossless = (0..rows).any(|row| tableau.row_is_distinguished(row));
    Ok(ChaseOutcome {
        lossless,
        tableau,
        steps,
    })
}
