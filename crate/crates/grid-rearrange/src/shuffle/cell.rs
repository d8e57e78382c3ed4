//! Tiny per-cell reconfiguration plans. Cells are 3x3 (optionally with a
//! center obstacle) or 2x2; at most capacity-many agents move between slot
//! layouts. Plans come from exhaustive BFS and are memoized, since the same
//! handful of slot patterns recurs across thousands of cells.

use std::collections::HashMap;

use crate::grid::{GridSpec, Instance, Plan, Vertex};
use crate::oracle::{optimal_makespan_labeled, SearchLimits};
use crate::shuffle::script::Script;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    /// 3x3 cell, `true` when the center vertex is an obstacle.
    ThreeByThree { center_obstacle: bool },
    /// 2x2 cell.
    TwoByTwo,
}

impl CellKind {
    pub fn size(&self) -> i32 {
        match self {
            CellKind::ThreeByThree { .. } => 3,
            CellKind::TwoByTwo => 2,
        }
    }

    pub fn capacity(&self) -> usize {
        match self {
            CellKind::ThreeByThree { center_obstacle: false } => 3,
            CellKind::ThreeByThree { center_obstacle: true } => 2,
            CellKind::TwoByTwo => 2,
        }
    }

    fn grid(&self) -> GridSpec {
        match self {
            CellKind::ThreeByThree { center_obstacle } => {
                let obstacles = if *center_obstacle {
                    [Vertex::new2(1, 1)].into_iter().collect()
                } else {
                    Default::default()
                };
                GridSpec::new(3, 3, 1, obstacles).unwrap()
            }
            CellKind::TwoByTwo => GridSpec::open_2d(2, 2),
        }
    }
}

type Key = (CellKind, Vec<(Vertex, Vertex)>);

/// Memoizing solver for within-cell moves, in cell-local coordinates.
#[derive(Default)]
pub struct CellSolver {
    cache: HashMap<Key, Script>,
}

impl CellSolver {
    pub fn new() -> Self {
        CellSolver::default()
    }

    /// Optimal labeled micro-plan: agent at `positions[i]` must end at
    /// `targets[i]`. Local coordinates, x and y in `0..size`.
    pub fn labeled(&mut self, kind: CellKind, positions: &[Vertex], targets: &[Vertex]) -> Script {
        assert!(positions.len() <= kind.capacity());
        let mut pairs: Vec<(Vertex, Vertex)> =
            positions.iter().copied().zip(targets.iter().copied()).collect();
        pairs.sort();
        let key = (kind, pairs.clone());
        if let Some(hit) = self.cache.get(&key) {
            return hit.clone();
        }
        let grid = kind.grid();
        let starts: Vec<Vertex> = pairs.iter().map(|&(s, _)| s).collect();
        let goals: Vec<Vertex> = pairs.iter().map(|&(_, g)| g).collect();
        let inst = Instance::new(grid.clone(), starts.clone(), goals).expect("cell config valid");
        let (_, plan) = optimal_makespan_labeled(&grid, &inst, SearchLimits::default())
            .expect("cell reconfiguration solvable");
        let script = plan_to_script(&plan);
        self.cache.insert(key, script.clone());
        script
    }

    /// Optimal unlabeled micro-plan onto a slot set: tries every bijection
    /// and keeps the shortest plan (first found on ties).
    pub fn unlabeled(&mut self, kind: CellKind, positions: &[Vertex], slots: &[Vertex]) -> Script {
        assert_eq!(positions.len(), slots.len());
        let k = slots.len();
        let mut best: Option<Script> = None;
        let mut perm: Vec<usize> = (0..k).collect();
        loop {
            let targets: Vec<Vertex> = perm.iter().map(|&i| slots[i]).collect();
            let script = self.labeled(kind, positions, &targets);
            if best.as_ref().map_or(true, |b| script.len() < b.len()) {
                best = Some(script);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        best.unwrap_or_default()
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Convert a dense plan into a script of per-step moves.
pub fn plan_to_script(plan: &Plan) -> Script {
    let mut script = Script::new();
    if plan.paths.is_empty() {
        return script;
    }
    let len = plan.paths.iter().map(|p| p.len()).max().unwrap_or(0);
    for t in 1..len {
        let mut step = Vec::new();
        for p in &plan.paths {
            let a = p[(t - 1).min(p.len() - 1)];
            let b = p[t.min(p.len() - 1)];
            if a != b {
                step.push((a, b));
            }
        }
        script.push_step(step);
    }
    script
}
