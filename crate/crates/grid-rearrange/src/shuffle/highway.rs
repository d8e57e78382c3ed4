//! Highway shuffle: permute the agents of one 3-row band between its 3x3
//! cells. Movers split onto the top (leftward) and bottom (rightward) rows
//! in one step, travel without stopping, turn off into a reserved parking
//! spot on the middle row of their destination cell, and finally the cells
//! recenter independently.
//!
//! Everything here is band-local: row 0 is the top lane, row 1 the middle
//! (slots and parking), row 2 the bottom lane; columns run along the band.
//! Column shuffles use the same primitive through a transposed mapping.

use std::collections::HashMap;

use crate::grid::Vertex;
use crate::shuffle::cell::{CellKind, CellSolver};
use crate::shuffle::script::Script;

/// One agent of the band: where it sits, which cell it must reach, and (for
/// the final, labeled phase) the exact slot it must settle on.
#[derive(Debug, Clone, Copy)]
pub struct HighwayAgent {
    pub position: Vertex,
    pub target_cell: usize,
    pub target_slot: Option<Vertex>,
}

/// How the band must look when the shuffle ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighwayFinish {
    /// Unlabeled recenter onto each cell's middle-column slots, ready for a
    /// transposed shuffle next.
    CenterForNextPhase,
    /// Labeled settle onto each agent's `target_slot`.
    ExactSlots,
}

#[derive(Debug, Clone)]
pub struct HighwayOutcome {
    pub script: Script,
    /// Final band-local position per input agent.
    pub finals: Vec<Vertex>,
}

#[derive(Debug, thiserror::Error)]
pub enum HighwayError {
    #[error("agent at {0} is not on a middle-row slot of its cell")]
    NotOnSlot(Vertex),
    #[error("cell {0} receives {1} agents, over its capacity {2}")]
    SlotDemandExceeded(usize, usize, usize),
    #[error("target cell {0} out of range 0..{1}")]
    TargetOutOfRange(usize, usize),
    #[error("agent at {0} has no target slot for an exact-slot finish")]
    MissingTargetSlot(Vertex),
    #[error("shuffle budget exceeded: {got} steps > {budget}")]
    BudgetExceeded { got: usize, budget: usize },
}

fn cell_kind(obstacle_cells: &[bool], cell: usize) -> CellKind {
    CellKind::ThreeByThree { center_obstacle: obstacle_cells[cell] }
}

fn parking_columns(obstacle_cells: &[bool], cell: usize) -> Vec<i32> {
    let base = 3 * cell as i32;
    if obstacle_cells[cell] {
        vec![base, base + 2]
    } else {
        vec![base, base + 1, base + 2]
    }
}

/// Middle-column slots of a cell (the orientation the next, transposed
/// phase starts from).
fn vertical_slots(obstacle_cells: &[bool], cell: usize) -> Vec<Vertex> {
    let mid = 3 * cell as i32 + 1;
    if obstacle_cells[cell] {
        vec![Vertex::new2(0, mid), Vertex::new2(2, mid)]
    } else {
        vec![Vertex::new2(0, mid), Vertex::new2(1, mid), Vertex::new2(2, mid)]
    }
}

/// Run one band shuffle. `width` is the band length in columns; cells sit at
/// columns `[3c, 3c+3)`. Agents must start on middle-row slots. The result
/// stays within `width + 5` steps for a recentering finish and `width + 8`
/// for an exact-slot finish.
pub fn highway_shuffle(
    width: usize,
    obstacle_cells: &[bool],
    agents: &[HighwayAgent],
    finish: HighwayFinish,
    solver: &mut CellSolver,
) -> Result<HighwayOutcome, HighwayError> {
    let num_cells = obstacle_cells.len();
    let cell_of_col = |y: i32| (y / 3) as usize;

    // Validate starting slots and demand.
    let mut demand: Vec<Vec<usize>> = vec![Vec::new(); num_cells];
    for (i, a) in agents.iter().enumerate() {
        let v = a.position;
        let ok = v.x == 1
            && v.y >= 0
            && (v.y as usize) < 3 * num_cells
            && !(obstacle_cells[cell_of_col(v.y)] && v.y % 3 == 1);
        if !ok {
            return Err(HighwayError::NotOnSlot(v));
        }
        if a.target_cell >= num_cells {
            return Err(HighwayError::TargetOutOfRange(a.target_cell, num_cells));
        }
        demand[a.target_cell].push(i);
    }
    for (c, members) in demand.iter().enumerate() {
        let cap = cell_kind(obstacle_cells, c).capacity();
        if members.len() > cap {
            return Err(HighwayError::SlotDemandExceeded(c, members.len(), cap));
        }
    }

    // Parking assignment. Stayers keep their column; rightward arrivals take
    // the remaining columns farthest-first (rightmost), leftward arrivals
    // farthest-first in their direction (leftmost).
    let mut park_col: Vec<i32> = vec![0; agents.len()];
    for (c, members) in demand.iter().enumerate() {
        let mut taken: Vec<i32> = Vec::new();
        let mut rights: Vec<usize> = Vec::new();
        let mut lefts: Vec<usize> = Vec::new();
        for &i in members {
            let cur = cell_of_col(agents[i].position.y);
            if cur == c {
                park_col[i] = agents[i].position.y;
                taken.push(agents[i].position.y);
            } else if cur < c {
                rights.push(i);
            } else {
                lefts.push(i);
            }
        }
        let mut free: Vec<i32> = parking_columns(obstacle_cells, c)
            .into_iter()
            .filter(|col| !taken.contains(col))
            .collect();
        // Leading rightward arrival (largest start column) claims the
        // rightmost free column; symmetric for leftward.
        rights.sort_by_key(|&i| std::cmp::Reverse(agents[i].position.y));
        for &i in &rights {
            let col = free.pop().expect("capacity checked");
            park_col[i] = col;
        }
        lefts.sort_by_key(|&i| agents[i].position.y);
        for &i in &lefts {
            let col = free.remove(0);
            park_col[i] = col;
        }
    }

    // Motion: split, travel, park.
    #[derive(Clone, Copy, PartialEq)]
    enum Mode {
        Stay,
        Right,
        Left,
    }
    let mode: Vec<Mode> = agents
        .iter()
        .map(|a| {
            let cur = cell_of_col(a.position.y);
            if cur == a.target_cell {
                Mode::Stay
            } else if cur < a.target_cell {
                Mode::Right
            } else {
                Mode::Left
            }
        })
        .collect();
    let any_movers = mode.iter().any(|&m| m != Mode::Stay);
    let mut at: Vec<Vertex> = agents.iter().map(|a| a.position).collect();
    let mut script = Script::new();
    if any_movers {
        let mut step = Vec::new();
        for (i, &m) in mode.iter().enumerate() {
            let lane = match m {
                Mode::Stay => continue,
                Mode::Right => 2,
                Mode::Left => 0,
            };
            let from = at[i];
            let to = Vertex::new2(lane, from.y);
            step.push((from, to));
            at[i] = to;
        }
        script.push_step(step);
        loop {
            let mut step = Vec::new();
            for (i, &m) in mode.iter().enumerate() {
                match m {
                    Mode::Stay => {}
                    Mode::Right if at[i].x == 2 => {
                        let from = at[i];
                        let to = if from.y < park_col[i] {
                            Vertex::new2(2, from.y + 1)
                        } else {
                            Vertex::new2(1, from.y)
                        };
                        step.push((from, to));
                        at[i] = to;
                    }
                    Mode::Left if at[i].x == 0 => {
                        let from = at[i];
                        let to = if from.y > park_col[i] {
                            Vertex::new2(0, from.y - 1)
                        } else {
                            Vertex::new2(1, from.y)
                        };
                        step.push((from, to));
                        at[i] = to;
                    }
                    _ => {}
                }
            }
            if step.is_empty() {
                break;
            }
            script.push_step(step);
        }
    }

    // Per-cell finish, all cells in parallel.
    let mut by_cell: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, a) in agents.iter().enumerate() {
        by_cell.entry(a.target_cell).or_default().push(i);
    }
    let mut finish_scripts: Vec<Script> = Vec::new();
    let mut finals = at.clone();
    let mut cells: Vec<(usize, Vec<usize>)> = by_cell.into_iter().collect();
    cells.sort();
    for (c, mut members) in cells {
        members.sort_by_key(|&i| at[i]);
        let origin_y = 3 * c as i32;
        let kind = cell_kind(obstacle_cells, c);
        let positions: Vec<Vertex> = members.iter().map(|&i| Vertex::new2(at[i].x, at[i].y - origin_y)).collect();
        let sub = match finish {
            HighwayFinish::CenterForNextPhase => {
                let slots: Vec<Vertex> = vertical_slots(obstacle_cells, c)
                    .into_iter()
                    .take(members.len())
                    .map(|v| Vertex::new2(v.x, v.y - origin_y))
                    .collect();
                let already = {
                    let mut a: Vec<Vertex> = positions.clone();
                    a.sort();
                    let mut b = slots.clone();
                    b.sort();
                    a == b
                };
                if already {
                    continue;
                }
                solver.unlabeled(kind, &positions, &slots)
            }
            HighwayFinish::ExactSlots => {
                let targets: Vec<Vertex> = members
                    .iter()
                    .map(|&i| {
                        agents[i]
                            .target_slot
                            .ok_or(HighwayError::MissingTargetSlot(agents[i].position))
                            .map(|v| Vertex::new2(v.x, v.y - origin_y))
                    })
                    .collect::<Result<_, _>>()?;
                if positions == targets {
                    continue;
                }
                solver.labeled(kind, &positions, &targets)
            }
        };
        let mapped = sub.map(|v| Vertex::new2(v.x, v.y + origin_y));
        // Track finals through the cell plan.
        let cur: Vec<Vertex> = members.iter().map(|&i| at[i]).collect();
        let paths = mapped.apply(&cur).unwrap();
        for (k, &i) in members.iter().enumerate() {
            finals[i] = *paths[k].last().unwrap();
        }
        finish_scripts.push(mapped);
    }
    let finish_len = finish_scripts.iter().map(|s| s.len()).max().unwrap_or(0);
    for t in 0..finish_len {
        let mut step = Vec::new();
        for s in &finish_scripts {
            if t < s.len() {
                step.extend_from_slice(&s.steps[t]);
            }
        }
        script.push_step(step);
    }

    let budget = width
        + match finish {
            HighwayFinish::CenterForNextPhase => 5,
            HighwayFinish::ExactSlots => 8,
        };
    if script.len() > budget {
        return Err(HighwayError::BudgetExceeded { got: script.len(), budget });
    }
    Ok(HighwayOutcome { script, finals })
}
