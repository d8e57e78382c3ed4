//! One-third-density solver with highway shuffles: unlabeled reconfiguration
//! onto centered 3x3-cell slots, a band-granular three-phase rearrangement
//! driven by a perfect-matching decomposition over cell bands, and the
//! time-reversed unlabeled plan on the goal side. Regularly distributed
//! center obstacles are supported without degradation.

use crate::grid::{Instance, Plan, Vertex};
use crate::matching::{
    build_color_row_graph, decompose_regular_multigraph, lba_assign_matchings, lba_greedy_per_row,
    GreedyAgent, MatchingSet, Payload,
};
use crate::shuffle::cell::CellSolver;
use crate::shuffle::highway::{highway_shuffle, HighwayAgent, HighwayFinish};
use crate::shuffle::script::Script;
use crate::unlabeled::{balanced_targets, center_balanced, unlabeled_route, CellPattern, Orientation};

use super::{rebind_matchings, Algorithm, MatchingMode, PhaseTrace, PlanAssembly, SolveError};

/// Build the band-level matching set: colors are goal band-rows, rows are
/// current band-rows, padded to the design degree `d = q * cell_cols`.
/// Returns the matching set plus the slot (vertical band * q + sub-slot)
/// each matching is bound to.
pub(crate) fn band_matchings(
    classes: usize,
    q: usize,
    colors: &[usize],
    rows: &[usize],
    coords: &[i64],
    degree: usize,
    matching: MatchingMode,
) -> Result<(MatchingSet, Vec<usize>), SolveError> {
    let slot_center = |slot: usize| (3 * (slot / q) + 1) as i64;
    let mut set = match matching {
        MatchingMode::Hall => {
            let graph = build_color_row_graph(classes, colors, rows, Some(degree))?;
            decompose_regular_multigraph(&graph)?
        }
        MatchingMode::Lba => {
            // The greedy construction needs the padded multiset; build the
            // padded graph first and convert its edges.
            let graph = build_color_row_graph(classes, colors, rows, Some(degree))?;
            let agents: Vec<GreedyAgent> = graph
                .edges
                .iter()
                .map(|e| GreedyAgent {
                    color: e.left,
                    row: e.right,
                    coord: match e.payload {
                        Payload::Agent(i) => Some(coords[i]),
                        Payload::Virtual => None,
                    },
                })
                .collect();
            let slot_coords: Vec<i64> = (0..degree).map(slot_center).collect();
            let mut set = lba_greedy_per_row(classes, &agents, &slot_coords)?;
            // Greedy agents are graph-edge indices; translate payloads back.
            for m in &mut set.matchings {
                for e in m.iter_mut() {
                    if let Payload::Agent(gi) = e.payload {
                        e.payload = graph.edges[gi].payload;
                    }
                }
            }
            set
        }
    };
    let slot_of_matching: Vec<usize> = match matching {
        MatchingMode::Hall => (0..set.matchings.len()).collect(),
        MatchingMode::Lba => lba_assign_matchings(&set, |e, slot| match e.payload {
            Payload::Agent(i) => (coords[i] - slot_center(slot)).unsigned_abs(),
            Payload::Virtual => 0,
        })?,
    };
    rebind_matchings(&mut set, &slot_of_matching, |a| coords[a], slot_center);
    Ok((set, slot_of_matching))
}

/// Vertical band per agent, extracted from a bound matching set.
pub(crate) fn band_of_agents(
    n: usize,
    set: &MatchingSet,
    slot_of_matching: &[usize],
    q: usize,
) -> Vec<usize> {
    let mut band = vec![usize::MAX; n];
    for (mi, m) in set.matchings.iter().enumerate() {
        for e in m {
            if let Payload::Agent(a) = e.payload {
                band[a] = slot_of_matching[mi] / q;
            }
        }
    }
    debug_assert!(band.iter().all(|&b| b != usize::MAX));
    band
}

/// The three highway phases between centered configurations: row shuffles to
/// matched vertical bands, column shuffles sorting goal bands, row shuffles
/// settling onto the exact slots in `sigma`. Appends the phases to the
/// assembly and leaves every agent at `sigma[i]`.
pub(crate) fn highway_middle(
    assembly: &mut PlanAssembly,
    grid_dims: (i32, i32),
    z: i32,
    has_obstacles: bool,
    band_of: &[usize],
    sigma: &[Vertex],
    agent_ids: &[usize],
    phase_names: [&str; 3],
    solver: &mut CellSolver,
    final_finish: HighwayFinish,
) -> Result<(), SolveError> {
    let (m1, m2) = grid_dims;
    let (rows, cols) = (m1 / 3, m2 / 3);

    // Phase 1: per horizontal band, shuffle to the matched vertical band.
    let positions = assembly.positions();
    let mut bands: Vec<Script> = Vec::new();
    for rho in 0..rows {
        let members: Vec<usize> = agent_ids
            .iter()
            .copied()
            .filter(|&i| positions[i].z == z && positions[i].x / 3 == rho)
            .collect();
        if members.is_empty() {
            continue;
        }
        let agents: Vec<HighwayAgent> = members
            .iter()
            .map(|&i| HighwayAgent {
                position: Vertex::new2(positions[i].x - 3 * rho, positions[i].y),
                target_cell: band_of[i],
                target_slot: None,
            })
            .collect();
        let out = highway_shuffle(
            (3 * cols) as usize,
            &vec![has_obstacles; cols as usize],
            &agents,
            HighwayFinish::CenterForNextPhase,
            solver,
        )?;
        bands.push(out.script.map(|v| Vertex::new3(v.x + 3 * rho, v.y, z)));
    }
    assembly.push_script(phase_names[0], &merge_parallel(bands))?;

    // Phase 2: per vertical band, shuffle to the goal band-row.
    let positions = assembly.positions();
    let mut bands: Vec<Script> = Vec::new();
    for j in 0..cols {
        let members: Vec<usize> = agent_ids
            .iter()
            .copied()
            .filter(|&i| positions[i].z == z && positions[i].y / 3 == j)
            .collect();
        if members.is_empty() {
            continue;
        }
        let agents: Vec<HighwayAgent> = members
            .iter()
            .map(|&i| HighwayAgent {
                position: Vertex::new2(positions[i].y - 3 * j, positions[i].x),
                target_cell: (sigma[i].x / 3) as usize,
                target_slot: None,
            })
            .collect();
        let out = highway_shuffle(
            (3 * rows) as usize,
            &vec![has_obstacles; rows as usize],
            &agents,
            HighwayFinish::CenterForNextPhase,
            solver,
        )?;
        bands.push(out.script.map(|v| Vertex::new3(v.y, v.x + 3 * j, z)));
    }
    assembly.push_script(phase_names[1], &merge_parallel(bands))?;

    // Phase 3: per goal band-row, settle onto the exact slots.
    let positions = assembly.positions();
    let mut bands: Vec<Script> = Vec::new();
    for t in 0..rows {
        let members: Vec<usize> = agent_ids
            .iter()
            .copied()
            .filter(|&i| positions[i].z == z && positions[i].x / 3 == t)
            .collect();
        if members.is_empty() {
            continue;
        }
        let agents: Vec<HighwayAgent> = members
            .iter()
            .map(|&i| {
                debug_assert_eq!(sigma[i].x / 3, t, "agent reached its goal band");
                HighwayAgent {
                    position: Vertex::new2(positions[i].x - 3 * t, positions[i].y),
                    target_cell: (sigma[i].y / 3) as usize,
                    target_slot: Some(Vertex::new2(sigma[i].x - 3 * t, sigma[i].y)),
                }
            })
            .collect();
        let out = highway_shuffle(
            (3 * cols) as usize,
            &vec![has_obstacles; cols as usize],
            &agents,
            final_finish,
            solver,
        )?;
        bands.push(out.script.map(|v| Vertex::new3(v.x + 3 * t, v.y, z)));
    }
    assembly.push_script(phase_names[2], &merge_parallel(bands))?;
    Ok(())
}

pub(crate) fn merge_parallel(scripts: Vec<Script>) -> Script {
    let len = scripts.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut out = Script::new();
    for t in 0..len {
        let mut step = Vec::new();
        for s in &scripts {
            if t < s.len() {
                step.extend_from_slice(&s.steps[t]);
            }
        }
        out.push_step(step);
    }
    out
}

/// Solve an instance at up to one-third density (two-ninths with center
/// obstacles).
pub fn solve_grh(instance: &Instance, matching: MatchingMode) -> Result<(Plan, PhaseTrace), SolveError> {
    let grid = &instance.grid;
    let algorithm = Algorithm::Grh;
    if grid.is_3d() {
        return Err(SolveError::Precondition { algorithm, requirement: "a 2D grid (use the 3D entry point)".into() });
    }
    let pattern = CellPattern::grh(grid)?;
    let (rows, cols) = (pattern.cell_rows(grid), pattern.cell_cols(grid));
    if rows < 1 || cols < 1 {
        return Err(SolveError::Precondition { algorithm, requirement: "at least one full 3x3 cell".into() });
    }
    let n = instance.num_agents();
    let capacity = pattern.total_capacity(grid);
    if n > capacity {
        return Err(SolveError::Density { algorithm, n, capacity });
    }
    let q = if pattern.center_obstacles { 2 } else { 3 };
    let degree = q * cols as usize;

    let mut assembly = PlanAssembly::new(&instance.starts);
    let mut cell_solver = CellSolver::new();
    if n == 0 {
        return Ok(assembly.finish(0));
    }

    // Unlabeled reconfiguration on both sides.
    let ta_start = balanced_targets(grid, &instance.starts, &pattern, Orientation::Horizontal)?;
    let in_paths = unlabeled_route(grid, &instance.starts, &ta_start.slot_of)?;
    let ta_goal = balanced_targets(grid, &instance.goals, &pattern, Orientation::Horizontal)?;
    let out_paths = unlabeled_route(grid, &instance.goals, &ta_goal.slot_of)?;
    let sigma: Vec<Vertex> = out_paths.iter().map(|p| *p.last().unwrap()).collect();

    assembly.push_paths("unlabeled-in", &in_paths);
    let centering = center_balanced(grid, &pattern, &assembly.positions(), Orientation::Horizontal, &mut cell_solver)?;
    assembly.push_script("center-in", &centering)?;

    // Band-level matching: colors are goal band-rows.
    let positions = assembly.positions();
    let colors: Vec<usize> = sigma.iter().map(|s| (s.x / 3) as usize).collect();
    let band_rows: Vec<usize> = positions.iter().map(|p| (p.x / 3) as usize).collect();
    let coords: Vec<i64> = positions.iter().map(|p| p.y as i64).collect();
    let (set, slot_of) = band_matchings(rows as usize, q, &colors, &band_rows, &coords, degree, matching)?;
    let band_of = band_of_agents(n, &set, &slot_of, q);

    let agent_ids: Vec<usize> = (0..n).collect();
    highway_middle(
        &mut assembly,
        (grid.m1, grid.m2),
        0,
        pattern.center_obstacles,
        &band_of,
        &sigma,
        &agent_ids,
        ["rearrange-rows-1", "rearrange-cols", "rearrange-rows-2"],
        &mut cell_solver,
        HighwayFinish::ExactSlots,
    )?;
    debug_assert_eq!(assembly.positions(), sigma);

    let reversed: Vec<Vec<Vertex>> = out_paths.iter().map(|p| p.iter().rev().copied().collect()).collect();
    assembly.push_paths("unlabeled-out", &reversed);

    let (plan, trace) = assembly.finish(n);
    debug_assert!(
        trace.shuffle_span() <= (grid.m1 + 2 * grid.m2) as usize + 18,
        "shuffle span {} over bound",
        trace.shuffle_span()
    );
    Ok((plan, trace))
}
