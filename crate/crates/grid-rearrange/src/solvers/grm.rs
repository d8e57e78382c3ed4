//! Full-density solver: three rounds of simultaneous line shuffles driven by
//! a perfect-matching decomposition, with colors taken as goal rows. Phase 1
//! permutes every row to place each agent in its matched column, phase 2
//! sorts every column by color, phase 3 fixes labels within rows.

use std::collections::HashSet;

use crate::grid::{Instance, Plan, Vertex};
use crate::matching::{
    build_color_row_graph, decompose_regular_multigraph, lba_assign_matchings, lba_greedy_per_row,
    GreedyAgent, Payload,
};
use crate::shuffle::rowsort::{parallel_row_shuffle_full, strip_heights, BlockSize};
use crate::shuffle::script::Script;

use super::{rebind_matchings, shared_tables, Algorithm, MatchingMode, PhaseTrace, PlanAssembly, SolveError};

/// Sub-grid family used for the odd-even shuffles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrmVariant {
    /// Pairwise swaps on 3x2 / 4x2 sub-grids; plans within 7(m1 + 2m2) + 24.
    Block2,
    /// Blocks of four on 2x4 / 2x3 / 3x3 sub-grids; within 4(m1 + 2m2) + 24.
    Block4,
}

impl GrmVariant {
    fn block(self) -> BlockSize {
        match self {
            GrmVariant::Block2 => BlockSize::Two,
            GrmVariant::Block4 => BlockSize::Four,
        }
    }

    fn algorithm(self) -> Algorithm {
        match self {
            GrmVariant::Block2 => Algorithm::Grm2,
            GrmVariant::Block4 => Algorithm::Grm4,
        }
    }
}

/// One parallel shuffle phase: all lines permute simultaneously.
/// `horizontal` sorts rows (lines indexed by x, positions along y);
/// otherwise columns. `target_of` maps an agent to its target position
/// along the sorted direction.
fn shuffle_phase(
    lines: i32,
    width: i32,
    horizontal: bool,
    positions: &[Vertex],
    target_of: &dyn Fn(usize) -> i32,
    block: BlockSize,
) -> Result<Script, SolveError> {
    let tables = shared_tables()?;
    let heights = strip_heights(lines as usize, block)?;
    let mut line_targets: Vec<Vec<usize>> = vec![vec![usize::MAX; width as usize]; lines as usize];
    for (i, &v) in positions.iter().enumerate() {
        let (line, pos) = if horizontal { (v.x, v.y) } else { (v.y, v.x) };
        line_targets[line as usize][pos as usize] = target_of(i) as usize;
    }
    let mut bands: Vec<Script> = Vec::new();
    let mut x0 = 0usize;
    for h in heights {
        let targets: Vec<Vec<usize>> = line_targets[x0..x0 + h].to_vec();
        let local = parallel_row_shuffle_full(h, width as usize, &targets, block, tables)?;
        let mapped = if horizontal {
            local.map(|v| Vertex::new2(v.x + x0 as i32, v.y))
        } else {
            local.map(|v| Vertex::new2(v.y, v.x + x0 as i32))
        };
        bands.push(mapped);
        x0 += h;
    }
    let len = bands.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut out = Script::new();
    for t in 0..len {
        let mut step = Vec::new();
        for b in &bands {
            if t < b.len() {
                step.extend_from_slice(&b.steps[t]);
            }
        }
        out.push_step(step);
    }
    Ok(out)
}

/// Solve a full-density instance (missing agents are filled with virtual
/// stand-ins that start and end in place and are stripped from the output).
pub fn solve_grm(
    instance: &Instance,
    variant: GrmVariant,
    matching: MatchingMode,
) -> Result<(Plan, PhaseTrace), SolveError> {
    let grid = &instance.grid;
    let algorithm = variant.algorithm();
    if !grid.obstacles.is_empty() {
        return Err(SolveError::Precondition { algorithm, requirement: "an obstacle-free grid".into() });
    }
    if grid.is_3d() {
        return Err(SolveError::Precondition { algorithm, requirement: "a 2D grid (use the 3D entry point)".into() });
    }
    let (m1, m2) = (grid.m1, grid.m2);
    if m1 < m2 || m2 < 3 {
        return Err(SolveError::Precondition { algorithm, requirement: "m1 >= m2 >= 3".into() });
    }
    // Strip partitions must exist in both orientations; this is what rules
    // out dimension 5 for block 2.
    strip_heights(m1 as usize, variant.block())?;
    strip_heights(m2 as usize, variant.block())?;

    // Fill free vertices with virtual agents resting at their spot.
    let n_real = instance.num_agents();
    let mut starts = instance.starts.clone();
    let mut goals = instance.goals.clone();
    let used: HashSet<Vertex> = starts.iter().copied().collect();
    let used_goals: HashSet<Vertex> = goals.iter().copied().collect();
    for v in grid.free_vertices() {
        if !used.contains(&v) {
            starts.push(v);
        }
    }
    for v in grid.free_vertices() {
        if !used_goals.contains(&v) {
            goals.push(v);
        }
    }
    let n = starts.len();
    debug_assert_eq!(n, grid.vertex_count());

    // Colors are goal rows; the multigraph pairs them with start rows.
    let colors: Vec<usize> = goals.iter().map(|g| g.x as usize).collect();
    let rows: Vec<usize> = starts.iter().map(|s| s.x as usize).collect();
    let set = match matching {
        MatchingMode::Hall => {
            let graph = build_color_row_graph(m1 as usize, &colors, &rows, Some(m2 as usize))?;
            decompose_regular_multigraph(&graph)?
        }
        MatchingMode::Lba => {
            let agents: Vec<GreedyAgent> = (0..n)
                .map(|i| GreedyAgent { color: colors[i], row: rows[i], coord: Some(starts[i].y as i64) })
                .collect();
            let slot_coords: Vec<i64> = (0..m2 as i64).collect();
            lba_greedy_per_row(m1 as usize, &agents, &slot_coords)?
        }
    };
    let mut set = set;
    let column_of: Vec<usize> = match matching {
        MatchingMode::Hall => (0..set.matchings.len()).collect(),
        MatchingMode::Lba => {
            lba_assign_matchings(&set, |e, slot| match e.payload {
                Payload::Agent(i) => (starts[i].y as i64 - slot as i64).unsigned_abs(),
                Payload::Virtual => 0,
            })?
        }
    };
    rebind_matchings(&mut set, &column_of, |a| starts[a].y as i64, |s| s as i64);

    // Matched column per agent.
    let mut col_of_agent: Vec<i32> = vec![-1; n];
    for (mi, m) in set.matchings.iter().enumerate() {
        for e in m {
            if let Payload::Agent(a) = e.payload {
                col_of_agent[a] = column_of[mi] as i32;
            }
        }
    }
    debug_assert!(col_of_agent.iter().all(|&c| c >= 0));

    let mut assembly = PlanAssembly::new(&starts);
    let pos1 = assembly.positions();
    let phase1 = shuffle_phase(m1, m2, true, &pos1, &|i| col_of_agent[i], variant.block())?;
    assembly.push_script("rearrange-rows-1", &phase1)?;
    let pos2 = assembly.positions();
    let phase2 = shuffle_phase(m2, m1, false, &pos2, &|i| goals[i].x, variant.block())?;
    assembly.push_script("rearrange-cols", &phase2)?;
    let pos3 = assembly.positions();
    let phase3 = shuffle_phase(m1, m2, true, &pos3, &|i| goals[i].y, variant.block())?;
    assembly.push_script("rearrange-rows-2", &phase3)?;
    debug_assert_eq!(assembly.positions(), goals);

    let (plan, trace) = assembly.finish(n_real);
    let bound = match variant {
        GrmVariant::Block2 => 7 * (m1 + 2 * m2) as usize + 24,
        GrmVariant::Block4 => 4 * (m1 + 2 * m2) as usize + 24,
    };
    debug_assert!(plan.makespan() <= bound, "makespan {} over bound {bound}", plan.makespan());
    Ok((plan, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{compute_metrics, validate_plan, GridSpec};
    use rand::prelude::*;

    fn random_full_instance(m1: i32, m2: i32, seed: u64) -> Instance {
        let grid = GridSpec::open_2d(m1, m2);
        let starts = grid.free_vertices();
        let mut goals = starts.clone();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        goals.shuffle(&mut rng);
        Instance::new(grid, starts, goals).unwrap()
    }

    #[test]
    fn identity_instance_is_free() {
        let grid = GridSpec::open_2d(6, 4);
        let starts = grid.free_vertices();
        let inst = Instance::new(grid, starts.clone(), starts).unwrap();
        for variant in [GrmVariant::Block2, GrmVariant::Block4] {
            let (plan, _) = solve_grm(&inst, variant, MatchingMode::Hall).unwrap();
            assert_eq!(plan.makespan(), 0);
        }
    }

    #[test]
    fn random_small_full_grids_validate() {
        for seed in 0..4 {
            let inst = random_full_instance(6, 4, seed);
            for variant in [GrmVariant::Block2, GrmVariant::Block4] {
                for matching in [MatchingMode::Hall, MatchingMode::Lba] {
                    let (plan, trace) = solve_grm(&inst, variant, matching).unwrap();
                    let report = validate_plan(&inst.grid, &inst, &plan);
                    assert!(report.is_valid(), "seed {seed} {variant:?} {matching:?}: {:?}", &report.violations[..report.violations.len().min(4)]);
                    let metrics = compute_metrics(&inst, &plan);
                    assert!(metrics.makespan <= 7 * (6 + 8) + 24);
                    // Trace concatenation reproduces the plan.
                    let mut joined: Option<Plan> = None;
                    for phase in &trace.phases {
                        match &mut joined {
                            None => joined = Some(phase.plan.clone()),
                            Some(p) => p.concat(&phase.plan),
                        }
                    }
                    if let Some(mut joined) = joined {
                        joined.trim_trailing_rests();
                        let mut original = plan.clone();
                        original.trim_trailing_rests();
                        assert_eq!(joined, original);
                    }
                }
            }
        }
    }

    #[test]
    fn twelve_by_nine_block4_within_bound() {
        let inst = random_full_instance(12, 9, 42);
        let (plan, _) = solve_grm(&inst, GrmVariant::Block4, MatchingMode::Hall).unwrap();
        assert!(validate_plan(&inst.grid, &inst, &plan).is_valid());
        let bound = 4 * (12 + 18) + 24;
        assert!(plan.makespan() <= bound, "makespan {} > {bound}", plan.makespan());
    }

    #[test]
    fn sub_full_density_strips_virtual_agents() {
        let grid = GridSpec::open_2d(6, 4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut free = grid.free_vertices();
        free.shuffle(&mut rng);
        let starts = free[..12].to_vec();
        free.shuffle(&mut rng);
        let goals = free[..12].to_vec();
        let inst = Instance::new(grid, starts, goals).unwrap();
        let (plan, _) = solve_grm(&inst, GrmVariant::Block2, MatchingMode::Hall).unwrap();
        assert_eq!(plan.num_agents(), 12);
        assert!(validate_plan(&inst.grid, &inst, &plan).is_valid());
    }

    #[test]
    fn dimension_five_block2_is_rejected() {
        let inst = random_full_instance(5, 5, 1);
        assert!(matches!(
            solve_grm(&inst, GrmVariant::Block2, MatchingMode::Hall),
            Err(SolveError::Shuffle(_))
        ));
        // Block 4 handles 5 = 2 + 3.
        let (plan, _) = solve_grm(&inst, GrmVariant::Block4, MatchingMode::Hall).unwrap();
        assert!(validate_plan(&inst.grid, &inst, &plan).is_valid());
    }
}
