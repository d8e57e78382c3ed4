//! Full-density parallel line shuffles: every row of a strip realizes an
//! arbitrary permutation simultaneously, by odd-even transposition rounds
//! (block 2) or block-of-four sorting rounds (block 4). Each round's
//! pairwise/blockwise reorder is realized by a swap-table plan on the
//! (strip height x window) sub-grid; all sub-grids of a round run in
//! parallel and the round is padded to its longest sub-grid plan.

use crate::grid::Vertex;
use crate::shuffle::script::Script;
use crate::shuffle::swap_table::{SwapPattern, SwapTables};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockSize {
    Two,
    Four,
}

#[derive(Debug, thiserror::Error)]
pub enum ShuffleError {
    #[error("strip of {height} rows unsupported for block size {block:?}")]
    BadStripHeight { height: usize, block: BlockSize },
    #[error("{total} rows cannot be partitioned into strips for block size {block:?}")]
    UnsupportedStripPartition { total: usize, block: BlockSize },
    #[error("row {row} target is not a permutation of 0..{width}")]
    BadTargets { row: usize, width: usize },
    #[error("width {width} below minimum {min} for block size {block:?}")]
    WidthTooSmall { width: usize, min: usize, block: BlockSize },
    #[error("sorting exceeded the round budget of {budget} rounds (width {width})")]
    RoundBudgetExceeded { budget: usize, width: usize },
    #[error(transparent)]
    Table(#[from] crate::shuffle::swap_table::SwapTableError),
}

/// One round's disjoint sort windows over columns `0..m`: (start, len).
pub type Layout = Vec<(usize, usize)>;

/// Partition `total` lines into strip heights usable by `block`.
/// Block 2 strips are 3 or 4 lines tall; block 4 strips are 2 lines tall
/// with a single 3-line strip absorbing an odd remainder.
pub fn strip_heights(total: usize, block: BlockSize) -> Result<Vec<usize>, ShuffleError> {
    match block {
        BlockSize::Two => match total % 3 {
            0 => Ok(vec![3; total / 3]),
            1 if total >= 4 => {
                let mut v = vec![3; (total - 4) / 3];
                v.push(4);
                Ok(v)
            }
            2 if total >= 8 => {
                let mut v = vec![3; (total - 8) / 3];
                v.extend_from_slice(&[4, 4]);
                Ok(v)
            }
            _ => Err(ShuffleError::UnsupportedStripPartition { total, block }),
        },
        BlockSize::Four => {
            if total < 2 {
                return Err(ShuffleError::UnsupportedStripPartition { total, block });
            }
            if total % 2 == 0 {
                Ok(vec![2; total / 2])
            } else {
                let mut v = vec![2; (total - 3) / 2];
                v.push(3);
                Ok(v)
            }
        }
    }
}

fn tile_from(m: usize, offset: usize, primary: usize, fallback: usize) -> Layout {
    let mut out = Vec::new();
    let mut pos = offset;
    while m - pos >= primary {
        out.push((pos, primary));
        pos += primary;
    }
    if m - pos == fallback {
        out.push((pos, fallback));
    }
    // Any smaller tail stays passive this round.
    out
}

/// The cyclic window schedule for a strip of `height` lines sorting `m`
/// positions. Budgets: block 2 and the 3-line block-4 fallback sort within
/// `m` rounds; 2-line block-4 strips within `ceil(m/2) + 2`. Verified
/// exhaustively via the 0-1 principle for m <= 16 in the test suite.
pub fn window_schedule(m: usize, block: BlockSize, height: usize) -> Result<Vec<Layout>, ShuffleError> {
    match (block, height) {
        (BlockSize::Two, 3 | 4) => Ok(vec![
            (0..m.saturating_sub(1)).step_by(2).map(|s| (s, 2)).collect(),
            (1..m.saturating_sub(1)).step_by(2).map(|s| (s, 2)).collect(),
        ]),
        (BlockSize::Four, 2) => Ok(vec![tile_from(m, 0, 4, 3), tile_from(m, 2, 4, 3)]),
        (BlockSize::Four, 3) => Ok(vec![
            tile_from(m, 0, 3, 2),
            tile_from(m, 1, 3, 2),
            {
                let mut l = vec![(0, 2)];
                l.extend(tile_from(m, 2, 3, 2));
                l
            },
        ]),
        _ => Err(ShuffleError::BadStripHeight { height, block }),
    }
}

/// Rounds after which sorting must have completed.
pub fn round_budget(m: usize, block: BlockSize, height: usize) -> usize {
    match (block, height) {
        (BlockSize::Four, 2) => m.div_ceil(2) + 2,
        _ => m,
    }
}

fn min_width(block: BlockSize) -> usize {
    match block {
        BlockSize::Two => 2,
        BlockSize::Four => 3,
    }
}

/// Realize per-row permutations on one full-density strip, in strip-local
/// coordinates (x = strip row, y = column). `targets[r][j]` is the goal
/// column of the agent starting at column `j` of strip row `r`. Rounds are
/// simulated on the actual permutations and stop once every row is sorted.
pub fn parallel_row_shuffle_full(
    height: usize,
    width: usize,
    targets: &[Vec<usize>],
    block: BlockSize,
    tables: &SwapTables,
) -> Result<Script, ShuffleError> {
    assert_eq!(targets.len(), height, "one target permutation per strip row");
    for (r, t) in targets.iter().enumerate() {
        let mut seen = vec![false; width];
        let ok = t.len() == width && t.iter().all(|&c| c < width && !std::mem::replace(&mut seen[c], true));
        if !ok {
            return Err(ShuffleError::BadTargets { row: r, width });
        }
    }
    let mut items: Vec<Vec<usize>> = targets.to_vec();
    let sorted = |items: &Vec<Vec<usize>>| items.iter().all(|row| row.iter().enumerate().all(|(j, &v)| j == v));
    let mut script = Script::new();
    if sorted(&items) || width <= 1 {
        return Ok(script);
    }
    if width < min_width(block) {
        return Err(ShuffleError::WidthTooSmall { width, min: min_width(block), block });
    }

    let schedule = window_schedule(width, block, height)?;
    let budget = round_budget(width, block, height);
    let mut round = 0usize;
    while !sorted(&items) {
        if round >= budget {
            return Err(ShuffleError::RoundBudgetExceeded { budget, width });
        }
        let layout = &schedule[round % schedule.len()];
        let mut round_script = Script::new();
        for &(s, l) in layout {
            // Per-row in-window sort permutation.
            let mut rows_perm: Vec<Vec<u8>> = Vec::with_capacity(height);
            for row in &items {
                let window = &row[s..s + l];
                let mut order: Vec<usize> = (0..l).collect();
                order.sort_by_key(|&j| window[j]);
                // order[rank] = source position; invert to position -> rank.
                let mut perm = vec![0u8; l];
                for (rank, &src) in order.iter().enumerate() {
                    perm[src] = rank as u8;
                }
                rows_perm.push(perm);
            }
            let pattern = SwapPattern { rows_perm };
            if pattern.is_identity() {
                continue;
            }
            let table = tables.get((height, l))?;
            let sub = table.script_for(&pattern, |r, c| Vertex::new2(r as i32, (s + c) as i32))?;
            // Apply the permutation to the simulated items.
            for (r, row) in items.iter_mut().enumerate() {
                let window: Vec<usize> = row[s..s + l].to_vec();
                for (j, &v) in window.iter().enumerate() {
                    let dst = pattern.rows_perm[r][j] as usize;
                    row[s + dst] = v;
                }
            }
            let max_len = round_script.len().max(sub.len());
            round_script.pad_to(max_len);
            let mut merged = Script::new();
            for t in 0..max_len {
                let mut step = Vec::new();
                if t < round_script.len() {
                    step.extend_from_slice(&round_script.steps[t]);
                }
                if t < sub.len() {
                    step.extend_from_slice(&sub.steps[t]);
                }
                merged.push_step(step);
            }
            round_script = merged;
        }
        script.append(round_script);
        round += 1;
    }
    Ok(script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{validate_plan, GridSpec, Instance, Plan};

    fn check_strip(height: usize, width: usize, targets: Vec<Vec<usize>>, block: BlockSize) -> usize {
        let tables = SwapTables::generate_all().unwrap();
        let script = parallel_row_shuffle_full(height, width, &targets, block, &tables).unwrap();
        let grid = GridSpec::open_2d(height as i32, width as i32);
        let starts = grid.free_vertices();
        let goals: Vec<Vertex> = starts
            .iter()
            .map(|v| Vertex::new2(v.x, targets[v.x as usize][v.y as usize] as i32))
            .collect();
        let inst = Instance::new(grid.clone(), starts.clone(), goals).unwrap();
        let plan = Plan { paths: script.apply(&starts).unwrap() };
        let report = validate_plan(&grid, &inst, &plan);
        assert!(report.is_valid(), "{:?}", report.violations);
        plan.makespan()
    }

    #[test]
    fn identity_costs_nothing() {
        let tables = SwapTables::generate_all().unwrap();
        let targets = vec![(0..8).collect::<Vec<_>>(); 3];
        let script =
            parallel_row_shuffle_full(3, 8, &targets, BlockSize::Two, &tables).unwrap();
        assert!(script.is_empty());
    }

    #[test]
    fn reverse_one_row_block2_within_bound() {
        // 3-row strip, m = 8: one row fully reversed, others identity.
        let mut targets = vec![(0..8).collect::<Vec<usize>>(); 3];
        targets[1] = (0..8).rev().collect();
        let makespan = check_strip(3, 8, targets, BlockSize::Two);
        assert!(makespan <= 7 * 8, "makespan {makespan}");
    }

    #[test]
    fn all_rows_reversed_block4_within_bound() {
        // 2-row strip (block 4), m = 6, both rows reversed.
        let targets = vec![(0..6).rev().collect::<Vec<usize>>(); 2];
        let makespan = check_strip(2, 6, targets, BlockSize::Four);
        assert!(makespan <= 7 * (6usize.div_ceil(2) + 2), "makespan {makespan}");
    }

    #[test]
    fn fallback_three_row_strip_block4() {
        let targets = vec![
            (0..7).rev().collect::<Vec<usize>>(),
            vec![3, 0, 5, 1, 6, 2, 4],
            (0..7).collect(),
        ];
        let makespan = check_strip(3, 7, targets, BlockSize::Four);
        assert!(makespan <= 7 * 7, "makespan {makespan}");
    }

    #[test]
    fn strip_partitions() {
        assert_eq!(strip_heights(9, BlockSize::Two).unwrap(), vec![3, 3, 3]);
        assert_eq!(strip_heights(10, BlockSize::Two).unwrap(), vec![3, 3, 4]);
        assert_eq!(strip_heights(8, BlockSize::Two).unwrap(), vec![4, 4]);
        assert!(strip_heights(5, BlockSize::Two).is_err());
        assert_eq!(strip_heights(12, BlockSize::Four).unwrap(), vec![2; 6]);
        assert_eq!(strip_heights(9, BlockSize::Four).unwrap(), vec![2, 2, 2, 3]);
    }

    /// 0-1 principle: the window schedules sort every binary sequence within
    /// the round budget, for all lengths up to 16.
    #[test]
    fn zero_one_principle_within_budget() {
        for (block, height) in [(BlockSize::Two, 3), (BlockSize::Two, 4), (BlockSize::Four, 2), (BlockSize::Four, 3)] {
            for m in 2..=16usize {
                if m < min_width(block) {
                    continue;
                }
                let schedule = window_schedule(m, block, height).unwrap();
                let budget = round_budget(m, block, height);
                for bits in 0..(1u32 << m) {
                    let mut v: Vec<u8> = (0..m).map(|i| (bits >> i & 1) as u8).collect();
                    let mut target = v.clone();
                    target.sort();
                    let mut rounds = 0;
                    while v != target {
                        assert!(
                            rounds < budget,
                            "budget {budget} exceeded for m={m} block={block:?} h={height} bits={bits:b}"
                        );
                        for &(s, l) in &schedule[rounds % schedule.len()] {
                            v[s..s + l].sort();
                        }
                        rounds += 1;
                    }
                }
            }
        }
    }
}
