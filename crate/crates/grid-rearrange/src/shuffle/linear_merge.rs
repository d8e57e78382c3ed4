//! Linear merge shuffle: reorder a full line of agents on a 2-row band the
//! way merge sort would. In each merge, agents of the right half that move
//! left travel on the upper row without stopping, agents of the left half
//! that move right drop to the lower row, travel, and rise into their final
//! column once the upper row has cleared. Merges of the same depth run in
//! parallel; depths are separated by a barrier.

use crate::grid::Vertex;
use crate::shuffle::script::Script;

#[derive(Debug, thiserror::Error)]
pub enum MergeError {
    #[error("agent at {0} is not on the band's first row")]
    NotOnFirstRow(Vertex),
    #[error("expected {width} agents covering the first row, got {got}")]
    NotFullRow { width: usize, got: usize },
    #[error("targets are not a permutation of 0..{0}")]
    BadTargets(usize),
    #[error("merge exceeded the makespan bound {bound} (took {got})")]
    BoundExceeded { bound: usize, got: usize },
}

/// Reorder `width` agents sitting on the band's first row; `target_cols[i]`
/// is the final column of the agent at `positions[i]`. Returns the band-local
/// script (row 0 upper, row 1 lower) and each agent's final position. The
/// makespan stays within `width + 2 * (ceil(log2 width) + 1)`.
pub fn linear_merge(
    width: usize,
    positions: &[Vertex],
    target_cols: &[usize],
) -> Result<(Script, Vec<Vertex>), MergeError> {
    assert_eq!(positions.len(), target_cols.len());
    let mut col_agent: Vec<Option<usize>> = vec![None; width];
    for (i, &p) in positions.iter().enumerate() {
        if p.x != 0 || p.y < 0 || p.y as usize >= width {
            return Err(MergeError::NotOnFirstRow(p));
        }
        if col_agent[p.y as usize].replace(i).is_some() {
            return Err(MergeError::NotFullRow { width, got: positions.len() });
        }
    }
    if positions.len() != width {
        return Err(MergeError::NotFullRow { width, got: positions.len() });
    }
    {
        let mut seen = vec![false; width];
        for &t in target_cols {
            if t >= width || std::mem::replace(&mut seen[t], true) {
                return Err(MergeError::BadTargets(width));
            }
        }
    }

    // cur[c] = target column of the agent currently at column c of row 0.
    let mut cur: Vec<usize> = (0..width)
        .map(|c| target_cols[col_agent[c].unwrap()])
        .collect();

    // Merge nodes by depth, deepest first.
    let mut merges: Vec<(usize, usize, usize, usize)> = Vec::new();
    fn collect(lo: usize, hi: usize, depth: usize, out: &mut Vec<(usize, usize, usize, usize)>) {
        if hi - lo <= 1 {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        collect(lo, mid, depth + 1, out);
        collect(mid, hi, depth + 1, out);
        out.push((lo, mid, hi, depth));
    }
    collect(0, width, 0, &mut merges);
    merges.sort_by_key(|&(lo, _, _, d)| (std::cmp::Reverse(d), lo));

    let mut script = Script::new();
    let mut at_depth = usize::MAX;
    let mut level_steps: Vec<Vec<(Vertex, Vertex)>> = Vec::new();
    let mut flush = |script: &mut Script, level_steps: &mut Vec<Vec<(Vertex, Vertex)>>| {
        for step in level_steps.drain(..) {
            script.push_step(step);
        }
    };
    for &(lo, mid, hi, depth) in &merges {
        if depth != at_depth {
            flush(&mut script, &mut level_steps);
            at_depth = depth;
        }
        // Final column per current column within [lo, hi).
        let mut order: Vec<usize> = (lo..hi).collect();
        order.sort_by_key(|&c| cur[c]);
        let mut final_of: Vec<usize> = vec![0; hi - lo];
        for (rank, &c) in order.iter().enumerate() {
            final_of[c - lo] = lo + rank;
        }
        // Left-row clearance: the last time each column of row 0 is crossed
        // by a leftward mover.
        let mut clear: Vec<usize> = vec![0; width];
        for c in mid..hi {
            let f = final_of[c - lo];
            if f < c {
                for y in f + 1..c {
                    clear[y] = clear[y].max(c - y);
                }
            }
        }
        let mut duration = 0usize;
        // Emit moves: (time, from, to) gathered then bucketed.
        let mut timed: Vec<(usize, Vertex, Vertex)> = Vec::new();
        for c in lo..hi {
            let f = final_of[c - lo];
            if f == c {
                continue;
            }
            if c < mid {
                debug_assert!(f > c, "left half only moves right");
                timed.push((1, Vertex::new2(0, c as i32), Vertex::new2(1, c as i32)));
                for (k, y) in (c..f).enumerate() {
                    timed.push((2 + k, Vertex::new2(1, y as i32), Vertex::new2(1, y as i32 + 1)));
                }
                let arrive = 1 + (f - c);
                let rise = (arrive + 1).max(clear[f] + 1);
                timed.push((rise, Vertex::new2(1, f as i32), Vertex::new2(0, f as i32)));
                duration = duration.max(rise);
            } else {
                debug_assert!(f < c, "right half only moves left");
                for (k, y) in (f + 1..=c).rev().enumerate() {
                    timed.push((1 + k, Vertex::new2(0, y as i32), Vertex::new2(0, y as i32 - 1)));
                }
                duration = duration.max(c - f);
            }
        }
        let base = level_steps.len().max(0);
        let _ = base;
        while level_steps.len() < duration {
            level_steps.push(Vec::new());
        }
        for (t, from, to) in timed {
            level_steps[t - 1].push((from, to));
        }
        // Apply the merge to the simulated arrangement.
        let olds: Vec<usize> = cur[lo..hi].to_vec();
        for (j, &v) in olds.iter().enumerate() {
            cur[final_of[j]] = v;
        }
    }
    flush(&mut script, &mut level_steps);
    debug_assert!(cur.iter().enumerate().all(|(c, &v)| c == v));

    let bound = if width <= 1 {
        0
    } else {
        width + 2 * ((usize::BITS - (width - 1).leading_zeros()) as usize + 1)
    };
    if script.len() > bound {
        return Err(MergeError::BoundExceeded { bound, got: script.len() });
    }
    let finals: Vec<Vertex> = target_cols.iter().map(|&t| Vertex::new2(0, t as i32)).collect();
    Ok((script, finals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{validate_plan, GridSpec, Instance, Plan};

    fn run(width: usize, perm: Vec<usize>) -> usize {
        let positions: Vec<Vertex> = (0..width).map(|c| Vertex::new2(0, c as i32)).collect();
        let (script, finals) = linear_merge(width, &positions, &perm).unwrap();
        let grid = GridSpec::open_2d(2, width as i32);
        let paths = script.apply(&positions).unwrap();
        let inst = Instance::new(grid.clone(), positions, finals.clone()).unwrap();
        let mut plan = Plan { paths };
        plan.normalize();
        let report = validate_plan(&grid, &inst, &plan);
        assert!(report.is_valid(), "perm {perm:?}: {:?}", report.violations);
        for (p, f) in plan.paths.iter().zip(&finals) {
            assert_eq!(p.last().unwrap(), f);
        }
        plan.makespan()
    }

    fn bound(m: usize) -> usize {
        m + 2 * ((usize::BITS - (m - 1).leading_zeros()) as usize + 1)
    }

    #[test]
    fn identity_is_empty() {
        let makespan = run(8, (0..8).collect());
        assert_eq!(makespan, 0);
    }

    #[test]
    fn full_reversal_m8_within_bound() {
        let makespan = run(8, (0..8).rev().collect());
        assert!(makespan <= 16, "makespan {makespan}");
    }

    #[test]
    fn m4_sample_permutation() {
        // Agents at columns 0..3 head to columns (1, 3, 0, 2).
        let makespan = run(4, vec![1, 3, 0, 2]);
        assert!(makespan <= 10, "makespan {makespan}");
    }

    #[test]
    fn exhaustive_small_permutations_within_bound() {
        fn heap_perms(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(arr.clone());
                return;
            }
            for i in 0..k {
                heap_perms(k - 1, arr, out);
                if k % 2 == 0 {
                    arr.swap(i, k - 1);
                } else {
                    arr.swap(0, k - 1);
                }
            }
        }
        for m in 2..=6usize {
            let mut arr: Vec<usize> = (0..m).collect();
            let mut all = Vec::new();
            heap_perms(m, &mut arr, &mut all);
            for perm in all {
                let makespan = run(m, perm);
                assert!(makespan <= bound(m));
            }
        }
    }

    #[test]
    fn random_permutations_larger_bands() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for &m in &[8usize, 12, 16, 18, 24, 32] {
            for _ in 0..30 {
                let mut perm: Vec<usize> = (0..m).collect();
                perm.shuffle(&mut rng);
                let makespan = run(m, perm);
                assert!(makespan <= bound(m), "m={m} makespan {makespan} bound {}", bound(m));
            }
        }
    }

    #[test]
    fn lane_order_never_flips() {
        // No overtaking: two agents sharing a row across consecutive steps
        // keep their relative column order.
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for &width in &[8usize, 11, 16] {
            for _ in 0..20 {
                let mut perm: Vec<usize> = (0..width).collect();
                perm.shuffle(&mut rng);
                let positions: Vec<Vertex> =
                    (0..width).map(|c| Vertex::new2(0, c as i32)).collect();
                let (script, _) = linear_merge(width, &positions, &perm).unwrap();
                let paths = script.apply(&positions).unwrap();
                let len = paths[0].len();
                for t in 1..len {
                    for i in 0..width {
                        for j in i + 1..width {
                            let (a0, b0) = (paths[i][t - 1], paths[j][t - 1]);
                            let (a1, b1) = (paths[i][t], paths[j][t]);
                            if a0.x == b0.x && a1.x == b1.x && a0.x == a1.x {
                                assert_eq!(
                                    (a0.y < b0.y),
                                    (a1.y < b1.y),
                                    "agents {i},{j} swapped order on row {} at t={t}",
                                    a0.x
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn not_on_first_row_is_an_error() {
        let positions = vec![Vertex::new2(1, 0), Vertex::new2(0, 1)];
        let err = linear_merge(2, &positions, &[0, 1]);
        assert!(matches!(err, Err(MergeError::NotOnFirstRow(_))));
    }
}
