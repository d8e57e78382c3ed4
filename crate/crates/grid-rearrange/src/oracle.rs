//! Exhaustive optimal solvers for tiny instances. Breadth-first search over
//! joint states, with synchronous move generation matching the feasibility
//! rules: at full density only disjoint cycle rotations can move anything,
//! below full density each agent rests or steps with conflict pruning.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::grid::{GridSpec, Instance, Plan, Vertex};

/// Hard caps for the exhaustive searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    pub max_states: usize,
    pub max_depth: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_states: 5_000_000, max_depth: 512 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("state space too large: ~{estimate} states exceeds limit {limit}")]
    TooLarge { estimate: u128, limit: usize },
    #[error("search exceeded {0} expanded states")]
    StateBudgetExceeded(usize),
    #[error("no solution within depth {0}")]
    DepthExceeded(usize),
    #[error("instance is unsolvable")]
    Unsolvable,
    #[error("source/target counts differ ({0} vs {1})")]
    CountMismatch(usize, usize),
}

fn falling_factorial(free: usize, n: usize) -> u128 {
    let mut est: u128 = 1;
    for k in 0..n {
        est = est.saturating_mul((free - k) as u128);
        if est > u128::MAX / 2 {
            return est;
        }
    }
    est
}

/// All simple cycles of the free-vertex graph, each listed once as a vertex
/// sequence in canonical form. Orientation is applied separately.
pub(crate) fn enumerate_simple_cycles(grid: &GridSpec) -> Vec<Vec<Vertex>> {
    let verts = grid.free_vertices();
    let index: HashMap<Vertex, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut cycles: Vec<Vec<Vertex>> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();

    // DFS from each root, only visiting vertices >= root, closing back to the
    // root. Cycle length >= 4 on grids (bipartite, no triangles).
    fn dfs(
        root: usize,
        cur: usize,
        grid: &GridSpec,
        verts: &[Vertex],
        index: &HashMap<Vertex, usize>,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        cycles: &mut Vec<Vec<Vertex>>,
        seen: &mut HashSet<Vec<usize>>,
    ) {
        for n in grid.neighbors(verts[cur]) {
            let ni = index[&n];
            if ni == root && path.len() >= 4 {
                let mut key = path.clone();
                // Canonical: rotation fixed by root-first (already), direction
                // fixed by comparing second and last element.
                if key[1] > *key.last().unwrap() {
                    key[1..].reverse();
                }
                if seen.insert(key) {
                    cycles.push(path.iter().map(|&i| verts[i]).collect());
                }
            } else if ni > root && !on_path[ni] {
                path.push(ni);
                on_path[ni] = true;
                dfs(root, ni, grid, verts, index, path, on_path, cycles, seen);
                on_path[ni] = false;
                path.pop();
            }
        }
    }

    for root in 0..verts.len() {
        let mut path = vec![root];
        let mut on_path = vec![false; verts.len()];
        on_path[root] = true;
        dfs(root, root, grid, &verts, &index, &mut path, &mut on_path, &mut cycles, &mut seen);
    }
    cycles.sort();
    cycles
}

/// Nonempty sets of vertex-disjoint oriented cycles, precomputed once per
/// grid. Each entry is a list of (from, to) moves.
pub(crate) fn full_density_moves(grid: &GridSpec) -> Vec<Vec<(Vertex, Vertex)>> {
    let cycles = enumerate_simple_cycles(grid);
    let sets = disjoint_cycle_sets(&cycles);
    let mut moves = Vec::new();
    for set in sets {
        // Each cycle in the set independently takes one of two orientations.
        let k = set.len();
        for orient_bits in 0..(1u32 << k) {
            let mut mv = Vec::new();
            for (ci, &cyc_idx) in set.iter().enumerate() {
                let cyc = &cycles[cyc_idx];
                let forward = orient_bits >> ci & 1 == 0;
                let len = cyc.len();
                for i in 0..len {
                    let from = cyc[i];
                    let to = if forward { cyc[(i + 1) % len] } else { cyc[(i + len - 1) % len] };
                    mv.push((from, to));
                }
            }
            mv.sort();
            moves.push(mv);
        }
    }
    moves.sort();
    moves
}

fn disjoint_cycle_sets(cycles: &[Vec<Vertex>]) -> Vec<Vec<usize>> {
    let vsets: Vec<HashSet<Vertex>> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    fn rec(
        start: usize,
        cur: &mut Vec<usize>,
        used: &HashSet<Vertex>,
        vsets: &[HashSet<Vertex>],
        out: &mut Vec<Vec<usize>>,
    ) {
        for i in start..vsets.len() {
            if vsets[i].is_disjoint(used) {
                cur.push(i);
                out.push(cur.clone());
                let mut next = used.clone();
                next.extend(vsets[i].iter().copied());
                rec(i + 1, cur, &next, vsets, out);
                cur.pop();
            }
        }
    }
    rec(0, &mut Vec::new(), &HashSet::new(), &vsets, &mut out);
    out
}

/// Generate all collision-free joint successor position vectors, below full
/// density: each agent rests or moves to a free neighbor; targets distinct,
/// no pairwise swaps. Deterministic order.
fn labeled_successors(grid: &GridSpec, state: &[Vertex]) -> Vec<Vec<Vertex>> {
    let n = state.len();
    let mut out = Vec::new();
    let mut targets: Vec<Vertex> = Vec::with_capacity(n);
    let mut claimed: HashSet<Vertex> = HashSet::with_capacity(n);

    fn rec(
        i: usize,
        grid: &GridSpec,
        state: &[Vertex],
        targets: &mut Vec<Vertex>,
        claimed: &mut HashSet<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        if i == state.len() {
            out.push(targets.clone());
            return;
        }
        let mut options = vec![state[i]];
        options.extend(grid.neighbors(state[i]));
        for v in options {
            if claimed.contains(&v) {
                continue;
            }
            // Swap check against already assigned agents.
            let mut swap = false;
            for j in 0..i {
                if targets[j] == state[i] && state[j] == v && v != state[i] {
                    swap = true;
                    break;
                }
            }
            if swap {
                continue;
            }
            targets.push(v);
            claimed.insert(v);
            rec(i + 1, grid, state, targets, claimed, out);
            claimed.remove(&v);
            targets.pop();
        }
    }
    rec(0, grid, state, &mut targets, &mut claimed, &mut out);
    // Drop the all-rest successor (index of state itself) to avoid useless
    // self loops; BFS never needs it.
    out.retain(|t| t != state);
    out
}

/// Optimal labeled makespan plus one witness plan, via BFS over joint states.
pub fn optimal_makespan_labeled(
    grid: &GridSpec,
    instance: &Instance,
    limits: SearchLimits,
) -> Result<(usize, Plan), OracleError> {
    let n = instance.num_agents();
    let estimate = falling_factorial(grid.free_count(), n);
    if estimate > limits.max_states as u128 {
        return Err(OracleError::TooLarge { estimate, limit: limits.max_states });
    }
    if instance.starts == instance.goals {
        return Ok((0, Plan::stationary(&instance.starts)));
    }

    let full = n == grid.free_count();
    let full_moves = if full { full_density_moves(grid) } else { Vec::new() };

    let start: Vec<Vertex> = instance.starts.clone();
    let goal: Vec<Vertex> = instance.goals.clone();

    let mut ids: HashMap<Vec<Vertex>, u32> = HashMap::new();
    let mut arena: Vec<(u32, Vec<Vertex>)> = Vec::new(); // (parent, state)
    ids.insert(start.clone(), 0);
    arena.push((u32::MAX, start.clone()));
    let mut frontier = VecDeque::new();
    frontier.push_back(0u32);
    let mut depth_of: Vec<u16> = vec![0];

    while let Some(cur) = frontier.pop_front() {
        let depth = depth_of[cur as usize] as usize;
        if depth >= limits.max_depth {
            return Err(OracleError::DepthExceeded(limits.max_depth));
        }
        let state = arena[cur as usize].1.clone();
        let succs: Vec<Vec<Vertex>> = if full {
            let occupied: HashMap<Vertex, usize> =
                state.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            full_moves
                .iter()
                .map(|mv| {
                    let mut next = state.clone();
                    for &(from, to) in mv {
                        next[occupied[&from]] = to;
                    }
                    next
                })
                .collect()
        } else {
            labeled_successors(grid, &state)
        };
        for next in succs {
            if ids.contains_key(&next) {
                continue;
            }
            if arena.len() >= limits.max_states {
                return Err(OracleError::StateBudgetExceeded(limits.max_states));
            }
            let id = arena.len() as u32;
            ids.insert(next.clone(), id);
            depth_of.push((depth + 1) as u16);
            arena.push((cur, next.clone()));
            if next == goal {
                // Reconstruct witness.
                let mut chain = vec![id];
                let mut at = id;
                while arena[at as usize].0 != u32::MAX {
                    at = arena[at as usize].0;
                    chain.push(at);
                }
                chain.reverse();
                let mut paths = vec![Vec::with_capacity(chain.len()); n];
                for &sid in &chain {
                    for (i, &v) in arena[sid as usize].1.iter().enumerate() {
                        paths[i].push(v);
                    }
                }
                return Ok((depth + 1, Plan { paths }));
            }
            frontier.push_back(id);
        }
    }
    Err(OracleError::Unsolvable)
}

/// Optimal unlabeled makespan: BFS over vertex subsets. Any source may end at
/// any target.
pub fn optimal_makespan_unlabeled(
    grid: &GridSpec,
    sources: &[Vertex],
    targets: &[Vertex],
    limits: SearchLimits,
) -> Result<usize, OracleError> {
    if sources.len() != targets.len() {
        return Err(OracleError::CountMismatch(sources.len(), targets.len()));
    }
    let n = sources.len();
    let estimate = falling_factorial(grid.free_count(), n);
    if estimate > limits.max_states as u128 {
        return Err(OracleError::TooLarge { estimate, limit: limits.max_states });
    }
    let canon = |mut v: Vec<Vertex>| {
        v.sort();
        v
    };
    let start = canon(sources.to_vec());
    let goal = canon(targets.to_vec());
    if start == goal {
        return Ok(0);
    }

    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    seen.insert(start.clone());
    let mut frontier = VecDeque::new();
    frontier.push_back((start, 0usize));

    while let Some((state, depth)) = frontier.pop_front() {
        if depth >= limits.max_depth {
            return Err(OracleError::DepthExceeded(limits.max_depth));
        }
        // Token assignments with distinct targets; swaps need not be excluded
        // because fixing a swapped pair in place reaches the same subset.
        let mut next_sets: HashSet<Vec<Vertex>> = HashSet::new();
        let mut targets_buf: Vec<Vertex> = Vec::with_capacity(n);
        let mut claimed: HashSet<Vertex> = HashSet::with_capacity(n);
        fn rec(
            i: usize,
            grid: &GridSpec,
            state: &[Vertex],
            targets: &mut Vec<Vertex>,
            claimed: &mut HashSet<Vertex>,
            out: &mut HashSet<Vec<Vertex>>,
        ) {
            if i == state.len() {
                let mut set = targets.clone();
                set.sort();
                out.insert(set);
                return;
            }
            let mut options = vec![state[i]];
            options.extend(grid.neighbors(state[i]));
            for v in options {
                if claimed.contains(&v) {
                    continue;
                }
                targets.push(v);
                claimed.insert(v);
                rec(i + 1, grid, state, targets, claimed, out);
                claimed.remove(&v);
                targets.pop();
            }
        }
        rec(0, grid, &state, &mut targets_buf, &mut claimed, &mut next_sets);
        for next in next_sets {
            if next == state || seen.contains(&next) {
                continue;
            }
            if seen.len() >= limits.max_states {
                return Err(OracleError::StateBudgetExceeded(limits.max_states));
            }
            if next == goal {
                return Ok(depth + 1);
            }
            seen.insert(next.clone());
            frontier.push_back((next, depth + 1));
        }
    }
    Err(OracleError::Unsolvable)
}
