//! Precomputed makespan-optimal plans for every horizontal-permutation
//! pattern on small full-density sub-grids, found by breadth-first search
//! over the joint configuration space. At full density a synchronous move is
//! a set of disjoint cycle rotations.

use std::collections::HashMap;
use std::io::{Read, Write};
use std::path::Path;

use crate::grid::{GridSpec, Vertex};
use crate::oracle::full_density_moves;
use crate::shuffle::script::Script;

/// Bump when the generator or file layout changes; stale caches regenerate.
pub const GENERATOR_VERSION: u32 = 1;

const MAGIC: &[u8; 8] = b"SWPTBL\0\0";

/// Shapes with shipped tables, as (rows, cols). The 3x4 table is excluded.
pub const SUPPORTED_SHAPES: [(usize, usize); 5] = [(3, 2), (4, 2), (2, 3), (3, 3), (2, 4)];

/// Worst-case optimal step counts per shape.
pub fn expected_max_steps(shape: (usize, usize)) -> Option<usize> {
    match shape {
        (3, 2) => Some(7),
        (4, 2) => Some(6),
        (2, 3) => Some(6),
        (3, 3) => Some(7),
        (2, 4) => Some(6),
        _ => None,
    }
}

/// A per-row permutation pattern on an `rows x cols` sub-grid:
/// `rows_perm[r][j]` is the destination column of the agent starting at
/// column `j` of row `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwapPattern {
    pub rows_perm: Vec<Vec<u8>>,
}

impl SwapPattern {
    pub fn identity(rows: usize, cols: usize) -> Self {
        SwapPattern { rows_perm: vec![(0..cols as u8).collect(); rows] }
    }

    pub fn is_identity(&self) -> bool {
        self.rows_perm
            .iter()
            .all(|p| p.iter().enumerate().all(|(j, &t)| t as usize == j))
    }

    fn validate(&self, rows: usize, cols: usize) -> bool {
        self.rows_perm.len() == rows
            && self.rows_perm.iter().all(|p| {
                let mut seen = vec![false; cols];
                p.len() == cols
                    && p.iter().all(|&t| {
                        let ok = (t as usize) < cols && !seen[t as usize];
                        if ok {
                            seen[t as usize] = true;
                        }
                        ok
                    })
            })
    }
}

/// One timed plan: `steps[t]` is a set of (from_cell, to_cell) moves.
pub type CellPlan = Vec<Vec<(u8, u8)>>;

/// Optimal plans for all patterns of one shape.
#[derive(Debug, Clone)]
pub struct SwapTable {
    pub rows: usize,
    pub cols: usize,
    pub max_steps: usize,
    plans: HashMap<SwapPattern, CellPlan>,
}

#[derive(Debug, thiserror::Error)]
pub enum SwapTableError {
    #[error("unsupported sub-grid shape {0}x{1}")]
    UnsupportedShape(usize, usize),
    #[error("pattern is not a per-row permutation for {0}x{1}")]
    BadPattern(usize, usize),
    #[error("cache I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("cache rejected: {0}")]
    BadCache(String),
}

impl SwapTable {
    /// Plan realizing `pattern`; every stored plan is BFS-optimal.
    pub fn plan_for(&self, pattern: &SwapPattern) -> Result<&CellPlan, SwapTableError> {
        if !pattern.validate(self.rows, self.cols) {
            return Err(SwapTableError::BadPattern(self.rows, self.cols));
        }
        Ok(self.plans.get(pattern).expect("all patterns enumerated"))
    }

    /// Plan instantiated at grid coordinates via a cell mapping.
    pub fn script_for(
        &self,
        pattern: &SwapPattern,
        cell_to_vertex: impl Fn(usize, usize) -> Vertex,
    ) -> Result<Script, SwapTableError> {
        let plan = self.plan_for(pattern)?;
        let mut script = Script::new();
        for step in plan {
            let moves = step
                .iter()
                .map(|&(from, to)| {
                    let fc = from as usize;
                    let tc = to as usize;
                    (
                        cell_to_vertex(fc / self.cols, fc % self.cols),
                        cell_to_vertex(tc / self.cols, tc % self.cols),
                    )
                })
                .collect();
            script.push_step(moves);
        }
        Ok(script)
    }

    pub fn pattern_count(&self) -> usize {
        self.plans.len()
    }
}

fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// All per-row permutation patterns of a shape, in lexicographic order.
pub fn enumerate_patterns(rows: usize, cols: usize) -> Vec<SwapPattern> {
    let perms = permutations(cols);
    let mut out = Vec::new();
    let total = perms.len().pow(rows as u32);
    for mut code in 0..total {
        let mut rows_perm = Vec::with_capacity(rows);
        for _ in 0..rows {
            rows_perm.push(perms[code % perms.len()].clone());
            code /= perms.len();
        }
        out.push(SwapPattern { rows_perm });
    }
    out
}

fn factorials(n: usize) -> Vec<usize> {
    let mut f = vec![1usize; n + 1];
    for i in 1..=n {
        f[i] = f[i - 1] * i;
    }
    f
}

/// Lehmer rank of a permutation over 0..k.
fn rank_perm(perm: &[u8], fact: &[usize]) -> usize {
    let k = perm.len();
    let mut rank = 0;
    for i in 0..k {
        let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
        rank += smaller * fact[k - 1 - i];
    }
    rank
}

/// Generate the table for `shape` by a single BFS from the identity
/// arrangement over all reachable joint configurations.
pub fn generate_swap_table(shape: (usize, usize)) -> Result<SwapTable, SwapTableError> {
    let (rows, cols) = shape;
    if !SUPPORTED_SHAPES.contains(&shape) {
        return Err(SwapTableError::UnsupportedShape(rows, cols));
    }
    let k = rows * cols;
    let fact = factorials(k);
    let grid = GridSpec::open_2d(rows as i32, cols as i32);
    let cell_of = |v: Vertex| (v.x as usize) * cols + v.y as usize;

    // Moves as cell-index permutations (identity off-cycle).
    let moves: Vec<Vec<(u8, u8)>> = full_density_moves(&grid)
        .into_iter()
        .map(|mv| mv.into_iter().map(|(a, b)| (cell_of(a) as u8, cell_of(b) as u8)).collect())
        .collect();

    // State: state[cell] = agent occupying the cell, agents labeled by home
    // cell. Start = identity. BFS records (parent, move index).
    let n_states = fact[k];
    let mut parent: Vec<u32> = vec![u32::MAX; n_states];
    let mut via: Vec<u16> = vec![u16::MAX; n_states];
    let mut dist: Vec<u8> = vec![u8::MAX; n_states];
    let identity: Vec<u8> = (0..k as u8).collect();
    let id_rank = rank_perm(&identity, &fact);
    dist[id_rank] = 0;
    let mut frontier: Vec<Vec<u8>> = vec![identity];
    let mut depth = 0u8;
    while !frontier.is_empty() {
        let mut next_frontier = Vec::new();
        for state in &frontier {
            let state_rank = rank_perm(state, &fact);
            for (mi, mv) in moves.iter().enumerate() {
                let mut next = state.clone();
                for &(from, to) in mv {
                    next[to as usize] = state[from as usize];
                }
                let r = rank_perm(&next, &fact);
                if dist[r] == u8::MAX {
                    dist[r] = depth + 1;
                    parent[r] = state_rank as u32;
                    via[r] = mi as u16;
                    next_frontier.push(next);
                }
            }
        }
        frontier = next_frontier;
        depth += 1;
    }

    // Unrank by replaying: store states alongside ranks for reconstruction.
    // Reconstruction needs the move chain only, which parent/via give; the
    // plan is the move sequence from identity to the goal arrangement.
    let mut plans = HashMap::new();
    let mut max_steps = 0;
    for pattern in enumerate_patterns(rows, cols) {
        // Goal: agent from cell (r, j) ends at cell (r, perm[r][j]).
        // state[cell] = agent at cell: goal_state[idx(r, perm[r][j])] = idx(r, j).
        let mut goal = vec![0u8; k];
        for (r, perm) in pattern.rows_perm.iter().enumerate() {
            for (j, &t) in perm.iter().enumerate() {
                goal[r * cols + t as usize] = (r * cols + j) as u8;
            }
        }
        let gr = rank_perm(&goal, &fact);
        assert!(dist[gr] != u8::MAX, "pattern unreachable, move generation is broken");
        let mut chain: Vec<u16> = Vec::with_capacity(dist[gr] as usize);
        let mut at = gr;
        while parent[at] != u32::MAX {
            chain.push(via[at]);
            at = parent[at] as usize;
        }
        chain.reverse();
        let plan: CellPlan = chain.into_iter().map(|mi| moves[mi as usize].clone()).collect();
        max_steps = max_steps.max(plan.len());
        plans.insert(pattern, plan);
    }
    Ok(SwapTable { rows, cols, max_steps, plans })
}

impl SwapTable {
    /// Serialize as a versioned blob: magic, version, shape, then one
    /// length-prefixed record per pattern in enumeration order.
    pub fn write_to(&self, w: &mut impl Write) -> Result<(), SwapTableError> {
        w.write_all(MAGIC)?;
        w.write_all(&GENERATOR_VERSION.to_le_bytes())?;
        w.write_all(&(self.rows as u32).to_le_bytes())?;
        w.write_all(&(self.cols as u32).to_le_bytes())?;
        for pattern in enumerate_patterns(self.rows, self.cols) {
            let plan = &self.plans[&pattern];
            let mut rec: Vec<u8> = Vec::new();
            for row in &pattern.rows_perm {
                rec.extend_from_slice(row);
            }
            rec.push(plan.len() as u8);
            for step in plan {
                rec.push(step.len() as u8);
                for &(a, b) in step {
                    rec.push(a);
                    rec.push(b);
                }
            }
            w.write_all(&(rec.len() as u32).to_le_bytes())?;
            w.write_all(&rec)?;
        }
        Ok(())
    }

    pub fn read_from(r: &mut impl Read, shape: (usize, usize)) -> Result<SwapTable, SwapTableError> {
        let mut head = [0u8; 16];
        r.read_exact(&mut head)?;
        if &head[0..8] != MAGIC {
            return Err(SwapTableError::BadCache("magic mismatch".into()));
        }
        let version = u32::from_le_bytes(head[8..12].try_into().unwrap());
        if version != GENERATOR_VERSION {
            return Err(SwapTableError::BadCache(format!("version {version}")));
        }
        let rows = u32::from_le_bytes(head[12..16].try_into().unwrap()) as usize;
        let mut colbuf = [0u8; 4];
        r.read_exact(&mut colbuf)?;
        let cols = u32::from_le_bytes(colbuf) as usize;
        if (rows, cols) != shape {
            return Err(SwapTableError::BadCache(format!("shape {rows}x{cols}")));
        }
        let mut plans = HashMap::new();
        let mut max_steps = 0;
        for pattern in enumerate_patterns(rows, cols) {
            let mut lenbuf = [0u8; 4];
            r.read_exact(&mut lenbuf)?;
            let len = u32::from_le_bytes(lenbuf) as usize;
            let mut rec = vec![0u8; len];
            r.read_exact(&mut rec)?;
            let mut at = 0;
            let mut rows_perm = Vec::with_capacity(rows);
            for _ in 0..rows {
                rows_perm.push(rec[at..at + cols].to_vec());
                at += cols;
            }
            if (SwapPattern { rows_perm: rows_perm.clone() }) != pattern {
                return Err(SwapTableError::BadCache("pattern order mismatch".into()));
            }
            let steps = rec[at] as usize;
            at += 1;
            let mut plan = Vec::with_capacity(steps);
            for _ in 0..steps {
                let cnt = rec[at] as usize;
                at += 1;
                let mut step = Vec::with_capacity(cnt);
                for _ in 0..cnt {
                    step.push((rec[at], rec[at + 1]));
                    at += 2;
                }
                plan.push(step);
            }
            max_steps = max_steps.max(plan.len());
            plans.insert(pattern, plan);
        }
        Ok(SwapTable { rows, cols, max_steps, plans })
    }
}

/// Shared handle to all shipped tables, loaded from a cache directory when
/// valid and regenerated (and re-cached) otherwise.
#[derive(Debug)]
pub struct SwapTables {
    tables: HashMap<(usize, usize), SwapTable>,
}

impl SwapTables {
    /// Generate every supported shape in memory.
    pub fn generate_all() -> Result<SwapTables, SwapTableError> {
        let mut tables = HashMap::new();
        for shape in SUPPORTED_SHAPES {
            tables.insert(shape, generate_swap_table(shape)?);
        }
        Ok(SwapTables { tables })
    }

    /// Load from `dir`, regenerating any missing or stale table files.
    pub fn load_or_generate(dir: &Path) -> Result<SwapTables, SwapTableError> {
        std::fs::create_dir_all(dir)?;
        let mut tables = HashMap::new();
        for shape in SUPPORTED_SHAPES {
            let path = dir.join(format!("swap_{}x{}.bin", shape.0, shape.1));
            let loaded = std::fs::File::open(&path)
                .map_err(SwapTableError::from)
                .and_then(|mut f| SwapTable::read_from(&mut f, shape));
            let table = match loaded {
                Ok(t) => t,
                Err(_) => {
                    let t = generate_swap_table(shape)?;
                    let mut f = std::fs::File::create(&path)?;
                    t.write_to(&mut f)?;
                    t
                }
            };
            tables.insert(shape, table);
        }
        Ok(SwapTables { tables })
    }

    pub fn get(&self, shape: (usize, usize)) -> Result<&SwapTable, SwapTableError> {
        self.tables
            .get(&shape)
            .ok_or(SwapTableError::UnsupportedShape(shape.0, shape.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{validate_plan, Instance, Plan};

    fn table_plan_validates(shape: (usize, usize), pattern: &SwapPattern, plan: &CellPlan) {
        let (rows, cols) = shape;
        let grid = GridSpec::open_2d(rows as i32, cols as i32);
        let starts = grid.free_vertices();
        let goals: Vec<Vertex> = starts
            .iter()
            .map(|v| Vertex::new2(v.x, pattern.rows_perm[v.x as usize][v.y as usize] as i32))
            .collect();
        let inst = Instance::new(grid.clone(), starts.clone(), goals).unwrap();
        let mut script = Script::new();
        for step in plan {
            script.push_step(
                step.iter()
                    .map(|&(a, b)| {
                        (
                            Vertex::new2(a as i32 / cols as i32, a as i32 % cols as i32),
                            Vertex::new2(b as i32 / cols as i32, b as i32 % cols as i32),
                        )
                    })
                    .collect(),
            );
        }
        let paths = script.apply(&starts).unwrap();
        let plan = Plan { paths };
        let report = validate_plan(&grid, &inst, &plan);
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn table_2x3_matches_known_counts() {
        let t = generate_swap_table((2, 3)).unwrap();
        assert_eq!(t.pattern_count(), 36);
        assert_eq!(t.max_steps, 6);
        // Identity costs zero.
        let id = SwapPattern::identity(2, 3);
        assert!(t.plan_for(&id).unwrap().is_empty());
        // A single adjacent-pair swap takes exactly three steps.
        let single = SwapPattern { rows_perm: vec![vec![1, 0, 2], vec![0, 1, 2]] };
        assert_eq!(t.plan_for(&single).unwrap().len(), 3);
        for (pattern, plan) in t.plans.iter().take(8) {
            table_plan_validates((2, 3), pattern, plan);
        }
    }

    #[test]
    fn table_3x2_full_swap_takes_seven() {
        let t = generate_swap_table((3, 2)).unwrap();
        assert_eq!(t.pattern_count(), 8);
        assert_eq!(t.max_steps, 7);
        let full = SwapPattern { rows_perm: vec![vec![1, 0]; 3] };
        let plan = t.plan_for(&full).unwrap();
        assert_eq!(plan.len(), 7);
        table_plan_validates((3, 2), &full, plan);
    }

    #[test]
    fn cache_round_trip() {
        let t = generate_swap_table((3, 2)).unwrap();
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let t2 = SwapTable::read_from(&mut buf.as_slice(), (3, 2)).unwrap();
        assert_eq!(t2.max_steps, t.max_steps);
        let full = SwapPattern { rows_perm: vec![vec![1, 0]; 3] };
        assert_eq!(t2.plan_for(&full).unwrap(), t.plan_for(&full).unwrap());
    }

    #[test]
    fn unsupported_shape_is_an_error() {
        assert!(matches!(
            generate_swap_table((3, 4)),
            Err(SwapTableError::UnsupportedShape(3, 4))
        ));
    }
}
