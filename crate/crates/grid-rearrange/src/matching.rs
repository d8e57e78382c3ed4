//! Regular bipartite multigraph construction and perfect-matching
//! decomposition (the preparation phase of the rearrangement pipelines),
//! plus the bottleneck-assignment heuristics.

use std::io::Write;

/// What an edge stands for: a real agent or a virtual filler added to make
/// the graph regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Payload {
    Agent(usize),
    Virtual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub left: usize,
    pub right: usize,
    pub payload: Payload,
}

/// Bipartite multigraph between color classes (left) and row classes
/// (right); one edge per real or virtual agent.
#[derive(Debug, Clone)]
pub struct BipartiteMultigraph {
    pub left_size: usize,
    pub right_size: usize,
    pub edges: Vec<Edge>,
}

impl BipartiteMultigraph {
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut left = vec![0; self.left_size];
        let mut right = vec![0; self.right_size];
        for e in &self.edges {
            left[e.left] += 1;
            right[e.right] += 1;
        }
        (left, right)
    }

    /// Some degree `d` such that the graph is d-regular, if it is.
    pub fn regular_degree(&self) -> Option<usize> {
        let (left, right) = self.degrees();
        let d = *left.first()?;
        if left.iter().all(|&x| x == d) && right.iter().all(|&x| x == d) {
            Some(d)
        } else {
            None
        }
    }
}

/// An ordered list of pairwise edge-disjoint perfect matchings whose union
/// is the originating edge multiset.
#[derive(Debug, Clone)]
pub struct MatchingSet {
    pub left_size: usize,
    pub matchings: Vec<Vec<Edge>>,
}

#[derive(Debug, thiserror::Error)]
pub enum MatchingError {
    #[error("color {0} out of range 0..{1}")]
    ColorOutOfRange(usize, usize),
    #[error("row {0} out of range 0..{1}")]
    RowOutOfRange(usize, usize),
    #[error("row {row} holds {count} agents, over the capacity {capacity}")]
    RowOverCapacity { row: usize, count: usize, capacity: usize },
    #[error("color {color} has {count} agents, over the capacity {capacity}")]
    ColorOverCapacity { color: usize, count: usize, capacity: usize },
    #[error("graph is not regular (left degrees {left:?}, right degrees {right:?})")]
    NotRegular { left: Vec<usize>, right: Vec<usize> },
    #[error("no perfect matching in residual graph (degree pass {0})")]
    ResidualInfeasible(usize),
    #[error("row {0} of the cost matrix has no feasible entry")]
    InfeasibleRow(usize),
    #[error("no feasible perfect assignment")]
    InfeasibleAssignment,
}

/// Build the color x row multigraph with one edge per agent, optionally
/// padding with virtual self-colored edges until every node reaches
/// `pad_to_degree`.
pub fn build_color_row_graph(
    classes: usize,
    colors: &[usize],
    rows: &[usize],
    pad_to_degree: Option<usize>,
) -> Result<BipartiteMultigraph, MatchingError> {
    assert_eq!(colors.len(), rows.len());
    let mut edges = Vec::with_capacity(colors.len());
    for (i, (&c, &r)) in colors.iter().zip(rows).enumerate() {
        if c >= classes {
            return Err(MatchingError::ColorOutOfRange(c, classes));
        }
        if r >= classes {
            return Err(MatchingError::RowOutOfRange(r, classes));
        }
        edges.push(Edge { left: c, right: r, payload: Payload::Agent(i) });
    }
    let mut graph = BipartiteMultigraph { left_size: classes, right_size: classes, edges };
    if let Some(d) = pad_to_degree {
        let (left, right) = graph.degrees();
        for (row, &cnt) in right.iter().enumerate() {
            if cnt > d {
                return Err(MatchingError::RowOverCapacity { row, count: cnt, capacity: d });
            }
        }
        for (color, &cnt) in left.iter().enumerate() {
            if cnt > d {
                return Err(MatchingError::ColorOverCapacity { color, count: cnt, capacity: d });
            }
        }
        let mut left_def: Vec<usize> = left.iter().map(|&x| d - x).collect();
        let mut right_def: Vec<usize> = right.iter().map(|&x| d - x).collect();
        // Self-colored fillers first, then deterministic cross pairing.
        for k in 0..classes {
            let both = left_def[k].min(right_def[k]);
            for _ in 0..both {
                graph.edges.push(Edge { left: k, right: k, payload: Payload::Virtual });
            }
            left_def[k] -= both;
            right_def[k] -= both;
        }
        let mut li = 0;
        let mut ri = 0;
        loop {
            while li < classes && left_def[li] == 0 {
                li += 1;
            }
            while ri < classes && right_def[ri] == 0 {
                ri += 1;
            }
            if li == classes || ri == classes {
                break;
            }
            graph.edges.push(Edge { left: li, right: ri, payload: Payload::Virtual });
            left_def[li] -= 1;
            right_def[ri] -= 1;
        }
    }
    Ok(graph)
}

/// Maximum bipartite matching over explicit edge instances, Kuhn's
/// augmenting paths with greedy initialization. Returns, per left node, the
/// matched edge index.
fn max_matching(
    left_size: usize,
    right_size: usize,
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
) -> Vec<Option<usize>> {
    let mut match_left: Vec<Option<usize>> = vec![None; left_size];
    let mut match_right: Vec<Option<usize>> = vec![None; right_size];
    for l in 0..left_size {
        for &ei in &adj[l] {
            let r = edges[ei].1;
            if match_right[r].is_none() {
                match_left[l] = Some(ei);
                match_right[r] = Some(ei);
                break;
            }
        }
    }
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        edges: &[(usize, usize)],
        match_left: &mut [Option<usize>],
        match_right: &mut [Option<usize>],
        visited: &mut [bool],
    ) -> bool {
        for &ei in &adj[l] {
            let r = edges[ei].1;
            if visited[r] {
                continue;
            }
            visited[r] = true;
            let free = match match_right[r] {
                None => true,
                Some(prev) => {
                    let owner = edges[prev].0;
                    augment(owner, adj, edges, match_left, match_right, visited)
                }
            };
            if free {
                match_left[l] = Some(ei);
                match_right[r] = Some(ei);
                return true;
            }
        }
        false
    }
    for l in 0..left_size {
        if match_left[l].is_none() {
            let mut visited = vec![false; right_size];
            augment(l, adj, edges, &mut match_left, &mut match_right, &mut visited);
        }
    }
    match_left
}

/// Split a d-regular multigraph into exactly d disjoint perfect matchings by
/// repeated maximum-matching extraction; every residual graph stays regular,
/// so a perfect matching always exists.
pub fn decompose_regular_multigraph(graph: &BipartiteMultigraph) -> Result<MatchingSet, MatchingError> {
    let d = graph.regular_degree().ok_or_else(|| {
        let (left, right) = graph.degrees();
        MatchingError::NotRegular { left, right }
    })?;
    let n = graph.left_size;
    let mut alive: Vec<bool> = vec![true; graph.edges.len()];
    let mut matchings = Vec::with_capacity(d);
    for pass in 0..d {
        let pairs: Vec<(usize, usize)> = graph.edges.iter().map(|e| (e.left, e.right)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (ei, e) in graph.edges.iter().enumerate() {
            if alive[ei] {
                adj[e.left].push(ei);
            }
        }
        let matched = max_matching(n, graph.right_size, &adj, &pairs);
        let mut matching = Vec::with_capacity(n);
        for l in 0..n {
            match matched[l] {
                Some(ei) => {
                    alive[ei] = false;
                    matching.push(graph.edges[ei]);
                }
                None => return Err(MatchingError::ResidualInfeasible(pass)),
            }
        }
        matchings.push(matching);
    }
    debug_assert!(alive.iter().all(|&a| !a));
    Ok(MatchingSet { left_size: n, matchings })
}

/// Square cost matrix with an explicit forbidden sentinel.
#[derive(Debug, Clone)]
pub struct CostMatrix {
    pub size: usize,
    entries: Vec<Option<u64>>,
}

impl CostMatrix {
    pub fn filled(size: usize, mut cost: impl FnMut(usize, usize) -> Option<u64>) -> CostMatrix {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(cost(r, c));
            }
        }
        CostMatrix { size, entries }
    }

    pub fn get(&self, r: usize, c: usize) -> Option<u64> {
        self.entries[r * self.size + c]
    }
}

/// Minimum bottleneck perfect assignment: search over the sorted distinct
/// cost values with a maximum-matching feasibility test at each threshold.
/// Returns row -> column; the lowest feasible threshold wins and ties fall
/// to the deterministic matching order.
pub fn lba_bottleneck_matching(costs: &CostMatrix) -> Result<Vec<usize>, MatchingError> {
    let n = costs.size;
    if n == 0 {
        return Ok(Vec::new());
    }
    for r in 0..n {
        if (0..n).all(|c| costs.get(r, c).is_none()) {
            return Err(MatchingError::InfeasibleRow(r));
        }
    }
    let mut values: Vec<u64> = (0..n)
        .flat_map(|r| (0..n).filter_map(move |c| costs.get(r, c)))
        .collect();
    values.sort_unstable();
    values.dedup();

    let feasible = |theta: u64| -> Option<Vec<usize>> {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for r in 0..n {
            for c in 0..n {
                if let Some(v) = costs.get(r, c) {
                    if v <= theta {
                        adj[r].push(edges.len());
                        edges.push((r, c));
                    }
                }
            }
        }
        let matched = max_matching(n, n, &adj, &edges);
        if matched.iter().all(|m| m.is_some()) {
            Some(matched.into_iter().map(|m| edges[m.unwrap()].1).collect())
        } else {
            None
        }
    };

    // Feasibility is monotone in theta.
    let mut lo = 0usize;
    let mut hi = values.len() - 1;
    if feasible(values[hi]).is_none() {
        return Err(MatchingError::InfeasibleAssignment);
    }
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(values[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(feasible(values[lo]).expect("threshold known feasible"))
}

/// Bottleneck value achieved by an assignment.
pub fn assignment_bottleneck(costs: &CostMatrix, assignment: &[usize]) -> u64 {
    assignment
        .iter()
        .enumerate()
        .map(|(r, &c)| costs.get(r, c).expect("assignment uses feasible entries"))
        .max()
        .unwrap_or(0)
}

/// Re-permute a matching set over slots: the cost of putting matching `k`
/// on slot `s` is the maximum per-edge cost; the bottleneck-optimal
/// permutation is returned as `slot_of[k]`.
pub fn lba_assign_matchings(
    set: &MatchingSet,
    edge_cost: impl Fn(&Edge, usize) -> u64,
) -> Result<Vec<usize>, MatchingError> {
    let k = set.matchings.len();
    let costs = CostMatrix::filled(k, |m, s| {
        Some(set.matchings[m].iter().map(|e| edge_cost(e, s)).max().unwrap_or(0))
    });
    lba_bottleneck_matching(&costs)
}

/// Agent view for the greedy per-slot construction: class memberships plus
/// the coordinate the slot-distance cost is measured against. Virtual
/// fillers carry no coordinate and cost nothing.
#[derive(Debug, Clone, Copy)]
pub struct GreedyAgent {
    pub color: usize,
    pub row: usize,
    pub coord: Option<i64>,
}

/// Greedy bottleneck construction: for each slot in turn, build the
/// color x row graph of the remaining agents with per-edge cost
/// `min |coord - slot_coord|`, extract a bottleneck-optimal perfect
/// matching, bind its cheapest agents, and continue. The input must be the
/// padded, regular agent multiset (one perfect matching per slot exists).
pub fn lba_greedy_per_row(
    classes: usize,
    agents: &[GreedyAgent],
    slot_coords: &[i64],
) -> Result<MatchingSet, MatchingError> {
    let mut available: Vec<bool> = vec![true; agents.len()];
    let mut matchings = Vec::with_capacity(slot_coords.len());
    for &slot in slot_coords {
        // Cheapest available agent per (row, color) pair.
        let mut best: Vec<Option<(u64, usize)>> = vec![None; classes * classes];
        for (i, a) in agents.iter().enumerate() {
            if !available[i] {
                continue;
            }
            let cost = a.coord.map_or(0, |x| (x - slot).unsigned_abs());
            let key = a.row * classes + a.color;
            if best[key].map_or(true, |(c, _)| cost < c) {
                best[key] = Some((cost, i));
            }
        }
        let costs = CostMatrix::filled(classes, |r, t| best[r * classes + t].map(|(c, _)| c));
        let assignment = lba_bottleneck_matching(&costs)?;
        let mut matching = Vec::with_capacity(classes);
        for (r, &t) in assignment.iter().enumerate() {
            let (_, agent_idx) = best[r * classes + t].expect("assignment uses existing edges");
            available[agent_idx] = false;
            let payload = match agents[agent_idx].coord {
                Some(_) => Payload::Agent(agent_idx),
                None => Payload::Virtual,
            };
            matching.push(Edge { left: t, right: r, payload });
        }
        matchings.push(matching);
    }
    debug_assert!(available.iter().all(|&a| !a));
    Ok(MatchingSet { left_size: classes, matchings })
}

/// Write the row-assignment integer program in LP text format for external
/// solvers: binary placement variables, a linearized bottleneck objective,
/// one-row-per-agent, distinct goal columns per row, and per-cell occupancy.
/// Solving the model is out of scope.
pub fn export_assignment_lp(
    out: &mut impl Write,
    rows: usize,
    agents: &[(usize, usize, usize)], // (start_row, start_col, goal_col) per agent
    cost0: impl Fn(usize, usize) -> u64,
    cost1: impl Fn(usize, usize) -> u64,
) -> std::io::Result<()> {
    writeln!(out, "\\ Row-assignment bottleneck model")?;
    writeln!(out, "Minimize")?;
    writeln!(out, " obj: z0 + z1")?;
    writeln!(out, "Subject To")?;
    for (i, _) in agents.iter().enumerate() {
        let terms: Vec<String> = (0..rows).map(|r| format!("x_{r}_{i}")).collect();
        writeln!(out, " assign_{i}: {} = 1", terms.join(" + "))?;
    }
    // Bottleneck linearization: z >= C_ri(lambda) x_ri.
    for (i, _) in agents.iter().enumerate() {
        for r in 0..rows {
            writeln!(out, " lb0_{r}_{i}: z0 - {} x_{r}_{i} >= 0", cost0(r, i))?;
            writeln!(out, " lb1_{r}_{i}: z1 - {} x_{r}_{i} >= 0", cost1(r, i))?;
        }
    }
    // Each row hosts at most one agent of each goal column.
    for r in 0..rows {
        let mut by_goal: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &(_, _, g)) in agents.iter().enumerate() {
            by_goal.entry(g).or_default().push(i);
        }
        for (g, members) in by_goal {
            if members.len() > 1 {
                let terms: Vec<String> = members.iter().map(|i| format!("x_{r}_{i}")).collect();
                writeln!(out, " color_{r}_{g}: {} <= 1", terms.join(" + "))?;
            }
        }
    }
    // Each (row, start column) pair hosts exactly one agent.
    for r in 0..rows {
        let mut by_col: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (i, &(_, c, _)) in agents.iter().enumerate() {
            by_col.entry(c).or_default().push(i);
        }
        for (c, members) in by_col {
            let terms: Vec<String> = members.iter().map(|i| format!("x_{r}_{i}")).collect();
            writeln!(out, " cell_{r}_{c}: {} = 1", terms.join(" + "))?;
        }
    }
    writeln!(out, "Binary")?;
    for (i, _) in agents.iter().enumerate() {
        for r in 0..rows {
            writeln!(out, " x_{r}_{i}")?;
        }
    }
    writeln!(out, "End")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn audit(set: &MatchingSet, graph: &BipartiteMultigraph) {
        let key = |t: &(usize, usize, Payload)| {
            let p = match t.2 {
                Payload::Agent(i) => i as i64,
                Payload::Virtual => -1,
            };
            (t.0, t.1, p)
        };
        let mut from_set: Vec<(usize, usize, Payload)> = set
            .matchings
            .iter()
            .flat_map(|m| m.iter().map(|e| (e.left, e.right, e.payload)))
            .collect();
        let mut from_graph: Vec<(usize, usize, Payload)> =
            graph.edges.iter().map(|e| (e.left, e.right, e.payload)).collect();
        from_set.sort_by_key(key);
        from_graph.sort_by_key(key);
        assert_eq!(from_set, from_graph);
        for m in &set.matchings {
            let lefts: std::collections::HashSet<usize> = m.iter().map(|e| e.left).collect();
            let rights: std::collections::HashSet<usize> = m.iter().map(|e| e.right).collect();
            assert_eq!(lefts.len(), set.left_size);
            assert_eq!(rights.len(), set.left_size);
        }
    }

    #[test]
    fn figure_like_4x3_table_decomposes_into_three_matchings() {
        // 4 rows x 3 columns full table: colors = goal rows, 3 agents per
        // row, 3 per color -> 3-regular on 4+4 nodes.
        let colors = vec![0, 1, 2, 0, 1, 3, 2, 3, 0, 1, 2, 3];
        let rows = vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3];
        let g = build_color_row_graph(4, &colors, &rows, None).unwrap();
        assert_eq!(g.regular_degree(), Some(3));
        let set = decompose_regular_multigraph(&g).unwrap();
        assert_eq!(set.matchings.len(), 3);
        audit(&set, &g);
    }

    #[test]
    fn identity_table_gives_parallel_edges() {
        let colors = vec![0, 0, 1, 1, 2, 2];
        let rows = colors.clone();
        let g = build_color_row_graph(3, &colors, &rows, None).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        let set = decompose_regular_multigraph(&g).unwrap();
        assert_eq!(set.matchings.len(), 2);
        for m in &set.matchings {
            assert!(m.iter().all(|e| e.left == e.right));
        }
    }

    #[test]
    fn residual_regularity_holds() {
        let colors = vec![0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1];
        let rows = vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3];
        let g = build_color_row_graph(4, &colors, &rows, None).unwrap();
        let set = decompose_regular_multigraph(&g).unwrap();
        for k in 1..=3usize {
            let mut residual = g.clone();
            for m in &set.matchings[..k] {
                for e in m {
                    let pos = residual
                        .edges
                        .iter()
                        .position(|x| x.left == e.left && x.right == e.right)
                        .unwrap();
                    residual.edges.remove(pos);
                }
            }
            assert_eq!(residual.regular_degree(), Some(3 - k));
        }
    }

    #[test]
    fn padding_regularizes_and_flags_overflow() {
        let colors = vec![0, 0];
        let rows = vec![0, 1];
        let g = build_color_row_graph(2, &colors, &rows, Some(2)).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        let virtuals = g.edges.iter().filter(|e| e.payload == Payload::Virtual).count();
        assert_eq!(virtuals, 2);

        let over = build_color_row_graph(2, &[0, 0, 0], &[0, 0, 0], Some(2));
        assert!(matches!(over, Err(MatchingError::RowOverCapacity { row: 0, .. })));
    }

    #[test]
    fn bottleneck_identity_cheapest() {
        let costs = CostMatrix::filled(4, |r, c| Some(if r == c { 0 } else { 9 }));
        let a = lba_bottleneck_matching(&costs).unwrap();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(assignment_bottleneck(&costs, &a), 0);
    }

    #[test]
    fn bottleneck_single_cell() {
        let costs = CostMatrix::filled(1, |_, _| Some(7));
        let a = lba_bottleneck_matching(&costs).unwrap();
        assert_eq!(assignment_bottleneck(&costs, &a), 7);
    }

    #[test]
    fn bottleneck_matches_exhaustive_on_random_4x4() {
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        fn perms(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                perms(p, k + 1, out);
                p.swap(k, i);
            }
        }
        for _ in 0..40 {
            let costs = CostMatrix::filled(4, |_, _| Some(next() % 50));
            let got = assignment_bottleneck(&costs, &lba_bottleneck_matching(&costs).unwrap());
            let mut all = Vec::new();
            perms(&mut vec![0, 1, 2, 3], 0, &mut all);
            let best = all.iter().map(|p| assignment_bottleneck(&costs, p)).min().unwrap();
            assert_eq!(got, best);
        }
    }

    #[test]
    fn infeasible_row_named() {
        let costs = CostMatrix::filled(3, |r, _| if r == 1 { None } else { Some(1) });
        assert!(matches!(lba_bottleneck_matching(&costs), Err(MatchingError::InfeasibleRow(1))));
    }

    #[test]
    fn assign_matchings_single_is_identity() {
        let set = MatchingSet {
            left_size: 2,
            matchings: vec![vec![
                Edge { left: 0, right: 0, payload: Payload::Agent(0) },
                Edge { left: 1, right: 1, payload: Payload::Agent(1) },
            ]],
        };
        let perm = lba_assign_matchings(&set, |_, _| 0).unwrap();
        assert_eq!(perm, vec![0]);
    }

    #[test]
    fn assign_matchings_beats_exhaustive_on_4() {
        let mats: Vec<Vec<Edge>> = (0..4)
            .map(|m| {
                vec![Edge { left: 0, right: 0, payload: Payload::Agent(m) }]
            })
            .collect();
        let set = MatchingSet { left_size: 1, matchings: mats };
        let coords = [3i64, 0, 7, 5];
        let cost = |e: &Edge, s: usize| {
            let m = match e.payload {
                Payload::Agent(i) => i,
                Payload::Virtual => 0,
            };
            (coords[m] - s as i64).unsigned_abs()
        };
        let perm = lba_assign_matchings(&set, cost).unwrap();
        let got: u64 = (0..4).map(|m| cost(&set.matchings[m][0], perm[m])).max().unwrap();
        fn perms(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
            if k == p.len() {
                out.push(p.clone());
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                perms(p, k + 1, out);
                p.swap(k, i);
            }
        }
        let mut all = Vec::new();
        perms(&mut vec![0, 1, 2, 3], 0, &mut all);
        let best = all
            .iter()
            .map(|p| (0..4).map(|m| cost(&set.matchings[m][0], p[m])).max().unwrap())
            .min()
            .unwrap();
        assert_eq!(got, best);
    }

    #[test]
    fn greedy_construction_audits() {
        // 3 rows x 3 colors, 9 agents (full table), coordinates 0..2 per row.
        let mut agents = Vec::new();
        let colors = [0, 1, 2, 2, 0, 1, 1, 2, 0];
        for (i, &c) in colors.iter().enumerate() {
            agents.push(GreedyAgent { color: c, row: i / 3, coord: Some((i % 3) as i64) });
        }
        let set = lba_greedy_per_row(3, &agents, &[0, 1, 2]).unwrap();
        assert_eq!(set.matchings.len(), 3);
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for m in &set.matchings {
            for e in m {
                if let Payload::Agent(i) = e.payload {
                    *counts.entry(i).or_default() += 1;
                }
            }
        }
        assert_eq!(counts.len(), 9);
        assert!(counts.values().all(|&v| v == 1));
    }

    #[test]
    fn sorted_table_greedy_is_zero_bottleneck() {
        // Already-sorted table: agent at (r, c) has color r, coordinate c;
        // slots at coordinates 0..2. Greedy must find zero-cost matchings.
        let mut agents = Vec::new();
        for r in 0..3 {
            for c in 0..3 {
                agents.push(GreedyAgent { color: r, row: r, coord: Some(c as i64) });
            }
        }
        let set = lba_greedy_per_row(3, &agents, &[0, 1, 2]).unwrap();
        for (s, m) in set.matchings.iter().enumerate() {
            for e in m {
                if let Payload::Agent(i) = e.payload {
                    assert_eq!(agents[i].coord.unwrap(), s as i64);
                }
            }
        }
    }
}
