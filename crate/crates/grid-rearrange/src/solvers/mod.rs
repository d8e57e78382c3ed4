//! End-to-end grid rearrangement pipelines: full density (`grm2`/`grm4`),
//! one-third density with regular obstacles (`grh`), one-half density
//! (`grlm`), the arbitrary-instance half-density pipeline, and 3D variants.

mod arbitrary;
mod grh;
mod grlm;
mod grm;
mod threed;

pub use arbitrary::solve_arbitrary_half;
pub use grh::solve_grh;
pub use grlm::solve_grlm;
pub use grm::{solve_grm, GrmVariant};
pub use threed::{solve_3d, ThreeDBase};

use std::path::PathBuf;
use std::sync::OnceLock;

use crate::grid::{Instance, Plan, Vertex};
use crate::shuffle::script::Script;
use crate::shuffle::swap_table::{SwapTableError, SwapTables};

/// Algorithm selector as exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Grm2,
    Grm4,
    Grh,
    Grlm,
    ArbitraryHalf,
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "grm2" => Ok(Algorithm::Grm2),
            "grm4" => Ok(Algorithm::Grm4),
            "grh" => Ok(Algorithm::Grh),
            "grlm" => Ok(Algorithm::Grlm),
            "arbitrary_half" => Ok(Algorithm::ArbitraryHalf),
            other => Err(format!("unknown algorithm '{other}'")),
        }
    }
}

/// How the preparation matchings are produced: an arbitrary regular
/// decomposition, or the bottleneck-assignment heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchingMode {
    #[default]
    Hall,
    Lba,
}

impl std::str::FromStr for MatchingMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hall" => Ok(MatchingMode::Hall),
            "lba" => Ok(MatchingMode::Lba),
            other => Err(format!("unknown matching mode '{other}'")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub matching: MatchingMode,
    pub refine: bool,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { algorithm: Algorithm::Grh, matching: MatchingMode::Hall, refine: false, seed: 0 }
    }
}

/// One pipeline phase of the pre-refinement plan.
#[derive(Debug, Clone)]
pub struct Phase {
    pub name: String,
    pub offset: usize,
    pub plan: Plan,
}

impl Phase {
    pub fn len(&self) -> usize {
        self.plan.makespan()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Per-phase decomposition; concatenating the sub-plans reproduces the
/// solver's (pre-refinement) plan exactly.
#[derive(Debug, Clone, Default)]
pub struct PhaseTrace {
    pub phases: Vec<Phase>,
}

impl PhaseTrace {
    /// Total step count of the named phases.
    pub fn span_of(&self, names: &[&str]) -> usize {
        self.phases
            .iter()
            .filter(|p| names.contains(&p.name.as_str()))
            .map(|p| p.len())
            .sum()
    }

    /// Steps spent in the three rearrangement phases.
    pub fn shuffle_span(&self) -> usize {
        self.phases
            .iter()
            .filter(|p| p.name.starts_with("rearrange"))
            .map(|p| p.len())
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct Solution {
    /// The final plan (refined when requested).
    pub plan: Plan,
    /// Pre-refinement phase decomposition.
    pub trace: PhaseTrace,
    /// Makespan before refinement.
    pub unrefined_makespan: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error("{algorithm:?} requires {requirement}")]
    Precondition { algorithm: Algorithm, requirement: String },
    #[error("density too high: {n} agents exceed the {capacity} supported by {algorithm:?}")]
    Density { algorithm: Algorithm, n: usize, capacity: usize },
    #[error(transparent)]
    Matching(#[from] crate::matching::MatchingError),
    #[error(transparent)]
    Shuffle(#[from] crate::shuffle::rowsort::ShuffleError),
    #[error(transparent)]
    Highway(#[from] crate::shuffle::highway::HighwayError),
    #[error(transparent)]
    Merge(#[from] crate::shuffle::linear_merge::MergeError),
    #[error(transparent)]
    Unlabeled(#[from] crate::unlabeled::UnlabeledError),
    #[error(transparent)]
    Table(#[from] SwapTableError),
    #[error(transparent)]
    Script(#[from] crate::shuffle::script::ScriptError),
    #[error(transparent)]
    Refine(#[from] crate::refine::RefineError),
}

/// Process-wide swap tables, loaded from the cache directory on first use.
pub fn shared_tables() -> Result<&'static SwapTables, SwapTableError> {
    static TABLES: OnceLock<SwapTables> = OnceLock::new();
    if let Some(t) = TABLES.get() {
        return Ok(t);
    }
    let dir = std::env::var_os("GRID_REARRANGE_CACHE")
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("grid-rearrange-tables"));
    let tables = SwapTables::load_or_generate(&dir)?;
    Ok(TABLES.get_or_init(|| tables))
}

/// Solve an instance with the configured pipeline.
pub fn solve(instance: &Instance, config: &SolverConfig) -> Result<Solution, SolveError> {
    let (plan, trace) = match config.algorithm {
        Algorithm::Grm2 => solve_grm(instance, GrmVariant::Block2, config.matching)?,
        Algorithm::Grm4 => solve_grm(instance, GrmVariant::Block4, config.matching)?,
        Algorithm::Grh => solve_grh(instance, config.matching)?,
        Algorithm::Grlm => solve_grlm(instance, config.matching)?,
        Algorithm::ArbitraryHalf => (solve_arbitrary_half(instance, config.matching)?, PhaseTrace::default()),
    };
    let unrefined_makespan = plan.makespan();
    let plan = if config.refine { crate::refine::refine(&plan)? } else { plan };
    Ok(Solution { plan, trace, unrefined_makespan })
}

/// Incrementally builds the dense all-agent paths across pipeline phases.
pub(crate) struct PlanAssembly {
    paths: Vec<Vec<Vertex>>,
    phases: Vec<(String, usize, usize)>,
}

impl PlanAssembly {
    pub fn new(starts: &[Vertex]) -> PlanAssembly {
        PlanAssembly {
            paths: starts.iter().map(|&v| vec![v]).collect(),
            phases: Vec::new(),
        }
    }

    pub fn positions(&self) -> Vec<Vertex> {
        self.paths.iter().map(|p| *p.last().unwrap()).collect()
    }

    fn time(&self) -> usize {
        self.paths.first().map_or(0, |p| p.len() - 1)
    }

    /// Append a synchronous script as one named phase.
    pub fn push_script(&mut self, name: &str, script: &Script) -> Result<(), crate::shuffle::script::ScriptError> {
        let offset = self.time();
        let segment = script.apply(&self.positions())?;
        for (path, seg) in self.paths.iter_mut().zip(segment) {
            path.extend_from_slice(&seg[1..]);
        }
        self.phases.push((name.to_string(), offset, script.len()));
        Ok(())
    }

    /// Append explicit per-agent paths (already synchronized); each must
    /// start at the agent's current position.
    pub fn push_paths(&mut self, name: &str, segment: &[Vec<Vertex>]) {
        assert_eq!(segment.len(), self.paths.len());
        let offset = self.time();
        let len = segment.iter().map(|p| p.len()).max().unwrap_or(1) - 1;
        for (path, seg) in self.paths.iter_mut().zip(segment) {
            assert_eq!(*path.last().unwrap(), seg[0], "phase boundary mismatch");
            path.extend_from_slice(&seg[1..]);
            let last = *path.last().unwrap();
            while path.len() <= offset + len {
                path.push(last);
            }
        }
        self.phases.push((name.to_string(), offset, len));
    }

    /// Final plan for the first `real` agents plus the phase decomposition.
    pub fn finish(self, real: usize) -> (Plan, PhaseTrace) {
        let mut plan = Plan { paths: self.paths.into_iter().take(real).collect() };
        plan.normalize();
        let phases = self
            .phases
            .into_iter()
            .filter(|&(_, _, len)| len > 0)
            .map(|(name, offset, len)| {
                let sub = Plan {
                    paths: plan
                        .paths
                        .iter()
                        .map(|p| p[offset..=(offset + len).min(p.len() - 1)].to_vec())
                        .collect(),
                };
                Phase { name, offset, plan: sub }
            })
            .collect();
        plan.trim_trailing_rests();
        (plan, PhaseTrace { phases })
    }
}

/// Rebind interchangeable agents: within each (color, row) class, sort the
/// bound agents by their coordinate and the assigned slots by theirs, then
/// pair in order. Cuts needless first-phase travel and makes identity
/// instances cost nothing.
pub(crate) fn rebind_matchings(
    set: &mut crate::matching::MatchingSet,
    slot_of_matching: &[usize],
    agent_coord: impl Fn(usize) -> i64,
    slot_coord: impl Fn(usize) -> i64,
) {
    use crate::matching::Payload;
    use std::collections::HashMap;
    let mut groups: HashMap<(usize, usize), Vec<(usize, usize)>> = HashMap::new(); // (color,row) -> [(matching, pos_in_matching)]
    for (mi, m) in set.matchings.iter().enumerate() {
        for (pi, e) in m.iter().enumerate() {
            if matches!(e.payload, Payload::Agent(_)) {
                groups.entry((e.left, e.right)).or_default().push((mi, pi));
            }
        }
    }
    for ((_, _), mut spots) in groups {
        if spots.len() < 2 {
            continue;
        }
        let mut agents: Vec<usize> = spots
            .iter()
            .map(|&(mi, pi)| match set.matchings[mi][pi].payload {
                Payload::Agent(a) => a,
                Payload::Virtual => unreachable!(),
            })
            .collect();
        spots.sort_by_key(|&(mi, _)| slot_coord(slot_of_matching[mi]));
        agents.sort_by_key(|&a| (agent_coord(a), a));
        for (&(mi, pi), &a) in spots.iter().zip(&agents) {
            set.matchings[mi][pi].payload = Payload::Agent(a);
        }
    }
}
