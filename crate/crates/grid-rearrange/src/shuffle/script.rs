//! Synchronous motion scripts: the common currency of the shuffle
//! primitives. A script is a sequence of steps; each step moves a set of
//! agents along disjoint (from, to) pairs while everyone else rests.

use std::collections::{HashMap, HashSet};

use crate::grid::Vertex;

#[derive(Debug, Clone, Default)]
pub struct Script {
    pub steps: Vec<Vec<(Vertex, Vertex)>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ScriptError {
    #[error("step {step} moves from unoccupied vertex {vertex}")]
    UnoccupiedSource { step: usize, vertex: Vertex },
    #[error("bands {a} and {b} overlap at {vertex}")]
    OverlappingBands { a: usize, b: usize, vertex: Vertex },
}

impl Script {
    pub fn new() -> Self {
        Script::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push_step(&mut self, moves: Vec<(Vertex, Vertex)>) {
        self.steps.push(moves);
    }

    /// Sequential composition.
    pub fn append(&mut self, mut other: Script) {
        self.steps.append(&mut other.steps);
    }

    /// Pad with empty steps up to `len`.
    pub fn pad_to(&mut self, len: usize) {
        while self.steps.len() < len {
            self.steps.push(Vec::new());
        }
    }

    /// Remap every vertex, e.g. from strip-local to grid coordinates.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Script {
        Script {
            steps: self
                .steps
                .iter()
                .map(|step| step.iter().map(|&(a, b)| (f(a), f(b))).collect())
                .collect(),
        }
    }

    /// Replay the script on agent positions, producing dense per-agent paths
    /// of length `steps + 1`.
    pub fn apply(&self, positions: &[Vertex]) -> Result<Vec<Vec<Vertex>>, ScriptError> {
        let mut occupant: HashMap<Vertex, usize> =
            positions.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut paths: Vec<Vec<Vertex>> = positions.iter().map(|&v| vec![v]).collect();
        for (t, step) in self.steps.iter().enumerate() {
            let mut movers: Vec<(usize, Vertex)> = Vec::with_capacity(step.len());
            for &(from, to) in step {
                match occupant.get(&from) {
                    Some(&agent) => movers.push((agent, to)),
                    None => return Err(ScriptError::UnoccupiedSource { step: t, vertex: from }),
                }
            }
            for &(from, _) in step {
                occupant.remove(&from);
            }
            for &(agent, to) in &movers {
                occupant.insert(to, agent);
                paths[agent].push(to);
            }
            let moved: HashSet<usize> = movers.iter().map(|&(a, _)| a).collect();
            for (i, p) in paths.iter_mut().enumerate() {
                if !moved.contains(&i) {
                    let last = *p.last().unwrap();
                    p.push(last);
                }
            }
        }
        Ok(paths)
    }
}

/// Union of scripts running on vertex-disjoint bands, padded to the longest.
pub fn compose_parallel_bands(bands: &[(HashSet<Vertex>, Script)]) -> Result<Script, ScriptError> {
    for i in 0..bands.len() {
        for j in i + 1..bands.len() {
            if let Some(&v) = bands[i].0.intersection(&bands[j].0).next() {
                return Err(ScriptError::OverlappingBands { a: i, b: j, vertex: v });
            }
        }
    }
    let len = bands.iter().map(|(_, s)| s.len()).max().unwrap_or(0);
    let mut out = Script::new();
    for t in 0..len {
        let mut step = Vec::new();
        for (_, s) in bands {
            if t < s.len() {
                step.extend_from_slice(&s.steps[t]);
            }
        }
        out.push_step(step);
    }
    Ok(out)
}
