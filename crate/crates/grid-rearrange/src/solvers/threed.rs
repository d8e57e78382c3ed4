use crate::grid::{Instance, Plan};
use super::{MatchingMode, PhaseTrace, SolveError};
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeDBase { Grh, Grlm, Grm }
pub fn solve_3d(_i: &Instance, _b: ThreeDBase, _m: MatchingMode) -> Result<(Plan, PhaseTrace), SolveError> { unimplemented!() }
