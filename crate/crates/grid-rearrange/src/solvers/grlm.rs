use crate::grid::{Instance, Plan};
use super::{MatchingMode, PhaseTrace, SolveError};
pub fn solve_grlm(_i: &Instance, _m: MatchingMode) -> Result<(Plan, PhaseTrace), SolveError> { unimplemented!() }
