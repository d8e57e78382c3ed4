use crate::grid::{Instance, Plan};
use super::{MatchingMode, SolveError};
pub fn solve_arbitrary_half(_i: &Instance, _m: MatchingMode) -> Result<Plan, SolveError> { unimplemented!() }
