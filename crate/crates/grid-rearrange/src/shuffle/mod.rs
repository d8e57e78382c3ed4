//! Collision-free timed motion plans realizing arbitrary permutations along
//! rows and columns: optimal small-grid swap tables, odd-even parallel line
//! shuffles at full density, linear merge at half density, and highway
//! shuffles at one-third density.

pub mod cell;
pub mod highway;
pub mod linear_merge;
pub mod rowsort;
pub mod script;
pub mod swap_table;

pub use rowsort::{parallel_row_shuffle_full, strip_heights, window_schedule, BlockSize, ShuffleError};
pub use script::{compose_parallel_bands, Script, ScriptError};
pub use swap_table::{generate_swap_table, SwapPattern, SwapTable, SwapTableError, SwapTables};
