//! The two-player sober-drunk record spaces: ordinals in Cantor normal
//! form, records and states, the information partitions, the inductive
//! belief construction at finite levels, the bit-expression families and
//! the depth-separation demonstration, plus the combinatorial witness
//! oracles valid at transfinite levels.

mod beliefs;
mod exprs;
mod ordinal;
mod partition;
mod state;
mod witness;

pub use beliefs::{
    build_beliefs, pad_with_point_mass_players, soberdrunk_space, space_from_tower, BeliefTower,
};
pub use exprs::{nature_exprs, bit_expr_corpus, bit_expr, separation_demo, SeparationReport};
pub use ordinal::{ord_parity, Ordinal, Parity};
pub use partition::{
    cylinder_event, partition_block, partition_block_set, partition_contains, restriction_map,
    CylinderEvent,
};
pub use state::{
    enumerate_w, lambda_parity, o_lambda, restrict, state_name, Coin, LevelStates, Record, WState,
    AB,
};
pub use witness::{
    block_splice_witness, parity_flip_witness, bit_flip_witness, block_cover_check, cylinder_cover_check,
    cylinder_cover_check_at_limit, region_of, Region,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SoberDrunkError {
    #[error("level budget exceeded: 2^(2n+1) = {0} states (budget {1})")]
    BudgetExceeded(u64, u64),
    #[error("{0} is not a limit ordinal")]
    NotALimit(String),
    #[error("ordinal {0} out of range (must be {1} {2})")]
    OutOfRange(String, &'static str, String),
    #[error("operation needs level > 0")]
    LevelZero,
    #[error("construction starts at level 1")]
    LevelTooSmall,
    #[error("internal construction invariant failed: {0}")]
    Internal(String),
}
