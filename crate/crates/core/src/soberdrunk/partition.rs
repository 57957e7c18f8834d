use crate::set::ElemSet;

use super::ordinal::{Ordinal, Parity};
use super::state::{lambda_parity, restrict, Coin, LevelStates, WState, AB};
use super::SoberDrunkError;

/// Membership in player `i`'s information block `P_i(w)`: states the player
/// cannot distinguish from `w`.
///
/// `v` belongs to the block iff
/// - `v_i = w_i` (the player's own record matches exactly),
/// - `w_i(0) = 1` forces `v_0 = w_0` (nature anchored),
/// - `w_i(β+1) = 1` forces `v_j(β) = w_j(β)` for every successor position
///   below the level (opponent bit anchored),
/// - `w_i(λ) = 1` forces equal λ-parity of the opponent records for every
///   limit position λ below the level.
pub fn partition_contains(i: AB, w: &WState, v: &WState) -> Result<bool, SoberDrunkError> {
    if w.level().is_zero() {
        return Err(SoberDrunkError::LevelZero);
    }
    if v.level() != w.level() {
        return Err(SoberDrunkError::OutOfRange(
            v.level().to_string(),
            "=",
            w.level().to_string(),
        ));
    }
    let j = i.other();
    if v.record(i) != w.record(i) {
        return Ok(false);
    }
    for position in w.record(i).support() {
        if position.is_zero() {
            if v.coin() != w.coin() {
                return Ok(false);
            }
        } else if position.is_limit() {
            if lambda_parity(v.record(j), position)? != lambda_parity(w.record(j), position)? {
                return Ok(false);
            }
        } else {
            let beta = position.pred().expect("successor");
            if v.bit(j, &beta) != w.bit(j, &beta) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Enumerates `P_i(w)` inside a finite level.
pub fn partition_block(
    i: AB,
    w: &WState,
    level: &LevelStates,
) -> Result<Vec<WState>, SoberDrunkError> {
    let mut block = Vec::new();
    for v in level.states() {
        if partition_contains(i, w, v)? {
            block.push(v.clone());
        }
    }
    Ok(block)
}

/// `P_i(w)` as an index set over a finite level.
pub fn partition_block_set(
    i: AB,
    w: &WState,
    level: &LevelStates,
) -> Result<ElemSet, SoberDrunkError> {
    let mut set = ElemSet::empty(level.len());
    for (idx, v) in level.states().iter().enumerate() {
        if partition_contains(i, w, v)? {
            set.insert(idx as u32);
        }
    }
    Ok(set)
}

/// A cylinder event over a record space, determined by one coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CylinderEvent {
    /// `[X_0 = coin]`.
    Nature(Coin),
    /// `[X_i(position) = value]`.
    Bit { player: AB, position: Ordinal, value: bool },
    /// `[λ-par(X_i) = parity]` for a limit ordinal λ.
    Parity { player: AB, limit: Ordinal, parity: Parity },
}

impl CylinderEvent {
    /// Membership of a state; the state's level must dominate the indices.
    pub fn contains(&self, w: &WState) -> Result<bool, SoberDrunkError> {
        match self {
            CylinderEvent::Nature(coin) => Ok(w.coin() == *coin),
            CylinderEvent::Bit { player, position, value } => {
                if position >= w.level() {
                    return Err(SoberDrunkError::OutOfRange(
                        position.to_string(),
                        "<",
                        w.level().to_string(),
                    ));
                }
                Ok(w.bit(*player, position) == *value)
            }
            CylinderEvent::Parity { player, limit, parity } => {
                if !limit.is_limit() {
                    return Err(SoberDrunkError::NotALimit(limit.to_string()));
                }
                if limit > w.level() {
                    return Err(SoberDrunkError::OutOfRange(
                        limit.to_string(),
                        "<=",
                        w.level().to_string(),
                    ));
                }
                Ok(lambda_parity(w.record(*player), limit)? == *parity)
            }
        }
    }
}

/// The cylinder event at a finite level, as an index set.
pub fn cylinder_event(
    event: &CylinderEvent,
    level: &LevelStates,
) -> Result<ElemSet, SoberDrunkError> {
    let mut set = ElemSet::empty(level.len());
    for (idx, w) in level.states().iter().enumerate() {
        if event.contains(w)? {
            set.insert(idx as u32);
        }
    }
    Ok(set)
}

/// The restriction map between two finite levels, as an index map suitable
/// for measure pullbacks.
pub fn restriction_map(
    from: &LevelStates,
    to: &LevelStates,
) -> Result<Vec<u32>, SoberDrunkError> {
    let beta = Ordinal::nat(to.level());
    from.states()
        .iter()
        .map(|w| Ok(to.index_of(&restrict(w, &beta)?)))
        .collect()
}
