use std::collections::BTreeMap;
use std::sync::Arc;

use crate::measure::{glue_chain, horn_tarski_extend, los_marczewski_extend};
use crate::measure::{FAMeasure, MeasureChain, SetField};
use crate::rat::{one, rat};
use crate::set::ElemSet;
use crate::typespace::{Player, TypeSpace};

use super::ordinal::Ordinal;
use super::partition::{cylinder_event, partition_contains, restriction_map, CylinderEvent};
use super::state::{enumerate_w, state_name, LevelStates, AB};
use super::SoberDrunkError;

/// The finished belief assignment at a finite level: per player, one
/// powerset measure per information block, shared across the block.
pub struct BeliefTower {
    states: Arc<LevelStates>,
    /// Per player: state index → measure index.
    assignment: [Vec<u32>; 2],
    /// Per player: the block measures on the powerset of the level.
    measures: [Vec<Arc<FAMeasure>>; 2],
}

impl BeliefTower {
    pub fn states(&self) -> &Arc<LevelStates> {
        &self.states
    }

    pub fn measure(&self, player: AB, state_index: u32) -> &Arc<FAMeasure> {
        &self.measures[player.index()][self.assignment[player.index()][state_index as usize] as usize]
    }

    pub fn measure_count(&self, player: AB) -> usize {
        self.measures[player.index()].len()
    }
}

/// One level of the inductive construction: block-constant measures on the
/// restricted fields `[preimages of the powerset one level down, block]`.
struct Level {
    states: Arc<LevelStates>,
    assignment: [Vec<u32>; 2],
    measures: [Vec<FAMeasure>; 2],
}

/// Per-state block assignment plus (representative index, members) per
/// block.
type BlockGrouping = (Vec<u32>, Vec<(u32, ElemSet)>);

/// Groups a level's states into information blocks per player, in canonical
/// state order (the first state encountered in a block is its minimal
/// representative).
fn blocks_of_level(i: AB, states: &LevelStates) -> Result<BlockGrouping, SoberDrunkError> {
    let n = states.len();
    let mut assignment = vec![u32::MAX; n as usize];
    let mut blocks: Vec<(u32, ElemSet)> = Vec::new();
    for rep_idx in 0..n {
        if assignment[rep_idx as usize] != u32::MAX {
            continue;
        }
        let rep = states.state(rep_idx);
        let block_id = blocks.len() as u32;
        let mut members = ElemSet::empty(n);
        for v_idx in rep_idx..n {
            if assignment[v_idx as usize] == u32::MAX
                && partition_contains(i, rep, states.state(v_idx))?
            {
                assignment[v_idx as usize] = block_id;
                members.insert(v_idx);
            }
        }
        blocks.push((rep_idx, members));
    }
    Ok((assignment, blocks))
}

fn internal(e: impl std::fmt::Display) -> SoberDrunkError {
    SoberDrunkError::Internal(e.to_string())
}

/// Builds the level-1 measures directly: the nature fiber gets mass one or
/// one half according to the player's bit at position 0, then the block is
/// pushed to mass one.
fn build_level_one(budget: u64) -> Result<Level, SoberDrunkError> {
    let states = Arc::new(enumerate_w(1, budget)?);
    let universe = states.len();
    let heads = cylinder_event(&CylinderEvent::Nature(super::state::Coin::H), &states)?;
    let fiber_field = Arc::new(
        SetField::from_atoms(universe, vec![heads.clone(), heads.complement()])
            .map_err(internal)?,
    );
    let mut level = Level {
        states: states.clone(),
        assignment: [Vec::new(), Vec::new()],
        measures: [Vec::new(), Vec::new()],
    };
    for i in AB::BOTH {
        let (assignment, blocks) = blocks_of_level(i, &states)?;
        let mut measures = Vec::with_capacity(blocks.len());
        for (rep_idx, members) in &blocks {
            let rep = states.state(*rep_idx);
            let own_coin = cylinder_event(&CylinderEvent::Nature(rep.coin()), &states)?;
            let coin_mass =
                if rep.bit(i, &Ordinal::zero()) { one() } else { rat(1, 2) };
            // Weights on the two fibers, in atom order.
            let weights = fiber_field
                .atoms()
                .iter()
                .map(|atom| {
                    if *atom == own_coin {
                        coin_mass.clone()
                    } else {
                        one() - &coin_mass
                    }
                })
                .collect();
            let base = FAMeasure::new(fiber_field.clone(), weights).map_err(internal)?;
            let measure = los_marczewski_extend(&base, members, &one()).map_err(internal)?;
            measures.push(measure);
        }
        level.assignment[i.index()] = assignment;
        level.measures[i.index()] = measures;
    }
    Ok(level)
}

/// Builds level α from level α−1 (α ≥ 2), per block: pull the previous
/// measure back along the restriction, push the block to mass one, then pin
/// the newly anchored opponent bit — to one when the player's top record
/// position is set (automatic through the block), to one half otherwise —
/// and finally extend to the full field over the one-level-down powerset
/// preimages.
fn build_next_level(prev: &Level, alpha: u32, budget: u64) -> Result<Level, SoberDrunkError> {
    let states = Arc::new(enumerate_w(alpha, budget)?);
    let universe = states.len();
    let proj = restriction_map(&states, &prev.states)?;
    // Fibers of the restriction: the preimage atoms of the powerset one
    // level down.
    let mut fiber_atoms = vec![ElemSet::empty(universe); prev.states.len() as usize];
    for (idx, &low) in proj.iter().enumerate() {
        fiber_atoms[low as usize].insert(idx as u32);
    }
    let fiber_field = SetField::from_atoms(universe, fiber_atoms).map_err(internal)?;

    let top = Ordinal::nat(alpha - 1);
    let anchored_bit = top.pred().expect("alpha >= 2 has a successor top position");

    let mut level = Level {
        states: states.clone(),
        assignment: [Vec::new(), Vec::new()],
        measures: [Vec::new(), Vec::new()],
    };
    for i in AB::BOTH {
        let j = i.other();
        let (assignment, blocks) = blocks_of_level(i, &states)?;
        let mut measures = Vec::with_capacity(blocks.len());
        for (rep_idx, members) in &blocks {
            let rep = states.state(*rep_idx);
            let prev_idx = proj[*rep_idx as usize];
            let prev_measure = &prev.measures[i.index()]
                [prev.assignment[i.index()][prev_idx as usize] as usize];
            // Pull the previous level's measure back along the restriction.
            let mut projections = BTreeMap::new();
            projections.insert((0usize, 1usize), proj.clone());
            let chain = MeasureChain {
                levels: vec![prev_measure.clone()],
                top_universe: universe,
                projections,
            };
            let pulled = glue_chain(&chain).map_err(internal)?;
            // The block reaches outer measure one, so it can be pushed to
            // mass one exactly.
            let with_block = los_marczewski_extend(&pulled, members, &one()).map_err(internal)?;
            // The newly decidable opponent bit.
            let new_anchor = rep.bit(i, &top);
            let opponent_event = cylinder_event(
                &CylinderEvent::Bit {
                    player: j,
                    position: anchored_bit.clone(),
                    value: rep.bit(j, &anchored_bit),
                },
                &states,
            )?;
            let pinned = if new_anchor {
                // The block forces the opponent bit; its event already has
                // mass one by inclusion.
                with_block
            } else {
                los_marczewski_extend(&with_block, &opponent_event, &rat(1, 2))
                    .map_err(internal)?
            };
            let target = Arc::new(fiber_field.extend_by_set(members).map_err(internal)?);
            let measure = horn_tarski_extend(&pinned, target).map_err(internal)?;
            measures.push(measure);
        }
        level.assignment[i.index()] = assignment;
        level.measures[i.index()] = measures;
    }
    Ok(level)
}

/// Runs the inductive construction up to level `n` and extends every block
/// measure to the full powerset. The budget bounds the state count
/// 2^(2n+1).
pub fn build_beliefs(n: u32, budget: u64) -> Result<BeliefTower, SoberDrunkError> {
    if n == 0 {
        return Err(SoberDrunkError::LevelTooSmall);
    }
    let mut level = build_level_one(budget)?;
    for alpha in 2..=n {
        level = build_next_level(&level, alpha, budget)?;
    }
    let powerset = Arc::new(SetField::powerset(level.states.len()));
    let mut tower = BeliefTower {
        states: level.states.clone(),
        assignment: level.assignment.clone(),
        measures: [Vec::new(), Vec::new()],
    };
    for i in AB::BOTH {
        tower.measures[i.index()] = level.measures[i.index()]
            .iter()
            .map(|m| horn_tarski_extend(m, powerset.clone()).map(Arc::new).map_err(internal))
            .collect::<Result<_, _>>()?;
    }
    Ok(tower)
}

/// Assembles the level-n record space as a type space: powerset field, θ
/// the coin value, and the constructed beliefs.
pub fn soberdrunk_space(n: u32, budget: u64) -> Result<TypeSpace, SoberDrunkError> {
    let tower = build_beliefs(n, budget)?;
    space_from_tower(&tower)
}

/// Builds the type space from a finished belief tower, with the players
/// named `a` and `b` and nature points `h` and `t`.
pub fn space_from_tower(tower: &BeliefTower) -> Result<TypeSpace, SoberDrunkError> {
    let states = &tower.states;
    let names: Vec<String> = states.states().iter().map(state_name).collect();
    let field = tower.measures[0]
        .first()
        .map(|m| m.field().clone())
        .ok_or_else(|| SoberDrunkError::Internal("no measures".into()))?;
    let nature = crate::typespace::NatureSpace::with_points(&["h", "t"]).map_err(internal)?;
    let theta: Vec<u32> = states
        .states()
        .iter()
        .map(|w| match w.coin() {
            super::state::Coin::H => 0,
            super::state::Coin::T => 1,
        })
        .collect();
    let players = vec![Player::new("a"), Player::new("b")];
    let mut beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>> = BTreeMap::new();
    for (i, player) in AB::BOTH.into_iter().zip(players.iter()) {
        let per_state: Vec<Arc<FAMeasure>> =
            (0..states.len()).map(|m| tower.measure(i, m).clone()).collect();
        beliefs.insert(player.clone(), per_state);
    }
    TypeSpace::new(names, field, nature, theta, players, beliefs).map_err(internal)
}

/// Adds players beyond a and b to a record space, each with the point mass
/// at every state as their type. Point masses are introspective and the
/// field is the powerset, so validity is preserved.
pub fn pad_with_point_mass_players(
    space: &TypeSpace,
    extra: &[Player],
) -> Result<TypeSpace, SoberDrunkError> {
    let field = space.field().clone();
    let mut players = space.players().to_vec();
    let mut beliefs = space.beliefs().clone();
    for player in extra {
        if players.contains(player) {
            return Err(SoberDrunkError::Internal(format!("player {player} already present")));
        }
        let per_state: Vec<Arc<FAMeasure>> = (0..space.state_count())
            .map(|m| FAMeasure::point_mass(m, field.clone()).map(Arc::new).map_err(internal))
            .collect::<Result<_, _>>()?;
        players.push(player.clone());
        beliefs.insert(player.clone(), per_state);
    }
    TypeSpace::new(
        space.states().to_vec(),
        field,
        space.nature().clone(),
        space.theta_map().to_vec(),
        players,
        beliefs,
    )
    .map_err(internal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;
    use crate::soberdrunk::state::{Coin, WState};
    use crate::typespace::validate;

    fn w1(coin: Coin, a0: bool, b0: bool) -> WState {
        let len = Ordinal::nat(1);
        let rec = |bit: bool| {
            if bit {
                super::super::state::Record::new(len.clone(), [Ordinal::zero()]).unwrap()
            } else {
                super::super::state::Record::empty(len.clone())
            }
        };
        WState::new(coin, rec(a0), rec(b0)).unwrap()
    }

    fn mass(tower: &BeliefTower, i: AB, w: &WState, event: &CylinderEvent) -> Rat {
        let idx = tower.states().index_of(w);
        let set = cylinder_event(event, tower.states()).unwrap();
        tower.measure(i, idx).measure_of(&set).unwrap()
    }

    #[test]
    fn level_one_nature_masses() {
        let tower = build_beliefs(1, 1 << 20).unwrap();
        // Anchored: the player's own bit at 0 is set.
        let anchored = w1(Coin::H, true, false);
        assert_eq!(mass(&tower, AB::A, &anchored, &CylinderEvent::Nature(Coin::H)), one());
        // Unanchored: mass 1/2.
        let blind = w1(Coin::H, false, false);
        assert_eq!(mass(&tower, AB::A, &blind, &CylinderEvent::Nature(Coin::H)), rat(1, 2));
        assert_eq!(mass(&tower, AB::A, &blind, &CylinderEvent::Nature(Coin::T)), rat(1, 2));
    }

    #[test]
    fn level_two_opponent_bit_masses() {
        let tower = build_beliefs(2, 1 << 20).unwrap();
        let len = Ordinal::nat(2);
        let rec = |positions: &[u32]| {
            super::super::state::Record::new(len.clone(), positions.iter().map(|&p| Ordinal::nat(p)))
                .unwrap()
        };
        // w_a(1) = 1 anchors the opponent's bit at 0.
        let anchored = WState::new(Coin::H, rec(&[1]), rec(&[0])).unwrap();
        let event = CylinderEvent::Bit { player: AB::B, position: Ordinal::zero(), value: true };
        assert_eq!(mass(&tower, AB::A, &anchored, &event), one());
        // w_a(1) = 0 leaves it fifty-fifty.
        let blind = WState::new(Coin::H, rec(&[0]), rec(&[0])).unwrap();
        assert_eq!(mass(&tower, AB::A, &blind, &event), rat(1, 2));
    }

    #[test]
    fn block_mass_is_one_and_constant() {
        let tower = build_beliefs(2, 1 << 20).unwrap();
        let states = tower.states().clone();
        for i in AB::BOTH {
            for (idx, w) in states.states().iter().enumerate() {
                let block =
                    super::super::partition::partition_block_set(i, w, &states).unwrap();
                let measure = tower.measure(i, idx as u32);
                assert_eq!(measure.measure_of(&block).unwrap(), one());
                // Constancy: every block member shares the measure.
                for v in block.iter() {
                    assert!(Arc::ptr_eq(measure, tower.measure(i, v)));
                }
            }
        }
    }

    #[test]
    fn spaces_validate() {
        for n in 1..=2 {
            let space = soberdrunk_space(n, 1 << 20).unwrap();
            assert_eq!(space.state_count() as u64, 1u64 << (2 * n + 1));
            let report = validate(&space);
            assert!(report.is_valid(), "n={n}: {report}");
        }
    }

    #[test]
    fn budget_and_level_errors() {
        assert!(matches!(build_beliefs(0, 100), Err(SoberDrunkError::LevelTooSmall)));
        assert!(matches!(build_beliefs(4, 100), Err(SoberDrunkError::BudgetExceeded(..))));
    }
}
