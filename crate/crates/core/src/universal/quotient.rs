use std::collections::BTreeMap;
use std::sync::Arc;

use crate::measure::{FAMeasure, SetField};
use crate::typespace::{Player, TypeSpace};

use super::refine::{refine, RefinementTower};
use super::UniversalError;

/// The description quotient of a type space: one state per stable
/// refinement block, the powerset field, θ and the types induced along the
/// quotient map.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    space: TypeSpace,
    /// Original state index → quotient state index.
    map: Vec<u32>,
    tower: RefinementTower,
}

impl QuotientSpace {
    pub fn space(&self) -> &TypeSpace {
        &self.space
    }

    pub fn map(&self) -> &[u32] {
        &self.map
    }

    pub fn tower(&self) -> &RefinementTower {
        &self.tower
    }
}

/// Builds the quotient space on the stable partition.
///
/// Quotient states are named after each block's minimal original state.
/// The induced type of a block is the pushforward of any member's type
/// along the quotient map; all members must induce the same pushforward,
/// which is asserted rather than assumed.
pub fn quotient(space: &TypeSpace) -> Result<QuotientSpace, UniversalError> {
    let tower = refine(space)?;
    let blocks = tower.blocks_at(tower.stabilization_index()).to_vec();
    let n = space.state_count();
    let q_n = blocks.len() as u32;
    let mut map = vec![0u32; n as usize];
    for (b, block) in blocks.iter().enumerate() {
        for m in block.iter() {
            map[m as usize] = b as u32;
        }
    }
    let names: Vec<String> =
        blocks.iter().map(|b| space.states()[b.min_elem().unwrap() as usize].clone()).collect();
    let field = Arc::new(SetField::powerset(q_n));
    let theta: Vec<u32> =
        blocks.iter().map(|b| space.theta(b.min_elem().unwrap())).collect();
    let mut beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>> = BTreeMap::new();
    for player in space.players() {
        let mut per_block: Vec<Arc<FAMeasure>> = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let rep = block.min_elem().unwrap();
            let pushed = space
                .belief(player, rep)
                .expect("player known")
                .pushforward(&map, field.clone())
                .map_err(crate::typespace::SpaceError::Measure)?;
            // Well-definedness: every member of the block induces the same
            // pushforward.
            for m in block.iter().skip(1) {
                let other = space
                    .belief(player, m)
                    .expect("player known")
                    .pushforward(&map, field.clone())
                    .map_err(crate::typespace::SpaceError::Measure)?;
                if other != pushed {
                    return Err(UniversalError::IllDefinedQuotient);
                }
            }
            per_block.push(Arc::new(pushed));
        }
        beliefs.insert(player.clone(), per_block);
    }
    let q_space = TypeSpace::new(
        names,
        field,
        space.nature().clone(),
        theta,
        space.players().to_vec(),
        beliefs,
    )
    .map_err(UniversalError::Space)?;
    Ok(QuotientSpace { space: q_space, map, tower })
}

/// Helper: the union of original states mapping into a quotient event.
#[cfg(test)]
pub(crate) fn quotient_preimage(
    map: &[u32],
    n: u32,
    event: &crate::set::ElemSet,
) -> crate::set::ElemSet {
    let mut out = crate::set::ElemSet::empty(n);
    for (m, &b) in map.iter().enumerate() {
        if event.contains(b) {
            out.insert(m as u32);
        }
    }
    out
}
