use crate::rat::Rat;
use crate::set::ElemSet;
use crate::typespace::{validate, TypeSpace};

use super::UniversalError;

/// The partition-refinement tower of a type space.
///
/// `partitions[0]` is the kernel of θ; `partitions[d+1]` refines
/// `partitions[d]` by exact equality of every player's believed mass on
/// every depth-`d` block. The tower is computed to its fixpoint; the last
/// entry is the stable partition. Blocks are ordered by minimal state.
#[derive(Debug, Clone)]
pub struct RefinementTower {
    partitions: Vec<Vec<ElemSet>>,
}

impl RefinementTower {
    /// Blocks at depth `d`; depths past the stabilization index saturate.
    pub fn blocks_at(&self, d: usize) -> &[ElemSet] {
        let d = d.min(self.stabilization_index());
        &self.partitions[d]
    }

    pub fn partitions(&self) -> &[Vec<ElemSet>] {
        &self.partitions
    }

    /// d*: the first depth whose refinement step changes nothing.
    pub fn stabilization_index(&self) -> usize {
        self.partitions.len() - 1
    }

    /// Index of the block containing `state` at depth `d`.
    pub fn block_index_of(&self, d: usize, state: u32) -> usize {
        self.blocks_at(d)
            .iter()
            .position(|b| b.contains(state))
            .expect("partitions cover all states")
    }
}

/// Runs partition refinement to its fixpoint.
///
/// Comparing masses on blocks only (rather than on all block unions) is
/// enough: masses are finitely additive, so equality on blocks implies
/// equality on every union of blocks.
pub fn refine(space: &TypeSpace) -> Result<RefinementTower, UniversalError> {
    if !validate(space).is_valid() {
        return Err(UniversalError::InvalidSpace);
    }
    let n = space.state_count();
    // Depth 0: kernel of θ.
    let assignment = group_by(n, |m| (space.theta(m), Vec::new()));
    let mut partitions = vec![blocks_of(&assignment, n)];
    loop {
        let prev_blocks = partitions.last().unwrap().clone();
        let block_of = |m: u32| prev_blocks.iter().position(|b| b.contains(m)).unwrap() as u32;
        let assignment = group_by(n, |m| {
            let mut masses = Vec::with_capacity(space.players().len() * prev_blocks.len());
            for player in space.players() {
                let measure = space.belief(player, m).expect("player known");
                for block in &prev_blocks {
                    masses.push(measure.measure_of(block).expect("blocks are members"));
                }
            }
            (block_of(m), masses)
        });
        let new_blocks = blocks_of(&assignment, n);
        if new_blocks == *partitions.last().unwrap() {
            break;
        }
        partitions.push(new_blocks);
    }
    Ok(RefinementTower { partitions })
}

fn group_by<F: Fn(u32) -> (u32, Vec<Rat>)>(n: u32, key: F) -> Vec<u32> {
    let mut keyed: Vec<(u32, (u32, Vec<Rat>))> = (0..n).map(|m| (m, key(m))).collect();
    keyed.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut assignment = vec![0u32; n as usize];
    let mut next_id = 0u32;
    for i in 0..keyed.len() {
        if i > 0 && keyed[i].1 != keyed[i - 1].1 {
            next_id += 1;
        }
        assignment[keyed[i].0 as usize] = next_id;
    }
    assignment
}

/// Blocks of an assignment vector, ordered by minimal state.
fn blocks_of(assignment: &[u32], n: u32) -> Vec<ElemSet> {
    let count = assignment.iter().max().map_or(0, |&m| m + 1);
    let mut blocks = vec![ElemSet::empty(n); count as usize];
    for (m, &b) in assignment.iter().enumerate() {
        blocks[b as usize].insert(m as u32);
    }
    blocks.sort_by_key(|b| b.min_elem().unwrap());
    blocks
}
