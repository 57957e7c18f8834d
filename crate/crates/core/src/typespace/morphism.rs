use std::fmt;

use crate::measure::preimage;

use super::{SpaceError, TypeSpace};

/// Outcome of a type-morphism check; carries the first counterexample when
/// the map fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MorphismReport {
    Morphism,
    NotMeasurable { target_atom: usize },
    ThetaMismatch { state: String },
    BeliefMismatch { player: String, state: String, event_atom: usize },
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        matches!(self, MorphismReport::Morphism)
    }
}

impl fmt::Display for MorphismReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismReport::Morphism => write!(f, "type morphism"),
            MorphismReport::NotMeasurable { target_atom } => {
                write!(f, "preimage of target atom #{target_atom} not measurable")
            }
            MorphismReport::ThetaMismatch { state } => {
                write!(f, "theta not preserved at state {state}")
            }
            MorphismReport::BeliefMismatch { player, state, event_atom } => write!(
                f,
                "belief condition fails for player {player} at state {state} on target atom #{event_atom}"
            ),
        }
    }
}

fn check_compatible(source: &TypeSpace, target: &TypeSpace) -> Result<(), SpaceError> {
    if source.players() != target.players() || source.nature() != target.nature() {
        return Err(SpaceError::IncompatibleSpaces);
    }
    Ok(())
}

fn check_total(source: &TypeSpace, target: &TypeSpace, map: &[u32]) -> Result<(), SpaceError> {
    if map.len() != source.state_count() as usize
        || map.iter().any(|&v| v >= target.state_count())
    {
        return Err(SpaceError::BadStateMap);
    }
    Ok(())
}

/// Checks whether `map` is a type morphism from `source` to `target`:
/// measurable, commuting with θ, and satisfying the belief condition
/// `T_i(f(m))(E) = T'_i(m)(f⁻¹(E))` for every member E.
///
/// Both sides of the belief condition are additive in E, so equality on the
/// target field's atoms settles every member.
pub fn is_type_morphism(
    source: &TypeSpace,
    target: &TypeSpace,
    map: &[u32],
) -> Result<MorphismReport, SpaceError> {
    check_compatible(source, target)?;
    check_total(source, target, map)?;
    let src_n = source.state_count();

    // Measurability.
    for (idx, atom) in target.field().atoms().iter().enumerate() {
        if !source.field().is_member(&preimage(map, src_n, atom)) {
            return Ok(MorphismReport::NotMeasurable { target_atom: idx });
        }
    }
    // θ commutation.
    for m in 0..src_n {
        let src_point = &source.nature().points()[source.theta(m) as usize];
        let tgt_point = &target.nature().points()[target.theta(map[m as usize]) as usize];
        if src_point != tgt_point {
            return Ok(MorphismReport::ThetaMismatch { state: source.states()[m as usize].clone() });
        }
    }
    // Belief condition on target atoms.
    for player in source.players() {
        for m in 0..src_n {
            let image_measure = target.belief(player, map[m as usize])?;
            let source_measure = source.belief(player, m)?;
            for (idx, atom) in target.field().atoms().iter().enumerate() {
                let pre = preimage(map, src_n, atom);
                let lhs = image_measure.measure_of(atom).expect("atom is a member");
                let rhs = source_measure.measure_of(&pre).expect("preimage checked measurable");
                if lhs != rhs {
                    return Ok(MorphismReport::BeliefMismatch {
                        player: player.0.clone(),
                        state: source.states()[m as usize].clone(),
                        event_atom: idx,
                    });
                }
            }
        }
    }
    Ok(MorphismReport::Morphism)
}

/// A type isomorphism is a bijective type morphism whose inverse is also a
/// type morphism.
pub fn is_type_isomorphism(
    source: &TypeSpace,
    target: &TypeSpace,
    map: &[u32],
) -> Result<bool, SpaceError> {
    check_compatible(source, target)?;
    check_total(source, target, map)?;
    if source.state_count() != target.state_count() {
        return Ok(false);
    }
    let n = source.state_count() as usize;
    let mut inverse = vec![u32::MAX; n];
    for (m, &img) in map.iter().enumerate() {
        if inverse[img as usize] != u32::MAX {
            return Ok(false); // not injective
        }
        inverse[img as usize] = m as u32;
    }
    Ok(is_type_morphism(source, target, map)?.holds()
        && is_type_morphism(target, source, &inverse)?.holds())
}

/// Brute-force enumeration of all type morphisms from `source` to `target`,
/// in lexicographic order of the state map.
///
/// Candidates are restricted per state to θ-compatible targets; a morphism
/// commutes with θ pointwise, so the restriction discards no morphism. The
/// product of candidate counts must stay within `budget`.
pub fn enumerate_morphisms(
    source: &TypeSpace,
    target: &TypeSpace,
    budget: u128,
) -> Result<Vec<Vec<u32>>, SpaceError> {
    check_compatible(source, target)?;
    let src_n = source.state_count() as usize;
    let mut candidates: Vec<Vec<u32>> = Vec::with_capacity(src_n);
    for m in 0..src_n {
        let src_point = &source.nature().points()[source.theta(m as u32) as usize];
        let opts: Vec<u32> = (0..target.state_count())
            .filter(|&t| &target.nature().points()[target.theta(t) as usize] == src_point)
            .collect();
        candidates.push(opts);
    }
    let mut total: u128 = 1;
    for c in &candidates {
        total = total.saturating_mul(c.len() as u128);
        if total > budget {
            return Err(SpaceError::BudgetExceeded(total, budget));
        }
    }
    let mut found = Vec::new();
    let mut current = vec![0u32; src_n];
    enumerate_rec(source, target, &candidates, 0, &mut current, &mut found)?;
    Ok(found)
}

fn enumerate_rec(
    source: &TypeSpace,
    target: &TypeSpace,
    candidates: &[Vec<u32>],
    depth: usize,
    current: &mut Vec<u32>,
    found: &mut Vec<Vec<u32>>,
) -> Result<(), SpaceError> {
    if depth == candidates.len() {
        if is_type_morphism(source, target, current)?.holds() {
            found.push(current.clone());
        }
        return Ok(());
    }
    for &cand in &candidates[depth] {
        current[depth] = cand;
        enumerate_rec(source, target, candidates, depth + 1, current, found)?;
    }
    Ok(())
}
