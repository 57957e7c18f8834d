use crate::typespace::{
    enumerate_morphisms, is_type_isomorphism, is_type_morphism, SpaceError, TypeSpace,
};

use super::fingerprint::fingerprint_table;
use super::quotient::quotient;
use super::UniversalError;

/// Checks that a type morphism preserves description fingerprints at every
/// depth up to `max_depth`: the image state carries the same token as the
/// source state. Errors if the map is not a morphism. Returns the first
/// failing (state, depth) as a witness.
pub fn check_morphism_preserves_descriptions(
    source: &TypeSpace,
    target: &TypeSpace,
    map: &[u32],
    max_depth: usize,
) -> Result<Result<(), (u32, usize)>, UniversalError> {
    let report = is_type_morphism(source, target, map)?;
    if !report.holds() {
        return Err(UniversalError::NotAMorphism(report.to_string()));
    }
    let src = fingerprint_table(source, max_depth)?;
    let tgt = fingerprint_table(target, max_depth)?;
    for d in 0..=max_depth {
        for m in 0..source.state_count() {
            if src.token(d, m) != tgt.token(d, map[m as usize]) {
                return Ok(Err((m, d)));
            }
        }
    }
    Ok(Ok(()))
}

/// For a target with pairwise distinct fingerprints, a type morphism must
/// send each state to the unique fingerprint match, so at most one morphism
/// can exist. This computes that candidate and checks it, without
/// enumerating the map space.
///
/// Returns `Ok(Some(map))` when the candidate exists and is a morphism,
/// `Ok(None)` when no morphism exists.
pub fn unique_morphism_via_fingerprints(
    source: &TypeSpace,
    target: &TypeSpace,
    depth: usize,
) -> Result<Option<Vec<u32>>, UniversalError> {
    let src = fingerprint_table(source, depth)?;
    let tgt = fingerprint_table(target, depth)?;
    if !tgt.injective_at(depth) {
        return Err(UniversalError::NotAMorphism(
            "target fingerprints are not pairwise distinct".into(),
        ));
    }
    let mut map = Vec::with_capacity(source.state_count() as usize);
    for m in 0..source.state_count() {
        let token = src.token(depth, m);
        match (0..target.state_count()).find(|&t| tgt.token(depth, t) == token) {
            Some(t) => map.push(t),
            None => return Ok(None),
        }
    }
    if is_type_morphism(source, target, &map)?.holds() {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Outcome of the terminality checks for one space.
#[derive(Debug, Clone)]
pub struct TerminalityReport {
    /// Exactly one morphism into the quotient exists and it is the quotient
    /// map.
    pub unique_morphism_is_quotient_map: bool,
    /// How many morphisms into the quotient were found.
    pub morphism_count: usize,
    /// The quotient of the quotient is type-isomorphic to the quotient.
    pub quotient_idempotent: bool,
    /// Per extra target with injective fingerprints: at most one morphism.
    pub extra_targets_at_most_one: Vec<bool>,
}

impl TerminalityReport {
    pub fn all_hold(&self) -> bool {
        self.unique_morphism_is_quotient_map
            && self.quotient_idempotent
            && self.extra_targets_at_most_one.iter().all(|&b| b)
    }
}

/// Verifies the finite shadow of terminality for `space`:
///
/// (a) exactly one type morphism from the space into its quotient exists
///     and equals the quotient map — by brute-force enumeration within
///     `budget`, otherwise via the fingerprint-determined candidate (sound
///     because morphisms preserve descriptions and the quotient's
///     fingerprints are pairwise distinct);
/// (b) the quotient of the quotient is type-isomorphic to the quotient;
/// (c) for each extra target whose fingerprints are pairwise distinct, at
///     most one morphism from the space into it exists.
pub fn check_terminality(
    space: &TypeSpace,
    extra_targets: &[&TypeSpace],
    budget: u128,
) -> Result<TerminalityReport, UniversalError> {
    let q = quotient(space)?;
    let depth = q.tower().stabilization_index();
    let (count, unique_is_q) = match enumerate_morphisms(space, q.space(), budget) {
        Ok(maps) => (maps.len(), maps.len() == 1 && maps[0] == q.map()),
        Err(SpaceError::BudgetExceeded(..)) => {
            match unique_morphism_via_fingerprints(space, q.space(), depth)? {
                Some(map) => (1, map == q.map()),
                None => (0, false),
            }
        }
        Err(e) => return Err(UniversalError::Space(e)),
    };

    // Idempotence: quotient twice, then transport along fingerprint matches.
    let qq = quotient(q.space())?;
    let iso = match unique_morphism_via_fingerprints(
        q.space(),
        qq.space(),
        qq.tower().stabilization_index().max(depth),
    )? {
        Some(map) => is_type_isomorphism(q.space(), qq.space(), &map)?,
        None => false,
    };

    let mut extras = Vec::new();
    for target in extra_targets {
        let tgt_table = fingerprint_table(target, depth)?;
        if !tgt_table.injective_at(depth.min(tgt_table.max_depth())) {
            extras.push(false);
            continue;
        }
        let at_most_one = match enumerate_morphisms(space, target, budget) {
            Ok(maps) => maps.len() <= 1,
            Err(SpaceError::BudgetExceeded(..)) => {
                unique_morphism_via_fingerprints(space, target, depth).is_ok()
            }
            Err(e) => return Err(UniversalError::Space(e)),
        };
        extras.push(at_most_one);
    }

    Ok(TerminalityReport {
        unique_morphism_is_quotient_map: unique_is_q,
        morphism_count: count,
        quotient_idempotent: iso,
        extra_targets_at_most_one: extras,
    })
}
