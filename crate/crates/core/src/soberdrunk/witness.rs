use crate::set::ElemSet;

use super::ordinal::{ord_parity, Ordinal};
use super::partition::{partition_block_set, partition_contains};
use super::state::{enumerate_w, lambda_parity, o_lambda, restrict, LevelStates, WState, AB};
use super::SoberDrunkError;

/// Position of a state relative to a block and its one-level-down
/// restriction: inside the block, inside the restricted block's preimage
/// but outside the block, or outside both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Block,
    RestrictedOnly,
    Outside,
}

/// Classifies `v` relative to `P_i(w)` and `π_γ⁻¹(P_i(w↾γ))`.
pub fn region_of(
    i: AB,
    w: &WState,
    v: &WState,
    gamma: &Ordinal,
) -> Result<Region, SoberDrunkError> {
    if partition_contains(i, w, v)? {
        return Ok(Region::Block);
    }
    let w_low = restrict(w, gamma)?;
    let v_low = restrict(v, gamma)?;
    if partition_contains(i, &w_low, &v_low)? {
        Ok(Region::RestrictedOnly)
    } else {
        Ok(Region::Outside)
    }
}

/// Extends `v`'s data at and above `gamma` with `w`'s so that the result
/// lies in `P_i(w)` while agreeing with `v` below `gamma`.
///
/// Precondition: `v↾(γ+1) ∈ P_i(w↾(γ+1))`. Below a level with limit
/// anchors the direct combination may miss an anchored parity; a bounded
/// repair pass then places a single extra bit per anchored limit, and the
/// result is always re-verified against the membership predicate.
pub fn block_splice_witness(
    i: AB,
    w: &WState,
    v: &WState,
    gamma: &Ordinal,
) -> Result<WState, SoberDrunkError> {
    if v.level() != w.level() {
        return Err(SoberDrunkError::OutOfRange(
            v.level().to_string(),
            "=",
            w.level().to_string(),
        ));
    }
    if &gamma.succ() > w.level() {
        return Err(SoberDrunkError::OutOfRange(
            gamma.to_string(),
            "<",
            w.level().to_string(),
        ));
    }
    let precondition = partition_contains(
        i,
        &restrict(w, &gamma.succ())?,
        &restrict(v, &gamma.succ())?,
    )?;
    if !precondition {
        return Err(SoberDrunkError::Internal(
            "precondition v|(g+1) in P_i(w|(g+1)) fails".into(),
        ));
    }
    let j = i.other();
    // Own record from w, opponent record from v below γ and from w above.
    let u_j_support = v
        .record(j)
        .support()
        .iter()
        .filter(|p| *p < gamma)
        .chain(w.record(j).support().iter().filter(|p| *p >= gamma))
        .cloned();
    let u_j = super::state::Record::new(w.level().clone(), u_j_support)?;
    let (r_a, r_b) = match i {
        AB::A => (w.record(AB::A).clone(), u_j),
        AB::B => (u_j, w.record(AB::B).clone()),
    };
    let mut u = WState::new(v.coin(), r_a, r_b)?;

    if !partition_contains(i, w, &u)? {
        // Repair anchored limit parities in increasing order.
        let mut floor = gamma.clone();
        for limit in w.record(i).support().iter().filter(|p| p.is_limit() && *p > gamma) {
            let want = lambda_parity(w.record(j), limit)?;
            if lambda_parity(u.record(j), limit)? == want {
                continue;
            }
            let base = [
                floor.clone(),
                o_lambda(u.record(j), limit)?,
                o_lambda(w.record(j), limit)?,
            ]
            .into_iter()
            .max()
            .unwrap();
            let mut placed = false;
            let mut xi = base;
            for _ in 0..16 {
                let anchored = w.record(i).value(&xi.succ());
                if &xi < limit && ord_parity(&xi.succ()) == want && !anchored {
                    u = u.with_bit(j, &xi, true);
                    placed = true;
                    floor = limit.clone();
                    break;
                }
                xi = xi.succ();
            }
            if !placed {
                return Err(SoberDrunkError::Internal(
                    "parity repair found no admissible position".into(),
                ));
            }
        }
        if !partition_contains(i, w, &u)? {
            return Err(SoberDrunkError::Internal("witness fails the block predicate".into()));
        }
    }
    debug_assert_eq!(restrict(&u, gamma)?, restrict(v, gamma)?);
    Ok(u)
}

/// The parity-flip witness at a successor-of-limit level: for `v` in one of
/// the three regions relative to the block of `w`, a state in the same
/// region with the opposite λ-parity of the opponent record, agreeing with
/// `v` below `beta`.
///
/// Preconditions: the level is λ+1 with λ a limit, `w_i(λ) = 0`, and
/// `beta < λ`. The witness sets one opponent bit at a position above
/// `max{β, o^λ(v_i), o^λ(v_j)}` chosen so the parity flips.
pub fn parity_flip_witness(
    i: AB,
    w: &WState,
    v: &WState,
    beta: &Ordinal,
) -> Result<WState, SoberDrunkError> {
    let Some(lambda) = w.level().pred() else {
        return Err(SoberDrunkError::NotALimit(format!("{} - 1", w.level())));
    };
    if !lambda.is_limit() {
        return Err(SoberDrunkError::NotALimit(lambda.to_string()));
    }
    if w.bit(i, &lambda) {
        return Err(SoberDrunkError::Internal("lemma requires w_i(lambda) = 0".into()));
    }
    if beta >= &lambda {
        return Err(SoberDrunkError::OutOfRange(beta.to_string(), "<", lambda.to_string()));
    }
    if v.level() != w.level() {
        return Err(SoberDrunkError::OutOfRange(
            v.level().to_string(),
            "=",
            w.level().to_string(),
        ));
    }
    let j = i.other();
    let current = lambda_parity(v.record(j), &lambda)?;
    let mut xi = [
        beta.clone(),
        o_lambda(v.record(i), &lambda)?,
        o_lambda(v.record(j), &lambda)?,
    ]
    .into_iter()
    .max()
    .unwrap();
    if ord_parity(&xi.succ()) == current {
        xi = xi.succ();
    }
    debug_assert!(xi < lambda);
    let u = v.with_bit(j, &xi, true);
    debug_assert_eq!(lambda_parity(u.record(j), &lambda)?, current.flip());
    Ok(u)
}

/// The bit-flip witness at a double-successor level: for `v` in one of the
/// three regions relative to the block of `w`, the state with the opponent
/// bit at `beta` flipped, agreeing with `v` below `beta`.
///
/// Preconditions: the level is (β+1)+1 and `w_i(β+1) = 0`.
pub fn bit_flip_witness(
    i: AB,
    w: &WState,
    v: &WState,
    beta: &Ordinal,
) -> Result<WState, SoberDrunkError> {
    if &beta.plus_nat(2) != w.level() {
        return Err(SoberDrunkError::OutOfRange(
            beta.to_string(),
            "=",
            format!("{} - 2", w.level()),
        ));
    }
    if w.bit(i, &beta.succ()) {
        return Err(SoberDrunkError::Internal("lemma requires w_i(beta+1) = 0".into()));
    }
    if v.level() != w.level() {
        return Err(SoberDrunkError::OutOfRange(
            v.level().to_string(),
            "=",
            w.level().to_string(),
        ));
    }
    let j = i.other();
    Ok(v.with_bit(j, beta, !v.bit(j, beta)))
}

/// Exhaustively verifies, at a finite level α = γ+1 ≥ 2, that every member
/// of `[preimages of Pow(W^{γ-1}), π_γ⁻¹(P_i(w↾γ))]` containing `P_i(w)`
/// also contains `π_γ⁻¹(P_i(w↾γ))`. Returns the number of members checked,
/// or the first counterexample as an error string.
pub fn block_cover_check(
    i: AB,
    w: &WState,
    level: &LevelStates,
    max_free_atoms: u32,
) -> Result<u64, SoberDrunkError> {
    let alpha = w.level().as_nat().ok_or_else(|| {
        SoberDrunkError::OutOfRange(w.level().to_string(), "<", "w".into())
    })?;
    if alpha < 2 {
        return Err(SoberDrunkError::LevelTooSmall);
    }
    let gamma = alpha - 1;
    let universe = level.len();
    // Fibers of the restriction to level γ-1.
    let lower = enumerate_w(gamma - 1, u64::from(universe))?;
    let mut fibers = vec![ElemSet::empty(universe); lower.len() as usize];
    for (idx, state) in level.states().iter().enumerate() {
        let low = lower.index_of(&restrict(state, &Ordinal::nat(gamma - 1))?);
        fibers[low as usize].insert(idx as u32);
    }
    // π_γ⁻¹(P_i(w↾γ)) as a level-α index set.
    let w_low = restrict(w, &Ordinal::nat(gamma))?;
    let mut restricted = ElemSet::empty(universe);
    for (idx, state) in level.states().iter().enumerate() {
        if partition_contains(i, &w_low, &restrict(state, &Ordinal::nat(gamma))?)? {
            restricted.insert(idx as u32);
        }
    }
    // Atoms of the extended field: fibers split by the restricted block.
    let mut atoms = Vec::new();
    for fiber in fibers {
        let inside = fiber.intersection(&restricted);
        let outside = fiber.difference(&restricted);
        if !inside.is_empty() {
            atoms.push(inside);
        }
        if !outside.is_empty() {
            atoms.push(outside);
        }
    }
    let block = partition_block_set(i, w, level)?;
    let core: Vec<&ElemSet> = atoms.iter().filter(|a| !a.is_disjoint_from(&block)).collect();
    let free: Vec<&ElemSet> = atoms.iter().filter(|a| a.is_disjoint_from(&block)).collect();
    if free.len() as u32 > max_free_atoms {
        return Err(SoberDrunkError::BudgetExceeded(
            1u64.checked_shl(free.len() as u32).unwrap_or(u64::MAX),
            1u64.checked_shl(max_free_atoms).unwrap_or(u64::MAX),
        ));
    }
    let mut fixed = ElemSet::empty(universe);
    for atom in core {
        fixed = fixed.union(atom);
    }
    let mut checked = 0u64;
    for mask in 0u64..(1u64 << free.len()) {
        let mut member = fixed.clone();
        for (k, atom) in free.iter().enumerate() {
            if mask & (1 << k) != 0 {
                member = member.union(atom);
            }
        }
        checked += 1;
        if !restricted.is_subset_of(&member) {
            return Err(SoberDrunkError::Internal(format!(
                "member {member:?} contains the block but not the restricted preimage"
            )));
        }
    }
    Ok(checked)
}

/// Verifies at a finite level that every base-β cylinder containing
/// `P_i(w)` also contains `π_{β+1}⁻¹(P_i(w↾β+1))`.
///
/// For small bases every `E_β ⊆ W^β` is enumerated; otherwise only the
/// minimal such cylinder (the image of the block) is checked, which settles
/// all larger ones by monotonicity of both sides.
pub fn cylinder_cover_check(
    i: AB,
    w: &WState,
    level: &LevelStates,
    beta: u32,
    exhaustive_bits: u32,
) -> Result<u64, SoberDrunkError> {
    let alpha = w.level().as_nat().ok_or_else(|| {
        SoberDrunkError::OutOfRange(w.level().to_string(), "<", "w".into())
    })?;
    if beta + 1 > alpha {
        return Err(SoberDrunkError::OutOfRange(beta.to_string(), "<", alpha.to_string()));
    }
    let base = enumerate_w(beta, u64::from(level.len()))?;
    let block = partition_block_set(i, w, level)?;
    // Image of the block at level β, and the restricted block's preimage.
    let mut image = ElemSet::empty(base.len());
    for idx in block.iter() {
        image.insert(base.index_of(&restrict(level.state(idx), &Ordinal::nat(beta))?));
    }
    let w_low = restrict(w, &Ordinal::nat(beta + 1))?;
    let mut conclusion_set = ElemSet::empty(level.len());
    for (idx, state) in level.states().iter().enumerate() {
        if partition_contains(i, &w_low, &restrict(state, &Ordinal::nat(beta + 1))?)? {
            conclusion_set.insert(idx as u32);
        }
    }
    let contains_cylinder = |e_base: &ElemSet| -> Result<bool, SoberDrunkError> {
        for idx in conclusion_set.iter() {
            let low = base.index_of(&restrict(level.state(idx), &Ordinal::nat(beta))?);
            if !e_base.contains(low) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if base.len() <= exhaustive_bits {
        let mut checked = 0u64;
        for mask in 0u64..(1u64 << base.len()) {
            let e_base = ElemSet::from_elems(
                base.len(),
                (0..base.len()).filter(|k| mask & (1 << k) != 0),
            );
            if !image.is_subset_of(&e_base) {
                continue; // preimage does not contain the block
            }
            checked += 1;
            if !contains_cylinder(&e_base)? {
                return Err(SoberDrunkError::Internal(format!(
                    "cylinder over {e_base:?} contains the block but not the conclusion"
                )));
            }
        }
        Ok(checked)
    } else {
        if !contains_cylinder(&image)? {
            return Err(SoberDrunkError::Internal(
                "minimal cylinder over the block image misses the conclusion".into(),
            ));
        }
        Ok(1)
    }
}

/// The limit-level form at λ = ω, through predicates on finite supports:
/// the minimal base event is the combinatorially computed image of
/// `P_i(w^ω)` at level β, and the conclusion is checked as
/// `π_{β,β+1}(P_i(w↾β+1)) ⊆ image`. Monotonicity settles every larger base
/// event.
pub fn cylinder_cover_check_at_limit(
    i: AB,
    w: &WState,
    beta: u32,
) -> Result<(), SoberDrunkError> {
    if w.level() != &Ordinal::omega() {
        return Err(SoberDrunkError::OutOfRange(w.level().to_string(), "=", "w".into()));
    }
    let j = i.other();
    let beta_ord = Ordinal::nat(beta);
    // Image of P_i(w^ω) at level β: own record fixed, nature anchored when
    // w_i(0) = 1, opponent bits anchored below β. Anchors at or above β do
    // not restrict the image (the tail extends freely), and no limit lies
    // below ω.
    let in_image = |v: &WState| -> bool {
        if v.record(i) != &w.record(i).restrict(&beta_ord) {
            return false;
        }
        if w.bit(i, &Ordinal::zero()) && v.coin() != w.coin() {
            return false;
        }
        for position in w.record(i).support() {
            if let Some(anchored) = position.pred() {
                if anchored < beta_ord && v.bit(j, &anchored) != w.bit(j, &anchored) {
                    return false;
                }
            }
        }
        true
    };
    let w_low = restrict(w, &Ordinal::nat(beta + 1))?;
    let level_up = enumerate_w(beta + 1, 1 << 12)?;
    for v in level_up.states() {
        if partition_contains(i, &w_low, v)? {
            let projected = restrict(v, &beta_ord)?;
            if !in_image(&projected) {
                return Err(SoberDrunkError::Internal(format!(
                    "projection {projected} of the restricted block escapes the block image"
                )));
            }
        }
    }
    Ok(())
}
