use std::sync::Arc;

use crate::rat::{self, Rat};
use crate::set::ElemSet;

use super::{set_label, FAMeasure, MeasureError, SetField};

/// Extends `mu` to the field `[F, E]` with the prescribed value `nu(E) = p`,
/// which must lie between the inner and outer measure of `E`.
///
/// The extension is the proportional straddle rule: atoms inside `E` keep
/// all their mass on the `E`-side, atoms disjoint from `E` keep none, and a
/// straddling atom gives the fraction `t = (p - inner) / (outer - inner)` of
/// its mass to its `E`-part (`t = 0` when inner and outer coincide). The
/// rule is deterministic, so repeated runs produce identical measures.
pub fn los_marczewski_extend(
    mu: &FAMeasure,
    e: &ElemSet,
    p: &Rat,
) -> Result<FAMeasure, MeasureError> {
    if !rat::in_unit_interval(p) {
        return Err(MeasureError::NotAProbability(rat::to_text(p)));
    }
    let inner = mu.inner_measure(e)?;
    let outer = mu.outer_measure(e)?;
    if *p < inner || *p > outer {
        return Err(MeasureError::OutsideInnerOuter(
            set_label(e),
            rat::to_text(p),
            rat::to_text(&inner),
            rat::to_text(&outer),
        ));
    }
    let t = if outer == inner {
        rat::zero()
    } else {
        (p.clone() - &inner) / (outer - &inner)
    };

    let extended = Arc::new(mu.field().extend_by_set(e)?);
    let mut weights = Vec::with_capacity(extended.atom_count());
    for atom in extended.atoms() {
        let old = mu.field().atom_of(atom.min_elem().unwrap());
        let w = mu.atom_weight(mu.field().atom_index_of(atom.min_elem().unwrap())).clone();
        if atom == old {
            // Unsplit atom: fully inside or fully outside E.
            weights.push(w);
        } else if atom.is_subset_of(e) {
            weights.push(&t * &w);
        } else {
            weights.push((rat::one() - &t) * &w);
        }
    }
    FAMeasure::new(extended, weights)
}

/// Extends `mu` from its field to the refining field `finer` by splitting
/// each atom's mass equally among the finer atoms it contains.
pub fn horn_tarski_extend(
    mu: &FAMeasure,
    finer: Arc<SetField>,
) -> Result<FAMeasure, MeasureError> {
    if finer.universe_size() != mu.field().universe_size() {
        return Err(MeasureError::UniverseMismatch(
            mu.field().universe_size(),
            finer.universe_size(),
        ));
    }
    if !mu.field().is_refined_by(&finer) {
        return Err(MeasureError::NotARefinement(
            "a coarse atom is not a union of fine atoms".into(),
        ));
    }
    // Count the fine atoms inside each coarse atom.
    let mut fine_count = vec![0u32; mu.field().atom_count()];
    for fine in finer.atoms() {
        fine_count[mu.field().atom_index_of(fine.min_elem().unwrap())] += 1;
    }
    let mut weights = Vec::with_capacity(finer.atom_count());
    for fine in finer.atoms() {
        let coarse = mu.field().atom_index_of(fine.min_elem().unwrap());
        let share = rat::rat(i64::from(fine_count[coarse]), 1);
        weights.push(mu.atom_weight(coarse) / share);
    }
    FAMeasure::new(finer, weights)
}
