//! Finite set-field algebra and finitely additive probability measures.
//!
//! Fields are represented by their atom partition; a subset is a member of
//! the field iff it is a union of atoms. Measures carry one exact rational
//! weight per atom. The module houses the two classical extension
//! algorithms (Łoś–Marczewski for a single new set, Horn–Tarski for a
//! refining field), pushforwards, point masses and the gluing of consistent
//! measure chains along projections.

mod chain;
mod extend;
mod field;

pub use chain::{glue_chain, MeasureChain};
pub use extend::{horn_tarski_extend, los_marczewski_extend};
pub use field::SetField;

use std::sync::Arc;

use thiserror::Error;

use crate::rat::{self, Rat};
use crate::set::ElemSet;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("set {0:?} is not a subset of the universe (size {1})")]
    NotInUniverse(String, u32),
    #[error("set {0:?} is not a member of the field (not a union of atoms)")]
    NotAMember(String),
    #[error("atoms do not partition the universe: {0}")]
    BadPartition(String),
    #[error("weights invalid: {0}")]
    BadWeights(String),
    #[error("extension target {0} given p={1} outside [inner, outer] = [{2}, {3}]")]
    OutsideInnerOuter(String, String, String, String),
    #[error("p = {0} is not a probability (outside [0,1])")]
    NotAProbability(String),
    #[error("field does not refine the measure's field: {0}")]
    NotARefinement(String),
    #[error("universes differ: {0} vs {1}")]
    UniverseMismatch(u32, u32),
    #[error("map is not total or maps outside the target universe")]
    BadMap,
    #[error("preimage of {0:?} is not a member of the source field")]
    PreimageNotMeasurable(String),
    #[error("element {0} is not in the universe (size {1})")]
    ElementOutOfRange(u32, u32),
    #[error("measure chain invalid: {0}")]
    BadChain(String),
}

fn set_label(s: &ElemSet) -> String {
    format!("{s:?}")
}

/// A finitely additive probability measure on a finite [`SetField`], stored
/// as exact rational weights on the atoms.
///
/// Invariants enforced at construction: one weight per atom, all weights
/// nonnegative, weights sum to one. The measure of a field member is the sum
/// of the weights of the atoms it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FAMeasure {
    field: Arc<SetField>,
    weights: Vec<Rat>,
}

impl FAMeasure {
    pub fn new(field: Arc<SetField>, weights: Vec<Rat>) -> Result<Self, MeasureError> {
        if weights.len() != field.atom_count() {
            return Err(MeasureError::BadWeights(format!(
                "{} weights for {} atoms",
                weights.len(),
                field.atom_count()
            )));
        }
        if let Some(w) = weights.iter().find(|w| **w < rat::zero()) {
            return Err(MeasureError::BadWeights(format!("negative weight {}", rat::to_text(w))));
        }
        let total: Rat = weights.iter().cloned().sum();
        if total != rat::one() {
            return Err(MeasureError::BadWeights(format!(
                "weights sum to {}, expected 1",
                rat::to_text(&total)
            )));
        }
        Ok(FAMeasure { field, weights })
    }

    /// The point mass δ_m: assigns 1 to every field member containing `m`'s
    /// atom and 0 otherwise.
    pub fn point_mass(elem: u32, field: Arc<SetField>) -> Result<Self, MeasureError> {
        if elem >= field.universe_size() {
            return Err(MeasureError::ElementOutOfRange(elem, field.universe_size()));
        }
        let atom = field.atom_index_of(elem);
        let mut weights = vec![rat::zero(); field.atom_count()];
        weights[atom] = rat::one();
        Ok(FAMeasure { field, weights })
    }

    pub fn field(&self) -> &Arc<SetField> {
        &self.field
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    pub fn atom_weight(&self, atom: usize) -> &Rat {
        &self.weights[atom]
    }

    /// Measure of a field member: the sum of the weights of the atoms it
    /// contains. Errors if `a` is not a union of atoms.
    pub fn measure_of(&self, a: &ElemSet) -> Result<Rat, MeasureError> {
        if !self.field.is_member(a) {
            return Err(MeasureError::NotAMember(set_label(a)));
        }
        Ok(self.sum_over_atoms(|atom| atom.is_subset_of(a)))
    }

    /// Outer measure of an arbitrary subset: the minimum of μ(F) over field
    /// members F ⊇ E, equal to the weight of the atoms meeting E.
    pub fn outer_measure(&self, e: &ElemSet) -> Result<Rat, MeasureError> {
        self.check_subset(e)?;
        Ok(self.sum_over_atoms(|atom| !atom.is_disjoint_from(e)))
    }

    /// Inner measure of an arbitrary subset: the maximum of μ(F) over field
    /// members F ⊆ E, equal to the weight of the atoms contained in E.
    pub fn inner_measure(&self, e: &ElemSet) -> Result<Rat, MeasureError> {
        self.check_subset(e)?;
        Ok(self.sum_over_atoms(|atom| atom.is_subset_of(e)))
    }

    /// The pushforward E ↦ μ(f⁻¹(E)) onto `target`, where `map[m]` is the
    /// image of source element `m`. Every target atom must pull back to a
    /// member of this measure's field.
    pub fn pushforward(&self, map: &[u32], target: Arc<SetField>) -> Result<Self, MeasureError> {
        let src_n = self.field.universe_size();
        let tgt_n = target.universe_size();
        if map.len() != src_n as usize || map.iter().any(|&v| v >= tgt_n) {
            return Err(MeasureError::BadMap);
        }
        let mut weights = Vec::with_capacity(target.atom_count());
        for atom in target.atoms() {
            let pre = preimage(map, src_n, atom);
            let w = self
                .measure_of(&pre)
                .map_err(|_| MeasureError::PreimageNotMeasurable(set_label(atom)))?;
            weights.push(w);
        }
        FAMeasure::new(target, weights)
    }

    fn check_subset(&self, e: &ElemSet) -> Result<(), MeasureError> {
        if e.universe_size() != self.field.universe_size() {
            return Err(MeasureError::NotInUniverse(set_label(e), self.field.universe_size()));
        }
        Ok(())
    }

    fn sum_over_atoms<P: Fn(&ElemSet) -> bool>(&self, pred: P) -> Rat {
        let mut total = rat::zero();
        for (atom, w) in self.field.atoms().iter().zip(&self.weights) {
            if pred(atom) {
                total += w.clone();
            }
        }
        total
    }
}

/// Preimage of `set` under `map` as a subset of the source universe.
pub(crate) fn preimage(map: &[u32], src_universe: u32, set: &ElemSet) -> ElemSet {
    let mut pre = ElemSet::empty(src_universe);
    for (m, &img) in map.iter().enumerate() {
        if set.contains(img) {
            pre.insert(m as u32);
        }
    }
    pre
}
