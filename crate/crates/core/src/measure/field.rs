use crate::set::ElemSet;

use super::MeasureError;

/// A finite field of subsets of `{0, …, universe_size-1}`, represented by
/// its atom partition.
///
/// The atoms are pairwise disjoint, nonempty, cover the universe and are
/// ordered by their minimal element, so construction output is
/// deterministic. A subset is a member of the field iff it is a union of
/// atoms; the field therefore contains ∅ and the universe and is closed
/// under complement and finite intersection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetField {
    universe: u32,
    atoms: Vec<ElemSet>,
    atom_of: Vec<u32>,
}

impl SetField {
    /// The trivial field `{∅, M}`.
    pub fn trivial(universe: u32) -> Self {
        SetField::from_atoms(universe, vec![ElemSet::full(universe)]).expect("one full atom")
    }

    /// The full powerset: every singleton is an atom.
    pub fn powerset(universe: u32) -> Self {
        let atoms = (0..universe).map(|e| ElemSet::singleton(universe, e)).collect();
        SetField::from_atoms(universe, atoms).expect("singleton atoms")
    }

    /// Builds a field from an explicit atom partition. The atoms are sorted
    /// by minimal element; empty atoms, overlaps or gaps are errors.
    pub fn from_atoms(universe: u32, mut atoms: Vec<ElemSet>) -> Result<Self, MeasureError> {
        if universe == 0 {
            return Err(MeasureError::BadPartition("universe is empty".into()));
        }
        for atom in &atoms {
            if atom.universe_size() != universe {
                return Err(MeasureError::BadPartition("atom over a different universe".into()));
            }
            if atom.is_empty() {
                return Err(MeasureError::BadPartition("empty atom".into()));
            }
        }
        atoms.sort_by_key(|a| a.min_elem().unwrap_or(u32::MAX));
        let mut atom_of = vec![u32::MAX; universe as usize];
        for (i, atom) in atoms.iter().enumerate() {
            for e in atom.iter() {
                if atom_of[e as usize] != u32::MAX {
                    return Err(MeasureError::BadPartition(format!("element {e} in two atoms")));
                }
                atom_of[e as usize] = i as u32;
            }
        }
        if let Some(e) = atom_of.iter().position(|&a| a == u32::MAX) {
            return Err(MeasureError::BadPartition(format!("element {e} not covered")));
        }
        Ok(SetField { universe, atoms, atom_of })
    }

    /// The field generated by a family of subsets: the coarsest atom
    /// partition making every generator a union of atoms. Atoms are the
    /// nonempty boolean combinations of the generators.
    pub fn generate(universe: u32, generators: &[ElemSet]) -> Result<Self, MeasureError> {
        let mut field = SetField::trivial(universe);
        for g in generators {
            field = field.extend_by_set(g)?;
        }
        Ok(field)
    }

    /// The smallest field `[F, E]` extending this one and containing `E`:
    /// every atom A is split into A∩E and A∖E, empty pieces dropped.
    pub fn extend_by_set(&self, e: &ElemSet) -> Result<SetField, MeasureError> {
        if e.universe_size() != self.universe {
            return Err(MeasureError::NotInUniverse(format!("{e:?}"), self.universe));
        }
        let mut atoms = Vec::with_capacity(self.atoms.len() * 2);
        for atom in &self.atoms {
            let inside = atom.intersection(e);
            let outside = atom.difference(e);
            if !inside.is_empty() {
                atoms.push(inside);
            }
            if !outside.is_empty() {
                atoms.push(outside);
            }
        }
        SetField::from_atoms(self.universe, atoms)
    }

    pub fn universe_size(&self) -> u32 {
        self.universe
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[ElemSet] {
        &self.atoms
    }

    pub fn atom(&self, index: usize) -> &ElemSet {
        &self.atoms[index]
    }

    /// Index of the atom containing `elem`.
    pub fn atom_index_of(&self, elem: u32) -> usize {
        self.atom_of[elem as usize] as usize
    }

    /// The atom containing `elem`.
    pub fn atom_of(&self, elem: u32) -> &ElemSet {
        &self.atoms[self.atom_index_of(elem)]
    }

    /// Membership test: `e` is a member iff it is a union of atoms.
    pub fn is_member(&self, e: &ElemSet) -> bool {
        if e.universe_size() != self.universe {
            return false;
        }
        self.atoms.iter().all(|a| a.is_subset_of(e) || a.is_disjoint_from(e))
    }

    /// The smallest field member containing `e` (union of atoms meeting it).
    pub fn hull(&self, e: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.universe);
        for atom in &self.atoms {
            if !atom.is_disjoint_from(e) {
                out = out.union(atom);
            }
        }
        out
    }

    /// True iff `finer` refines this field: every atom of this field is a
    /// union of `finer`'s atoms (equivalently every member of this field is
    /// a member of `finer`).
    pub fn is_refined_by(&self, finer: &SetField) -> bool {
        finer.universe == self.universe
            && finer.atoms.iter().all(|fa| fa.is_subset_of(self.atom_of(fa.min_elem().unwrap())))
    }
}
