//! Shared inputs for the benchmarks.

use std::sync::Arc;

use fatspace::measure::{FAMeasure, SetField};
use fatspace::rat::rat;
use fatspace::set::ElemSet;

/// An eight-point measure on a four-atom field, plus a straddling set.
pub fn eight_point_instance() -> (FAMeasure, ElemSet) {
    let atoms = vec![
        ElemSet::from_elems(8, [0, 1]),
        ElemSet::from_elems(8, [2, 3]),
        ElemSet::from_elems(8, [4, 5]),
        ElemSet::from_elems(8, [6, 7]),
    ];
    let field = Arc::new(SetField::from_atoms(8, atoms).unwrap());
    let measure =
        FAMeasure::new(field, vec![rat(1, 8), rat(3, 8), rat(1, 4), rat(1, 4)]).unwrap();
    let straddle = ElemSet::from_elems(8, [0, 2, 4, 6]);
    (measure, straddle)
}
