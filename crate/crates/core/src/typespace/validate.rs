use std::fmt;
use std::sync::Arc;

use crate::rat::{self, Rat};

use super::{Player, TypeSpace};

/// One violated type-space invariant, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// θ is not measurable: two states in one field atom map to different
    /// nature points.
    ThetaNotMeasurable { state_a: String, state_b: String },
    /// A player's type map is not measurable: two states in one field atom
    /// carry different measures, so some belief event leaves the field.
    TypeNotMeasurable { player: Player, state_a: String, state_b: String },
    /// The type at a state does not assign probability one to every
    /// measurable superset of its own-type class.
    IntrospectionFailed { player: Player, state: String, mass: Rat },
    /// A stored measure is not a probability measure (defensive re-check).
    BadMeasure { player: Player, state: String, detail: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ThetaNotMeasurable { state_a, state_b } => write!(
                f,
                "theta not measurable: states {state_a} and {state_b} share an atom but map to different nature points"
            ),
            Violation::TypeNotMeasurable { player, state_a, state_b } => write!(
                f,
                "type map of player {player} not measurable: states {state_a} and {state_b} share an atom but carry different measures"
            ),
            Violation::IntrospectionFailed { player, state, mass } => write!(
                f,
                "introspection fails for player {player} at state {state}: smallest measurable superset of the own-type class has mass {}",
                rat::to_text(mass)
            ),
            Violation::BadMeasure { player, state, detail } => {
                write!(f, "measure of player {player} at state {state} ill-formed: {detail}")
            }
        }
    }
}

/// Validation outcome. `violations` empty means the space is a valid type
/// space. `strong_introspection_failures` records states where the type
/// class itself is not measurable or does not carry full mass even though
/// the measurable-superset form holds; those are informational, not
/// violations.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub strong_introspection_failures: Vec<(Player, String)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")?;
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
        }
        for (p, s) in &self.strong_introspection_failures {
            writeln!(f, "note: own-type class of player {p} at state {s} is not itself a measurable mass-1 event")?;
        }
        Ok(())
    }
}

/// Checks every type-space invariant and reports each violation with a
/// witness.
///
/// Measurability of θ and of the type maps is checked as constancy on the
/// field's atoms. At finite scale this is equivalent to the preimage
/// conditions: a belief event `{m : T_i(m)(E) ≥ p}` is a field member for
/// every member E and every threshold iff states sharing an atom carry
/// identical measures, since thresholds only matter at achieved values.
///
/// Introspection is checked in the measurable-superset form: the smallest
/// field member containing the own-type class must have mass one. When the
/// class itself is not a mass-1 member, that is recorded separately rather
/// than conflated with a violation.
pub fn validate(space: &TypeSpace) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = space.state_count();

    // Defensive re-check of stored measures.
    for player in space.players() {
        for m in 0..n {
            let measure = space.belief(player, m).expect("player known");
            let total: Rat = measure.weights().iter().cloned().sum();
            if total != rat::one() {
                report.violations.push(Violation::BadMeasure {
                    player: player.clone(),
                    state: space.states()[m as usize].clone(),
                    detail: format!("weights sum to {}", rat::to_text(&total)),
                });
            }
            if measure.weights().iter().any(|w| *w < rat::zero()) {
                report.violations.push(Violation::BadMeasure {
                    player: player.clone(),
                    state: space.states()[m as usize].clone(),
                    detail: "negative weight".into(),
                });
            }
        }
    }

    // θ measurable ⟺ constant on atoms (nature separates points).
    for atom in space.field().atoms() {
        let mut elems = atom.iter();
        let first = elems.next().expect("atoms nonempty");
        for e in elems {
            if space.theta(e) != space.theta(first) {
                report.violations.push(Violation::ThetaNotMeasurable {
                    state_a: space.states()[first as usize].clone(),
                    state_b: space.states()[e as usize].clone(),
                });
                break;
            }
        }
    }

    // T_i measurable ⟺ constant on atoms.
    for player in space.players() {
        'atoms: for atom in space.field().atoms() {
            let mut elems = atom.iter();
            let first = elems.next().expect("atoms nonempty");
            let reference = space.belief(player, first).expect("player known");
            for e in elems {
                let other = space.belief(player, e).expect("player known");
                if !Arc::ptr_eq(other, reference) && other != reference {
                    report.violations.push(Violation::TypeNotMeasurable {
                        player: player.clone(),
                        state_a: space.states()[first as usize].clone(),
                        state_b: space.states()[e as usize].clone(),
                    });
                    continue 'atoms;
                }
            }
        }
    }

    // Introspection, in the measurable-superset form.
    for player in space.players() {
        for m in 0..n {
            let class = space.same_type_class(player, m).expect("player known");
            let hull = space.field().hull(&class);
            let measure = space.belief(player, m).expect("player known");
            let mass = measure.measure_of(&hull).expect("hull is a member");
            if mass != rat::one() {
                report.violations.push(Violation::IntrospectionFailed {
                    player: player.clone(),
                    state: space.states()[m as usize].clone(),
                    mass,
                });
            } else {
                let strong = space.field().is_member(&class)
                    && measure.measure_of(&class).expect("member") == rat::one();
                if !strong {
                    report
                        .strong_introspection_failures
                        .push((player.clone(), space.states()[m as usize].clone()));
                }
            }
        }
    }

    report
}
