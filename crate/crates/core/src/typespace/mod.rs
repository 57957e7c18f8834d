//! Finite type spaces: a state set with a set field, a nature map, and one
//! finitely additive belief measure per player and state.

mod morphism;
mod validate;

pub use morphism::{
    enumerate_morphisms, is_type_isomorphism, is_type_morphism, MorphismReport,
};
pub use validate::{validate, ValidationReport, Violation};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::measure::{FAMeasure, MeasureError, SetField};
use crate::rat::{self, Rat};
use crate::set::ElemSet;

#[derive(Debug, Error)]
pub enum SpaceError {
    #[error("measure error: {0}")]
    Measure(#[from] MeasureError),
    #[error("nature field must separate points (all atoms singletons)")]
    NatureNotSeparating,
    #[error("unknown nature point {0:?}")]
    UnknownNaturePoint(String),
    #[error("unknown nature event {0:?}")]
    UnknownNatureEvent(String),
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("unknown player {0:?}")]
    UnknownPlayer(String),
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("player set must be nonempty")]
    NoPlayers,
    #[error("belief for player {0:?} lives on a different field than the space")]
    BeliefFieldMismatch(String),
    #[error("structure sizes are inconsistent: {0}")]
    Shape(String),
    #[error("event {0:?} is not a member of the space's field")]
    EventNotMeasurable(String),
    #[error("threshold {0} is not in [0,1]")]
    BadThreshold(String),
    #[error("space is not valid: {0}")]
    InvalidSpace(String),
    #[error("player sets or nature spaces differ between the two spaces")]
    IncompatibleSpaces,
    #[error("map is not total on the source states")]
    BadStateMap,
    #[error("enumeration budget exceeded: {0} candidate maps (budget {1})")]
    BudgetExceeded(u128, u128),
}

/// A player identifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Player(pub String);

impl Player {
    pub fn new(name: &str) -> Self {
        Player(name.to_string())
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The space of states of nature: named points with a point-separating set
/// field and a registry of named events.
///
/// At finite scale point separation forces all atoms to be singletons, which
/// the constructor checks. Every point name doubles as the name of its
/// singleton event; further named events may be registered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatureSpace {
    points: Vec<String>,
    field: SetField,
    events: BTreeMap<String, ElemSet>,
}

impl NatureSpace {
    /// Nature space over the given point names with the powerset field and
    /// one singleton event per point.
    pub fn with_points(points: &[&str]) -> Result<Self, SpaceError> {
        let names: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        Self::new(names, None, BTreeMap::new())
    }

    pub fn new(
        points: Vec<String>,
        field: Option<SetField>,
        extra_events: BTreeMap<String, Vec<String>>,
    ) -> Result<Self, SpaceError> {
        let n = points.len() as u32;
        let mut seen = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p.clone(), i).is_some() {
                return Err(SpaceError::DuplicateName(p.clone()));
            }
        }
        let field = field.unwrap_or_else(|| SetField::powerset(n));
        if field.universe_size() != n {
            return Err(SpaceError::Shape("nature field universe differs from points".into()));
        }
        if field.atoms().iter().any(|a| a.len() != 1) {
            return Err(SpaceError::NatureNotSeparating);
        }
        let mut events: BTreeMap<String, ElemSet> = points
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), ElemSet::singleton(n, i as u32)))
            .collect();
        for (name, members) in extra_events {
            let mut e = ElemSet::empty(n);
            for m in members {
                let idx = seen.get(&m).ok_or(SpaceError::UnknownNaturePoint(m))?;
                e.insert(*idx as u32);
            }
            events.insert(name, e);
        }
        Ok(NatureSpace { points, field, events })
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_index(&self, name: &str) -> Option<u32> {
        self.points.iter().position(|p| p == name).map(|i| i as u32)
    }

    pub fn field(&self) -> &SetField {
        &self.field
    }

    pub fn events(&self) -> &BTreeMap<String, ElemSet> {
        &self.events
    }

    pub fn event(&self, name: &str) -> Result<&ElemSet, SpaceError> {
        self.events.get(name).ok_or_else(|| SpaceError::UnknownNatureEvent(name.to_string()))
    }
}

/// A finite type space: states, a set field on them, a measurable nature
/// map, and per player a belief measure at every state.
#[derive(Debug, Clone)]
pub struct TypeSpace {
    states: Vec<String>,
    field: Arc<SetField>,
    nature: NatureSpace,
    theta: Vec<u32>,
    players: Vec<Player>,
    beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>>,
}

impl TypeSpace {
    pub fn new(
        states: Vec<String>,
        field: Arc<SetField>,
        nature: NatureSpace,
        theta: Vec<u32>,
        players: Vec<Player>,
        beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>>,
    ) -> Result<Self, SpaceError> {
        let n = states.len() as u32;
        if n == 0 {
            return Err(SpaceError::Shape("no states".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &states {
            if !seen.insert(s.clone()) {
                return Err(SpaceError::DuplicateName(s.clone()));
            }
        }
        if field.universe_size() != n {
            return Err(SpaceError::Shape("field universe differs from state count".into()));
        }
        if theta.len() != n as usize
            || theta.iter().any(|&s| s as usize >= nature.points().len())
        {
            return Err(SpaceError::Shape("theta is not a total map into nature".into()));
        }
        if players.is_empty() {
            return Err(SpaceError::NoPlayers);
        }
        let mut players = players;
        players.sort();
        players.dedup();
        for p in &players {
            let per_state = beliefs
                .get(p)
                .ok_or_else(|| SpaceError::Shape(format!("no beliefs for player {p}")))?;
            if per_state.len() != n as usize {
                return Err(SpaceError::Shape(format!("beliefs for {p} not total on states")));
            }
            for m in per_state {
                if m.field().as_ref() != field.as_ref() {
                    return Err(SpaceError::BeliefFieldMismatch(p.0.clone()));
                }
            }
        }
        if beliefs.len() != players.len() {
            return Err(SpaceError::Shape("beliefs for unknown players".into()));
        }
        Ok(TypeSpace { states, field, nature, theta, players, beliefs })
    }

    /// The one-state space over nature point `s`: the powerset field, the
    /// point mass as every player's type, and θ mapping to `s`. Always valid.
    pub fn singleton(
        nature: NatureSpace,
        s: &str,
        players: &[Player],
    ) -> Result<Self, SpaceError> {
        let point = nature
            .point_index(s)
            .ok_or_else(|| SpaceError::UnknownNaturePoint(s.to_string()))?;
        let field = Arc::new(SetField::powerset(1));
        let delta = Arc::new(FAMeasure::point_mass(0, field.clone())?);
        let beliefs = players.iter().map(|p| (p.clone(), vec![delta.clone()])).collect();
        TypeSpace::new(
            vec!["m".to_string()],
            field,
            nature,
            vec![point],
            players.to_vec(),
            beliefs,
        )
    }

    pub fn state_count(&self) -> u32 {
        self.states.len() as u32
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Result<u32, SpaceError> {
        self.states
            .iter()
            .position(|s| s == name)
            .map(|i| i as u32)
            .ok_or_else(|| SpaceError::UnknownState(name.to_string()))
    }

    pub fn field(&self) -> &Arc<SetField> {
        &self.field
    }

    pub fn nature(&self) -> &NatureSpace {
        &self.nature
    }

    pub fn theta(&self, state: u32) -> u32 {
        self.theta[state as usize]
    }

    pub fn theta_map(&self) -> &[u32] {
        &self.theta
    }

    pub fn players(&self) -> &[Player] {
        &self.players
    }

    pub fn belief(&self, player: &Player, state: u32) -> Result<&Arc<FAMeasure>, SpaceError> {
        self.beliefs
            .get(player)
            .ok_or_else(|| SpaceError::UnknownPlayer(player.0.clone()))
            .map(|v| &v[state as usize])
    }

    pub fn beliefs(&self) -> &BTreeMap<Player, Vec<Arc<FAMeasure>>> {
        &self.beliefs
    }

    /// θ⁻¹ of a nature event, as a subset of the states.
    pub fn theta_preimage(&self, event: &ElemSet) -> ElemSet {
        let mut out = ElemSet::empty(self.state_count());
        for (m, &s) in self.theta.iter().enumerate() {
            if event.contains(s) {
                out.insert(m as u32);
            }
        }
        out
    }

    /// The belief operator: all states where player `i` assigns the event at
    /// least probability `p`. Requires `event` to be a field member and `p`
    /// in the unit interval. For valid spaces the result is again a member.
    pub fn belief_operator(
        &self,
        player: &Player,
        p: &Rat,
        event: &ElemSet,
    ) -> Result<ElemSet, SpaceError> {
        if !rat::in_unit_interval(p) {
            return Err(SpaceError::BadThreshold(rat::to_text(p)));
        }
        if !self.field.is_member(event) {
            return Err(SpaceError::EventNotMeasurable(format!("{event:?}")));
        }
        let per_state = self
            .beliefs
            .get(player)
            .ok_or_else(|| SpaceError::UnknownPlayer(player.0.clone()))?;
        // Measures are shared across states; evaluate each distinct measure
        // once and fan the verdict out.
        let mut verdicts: Vec<Option<bool>> = vec![None; per_state.len()];
        let mut cache: Vec<(*const FAMeasure, bool)> = Vec::new();
        for (m, measure) in per_state.iter().enumerate() {
            let key = Arc::as_ptr(measure);
            let hit = cache.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
            let verdict = match hit {
                Some(v) => v,
                None => {
                    let v = measure.measure_of(event)? >= *p;
                    cache.push((key, v));
                    v
                }
            };
            verdicts[m] = Some(verdict);
        }
        let mut out = ElemSet::empty(self.state_count());
        for (m, v) in verdicts.iter().enumerate() {
            if v.unwrap() {
                out.insert(m as u32);
            }
        }
        Ok(out)
    }

    /// `[T_i(m)]`: the set of states whose type for `player` equals the type
    /// at `state` (exact measure equality).
    pub fn same_type_class(&self, player: &Player, state: u32) -> Result<ElemSet, SpaceError> {
        let per_state = self
            .beliefs
            .get(player)
            .ok_or_else(|| SpaceError::UnknownPlayer(player.0.clone()))?;
        let here = &per_state[state as usize];
        let mut out = ElemSet::empty(self.state_count());
        for (m, other) in per_state.iter().enumerate() {
            if Arc::ptr_eq(other, here) || other == here {
                out.insert(m as u32);
            }
        }
        Ok(out)
    }
}
