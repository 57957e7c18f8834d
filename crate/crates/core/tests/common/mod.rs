//! Shared fixtures for the integration and acceptance suites.

use std::collections::BTreeMap;
use std::sync::Arc;

use fatspace::measure::{FAMeasure, SetField};
use fatspace::rat::{rat, Rat};
use fatspace::typespace::{NatureSpace, Player, TypeSpace};

pub fn coin_nature() -> NatureSpace {
    NatureSpace::with_points(&["h", "t"]).unwrap()
}

pub fn players_ab() -> Vec<Player> {
    vec![Player::new("a"), Player::new("b")]
}

pub fn measure(field: &Arc<SetField>, weights: &[(i64, i64)]) -> Arc<FAMeasure> {
    let weights: Vec<Rat> = weights.iter().map(|&(n, d)| rat(n, d)).collect();
    Arc::new(FAMeasure::new(field.clone(), weights).unwrap())
}

pub struct SpaceBuilder {
    states: Vec<String>,
    field: Arc<SetField>,
    theta: Vec<u32>,
    beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>>,
}

impl SpaceBuilder {
    /// Powerset field over the named states; θ by nature point name.
    pub fn new(states: &[&str], theta: &[&str]) -> Self {
        let nature = coin_nature();
        let field = Arc::new(SetField::powerset(states.len() as u32));
        SpaceBuilder {
            states: states.iter().map(|s| s.to_string()).collect(),
            field,
            theta: theta.iter().map(|p| nature.point_index(p).unwrap()).collect(),
            beliefs: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> &Arc<SetField> {
        &self.field
    }

    pub fn beliefs(mut self, player: &str, per_state: Vec<Arc<FAMeasure>>) -> Self {
        self.beliefs.insert(Player::new(player), per_state);
        self
    }

    pub fn build(self) -> TypeSpace {
        TypeSpace::new(self.states, self.field, coin_nature(), self.theta, players_ab(), self.beliefs)
            .unwrap()
    }
}

/// The singleton space at h.
pub fn singleton_h() -> TypeSpace {
    TypeSpace::singleton(coin_nature(), "h", &players_ab()).unwrap()
}

/// Two states x (θ=h), y (θ=t), both players uniform.
pub fn uniform_two_state() -> TypeSpace {
    let b = SpaceBuilder::new(&["x", "y"], &["h", "t"]);
    let u = measure(b.field(), &[(1, 2), (1, 2)]);
    b.beliefs("a", vec![u.clone(), u.clone()]).beliefs("b", vec![u.clone(), u]).build()
}

/// Three states; x and y share θ = h but player a's types put different
/// mass on the θ-block {z}.
pub fn three_state_distinct_types() -> TypeSpace {
    let b = SpaceBuilder::new(&["x", "y", "z"], &["h", "h", "t"]);
    let to_z = measure(b.field(), &[(0, 1), (0, 1), (1, 1)]);
    let to_y = measure(b.field(), &[(0, 1), (1, 1), (0, 1)]);
    let everywhere = measure(b.field(), &[(1, 3), (1, 3), (1, 3)]);
    b.beliefs("a", vec![to_z.clone(), to_y, to_z])
        .beliefs("b", vec![everywhere.clone(), everywhere.clone(), everywhere])
        .build()
}

/// Constant θ with self point masses: valid, but no expression separates
/// the two states.
pub fn description_blind_pair() -> TypeSpace {
    let b = SpaceBuilder::new(&["x", "y"], &["h", "h"]);
    let dx = measure(b.field(), &[(1, 1), (0, 1)]);
    let dy = measure(b.field(), &[(0, 1), (1, 1)]);
    b.beliefs("a", vec![dx.clone(), dy]).beliefs("b", vec![dx.clone(), dx]).build()
}

/// Two disjoint copies of the uniform two-state space.
pub fn doubled_space() -> TypeSpace {
    let b = SpaceBuilder::new(&["x1", "y1", "x2", "y2"], &["h", "t", "h", "t"]);
    let c1 = measure(b.field(), &[(1, 2), (1, 2), (0, 1), (0, 1)]);
    let c2 = measure(b.field(), &[(0, 1), (0, 1), (1, 2), (1, 2)]);
    b.beliefs("a", vec![c1.clone(), c1.clone(), c2.clone(), c2.clone()])
        .beliefs("b", vec![c1.clone(), c1, c2.clone(), c2])
        .build()
}

/// Two disjoint copies of the three-state space: six states, quotient of
/// three.
pub fn doubled_three_state() -> TypeSpace {
    let b = SpaceBuilder::new(
        &["x1", "y1", "z1", "x2", "y2", "z2"],
        &["h", "h", "t", "h", "h", "t"],
    );
    let to_z1 = measure(b.field(), &[(0, 1), (0, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
    let to_y1 = measure(b.field(), &[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
    let all1 = measure(b.field(), &[(1, 3), (1, 3), (1, 3), (0, 1), (0, 1), (0, 1)]);
    let to_z2 = measure(b.field(), &[(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]);
    let to_y2 = measure(b.field(), &[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1), (0, 1)]);
    let all2 = measure(b.field(), &[(0, 1), (0, 1), (0, 1), (1, 3), (1, 3), (1, 3)]);
    b.beliefs("a", vec![to_z1.clone(), to_y1, to_z1, to_z2.clone(), to_y2, to_z2])
        .beliefs("b", vec![all1.clone(), all1.clone(), all1, all2.clone(), all2.clone(), all2])
        .build()
}

/// A valid space over a proper subfield: the trivial field over two
/// constant-θ states.
pub fn trivial_field_space() -> TypeSpace {
    let field = Arc::new(SetField::trivial(2));
    let only = Arc::new(FAMeasure::new(field.clone(), vec![rat(1, 1)]).unwrap());
    let mut beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>> = BTreeMap::new();
    for p in players_ab() {
        beliefs.insert(p, vec![only.clone(), only.clone()]);
    }
    TypeSpace::new(
        vec!["x".into(), "y".into()],
        field,
        coin_nature(),
        vec![0, 0],
        players_ab(),
        beliefs,
    )
    .unwrap()
}

/// The fixture suite used by the quotient/terminality criteria (≤ 6
/// states).
pub fn fixture_suite() -> Vec<(&'static str, TypeSpace)> {
    vec![
        ("singleton_h", singleton_h()),
        ("uniform_two_state", uniform_two_state()),
        ("three_state_distinct_types", three_state_distinct_types()),
        ("description_blind_pair", description_blind_pair()),
        ("doubled_space", doubled_space()),
        ("doubled_three_state", doubled_three_state()),
        ("trivial_field_space", trivial_field_space()),
    ]
}

/// Fixtures with at most five states, for the expression-enumeration
/// oracle.
pub fn small_fixture_suite() -> Vec<(&'static str, TypeSpace)> {
    fixture_suite().into_iter().filter(|(_, s)| s.state_count() <= 5).collect()
}
