//! The versioned document format used by the CLI and fixtures.
//!
//! Documents are JSON with a `schema` version field and a `kind`
//! discriminator. Rationals are encoded as `num/den` strings, collections
//! are sorted, and emission is deterministic: identical values produce
//! byte-identical text.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measure::{FAMeasure, SetField};
use crate::rat::{self, Rat};
use crate::set::ElemSet;
use crate::typespace::{NatureSpace, Player, SpaceError, TypeSpace};

pub const SCHEMA: &str = "fatspace/v1";

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?} (expected {SCHEMA:?})")]
    BadSchema(String),
    #[error("expected a {expected} document, found {found:?}")]
    WrongKind { expected: &'static str, found: String },
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("invalid document: {0}")]
    Invalid(String),
    #[error("space error: {0}")]
    Space(#[from] SpaceError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    NatureSpace(NatureSpaceDoc),
    TypeSpace(TypeSpaceDoc),
    Measure(MeasureDoc),
    SetField(SetFieldDoc),
    StateMap(StateMapDoc),
    ExprList(ExprListDoc),
    Report(ReportDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    #[serde(flatten)]
    pub document: Document,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NatureSpaceDoc {
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub events: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeSpaceDoc {
    pub nature: NatureSpaceDoc,
    pub players: Vec<String>,
    pub states: Vec<String>,
    /// Atom partition of the field, each atom a list of state names.
    pub field_atoms: Vec<Vec<String>>,
    /// State name → nature point name.
    pub theta: BTreeMap<String, String>,
    /// Player → state name → (atom key → weight). Atom keys are the atom's
    /// minimal state name; weights are `num/den` strings.
    pub beliefs: BTreeMap<String, BTreeMap<String, BTreeMap<String, String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MeasureDoc {
    pub universe: Vec<String>,
    pub field_atoms: Vec<Vec<String>>,
    /// Atom key (minimal element name) → weight.
    pub weights: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetFieldDoc {
    pub universe: Vec<String>,
    pub field_atoms: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateMapDoc {
    pub map: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExprListDoc {
    pub exprs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDoc {
    pub command: String,
    pub status: String,
    pub lines: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, String>,
}

/// Serializes with the schema envelope; output is deterministic.
pub fn emit(document: &Document) -> String {
    let envelope = Envelope { schema: SCHEMA.to_string(), document: document.clone() };
    let mut text = serde_json::to_string_pretty(&envelope).expect("serializable");
    text.push('\n');
    text
}

/// Parses and checks the schema version.
pub fn parse(text: &str) -> Result<Document, DocumentError> {
    let envelope: Envelope = serde_json::from_str(text)?;
    if envelope.schema != SCHEMA {
        return Err(DocumentError::BadSchema(envelope.schema));
    }
    Ok(envelope.document)
}

fn parse_rat(text: &str) -> Result<Rat, DocumentError> {
    rat::parse_text(text).ok_or_else(|| DocumentError::BadRational(text.to_string()))
}

fn index_of(names: &[String], name: &str) -> Result<u32, DocumentError> {
    names
        .iter()
        .position(|n| n == name)
        .map(|i| i as u32)
        .ok_or_else(|| DocumentError::UnknownName(name.to_string()))
}

fn atoms_from_names(
    names: &[String],
    atoms: &[Vec<String>],
) -> Result<Vec<ElemSet>, DocumentError> {
    let n = names.len() as u32;
    atoms
        .iter()
        .map(|atom| {
            let mut set = ElemSet::empty(n);
            for name in atom {
                set.insert(index_of(names, name)?);
            }
            Ok(set)
        })
        .collect()
}

fn field_from_doc(
    names: &[String],
    atoms: &[Vec<String>],
) -> Result<SetField, DocumentError> {
    let atom_sets = atoms_from_names(names, atoms)?;
    SetField::from_atoms(names.len() as u32, atom_sets)
        .map_err(|e| DocumentError::Invalid(e.to_string()))
}

/// Canonical key of an atom: the name of its minimal element.
fn atom_key(names: &[String], field: &SetField, atom: usize) -> String {
    names[field.atom(atom).min_elem().unwrap() as usize].clone()
}

fn weights_from_doc(
    names: &[String],
    field: &SetField,
    weights: &BTreeMap<String, String>,
) -> Result<Vec<Rat>, DocumentError> {
    let mut out = vec![rat::zero(); field.atom_count()];
    let mut seen = vec![false; field.atom_count()];
    for (key, text) in weights {
        let elem = index_of(names, key)?;
        let atom = field.atom_index_of(elem);
        if field.atom(atom).min_elem() != Some(elem) {
            return Err(DocumentError::Invalid(format!(
                "weight key {key:?} is not its atom's minimal element"
            )));
        }
        if seen[atom] {
            return Err(DocumentError::Invalid(format!("duplicate weight for atom of {key:?}")));
        }
        seen[atom] = true;
        out[atom] = parse_rat(text)?;
    }
    Ok(out)
}

fn weights_to_doc(names: &[String], measure: &FAMeasure) -> BTreeMap<String, String> {
    let field = measure.field();
    (0..field.atom_count())
        .map(|a| (atom_key(names, field, a), rat::to_text(measure.atom_weight(a))))
        .collect()
}

pub fn nature_to_doc(nature: &NatureSpace) -> NatureSpaceDoc {
    let points = nature.points().to_vec();
    let events = nature
        .events()
        .iter()
        .filter(|(name, event)| {
            // Singleton point events are implicit.
            !(event.len() == 1
                && nature.point_index(name) == ElemSet::min_elem(event))
        })
        .map(|(name, event)| {
            (name.clone(), event.iter().map(|i| points[i as usize].clone()).collect())
        })
        .collect();
    NatureSpaceDoc { points, events }
}

pub fn nature_from_doc(doc: &NatureSpaceDoc) -> Result<NatureSpace, DocumentError> {
    NatureSpace::new(doc.points.clone(), None, doc.events.clone()).map_err(DocumentError::Space)
}

pub fn space_to_doc(space: &TypeSpace) -> TypeSpaceDoc {
    let states = space.states().to_vec();
    let field_atoms = space
        .field()
        .atoms()
        .iter()
        .map(|a| a.iter().map(|e| states[e as usize].clone()).collect())
        .collect();
    let theta = states
        .iter()
        .enumerate()
        .map(|(m, name)| {
            (name.clone(), space.nature().points()[space.theta(m as u32) as usize].clone())
        })
        .collect();
    let beliefs = space
        .players()
        .iter()
        .map(|player| {
            let per_state = states
                .iter()
                .enumerate()
                .map(|(m, name)| {
                    let measure = space.belief(player, m as u32).expect("player known");
                    (name.clone(), weights_to_doc(&states, measure))
                })
                .collect();
            (player.0.clone(), per_state)
        })
        .collect();
    TypeSpaceDoc {
        nature: nature_to_doc(space.nature()),
        players: space.players().iter().map(|p| p.0.clone()).collect(),
        states,
        field_atoms,
        theta,
        beliefs,
    }
}

pub fn space_from_doc(doc: &TypeSpaceDoc) -> Result<TypeSpace, DocumentError> {
    let nature = nature_from_doc(&doc.nature)?;
    let field = Arc::new(field_from_doc(&doc.states, &doc.field_atoms)?);
    let mut theta = Vec::with_capacity(doc.states.len());
    for state in &doc.states {
        let point = doc
            .theta
            .get(state)
            .ok_or_else(|| DocumentError::Invalid(format!("theta missing state {state:?}")))?;
        theta.push(
            nature
                .point_index(point)
                .ok_or_else(|| DocumentError::UnknownName(point.clone()))?,
        );
    }
    let players: Vec<Player> = doc.players.iter().map(|p| Player(p.clone())).collect();
    let mut beliefs = BTreeMap::new();
    for player in &players {
        let per_state_doc = doc
            .beliefs
            .get(&player.0)
            .ok_or_else(|| DocumentError::Invalid(format!("no beliefs for player {player}")))?;
        let mut per_state = Vec::with_capacity(doc.states.len());
        for state in &doc.states {
            let weights_doc = per_state_doc.get(state).ok_or_else(|| {
                DocumentError::Invalid(format!("no beliefs for player {player} at {state:?}"))
            })?;
            let weights = weights_from_doc(&doc.states, &field, weights_doc)?;
            let measure = FAMeasure::new(field.clone(), weights)
                .map_err(|e| DocumentError::Invalid(e.to_string()))?;
            per_state.push(Arc::new(measure));
        }
        beliefs.insert(player.clone(), per_state);
    }
    TypeSpace::new(doc.states.clone(), field, nature, theta, players, beliefs)
        .map_err(DocumentError::Space)
}

pub fn measure_to_doc(universe_names: &[String], measure: &FAMeasure) -> MeasureDoc {
    MeasureDoc {
        universe: universe_names.to_vec(),
        field_atoms: measure
            .field()
            .atoms()
            .iter()
            .map(|a| a.iter().map(|e| universe_names[e as usize].clone()).collect())
            .collect(),
        weights: weights_to_doc(universe_names, measure),
    }
}

pub fn measure_from_doc(doc: &MeasureDoc) -> Result<(Vec<String>, FAMeasure), DocumentError> {
    let field = Arc::new(field_from_doc(&doc.universe, &doc.field_atoms)?);
    let weights = weights_from_doc(&doc.universe, &field, &doc.weights)?;
    let measure =
        FAMeasure::new(field, weights).map_err(|e| DocumentError::Invalid(e.to_string()))?;
    Ok((doc.universe.clone(), measure))
}

pub fn set_field_from_doc(doc: &SetFieldDoc) -> Result<(Vec<String>, SetField), DocumentError> {
    let field = field_from_doc(&doc.universe, &doc.field_atoms)?;
    Ok((doc.universe.clone(), field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typespace::tests::uniform_two_state;

    #[test]
    fn space_document_round_trip() {
        let space = uniform_two_state();
        let doc = Document::TypeSpace(space_to_doc(&space));
        let text = emit(&doc);
        let parsed = parse(&text).unwrap();
        let Document::TypeSpace(doc2) = parsed else { panic!("kind") };
        let space2 = space_from_doc(&doc2).unwrap();
        assert_eq!(space2.states(), space.states());
        assert_eq!(space2.theta_map(), space.theta_map());
        assert_eq!(emit(&Document::TypeSpace(space_to_doc(&space2))), text);
    }

    #[test]
    fn schema_is_checked() {
        let text = emit(&Document::ExprList(ExprListDoc { exprs: vec!["nat(h)".into()] }));
        let bad = text.replace(SCHEMA, "fatspace/v0");
        assert!(matches!(parse(&bad), Err(DocumentError::BadSchema(_))));
    }

    #[test]
    fn malformed_rational_is_a_schema_error() {
        let space = uniform_two_state();
        let mut doc = space_to_doc(&space);
        doc.beliefs.get_mut("a").unwrap().get_mut("x").unwrap().insert("x".into(), "1/0".into());
        assert!(matches!(space_from_doc(&doc), Err(DocumentError::BadRational(_))));
    }
}
