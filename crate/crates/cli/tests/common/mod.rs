//! Deterministic fixture files for the CLI suites.
//!
//! Compiled into each test binary; not every binary uses every fixture.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Output;
use std::sync::Arc;

use fatspace::document::{self, Document, StateMapDoc};
use fatspace::measure::{FAMeasure, SetField};
use fatspace::rat::rat;
use fatspace::set::ElemSet;
use fatspace::typespace::{NatureSpace, Player, TypeSpace};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_fatspace")
}

pub fn run(args: &[&str]) -> Output {
    std::process::Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

pub fn write(path: &Path, doc: &Document) {
    std::fs::write(path, document::emit(doc)).expect("fixture written");
}

pub fn coin_nature() -> NatureSpace {
    NatureSpace::with_points(&["h", "t"]).unwrap()
}

pub fn players_ab() -> Vec<Player> {
    vec![Player::new("a"), Player::new("b")]
}

/// The singleton space document at h.
pub fn singleton_file(dir: &Path) -> PathBuf {
    let space = TypeSpace::singleton(coin_nature(), "h", &players_ab()).unwrap();
    let path = dir.join("singleton.json");
    write(&path, &Document::TypeSpace(document::space_to_doc(&space)));
    path
}

/// The singleton space document at t.
pub fn singleton_t_file(dir: &Path) -> PathBuf {
    let space = TypeSpace::singleton(coin_nature(), "t", &players_ab()).unwrap();
    let path = dir.join("singleton_t.json");
    write(&path, &Document::TypeSpace(document::space_to_doc(&space)));
    path
}

/// Two constant-θ states; player a's type at x gives its own-type class
/// only half the mass.
pub fn broken_introspection_file(dir: &Path) -> PathBuf {
    let field = Arc::new(SetField::powerset(2));
    let skew = Arc::new(FAMeasure::new(field.clone(), vec![rat(1, 2), rat(1, 2)]).unwrap());
    let sure = Arc::new(FAMeasure::new(field.clone(), vec![rat(0, 1), rat(1, 1)]).unwrap());
    let mut beliefs: BTreeMap<Player, Vec<Arc<FAMeasure>>> = BTreeMap::new();
    beliefs.insert(Player::new("a"), vec![skew.clone(), sure.clone()]);
    beliefs.insert(Player::new("b"), vec![sure.clone(), sure.clone()]);
    let space = TypeSpace::new(
        vec!["x".into(), "y".into()],
        field,
        coin_nature(),
        vec![0, 0],
        players_ab(),
        beliefs,
    )
    .unwrap();
    let path = dir.join("broken.json");
    write(&path, &Document::TypeSpace(document::space_to_doc(&space)));
    path
}

/// The four-point measure with atoms {p0,p1}, {p2,p3} and weights 3/5, 2/5.
pub fn measure_file(dir: &Path) -> PathBuf {
    let names: Vec<String> = (0..4).map(|k| format!("p{k}")).collect();
    let field = Arc::new(
        SetField::from_atoms(
            4,
            vec![ElemSet::from_elems(4, [0, 1]), ElemSet::from_elems(4, [2, 3])],
        )
        .unwrap(),
    );
    let measure = FAMeasure::new(field, vec![rat(3, 5), rat(2, 5)]).unwrap();
    let path = dir.join("measure.json");
    write(&path, &Document::Measure(document::measure_to_doc(&names, &measure)));
    path
}

/// The powerset field document over the same four points.
pub fn powerset_field_file(dir: &Path) -> PathBuf {
    let names: Vec<String> = (0..4).map(|k| format!("p{k}")).collect();
    let doc = fatspace::document::SetFieldDoc {
        universe: names.clone(),
        field_atoms: names.iter().map(|n| vec![n.clone()]).collect(),
    };
    let path = dir.join("powerset.json");
    write(&path, &Document::SetField(doc));
    path
}

/// Identity state map for the singleton space.
pub fn identity_map_file(dir: &Path) -> PathBuf {
    let mut map = BTreeMap::new();
    map.insert("m".to_string(), "m".to_string());
    let path = dir.join("identity.json");
    write(&path, &Document::StateMap(StateMapDoc { map }));
    path
}

/// The level-2 record space, written through the binary itself.
pub fn w2_file(dir: &Path) -> PathBuf {
    let path = dir.join("w2.json");
    let out = run(&["soberdrunk", "build", "2", "-o", path.to_str().unwrap()]);
    assert!(out.status.success());
    path
}
