use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, Context, Result};

use fatspace::document::{self, Document, ReportDoc};
use fatspace::measure::{FAMeasure, SetField};
use fatspace::typespace::TypeSpace;

pub fn read_document(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    document::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_space(path: &Path) -> Result<TypeSpace> {
    match read_document(path)? {
        Document::TypeSpace(doc) => Ok(document::space_from_doc(&doc)?),
        other => Err(anyhow!("expected a type_space document, found {}", kind_of(&other))),
    }
}

pub fn load_measure(path: &Path) -> Result<(Vec<String>, FAMeasure)> {
    match read_document(path)? {
        Document::Measure(doc) => Ok(document::measure_from_doc(&doc)?),
        other => Err(anyhow!("expected a measure document, found {}", kind_of(&other))),
    }
}

pub fn load_set_field(path: &Path) -> Result<(Vec<String>, SetField)> {
    match read_document(path)? {
        Document::SetField(doc) => Ok(document::set_field_from_doc(&doc)?),
        other => Err(anyhow!("expected a set_field document, found {}", kind_of(&other))),
    }
}

pub fn load_state_map(path: &Path) -> Result<BTreeMap<String, String>> {
    match read_document(path)? {
        Document::StateMap(doc) => Ok(doc.map),
        other => Err(anyhow!("expected a state_map document, found {}", kind_of(&other))),
    }
}

pub fn kind_of(doc: &Document) -> &'static str {
    match doc {
        Document::NatureSpace(_) => "nature_space",
        Document::TypeSpace(_) => "type_space",
        Document::Measure(_) => "measure",
        Document::SetField(_) => "set_field",
        Document::StateMap(_) => "state_map",
        Document::ExprList(_) => "expr_list",
        Document::Report(_) => "report",
    }
}

pub fn write_document(path: &Path, doc: &Document) -> Result<()> {
    std::fs::write(path, document::emit(doc))
        .with_context(|| format!("writing {}", path.display()))
}

/// Prints the human lines followed by the machine-readable report document.
pub fn print_report(command: &str, status: &str, lines: Vec<String>, data: BTreeMap<String, String>) {
    for line in &lines {
        println!("{line}");
    }
    let report = ReportDoc { command: command.to_string(), status: status.to_string(), lines, data };
    print!("{}", document::emit(&Document::Report(report)));
}
