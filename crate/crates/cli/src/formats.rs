//! Relation documents: the textual formats the CLI reads and writes.
//!
//! Edge format: one whitespace-separated label pair per line, `#` starts
//! a comment, and an optional `elements:` header declares labels up
//! front (the only way to state isolated elements, which matter: they
//! are undominated). Labels not declared are added on first use, in
//! order of appearance.
//!
//! JSON format: `{"elements": [...], "pairs": [["u","v"], ...]}` with
//! unknown fields rejected and every pair label required to be declared.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use relkit::relation::{ElementSet, Relation};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("input is empty")]
    Empty,
    #[error("line {line}: expected two labels, found {found}")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: duplicate label declaration {label:?}")]
    DuplicateDeclaration { line: usize, label: String },
    #[error("duplicate element {label:?} at position {index}")]
    DuplicateElement { index: usize, label: String },
    #[error("pair {index}: unknown label {label:?}")]
    UnknownLabel { index: usize, label: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Edge,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationDocument {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String)>,
}

impl RelationDocument {
    pub fn parse(text: &str, format: Format) -> Result<Self, ParseError> {
        match format {
            Format::Edge => Self::parse_edge(text),
            Format::Json => Self::parse_json(text),
        }
    }

    fn parse_edge(text: &str) -> Result<Self, ParseError> {
        let mut elements: Vec<String> = Vec::new();
        let mut pairs = Vec::new();
        let mut saw_content = false;
        let mut declare = |label: &str, line: usize, explicit: bool| -> Result<(), ParseError> {
            if elements.iter().any(|e| e == label) {
                if explicit {
                    return Err(ParseError::DuplicateDeclaration { line, label: label.into() });
                }
                return Ok(());
            }
            elements.push(label.to_string());
            Ok(())
        };
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            saw_content = true;
            if let Some(rest) = line.strip_prefix("elements:") {
                for label in rest.split_whitespace() {
                    declare(label, line_no, true)?;
                }
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(ParseError::Malformed { line: line_no, found: tokens.len() });
            }
            declare(tokens[0], line_no, false)?;
            declare(tokens[1], line_no, false)?;
            pairs.push((tokens[0].to_string(), tokens[1].to_string()));
        }
        if !saw_content {
            return Err(ParseError::Empty);
        }
        Ok(RelationDocument { elements, pairs })
    }

    fn parse_json(text: &str) -> Result<Self, ParseError> {
        if text.trim().is_empty() {
            return Err(ParseError::Empty);
        }
        let doc: RelationDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }

    fn validate(&self) -> Result<(), ParseError> {
        for (index, label) in self.elements.iter().enumerate() {
            if self.elements[..index].contains(label) {
                return Err(ParseError::DuplicateElement { index, label: label.clone() });
            }
        }
        for (index, (u, v)) in self.pairs.iter().enumerate() {
            for label in [u, v] {
                if !self.elements.contains(label) {
                    return Err(ParseError::UnknownLabel { index, label: label.clone() });
                }
            }
        }
        Ok(())
    }

    pub fn from_relation(r: &Relation) -> Self {
        let elements = r.universe().labels().to_vec();
        let pairs = r
            .pairs()
            .into_iter()
            .map(|(u, v)| (elements[u].clone(), elements[v].clone()))
            .collect();
        RelationDocument { elements, pairs }
    }

    pub fn to_relation(&self) -> Result<Relation, ParseError> {
        self.validate()?;
        let universe = ElementSet::new(self.elements.iter().cloned())
            .expect("elements validated distinct");
        let index = |label: &str| {
            self.elements
                .iter()
                .position(|e| e == label)
                .expect("pairs validated against elements")
        };
        let pairs = self.pairs.iter().map(|(u, v)| (index(u), index(v)));
        Ok(Relation::new(universe, pairs).expect("indices in range by construction"))
    }

    pub fn write(&self, format: Format) -> String {
        match format {
            Format::Edge => self.write_edge(),
            Format::Json => self.write_json(),
        }
    }

    fn write_edge(&self) -> String {
        let mut out = String::from("elements:");
        for label in &self.elements {
            out.push(' ');
            out.push_str(label);
        }
        out.push('\n');
        for (u, v) in &self.pairs {
            out.push_str(u);
            out.push(' ');
            out.push_str(v);
            out.push('\n');
        }
        out
    }

    fn write_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }
}
