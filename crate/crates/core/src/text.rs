//! The plain-text relation format.
//!
//! One relation per stanza, stanzas separated by blank lines:
//!
//! ```text
//! carrier: a b c
//! a < b
//! a < c
//! ```
//!
//! The carrier line lists distinct labels; element ids are assigned by
//! position. The remaining lines list strict pairs. The pair set need not
//! be transitively reduced, but it must already be transitively closed:
//! the reader closes nothing and rejects non-closed input (see
//! [`Relation::validate`]). `#` starts a comment running to end of line.
//!
//! The writer emits the full strict pair set, sorted lexicographically by
//! label, with the carrier in id order — so writing is canonical and
//! parse∘write is the identity.

use std::fmt;

use thiserror::Error;

use crate::relation::{ElemSet, Relation, RelationError, MAX_ELEMENTS};

/// Errors raised while parsing or assembling labeled relations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: RelationError },
    #[error("bad label {label:?}: {why}")]
    Label { label: String, why: &'static str },
    #[error("too many elements: {n} exceeds the supported {max}", max = MAX_ELEMENTS)]
    TooMany { n: usize },
    #[error("expected exactly one relation stanza, found {found}")]
    NotSingle { found: usize },
}

/// Display names for element ids; id `i` is named `names[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
}

impl Labels {
    /// Validates distinctness and token shape (non-empty, no whitespace,
    /// no `#`, not the literal `<`).
    pub fn new(names: Vec<String>) -> Result<Labels, TextError> {
        if names.len() > MAX_ELEMENTS {
            return Err(TextError::TooMany { n: names.len() });
        }
        for (i, name) in names.iter().enumerate() {
            check_token(name)?;
            if names[..i].contains(name) {
                return Err(TextError::Label {
                    label: name.clone(),
                    why: "duplicate label",
                });
            }
        }
        Ok(Labels { names })
    }

    /// `prefix1 .. prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Labels, TextError> {
        Labels::new((1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn label(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn id_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    /// Appends a fresh label, returning its id.
    pub fn push(&mut self, label: &str) -> Result<usize, TextError> {
        if self.names.len() == MAX_ELEMENTS {
            return Err(TextError::TooMany {
                n: self.names.len() + 1,
            });
        }
        check_token(label)?;
        if self.id_of(label).is_some() {
            return Err(TextError::Label {
                label: label.to_string(),
                why: "duplicate label",
            });
        }
        self.names.push(label.to_string());
        Ok(self.names.len() - 1)
    }

    /// Resolves a comma-separated label list to an element set.
    pub fn resolve_list(&self, list: &str) -> Result<ElemSet, TextError> {
        let mut set = ElemSet::EMPTY;
        for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match self.id_of(token) {
                Some(id) => set.insert(id),
                None => {
                    return Err(TextError::Label {
                        label: token.to_string(),
                        why: "unknown label",
                    })
                }
            }
        }
        Ok(set)
    }
}

impl fmt::Display for Labels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.names.join(" "))
    }
}

fn check_token(name: &str) -> Result<(), TextError> {
    let label = || name.to_string();
    if name.is_empty() {
        return Err(TextError::Label {
            label: label(),
            why: "empty label",
        });
    }
    if name == "<" {
        return Err(TextError::Label {
            label: label(),
            why: "reserved token",
        });
    }
    if name.contains(char::is_whitespace) || name.contains('#') || name.contains(',') {
        return Err(TextError::Label {
            label: label(),
            why: "whitespace, ',' and '#' are not allowed",
        });
    }
    Ok(())
}

/// Start line, labels and strict pairs of a stanza being read.
type Stanza = (usize, Labels, Vec<(usize, usize)>);

/// Parses every stanza in the input.
pub fn parse_relations(input: &str) -> Result<Vec<(Relation, Labels)>, TextError> {
    let mut out = Vec::new();
    let mut stanza: Option<Stanza> = None;

    let flush =
        |stanza: &mut Option<Stanza>, out: &mut Vec<(Relation, Labels)>| -> Result<(), TextError> {
            if let Some((start, labels, pairs)) = stanza.take() {
                let carrier = ElemSet::first(labels.len());
                let relation =
                    Relation::validate(carrier, &pairs).map_err(|source| TextError::Invalid {
                        line: start,
                        source,
                    })?;
                out.push((relation, labels));
            }
            Ok(())
        };

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            flush(&mut stanza, &mut out)?;
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match &mut stanza {
            None => {
                if tokens[0] != "carrier:" {
                    return Err(TextError::Syntax {
                        line: line_no,
                        msg: "a stanza must start with `carrier:`".into(),
                    });
                }
                let names: Vec<String> = tokens[1..].iter().map(|s| s.to_string()).collect();
                let labels = Labels::new(names).map_err(|e| match e {
                    TextError::Label { label, why } => TextError::Syntax {
                        line: line_no,
                        msg: format!("bad label {label:?}: {why}"),
                    },
                    other => other,
                })?;
                stanza = Some((line_no, labels, Vec::new()));
            }
            Some((_, labels, pairs)) => {
                if tokens.len() != 3 || tokens[1] != "<" {
                    return Err(TextError::Syntax {
                        line: line_no,
                        msg: "expected a pair line `a < b`".into(),
                    });
                }
                let resolve = |t: &str| {
                    labels.id_of(t).ok_or_else(|| TextError::Syntax {
                        line: line_no,
                        msg: format!("unknown label {t:?}"),
                    })
                };
                pairs.push((resolve(tokens[0])?, resolve(tokens[2])?));
            }
        }
    }
    flush(&mut stanza, &mut out)?;
    Ok(out)
}

/// Parses input that must hold exactly one stanza.
pub fn parse_relation(input: &str) -> Result<(Relation, Labels), TextError> {
    let mut all = parse_relations(input)?;
    if all.len() != 1 {
        return Err(TextError::NotSingle { found: all.len() });
    }
    Ok(all.pop().unwrap())
}

/// Writes one stanza: carrier in id order, all strict pairs sorted
/// lexicographically by label.
pub fn write_relation(r: &Relation, labels: &Labels) -> String {
    assert!(
        r.carrier().max_id().map_or(0, |m| m + 1) <= labels.len(),
        "labels do not cover the carrier"
    );
    let mut s = String::from("carrier:");
    for id in r.carrier().iter() {
        s.push(' ');
        s.push_str(labels.label(id));
    }
    s.push('\n');
    let mut pairs: Vec<(&str, &str)> = r
        .strict_pairs()
        .into_iter()
        .map(|(a, b)| (labels.label(a), labels.label(b)))
        .collect();
    pairs.sort_unstable();
    for (a, b) in pairs {
        s.push_str(a);
        s.push_str(" < ");
        s.push_str(b);
        s.push('\n');
    }
    s
}
