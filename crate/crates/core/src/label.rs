//! Element labels.
//!
//! Atoms are plain strings. Limits and products build tuple labels out of the
//! labels of their constituents, rendered as `(a,b,...)`. The ordering on
//! [`Label`] agrees with byte-wise ordering of the rendered strings, which is
//! what lets a [`FinSetObj`](crate::fincat::FinSetObj) serialize as a sorted
//! string array while tuple labels stay cheap to build and compare.
//!
//! To keep the two orderings in agreement atoms are restricted: an atom is
//! either the single character `*` or a non-empty string whose characters all
//! sort strictly after `,`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Atom(Arc<str>),
    Tuple(Arc<[Label]>),
}

impl Label {
    /// Builds an atom, rejecting strings that would break the rendering order.
    pub fn atom(s: &str) -> Result<Label> {
        if is_valid_atom(s) {
            Ok(Label::Atom(Arc::from(s)))
        } else {
            Err(Error::BadLabel(s.to_string()))
        }
    }

    /// Atom constructor for labels the library itself generates.
    pub(crate) fn from_static(s: &str) -> Label {
        debug_assert!(is_valid_atom(s), "invalid internal atom {s:?}");
        Label::Atom(Arc::from(s))
    }

    pub fn tuple<I: IntoIterator<Item = Label>>(parts: I) -> Label {
        Label::Tuple(parts.into_iter().collect::<Vec<_>>().into())
    }

    pub fn pair(a: &Label, b: &Label) -> Label {
        Label::Tuple(Arc::from(vec![a.clone(), b.clone()]))
    }

    pub fn star() -> Label {
        Label::from_static("*")
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Label::Atom(s) => Some(s),
            Label::Tuple(_) => None,
        }
    }

    pub fn parts(&self) -> Option<&[Label]> {
        match self {
            Label::Atom(_) => None,
            Label::Tuple(p) => Some(p),
        }
    }

    /// Parses the rendered form back into a label.
    pub fn parse(s: &str) -> Result<Label> {
        let bytes = s.as_bytes();
        let (label, used) = parse_at(s, 0)?;
        if used != bytes.len() {
            return Err(Error::BadLabel(s.to_string()));
        }
        Ok(label)
    }
}

fn is_valid_atom(s: &str) -> bool {
    s == "*" || (!s.is_empty() && s.chars().all(|c| c > ','))
}

fn parse_at(s: &str, start: usize) -> Result<(Label, usize)> {
    let bytes = s.as_bytes();
    let bad = || Error::BadLabel(s.to_string());
    if start >= bytes.len() {
        return Err(bad());
    }
    if bytes[start] == b'(' {
        let mut parts = Vec::new();
        let mut pos = start + 1;
        if bytes.get(pos) == Some(&b')') {
            return Ok((Label::tuple(parts), pos + 1));
        }
        loop {
            let (part, next) = parse_at(s, pos)?;
            parts.push(part);
            match bytes.get(next) {
                Some(b',') => pos = next + 1,
                Some(b')') => return Ok((Label::tuple(parts), next + 1)),
                _ => return Err(bad()),
            }
        }
    }
    let end = s[start..]
        .find(|c| c == ',' || c == '(' || c == ')')
        .map(|i| start + i)
        .unwrap_or(bytes.len());
    let atom = &s[start..end];
    if !is_valid_atom(atom) {
        return Err(bad());
    }
    Ok((Label::Atom(Arc::from(atom)), end))
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Label::Atom(a), Label::Atom(b)) => a.as_bytes().cmp(b.as_bytes()),
            // '(' sorts before every character an atom may start with.
            (Label::Tuple(_), Label::Atom(_)) => Ordering::Less,
            (Label::Atom(_), Label::Tuple(_)) => Ordering::Greater,
            (Label::Tuple(a), Label::Tuple(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                a.iter().cmp(b.iter())
            }
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Atom(s) => f.write_str(s),
            Label::Tuple(parts) => {
                f.write_str("(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Label {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Label {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Label::parse(&s).map_err(serde::de::Error::custom)
    }
}
