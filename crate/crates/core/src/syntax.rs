//! Textual element syntax: `(i, level:elem, j)` for Bruck–Reilly triples,
//! `(k,l)` for bicyclic elements and `0` for the zero.

use std::fmt;
use std::str::FromStr;

use crate::bicyclic::BicyclicElem;
use crate::bruck_reilly::BrElement;
use crate::clifford::CliffordElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Element {
    Zero,
    Triple(BrElement),
    Bicyclic(BicyclicElem),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError(pub String);

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot parse element: {}", self.0)
    }
}

impl std::error::Error for SyntaxError {}

fn number<T: FromStr>(s: &str, whole: &str) -> Result<T, SyntaxError> {
    s.trim()
        .parse()
        .map_err(|_| SyntaxError(format!("{whole:?}: {:?} is not a non-negative integer", s.trim())))
}

impl FromStr for Element {
    type Err = SyntaxError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        if t == "0" {
            return Ok(Element::Zero);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| SyntaxError(format!("{text:?}: expected 0 or a parenthesised tuple")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        match parts.as_slice() {
            [k, l] => Ok(Element::Bicyclic(BicyclicElem::new(number(k, text)?, number(l, text)?))),
            [i, s, j] => {
                let (level, elem) = s
                    .split_once(':')
                    .ok_or_else(|| SyntaxError(format!("{text:?}: middle entry must be level:elem")))?;
                Ok(Element::Triple(BrElement::new(
                    number(i, text)?,
                    CliffordElement::new(number(level, text)?, number(elem, text)?),
                    number(j, text)?,
                )))
            }
            _ => Err(SyntaxError(format!("{text:?}: expected two or three entries"))),
        }
    }
}

impl Element {
    /// Reads the element as a member of a Bruck–Reilly extension.
    pub fn into_br(self) -> Result<BrElement, SyntaxError> {
        match self {
            Element::Zero => Ok(BrElement::Zero),
            Element::Triple(x) => Ok(x),
            Element::Bicyclic(x) => Err(SyntaxError(format!(
                "{x} is a bicyclic pair, expected (i, level:elem, j)"
            ))),
        }
    }
}

pub fn parse_br(text: &str) -> Result<BrElement, SyntaxError> {
    text.parse::<Element>()?.into_br()
}
