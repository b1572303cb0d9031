//! Textual pair descriptors:
//!
//! ```text
//! pair    := group "/" subset
//! group   := type ("x" type)*            A2xB2
//! subset  := "1"                         empty J
//!          | indices                     W/{1,3}
//!          | group ["@" indices]         F4/B3, E6/A3xA1@{1,2,3,5}
//! indices := "{" [int ("," int)*] "}"    1-based generators
//! ```
//!
//! A subset given by type alone must match at least one set of generators.
//! If the matches fall into several classes under diagram symmetry, the
//! lexicographically first index set is used and a note names the others.

use std::collections::BTreeMap;
use std::fmt;

use coxeter_bruhat::pair::CoxeterPair;
use coxeter_bruhat::{CoxeterMatrix, ParabolicSubset, WeylType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    /// Character offset of the offending token.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (at position {})", self.message, self.position + 1)?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.position))
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub struct PairSpec {
    pub pair: CoxeterPair,
    /// Set when a type-only subset was ambiguous.
    pub note: Option<String>,
}

/// Largest rank for which a type-only subset is searched for.
const MAX_SEARCH_RANK: usize = 16;

struct Parser<'a> {
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn error(&self, position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            position,
            message: message.into(),
        }
    }

    /// `type ("x" type)*` starting at `offset`.
    fn types(&self, text: &str, offset: usize) -> Result<Vec<WeylType>, ParseError> {
        let mut out = Vec::new();
        let mut start = 0;
        for token in text.split('x') {
            if token.is_empty() {
                return Err(self.error(offset + start, "expected a Weyl type such as A3 or F4"));
            }
            let t: WeylType = token
                .parse()
                .map_err(|_| self.error(offset + start, format!("'{token}' is not a finite Weyl type")))?;
            out.push(t);
            start += token.len() + 1;
        }
        Ok(out)
    }

    /// `{i,...}` starting at `offset`, returned 0-based.
    fn indices(&self, text: &str, offset: usize, rank: usize) -> Result<Vec<usize>, ParseError> {
        if !text.starts_with('{') {
            return Err(self.error(offset, "expected '{'"));
        }
        let Some(body) = text[1..].strip_suffix('}') else {
            return Err(self.error(offset + text.len(), "expected '}' at the end"));
        };
        let mut out = Vec::new();
        if body.trim().is_empty() {
            return Ok(out);
        }
        let mut start = offset + 1;
        for item in body.split(',') {
            let lead = item.len() - item.trim_start().len();
            let pos = start + lead;
            let g: usize = item
                .trim()
                .parse()
                .map_err(|_| self.error(pos, format!("'{}' is not a generator index", item.trim())))?;
            if g == 0 || g > rank {
                return Err(self.error(pos, format!("generator {g} out of range 1..={rank}")));
            }
            if out.contains(&(g - 1)) {
                return Err(self.error(pos, format!("generator {g} listed twice")));
            }
            out.push(g - 1);
            start += item.len() + 1;
        }
        Ok(out)
    }
}

fn sorted_names(types: &[WeylType]) -> Vec<String> {
    let mut v: Vec<String> = types.iter().map(|t| t.to_string()).collect();
    v.sort();
    v
}

fn one_based(members: &[usize]) -> String {
    let v: Vec<String> = members.iter().map(|g| (g + 1).to_string()).collect();
    format!("{{{}}}", v.join(","))
}

pub fn parse_pair(input: &str) -> Result<PairSpec, ParseError> {
    let p = Parser { input };
    let Some(slash) = input.find('/') else {
        p.types(input, 0)?;
        return Err(p.error(input.len(), "expected '/' between the group and the subset"));
    };
    let group = p.types(&input[..slash], 0)?;
    let m = CoxeterMatrix::weyl_product(&group);
    let rest_at = slash + 1;
    let rest = &input[rest_at..];
    let make = |members: Vec<usize>| {
        let j = ParabolicSubset::new(&m, members).expect("indices checked against the rank");
        CoxeterPair::new(m.clone(), j).expect("standard matrices are Weyl")
    };

    if rest.is_empty() {
        return Err(p.error(rest_at, "expected a subset after '/'"));
    }
    if rest == "1" {
        return Ok(PairSpec {
            pair: make(Vec::new()),
            note: None,
        });
    }
    if rest.starts_with('{') {
        let members = p.indices(rest, rest_at, m.rank())?;
        return Ok(PairSpec {
            pair: make(members),
            note: None,
        });
    }

    let (type_text, at) = match rest.find('@') {
        Some(k) => (&rest[..k], Some(k)),
        None => (rest, None),
    };
    let jtypes = p.types(type_text, rest_at)?;
    let wanted = sorted_names(&jtypes);
    let size: usize = jtypes.iter().map(|t| t.rank()).sum();

    if let Some(k) = at {
        let members = p.indices(&rest[k + 1..], rest_at + k + 1, m.rank())?;
        let pair = make(members);
        let found = sorted_names(&pair.subset_types());
        if found != wanted {
            return Err(p.error(
                rest_at,
                format!(
                    "generators {} generate {}, not {}",
                    one_based(pair.subset.members()),
                    pair.subset_type_name(),
                    type_text
                ),
            ));
        }
        return Ok(PairSpec { pair, note: None });
    }

    if m.rank() > MAX_SEARCH_RANK {
        return Err(p.error(
            rest_at + type_text.len(),
            format!("give explicit generators with '@{{...}}' for groups of rank above {MAX_SEARCH_RANK}"),
        ));
    }
    // Type only: every subset of the right size and type, by symmetry class.
    let mut classes: BTreeMap<String, Vec<CoxeterPair>> = BTreeMap::new();
    if size <= m.rank() {
        for mask in 0u64..1 << m.rank() {
            if mask.count_ones() as usize != size {
                continue;
            }
            let pair = CoxeterPair::new(m.clone(), ParabolicSubset::from_mask(&m, mask)).expect("Weyl");
            if sorted_names(&pair.subset_types()) == wanted {
                classes.entry(pair.symmetry_key()).or_default().push(pair);
            }
        }
    }
    let mut firsts: Vec<CoxeterPair> = classes
        .into_values()
        .map(|mut v| {
            v.sort_by(|a, b| a.subset.members().cmp(b.subset.members()));
            v.swap_remove(0)
        })
        .collect();
    if firsts.is_empty() {
        return Err(p.error(rest_at, format!("{} has no parabolic subgroup of type {type_text}", &input[..slash])));
    }
    firsts.sort_by(|a, b| a.subset.members().cmp(b.subset.members()));
    let note = (firsts.len() > 1).then(|| {
        let others: Vec<String> = firsts[1..].iter().map(|q| format!("@{}", one_based(q.subset.members()))).collect();
        format!(
            "{input} matches {} inequivalent subsets; using {} (others: {})",
            firsts.len(),
            firsts[0].name,
            others.join(", ")
        )
    });
    Ok(PairSpec {
        pair: firsts.swap_remove(0),
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> String {
        parse_pair(s).unwrap().pair.name
    }

    #[test]
    fn forms() {
        assert_eq!(name("A3/A2"), "A3/A2@{1,2}");
        assert_eq!(name("F4/B3"), "F4/B3@{1,2,3}");
        assert_eq!(name("E6/A3xA1@{1,2,3,5}"), "E6/A3xA1@{1,2,3,5}");
        assert_eq!(name("A2xB2/{1,3}"), "A2xB2/A1xA1@{1,3}");
        assert_eq!(name("G2/1"), "G2/1");
        assert_eq!(name("A3/{}"), "A3/1");
        assert!(parse_pair("F4/A2").unwrap().note.is_none());
        let d5 = parse_pair("D5/A3").unwrap();
        assert_eq!(d5.pair.quotient_length(), 14);
        assert!(d5.note.unwrap().contains("3 inequivalent"));
    }

    #[test]
    fn errors_point_at_the_problem() {
        let e = parse_pair("A3/A5").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_pair("H3/A1").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse_pair("A2xQ1/1").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_pair("B3/{1,4}").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.to_string().contains("out of range"));
        let e = parse_pair("B3").unwrap_err();
        assert_eq!(e.position, 2);
        assert_eq!(parse_pair("nope").unwrap_err().position, 0);
        assert!(parse_pair("A20/A1").is_err());
        assert_eq!(name("A20/A1@{20}"), "A20/A1@{20}");
        let e = parse_pair("A3/A2@{1,3}").unwrap_err();
        assert!(e.message.contains("generate A1xA1"));
        assert!(parse_pair("A3/{1,1}").is_err());
        assert!(parse_pair("A3/{1,2").is_err());
    }
}
