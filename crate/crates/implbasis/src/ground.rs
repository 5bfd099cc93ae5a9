//! The ground set: an ordered list of distinct attribute names.

use std::collections::HashMap;

use crate::attrset::AttrSet;
use crate::error::{Error, Result};

/// Ordered attribute universe. The declaration order is the total order used
/// for every deterministic tie-break and for rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyGround);
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty()
                || name == "->"
                || name == "ground:"
                || name.contains(char::is_whitespace)
                || name.contains('#')
            {
                return Err(Error::InvalidAttrName(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateAttr(name.clone()));
            }
        }
        Ok(GroundSet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn empty_set(&self) -> AttrSet {
        AttrSet::empty(self.len())
    }

    pub fn full_set(&self) -> AttrSet {
        AttrSet::full(self.len())
    }

    /// Build a set from attribute names; unknown names are an error.
    pub fn set_of<'a, I: IntoIterator<Item = &'a str>>(&self, names: I) -> Result<AttrSet> {
        let mut s = self.empty_set();
        for name in names {
            match self.index_of(name) {
                Some(i) => s.insert(i),
                None => return Err(Error::InvalidAttrName(name.to_string())),
            }
        }
        Ok(s)
    }

    /// Convenience: parse a whitespace-separated list of names.
    pub fn parse_set(&self, text: &str) -> Result<AttrSet> {
        self.set_of(text.split_whitespace())
    }

    /// Render a set as space-joined names in declaration order.
    pub fn render_set(&self, set: &AttrSet) -> String {
        set.iter().map(|i| self.name(i)).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(GroundSet::new(["a", "a"]).is_err());
        assert!(GroundSet::new(["->"]).is_err());
        assert!(GroundSet::new(Vec::<String>::new()).is_err());
        assert!(GroundSet::new(["a b"]).is_err());
    }

    #[test]
    fn set_round_trip() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let s = g.parse_set("c a").unwrap();
        assert_eq!(g.render_set(&s), "a c");
        assert!(g.parse_set("d").is_err());
    }
}
