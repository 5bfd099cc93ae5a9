//! Implications, implication sets, and their size metrics.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::attrset::AttrSet;
use crate::error::{Error, Result};
use crate::ground::GroundSet;

/// An ordered pair premise -> conclusion of non-empty, disjoint attribute sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Implication {
    premise: AttrSet,
    conclusion: AttrSet,
}

impl Implication {
    pub fn new(premise: AttrSet, conclusion: AttrSet) -> Result<Self> {
        if premise.is_empty() {
            return Err(Error::EmptyPremise);
        }
        if conclusion.is_empty() {
            return Err(Error::EmptyConclusion);
        }
        if !premise.is_disjoint(&conclusion) {
            return Err(Error::PremiseConclusionOverlap);
        }
        Ok(Implication { premise, conclusion })
    }

    /// Like `new`, but drops premise attributes from the conclusion first.
    /// Used when assembling implications from closures.
    pub fn normalized(premise: AttrSet, conclusion: AttrSet) -> Result<Self> {
        let conclusion = conclusion.difference(&premise);
        Self::new(premise, conclusion)
    }

    pub fn premise(&self) -> &AttrSet {
        &self.premise
    }

    pub fn conclusion(&self) -> &AttrSet {
        &self.conclusion
    }

    /// Binary means a single-attribute premise.
    pub fn is_binary(&self) -> bool {
        self.premise.len() == 1
    }

    pub fn size(&self) -> usize {
        self.premise.len() + self.conclusion.len()
    }
}

impl fmt::Debug for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?}", self.premise, self.conclusion)
    }
}

/// Size metrics of one part of a basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct PartMetrics {
    pub count: usize,
    pub s: usize,
    pub s_l: usize,
    pub s_r: usize,
}

/// Size metrics of a basis, total and split into binary / non-binary parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct SizeMetrics {
    pub total: PartMetrics,
    pub binary: PartMetrics,
    pub nonbinary: PartMetrics,
}

impl PartMetrics {
    fn add(&mut self, imp: &Implication) {
        self.count += 1;
        self.s_l += imp.premise().len();
        self.s_r += imp.conclusion().len();
        self.s = self.s_l + self.s_r;
    }
}

/// An ordered list of implications over a shared ground set.
#[derive(Clone, PartialEq, Eq)]
pub struct ImplicationSet {
    ground: Arc<GroundSet>,
    implications: Vec<Implication>,
}

impl ImplicationSet {
    pub fn new(ground: Arc<GroundSet>) -> Self {
        ImplicationSet { ground, implications: Vec::new() }
    }

    pub fn from_implications(ground: Arc<GroundSet>, implications: Vec<Implication>) -> Self {
        let n = ground.len();
        assert!(implications
            .iter()
            .all(|i| i.premise().width() == n && i.conclusion().width() == n));
        ImplicationSet { ground, implications }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_arc(&self) -> Arc<GroundSet> {
        Arc::clone(&self.ground)
    }

    pub fn same_ground(&self, other: &ImplicationSet) -> bool {
        self.ground == other.ground
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn push(&mut self, imp: Implication) {
        assert_eq!(imp.premise().width(), self.ground.len());
        self.implications.push(imp);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Implication> {
        self.implications.iter()
    }

    pub fn contains(&self, imp: &Implication) -> bool {
        self.implications.contains(imp)
    }

    /// A copy without the implication at `idx`.
    pub fn without(&self, idx: usize) -> ImplicationSet {
        let mut implications = self.implications.clone();
        implications.remove(idx);
        ImplicationSet { ground: Arc::clone(&self.ground), implications }
    }

    pub fn binary_part(&self) -> ImplicationSet {
        self.filtered(|i| i.is_binary())
    }

    pub fn nonbinary_part(&self) -> ImplicationSet {
        self.filtered(|i| !i.is_binary())
    }

    fn filtered(&self, keep: impl Fn(&Implication) -> bool) -> ImplicationSet {
        ImplicationSet {
            ground: Arc::clone(&self.ground),
            implications: self.implications.iter().filter(|i| keep(i)).cloned().collect(),
        }
    }

    /// Sorted by (premise, conclusion) with duplicates removed.
    pub fn normalized(&self) -> ImplicationSet {
        let mut implications = self.implications.clone();
        implications.sort();
        implications.dedup();
        ImplicationSet { ground: Arc::clone(&self.ground), implications }
    }

    /// Split every implication into single-attribute conclusions.
    pub fn unit_expansion(&self) -> ImplicationSet {
        let mut out = Vec::new();
        for imp in &self.implications {
            for y in imp.conclusion().iter() {
                let single = AttrSet::singleton(self.ground.len(), y);
                out.push(Implication::new(imp.premise().clone(), single).unwrap());
            }
        }
        ImplicationSet { ground: Arc::clone(&self.ground), implications: out }
    }

    /// Merge implications with equal premises, unioning conclusions.
    /// Output is sorted by premise.
    pub fn aggregation(&self) -> ImplicationSet {
        let mut merged: BTreeMap<AttrSet, AttrSet> = BTreeMap::new();
        for imp in &self.implications {
            merged
                .entry(imp.premise().clone())
                .and_modify(|c| c.union_with(imp.conclusion()))
                .or_insert_with(|| imp.conclusion().clone());
        }
        let implications = merged
            .into_iter()
            .map(|(p, c)| Implication::new(p, c).unwrap())
            .collect();
        ImplicationSet { ground: Arc::clone(&self.ground), implications }
    }

    pub fn metrics(&self) -> SizeMetrics {
        let mut m = SizeMetrics::default();
        for imp in &self.implications {
            m.total.add(imp);
            if imp.is_binary() {
                m.binary.add(imp);
            } else {
                m.nonbinary.add(imp);
            }
        }
        m
    }
}

impl fmt::Debug for ImplicationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .implications
            .iter()
            .map(|i| {
                format!(
                    "{} -> {}",
                    self.ground.render_set(i.premise()),
                    self.ground.render_set(i.conclusion())
                )
            })
            .collect();
        write!(f, "ImplicationSet{rendered:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ImplicationSet {
        let g = Arc::new(GroundSet::new(["a", "b", "c"]).unwrap());
        let mut s = ImplicationSet::new(Arc::clone(&g));
        s.push(Implication::new(g.parse_set("a").unwrap(), g.parse_set("b c").unwrap()).unwrap());
        s
    }

    #[test]
    fn invariants() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let a = g.parse_set("a").unwrap();
        let ab = g.parse_set("a b").unwrap();
        assert!(matches!(
            Implication::new(a.clone(), ab.clone()),
            Err(Error::PremiseConclusionOverlap)
        ));
        assert!(matches!(Implication::new(a.clone(), g.empty_set()), Err(Error::EmptyConclusion)));
        assert!(matches!(Implication::new(g.empty_set(), a.clone()), Err(Error::EmptyPremise)));
        // normalized drops the overlap instead
        let imp = Implication::normalized(a, ab).unwrap();
        assert_eq!(imp.conclusion().len(), 1);
    }

    #[test]
    fn expansion_and_aggregation() {
        let s = sample();
        let u = s.unit_expansion();
        assert_eq!(u.len(), 2);
        assert_eq!(u.aggregation(), s.aggregation());
        // aggregation of {a->b, a->c} is {a->bc}
        assert_eq!(u.aggregation().len(), 1);
        assert_eq!(u.aggregation().implications()[0].conclusion().len(), 2);
    }

    #[test]
    fn metrics_identities() {
        let s = sample();
        let m = s.metrics();
        assert_eq!(m.total.s, 3);
        assert_eq!(m.total.s, m.total.s_l + m.total.s_r);
        let mu = s.unit_expansion().metrics();
        assert_eq!(mu.total.s_r, m.total.s_r);
        assert_eq!(mu.total.count, m.total.s_r);
    }
}
