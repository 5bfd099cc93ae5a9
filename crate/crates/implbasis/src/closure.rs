//! Closure computation by forward chaining, inference and equivalence tests.

use crate::attrset::AttrSet;
use crate::error::{Error, Result};
use crate::implication::{Implication, ImplicationSet};

/// Reusable forward-chaining engine over a fixed implication set.
///
/// Uses per-implication unsatisfied-premise counters so that one `close`
/// call runs in time linear in the size of the basis.
pub struct ClosureEngine {
    n: usize,
    premises: Vec<AttrSet>,
    conclusions: Vec<AttrSet>,
    premise_len: Vec<u32>,
    // for each attribute, the implications whose premise contains it
    watchers: Vec<Vec<u32>>,
}

impl ClosureEngine {
    pub fn new(sigma: &ImplicationSet) -> Self {
        Self::from_parts(sigma.ground().len(), sigma.implications())
    }

    /// Build from a bare implication list, avoiding an `ImplicationSet`
    /// wrapper; used by the search loops that assemble candidate bases.
    pub fn from_parts(n: usize, implications: &[Implication]) -> Self {
        let mut premises = Vec::with_capacity(implications.len());
        let mut conclusions = Vec::with_capacity(implications.len());
        let mut premise_len = Vec::with_capacity(implications.len());
        let mut watchers = vec![Vec::new(); n];
        for (idx, imp) in implications.iter().enumerate() {
            premises.push(imp.premise().clone());
            conclusions.push(imp.conclusion().clone());
            premise_len.push(imp.premise().len() as u32);
            for a in imp.premise().iter() {
                watchers[a].push(idx as u32);
            }
        }
        ClosureEngine { n, premises, conclusions, premise_len, watchers }
    }

    pub fn close(&self, x: &AttrSet) -> AttrSet {
        debug_assert_eq!(x.width(), self.n);
        let mut result = x.clone();
        let mut counts = self.premise_len.clone();
        let mut stack: Vec<usize> = x.iter().collect();
        while let Some(a) = stack.pop() {
            for &idx in &self.watchers[a] {
                let idx = idx as usize;
                counts[idx] -= 1;
                if counts[idx] == 0 {
                    for b in self.conclusions[idx].iter() {
                        if !result.contains(b) {
                            result.insert(b);
                            stack.push(b);
                        }
                    }
                }
            }
        }
        result
    }

    pub fn is_closed(&self, x: &AttrSet) -> bool {
        self.premises
            .iter()
            .zip(&self.conclusions)
            .all(|(p, c)| !p.is_subset(x) || c.is_subset(x))
    }

    pub fn follows(&self, imp: &Implication) -> bool {
        imp.conclusion().is_subset(&self.close(imp.premise()))
    }

    /// Every implication of `sigma` follows from this engine's basis.
    pub fn entails_all(&self, sigma: &ImplicationSet) -> bool {
        sigma.iter().all(|imp| self.follows(imp))
    }
}

/// Least superset of `x` respecting every implication of `sigma`.
pub fn closure(sigma: &ImplicationSet, x: &AttrSet) -> AttrSet {
    ClosureEngine::new(sigma).close(x)
}

/// Naive iterate-to-fixpoint closure; serves as an oracle for the
/// counter-based engine in tests.
pub fn closure_naive(sigma: &ImplicationSet, x: &AttrSet) -> AttrSet {
    let mut cur = x.clone();
    loop {
        let mut changed = false;
        for imp in sigma.iter() {
            if imp.premise().is_subset(&cur) && !imp.conclusion().is_subset(&cur) {
                cur.union_with(imp.conclusion());
                changed = true;
            }
        }
        if !changed {
            return cur;
        }
    }
}

pub fn is_closed(sigma: &ImplicationSet, x: &AttrSet) -> bool {
    ClosureEngine::new(sigma).is_closed(x)
}

/// True iff the conclusion is contained in the closure of the premise.
pub fn follows(sigma: &ImplicationSet, imp: &Implication) -> bool {
    ClosureEngine::new(sigma).follows(imp)
}

/// True iff both sets define the same closure system.
pub fn equivalent(sigma1: &ImplicationSet, sigma2: &ImplicationSet) -> Result<bool> {
    if !sigma1.same_ground(sigma2) {
        return Err(Error::GroundMismatch);
    }
    let e1 = ClosureEngine::new(sigma1);
    let e2 = ClosureEngine::new(sigma2);
    Ok(e1.entails_all(sigma2) && e2.entails_all(sigma1))
}

/// True iff no single implication can be removed while preserving equivalence.
pub fn is_nonredundant(sigma: &ImplicationSet) -> bool {
    (0..sigma.len()).all(|i| {
        let rest = sigma.without(i);
        !follows(&rest, &sigma.implications()[i])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_implications;

    #[test]
    fn closure_matches_naive() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        let g = s.ground();
        for mask in 0..(1u64 << g.len()) {
            let x = AttrSet::from_mask(g.len(), mask);
            assert_eq!(closure(&s, &x), closure_naive(&s, &x));
        }
    }

    #[test]
    fn closed_set_is_fixpoint() {
        let s = parse_implications("a -> b c\nb c -> d\n").unwrap();
        let x = s.ground().parse_set("b c d").unwrap();
        assert_eq!(closure(&s, &x), x);
        assert!(is_closed(&s, &x));
    }

    #[test]
    fn follows_on_empty_basis() {
        let s = parse_implications("ground: a b\n").unwrap();
        let imp = Implication::new(
            s.ground().parse_set("a").unwrap(),
            s.ground().parse_set("b").unwrap(),
        )
        .unwrap();
        assert!(!follows(&s, &imp));
    }

    #[test]
    fn redundancy() {
        let s = parse_implications("a -> b\nb -> c\na -> c\n").unwrap();
        assert!(!is_nonredundant(&s));
        let t = parse_implications("a -> b\nb -> c\n").unwrap();
        assert!(is_nonredundant(&t));
    }
}
