//! Binary relations on attributes, the non-binary premise/conclusion relation
//! of a regular basis, and recognition of systems without D-cycles.
//!
//! Recognition of the narrower quasi-acyclic class is out of scope.

use std::sync::Arc;

use crate::attrset::AttrSet;
use crate::canonical::is_regular;
use crate::closure::ClosureEngine;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::implication::{Implication, ImplicationSet};
use crate::kbasis::Tiebreak;
use crate::oracle::Oracle;

/// A binary relation on the ground set, stored as successor rows.
#[derive(Clone, PartialEq, Eq)]
pub struct PairRelation {
    ground: Arc<GroundSet>,
    succ: Vec<AttrSet>,
}

impl PairRelation {
    pub fn empty(ground: Arc<GroundSet>) -> Self {
        let n = ground.len();
        PairRelation { ground, succ: vec![AttrSet::empty(n); n] }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(
        ground: Arc<GroundSet>,
        pairs: I,
    ) -> Self {
        let mut rel = Self::empty(ground);
        for (a, b) in pairs {
            rel.succ[a].insert(b);
        }
        rel
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.succ[a].contains(b)
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(AttrSet::is_empty)
    }

    /// Sorted list of pairs.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, row) in self.succ.iter().enumerate() {
            for b in row.iter() {
                out.push((a, b));
            }
        }
        out
    }

    pub fn dual(&self) -> Self {
        let n = self.ground.len();
        let mut rel = Self::empty(Arc::clone(&self.ground));
        for a in 0..n {
            for b in self.succ[a].iter() {
                rel.succ[b].insert(a);
            }
        }
        rel
    }

    pub fn is_subrelation_of(&self, other: &Self) -> bool {
        self.succ.iter().zip(&other.succ).all(|(a, b)| a.is_subset(b))
    }

    /// Reachability closure by repeated row absorption.
    pub fn transitive_closure(&self) -> Self {
        let n = self.ground.len();
        let mut succ = self.succ.clone();
        for k in 0..n {
            let row_k = succ[k].clone();
            for i in 0..n {
                if succ[i].contains(k) {
                    succ[i].union_with(&row_k);
                }
            }
        }
        PairRelation { ground: Arc::clone(&self.ground), succ }
    }

    pub fn has_cycle(&self) -> bool {
        self.find_cycle().is_some()
    }

    /// A witness cycle `a -> ... -> a`, if any.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        let n = self.ground.len();
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut color = vec![0u8; n];
        let mut parent = vec![usize::MAX; n];
        for start in 0..n {
            if color[start] != 0 {
                continue;
            }
            let mut stack = vec![(start, self.succ[start].iter().collect::<Vec<_>>(), 0usize)];
            color[start] = 1;
            while let Some((node, children, cursor)) = stack.last_mut() {
                if *cursor < children.len() {
                    let child = children[*cursor];
                    *cursor += 1;
                    match color[child] {
                        0 => {
                            color[child] = 1;
                            parent[child] = *node;
                            stack.push((child, self.succ[child].iter().collect(), 0));
                        }
                        1 => {
                            // found a back edge node -> child
                            let mut path = vec![child];
                            let mut cur = *node;
                            while cur != child {
                                path.push(cur);
                                cur = parent[cur];
                            }
                            path.push(child);
                            path.reverse();
                            return Some(path);
                        }
                        _ => {}
                    }
                } else {
                    color[*node] = 2;
                    stack.pop();
                }
            }
        }
        None
    }
}

/// The canonical basis with every non-binary premise replaced by the
/// corresponding K-basis generator; conclusions are untouched.
pub fn star_basis(sigma: &ImplicationSet, tiebreak: Tiebreak) -> Result<ImplicationSet> {
    let parts = crate::kbasis::k_aligned(sigma, tiebreak)?;
    let impls: Vec<Implication> = parts
        .canonical
        .iter()
        .zip(&parts.premises)
        .map(|(imp, c_k)| {
            if imp.is_binary() {
                imp.clone()
            } else {
                Implication::new(c_k.clone(), imp.conclusion().clone()).unwrap()
            }
        })
        .collect();
    Ok(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized())
}

/// Assemble the premise-refined canonical basis from an explicitly chosen
/// K-basis (used to validate tie-break independence).
pub fn star_from_parts(
    canonical: &ImplicationSet,
    k: &ImplicationSet,
) -> Result<ImplicationSet> {
    let engine = ClosureEngine::new(canonical);
    let mut impls = Vec::with_capacity(canonical.len());
    for imp in canonical.iter() {
        if imp.is_binary() {
            impls.push(imp.clone());
            continue;
        }
        let phi = engine.close(imp.premise());
        let premise = k
            .iter()
            .map(Implication::premise)
            .find(|p| p.is_subset(imp.premise()) && engine.close(p) == phi)
            .ok_or_else(|| Error::CrossCheck("no K-basis premise matches a canonical one".into()))?
            .clone();
        impls.push(Implication::new(premise, imp.conclusion().clone()).unwrap());
    }
    Ok(ImplicationSet::from_implications(canonical.ground_arc(), impls).normalized())
}

/// The premise-times-conclusion relation of the non-binary part of a regular
/// basis.
pub fn delta(sigma: &ImplicationSet) -> Result<PairRelation> {
    if !is_regular(sigma) {
        return Err(Error::NotRegular);
    }
    let mut rel = PairRelation::empty(sigma.ground_arc());
    for imp in sigma.iter() {
        if imp.is_binary() {
            continue;
        }
        for a in imp.premise().iter() {
            for b in imp.conclusion().iter() {
                rel.succ[a].insert(b);
            }
        }
    }
    Ok(rel)
}

fn star_delta(sigma: &ImplicationSet, tiebreak: Tiebreak) -> Result<PairRelation> {
    delta(&star_basis(sigma, tiebreak)?)
}

/// A standard system is without D-cycles iff the relation of its
/// premise-refined canonical basis has an acyclic transitive closure.
pub fn is_d_cycle_free(sigma: &ImplicationSet) -> Result<bool> {
    Ok(d_cycle_witness(sigma, Tiebreak::First)?.is_none())
}

/// A witness D-cycle, if one exists. The verdict is independent of the
/// generator tie-break; the flag exists so that independence can be
/// validated from the outside.
pub fn d_cycle_witness(sigma: &ImplicationSet, tiebreak: Tiebreak) -> Result<Option<Vec<usize>>> {
    Ok(star_delta(sigma, tiebreak)?.find_cycle())
}

pub(crate) fn require_d_cycle_free(sigma: &ImplicationSet) -> Result<()> {
    match d_cycle_witness(sigma, Tiebreak::First)? {
        None => Ok(()),
        Some(cycle) => {
            let g = sigma.ground();
            let rendered: Vec<&str> = cycle.iter().map(|&a| g.name(a)).collect();
            Err(Error::DCycle(rendered.join(" -> ")))
        }
    }
}

/// Comparison of the refined-basis relation against the brute-force dual
/// D-relation: their transitive closures must coincide.
pub struct TrReport {
    pub star_tr: PairRelation,
    pub d_dual_tr: PairRelation,
    pub subset_before_closure: bool,
    pub equal: bool,
}

pub fn verify_tr(sigma: &ImplicationSet, oracle_bound: usize) -> Result<TrReport> {
    verify_tr_with(sigma, oracle_bound, Tiebreak::First)
}

pub fn verify_tr_with(
    sigma: &ImplicationSet,
    oracle_bound: usize,
    tiebreak: Tiebreak,
) -> Result<TrReport> {
    let oracle = Oracle::new(sigma, oracle_bound)?;
    let d_dual = oracle.d_relation()?.dual();
    let star = star_delta(sigma, tiebreak)?;
    let star_tr = star.transitive_closure();
    let d_dual_tr = d_dual.transitive_closure();
    Ok(TrReport {
        subset_before_closure: star.is_subrelation_of(&d_dual),
        equal: star_tr == d_dual_tr,
        star_tr,
        d_dual_tr,
    })
}
