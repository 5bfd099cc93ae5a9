//! Polynomial-time canonical basis, fast saturation, regularization and
//! recognition of unique-criticals systems.

use std::collections::HashMap;

use crate::attrset::AttrSet;
use crate::closure::ClosureEngine;
use crate::error::Result;
use crate::implication::{Implication, ImplicationSet};
use crate::oracle::require_standard;

/// Saturation of `x`: the fixpoint of firing only those implications whose
/// premise closure is strictly below the closure of `x`.
///
/// This is the fast counterpart of the brute-force saturation in the oracle
/// module; agreement between the two is enforced by the test suite rather
/// than assumed.
pub fn saturation(sigma: &ImplicationSet, x: &AttrSet) -> AttrSet {
    let engine = ClosureEngine::new(sigma);
    let phis: Vec<AttrSet> = sigma.iter().map(|imp| engine.close(imp.premise())).collect();
    saturation_with(sigma, &engine, &phis, x)
}

fn saturation_with(
    sigma: &ImplicationSet,
    engine: &ClosureEngine,
    premise_closures: &[AttrSet],
    x: &AttrSet,
) -> AttrSet {
    let target = engine.close(x);
    let mut cur = x.clone();
    loop {
        let mut changed = false;
        for (imp, phi) in sigma.iter().zip(premise_closures) {
            if *phi != target
                && imp.premise().is_subset(&cur)
                && !imp.conclusion().is_subset(&cur)
            {
                cur.union_with(imp.conclusion());
                changed = true;
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// The Duquenne–Guigues canonical basis, aggregated, rendered as
/// `C -> phi(C) \ C` and sorted. Unique for the closure system.
///
/// Each implication is first replaced by `saturation(premise) -> closure(premise)`;
/// then, among implications sharing a closure, only the containment-minimal
/// premises survive and trivial (already closed) premises are dropped.
pub fn canonical_basis(sigma: &ImplicationSet) -> ImplicationSet {
    let engine = ClosureEngine::new(sigma);
    let phis: Vec<AttrSet> = sigma.iter().map(|imp| engine.close(imp.premise())).collect();
    let mut by_closure: HashMap<AttrSet, Vec<AttrSet>> = HashMap::new();
    for (imp, phi) in sigma.iter().zip(&phis) {
        let sat = saturation_with(sigma, &engine, &phis, imp.premise());
        if sat == *phi {
            continue;
        }
        let group = by_closure.entry(phi.clone()).or_default();
        if !group.contains(&sat) {
            group.push(sat);
        }
    }
    let mut impls = Vec::new();
    for (phi, premises) in by_closure {
        for p in &premises {
            let minimal = premises.iter().all(|q| q == p || !q.is_subset(p));
            if minimal {
                impls.push(Implication::normalized(p.clone(), phi.clone()).unwrap());
            }
        }
    }
    ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized()
}

/// A basis is regular when no non-binary premise is absorbed by the closure
/// of one of its own members.
pub fn is_regular(sigma: &ImplicationSet) -> bool {
    find_irregular(sigma, &ClosureEngine::new(sigma)).is_none()
}

/// First (implication index, absorbing attribute) in deterministic order.
fn find_irregular(sigma: &ImplicationSet, engine: &ClosureEngine) -> Option<(usize, usize)> {
    let n = sigma.ground().len();
    for (idx, imp) in sigma.iter().enumerate() {
        if imp.is_binary() {
            continue;
        }
        for a in imp.premise().iter() {
            let rest = imp.premise().difference(&AttrSet::singleton(n, a));
            if rest.is_subset(&engine.close(&AttrSet::singleton(n, a))) {
                return Some((idx, a));
            }
        }
    }
    None
}

/// Rewrite `sigma` into an equivalent regular basis without increasing the
/// implication count, left size or right size. The input is aggregated first;
/// each offending premise `{a} + F` is split along `phi(F)` and the part
/// driven by `a` alone is merged into the binary implication of `a`.
pub fn regularize(sigma: &ImplicationSet) -> Result<ImplicationSet> {
    require_standard(sigma)?;
    let n = sigma.ground().len();
    let mut current = sigma.aggregation();
    loop {
        let engine = ClosureEngine::new(&current);
        let Some((idx, a)) = find_irregular(&current, &engine) else {
            return Ok(current.normalized());
        };
        let imp = current.implications()[idx].clone();
        let single = AttrSet::singleton(n, a);
        let f = imp.premise().difference(&single);
        let phi_f = engine.close(&f);
        let d = imp.conclusion();
        let to_binary = d.difference(&phi_f);
        let to_rest = d.intersection(&phi_f);

        let mut impls: Vec<Implication> = Vec::with_capacity(current.len() + 1);
        for (i, other) in current.iter().enumerate() {
            if i != idx {
                impls.push(other.clone());
            }
        }
        if !to_rest.is_empty() {
            impls.push(Implication::new(f.clone(), to_rest).unwrap());
        }
        if !to_binary.is_empty() {
            // merge into the binary implication of `a`, creating it if absent
            match impls.iter_mut().find(|i| i.premise() == &single) {
                Some(existing) => {
                    let merged = existing.conclusion().union(&to_binary);
                    *existing = Implication::new(single.clone(), merged).unwrap();
                }
                None => impls.push(Implication::new(single.clone(), to_binary).unwrap()),
            }
        }
        current = ImplicationSet::from_implications(current.ground_arc(), impls).aggregation();
    }
}

/// A unique-criticals system has pairwise distinct closures of the canonical
/// premises.
pub fn is_uc_system(sigma: &ImplicationSet) -> bool {
    let canonical = canonical_basis(sigma);
    let engine = ClosureEngine::new(&canonical);
    let closures: Vec<AttrSet> =
        canonical.iter().map(|imp| engine.close(imp.premise())).collect();
    for (i, a) in closures.iter().enumerate() {
        for b in &closures[i + 1..] {
            if a == b {
                return false;
            }
        }
    }
    true
}
