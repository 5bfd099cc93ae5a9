//! E-basis, aggregated and optimized E-bases, F- and FOE-bases, and the
//! per-critical-set conclusion cores that pin down the minimal non-binary
//! right size.
//!
//! The E-basis is defined only for systems without D-cycles; every
//! constructor here checks that up front. Inside the oracle bound the
//! minimal-cover route and the K-basis route are both computed and must
//! agree; outside the bound only the polynomial K-basis route runs.


use crate::attrset::AttrSet;
use crate::canonical::{self, canonical_basis, is_uc_system};
use crate::closure::ClosureEngine;
use crate::drelation::require_d_cycle_free;
use crate::error::{Error, Result};
use crate::implication::{Implication, ImplicationSet};
use crate::kbasis::{greedy_generator, k_aligned, KAligned, Tiebreak};
use crate::optsearch::{min_nonbinary_sr, SearchBounds};
use crate::oracle::Oracle;

fn unit(premise: &AttrSet, attr: usize) -> Implication {
    Implication::new(premise.clone(), AttrSet::singleton(premise.width(), attr)).unwrap()
}

/// Unit E-basis from the K-basis route: for each attribute, the non-binary
/// implications whose premise closure is containment-minimal among the
/// canonical implications concluding that attribute.
fn e_basis_k_route(sigma: &ImplicationSet, parts: &KAligned) -> ImplicationSet {
    let n = sigma.ground().len();
    let engine = ClosureEngine::new(&parts.canonical);
    let phis: Vec<AttrSet> =
        parts.canonical.iter().map(|imp| engine.close(imp.premise())).collect();
    let mut impls: Vec<Implication> = Vec::new();
    for x in 0..n {
        let candidates: Vec<usize> = parts
            .canonical
            .iter()
            .enumerate()
            .filter(|(_, imp)| !imp.is_binary() && imp.conclusion().contains(x))
            .map(|(i, _)| i)
            .collect();
        for &i in &candidates {
            let minimal = candidates.iter().all(|&j| j == i || !phis[j].is_subset(&phis[i]));
            if minimal {
                impls.push(unit(&parts.premises[i], x));
            }
        }
    }
    for &(a, b) in parts.order.covers() {
        impls.push(unit(&AttrSet::singleton(n, a), b));
    }
    ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized()
}

/// Unit E-basis from the brute-force minimal covers of the oracle.
fn e_basis_cover_route(sigma: &ImplicationSet, parts: &KAligned, bound: usize) -> Result<ImplicationSet> {
    let oracle = Oracle::new(sigma, bound)?;
    let n = sigma.ground().len();
    let mut impls: Vec<Implication> = Vec::new();
    for x in 0..n {
        let covers = oracle.minimal_covers(x)?;
        let phis: Vec<u64> = covers.iter().map(|c| oracle.closure_mask(c.as_mask())).collect();
        for (i, cover) in covers.iter().enumerate() {
            let minimal = phis.iter().all(|&p| p == phis[i] || p & !phis[i] != 0);
            if minimal {
                impls.push(unit(cover, x));
            }
        }
    }
    for &(a, b) in parts.order.covers() {
        impls.push(unit(&AttrSet::singleton(n, a), b));
    }
    Ok(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized())
}

/// The unit-form E-basis of a system without D-cycles.
pub fn e_basis(sigma: &ImplicationSet, oracle_bound: usize) -> Result<ImplicationSet> {
    require_d_cycle_free(sigma)?;
    let parts = k_aligned(sigma, Tiebreak::First)?;
    let from_k = e_basis_k_route(sigma, &parts);
    if sigma.ground().len() <= oracle_bound {
        let from_covers = e_basis_cover_route(sigma, &parts, oracle_bound)?;
        if from_covers != from_k {
            return Err(Error::CrossCheck(
                "minimal-cover route and K-basis route disagree on the E-basis".into(),
            ));
        }
    }
    Ok(from_k)
}

/// Aggregation of the E-basis.
pub fn aggregated_e_basis(sigma: &ImplicationSet, oracle_bound: usize) -> Result<ImplicationSet> {
    Ok(e_basis(sigma, oracle_bound)?.aggregation())
}

/// Optimized E-basis: the aggregated E-basis with every non-binary conclusion
/// reduced to its order-maximal elements.
pub fn optimized_e_basis(sigma: &ImplicationSet, oracle_bound: usize) -> Result<ImplicationSet> {
    let parts = k_aligned(sigma, Tiebreak::First)?;
    let aggregated = e_basis(sigma, oracle_bound)?.aggregation();
    let impls: Vec<Implication> = aggregated
        .iter()
        .map(|imp| {
            if imp.is_binary() {
                imp.clone()
            } else {
                Implication::new(imp.premise().clone(), parts.order.max_of(imp.conclusion()))
                    .unwrap()
            }
        })
        .collect();
    Ok(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized())
}

/// F-basis: K-basis non-binary part plus, for each attribute, a binary
/// implication onto a minimal order generator of its principal down-set.
///
/// Requires join-semidistributivity: certified either by the absence of
/// D-cycles or by the oracle on bounded inputs. `force` skips the
/// certification and leaves correctness to the caller.
pub fn f_basis(sigma: &ImplicationSet, oracle_bound: usize, force: bool) -> Result<ImplicationSet> {
    let jsd_certified = is_join_semidistributive_certified(sigma, oracle_bound)?;
    if !jsd_certified && !force {
        return Err(Error::JsdUnverified);
    }
    let parts = k_aligned(sigma, Tiebreak::First)?;
    f_basis_from_parts(sigma, &parts)
}

fn is_join_semidistributive_certified(
    sigma: &ImplicationSet,
    oracle_bound: usize,
) -> Result<bool> {
    if crate::drelation::is_d_cycle_free(sigma)? {
        return Ok(true);
    }
    if sigma.ground().len() <= oracle_bound {
        return Oracle::new(sigma, oracle_bound)?.is_join_semidistributive();
    }
    Ok(false)
}

fn f_basis_from_parts(sigma: &ImplicationSet, parts: &KAligned) -> Result<ImplicationSet> {
    let n = sigma.ground().len();
    let engine = ClosureEngine::new(&parts.canonical);
    let mut impls: Vec<Implication> = parts
        .canonical
        .iter()
        .zip(&parts.premises)
        .zip(&parts.conclusions_max)
        .filter(|((imp, _), _)| !imp.is_binary())
        .map(|((_, c_k), y_k)| Implication::new(c_k.clone(), y_k.clone()).unwrap())
        .collect();
    for a in 0..n {
        let single = AttrSet::singleton(n, a);
        let below = parts.order.down_set(a).difference(&single);
        if below.is_empty() {
            continue;
        }
        let generator = greedy_generator(&parts.order, &engine, &below, Tiebreak::First);
        impls.push(Implication::new(single, generator).unwrap());
    }
    Ok(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized())
}

/// FOE-basis: F-basis binary part plus optimized-E non-binary part.
pub fn foe_basis(sigma: &ImplicationSet, oracle_bound: usize) -> Result<ImplicationSet> {
    require_d_cycle_free(sigma)?;
    let parts = k_aligned(sigma, Tiebreak::First)?;
    let f = f_basis_from_parts(sigma, &parts)?;
    let oe = optimized_e_basis(sigma, oracle_bound)?;
    let mut impls: Vec<Implication> = f.binary_part().implications().to_vec();
    impls.extend(oe.nonbinary_part().implications().iter().cloned());
    Ok(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized())
}

/// Per-critical-set conclusion cores of a unique-criticals system: the
/// order-maximal elements of each non-binary canonical conclusion that occur
/// in no strictly smaller essential interval. Their total size is a lower
/// bound for the non-binary right size of any minimum basis.
pub struct MSets {
    /// (critical set, core) for every critical set with more than one element
    pub per_critical: Vec<(AttrSet, AttrSet)>,
    pub lower_bound: usize,
}

pub fn m_sets(sigma: &ImplicationSet) -> Result<MSets> {
    if !is_uc_system(sigma) {
        return Err(Error::NotUc);
    }
    let parts = k_aligned(sigma, Tiebreak::First)?;
    let engine = ClosureEngine::new(&parts.canonical);
    let nonbinary: Vec<(&Implication, AttrSet)> = parts
        .canonical
        .iter()
        .filter(|imp| !imp.is_binary())
        .map(|imp| (imp, engine.close(imp.premise())))
        .collect();
    let mut per_critical = Vec::new();
    let mut lower_bound = 0;
    for (imp, phi) in &nonbinary {
        // drop elements that already occur in a smaller essential interval,
        // then take the order-maximal survivors. The maximum must be taken
        // after the exclusion: an element shadowed only by excluded ones
        // still has to be concluded here.
        let mut filtered = imp.conclusion().clone();
        for (other, other_phi) in &nonbinary {
            if other_phi != phi && other_phi.is_subset(phi) {
                filtered = filtered.difference(other.conclusion());
            }
        }
        let core = parts.order.max_of(&filtered);
        lower_bound += core.len();
        per_critical.push((imp.premise().clone(), core));
    }
    Ok(MSets { per_critical, lower_bound })
}

/// Result of checking the refinement map from the aggregated E-basis onto the
/// canonical basis.
pub struct MainEReport {
    pub bijection: bool,
    pub refinement: bool,
    pub s_e_aggregated: usize,
    pub s_canonical: usize,
}

impl MainEReport {
    pub fn pass(&self) -> bool {
        self.bijection && self.refinement && self.s_e_aggregated <= self.s_canonical
    }
}

/// Verify that mapping each aggregated-E implication `A -> B` to
/// `saturation(A) -> closure(A)` is a bijection onto the canonical basis with
/// `B` inside `closure(A) \ saturation(A)`.
pub fn verify_main_e(sigma: &ImplicationSet, oracle_bound: usize) -> Result<MainEReport> {
    let aggregated = aggregated_e_basis(sigma, oracle_bound)?;
    let canonical = canonical_basis(sigma);
    let engine = ClosureEngine::new(&canonical);
    let mut hit = vec![false; canonical.len()];
    let mut bijection = true;
    let mut refinement = true;
    for imp in aggregated.iter() {
        let sat = canonical::saturation(sigma, imp.premise());
        let phi = engine.close(imp.premise());
        match canonical.iter().position(|c| *c.premise() == sat) {
            Some(i) if !hit[i] => {
                hit[i] = true;
                let allowed = phi.difference(&sat);
                if !imp.conclusion().is_subset(&allowed)
                    || engine.close(canonical.implications()[i].premise()) != phi
                {
                    refinement = false;
                }
            }
            _ => bijection = false,
        }
    }
    bijection &= hit.iter().all(|&h| h);
    Ok(MainEReport {
        bijection,
        refinement,
        s_e_aggregated: aggregated.metrics().total.s,
        s_canonical: canonical.metrics().total.s,
    })
}

/// Result of comparing the non-binary right size of the optimized E-basis
/// against its combinatorial lower bound and the exhaustive minimum.
pub struct RsMinReport {
    pub s_r_oe_nonbinary: usize,
    pub core_lower_bound: usize,
    pub exhaustive_minimum: usize,
}

impl RsMinReport {
    pub fn pass(&self) -> bool {
        self.s_r_oe_nonbinary == self.core_lower_bound
            && self.s_r_oe_nonbinary == self.exhaustive_minimum
    }
}

pub fn verify_rs_min(sigma: &ImplicationSet, bounds: &SearchBounds) -> Result<RsMinReport> {
    let oe = optimized_e_basis(sigma, bounds.oracle_bound)?;
    let cores = m_sets(sigma)?;
    let exhaustive = min_nonbinary_sr(sigma, bounds)?;
    Ok(RsMinReport {
        s_r_oe_nonbinary: oe.metrics().nonbinary.s_r,
        core_lower_bound: cores.lower_bound,
        exhaustive_minimum: exhaustive,
    })
}

/// Order the implications of a basis as an ordered direct sequence: binary
/// part first, non-binary parts by increasing premise closure, and for the
/// optimized variants the binary part repeated at the end.
pub fn ordered_sequence(sigma: &ImplicationSet, repeat_binary: bool) -> ImplicationSet {
    let engine = ClosureEngine::new(sigma);
    let mut nonbinary: Vec<(usize, Implication)> = sigma
        .nonbinary_part()
        .implications()
        .iter()
        .map(|imp| (engine.close(imp.premise()).len(), imp.clone()))
        .collect();
    nonbinary.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    let binary = sigma.binary_part().normalized();
    let mut impls: Vec<Implication> = binary.implications().to_vec();
    impls.extend(nonbinary.into_iter().map(|(_, imp)| imp));
    if repeat_binary {
        impls.extend(binary.implications().iter().cloned());
    }
    ImplicationSet::from_implications(sigma.ground_arc(), impls)
}
