//! Desk-scale exhaustive computation of optimum-basis parameters and optimum
//! bases themselves.
//!
//! Finding an optimum basis is NP-complete even for closure systems without
//! D-cycles, so everything here enumerates honestly within explicit bounds
//! and refuses larger inputs instead of guessing. The search space rests on
//! two structural facts: every minimum basis has exactly one implication per
//! critical set, with a premise saturating to that critical set, and the
//! conclusion lives inside the premise closure.

use std::collections::HashMap;

use crate::attrset::AttrSet;
use crate::canonical::{canonical_basis, is_regular, saturation};
use crate::closure::{equivalent, ClosureEngine};
use crate::error::{Error, Result};
use crate::implication::{Implication, ImplicationSet};
use crate::oracle::Oracle;

/// Bounds for the exhaustive searches.
#[derive(Debug, Clone)]
pub struct SearchBounds {
    pub oracle_bound: usize,
    /// refuse subset enumeration over sets larger than this
    pub subset_bound: usize,
    /// cap on candidate-basis entailment tests
    pub max_tests: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            oracle_bound: crate::oracle::DEFAULT_ORACLE_BOUND,
            subset_bound: 20,
            max_tests: 2_000_000,
        }
    }
}

/// A minimum-size witness set.
#[derive(Debug, Clone)]
pub struct Witness {
    pub size: usize,
    pub set: AttrSet,
}

/// Subsets of `domain` with exactly `k` members, in lexicographic order.
fn k_subsets(domain: &AttrSet, k: usize) -> Vec<AttrSet> {
    let members: Vec<usize> = domain.iter().collect();
    let n = domain.width();
    let mut out = Vec::new();
    if k == 0 || k > members.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(AttrSet::from_indices(n, idx.iter().map(|&i| members[i])));
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + members.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Smallest subset of `domain` whose closure equals `target`, scanning by
/// size then lexicographic order.
fn min_generator(
    engine: &ClosureEngine,
    domain: &AttrSet,
    target: &AttrSet,
) -> Option<Witness> {
    for size in 1..=domain.len() {
        for u in k_subsets(domain, size) {
            if engine.close(&u) == *target {
                return Some(Witness { size, set: u });
            }
        }
    }
    None
}

fn verify_critical(sigma: &ImplicationSet, c: &AttrSet, bounds: &SearchBounds) -> Result<()> {
    let oracle = Oracle::new(sigma, bounds.oracle_bound)?;
    if oracle.catalog().critical.contains(c) {
        Ok(())
    } else {
        Err(Error::NotCritical)
    }
}

/// Minimum cardinality of a generator of the critical set `c`: the smallest
/// `U` inside `c` with the same closure. The witness is the lexicographically
/// least one, and its saturation is checked to give back `c`.
pub fn k_c(sigma: &ImplicationSet, c: &AttrSet, bounds: &SearchBounds) -> Result<Witness> {
    verify_critical(sigma, c, bounds)?;
    if c.len() > bounds.subset_bound {
        return Err(Error::SearchBound(format!(
            "critical set has {} members, subset bound is {}",
            c.len(),
            bounds.subset_bound
        )));
    }
    let engine = ClosureEngine::new(sigma);
    let target = engine.close(c);
    let witness = min_generator(&engine, c, &target)
        .expect("the critical set itself generates its closure");
    if saturation(sigma, &witness.set) != *c {
        return Err(Error::CrossCheck("minimum generator does not saturate to its critical set".into()));
    }
    Ok(witness)
}

/// Minimum cardinality of a set whose closure is `phi({x}) \ {x}`, for a
/// critical singleton `x`.
pub fn b_c(sigma: &ImplicationSet, x: usize, bounds: &SearchBounds) -> Result<Witness> {
    let n = sigma.ground().len();
    let single = AttrSet::singleton(n, x);
    verify_critical(sigma, &single, bounds)
        .map_err(|e| match e {
            Error::NotCritical => {
                Error::NotCriticalSingleton(sigma.ground().name(x).to_string())
            }
            other => other,
        })?;
    let engine = ClosureEngine::new(sigma);
    let target = engine.close(&single).difference(&single);
    if target.len() > bounds.subset_bound {
        return Err(Error::SearchBound("singleton closure exceeds the subset bound".into()));
    }
    let witness = min_generator(&engine, &target, &target)
        .expect("the reduced closure generates itself");
    Ok(witness)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Objective {
    /// total size: premises and conclusions
    TotalSize,
    /// conclusion literals over all implications
    TotalSr,
    /// conclusion literals over non-binary implications, binary part pinned
    NonbinarySr,
}

struct Slot {
    phi: AttrSet,
    /// all premises saturating to the critical set, sorted by (size, lex)
    candidates: Vec<AttrSet>,
    /// containment-minimal candidates
    minimal_candidates: Vec<AttrSet>,
}

const CRITICAL_CAP: usize = 24;

struct Searcher<'a> {
    sigma: &'a ImplicationSet,
    n: usize,
    slots: Vec<Slot>,
    fixed: Vec<Implication>,
    objective: Objective,
    /// strongest implications per slot, used for independent lower bounds
    strongest: Vec<Vec<Implication>>,
    m_cache: HashMap<(usize, AttrSet), usize>,
    tests: u64,
    max_tests: u64,
    /// per-slot minimum and maximum cost, with suffix sums
    min_cost_suffix: Vec<usize>,
    max_cost_suffix: Vec<usize>,
}

impl<'a> Searcher<'a> {
    fn new(sigma: &'a ImplicationSet, bounds: &SearchBounds, objective: Objective) -> Result<Self> {
        let n = sigma.ground().len();
        let canonical = canonical_basis(sigma);
        let engine = ClosureEngine::new(sigma);
        let mut slots = Vec::new();
        let mut fixed = Vec::new();

        if objective == Objective::NonbinarySr {
            // pin the binary part to the strongest regular choice
            for x in 0..n {
                let single = AttrSet::singleton(n, x);
                let rest = engine.close(&single).difference(&single);
                if !rest.is_empty() {
                    fixed.push(Implication::new(single, rest).unwrap());
                }
            }
        }

        for imp in canonical.iter() {
            let critical = imp.premise().clone();
            if objective == Objective::NonbinarySr && critical.len() == 1 {
                continue;
            }
            if critical.len() > bounds.subset_bound {
                return Err(Error::SearchBound(format!(
                    "critical set has {} members, subset bound is {}",
                    critical.len(),
                    bounds.subset_bound
                )));
            }
            let phi = engine.close(&critical);
            let mut candidates: Vec<AttrSet> = Vec::new();
            for size in 1..=critical.len() {
                for u in k_subsets(&critical, size) {
                    if engine.close(&u) == phi {
                        candidates.push(u);
                    }
                }
            }
            let minimal_candidates: Vec<AttrSet> = candidates
                .iter()
                .filter(|u| candidates.iter().all(|v| *v == **u || !v.is_subset(u)))
                .cloned()
                .collect();
            slots.push(Slot { phi, candidates, minimal_candidates });
        }
        if slots.len() > CRITICAL_CAP {
            return Err(Error::SearchBound(format!(
                "{} critical sets exceed the search cap of {CRITICAL_CAP}",
                slots.len()
            )));
        }

        let strongest: Vec<Vec<Implication>> = slots
            .iter()
            .map(|slot| {
                slot.minimal_candidates
                    .iter()
                    .map(|u| Implication::new(u.clone(), slot.phi.difference(u)).unwrap())
                    .collect()
            })
            .collect();

        let mut searcher = Searcher {
            sigma,
            n,
            slots,
            fixed,
            objective,
            strongest,
            m_cache: HashMap::new(),
            tests: 0,
            max_tests: bounds.max_tests,
            min_cost_suffix: Vec::new(),
            max_cost_suffix: Vec::new(),
        };
        searcher.compute_cost_bounds()?;
        Ok(searcher)
    }

    fn count_test(&mut self) -> Result<()> {
        self.tests += 1;
        if self.tests > self.max_tests {
            return Err(Error::SearchBound(format!(
                "more than {} candidate bases tested",
                self.max_tests
            )));
        }
        Ok(())
    }

    fn entails_target(&mut self, impls: &[Implication]) -> Result<bool> {
        self.count_test()?;
        let engine = ClosureEngine::from_parts(self.n, impls);
        Ok(self.sigma.iter().all(|imp| imp.conclusion().is_subset(&engine.close(imp.premise()))))
    }

    /// Independent conclusion minimum for one slot and premise: the smallest
    /// conclusion that suffices when every other slot contributes its
    /// strongest implications. A valid lower bound because shrinking any
    /// other implication only removes derivations.
    fn conclusion_min(&mut self, slot_idx: usize, premise: &AttrSet) -> Result<usize> {
        let key = (slot_idx, premise.clone());
        if let Some(&m) = self.m_cache.get(&key) {
            return Ok(m);
        }
        let mut others: Vec<Implication> = self.fixed.clone();
        for (j, pool) in self.strongest.iter().enumerate() {
            if j != slot_idx {
                others.extend(pool.iter().cloned());
            }
        }
        let domain = self.slots[slot_idx].phi.difference(premise);
        let mut result = domain.len();
        'outer: for t in 1..=domain.len() {
            for v in k_subsets(&domain, t) {
                let mut impls = others.clone();
                impls.push(Implication::new(premise.clone(), v).unwrap());
                if self.entails_target(&impls)? {
                    result = t;
                    break 'outer;
                }
            }
        }
        self.m_cache.insert(key, result);
        Ok(result)
    }

    fn premise_cost(&self, u: &AttrSet) -> usize {
        match self.objective {
            Objective::TotalSize => u.len(),
            _ => 0,
        }
    }

    fn compute_cost_bounds(&mut self) -> Result<()> {
        let k = self.slots.len();
        let mut min_cost = vec![0usize; k];
        let mut max_cost = vec![0usize; k];
        for i in 0..k {
            let cands: Vec<AttrSet> = match self.objective {
                Objective::TotalSize => self.slots[i].candidates.clone(),
                _ => self.slots[i].minimal_candidates.clone(),
            };
            let mut lo = usize::MAX;
            let mut hi = 0usize;
            for u in &cands {
                let m = self.conclusion_min(i, u)?;
                lo = lo.min(self.premise_cost(u) + m);
                hi = hi.max(self.premise_cost(u) + self.slots[i].phi.difference(u).len());
            }
            min_cost[i] = lo;
            max_cost[i] = hi;
        }
        self.min_cost_suffix = suffix_sums(&min_cost);
        self.max_cost_suffix = suffix_sums(&max_cost);
        Ok(())
    }

    /// The chosen prefix plus every remaining slot at full strength still
    /// entails the target. Any completion is pointwise weaker than this
    /// relaxation, so a failing prefix prunes its whole subtree.
    fn prefix_feasible(
        &mut self,
        next_slot: usize,
        chosen: &[Implication],
    ) -> Result<bool> {
        let mut impls = self.fixed.clone();
        impls.extend(chosen.iter().cloned());
        for pool in &self.strongest[next_slot..] {
            impls.extend(pool.iter().cloned());
        }
        self.entails_target(&impls)
    }

    /// Enumerate assemblies of exactly `budget` total cost from `slot_idx`
    /// on; on success, either collect the basis or set the found flag.
    fn enumerate(
        &mut self,
        slot_idx: usize,
        budget: usize,
        chosen: &mut Vec<Implication>,
        collect: bool,
        out: &mut Vec<ImplicationSet>,
        found: &mut bool,
    ) -> Result<()> {
        if *found && !collect {
            return Ok(());
        }
        if slot_idx == self.slots.len() {
            if budget == 0 {
                let mut impls = self.fixed.clone();
                impls.extend(chosen.iter().cloned());
                if self.entails_target(&impls)? {
                    *found = true;
                    if collect {
                        out.push(
                            ImplicationSet::from_implications(self.sigma.ground_arc(), impls)
                                .normalized(),
                        );
                    }
                }
            }
            return Ok(());
        }
        let tail_min = self.min_cost_suffix[slot_idx + 1];
        let tail_max = self.max_cost_suffix[slot_idx + 1];
        let cands: Vec<AttrSet> = match self.objective {
            Objective::TotalSize => self.slots[slot_idx].candidates.clone(),
            _ => self.slots[slot_idx].minimal_candidates.clone(),
        };
        for u in cands {
            let pcost = self.premise_cost(&u);
            if pcost + 1 + tail_min > budget {
                if self.objective == Objective::TotalSize {
                    // candidates are sorted by size; later ones only cost more
                    break;
                }
                continue;
            }
            let m = self.conclusion_min(slot_idx, &u)?;
            let domain = self.slots[slot_idx].phi.difference(&u);
            for t in m..=domain.len() {
                let cost = pcost + t;
                if cost + tail_min > budget {
                    break;
                }
                let remaining = budget - cost;
                if remaining > tail_max {
                    continue;
                }
                for v in k_subsets(&domain, t) {
                    chosen.push(Implication::new(u.clone(), v).unwrap());
                    let viable = slot_idx + 1 == self.slots.len()
                        || self.prefix_feasible(slot_idx + 1, chosen)?;
                    if viable {
                        self.enumerate(slot_idx + 1, remaining, chosen, collect, out, found)?;
                    }
                    chosen.pop();
                    if *found && !collect {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    /// Deepen the total budget until something is feasible; return the
    /// minimal objective value and (optionally) every basis attaining it.
    fn run(&mut self, collect: bool) -> Result<(usize, Vec<ImplicationSet>)> {
        if self.slots.is_empty() {
            return Ok((0, vec![ImplicationSet::from_implications(
                self.sigma.ground_arc(),
                self.fixed.clone(),
            )
            .normalized()]));
        }
        let lo = self.min_cost_suffix[0];
        let hi = self.max_cost_suffix[0];
        for budget in lo..=hi {
            let mut out = Vec::new();
            let mut found = false;
            let mut chosen = Vec::new();
            self.enumerate(0, budget, &mut chosen, collect, &mut out, &mut found)?;
            if found {
                out.sort_by(|a, b| a.implications().cmp(b.implications()));
                return Ok((budget, out));
            }
        }
        Err(Error::CrossCheck("no equivalent basis found within cost bounds".into()))
    }
}

fn suffix_sums(costs: &[usize]) -> Vec<usize> {
    let mut out = vec![0; costs.len() + 1];
    for i in (0..costs.len()).rev() {
        out[i] = out[i + 1] + costs[i];
    }
    out
}

/// Every basis of minimum total size, found by exhaustive search over
/// per-critical-set premises and conclusions with iterative deepening.
pub struct OptimumReport {
    pub s: usize,
    pub bases: Vec<ImplicationSet>,
}

pub fn optimum_bases(sigma: &ImplicationSet, bounds: &SearchBounds) -> Result<OptimumReport> {
    let mut searcher = Searcher::new(sigma, bounds, Objective::TotalSize)?;
    let (s, bases) = searcher.run(true)?;
    for basis in &bases {
        if !equivalent(basis, sigma)? {
            return Err(Error::CrossCheck("search produced a non-equivalent basis".into()));
        }
    }
    Ok(OptimumReport { s, bases })
}

/// Exhaustive minimum of the non-binary conclusion size over all bases.
pub fn min_nonbinary_sr(sigma: &ImplicationSet, bounds: &SearchBounds) -> Result<usize> {
    let mut searcher = Searcher::new(sigma, bounds, Objective::NonbinarySr)?;
    Ok(searcher.run(false)?.0)
}

/// Exhaustive minimum of the total conclusion size over all bases.
pub fn min_total_sr(sigma: &ImplicationSet, bounds: &SearchBounds) -> Result<usize> {
    let mut searcher = Searcher::new(sigma, bounds, Objective::TotalSr)?;
    Ok(searcher.run(false)?.0)
}

/// Checks tying the optimum bases to the per-critical-set parameters: count,
/// premise sizes, binary conclusion sizes, left/right optimality, constancy
/// of the non-binary right size, regularity and extreme-point containment.
pub struct HierarchyReport {
    pub optimum_s: usize,
    pub optimum_count: usize,
    pub count_ok: bool,
    pub left_ok: bool,
    pub right_ok: bool,
    pub premise_sizes_ok: bool,
    pub binary_conclusions_ok: bool,
    pub extreme_points_ok: bool,
    pub srnb_constant_ok: bool,
    pub regular_ok: bool,
    pub srnb: usize,
    /// per-critical-set conclusion sizes across optimum bases, for the
    /// unasserted per-implication-invariance observation
    pub conclusion_size_log: Vec<String>,
}

impl HierarchyReport {
    pub fn pass(&self) -> bool {
        self.count_ok
            && self.left_ok
            && self.right_ok
            && self.premise_sizes_ok
            && self.binary_conclusions_ok
            && self.extreme_points_ok
            && self.srnb_constant_ok
            && self.regular_ok
    }
}

pub fn verify_hierarchy(sigma: &ImplicationSet, bounds: &SearchBounds) -> Result<HierarchyReport> {
    let canonical = canonical_basis(sigma);
    let engine = ClosureEngine::new(sigma);
    let report = optimum_bases(sigma, bounds)?;

    // per-critical parameters
    let mut k_of: HashMap<AttrSet, usize> = HashMap::new();
    let mut b_of: HashMap<AttrSet, usize> = HashMap::new();
    for imp in canonical.iter() {
        let c = imp.premise().clone();
        let target = engine.close(&c);
        let k = min_generator(&engine, &c, &target).expect("critical sets generate").size;
        if c.len() == 1 {
            let reduced = target.difference(&c);
            let b = min_generator(&engine, &reduced, &reduced).expect("closed sets generate").size;
            b_of.insert(c.clone(), b);
        }
        k_of.insert(c, k);
    }
    let sum_k: usize = k_of.values().sum();
    let min_sr = min_total_sr(sigma, bounds)?;
    let min_srnb = min_nonbinary_sr(sigma, bounds)?;

    let mut count_ok = true;
    let mut left_ok = true;
    let mut right_ok = true;
    let mut premise_sizes_ok = true;
    let mut binary_conclusions_ok = true;
    let mut extreme_points_ok = true;
    let mut regular_ok = true;
    let mut srnb_values = Vec::new();
    let mut sizes_by_critical: HashMap<AttrSet, Vec<usize>> = HashMap::new();

    for basis in &report.bases {
        count_ok &= basis.len() == canonical.len();
        left_ok &= basis.metrics().total.s_l == sum_k;
        right_ok &= basis.metrics().total.s_r == min_sr;
        srnb_values.push(basis.metrics().nonbinary.s_r);
        regular_ok &= is_regular(basis);
        for imp in basis.iter() {
            let critical = saturation(sigma, imp.premise());
            match k_of.get(&critical) {
                Some(&k) => premise_sizes_ok &= imp.premise().len() == k,
                None => premise_sizes_ok = false,
            }
            sizes_by_critical.entry(critical.clone()).or_default().push(imp.conclusion().len());
            if critical.len() == 1 {
                binary_conclusions_ok &=
                    b_of.get(&critical) == Some(&imp.conclusion().len());
                let reduced = engine.close(&critical).difference(&critical);
                let extreme = AttrSet::from_indices(
                    sigma.ground().len(),
                    reduced.iter().filter(|&a| {
                        let mut rest = reduced.clone();
                        rest.remove(a);
                        !engine.close(&rest).contains(a)
                    }),
                );
                extreme_points_ok &= extreme.is_subset(imp.conclusion());
            }
        }
    }
    let srnb = srnb_values.first().copied().unwrap_or(0);
    let srnb_constant_ok =
        srnb_values.iter().all(|&v| v == srnb) && (report.bases.is_empty() || srnb == min_srnb);

    let g = sigma.ground();
    let conclusion_size_log = sizes_by_critical
        .into_iter()
        .map(|(c, sizes)| format!("critical {{{}}}: conclusion sizes {:?}", g.render_set(&c), sizes))
        .collect();

    Ok(HierarchyReport {
        optimum_s: report.s,
        optimum_count: report.bases.len(),
        count_ok,
        left_ok,
        right_ok,
        premise_sizes_ok,
        binary_conclusions_ok,
        extreme_points_ok,
        srnb_constant_ok,
        regular_ok,
        srnb,
        conclusion_size_log,
    })
}
