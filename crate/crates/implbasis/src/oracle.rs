//! Exponential-time ground-truth engine for small ground sets.
//!
//! Everything here works by explicit enumeration over all subsets of the
//! ground set and is the trust anchor for the polynomial algorithms in the
//! rest of the crate: closed-set lattice, quasi-closed / critical / essential
//! sets, saturation by definition, minimal covers, the D-relation,
//! join-semidistributivity and extreme points. Clarity is deliberately chosen
//! over speed; inputs above the configured bound are refused.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::attrset::AttrSet;
use crate::closure::ClosureEngine;
use crate::drelation::PairRelation;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::implication::{Implication, ImplicationSet};

/// Default cap on the ground-set size for subset enumeration.
pub const DEFAULT_ORACLE_BOUND: usize = 14;

/// Hard cap: the closure table takes 2^n words.
const HARD_BOUND: usize = 22;

/// The explicit family of closed sets of a closure system, sorted.
#[derive(Clone)]
pub struct ClosedFamily {
    ground: Arc<GroundSet>,
    masks: Vec<u64>,
    member: Vec<bool>,
}

impl ClosedFamily {
    /// Build from an explicit list of sets; the family must contain the full
    /// set and be closed under pairwise intersection.
    pub fn from_sets(ground: Arc<GroundSet>, sets: &[AttrSet]) -> Result<Self> {
        let n = ground.len();
        let mut masks: Vec<u64> = sets.iter().map(|s| s.as_mask()).collect();
        masks.sort_unstable();
        masks.dedup();
        let mut member = vec![false; 1 << n];
        for &m in &masks {
            member[m as usize] = true;
        }
        let full = (1u64 << n) - 1;
        if !member[full as usize] {
            return Err(Error::InvalidInstance("closed family must contain the full set".into()));
        }
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                if !member[(a & b) as usize] {
                    return Err(Error::InvalidInstance(
                        "family is not closed under intersection".into(),
                    ));
                }
            }
        }
        Ok(ClosedFamily { ground, masks, member })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_arc(&self) -> Arc<GroundSet> {
        Arc::clone(&self.ground)
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn sets(&self) -> Vec<AttrSet> {
        let n = self.ground.len();
        let mut v: Vec<AttrSet> = self.masks.iter().map(|&m| AttrSet::from_mask(n, m)).collect();
        v.sort();
        v
    }

    pub fn contains(&self, set: &AttrSet) -> bool {
        self.member[set.as_mask() as usize]
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.member[mask as usize]
    }

    /// Smallest member containing `mask` (the family is intersection-closed).
    pub fn closure_of(&self, mask: u64) -> u64 {
        let mut acc = (1u64 << self.ground.len()) - 1;
        for &m in &self.masks {
            if mask & !m == 0 {
                acc &= m;
            }
        }
        acc
    }
}

/// Report of the standard-closure-system check.
#[derive(Debug, Clone)]
pub struct StandardReport {
    /// phi(emptyset) != emptyset
    pub empty_violation: bool,
    /// attributes i for which phi({i}) minus {i} is not closed
    pub violations: Vec<usize>,
}

impl StandardReport {
    pub fn is_standard(&self) -> bool {
        !self.empty_violation && self.violations.is_empty()
    }
}

/// Check the two standardness conditions. Polynomial; needs no enumeration.
pub fn is_standard(sigma: &ImplicationSet) -> StandardReport {
    let engine = ClosureEngine::new(sigma);
    let n = sigma.ground().len();
    let empty_violation = !engine.close(&AttrSet::empty(n)).is_empty();
    let mut violations = Vec::new();
    for i in 0..n {
        let mut reduced = engine.close(&AttrSet::singleton(n, i));
        reduced.remove(i);
        if !engine.is_closed(&reduced) {
            violations.push(i);
        }
    }
    StandardReport { empty_violation, violations }
}

pub(crate) fn require_standard(sigma: &ImplicationSet) -> Result<()> {
    let report = is_standard(sigma);
    if report.is_standard() {
        return Ok(());
    }
    let g = sigma.ground();
    let mut parts = Vec::new();
    if report.empty_violation {
        parts.push("closure of the empty set is non-empty".to_string());
    }
    for i in report.violations {
        parts.push(format!("closure of {0:?} minus {0:?} is not closed", g.name(i)));
    }
    Err(Error::NotStandard(parts.join("; ")))
}

/// Quasi-closed, critical and essential sets of a closure system.
#[derive(Clone)]
pub struct CriticalCatalog {
    pub quasi_closed: Vec<AttrSet>,
    pub critical: Vec<AttrSet>,
    pub essential: Vec<AttrSet>,
    qc_masks: Vec<u64>,
}

/// Brute-force engine over all subsets of the ground set.
pub struct Oracle {
    ground: Arc<GroundSet>,
    n: usize,
    /// closure of every subset, indexed by mask
    table: Vec<u64>,
    closed: ClosedFamily,
    catalog: OnceLock<CriticalCatalog>,
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound.min(HARD_BOUND) {
        return Err(Error::OracleBound { n, bound: bound.min(HARD_BOUND) });
    }
    Ok(())
}

impl Oracle {
    /// Enumerate all subsets of the ground set of `sigma`.
    pub fn new(sigma: &ImplicationSet, bound: usize) -> Result<Self> {
        let n = sigma.ground().len();
        check_bound(n, bound)?;
        let engine = ClosureEngine::new(sigma);
        let size = 1usize << n;
        let mut table = vec![0u64; size];
        let mut closed_masks = Vec::new();
        for mask in 0..size as u64 {
            let c = engine.close(&AttrSet::from_mask(n, mask)).as_mask();
            table[mask as usize] = c;
            if c == mask {
                closed_masks.push(mask);
            }
        }
        let ground = sigma.ground_arc();
        let sets: Vec<AttrSet> = closed_masks.iter().map(|&m| AttrSet::from_mask(n, m)).collect();
        let closed = ClosedFamily::from_sets(Arc::clone(&ground), &sets)?;
        Ok(Oracle { ground, n, table, closed, catalog: OnceLock::new() })
    }

    /// Build from an explicit closed family instead of an implication set.
    pub fn from_family(family: ClosedFamily, bound: usize) -> Result<Self> {
        let n = family.ground().len();
        check_bound(n, bound)?;
        let size = 1usize << n;
        let mut table = vec![0u64; size];
        for mask in 0..size as u64 {
            table[mask as usize] = family.closure_of(mask);
        }
        Ok(Oracle {
            ground: family.ground_arc(),
            n,
            table,
            closed: family,
            catalog: OnceLock::new(),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn closed_family(&self) -> &ClosedFamily {
        &self.closed
    }

    pub fn closure_mask(&self, mask: u64) -> u64 {
        self.table[mask as usize]
    }

    pub fn closure(&self, x: &AttrSet) -> AttrSet {
        AttrSet::from_mask(self.n, self.table[x.as_mask() as usize])
    }

    pub fn is_closed(&self, x: &AttrSet) -> bool {
        self.closed.contains(x)
    }

    fn full_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Quasi-closed per definition: not closed, and the intersection with
    /// every closed set that does not contain it is closed.
    fn is_quasi_closed_mask(&self, q: u64) -> bool {
        if self.closed.contains_mask(q) {
            return false;
        }
        self.closed
            .masks()
            .iter()
            .all(|&c| q & !c == 0 || self.closed.contains_mask(q & c))
    }

    /// Full catalog of quasi-closed, critical and essential sets.
    pub fn catalog(&self) -> &CriticalCatalog {
        self.catalog.get_or_init(|| {
            let mut qc_masks: Vec<u64> = Vec::new();
            for mask in 0..=self.full_mask() {
                if self.is_quasi_closed_mask(mask) {
                    qc_masks.push(mask);
                }
            }
            // group by closure, keep the containment-minimal members
            let mut by_closure: HashMap<u64, Vec<u64>> = HashMap::new();
            for &q in &qc_masks {
                by_closure.entry(self.table[q as usize]).or_default().push(q);
            }
            let mut critical_masks: Vec<u64> = Vec::new();
            for group in by_closure.values() {
                for &q in group {
                    if group.iter().all(|&r| r == q || r & !q != 0) {
                        critical_masks.push(q);
                    }
                }
            }
            let mut essential_masks: Vec<u64> =
                critical_masks.iter().map(|&c| self.table[c as usize]).collect();
            essential_masks.sort_unstable();
            essential_masks.dedup();

            let to_sets = |masks: &[u64]| {
                let mut v: Vec<AttrSet> =
                    masks.iter().map(|&m| AttrSet::from_mask(self.n, m)).collect();
                v.sort();
                v
            };
            CriticalCatalog {
                quasi_closed: to_sets(&qc_masks),
                critical: to_sets(&critical_masks),
                essential: to_sets(&essential_masks),
                qc_masks,
            }
        })
    }

    /// Saturation computed by both definitions — the smallest quasi-closed or
    /// closed superset, and the fixpoint of one-step closure over strictly
    /// smaller-closure subsets — asserted equal.
    pub fn saturation(&self, x: &AttrSet) -> Result<AttrSet> {
        let xm = x.as_mask();
        let catalog = self.catalog();

        // definition 1: intersect all quasi-closed-or-closed supersets
        let mut by_family = self.full_mask();
        for &m in self.closed.masks().iter().chain(&catalog.qc_masks) {
            if xm & !m == 0 {
                by_family &= m;
            }
        }

        // definition 2: iterate q(X) = X plus closures of strictly
        // smaller-closure subsets of X
        let mut cur = xm;
        loop {
            let mut next = cur;
            let target = self.table[cur as usize];
            // enumerate submasks of cur
            let mut sub = cur;
            loop {
                if self.table[sub as usize] != target {
                    next |= self.table[sub as usize];
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & cur;
            }
            if next == cur {
                break;
            }
            cur = next;
        }

        if by_family != cur {
            return Err(Error::CrossCheck(format!(
                "saturation definitions disagree on {:?}",
                self.ground.render_set(x)
            )));
        }
        Ok(AttrSet::from_mask(self.n, by_family))
    }

    /// All refinement-minimal non-trivial covers of attribute `x`.
    ///
    /// A cover is a set X with x in phi(X) and x not below any single member;
    /// minimal covers are antichains, and X is minimal iff no other antichain
    /// cover refines it.
    pub fn minimal_covers(&self, x: usize) -> Result<Vec<AttrSet>> {
        let covers = self.antichain_covers(x)?;
        let down = self.down_masks();
        let mut out = Vec::new();
        for &c in &covers {
            let downm = mask_down(c, &down);
            let minimal = covers.iter().all(|&y| y == c || y & !downm != 0);
            if minimal {
                out.push(AttrSet::from_mask(self.n, c));
            }
        }
        out.sort();
        Ok(out)
    }

    /// The alternative reading of cover minimality: no single member can be
    /// deleted or replaced by attributes strictly below it. Exposed so tests
    /// can assert both readings coincide.
    pub fn minimal_covers_by_replacement(&self, x: usize) -> Result<Vec<AttrSet>> {
        let covers = self.antichain_covers(x)?;
        let down = self.down_masks();
        let is_cover = |m: u64| self.table[m as usize] >> x & 1 == 1;
        let mut out = Vec::new();
        'next: for &c in &covers {
            let mut members = c;
            while members != 0 {
                let a = members.trailing_zeros() as usize;
                members &= members - 1;
                let rest = c & !(1u64 << a);
                let strict_below = down[a] & !(1u64 << a);
                // every Z below a, including the empty set (deletion)
                let mut z = strict_below;
                loop {
                    if is_cover(rest | z) {
                        continue 'next;
                    }
                    if z == 0 {
                        break;
                    }
                    z = (z - 1) & strict_below;
                }
            }
            out.push(AttrSet::from_mask(self.n, c));
        }
        out.sort();
        Ok(out)
    }

    fn down_masks(&self) -> Vec<u64> {
        (0..self.n).map(|a| self.table[1usize << a]).collect()
    }

    fn antichain_covers(&self, x: usize) -> Result<Vec<u64>> {
        if let Some(sigma_like) = self.standard_violation() {
            return Err(Error::NotStandard(sigma_like));
        }
        let down = self.down_masks();
        // candidates: attributes whose singleton closure does not contain x
        let mut domain = 0u64;
        for (a, &d) in down.iter().enumerate() {
            if d >> x & 1 == 0 {
                domain |= 1 << a;
            }
        }
        let mut covers = Vec::new();
        let mut sub = domain;
        loop {
            if sub != 0 && self.table[sub as usize] >> x & 1 == 1 && is_antichain(sub, &down) {
                covers.push(sub);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & domain;
        }
        Ok(covers)
    }

    fn standard_violation(&self) -> Option<String> {
        if self.table[0] != 0 {
            return Some("closure of the empty set is non-empty".into());
        }
        for a in 0..self.n {
            let reduced = self.table[1usize << a] & !(1u64 << a);
            if !self.closed.contains_mask(reduced) {
                return Some(format!(
                    "closure of {0:?} minus {0:?} is not closed",
                    self.ground.name(a)
                ));
            }
        }
        None
    }

    /// xDy iff y belongs to some minimal cover of x.
    pub fn d_relation(&self) -> Result<PairRelation> {
        let mut pairs = Vec::new();
        for x in 0..self.n {
            for cover in self.minimal_covers(x)? {
                for y in cover.iter() {
                    pairs.push((x, y));
                }
            }
        }
        Ok(PairRelation::from_pairs(Arc::clone(&self.ground), pairs))
    }

    /// Unit-form D-basis: the cover relation of the attribute order as binary
    /// part, plus one implication per minimal cover.
    pub fn d_basis(&self) -> Result<ImplicationSet> {
        let down = self.down_masks();
        let mut impls = Vec::new();
        for a in 0..self.n {
            for b in cover_targets(a, &down) {
                impls.push(
                    Implication::new(
                        AttrSet::singleton(self.n, a),
                        AttrSet::singleton(self.n, b),
                    )
                    .unwrap(),
                );
            }
        }
        for x in 0..self.n {
            for cover in self.minimal_covers(x)? {
                impls.push(Implication::new(cover, AttrSet::singleton(self.n, x)).unwrap());
            }
        }
        Ok(ImplicationSet::from_implications(Arc::clone(&self.ground), impls).normalized())
    }

    /// Extreme points of a closed set: members not generated by the rest.
    pub fn extreme_points(&self, x: &AttrSet) -> Result<AttrSet> {
        let xm = x.as_mask();
        if !self.closed.contains_mask(xm) {
            return Err(Error::NotClosed);
        }
        let mut out = AttrSet::empty(self.n);
        for a in x.iter() {
            if self.table[(xm & !(1u64 << a)) as usize] >> a & 1 == 0 {
                out.insert(a);
            }
        }
        Ok(out)
    }

    /// Canonical basis assembled directly from the critical-set catalog.
    pub fn canonical_basis(&self) -> ImplicationSet {
        let catalog = self.catalog();
        let mut impls = Vec::new();
        for c in &catalog.critical {
            let phi = self.closure(c);
            impls.push(Implication::normalized(c.clone(), phi).unwrap());
        }
        ImplicationSet::from_implications(Arc::clone(&self.ground), impls).normalized()
    }

    /// Join-semidistributivity of the closure lattice, checked by the raw
    /// quasi-identity at every element triple.
    pub fn is_join_semidistributive(&self) -> Result<bool> {
        is_join_semidistributive_table(self.closed.masks(), |a, b| self.table[(a | b) as usize])
    }
}

fn is_antichain(mask: u64, down: &[u64]) -> bool {
    let mut members = mask;
    while members != 0 {
        let a = members.trailing_zeros() as usize;
        members &= members - 1;
        if mask & down[a] != 1u64 << a {
            return false;
        }
    }
    true
}

fn mask_down(mask: u64, down: &[u64]) -> u64 {
    let mut acc = 0;
    let mut members = mask;
    while members != 0 {
        let a = members.trailing_zeros() as usize;
        members &= members - 1;
        acc |= down[a];
    }
    acc
}

/// Lower covers of `a` in the attribute order given by singleton closures.
fn cover_targets(a: usize, down: &[u64]) -> Vec<usize> {
    let below = down[a] & !(1u64 << a);
    let mut out = Vec::new();
    let mut bits = below;
    while bits != 0 {
        let b = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let covered = (0..down.len())
            .any(|c| c != a && c != b && below >> c & 1 == 1 && down[c] >> b & 1 == 1);
        if !covered {
            out.push(b);
        }
    }
    out
}

const SD_ELEMENT_CAP: usize = 600;

fn is_join_semidistributive_table(masks: &[u64], join: impl Fn(u64, u64) -> u64) -> Result<bool> {
    if masks.len() > SD_ELEMENT_CAP {
        return Err(Error::SearchBound(format!(
            "lattice has {} elements; join-semidistributivity check capped at {}",
            masks.len(),
            SD_ELEMENT_CAP
        )));
    }
    for &x in masks {
        for &y in masks {
            let xy = join(x, y);
            for &z in masks {
                if join(x, z) == xy && join(x, y & z) != xy {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Join-semidistributivity check for a standalone closed family.
pub fn is_join_semidistributive(family: &ClosedFamily) -> Result<bool> {
    is_join_semidistributive_table(family.masks(), |a, b| family.closure_of(a | b))
}

/// Enumerate the family of all subsets respecting `sigma`.
pub fn enumerate_closed(sigma: &ImplicationSet, bound: usize) -> Result<ClosedFamily> {
    Ok(Oracle::new(sigma, bound)?.closed.clone())
}
