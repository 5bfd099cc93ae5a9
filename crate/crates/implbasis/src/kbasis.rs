//! The attribute order, minimal order generators, and K-bases.
//!
//! A K-basis refines the canonical basis: every premise is replaced by the
//! maximal elements of some containment-minimal order ideal with the same
//! closure, and every conclusion by its order-maximal elements.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::attrset::AttrSet;
use crate::canonical::canonical_basis;
use crate::closure::ClosureEngine;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::implication::{Implication, ImplicationSet};
use crate::oracle::require_standard;

/// Which removable maximal element the greedy generator search removes first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tiebreak {
    /// earliest attribute in declaration order
    #[default]
    First,
    /// latest attribute in declaration order
    Last,
}

/// The partial order `a >= b iff b in phi({a})` of a standard system,
/// together with its cover relation.
pub struct PhiOrder {
    ground: Arc<GroundSet>,
    down: Vec<AttrSet>,
    covers: Vec<(usize, usize)>,
}

impl PhiOrder {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// a >= b in the attribute order.
    pub fn leq_under(&self, a: usize, b: usize) -> bool {
        self.down[a].contains(b)
    }

    /// phi({a}) as a set (the principal down-set plus `a` itself).
    pub fn down_set(&self, a: usize) -> &AttrSet {
        &self.down[a]
    }

    /// Cover pairs (a, b) with a covering b, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Maximal elements of `set` under the attribute order.
    pub fn max_of(&self, set: &AttrSet) -> AttrSet {
        let mut out = set.clone();
        for a in set.iter() {
            for b in set.iter() {
                if a != b && self.down[b].contains(a) {
                    out.remove(a);
                    break;
                }
            }
        }
        out
    }

    pub fn is_order_ideal(&self, set: &AttrSet) -> bool {
        set.iter().all(|a| self.down[a].is_subset(set))
    }

    /// Lower covers of `a`, aggregated.
    pub fn lower_covers(&self, a: usize) -> AttrSet {
        let n = self.ground.len();
        AttrSet::from_indices(n, self.covers.iter().filter(|(x, _)| *x == a).map(|(_, b)| *b))
    }
}

/// Build the attribute order of a standard system; errors otherwise.
pub fn phi_order(sigma: &ImplicationSet) -> Result<PhiOrder> {
    require_standard(sigma)?;
    let n = sigma.ground().len();
    let engine = ClosureEngine::new(sigma);
    let down: Vec<AttrSet> = (0..n).map(|a| engine.close(&AttrSet::singleton(n, a))).collect();
    // standardness implies antisymmetry; check anyway so corrupted input fails fast
    for a in 0..n {
        for b in 0..n {
            if a != b && down[a].contains(b) && down[b].contains(a) {
                return Err(Error::NotStandard(format!(
                    "attribute order is not antisymmetric on {:?} and {:?}",
                    sigma.ground().name(a),
                    sigma.ground().name(b)
                )));
            }
        }
    }
    let mut covers = Vec::new();
    for a in 0..n {
        for b in down[a].iter() {
            if b == a {
                continue;
            }
            let between = (0..n)
                .any(|c| c != a && c != b && down[a].contains(c) && down[c].contains(b));
            if !between {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    Ok(PhiOrder { ground: sigma.ground_arc(), down, covers })
}

pub(crate) fn removable_maximals(
    order: &PhiOrder,
    engine: &ClosureEngine,
    x: &AttrSet,
    target: &AttrSet,
) -> Vec<usize> {
    let maximals = order.max_of(x);
    maximals
        .iter()
        .filter(|&m| {
            let mut reduced = x.clone();
            reduced.remove(m);
            engine.close(&reduced) == *target
        })
        .collect()
}

pub(crate) fn greedy_generator(
    order: &PhiOrder,
    engine: &ClosureEngine,
    c: &AttrSet,
    tiebreak: Tiebreak,
) -> AttrSet {
    let target = engine.close(c);
    let mut x = c.clone();
    loop {
        let removable = removable_maximals(order, engine, &x, &target);
        let pick = match tiebreak {
            Tiebreak::First => removable.first().copied(),
            Tiebreak::Last => removable.last().copied(),
        };
        match pick {
            Some(m) => x.remove(m),
            None => return order.max_of(&x),
        }
    }
}

/// One minimal order generator of the order ideal `c`: the maximal elements
/// of a containment-minimal ideal inside `c` with the same closure, found by
/// greedily removing maximal elements.
pub fn minimal_order_generator(
    sigma: &ImplicationSet,
    c: &AttrSet,
    tiebreak: Tiebreak,
) -> Result<AttrSet> {
    let order = phi_order(sigma)?;
    if !order.is_order_ideal(c) {
        return Err(Error::NotOrderIdeal);
    }
    Ok(greedy_generator(&order, &ClosureEngine::new(sigma), c, tiebreak))
}

pub(crate) const GENERATORS_PER_SET_CAP: usize = 512;
pub(crate) const KBASIS_PRODUCT_CAP: usize = 4096;

/// All minimal order generators of the ideal `c`, by exploring every removal
/// order with memoization on the reached ideals.
fn all_generators(
    order: &PhiOrder,
    engine: &ClosureEngine,
    c: &AttrSet,
) -> Result<Vec<AttrSet>> {
    let target = engine.close(c);
    let mut seen: HashSet<AttrSet> = HashSet::new();
    let mut out: BTreeSet<AttrSet> = BTreeSet::new();
    let mut stack = vec![c.clone()];
    while let Some(x) = stack.pop() {
        if !seen.insert(x.clone()) {
            continue;
        }
        if seen.len() > GENERATORS_PER_SET_CAP * 8 {
            return Err(Error::CombinatorialBound(
                "too many removal states while enumerating order generators".into(),
            ));
        }
        let removable = removable_maximals(order, engine, &x, &target);
        if removable.is_empty() {
            out.insert(order.max_of(&x));
            if out.len() > GENERATORS_PER_SET_CAP {
                return Err(Error::CombinatorialBound(
                    "too many minimal order generators for one critical set".into(),
                ));
            }
        } else {
            for m in removable {
                let mut next = x.clone();
                next.remove(m);
                stack.push(next);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Canonical basis together with aligned K-basis premises and max-filtered
/// conclusions; shared by the K-, star- and E-basis constructions.
pub(crate) struct KAligned {
    pub canonical: ImplicationSet,
    pub order: PhiOrder,
    /// one minimal order generator per canonical implication
    pub premises: Vec<AttrSet>,
    /// order-maximal elements of each canonical conclusion
    pub conclusions_max: Vec<AttrSet>,
}

pub(crate) fn k_aligned(sigma: &ImplicationSet, tiebreak: Tiebreak) -> Result<KAligned> {
    let order = phi_order(sigma)?;
    let canonical = canonical_basis(sigma);
    let engine = ClosureEngine::new(&canonical);
    let premises = canonical
        .iter()
        .map(|imp| greedy_generator(&order, &engine, imp.premise(), tiebreak))
        .collect();
    let conclusions_max = canonical.iter().map(|imp| order.max_of(imp.conclusion())).collect();
    Ok(KAligned { canonical, order, premises, conclusions_max })
}

/// The K-basis under a deterministic tie-break: canonical premises replaced
/// by minimal order generators, conclusions by their order-maximal elements.
pub fn k_basis(sigma: &ImplicationSet, tiebreak: Tiebreak) -> Result<ImplicationSet> {
    let parts = k_aligned(sigma, tiebreak)?;
    let impls: Vec<Implication> = parts
        .premises
        .iter()
        .zip(&parts.conclusions_max)
        .map(|(c_k, y_k)| Implication::new(c_k.clone(), y_k.clone()).unwrap())
        .collect();
    Ok(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized())
}

/// Every K-basis of the system, as the product of the per-critical-set
/// generator choices. Errors when the combinatorics exceed desk scale.
pub fn all_k_bases(sigma: &ImplicationSet) -> Result<Vec<ImplicationSet>> {
    let parts = k_aligned(sigma, Tiebreak::First)?;
    let engine = ClosureEngine::new(&parts.canonical);
    let mut choices: Vec<Vec<AttrSet>> = Vec::new();
    let mut total: usize = 1;
    for imp in parts.canonical.iter() {
        let gens = all_generators(&parts.order, &engine, imp.premise())?;
        total = total.saturating_mul(gens.len());
        if total > KBASIS_PRODUCT_CAP {
            return Err(Error::CombinatorialBound("too many K-bases to enumerate".into()));
        }
        choices.push(gens);
    }
    let mut bases = Vec::with_capacity(total);
    let mut picks = vec![0usize; choices.len()];
    loop {
        let impls: Vec<Implication> = picks
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                Implication::new(choices[i][p].clone(), parts.conclusions_max[i].clone())
                    .unwrap()
            })
            .collect();
        bases.push(ImplicationSet::from_implications(sigma.ground_arc(), impls).normalized());
        // odometer
        let mut i = 0;
        loop {
            if i == picks.len() {
                bases.sort_by(|a, b| a.implications().cmp(b.implications()));
                return Ok(bases);
            }
            picks[i] += 1;
            if picks[i] < choices[i].len() {
                break;
            }
            picks[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_implications;

    #[test]
    fn discrete_order_for_empty_binary_part() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        let order = phi_order(&s).unwrap();
        assert!(order.covers().is_empty());
        for a in 0..4 {
            assert_eq!(order.down_set(a).len(), 1);
        }
    }

    #[test]
    fn cyclic_binary_part_is_rejected() {
        let s = parse_implications("a -> b\nb -> a\n").unwrap();
        assert!(matches!(phi_order(&s), Err(Error::NotStandard(_))));
    }

    #[test]
    fn antichain_generator_is_itself() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        let c = s.ground().parse_set("a c").unwrap();
        let g = minimal_order_generator(&s, &c, Tiebreak::First).unwrap();
        assert_eq!(g, c);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let s = parse_implications("a -> b\na c -> d\n").unwrap();
        // {a} is not an ideal because b < a
        let c = s.ground().parse_set("a").unwrap();
        assert!(matches!(
            minimal_order_generator(&s, &c, Tiebreak::First),
            Err(Error::NotOrderIdeal)
        ));
    }

    #[test]
    fn k_basis_of_antichain_system_is_canonical() {
        let s = parse_implications("a c -> b\nb d -> c\n").unwrap();
        assert_eq!(k_basis(&s, Tiebreak::First).unwrap(), s.normalized());
        assert_eq!(all_k_bases(&s).unwrap(), vec![s.normalized()]);
    }
}
