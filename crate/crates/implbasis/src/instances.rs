//! Fixture and generator factory: the named desk examples, explicit finite
//! lattices with element doubling, standard-system extraction, set-cover
//! reduction instances, and reproducible random systems.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::attrset::AttrSet;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::implication::{Implication, ImplicationSet};
use crate::io::parse_implications;
use crate::oracle::{is_standard, ClosedFamily, Oracle};

/// Names of the built-in fixtures.
pub const FIXTURE_NAMES: [&str; 8] =
    ["2kbases", "a12", "co4", "cover", "eo", "sdfails", "ex66", "b4double"];

/// A named fixture system, given by its canonical basis.
pub fn fixture(name: &str) -> Result<ImplicationSet> {
    let text = match name {
        // six attributes, one critical set with two minimal order generators
        "2kbases" => {
            "ground: x y z e d u\n\
             y -> u\nz -> u\nd -> z u\ne -> d z u\nx y z d u -> e\nx u -> y\nz y u -> x\n"
        }
        // six attributes; the premise-refined basis loses a pair that only
        // transitive closure recovers
        "a12" => {
            "ground: 1 2 3 4 5 6\n\
             2 -> 1\n3 -> 1\n5 -> 4\n6 -> 1 3\n1 4 -> 3\n1 2 3 -> 6\n1 3 4 5 -> 6\n\
             1 2 3 4 6 -> 5\n"
        }
        // join-semidistributive but with a D-cycle between b and c
        "co4" => "ground: a b c d\na c -> b\nb d -> c\na d -> b c\n",
        // the cover-relation binary part is reducible: a -> b c suffices
        "cover" => "ground: a b c d y\na -> b c d\nb c d y -> a\nb c -> d\n",
        // the K-basis shortens a conclusion that the E-basis keeps
        "eo" => "ground: a b c d\nd -> c b\nc -> b\na b -> d c\n",
        // unique K-basis, yet join-semidistributivity fails at the top
        "sdfails" => "ground: a b c d\na c -> b\nb d -> c\n",
        // two optimum bases with different per-implication conclusion sizes
        "ex66" => "ground: a b c z\nz -> a\na b -> c z\na c -> b z\n",
        _ => {
            if name == "b4double" {
                return Ok(setcover_nonbinary(&b4double_instance())?.0);
            }
            return Err(Error::UnknownFixture(name.to_string()));
        }
    };
    parse_implications(text)
}

/// The set-cover instance behind the `b4double` fixture.
pub fn b4double_instance() -> SetCoverInstance {
    SetCoverInstance::new(4, vec![0b0001, 0b0010, 0b0100, 0b1000, 0b0011]).unwrap()
}

/// An abstract finite lattice as an explicit order relation.
#[derive(Clone)]
pub struct FiniteLattice {
    n: usize,
    /// leq[a][b] = a is below or equal to b
    leq: Vec<Vec<bool>>,
}

impl FiniteLattice {
    /// The Boolean lattice of all subsets of a `k`-element set; element `i`
    /// is the subset with mask `i`.
    pub fn boolean(k: usize) -> Self {
        assert!(k <= 16, "boolean lattice of 2^{k} elements is too large");
        let n = 1usize << k;
        let leq = (0..n).map(|a| (0..n).map(|b| a & !b == 0).collect()).collect();
        FiniteLattice { n, leq }
    }

    /// Boolean lattice plus one extra element above everything.
    pub fn boolean_with_top(k: usize) -> Self {
        let base = Self::boolean(k);
        let n = base.n + 1;
        let mut leq = vec![vec![false; n]; n];
        for a in 0..base.n {
            for b in 0..base.n {
                leq[a][b] = base.leq[a][b];
            }
            leq[a][n - 1] = true;
        }
        leq[n - 1][n - 1] = true;
        FiniteLattice { n, leq }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let uppers: Vec<usize> =
            (0..self.n).filter(|&c| self.leq[a][c] && self.leq[b][c]).collect();
        uppers.iter().copied().find(|&c| uppers.iter().all(|&d| self.leq[c][d]))
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lowers: Vec<usize> =
            (0..self.n).filter(|&c| self.leq[c][a] && self.leq[c][b]).collect();
        lowers.iter().copied().find(|&c| lowers.iter().all(|&d| self.leq[d][c]))
    }

    /// Check the order axioms and the existence of all joins and meets.
    pub fn validate(&self) -> Result<()> {
        for a in 0..self.n {
            if !self.leq[a][a] {
                return Err(Error::InvalidInstance("order is not reflexive".into()));
            }
            for b in 0..self.n {
                if a != b && self.leq[a][b] && self.leq[b][a] {
                    return Err(Error::InvalidInstance("order is not antisymmetric".into()));
                }
                for c in 0..self.n {
                    if self.leq[a][b] && self.leq[b][c] && !self.leq[a][c] {
                        return Err(Error::InvalidInstance("order is not transitive".into()));
                    }
                }
                if self.join(a, b).is_none() || self.meet(a, b).is_none() {
                    return Err(Error::InvalidInstance("a join or meet is missing".into()));
                }
            }
        }
        Ok(())
    }

    /// Replace element `b` by a two-element interval; the new top of the
    /// interval is appended as the last element and is join-irreducible in
    /// the result.
    pub fn double(&self, b: usize) -> Self {
        let n = self.n + 1;
        let z = self.n;
        let mut leq = vec![vec![false; n]; n];
        for x in 0..self.n {
            for y in 0..self.n {
                leq[x][y] = self.leq[x][y];
            }
            // x below z iff x below b; z below x iff b strictly below x
            leq[x][z] = self.leq[x][b];
            leq[z][x] = self.leq[b][x] && x != b;
        }
        leq[z][z] = true;
        FiniteLattice { n, leq }
    }

    pub fn bottom(&self) -> usize {
        (0..self.n).find(|&a| (0..self.n).all(|b| self.leq[a][b])).expect("lattice has a bottom")
    }

    /// Elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        let bottom = self.bottom();
        (0..self.n)
            .filter(|&j| {
                if j == bottom {
                    return false;
                }
                let strictly_below: Vec<usize> =
                    (0..self.n).filter(|&x| x != j && self.leq[x][j]).collect();
                let covers = strictly_below
                    .iter()
                    .filter(|&&x| {
                        strictly_below.iter().all(|&y| y == x || !self.leq[x][y])
                    })
                    .count();
                covers == 1
            })
            .collect()
    }
}

/// The standard closure system of a finite lattice, on its join-irreducible
/// elements, returned as a canonical basis plus the lattice elements backing
/// each attribute (in attribute order).
pub fn standard_system_from_lattice(
    lattice: &FiniteLattice,
    names: &[String],
    oracle_bound: usize,
) -> Result<(ImplicationSet, Vec<usize>)> {
    let ji = lattice.join_irreducibles();
    if names.len() != ji.len() {
        return Err(Error::InvalidInstance(format!(
            "{} names supplied for {} join-irreducible elements",
            names.len(),
            ji.len()
        )));
    }
    let ground = Arc::new(GroundSet::new(names.to_vec())?);
    let n = ji.len();
    let mut sets = Vec::with_capacity(lattice.len());
    for a in 0..lattice.len() {
        sets.push(AttrSet::from_indices(
            n,
            ji.iter().enumerate().filter(|(_, &j)| lattice.leq(j, a)).map(|(i, _)| i),
        ));
    }
    let family = ClosedFamily::from_sets(ground, &sets)?;
    let oracle = Oracle::from_family(family, oracle_bound)?;
    Ok((oracle.canonical_basis(), ji))
}

/// A set cover instance: a ground set of `q` elements and a family of
/// subsets (as masks) whose union covers it.
#[derive(Debug, Clone)]
pub struct SetCoverInstance {
    q: usize,
    family: Vec<u64>,
}

impl SetCoverInstance {
    pub fn new(q: usize, family: Vec<u64>) -> Result<Self> {
        if q == 0 || q > 16 {
            return Err(Error::InvalidInstance("ground set size out of range".into()));
        }
        let full = (1u64 << q) - 1;
        if family.iter().any(|&m| m == 0 || m & !full != 0) {
            return Err(Error::InvalidInstance("family member out of range".into()));
        }
        if family.iter().fold(0, |acc, &m| acc | m) != full {
            return Err(Error::InvalidInstance("family does not cover the ground set".into()));
        }
        let mut family = family;
        family.sort_unstable();
        family.dedup();
        Ok(SetCoverInstance { q, family })
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn family(&self) -> &[u64] {
        &self.family
    }

    /// Trivial instances are solved directly: a member equal to the ground
    /// set, or to the ground set minus one element.
    pub fn is_trivial(&self) -> bool {
        let full = (1u64 << self.q) - 1;
        self.family.iter().any(|&m| m == full || (full & !m).count_ones() == 1)
    }

    /// The family extended with all singletons.
    pub fn extended_family(&self) -> Vec<u64> {
        let mut out = self.family.clone();
        out.extend((0..self.q).map(|i| 1u64 << i));
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Parse from text: first line the ground elements, then one member per
    /// line as a subset of them.
    pub fn parse(text: &str) -> Result<(Self, Vec<String>)> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or(Error::InvalidInstance("empty input".into()))?;
        let names: Vec<String> = header.split_whitespace().map(str::to_string).collect();
        let ground = GroundSet::new(names.clone())?;
        if ground.len() > 16 {
            return Err(Error::InvalidInstance("ground set size out of range".into()));
        }
        let mut family = Vec::new();
        for line in lines {
            family.push(ground.parse_set(line)?.as_mask());
        }
        Ok((Self::new(ground.len(), family)?, names))
    }
}

/// Maps attributes of a generated system back to covering family members.
pub struct SetCoverDecoder {
    ground: Arc<GroundSet>,
    /// per attribute: the covered subset of Q, if the attribute decodes
    meaning: Vec<Option<u64>>,
}

impl SetCoverDecoder {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Decode a witness set into family members (masks over Q).
    pub fn decode(&self, witness: &AttrSet) -> Result<Vec<u64>> {
        witness
            .iter()
            .map(|a| {
                self.meaning[a].ok_or_else(|| {
                    Error::InvalidInstance(format!(
                        "attribute {:?} does not decode to a family member",
                        self.ground.name(a)
                    ))
                })
            })
            .collect()
    }
}

enum ReductionKind {
    /// double a near-top element; the solution is a minimum generator of the
    /// large critical set
    Nonbinary,
    /// add a new top; the solution is a minimum binary conclusion for it
    Binary,
}

fn setcover_reduction(
    inst: &SetCoverInstance,
    kind: ReductionKind,
    oracle_bound: usize,
) -> Result<(ImplicationSet, SetCoverDecoder)> {
    if inst.is_trivial() {
        return Err(Error::TrivialInstance);
    }
    let q = inst.q;
    let full = (1usize << q) - 1;
    let nonsingleton: Vec<u64> = inst.family.iter().copied().filter(|m| m.count_ones() > 1).collect();

    let mut lattice = match kind {
        ReductionKind::Nonbinary => FiniteLattice::boolean(q),
        ReductionKind::Binary => FiniteLattice::boolean_with_top(q),
    };
    // element index of each doubled member, in family order
    let mut z_elements = Vec::new();
    for &m in &nonsingleton {
        z_elements.push(lattice.len());
        lattice = lattice.double(m as usize);
    }
    let w_element = match kind {
        ReductionKind::Nonbinary => {
            // double the complement of the first ground element
            let t = full & !1usize;
            let w = lattice.len();
            lattice = lattice.double(t);
            w
        }
        ReductionKind::Binary => 1usize << q,
    };

    let ji = lattice.join_irreducibles();
    let mut names = vec![String::new(); ji.len()];
    let mut meaning = vec![None; ji.len()];
    for (i, &element) in ji.iter().enumerate() {
        if element < (1 << q) {
            let bit = (element as u64).trailing_zeros() as usize;
            assert_eq!(element, 1 << bit, "unexpected reducible element among atoms");
            names[i] = format!("q{}", bit + 1);
            meaning[i] = Some(1u64 << bit);
        } else if element == w_element {
            names[i] = "w".to_string();
        } else {
            let z_idx = z_elements.iter().position(|&z| z == element).expect("doubled element");
            names[i] = format!("z{}", z_idx + 1);
            meaning[i] = Some(nonsingleton[z_idx]);
        }
    }

    let (sigma, _) = standard_system_from_lattice(&lattice, &names, oracle_bound)?;
    let decoder = SetCoverDecoder { ground: sigma.ground_arc(), meaning };
    Ok((sigma, decoder))
}

/// Closure system without D-cycles whose large critical set encodes the
/// instance: a minimum generator decodes to an optimal cover.
pub fn setcover_nonbinary(inst: &SetCoverInstance) -> Result<(ImplicationSet, SetCoverDecoder)> {
    setcover_reduction(inst, ReductionKind::Nonbinary, 18)
}

/// Closure system without D-cycles with a new top attribute `w`: a minimum
/// set closing to everything below `w` decodes to an optimal cover.
pub fn setcover_binary(inst: &SetCoverInstance) -> Result<(ImplicationSet, SetCoverDecoder)> {
    setcover_reduction(inst, ReductionKind::Binary, 18)
}

/// Reproducible random covering family over `q` elements, redrawn until
/// non-trivial.
pub fn random_setcover(q: usize, members: usize, seed: u64) -> SetCoverInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = (1u64 << q) - 1;
    loop {
        let mut family: Vec<u64> = Vec::new();
        for _ in 0..members {
            let m = rng.gen_range(1..=full);
            family.push(m);
        }
        // ensure coverage by adding singletons for missed elements
        let covered = family.iter().fold(0, |acc, &m| acc | m);
        for i in 0..q {
            if covered >> i & 1 == 0 {
                family.push(1 << i);
            }
        }
        if let Ok(inst) = SetCoverInstance::new(q, family) {
            if !inst.is_trivial() {
                return inst;
            }
        }
    }
}

/// Reproducible pseudo-random implication set over `n` attributes named
/// a1..an, redrawn until it defines a standard closure system. `density`
/// scales the implication count; zero yields the empty set.
pub fn random_system(n: usize, density: f64, seed: u64) -> ImplicationSet {
    assert!(n >= 1);
    let ground = Arc::new(
        GroundSet::new((1..=n).map(|i| format!("a{i}"))).expect("valid generated names"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut target = (density * n as f64).round() as usize;
    let mut attempts = 0usize;
    loop {
        let mut sigma = ImplicationSet::new(Arc::clone(&ground));
        for _ in 0..target {
            let premise_len = rng.gen_range(1..=3.min(n.max(2) - 1).max(1));
            let mut attrs: Vec<usize> = (0..n).collect();
            attrs.shuffle(&mut rng);
            let premise = AttrSet::from_indices(n, attrs[..premise_len].iter().copied());
            let rest: Vec<usize> = attrs[premise_len..].to_vec();
            if rest.is_empty() {
                continue;
            }
            let conclusion_len = rng.gen_range(1..=2.min(rest.len()));
            let conclusion = AttrSet::from_indices(n, rest[..conclusion_len].iter().copied());
            sigma.push(Implication::new(premise, conclusion).unwrap());
        }
        if is_standard(&sigma).is_standard() {
            return sigma;
        }
        attempts += 1;
        if attempts.is_multiple_of(50) && target > 0 {
            // very dense draws may never be standard; back off
            target -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_basis;
    use crate::oracle::{enumerate_closed, DEFAULT_ORACLE_BOUND};

    #[test]
    fn fixtures_parse_and_match_known_metrics() {
        for name in FIXTURE_NAMES {
            let f = fixture(name).unwrap();
            assert!(!f.is_empty(), "{name} is empty");
        }
        assert_eq!(fixture("2kbases").unwrap().metrics().total.s, 24);
        assert!(fixture("nope").is_err());
    }

    #[test]
    fn boolean_lattice_properties() {
        let lat = FiniteLattice::boolean(3);
        lat.validate().unwrap();
        assert_eq!(lat.join_irreducibles(), vec![1, 2, 4]);
        assert_eq!(lat.join(0b001, 0b010), Some(0b011));
        assert_eq!(lat.meet(0b011, 0b110), Some(0b010));
    }

    #[test]
    fn doubling_the_bottom_of_a_chain() {
        // 2-element chain = boolean(1); doubling the bottom gives a 3-chain
        let lat = FiniteLattice::boolean(1);
        let doubled = lat.double(0);
        doubled.validate().unwrap();
        assert_eq!(doubled.len(), 3);
        // z sits between bottom and top
        assert!(doubled.leq(0, 2) && doubled.leq(2, 1));
    }

    #[test]
    fn doubling_keeps_lattice_valid_and_adds_a_join_irreducible() {
        let lat = FiniteLattice::boolean(4);
        let doubled = lat.double(0b0011);
        doubled.validate().unwrap();
        let ji = doubled.join_irreducibles();
        assert!(ji.contains(&16));
        assert_eq!(ji.len(), 5);
    }

    #[test]
    fn boolean_standard_system_is_empty() {
        let lat = FiniteLattice::boolean(3);
        let names: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
        let (sigma, _) = standard_system_from_lattice(&lat, &names, DEFAULT_ORACLE_BOUND).unwrap();
        assert!(sigma.is_empty());
    }

    #[test]
    fn two_element_chain_gives_single_attribute() {
        let lat = FiniteLattice::boolean(1);
        let (sigma, _) =
            standard_system_from_lattice(&lat, &["j".to_string()], DEFAULT_ORACLE_BOUND).unwrap();
        assert!(sigma.is_empty());
        assert_eq!(sigma.ground().len(), 1);
    }

    #[test]
    fn lattice_round_trip() {
        // the closed family of the extracted system is order-isomorphic to
        // the lattice: its sets are exactly the join-irreducible down-sets
        let lat = FiniteLattice::boolean(3).double(0b011);
        let names: Vec<String> = ["q1", "q2", "q3", "z"].iter().map(|s| s.to_string()).collect();
        let (sigma, ji) = standard_system_from_lattice(&lat, &names, DEFAULT_ORACLE_BOUND).unwrap();
        let family = enumerate_closed(&sigma, DEFAULT_ORACLE_BOUND).unwrap();
        assert_eq!(family.len(), lat.len());
        let n = ji.len();
        for a in 0..lat.len() {
            let d = AttrSet::from_indices(
                n,
                ji.iter().enumerate().filter(|(_, &j)| lat.leq(j, a)).map(|(i, _)| i),
            );
            assert!(family.contains(&d));
        }
    }

    #[test]
    fn trivial_instances_are_rejected() {
        let inst = SetCoverInstance::new(3, vec![0b111, 0b001, 0b010, 0b100]).unwrap();
        assert!(inst.is_trivial());
        assert!(matches!(setcover_nonbinary(&inst), Err(Error::TrivialInstance)));
        let near = SetCoverInstance::new(3, vec![0b011, 0b100]).unwrap();
        assert!(near.is_trivial());
    }

    #[test]
    fn singleton_only_family() {
        let inst = SetCoverInstance::new(3, vec![0b001, 0b010, 0b100]).unwrap();
        assert!(!inst.is_trivial());
        let (sigma, _) = setcover_binary(&inst).unwrap();
        assert!(is_standard(&sigma).is_standard());
        assert_eq!(canonical_basis(&sigma), sigma.normalized());
    }

    #[test]
    fn random_system_is_deterministic_and_standard() {
        let a = random_system(4, 1.0, 1);
        let b = random_system(4, 1.0, 1);
        assert_eq!(a, b);
        assert!(is_standard(&a).is_standard());
        assert!(random_system(4, 0.0, 7).is_empty());
    }

    #[test]
    fn random_setcover_is_deterministic() {
        let a = random_setcover(5, 6, 3);
        let b = random_setcover(5, 6, 3);
        assert_eq!(a.family(), b.family());
        assert!(!a.is_trivial());
    }
}
