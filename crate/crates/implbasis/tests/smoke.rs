//! Scaling smoke tests: the polynomial paths must stay comfortably fast on
//! inputs two orders of magnitude above desk scale. Timings are printed for
//! inspection, not asserted.

use std::sync::Arc;
use std::time::Instant;

use implbasis::canonical::{canonical_basis, is_uc_system};
use implbasis::kbasis::k_basis;
use implbasis::oracle::is_standard;
use implbasis::{GroundSet, Implication, ImplicationSet, Tiebreak};

/// 2m+1 attributes: m incomparable pairs over a shared bottom, chained by
/// one non-binary implication per pair. Standard by construction.
fn wide_system(m: usize) -> ImplicationSet {
    let mut names: Vec<String> = Vec::new();
    for i in 1..=m {
        names.push(format!("p{i}"));
        names.push(format!("q{i}"));
    }
    names.push("r".to_string());
    let ground = Arc::new(GroundSet::new(names).unwrap());
    let n = ground.len();
    let r = n - 1;
    let mut sigma = ImplicationSet::new(Arc::clone(&ground));
    let ix = |name: String| ground.index_of(&name).unwrap();
    for i in 1..=m {
        let p = ix(format!("p{i}"));
        let q = ix(format!("q{i}"));
        for a in [p, q] {
            sigma.push(
                Implication::new(
                    implbasis::AttrSet::singleton(n, a),
                    implbasis::AttrSet::singleton(n, r),
                )
                .unwrap(),
            );
        }
        if i < m {
            sigma.push(
                Implication::new(
                    implbasis::AttrSet::from_indices(n, [p, q]),
                    implbasis::AttrSet::singleton(n, ix(format!("p{}", i + 1))),
                )
                .unwrap(),
            );
        }
    }
    sigma
}

#[test]
fn k_basis_and_uc_check_scale_past_desk_size() {
    for m in [50usize, 100] {
        let sigma = wide_system(m);
        assert!(is_standard(&sigma).is_standard());
        let start = Instant::now();
        let canonical = canonical_basis(&sigma);
        let k = k_basis(&sigma, Tiebreak::First).unwrap();
        let uc = is_uc_system(&sigma);
        let elapsed = start.elapsed();
        assert_eq!(k.len(), canonical.len());
        assert!(uc);
        println!(
            "m={m}: n={}, s={}, canonical+K+UC in {:?}",
            sigma.ground().len(),
            sigma.metrics().total.s,
            elapsed
        );
    }
}
