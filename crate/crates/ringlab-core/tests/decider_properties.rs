//! Cross-validation of the decision procedures: brute sweeps, unit
//! characterizations, and the matrix-ring classification must agree on the
//! whole test battery, with schedule-independent witnesses.

use rayon::prelude::*;
use ringlab_core::deciders::{
    classify_matrix_ring, has_property_k, has_property_kbar, property_k_via_units,
    property_kbar_via_units, scan_property_range, DecisionMethod, PropertyVerdict, RingProperty,
};
use ringlab_core::{Caps, FiniteRing, RingBuilder, RingExpr};

fn zn(n: u64) -> RingExpr {
    RingExpr::Zn { modulus: n }
}

fn big_caps() -> Caps {
    Caps {
        enumeration_cap: 10_100_000,
        pair_budget: 200_000_000,
        ..Caps::default()
    }
}

fn build(expr: &RingExpr) -> FiniteRing {
    RingBuilder::new().with_caps(big_caps()).build(expr).unwrap()
}

/// Chunked parallel scan with deterministic merge: the earliest hit wins
/// and reproduces the single-threaded statistics.
fn decide_parallel(
    ring: &FiniteRing,
    property: RingProperty,
    method: DecisionMethod,
) -> (bool, Option<(u64, u64)>, u64) {
    let m = ring.idempotent_codes().len() as u64;
    let total = m * m;
    let chunk = 4_000_000u64.max(total / 64).max(1);
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk).min(total)))
        .collect();
    let scans: Vec<_> = ranges
        .par_iter()
        .map(|&(lo, hi)| scan_property_range(ring, property, method, lo, hi).unwrap())
        .collect();
    let hit = scans
        .iter()
        .filter_map(|s| s.found_at.map(|p| (p, s.found.unwrap())))
        .min_by_key(|&(p, _)| p);
    match hit {
        Some((p, w)) => (true, Some(w), p + 1),
        None => (false, None, total),
    }
}

fn check_ring(ring: &FiniteRing, classify: Option<(usize, &FiniteRing)>) {
    let pairs = (ring.idempotent_codes().len() as u64).pow(2);
    let parallel = pairs > 2_000_000;
    let (k_holds, k_witness, k_pairs) = if parallel {
        decide_parallel(ring, RingProperty::K, DecisionMethod::Brute)
    } else {
        let v = has_property_k(ring).unwrap();
        (
            v.holds,
            v.witness.map(|(a, b)| (a.code(), b.code())),
            v.stats.pairs_examined,
        )
    };
    let (ku_holds, ku_witness, ku_pairs) = if parallel {
        decide_parallel(ring, RingProperty::K, DecisionMethod::UnitSearch)
    } else {
        let v = property_k_via_units(ring).unwrap();
        (
            v.holds,
            v.witness.map(|(a, b)| (a.code(), b.code())),
            v.stats.pairs_examined,
        )
    };
    assert_eq!(k_holds, ku_holds, "K methods disagree on {ring}");
    // The two per-pair conditions are equivalent, so even the least witness
    // and the scan length must coincide.
    assert_eq!(k_witness, ku_witness, "K witnesses differ on {ring}");
    assert_eq!(k_pairs, ku_pairs, "K scan lengths differ on {ring}");

    let (kb_holds, kb_witness, _) = if parallel {
        decide_parallel(ring, RingProperty::KBar, DecisionMethod::Brute)
    } else {
        let v = has_property_kbar(ring).unwrap();
        (
            v.holds,
            v.witness.map(|(a, b)| (a.code(), b.code())),
            v.stats.pairs_examined,
        )
    };
    let (kbu_holds, kbu_witness, _) = if parallel {
        decide_parallel(ring, RingProperty::KBar, DecisionMethod::UnitSearch)
    } else {
        let v = property_kbar_via_units(ring).unwrap();
        (
            v.holds,
            v.witness.map(|(a, b)| (a.code(), b.code())),
            v.stats.pairs_examined,
        )
    };
    assert_eq!(kb_holds, kbu_holds, "K-bar methods disagree on {ring}");
    assert_eq!(kb_witness, kbu_witness, "K-bar witnesses differ on {ring}");

    // K implies K-bar on every decided ring.
    assert!(!k_holds || kb_holds, "K without K-bar on {ring}");

    if let Some((n, base)) = classify {
        let (pk, pkbar) = classify_matrix_ring(n, base).unwrap();
        assert_eq!(pk.holds, k_holds, "classification of K wrong on {ring}");
        assert_eq!(
            pkbar.holds, kb_holds,
            "classification of K-bar wrong on {ring}"
        );
    }
}

#[test]
fn methods_agree_on_square_matrix_rings_over_zn() {
    // M_n(Z_m) for n <= 3, m <= 6 (the n = 3, m = 6 member has a
    // 10-million-element carrier and a 187-million-pair sweep).
    for n in 1..=3usize {
        for m in 1..=6u64 {
            let base = build(&zn(m));
            let ring = if n == 1 {
                base.clone()
            } else {
                base.matrix_ring_over(n).unwrap()
            };
            check_ring(&ring, Some((n, &base)));
        }
    }
}

#[test]
fn methods_agree_on_m4_f2() {
    let base = build(&zn(2));
    let ring = base.matrix_ring_over(4).unwrap();
    check_ring(&ring, Some((4, &base)));
}

#[test]
fn methods_and_triangular_transfer_agree() {
    // UT_k(Z_m) for k <= 3, m <= 4 decides like its base ring.
    for k in 1..=3usize {
        for m in 1..=4u64 {
            let base = build(&zn(m));
            let ring = build(&RingExpr::UpperTri {
                size: k,
                base: Box::new(zn(m)),
            });
            check_ring(&ring, None);
            let base_k = has_property_k(&base).unwrap().holds;
            let base_kbar = has_property_kbar(&base).unwrap().holds;
            assert_eq!(
                has_property_k(&ring).unwrap().holds,
                base_k,
                "triangular K transfer failed at k={k}, m={m}"
            );
            assert_eq!(
                has_property_kbar(&ring).unwrap().holds,
                base_kbar,
                "triangular K-bar transfer failed at k={k}, m={m}"
            );
        }
    }
}

#[test]
fn abelian_rings_decide_by_cardinality_and_two() {
    for expr in [
        zn(1),
        zn(2),
        zn(3),
        zn(4),
        zn(5),
        zn(6),
        zn(12),
        RingExpr::GFp {
            prime: 2,
            poly: vec![1, 1, 1],
        },
        RingExpr::Prod {
            factors: vec![zn(3), zn(5)],
        },
    ] {
        let r = build(&expr);
        assert!(r.is_abelian());
        let k = has_property_k(&r).unwrap().holds;
        assert_eq!(k, r.cardinality() == 1, "abelian K rule fails on {r}");
        let kbar = has_property_kbar(&r).unwrap().holds;
        let two_unit = r.is_unit(r.scalar(2)).unwrap();
        assert_eq!(kbar, two_unit, "abelian K-bar rule fails on {r}");
    }
}

#[test]
fn parallel_merge_is_bit_identical_to_serial() {
    for expr in [
        RingExpr::Mat {
            size: 2,
            base: Box::new(zn(3)),
        },
        RingExpr::Mat {
            size: 2,
            base: Box::new(zn(4)),
        },
        RingExpr::Mat {
            size: 2,
            base: Box::new(zn(6)),
        },
    ] {
        let r = build(&expr);
        for property in [RingProperty::K, RingProperty::KBar] {
            let serial: PropertyVerdict = match property {
                RingProperty::K => has_property_k(&r).unwrap(),
                RingProperty::KBar => has_property_kbar(&r).unwrap(),
            };
            let m = r.idempotent_codes().len() as u64;
            let total = m * m;
            // Merge many small chunks scanned out of order.
            let mut chunks: Vec<(u64, u64)> = (0..total)
                .step_by(37)
                .map(|lo| (lo, (lo + 37).min(total)))
                .collect();
            chunks.reverse();
            let hit = chunks
                .iter()
                .filter_map(|&(lo, hi)| {
                    scan_property_range(&r, property, DecisionMethod::Brute, lo, hi)
                        .unwrap()
                        .found_at
                        .map(|p| {
                            (
                                p,
                                scan_property_range(&r, property, DecisionMethod::Brute, lo, hi)
                                    .unwrap()
                                    .found
                                    .unwrap(),
                            )
                        })
                })
                .min_by_key(|&(p, _)| p);
            let merged_witness = hit.map(|(_, w)| w);
            let merged_pairs = hit.map(|(p, _)| p + 1).unwrap_or(total);
            assert_eq!(
                serial.witness.map(|(a, b)| (a.code(), b.code())),
                merged_witness
            );
            assert_eq!(serial.stats.pairs_examined, merged_pairs);
        }
    }
}
