//! The idempotent-pair calculus: commutators and anti-commutators,
//! Bott-Duffin invertibility relative to an idempotent, the Kato and
//! Koliha-Rakocevic identities, similarity witnesses, and the full
//! per-pair diagnostic report.

use alloc::format;
use alloc::vec::Vec;

use crate::error::RingError;
use crate::ring::{BitSet, Element, FiniteRing, RingInner};
use crate::Result;

/// `[x, y] = xy - yx`.
pub fn commutator(ring: &FiniteRing, x: Element, y: Element) -> Result<Element> {
    let (a, b) = (ring.check(x)?, ring.check(y)?);
    let inner = ring.inner();
    Ok(ring.elem(inner.sub_code(inner.mul_code(a, b), inner.mul_code(b, a))))
}

/// `<x, y> = xy + yx`.
pub fn anti_commutator(ring: &FiniteRing, x: Element, y: Element) -> Result<Element> {
    let (a, b) = (ring.check(x)?, ring.check(y)?);
    let inner = ring.inner();
    Ok(ring.elem(inner.add_code(inner.mul_code(a, b), inner.mul_code(b, a))))
}

fn require_idempotent(ring: &FiniteRing, e: Element) -> Result<u64> {
    let c = ring.check(e)?;
    let inner = ring.inner();
    if inner.mul_code(c, c) != c {
        return Err(RingError::NotIdempotent);
    }
    Ok(c)
}

/// Does the multiplicative orbit of `x` reach `id`? In a finite monoid with
/// identity `id` this decides invertibility, tracking the inverse.
fn orbit_reaches(inner: &RingInner, x: u64, id: u64) -> Option<u64> {
    if x == id {
        return Some(id);
    }
    let mut prev = x;
    let mut slow = inner.mul_code(x, x);
    let mut fast = inner.mul_code(slow, slow);
    loop {
        if slow == id {
            return Some(prev);
        }
        if slow == fast {
            return None;
        }
        prev = slow;
        slow = inner.mul_code(slow, x);
        fast = inner.mul_code(inner.mul_code(fast, x), x);
    }
}

/// Outcome of a Bott-Duffin invertibility test of `a` relative to the
/// idempotent `e`: the four equivalent conditions, the corner ring, and the
/// inverse of `eae` inside it when invertible.
pub struct BottDuffin {
    pub invertible: bool,
    /// Truth of the four equivalent conditions, in order:
    /// `eae` invertible in `eRe`; `1-e+ae`, `1-e+ea`, `1-e+eae` units in `R`.
    pub condition_bits: [bool; 4],
    pub corner: FiniteRing,
    /// Inverse of `eae` in `corner`, when invertible.
    pub bd_inverse: Option<Element>,
}

/// Full Bott-Duffin test, materializing the corner ring. The four condition
/// bits are equivalent by Jacobson's lemma and the Peirce decomposition;
/// disagreement is reported as a consistency violation.
pub fn bott_duffin(ring: &FiniteRing, a: Element, e: Element) -> Result<BottDuffin> {
    let ac = ring.check(a)?;
    let ec = require_idempotent(ring, e)?;
    let bits = bott_duffin_bits_codes(ring.inner(), ac, ec);
    if bits.iter().any(|&b| b != bits[0]) {
        return Err(RingError::ConsistencyViolation(format!(
            "Bott-Duffin condition bits disagree: {bits:?}"
        )));
    }
    let corner = ring.corner(e)?;
    let inner = ring.inner();
    let eae = inner.mul_code(inner.mul_code(ec, ac), ec);
    let eae_in_corner = corner
        .elements()
        .find(|&x| corner_code_to_base(&corner, x) == eae)
        .expect("eae lies in the corner");
    let bd_inverse = corner.inverse(eae_in_corner)?;
    debug_assert_eq!(bits[0], bd_inverse.is_some());
    Ok(BottDuffin {
        invertible: bits[0],
        condition_bits: bits,
        corner,
        bd_inverse,
    })
}

fn corner_code_to_base(corner: &FiniteRing, x: Element) -> u64 {
    match corner.inner().repr() {
        crate::ring::Repr::Corner { carrier, .. } => carrier[x.code() as usize],
        _ => unreachable!("corner rings have corner representation"),
    }
}

/// The four Bott-Duffin condition bits without materializing the corner:
/// condition (1) is decided by the power orbit of `eae` inside the corner
/// monoid. Cheap enough for exhaustive `(a, e)` sweeps.
pub fn bott_duffin_bits(ring: &FiniteRing, a: Element, e: Element) -> Result<[bool; 4]> {
    let ac = ring.check(a)?;
    let ec = require_idempotent(ring, e)?;
    Ok(bott_duffin_bits_codes(ring.inner(), ac, ec))
}

fn bott_duffin_bits_codes(inner: &RingInner, a: u64, e: u64) -> [bool; 4] {
    let one = inner.one_code();
    let f = inner.sub_code(one, e);
    let ae = inner.mul_code(a, e);
    let ea = inner.mul_code(e, a);
    let eae = inner.mul_code(e, ae);
    [
        orbit_reaches(inner, eae, e).is_some(),
        inner.is_unit_code(inner.add_code(f, ae)),
        inner.is_unit_code(inner.add_code(f, ea)),
        inner.is_unit_code(inner.add_code(f, eae)),
    ]
}

/// Pass/fail of the three classical idempotent identities
/// `(e-e')^2 + (1-e-e')^2 = 1`, `(e-e')^2 = (e+e')(2-e-e')` (with commuting
/// factors), and `rs = sr = (1+e-e')(1-e+e') = (1-e-e')^2` for
/// `r = 1-e+e'e`, `s = 1-e'+ee'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KatoReport {
    pub squares_sum_to_one: bool,
    pub difference_square_factors: bool,
    pub resolvent_products_agree: bool,
}

impl KatoReport {
    pub fn all_hold(&self) -> bool {
        self.squares_sum_to_one && self.difference_square_factors && self.resolvent_products_agree
    }
}

pub fn check_kato(ring: &FiniteRing, e: Element, e_prime: Element) -> Result<KatoReport> {
    let ec = require_idempotent(ring, e)?;
    let pc = require_idempotent(ring, e_prime)?;
    let r = ring.inner();
    let one = r.one_code();
    let two = r.add_code(one, one);
    let diff = r.sub_code(ec, pc);
    let sum = r.add_code(ec, pc);
    let diff_sq = r.mul_code(diff, diff);
    let one_minus_sum = r.sub_code(one, sum);
    let oms_sq = r.mul_code(one_minus_sum, one_minus_sum);

    let squares_sum_to_one = r.add_code(diff_sq, oms_sq) == one;

    let two_minus_sum = r.sub_code(two, sum);
    let prod_a = r.mul_code(sum, two_minus_sum);
    let prod_b = r.mul_code(two_minus_sum, sum);
    let difference_square_factors = diff_sq == prod_a && prod_a == prod_b;

    // r = 1 - e + e'e, s = 1 - e' + ee'
    let rr = r.add_code(r.sub_code(one, ec), r.mul_code(pc, ec));
    let ss = r.add_code(r.sub_code(one, pc), r.mul_code(ec, pc));
    let rs = r.mul_code(rr, ss);
    let sr = r.mul_code(ss, rr);
    let plus = r.add_code(one, diff);
    let minus = r.sub_code(one, diff);
    let factored = r.mul_code(plus, minus);
    let resolvent_products_agree = rs == sr && rs == factored && rs == oms_sq;

    Ok(KatoReport {
        squares_sum_to_one,
        difference_square_factors,
        resolvent_products_agree,
    })
}

/// Pass/fail of the commutator and anti-commutator factorizations
/// `[e,e'] = (e-e')(e'-f) = (f-e')(e-e')` and
/// `<e,e'> = (e+e')(e'-f) = (e'-f)(e+e')`, with `f = 1-e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KolihaRakocevicReport {
    pub commutator_factors: bool,
    pub anti_commutator_factors: bool,
}

impl KolihaRakocevicReport {
    pub fn all_hold(&self) -> bool {
        self.commutator_factors && self.anti_commutator_factors
    }
}

pub fn check_koliha_rakocevic(
    ring: &FiniteRing,
    e: Element,
    e_prime: Element,
) -> Result<KolihaRakocevicReport> {
    let ec = require_idempotent(ring, e)?;
    let pc = require_idempotent(ring, e_prime)?;
    let r = ring.inner();
    let one = r.one_code();
    let f = r.sub_code(one, ec);
    let comm = r.sub_code(r.mul_code(ec, pc), r.mul_code(pc, ec));
    let anti = r.add_code(r.mul_code(ec, pc), r.mul_code(pc, ec));
    let diff = r.sub_code(ec, pc);
    let sum = r.add_code(ec, pc);
    let pf = r.sub_code(pc, f);
    let fp = r.sub_code(f, pc);
    let commutator_factors =
        comm == r.mul_code(diff, pf) && comm == r.mul_code(fp, diff);
    let anti_commutator_factors =
        anti == r.mul_code(sum, pf) && anti == r.mul_code(pf, sum);
    Ok(KolihaRakocevicReport {
        commutator_factors,
        anti_commutator_factors,
    })
}

/// Jacobson's lemma instance: `1 - xy` is a unit iff `1 - yx` is. Returns
/// whether the two sides agree (they always must).
pub fn jacobson_lemma_check(ring: &FiniteRing, x: Element, y: Element) -> Result<bool> {
    let (a, b) = (ring.check(x)?, ring.check(y)?);
    let r = ring.inner();
    let one = r.one_code();
    let lhs = r.is_unit_code(r.sub_code(one, r.mul_code(a, b)));
    let rhs = r.is_unit_code(r.sub_code(one, r.mul_code(b, a)));
    Ok(lhs == rhs)
}

/// When `u = e - e'` is a unit, `e` is similar to `1 - e'` via
/// `e = u^{-1}(1-e')u`; returns that conjugator, or `None` when `e - e'`
/// is not a unit.
pub fn similarity_witness(
    ring: &FiniteRing,
    e: Element,
    e_prime: Element,
) -> Result<Option<Element>> {
    let ec = require_idempotent(ring, e)?;
    let pc = require_idempotent(ring, e_prime)?;
    let r = ring.inner();
    let u = r.sub_code(ec, pc);
    let Some(u_inv) = r.inverse_code(u) else {
        return Ok(None);
    };
    let target = r.sub_code(r.one_code(), pc);
    let conj = r.mul_code(r.mul_code(u_inv, target), u);
    if conj != ec {
        return Err(RingError::ConsistencyViolation(
            "conjugation by e - e' failed to carry 1 - e' onto e".into(),
        ));
    }
    Ok(Some(ring.elem(u)))
}

/// How a similarity conjugator was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimilarityPath {
    /// The closed-form conjugator `a + b - 1`.
    Direct,
    /// A product of two closed-form conjugators.
    Composed,
    /// Exhaustive search over the unit group.
    Search,
}

/// A verified similarity `to = w^{-1} * from * w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub from: Element,
    pub to: Element,
    pub conjugator: Element,
    pub path: SimilarityPath,
}

/// Outcome of the two-sided direct sum check `R = eR (+) e'R = Re (+) Re'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectSumCheck {
    pub right_spans: bool,
    pub right_trivial_intersection: bool,
    pub left_spans: bool,
    pub left_trivial_intersection: bool,
}

impl DirectSumCheck {
    pub fn holds(&self) -> bool {
        self.right_spans
            && self.right_trivial_intersection
            && self.left_spans
            && self.left_trivial_intersection
    }
}

/// Full diagnostic for one idempotent pair: the commutator/anti-commutator
/// unit flags, the difference/sum flags they decompose into, and — when the
/// commutator is invertible — pairwise similarity conjugators for
/// `e, e', 1-e, 1-e'` plus the direct sum decomposition of the ring.
pub struct PairReport {
    pub e: Element,
    pub e_prime: Element,
    pub f: Element,
    pub f_prime: Element,
    pub comm: Element,
    pub anti: Element,
    pub comm_unit: bool,
    pub anti_unit: bool,
    pub diff_unit: bool,
    pub sum_unit: bool,
    /// `f - e'` invertible; coincides with `1 - e - e'` by definition.
    pub fdiff_unit: bool,
    pub one_minus_sum_unit: bool,
    pub similarities: Option<Vec<SimilarityWitness>>,
    pub direct_sum: Option<DirectSumCheck>,
}

pub fn pair_report(ring: &FiniteRing, e: Element, e_prime: Element) -> Result<PairReport> {
    let ec = require_idempotent(ring, e)?;
    let pc = require_idempotent(ring, e_prime)?;
    let r = ring.inner();
    let one = r.one_code();
    let fc = r.sub_code(one, ec);
    let fpc = r.sub_code(one, pc);
    let comm = r.sub_code(r.mul_code(ec, pc), r.mul_code(pc, ec));
    let anti = r.add_code(r.mul_code(ec, pc), r.mul_code(pc, ec));
    let comm_unit = r.is_unit_code(comm);
    let anti_unit = r.is_unit_code(anti);
    let diff_unit = r.is_unit_code(r.sub_code(ec, pc));
    let sum_unit = r.is_unit_code(r.add_code(ec, pc));
    let fdiff_unit = r.is_unit_code(r.sub_code(fc, pc));
    let one_minus_sum_unit = r.is_unit_code(r.sub_code(one, r.add_code(ec, pc)));

    let (similarities, direct_sum) = if comm_unit {
        (
            Some(pairwise_similarities(ring, [ec, pc, fc, fpc])?),
            Some(direct_sum_check(ring, ec, pc)),
        )
    } else {
        (None, None)
    };

    Ok(PairReport {
        e: ring.elem(ec),
        e_prime: ring.elem(pc),
        f: ring.elem(fc),
        f_prime: ring.elem(fpc),
        comm: ring.elem(comm),
        anti: ring.elem(anti),
        comm_unit,
        anti_unit,
        diff_unit,
        sum_unit,
        fdiff_unit,
        one_minus_sum_unit,
        similarities,
        direct_sum,
    })
}

/// Conjugators for all six unordered pairs among four idempotents.
/// Tries the closed-form conjugator first (`to = w^{-1} from w` for
/// `w = to + from - 1`), then products of two closed forms, and finally an
/// exhaustive search over units.
fn pairwise_similarities(
    ring: &FiniteRing,
    idems: [u64; 4],
) -> Result<Vec<SimilarityWitness>> {
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            out.push(similarity_between(ring, idems[j], idems[i])?);
        }
    }
    Ok(out)
}

fn conjugates(r: &RingInner, w: u64, from: u64, to: u64) -> bool {
    // to = w^{-1} from w, tested multiplicatively as w*to = from*w.
    r.is_unit_code(w) && r.mul_code(w, to) == r.mul_code(from, w)
}

fn similarity_between(ring: &FiniteRing, from: u64, to: u64) -> Result<SimilarityWitness> {
    let r = ring.inner();
    let one = r.one_code();
    let direct = r.sub_code(r.add_code(to, from), one);
    if conjugates(r, direct, from, to) {
        return Ok(SimilarityWitness {
            from: ring.elem(from),
            to: ring.elem(to),
            conjugator: ring.elem(direct),
            path: SimilarityPath::Direct,
        });
    }
    // Composition through a third idempotent h: if w1 carries h onto `to`
    // and w2 carries `from` onto h, then w2*w1 carries `from` onto `to`.
    for &h in ring.idempotent_codes() {
        if h == from || h == to {
            continue;
        }
        let w1 = r.sub_code(r.add_code(to, h), one);
        let w2 = r.sub_code(r.add_code(h, from), one);
        if conjugates(r, w1, h, to) && conjugates(r, w2, from, h) {
            let w = r.mul_code(w2, w1);
            if conjugates(r, w, from, to) {
                return Ok(SimilarityWitness {
                    from: ring.elem(from),
                    to: ring.elem(to),
                    conjugator: ring.elem(w),
                    path: SimilarityPath::Composed,
                });
            }
        }
    }
    for &w in ring.unit_codes() {
        if conjugates(r, w, from, to) {
            return Ok(SimilarityWitness {
                from: ring.elem(from),
                to: ring.elem(to),
                conjugator: ring.elem(w),
                path: SimilarityPath::Search,
            });
        }
    }
    Err(RingError::SearchFailed(format!(
        "no conjugator carries {from} onto {to}"
    )))
}

/// Materializes `eR`, `e'R` (and the left-sided versions) as element sets
/// and checks that they span the ring and intersect trivially.
fn direct_sum_check(ring: &FiniteRing, e: u64, ep: u64) -> DirectSumCheck {
    let r = ring.inner();
    let card = ring.cardinality();
    let zero = r.zero_code();
    let collect = |left: bool, idem: u64| -> Vec<u64> {
        let mut mask = BitSet::new(card);
        let mut out = Vec::new();
        for x in 0..card {
            let m = if left {
                r.mul_code(x, idem)
            } else {
                r.mul_code(idem, x)
            };
            if !mask.get(m) {
                mask.set(m);
                out.push(m);
            }
        }
        out
    };
    let check = |left: bool| -> (bool, bool) {
        let a = collect(left, e);
        let b = collect(left, ep);
        let mut bmask = BitSet::new(card);
        for &x in &b {
            bmask.set(x);
        }
        let trivial = a.iter().all(|&x| x == zero || !bmask.get(x));
        let mut seen = BitSet::new(card);
        let mut count = 0u64;
        for &x in &a {
            for &y in &b {
                let s = r.add_code(x, y);
                if !seen.get(s) {
                    seen.set(s);
                    count += 1;
                }
            }
        }
        (count == card, trivial)
    };
    let (right_spans, right_trivial_intersection) = check(false);
    let (left_spans, left_trivial_intersection) = check(true);
    DirectSumCheck {
        right_spans,
        right_trivial_intersection,
        left_spans,
        left_trivial_intersection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{ElemLit, RingExpr};
    use crate::ring::build_ring;
    use alloc::boxed::Box;

    fn zn(n: u64) -> RingExpr {
        RingExpr::Zn { modulus: n }
    }

    fn m2(n: u64) -> FiniteRing {
        build_ring(&RingExpr::Mat {
            size: 2,
            base: Box::new(zn(n)),
        })
        .unwrap()
    }

    fn mat_lit(entries: [[i64; 2]; 2]) -> ElemLit {
        ElemLit::List(
            entries
                .iter()
                .map(|row| ElemLit::List(row.iter().map(|&v| ElemLit::Int(v)).collect()))
                .collect(),
        )
    }

    fn el(r: &FiniteRing, entries: [[i64; 2]; 2]) -> Element {
        r.resolve_literal(&mat_lit(entries)).unwrap()
    }

    #[test]
    fn commutator_of_the_standard_pair_over_f3() {
        let r = m2(3);
        let e = el(&r, [[2, 2], [2, 2]]);
        let e11 = el(&r, [[1, 0], [0, 0]]);
        assert!(r.is_idempotent(e).unwrap());
        let c = commutator(&r, e, e11).unwrap();
        assert_eq!(c, el(&r, [[0, 1], [2, 0]]));
        assert!(r.is_unit(c).unwrap());
        assert_eq!(r.det(c).unwrap().code(), 1);
        let a = anti_commutator(&r, e, e11).unwrap();
        assert_eq!(a, el(&r, [[1, 2], [2, 0]]));
        assert!(r.is_unit(a).unwrap());
        assert_eq!(r.det(a).unwrap().code(), 2);
        // [x, x] = 0.
        let x = r.element(37).unwrap();
        assert_eq!(commutator(&r, x, x).unwrap(), r.zero());
    }

    #[test]
    fn bott_duffin_rejects_a_zero_corner_product() {
        // e = E11, a = E12 + E21: eae = 0 even though [e, a] is a unit.
        let r = m2(2);
        let e = el(&r, [[1, 0], [0, 0]]);
        let a = el(&r, [[0, 1], [1, 0]]);
        let bd = bott_duffin(&r, a, e).unwrap();
        assert!(!bd.invertible);
        assert_eq!(bd.condition_bits, [false; 4]);
        assert!(bd.bd_inverse.is_none());
        assert!(r.is_unit(commutator(&r, e, a).unwrap()).unwrap());
    }

    #[test]
    fn bott_duffin_inverse_in_a_rank_one_corner() {
        let r = m2(3);
        let e = el(&r, [[1, 0], [0, 0]]);
        let a = el(&r, [[2, 2], [2, 2]]);
        let bd = bott_duffin(&r, a, e).unwrap();
        assert!(bd.invertible);
        assert_eq!(bd.condition_bits, [true; 4]);
        // eae = 2E11 and 2 * 2 = 1 mod 3, so the inverse is 2E11 again.
        let inv = bd.bd_inverse.unwrap();
        let as_base = bd.corner.render(inv).unwrap();
        assert_eq!(as_base, "[[2,0],[0,0]]");
    }

    #[test]
    fn bott_duffin_trivial_cases() {
        let r = build_ring(&zn(5)).unwrap();
        let bd = bott_duffin(&r, r.one(), r.one()).unwrap();
        assert!(bd.invertible);
        assert_eq!(bd.bd_inverse.unwrap(), bd.corner.one());
        // Zero ring: 0 is Bott-Duffin invertible relative to 0.
        let z = build_ring(&zn(1)).unwrap();
        let bd = bott_duffin(&z, z.zero(), z.zero()).unwrap();
        assert!(bd.invertible);
    }

    #[test]
    fn kato_identities_on_the_spec_pairs() {
        let z = build_ring(&zn(7)).unwrap();
        assert!(check_kato(&z, z.zero(), z.zero()).unwrap().all_hold());
        let r2 = m2(2);
        let e = el(&r2, [[1, 0], [0, 0]]);
        let ep = el(&r2, [[1, 1], [0, 0]]);
        assert!(check_kato(&r2, e, ep).unwrap().all_hold());
        let r3 = m2(3);
        let e = el(&r3, [[2, 2], [2, 2]]);
        let ep = el(&r3, [[1, 0], [0, 0]]);
        assert!(check_kato(&r3, e, ep).unwrap().all_hold());
        assert!(check_koliha_rakocevic(&r3, e, ep).unwrap().all_hold());
    }

    #[test]
    fn koliha_rakocevic_on_orthogonal_idempotents() {
        let r = m2(2);
        let e = el(&r, [[1, 0], [0, 0]]);
        let ep = el(&r, [[0, 0], [0, 1]]);
        assert!(check_koliha_rakocevic(&r, e, ep).unwrap().all_hold());
        let one = build_ring(&zn(5)).unwrap();
        assert!(check_koliha_rakocevic(&one, one.one(), one.one())
            .unwrap()
            .all_hold());
    }

    #[test]
    fn jacobson_lemma_sweep_m2_f2() {
        let r = m2(2);
        let mut pairs = 0;
        for x in r.elements() {
            for y in r.elements() {
                assert!(jacobson_lemma_check(&r, x, y).unwrap());
                pairs += 1;
            }
        }
        assert_eq!(pairs, 256);
    }

    #[test]
    fn similarity_witness_examples() {
        // Characteristic 2: e - e' = I conjugates 1 - e' onto e.
        let r = m2(2);
        let e = el(&r, [[1, 0], [0, 0]]);
        let ep = el(&r, [[0, 0], [0, 1]]);
        let u = similarity_witness(&r, e, ep).unwrap().unwrap();
        assert_eq!(u, r.one());
        // Equal idempotents: u = 0 is not a unit.
        assert!(similarity_witness(&r, e, e).unwrap().is_none());
        // The mod-3 pair has conjugator [[1,2],[2,2]] of determinant 1.
        let r3 = m2(3);
        let e = el(&r3, [[2, 2], [2, 2]]);
        let e11 = el(&r3, [[1, 0], [0, 0]]);
        let u = similarity_witness(&r3, e, e11).unwrap().unwrap();
        assert_eq!(u, el(&r3, [[1, 2], [2, 2]]));
        assert_eq!(r3.det(u).unwrap().code(), 1);
    }

    #[test]
    fn pair_report_on_a_full_witness() {
        let r = m2(3);
        let e = el(&r, [[2, 2], [2, 2]]);
        let e11 = el(&r, [[1, 0], [0, 0]]);
        let rep = pair_report(&r, e, e11).unwrap();
        assert!(rep.comm_unit && rep.anti_unit);
        assert!(rep.diff_unit && rep.fdiff_unit && rep.one_minus_sum_unit);
        let sims = rep.similarities.unwrap();
        assert_eq!(sims.len(), 6);
        for s in &sims {
            let w = s.conjugator;
            let winv = r.inverse(w).unwrap().unwrap();
            let conj = r.mul(r.mul(winv, s.from).unwrap(), w).unwrap();
            assert_eq!(conj, s.to);
        }
        assert!(rep.direct_sum.unwrap().holds());
    }

    #[test]
    fn pair_report_orthogonal_units_in_characteristic_two() {
        let r = m2(2);
        let e = el(&r, [[1, 0], [0, 0]]);
        let ep = el(&r, [[0, 0], [0, 1]]);
        let rep = pair_report(&r, e, ep).unwrap();
        assert!(!rep.comm_unit && !rep.anti_unit);
        assert!(rep.diff_unit); // e - e' = I in characteristic 2
        assert!(rep.similarities.is_none());
    }

    #[test]
    fn pair_report_equal_identities_mod_5() {
        let r = build_ring(&zn(5)).unwrap();
        let rep = pair_report(&r, r.one(), r.one()).unwrap();
        assert_eq!(rep.comm, r.zero());
        assert!(!rep.comm_unit);
        assert_eq!(rep.anti.code(), 2);
        assert!(rep.anti_unit);
        assert!(rep.sum_unit);
        assert!(rep.fdiff_unit); // 1 - e - e' = -1
        assert!(!rep.diff_unit);
    }

    #[test]
    fn bott_duffin_is_asymmetric() {
        // e' = 1 is Bott-Duffin invertible relative to e = E11, but not
        // conversely, and 1 - e - e' = -e is not a unit.
        let r = m2(2);
        let e = el(&r, [[1, 0], [0, 0]]);
        let one = r.one();
        let fwd = bott_duffin(&r, one, e).unwrap();
        assert!(fwd.invertible);
        let back = bott_duffin(&r, e, one).unwrap();
        assert!(!back.invertible);
        let oms = r
            .sub(r.sub(one, e).unwrap(), one)
            .unwrap();
        assert!(!r.is_unit(oms).unwrap());
    }

    #[test]
    fn zero_ring_pair_report_is_total() {
        let z = build_ring(&zn(1)).unwrap();
        let rep = pair_report(&z, z.zero(), z.zero()).unwrap();
        assert!(rep.comm_unit && rep.anti_unit);
        assert!(rep.direct_sum.unwrap().holds());
        assert_eq!(rep.similarities.unwrap().len(), 6);
    }
}
