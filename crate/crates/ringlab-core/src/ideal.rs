//! Two-sided ideals, ideal closure, and quotient rings.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::RingError;
use crate::ring::{splitmix64, BitSet, Element, FiniteRing};
use crate::Result;

/// A two-sided ideal of one specific ring, stored as a sorted set of
/// element codes. Contains zero and is closed under addition, negation,
/// and multiplication by arbitrary ring elements.
#[derive(Clone)]
pub struct IdealSet {
    ring: FiniteRing,
    members: Arc<Vec<u64>>,
    verified: bool,
}

impl core::fmt::Debug for IdealSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "IdealSet({} members of {})", self.members.len(), self.ring)
    }
}

impl IdealSet {
    pub(crate) fn trusted(ring: FiniteRing, members: Arc<Vec<u64>>) -> Self {
        IdealSet {
            ring,
            members,
            verified: true,
        }
    }

    /// Wraps an explicit member set, verifying the ideal axioms.
    pub fn new(ring: &FiniteRing, members: &[Element]) -> Result<Self> {
        let mut codes = Vec::with_capacity(members.len());
        for &m in members {
            codes.push(ring.check(m)?);
        }
        codes.sort_unstable();
        codes.dedup();
        verify_ideal(ring, &codes)?;
        Ok(IdealSet {
            ring: ring.clone(),
            members: Arc::new(codes),
            verified: true,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn len(&self) -> u64 {
        self.members.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_codes(&self) -> &[u64] {
        &self.members
    }

    pub fn members(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().map(move |&c| self.ring.elem(c))
    }

    pub fn contains(&self, x: Element) -> Result<bool> {
        Ok(self.contains_code(self.ring.check(x)?))
    }

    pub(crate) fn contains_code(&self, code: u64) -> bool {
        self.members.binary_search(&code).is_ok()
    }

    /// Every member nilpotent?
    pub fn is_nil(&self) -> bool {
        let inner = self.ring.inner();
        let zero = inner.zero_code();
        self.members.iter().all(|&x| {
            // Iterate powers; x is nilpotent iff the orbit reaches zero.
            let mut seen_guard = self.ring.cardinality() + 1;
            let mut p = x;
            loop {
                if p == zero {
                    return true;
                }
                if seen_guard == 0 {
                    return false;
                }
                seen_guard -= 1;
                p = inner.mul_code(p, x);
            }
        })
    }
}

fn verify_ideal(ring: &FiniteRing, codes: &[u64]) -> Result<()> {
    let inner = ring.inner();
    let card = ring.cardinality();
    let n = codes.len() as u64;
    let cost = n * n + 2 * n * card;
    if cost > 1_000_000_000 {
        return Err(RingError::CapExceeded {
            what: "ideal verification",
            limit: 1_000_000_000,
            attempted: cost,
        });
    }
    let mut mask = BitSet::new(card);
    for &c in codes {
        mask.set(c);
    }
    if !mask.get(inner.zero_code()) {
        return Err(RingError::NotIdeal("missing zero".into()));
    }
    for &x in codes {
        if !mask.get(inner.neg_code(x)) {
            return Err(RingError::NotIdeal(format!("not closed under negation at {x}")));
        }
        for &y in codes {
            if !mask.get(inner.add_code(x, y)) {
                return Err(RingError::NotIdeal(format!(
                    "not closed under addition at ({x},{y})"
                )));
            }
        }
        for r in 0..card {
            if !mask.get(inner.mul_code(r, x)) || !mask.get(inner.mul_code(x, r)) {
                return Err(RingError::NotIdeal(format!(
                    "not absorbing under multiplication at ({r},{x})"
                )));
            }
        }
    }
    Ok(())
}

/// Smallest two-sided ideal containing `gens`, by worklist closure under
/// addition, negation, and multiplication by every ring element.
pub fn ideal_closure(ring: &FiniteRing, gens: &[Element]) -> Result<IdealSet> {
    let inner = ring.inner();
    let card = ring.cardinality();
    let mut mask = BitSet::new(card);
    let mut members: Vec<u64> = Vec::new();
    let push = |mask: &mut BitSet, members: &mut Vec<u64>, c: u64| {
        if !mask.get(c) {
            mask.set(c);
            members.push(c);
        }
    };
    push(&mut mask, &mut members, inner.zero_code());
    for &g in gens {
        let c = ring.check(g)?;
        push(&mut mask, &mut members, c);
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        push(&mut mask, &mut members, inner.neg_code(x));
        for j in 0..=i {
            let sum = inner.add_code(x, members[j]);
            push(&mut mask, &mut members, sum);
        }
        for r in 0..card {
            push(&mut mask, &mut members, inner.mul_code(r, x));
            push(&mut mask, &mut members, inner.mul_code(x, r));
        }
        i += 1;
    }
    members.sort_unstable();
    Ok(IdealSet {
        ring: ring.clone(),
        members: Arc::new(members),
        verified: true,
    })
}

/// The projection map attached to a quotient ring.
pub struct Projection {
    source: FiniteRing,
    target: FiniteRing,
}

impl Projection {
    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    pub fn apply(&self, x: Element) -> Result<Element> {
        let c = self.source.check(x)?;
        match self.target.inner().repr() {
            crate::ring::Repr::Quot { coset, .. } => {
                Ok(self.target.elem(coset[c as usize] as u64))
            }
            _ => Err(RingError::ConsistencyViolation(
                "projection target is not a quotient".into(),
            )),
        }
    }
}

/// Quotient of `ring` by `ideal`, with a projection that is verified to be
/// a surjective homomorphism (exhaustively up to the axiom-check cap,
/// sampled above it).
pub fn quotient(ring: &FiniteRing, ideal: &IdealSet) -> Result<(FiniteRing, Projection)> {
    if ideal.ring() != ring {
        return Err(RingError::MixedRing);
    }
    if !ideal.verified {
        verify_ideal(ring, ideal.member_codes())?;
    }
    let gens_lit: Vec<crate::expr::ElemLit> = ideal
        .member_codes()
        .iter()
        .filter(|&&c| c != ring.inner().zero_code())
        .map(|&c| ring.render_code(c))
        .collect();
    let q = FiniteRing::build_quotient(ring, ideal.member_codes(), gens_lit)?;
    let proj = Projection {
        source: ring.clone(),
        target: q.clone(),
    };
    verify_projection(ring, &q)?;
    Ok((q, proj))
}

fn verify_projection(ring: &FiniteRing, q: &FiniteRing) -> Result<()> {
    let inner = ring.inner();
    let qi = q.inner();
    let coset = match qi.repr() {
        crate::ring::Repr::Quot { coset, .. } => coset,
        _ => unreachable!(),
    };
    let card = ring.cardinality();
    let caps = ring.caps();
    let check_pair = |a: u64, b: u64| -> Result<()> {
        let pa = coset[a as usize] as u64;
        let pb = coset[b as usize] as u64;
        if coset[inner.add_code(a, b) as usize] as u64 != qi.add_code(pa, pb) {
            return Err(RingError::ConsistencyViolation(format!(
                "projection does not respect + at ({a},{b})"
            )));
        }
        if coset[inner.mul_code(a, b) as usize] as u64 != qi.mul_code(pa, pb) {
            return Err(RingError::ConsistencyViolation(format!(
                "projection does not respect * at ({a},{b})"
            )));
        }
        Ok(())
    };
    if card <= caps.axiom_check_cap {
        for a in 0..card {
            for b in 0..card {
                check_pair(a, b)?;
            }
        }
    } else {
        let mut state = caps.seed ^ card.rotate_left(29);
        for _ in 0..caps.axiom_samples {
            check_pair(splitmix64(&mut state) % card, splitmix64(&mut state) % card)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{ElemLit, RingExpr};
    use crate::ring::build_ring;
    use crate::find_isomorphism;
    use alloc::boxed::Box;
    use alloc::vec;

    fn zn(n: u64) -> RingExpr {
        RingExpr::Zn { modulus: n }
    }

    #[test]
    fn closure_of_two_in_z6() {
        let r = build_ring(&zn(6)).unwrap();
        let two = r.element(2).unwrap();
        let ideal = ideal_closure(&r, &[two]).unwrap();
        assert_eq!(ideal.member_codes(), &[0, 2, 4]);
    }

    #[test]
    fn closure_of_a_matrix_unit_is_the_whole_simple_ring() {
        let r = build_ring(&RingExpr::Mat {
            size: 2,
            base: Box::new(zn(2)),
        })
        .unwrap();
        let e11 = r
            .resolve_literal(&ElemLit::List(vec![
                ElemLit::List(vec![ElemLit::Int(1), ElemLit::Int(0)]),
                ElemLit::List(vec![ElemLit::Int(0), ElemLit::Int(0)]),
            ]))
            .unwrap();
        let ideal = ideal_closure(&r, &[e11]).unwrap();
        assert_eq!(ideal.len(), 16);
    }

    #[test]
    fn closure_of_e12_in_upper_triangulars_is_tiny() {
        let r = build_ring(&RingExpr::UpperTri {
            size: 2,
            base: Box::new(zn(2)),
        })
        .unwrap();
        let e12 = r
            .resolve_literal(&ElemLit::List(vec![
                ElemLit::List(vec![ElemLit::Int(0), ElemLit::Int(1)]),
                ElemLit::List(vec![ElemLit::Int(0), ElemLit::Int(0)]),
            ]))
            .unwrap();
        let ideal = ideal_closure(&r, &[e12]).unwrap();
        assert_eq!(ideal.len(), 2);
        assert!(ideal.contains(e12).unwrap());
    }

    #[test]
    fn quotient_z6_by_evens_is_z2() {
        let r = build_ring(&zn(6)).unwrap();
        let ideal = ideal_closure(&r, &[r.element(2).unwrap()]).unwrap();
        let (q, proj) = quotient(&r, &ideal).unwrap();
        assert_eq!(q.cardinality(), 2);
        let z2 = build_ring(&zn(2)).unwrap();
        assert!(find_isomorphism(&q, &z2).is_some());
        // The projection respects the operations.
        let x = r.element(3).unwrap();
        let y = r.element(5).unwrap();
        let lhs = proj.apply(r.mul(x, y).unwrap()).unwrap();
        let rhs = q
            .mul(proj.apply(x).unwrap(), proj.apply(y).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_by_zero_is_the_same_ring() {
        let r = build_ring(&zn(6)).unwrap();
        let ideal = ideal_closure(&r, &[]).unwrap();
        let (q, _) = quotient(&r, &ideal).unwrap();
        assert_eq!(q.cardinality(), 6);
        assert!(find_isomorphism(&q, &r).is_some());
    }

    #[test]
    fn quotient_of_mat2_z4_by_radical_is_mat2_f2() {
        let r = build_ring(&RingExpr::Mat {
            size: 2,
            base: Box::new(zn(4)),
        })
        .unwrap();
        let rad = r.jacobson_radical();
        let (q, _) = quotient(&r, &rad).unwrap();
        assert_eq!(q.cardinality(), 16);
        let m2f2 = build_ring(&RingExpr::Mat {
            size: 2,
            base: Box::new(zn(2)),
        })
        .unwrap();
        assert!(find_isomorphism(&q, &m2f2).is_some());
    }

    #[test]
    fn non_ideal_is_rejected() {
        let r = build_ring(&zn(6)).unwrap();
        let err = IdealSet::new(&r, &[r.element(0).unwrap(), r.element(1).unwrap()]).unwrap_err();
        assert!(matches!(err, RingError::NotIdeal(_)));
    }

    #[test]
    fn nil_ideal_detection() {
        let r = build_ring(&zn(4)).unwrap();
        let ideal = ideal_closure(&r, &[r.element(2).unwrap()]).unwrap();
        assert!(ideal.is_nil());
        let r6 = build_ring(&zn(6)).unwrap();
        let ideal6 = ideal_closure(&r6, &[r6.element(2).unwrap()]).unwrap();
        assert!(!ideal6.is_nil());
    }
}
