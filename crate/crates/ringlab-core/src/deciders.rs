//! Decision procedures for the two unit-commutator properties of a ring:
//! "property K" (some idempotent pair has an invertible commutator) and
//! "property K-bar" (invertible anti-commutator), by exhaustive witness
//! search, by unit-based characterizations, and by the even/odd
//! classification of matrix rings over local or commutative bases.
//!
//! Scans run over idempotent pairs in lexicographic code order, so the
//! reported witness is the least one regardless of how a sweep is
//! partitioned; range scans merge by taking the earliest hit.

use alloc::format;
use alloc::vec::Vec;

use crate::error::RingError;
use crate::expr::RingExpr;
use crate::ring::{decode_digits, Element, FiniteRing, MAX_CELLS};
use crate::Result;

/// Which of the two properties is being decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingProperty {
    /// Invertible commutator of idempotents.
    K,
    /// Invertible anti-commutator of idempotents.
    KBar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionMethod {
    /// Exhaustive sweep testing the commutator / anti-commutator directly.
    Brute,
    /// Sweep for the equivalent unit conditions (`v = e - e'` with
    /// `1 +/- v` units for K; `u = e + e'` with `1 - u` a unit for K-bar).
    UnitSearch,
    /// Even/odd classification for matrix rings over local or commutative
    /// bases.
    Theorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub idempotent_count: u64,
    pub pairs_examined: u64,
    /// Filled in by front ends that time the search; never part of the
    /// deterministic payload.
    pub elapsed_ms: Option<u64>,
}

/// A decision, with the least witness (by element code, lexicographically)
/// when the property holds and a searching method was used.
#[derive(Debug, Clone)]
pub struct PropertyVerdict {
    pub property: RingProperty,
    pub ring_expr: RingExpr,
    pub holds: bool,
    pub witness: Option<(Element, Element)>,
    pub method: DecisionMethod,
    pub stats: SearchStats,
}

/// Result of scanning one pair-index range: the earliest hit and the number
/// of pairs examined. Disjoint ranges merge deterministically by keeping
/// the hit with the smallest pair index; `found_at + 1` then reproduces the
/// pair count a single-threaded scan would report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RangeScan {
    /// Codes (not indices) of the witness pair, if the range contains one.
    pub found: Option<(u64, u64)>,
    /// Global pair index of the hit.
    pub found_at: Option<u64>,
    pub pairs_examined: u64,
}

#[derive(Clone, Copy)]
enum PairTest {
    Commutator,
    AntiCommutator,
    /// `e - e'` a unit with `1 + (e-e')` and `1 - (e-e')` units.
    DifferenceShifts,
    /// `e + e'` a unit with `1 - (e+e')` a unit.
    SumShift,
}

fn pair_test(property: RingProperty, method: DecisionMethod) -> Result<PairTest> {
    match (property, method) {
        (RingProperty::K, DecisionMethod::Brute) => Ok(PairTest::Commutator),
        (RingProperty::KBar, DecisionMethod::Brute) => Ok(PairTest::AntiCommutator),
        (RingProperty::K, DecisionMethod::UnitSearch) => Ok(PairTest::DifferenceShifts),
        (RingProperty::KBar, DecisionMethod::UnitSearch) => Ok(PairTest::SumShift),
        (_, DecisionMethod::Theorem) => Err(RingError::InvalidExpr(
            "the classification method is not a pair scan".into(),
        )),
    }
}

/// Scans pair indices `[lo, hi)` (pair `p` is `(idem[p / m], idem[p % m])`
/// over the sorted idempotent list). Stops at the first hit in the range.
pub fn scan_property_range(
    ring: &FiniteRing,
    property: RingProperty,
    method: DecisionMethod,
    lo: u64,
    hi: u64,
) -> Result<RangeScan> {
    let test = pair_test(property, method)?;
    Ok(scan_range_impl(ring, test, lo, hi, false))
}

fn scan_range_impl(
    ring: &FiniteRing,
    test: PairTest,
    lo: u64,
    hi: u64,
    force_generic: bool,
) -> RangeScan {
    let idems = ring.idempotent_codes();
    let m = idems.len() as u64;
    let hi = hi.min(m * m);
    if lo >= hi {
        return RangeScan {
            found: None,
            found_at: None,
            pairs_examined: 0,
        };
    }
    if !force_generic {
        if let Some(sweep) = DigitSweep::for_ring(ring) {
            return sweep.scan(ring, test, lo, hi);
        }
    }
    let inner = ring.inner();
    let one = inner.one_code();
    let mut p = lo;
    while p < hi {
        let i = (p / m) as usize;
        let j = (p % m) as usize;
        let (e, ep) = (idems[i], idems[j]);
        let hit = match test {
            PairTest::Commutator => inner.is_unit_code(
                inner.sub_code(inner.mul_code(e, ep), inner.mul_code(ep, e)),
            ),
            PairTest::AntiCommutator => inner.is_unit_code(
                inner.add_code(inner.mul_code(e, ep), inner.mul_code(ep, e)),
            ),
            PairTest::DifferenceShifts => {
                let v = inner.sub_code(e, ep);
                inner.is_unit_code(v)
                    && inner.is_unit_code(inner.add_code(one, v))
                    && inner.is_unit_code(inner.sub_code(one, v))
            }
            PairTest::SumShift => {
                let u = inner.add_code(e, ep);
                inner.is_unit_code(u) && inner.is_unit_code(inner.sub_code(one, u))
            }
        };
        if hit {
            return RangeScan {
                found: Some((e, ep)),
                found_at: Some(p),
                pairs_examined: p - lo + 1,
            };
        }
        p += 1;
    }
    RangeScan {
        found: None,
        found_at: None,
        pairs_examined: hi - lo,
    }
}

/// Pre-decoded digit tables for matrix and triangular rings over a small
/// base with cached Cayley tables. Cuts the per-pair cost of big sweeps by
/// an order of magnitude over generic code arithmetic.
struct DigitSweep<'a> {
    dim: usize,
    bc: usize,
    add: &'a [u16],
    mul: &'a [u16],
    neg: &'a [u16],
    bzero: u16,
    /// Full `dim x dim` digit strings, one per idempotent.
    idem_digits: Vec<u16>,
    /// Full digit string of the identity.
    one_digits: Vec<u16>,
    /// Positions of encoded cells within the full digit string (all of them
    /// for matrix rings, the upper triangle for triangular rings).
    coded_cells: Vec<usize>,
    radix: u64,
}

impl<'a> DigitSweep<'a> {
    fn for_ring(ring: &'a FiniteRing) -> Option<DigitSweep<'a>> {
        let (dim, base, cells): (usize, &FiniteRing, Vec<usize>) = match ring.inner().repr() {
            crate::ring::Repr::Mat { dim, base } => {
                (*dim, base, (0..dim * dim).collect())
            }
            crate::ring::Repr::UpperTri { dim, base, cells } => (
                *dim,
                base,
                cells.iter().map(|&(r, c)| r * dim + c).collect(),
            ),
            _ => return None,
        };
        let (add, mul, neg) = base.inner().op_tables()?;
        let bc = base.cardinality() as usize;
        let bzero = base.inner().zero_code() as u16;
        let expand = |code: u64| -> Vec<u16> {
            let mut packed = [0u64; MAX_CELLS];
            decode_digits(code, bc as u64, &mut packed[..cells.len()]);
            let mut full = alloc::vec![bzero; dim * dim];
            for (i, &pos) in cells.iter().enumerate() {
                full[pos] = packed[i] as u16;
            }
            full
        };
        let mut idem_digits = Vec::with_capacity(ring.idempotent_codes().len() * dim * dim);
        for &e in ring.idempotent_codes() {
            idem_digits.extend_from_slice(&expand(e));
        }
        let one_digits = expand(ring.inner().one_code());
        Some(DigitSweep {
            dim,
            bc,
            add,
            mul,
            neg,
            bzero,
            idem_digits,
            one_digits,
            coded_cells: cells,
            radix: bc as u64,
        })
    }

    #[inline]
    fn encode(&self, full: &[u16]) -> u64 {
        let mut code = 0u64;
        for &pos in self.coded_cells.iter().rev() {
            code = code * self.radix + full[pos] as u64;
        }
        code
    }

    fn scan(&self, ring: &FiniteRing, test: PairTest, lo: u64, hi: u64) -> RangeScan {
        let idems = ring.idempotent_codes();
        let m = idems.len() as u64;
        let mask = ring.inner().unit_mask();
        let (dim, bc) = (self.dim, self.bc);
        let n = dim * dim;
        let mut buf = [0u16; MAX_CELLS];
        let mut buf2 = [0u16; MAX_CELLS];
        let mut p = lo;
        while p < hi {
            let i = (p / m) as usize;
            let j = (p % m) as usize;
            let ei = &self.idem_digits[i * n..i * n + n];
            let ej = &self.idem_digits[j * n..j * n + n];
            let hit = match test {
                PairTest::Commutator | PairTest::AntiCommutator => {
                    let anti = matches!(test, PairTest::AntiCommutator);
                    for r in 0..dim {
                        for c in 0..dim {
                            let mut acc1 = self.bzero as usize;
                            let mut acc2 = self.bzero as usize;
                            for k in 0..dim {
                                acc1 = self.add[acc1 * bc
                                    + self.mul[ei[r * dim + k] as usize * bc
                                        + ej[k * dim + c] as usize]
                                        as usize] as usize;
                                acc2 = self.add[acc2 * bc
                                    + self.mul[ej[r * dim + k] as usize * bc
                                        + ei[k * dim + c] as usize]
                                        as usize] as usize;
                            }
                            buf[r * dim + c] = if anti {
                                self.add[acc1 * bc + acc2]
                            } else {
                                self.add[acc1 * bc + self.neg[acc2] as usize]
                            };
                        }
                    }
                    mask.get(self.encode(&buf))
                }
                PairTest::DifferenceShifts => {
                    for t in 0..n {
                        buf[t] = self.add
                            [ei[t] as usize * bc + self.neg[ej[t] as usize] as usize];
                    }
                    mask.get(self.encode(&buf)) && {
                        for t in 0..n {
                            buf2[t] = self.add
                                [self.one_digits[t] as usize * bc + buf[t] as usize];
                        }
                        mask.get(self.encode(&buf2))
                    } && {
                        for t in 0..n {
                            buf2[t] = self.add[self.one_digits[t] as usize * bc
                                + self.neg[buf[t] as usize] as usize];
                        }
                        mask.get(self.encode(&buf2))
                    }
                }
                PairTest::SumShift => {
                    for t in 0..n {
                        buf[t] = self.add[ei[t] as usize * bc + ej[t] as usize];
                    }
                    mask.get(self.encode(&buf)) && {
                        for t in 0..n {
                            buf2[t] = self.add[self.one_digits[t] as usize * bc
                                + self.neg[buf[t] as usize] as usize];
                        }
                        mask.get(self.encode(&buf2))
                    }
                }
            };
            if hit {
                return RangeScan {
                    found: Some((idems[i], idems[j])),
                    found_at: Some(p),
                    pairs_examined: p - lo + 1,
                };
            }
            p += 1;
        }
        RangeScan {
            found: None,
            found_at: None,
            pairs_examined: hi - lo,
        }
    }
}

fn decide(
    ring: &FiniteRing,
    property: RingProperty,
    method: DecisionMethod,
) -> Result<PropertyVerdict> {
    let m = ring.idempotent_codes().len() as u64;
    let budget = ring.caps().pair_budget;
    if m * m > budget {
        return Err(RingError::CapExceeded {
            what: "idempotent pair sweep",
            limit: budget,
            attempted: m * m,
        });
    }
    let test = pair_test(property, method)?;
    let scan = scan_range_impl(ring, test, 0, m * m, false);
    let witness = scan.found.map(|(e, ep)| (ring.elem(e), ring.elem(ep)));
    if let Some((e, ep)) = witness {
        verify_witness(ring, property, method, e, ep)?;
    }
    Ok(PropertyVerdict {
        property,
        ring_expr: ring.expr().clone(),
        holds: witness.is_some(),
        witness,
        method,
        stats: SearchStats {
            idempotent_count: m,
            pairs_examined: scan.pairs_examined,
            elapsed_ms: None,
        },
    })
}

fn verify_witness(
    ring: &FiniteRing,
    property: RingProperty,
    method: DecisionMethod,
    e: Element,
    ep: Element,
) -> Result<()> {
    let inner = ring.inner();
    let (a, b) = (e.code(), ep.code());
    if inner.mul_code(a, a) != a || inner.mul_code(b, b) != b {
        return Err(RingError::ConsistencyViolation(
            "witness elements are not idempotent".into(),
        ));
    }
    let ok = match (property, method) {
        (RingProperty::K, DecisionMethod::Brute) => inner.is_unit_code(
            inner.sub_code(inner.mul_code(a, b), inner.mul_code(b, a)),
        ),
        (RingProperty::KBar, DecisionMethod::Brute) => inner.is_unit_code(
            inner.add_code(inner.mul_code(a, b), inner.mul_code(b, a)),
        ),
        (RingProperty::K, DecisionMethod::UnitSearch) => {
            let v = inner.sub_code(a, b);
            let one = inner.one_code();
            inner.is_unit_code(v)
                && inner.is_unit_code(inner.add_code(one, v))
                && inner.is_unit_code(inner.sub_code(one, v))
        }
        (RingProperty::KBar, DecisionMethod::UnitSearch) => {
            let u = inner.add_code(a, b);
            inner.is_unit_code(u) && inner.is_unit_code(inner.sub_code(inner.one_code(), u))
        }
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(RingError::ConsistencyViolation(
            "witness failed re-verification".into(),
        ))
    }
}

/// Exhaustive decision of property K, least witness first.
pub fn has_property_k(ring: &FiniteRing) -> Result<PropertyVerdict> {
    decide(ring, RingProperty::K, DecisionMethod::Brute)
}

/// Exhaustive decision of property K-bar, least witness first.
pub fn has_property_kbar(ring: &FiniteRing) -> Result<PropertyVerdict> {
    decide(ring, RingProperty::KBar, DecisionMethod::Brute)
}

/// Property K via its unit characterization: a unit `v = e - e'` of
/// idempotents with `1 + v` and `1 - v` both units.
pub fn property_k_via_units(ring: &FiniteRing) -> Result<PropertyVerdict> {
    decide(ring, RingProperty::K, DecisionMethod::UnitSearch)
}

/// Property K-bar via its unit characterization: a unit `u = e + e'` of
/// idempotents with `1 - u` a unit.
pub fn property_kbar_via_units(ring: &FiniteRing) -> Result<PropertyVerdict> {
    decide(ring, RingProperty::KBar, DecisionMethod::UnitSearch)
}

/// Least pair of units summing to one, scanning unit codes in order.
pub fn one_sum_two_units(ring: &FiniteRing) -> Option<(Element, Element)> {
    let inner = ring.inner();
    let one = inner.one_code();
    for &a in ring.unit_codes() {
        let b = inner.sub_code(one, a);
        if inner.is_unit_code(b) {
            return Some((ring.elem(a), ring.elem(b)));
        }
    }
    None
}

/// Predicted verdicts `(K, K-bar)` for the `n x n` matrix ring over a local
/// or nonzero commutative base: K holds for even `n >= 4`, or `n = 2` with
/// 1 a sum of two units in the base; K-bar additionally holds for odd `n`
/// when 2 is a unit. The zero base ring yields the zero matrix ring, which
/// has both properties.
pub fn classify_matrix_ring(
    n: usize,
    base: &FiniteRing,
) -> Result<(PropertyVerdict, PropertyVerdict)> {
    if n == 0 {
        return Err(RingError::InvalidExpr("M(0, _) has no identity".into()));
    }
    let expr = RingExpr::Mat {
        size: n,
        base: alloc::boxed::Box::new(base.expr().clone()),
    };
    let verdict = |property, holds| PropertyVerdict {
        property,
        ring_expr: expr.clone(),
        holds,
        witness: None,
        method: DecisionMethod::Theorem,
        stats: SearchStats::default(),
    };
    if base.cardinality() == 1 {
        return Ok((
            verdict(RingProperty::K, true),
            verdict(RingProperty::KBar, true),
        ));
    }
    if !base.is_local() && !base.is_commutative() {
        return Err(RingError::NotApplicable(
            "classification covers local and commutative bases only; for other bases \
             the odd/even exclusion can fail"
                .into(),
        ));
    }
    let one_is_two_units = one_sum_two_units(base).is_some();
    let k = (n >= 4 && n.is_multiple_of(2)) || (n == 2 && one_is_two_units);
    let two_is_unit = base
        .is_unit(base.scalar(2))
        .expect("scalar lives in the base");
    let kbar = k || (n % 2 == 1 && two_is_unit);
    Ok((
        verdict(RingProperty::K, k),
        verdict(RingProperty::KBar, kbar),
    ))
}

/// `det(A+B) + det(A-B) = 2 [det(A) + det(B)]` for 2x2 matrices over a
/// commutative base. Always true; evaluated exactly.
pub fn det_sum_identity_check(ring: &FiniteRing, a: Element, b: Element) -> Result<bool> {
    let (dim, base) = ring
        .matrix_shape()
        .ok_or_else(|| RingError::InvalidExpr("expected a matrix ring".into()))?;
    if dim != 2 {
        return Err(RingError::UnsupportedDimension(dim));
    }
    let lhs = base.add(
        ring.det(ring.add(a, b)?)?,
        ring.det(ring.sub(a, b)?)?,
    )?;
    let sums = base.add(ring.det(a)?, ring.det(b)?)?;
    let rhs = base.add(sums, sums)?;
    Ok(lhs == rhs)
}

/// For a 2x2 matrix ring over a commutative base and an idempotent pair
/// with invertible commutator: `tr(ee')` and `1 - tr(ee')` are both units
/// of the base (their sum is 1).
pub fn trace_criterion_check(ring: &FiniteRing, e: Element, ep: Element) -> Result<bool> {
    let (dim, base) = ring
        .matrix_shape()
        .ok_or_else(|| RingError::InvalidExpr("expected a matrix ring".into()))?;
    if dim != 2 {
        return Err(RingError::UnsupportedDimension(dim));
    }
    if !ring.is_idempotent(e)? || !ring.is_idempotent(ep)? {
        return Err(RingError::NotIdempotent);
    }
    let comm = crate::idem::commutator(ring, e, ep)?;
    if !ring.is_unit(comm)? {
        return Err(RingError::NotAKWitness);
    }
    let t = ring.trace(ring.mul(e, ep)?)?;
    let complement = base.sub(base.one(), t)?;
    Ok(base.is_unit(t)? && base.is_unit(complement)?)
}

/// The four equivalent conditions for the 2x2 matrix ring over a finite
/// commutative base to have property K: 1 is a sum of two units in the
/// base; some idempotent has an invertible commutator (resp.
/// anti-commutator) with a diagonalizable matrix; and the base has no
/// ideal of index 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixTwoCriteria {
    pub one_is_two_units: bool,
    pub commutator_with_diagonalizable: bool,
    pub anti_commutator_with_diagonalizable: bool,
    pub no_index_two_ideal: bool,
}

impl MatrixTwoCriteria {
    pub fn all_agree(&self) -> bool {
        self.one_is_two_units == self.commutator_with_diagonalizable
            && self.one_is_two_units == self.anti_commutator_with_diagonalizable
            && self.one_is_two_units == self.no_index_two_ideal
    }
}

pub fn m2_criteria(base: &FiniteRing) -> Result<MatrixTwoCriteria> {
    if !base.is_commutative() {
        return Err(RingError::NotApplicable(
            "the four-way equivalence is stated over commutative bases".into(),
        ));
    }
    let one_is_two_units = one_sum_two_units(base).is_some();

    let ring = base.matrix_ring_over(2)?;
    let inner = ring.inner();
    let bc = base.cardinality();
    // Diagonalizable matrices: unit conjugates of diagonals.
    let mut diag_set: Vec<u64> = Vec::new();
    {
        let mut seen = crate::ring::BitSet::new(ring.cardinality());
        for &u in ring.unit_codes() {
            let u_inv = inner.inverse_code(u).expect("unit");
            for s in 0..bc {
                for t in 0..bc {
                    let d = crate::ring::encode_digits(&[s, 0, 0, t], bc);
                    let conj = inner.mul_code(inner.mul_code(u, d), u_inv);
                    if !seen.get(conj) {
                        seen.set(conj);
                        diag_set.push(conj);
                    }
                }
            }
        }
        diag_set.sort_unstable();
    }
    let mut comm_found = false;
    let mut anti_found = false;
    'outer: for &e in ring.idempotent_codes() {
        for &d in &diag_set {
            let ed = inner.mul_code(e, d);
            let de = inner.mul_code(d, e);
            if !comm_found && inner.is_unit_code(inner.sub_code(ed, de)) {
                comm_found = true;
            }
            if !anti_found && inner.is_unit_code(inner.add_code(ed, de)) {
                anti_found = true;
            }
            if comm_found && anti_found {
                break 'outer;
            }
        }
    }

    let no_index_two_ideal = !has_index_two_ideal(base)?;
    Ok(MatrixTwoCriteria {
        one_is_two_units,
        commutator_with_diagonalizable: comm_found,
        anti_commutator_with_diagonalizable: anti_found,
        no_index_two_ideal,
    })
}

/// Enumerates ideal closures of all generator subsets of size at most 2
/// and looks for one of index 2. Exact for the principal-ideal bases the
/// workbench constructs; capped at base cardinality 64.
fn has_index_two_ideal(base: &FiniteRing) -> Result<bool> {
    let card = base.cardinality();
    if card > 64 {
        return Err(RingError::CapExceeded {
            what: "ideal lattice enumeration",
            limit: 64,
            attempted: card,
        });
    }
    let target = card / 2;
    if !card.is_multiple_of(2) {
        return Ok(false);
    }
    for a in 0..card {
        let ea = base.elem(a);
        let closure = crate::ideal::ideal_closure(base, &[ea])?;
        if closure.len() == target {
            return Ok(true);
        }
        for b in a + 1..card {
            let eb = base.elem(b);
            let closure = crate::ideal::ideal_closure(base, &[ea, eb])?;
            if closure.len() == target {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Over a commutative base, the 2x2 matrix ring has property K exactly when
/// it has property K-bar; decided by brute force on both sides.
pub fn k_iff_kbar_check(base: &FiniteRing) -> Result<bool> {
    let ring = base.matrix_ring_over(2)?;
    let k = has_property_k(&ring)?;
    let kbar = has_property_kbar(&ring)?;
    Ok(k.holds == kbar.holds)
}

/// Property transfer across a quotient by a nil ideal (or an ideal inside
/// the radical with verified idempotent lifting): both properties must
/// agree between the ring and its quotient.
#[derive(Debug, Clone)]
pub struct QuotientTransfer {
    pub nil_ideal: bool,
    pub inside_radical: bool,
    pub idempotents_lift: bool,
    pub source_k: PropertyVerdict,
    pub quotient_k: PropertyVerdict,
    pub source_kbar: PropertyVerdict,
    pub quotient_kbar: PropertyVerdict,
}

impl QuotientTransfer {
    pub fn k_agrees(&self) -> bool {
        self.source_k.holds == self.quotient_k.holds
    }

    pub fn kbar_agrees(&self) -> bool {
        self.source_kbar.holds == self.quotient_kbar.holds
    }

    pub fn agrees(&self) -> bool {
        self.k_agrees() && self.kbar_agrees()
    }
}

pub fn quotient_transfer_check(
    ring: &FiniteRing,
    ideal: &crate::ideal::IdealSet,
) -> Result<QuotientTransfer> {
    let nil_ideal = ideal.is_nil();
    let rad = ring.jacobson_radical();
    let inside_radical = ideal.member_codes().iter().all(|&j| rad.contains_code(j));
    let (q, proj) = ring.quotient(ideal)?;
    let mut lifted = crate::ring::BitSet::new(q.cardinality());
    for e in ring.idempotents() {
        lifted.set(proj.apply(e)?.code());
    }
    let idempotents_lift = q.idempotent_codes().iter().all(|&e| lifted.get(e));
    if !nil_ideal && !(inside_radical && idempotents_lift) {
        return Err(RingError::NotApplicable(format!(
            "ideal of {} is neither nil nor inside the radical with idempotent lifting",
            ring
        )));
    }
    Ok(QuotientTransfer {
        nil_ideal,
        inside_radical,
        idempotents_lift,
        source_k: has_property_k(ring)?,
        quotient_k: has_property_k(&q)?,
        source_kbar: has_property_kbar(ring)?,
        quotient_kbar: has_property_kbar(&q)?,
    })
}

#[cfg(test)]
pub(crate) fn scan_generic_for_tests(
    ring: &FiniteRing,
    property: RingProperty,
    method: DecisionMethod,
    lo: u64,
    hi: u64,
) -> RangeScan {
    let test = pair_test(property, method).unwrap();
    scan_range_impl(ring, test, lo, hi, true)
}
