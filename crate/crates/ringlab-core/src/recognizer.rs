//! Constructive recognition of 2x2 matrix rings.
//!
//! A witness is a small tuple of elements satisfying one of the equivalent
//! characterizations of "R is a 2x2 matrix ring" (anti-commutator and
//! commutator forms over square-zero elements, units, completable
//! idempotents, completable involutions). Witnesses are transformed along
//! the fixed implication graph
//!
//! ```text
//!   B -> C -> H -> D -> {E, G},  E -> D,  G -> F,
//!   I -> C,  J -> K -> G,  IDEM -> H
//! ```
//!
//! each edge being one constructive step; an F-witness (`p^2 = 0`,
//! `pr + rp = 1`) then yields explicit matrix units and a verified
//! isomorphism `R = M2(E11 R E11)`. Every constructed object re-verifies
//! its defining equations exactly; failures signal arithmetic bugs, not
//! mathematical possibilities.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::RingError;
use crate::idem::{anti_commutator, commutator};
use crate::matrix::{int_adjugate_inverse, int_det, RingMatrix};
use crate::ring::{Element, FiniteRing};
use crate::Result;

/// The witness kinds. Letters B through K name the square-zero /
/// unit-based clauses; `Idem` is a completable idempotent (`e^2 = e`,
/// `[e, r]` a unit); `Invol` is a completable involution (`u^2 = 1`,
/// `[u, r]` a unit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    /// `p^2 = q^2 = 0`, `pq + qp = 1`.
    B,
    /// `p^2 = q^2 = 0`, `pq + qp` a unit.
    C,
    /// `p^2 = 0`, `v` a unit, `pv + vp = 1`.
    D,
    /// `p^2 = 0`, `v` a unit, `pv + vp` a unit.
    E,
    /// `p^2 = 0`, `pr + rp = 1`.
    F,
    /// `p^2 = 0`, `pr + rp` a unit.
    G,
    /// `p^2 = q^2 = 0`, `p + q` a unit.
    H,
    /// `p^2 = q^2 = 0`, `pq - qp` a unit.
    I,
    /// `p^2 = 0`, `v` a unit, `pv - vp` a unit.
    J,
    /// `p^2 = 0`, `pr - rp` a unit.
    K,
    /// `e^2 = e`, `er - re` a unit.
    Idem,
    /// `u^2 = 1`, `ur - ru` a unit.
    Invol,
}

impl WitnessKind {
    pub fn name(&self) -> &'static str {
        match self {
            WitnessKind::B => "B",
            WitnessKind::C => "C",
            WitnessKind::D => "D",
            WitnessKind::E => "E",
            WitnessKind::F => "F",
            WitnessKind::G => "G",
            WitnessKind::H => "H",
            WitnessKind::I => "I",
            WitnessKind::J => "J",
            WitnessKind::K => "K",
            WitnessKind::Idem => "IDEM",
            WitnessKind::Invol => "INVOL",
        }
    }

    pub fn parse(s: &str) -> Option<WitnessKind> {
        match s.to_ascii_uppercase().as_str() {
            "B" => Some(WitnessKind::B),
            "C" => Some(WitnessKind::C),
            "D" => Some(WitnessKind::D),
            "E" => Some(WitnessKind::E),
            "F" => Some(WitnessKind::F),
            "G" => Some(WitnessKind::G),
            "H" => Some(WitnessKind::H),
            "I" => Some(WitnessKind::I),
            "J" => Some(WitnessKind::J),
            "K" => Some(WitnessKind::K),
            "IDEM" => Some(WitnessKind::Idem),
            "INVOL" => Some(WitnessKind::Invol),
            _ => None,
        }
    }
}

/// A verified witness: the clause equations hold exactly at construction.
#[derive(Debug, Clone)]
pub struct Witness {
    pub kind: WitnessKind,
    pub elements: Vec<Element>,
    /// Set when a transformation flipped a sign to normalize an
    /// anti-commutator from -1 to +1.
    pub sign_normalized: bool,
}

impl Witness {
    /// Validates the clause equations for `kind` on `elements` and wraps
    /// them. Element counts: two for every kind.
    pub fn new(ring: &FiniteRing, kind: WitnessKind, elements: Vec<Element>) -> Result<Witness> {
        if elements.len() != 2 {
            return Err(RingError::VerificationFailed(format!(
                "witness kind {} takes two elements",
                kind.name()
            )));
        }
        let (x, y) = (elements[0], elements[1]);
        let zero = ring.zero();
        let one = ring.one();
        let sq = |a: Element| ring.mul(a, a);
        let ok = match kind {
            WitnessKind::B => {
                sq(x)? == zero && sq(y)? == zero && anti_commutator(ring, x, y)? == one
            }
            WitnessKind::C => {
                sq(x)? == zero
                    && sq(y)? == zero
                    && ring.is_unit(anti_commutator(ring, x, y)?)?
            }
            WitnessKind::D => {
                sq(x)? == zero && ring.is_unit(y)? && anti_commutator(ring, x, y)? == one
            }
            WitnessKind::E => {
                sq(x)? == zero
                    && ring.is_unit(y)?
                    && ring.is_unit(anti_commutator(ring, x, y)?)?
            }
            WitnessKind::F => sq(x)? == zero && anti_commutator(ring, x, y)? == one,
            WitnessKind::G => {
                sq(x)? == zero && ring.is_unit(anti_commutator(ring, x, y)?)?
            }
            WitnessKind::H => {
                sq(x)? == zero && sq(y)? == zero && ring.is_unit(ring.add(x, y)?)?
            }
            WitnessKind::I => {
                sq(x)? == zero && sq(y)? == zero && ring.is_unit(commutator(ring, x, y)?)?
            }
            WitnessKind::J => {
                sq(x)? == zero && ring.is_unit(y)? && ring.is_unit(commutator(ring, x, y)?)?
            }
            WitnessKind::K => sq(x)? == zero && ring.is_unit(commutator(ring, x, y)?)?,
            WitnessKind::Idem => {
                ring.is_idempotent(x)? && ring.is_unit(commutator(ring, x, y)?)?
            }
            WitnessKind::Invol => {
                sq(x)? == one && ring.is_unit(commutator(ring, x, y)?)?
            }
        };
        if !ok {
            return Err(RingError::VerificationFailed(format!(
                "elements do not satisfy the {} clause",
                kind.name()
            )));
        }
        Ok(Witness {
            kind,
            elements,
            sign_normalized: false,
        })
    }
}

fn successors(kind: WitnessKind) -> &'static [WitnessKind] {
    match kind {
        WitnessKind::B => &[WitnessKind::C],
        WitnessKind::C => &[WitnessKind::H],
        WitnessKind::H => &[WitnessKind::D],
        WitnessKind::D => &[WitnessKind::E, WitnessKind::G],
        WitnessKind::E => &[WitnessKind::D],
        WitnessKind::G => &[WitnessKind::F],
        WitnessKind::F => &[],
        WitnessKind::I => &[WitnessKind::C],
        WitnessKind::J => &[WitnessKind::K],
        WitnessKind::K => &[WitnessKind::G],
        WitnessKind::Idem => &[WitnessKind::H],
        WitnessKind::Invol => &[],
    }
}

/// One edge of the implication graph, applied constructively.
fn step(ring: &FiniteRing, w: &Witness, target: WitnessKind) -> Result<Witness> {
    let (x, y) = (w.elements[0], w.elements[1]);
    let mut normalized = w.sign_normalized;
    let out = match (w.kind, target) {
        // Tautological reinterpretations.
        (WitnessKind::B, WitnessKind::C)
        | (WitnessKind::D, WitnessKind::E)
        | (WitnessKind::D, WitnessKind::G)
        | (WitnessKind::J, WitnessKind::K) => vec![x, y],
        // (p + q)^2 = pq + qp is a unit, so p + q is a unit.
        (WitnessKind::C, WitnessKind::H) => vec![x, y],
        // v := (p + q)^{-1} anti-commutes to 1 with p.
        (WitnessKind::H, WitnessKind::D) => {
            let u = ring.add(x, y)?;
            let v = ring
                .inverse(u)?
                .ok_or_else(|| RingError::VerificationFailed("p + q is not a unit".into()))?;
            vec![x, v]
        }
        // w := pv + vp commutes with p; replace v by w^{-1} v.
        (WitnessKind::E, WitnessKind::D) => {
            let wu = anti_commutator(ring, x, y)?;
            let wi = ring
                .inverse(wu)?
                .ok_or_else(|| RingError::VerificationFailed("pv + vp is not a unit".into()))?;
            vec![x, ring.mul(wi, y)?]
        }
        // Same normalization with an arbitrary r.
        (WitnessKind::G, WitnessKind::F) => {
            let wu = anti_commutator(ring, x, y)?;
            let wi = ring
                .inverse(wu)?
                .ok_or_else(|| RingError::VerificationFailed("pr + rp is not a unit".into()))?;
            vec![x, ring.mul(wi, y)?]
        }
        // w := pq - qp anti-commutes with p and q; q' := -(w^{-1} q) has
        // square zero and pq' + q'p = 1 (the sign is flipped to turn the
        // natural -1 into +1).
        (WitnessKind::I, WitnessKind::C) => {
            let wu = commutator(ring, x, y)?;
            let wi = ring
                .inverse(wu)?
                .ok_or_else(|| RingError::VerificationFailed("pq - qp is not a unit".into()))?;
            let q = ring.neg(ring.mul(wi, y)?)?;
            normalized = true;
            vec![x, q]
        }
        // w := pr - rp anti-commutes with p: pr' + r'p = -1 for r' = w^{-1} r.
        (WitnessKind::K, WitnessKind::G) => {
            let wu = commutator(ring, x, y)?;
            let wi = ring
                .inverse(wu)?
                .ok_or_else(|| RingError::VerificationFailed("pr - rp is not a unit".into()))?;
            vec![x, ring.mul(wi, y)?]
        }
        // er - re = er(1-e) - (1-e)re splits into two square-zero parts
        // whose sum is the invertible commutator.
        (WitnessKind::Idem, WitnessKind::H) => {
            let f = ring.sub(ring.one(), x)?;
            let p = ring.mul(ring.mul(x, y)?, f)?;
            let q = ring.neg(ring.mul(ring.mul(f, y)?, x)?)?;
            let comm = commutator(ring, x, y)?;
            if ring.add(p, q)? != comm {
                return Err(RingError::VerificationFailed(
                    "square-zero split does not reassemble the commutator".into(),
                ));
            }
            vec![p, q]
        }
        _ => {
            return Err(RingError::NoPath {
                from: w.kind.name(),
                to: target.name(),
            })
        }
    };
    let mut witness = Witness::new(ring, target, out)?;
    witness.sign_normalized = normalized;
    Ok(witness)
}

/// Transforms a witness to the target kind along the implication graph,
/// re-verifying the clause equations after every edge.
pub fn transform_witness(
    ring: &FiniteRing,
    witness: &Witness,
    target: WitnessKind,
) -> Result<Witness> {
    if witness.kind == target {
        return Ok(witness.clone());
    }
    // Breadth-first path search over a graph of twelve nodes.
    let mut frontier = vec![(witness.kind, Vec::<WitnessKind>::new())];
    let mut visited = vec![witness.kind];
    let mut path: Option<Vec<WitnessKind>> = None;
    while let Some((kind, trail)) = frontier.pop() {
        for &next in successors(kind) {
            let mut t = trail.clone();
            t.push(next);
            if next == target {
                path = Some(t);
                frontier.clear();
                break;
            }
            if !visited.contains(&next) {
                visited.push(next);
                frontier.insert(0, (next, t));
            }
        }
    }
    let Some(path) = path else {
        return Err(RingError::NoPath {
            from: witness.kind.name(),
            to: target.name(),
        });
    };
    let mut current = witness.clone();
    for kind in path {
        current = step(ring, &current, kind)?;
    }
    Ok(current)
}

/// A full system of 2x2 matrix units in a ring: `E_{ij} E_{kl}` is
/// `E_{il}` when `j = k` and zero otherwise, with `E11 + E22 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixUnitSystem {
    pub e11: Element,
    pub e12: Element,
    pub e21: Element,
    pub e22: Element,
}

impl MatrixUnitSystem {
    pub fn validate(&self, ring: &FiniteRing) -> Result<()> {
        let units = [
            [self.e11, self.e12],
            [self.e21, self.e22],
        ];
        let at = |i: usize, j: usize| units[i][j];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let prod = ring.mul(at(i, j), at(k, l))?;
                        let expected = if j == k { at(i, l) } else { ring.zero() };
                        if prod != expected {
                            return Err(RingError::VerificationFailed(format!(
                                "matrix unit relation E{}{} * E{}{} failed",
                                i + 1,
                                j + 1,
                                k + 1,
                                l + 1
                            )));
                        }
                    }
                }
            }
        }
        if ring.add(self.e11, self.e22)? != ring.one() {
            return Err(RingError::VerificationFailed(
                "E11 + E22 is not the identity".into(),
            ));
        }
        Ok(())
    }
}

/// From an F-witness (`p^2 = 0`, `pr + rp = 1`): `E11 = rp`, `E22 = pr`,
/// `E21 = p`, `E12 = E11 r E22`, all relations re-verified.
pub fn matrix_units_from_f_witness(
    ring: &FiniteRing,
    p: Element,
    r: Element,
) -> Result<MatrixUnitSystem> {
    let w = Witness::new(ring, WitnessKind::F, vec![p, r])?;
    let (p, r) = (w.elements[0], w.elements[1]);
    // p = prp follows by multiplying pr + rp = 1 with p on the left.
    let prp = ring.mul(ring.mul(p, r)?, p)?;
    if prp != p {
        return Err(RingError::VerificationFailed("p != prp".into()));
    }
    let e11 = ring.mul(r, p)?;
    let e22 = ring.mul(p, r)?;
    let e21 = p;
    let e12 = ring.mul(ring.mul(e11, r)?, e22)?;
    let mus = MatrixUnitSystem { e11, e12, e21, e22 };
    mus.validate(ring)?;
    Ok(mus)
}

/// A verified isomorphism `R = M2(E11 R E11)`: the map
/// `x -> [E_{1i} x E_{j1}]_{ij}` with its corner ring, checked to be a
/// bijective homomorphism (pairs exhaustive up to 10^4 elements, sampled
/// above).
pub struct IsoCertificate {
    pub mus: MatrixUnitSystem,
    pub corner: FiniteRing,
    /// Corner codes of the four entries of `map(x)`, indexed by `x`'s code.
    entries: Vec<[u64; 4]>,
    pub homomorphism_verified: bool,
    pub homomorphism_exhaustive: bool,
    pub bijection_verified: bool,
}

const ISO_EXHAUSTIVE_CAP: u64 = 10_000;

impl IsoCertificate {
    /// The 2x2 image of `x` over the corner ring, row-major.
    pub fn map(&self, ring: &FiniteRing, x: Element) -> Result<[Element; 4]> {
        let c = ring.check(x)?;
        let e = self.entries[c as usize];
        Ok([
            self.corner.elem(e[0]),
            self.corner.elem(e[1]),
            self.corner.elem(e[2]),
            self.corner.elem(e[3]),
        ])
    }
}

pub fn m2_isomorphism(ring: &FiniteRing, mus: &MatrixUnitSystem) -> Result<IsoCertificate> {
    mus.validate(ring)?;
    let corner = ring.corner(mus.e11)?;
    let card = ring.cardinality();
    let corner_card = corner.cardinality();
    if corner_card
        .checked_pow(4)
        .map(|c| c != card)
        .unwrap_or(true)
    {
        return Err(RingError::VerificationFailed(format!(
            "|corner|^4 = {}^4 does not match |R| = {card}",
            corner_card
        )));
    }
    let inner = ring.inner();
    let carrier = match corner.inner().repr() {
        crate::ring::Repr::Corner { carrier, .. } => carrier,
        _ => unreachable!("corners have corner representation"),
    };
    let to_corner = |base_code: u64| -> u64 {
        carrier
            .binary_search(&base_code)
            .expect("E1i x Ej1 lies in the corner") as u64
    };
    let rows = [mus.e11.code(), mus.e12.code()];
    let cols = [mus.e11.code(), mus.e21.code()];
    let mut entries = Vec::with_capacity(card as usize);
    for x in 0..card {
        let mut quad = [0u64; 4];
        for i in 0..2 {
            for j in 0..2 {
                let v = inner.mul_code(inner.mul_code(rows[i], x), cols[j]);
                quad[i * 2 + j] = to_corner(v);
            }
        }
        entries.push(quad);
    }
    // Bijectivity: the images are pairwise distinct and count |corner|^4.
    let mut sorted = entries.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() as u64 != card {
        return Err(RingError::VerificationFailed(
            "entry map is not injective".into(),
        ));
    }
    // Homomorphism check.
    let ci = corner.inner();
    let check_pair = |a: u64, b: u64| -> bool {
        let (ea, eb) = (entries[a as usize], entries[b as usize]);
        let sum = entries[inner.add_code(a, b) as usize];
        let prod = entries[inner.mul_code(a, b) as usize];
        for t in 0..4 {
            if sum[t] != ci.add_code(ea[t], eb[t]) {
                return false;
            }
        }
        // Row-column product over the corner.
        for i in 0..2 {
            for j in 0..2 {
                let v = ci.add_code(
                    ci.mul_code(ea[i * 2], eb[j]),
                    ci.mul_code(ea[i * 2 + 1], eb[2 + j]),
                );
                if prod[i * 2 + j] != v {
                    return false;
                }
            }
        }
        true
    };
    let identity_image = entries[inner.one_code() as usize];
    let identity_ok = identity_image
        == [
            ci.one_code(),
            ci.zero_code(),
            ci.zero_code(),
            ci.one_code(),
        ];
    if !identity_ok {
        return Err(RingError::VerificationFailed(
            "identity does not map to the identity matrix".into(),
        ));
    }
    let exhaustive = card <= ISO_EXHAUSTIVE_CAP;
    let hom_ok = if exhaustive {
        (0..card).all(|a| (0..card).all(|b| check_pair(a, b)))
    } else {
        let caps = ring.caps();
        let mut state = caps.seed ^ card.rotate_left(41);
        (0..caps.axiom_samples).all(|_| {
            let a = crate::ring::splitmix64(&mut state) % card;
            let b = crate::ring::splitmix64(&mut state) % card;
            check_pair(a, b)
        })
    };
    if !hom_ok {
        return Err(RingError::VerificationFailed(
            "entry map is not a homomorphism".into(),
        ));
    }
    Ok(IsoCertificate {
        mus: *mus,
        corner,
        entries,
        homomorphism_verified: true,
        homomorphism_exhaustive: exhaustive,
        bijection_verified: true,
    })
}

/// From a completable idempotent (`e^2 = e`, `[e, r]` a unit) to an
/// H-witness: `p = er(1-e)` and `q = -(1-e)re` square to zero and sum to
/// the invertible commutator.
pub fn idempotent_witness_to_squarezero(
    ring: &FiniteRing,
    e: Element,
    r: Element,
) -> Result<Witness> {
    if !ring.is_idempotent(e)? {
        return Err(RingError::NotIdempotent);
    }
    if !ring.is_unit(commutator(ring, e, r)?)? {
        return Err(RingError::NotCompletable);
    }
    let w = Witness::new(ring, WitnessKind::Idem, vec![e, r])?;
    step(ring, &w, WitnessKind::H)
}

/// From a completable involution (`u^2 = 1`, `v := [u, r]` a unit) to
/// matrix units: `e = (1-u)v^{-1}r` and `f = -v^{-1}r(1+u)` are
/// complementary idempotents with `fe = 0`; the connecting pair
/// `a in eRf`, `b in fRe` with `ab = e`, `ba = f` is found by a
/// deterministic least-code search over the two Peirce corners.
pub fn involution_witness_to_matrix_units(
    ring: &FiniteRing,
    u: Element,
    r: Element,
) -> Result<MatrixUnitSystem> {
    if ring.mul(u, u)? != ring.one() {
        return Err(RingError::NotCompletableInvolution);
    }
    let v = commutator(ring, u, r)?;
    let Some(v_inv) = ring.inverse(v)? else {
        return Err(RingError::NotCompletableInvolution);
    };
    let one = ring.one();
    let e = ring.mul(ring.mul(ring.sub(one, u)?, v_inv)?, r)?;
    let f = ring.neg(ring.mul(ring.mul(v_inv, r)?, ring.add(one, u)?)?)?;
    if ring.add(e, f)? != one
        || ring.mul(f, e)? != ring.zero()
        || !ring.is_idempotent(e)?
        || !ring.is_idempotent(f)?
    {
        return Err(RingError::VerificationFailed(
            "involution split is not a pair of complementary idempotents".into(),
        ));
    }
    // Peirce corners eRf and fRe, ascending codes.
    let inner = ring.inner();
    let (ec, fc) = (e.code(), f.code());
    let mut erf: Vec<u64> = Vec::new();
    let mut fre: Vec<u64> = Vec::new();
    {
        let mut seen_a = crate::ring::BitSet::new(ring.cardinality());
        let mut seen_b = crate::ring::BitSet::new(ring.cardinality());
        for x in 0..ring.cardinality() {
            let a = inner.mul_code(inner.mul_code(ec, x), fc);
            if !seen_a.get(a) {
                seen_a.set(a);
                erf.push(a);
            }
            let b = inner.mul_code(inner.mul_code(fc, x), ec);
            if !seen_b.get(b) {
                seen_b.set(b);
                fre.push(b);
            }
        }
        erf.sort_unstable();
        fre.sort_unstable();
    }
    for &a in &erf {
        for &b in &fre {
            if inner.mul_code(a, b) == ec && inner.mul_code(b, a) == fc {
                let mus = MatrixUnitSystem {
                    e11: e,
                    e12: ring.elem(a),
                    e21: ring.elem(b),
                    e22: f,
                };
                mus.validate(ring)?;
                return Ok(mus);
            }
        }
    }
    Err(RingError::SearchFailed(
        "no connecting pair in the Peirce corners; this contradicts the \
         completable-involution characterization"
            .into(),
    ))
}

/// Builds the canonical K-witness in `M2(S)` from units `a + b = 1`:
/// `e = [[a,b],[a,b]]` is idempotent and `[e, E11]` is a unit.
pub fn k_witness_from_sum(
    base: &FiniteRing,
    a: Element,
    b: Element,
) -> Result<(FiniteRing, Element, Element)> {
    if !base.is_unit(a)? || !base.is_unit(b)? || base.add(a, b)? != base.one() {
        return Err(RingError::NotUnitsSummingToOne);
    }
    let ring = base.matrix_ring_over(2)?;
    let bc = base.cardinality();
    let (ac, bcode) = (a.code(), b.code());
    let e = ring.element(crate::ring::encode_digits(&[ac, bcode, ac, bcode], bc))?;
    let e11 = ring.element(crate::ring::encode_digits(
        &[base.one().code(), base.zero().code(), base.zero().code(), base.zero().code()],
        bc,
    ))?;
    if !ring.is_idempotent(e)? {
        return Err(RingError::VerificationFailed(
            "[[a,b],[a,b]] failed to be idempotent".into(),
        ));
    }
    if !ring.is_unit(commutator(&ring, e, e11)?)? {
        return Err(RingError::VerificationFailed(
            "the canonical commutator failed to be a unit".into(),
        ));
    }
    Ok((ring, e, e11))
}

/// Extracts the base ring of a K-witness: the corner `S = eRe` together
/// with the pair `(ee'e, ef'e)` of units of `S` summing to its identity.
pub fn base_ring_from_k_witness(
    ring: &FiniteRing,
    e: Element,
    e_prime: Element,
) -> Result<(FiniteRing, Element, Element)> {
    if !ring.is_idempotent(e)? || !ring.is_idempotent(e_prime)? {
        return Err(RingError::NotAKWitness);
    }
    if !ring.is_unit(commutator(ring, e, e_prime)?)? {
        return Err(RingError::NotAKWitness);
    }
    let corner = ring.corner(e)?;
    let f_prime = ring.sub(ring.one(), e_prime)?;
    let part1 = ring.mul(ring.mul(e, e_prime)?, e)?;
    let part2 = ring.mul(ring.mul(e, f_prime)?, e)?;
    let carrier = match corner.inner().repr() {
        crate::ring::Repr::Corner { carrier, .. } => carrier,
        _ => unreachable!(),
    };
    let lift = |x: Element| -> Element {
        corner.elem(carrier.binary_search(&x.code()).expect("exe in corner") as u64)
    };
    let (u1, u2) = (lift(part1), lift(part2));
    if !corner.is_unit(u1)? || !corner.is_unit(u2)? {
        return Err(RingError::VerificationFailed(
            "corner parts of the witness are not units of the corner".into(),
        ));
    }
    if corner.add(u1, u2)? != corner.one() {
        return Err(RingError::VerificationFailed(
            "corner parts do not sum to the corner identity".into(),
        ));
    }
    Ok((corner, u1, u2))
}

/// The identity of `M_m(T)` as a sum of two units, for any base ring and
/// any `m >= 2`: `U` is the companion matrix of `x^m + x - 1` (determinant
/// +/-1 over the integers) and `V = I - U` has determinant `p(1) = 1`;
/// both therefore remain invertible over every ring. Inverses are computed
/// from the integer adjugate and mapped into `T`.
#[derive(Clone)]
pub struct TwoUnitsDecomposition {
    pub size: usize,
    pub u: RingMatrix,
    pub v: RingMatrix,
    pub u_inv: RingMatrix,
    pub v_inv: RingMatrix,
    pub det_u_int: i128,
    pub det_v_int: i128,
}

pub fn henriksen_two_units(size: usize, base: &FiniteRing) -> Result<TwoUnitsDecomposition> {
    if size < 2 {
        return Err(RingError::MNotSupported);
    }
    // Companion matrix of x^m + x - 1: ones on the subdiagonal, last
    // column (1, -1, 0, .., 0).
    let m = size;
    let mut c = vec![0i128; m * m];
    for i in 0..m - 1 {
        c[(i + 1) * m + i] = 1;
    }
    c[m - 1] = 1; // -c0 with c0 = -1
    c[m + m - 1] = -1; // -c1 with c1 = 1
    let mut id = vec![0i128; m * m];
    for i in 0..m {
        id[i * m + i] = 1;
    }
    let v_int: Vec<i128> = id.iter().zip(&c).map(|(&a, &b)| a - b).collect();
    let det_u_int = int_det(&c, m);
    let det_v_int = int_det(&v_int, m);
    if det_u_int.abs() != 1 || det_v_int.abs() != 1 {
        return Err(RingError::VerificationFailed(format!(
            "integer determinants {det_u_int}, {det_v_int} are not units"
        )));
    }
    let c_inv = int_adjugate_inverse(&c, m).expect("determinant is +/-1");
    let v_inv_int = int_adjugate_inverse(&v_int, m).expect("determinant is +/-1");
    let u = RingMatrix::from_int_entries(base, m, &c)?;
    let v = RingMatrix::from_int_entries(base, m, &v_int)?;
    let u_inv = RingMatrix::from_int_entries(base, m, &c_inv)?;
    let v_inv = RingMatrix::from_int_entries(base, m, &v_inv_int)?;
    let checks = u.mul(&u_inv)?.is_identity()
        && u_inv.mul(&u)?.is_identity()
        && v.mul(&v_inv)?.is_identity()
        && v_inv.mul(&v)?.is_identity()
        && u.add(&v)?.is_identity();
    if !checks {
        return Err(RingError::VerificationFailed(
            "two-units decomposition failed to verify over the base".into(),
        ));
    }
    Ok(TwoUnitsDecomposition {
        size,
        u,
        v,
        u_inv,
        v_inv,
        det_u_int,
        det_v_int,
    })
}

/// The cardinality obstruction to being a 2x2 matrix ring: a finite
/// `M2(S)` has `|S|^4` elements, so a cardinality that is not a fourth
/// power rules the structure out. One-sided: a fourth-power cardinality is
/// inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourthPowerObstruction {
    pub cardinality: u64,
    /// Largest `r` with `r^4 <= cardinality`.
    pub floor_root: u64,
}

pub fn not_m2_certificate(ring: &FiniteRing) -> Option<FourthPowerObstruction> {
    let card = ring.cardinality();
    let mut r = 1u64;
    while (r + 1).checked_pow(4).map(|p| p <= card).unwrap_or(false) {
        r += 1;
    }
    if r.pow(4) == card {
        None
    } else {
        Some(FourthPowerObstruction {
            cardinality: card,
            floor_root: r,
        })
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

    fn el(r: &FiniteRing, entries: [[i64; 2]; 2]) -> Element {
        let lit = ElemLit::List(
            entries
                .iter()
                .map(|row| ElemLit::List(row.iter().map(|&v| ElemLit::Int(v)).collect()))
                .collect(),
        );
        r.resolve_literal(&lit).unwrap()
    }

    #[test]
    fn k_witness_from_sum_examples() {
        let f3 = build_ring(&zn(3)).unwrap();
        let two = f3.element(2).unwrap();
        let (r, e, e11) = k_witness_from_sum(&f3, two, two).unwrap();
        assert_eq!(e, el(&r, [[2, 2], [2, 2]]));
        let c = commutator(&r, e, e11).unwrap();
        assert_eq!(c, el(&r, [[0, 1], [2, 0]]));

        let z5 = build_ring(&zn(5)).unwrap();
        let (r, e, e11) =
            k_witness_from_sum(&z5, z5.element(2).unwrap(), z5.element(4).unwrap()).unwrap();
        let c = commutator(&r, e, e11).unwrap();
        // [[0,-4],[2,0]] = [[0,1],[2,0]] mod 5.
        assert_eq!(c, el(&r, [[0, 1], [2, 0]]));
        assert!(r.is_unit(c).unwrap());

        // Zero base ring: everything collapses but stays consistent.
        let z1 = build_ring(&zn(1)).unwrap();
        let (r, e, e11) = k_witness_from_sum(&z1, z1.zero(), z1.zero()).unwrap();
        assert_eq!(r.cardinality(), 1);
        assert_eq!(e, e11);

        // Rejection when the pair does not sum to one.
        let f3b = build_ring(&zn(3)).unwrap();
        assert!(matches!(
            k_witness_from_sum(&f3b, f3b.element(1).unwrap(), f3b.element(1).unwrap()),
            Err(RingError::NotUnitsSummingToOne)
        ));
    }

    #[test]
    fn base_ring_round_trip() {
        let f3 = build_ring(&zn(3)).unwrap();
        let two = f3.element(2).unwrap();
        let (r, e, e11) = k_witness_from_sum(&f3, two, two).unwrap();
        let (corner, u1, u2) = base_ring_from_k_witness(&r, e, e11).unwrap();
        assert_eq!(corner.cardinality(), 3);
        assert!(corner.is_unit(u1).unwrap() && corner.is_unit(u2).unwrap());
        assert_eq!(corner.add(u1, u2).unwrap(), corner.one());

        let z = build_ring(&zn(1)).unwrap();
        let (rz, e0, e0b) = k_witness_from_sum(&z, z.zero(), z.zero()).unwrap();
        let (cz, a, b) = base_ring_from_k_witness(&rz, e0, e0b).unwrap();
        assert_eq!(cz.cardinality(), 1);
        assert_eq!(cz.add(a, b).unwrap(), cz.one());
    }

    #[test]
    fn transform_h_to_d_over_f5() {
        let r = m2(5);
        let p = el(&r, [[0, 1], [0, 0]]);
        let q = el(&r, [[0, 0], [1, 0]]);
        let h = Witness::new(&r, WitnessKind::H, alloc::vec![p, q]).unwrap();
        let d = transform_witness(&r, &h, WitnessKind::D).unwrap();
        // v = (p + q)^{-1} = p + q, and pv + vp = 1.
        assert_eq!(d.elements[1], el(&r, [[0, 1], [1, 0]]));
        assert_eq!(
            anti_commutator(&r, d.elements[0], d.elements[1]).unwrap(),
            r.one()
        );
    }

    #[test]
    fn transform_i_to_c_normalizes_the_sign() {
        let r = m2(3);
        let p = el(&r, [[0, 1], [0, 0]]);
        let q = el(&r, [[0, 0], [1, 0]]);
        let i = Witness::new(&r, WitnessKind::I, alloc::vec![p, q]).unwrap();
        let c = transform_witness(&r, &i, WitnessKind::C).unwrap();
        assert!(c.sign_normalized);
        assert_eq!(
            anti_commutator(&r, c.elements[0], c.elements[1]).unwrap(),
            r.one()
        );
    }

    #[test]
    fn transform_k_through_f_in_characteristic_two() {
        let r = m2(2);
        let p = el(&r, [[0, 1], [0, 0]]);
        let rr = el(&r, [[0, 1], [1, 0]]);
        let k = Witness::new(&r, WitnessKind::K, alloc::vec![p, rr]).unwrap();
        let f = transform_witness(&r, &k, WitnessKind::F).unwrap();
        let (pf, rf) = (f.elements[0], f.elements[1]);
        assert_eq!(anti_commutator(&r, pf, rf).unwrap(), r.one());
        let mus = matrix_units_from_f_witness(&r, pf, rf).unwrap();
        // rp = E22-slot, pr = E11-slot per the construction.
        assert_eq!(mus.e11, el(&r, [[0, 0], [0, 1]]));
        assert_eq!(mus.e22, el(&r, [[1, 0], [0, 0]]));
        assert_eq!(mus.e21, el(&r, [[0, 1], [0, 0]]));
        assert_eq!(mus.e12, el(&r, [[0, 0], [1, 0]]));
    }

    #[test]
    fn matrix_units_over_z6() {
        let r = m2(6);
        let p = el(&r, [[0, 1], [0, 0]]);
        let rr = el(&r, [[0, 0], [1, 0]]);
        let mus = matrix_units_from_f_witness(&r, p, rr).unwrap();
        mus.validate(&r).unwrap();
    }

    #[test]
    fn no_path_from_f_back_to_b() {
        let r = m2(2);
        let p = el(&r, [[0, 1], [0, 0]]);
        let rr = el(&r, [[0, 0], [1, 0]]);
        let f = Witness::new(&r, WitnessKind::F, alloc::vec![p, rr]).unwrap();
        assert!(matches!(
            transform_witness(&r, &f, WitnessKind::B),
            Err(RingError::NoPath { .. })
        ));
    }

    #[test]
    fn iso_certificate_for_the_canonical_units() {
        let r = m2(3);
        let mus = MatrixUnitSystem {
            e11: el(&r, [[1, 0], [0, 0]]),
            e12: el(&r, [[0, 1], [0, 0]]),
            e21: el(&r, [[0, 0], [1, 0]]),
            e22: el(&r, [[0, 0], [0, 1]]),
        };
        let cert = m2_isomorphism(&r, &mus).unwrap();
        assert_eq!(cert.corner.cardinality(), 3);
        assert!(cert.homomorphism_verified && cert.homomorphism_exhaustive);
        assert!(cert.bijection_verified);
    }

    #[test]
    fn iso_certificate_for_mat2_z4_from_an_f_witness() {
        let r = m2(4);
        let p = el(&r, [[0, 1], [0, 0]]);
        let rr = el(&r, [[0, 0], [1, 0]]);
        let mus = matrix_units_from_f_witness(&r, p, rr).unwrap();
        let cert = m2_isomorphism(&r, &mus).unwrap();
        assert_eq!(cert.corner.cardinality(), 4);
        assert_eq!(cert.corner.cardinality().pow(4), r.cardinality());
    }

    #[test]
    fn completable_idempotent_split_examples() {
        let r = m2(2);
        let e = el(&r, [[1, 0], [0, 0]]);
        let s = el(&r, [[0, 1], [1, 0]]);
        let h = idempotent_witness_to_squarezero(&r, e, s).unwrap();
        assert_eq!(h.elements[0], el(&r, [[0, 1], [0, 0]]));
        assert_eq!(h.elements[1], el(&r, [[0, 0], [1, 0]]));

        // Square root of -1 over F5.
        let r5 = m2(5);
        let e = el(&r5, [[1, 0], [0, 0]]);
        let r3 = el(&r5, [[0, 1], [-1, 0]]);
        assert_eq!(r5.mul(r3, r3).unwrap(), r5.neg(r5.one()).unwrap());
        let h = idempotent_witness_to_squarezero(&r5, e, r3).unwrap();
        assert_eq!(h.elements[0], el(&r5, [[0, 1], [0, 0]]));
        assert_eq!(h.elements[1], el(&r5, [[0, 0], [1, 0]]));

        // Non-completable input is rejected: [e, e] = 0 is never a unit here.
        assert!(matches!(
            idempotent_witness_to_squarezero(&r5, e, e),
            Err(RingError::NotCompletable)
        ));
    }

    #[test]
    fn completable_fixtures_all_reach_a_certificate() {
        // r2^2 = 1, r3^2 = -1, r4^3 = 1, r7^2 = 0, all completing e = E11.
        let r = m2(5);
        let e = el(&r, [[1, 0], [0, 0]]);
        let fixtures = [
            el(&r, [[0, 1], [1, 0]]),
            el(&r, [[0, 1], [-1, 0]]),
            el(&r, [[-1, 1], [-1, 0]]),
            el(&r, [[1, 1], [-1, -1]]),
        ];
        let r4 = fixtures[2];
        assert_eq!(r.pow(r4, 3).unwrap(), r.one());
        assert_eq!(r.mul(fixtures[3], fixtures[3]).unwrap(), r.zero());
        for rr in fixtures {
            let h = idempotent_witness_to_squarezero(&r, e, rr).unwrap();
            let f = transform_witness(&r, &h, WitnessKind::F).unwrap();
            let mus = matrix_units_from_f_witness(&r, f.elements[0], f.elements[1]).unwrap();
            let cert = m2_isomorphism(&r, &mus).unwrap();
            assert_eq!(cert.corner.cardinality(), 5);
        }
    }

    #[test]
    fn involution_witness_examples() {
        for n in [3u64, 2, 6] {
            let r = m2(n);
            let u = el(&r, [[0, 1], [1, 0]]);
            let rr = el(&r, [[1, 0], [0, 0]]);
            let mus = involution_witness_to_matrix_units(&r, u, rr).unwrap();
            mus.validate(&r).unwrap();
            if n == 3 {
                assert_eq!(mus.e11, el(&r, [[1, 0], [-1, 0]]));
                assert_eq!(mus.e22, el(&r, [[0, 0], [1, 1]]));
            }
        }
        let r = m2(3);
        assert!(matches!(
            involution_witness_to_matrix_units(&r, r.one(), r.one()),
            Err(RingError::NotCompletableInvolution)
        ));
    }

    #[test]
    fn henriksen_decomposition_examples() {
        let f2 = build_ring(&zn(2)).unwrap();
        let d = henriksen_two_units(2, &f2).unwrap();
        assert_eq!(d.u.render(), "[[0,1],[1,1]]");
        assert_eq!(d.v.render(), "[[1,1],[1,0]]");
        assert_eq!(d.det_u_int, -1);
        assert_eq!(d.det_v_int, 1);

        let z6 = build_ring(&zn(6)).unwrap();
        let d = henriksen_two_units(3, &z6).unwrap();
        assert_eq!(d.det_u_int, 1);
        assert_eq!(d.det_v_int, 1);

        let z1 = build_ring(&zn(1)).unwrap();
        assert!(henriksen_two_units(2, &z1).is_ok());

        assert!(matches!(
            henriksen_two_units(1, &f2),
            Err(RingError::MNotSupported)
        ));
    }

    #[test]
    fn fourth_power_obstruction_examples() {
        let m3f2 = build_ring(&RingExpr::Mat {
            size: 3,
            base: Box::new(zn(2)),
        })
        .unwrap();
        let obs = not_m2_certificate(&m3f2).unwrap();
        assert_eq!(obs.cardinality, 512);
        assert_eq!(obs.floor_root, 4); // 4^4 = 256 < 512 < 625 = 5^4

        assert!(not_m2_certificate(&m2(2)).is_none());
        let z5 = build_ring(&zn(5)).unwrap();
        assert!(not_m2_certificate(&z5).is_some());
    }
}
