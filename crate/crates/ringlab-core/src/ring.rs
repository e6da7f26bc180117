//! Finite ring carriers: construction, exact arithmetic, enumeration, and
//! the structural caches (units, idempotents, Jacobson radical).
//!
//! Elements are canonical integer codes in `[0, cardinality)`. Composite
//! constructions use mixed-radix encodings (matrices are row-major digit
//! strings over the base encoding, least-significant cell first), so
//! enumeration order is deterministic and witnesses are reproducible.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::sync::atomic::{AtomicU64, Ordering};

use once_cell::race::OnceBox;

use crate::error::RingError;
use crate::expr::{ElemLit, RingExpr};
use crate::matrix;
use crate::Result;

/// Stack buffer size for decoded digit strings; large enough for every
/// matrix shape that fits under the enumeration caps.
pub(crate) const MAX_CELLS: usize = 128;

/// Rings at or below this cardinality get fully materialized Cayley tables.
const OP_TABLE_CAP: u64 = 512;

static NEXT_RING_ID: AtomicU64 = AtomicU64::new(1);

/// Resource limits for construction and sweeps. All overridable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest carrier that may be built.
    pub enumeration_cap: u64,
    /// Up to this cardinality the ring axioms are checked on all triples;
    /// above it they are spot-checked on pseudo-random triples.
    pub axiom_check_cap: u64,
    /// Number of sampled triples for rings above the axiom-check cap.
    pub axiom_samples: u64,
    /// Largest idempotent-pair sweep the deciders will attempt.
    pub pair_budget: u64,
    /// Seed for all sampled (never exhaustive) checks.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration_cap: 2_000_000,
            axiom_check_cap: 256,
            axiom_samples: 4096,
            pair_budget: 5_000_000,
            seed: 0x5eed_1ab5,
        }
    }
}

/// An element of one specific [`FiniteRing`], identified by its canonical
/// code. Elements of different rings can never be combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    ring_id: u64,
    code: u64,
}

impl Element {
    /// Canonical code in `[0, cardinality)`.
    pub fn code(&self) -> u64 {
        self.code
    }

    pub(crate) fn raw(ring_id: u64, code: u64) -> Self {
        Element { ring_id, code }
    }
}

/// Explicit Cayley tables for a small ring, as loaded from a table file.
/// Validated against the full ring axioms when built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTable {
    pub order: u64,
    /// Row-major `order x order` addition table.
    pub add: Vec<u64>,
    /// Row-major `order x order` multiplication table.
    pub mul: Vec<u64>,
    pub one: u64,
}

pub(crate) struct OpTables {
    add: Box<[u16]>,
    mul: Box<[u16]>,
    neg: Box<[u16]>,
}

pub(crate) enum Repr {
    Zn {
        n: u64,
    },
    Gf {
        p: u64,
        deg: usize,
        /// Monic modulus, constant term first, length `deg + 1`.
        poly: Box<[u64]>,
    },
    Mat {
        dim: usize,
        base: FiniteRing,
    },
    UpperTri {
        dim: usize,
        base: FiniteRing,
        /// Row-major upper cells `(r, c)` with `r <= c`.
        cells: Box<[(usize, usize)]>,
    },
    Prod {
        factors: Box<[FiniteRing]>,
        radices: Box<[u64]>,
    },
    Quot {
        base: FiniteRing,
        /// Base code -> quotient code.
        coset: Box<[u32]>,
        /// Quotient code -> least base code in the coset.
        reps: Box<[u64]>,
        /// Sorted member codes of the ideal in the base ring.
        ideal: Box<[u64]>,
    },
    Corner {
        base: FiniteRing,
        /// Sorted base codes of `eBe`.
        carrier: Box<[u64]>,
        idem: u64,
    },
    Table {
        add: Box<[u32]>,
        mul: Box<[u32]>,
        neg: Box<[u32]>,
    },
}

pub(crate) struct RingInner {
    id: u64,
    expr: RingExpr,
    card: u64,
    zero: u64,
    one: u64,
    repr: Repr,
    ops: Option<OpTables>,
    caps: Caps,
    units: Box<[u64]>,
    unit_inv: Box<[u64]>,
    unit_mask: BitSet,
    idempotents: Box<[u64]>,
    radical: OnceBox<Arc<Vec<u64>>>,
    commutative: OnceBox<bool>,
    abelian: OnceBox<bool>,
}

/// An immutable finite ring. Cheap to clone and safe to share across
/// threads; all operations are pure functions of their inputs.
#[derive(Clone)]
pub struct FiniteRing {
    inner: Arc<RingInner>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.inner.id == other.inner.id
    }
}
impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteRing({}, |R| = {})",
            self.inner.expr, self.inner.card
        )
    }
}

// ---------------------------------------------------------------------------
// Bit sets and deterministic sampling
// ---------------------------------------------------------------------------

pub(crate) struct BitSet {
    words: Box<[u64]>,
}

impl BitSet {
    pub(crate) fn new(len: u64) -> Self {
        BitSet {
            words: vec![0u64; len.div_ceil(64) as usize].into_boxed_slice(),
        }
    }

    pub(crate) fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1u64 << (i & 63);
    }

    pub(crate) fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] & (1u64 << (i & 63)) != 0
    }
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

// ---------------------------------------------------------------------------
// Digit codecs
// ---------------------------------------------------------------------------

#[inline]
pub(crate) fn decode_digits(mut code: u64, radix: u64, out: &mut [u64]) {
    for d in out.iter_mut() {
        *d = code % radix;
        code /= radix;
    }
}

#[inline]
pub(crate) fn encode_digits(digits: &[u64], radix: u64) -> u64 {
    let mut code = 0u64;
    for &d in digits.iter().rev() {
        code = code * radix + d;
    }
    code
}

fn decode_mixed(mut code: u64, radices: &[u64], out: &mut [u64]) {
    for (i, &r) in radices.iter().enumerate() {
        out[i] = code % r;
        code /= r;
    }
}

fn encode_mixed(digits: &[u64], radices: &[u64]) -> u64 {
    let mut code = 0u64;
    for i in (0..radices.len()).rev() {
        code = code * radices[i] + digits[i];
    }
    code
}

// ---------------------------------------------------------------------------
// Integer and polynomial helpers
// ---------------------------------------------------------------------------

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Modular inverse of `a` mod `n` via the extended Euclidean algorithm.
fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let t = old_r - q * r;
        old_r = r;
        r = t;
        let t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if old_r != 1 {
        return None;
    }
    let n = n as i128;
    Some((((old_s % n) + n) % n) as u64)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trims trailing zero coefficients (constant-first layout).
fn poly_trim(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Remainder of `a` divided by monic `m` over `Z_p`, in place on a copy.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let sub = (lead * mc) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= dm {
            break;
        }
    }
    r
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Product of two coefficient strings over `Z_p`.
fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Inverse of `a` modulo the monic polynomial `m` over `Z_p`, when coprime.
fn poly_inverse(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
    // Extended Euclid on (a, m).
    let mut old_r = a.to_vec();
    poly_trim(&mut old_r);
    let mut r = m.to_vec();
    let mut old_s = vec![1u64];
    let mut s = vec![0u64];
    while !poly_is_zero(&r) {
        // old_r = q * r + rem with deg rem < deg r
        let (q, rem) = poly_divrem(&old_r, &r, p);
        let qs = poly_mul(&q, &s, p);
        let mut new_s = old_s.clone();
        let n = new_s.len().max(qs.len());
        new_s.resize(n, 0);
        for (i, &c) in qs.iter().enumerate() {
            new_s[i] = (new_s[i] + p - c % p) % p;
        }
        poly_trim(&mut new_s);
        old_r = r;
        r = rem;
        old_s = s;
        s = new_s;
    }
    if old_r.len() != 1 || old_r[0] == 0 {
        return None;
    }
    let scale = mod_inverse(old_r[0], p)?;
    let mut inv = old_s;
    for c in inv.iter_mut() {
        *c = (*c * scale) % p;
    }
    Some(poly_rem(&inv, m, p))
}

/// Quotient and remainder of `a / b` over `Z_p` (`b` nonzero, any leading
/// coefficient).
fn poly_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut bb = b.to_vec();
    poly_trim(&mut bb);
    let db = bb.len() - 1;
    let lead_inv = mod_inverse(*bb.last().unwrap(), p).expect("leading coeff invertible");
    if r.len() <= db && !(r.len() == db + 1) {
        return (vec![0], r);
    }
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db || (r.len() == db + 1 && db == 0) {
        if poly_is_zero(&r) || r.len() < db + 1 {
            break;
        }
        let lead = *r.last().unwrap();
        let coeff = (lead * lead_inv) % p;
        let shift = r.len() - 1 - db;
        q[shift] = coeff;
        for i in 0..=db {
            let sub = (coeff * bb[i]) % p;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
        if r.len() <= db {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

/// Builds rings from expressions, resolving `Table(..)` sources from a
/// registry supplied by the front end.
pub struct RingBuilder {
    caps: Caps,
    tables: BTreeMap<String, RawTable>,
}

impl Default for RingBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl RingBuilder {
    pub fn new() -> Self {
        RingBuilder {
            caps: Caps::default(),
            tables: BTreeMap::new(),
        }
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }

    pub fn with_table(mut self, source: impl Into<String>, table: RawTable) -> Self {
        self.tables.insert(source.into(), table);
        self
    }

    pub fn build(&self, expr: &RingExpr) -> Result<FiniteRing> {
        self.build_inner(expr)
    }

    fn build_inner(&self, expr: &RingExpr) -> Result<FiniteRing> {
        match expr {
            RingExpr::Zn { modulus } => {
                if *modulus == 0 {
                    return Err(RingError::InvalidExpr("Z(0) has no carrier".into()));
                }
                self.check_card(*modulus)?;
                FiniteRing::assemble(
                    expr.clone(),
                    *modulus,
                    Repr::Zn { n: *modulus },
                    self.caps,
                )
            }
            RingExpr::GFp { prime, poly } => {
                let p = *prime;
                if !is_prime(p) {
                    return Err(RingError::InvalidExpr(format!("{p} is not prime")));
                }
                if poly.len() < 2 {
                    return Err(RingError::InvalidExpr(
                        "modulus polynomial must have degree >= 1".into(),
                    ));
                }
                let pp: Vec<u64> = poly
                    .iter()
                    .map(|&c| (((c % p as i64) + p as i64) % p as i64) as u64)
                    .collect();
                if *pp.last().unwrap() != 1 {
                    return Err(RingError::InvalidExpr(
                        "modulus polynomial must be monic".into(),
                    ));
                }
                let deg = pp.len() - 1;
                if deg > 8 {
                    return Err(RingError::InvalidExpr(
                        "modulus degree is limited to 8".into(),
                    ));
                }
                check_irreducible(&pp, p)?;
                let mut card = 1u64;
                for _ in 0..deg {
                    card = card
                        .checked_mul(p)
                        .ok_or(RingError::CapExceeded {
                            what: "enumeration",
                            limit: self.caps.enumeration_cap,
                            attempted: u64::MAX,
                        })?;
                }
                self.check_card(card)?;
                FiniteRing::assemble(
                    expr.clone(),
                    card,
                    Repr::Gf {
                        p,
                        deg,
                        poly: pp.into_boxed_slice(),
                    },
                    self.caps,
                )
            }
            RingExpr::Mat { size, base } => {
                if *size == 0 {
                    return Err(RingError::InvalidExpr("M(0, _) has no identity".into()));
                }
                let b = self.build_inner(base)?;
                let cells = size * size;
                if cells > MAX_CELLS {
                    return Err(RingError::InvalidExpr(format!(
                        "matrix dimension {size} is too large"
                    )));
                }
                let card = self.power_card(b.cardinality(), cells)?;
                FiniteRing::assemble(
                    expr.clone(),
                    card,
                    Repr::Mat {
                        dim: *size,
                        base: b,
                    },
                    self.caps,
                )
            }
            RingExpr::UpperTri { size, base } => {
                if *size == 0 {
                    return Err(RingError::InvalidExpr("UT(0, _) has no identity".into()));
                }
                let b = self.build_inner(base)?;
                if size * size > MAX_CELLS {
                    return Err(RingError::InvalidExpr(format!(
                        "matrix dimension {size} is too large"
                    )));
                }
                let mut cells = Vec::new();
                for r in 0..*size {
                    for c in r..*size {
                        cells.push((r, c));
                    }
                }
                let card = self.power_card(b.cardinality(), cells.len())?;
                FiniteRing::assemble(
                    expr.clone(),
                    card,
                    Repr::UpperTri {
                        dim: *size,
                        base: b,
                        cells: cells.into_boxed_slice(),
                    },
                    self.caps,
                )
            }
            RingExpr::Prod { factors } => {
                if factors.is_empty() {
                    return Err(RingError::InvalidExpr("empty product".into()));
                }
                let mut built = Vec::with_capacity(factors.len());
                let mut radices = Vec::with_capacity(factors.len());
                let mut card = 1u64;
                for f in factors {
                    let b = self.build_inner(f)?;
                    radices.push(b.cardinality());
                    card = card
                        .checked_mul(b.cardinality())
                        .filter(|&c| c <= self.caps.enumeration_cap)
                        .ok_or(RingError::CapExceeded {
                            what: "enumeration",
                            limit: self.caps.enumeration_cap,
                            attempted: u64::MAX,
                        })?;
                    built.push(b);
                }
                FiniteRing::assemble(
                    expr.clone(),
                    card,
                    Repr::Prod {
                        factors: built.into_boxed_slice(),
                        radices: radices.into_boxed_slice(),
                    },
                    self.caps,
                )
            }
            RingExpr::Quot { base, ideal_gens } => {
                let b = self.build_inner(base)?;
                let mut gens = Vec::with_capacity(ideal_gens.len());
                for g in ideal_gens {
                    gens.push(b.resolve_literal(g)?);
                }
                let ideal = crate::ideal::ideal_closure(&b, &gens)?;
                b.quotient(&ideal).map(|(q, _)| q)
            }
            RingExpr::Corner { base, idem } => {
                let b = self.build_inner(base)?;
                let e = b.resolve_literal(idem)?;
                b.corner(e)
            }
            RingExpr::Table { source } => {
                let raw = self.tables.get(source).ok_or_else(|| {
                    RingError::InvalidExpr(format!("no table registered for {source}"))
                })?;
                FiniteRing::from_table(expr.clone(), raw, self.caps)
            }
        }
    }

    fn check_card(&self, card: u64) -> Result<()> {
        if card > self.caps.enumeration_cap {
            return Err(RingError::CapExceeded {
                what: "enumeration",
                limit: self.caps.enumeration_cap,
                attempted: card,
            });
        }
        Ok(())
    }

    fn power_card(&self, base: u64, exp: usize) -> Result<u64> {
        let mut card = 1u64;
        for _ in 0..exp {
            card = card
                .checked_mul(base)
                .filter(|&c| c <= self.caps.enumeration_cap)
                .ok_or(RingError::CapExceeded {
                    what: "enumeration",
                    limit: self.caps.enumeration_cap,
                    attempted: u64::MAX,
                })?;
        }
        Ok(card)
    }
}

/// Builds a ring with default caps and no table registry.
pub fn build_ring(expr: &RingExpr) -> Result<FiniteRing> {
    RingBuilder::new().build(expr)
}

/// Exhaustive trial division by every lower-degree monic polynomial.
fn check_irreducible(poly: &[u64], p: u64) -> Result<()> {
    let deg = poly.len() - 1;
    if deg == 1 {
        return Ok(());
    }
    for d in 1..=deg / 2 {
        // All monic polynomials of degree d: p^d coefficient strings.
        let count = p.pow(d as u32);
        let mut divisor = vec![0u64; d + 1];
        divisor[d] = 1;
        for combo in 0..count {
            let mut c = combo;
            for cell in divisor.iter_mut().take(d) {
                *cell = c % p;
                c /= p;
            }
            let (_, rem) = poly_divrem(poly, &divisor, p);
            if poly_is_zero(&rem) {
                return Err(RingError::IrreduciblePoly(format!(
                    "divisible by a monic factor of degree {d}"
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// The ring proper
// ---------------------------------------------------------------------------

impl FiniteRing {
    /// Shared assembly path: compute identities, op tables, verify axioms,
    /// then populate the unit and idempotent caches.
    fn assemble(expr: RingExpr, card: u64, repr: Repr, caps: Caps) -> Result<FiniteRing> {
        let zero = compute_zero(&repr, card);
        let one = compute_one(&repr, card, zero);
        Self::assemble_with(expr, card, repr, caps, zero, one)
    }

    fn assemble_with(
        expr: RingExpr,
        card: u64,
        repr: Repr,
        caps: Caps,
        zero: u64,
        one: u64,
    ) -> Result<FiniteRing> {
        let ops = build_op_tables(&repr, card, zero);
        verify_axioms(&repr, &ops, card, zero, one, &caps)?;
        let (units, unit_inv) = compute_units(&repr, &ops, card, one);
        let mut unit_mask = BitSet::new(card);
        for &u in units.iter() {
            unit_mask.set(u);
        }
        let idempotents = compute_idempotents(&repr, &ops, card);
        let inner = RingInner {
            id: NEXT_RING_ID.fetch_add(1, Ordering::Relaxed),
            expr,
            card,
            zero,
            one,
            repr,
            ops,
            caps,
            units: units.into_boxed_slice(),
            unit_inv: unit_inv.into_boxed_slice(),
            unit_mask,
            idempotents: idempotents.into_boxed_slice(),
            radical: OnceBox::new(),
            commutative: OnceBox::new(),
            abelian: OnceBox::new(),
        };
        Ok(FiniteRing {
            inner: Arc::new(inner),
        })
    }

    fn from_table(expr: RingExpr, raw: &RawTable, caps: Caps) -> Result<FiniteRing> {
        let n = raw.order;
        if n == 0 {
            return Err(RingError::AxiomViolation("empty carrier".into()));
        }
        if n > caps.axiom_check_cap {
            return Err(RingError::CapExceeded {
                what: "table axiom check",
                limit: caps.axiom_check_cap,
                attempted: n,
            });
        }
        let sq = (n * n) as usize;
        if raw.add.len() != sq || raw.mul.len() != sq {
            return Err(RingError::AxiomViolation(format!(
                "expected {sq} add and mul entries"
            )));
        }
        if raw.one >= n || raw.add.iter().chain(raw.mul.iter()).any(|&x| x >= n) {
            return Err(RingError::AxiomViolation("entry out of range".into()));
        }
        // Derive zero: the unique additive identity.
        let zero = (0..n)
            .find(|&z| (0..n).all(|i| raw.add[(z * n + i) as usize] == i))
            .ok_or_else(|| RingError::AxiomViolation("no additive identity".into()))?;
        let mut neg = vec![0u32; n as usize];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| raw.add[(a * n + b) as usize] == zero)
                .ok_or_else(|| RingError::AxiomViolation("missing additive inverse".into()))?;
            neg[a as usize] = b as u32;
        }
        let repr = Repr::Table {
            add: raw.add.iter().map(|&x| x as u32).collect(),
            mul: raw.mul.iter().map(|&x| x as u32).collect(),
            neg: neg.into_boxed_slice(),
        };
        FiniteRing::assemble_with(expr, n, repr, caps, zero, raw.one)
    }

    pub(crate) fn build_quotient(
        base: &FiniteRing,
        ideal: &[u64],
        gens_lit: Vec<ElemLit>,
    ) -> Result<FiniteRing> {
        let card = base.cardinality();
        let mut coset = vec![u32::MAX; card as usize];
        let mut reps = Vec::new();
        for x in 0..card {
            if coset[x as usize] != u32::MAX {
                continue;
            }
            let q = reps.len() as u32;
            reps.push(x);
            for &j in ideal {
                let y = base.inner.add_code(x, j);
                coset[y as usize] = q;
            }
            // x itself is covered because 0 is in every ideal.
            debug_assert_eq!(coset[x as usize], q);
        }
        let qcard = reps.len() as u64;
        let expr = RingExpr::Quot {
            base: Box::new(base.expr().clone()),
            ideal_gens: gens_lit,
        };
        FiniteRing::assemble(
            expr,
            qcard,
            Repr::Quot {
                base: base.clone(),
                coset: coset.into_boxed_slice(),
                reps: reps.into_boxed_slice(),
                ideal: ideal.to_vec().into_boxed_slice(),
            },
            base.inner.caps,
        )
    }

    pub(crate) fn build_corner(base: &FiniteRing, e: u64) -> Result<FiniteRing> {
        if base.inner.mul_code(e, e) != e {
            return Err(RingError::NotIdempotent);
        }
        let mut carrier: Vec<u64> = (0..base.cardinality())
            .map(|x| {
                base.inner
                    .mul_code(base.inner.mul_code(e, x), e)
            })
            .collect();
        carrier.sort_unstable();
        carrier.dedup();
        let expr = RingExpr::Corner {
            base: Box::new(base.expr().clone()),
            idem: Box::new(base.render_code(e)),
        };
        let card = carrier.len() as u64;
        FiniteRing::assemble(
            expr,
            card,
            Repr::Corner {
                base: base.clone(),
                carrier: carrier.into_boxed_slice(),
                idem: e,
            },
            base.inner.caps,
        )
    }

    // -- basic accessors ----------------------------------------------------

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn expr(&self) -> &RingExpr {
        &self.inner.expr
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    pub fn cardinality(&self) -> u64 {
        self.inner.card
    }

    pub fn zero(&self) -> Element {
        Element::raw(self.inner.id, self.inner.zero)
    }

    pub fn one(&self) -> Element {
        Element::raw(self.inner.id, self.inner.one)
    }

    /// The element with the given canonical code.
    pub fn element(&self, code: u64) -> Result<Element> {
        if code < self.inner.card {
            Ok(Element::raw(self.inner.id, code))
        } else {
            Err(RingError::BadLiteral(format!(
                "code {code} out of range for cardinality {}",
                self.inner.card
            )))
        }
    }

    pub(crate) fn elem(&self, code: u64) -> Element {
        debug_assert!(code < self.inner.card);
        Element::raw(self.inner.id, code)
    }

    /// All elements in canonical enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let id = self.inner.id;
        (0..self.inner.card).map(move |c| Element::raw(id, c))
    }

    pub(crate) fn check(&self, x: Element) -> Result<u64> {
        if x.ring_id == self.inner.id {
            Ok(x.code)
        } else {
            Err(RingError::MixedRing)
        }
    }

    pub fn contains(&self, x: Element) -> bool {
        x.ring_id == self.inner.id
    }

    // -- arithmetic ----------------------------------------------------------

    pub fn add(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.elem(self.inner.add_code(self.check(a)?, self.check(b)?)))
    }

    pub fn sub(&self, a: Element, b: Element) -> Result<Element> {
        let (a, b) = (self.check(a)?, self.check(b)?);
        Ok(self.elem(self.inner.add_code(a, self.inner.neg_code(b))))
    }

    pub fn neg(&self, a: Element) -> Result<Element> {
        Ok(self.elem(self.inner.neg_code(self.check(a)?)))
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element> {
        Ok(self.elem(self.inner.mul_code(self.check(a)?, self.check(b)?)))
    }

    /// `x^n` for `n >= 1` (`x^0` is the identity).
    pub fn pow(&self, x: Element, n: u64) -> Result<Element> {
        let mut base = self.check(x)?;
        let mut n = n;
        let mut acc = self.inner.one;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.inner.mul_code(acc, base);
            }
            base = self.inner.mul_code(base, base);
            n >>= 1;
        }
        Ok(self.elem(acc))
    }

    /// `k * 1` for any signed integer `k`.
    pub fn scalar(&self, k: i128) -> Element {
        self.elem(self.inner.scalar_code(k))
    }

    pub fn is_idempotent(&self, x: Element) -> Result<bool> {
        let c = self.check(x)?;
        Ok(self.inner.mul_code(c, c) == c)
    }

    pub fn is_unit(&self, x: Element) -> Result<bool> {
        Ok(self.inner.unit_mask.get(self.check(x)?))
    }

    pub fn inverse(&self, x: Element) -> Result<Option<Element>> {
        let c = self.check(x)?;
        Ok(self.inner.inverse_code(c).map(|i| self.elem(i)))
    }

    // -- caches ---------------------------------------------------------------

    /// Sorted codes of the group of units.
    pub fn unit_codes(&self) -> &[u64] {
        &self.inner.units
    }

    pub fn units(&self) -> impl Iterator<Item = Element> + '_ {
        let id = self.inner.id;
        self.inner.units.iter().map(move |&c| Element::raw(id, c))
    }

    /// Sorted codes of `{x : x^2 = x}`.
    pub fn idempotent_codes(&self) -> &[u64] {
        &self.inner.idempotents
    }

    pub fn idempotents(&self) -> impl Iterator<Item = Element> + '_ {
        let id = self.inner.id;
        self.inner
            .idempotents
            .iter()
            .map(move |&c| Element::raw(id, c))
    }

    /// The Jacobson radical `{x : forall y, 1 - xy is a unit}`, computed
    /// lazily (structurally where the construction allows, by definition
    /// otherwise) and cached.
    pub fn jacobson_radical(&self) -> crate::ideal::IdealSet {
        let members = self
            .inner
            .radical
            .get_or_init(|| Box::new(Arc::new(compute_radical(self))))
            .clone();
        crate::ideal::IdealSet::trusted(self.clone(), members)
    }

    /// The radical straight from its definition, as an independent oracle
    /// for the structural computation. Quadratic in the cardinality.
    pub fn jacobson_radical_by_definition(&self) -> crate::ideal::IdealSet {
        let members = definitional_radical(&self.inner);
        crate::ideal::IdealSet::trusted(self.clone(), Arc::new(members))
    }

    // -- predicates -----------------------------------------------------------

    /// All idempotents central.
    pub fn is_abelian(&self) -> bool {
        *self.inner.abelian.get_or_init(|| {
            Box::new(match self.abelian_structural() {
                Some(v) => v,
                None => self.inner.idempotents.iter().all(|&e| {
                    (0..self.inner.card).all(|x| {
                        self.inner.mul_code(e, x) == self.inner.mul_code(x, e)
                    })
                }),
            })
        })
    }

    /// Only idempotents are 0 and 1.
    pub fn is_connected(&self) -> bool {
        if self.inner.card == 1 {
            return true;
        }
        self.inner.idempotents.len() == 2
    }

    /// Nonzero ring whose non-units are exactly the radical (equivalently,
    /// the quotient by the radical is a division ring).
    pub fn is_local(&self) -> bool {
        if self.inner.card == 1 {
            return false;
        }
        let rad = self.jacobson_radical();
        self.inner.units.len() as u64 + rad.len() == self.inner.card
    }

    pub fn is_commutative(&self) -> bool {
        *self.inner.commutative.get_or_init(|| {
            Box::new(match self.commutative_structural() {
                Some(v) => v,
                None => (0..self.inner.card).all(|a| {
                    (a + 1..self.inner.card)
                        .all(|b| self.inner.mul_code(a, b) == self.inner.mul_code(b, a))
                }),
            })
        })
    }

    fn commutative_structural(&self) -> Option<bool> {
        if self.inner.card == 1 {
            return Some(true);
        }
        match &self.inner.repr {
            Repr::Zn { .. } | Repr::Gf { .. } => Some(true),
            Repr::Mat { dim, base } | Repr::UpperTri { dim, base, .. } => {
                if *dim == 1 {
                    Some(base.is_commutative())
                } else {
                    // E11 and E12 fail to commute whenever the base is nonzero.
                    Some(false)
                }
            }
            Repr::Prod { factors, .. } => Some(factors.iter().all(|f| f.is_commutative())),
            Repr::Quot { base, .. } | Repr::Corner { base, .. } => {
                if base.is_commutative() {
                    Some(true)
                } else {
                    None
                }
            }
            Repr::Table { .. } => None,
        }
    }

    fn abelian_structural(&self) -> Option<bool> {
        if self.inner.card == 1 {
            return Some(true);
        }
        if let Some(true) = self.commutative_structural() {
            return Some(true);
        }
        match &self.inner.repr {
            Repr::Mat { dim, base } | Repr::UpperTri { dim, base, .. } => {
                if *dim >= 2 && base.cardinality() >= 2 {
                    // E11 is a non-central idempotent.
                    Some(false)
                } else {
                    None
                }
            }
            Repr::Prod { factors, .. } => Some(factors.iter().all(|f| f.is_abelian())),
            _ => None,
        }
    }

    // -- structure maps --------------------------------------------------------

    /// The ring of `dim x dim` matrices over this ring, sharing its caches.
    pub fn matrix_ring_over(&self, dim: usize) -> Result<FiniteRing> {
        if dim == 0 {
            return Err(RingError::InvalidExpr("M(0, _) has no identity".into()));
        }
        let cells = dim * dim;
        if cells > MAX_CELLS {
            return Err(RingError::InvalidExpr(format!(
                "matrix dimension {dim} is too large"
            )));
        }
        let caps = self.inner.caps;
        let mut card = 1u64;
        for _ in 0..cells {
            card = card
                .checked_mul(self.inner.card)
                .filter(|&c| c <= caps.enumeration_cap)
                .ok_or(RingError::CapExceeded {
                    what: "enumeration",
                    limit: caps.enumeration_cap,
                    attempted: u64::MAX,
                })?;
        }
        let expr = RingExpr::Mat {
            size: dim,
            base: Box::new(self.inner.expr.clone()),
        };
        FiniteRing::assemble(
            expr,
            card,
            Repr::Mat {
                dim,
                base: self.clone(),
            },
            caps,
        )
    }

    /// The corner ring `eRe` with identity `e`.
    pub fn corner(&self, e: Element) -> Result<FiniteRing> {
        let c = self.check(e)?;
        FiniteRing::build_corner(self, c)
    }

    /// Quotient by a (verified) ideal, together with the projection map.
    pub fn quotient(
        &self,
        ideal: &crate::ideal::IdealSet,
    ) -> Result<(FiniteRing, crate::ideal::Projection)> {
        crate::ideal::quotient(self, ideal)
    }

    /// Smallest ideal containing the given elements.
    pub fn ideal_closure(&self, gens: &[Element]) -> Result<crate::ideal::IdealSet> {
        crate::ideal::ideal_closure(self, gens)
    }

    // -- literals ----------------------------------------------------------------

    /// Resolves an element literal (`3`, `[[1,0],[0,1]]`, `(1,2)`, ...).
    pub fn resolve_literal(&self, lit: &ElemLit) -> Result<Element> {
        let code = self.resolve_literal_code(lit)?;
        Ok(self.elem(code))
    }

    fn resolve_literal_code(&self, lit: &ElemLit) -> Result<u64> {
        let inner = &self.inner;
        if inner.card == 1 {
            return Ok(0);
        }
        match (&inner.repr, lit) {
            (Repr::Zn { .. } | Repr::Gf { .. } | Repr::Table { .. }, ElemLit::Int(v)) => {
                let mag = v.unsigned_abs();
                if mag >= inner.card {
                    return Err(RingError::BadLiteral(format!(
                        "{v} out of range for cardinality {}",
                        inner.card
                    )));
                }
                // The code of k >= 0 is k itself; negative literals
                // denote additive inverses.
                Ok(if *v < 0 { inner.neg_code(mag) } else { mag })
            }
            (Repr::Mat { dim, base }, ElemLit::List(rows)) => {
                if rows.len() != *dim {
                    return Err(RingError::BadLiteral(format!("expected {dim} rows")));
                }
                let mut digits = [0u64; MAX_CELLS];
                for (r, row) in rows.iter().enumerate() {
                    let ElemLit::List(entries) = row else {
                        return Err(RingError::BadLiteral("expected a row list".into()));
                    };
                    if entries.len() != *dim {
                        return Err(RingError::BadLiteral(format!("expected {dim} columns")));
                    }
                    for (c, entry) in entries.iter().enumerate() {
                        digits[r * dim + c] = base.resolve_literal_code(entry)?;
                    }
                }
                Ok(encode_digits(&digits[..dim * dim], base.cardinality()))
            }
            (Repr::UpperTri { dim, base, cells }, ElemLit::List(rows)) => {
                if rows.len() != *dim {
                    return Err(RingError::BadLiteral(format!("expected {dim} rows")));
                }
                let mut full = [0u64; MAX_CELLS];
                for (r, row) in rows.iter().enumerate() {
                    let ElemLit::List(entries) = row else {
                        return Err(RingError::BadLiteral("expected a row list".into()));
                    };
                    if entries.len() != *dim {
                        return Err(RingError::BadLiteral(format!("expected {dim} columns")));
                    }
                    for (c, entry) in entries.iter().enumerate() {
                        full[r * dim + c] = base.resolve_literal_code(entry)?;
                    }
                }
                let bzero = base.inner.zero;
                for r in 0..*dim {
                    for c in 0..r {
                        if full[r * dim + c] != bzero {
                            return Err(RingError::BadLiteral(
                                "nonzero entry below the diagonal".into(),
                            ));
                        }
                    }
                }
                let mut digits = [0u64; MAX_CELLS];
                for (i, &(r, c)) in cells.iter().enumerate() {
                    digits[i] = full[r * dim + c];
                }
                Ok(encode_digits(&digits[..cells.len()], base.cardinality()))
            }
            (Repr::Prod { factors, radices }, ElemLit::Tuple(items)) => {
                if items.len() != factors.len() {
                    return Err(RingError::BadLiteral(format!(
                        "expected a {}-tuple",
                        factors.len()
                    )));
                }
                let mut digits = [0u64; MAX_CELLS];
                for (i, (f, item)) in factors.iter().zip(items).enumerate() {
                    digits[i] = f.resolve_literal_code(item)?;
                }
                Ok(encode_mixed(&digits[..factors.len()], radices))
            }
            (Repr::Quot { base, coset, .. }, lit) => {
                let b = base.resolve_literal_code(lit)?;
                Ok(coset[b as usize] as u64)
            }
            (Repr::Corner { base, carrier, idem }, lit) => {
                let b = base.resolve_literal_code(lit)?;
                let e = *idem;
                if base.inner.mul_code(base.inner.mul_code(e, b), e) != b {
                    return Err(RingError::BadLiteral(
                        "element does not lie in the corner".into(),
                    ));
                }
                Ok(carrier.binary_search(&b).unwrap() as u64)
            }
            // Integer literals in composite rings denote k * 1.
            (_, ElemLit::Int(v)) => Ok(inner.scalar_code(*v as i128)),
            _ => Err(RingError::BadLiteral(format!(
                "literal {lit} does not match ring {}",
                inner.expr
            ))),
        }
    }

    /// Renders an element in the literal syntax accepted back by
    /// [`FiniteRing::resolve_literal`].
    pub fn render(&self, x: Element) -> Result<String> {
        let c = self.check(x)?;
        Ok(self.render_code_str(c))
    }

    pub(crate) fn render_code(&self, code: u64) -> ElemLit {
        let inner = &self.inner;
        match &inner.repr {
            Repr::Zn { .. } | Repr::Gf { .. } | Repr::Table { .. } => ElemLit::Int(code as i64),
            Repr::Mat { dim, base } => {
                let mut digits = [0u64; MAX_CELLS];
                decode_digits(code, base.cardinality(), &mut digits[..dim * dim]);
                let rows = (0..*dim)
                    .map(|r| {
                        ElemLit::List(
                            (0..*dim)
                                .map(|c| base.render_code(digits[r * dim + c]))
                                .collect(),
                        )
                    })
                    .collect();
                ElemLit::List(rows)
            }
            Repr::UpperTri { dim, base, cells } => {
                let mut digits = [0u64; MAX_CELLS];
                decode_digits(code, base.cardinality(), &mut digits[..cells.len()]);
                let mut full = vec![base.inner.zero; dim * dim];
                for (i, &(r, c)) in cells.iter().enumerate() {
                    full[r * dim + c] = digits[i];
                }
                let rows = (0..*dim)
                    .map(|r| {
                        ElemLit::List(
                            (0..*dim)
                                .map(|c| base.render_code(full[r * dim + c]))
                                .collect(),
                        )
                    })
                    .collect();
                ElemLit::List(rows)
            }
            Repr::Prod { factors, radices } => {
                let mut digits = [0u64; MAX_CELLS];
                decode_mixed(code, radices, &mut digits[..factors.len()]);
                ElemLit::Tuple(
                    factors
                        .iter()
                        .enumerate()
                        .map(|(i, f)| f.render_code(digits[i]))
                        .collect(),
                )
            }
            Repr::Quot { base, reps, .. } => base.render_code(reps[code as usize]),
            Repr::Corner { base, carrier, .. } => base.render_code(carrier[code as usize]),
        }
    }

    fn render_code_str(&self, code: u64) -> String {
        self.render_code(code).to_string()
    }

    // -- internal access for sibling modules -----------------------------------

    pub(crate) fn inner(&self) -> &RingInner {
        &self.inner
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.expr)
    }
}

impl RingInner {
    pub(crate) fn card(&self) -> u64 {
        self.card
    }

    pub(crate) fn zero_code(&self) -> u64 {
        self.zero
    }

    pub(crate) fn one_code(&self) -> u64 {
        self.one
    }

    pub(crate) fn repr(&self) -> &Repr {
        &self.repr
    }

    pub(crate) fn unit_mask(&self) -> &BitSet {
        &self.unit_mask
    }

    /// Raw Cayley tables when this ring is small enough to carry them:
    /// `(add, mul, neg)` with row-major `card x card` layout.
    pub(crate) fn op_tables(&self) -> Option<(&[u16], &[u16], &[u16])> {
        self.ops
            .as_ref()
            .map(|t| (&t.add[..], &t.mul[..], &t.neg[..]))
    }

    pub(crate) fn add_code(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.ops {
            return t.add[(a * self.card + b) as usize] as u64;
        }
        add_structural(&self.repr, self.card, a, b)
    }

    pub(crate) fn neg_code(&self, a: u64) -> u64 {
        if let Some(t) = &self.ops {
            return t.neg[a as usize] as u64;
        }
        neg_structural(&self.repr, self.card, a)
    }

    pub(crate) fn sub_code(&self, a: u64, b: u64) -> u64 {
        self.add_code(a, self.neg_code(b))
    }

    pub(crate) fn mul_code(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = &self.ops {
            return t.mul[(a * self.card + b) as usize] as u64;
        }
        mul_structural(&self.repr, self.card, a, b)
    }

    pub(crate) fn is_unit_code(&self, a: u64) -> bool {
        self.unit_mask.get(a)
    }

    pub(crate) fn inverse_code(&self, a: u64) -> Option<u64> {
        self.units
            .binary_search(&a)
            .ok()
            .map(|i| self.unit_inv[i])
    }

    pub(crate) fn scalar_code(&self, k: i128) -> u64 {
        let mut acc = self.zero;
        let mut addend = self.one;
        let mut n = k.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_code(acc, addend);
            }
            addend = self.add_code(addend, addend);
            n >>= 1;
        }
        if k < 0 {
            self.neg_code(acc)
        } else {
            acc
        }
    }
}

// ---------------------------------------------------------------------------
// Structural arithmetic
// ---------------------------------------------------------------------------

fn add_structural(repr: &Repr, card: u64, a: u64, b: u64) -> u64 {
    if card == 1 {
        return 0;
    }
    match repr {
        Repr::Zn { n } => (a + b) % n,
        Repr::Gf { p, deg, .. } => {
            let mut da = [0u64; 8];
            let mut db = [0u64; 8];
            decode_digits(a, *p, &mut da[..*deg]);
            decode_digits(b, *p, &mut db[..*deg]);
            for i in 0..*deg {
                da[i] = (da[i] + db[i]) % p;
            }
            encode_digits(&da[..*deg], *p)
        }
        Repr::Mat { dim, base } => cellwise(base, dim * dim, a, b, |x, y| {
            base.inner().add_code(x, y)
        }),
        Repr::UpperTri { base, cells, .. } => cellwise(base, cells.len(), a, b, |x, y| {
            base.inner().add_code(x, y)
        }),
        Repr::Prod { factors, radices } => {
            let mut da = [0u64; MAX_CELLS];
            let mut db = [0u64; MAX_CELLS];
            decode_mixed(a, radices, &mut da[..factors.len()]);
            decode_mixed(b, radices, &mut db[..factors.len()]);
            for (i, f) in factors.iter().enumerate() {
                da[i] = f.inner().add_code(da[i], db[i]);
            }
            encode_mixed(&da[..factors.len()], radices)
        }
        Repr::Quot {
            base, coset, reps, ..
        } => coset[base.inner().add_code(reps[a as usize], reps[b as usize]) as usize] as u64,
        Repr::Corner { base, carrier, .. } => {
            let s = base.inner().add_code(carrier[a as usize], carrier[b as usize]);
            carrier.binary_search(&s).expect("corner closed under +") as u64
        }
        Repr::Table { add, .. } => add[(a * card + b) as usize] as u64,
    }
}

fn neg_structural(repr: &Repr, card: u64, a: u64) -> u64 {
    if card == 1 {
        return 0;
    }
    match repr {
        Repr::Zn { n } => (n - a) % n,
        Repr::Gf { p, deg, .. } => {
            let mut da = [0u64; 8];
            decode_digits(a, *p, &mut da[..*deg]);
            for d in da[..*deg].iter_mut() {
                *d = (*p - *d) % p;
            }
            encode_digits(&da[..*deg], *p)
        }
        Repr::Mat { dim, base } => cellmap(base, dim * dim, a, |x| base.inner().neg_code(x)),
        Repr::UpperTri { base, cells, .. } => {
            cellmap(base, cells.len(), a, |x| base.inner().neg_code(x))
        }
        Repr::Prod { factors, radices } => {
            let mut da = [0u64; MAX_CELLS];
            decode_mixed(a, radices, &mut da[..factors.len()]);
            for (i, f) in factors.iter().enumerate() {
                da[i] = f.inner().neg_code(da[i]);
            }
            encode_mixed(&da[..factors.len()], radices)
        }
        Repr::Quot {
            base, coset, reps, ..
        } => coset[base.inner().neg_code(reps[a as usize]) as usize] as u64,
        Repr::Corner { base, carrier, .. } => {
            let s = base.inner().neg_code(carrier[a as usize]);
            carrier.binary_search(&s).expect("corner closed under -") as u64
        }
        Repr::Table { neg, .. } => neg[a as usize] as u64,
    }
}

fn mul_structural(repr: &Repr, card: u64, a: u64, b: u64) -> u64 {
    if card == 1 {
        return 0;
    }
    match repr {
        Repr::Zn { n } => (a * b) % n,
        Repr::Gf { p, deg, poly } => {
            let mut da = [0u64; 8];
            let mut db = [0u64; 8];
            decode_digits(a, *p, &mut da[..*deg]);
            decode_digits(b, *p, &mut db[..*deg]);
            let prod = poly_mul(&da[..*deg], &db[..*deg], *p);
            let rem = poly_rem(&prod, poly, *p);
            let mut digits = [0u64; 8];
            digits[..rem.len().min(*deg)]
                .copy_from_slice(&rem[..rem.len().min(*deg)]);
            encode_digits(&digits[..*deg], *p)
        }
        Repr::Mat { dim, base } => {
            let bc = base.cardinality();
            let bi = base.inner();
            let mut da = [0u64; MAX_CELLS];
            let mut db = [0u64; MAX_CELLS];
            let mut dc = [0u64; MAX_CELLS];
            decode_digits(a, bc, &mut da[..dim * dim]);
            decode_digits(b, bc, &mut db[..dim * dim]);
            matrix::full_mat_mul(bi, *dim, &da, &db, &mut dc);
            encode_digits(&dc[..dim * dim], bc)
        }
        Repr::UpperTri { dim, base, cells } => {
            let bc = base.cardinality();
            let bi = base.inner();
            let mut ca = [0u64; MAX_CELLS];
            let mut cb = [0u64; MAX_CELLS];
            decode_digits(a, bc, &mut ca[..cells.len()]);
            decode_digits(b, bc, &mut cb[..cells.len()]);
            let mut fa = [0u64; MAX_CELLS];
            let mut fb = [0u64; MAX_CELLS];
            let mut fc = [0u64; MAX_CELLS];
            expand_ut(bi, *dim, cells, &ca, &mut fa);
            expand_ut(bi, *dim, cells, &cb, &mut fb);
            matrix::full_mat_mul(bi, *dim, &fa, &fb, &mut fc);
            let mut out = [0u64; MAX_CELLS];
            for (i, &(r, c)) in cells.iter().enumerate() {
                out[i] = fc[r * dim + c];
            }
            encode_digits(&out[..cells.len()], bc)
        }
        Repr::Prod { factors, radices } => {
            let mut da = [0u64; MAX_CELLS];
            let mut db = [0u64; MAX_CELLS];
            decode_mixed(a, radices, &mut da[..factors.len()]);
            decode_mixed(b, radices, &mut db[..factors.len()]);
            for (i, f) in factors.iter().enumerate() {
                da[i] = f.inner().mul_code(da[i], db[i]);
            }
            encode_mixed(&da[..factors.len()], radices)
        }
        Repr::Quot {
            base, coset, reps, ..
        } => coset[base.inner().mul_code(reps[a as usize], reps[b as usize]) as usize] as u64,
        Repr::Corner { base, carrier, .. } => {
            let s = base.inner().mul_code(carrier[a as usize], carrier[b as usize]);
            carrier.binary_search(&s).expect("corner closed under *") as u64
        }
        Repr::Table { mul, .. } => mul[(a * card + b) as usize] as u64,
    }
}

fn cellwise(
    base: &FiniteRing,
    cells: usize,
    a: u64,
    b: u64,
    op: impl Fn(u64, u64) -> u64,
) -> u64 {
    let bc = base.cardinality();
    let mut da = [0u64; MAX_CELLS];
    let mut db = [0u64; MAX_CELLS];
    decode_digits(a, bc, &mut da[..cells]);
    decode_digits(b, bc, &mut db[..cells]);
    for i in 0..cells {
        da[i] = op(da[i], db[i]);
    }
    encode_digits(&da[..cells], bc)
}

fn cellmap(base: &FiniteRing, cells: usize, a: u64, op: impl Fn(u64) -> u64) -> u64 {
    let bc = base.cardinality();
    let mut da = [0u64; MAX_CELLS];
    decode_digits(a, bc, &mut da[..cells]);
    for d in da[..cells].iter_mut() {
        *d = op(*d);
    }
    encode_digits(&da[..cells], bc)
}

pub(crate) fn expand_ut(
    base: &RingInner,
    dim: usize,
    cells: &[(usize, usize)],
    packed: &[u64],
    full: &mut [u64],
) {
    for slot in full[..dim * dim].iter_mut() {
        *slot = base.zero_code();
    }
    for (i, &(r, c)) in cells.iter().enumerate() {
        full[r * dim + c] = packed[i];
    }
}

fn compute_zero(repr: &Repr, card: u64) -> u64 {
    if card == 1 {
        return 0;
    }
    match repr {
        Repr::Quot { base, coset, .. } => coset[base.inner().zero_code() as usize] as u64,
        Repr::Corner { base, carrier, .. } => carrier
            .binary_search(&base.inner().zero_code())
            .expect("0 = e0e lies in the corner") as u64,
        Repr::Table { add, .. } => (0..card)
            .find(|&z| (0..card).all(|i| add[(z * card + i) as usize] as u64 == i))
            .expect("validated before assembly"),
        // All-zero digit strings (and 0 itself) encode to 0.
        _ => 0,
    }
}

fn compute_one(repr: &Repr, card: u64, zero: u64) -> u64 {
    if card == 1 {
        return zero;
    }
    match repr {
        Repr::Zn { .. } | Repr::Gf { .. } => 1,
        Repr::Mat { dim, base } => {
            let mut digits = [0u64; MAX_CELLS];
            for r in 0..*dim {
                digits[r * dim + r] = base.inner().one_code();
            }
            // Off-diagonal zero digits must be the base zero code.
            for r in 0..*dim {
                for c in 0..*dim {
                    if r != c {
                        digits[r * dim + c] = base.inner().zero_code();
                    }
                }
            }
            encode_digits(&digits[..dim * dim], base.cardinality())
        }
        Repr::UpperTri { base, cells, .. } => {
            let mut digits = [0u64; MAX_CELLS];
            for (i, &(r, c)) in cells.iter().enumerate() {
                digits[i] = if r == c {
                    base.inner().one_code()
                } else {
                    base.inner().zero_code()
                };
            }
            encode_digits(&digits[..cells.len()], base.cardinality())
        }
        Repr::Prod { factors, radices } => {
            let mut digits = [0u64; MAX_CELLS];
            for (i, f) in factors.iter().enumerate() {
                digits[i] = f.inner().one_code();
            }
            encode_mixed(&digits[..factors.len()], radices)
        }
        Repr::Quot { base, coset, .. } => coset[base.inner().one_code() as usize] as u64,
        Repr::Corner { carrier, idem, .. } => {
            carrier.binary_search(idem).expect("e = eee lies in the corner") as u64
        }
        Repr::Table { .. } => unreachable!("one is supplied by the table"),
    }
}

fn build_op_tables(repr: &Repr, card: u64, _zero: u64) -> Option<OpTables> {
    if card > OP_TABLE_CAP {
        return None;
    }
    let n = card as usize;
    let mut add = vec![0u16; n * n];
    let mut mul = vec![0u16; n * n];
    let mut neg = vec![0u16; n];
    for a in 0..card {
        neg[a as usize] = neg_structural(repr, card, a) as u16;
        for b in 0..card {
            add[(a * card + b) as usize] = add_structural(repr, card, a, b) as u16;
            mul[(a * card + b) as usize] = mul_structural(repr, card, a, b) as u16;
        }
    }
    Some(OpTables {
        add: add.into_boxed_slice(),
        mul: mul.into_boxed_slice(),
        neg: neg.into_boxed_slice(),
    })
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

struct OpsView<'a> {
    repr: &'a Repr,
    ops: &'a Option<OpTables>,
    card: u64,
}

impl OpsView<'_> {
    fn add(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = self.ops {
            t.add[(a * self.card + b) as usize] as u64
        } else {
            add_structural(self.repr, self.card, a, b)
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        if let Some(t) = self.ops {
            t.mul[(a * self.card + b) as usize] as u64
        } else {
            mul_structural(self.repr, self.card, a, b)
        }
    }
    fn neg(&self, a: u64) -> u64 {
        if let Some(t) = self.ops {
            t.neg[a as usize] as u64
        } else {
            neg_structural(self.repr, self.card, a)
        }
    }
}

/// Exhaustive axiom verification up to the cap, pseudo-random spot checks
/// above it.
fn verify_axioms(
    repr: &Repr,
    ops: &Option<OpTables>,
    card: u64,
    zero: u64,
    one: u64,
    caps: &Caps,
) -> Result<()> {
    let v = OpsView { repr, ops, card };
    let fail = |msg: String| Err(RingError::AxiomViolation(msg));
    let check_triple = |a: u64, b: u64, c: u64| -> Result<()> {
        if v.add(v.add(a, b), c) != v.add(a, v.add(b, c)) {
            return fail(format!("addition not associative at ({a},{b},{c})"));
        }
        if v.mul(v.mul(a, b), c) != v.mul(a, v.mul(b, c)) {
            return fail(format!("multiplication not associative at ({a},{b},{c})"));
        }
        if v.mul(a, v.add(b, c)) != v.add(v.mul(a, b), v.mul(a, c)) {
            return fail(format!("left distributivity fails at ({a},{b},{c})"));
        }
        if v.mul(v.add(a, b), c) != v.add(v.mul(a, c), v.mul(b, c)) {
            return fail(format!("right distributivity fails at ({a},{b},{c})"));
        }
        Ok(())
    };
    let check_single = |a: u64| -> Result<()> {
        if v.add(a, zero) != a || v.add(zero, a) != a {
            return fail(format!("additive identity fails at {a}"));
        }
        if v.mul(a, one) != a || v.mul(one, a) != a {
            return fail(format!("multiplicative identity fails at {a}"));
        }
        if v.add(a, v.neg(a)) != zero {
            return fail(format!("additive inverse fails at {a}"));
        }
        Ok(())
    };
    if card <= caps.axiom_check_cap {
        for a in 0..card {
            check_single(a)?;
            for b in 0..card {
                if v.add(a, b) != v.add(b, a) {
                    return fail(format!("addition not commutative at ({a},{b})"));
                }
                for c in 0..card {
                    check_triple(a, b, c)?;
                }
            }
        }
    } else {
        let mut state = caps.seed ^ card.rotate_left(17);
        for _ in 0..caps.axiom_samples {
            let a = splitmix64(&mut state) % card;
            let b = splitmix64(&mut state) % card;
            let c = splitmix64(&mut state) % card;
            check_single(a)?;
            if v.add(a, b) != v.add(b, a) {
                return fail(format!("addition not commutative at ({a},{b})"));
            }
            check_triple(a, b, c)?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Cache computation: units, idempotents, radical
// ---------------------------------------------------------------------------

/// Unit detection by iterating powers: in a finite ring, `x` is a unit
/// exactly when some power `x^m` equals 1, in which case `x^{m-1}` is the
/// inverse. Floyd cycle detection bounds the iteration.
fn orbit_inverse(v: &OpsView<'_>, one: u64, x: u64) -> Option<u64> {
    if x == one {
        return Some(one);
    }
    let mut prev = x;
    let mut slow = v.mul(x, x);
    let mut fast = v.mul(slow, slow);
    loop {
        if slow == one {
            return Some(prev);
        }
        if slow == fast {
            return None;
        }
        prev = slow;
        slow = v.mul(slow, x);
        fast = v.mul(v.mul(fast, x), x);
    }
}

fn compute_units(
    repr: &Repr,
    ops: &Option<OpTables>,
    card: u64,
    one: u64,
) -> (Vec<u64>, Vec<u64>) {
    let v = OpsView { repr, ops, card };
    let mut units = Vec::new();
    let mut invs = Vec::new();
    if card == 1 {
        // The zero ring: 0 is its own unit.
        return (vec![0], vec![0]);
    }
    match repr {
        Repr::Zn { n } => {
            for a in 0..*n {
                if gcd(a, *n) == 1 {
                    units.push(a);
                    invs.push(mod_inverse(a, *n).expect("coprime"));
                }
            }
        }
        Repr::Gf { p, deg, poly } => {
            for a in 1..card {
                let mut da = [0u64; 8];
                decode_digits(a, *p, &mut da[..*deg]);
                let inv =
                    poly_inverse(&da[..*deg], poly, *p).expect("nonzero in a field");
                let mut digits = [0u64; 8];
                digits[..inv.len().min(*deg)].copy_from_slice(&inv[..inv.len().min(*deg)]);
                units.push(a);
                invs.push(encode_digits(&digits[..*deg], *p));
            }
        }
        Repr::Mat { dim, base } if *dim <= 4 && base.is_commutative() => {
            let bc = base.cardinality();
            let bi = base.inner();
            let perms = matrix::permutations(*dim);
            let sub_perms = matrix::permutations(dim.saturating_sub(1));
            let mut digits = [0u64; MAX_CELLS];
            for code in 0..card {
                decode_digits(code, bc, &mut digits[..dim * dim]);
                let det = matrix::det_digits(bi, *dim, &digits, &perms);
                if !bi.is_unit_code(det) {
                    continue;
                }
                let det_inv = bi.inverse_code(det).expect("unit");
                let inv =
                    matrix::adjugate_scaled(bi, *dim, &digits, det_inv, &sub_perms);
                let inv_code = encode_digits(&inv[..dim * dim], bc);
                debug_assert_eq!(v.mul(code, inv_code), one);
                debug_assert_eq!(v.mul(inv_code, code), one);
                units.push(code);
                invs.push(inv_code);
            }
        }
        Repr::UpperTri { dim, base, cells } => {
            let bc = base.cardinality();
            let bi = base.inner();
            let mut packed = [0u64; MAX_CELLS];
            for code in 0..card {
                decode_digits(code, bc, &mut packed[..cells.len()]);
                let diag_units = cells
                    .iter()
                    .enumerate()
                    .filter(|(_, &(r, c))| r == c)
                    .all(|(i, _)| bi.is_unit_code(packed[i]));
                if !diag_units {
                    continue;
                }
                let inv_code = matrix::ut_inverse(bi, *dim, cells, &packed, bc);
                debug_assert_eq!(v.mul(code, inv_code), one);
                debug_assert_eq!(v.mul(inv_code, code), one);
                units.push(code);
                invs.push(inv_code);
            }
        }
        Repr::Prod { factors, radices } => {
            let k = factors.len();
            let mut digits = [0u64; MAX_CELLS];
            'outer: for code in 0..card {
                decode_mixed(code, radices, &mut digits[..k]);
                let mut inv = [0u64; MAX_CELLS];
                for (i, f) in factors.iter().enumerate() {
                    match f.inner().inverse_code(digits[i]) {
                        Some(ic) => inv[i] = ic,
                        None => continue 'outer,
                    }
                }
                units.push(code);
                invs.push(encode_mixed(&inv[..k], radices));
            }
        }
        Repr::Quot {
            base, coset, reps, ideal,
        } => {
            if ideal.len() == 1 {
                // Quotient by {0}: same carrier, same caches.
                for (i, &u) in base.unit_codes().iter().enumerate() {
                    units.push(coset[u as usize] as u64);
                    invs.push(coset[base.inner().unit_inv[i] as usize] as u64);
                }
                let mut paired: Vec<(u64, u64)> =
                    units.iter().copied().zip(invs.iter().copied()).collect();
                paired.sort_unstable();
                units = paired.iter().map(|p| p.0).collect();
                invs = paired.iter().map(|p| p.1).collect();
            } else {
                let rad = base.jacobson_radical();
                let contained = ideal.iter().all(|&j| rad.contains_code(j));
                if contained {
                    // Units lift modulo ideals inside the radical, so a coset
                    // is a unit exactly when its representative is.
                    for (q, &rep) in reps.iter().enumerate() {
                        if let Some(ic) = base.inner().inverse_code(rep) {
                            units.push(q as u64);
                            invs.push(coset[ic as usize] as u64);
                        }
                    }
                } else {
                    for x in 0..card {
                        if let Some(inv) = orbit_inverse(&v, one, x) {
                            units.push(x);
                            invs.push(inv);
                        }
                    }
                }
            }
        }
        _ => {
            for x in 0..card {
                if let Some(inv) = orbit_inverse(&v, one, x) {
                    units.push(x);
                    invs.push(inv);
                }
            }
        }
    }
    (units, invs)
}

fn compute_idempotents(repr: &Repr, ops: &Option<OpTables>, card: u64) -> Vec<u64> {
    let v = OpsView { repr, ops, card };
    (0..card).filter(|&x| v.mul(x, x) == x).collect()
}

/// Structural radical computation; falls back to the definition for table
/// rings and quotients by ideals that escape the radical.
fn compute_radical(ring: &FiniteRing) -> Vec<u64> {
    let inner = ring.inner();
    let card = inner.card;
    if card == 1 {
        return vec![0];
    }
    match &inner.repr {
        Repr::Zn { n } => {
            // rad(Z_n) is generated by the squarefree kernel of n.
            let mut kernel = 1u64;
            let mut m = *n;
            let mut d = 2u64;
            while d * d <= m {
                if m % d == 0 {
                    kernel *= d;
                    while m % d == 0 {
                        m /= d;
                    }
                }
                d += 1;
            }
            if m > 1 {
                kernel *= m;
            }
            (0..*n / kernel).map(|k| k * kernel).collect()
        }
        Repr::Gf { .. } => vec![0],
        Repr::Mat { dim, base } => {
            let base_rad = base.jacobson_radical();
            let members = base_rad.member_codes();
            odometer_codes(members, dim * dim, base.cardinality())
        }
        Repr::UpperTri { base, cells, .. } => {
            let base_rad = base.jacobson_radical();
            let rad_members = base_rad.member_codes();
            let all: Vec<u64> = (0..base.cardinality()).collect();
            let choices: Vec<&[u64]> = cells
                .iter()
                .map(|&(r, c)| {
                    if r == c {
                        rad_members
                    } else {
                        all.as_slice()
                    }
                })
                .collect();
            odometer_mixed(&choices, base.cardinality())
        }
        Repr::Prod { factors, radices } => {
            let rads: Vec<crate::ideal::IdealSet> =
                factors.iter().map(|f| f.jacobson_radical()).collect();
            let choices: Vec<&[u64]> = rads.iter().map(|r| r.member_codes()).collect();
            let mut out = Vec::new();
            let mut idx = vec![0usize; choices.len()];
            loop {
                let digits: Vec<u64> = idx
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| choices[i][j])
                    .collect();
                out.push(encode_mixed(&digits, radices));
                let mut i = 0;
                loop {
                    if i == idx.len() {
                        out.sort_unstable();
                        return out;
                    }
                    idx[i] += 1;
                    if idx[i] < choices[i].len() {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
            }
        }
        Repr::Quot {
            base, coset, ideal, ..
        } => {
            let rad = base.jacobson_radical();
            if ideal.iter().all(|&j| rad.contains_code(j)) {
                // rad(R/J) = rad(R)/J whenever J lies inside rad(R).
                let mut out: Vec<u64> = rad
                    .member_codes()
                    .iter()
                    .map(|&x| coset[x as usize] as u64)
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            } else {
                definitional_radical(inner)
            }
        }
        Repr::Corner { base, carrier, idem } => {
            // rad(eRe) = e rad(R) e.
            let rad = base.jacobson_radical();
            let bi = base.inner();
            let mut out: Vec<u64> = rad
                .member_codes()
                .iter()
                .map(|&x| {
                    let y = bi.mul_code(bi.mul_code(*idem, x), *idem);
                    carrier.binary_search(&y).expect("exe lies in the corner") as u64
                })
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        }
        Repr::Table { .. } => definitional_radical(inner),
    }
}

fn definitional_radical(inner: &RingInner) -> Vec<u64> {
    let card = inner.card();
    (0..card)
        .filter(|&x| {
            (0..card).all(|y| {
                inner.is_unit_code(inner.sub_code(inner.one_code(), inner.mul_code(x, y)))
            })
        })
        .collect()
}

/// All digit strings drawn from `choices` (uniform radix), encoded and sorted.
fn odometer_codes(choices: &[u64], cells: usize, radix: u64) -> Vec<u64> {
    let full: Vec<&[u64]> = (0..cells).map(|_| choices).collect();
    odometer_mixed(&full, radix)
}

fn odometer_mixed(choices: &[&[u64]], radix: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if choices.iter().any(|c| c.is_empty()) {
        return out;
    }
    let mut idx = vec![0usize; choices.len()];
    loop {
        let mut digits = [0u64; MAX_CELLS];
        for (i, &j) in idx.iter().enumerate() {
            digits[i] = choices[i][j];
        }
        out.push(encode_digits(&digits[..choices.len()], radix));
        let mut i = 0;
        loop {
            if i == idx.len() {
                out.sort_unstable();
                return out;
            }
            idx[i] += 1;
            if idx[i] < choices[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::RingExpr;

    pub(crate) fn zn(n: u64) -> RingExpr {
        RingExpr::Zn { modulus: n }
    }

    pub(crate) fn mat(k: usize, base: RingExpr) -> RingExpr {
        RingExpr::Mat {
            size: k,
            base: Box::new(base),
        }
    }

    #[test]
    fn zn6_units_and_idempotents() {
        let r = build_ring(&zn(6)).unwrap();
        assert_eq!(r.cardinality(), 6);
        assert_eq!(r.unit_codes(), &[1, 5]);
        assert_eq!(r.idempotent_codes(), &[0, 1, 3, 4]);
    }

    #[test]
    fn mat2_f2_counts() {
        let r = build_ring(&mat(2, zn(2))).unwrap();
        assert_eq!(r.cardinality(), 16);
        assert_eq!(r.unit_codes().len(), 6); // |GL_2(F_2)|
        assert_eq!(r.idempotent_codes().len(), 8);
    }

    #[test]
    fn zero_ring_is_legal() {
        let r = build_ring(&zn(1)).unwrap();
        assert_eq!(r.cardinality(), 1);
        assert_eq!(r.zero(), r.one());
        assert_eq!(r.unit_codes(), &[0]);
        assert_eq!(r.idempotent_codes(), &[0]);
    }

    #[test]
    fn zn4_units_and_radical() {
        let r = build_ring(&zn(4)).unwrap();
        assert_eq!(r.unit_codes(), &[1, 3]);
        let rad = r.jacobson_radical();
        assert_eq!(rad.member_codes(), &[0, 2]);
        let oracle = r.jacobson_radical_by_definition();
        assert_eq!(oracle.member_codes(), rad.member_codes());
    }

    #[test]
    fn gl2_f3_has_48_units() {
        let r = build_ring(&mat(2, zn(3))).unwrap();
        assert_eq!(r.unit_codes().len(), 48);
        assert_eq!(r.idempotent_codes().len(), 14);
        for (i, &u) in r.unit_codes().iter().enumerate() {
            let inv = r.inner().unit_inv[i];
            assert_eq!(r.inner().mul_code(u, inv), r.inner().one_code());
            assert_eq!(r.inner().mul_code(inv, u), r.inner().one_code());
        }
    }

    #[test]
    fn idempotents_of_z5_are_trivial() {
        let r = build_ring(&zn(5)).unwrap();
        assert_eq!(r.idempotent_codes(), &[0, 1]);
        assert!(r.is_connected());
    }

    #[test]
    fn gf4_is_a_field() {
        let r = build_ring(&RingExpr::GFp {
            prime: 2,
            poly: vec![1, 1, 1],
        })
        .unwrap();
        assert_eq!(r.cardinality(), 4);
        assert_eq!(r.unit_codes().len(), 3);
        assert!(r.is_commutative());
        // omega + omega^2 = 1 in F_4: codes 2 and 3.
        let w = r.element(2).unwrap();
        let w2 = r.mul(w, w).unwrap();
        assert_eq!(r.add(w, w2).unwrap(), r.one());
    }

    #[test]
    fn reducible_polynomial_is_rejected() {
        // 1 + x^2 = (1 + x)^2 over F_2.
        let err = build_ring(&RingExpr::GFp {
            prime: 2,
            poly: vec![1, 0, 1],
        })
        .unwrap_err();
        assert!(matches!(err, RingError::IrreduciblePoly(_)));
    }

    #[test]
    fn non_monic_and_non_prime_are_rejected() {
        assert!(matches!(
            build_ring(&RingExpr::GFp {
                prime: 4,
                poly: vec![1, 1, 1]
            }),
            Err(RingError::InvalidExpr(_))
        ));
        assert!(matches!(
            build_ring(&RingExpr::GFp {
                prime: 3,
                poly: vec![1, 2]
            }),
            Err(RingError::InvalidExpr(_))
        ));
    }

    #[test]
    fn radical_of_mat2_z4_is_matrices_over_2z4() {
        let r = build_ring(&mat(2, zn(4))).unwrap();
        let rad = r.jacobson_radical();
        assert_eq!(rad.len(), 16);
        // Every member decodes to entries in {0, 2}.
        for &m in rad.member_codes() {
            let mut digits = [0u64; MAX_CELLS];
            decode_digits(m, 4, &mut digits[..4]);
            assert!(digits[..4].iter().all(|&d| d == 0 || d == 2));
        }
        let oracle = r.jacobson_radical_by_definition();
        assert_eq!(oracle.member_codes(), rad.member_codes());
    }

    #[test]
    fn radical_of_semisimple_mat2_f2_is_zero() {
        let r = build_ring(&mat(2, zn(2))).unwrap();
        assert_eq!(r.jacobson_radical().member_codes(), &[0]);
    }

    #[test]
    fn predicates_match_the_classical_facts() {
        let z6 = build_ring(&zn(6)).unwrap();
        assert!(z6.is_abelian());
        assert!(!z6.is_connected());
        assert!(!z6.is_local());
        let z4 = build_ring(&zn(4)).unwrap();
        assert!(z4.is_local());
        let m2f2 = build_ring(&mat(2, zn(2))).unwrap();
        assert!(!m2f2.is_abelian());
        assert!(!m2f2.is_commutative());
        assert!(!m2f2.is_local());
    }

    #[test]
    fn literal_resolution_round_trips() {
        let r = build_ring(&mat(2, zn(3))).unwrap();
        let lit = ElemLit::List(vec![
            ElemLit::List(vec![ElemLit::Int(2), ElemLit::Int(2)]),
            ElemLit::List(vec![ElemLit::Int(2), ElemLit::Int(2)]),
        ]);
        let e = r.resolve_literal(&lit).unwrap();
        assert!(r.is_idempotent(e).unwrap());
        let rendered = r.render(e).unwrap();
        assert_eq!(rendered, "[[2,2],[2,2]]");
        // Integer literals in matrix rings denote k * 1.
        let two = r.resolve_literal(&ElemLit::Int(2)).unwrap();
        assert_eq!(two, r.scalar(2));
        let minus_one = r.resolve_literal(&ElemLit::Int(-1)).unwrap();
        assert_eq!(minus_one, r.neg(r.one()).unwrap());
    }

    #[test]
    fn mixed_ring_elements_are_rejected() {
        let a = build_ring(&zn(6)).unwrap();
        let b = build_ring(&zn(6)).unwrap();
        let x = a.element(3).unwrap();
        assert!(matches!(b.add(x, b.one()), Err(RingError::MixedRing)));
    }

    #[test]
    fn table_round_trip_and_rejection() {
        // Z_2 as an explicit table.
        let good = RawTable {
            order: 2,
            add: vec![0, 1, 1, 0],
            mul: vec![0, 0, 0, 1],
            one: 1,
        };
        let r = RingBuilder::new()
            .with_table("good", good.clone())
            .build(&RingExpr::Table {
                source: "good".into(),
            })
            .unwrap();
        assert_eq!(r.cardinality(), 2);
        assert_eq!(r.unit_codes(), &[1]);

        let mut bad = good;
        bad.mul = vec![0, 1, 1, 1]; // breaks distributivity/identity
        let err = RingBuilder::new()
            .with_table("bad", bad)
            .build(&RingExpr::Table {
                source: "bad".into(),
            })
            .unwrap_err();
        assert!(matches!(err, RingError::AxiomViolation(_)));
    }

    #[test]
    fn cap_exceeded_is_reported() {
        let caps = Caps {
            enumeration_cap: 10,
            ..Caps::default()
        };
        let err = RingBuilder::new()
            .with_caps(caps)
            .build(&mat(2, zn(2)))
            .unwrap_err();
        assert!(matches!(err, RingError::CapExceeded { .. }));
    }

    #[test]
    fn product_arithmetic_is_componentwise() {
        let r = build_ring(&RingExpr::Prod {
            factors: vec![zn(2), zn(3)],
        })
        .unwrap();
        assert_eq!(r.cardinality(), 6);
        // Chinese remainder: Z2 x Z3 has units (1,1) and (1,2).
        assert_eq!(r.unit_codes().len(), 2);
        assert_eq!(r.idempotent_codes().len(), 4);
    }

    #[test]
    fn triangular_literals_reject_entries_below_the_diagonal() {
        let r = build_ring(&RingExpr::UpperTri {
            size: 2,
            base: Box::new(zn(3)),
        })
        .unwrap();
        let bad = ElemLit::List(vec![
            ElemLit::List(vec![ElemLit::Int(1), ElemLit::Int(0)]),
            ElemLit::List(vec![ElemLit::Int(1), ElemLit::Int(1)]),
        ]);
        assert!(matches!(
            r.resolve_literal(&bad),
            Err(RingError::BadLiteral(_))
        ));
        let good = ElemLit::List(vec![
            ElemLit::List(vec![ElemLit::Int(1), ElemLit::Int(2)]),
            ElemLit::List(vec![ElemLit::Int(0), ElemLit::Int(1)]),
        ]);
        let x = r.resolve_literal(&good).unwrap();
        assert_eq!(r.render(x).unwrap(), "[[1,2],[0,1]]");
    }

    #[test]
    fn product_literals_are_tuples() {
        let r = build_ring(&RingExpr::Prod {
            factors: vec![zn(2), zn(3)],
        })
        .unwrap();
        let x = r
            .resolve_literal(&ElemLit::Tuple(vec![ElemLit::Int(1), ElemLit::Int(2)]))
            .unwrap();
        assert_eq!(r.render(x).unwrap(), "(1,2)");
        assert!(r.is_unit(x).unwrap());
        // Integer literals mean k * 1 = (k mod 2, k mod 3).
        let five = r.resolve_literal(&ElemLit::Int(5)).unwrap();
        assert_eq!(r.render(five).unwrap(), "(1,2)");
    }

    #[test]
    fn upper_triangular_units_need_unit_diagonal() {
        let r = build_ring(&RingExpr::UpperTri {
            size: 2,
            base: Box::new(zn(3)),
        })
        .unwrap();
        assert_eq!(r.cardinality(), 27);
        // Units: 2 * 2 diagonal choices * 3 strictly upper entries.
        assert_eq!(r.unit_codes().len(), 12);
        for &u in r.unit_codes() {
            let inv = r.inner().inverse_code(u).unwrap();
            assert_eq!(r.inner().mul_code(u, inv), r.inner().one_code());
        }
    }
}
