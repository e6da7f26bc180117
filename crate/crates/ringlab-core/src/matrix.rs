//! Matrix helpers: Leibniz determinants and adjugate inverses over
//! commutative bases, triangular inverses, exact integer determinants, and
//! a free-standing matrix-over-a-ring type used by the two-units
//! construction (whose ambient matrix ring may be far over the enumeration
//! cap).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::RingError;
use crate::expr::ElemLit;
use crate::ring::{decode_digits, encode_digits, expand_ut, Element, FiniteRing, RingInner, MAX_CELLS};
use crate::Result;

/// All permutations of `{0..n}` with their parity.
pub(crate) fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, true, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
    if k == items.len() {
        out.push((items.clone(), even));
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        let flipped = if i == k { even } else { !even };
        permute(items, k + 1, flipped, out);
        items.swap(k, i);
    }
}

pub(crate) fn full_mat_mul(base: &RingInner, dim: usize, a: &[u64], b: &[u64], out: &mut [u64]) {
    for r in 0..dim {
        for c in 0..dim {
            let mut acc = base.zero_code();
            for j in 0..dim {
                acc = base.add_code(acc, base.mul_code(a[r * dim + j], b[j * dim + c]));
            }
            out[r * dim + c] = acc;
        }
    }
}

fn full_mat_add(base: &RingInner, dim: usize, a: &[u64], b: &[u64], out: &mut [u64]) {
    for i in 0..dim * dim {
        out[i] = base.add_code(a[i], b[i]);
    }
}

/// Leibniz determinant of a decoded digit matrix over a commutative base.
pub(crate) fn det_digits(
    base: &RingInner,
    dim: usize,
    digits: &[u64],
    perms: &[(Vec<usize>, bool)],
) -> u64 {
    if dim == 0 {
        return base.one_code();
    }
    let mut acc = base.zero_code();
    for (perm, even) in perms {
        let mut term = base.one_code();
        for (r, &c) in perm.iter().enumerate() {
            term = base.mul_code(term, digits[r * dim + c]);
        }
        if !even {
            term = base.neg_code(term);
        }
        acc = base.add_code(acc, term);
    }
    acc
}

/// `scale * adj(A)` over a commutative base: with `scale = det(A)^{-1}`
/// this is the inverse matrix.
pub(crate) fn adjugate_scaled(
    base: &RingInner,
    dim: usize,
    digits: &[u64],
    scale: u64,
    sub_perms: &[(Vec<usize>, bool)],
) -> [u64; MAX_CELLS] {
    let mut out = [0u64; MAX_CELLS];
    if dim == 1 {
        out[0] = scale;
        return out;
    }
    let mut minor = [0u64; MAX_CELLS];
    for i in 0..dim {
        for j in 0..dim {
            // adj(A)[i][j] is the (j, i) cofactor.
            let mut t = 0;
            for r in 0..dim {
                if r == j {
                    continue;
                }
                for c in 0..dim {
                    if c == i {
                        continue;
                    }
                    minor[t] = digits[r * dim + c];
                    t += 1;
                }
            }
            let mut cof = det_digits(base, dim - 1, &minor, sub_perms);
            if (i + j) % 2 == 1 {
                cof = base.neg_code(cof);
            }
            out[i * dim + j] = base.mul_code(scale, cof);
        }
    }
    out
}

/// Inverse of an upper-triangular matrix with unit diagonal entries:
/// `M = D(I + X)` with `X` strictly upper (hence nilpotent), so
/// `M^{-1} = (I - X + X^2 - ...) D^{-1}`.
pub(crate) fn ut_inverse(
    base: &RingInner,
    dim: usize,
    cells: &[(usize, usize)],
    packed: &[u64],
    radix: u64,
) -> u64 {
    let zero = base.zero_code();
    let mut m = [0u64; MAX_CELLS];
    expand_ut(base, dim, cells, packed, &mut m);
    let mut dinv = [zero; MAX_CELLS];
    for r in 0..dim {
        dinv[r * dim + r] = base
            .inverse_code(m[r * dim + r])
            .expect("diagonal entries are units");
    }
    let mut neg_x = [zero; MAX_CELLS];
    for r in 0..dim {
        for c in r + 1..dim {
            neg_x[r * dim + c] =
                base.neg_code(base.mul_code(dinv[r * dim + r], m[r * dim + c]));
        }
    }
    let mut series = [zero; MAX_CELLS];
    let mut term = [zero; MAX_CELLS];
    for r in 0..dim {
        series[r * dim + r] = base.one_code();
        term[r * dim + r] = base.one_code();
    }
    let mut scratch = [zero; MAX_CELLS];
    for _ in 1..dim {
        full_mat_mul(base, dim, &term, &neg_x, &mut scratch);
        term[..dim * dim].copy_from_slice(&scratch[..dim * dim]);
        let snapshot = series;
        full_mat_add(base, dim, &snapshot, &term, &mut series);
    }
    full_mat_mul(base, dim, &series, &dinv, &mut scratch);
    let mut out = [0u64; MAX_CELLS];
    for (i, &(r, c)) in cells.iter().enumerate() {
        out[i] = scratch[r * dim + c];
    }
    encode_digits(&out[..cells.len()], radix)
}

impl FiniteRing {
    /// The matrix shape of this ring, when it is one.
    pub fn matrix_shape(&self) -> Option<(usize, FiniteRing)> {
        match self.inner().repr() {
            crate::ring::Repr::Mat { dim, base } => Some((*dim, base.clone())),
            _ => None,
        }
    }

    /// Leibniz determinant of a matrix-ring element, valued in the base.
    /// Restricted to commutative bases and dimension at most 4.
    pub fn det(&self, m: Element) -> Result<Element> {
        let code = self.check(m)?;
        let (dim, base) = self
            .matrix_shape()
            .ok_or_else(|| RingError::InvalidExpr("determinant requires a matrix ring".into()))?;
        if !base.is_commutative() {
            return Err(RingError::NotCommutativeBase);
        }
        if dim > 4 {
            return Err(RingError::UnsupportedDimension(dim));
        }
        let mut digits = [0u64; MAX_CELLS];
        decode_digits(code, base.cardinality(), &mut digits[..dim * dim]);
        let perms = permutations(dim);
        Ok(base.elem(det_digits(base.inner(), dim, &digits, &perms)))
    }

    /// Trace of a matrix-ring element, valued in the base.
    pub fn trace(&self, m: Element) -> Result<Element> {
        let code = self.check(m)?;
        let (dim, base) = self
            .matrix_shape()
            .ok_or_else(|| RingError::InvalidExpr("trace requires a matrix ring".into()))?;
        let mut digits = [0u64; MAX_CELLS];
        decode_digits(code, base.cardinality(), &mut digits[..dim * dim]);
        let bi = base.inner();
        let mut acc = bi.zero_code();
        for r in 0..dim {
            acc = bi.add_code(acc, digits[r * dim + r]);
        }
        Ok(base.elem(acc))
    }
}

// ---------------------------------------------------------------------------
// Exact integer linear algebra (the oracle side of the two-units construction)
// ---------------------------------------------------------------------------

/// Fraction-free (Bareiss) determinant of a row-major integer matrix.
pub fn int_det(m: &[i128], dim: usize) -> i128 {
    if dim == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..dim - 1 {
        if a[k * dim + k] == 0 {
            match (k + 1..dim).find(|&r| a[r * dim + k] != 0) {
                None => return 0,
                Some(r) => {
                    for c in 0..dim {
                        a.swap(k * dim + c, r * dim + c);
                    }
                    sign = -sign;
                }
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                a[i * dim + j] =
                    (a[i * dim + j] * a[k * dim + k] - a[i * dim + k] * a[k * dim + j]) / prev;
            }
            a[i * dim + k] = 0;
        }
        prev = a[k * dim + k];
    }
    sign * a[(dim - 1) * dim + (dim - 1)]
}

/// Integer inverse of a matrix with determinant +/-1, via the adjugate.
/// Returns `None` when the determinant is not a unit of the integers.
pub fn int_adjugate_inverse(m: &[i128], dim: usize) -> Option<Vec<i128>> {
    let det = int_det(m, dim);
    if det != 1 && det != -1 {
        return None;
    }
    let mut inv = vec![0i128; dim * dim];
    if dim == 1 {
        inv[0] = det;
        return Some(inv);
    }
    let mut minor = vec![0i128; (dim - 1) * (dim - 1)];
    for i in 0..dim {
        for j in 0..dim {
            let mut t = 0;
            for r in 0..dim {
                if r == j {
                    continue;
                }
                for c in 0..dim {
                    if c == i {
                        continue;
                    }
                    minor[t] = m[r * dim + c];
                    t += 1;
                }
            }
            let mut cof = int_det(&minor, dim - 1);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            // 1/det = det for det = +/-1.
            inv[i * dim + j] = det * cof;
        }
    }
    Some(inv)
}

// ---------------------------------------------------------------------------
// Matrices over a ring, independent of any built matrix ring
// ---------------------------------------------------------------------------

/// A square matrix with entries in a [`FiniteRing`]. Unlike elements of a
/// `M(k, ..)` carrier, these never require the ambient matrix ring to be
/// enumerable.
#[derive(Clone, PartialEq, Eq)]
pub struct RingMatrix {
    ring: FiniteRing,
    dim: usize,
    entries: Vec<u64>,
}

impl core::fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} over {}", self.render(), self.ring)
    }
}

impl RingMatrix {
    pub fn zero(ring: &FiniteRing, dim: usize) -> Self {
        RingMatrix {
            ring: ring.clone(),
            dim,
            entries: vec![ring.inner().zero_code(); dim * dim],
        }
    }

    pub fn identity(ring: &FiniteRing, dim: usize) -> Self {
        let mut m = Self::zero(ring, dim);
        for r in 0..dim {
            m.entries[r * dim + r] = ring.inner().one_code();
        }
        m
    }

    /// Maps integer entries through `k -> k * 1`.
    pub fn from_int_entries(ring: &FiniteRing, dim: usize, ints: &[i128]) -> Result<Self> {
        if ints.len() != dim * dim {
            return Err(RingError::InvalidExpr(format!(
                "expected {} entries",
                dim * dim
            )));
        }
        Ok(RingMatrix {
            ring: ring.clone(),
            dim,
            entries: ints.iter().map(|&k| ring.inner().scalar_code(k)).collect(),
        })
    }

    pub fn from_elements(ring: &FiniteRing, dim: usize, elems: &[Element]) -> Result<Self> {
        if elems.len() != dim * dim {
            return Err(RingError::InvalidExpr(format!(
                "expected {} entries",
                dim * dim
            )));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for &e in elems {
            entries.push(ring.check(e)?);
        }
        Ok(RingMatrix {
            ring: ring.clone(),
            dim,
            entries,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> Element {
        self.ring.elem(self.entries[r * self.dim + c])
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        if self.ring != other.ring || self.dim != other.dim {
            return Err(RingError::MixedRing);
        }
        Ok(RingMatrix {
            ring: self.ring.clone(),
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let inner = self.ring.inner();
        self.zip(other, |a, b| inner.add_code(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let inner = self.ring.inner();
        self.zip(other, |a, b| inner.sub_code(a, b))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring || self.dim != other.dim {
            return Err(RingError::MixedRing);
        }
        let inner = self.ring.inner();
        let dim = self.dim;
        let mut entries = vec![inner.zero_code(); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = inner.zero_code();
                for j in 0..dim {
                    acc = inner.add_code(
                        acc,
                        inner.mul_code(self.entries[r * dim + j], other.entries[j * dim + c]),
                    );
                }
                entries[r * dim + c] = acc;
            }
        }
        Ok(RingMatrix {
            ring: self.ring.clone(),
            dim,
            entries,
        })
    }

    pub fn is_identity(&self) -> bool {
        let inner = self.ring.inner();
        self.entries.iter().enumerate().all(|(i, &e)| {
            let (r, c) = (i / self.dim, i % self.dim);
            e == if r == c {
                inner.one_code()
            } else {
                inner.zero_code()
            }
        })
    }

    /// Row-major literal rendering, re-parsable as a `M(dim, ..)` element.
    pub fn to_literal(&self) -> ElemLit {
        ElemLit::List(
            (0..self.dim)
                .map(|r| {
                    ElemLit::List(
                        (0..self.dim)
                            .map(|c| self.ring.render_code(self.entries[r * self.dim + c]))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    pub fn render(&self) -> String {
        use alloc::string::ToString;
        self.to_literal().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::RingExpr;
    use crate::ring::build_ring;
    use alloc::boxed::Box;

    fn m2(n: u64) -> FiniteRing {
        build_ring(&RingExpr::Mat {
            size: 2,
            base: Box::new(RingExpr::Zn { modulus: n }),
        })
        .unwrap()
    }

    #[test]
    fn det_examples_over_z3() {
        let r = m2(3);
        let lit: ElemLit = ElemLit::List(alloc::vec![
            ElemLit::List(alloc::vec![ElemLit::Int(0), ElemLit::Int(1)]),
            ElemLit::List(alloc::vec![ElemLit::Int(2), ElemLit::Int(0)]),
        ]);
        let m = r.resolve_literal(&lit).unwrap();
        // 0*0 - 1*2 = -2 = 1 mod 3.
        assert_eq!(r.det(m).unwrap().code(), 1);
        assert_eq!(r.det(r.one()).unwrap().code(), 1);
        let tr_lit: ElemLit = ElemLit::List(alloc::vec![
            ElemLit::List(alloc::vec![ElemLit::Int(2), ElemLit::Int(0)]),
            ElemLit::List(alloc::vec![ElemLit::Int(2), ElemLit::Int(0)]),
        ]);
        let t = r.resolve_literal(&tr_lit).unwrap();
        assert_eq!(r.trace(t).unwrap().code(), 2);
    }

    #[test]
    fn det_detects_units_like_the_cache() {
        let r = m2(6);
        let base = r.matrix_shape().unwrap().1;
        for x in r.elements() {
            let d = r.det(x).unwrap();
            assert_eq!(
                r.is_unit(x).unwrap(),
                base.is_unit(d).unwrap(),
                "unit/determinant mismatch at code {}",
                x.code()
            );
        }
    }

    #[test]
    fn non_commutative_base_is_rejected() {
        let inner = build_ring(&RingExpr::Mat {
            size: 2,
            base: Box::new(RingExpr::Mat {
                size: 2,
                base: Box::new(RingExpr::Zn { modulus: 2 }),
            }),
        })
        .unwrap();
        let err = inner.det(inner.one()).unwrap_err();
        assert!(matches!(err, RingError::NotCommutativeBase));
    }

    #[test]
    fn bareiss_matches_leibniz_on_integers() {
        let m = [3i128, -1, 2, 5, 0, 7, -4, 2, 1];
        // Expansion by hand: 3*(0*1-7*2) - (-1)*(5*1-7*(-4)) + 2*(5*2-0*(-4))
        let expected = 3 * (0 - 14) + (5 + 28) + 2 * 10;
        assert_eq!(int_det(&m, 3), expected);
    }

    #[test]
    fn integer_adjugate_inverse_round_trips() {
        // Companion matrix of x^3 + x - 1 has determinant 1.
        let m = [0i128, 0, 1, 1, 0, -1, 0, 1, 0];
        let det = int_det(&m, 3);
        assert_eq!(det.abs(), 1);
        let inv = int_adjugate_inverse(&m, 3).unwrap();
        // m * inv = I over the integers.
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = 0i128;
                for j in 0..3 {
                    acc += m[r * 3 + j] * inv[j * 3 + c];
                }
                assert_eq!(acc, if r == c { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn ring_matrix_arithmetic() {
        let z6 = build_ring(&RingExpr::Zn { modulus: 6 }).unwrap();
        let a = RingMatrix::from_int_entries(&z6, 2, &[1, 2, 3, 4]).unwrap();
        let i = RingMatrix::identity(&z6, 2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert!(a.sub(&a).unwrap().mul(&a).unwrap() == RingMatrix::zero(&z6, 2));
        assert_eq!(a.render(), "[[1,2],[3,4]]");
    }
}
