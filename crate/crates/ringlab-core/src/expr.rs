//! Abstract syntax for the ring-construction language and element literals.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A ring construction: the input language of the workbench.
///
/// Rendered/parsed concrete syntax (see the CLI crate for the parser):
/// `Z(6)`, `GF(2,[1,1,1])`, `M(2,Z(3))`, `UT(2,Z(4))`, `Prod(Z(2),Z(3))`,
/// `Quot(Z(4),{2})`, `Corner(M(2,Z(2)),[[1,0],[0,0]])`, `Table(path)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    /// Integers modulo `n`; `n = 1` is the zero ring and is legal.
    Zn { modulus: u64 },
    /// `Z_p[x]/(poly)` with `poly` monic irreducible, constant term first.
    GFp { prime: u64, poly: Vec<i64> },
    /// `size x size` matrices over `base`.
    Mat { size: usize, base: Box<RingExpr> },
    /// Upper-triangular `size x size` matrices over `base`.
    UpperTri { size: usize, base: Box<RingExpr> },
    /// Componentwise product of the factors.
    Prod { factors: Vec<RingExpr> },
    /// Quotient of `base` by the ideal generated by `ideal_gens`.
    Quot {
        base: Box<RingExpr>,
        ideal_gens: Vec<ElemLit>,
    },
    /// Corner ring `eBe` for an idempotent `e` of the base.
    Corner {
        base: Box<RingExpr>,
        idem: Box<ElemLit>,
    },
    /// Explicit Cayley tables loaded from a file (resolved by the builder).
    Table { source: String },
}

/// An element literal: an integer, a row-major matrix, or a product tuple.
///
/// Integers denote canonical codes in `Z(n)`, `GF(p,..)` and `Table` rings
/// (negative values denote additive inverses), and `k * 1` in matrix,
/// triangular and product rings. Quotient literals are base literals taken
/// modulo the ideal; corner literals are base literals that must already lie
/// in the corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElemLit {
    Int(i64),
    List(Vec<ElemLit>),
    Tuple(Vec<ElemLit>),
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn { modulus } => write!(f, "Z({modulus})"),
            RingExpr::GFp { prime, poly } => {
                write!(f, "GF({prime},[")?;
                for (i, c) in poly.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, "])")
            }
            RingExpr::Mat { size, base } => write!(f, "M({size},{base})"),
            RingExpr::UpperTri { size, base } => write!(f, "UT({size},{base})"),
            RingExpr::Prod { factors } => {
                write!(f, "Prod(")?;
                for (i, r) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
            RingExpr::Quot { base, ideal_gens } => {
                write!(f, "Quot({base},{{")?;
                for (i, g) in ideal_gens.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "}})")
            }
            RingExpr::Corner { base, idem } => write!(f, "Corner({base},{idem})"),
            RingExpr::Table { source } => write!(f, "Table({source})"),
        }
    }
}

impl fmt::Display for ElemLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLit::Int(v) => write!(f, "{v}"),
            ElemLit::List(items) => {
                write!(f, "[")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, "]")
            }
            ElemLit::Tuple(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{it}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl RingExpr {
    /// Collects the `Table(..)` sources referenced anywhere in the tree, so
    /// front ends can load them before building.
    pub fn table_sources(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_tables(&mut out);
        out
    }

    fn collect_tables(&self, out: &mut Vec<String>) {
        match self {
            RingExpr::Table { source } => out.push(source.clone()),
            RingExpr::Mat { base, .. } | RingExpr::UpperTri { base, .. } => {
                base.collect_tables(out)
            }
            RingExpr::Quot { base, .. } | RingExpr::Corner { base, .. } => {
                base.collect_tables(out)
            }
            RingExpr::Prod { factors } => {
                for r in factors {
                    r.collect_tables(out);
                }
            }
            RingExpr::Zn { .. } | RingExpr::GFp { .. } => {}
        }
    }
}
