//! Brute-force ring isomorphism search for small carriers.
//!
//! Elements of the source are expressed as words in a small generating set
//! (derived greedily from 0 and 1); candidate generator images in the
//! target are filtered by cheap invariants and replayed through the word
//! DAG. Intended for desk-scale verification, not large rings.

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::FiniteRing;

const ISO_CARD_CAP: u64 = 4096;

#[derive(Clone, Copy)]
enum Deriv {
    Zero,
    One,
    Gen(usize),
    Add(u64, u64),
    Mul(u64, u64),
    Neg(u64),
}

/// Searches for a ring isomorphism from `a` onto `b`, returning the code
/// map when one is found. `None` means no isomorphism was found within the
/// search bounds (rings above the internal cap are not attempted).
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<u64>> {
    if a.cardinality() != b.cardinality() || a.cardinality() > ISO_CARD_CAP {
        return None;
    }
    let card = a.cardinality();
    let ai = a.inner();
    let bi = b.inner();

    // Build the derivation order from a greedy generating set.
    let mut deriv: Vec<Option<Deriv>> = vec![None; card as usize];
    let mut order: Vec<u64> = Vec::new();
    let mut gens: Vec<u64> = Vec::new();
    let push = |deriv: &mut Vec<Option<Deriv>>, order: &mut Vec<u64>, c: u64, d: Deriv| {
        if deriv[c as usize].is_none() {
            deriv[c as usize] = Some(d);
            order.push(c);
        }
    };
    push(&mut deriv, &mut order, ai.zero_code(), Deriv::Zero);
    push(&mut deriv, &mut order, ai.one_code(), Deriv::One);
    loop {
        // Close under the operations.
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            push(&mut deriv, &mut order, ai.neg_code(x), Deriv::Neg(x));
            for j in 0..=i {
                let y = order[j];
                push(&mut deriv, &mut order, ai.add_code(x, y), Deriv::Add(x, y));
                push(&mut deriv, &mut order, ai.mul_code(x, y), Deriv::Mul(x, y));
                push(&mut deriv, &mut order, ai.mul_code(y, x), Deriv::Mul(y, x));
            }
            i += 1;
        }
        if order.len() as u64 == card {
            break;
        }
        let next = (0..card).find(|&c| deriv[c as usize].is_none()).unwrap();
        let g = gens.len();
        gens.push(next);
        push(&mut deriv, &mut order, next, Deriv::Gen(g));
    }

    // Cheap invariants for candidate filtering.
    let sig_a: Vec<(u64, bool, bool)> = (0..card).map(|c| signature(a, c)).collect();
    let sig_b: Vec<(u64, bool, bool)> = (0..card).map(|c| signature(b, c)).collect();
    let candidates: Vec<Vec<u64>> = gens
        .iter()
        .map(|&g| {
            (0..card)
                .filter(|&c| sig_b[c as usize] == sig_a[g as usize])
                .collect()
        })
        .collect();

    let mut assignment = vec![0u64; gens.len()];
    search(b, &deriv, &order, &candidates, &mut assignment, 0, card)
    .filter(|map| {
        // Full homomorphism verification.
        (0..card).all(|x| {
            (0..card).all(|y| {
                map[ai.add_code(x, y) as usize] == bi.add_code(map[x as usize], map[y as usize])
                    && map[ai.mul_code(x, y) as usize]
                        == bi.mul_code(map[x as usize], map[y as usize])
            })
        })
    })
}

fn signature(r: &FiniteRing, code: u64) -> (u64, bool, bool) {
    let inner = r.inner();
    // Additive order.
    let mut ord = 1u64;
    let mut acc = code;
    while acc != inner.zero_code() {
        acc = inner.add_code(acc, code);
        ord += 1;
    }
    (
        ord,
        inner.is_unit_code(code),
        inner.mul_code(code, code) == code,
    )
}

fn search(
    b: &FiniteRing,
    deriv: &[Option<Deriv>],
    order: &[u64],
    candidates: &[Vec<u64>],
    assignment: &mut [u64],
    depth: usize,
    card: u64,
) -> Option<Vec<u64>> {
    if depth == candidates.len() {
        return replay(b, deriv, order, assignment, card);
    }
    for &cand in &candidates[depth] {
        assignment[depth] = cand;
        if let Some(map) = search(b, deriv, order, candidates, assignment, depth + 1, card) {
            return Some(map);
        }
    }
    None
}

fn replay(
    b: &FiniteRing,
    deriv: &[Option<Deriv>],
    order: &[u64],
    assignment: &[u64],
    card: u64,
) -> Option<Vec<u64>> {
    let bi = b.inner();
    let mut map = vec![u64::MAX; card as usize];
    let mut used = vec![false; card as usize];
    for &x in order {
        let image = match deriv[x as usize].unwrap() {
            Deriv::Zero => bi.zero_code(),
            Deriv::One => bi.one_code(),
            Deriv::Gen(i) => assignment[i],
            Deriv::Add(p, q) => bi.add_code(map[p as usize], map[q as usize]),
            Deriv::Mul(p, q) => bi.mul_code(map[p as usize], map[q as usize]),
            Deriv::Neg(p) => bi.neg_code(map[p as usize]),
        };
        if used[image as usize] {
            return None; // not injective
        }
        used[image as usize] = true;
        map[x as usize] = image;
    }
    Some(map)
}
