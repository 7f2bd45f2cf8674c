//! Certificate builders: the five one-weighing patterns, the two-weighing
//! constructions, the three-weighing telescoping chain, and the dispatcher
//! that always finds a proof in at most two weighings.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::audience::{verify_structural, StructuralVerdict};
use crate::certificate::{Certificate, CoinSet, Outcome, Weighing};
use crate::numbers::{decompositions, perfect_square_root, triangular, triangular_inverse};
use crate::rangesum::{subset_with_sum, IntRange};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("cannot prove anything about zero coins")]
    NoCoins,
    #[error("no strategy produced a certificate for n = {n}; the two-weighing guarantee is broken")]
    Exhausted { n: u64 },
    #[error("the certificate built for n = {n} failed structural validation; this is a defect")]
    FailedValidation { n: u64 },
}

/// The five shapes of coin count that admit a one-weighing proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OneWeighingCase {
    /// n = T_i: weigh 1+2+...+i against the n-gram coin, balanced.
    Triangular { i: u64 },
    /// n = 2: weigh the coins against each other.
    TwoCoins,
    /// n = T_i + 1: weigh 1+2+...+i against the n-gram coin, lighter.
    TriangularPlusOne { i: u64 },
    /// T_n = k^2 + 1: weigh 1..k-1 against k+1..n, lighter by one gram.
    SquarePlusOneTriangle { k: u64 },
    /// T_n = k^2: weigh 1..k-1 against k+1..n, balanced.
    SquareTriangle { k: u64 },
}

impl fmt::Display for OneWeighingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneWeighingCase::Triangular { i } => write!(f, "n = T_{i}"),
            OneWeighingCase::TwoCoins => write!(f, "n = 2"),
            OneWeighingCase::TriangularPlusOne { i } => write!(f, "n = T_{i} + 1"),
            OneWeighingCase::SquarePlusOneTriangle { k } => write!(f, "T_n = {k}^2 + 1"),
            OneWeighingCase::SquareTriangle { k } => write!(f, "T_n = {k}^2"),
        }
    }
}

/// The strategy and parameters behind a built certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildPlan {
    /// n = 1: nothing to prove.
    Trivial,
    OneWeighing(OneWeighingCase),
    /// n = T_a + T_b + shortfall with shortfall in 0..=2; one or two chained
    /// weighings, strict where the shortfall demands it.
    TwoTriangular { a: u64, b: u64, shortfall: u64 },
    /// 2n = T_a + T_{a+1}, with helper coins x = a+2 and y = x + (a+1)/2.
    CloseTriangles { a: u64, x: u64, y: u64 },
    /// T_a + T_b + T_c = n + T_n and a subset of [a+1..n-1] weighing T_c - n.
    MainSubset {
        a: u64,
        b: u64,
        c: u64,
        subset: BTreeSet<u64>,
    },
    /// n = T_i + T_j + T_k, proven by telescoping balanced weighings.
    Chain { i: u64, j: u64, k: u64 },
}

fn ids(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).collect()
}

fn weighing(left: Vec<u64>, right: Vec<u64>, outcome: Outcome) -> Option<Weighing> {
    Weighing::new(CoinSet::new(left).ok()?, CoinSet::new(right).ok()?, outcome).ok()
}

/// Every one-weighing shape n matches, in the fixed case order.
pub fn one_weighing_cases(n: u64) -> Vec<OneWeighingCase> {
    let mut cases = Vec::new();
    if let Some(i) = triangular_inverse(n) {
        cases.push(OneWeighingCase::Triangular { i });
    }
    if n == 2 {
        cases.push(OneWeighingCase::TwoCoins);
    }
    if let Some(i) = triangular_inverse(n - 1) {
        cases.push(OneWeighingCase::TriangularPlusOne { i });
    }
    let t = triangular(n);
    if let Some(k) = perfect_square_root(t - 1) {
        cases.push(OneWeighingCase::SquarePlusOneTriangle { k });
    }
    if let Some(k) = perfect_square_root(t) {
        cases.push(OneWeighingCase::SquareTriangle { k });
    }
    cases
}

/// First matching one-weighing case, if any.
pub fn one_weighing_possible(n: u64) -> Option<OneWeighingCase> {
    debug_assert!(n >= 2);
    one_weighing_cases(n).into_iter().next()
}

pub fn build_one_weighing(n: u64) -> Option<Certificate> {
    build_one_weighing_planned(n).map(|(cert, _)| cert)
}

fn build_one_weighing_planned(n: u64) -> Option<(Certificate, BuildPlan)> {
    let case = one_weighing_possible(n)?;
    let (w, claim) = match case {
        OneWeighingCase::Triangular { i } => {
            (weighing(ids(1, i), vec![n], Outcome::Balanced)?, n)
        }
        OneWeighingCase::TwoCoins => (weighing(vec![1], vec![2], Outcome::LeftLighter)?, 2),
        OneWeighingCase::TriangularPlusOne { i } => {
            (weighing(ids(1, i), vec![n], Outcome::LeftLighter)?, n)
        }
        OneWeighingCase::SquarePlusOneTriangle { k } => (
            weighing(ids(1, k - 1), ids(k + 1, n), Outcome::LeftLighter)?,
            k,
        ),
        OneWeighingCase::SquareTriangle { k } => (
            weighing(ids(1, k - 1), ids(k + 1, n), Outcome::Balanced)?,
            k,
        ),
    };
    let cert = Certificate::new(n, vec![w], claim, claim).ok()?;
    Some((cert, BuildPlan::OneWeighing(case)))
}

pub fn build_two_triangular(n: u64) -> Option<Certificate> {
    build_two_triangular_planned(n).map(|(cert, _)| cert)
}

/// Two chained weighings from n = T_a + T_b (+1, +2): weigh 1..b against the
/// T_b-gram pivot coin, then 1..a plus the pivot against the n-gram coin.
/// A shortfall of 1 makes the second weighing strict, a shortfall of 2 both
/// (by pivoting on the (T_b+1)-gram coin). Degenerate weighings - an empty
/// cup, or a pivot that already sits in its own cup - are skipped when
/// redundant, and the whole parameterization is dropped when unusable.
fn build_two_triangular_planned(n: u64) -> Option<(Certificate, BuildPlan)> {
    (0..=2u64.min(n))
        .find_map(|shortfall| try_two_triangular(n, shortfall))
}

fn try_two_triangular(n: u64, shortfall: u64) -> Option<(Certificate, BuildPlan)> {
    let (a, b) = crate::numbers::two_triangular(n - shortfall)?;
    let pivot = triangular(b) + u64::from(shortfall == 2);
    if pivot == 0 {
        return None;
    }
    let mut weighings = Vec::new();
    if b >= 1 && pivot > b {
        let outcome = if shortfall == 2 {
            Outcome::LeftLighter
        } else {
            Outcome::Balanced
        };
        weighings.push(weighing(ids(1, b), vec![pivot], outcome)?);
    }
    if pivot != n {
        let mut left = ids(1, a);
        left.push(pivot);
        let outcome = if shortfall == 0 {
            Outcome::Balanced
        } else {
            Outcome::LeftLighter
        };
        weighings.push(weighing(left, vec![n], outcome)?);
    }
    let cert = Certificate::new(n, weighings, n, n).ok()?;
    Some((cert, BuildPlan::TwoTriangular { a, b, shortfall }))
}

pub fn build_close_triangles(n: u64) -> Option<Certificate> {
    build_close_triangles_planned(n).map(|(cert, _)| cert)
}

/// Two balanced weighings from 2n = T_a + T_{a+1} (equivalently, 2n a perfect
/// square): 1..a plus y against x and n, then 1..a+1 plus x against y and n,
/// where x = a+2 and y = x + (a+1)/2.
fn build_close_triangles_planned(n: u64) -> Option<(Certificate, BuildPlan)> {
    if n < 8 {
        return None;
    }
    // T_a + T_{a+1} = (a+1)^2, which is even here, so a+1 is even too
    let root = perfect_square_root(2 * n)?;
    let a = root - 1;
    let x = a + 2;
    let y = x + (a + 1) / 2;
    if y >= n {
        return None;
    }
    let mut w1_left = ids(1, a);
    w1_left.push(y);
    let w1 = weighing(w1_left, vec![x, n], Outcome::Balanced)?;
    let mut w2_left = ids(1, a + 1);
    w2_left.push(x);
    let w2 = weighing(w2_left, vec![y, n], Outcome::Balanced)?;
    let cert = Certificate::new(n, vec![w1, w2], n, n).ok()?;
    Some((cert, BuildPlan::CloseTriangles { a, x, y }))
}

pub fn build_main(n: u64) -> Option<Certificate> {
    build_main_planned(n).map(|(cert, _)| cert)
}

/// The general two-weighing construction: pick T_a + T_b + T_c = n + T_n with
/// c < n, find a subset S of [a+1..n-1] weighing T_c - n, and weigh
///
///   1..a + (S-complement in [a+1..c])  against  (S in [c+1..n-1]) + n
///   1..a + (S in [a+1..b])             against  (S-complement in [b+1..n-1]) + n
///
/// both balanced. Decompositions are tried in descending-c order until a
/// subset exists; c = n is skipped (it means n = T_a + T_b, the chained
/// builder's territory).
fn build_main_planned(n: u64) -> Option<(Certificate, BuildPlan)> {
    let total = n + triangular(n);
    for d in decompositions(total) {
        let (a, b, c) = d.indices();
        if c >= n {
            continue;
        }
        let tc = triangular(c);
        if tc < n {
            // c only shrinks from here, so no subset target stays non-negative
            return None;
        }
        let target = tc - n;
        let pool = IntRange::span(a + 1, n - 1);
        let Some(subset) = subset_with_sum(pool, target) else {
            continue;
        };
        assert_eq!(subset.iter().sum::<u64>(), target);
        assert!(subset.iter().all(|&id| pool.contains(id)));
        let in_subset = |id: u64| subset.contains(&id);

        let mut w1_left = ids(1, a);
        w1_left.extend((a + 1..=c).filter(|&id| !in_subset(id)));
        let mut w1_right: Vec<u64> = (c + 1..n).filter(|&id| in_subset(id)).collect();
        w1_right.push(n);

        let mut w2_left = ids(1, a);
        w2_left.extend((a + 1..=b).filter(|&id| in_subset(id)));
        let mut w2_right: Vec<u64> = (b + 1..=c).filter(|&id| !in_subset(id)).collect();
        w2_right.extend((c + 1..n).filter(|&id| !in_subset(id)));
        w2_right.push(n);

        let Some(w1) = weighing(w1_left, w1_right, Outcome::Balanced) else {
            continue;
        };
        let Some(w2) = weighing(w2_left, w2_right, Outcome::Balanced) else {
            continue;
        };
        let Ok(cert) = Certificate::new(n, vec![w1, w2], n, n) else {
            continue;
        };
        return Some((cert, BuildPlan::MainSubset { a, b, c, subset }));
    }
    None
}

pub fn build_chain(n: u64) -> Certificate {
    build_chain_planned(n).0
}

/// Up to three telescoping balanced weighings from n = T_i + T_j + T_k:
/// 1..k against the T_k coin, then 1..j plus that coin against the
/// (T_k + T_j) coin, then 1..i plus that against the n coin. Zero-index
/// weighings are omitted; decompositions whose pivot coin would collide with
/// its own cup's range (k <= 1) are passed over.
fn build_chain_planned(n: u64) -> (Certificate, BuildPlan) {
    if n <= 1 {
        let cert = Certificate::new(1, Vec::new(), 1, 1).expect("trivial certificate");
        return (cert, BuildPlan::Trivial);
    }
    for d in decompositions(n) {
        let (i, j, k) = d.indices();
        if k < 2 {
            continue;
        }
        if let Some(cert) = chain_from_indices(n, i, j, k) {
            return (cert, BuildPlan::Chain { i, j, k });
        }
    }
    // only n = 2 lacks a usable decomposition; one weighing settles it
    let (cert, plan) =
        build_one_weighing_planned(n).expect("n = 2 has a one-weighing certificate");
    (cert, plan)
}

fn chain_from_indices(n: u64, i: u64, j: u64, k: u64) -> Option<Certificate> {
    let mut weighings = Vec::new();
    let mut pivot = triangular(k);
    weighings.push(weighing(ids(1, k), vec![pivot], Outcome::Balanced)?);
    if j >= 1 {
        let next = pivot + triangular(j);
        let mut left = ids(1, j);
        left.push(pivot);
        weighings.push(weighing(left, vec![next], Outcome::Balanced)?);
        pivot = next;
    }
    if i >= 1 {
        let mut left = ids(1, i);
        left.push(pivot);
        weighings.push(weighing(left, vec![n], Outcome::Balanced)?);
    }
    Certificate::new(n, weighings, n, n).ok()
}

/// A certificate of at most two weighings proving one coin's weight, for any
/// n >= 1. Tries the one-weighing cases, then the two-triangular chain, then
/// the close-triangles construction, then the general subset construction;
/// the result is checked by the structural validator before being returned.
pub fn prove(n: u64) -> Result<Certificate, BuildError> {
    prove_with_plan(n).map(|(cert, _)| cert)
}

/// Like [`prove`], also reporting which strategy produced the certificate.
pub fn prove_with_plan(n: u64) -> Result<(Certificate, BuildPlan), BuildError> {
    if n == 0 {
        return Err(BuildError::NoCoins);
    }
    if n == 1 {
        let cert = Certificate::new(1, Vec::new(), 1, 1).expect("trivial certificate");
        return Ok((cert, BuildPlan::Trivial));
    }
    let (cert, plan) = build_one_weighing_planned(n)
        .or_else(|| build_two_triangular_planned(n))
        .or_else(|| build_close_triangles_planned(n))
        .or_else(|| build_main_planned(n))
        .ok_or(BuildError::Exhausted { n })?;
    if cert.weighings().len() > 2 || verify_structural(&cert) == StructuralVerdict::Unknown {
        return Err(BuildError::FailedValidation { n });
    }
    Ok((cert, plan))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cups(w: &Weighing) -> (Vec<u64>, Vec<u64>, Outcome) {
        (w.left().ids().to_vec(), w.right().ids().to_vec(), w.outcome())
    }

    #[test]
    fn one_weighing_case_detection() {
        assert_eq!(one_weighing_possible(8), Some(OneWeighingCase::SquareTriangle { k: 6 }));
        assert_eq!(
            one_weighing_possible(7),
            Some(OneWeighingCase::TriangularPlusOne { i: 3 })
        );
        assert_eq!(one_weighing_possible(5), None);
        assert_eq!(one_weighing_possible(2), Some(OneWeighingCase::TwoCoins));
        assert_eq!(
            one_weighing_possible(4),
            Some(OneWeighingCase::TriangularPlusOne { i: 2 })
        );
        assert_eq!(one_weighing_possible(10), Some(OneWeighingCase::Triangular { i: 4 }));
        assert_eq!(
            one_weighing_possible(25),
            Some(OneWeighingCase::SquarePlusOneTriangle { k: 18 })
        );
    }

    #[test]
    fn one_weighing_shapes() {
        let cert = build_one_weighing(8).unwrap();
        assert_eq!(cert.weighings().len(), 1);
        assert_eq!(
            cups(&cert.weighings()[0]),
            (vec![1, 2, 3, 4, 5], vec![7, 8], Outcome::Balanced)
        );
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (6, 6));

        let cert = build_one_weighing(4).unwrap();
        assert_eq!(cups(&cert.weighings()[0]), (vec![1, 2], vec![4], Outcome::LeftLighter));
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (4, 4));

        let cert = build_one_weighing(10).unwrap();
        assert_eq!(
            cups(&cert.weighings()[0]),
            (vec![1, 2, 3, 4], vec![10], Outcome::Balanced)
        );
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (10, 10));

        assert!(build_one_weighing(5).is_none());
    }

    #[test]
    fn two_triangular_certificates() {
        // 6 = T_0 + T_3: the pivot weighing is the whole proof
        let cert = build_two_triangular(6).unwrap();
        assert_eq!(cert.weighings().len(), 1);
        assert_eq!(cups(&cert.weighings()[0]), (vec![1, 2, 3], vec![6], Outcome::Balanced));

        assert!(build_two_triangular(54).is_none());

        let cert = build_two_triangular(2).unwrap();
        assert_eq!(cert.weighings().len(), 1);
        assert_eq!(cups(&cert.weighings()[0]), (vec![1], vec![2], Outcome::LeftLighter));
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (2, 2));

        // 5 = T_1 + T_2 + 1: balanced pivot weighing, then a strict one
        let cert = build_two_triangular(5).unwrap();
        assert_eq!(cert.weighings().len(), 2);
        assert_eq!(cups(&cert.weighings()[0]), (vec![1, 2], vec![3], Outcome::Balanced));
        assert_eq!(cups(&cert.weighings()[1]), (vec![1, 3], vec![5], Outcome::LeftLighter));
    }

    #[test]
    fn two_triangular_both_strict() {
        // 11 = T_2 + T_3 + 2: pivot on the (T_3 + 1)-gram coin, both strict
        let (cert, plan) = build_two_triangular_planned(11).unwrap();
        assert_eq!(plan, BuildPlan::TwoTriangular { a: 2, b: 3, shortfall: 2 });
        assert_eq!(cups(&cert.weighings()[0]), (vec![1, 2, 3], vec![7], Outcome::LeftLighter));
        assert_eq!(
            cups(&cert.weighings()[1]),
            (vec![1, 2, 7], vec![11], Outcome::LeftLighter)
        );
    }

    #[test]
    fn close_triangles_certificates() {
        let cert = build_close_triangles(8).unwrap();
        assert_eq!(cups(&cert.weighings()[0]), (vec![1, 2, 3, 7], vec![5, 8], Outcome::Balanced));
        assert_eq!(
            cups(&cert.weighings()[1]),
            (vec![1, 2, 3, 4, 5], vec![7, 8], Outcome::Balanced)
        );
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (8, 8));

        assert!(build_close_triangles(9).is_none());

        for n in 8..=500u64 {
            if let Some(cert) = build_close_triangles(n) {
                assert!(cert.weighings().iter().all(|w| w.outcome() == Outcome::Balanced));
                assert_eq!(cert.weighings().len(), 2);
            }
        }
    }

    #[test]
    fn main_construction_for_first_hard_count() {
        let (cert, plan) = build_main_planned(54).unwrap();
        let BuildPlan::MainSubset { a, b, c, subset } = &plan else {
            panic!("wrong plan: {plan:?}");
        };
        assert_eq!((*a, *b, *c), (2, 14, 53));
        assert_eq!(subset.iter().sum::<u64>(), triangular(53) - 54);
        assert_eq!(cert.weighings().len(), 2);
        assert!(cert.weighings().iter().all(|w| w.outcome() == Outcome::Balanced));
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (54, 54));
    }

    #[test]
    fn main_defers_two_triangular_counts() {
        // 9 = T_2 + T_3, so the decomposition of 9 + T_9 with c = 9 is skipped
        // and an earlier strategy owns the count; build_main may still find a
        // smaller-c decomposition, but prove() never asks it to.
        let (_, plan) = prove_with_plan(9).unwrap();
        assert!(matches!(plan, BuildPlan::TwoTriangular { .. }));
    }

    #[test]
    fn chain_certificates() {
        let cert = build_chain(5);
        let ws: Vec<_> = cert.weighings().iter().map(cups).collect();
        assert_eq!(
            ws,
            vec![
                (vec![1, 2], vec![3], Outcome::Balanced),
                (vec![1, 3], vec![4], Outcome::Balanced),
                (vec![1, 4], vec![5], Outcome::Balanced),
            ]
        );
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (5, 5));

        let cert = build_chain(6);
        assert_eq!(cert.weighings().len(), 1);
        assert_eq!(cups(&cert.weighings()[0]), (vec![1, 2, 3], vec![6], Outcome::Balanced));

        let cert = build_chain(7);
        let ws: Vec<_> = cert.weighings().iter().map(cups).collect();
        assert_eq!(
            ws,
            vec![
                (vec![1, 2, 3], vec![6], Outcome::Balanced),
                (vec![1, 6], vec![7], Outcome::Balanced),
            ]
        );
    }

    #[test]
    fn chain_holds_up_to_two_hundred() {
        for n in 2..=200u64 {
            let cert = build_chain(n);
            assert!(cert.weighings().len() <= 3);
            // Certificate construction re-checked the outcomes; make the
            // balanced-under-identity expectation explicit anyway.
            for w in cert.weighings() {
                assert!(w.holds_under_identity(), "n = {n}");
            }
        }
    }

    #[test]
    fn prove_dispatch() {
        let cert = prove(1).unwrap();
        assert!(cert.weighings().is_empty());
        assert_eq!((cert.claim_coin(), cert.claim_weight()), (1, 1));

        assert_eq!(prove(8).unwrap().weighings().len(), 1);
        assert_eq!(prove(5).unwrap().weighings().len(), 2);
        assert_eq!(prove(0), Err(BuildError::NoCoins));
    }

    #[test]
    fn prove_is_total_and_short_up_to_one_thousand() {
        for n in 1..=1000u64 {
            let cert = prove(n).unwrap_or_else(|e| panic!("n = {n}: {e}"));
            assert!(cert.weighings().len() <= 2, "n = {n}");
            let expect_one = n >= 2 && one_weighing_possible(n).is_some();
            assert_eq!(cert.weighings().len() == 1, expect_one, "n = {n}");
        }
    }

    #[test]
    fn plans_satisfy_their_defining_equations() {
        for n in 1..=1000u64 {
            let (cert, plan) = prove_with_plan(n).unwrap();
            match &plan {
                BuildPlan::Trivial => assert_eq!(n, 1),
                BuildPlan::OneWeighing(_) => assert_eq!(cert.weighings().len(), 1),
                BuildPlan::TwoTriangular { a, b, shortfall } => {
                    assert_eq!(triangular(*a) + triangular(*b) + shortfall, n);
                }
                BuildPlan::CloseTriangles { a, x, y } => {
                    assert_eq!(triangular(*a) + triangular(a + 1), 2 * n);
                    assert_eq!(*x, a + 2);
                    assert_eq!(*y, x + (a + 1) / 2);
                }
                BuildPlan::MainSubset { a, b, c, subset } => {
                    assert_eq!(
                        triangular(*a) + triangular(*b) + triangular(*c),
                        n + triangular(n)
                    );
                    assert_eq!(subset.iter().sum::<u64>(), triangular(*c) - n);
                    assert!(subset.iter().all(|&id| *a < id && id < n));
                }
                BuildPlan::Chain { .. } => panic!("prove never chains"),
            }
        }
    }
}
