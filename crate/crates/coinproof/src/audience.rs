//! The skeptical audience.
//!
//! The audience sees which coins went on which cup and what the scale showed,
//! nothing else; coin labels mean nothing to it. [`verify_exhaustive`] is the
//! ground truth: it counts every weight assignment consistent with the
//! recorded outcomes. [`verify_structural`] is a fast, sound, incomplete
//! companion: each accepted pattern carries an extremal argument showing the
//! claimed coin's weight is forced, so any non-`Unknown` verdict implies the
//! exhaustive check would report convincing.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::certificate::{Certificate, Outcome, Weighing};
use crate::numbers::triangular;

/// Default cap on n for the exhaustive bijection search.
pub const DEFAULT_EXHAUSTIVE_BOUND: u64 = 12;
/// Default cap on n for full single-weighing enumeration.
pub const DEFAULT_ENUMERATION_BOUND: u64 = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("n = {n} exceeds the exhaustive search bound {max_n}")]
    BoundExceeded { n: u64, max_n: u64 },
}

/// What the audience concluded from a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Number of weight assignments consistent with every recorded outcome.
    pub consistent_count: u64,
    /// Weights the claimed coin takes across those assignments.
    pub claimed_coin_weights: BTreeSet<u64>,
    /// True iff at least one assignment is consistent and the claimed coin
    /// takes exactly the claimed weight in all of them.
    pub convincing: bool,
    /// Other coins whose weight is the same in every consistent assignment.
    pub secondary_determined: BTreeMap<u64, u64>,
}

/// How a certificate was validated structurally.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StructuralVerdict {
    /// A single weighing in the prefix-versus-suffix extremal shape.
    ValidBySingleWeighing,
    /// Two balanced weighings accepted by the appearance-counting argument.
    ValidByCounting,
    /// Telescoping weighings whose accumulated lower bound reaches n.
    ValidByChain,
    Unknown,
}

impl StructuralVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            StructuralVerdict::ValidBySingleWeighing => "single_weighing",
            StructuralVerdict::ValidByCounting => "counting",
            StructuralVerdict::ValidByChain => "chain",
            StructuralVerdict::Unknown => "unknown",
        }
    }
}

/// Per-coin appearance classes over a two-weighing certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AppearanceClass {
    BothLeft,
    LeftOnce,
    RightOnce,
    BothRight,
    /// Once on each side; cancels out of the summed weighings.
    Cancelled,
    Off,
}

/// How often each coin appeared on each side across a certificate's
/// weighings.
#[derive(Debug, Clone)]
pub struct AppearanceProfile {
    counts: Vec<(u32, u32)>,
}

impl AppearanceProfile {
    pub fn of(cert: &Certificate) -> Self {
        let mut counts = vec![(0u32, 0u32); cert.n() as usize];
        for w in cert.weighings() {
            for &id in w.left().ids() {
                counts[(id - 1) as usize].0 += 1;
            }
            for &id in w.right().ids() {
                counts[(id - 1) as usize].1 += 1;
            }
        }
        Self { counts }
    }

    /// (left appearances, right appearances) for a coin.
    pub fn appearances(&self, coin: u64) -> (u32, u32) {
        self.counts[(coin - 1) as usize]
    }

    /// The coin's class, when the profile comes from at most two weighings.
    pub fn class(&self, coin: u64) -> Option<AppearanceClass> {
        match self.appearances(coin) {
            (2, 0) => Some(AppearanceClass::BothLeft),
            (1, 0) => Some(AppearanceClass::LeftOnce),
            (0, 1) => Some(AppearanceClass::RightOnce),
            (0, 2) => Some(AppearanceClass::BothRight),
            (1, 1) => Some(AppearanceClass::Cancelled),
            (0, 0) => Some(AppearanceClass::Off),
            _ => None,
        }
    }
}

/// Exhaustively searches bijections from coins to weights {1..n} by
/// backtracking, pruning a partial assignment whenever some weighing cannot
/// reach its recorded outcome even under best-case completion. Exact: the
/// report carries the true consistent count, the claimed coin's full weight
/// set, and every fully determined coin.
pub fn verify_exhaustive(cert: &Certificate, max_n: u64) -> Result<VerifyReport, VerifyError> {
    let n = cert.n();
    if n > max_n {
        return Err(VerifyError::BoundExceeded { n, max_n });
    }
    let summary = search(n, cert.weighings());
    let claimed_coin_weights = summary
        .coin_values
        .get(&cert.claim_coin())
        .cloned()
        .unwrap_or_default();
    let convincing = summary.consistent_count >= 1
        && claimed_coin_weights.len() == 1
        && claimed_coin_weights.contains(&cert.claim_weight());
    let secondary_determined = summary
        .coin_values
        .iter()
        .filter(|&(&coin, values)| coin != cert.claim_coin() && values.len() == 1)
        .map(|(&coin, values)| (coin, *values.first().expect("non-empty")))
        .collect();
    Ok(VerifyReport {
        consistent_count: summary.consistent_count,
        claimed_coin_weights,
        convincing,
        secondary_determined,
    })
}

/// Enumerates every placement of {1..n} onto {left, right, off}, takes the
/// outcome the identity weights produce, and reports each (weighing, coin,
/// weight) where the exhaustive search finds the coin fully determined.
pub fn enumerate_convincing_one_weighings(
    n: u64,
    max_n: u64,
) -> Result<Vec<(Weighing, u64, u64)>, VerifyError> {
    if n > max_n {
        return Err(VerifyError::BoundExceeded { n, max_n });
    }
    let mut found = Vec::new();
    let mut placement = vec![0u8; n as usize];
    loop {
        let left: Vec<u64> = (1..=n).filter(|&id| placement[(id - 1) as usize] == 1).collect();
        let right: Vec<u64> = (1..=n).filter(|&id| placement[(id - 1) as usize] == 2).collect();
        // An empty cup is outweighed by anything, so every assignment stays
        // consistent and no coin is determined; skip those placements.
        if !left.is_empty() && !right.is_empty() {
            let outcome = Outcome::of_sums(left.iter().sum(), right.iter().sum());
            let weighing = Weighing::new(
                crate::certificate::CoinSet::new(left).expect("distinct by construction"),
                crate::certificate::CoinSet::new(right).expect("distinct by construction"),
                outcome,
            )
            .expect("cups disjoint by construction");
            let summary = search(n, std::slice::from_ref(&weighing));
            debug_assert!(summary.consistent_count >= 1, "identity itself is consistent");
            for (&coin, values) in &summary.coin_values {
                if values.len() == 1 {
                    found.push((weighing.clone(), coin, *values.first().expect("non-empty")));
                }
            }
        }
        let mut idx = 0;
        loop {
            if idx == placement.len() {
                return Ok(found);
            }
            placement[idx] += 1;
            if placement[idx] == 3 {
                placement[idx] = 0;
                idx += 1;
            } else {
                break;
            }
        }
    }
}

struct SearchSummary {
    consistent_count: u64,
    /// For every coin 1..=n, the set of weights it takes across consistent
    /// assignments.
    coin_values: BTreeMap<u64, BTreeSet<u64>>,
}

#[derive(Clone, Copy, Default)]
struct CupState {
    assigned_sum: u64,
    open_slots: u64,
}

struct Search<'a> {
    n: u64,
    weighings: &'a [Weighing],
    /// Appearing coins, most-appearances-first (ties by id).
    order: Vec<u64>,
    /// Per ordered coin, the weighings it sits in: (index, on_left).
    memberships: Vec<Vec<(usize, bool)>>,
    used: Vec<bool>,
    left: Vec<CupState>,
    right: Vec<CupState>,
    assigned: Vec<u64>,
    leaves: u64,
    values: Vec<BTreeSet<u64>>,
    leftover_values: BTreeSet<u64>,
}

fn search(n: u64, weighings: &[Weighing]) -> SearchSummary {
    let mut appearances: BTreeMap<u64, u32> = BTreeMap::new();
    for w in weighings {
        for id in w.coins() {
            *appearances.entry(id).or_default() += 1;
        }
    }
    let mut order: Vec<u64> = appearances.keys().copied().collect();
    order.sort_by_key(|id| (std::cmp::Reverse(appearances[id]), *id));
    let memberships = order
        .iter()
        .map(|&id| {
            weighings
                .iter()
                .enumerate()
                .filter_map(|(i, w)| {
                    if w.left().contains(id) {
                        Some((i, true))
                    } else if w.right().contains(id) {
                        Some((i, false))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let cup_states = |side: fn(&Weighing) -> &crate::certificate::CoinSet| {
        weighings
            .iter()
            .map(|w| CupState {
                assigned_sum: 0,
                open_slots: side(w).len() as u64,
            })
            .collect()
    };
    let coin_count = order.len();
    let mut s = Search {
        n,
        weighings,
        order,
        memberships,
        used: vec![false; n as usize + 1],
        left: cup_states(Weighing::left),
        right: cup_states(Weighing::right),
        assigned: vec![0; coin_count],
        leaves: 0,
        values: vec![BTreeSet::new(); coin_count],
        leftover_values: BTreeSet::new(),
    };
    s.solve(0);

    let off_count = n - coin_count as u64;
    let consistent_count = s.leaves * factorial(off_count);
    let mut coin_values = BTreeMap::new();
    for (idx, &coin) in s.order.iter().enumerate() {
        coin_values.insert(coin, s.values[idx].clone());
    }
    for coin in 1..=n {
        coin_values
            .entry(coin)
            .or_insert_with(|| s.leftover_values.clone());
    }
    SearchSummary {
        consistent_count,
        coin_values,
    }
}

impl Search<'_> {
    fn solve(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.leaves += 1;
            for (idx, &weight) in self.assigned.iter().enumerate() {
                self.values[idx].insert(weight);
            }
            for weight in 1..=self.n {
                if !self.used[weight as usize] {
                    self.leftover_values.insert(weight);
                }
            }
            return;
        }
        for weight in 1..=self.n {
            if self.used[weight as usize] {
                continue;
            }
            self.used[weight as usize] = true;
            self.assigned[depth] = weight;
            for &(wi, on_left) in &self.memberships[depth] {
                let cup = if on_left {
                    &mut self.left[wi]
                } else {
                    &mut self.right[wi]
                };
                cup.assigned_sum += weight;
                cup.open_slots -= 1;
            }
            if self.feasible() {
                self.solve(depth + 1);
            }
            for &(wi, on_left) in &self.memberships[depth] {
                let cup = if on_left {
                    &mut self.left[wi]
                } else {
                    &mut self.right[wi]
                };
                cup.assigned_sum -= weight;
                cup.open_slots += 1;
            }
            self.used[weight as usize] = false;
        }
    }

    /// Can every weighing still reach its recorded outcome? Bounds each cup
    /// by filling its open slots with the smallest or largest unused weights;
    /// the two cups draw on the pool independently, which only loosens the
    /// bound, so pruning stays sound.
    fn feasible(&self) -> bool {
        let mut prefix = Vec::with_capacity(self.n as usize + 1);
        prefix.push(0u64);
        for weight in 1..=self.n {
            if !self.used[weight as usize] {
                prefix.push(prefix.last().expect("seeded") + weight);
            }
        }
        let available = prefix.len() - 1;
        let total = prefix[available];
        let smallest = |slots: u64| prefix[slots as usize];
        let largest = |slots: u64| total - prefix[available - slots as usize];

        for (wi, w) in self.weighings.iter().enumerate() {
            let (l, r) = (self.left[wi], self.right[wi]);
            let l_min = l.assigned_sum + smallest(l.open_slots);
            let l_max = l.assigned_sum + largest(l.open_slots);
            let r_min = r.assigned_sum + smallest(r.open_slots);
            let r_max = r.assigned_sum + largest(r.open_slots);
            let possible = match w.outcome() {
                Outcome::Balanced => l_max >= r_min && r_max >= l_min,
                Outcome::LeftLighter => l_min < r_max,
                Outcome::RightLighter => r_min < l_max,
            };
            if !possible {
                return false;
            }
        }
        true
    }
}

fn factorial(k: u64) -> u64 {
    (2..=k).product::<u64>().max(1)
}

/// Pattern-matches the certificate against the three sound validation
/// arguments. Any non-`Unknown` verdict implies [`verify_exhaustive`] would
/// report convincing; `Unknown` says nothing either way.
pub fn verify_structural(cert: &Certificate) -> StructuralVerdict {
    if single_weighing_matches(cert) {
        StructuralVerdict::ValidBySingleWeighing
    } else if counting_matches(cert) {
        StructuralVerdict::ValidByCounting
    } else if chain_matches(cert) {
        StructuralVerdict::ValidByChain
    } else {
        StructuralVerdict::Unknown
    }
}

/// Sorted distinct positive ids are exactly 1..=len iff the last equals the
/// length; empty counts as the zero-length prefix.
fn prefix_len(ids: &[u64]) -> Option<u64> {
    match ids.last() {
        None => Some(0),
        Some(&last) => (last == ids.len() as u64).then_some(last),
    }
}

/// One weighing, one cup holding exactly coins 1..i, the other exactly
/// j..n, balanced or lighter-by-one-gram on the prefix side, with a
/// singleton cup or a singleton off-scale group. The extremes force the
/// prefix cup to hold the i lightest weights and the suffix cup the heaviest,
/// so each singleton group's coin is pinned; the claim must name one.
fn single_weighing_matches(cert: &Certificate) -> bool {
    let [w] = cert.weighings() else {
        return false;
    };
    let n = cert.n();
    for (prefix_cup, suffix_cup, prefix_is_left) in
        [(w.left(), w.right(), true), (w.right(), w.left(), false)]
    {
        if prefix_cup.is_empty() || suffix_cup.is_empty() {
            continue;
        }
        let Some(i) = prefix_len(prefix_cup.ids()) else {
            continue;
        };
        let j = n - suffix_cup.len() as u64 + 1;
        if suffix_cup.ids().first() != Some(&j) || suffix_cup.ids().last() != Some(&n) {
            continue;
        }
        if !(i == 1 || j == n || j == i + 2) {
            continue;
        }
        let prefix_sum = triangular(i);
        let suffix_sum = triangular(n) - triangular(j - 1);
        let outcome_ok = if prefix_sum == suffix_sum {
            w.outcome() == Outcome::Balanced
        } else if prefix_sum + 1 == suffix_sum {
            let lighter = if prefix_is_left {
                Outcome::LeftLighter
            } else {
                Outcome::RightLighter
            };
            w.outcome() == lighter
        } else {
            false
        };
        if !outcome_ok {
            continue;
        }
        let claim = (cert.claim_coin(), cert.claim_weight());
        let claim_ok = (i == 1 && claim == (1, 1))
            || (j == n && claim == (n, n))
            || (j == i + 2 && claim == (i + 1, i + 1));
        if claim_ok {
            return true;
        }
    }
    false
}

/// Two balanced weighings; summing them cancels the once-left-once-right
/// coins and leaves p twice-left coins and q once-left coins against r
/// once-right coins and a single twice-right coin. If the least the left side
/// can weigh equals the most the right side can, T_p + T_{p+q} =
/// (T_{n-1} - T_{n-1-r}) + 2n, then the balance forces the extremes and the
/// twice-right coin weighs n.
fn counting_matches(cert: &Certificate) -> bool {
    let n = cert.n();
    if cert.weighings().len() != 2
        || cert.weighings().iter().any(|w| w.outcome() != Outcome::Balanced)
    {
        return false;
    }
    let profile = AppearanceProfile::of(cert);
    let (mut p, mut q, mut r) = (0u64, 0u64, 0u64);
    let mut twice_right = None;
    for coin in 1..=n {
        match profile.class(coin) {
            Some(AppearanceClass::BothLeft) => p += 1,
            Some(AppearanceClass::LeftOnce) => q += 1,
            Some(AppearanceClass::RightOnce) => r += 1,
            Some(AppearanceClass::BothRight) => {
                if twice_right.replace(coin).is_some() {
                    return false;
                }
            }
            Some(AppearanceClass::Cancelled) | Some(AppearanceClass::Off) => {}
            None => return false,
        }
    }
    twice_right == Some(cert.claim_coin())
        && cert.claim_weight() == n
        && triangular(p) + triangular(p + q) == triangular(n - 1) - triangular(n - 1 - r) + 2 * n
}

/// Telescoping weighings: each right cup is a single coin, reused on the next
/// left cup alongside a 1..m prefix. Any m coins weigh at least T_m, so each
/// weighing adds T_m (plus one gram when strict) to the pivot's lower bound;
/// when the accumulated bound reaches n, the final pivot can only be the
/// n-gram coin.
fn chain_matches(cert: &Certificate) -> bool {
    if cert.weighings().is_empty() {
        return false;
    }
    let mut pivot: Option<u64> = None;
    let mut bound = 0u64;
    for w in cert.weighings() {
        let &[single] = w.right().ids() else {
            return false;
        };
        let m = match pivot {
            None => prefix_len(w.left().ids()),
            Some(p) => {
                if !w.left().contains(p) {
                    return false;
                }
                let rest: Vec<u64> =
                    w.left().ids().iter().copied().filter(|&id| id != p).collect();
                prefix_len(&rest)
            }
        };
        let Some(m) = m else {
            return false;
        };
        bound += triangular(m);
        match w.outcome() {
            Outcome::Balanced => {}
            Outcome::LeftLighter => bound += 1,
            Outcome::RightLighter => return false,
        }
        pivot = Some(single);
    }
    bound == cert.n() && pivot == Some(cert.claim_coin()) && cert.claim_weight() == cert.n()
}
