//! Weighings, certificates, and their canonical JSON interchange form.
//!
//! A certificate records the coin count `n`, an ordered list of at most
//! three weighings, and a claim that one named coin has one weight.
//! Coin identifiers coincide with true weights (the prover labels coins by
//! weight), and construction checks every recorded outcome against that
//! identity assignment; the audience module never relies on the labels.
//!
//! The JSON form is canonical: object keys in the order `n`, `claim`,
//! `weighings`; cup contents as ascending integer arrays; outcomes spelled
//! `balanced` / `left_lighter` / `right_lighter`; no floating point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("coin identifiers must be positive")]
    ZeroCoinId,
    #[error("coin {id} appears twice in one cup")]
    DuplicateCoin { id: u64 },
    #[error("coin {id} appears in both cups of one weighing")]
    OverlappingCups { id: u64 },
    #[error("a weighing needs at least one coin on the scale")]
    EmptyWeighing,
    #[error("a certificate holds at most three weighings (got {count})")]
    TooManyWeighings { count: usize },
    #[error("coin {id} outside 1..={n}")]
    CoinOutOfRange { id: u64, n: u64 },
    #[error("claimed weight {weight} outside 1..={n}")]
    ClaimWeightOutOfRange { weight: u64, n: u64 },
    #[error("weighing {index} records an outcome that contradicts the identity weights")]
    OutcomeMismatch { index: usize },
}

/// Observed scale result, named by the lighter side to keep the serialized
/// form unambiguous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Balanced,
    LeftLighter,
    RightLighter,
}

impl Outcome {
    /// Outcome of comparing the two cup totals.
    pub fn of_sums(left: u64, right: u64) -> Self {
        match left.cmp(&right) {
            std::cmp::Ordering::Less => Outcome::LeftLighter,
            std::cmp::Ordering::Equal => Outcome::Balanced,
            std::cmp::Ordering::Greater => Outcome::RightLighter,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Balanced => "balanced",
            Outcome::LeftLighter => "left_lighter",
            Outcome::RightLighter => "right_lighter",
        }
    }
}

/// A finite set of distinct coin identifiers, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinSet(Vec<u64>);

impl CoinSet {
    pub fn new(ids: impl IntoIterator<Item = u64>) -> Result<Self, CertificateError> {
        let mut v: Vec<u64> = ids.into_iter().collect();
        v.sort_unstable();
        if v.first() == Some(&0) {
            return Err(CertificateError::ZeroCoinId);
        }
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(CertificateError::DuplicateCoin { id: w[0] });
            }
        }
        Ok(Self(v))
    }

    /// The coins lo..=hi; empty when lo > hi.
    pub fn range(lo: u64, hi: u64) -> Self {
        assert!(lo >= 1, "coin identifiers must be positive");
        Self((lo..=hi).collect())
    }

    pub fn ids(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: u64) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    /// Total weight under the identity assignment (coin i weighs i grams).
    pub fn total_weight(&self) -> u64 {
        self.0.iter().sum()
    }

    /// First identifier present in both sets, if any.
    fn common_id(&self, other: &CoinSet) -> Option<u64> {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(self.0[i]),
            }
        }
        None
    }
}

/// Two disjoint coin sets on the cups of a balance scale, plus the observed
/// outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighing {
    left: CoinSet,
    right: CoinSet,
    outcome: Outcome,
}

impl Weighing {
    pub fn new(left: CoinSet, right: CoinSet, outcome: Outcome) -> Result<Self, CertificateError> {
        if left.is_empty() && right.is_empty() {
            return Err(CertificateError::EmptyWeighing);
        }
        if let Some(id) = left.common_id(&right) {
            return Err(CertificateError::OverlappingCups { id });
        }
        Ok(Self {
            left,
            right,
            outcome,
        })
    }

    pub fn left(&self) -> &CoinSet {
        &self.left
    }

    pub fn right(&self) -> &CoinSet {
        &self.right
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    /// Every coin on the scale, left cup first.
    pub fn coins(&self) -> impl Iterator<Item = u64> + '_ {
        self.left.ids().iter().chain(self.right.ids()).copied()
    }

    /// What the scale would show under the identity assignment.
    pub fn identity_outcome(&self) -> Outcome {
        Outcome::of_sums(self.left.total_weight(), self.right.total_weight())
    }

    pub fn holds_under_identity(&self) -> bool {
        self.identity_outcome() == self.outcome
    }
}

/// n, an ordered list of at most three weighings, and a claim that
/// `claim_coin` weighs `claim_weight` grams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    n: u64,
    weighings: Vec<Weighing>,
    claim_coin: u64,
    claim_weight: u64,
}

impl Certificate {
    pub fn new(
        n: u64,
        weighings: Vec<Weighing>,
        claim_coin: u64,
        claim_weight: u64,
    ) -> Result<Self, CertificateError> {
        if weighings.len() > 3 {
            return Err(CertificateError::TooManyWeighings {
                count: weighings.len(),
            });
        }
        for (index, w) in weighings.iter().enumerate() {
            if let Some(id) = w.coins().find(|&id| id > n) {
                return Err(CertificateError::CoinOutOfRange { id, n });
            }
            if !w.holds_under_identity() {
                return Err(CertificateError::OutcomeMismatch { index });
            }
        }
        if claim_coin == 0 || claim_coin > n {
            return Err(CertificateError::CoinOutOfRange { id: claim_coin, n });
        }
        if claim_weight == 0 || claim_weight > n {
            return Err(CertificateError::ClaimWeightOutOfRange {
                weight: claim_weight,
                n,
            });
        }
        Ok(Self {
            n,
            weighings,
            claim_coin,
            claim_weight,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn weighings(&self) -> &[Weighing] {
        &self.weighings
    }

    pub fn claim_coin(&self) -> u64 {
        self.claim_coin
    }

    pub fn claim_weight(&self) -> u64 {
        self.claim_weight
    }

    /// Canonical JSON text (no trailing newline).
    pub fn to_json(&self) -> String {
        let wire = WireCertificate {
            n: self.n,
            claim: WireClaim {
                coin: self.claim_coin,
                weight: self.claim_weight,
            },
            weighings: self
                .weighings
                .iter()
                .map(|w| WireWeighing {
                    left: w.left.ids().to_vec(),
                    right: w.right.ids().to_vec(),
                    outcome: w.outcome,
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("certificate serialization cannot fail")
    }

    /// Parses JSON and re-validates every invariant.
    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        let wire: WireCertificate =
            serde_json::from_str(text).map_err(|e| CertificateError::Json(e.to_string()))?;
        let weighings = wire
            .weighings
            .into_iter()
            .map(|w| Weighing::new(CoinSet::new(w.left)?, CoinSet::new(w.right)?, w.outcome))
            .collect::<Result<Vec<_>, _>>()?;
        Certificate::new(wire.n, weighings, wire.claim.coin, wire.claim.weight)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireCertificate {
    n: u64,
    claim: WireClaim,
    weighings: Vec<WireWeighing>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireClaim {
    coin: u64,
    weight: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WireWeighing {
    left: Vec<u64>,
    right: Vec<u64>,
    outcome: Outcome,
}
