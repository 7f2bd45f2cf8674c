//! Exact triangular-number arithmetic and decompositions into two or three
//! triangular numbers.
//!
//! All values are `u64`; that holds T_x comfortably for every index this
//! crate touches (well past 10^6 coins).

/// T_x = x(x+1)/2, the sum 1 + 2 + ... + x.
pub fn triangular(x: u64) -> u64 {
    x * (x + 1) / 2
}

/// Largest index x with T_x <= m.
pub fn triangular_floor_index(m: u64) -> u64 {
    ((8 * m + 1).isqrt() - 1) / 2
}

/// The unique x with T_x = m, if m is triangular.
pub fn triangular_inverse(m: u64) -> Option<u64> {
    let x = triangular_floor_index(m);
    (triangular(x) == m).then_some(x)
}

/// Exact integer square-root test; returns the root when m is a perfect square.
pub fn perfect_square_root(m: u64) -> Option<u64> {
    let r = m.isqrt();
    (r * r == m).then_some(r)
}

/// Indices a <= b <= c with T_a + T_b + T_c equal to a stated target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TriDecomposition {
    a: u64,
    b: u64,
    c: u64,
    target: u64,
}

impl TriDecomposition {
    /// Validates a <= b <= c and T_a + T_b + T_c = target.
    pub fn new(a: u64, b: u64, c: u64, target: u64) -> Option<Self> {
        (a <= b && b <= c && triangular(a) + triangular(b) + triangular(c) == target)
            .then_some(Self { a, b, c, target })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn indices(&self) -> (u64, u64, u64) {
        (self.a, self.b, self.c)
    }

    pub fn target(&self) -> u64 {
        self.target
    }
}

/// Some (a, b) with T_a + T_b = m and a <= b, if any exists.
///
/// Deterministic: scans b downward from the largest index with T_b <= m, so
/// the returned pair has the largest feasible b (equivalently the smallest a).
pub fn two_triangular(m: u64) -> Option<(u64, u64)> {
    two_triangular_at_most(m, triangular_floor_index(m))
}

/// Like [`two_triangular`] but with b capped at `b_max`.
pub fn two_triangular_at_most(m: u64, b_max: u64) -> Option<(u64, u64)> {
    let mut b = b_max.min(triangular_floor_index(m));
    loop {
        let t = triangular(b);
        if 2 * t < m {
            // the remainder would exceed T_b, forcing a > b
            return None;
        }
        if let Some(a) = triangular_inverse(m - t) {
            return Some((a, b));
        }
        if b == 0 {
            return None;
        }
        b -= 1;
    }
}

/// All decompositions of `target` into T_a + T_b + T_c with a <= b <= c,
/// yielded in descending c, then descending b order.
pub fn decompositions(target: u64) -> Decompositions {
    let c = triangular_floor_index(target);
    let b = first_b(target, c);
    Decompositions {
        target,
        c: Some(c),
        b,
    }
}

fn first_b(target: u64, c: u64) -> Option<u64> {
    let rem = target - triangular(c);
    Some(c.min(triangular_floor_index(rem)))
}

/// Iterator state for [`decompositions`].
#[derive(Debug, Clone)]
pub struct Decompositions {
    target: u64,
    /// Current c; `None` once exhausted.
    c: Option<u64>,
    /// Next b to try for the current c; `None` advances c.
    b: Option<u64>,
}

impl Iterator for Decompositions {
    type Item = TriDecomposition;

    fn next(&mut self) -> Option<TriDecomposition> {
        loop {
            let c = self.c?;
            let rem = self.target - triangular(c);
            while let Some(b) = self.b {
                let t = triangular(b);
                if 2 * t < rem {
                    break;
                }
                self.b = b.checked_sub(1);
                if let Some(a) = triangular_inverse(rem - t) {
                    return TriDecomposition::new(a, b, c, self.target);
                }
            }
            if c == 0 {
                self.c = None;
            } else {
                self.c = Some(c - 1);
                self.b = first_b(self.target, c - 1);
            }
        }
    }
}

/// A decomposition of m into at most three triangular numbers. Always
/// succeeds; the search prefers the largest c, then the largest b.
pub fn three_triangular(m: u64) -> TriDecomposition {
    decompositions(m)
        .next()
        .expect("every non-negative integer is a sum of three triangular numbers")
}

/// Up to `limit` distinct decompositions of m, in the order of
/// [`decompositions`].
pub fn three_triangular_all(m: u64, limit: usize) -> Vec<TriDecomposition> {
    decompositions(m).take(limit).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_values() {
        assert_eq!(triangular(0), 0);
        assert_eq!(triangular(8), 36);
        assert_eq!(triangular(53), 1431);
    }

    #[test]
    fn triangular_inverse_values() {
        assert_eq!(triangular_inverse(36), Some(8));
        assert_eq!(triangular_inverse(0), Some(0));
        assert_eq!(triangular_inverse(37), None);
    }

    #[test]
    fn triangular_inverse_round_trip() {
        for x in 0..=10_000u64 {
            assert_eq!(triangular_inverse(triangular(x)), Some(x));
        }
    }

    #[test]
    fn floor_index_rounds_down() {
        for x in 0..500u64 {
            for m in triangular(x)..triangular(x + 1) {
                assert_eq!(triangular_floor_index(m), x, "m = {m}");
            }
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(perfect_square_root(36), Some(6));
        assert_eq!(perfect_square_root(0), Some(0));
        assert_eq!(perfect_square_root(35), None);
    }

    /// Brute-force reference: every (a, b) pair with T_a + T_b = m, a <= b.
    fn two_triangular_oracle(m: u64) -> Vec<(u64, u64)> {
        let mut pairs = Vec::new();
        for a in 0..=triangular_floor_index(m) {
            let ta = triangular(a);
            if 2 * ta > m {
                break;
            }
            if let Some(b) = triangular_inverse(m - ta) {
                pairs.push((a, b));
            }
        }
        pairs
    }

    #[test]
    fn two_triangular_values() {
        // largest-b rule: 6 = T_0 + T_3 wins over T_2 + T_2
        assert_eq!(two_triangular(6), Some((0, 3)));
        assert_eq!(two_triangular(0), Some((0, 0)));
        assert_eq!(two_triangular(52), None);
        assert_eq!(two_triangular(53), None);
        assert_eq!(two_triangular(54), None);
    }

    #[test]
    fn two_triangular_agrees_with_brute_force() {
        for m in 0..=2000u64 {
            let oracle = two_triangular_oracle(m);
            match two_triangular(m) {
                Some((a, b)) => {
                    assert_eq!(triangular(a) + triangular(b), m);
                    assert!(a <= b);
                    // largest feasible b = last pair of the ascending-a oracle
                    assert_eq!(Some(&(a, b)), oracle.last(), "m = {m}");
                }
                None => assert!(oracle.is_empty(), "m = {m}"),
            }
        }
    }

    #[test]
    fn two_triangular_at_most_respects_cap() {
        for m in 0..=500u64 {
            for cap in 0..=32u64 {
                match two_triangular_at_most(m, cap) {
                    Some((a, b)) => {
                        assert!(a <= b && b <= cap);
                        assert_eq!(triangular(a) + triangular(b), m);
                    }
                    None => {
                        assert!(
                            two_triangular_oracle(m).iter().all(|&(_, b)| b > cap),
                            "missed a pair for m = {m}, cap = {cap}"
                        );
                    }
                }
            }
        }
    }

    /// Brute-force reference: all a <= b <= c with T_a + T_b + T_c = m,
    /// in descending c then descending b order.
    fn decompositions_oracle(m: u64) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for c in (0..=triangular_floor_index(m)).rev() {
            let rem = m - triangular(c);
            for b in (0..=c.min(triangular_floor_index(rem))).rev() {
                let tb = triangular(b);
                if 2 * tb < rem {
                    break;
                }
                if let Some(a) = triangular_inverse(rem - tb) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    #[test]
    fn three_triangular_values() {
        assert_eq!(three_triangular(44).indices(), (1, 5, 7));
        assert_eq!(three_triangular(0).indices(), (0, 0, 0));
        assert_eq!(three_triangular(1539).indices(), (2, 14, 53));
    }

    #[test]
    fn three_triangular_valid_for_small_targets() {
        for m in 0..=10_000u64 {
            let d = three_triangular(m);
            assert_eq!(d.target(), m);
            let (a, b, c) = d.indices();
            assert!(a <= b && b <= c);
            assert_eq!(triangular(a) + triangular(b) + triangular(c), m);
        }
    }

    #[test]
    fn three_triangular_all_values() {
        let flat =
            |v: Vec<TriDecomposition>| v.into_iter().map(|d| d.indices()).collect::<Vec<_>>();
        assert_eq!(flat(three_triangular_all(10, 10)), vec![(0, 0, 4), (1, 2, 3)]);
        assert_eq!(flat(three_triangular_all(0, 5)), vec![(0, 0, 0)]);
        assert_eq!(flat(three_triangular_all(44, 2)), vec![(1, 5, 7), (3, 4, 7)]);
    }

    #[test]
    fn decompositions_match_oracle_and_are_distinct() {
        for m in 0..=600u64 {
            let got: Vec<_> = decompositions(m).map(|d| d.indices()).collect();
            assert_eq!(got, decompositions_oracle(m), "m = {m}");
            let mut dedup = got.clone();
            dedup.sort_unstable();
            dedup.dedup();
            assert_eq!(dedup.len(), got.len(), "duplicate decomposition for {m}");
        }
    }
}
