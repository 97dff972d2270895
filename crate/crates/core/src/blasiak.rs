//! Single-mode normal ordering by closed-form generalized Stirling numbers.
//!
//! A single-mode word is written right to left as blocks
//! `b†^{r_M} b^{s_M} ... b†^{r_1} b^{s_1}`. With partial excesses
//! `d_l = sum_{m<=l} (r_m - s_m)` and `d_0 = 0`, the generalized Stirling
//! numbers are
//!
//! ```text
//! S_{r,s}(k) = 1/k! * sum_{j=0}^{k} C(k,j) (-1)^{k-j} prod_{m=1}^{M} (d_{m-1} + j)_{s_m}
//! ```
//!
//! and the normal form of the word is
//!
//! ```text
//! d_M >= 0:  sum_{k=s_1}^{sum s} S_{r,s}(k)   b†^{k+d_M} b^k
//! d_M <  0:  sum_{k=r_M}^{sum r} S_{s̄,r̄}(k)  b†^k b^{k-d_M}
//! ```
//!
//! where the bars denote reversed vectors. All arithmetic is exact.

use std::borrow::Cow;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use smallvec::{smallvec, SmallVec};

use crate::expr::OpKind;

type Powers = SmallVec<[u32; 8]>;

/// Block decomposition of a single-mode word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordProfile {
    r: Powers,
    s: Powers,
    d: SmallVec<[i64; 8]>,
}

impl WordProfile {
    /// Builds a profile from creation powers `r` and annihilation powers `s`,
    /// both indexed from the rightmost block. Returns `None` unless both have
    /// the same nonzero length.
    pub fn new(r: Vec<u32>, s: Vec<u32>) -> Option<Self> {
        Self::from_powers(Powers::from_slice(&r), Powers::from_slice(&s))
    }

    fn from_powers(r: Powers, s: Powers) -> Option<Self> {
        if r.is_empty() || r.len() != s.len() {
            return None;
        }
        let mut d = SmallVec::with_capacity(r.len());
        let mut acc = 0i64;
        for (ri, si) in r.iter().zip(&s) {
            acc += *ri as i64 - *si as i64;
            d.push(acc);
        }
        Some(WordProfile { r, s, d })
    }

    /// Profile of a single-mode word given left to right as `(kind, power)`
    /// runs. Adjacent runs of the same kind are merged so that the profile
    /// has the fewest blocks possible. `None` for the empty word.
    pub fn from_word(word: &[(OpKind, u32)]) -> Option<Self> {
        let mut runs: SmallVec<[(OpKind, u32); 16]> = SmallVec::new();
        for &(k, e) in word {
            if e == 0 {
                continue;
            }
            match runs.last_mut() {
                Some((lk, le)) if *lk == k => *le += e,
                _ => runs.push((k, e)),
            }
        }
        if runs.is_empty() {
            return None;
        }
        let mut r = Powers::new();
        let mut s = Powers::new();
        let mut it = runs.iter().rev().peekable();
        while it.peek().is_some() {
            let mut sm = 0;
            let mut rm = 0;
            if let Some(&&(OpKind::Annihilate, e)) = it.peek() {
                sm = e;
                it.next();
            }
            if let Some(&&(OpKind::Create, e)) = it.peek() {
                rm = e;
                it.next();
            }
            r.push(rm);
            s.push(sm);
        }
        WordProfile::from_powers(r, s)
    }

    /// The word `b†^{r_M} b^{s_M} ... b†^{r_1} b^{s_1}` as left-to-right runs.
    pub fn to_word(&self) -> Vec<(OpKind, u32)> {
        let mut out = Vec::new();
        for (ri, si) in self.r.iter().zip(&self.s).rev() {
            if *ri > 0 {
                out.push((OpKind::Create, *ri));
            }
            if *si > 0 {
                out.push((OpKind::Annihilate, *si));
            }
        }
        out
    }

    pub fn r(&self) -> &[u32] {
        &self.r
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    /// Partial excesses `d_1..d_M`.
    pub fn partial_excess(&self) -> &[i64] {
        &self.d
    }

    pub fn blocks(&self) -> usize {
        self.r.len()
    }

    /// Final excess `d_M`.
    pub fn excess(&self) -> i64 {
        *self.d.last().unwrap()
    }

    /// The profile with `r := reverse(s)` and `s := reverse(r)`, used by the
    /// negative-excess branch.
    pub fn swapped_reversed(&self) -> WordProfile {
        let r = self.s.iter().rev().copied().collect();
        let s = self.r.iter().rev().copied().collect();
        WordProfile::from_powers(r, s).unwrap()
    }
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Falling factorial `(m)_n = m (m-1) ... (m-n+1)`, with `(m)_0 = 1`.
pub fn falling_factorial(m: i64, n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n as i64 {
        let f = m - i;
        if f == 0 {
            return BigInt::zero();
        }
        acc *= f;
    }
    acc
}

/// Generalized Stirling numbers of one profile, with the `j`-dependent
/// products cached for the lifetime of one normal-ordering call. Sums are
/// first attempted in checked `i128` arithmetic and redone with big integers
/// on overflow.
struct StirlingTable<'a> {
    profile: &'a WordProfile,
    small: SmallVec<[Option<i128>; 16]>,
    products: Vec<BigInt>,
}

impl<'a> StirlingTable<'a> {
    fn new(profile: &'a WordProfile) -> Self {
        StirlingTable {
            profile,
            small: SmallVec::new(),
            products: Vec::new(),
        }
    }

    /// `prod_{m=1}^{M} (d_{m-1} + j)_{s_m}`
    fn product(&mut self, j: usize) -> &BigInt {
        while self.products.len() <= j {
            let jj = self.products.len() as i64;
            let p = &self.profile;
            let mut acc = BigInt::one();
            let mut d_prev = 0i64;
            for (m, &sm) in p.s.iter().enumerate() {
                acc *= falling_factorial(d_prev + jj, sm as u64);
                if acc.is_zero() {
                    break;
                }
                d_prev = p.d[m];
            }
            self.products.push(acc);
        }
        &self.products[j]
    }

    fn product_small(&mut self, j: usize) -> Option<i128> {
        while self.small.len() <= j {
            let jj = self.small.len() as i128;
            let p = &self.profile;
            let mut acc = Some(1i128);
            let mut d_prev = 0i128;
            for (m, &sm) in p.s.iter().enumerate() {
                for i in 0..sm as i128 {
                    acc = acc.and_then(|a| a.checked_mul(d_prev + jj - i));
                }
                if acc == Some(0) || acc.is_none() {
                    break;
                }
                d_prev = p.d[m] as i128;
            }
            self.small.push(acc);
        }
        self.small[j]
    }

    fn stirling_small(&mut self, k: usize) -> Option<i128> {
        let mut sum = 0i128;
        let mut binom = 1i128;
        for j in 0..=k {
            let term = binom.checked_mul(self.product_small(j)?)?;
            sum = if (k - j).is_multiple_of(2) {
                sum.checked_add(term)?
            } else {
                sum.checked_sub(term)?
            };
            binom = binom.checked_mul((k - j) as i128)? / (j as i128 + 1);
        }
        let mut factorial = 1i128;
        for i in 2..=k as i128 {
            factorial = factorial.checked_mul(i)?;
        }
        self.check_divisible(k, sum % factorial == 0);
        Some(sum / factorial)
    }

    fn check_divisible(&self, k: usize, ok: bool) {
        assert!(
            ok,
            "generalized Stirling sum not divisible by {k}! for r={:?} s={:?}",
            self.profile.r, self.profile.s
        );
    }

    fn stirling(&mut self, k: usize) -> BigInt {
        if let Some(v) = self.stirling_small(k) {
            return BigInt::from(v);
        }
        self.stirling_big(k)
    }

    fn stirling_big(&mut self, k: usize) -> BigInt {
        let mut sum = BigInt::zero();
        let mut binom = BigInt::one();
        for j in 0..=k {
            let term = &binom * self.product(j);
            if (k - j).is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            binom = binom * (k - j) / (j + 1);
        }
        let factorial: BigInt = (1..=k).map(BigInt::from).product();
        let (q, rem) = sum.div_rem(&factorial);
        self.check_divisible(k, rem.is_zero());
        q
    }
}

/// `S_{r,s}(k)` for one profile and one `k`.
pub fn stirling_rs(profile: &WordProfile, k: u64) -> BigInt {
    StirlingTable::new(profile).stirling(k as usize)
}

/// Single-mode normal form: `(p, q, c)` stands for `c * b†^p b^q`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModeExpansion {
    pub terms: Vec<(u32, u32, BigInt)>,
}

impl ModeExpansion {
    pub fn identity() -> Self {
        ModeExpansion {
            terms: vec![(0, 0, BigInt::one())],
        }
    }
}

/// The profile whose Stirling numbers give the normal form, the range of
/// `k`, and the final excess. `k` maps to `b†^{k+d} b^k` when `d >= 0` and to
/// `b†^k b^{k-d}` otherwise.
fn branch(profile: &WordProfile) -> (Cow<'_, WordProfile>, RangeInclusive<usize>, i64) {
    let excess = profile.excess();
    if excess >= 0 {
        let hi: u32 = profile.s.iter().sum();
        (
            Cow::Borrowed(profile),
            profile.s[0] as usize..=hi as usize,
            excess,
        )
    } else {
        let hi: u32 = profile.r.iter().sum();
        let lo = *profile.r.last().unwrap() as usize;
        (
            Cow::Owned(profile.swapped_reversed()),
            lo..=hi as usize,
            excess,
        )
    }
}

fn powers(k: usize, excess: i64) -> (u32, u32) {
    let k = k as u32;
    if excess >= 0 {
        (k + excess as u32, k)
    } else {
        (k, k + (-excess) as u32)
    }
}

/// Normal-orders the single-mode word described by `profile`.
pub fn blasiak_normal_order(profile: &WordProfile) -> ModeExpansion {
    if profile.blocks() == 1 {
        return ModeExpansion {
            terms: vec![(profile.r[0], profile.s[0], BigInt::one())],
        };
    }
    let (p, range, excess) = branch(profile);
    let mut table = StirlingTable::new(&p);
    let mut terms = Vec::new();
    for k in range {
        let c = table.stirling(k);
        if !c.is_zero() {
            let (pp, qq) = powers(k, excess);
            terms.push((pp, qq, c));
        }
    }
    ModeExpansion { terms }
}

/// Single-mode normal form with machine-integer coefficients.
pub(crate) type SmallExpansion = SmallVec<[(u32, u32, i128); 8]>;

/// As [`blasiak_normal_order`], or `None` if any intermediate overflows `i128`.
pub(crate) fn blasiak_small(profile: &WordProfile) -> Option<SmallExpansion> {
    if profile.blocks() == 1 {
        return Some(smallvec![(profile.r[0], profile.s[0], 1)]);
    }
    let (p, range, excess) = branch(profile);
    let mut table = StirlingTable::new(&p);
    let mut terms = SmallExpansion::new();
    for k in range {
        let c = table.stirling_small(k)?;
        if c != 0 {
            let (pp, qq) = powers(k, excess);
            terms.push((pp, qq, c));
        }
    }
    Some(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use OpKind::{Annihilate as B, Create as Bd};

    fn n(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Second-kind Stirling numbers by the recurrence
    /// S(n+1, k) = k S(n, k) + S(n, k-1).
    fn stirling2_recurrence(nn: usize) -> Vec<Vec<BigInt>> {
        let mut t = vec![vec![BigInt::zero(); nn + 1]; nn + 1];
        t[0][0] = BigInt::one();
        for i in 0..nn {
            for k in 1..=i + 1 {
                t[i + 1][k] = &t[i][k] * k + &t[i][k - 1];
            }
        }
        t
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 2), n(10));
        assert_eq!(binomial(4, 0), n(1));
        assert_eq!(binomial(3, 5), n(0));
        assert_eq!(
            binomial(60, 30),
            "118264581564861424".parse::<BigInt>().unwrap()
        );
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(5, 2), n(20));
        assert_eq!(falling_factorial(2, 3), n(0));
        assert_eq!(falling_factorial(7, 0), n(1));
        assert_eq!(falling_factorial(-2, 3), n(-24));
    }

    #[test]
    fn profile_of_b_bd_b() {
        let p = WordProfile::from_word(&[(B, 1), (Bd, 1), (B, 1)]).unwrap();
        assert_eq!(p.r(), &[1, 0]);
        assert_eq!(p.s(), &[1, 1]);
        assert_eq!(p.partial_excess(), &[0, -1]);
        assert_eq!(p.to_word(), vec![(B, 1), (Bd, 1), (B, 1)]);
    }

    #[test]
    fn profile_merges_split_runs() {
        let p = WordProfile::from_word(&[(Bd, 1), (Bd, 2), (B, 1), (B, 0), (B, 1)]).unwrap();
        assert_eq!(p.blocks(), 1);
        assert_eq!((p.r(), p.s()), (&[3][..], &[2][..]));
        assert!(WordProfile::from_word(&[]).is_none());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn number_operator_powers_match_second_kind_stirling() {
        // (b†b)^n = sum_k S(n,k) b†^k b^k
        let table = stirling2_recurrence(6);
        for nn in 1..=6 {
            let p = WordProfile::new(vec![1; nn], vec![1; nn]).unwrap();
            for k in 0..=nn {
                assert_eq!(stirling_rs(&p, k as u64), table[nn][k], "n={nn} k={k}");
            }
        }
        let sq = WordProfile::new(vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!((stirling_rs(&sq, 1), stirling_rs(&sq, 2)), (n(1), n(1)));
        let cube = WordProfile::new(vec![1, 1, 1], vec![1, 1, 1]).unwrap();
        let got: Vec<BigInt> = (1..=3).map(|k| stirling_rs(&cube, k)).collect();
        assert_eq!(got, vec![n(1), n(3), n(1)]);
    }

    #[test]
    fn already_normal_word_is_fixed() {
        let p = WordProfile::from_word(&[(Bd, 2)]).unwrap();
        assert_eq!(blasiak_normal_order(&p).terms, vec![(2, 0, n(1))]);
        let p = WordProfile::from_word(&[(Bd, 3), (B, 2)]).unwrap();
        assert_eq!(blasiak_normal_order(&p).terms, vec![(3, 2, n(1))]);
        let p = WordProfile::from_word(&[(B, 4)]).unwrap();
        assert_eq!(blasiak_normal_order(&p).terms, vec![(0, 4, n(1))]);
    }

    #[test]
    fn b_bd_b() {
        let p = WordProfile::from_word(&[(B, 1), (Bd, 1), (B, 1)]).unwrap();
        assert_eq!(
            blasiak_normal_order(&p).terms,
            vec![(0, 1, n(1)), (1, 2, n(1))]
        );
    }

    #[test]
    fn negative_excess_branch() {
        // b² b† = 2b + b† b²
        let p = WordProfile::from_word(&[(B, 2), (Bd, 1)]).unwrap();
        assert!(p.excess() < 0);
        assert_eq!(
            blasiak_normal_order(&p).terms,
            vec![(0, 1, n(2)), (1, 2, n(1))]
        );
    }

    #[test]
    fn b_bd_is_one_plus_number() {
        let p = WordProfile::from_word(&[(B, 1), (Bd, 1)]).unwrap();
        assert_eq!(
            blasiak_normal_order(&p).terms,
            vec![(0, 0, n(1)), (1, 1, n(1))]
        );
    }

    #[test]
    fn large_words_stay_exact() {
        // b^20 b†^20 has constant term 20! which overflows u64 products
        let p = WordProfile::from_word(&[(B, 20), (Bd, 20)]).unwrap();
        let out = blasiak_normal_order(&p);
        let constant = out.terms.iter().find(|t| t.0 == 0 && t.1 == 0).unwrap();
        let fact20: BigInt = (1..=20u32).map(BigInt::from).product();
        assert_eq!(constant.2, fact20);
        // coefficient of b†^k b^k is C(20,k)^2 (20-k)!
        for (p_, q_, c) in &out.terms {
            assert_eq!(p_, q_);
            let k = *p_ as u64;
            let f: BigInt = (1..=(20 - k)).map(BigInt::from).product();
            assert_eq!(*c, binomial(20, k) * binomial(20, k) * f);
        }
    }

    #[test]
    fn machine_and_big_paths_agree() {
        let profiles = [
            (vec![1, 2, 0, 3], vec![2, 1, 3, 1]),
            (vec![3, 3], vec![1, 4]),
            (vec![0, 5], vec![2, 2]),
            (vec![4; 6], vec![4; 6]),
        ];
        for (r, s) in profiles {
            let p = WordProfile::new(r, s).unwrap();
            let total: u32 = p.s().iter().sum();
            let mut t = StirlingTable::new(&p);
            for k in 0..=total as usize {
                let big = t.stirling_big(k);
                if let Some(small) = t.stirling_small(k) {
                    assert_eq!(BigInt::from(small), big, "k={k}");
                }
            }
            let small = blasiak_small(&p).unwrap();
            let big = blasiak_normal_order(&p).terms;
            assert_eq!(small.len(), big.len());
            for ((p1, q1, c1), (p2, q2, c2)) in small.iter().zip(&big) {
                assert_eq!((p1, q1, &BigInt::from(*c1)), (p2, q2, c2));
            }
        }
        // large enough to overflow i128 on the way
        let p = WordProfile::new(vec![40], vec![40]).unwrap();
        let mut t = StirlingTable::new(&p);
        assert!(t.stirling_small(40).is_none());
        assert_eq!(t.stirling(40), BigInt::one());
    }
}
