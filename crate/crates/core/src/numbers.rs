//! Exact integer combinatorics: factorials, multinomials, base-p carries,
//! binary expansions, Euler and Springer numbers, and the bijection between
//! subsets of `[n-1]` and compositions of `n`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer used for every statistic.
pub type ExactInt = BigInt;

/// Largest universe a [`SubsetMask`] can hold in one machine word.
pub const MAX_MASK_UNIVERSE: u32 = 63;

/// An ordered list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
    total: u64,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::contract("composition parts must be positive"));
        }
        let total = parts
            .iter()
            .try_fold(0u64, |acc, &p| acc.checked_add(p))
            .ok_or(Error::Overflow("composition total"))?;
        Ok(Composition { parts, total })
    }

    /// The composition with no parts, the only composition of 0.
    pub fn empty() -> Self {
        Composition {
            parts: Vec::new(),
            total: 0,
        }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A subset of `{1, ..., universe}` stored as a bitmask, bit `i-1` for
/// element `i`.
///
/// Unsigned statistics of size `n` use `universe = n - 1`, signed ones use
/// `universe = n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    universe: u32,
    bits: u64,
}

impl SubsetMask {
    pub fn new(universe: u32, bits: u64) -> Result<Self> {
        if universe > MAX_MASK_UNIVERSE {
            return Err(Error::ResourceLimit {
                what: "mask universe",
                requested: universe as u64,
                limit: MAX_MASK_UNIVERSE as u64,
            });
        }
        if bits & !universe_mask(universe) != 0 {
            return Err(Error::contract("subset has elements outside its universe"));
        }
        Ok(SubsetMask { universe, bits })
    }

    pub fn empty(universe: u32) -> Self {
        assert!(universe <= MAX_MASK_UNIVERSE);
        SubsetMask { universe, bits: 0 }
    }

    pub fn full(universe: u32) -> Self {
        assert!(universe <= MAX_MASK_UNIVERSE);
        SubsetMask {
            universe,
            bits: universe_mask(universe),
        }
    }

    /// Builds a mask from 1-based elements.
    pub fn from_elements(universe: u32, elements: &[u64]) -> Result<Self> {
        let mut bits = 0u64;
        for &e in elements {
            if e == 0 || e > universe as u64 {
                return Err(Error::contract("element outside the subset universe"));
            }
            bits |= 1 << (e - 1);
        }
        SubsetMask::new(universe, bits)
    }

    pub fn universe(&self) -> u32 {
        self.universe
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, element: u64) -> bool {
        element >= 1 && element <= self.universe as u64 && self.bits >> (element - 1) & 1 == 1
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> {
        let mut rest = self.bits;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i as u64 + 1)
            }
        })
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn universe_mask(universe: u32) -> u64 {
    if universe >= 64 {
        u64::MAX
    } else {
        (1u64 << universe) - 1
    }
}

/// `n = 2^{j_1} + ... + 2^{j_k}` with `j_1 > ... > j_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryExpansion {
    exponents: Vec<u32>,
}

impl BinaryExpansion {
    pub fn of(n: u64) -> Self {
        let exponents = (0..64).rev().filter(|&j| n >> j & 1 == 1).collect();
        BinaryExpansion { exponents }
    }

    /// Exponents in strictly decreasing order.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// The powers `2^{j_i}` in decreasing order.
    pub fn powers(&self) -> Vec<u64> {
        self.exponents.iter().map(|&j| 1u64 << j).collect()
    }

    pub fn popcount(&self) -> u32 {
        self.exponents.len() as u32
    }

    pub fn value(&self) -> u64 {
        self.exponents.iter().map(|&j| 1u64 << j).sum()
    }
}

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> ExactInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc = C(n, i) * (n - i) / (i + 1) stays integral at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / (γ_1! ⋯ γ_m!)`.
pub fn multinomial(n: u64, gamma: &Composition) -> Result<ExactInt> {
    if gamma.total() != n {
        return Err(Error::contract(alloc::format!(
            "composition total {} differs from n = {n}",
            gamma.total()
        )));
    }
    let mut acc = BigInt::one();
    let mut partial = 0u64;
    for &part in gamma.parts() {
        partial += part;
        acc *= binomial(partial, part);
    }
    Ok(acc)
}

/// Table of `k!` for `k <= n` as `i128`, valid for `n <= 33`.
pub(crate) fn factorials_i128(n: u64) -> Result<Vec<i128>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc: i128 = 1;
    out.push(1);
    for k in 1..=n {
        acc = acc
            .checked_mul(k as i128)
            .ok_or(Error::Overflow("factorial"))?;
        out.push(acc);
    }
    Ok(out)
}

/// Number of carries when adding the parts of `gamma` column by column in
/// base `p`. A column whose digit sum plus incoming carry is `s` produces
/// `s / p` carries into the next column.
pub fn carries_base_p(gamma: &Composition, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::contract("carry base must be at least 2"));
    }
    if gamma.is_empty() {
        return Err(Error::contract("carries need a nonempty composition"));
    }
    let mut rest: Vec<u64> = gamma.parts().to_vec();
    let mut carry = 0u64;
    let mut carries = 0u64;
    while carry > 0 || rest.iter().any(|&x| x > 0) {
        let mut column = carry;
        for x in rest.iter_mut() {
            column += *x % p;
            *x /= p;
        }
        carry = column / p;
        carries += carry;
    }
    Ok(carries)
}

/// Exponent of the largest power of `p` dividing `value` (`value != 0`).
pub fn p_adic_valuation(value: &ExactInt, p: u64) -> u64 {
    assert!(p >= 2 && !value.is_zero());
    let p = BigInt::from(p);
    let mut v = value.clone();
    let mut count = 0;
    loop {
        let (q, r) = num_integer::Integer::div_rem(&v, &p);
        if !r.is_zero() {
            return count;
        }
        v = q;
        count += 1;
    }
}

/// Whether the multinomial coefficient of `gamma` is odd, i.e. the binary
/// digits of the parts are pairwise disjoint.
pub fn is_multinomial_odd(gamma: &Composition) -> bool {
    let mut seen = 0u64;
    for &part in gamma.parts() {
        if seen & part != 0 {
            return false;
        }
        seen |= part;
    }
    true
}

/// The composition `D(S) = (s_1, s_2 - s_1, ..., n - s_{m-1})`.
pub fn subset_to_composition(n: u64, subset: &SubsetMask) -> Result<Composition> {
    if n == 0 || subset.universe() as u64 + 1 != n {
        return Err(Error::contract("subset universe must be [n-1]"));
    }
    Ok(Composition {
        parts: mask_parts(n, subset.bits()),
        total: n,
    })
}

/// Inverse of [`subset_to_composition`]: partial sums except the last.
pub fn composition_to_subset(gamma: &Composition) -> Result<SubsetMask> {
    let n = gamma.total();
    if n == 0 {
        return Err(Error::contract(
            "only compositions of n >= 1 map to subsets",
        ));
    }
    let mut bits = 0u64;
    let mut partial = 0u64;
    for &part in &gamma.parts()[..gamma.len() - 1] {
        partial += part;
        bits |= 1 << (partial - 1);
    }
    SubsetMask::new((n - 1) as u32, bits)
}

/// Parts of the composition of `n` encoded by `bits` over `[n-1]`.
pub(crate) fn mask_parts(n: u64, bits: u64) -> Vec<u64> {
    let mut parts = Vec::with_capacity(bits.count_ones() as usize + 1);
    let mut last = 0u64;
    let mut rest = bits;
    while rest != 0 {
        let s = rest.trailing_zeros() as u64 + 1;
        rest &= rest - 1;
        parts.push(s - last);
        last = s;
    }
    parts.push(n - last);
    parts
}

/// Elements of `[n-1]` that are sums of a nonempty proper subset of the
/// binary powers of `n`, in increasing order.
pub fn essential_elements(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::contract("essential elements need n >= 1"));
    }
    let powers = BinaryExpansion::of(n).powers();
    let k = powers.len();
    let mut out: Vec<u64> = (1u64..(1 << k) - 1)
        .map(|b| (0..k).filter(|&i| b >> i & 1 == 1).map(|i| powers[i]).sum())
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Euler (zigzag) numbers `E_0..=E_n` from the Seidel boustrophedon.
///
/// Row `r` is built from row `r-1` by running sums taken in the opposite
/// direction; the last entry of row `r` is `E_r`.
pub fn euler_numbers(n: u64) -> Vec<ExactInt> {
    let mut out = vec![BigInt::one()];
    let mut row = vec![BigInt::one()];
    for r in 1..=n as usize {
        let mut next = Vec::with_capacity(r + 1);
        next.push(BigInt::zero());
        for k in 1..=r {
            let v = &next[k - 1] + &row[r - k];
            next.push(v);
        }
        out.push(next[r].clone());
        row = next;
    }
    out
}

pub fn euler_number(n: u64) -> ExactInt {
    euler_numbers(n).pop().unwrap()
}

/// Springer numbers `E±_0..=E±_n`, the number of alternating signed
/// permutations.
///
/// Signed analogue of the boustrophedon: after placing some entries of an
/// alternating signed word, the future only depends on how many unused
/// values `±r` remain (`2m` of them) and how many lie below the last entry
/// (`j`). Picking the `i`-th smallest candidate removes it and its negative,
/// leaving `i-1` (if `i <= m`) or `i-2` candidates below it. Each row is then
/// a running sum over the previous row read in one direction, exactly as in
/// Seidel's triangle.
pub fn signed_euler_numbers(n: u64) -> Vec<ExactInt> {
    let mut out = vec![BigInt::one()];
    // up[j] / down[j]: completions with m remaining values when the next
    // step must go up / down and j candidates lie below the last entry.
    let mut up: Vec<BigInt> = vec![BigInt::one()];
    let mut down: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n as usize {
        // Contribution of choosing the i-th candidate (1-based, i <= 2m).
        let next_index = |i: usize| if i <= m { i - 1 } else { i - 2 };
        let mut new_up = vec![BigInt::zero(); 2 * m + 1];
        let mut new_down = vec![BigInt::zero(); 2 * m + 1];
        // Going down from j: sum over i in 1..=j of up_{m-1}[next(i)].
        let mut acc = BigInt::zero();
        for j in 1..=2 * m {
            acc += &up[next_index(j)];
            new_down[j] = acc.clone();
        }
        // Going up from j: sum over i in j+1..=2m of down_{m-1}[next(i)].
        let mut acc = BigInt::zero();
        for j in (0..2 * m).rev() {
            acc += &down[next_index(j + 1)];
            new_up[j] = acc.clone();
        }
        out.push(new_up[m].clone());
        up = new_up;
        down = new_down;
    }
    out
}

pub fn signed_euler_number(n: u64) -> ExactInt {
    signed_euler_numbers(n).pop().unwrap()
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some((p, t))` when `q = p^t` with `p` prime and `t >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    match factorize(q).as_slice() {
        [(p, t)] => Some((*p, *t)),
        _ => None,
    }
}

/// Product of the distinct primes dividing `n`.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Möbius function.
pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    /// Pascal-rule table, an oracle independent of the product formula.
    fn pascal(n: usize) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::one()]];
        for r in 1..=n {
            let prev = &rows[r - 1];
            let mut row = vec![BigInt::one(); r + 1];
            for k in 1..r {
                row[k] = &prev[k - 1] + &prev[k];
            }
            rows.push(row);
        }
        rows
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(4, &comp(&[2, 2])).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(3, &comp(&[1, 1, 1])).unwrap(), BigInt::from(6));
        let rows = pascal(23);
        assert_eq!(rows[23][11], BigInt::from(1352078));
        assert_eq!(
            multinomial(23, &comp(&[11, 12])).unwrap(),
            BigInt::from(1352078)
        );
    }

    #[test]
    fn multinomial_rejects_total_mismatch() {
        assert!(matches!(
            multinomial(5, &comp(&[2, 2])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn multinomial_times_factorials_is_factorial() {
        for n in 1..=12u64 {
            for bits in 0..1u64 << (n - 1) {
                let gamma = Composition::new(mask_parts(n, bits)).unwrap();
                let prod: BigInt = gamma.parts().iter().map(|&g| factorial(g)).product();
                assert_eq!(multinomial(n, &gamma).unwrap() * prod, factorial(n));
            }
        }
    }

    #[test]
    fn carries_examples() {
        assert_eq!(carries_base_p(&comp(&[2, 2]), 2).unwrap(), 1);
        assert_eq!(carries_base_p(&comp(&[1, 2]), 2).unwrap(), 0);
        assert_eq!(BigInt::from(1352078), BigInt::from(2) * 676039);
        assert_eq!(carries_base_p(&comp(&[11, 12]), 2).unwrap(), 1);
        assert!(carries_base_p(&comp(&[1]), 1).is_err());
        assert!(carries_base_p(&Composition::empty(), 2).is_err());
    }

    #[test]
    fn odd_multinomial_examples() {
        assert!(is_multinomial_odd(&comp(&[1, 2])));
        assert!(!is_multinomial_odd(&comp(&[2, 2])));
        assert!(is_multinomial_odd(&comp(&[5, 2, 8])));
    }

    #[test]
    fn composition_bijection() {
        let empty = SubsetMask::empty(4);
        assert_eq!(subset_to_composition(5, &empty).unwrap().parts(), &[5]);
        let s = SubsetMask::from_elements(4, &[2, 3]).unwrap();
        assert_eq!(subset_to_composition(5, &s).unwrap().parts(), &[2, 1, 2]);
        for bits in 0..1u64 << 7 {
            let s = SubsetMask::new(7, bits).unwrap();
            let gamma = subset_to_composition(8, &s).unwrap();
            assert_eq!(composition_to_subset(&gamma).unwrap(), s);
        }
    }

    #[test]
    fn essential_examples() {
        assert_eq!(essential_elements(6).unwrap(), vec![2, 4]);
        assert!(essential_elements(8).unwrap().is_empty());
        assert_eq!(essential_elements(7).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        for n in 1..=1024u64 {
            let k = n.count_ones();
            assert_eq!(essential_elements(n).unwrap().len() as u64, (1 << k) - 2);
        }
    }

    #[test]
    fn binary_expansion_roundtrip() {
        for n in 0..2000u64 {
            let b = BinaryExpansion::of(n);
            assert_eq!(b.value(), n);
            assert_eq!(b.popcount(), n.count_ones());
            assert!(b.exponents().windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn euler_numbers_match_known_degrees() {
        let e = euler_numbers(14);
        let expected = [
            1u64, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765, 22368256, 199360981,
        ];
        for (i, &v) in expected.iter().enumerate() {
            assert_eq!(e[i], BigInt::from(v), "E_{i}");
        }
        assert_eq!(euler_number(6), BigInt::from(61));
    }

    #[test]
    fn springer_numbers_match_known_degrees() {
        let e = signed_euler_numbers(10);
        let expected = [
            1u64, 1, 3, 11, 57, 361, 2763, 24611, 250737, 2873041, 36581523,
        ];
        for (i, &v) in expected.iter().enumerate() {
            assert_eq!(e[i], BigInt::from(v), "E±_{i}");
        }
    }

    #[test]
    fn arithmetic_helpers() {
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(radical(7680), 30);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(euler_phi(7680), 2048);
    }

    #[test]
    fn subset_mask_validation() {
        assert!(SubsetMask::new(3, 0b1000).is_err());
        let s = SubsetMask::from_elements(5, &[5, 1, 3]).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 5]);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        assert!(SubsetMask::from_elements(3, &[4]).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]
            #[test]
            fn kummer_valuation(parts in proptest::collection::vec(1u64..=8, 1..6), pi in 0usize..3) {
                let p = [2u64, 3, 5][pi];
                let total: u64 = parts.iter().sum();
                prop_assume!(total <= 20);
                let gamma = Composition::new(parts).unwrap();
                let c = carries_base_p(&gamma, p).unwrap();
                let m = multinomial(total, &gamma).unwrap();
                prop_assert_eq!(p_adic_valuation(&m, p), c);
            }
        }
    }
}
