//! Tables of α_n(S), β_n(S) and their signed analogues.
//!
//! Values are exact. They are stored as `i128` because every intermediate
//! of the subset transform is bounded by `Σ_S |α(S)|`, which stays far below
//! `2^127` for all sizes the limits allow; every operation is checked and an
//! overflow is reported as [`Error::Overflow`] rather than wrapping.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numbers::{factorials_i128, mask_parts, multinomial, Composition, ExactInt, SubsetMask};
use crate::parity;

/// Soft size limits for table construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_unsigned: u64,
    pub max_signed: u64,
    pub max_brute_unsigned: u64,
    pub max_brute_signed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_unsigned: 24,
            max_signed: 18,
            max_brute_unsigned: 9,
            max_brute_signed: 7,
        }
    }
}

fn check_limit(what: &'static str, n: u64, limit: u64) -> Result<()> {
    if n > limit {
        Err(Error::ResourceLimit {
            what,
            requested: n,
            limit,
        })
    } else {
        Ok(())
    }
}

/// Number of elements in the subset universe: `n - 1` unsigned, `n` signed.
pub fn universe_size(n: u64, signed: bool) -> u32 {
    if signed {
        n as u32
    } else {
        n.saturating_sub(1) as u32
    }
}

/// The full map `S -> β_n(S)` (or `β±_n(S)`), indexed by subset mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentTable {
    n: u64,
    signed: bool,
    values: Vec<i128>,
}

impl DescentTable {
    /// Wraps precomputed values, e.g. from a cache file.
    pub fn from_values(n: u64, signed: bool, values: Vec<i128>) -> Result<Self> {
        if n == 0 {
            return Err(Error::contract("table size n must be positive"));
        }
        let expected = 1usize
            .checked_shl(universe_size(n, signed))
            .ok_or(Error::Overflow("table length"))?;
        if values.len() != expected {
            return Err(Error::contract(alloc::format!(
                "table for n={n} needs {expected} values, got {}",
                values.len()
            )));
        }
        Ok(DescentTable { n, signed, values })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    pub fn universe(&self) -> u32 {
        universe_size(self.n, self.signed)
    }

    pub fn values(&self) -> &[i128] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, mask: u64) -> i128 {
        self.values[mask as usize]
    }

    pub fn value(&self, subset: &SubsetMask) -> Result<i128> {
        if subset.universe() != self.universe() {
            return Err(Error::contract("subset universe does not match the table"));
        }
        Ok(self.values[subset.bits() as usize])
    }

    pub fn sum(&self) -> ExactInt {
        self.values.iter().map(|&v| BigInt::from(v)).sum()
    }

    pub fn max(&self) -> i128 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Number of entries; `Q(1)` for the descent set polynomial.
    pub fn subset_count(&self) -> u64 {
        self.values.len() as u64
    }
}

impl fmt::Display for DescentTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.signed { "signed" } else { "unsigned" };
        write!(f, "{kind} descent table n={}:", self.n)?;
        for v in &self.values {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

/// α_n(S): permutations of size `n` with descent set contained in `S`.
pub fn alpha(n: u64, subset: &SubsetMask) -> Result<ExactInt> {
    if n == 0 || subset.universe() as u64 + 1 != n {
        return Err(Error::contract("alpha needs S ⊆ [n-1]"));
    }
    multinomial(n, &Composition::new(mask_parts(n, subset.bits()))?)
}

/// α±_n(S): signed permutations with descent set contained in `S ⊆ [n]`.
///
/// Positions outside `S` must ascend, so the word splits into increasing
/// runs at the elements of `S ∖ {1}`. Each run takes any set of absolute
/// values and any signs, except that the first run must stay positive when
/// `1 ∉ S` (it has to ascend from `π_0 = 0`).
pub fn alpha_signed(n: u64, subset: &SubsetMask) -> Result<ExactInt> {
    if subset.universe() as u64 != n {
        return Err(Error::contract("signed alpha needs S ⊆ [n]"));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let blocks = signed_blocks(n, subset.bits());
    let free_signs = if subset.bits() & 1 == 1 {
        n
    } else {
        n - blocks[0]
    };
    let m = multinomial(n, &Composition::new(blocks)?)?;
    Ok(m << free_signs)
}

/// Run lengths of a signed word of length `n` cut before each element of
/// `S ∖ {1}` (bit `i-1` ↔ element `i`).
fn signed_blocks(n: u64, bits: u64) -> Vec<u64> {
    // Element s >= 2 cuts between positions s-1 and s, like element s-1 of
    // an unsigned composition of n.
    mask_parts(n, bits >> 1)
}

/// All α values for a table, as exact `i128`.
pub fn alpha_values(n: u64, signed: bool) -> Result<Vec<i128>> {
    if n == 0 {
        return Err(Error::contract("n must be positive"));
    }
    let universe = universe_size(n, signed);
    let fact = factorials_i128(n)?;
    let size = 1usize
        .checked_shl(universe)
        .ok_or(Error::Overflow("table length"))?;
    let mut out = Vec::with_capacity(size);
    for bits in 0..size as u64 {
        let parts = if signed {
            signed_blocks(n, bits)
        } else {
            mask_parts(n, bits)
        };
        let mut v = fact[n as usize];
        for &p in &parts {
            v /= fact[p as usize];
        }
        if signed {
            let free = if bits & 1 == 1 { n } else { n - parts[0] };
            v = v
                .checked_mul(1i128 << free)
                .ok_or(Error::Overflow("signed alpha"))?;
        }
        out.push(v);
    }
    Ok(out)
}

/// In-place `x_S <- Σ_{T⊆S} (-1)^{|S-T|} x_T`, one sweep per element.
pub fn subset_mobius(values: &mut [i128]) -> Result<()> {
    let len = values.len();
    assert!(len.is_power_of_two());
    let mut stride = 1usize;
    while stride < len {
        for block in values.chunks_mut(stride * 2) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h = h
                    .checked_sub(*l)
                    .ok_or(Error::Overflow("subset transform"))?;
            }
        }
        stride *= 2;
    }
    Ok(())
}

/// In-place `x_S <- Σ_{T⊆S} x_T`.
pub fn subset_zeta(values: &mut [i128]) -> Result<()> {
    let len = values.len();
    assert!(len.is_power_of_two());
    let mut stride = 1usize;
    while stride < len {
        for block in values.chunks_mut(stride * 2) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h = h
                    .checked_add(*l)
                    .ok_or(Error::Overflow("subset transform"))?;
            }
        }
        stride *= 2;
    }
    Ok(())
}

pub fn beta_table(n: u64, signed: bool) -> Result<DescentTable> {
    beta_table_with(n, signed, &Limits::default())
}

/// β table from α by the subset Möbius transform.
pub fn beta_table_with(n: u64, signed: bool, limits: &Limits) -> Result<DescentTable> {
    if signed {
        check_limit("signed table size", n, limits.max_signed)?;
    } else {
        check_limit("unsigned table size", n, limits.max_unsigned)?;
    }
    let mut values = alpha_values(n, signed)?;
    subset_mobius(&mut values)?;
    DescentTable::from_values(n, signed, values)
}

pub fn brute_force_table(n: u64, signed: bool) -> Result<DescentTable> {
    brute_force_table_with(n, signed, &Limits::default())
}

/// Table built by classifying every (signed) permutation.
pub fn brute_force_table_with(n: u64, signed: bool, limits: &Limits) -> Result<DescentTable> {
    if signed {
        check_limit("signed brute-force size", n, limits.max_brute_signed)?;
    } else {
        check_limit("unsigned brute-force size", n, limits.max_brute_unsigned)?;
    }
    if n == 0 {
        return Err(Error::contract("n must be positive"));
    }
    let mut values = vec![0i128; 1usize << universe_size(n, signed)];
    let mut perm: Vec<i64> = (1..=n as i64).collect();
    loop {
        if signed {
            for signs in 0..1u64 << n {
                let mut prev = 0i64;
                let mut mask = 0u64;
                for (i, &v) in perm.iter().enumerate() {
                    let x = if signs >> i & 1 == 1 { -v } else { v };
                    if prev > x {
                        mask |= 1 << i;
                    }
                    prev = x;
                }
                values[mask as usize] += 1;
            }
        } else {
            let mask = perm
                .windows(2)
                .enumerate()
                .filter(|(_, w)| w[0] > w[1])
                .fold(0u64, |m, (i, _)| m | 1 << i);
            values[mask as usize] += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    DescentTable::from_values(n, signed, values)
}

fn next_permutation(p: &mut [i64]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// An exact rational `numerator / 2^exponent` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    numerator: ExactInt,
    exponent: u32,
}

impl Dyadic {
    pub fn new(numerator: ExactInt, exponent: u32) -> Self {
        let mut num = numerator;
        let mut exp = exponent;
        while exp > 0 && !num.is_zero() && (&num & BigInt::one()).is_zero() {
            num >>= 1;
            exp -= 1;
        }
        if num.is_zero() {
            exp = 0;
        }
        Dyadic {
            numerator: num,
            exponent: exp,
        }
    }

    pub fn numerator(&self) -> &ExactInt {
        &self.numerator
    }

    /// `k` in the denominator `2^k`.
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn half() -> Self {
        Dyadic::new(BigInt::one(), 1)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        Dyadic::new(a - b, e)
    }

    /// `self * 2^k`, exact when the result is dyadic.
    pub fn shl(&self, k: u32) -> Dyadic {
        if k >= self.exponent {
            Dyadic::new(&self.numerator << (k - self.exponent), 0)
        } else {
            Dyadic::new(self.numerator.clone(), self.exponent - k)
        }
    }

    pub fn to_integer(&self) -> Option<ExactInt> {
        (self.exponent == 0).then(|| self.numerator.clone())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "{}/2", self.numerator),
            e => write!(f, "{}/2^{e}", self.numerator),
        }
    }
}

/// ρ(n): proportion of `S ⊆ [n-1]` with β_n(S) odd.
///
/// Runs over GF(2) only, so it reaches sizes where exact tables do not fit.
pub fn rho(n: u64) -> Result<Dyadic> {
    let odd = parity::odd_beta_count(n)?;
    Ok(Dyadic::new(BigInt::from(odd), (n - 1) as u32))
}

/// ρ computed from an exact table.
pub fn rho_from_table(table: &DescentTable) -> Dyadic {
    let odd = table.values().iter().filter(|&&v| v & 1 == 1).count();
    Dyadic::new(BigInt::from(odd), table.universe())
}

/// Residue classes of β modulo `m`, weighted by falling factorials.
///
/// `counts[r] = Σ_{β(S) ≡ r} β(S)(β(S)-1)⋯(β(S)-j+1)` for `j = order`; this is
/// `t^j Q^{(j)}(t)` reduced modulo `t^m - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueHistogram {
    modulus: u64,
    order: u32,
    counts: Vec<ExactInt>,
}

impl ResidueHistogram {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn counts(&self) -> &[ExactInt] {
        &self.counts
    }

    pub fn count(&self, residue: u64) -> &ExactInt {
        &self.counts[residue as usize]
    }

    pub fn total(&self) -> ExactInt {
        self.counts.iter().sum()
    }
}

/// Falling factorial `x (x-1) ⋯ (x-j+1)` as `i128`, `None` on overflow.
fn falling_i128(x: i128, j: u32) -> Option<i128> {
    (0..j as i128).try_fold(1i128, |acc, k| acc.checked_mul(x - k))
}

fn falling_big(x: i128, j: u32) -> BigInt {
    (0..j as i128).fold(BigInt::one(), |acc, k| acc * BigInt::from(x - k))
}

pub fn residue_histogram(
    table: &DescentTable,
    modulus: u64,
    order: u32,
) -> Result<ResidueHistogram> {
    if modulus == 0 {
        return Err(Error::contract("modulus must be at least 1"));
    }
    let m = modulus as usize;
    let counts = if order == 0 {
        let mut small = vec![0u64; m];
        for &v in table.values() {
            small[v.rem_euclid(modulus as i128) as usize] += 1;
        }
        small.into_iter().map(BigInt::from).collect()
    } else {
        let mut wide = vec![0i128; m];
        let mut big = vec![BigInt::zero(); m];
        for &v in table.values() {
            let r = v.rem_euclid(modulus as i128) as usize;
            match falling_i128(v, order).and_then(|w| wide[r].checked_add(w)) {
                Some(sum) => wide[r] = sum,
                None => {
                    big[r] += BigInt::from(wide[r]) + falling_big(v, order);
                    wide[r] = 0;
                }
            }
        }
        big.into_iter()
            .zip(wide)
            .map(|(b, w)| b + BigInt::from(w))
            .collect()
    };
    Ok(ResidueHistogram {
        modulus,
        order,
        counts,
    })
}

/// Histogram over residues only (order 0) as machine integers.
pub fn residue_counts(table: &DescentTable, modulus: u64) -> Vec<u64> {
    let mut counts = vec![0u64; modulus as usize];
    for &v in table.values() {
        counts[v.rem_euclid(modulus as i128) as usize] += 1;
    }
    counts
}

/// Predicted residue of β_n(S) modulo `p` for `q = p^t` dividing `n`:
/// `(-1)^{|S - q·[r-1]|} · β_r(S/q)` with `r = n / q`.
pub fn mod_p_prediction(n: u64, q: u64, subset: &SubsetMask) -> Result<u64> {
    let (p, _) =
        crate::numbers::prime_power(q).ok_or_else(|| Error::contract("q must be a prime power"))?;
    if n == 0 || !n.is_multiple_of(q) {
        return Err(Error::contract("q must divide n"));
    }
    if subset.universe() as u64 + 1 != n {
        return Err(Error::contract("prediction needs S ⊆ [n-1]"));
    }
    let r = n / q;
    let small = beta_table(r, false)?;
    Ok(prediction_with(&small, q, p, subset.bits()))
}

/// Same as [`mod_p_prediction`] with β_r already tabulated.
pub fn prediction_with(small: &DescentTable, q: u64, p: u64, bits: u64) -> u64 {
    let mut outside = 0u32;
    let mut reduced = 0u64;
    let mut rest = bits;
    let r = small.n();
    while rest != 0 {
        let s = rest.trailing_zeros() as u64 + 1;
        rest &= rest - 1;
        if s.is_multiple_of(q) && s / q <= r.saturating_sub(1) {
            reduced |= 1 << (s / q - 1);
        } else {
            outside += 1;
        }
    }
    let b = small.get(reduced).rem_euclid(p as i128) as u64;
    if outside.is_multiple_of(2) {
        b
    } else {
        (p - b) % p
    }
}

/// Exact sum helper used by callers needing β as big integers.
pub fn to_exact(v: i128) -> ExactInt {
    BigInt::from(v)
}

/// `v` as `u64` when it fits.
pub fn to_u64(v: &ExactInt) -> Option<u64> {
    if v.is_negative() {
        None
    } else {
        v.to_u64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::{euler_number, factorial, signed_euler_number};
    use alloc::string::ToString;

    fn mask(universe: u32, elements: &[u64]) -> SubsetMask {
        SubsetMask::from_elements(universe, elements).unwrap()
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(4, &mask(3, &[2])).unwrap(), BigInt::from(6));
        assert_eq!(alpha(7, &SubsetMask::empty(6)).unwrap(), BigInt::from(1));
        assert_eq!(alpha(3, &mask(2, &[1, 2])).unwrap(), BigInt::from(6));
    }

    #[test]
    fn signed_alpha_examples() {
        assert_eq!(alpha_signed(2, &mask(2, &[1])).unwrap(), BigInt::from(4));
        assert_eq!(alpha_signed(2, &mask(2, &[2])).unwrap(), BigInt::from(4));
        for n in 1..=6 {
            assert_eq!(
                alpha_signed(n, &SubsetMask::empty(n as u32)).unwrap(),
                BigInt::from(1)
            );
        }
    }

    #[test]
    fn small_tables() {
        let t3 = beta_table(3, false).unwrap();
        assert_eq!(t3.values(), &[1, 2, 2, 1]);
        let t4 = brute_force_table(4, false).unwrap();
        // ∅,{1},{2},{3},{1,2},{1,3},{2,3},{1,2,3}
        let by_subset = [
            (0b000, 1),
            (0b001, 3),
            (0b010, 5),
            (0b100, 3),
            (0b011, 3),
            (0b101, 5),
            (0b110, 3),
            (0b111, 1),
        ];
        for (m, v) in by_subset {
            assert_eq!(t4.get(m), v);
        }
        assert_eq!(beta_table(4, false).unwrap(), t4);
        let s2 = brute_force_table(2, true).unwrap();
        assert_eq!(s2.values(), &[1, 3, 3, 1]);
        assert_eq!(beta_table(2, true).unwrap(), s2);
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(brute_force_table(1, false).unwrap().values(), &[1]);
        assert_eq!(beta_table(1, false).unwrap().values(), &[1]);
        assert_eq!(brute_force_table(1, true).unwrap().values(), &[1, 1]);
        assert_eq!(beta_table(1, true).unwrap().values(), &[1, 1]);
    }

    #[test]
    fn alternating_class_is_euler_number() {
        let t5 = brute_force_table(5, false).unwrap();
        assert_eq!(t5.value(&mask(4, &[1, 3])).unwrap(), 16);
    }

    #[test]
    fn oracle_equivalence() {
        for n in 1..=8 {
            assert_eq!(
                beta_table(n, false).unwrap(),
                brute_force_table(n, false).unwrap(),
                "unsigned n={n}"
            );
        }
        for n in 1..=6 {
            assert_eq!(
                beta_table(n, true).unwrap(),
                brute_force_table(n, true).unwrap(),
                "signed n={n}"
            );
        }
    }

    #[test]
    fn signed_alpha_is_cumulative_beta() {
        for n in 1..=10u64 {
            let beta = beta_table(n, true).unwrap();
            let mut cumulative = beta.values().to_vec();
            subset_zeta(&mut cumulative).unwrap();
            for bits in 0..1u64 << n {
                let s = SubsetMask::new(n as u32, bits).unwrap();
                assert_eq!(
                    alpha_signed(n, &s).unwrap(),
                    BigInt::from(cumulative[bits as usize])
                );
            }
        }
    }

    #[test]
    fn table_sums_and_maxima() {
        for n in 1..=12u64 {
            let t = beta_table(n, false).unwrap();
            assert_eq!(t.sum(), factorial(n));
            assert_eq!(BigInt::from(t.max()), euler_number(n));
            assert_eq!(t.get(0), 1);
        }
        for n in 1..=10u64 {
            let t = beta_table(n, true).unwrap();
            assert_eq!(t.sum(), factorial(n) << n);
            assert_eq!(BigInt::from(t.max()), signed_euler_number(n));
        }
    }

    #[test]
    fn complement_symmetry() {
        for n in 1..=16u64 {
            let t = beta_table(n, false).unwrap();
            let full = (1u64 << (n - 1)) - 1;
            for s in 0..=full {
                assert_eq!(t.get(s), t.get(full ^ s));
            }
        }
    }

    #[test]
    fn limits_are_enforced() {
        assert!(matches!(
            beta_table(30, false),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            beta_table(19, true),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            brute_force_table(10, false),
            Err(Error::ResourceLimit { .. })
        ));
        let relaxed = Limits {
            max_unsigned: 26,
            ..Limits::default()
        };
        assert!(beta_table_with(4, false, &relaxed).is_ok());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(3).unwrap(), Dyadic::new(BigInt::from(1), 1));
        assert_eq!(rho(15).unwrap(), Dyadic::new(BigInt::from(29), 6));
        assert_eq!(rho(1).unwrap(), Dyadic::new(BigInt::from(1), 0));
        for n in 1..=16 {
            assert_eq!(
                rho(n).unwrap(),
                rho_from_table(&beta_table(n, false).unwrap())
            );
        }
    }

    #[test]
    fn dyadic_display() {
        assert_eq!(Dyadic::new(BigInt::from(3991), 13).to_string(), "3991/2^13");
        assert_eq!(Dyadic::new(BigInt::from(2), 2).to_string(), "1/2");
        assert_eq!(
            Dyadic::half()
                .sub(&Dyadic::new(BigInt::one(), 0))
                .to_string(),
            "-1/2"
        );
        assert_eq!(Dyadic::new(BigInt::from(4), 2).to_string(), "1");
    }

    #[test]
    fn histogram_examples() {
        let t4 = beta_table(4, false).unwrap();
        let h0 = residue_histogram(&t4, 4, 0).unwrap();
        let c: Vec<BigInt> = [0, 4, 0, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(h0.counts(), c.as_slice());
        let h1 = residue_histogram(&t4, 4, 1).unwrap();
        let c: Vec<BigInt> = [0, 12, 0, 12].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(h1.counts(), c.as_slice());
        for n in 1..=8 {
            let t = beta_table(n, false).unwrap();
            let h = residue_histogram(&t, 1, 0).unwrap();
            assert_eq!(h.counts()[0], BigInt::from(1u64 << (n - 1)));
        }
        assert!(residue_histogram(&t4, 0, 0).is_err());
    }

    #[test]
    fn weighted_histogram_matches_bigint_route() {
        let t = beta_table(12, false).unwrap();
        for order in 0..=3u32 {
            let h = residue_histogram(&t, 7, order).unwrap();
            let mut naive = vec![BigInt::zero(); 7];
            for &v in t.values() {
                naive[v.rem_euclid(7) as usize] += falling_big(v, order);
            }
            assert_eq!(h.counts(), naive.as_slice());
        }
    }

    #[test]
    fn mod_p_prediction_examples() {
        let s = mask(8, &[4]);
        assert_eq!(mod_p_prediction(9, 9, &s).unwrap(), 2);
        let exact = alpha(9, &s).unwrap() - 1;
        assert_eq!(exact, BigInt::from(125));
        assert_eq!(beta_table(9, false).unwrap().value(&s).unwrap(), 125);
        assert!(mod_p_prediction(10, 3, &SubsetMask::empty(9)).is_err());
        assert!(mod_p_prediction(12, 6, &SubsetMask::empty(11)).is_err());
    }
}
