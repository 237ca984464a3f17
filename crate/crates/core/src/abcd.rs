//! ab-index and cd-index of graded posets, the ω map, and sign-vector
//! evaluations of the multivariate ab-index.
//!
//! An ab-word of degree `d` is a `d`-bit mask, bit `i` set when position
//! `i + 1` holds `b`. The coefficient of `u_S` in the ab-index is `h_S`, so a
//! flag h-vector indexed by subset mask is already an ab-polynomial.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::descent::{beta_table, DescentTable};
use crate::error::{Error, Result};
use crate::numbers::{binomial, universe_mask, SubsetMask};

/// Largest ab-degree handled densely.
pub const MAX_AB_DEGREE: u32 = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbPoly {
    degree: u32,
    coeffs: Vec<BigInt>,
}

impl AbPoly {
    pub fn zero(degree: u32) -> Result<Self> {
        if degree > MAX_AB_DEGREE {
            return Err(Error::ResourceLimit {
                what: "ab degree",
                requested: degree as u64,
                limit: MAX_AB_DEGREE as u64,
            });
        }
        Ok(AbPoly {
            degree,
            coeffs: vec![BigInt::zero(); 1usize << degree],
        })
    }

    /// `Σ_S h_S u_S` for a flag h-vector indexed by subset mask.
    pub fn from_flag_h(h: &[i128]) -> Result<Self> {
        if !h.len().is_power_of_two() {
            return Err(Error::contract(
                "flag h-vector length must be a power of two",
            ));
        }
        let degree = h.len().trailing_zeros();
        let mut p = AbPoly::zero(degree)?;
        for (c, &v) in p.coeffs.iter_mut().zip(h) {
            *c = BigInt::from(v);
        }
        Ok(p)
    }

    pub fn from_coefficients(degree: u32, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != 1usize << degree {
            return Err(Error::contract("coefficient count must be 2^degree"));
        }
        AbPoly::zero(degree)?;
        Ok(AbPoly { degree, coeffs })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficient(&self, word: u64) -> &BigInt {
        &self.coeffs[word as usize]
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `a · self`.
    pub fn prepend_a(&self) -> Result<Self> {
        let mut out = AbPoly::zero(self.degree + 1)?;
        for (w, c) in self.coeffs.iter().enumerate() {
            out.coeffs[w << 1] = c.clone();
        }
        Ok(out)
    }

    /// Number of odd coefficients.
    pub fn odd_count(&self) -> usize {
        self.coeffs
            .iter()
            .filter(|c| !(*c & BigInt::one()).is_zero())
            .count()
    }
}

/// `Ψ(P) = Σ_S h_S u_S` for a descent table, i.e. the ab-index of the
/// Boolean algebra (unsigned) or the cubical lattice (signed).
pub fn ab_index(table: &DescentTable) -> Result<AbPoly> {
    AbPoly::from_flag_h(table.values())
}

/// Renders an ab-word, e.g. `abba`.
pub fn ab_word_string(degree: u32, word: u64) -> String {
    (0..degree)
        .map(|i| if word >> i & 1 == 1 { 'b' } else { 'a' })
        .collect()
}

/// A cd-word of weight `degree` (`c` weighs 1, `d` weighs 2). Bit `i` of
/// `d_starts` marks a `d` covering positions `i + 1` and `i + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CdWord {
    degree: u32,
    d_starts: u64,
}

impl CdWord {
    pub fn new(degree: u32, d_starts: u64) -> Result<Self> {
        let fits = degree >= 1 && d_starts & !universe_mask(degree - 1) == 0;
        if !(fits || (d_starts == 0)) || d_starts & (d_starts << 1) != 0 {
            return Err(Error::contract("d letters must fit and must not overlap"));
        }
        Ok(CdWord { degree, d_starts })
    }

    /// Parses a word over `{c, d}`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut degree = 0u32;
        let mut d_starts = 0u64;
        for ch in s.chars() {
            match ch {
                'c' => degree += 1,
                'd' => {
                    d_starts |= 1 << degree;
                    degree += 2;
                }
                _ => return Err(Error::contract("cd-words use only the letters c and d")),
            }
        }
        CdWord::new(degree, d_starts)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn d_count(&self) -> u32 {
        self.d_starts.count_ones()
    }

    /// The largest ab-word in its expansion (`c -> b`, `d -> ba`).
    pub fn lead_word(&self) -> u64 {
        let mut w = 0u64;
        let mut i = 0;
        while i < self.degree {
            w |= 1 << i;
            i += if self.d_starts >> i & 1 == 1 { 2 } else { 1 };
        }
        w
    }

    /// ab-words with coefficient one in the expansion of this word.
    pub fn expansion(&self) -> Vec<u64> {
        // Free letters: every c position and the first slot of every d.
        let mut slots = Vec::new();
        let mut i = 0;
        while i < self.degree {
            slots.push(i);
            i += if self.d_starts >> i & 1 == 1 { 2 } else { 1 };
        }
        (0..1u64 << slots.len())
            .map(|choice| {
                let mut w = 0u64;
                for (k, &pos) in slots.iter().enumerate() {
                    let bit = choice >> k & 1;
                    w |= bit << pos;
                    if self.d_starts >> pos & 1 == 1 {
                        w |= (bit ^ 1) << (pos + 1);
                    }
                }
                w
            })
            .collect()
    }
}

impl fmt::Display for CdWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.degree {
            if self.d_starts >> i & 1 == 1 {
                f.write_str("d")?;
                i += 2;
            } else {
                f.write_str("c")?;
                i += 1;
            }
        }
        Ok(())
    }
}

/// Parses a lead ab-word back into its cd-word, if it is one.
fn lead_to_cd(degree: u32, w: u64) -> Option<CdWord> {
    let mut d_starts = 0u64;
    let mut i = 0;
    while i < degree {
        if w >> i & 1 == 0 {
            return None;
        }
        if i + 1 < degree && w >> (i + 1) & 1 == 0 {
            d_starts |= 1 << i;
            i += 2;
        } else {
            i += 1;
        }
    }
    Some(CdWord { degree, d_starts })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CdPoly {
    degree: u32,
    coeffs: BTreeMap<CdWord, BigInt>,
}

impl CdPoly {
    pub fn zero(degree: u32) -> Self {
        CdPoly {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn add_term(&mut self, word: CdWord, c: BigInt) -> Result<()> {
        if word.degree != self.degree {
            return Err(Error::contract(
                "cd-word weight differs from the polynomial degree",
            ));
        }
        let entry = self.coeffs.entry(word).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&word);
        }
        Ok(())
    }

    pub fn coefficient(&self, word: &CdWord) -> BigInt {
        self.coeffs.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CdWord, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Expands `c = a + b`, `d = ab + ba`.
    pub fn to_ab(&self) -> Result<AbPoly> {
        let mut out = AbPoly::zero(self.degree)?;
        for (word, c) in &self.coeffs {
            for w in word.expansion() {
                out.coeffs[w as usize] += c;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CdPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{c}*{w}")?;
            }
        }
        Ok(())
    }
}

pub fn cd_to_ab(p: &CdPoly) -> Result<AbPoly> {
    p.to_ab()
}

/// The ab-polynomial is not a combination of `c` and `d`; `residual` is what
/// is left after removing the largest cd-expressible part, a witness that
/// the generalized Dehn–Sommerville relations fail.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("ab-polynomial is not in the span of c and d")]
pub struct NotInCdSpan {
    pub residual: AbPoly,
    pub partial: CdPoly,
}

/// Rewrites an ab-polynomial in `c = a + b` and `d = ab + ba`.
///
/// Greedy elimination: the largest ab-word (position 1 most significant,
/// `b > a`) of each cd-word's expansion is its image under `c -> b`,
/// `d -> ba`, and distinct cd-words have distinct such leads. Walking
/// ab-words downwards, each nonzero coefficient must sit on a lead word.
pub fn ab_to_cd(p: &AbPoly) -> core::result::Result<CdPoly, NotInCdSpan> {
    let degree = p.degree;
    let mut residual = p.clone();
    let mut out = CdPoly::zero(degree);
    let mut order: Vec<u64> = (0..1u64 << degree).collect();
    order.sort_unstable_by_key(|&w| core::cmp::Reverse(reverse_bits(w, degree)));
    for w in order {
        let c = residual.coeffs[w as usize].clone();
        if c.is_zero() {
            continue;
        }
        match lead_to_cd(degree, w) {
            Some(word) => {
                for x in word.expansion() {
                    residual.coeffs[x as usize] -= &c;
                }
                out.add_term(word, c).expect("same degree");
            }
            None => {
                return Err(NotInCdSpan {
                    residual,
                    partial: out,
                })
            }
        }
    }
    Ok(out)
}

fn reverse_bits(w: u64, degree: u32) -> u64 {
    if degree == 0 {
        0
    } else {
        w.reverse_bits() >> (64 - degree)
    }
}

/// ω: in each ab-monomial replace every `ab` by `2d` (scanning left to
/// right), then every remaining letter by `c`.
pub fn omega(p: &AbPoly) -> CdPoly {
    let degree = p.degree;
    let mut out = CdPoly::zero(degree);
    for (w, c) in p.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let w = w as u64;
        let mut d_starts = 0u64;
        let mut i = 0;
        while i < degree {
            if i + 1 < degree && w >> i & 1 == 0 && w >> (i + 1) & 1 == 1 {
                d_starts |= 1 << i;
                i += 2;
            } else {
                i += 1;
            }
        }
        let word = CdWord { degree, d_starts };
        out.add_term(word, c << d_starts.count_ones())
            .expect("same degree");
    }
    out
}

/// The evaluation `a_i = 1`, `b_i = -1` for `i ∈ T`, `b_i = 1` otherwise, of
/// the multivariate ab-index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignVector {
    t: SubsetMask,
}

impl SignVector {
    pub fn new(t: SubsetMask) -> Self {
        SignVector { t }
    }

    pub fn subset(&self) -> &SubsetMask {
        &self.t
    }

    /// Whether `T` has a maximal run `[s, t]` of odd length.
    pub fn has_isolated_odd_interval(&self) -> bool {
        let mut rest = self.t.bits();
        while rest != 0 {
            let start = rest.trailing_zeros();
            let run = (rest >> start).trailing_ones();
            if run % 2 == 1 {
                return true;
            }
            rest &= !(((1u64 << run) - 1) << start);
        }
        false
    }
}

/// `Σ_S (-1)^{|S ∩ T|} h_S`.
pub fn signed_sum(h: &[i128], sign: &SignVector) -> Result<BigInt> {
    if h.len() != 1usize << sign.t.universe() {
        return Err(Error::contract(
            "sign vector universe does not match the flag vector",
        ));
    }
    let t = sign.t.bits();
    let mut acc = 0i128;
    let mut spill = BigInt::zero();
    for (s, &v) in h.iter().enumerate() {
        let term = if (s as u64 & t).count_ones().is_multiple_of(2) {
            v
        } else {
            -v
        };
        match acc.checked_add(term) {
            Some(x) => acc = x,
            None => {
                spill += BigInt::from(acc) + BigInt::from(term);
                acc = 0;
            }
        }
    }
    Ok(spill + BigInt::from(acc))
}

/// An ab-word of a given length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AbWord {
    len: u32,
    bits: u64,
}

impl AbWord {
    pub fn new(len: u32, bits: u64) -> Result<Self> {
        if bits & !universe_mask(len) != 0 {
            return Err(Error::contract("ab-word bits exceed its length"));
        }
        Ok(AbWord { len, bits })
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                'a' => {}
                'b' => bits |= 1 << i,
                _ => return Err(Error::contract("ab-words use only the letters a and b")),
            }
        }
        AbWord::new(s.chars().count() as u32, bits)
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }
}

/// Both readings of the multiplication identity for Boolean algebras,
/// evaluated on exact tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MacMahonReport {
    /// `[u a v]Ψ(B_{m+n}) + [u b v]Ψ(B_{m+n})`.
    pub lhs: BigInt,
    /// `C(m+n, m) · [u]Ψ(B_m) · [v]Ψ(B_n)`.
    pub product_form: BigInt,
    /// `C(m+n, m) · [u]Ψ(B_m) + [v]Ψ(B_n)`.
    pub sum_form: BigInt,
}

impl MacMahonReport {
    pub fn product_holds(&self) -> bool {
        self.lhs == self.product_form
    }

    pub fn sum_holds(&self) -> bool {
        self.lhs == self.sum_form
    }
}

pub fn macmahon_multiplication_check(
    m: u64,
    n: u64,
    u: AbWord,
    v: AbWord,
) -> Result<MacMahonReport> {
    if m == 0 || n == 0 || u.len as u64 != m - 1 || v.len as u64 != n - 1 {
        return Err(Error::contract("need |u| = m - 1 and |v| = n - 1"));
    }
    let big = beta_table(m + n, false)?;
    let left = beta_table(m, false)?;
    let right = beta_table(n, false)?;
    let with_a = u.bits | v.bits << m;
    let with_b = with_a | 1 << (m - 1);
    let lhs = BigInt::from(big.get(with_a)) + BigInt::from(big.get(with_b));
    let c = binomial(m + n, m);
    let pu = BigInt::from(left.get(u.bits));
    let pv = BigInt::from(right.get(v.bits));
    Ok(MacMahonReport {
        lhs,
        product_form: &c * &pu * &pv,
        sum_form: &c * &pu + &pv,
    })
}

/// `Σ_i coeffs[i] · c^i d c^{n-i-2}` for `i = 0..n-2`.
pub fn single_d_family(n: u32, coeffs: &[i64]) -> Result<CdPoly> {
    if n < 2 || coeffs.len() != (n - 1) as usize {
        return Err(Error::contract("need n >= 2 and n - 1 coefficients"));
    }
    let mut p = CdPoly::zero(n);
    for (i, &a) in coeffs.iter().enumerate() {
        p.add_term(CdWord::new(n, 1 << i)?, BigInt::from(a))?;
    }
    Ok(p)
}

/// The cd-word `d^k c`.
pub fn d_power_c(k: u32) -> CdWord {
    let d_starts = (0..k).fold(0u64, |acc, i| acc | 1 << (2 * i));
    CdWord {
        degree: 2 * k + 1,
        d_starts,
    }
}
