//! Cyclotomic polynomials and exact divisibility of `Q_n(t)` and `Q±_n(t)`.
//!
//! `Q` itself (degree `E_n`) is never formed. Divisibility by `Φ_m` is read
//! off the residue histogram of β modulo `m`, which is `Q` reduced modulo
//! `t^m - 1`, a multiple of `Φ_m`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::descent::{beta_table, residue_histogram, rho_from_table, DescentTable, Dyadic};
use crate::error::{Error, Result};
use crate::numbers::{divisors, euler_number, factorize, is_prime, mobius, radical};

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: usize, c: BigInt) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly::from_coeffs(coeffs)
    }

    /// `t^k - 1`.
    pub fn t_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[0] = -BigInt::one();
        coeffs[k] += BigInt::one();
        IntPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs(
            (0..len)
                .map(|i| self.coefficient(i) + other.coefficient(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::from_coeffs(
            (0..len)
                .map(|i| self.coefficient(i) - other.coefficient(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        let rhs: Vec<(usize, &BigInt)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    /// `p(t^k)`.
    pub fn substitute_power(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        IntPoly::from_coeffs(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !divisor.is_monic() {
            return Err(Error::contract("divisor must be monic"));
        }
        let d = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= d {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let terms: Vec<(usize, &BigInt)> = divisor.coeffs[..d]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (d..rem.len()).rev() {
            let c = core::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for &(e, phi) in &terms {
                rem[i - d + e] -= &c * phi;
            }
            quot[i - d] = c;
        }
        rem.truncate(d);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Memoized `Φ_k` by exact division of `t^k - 1` by the `Φ_d`, `d | k`,
/// `d < k`. Only squarefree indices are divided out; `Φ_k(t) = Φ_r(t^{k/r})`
/// with `r = rad(k)`.
#[derive(Debug, Default, Clone)]
pub struct CyclotomicCache {
    memo: BTreeMap<u64, IntPoly>,
}

impl CyclotomicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, k: u64) -> Result<IntPoly> {
        if k == 0 {
            return Err(Error::contract("cyclotomic index must be positive"));
        }
        let r = radical(k);
        let base = self.squarefree(r);
        Ok(base.substitute_power((k / r) as usize))
    }

    fn squarefree(&mut self, k: u64) -> IntPoly {
        if let Some(p) = self.memo.get(&k) {
            return p.clone();
        }
        let mut acc = IntPoly::t_pow_minus_one(k as usize);
        for d in divisors(k) {
            if d < k {
                let phi = self.squarefree(d);
                let (q, r) = acc
                    .div_rem_monic(&phi)
                    .expect("cyclotomic polynomials are monic");
                debug_assert!(r.is_zero());
                acc = q;
            }
        }
        self.memo.insert(k, acc.clone());
        acc
    }
}

/// `Φ_k` with integer coefficients.
pub fn cyclotomic(k: u64) -> Result<IntPoly> {
    CyclotomicCache::new().get(k)
}

/// `Φ_k = ∏_{d | k} (t^d - 1)^{μ(k/d)}`, evaluated by sparse multiplications
/// and exact divisions by binomials `t^d - 1`.
pub fn cyclotomic_mobius(k: u64) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::contract("cyclotomic index must be positive"));
    }
    let r = radical(k);
    let ds = divisors(r);
    let mut poly: Vec<i128> = vec![1];
    for &d in &ds {
        if mobius(r / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &ds {
        if mobius(r / d) == -1 {
            let d = d as usize;
            let len = poly.len() - d;
            let mut q = vec![0i128; len];
            // poly = q·(t^d - 1): poly[i] = q[i-d] - q[i].
            for i in 0..len {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    let base = IntPoly::from_coeffs(poly.into_iter().map(BigInt::from).collect());
    Ok(base.substitute_power((k / r) as usize))
}

/// Sparse nonzero lower terms of a monic polynomial, as `i128`.
fn sparse_terms(p: &IntPoly) -> Option<Vec<(usize, i128)>> {
    let d = p.degree()?;
    p.coeffs()[..d]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| c.to_i128().map(|v| (e, v)))
        .collect()
}

/// Remainder of `Σ coeffs[r] t^r` modulo `Φ_m`, given `Φ_{rad(m)}`.
///
/// Writing the input as `Σ_a t^a R_a(t^k)` with `k = m / rad(m)`, each
/// `R_a` is reduced by `Φ_{rad(m)}`; the recombined result has degree below
/// `φ(m)` and is therefore the remainder.
pub fn rem_cyclotomic(coeffs: &[BigInt], m: u64, phi_rad: &IntPoly) -> Result<IntPoly> {
    let k = (m / radical(m)) as usize;
    let d = phi_rad
        .degree()
        .ok_or_else(|| Error::contract("zero divisor"))?;
    if let (Some(terms), Some(small)) = (
        sparse_terms(phi_rad),
        coeffs
            .iter()
            .map(ToPrimitive::to_i128)
            .collect::<Option<Vec<i128>>>(),
    ) {
        if let Some(out) = rem_split_i128(&small, k, d, &terms) {
            return Ok(IntPoly::from_coeffs(
                out.into_iter().map(BigInt::from).collect(),
            ));
        }
    }
    let mut out = vec![BigInt::zero(); k * d];
    for a in 0..k {
        let part = IntPoly::from_coeffs(coeffs.iter().skip(a).step_by(k).cloned().collect());
        let (_, r) = part.div_rem_monic(phi_rad)?;
        for (i, c) in r.coeffs.into_iter().enumerate() {
            out[a + k * i] = c;
        }
    }
    Ok(IntPoly::from_coeffs(out))
}

fn rem_split_i128(
    coeffs: &[i128],
    k: usize,
    d: usize,
    terms: &[(usize, i128)],
) -> Option<Vec<i128>> {
    let mut out = vec![0i128; k * d];
    let mut part = Vec::new();
    for a in 0..k {
        part.clear();
        part.extend(coeffs.iter().skip(a).step_by(k).copied());
        for i in (d..part.len()).rev() {
            let c = part[i];
            if c == 0 {
                continue;
            }
            for &(e, phi) in terms {
                let slot = &mut part[i - d + e];
                *slot = slot.checked_sub(c.checked_mul(phi)?)?;
            }
        }
        for (i, &c) in part.iter().take(d).enumerate() {
            out[a + k * i] = c;
        }
    }
    Some(out)
}

fn check_modulus(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::contract("cyclotomic index must be at least 2"));
    }
    Ok(())
}

/// Whether `Φ_m` divides `R_j(t) = Σ_r counts_j[r] t^r`.
pub fn divides_order(table: &DescentTable, m: u64, j: u32) -> Result<bool> {
    check_modulus(m)?;
    let phi = cyclotomic_mobius(radical(m))?;
    divides_order_with(table, m, j, &phi)
}

fn divides_order_with(table: &DescentTable, m: u64, j: u32, phi_rad: &IntPoly) -> Result<bool> {
    let hist = residue_histogram(table, m, j)?;
    Ok(rem_cyclotomic(hist.counts(), m, phi_rad)?.is_zero())
}

/// Largest `J + 1 ≤ cap` with `Φ_m` dividing every `R_j`, `j ≤ J`.
pub fn multiplicity(table: &DescentTable, m: u64, cap: u32) -> Result<u32> {
    check_modulus(m)?;
    let phi = cyclotomic_mobius(radical(m))?;
    let mut j = 0;
    while j < cap && divides_order_with(table, m, j, &phi)? {
        j += 1;
    }
    Ok(j)
}

/// `Q(ζ)` as a class of `Z[t]/Φ_m` in the power basis `1, t, …, t^{φ(m)-1}`.
pub fn eval_at_primitive_root(table: &DescentTable, m: u64) -> Result<IntPoly> {
    weighted_class(table, m, 0)
}

/// `ζ^j Q^{(j)}(ζ)` as a class of `Z[t]/Φ_m`.
pub fn weighted_class(table: &DescentTable, m: u64, j: u32) -> Result<IntPoly> {
    check_modulus(m)?;
    let hist = residue_histogram(table, m, j)?;
    rem_cyclotomic(hist.counts(), m, &cyclotomic_mobius(radical(m))?)
}

/// Class of `c · (t^e + t^{-e})` modulo `Φ_m`.
pub fn symmetric_class(c: &BigInt, e: u64, m: u64) -> Result<IntPoly> {
    check_modulus(m)?;
    let mut coeffs = vec![BigInt::zero(); m as usize];
    coeffs[(e % m) as usize] += c;
    coeffs[((m - e % m) % m) as usize] += c;
    rem_cyclotomic(&coeffs, m, &cyclotomic_mobius(radical(m))?)
}

/// Class of `c · (t^e - t^{-e})` modulo `Φ_m`.
pub fn antisymmetric_class(c: &BigInt, e: u64, m: u64) -> Result<IntPoly> {
    check_modulus(m)?;
    let mut coeffs = vec![BigInt::zero(); m as usize];
    coeffs[(e % m) as usize] += c;
    coeffs[((m - e % m) % m) as usize] -= c;
    rem_cyclotomic(&coeffs, m, &cyclotomic_mobius(radical(m))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPoint {
    One,
    MinusOne,
    I,
}

impl FromStr for SpecialPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(SpecialPoint::One),
            "-1" => Ok(SpecialPoint::MinusOne),
            "i" => Ok(SpecialPoint::I),
            _ => Err(Error::contract("special point must be 1, -1 or i")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialValue {
    Integer(BigInt),
    Gaussian { re: BigInt, im: BigInt },
}

impl SpecialValue {
    pub fn is_zero(&self) -> bool {
        match self {
            SpecialValue::Integer(v) => v.is_zero(),
            SpecialValue::Gaussian { re, im } => re.is_zero() && im.is_zero(),
        }
    }
}

impl fmt::Display for SpecialValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialValue::Integer(v) => write!(f, "{v}"),
            SpecialValue::Gaussian { re, im } if im.is_negative() => write!(f, "{re} - {}i", -im),
            SpecialValue::Gaussian { re, im } => write!(f, "{re} + {im}i"),
        }
    }
}

/// `Q(1)`, `Q(-1)` or `Q(i)` from the residue histograms modulo 1, 2 and 4.
pub fn eval_special(table: &DescentTable, point: SpecialPoint) -> Result<SpecialValue> {
    Ok(match point {
        SpecialPoint::One => SpecialValue::Integer(BigInt::from(table.subset_count())),
        SpecialPoint::MinusOne => {
            let h = residue_histogram(table, 2, 0)?;
            SpecialValue::Integer(h.count(0) - h.count(1))
        }
        SpecialPoint::I => {
            let h = residue_histogram(table, 4, 0)?;
            SpecialValue::Gaussian {
                re: h.count(0) - h.count(2),
                im: h.count(1) - h.count(3),
            }
        }
    })
}

/// Outcome of comparing `ζ·Q±'_p(ζ)` at a primitive `4p`-th root with
/// `(-1)^{(p-1)/2} · 2^{p-1} · p · E_{p-1} · (ζ - ζ^{-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeReport {
    pub p: u64,
    /// `2^p · p · E_{p-1}`.
    pub magnitude: BigInt,
    pub computed: IntPoly,
    pub expected: IntPoly,
    pub phi_divides: bool,
    pub multiplicity: u32,
}

impl DerivativeReport {
    pub fn identity_holds(&self) -> bool {
        self.computed == self.expected
    }

    pub fn holds(&self) -> bool {
        self.identity_holds() && self.phi_divides && self.multiplicity == 1
    }
}

pub fn signed_derivative_theorem_check(p: u64) -> Result<DerivativeReport> {
    if p < 3 || !is_prime(p) {
        return Err(Error::contract("p must be an odd prime"));
    }
    let table = beta_table(p, true)?;
    let m = 4 * p;
    let e = euler_number(p - 1);
    let magnitude = (&e * p) << p;
    let mut coefficient = (&e * p) << (p - 1);
    if (p - 1) / 2 % 2 == 1 {
        coefficient = -coefficient;
    }
    Ok(DerivativeReport {
        p,
        magnitude,
        computed: weighted_class(&table, m, 1)?,
        expected: antisymmetric_class(&coefficient, 1, m)?,
        phi_divides: divides_order(&table, m, 0)?,
        multiplicity: multiplicity(&table, m, 3)?,
    })
}

/// `Q_q(ζ)` (or `Q_{2q}(ζ)` when `doubled`) at a primitive `2p`-th root,
/// `q = p^t`, against `2^n · Re(ζ) · (ρ(q) - 1/2)` with `n = q` or `2q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealPartReport {
    pub q: u64,
    pub n: u64,
    pub modulus: u64,
    pub computed: IntPoly,
    pub expected: IntPoly,
    /// For `n = q`: whether `q > 2^k - 1`, `k` the binary popcount of `q`.
    pub hypothesis: bool,
}

impl RealPartReport {
    pub fn holds(&self) -> bool {
        self.computed == self.expected
    }
}

pub fn real_part_check(q: u64, doubled: bool) -> Result<RealPartReport> {
    let (p, _) = crate::numbers::prime_power(q)
        .filter(|&(p, _)| p > 2)
        .ok_or_else(|| Error::contract("q must be an odd prime power"))?;
    let n = if doubled { 2 * q } else { q };
    let table = beta_table(n, false)?;
    let rho = rho_from_table(&beta_table(q, false)?);
    // 2^n (ρ - 1/2) · (ζ + ζ^{-1}) / 2
    let scaled = rho.sub(&Dyadic::half()).shl(n as u32 - 1);
    let c = scaled
        .to_integer()
        .ok_or(Error::Overflow("non-integral real-part coefficient"))?;
    let m = 2 * p;
    Ok(RealPartReport {
        q,
        n,
        modulus: m,
        computed: eval_at_primitive_root(&table, m)?,
        expected: symmetric_class(&c, 1, m)?,
        hypothesis: doubled || q > (1u64 << q.count_ones()) - 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CandidatePolicy {
    /// Even `m` whose prime factors are all at most `n`.
    Heuristic,
    Exhaustive,
}

impl CandidatePolicy {
    pub fn name(&self) -> &'static str {
        match self {
            CandidatePolicy::Heuristic => "heuristic",
            CandidatePolicy::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for CandidatePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CandidatePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heuristic" => Ok(CandidatePolicy::Heuristic),
            "exhaustive" => Ok(CandidatePolicy::Exhaustive),
            _ => Err(Error::contract("policy must be heuristic or exhaustive")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    pub max_index: u64,
    pub max_multiplicity: u32,
    pub policy: CandidatePolicy,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            max_index: 10_000,
            max_multiplicity: 3,
            policy: CandidatePolicy::Heuristic,
        }
    }
}

/// Candidate indices for a table of size `n`, ascending.
pub fn candidates(n: u64, config: &ScanConfig) -> Vec<u64> {
    (2..=config.max_index)
        .filter(|&m| match config.policy {
            CandidatePolicy::Exhaustive => true,
            CandidatePolicy::Heuristic => m % 2 == 0 && factorize(m).iter().all(|&(p, _)| p <= n),
        })
        .collect()
}

/// Multiplicity of `Φ_m` in the table's polynomial, capped.
pub fn scan_candidate(table: &DescentTable, m: u64, cap: u32) -> Result<u32> {
    multiplicity(table, m, cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub n: u64,
    pub signed: bool,
    pub policy: CandidatePolicy,
    pub bound: u64,
    /// `(m, j)`: `Φ_m^j` divides, sorted by `m`.
    pub factors: Vec<(u64, u32)>,
}

impl FactorReport {
    pub fn multiplicity_of(&self, m: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(k, _)| k == m)
            .map_or(0, |&(_, j)| j)
    }

    pub fn indices(&self) -> Vec<u64> {
        self.factors.iter().map(|&(m, _)| m).collect()
    }

    /// Factor list alone, e.g. `Phi_4^2 Phi_28`, or `-` when empty.
    pub fn factor_string(&self) -> String {
        if self.factors.is_empty() {
            return "-".to_string();
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(m, j)| {
                if j == 1 {
                    alloc::format!("Phi_{m}")
                } else {
                    alloc::format!("Phi_{m}^{j}")
                }
            })
            .collect();
        parts.join(" ")
    }
}

impl fmt::Display for FactorReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} signed={} policy={} bound={}: {}",
            self.n,
            u8::from(self.signed),
            self.policy,
            self.bound,
            self.factor_string()
        )
    }
}

impl FromStr for FactorReport {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::contract(alloc::format!("malformed factor report: {line}"));
        let (head, tail) = line.split_once(':').ok_or_else(bad)?;
        let mut n = None;
        let mut signed = None;
        let mut policy = None;
        let mut bound = None;
        for field in head.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "n" => n = Some(value.parse().map_err(|_| bad())?),
                "signed" => {
                    signed = Some(match value {
                        "0" => false,
                        "1" => true,
                        _ => return Err(bad()),
                    })
                }
                "policy" => policy = Some(value.parse()?),
                "bound" => bound = Some(value.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let mut factors = Vec::new();
        for tok in tail.split_whitespace() {
            if tok == "-" {
                continue;
            }
            let body = tok.strip_prefix("Phi_").ok_or_else(bad)?;
            let (m, j) = match body.split_once('^') {
                Some((m, j)) => (m, j.parse().map_err(|_| bad())?),
                None => (body, 1),
            };
            factors.push((m.parse().map_err(|_| bad())?, j));
        }
        if !factors.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(bad());
        }
        Ok(FactorReport {
            n: n.ok_or_else(bad)?,
            signed: signed.ok_or_else(bad)?,
            policy: policy.ok_or_else(bad)?,
            bound: bound.ok_or_else(bad)?,
            factors,
        })
    }
}

/// Assembles a report from per-candidate multiplicities in any order.
pub fn assemble_report(
    table: &DescentTable,
    config: &ScanConfig,
    mut found: Vec<(u64, u32)>,
) -> FactorReport {
    found.retain(|&(_, j)| j > 0);
    found.sort_unstable();
    FactorReport {
        n: table.n(),
        signed: table.signed(),
        policy: config.policy,
        bound: config.max_index,
        factors: found,
    }
}

/// Sequential scan over every candidate index.
pub fn factor_scan(table: &DescentTable, config: &ScanConfig) -> Result<FactorReport> {
    if config.max_index < 2 {
        return Err(Error::contract("max_index must be at least 2"));
    }
    let mut found = Vec::new();
    for m in candidates(table.n(), config) {
        found.push((m, scan_candidate(table, m, config.max_multiplicity)?));
    }
    Ok(assemble_report(table, config, found))
}

/// One observational check on a factor report; never asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub label: &'static str,
    pub statement: &'static str,
    /// `None` when the hypothesis does not apply to this `n`.
    pub holds: Option<bool>,
}

/// Observations (i)–(viii) for unsigned reports, (ix)–(x) for signed ones.
/// `rho` is ρ(n), needed by (vii).
pub fn observations(report: &FactorReport, rho: &Dyadic) -> Vec<Observation> {
    let n = report.n;
    let idx = report.indices();
    let has = |m: u64| idx.contains(&m);
    let obs = |label, statement, holds| Observation {
        label,
        statement,
        holds,
    };
    if report.signed {
        return vec![
            obs(
                "ix",
                "Phi_{4n} divides for n >= 3",
                (n >= 3).then(|| has(4 * n)),
            ),
            obs(
                "x",
                "Phi_{4n(n-1)} divides for n >= 5",
                (n >= 5 && 4 * n * (n - 1) <= report.bound).then(|| has(4 * n * (n - 1))),
            ),
        ];
    }
    let all_pairs =
        |f: &dyn Fn(u64, u64) -> bool| idx.iter().all(|&a| idx.iter().all(|&b| f(a, b)));
    let gcd_closed = all_pairs(&|a, b| has(a.gcd(&b)));
    let convex = all_pairs(&|a, c| {
        a == c || c % a != 0 || divisors(c).iter().all(|&b| b % a != 0 || has(b))
    });
    let monotone =
        all_pairs(&|a, b| b % a != 0 || report.multiplicity_of(a) >= report.multiplicity_of(b));
    let mersenne = (n + 1).is_power_of_two();
    let largest_2p = (is_prime(n) && !mersenne).then(|| idx.last().is_some_and(|&m| m == 2 * n));
    let rho_half = *rho == Dyadic::half();
    let conj = (n.is_multiple_of(2) && is_prime(n / 2)).then(|| report.multiplicity_of(n) >= 2);
    vec![
        obs(
            "i",
            "every index is even",
            Some(idx.iter().all(|m| m % 2 == 0)),
        ),
        obs(
            "ii",
            "every prime factor of an index is at most n",
            Some(
                idx.iter()
                    .all(|&m| factorize(m).iter().all(|&(p, _)| p <= n)),
            ),
        ),
        obs("iii", "indices are closed under gcd", Some(gcd_closed)),
        obs(
            "iv",
            "indices are convex in the divisor lattice",
            Some(convex),
        ),
        obs(
            "v",
            "multiplicity decreases along divisibility",
            Some(monotone),
        ),
        obs(
            "vi",
            "for a non-Mersenne prime n the largest index is 2n",
            largest_2p,
        ),
        obs(
            "vii",
            "rho(n) != 1/2 implies no cyclotomic factors",
            (!rho_half).then_some(idx.is_empty()),
        ),
        obs("viii", "Phi_{2p}^2 divides Q_{2p}", conj),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::rho;

    fn unsigned(n: u64) -> DescentTable {
        beta_table(n, false).unwrap()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(9).unwrap().eval(&BigInt::one()), BigInt::from(3));
        assert_eq!(cyclotomic(4).unwrap().to_string(), "t^2 + 1");
        assert_eq!(cyclotomic(6).unwrap().to_string(), "t^2 - t + 1");
    }

    #[test]
    fn phi_105_has_a_two() {
        let p = cyclotomic(105).unwrap();
        assert!(p.coeffs().iter().any(|c| *c == BigInt::from(-2)));
        assert_eq!(p.degree(), Some(48));
    }

    #[test]
    fn routes_agree() {
        let mut cache = CyclotomicCache::new();
        for k in 1..=400u64 {
            let a = cache.get(k).unwrap();
            assert_eq!(a, cyclotomic_mobius(k).unwrap(), "k={k}");
            assert_eq!(a.degree(), Some(crate::numbers::euler_phi(k) as usize));
        }
    }

    #[test]
    fn rem_matches_long_division() {
        let mut cache = CyclotomicCache::new();
        let mut seed = 12345u64;
        for m in [2u64, 4, 8, 12, 18, 20, 28, 36, 60, 72, 100] {
            let coeffs: Vec<BigInt> = (0..m + 7)
                .map(|_| {
                    seed = seed
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    BigInt::from((seed >> 40) as i64 - (1 << 23))
                })
                .collect();
            let phi = cache.get(m).unwrap();
            let (_, r) = IntPoly::from_coeffs(coeffs.clone())
                .div_rem_monic(&phi)
                .unwrap();
            let fast = rem_cyclotomic(&coeffs, m, &cyclotomic_mobius(radical(m)).unwrap()).unwrap();
            assert_eq!(fast, r, "m={m}");
        }
    }

    #[test]
    fn divides_order_examples() {
        let b4 = unsigned(4);
        assert!(divides_order(&b4, 4, 0).unwrap());
        assert!(divides_order(&b4, 4, 1).unwrap());
        assert!(divides_order(&unsigned(3), 2, 0).unwrap());
        let b5 = unsigned(5);
        assert!(divides_order(&b5, 10, 0).unwrap());
        assert!(!divides_order(&b5, 10, 1).unwrap());
        assert!(divides_order(&b5, 1, 0).is_err());
    }

    #[test]
    fn special_values() {
        for n in 1..=14u64 {
            let v = eval_special(&unsigned(n), SpecialPoint::One).unwrap();
            assert_eq!(v, SpecialValue::Integer(BigInt::one() << (n - 1)));
        }
        assert_eq!(
            eval_special(&unsigned(15), SpecialPoint::MinusOne).unwrap(),
            SpecialValue::Integer(BigInt::from(1536))
        );
        assert!(eval_special(&unsigned(8), SpecialPoint::I)
            .unwrap()
            .is_zero());
        assert!(!eval_special(&unsigned(6), SpecialPoint::I)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn minus_one_matches_rho() {
        for n in 1..=16u64 {
            let expected = Dyadic::half().sub(&rho(n).unwrap()).shl(n as u32);
            let got = eval_special(&unsigned(n), SpecialPoint::MinusOne).unwrap();
            assert_eq!(
                got,
                SpecialValue::Integer(expected.to_integer().unwrap()),
                "n={n}"
            );
        }
    }

    #[test]
    fn primitive_root_classes() {
        assert!(eval_at_primitive_root(&unsigned(5), 10).unwrap().is_zero());
        assert!(eval_at_primitive_root(&unsigned(10), 10).unwrap().is_zero());
        assert!(!eval_at_primitive_root(&unsigned(4), 8).unwrap().is_zero());
    }

    #[test]
    fn zero_class_iff_divides() {
        for n in 2..=10u64 {
            let t = unsigned(n);
            for m in 2..=40u64 {
                assert_eq!(
                    divides_order(&t, m, 0).unwrap(),
                    eval_at_primitive_root(&t, m).unwrap().is_zero(),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn real_part_values() {
        for q in [5u64, 9, 11, 13] {
            let r = real_part_check(q, false).unwrap();
            assert!(r.hypothesis);
            assert!(r.holds(), "q={q}: {} vs {}", r.computed, r.expected);
        }
        for q in [3u64, 7] {
            assert!(!real_part_check(q, false).unwrap().hypothesis);
        }
        for q in [3u64, 5, 7] {
            let r = real_part_check(q, true).unwrap();
            assert!(r.holds(), "2q={}: {} vs {}", 2 * q, r.computed, r.expected);
        }
    }

    #[test]
    fn derivative_identity() {
        for (p, mag) in [(3u64, 24i64), (5, 800), (7, 54656)] {
            let r = signed_derivative_theorem_check(p).unwrap();
            assert_eq!(r.magnitude, BigInt::from(mag));
            assert!(
                r.identity_holds(),
                "p={p}: {} vs {}",
                r.computed,
                r.expected
            );
            assert!(r.holds());
        }
        assert!(signed_derivative_theorem_check(9).is_err());
    }

    #[test]
    fn odd_prime_power_negative_controls() {
        for n in 2..=12u64 {
            let t = unsigned(n);
            for q in [3u64, 5, 7, 9] {
                assert!(!divides_order(&t, q, 0).unwrap(), "n={n} q={q}");
            }
        }
        // Φ_2q(-1) = p against Q_n(-1).
        for (n, qs) in [(8u64, &[3u64, 5, 7, 9][..]), (16, &[3, 5, 7, 9, 11, 13])] {
            let t = unsigned(n);
            for &q in qs {
                assert!(!divides_order(&t, 2 * q, 0).unwrap(), "n={n} 2q={}", 2 * q);
            }
        }
        let t15 = unsigned(15);
        for q in [5u64, 7, 11, 13] {
            assert!(!divides_order(&t15, 2 * q, 0).unwrap());
        }
    }

    #[test]
    fn quadratic_factor_multiplicities() {
        for n in [5u64, 6, 9, 10, 12] {
            assert!(multiplicity(&unsigned(n), 2, 3).unwrap() >= 2, "n={n}");
        }
        for n in [4u64, 8, 16] {
            assert!(multiplicity(&unsigned(n), 4, 3).unwrap() >= 2, "n={n}");
        }
        for (n, p) in [(6u64, 3u64), (10, 5), (18, 3)] {
            assert!(multiplicity(&unsigned(n), 2 * p, 3).unwrap() >= 2, "n={n}");
        }
    }

    #[test]
    fn scan_examples() {
        let cfg = |max_index| ScanConfig {
            max_index,
            ..ScanConfig::default()
        };
        let r = factor_scan(&unsigned(6), &cfg(64)).unwrap();
        assert_eq!(r.factors, vec![(2, 2), (6, 2), (10, 1)]);
        let r = factor_scan(&unsigned(12), &cfg(256)).unwrap();
        for m in [66, 110, 198] {
            assert_eq!(r.multiplicity_of(m), 1);
        }
        assert_eq!(r.multiplicity_of(22), 2);
        let r = factor_scan(&beta_table(3, true).unwrap(), &cfg(16)).unwrap();
        assert_eq!(r.factors, vec![(4, 1), (8, 1), (12, 1)]);
        assert_eq!(
            r.to_string(),
            "n=3 signed=1 policy=heuristic bound=16: Phi_4 Phi_8 Phi_12"
        );
    }

    #[test]
    fn report_round_trip() {
        for line in [
            "n=8 signed=0 policy=heuristic bound=10000: Phi_4^2 Phi_28",
            "n=15 signed=0 policy=exhaustive bound=64: -",
        ] {
            let r: FactorReport = line.parse().unwrap();
            assert_eq!(r.to_string(), line);
        }
        assert!("n=8 signed=2 policy=heuristic bound=1: -"
            .parse::<FactorReport>()
            .is_err());
        assert!("n=8 signed=0 policy=heuristic bound=1: Phi_4 Phi_2"
            .parse::<FactorReport>()
            .is_err());
    }

    #[test]
    fn observation_flags() {
        let r: FactorReport = "n=5 signed=0 policy=heuristic bound=100: Phi_2^2 Phi_10"
            .parse()
            .unwrap();
        let obs = observations(&r, &Dyadic::half());
        assert!(obs.iter().all(|o| o.holds != Some(false)));
        let r: FactorReport = "n=6 signed=0 policy=heuristic bound=100: Phi_3"
            .parse()
            .unwrap();
        let obs = observations(&r, &Dyadic::half());
        assert_eq!(obs[0].holds, Some(false));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(100))]
            #[test]
            fn product_of_cyclotomics(k in 1u64..=10_000) {
                let mut cache = CyclotomicCache::new();
                let mut factors: Vec<IntPoly> = divisors(k).into_iter().map(|d| cache.get(d).unwrap()).collect();
                factors.sort_by_key(|p| p.degree());
                let prod = factors.iter().fold(IntPoly::one(), |acc, p| acc.mul(p));
                prop_assert_eq!(prod, IntPoly::t_pow_minus_one(k as usize));
            }
        }
    }
}
