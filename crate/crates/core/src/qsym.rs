//! Quasisymmetric functions of a fixed degree in the monomial (M) and
//! fundamental (L) bases, and their type B extension.
//!
//! A composition of `n` is keyed by its subset of `[n-1]` under `D`, so the
//! basis changes are the same subset transforms as for descent tables:
//! `L_T = Σ_{S⊇T} M_S`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::descent::alpha_values;
use crate::error::{Error, Result};
use crate::numbers::{binomial, composition_to_subset, mask_parts, universe_mask, Composition};
use crate::parity::ParityTable;

/// Largest degree for exact (unreduced) expansions.
pub const MAX_EXACT_DEGREE: u64 = 12;
/// Largest degree for reduced expansions and dense basis changes.
pub const MAX_REDUCED_DEGREE: u64 = 24;
/// Largest number of factors for the ordered-partition product.
pub const MAX_SINGLETON_FACTORS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    Fundamental,
}

/// A homogeneous quasisymmetric function of degree `degree >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSymPoly {
    degree: u64,
    basis: Basis,
    modulus: Option<u64>,
    coeffs: BTreeMap<u64, BigInt>,
}

fn check_degree(degree: u64, modulus: Option<u64>) -> Result<()> {
    if degree == 0 {
        return Err(Error::contract("degree must be positive"));
    }
    let limit = if modulus.is_some() {
        MAX_REDUCED_DEGREE
    } else {
        MAX_EXACT_DEGREE
    };
    if degree > limit {
        return Err(Error::ResourceLimit {
            what: "quasisymmetric degree",
            requested: degree,
            limit,
        });
    }
    if modulus == Some(0) {
        return Err(Error::contract("modulus must be positive"));
    }
    Ok(())
}

impl QSymPoly {
    pub fn zero(degree: u64, basis: Basis, modulus: Option<u64>) -> Result<Self> {
        check_degree(degree, modulus)?;
        Ok(QSymPoly {
            degree,
            basis,
            modulus,
            coeffs: BTreeMap::new(),
        })
    }

    /// `M_γ` (coefficient one).
    pub fn monomial(gamma: &Composition, modulus: Option<u64>) -> Result<Self> {
        let mut p = QSymPoly::zero(gamma.total(), Basis::Monomial, modulus)?;
        let mask = composition_to_subset(gamma)?.bits();
        p.add_term(mask, BigInt::one());
        Ok(p)
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, mask: u64) -> BigInt {
        self.coeffs.get(&mask).cloned().unwrap_or_default()
    }

    pub fn coefficient_of(&self, gamma: &Composition) -> Result<BigInt> {
        if gamma.total() != self.degree {
            return Err(Error::contract("composition degree mismatch"));
        }
        Ok(self.coefficient(composition_to_subset(gamma)?.bits()))
    }

    /// Nonzero terms in increasing mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    /// Nonzero terms keyed by composition, in increasing mask order.
    pub fn composition_terms(&self) -> Vec<(Composition, BigInt)> {
        self.coeffs
            .iter()
            .map(|(&m, c)| {
                (
                    Composition::new(mask_parts(self.degree, m)).expect("positive parts"),
                    c.clone(),
                )
            })
            .collect()
    }

    fn reduce(&self, c: BigInt) -> BigInt {
        match self.modulus {
            Some(m) => c.mod_floor(&BigInt::from(m)),
            None => c,
        }
    }

    pub fn add_term(&mut self, mask: u64, c: BigInt) {
        assert!(mask & !universe_mask((self.degree - 1) as u32) == 0);
        let entry = self.coeffs.entry(mask).or_default();
        *entry += c;
        let reduced = match self.modulus {
            Some(m) => entry.mod_floor(&BigInt::from(m)),
            None => entry.clone(),
        };
        if reduced.is_zero() {
            self.coeffs.remove(&mask);
        } else {
            *entry = reduced;
        }
    }

    /// Reduces every coefficient modulo `modulus`.
    pub fn reduced(&self, modulus: u64) -> Result<Self> {
        if let Some(m) = self.modulus {
            if m % modulus != 0 {
                return Err(Error::contract(
                    "can only reduce to a modulus dividing the current one",
                ));
            }
        }
        let mut out = QSymPoly::zero(self.degree, self.basis, Some(modulus))?;
        for (&mask, c) in &self.coeffs {
            out.add_term(mask, c.clone());
        }
        Ok(out)
    }

    fn dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); 1usize << (self.degree - 1)];
        for (&m, c) in &self.coeffs {
            v[m as usize] = c.clone();
        }
        v
    }

    fn from_dense(degree: u64, basis: Basis, modulus: Option<u64>, dense: Vec<BigInt>) -> Self {
        let mut p = QSymPoly {
            degree,
            basis,
            modulus,
            coeffs: BTreeMap::new(),
        };
        for (m, c) in dense.into_iter().enumerate() {
            let c = p.reduce(c);
            if !c.is_zero() {
                p.coeffs.insert(m as u64, c);
            }
        }
        p
    }

    /// Rewrites an M-basis polynomial in the L basis:
    /// `h_S = Σ_{T⊆S} (-1)^{|S-T|} f_T`.
    pub fn m_to_l(&self) -> Result<Self> {
        if self.basis != Basis::Monomial {
            return Err(Error::contract("m_to_l expects the monomial basis"));
        }
        let mut v = self.dense();
        signed_subset_sweep(&mut v, true);
        Ok(QSymPoly::from_dense(
            self.degree,
            Basis::Fundamental,
            self.modulus,
            v,
        ))
    }

    /// Rewrites an L-basis polynomial in the M basis: `f_S = Σ_{T⊆S} h_T`.
    pub fn l_to_m(&self) -> Result<Self> {
        if self.basis != Basis::Fundamental {
            return Err(Error::contract("l_to_m expects the fundamental basis"));
        }
        let mut v = self.dense();
        signed_subset_sweep(&mut v, false);
        Ok(QSymPoly::from_dense(
            self.degree,
            Basis::Monomial,
            self.modulus,
            v,
        ))
    }

    /// Quasi-shuffle product of two M-basis polynomials.
    pub fn mul(&self, other: &QSymPoly) -> Result<Self> {
        if self.basis != Basis::Monomial || other.basis != Basis::Monomial {
            return Err(Error::contract("products are taken in the monomial basis"));
        }
        if self.modulus != other.modulus {
            return Err(Error::contract("cannot multiply across different moduli"));
        }
        let degree = self.degree + other.degree;
        let mut out = QSymPoly::zero(degree, Basis::Monomial, self.modulus)?;
        for (&ma, ca) in &self.coeffs {
            let a = mask_parts(self.degree, ma);
            for (&mb, cb) in &other.coeffs {
                let b = mask_parts(other.degree, mb);
                let coeff = ca * cb;
                for word in quasi_shuffles(&a, &b) {
                    out.add_term(parts_mask(&word), coeff.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QSymPoly) -> Result<Self> {
        if self.degree != other.degree || self.basis != other.basis || self.modulus != other.modulus
        {
            return Err(Error::contract(
                "sum of incompatible quasisymmetric functions",
            ));
        }
        let mut out = self.clone();
        for (&m, c) in &other.coeffs {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }
}

/// Subset transform over big integers; `signed` selects the Möbius sweep.
fn signed_subset_sweep(v: &mut [BigInt], signed: bool) {
    let len = v.len();
    let mut stride = 1;
    while stride < len {
        for block in v.chunks_mut(stride * 2) {
            let (lo, hi) = block.split_at_mut(stride);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                if signed {
                    *h -= l;
                } else {
                    *h += l;
                }
            }
        }
        stride *= 2;
    }
}

/// Mask of the composition with the given parts.
fn parts_mask(parts: &[u64]) -> u64 {
    let mut bits = 0u64;
    let mut partial = 0u64;
    for &p in &parts[..parts.len() - 1] {
        partial += p;
        bits |= 1 << (partial - 1);
    }
    bits
}

/// All quasi-shuffles (overlapping shuffles) of two compositions, with
/// multiplicity.
pub fn quasi_shuffles(a: &[u64], b: &[u64]) -> Vec<Vec<u64>> {
    // table[i][j]: quasi-shuffles of the suffixes a[i..], b[j..].
    let (la, lb) = (a.len(), b.len());
    let mut table: Vec<Vec<Vec<Vec<u64>>>> = vec![vec![Vec::new(); lb + 1]; la + 1];
    for i in (0..=la).rev() {
        for j in (0..=lb).rev() {
            let cell = if i == la {
                vec![b[j..].to_vec()]
            } else if j == lb {
                vec![a[i..].to_vec()]
            } else {
                let mut cell = Vec::new();
                for tail in &table[i + 1][j] {
                    let mut w = vec![a[i]];
                    w.extend_from_slice(tail);
                    cell.push(w);
                }
                for tail in &table[i][j + 1] {
                    let mut w = vec![b[j]];
                    w.extend_from_slice(tail);
                    cell.push(w);
                }
                for tail in &table[i + 1][j + 1] {
                    let mut w = vec![a[i] + b[j]];
                    w.extend_from_slice(tail);
                    cell.push(w);
                }
                cell
            };
            table[i][j] = cell;
        }
    }
    core::mem::take(&mut table[0][0])
}

/// An ordered list of disjoint nonempty blocks covering `{1, ..., k}`; block
/// `b` is a bitmask with bit `i-1` for element `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    k: usize,
    blocks: Vec<u32>,
}

impl OrderedSetPartition {
    pub fn new(k: usize, blocks: Vec<u32>) -> Result<Self> {
        let full = if k >= 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mut seen = 0u32;
        for &b in &blocks {
            if b == 0 || b & seen != 0 || b & !full != 0 {
                return Err(Error::contract(
                    "blocks must be disjoint, nonempty and inside [k]",
                ));
            }
            seen |= b;
        }
        if seen != full {
            return Err(Error::contract("blocks must cover [k]"));
        }
        Ok(OrderedSetPartition { k, blocks })
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Every ordered set partition of `{1, ..., k}`.
pub fn ordered_set_partitions(k: usize) -> Vec<OrderedSetPartition> {
    let full = (1u32 << k) - 1;
    let mut out = Vec::new();
    let mut stack: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new())];
    while let Some((used, blocks)) = stack.pop() {
        if used == full {
            out.push(OrderedSetPartition { k, blocks });
            continue;
        }
        let free = full & !used;
        let mut sub = free;
        while sub != 0 {
            let mut next = blocks.clone();
            next.push(sub);
            stack.push((used | sub, next));
            sub = (sub - 1) & free;
        }
    }
    out
}

/// `M_(m_1) ⋯ M_(m_k)` as a sum over ordered set partitions of `[k]` of the
/// monomial indexed by the block sums.
pub fn product_monomial_singletons(parts: &[u64]) -> Result<QSymPoly> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::contract("need at least one positive part"));
    }
    if parts.len() > MAX_SINGLETON_FACTORS {
        return Err(Error::ResourceLimit {
            what: "singleton factors",
            requested: parts.len() as u64,
            limit: MAX_SINGLETON_FACTORS as u64,
        });
    }
    let degree: u64 = parts.iter().sum();
    if degree > 64 {
        return Err(Error::ResourceLimit {
            what: "quasisymmetric degree",
            requested: degree,
            limit: 64,
        });
    }
    // The ordered-partition formula carries no reduction; allow any degree
    // the mask can hold.
    let mut out = QSymPoly {
        degree,
        basis: Basis::Monomial,
        modulus: None,
        coeffs: BTreeMap::new(),
    };
    for pi in ordered_set_partitions(parts.len()) {
        let sums: Vec<u64> = pi
            .blocks()
            .iter()
            .map(|&b| {
                (0..parts.len())
                    .filter(|&i| b >> i & 1 == 1)
                    .map(|i| parts[i])
                    .sum()
            })
            .collect();
        out.add_term(parts_mask(&sums), BigInt::one());
    }
    Ok(out)
}

/// Number of odd L-coefficients of `M_(m_1) ⋯ M_(m_k)`, via a parity table.
pub fn odd_l_count_of_product(parts: &[u64]) -> Result<u64> {
    let f = product_monomial_singletons(parts)?;
    let mut table = ParityTable::zeros((f.degree - 1) as u32)?;
    for (mask, c) in f.terms() {
        if c.is_odd() {
            table.flip(mask);
        }
    }
    table.subset_transform();
    Ok(table.count_ones())
}

/// `F(B_n) = M_(1)^n = Σ_S α_n(S) M_S`, optionally reduced.
pub fn f_boolean(n: u64, modulus: Option<u64>) -> Result<QSymPoly> {
    check_degree(n, modulus)?;
    let alphas = alpha_values(n, false)?;
    let dense = alphas.into_iter().map(BigInt::from).collect();
    Ok(QSymPoly::from_dense(n, Basis::Monomial, modulus, dense))
}

/// `M_(1)^n` by repeated quasi-shuffle multiplication.
pub fn power_of_m1(n: u64, modulus: Option<u64>) -> Result<QSymPoly> {
    let one = QSymPoly::monomial(&Composition::new(vec![1])?, modulus)?;
    let mut acc = one.clone();
    for _ in 1..n {
        acc = acc.mul(&one)?;
    }
    Ok(acc)
}

/// A type B quasisymmetric function of degree `n + 1`.
///
/// `M^B_(γ_0, γ_1, ..., γ_m) = s^{γ_0 - 1} M_(γ_1, ..., γ_m)`; compositions of
/// `n + 1` are keyed by subsets of `[n]`, so the L^B basis change is the same
/// subset transform as in type A.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BQSymPoly {
    inner: QSymPoly,
}

impl BQSymPoly {
    /// `n` such that the degree is `n + 1`.
    pub fn rank_minus_one(&self) -> u64 {
        self.inner.degree - 1
    }

    pub fn degree(&self) -> u64 {
        self.inner.degree
    }

    pub fn basis(&self) -> Basis {
        self.inner.basis
    }

    pub fn modulus(&self) -> Option<u64> {
        self.inner.modulus
    }

    pub fn coefficient(&self, mask: u64) -> BigInt {
        self.inner.coefficient(mask)
    }

    pub fn coefficient_of(&self, gamma: &Composition) -> Result<BigInt> {
        self.inner.coefficient_of(gamma)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.inner.terms()
    }

    pub fn composition_terms(&self) -> Vec<(Composition, BigInt)> {
        self.inner.composition_terms()
    }

    pub fn m_to_l(&self) -> Result<Self> {
        Ok(BQSymPoly {
            inner: self.inner.m_to_l()?,
        })
    }

    pub fn l_to_m(&self) -> Result<Self> {
        Ok(BQSymPoly {
            inner: self.inner.l_to_m()?,
        })
    }

    pub fn as_qsym(&self) -> &QSymPoly {
        &self.inner
    }
}

/// Exponent of `s` in `M^B_γ`: `γ_0 - 1`.
pub fn s_exponent(gamma: &Composition) -> Option<u64> {
    gamma.parts().first().map(|&g| g - 1)
}

/// `F_B(C_n) = (s + 2 M_(1))^n = Σ_k C(n,k) 2^k s^{n-k} F(B_k)` in the M^B
/// basis, optionally reduced.
pub fn f_cubical_b(n: u64, modulus: Option<u64>) -> Result<BQSymPoly> {
    let limit = if modulus.is_some() {
        18
    } else {
        MAX_EXACT_DEGREE
    };
    if n == 0 || n > limit {
        return Err(Error::ResourceLimit {
            what: "cubical rank",
            requested: n,
            limit,
        });
    }
    let degree = n + 1;
    let mut inner = QSymPoly {
        degree,
        basis: Basis::Monomial,
        modulus,
        coeffs: BTreeMap::new(),
    };
    if modulus == Some(0) {
        return Err(Error::contract("modulus must be positive"));
    }
    inner.add_term(0, BigInt::one());
    for k in 1..=n {
        let scale = binomial(n, k) << k;
        let head = n - k; // γ_0 = n - k + 1 puts element n-k+1 in the subset
        for (mask, a) in alpha_values(k, false)?.into_iter().enumerate() {
            let key = (1u64 << head) | ((mask as u64) << (head + 1));
            inner.add_term(key, &scale * BigInt::from(a));
        }
    }
    Ok(BQSymPoly { inner })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::beta_table;

    fn comp(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn poly(degree: u64, terms: &[(&[u64], i64)], modulus: Option<u64>) -> QSymPoly {
        let mut p = QSymPoly::zero(degree, Basis::Monomial, modulus).unwrap();
        for (parts, c) in terms {
            p.add_term(parts_mask(parts), BigInt::from(*c));
        }
        p
    }

    #[test]
    fn basis_change_examples() {
        for n in 1..=6u64 {
            let m = QSymPoly::monomial(&comp(&[n]), None).unwrap();
            let l = m.m_to_l().unwrap();
            for mask in 0..1u64 << (n - 1) {
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                assert_eq!(l.coefficient(mask), BigInt::from(sign));
            }
            let mut l0 = QSymPoly::zero(n, Basis::Fundamental, None).unwrap();
            l0.add_term(0, BigInt::one());
            let back = l0.l_to_m().unwrap();
            assert_eq!(back.len(), 1 << (n - 1));
            assert!(back.terms().all(|(_, c)| c.is_one()));
        }
    }

    #[test]
    fn singleton_products() {
        assert_eq!(
            product_monomial_singletons(&[5]).unwrap(),
            QSymPoly::monomial(&comp(&[5]), None).unwrap()
        );
        assert_eq!(
            product_monomial_singletons(&[1, 1]).unwrap(),
            poly(2, &[(&[2], 1), (&[1, 1], 2)], None)
        );
        assert_eq!(
            product_monomial_singletons(&[4, 2]).unwrap(),
            poly(6, &[(&[6], 1), (&[4, 2], 1), (&[2, 4], 1)], None)
        );
        assert!(matches!(
            product_monomial_singletons(&[1; 9]),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn ordered_partitions_are_counted_by_fubini_numbers() {
        let fubini = [1usize, 1, 3, 13, 75, 541, 4683];
        for (k, &f) in fubini.iter().enumerate() {
            assert_eq!(ordered_set_partitions(k).len(), f);
        }
        assert!(OrderedSetPartition::new(3, vec![0b001, 0b110]).is_ok());
        assert!(OrderedSetPartition::new(3, vec![0b011, 0b110]).is_err());
        assert!(OrderedSetPartition::new(3, vec![0b011]).is_err());
    }

    #[test]
    fn boolean_mod_two_and_four() {
        for j in 0..=4u32 {
            let n = 1u64 << j;
            let f = f_boolean(n, Some(2)).unwrap();
            assert_eq!(f, QSymPoly::monomial(&comp(&[n]), Some(2)).unwrap());
        }
        let six = f_boolean(6, Some(2)).unwrap();
        assert_eq!(
            six,
            poly(6, &[(&[6], 1), (&[4, 2], 1), (&[2, 4], 1)], Some(2))
        );
        let four = f_boolean(4, Some(4)).unwrap();
        assert_eq!(four, poly(4, &[(&[4], 1), (&[2, 2], 2)], Some(4)));
    }

    #[test]
    fn boolean_l_coefficients_are_descent_statistics() {
        for n in 1..=10u64 {
            let l = f_boolean(n, None).unwrap().m_to_l().unwrap();
            let t = beta_table(n, false).unwrap();
            for (mask, &v) in t.values().iter().enumerate() {
                assert_eq!(l.coefficient(mask as u64), BigInt::from(v));
            }
        }
    }

    #[test]
    fn singleton_route_matches_power_route() {
        for n in 1..=8u64 {
            let by_partitions = product_monomial_singletons(&vec![1; n as usize]).unwrap();
            assert_eq!(by_partitions, f_boolean(n, None).unwrap());
            assert_eq!(power_of_m1(n, None).unwrap(), by_partitions);
        }
    }

    #[test]
    fn odd_l_count_matches_parity_route() {
        for n in 1..=16u64 {
            let parts = crate::numbers::BinaryExpansion::of(n).powers();
            assert_eq!(
                odd_l_count_of_product(&parts).unwrap(),
                crate::parity::odd_beta_count(n).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn boolean_two_power_mod_two_is_single_monomial() {
        for j in 1..=4u32 {
            let f = f_boolean(1 << j, Some(2)).unwrap();
            assert_eq!(f.len(), 1);
        }
    }

    #[test]
    fn multiplicativity() {
        for a in 1..=7u64 {
            for b in 1..=8 - a {
                let prod = f_boolean(a, None)
                    .unwrap()
                    .mul(&f_boolean(b, None).unwrap())
                    .unwrap();
                assert_eq!(prod, f_boolean(a + b, None).unwrap());
            }
        }
    }

    #[test]
    fn mixing_moduli_is_rejected() {
        let a = f_boolean(2, Some(2)).unwrap();
        let b = f_boolean(2, Some(4)).unwrap();
        assert!(a.mul(&b).is_err());
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn cubical_examples() {
        let c2 = f_cubical_b(2, None).unwrap().m_to_l().unwrap();
        let l: Vec<BigInt> = (0..4).map(|m| c2.coefficient(m)).collect();
        assert_eq!(l, [1, 3, 3, 1].map(BigInt::from).to_vec());
        for p in [3u64, 5, 7] {
            // mod 4: M_∅ + 2·M_{{p}}
            let f = f_cubical_b(p, Some(4)).unwrap();
            let terms: Vec<(u64, BigInt)> = f.terms().map(|(m, c)| (m, c.clone())).collect();
            assert_eq!(
                terms,
                vec![(0, BigInt::one()), (1 << (p - 1), BigInt::from(2))]
            );
            // mod p: M^B_(p+1) + 2·M^B_(1,p)
            let f = f_cubical_b(p, Some(p)).unwrap();
            assert_eq!(f.coefficient_of(&comp(&[p + 1])).unwrap(), BigInt::one());
            assert_eq!(f.coefficient_of(&comp(&[1, p])).unwrap(), BigInt::from(2));
            assert_eq!(f.terms().count(), 2);
        }
    }

    #[test]
    fn cubical_l_coefficients_are_signed_statistics() {
        for n in 1..=10u64 {
            let l = f_cubical_b(n, None).unwrap().m_to_l().unwrap();
            let t = beta_table(n, true).unwrap();
            for (mask, &v) in t.values().iter().enumerate() {
                assert_eq!(
                    l.coefficient(mask as u64),
                    BigInt::from(v),
                    "n={n} mask={mask}"
                );
            }
        }
    }

    #[test]
    fn degree_limits() {
        assert!(matches!(
            f_boolean(13, None),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(f_boolean(20, Some(2)).is_ok());
        assert!(matches!(
            f_cubical_b(19, Some(4)),
            Err(Error::ResourceLimit { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn basis_round_trip(degree in 1u64..=8, seed in proptest::collection::vec(-50i64..50, 128)) {
                let mut p = QSymPoly::zero(degree, Basis::Monomial, None).unwrap();
                for mask in 0..1u64 << (degree - 1) {
                    p.add_term(mask, BigInt::from(seed[mask as usize]));
                }
                prop_assert_eq!(p.m_to_l().unwrap().l_to_m().unwrap(), p);
            }
        }
    }
}
