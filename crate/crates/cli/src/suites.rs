//! Verification suites. Each suite returns one [`Check`] per assertion.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use descentlab_core::abcd::{
    ab_index, ab_to_cd, d_power_c, macmahon_multiplication_check, omega, signed_sum,
    single_d_family, AbWord, SignVector,
};
use descentlab_core::cyclo::{
    cyclotomic, divides_order, eval_special, multiplicity, real_part_check,
    signed_derivative_theorem_check, CyclotomicCache, FactorReport, IntPoly, ScanConfig,
    SpecialPoint, SpecialValue,
};
use descentlab_core::descent::{
    alpha_signed, beta_table, brute_force_table, prediction_with, residue_counts, rho,
    rho_from_table, subset_zeta, DescentTable, Dyadic,
};
use descentlab_core::numbers::{
    carries_base_p, essential_elements, euler_number, factorial, multinomial, p_adic_valuation,
    prime_power, signed_euler_number, BinaryExpansion, Composition, SubsetMask,
};
use descentlab_core::parity::beta_parity_table;
use descentlab_core::qsym::{
    f_boolean, f_cubical_b, odd_l_count_of_product, power_of_m1, product_monomial_singletons,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::report::Check;
use crate::scan::par_factor_scan;

pub const SUITES: &[&str] = &[
    "parity",
    "essential",
    "rho",
    "mod4",
    "qsym",
    "signed",
    "modp",
    "classes",
    "special",
    "quadratic",
    "derivative",
    "structure",
    "oracle",
    "tables",
];

pub const UNSIGNED_GOLDEN: &str = include_str!("../golden/unsigned_factors.golden");
pub const SIGNED_GOLDEN: &str = include_str!("../golden/signed_factors.golden");

/// Knobs shared by all suites. `desk_scale` shrinks ranges to a quick run;
/// `max_n`, `n` and `p` narrow a suite where it has such a parameter.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub desk_scale: bool,
    pub max_n: Option<u64>,
    pub n: Option<u64>,
    pub p: Option<u64>,
    pub workers: usize,
}

impl SuiteParams {
    fn range(&self, full: u64, desk: u64) -> u64 {
        self.max_n
            .unwrap_or(if self.desk_scale { desk } else { full })
    }
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<Check>> {
    match name {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, params)?);
            }
            Ok(out)
        }
        "parity" => parity(params),
        "essential" => essential(params),
        "rho" => rho_suite(params),
        "mod4" => mod4(params),
        "qsym" => qsym(params),
        "signed" => signed(params),
        "modp" => modp(params),
        "classes" => classes(params),
        "special" => special(params),
        "quadratic" => quadratic(params),
        "derivative" => derivative(params),
        "structure" => structure(params),
        "oracle" => oracle(params),
        "tables" => tables(params),
        other => bail!(UnknownSuite(other.to_string())),
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

fn mask_of(universe: u32, elements: impl IntoIterator<Item = u64>) -> u64 {
    let bits = elements.into_iter().fold(0u64, |acc, e| acc | 1 << (e - 1));
    debug_assert!(universe == 64 || bits >> universe == 0);
    bits
}

fn parity(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "parity";
    let mut out = Vec::new();
    let top = params.range(16, 12);
    let mut bad = Vec::new();
    for n in 2..=top {
        let pt = beta_parity_table(n)?;
        let ess = essential_elements(n)?;
        let nonessential: Vec<u64> = (1..n).filter(|i| !ess.contains(i)).collect();
        let ok = (0..1u64 << (n - 1)).all(|s| {
            nonessential
                .iter()
                .filter(|&&i| s >> (i - 1) & 1 == 0)
                .all(|&i| pt.get(s) == pt.get(s | 1 << (i - 1)))
        });
        if !ok {
            bad.push(n);
        }
    }
    out.push(Check::new(
        S,
        format!("adding a nonessential element keeps the parity of beta, n <= {top}"),
        bad.is_empty(),
        format!("failures at {bad:?}"),
    ));

    let top = params.range(24, 16);
    let mut bad = Vec::new();
    let mut tested = 0;
    for n in 2..=top {
        let k = n.count_ones();
        if !(2..=4).contains(&k) {
            continue;
        }
        tested += 1;
        let pt = beta_parity_table(n)?;
        let small = beta_parity_table((1 << k) - 1)?;
        let ess = essential_elements(n)?;
        let ok = (0..1u64 << ess.len()).all(|hat| {
            let s = mask_of(
                (n - 1) as u32,
                (0..ess.len())
                    .filter(|&i| hat >> i & 1 == 1)
                    .map(|i| ess[i]),
            );
            pt.get(s) == small.get(hat)
        });
        if !ok {
            bad.push(n);
        }
    }
    out.push(Check::new(
        S,
        format!("beta parity on essential sets reduces to n = 2^k - 1, n <= {top}, 2 <= k <= 4"),
        bad.is_empty() && tested > 0,
        format!("{tested} values of n, failures at {bad:?}"),
    ));

    let top = params.range(14, 10);
    let mut bad = Vec::new();
    for n in 1..=top {
        let t = beta_table(n, false)?;
        let pt = beta_parity_table(n)?;
        if !(0..t.subset_count()).all(|s| pt.get(s) == (t.get(s) & 1 == 1)) {
            bad.push(n);
        }
    }
    out.push(Check::new(
        S,
        format!("GF(2) tables agree with exact tables, n <= {top}"),
        bad.is_empty(),
        format!("failures at {bad:?}"),
    ));
    Ok(out)
}

fn essential(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "essential";
    let top = params.max_n.unwrap_or(1024);
    let bad: Vec<u64> = (1..=top)
        .filter(|&n| {
            essential_elements(n).map(|e| e.len() as u64).ok() != Some((1u64 << n.count_ones()) - 2)
        })
        .collect();
    let e13 = essential_elements(13)?;
    Ok(vec![
        Check::new(
            S,
            format!("|E(n)| = 2^popcount(n) - 2 for n <= {top}"),
            bad.is_empty(),
            format!("failures at {bad:?}"),
        ),
        Check::new(
            S,
            "E(13) = {1,4,5,8,9,12}",
            e13 == [1, 4, 5, 8, 9, 12],
            format!("{e13:?}"),
        ),
    ])
}

fn dy(num: i64, exp: u32) -> Dyadic {
    Dyadic::new(BigInt::from(num), exp)
}

fn rho_suite(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "rho";
    let mut out = Vec::new();
    if let Some(n) = params.n {
        let r = rho(n)?;
        out.push(Check::new(
            S,
            format!("rho({n})"),
            true,
            format!("rho={r} half_minus_rho={}", Dyadic::half().sub(&r)),
        ));
        return Ok(out);
    }
    for (n, expected) in [
        (1u64, dy(1, 0)),
        (3, dy(1, 1)),
        (7, dy(1, 1)),
        (15, dy(29, 6)),
        (31, dy(3991, 13)),
    ] {
        let got = rho(n)?;
        out.push(Check::new(
            S,
            format!("rho({n}) = {expected}"),
            got == expected,
            format!("computed {got}, 1/2 - rho = {}", Dyadic::half().sub(&got)),
        ));
    }
    let top = params.range(24, 20);
    let mut by_popcount: BTreeMap<u32, Vec<(u64, Dyadic)>> = BTreeMap::new();
    for n in 1..=top {
        by_popcount
            .entry(n.count_ones())
            .or_default()
            .push((n, rho(n)?));
    }
    let mut bad = Vec::new();
    for (k, rows) in &by_popcount {
        if rows.iter().any(|(_, r)| *r != rows[0].1) {
            bad.push(*k);
        }
    }
    let summary: Vec<String> = by_popcount
        .iter()
        .map(|(k, rows)| format!("k={k}:{}", rows[0].1))
        .collect();
    out.push(Check::new(
        S,
        format!("rho depends only on popcount, n <= {top}"),
        bad.is_empty(),
        summary.join(" "),
    ));
    let top = params.range(16, 12);
    let bad: Vec<u64> = (1..=top)
        .filter(|&n| beta_table(n, false).map(|t| rho_from_table(&t)).ok() != rho(n).ok())
        .collect();
    out.push(Check::new(
        S,
        format!("GF(2) rho equals the exact-table rho, n <= {top}"),
        bad.is_empty(),
        format!("failures at {bad:?}"),
    ));
    Ok(out)
}

fn mod4(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "mod4";
    let mut out = Vec::new();
    let (unsigned, signed_ns): (Vec<u64>, Vec<u64>) = match params.n {
        Some(n) if n.is_power_of_two() && n >= 4 => (vec![n], vec![n]),
        Some(n) => (vec![], vec![n]),
        None => (vec![4, 8, 16], (2..=params.range(14, 12)).collect()),
    };
    for n in unsigned {
        let t = beta_table(n, false)?;
        let c = residue_counts(&t, 4);
        let half = 1u64 << (n - 2);
        out.push(Check::new(
            S,
            format!("n={n}: half of beta are 1 mod 4, half 3 mod 4"),
            c[1] == half && c[3] == half,
            format!("counts (1,3) = ({}, {})", c[1], c[3]),
        ));
        let mid = 1u64 << (n / 2 - 1);
        let pointwise = (0..t.subset_count()).all(|s| {
            let e = (s & !mid).count_ones();
            let expect = if e.is_multiple_of(2) { 1 } else { 3 };
            t.get(s).rem_euclid(4) == expect
        });
        out.push(Check::new(
            S,
            format!("n={n}: beta(S) = (-1)^|S - {{n/2}}| mod 4"),
            pointwise,
            "",
        ));
    }
    for n in signed_ns {
        if n < 2 {
            continue;
        }
        let t = beta_table(n, true)?;
        let c = residue_counts(&t, 4);
        let half = 1u64 << (n - 1);
        out.push(Check::new(
            S,
            format!("signed n={n}: half of beta are 1 mod 4, half 3 mod 4"),
            c[1] == half && c[3] == half,
            format!("counts (1,3) = ({}, {})", c[1], c[3]),
        ));
    }
    Ok(out)
}

fn qsym(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "qsym";
    let mut out = Vec::new();
    let top = params.max_n.unwrap_or(10).min(10);
    let ok = (1..=top).all(|n| {
        let l = f_boolean(n, None).and_then(|f| f.m_to_l()).unwrap();
        let t = beta_table(n, false).unwrap();
        (0..t.subset_count()).all(|s| l.coefficient(s) == BigInt::from(t.get(s)))
    });
    out.push(Check::new(
        S,
        format!("L-coefficients of F(B_n) are beta_n, n <= {top}"),
        ok,
        "",
    ));
    let ok = (1..=top).all(|n| {
        let l = f_cubical_b(n, None).and_then(|f| f.m_to_l()).unwrap();
        let t = beta_table(n, true).unwrap();
        (0..t.subset_count()).all(|s| l.coefficient(s) == BigInt::from(t.get(s)))
    });
    out.push(Check::new(
        S,
        format!("L^B-coefficients of F_B(C_n) are signed beta_n, n <= {top}"),
        ok,
        "",
    ));
    let ok = (1..=8u64).all(|n| {
        let f = f_boolean(n, None).unwrap();
        product_monomial_singletons(&vec![1; n as usize]).unwrap() == f
            && power_of_m1(n, None).unwrap() == f
    });
    out.push(Check::new(
        S,
        "M_(1)^n by ordered set partitions and by quasi-shuffles equals F(B_n), n <= 8",
        ok,
        "",
    ));
    let ok = (1..8u64).all(|a| {
        (1..=8 - a).all(|b| {
            f_boolean(a, None)
                .unwrap()
                .mul(&f_boolean(b, None).unwrap())
                .unwrap()
                == f_boolean(a + b, None).unwrap()
        })
    });
    out.push(Check::new(
        S,
        "F(B_a) F(B_b) = F(B_{a+b}), a + b <= 8",
        ok,
        "",
    ));

    let top = params.range(24, 16);
    let mut counts: BTreeMap<u32, Vec<(u64, u64)>> = BTreeMap::new();
    for n in 1..=top {
        let c = odd_l_count_of_product(&BinaryExpansion::of(n).powers())?;
        counts.entry(n.count_ones()).or_default().push((n, c));
    }
    // c / 2^(n-1) is the same within each popcount class
    let ok = counts.values().all(|rows| {
        rows.iter()
            .all(|&(n, c)| c << (rows[0].0 - 1) == rows[0].1 << (n - 1))
    });
    out.push(Check::new(
        S,
        format!("odd L-proportion of prod M_(2^j) depends only on k, n <= {top}"),
        ok,
        "",
    ));
    let ok = (1..=4u32).all(|j| f_boolean(1 << j, Some(2)).unwrap().len() == 1);
    out.push(Check::new(
        S,
        "F(B_{2^j}) mod 2 is a single monomial, j <= 4",
        ok,
        "",
    ));
    let comp = |parts: &[u64]| Composition::new(parts.to_vec()).expect("positive parts");
    let ok = [4u64, 8, 16].iter().all(|&n| {
        let f = f_boolean(n, Some(4)).unwrap();
        let h = n / 2;
        f.len() == 2
            && f.coefficient_of(&comp(&[n])).unwrap().is_one()
            && f.coefficient_of(&comp(&[h, h])).unwrap() == BigInt::from(2)
    });
    out.push(Check::new(
        S,
        "F(B_n) = M_(n) + 2 M_(n/2,n/2) mod 4, n = 4, 8, 16",
        ok,
        "",
    ));
    let ok = [3u64, 5, 7].iter().all(|&p| {
        let f4 = f_cubical_b(p, Some(4)).unwrap();
        let fp = f_cubical_b(p, Some(p)).unwrap();
        f4.terms().count() == 2
            && f4.coefficient_of(&comp(&[p + 1])).unwrap().is_one()
            && f4.coefficient_of(&comp(&[p, 1])).unwrap() == BigInt::from(2)
            && fp.terms().count() == 2
            && fp.coefficient_of(&comp(&[p + 1])).unwrap().is_one()
            && fp.coefficient_of(&comp(&[1, p])).unwrap() == BigInt::from(2)
    });
    out.push(Check::new(
        S,
        "F_B(C_p) = M^B_(p+1) + 2 M^B_(p,1) mod 4 and M^B_(p+1) + 2 M^B_(1,p) mod p, p = 3, 5, 7",
        ok,
        "",
    ));
    Ok(out)
}

fn signed(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "signed";
    let mut out = Vec::new();
    let top = params.range(14, 12);
    let mut not_odd = Vec::new();
    let mut bad_sum = Vec::new();
    let mut bad_max = Vec::new();
    for n in 1..=top {
        let t = beta_table(n, true)?;
        if t.values().iter().any(|v| v & 1 == 0) {
            not_odd.push(n);
        }
        if t.sum() != (factorial(n) << n) {
            bad_sum.push(n);
        }
        if BigInt::from(t.max()) != signed_euler_number(n) {
            bad_max.push(n);
        }
    }
    out.push(Check::new(
        S,
        format!("every signed beta is odd, n <= {top}"),
        not_odd.is_empty(),
        format!("failures at {not_odd:?}"),
    ));
    out.push(Check::new(
        S,
        format!("sum of signed beta is 2^n n!, n <= {top}"),
        bad_sum.is_empty(),
        format!("failures at {bad_sum:?}"),
    ));
    out.push(Check::new(
        S,
        format!("max signed beta is the Springer number, n <= {top}"),
        bad_max.is_empty(),
        format!("failures at {bad_max:?}"),
    ));
    let top = params.max_n.unwrap_or(10).min(10);
    let ok = (1..=top).all(|n| {
        let t = beta_table(n, true).unwrap();
        let mut cumulative = t.values().to_vec();
        subset_zeta(&mut cumulative).unwrap();
        (0..t.subset_count()).all(|s| {
            alpha_signed(n, &SubsetMask::new(n as u32, s).unwrap()).unwrap()
                == BigInt::from(cumulative[s as usize])
        })
    });
    out.push(Check::new(
        S,
        format!("closed-form signed alpha equals cumulative signed beta, n <= {top}"),
        ok,
        "",
    ));
    Ok(out)
}

fn modp(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "modp";
    let mut out = Vec::new();
    let pairs: &[(u64, u64)] = if params.desk_scale {
        &[
            (6, 3),
            (9, 9),
            (9, 3),
            (10, 5),
            (12, 3),
            (14, 7),
            (15, 5),
            (15, 3),
        ]
    } else {
        &[
            (6, 3),
            (9, 9),
            (9, 3),
            (10, 5),
            (12, 3),
            (14, 7),
            (15, 5),
            (15, 3),
            (18, 9),
        ]
    };
    for &(n, q) in pairs {
        let (p, _) = prime_power(q).expect("listed q are prime powers");
        let t = beta_table(n, false)?;
        let small = beta_table(n / q, false)?;
        let ok = (0..t.subset_count())
            .all(|s| t.get(s).rem_euclid(p as i128) as u64 == prediction_with(&small, q, p, s));
        out.push(Check::new(
            S,
            format!("n={n} q={q}: beta_n(S) = (-1)^|S - q[r-1]| beta_r(S/q) mod {p}"),
            ok,
            "",
        ));
    }
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let (p, _) = prime_power(q).expect("prime power");
        let t = beta_table(q, false)?;
        let ok = (0..t.subset_count()).all(|s| {
            let e = if s.count_ones() % 2 == 0 {
                1
            } else {
                p as i128 - 1
            };
            t.get(s).rem_euclid(p as i128) == e % p as i128
        });
        out.push(Check::new(
            S,
            format!("beta_{q}(S) = (-1)^|S| mod {p}"),
            ok,
            "",
        ));
    }
    for q in [3u64, 5, 7, 9] {
        let (p, _) = prime_power(q).expect("prime power");
        let t = beta_table(2 * q, false)?;
        let mid = 1u64 << (q - 1);
        let ok = (0..t.subset_count()).all(|s| {
            let e = if (s & !mid).count_ones().is_multiple_of(2) {
                1
            } else {
                p as i128 - 1
            };
            t.get(s).rem_euclid(p as i128) == e
        });
        out.push(Check::new(
            S,
            format!("beta_{}(S) = (-1)^|S - {{{q}}}| mod {p}", 2 * q),
            ok,
            "",
        ));
    }
    Ok(out)
}

/// Class sizes of beta modulo `2p` at residues `1, -1, p - 1, p + 1`.
pub fn class_counts(t: &DescentTable, p: u64) -> [u64; 4] {
    let c = residue_counts(t, 2 * p);
    let m = 2 * p as usize;
    [c[1], c[m - 1], c[p as usize - 1], c[p as usize + 1]]
}

pub const CLASS_CASES: &[(u64, u64)] = &[(5, 5), (9, 3), (6, 3), (10, 5), (14, 7), (18, 3)];

fn classes(_params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "classes";
    let mut out = Vec::new();
    for &(n, p) in CLASS_CASES {
        let t = beta_table(n, false)?;
        let [a, b, c, d] = class_counts(&t, p);
        let mut ok = a == b && c == d;
        let half = rho(n)? == Dyadic::half();
        if half {
            let e = 1u64 << (n - 3);
            ok &= [a, b, c, d].iter().all(|&x| x == e);
        }
        out.push(Check::new(
            S,
            format!("n={n} p={p}: #(1) = #(-1) and #(p-1) = #(p+1) mod 2p"),
            ok,
            format!(
                "counts (1,-1,p-1,p+1) = ({a},{b},{c},{d}), rho(n) = 1/2: {half}, 2^(n-3) = {}",
                1u64 << (n - 3)
            ),
        ));
    }
    Ok(out)
}

fn special(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "special";
    let mut out = Vec::new();
    let top = params.range(14, 12);
    let ok = (1..=top).all(|n| {
        eval_special(&beta_table(n, false).unwrap(), SpecialPoint::One).unwrap()
            == SpecialValue::Integer(BigInt::one() << (n - 1))
    });
    out.push(Check::new(
        S,
        format!("Q_n(1) = 2^(n-1), n <= {top}"),
        ok,
        "",
    ));
    let top = params.range(16, 14);
    let mut bad = Vec::new();
    for n in 1..=top {
        let expected = Dyadic::half().sub(&rho(n)?).shl(n as u32);
        let got = eval_special(&beta_table(n, false)?, SpecialPoint::MinusOne)?;
        if Some(got) != expected.to_integer().map(SpecialValue::Integer) {
            bad.push(n);
        }
    }
    out.push(Check::new(
        S,
        format!("Q_n(-1) = 2^n (1/2 - rho(n)), n <= {top}"),
        bad.is_empty(),
        format!("failures at {bad:?}"),
    ));
    let q15 = eval_special(&beta_table(15, false)?, SpecialPoint::MinusOne)?;
    out.push(Check::new(
        S,
        "Q_15(-1) = 1536",
        q15 == SpecialValue::Integer(BigInt::from(1536)),
        q15.to_string(),
    ));
    for n in [4u64, 8, 16] {
        let v = eval_special(&beta_table(n, false)?, SpecialPoint::I)?;
        out.push(Check::new(
            S,
            format!("Q_{n}(i) = 0"),
            v.is_zero(),
            v.to_string(),
        ));
    }
    for q in [5u64, 9, 11, 13] {
        let r = real_part_check(q, false)?;
        out.push(Check::new(
            S,
            format!(
                "Q_{q}(zeta) = 2^{q} Re(zeta) (rho({q}) - 1/2) at a primitive {}-th root",
                r.modulus
            ),
            r.hypothesis && r.holds(),
            format!("class {}", r.computed),
        ));
    }
    for q in [3u64, 5, 7, 9] {
        let r = real_part_check(q, true)?;
        out.push(Check::new(
            S,
            format!(
                "Q_{}(zeta) = 2^{} Re(zeta) (rho({q}) - 1/2) at a primitive {}-th root",
                2 * q,
                2 * q,
                r.modulus
            ),
            r.holds(),
            format!("class {}", r.computed),
        ));
    }
    // Odd prime power q: Phi_q(1) = p is odd while Q_n(1) is a power of two.
    let top = params.range(12, 10);
    let mut ok = true;
    for q in [3u64, 5, 7, 9] {
        let (p, _) = prime_power(q).expect("prime power");
        ok &= cyclotomic(q)?.eval(&BigInt::one()) == BigInt::from(p);
        for n in 1..=top {
            ok &= !divides_order(&beta_table(n, false)?, q, 0)?;
        }
    }
    out.push(Check::new(
        S,
        format!("Phi_q does not divide Q_n for q in {{3,5,7,9}}, n <= {top}"),
        ok,
        "",
    ));
    // Phi_2q(-1) = p against Q_n(-1) = 2^n (1/2 - rho(n)).
    let qs = [3u64, 5, 7, 9, 11, 13, 25, 27];
    let cases: &[(u64, u64)] = &[
        (4, 3),
        (8, 3),
        (16, 3),
        (15, 5),
        (23, 5),
        (27, 5),
        (29, 5),
        (30, 5),
        (31, 11),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for &(n, min_p) in cases {
        let q_minus_one = Dyadic::half()
            .sub(&rho(n)?)
            .shl(n as u32)
            .to_integer()
            .expect("integral");
        for &q in &qs {
            let (p, _) = prime_power(q).expect("prime power");
            if p < min_p {
                continue;
            }
            ok &= cyclotomic(2 * q)?.eval(&-BigInt::one()) == BigInt::from(p);
            ok &= !(&q_minus_one % BigInt::from(p)).is_zero() || q_minus_one.is_zero() && false;
        }
        detail.push(format!("Q_{n}(-1)={q_minus_one}"));
    }
    for (n, qs) in [
        (8u64, &[3u64, 5, 7][..]),
        (16, &[3, 5, 7, 9, 11, 13]),
        (15, &[5, 7, 11, 13]),
    ] {
        let t = beta_table(n, false)?;
        for &q in qs {
            ok &= !divides_order(&t, 2 * q, 0)?;
        }
    }
    out.push(Check::new(
        S,
        "Phi_2q does not divide Q_n for n = 2^j, popcount 4 with p >= 5, popcount 5 with p >= 11",
        ok,
        detail.join(" "),
    ));
    Ok(out)
}

pub const QUADRATIC_PHI2: &[u64] = &[5, 6, 9, 10, 12, 17, 18, 20];
pub const QUADRATIC_PHI4: &[u64] = &[4, 8, 16];
pub const QUADRATIC_PHI2P: &[(u64, u64)] = &[(6, 3), (10, 5), (18, 3)];
pub const SIGNED_PHI4P: &[u64] = &[3, 5, 7, 11, 13];

fn quadratic(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "quadratic";
    let mut out = Vec::new();
    let phi2: Vec<u64> = if params.desk_scale {
        QUADRATIC_PHI2
            .iter()
            .copied()
            .filter(|&n| n <= 12)
            .collect()
    } else {
        QUADRATIC_PHI2.to_vec()
    };
    for n in phi2 {
        let j = multiplicity(&beta_table(n, false)?, 2, 3)?;
        out.push(Check::new(
            S,
            format!("Phi_2^2 divides Q_{n}"),
            j >= 2,
            format!("multiplicity >= {j}"),
        ));
    }
    for &n in QUADRATIC_PHI4 {
        let j = multiplicity(&beta_table(n, false)?, 4, 3)?;
        out.push(Check::new(
            S,
            format!("Phi_4^2 divides Q_{n}"),
            j >= 2,
            format!("multiplicity >= {j}"),
        ));
    }
    for &(n, p) in QUADRATIC_PHI2P {
        let j = multiplicity(&beta_table(n, false)?, 2 * p, 3)?;
        out.push(Check::new(
            S,
            format!("Phi_{}^2 divides Q_{n}", 2 * p),
            j >= 2,
            format!("multiplicity >= {j}"),
        ));
    }
    for &p in SIGNED_PHI4P {
        let j = multiplicity(&beta_table(p, true)?, 4 * p, 3)?;
        out.push(Check::new(
            S,
            format!("Phi_{} divides signed Q_{p} exactly once", 4 * p),
            j == 1,
            format!("multiplicity {j}"),
        ));
    }
    Ok(out)
}

fn derivative(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "derivative";
    let ps = match params.p {
        Some(p) => vec![p],
        None => vec![3, 5, 7],
    };
    let mut out = Vec::new();
    for p in ps {
        let r = signed_derivative_theorem_check(p)?;
        out.push(Check::new(
            S,
            format!(
                "p={p}: zeta Q'(zeta) = Im(zeta) i (-1)^((p-1)/2) 2^p p E_(p-1) in Z[t]/Phi_{}",
                4 * p
            ),
            r.identity_holds(),
            format!("magnitude {}, class {}", r.magnitude, r.computed),
        ));
        out.push(Check::new(
            S,
            format!(
                "p={p}: Phi_{} divides signed Q_{p}, its square does not",
                4 * p
            ),
            r.phi_divides && r.multiplicity == 1,
            format!("multiplicity {}", r.multiplicity),
        ));
    }
    Ok(out)
}

fn vanishing(h: &[i128], universe: u32) -> (bool, usize) {
    let mut qualifying = 0;
    let ok = (0..1u64 << universe).all(|t| {
        let sv = SignVector::new(SubsetMask::new(universe, t).expect("in range"));
        if !sv.has_isolated_odd_interval() {
            return true;
        }
        qualifying += 1;
        signed_sum(h, &sv).map(|v| v.is_zero()).unwrap_or(false)
    });
    (ok, qualifying)
}

fn structure(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "structure";
    let mut out = Vec::new();
    let ok = (1..=9u64).all(|n| {
        let b = ab_index(&beta_table(n, false).unwrap()).unwrap();
        let c = ab_index(&beta_table(n, true).unwrap()).unwrap();
        ab_to_cd(&c).ok() == Some(omega(&b.prepend_a().unwrap()))
    });
    out.push(Check::new(
        S,
        "Psi(C_n) = omega(a Psi(B_n)), n <= 9",
        ok,
        "",
    ));
    let ok = (1..=10u64).all(|n| {
        let b = ab_index(&beta_table(n, false).unwrap()).unwrap();
        ab_to_cd(&b).ok().and_then(|cd| cd.to_ab().ok()) == Some(b)
    }) && (1..=9u64).all(|n| {
        let c = ab_index(&beta_table(n, true).unwrap()).unwrap();
        ab_to_cd(&c).ok().and_then(|cd| cd.to_ab().ok()) == Some(c)
    });
    out.push(Check::new(
        S,
        "cd round trip for B_n (n <= 10) and C_n (n <= 9)",
        ok,
        "",
    ));
    let ok = (1..=9u64).all(|n| {
        let b = ab_index(&beta_table(n, false).unwrap()).unwrap();
        omega(&b.prepend_a().unwrap())
            .terms()
            .all(|(w, c)| (c % 2u8 != BigInt::zero()) == (w.d_count() == 0))
    });
    out.push(Check::new(
        S,
        "omega(a Psi(B_n)) mod 2 is c^n, n <= 9",
        ok,
        "",
    ));

    let (bt, ct) = if params.desk_scale { (8, 6) } else { (10, 8) };
    let mut ok = true;
    let mut count = 0;
    for n in 1..=bt {
        let (o, c) = vanishing(beta_table(n, false)?.values(), (n - 1) as u32);
        ok &= o;
        count += c;
    }
    out.push(Check::new(
        S,
        format!("signed sums vanish on T with an isolated odd interval, B_n n <= {bt}"),
        ok,
        format!("{count} sign vectors"),
    ));
    let mut ok = true;
    let mut count = 0;
    for n in 1..=ct {
        let (o, c) = vanishing(beta_table(n, true)?.values(), n as u32);
        ok &= o;
        count += c;
    }
    out.push(Check::new(
        S,
        format!("signed sums vanish on T with an isolated odd interval, C_n n <= {ct}"),
        ok,
        format!("{count} sign vectors"),
    ));

    let ok = (2..=12u32).all(|n| {
        single_d_family(n, &vec![1; (n - 1) as usize])
            .and_then(|p| p.to_ab())
            .map(|ab| ab.odd_count() == 1 << (n - 1))
            .unwrap_or(false)
    });
    out.push(Check::new(
        S,
        "sum_i c^i d c^(n-i-2) has 2^(n-1) odd ab-coefficients, n <= 12",
        ok,
        "",
    ));
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let trials = if params.desk_scale { 50 } else { 200 };
    let ok = (0..trials).all(|_| {
        let n = rng.gen_range(2..=12u32);
        let mut coeffs: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-50..50)).collect();
        let k = rng.gen_range(0..coeffs.len());
        if coeffs[k] % 2 == 0 {
            coeffs[k] += 1;
        }
        single_d_family(n, &coeffs)
            .and_then(|p| p.to_ab())
            .map(|ab| ab.odd_count() == 1 << (n - 1))
            .unwrap_or(false)
    });
    out.push(Check::new(
        S,
        format!("{trials} random single-d combinations with an odd coefficient are half odd"),
        ok,
        "",
    ));
    for p in [3u64, 5, 7] {
        let k = ((p - 1) / 2) as u32;
        let cd = ab_to_cd(&ab_index(&beta_table(p, true)?)?).map_err(|e| anyhow::anyhow!("{e}"))?;
        let got = cd.coefficient(&d_power_c(k));
        let expected = (euler_number(p - 1) * p) << k;
        out.push(Check::new(
            S,
            format!("[d^{k} c] Psi(C_{p}) = 2^{k} {p} E_{}", p - 1),
            got == expected,
            got.to_string(),
        ));
    }
    let trials = if params.desk_scale { 20 } else { 100 };
    let mut cache = CyclotomicCache::new();
    let mut ok = true;
    let mut largest = 0;
    for _ in 0..trials {
        let k = rng.gen_range(1..=10_000u64);
        largest = largest.max(k);
        let mut factors: Vec<IntPoly> = descentlab_core::numbers::divisors(k)
            .into_iter()
            .map(|d| cache.get(d))
            .collect::<Result<_, _>>()?;
        factors.sort_by_key(IntPoly::degree);
        let prod = factors.iter().fold(IntPoly::one(), |acc, f| acc.mul(f));
        ok &= prod == IntPoly::t_pow_minus_one(k as usize);
    }
    out.push(Check::new(
        S,
        format!("prod over d | k of Phi_d = t^k - 1 for {trials} random k <= 10^4"),
        ok,
        format!("largest k {largest}"),
    ));
    let mut product_ok = true;
    let mut sum_holds = 0;
    let mut total = 0;
    for m in 1..=4u64 {
        for n in 1..=4u64 {
            for ub in 0..1u64 << (m - 1) {
                for vb in 0..1u64 << (n - 1) {
                    let r = macmahon_multiplication_check(
                        m,
                        n,
                        AbWord::new((m - 1) as u32, ub)?,
                        AbWord::new((n - 1) as u32, vb)?,
                    )?;
                    product_ok &= r.product_holds();
                    sum_holds += usize::from(r.sum_holds());
                    total += 1;
                }
            }
        }
    }
    out.push(Check::new(
        S,
        "[uav]Psi(B_{m+n}) + [ubv]Psi(B_{m+n}) = C(m+n,m) [u]Psi(B_m) [v]Psi(B_n), m, n <= 4",
        product_ok,
        format!("additive reading holds on {sum_holds} of {total} word pairs"),
    ));
    Ok(out)
}

fn oracle(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "oracle";
    let mut out = Vec::new();
    let (ut, st) = if params.desk_scale { (7, 5) } else { (8, 6) };
    for (signed, top) in [(false, ut), (true, st)] {
        let bad: Vec<u64> = (1..=top)
            .filter(|&n| beta_table(n, signed).ok() != brute_force_table(n, signed).ok())
            .collect();
        out.push(Check::new(
            S,
            format!(
                "{} table equals permutation enumeration, n <= {top}",
                if signed { "signed" } else { "unsigned" }
            ),
            bad.is_empty(),
            format!("failures at {bad:?}"),
        ));
    }
    let ok =
        (1..=10u64).all(|n| BigInt::from(beta_table(n, false).unwrap().max()) == euler_number(n));
    out.push(Check::new(
        S,
        "max beta_n is the Euler number, n <= 10",
        ok,
        "",
    ));
    let ok = (1..=8u64)
        .all(|n| BigInt::from(beta_table(n, true).unwrap().max()) == signed_euler_number(n));
    out.push(Check::new(
        S,
        "max signed beta_n is the Springer number, n <= 8",
        ok,
        "",
    ));
    let ok = (1..=12u64).all(|n| {
        (0..1u64 << (n - 1)).all(|s| {
            let g = descentlab_core::numbers::subset_to_composition(
                n,
                &SubsetMask::new((n - 1) as u32, s).unwrap(),
            )
            .unwrap();
            let prod: BigInt = g.parts().iter().map(|&x| factorial(x)).product();
            multinomial(n, &g).unwrap() * prod == factorial(n)
        })
    });
    out.push(Check::new(
        S,
        "multinomial(n; g) prod g_i! = n!, n <= 12",
        ok,
        "",
    ));
    let mut rng = StdRng::seed_from_u64(0xca11);
    let ok = (0..1000).all(|_| {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let mut parts = Vec::new();
        let mut total = 0;
        let target = rng.gen_range(1..=20u64);
        while total < target {
            let x = rng.gen_range(1..=target - total);
            parts.push(x);
            total += x;
        }
        let g = Composition::new(parts).unwrap();
        let v = multinomial(total, &g).unwrap();
        p_adic_valuation(&v, p) == carries_base_p(&g, p).unwrap()
    });
    out.push(Check::new(
        S,
        "p-adic valuation of a multinomial equals base-p carries, 1000 random cases",
        ok,
        "",
    ));
    Ok(out)
}

/// Golden rows for one table, parsed.
pub fn golden_rows(text: &str) -> Result<Vec<FactorReport>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| l.parse::<FactorReport>().map_err(anyhow::Error::from))
        .collect()
}

/// `(m, multiplicity)` pairs.
pub type Factors = Vec<(u64, u32)>;

/// Compares a computed report with a golden row: `(missing, extra)` indices
/// with multiplicities.
pub fn diff_reports(golden: &FactorReport, got: &FactorReport) -> (Factors, Factors) {
    let missing = golden
        .factors
        .iter()
        .filter(|f| !got.factors.contains(f))
        .copied()
        .collect();
    let extra = got
        .factors
        .iter()
        .filter(|f| !golden.factors.contains(f))
        .copied()
        .collect();
    (missing, extra)
}

fn tables(params: &SuiteParams) -> Result<Vec<Check>> {
    const S: &str = "tables";
    let pool = crate::scan::pool(params.workers.max(1))?;
    let config = ScanConfig::default();
    let mut out = Vec::new();
    let (unsigned_hi, signed_hi) = if params.desk_scale {
        (14, 10)
    } else {
        (18, 18)
    };
    let plan = [
        (UNSIGNED_GOLDEN, 3u64, unsigned_hi, false),
        (SIGNED_GOLDEN, 2, signed_hi, true),
    ];
    for (text, lo, hi, signed) in plan {
        for row in golden_rows(text)? {
            if row.n < lo || row.n > hi.min(params.max_n.unwrap_or(u64::MAX)) {
                continue;
            }
            let got = par_factor_scan(&beta_table(row.n, signed)?, &config, &pool)?;
            let (missing, extra) = diff_reports(&row, &got);
            // Row 16 of the unsigned table is checked for inclusion only.
            let inclusion = !signed && row.n == 16;
            out.push(Check::new(
                S,
                format!(
                    "{} row n={}{}",
                    if signed { "signed" } else { "unsigned" },
                    row.n,
                    if inclusion {
                        " contains the listed factors"
                    } else {
                        ""
                    }
                ),
                missing.is_empty() && (inclusion || extra.is_empty()),
                format!(
                    "{} | missing {missing:?} extra {extra:?}",
                    got.factor_string()
                ),
            ));
        }
    }
    Ok(out)
}
