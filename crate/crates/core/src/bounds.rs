//! Exact-rational evaluation of the closed-form limit values and thresholds
//! for the extremal function `f^(r)(n; k(r-t)+t, k)`, plus exhaustive
//! verification of the binomial inequalities the structural arguments rest
//! on. No floating point anywhere in this module.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Reduced fraction with arbitrary-precision terms.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact binomial coefficient `C(n, k)`.
pub fn binom(n: u64, k: u64) -> Result<BigUint> {
    if k > n {
        return Err(Error::BadArgs(format!("binom({n}, {k}) needs k <= n")));
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

fn big(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

/// Provenance status of a recorded limit value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Status {
    ProvenExact,
    UpperBound,
    Conjectured,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::ProvenExact => write!(f, "proven-exact"),
            Status::UpperBound => write!(f, "upper-bound"),
            Status::Conjectured => write!(f, "conjectured"),
        }
    }
}

/// A pinned value of `pi(r, t, k)` (or an upper bound on the limsup).
#[derive(Clone, Debug, PartialEq)]
pub struct KnownValue {
    pub r: u64,
    pub t: u64,
    pub k: u64,
    pub value: Rational,
    pub status: Status,
    pub source: &'static str,
}

fn proven(r: u64, t: u64, k: u64, value: Rational, source: &'static str) -> KnownValue {
    KnownValue {
        r,
        t,
        k,
        value,
        status: Status::ProvenExact,
        source,
    }
}

fn inv_tfact_binom(r: u64, t: u64) -> Rational {
    // 1 / (t! * C(r, t))
    let den = factorial(t) * binom(r, t).expect("r > t");
    BigRational::new(BigInt::one(), big(&den))
}

fn two_over_tfact_2binom_minus_1(r: u64, t: u64) -> Rational {
    // 2 / (t! * (2 C(r,t) - 1))
    let den = big(&factorial(t)) * (big(&binom(r, t).expect("r > t")) * 2 - 1);
    BigRational::new(BigInt::from(2), den)
}

/// The exact limit value of `n^-t f^(r)(n; k(r-t)+t, k)` where it is pinned:
/// the three sporadic (3,2,k) values, the t = 1 family, the k = 2, 3, 4
/// families, and the even-k family above the `r_threshold_even` bound.
/// Sporadic values take precedence over family formulas (they agree where
/// both apply). Conjectured entries are tagged and never asserted anywhere.
pub fn pi_known(r: u64, t: u64, k: u64) -> Option<KnownValue> {
    if t < 1 || r <= t || k < 2 {
        return None;
    }
    if (r, t) == (3, 2) {
        match k {
            2 => return Some(proven(r, t, k, rational(1, 6), "Brown-Erdos-Sos")),
            3 => return Some(proven(r, t, k, rational(1, 5), "Glock")),
            4 => return Some(proven(r, t, k, rational(7, 36), "GJKKLP")),
            5 | 7 => {
                return Some(KnownValue {
                    r,
                    t,
                    k,
                    value: rational(1, 5),
                    status: Status::Conjectured,
                    source: "GJKKLP (remark)",
                })
            }
            _ => return None,
        }
    }
    if t == 1 {
        // vertex-disjoint loose trees with k-1 edges are extremal
        let num = BigInt::from(k - 1);
        let den = BigInt::from((k - 1) * (r - 1) + 1);
        return Some(proven(r, t, k, BigRational::new(num, den), "GJKKLP"));
    }
    match k {
        2 => Some(proven(r, t, k, inv_tfact_binom(r, t), "Rodl")),
        3 => Some(proven(
            r,
            t,
            k,
            two_over_tfact_2binom_minus_1(r, t),
            "GJKKLP",
        )),
        4 if r >= 4 => Some(proven(r, t, k, inv_tfact_binom(r, t), "GJKKLP")),
        _ if k % 2 == 0 && r >= r_threshold_even(k, t).ok()? as u64 => Some(proven(
            r,
            t,
            k,
            inv_tfact_binom(r, t),
            "even-k threshold",
        )),
        _ => None,
    }
}

/// Smallest integer `r` with `r >= t + (k^3 t!)^(1/t)`, i.e. `t + x` for the
/// minimal `x` with `x^t >= k^3 t!`. Exact integer root tests only.
pub fn r_threshold_even(k: u64, t: u64) -> Result<u64> {
    if k < 2 || k % 2 != 0 || t < 2 {
        return Err(Error::BadArgs(format!(
            "threshold needs even k >= 2 and t >= 2, got k={k}, t={t}"
        )));
    }
    let target = BigUint::from(k).pow(3) * factorial(t);
    let mut x: u64 = 1;
    while BigUint::from(x).pow(t as u32) < target {
        x += 1;
    }
    Ok(t + x)
}

/// Does `(r, t, k)` satisfy the even-k threshold hypothesis
/// `(r - t)^t >= k^3 t!` (with `t, k >= 2`)?
pub fn meets_even_threshold(r: u64, t: u64, k: u64) -> bool {
    t >= 2 && k >= 2 && r > t && BigUint::from(r - t).pow(t as u32) >= BigUint::from(k).pow(3) * factorial(t)
}

/// Upper bound `2 / (t! (2 C(r,t) - 1))` on the limsup for odd k; only
/// valid for r large with respect to k and t, which the tag records.
pub fn odd_upper_bound(r: u64, t: u64, k: u64) -> Result<KnownValue> {
    if k % 2 == 0 || k < 2 {
        return Err(Error::BadArgs(format!("odd_upper_bound needs odd k, got {k}")));
    }
    if t < 2 || r <= t {
        return Err(Error::BadArgs(format!(
            "odd_upper_bound needs r > t >= 2, got r={r}, t={t}"
        )));
    }
    Ok(KnownValue {
        r,
        t,
        k,
        value: two_over_tfact_2binom_minus_1(r, t),
        status: Status::UpperBound,
        source: "odd-k limsup (large r)",
    })
}

/// Two exact sides of a verified inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCertificate {
    pub lhs: BigInt,
    pub rhs: BigInt,
    pub ok: bool,
}

impl std::fmt::Display for ClaimCertificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} {}",
            self.lhs,
            if self.ok { ">=" } else { "<" },
            self.rhs
        )
    }
}

fn certificate(lhs: BigInt, rhs: BigInt) -> ClaimCertificate {
    let ok = lhs >= rhs;
    ClaimCertificate { lhs, rhs, ok }
}

/// `C(2r-t, t) - [2 C(r,t) - 1] - (k-3) >= (k-2)^3` under
/// `t, k >= 2` and `(r-t)^t >= k^3 t!`.
pub fn check_claim_calc(r: u64, t: u64, k: u64) -> Result<ClaimCertificate> {
    if t < 2 || k < 2 {
        return Err(Error::HypothesisViolated(format!(
            "need t, k >= 2, got t={t}, k={k}"
        )));
    }
    if !meets_even_threshold(r, t, k) {
        return Err(Error::HypothesisViolated(format!(
            "(r-t)^t >= k^3 t! fails for r={r}, t={t}, k={k}"
        )));
    }
    let lhs = big(&binom(2 * r - t, t)?) - (big(&binom(r, t)?) * 2 - 1) - BigInt::from(k as i64 - 3);
    let rhs = BigInt::from((k - 2).pow(3));
    Ok(certificate(lhs, rhs))
}

fn pair_hypothesis(r: u64, t: u64) -> Result<()> {
    let ok = (t >= 3 && r > t) || (t == 2 && r >= 4);
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(format!(
            "need 3 <= t < r, or t = 2 and r >= 4; got r={r}, t={t}"
        )))
    }
}

/// `C(3r-2t, t) - 4 >= 3 C(r,t)` under `3 <= t < r` or `t = 2, r >= 4`.
pub fn check_claim_calc2(r: u64, t: u64) -> Result<ClaimCertificate> {
    pair_hypothesis(r, t)?;
    let lhs = big(&binom(3 * r - 2 * t, t)?) - 4;
    let rhs = big(&binom(r, t)?) * 3;
    Ok(certificate(lhs, rhs))
}

/// `C(2r-t, t) >= 2 C(r,t) + 2` under the same hypotheses.
pub fn check_claim_calc3(r: u64, t: u64) -> Result<ClaimCertificate> {
    pair_hypothesis(r, t)?;
    let lhs = big(&binom(2 * r - t, t)?);
    let rhs = big(&binom(r, t)?) * 2 + 2;
    Ok(certificate(lhs, rhs))
}

/// Every `pi_known` entry on the grid `r <= r_max, t <= t_max, k <= k_max`.
pub fn known_table(r_max: u64, t_max: u64, k_max: u64) -> Vec<KnownValue> {
    let mut out = Vec::new();
    for r in 3..=r_max {
        for t in 1..r.min(t_max + 1) {
            for k in 2..=k_max {
                if let Some(v) = pi_known(r, t, k) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Outcome of an inequality sweep: everything checked, any violations
/// described. A single violation is a failing result.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub checked: u64,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn merge(&mut self, other: SweepReport) {
        self.checked += other.checked;
        self.violations.extend(other.violations);
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sweep_r_range(r_lo: u64, r_hi: u64, t_max: u64, k_max: u64) -> SweepReport {
    let mut rep = SweepReport::default();
    for r in r_lo..r_hi {
        for t in 2..=t_max.min(r.saturating_sub(1)) {
            for k in 2..=k_max {
                if meets_even_threshold(r, t, k) {
                    let c = check_claim_calc(r, t, k).expect("hypothesis checked");
                    rep.checked += 1;
                    if !c.ok {
                        rep.violations
                            .push(format!("calc({r},{t},{k}): {c}"));
                    }
                }
            }
            if pair_hypothesis(r, t).is_ok() {
                let c2 = check_claim_calc2(r, t).expect("hypothesis checked");
                let c3 = check_claim_calc3(r, t).expect("hypothesis checked");
                rep.checked += 2;
                if !c2.ok {
                    rep.violations.push(format!("calc2({r},{t}): {c2}"));
                }
                if !c3.ok {
                    rep.violations.push(format!("calc3({r},{t}): {c3}"));
                }
            }
        }
    }
    rep
}

/// Exhaustive verification of the three binomial inequalities over their
/// full hypothesis grids up to the given caps. `workers` splits the r-range
/// across threads; results are merged in order.
pub fn sweep_claim_grids(r_max: u64, t_max: u64, k_max: u64, workers: usize) -> SweepReport {
    let lo = 3u64;
    let hi = r_max + 1;
    if workers <= 1 || hi - lo < 2 {
        return sweep_r_range(lo, hi, t_max, k_max);
    }
    let workers = workers.min((hi - lo) as usize);
    let chunk = (hi - lo).div_ceil(workers as u64);
    let mut report = SweepReport::default();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            let a = lo + w * chunk;
            let b = (a + chunk).min(hi);
            handles.push(scope.spawn(move || sweep_r_range(a, b, t_max, k_max)));
        }
        for h in handles {
            report.merge(h.join().expect("sweep worker panicked"));
        }
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_examples() {
        assert_eq!(binom(6, 2).unwrap(), BigUint::from(15u32));
        assert_eq!(binom(10, 2).unwrap(), BigUint::from(45u32));
        assert_eq!(binom(26, 2).unwrap(), BigUint::from(325u32));
        assert!(binom(3, 5).is_err());
    }

    #[test]
    fn sporadic_values() {
        let v = pi_known(3, 2, 2).unwrap();
        assert_eq!(v.value, rational(1, 6));
        assert_eq!(v.status, Status::ProvenExact);
        assert_eq!(pi_known(3, 2, 3).unwrap().value, rational(1, 5));
        let v = pi_known(3, 2, 4).unwrap();
        assert_eq!(v.value, rational(7, 36));
        assert_eq!(format!("{}", v.value), "7/36");
        for k in [5, 7] {
            let c = pi_known(3, 2, k).unwrap();
            assert_eq!(c.status, Status::Conjectured);
            assert_eq!(c.value, rational(1, 5));
        }
        assert!(pi_known(3, 2, 6).is_none());
    }

    #[test]
    fn family_values() {
        // t = 1: (k-1) / ((k-1)(r-1) + 1)
        assert_eq!(pi_known(5, 1, 3).unwrap().value, rational(2, 9));
        // k = 2: 1 / (t! C(r,t))
        assert_eq!(pi_known(4, 2, 2).unwrap().value, rational(1, 12));
        // k = 3: 2 / (t! (2 C(r,t) - 1)) equals 1/(r^2 - r - 1) at t = 2
        assert_eq!(pi_known(4, 2, 3).unwrap().value, rational(1, 11));
        assert_eq!(pi_known(5, 2, 3).unwrap().value, rational(1, 19));
        // k = 4, r >= 4 matches the k = 2 family
        assert_eq!(
            pi_known(4, 2, 4).unwrap().value,
            pi_known(4, 2, 2).unwrap().value
        );
        // even k above threshold
        let v = pi_known(14, 2, 4).unwrap();
        assert_eq!(v.value, rational(1, 182));
        assert!(pi_known(13, 2, 6).is_none()); // below threshold, not pinned
        let thr = r_threshold_even(6, 2).unwrap();
        let v = pi_known(thr, 2, 6).unwrap();
        assert_eq!(v.source, "even-k threshold");
    }

    #[test]
    fn consistency_where_formulas_overlap() {
        // wherever the even-k threshold formula applies alongside the k = 2
        // or k = 4 families, the rationals agree
        for r in 6..20u64 {
            for t in 2..4u64 {
                if t >= r {
                    continue;
                }
                for k in [2u64, 4] {
                    if meets_even_threshold(r, t, k) {
                        let v = pi_known(r, t, k).unwrap();
                        assert_eq!(v.value, inv_tfact_binom(r, t));
                    }
                }
            }
        }
    }

    #[test]
    fn packing_lower_bound_below_every_proven_value() {
        // 1/(t! C(r,t)) <= every stored proven-exact value at the same params
        for v in known_table(20, 4, 8) {
            if v.status == Status::ProvenExact {
                assert!(
                    inv_tfact_binom(v.r, v.t) <= v.value,
                    "({}, {}, {})",
                    v.r,
                    v.t,
                    v.k
                );
            }
        }
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(r_threshold_even(2, 2).unwrap(), 6);
        assert_eq!(r_threshold_even(4, 2).unwrap(), 14);
        assert_eq!(r_threshold_even(2, 3).unwrap(), 7);
        assert!(r_threshold_even(3, 2).is_err());
        assert!(r_threshold_even(2, 1).is_err());
    }

    #[test]
    fn odd_bound_examples() {
        let v = odd_upper_bound(4, 2, 5).unwrap();
        assert_eq!(v.value, rational(1, 11));
        assert_eq!(v.status, Status::UpperBound);
        let v = odd_upper_bound(3, 2, 3).unwrap();
        assert_eq!(v.value, pi_known(3, 2, 3).unwrap().value);
        assert!(odd_upper_bound(4, 2, 4).is_err());
    }

    #[test]
    fn claim_calc_examples() {
        let c = check_claim_calc(6, 2, 2).unwrap();
        assert_eq!(c.lhs, BigInt::from(17));
        assert_eq!(c.rhs, BigInt::from(0));
        assert!(c.ok);
        let c = check_claim_calc(14, 2, 4).unwrap();
        assert_eq!(c.lhs, BigInt::from(143));
        assert_eq!(c.rhs, BigInt::from(8));
        assert!(c.ok);
        assert!(matches!(
            check_claim_calc(5, 2, 2),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn claim_calc2_calc3_examples() {
        let c = check_claim_calc2(4, 2).unwrap();
        assert_eq!((c.lhs, c.rhs), (BigInt::from(24), BigInt::from(18)));
        let c = check_claim_calc2(5, 3).unwrap();
        assert_eq!((c.lhs, c.rhs), (BigInt::from(80), BigInt::from(30)));
        assert!(check_claim_calc2(3, 2).is_err());

        let c = check_claim_calc3(4, 2).unwrap();
        assert_eq!((c.lhs, c.rhs), (BigInt::from(15), BigInt::from(14)));
        let c = check_claim_calc3(5, 3).unwrap();
        assert_eq!((c.lhs, c.rhs), (BigInt::from(35), BigInt::from(22)));
        assert!(check_claim_calc3(3, 2).is_err());
    }

    #[test]
    fn sweep_small_grid_clean() {
        let rep = sweep_claim_grids(24, 4, 8, 1);
        assert!(rep.checked > 100);
        assert!(rep.ok(), "violations: {:?}", rep.violations);
        // worker split must agree with the serial sweep
        let par = sweep_claim_grids(24, 4, 8, 4);
        assert_eq!(par.checked, rep.checked);
        assert!(par.ok());
    }

    #[test]
    fn table_has_expected_row() {
        let rows = known_table(6, 3, 8);
        assert!(rows
            .iter()
            .any(|v| (v.r, v.t, v.k) == (3, 2, 4) && format!("{}", v.value) == "7/36"));
    }
}
