//! Closed-form threshold bounds and the first-moment path count.
//!
//! All logarithms are natural. The triple-logarithm formulas need
//! `ln ln ln n > 0`, i.e. `n > e^e`, so they reject `n < 16`.

use serde::{Deserialize, Serialize};

use crate::color::MAX_COLORS;
use crate::error::{Error, Result};

/// Smallest `n` accepted by the triple-logarithm formulas.
pub const MIN_ASYMPTOTIC_N: u64 = 16;

struct Logs {
    ln: f64,
    lnln: f64,
    lnlnln: f64,
}

fn logs(n: u64) -> Result<Logs> {
    if n < MIN_ASYMPTOTIC_N {
        return Err(Error::Domain(format!(
            "n = {n} is below {MIN_ASYMPTOTIC_N}; ln ln ln n is not positive"
        )));
    }
    let ln = (n as f64).ln();
    let lnln = ln.ln();
    Ok(Logs {
        ln,
        lnln,
        lnlnln: lnln.ln(),
    })
}

fn check_c(c: f64) -> Result<()> {
    if c.is_nan() || c <= 1.0 {
        Err(Error::Domain(format!("c must exceed 1, got {c}")))
    } else {
        Ok(())
    }
}

/// `ln n / (ln c - 1 + ln ln n)`, the leading term shared by both bounds.
fn leading_term(l: &Logs, c: f64) -> Result<f64> {
    let denom = c.ln() - 1.0 + l.lnln;
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "ln c - 1 + ln ln n = {denom} is not positive"
        )));
    }
    Ok(l.ln / denom)
}

/// Palette size at or below which the family is asymptotically almost surely
/// *not* rainbow connected:
/// `ln n / (ln c - 1 + ln ln n) - 1/2 + ln ln ln n / (3 ln ln n)`.
pub fn ub_nonconnect_s(n: u64, c: f64) -> Result<f64> {
    check_c(c)?;
    let l = logs(n)?;
    Ok(leading_term(&l, c)? - 0.5 + l.lnlnln / (3.0 * l.lnln))
}

/// Palette size at or above which the family is asymptotically almost surely
/// rainbow connected:
/// `ln n / (ln c - 1 + ln ln n) + 3/2 + 2 sqrt(ln ln ln n) / ln ln n`.
pub fn lb_connect_s(n: u64, c: f64) -> Result<f64> {
    check_c(c)?;
    let l = logs(n)?;
    Ok(leading_term(&l, c)? + 1.5 + 2.0 * l.lnlnln.sqrt() / l.lnln)
}

/// The three candidate threshold values `(s0, s0 + 1, s0 + 2)` where
/// `s0 = floor(ln n / (ln c - 1 + ln ln n) + 1/2 + ln ln ln n / (3 ln ln n))`.
pub fn s0_window(n: u64, c: f64) -> Result<[u64; 3]> {
    check_c(c)?;
    let l = logs(n)?;
    let s0 = (leading_term(&l, c)? + 0.5 + l.lnlnln / (3.0 * l.lnln)).floor() as u64;
    Ok([s0, s0 + 1, s0 + 2])
}

/// Diameter window for `G(n, c ln n / n)`:
/// lower `(ln(c/11) + ln n) / (ln c + ln ln n)`,
/// upper `(ln(33c²/400) + ln ln n + ln n) / (ln c + ln ln n) + 2`.
pub fn chung_lu_window(n: u64, c: f64) -> Result<(f64, f64)> {
    check_c(c)?;
    if n < 3 {
        return Err(Error::Domain(format!(
            "n = {n} is below 3; ln ln n is not positive"
        )));
    }
    let ln = (n as f64).ln();
    let lnln = ln.ln();
    let denom = c.ln() + lnln;
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "ln c + ln ln n = {denom} is not positive"
        )));
    }
    let lower = ((c / 11.0).ln() + ln) / denom;
    let upper = ((33.0 * c * c / 400.0).ln() + lnln + ln) / denom + 2.0;
    Ok((lower, upper))
}

/// Default palette scan range `(max(1, floor(ln n / (2 ln ln n))), ceil(3 ln n / ln ln n))`.
pub fn sweep_hint(n: u64) -> Result<(usize, usize)> {
    let l = logs(n)?;
    let lo = ((l.ln / (2.0 * l.lnln)).floor() as usize).max(1);
    let hi = (3.0 * l.ln / l.lnln).ceil() as usize;
    Ok((lo, hi))
}

/// Per-layer degree bound `2 c ln n / ln ln n`.
pub fn degree_bound(n: u64, c: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain(format!(
            "n = {n} is below 3; ln ln n is not positive"
        )));
    }
    let ln = (n as f64).ln();
    Ok(2.0 * c * ln / ln.ln())
}

/// `ceil(ln ln ln ln n)`, clamped below at zero; bounds how many colors the
/// sphere-doubling check may exclude (at most this plus one).
pub fn doubling_depth(n: u64) -> Result<usize> {
    let l = logs(n)?;
    Ok(l.lnlnln.ln().ceil().max(0.0) as usize)
}

/// Every bound for one `(n, c)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub n: u64,
    pub c: f64,
    pub ub_s: f64,
    pub lb_s: f64,
    pub s0: u64,
    pub s0_window: [u64; 3],
    pub scan_hint_min_s: usize,
    pub scan_hint_max_s: usize,
    pub diam_window: (f64, f64),
}

pub fn bounds_report(n: u64, c: f64) -> Result<BoundsReport> {
    let window = s0_window(n, c)?;
    let (lo, hi) = sweep_hint(n)?;
    Ok(BoundsReport {
        n,
        c,
        ub_s: ub_nonconnect_s(n, c)?,
        lb_s: lb_connect_s(n, c)?,
        s0: window[0],
        s0_window: window,
        scan_hint_min_s: lo,
        scan_hint_max_s: hi,
        diam_window: chung_lu_window(n, c)?,
    })
}

/// Expected number of rainbow `u`–`v` paths in the family model.
///
/// `per_length[t - 1]` counts length-`t` paths: `(n-2)(n-3)…(n-t)` ordered
/// interior vertices, `s(s-1)…(s-t+1)` injective colorings, each present
/// with probability `p^t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub n: u64,
    pub s: usize,
    pub p: f64,
    pub per_length: Vec<f64>,
    pub total: f64,
    /// `Σ_t n^(t-1) s! p^t`, the cruder count.
    pub paper_bound_total: f64,
}

pub fn expected_rainbow_paths(n: u64, s: usize, p: f64) -> Result<ExpectationReport> {
    if n < 2 {
        return Err(Error::Domain(format!("n must be at least 2, got {n}")));
    }
    if !(1..=MAX_COLORS).contains(&s) {
        return Err(Error::Domain(format!(
            "s must lie in 1..={MAX_COLORS}, got {s}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
    }
    let s_factorial: f64 = (1..=s).map(|k| k as f64).product();
    let nf = n as f64;
    let mut per_length = Vec::with_capacity(s);
    let mut paper_bound_total = 0.0;
    // term_t = (n-2)_{t-1} (s)_t p^t, built one factor at a time so that
    // (n - i) p stays moderate and nothing overflows.
    let mut term = s as f64 * p;
    let mut bound_term = s_factorial * p;
    for t in 1..=s {
        if t > 1 {
            let interior = n.saturating_sub(t as u64) as f64;
            term *= interior * p * (s + 1 - t) as f64;
            bound_term *= nf * p;
        }
        per_length.push(term);
        paper_bound_total += bound_term;
    }
    let total = per_length.iter().sum();
    Ok(ExpectationReport {
        n,
        s,
        p,
        per_length,
        total,
        paper_bound_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn bounds_at_one_million() {
        assert!(close(
            ub_nonconnect_s(1_000_000, 2.0).unwrap(),
            5.580_237,
            1e-5
        ));
        assert!(close(
            lb_connect_s(1_000_000, 2.0).unwrap(),
            8.206_061,
            1e-5
        ));
        assert_eq!(s0_window(1_000_000, 2.0).unwrap(), [6, 7, 8]);
        assert_eq!(s0_window(1_000_000_000, 2.0).unwrap()[0], 8);
        let width =
            lb_connect_s(1_000_000, 2.0).unwrap() - ub_nonconnect_s(1_000_000, 2.0).unwrap();
        assert!(close(width, 2.625_825, 1e-5));
    }

    #[test]
    fn domain_cutoff() {
        assert!(matches!(ub_nonconnect_s(15, 2.0), Err(Error::Domain(_))));
        assert!(ub_nonconnect_s(16, 2.0).is_ok());
        assert!(lb_connect_s(1000, 1.0).is_err());
        assert!(sweep_hint(15).is_err());
        // ln ln 16 > 1, so the denominator stays positive for any c > 1.
        assert!(ub_nonconnect_s(16, 1.000_001).is_ok());
    }

    #[test]
    fn window_difference_is_algebraic() {
        for &n in &[16u64, 100, 10_000, 1_000_000, 1_000_000_000] {
            for &c in &[1.5, 2.0, std::f64::consts::E, 11.0] {
                let (Ok(ub), Ok(lb)) = (ub_nonconnect_s(n, c), lb_connect_s(n, c)) else {
                    continue;
                };
                let ll = (n as f64).ln().ln();
                let expected = 2.0 + 2.0 * ll.ln().sqrt() / ll - ll.ln() / (3.0 * ll);
                assert!(close(lb - ub, expected, 1e-12));
                assert_eq!(s0_window(n, c).unwrap()[0], (ub + 1.0).floor() as u64);
            }
        }
    }

    #[test]
    fn chung_lu_difference() {
        for &c in &[1.5, 2.0, 11.0] {
            let n = 1_000_000u64;
            let (lo, hi) = chung_lu_window(n, c).unwrap();
            let ll = (n as f64).ln().ln();
            let expected = ((363.0 * c / 400.0).ln() + ll) / (c.ln() + ll) + 2.0;
            assert!(close(hi - lo, expected, 1e-12));
            assert!(lo <= hi);
        }
        assert!(chung_lu_window(2, 2.0).is_err());
    }

    #[test]
    fn hints() {
        assert_eq!(sweep_hint(1_000_000).unwrap(), (2, 16));
        assert_eq!(sweep_hint(1_000_000_000).unwrap(), (3, 21));
        assert_eq!(sweep_hint(16).unwrap().0, 1);
    }

    #[test]
    fn degree_bound_at_twenty_thousand() {
        assert!(close(degree_bound(20_000, 2.0).unwrap(), 17.276_887, 1e-5));
    }

    #[test]
    fn doubling_depth_clamps() {
        assert_eq!(doubling_depth(20_000).unwrap(), 0);
        assert_eq!(doubling_depth(1_000_000_000).unwrap(), 1);
        assert!(doubling_depth(10).is_err());
    }

    #[test]
    fn small_expectation() {
        let r = expected_rainbow_paths(4, 2, 0.5).unwrap();
        assert_eq!(r.per_length, vec![1.0, 1.0]);
        assert_eq!(r.total, 2.0);
        let r = expected_rainbow_paths(10, 1, 0.3).unwrap();
        assert_eq!(r.total, 0.3);
        assert_eq!(r.paper_bound_total, 0.3);
        // n = 2 has no interior vertices to offer.
        let r = expected_rainbow_paths(2, 3, 0.5).unwrap();
        assert_eq!(r.per_length, vec![1.5, 0.0, 0.0]);
        assert!(expected_rainbow_paths(1, 3, 0.5).is_err());
        assert!(expected_rainbow_paths(5, 65, 0.5).is_err());
        assert!(expected_rainbow_paths(5, 3, 1.5).is_err());
    }

    #[test]
    fn monotone_in_c() {
        for &n in &[100u64, 100_000, 1_000_000_000] {
            let mut prev: Option<(f64, f64)> = None;
            for k in 0..40 {
                let c = 1.6 + 0.25 * k as f64;
                let cur = (ub_nonconnect_s(n, c).unwrap(), lb_connect_s(n, c).unwrap());
                if let Some(p) = prev {
                    assert!(cur.0 < p.0 && cur.1 < p.1);
                }
                prev = Some(cur);
            }
        }
    }
}
