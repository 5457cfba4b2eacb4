//! Shared numerics for the photon-number series that appear throughout the
//! crate: log-factorials, the truncation policy, and sums over one residue
//! class of photon numbers modulo the phase count.

use std::sync::OnceLock;

/// Termination rule for all truncated photon-number series.
///
/// A series is cut once the next term drops below `rel_tol` relative to the
/// running sum, with `abs_floor` as an absolute guard for sums that are
/// themselves zero. `tail_tol` bounds the squared-amplitude mass that may be
/// discarded when a Fock vector is truncated at finite `n_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub rel_tol: f64,
    pub abs_floor: f64,
    pub tail_tol: f64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-18,
            abs_floor: 1e-300,
            tail_tol: 1e-12,
        }
    }
}

impl TruncationPolicy {
    /// True when a series with running sum `sum` may stop before adding a
    /// term of magnitude `term`.
    #[inline]
    pub fn converged(&self, term: f64, sum: f64) -> bool {
        term.abs() < self.rel_tol * sum.abs() + self.abs_floor
    }
}

/// Default Fock-space truncation bound for mean photon number `mu` and
/// `n_phases` discrete phases. Tails decay super-exponentially in the
/// regimes of interest (mu of order one), so this is generous.
pub fn default_n_max(mu: f64, n_phases: u32) -> usize {
    let est = mu + 10.0 * mu.max(0.0).sqrt() + f64::from(n_phases);
    (est.ceil() as usize).max(60)
}

const LN_FACT_TABLE_LEN: usize = 256;

fn ln_factorial_table() -> &'static [f64; LN_FACT_TABLE_LEN] {
    static TABLE: OnceLock<[f64; LN_FACT_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0.0_f64; LN_FACT_TABLE_LEN];
        let mut acc = 0.0_f64;
        for (n, slot) in t.iter_mut().enumerate() {
            if n > 0 {
                acc += (n as f64).ln();
            }
            *slot = acc;
        }
        t
    })
}

/// ln(n!) via a cached cumulative table, falling back to the Stirling
/// series beyond it. Accurate to ~1e-14 relative over the full range.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < LN_FACT_TABLE_LEN {
        ln_factorial_table()[n as usize]
    } else {
        // Stirling series for ln Gamma(n+1).
        let x = n as f64 + 1.0;
        let inv = 1.0 / x;
        let inv2 = inv * inv;
        (x - 0.5) * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI).ln()
            + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
    }
}

/// x^n / n! evaluated in log space; exact 1.0 for n = 0.
pub fn pow_over_factorial(x: f64, n: u64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    if x == 0.0 {
        return 0.0;
    }
    (n as f64 * x.ln() - ln_factorial(n)).exp()
}

/// Sum of x^(lN+j)/(lN+j)! over l >= 0, truncated by `policy`.
///
/// Requires x >= 0. For x = 0 the sum is 1 when j = 0 and 0 otherwise.
pub fn residue_class_sum(x: f64, j: u32, n_phases: u32, policy: &TruncationPolicy) -> f64 {
    residue_class_weighted_sum(x, j, n_phases, policy, |_| 1.0).1
}

/// Shared kernel for residue-class series: returns
/// `(sum of weight(n) * x^n/n!, sum of x^n/n!)` over photon numbers
/// n = j, j+N, j+2N, ... Termination follows the unweighted series, so a
/// weighted numerator and its denominator are always truncated together.
pub fn residue_class_weighted_sum(
    x: f64,
    j: u32,
    n_phases: u32,
    policy: &TruncationPolicy,
    weight: impl Fn(u64) -> f64,
) -> (f64, f64) {
    debug_assert!(x >= 0.0);
    debug_assert!(n_phases >= 1);
    if x == 0.0 {
        return if j == 0 { (weight(0), 1.0) } else { (0.0, 0.0) };
    }
    let mut n = u64::from(j);
    let mut term = pow_over_factorial(x, n);
    let mut weighted = 0.0;
    let mut plain = 0.0;
    // Generous iteration cap; the policy terminates long before this in
    // every regime with x of order one.
    for _ in 0..100_000 {
        weighted += weight(n) * term;
        plain += term;
        for m in 1..=u64::from(n_phases) {
            term *= x / (n + m) as f64;
        }
        n += u64::from(n_phases);
        if policy.converged(term, plain) {
            break;
        }
    }
    (weighted, plain)
}

/// cos(n pi / 4) + sin(n pi / 4), exact from the period-8 pattern.
pub fn cos_plus_sin_quarter(n: u64) -> f64 {
    const SQRT2: f64 = std::f64::consts::SQRT_2;
    const PATTERN: [f64; 8] = [1.0, SQRT2, 1.0, 0.0, -1.0, -SQRT2, -1.0, 0.0];
    PATTERN[(n % 8) as usize]
}

/// cos(n pi / 4), exact from the period-8 pattern.
pub fn cos_quarter(n: u64) -> f64 {
    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
    const PATTERN: [f64; 8] = [1.0, H, 0.0, -H, -1.0, -H, 0.0, H];
    PATTERN[(n % 8) as usize]
}

/// The per-photon-number coefficient of the basis-dependence series:
/// 2^(-n/2) (cos(n pi/4) + sin(n pi/4)).
#[inline]
pub fn basis_overlap_coefficient(n: u64) -> f64 {
    (-(n as f64) / 2.0).exp2() * cos_plus_sin_quarter(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln_factorial_matches_direct_products() {
        let mut fact = 1.0_f64;
        for n in 1..=20u64 {
            fact *= n as f64;
            assert_relative_eq!(ln_factorial(n), fact.ln(), max_relative = 1e-14);
        }
        assert_eq!(ln_factorial(0), 0.0);
    }

    #[test]
    fn ln_factorial_continuous_across_table_boundary() {
        // Stirling fallback must agree with the table recurrence.
        let at_edge = ln_factorial(LN_FACT_TABLE_LEN as u64 - 1);
        let next = ln_factorial(LN_FACT_TABLE_LEN as u64);
        let expected = at_edge + (LN_FACT_TABLE_LEN as f64).ln();
        assert_relative_eq!(next, expected, max_relative = 1e-13);
    }

    #[test]
    fn residue_sums_rebuild_exponential() {
        // Sum over all residue classes of x^n/n! is e^x.
        let policy = TruncationPolicy::default();
        for &x in &[0.1, 0.5, 2.0, 5.0] {
            for n_phases in [1u32, 2, 3, 7, 16] {
                let total: f64 = (0..n_phases)
                    .map(|j| residue_class_sum(x, j, n_phases, &policy))
                    .sum();
                assert_relative_eq!(total, x.exp(), max_relative = 1e-14);
            }
        }
    }

    #[test]
    fn residue_sum_matches_cosh_sinh_for_two_phases() {
        let policy = TruncationPolicy::default();
        let x = 0.73_f64;
        assert_relative_eq!(
            residue_class_sum(x, 0, 2, &policy),
            x.cosh(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            residue_class_sum(x, 1, 2, &policy),
            x.sinh(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn quarter_turn_patterns_match_trig() {
        for n in 0..32u64 {
            let angle = n as f64 * std::f64::consts::FRAC_PI_4;
            assert_relative_eq!(
                cos_plus_sin_quarter(n),
                angle.cos() + angle.sin(),
                epsilon = 1e-12
            );
            assert_relative_eq!(cos_quarter(n), angle.cos(), epsilon = 1e-12);
        }
    }

    #[test]
    fn default_n_max_floors_at_sixty() {
        assert_eq!(default_n_max(0.0, 1), 60);
        assert!(default_n_max(1.0, 64) >= 75);
    }
}
