//! Translation and power identities that hold in RIF, C and ARIF loops,
//! checked exhaustively or on seeded random samples.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::words::association_profile;
use super::{classify_unchecked, Property, PropertyReport, VarietyError};
use crate::loops::CayleyLoop;

/// Sampling parameters for the suites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random tuples per sampled suite.
    pub samples: usize,
    /// Exponent range `[-r, r]` for the translation shifting identities.
    pub shift_range: i64,
    /// Exponent range for `x^i y^m . y^n x^j = x^i y^(m+n) x^j`.
    pub power_range: i64,
    /// Exponent range for conjugate powers.
    pub conjugate_range: i64,
    /// Word searches run only on loops up to this order.
    pub word_order_limit: usize,
    /// Maximum word length for word searches.
    pub word_length: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0x5eed_1001,
            samples: 500,
            shift_range: 6,
            power_range: 4,
            conjugate_range: 6,
            word_order_limit: 24,
            word_length: 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteFailure {
    pub case: String,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SuiteOutcome {
    pub passed: u64,
    pub failed: u64,
    pub first_failure: Option<SuiteFailure>,
}

impl SuiteOutcome {
    fn record(&mut self, ok: bool, case: &str, values: impl FnOnce() -> Vec<i64>) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(SuiteFailure {
                    case: case.to_string(),
                    values: values(),
                });
            }
        }
    }
}

/// Powers `x^e` for `|e| <= range`, indexed `[x][e + range]`.
struct Powers {
    range: i64,
    table: Vec<Vec<usize>>,
}

impl Powers {
    fn new(l: &CayleyLoop, range: i64) -> Result<Powers, VarietyError> {
        let table = (0..l.order())
            .map(|x| (-range..=range).map(|e| l.power(x, e)).collect())
            .collect::<Result<Vec<Vec<usize>>, _>>()?;
        Ok(Powers { range, table })
    }

    fn get(&self, x: usize, e: i64) -> usize {
        self.table[x][(e + self.range) as usize]
    }
}

fn as_i64(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

/// `P(x (y x)) = P(x) P(y) P(x)` with `P(a): z -> (a z) a`.
fn p_xyx(l: &CayleyLoop) -> SuiteOutcome {
    let n = l.order();
    let p = |a: usize, z: usize| l.mul(l.mul(a, z), a);
    let mut out = SuiteOutcome::default();
    for x in 0..n {
        for y in 0..n {
            let xyx = l.mul(x, l.mul(y, x));
            let ok = (0..n).all(|z| p(xyx, z) == p(x, p(y, p(x, z))));
            out.record(ok, "P(x(yx)) = P(x)P(y)P(x)", || as_i64(&[x, y]));
        }
    }
    out
}

/// `R(xy)^2 = R(x) R(y(xy)) = R((xy)x) R(y)`.
fn c_loop_right_squares(l: &CayleyLoop) -> SuiteOutcome {
    let n = l.order();
    let mut out = SuiteOutcome::default();
    for x in 0..n {
        for y in 0..n {
            let xy = l.mul(x, y);
            let a = l.mul(y, xy);
            let b = l.mul(xy, x);
            let ok = (0..n).all(|z| {
                let sq = l.mul(l.mul(z, xy), xy);
                sq == l.mul(l.mul(z, x), a) && sq == l.mul(l.mul(z, b), y)
            });
            out.record(ok, "R(xy)^2 = R(x)R(y(xy)) = R((xy)x)R(y)", || {
                as_i64(&[x, y])
            });
        }
    }
    out
}

/// `R(x) R(y^2 x^-1) R(x) = R(x y^2)` and `L(x) L(x^-1 y^2) L(x) = L(y^2 x)`.
fn premoufang(l: &CayleyLoop) -> Result<SuiteOutcome, VarietyError> {
    let n = l.order();
    let mut out = SuiteOutcome::default();
    for x in 0..n {
        let xi = l.inverse(x)?;
        for y in 0..n {
            let y2 = l.mul(y, y);
            let r_mid = l.mul(y2, xi);
            let r_rhs = l.mul(x, y2);
            let ok = (0..n).all(|z| l.mul(l.mul(l.mul(z, x), r_mid), x) == l.mul(z, r_rhs));
            out.record(ok, "R(x)R(y^2 x^-1)R(x) = R(xy^2)", || as_i64(&[x, y]));
            let l_mid = l.mul(xi, y2);
            let l_rhs = l.mul(y2, x);
            let ok = (0..n).all(|z| l.mul(x, l.mul(l_mid, l.mul(x, z))) == l.mul(l_rhs, z));
            out.record(ok, "L(x)L(x^-1 y^2)L(x) = L(y^2 x)", || as_i64(&[x, y]));
        }
    }
    Ok(out)
}

/// The four shifting identities for products of translations by
/// `y x^m`, `x^n y^-1` and friends, on random `(x, y, m, n, k)` with `k` or
/// `m + n` even.
fn translation_shifts(
    l: &CayleyLoop,
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SuiteOutcome, VarietyError> {
    let n_ord = l.order();
    let r = cfg.shift_range;
    let pw = Powers::new(l, 2 * r)?;
    let mut out = SuiteOutcome::default();
    let mut drawn = 0;
    while drawn < cfg.samples {
        let (m, n, k) = (
            rng.random_range(-r..=r),
            rng.random_range(-r..=r),
            rng.random_range(-r..=r),
        );
        let x = rng.random_range(0..n_ord);
        let y = rng.random_range(0..n_ord);
        if k % 2 != 0 && (m + n) % 2 != 0 {
            continue;
        }
        drawn += 1;
        let yi = l.inverse(y)?;
        let xp = |e: i64| pw.get(x, e);
        let values = || vec![x as i64, y as i64, m, n, k];
        let right = |a: usize, b: usize, c: usize, d: usize| {
            (0..n_ord).all(|z| l.mul(l.mul(z, a), b) == l.mul(l.mul(z, c), d))
        };
        let left = |a: usize, b: usize, c: usize, d: usize| {
            (0..n_ord).all(|z| l.mul(b, l.mul(a, z)) == l.mul(d, l.mul(c, z)))
        };
        out.record(
            right(
                l.mul(y, xp(m)),
                l.mul(xp(n), yi),
                l.mul(y, xp(m + k)),
                l.mul(xp(n - k), yi),
            ),
            "R(yx^m)R(x^n y^-1) = R(yx^(m+k))R(x^(n-k) y^-1)",
            values,
        );
        out.record(
            right(
                l.mul(xp(m), y),
                l.mul(yi, xp(n)),
                l.mul(xp(m + k), y),
                l.mul(yi, xp(n - k)),
            ),
            "R(x^m y)R(y^-1 x^n) = R(x^(m+k) y)R(y^-1 x^(n-k))",
            values,
        );
        out.record(
            left(
                l.mul(xp(m), y),
                l.mul(yi, xp(n)),
                l.mul(xp(m + k), y),
                l.mul(yi, xp(n - k)),
            ),
            "L(x^m y)L(y^-1 x^n) = L(x^(m+k) y)L(y^-1 x^(n-k))",
            values,
        );
        out.record(
            left(
                l.mul(y, xp(m)),
                l.mul(xp(n), yi),
                l.mul(y, xp(m + k)),
                l.mul(xp(n - k), yi),
            ),
            "L(yx^m)L(x^n y^-1) = L(yx^(m+k))L(x^(n-k) y^-1)",
            values,
        );
    }
    Ok(out)
}

/// `(x^i y^m)(y^n x^j)` equals both associations of `x^i y^(m+n) x^j`.
fn three_associative_powers(
    l: &CayleyLoop,
    cfg: &SuiteConfig,
    rng: &mut ChaCha8Rng,
) -> Result<SuiteOutcome, VarietyError> {
    let r = cfg.power_range;
    let pw = Powers::new(l, 2 * r)?;
    let mut out = SuiteOutcome::default();
    for _ in 0..cfg.samples {
        let x = rng.random_range(0..l.order());
        let y = rng.random_range(0..l.order());
        let [i, j, m, n] = [(); 4].map(|_| rng.random_range(-r..=r));
        let lhs = l.mul(
            l.mul(pw.get(x, i), pw.get(y, m)),
            l.mul(pw.get(y, n), pw.get(x, j)),
        );
        let mid = pw.get(y, m + n);
        let left_assoc = l.mul(l.mul(pw.get(x, i), mid), pw.get(x, j));
        let right_assoc = l.mul(pw.get(x, i), l.mul(mid, pw.get(x, j)));
        out.record(
            lhs == left_assoc && lhs == right_assoc,
            "x^i y^m . y^n x^j = x^i y^(m+n) x^j",
            || vec![x as i64, y as i64, i, j, m, n],
        );
    }
    Ok(out)
}

/// `(x^-1 y x)^n = x^-1 y^n x`, with both readings of `x^-1 y x` compared.
fn conjugate_powers(l: &CayleyLoop, cfg: &SuiteConfig) -> Result<SuiteOutcome, VarietyError> {
    let r = cfg.conjugate_range;
    let pw = Powers::new(l, r)?;
    let mut out = SuiteOutcome::default();
    for x in 0..l.order() {
        let xi = l.inverse(x)?;
        for y in 0..l.order() {
            let c = l.mul(xi, l.mul(y, x));
            out.record(c == l.mul(l.mul(xi, y), x), "x^-1(yx) = (x^-1 y)x", || {
                as_i64(&[x, y])
            });
            for e in -r..=r {
                let ok = l.power(c, e)? == l.mul(xi, l.mul(pw.get(y, e), x));
                out.record(ok, "(x^-1 y x)^n = x^-1 y^n x", || {
                    vec![x as i64, y as i64, e]
                });
            }
        }
    }
    Ok(out)
}

/// Runs every suite whose hypotheses hold according to `report`.
pub fn run_suites(
    l: &CayleyLoop,
    report: &PropertyReport,
    cfg: &SuiteConfig,
) -> Result<BTreeMap<String, SuiteOutcome>, VarietyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = BTreeMap::new();
    if report.holds(Property::Rif) {
        out.insert("p_xyx".to_string(), p_xyx(l));
    }
    if report.holds(Property::CLoop) {
        out.insert("c_loop_right_squares".to_string(), c_loop_right_squares(l));
    }
    if report.holds(Property::Arif) {
        out.insert("premoufang".to_string(), premoufang(l)?);
        out.insert(
            "translation_shifts".to_string(),
            translation_shifts(l, cfg, &mut rng)?,
        );
        out.insert(
            "three_associative_powers".to_string(),
            three_associative_powers(l, cfg, &mut rng)?,
        );
        out.insert("conjugate_powers".to_string(), conjugate_powers(l, cfg)?);
        if report.holds(Property::Commutative) {
            let mut s = SuiteOutcome::default();
            let d = report.get(Property::Diassociative);
            s.record(d.holds, "commutative ARIF is diassociative", || {
                d.witness.clone().unwrap_or_default()
            });
            out.insert("commutative_diassociative".to_string(), s);
        }
    }
    if report.holds(Property::Ip) && l.order() <= cfg.word_order_limit {
        let profile = association_profile(l, cfg.word_length)?;
        let mut s = SuiteOutcome::default();
        s.record(
            profile.holds_for(2) == report.holds(Property::PowerAlternative),
            "2-associative iff power alternative",
            || {
                profile
                    .min_failing_block_length
                    .map(|b| b as i64)
                    .into_iter()
                    .collect()
            },
        );
        s.record(
            profile.holds_for(cfg.word_length) == report.holds(Property::Diassociative),
            "all short words associate iff diassociative",
            || {
                profile
                    .min_failing_block_length
                    .map(|b| b as i64)
                    .into_iter()
                    .collect()
            },
        );
        out.insert("word_association".to_string(), s);
    }
    let opposite = classify_unchecked(&l.opposite())?;
    let mut s = SuiteOutcome::default();
    for p in Property::ALL {
        s.record(report.holds(p) == opposite.holds(p), p.name(), Vec::new);
    }
    out.insert("opposite_invariance".to_string(), s);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::classify;

    #[test]
    fn suites_pass_on_moufang_loop() {
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        let report = classify(&l).unwrap();
        let suites = run_suites(&l, &report, &SuiteConfig::default()).unwrap();
        for name in [
            "p_xyx",
            "premoufang",
            "translation_shifts",
            "three_associative_powers",
            "conjugate_powers",
            "word_association",
            "opposite_invariance",
        ] {
            let s = &suites[name];
            assert_eq!(s.failed, 0, "{name}: {:?}", s.first_failure);
            assert!(s.passed > 0, "{name}");
        }
        assert_eq!(suites["translation_shifts"].passed, 2000);
        assert!(!suites.contains_key("c_loop_right_squares"));
    }

    #[test]
    fn sampling_is_deterministic() {
        let l = CayleyLoop::cyclic(7);
        let report = classify(&l).unwrap();
        let a = run_suites(&l, &report, &SuiteConfig::default()).unwrap();
        let b = run_suites(&l, &report, &SuiteConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failures_are_recorded_once() {
        let mut s = SuiteOutcome::default();
        s.record(true, "a", Vec::new);
        s.record(false, "b", || vec![1]);
        s.record(false, "c", || vec![2]);
        assert_eq!(s.passed, 1);
        assert_eq!(s.failed, 2);
        assert_eq!(s.first_failure.unwrap().case, "b");
    }
}
