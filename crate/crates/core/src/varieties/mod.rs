//! Classification of a loop against the standard varieties between groups
//! and ARIF loops, word association machinery and translation identity
//! suites.

mod suites;
mod words;

pub use suites::{run_suites, SuiteConfig, SuiteFailure, SuiteOutcome};
pub use words::{
    association_profile, block_length, d_associative, pi_all, pi_all_capped, pi_k, pi_r,
    DAssociativity, Word, WordError, DEFAULT_LENGTH_CAP,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use thiserror::Error;

use crate::loops::{CayleyLoop, LoopError};
use crate::perm::{self, PermError, Permutation};
use crate::term::{catalog_identity, holds, TermError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum VarietyError {
    #[error(transparent)]
    Loop(#[from] LoopError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Associative,
    Commutative,
    BooleanGroup,
    Ip,
    Flexible,
    LeftAlt,
    RightAlt,
    Alternative,
    Moufang,
    CLoop,
    Extra,
    Steiner,
    Rif,
    Arif,
    PowerAssociative,
    PowerAlternative,
    Diassociative,
}

impl Property {
    pub const ALL: [Property; 17] = [
        Property::Associative,
        Property::Commutative,
        Property::BooleanGroup,
        Property::Ip,
        Property::Flexible,
        Property::LeftAlt,
        Property::RightAlt,
        Property::Alternative,
        Property::Moufang,
        Property::CLoop,
        Property::Extra,
        Property::Steiner,
        Property::Rif,
        Property::Arif,
        Property::PowerAssociative,
        Property::PowerAlternative,
        Property::Diassociative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Associative => "associative",
            Property::Commutative => "commutative",
            Property::BooleanGroup => "boolean_group",
            Property::Ip => "ip",
            Property::Flexible => "flexible",
            Property::LeftAlt => "left_alt",
            Property::RightAlt => "right_alt",
            Property::Alternative => "alternative",
            Property::Moufang => "moufang",
            Property::CLoop => "c_loop",
            Property::Extra => "extra",
            Property::Steiner => "steiner",
            Property::Rif => "rif",
            Property::Arif => "arif",
            Property::PowerAssociative => "power_associative",
            Property::PowerAlternative => "power_alternative",
            Property::Diassociative => "diassociative",
        }
    }

    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.name() == name)
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Truth value of one property, with a counterexample when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyValue {
    pub holds: bool,
    pub witness: Option<Vec<i64>>,
}

impl PropertyValue {
    fn yes() -> Self {
        PropertyValue {
            holds: true,
            witness: None,
        }
    }

    fn no(witness: impl IntoIterator<Item = i64>) -> Self {
        PropertyValue {
            holds: false,
            witness: Some(witness.into_iter().collect()),
        }
    }

    fn of_elements(witness: Option<Vec<usize>>) -> Self {
        match witness {
            None => Self::yes(),
            Some(w) => Self::no(w.into_iter().map(|x| x as i64)),
        }
    }

    /// First failing value among `parts`, or success.
    fn all(parts: impl IntoIterator<Item = PropertyValue>) -> Self {
        parts
            .into_iter()
            .find(|p| !p.holds)
            .unwrap_or_else(Self::yes)
    }
}

/// Every property of one loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub order: usize,
    /// Every element is `y*y` for some `y`.
    pub all_squares: bool,
    values: BTreeMap<Property, PropertyValue>,
}

impl PropertyReport {
    pub fn get(&self, p: Property) -> &PropertyValue {
        &self.values[&p]
    }

    pub fn holds(&self, p: Property) -> bool {
        self.values[&p].holds
    }

    pub fn iter(&self) -> impl Iterator<Item = (Property, &PropertyValue)> {
        self.values.iter().map(|(p, v)| (*p, v))
    }

    /// Implications between varieties that fail in this report.
    pub fn violations(&self) -> Vec<String> {
        use Property::*;
        let h = |p| self.holds(p);
        let odd = self.order % 2 == 1;
        let edges: [(&str, bool, bool); 16] = [
            ("associative => moufang", h(Associative), h(Moufang)),
            ("boolean_group => steiner", h(BooleanGroup), h(Steiner)),
            (
                "extra <=> moufang & c_loop",
                h(Extra),
                h(Moufang) && h(CLoop),
            ),
            (
                "moufang & c_loop => extra",
                h(Moufang) && h(CLoop),
                h(Extra),
            ),
            ("steiner => rif", h(Steiner), h(Rif)),
            ("steiner => commutative", h(Steiner), h(Commutative)),
            ("moufang => rif", h(Moufang), h(Rif)),
            ("rif => arif", h(Rif), h(Arif)),
            (
                "flexible & c_loop => arif",
                h(Flexible) && h(CLoop),
                h(Arif),
            ),
            ("arif => ip & alternative", h(Arif), h(Ip) && h(Alternative)),
            ("arif => power_alternative", h(Arif), h(PowerAlternative)),
            ("arif => diassociative", h(Arif), h(Diassociative)),
            (
                "diassociative => ip & flexible & alternative",
                h(Diassociative),
                h(Ip) && h(Flexible) && h(Alternative),
            ),
            ("arif & odd order => moufang", h(Arif) && odd, h(Moufang)),
            (
                "arif & all squares => moufang",
                h(Arif) && self.all_squares,
                h(Moufang),
            ),
            (
                "power_alternative => power_associative",
                h(PowerAlternative),
                h(PowerAssociative),
            ),
        ];
        edges
            .iter()
            .filter(|(_, premise, conclusion)| *premise && !*conclusion)
            .map(|(name, _, _)| name.to_string())
            .collect()
    }

    /// Properties whose truth values differ between the two reports.
    pub fn differences(&self, other: &PropertyReport) -> Vec<Property> {
        Property::ALL
            .into_iter()
            .filter(|p| self.holds(*p) != other.holds(*p))
            .collect()
    }
}

impl Serialize for PropertyReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.values.len()))?;
        for (p, v) in &self.values {
            map.serialize_entry(p.name(), v)?;
        }
        map.end()
    }
}

fn identity_value(l: &CayleyLoop, name: &str) -> Result<PropertyValue, VarietyError> {
    let id = catalog_identity(name).expect("catalog name");
    Ok(PropertyValue::of_elements(holds(l, &id)?.witness_values()))
}

/// Two-sided inverses exist and `x^-1 (x y) = y = (y x) x^-1`. Witness is
/// `[x]` when `x` lacks a two-sided inverse, else `[x, y]`.
pub fn ip_value(l: &CayleyLoop) -> PropertyValue {
    let n = l.order();
    for x in 0..n {
        if l.left_inverse(x) != l.right_inverse(x) {
            return PropertyValue::no([x as i64]);
        }
    }
    for x in 0..n {
        let xi = l.right_inverse(x);
        for y in 0..n {
            if l.mul(xi, l.mul(x, y)) != y || l.mul(l.mul(y, x), xi) != y {
                return PropertyValue::no([x as i64, y as i64]);
            }
        }
    }
    PropertyValue::yes()
}

pub fn is_ip(l: &CayleyLoop) -> bool {
    ip_value(l).holds
}

pub fn is_flexible(l: &CayleyLoop) -> bool {
    identity_value(l, "FLEX").map(|v| v.holds).unwrap_or(false)
}

pub fn is_left_alt(l: &CayleyLoop) -> bool {
    identity_value(l, "LALT").map(|v| v.holds).unwrap_or(false)
}

pub fn is_right_alt(l: &CayleyLoop) -> bool {
    identity_value(l, "RALT").map(|v| v.holds).unwrap_or(false)
}

pub fn is_alternative(l: &CayleyLoop) -> bool {
    is_left_alt(l) && is_right_alt(l)
}

/// The four Moufang identities, which must agree.
pub fn moufang_value(l: &CayleyLoop) -> Result<PropertyValue, VarietyError> {
    let parts = ["M1", "M2", "N1", "N2"]
        .into_iter()
        .map(|name| identity_value(l, name))
        .collect::<Result<Vec<_>, _>>()?;
    if parts.iter().any(|p| p.holds != parts[0].holds) {
        let truth: Vec<bool> = parts.iter().map(|p| p.holds).collect();
        return Err(VarietyError::Inconsistent(format!(
            "Moufang identities disagree: M1, M2, N1, N2 = {truth:?}"
        )));
    }
    Ok(PropertyValue::all(parts))
}

pub fn is_moufang(l: &CayleyLoop) -> Result<bool, VarietyError> {
    Ok(moufang_value(l)?.holds)
}

pub fn is_c_loop(l: &CayleyLoop) -> bool {
    identity_value(l, "C").map(|v| v.holds).unwrap_or(false)
}

pub fn is_extra(l: &CayleyLoop) -> Result<bool, VarietyError> {
    Ok(is_moufang(l)? && is_c_loop(l))
}

fn exponent_two_value(l: &CayleyLoop) -> PropertyValue {
    match (0..l.order()).find(|&x| l.mul(x, x) != 0) {
        Some(x) => PropertyValue::no([x as i64]),
        None => PropertyValue::yes(),
    }
}

/// IP and exponent two.
pub fn is_steiner(l: &CayleyLoop) -> bool {
    is_ip(l) && exponent_two_value(l).holds
}

/// RIF via the inner mapping generators: IP and every generator commutes
/// with the inverse map.
pub fn is_rif_by_generators(l: &CayleyLoop) -> Result<bool, VarietyError> {
    if !is_ip(l) {
        return Ok(false);
    }
    Ok(perm::is_rif_inner(l)?.holds)
}

fn rif_identities_value(l: &CayleyLoop) -> Result<PropertyValue, VarietyError> {
    let ip = ip_value(l);
    if !ip.holds {
        return Ok(ip);
    }
    Ok(PropertyValue::all([
        identity_value(l, "RIF3")?,
        identity_value(l, "RIF4")?,
    ]))
}

/// RIF via identities: IP with `R(xy)L(xy) = L(y)L(x)R(x)R(y)` and its mirror.
pub fn is_rif_by_identities(l: &CayleyLoop) -> Result<bool, VarietyError> {
    Ok(rif_identities_value(l)?.holds)
}

/// Runs both RIF tests and fails if they disagree.
pub fn rif_value(l: &CayleyLoop) -> Result<PropertyValue, VarietyError> {
    let by_identities = rif_identities_value(l)?;
    let by_generators = is_rif_by_generators(l)?;
    if by_identities.holds != by_generators {
        return Err(VarietyError::Inconsistent(format!(
            "RIF tests disagree: generators {by_generators}, identities {}",
            by_identities.holds
        )));
    }
    Ok(by_identities)
}

pub fn is_rif(l: &CayleyLoop) -> Result<bool, VarietyError> {
    Ok(rif_value(l)?.holds)
}

pub fn arif_value(l: &CayleyLoop) -> Result<PropertyValue, VarietyError> {
    Ok(PropertyValue::all([
        identity_value(l, "FLEX")?,
        identity_value(l, "W1")?,
        identity_value(l, "W2")?,
    ]))
}

pub fn is_arif(l: &CayleyLoop) -> Result<bool, VarietyError> {
    Ok(arif_value(l)?.holds)
}

/// Witness `[x]`: the subloop generated by `x` is not a group.
pub fn power_associative_value(l: &CayleyLoop) -> PropertyValue {
    let n = l.order();
    let mut done = vec![false; n];
    for x in 0..n {
        if done[x] {
            continue;
        }
        let c = l.subloop_closure([x]);
        if !closure_is_group(l, &c.elements, &[x]) {
            return PropertyValue::no([x as i64]);
        }
        // every element of a cyclic group generates a subgroup of it
        for &y in &c.elements {
            done[y] = true;
        }
    }
    PropertyValue::yes()
}

pub fn is_power_associative(l: &CayleyLoop) -> bool {
    power_associative_value(l).holds
}

fn perm_pow(p: &Permutation, k: i64) -> Permutation {
    let base = if k < 0 { p.inverse() } else { p.clone() };
    let mut acc = Permutation::identity(p.degree());
    for _ in 0..k.unsigned_abs() {
        acc = acc.then(&base);
    }
    acc
}

/// Power associative, and `L(x^i) = L(x)^i`, `R(x^i) = R(x)^i` for
/// `|i| <= 2 ord(x)`, where `x^i = 1 L(x)^i`. Witness `[x, i]`.
pub fn power_alternative_value(l: &CayleyLoop) -> PropertyValue {
    let pa = power_associative_value(l);
    if !pa.holds {
        return pa;
    }
    for x in 0..l.order() {
        let bound = 2 * l.element_order(x) as i64;
        let lx = perm::l_map(l, x);
        let rx = perm::r_map(l, x);
        for sign in [1i64, -1] {
            let lstep = perm_pow(&lx, sign);
            let rstep = perm_pow(&rx, sign);
            let mut lpow = Permutation::identity(l.order());
            let mut rpow = lpow.clone();
            for i in 1..=bound {
                lpow = lpow.then(&lstep);
                rpow = rpow.then(&rstep);
                let xi = lpow.apply(0);
                if perm::l_map(l, xi) != lpow || perm::r_map(l, xi) != rpow {
                    return PropertyValue::no([x as i64, sign * i]);
                }
            }
        }
    }
    PropertyValue::yes()
}

pub fn is_power_alternative(l: &CayleyLoop) -> bool {
    power_alternative_value(l).holds
}

/// Associativity of a finite subloop from its generators: the elements `g`
/// with `(a g) b = a (g b)` for all `a, b` in the subloop are closed under
/// products, and a multiplicatively closed subset of a finite loop is a
/// subloop, so checking the generators suffices.
fn closure_is_group(l: &CayleyLoop, elements: &[usize], generators: &[usize]) -> bool {
    generators.iter().all(|&g| {
        elements.iter().all(|&a| {
            let ag = l.mul(a, g);
            elements
                .iter()
                .all(|&b| l.mul(ag, b) == l.mul(a, l.mul(g, b)))
        })
    })
}

/// Witness `[x, y]`: the subloop generated by `x, y` is not a group.
pub fn diassociative_value(l: &CayleyLoop) -> PropertyValue {
    let n = l.order();
    let mut covered = vec![false; n * n];
    for x in 0..n {
        for y in x..n {
            if covered[x * n + y] {
                continue;
            }
            let c = l.subloop_closure([x, y]);
            if !closure_is_group(l, &c.elements, &[x, y]) {
                return PropertyValue::no([x as i64, y as i64]);
            }
            for &a in &c.elements {
                for &b in &c.elements {
                    covered[a * n + b] = true;
                }
            }
        }
    }
    PropertyValue::yes()
}

pub fn is_diassociative(l: &CayleyLoop) -> bool {
    diassociative_value(l).holds
}

fn boolean_group_value(l: &CayleyLoop) -> PropertyValue {
    match l.associativity_witness() {
        Some((a, b, c)) => PropertyValue::no([a as i64, b as i64, c as i64]),
        None => exponent_two_value(l),
    }
}

/// Computes every property. Implication edges between varieties are checked
/// and any violation is returned as an error.
pub fn classify(l: &CayleyLoop) -> Result<PropertyReport, VarietyError> {
    let report = classify_unchecked(l)?;
    let violations = report.violations();
    if !violations.is_empty() {
        return Err(VarietyError::Inconsistent(format!(
            "inclusion violations: {}",
            violations.join("; ")
        )));
    }
    Ok(report)
}

/// [`classify`] without the inclusion check, so the caller can inspect
/// violations.
pub fn classify_unchecked(l: &CayleyLoop) -> Result<PropertyReport, VarietyError> {
    use Property::*;
    let mut values = BTreeMap::new();
    let ip = ip_value(l);
    let left = identity_value(l, "LALT")?;
    let right = identity_value(l, "RALT")?;
    let moufang = moufang_value(l)?;
    let c_loop = identity_value(l, "C")?;
    let exp2 = exponent_two_value(l);
    values.insert(Associative, identity_value(l, "ASSOC")?);
    values.insert(Commutative, identity_value(l, "COMM")?);
    values.insert(BooleanGroup, boolean_group_value(l));
    values.insert(Flexible, identity_value(l, "FLEX")?);
    values.insert(
        Alternative,
        PropertyValue::all([left.clone(), right.clone()]),
    );
    values.insert(LeftAlt, left);
    values.insert(RightAlt, right);
    values.insert(Extra, PropertyValue::all([moufang.clone(), c_loop.clone()]));
    values.insert(Moufang, moufang);
    values.insert(CLoop, c_loop);
    values.insert(Steiner, PropertyValue::all([ip.clone(), exp2]));
    values.insert(Ip, ip);
    values.insert(Rif, rif_value(l)?);
    values.insert(Arif, arif_value(l)?);
    values.insert(PowerAssociative, power_associative_value(l));
    values.insert(PowerAlternative, power_alternative_value(l));
    values.insert(Diassociative, diassociative_value(l));
    let n = l.order();
    let mut square = vec![false; n];
    for y in 0..n {
        square[l.mul(y, y)] = true;
    }
    Ok(PropertyReport {
        order: n,
        all_squares: square.iter().all(|&s| s),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn non_ip_5() -> CayleyLoop {
        CayleyLoop::from_table(&[
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ])
        .unwrap()
    }

    #[test]
    fn groups_are_extra() {
        let s3 = CayleyLoop::symmetric_group(3);
        let r = classify(&s3).unwrap();
        for p in Property::ALL {
            let expected = !matches!(
                p,
                Property::Commutative | Property::BooleanGroup | Property::Steiner
            );
            assert_eq!(r.holds(p), expected, "{p}");
        }
        assert_eq!(
            r.get(Property::Commutative).witness.as_deref(),
            Some(&[1, 2][..])
        );
    }

    #[test]
    fn klein_four_group_is_boolean_and_extra() {
        let r = classify(&CayleyLoop::boolean_group(2)).unwrap();
        assert!(r.holds(Property::BooleanGroup));
        assert!(r.holds(Property::Extra));
        assert!(r.holds(Property::Steiner));
    }

    #[test]
    fn non_ip_loop() {
        let l = non_ip_5();
        assert_eq!(ip_value(&l), PropertyValue::no([2]));
        let r = classify(&l).unwrap();
        assert!(!r.holds(Property::Rif));
        assert!(!r.holds(Property::Arif));
        assert!(!r.holds(Property::PowerAlternative));
        assert!(!r.holds(Property::Diassociative));
    }

    #[test]
    fn chein_double_is_moufang_not_c() {
        let l = CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).unwrap();
        let r = classify(&l).unwrap();
        assert!(r.holds(Property::Moufang));
        assert!(!r.holds(Property::Associative));
        assert!(r.holds(Property::Rif));
        assert!(!r.holds(Property::CLoop));
        assert!(r.holds(Property::Diassociative));
        assert!(r.violations().is_empty());
    }

    #[test]
    fn violations_are_detected() {
        let mut r = classify(&CayleyLoop::cyclic(3)).unwrap();
        r.values
            .insert(Property::Diassociative, PropertyValue::no([1, 2]));
        assert_eq!(r.violations(), vec!["arif => diassociative".to_string()]);
    }

    #[test]
    fn report_serializes_in_declaration_order() {
        let r = classify(&CayleyLoop::cyclic(2)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(
            json.starts_with("{\"associative\":{\"holds\":true,\"witness\":null},\"commutative\"")
        );
        assert_eq!(Property::from_name("c_loop"), Some(Property::CLoop));
    }
}
