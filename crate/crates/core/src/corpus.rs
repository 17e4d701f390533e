//! The reference corpus: embedded tables, constructed loops and finder
//! fixtures, each with the classification it is expected to have.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::loops::CayleyLoop;
use crate::steiner::{affine_plane_9, point_element, point_label, steiner_loop, z13_system};
use crate::varieties::{
    classify, run_suites, Property, PropertyReport, SuiteConfig, SuiteOutcome, VarietyError,
};

const TABLE1: &str = include_str!("../data/table1.tbl");
const TABLE2: &str = include_str!("../data/table2.tbl");
const NONIP5: &str = include_str!("../data/nonip5.tbl");
const IP_POWER_ASSOC7: &str = include_str!("../data/ip_power_assoc7.tbl");
const IP_NONFLEXIBLE8: &str = include_str!("../data/ip_nonflexible8.tbl");

/// Problem files whose first model is the committed fixture of that name.
pub const FIXTURE_PROBLEMS: [(&str, &str); 3] = [
    ("nonip5", include_str!("../data/problems/nonip5.problem")),
    (
        "ip_power_assoc7",
        include_str!("../data/problems/ip_power_assoc7.problem"),
    ),
    (
        "ip_nonflexible8",
        include_str!("../data/problems/ip_nonflexible8.problem"),
    ),
];

/// Problem asking for a nonassociative Steiner loop.
pub const STEINER_PROBLEM: &str = include_str!("../data/problems/steiner_nonassoc.problem");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    TranscribedTable,
    Constructed,
    FinderOutput,
}

/// How elements are named in user-facing input and output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labeling {
    /// Table indices.
    Elements,
    /// Triple system points, with `e` for the identity.
    SteinerPoints,
}

impl Labeling {
    pub fn label(self, element: usize) -> String {
        match self {
            Labeling::Elements => element.to_string(),
            Labeling::SteinerPoints => point_label(element),
        }
    }

    pub fn element(self, label: &str) -> Option<usize> {
        match (self, label) {
            (Labeling::SteinerPoints, "e") => Some(0),
            (Labeling::SteinerPoints, p) => p.parse().ok().map(point_element),
            (Labeling::Elements, x) => x.parse().ok(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub cayley: CayleyLoop,
    pub provenance: Provenance,
    pub labeling: Labeling,
    /// The variety region this entry inhabits, if it is a region witness.
    pub region: Option<&'static str>,
    /// Property values fixed independently of the golden files.
    pub expected: Vec<(Property, bool)>,
}

impl CorpusEntry {
    /// Expected values that the report contradicts.
    pub fn mismatches(&self, report: &PropertyReport) -> Vec<String> {
        self.expected
            .iter()
            .filter(|(p, want)| report.holds(*p) != *want)
            .map(|(p, want)| format!("{}: {p} expected {want}", self.name))
            .collect()
    }
}

/// Table indices `(row, col, value)` that guard against transcription errors.
pub const TABLE1_SPOTS: [(usize, usize, usize); 4] =
    [(3, 12, 18), (15, 18, 10), (12, 3, 18), (6, 12, 15)];
pub const TABLE2_SPOTS: [(usize, usize, usize); 3] = [(3, 3, 0), (3, 6, 10), (6, 3, 11)];

fn embedded(name: &str, text: &str, spots: &[(usize, usize, usize)]) -> CayleyLoop {
    let l = CayleyLoop::parse_text(text).unwrap_or_else(|e| panic!("embedded {name}: {e}"));
    for &(r, c, v) in spots {
        assert_eq!(l.mul(r, c), v, "embedded {name}: cell ({r}, {c})");
    }
    l
}

/// The order 24 flexible C-loop.
pub fn table1() -> CayleyLoop {
    embedded("table1", TABLE1, &TABLE1_SPOTS)
}

/// The order 12 non-flexible C-loop.
pub fn table2() -> CayleyLoop {
    embedded("table2", TABLE2, &TABLE2_SPOTS)
}

pub fn chein_s3() -> CayleyLoop {
    CayleyLoop::chein_double(&CayleyLoop::symmetric_group(3)).expect("S3 is a group")
}

pub fn steiner10() -> CayleyLoop {
    steiner_loop(&affine_plane_9()).expect("affine plane is a triple system")
}

pub fn steiner14() -> CayleyLoop {
    steiner_loop(&z13_system()).expect("Z13 system is a triple system")
}

pub const CORPUS_NAMES: [&str; 20] = [
    "trivial",
    "z2",
    "z2x2",
    "z2x2x2",
    "z3",
    "z4",
    "z5",
    "z6",
    "s3",
    "chein_s3",
    "table1",
    "table2",
    "steiner10",
    "steiner14",
    "steiner10_x_z3",
    "steiner10_x_chein_s3",
    "table1_x_chein_s3",
    "nonip5",
    "ip_power_assoc7",
    "ip_nonflexible8",
];

/// Builds one corpus entry by name.
pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    use Property::*;
    let name = CORPUS_NAMES.into_iter().find(|n| *n == name)?;
    let group = |extra: &[(Property, bool)]| {
        let mut v = vec![(Associative, true), (Moufang, true), (Diassociative, true)];
        v.extend_from_slice(extra);
        v
    };
    let (cayley, provenance, region, expected): (
        CayleyLoop,
        Provenance,
        Option<&'static str>,
        Vec<(Property, bool)>,
    ) = match name {
        "trivial" => (
            CayleyLoop::trivial(),
            Provenance::Constructed,
            None,
            group(&[(BooleanGroup, true)]),
        ),
        "z2" => (
            CayleyLoop::cyclic(2),
            Provenance::Constructed,
            None,
            group(&[(BooleanGroup, true)]),
        ),
        "z2x2" => (
            CayleyLoop::boolean_group(2),
            Provenance::Constructed,
            Some("boolean group"),
            group(&[(BooleanGroup, true), (Steiner, true), (Extra, true)]),
        ),
        "z2x2x2" => (
            CayleyLoop::boolean_group(3),
            Provenance::Constructed,
            None,
            group(&[(BooleanGroup, true)]),
        ),
        "z3" => (
            CayleyLoop::cyclic(3),
            Provenance::Constructed,
            None,
            group(&[(BooleanGroup, false)]),
        ),
        "z4" => (
            CayleyLoop::cyclic(4),
            Provenance::Constructed,
            None,
            group(&[(BooleanGroup, false)]),
        ),
        "z5" => (
            CayleyLoop::cyclic(5),
            Provenance::Constructed,
            None,
            group(&[(BooleanGroup, false)]),
        ),
        "z6" => (
            CayleyLoop::cyclic(6),
            Provenance::Constructed,
            None,
            group(&[(Commutative, true)]),
        ),
        "s3" => (
            CayleyLoop::symmetric_group(3),
            Provenance::Constructed,
            Some("group that is not boolean"),
            group(&[(BooleanGroup, false), (Extra, true), (Commutative, false)]),
        ),
        "chein_s3" => (
            chein_s3(),
            Provenance::Constructed,
            Some("Moufang loop that is not extra"),
            vec![
                (Associative, false),
                (Moufang, true),
                (Extra, false),
                (Rif, true),
            ],
        ),
        "table1" => (
            table1(),
            Provenance::TranscribedTable,
            Some("flexible C-loop that is not RIF"),
            vec![
                (Ip, true),
                (Flexible, true),
                (CLoop, true),
                (Arif, true),
                (Rif, false),
                (Moufang, false),
                (Diassociative, true),
                (PowerAlternative, true),
                (Steiner, false),
            ],
        ),
        "table2" => (
            table2(),
            Provenance::TranscribedTable,
            Some("C-loop that is not flexible"),
            vec![
                (CLoop, true),
                (Flexible, false),
                (Alternative, true),
                (Ip, true),
                (Arif, false),
            ],
        ),
        "steiner10" => (
            steiner10(),
            Provenance::Constructed,
            Some("Steiner loop that is not a group"),
            vec![
                (Steiner, true),
                (Associative, false),
                (Moufang, false),
                (Rif, true),
            ],
        ),
        "steiner14" => (
            steiner14(),
            Provenance::Constructed,
            None,
            vec![
                (Steiner, true),
                (Commutative, true),
                (CLoop, true),
                (Rif, true),
                (Diassociative, true),
                (Moufang, false),
            ],
        ),
        "steiner10_x_z3" => (
            steiner10().direct_product(&CayleyLoop::cyclic(3)),
            Provenance::Constructed,
            Some("RIF flexible C-loop that is neither Moufang nor Steiner"),
            vec![
                (Rif, true),
                (Flexible, true),
                (CLoop, true),
                (Moufang, false),
                (Steiner, false),
            ],
        ),
        "steiner10_x_chein_s3" => (
            steiner10().direct_product(&chein_s3()),
            Provenance::Constructed,
            Some("RIF loop that is not a C-loop"),
            vec![(Rif, true), (CLoop, false)],
        ),
        "table1_x_chein_s3" => (
            table1().direct_product(&chein_s3()),
            Provenance::Constructed,
            Some("ARIF loop that is neither a C-loop nor RIF"),
            vec![(Arif, true), (CLoop, false), (Rif, false)],
        ),
        "nonip5" => (
            embedded("nonip5", NONIP5, &[]),
            Provenance::FinderOutput,
            None,
            vec![(Ip, false), (PowerAlternative, false)],
        ),
        "ip_power_assoc7" => (
            embedded("ip_power_assoc7", IP_POWER_ASSOC7, &[]),
            Provenance::FinderOutput,
            None,
            vec![
                (Ip, true),
                (PowerAssociative, true),
                (PowerAlternative, false),
                (Diassociative, false),
            ],
        ),
        "ip_nonflexible8" => (
            embedded("ip_nonflexible8", IP_NONFLEXIBLE8, &[]),
            Provenance::FinderOutput,
            None,
            vec![(Ip, true), (Flexible, false), (Diassociative, false)],
        ),
        _ => unreachable!("name taken from CORPUS_NAMES"),
    };
    let labeling = if name == "steiner14" {
        Labeling::SteinerPoints
    } else {
        Labeling::Elements
    };
    Some(CorpusEntry {
        name,
        cayley,
        provenance,
        labeling,
        region,
        expected,
    })
}

/// Every corpus entry, in [`CORPUS_NAMES`] order.
pub fn corpus() -> Vec<CorpusEntry> {
    CORPUS_NAMES
        .iter()
        .map(|n| corpus_entry(n).expect("listed name"))
        .collect()
}

/// Full report for one loop, the unit of JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    #[serde(rename = "loop")]
    pub name: String,
    pub order: usize,
    pub properties: PropertyReport,
    pub suites: BTreeMap<String, SuiteOutcome>,
}

impl LoopReport {
    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Golden file contents for a corpus entry: its region sentence, if any,
/// next to the full report.
#[derive(Debug, Clone, Serialize)]
pub struct Golden<'a> {
    pub provenance: Provenance,
    pub region: Option<&'a str>,
    pub report: &'a LoopReport,
}

impl CorpusEntry {
    pub fn report(&self, cfg: &SuiteConfig) -> Result<LoopReport, VarietyError> {
        report(self.name, &self.cayley, cfg)
    }

    /// Pretty JSON with a trailing newline, compared byte for byte.
    pub fn golden_json(&self, report: &LoopReport) -> String {
        let golden = Golden {
            provenance: self.provenance,
            region: self.region,
            report,
        };
        let mut s = serde_json::to_string_pretty(&golden).expect("golden serializes");
        s.push('\n');
        s
    }
}

pub fn report(name: &str, l: &CayleyLoop, cfg: &SuiteConfig) -> Result<LoopReport, VarietyError> {
    let properties = classify(l)?;
    let suites = run_suites(l, &properties, cfg)?;
    Ok(LoopReport {
        name: name.to_string(),
        order: l.order(),
        properties,
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_load() {
        assert_eq!(table1().order(), 24);
        assert_eq!(table2().order(), 12);
    }

    #[test]
    fn names_are_unique_and_resolve() {
        let mut names = CORPUS_NAMES.to_vec();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CORPUS_NAMES.len());
        assert!(corpus_entry("nope").is_none());
        assert_eq!(
            corpus_entry("table1_x_chein_s3").unwrap().cayley.order(),
            288
        );
    }

    #[test]
    fn steiner_labels() {
        let lab = Labeling::SteinerPoints;
        assert_eq!(lab.element("e"), Some(0));
        assert_eq!(lab.element("12"), Some(13));
        assert_eq!(lab.label(13), "12");
        assert_eq!(Labeling::Elements.element("x"), None);
    }
}
