//! Stable JSON views of classification reports, family members, and
//! search results.
//!
//! Big integers are serialized as decimal strings so consumers never
//! lose precision to 64-bit JSON number parsing.

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::families::FamilyMember;
use crate::geometry::ClassificationReport;
use crate::search::{RecordSet, RecordValue};
use crate::singularities::Certificate;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for JsonRational {
    fn from(q: &Rational) -> Self {
        JsonRational {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFamilyHeader {
    pub problem: String,
    pub n: u32,
    pub branch: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonStratumVerdict {
    pub stratum: Vec<usize>,
    pub singularity: String,
    pub class: String,
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<JsonFamilyHeader>,
    pub weights: Vec<String>,
    pub degree: String,
    pub well_formed: bool,
    pub quasi_smooth: bool,
    pub class: String,
    pub adjunction: String,
    pub volume: JsonRational,
    #[serde(rename = "M")]
    pub m: String,
    pub overall: String,
    pub certificates: Vec<JsonStratumVerdict>,
    pub notes: Vec<String>,
}

/// Human-readable certificate tag used in reports.
pub fn describe_certificate(c: &Certificate) -> String {
    match c {
        Certificate::SmoothPoint => "smooth-point".to_string(),
        Certificate::DirectReidTai => "direct-reid-tai".to_string(),
        Certificate::GorensteinSum => "gorenstein-sum".to_string(),
        Certificate::WeightSubset { subset } => {
            let parts: Vec<String> = subset.iter().map(Integer::to_string).collect();
            format!("weight-subset[{}]", parts.join(","))
        }
        Certificate::Index1Promotion { base } => {
            format!("index1-promotion({})", describe_certificate(base))
        }
    }
}

impl From<&ClassificationReport> for JsonReport {
    fn from(r: &ClassificationReport) -> Self {
        JsonReport {
            family: None,
            weights: r
                .hypersurface
                .space
                .weights()
                .iter()
                .map(Integer::to_string)
                .collect(),
            degree: r.hypersurface.degree.to_string(),
            well_formed: r.well_formed,
            quasi_smooth: r.quasi_smooth,
            class: r.variety_class.as_str(),
            adjunction: r.adjunction_degree.to_string(),
            volume: JsonRational::from(&r.volume),
            m: r.first_nonvanishing.to_string(),
            overall: r.overall.class.as_str().to_string(),
            certificates: r
                .strata_verdicts
                .iter()
                .map(|sv| JsonStratumVerdict {
                    stratum: sv.stratum.indices.clone(),
                    singularity: sv.singularity.to_string(),
                    class: sv.verdict.class.as_str().to_string(),
                    certificate: sv.verdict.certificate.as_ref().map(describe_certificate),
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

/// Report for a family member: the classification plus the
/// `{problem, n, branch}` header.
pub fn family_report(member: &FamilyMember, report: &ClassificationReport) -> JsonReport {
    let mut json = JsonReport::from(report);
    json.family = Some(JsonFamilyHeader {
        problem: member.problem.to_string(),
        n: member.n,
        branch: member.branch.as_str().to_string(),
    });
    json
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonSearchConfig {
    pub record: String,
    pub max_weight: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRecordSet {
    pub config: JsonSearchConfig,
    /// Record value: a volume fraction or a bottom-weight integer.
    pub best: Option<JsonRecordValue>,
    pub achievers: Vec<Vec<u64>>,
    pub examined: u64,
    /// The record is only certified below the stated weight bound.
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JsonRecordValue {
    Volume(JsonRational),
    BottomWeight(String),
}

impl From<&RecordSet> for JsonRecordSet {
    fn from(r: &RecordSet) -> Self {
        JsonRecordSet {
            config: JsonSearchConfig {
                record: r.kind.as_str().to_string(),
                max_weight: r.max_weight,
            },
            best: r.best.as_ref().map(|v| match v {
                RecordValue::Volume(q) => JsonRecordValue::Volume(JsonRational::from(q)),
                RecordValue::BottomWeight(b) => JsonRecordValue::BottomWeight(b.to_string()),
            }),
            achievers: r.achievers.iter().map(|w| w.to_vec()).collect(),
            examined: r.examined,
            note: format!(
                "record certified only among candidates with top weight <= {}",
                r.max_weight
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{generate, ProblemId};
    use crate::geometry::{classify_hypersurface, Hypersurface};
    use crate::search::{enumerate_cy_surfaces, RecordKind, SearchConfig};
    use crate::singularities::DEFAULT_REID_TAI_BUDGET;

    #[test]
    fn classification_report_round_trips() {
        let h = Hypersurface::from_u64(&[33, 22, 6, 5], 66).unwrap();
        let report = classify_hypersurface(&h, DEFAULT_REID_TAI_BUDGET).unwrap();
        let json = JsonReport::from(&report);
        let text = serde_json::to_string_pretty(&json).unwrap();
        let parsed: JsonReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
        assert_eq!(json.volume, JsonRational { num: "1".into(), den: "330".into() });
        assert_eq!(json.class, "calabi-yau");
        assert!(json.family.is_none());
    }

    #[test]
    fn family_report_adds_header() {
        let p: ProblemId = "1a".parse().unwrap();
        let m = generate(p, 2).unwrap();
        let report = classify_hypersurface(&m.hypersurface, DEFAULT_REID_TAI_BUDGET).unwrap();
        let json = family_report(&m, &report);
        let header = json.family.clone().unwrap();
        assert_eq!(header.problem, "1a");
        assert_eq!(header.n, 2);
        assert_eq!(header.branch, "single");
        let text = serde_json::to_string(&json).unwrap();
        let parsed: JsonReport = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
    }

    #[test]
    fn search_report_round_trips() {
        let r = enumerate_cy_surfaces(&SearchConfig {
            max_weight: 10,
            kind: RecordKind::MinVolume,
            workers: 2,
        })
        .unwrap();
        let json = JsonRecordSet::from(&r);
        let text = serde_json::to_string(&json).unwrap();
        let parsed: JsonRecordSet = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, json);
        assert!(json.note.contains("10"));
    }

    #[test]
    fn huge_integers_survive_as_strings() {
        let m = generate("1a".parse().unwrap(), 4).unwrap();
        let report = classify_hypersurface(&m.hypersurface, DEFAULT_REID_TAI_BUDGET).unwrap();
        let json = JsonReport::from(&report);
        assert_eq!(json.degree, "6521466");
        assert_eq!(json.weights[0], "3260733");
    }
}
