//! Reports produced by the subcommands. Every report is built once and then
//! rendered either as aligned text or as a single JSON object.

use std::fmt::Write as _;
use std::str::FromStr;

use ckbundle_core::abelian::cokernel;
use ckbundle_core::ck::{bowen_franks, edge_dilation, is_irreducible, is_primitive, k0, k1};
use ckbundle_core::sft::{conjugacy_search, se_obstruction, search_se_witness, verify_se_witness};
use ckbundle_core::{
    BigInt, ComparisonVerdict, Conjugacy, FgAbelianGroup, IntMatrix, IntPolynomial, Obstruction,
    Outcome, SeWitness, TorusBundle,
};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_with::{serde_as, DeserializeAs, DisplayFromStr, SerializeAs};

use crate::CliError;

/// Inputs with more rows than this are accepted with a warning.
pub const SIZE_WARNING_THRESHOLD: usize = 12;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISTINCT: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

/// A big integer written as a bare JSON number.
pub struct AsNumber;

impl SerializeAs<BigInt> for AsNumber {
    fn serialize_as<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        serde_json::Number::from_str(&v.to_string())
            .map_err(serde::ser::Error::custom)?
            .serialize(s)
    }
}

impl<'de> DeserializeAs<'de, BigInt> for AsNumber {
    fn deserialize_as<D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map_err(|_| D::Error::custom(format!("{n} is not an integer")))
    }
}

/// A matrix written as a list of rows of JSON numbers.
pub struct Rows;

impl SerializeAs<IntMatrix> for Rows {
    fn serialize_as<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        #[serde_as]
        #[derive(Serialize)]
        struct Wire<'a>(#[serde_as(as = "Vec<Vec<AsNumber>>")] &'a Vec<Vec<BigInt>>);
        Wire(&m.to_rows()).serialize(s)
    }
}

impl<'de> DeserializeAs<'de, IntMatrix> for Rows {
    fn deserialize_as<D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        #[serde_as]
        #[derive(Deserialize)]
        struct Wire(#[serde_as(as = "Vec<Vec<AsNumber>>")] Vec<Vec<BigInt>>);
        let Wire(rows) = Wire::deserialize(d)?;
        IntMatrix::from_rows(rows).map_err(D::Error::custom)
    }
}

fn size_warning(m: &IntMatrix) -> Option<String> {
    (m.rows() > SIZE_WARNING_THRESHOLD || m.cols() > SIZE_WARNING_THRESHOLD).then(|| {
        format!(
            "{}x{} input exceeds {t}x{t}; searches may be slow",
            m.rows(),
            m.cols(),
            t = SIZE_WARNING_THRESHOLD
        )
    })
}

fn matrix_inline(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(BigInt::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn or_dash<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

/// Writes `key: value` lines with the values aligned.
fn aligned(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0) + 1;
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{:<width$} {v}", format!("{k}:"), width = width);
    }
    out
}

pub trait Render: Serialize {
    fn text(&self) -> String;

    fn json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Every invariant of one square matrix. Bundle fields are `None` unless
/// `|det| = 1`; `irreducible` and `primitive` are `None` for matrices with
/// a negative entry.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    #[serde_as(as = "Rows")]
    pub matrix: IntMatrix,
    #[serde_as(as = "AsNumber")]
    pub det: BigInt,
    #[serde_as(as = "AsNumber")]
    pub trace: BigInt,
    /// Whether the sign of the monodromy was flipped to make the trace
    /// nonnegative.
    pub normalized: Option<bool>,
    #[serde_as(as = "DisplayFromStr")]
    pub k0: FgAbelianGroup,
    #[serde_as(as = "DisplayFromStr")]
    pub k1: FgAbelianGroup,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub normalized_k0: Option<FgAbelianGroup>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub normalized_k1: Option<FgAbelianGroup>,
    #[serde_as(as = "DisplayFromStr")]
    pub bowen_franks: FgAbelianGroup,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub h1: Option<FgAbelianGroup>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub alexander: Option<IntPolynomial>,
    pub irreducible: Option<bool>,
    pub primitive: Option<bool>,
    /// `H_1(M_A) = Z + K_0(O_A)`.
    pub theorem1_check: Option<bool>,
    pub warnings: Vec<String>,
}

impl InvariantReport {
    pub fn new(a: &IntMatrix) -> Result<Self, CliError> {
        let det = a.det()?;
        let mut warnings: Vec<String> = size_warning(a).into_iter().collect();
        let bundle = match TorusBundle::new(a.clone()) {
            Ok(b) => Some(b),
            Err(ckbundle_core::Error::NotUnimodular { .. }) => {
                warnings.push(format!(
                    "det = {det}, not in GL_n(Z); bundle invariants omitted"
                ));
                None
            }
            Err(e) => return Err(e.into()),
        };
        let image = bundle.as_ref().map(TorusBundle::ck_functor);
        let nonnegative = a.is_nonnegative();
        Ok(InvariantReport {
            matrix: a.clone(),
            trace: a.trace()?,
            det,
            normalized: image.as_ref().map(|f| f.normalized.flipped),
            k0: k0(a)?,
            k1: k1(a)?,
            normalized_k0: image.as_ref().map(|f| f.normalized_k0.clone()),
            normalized_k1: image.as_ref().map(|f| f.normalized_k1.clone()),
            bowen_franks: bowen_franks(a)?,
            h1: bundle.as_ref().map(TorusBundle::h1),
            alexander: bundle.as_ref().map(TorusBundle::alexander_polynomial),
            irreducible: if nonnegative {
                Some(is_irreducible(a)?)
            } else {
                None
            },
            primitive: if nonnegative {
                Some(is_primitive(a)?)
            } else {
                None
            },
            theorem1_check: bundle.as_ref().map(TorusBundle::homology_matches_k0),
            warnings,
        })
    }
}

impl Render for InvariantReport {
    fn text(&self) -> String {
        aligned(&[
            ("matrix", matrix_inline(&self.matrix)),
            ("det", self.det.to_string()),
            ("trace", self.trace.to_string()),
            ("normalized", or_dash(&self.normalized)),
            ("k0", self.k0.to_string()),
            ("k1", self.k1.to_string()),
            ("normalized_k0", or_dash(&self.normalized_k0)),
            ("normalized_k1", or_dash(&self.normalized_k1)),
            ("bowen_franks", self.bowen_franks.to_string()),
            ("h1", or_dash(&self.h1)),
            ("alexander", or_dash(&self.alexander)),
            ("irreducible", or_dash(&self.irreducible)),
            ("primitive", or_dash(&self.primitive)),
            ("theorem1_check", or_dash(&self.theorem1_check)),
        ])
    }
}

/// Verdict of `compare`. `certificate` is set for `Homeomorphic` and has
/// been checked against both monodromies.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareReport {
    pub verdict: String,
    pub witness: String,
    pub invariant: Option<String>,
    pub left: Option<String>,
    pub right: Option<String>,
    #[serde_as(as = "Option<Rows>")]
    pub certificate: Option<IntMatrix>,
    pub verified: Option<bool>,
    pub depth: usize,
    pub warnings: Vec<String>,
}

fn obstruction_fields(o: Option<&Obstruction>) -> (Option<String>, Option<String>, Option<String>) {
    match o {
        Some(o) => (
            Some(o.invariant.to_string()),
            Some(o.left.clone()),
            Some(o.right.clone()),
        ),
        None => (None, None, None),
    }
}

/// `u * a = b * u` with `u` invertible over the integers.
fn certifies(u: &IntMatrix, a: &IntMatrix, b: &IntMatrix) -> bool {
    u.is_unimodular() && u * a == b * u
}

impl CompareReport {
    pub fn new(a: &IntMatrix, b: &IntMatrix, depth: usize) -> Result<Self, CliError> {
        let (ba, bb) = (TorusBundle::new(a.clone())?, TorusBundle::new(b.clone())?);
        let verdict = ckbundle_core::bundle::compare_bundles(&ba, &bb, depth)?;
        let (invariant, left, right) = obstruction_fields(match &verdict {
            ComparisonVerdict::Distinct(o) => Some(o),
            ComparisonVerdict::Inconclusive { obstruction, .. } => obstruction.as_ref(),
            ComparisonVerdict::Homeomorphic { .. } => None,
        });
        let certificate = match &verdict {
            ComparisonVerdict::Homeomorphic { conjugator } => Some(conjugator.clone()),
            _ => None,
        };
        Ok(CompareReport {
            verdict: verdict.outcome().to_string(),
            witness: verdict.witness(),
            invariant,
            left,
            right,
            verified: certificate.as_ref().map(|u| certifies(u, a, b)),
            certificate,
            depth,
            warnings: size_warning(a).into_iter().collect(),
        })
    }

    pub fn outcome(&self) -> Outcome {
        match self.verdict.as_str() {
            "Distinct" => Outcome::Distinct,
            "Homeomorphic" => Outcome::Homeomorphic,
            _ => Outcome::Inconclusive,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.outcome() {
            Outcome::Homeomorphic => EXIT_OK,
            Outcome::Distinct => EXIT_DISTINCT,
            Outcome::Inconclusive => EXIT_INCONCLUSIVE,
        }
    }
}

impl Render for CompareReport {
    fn text(&self) -> String {
        aligned(&[
            ("verdict", self.verdict.clone()),
            ("witness", self.witness.clone()),
        ])
    }
}

/// `U A V = D`, and the cokernel `D` presents.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfReport {
    #[serde_as(as = "Rows")]
    pub matrix: IntMatrix,
    #[serde_as(as = "Rows")]
    pub u: IntMatrix,
    #[serde_as(as = "Rows")]
    pub d: IntMatrix,
    #[serde_as(as = "Rows")]
    pub v: IntMatrix,
    #[serde_as(as = "Vec<AsNumber>")]
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub cokernel: FgAbelianGroup,
    pub warnings: Vec<String>,
}

impl SnfReport {
    pub fn new(a: &IntMatrix) -> Self {
        let snf = a.smith();
        SnfReport {
            diagonal: snf.diagonal(),
            rank: snf.rank(),
            cokernel: cokernel(a),
            matrix: a.clone(),
            u: snf.u().clone(),
            d: snf.d().clone(),
            v: snf.v().clone(),
            warnings: size_warning(a).into_iter().collect(),
        }
    }
}

impl Render for SnfReport {
    fn text(&self) -> String {
        let diagonal: Vec<String> = self.diagonal.iter().map(BigInt::to_string).collect();
        aligned(&[
            ("diagonal", diagonal.join(" ")),
            ("rank", self.rank.to_string()),
            ("cokernel", self.cokernel.to_string()),
            ("U", matrix_inline(&self.u)),
            ("D", matrix_inline(&self.d)),
            ("V", matrix_inline(&self.v)),
        ])
    }
}

#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde_as(as = "Rows")]
    pub r: IntMatrix,
    #[serde_as(as = "Rows")]
    pub s: IntMatrix,
    pub lag: u64,
}

/// Result of `se-search`. `definitive` is true when the answer is proven:
/// either a verified witness or an invariant that differs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeSearchReport {
    pub result: String,
    pub witness: Option<WitnessReport>,
    pub verified: Option<bool>,
    pub obstruction: Option<String>,
    pub definitive: bool,
    pub max_lag: u64,
    pub entry_bound: u64,
    pub warnings: Vec<String>,
}

impl SeSearchReport {
    pub fn new(
        a: &IntMatrix,
        b: &IntMatrix,
        max_lag: u64,
        entry_bound: u64,
    ) -> Result<Self, CliError> {
        let found = search_se_witness(a, b, max_lag, entry_bound)?;
        let obstruction = se_obstruction(a, b)?;
        let verified = match &found {
            Some(w) => Some(verify_se_witness(a, b, w)?),
            None => None,
        };
        let result = match (&found, &obstruction) {
            (Some(_), _) => "ShiftEquivalent",
            (None, Some(_)) => "NotShiftEquivalent",
            (None, None) => "Inconclusive",
        };
        Ok(SeSearchReport {
            result: result.to_string(),
            definitive: found.is_some() || obstruction.is_some(),
            witness: found.map(|SeWitness { r, s, lag }| WitnessReport { r, s, lag }),
            verified,
            obstruction: obstruction.map(|o| o.to_string()),
            max_lag,
            entry_bound,
            warnings: size_warning(a).into_iter().collect(),
        })
    }

    pub fn exit_code(&self) -> i32 {
        match (&self.witness, &self.obstruction) {
            (Some(_), _) => EXIT_OK,
            (None, Some(_)) => EXIT_DISTINCT,
            (None, None) => EXIT_INCONCLUSIVE,
        }
    }
}

impl Render for SeSearchReport {
    fn text(&self) -> String {
        let mut pairs = vec![("result", self.result.clone())];
        if let Some(w) = &self.witness {
            pairs.push(("lag", w.lag.to_string()));
            pairs.push(("R", matrix_inline(&w.r)));
            pairs.push(("S", matrix_inline(&w.s)));
        }
        if let Some(o) = &self.obstruction {
            pairs.push(("obstruction", o.clone()));
        }
        pairs.push(("definitive", self.definitive.to_string()));
        aligned(&pairs)
    }
}

/// Result of `conj-search`: `U` with `U A U^-1 = B`, or why none exists.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjSearchReport {
    pub result: String,
    #[serde_as(as = "Option<Rows>")]
    pub conjugator: Option<IntMatrix>,
    pub verified: Option<bool>,
    pub obstruction: Option<String>,
    pub depth: usize,
    pub warnings: Vec<String>,
}

impl ConjSearchReport {
    pub fn new(a: &IntMatrix, b: &IntMatrix, depth: usize) -> Result<Self, CliError> {
        let found = conjugacy_search(a, b, depth)?;
        let warnings = size_warning(a).into_iter().collect();
        Ok(match found {
            Conjugacy::Conjugate(u) => ConjSearchReport {
                result: "Conjugate".to_string(),
                verified: Some(certifies(&u, a, b)),
                conjugator: Some(u),
                obstruction: None,
                depth,
                warnings,
            },
            Conjugacy::NotConjugate(o) => ConjSearchReport {
                result: "NotConjugate".to_string(),
                conjugator: None,
                verified: None,
                obstruction: Some(o.to_string()),
                depth,
                warnings,
            },
            Conjugacy::Unknown { depth } => ConjSearchReport {
                result: "Inconclusive".to_string(),
                conjugator: None,
                verified: None,
                obstruction: None,
                depth,
                warnings,
            },
        })
    }

    pub fn exit_code(&self) -> i32 {
        match self.result.as_str() {
            "Conjugate" => EXIT_OK,
            "NotConjugate" => EXIT_DISTINCT,
            _ => EXIT_INCONCLUSIVE,
        }
    }
}

impl Render for ConjSearchReport {
    fn text(&self) -> String {
        let mut pairs = vec![("result", self.result.clone())];
        if let Some(u) = &self.conjugator {
            pairs.push(("conjugator", matrix_inline(u)));
        }
        if let Some(o) = &self.obstruction {
            pairs.push(("obstruction", o.clone()));
        }
        aligned(&pairs)
    }
}

/// The dilated matrix. Text output is a plain matrix that `parse_matrix`
/// reads back; JSON output is `{"rows": ...}`.
#[serde_as]
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationReport {
    #[serde_as(as = "Rows")]
    pub rows: IntMatrix,
}

impl DilationReport {
    pub fn new(a: &IntMatrix) -> Result<Self, CliError> {
        Ok(DilationReport {
            rows: edge_dilation(a)?,
        })
    }
}

impl Render for DilationReport {
    fn text(&self) -> String {
        self.rows.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().copied())).unwrap()
    }

    const A2: &[&[i64]] = &[&[5, 2], &[2, 1]];
    const A3: &[&[i64]] = &[&[5, 1], &[4, 1]];

    #[test]
    fn invariant_report_for_a2() {
        let r = InvariantReport::new(&m(A2)).unwrap();
        assert_eq!(r.k0.to_string(), "Z_2 + Z_2");
        assert_eq!(r.alexander.as_ref().unwrap().to_string(), "t^2 - 6t + 1");
        assert_eq!(r.h1.as_ref().unwrap().to_string(), "Z + Z_2 + Z_2");
        assert_eq!(r.theorem1_check, Some(true));
        assert_eq!(r.irreducible, Some(true));
        assert_eq!(r.primitive, Some(true));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn identity_report() {
        let r = InvariantReport::new(&IntMatrix::identity(2)).unwrap();
        assert_eq!(r.k0.to_string(), "Z^2");
        assert_eq!(r.h1.unwrap().to_string(), "Z^3");
        assert_eq!(r.primitive, Some(false));
    }

    #[test]
    fn determinant_gate() {
        let r = InvariantReport::new(&m(&[&[2, 0], &[0, 1]])).unwrap();
        assert_eq!(r.k0.to_string(), "Z");
        assert_eq!(r.k1.to_string(), "Z");
        assert_eq!(
            (r.h1, r.alexander, r.theorem1_check, r.normalized),
            (None, None, None, None)
        );
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].contains("det = 2"));
    }

    #[test]
    fn negative_entries_skip_graph_predicates() {
        let r = InvariantReport::new(&m(&[&[-5, -2], &[-2, -1]])).unwrap();
        assert_eq!((r.irreducible, r.primitive), (None, None));
        assert_eq!(r.normalized, Some(true));
        assert_eq!(r.k0.to_string(), "Z_2 + Z_4");
        assert_eq!(r.normalized_k0.unwrap().to_string(), "Z_2 + Z_2");
    }

    #[test]
    fn json_round_trips() {
        let mut big = m(&[&[1, 0], &[0, 1]]).to_rows();
        big[0][1] = "-123456789012345678901234567890".parse().unwrap();
        let reports = [
            InvariantReport::new(&m(A2)).unwrap(),
            InvariantReport::new(&m(&[&[2, 0], &[0, 1]])).unwrap(),
            InvariantReport::new(&IntMatrix::from_rows(big).unwrap()).unwrap(),
        ];
        for r in reports {
            let back: InvariantReport = serde_json::from_str(&r.json()).unwrap();
            assert_eq!(back, r);
        }
        let c = CompareReport::new(&m(A2), &m(A2), 2).unwrap();
        assert_eq!(serde_json::from_str::<CompareReport>(&c.json()).unwrap(), c);
        let s = SnfReport::new(&m(&[&[2, 4], &[6, 8]]));
        assert_eq!(serde_json::from_str::<SnfReport>(&s.json()).unwrap(), s);
    }

    #[test]
    fn big_entries_are_plain_json_numbers() {
        let a = m(&[&[1, 0], &[0, 1]]).to_rows();
        let mut a = a;
        a[0][1] = "98765432109876543210".parse().unwrap();
        let r = InvariantReport::new(&IntMatrix::from_rows(a).unwrap()).unwrap();
        assert!(r
            .json()
            .contains("[\n      1,\n      98765432109876543210\n    ]"));
    }

    #[test]
    fn text_and_json_agree() {
        let r = InvariantReport::new(&m(A2)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.json()).unwrap();
        for line in r.text().lines() {
            let (key, value) = line.split_once(':').unwrap();
            let value = value.trim();
            match &v[key] {
                serde_json::Value::String(s) => assert_eq!(s, value, "{key}"),
                serde_json::Value::Null => assert_eq!(value, "-", "{key}"),
                serde_json::Value::Array(_) => assert_eq!(value, matrix_inline(&r.matrix)),
                other => assert_eq!(other.to_string(), value, "{key}"),
            }
        }
    }

    #[test]
    fn compare_reports() {
        let c = CompareReport::new(&m(A2), &m(A3), 4).unwrap();
        assert_eq!(c.verdict, "Distinct");
        assert_eq!(c.witness, "K0: Z_2 + Z_2 vs Z_4");
        assert_eq!(c.exit_code(), EXIT_DISTINCT);
        assert_eq!(c.invariant.as_deref(), Some("K0"));

        let c = CompareReport::new(&m(A2), &m(A2), 4).unwrap();
        assert_eq!(c.exit_code(), EXIT_OK);
        assert_eq!(c.certificate, Some(IntMatrix::identity(2)));
        assert_eq!(c.verified, Some(true));
        assert_eq!(
            c.text(),
            "verdict: Homeomorphic\nwitness: conjugator [[1, 0], [0, 1]]\n"
        );

        assert!(matches!(
            CompareReport::new(&m(A2), &m(&[&[2, 0], &[0, 1]]), 4),
            Err(CliError::Core(ckbundle_core::Error::NotUnimodular { .. }))
        ));
    }

    #[test]
    fn se_search_report_for_a2_a3() {
        let r = SeSearchReport::new(&m(A2), &m(A3), 3, 6).unwrap();
        assert_eq!(r.witness, None);
        assert_eq!(r.obstruction.as_deref(), Some("K0: Z_2 + Z_2 vs Z_4"));
        assert!(r.definitive);
        assert_eq!(r.exit_code(), EXIT_DISTINCT);

        let r = SeSearchReport::new(&m(A2), &m(A2), 3, 6).unwrap();
        assert_eq!(r.exit_code(), EXIT_OK);
        assert_eq!(r.verified, Some(true));
    }

    #[test]
    fn dilation_text_reparses() {
        let d = DilationReport::new(&m(&[&[2]])).unwrap();
        assert_eq!(d.text(), "1 1\n1 1\n");
        assert_eq!(crate::parse_matrix(&d.text()).unwrap(), d.rows);
        assert_eq!(crate::parse_matrix(&d.json()).unwrap(), d.rows);
    }
}
