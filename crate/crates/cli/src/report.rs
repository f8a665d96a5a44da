//! Serializable reports. Field elements are carried as strings in the
//! polynomial text grammar so that rationals survive unchanged.

use flexlocus::flex::{ContactOrder, DegreeReport, FlexCertificate, UniqueLine};
use flexlocus::Field;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Contact order as JSON: a number, or the string `"infinity"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Contact(pub ContactOrder);

impl Serialize for Contact {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            ContactOrder::Finite(k) => s.serialize_u32(k),
            ContactOrder::Infinite => s.serialize_str("infinity"),
        }
    }
}

impl<'de> Deserialize<'de> for Contact {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(k) => Ok(Contact(ContactOrder::Finite(k))),
            Raw::Text(t) if t == "infinity" => Ok(Contact(ContactOrder::Infinite)),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad contact order '{t}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniqueness {
    Yes,
    NoEvidence,
    Inconclusive,
}

impl From<UniqueLine> for Uniqueness {
    fn from(u: UniqueLine) -> Self {
        match u {
            UniqueLine::Yes => Uniqueness::Yes,
            UniqueLine::NoEvidence => Uniqueness::NoEvidence,
            UniqueLine::Inconclusive => Uniqueness::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub field: String,
    pub point: Vec<String>,
    pub on_hypersurface: bool,
    pub is_flex: bool,
    pub line_direction: Option<Vec<String>>,
    pub unique_line: Uniqueness,
    pub contact_order: Option<Contact>,
}

impl CertificateReport {
    pub fn new<F: Field>(field: &F, cert: &FlexCertificate<F::Elem>) -> Self {
        Self {
            field: field.name(),
            point: format_point(field, &cert.point),
            on_hypersurface: cert.on_hypersurface,
            is_flex: cert.is_flex,
            line_direction: cert.line_direction.as_ref().map(|q| format_point(field, q)),
            unique_line: cert.unique_line.into(),
            contact_order: cert.contact_order.map(Contact),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("point ({}): ", self.point.join(","));
        if !self.is_flex {
            out.push_str("not a flex");
            return out;
        }
        out.push_str("flex");
        match (&self.line_direction, self.unique_line) {
            (Some(q), _) => {
                out.push_str(&format!(", unique flex line through ({})", q.join(",")));
                if let Some(Contact(c)) = self.contact_order {
                    out.push_str(&format!(", contact order {c}"));
                }
            }
            (None, Uniqueness::Inconclusive) => out.push_str(", flex line uniqueness inconclusive"),
            (None, _) => out.push_str(", singular point"),
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContactReport {
    pub field: String,
    pub point: Vec<String>,
    pub direction: Vec<String>,
    pub contact_order: Contact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub n: usize,
    pub d: u32,
    pub deg_rho: u64,
    pub deg_flex_locus: u64,
    /// Only defined when `d = n`.
    pub deg_line_locus: Option<u64>,
}

impl From<DegreeReport> for Degrees {
    fn from(r: DegreeReport) -> Self {
        Self {
            n: r.n,
            d: r.d,
            deg_rho: r.deg_rho,
            deg_flex_locus: r.deg_flex_locus,
            deg_line_locus: r.deg_line_locus,
        }
    }
}

impl Degrees {
    pub fn text(&self) -> String {
        let line = match self.deg_line_locus {
            Some(k) => k.to_string(),
            None => "n/a (d != n)".into(),
        };
        format!(
            "n = {}, d = {}\ndeg rho: {}\ndeg flex locus: {}\ndeg flex line locus: {}",
            self.n, self.d, self.deg_rho, self.deg_flex_locus, line
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoReport {
    pub field: String,
    pub rho: String,
    pub ell: String,
    /// Degree of `rho` as a form; `None` when it vanishes modulo `f`.
    pub degree: Option<u32>,
    pub degrees: Degrees,
}

impl RhoReport {
    pub fn text(&self) -> String {
        let degree = match self.degree {
            Some(k) => k.to_string(),
            None => "rho vanishes modulo f".into(),
        };
        format!(
            "rho = {}\ndegree: {} (formula: {})\ndeg flex locus: {}",
            self.rho, degree, self.degrees.deg_rho, self.degrees.deg_flex_locus
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultantReport {
    pub field: String,
    pub degrees: Vec<u32>,
    pub resultant: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// Coordinates scaled so that the first nonzero one is 1.
pub fn normalize<F: Field>(field: &F, p: &[F::Elem]) -> Vec<F::Elem> {
    match p.iter().find(|c| !field.is_zero(c)).and_then(|c| field.inv(c)) {
        Some(inv) => p.iter().map(|c| field.mul(c, &inv)).collect(),
        None => p.to_vec(),
    }
}

pub fn format_point<F: Field>(field: &F, p: &[F::Elem]) -> Vec<String> {
    normalize(field, p).iter().map(|c| field.format(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contact_order_json() {
        assert_eq!(serde_json::to_string(&Contact(ContactOrder::Infinite)).unwrap(), "\"infinity\"");
        assert_eq!(serde_json::to_string(&Contact(ContactOrder::Finite(4))).unwrap(), "4");
        let back: Contact = serde_json::from_str("\"infinity\"").unwrap();
        assert_eq!(back, Contact(ContactOrder::Infinite));
        assert!(serde_json::from_str::<Contact>("\"forever\"").is_err());
    }

    #[test]
    fn points_are_normalized() {
        let p = flexlocus::PrimeField::new(13).unwrap();
        assert_eq!(format_point(&p, &[0, 2, 4]), ["0", "1", "2"]);
    }
}
