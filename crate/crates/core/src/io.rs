//! File formats.
//!
//! Inputs are JSON; structured outputs are JSON with every float written to
//! 17 significant digits, so a value read back is bit-identical. Traces and
//! figure data are CSV. Non-finite numbers become `null` in JSON, and the
//! records that can be infinite carry an explicit flag next to them.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bregman::{BregmanDirection, Legendre};
use crate::error::{Error, Result};
use crate::geometry::ConicBase;
use crate::linalg::Matrix;
use crate::step::{LinfProblem, SocConstraint, SocpProblem};
use crate::zoo::ConeDescriptor;
use crate::Extended;

/// `{:.16e}` for finite values, `inf`/`-inf`/`nan` otherwise.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + std::io::Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

/// Compact JSON with 17-digit floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17);
    value
        .serialize(&mut ser)
        .expect("serializing plain data cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Comma-separated decimals, e.g. `"1,0.5,-2"`.
pub fn parse_vector(s: &str) -> Result<Vec<f64>> {
    let out = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {t:?}")))
        })
        .collect::<Result<Vec<f64>>>()?;
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parse(format!("non-finite entry in {s:?}")));
    }
    Ok(out)
}

fn matrix(rows: &[Vec<f64>], what: &str) -> Result<Matrix> {
    Matrix::from_rows(rows).ok_or_else(|| Error::Parse(format!("{what}: rows have unequal lengths")))
}

/// `{"n": int, "vectors": [[...], ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BaseFile {
    pub n: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl BaseFile {
    pub fn to_base(&self) -> Result<ConicBase> {
        if let Some(v) = self.vectors.iter().find(|v| v.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        ConicBase::new(self.vectors.clone())
    }

    pub fn from_base(base: &ConicBase) -> Self {
        Self {
            n: base.dim(),
            vectors: base.vectors().to_vec(),
        }
    }
}

/// `{"variant": ..., "n": int, "p": float?, "blocks": [...]?, "base": {...}?}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeFile {
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<ConeFile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseFile>,
}

impl ConeFile {
    pub fn to_cone(&self) -> Result<ConeDescriptor> {
        let n = || {
            self.n
                .ok_or_else(|| Error::Parse(format!("cone variant {:?} needs \"n\"", self.variant)))
        };
        let cone = match self.variant.as_str() {
            "orthant" => ConeDescriptor::Orthant(n()?),
            "soc" => ConeDescriptor::Soc(n()?),
            "psd" => ConeDescriptor::Psd(n()?),
            "dnn" => ConeDescriptor::Dnn(n()?),
            "pcone" => ConeDescriptor::PCone {
                n: n()?,
                p: self.p.ok_or_else(|| Error::Parse("pcone needs \"p\"".into()))?,
            },
            "product" => ConeDescriptor::Product(
                self.blocks
                    .as_ref()
                    .ok_or_else(|| Error::Parse("product needs \"blocks\"".into()))?
                    .iter()
                    .map(ConeFile::to_cone)
                    .collect::<Result<_>>()?,
            ),
            "polyhedral" => ConeDescriptor::Polyhedral(
                self.base
                    .as_ref()
                    .ok_or_else(|| Error::Parse("polyhedral needs \"base\"".into()))?
                    .to_base()?,
            ),
            other => return Err(Error::Parse(format!("unknown cone variant {other:?}"))),
        };
        cone.validate()?;
        Ok(cone)
    }

    pub fn from_cone(c: &ConeDescriptor) -> Self {
        let simple = |variant: &str, n: usize| ConeFile {
            variant: variant.into(),
            n: Some(n),
            p: None,
            blocks: None,
            base: None,
        };
        match c {
            ConeDescriptor::Orthant(n) => simple("orthant", *n),
            ConeDescriptor::Soc(n) => simple("soc", *n),
            ConeDescriptor::Psd(n) => simple("psd", *n),
            ConeDescriptor::Dnn(n) => simple("dnn", *n),
            ConeDescriptor::PCone { n, p } => ConeFile {
                p: Some(*p),
                ..simple("pcone", *n)
            },
            ConeDescriptor::Product(blocks) => ConeFile {
                variant: "product".into(),
                n: Some(c.dim()),
                p: None,
                blocks: Some(blocks.iter().map(ConeFile::from_cone).collect()),
                base: None,
            },
            ConeDescriptor::Polyhedral(b) => ConeFile {
                variant: "polyhedral".into(),
                n: Some(b.dim()),
                p: None,
                blocks: None,
                base: Some(BaseFile::from_base(b)),
            },
        }
    }
}

/// `{"family": "euclidean"|"pnorm"|"mahalanobis", "p": float?, "A": [[...]]?}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegendreFile {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<Vec<f64>>>,
}

impl LegendreFile {
    pub fn to_legendre(&self) -> Result<Legendre> {
        match self.family.as_str() {
            "euclidean" => Ok(Legendre::Euclidean),
            "pnorm" => Legendre::pnorm(self.p.ok_or_else(|| Error::Parse("pnorm needs \"p\"".into()))?),
            "mahalanobis" => {
                let rows = self
                    .a
                    .as_ref()
                    .ok_or_else(|| Error::Parse("mahalanobis needs \"A\"".into()))?;
                Legendre::mahalanobis(matrix(rows, "A")?)
            }
            other => Err(Error::Parse(format!("unknown Legendre family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SocFile {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub delta: f64,
}

/// Problem file, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ProblemFile {
    /// `min ½‖Ax − b‖²` s.t. `‖Cx − d‖∞ ≤ τ`
    Linf {
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        b: Vec<f64>,
        #[serde(rename = "C")]
        c: Vec<Vec<f64>>,
        d: Vec<f64>,
        tau: f64,
    },
    /// `min ½xᵀQx + qᵀx` s.t. `‖A_j x − b_j‖ ≤ c_jᵀx + δ_j`
    Socp {
        #[serde(rename = "Q")]
        q_mat: Vec<Vec<f64>>,
        q: Vec<f64>,
        constraints: Vec<SocFile>,
    },
}

pub enum Problem {
    Linf(LinfProblem),
    Socp(SocpProblem),
}

impl ProblemFile {
    pub fn to_problem(&self) -> Result<Problem> {
        match self {
            ProblemFile::Linf { a, b, c, d, tau } => Ok(Problem::Linf(LinfProblem::new(
                matrix(a, "A")?,
                b.clone(),
                matrix(c, "C")?,
                d.clone(),
                *tau,
            )?)),
            ProblemFile::Socp { q_mat, q, constraints } => {
                let cons = constraints
                    .iter()
                    .map(|s| {
                        Ok(SocConstraint {
                            a: matrix(&s.a, "A_j")?,
                            b: s.b.clone(),
                            c: s.c.clone(),
                            delta: s.delta,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Problem::Socp(SocpProblem::new(matrix(q_mat, "Q")?, q.clone(), cons)?))
            }
        }
    }

    pub fn from_linf(p: &LinfProblem) -> Self {
        ProblemFile::Linf {
            a: p.a.to_rows(),
            b: p.b.clone(),
            c: p.c.to_rows(),
            d: p.dvec.clone(),
            tau: p.tau,
        }
    }

    pub fn from_socp(p: &SocpProblem) -> Self {
        ProblemFile::Socp {
            q_mat: p.q_mat.to_rows(),
            q: p.q.clone(),
            constraints: p
                .constraints
                .iter()
                .map(|c| SocFile {
                    a: c.a.to_rows(),
                    b: c.b.clone(),
                    c: c.c.clone(),
                    delta: c.delta,
                })
                .collect(),
        }
    }
}

/// Finite value or `null` plus an `infinite` flag.
pub fn split_extended(v: Extended) -> (Option<f64>, bool) {
    (v.finite(), v.is_infinite())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircumOutput {
    pub d: Vec<f64>,
    pub norm_sq: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    pub aperture: f64,
    pub spectral_lo: f64,
    pub spectral_hi: f64,
    pub route: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthOutput {
    /// `null` when the depth is infinite.
    pub rho: Option<f64>,
    pub infinite: bool,
    pub binding: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepOutput {
    pub active: Vec<String>,
    pub d: Option<Vec<f64>>,
    pub norm_sq: Option<f64>,
    pub w: Vec<f64>,
    pub sigma: Option<f64>,
    pub sigma_infinite: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BregmanOutput {
    pub c_h: Vec<f64>,
    pub d_h: Vec<f64>,
    pub kappa: f64,
}

impl From<&BregmanDirection> for BregmanOutput {
    fn from(b: &BregmanDirection) -> Self {
        Self {
            c_h: b.c_h.clone(),
            d_h: b.d_h.clone(),
            kappa: b.kappa,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisOutput {
    pub samples: usize,
    pub seed: u64,
    pub holds: bool,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZooOutput {
    pub cone: ConeFile,
    pub dim: usize,
    /// Absent when the hypothesis fails for the cone.
    pub d: Option<Vec<f64>>,
    pub norm_sq: Option<f64>,
    pub jordan_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<HypothesisOutput>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub reports: Vec<crate::oracles::ProbeReport>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        let vals = [0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, std::f64::consts::PI];
        for v in vals {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
        let text = to_json(&vals.to_vec());
        let back: Vec<f64> = from_json(&text).unwrap();
        assert_eq!(back, vals);
        assert_eq!(to_json(&f64::INFINITY), "null\n");
    }

    #[test]
    fn cone_files() {
        let c = ConeDescriptor::Product(vec![
            ConeDescriptor::Orthant(1),
            ConeDescriptor::PCone { n: 3, p: 1.5 },
            ConeDescriptor::Polyhedral(ConicBase::new(vec![vec![1.0, 0.0]]).unwrap()),
        ]);
        let f = ConeFile::from_cone(&c);
        let back: ConeFile = from_json(&to_json(&f)).unwrap();
        assert_eq!(back.to_cone().unwrap(), c);

        let f: ConeFile = from_json(r#"{"variant": "soc", "n": 3}"#).unwrap();
        assert_eq!(f.to_cone().unwrap(), ConeDescriptor::Soc(3));
        let f: ConeFile = from_json(r#"{"variant": "cube", "n": 3}"#).unwrap();
        assert!(matches!(f.to_cone(), Err(Error::Parse(_))));
        let f: ConeFile = from_json(r#"{"variant": "soc", "n": 1}"#).unwrap();
        assert!(matches!(f.to_cone(), Err(Error::InvalidCone(_))));
    }

    #[test]
    fn base_and_vectors() {
        let f: BaseFile = from_json(r#"{"n": 2, "vectors": [[2, 0], [0, 3]]}"#).unwrap();
        let b = f.to_base().unwrap();
        assert_eq!(b.vectors(), &[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let f: BaseFile = from_json(r#"{"n": 3, "vectors": [[2, 0]]}"#).unwrap();
        assert!(f.to_base().is_err());
        assert_eq!(parse_vector("1, -0.5,2e1").unwrap(), vec![1.0, -0.5, 20.0]);
        assert!(parse_vector("1,,2").is_err());
        assert!(parse_vector("nan").is_err());
    }

    #[test]
    fn problem_files() {
        let text = r#"{"kind": "linf", "A": [[1, 0], [0, 1]], "b": [3, 3],
                       "C": [[1, 0], [0, 1]], "d": [0, 0], "tau": 1}"#;
        let f: ProblemFile = from_json(text).unwrap();
        let Problem::Linf(p) = f.to_problem().unwrap() else { panic!() };
        assert_eq!(ProblemFile::from_linf(&p), f);

        let text = r#"{"kind": "socp", "Q": [[1, 0], [0, 1]], "q": [-3, 0],
                       "constraints": [{"A": [[1, 0], [0, 1]], "b": [0, 0], "c": [0, 0], "delta": 1}]}"#;
        let f: ProblemFile = from_json(text).unwrap();
        let Problem::Socp(p) = f.to_problem().unwrap() else { panic!() };
        assert_eq!(ProblemFile::from_socp(&p), f);

        assert!(from_json::<ProblemFile>(r#"{"kind": "lp"}"#).is_err());
    }

    #[test]
    fn legendre_files() {
        let f: LegendreFile = from_json(r#"{"family": "mahalanobis", "A": [[2, 0], [0, 1]]}"#).unwrap();
        assert_eq!(f.to_legendre().unwrap().label(), "mahalanobis");
        let f: LegendreFile = from_json(r#"{"family": "pnorm", "p": 1.5}"#).unwrap();
        assert!(matches!(f.to_legendre(), Err(Error::InvalidLegendre(_))));
    }
}
