use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, Mat};
use crate::polygeom::ProjPoint;

/// Monomial order tag written with serialized presentations.
pub const MONOMIAL_ORDER: &str = "deglex";

/// How a presentation was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// From a point set in the dual space; the matrices are transposes of the
    /// multiplication maps between the cokernels of the evaluation maps.
    Logarithmic {
        r: usize,
        points: Vec<Vec<String>>,
        transposed: bool,
    },
    /// Banded coordinate matrix attached to the rational normal curve.
    Schwarzenberger { n: usize, m: usize, curve: String },
    /// Multiplication maps on sections of `O_X(twist - 1)`, `O_X(twist)`.
    Curve { form: String, degree: usize, twist: usize },
    /// Linear substitution `X = S t` applied to `parent`; `hyperplane` is
    /// set when `S` is the chart of a hyperplane.
    Restricted {
        parent: Box<Provenance>,
        substitution: Vec<Vec<String>>,
        hyperplane: Option<Vec<String>>,
    },
    Manual,
}

/// A pencil `N(X) = sum X_i N_i` of `total x m` matrices presenting
/// `0 -> O(-1)^m -> O^total -> E -> 0` on `P^(nvars-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerPresentation {
    field: Field,
    m: usize,
    total: usize,
    matrices: Vec<Mat>,
    provenance: Provenance,
}

impl SteinerPresentation {
    pub fn new(matrices: Vec<Mat>, provenance: Provenance) -> Result<Self> {
        let Some(first) = matrices.first() else {
            return Err(Error::ShapeMismatch("a pencil needs at least one matrix".into()));
        };
        let (field, (total, m)) = (first.field(), first.shape());
        for n in &matrices {
            if n.field() != field {
                return Err(Error::FieldMismatch(field, n.field()));
            }
            if n.shape() != (total, m) {
                return Err(Error::ShapeMismatch(format!(
                    "pencil matrices {}x{} and {}x{}",
                    total,
                    m,
                    n.rows(),
                    n.cols()
                )));
            }
        }
        if total <= m {
            return Err(Error::ShapeMismatch(format!("rank {total} - {m} is not positive")));
        }
        Ok(SteinerPresentation {
            field,
            m,
            total,
            matrices,
            provenance,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Number of variables `n + 1`.
    pub fn nvars(&self) -> usize {
        self.matrices.len()
    }

    /// Number of `O(-1)` summands, equal to the first Chern class.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of `O` summands.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn rank(&self) -> usize {
        self.total - self.m
    }

    pub fn c1(&self) -> usize {
        self.m
    }

    pub fn matrices(&self) -> &[Mat] {
        &self.matrices
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// `N(x)` at a coordinate vector.
    pub fn pencil_at(&self, x: &[FieldElem]) -> Mat {
        assert_eq!(x.len(), self.nvars(), "point dimension");
        let mut acc = Mat::zeros(self.field, self.total, self.m);
        for (xi, n) in x.iter().zip(&self.matrices) {
            if !xi.is_zero() {
                acc = acc.add(&n.scale(xi)).expect("same shape");
            }
        }
        acc
    }

    pub fn pencil_at_point(&self, x: &ProjPoint) -> Mat {
        self.pencil_at(x.coords())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&PresentationJson::from(self)).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("presentation JSON: {e}")))?;
        dto.try_into()
    }
}

/// Wire format of a presentation: exact scalars as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub field: String,
    pub nvars: usize,
    pub m: usize,
    pub total: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
    pub provenance: Provenance,
    pub monomial_order: String,
}

impl From<&SteinerPresentation> for PresentationJson {
    fn from(p: &SteinerPresentation) -> Self {
        PresentationJson {
            field: p.field.to_string(),
            nvars: p.nvars(),
            m: p.m,
            total: p.total,
            matrices: p.matrices.iter().map(Mat::to_string_rows).collect(),
            provenance: p.provenance.clone(),
            monomial_order: MONOMIAL_ORDER.to_string(),
        }
    }
}

impl TryFrom<PresentationJson> for SteinerPresentation {
    type Error = Error;

    fn try_from(dto: PresentationJson) -> Result<Self> {
        let field = Field::from_str(&dto.field)?;
        if dto.monomial_order != MONOMIAL_ORDER {
            return Err(Error::Parse(format!("unsupported monomial order {:?}", dto.monomial_order)));
        }
        if dto.matrices.len() != dto.nvars {
            return Err(Error::Parse(format!(
                "{} matrices for {} variables",
                dto.matrices.len(),
                dto.nvars
            )));
        }
        let mut mats = Vec::with_capacity(dto.nvars);
        for rows in &dto.matrices {
            if rows.len() != dto.total || rows.iter().any(|r| r.len() != dto.m) {
                return Err(Error::Parse(format!("matrix is not {}x{}", dto.total, dto.m)));
            }
            let entries = rows
                .iter()
                .flatten()
                .map(|s| field.parse_elem(s))
                .collect::<Result<Vec<FieldElem>>>()?;
            mats.push(Mat::from_entries(field, dto.total, dto.m, entries)?);
        }
        SteinerPresentation::new(mats, dto.provenance)
    }
}

pub(crate) fn point_strings(p: &ProjPoint) -> Vec<String> {
    p.coords().iter().map(ToString::to_string).collect()
}
