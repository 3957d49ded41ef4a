use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::Rng;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, Mat};

/// A point of projective space with a fixed stored representative.
///
/// Equality, hashing and ordering use the representative scaled so that its
/// first nonzero coordinate is 1.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<FieldElem>,
}

impl ProjPoint {
    /// Normalized point (leading nonzero coordinate 1).
    pub fn new(coords: Vec<FieldElem>) -> Result<Self> {
        Ok(ProjPoint::from_representative(coords)?.normalized())
    }

    /// Keeps the given scaling as the stored representative.
    pub fn from_representative(coords: Vec<FieldElem>) -> Result<Self> {
        let Some(first) = coords.first() else {
            return Err(Error::Degenerate("point with no coordinates".into()));
        };
        let field = first.field();
        if let Some(bad) = coords.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        if coords.iter().all(FieldElem::is_zero) {
            return Err(Error::Degenerate("all coordinates vanish".into()));
        }
        Ok(ProjPoint { coords })
    }

    pub fn from_ints(field: Field, coords: &[i64]) -> Result<Self> {
        ProjPoint::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn parse(field: Field, coords: &[impl AsRef<str>]) -> Result<Self> {
        let c = coords
            .iter()
            .map(|s| field.parse_elem(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        ProjPoint::new(c)
    }

    pub fn coords(&self) -> &[FieldElem] {
        &self.coords
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Number of homogeneous coordinates (`n + 1`).
    pub fn nvars(&self) -> usize {
        self.coords.len()
    }

    /// Dimension `n` of the ambient projective space.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    fn is_normalized(&self) -> bool {
        self.coords.iter().find(|c| !c.is_zero()).is_some_and(FieldElem::is_one)
    }

    pub fn normalized(&self) -> ProjPoint {
        if self.is_normalized() {
            return self.clone();
        }
        let lead = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero point");
        let inv = lead.inv().expect("nonzero");
        ProjPoint {
            coords: self.coords.iter().map(|c| c * &inv).collect(),
        }
    }

    pub fn rescaled(&self, c: &FieldElem) -> Result<ProjPoint> {
        if c.is_zero() {
            return Err(Error::Degenerate("rescaling by zero".into()));
        }
        ProjPoint::from_representative(self.coords.iter().map(|x| x * c).collect())
    }

    /// `sum x_i y_i` between representatives.
    pub fn pairing(&self, other: &ProjPoint) -> FieldElem {
        assert_eq!(self.nvars(), other.nvars(), "pairing points of different spaces");
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(self.field().zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }

    fn key(&self) -> Vec<FieldElem> {
        self.normalized().coords
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.nvars() == other.nvars() && self.key() == other.key()
    }
}

impl Eq for ProjPoint {}

impl Hash for ProjPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for ProjPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(":"))
    }
}

/// Whether the point `p` lies on the hyperplane with dual coordinates `h`.
pub fn incidence(p: &ProjPoint, h: &ProjPoint) -> bool {
    p.pairing(h).is_zero()
}

/// Dual coordinates of the line through two distinct points of a plane.
pub fn dual_line_through(p1: &ProjPoint, p2: &ProjPoint) -> Result<ProjPoint> {
    if p1.nvars() != 3 || p2.nvars() != 3 {
        return Err(Error::Precondition("dual_line_through needs points of a plane".into()));
    }
    if p1 == p2 {
        return Err(Error::Degenerate(format!("{p1} and {p2} coincide")));
    }
    let (a, b) = (p1.coords(), p2.coords());
    ProjPoint::new(vec![
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ])
}

/// All points of `P^n(F_p)` in a fixed order: grouped by the position of the
/// leading 1, later coordinates counting up in residue order.
pub fn projective_points(field: Field, n: usize) -> Result<Vec<ProjPoint>> {
    let Field::Prime(p) = field else {
        return Err(Error::Strategy("enumerating projective points needs a prime field".into()));
    };
    let mut out = Vec::new();
    for lead in 0..=n {
        let free = n - lead;
        let count = (p as u64).pow(free as u32);
        for mut idx in 0..count {
            let mut coords = vec![field.zero(); n + 1];
            coords[lead] = field.one();
            for j in (lead + 1..=n).rev() {
                coords[j] = field.from_i64((idx % p as u64) as i64);
                idx /= p as u64;
            }
            out.push(ProjPoint { coords });
        }
    }
    Ok(out)
}

/// Random point of `P^n`: uniform over `P^n(F_p)` (every point has the same
/// number of nonzero representatives), or integer coordinates in
/// `[-bound, bound]` over Q.
pub fn random_point<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R, bound: i64) -> ProjPoint {
    loop {
        let coords: Vec<FieldElem> = (0..=n).map(|_| field.random(rng, bound)).collect();
        if coords.iter().all(FieldElem::is_zero) {
            continue;
        }
        return ProjPoint::new(coords).expect("nonzero");
    }
}

/// Deterministic parametrization of the hyperplane `sum h_i X_i = 0`.
///
/// Solves for the last coordinate `k` with `h_k != 0`; the returned
/// `(n+1) x n` matrix has the remaining unit vectors, corrected in row `k`,
/// as columns. Internal coordinates of a point on the hyperplane are its
/// coordinates with index `k` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneChart {
    pub basis: Mat,
    pub solved: usize,
}

impl HyperplaneChart {
    pub fn new(h: &ProjPoint) -> Result<Self> {
        let field = h.field();
        let n1 = h.nvars();
        if n1 < 2 {
            return Err(Error::Degenerate("hyperplane of P^0".into()));
        }
        let coords = h.coords();
        let k = (0..n1).rev().find(|&i| !coords[i].is_zero()).expect("nonzero");
        let inv = coords[k].inv().expect("nonzero");
        let free: Vec<usize> = (0..n1).filter(|&i| i != k).collect();
        let basis = Mat::from_fn(field, n1, n1 - 1, |i, j| {
            let fj = free[j];
            if i == fj {
                field.one()
            } else if i == k {
                -&(&coords[fj] * &inv)
            } else {
                field.zero()
            }
        });
        Ok(HyperplaneChart { basis, solved: k })
    }

    /// Internal coordinates of a point assumed to lie on the hyperplane.
    pub fn coordinates(&self, y: &ProjPoint) -> Vec<FieldElem> {
        y.coords()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != self.solved)
            .map(|(_, c)| c.clone())
            .collect()
    }

    /// Ambient representative of internal coordinates `t`.
    pub fn embed(&self, t: &[FieldElem]) -> Vec<FieldElem> {
        self.basis.apply(t)
    }

    /// Points of the hyperplane over a prime field.
    pub fn points(&self) -> Result<Vec<ProjPoint>> {
        let field = self.basis.field();
        let inner = projective_points(field, self.basis.cols() - 1)?;
        inner
            .iter()
            .map(|t| ProjPoint::new(self.embed(t.coords())))
            .collect()
    }
}
