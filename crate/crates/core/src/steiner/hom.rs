use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::presentation::SteinerPresentation;
use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem, Mat};

/// Coefficient bound for random combinations over Q.
const RATIONAL_BOUND: i64 = 1000;
/// Exhaustive search over `F_p` is used for hom spaces of dimension <= 2
/// when `p` is at most this.
const EXHAUSTIVE_PRIME_LIMIT: u32 = 10_007;

/// A morphism of presentations: `A` on the `O(-1)` parts, `B` on the `O`
/// parts, with `B N1_i = N2_i A` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub a: Mat,
    pub b: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    pub basis: Vec<HomElement>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn combination(&self, coeffs: &[FieldElem]) -> HomElement {
        assert_eq!(coeffs.len(), self.dim(), "one coefficient per basis element");
        let first = &self.basis[0];
        let field = first.a.field();
        let mut a = Mat::zeros(field, first.a.rows(), first.a.cols());
        let mut b = Mat::zeros(field, first.b.rows(), first.b.cols());
        for (c, e) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            a = a.add(&e.a.scale(c)).expect("same shape");
            b = b.add(&e.b.scale(c)).expect("same shape");
        }
        HomElement { a, b }
    }
}

/// Whether `(A, B)` intertwines the two pencils exactly.
pub fn intertwines(p1: &SteinerPresentation, p2: &SteinerPresentation, h: &HomElement) -> bool {
    if h.a.shape() != (p2.m(), p1.m()) || h.b.shape() != (p2.total(), p1.total()) {
        return false;
    }
    p1.matrices().iter().zip(p2.matrices()).all(|(n1, n2)| {
        let lhs = h.b.mul(n1).expect("shapes checked");
        let rhs = n2.mul(&h.a).expect("shapes checked");
        lhs == rhs
    })
}

pub fn hom_space(p1: &SteinerPresentation, p2: &SteinerPresentation) -> Result<HomSpace> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch(p1.field(), p2.field()));
    }
    if p1.nvars() != p2.nvars() {
        return Err(Error::ShapeMismatch(format!(
            "pencils in {} and {} variables",
            p1.nvars(),
            p2.nvars()
        )));
    }
    let field = p1.field();
    let (m1, t1, m2, t2) = (p1.m(), p1.total(), p2.m(), p2.total());
    let a_vars = m2 * m1;
    let nvars = a_vars + t2 * t1;
    let a_idx = |r: usize, c: usize| r * m1 + c;
    let b_idx = |r: usize, c: usize| a_vars + r * t1 + c;
    let eqs = p1.nvars() * t2 * m1;
    let mut sys = Mat::zeros(field, eqs, nvars);
    let mut row = 0;
    for (n1, n2) in p1.matrices().iter().zip(p2.matrices()) {
        for u in 0..t2 {
            for v in 0..m1 {
                for w in 0..t1 {
                    let c = n1.get(w, v);
                    if !c.is_zero() {
                        sys.set(row, b_idx(u, w), c.clone());
                    }
                }
                for w in 0..m2 {
                    let c = n2.get(u, w);
                    if !c.is_zero() {
                        let cur = sys.get(row, a_idx(w, v)) - c;
                        sys.set(row, a_idx(w, v), cur);
                    }
                }
                row += 1;
            }
        }
    }
    let basis = sys
        .kernel_vectors()
        .into_iter()
        .map(|v| HomElement {
            a: Mat::from_entries(field, m2, m1, v[..a_vars].to_vec()).expect("shape"),
            b: Mat::from_entries(field, t2, t1, v[a_vars..].to_vec()).expect("shape"),
        })
        .collect();
    Ok(HomSpace { basis })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    #[serde(skip)]
    pub witness: Option<HomElement>,
    pub hom_dim: usize,
    /// `"direct"` (dimension <= 1), `"exhaustive"` or `"random"`.
    pub method: String,
    /// A negative answer that rests on random trials.
    pub probabilistic: bool,
    /// Per-trial bound `(m + total) / |S|` on missing an isomorphism.
    pub failure_bound_per_trial: Option<String>,
    pub trials: usize,
    pub reason: Option<String>,
}

impl IsoOutcome {
    fn negative(reason: String) -> Self {
        IsoOutcome {
            isomorphic: false,
            witness: None,
            hom_dim: 0,
            method: "direct".into(),
            probabilistic: false,
            failure_bound_per_trial: None,
            trials: 0,
            reason: Some(reason),
        }
    }
}

fn is_iso_witness(p1: &SteinerPresentation, p2: &SteinerPresentation, h: &HomElement) -> bool {
    h.a.is_invertible() && h.b.is_invertible() && intertwines(p1, p2, h)
}

/// Searches the hom space for an element with both components invertible.
pub fn is_isomorphic(p1: &SteinerPresentation, p2: &SteinerPresentation, trials: usize, seed: u64) -> Result<IsoOutcome> {
    if trials == 0 {
        return Err(Error::Precondition("at least one trial is required".into()));
    }
    if p1.field() != p2.field() {
        return Ok(IsoOutcome::negative(format!("fields differ: {} vs {}", p1.field(), p2.field())));
    }
    if p1.nvars() != p2.nvars() || p1.m() != p2.m() || p1.total() != p2.total() {
        return Ok(IsoOutcome::negative(format!(
            "shapes differ: (nvars, m, total) = ({}, {}, {}) vs ({}, {}, {})",
            p1.nvars(),
            p1.m(),
            p1.total(),
            p2.nvars(),
            p2.m(),
            p2.total()
        )));
    }
    let hom = hom_space(p1, p2)?;
    let dim = hom.dim();
    let field = p1.field();
    let mut out = IsoOutcome {
        isomorphic: false,
        witness: None,
        hom_dim: dim,
        method: "direct".into(),
        probabilistic: false,
        failure_bound_per_trial: None,
        trials: 0,
        reason: None,
    };
    let accept = |out: &mut IsoOutcome, h: HomElement| -> Result<()> {
        if !is_iso_witness(p1, p2, &h) {
            return Err(Error::Verification("isomorphism witness failed verification".into()));
        }
        out.isomorphic = true;
        out.witness = Some(h);
        Ok(())
    };
    if dim == 0 {
        out.reason = Some("no nonzero morphisms".into());
        return Ok(out);
    }
    if dim == 1 {
        let h = hom.basis[0].clone();
        if h.b.is_invertible() && h.a.is_invertible() {
            accept(&mut out, h)?;
        } else {
            out.reason = Some("the unique morphism up to scalar is not invertible".into());
        }
        return Ok(out);
    }
    if let Field::Prime(p) = field {
        if dim == 2 && p <= EXHAUSTIVE_PRIME_LIMIT {
            out.method = "exhaustive".into();
            let candidates = std::iter::once(vec![field.zero(), field.one()])
                .chain((0..p).map(|c| vec![field.one(), field.from_i64(c as i64)]));
            for coeffs in candidates {
                out.trials += 1;
                let h = hom.combination(&coeffs);
                if h.b.is_invertible() && h.a.is_invertible() {
                    accept(&mut out, h)?;
                    return Ok(out);
                }
            }
            out.reason = Some("no invertible element on any line of the hom space".into());
            return Ok(out);
        }
    }
    out.method = "random".into();
    let sample_size: u64 = match field {
        Field::Rational => 2 * RATIONAL_BOUND as u64 + 1,
        Field::Prime(p) => p as u64,
    };
    out.failure_bound_per_trial = Some(format!("{}/{}", p1.m() + p1.total(), sample_size));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        out.trials += 1;
        let coeffs: Vec<FieldElem> = (0..dim).map(|_| field.random(&mut rng, RATIONAL_BOUND)).collect();
        let h = hom.combination(&coeffs);
        if h.b.is_invertible() && h.a.is_invertible() {
            accept(&mut out, h)?;
            return Ok(out);
        }
    }
    out.probabilistic = true;
    out.reason = Some(format!("no invertible element among {trials} random combinations"));
    Ok(out)
}
