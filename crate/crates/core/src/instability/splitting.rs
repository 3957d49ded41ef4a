use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{FieldElem, Mat};
use crate::polygeom::ProjPoint;
use crate::steiner::SteinerPresentation;

/// Degrees `a_1 >= ... >= a_s >= 0` of the restriction to a line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingType {
    pub degrees: Vec<usize>,
}

impl SplittingType {
    pub fn zeros(&self) -> usize {
        self.degrees.iter().filter(|&&a| a == 0).count()
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// No two degrees differ by more than one.
    pub fn is_balanced(&self) -> bool {
        match (self.degrees.first(), self.degrees.last()) {
            (Some(hi), Some(lo)) => hi - lo <= 1,
            _ => true,
        }
    }
}

/// Pencil on the line `X = s a + w b`: the pair `(A, B)` with
/// `N = s A + w B`.
pub fn line_pencil(p: &SteinerPresentation, a: &ProjPoint, b: &ProjPoint) -> Result<(Mat, Mat)> {
    for x in [a, b] {
        if x.field() != p.field() {
            return Err(Error::FieldMismatch(p.field(), x.field()));
        }
        if x.nvars() != p.nvars() {
            return Err(Error::ShapeMismatch("line point in a different space".into()));
        }
    }
    if a == b {
        return Err(Error::Degenerate("line through a single point".into()));
    }
    Ok((p.pencil_at(a.coords()), p.pencil_at(b.coords())))
}

/// `h^0(E_l(-t)) = dim ker (H^1(O(-1-t))^m -> H^1(O(-t))^total)` for `t >= 1`.
///
/// `H^1(O(-d))` has basis `s^-i w^-(d-i)` for `0 < i < d`; multiplication by
/// `s` lowers `i` and kills `i = 1`, multiplication by `w` kills `i = d-1`.
fn twisted_sections(a: &Mat, b: &Mat, t: usize) -> usize {
    let (tau, m) = a.shape();
    let field = a.field();
    // source index (k, i) for i in 1..=t; target (row, i') for i' in 1..t
    let src = |k: usize, i: usize| k * t + (i - 1);
    let tgt = |row: usize, i: usize| row * (t - 1) + (i - 1);
    let mut phi = Mat::zeros(field, tau * (t - 1), m * t);
    let add = |phi: &mut Mat, r: usize, c: usize, v: &FieldElem| {
        let cur = phi.get(r, c) + v;
        phi.set(r, c, cur);
    };
    for k in 0..m {
        for i in 1..=t {
            for row in 0..tau {
                if i >= 2 && !a.get(row, k).is_zero() {
                    add(&mut phi, tgt(row, i - 1), src(k, i), a.get(row, k));
                }
                if i < t && !b.get(row, k).is_zero() {
                    add(&mut phi, tgt(row, i), src(k, i), b.get(row, k));
                }
            }
        }
    }
    m * t - phi.rank()
}

/// Splitting type of `E` on the line through `a` and `b`.
pub fn splitting_type(p: &SteinerPresentation, a: &ProjPoint, b: &ProjPoint) -> Result<SplittingType> {
    let (pa, pb) = line_pencil(p, a, b)?;
    let m = p.m();
    let g: Vec<usize> = (1..=m + 2).map(|t| twisted_sections(&pa, &pb, t)).collect();
    if g[0] != m {
        return Err(Error::Verification(format!("h^0(E_l(-1)) = {} differs from m = {m}", g[0])));
    }
    // at_least[t-1] = #{a_i >= t}
    let mut at_least = Vec::with_capacity(m + 1);
    for t in 0..=m {
        let (hi, lo) = (g[t], g[t + 1]);
        if lo > hi {
            return Err(Error::Verification("section counts increase with the twist".into()));
        }
        at_least.push(hi - lo);
    }
    if at_least.windows(2).any(|w| w[1] > w[0]) || at_least[m] != 0 {
        return Err(Error::Verification("inconsistent section counts; not a bundle on this line".into()));
    }
    let positive = at_least[0];
    let rank = p.rank();
    if positive > rank {
        return Err(Error::Verification(format!("{positive} positive summands exceed rank {rank}")));
    }
    let mut degrees = Vec::with_capacity(rank);
    for t in (1..=m).rev() {
        let exactly = at_least[t - 1] - at_least.get(t).copied().unwrap_or(0);
        degrees.extend(std::iter::repeat_n(t, exactly));
    }
    degrees.extend(std::iter::repeat_n(0, rank - positive));
    let st = SplittingType { degrees };
    if st.sum() != m {
        return Err(Error::Verification(format!("degrees sum to {} instead of {m}", st.sum())));
    }
    Ok(st)
}
