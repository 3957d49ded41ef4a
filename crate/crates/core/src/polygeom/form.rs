use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{Field, FieldElem};

/// Binomial coefficient; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `d` in `nvars` variables.
pub fn monomial_count(nvars: usize, d: usize) -> usize {
    if nvars == 0 {
        return usize::from(d == 0);
    }
    binomial(nvars - 1 + d, d)
}

/// Exponent vectors of degree `d`, graded-lex with `Y0 > Y1 > ...`
/// (so `Y0^d` comes first and `Y_{nvars-1}^d` last).
pub fn monomials(nvars: usize, d: usize) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, d: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d as u32);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u32);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(nvars, d));
    if nvars == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// Monomial list plus reverse lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    exps: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, d: usize) -> Self {
        let exps = monomials(nvars, d);
        let index = exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        MonomialBasis { exps, index }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }

    pub fn position(&self, e: &[u32]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Values of every monomial at `y`.
    pub fn evaluate(&self, y: &[FieldElem]) -> Vec<FieldElem> {
        let field = y[0].field();
        let maxdeg = self.exps.first().map_or(0, |e| e.iter().sum::<u32>()) as usize;
        let powers: Vec<Vec<FieldElem>> = y
            .iter()
            .map(|c| {
                let mut p = vec![field.one()];
                for k in 1..=maxdeg {
                    let next = &p[k - 1] * c;
                    p.push(next);
                }
                p
            })
            .collect();
        self.exps
            .iter()
            .map(|e| {
                e.iter()
                    .enumerate()
                    .fold(field.one(), |acc, (i, &k)| &acc * &powers[i][k as usize])
            })
            .collect()
    }
}

/// Homogeneous form in `nvars` variables, coefficients in graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomForm {
    field: Field,
    nvars: usize,
    degree: usize,
    coeffs: Vec<FieldElem>,
}

impl HomForm {
    pub fn new(field: Field, nvars: usize, degree: usize, coeffs: Vec<FieldElem>) -> Result<Self> {
        let expected = monomial_count(nvars, degree);
        if coeffs.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for degree {degree} in {nvars} variables (need {expected})",
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(HomForm { field, nvars, degree, coeffs })
    }

    pub fn zero(field: Field, nvars: usize, degree: usize) -> Self {
        HomForm {
            field,
            nvars,
            degree,
            coeffs: vec![field.zero(); monomial_count(nvars, degree)],
        }
    }

    /// Linear form `sum c_i Y_i`.
    pub fn linear(coeffs: &[FieldElem]) -> Self {
        let field = coeffs[0].field();
        HomForm {
            field,
            nvars: coeffs.len(),
            degree: 1,
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn from_terms(field: Field, nvars: usize, degree: usize, terms: &[(i64, &[u32])]) -> Result<Self> {
        let basis = MonomialBasis::new(nvars, degree);
        let mut f = HomForm::zero(field, nvars, degree);
        for (c, e) in terms {
            let pos = basis
                .position(e)
                .ok_or_else(|| Error::ShapeMismatch(format!("exponent {e:?} not of degree {degree}")))?;
            f.coeffs[pos] = &f.coeffs[pos] + &field.from_i64(*c);
        }
        Ok(f)
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_zero)
    }

    pub fn eval(&self, y: &[FieldElem]) -> FieldElem {
        assert_eq!(y.len(), self.nvars, "point has wrong number of coordinates");
        let basis = MonomialBasis::new(self.nvars, self.degree);
        basis
            .evaluate(y)
            .iter()
            .zip(&self.coeffs)
            .fold(self.field.zero(), |acc, (m, c)| &acc + &(m * c))
    }

    pub fn add(&self, other: &HomForm) -> Result<HomForm> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::ShapeMismatch("adding forms of different degree".into()));
        }
        Ok(HomForm {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            ..self.clone()
        })
    }

    pub fn scale(&self, c: &FieldElem) -> HomForm {
        HomForm {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            ..self.clone()
        }
    }

    fn check_compatible(&self, other: &HomForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::ShapeMismatch("forms in different numbers of variables".into()));
        }
        Ok(())
    }

    pub fn mul(&self, other: &HomForm) -> Result<HomForm> {
        self.check_compatible(other)?;
        let a = monomials(self.nvars, self.degree);
        let b = monomials(self.nvars, other.degree);
        let out_basis = MonomialBasis::new(self.nvars, self.degree + other.degree);
        let mut out = HomForm::zero(self.field, self.nvars, self.degree + other.degree);
        for (ea, ca) in a.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, cb) in b.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let pos = out_basis.position(&e).expect("degree adds");
                out.coeffs[pos] = &out.coeffs[pos] + &(ca * cb);
            }
        }
        Ok(out)
    }

    /// Scaled so the first nonzero coefficient (graded-lex) is 1; the zero
    /// form is returned unchanged.
    pub fn normalized(&self) -> HomForm {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
        }
    }

    /// Equal up to a nonzero scalar.
    pub fn proportional(&self, other: &HomForm) -> bool {
        self.field == other.field
            && self.nvars == other.nvars
            && self.degree == other.degree
            && self.normalized() == other.normalized()
    }

    /// Parses `c*Y0^a*Y1^b + ...` with rational coefficients `num/den`.
    /// All terms must share one degree.
    pub fn parse(field: Field, nvars: usize, text: &str) -> Result<HomForm> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty form".into()));
        }
        let mut terms: Vec<(FieldElem, Vec<u32>)> = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'+' => (false, &rest[1..]),
                b'-' => (true, &rest[1..]),
                _ if first => (false, rest),
                _ => return Err(Error::Parse(format!("expected + or - at {rest:?}"))),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            // a '-' directly after '/' belongs to a denominator, which we do not allow
            let (term, tail) = body.split_at(end);
            let (c, e) = parse_term(field, nvars, term)?;
            terms.push((if neg { -c } else { c }, e));
            rest = tail;
        }
        let degree = terms[0].1.iter().sum::<u32>() as usize;
        if terms.iter().any(|(_, e)| e.iter().sum::<u32>() as usize != degree) {
            return Err(Error::Parse(format!("form {text:?} is not homogeneous")));
        }
        let basis = MonomialBasis::new(nvars, degree);
        let mut f = HomForm::zero(field, nvars, degree);
        for (c, e) in terms {
            let pos = basis.position(&e).expect("degree checked");
            f.coeffs[pos] = &f.coeffs[pos] + &c;
        }
        Ok(f)
    }
}

fn parse_term(field: Field, nvars: usize, term: &str) -> Result<(FieldElem, Vec<u32>)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = field.one();
    let mut exps = vec![0u32; nvars];
    for factor in term.split('*') {
        if let Some(var) = factor.strip_prefix(['Y', 'y']) {
            let (idx, pow) = match var.split_once('^') {
                Some((i, p)) => (i, p.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
                None => (var, 1),
            };
            let i: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable {factor:?}")))?;
            if i >= nvars {
                return Err(Error::Parse(format!("variable Y{i} out of range for {nvars} variables")));
            }
            exps[i] += pow;
        } else {
            coeff = &coeff * &field.parse_elem(factor)?;
        }
    }
    Ok((coeff, exps))
}

impl fmt::Display for HomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = monomials(self.nvars, self.degree);
        let mut wrote = false;
        for (e, c) in exps.iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (wrote, neg) {
                (false, true) => write!(f, "-")?,
                (true, true) => write!(f, " - ")?,
                (true, false) => write!(f, " + ")?,
                (false, false) => {}
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { format!("Y{i}") } else { format!("Y{i}^{k}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
