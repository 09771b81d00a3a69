//! Sparse polynomials in z0..z{n-1} with exact Gaussian-rational
//! coefficients.
//!
//! Literal syntax: sums of products of numbers (`3`, `2/5`), the imaginary
//! unit `i`, variables with optional powers (`z4^2`) and parenthesised
//! sub-expressions, e.g. `z0^8 - z1^8 + 2*z2^8 + i*z4^2` or
//! `(1+2*i)*z0*z1`. The printer emits terms in descending lexicographic
//! order of exponent vectors and round-trips through the parser.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::WpsError;
use crate::Q;

/// Exact complex rational a + b i.
pub type CQ = Complex<Q>;

pub fn cq(re: Q, im: Q) -> CQ {
    Complex::new(re, im)
}

pub fn cq_int(n: i64) -> CQ {
    Complex::new(crate::q(n), Q::zero())
}

pub fn cq_to_f64(c: &CQ) -> Complex<f64> {
    Complex::new(
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CQ>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: CQ) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, cq_int(1))
    }

    pub fn monomial(exponents: Vec<u32>, c: CQ) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: CQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(CQ::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CQ)> {
        self.terms.iter().rev()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> CQ {
        self.terms.get(exponents).cloned().unwrap_or_else(CQ::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&cq_int(-1)))
    }

    pub fn scale(&self, c: &CQ) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.nvars, cq_int(1));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// The common weighted degree of all terms; `None` for the zero
    /// polynomial.
    pub fn weighted_degree(&self, weights: &[u32]) -> Result<Option<u32>, WpsError> {
        if weights.len() != self.nvars {
            return Err(WpsError::VariableCount {
                expected: weights.len(),
                found: self.nvars,
            });
        }
        let mut degree = None;
        for e in self.terms.keys() {
            let d: u32 = e.iter().zip(weights).map(|(x, a)| x * a).sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(WpsError::NotHomogeneous(format!(
                        "{self} has terms of weighted degree {d0} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(degree)
    }

    /// True when the variable occurs in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e[var] > 0)
    }

    /// Replaces z_var by `value` (which must not involve z_var).
    pub fn substitute(&self, var: usize, value: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var];
            rest[var] = 0;
            let term = Self::monomial(rest, c.clone()).mul(&value.pow(k));
            out = out.add(&term);
        }
        out
    }

    /// Removes a variable that does not occur.
    pub fn drop_var(&self, var: usize) -> Self {
        assert!(!self.involves(var), "dropping a variable that occurs");
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            e.remove(var);
            out.add_term(e, c.clone());
        }
        out
    }

    /// Sets every variable outside `keep` to zero.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().enumerate().all(|(i, x)| *x == 0 || keep.contains(&i)) {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// For a sum of pure powers c z_i^e, the list of (i, e, c) in variable
    /// order; `None` if some term is a constant or a mixed monomial.
    pub fn diagonal_terms(&self) -> Option<Vec<(usize, u32, CQ)>> {
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let nonzero: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
            if nonzero.len() != 1 {
                return None;
            }
            out.push((nonzero[0], e[nonzero[0]], c.clone()));
        }
        out.sort_by_key(|t| t.0);
        Some(out)
    }

    /// conj(f)(eps_0 z_{sigma(0)}, ..., eps_n z_{sigma(n)}): the polynomial
    /// g with f(rho(z)) = conj(g(z)) for rho(z)_i = eps_i conj(z_{sigma(i)}).
    pub fn conjugate_image(&self, sigma: &[usize], eps: &[i8]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut image = vec![0; self.nvars];
            let mut sign = 1i64;
            for (i, &k) in e.iter().enumerate() {
                image[sigma[i]] += k;
                if eps[i] < 0 && k % 2 == 1 {
                    sign = -sign;
                }
            }
            out.add_term(image, c.conj() * cq_int(sign));
        }
        out
    }

    pub fn eval(&self, z: &[Complex<f64>]) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = cq_to_f64(c);
            for (zi, &k) in z.iter().zip(e) {
                t *= zi.powu(k);
            }
            acc += t;
        }
        acc
    }

    /// Scalar lambda with other = lambda * self, if it exists.
    pub fn proportionality(&self, other: &Self) -> Option<CQ> {
        if self.nvars != other.nvars || self.len() != other.len() {
            return None;
        }
        let (e0, c0) = self.terms.iter().next()?;
        let lambda = other.terms.get(e0)? / c0;
        (self.scale(&lambda) == *other).then_some(lambda)
    }

    pub fn parse(text: &str, nvars: usize) -> Result<Self, WpsError> {
        let mut p = Parser {
            chars: text.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
            nvars,
            text,
        };
        if p.chars.is_empty() {
            return Err(p.error("empty polynomial"));
        }
        let out = p.sum()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> WpsError {
        WpsError::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.text))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<BigInt, WpsError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<u32, WpsError> {
        self.integer()?
            .to_u32()
            .ok_or_else(|| self.error("number too large"))
    }

    fn sum(&mut self) -> Result<Polynomial, WpsError> {
        let mut acc = Polynomial::zero(self.nvars);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Ok(acc),
            };
            first = false;
            let term = self.product()?;
            acc = acc.add(&term.scale(&cq_int(sign)));
        }
    }

    fn product(&mut self) -> Result<Polynomial, WpsError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, WpsError> {
        let base = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let d = if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Polynomial::constant(self.nvars, cq(Q::new(n, d), Q::zero()))
            }
            Some('i') => {
                self.pos += 1;
                Polynomial::constant(self.nvars, cq(Q::zero(), Q::one()))
            }
            Some('z') => {
                self.pos += 1;
                let idx = self.small()? as usize;
                if idx >= self.nvars {
                    return Err(self.error(&format!("variable z{idx} outside z0..z{}", self.nvars - 1)));
                }
                Polynomial::variable(self.nvars, idx)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.error("expected a number, i, a variable or '('")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.small()?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }
}

fn fmt_magnitude(x: &Q) -> String {
    let a = x.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// Sign and unsigned body of a coefficient; the body is empty for +-1.
fn fmt_coefficient(c: &CQ) -> (bool, String) {
    if c.im.is_zero() {
        let body = if c.re.abs().is_one() {
            String::new()
        } else {
            fmt_magnitude(&c.re)
        };
        (c.re.is_negative(), body)
    } else if c.re.is_zero() {
        let body = if c.im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_magnitude(&c.im))
        };
        (c.im.is_negative(), body)
    } else {
        let re = if c.re.is_negative() {
            format!("-{}", fmt_magnitude(&c.re))
        } else {
            fmt_magnitude(&c.re)
        };
        let im_sign = if c.im.is_negative() { '-' } else { '+' };
        let im = if c.im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_magnitude(&c.im))
        };
        (false, format!("({re}{im_sign}{im})"))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let (negative, coeff) = fmt_coefficient(c);
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { format!("z{i}") } else { format!("z{i}^{x}") })
                .collect();
            let mut body = coeff;
            if vars.is_empty() {
                if body.is_empty() {
                    body.push('1');
                }
            } else {
                if !body.is_empty() {
                    body.push('*');
                }
                body.push_str(&vars.join("*"));
            }
            let sep = match (k, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, qf};

    #[test]
    fn parse_and_print() {
        let f = Polynomial::parse("z0^8 - z1^8 + 2*z2^8 - 2*z3^8 + i*z4^2", 5).unwrap();
        assert_eq!(f.to_string(), "z0^8 - z1^8 + 2*z2^8 - 2*z3^8 + i*z4^2");
        assert_eq!(f.weighted_degree(&[1, 1, 1, 1, 4]).unwrap(), Some(8));
        let g = Polynomial::parse("z5 + z4", 6).unwrap();
        assert_eq!(g.to_string(), "z4 + z5");
        let h = Polynomial::parse("(1/2 - 3*i)*z0*z1^2 - 1 - i", 2).unwrap();
        assert_eq!(h.to_string(), "(1/2-3*i)*z0*z1^2 + (-1-i)");
        assert_eq!(Polynomial::parse(&h.to_string(), 2).unwrap(), h);
        assert_eq!(Polynomial::parse("(z0+z1)^2 - z0^2 - z1^2", 2).unwrap().to_string(), "2*z0*z1");
        assert_eq!(Polynomial::parse("z0 - z0", 1).unwrap().to_string(), "0");
        assert_eq!(Polynomial::parse("-i*z0", 1).unwrap().to_string(), "-i*z0");
        assert_eq!(
            Polynomial::parse("3/4*z0", 1).unwrap().coefficient(&[1]),
            cq(qf(3, 4), q(0))
        );
    }

    #[test]
    fn parse_errors() {
        assert!(Polynomial::parse("z5", 5).is_err());
        assert!(Polynomial::parse("z0 +", 1).is_err());
        assert!(Polynomial::parse("1/0", 1).is_err());
        assert!(Polynomial::parse("", 1).is_err());
        assert!(Polynomial::parse("z0 z1", 2).is_err());
        let f = Polynomial::parse("z0^2 + z1", 2).unwrap();
        assert!(matches!(f.weighted_degree(&[1, 1]), Err(WpsError::NotHomogeneous(_))));
    }

    #[test]
    fn substitution_and_restriction() {
        let f = Polynomial::parse("z0^8 + z1^8 + z2^8 + z3^8 + z4^2 + z5^2", 6).unwrap();
        let minus_z5 = Polynomial::parse("-z5", 6).unwrap();
        let g = f.substitute(4, &minus_z5).drop_var(4);
        assert_eq!(g.to_string(), "z0^8 + z1^8 + z2^8 + z3^8 + 2*z4^2");
        assert_eq!(f.restrict(&[4, 5]).to_string(), "z4^2 + z5^2");
    }

    #[test]
    fn conjugate_image_of_examples() {
        let sigma = [1, 0, 3, 2, 4];
        let eps = [1, -1, 1, -1, 1];
        let f = Polynomial::parse("z0^8 + z1^8 + z2^8 + z3^8 + z4^2", 5).unwrap();
        assert_eq!(f.proportionality(&f.conjugate_image(&sigma, &eps)), Some(cq_int(1)));
        let f1 = Polynomial::parse("z0^8 - z1^8 + 2*z2^8 - 2*z3^8 + i*z4^2", 5).unwrap();
        assert_eq!(f1.proportionality(&f1.conjugate_image(&sigma, &eps)), Some(cq_int(-1)));
        let odd = Polynomial::parse("z0^3 + z1^3", 2).unwrap();
        assert_eq!(odd.proportionality(&odd.conjugate_image(&[1, 0], &[1, -1])), None);
    }

    #[test]
    fn evaluation() {
        let f = Polynomial::parse("z0^2 + i*z1", 2).unwrap();
        let v = f.eval(&[Complex::new(1.0, 1.0), Complex::new(2.0, 0.0)]);
        assert!((v - Complex::new(0.0, 4.0)).norm() < 1e-12);
    }
}
