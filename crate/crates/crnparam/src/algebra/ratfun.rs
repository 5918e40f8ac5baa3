//! Rational functions as canonical numerator/denominator pairs.
//!
//! Equality testing goes through cross-multiplication ([`RationalFunction::eq_rf`]),
//! so no multivariate gcd is needed. Canonicalization cancels the common
//! monomial content and normalizes the denominator to coprime integer
//! coefficients with a positive leading coefficient.

use std::collections::BTreeSet;
use std::ops::{Add, Div, Mul, Sub};

use num::{Signed, Zero};

use super::poly::{Polynomial, Rat};
use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        let mut rf = RationalFunction { num, den };
        rf.normalize();
        Ok(rf)
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { num: p, den: Polynomial::one() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = Polynomial::one();
            return;
        }
        let common = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !common.is_one() {
            self.num = self.num.div_monomial(&common).expect("content divides");
            self.den = self.den.div_monomial(&common).expect("content divides");
        }
        let mut c = self.den.rational_content();
        if self
            .den
            .leading_term()
            .is_some_and(|(_, lc)| lc.is_negative())
        {
            c = -c;
        }
        if !c.is_zero() {
            let inv = c.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    /// Semantic equality by cross-multiplication: `a/b == c/d` iff `ad == cb`.
    pub fn eq_rf(&self, other: &RationalFunction) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn recip(&self) -> Result<RationalFunction, Error> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Integer power; negative exponents flip numerator and denominator.
    pub fn pow_i64(&self, e: i64) -> Result<RationalFunction, Error> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let n = e.unsigned_abs() as u32;
        RationalFunction::new(base.num.pow(n), base.den.pow(n))
    }

    pub fn symbols(&self) -> BTreeSet<u32> {
        let mut s = self.num.symbols();
        s.extend(self.den.symbols());
        s
    }

    pub fn contains_symbol(&self, id: u32) -> bool {
        self.num.contains_symbol(id) || self.den.contains_symbol(id)
    }

    pub fn eval_f64(&self, value_of: &dyn Fn(u32) -> f64) -> f64 {
        self.num.eval_f64(value_of) / self.den.eval_f64(value_of)
    }

    /// Substitutes a rational function for a symbol.
    pub fn substitute(&self, id: u32, value: &RationalFunction) -> Result<RationalFunction, Error> {
        let n = substitute_poly_rf(&self.num, id, value)?;
        let d = substitute_poly_rf(&self.den, id, value)?;
        &n / &d
    }

    pub fn render(&self, name_of: &dyn Fn(u32) -> String) -> String {
        let n = render_factor(&self.num, name_of, false);
        if self.den.is_one() {
            n
        } else {
            format!("{} / {}", n, render_factor(&self.den, name_of, true))
        }
    }
}

fn render_factor(p: &Polynomial, name_of: &dyn Fn(u32) -> String, denominator: bool) -> String {
    let s = p.render(name_of);
    // A denominator must read as one factor, so anything beyond a bare
    // power needs parentheses.
    let atomic = match p.terms().next() {
        Some((m, c)) if p.term_count() == 1 => {
            use num::One;
            m.factors().len() <= 1 && (c.is_one() || m.factors().is_empty())
        }
        _ => false,
    };
    if p.term_count() > 1 || (denominator && !atomic) {
        format!("({s})")
    } else {
        s
    }
}

/// Substitutes `value` for the symbol `id` in a polynomial, producing a
/// rational function: `sum_d c_d * u^d * v^(D-d) / v^D` for `value = u/v`.
pub fn substitute_poly_rf(
    p: &Polynomial,
    id: u32,
    value: &RationalFunction,
) -> Result<RationalFunction, Error> {
    if !p.contains_symbol(id) {
        return Ok(RationalFunction::from_poly(p.clone()));
    }
    let coeffs = p.coefficients_in(id);
    let top = coeffs.len() - 1;
    let mut num = Polynomial::zero();
    for (d, c) in coeffs.iter().enumerate() {
        let term = &(c * &value.num.pow(d as u32)) * &value.den.pow((top - d) as u32);
        num = &num + &term;
    }
    RationalFunction::new(num, value.den.pow(top as u32))
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominators")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominators")
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction, Error>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction, Error> {
        if rhs.num.is_zero() {
            return Err(Error::ZeroDivision);
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}
