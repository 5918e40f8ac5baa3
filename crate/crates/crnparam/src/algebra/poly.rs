//! Sparse multivariate polynomials over exact rationals.
//!
//! Symbols are referred to by numeric id; a [`SymbolTable`](crate::model::SymbolTable)
//! maps ids to display names. Terms are kept in a canonical map keyed by
//! monomial under the graded lexicographic order, with no stored zero
//! coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

/// Exact rational scalar used everywhere in the crate.
pub type Rat = BigRational;

/// Convenience constructor for integer rationals.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for fractions.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// A power product of symbols, e.g. `k1^2 * phi1`.
///
/// Exponents are strictly positive; the factor list is sorted by symbol id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn symbol(id: u32) -> Self {
        Monomial { factors: vec![(id, 1)] }
    }

    pub fn from_factors(factors: Vec<(u32, u32)>) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (id, e) in factors {
            if e > 0 {
                *map.entry(id).or_insert(0) += e;
            }
        }
        Monomial { factors: map.into_iter().collect() }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> &[(u32, u32)] {
        &self.factors
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, id: u32) -> u32 {
        self.factors
            .iter()
            .find(|&&(s, _)| s == id)
            .map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map: BTreeMap<u32, u32> = self.factors.iter().copied().collect();
        for &(id, e) in &other.factors {
            *map.entry(id).or_insert(0) += e;
        }
        Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    /// Exact division; `None` when some exponent of `other` exceeds ours.
    pub fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut map: BTreeMap<u32, u32> = self.factors.iter().copied().collect();
        for &(id, e) in &other.factors {
            let have = map.get(&id).copied().unwrap_or(0);
            if have < e {
                return None;
            }
            map.insert(id, have - e);
        }
        Some(Monomial {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        })
    }

    /// Componentwise minimum, the gcd of two power products.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(id, e) in &self.factors {
            let oe = other.degree_in(id);
            let m = e.min(oe);
            if m > 0 {
                out.push((id, m));
            }
        }
        Monomial { factors: out }
    }

    /// Halves every exponent; `None` when some exponent is odd.
    fn try_sqrt(&self) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        for &(id, e) in &self.factors {
            if e % 2 != 0 {
                return None;
            }
            out.push((id, e / 2));
        }
        Some(Monomial { factors: out })
    }

    pub fn without_symbol(&self, id: u32) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .copied()
                .filter(|&(s, _)| s != id)
                .collect(),
        }
    }
}

// Graded lexicographic order: total degree first, ties broken by the
// exponent vector with symbols in ascending id order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.factors.iter();
        let mut b = other.factors.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                // A positive exponent where the other side has none: the
                // carrier of the smaller symbol id is lexicographically larger.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(ia, ea)), Some(&(ib, eb))) => {
                    if ia != ib {
                        return if ia < ib { Ordering::Greater } else { Ordering::Less };
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { terms }
    }

    pub fn symbol(id: u32) -> Self {
        Polynomial::term(Monomial::symbol(id), rat(1))
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    fn insert(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Leading term under graded lex, `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (t.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// All symbol ids with a nonzero occurrence.
    pub fn symbols(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for &(id, _) in m.factors() {
                out.insert(id);
            }
        }
        out
    }

    pub fn contains_symbol(&self, id: u32) -> bool {
        self.terms.keys().any(|m| m.degree_in(id) > 0)
    }

    pub fn degree_in(&self, id: u32) -> u32 {
        self.terms.keys().map(|m| m.degree_in(id)).max().unwrap_or(0)
    }

    /// Coefficient polynomials with respect to one symbol: index `d` holds the
    /// coefficient of `id^d`.
    pub fn coefficients_in(&self, id: u32) -> Vec<Polynomial> {
        let deg = self.degree_in(id) as usize;
        let mut out = vec![Polynomial::zero(); deg + 1];
        for (m, c) in &self.terms {
            let d = m.degree_in(id) as usize;
            out[d].insert(m.without_symbol(id), c.clone());
        }
        out
    }

    pub fn substitute_poly(&self, id: u32, value: &Polynomial) -> Polynomial {
        let coeffs = self.coefficients_in(id);
        let mut acc = Polynomial::zero();
        let mut power = Polynomial::one();
        for c in coeffs {
            acc = &acc + &(&c * &power);
            power = &power * value;
        }
        acc
    }

    pub fn eval_f64(&self, value_of: &dyn Fn(u32) -> f64) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for &(id, e) in m.factors() {
                t *= value_of(id).powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_exact(&self, values: &BTreeMap<u32, Rat>) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(id, e) in m.factors() {
                let v = values.get(&id).cloned().unwrap_or_else(Rat::zero);
                for _ in 0..e {
                    t *= v.clone();
                }
            }
            acc += t;
        }
        acc
    }

    pub fn has_positive_coefficients(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_positive())
    }

    /// Gcd of all term monomials (the common power-product factor).
    pub fn monomial_content(&self) -> Monomial {
        let mut iter = self.terms.keys();
        let Some(first) = iter.next() else {
            return Monomial::one();
        };
        let mut acc = first.clone();
        for m in iter {
            acc = acc.gcd(m);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Returns 1 for the zero polynomial.
    pub fn rational_content(&self) -> Rat {
        if self.is_zero() {
            return rat(1);
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            terms.insert(t.try_div(m)?, c.clone());
        }
        Some(Polynomial { terms })
    }

    /// Exact square root, `None` when `self` is not a perfect square.
    pub fn sqrt(&self) -> Option<Polynomial> {
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        let (lm, lc) = self.leading_term()?;
        if lc.is_negative() {
            return None;
        }
        let half = lm.try_sqrt()?;
        let lc_sqrt = rat_sqrt(lc)?;
        let mut root = Polynomial::term(half.clone(), lc_sqrt.clone());
        let two_lc = &lc_sqrt + &lc_sqrt;
        let mut guard = 4 * self.terms.len() + 16;
        loop {
            let rem = self - &(&root * &root);
            if rem.is_zero() {
                return Some(root);
            }
            if guard == 0 {
                return None;
            }
            guard -= 1;
            let (rm, rc) = rem.leading_term()?;
            let tm = rm.try_div(&half)?;
            // The correction term must be strictly smaller than the leading
            // term of the root, otherwise the iteration cannot converge.
            if tm >= half {
                return None;
            }
            root.insert(tm, rc / &two_lc);
        }
    }

    /// Renders with terms in descending graded-lex order.
    pub fn render(&self, name_of: &dyn Fn(u32) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = !abs.is_one() || m.is_one();
            if show_coeff {
                out.push_str(&format_rat(&abs));
            }
            for (j, &(id, e)) in m.factors().iter().enumerate() {
                if show_coeff || j > 0 {
                    out.push('*');
                }
                out.push_str(&name_of(id));
                if e > 1 {
                    out.push_str(&format!("^{e}"));
                }
            }
        }
        out
    }
}

pub(crate) fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(i: u32) -> Polynomial {
        Polynomial::symbol(i)
    }

    #[test]
    fn product_of_sum_and_difference() {
        let a = &k(1) + &k(2);
        let b = &k(1) - &k(2);
        let expect = &(&k(1) * &k(1)) - &(&k(2) * &k(2));
        assert_eq!(&a * &b, expect);
    }

    #[test]
    fn eval_is_product() {
        // k2*k4*phi at k2=2, k4=3, phi=5 -> 30
        let p = &(&k(2) * &k(4)) * &k(7);
        let vals = |id: u32| match id {
            2 => 2.0,
            4 => 3.0,
            7 => 5.0,
            _ => 0.0,
        };
        assert_eq!(p.eval_f64(&vals), 30.0);
    }

    #[test]
    fn graded_lex_ordering() {
        let m1 = Monomial::symbol(0); // x
        let m2 = Monomial::symbol(1); // y
        let m12 = m1.mul(&m2); // xy
        assert!(m12 > m1);
        assert!(m1 > m2);
        let x2 = m1.mul(&m1);
        assert!(x2 > m12);
    }

    #[test]
    fn sqrt_of_perfect_square() {
        let p = &(&k(1) + &k(2)) * &(&k(1) + &k(2));
        assert_eq!(p.sqrt(), Some(&k(1) + &k(2)));
        let q = &k(1) + &k(2);
        assert_eq!(q.sqrt(), None);
        // 4*k1^2
        let r = (&k(1) * &k(1)).scale(&rat(4));
        assert_eq!(r.sqrt(), Some(k(1).scale(&rat(2))));
    }

    #[test]
    fn coefficients_in_symbol() {
        // k1*phi^2 + (k1+k2)*phi + k3
        let phi = 9u32;
        let p = &(&(&k(1) * &Polynomial::symbol(phi).pow(2))
            + &(&(&k(1) + &k(2)) * &Polynomial::symbol(phi)))
            + &k(3);
        let cs = p.coefficients_in(phi);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], k(3));
        assert_eq!(cs[1], &k(1) + &k(2));
        assert_eq!(cs[2], k(1));
    }

    #[test]
    fn substitute_poly_expands() {
        let p = &k(0).pow(2) + &k(1);
        let sub = p.substitute_poly(0, &(&k(1) + &k(2)));
        let expect = &(&k(1) + &k(2)).pow(2) + &k(1);
        assert_eq!(sub, expect);
    }

    #[test]
    fn render_is_deterministic() {
        let p = &(&k(1) * &k(2)).scale(&rat(2)) - &k(3);
        let name = |id: u32| format!("k{id}");
        assert_eq!(p.render(&name), "2*k1*k2 - k3");
    }
}
