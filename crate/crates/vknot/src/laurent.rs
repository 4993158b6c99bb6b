//! Exact Laurent polynomials in one variable `t`.
//!
//! [`LaurentPoly`] stores a canonical sparse form (sorted exponents, no zero
//! coefficients), is generic over any signed exact integer coefficient type,
//! and supports the operations the invariant layer needs: ring arithmetic,
//! the substitution `t -> 1/t`, evaluation and differentiation at `t = 1`,
//! the reciprocity test `f(t) = f(1/t)`, and exact division by `t - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::Signed;

use crate::Error;

/// Exponent of `t`.
pub type Exp = i64;

/// Coefficient ring bound: signed exact integers (`i64`, `i128`, `BigInt`, ...).
pub trait Coeff: Clone + Ord + Hash + Signed + fmt::Display + From<i64> {}
impl<T> Coeff for T where T: Clone + Ord + Hash + Signed + fmt::Display + From<i64> {}

/// A Laurent polynomial `sum c_e t^e` with exact integer coefficients.
///
/// Equality is coefficient-wise; the internal map never stores a zero
/// coefficient, so derived `PartialEq`/`Hash` agree with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly<C: Coeff> {
    terms: BTreeMap<Exp, C>,
}

impl<C: Coeff> LaurentPoly<C> {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// The constant polynomial `c`.
    pub fn constant(c: C) -> Self {
        Self::from_terms([(0, c)])
    }

    /// The monomial `t^e`.
    pub fn monomial(e: Exp) -> Self {
        Self::from_terms([(e, C::one())])
    }

    /// The single term `c t^e`.
    pub fn term(c: C, e: Exp) -> Self {
        Self::from_terms([(e, c)])
    }

    /// `t^e - 1`; zero when `e = 0`.
    pub fn t_pow_minus_one(e: Exp) -> Self {
        Self::from_terms([(e, C::one()), (0, -C::one())])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, combining
    /// duplicates and dropping zero coefficients.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Exp, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Exp, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// The coefficient of `t^e` (zero if absent).
    pub fn coeff(&self, e: Exp) -> C {
        self.terms.get(&e).cloned().unwrap_or_else(C::zero)
    }

    /// Smallest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<Exp> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<Exp> {
        self.terms.keys().next_back().copied()
    }

    /// The substitution `t -> 1/t`.
    pub fn invert_var(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    /// `f(1)`: the sum of all coefficients.
    pub fn eval_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// `f'(1)`: the sum of `e * c_e`.
    pub fn deriv_eval_one(&self) -> C {
        self.terms
            .iter()
            .fold(C::zero(), |acc, (e, c)| acc + C::from(*e) * c.clone())
    }

    /// Whether `f(t) = f(1/t)`.
    pub fn is_reciprocal(&self) -> bool {
        self.terms.iter().all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, k)| (*e, k.clone() * c.clone())).collect() }
    }

    /// Multiplies by the monomial `t^e`.
    pub fn mul_t_pow(&self, e: Exp) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect() }
    }

    /// Exact quotient `f / (t - 1)`.
    ///
    /// Requires `f(1) = 0`, which makes the quotient a Laurent polynomial;
    /// otherwise returns [`Error::ConditionViolated`].
    pub fn div_exact_t_minus_one(&self) -> crate::Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if !self.eval_one().is_zero() {
            return Err(Error::ConditionViolated(
                "polynomial must vanish at t = 1 to divide by t - 1".into(),
            ));
        }
        // With f = q (t - 1), the quotient coefficient at exponent e is the
        // sum of the coefficients of f above e.
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        let mut q = Self::zero();
        let mut running = C::zero();
        let mut e = hi;
        while e > lo {
            running = running + self.coeff(e);
            q.add_term(e - 1, running.clone());
            e -= 1;
        }
        Ok(q)
    }
}

impl<C: Coeff> AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl<C: Coeff> SubAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn sub_assign(&mut self, rhs: &LaurentPoly<C>) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl<C: Coeff> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<C: Coeff> Add<&LaurentPoly<C>> for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(mut self, rhs: &LaurentPoly<C>) -> Self {
        self += rhs;
        self
    }
}

impl<C: Coeff> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        self.clone() + rhs
    }
}

impl<C: Coeff> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<C: Coeff> Sub<&LaurentPoly<C>> for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(mut self, rhs: &LaurentPoly<C>) -> Self {
        self -= rhs;
        self
    }
}

impl<C: Coeff> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self.clone() - rhs
    }
}

impl<C: Coeff> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<C: Coeff> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -self.clone()
    }
}

impl<C: Coeff> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Mul<&LaurentPoly<C>> for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: &LaurentPoly<C>) -> LaurentPoly<C> {
        &self * rhs
    }
}

impl<C: Coeff> fmt::Display for LaurentPoly<C> {
    /// Canonical form: terms in decreasing exponent order, no spaces, unit
    /// coefficients suppressed, e.g. `-t^2+2-t^-2` or `3t-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coeff> serde::Serialize for LaurentPoly<C> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<C: Coeff> FromStr for LaurentPoly<C> {
    type Err = Error;

    /// Parses sums of terms like `3t^2`, `-t`, `t^-4`, `2*t`, `7`.
    ///
    /// Whitespace is allowed around terms and sign separators; duplicate
    /// exponents are combined.
    fn from_str(s: &str) -> crate::Result<Self> {
        let err = || Error::MalformedToken(s.trim().to_string());
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let skip_ws = |i: &mut usize| {
            while *i < chars.len() && chars[*i].is_whitespace() {
                *i += 1;
            }
        };
        let parse_digits = |i: &mut usize| -> Option<Vec<u32>> {
            let start = *i;
            let mut ds = Vec::new();
            while *i < chars.len() {
                match chars[*i].to_digit(10) {
                    Some(d) => {
                        ds.push(d);
                        *i += 1;
                    }
                    None => break,
                }
            }
            (*i > start).then_some(ds)
        };

        skip_ws(&mut i);
        if i == chars.len() {
            return Err(err());
        }
        let mut poly = Self::zero();
        let mut first = true;
        while i < chars.len() {
            // Sign separator: optional for the leading term, required after.
            let mut sign = C::one();
            match chars[i] {
                '+' => i += 1,
                '-' => {
                    sign = -C::one();
                    i += 1;
                }
                _ if first => {}
                _ => return Err(err()),
            }
            first = false;
            skip_ws(&mut i);

            let digits = parse_digits(&mut i);
            let mut coeff = match &digits {
                Some(ds) => ds
                    .iter()
                    .fold(C::zero(), |acc, d| acc * C::from(10) + C::from(*d as i64)),
                None => C::one(),
            };
            coeff = sign * coeff;
            skip_ws(&mut i);
            if digits.is_some() && i < chars.len() && chars[i] == '*' {
                i += 1;
                skip_ws(&mut i);
            }

            let exp: Exp = if i < chars.len() && chars[i] == 't' {
                i += 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let esign: Exp = match chars.get(i) {
                        Some('-') => {
                            i += 1;
                            -1
                        }
                        Some('+') => {
                            i += 1;
                            1
                        }
                        _ => 1,
                    };
                    let ds = parse_digits(&mut i).ok_or_else(err)?;
                    let mut e: Exp = 0;
                    for d in ds {
                        e = e
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(d as Exp))
                            .ok_or_else(err)?;
                    }
                    esign * e
                } else {
                    1
                }
            } else if digits.is_some() {
                0
            } else {
                return Err(err());
            };

            poly.add_term(exp, coeff);
            skip_ws(&mut i);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;

    use super::*;

    type P = LaurentPoly<BigInt>;

    fn p(s: &str) -> P {
        s.parse().unwrap()
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(P::one().to_string(), "1");
        assert_eq!(P::monomial(-3).to_string(), "t^-3");
        assert_eq!(P::t_pow_minus_one(1).scale(&BigInt::from(3)).to_string(), "3t-3");
        assert_eq!(
            P::from_terms([(2, (-1).into()), (0, 2.into()), (-2, (-1).into())]).to_string(),
            "-t^2+2-t^-2"
        );
        assert_eq!(P::term((-4).into(), 0).to_string(), "-4");
        assert_eq!(P::term(5.into(), 7).to_string(), "5t^7");
    }

    #[test]
    fn parse_accepts_common_forms() {
        assert_eq!(p("0"), P::zero());
        assert_eq!(p("t"), P::monomial(1));
        assert_eq!(p("-t"), -P::monomial(1));
        assert_eq!(p("2*t^4"), P::term(2.into(), 4));
        assert_eq!(p("t^-3"), P::monomial(-3));
        assert_eq!(p(" - t^2 + 2 - t^-2 "), p("-t^2+2-t^-2"));
        assert_eq!(p("t+t"), P::term(2.into(), 1));
        assert_eq!(p("3t - 3"), P::t_pow_minus_one(1).scale(&3.into()));
        assert_eq!(p("t^+2"), P::monomial(2));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "  ", "t^", "^3", "x", "2t^x", "+", "t 3", "3tt", "1..2"] {
            assert!(bad.parse::<P>().is_err(), "expected parse failure for {bad:?}");
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for s in ["0", "1", "-1", "t", "-t^5+3t-3", "t^2-2+t^-2", "7t^-4"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q, "round trip through {s}");
        }
    }

    #[test]
    fn ring_arithmetic() {
        let a = p("t-1");
        let b = p("t^-1-1");
        assert_eq!(&a * &b, p("-t+2-t^-1"));
        assert_eq!(a.clone() + b.clone(), p("t+t^-1-2"));
        assert_eq!(a.clone() - a.clone(), P::zero());
        assert_eq!(-a.clone() + a.clone(), P::zero());
        assert_eq!((&a * &b).scale(&2.into()), p("-2t+4-2t^-1"));
        assert_eq!(a.mul_t_pow(-1), p("1-t^-1"));
        // Distributivity on a fixed triple.
        let c = p("2t^3-t^-2");
        assert_eq!(&(a.clone() + b.clone()) * &c, &a * &c + &b * &c);
    }

    #[test]
    fn substitution_and_evaluation() {
        let f = p("2t^3-5t+3");
        assert_eq!(f.invert_var(), p("2t^-3-5t^-1+3"));
        assert_eq!(f.eval_one(), BigInt::from(0));
        assert_eq!(f.deriv_eval_one(), BigInt::from(1));
        assert_eq!(p("t^2-2t+1").deriv_eval_one(), BigInt::from(0));
        assert_eq!(P::t_pow_minus_one(0), P::zero());
    }

    #[test]
    fn reciprocity() {
        assert!(p("t+t^-1").is_reciprocal());
        assert!(p("-t^3+4-t^-3").is_reciprocal());
        assert!(P::zero().is_reciprocal());
        assert!(P::constant(5.into()).is_reciprocal());
        assert!(!p("t-t^-1").is_reciprocal());
        assert!(!p("t-1").is_reciprocal());
    }

    #[test]
    fn exact_division_by_t_minus_one() {
        assert_eq!(p("t^2-1").div_exact_t_minus_one().unwrap(), p("t+1"));
        assert_eq!(p("t-2+t^-1").div_exact_t_minus_one().unwrap(), p("1-t^-1"));
        assert_eq!(P::zero().div_exact_t_minus_one().unwrap(), P::zero());
        // The quotient used when realizing a target with vanishing derivative:
        // g = t f / (t - 1).
        let f = p("t-2+t^-1");
        let g = f.div_exact_t_minus_one().unwrap().mul_t_pow(1);
        assert_eq!(g, p("t-1"));
        assert!(p("t").div_exact_t_minus_one().is_err());
        // Verify quotients multiply back for several cases.
        for s in ["t^3-1", "t^4-2t+1", "-2t^2+3-t^-3", "t^-1-1"] {
            let f = p(s);
            let q = f.div_exact_t_minus_one().unwrap();
            assert_eq!(&q * &p("t-1"), f, "exact division of {s}");
        }
    }
}
