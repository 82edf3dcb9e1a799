use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::residue;
use crate::error::{Error, Result};

/// Moduli up to this size use a dense coefficient vector.
pub const DENSE_LIMIT: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coeffs {
    Dense(Vec<BigInt>),
    Sparse(BTreeMap<u64, BigInt>),
}

/// A formal sum `sum c_e xi^e` in the integral group ring of `Z/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElement {
    n: u64,
    coeffs: Coeffs,
}

impl GroupRingElement {
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1, "group ring modulus must be positive");
        let coeffs = if n <= DENSE_LIMIT {
            Coeffs::Dense(vec![BigInt::zero(); n as usize])
        } else {
            Coeffs::Sparse(BTreeMap::new())
        };
        Self { n, coeffs }
    }

    pub fn one(n: u64) -> Self {
        Self::monomial(n, 0, 1)
    }

    /// `coeff * xi^exp`, with `exp` reduced mod `n`.
    pub fn monomial(n: u64, exp: i128, coeff: impl Into<BigInt>) -> Self {
        let mut out = Self::zero(n);
        out.add_term(exp, coeff);
        out
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I, C>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i128, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero(n);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn add_term(&mut self, exp: i128, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        let e = residue(exp, self.n);
        match &mut self.coeffs {
            Coeffs::Dense(v) => v[e as usize] += coeff,
            Coeffs::Sparse(map) => {
                let slot = map.entry(e).or_insert_with(BigInt::zero);
                *slot += coeff;
                if slot.is_zero() {
                    map.remove(&e);
                }
            }
        }
    }

    pub fn coeff(&self, exp: i128) -> BigInt {
        let e = residue(exp, self.n);
        match &self.coeffs {
            Coeffs::Dense(v) => v[e as usize].clone(),
            Coeffs::Sparse(map) => map.get(&e).cloned().unwrap_or_default(),
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> Box<dyn Iterator<Item = (u64, &BigInt)> + '_> {
        match &self.coeffs {
            Coeffs::Dense(v) => Box::new(
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| (e as u64, c)),
            ),
            Coeffs::Sparse(map) => Box::new(map.iter().map(|(&e, c)| (e, c))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e as i128, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e as i128, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        let rhs: Vec<(u64, &BigInt)> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for &(eb, cb) in &rhs {
                out.add_term(ea as i128 + eb as i128, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        if k.is_zero() {
            return out;
        }
        for (e, c) in self.terms() {
            out.add_term(e as i128, c * k);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    /// Apply `xi -> xi^k` to every exponent.
    pub fn substitute_power(&self, k: i128) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in self.terms() {
            out.add_term(e as i128 * k, c.clone());
        }
        out
    }

    /// Sum of coefficients, i.e. the value at `xi = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms().map(|(_, c)| c).sum()
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms().all(|(_, c)| !c.is_negative())
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn gr_add(a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
    a.try_add(b)
}

pub fn gr_mul(a: &GroupRingElement, b: &GroupRingElement) -> Result<GroupRingElement> {
    a.try_mul(b)
}

pub fn gr_scale(a: &GroupRingElement, k: &BigInt) -> GroupRingElement {
    a.scale(k)
}

/// `sum_{k=0}^{count-1} xi^(k * step)`.
pub fn gr_geom(exponent_step: i128, count: u64, n: u64) -> GroupRingElement {
    let mut out = GroupRingElement::zero(n);
    for k in 0..count {
        out.add_term(k as i128 * exponent_step, 1);
    }
    out
}

pub fn gr_eval_at_one(a: &GroupRingElement) -> BigInt {
    a.eval_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
        let mut out = vec![0; n];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[(i + j) % n] += x * y;
            }
        }
        out
    }

    fn from_dense(v: &[i64]) -> GroupRingElement {
        GroupRingElement::from_terms(
            v.len() as u64,
            v.iter().enumerate().map(|(e, &c)| (e as i128, c)),
        )
    }

    #[test]
    fn ring_examples() {
        let n = 9;
        let one = GroupRingElement::one(n);
        let xi = GroupRingElement::monomial(n, 1, 1);
        let a = one.try_add(&xi).unwrap();
        let b = one.try_sub(&xi).unwrap();
        let expected = GroupRingElement::from_terms(n, [(0, 1), (2, -1)]);
        assert_eq!(a.try_mul(&b).unwrap(), expected);

        let last = GroupRingElement::monomial(n, n as i128 - 1, 1);
        assert_eq!(last.try_mul(&xi).unwrap(), one);

        let z = GroupRingElement::zero(n);
        assert_eq!(z.try_add(&a).unwrap(), a);
    }

    #[test]
    fn modulus_mismatch() {
        let a = GroupRingElement::one(5);
        let b = GroupRingElement::one(7);
        assert_eq!(a.try_add(&b), Err(Error::ModulusMismatch(5, 7)));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn geometric_sums() {
        assert!(gr_geom(4, 0, 7).is_zero());
        assert_eq!(gr_geom(0, 5, 7), GroupRingElement::monomial(7, 0, 5));
        assert_eq!(
            gr_geom(5, 3, 7),
            GroupRingElement::from_terms(7, [(0, 1), (5, 1), (3, 1)])
        );
    }

    #[test]
    fn eval_at_one_examples() {
        let a = GroupRingElement::from_terms(11, [(0, 1), (4, -1)]);
        assert_eq!(gr_eval_at_one(&a), BigInt::zero());
        let b = GroupRingElement::from_terms(11, [(0, 3), (1, 2), (2, 1)]);
        assert_eq!(gr_eval_at_one(&b), BigInt::from(6));
        assert_eq!(gr_eval_at_one(&GroupRingElement::zero(11)), BigInt::zero());
    }

    #[test]
    fn sparse_and_dense_agree() {
        let big = DENSE_LIMIT + 3;
        let a = GroupRingElement::from_terms(big, [(1, 2), (big as i128 - 1, 3), (5, -1)]);
        let b = GroupRingElement::from_terms(big, [(1, 1), (2, -4)]);
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p.coeff(0), BigInt::from(3));
        assert_eq!(p.coeff(2), BigInt::from(2));
        assert_eq!(p.coeff(3), BigInt::from(-8));
        // cancellation leaves no explicit zero entries
        let c = a.try_sub(&a).unwrap();
        assert!(c.is_zero());
        assert_eq!(c, GroupRingElement::zero(big));
    }

    #[test]
    fn display() {
        let a = GroupRingElement::from_terms(13, [(0, 1), (10, -1), (4, -1)]);
        assert_eq!(a.to_string(), "1 - x^4 - x^10");
        assert_eq!(GroupRingElement::zero(3).to_string(), "0");
    }

    proptest::proptest! {
        #[test]
        fn mul_matches_naive_convolution(
            n in 1usize..50,
            seed_a in proptest::collection::vec(-20i64..20, 50),
            seed_b in proptest::collection::vec(-20i64..20, 50),
        ) {
            let a = &seed_a[..n];
            let b = &seed_b[..n];
            let expected = from_dense(&naive_mul(a, b, n));
            let got = from_dense(a).try_mul(&from_dense(b)).unwrap();
            proptest::prop_assert_eq!(got, expected);
        }
    }
}
