use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::group_ring::GroupRingElement;
use crate::arith::residue;
use crate::error::{Error, Result};

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` by every `Phi_d` with `d | n`, `d < n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
    assert!(n >= 1);
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_memo(d, memo);
            p = exact_div_monic(&p, &phi_d);
        }
    }
    memo.insert(n, p.clone());
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    q
}

/// The field `Q(zeta_n)`, presented as `Q[x] / Phi_n(x)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    n: u64,
    phi: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn new(n: u64) -> Arc<Self> {
        assert!(n >= 1, "conductor must be positive");
        Arc::new(Self {
            n,
            phi: cyclotomic_polynomial(n),
        })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Degree `phi(n)` of the field.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus_polynomial(&self) -> &[BigInt] {
        &self.phi
    }

    /// Reduce an integer polynomial of any length modulo `Phi_n`.
    fn reduce(&self, mut p: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        for k in (d..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut p[k]);
            for (j, pj) in self.phi[..d].iter().enumerate() {
                p[k - d + j] -= &c * pj;
            }
        }
        p.resize(d, BigInt::zero());
        p
    }
}

/// An exact element of `Q(zeta_n)`: `num(zeta) / den` with `deg num < phi(n)`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let num = field.reduce(num);
        let mut out = Self { field, num, den };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() && !g.is_zero() {
            for c in &mut self.num {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 0)
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, k: impl Into<BigInt>) -> Self {
        Self::from_parts(field.clone(), vec![k.into()], BigInt::one())
    }

    /// `zeta^k`.
    pub fn zeta_power(field: &Arc<CyclotomicField>, k: i128) -> Self {
        let e = residue(k, field.n) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        Self::from_parts(field.clone(), num, BigInt::one())
    }

    /// Image of a group ring element under `xi -> zeta^power`.
    pub fn from_group_ring(
        field: &Arc<CyclotomicField>,
        a: &GroupRingElement,
        power: i128,
    ) -> Result<Self> {
        if a.modulus() != field.n {
            return Err(Error::ModulusMismatch(a.modulus(), field.n));
        }
        let mut num = vec![BigInt::zero(); field.n as usize];
        for (e, c) in a.terms() {
            num[residue(e as i128 * power, field.n) as usize] += c;
        }
        Ok(Self::from_parts(field.clone(), num, BigInt::one()))
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.n
    }

    /// Rational coefficients of the canonical representative, lowest degree first.
    pub fn coefficients(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.n != other.field.n {
            return Err(Error::ModulusMismatch(self.field.n, other.field.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| a * &other.den + b * &self.den)
            .collect();
        Ok(Self::from_parts(
            self.field.clone(),
            num,
            &self.den * &other.den,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); (2 * d).max(1)];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_parts(
            self.field.clone(),
            prod,
            &self.den * &other.den,
        ))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against `Phi_n`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.field.n));
        }
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let mut r0 = trim(to_q(&self.field.phi));
        let mut r1 = trim(to_q(&self.num));
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            s0 = s1;
            // keep the remainder monic to limit coefficient growth
            if let Some(lead) = r.last().cloned() {
                r1 = r.into_iter().map(|c| c / &lead).collect();
                s1 = s2.into_iter().map(|c| c / &lead).collect();
            } else {
                r1 = r;
                s1 = s2;
            }
        }
        // r0 is a nonzero constant: s0 * num = r0 (mod Phi_n)
        debug_assert_eq!(r0.len(), 1);
        let scale = BigRational::from_integer(self.den.clone()) / &r0[0];
        let inv_q: Vec<BigRational> = s0.into_iter().map(|c| c * &scale).collect();
        let common = inv_q
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = inv_q
            .iter()
            .map(|c| c.numer() * (&common / c.denom()))
            .collect();
        Ok(Self::from_parts(self.field.clone(), num, common))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let mut q = vec![BigRational::zero(); a.len() - db];
    let lead = &b[db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    rem.truncate(db);
    (trim(q), trim(rem))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.den == other.den && self.num == other.num
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})[{}]", self.field.n, self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("{c}*z^{e}"),
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        if self.den.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.den)
        }
    }
}

/// Evaluate a group ring element at `zeta_n^power`.
pub fn cyc_eval(a: &GroupRingElement, power: i128) -> CyclotomicNumber {
    let field = CyclotomicField::new(a.modulus());
    CyclotomicNumber::from_group_ring(&field, a, power).expect("field built from the same modulus")
}

pub fn cyc_inv(a: &CyclotomicNumber) -> Result<CyclotomicNumber> {
    a.inv()
}
