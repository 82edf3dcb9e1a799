//! Brauer traces of singularities and of vertices.
//!
//! The chain sum and the closed form produce integer group-ring elements;
//! the oracle evaluates the defining expressions with denominators exactly
//! in a cyclotomic field.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{mod_inverse, residue};
use crate::error::{Error, Result};
use crate::exactalg::{CyclotomicField, CyclotomicNumber, GroupRingElement};
use crate::resolution::{is_stable, ResolutionData};

/// Accumulates `coeff * xi^e` in machine integers before building the ring element.
struct Accumulator {
    n: u64,
    coeffs: Vec<i64>,
}

impl Accumulator {
    fn new(n: u64) -> Self {
        Self {
            n,
            coeffs: vec![0; n as usize],
        }
    }

    fn add(&mut self, exp: i128, coeff: i64) {
        self.coeffs[residue(exp, self.n) as usize] += coeff;
    }

    fn finish(self) -> GroupRingElement {
        GroupRingElement::from_terms(
            self.n,
            self.coeffs
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(e, c)| (e as i128, c)),
        )
    }
}

/// `Tr_sigma` as the sum over the resolution chain of the pair products and
/// the combined end terms.
pub fn trace_polynomial(res: &ResolutionData) -> GroupRingElement {
    let n = res.n();
    let a1 = res.alpha1 as i128;
    let ni = n as i128;
    // exponent of chi^k
    let chi = |k: i128| -> i128 { (a1 * k.rem_euclid(ni)) % ni };
    let len = res.len();
    let mut acc = Accumulator::new(n);

    for l in 0..=len {
        let rl = res.r_at(l as isize) as i128;
        let rprev = res.r_at(l as isize - 1) as i128;
        let (ml, mnext) = (res.mu_at(l) as i128, res.mu_at(l + 1) as i128);
        for i in 0..ml {
            let ei = chi(-rl * i);
            for j in 0..mnext {
                acc.add(ei + chi(rprev * j), 1);
            }
        }
    }

    for j in 1..=len {
        let l = j - 1;
        let rl = res.r_at(l as isize) as i128;
        let rprev = res.r_at(l as isize - 1) as i128;
        let ml = res.mu_at(l) as i128;
        let mnext = res.mu_at(l + 1) as i128;
        let b = res.b_at(l + 1) as i128;
        for k in 0..mnext {
            let base = chi(rprev * k - rl * (ml - 1));
            let step = chi(rl);
            let count = b * (mnext - k) - 1;
            let mut e = base;
            for _ in 0..count {
                acc.add(e, -1);
                e = (e + step) % ni;
            }
        }
    }
    acc.finish()
}

/// The three coefficient sequences of the closed form, indexed by `r`
/// before the exponents are attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormCoefficients {
    /// `mu_1 - ceil(r mu_1 / mu_0)` for `r < mu_0`, paired with `xi^(alpha2 r)`.
    pub first: Vec<u64>,
    /// `mu_L - ceil(r mu_L / mu_{L+1})` for `r < mu_{L+1}`, paired with `xi^(alpha1 r)`.
    pub second: Vec<u64>,
    /// Length `m`; each term enters with coefficient `-1` on `xi^(alpha r)`.
    pub third: u64,
}

pub fn closed_form_coefficients(res: &ResolutionData) -> Result<ClosedFormCoefficients> {
    if !is_stable(res) {
        return Err(Error::NotStable {
            m1: res.sing.m1,
            m2: res.sing.m2,
            n: res.n(),
            mu: res.mu.clone(),
        });
    }
    let law = |top: u64, bottom: u64| -> Vec<u64> {
        (0..bottom)
            .map(|r| top - (r * top).div_ceil(bottom))
            .collect()
    };
    Ok(ClosedFormCoefficients {
        first: law(res.mu_first(), res.mu_at(0)),
        second: law(res.mu_last(), res.mu_at(res.len() + 1)),
        third: res.m,
    })
}

/// The residue-class closed form, defined only in the stable range.
pub fn trace_closed_form(res: &ResolutionData) -> Result<GroupRingElement> {
    let c = closed_form_coefficients(res)?;
    let n = res.n();
    let alpha = mod_inverse(res.m as i64, n)? as i128;
    let mut acc = Accumulator::new(n);
    for (r, &k) in c.first.iter().enumerate() {
        acc.add(res.alpha2 as i128 * r as i128, k as i64);
    }
    for (r, &k) in c.second.iter().enumerate() {
        acc.add(res.alpha1 as i128 * r as i128, k as i64);
    }
    for r in 0..c.third as i128 {
        acc.add(alpha * r, -1);
    }
    Ok(acc.finish())
}

/// Per-field cache of `(1 - zeta^a)^-1`.
pub struct OracleContext {
    field: Arc<CyclotomicField>,
    inverses: HashMap<u64, CyclotomicNumber>,
}

impl OracleContext {
    pub fn new(n: u64) -> Self {
        Self {
            field: CyclotomicField::new(n),
            inverses: HashMap::new(),
        }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    fn zeta(&self, e: i128) -> CyclotomicNumber {
        CyclotomicNumber::zeta_power(&self.field, e)
    }

    fn one_minus_zeta_inv(&mut self, e: i128) -> Result<CyclotomicNumber> {
        let key = residue(e, self.field.conductor());
        if let Some(v) = self.inverses.get(&key) {
            return Ok(v.clone());
        }
        let one = CyclotomicNumber::one(&self.field);
        let v = one.try_sub(&self.zeta(key as i128))?.inv()?;
        self.inverses.insert(key, v.clone());
        Ok(v)
    }

    /// `sum_l Tr_{y_l}` at `zeta^power`, from the expressions with denominators.
    pub fn trace(&mut self, res: &ResolutionData, power: i128) -> Result<CyclotomicNumber> {
        let n = res.n();
        if n != self.field.conductor() {
            return Err(Error::ModulusMismatch(n, self.field.conductor()));
        }
        if (residue(power, n)).gcd(&n) != 1 {
            return Err(Error::BadInput(format!(
                "power {power} is not a unit modulo {n}"
            )));
        }
        let a = (res.alpha1 as i128 * residue(power, n) as i128) % n as i128;
        // exponent of chi^k in zeta
        let chi = |k: i128| -> i128 { a * k.rem_euclid(n as i128) };
        let f = self.field.clone();
        let len = res.len();
        let r = |l: isize| res.r_at(l) as i128;
        let mu = |l: usize| res.mu_at(l) as i128;

        let mut total = CyclotomicNumber::from_integer(&f, mu(1))
            .try_mul(&self.one_minus_zeta_inv(chi(-r(0)))?)?;
        let last = CyclotomicNumber::from_integer(&f, mu(len))
            .try_mul(&self.one_minus_zeta_inv(chi(r(len as isize - 1)))?)?;
        total = total.try_add(&last)?;

        let one = CyclotomicNumber::one(&f);
        for l in 1..len {
            let li = l as isize;
            let num = one.try_sub(&self.zeta(chi(r(li - 1) * mu(l + 1) - r(li) * mu(l))))?;
            let term = num
                .try_mul(&self.one_minus_zeta_inv(chi(r(li - 1)))?)?
                .try_mul(&self.one_minus_zeta_inv(chi(-r(li)))?)?;
            total = total.try_add(&term)?;
        }
        Ok(total)
    }
}

/// Exact value of the singularity trace in `Q(zeta_n)` at `zeta^power`.
pub fn trace_oracle(res: &ResolutionData, power: i128) -> Result<CyclotomicNumber> {
    OracleContext::new(res.n()).trace(res, power)
}

/// Vertex contribution `sum_{k<m} xi^(alpha_m k) ((m - k) C^2 + 1 - g)`.
pub fn vertex_trace(mult: u64, genus: u64, self_int: i64, n: u64) -> Result<GroupRingElement> {
    if mult == 0 || n == 0 {
        return Err(Error::BadInput(
            "multiplicity and n must be positive".into(),
        ));
    }
    let alpha = mod_inverse(mult as i64, n)? as i128;
    let mut out = GroupRingElement::zero(n);
    for k in 0..mult {
        let c = (mult - k) as i128 * self_int as i128 + 1 - genus as i128;
        out.add_term(alpha * k as i128, BigInt::from(c));
    }
    Ok(out)
}

/// A way of computing the integral trace polynomial of a singularity.
pub trait TraceMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn trace(&self, res: &ResolutionData) -> Result<GroupRingElement>;
}

/// Sum over the resolution chain; valid for every `n`.
pub struct ChainSum;

impl TraceMethod for ChainSum {
    fn name(&self) -> &'static str {
        "chain"
    }

    fn trace(&self, res: &ResolutionData) -> Result<GroupRingElement> {
        Ok(trace_polynomial(res))
    }
}

/// Residue-class closed form; refuses chains outside the stable range.
pub struct ClosedForm;

impl TraceMethod for ClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn trace(&self, res: &ResolutionData) -> Result<GroupRingElement> {
        trace_closed_form(res)
    }
}

/// Trace methods addressable by name.
pub struct TraceRegistry {
    methods: BTreeMap<&'static str, Box<dyn TraceMethod>>,
}

pub const DEFAULT_METHOD: &str = "chain";

impl TraceRegistry {
    pub fn empty() -> Self {
        Self {
            methods: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, method: Box<dyn TraceMethod>) {
        self.methods.insert(method.name(), method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn TraceMethod> {
        self.methods
            .get(name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.methods.keys().copied()
    }
}

impl Default for TraceRegistry {
    fn default() -> Self {
        let mut reg = Self::empty();
        reg.register(Box::new(ChainSum));
        reg.register(Box::new(ClosedForm));
        reg
    }
}
