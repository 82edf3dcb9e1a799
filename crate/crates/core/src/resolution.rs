//! Numerical data of the minimal resolution of the tame cyclic quotient
//! singularity `(m1, m2, n)`.
//!
//! The exceptional locus is a chain `C_1, ..., C_L` with self-intersections
//! `-b_l` given by the Jung–Hirzebruch expansion of `n/r`, where `r` is the
//! unique residue in `(0, n)` with `m1 + r*m2 = 0 (mod n)`. The two formal
//! branches are `C_0` (multiplicity `m2`) and `C_{L+1}` (multiplicity `m1`);
//! `y_l` is the node where `C_l` meets `C_{l+1}`.

use num_integer::Integer;

use crate::arith::{gcd_lcm, jh_expand, mod_inverse, residue, JHExpansion};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Singularity {
    pub m1: u64,
    pub m2: u64,
    pub n: u64,
}

impl Singularity {
    pub fn new(m1: u64, m2: u64, n: u64) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::BadInput("multiplicities must be positive".into()));
        }
        if n < 2 {
            return Err(Error::BadInput(format!(
                "extension degree must be >= 2, got {n}"
            )));
        }
        if n.gcd(&m1) != 1 || n.gcd(&m2) != 1 {
            return Err(Error::BadInput(format!(
                "n = {n} must be coprime to m1 = {m1} and m2 = {m2}"
            )));
        }
        Ok(Self { m1, m2, n })
    }

    /// The same singularity with the two branches exchanged.
    pub fn swapped(self) -> Self {
        Self {
            m1: self.m2,
            m2: self.m1,
            n: self.n,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    pub sing: Singularity,
    pub r: u64,
    pub jh: JHExpansion,
    /// `mu_0 = m2, mu_1, ..., mu_L, mu_{L+1} = m1`.
    pub mu: Vec<u64>,
    pub alpha1: u64,
    pub alpha2: u64,
    /// `gcd(m1, m2)`.
    pub m: u64,
    /// `lcm(m1, m2)`.
    pub big_m: u64,
}

impl ResolutionData {
    /// Chain length `L`.
    pub fn len(&self) -> usize {
        self.jh.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jh.is_empty()
    }

    pub fn n(&self) -> u64 {
        self.sing.n
    }

    /// `r_l` for `-1 <= l <= L`.
    pub fn r_at(&self, l: isize) -> u64 {
        self.jh.r_at(l)
    }

    /// `b_l` for `1 <= l <= L`.
    pub fn b_at(&self, l: usize) -> u64 {
        self.jh.b_at(l)
    }

    /// `mu_l` for `0 <= l <= L + 1`.
    pub fn mu_at(&self, l: usize) -> u64 {
        self.mu[l]
    }

    /// Multiplicity of the exceptional curve adjacent to the `m2` branch.
    pub fn mu_first(&self) -> u64 {
        self.mu[1]
    }

    /// Multiplicity of the exceptional curve adjacent to the `m1` branch.
    pub fn mu_last(&self) -> u64 {
        self.mu[self.len()]
    }
}

pub fn resolve(sing: Singularity) -> Result<ResolutionData> {
    let Singularity { m1, m2, n } = Singularity::new(sing.m1, sing.m2, sing.n)?;
    let alpha1 = mod_inverse(m1 as i64, n)?;
    let alpha2 = mod_inverse(m2 as i64, n)?;
    let r = residue(-(m1 as i128) * alpha2 as i128, n);
    let jh = jh_expand(n, r as i64)?;
    let (m, big_m) = gcd_lcm(m1, m2);

    let len = jh.len();
    let mut mu: Vec<u64> = Vec::with_capacity(len + 2);
    mu.push(m2);
    let first = m1 as u128 + r as u128 * m2 as u128;
    debug_assert_eq!(first % n as u128, 0);
    mu.push((first / n as u128) as u64);
    for l in 1..=len {
        let next = jh.b_at(l) as i128 * mu[l] as i128 - mu[l - 1] as i128;
        if next <= 0 {
            return Err(Error::BadInput(format!(
                "non-positive multiplicity in chain of ({m1},{m2},{n})"
            )));
        }
        mu.push(next as u64);
    }
    if mu[len + 1] != m1 {
        return Err(Error::BadInput(format!(
            "chain of ({m1},{m2},{n}) does not end at m1: {mu:?}"
        )));
    }
    Ok(ResolutionData {
        sing: Singularity { m1, m2, n },
        r,
        jh,
        mu,
        alpha1,
        alpha2,
        m,
        big_m,
    })
}

/// Eigenvalue exponents of the local coordinates at each node `y_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeEigenData {
    pub n: u64,
    /// `(z-exponent, w-exponent)` for `y_0, ..., y_L`: `xi` acts on `z_l` by
    /// `xi^(alpha1 r_{l-1})` and on `w_l` by `xi^(-alpha1 r_l)`.
    pub nodes: Vec<(u64, u64)>,
}

pub fn node_eigen_data(res: &ResolutionData) -> NodeEigenData {
    let n = res.n();
    let a1 = res.alpha1 as i128;
    let nodes = (0..=res.len() as isize)
        .map(|l| {
            (
                residue(a1 * res.r_at(l - 1) as i128, n),
                residue(-a1 * res.r_at(l) as i128, n),
            )
        })
        .collect();
    NodeEigenData { n, nodes }
}

/// `P_{-1}, P_0, ..., P_L` with `P_{-1} = 0`, `P_0 = 1`, `P_l = b_l P_{l-1} - P_{l-2}`.
pub fn universal_polys(res: &ResolutionData) -> Vec<i64> {
    let mut p = vec![0i64, 1];
    for l in 1..=res.len() {
        let next = res.b_at(l) as i64 * p[l] - p[l - 1];
        p.push(next);
    }
    p
}

/// True when the chain falls strictly to `m`, stays at `m`, then rises
/// strictly to `m1`.
pub fn is_stable(res: &ResolutionData) -> bool {
    let mu = &res.mu;
    let m = res.m;
    let mut i = 0;
    while i + 1 < mu.len() && mu[i] > m && mu[i + 1] < mu[i] {
        i += 1;
    }
    if mu[i] != m {
        return false;
    }
    while i + 1 < mu.len() && mu[i + 1] == m {
        i += 1;
    }
    while i + 1 < mu.len() {
        if mu[i + 1] <= mu[i] {
            return false;
        }
        i += 1;
    }
    true
}

/// The chain with its middle run of `m`'s collapsed to a single entry.
///
/// Two stable degrees in the same class modulo `lcm(m1, m2)` have equal
/// collapsed chains.
pub fn collapsed_chain(res: &ResolutionData) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(res.mu.len());
    for &v in &res.mu {
        if v == res.m && out.last() == Some(&res.m) {
            continue;
        }
        out.push(v);
    }
    out
}

const PROFILE_SEARCH_LIMIT: u64 = 1_000_000;

/// `(mu_1, mu_L)` shared by all stable `n` in the class `residue_class mod lcm(m1, m2)`.
pub fn stabilized_profile(m1: u64, m2: u64, residue_class: i64) -> Result<(u64, u64)> {
    if m1 == 0 || m2 == 0 {
        return Err(Error::BadInput("multiplicities must be positive".into()));
    }
    let (_, big_m) = gcd_lcm(m1, m2);
    let class = residue(residue_class as i128, big_m);
    if class.gcd(&big_m) != 1 {
        return Err(Error::BadInput(format!(
            "residue {residue_class} is not invertible modulo {big_m}"
        )));
    }
    let mut n = if class >= 2 { class } else { class + big_m };
    while n < 2 {
        n += big_m;
    }
    let mut previous: Option<(u64, u64)> = None;
    for _ in 0..PROFILE_SEARCH_LIMIT {
        let res = resolve(Singularity { m1, m2, n })?;
        if is_stable(&res) {
            let pair = (res.mu_first(), res.mu_last());
            if previous == Some(pair) {
                return Ok(pair);
            }
            previous = Some(pair);
        } else {
            previous = None;
        }
        n += big_m;
    }
    Err(Error::BadInput(format!(
        "no stable profile found for ({m1},{m2}) in class {class} mod {big_m}"
    )))
}
