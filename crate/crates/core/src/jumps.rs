//! Filtration jumps from character sweeps over growing `n`.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fiber::{h1_character_with, CharacterMultiset, FiberGraph};
use crate::singtrace::{ChainSum, TraceMethod};

/// `lcm` of the multiplicities of principal vertices: positive genus, or
/// at least three edge ends. `1` when there are none.
pub fn principal_lcm(g: &FiberGraph) -> u64 {
    g.vertices()
        .iter()
        .filter(|v| v.genus > 0 || g.degree(&v.id) >= 3)
        .fold(1, |acc, v| acc.lcm(&v.mult))
}

/// `((-a) mod n) / n` for each exponent `a`, repeated by multiplicity, ascending.
pub fn candidate_jumps(ch: &CharacterMultiset) -> Vec<Ratio<u64>> {
    let n = ch.n;
    let mut out: Vec<Ratio<u64>> = ch
        .flattened()
        .into_iter()
        .map(|a| Ratio::new((n - a % n) % n, n))
        .collect();
    out.sort();
    out
}

/// Nearest `k / n_tilde` to `x`, provided it lies within `1/n` of `x`.
pub fn round_to_denominator(x: Ratio<u64>, n_tilde: u64, n: u64) -> Result<Ratio<u64>> {
    let (p, q) = (*x.numer() as u128, *x.denom() as u128);
    let t = n_tilde as u128;
    let k = (2 * p * t + q) / (2 * q);
    // |p/q - k/t| <= 1/n  <=>  |p t - k q| n <= q t
    if (p * t).abs_diff(k * q) * n as u128 > q * t {
        return Err(Error::ToleranceExceeded {
            p: p as u64,
            n: q as u64,
            n_tilde,
        });
    }
    if k >= t {
        return Err(Error::InconsistentRounding(format!(
            "{x} rounds to 1 at n = {n}, outside [0, 1)"
        )));
    }
    Ok(Ratio::new(k as u64, n_tilde))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpOptions {
    /// Every sampled `n` exceeds this.
    pub n_min: u64,
    /// Number of `n` values per residue class.
    pub sweeps: usize,
    /// Also sweep the class `-1 mod l` and require agreement.
    pub cross_check_residue: bool,
}

impl Default for JumpOptions {
    fn default() -> Self {
        Self {
            n_min: 1000,
            sweeps: 3,
            cross_check_residue: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpSet {
    /// Sorted, with repetitions.
    pub jumps: Vec<Ratio<u64>>,
    pub n_tilde: u64,
    /// The `n` values that were evaluated.
    pub witnesses: Vec<u64>,
}

impl JumpSet {
    /// `p/q` strings with an explicit denominator, e.g. `0/1`.
    pub fn formatted(&self) -> Vec<String> {
        self.jumps
            .iter()
            .map(|j| format!("{}/{}", j.numer(), j.denom()))
            .collect()
    }
}

/// The first `count` integers `n > bound` with `n = class (mod l)`.
pub fn sample_ns(bound: u64, l: u64, class: u64, count: usize) -> Vec<u64> {
    let class = class % l;
    let mut n = bound + 1;
    n += (class + l - n % l) % l;
    (0..count as u64).map(|i| n + i * l).collect()
}

/// Rounded jump multiset at a single `n`.
pub fn jumps_at(
    g: &FiberGraph,
    n: u64,
    n_tilde: u64,
    method: &dyn TraceMethod,
) -> Result<Vec<Ratio<u64>>> {
    let ch = h1_character_with(g, n, method)?;
    let mut out = candidate_jumps(&ch)
        .into_iter()
        .map(|x| round_to_denominator(x, n_tilde, n))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

pub fn compute_jumps(g: &FiberGraph, opts: &JumpOptions) -> Result<JumpSet> {
    compute_jumps_with(g, opts, &ChainSum)
}

pub fn compute_jumps_with(
    g: &FiberGraph,
    opts: &JumpOptions,
    method: &dyn TraceMethod,
) -> Result<JumpSet> {
    if opts.sweeps == 0 {
        return Err(Error::BadInput("at least one sweep is required".into()));
    }
    let l = g.mult_lcm();
    let n_tilde = principal_lcm(g);
    let bound = (2 * n_tilde * l).max(opts.n_min);
    let mut witnesses = sample_ns(bound, l, 1, opts.sweeps);
    if opts.cross_check_residue {
        witnesses.extend(sample_ns(bound, l, l - 1, opts.sweeps));
    }

    let mut agreed: Option<Vec<Ratio<u64>>> = None;
    for &n in &witnesses {
        let js = jumps_at(g, n, n_tilde, method)?;
        match &agreed {
            None => agreed = Some(js),
            Some(prev) if *prev != js => {
                return Err(Error::InconsistentRounding(format!(
                    "n = {} gives {:?} but n = {n} gives {:?}",
                    witnesses[0], prev, js
                )))
            }
            Some(_) => {}
        }
    }
    Ok(JumpSet {
        jumps: agreed.unwrap_or_default(),
        n_tilde,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::fiber::parse_graph;

    const TYPE_IV: &str = "\
vertex v1 genus=0 mult=1
vertex v2 genus=0 mult=1
vertex v3 genus=0 mult=1
vertex v4 genus=0 mult=3
edge v1 v4
edge v2 v4
edge v3 v4
";

    fn r(p: u64, q: u64) -> Ratio<u64> {
        Ratio::new(p, q)
    }

    #[test]
    fn principal_lcm_examples() {
        assert_eq!(principal_lcm(&parse_graph(TYPE_IV).unwrap()), 3);
        let cycle =
            parse_graph("vertex a genus=0 mult=1\nvertex b genus=0 mult=1\nedge a b\nedge b a\n")
                .unwrap();
        assert_eq!(principal_lcm(&cycle), 1);
        let nodal = parse_graph("vertex a genus=0 mult=1\nedge a a\n").unwrap();
        assert_eq!(principal_lcm(&nodal), 1);
    }

    #[test]
    fn candidate_examples() {
        let ch = CharacterMultiset {
            n: 13,
            exponents: BTreeMap::from([(9, 1)]),
        };
        assert_eq!(candidate_jumps(&ch), vec![r(4, 13)]);
        let ch = CharacterMultiset {
            n: 13,
            exponents: BTreeMap::from([(10, 1), (4, 1)]),
        };
        assert_eq!(candidate_jumps(&ch), vec![r(3, 13), r(9, 13)]);
        let ch = CharacterMultiset {
            n: 13,
            exponents: BTreeMap::from([(0, 2)]),
        };
        assert_eq!(candidate_jumps(&ch), vec![r(0, 1), r(0, 1)]);
    }

    #[test]
    fn rounding() {
        assert_eq!(
            round_to_denominator(r(334, 1001), 3, 1001).unwrap(),
            r(1, 3)
        );
        assert_eq!(round_to_denominator(r(0, 1), 1, 1001).unwrap(), r(0, 1));
        assert!(matches!(
            round_to_denominator(r(400, 1001), 3, 1001),
            Err(Error::ToleranceExceeded { .. })
        ));
        assert!(matches!(
            round_to_denominator(r(1000, 1001), 1, 1001),
            Err(Error::InconsistentRounding(_))
        ));
    }

    #[test]
    fn rounding_target_is_unique() {
        // with n > 2 n_tilde two targets are more than 2/n apart
        for n_tilde in 1..13u64 {
            let n = 2 * n_tilde + 1;
            for p in 0..n {
                let x = r(p, n);
                let hits = (0..n_tilde)
                    .filter(|&k| (p * n_tilde).abs_diff(k * n) <= n_tilde)
                    .count();
                assert!(hits <= 1, "{x} with n_tilde {n_tilde}");
            }
        }
    }

    #[test]
    fn sampling() {
        assert_eq!(sample_ns(1000, 3, 1, 3), vec![1003, 1006, 1009]);
        assert_eq!(sample_ns(1000, 12, 11, 2), vec![1007, 1019]);
        assert_eq!(sample_ns(1000, 1, 0, 2), vec![1001, 1002]);
    }

    #[test]
    fn type_iv_jump() {
        let g = parse_graph(TYPE_IV).unwrap();
        let js = compute_jumps(&g, &JumpOptions::default()).unwrap();
        assert_eq!(js.jumps, vec![r(1, 3)]);
        assert_eq!(js.n_tilde, 3);
        assert_eq!(js.witnesses, vec![1003, 1006, 1009]);
        assert_eq!(js.formatted(), vec!["1/3"]);

        let opts = JumpOptions {
            cross_check_residue: true,
            ..JumpOptions::default()
        };
        assert_eq!(compute_jumps(&g, &opts).unwrap().jumps, vec![r(1, 3)]);
    }

    #[test]
    fn nodal_curve_jump_is_zero() {
        let g = parse_graph("vertex a genus=0 mult=1\nedge a a\n").unwrap();
        let js = compute_jumps(&g, &JumpOptions::default()).unwrap();
        assert_eq!(js.formatted(), vec!["0/1"]);
    }
}
