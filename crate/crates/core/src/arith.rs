//! Integer helpers and the Jung–Hirzebruch expansion `n/r = [b_1, ..., b_L]`.

use num_integer::Integer;

use crate::error::{Error, Result};

/// `(gcd(a, b), lcm(a, b))` for positive integers.
pub fn gcd_lcm(a: u64, b: u64) -> (u64, u64) {
    (a.gcd(&b), a.lcm(&b))
}

/// The inverse of `a` modulo `n`, in `[1, n-1]` (or `0` when `n == 1`).
pub fn mod_inverse(a: i64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::BadInput("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(0);
    }
    let n_i = n as i128;
    let a_red = (a as i128).rem_euclid(n_i);
    let egcd = a_red.extended_gcd(&n_i);
    if egcd.gcd != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    Ok(egcd.x.rem_euclid(n_i) as u64)
}

/// Reduce a signed integer into `[0, n)`.
pub fn residue(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// Jung–Hirzebruch expansion of `n/r`.
///
/// `rseq` holds `r_{-1} = n, r_0 = r, r_1, ..., r_L = 0`; `b[l-1]` is `b_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JHExpansion {
    pub n: u64,
    pub r: u64,
    pub b: Vec<u64>,
    pub rseq: Vec<u64>,
}

impl JHExpansion {
    /// Length `L` of the expansion.
    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// `r_l` for `-1 <= l <= L`.
    pub fn r_at(&self, l: isize) -> u64 {
        self.rseq[(l + 1) as usize]
    }

    /// `b_l` for `1 <= l <= L`.
    pub fn b_at(&self, l: usize) -> u64 {
        self.b[l - 1]
    }
}

/// Expand `n/r` with `r` first normalized into `(0, n)`.
pub fn jh_expand(n: u64, r: i64) -> Result<JHExpansion> {
    if n < 2 {
        return Err(Error::BadInput(format!("jh_expand needs n >= 2, got {n}")));
    }
    let r = residue(r as i128, n);
    if r == 0 || r.gcd(&n) != 1 {
        return Err(Error::BadInput(format!(
            "jh_expand needs 0 < r < n with gcd(r, n) = 1, got r = {r}, n = {n}"
        )));
    }
    let mut rseq = vec![n, r];
    let mut b = Vec::new();
    let (mut prev, mut cur) = (n, r);
    while cur != 0 {
        let bl = prev.div_ceil(cur);
        let next = bl * cur - prev;
        b.push(bl);
        rseq.push(next);
        prev = cur;
        cur = next;
    }
    Ok(JHExpansion { n, r, b, rseq })
}
