//! Exact arithmetic: the integral group ring of `Z/n` and cyclotomic fields.

mod cyclotomic;
mod group_ring;

pub use cyclotomic::{cyc_eval, cyc_inv, cyclotomic_polynomial, CyclotomicField, CyclotomicNumber};
pub use group_ring::{
    gr_add, gr_eval_at_one, gr_geom, gr_mul, gr_scale, GroupRingElement, DENSE_LIMIT,
};
