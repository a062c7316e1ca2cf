use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::SolveError;
use crate::exact::IntegralCover;
use crate::family::{DIntervalFamily, WeightSystem};
use crate::lp::FractionalCover;
use crate::rational::{common_denominator, from_int};

/// Rounds a fractional `w`-cover to an integral one of size at most
/// `d` times the fractional objective.
///
/// The cover is written as value `1/q` on a multiset `P` of points, with `q`
/// scaled so that `d | q`; every `(q/d)`-th element of `P` is kept, walking
/// lines in order and each line left to right.
pub fn round_cover(
    h: &DIntervalFamily,
    w: &WeightSystem,
    cover: &FractionalCover,
) -> Result<IntegralCover, SolveError> {
    if !cover.is_cover_of(h, w) {
        return Err(SolveError::Precondition("input is not a fractional w-cover".into()));
    }
    let d = BigInt::from(h.d);
    let mut q = common_denominator(cover.values.values());
    q = &q * (&d / q.gcd(&d));
    let step = &q / &d;
    let mut seen = BigInt::zero();
    let mut values = BTreeMap::new();
    for (&p, v) in &cover.values {
        let copies = (v * from_int(q.clone())).to_integer();
        let taken = (&seen + &copies).div_floor(&step) - seen.div_floor(&step);
        seen += copies;
        if taken > BigInt::zero() {
            let taken = taken
                .to_u64()
                .ok_or_else(|| SolveError::Internal("rounded multiplicity overflows u64".into()))?;
            values.insert(p, taken);
        }
    }
    let out = IntegralCover { values };
    if !out.is_cover_of(h, w) {
        return Err(SolveError::Internal("rounded cover misses an edge".into()));
    }
    Ok(out)
}
