//! The classical Kontsevich recursion for rational plane curves through
//! general points, kept as an independent cross-check.
//!
//! Three general points pin down a plane in projective 3-space, so the planar
//! table at `s = 3`, `theta = 0` must reproduce these numbers. The recursion
//! here shares nothing with the planar one except the binomial convention;
//! nothing in this module reads the planar table.

use num::bigint::BigInt;
use num::traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::gw::binomial;
use crate::Error;

/// Number of rational degree-`d` plane curves through `3d - 1` general
/// points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlaneCount {
    pub d: u32,
    pub value: BigInt,
}

impl Serialize for PlaneCount {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PlaneCount", 2)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.end()
    }
}

/// All counts up to `d_max`, computed bottom-up so each degree reuses the
/// lower ones:
///
/// ```text
/// K_1 = 1,
/// K_d = sum_{d1 + d2 = d}  K_d1 K_d2 ( d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1) )
/// ```
pub fn plane_counts(d_max: u32) -> Result<Vec<PlaneCount>, Error> {
    if d_max == 0 {
        return Err(Error::InvalidDegree(0));
    }
    let mut table: Vec<BigInt> = vec![BigInt::one()];
    for d in 2..=d_max as u64 {
        let mut acc = BigInt::zero();
        for d1 in 1..d {
            let d2 = d - d1;
            let (k1, k2) = (&table[d1 as usize - 1], &table[d2 as usize - 1]);
            let (b1, b2) = (BigInt::from(d1), BigInt::from(d2));
            let quartic = &b1 * &b1 * &b2 * &b2 * binomial(3 * d - 4, 3 * d1 as i64 - 2);
            let cubic = &b1 * &b1 * &b1 * &b2 * binomial(3 * d - 4, 3 * d1 as i64 - 1);
            acc += k1 * k2 * (quartic - cubic);
        }
        table.push(acc);
    }
    Ok(table
        .into_iter()
        .enumerate()
        .map(|(i, value)| PlaneCount {
            d: i as u32 + 1,
            value,
        })
        .collect())
}

/// The count for a single degree.
pub fn kontsevich(d: u32) -> Result<BigInt, Error> {
    Ok(plane_counts(d)?.pop().expect("nonempty table").value)
}
