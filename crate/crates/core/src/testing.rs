use proptest::prelude::*;

use crate::scalar::{ratio, Scalar};

pub fn small_rational() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}
