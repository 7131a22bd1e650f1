use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Q;

pub(crate) fn factorial(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn int(n: impl Into<BigInt>) -> Q {
    Q::from_integer(n.into())
}

pub(crate) fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Q {
    Q::new(num.into(), den.into())
}

pub(crate) fn add_into<K: Ord>(map: &mut std::collections::BTreeMap<K, Q>, key: K, c: Q) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}
