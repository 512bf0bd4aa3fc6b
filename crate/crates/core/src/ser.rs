//! Serde helpers writing rationals as `"p/q"` strings.

use serde::ser::{SerializeSeq, Serializer};

use crate::Rational;

pub fn rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&crate::rational_string(q))
}

pub fn rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(qs.len()))?;
    for q in qs {
        seq.serialize_element(&crate::rational_string(q))?;
    }
    seq.end()
}

pub fn opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => rational(q, s),
        None => s.serialize_none(),
    }
}

pub fn opt_rationals<S: Serializer>(qs: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
    match qs {
        Some(qs) => rationals(qs, s),
        None => s.serialize_none(),
    }
}
