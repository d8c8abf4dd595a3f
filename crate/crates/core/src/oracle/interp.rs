//! Interpolation of integer-indexed families of structure constants.

use std::collections::{BTreeMap, BTreeSet};

use super::OracleError;
use crate::exactalg::{interpolate_poly_values, MultiPoly, T};

/// Samples `f(n)` at `degree_bound + 2` consecutive `n` starting at `min_n`
/// and interpolates in `T`; the last sample is a witness and must agree.
pub fn interpolate_family<F>(min_n: usize, degree_bound: usize, f: F) -> Result<MultiPoly, OracleError>
where
    F: Fn(usize) -> Result<MultiPoly, OracleError>,
{
    let samples = (min_n..min_n + degree_bound + 2)
        .map(|n| Ok((n as i64, f(n)?)))
        .collect::<Result<Vec<_>, OracleError>>()?;
    Ok(interpolate_poly_values(T, &samples, degree_bound)?)
}

/// As [`interpolate_family`] for a table of values; absent keys count as zero
/// and zero results are dropped.
pub fn interpolate_table<K, F>(min_n: usize, degree_bound: usize, f: F) -> Result<BTreeMap<K, MultiPoly>, OracleError>
where
    K: Ord + Clone,
    F: Fn(usize) -> Result<BTreeMap<K, MultiPoly>, OracleError>,
{
    let tables = (min_n..min_n + degree_bound + 2)
        .map(|n| Ok((n as i64, f(n)?)))
        .collect::<Result<Vec<_>, OracleError>>()?;
    let keys: BTreeSet<K> = tables.iter().flat_map(|(_, t)| t.keys().cloned()).collect();
    let mut out = BTreeMap::new();
    for k in keys {
        let samples: Vec<(i64, MultiPoly)> = tables
            .iter()
            .map(|(n, t)| (*n, t.get(&k).cloned().unwrap_or_else(MultiPoly::zero)))
            .collect();
        let p = interpolate_poly_values(T, &samples, degree_bound)?;
        if !p.is_zero() {
            out.insert(k, p);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::qi;

    #[test]
    fn binomial_family() {
        let p = interpolate_family(0, 2, |n| Ok(MultiPoly::constant(qi((n * n.saturating_sub(1) / 2) as i64))))
            .unwrap();
        assert_eq!(p.to_string(), "1/2*T^2 - 1/2*T");
        let bad = interpolate_family(0, 1, |n| Ok(MultiPoly::constant(qi((n * n) as i64))));
        assert!(bad.is_err());
    }
}
