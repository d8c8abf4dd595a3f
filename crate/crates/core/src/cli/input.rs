//! Argument parsing shared by the subcommands.

use std::ops::RangeInclusive;

use serde_json::Value;

use super::CliError;
use crate::exactalg::{parse_rational, RatFn, Var, Q};
use crate::recollement::{FiniteGroup, Word};

/// A JSON document given inline (starting with `{` or `[`) or as a path.
pub fn load_json(arg: &str) -> Result<Value, CliError> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

/// `"1,0,2"` as a list of sizes; the empty string is the empty list.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad size '{x}' in '{s}'"))))
        .collect()
}

/// `"3..6"` (inclusive) or a single `"4"`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("bad range '{s}', expected LO..HI"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: usize = lo.trim().parse().map_err(|_| bad())?;
            let hi: usize = hi.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(bad());
            }
            Ok(lo..=hi)
        }
        None => {
            let n: usize = s.trim().parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

pub fn parse_q(s: &str) -> Result<Q, CliError> {
    parse_rational(s.trim()).ok_or_else(|| CliError::Usage(format!("bad rational '{s}'")))
}

pub fn parse_q_list(s: &str) -> Result<Vec<Q>, CliError> {
    s.split(',').map(parse_q).collect()
}

/// Parameter `i` (1-based) given as a rational, an expression such as
/// `a1 + 1/2`, or `indeterminate` for the variable `a_i`.
pub fn parse_param(s: &str, i: Var) -> Result<RatFn, CliError> {
    let s = s.trim();
    if s == "indeterminate" || s == "?" {
        return Ok(RatFn::var(i));
    }
    RatFn::parse(s).map_err(|e| CliError::Usage(format!("bad parameter '{s}': {e}")))
}

/// Parameters separated by commas.
pub fn parse_params(s: &str) -> Result<Vec<RatFn>, CliError> {
    s.split(',').enumerate().map(|(i, x)| parse_param(x, i + 1)).collect()
}

/// `z<k>` for the cyclic group of order `k`, or `s3`.
pub fn parse_group(s: &str) -> Result<FiniteGroup, CliError> {
    let s = s.trim().to_ascii_lowercase();
    if s == "s3" {
        return Ok(FiniteGroup::s3());
    }
    match s.strip_prefix('z').and_then(|k| k.parse::<usize>().ok()) {
        Some(k) if k >= 1 => Ok(FiniteGroup::cyclic(k)),
        _ => Err(CliError::Usage(format!("unknown group '{s}', expected z<k> or s3"))),
    }
}

/// A single word from comma-separated factor sizes; `""` is the unit word.
pub fn parse_word(s: &str) -> Result<Word, CliError> {
    Ok(Word::new(parse_sizes(s)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    #[test]
    fn ranges_sizes_and_params() {
        assert_eq!(parse_range("3..6").unwrap(), 3..=6);
        assert_eq!(parse_range("3..=6").unwrap(), 3..=6);
        assert_eq!(parse_range("5").unwrap(), 5..=5);
        assert!(parse_range("6..3").is_err());
        assert_eq!(parse_sizes("1, 0,2").unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_sizes("").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_q_list("1,-3/2").unwrap(), vec![q(1, 1), q(-3, 2)]);
        let ps = parse_params("indeterminate,1/2,a1 - 1").unwrap();
        assert_eq!(ps[0], RatFn::var(1));
        assert_eq!(ps[1], RatFn::from_q(q(1, 2)));
        assert_eq!(ps[2].to_string(), "a1 - 1");
        assert_eq!(parse_group("Z3").unwrap().order(), 3);
        assert!(parse_group("q8").is_err());
        assert_eq!(parse_word("").unwrap(), Word::unit());
    }
}
