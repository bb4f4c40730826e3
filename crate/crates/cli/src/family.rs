//! Plain-text family specs: `PSL(m,q)`, `PSU(m,q)`, `PSp(2m,q)`,
//! `O(2m+1,q)`, `O+(2m,q)`, `O-(2m,q)`, `A(m)`, `S(m)`. The symplectic and
//! orthogonal dimensions are the natural module dimensions.

use anyhow::{anyhow, bail, Result};
use symdes::arith::recognize_prime_power;
use symdes::GroupFamily;

pub fn parse_family(spec: &str) -> Result<GroupFamily> {
    let spec = spec.trim();
    let open = spec.find('(').ok_or_else(|| anyhow!("missing '(' in family spec {spec:?}"))?;
    if !spec.ends_with(')') {
        bail!("missing ')' in family spec {spec:?}");
    }
    let kind = &spec[..open];
    let args: Vec<&str> = spec[open + 1..spec.len() - 1].split(',').map(str::trim).collect();
    let arg = |idx: usize| -> Result<u64> {
        args.get(idx)
            .ok_or_else(|| anyhow!("family spec {spec:?} needs more arguments"))?
            .parse()
            .map_err(|_| anyhow!("bad number in family spec {spec:?}"))
    };

    let prime_power = |q: u64| {
        recognize_prime_power(q).ok_or_else(|| anyhow!("{q} is not a prime power"))
    };

    Ok(match kind {
        "A" => {
            if args.len() != 1 {
                bail!("A(m) takes one argument");
            }
            GroupFamily::Alternating { m: arg(0)? as u32 }
        }
        "S" => {
            if args.len() != 1 {
                bail!("S(m) takes one argument");
            }
            GroupFamily::Symmetric { m: arg(0)? as u32 }
        }
        "PSL" | "PSU" | "PSp" | "O" | "O+" | "O-" => {
            if args.len() != 2 {
                bail!("{kind}(..) takes two arguments");
            }
            let dim = arg(0)? as u32;
            let q = prime_power(arg(1)?)?;
            match kind {
                "PSL" => GroupFamily::Linear { m: dim, q },
                "PSU" => GroupFamily::Unitary { m: dim, q },
                "PSp" => {
                    if !dim.is_multiple_of(2) {
                        bail!("PSp needs an even dimension, got {dim}");
                    }
                    GroupFamily::Symplectic { m: dim / 2, q }
                }
                "O" => {
                    if dim.is_multiple_of(2) {
                        bail!("O(d,q) needs an odd dimension, got {dim}");
                    }
                    GroupFamily::OrthogonalOdd { m: (dim - 1) / 2, q }
                }
                "O+" => {
                    if !dim.is_multiple_of(2) {
                        bail!("O+(d,q) needs an even dimension, got {dim}");
                    }
                    GroupFamily::OrthogonalPlus { m: dim / 2, q }
                }
                _ => {
                    if !dim.is_multiple_of(2) {
                        bail!("O-(d,q) needs an even dimension, got {dim}");
                    }
                    GroupFamily::OrthogonalMinus { m: dim / 2, q }
                }
            }
        }
        other => bail!("unknown family kind {other:?}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_round_trips() {
        for spec in ["PSL(2,11)", "PSU(3,4)", "PSp(4,5)", "O(7,3)", "O+(8,2)", "O-(10,3)", "A(7)", "S(6)"] {
            let family = parse_family(spec).unwrap();
            assert_eq!(family.to_string(), spec);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for spec in ["PSL(2)", "PSp(5,3)", "O(8,3)", "O+(7,2)", "X(3,3)", "PSL(2,12)", "PSL2,3"] {
            assert!(parse_family(spec).is_err(), "{spec} should fail");
        }
    }
}
