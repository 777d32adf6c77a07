//! Grid literals: `a:b:step`, `a,b,c` or a single value.

use crate::{Failure, Outcome};

fn number(token: &str) -> Outcome<f64> {
    let v: f64 = token
        .trim()
        .parse()
        .map_err(|_| Failure::Config(format!("not a number: {token:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Failure::Config(format!("not finite: {token:?}")))
    }
}

pub fn parse_grid(spec: &str) -> Outcome<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let out = match parts[..] {
        [a, b, step] => {
            let (a, b, step) = (number(a)?, number(b)?, number(step)?);
            if !(step > 0.0) || b < a {
                return Err(Failure::Config(format!("bad grid {spec:?}: need a ≤ b and step > 0")));
            }
            let n = ((b - a) / step + 1e-9).floor() as u64;
            if n > 10_000_000 {
                return Err(Failure::Config(format!("grid {spec:?} has too many points")));
            }
            // a + k·step rather than repeated addition keeps the points exact where possible
            (0..=n).map(|k| a + k as f64 * step).collect()
        }
        [list] => list.split(',').map(number).collect::<Outcome<Vec<f64>>>()?,
        _ => return Err(Failure::Config(format!("bad grid {spec:?}"))),
    };
    if out.is_empty() {
        return Err(Failure::Config(format!("empty grid {spec:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms() {
        assert_eq!(parse_grid("1:3:1").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_grid("0:1:0.25").unwrap().len(), 5);
        assert_eq!(parse_grid("5,10,20").unwrap(), vec![5.0, 10.0, 20.0]);
        assert_eq!(parse_grid("7").unwrap(), vec![7.0]);
        for bad in ["", "1:2", "3:1:1", "1:2:0", "a,b", "nan", "1:2:3:4"] {
            assert!(parse_grid(bad).is_err(), "{bad:?}");
        }
    }
}
