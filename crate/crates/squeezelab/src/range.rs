//! Value lists on the command line: `16`, `4,8,16` or `lo:hi:linear|geometric:count`.

use crate::error::{CliError, Result};

pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let bad = |why: &str| CliError::validation(format!("range `{text}`: {why}"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let parts: Vec<&str> = text.split(':').collect();
    let values = match parts.as_slice() {
        [single] => single.split(',').map(num).collect::<Result<Vec<_>>>()?,
        [lo, hi, spacing, count] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| bad("count must be an integer"))?;
            if count < 2 {
                return Err(bad("count must be at least 2"));
            }
            match spacing.trim() {
                "linear" | "lin" => (0..count)
                    .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                    .collect(),
                "geometric" | "geom" | "log" => {
                    if !(lo > 0.0 && hi > 0.0) {
                        return Err(bad("geometric ranges need positive endpoints"));
                    }
                    let ratio = (hi / lo).powf(1.0 / (count - 1) as f64);
                    (0..count).map(|i| lo * ratio.powi(i as i32)).collect()
                }
                other => return Err(bad(&format!("unknown spacing `{other}`"))),
            }
        }
        _ => return Err(bad("expected a value, a list or lo:hi:spacing:count")),
    };
    let mut values: Vec<f64> = values;
    if parts.len() == 4 {
        // pin the endpoints so that 4:64:geometric:5 ends on exactly 64
        let last = values.len() - 1;
        values[last] = num(parts[1])?;
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad("values must be finite"));
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_powers_of_two() {
        assert_eq!(
            parse_values("4:64:geometric:5").unwrap(),
            vec![4.0, 8.0, 16.0, 32.0, 64.0]
        );
    }

    #[test]
    fn linear_and_lists() {
        assert_eq!(parse_values("0:1:linear:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_values("1e3, 2e3").unwrap(), vec![1000.0, 2000.0]);
        assert_eq!(parse_values("7").unwrap(), vec![7.0]);
    }

    #[test]
    fn rejects_garbage() {
        for bad in [
            "",
            "a",
            "1:2:cubic:3",
            "1:2:linear:1",
            "0:4:geometric:3",
            "1:2:3",
            "inf",
        ] {
            assert!(
                matches!(parse_values(bad), Err(CliError::Validation(_))),
                "{bad}"
            );
        }
    }
}
