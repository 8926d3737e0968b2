//! Value syntax shared by flags and config files.
//!
//! Reals accept plain decimals and simple fractions (`-1/3`). An axis is a
//! single real or `min:max:steps`. Lists are comma separated.

use scaling_witness::scan::AxisSpec;

pub fn real(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((num, den)) => {
            let num: f64 = num.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
            let den: f64 = den.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
            if den == 0.0 {
                return Err(format!("`{s}` divides by zero"));
            }
            num / den
        }
        None => s.parse().map_err(|_| format!("`{s}` is not a number"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn axis(s: &str) -> Result<AxisSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(AxisSpec::Fixed(real(v)?)),
        [min, max, steps] => Ok(AxisSpec::Sweep {
            min: real(min)?,
            max: real(max)?,
            steps: steps
                .trim()
                .parse()
                .map_err(|_| format!("`{steps}` is not a step count"))?,
        }),
        _ => Err(format!("`{s}` is neither a value nor min:max:steps")),
    }
}

pub fn axes(s: &str) -> Result<Vec<AxisSpec>, String> {
    s.split(',').map(axis).collect()
}

pub fn reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(real).collect()
}

pub fn dims(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|d| {
            d.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{d}` is not a dimension"))
        })
        .collect()
}

/// `re` or `re:im` per entry.
pub fn amplitudes(s: &str) -> Result<Vec<(f64, f64)>, String> {
    s.split(',')
        .map(|entry| match entry.split_once(':') {
            Some((re, im)) => Ok((real(re)?, real(im)?)),
            None => Ok((real(entry)?, 0.0)),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_decimals() {
        assert_eq!(real("-1/3").unwrap(), -1.0 / 3.0);
        assert_eq!(real(" 0.25 ").unwrap(), 0.25);
        assert!(real("1/0").is_err());
        assert!(real("abc").is_err());
    }

    #[test]
    fn axis_forms() {
        assert_eq!(axis("1").unwrap(), AxisSpec::Fixed(1.0));
        assert_eq!(
            axis("-1:1:101").unwrap(),
            AxisSpec::Sweep {
                min: -1.0,
                max: 1.0,
                steps: 101
            }
        );
        assert!(axis("1:2").is_err());
        assert_eq!(axes("1, -1:1:3").unwrap().len(), 2);
    }

    #[test]
    fn amplitude_entries() {
        assert_eq!(amplitudes("0.6,0:0.8").unwrap(), vec![(0.6, 0.0), (0.0, 0.8)]);
    }
}
