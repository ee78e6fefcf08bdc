//! Small numeric helpers shared across the metric modules.

/// `x^p` for `x >= 0`, with exact fast paths for the common orders.
pub(crate) fn pow_p(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else {
        x.powf(p)
    }
}

/// `x^(1/p)` for `x >= 0`, with exact fast paths for the common orders.
pub(crate) fn root_p(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x.sqrt()
    } else {
        x.powf(1.0 / p)
    }
}

pub(crate) fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// One round of the splitmix64 mixer; spreads nearby inputs apart.
pub(crate) fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fixed 9-significant-digit decimal used for CLI values and CSV cells.
pub(crate) fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0.000000000".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_pins_significant_digits() {
        assert_eq!(format_sig9(0.0), "0.000000000");
        assert_eq!(format_sig9(80.0), "80.0000000");
        assert_eq!(format_sig9(0.5), "0.500000000");
        assert_eq!(format_sig9(1.0 / 6.0), "0.166666667");
        assert_eq!(format_sig9(-3.25), "-3.25000000");
        assert_eq!(format_sig9(1234567890.0), "1234567890");
    }

    #[test]
    fn pow_and_root_fast_paths_match_powf() {
        for x in [0.0, 0.7, 3.0, 144.0] {
            assert_eq!(pow_p(x, 1.0), x);
            assert_eq!(pow_p(x, 2.0), x * x);
            assert_eq!(root_p(pow_p(x, 2.0), 2.0), x);
            assert!((pow_p(x, 3.0) - x.powf(3.0)).abs() == 0.0);
        }
    }
}
