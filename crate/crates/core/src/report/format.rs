/// Formats like C's `%.12g`: 12 significant digits, trailing zeros removed,
/// scientific notation when the exponent is below -4 or at least 12.
pub fn format_g(value: f64) -> String {
    format_g_with(value, 12)
}

/// `%.{precision}g`.
pub fn format_g_with(value: f64, precision: usize) -> String {
    if value.is_nan() {
        return "nan".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let precision = precision.max(1);
    if value == 0.0 {
        return if value.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    // Rounding to the requested digits first fixes the exponent (9.99...e2 may become 1e3).
    let sci = format!("{:.*e}", precision - 1, value);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= precision as i32 {
        let mantissa = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (precision as i32 - 1 - exp) as usize;
        strip_zeros(&format!("{:.*}", decimals, value)).to_string()
    }
}

fn strip_zeros(text: &str) -> &str {
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.')
    } else {
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn matches_printf() {
        // Reference strings from printf("%.12g").
        let cases = [
            (0.0, "0"),
            (1.0, "1"),
            (-2.5, "-2.5"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (999999999999.5, "1e+12"),
            (1e100, "1e+100"),
            (0.5849625007211562, "0.584962500721"),
            (f64::NAN, "nan"),
            (f64::INFINITY, "inf"),
            (f64::NEG_INFINITY, "-inf"),
        ];
        for (value, expected) in cases {
            assert_eq!(format_g(value), expected, "{value:e}");
        }
        assert_eq!(format_g_with(1.23456, 3), "1.23");
    }

    proptest! {
        #[test]
        fn parses_back_within_twelve_digits(v in -1e6f64..1e6) {
            let back: f64 = format_g(v).parse().unwrap();
            prop_assert!((back - v).abs() <= v.abs() * 1e-11 + 1e-300);
        }
    }
}
