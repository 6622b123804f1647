//! Float helpers routed through `libm` so results do not depend on the
//! platform's libm. `round` is half-away-from-zero, which is the pixel
//! rounding rule used throughout the rasterizer.

pub(crate) fn round(v: f64) -> f64 {
    libm::round(v)
}

pub(crate) fn floor(v: f64) -> f64 {
    libm::floor(v)
}

pub(crate) fn ceil(v: f64) -> f64 {
    libm::ceil(v)
}

pub(crate) fn sqrt(v: f64) -> f64 {
    libm::sqrt(v)
}

pub(crate) fn exp(v: f64) -> f64 {
    libm::exp(v)
}

/// Round a subpixel coordinate to an integer pixel coordinate.
pub(crate) fn round_px(v: f64) -> i64 {
    round(v) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_is_half_away_from_zero() {
        assert_eq!(round(0.5), 1.0);
        assert_eq!(round(-0.5), -1.0);
        assert_eq!(round(2.5), 3.0);
        assert_eq!(round(-2.5), -3.0);
        assert_eq!(round_px(19.5), 20);
        assert_eq!(round_px(-0.4), 0);
    }
}
