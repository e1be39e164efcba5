//! Scalar float helpers that compile with and without `std`.
//!
//! `core` has no intrinsic transcendental functions, so every module routes
//! float math through here; the `libm` feature backs the `no_std` build.

#[cfg(feature = "std")]
mod imp {
    #[inline]
    pub fn abs(x: f64) -> f64 {
        x.abs()
    }

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        x.sqrt()
    }

    #[inline]
    pub fn cos(x: f64) -> f64 {
        x.cos()
    }

    #[inline]
    pub fn tan(x: f64) -> f64 {
        x.tan()
    }
}

#[cfg(all(not(feature = "std"), feature = "libm"))]
mod imp {
    #[inline]
    pub fn abs(x: f64) -> f64 {
        libm::fabs(x)
    }

    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }

    #[inline]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }

    #[inline]
    pub fn tan(x: f64) -> f64 {
        libm::tan(x)
    }
}

pub(crate) use imp::{abs, cos, sqrt, tan};
