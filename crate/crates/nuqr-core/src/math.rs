//! Scalar float math, routed to `std` or `libm` depending on the build.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("nuqr-core requires either the `std` or the `libm` feature");

macro_rules! forward {
    ($($name:ident),* $(,)?) => {
        $(
            #[cfg(feature = "std")]
            #[inline]
            pub(crate) fn $name(x: f64) -> f64 {
                f64::$name(x)
            }

            #[cfg(all(not(feature = "std"), feature = "libm"))]
            #[inline]
            pub(crate) fn $name(x: f64) -> f64 {
                libm::$name(x)
            }
        )*
    };
}

forward!(sqrt, sin, cos, exp, log2);

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    // Branchless |x|; avoids relying on std-only float intrinsics.
    f64::from_bits(x.to_bits() & (u64::MAX >> 1))
}
