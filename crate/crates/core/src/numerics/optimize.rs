//! One-dimensional golden-section search.

use crate::scalar::Real;

/// Minimize `f` on `[a, b]` until the bracket is narrower than `tol`.
/// Returns `(x, f(x))`.
pub fn golden_min<T: Real>(mut f: impl FnMut(T) -> T, mut a: T, mut b: T, tol: T) -> (T, T) {
    let invphi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - invphi * (b - a);
    let mut d = a + invphi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    // the bracket shrinks by 1/φ per step, so this bound is never hit for sane tol
    for _ in 0..500 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Maximize `f` on `[a, b]`.
pub fn golden_max<T: Real>(mut f: impl FnMut(T) -> T, a: T, b: T, tol: T) -> (T, T) {
    let (x, y) = golden_min(|x| -f(x), a, b, tol);
    (x, -y)
}
