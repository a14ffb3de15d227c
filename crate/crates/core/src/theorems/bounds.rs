//! Closed-form upper bounds on `|V(F) ∩ V2|` over F_{q^2}, in exact rational
//! arithmetic.

use num_rational::Ratio;

pub type Q = Ratio<i64>;

fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// Conjectured maximum `d(q^3+q^2-q)+q+1`, attained by `d` tangent planes
/// through a common secant.
pub fn conjectured(q: i64, d: i64) -> Q {
    int(d * (q * q * q + q * q - q) + q + 1)
}

/// Bound when the residual curve has a rational point:
/// `dq^3+(d-1)q^2+1-(d-1)(d-2)`.
pub fn residual_curve(q: i64, d: i64) -> Q {
    int(d * q * q * q + (d - 1) * q * q + 1 - (d - 1) * (d - 2))
}

/// Unconditional bound in terms of the defect:
/// `d(q^3+q^2-d+2) - delta (q^2-d+1) / (q+1)`.
pub fn defect(q: i64, d: i64, delta: i64) -> Q {
    int(d * (q * q * q + q * q - d + 2)) - Q::new(delta * (q * q - d + 1), q + 1)
}

/// Bound in terms of `X = min |T(l)|`: `q^2+1+(d-1)(q^3+q)+(q^2-q)X`.
pub fn meeting_lines(q: i64, d: i64, x: i64) -> Q {
    int(q * q + 1 + (d - 1) * (q * q * q + q) + (q * q - q) * x)
}

/// Bound in terms of `|J_F| = d(q+1) - delta` and `X`:
/// `(d(q+1)-delta)(q^2+1-X/d)`.
pub fn generator_count(q: i64, d: i64, delta: i64, x: i64) -> Q {
    int(d * (q + 1) - delta) * (int(q * q + 1) - Q::new(x, d))
}

/// Bound when no tangent plane is a component: `dq^3+(d-1)q^2+1`.
pub fn no_tangent_plane(q: i64, d: i64) -> Q {
    int(d * q * q * q + (d - 1) * q * q + 1)
}
