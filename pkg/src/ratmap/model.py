"""The map phi(x) = (a x^3 + b x^2 + c x + d) / x^3 on x > 0."""

from __future__ import annotations

import math
from dataclasses import dataclass

# c must clear c_minus by this much to count as validated
C_MINUS_GUARD = 1e-12


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    """Map coefficients. ``a``, ``b``, ``d`` must be positive; ``c`` is free.

    Plain construction only checks positivity. Use :meth:`validated` to also
    require ``c > c_minus`` so that orbits can never leave ``(0, inf)``.
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise InvalidParameters(f"{name} must be finite, got {v}")
            object.__setattr__(self, name, v)
        if not (self.a > 0 and self.b > 0 and self.d > 0):
            raise InvalidParameters(
                f"a, b, d must be positive, got a={self.a}, b={self.b}, d={self.d}"
            )

    @classmethod
    def validated(cls, a: float, b: float, c: float, d: float) -> "Params":
        p = cls(a, b, c, d)
        if not p.is_valid():
            from .thresholds import c_minus

            raise InvalidParameters(
                f"c={p.c} does not exceed c_minus={c_minus(p.a, p.b, p.d)}; "
                "nonpositive iterates are possible"
            )
        return p

    def is_valid(self) -> bool:
        if self.c >= 0:
            return True
        from .thresholds import c_minus

        return self.c > c_minus(self.a, self.b, self.d) + C_MINUS_GUARD

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class Extrema:
    x_m: float
    x_M: float


def _check_positive(x: float) -> None:
    if not x > 0:
        raise ValueError(f"phi is defined only for x > 0, got {x}")


def phi(params: Params, x: float) -> float:
    _check_positive(x)
    return params.a + (params.b + (params.c + params.d / x) / x) / x


def phi_prime(params: Params, x: float) -> float:
    _check_positive(x)
    return -(params.b * x * x + 2.0 * params.c * x + 3.0 * params.d) / x**4


def phi2(params: Params, x: float) -> float:
    y = phi(params, x)
    if not y > 0:
        raise ValueError(f"phi({x}) = {y} is not positive; second iterate undefined")
    return phi(params, y)


def numerator(params: Params, x: float) -> float:
    a, b, c, d = params.astuple()
    return ((a * x + b) * x + c) * x + d


def numerator_positive(params: Params) -> bool:
    """True iff a x^3 + b x^2 + c x + d > 0 for every x > 0."""
    if params.c >= 0:
        return True
    a, b, c, d = params.astuple()
    # F' = 3a x^2 + 2b x + c has exactly one positive root when c < 0
    x_crit = (-b + math.sqrt(b * b - 3.0 * a * c)) / (3.0 * a)
    return numerator(params, x_crit) > 0


def extrema(params: Params) -> Extrema | None:
    """Interior minimum and maximum of phi, or ``None`` when phi is decreasing (c >= c*)."""
    b, c, d = params.b, params.c, params.d
    disc = c * c - 3.0 * b * d
    if c >= 0 or disc <= 0:
        return None
    s = math.sqrt(disc)
    # product of the roots is 3d/b; recover the small root without cancellation
    x_big = (-c + s) / b
    x_small = 3.0 * d / (b * x_big)
    return Extrema(x_m=x_small, x_M=x_big)
