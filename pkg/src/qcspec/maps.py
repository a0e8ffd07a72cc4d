"""Closed-form quasiconformal maps of the unit disc.

Four map families are supported, each given by an explicit formula in z and
its conjugate:

* ``Identity``:   z
* ``Ellipse``:    sqrt(a^2+1) z + a conj(z)        (disc -> ellipse interior)
* ``RosePetal``:  a (z+1)^{3/4} (conj(z)+1)^{1/4}  (disc -> petal rho = 2a cos 2theta)
* ``Epicycloid``: A (z + z^n/n) + B (conj(z) + conj(z)^n/n)

All evaluators accept a Python complex or a numpy array of complex values and
return the matching shape.  Fractional powers use the principal branch; for
the rose petal the branch cut of (z+1)^p never meets the closed disc except
at z = -1 itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateMapError, DomainError, InvalidParameterError


@dataclass(frozen=True)
class Identity:
    """The identity map of the unit disc."""


@dataclass(frozen=True)
class Ellipse:
    """z -> sqrt(a^2+1) z + a conj(z), semi-axes sqrt(a^2+1) +/- a."""

    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a >= 0):
            raise InvalidParameterError(f"ellipse parameter a must be finite and >= 0, got {self.a}")


@dataclass(frozen=True)
class RosePetal:
    """z -> a (z+1)^{3/4} (conj(z)+1)^{1/4} with 0 < a < 1."""

    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and 0 < self.a < 1):
            raise InvalidParameterError(f"rose-petal parameter a must lie in (0, 1), got {self.a}")


@dataclass(frozen=True)
class Epicycloid:
    """z -> A (z + z^n/n) + B (conj(z) + conj(z)^n/n) with A > B >= 0, n >= 2.

    The image boundary is an epicycloid with n-1 cusps; A = B would make the
    distortion coefficient infinite, so it is rejected.
    """

    A: float
    B: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.A) and math.isfinite(self.B)):
            raise InvalidParameterError("epicycloid parameters must be finite")
        if not self.B >= 0:
            raise InvalidParameterError(f"epicycloid B must be >= 0, got {self.B}")
        if not self.A > self.B:
            raise InvalidParameterError(
                f"epicycloid requires A > B strictly (A={self.A}, B={self.B}); A = B makes K infinite"
            )
        if int(self.n) != self.n or self.n < 2:
            raise InvalidParameterError(f"epicycloid exponent n must be an integer >= 2, got {self.n}")


MapFamily = Union[Identity, Ellipse, RosePetal, Epicycloid]


@dataclass(frozen=True)
class WirtingerEval:
    """Map value psi(z) together with the Wirtinger pair (psi_z, psi_zbar)."""

    value: complex
    dz: complex
    dzbar: complex


def family_name(family: MapFamily) -> str:
    return {
        Identity: "identity",
        Ellipse: "ellipse",
        RosePetal: "rose-petal",
        Epicycloid: "epicycloid",
    }[type(family)]


def family_params(family: MapFamily) -> dict:
    match family:
        case Identity():
            return {}
        case Ellipse(a=a) | RosePetal(a=a):
            return {"a": a}
        case Epicycloid(A=A, B=B, n=n):
            return {"A": A, "B": B, "n": n}
    raise InvalidParameterError(f"unknown map family {family!r}")


def evaluate_map(family: MapFamily, z):
    """Evaluate psi(z) for the given family.

    ``z`` may be a complex scalar or a complex ndarray.  The rose-petal map is
    extended continuously to z = -1 with value 0 (both fractional-power
    factors vanish there).
    """
    z = np.asarray(z, dtype=complex)
    match family:
        case Identity():
            w = z.copy()
        case Ellipse(a=a):
            w = math.sqrt(a * a + 1.0) * z + a * np.conj(z)
        case RosePetal(a=a):
            u = z + 1.0
            w = a * u**0.75 * np.conj(u) ** 0.25
            # principal powers already give 0 at u = 0, but make it exact
            w = np.where(u == 0, 0.0 + 0.0j, w)
        case Epicycloid(A=A, B=B, n=n):
            w = A * (z + z**n / n) + B * np.conj(z + z**n / n)
        case _:
            raise InvalidParameterError(f"unknown map family {family!r}")
    return complex(w) if w.ndim == 0 else w


def wirtinger_derivatives(family: MapFamily, z):
    """Return psi(z) with the derivatives psi_z and psi_zbar in closed form.

    psi_z = (d/dx - i d/dy) psi / 2 and psi_zbar = (d/dx + i d/dy) psi / 2.
    The rose-petal closed forms divide by powers of (z+1), so z = -1 is
    rejected even though the derivative moduli stay bounded there.
    """
    z = np.asarray(z, dtype=complex)
    match family:
        case Identity():
            dz = np.ones_like(z)
            dzbar = np.zeros_like(z)
        case Ellipse(a=a):
            dz = np.full_like(z, math.sqrt(a * a + 1.0))
            dzbar = np.full_like(z, a)
        case RosePetal(a=a):
            u = z + 1.0
            if np.any(u == 0):
                raise DomainError("rose-petal derivatives are not defined at z = -1")
            ubar = np.conj(u)
            dz = 0.75 * a * u**-0.25 * ubar**0.25
            dzbar = 0.25 * a * u**0.75 * ubar**-0.75
        case Epicycloid(A=A, B=B, n=n):
            dz = A * (1.0 + z ** (n - 1))
            dzbar = B * (1.0 + np.conj(z) ** (n - 1))
        case _:
            raise InvalidParameterError(f"unknown map family {family!r}")
    value = evaluate_map(family, z)
    if np.asarray(value).ndim == 0:
        return WirtingerEval(complex(value), complex(dz), complex(dzbar))
    return WirtingerEval(value, dz, dzbar)


def jacobian(family: MapFamily, z):
    """Jacobian J(z) = |psi_z|^2 - |psi_zbar|^2 (> 0 for the maps in scope)."""
    w = wirtinger_derivatives(family, z)
    j = np.abs(np.asarray(w.dz)) ** 2 - np.abs(np.asarray(w.dzbar)) ** 2
    return float(j) if j.ndim == 0 else j


def pointwise_distortion(family: MapFamily, z):
    """Local distortion K(z) = (|psi_z| + |psi_zbar|) / (|psi_z| - |psi_zbar|).

    This is the smallest K with |D psi|^2 <= K J at z, using the operator
    norm |D psi| = |psi_z| + |psi_zbar|.  K(z) >= 1 with equality exactly at
    conformal points (psi_zbar = 0).
    """
    w = wirtinger_derivatives(family, z)
    s = np.abs(np.asarray(w.dz))
    t = np.abs(np.asarray(w.dzbar))
    diff = s - t
    if np.any(diff < 1e-14):
        raise DegenerateMapError(f"|psi_z| - |psi_zbar| = {np.min(diff):.3e} below 1e-14; map degenerate at z")
    k = (s + t) / diff
    return float(k) if k.ndim == 0 else k
