"""Sparse polynomial radial profiles and trigonometric-series fields on the disk.

A field is gamma(r, phi) = sum_k a_k(r) cos(k phi) + sum_k b_k(r) sin(k phi)
with polynomial radial profiles; the k = 0 cosine term carries no extra 1/2
factor (profiles are stored exactly as they appear in the series).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import DomainError, KindMismatchError

__all__ = [
    "CONDUCTIVITY",
    "POTENTIAL",
    "RadialProfile",
    "FourierRadialField",
    "eval_field",
    "eval_field_grid",
    "moment",
    "l2_norm_squared",
    "sample_grid",
]

CONDUCTIVITY = "conductivity"
POTENTIAL = "potential"
_KINDS = (CONDUCTIVITY, POTENTIAL)


@dataclass(frozen=True)
class RadialProfile:
    """Sparse polynomial sum_p value_p * r**p with distinct integer powers >= 0.

    Values may be floats or exact rationals; moments are computed exactly
    either way (every float is a dyadic rational).
    """

    terms: tuple

    def __init__(self, terms):
        cleaned = []
        seen = set()
        for power, value in terms:
            p = int(power)
            if p != power or p < 0:
                raise DomainError(f"radial power {power!r} must be a non-negative integer")
            if p in seen:
                raise DomainError(f"duplicate radial power {p}")
            seen.add(p)
            cleaned.append((p, value))
        cleaned.sort(key=lambda t: t[0])
        object.__setattr__(self, "terms", tuple(cleaned))

    def __call__(self, r: float) -> float:
        return sum(float(v) * r**p for p, v in self.terms)

    def values_at(self, r: np.ndarray) -> np.ndarray:
        out = np.zeros_like(r, dtype=float)
        for p, v in self.terms:
            out += float(v) * r**p
        return out

    def moment_exact(self, m: int) -> Fraction:
        """integral_0^1 r**m * profile(r) dr as an exact rational."""
        return sum((Fraction(v) / (m + p + 1) for p, v in self.terms), Fraction(0))

    def pair_moment_exact(self, other: "RadialProfile") -> Fraction:
        """integral_0^1 profile * other * r dr, exact."""
        return sum(
            (Fraction(v) * Fraction(w) / (p + q + 2) for p, v in self.terms for q, w in other.terms),
            Fraction(0),
        )


_ZERO_PROFILE = RadialProfile(())


@dataclass(frozen=True)
class FourierRadialField:
    """Finite trigonometric series with radial-profile coefficients."""

    kind: str
    cos: dict = dc_field(default_factory=dict)
    sin: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise KindMismatchError(f"unknown field kind {self.kind!r}")
        object.__setattr__(self, "cos", _checked_profiles(self.cos, minimum=0))
        object.__setattr__(self, "sin", _checked_profiles(self.sin, minimum=1))

    def cos_profile(self, k: int) -> RadialProfile:
        return self.cos.get(k, _ZERO_PROFILE)

    def sin_profile(self, k: int) -> RadialProfile:
        return self.sin.get(k, _ZERO_PROFILE)

    @property
    def max_order(self) -> int:
        return max([0, *self.cos.keys(), *self.sin.keys()])


def _checked_profiles(profiles, minimum):
    out = {}
    for k in sorted(profiles):
        kk = int(k)
        if kk != k or kk < minimum:
            raise DomainError(f"angular order {k!r} must be an integer >= {minimum}")
        prof = profiles[k]
        if not isinstance(prof, RadialProfile):
            prof = RadialProfile(prof)
        out[kk] = prof
    return out


def eval_field(field: FourierRadialField, r: float, phi: float) -> float:
    """Pointwise value at polar (r, phi); requires 0 <= r <= 1."""
    if not 0.0 <= r <= 1.0:
        raise DomainError(f"radius {r} outside [0, 1]")
    total = 0.0
    for k, prof in field.cos.items():
        total += prof(r) * math.cos(k * phi)
    for k, prof in field.sin.items():
        total += prof(r) * math.sin(k * phi)
    return total


def eval_field_grid(field: FourierRadialField, r: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Values on the tensor grid r x phi, shape (len(r), len(phi))."""
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    out = np.zeros((r.size, phi.size))
    for k, prof in field.cos.items():
        out += np.outer(prof.values_at(r), np.cos(k * phi))
    for k, prof in field.sin.items():
        out += np.outer(prof.values_at(r), np.sin(k * phi))
    return out


def moment(field: FourierRadialField, parity: str, k: int, m: int) -> float:
    """integral_0^1 r**m * profile(r) dr for the (parity, k) profile.

    Exact rational arithmetic internally; a single rounding on return.
    """
    prof = _parity_profile(field, parity, k)
    return float(prof.moment_exact(m))


def l2_norm_squared(field: FourierRadialField) -> float:
    """Squared L^2 norm over the unit disk.

    Angular orthogonality gives
    pi * (2 * I[a_0^2] + sum_{k>=1} (I[a_k^2] + I[b_k^2])) with I[f] = integral f r dr.
    """
    total = 2 * field.cos_profile(0).pair_moment_exact(field.cos_profile(0))
    for k, prof in field.cos.items():
        if k >= 1:
            total += prof.pair_moment_exact(prof)
    for prof in field.sin.values():
        total += prof.pair_moment_exact(prof)
    return math.pi * float(total)


def sample_grid(field: FourierRadialField, nr: int, nphi: int) -> np.ndarray:
    """Cartesian samples on a polar tensor grid, one row (x, y, value) per node.

    Radii are the nr equispaced levels i/nr, i = 1..nr; angles are the nphi
    equispaced values 2 pi j / nphi, j = 0..nphi-1.  Rows are emitted in
    row-major order with the radius as the outer loop.
    """
    if nr < 1 or nphi < 1:
        raise DomainError("grid sizes must be positive")
    r = np.arange(1, nr + 1) / nr
    phi = 2.0 * math.pi * np.arange(nphi) / nphi
    values = eval_field_grid(field, r, phi)
    x = np.outer(r, np.cos(phi))
    y = np.outer(r, np.sin(phi))
    return np.column_stack([x.ravel(), y.ravel(), values.ravel()])


def _parity_profile(field, parity, k):
    if parity == "cos":
        if k < 0:
            raise DomainError("cosine order must be >= 0")
        return field.cos_profile(k)
    if parity == "sin":
        if k < 1:
            raise DomainError("sine order must be >= 1")
        return field.sin_profile(k)
    raise DomainError(f"parity must be 'cos' or 'sin', got {parity!r}")
