"""Dense complex polynomials in ascending coefficient order.

Besides the basic algebra this module holds the structural constructions
used by the symmetric certificate: splitting ``P(z) = z Q(z^k)`` and forming
``H(u) = u Q(u)^k`` and ``R(u) = Q(u) + k u Q'(u)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Iterable, Union

import numpy as np

from .errors import (
    CriticalBasepoint,
    DegreeMismatch,
    NonFiniteValue,
    NonzeroConstantTerm,
    NotNormalized,
    NotSymmetric,
)

# Coefficients below REL_TOL * max|c| count as zero.
REL_TOL = 1e-12

Number = Union[complex, float, int]


def _as_coeff_array(coeffs) -> np.ndarray:
    arr = np.array(coeffs, dtype=np.complex128).ravel()
    if arr.size == 0:
        raise ValueError("polynomial needs at least one coefficient")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteValue("coefficients must be finite")
    return arr


def _trim(arr: np.ndarray) -> np.ndarray:
    scale = np.max(np.abs(arr))
    if scale == 0.0:
        return np.zeros(1, dtype=np.complex128)
    keep = np.nonzero(np.abs(arr) > REL_TOL * scale)[0]
    return arr[: keep[-1] + 1].copy()


@dataclass(frozen=True, eq=False)
class Polynomial:
    """``c[0] + c[1] z + ... + c[n] z^n`` with complex double coefficients.

    Leading coefficients below ``REL_TOL`` times the largest one are trimmed
    on construction, so ``degree`` is always meaningful.  The zero polynomial
    is stored as a single zero coefficient.
    """

    coeffs: np.ndarray

    def __init__(self, coeffs: Iterable[Number]):
        arr = _trim(_as_coeff_array(coeffs))
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, z):
        return evaluate(self, z)

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        terms = ", ".join(repr(complex(c)) for c in self.coeffs)
        return f"{type(self).__name__}([{terms}])"

    def allclose(self, other: "Polynomial", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        if self.degree != other.degree:
            return False
        tol = atol + rtol * max(self.scale, other.scale)
        return bool(np.all(np.abs(self.coeffs - other.coeffs) <= tol))

    # shared text format: {"coeffs": [[re, im], ...]}
    def to_dict(self) -> dict:
        return {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_dict(cls, obj: dict) -> "Polynomial":
        pairs = obj["coeffs"]
        coeffs = []
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"coefficient must be a [re, im] pair, got {pair!r}")
            coeffs.append(complex(float(pair[0]), float(pair[1])))
        return cls(coeffs)

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "Polynomial":
        return cls.from_dict(json.loads(text))


class NormalizedPolynomial(Polynomial):
    """Polynomial with ``c[0] == 0`` and ``c[1] == 1`` exactly."""

    def __init__(self, coeffs: Iterable[Number]):
        super().__init__(coeffs)
        c = self.coeffs
        if len(c) < 2 or c[0] != 0 or c[1] != 1:
            raise NotNormalized("normalized polynomial needs c0 == 0 and c1 == 1 exactly")

    @classmethod
    def snap(cls, p: Polynomial, tol: float = REL_TOL) -> "NormalizedPolynomial":
        """Accept ``p`` if it is normalized up to ``tol`` and make it exact."""
        c = np.array(p.coeffs, dtype=np.complex128)
        if len(c) < 2:
            raise NotNormalized("degree must be at least 1")
        scale = p.scale
        if abs(c[0]) > tol * scale:
            raise NonzeroConstantTerm(f"constant term {complex(c[0])} is not zero")
        if abs(c[1] - 1) > tol * max(1.0, scale):
            raise NotNormalized(f"linear coefficient {complex(c[1])} is not one")
        c[0], c[1] = 0, 1
        return cls(c)


def evaluate(p: Polynomial, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    if np.ndim(z):
        c = p.coeffs
        acc = np.full(np.shape(z), c[-1], dtype=np.complex128)
    else:
        c = p.coeffs.tolist()
        acc = c[-1]
        z = complex(z)
    for coef in c[-2::-1]:
        acc = acc * z + coef
    return acc


def derivative(p: Polynomial) -> Polynomial:
    c = p.coeffs
    if len(c) == 1:
        return Polynomial([0])
    return Polynomial(c[1:] * np.arange(1, len(c)))


def ratio_poly(p: Polynomial) -> Polynomial:
    """Polynomial equal to ``p(z)/z`` off the origin and ``p'(0)`` at it."""
    c = p.coeffs
    if abs(c[0]) > REL_TOL * p.scale:
        raise NonzeroConstantTerm(f"constant term {complex(c[0])} is not zero")
    if len(c) == 1:
        return Polynomial([0])
    return Polynomial(c[1:])


def taylor_shift(p: Polynomial, z0: complex) -> np.ndarray:
    """Coefficients of ``p(z0 + w)`` in ``w`` (repeated synthetic division)."""
    a = np.array(p.coeffs, dtype=np.complex128)
    n = len(a) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            a[j] += z0 * a[j + 1]
    return a


def normalize_at(p: Polynomial, z0: complex) -> NormalizedPolynomial:
    """``(p(z0 + w) - p(z0)) / p'(z0)`` with exact 0 and 1 in the two lowest slots."""
    shifted = taylor_shift(p, complex(z0))
    if len(shifted) < 2 or abs(shifted[1]) <= REL_TOL * np.max(np.abs(shifted)):
        raise CriticalBasepoint(f"{complex(z0)} is a critical point of the polynomial")
    out = shifted / shifted[1]
    out[0], out[1] = 0, 1
    return NormalizedPolynomial(out)


def convolve(a: Polynomial, b: Polynomial) -> Polynomial:
    return Polynomial(np.convolve(a.coeffs, b.coeffs))


def decompose_symmetric(p: NormalizedPolynomial, k: int) -> Polynomial:
    """Return ``Q`` with ``p(z) = z Q(z^k)``."""
    if k < 2:
        raise ValueError("symmetry order k must be at least 2")
    c = p.coeffs
    d = len(c) - 1
    if (d - 1) % k:
        raise DegreeMismatch(f"degree {d} is not 1 mod {k}")
    idx = np.arange(len(c))
    off = (idx - 1) % k != 0
    big = np.abs(c[off]) > REL_TOL * p.scale
    if np.any(big):
        bad = idx[off][big].tolist()
        raise NotSymmetric(f"nonzero coefficients off the lattice 1 mod {k} at powers {bad}")
    return Polynomial(c[1::k])


def build_H(q: Polynomial, k: int) -> Polynomial:
    """``u * q(u)**k``."""
    acc = np.array([0, 1], dtype=np.complex128)
    for _ in range(k):
        acc = np.convolve(acc, q.coeffs)
    return Polynomial(acc)


def build_R(q: Polynomial, k: int) -> Polynomial:
    """``q(u) + k u q'(u)``, i.e. coefficient m scaled by ``1 + k m``."""
    m = np.arange(len(q.coeffs))
    return Polynomial(q.coeffs * (1 + k * m))


def power_coeff_bound(p: Polynomial, z0: complex, j: int) -> float:
    """``sum_i C(i, j) |c_i| |z0|^(i-j)``: magnitude scale of the j-th Taylor coefficient at z0."""
    r = abs(z0)
    return float(sum(comb(i, j) * abs(c) * r ** (i - j) for i, c in enumerate(p.coeffs) if i >= j))
