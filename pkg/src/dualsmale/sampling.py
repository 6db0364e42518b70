"""Random normalized polynomials for batch checks and experiments."""

import numpy as np

from .polycore import NormalizedPolynomial


def uniform_disk(rng: np.random.Generator, size: int, radius: float = 2.0) -> np.ndarray:
    return radius * np.sqrt(rng.uniform(0, 1, size)) * np.exp(2j * np.pi * rng.uniform(0, 1, size))


def random_normalized(rng: np.random.Generator, degree: int, radius: float = 2.0) -> NormalizedPolynomial:
    """``z + c_2 z^2 + ... + c_d z^d`` with ``c_j`` uniform in the disk of given radius."""
    c = np.zeros(degree + 1, dtype=np.complex128)
    c[1] = 1
    c[2:] = uniform_disk(rng, degree - 1, radius)
    return NormalizedPolynomial(c)


def random_symmetric(rng: np.random.Generator, degree: int, k: int, radius: float = 2.0) -> NormalizedPolynomial:
    """``z Q(z^k)`` with ``Q(0) = 1`` and the other Q-coefficients uniform in the disk."""
    if (degree - 1) % k:
        raise ValueError(f"degree {degree} is not 1 mod {k}")
    c = np.zeros(degree + 1, dtype=np.complex128)
    c[1] = 1
    c[1 + k :: k] = uniform_disk(rng, (degree - 1) // k, radius)
    return NormalizedPolynomial(c)


def random_odd(rng: np.random.Generator, degree: int, radius: float = 2.0) -> NormalizedPolynomial:
    return random_symmetric(rng, degree, 2, radius)
