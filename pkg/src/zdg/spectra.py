"""Adjacency spectra and energy of zero-divisor graphs.

Two independent routes produce the nonzero eigenvalues:

* ``FULL_DENSE`` runs Jacobi on the whole adjacency matrix;
* ``CLASS_REDUCED`` runs Jacobi on a k x k matrix, one row per gcd-class.

The second route works because gcd-classes form an equitable partition:
every vertex of class i sees either all of class j or none of it. With the
quotient entry B[i][j] = (number of class-j neighbours of a class-i vertex),
the symmetrized matrix D^(1/2) B D^(-1/2) (D = diag of class sizes) has
entries sqrt(|i||j|) for joined pairs. Its eigenvalues are eigenvalues of
the full matrix, and every eigenvector orthogonal to the class indicator
vectors sees each all-ones or all-zero block as 0 -- except a clique block
without loops (J - I), which contributes -1 once per such vector.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .graph import (
    DEFAULT_DENSE_CAP,
    AdjacencyMatrix,
    Convention,
    SizeCapError,
    build_adjacency,
)
from .jacobi import jacobi_eigenvalues
from .zmod import ClassStructure, class_partition, factorize, require_prime

ZERO_THRESHOLD_REL = 1e-7


class Mode(enum.Enum):
    FULL_DENSE = "full-dense"
    CLASS_REDUCED = "class-reduced"


class Variant(enum.Enum):
    """Which printing of the p^2 q quartic to use."""

    PROOF_DERIVATION = "proof"
    STATEMENT_AS_PRINTED = "statement"


@dataclass(frozen=True, eq=False)
class ReducedClassMatrix:
    entries: np.ndarray
    class_sizes: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.class_sizes)


@dataclass(frozen=True)
class Spectrum:
    nonzero: tuple[float, ...]  # descending
    zero_multiplicity: int
    source: Mode
    threshold: float
    reduced: ReducedClassMatrix | None = None
    eigenvalues: tuple[float, ...] | None = None  # all N values, FULL_DENSE only

    @property
    def energy(self) -> float:
        return float(sum(abs(x) for x in self.nonzero))

    @property
    def order(self) -> int:
        return len(self.nonzero) + self.zero_multiplicity


def zero_threshold(eigenvalues) -> float:
    big = max((abs(float(x)) for x in eigenvalues), default=0.0)
    return ZERO_THRESHOLD_REL * max(1.0, big)


def reduced_class_matrix(
    cs: ClassStructure, convention: Convention = Convention.PAPER
) -> ReducedClassMatrix:
    n = cs.n
    sizes = cs.sizes
    ds = cs.divisors
    k = len(sizes)
    m = np.zeros((k, k))
    for i in range(k):
        for j in range(k):
            if i == j:
                if cs.classes[i].looped:
                    m[i, i] = sizes[i] if convention is Convention.PAPER else sizes[i] - 1
            elif (ds[i] * ds[j]) % n == 0:
                m[i, j] = math.sqrt(sizes[i] * sizes[j])
    m.setflags(write=False)
    return ReducedClassMatrix(m, tuple(sizes))


def _nonzero(eigs, threshold: float) -> tuple[float, ...]:
    return tuple(sorted((float(x) for x in eigs if abs(x) > threshold), reverse=True))


def dense_spectrum(A: AdjacencyMatrix, tol: float = 1e-12) -> Spectrum:
    eigs = jacobi_eigenvalues(A.entries, tol=tol)
    thr = zero_threshold(eigs)
    nz = _nonzero(eigs, thr)
    return Spectrum(nz, A.order - len(nz), Mode.FULL_DENSE, thr, eigenvalues=tuple(eigs.tolist()))


def identity_residuals(A: AdjacencyMatrix, spec: Spectrum) -> tuple[float, float]:
    """|sum(lambda) - trace(A)| and |sum(lambda^2) - number of ones in A|."""
    eigs = np.asarray(spec.eigenvalues)
    ones = int(A.entries.sum(dtype=np.int64))
    trace = int(np.trace(A.entries, dtype=np.int64))
    return abs(float(eigs.sum()) - trace), abs(float((eigs**2).sum()) - ones)


def spectrum(
    cs: ClassStructure,
    convention: Convention = Convention.PAPER,
    mode: Mode = Mode.CLASS_REDUCED,
    dense_cap: int = DEFAULT_DENSE_CAP,
    tol: float = 1e-12,
) -> Spectrum:
    if mode is Mode.FULL_DENSE:
        return dense_spectrum(build_adjacency(cs, convention, dense_cap=dense_cap), tol)

    red = reduced_class_matrix(cs, convention)
    eigs = jacobi_eigenvalues(red.entries, tol=tol).tolist()
    if convention is Convention.SIMPLE:
        # J - I blocks: eigenvalue -1 on the complement of the constant vector
        eigs += [-1.0] * sum(c.size - 1 for c in cs.classes if c.looped)
    thr = zero_threshold(eigs)
    nz = _nonzero(eigs, thr)
    return Spectrum(nz, cs.total_vertices - len(nz), mode, thr, red)


def closed_eigenvalues_p3(p: int) -> tuple[float, float]:
    """The two nonzero eigenvalues (p-1)(1 +- sqrt(1+4p))/2 for Z_{p^3}."""
    require_prime(p)
    r = math.sqrt(1 + 4 * p)
    return (p - 1) * (1 + r) / 2, (p - 1) * (1 - r) / 2


def energy_closed_p3(p: int) -> float:
    require_prime(p)
    return (p - 1) * math.sqrt(1 + 4 * p)


@dataclass(frozen=True)
class QuarticCoefficients:
    """Monic quartic x^4 + c3 x^3 + c2 x^2 + c1 x + c0."""

    c4: int
    c3: int
    c2: int
    c1: int
    c0: int
    variant: Variant

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.c4, self.c3, self.c2, self.c1, self.c0)

    def __call__(self, x: float) -> float:
        return (((self.c4 * x + self.c3) * x + self.c2) * x + self.c1) * x + self.c0

    def scale(self, x: float) -> float:
        """Sum of |c_k x^k|, the natural size of the terms at x."""
        return sum(abs(c) * abs(x) ** k for k, c in zip((4, 3, 2, 1, 0), self.as_tuple()))


def quartic_p2q(
    p: int, q: int, variant: Variant = Variant.PROOF_DERIVATION
) -> QuarticCoefficients:
    """Characteristic factor carrying the nonzero spectrum of Z_{p^2 q}.

    The two variants differ only in the x^2 coefficient: -2p(p-1)(q-1) as
    obtained by expanding the Schur complement, versus -2p(p-1)(q-1)^2 as
    given in the published statement. They agree exactly when q = 2.
    """
    if p == q:
        raise ValueError("p and q must be distinct")
    require_prime(p, q)
    qq = (q - 1) ** 2 if variant is Variant.STATEMENT_AS_PRINTED else q - 1
    return QuarticCoefficients(
        1,
        -(p - 1),
        -2 * p * (p - 1) * qq,
        p * (p - 1) ** 2 * (q - 1),
        p * (p - 1) ** 3 * (q - 1) ** 2,
        variant,
    )


@dataclass(frozen=True)
class QuarticVerdict:
    matched: bool
    max_residual: float  # relative, |f(x)| / scale(x)
    nonzero_count: int
    residuals: tuple[float, ...]


def quartic_residuals(coeffs: QuarticCoefficients, roots) -> list[float]:
    return [abs(coeffs(x)) / coeffs.scale(x) for x in roots]


def verify_quartic(
    p: int,
    q: int,
    variant: Variant = Variant.PROOF_DERIVATION,
    tol: float = 1e-6,
    convention: Convention = Convention.PAPER,
    dense_cap: int = DEFAULT_DENSE_CAP,
    spec: Spectrum | None = None,
) -> QuarticVerdict:
    """Check the quartic against the full dense spectrum of Z_{p^2 q}.

    Matches iff there are exactly four nonzero eigenvalues and each makes
    the quartic vanish to within ``tol`` relative to ``scale``.
    """
    coeffs = quartic_p2q(p, q, variant)
    if spec is None:
        cs = class_partition(factorize(p * p * q))
        if cs.total_vertices > dense_cap:
            raise SizeCapError(f"Z_{p * p * q} exceeds the dense cap of {dense_cap}")
        spec = spectrum(cs, convention, Mode.FULL_DENSE, dense_cap)
    res = quartic_residuals(coeffs, spec.nonzero)
    worst = max(res, default=0.0)
    ok = len(spec.nonzero) == 4 and worst <= tol
    return QuarticVerdict(ok, worst, len(spec.nonzero), tuple(res))
