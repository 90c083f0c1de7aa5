"""Weyl-group exponents by two independent routes: the dual partition of
the height distribution, and eigenvalue angles of a Coxeter element.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cartan import CartanMatrix
from .errors import (
    InternalInconsistencyError,
    InvalidArgumentError,
    NumericInconsistencyError,
)
from .roots import HEIGHT_CAP_FACTOR, RootSystem

DUAL_PARTITION = "dual-partition"
COXETER_EIGENVALUES = "coxeter-eigenvalues"

# Eigenvalues of integer matrices of rank <= 12 come out far more accurate
# than this; a larger residual indicates a real bug, not roundoff.
ANGLE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class HeightDistribution:
    """counts[r-1] = number of positive roots of height r."""

    counts: tuple[int, ...]
    rank: int

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class ExponentReport:
    """Sorted exponent multiset with the Coxeter number and its provenance."""

    exponents: tuple[int, ...]
    coxeter_number: int
    method: str
    max_residual: float = 0.0

    def __post_init__(self) -> None:
        h = self.coxeter_number
        ms = self.exponents
        if tuple(sorted(ms)) != ms:
            raise InternalInconsistencyError("exponents must be sorted")
        if not ms or ms[0] != 1 or ms[-1] != h - 1 or any(not 0 < m < h for m in ms):
            raise InternalInconsistencyError(
                f"exponent multiset {ms} out of shape for h = {h}"
            )

    def to_json_dict(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "h": self.coxeter_number,
            "method": self.method,
        }


def height_distribution(rs: RootSystem) -> HeightDistribution:
    counts = tuple(len(rs.layers[r]) for r in range(1, rs.max_height + 1))
    return HeightDistribution(counts=counts, rank=rs.rank)


def dual_partition(hd: HeightDistribution) -> ExponentReport:
    """Read the exponents off the height distribution: the exponent a has
    multiplicity t_a - t_{a+1} (with t_h = 0).

    A distribution that is not weakly decreasing, or whose first entry is
    below the rank (which would create zero exponents), signals a broken
    enumeration and is rejected.
    """
    t = hd.counts
    if any(a < b for a, b in zip(t, t[1:])):
        raise InvalidArgumentError("height distribution must be weakly decreasing")
    if not t or t[0] != hd.rank:
        raise InvalidArgumentError(
            f"height distribution starts at {t[0] if t else 0}, expected rank {hd.rank}"
        )
    h = len(t) + 1
    exps: list[int] = []
    for a in range(1, h):
        mult = t[a - 1] - (t[a] if a < h - 1 else 0)
        exps.extend([a] * mult)
    return ExponentReport(tuple(exps), h, DUAL_PARTITION)


def _reflection_matrix(c: CartanMatrix, i: int) -> list[list[int]]:
    # s_i(alpha_j) = alpha_j - a[i][j] * alpha_i, so s_i is the identity
    # with row i of the Cartan matrix subtracted from row i.
    n = c.rank
    m = [[1 if r == k else 0 for k in range(n)] for r in range(n)]
    for j in range(n):
        m[i - 1][j] -= c.rows[i - 1][j]
    return m


def _matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def coxeter_matrix(
    c: CartanMatrix, order: Sequence[int] | None = None
) -> tuple[tuple[int, ...], ...]:
    """Matrix of the Coxeter element s_{o1} o s_{o2} o ... acting on the
    root space in simple-root coordinates.  ``order`` defaults to the
    index-ascending product; any permutation of 1..rank is accepted.
    """
    n = c.rank
    if order is None:
        order = range(1, n + 1)
    order = list(order)
    if sorted(order) != list(range(1, n + 1)):
        raise InvalidArgumentError(
            f"order must be a permutation of 1..{n}, got {order}"
        )
    m = _reflection_matrix(c, order[0])
    for i in order[1:]:
        m = _matmul(m, _reflection_matrix(c, i))
    return tuple(tuple(row) for row in m)


def coxeter_order(m: Sequence[Sequence[int]], bound: int) -> int:
    """Multiplicative order of an integer matrix, by exact powering."""
    n = len(m)
    identity = [[1 if r == k else 0 for k in range(n)] for r in range(n)]
    p = [list(row) for row in m]
    for k in range(1, bound + 1):
        if p == identity:
            return k
        p = _matmul(p, [list(row) for row in m])
    raise NumericInconsistencyError(f"matrix order not found within {bound}")


def coxeter_exponents(
    c: CartanMatrix, order: Sequence[int] | None = None
) -> ExponentReport:
    """Exponents from the eigenvalue angles of a Coxeter element.

    The Coxeter number is found first by exact integer matrix powering;
    floating point enters only when assigning each eigenvalue angle to a
    multiple of 2*pi/h, and the rounding residual must stay below
    ANGLE_TOLERANCE * h.
    """
    m = coxeter_matrix(c, order)
    h = coxeter_order(m, 2 * (HEIGHT_CAP_FACTOR * c.rank + 1))
    eigenvalues = np.linalg.eigvals(np.array(m, dtype=float))
    tol = ANGLE_TOLERANCE * h
    exps: list[int] = []
    max_residual = 0.0
    for lam in eigenvalues:
        value = h * cmath.phase(complex(lam)) / (2 * cmath.pi)
        if value <= 0:
            value += h
        k = round(value)
        residual = abs(value - k)
        if residual > tol:
            raise NumericInconsistencyError(
                f"eigen-angle {value} is {residual} away from an integer (tol {tol})"
            )
        max_residual = max(max_residual, residual)
        if not 0 < k < h:
            raise NumericInconsistencyError(f"eigenvalue exponent {k} outside (0, {h})")
        exps.append(k)
    return ExponentReport(tuple(sorted(exps)), h, COXETER_EIGENVALUES, max_residual)


@dataclass(frozen=True)
class IdentityResult:
    name: str
    passed: bool
    detail: str = ""


def check_duality(rep: ExponentReport, rs: RootSystem) -> list[IdentityResult]:
    """Evaluate the classical exponent identities against an enumerated system.

    Failures are reported, never raised: (i) opposite exponents sum to h,
    (ii) the chain 1 = m_1 < m_2 <= ... < m_l, (iii) h = ht(theta) + 1,
    (iv) m_l equals the coefficient sum of the highest root, (v) the
    exponents sum to the number of positive roots.
    """
    ms = rep.exponents
    h = rep.coxeter_number
    ell = len(ms)
    results = []

    pairs_ok = all(ms[j] + ms[ell - 1 - j] == h for j in range(ell))
    results.append(
        IdentityResult("pair-sums", pairs_ok, f"m_j + m_(l+1-j) vs h = {h}")
    )

    chain_ok = ms[0] == 1 and ms[-1] == h - 1
    if ell >= 2:
        chain_ok = (
            chain_ok
            and ms[0] < ms[1]
            and all(ms[j] <= ms[j + 1] for j in range(1, ell - 1))
            and ms[-2] < ms[-1]
        )
    results.append(IdentityResult("chain", chain_ok, f"exponents {ms}"))

    theta = rs.highest_root()
    results.append(
        IdentityResult(
            "coxeter-height",
            h == theta.height + 1,
            f"h = {h}, ht(theta) + 1 = {theta.height + 1}",
        )
    )
    results.append(
        IdentityResult(
            "top-exponent-sum",
            ms[-1] == sum(theta.coeffs),
            f"m_l = {ms[-1]}, coefficient sum = {sum(theta.coeffs)}",
        )
    )
    results.append(
        IdentityResult(
            "exponent-count",
            sum(ms) == rs.num_positive,
            f"sum = {sum(ms)}, positive roots = {rs.num_positive}",
        )
    )
    return results
