"""Positive-root enumeration by height layers, plus pairings, lengths,
the dominance order, and the highest root.

Only positive roots are stored; a negative root is the negated coefficient
tuple of a positive one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

from .cartan import (
    CartanMatrix,
    DynkinGraph,
    ExtendedDynkinGraph,
    SymmetrizedForm,
    dynkin_graph,
    extended_dynkin_graph,
    symmetrizer,
)
from .errors import InternalInconsistencyError, InvalidArgumentError

# Safety net against hand-entered matrices that somehow slip past
# validation: no finite system of rank l has a root of height > 10*l.
HEIGHT_CAP_FACTOR = 10


@dataclass(frozen=True)
class Root:
    """A positive root as its coefficient tuple over the simple basis."""

    coeffs: tuple[int, ...]
    height: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if not self.coeffs or any(c < 0 for c in self.coeffs):
            raise InvalidArgumentError("root coefficients must be nonnegative")
        if not any(self.coeffs):
            raise InvalidArgumentError("the zero vector is not a root")
        object.__setattr__(self, "height", sum(self.coeffs))

    def __repr__(self) -> str:
        return f"Root{self.coeffs}"


class RootSystem:
    """All positive roots of a Cartan matrix, organised by height.

    Immutable after construction; build via :func:`enumerate_roots`.
    """

    def __init__(
        self,
        cartan: CartanMatrix,
        form: SymmetrizedForm,
        layers: tuple[tuple[Root, ...], ...],
        label: str | None,
    ) -> None:
        self.cartan = cartan
        self.form = form
        self.label = label
        self.layers = layers  # layers[r] = roots of height r; layers[0] empty
        self._members: dict[tuple[int, ...], Root] = {
            r.coeffs: r for layer in layers for r in layer
        }

    # -- basic queries ----------------------------------------------------

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def max_height(self) -> int:
        return len(self.layers) - 1

    @property
    def num_positive(self) -> int:
        return len(self._members)

    def __contains__(self, coeffs: Sequence[int]) -> bool:
        return tuple(coeffs) in self._members

    def root(self, coeffs: Sequence[int]) -> Root:
        key = tuple(coeffs)
        if key not in self._members:
            raise InvalidArgumentError(f"{key} is not a positive root here")
        return self._members[key]

    def simple_root(self, i: int) -> Root:
        """Simple root alpha_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise InvalidArgumentError(f"simple index {i} out of range 1..{self.rank}")
        return self.root(tuple(1 if k == i - 1 else 0 for k in range(self.rank)))

    def positive_roots(self) -> Iterator[Root]:
        for layer in self.layers:
            yield from layer

    def layer(self, height: int) -> tuple[Root, ...]:
        if 1 <= height <= self.max_height:
            return self.layers[height]
        return ()

    # -- highest root and dominance ---------------------------------------

    def highest_root(self) -> Root:
        return self.layers[-1][0]

    def c_max(self) -> int:
        return max(self.highest_root().coeffs)

    def dominates(self, alpha: Root, beta: Root) -> bool:
        """Whether alpha - beta has only nonnegative coordinates."""
        if len(alpha.coeffs) != len(beta.coeffs):
            raise InvalidArgumentError("rank mismatch")
        return all(a >= b for a, b in zip(alpha.coeffs, beta.coeffs))

    # -- pairings, strings, lengths ----------------------------------------

    def pairing(self, beta: Root, other: Root | int) -> int:
        """<beta, gamma> = 2(beta, gamma)/(gamma, gamma), always an integer.

        ``other`` is either a Root or a 1-based simple index.
        """
        if isinstance(other, int):
            if not 1 <= other <= self.rank:
                raise InvalidArgumentError(
                    f"simple index {other} out of range 1..{self.rank}"
                )
            row = self.cartan.rows[other - 1]
            return sum(r * b for r, b in zip(row, beta.coeffs))
        if not any(other.coeffs):
            raise InvalidArgumentError("pairing against the zero vector")
        num = 2 * self.form.inner_int(beta.coeffs, other.coeffs)
        den = self.form.inner_int(other.coeffs, other.coeffs)
        q, rem = divmod(num, den)
        if rem:
            raise InternalInconsistencyError("pairing of roots must be integral")
        return q

    def root_string(self, beta: Root, i: int) -> tuple[int, int]:
        """(p, q) with p = max k >= 0 such that beta - k*alpha_i is a root
        (negatives included) and q = max k >= 0 with beta + k*alpha_i a root.
        """
        if beta.coeffs not in self._members:
            raise InvalidArgumentError(f"{beta.coeffs} is not a positive root here")
        if not 1 <= i <= self.rank:
            raise InvalidArgumentError(f"simple index {i} out of range 1..{self.rank}")
        idx = i - 1
        p = 0
        for k in range(1, beta.height + 2):
            down = tuple(
                c - k if j == idx else c for j, c in enumerate(beta.coeffs)
            )
            if down in self._members or tuple(-c for c in down) in self._members:
                p = k
        q = 0
        for k in range(1, self.max_height - beta.height + 1):
            up = tuple(c + k if j == idx else c for j, c in enumerate(beta.coeffs))
            if up in self._members:
                q = k
        if p - q != self.pairing(beta, i):
            raise InternalInconsistencyError(
                f"string through {beta.coeffs} along alpha_{i} violates p - q = pairing"
            )
        return p, q

    def norm_sq(self, beta: Root) -> Fraction:
        return self.form.inner(beta.coeffs, beta.coeffs)

    @cached_property
    def _max_norm_int(self) -> int:
        return max(
            self.form.inner_int(r.coeffs, r.coeffs) for r in self.positive_roots()
        )

    def is_long(self, beta: Root) -> bool:
        return self.form.inner_int(beta.coeffs, beta.coeffs) == self._max_norm_int

    # -- graphs -------------------------------------------------------------

    @cached_property
    def graph(self) -> DynkinGraph:
        return dynkin_graph(self.cartan, self.form)

    @cached_property
    def extended_graph(self) -> ExtendedDynkinGraph:
        return extended_dynkin_graph(
            self.cartan, self.form, self.highest_root().coeffs
        )

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        roots = sorted(self.positive_roots(), key=lambda r: (r.height, r.coeffs))
        return {
            "type": self.label,
            "rank": self.rank,
            "cartan": self.cartan.to_lists(),
            "roots": [{"coeffs": list(r.coeffs), "height": r.height} for r in roots],
            "highest_root": list(self.highest_root().coeffs),
            "c_max": self.c_max(),
        }


def enumerate_roots(cartan: CartanMatrix, label: str | None = None) -> RootSystem:
    """Build all positive roots layer by layer.

    For a root beta of height r and a simple root alpha_i, let p be the
    largest k with beta - k*alpha_i already found; beta + alpha_i is a root
    exactly when p - <beta, alpha_i> > 0, because root strings are unbroken.
    """
    n = cartan.rank
    form = symmetrizer(cartan)
    rows = cartan.rows
    cap = HEIGHT_CAP_FACTOR * n

    members: set[tuple[int, ...]] = set()
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    layer = sorted(simple)
    members.update(layer)
    layers: list[list[tuple[int, ...]]] = [[], layer]

    while layers[-1]:
        if len(layers) > cap:
            raise InternalInconsistencyError(
                f"enumeration exceeded height {cap}; the matrix cannot be finite type"
            )
        nxt: set[tuple[int, ...]] = set()
        for beta in layers[-1]:
            for i in range(n):
                p = 0
                while True:
                    down = tuple(
                        c - (p + 1) if j == i else c for j, c in enumerate(beta)
                    )
                    if down in members:
                        p += 1
                    else:
                        break
                pair = sum(r * b for r, b in zip(rows[i], beta))
                if p - pair > 0:
                    nxt.add(tuple(c + 1 if j == i else c for j, c in enumerate(beta)))
        if not nxt:
            break
        layers.append(sorted(nxt))
        members.update(nxt)

    root_layers = tuple(tuple(Root(c) for c in layer) for layer in layers)
    rs = RootSystem(cartan, form, root_layers, label)
    top = root_layers[-1]
    if len(top) != 1:
        raise InternalInconsistencyError(
            f"top height layer has {len(top)} roots; expected exactly one"
        )
    theta = top[0]
    for r in rs.positive_roots():
        if not rs.dominates(theta, r):
            raise InternalInconsistencyError(
                f"{theta.coeffs} does not dominate {r.coeffs}"
            )
    return rs


def build_system(t) -> RootSystem:
    """Convenience: enumerate the root system of a named type."""
    from .cartan import RankedType, build_cartan

    if isinstance(t, str):
        t = RankedType.parse(t)
    return enumerate_roots(build_cartan(t), str(t))
