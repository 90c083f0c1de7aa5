"""Executable checks for the structure at the top of the root poset and on
the extended Dynkin graph, tying the largest highest-root coefficient to
the second smallest exponent.

Two chains are built per system: the mark chain (shortest extended-Dynkin
path from the affine vertex to a simple root of maximal coefficient) and
the top chain (the roots living above height m_{l-1}, one per height,
together with their consecutive differences).  The case split asks whether
some root of the top chain pairs to 3 against its step; case 1 forces
c_max = m2 - 2, case 2 forces c_max = m2 - 1, and case 1 happens only
for G2.

Every check returns a CheckResult instead of raising, so a batch run over
many systems always completes and reports failures as data.  The chain
constructors do raise when a structural invariant that no valid system can
break turns out broken; the ledger builder converts that into a failed
result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import InternalInconsistencyError, InvalidArgumentError
from .exponents import (
    ExponentReport,
    check_duality,
    coxeter_exponents,
    dual_partition,
    height_distribution,
)
from .roots import Root, RootSystem

DEFAULT_EXHAUSTIVE_LIMIT = 240  # covers every built-in type through E8
DEFAULT_SAMPLES = 100_000
COUNTEREXAMPLE_CAP = 8


# ---------------------------------------------------------------------------
# chain structures
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkChain:
    """Shortest path in the extended Dynkin graph from the affine vertex to
    a simple root whose highest-root coefficient is maximal.  The marks
    along it are 1, 2, ..., c_max."""

    simple_indices: tuple[int, ...]
    marks: tuple[int, ...]
    neg_highest: tuple[int, ...]

    @property
    def vertices(self) -> tuple[int, ...]:
        return (0,) + self.simple_indices

    @property
    def size(self) -> int:
        return len(self.marks)


def mark_chain(rs: RootSystem) -> MarkChain:
    """Build and verify the mark chain.

    Raises InternalInconsistencyError when any of its defining properties
    fails: marks must read 1..c_max, the chain must have c_max vertices,
    all but the last vertex must form a single-edge chain attached only at
    the second-to-last one, and the final step must either be a multiple
    edge or land on a ramification point.
    """
    theta = rs.highest_root()
    c = theta.coeffs
    cmax = max(c)
    neg = tuple(-x for x in c)
    if cmax == 1:
        return MarkChain((), (1,), neg)

    ext = rs.extended_graph
    dist = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for v in frontier:
            for w in ext.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    targets = [i for i in range(1, rs.rank + 1) if c[i - 1] == cmax]
    goal = min(targets, key=lambda i: (dist[i], i))

    back = {goal: 0}
    frontier = [goal]
    while frontier:
        nxt = []
        for v in frontier:
            for w in ext.neighbors(v):
                if w not in back:
                    back[w] = back[v] + 1
                    nxt.append(w)
        frontier = nxt

    path = [0]
    while path[-1] != goal:
        u = path[-1]
        path.append(
            min(
                w
                for w in ext.neighbors(u)
                if dist[w] == dist[u] + 1 and back[w] == back[u] - 1
            )
        )
    indices = tuple(path[1:])
    marks = (1,) + tuple(c[i - 1] for i in indices)

    if marks != tuple(range(1, len(marks) + 1)):
        raise InternalInconsistencyError(f"mark chain coefficients {marks} are not 1..q+1")
    if len(marks) != cmax:
        raise InternalInconsistencyError(
            f"mark chain has {len(marks)} vertices, expected c_max = {cmax}"
        )
    if ext.degree(0) != 1:
        raise InternalInconsistencyError(
            "affine vertex must attach at exactly one vertex when c_max >= 2"
        )
    if not ext.is_simple_chain(path[:-1]):
        raise InternalInconsistencyError(
            f"prefix {path[:-1]} of the mark chain is not a simple chain"
        )
    if len(indices) == 1:
        end_pairing = -rs.pairing(theta, indices[0])
    else:
        s, t = indices[-2], indices[-1]
        end_pairing = rs.cartan.a(t, s)
    if end_pairing not in (-2, -3) and ext.degree(indices[-1]) < 3:
        raise InternalInconsistencyError(
            f"mark chain ends with pairing {end_pairing} at a non-ramification point"
        )
    return MarkChain(indices, marks, neg)


@dataclass(frozen=True)
class TopChain:
    """Roots of height above m_{l-1}, descending, with their consecutive
    differences (each difference should be a simple root)."""

    roots: tuple[Root, ...]
    step_indices: tuple[int, ...]
    neg_highest: tuple[int, ...]
    non_simple: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def m(self) -> int:
        return len(self.roots)

    def step(self, t: int) -> int:
        """1-based: the simple index of the t-th difference."""
        return self.step_indices[t - 1]


def top_chain(rs: RootSystem, rep: ExponentReport) -> TopChain:
    """Collect the unique root of each height in (m_{l-1}, m_l].

    A non-simple consecutive difference is recorded as a finding in
    ``non_simple`` rather than assumed away.
    """
    if rs.rank < 2:
        raise InvalidArgumentError(
            "rank >= 2 required: the second smallest exponent is undefined at rank 1"
        )
    ms = rep.exponents
    m_l, m_l1, m2 = ms[-1], ms[-2], ms[1]
    if m_l != rs.max_height:
        raise InternalInconsistencyError(
            f"largest exponent {m_l} does not match the top height {rs.max_height}"
        )
    roots: list[Root] = []
    for h in range(m_l, m_l1, -1):
        layer = rs.layer(h)
        if len(layer) != 1:
            raise InternalInconsistencyError(
                f"height {h} holds {len(layer)} roots; expected exactly one"
            )
        roots.append(layer[0])
    m = len(roots)
    if m != m_l - m_l1 or m != m2 - 1:
        raise InternalInconsistencyError(
            f"|top chain| = {m}, expected m_l - m_(l-1) = {m_l - m_l1} = m2 - 1 = {m2 - 1}"
        )
    steps: list[int] = []
    non_simple: list[tuple[int, tuple[int, ...]]] = []
    for t in range(m - 1):
        diff = tuple(a - b for a, b in zip(roots[t].coeffs, roots[t + 1].coeffs))
        if sum(diff) == 1 and all(x in (0, 1) for x in diff):
            steps.append(diff.index(1) + 1)
        else:
            non_simple.append((t + 1, diff))
    neg = tuple(-x for x in rs.highest_root().coeffs)
    return TopChain(tuple(roots), tuple(steps), neg, tuple(non_simple))


@dataclass(frozen=True)
class CaseSplit:
    case: int
    witness: int | None
    pairings: tuple[int, ...]


def classify_case(top: TopChain, rs: RootSystem) -> CaseSplit:
    """Case 1 iff some top-chain root pairs to 3 against its step.

    The witness, when present, must be unique and sit at position m - 2;
    anything else is raised as an internal inconsistency.
    """
    if top.non_simple:
        raise InternalInconsistencyError(
            f"top-chain differences are not all simple: {top.non_simple}"
        )
    pairings = tuple(
        rs.pairing(top.roots[t - 1], top.step(t)) for t in range(1, top.m)
    )
    witnesses = [t for t, p in enumerate(pairings, start=1) if p == 3]
    if len(witnesses) > 1:
        raise InternalInconsistencyError(f"multiple pairing-3 witnesses: {witnesses}")
    if witnesses:
        t = witnesses[0]
        if t != top.m - 2:
            raise InternalInconsistencyError(
                f"pairing-3 witness at t = {t}, expected m - 2 = {top.m - 2}"
            )
        return CaseSplit(1, t, pairings)
    return CaseSplit(2, None, pairings)


# ---------------------------------------------------------------------------
# check results
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    counterexamples: list = field(default_factory=list)
    note: str = ""

    def to_json_dict(self) -> dict:
        out: dict = {"pass": self.passed, "counterexamples": self.counterexamples}
        if self.note:
            out["note"] = self.note
        return out


def _vacuous(name: str, why: str) -> CheckResult:
    return CheckResult(name, True, [], f"vacuous: {why}")


# ---------------------------------------------------------------------------
# chain and relation checks
# ---------------------------------------------------------------------------

def check_mark_chain(rs: RootSystem) -> CheckResult:
    """Mark-chain shape; for c_max = 1 additionally the chain form of the
    whole graph with the affine vertex on its terminals."""
    chain = mark_chain(rs)
    cx: list = []
    if rs.c_max() == 1 and rs.rank >= 2:
        g = rs.graph
        ext = rs.extended_graph
        if not g.is_chain_graph():
            cx.append({"reason": "coefficient 1 everywhere but the graph is not a chain"})
        terminals = g.terminal_vertices()
        if set(ext.neighbors(0)) != terminals:
            cx.append(
                {
                    "reason": "affine vertex must attach exactly at the terminals",
                    "affine_neighbors": sorted(ext.neighbors(0)),
                    "terminals": sorted(terminals),
                }
            )
        if len(terminals) != 2:
            cx.append({"reason": "expected exactly two terminal vertices"})
    return CheckResult(
        "mark_chain", not cx, cx, f"vertices {chain.vertices}, marks {chain.marks}"
    )


def check_main_relation(rs: RootSystem, rep: ExponentReport, split: CaseSplit) -> CheckResult:
    cmax = rs.c_max()
    m2 = rep.exponents[1]
    expected = m2 - 2 if split.case == 1 else m2 - 1
    ok = cmax == expected
    cx = [] if ok else [{"c_max": cmax, "m2": m2, "case": split.case}]
    return CheckResult(
        "main_relation", ok, cx, f"case {split.case}: c_max = {cmax}, m2 = {m2}"
    )


def check_chains_coincide(rs: RootSystem, rep: ExponentReport) -> CheckResult:
    """The step set of the top chain equals the vertex set of the mark
    chain, and peeling the mark chain off the highest root walks through
    uniquely-occupied height layers."""
    chain = mark_chain(rs)
    top = top_chain(rs, rep)
    cx: list = []
    if top.non_simple:
        cx.append({"non_simple_steps": [list(d) for _, d in top.non_simple]})
    if set(top.step_indices) != set(chain.simple_indices):
        cx.append(
            {
                "step_set": sorted(set(top.step_indices)),
                "mark_set": sorted(set(chain.simple_indices)),
            }
        )
    theta = rs.highest_root()
    eta = list(theta.coeffs)
    q = len(chain.simple_indices)
    for p in range(1, q + 2):
        h = theta.height - (p - 1)
        layer = rs.layer(h)
        if len(layer) != 1 or layer[0].coeffs != tuple(eta):
            cx.append(
                {
                    "descent_step": p,
                    "expected": list(eta),
                    "layer": [list(r.coeffs) for r in layer],
                }
            )
        if p <= q:
            eta[chain.simple_indices[p - 1] - 1] -= 1
    return CheckResult(
        "chains_coincide",
        not cx,
        cx,
        f"common set size {len(set(chain.simple_indices)) + 1}",
    )


def check_step_multiset(rs: RootSystem, top: TopChain, split: CaseSplit) -> CheckResult:
    """Multiset shape of the steps: in case 1 the last two coincide and the
    rest are distinct, with a single-edge prefix and a -3 pairing at the
    turn; in case 2 all steps are distinct, with the prefix chain when the
    first pairing is 1."""
    m = top.m
    if top.non_simple:
        return CheckResult(
            "step_multiset",
            False,
            [{"non_simple_steps": [list(d) for _, d in top.non_simple]}],
        )
    if m < 2:
        return _vacuous("step_multiset", "no steps when m = 1")
    cx: list = []
    note = ""
    steps = top.step_indices
    ext = rs.extended_graph
    if split.case == 1:
        if m < 4:
            cx.append({"reason": "a pairing-3 witness forces m >= 4", "m": m})
        else:
            if top.step(m - 1) != top.step(m - 2):
                cx.append(
                    {"reason": "last two steps must coincide", "steps": list(steps)}
                )
            head = steps[: m - 2]
            if len(set(head)) != len(head):
                cx.append({"reason": "head steps must be distinct", "steps": list(steps)})
            path = [0] + list(steps[: m - 3])
            if not ext.is_simple_chain(path):
                cx.append({"reason": "head prefix is not a simple chain", "path": path})
            turn = rs.cartan.a(top.step(m - 2), top.step(m - 3))
            if turn != -3:
                cx.append({"reason": "turn pairing must be -3", "pairing": turn})
            base_size = len(set(steps)) + 1  # distinct steps plus -theta
            if base_size != m - 1:
                cx.append({"reason": "base set size must be m - 1", "size": base_size})
    else:
        if len(set(steps)) != len(steps):
            cx.append({"reason": "steps must be distinct", "steps": list(steps)})
        first = rs.pairing(top.roots[0], top.step(1))
        if first == 2:
            if m != 2:
                cx.append({"reason": "first pairing 2 forces m = 2", "m": m})
            note = (
                "first pairing is 2; the negated highest root stays in the "
                "step multiset by convention"
            )
        elif first == 1 and m >= 3:
            path = [0] + list(steps[: m - 2])
            if not ext.is_simple_chain(path):
                cx.append({"reason": "prefix is not a simple chain", "path": path})
    return CheckResult("step_multiset", not cx, cx, note)


def check_step_nonramification(rs: RootSystem, top: TopChain) -> CheckResult:
    """Every step before the last, together with the affine vertex, avoids
    ramification points of the extended graph."""
    m = top.m
    if m < 2:
        return _vacuous("step_nonramification", "m < 2")
    if top.non_simple:
        return CheckResult(
            "step_nonramification",
            False,
            [{"non_simple_steps": [list(d) for _, d in top.non_simple]}],
        )
    ext = rs.extended_graph
    vertices = [0] + list(top.step_indices[: m - 2])
    cx = [
        {"vertex": v, "degree": ext.degree(v)} for v in vertices if ext.degree(v) > 2
    ]
    return CheckResult("step_nonramification", not cx, cx, f"vertices {vertices}")


def check_differences(rs: RootSystem, top: TopChain, split: CaseSplit) -> CheckResult:
    """Pairwise differences along the top chain are positive roots, except
    the (m-2, m) pair in case 1, which must be twice a simple root."""
    m = top.m
    if m < 2:
        return _vacuous("differences", "m < 2")
    cx: list = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            diff = tuple(
                a - b for a, b in zip(top.roots[i - 1].coeffs, top.roots[j - 1].coeffs)
            )
            if split.case == 1 and {i, j} == {m - 2, m}:
                ok = sorted(diff) == [0] * (len(diff) - 1) + [2]
            else:
                ok = diff in rs
            if not ok:
                cx.append({"i": i, "j": j, "difference": list(diff)})
    return CheckResult("differences", not cx, cx)


def check_lengths(rs: RootSystem, top: TopChain, split: CaseSplit) -> CheckResult:
    """Length equalities along the top chain: through theta_{m-2} and the
    steps before the turn in case 1, one farther in case 2."""
    m = top.m
    if m < 3:
        return _vacuous("lengths", "m < 3")
    if top.non_simple:
        return CheckResult(
            "lengths",
            False,
            [{"non_simple_steps": [list(d) for _, d in top.non_simple]}],
        )
    cx: list = []
    if split.case == 1 and m < 4:
        cx.append({"reason": "case 1 forces m >= 4", "m": m})
        return CheckResult("lengths", False, cx)
    hi = m - 2 if split.case == 1 else m - 1
    values = [rs.norm_sq(top.roots[t - 1]) for t in range(1, hi + 1)]
    values += [
        rs.norm_sq(rs.simple_root(top.step(t))) for t in range(1, hi)
    ]
    if len(set(values)) > 1:
        cx.append({"norms": [str(v) for v in values]})
    return CheckResult("lengths", not cx, cx, f"{len(values)} norms compared")


# ---------------------------------------------------------------------------
# exhaustive root-poset scans
# ---------------------------------------------------------------------------

def check_string_descent(rs: RootSystem) -> CheckResult:
    """Whenever a positive root pairs to k in {2, 3} against a simple root
    other than itself, some other simple root can be subtracted after
    stepping down k - 1 times."""
    n = rs.rank
    cx: list = []
    checked = 0
    for beta in rs.positive_roots():
        for i in range(1, n + 1):
            k = rs.pairing(beta, i)
            if k not in (2, 3):
                continue
            if beta.height == 1:  # beta == alpha_i is the only height-1 hit
                continue
            checked += 1
            base = list(beta.coeffs)
            base[i - 1] -= k - 1
            found = False
            for j in range(1, n + 1):
                if j == i:
                    continue
                cand = tuple(
                    b - (1 if idx == j - 1 else 0) for idx, b in enumerate(base)
                )
                if cand in rs:
                    found = True
                    break
            if not found:
                cx.append({"beta": list(beta.coeffs), "alpha": i, "k": k})
    return CheckResult("string_descent", not cx, cx, f"{checked} applicable pairs")


def check_no_detour(rs: RootSystem) -> CheckResult:
    """When a root pairs to 3 against the only simple root it can step down
    by, there is no second simple root to step down through."""
    n = rs.rank
    cx: list = []
    checked = 0
    for beta in rs.positive_roots():
        droppable = [
            j
            for j in range(1, n + 1)
            if tuple(
                b - (1 if idx == j - 1 else 0) for idx, b in enumerate(beta.coeffs)
            )
            in rs
        ]
        for i in range(1, n + 1):
            if rs.pairing(beta, i) != 3 or droppable != [i]:
                continue
            checked += 1
            for j in range(1, n + 1):
                if j == i:
                    continue
                down = tuple(
                    b - (1 if idx == i - 1 else 0) - (1 if idx == j - 1 else 0)
                    for idx, b in enumerate(beta.coeffs)
                )
                if down in rs or tuple(-x for x in down) in rs:
                    cx.append({"beta": list(beta.coeffs), "alpha": i, "detour": j})
    return CheckResult("no_detour", not cx, cx, f"{checked} applicable pairs")


def check_long_pair_positive(rs: RootSystem) -> CheckResult:
    """Signed root pairs whose difference is a root and which contain a long
    root have strictly positive inner product."""
    pos = [r.coeffs for r in rs.positive_roots()]
    signed = pos + [tuple(-c for c in v) for v in pos]
    member = set(signed)
    form = rs.form
    max_norm = max(form.inner_int(v, v) for v in pos)
    is_long = [form.inner_int(v, v) == max_norm for v in signed]
    cx: list = []
    checked = 0
    for a in range(len(signed)):
        va = signed[a]
        for b in range(a + 1, len(signed)):
            vb = signed[b]
            if not (is_long[a] or is_long[b]):
                continue
            diff = tuple(x - y for x, y in zip(va, vb))
            if diff not in member:
                continue
            checked += 1
            if form.inner_int(va, vb) <= 0:
                cx.append({"beta1": list(va), "beta2": list(vb)})
    return CheckResult("long_pair_positive", not cx, cx, f"{checked} qualifying pairs")


class _SignedIndex:
    """Signed roots encoded as base-b integers so membership of sums and
    differences reduces to sorted-array lookups.

    The digit offset covers any sum of up to three roots, so key arithmetic
    is collision-free; keys stay below 2**61 so a three-term sum cannot
    overflow int64.
    """

    def __init__(self, rs: RootSystem) -> None:
        pos = [r.coeffs for r in rs.positive_roots()]
        self.vectors: list[tuple[int, ...]] = pos + [
            tuple(-c for c in v) for v in pos
        ]
        self.member = set(self.vectors)
        self.rank = rs.rank
        maxc = max(abs(c) for v in self.vectors for c in v)
        self.offset = 3 * maxc + 1
        base = 2 * self.offset + 1
        self.numpy_ok = base ** self.rank < 2 ** 61
        if self.numpy_ok:
            self.powers = np.array(
                [base ** k for k in range(self.rank)], dtype=np.int64
            )
            arr = np.array(self.vectors, dtype=np.int64)
            self.keys = (arr + self.offset) @ self.powers
            self.zero_key = int(self.offset * self.powers.sum())
            self.sorted_keys = np.sort(self.keys)

    def contains_keys(self, ks: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.sorted_keys, ks)
        out = np.zeros(len(ks), dtype=bool)
        inb = pos < len(self.sorted_keys)
        out[inb] = self.sorted_keys[pos[inb]] == ks[inb]
        return out


def _triple_ok(sx: _SignedIndex, a, b, c) -> bool | None:
    """None when the triple does not qualify, else whether >= 2 partial
    sums are roots."""
    ab = tuple(x + y for x, y in zip(a, b))
    ac = tuple(x + y for x, y in zip(a, c))
    bc = tuple(x + y for x, y in zip(b, c))
    if not any(ab) or not any(ac) or not any(bc):
        return None
    total = tuple(x + y for x, y in zip(ab, c))
    if total not in sx.member:
        return None
    count = (ab in sx.member) + (ac in sx.member) + (bc in sx.member)
    return count >= 2


def _two_of_three_exhaustive_np(sx: _SignedIndex) -> tuple[int, list]:
    n = len(sx.vectors)
    keys = sx.keys
    zero = sx.zero_key
    iu, ju = np.triu_indices(n)
    pair_key = keys[iu] + keys[ju] - zero
    keep = pair_key != zero
    iu, ju, pair_key = iu[keep], ju[keep], pair_key[keep]
    order = np.argsort(ju, kind="stable")
    iu, ju, pair_key = iu[order], ju[order], pair_key[order]
    in12 = sx.contains_keys(pair_key)
    bounds = np.searchsorted(ju, np.arange(n), side="right")
    checked = 0
    cx: list = []
    for k in range(n):
        hi = int(bounds[k])
        if hi == 0:
            continue
        total = pair_key[:hi] + (keys[k] - zero)
        qual = sx.contains_keys(total)
        if not qual.any():
            continue
        ik = keys[iu[:hi]] + keys[k] - zero
        jk = keys[ju[:hi]] + keys[k] - zero
        qual &= (ik != zero) & (jk != zero)
        idx = np.nonzero(qual)[0]
        if idx.size == 0:
            continue
        checked += int(idx.size)
        counts = (
            in12[:hi][idx].astype(np.int8)
            + sx.contains_keys(ik[idx])
            + sx.contains_keys(jk[idx])
        )
        for b in idx[counts < 2]:
            if len(cx) < COUNTEREXAMPLE_CAP:
                cx.append(
                    {
                        "beta1": list(sx.vectors[int(iu[b])]),
                        "beta2": list(sx.vectors[int(ju[b])]),
                        "beta3": list(sx.vectors[k]),
                    }
                )
    return checked, cx


def _two_of_three_exhaustive_py(sx: _SignedIndex) -> tuple[int, list]:
    vs = sx.vectors
    n = len(vs)
    checked = 0
    cx: list = []
    for a in range(n):
        for b in range(a, n):
            for c in range(b, n):
                ok = _triple_ok(sx, vs[a], vs[b], vs[c])
                if ok is None:
                    continue
                checked += 1
                if not ok and len(cx) < COUNTEREXAMPLE_CAP:
                    cx.append(
                        {"beta1": list(vs[a]), "beta2": list(vs[b]), "beta3": list(vs[c])}
                    )
    return checked, cx


def _two_of_three_sampled(sx: _SignedIndex, seed: int, samples: int) -> tuple[int, list]:
    rng = random.Random(seed)
    vs = sx.vectors
    n = len(vs)
    checked = 0
    cx: list = []
    for _ in range(samples):
        a, b, c = (rng.randrange(n) for _ in range(3))
        ok = _triple_ok(sx, vs[a], vs[b], vs[c])
        if ok is None:
            continue
        checked += 1
        if not ok and len(cx) < COUNTEREXAMPLE_CAP:
            cx.append(
                {"beta1": list(vs[a]), "beta2": list(vs[b]), "beta3": list(vs[c])}
            )
    return checked, cx


def check_two_of_three_sums(
    rs: RootSystem,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
) -> CheckResult:
    """For signed root triples with nonzero pairwise sums whose total is a
    root, at least two of the pairwise sums are roots.

    Exhaustive up to ``exhaustive_limit`` signed roots, seeded uniform
    sampling beyond that.
    """
    sx = _SignedIndex(rs)
    n = len(sx.vectors)
    if n <= exhaustive_limit:
        if sx.numpy_ok:
            checked, cx = _two_of_three_exhaustive_np(sx)
        else:
            checked, cx = _two_of_three_exhaustive_py(sx)
        note = f"exhaustive: {n} signed roots, {checked} qualifying triples"
    else:
        checked, cx = _two_of_three_sampled(sx, seed, samples)
        note = f"sampled: {samples} triples, seed={seed}, {checked} qualifying"
    return CheckResult("two_of_three_sums", not cx, cx, note)


# ---------------------------------------------------------------------------
# ledger
# ---------------------------------------------------------------------------

def check_exponents_agree(rep_a: ExponentReport, rep_b: ExponentReport) -> CheckResult:
    ok = (
        rep_a.exponents == rep_b.exponents
        and rep_a.coxeter_number == rep_b.coxeter_number
    )
    cx = (
        []
        if ok
        else [
            {
                rep_a.method: list(rep_a.exponents),
                rep_b.method: list(rep_b.exponents),
            }
        ]
    )
    residual = max(rep_a.max_residual, rep_b.max_residual)
    return CheckResult(
        "exponents_agree", ok, cx, f"h = {rep_a.coxeter_number}, residual {residual:.2e}"
    )


def check_exponent_duality(rep: ExponentReport, rs: RootSystem) -> CheckResult:
    results = check_duality(rep, rs)
    cx = [{"identity": r.name, "detail": r.detail} for r in results if not r.passed]
    return CheckResult("exponent_duality", not cx, cx, f"{len(results)} identities")


def check_single_mark_iff_single_top(rs: RootSystem, top: TopChain) -> CheckResult:
    ok = (rs.c_max() == 1) == (top.m == 1)
    cx = [] if ok else [{"c_max": rs.c_max(), "m": top.m}]
    return CheckResult("mark_one_iff_top_one", ok, cx)


@dataclass
class VerificationLedger:
    """Per-system record: headline numbers plus one result per check."""

    label: str
    rank: int
    c_max: int
    m2: int
    case: int | None
    witness_t: int | None
    checks: dict[str, CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_json_dict(self) -> dict:
        return {
            "type": self.label,
            "c_max": self.c_max,
            "m2": self.m2,
            "case": self.case,
            "witness_t": self.witness_t,
            "checks": {name: c.to_json_dict() for name, c in self.checks.items()},
        }


CHECK_NAMES = (
    "exponents_agree",
    "exponent_duality",
    "top_chain",
    "case_witness",
    "main_relation",
    "mark_chain",
    "chains_coincide",
    "step_multiset",
    "step_nonramification",
    "differences",
    "lengths",
    "mark_one_iff_top_one",
    "string_descent",
    "two_of_three_sums",
    "long_pair_positive",
    "no_detour",
)


def build_ledger(
    rs: RootSystem,
    *,
    exhaustive_limit: int = DEFAULT_EXHAUSTIVE_LIMIT,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
) -> VerificationLedger:
    """Run every check on one system, converting raised inconsistencies into
    failed results so batch runs always complete."""
    if rs.rank < 2:
        raise InvalidArgumentError("rank >= 2 required; m2 is undefined at rank 1")
    rep_d = dual_partition(height_distribution(rs))
    rep_c = coxeter_exponents(rs.cartan)

    checks: dict[str, CheckResult] = {}

    def run(name, fn) -> CheckResult | None:
        try:
            result = fn()
        except Exception as exc:  # findings, not crashes
            result = CheckResult(name, False, [], f"error: {exc}")
        checks[name] = result
        return result

    def blocked(name: str) -> None:
        checks[name] = CheckResult(name, False, [], "blocked: top chain unavailable")

    run("exponents_agree", lambda: check_exponents_agree(rep_d, rep_c))
    run("exponent_duality", lambda: check_exponent_duality(rep_d, rs))

    top: TopChain | None = None
    split: CaseSplit | None = None

    def _build_top() -> CheckResult:
        nonlocal top
        top = top_chain(rs, rep_d)
        note = f"m = {top.m}, steps {top.step_indices}"
        if top.non_simple:
            return CheckResult(
                "top_chain",
                False,
                [{"non_simple_steps": [list(d) for _, d in top.non_simple]}],
                note,
            )
        return CheckResult("top_chain", True, [], note)

    run("top_chain", _build_top)

    if top is not None and not top.non_simple:
        def _split() -> CheckResult:
            nonlocal split
            split = classify_case(top, rs)
            witness = "" if split.witness is None else f", witness t = {split.witness}"
            return CheckResult(
                "case_witness", True, [], f"case {split.case}{witness}"
            )

        run("case_witness", _split)
    else:
        blocked("case_witness")

    if split is not None:
        run("main_relation", lambda: check_main_relation(rs, rep_d, split))
    else:
        blocked("main_relation")

    run("mark_chain", lambda: check_mark_chain(rs))
    run("chains_coincide", lambda: check_chains_coincide(rs, rep_d))

    if top is not None and split is not None:
        run("step_multiset", lambda: check_step_multiset(rs, top, split))
        run("step_nonramification", lambda: check_step_nonramification(rs, top))
        run("differences", lambda: check_differences(rs, top, split))
        run("lengths", lambda: check_lengths(rs, top, split))
        run("mark_one_iff_top_one", lambda: check_single_mark_iff_single_top(rs, top))
    else:
        for name in (
            "step_multiset",
            "step_nonramification",
            "differences",
            "lengths",
            "mark_one_iff_top_one",
        ):
            blocked(name)

    run("string_descent", lambda: check_string_descent(rs))
    run(
        "two_of_three_sums",
        lambda: check_two_of_three_sums(
            rs, exhaustive_limit=exhaustive_limit, seed=seed, samples=samples
        ),
    )
    run("long_pair_positive", lambda: check_long_pair_positive(rs))
    run("no_detour", lambda: check_no_detour(rs))

    return VerificationLedger(
        label=rs.label or "custom",
        rank=rs.rank,
        c_max=rs.c_max(),
        m2=rep_d.exponents[1],
        case=split.case if split else None,
        witness_t=split.witness if split else None,
        checks=checks,
    )


def g2_graph_report(rs: RootSystem) -> dict:
    """The two graph forms characterising G2: a single triple edge, and the
    affine vertex hanging by a single edge off the long simple root."""
    triple = rs.rank == 2 and rs.graph.edge_multiplicity(1, 2) == 3
    ok = False
    if rs.rank == 2:
        ext = rs.extended_graph
        long_idx = 1 if rs.is_long(rs.simple_root(1)) else 2
        ok = ext.neighbors(0) == (long_idx,) and ext.edge_multiplicity(0, long_idx) == 1
    return {"dynkin_triple_edge": triple, "affine_single_edge_to_long_root": ok}


def g2_criterion_report(ledgers: Iterable[VerificationLedger]) -> dict:
    """c_max = m2 - 2 must hold for G2 and fail everywhere else; the G2
    graph forms are checked alongside."""
    ledgers = list(ledgers)
    case1 = sorted(l.label for l in ledgers if l.case == 1)
    rel = sorted(l.label for l in ledgers if l.c_max == l.m2 - 2)
    has_g2 = any(l.label == "G2" for l in ledgers)
    graph = None
    if has_g2:
        from .roots import build_system

        graph = g2_graph_report(build_system("G2"))
    ok = (
        has_g2
        and case1 == ["G2"]
        and rel == ["G2"]
        and graph is not None
        and all(graph.values())
    )
    return {
        "pass": bool(ok),
        "case1_types": case1,
        "m2_minus_2_types": rel,
        "g2_graph": graph,
    }
