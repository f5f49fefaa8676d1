"""Exhaustive isomorphism oracle for small finite quadratic forms.

Nothing here uses Jordan decompositions or genus symbols.  Two forms are
compared through invariants computed by enumerating every group element:
for each prime p, the multiset of (element order, q-value) pairs on the
p-part, and the Gauss sums Σ exp(πi c q(x)) of the p-part for every
rescaling c prime to the group order.  An explicit isometry search is
available as an additional spot check.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .. import kernels
from .fqf import FiniteQuadraticForm

__all__ = [
    "DEFAULT_BOUND",
    "OracleBoundExceeded",
    "oracle_invariants",
    "brute_force_isomorphic",
    "find_isometry",
    "oracle_compare",
]

DEFAULT_BOUND = 2**12


class OracleBoundExceeded(ValueError):
    pass


def _gauss_sums(hist: dict[tuple[int, int], int], modulus: int, group_order: int) -> tuple:
    sums = []
    for c in range(1, modulus + 1):
        if gcd(c, group_order) != 1:
            continue
        z = sum(cnt * cmath.exp(1j * cmath.pi * c * v * 2 / modulus) for (_, v), cnt in hist.items())
        sums.append((c, round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0))
    return tuple(sums)


def oracle_invariants(f: FiniteQuadraticForm, bound: int = DEFAULT_BOUND) -> tuple:
    """Hashable invariant; equal for isomorphic forms."""
    if f.order > bound:
        raise OracleBoundExceeded(f"oracle bound exceeded: |A| = {f.order} > {bound}")
    out = []
    for p in f.primes():
        part = f.primary_part(p)
        qnum, bnum, modulus = part.scaled_integers()
        hist = kernels.value_histogram(list(part.orders), qnum, bnum, modulus)
        values = sorted((order, Fraction(2 * v, modulus), cnt) for (order, v), cnt in hist.items())
        out.append((p, tuple(values), _gauss_sums(hist, modulus, f.order)))
    return tuple(out)


def brute_force_isomorphic(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm, bound: int = DEFAULT_BOUND) -> bool:
    if q1.order != q2.order:
        return False
    return oracle_invariants(q1, bound) == oracle_invariants(q2, bound)


def _elements(f: FiniteQuadraticForm):
    return list(product(*(range(n) for n in f.orders)))


def find_isometry(q1: FiniteQuadraticForm, q2: FiniteQuadraticForm, max_nodes: int = 200_000):
    """Search for images of the generators of ``q1`` in ``q2``.

    Returns the list of images, None if no isometry exists, or raises
    ``TimeoutError`` once ``max_nodes`` partial assignments were tried.
    Works one primary part at a time.
    """
    if q1.order != q2.order:
        return None
    images = []
    nodes = [0]
    for p in q1.primes():
        a, b = q1.primary_part(p), q2.primary_part(p)
        if a.order != b.order:
            return None
        found = _search_part(a, b, nodes, max_nodes)
        if found is None:
            return None
        images.append((p, found))
    return images


def _pairing(f: FiniteQuadraticForm):
    """Integer version of b: returns (M, fn) with b(x, y) = fn(x, y) / M mod 1."""
    dens = [x.denominator for row in f.gram for x in row] or [1]
    m = lcm(*dens)
    g = [[int(x * m) for x in row] for row in f.gram]
    r = f.ngens

    def b(x, y):
        total = 0
        for i in range(r):
            if x[i]:
                row = g[i]
                total += x[i] * sum(row[j] * y[j] for j in range(r) if y[j])
        return total % m

    return m, b


def _search_part(a: FiniteQuadraticForm, b: FiniteQuadraticForm, nodes: list[int], max_nodes: int):
    """Backtracking over generator images with forward checking.

    A map sending each generator of ``a`` to an element of the same order
    and q-value, with all pairings preserved, is an isometric embedding
    when ``a`` is nondegenerate; equal orders make it onto.  Generators
    with the fewest remaining candidates are assigned first.
    """
    by_type: dict[tuple[int, Fraction], list] = {}
    for x in _elements(b):
        by_type.setdefault((b.element_order(x), b.q(x)), []).append(x)
    r = a.ngens
    gens = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    m, pair = _pairing(b)
    target = [[int(a.b(gens[i], gens[j]) * m) % m if (a.b(gens[i], gens[j]) * m).denominator == 1 else None
               for j in range(r)] for i in range(r)]
    domains = {i: by_type.get((a.orders[i], a.q(gens[i])), []) for i in range(r)}
    if any(not d for d in domains.values()) or any(x is None for row in target for x in row):
        return None
    assigned: dict[int, tuple[int, ...]] = {}

    def solve(domains):
        if not domains:
            images = [assigned[i] for i in range(r)]
            # Automatic for nondegenerate a; checked for the degenerate case.
            return images if _generates(b, images) else None
        i = min(domains, key=lambda k: (len(domains[k]), k))
        for cand in domains[i]:
            nodes[0] += 1
            if nodes[0] > max_nodes:
                raise TimeoutError("isometry search budget exhausted")
            if pair(cand, cand) != target[i][i]:
                continue
            rest = {}
            for k, dom in domains.items():
                if k == i:
                    continue
                left = [y for y in dom if pair(cand, y) == target[i][k]]
                if not left:
                    break
                rest[k] = left
            else:
                assigned[i] = cand
                res = solve(rest)
                if res is not None:
                    return res
                del assigned[i]
        return None

    return solve(domains)


def _generates(f: FiniteQuadraticForm, vectors) -> bool:
    seen = {tuple([0] * f.ngens)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for v in vectors:
                y = tuple((xi + vi) % n for xi, vi, n in zip(x, v, f.orders))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == f.order


@dataclass(frozen=True)
class OracleVerdict:
    status: str  # "isomorphic", "not isomorphic" or "indistinguishable"

    @property
    def isomorphic(self) -> bool:
        return self.status == "isomorphic"


def oracle_compare(q1, q2, bound: int = DEFAULT_BOUND, max_nodes: int = 200_000) -> OracleVerdict:
    """Invariants first, then an explicit isometry when they agree.

    Agreement of all invariants without an isometry found inside the search
    budget is reported as "indistinguishable" so callers can flag it.
    """
    if not brute_force_isomorphic(q1, q2, bound):
        return OracleVerdict("not isomorphic")
    try:
        found = find_isometry(q1, q2, max_nodes)
    except TimeoutError:
        return OracleVerdict("indistinguishable")
    return OracleVerdict("isomorphic" if found is not None else "indistinguishable")
