"""Concrete finite quadratic forms with a prescribed genus symbol."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .fqf import FiniteQuadraticForm, fqf_direct_sum
from .jordan import legendre
from .symbol import Constituent, GenusSymbol, _as_symbol, canonical_symbol

__all__ = ["fqf_from_symbol", "NotRealizable"]


class NotRealizable(ValueError):
    pass


def _cyclic(order: int, q: Fraction) -> FiniteQuadraticForm:
    return FiniteQuadraticForm((order,), ((q,),))


def _odd_prime(c: Constituent) -> FiniteQuadraticForm:
    # The rank one lattice <p^k u> with u even has discriminant value u / p^k.
    plus = next(u for u in range(2, 4 * c.p, 2) if legendre(u, c.p) == 1)
    minus = next(u for u in range(2, 4 * c.p, 2) if legendre(u, c.p) == -1)
    units = [plus] * (c.rank - 1) + [plus if c.sign > 0 else minus]
    return fqf_direct_sum(*(_cyclic(c.scale, Fraction(u, c.scale)) for u in units))


def _even_two(c: Constituent) -> FiniteQuadraticForm:
    # 2^k H (sign +) and 2^k V (sign -) as discriminant forms.
    n = c.scale
    blocks = [(0, 0)] * (c.rank // 2 - 1) + [(0, 0) if c.sign > 0 else (2, 2)]
    forms = [
        FiniteQuadraticForm((n, n), ((Fraction(a, n), Fraction(1, n)), (Fraction(1, n), Fraction(b, n))))
        for a, b in blocks
    ]
    return fqf_direct_sum(*forms)


@lru_cache(maxsize=None)
def _unit_tuples(rank: int) -> dict[tuple[int, int], tuple[int, ...]]:
    """(sign, oddity) -> units u_1..u_rank in {1,3,5,7} realizing it."""
    out: dict[tuple[int, int], tuple[int, ...]] = {}
    free = min(rank, 3)
    for tail in product((1, 3, 5, 7), repeat=free):
        units = (1,) * (rank - free) + tail
        prod = 1
        for u in units:
            prod = prod * u % 8
        key = (1 if prod in (1, 7) else -1, sum(units) % 8)
        out.setdefault(key, units)
    return out


def _odd_two_block(cons: list[Constituent]) -> FiniteQuadraticForm:
    """Realize one compartment; only the total oddity is prescribed."""
    target = sum(c.oddity for c in cons) % 8
    options = [[(t, u) for (s, t), u in _unit_tuples(c.rank).items() if s == c.sign] for c in cons]
    for choice in product(*options):
        if sum(t for t, _ in choice) % 8 == target:
            forms = []
            for c, (_, units) in zip(cons, choice):
                forms.extend(_cyclic(c.scale, Fraction(u, c.scale)) for u in units)
            return fqf_direct_sum(*forms)
    raise NotRealizable("no diagonal form with these signs and oddity")


def _realize_two(two: list[Constituent]) -> list[FiniteQuadraticForm]:
    forms = []
    i = 0
    while i < len(two):
        c = two[i]
        if not c.odd:
            forms.append(_even_two(c))
            i += 1
            continue
        comp = [c]
        while i + 1 < len(two) and two[i + 1].odd and two[i + 1].k == comp[-1].k + 1:
            i += 1
            comp.append(two[i])
        forms.append(_odd_two_block(comp))
        i += 1
    return forms


def _equivalent_local_data(two: list[Constituent]):
    """Other 2-adic symbols with the same canonical form, each constituent
    individually realizable."""
    target = canonical_symbol(GenusSymbol(tuple(two)))
    options = []
    for c in two:
        if c.odd:
            options.append([Constituent(2, c.k, c.rank, s, True, t) for s, t in _unit_tuples(c.rank)])
        else:
            options.append([Constituent(2, c.k, c.rank, s) for s in (1, -1)])
    for choice in product(*options):
        if canonical_symbol(GenusSymbol(choice)) == target:
            yield list(choice)


def fqf_from_symbol(s) -> FiniteQuadraticForm:
    """A finite quadratic form whose Jordan constituents are those of ``s``.

    Odd 2-adic constituents are realized a compartment at a time, so
    symbols whose oddity has been fused onto the first constituent of a
    compartment are accepted.
    """
    s = _as_symbol(s)
    two = [c for c in s.constituents if c.p == 2]
    try:
        forms = _realize_two(two)
    except NotRealizable:
        # Sign walking can leave a locally impossible sign pattern; look for
        # equivalent local data instead.
        forms = None
        for alt in _equivalent_local_data(two):
            try:
                forms = _realize_two(alt)
                break
            except NotRealizable:
                continue
        if forms is None:
            raise NotRealizable(f"no finite quadratic form has symbol {s}") from None
    forms.extend(_odd_prime(c) for c in s.constituents if c.p != 2)
    return fqf_direct_sum(*forms) if forms else FiniteQuadraticForm.trivial()
