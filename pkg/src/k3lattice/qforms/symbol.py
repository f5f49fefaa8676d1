"""Conway-Sloane genus symbols of finite quadratic forms.

A symbol lists Jordan constituents ``p^k`` with rank ``n`` and sign ``ε``;
2-adic constituents also carry a type (even ``II`` or odd) and, when odd, an
oddity in Z/8.  The ASCII grammar is

    symbol := "" | atom ("," atom)*
    atom   := SCALE ("_" SUB)? "^" SIGN RANK
    SUB    := "II" | 0..7            (powers of 2 only)

so ``2_II^-2,3^+5`` is the symbol with a rank 2 even constituent at scale 2
of sign minus and a rank 5 constituent at scale 3 of sign plus.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable

__all__ = [
    "SymbolParseError",
    "Constituent",
    "GenusSymbol",
    "parse_symbol",
    "symbol_to_string",
    "symbol_direct_sum",
    "canonical_symbol",
    "symbols_equivalent",
    "signature_mod8",
    "prime_power",
]


class SymbolParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def prime_power(q: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``q = p**k`` and ``k >= 1``, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p:
        p += 1 if p == 2 else 2
    if q % p:
        p = q
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


@dataclass(frozen=True, order=True)
class Constituent:
    p: int
    k: int
    rank: int
    sign: int
    odd: bool = False
    oddity: int = 0

    def __post_init__(self):
        if self.rank < 1 or self.k < 1:
            raise ValueError("constituents need rank >= 1 and scale exponent >= 1")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.p != 2 and (self.odd or self.oddity):
            raise ValueError("only 2-adic constituents have a type or oddity")
        if self.p == 2 and not self.odd:
            if self.rank % 2:
                raise ValueError("even (type II) 2-adic constituents have even rank")
            if self.oddity:
                raise ValueError("even 2-adic constituents have oddity 0")
        object.__setattr__(self, "oddity", self.oddity % 8)

    @property
    def scale(self) -> int:
        return self.p**self.k

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        if self.p == 2:
            sub = str(self.oddity) if self.odd else "II"
            return f"{self.scale}_{sub}^{s}{self.rank}"
        return f"{self.scale}^{s}{self.rank}"


@dataclass(frozen=True)
class GenusSymbol:
    constituents: tuple[Constituent, ...] = ()

    def __post_init__(self):
        cons = tuple(self.constituents)
        keys = [(c.p, c.k) for c in cons]
        if keys != sorted(keys):
            raise ValueError("constituents must be sorted by (p, k)")
        if len(set(keys)) != len(keys):
            raise ValueError("at most one constituent per scale")
        object.__setattr__(self, "constituents", cons)

    @classmethod
    def from_constituents(cls, items: Iterable[Constituent]) -> "GenusSymbol":
        """Build a symbol, merging constituents that share a scale."""
        merged: dict[tuple[int, int], Constituent] = {}
        for c in items:
            key = (c.p, c.k)
            if key in merged:
                merged[key] = _merge(merged[key], c)
            else:
                merged[key] = c
        return cls(tuple(merged[k] for k in sorted(merged)))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.constituents)

    def __bool__(self) -> bool:
        return bool(self.constituents)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(sorted({c.p for c in self.constituents}))

    def part(self, p: int) -> tuple[Constituent, ...]:
        return tuple(c for c in self.constituents if c.p == p)

    @property
    def order(self) -> int:
        out = 1
        for c in self.constituents:
            out *= c.scale**c.rank
        return out

    def length(self, p: int) -> int:
        """Minimal number of generators of the p-part."""
        return sum(c.rank for c in self.part(p))

    def canonical(self) -> "GenusSymbol":
        return canonical_symbol(self)

    def signature_mod8(self) -> int:
        return signature_mod8(self)


def _merge(a: Constituent, b: Constituent) -> Constituent:
    odd = a.odd or b.odd
    return Constituent(a.p, a.k, a.rank + b.rank, a.sign * b.sign, odd, (a.oddity + b.oddity) % 8 if odd else 0)


_ATOM = re.compile(r"(\d+)(?:_(II|\d+))?\^([+-])(\d+)")


def parse_symbol(text: str) -> GenusSymbol:
    raw = text
    # Offsets refer to the input with whitespace removed.
    text = re.sub(r"\s+", "", raw)
    if text == "":
        return GenusSymbol()
    cons = []
    pos = 0
    for token in text.split(","):
        m = _ATOM.fullmatch(token)
        if not m:
            raise SymbolParseError(f"malformed atom {token!r}", pos)
        scale, sub, sign, rank = m.groups()
        pk = prime_power(int(scale))
        if pk is None:
            raise SymbolParseError(f"scale {scale} is not a prime power", pos)
        p, k = pk
        if p == 2 and sub is None:
            raise SymbolParseError(f"2-adic atom {token!r} needs a subscript", pos)
        if p != 2 and sub is not None:
            raise SymbolParseError(f"subscript {sub!r} on odd prime scale {scale}", pos + m.start(2))
        if sub is not None and sub != "II" and not (len(sub) == 1 and sub in "01234567"):
            raise SymbolParseError(f"oddity {sub!r} must be a digit 0-7", pos + m.start(2))
        if int(rank) < 1:
            raise SymbolParseError("rank must be positive", pos + m.start(4))
        try:
            if p == 2:
                odd = sub != "II"
                cons.append(Constituent(2, k, int(rank), 1 if sign == "+" else -1, odd, int(sub) if odd else 0))
            else:
                cons.append(Constituent(p, k, int(rank), 1 if sign == "+" else -1))
        except ValueError as e:
            raise SymbolParseError(str(e), pos) from None
        pos += len(token) + 1
    try:
        return GenusSymbol(tuple(cons))
    except ValueError as e:
        raise SymbolParseError(str(e), 0) from None


def symbol_to_string(s: GenusSymbol) -> str:
    return str(s)


def _as_symbol(s) -> GenusSymbol:
    return s if isinstance(s, GenusSymbol) else parse_symbol(s)


def symbol_direct_sum(*symbols) -> GenusSymbol:
    """Orthogonal sum: constituents at equal scale merge (ranks add, signs
    multiply, oddities add)."""
    return GenusSymbol.from_constituents(c for s in symbols for c in _as_symbol(s).constituents)


def _canonical_two_adic(cons: list[Constituent]) -> list[Constituent]:
    """Normal form of a 2-adic discriminant symbol.

    A scale 1 even constituent is prepended: the discriminant form forgets
    the unimodular part, whose sign is therefore free.  Compartments are
    maximal runs of odd constituents at consecutive scales; trains break
    between two even neighbours at adjacent scales, across gaps larger than
    2, and across a gap of exactly 2 unless both neighbours are odd.
    """
    # rows: [k, rank, sign, odd, oddity]
    rows = [[0, 2, 1, False, 0]] + [[c.k, c.rank, c.sign, c.odd, c.oddity] for c in cons]
    n = len(rows)

    compartments: list[list[int]] = []
    i = 0
    while i < n:
        if rows[i][3]:
            comp = [i]
            while i + 1 < n and rows[i + 1][3] and rows[i + 1][0] == rows[i][0] + 1:
                i += 1
                comp.append(i)
            compartments.append(comp)
        i += 1

    for comp in compartments:
        total = sum(rows[j][4] for j in comp) % 8
        for j in comp:
            rows[j][4] = 0
        rows[comp[0]][4] = total

    trains: list[list[int]] = []
    current = [0]
    for i in range(1, n):
        prev, cur = rows[i - 1], rows[i]
        gap = cur[0] - prev[0]
        joined = (gap == 1 and (prev[3] or cur[3])) or (gap == 2 and prev[3] and cur[3])
        if joined:
            current.append(i)
        else:
            trains.append(current)
            current = [i]
    trains.append(current)

    for train in trains:
        for t1 in reversed(train[1:]):
            if rows[t1][2] == -1:
                rows[t1][2] = 1
                rows[t1 - 1][2] *= -1
                for comp in compartments:
                    if t1 - 1 in comp or t1 in comp:
                        rows[comp[0]][4] = (rows[comp[0]][4] + 4) % 8

    return [Constituent(2, k, rank, sign, odd, oddity) for k, rank, sign, odd, oddity in rows[1:]]


def canonical_symbol(s) -> GenusSymbol:
    """Representative that is equal for isomorphic discriminant forms."""
    s = _as_symbol(s)
    two = [c for c in s.constituents if c.p == 2]
    rest = [c for c in s.constituents if c.p != 2]
    return GenusSymbol(tuple((_canonical_two_adic(two) if two else []) + rest))


def symbols_equivalent(s1, s2) -> bool:
    return canonical_symbol(s1) == canonical_symbol(s2)


def signature_mod8(s) -> int:
    """Signature mod 8 of any even lattice with discriminant form ``s``.

    sig ≡ oddity - Σ_{p odd} p-excess, where the oddity adds 4 for every
    2-adic constituent of sign - at an odd power of 2, and the p-excess is
    Σ n (p^k - 1) plus 4 for every constituent of sign - at an odd power.
    """
    s = _as_symbol(s)
    total = 0
    for c in s.constituents:
        odd_power_minus = 4 if (c.k % 2 and c.sign < 0) else 0
        if c.p == 2:
            total += c.oddity + odd_power_minus
        else:
            total -= c.rank * (c.scale - 1) + odd_power_minus
    return total % 8
