"""Jordan decomposition of finite quadratic forms.

The p-part of a form with generators x_i of order p^{k_i} is the
discriminant form of the p-adic lattice spanned by p^{k_i} x_i.  Its Gram
matrix D Q D (D = diag p^{k_i}, Q a rational lift of the values) is split
into Jordan blocks with exact rational arithmetic; every denominator that
appears is prime to p, so p-adic valuations and unit residues are read off
directly.
"""

from __future__ import annotations

from fractions import Fraction

from .fqf import FiniteQuadraticForm
from .symbol import Constituent, GenusSymbol, canonical_symbol

__all__ = ["jordan_normal_form", "jordan_decomposition", "legendre"]


def _val(x: Fraction, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _unit_residue(x: Fraction, m: int) -> int:
    """x mod m for a rational x whose denominator is prime to m."""
    return x.numerator * pow(x.denominator, -1, m) % m


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _jordan_blocks(g: list[list[Fraction]], p: int) -> list[tuple[int, list[list[Fraction]]]]:
    """Split g over Z_p into (valuation, block) pieces, blocks of size 1 or 2."""
    a = [row[:] for row in g]
    blocks = []
    while a:
        n = len(a)
        vmin = min(_val(a[i][j], p) for i in range(n) for j in range(n) if a[i][j] != 0)
        piv = next((i for i in range(n) if a[i][i] != 0 and _val(a[i][i], p) == vmin), None)
        if piv is None:
            i, j = next(
                (i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0 and _val(a[i][j], p) == vmin
            )
            if p != 2:
                a[i] = [x + y for x, y in zip(a[i], a[j])]
                for row in a:
                    row[i] += row[j]
                piv = i
            else:
                blk = [[a[i][i], a[i][j]], [a[j][i], a[j][j]]]
                det = blk[0][0] * blk[1][1] - blk[0][1] * blk[1][0]
                inv = [[blk[1][1] / det, -blk[0][1] / det], [-blk[1][0] / det, blk[0][0] / det]]
                rest = [r for r in range(n) if r not in (i, j)]
                cross = [[a[r][i], a[r][j]] for r in rest]
                proj = [[c[0] * inv[0][0] + c[1] * inv[1][0], c[0] * inv[0][1] + c[1] * inv[1][1]] for c in cross]
                a = [
                    [a[r][s] - (proj[x][0] * cross[y][0] + proj[x][1] * cross[y][1]) for y, s in enumerate(rest)]
                    for x, r in enumerate(rest)
                ]
                blocks.append((vmin, blk))
                continue
        d = a[piv][piv]
        col = [a[r][piv] for r in range(n)]
        a = [[a[r][c] - col[r] * col[c] / d for c in range(n) if c != piv] for r in range(n) if r != piv]
        blocks.append((vmin, [[d]]))
    return blocks


def _is_even(m: list[list[Fraction]]) -> bool:
    return all(_unit_residue(m[i][i], 2) == 0 for i in range(len(m)))


def _odd_diagonal(f: list[list[Fraction]]) -> list[Fraction]:
    """Diagonal entries of an orthogonal basis of an odd unimodular Z_2-form.

    Each step splits off a vector of odd norm whose complement is again odd
    (or empty), trying basis vectors first and then sums of two.
    """
    out = []
    while f:
        n = len(f)
        if n == 1:
            out.append(f[0][0])
            break
        cands = [(i, None) for i in range(n)] + [(i, j) for i in range(n) for j in range(n) if i != j]
        for i, j in cands:
            v = [Fraction(0)] * n
            v[i] = Fraction(1)
            if j is not None:
                v[j] = Fraction(1)
            fv = [sum(f[r][c] * v[c] for c in range(n)) for r in range(n)]
            nv = sum(v[r] * fv[r] for r in range(n))
            if _unit_residue(nv, 2) == 0:
                continue
            comp = [[f[r][c] - fv[r] * fv[c] / nv for c in range(n) if c != i] for r in range(n) if r != i]
            if comp and _is_even(comp):
                continue
            out.append(nv)
            f = comp
            break
        else:
            raise RuntimeError("could not split an odd vector off a 2-adic form")
    return out


def _constituent(p: int, k: int, blocks: list[list[list[Fraction]]]) -> Constituent:
    scale = Fraction(p**k)
    units = [[[x / scale for x in row] for row in b] for b in blocks]
    rank = sum(len(b) for b in units)
    det = Fraction(1)
    for b in units:
        det *= b[0][0] if len(b) == 1 else b[0][0] * b[1][1] - b[0][1] * b[1][0]
    if p != 2:
        return Constituent(p, k, rank, legendre(_unit_residue(det, p), p))
    sign = 1 if _unit_residue(det, 8) in (1, 7) else -1
    if all(len(b) == 2 for b in units):
        return Constituent(2, k, rank, sign, False, 0)
    size = rank
    full = [[Fraction(0)] * size for _ in range(size)]
    off = 0
    for b in units:
        for r in range(len(b)):
            for c in range(len(b)):
                full[off + r][off + c] = b[r][c]
        off += len(b)
    diag = _odd_diagonal(full)
    oddity = sum(_unit_residue(x, 8) for x in diag) % 8
    return Constituent(2, k, rank, sign, True, oddity)


def _p_adic_gram(part: FiniteQuadraticForm, p: int) -> tuple[list[list[Fraction]], int]:
    ks = []
    for n in part.orders:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if n != 1:
            raise ValueError("primary part has an order that is not a power of p")
        ks.append(k)
    r = part.ngens
    g = [[Fraction(p ** (ks[i] + ks[j])) * part.gram[i][j] for j in range(r)] for i in range(r)]
    return g, sum(ks)


def jordan_decomposition(q: FiniteQuadraticForm) -> GenusSymbol:
    """Symbol read off from one Jordan splitting, before canonicalization."""
    cons: list[Constituent] = []
    for p in q.primes():
        part = q.primary_part(p)
        g, total = _p_adic_gram(part, p)
        blocks = _jordan_blocks(g, p)
        if sum(v * len(b) for v, b in blocks) != total:
            raise ValueError("generator data is not a basis of the p-part")
        by_scale: dict[int, list] = {}
        for v, b in blocks:
            by_scale.setdefault(v, []).append(b)
        for k in sorted(by_scale):
            if k == 0:
                raise ValueError("unimodular block in a discriminant form lift")
            cons.append(_constituent(p, k, by_scale[k]))
    return GenusSymbol.from_constituents(cons)


def jordan_normal_form(q: FiniteQuadraticForm) -> GenusSymbol:
    """Canonical genus symbol of a finite quadratic form."""
    return canonical_symbol(jordan_decomposition(q))
