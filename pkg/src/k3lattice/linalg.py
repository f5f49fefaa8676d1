"""Exact integer matrix algebra.

Everything here works on Python integers, so there is no overflow and no
rounding.  Matrices are small (rank at most a few dozen), which keeps the
straightforward elimination algorithms fast enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "hermite_normal_form",
    "smith_normal_form",
    "saturate",
    "left_kernel",
    "determinant",
    "rational_inverse",
    "matrix_rank",
]


class IntMatrix:
    """Immutable integer matrix stored row-major as a tuple of tuples."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]] = (), ncols: int | None = None):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"expected {ncols} columns, got {width}")
        else:
            width = ncols or 0
        self._rows = data
        self._ncols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols=ncols)

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self._ncols

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.nrows and 0 <= j < self._ncols):
            raise IndexError(f"entry ({i}, {j}) outside a {self.nrows}x{self._ncols} matrix")
        return self._rows[i][j]

    def __iter__(self):
        return iter(self._rows)

    def __len__(self) -> int:
        return self.nrows

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.shape, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self._rows]})"

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(zip(*self._rows), ncols=self.nrows) if self._rows else IntMatrix.zeros(self._ncols, 0)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self._ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix(
            ([sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows),
            ncols=other.ncols,
        )

    def is_square(self) -> bool:
        return self.nrows == self._ncols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            raise ValueError("symmetric-matrix helper called on a non-square matrix")
        n = self.nrows
        return all(self._rows[i][j] == self._rows[j][i] for i in range(n) for j in range(i))

    def det(self) -> int:
        return determinant(self)

    def submatrix(self, rows: Sequence[int]) -> "IntMatrix":
        return IntMatrix((self._rows[i] for i in rows), ncols=self._ncols)


def _as_lists(m) -> list[list[int]]:
    if isinstance(m, IntMatrix):
        return m.tolist()
    return [[int(x) for x in row] for row in m]


def _ncols(m, data: list[list[int]]) -> int:
    if isinstance(m, IntMatrix):
        return m.ncols
    return len(data[0]) if data else 0


def _identity_lists(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _hnf_lists(a: list[list[int]], ncols: int, track: bool):
    m = len(a)
    h = [row[:] for row in a]
    u = _identity_lists(m) if track else None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = h[i][c]
            if b == 0:
                continue
            p = h[r][c]
            g, x, y = _xgcd(p, b)
            s, t = -b // g, p // g
            hr, hi = h[r], h[i]
            h[r] = [x * e + y * f for e, f in zip(hr, hi)]
            h[i] = [s * e + t * f for e, f in zip(hr, hi)]
            if track:
                ur, ui = u[r], u[i]
                u[r] = [x * e + y * f for e, f in zip(ur, ui)]
                u[i] = [s * e + t * f for e, f in zip(ur, ui)]
        p = h[r][c]
        if p == 0:
            continue
        if p < 0:
            h[r] = [-e for e in h[r]]
            if track:
                u[r] = [-e for e in u[r]]
            p = -p
        for i in range(r):
            q = h[i][c] // p
            if q:
                h[i] = [e - q * f for e, f in zip(h[i], h[r])]
                if track:
                    u[i] = [e - q * f for e, f in zip(u[i], u[r])]
        r += 1
    return h, u, r


def hermite_normal_form(m) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H`` and ``det(U) == ±1``.  Pivots are
    positive, entries above a pivot lie in ``[0, pivot)`` and zero rows sit at
    the bottom.
    """
    data = _as_lists(m)
    n = _ncols(m, data)
    h, u, _ = _hnf_lists(data, n, True)
    return IntMatrix(h, ncols=n), IntMatrix(u, ncols=len(data))


def matrix_rank(m) -> int:
    data = _as_lists(m)
    _, _, r = _hnf_lists(data, _ncols(m, data), False)
    return r


def smith_normal_form(m) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    The diagonal of ``D`` is nonnegative and each entry divides the next.
    """
    a = _as_lists(m)
    nr = len(a)
    nc = _ncols(m, a)
    u = _identity_lists(nr)
    v = _identity_lists(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        a[dst] = [e + q * f for e, f in zip(a[dst], a[src])]
        u[dst] = [e + q * f for e, f in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                row = a[i]
                for j in range(t, nc):
                    e = row[j]
                    if e and (best is None or abs(e) < best[0]):
                        best = (abs(e), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            clean = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, nr) if any(a[i][j] % p for j in range(t + 1, nc))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-e for e in a[t]]
            u[t] = [-e for e in u[t]]
        if all(a[i][j] == 0 for i in range(t, nr) for j in range(t, nc)):
            break
    return IntMatrix(a, ncols=nc), IntMatrix(u, ncols=nr), IntMatrix(v, ncols=nc)


def determinant(m) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    a = _as_lists(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rational_inverse(m) -> list[list[Fraction]]:
    """Inverse of a nonsingular integer (or rational) matrix over Q."""
    a = [[Fraction(x) for x in row] for row in (m.rows if isinstance(m, IntMatrix) else m)]
    n = len(a)
    inv = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        inv[c], inv[piv] = inv[piv], inv[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        inv[c] = [x / p for x in inv[c]]
        for r in range(n):
            f = a[r][c]
            if r != c and f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[c])]
    return inv


def left_kernel(m) -> IntMatrix:
    """Basis (in Hermite form) of ``{x in Z^r : x @ M == 0}``.

    The kernel of an integer matrix is automatically saturated in ``Z^r``.
    """
    data = _as_lists(m)
    nr = len(data)
    h, u, rank = _hnf_lists(data, _ncols(m, data), True)
    kernel = u[rank:]
    if not kernel:
        return IntMatrix.zeros(0, nr)
    hk, _, _ = _hnf_lists(kernel, nr, False)
    return IntMatrix(hk, ncols=nr)


def saturate(vectors, n: int | None = None) -> IntMatrix:
    """Basis of ``(span ⊗ Q) ∩ Z^n`` in Hermite form.

    ``vectors`` may be any iterable of integer rows; ``n`` is the ambient
    rank and is only needed when ``vectors`` is empty.
    """
    rows = _as_lists(vectors)
    if n is None:
        n = vectors.ncols if isinstance(vectors, IntMatrix) else (len(rows[0]) if rows else 0)
    if not rows:
        return IntMatrix.zeros(0, n)
    d, _, v = smith_normal_form(IntMatrix(rows, ncols=n))
    r = sum(1 for i in range(min(d.shape)) if d[i, i])
    if r == 0:
        return IntMatrix.zeros(0, n)
    # Rows of V^{-1} span Z^n and the row space of M is spanned by d_i
    # times the first r of them, so those r rows are the saturation.
    _, vinv = hermite_normal_form(v)
    h, _, _ = _hnf_lists([list(vinv.row(i)) for i in range(r)], n, False)
    return IntMatrix(h[:r], ncols=n)
