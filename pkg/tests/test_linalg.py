from hypothesis import given
from hypothesis import strategies as st

from k3lattice.linalg import (
    IntMatrix,
    determinant,
    hermite_normal_form,
    left_kernel,
    matrix_rank,
    saturate,
    smith_normal_form,
)

from oracles import det, invariant_factors


def matrices(max_rows=5, max_cols=5, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def is_hnf(h: IntMatrix) -> bool:
    last = -1
    seen_zero = False
    for i in range(h.nrows):
        row = h.row(i)
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(not 0 <= h[k, p] < row[p] for k in range(i)):
            return False
        last = p
    return True


def test_hnf_identity():
    h, u = hermite_normal_form(IntMatrix.identity(2))
    assert h == IntMatrix.identity(2)
    assert u == IntMatrix.identity(2)


def test_hnf_small():
    h, u = hermite_normal_form(IntMatrix([[2, 4], [1, 3]]))
    assert h == IntMatrix([[1, 1], [0, 2]])
    assert abs(determinant(h)) == 2
    assert u @ IntMatrix([[2, 4], [1, 3]]) == h


def test_hnf_zero():
    h, _ = hermite_normal_form(IntMatrix([[0, 0], [0, 0]]))
    assert h == IntMatrix.zeros(2, 2)


def test_snf_examples():
    d, _, _ = smith_normal_form(IntMatrix([[-2, 1], [1, -2]]))
    assert [d[0, 0], d[1, 1]] == [1, 3]
    d, _, _ = smith_normal_form(IntMatrix.identity(3))
    assert d == IntMatrix.identity(3)
    d, _, _ = smith_normal_form(IntMatrix([[-2]]))
    assert d == IntMatrix([[2]])


def test_saturate_examples():
    assert saturate([[2, 0]]) == IntMatrix([[1, 0]])
    assert saturate([[1, 1], [1, -1]]) == IntMatrix.identity(2)
    assert saturate([], 3).nrows == 0


@given(matrices())
def test_hnf_invariants(rows):
    m = IntMatrix(rows)
    h, u = hermite_normal_form(m)
    assert u @ m == h
    assert abs(determinant(u)) == 1
    assert is_hnf(h)
    assert matrix_rank(m) == sum(1 for r in h.rows if any(r))


@given(matrices())
def test_hnf_is_canonical(rows):
    # Row operations do not change the Hermite form.
    m = IntMatrix(rows)
    h1, _ = hermite_normal_form(m)
    mixed = [list(r) for r in rows]
    if len(mixed) > 1:
        mixed[0] = [a + 3 * b for a, b in zip(mixed[0], mixed[1])]
        mixed.reverse()
    h2, _ = hermite_normal_form(IntMatrix(mixed))
    assert h1 == h2


@given(matrices())
def test_snf_invariants(rows):
    m = IntMatrix(rows)
    d, u, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i, i] for i in range(min(d.shape))]
    assert all(d[i, j] == 0 for i in range(d.nrows) for j in range(d.ncols) if i != j)
    assert all(x >= 0 for x in diag)
    nz = [x for x in diag if x]
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert diag[: len(nz)] == nz
    assert nz == invariant_factors(rows)


@given(matrices(4, 4))
def test_determinant_matches_sympy(rows):
    n = min(len(rows), len(rows[0]))
    sq = [r[:n] for r in rows[:n]]
    assert determinant(IntMatrix(sq)) == det(sq)


@given(matrices(4, 5))
def test_saturate_properties(rows):
    m = IntMatrix(rows)
    s = saturate(m)
    assert s.nrows == matrix_rank(m)
    # Saturated: invariant factors all 1.
    assert all(x == 1 for x in invariant_factors([list(r) for r in s.rows]))
    # Contains the span: stacking does not raise the rank.
    if s.nrows:
        assert matrix_rank(IntMatrix(list(s.rows) + list(m.rows))) == s.nrows
    assert saturate(s) == s


@given(matrices(5, 4))
def test_left_kernel(rows):
    m = IntMatrix(rows)
    k = left_kernel(m)
    assert k.nrows == m.nrows - matrix_rank(m)
    for r in k.rows:
        assert all(sum(r[i] * m[i, j] for i in range(m.nrows)) == 0 for j in range(m.ncols))
    if k.nrows:
        assert saturate(k) == k
