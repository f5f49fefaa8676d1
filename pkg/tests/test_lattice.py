import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3lattice import (
    IntMatrix,
    Lattice,
    LatticeError,
    Sublattice,
    direct_sum,
    discriminant_group,
    orthogonal_complement,
    primitive_closure,
    signature,
)
from k3lattice.linalg import saturate
from k3lattice.roots import ade_lattice

from oracles import cartan, det, discriminant_values

ADE = [("A", n) for n in range(1, 11)] + [("D", n) for n in range(4, 11)] + [("E", 6), ("E", 7), ("E", 8)]

A1 = Lattice(IntMatrix([[-2]]), "A1")
A2 = Lattice(IntMatrix([[-2, 1], [1, -2]]), "A2")


def test_direct_sum_examples():
    s = direct_sum(A1, A1)
    assert s.gram == IntMatrix([[-2, 0], [0, -2]])
    assert s.det == 4
    s = direct_sum(ade_lattice("E", 8), A2)
    assert s.rank == 10 and abs(s.det) == 3


def test_signature_examples():
    assert signature(A1) == (0, 1)
    assert signature(ade_lattice("E", 8)) == (0, 8)
    assert signature(IntMatrix([[0, 1], [1, 0]])) == (1, 1)


def test_degenerate_rejected():
    with pytest.raises(LatticeError, match="degenerate lattice"):
        Lattice(IntMatrix([[0, 0], [0, -2]]))
    with pytest.raises(LatticeError, match="degenerate lattice"):
        signature(IntMatrix([[0, 0], [0, 0]]))


def test_odd_rejected():
    with pytest.raises(LatticeError, match="not even"):
        Lattice(IntMatrix([[1]]))


def test_discriminant_examples():
    d = discriminant_group(A1)
    assert d.orders == (2,) and d.q == (Fraction(3, 2),)  # -1/2 mod 2
    assert discriminant_group(ade_lattice("E", 8)).orders == ()
    d = discriminant_group(A2)
    assert d.orders == (3,)
    assert d.q[0] in (Fraction(4, 3),)  # -2/3 mod 2 on either generator


@pytest.mark.parametrize("family,n", ADE)
def test_discriminant_order_is_det(family, n):
    lat = ade_lattice(family, n)
    d = discriminant_group(lat)
    assert d.order == abs(det(lat.gram.tolist())) == abs(det(cartan(family, n)))


@pytest.mark.parametrize("family,n", [("A", 3), ("A", 5), ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7)])
def test_discriminant_values_match_dual_scan(family, n):
    lat = ade_lattice(family, n)
    d = discriminant_group(lat)
    vals = []
    for coeffs in itertools.product(*(range(k) for k in d.orders)):
        q = sum(c * c * d.q[i] for i, c in enumerate(coeffs))
        q += 2 * sum(coeffs[i] * coeffs[j] * d.b[i][j] for i in range(len(coeffs)) for j in range(i + 1, len(coeffs)))
        vals.append(q % 2)
    assert sorted(vals) == discriminant_values(lat.gram.tolist())


def test_primitive_closure_examples():
    amb = direct_sum(A1, A1)
    s = Sublattice(amb, IntMatrix([[2, 0]]))
    assert primitive_closure(s).basis == IntMatrix([[1, 0]])
    t = Sublattice(amb, IntMatrix([[1, 0]]))
    assert primitive_closure(t) == t
    # In A2, 3 times a dual-direction vector: the index equals the content.
    u = Sublattice(A2, IntMatrix([[3, 6]]))
    assert primitive_closure(u).basis == IntMatrix([[1, 2]])


def test_orthogonal_complement_examples():
    amb = direct_sum(A1, A1)
    t = orthogonal_complement(amb, Sublattice(amb, IntMatrix([[1, 0]])))
    assert t.basis == IntMatrix([[0, 1]])
    t = orthogonal_complement(A2, Sublattice(A2, IntMatrix([[1, 0]])))
    assert t.gram == IntMatrix([[-6]])
    t = orthogonal_complement(A2, Sublattice(A2, IntMatrix.identity(2)))
    assert t.rank == 0


def test_serialization_round_trip():
    lat = direct_sum(ade_lattice("D", 4), A2, name="D4+A2")
    again = Lattice.loads(lat.dumps())
    assert again.gram == lat.gram and again.name == lat.name
    assert Lattice.from_dict(lat.to_dict()) == lat


vectors = st.lists(st.lists(st.integers(-3, 3), min_size=6, max_size=6), min_size=1, max_size=4)


@given(vectors)
def test_complement_is_primitive(rows):
    amb = direct_sum(ade_lattice("D", 4), A2)
    s = saturate(rows, 6)
    if s.nrows == 0:
        return
    t = orthogonal_complement(amb, Sublattice(amb, s))
    assert primitive_closure(t).basis == t.basis
    assert s.nrows + t.rank == 6
