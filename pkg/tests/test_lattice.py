"""Lattices, convex bodies, norms, reduction, plain covering radius."""

import random

import pytest

from fflat import (
    GF,
    ConvexBody,
    InsufficientPrecision,
    Lattice,
    LaurentSeries,
    Poly,
    QExp,
    Rat,
    SingularInput,
    covrad_lattice,
    norm_in_body,
    parse_element,
    reduce_lattice,
)
from fflat.lattice import det_lattice
from fflat.cli import random_body, random_lattice

F2 = GF(2)
F3 = GF(3)


def V(field, *entries):
    return [parse_element(field, e) for e in entries]


def test_norm_examples():
    C = ConvexBody.identity(F2, 2)
    assert norm_in_body(V(F2, "x^2", "1"), C) == QExp(2)
    assert norm_in_body(V(F2, "0", "0"), C).is_zero
    D = ConvexBody(F2, [["x", "0"], ["0", "1"]])
    assert norm_in_body(V(F2, "x", "1"), D) == QExp(0)
    # sup norm of fractional vectors
    assert norm_in_body(V(F2, "1/x", "1/x^3"), C) == QExp(-1)


def test_body_log_volume():
    assert ConvexBody.identity(F3, 3).log_volume == QExp(0)
    assert ConvexBody.ball(F2, 2, -1).log_volume == QExp(-2)
    assert ConvexBody.ball(F2, 3, 2).log_volume == QExp(6)
    B = ConvexBody(F2, [["1/x", "0"], ["0", "x^2"]])
    assert B.log_volume == QExp(1)


def test_body_rejects_singular():
    with pytest.raises(SingularInput):
        ConvexBody(F2, [["x", "x"], ["x", "x"]])
    with pytest.raises(SingularInput):
        Lattice(F2, [["1", "1"], ["1", "1"]])


def test_lattice_requires_dim_2():
    with pytest.raises(ValueError):
        Lattice(F2, [["x"]])


def test_reduce_examples():
    C = ConvexBody.identity(F2, 2)
    assert reduce_lattice(Lattice.standard(F2, 2), C).exps == [0, 0]
    diag = Lattice(F2, [["x", "0"], ["0", "1/x"]])
    assert reduce_lattice(diag, C).exps == [-1, 1]
    skew = Lattice(F2, [["x", "x+1"], ["1", "1"]])
    assert reduce_lattice(skew, C).exps == [0, 0]


def test_det_lattice_examples():
    assert det_lattice(Lattice.standard(F2, 3)) == QExp(0)
    assert det_lattice(Lattice(F2, [["x", "0"], ["0", "1/x"]])) == QExp(0)
    assert det_lattice(Lattice(F2, [["x", "x+1"], ["1", "1"]])) == QExp(0)
    assert det_lattice(Lattice(F3, [["x^2", "0"], ["0", "x"]])) == QExp(3)


def test_covrad_lattice_examples():
    C = ConvexBody.identity(F2, 2)
    assert covrad_lattice(Lattice.standard(F2, 2), C) == QExp(-1)
    diag = Lattice(F2, [["x", "0"], ["0", "1/x"]])
    assert covrad_lattice(diag, C) == QExp(0)
    # homogeneity: scaling the lattice by x shifts by one
    diag_x = Lattice(F2, [["x^2", "0"], ["0", "1"]])
    assert covrad_lattice(diag_x, C) == QExp(1)


@pytest.mark.parametrize("field", [F2, F3], ids=["q2", "q3"])
@pytest.mark.parametrize("d", [2, 3])
def test_minkowski_equality_random(field, d):
    rng = random.Random(field.q * 10 + d)
    for _ in range(30):
        lat = random_lattice(rng, field, d)
        C = random_body(rng, field, d)
        rb = reduce_lattice(lat, C)
        assert sum(rb.exps) == lat.log_det - C.log_volume.exp
        assert rb.exps == sorted(rb.exps)


def test_exps_invariant_under_unimodular_change():
    C = ConvexBody.identity(F2, 2)
    lat = Lattice(F2, [["x^2", "1"], ["x", "x"]])
    # right-multiply by [[1, 1], [0, 1]]: same module
    lat2 = Lattice(F2, [["x^2", "x^2+1"], ["x", "0"]])
    assert reduce_lattice(lat, C).exps == reduce_lattice(lat2, C).exps


def test_orthogonality_of_reduced_basis():
    rng = random.Random(3)
    for field in (F2, F3):
        for d in (2, 3):
            lat = random_lattice(rng, field, d)
            C = random_body(rng, field, d)
            rb = reduce_lattice(lat, C)
            for _ in range(40):
                cs = [
                    Poly(field, tuple(rng.randrange(field.q) for _ in range(rng.randint(0, 3))))
                    for _ in range(d)
                ]
                want = QExp(None)
                for c, e in zip(cs, rb.exps):
                    if not c.is_zero:
                        want = max(want, QExp(c.degree + e))
                got = rb.norm_from_coords(cs)
                assert got == want
                # the same value through the ambient route
                assert norm_in_body(rb.ambient_from_coords(cs), C) == want


def test_norm_with_truncated_series():
    C = ConvexBody.identity(F2, 2)
    v = [
        LaurentSeries.from_pairs(F2, {-2: 1}, -6, exact=False),
        LaurentSeries.from_pairs(F2, {-3: 1}, -6, exact=False),
    ]
    assert norm_in_body(v, C) == QExp(-2)
    # an all-unknown leading window cannot be normed
    u = [
        LaurentSeries.from_pairs(F2, {}, -2, exact=False),
        LaurentSeries.from_pairs(F2, {}, -2, exact=False),
    ]
    with pytest.raises(InsufficientPrecision):
        norm_in_body(u, C)


def test_norm_mixed_rat_and_series():
    C = ConvexBody(F2, [["x", "0"], ["0", "1"]])
    v = [
        Rat(Poly.one(F2), Poly.x(F2)),
        LaurentSeries.from_pairs(F2, {-1: 1}, -4, exact=False),
    ]
    # h^-1 v = (x^-2, x^-1 + ...): sup exponent -1
    assert norm_in_body(v, C) == QExp(-1)
