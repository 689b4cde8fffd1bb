import pytest

from splitk import matrix as mx
from splitk.errors import HomogeneityError, RingMismatch, ShapeMismatch
from splitk.generator import random_matrix
from splitk.scalar import Integers, IntegersMod, PolyOverIntegers, Rationals

ZZ, ZX = Integers(), PolyOverIntegers(1)


def _obj(rng, ring, n):
    if getattr(ring, "graded", False):
        return tuple(rng.randint(0, 2) for _ in range(n))
    return (0,) * n


def _rand(rng, ring, src, tgt):
    return random_matrix(rng, ring, src, tgt, 4, density=1)


def test_compose_associative_and_unital(ring, rng):
    for _ in range(60):
        a, b, c, d = (_obj(rng, ring, rng.randint(0, 6)) for _ in range(4))
        f, g, h = _rand(rng, ring, a, b), _rand(rng, ring, b, c), _rand(rng, ring, c, d)
        assert mx.compose(h, mx.compose(g, f)) == mx.compose(mx.compose(h, g), f)
        assert mx.compose(mx.identity(ring, b), f) == f
        assert mx.compose(f, mx.identity(ring, a)) == f
        assert mx.is_zero(mx.compose(mx.zero(ring, b, c), f))
        assert mx.is_zero(mx.add(f, mx.negate(f)))
        # bilinearity
        f2 = _rand(rng, ring, a, b)
        assert g @ (f + f2) == g @ f + g @ f2


def test_small_examples():
    row = mx.from_rows(ZZ, [[0, 1]])
    col = mx.from_rows(ZZ, [[0], [1]])
    assert row @ col == mx.from_rows(ZZ, [[1]])
    f2 = IntegersMod(2)
    i = mx.identity(f2, (0, 0, 0))
    assert mx.is_zero(i + i)
    z = mx.zero(ZZ, (0,), (0, 0))
    assert -z == z


def test_direct_sum():
    a, b = mx.from_rows(ZZ, [[2]]), mx.from_rows(ZZ, [[3]])
    assert mx.direct_sum(a, b) == mx.from_rows(ZZ, [[2, 0], [0, 3]])
    assert mx.direct_sum(mx.identity(ZZ, (0,)), mx.identity(ZZ, (0, 0))) == mx.identity(ZZ, (0, 0, 0))
    empty = mx.zero(ZZ, (), ())
    assert mx.direct_sum(a, empty) == a
    assert mx.direct_sum(empty, a) == a


def test_blocks_round_trip(ring, rng):
    for _ in range(30):
        rows = [_obj(rng, ring, rng.randint(0, 3)) for _ in range(2)]
        cols = [_obj(rng, ring, rng.randint(0, 3)) for _ in range(2)]
        blocks = [[_rand(rng, ring, c, r) for c in cols] for r in rows]
        m = mx.from_blocks(blocks, rows, cols, ring=ring)
        assert m.source == mx.concat(*cols) and m.target == mx.concat(*rows)
        assert mx.to_blocks(m, rows, cols) == blocks
    zeros = [[mx.zero(ring, c, r) for c in cols] for r in rows]
    assert mx.is_zero(mx.from_blocks(zeros, rows, cols, ring=ring))


def test_cone_differential_layout():
    # [[-d1, 0], [-phi, d2]] with d1 = (2), phi = (5), d2 = (7)
    d1, phi, d2 = (mx.from_rows(ZZ, [[v]]) for v in (2, 5, 7))
    m = mx.from_blocks([[-d1, mx.zero(ZZ, (0,), (0,))], [-phi, d2]], [(0,), (0,)], [(0,), (0,)])
    assert m == mx.from_rows(ZZ, [[-2, 0], [-5, 7]])


def test_predicates():
    assert mx.is_identity(mx.identity(ZZ, (0, 0)))
    assert mx.is_zero(mx.zero(ZZ, (), ()))
    assert mx.is_identity(mx.zero(ZZ, (), ()))
    assert not mx.is_identity(mx.from_rows(ZZ, [[1, 0], [0, 2]]))
    with pytest.raises(ShapeMismatch):
        mx.is_identity(mx.zero(ZZ, (0,), (0, 0)))


def test_shape_errors():
    f = mx.from_rows(ZZ, [[1, 2]])
    with pytest.raises(ShapeMismatch):
        f @ f
    with pytest.raises(ShapeMismatch):
        f + mx.from_rows(ZZ, [[1]])
    with pytest.raises(RingMismatch):
        f + mx.from_rows(Rationals(), [[1, 2]])
    with pytest.raises(ShapeMismatch):
        mx.from_rows(ZZ, [[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        mx.Matrix(ZZ, (1,), (0,), ((1,),))


def test_homogeneity():
    # entry (r, c) must have degree target[r] - source[c]
    ok = mx.Matrix(ZX, (0, 1), (2,), (("x^2", "3*x"),))
    assert ok.shape == (1, 2)
    with pytest.raises(HomogeneityError):
        mx.Matrix(ZX, (0,), (2,), (("x",),))
    with pytest.raises(HomogeneityError):
        mx.Matrix(ZX, (0,), (1,), (("x+1",),))
    # zero is allowed anywhere, even at negative degree
    mx.Matrix(ZX, (3,), (0,), ((0,),))
    with pytest.raises(HomogeneityError):
        mx.Matrix(ZX, (3,), (0,), ((1,),))
