import pytest

from splitk import matrix as mx
from splitk.complex import (
    ChainMap,
    Complex,
    NullHomotopy,
    compose_equivalences,
    cone,
    direct_sum_complex,
    identity_map,
    pad_to_even_window,
    reverse_equivalence,
    shift,
    single,
    validate_chain_map,
    validate_complex,
    validate_equivalence,
    validate_null_homotopy,
    zero_complex,
    zero_map,
    _cone,
)
from splitk.errors import InvalidChainMap, ShapeMismatch
from splitk.generator import GenParams, RINGS, gen_chain_map, gen_complex, gen_equivalence
from splitk.scalar import Integers, PolyOverIntegers

ZZ = Integers()


def m(*rows):
    return mx.from_rows(ZZ, rows)


def test_validate_complex_examples():
    assert validate_complex(single(ZZ, (0,)))
    bad = Complex(ZZ, 0, [(0,), (0,), (0,)], [m([2]), m([3])])
    rep = validate_complex(bad)
    assert not rep and rep.degree == 0
    assert rep.residual == m([6])
    good = Complex(ZZ, 0, [(0,), (0, 0), (0,)], [m([1], [0]), m([0, 1])])
    assert validate_complex(good)


def test_validate_complex_rejects_bad_gradings():
    rep = validate_complex(Complex(ZZ, 0, [(1,)]))
    assert not rep and rep.identity == "gradings"


def test_wrong_number_of_differentials():
    with pytest.raises(ShapeMismatch):
        Complex(ZZ, 0, [(0,), (0,)], [])


def test_null_homotopy_examples():
    c = cone(identity_map(single(ZZ, (0,))))
    assert c == Complex(ZZ, -1, [(0,), (0,)], [m([-1])])
    assert validate_null_homotopy(NullHomotopy(c, {0: m([-1])}))
    rep = validate_null_homotopy(NullHomotopy(c, {}))
    assert not rep and rep.identity == "id=dh+hd" and rep.degree == -1


def test_identity_chain_map_is_valid():
    for ring in RINGS:
        for seed in range(10):
            c = gen_complex(GenParams(seed=seed, ring=ring))
            assert validate_chain_map(identity_map(c))


def test_chain_map_violation_names_degree():
    a = single(ZZ, (0,), 0)
    b = Complex(ZZ, 0, [(0,), (0,)], [m([1])])
    rep = validate_chain_map(ChainMap(a, b, {0: m([1])}))
    assert not rep and rep.degree == 0


def test_shift():
    c = gen_complex(GenParams(seed=3))
    assert shift(c, 0) == c
    assert shift(shift(c, 1), -1) == c
    s = shift(c, 3)
    assert s.min_degree == c.min_degree + 3
    assert all(s.d(j + 3) == -c.d(j) for j in c.degrees)
    assert validate_complex(s)


def test_direct_sum_with_zero():
    a = gen_complex(GenParams(seed=4))
    assert direct_sum_complex(a, zero_complex(ZZ)).trimmed() == a.trimmed()
    b = gen_complex(GenParams(seed=5))
    s = direct_sum_complex(a, b)
    assert all(s.obj(j) == a.obj(j) + b.obj(j) for j in s.degrees)


def test_cone_of_zero_map_is_shift():
    a = gen_complex(GenParams(seed=8))
    assert cone(zero_map(a, zero_complex(ZZ))) == shift(a, -1)


def test_cone_of_random_maps():
    for seed in range(200):
        p = GenParams(seed=seed, ring=RINGS[seed % 4])
        f = gen_chain_map(p, gen_complex(p), gen_complex(p.replace(seed=seed + 1000)))
        assert validate_complex(cone(f))


def test_cone_of_non_chain_map():
    a = single(ZZ, (0,), 0)
    b = Complex(ZZ, 0, [(0,), (0,)], [m([1])])
    f = ChainMap(a, b, {0: m([1])})
    with pytest.raises(InvalidChainMap):
        cone(f)
    assert not validate_complex(_cone(f))


def test_pad_to_even_window():
    c = Complex(ZZ, 3, [(0,), (0,)], [m([1])])
    p, offset = pad_to_even_window(c)
    assert (p.min_degree, p.max_degree, offset) == (0, 1, -3)
    c = Complex(ZZ, 0, [(0,), (0, 0), (0,)], [m([1], [0]), m([0, 1])])
    p, offset = pad_to_even_window(c)
    assert (p.min_degree, p.max_degree, offset) == (0, 3, 0)
    assert p.obj(3) == ()
    p, offset = pad_to_even_window(zero_complex(ZZ))
    assert p.objects == ((), ()) and offset == 0


def test_equivalence_reverse_and_compose():
    for ring in RINGS:
        p = GenParams(seed=11, ring=ring)
        e1 = gen_equivalence(p)
        e2 = gen_equivalence(p.replace(seed=12), base=e1.phi.target)
        assert validate_equivalence(reverse_equivalence(e1))
        assert validate_equivalence(compose_equivalences(e2, e1))


def test_graded_cone():
    ring = PolyOverIntegers(1)
    f = gen_chain_map(GenParams(seed=2, ring=ring), gen_complex(GenParams(seed=2, ring=ring)),
                      gen_complex(GenParams(seed=3, ring=ring)))
    assert validate_complex(cone(f))
