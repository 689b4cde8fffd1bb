import random
from math import comb

import pytest

from splitk import matrix as mx
from splitk.complex import (
    Complex,
    HomotopyEquivalence,
    NullHomotopy,
    compose_equivalences,
    cone,
    homotopy_residual,
    identity_map,
    pad_to_even_window,
    reindex_homotopy,
    reverse_equivalence,
    single,
    validate_equivalence,
    zero_complex,
)
from splitk.errors import ExtractionFailure, InvalidEquivalence, NotNullHomotopic
from splitk.generator import GenParams, RINGS, gen_complex, gen_contractible, gen_equivalence
from splitk.scalar import Integers
from splitk.witness import (
    EXTRACTION_SIGNS,
    _extract,
    alphas,
    build_rl_witness,
    cone_homotopy_from,
    cone_null_homotopy,
    homotopy_inverse_from_cone,
    verify_h_relations,
)

ZZ = Integers()


def m(*rows):
    return mx.from_rows(ZZ, rows)


def signed_catalan(k):
    return (-1) ** k * comb(2 * k, k) // (k + 1)


def test_alphas():
    assert alphas(0) == [1]
    assert alphas(1) == [1, -1]
    assert alphas(4) == [1, -1, 2, -5, 14]
    assert alphas(30) == [signed_catalan(k) for k in range(31)]
    with pytest.raises(ValueError):
        alphas(-1)


def identity_equivalence(c):
    i = identity_map(c)
    return HomotopyEquivalence(i, i, {}, {})


def test_cone_of_identity_on_zz():
    a = single(ZZ, (0,))
    ch = cone_null_homotopy(identity_equivalence(a))
    c = ch.cone_complex
    assert c == Complex(ZZ, -1, [(0,), (0,)], [m([-1])])
    assert ch.homotopy.components == {0: m([-1])}
    h11, h12, h21, h22 = ch.blocks(0)
    assert h12 == m([-1])
    assert mx.is_zero(h11) and mx.is_zero(h21) and mx.is_zero(h22)


def test_minus_sign_variant_fails_on_cone_of_identity():
    # the contraction satisfies id = dH + Hd but not id = dH - Hd
    ch = cone_null_homotopy(identity_equivalence(single(ZZ, (0,))))
    c, h = ch.cone_complex, ch.homotopy
    assert all(mx.is_zero(homotopy_residual(c, h.__getitem__, j)) for j in c.degrees)
    assert not all(mx.is_zero(homotopy_residual(c, h.__getitem__, j, sign=-1)) for j in c.degrees)


def test_cone_of_identity_on_any_complex():
    for ring in RINGS:
        for seed in range(10):
            c = gen_complex(GenParams(seed=seed, ring=ring))
            e = identity_equivalence(c)
            ch = cone_null_homotopy(e)
            back = homotopy_inverse_from_cone(ch, e.phi)
            assert back.psi == e.psi


def test_cone_null_homotopy_rejects_non_equivalence():
    a = single(ZZ, (0,))
    z = zero_complex(ZZ)
    bad = HomotopyEquivalence(identity_map(a).__class__(a, z, {}), identity_map(a).__class__(z, a, {}), {}, {})
    with pytest.raises(InvalidEquivalence):
        cone_null_homotopy(bad)


def _composite_cases(n):
    for seed in range(n):
        p = GenParams(seed=seed, ring=RINGS[seed % 4])
        e1 = gen_equivalence(p)
        e2 = gen_equivalence(p.replace(seed=seed + 500), base=e1.phi.target)
        yield compose_equivalences(reverse_equivalence(e1), reverse_equivalence(e2)) if seed % 2 else \
            compose_equivalences(e2, e1)


def test_only_one_extraction_sign_verifies():
    # H1 = +h11 and H2 = -h22; the other three sign choices are rejected on
    # composites, whose H1 is nonzero
    hits = {s: 0 for s in EXTRACTION_SIGNS}
    for e in _composite_cases(24):
        ch = cone_null_homotopy(e)
        psi = homotopy_inverse_from_cone(ch, e.phi).psi
        for s in EXTRACTION_SIGNS:
            H1, H2 = _extract(ch, *s)
            if validate_equivalence(HomotopyEquivalence(e.phi, psi, H1, H2)):
                hits[s] += 1
    assert hits[(1, -1)] == 24
    assert hits[(1, 1)] < 24 and hits[(-1, -1)] < 24 and hits[(-1, 1)] < 24


def test_round_trip_on_generated():
    for seed in range(40):
        e = gen_equivalence(GenParams(seed=seed, ring=RINGS[seed % 4]))
        back = homotopy_inverse_from_cone(cone_null_homotopy(e), e.phi)
        assert validate_equivalence(back)


def _flip(h, j):
    comps = dict(h.components)
    comps[j] = -comps[j]
    return NullHomotopy(h.complex, comps)


def test_flipped_block_is_located():
    e = identity_equivalence(single(ZZ, (0,)))
    ch = cone_null_homotopy(e)
    bad = cone_homotopy_from(e.phi, _flip(ch.homotopy, 0))
    with pytest.raises(NotNullHomotopic) as err:
        homotopy_inverse_from_cone(bad, e.phi)
    assert err.value.report.degree == -1


def test_h12_not_a_chain_map():
    # cone(0 -> ZZ) is ZZ in degree 0; h = 0 fails, and no h12 can fix it
    a, b = zero_complex(ZZ), single(ZZ, (0,))
    phi = identity_map(a).__class__(a, b, {})
    c = cone(phi)
    with pytest.raises(NotNullHomotopic):
        homotopy_inverse_from_cone(cone_homotopy_from(phi, NullHomotopy(c, {})), phi)


def test_wrong_cone_is_rejected():
    e = identity_equivalence(single(ZZ, (0,)))
    other = identity_equivalence(single(ZZ, (0,), 1))
    with pytest.raises(ExtractionFailure):
        homotopy_inverse_from_cone(cone_null_homotopy(e), other.phi)


def test_elementary_witness():
    c = Complex(ZZ, 0, [(0,), (0,)], [m([1])])
    w = build_rl_witness(c, NullHomotopy(c, {1: m([1])}))
    assert w.k == 0 and w.R == m([1]) and w.L == m([1])


def test_k1_witness():
    c = Complex(ZZ, 0, [(0,), (0, 0), (0,)], [m([1], [0]), m([0, 1])])
    h = NullHomotopy(c, {1: m([1, 0]), 2: m([0], [1])})
    w = build_rl_witness(c, h)
    assert w.k == 1
    assert w.R == mx.identity(ZZ, (0, 0)) and w.L == mx.identity(ZZ, (0, 0))


def test_witness_rejects_bad_homotopy():
    c = Complex(ZZ, 0, [(0,), (0,)], [m([1])])
    with pytest.raises(NotNullHomotopic):
        build_rl_witness(c, NullHomotopy(c, {1: m([2])}))
    with pytest.raises(NotNullHomotopic):
        build_rl_witness(c, NullHomotopy(Complex(ZZ, 0, [(0,), (0,)], [m([-1])]), {1: m([-1])}))


# R and L for k = 2 written out entry by entry: ("d", n) is d^n,
# (a, first, last) is alpha_a h^first ... h^last, None is zero.
PATTERN_R = [
    [("d", 0), (0, 2, 2), (1, 2, 4)],
    [None, ("d", 2), (0, 4, 4)],
    [None, None, ("d", 4)],
]
PATTERN_L = [
    [(0, 1, 1), (1, 1, 3), (2, 1, 5)],
    [("d", 1), (0, 3, 3), (1, 3, 5)],
    [None, ("d", 3), (0, 5, 5)],
]


def _evaluate(entry, c, h, src, tgt):
    if entry is None:
        return mx.zero(c.ring, src, tgt)
    if entry[0] == "d":
        return c.d(entry[1])
    a, first, last = entry
    out = h[first]
    for n in range(first + 1, last + 1):
        out = out @ h[n]
    return mx.scale(out, [1, -1, 2][a])


def test_closed_form_matches_written_out_pattern():
    found = 0
    for seed in range(200):
        for ring in RINGS:
            p = GenParams(seed=seed, ring=ring, max_blocks=5, max_shift=6, max_rank=2)
            c, h = gen_contractible(p)
            padded, offset = pad_to_even_window(c)
            if len(padded.objects) != 6:
                continue
            hp = reindex_homotopy(h, padded, offset)
            even = [padded.obj(2 * i) for i in range(3)]
            odd = [padded.obj(2 * i + 1) for i in range(3)]
            R = mx.from_blocks([[_evaluate(PATTERN_R[i][j], padded, hp, even[j], odd[i]) for j in range(3)]
                                for i in range(3)], odd, even, ring=ring)
            L = mx.from_blocks([[_evaluate(PATTERN_L[i][j], padded, hp, odd[j], even[i]) for j in range(3)]
                                for i in range(3)], even, odd, ring=ring)
            w = build_rl_witness(c, h)
            assert (w.R, w.L) == (R, L)
            found += 1
        if found >= 20:
            break
    assert found >= 20


def test_h_relations():
    for seed in range(20):
        c, h = gen_contractible(GenParams(seed=seed, ring=RINGS[seed % 4], max_blocks=5, max_shift=6))
        for j in range(c.min_degree - 1, c.max_degree + 2):
            for l in range(3):
                rep = verify_h_relations(c, h, j, l)
                assert rep, rep


def test_h_relations_detect_corruption():
    c = Complex(ZZ, 0, [(0,), (0, 0), (0,)], [m([1], [0]), m([0, 1])])
    h = NullHomotopy(c, {1: m([1, 0]), 2: m([0], [1])})
    bad = NullHomotopy(c, {1: m([1, 0]), 2: m([1], [1])})  # now h^1 h^2 != 0 while the right side stays 0
    assert verify_h_relations(c, h, 1, 0)
    rep = verify_h_relations(c, bad, 1, 0)
    assert not rep and rep.degree == 1


def test_h_relations_all_zero():
    c = zero_complex(ZZ)
    assert verify_h_relations(c, NullHomotopy(c, {}), 0, 1)


def test_witness_on_random_rings():
    rng = random.Random(7)
    for _ in range(40):
        p = GenParams(seed=rng.randrange(10**6), ring=rng.choice(RINGS), max_rank=6,
                      max_blocks=5, max_shift=10, conjugation_steps=8)
        c, h = gen_contractible(p)
        assert build_rl_witness(c, h).verify()
