import random
from fractions import Fraction

import pytest

from splitk.scalar import Integers, IntegersMod, PolyOverIntegers, Rationals

RINGS = [Integers(), Rationals(), IntegersMod(5), IntegersMod(7), PolyOverIntegers(1)]


def random_element(rng, ring, bound=20):
    if isinstance(ring, Rationals):
        return ring(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)))
    if isinstance(ring, PolyOverIntegers):
        terms = tuple((e, rng.randint(-bound, bound)) for e in range(rng.randint(0, 4)))
        return ring(ring.canonical(terms))
    return ring(rng.randint(-bound, bound))


@pytest.fixture(params=RINGS, ids=str)
def ring(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20261015)
