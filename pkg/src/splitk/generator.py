"""Seeded construction of complexes with known witnesses.

Randomness comes from ``random.Random`` (MT19937) seeded with the string
``"splitk:<purpose>:<seed>"``.  String seeds are hashed with SHA-512 by the
standard library, so the streams are identical on every platform, and each
purpose gets an independent stream for the same seed.

Every generated object is validated before it is returned.
"""
from __future__ import annotations

import dataclasses
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import matrix as mx
from .complex import (
    ChainMap,
    Complex,
    HomotopyEquivalence,
    NullHomotopy,
    conjugate_complex,
    direct_sum_complex,
    inclusion,
    projection,
    validate_chain_map,
    validate_complex,
    validate_equivalence,
    validate_null_homotopy,
    zero_complex,
)
from .errors import InternalVerificationFailure, RingMismatch
from .scalar import Integers, IntegersMod, PolyOverIntegers, Rationals

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    ring: object = Integers()
    max_blocks: int = 3
    max_rank: int = 3  # bound on the rank of every object of a generated contractible complex
    max_shift: int = 4
    max_grading: int = 2
    entry_bound: int = 3
    conjugation_steps: int = 4

    def __post_init__(self):
        # clamp rather than fail
        object.__setattr__(self, "seed", int(self.seed) & _U64)
        object.__setattr__(self, "max_blocks", max(1, int(self.max_blocks)))
        object.__setattr__(self, "max_rank", max(1, int(self.max_rank)))
        object.__setattr__(self, "max_shift", max(0, int(self.max_shift)))
        object.__setattr__(self, "max_grading", max(0, int(self.max_grading)))
        object.__setattr__(self, "entry_bound", max(1, int(self.entry_bound)))
        object.__setattr__(self, "conjugation_steps", max(0, int(self.conjugation_steps)))

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def _rng(p, purpose):
    return random.Random(f"splitk:{purpose}:{p.seed}")


def _nonzero_int(rng, bound):
    n = rng.randint(1, bound)
    return n if rng.randrange(2) else -n


def random_scalar(rng, ring, degree, bound, nonzero=False):
    """A random raw element homogeneous of ``degree``; zero when that degree is impossible."""
    if isinstance(ring, PolyOverIntegers):
        if degree % ring.x_degree or degree // ring.x_degree < 0:
            return ring.zero()
        c = _nonzero_int(rng, bound) if nonzero else rng.randint(-bound, bound)
        return ring.monomial(c, degree // ring.x_degree)
    if degree != 0:
        return ring.zero()
    if isinstance(ring, IntegersMod):
        top = min(bound, ring.p - 1)
        return rng.randint(1, top) if nonzero else rng.randint(0, top)
    if isinstance(ring, Rationals):
        num = _nonzero_int(rng, bound) if nonzero else rng.randint(-bound, bound)
        return Fraction(num, rng.randint(1, bound))
    return _nonzero_int(rng, bound) if nonzero else rng.randint(-bound, bound)


def feasible_degree(ring, degree):
    if isinstance(ring, PolyOverIntegers):
        return degree % ring.x_degree == 0 and degree // ring.x_degree >= 0
    return degree == 0


def random_object(rng, p, rank):
    if not p.ring.graded:
        return (0,) * rank
    return tuple(rng.randint(-p.max_grading, p.max_grading) for _ in range(rank))


def random_matrix(rng, ring, source, target, bound, density=2):
    """Random homogeneous matrix; each entry is nonzero-eligible with probability ``1/density``."""
    rows = []
    for tr in target:
        row = []
        for sc in source:
            if rng.randrange(density) == 0:
                row.append(random_scalar(rng, ring, tr - sc, bound))
            else:
                row.append(ring.zero())
        rows.append(tuple(row))
    return mx.Matrix(ring, tuple(source), tuple(target), tuple(rows))


def _elementary(ring, obj, r, s, c):
    """``I + c e_{rs}`` on ``obj``."""
    rows = [list(row) for row in mx.identity(ring, obj).rows]
    rows[r][s] = c
    return mx.Matrix(ring, obj, obj, tuple(tuple(row) for row in rows), check=False)


def _swap(ring, obj, r, s):
    """Permutation exchanging generators ``r`` and ``s``: ``obj -> swapped obj``."""
    new = list(obj)
    new[r], new[s] = new[s], new[r]
    new = tuple(new)
    rows = [list(row) for row in mx.identity(ring, obj).rows]
    rows[r], rows[s] = rows[s], rows[r]
    return mx.Matrix(ring, obj, new, tuple(tuple(row) for row in rows), check=False)


def random_automorphism(rng, ring, obj, steps, bound):
    """``(u, u_inv)`` with ``u : obj -> obj'`` a product of ``steps`` transvections and swaps."""
    obj = tuple(obj)
    u = u_inv = mx.identity(ring, obj)
    cur = obj
    n = len(obj)
    if n < 2:
        return u, u_inv
    for _ in range(steps):
        r, s = rng.sample(range(n), 2)
        deg = cur[r] - cur[s]
        if rng.randrange(3) == 0 or not feasible_degree(ring, deg):
            e = _swap(ring, cur, r, s)
            e_inv = _swap(ring, e.target, r, s)
        else:
            c = random_scalar(rng, ring, deg, bound, nonzero=True)
            e = _elementary(ring, cur, r, s, c)
            e_inv = _elementary(ring, cur, r, s, ring.neg(c))
        u = e @ u
        u_inv = u_inv @ e_inv
        cur = e.target
    return u, u_inv


def _random_autos(rng, p, c):
    return {j: random_automorphism(rng, p.ring, c.obj(j), p.conjugation_steps, p.entry_bound)
            for j in c.degrees}


def transport_homotopy(h, conj, autos):
    """``h'^j = u^{j-1} h^j (u^j)^{-1}`` on the conjugated complex."""
    c = h.complex

    def u(j):
        return autos[j][0] if j in autos else c.identity(j)

    def u_inv(j):
        return autos[j][1] if j in autos else c.identity(j)

    return NullHomotopy(conj, {j: u(j - 1) @ m @ u_inv(j) for j, m in h.components.items()})


def _assemble(ring, pieces):
    """Direct sum of short pieces ``(start_degree, [objects], [differentials])``."""
    if not pieces:
        return zero_complex(ring)
    total = None
    for start, objs, diffs in pieces:
        c = Complex(ring, start, objs, diffs)
        total = c if total is None else direct_sum_complex(total, c)
    return total


def _place_blocks(rng, p, length):
    """Choose ``(start, rank)`` for up to ``max_blocks`` pieces of ``length`` degrees, keeping every degree at rank <= max_rank."""
    load = Counter()
    out = []
    for _ in range(rng.randint(1, p.max_blocks)):
        start = rng.randint(0, p.max_shift) - p.max_shift // 2
        rank = rng.randint(1, p.max_rank)
        rank = min([rank] + [p.max_rank - load[start + i] for i in range(length)])
        if rank <= 0:
            continue
        for i in range(length):
            load[start + i] += rank
        out.append((start, rank))
    return out


def gen_contractible(p):
    """A conjugated direct sum of shifted ``0 -> X --id--> X -> 0`` blocks, with its contraction."""
    ring = p.ring
    rng = _rng(p, "contractible")
    pieces, homs = [], []
    for start, rank in _place_blocks(rng, p, 2):
        x = random_object(rng, p, rank)
        pieces.append((start, [x, x], [mx.identity(ring, x)]))
        homs.append(start + 1)
    base = _assemble(ring, pieces)
    # the obvious contraction: identity from the upper copy of each block back to the lower one
    h = {}
    for j in base.degrees:
        rows = [[ring.zero()] * len(base.obj(j)) for _ in base.obj(j - 1)]
        h[j] = rows
    offsets = _block_offsets(pieces)
    for b, (start, objs, _) in enumerate(pieces):
        lo_off = offsets[(b, start)]
        hi_off = offsets[(b, start + 1)]
        for i in range(len(objs[0])):
            h[start + 1][lo_off + i][hi_off + i] = ring.one()
    hmaps = {j: mx.Matrix(ring, base.obj(j), base.obj(j - 1), tuple(map(tuple, rows)), check=False)
             for j, rows in h.items()}
    contraction = NullHomotopy(base, hmaps)
    autos = _random_autos(rng, p, base)
    conj = conjugate_complex(base, autos)
    out = transport_homotopy(contraction, conj, autos)
    rep = validate_null_homotopy(out)
    if not rep:
        raise InternalVerificationFailure(f"generated contraction does not verify: {rep}", rep)
    return conj, out


def _block_offsets(pieces):
    """Row offset of piece ``b`` inside degree ``j`` of the direct sum, keyed ``(b, j)``."""
    fill = Counter()
    out = {}
    for b, (start, objs, _) in enumerate(pieces):
        for i, x in enumerate(objs):
            out[(b, start + i)] = fill[start + i]
            fill[start + i] += len(x)
    return out


def gen_complex(p):
    """A random (usually not contractible) complex: singletons and two-term pieces ``X --m--> Y``, conjugated."""
    ring = p.ring
    rng = _rng(p, "complex")
    pieces = []
    for start, rank in _place_blocks(rng, p, 2):
        x = random_object(rng, p, rank)
        if rng.randrange(3) == 0:
            pieces.append((start, [x], []))
            continue
        y = random_object(rng, p, rng.randint(1, rank))
        m = random_matrix(rng, ring, x, y, p.entry_bound)
        pieces.append((start, [x, y], [m]))
    base = _assemble(ring, pieces)
    out = conjugate_complex(base, _random_autos(rng, p, base))
    rep = validate_complex(out)
    if not rep:
        raise InternalVerificationFailure(f"generated complex does not verify: {rep}", rep)
    return out


def gen_equivalence(p, base=None, contractible=None):
    """``base ≃ B`` where ``B`` is ``base ⊕ C`` conjugated by a degreewise automorphism.

    ``C`` (with contraction ``h_C``) comes from ``gen_contractible`` unless
    given.  ``phi = u ∘ incl``, ``psi = proj ∘ u^{-1}``, ``H1 = 0`` and
    ``H2 = u (0 ⊕ -h_C) u^{-1}``.
    """
    ring = p.ring
    if base is None:
        base = gen_complex(p)
    if base.ring != ring:
        raise RingMismatch(f"base complex is over {base.ring}, params over {ring}")
    if contractible is None:
        contractible = gen_contractible(p)
    c, hc = contractible
    b = direct_sum_complex(base, c)
    rng = _rng(p, "equivalence")
    autos = _random_autos(rng, p, b)
    b2 = conjugate_complex(b, autos)
    incl = inclusion(base, c)
    proj = projection(base, c)
    phi, psi, H2 = {}, {}, {}
    for j in b.degrees:
        u, u_inv = autos[j]
        phi[j] = u @ incl[j]
        psi[j] = proj[j] @ u_inv
    for j in range(b.min_degree, b.max_degree + 2):
        u_prev = autos[j - 1][0] if j - 1 in autos else b.identity(j - 1)
        u_inv = autos[j][1] if j in autos else b.identity(j)
        inner = mx.direct_sum(mx.zero(ring, base.obj(j), base.obj(j - 1)), -hc[j])
        H2[j] = u_prev @ inner @ u_inv
    e = HomotopyEquivalence(ChainMap(base, b2, phi), ChainMap(b2, base, psi), {}, H2)
    rep = validate_equivalence(e)
    if not rep:
        raise InternalVerificationFailure(f"generated equivalence does not verify: {rep}", rep)
    return e


def gen_chain_map(p, a, b):
    """``f = d_b g + g d_a`` for a random homogeneous ``g^j : a^j -> b^{j-1}``."""
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    ring = a.ring
    rng = _rng(p, "chain_map")
    spans = [(c.min_degree, c.max_degree) for c in (a, b) if c.objects]
    comps = {}
    if spans:
        lo, hi = min(s[0] for s in spans), max(s[1] for s in spans)
        g = {j: random_matrix(rng, ring, a.obj(j), b.obj(j - 1), p.entry_bound)
             for j in range(lo - 1, hi + 2)}
        for j in range(lo, hi + 1):
            comps[j] = b.d(j - 1) @ g[j] + g[j + 1] @ a.d(j)
    f = ChainMap(a, b, comps)
    rep = validate_chain_map(f)
    if not rep:
        raise InternalVerificationFailure(f"generated chain map does not verify: {rep}", rep)
    return f


RINGS = (Integers(), Rationals(), IntegersMod(5), PolyOverIntegers(1))
