"""Bounded cochain complexes and the maps between them.

Conventions used throughout the package:

* ``d^j : A^j -> A^{j+1}``; degrees outside the stored window hold the zero object.
* ``shift(A, m)^j = A^{j-m}`` with differential ``(-1)^m d``.
* ``cone(f)^j = A1^{j+1} ⊕ A2^j`` with differential ``[[-d1^{j+1}, 0], [-f^{j+1}, d2^j]]``;
  the shifted source is always the first summand.
* Degreewise families (chain map components, homotopies) are dicts keyed by
  degree.  Only nonzero matrices are kept, so two families compare equal
  exactly when they agree in every degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import matrix as mx
from .errors import InvalidChainMap, RingMismatch, ShapeMismatch
from .matrix import Matrix


@dataclass(frozen=True)
class Report:
    """Outcome of a check.  Truthy iff the check passed."""

    ok: bool
    identity: str = ""
    degree: int | None = None
    residual: Matrix | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"ok: {self.identity}" if self.identity else "ok"
        where = f" at degree {self.degree}" if self.degree is not None else ""
        msg = f"FAILED {self.identity}{where}"
        if self.detail:
            msg += f": {self.detail}"
        if self.residual is not None:
            msg += f"\n  residual {self.residual}"
        return msg


def passed(identity=""):
    return Report(True, identity)


def failed(identity, degree=None, residual=None, detail=""):
    return Report(False, identity, degree, residual, detail)


@dataclass(frozen=True)
class Complex:
    ring: object
    min_degree: int
    objects: tuple = ()
    differentials: tuple = ()

    def __post_init__(self):
        objects = tuple(mx.graded_object(o) for o in self.objects)
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "differentials", tuple(self.differentials))
        if len(self.differentials) != max(len(objects) - 1, 0):
            raise ShapeMismatch(
                f"{len(objects)} objects need {max(len(objects) - 1, 0)} differentials, "
                f"got {len(self.differentials)}"
            )

    @property
    def max_degree(self):
        return self.min_degree + len(self.objects) - 1

    @property
    def degrees(self):
        return range(self.min_degree, self.min_degree + len(self.objects))

    def obj(self, j):
        i = j - self.min_degree
        return self.objects[i] if 0 <= i < len(self.objects) else ()

    def d(self, j):
        i = j - self.min_degree
        if 0 <= i < len(self.differentials):
            return self.differentials[i]
        return mx.zero(self.ring, self.obj(j), self.obj(j + 1))

    def identity(self, j):
        return mx.identity(self.ring, self.obj(j))

    def support(self):
        """Degrees holding a nonzero object."""
        return [j for j in self.degrees if self.obj(j)]

    def is_zero(self):
        return not self.support()

    def trimmed(self):
        """Drop zero objects at both ends; the zero complex becomes ``Complex(ring, 0)``."""
        sup = self.support()
        if not sup:
            return Complex(self.ring, 0)
        lo, hi = sup[0], sup[-1]
        return Complex(self.ring, lo, [self.obj(j) for j in range(lo, hi + 1)],
                       [self.d(j) for j in range(lo, hi)])


def zero_complex(ring):
    return Complex(ring, 0)


def single(ring, obj, degree=0):
    """The complex with ``obj`` in one degree."""
    return Complex(ring, degree, [obj])


def _window(*complexes):
    """Smallest degree range covering every nonempty stored window, as ``(lo, hi)``; ``None`` if all empty."""
    spans = [(c.min_degree, c.max_degree) for c in complexes if c.objects]
    if not spans:
        return None
    return min(s[0] for s in spans), max(s[1] for s in spans)


def _normalize_maps(maps, ring, source_obj, target_obj, name):
    """Check shapes of a degreewise family and drop zero components."""
    out = {}
    for j, m in dict(maps).items():
        j = int(j)
        if m.ring != ring:
            raise RingMismatch(f"{name}^{j} is over {m.ring}, expected {ring}")
        if m.source != source_obj(j) or m.target != target_obj(j):
            raise ShapeMismatch(
                f"{name}^{j} maps {list(m.source)} -> {list(m.target)}, "
                f"expected {list(source_obj(j))} -> {list(target_obj(j))}"
            )
        if not mx.is_zero(m):
            out[j] = m
    return dict(sorted(out.items()))


def _component(maps, j, ring, source, target):
    m = maps.get(j)
    return m if m is not None else mx.zero(ring, source, target)


@dataclass(frozen=True)
class ChainMap:
    source: Complex
    target: Complex
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch(f"{self.source.ring} vs {self.target.ring}")
        object.__setattr__(self, "components", _normalize_maps(
            self.components, self.ring, self.source.obj, self.target.obj, "f"))

    @property
    def ring(self):
        return self.source.ring

    def __getitem__(self, j):
        return _component(self.components, j, self.ring, self.source.obj(j), self.target.obj(j))

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.components.items())))


@dataclass(frozen=True)
class NullHomotopy:
    """Maps ``h^j : A^j -> A^{j-1}`` claimed to satisfy ``id = d h + h d``."""

    complex: Complex
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        c = self.complex
        object.__setattr__(self, "components", _normalize_maps(
            self.components, c.ring, c.obj, lambda j: c.obj(j - 1), "h"))

    @property
    def ring(self):
        return self.complex.ring

    def __getitem__(self, j):
        c = self.complex
        return _component(self.components, j, c.ring, c.obj(j), c.obj(j - 1))

    def __hash__(self):
        return hash((self.complex, tuple(self.components.items())))


def homotopy_maps(c, maps, name="H"):
    """Normalize a family ``H^j : c^j -> c^{j-1}`` (not necessarily a null-homotopy)."""
    return _normalize_maps(maps, c.ring, c.obj, lambda j: c.obj(j - 1), name)


@dataclass(frozen=True)
class HomotopyEquivalence:
    """``psi∘phi - id = d H1 + H1 d`` on the source, ``phi∘psi - id = d H2 + H2 d`` on the target."""

    phi: ChainMap
    psi: ChainMap
    H1: dict = field(default_factory=dict)
    H2: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.psi.source != self.phi.target or self.psi.target != self.phi.source:
            raise ShapeMismatch("psi must run from phi's target back to phi's source")
        object.__setattr__(self, "H1", homotopy_maps(self.phi.source, self.H1, "H1"))
        object.__setattr__(self, "H2", homotopy_maps(self.phi.target, self.H2, "H2"))

    @property
    def ring(self):
        return self.phi.ring

    def h1(self, j):
        a = self.phi.source
        return _component(self.H1, j, a.ring, a.obj(j), a.obj(j - 1))

    def h2(self, j):
        b = self.phi.target
        return _component(self.H2, j, b.ring, b.obj(j), b.obj(j - 1))

    def __hash__(self):
        return hash((self.phi, self.psi, tuple(self.H1.items()), tuple(self.H2.items())))


# -- validation ---------------------------------------------------------------

def validate_complex(c):
    for j in c.degrees:
        obj = c.obj(j)
        if not c.ring.graded and any(obj):
            return failed("gradings", j, detail=f"ungraded ring {c.ring} needs zero gradings")
    for i, d in enumerate(c.differentials):
        j = c.min_degree + i
        if d.ring != c.ring:
            return failed("ring", j, detail=f"d^{j} is over {d.ring}")
        if d.source != c.obj(j) or d.target != c.obj(j + 1):
            return failed("shape", j, detail=f"d^{j} does not map A^{j} -> A^{j + 1}")
        bad = d.homogeneity_violation()
        if bad is not None:
            return failed("homogeneity", j, detail=f"d^{j} entry {bad} has the wrong degree")
    for j in range(c.min_degree, c.max_degree - 1):
        dd = c.d(j + 1) @ c.d(j)
        if not mx.is_zero(dd):
            return failed("d∘d=0", j, dd, f"d^{j + 1} d^{j} != 0")
    return passed("d∘d=0")


def validate_chain_map(f):
    for side, c in (("source", f.source), ("target", f.target)):
        rep = validate_complex(c)
        if not rep:
            return failed(f"{side} complex: {rep.identity}", rep.degree, rep.residual, rep.detail)
    win = _window(f.source, f.target)
    if win is None:
        return passed("d f = f d")
    lo, hi = win
    s, t = f.source, f.target
    for j in range(lo - 1, hi + 1):
        res = t.d(j) @ f[j] - f[j + 1] @ s.d(j)
        if not mx.is_zero(res):
            return failed("d f = f d", j, res, f"d^{j} f^{j} != f^{j + 1} d^{j}")
    return passed("d f = f d")


def homotopy_residual(c, h, j, sign=1):
    """``d^{j-1} h^j + sign * h^{j+1} d^j - id_j``; ``h`` is any callable degree -> map."""
    first = c.d(j - 1) @ h(j)
    second = h(j + 1) @ c.d(j)
    if sign < 0:
        second = -second
    return first + second - c.identity(j)


def validate_null_homotopy(h):
    c = h.complex
    rep = validate_complex(c)
    if not rep:
        return rep
    for j in c.degrees:
        res = homotopy_residual(c, h.__getitem__, j)
        if not mx.is_zero(res):
            return failed("id=dh+hd", j, res, f"d^{j - 1} h^{j} + h^{j + 1} d^{j} != id")
    return passed("id=dh+hd")


def validate_equivalence(e):
    for name, f in (("phi", e.phi), ("psi", e.psi)):
        rep = validate_chain_map(f)
        if not rep:
            return failed(f"{name}: {rep.identity}", rep.degree, rep.residual, rep.detail)
    a, b = e.phi.source, e.phi.target
    for label, c, h, there, back in (
        ("psi*phi-id=dH1+H1d", a, e.h1, e.phi, e.psi),
        ("phi*psi-id=dH2+H2d", b, e.h2, e.psi, e.phi),
    ):
        for j in c.degrees:
            lhs = back[j] @ there[j] - c.identity(j)
            rhs = c.d(j - 1) @ h(j) + h(j + 1) @ c.d(j)
            res = lhs - rhs
            if not mx.is_zero(res):
                return failed(label, j, res)
    return passed("psi*phi-id=dH1+H1d; phi*psi-id=dH2+H2d")


# -- constructions ------------------------------------------------------------

def shift(c, m):
    sign = -1 if m % 2 else 1
    diffs = c.differentials if sign > 0 else tuple(-d for d in c.differentials)
    return Complex(c.ring, c.min_degree + m, c.objects, diffs)


def direct_sum_complex(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    win = _window(a, b)
    if win is None:
        return Complex(a.ring, 0)
    lo, hi = win
    objects = [mx.concat(a.obj(j), b.obj(j)) for j in range(lo, hi + 1)]
    diffs = [mx.direct_sum(a.d(j), b.d(j)) for j in range(lo, hi)]
    return Complex(a.ring, lo, objects, diffs)


def inclusion(a, b, first=True):
    """Chain map ``a -> a ⊕ b`` (or ``b -> a ⊕ b`` with ``first=False``)."""
    s = direct_sum_complex(a, b)
    ring = a.ring
    comps = {}
    for j in s.degrees:
        ia = mx.identity(ring, a.obj(j)) if first else mx.zero(ring, b.obj(j), a.obj(j))
        ib = mx.zero(ring, a.obj(j), b.obj(j)) if first else mx.identity(ring, b.obj(j))
        src = a.obj(j) if first else b.obj(j)
        comps[j] = mx.from_blocks([[ia], [ib]], [a.obj(j), b.obj(j)], [src], ring=ring)
    return ChainMap(a if first else b, s, comps)


def projection(a, b, first=True):
    """Chain map ``a ⊕ b -> a`` (or ``-> b``)."""
    s = direct_sum_complex(a, b)
    ring = a.ring
    comps = {}
    for j in s.degrees:
        if first:
            blocks = [[mx.identity(ring, a.obj(j)), mx.zero(ring, b.obj(j), a.obj(j))]]
            tgt = a.obj(j)
        else:
            blocks = [[mx.zero(ring, a.obj(j), b.obj(j)), mx.identity(ring, b.obj(j))]]
            tgt = b.obj(j)
        comps[j] = mx.from_blocks(blocks, [tgt], [a.obj(j), b.obj(j)], ring=ring)
    return ChainMap(s, a if first else b, comps)


def identity_map(c):
    return ChainMap(c, c, {j: c.identity(j) for j in c.degrees})


def zero_map(a, b):
    return ChainMap(a, b, {})


def compose_maps(g, f):
    """``g ∘ f`` as chain maps."""
    if f.target != g.source:
        raise ShapeMismatch("chain maps do not compose")
    win = _window(f.source, g.target)
    comps = {} if win is None else {j: g[j] @ f[j] for j in range(win[0], win[1] + 1)}
    return ChainMap(f.source, g.target, comps)


def cone(f, check=True):
    """Mapping cone of a chain map ``f : A1 -> A2``."""
    if check:
        rep = validate_chain_map(f)
        if not rep:
            raise InvalidChainMap(f"cone of a non-chain map: {rep}", rep)
    return _cone(f)


def _cone(f):
    a1, a2, ring = f.source, f.target, f.ring
    spans = []
    if a1.objects:
        spans.append((a1.min_degree - 1, a1.max_degree - 1))
    if a2.objects:
        spans.append((a2.min_degree, a2.max_degree))
    if not spans:
        return Complex(ring, 0)
    lo, hi = min(s[0] for s in spans), max(s[1] for s in spans)
    objects = [mx.concat(a1.obj(j + 1), a2.obj(j)) for j in range(lo, hi + 1)]
    diffs = []
    for j in range(lo, hi):
        blocks = [
            [-a1.d(j + 1), mx.zero(ring, a2.obj(j), a1.obj(j + 2))],
            [-f[j + 1], a2.d(j)],
        ]
        diffs.append(mx.from_blocks(blocks, [a1.obj(j + 2), a2.obj(j + 1)],
                                    [a1.obj(j + 1), a2.obj(j)], ring=ring))
    return Complex(ring, lo, objects, diffs)


def cone_summands(f, j):
    """``(A1^{j+1}, A2^j)``: the two summands of ``cone(f)^j``."""
    return f.source.obj(j + 1), f.target.obj(j)


def pad_to_even_window(c):
    """Re-index so the support starts at degree 0 and has even length.

    Returns ``(padded, offset)`` with ``padded^{j} = c^{j - offset}``; the
    differentials are carried over unchanged (no shift sign).
    """
    sup = c.support()
    if not sup:
        return Complex(c.ring, 0, [(), ()], [mx.zero(c.ring, (), ())]), 0
    lo, hi = sup[0], sup[-1]
    objects = [c.obj(j) for j in range(lo, hi + 1)]
    diffs = [c.d(j) for j in range(lo, hi)]
    if len(objects) % 2:
        diffs.append(mx.zero(c.ring, objects[-1], ()))
        objects.append(())
    return Complex(c.ring, 0, objects, diffs), -lo


def reindex_homotopy(h, padded, offset):
    """Carry a null-homotopy along ``pad_to_even_window``."""
    return NullHomotopy(padded, {j + offset: m for j, m in h.components.items()})


def conjugate_complex(c, autos):
    """Transport ``c`` along degreewise isomorphisms.

    ``autos[j] = (u, u_inv)`` with ``u : c^j -> B^j``; the result has
    differential ``u^{j+1} d^j (u^j)^{-1}``.  Missing degrees use the identity.
    """
    def u(j):
        return autos[j][0] if j in autos else c.identity(j)

    def u_inv(j):
        return autos[j][1] if j in autos else c.identity(j)

    objects = [u(j).target for j in c.degrees]
    diffs = [u(j + 1) @ c.d(j) @ u_inv(j) for j in range(c.min_degree, c.max_degree)]
    return Complex(c.ring, c.min_degree, objects, diffs)


def reverse_equivalence(e):
    """``(phi, psi, H1, H2) -> (psi, phi, H2, H1)``."""
    return HomotopyEquivalence(e.psi, e.phi, e.H2, e.H1)


def compose_equivalences(e2, e1):
    """Equivalence ``A -> C`` from ``e1 : A -> B`` and ``e2 : B -> C``.

    ``psi1 psi2 phi2 phi1 - id = d H + H d`` with ``H = psi1 K1 phi1 + H1``
    where ``K1`` is the source homotopy of ``e2``; symmetrically for ``C``.
    """
    if e1.phi.target != e2.phi.source:
        raise ShapeMismatch("equivalences do not compose")
    a, c = e1.phi.source, e2.phi.target
    phi = compose_maps(e2.phi, e1.phi)
    psi = compose_maps(e1.psi, e2.psi)
    H1, H2 = {}, {}
    lo_hi = _window(a, c)
    if lo_hi is not None:
        for j in range(lo_hi[0], lo_hi[1] + 2):
            if c.obj(j) or c.obj(j - 1):
                H2[j] = e2.phi[j - 1] @ e1.h2(j) @ e2.psi[j] + e2.h2(j)
            if a.obj(j) or a.obj(j - 1):
                H1[j] = e1.psi[j - 1] @ e2.h1(j) @ e1.phi[j] + e1.h1(j)
    return HomotopyEquivalence(phi, psi, H1, H2)
