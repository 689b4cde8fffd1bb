"""Explicit homotopy witnesses.

* ``cone_null_homotopy``: a homotopy equivalence gives a contraction of its cone.
* ``homotopy_inverse_from_cone``: a contraction of ``cone(phi)`` gives an inverse of ``phi``.
* ``build_rl_witness``: a contraction of ``A`` gives mutually inverse matrices
  ``R : ⊕ A^{2i} -> ⊕ A^{2i+1}`` and ``L`` the other way, with Catalan-number
  coefficients.

Products of homotopies are written left to right and composed right to left:
``h^2 h^3 h^4`` means ``h^2 ∘ h^3 ∘ h^4``.

Every function here verifies its output before returning it.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass

from . import matrix as mx
from .complex import (
    ChainMap,
    HomotopyEquivalence,
    NullHomotopy,
    cone,
    failed,
    homotopy_residual,
    pad_to_even_window,
    passed,
    reindex_homotopy,
    validate_chain_map,
    validate_equivalence,
    validate_null_homotopy,
)
from .errors import (
    ExtractionFailure,
    InternalVerificationFailure,
    InvalidEquivalence,
    NotNullHomotopic,
    SignResolutionFailure,
)

log = logging.getLogger(__name__)

# id = d H + H d.  The other candidate, d H - H d, fails already on the cone
# of the identity of ZZ; tests/test_witness.py keeps that check.
CONE_SIGN = "id=dH+Hd"

# (sign on h11 as H1, sign on h22 as H2), most plausible first.  Reading the
# (1,1) and (2,2) blocks of id = dh + hd gives (+1, -1).
EXTRACTION_SIGNS = ((1, -1), (1, 1), (-1, -1), (-1, 1))


def alphas(n):
    """``[alpha_0, ..., alpha_n]`` from ``alpha_0 = 1``, ``alpha_1 = -1`` and the convolution recursion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    vals = [1, -1][: n + 1]
    for k in range(2, n + 1):
        vals.append(-sum(vals[j] * vals[k - 1 - j] for j in range(k)))
    return vals


@dataclass(frozen=True)
class ConeNullHomotopy:
    """A contraction of ``cone(phi)`` together with the summand bookkeeping.

    ``homotopy[j] : A1^{j+1} ⊕ A2^j -> A1^j ⊕ A2^{j-1}`` has blocks
    ``[[h11^{j+1}, h12^j], [h21^{j+1}, h22^j]]``.
    """

    source: object  # A1
    target: object  # A2
    homotopy: NullHomotopy
    sign_convention: str = CONE_SIGN

    @property
    def cone_complex(self):
        return self.homotopy.complex

    @property
    def components(self):
        return self.homotopy.components

    def blocks(self, j):
        """``(h11^{j+1}, h12^j, h21^{j+1}, h22^j)`` read off ``homotopy[j]``."""
        a1, a2 = self.source, self.target
        (h11, h12), (h21, h22) = mx.to_blocks(
            self.homotopy[j], [a1.obj(j), a2.obj(j - 1)], [a1.obj(j + 1), a2.obj(j)])
        return h11, h12, h21, h22


def cone_null_homotopy(e):
    """Contract ``cone(e.phi)`` using the equivalence data."""
    rep = validate_equivalence(e)
    if not rep:
        raise InvalidEquivalence(f"not a homotopy equivalence: {rep}", rep)
    phi, psi = e.phi, e.psi
    a1, a2, ring = phi.source, phi.target, phi.ring
    c = cone(phi, check=False)
    comps = {}
    if c.objects:
        for j in range(c.min_degree, c.max_degree + 2):
            H1n, H2, H2n = e.h1(j + 1), e.h2(j), e.h2(j + 1)
            b11 = H1n + psi[j] @ H2n @ phi[j + 1] - psi[j] @ phi[j] @ H1n
            b12 = -psi[j]
            b21 = H2 @ H2n @ phi[j + 1] - H2 @ phi[j] @ H1n
            b22 = -H2
            comps[j] = mx.from_blocks(
                [[b11, b12], [b21, b22]],
                [a1.obj(j), a2.obj(j - 1)],
                [a1.obj(j + 1), a2.obj(j)],
                ring=ring,
            )
    h = NullHomotopy(c, comps)
    rep = validate_null_homotopy(h)
    if not rep:
        other = next((j for j in c.degrees
                      if not mx.is_zero(homotopy_residual(c, h.__getitem__, j, sign=-1))), None)
        detail = ("the dH-Hd variant also fails" if other is not None
                  else "only the dH-Hd variant holds")
        raise SignResolutionFailure(f"cone homotopy does not verify ({detail}): {rep}", rep)
    return ConeNullHomotopy(a1, a2, h, CONE_SIGN)


def cone_homotopy_from(phi, h):
    """Wrap an arbitrary null-homotopy ``h`` of ``cone(phi)``."""
    return ConeNullHomotopy(phi.source, phi.target, h, CONE_SIGN)


def _extract(c, s1, s2):
    a1, a2 = c.source, c.target
    H1, H2 = {}, {}
    lo = min(a1.min_degree, a2.min_degree) - 1
    hi = max(a1.max_degree, a2.max_degree) + 2
    for j in range(lo, hi + 1):
        h11, _, _, h22 = c.blocks(j)
        if a1.obj(j + 1) or a1.obj(j):
            H1[j + 1] = mx.scale(h11, s1)
        if a2.obj(j) or a2.obj(j - 1):
            H2[j] = mx.scale(h22, s2)
    return H1, H2


def homotopy_inverse_from_cone(c, phi):
    """Recover ``(phi, psi = -h12, H1 = h11, H2 = -h22)`` from a contraction of ``cone(phi)``."""
    if c.source != phi.source or c.target != phi.target or c.cone_complex != cone(phi):
        raise ExtractionFailure("the contraction is not on cone(phi)")
    rep = validate_null_homotopy(c.homotopy)
    if not rep:
        raise NotNullHomotopic(f"cone contraction does not verify: {rep}", rep)
    a1, a2 = phi.source, phi.target
    lo = min(a1.min_degree, a2.min_degree) - 1
    hi = max(a1.max_degree, a2.max_degree) + 1
    psi_comps = {}
    for j in range(lo, hi + 1):
        _, h12, _, _ = c.blocks(j)
        psi_comps[j] = -h12
    psi = ChainMap(a2, a1, psi_comps)
    rep = validate_chain_map(psi)
    if not rep:
        raise ExtractionFailure(f"-h12 is not a chain map: {rep}", rep)
    last = None
    for s1, s2 in EXTRACTION_SIGNS:
        H1, H2 = _extract(c, s1, s2)
        e = HomotopyEquivalence(phi, psi, H1, H2)
        last = validate_equivalence(e)
        if last:
            log.debug("extracted with H1 = %+d h11, H2 = %+d h22", s1, s2)
            return e
    raise ExtractionFailure(f"no sign variant yields an equivalence: {last}", last)


def _product(h, a, b, cache):
    """``h^a ∘ h^{a+1} ∘ ... ∘ h^b`` (``a <= b``)."""
    key = (a, b)
    if key not in cache:
        cache[key] = h[a] if a == b else _product(h, a, b - 1, cache) @ h[b]
    return cache[key]


def verify_h_relations(c, h, j, l):
    """Check ``h^j⋯h^{j+2l+1} = d^{j-2} h^{j-1}⋯h^{j+2l+1} + h^j⋯h^{j+2l+2} d^{j+2l+1}``."""
    if l < 0:
        raise ValueError("l must be nonnegative")
    cache = {}
    top = j + 2 * l + 1
    lhs = _product(h, j, top, cache)
    rhs = c.d(j - 2) @ _product(h, j - 1, top, cache) + _product(h, j, top + 1, cache) @ c.d(top)
    res = lhs - rhs
    name = f"h-relation(j={j},l={l})"
    if mx.is_zero(res):
        return passed(name)
    return failed(name, j, res)


@dataclass(frozen=True)
class WitnessPair:
    """``R : ⊕ A^{2i} -> ⊕ A^{2i+1}`` and its inverse ``L`` for the re-indexed complex."""

    R: mx.Matrix
    L: mx.Matrix
    k: int
    offset: int = 0

    def verify(self):
        if self.R.source != self.L.target or self.R.target != self.L.source:
            return failed("shape", detail="R and L are not opposite")
        rl = self.R @ self.L
        if not mx.is_identity(rl):
            return failed("RL=id", residual=rl - mx.identity(rl.ring, rl.source))
        lr = self.L @ self.R
        if not mx.is_identity(lr):
            return failed("LR=id", residual=lr - mx.identity(lr.ring, lr.source))
        return passed("RL=id; LR=id")


def build_rl_witness(c, h):
    """Mutually inverse ``R`` and ``L`` built from a contraction ``h`` of ``c``.

    ``c`` is first re-indexed onto degrees ``0..2k+1``.  In 0-indexed block
    coordinates::

        R[i][i] = d^{2i},      R[i][j] = alpha_{j-i-1} h^{2i+2}⋯h^{2j}      (j > i)
        L[i][i-1] = d^{2i-1},  L[i][j] = alpha_{j-i}   h^{2i+1}⋯h^{2j+1}    (j >= i)
    """
    if h.complex != c:
        raise NotNullHomotopic("homotopy belongs to a different complex")
    rep = validate_null_homotopy(h)
    if not rep:
        raise NotNullHomotopic(f"not a contraction: {rep}", rep)
    ring = c.ring
    padded, offset = pad_to_even_window(c)
    hp = reindex_homotopy(h, padded, offset)
    k = len(padded.objects) // 2 - 1
    alpha = alphas(k)
    A, d = padded.obj, padded.d
    even = [A(2 * i) for i in range(k + 1)]
    odd = [A(2 * i + 1) for i in range(k + 1)]
    cache = {}

    R = [[None] * (k + 1) for _ in range(k + 1)]
    L = [[None] * (k + 1) for _ in range(k + 1)]
    for i in range(k + 1):
        for j in range(k + 1):
            if j == i:
                R[i][j] = d(2 * i)
            elif j > i:
                R[i][j] = mx.scale(_product(hp, 2 * i + 2, 2 * j, cache), alpha[j - i - 1])
            else:
                R[i][j] = mx.zero(ring, even[j], odd[i])
            if j >= i:
                L[i][j] = mx.scale(_product(hp, 2 * i + 1, 2 * j + 1, cache), alpha[j - i])
            elif j == i - 1:
                L[i][j] = d(2 * i - 1)
            else:
                L[i][j] = mx.zero(ring, odd[j], even[i])
    w = WitnessPair(
        mx.from_blocks(R, odd, even, ring=ring),
        mx.from_blocks(L, even, odd, ring=ring),
        k,
        offset,
    )
    rep = w.verify()
    if not rep:
        raise InternalVerificationFailure(f"R/L witness does not verify: {rep}", rep)
    if Counter(mx.concat(*even)) != Counter(mx.concat(*odd)):
        raise InternalVerificationFailure("even and odd graded ranks differ")
    return w
