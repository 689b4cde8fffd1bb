"""Split Grothendieck classes as Laurent polynomials in ``q``.

For free graded modules an isomorphism class is the multiset of generator
gradings, so a class is an integer combination of ``q^g``.  Ungraded rings
only ever produce multiples of ``q^0``.
"""
from __future__ import annotations

from collections import Counter

from .complex import cone, direct_sum_complex, failed, passed, shift, validate_equivalence
from .errors import InvalidEquivalence
from .witness import build_rl_witness, cone_null_homotopy


class KClass:
    __slots__ = ("_coeffs",)

    def __init__(self, coefficients=None):
        coeffs = {int(g): int(c) for g, c in dict(coefficients or {}).items() if c}
        self._coeffs = dict(sorted(coeffs.items()))

    @property
    def coefficients(self):
        return dict(self._coeffs)

    def __getitem__(self, g):
        return self._coeffs.get(g, 0)

    def __eq__(self, other):
        if isinstance(other, KClass):
            return self._coeffs == other._coeffs
        if isinstance(other, int) and not isinstance(other, bool):
            return self == KClass({0: other})
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._coeffs.items()))

    def __bool__(self):
        return bool(self._coeffs)

    def __add__(self, other):
        out = Counter(self._coeffs)
        out.update(other._coeffs)
        return KClass(out)

    def __neg__(self):
        return KClass({g: -c for g, c in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return KClass({g: n * c for g, c in self._coeffs.items()})

    __rmul__ = __mul__

    def evaluate(self, q=1):
        """Substitute a number for ``q`` (``q=1`` gives the ungraded rank)."""
        return sum(c * q ** g for g, c in self._coeffs.items())

    def __str__(self):
        if not self._coeffs:
            return "0"
        terms = []
        for g, c in sorted(self._coeffs.items(), reverse=True):
            mag = abs(c)
            if g == 0:
                body = str(mag)
            else:
                mono = "q" if g == 1 else f"q^{g}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"KClass({self})"


def kclass_of_object(obj):
    return KClass(Counter(obj))


def euler_characteristic(c):
    total = Counter()
    for j in c.degrees:
        sign = -1 if j % 2 else 1
        for g in c.obj(j):
            total[g] += sign
    return KClass(total)


def check_shift_relation(c, m):
    """``chi(A[m]) = (-1)^m chi(A)``."""
    lhs = euler_characteristic(shift(c, m))
    rhs = euler_characteristic(c) * (-1 if m % 2 else 1)
    name = f"chi(A[{m}])=(-1)^{m} chi(A)"
    return passed(name) if lhs == rhs else failed(name, detail=f"{lhs} != {rhs}")


def check_sum_relation(a, b):
    """``chi(A ⊕ B) = chi(A) + chi(B)``."""
    lhs = euler_characteristic(direct_sum_complex(a, b))
    rhs = euler_characteristic(a) + euler_characteristic(b)
    name = "chi(A+B)=chi(A)+chi(B)"
    return passed(name) if lhs == rhs else failed(name, detail=f"{lhs} != {rhs}")


def check_cone_relation(f):
    """``chi(cone(f)) = chi(target) - chi(source)``."""
    lhs = euler_characteristic(cone(f))
    rhs = euler_characteristic(f.target) - euler_characteristic(f.source)
    name = "chi(cone)=chi(target)-chi(source)"
    return passed(name) if lhs == rhs else failed(name, detail=f"{lhs} != {rhs}")


def check_equivalence_invariance(e):
    """Contract ``cone(phi)``, turn the contraction into an R/L pair, and compare Euler characteristics."""
    rep = validate_equivalence(e)
    if not rep:
        raise InvalidEquivalence(f"not a homotopy equivalence: {rep}", rep)
    ch = cone_null_homotopy(e)
    w = build_rl_witness(ch.cone_complex, ch.homotopy)
    chi_cone = euler_characteristic(ch.cone_complex)
    chi_a = euler_characteristic(e.phi.source)
    chi_b = euler_characteristic(e.phi.target)
    name = "chi(source)=chi(target)"
    if chi_cone:
        return failed(name, detail=f"contractible cone has chi = {chi_cone} (k={w.k})")
    if chi_a != chi_b:
        return failed(name, detail=f"{chi_a} != {chi_b}")
    return passed(name)


def object_rank_even_odd(c):
    """``(sum of even-degree classes, sum of odd-degree classes)``."""
    even, odd = Counter(), Counter()
    for j in c.degrees:
        (odd if j % 2 else even).update(c.obj(j))
    return KClass(even), KClass(odd)

