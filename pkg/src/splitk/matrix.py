"""Dense exact matrices between graded free objects.

A graded object is a tuple of ints, one internal grading per free generator;
``()`` is the zero object.  A ``Matrix`` has ``len(target)`` rows and
``len(source)`` columns, and entry ``(r, c)`` must be zero or homogeneous of
degree ``target[r] - source[c]``.
"""
from __future__ import annotations

from dataclasses import InitVar, dataclass

from .errors import HomogeneityError, RingMismatch, ShapeMismatch
from .scalar import Homogeneity, Scalar


def graded_object(gradings=()):
    return tuple(int(g) for g in gradings)


def concat(*objects):
    out = ()
    for obj in objects:
        out += tuple(obj)
    return out


@dataclass(frozen=True)
class Matrix:
    ring: object
    source: tuple
    target: tuple
    rows: tuple
    check: InitVar[bool] = True

    def __post_init__(self, check):
        if not check:
            return
        ring = self.ring
        source = graded_object(self.source)
        target = graded_object(self.target)
        rows = tuple(tuple(ring.coerce(x) for x in row) for row in self.rows)
        if len(rows) != len(target):
            raise ShapeMismatch(f"{len(rows)} rows for a target of rank {len(target)}")
        for r, row in enumerate(rows):
            if len(row) != len(source):
                raise ShapeMismatch(f"row {r} has {len(row)} entries, source rank is {len(source)}")
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "rows", rows)
        if not ring.graded and (any(source) or any(target)):
            raise HomogeneityError(f"objects over the ungraded ring {ring} must have zero gradings")
        bad = self.homogeneity_violation()
        if bad is not None:
            r, c = bad
            raise HomogeneityError(
                f"entry ({r}, {c}) = {ring.format(rows[r][c])} is not homogeneous of degree "
                f"{target[r] - source[c]}"
            )

    @property
    def shape(self):
        return len(self.target), len(self.source)

    def homogeneity_violation(self):
        """First ``(row, col)`` breaking the degree-zero-morphism rule, or ``None``."""
        ring = self.ring
        if not ring.graded:
            return None
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                deg = ring.degree(x)
                if deg is Homogeneity.ANY:
                    continue
                if deg is Homogeneity.NON_HOMOGENEOUS or deg != self.target[r] - self.source[c]:
                    return r, c
        return None

    def entry(self, r, c):
        return Scalar(self.ring, self.rows[r][c])

    def __matmul__(self, other):
        return compose(self, other)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, negate(other))

    def __neg__(self):
        return negate(self)

    def __rmul__(self, c):
        return scale(self, c)

    def __str__(self):
        fmt = self.ring.format
        body = "; ".join(" ".join(fmt(x) for x in row) for row in self.rows)
        return f"[{body}] : {list(self.source)} -> {list(self.target)}"


def _raw(ring, source, target, rows):
    return Matrix(ring, source, target, rows, check=False)


def zero(ring, source, target):
    z = ring.zero()
    return _raw(ring, tuple(source), tuple(target), tuple((z,) * len(source) for _ in target))


def identity(ring, obj):
    obj = tuple(obj)
    z, one = ring.zero(), ring.one()
    n = len(obj)
    return _raw(ring, obj, obj, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))


def from_rows(ring, rows, source=None, target=None):
    """Convenience constructor; gradings default to all-zero."""
    rows = [list(r) for r in rows]
    if target is None:
        target = (0,) * len(rows)
    if source is None:
        if not rows:
            raise ShapeMismatch("source must be given for a matrix with no rows")
        source = (0,) * len(rows[0])
    return Matrix(ring, tuple(source), tuple(target), tuple(tuple(r) for r in rows))


def _same_ring(f, g):
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring} vs {g.ring}")


def compose(g, f):
    """``g ∘ f`` (apply ``f`` first)."""
    _same_ring(f, g)
    if f.target != g.source:
        raise ShapeMismatch(f"cannot compose: f lands in {list(f.target)}, g starts at {list(g.source)}")
    ring = f.ring
    cols = tuple(zip(*f.rows)) if f.rows else ((),) * len(f.source)
    dot = ring.dot
    rows = tuple(tuple(dot(row, col) for col in cols) for row in g.rows)
    return _raw(ring, f.source, g.target, rows)


def compose_all(*maps):
    """``compose_all(a, b, c) = a ∘ b ∘ c``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


def add(f, g):
    _same_ring(f, g)
    if f.source != g.source or f.target != g.target:
        raise ShapeMismatch("cannot add matrices with different source/target")
    addf = f.ring.add
    rows = tuple(tuple(addf(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(f.rows, g.rows))
    return _raw(f.ring, f.source, f.target, rows)


def negate(f):
    neg = f.ring.neg
    return _raw(f.ring, f.source, f.target, tuple(tuple(neg(a) for a in row) for row in f.rows))


def scale(f, c):
    """Multiply every entry by ``c`` (an ``int`` or a degree-zero scalar)."""
    ring = f.ring
    c = ring.coerce(c)
    if ring.is_one(c):
        return f
    mul = ring.mul
    return _raw(ring, f.source, f.target, tuple(tuple(mul(c, a) for a in row) for row in f.rows))


def direct_sum(f, g):
    _same_ring(f, g)
    return from_blocks(
        [[f, zero(f.ring, g.source, f.target)], [zero(f.ring, f.source, g.target), g]],
        [f.target, g.target],
        [f.source, g.source],
    )


def from_blocks(blocks, row_objects, col_objects, ring=None):
    """Assemble a grid of blocks; block ``(r, c)`` maps ``col_objects[c]`` to ``row_objects[r]``."""
    if len(blocks) != len(row_objects):
        raise ShapeMismatch("block grid height does not match row objects")
    for r, brow in enumerate(blocks):
        if len(brow) != len(col_objects):
            raise ShapeMismatch(f"block row {r} has {len(brow)} blocks, expected {len(col_objects)}")
        for c, b in enumerate(brow):
            if ring is None:
                ring = b.ring
            elif b.ring != ring:
                raise RingMismatch(f"block ({r}, {c}) is over {b.ring}, expected {ring}")
            if b.source != tuple(col_objects[c]) or b.target != tuple(row_objects[r]):
                raise ShapeMismatch(f"block ({r}, {c}) does not map column object {c} to row object {r}")
    if ring is None:
        raise ShapeMismatch("empty block grid needs an explicit ring")
    rows = []
    for brow, ro in zip(blocks, row_objects):
        for i in range(len(ro)):
            rows.append(tuple(x for b in brow for x in b.rows[i]))
    return _raw(ring, concat(*col_objects), concat(*row_objects), tuple(rows))


def to_blocks(m, row_objects, col_objects):
    """Inverse of ``from_blocks``."""
    if concat(*row_objects) != m.target or concat(*col_objects) != m.source:
        raise ShapeMismatch("block partition does not match the matrix objects")
    grid = []
    r0 = 0
    for ro in row_objects:
        brow = []
        c0 = 0
        for co in col_objects:
            rows = tuple(row[c0:c0 + len(co)] for row in m.rows[r0:r0 + len(ro)])
            brow.append(_raw(m.ring, tuple(co), tuple(ro), rows))
            c0 += len(co)
        grid.append(brow)
        r0 += len(ro)
    return grid


def is_zero(f):
    isz = f.ring.is_zero
    return all(isz(x) for row in f.rows for x in row)


def is_identity(f):
    if f.source != f.target:
        raise ShapeMismatch("is_identity needs source == target")
    ring = f.ring
    for i, row in enumerate(f.rows):
        for j, x in enumerate(row):
            if i == j:
                if not ring.is_one(x):
                    return False
            elif not ring.is_zero(x):
                return False
    return True
