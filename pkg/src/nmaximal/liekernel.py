"""Lie algebras given by structure constants, and the linear algebra on them.

All subspaces live in the ambient coordinate space of the algebra ``L``;
subalgebras, ideals and modules are just :class:`Subspace` objects.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

from .errors import (
    FieldMismatch,
    JacobiViolation,
    NotAnIdeal,
    NotASubalgebra,
    NotInvariant,
    RationalFieldUnsupported,
    ShapeError,
)
from .exactcore import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    char_poly_irreducible,
    full_space,
    left_kernel,
    span,
    zero_subspace,
)


class LieAlgebra:
    """Finite-dimensional Lie algebra over a :class:`FieldSpec`.

    ``table`` maps basis pairs ``(i, j)`` with ``i < j`` to the coefficient
    vector of ``[e_i, e_j]``; missing pairs bracket to zero.  The Jacobi
    identity is checked on construction.
    """

    def __init__(self, field: FieldSpec, dim: int, table: Mapping[tuple[int, int], Sequence],
                 names: Sequence[str] | None = None, label: str | None = None):
        self.field = field
        self.dim = dim
        self.label = label
        if names is not None and len(names) != dim:
            raise ShapeError(f"{len(names)} basis names for a {dim}-dimensional algebra")
        self.names = tuple(names) if names is not None else None
        clean = {}
        for (i, j), coeffs in table.items():
            if not (0 <= i < j < dim):
                raise ShapeError(f"bracket entry ({i}, {j}) outside 0 <= i < j < {dim}")
            if len(coeffs) != dim:
                raise ShapeError(f"coefficient vector of length {len(coeffs)}, expected {dim}")
            v = _coerce_vector(field, coeffs)
            if any(v):
                clean[(i, j)] = v
        self._table = dict(sorted(clean.items()))
        # (i, j, [(k, c_ijk), ...]) for the nonzero entries, used by bracket()
        self._terms = [(i, j, [(k, c) for k, c in enumerate(v) if c])
                       for (i, j), v in self._table.items()]
        self._check_jacobi()

    @property
    def table(self) -> dict:
        return dict(self._table)

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return self.field.zero_vector(self.dim)
        if i < j:
            return self._table.get((i, j), self.field.zero_vector(self.dim))
        v = self._table.get((j, i))
        if v is None:
            return self.field.zero_vector(self.dim)
        return tuple(self.field.neg(c) for c in v)

    def bracket(self, x: Vector, y: Vector) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise ShapeError(f"vectors of length {len(x)}, {len(y)} in dimension {self.dim}")
        out = [0] * self.dim
        for i, j, terms in self._terms:
            coef = x[i] * y[j] - x[j] * y[i]
            if coef:
                for k, c in terms:
                    out[k] += coef * c
        p = self.field.p
        if p:
            return tuple(a % p for a in out)
        return tuple(self.field(a) for a in out)

    def ad(self, x: Vector) -> Matrix:
        """Matrix of ``v -> [x, v]``; row ``j`` is ``[x, e_j]``."""
        rows = tuple(self.bracket(x, self.field.unit_vector(self.dim, j)) for j in range(self.dim))
        return Matrix(self.field, rows, self.dim)

    def unit(self, i: int) -> Vector:
        return self.field.unit_vector(self.dim, i)

    def full(self) -> Subspace:
        return full_space(self.field, self.dim)

    def zero(self) -> Subspace:
        return zero_subspace(self.field, self.dim)

    def span(self, vectors: Iterable[Vector]) -> Subspace:
        return span(self.field, self.dim, vectors)

    def basis_name(self, i: int) -> str:
        return self.names[i] if self.names else f"e{i}"

    def _check_jacobi(self) -> None:
        n = self.dim
        if n < 3 or not self._table:
            return
        b = self.basis_bracket
        br = self.bracket
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    s = [x + y + z for x, y, z in zip(br(b(i, j), self.unit(k)),
                                                      br(b(j, k), self.unit(i)),
                                                      br(b(k, i), self.unit(j)))]
                    if self.field.p:
                        s = [x % self.field.p for x in s]
                    if any(s):
                        raise JacobiViolation((i, j, k), tuple(s))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.field, self.dim, self._table) == (other.field, other.dim, other._table)

    def __hash__(self) -> int:
        return hash((self.field, self.dim, tuple(self._table.items())))

    def __repr__(self) -> str:
        name = f" {self.label}" if self.label else ""
        return f"<LieAlgebra{name} dim={self.dim} over {self.field}>"


def _coerce_vector(field: FieldSpec, coeffs: Sequence) -> Vector:
    p = field.p
    out = []
    for c in coeffs:
        if p and not isinstance(c, int):
            if isinstance(c, str):
                c = field.parse_scalar(c)
            else:
                raise FieldMismatch(f"coefficient {c!r} does not belong to GF({p})")
        out.append(field(c))
    return tuple(out)


def validate(field: FieldSpec, dim: int, table: Mapping[tuple[int, int], Sequence], **kw) -> LieAlgebra:
    """Build a :class:`LieAlgebra`, raising :class:`JacobiViolation` on failure."""
    return LieAlgebra(field, dim, table, **kw)


def bracket(L: LieAlgebra, x: Vector, y: Vector) -> Vector:
    return L.bracket(x, y)


class SeriesKind(enum.Enum):
    DERIVED = "derived"
    LOWER_CENTRAL = "lower_central"


# ---------------------------------------------------------------------------
# products, series, closures

def product_space(L: LieAlgebra, a: Subspace, b: Subspace) -> Subspace:
    """Span of ``[a_i, b_j]`` over basis vectors of ``a`` and ``b``."""
    if a.ambient_dim != L.dim or b.ambient_dim != L.dim:
        raise ShapeError("subspace does not live in this algebra")
    br = L.bracket
    if a == b:
        rows = a.basis
        vecs = [br(rows[i], rows[j]) for i in range(len(rows)) for j in range(i + 1, len(rows))]
    else:
        vecs = [br(x, y) for x in a.basis for y in b.basis]
    return span(L.field, L.dim, vecs)


def is_subalgebra(L: LieAlgebra, s: Subspace) -> bool:
    rows = s.basis
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if not s.contains(L.bracket(rows[i], rows[j])):
                return False
    return True


def _require_subalgebra(L: LieAlgebra, s: Subspace) -> None:
    if not is_subalgebra(L, s):
        raise NotASubalgebra(f"{s} is not closed under the bracket")


def series(L: LieAlgebra, s: Subspace | None = None, kind: SeriesKind = SeriesKind.LOWER_CENTRAL) -> list[Subspace]:
    """Derived or lower central series of the subalgebra ``s``.

    The returned list is strictly descending and ends at the stable term:
    ``[s, s_2, ..., s_k]`` with ``s_{k+1} == s_k``.
    """
    s = L.full() if s is None else s
    _require_subalgebra(L, s)
    kind = SeriesKind(kind)
    terms = [s]
    while True:
        cur = terms[-1]
        if cur.is_zero():
            return terms
        if kind is SeriesKind.DERIVED:
            nxt = product_space(L, cur, cur)
        else:
            nxt = product_space(L, s, cur)
        if nxt == cur:
            return terms
        terms.append(nxt)


def is_nilpotent(L: LieAlgebra, s: Subspace | None = None) -> bool:
    return series(L, s, SeriesKind.LOWER_CENTRAL)[-1].is_zero()


def is_solvable(L: LieAlgebra, s: Subspace | None = None) -> bool:
    return series(L, s, SeriesKind.DERIVED)[-1].is_zero()


def nilpotency_class(L: LieAlgebra, s: Subspace | None = None) -> int | None:
    """``c`` with ``s^(c+1) = 0`` minimal; ``None`` when ``s`` is not nilpotent."""
    terms = series(L, s, SeriesKind.LOWER_CENTRAL)
    if not terms[-1].is_zero():
        return None
    return len(terms) - 1


def subalgebra_closure(L: LieAlgebra, v: Subspace) -> Subspace:
    cur = v
    while True:
        nxt = span(L.field, L.dim, cur.basis + product_space(L, cur, cur).basis)
        if nxt == cur:
            return cur
        cur = nxt


def ideal_closure(L: LieAlgebra, v: Subspace, within: Subspace | None = None) -> Subspace:
    """Smallest ideal of ``within`` (default ``L``) containing ``v``."""
    k = L.full() if within is None else within
    cur = v
    todo = list(v.basis)
    while todo:
        y = todo.pop()
        for x in k.basis:
            z = L.bracket(x, y)
            if any(cur.residual(z)):
                cur = span(L.field, L.dim, cur.basis + (z,))
                todo.append(z)
    return cur


def centralizer(L: LieAlgebra, s: Subspace) -> Subspace:
    """``{x : [x, s] = 0}``, the kernel of ``x -> ([x, s_1], ..., [x, s_m])``."""
    if s.is_zero():
        return L.full()
    rows = [sum((L.bracket(L.unit(i), y) for y in s.basis), ()) for i in range(L.dim)]
    return left_kernel(L.field, rows, L.dim * s.dim)


def center(L: LieAlgebra) -> Subspace:
    return centralizer(L, L.full())


def idealizer(L: LieAlgebra, s: Subspace) -> Subspace:
    """Largest subspace ``t`` with ``[t, s] ⊆ s``."""
    if s.is_zero() or s.is_full():
        return L.full()
    rows = [sum((s.residual(L.bracket(L.unit(i), y)) for y in s.basis), ()) for i in range(L.dim)]
    return left_kernel(L.field, rows, L.dim * s.dim)


def ideal_core(L: LieAlgebra, s: Subspace, within: Subspace | None = None) -> Subspace:
    """Largest ideal of ``within`` (default ``L``) contained in ``s``.

    Iterates ``I <- {x in I : [K, x] ⊆ I}`` from ``I = s`` until stable.
    """
    k = L.full() if within is None else within
    cur = s
    while not cur.is_zero():
        rows = [sum((cur.residual(L.bracket(y, x)) for y in k.basis), ()) for x in cur.basis]
        ker = left_kernel(L.field, rows, L.dim * k.dim)
        if ker.dim == cur.dim:
            return cur
        nxt = span(L.field, L.dim, [_combine(L.field, c, cur.basis) for c in ker.basis])
        cur = nxt
    return cur


def _combine(field: FieldSpec, coeffs: Sequence, rows: Sequence[Vector]) -> Vector:
    n = len(rows[0])
    out = [0] * n
    for c, r in zip(coeffs, rows):
        if c:
            for i, x in enumerate(r):
                out[i] += c * x
    if field.p:
        return tuple(x % field.p for x in out)
    return tuple(field(x) for x in out)


def is_ideal(L: LieAlgebra, s: Subspace, within: Subspace | None = None) -> bool:
    """``[K, s] ⊆ s`` for ``K = within`` (default ``L``)."""
    k = L.full() if within is None else within
    for y in s.basis:
        for x in k.basis:
            if not s.contains(L.bracket(x, y)):
                return False
    return True


def is_subideal(L: LieAlgebra, s: Subspace) -> bool:
    """Decide whether ``s`` is a subideal of ``L``.

    Uses the descending series ``K_0 = L``, ``K_{i+1}`` = ideal closure of
    ``s`` in ``K_i``: ``s`` is a subideal iff the series reaches ``s``.  Any
    chain ``s ◁ S_1 ◁ ... ◁ L`` forces ``K_i ⊆ S_{k-i}``.
    """
    _require_subalgebra(L, s)
    k = L.full()
    while True:
        if k == s:
            return True
        nxt = ideal_closure(L, s, within=k)
        if nxt == k:
            return False
        k = nxt


def idealizer_series(L: LieAlgebra, s: Subspace) -> list[Subspace]:
    """Ascending ``s ⊆ N_L(s) ⊆ N_L(N_L(s)) ⊆ ...`` up to its stable term."""
    _require_subalgebra(L, s)
    terms = [s]
    for _ in range(L.dim + 1):
        nxt = idealizer(L, terms[-1])
        if nxt == terms[-1]:
            break
        terms.append(nxt)
    return terms


def is_subideal_by_idealizer(L: LieAlgebra, s: Subspace) -> bool:
    """Ascending-idealizer criterion: the series reaches ``L``.

    Sound (a positive answer is always a subideal chain) but incomplete
    from dimension 4 on; :func:`is_subideal` is the decision procedure.
    """
    return idealizer_series(L, s)[-1].is_full()


# ---------------------------------------------------------------------------
# quotients and actions

@dataclass(frozen=True)
class QuotientMap:
    """``L -> L/I`` on coset representatives at the non-pivot columns of ``I``."""

    parent: LieAlgebra
    ideal: Subspace
    quotient: LieAlgebra
    projection: Matrix
    section: Matrix
    columns: tuple

    def project(self, v: Vector) -> Vector:
        r = self.ideal.residual(v)
        return tuple(r[c] for c in self.columns)

    def lift(self, v: Vector) -> Vector:
        out = [self.parent.field.zero] * self.parent.dim
        for c, x in zip(self.columns, v):
            out[c] = x
        return tuple(out)

    def image(self, s: Subspace) -> Subspace:
        return self.quotient.span(self.project(v) for v in s.basis)

    def preimage(self, s: Subspace) -> Subspace:
        return self.parent.span(self.ideal.basis + tuple(self.lift(v) for v in s.basis))


def quotient(L: LieAlgebra, i: Subspace, label: str | None = None) -> QuotientMap:
    if not is_ideal(L, i):
        raise NotAnIdeal(f"{i} is not an ideal")
    F = L.field
    pivots = set(i.pivots)
    cols = tuple(c for c in range(L.dim) if c not in pivots)
    m = len(cols)

    def proj(v):
        r = i.residual(v)
        return tuple(r[c] for c in cols)

    table = {}
    for a in range(m):
        for b in range(a + 1, m):
            table[(a, b)] = proj(L.basis_bracket(cols[a], cols[b]))
    names = tuple(L.names[c] for c in cols) if L.names else None
    Q = LieAlgebra(F, m, table, names=names, label=label)
    projection = Matrix(F, tuple(proj(L.unit(k)) for k in range(L.dim)), m)
    section = Matrix(F, tuple(L.unit(c) for c in cols), L.dim)
    return QuotientMap(L, i, Q, projection, section, cols)


def _require_invariant(L: LieAlgebra, s: Subspace, m: Subspace) -> None:
    for x in s.basis:
        for y in m.basis:
            if not m.contains(L.bracket(x, y)):
                raise NotInvariant(f"{m} is not invariant under {s}")


def acts_nilpotently(L: LieAlgebra, s: Subspace, m: Subspace) -> bool:
    """True iff ``m, [s, m], [s, [s, m]], ...`` reaches 0."""
    _require_invariant(L, s, m)
    cur = m
    for _ in range(m.dim + 1):
        if cur.is_zero():
            return True
        nxt = span(L.field, L.dim, [L.bracket(x, y) for x in s.basis for y in cur.basis])
        if nxt == cur:
            return False
        cur = nxt
    return cur.is_zero()


def factor_action(L: LieAlgebra, x: Vector, top: Subspace, bottom: Subspace | None = None) -> Matrix:
    """Matrix of ``ad x`` on ``top / bottom`` (rows are images of basis vectors)."""
    F = L.field
    bottom = L.zero() if bottom is None else bottom
    for b in bottom.basis:
        if not bottom.contains(L.bracket(x, b)):
            raise NotInvariant(f"{bottom} is not invariant under ad x")
    reps = span(F, L.dim, [bottom.residual(v) for v in top.basis])
    rows = []
    for r in reps.basis:
        img = L.bracket(x, r)
        if not top.contains(img):
            raise NotInvariant(f"{top} is not invariant under ad x")
        rows.append(reps.coordinates(bottom.residual(img)))
    return Matrix(F, tuple(rows), reps.dim)


def ad_irreducible(L: LieAlgebra, x: Vector, m: Subspace, modulo: Subspace | None = None) -> bool:
    """Irreducibility of the single operator ``ad x`` on ``m`` (or ``m / modulo``)."""
    act = factor_action(L, x, m, modulo)
    if act.nrows == 0:
        return False
    return char_poly_irreducible(act)


def restrict(L: LieAlgebra, k: Subspace, label: str | None = None) -> LieAlgebra:
    """The subalgebra ``k`` as a Lie algebra in its canonical basis."""
    _require_subalgebra(L, k)
    rows = k.basis
    table = {}
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            table[(a, b)] = k.coordinates(L.bracket(rows[a], rows[b]))
    return LieAlgebra(L.field, k.dim, table, label=label)


def projective_points(field: FieldSpec, n: int) -> Iterable[Vector]:
    """Nonzero vectors whose first nonzero coordinate is 1 (finite fields)."""
    if not field.is_finite:
        raise RationalFieldUnsupported("projective points need a finite field")
    p = field.p
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def minimal_ideals(L: LieAlgebra) -> list[Subspace]:
    """Minimal nonzero ideals, sorted by canonical key."""
    if not L.field.is_finite:
        raise RationalFieldUnsupported("minimal ideals are enumerated over finite fields only")
    closures = {}
    for v in projective_points(L.field, L.dim):
        c = ideal_closure(L, L.span([v]))
        closures[c] = None
    cands = sorted(closures, key=lambda s: s.key)
    out = []
    for c in cands:
        if not any(m < c for m in out):
            out.append(c)
    return out


def is_simple(L: LieAlgebra) -> bool:
    if not L.field.is_finite:
        raise RationalFieldUnsupported("simplicity is decided over finite fields only")
    if L.dim == 0 or not L.table:
        return False
    full = L.full()
    return all(ideal_closure(L, L.span([v])) == full for v in projective_points(L.field, L.dim))
