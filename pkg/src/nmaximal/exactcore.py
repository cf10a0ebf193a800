"""Exact scalars, dense matrices and canonical subspaces over GF(p) and Q.

Scalars are plain Python objects: canonical residues ``0..p-1`` (``int``)
for prime fields and ``fractions.Fraction`` for the rationals.  A
:class:`FieldSpec` carries the arithmetic.  Vectors are tuples of scalars.

Every subspace is stored by its reduced row echelon basis, so two
:class:`Subspace` objects describe the same space exactly when they compare
equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import AmbientMismatch, FieldMismatch, ShapeError, UnsupportedDegree

Scalar = Union[int, Fraction]
Vector = tuple


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p), or the rationals when ``p == 0``."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls(p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls(0)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Accept ``q``/``Q``, ``gf5``, ``GF(5)`` or a bare prime ``5``."""
        t = text.strip().lower().replace("(", "").replace(")", "")
        if t in ("q", "qq", "rationals"):
            return cls(0)
        if t.startswith("gf"):
            t = t[2:]
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"unrecognised field {text!r}") from None

    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def order(self) -> int:
        if not self.p:
            raise ValueError("the rationals are infinite")
        return self.p

    @property
    def label(self) -> str:
        return f"gf{self.p}" if self.p else "q"

    def __str__(self) -> str:
        return f"GF({self.p})" if self.p else "Q"

    @property
    def zero(self) -> Scalar:
        return 0 if self.p else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.p else Fraction(1)

    def elements(self) -> range:
        return range(self.order)

    def __call__(self, x) -> Scalar:
        """Coerce an int, Fraction or string into a canonical scalar."""
        if isinstance(x, str):
            return self.parse_scalar(x)
        p = self.p
        if p:
            if isinstance(x, Fraction):
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"{x} has no image in GF({p})")
                return x.numerator * pow(x.denominator, -1, p) % p
            return int(x) % p
        return Fraction(x)

    # arithmetic; operands are assumed canonical
    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return -a % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a) -> str:
        if self.p:
            return str(a)
        a = Fraction(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def parse_scalar(self, text: str) -> Scalar:
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self(Fraction(int(num), int(den)))
        return self(int(text))

    def vector(self, values: Iterable) -> Vector:
        return tuple(self(v) for v in values)

    def zero_vector(self, n: int) -> Vector:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        v = [self.zero] * n
        v[i] = self.one
        return tuple(v)


def _rref_rows(rows: Sequence[Sequence], field: FieldSpec, ncols: int):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    p = field.p
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        row = m[r]
        lead = row[c]
        if lead != 1:
            if p:
                f = pow(lead, -1, p)
                row = [x * f % p for x in row]
            else:
                row = [x / lead for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r:
                other = m[i]
                f = other[c]
                if f:
                    if p:
                        m[i] = [(a - f * b) % p for a, b in zip(other, row)]
                    else:
                        m[i] = [a - f * b for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


@dataclass(frozen=True)
class Matrix:
    """Dense matrix of canonical scalars, stored as a tuple of row tuples."""

    field: FieldSpec
    rows: tuple
    ncols: int

    def __post_init__(self):
        p = self.field.p
        for r in self.rows:
            if len(r) != self.ncols:
                raise ShapeError(f"row of length {len(r)} in a {self.ncols}-column matrix")
            for x in r:
                if p:
                    if type(x) is not int or not 0 <= x < p:
                        raise FieldMismatch(f"{x!r} is not a canonical element of GF({p})")
                elif not isinstance(x, (int, Fraction)):
                    raise FieldMismatch(f"{x!r} is not a rational number")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Iterable], ncols: int | None = None) -> "Matrix":
        rows = tuple(field.vector(r) for r in rows)
        if ncols is None:
            if not rows:
                raise ShapeError("cannot infer the width of an empty matrix")
            ncols = len(rows[0])
        return cls(field, rows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, tuple(field.unit_vector(n, i) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self.rows for x in r)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, tuple(zip(*self.rows)) if self.rows else (), self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise FieldMismatch("matrices over different fields")
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        F = self.field
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        out = []
        for r in self.rows:
            acc = []
            for c in cols:
                s = sum(a * b for a, b in zip(r, c))
                acc.append(s % F.p if F.p else s)
            out.append(tuple(acc))
        return Matrix(F, tuple(out), other.ncols)


@dataclass(frozen=True)
class Subspace:
    """Subspace of ``F^ambient_dim`` held by its canonical RREF basis."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple
    pivots: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> Matrix:
        return Matrix(self.field, self.basis, self.ambient_dim)

    def __len__(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def residual(self, v: Vector) -> Vector:
        """Reduce ``v`` against the basis; zero exactly when ``v`` lies in the space."""
        p = self.field.p
        out = list(v)
        for c, row in zip(self.pivots, self.basis):
            f = out[c]
            if f:
                if p:
                    out = [(a - f * b) % p for a, b in zip(out, row)]
                else:
                    out = [a - f * b for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Vector) -> bool:
        if "mask" in self.__dict__:
            return (self.mask >> vector_index(v, self.field.p)) & 1 == 1
        return not any(self.residual(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def coordinates(self, v: Vector) -> tuple:
        """Coefficients of ``v`` (assumed to lie in the space) on the basis."""
        return tuple(v[c] for c in self.pivots)

    def issubspace(self, other: "Subspace") -> bool:
        _check_compatible(self, other)
        if self.dim > other.dim:
            return False
        if "mask" in self.__dict__ and "mask" in other.__dict__:
            return self.mask & ~other.mask == 0
        return all(other.contains(r) for r in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self.issubspace(other)

    @property
    def key(self) -> tuple:
        """Sort key: dimension first, then the canonical basis."""
        return (len(self.basis), self.basis)

    def canonical_bytes(self) -> bytes:
        """``dim`` then each basis row, entries comma separated, rows ``;``-joined."""
        fmt = self.field.fmt
        body = ";".join(",".join(fmt(x) for x in row) for row in self.basis)
        return f"{self.ambient_dim}:{body}".encode()

    def hex(self) -> str:
        return self.canonical_bytes().hex()

    def vectors(self) -> Iterable[Vector]:
        """Every vector of the space (finite fields only)."""
        p = self.field.p
        n = self.ambient_dim
        for coeffs in product(range(p), repeat=len(self.basis)):
            v = [0] * n
            for a, row in zip(coeffs, self.basis):
                if a:
                    v = [(x + a * y) % p for x, y in zip(v, row)]
            yield tuple(v)

    @cached_property
    def mask(self) -> int:
        """Bitmask over vector indices of all members (finite fields only)."""
        p = self.field.p
        if not p:
            raise ValueError("member masks need a finite field")
        m = 0
        for v in self.vectors():
            m |= 1 << vector_index(v, p)
        return m

    def __str__(self) -> str:
        fmt = self.field.fmt
        rows = ", ".join("(" + " ".join(fmt(x) for x in r) + ")" for r in self.basis)
        return f"span[{rows}]"


def vector_index(v: Vector, p: int) -> int:
    idx = 0
    for x in reversed(v):
        idx = idx * p + x
    return idx


def _check_compatible(u: Subspace, w: Subspace) -> None:
    if u.field != w.field:
        raise FieldMismatch(f"subspaces over {u.field} and {w.field}")
    if u.ambient_dim != w.ambient_dim:
        raise AmbientMismatch(f"ambient dimensions {u.ambient_dim} and {w.ambient_dim}")


def rref(m: Matrix) -> Subspace:
    basis, pivots = _rref_rows(m.rows, m.field, m.ncols)
    return Subspace(m.field, m.ncols, basis, pivots)


def span(field: FieldSpec, n: int, vectors: Iterable[Vector]) -> Subspace:
    basis, pivots = _rref_rows(list(vectors), field, n)
    return Subspace(field, n, basis, pivots)


def zero_subspace(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, (), ())


@lru_cache(maxsize=None)
def full_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, tuple(field.unit_vector(n, i) for i in range(n)), tuple(range(n)))


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_compatible(u, w)
    if w.issubspace(u):
        return u
    if u.issubspace(w):
        return w
    return span(u.field, u.ambient_dim, u.basis + w.basis)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    """Zassenhaus: reduce [[u, u], [w, 0]]; rows with a zero left half span u ∩ w."""
    _check_compatible(u, w)
    if u.issubspace(w):
        return u
    if w.issubspace(u):
        return w
    n = u.ambient_dim
    z = u.field.zero_vector(n)
    rows = [r + r for r in u.basis] + [r + z for r in w.basis]
    reduced, _ = _rref_rows(rows, u.field, 2 * n)
    inter = [r[n:] for r in reduced if not any(r[:n])]
    return span(u.field, n, inter)


def left_kernel(field: FieldSpec, rows: Sequence[Vector], width: int) -> Subspace:
    """All coefficient vectors x with sum_i x_i * rows[i] == 0."""
    m = len(rows)
    aug = [tuple(r) + field.unit_vector(m, i) for i, r in enumerate(rows)]
    reduced, _ = _rref_rows(aug, field, width + m)
    ker = [r[width:] for r in reduced if not any(r[:width])]
    return span(field, m, ker)


# ---------------------------------------------------------------------------
# characteristic polynomials and irreducibility

def char_poly(m: Matrix) -> list:
    """Characteristic polynomial det(xI - m), coefficients lowest degree first.

    Hessenberg reduction by similarity followed by the usual three-term
    recurrence; uses only field operations.
    """
    if m.nrows != m.ncols:
        raise ShapeError(f"characteristic polynomial of a {m.shape} matrix")
    F = m.field
    n = m.nrows
    H = [list(r) for r in m.rows]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for r in H:
                r[piv], r[j + 1] = r[j + 1], r[piv]
        inv = F.inv(H[j + 1][j])
        for i in range(j + 2, n):
            u = F.mul(H[i][j], inv)
            if not u:
                continue
            H[i] = [F.sub(a, F.mul(u, b)) for a, b in zip(H[i], H[j + 1])]
            for r in H:
                r[j + 1] = F.add(r[j + 1], F.mul(u, r[i]))
    polys = [[F.one]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = [F.zero] + prev
        hkk = H[k - 1][k - 1]
        for d, c in enumerate(prev):
            pk[d] = F.sub(pk[d], F.mul(hkk, c))
        t = F.one
        for i in range(1, k):
            t = F.mul(t, H[k - i][k - i - 1])
            coef = F.mul(H[k - i - 1][k - 1], t)
            if coef:
                for d, c in enumerate(polys[k - i - 1]):
                    pk[d] = F.sub(pk[d], F.mul(coef, c))
        polys.append(pk)
    return polys[n]


def _trim(f: list) -> list:
    while f and not f[-1]:
        f.pop()
    return f


def _poly_mod(a: list, f: list, p: int) -> list:
    a = _trim(list(a))
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list, b: list, f: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_mod(out, f, p)


def _poly_powmod(a: list, e: int, f: list, p: int) -> list:
    result = [1]
    base = _poly_mod(a, f, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return _poly_mod(result, f, p)


def _poly_gcd(a: list, b: list, p: int) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def poly_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Ben-Or test: deg f = d is irreducible iff gcd(x^(p^k) - x, f) = 1 for k <= d/2."""
    f = _trim([c % p for c in f])
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    h = [0, 1]
    for _ in range(d // 2):
        h = _poly_powmod(h, p, f, p)
        g = list(h) + [0] * max(0, 2 - len(h))
        g[1] = (g[1] - 1) % p
        if len(_poly_gcd(f, g, p)) > 1:
            return False
    return True


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d * d != n:
                out.append(n // d)
        d += 1
    return out


def poly_irreducible_over_q(f: Sequence[Fraction]) -> bool:
    """Rational-root test; valid as an irreducibility test for degree <= 3."""
    f = _trim([Fraction(c) for c in f])
    d = len(f) - 1
    if d > 3:
        raise UnsupportedDegree(f"rational irreducibility of degree {d} is not supported")
    if d < 1:
        return False
    if d == 1:
        return True
    den = 1
    for c in f:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in f]
    if ints[0] == 0:
        return False
    for num in _divisors(ints[0]):
        for dd in _divisors(ints[-1]):
            for r in (Fraction(num, dd), Fraction(-num, dd)):
                if sum(c * r ** i for i, c in enumerate(ints)) == 0:
                    return False
    return True


def char_poly_irreducible(m: Matrix) -> bool:
    if m.nrows != m.ncols:
        raise ShapeError(f"characteristic polynomial of a {m.shape} matrix")
    if not m.field.is_finite and m.nrows > 3:
        raise UnsupportedDegree(f"rational irreducibility of degree {m.nrows} is not supported")
    f = char_poly(m)
    if m.field.is_finite:
        return poly_irreducible_mod_p(f, m.field.p)
    return poly_irreducible_over_q(f)
