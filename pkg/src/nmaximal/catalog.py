"""Witness algebras, the structure-constant file format, and table sweeps.

File format (UTF-8, line oriented)::

    # comment
    field gf 5          # or: field q
    dim 3
    name heisenberg     # optional
    b 0 1 2:1           # [e0, e1] = 1*e2 ; 0-based, i < j

Coefficients are canonical residues over GF(p) and reduced fractions
``n/d`` (or integers) over Q.  Omitted pairs bracket to zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import comb
from typing import Callable, Iterator

import numpy as np

from .errors import (
    BadFraction,
    FieldMismatch,
    InvalidParam,
    JacobiViolation,
    RationalFieldUnsupported,
    SweepTooLarge,
    TableSyntaxError,
)
from .exactcore import FieldSpec, Subspace, poly_irreducible_mod_p
from .liekernel import LieAlgebra

EXHAUSTIVE_LIMIT = 2 ** 26


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    algebra: LieAlgebra
    claimed_simple: bool | None = None
    claimed_nilradical: Subspace | None = None
    intended_case: str | None = None

    @property
    def label(self) -> str:
        return self.algebra.label or self.name


# ---------------------------------------------------------------------------
# builders

def _table(field: FieldSpec, n: int, entries: dict) -> dict:
    """``{(i, j): {k: c}}`` with arbitrary index order -> canonical i<j table."""
    out = {}
    for (i, j), terms in entries.items():
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        vec = [0] * n
        for k, c in terms.items():
            vec[k] = c
        prev = out.get((i, j), [0] * n)
        out[(i, j)] = [field(a + sign * field(b)) for a, b in zip(prev, vec)]
    return out


def abelian(field: FieldSpec, n: int = 3) -> LieAlgebra:
    return LieAlgebra(field, n, {}, names=[f"a{i}" for i in range(n)])


def affine2(field: FieldSpec) -> LieAlgebra:
    """``[x, y] = y``."""
    return LieAlgebra(field, 2, _table(field, 2, {(0, 1): {1: 1}}), names=["x", "y"])


def heisenberg(field: FieldSpec, k: int = 1) -> LieAlgebra:
    n = 2 * k + 1
    if k < 1:
        raise InvalidParam("heisenberg needs k >= 1")
    entries = {(i, k + i): {n - 1: 1} for i in range(k)}
    names = ["x", "y", "z"] if k == 1 else [f"x{i}" for i in range(k)] + [f"y{i}" for i in range(k)] + ["z"]
    return LieAlgebra(field, n, _table(field, n, entries), names=names)


def sl2(field: FieldSpec) -> LieAlgebra:
    """Basis e, f, h with ``[e,f]=h``, ``[h,e]=2e``, ``[h,f]=-2f``."""
    if field.p == 2:
        raise InvalidParam("sl2 is not built in characteristic 2")
    e, f, h = 0, 1, 2
    entries = {(e, f): {h: 1}, (h, e): {e: 2}, (h, f): {f: -2}}
    return LieAlgebra(field, 3, _table(field, 3, entries), names=["e", "f", "h"])


_POLY_TERM = re.compile(r"([+-]?)\s*(\d*(?:/\d+)?)\s*\*?\s*(x(?:\^(\d+))?)?")


def parse_poly(text: str, field: FieldSpec) -> list:
    """``'x^2+x+1'`` -> coefficients lowest degree first."""
    s = text.replace(" ", "")
    if not s:
        raise InvalidParam("empty polynomial")
    coeffs: dict[int, object] = {}
    pos = 0
    while pos < len(s):
        m = _POLY_TERM.match(s, pos)
        if not m or m.end() == pos:
            raise InvalidParam(f"cannot parse polynomial {text!r}")
        sign, num, xpart, exp = m.groups()
        if not num and not xpart:
            raise InvalidParam(f"cannot parse polynomial {text!r}")
        c = field.parse_scalar(num) if num else field.one
        if sign == "-":
            c = field.neg(c)
        d = (int(exp) if exp else 1) if xpart else 0
        coeffs[d] = field.add(coeffs.get(d, field.zero), c)
        pos = m.end()
    deg = max(coeffs)
    return [coeffs.get(i, field.zero) for i in range(deg + 1)]


def _as_poly(poly, field: FieldSpec) -> list:
    if isinstance(poly, str):
        return parse_poly(poly, field)
    return [field(c) for c in poly]


def companion_mnn(field: FieldSpec, poly, m: int | None = None) -> LieAlgebra:
    """Abelian ``N = F^m`` plus ``b`` acting by the companion matrix of ``poly``.

    ``[b, a_i] = a_{i+1}`` for ``i < m-1`` and ``[b, a_{m-1}] = -sum c_k a_k``.
    """
    f = _as_poly(poly, field)
    deg = len(f) - 1
    if deg < 1 or f[-1] != field.one:
        raise InvalidParam("companion_mnn needs a monic polynomial of degree >= 1")
    if m is not None and m != deg:
        raise InvalidParam(f"m={m} does not match the degree {deg}")
    n = deg + 1
    b = deg
    entries = {}
    for i in range(deg - 1):
        entries[(b, i)] = {i + 1: 1}
    entries[(b, deg - 1)] = {k: field.neg(f[k]) for k in range(deg)}
    names = [f"a{i}" for i in range(deg)] + ["b"]
    return LieAlgebra(field, n, _table(field, n, entries), names=names)


def cor26c(field: FieldSpec, p: int | None = None, alpha=0) -> LieAlgebra:
    """``[a_i, b1] = a_{i+1 mod p}``, ``[a_i, b2] = (alpha + i) a_i``, ``[b1, b2] = b1``.

    Indices of ``a`` are read cyclically; with ``a_p = 0`` the line
    through ``a_{p-1}`` would be an invariant subspace.
    """
    if not field.is_finite:
        raise InvalidParam("cor26c lives in positive characteristic")
    if p is None:
        p = field.p
    if p != field.p:
        raise InvalidParam(f"cor26c needs p equal to the characteristic ({p} != {field.p})")
    alpha = field(alpha)
    n = p + 2
    b1, b2 = p, p + 1
    entries = {}
    for i in range(p):
        entries[(i, b1)] = {(i + 1) % p: 1}
        entries[(i, b2)] = {i: field.add(alpha, field(i))}
    entries[(b1, b2)] = {b1: 1}
    names = [f"a{i}" for i in range(p)] + ["b1", "b2"]
    return LieAlgebra(field, n, _table(field, n, entries), names=names)


def cor26d(field: FieldSpec, alpha=2) -> LieAlgebra:
    """``[b, a1] = a1``, ``[b, a2] = alpha a2``, ``[a1, a2] = 0``."""
    entries = {(2, 0): {0: 1}, (2, 1): {1: field(alpha)}}
    return LieAlgebra(field, 3, _table(field, 3, entries), names=["a1", "a2", "b"])


def two_minimal(field: FieldSpec, l1=1, l2=2) -> LieAlgebra:
    """``[b, a1] = l1 a1``, ``[b, a2] = l2 a2``."""
    entries = {(2, 0): {0: field(l1)}, (2, 1): {1: field(l2)}}
    return LieAlgebra(field, 3, _table(field, 3, entries), names=["a1", "a2", "b"])


def jordan2(field: FieldSpec, lam=1) -> LieAlgebra:
    """``[b, a] = lam a + z``, ``[b, z] = lam z``: a non-split extension with phi = span(z)."""
    lam = field(lam)
    entries = {(2, 0): {0: lam, 1: 1}, (2, 1): {1: lam}}
    return LieAlgebra(field, 3, _table(field, 3, entries), names=["a", "z", "b"])


def heisenberg_ext(field: FieldSpec, poly="x^2-2") -> LieAlgebra:
    """Heisenberg ``x, y, z`` plus ``b`` acting on ``span(x, y)`` by a companion matrix.

    ``[b, z]`` is the trace of that action times ``z`` (Jacobi forces it).
    """
    f = _as_poly(poly, field)
    if len(f) != 3 or f[-1] != field.one:
        raise InvalidParam("heisenberg_ext needs a monic quadratic")
    c0, c1 = f[0], f[1]
    # [b, x] = y, [b, y] = -c0 x - c1 y, trace = -c1
    entries = {(0, 1): {2: 1}, (3, 0): {1: 1}, (3, 1): {0: field.neg(c0), 1: field.neg(c1)},
               (3, 2): {2: field.neg(c1)}}
    return LieAlgebra(field, 4, _table(field, 4, entries), names=["x", "y", "z", "b"])


def direct_sum(first: LieAlgebra, second: LieAlgebra) -> LieAlgebra:
    if first.field != second.field:
        raise FieldMismatch("direct sum of algebras over different fields")
    n1, n = first.dim, first.dim + second.dim
    F = first.field
    table = {}
    for (i, j), v in first.table.items():
        table[(i, j)] = tuple(v) + F.zero_vector(second.dim)
    for (i, j), v in second.table.items():
        table[(n1 + i, n1 + j)] = F.zero_vector(n1) + tuple(v)
    names = None
    if first.names and second.names:
        names = list(first.names) + [f"{s}'" for s in second.names]
    return LieAlgebra(F, n, table, names=names)


BUILDERS: dict[str, Callable] = {
    "abelian": abelian,
    "affine2": affine2,
    "heisenberg": heisenberg,
    "sl2": sl2,
    "companion_mnn": companion_mnn,
    "cor26c": cor26c,
    "cor26d": cor26d,
    "two_minimal": two_minimal,
    "jordan2": jordan2,
    "heisenberg_ext": heisenberg_ext,
    "direct_sum": direct_sum,
}


# ---------------------------------------------------------------------------
# entry specs: name(arg, key=value, ...), nested for direct_sum

def _split_args(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if cur and "".join(cur).strip():
        parts.append("".join(cur).strip())
    return parts


def _parse_value(text: str, field: FieldSpec):
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    if re.fullmatch(r"-?\d+/\d+", text):
        return Fraction(text)
    return text


def build(spec: str, field: FieldSpec) -> LieAlgebra:
    """Build ``spec`` such as ``cor26c(p=3,alpha=1)`` or
    ``direct_sum(heisenberg,abelian(n=1))`` over ``field``; the label is
    ``spec@field``."""
    spec = spec.replace(" ", "")
    m = re.fullmatch(r"([a-z_0-9]+)(?:\((.*)\))?", spec)
    if not m:
        raise InvalidParam(f"malformed catalog entry {spec!r}")
    name, argtext = m.group(1), m.group(2) or ""
    if name not in BUILDERS:
        raise InvalidParam(f"unknown catalog entry {name!r}")
    args, kwargs = [], {}
    for part in _split_args(argtext):
        if name == "direct_sum":
            args.append(build(part, field))
        elif "=" in part:
            k, v = part.split("=", 1)
            kwargs[k] = _parse_value(v, field)
        else:
            args.append(_parse_value(part, field))
    try:
        L = BUILDERS[name](*args, **kwargs) if name == "direct_sum" else BUILDERS[name](field, *args, **kwargs)
    except TypeError as exc:
        raise InvalidParam(f"bad parameters for {name}: {exc}") from None
    L.label = f"{spec}@{field.label}"
    return L


def entry(spec: str, field: FieldSpec, **meta) -> CatalogEntry:
    return CatalogEntry(spec, build(spec, field), **meta)


def standard_catalog() -> list[CatalogEntry]:
    """The witness algebras run by ``verify --scope catalog``."""
    F = FieldSpec.gf
    out = []
    for p in (2, 5):
        for n in (1, 2, 3, 4):
            out.append(entry(f"abelian(n={n})", F(p), intended_case="T1_1(i)"))
    for p in (2, 3, 5, 7):
        out.append(entry("affine2", F(p), intended_case="T1_1(ii)"))
        out.append(entry("heisenberg", F(p), intended_case="T2_3(i)"))
    for p in (5, 7):
        out.append(entry("sl2", F(p), claimed_simple=True, intended_case="T3_3(i)"))
    out.append(entry("companion_mnn(poly=x^2+x+1)", F(2), intended_case="T2_3(ii)"))
    out.append(entry("companion_mnn(poly=x^2-2)", F(5), intended_case="T2_3(ii)"))
    out.append(entry("companion_mnn(poly=x^3+x+1)", F(2), intended_case="T2_3(ii)"))
    out.append(entry("cor26c(p=2,alpha=1)", F(2), intended_case="T2_5(iv)"))
    out.append(entry("cor26c(p=3,alpha=1)", F(3), intended_case="T2_5(iv)"))
    for alpha in (0, 2):
        out.append(entry(f"cor26d(alpha={alpha})", F(5), intended_case="T2_5(v)"))
    out.append(entry("two_minimal(1,2)", F(5), intended_case="T2_5(v)"))
    out.append(entry("two_minimal(1,3)", F(7), intended_case="T2_5(v)"))
    out.append(entry("jordan2(lam=1)", F(5), intended_case="T2_5(iii)"))
    out.append(entry("heisenberg_ext(poly=x^2-2)", F(5), intended_case="T3_5(ii)"))
    out.append(entry("direct_sum(heisenberg,abelian(n=1))", F(7), intended_case="T2_3(i)"))
    out.append(entry("direct_sum(affine2,abelian(n=1))", F(5), intended_case="T2_5(v)"))
    return out


# ---------------------------------------------------------------------------
# file format

def emit(L: LieAlgebra) -> str:
    F = L.field
    lines = [f"field gf {F.p}" if F.p else "field q", f"dim {L.dim}"]
    if L.label:
        lines.append(f"name {L.label}")
    for (i, j), v in sorted(L.table.items()):
        terms = " ".join(f"{k}:{F.fmt(c)}" for k, c in enumerate(v) if c)
        lines.append(f"b {i} {j} {terms}")
    return "\n".join(lines) + "\n"


def emit_bytes(L: LieAlgebra) -> bytes:
    return emit(L).encode("utf-8")


def _parse_coeff(tok: str, field: FieldSpec | None, line: int):
    if field is None:
        raise TableSyntaxError(line, "bracket line before the field header")
    if "/" in tok:
        if field.is_finite:
            raise FieldMismatch(f"line {line}: fraction {tok!r} in a GF({field.p}) document")
        num, den = tok.split("/", 1)
        try:
            num_i, den_i = int(num), int(den)
        except ValueError:
            raise TableSyntaxError(line, f"bad coefficient {tok!r}") from None
        if den_i <= 0 or Fraction(num_i, den_i) != Fraction(num_i, 1) / den_i or \
                Fraction(num_i, den_i).denominator != den_i:
            raise BadFraction(line, f"fraction {tok!r} is not reduced with positive denominator")
        return Fraction(num_i, den_i)
    try:
        return field(int(tok))
    except ValueError:
        raise TableSyntaxError(line, f"bad coefficient {tok!r}") from None


def parse(doc: str | bytes) -> LieAlgebra:
    if isinstance(doc, bytes):
        doc = doc.decode("utf-8")
    field = None
    dim = None
    name = None
    table = {}
    for lineno, raw in enumerate(doc.splitlines(), start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        words = text.split()
        kw = words[0]
        if kw == "field":
            if field is not None:
                raise TableSyntaxError(lineno, "duplicate field header")
            if words[1:] == ["q"]:
                field = FieldSpec.rationals()
            elif len(words) == 3 and words[1] == "gf":
                try:
                    field = FieldSpec.gf(int(words[2]))
                except ValueError as exc:
                    raise TableSyntaxError(lineno, str(exc)) from None
            else:
                raise TableSyntaxError(lineno, "expected 'field gf <p>' or 'field q'")
        elif kw == "dim":
            if dim is not None:
                raise TableSyntaxError(lineno, "duplicate dim header")
            if len(words) != 2 or not words[1].isdigit():
                raise TableSyntaxError(lineno, "expected 'dim <n>'")
            dim = int(words[1])
        elif kw == "name":
            if name is not None:
                raise TableSyntaxError(lineno, "duplicate name header")
            name = text[4:].strip()
        elif kw == "b":
            if field is None or dim is None:
                raise TableSyntaxError(lineno, "bracket line before field and dim headers")
            if len(words) < 3:
                raise TableSyntaxError(lineno, "expected 'b <i> <j> <k>:<coeff> ...'")
            try:
                i, j = int(words[1]), int(words[2])
            except ValueError:
                raise TableSyntaxError(lineno, "bracket indices must be integers") from None
            if not (0 <= i < j < dim):
                raise TableSyntaxError(lineno, f"need 0 <= i < j < {dim}, got ({i}, {j})")
            if (i, j) in table:
                raise TableSyntaxError(lineno, f"duplicate bracket entry ({i}, {j})")
            vec = [field.zero] * dim
            seen = set()
            for term in words[3:]:
                if ":" not in term:
                    raise TableSyntaxError(lineno, f"bad term {term!r}")
                k_s, c_s = term.split(":", 1)
                try:
                    k = int(k_s)
                except ValueError:
                    raise TableSyntaxError(lineno, f"bad index {k_s!r}") from None
                if not 0 <= k < dim or k in seen:
                    raise TableSyntaxError(lineno, f"bad or repeated output index {k}")
                seen.add(k)
                vec[k] = _parse_coeff(c_s, field, lineno)
            table[(i, j)] = vec
        else:
            raise TableSyntaxError(lineno, f"unknown keyword {kw!r}")
    if field is None or dim is None:
        raise TableSyntaxError(max(1, len(doc.splitlines())), "missing field or dim header")
    return LieAlgebra(field, dim, table, label=name)


# ---------------------------------------------------------------------------
# sweeps over structure-constant tables

@dataclass(frozen=True)
class SweepSpec:
    dim: int
    field: FieldSpec
    mode: str = "exhaustive"
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if not self.field.is_finite:
            raise RationalFieldUnsupported("sweeps need a finite field")
        if self.mode not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        if self.mode == "exhaustive" and self.table_count > EXHAUSTIVE_LIMIT:
            raise SweepTooLarge(f"{self.table_count} tables exceed the exhaustive limit {EXHAUSTIVE_LIMIT}")
        if self.mode == "sampled" and not 0 < self.count <= self.table_count:
            raise SweepTooLarge(f"cannot draw {self.count} samples from {self.table_count} tables")

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.dim) for j in range(i + 1, self.dim)]

    @property
    def digits(self) -> int:
        return comb(self.dim, 2) * self.dim

    @property
    def table_count(self) -> int:
        return self.field.p ** self.digits

    @property
    def description(self) -> str:
        base = f"sweep {self.field.label} dim {self.dim}"
        if self.mode == "sampled":
            return f"{base} sampled count={self.count} seed={self.seed}"
        return f"{base} exhaustive"

    def label(self, index: int) -> str:
        return f"{self.field.label}-d{self.dim}-t{index}"


def table_from_index(spec: SweepSpec, index: int) -> dict:
    """Digit ``t = pair * dim + k`` (base p, least significant first) is ``c_pair^k``."""
    p, n = spec.field.p, spec.dim
    table = {}
    for pair in spec.pairs:
        vec = []
        for _ in range(n):
            vec.append(index % p)
            index //= p
        if any(vec):
            table[pair] = vec
    return table


def algebra_from_index(spec: SweepSpec, index: int) -> LieAlgebra:
    return LieAlgebra(spec.field, spec.dim, table_from_index(spec, index), label=spec.label(index))


def _jacobi_mask(spec: SweepSpec, indices: np.ndarray) -> np.ndarray:
    """Vectorized Jacobi filter; candidates drop out at their first failing triple."""
    p, n = spec.field.p, spec.dim
    digits = np.empty((len(indices), spec.digits), dtype=np.int64)
    rest = indices.astype(np.int64).copy()
    for t in range(spec.digits):
        digits[:, t] = rest % p
        rest //= p
    T = np.zeros((len(indices), n, n, n), dtype=np.int64)
    for a, (i, j) in enumerate(spec.pairs):
        c = digits[:, a * n:(a + 1) * n]
        T[:, i, j, :] = c
        T[:, j, i, :] = -c
    alive = np.ones(len(indices), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                # [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]
                s = (np.einsum("bl,blm->bm", T[:, i, j], T[:, :, k])
                     + np.einsum("bl,blm->bm", T[:, j, k], T[:, :, i])
                     + np.einsum("bl,blm->bm", T[:, k, i], T[:, :, j]))
                alive &= ~(s % p).any(axis=1)
    return alive


def candidate_indices(spec: SweepSpec) -> np.ndarray:
    if spec.mode == "exhaustive":
        return np.arange(spec.table_count, dtype=np.int64)
    rng = np.random.default_rng(spec.seed)
    return np.sort(rng.choice(spec.table_count, size=spec.count, replace=False)).astype(np.int64)


def valid_indices(spec: SweepSpec, chunk: int = 1 << 16) -> list[int]:
    """Indices of Jacobi-valid tables in increasing order."""
    cands = candidate_indices(spec)
    out = []
    for start in range(0, len(cands), chunk):
        part = cands[start:start + chunk]
        out.extend(int(i) for i in part[_jacobi_mask(spec, part)])
    return out


def sweep(spec: SweepSpec) -> Iterator[LieAlgebra]:
    for idx in valid_indices(spec):
        yield algebra_from_index(spec, idx)
