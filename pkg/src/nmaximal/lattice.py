"""Exhaustive subalgebra lattices over finite fields.

A :class:`SubalgebraLattice` enumerates every subspace of ``F_q^n`` in
canonical RREF order, keeps the bracket-closed ones, and answers lattice
questions (maximal subalgebras, maximal chains, n-maximal subalgebras,
Frattini subalgebra, nilradical, chief series) with per-instance caches.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .errors import EnvelopeExceeded, RationalFieldUnsupported
from .exactcore import FieldSpec, Subspace, subspace_intersect, subspace_sum
from .liekernel import (
    LieAlgebra,
    QuotientMap,
    ideal_core,
    is_ideal,
    is_nilpotent,
    is_subalgebra,
    is_subideal,
    nilpotency_class,
    quotient,
)

DEFAULT_BUDGET = 10 ** 7


class ChainPredicate(enum.Enum):
    IDEAL = "ideal"
    SUBIDEAL = "subideal"
    NILPOTENT = "nilpotent"
    IN_NILRADICAL = "in_nilradical"


@dataclass(frozen=True)
class EnumerationBudget:
    max_subspaces: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_subspaces <= 0:
            raise ValueError("budget must be positive")


@dataclass(frozen=True)
class MaximalChain:
    """``links[0] < links[1] < ... < links[-1] = L``, each maximal in the next."""

    links: tuple

    @property
    def length(self) -> int:
        return len(self.links) - 1

    @property
    def bottom(self) -> Subspace:
        return self.links[0]


@dataclass(frozen=True)
class ChiefSeries:
    links: tuple

    @property
    def factor_dims(self) -> tuple:
        return tuple(b.dim - a.dim for a, b in zip(self.links, self.links[1:]))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def galois_number(n: int, q: int) -> int:
    """Number of subspaces of ``F_q^n``."""
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def check_envelope(field: FieldSpec, n: int, budget: int = DEFAULT_BUDGET) -> int:
    if not field.is_finite:
        raise RationalFieldUnsupported("subalgebra enumeration needs a finite field")
    est = galois_number(n, field.p)
    if est > budget:
        raise EnvelopeExceeded(est, budget)
    return est


@lru_cache(maxsize=32)
def all_subspaces(field: FieldSpec, n: int) -> tuple:
    """Every subspace of ``F_p^n`` by pivot pattern and free entries, sorted by key."""
    p = field.p
    out = []
    for d in range(n + 1):
        for pivots in combinations(range(n), d):
            pivset = set(pivots)
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
            for vals in product(range(p), repeat=len(free)):
                rows = [[0] * n for _ in range(d)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free, vals):
                    rows[r][c] = v
                out.append(Subspace(field, n, tuple(tuple(r) for r in rows), pivots))
    out.sort(key=lambda s: s.key)
    for s in out:
        s.mask  # noqa: B018 -- populate the cached member mask
    return tuple(out)


class SubalgebraLattice:
    """All subalgebras of ``L`` plus memoized lattice queries."""

    def __init__(self, L: LieAlgebra, budget: int = DEFAULT_BUDGET):
        check_envelope(L.field, L.dim, budget)
        self.L = L
        self.budget = budget
        universe = all_subspaces(L.field, L.dim)
        self._canon = {s.basis: s for s in universe}
        self.subalgebras = tuple(s for s in universe if is_subalgebra(L, s))
        self._info = sorted(((s, s.dim, s.mask) for s in self.subalgebras), key=lambda t: -t[1])
        self.full = universe[-1]
        self.zero = universe[0]
        self._maximals = {}
        self._levels = [{self.full: (self.full,)}]
        self._nilpotent = {}
        self._subideal = {}
        self._frattini = {}
        self._memo = {}

    def canon(self, s: Subspace) -> Subspace:
        """The shared instance of ``s`` (carries a cached member mask)."""
        return self._canon[s.basis]

    def _cached(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    # -- basic subalgebra predicates ------------------------------------

    def nilpotent(self, s: Subspace) -> bool:
        s = self.canon(s)
        if s not in self._nilpotent:
            self._nilpotent[s] = is_nilpotent(self.L, s)
        return self._nilpotent[s]

    def subideal(self, s: Subspace) -> bool:
        s = self.canon(s)
        if s not in self._subideal:
            self._subideal[s] = is_subideal(self.L, s)
        return self._subideal[s]

    def ideal(self, s: Subspace) -> bool:
        return is_ideal(self.L, self.canon(s))

    def subalgebras_of(self, k: Subspace) -> list[Subspace]:
        k = self.canon(k)
        return [s for s in self.subalgebras if s.dim <= k.dim and s.mask & ~k.mask == 0]

    # -- maximal subalgebras and chains ------------------------------------

    def maximal_subalgebras(self, k: Subspace | None = None) -> tuple:
        """Maximal elements of the proper subalgebras of ``k`` (default ``L``)."""
        k = self.full if k is None else self.canon(k)
        if k in self._maximals:
            return self._maximals[k]
        km, kd = k.mask, k.dim
        # _info is sorted by decreasing dimension
        maxes = []
        for s, d, sm in self._info:
            if d < kd and sm & ~km == 0 and not any(sm & ~mm == 0 for _, mm in maxes):
                maxes.append((s, sm))
        result = tuple(sorted((s for s, _ in maxes), key=lambda s: s.key))
        self._maximals[k] = result
        return result

    def level(self, n: int) -> dict:
        """n-maximal subalgebras mapped to one witness chain ``(S_0, ..., S_n = L)``."""
        while len(self._levels) <= n:
            prev = self._levels[-1]
            nxt = {}
            for s in sorted(prev, key=lambda t: t.key):
                for m in self.maximal_subalgebras(s):
                    if m not in nxt:
                        nxt[m] = (m,) + prev[s]
            self._levels.append(dict(sorted(nxt.items(), key=lambda kv: kv[0].key)))
        return self._levels[n]

    def n_maximals(self, n: int) -> list[Subspace]:
        return list(self.level(n))

    def witness_chain(self, s: Subspace, n: int) -> MaximalChain:
        return MaximalChain(self.level(n)[self.canon(s)])

    def holds(self, s: Subspace, pred: ChainPredicate) -> bool:
        pred = ChainPredicate(pred)
        if pred is ChainPredicate.IDEAL:
            return self.ideal(s)
        if pred is ChainPredicate.SUBIDEAL:
            return self.subideal(s)
        if pred is ChainPredicate.NILPOTENT:
            return self.nilpotent(s)
        return self.canon(s).mask & ~self.nilradical().mask == 0

    def first_failure(self, n: int, pred: ChainPredicate) -> Subspace | None:
        """Canonically least n-maximal subalgebra failing ``pred``, if any."""
        for s in self.level(n):
            if not self.holds(s, pred):
                return s
        return None

    def all_n_maximals_satisfy(self, n: int, pred: ChainPredicate) -> bool:
        return self.first_failure(n, pred) is None

    # -- ideals, Frattini, nilradical ---------------------------------------

    @property
    def ideals(self) -> tuple:
        return self._cached("ideals", lambda: tuple(s for s in self.subalgebras if is_ideal(self.L, s)))

    def frattini(self, k: Subspace | None = None) -> tuple[Subspace, Subspace]:
        """``(F(K), phi(K))``: intersection of maximal subalgebras and its ideal core in ``K``."""
        k = self.full if k is None else self.canon(k)
        if k in self._frattini:
            return self._frattini[k]
        maxes = self.maximal_subalgebras(k)
        F = k
        for m in maxes:
            F = subspace_intersect(F, m)
        F = self.canon(F)
        phi = self.canon(ideal_core(self.L, F, within=k))
        self._frattini[k] = (F, phi)
        return F, phi

    def phi(self, k: Subspace | None = None) -> Subspace:
        return self.frattini(k)[1]

    def nilradical(self) -> Subspace:
        def compute():
            if self.nilpotent(self.full):
                return self.full
            n = self.zero
            for i in self.ideals:
                if self.nilpotent(i):
                    n = subspace_sum(n, i)
            return self.canon(n)
        return self._cached("nilradical", compute)

    def minimal_ideals(self) -> tuple:
        def compute():
            nonzero = [i for i in self.ideals if i.dim]
            return tuple(i for i in nonzero
                         if not any(j.dim < i.dim and j.mask & ~i.mask == 0 for j in nonzero))
        return self._cached("minimal_ideals", compute)

    def is_minimal_non_nilpotent(self, k: Subspace | None = None) -> bool:
        k = self.full if k is None else self.canon(k)
        if self.nilpotent(k):
            return False
        return all(self.nilpotent(m) for m in self.maximal_subalgebras(k))

    def quotient_by(self, ideal: Subspace, label: str | None = None) -> tuple[QuotientMap, "SubalgebraLattice"]:
        ideal = self.canon(ideal)

        def compute():
            qm = quotient(self.L, ideal, label=label)
            return qm, SubalgebraLattice(qm.quotient, self.budget)
        return self._cached(("quotient", ideal), compute)

    # -- chief series ---------------------------------------------------------

    def _covers_above(self, a: Subspace, within: Subspace | None = None) -> list[Subspace]:
        """Ideals minimal among those strictly containing ``a`` (optionally inside ``within``)."""
        am = a.mask
        cands = [i for i in self.ideals if i.dim > a.dim and am & ~i.mask == 0
                 and (within is None or i.mask & ~within.mask == 0)]
        return [i for i in cands if not any(j.dim < i.dim and j.mask & ~i.mask == 0 for j in cands)]

    def chief_series(self, through: Subspace | None = None) -> ChiefSeries:
        """Canonical chief series; with ``through`` the series passes that ideal."""
        links = [self.zero]
        through = None if through is None else self.canon(through)
        while links[-1] != self.full:
            a = links[-1]
            within = through if through is not None and a.mask & ~through.mask == 0 and a != through else None
            covers = self._covers_above(a, within)
            links.append(min(covers, key=lambda s: s.key))
        return ChiefSeries(tuple(links))

    def all_chief_series(self) -> list[ChiefSeries]:
        out = []

        def walk(links):
            if links[-1] == self.full:
                out.append(ChiefSeries(tuple(links)))
                return
            for c in sorted(self._covers_above(links[-1]), key=lambda s: s.key):
                walk(links + [c])
        walk([self.zero])
        return out

    def chief_factors(self) -> list[tuple[Subspace, Subspace]]:
        """Every pair ``(B, A)`` of ideals with ``A/B`` a chief factor."""
        return self._cached("chief_factors", lambda: [
            (b, a) for b in self.ideals for a in self._covers_above(b)])

    def is_supersolvable(self) -> bool:
        return all(d == 1 for d in self.chief_series().factor_dims)

    def chief_factor_below_frattini_failure(self) -> Subspace | None:
        """Top ``A`` of a chief factor ``A/B`` below phi(L) that is not an
        irreducible L/phi(L)-module, or ``None``.

        Checks ``[A, phi(L)] ⊆ B`` (so the action factors through L/phi(L)) and
        searches every subspace strictly between ``B`` and ``A`` for one that
        is invariant under ``ad L``.
        """
        L = self.L
        phi = self.phi()
        universe = all_subspaces(L.field, L.dim)
        for b, a in self.chief_factors():
            if a.mask & ~phi.mask:
                continue
            if any(not b.contains(L.bracket(x, y)) for x in a.basis for y in phi.basis):
                return a
            for s in universe:
                if b.dim < s.dim < a.dim and b.mask & ~s.mask == 0 and s.mask & ~a.mask == 0:
                    if is_ideal(L, s):
                        return a
        return None

    # -- subideals ---------------------------------------------------------------

    def subideal_by_chain_search(self, s: Subspace) -> bool:
        """Brute force: is there a chain ``s ◁ T_1 ◁ ... ◁ L`` of enumerated subalgebras?"""
        s = self.canon(s)
        seen = {s}
        frontier = [s]
        while frontier:
            cur = frontier.pop()
            if cur == self.full:
                return True
            cm = cur.mask
            for t in self.subalgebras:
                if t.dim > cur.dim and t not in seen and cm & ~t.mask == 0 and is_ideal(self.L, cur, within=t):
                    seen.add(t)
                    frontier.append(t)
        return False

    def subideals(self) -> tuple:
        return self._cached("subideals", lambda: tuple(s for s in self.subalgebras if self.subideal(s)))

    def max_nilpotent_subideal_class(self) -> int:
        return self._cached("max_subideal_class", lambda: max(
            nilpotency_class(self.L, s) for s in self.subideals() if self.nilpotent(s)))


# ---------------------------------------------------------------------------
# function-style entry points; each builds a fresh lattice

def enumerate_subalgebras(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    return list(SubalgebraLattice(L, budget).subalgebras)


def maximal_subalgebras(L: LieAlgebra, k: Subspace | None = None, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    return list(SubalgebraLattice(L, budget).maximal_subalgebras(k))


def n_maximals(L: LieAlgebra, n: int, budget: int = DEFAULT_BUDGET) -> dict:
    if n < 1:
        raise ValueError("n must be at least 1")
    lat = SubalgebraLattice(L, budget)
    return {s: MaximalChain(c) for s, c in lat.level(n).items()}


def all_n_maximals_satisfy(L: LieAlgebra, n: int, pred: ChainPredicate, budget: int = DEFAULT_BUDGET) -> bool:
    return SubalgebraLattice(L, budget).all_n_maximals_satisfy(n, pred)


def frattini(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> tuple[Subspace, Subspace]:
    return SubalgebraLattice(L, budget).frattini()


def nilradical(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> Subspace:
    """Largest nilpotent ideal; over Q only the nilpotent case is available."""
    if is_nilpotent(L):
        return L.full()
    return SubalgebraLattice(L, budget).nilradical()


def chief_series(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> ChiefSeries:
    return SubalgebraLattice(L, budget).chief_series()


def is_supersolvable(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> bool:
    return SubalgebraLattice(L, budget).is_supersolvable()


def chief_factor_below_frattini_irreducible(L: LieAlgebra, budget: int = DEFAULT_BUDGET) -> bool:
    return SubalgebraLattice(L, budget).chief_factor_below_frattini_failure() is None
