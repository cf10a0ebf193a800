"""Brute-force predicates versus structural case matchers, with guards and suite runners.

Every result is checked as a pair: the *predicate* quantifies over the
enumerated n-maximal subalgebras, the *matcher* inspects the structure
(Frattini ideal, nilradical, quotient by the Frattini ideal, minimal ideals,
module actions) and names the first case that applies.  A guard records
which direction of the equivalence is asserted for the algebra at hand.
"""

from __future__ import annotations

import enum
import itertools
import json
import multiprocessing
from collections import Counter
from dataclasses import dataclass, field as dc_field, asdict
from functools import cached_property
from typing import Iterable, Sequence

from .catalog import CatalogEntry, SweepSpec, algebra_from_index, emit, parse, standard_catalog, valid_indices
from .errors import NMaximalError
from .exactcore import Subspace, left_kernel, subspace_intersect, subspace_sum
from .lattice import DEFAULT_BUDGET, ChainPredicate, SubalgebraLattice
from .liekernel import (
    LieAlgebra,
    acts_nilpotently,
    ad_irreducible,
    center,
    is_nilpotent,
    is_solvable,
    product_space,
    projective_points,
    restrict,
)


class TheoremId(str, enum.Enum):
    T1_1 = "T1_1"
    L2_1 = "L2_1"
    L2_2 = "L2_2"
    T2_3 = "T2_3"
    T2_4 = "T2_4"
    T2_5 = "T2_5"
    C2_6 = "C2_6"
    L3_1 = "L3_1"
    T3_2 = "T3_2"
    T3_3 = "T3_3"
    C3_4 = "C3_4"
    T3_5 = "T3_5"
    P3_6 = "P3_6"
    L4_1 = "L4_1"
    L4_2 = "L4_2"
    T4_3 = "T4_3"


ALL_IDS = tuple(TheoremId)


class Guard(str, enum.Enum):
    FULL_EQUIVALENCE = "full_equivalence"
    FORWARD_ONLY = "forward_only"
    IMPLICATION_ONLY = "implication_only"
    SKIPPED = "skipped"


class GuardUnsatisfied(NMaximalError):
    pass


# chain predicate and depth of the quantified left-hand side; None means "parametric n"
PREDICATES = {
    TheoremId.T1_1: (2, ChainPredicate.IDEAL),
    TheoremId.T2_3: (2, ChainPredicate.SUBIDEAL),
    TheoremId.T2_4: (2, ChainPredicate.NILPOTENT),
    TheoremId.T2_5: (2, ChainPredicate.NILPOTENT),
    TheoremId.C2_6: (2, ChainPredicate.NILPOTENT),
    TheoremId.T3_2: (3, ChainPredicate.IDEAL),
    TheoremId.T3_3: (3, ChainPredicate.IDEAL),
    TheoremId.C3_4: (3, ChainPredicate.IDEAL),
    TheoremId.T3_5: (3, ChainPredicate.SUBIDEAL),
    TheoremId.P3_6: (3, ChainPredicate.SUBIDEAL),
    TheoremId.L2_2: (None, ChainPredicate.SUBIDEAL),
    TheoremId.L3_1: (None, ChainPredicate.IDEAL),
    TheoremId.L4_2: (None, ChainPredicate.SUBIDEAL),
    TheoremId.T4_3: (None, ChainPredicate.SUBIDEAL),
}

PARAMETRIC_N = {
    TheoremId.L2_2: (2, 3),
    TheoremId.L3_1: (2, 3),
    TheoremId.L4_2: (1, 2, 3),
    TheoremId.T4_3: (1, 2, 3),
}


def parse_ids(text: str | Iterable[str]) -> tuple[TheoremId, ...]:
    if isinstance(text, str):
        if text.strip().lower() == "all":
            return ALL_IDS
        text = [t for t in text.split(",") if t.strip()]
    ids = {TheoremId(t.strip().upper()) for t in text}
    return tuple(t for t in ALL_IDS if t in ids)


@dataclass(frozen=True)
class TheoremVerdict:
    theorem: str
    label: str
    guard: str
    predicate: bool | None
    matcher: str | None
    agree: bool
    n: int | None = None
    witness: str | None = None
    chain: tuple[str, ...] = ()
    reason: str = ""
    characteristic: int = 0

    @property
    def severity(self) -> str | None:
        """``VIOLATION`` for disagreements in characteristic 0 or >= 5, ``FINDING`` in 2 and 3."""
        if self.agree:
            return None
        return "FINDING" if self.characteristic in (2, 3) else "VIOLATION"

    def line(self) -> str:
        parts = [self.severity or "OK", self.theorem, self.label, f"witness={self.witness or 'none'}"]
        if self.n is not None:
            parts.append(f"n={self.n}")
        parts.append(f"predicate={_fmt_bool(self.predicate)}")
        parts.append(f"matcher={self.matcher or 'none'}")
        if self.reason:
            parts.append(f"reason={json.dumps(self.reason)}")
        return " ".join(parts)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["chain"] = list(self.chain)
        d["severity"] = self.severity
        return d


def _fmt_bool(b) -> str:
    return "none" if b is None else str(b).lower()


# ---------------------------------------------------------------------------
# per-algebra analysis

def sl2_basis(L: LieAlgebra, lat: SubalgebraLattice | None = None):
    """A split sl(2) basis ``(e, f, h)`` of ``L``, or None."""
    if L.dim != 3 or not L.field.is_finite or L.field.p == 2:
        return None
    if lat is not None:
        simple = bool(L.table) and len(lat.ideals) == 2
    else:
        from .liekernel import is_simple
        simple = is_simple(L)
    if not simple:
        return None
    F = L.field
    two = F(2)
    for h in projective_points(F, 3):
        rows = L.ad(h).rows
        def eig(lam):
            shifted = [tuple(F.sub(r[c], lam if c == j else F.zero) for c in range(3)) for j, r in enumerate(rows)]
            return left_kernel(F, shifted, 3)
        ke, kf = eig(two), eig(F.neg(two))
        if ke.dim != 1 or kf.dim != 1:
            continue
        e, f = ke.basis[0], kf.basis[0]
        w = L.bracket(e, f)
        # [e, f] must be a nonzero multiple of h
        piv = next(i for i, c in enumerate(h) if c)
        c = F.div(w[piv], h[piv])
        if c == F.zero or tuple(F.mul(c, x) for x in h) != tuple(w):
            continue
        f = tuple(F.div(x, c) for x in f)
        return e, f, tuple(h)
    return None


class Analysis:
    """Lazily computed structure of one algebra, shared by all checks on it."""

    def __init__(self, L: LieAlgebra, budget: int = DEFAULT_BUDGET, label: str | None = None):
        self.L = L
        self.lat = SubalgebraLattice(L, budget)
        self.label = label or L.label or "unnamed"
        self.budget = budget

    @property
    def F(self):
        return self.L.field

    @cached_property
    def solvable(self) -> bool:
        return is_solvable(self.L)

    @cached_property
    def nilpotent(self) -> bool:
        return self.lat.nilpotent(self.lat.full)

    @cached_property
    def phi(self) -> Subspace:
        return self.lat.phi()

    @cached_property
    def nilradical(self) -> Subspace:
        return self.lat.nilradical()

    @cached_property
    def simple(self) -> bool:
        return bool(self.L.table) and len(self.lat.ideals) == 2

    @cached_property
    def supersolvable(self) -> bool:
        return self.lat.is_supersolvable()

    @cached_property
    def bar(self):
        """``(QuotientMap, lattice)`` for ``L / phi(L)``."""
        return self.lat.quotient_by(self.phi)

    @cached_property
    def acts_nilpotently_on_phi(self) -> bool:
        return acts_nilpotently(self.L, self.L.full(), self.phi)

    @cached_property
    def max_subideal_class(self) -> int:
        return self.lat.max_nilpotent_subideal_class()

    @cached_property
    def big_enough(self) -> bool:
        """Characteristic 0, or no nilpotent subideal of class >= p - 1."""
        p = self.F.p
        # a nonzero nilpotent algebra of dimension d has class at most max(1, d - 1)
        if p == 0 or max(1, self.L.dim - 1) <= p - 2:
            return True
        return self.max_subideal_class <= p - 2

    # -- predicate -------------------------------------------------------

    def predicate(self, tid: TheoremId, n: int | None = None) -> tuple[bool, Subspace | None]:
        depth, pred = PREDICATES[tid]
        depth = depth if depth is not None else n
        fail = self.lat.first_failure(depth, pred)
        return fail is None, fail

    # -- structural helpers ------------------------------------------------

    def _maximals_dims_one(self, lat: SubalgebraLattice, k: Subspace | None = None) -> bool:
        maxes = lat.maximal_subalgebras(k)
        return bool(maxes) and all(m.dim == 1 for m in maxes)

    def _proper_subalgebras_dim_le_one(self) -> bool:
        return all(s.dim <= 1 for s in self.lat.subalgebras if s != self.lat.full)

    def _complements(self, lat: SubalgebraLattice, a: Subspace, d: int) -> list[Subspace]:
        return [s for s in lat.subalgebras if s.dim == d and subspace_intersect(s, a).is_zero()]

    def _abelian(self, L: LieAlgebra, s: Subspace) -> bool:
        return product_space(L, s, s).is_zero()

    def _minimal_abelian_ideals(self, lat: SubalgebraLattice) -> list[Subspace]:
        return [a for a in lat.minimal_ideals() if self._abelian(lat.L, a)]

    def _outside(self, s: Subspace) -> Iterable:
        for v in projective_points(self.F, self.L.dim):
            if not s.contains(v):
                yield v

    def _some_outside(self, s: Subspace):
        return next(self._outside(s))

    # -- matchers ----------------------------------------------------------

    def match_T1_1(self, n=None) -> str | None:
        lat = self.lat
        if self.nilpotent and all(lat.phi(m) == self.phi for m in lat.maximal_subalgebras()):
            return "T1_1(i)"
        if self.L.dim == 2:
            return "T1_1(ii)"
        if self.simple and self._proper_subalgebras_dim_le_one():
            return "T1_1(iii)"
        return None

    def match_T2_3(self, n=None) -> str | None:
        if self.nilpotent:
            return "T2_3(i)"
        N = self.nilradical
        if self.L.dim - N.dim == 1 and product_space(self.L, N, N).is_zero():
            x = self._some_outside(N)
            if ad_irreducible(self.L, x, N):
                return "T2_3(ii)"
        if self.simple and self._proper_subalgebras_dim_le_one():
            return "T2_3(iii)"
        return None

    def _bar_is_sl2(self) -> bool:
        qm, qlat = self.bar
        return sl2_basis(qm.quotient, qlat) is not None

    def match_T2_4(self, n=None) -> str | None:
        if self._bar_is_sl2() and self.acts_nilpotently_on_phi:
            return "T2_4"
        return None

    def _bar_unique_minimal(self):
        """``(A, qm, qlat)`` when the quotient by phi has one minimal ideal, abelian, which is its nilradical."""
        qm, qlat = self.bar
        mins = qlat.minimal_ideals()
        if len(mins) != 1 or not self._abelian(qm.quotient, mins[0]):
            return None
        return mins[0], qm, qlat

    def match_T2_5(self, n=None) -> str | None:
        lat, L = self.lat, self.L
        if self.nilpotent:
            return "T2_5(i)"
        if lat.is_minimal_non_nilpotent():
            return "T2_5(ii)"
        qm, qlat = self.bar
        Lbar = qm.quotient
        Nbar = qlat.nilradical()
        mins = self._minimal_abelian_ideals(qlat)
        # (iii) unique minimal abelian ideal with a one-dimensional complement
        uniq = self._bar_unique_minimal()
        if uniq is not None:
            A = uniq[0]
            if A == Nbar and Lbar.dim - A.dim == 1:
                pre = qm.preimage(A)
                for b in self._outside(pre):
                    k = subspace_sum(self.phi, L.span([b]))
                    if lat.is_minimal_non_nilpotent(k):
                        return "T2_5(iii)"
        # (iv) minimal abelian ideal equal to the nilradical, two-dimensional complement
        for A in mins:
            if A == Nbar and Lbar.dim - A.dim == 2 and self._complements(qlat, A, 2) \
                    and self.acts_nilpotently_on_phi:
                return "T2_5(iv)"
        # (v) two minimal abelian ideals spanning the nilradical, one-dimensional complement
        for A1, A2 in itertools.combinations(mins, 2):
            if subspace_sum(A1, A2) == Nbar and A1.dim + A2.dim + 1 == Lbar.dim \
                    and self.acts_nilpotently_on_phi:
                return "T2_5(v)"
        return None

    def _cor26c_shape(self) -> bool:
        F = self.F
        p = F.p
        qm, qlat = self.bar
        Lb = qm.quotient
        if p == 0 or Lb.dim != p + 2:
            return False
        for A in self._minimal_abelian_ideals(qlat):
            if A.dim != p:
                continue
            for B in self._complements(qlat, A, 2):
                d = product_space(Lb, B, B)
                if d.dim != 1:
                    continue
                b1 = d.basis[0]
                b2 = next(v for v in B.vectors() if v != F.zero_vector(Lb.dim) and not d.contains(v))
                br = Lb.bracket(b1, b2)
                mu = next(F.div(br[i], b1[i]) for i, c in enumerate(b1) if c)
                b2 = tuple(F.div(x, mu) for x in b2)
                if self._cyclic_chain(Lb, A, b1, b2):
                    return True
        return False

    def _cyclic_chain(self, Lb: LieAlgebra, A: Subspace, b1, b2) -> bool:
        F, p = self.F, self.F.p
        for a in projective_points(F, Lb.dim):
            if not A.contains(a):
                continue
            img = Lb.bracket(a, b2)
            if not Lb.span([a]).contains(img):
                continue
            piv = next(i for i, c in enumerate(a) if c)
            alpha = F.div(img[piv], a[piv])
            chain = [tuple(a)]
            ok = True
            for i in range(1, p + 1):
                chain.append(Lb.bracket(chain[-1], b1))
            for i, ai in enumerate(chain[:p]):
                want = tuple(F.mul(F.add(alpha, F(i)), x) for x in ai)
                if Lb.bracket(ai, b2) != want:
                    ok = False
                    break
            if not ok or Lb.span(chain[:p]) != A:
                continue
            wrap = chain[p]
            if any(wrap) and Lb.span([chain[0]]).contains(wrap):
                return True
        return False

    def _cor26d_shape(self) -> bool:
        qm, qlat = self.bar
        Lb = qm.quotient
        if Lb.dim != 3:
            return False
        F = self.F
        for A in qlat.ideals:
            if A.dim != 2 or not self._abelian(Lb, A):
                continue
            b = next(v for v in projective_points(F, 3) if not A.contains(v))
            eigen = []
            for a in A.vectors():
                if not any(a):
                    continue
                if Lb.span([a]).contains(Lb.bracket(b, a)):
                    eigen.append(a)
            if Lb.span(eigen) != A:
                continue
            # diagonalizable on A; need a nonzero eigenvalue so that b can be scaled to act as 1
            if any(any(Lb.bracket(b, a)) for a in eigen):
                return True
        return False

    def match_C2_6(self, n=None) -> str | None:
        if self.nilpotent:
            return "C2_6(a)"
        if self.L.dim <= 3:
            return "C2_6(b)"
        if self._cor26c_shape() and self.acts_nilpotently_on_phi:
            return "C2_6(c)"
        if self._cor26d_shape() and self.acts_nilpotently_on_phi:
            return "C2_6(d)"
        return None

    def match_T3_2(self, n=None) -> str | None:
        lat = self.lat
        if self.nilpotent:
            ok = True
            for k in lat.level(2):
                for m in lat.maximal_subalgebras():
                    if k.mask & ~m.mask == 0 and lat.phi(k) != lat.phi(m):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return "T3_2(i)"
        if self.L.dim <= 3:
            return "T3_2(ii)"
        return None

    def match_T3_3(self, n=None) -> str | None:
        lat, L = self.lat, self.L
        if self.simple:
            dims = [k.dim for k in lat.level(2)]
            if all(d <= 1 for d in dims) and 1 in dims:
                return "T3_3(i)"
        Z = center(L)
        if Z.dim <= 1:
            qm, qlat = lat.quotient_by(Z)
            Q = qm.quotient
            q_simple = bool(Q.table) and len(qlat.ideals) == 2
            if q_simple and self._maximals_dims_one(qlat) and lat.canon(Z) == self.phi:
                return "T3_3(ii)"
        for S in lat.ideals:
            if S.dim != L.dim - 1:
                continue
            sub = restrict(L, S)
            slat = SubalgebraLattice(sub, self.budget)
            if bool(sub.table) and len(slat.ideals) == 2 and self._maximals_dims_one(slat):
                return "T3_3(iii)"
        return None

    def match_C3_4(self, n=None) -> str | None:
        return "C3_4" if sl2_basis(self.L, self.lat) is not None else None

    def match_P3_6(self, n=None) -> str | None:
        return "P3_6" if self._bar_is_sl2() else None

    def match_T3_5(self, n=None) -> str | None:
        lat, L = self.lat, self.L
        if self.nilpotent:
            return "T3_5(i)"
        N = self.nilradical
        if L.dim - N.dim == 1:
            N2 = product_space(L, N, N)
            if N2.dim == 1:
                for b in self._outside(N):
                    if ad_irreducible(L, b, N, modulo=N2) and \
                            self._abelian(L, subspace_sum(N2, L.span([b]))):
                        return "T3_5(ii)"
        uniq = self._bar_unique_minimal()
        if uniq is not None:
            A, qm, qlat = uniq
            phi = self.phi
            if qm.quotient.dim - A.dim == 1 and product_space(L, phi, phi).is_zero():
                if phi.is_zero():
                    return "T3_5(iii)"
                pre = qm.preimage(A)
                for b in self._outside(pre):
                    if ad_irreducible(L, b, phi):
                        return "T3_5(iii)"
        mins = self._minimal_abelian_ideals(lat)
        for A in mins:
            if L.dim - A.dim == 2 and self._complements(lat, A, 2):
                return "T3_5(iv)"
        for A1, A2 in itertools.combinations(mins, 2):
            if A1.dim + A2.dim + 1 == L.dim:
                return "T3_5(v)"
        return None

    def match_T4_3(self, n=None) -> str | None:
        if self.nilpotent:
            return "T4_3(i)"
        if self.L.dim <= n:
            return "T4_3(ii)"
        return None

    # -- verdicts ------------------------------------------------------------

    def _verdict(self, tid, guard, pred, matcher, agree, n=None, witness=None, reason="", depth=None):
        chain = ()
        if witness is not None and depth is not None:
            chain = tuple(s.hex() for s in self.lat.witness_chain(witness, depth).links)
        return TheoremVerdict(
            theorem=tid.value, label=self.label, guard=guard.value, predicate=pred,
            matcher=matcher, agree=agree, n=n,
            witness=witness.hex() if witness is not None else None,
            chain=chain, reason=reason, characteristic=self.F.p)

    def _skip(self, tid, reason, n=None):
        return TheoremVerdict(theorem=tid.value, label=self.label, guard=Guard.SKIPPED.value,
                              predicate=None, matcher=None, agree=True, n=n,
                              reason=reason, characteristic=self.F.p)

    def guard(self, tid: TheoremId, n: int | None = None) -> Guard:
        """The asserted direction for this algebra; raises GuardUnsatisfied otherwise."""
        F = self.F
        if tid in (TheoremId.T1_1, TheoremId.T2_3):
            return Guard.FULL_EQUIVALENCE
        if tid in (TheoremId.T2_5, TheoremId.T3_2, TheoremId.T3_5):
            if not self.solvable:
                raise GuardUnsatisfied("not solvable")
            return Guard.FULL_EQUIVALENCE
        if tid is TheoremId.T3_3:
            if self.solvable:
                raise GuardUnsatisfied("solvable")
            return Guard.FULL_EQUIVALENCE
        if tid is TheoremId.C2_6:
            if not self.solvable:
                raise GuardUnsatisfied("not solvable")
            return Guard.FORWARD_ONLY
        if tid in (TheoremId.T2_4, TheoremId.C3_4, TheoremId.P3_6):
            if self.solvable:
                raise GuardUnsatisfied("solvable")
            if F.p in (2, 3):
                raise GuardUnsatisfied(f"characteristic {F.p}")
            return Guard.FORWARD_ONLY
        if tid is TheoremId.T4_3:
            if not self.supersolvable:
                raise GuardUnsatisfied("not supersolvable")
            if not self.big_enough:
                raise GuardUnsatisfied("characteristic not big enough")
            return Guard.FULL_EQUIVALENCE
        if tid is TheoremId.L4_1:
            if not self.big_enough:
                raise GuardUnsatisfied("characteristic not big enough")
        return Guard.IMPLICATION_ONLY

    def check(self, tid: TheoremId | str, n: int | None = None) -> TheoremVerdict:
        tid = TheoremId(tid)
        if tid in PARAMETRIC_N and n is None:
            n = PARAMETRIC_N[tid][0]
        try:
            guard = self.guard(tid, n)
        except GuardUnsatisfied as exc:
            return self._skip(tid, str(exc), n)
        lemma = getattr(self, f"_lemma_{tid.value}", None)
        if lemma is not None:
            return lemma(tid, guard, n)
        pred, fail = self.predicate(tid, n)
        depth = PREDICATES[tid][0] or n
        matcher = getattr(self, f"match_{tid.value}")(n)
        if guard is Guard.FULL_EQUIVALENCE:
            agree = pred == (matcher is not None)
        else:
            # the structural side implies the quantified side
            agree = matcher is None or pred
            if agree and tid is TheoremId.P3_6 and matcher is not None:
                outside = next((k for k in self.lat.level(3) if k.mask & ~self.phi.mask), None)
                if outside is not None:
                    return self._verdict(tid, guard, pred, matcher, False, n, outside,
                                         "3-maximal subalgebra not inside the Frattini ideal", depth=3)
        reason = ""
        if not agree:
            reason = "predicate fails inside a matched case" if pred is False else "predicate holds but no case matches"
        return self._verdict(tid, guard, pred, matcher, agree, n, fail, reason, depth=depth)

    # -- lemmas: predicate records the hypothesis, matcher "holds" the conclusion

    def _lemma_L2_1(self, tid, guard, n):
        fail = self.lat.chief_factor_below_frattini_failure()
        hyp = any(a.mask & ~self.phi.mask == 0 for _, a in self.lat.chief_factors())
        return self._verdict(tid, guard, hyp, "holds" if fail is None else None, fail is None,
                             None, fail, "" if fail is None else "chief factor below phi is reducible")

    def _lemma_L2_2(self, tid, guard, n):
        hyp, _ = self.predicate(tid, n)
        bad = next((s for s in self.lat.level(n - 1) if not self.lat.nilpotent(s)), None)
        agree = not hyp or bad is None
        return self._verdict(tid, guard, hyp, "holds" if bad is None else None, agree, n,
                             bad if not agree else None,
                             "" if agree else f"non-nilpotent {n - 1}-maximal subalgebra", depth=n - 1)

    def _lemma_L3_1(self, tid, guard, n):
        hyp, _ = self.predicate(tid, n)
        lat = self.lat
        bad = next((s for s in lat.level(n - 1)
                    if not lat.nilpotent(s) or not (lat.ideal(s) or s.dim <= 1)), None)
        agree = not hyp or bad is None
        return self._verdict(tid, guard, hyp, "holds" if bad is None else None, agree, n,
                             bad if not agree else None,
                             "" if agree else f"{n - 1}-maximal subalgebra neither nilpotent ideal nor line",
                             depth=n - 1)

    def _lemma_L4_1(self, tid, guard, n):
        lat = self.lat
        N = self.nilradical
        bad = next((s for s in lat.subideals() if lat.nilpotent(s) and s.mask & ~N.mask), None)
        return self._verdict(tid, guard, True, "holds" if bad is None else None, bad is None,
                             None, bad, "" if bad is None else "nilpotent subideal outside the nilradical")

    def _lemma_L4_2(self, tid, guard, n):
        lat = self.lat
        ii_holds, _ = self.predicate(tid, n)
        outside = lat.first_failure(n, ChainPredicate.IN_NILRADICAL)
        i_holds = outside is None
        forward_ok = not i_holds or ii_holds
        converse_checked = self.big_enough
        converse_ok = not converse_checked or not ii_holds or i_holds
        agree = forward_ok and converse_ok
        witness, reason = None, ""
        if not forward_ok:
            witness = lat.first_failure(n, ChainPredicate.SUBIDEAL)
            reason = "n-maximals inside the nilradical but one is not a subideal"
        elif not converse_ok:
            witness = outside
            reason = "all n-maximals subideals but one lies outside the nilradical"
        elif not converse_checked:
            reason = "converse not asserted: characteristic not big enough"
        return self._verdict(tid, guard, ii_holds, "(i)" if i_holds else None, agree, n, witness, reason, depth=n)


def predicate(L: LieAlgebra, tid: TheoremId | str, budget: int = DEFAULT_BUDGET, n: int | None = None) -> bool:
    tid = TheoremId(tid)
    if tid in PARAMETRIC_N and n is None:
        n = PARAMETRIC_N[tid][0]
    if tid not in PREDICATES:
        raise ValueError(f"{tid.value} has no chain predicate")
    return Analysis(L, budget).predicate(tid, n)[0]


def matcher(L: LieAlgebra, tid: TheoremId | str, budget: int = DEFAULT_BUDGET, n: int | None = None) -> str | None:
    tid = TheoremId(tid)
    if tid in PARAMETRIC_N and n is None:
        n = PARAMETRIC_N[tid][0]
    a = Analysis(L, budget)
    fn = getattr(a, f"match_{tid.value}", None)
    if fn is None:
        raise ValueError(f"{tid.value} is a lemma without a case matcher")
    return fn(n)


def check(L: LieAlgebra, tid: TheoremId | str, budget: int = DEFAULT_BUDGET, n: int | None = None) -> TheoremVerdict:
    return Analysis(L, budget).check(tid, n)


def check_all(L: LieAlgebra, ids: Sequence[TheoremId] = ALL_IDS, budget: int = DEFAULT_BUDGET,
              label: str | None = None) -> list[TheoremVerdict]:
    a = Analysis(L, budget, label)
    out = []
    for tid in ids:
        for n in PARAMETRIC_N.get(tid, (None,)):
            out.append(a.check(tid, n))
    return out


# ---------------------------------------------------------------------------
# suites

@dataclass
class TheoremTally:
    checked: int = 0
    agreed: int = 0
    skipped: int = 0
    violations: int = 0
    findings: int = 0
    cases: Counter = dc_field(default_factory=Counter)

    def add(self, v: TheoremVerdict) -> None:
        if v.guard == Guard.SKIPPED.value:
            self.skipped += 1
            return
        self.checked += 1
        if v.agree:
            self.agreed += 1
        elif v.severity == "FINDING":
            self.findings += 1
        else:
            self.violations += 1
        if v.matcher:
            self.cases[v.matcher] += 1

    def merge(self, other: "TheoremTally") -> None:
        self.checked += other.checked
        self.agreed += other.agreed
        self.skipped += other.skipped
        self.violations += other.violations
        self.findings += other.findings
        self.cases.update(other.cases)

    def to_dict(self) -> dict:
        return {"checked": self.checked, "agreed": self.agreed, "skipped": self.skipped,
                "violations": self.violations, "findings": self.findings,
                "cases": dict(sorted(self.cases.items()))}


@dataclass
class SuiteReport:
    scope: str
    ids: tuple[TheoremId, ...]
    algebras: int = 0
    errors: list[dict] = dc_field(default_factory=list)
    tallies: dict = dc_field(default_factory=dict)
    disagreements: list[TheoremVerdict] = dc_field(default_factory=list)
    documents: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for tid in self.ids:
            self.tallies.setdefault(tid.value, TheoremTally())

    @property
    def violations(self) -> int:
        return sum(t.violations for t in self.tallies.values())

    @property
    def findings(self) -> int:
        return sum(t.findings for t in self.tallies.values())

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.findings == 0 and not self.errors

    def absorb(self, part: "SuiteReport") -> None:
        self.algebras += part.algebras
        self.errors.extend(part.errors)
        for k, t in part.tallies.items():
            self.tallies[k].merge(t)
        self.disagreements.extend(part.disagreements)
        self.documents.update(part.documents)

    def to_dict(self) -> dict:
        return {
            "scope": self.scope,
            "theorems": [t.value for t in self.ids],
            "algebras": self.algebras,
            "violations": self.violations,
            "findings": self.findings,
            "errors": self.errors,
            "summary": {k: self.tallies[k].to_dict() for k in (t.value for t in self.ids)},
            "disagreements": [v.to_dict() for v in self.disagreements],
            "documents": dict(sorted(self.documents.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_text(self) -> str:
        lines = [f"scope {self.scope}", f"algebras {self.algebras}"]
        for v in self.disagreements:
            lines.append(v.line())
        for e in self.errors:
            lines.append(f"ERROR {e['label']} {json.dumps(e['error'])}")
        lines.append("summary")
        for tid in self.ids:
            t = self.tallies[tid.value]
            cases = " ".join(f"{k}={c}" for k, c in sorted(t.cases.items()))
            lines.append(f"  {tid.value} checked={t.checked} agreed={t.agreed} skipped={t.skipped} "
                         f"violations={t.violations} findings={t.findings}" + (f" cases: {cases}" if cases else ""))
        lines.append(f"total violations={self.violations} findings={self.findings} errors={len(self.errors)}")
        for label, doc in sorted(self.documents.items()):
            lines.append(f"document {label}")
            lines.extend("  " + row for row in doc.splitlines())
        return "\n".join(lines) + "\n"


def _run_algebras(items: Sequence[tuple[str, LieAlgebra]], ids, budget, scope="") -> SuiteReport:
    rep = SuiteReport(scope, tuple(ids))
    for label, L in items:
        rep.algebras += 1
        try:
            verdicts = check_all(L, ids, budget, label)
        except NMaximalError as exc:
            rep.errors.append({"label": label, "error": f"{type(exc).__name__}: {exc}"})
            continue
        bad = False
        for v in verdicts:
            rep.tallies[v.theorem].add(v)
            if not v.agree:
                rep.disagreements.append(v)
                bad = True
        if bad:
            rep.documents[label] = emit(L)
    return rep


def _sweep_worker(args) -> SuiteReport:
    spec, indices, ids, budget = args
    items = [(spec.label(i), algebra_from_index(spec, i)) for i in indices]
    return _run_algebras(items, ids, budget)


def _catalog_worker(args) -> SuiteReport:
    docs, ids, budget = args
    items = []
    for label, doc in docs:
        items.append((label, parse(doc)))
    return _run_algebras(items, ids, budget)


def _chunks(seq: Sequence, size: int) -> list:
    return [seq[i:i + size] for i in range(0, len(seq), size)]


def _parallel(worker, jobs: list, threads: int) -> list[SuiteReport]:
    if threads <= 1 or len(jobs) <= 1:
        return [worker(j) for j in jobs]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(threads) as pool:
        return list(pool.imap(worker, jobs))


def run_sweep(spec: SweepSpec, ids: Sequence[TheoremId] = ALL_IDS, budget: int = DEFAULT_BUDGET,
              threads: int = 1, chunk: int = 500) -> SuiteReport:
    ids = tuple(ids)
    indices = valid_indices(spec)
    rep = SuiteReport(spec.description, ids)
    jobs = [(spec, part, ids, budget) for part in _chunks(indices, chunk)]
    for part in _parallel(_sweep_worker, jobs, threads):
        rep.absorb(part)
    return rep


def run_algebras(items: Sequence[tuple[str, LieAlgebra]], ids: Sequence[TheoremId] = ALL_IDS,
                 budget: int = DEFAULT_BUDGET, threads: int = 1, scope: str = "files") -> SuiteReport:
    ids = tuple(ids)
    rep = SuiteReport(scope, ids)
    docs = [(label, emit(L)) for label, L in items]
    jobs = [(part, ids, budget) for part in _chunks(docs, 1)]
    for part in _parallel(_catalog_worker, jobs, threads):
        rep.absorb(part)
    return rep


def run_catalog(entries: Sequence[CatalogEntry] | None = None, ids: Sequence[TheoremId] = ALL_IDS,
                budget: int = DEFAULT_BUDGET, threads: int = 1) -> SuiteReport:
    entries = standard_catalog() if entries is None else entries
    return run_algebras([(e.label, e.algebra) for e in entries], ids, budget, threads, scope="catalog")


def run_suite(scope, ids: Sequence[TheoremId] | str = ALL_IDS, budget: int = DEFAULT_BUDGET,
              threads: int = 1) -> SuiteReport:
    """``scope`` is ``"catalog"``, a SweepSpec, or a sequence of ``(label, algebra)`` pairs."""
    if isinstance(ids, str):
        ids = parse_ids(ids)
    if isinstance(scope, SweepSpec):
        return run_sweep(scope, ids, budget, threads)
    if scope == "catalog":
        return run_catalog(None, ids, budget, threads)
    return run_algebras(list(scope), ids, budget, threads)
