from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from nmaximal.catalog import build, standard_catalog
from nmaximal.errors import JacobiViolation, NotAnIdeal, NotInvariant, ShapeError
from nmaximal.exactcore import FieldSpec, span
from nmaximal.lattice import SubalgebraLattice, all_subspaces
from nmaximal.liekernel import (
    LieAlgebra,
    SeriesKind,
    acts_nilpotently,
    ad_irreducible,
    center,
    centralizer,
    factor_action,
    ideal_closure,
    ideal_core,
    idealizer,
    idealizer_series,
    is_ideal,
    is_nilpotent,
    is_simple,
    is_solvable,
    is_subideal,
    is_subideal_by_idealizer,
    minimal_ideals,
    nilpotency_class,
    product_space,
    quotient,
    series,
)

GF2, GF3, GF5, GF7, Q = (FieldSpec.gf(2), FieldSpec.gf(3), FieldSpec.gf(5), FieldSpec.gf(7),
                         FieldSpec.rationals())


def idealizer_gap_algebra(field, lam=2):
    """a, b, c, x with [a,b]=c, [x,a]=a, [x,b]=lam b, [x,c]=(1+lam) c."""
    lam = field(lam)
    table = {(0, 1): (0, 0, 1, 0),
             (0, 3): (field.neg(1), 0, 0, 0),
             (1, 3): (0, field.neg(lam), 0, 0),
             (2, 3): (0, 0, field.neg(field.add(1, lam)), 0)}
    return LieAlgebra(field, 4, table, names=["a", "b", "c", "x"])


def test_jacobi_violation_reports_first_triple():
    # [e0,e1]=e0, [e1,e2]=e1, [e0,e2]=e2 is not a Lie algebra
    table = {(0, 1): (1, 0, 0), (1, 2): (0, 1, 0), (0, 2): (0, 0, 1)}
    with pytest.raises(JacobiViolation) as info:
        LieAlgebra(GF5, 3, table)
    assert info.value.triple == (0, 1, 2)


def test_table_shape_errors():
    with pytest.raises(ShapeError):
        LieAlgebra(GF5, 2, {(1, 0): (1, 0)})
    with pytest.raises(ShapeError):
        LieAlgebra(GF5, 2, {(0, 1): (1, 0, 0)})


algebras = [e.algebra for e in standard_catalog()]


def _vec(L):
    return st.tuples(*[st.integers(0, L.field.p - 1)] * L.dim)


@pytest.mark.parametrize("L", algebras, ids=lambda L: L.label)
def test_bracket_axioms_and_ad_is_derivation(L):
    @given(_vec(L), _vec(L), _vec(L))
    def check(x, y, z):
        assert L.bracket(x, y) == tuple(-c % L.field.p for c in L.bracket(y, x))
        assert not any(L.bracket(x, x))
        terms = [L.bracket(L.bracket(x, y), z), L.bracket(L.bracket(y, z), x), L.bracket(L.bracket(z, x), y)]
        assert all(sum(t[i] for t in terms) % L.field.p == 0 for i in range(L.dim))
        # ad [x, y] = [ad x, ad y]
        lhs = L.ad(L.bracket(x, y))
        ax, ay = L.ad(x), L.ad(y)
        rhs = [tuple((u - v) % L.field.p for u, v in zip(r1, r2))
               for r1, r2 in zip((ay @ ax).rows, (ax @ ay).rows)]
        assert list(lhs.rows) == rhs
    check()


def test_series_examples():
    h = build("heisenberg", GF2)
    assert [s.dim for s in series(h, kind=SeriesKind.LOWER_CENTRAL)] == [3, 1, 0]
    assert nilpotency_class(h) == 2
    s = build("sl2", GF5)
    assert [t.dim for t in series(s, kind=SeriesKind.DERIVED)] == [3]
    assert not is_solvable(s) and is_simple(s)
    a = build("affine2", GF3)
    assert is_solvable(a) and not is_nilpotent(a)
    assert nilpotency_class(a) is None


def test_rational_algebra_basics():
    L = LieAlgebra(Q, 2, {(0, 1): (0, Fraction(1, 2))})
    assert product_space(L, L.full(), L.full()).dim == 1
    assert is_solvable(L) and not is_nilpotent(L)
    assert center(L).is_zero()


def _all_vectors(L):
    return list(product(range(L.field.p), repeat=L.dim))


small = [build(s, F) for s, F in [("heisenberg", GF3), ("affine2", GF3), ("two_minimal(1,2)", GF5),
                                 ("sl2", GF5), ("cor26d(alpha=0)", GF3), ("jordan2(lam=1)", GF3)]]


@pytest.mark.parametrize("L", small, ids=lambda L: L.label)
def test_centralizer_and_idealizer_brute_force(L):
    vecs = _all_vectors(L)
    for s in all_subspaces(L.field, L.dim):
        cz = [v for v in vecs if all(not any(L.bracket(v, y)) for y in s.basis)]
        assert len(cz) == L.field.p ** centralizer(L, s).dim
        assert all(centralizer(L, s).contains(v) for v in cz)
        nz = [v for v in vecs if all(s.contains(L.bracket(v, y)) for y in s.basis)]
        assert len(nz) == L.field.p ** idealizer(L, s).dim
        assert all(idealizer(L, s).contains(v) for v in nz)


@pytest.mark.parametrize("L", small, ids=lambda L: L.label)
def test_closure_and_core_brute_force(L):
    ideals = [s for s in all_subspaces(L.field, L.dim) if is_ideal(L, s)]
    for s in all_subspaces(L.field, L.dim):
        above = [i for i in ideals if s <= i]
        assert ideal_closure(L, s) == min(above, key=lambda i: i.dim)
        below = [i for i in ideals if i <= s]
        assert ideal_core(L, s) == max(below, key=lambda i: i.dim)


@pytest.mark.parametrize("L", small, ids=lambda L: L.label)
def test_quotient_projection_is_homomorphism(L):
    lat = SubalgebraLattice(L)
    for i in lat.ideals:
        qm = quotient(L, i)
        Q_ = qm.quotient
        assert Q_.dim == L.dim - i.dim
        for x, y in product(L.full().vectors(), repeat=2):
            assert qm.project(L.bracket(x, y)) == Q_.bracket(qm.project(x), qm.project(y))
        for v in Q_.full().vectors():
            assert qm.project(qm.lift(v)) == tuple(v)
    with pytest.raises(NotAnIdeal):
        quotient(build("affine2", GF3), span(GF3, 2, [(1, 0)]))


def test_subideal_descending_series_vs_idealizer_gap():
    for F in (GF3, GF5, GF7):
        L = idealizer_gap_algebra(F)
        s = L.span([L.unit(0)])
        lat = SubalgebraLattice(L)
        assert lat.subideal_by_chain_search(s)
        assert is_subideal(L, s)
        assert not is_subideal_by_idealizer(L, s)
        ser = idealizer_series(L, s)
        assert ser[-1] == L.span([L.unit(0), L.unit(2), L.unit(3)])


@pytest.mark.parametrize("L", small + [idealizer_gap_algebra(GF3)], ids=lambda L: L.label or "gap")
def test_is_subideal_matches_chain_search(L):
    lat = SubalgebraLattice(L)
    for s in lat.subalgebras:
        assert is_subideal(L, s) == lat.subideal_by_chain_search(s)


def test_acts_nilpotently_and_factor_action():
    h = build("heisenberg", GF5)
    assert acts_nilpotently(h, h.full(), h.full())
    a = build("affine2", GF5)
    y = a.span([a.unit(1)])
    assert not acts_nilpotently(a, a.full(), y)
    with pytest.raises(NotInvariant):
        acts_nilpotently(a, a.full(), a.span([a.unit(0)]))
    c = build("companion_mnn(poly=x^2+x+1)", GF2)
    n = c.span([c.unit(0), c.unit(1)])
    assert ad_irreducible(c, c.unit(2), n)
    assert factor_action(c, c.unit(2), n).shape == (2, 2)
    c5 = build("companion_mnn(poly=x^2-1)", GF5)
    assert not ad_irreducible(c5, c5.unit(2), c5.span([c5.unit(0), c5.unit(1)]))


def test_minimal_ideals_and_center():
    t = build("two_minimal(1,2)", GF5)
    assert [m.dim for m in minimal_ideals(t)] == [1, 1]
    h = build("heisenberg", GF5)
    assert center(h) == h.span([h.unit(2)])
    assert minimal_ideals(h) == [center(h)]


def test_nilradical_contains_its_centralizer_for_solvable_sweep():
    from nmaximal.catalog import SweepSpec, sweep
    for L in sweep(SweepSpec(3, GF3)):
        if not is_solvable(L):
            continue
        N = SubalgebraLattice(L).nilradical()
        assert centralizer(L, N) <= N
