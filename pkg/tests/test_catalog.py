from fractions import Fraction
from itertools import product

import pytest

from nmaximal import catalog as cat
from nmaximal.catalog import SweepSpec, build, emit, parse, standard_catalog, sweep, valid_indices
from nmaximal.errors import (
    BadFraction,
    FieldMismatch,
    InvalidParam,
    JacobiViolation,
    SweepTooLarge,
    TableSyntaxError,
)
from nmaximal.exactcore import FieldSpec
from nmaximal.lattice import SubalgebraLattice
from nmaximal.liekernel import LieAlgebra, is_simple, is_solvable

GF2, GF3, GF5, GF7, Q = (FieldSpec.gf(2), FieldSpec.gf(3), FieldSpec.gf(5), FieldSpec.gf(7),
                         FieldSpec.rationals())


def test_builders_and_labels():
    assert build("abelian(n=4)", GF5).dim == 4
    h = build("heisenberg", GF2)
    assert h.label == "heisenberg@gf2"
    assert h.bracket(h.unit(0), h.unit(1)) == h.unit(2)
    assert build("heisenberg(k=2)", GF3).dim == 5
    a = build("affine2", GF7)
    assert a.bracket(a.unit(0), a.unit(1)) == a.unit(1)
    s = build("sl2", GF7)
    assert is_simple(s)
    c = build("companion_mnn(poly=x^3+x+1)", GF2)
    assert c.dim == 4 and is_solvable(c)
    ds = build("direct_sum(heisenberg,abelian(n=1))", GF7)
    assert ds.dim == 4 and ds.label == "direct_sum(heisenberg,abelian(n=1))@gf7"


def test_builder_parameter_errors():
    with pytest.raises(InvalidParam):
        build("sl2", GF2)
    with pytest.raises(InvalidParam):
        build("cor26c(p=3)", GF5)
    with pytest.raises(InvalidParam):
        build("nosuch", GF5)
    with pytest.raises(InvalidParam):
        build("abelian(q=1)", GF5)
    with pytest.raises(InvalidParam):
        build("companion_mnn(poly=2x^2+1)", GF5)


def test_cor26c_is_cyclic():
    L = build("cor26c(p=3,alpha=1)", GF3)
    assert L.dim == 5
    lat = SubalgebraLattice(L)
    assert not lat.nilpotent(lat.full) and is_solvable(L)


def test_parse_poly():
    assert cat.parse_poly("x^2+x+1", GF2) == [1, 1, 1]
    assert cat.parse_poly("x^2-2", GF5) == [3, 0, 1]
    assert cat.parse_poly("x^3 - x", GF7) == [0, 6, 0, 1]


@pytest.mark.parametrize("e", standard_catalog(), ids=lambda e: e.label)
def test_roundtrip_catalog(e):
    doc = emit(e.algebra)
    back = parse(doc)
    assert back.table == e.algebra.table and back.field == e.algebra.field
    assert back.label == e.algebra.label
    assert emit(back) == doc


def test_roundtrip_rational_fractions():
    L = LieAlgebra(Q, 3, {(0, 1): (0, Fraction(1, 2), 0), (0, 2): (0, 0, Fraction(-3, 7))}, label="q-diag")
    doc = emit(L)
    assert "1:1/2" in doc and "2:-3/7" in doc
    back = parse(doc)
    assert back.table == L.table and emit(back) == doc


def test_parse_comments_and_errors():
    good = "# header\nfield gf 5\ndim 2  # two\nb 0 1 1:1\n"
    assert parse(good).bracket((1, 0), (0, 1)) == (0, 1)
    cases = [
        ("dim 2\nfield gf 5\nfield gf 5\n", 3),
        ("field gf 5\ndim 2\nb 1 0 0:1\n", 3),
        ("field gf 5\ndim 2\nb 0 1 0:1\nb 0 1 1:1\n", 4),
        ("field gf 5\ndim 2\nbracket 0 1 0:1\n", 3),
        ("b 0 1 0:1\n", 1),
        ("field gf 5\n", 1),
    ]
    for doc, line in cases:
        with pytest.raises(TableSyntaxError) as info:
            parse(doc)
        assert info.value.line == line, doc
    with pytest.raises(BadFraction):
        parse("field q\ndim 2\nb 0 1 1:2/4\n")
    with pytest.raises(FieldMismatch):
        parse("field gf 5\ndim 2\nb 0 1 1:1/2\n")
    with pytest.raises(JacobiViolation):
        parse("field gf 5\ndim 3\nb 0 1 0:1\nb 1 2 1:1\nb 0 2 2:1\n")


def _brute_valid(F, n):
    """Jacobi-valid tables by direct construction, as sweep indices."""
    spec = SweepSpec(n, F)
    out = []
    for idx in range(spec.table_count):
        try:
            LieAlgebra(F, n, cat.table_from_index(spec, idx))
        except JacobiViolation:
            continue
        out.append(idx)
    return out


def test_sweep_counts_dim2_and_dim3():
    assert len(list(sweep(SweepSpec(2, GF2)))) == 4
    assert valid_indices(SweepSpec(2, GF5)) == list(range(25))
    assert valid_indices(SweepSpec(3, GF2)) == _brute_valid(GF2, 3)
    assert len(valid_indices(SweepSpec(3, GF2))) == 120


def test_sweep_gf3_dim3_count():
    got = valid_indices(SweepSpec(3, GF3))
    assert len(got) == 1431
    assert got == _brute_valid(GF3, 3)


def test_sweep_index_encoding():
    spec = SweepSpec(3, GF5)
    # digit t = pair*dim + k, least significant first
    assert cat.table_from_index(spec, 1) == {(0, 1): [1, 0, 0]}
    assert cat.table_from_index(spec, 5 ** 5) == {(0, 2): [0, 0, 1]}
    assert spec.label(7) == "gf5-d3-t7"


def test_sampling_is_seeded_and_distinct():
    a = SweepSpec(4, GF2, "sampled", 2000, 7)
    b = SweepSpec(4, GF2, "sampled", 2000, 7)
    ca, cb = cat.candidate_indices(a), cat.candidate_indices(b)
    assert list(ca) == list(cb) and len(set(ca.tolist())) == 2000
    assert list(ca) == sorted(ca)
    assert list(cat.candidate_indices(SweepSpec(4, GF2, "sampled", 2000, 8))) != list(ca)
    assert valid_indices(a) == valid_indices(b)


def test_sweep_limits():
    with pytest.raises(SweepTooLarge):
        SweepSpec(4, GF3)
    with pytest.raises(SweepTooLarge):
        SweepSpec(2, GF2, "sampled", 100, 0)


def test_jacobi_filter_matches_kernel_on_random_dim4():
    spec = SweepSpec(4, GF3, "sampled", 3000, 1)
    cands = cat.candidate_indices(spec)
    mask = cat._jacobi_mask(spec, cands)
    for idx, ok in zip(cands.tolist(), mask.tolist()):
        try:
            LieAlgebra(GF3, 4, cat.table_from_index(spec, idx))
            valid = True
        except JacobiViolation:
            valid = False
        assert valid == ok


def test_all_dim2_tables_roundtrip():
    for vals in product(range(3), repeat=2):
        L = LieAlgebra(GF3, 2, {(0, 1): vals} if any(vals) else {})
        assert parse(emit(L)).table == L.table
