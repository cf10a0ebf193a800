"""Acceptance criteria, one test each; conftest prints a PASS/FAIL line per criterion."""

import json
import time

import pytest

from nmaximal.catalog import SweepSpec, build, emit, parse, standard_catalog, sweep
from nmaximal.cli import main
from nmaximal.exactcore import FieldSpec
from nmaximal.lattice import ChainPredicate, SubalgebraLattice
from nmaximal.liekernel import is_subideal_by_idealizer
from nmaximal.oracles import Analysis, TheoremId as T, check, parse_ids, run_suite

GF2, GF3, GF5, GF7 = (FieldSpec.gf(p) for p in (2, 3, 5, 7))

C1_IDS = parse_ids("T1_1,T2_3,T2_5,T3_2,T3_5,T4_3,L2_1,L2_2,L3_1,L4_2")


@pytest.mark.criterion(1, "GF(5) dim-3 exhaustive sweep, full-equivalence and lemma agreement, <= 10 min")
def test_c1_gf5_dim3_exhaustive():
    start = time.perf_counter()
    rep = run_suite(SweepSpec(3, GF5), C1_IDS, threads=1)
    elapsed = time.perf_counter() - start
    print(rep.to_text() + f"elapsed {elapsed:.1f}s")
    assert rep.algebras == 31125
    assert not rep.errors
    for tid in C1_IDS:
        t = rep.tallies[tid.value]
        assert t.violations == 0 and t.findings == 0, tid.value
        assert t.checked > 0, tid.value
    assert elapsed <= 600


@pytest.mark.criterion(2, "GF(2) and GF(3) dim-3 exhaustive sweeps, <= 1 min each, no errors")
def test_c2_gf2_gf3_dim3():
    for F, count in ((GF2, 120), (GF3, 1431)):
        start = time.perf_counter()
        rep = run_suite(SweepSpec(3, F), "all")
        elapsed = time.perf_counter() - start
        print(rep.to_text() + f"elapsed {elapsed:.1f}s")
        assert rep.algebras == count and not rep.errors
        for v in rep.disagreements:
            assert v.severity == "FINDING" and v.witness and v.label in rep.documents
        assert elapsed <= 60


@pytest.mark.criterion(3, "catalog suite: heisenberg, affine2, abelian, companion, cor26c, cor26d, sl2, <= 30 s")
def test_c3_catalog():
    start = time.perf_counter()
    failures = []

    def expect(ok, what):
        if not ok:
            failures.append(what)

    h = Analysis(build("heisenberg", GF2))
    expect(h.phi == h.L.span([h.L.unit(2)]), "heisenberg(GF2): phi = span(z)")
    v = h.check(T.T1_1)
    expect(v.predicate is False and v.matcher is None and v.agree, "heisenberg(GF2): T1_1 fails consistently")
    for p in (2, 3, 5, 7):
        expect(check(build("affine2", FieldSpec.gf(p)), T.T1_1).matcher == "T1_1(ii)", f"affine2(GF{p}): T1_1(ii)")
    for p in (2, 5):
        for n in (1, 2, 3, 4):
            v = check(build(f"abelian(n={n})", FieldSpec.gf(p)), T.T1_1)
            expect(v.matcher == "T1_1(i)" and v.agree, f"abelian({n}, GF{p}): T1_1(i)")
    v = check(build("companion_mnn(poly=x^2+x+1)", GF2), T.T2_3)
    expect(v.matcher == "T2_3(ii)" and v.predicate is True, "companion_mnn(2, x^2+x+1, GF2): T2_3(ii)")
    for spec, F in (("cor26c(p=2,alpha=1)", GF2), ("cor26c(p=3,alpha=1)", GF3)):
        v = check(build(spec, F), T.T2_5)
        expect(v.predicate is True, f"{spec}: T2_5 predicate (every 2-maximal nilpotent)")
        expect(v.matcher == "T2_5(iv)", f"{spec}: matches T2_5(iv)")
    for alpha in (0, 2):
        v = check(build(f"cor26d(alpha={alpha})", GF5), T.T2_5)
        expect(v.matcher == "T2_5(v)" and v.agree, f"cor26d(alpha={alpha}, GF5): T2_5(v)")
    for p in (5, 7):
        a = Analysis(build("sl2", FieldSpec.gf(p)))
        lat = a.lat
        expect(lat.all_n_maximals_satisfy(2, ChainPredicate.NILPOTENT), f"sl2(GF{p}): 2-maximals nilpotent")
        expect(lat.all_n_maximals_satisfy(3, ChainPredicate.SUBIDEAL), f"sl2(GF{p}): 3-maximals subideal")
        expect(a.phi.is_zero(), f"sl2(GF{p}): phi = 0")
        expect(lat.n_maximals(3) == [lat.zero], f"sl2(GF{p}): 3-maximals = {{0}}")
    elapsed = time.perf_counter() - start
    expect(elapsed <= 30, f"elapsed {elapsed:.1f}s <= 30s")
    assert not failures, "failed checks: " + "; ".join(failures)


@pytest.mark.criterion(4, "idealizer-series subideal test equals chain search over GF(3) dim 3, <= 2 min")
def test_c4_subideal_cross_oracle():
    start = time.perf_counter()
    mismatches = []
    checked = 0
    for L in sweep(SweepSpec(3, GF3)):
        lat = SubalgebraLattice(L)
        for s in lat.subalgebras:
            checked += 1
            if is_subideal_by_idealizer(L, s) != lat.subideal_by_chain_search(s):
                mismatches.append((L.label, s.hex()))
    elapsed = time.perf_counter() - start
    print(f"subalgebras checked {checked} mismatches {len(mismatches)} elapsed {elapsed:.1f}s")
    assert not mismatches, mismatches[:5]
    assert elapsed <= 120


@pytest.mark.criterion(5, "nilpotent subideals lie in the nilradical for the GF(7) guard suite, <= 1 min")
def test_c5_lemma_guard_suite():
    start = time.perf_counter()
    for spec in ("heisenberg", "direct_sum(heisenberg,abelian(n=1))", "affine2", "two_minimal(1,3)"):
        L = build(spec, GF7)
        lat = SubalgebraLattice(L)
        N = lat.nilradical()
        bad = [s.hex() for s in lat.subideals() if lat.nilpotent(s) and not s <= N]
        assert not bad, (spec, bad)
        assert check(L, T.L4_1).agree
    assert time.perf_counter() - start <= 60


def _run(capsys, argv):
    capsys.readouterr()
    code = main(argv)
    return code, capsys.readouterr().out


@pytest.mark.criterion(6, "byte-identical verify/analyze output across runs and threads; catalog roundtrip")
def test_c6_determinism(capsys, tmp_path):
    for e in standard_catalog():
        doc = emit(e.algebra)
        back = parse(doc)
        assert back.table == e.algebra.table and emit(back) == doc
    runs = [
        ["verify", "--scope", "sweep", "--fields", "2,3", "--dims", "3"],
        ["verify", "--scope", "catalog", "--format", "json"],
        ["verify", "--scope", "sweep", "--fields", "2", "--dims", "4", "--sample", "20000,seed=5"],
    ]
    for argv in runs:
        outs = {_run(capsys, argv + ["--threads", t]) for t in ("1", "4", "1")}
        assert len(outs) == 1, argv
    f = tmp_path / "h.lie"
    f.write_text(emit(build("cor26c(p=3,alpha=1)", GF3)))
    for fmt in ("text", "json"):
        outs = {_run(capsys, ["analyze", str(f), "--format", fmt, "--threads", t]) for t in ("1", "4", "1")}
        assert len(outs) == 1


@pytest.mark.criterion(7, "GF(2) dim-4 sampled sweep of 100000 tables, <= 5 min, no L2_2/L3_1 violations, reproducible")
def test_c7_dim4_sampled(capsys):
    spec = SweepSpec(4, GF2, "sampled", 100_000, 1)
    start = time.perf_counter()
    rep = run_suite(spec, "all")
    elapsed = time.perf_counter() - start
    print(rep.to_text() + f"elapsed {elapsed:.1f}s")
    assert not rep.errors
    for tid in ("L2_2", "L3_1"):
        t = rep.tallies[tid]
        assert t.checked > 0 and t.violations == 0 and t.findings == 0
    assert elapsed <= 300
    again = run_suite(SweepSpec(4, GF2, "sampled", 100_000, 1), "all")
    assert again.to_json() == rep.to_json()
    code, out = _run(capsys, ["verify", "--scope", "sweep", "--fields", "2", "--dims", "4",
                              "--sample", "100000,seed=1", "--format", "json"])
    assert json.loads(out)["reports"][0] == rep.to_dict()
