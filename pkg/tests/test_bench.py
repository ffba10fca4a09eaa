import pytest

from visipoly import AntennaMode
from visipoly.bench import ALGORITHMS, Solver, VerificationError, run_bench
from visipoly.joe_simpson import HolesNotSupported
from visipoly.scenarios import gen_comb, gen_random_simple, random_interior_points


def test_comb_vertices_verified():
    p = gen_comb(16).polygon
    queries = [v for ring in p.rings for v in ring]
    rep = run_bench(p, ["sweep", "expansion"], queries)
    assert rep.verified and rep.query_count == p.n and rep.h == 16
    assert rep.row("expansion").counters["triangle_entries"] > 0
    assert rep.row("sweep").counters["comparisons"] > 0


def test_report_lines_and_table():
    p = gen_random_simple(40, 2)
    qs = random_interior_points(p, 4, 2)
    rep = run_bench(p, ALGORITHMS, qs, repeat=2)
    lines = rep.lines()
    assert "verified=true" in lines
    for a in ALGORITHMS:
        row = rep.row(a)
        assert row.t_total == pytest.approx(row.t_prepro + row.t_queries)
        assert any(line.startswith(f"{a}.T_Total=") for line in lines)
        assert any(line.startswith(f"{a}.peak_bits=") for line in lines)
    assert rep.row("joe-simpson").counters["stack_ops"] > 0
    table = rep.table().splitlines()
    assert len(table) == 2 + len(ALGORITHMS)


def test_parallel_matches_serial():
    p = gen_random_simple(30, 4)
    qs = random_interior_points(p, 6, 4)
    a = run_bench(p, ["expansion"], qs, jobs=1)
    b = run_bench(p, ["expansion"], qs, jobs=2)
    assert a.row("expansion").counters == b.row("expansion").counters


def test_verification_failure(monkeypatch):
    p = gen_random_simple(20, 1)
    qs = random_interior_points(p, 2, 1)
    real = Solver.query

    def broken(self, q, mode):
        v = real(self, q, mode)
        if self.name == "sweep":
            return type(v)(v.vertices[1:] + v.vertices[:1], v.source_query, v.has_antennae)
        return v

    monkeypatch.setattr(Solver, "query", broken)
    with pytest.raises(VerificationError):
        run_bench(p, ["expansion", "sweep"], qs, mode=AntennaMode.EXCLUDE)


def test_solver_checks():
    with pytest.raises(ValueError):
        Solver("nope", gen_random_simple(5, 0))
    with pytest.raises(HolesNotSupported):
        Solver("joe-simpson", gen_comb(2).polygon)
