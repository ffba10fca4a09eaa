"""Acceptance criteria.  Each test prints one ``criterion N: PASS|FAIL`` line.

The lines are also collected into an "acceptance criteria" section of the
pytest terminal summary.
"""

import hashlib
import math
import os
import random
import subprocess
import sys
from fractions import Fraction as F

import pytest

from conftest import antenna_instance, l_polygon, square_with_hole, unit_square
from visipoly import (
    AntennaMode,
    emit_wkt,
    is_visible,
    prepare,
    render_svg,
    visibility_bruteforce,
    visibility_expansion,
    visibility_simple,
    visibility_sweep,
)
from visipoly.bench import ALGORITHMS, run_bench
from visipoly.exact import orient
from visipoly.expansion import ExpansionStats
from visipoly.joe_simpson import ScanStats
from visipoly.scenarios import (
    gen_comb,
    gen_random_simple,
    gen_random_with_holes,
    lattice_polygon,
    random_interior_points,
    vertex_adjacent_points,
)
from visipoly.sweep import SweepStats

SIMPLE_COUNT = 200
SIMPLE_N = (10, 100)
RANDOM_QUERIES = 5
HOLES_COUNT = 100
HOLES_N_OUTER_MAX = 60
HOLES_MAX = 5
COMB_KS = (8, 16, 32, 64)
COMB_SLOPE = 2.0
COMB_SLOPE_TOL = 0.3
SWEEP_SLOPE_MAX = 1.3
PERF_N = 20000
PERF_SEED = 1
PERF_QUERIES = 200
EPS = F(1, 1000)
STACK_WORK_FACTOR = 4  # pushes + pops <= 4n for the boundary scan

MODES = tuple(AntennaMode)


def _simple_instances():
    for i in range(SIMPLE_COUNT):
        n = random.Random(f"acceptance-simple:{i}").randint(*SIMPLE_N)
        yield i, gen_random_simple(n, i)


def _holes_instances():
    for i in range(HOLES_COUNT):
        rng = random.Random(f"acceptance-holes:{i}")
        n = rng.randint(10, HOLES_N_OUTER_MAX)
        h = rng.randint(1, HOLES_MAX)
        yield i, gen_random_with_holes(n, h, i)


def _queries(p, seed):
    return vertex_adjacent_points(p) + random_interior_points(p, RANDOM_QUERIES, seed)


def _call(f, *args):
    try:
        return f(*args)
    except Exception as exc:  # a crash counts as a mismatch
        return exc


def _slope(xs, ys):
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


def _has_spike(vs, base, tip):
    k = len(vs)
    return any(vs[i - 1] == base and vs[i] == tip and vs[(i + 1) % k] == base for i in range(k))


# -- 1 -------------------------------------------------------------------------


def test_criterion_1_simple_polygons_match_oracle(criterion):
    checks = bad = 0
    first = None
    work = 0.0
    for i, p in _simple_instances():
        dom = prepare(p)
        for q in _queries(p, i):
            for mode in MODES:
                ref = visibility_bruteforce(p, q, mode)
                st = ScanStats()
                got = {
                    "joe-simpson": _call(visibility_simple, p, q, mode, st),
                    "sweep": _call(visibility_sweep, p, q, mode),
                    "expansion": _call(visibility_expansion, dom, q, mode),
                }
                work = max(work, (st.pushes + st.pops) / p.n)
                for name, v in got.items():
                    checks += 1
                    if v != ref:
                        bad += 1
                        first = first or (i, q, mode.value, name)
    ok = bad == 0
    criterion(
        1,
        ok,
        f"{SIMPLE_COUNT} polygons, {checks} comparisons, {bad} mismatches"
        + (f", first at {first}" if first else "")
        + f"; scan stack work max {work:.2f}n",
    )
    assert ok
    assert work <= STACK_WORK_FACTOR


# -- 2 -------------------------------------------------------------------------


def test_criterion_2_holes_match_oracle(criterion):
    checks = bad = 0
    first = None
    for i, p in _holes_instances():
        assert len(p.outer) <= HOLES_N_OUTER_MAX and 1 <= p.h <= HOLES_MAX
        dom = prepare(p)
        for q in _queries(p, i):
            for mode in MODES:
                ref = visibility_bruteforce(p, q, mode)
                for name, v in (
                    ("sweep", _call(visibility_sweep, p, q, mode)),
                    ("expansion", _call(visibility_expansion, dom, q, mode)),
                ):
                    checks += 1
                    if v != ref:
                        bad += 1
                        first = first or (i, q, mode.value, name)
    ok = bad == 0
    criterion(
        2,
        ok,
        f"{HOLES_COUNT} polygons with holes, {checks} comparisons, {bad} mismatches"
        + (f", first at {first}" if first else ""),
    )
    assert ok


# -- 3 -------------------------------------------------------------------------


def test_criterion_3_antenna(criterion):
    p = antenna_instance()
    q = (0, 0)
    failures = []
    for name, f in (("sweep", visibility_sweep), ("expansion", visibility_expansion), ("oracle", visibility_bruteforce)):
        inc = f(p, q, AntennaMode.INCLUDE).vertices
        exc = f(p, q, AntennaMode.EXCLUDE).vertices
        if not _has_spike(inc, (3, 0), (6, 0)):
            failures.append(f"{name}: include lacks spike")
        if (6, 0) in exc:
            failures.append(f"{name}: exclude keeps spike")
        i = inc.index((6, 0)) if (6, 0) in inc else None
        if i is not None and inc[:i] + inc[i + 2:] != exc:
            failures.append(f"{name}: regions differ beyond the spike")
    if not is_visible(p, q, (5, 0)):
        failures.append("(5,0) not visible")
    for t in ((5, EPS), (5, -EPS)):
        if is_visible(p, q, t):
            failures.append(f"{t} visible")
    ok = not failures
    criterion(3, ok, "spike (3,0)->(6,0)->(3,0) in include only; membership exact" if ok else "; ".join(failures))
    assert ok


# -- 4 -------------------------------------------------------------------------


def test_criterion_4_comb_growth(criterion):
    entries, comps = [], []
    for k in COMB_KS:
        sc = gen_comb(k)
        es, ss = ExpansionStats(), SweepStats()
        a = visibility_expansion(prepare(sc.polygon), sc.query, AntennaMode.INCLUDE, es)
        b = visibility_sweep(sc.polygon, sc.query, AntennaMode.INCLUDE, ss)
        assert a == b
        entries.append(es.triangle_entries)
        comps.append(ss.comparisons)
    se = _slope(COMB_KS, entries)
    ss_ = _slope(COMB_KS, comps)
    ok_e = abs(se - COMB_SLOPE) <= COMB_SLOPE_TOL
    ok_s = ss_ <= SWEEP_SLOPE_MAX
    criterion(
        4,
        ok_e and ok_s,
        f"k={list(COMB_KS)} triangle_entries={entries} slope {se:.3f} "
        f"(need {COMB_SLOPE}+-{COMB_SLOPE_TOL}: {'ok' if ok_e else 'out of range'}); "
        f"sweep comparisons={comps} slope {ss_:.3f} (need <= {SWEEP_SLOPE_MAX}: {'ok' if ok_s else 'too steep'})",
    )
    assert ok_s
    assert ok_e


# -- 5 -------------------------------------------------------------------------


def test_criterion_5_performance_ordering(criterion):
    p = gen_random_simple(PERF_N, PERF_SEED)
    qs = random_interior_points(p, PERF_QUERIES, PERF_SEED)
    rep = run_bench(p, ALGORITHMS, qs)
    avg = {a: rep.avg_ms(rep.row(a)) for a in ALGORITHMS}
    ok = rep.verified and avg["expansion"] < avg["joe-simpson"] < avg["sweep"]
    criterion(
        5,
        ok,
        f"n={p.n}, {len(qs)} queries, verified={rep.verified}; Avg ms: "
        + ", ".join(f"{a}={avg[a]:.2f}" for a in ("expansion", "joe-simpson", "sweep")),
    )
    assert ok


# -- corpus for 6 and 7 --------------------------------------------------------


def _corpus():
    half = F(1, 2)
    items = [
        ("unit square", unit_square(), [(half, half), (F(1, 4), F(1, 4)), (1, half), (0, 0)]),
        ("L", l_polygon(), [(F(3, 2), F(1, 4)), (half, half), (1, 1), (0, 2)]),
        ("square with hole", square_with_hole(), [(1, 3), (0, 0), (1, 1), (2, 3)]),
        ("antenna", antenna_instance(), [(0, 0), (5, 0), (-1, 0)]),
    ]
    for k in (1, 2, 4):
        sc = gen_comb(k)
        items.append((f"comb {k}", sc.polygon, [sc.query] + vertex_adjacent_points(sc.polygon)))
    for s in range(12):
        p = gen_random_simple(10 + 8 * s, 1000 + s)
        items.append((f"simple {s}", p, _queries(p, s) + list(p.outer[:6])))
    for s in range(8):
        p = gen_random_with_holes(12 + 6 * s, 1 + s % HOLES_MAX, 2000 + s)
        items.append((f"holes {s}", p, _queries(p, s)))
    for s in range(8):
        p = lattice_polygon(30, s)
        items.append((f"lattice {s}", p, vertex_adjacent_points(p) + list(p.outer)))
    return items


@pytest.fixture(scope="module")
def corpus_runs():
    runs = []
    for name, p, qs in _corpus():
        dom = prepare(p)
        for q in qs:
            for mode in MODES:
                st = ExpansionStats()
                outs = {"expansion": visibility_expansion(dom, q, mode, st), "sweep": visibility_sweep(p, q, mode)}
                if not p.holes:
                    outs["joe-simpson"] = visibility_simple(p, q, mode)
                runs.append((name, p, dom, q, mode, outs, st))
    return runs


def test_criterion_6_expansion_linear_on_simple(criterion, corpus_runs):
    over = []
    count = 0
    worst = 0.0
    for name, p, dom, q, mode, _, st in corpus_runs:
        if p.holes:
            continue
        count += 1
        worst = max(worst, st.triangle_entries / dom.interior_count)
        if st.triangle_entries > dom.interior_count:
            over.append((name, q, mode.value, st.triangle_entries, dom.interior_count))
    ok = not over
    criterion(
        6,
        ok,
        f"{count} hole-free queries, max entries/triangles {worst:.3f}"
        + (f", {len(over)} over the bound, first {over[0]}" if over else ""),
    )
    assert ok


def _on_boundary(p, a, b):
    """Whether segment ab is covered by collinear boundary edges of P."""
    d = (b[0] - a[0], b[1] - a[1])
    dd = d[0] * d[0] + d[1] * d[1]
    spans = []
    for u, w in p.edges():
        if orient(u, w, a) == 0 and orient(u, w, b) == 0:
            tu = F((u[0] - a[0]) * d[0] + (u[1] - a[1]) * d[1], 1) / dd
            tw = F((w[0] - a[0]) * d[0] + (w[1] - a[1]) * d[1], 1) / dd
            spans.append((min(tu, tw), max(tu, tw)))
    reach = 0
    for lo, hi in sorted(spans):
        if lo > reach:
            break
        reach = max(reach, hi)
    return reach >= 1


def test_criterion_7_structural_invariants(criterion, corpus_runs):
    problems = []
    seen = set()
    checked = 0
    for name, p, dom, q, mode, outs, _ in corpus_runs:
        for algo, v in outs.items():
            key = (id(p), q, v.vertices)
            if key in seen:
                continue
            seen.add(key)
            checked += 1
            vs = v.vertices
            for i in range(len(vs)):
                a, b = vs[i], vs[(i + 1) % len(vs)]
                if orient(q, a, b) != 0 and not _on_boundary(p, a, b):
                    problems.append((name, algo, q, "edge", a, b))
            for t in vs:
                if t != q and not is_visible(p, q, t):
                    problems.append((name, algo, q, "hidden vertex", t))
    domains = {id(dom): (name, p, dom) for name, p, dom, *_ in corpus_runs}
    faces = [(name, dom.interior_count, p.n + 2 * p.h - 2) for name, p, dom in domains.values()]
    bad_faces = [f for f in faces if f[1] != f[2]]
    ok = not problems and not bad_faces
    criterion(
        7,
        ok,
        f"{checked} distinct outputs, {len(domains)} domains; "
        f"{len(problems)} boundary/star violations, {len(bad_faces)} face-count mismatches"
        + (f"; first {problems[0]}" if problems else "")
        + (f"; first {bad_faces[0]}" if bad_faces else ""),
    )
    assert ok


# -- 8 -------------------------------------------------------------------------


def _digest() -> str:
    """Hash of generator output, every algorithm's answers and one SVG."""
    h = hashlib.sha256()
    polys = [
        gen_random_simple(50, 7),
        gen_random_with_holes(100, 5, 3),
        gen_comb(8).polygon,
        lattice_polygon(30, 2),
    ]
    for p in polys:
        h.update(emit_wkt(p).encode())
        qs = random_interior_points(p, 3, 5) + vertex_adjacent_points(p)[:3]
        dom = prepare(p)
        h.update(repr(dom.snapshot()).encode())
        for q in qs:
            for mode in MODES:
                outs = [visibility_expansion(dom, q, mode), visibility_sweep(p, q, mode)]
                if not p.holes:
                    outs.append(visibility_simple(p, q, mode))
                for v in outs:
                    h.update(emit_wkt(v).encode())
        h.update(render_svg(p, qs[0], visibility_expansion(dom, qs[0])).encode())
    h.update(gen_comb(8).to_wkt().encode())
    return h.hexdigest()


def test_criterion_8_determinism(criterion):
    here = _digest()
    again = _digest()
    env = dict(os.environ)
    tests_dir = os.path.dirname(os.path.abspath(__file__))
    code = f"import sys; sys.path.insert(0, {tests_dir!r}); from test_acceptance import _digest; print(_digest())"
    other = []
    for seed in ("0", "4242"):
        env["PYTHONHASHSEED"] = seed
        r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
        other.append(r.stdout.strip())
    ok = here == again and all(d == here for d in other)
    criterion(8, ok, f"digest {here[:16]} in-process x2 and in 2 fresh processes with different hash seeds")
    assert ok
