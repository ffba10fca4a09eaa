"""Benchmark protocol: preprocess once, answer every query, keep the best repetition.

Outputs of all algorithms are compared query by query unless verification
is switched off, so every reported timing comes from agreeing runs.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from visipoly.expansion import ExpansionStats, visibility_expansion
from visipoly.joe_simpson import HolesNotSupported, ScanStats, visibility_simple
from visipoly.polygon import AntennaMode, PolygonWithHoles, emit_wkt, parse_wkt
from visipoly.sweep import SweepStats, visibility_sweep
from visipoly.triangulation import prepare

ALGORITHMS = ("joe-simpson", "sweep", "expansion")


class VerificationError(Exception):
    """Two algorithms returned different regions for the same query."""


def _bits(v) -> int:
    if isinstance(v, Fraction):
        return max(v.numerator.bit_length(), v.denominator.bit_length())
    return int(v).bit_length()


class Solver:
    """Uniform face over the three algorithms, accumulating their counters."""

    def __init__(self, name: str, poly: PolygonWithHoles):
        if name not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {name!r}")
        if name == "joe-simpson" and poly.holes:
            raise HolesNotSupported("joe-simpson needs a polygon without holes")
        self.name = name
        self.poly = poly
        self.domain = None
        self.counters: Dict[str, int] = {}

    def prepare(self):
        if self.name == "expansion":
            self.domain = prepare(self.poly)

    def _add(self, key, value):
        self.counters[key] = self.counters.get(key, 0) + value

    def query(self, q, mode: AntennaMode):
        if self.name == "expansion":
            st = ExpansionStats()
            v = visibility_expansion(self.domain, q, mode, st)
            self._add("triangle_entries", st.triangle_entries)
            self._add("cone_splits", st.cone_splits)
            self._add("locate_steps", st.locate_steps)
            self._add("ray_steps", st.ray_steps)
        elif self.name == "sweep":
            st = SweepStats()
            v = visibility_sweep(self.poly, q, mode, st)
            self._add("comparisons", st.comparisons)
        else:
            st = ScanStats()
            v = visibility_simple(self.poly, q, mode, st)
            self._add("stack_ops", st.pushes + st.pops)
        peak = max((_bits(c) for p in v.vertices for c in p), default=0)
        self.counters["peak_bits"] = max(self.counters.get("peak_bits", 0), peak)
        return v


@dataclass
class AlgorithmRow:
    algorithm: str
    t_prepro: float
    t_queries: float
    counters: Dict[str, int] = field(default_factory=dict)

    @property
    def t_total(self) -> float:
        return self.t_prepro + self.t_queries


@dataclass
class BenchReport:
    n: int
    h: int
    query_count: int
    rows: List[AlgorithmRow]
    verified: bool

    def avg_ms(self, row: AlgorithmRow) -> float:
        return 1000.0 * row.t_total / max(self.query_count, 1)

    def row(self, algorithm: str) -> AlgorithmRow:
        return next(r for r in self.rows if r.algorithm == algorithm)

    def table(self) -> str:
        head = f"{'algorithm':<12} {'T_PrePro[s]':>12} {'T_Queries[s]':>13} {'T_Total[s]':>11} {'Avg[ms]':>10}"
        lines = [f"n={self.n} h={self.h} queries={self.query_count}", head]
        for r in self.rows:
            lines.append(
                f"{r.algorithm:<12} {r.t_prepro:>12.4f} {r.t_queries:>13.4f} "
                f"{r.t_total:>11.4f} {self.avg_ms(r):>10.3f}"
            )
        return "\n".join(lines)

    def lines(self, counters: bool = True) -> List[str]:
        out = [f"n={self.n}", f"h={self.h}", f"queries={self.query_count}", f"verified={str(self.verified).lower()}"]
        for r in self.rows:
            a = r.algorithm
            out += [
                f"{a}.T_PrePro={r.t_prepro:.6f}",
                f"{a}.T_Queries={r.t_queries:.6f}",
                f"{a}.T_Total={r.t_total:.6f}",
                f"{a}.Avg={self.avg_ms(r):.6f}",
            ]
            if counters:
                out += [f"{a}.{k}={v}" for k, v in sorted(r.counters.items())]
        return out


_worker: Optional[Solver] = None


def _init_worker(name, wkt):
    global _worker
    _worker = Solver(name, parse_wkt(wkt, check=False))
    _worker.prepare()


def _work(args):
    q, mode = args
    _worker.counters = {}
    v = _worker.query(q, mode)
    return v, dict(_worker.counters)


def _run_once(name, poly, queries, mode, jobs):
    solver = Solver(name, poly)
    t0 = time.perf_counter()
    solver.prepare()
    t1 = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(jobs, initializer=_init_worker, initargs=(name, emit_wkt(poly))) as ex:
            t1 = time.perf_counter()
            results = list(ex.map(_work, [(q, mode) for q in queries], chunksize=max(1, len(queries) // (4 * jobs))))
        outputs = [v for v, _ in results]
        for _, c in results:
            for k, val in c.items():
                if k == "peak_bits":
                    solver.counters[k] = max(solver.counters.get(k, 0), val)
                else:
                    solver._add(k, val)
    else:
        outputs = [solver.query(q, mode) for q in queries]
    t2 = time.perf_counter()
    return AlgorithmRow(name, t1 - t0, t2 - t1, dict(solver.counters)), outputs


def run_bench(
    poly: PolygonWithHoles,
    algorithms: Sequence[str],
    queries: Sequence,
    repeat: int = 1,
    mode: AntennaMode = AntennaMode.INCLUDE,
    verify: bool = True,
    jobs: int = 1,
) -> BenchReport:
    """Time each algorithm on all queries; raise VerificationError on disagreement."""
    rows = []
    reference = None
    for name in algorithms:
        best = None
        outputs = None
        for _ in range(max(1, repeat)):
            row, outs = _run_once(name, poly, queries, mode, jobs)
            if best is None or row.t_total < best.t_total:
                best = row
            outputs = outs
        rows.append(best)
        if verify:
            if reference is None:
                reference = (name, outputs)
            else:
                for q, a, b in zip(queries, reference[1], outputs):
                    if a != b:
                        raise VerificationError(
                            f"{reference[0]} and {name} disagree at q={q}: {emit_wkt(a)} vs {emit_wkt(b)}"
                        )
    return BenchReport(poly.n, poly.h, len(queries), rows, verify and len(algorithms) > 1)
