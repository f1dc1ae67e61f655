"""Run the three routes over a parameter grid and compare what they predict."""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .classifier import OUT_OF_SCOPE, classify
from .construct import K_TYPES, MIN_N, QEParams, realize, validate
from .gamma import gamma_route
from .groups import ResourceLimitError
from .intlattice import AbelianInvariants
from .numtheory import is_prime
from .relations import oracle_bound, prim


@dataclass(frozen=True)
class SweepRanges:
    p_values: tuple[int, ...] = (2, 3)
    q_max: int = 17
    n_max: int = 3
    m_max: int = 3
    k_types: tuple[str, ...] = K_TYPES


def candidate_tuples(ranges: SweepRanges) -> list[QEParams]:
    """Every raw combination in the box, valid or not, in a fixed order.

    ``j`` runs over all units in ``[1, p^n]`` and ``k`` over ``0 .. 2^n - 1``.
    """
    out = []
    for p in sorted(ranges.p_values):
        for q in (x for x in range(2, ranges.q_max + 1) if is_prime(x) and x != p):
            for kt in ranges.k_types:
                if kt != "cyclic" and p != 2:
                    continue
                for n, m in product(range(MIN_N[kt], ranges.n_max + 1), range(1, ranges.m_max + 1)):
                    size = p ** n
                    js = [j for j in range(1, size + 1) if gcd(j, p) == 1] if n else [1]
                    ks = range(2 ** n) if kt != "cyclic" else [None]
                    out.extend(QEParams(p, q, kt, n, m, j, k) for j in js for k in ks)
    return out


@dataclass
class SweepRecord:
    params: QEParams
    verdict: dict | None = None
    gamma: dict | None = None
    oracle: dict | None = None
    routes_agree: bool = True
    skipped: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def predictions(self) -> dict[str, list[int]]:
        out = {}
        if self.verdict and self.verdict["status"] != OUT_OF_SCOPE:
            out["classifier"] = self.verdict["invariants"]
        if self.gamma and self.gamma.get("invariants") is not None:
            out["gamma"] = self.gamma["invariants"]
        if self.oracle and self.verdict and self.verdict["status"] != OUT_OF_SCOPE:
            out["oracle"] = self.oracle["invariants"]
        return out

    def to_json(self, timings: bool = True) -> dict:
        d = {
            "params": self.params.to_dict(),
            "verdict": self.verdict,
            "gamma_prediction": self.gamma,
            "oracle_prim": self.oracle,
            "routes_agree": self.routes_agree,
            "skipped": self.skipped,
            "errors": self.errors,
        }
        if timings:
            d["timings"] = self.timings
        return d


def _short_verdict(v) -> dict:
    return {"status": v.status, "case": v.matched_case, "invariants": None if v.invariants is None else v.invariants.to_list()}


def run_tuple(params: QEParams, bound: int, include_klein: bool = False, gamma_cache: dict | None = None) -> SweepRecord:
    rec = SweepRecord(params)
    problems = validate(params)
    if problems:
        rec.skipped = [f"validation: {s}" for s in problems]
        return rec
    clock = time.perf_counter()
    try:
        rec.verdict = _short_verdict(classify(params))
    except Exception as exc:  # recorded, never fatal
        rec.errors.append(f"classifier: {exc!r}")
    rec.timings["classifier"] = round(time.perf_counter() - clock, 4)

    real = realize(params)
    clock = time.perf_counter()
    # the graph depends on P only, which does not involve q
    key = (params.p, params.k_type, params.n, params.m, params.j, params.k, include_klein)
    try:
        if gamma_cache is not None and key in gamma_cache:
            rec.gamma = gamma_cache[key]
        else:
            g = gamma_route(real, include_klein)
            rec.gamma = {"applicability": g.applicability.value, "d": g.d,
                         "invariants": None if g.prediction is None else g.prediction.to_list()}
            if gamma_cache is not None:
                gamma_cache[key] = rec.gamma
        if rec.gamma["invariants"] is None:
            rec.skipped.append(f"gamma: {rec.gamma['applicability']}")
    except Exception as exc:
        rec.errors.append(f"gamma: {exc!r}")
    rec.timings["gamma"] = round(time.perf_counter() - clock, 4)

    clock = time.perf_counter()
    if params.order > bound:
        rec.skipped.append(f"oracle: order {params.order} exceeds bound {bound}")
    else:
        try:
            rec.oracle = {"invariants": prim(real.group, bound=bound).invariants.to_list()}
        except ResourceLimitError as exc:
            rec.skipped.append(f"oracle: {exc}")
        except Exception as exc:
            rec.errors.append(f"oracle: {exc!r}")
    rec.timings["oracle"] = round(time.perf_counter() - clock, 4)

    preds = rec.predictions()
    values = [tuple(v) for v in preds.values()]
    rec.routes_agree = not rec.errors and len(set(values)) <= 1
    return rec


@dataclass
class SweepReport:
    records: list[SweepRecord]
    oracle_bound: int
    include_klein: bool
    elapsed: float = 0.0

    @property
    def summary(self) -> dict:
        valid = [r for r in self.records if r.verdict is not None]
        compared = [r for r in valid if len(r.predictions()) >= 2]
        reasons: dict[str, int] = {}
        for r in self.records:
            for s in r.skipped:
                tag = s.split(":", 1)[0] + ": " + _reason_class(s)
                reasons[tag] = reasons.get(tag, 0) + 1
        return {
            "tuples": len(self.records),
            "valid": len(valid),
            "compared": len(compared),
            "agreements": sum(r.routes_agree for r in compared),
            "disagreements": sum(not r.routes_agree for r in self.records),
            "skipped": dict(sorted(reasons.items())),
        }

    def disagreements(self) -> list[SweepRecord]:
        return [r for r in self.records if not r.routes_agree]

    def to_json(self, timings: bool = True) -> dict:
        d = {
            "oracle_bound": self.oracle_bound,
            "gamma_dihedral_includes_klein": self.include_klein,
            "summary": self.summary,
            "records": [r.to_json(timings) for r in self.records],
        }
        if timings:
            d["elapsed_seconds"] = round(self.elapsed, 2)
        return d

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "q", "k_type", "n", "m", "j", "k", "status", "case", "classifier", "gamma_d",
                    "gamma", "oracle", "routes_agree", "skipped"])
        for r in self.records:
            pa, v, g, o = r.params, r.verdict or {}, r.gamma or {}, r.oracle or {}
            w.writerow([pa.p, pa.q, pa.k_type, pa.n, pa.m, pa.j, "" if pa.k is None else pa.k,
                        v.get("status", ""), "" if v.get("case") is None else v["case"],
                        _fmt(v.get("invariants")), "" if g.get("d") is None else g["d"],
                        _fmt(g.get("invariants")), _fmt(o.get("invariants")), r.routes_agree,
                        "; ".join(r.skipped + r.errors)])
        return buf.getvalue()


def _reason_class(s: str) -> str:
    body = s.split(":", 1)[1].strip()
    return "order exceeds bound" if "exceeds bound" in body else body


def _fmt(inv) -> str:
    if inv is None:
        return ""
    return str(AbelianInvariants.from_diagonal(inv))


def _worker(args) -> SweepRecord:
    params, bound, include_klein = args
    return run_tuple(params, bound, include_klein)


def run_sweep(ranges: SweepRanges, bound: int | None = None, include_klein: bool = False,
              workers: int = 1, progress=None) -> SweepReport:
    """Evaluate every tuple; output order is the order of :func:`candidate_tuples`."""
    bound = oracle_bound() if bound is None else bound
    tuples = candidate_tuples(ranges)
    start = time.perf_counter()
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_worker, [(t, bound, include_klein) for t in tuples], chunksize=4))
    else:
        cache: dict = {}
        records = []
        for i, t in enumerate(tuples):
            records.append(run_tuple(t, bound, include_klein, cache))
            if progress:
                progress(i + 1, len(tuples), records[-1])
    return SweepReport(records, bound, include_klein, time.perf_counter() - start)
