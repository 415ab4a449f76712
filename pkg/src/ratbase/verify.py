"""Named verification campaigns with JSON-ready reports.

Each suite walks a finite range of states (or a seeded random sample) and
checks one statement about T, T-hat and the derived transducer.  Ranges are
split into shards for a thread pool; shard results are merged in order so a
report only depends on the base and the bounds.
"""
from __future__ import annotations

import random
import shlex
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from .automata import find_that_unreachable, minimal_word, tree_That
from .errors import InternalInconsistency, PreconditionViolated
from .numeration import RationalBase, format_word
from .spans import (density_report, omega_m_kernel, value_witness, verify_dpq_to_spq,
                    verify_that_complete)
from .transducer import (apply, apply_stream, graphs_coincide, run_search, step_closed_form,
                         step_substitution, substitution_candidates, verify_shift_property)

SCHEMA = 1

DEFAULTS = {
    "mpq-correct": {"n_max": 1000, "k": 128},
    "mpq-cc": {"n_max": 1000, "k": 32, "samples": 50, "length": 4, "budget": 10 ** 4},
    "that-complete": {"n_max": 1000, "k": 64},
    "dpq-to-spq": {"n_max": 500, "k": 64},
    "seqic": {"n_max": 10 ** 4},
    "dpq-caract-equiv": {"n_max": 10 ** 4},
    "shift": {"n_max": 500, "samples": 1000, "length": 12},
    "cantor": {"n_max": 20},
    "val-equal": {"samples": 1000, "length": 10},
    "density": {"n_max": 10 ** 4},
    "graph": {"n_max": 10 ** 4},
}

SUITES = tuple(DEFAULTS)


@dataclass
class SuiteReport:
    suite: str
    base: RationalBase
    params: dict
    checked: int = 0
    violations: int = 0
    first_counterexample: Optional[dict] = None
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "base": [self.base.p, self.base.q],
            "params": self.params,
            "checked": self.checked,
            "violations": self.violations,
            "ok": self.ok,
            "first_counterexample": self.first_counterexample,
            "extra": self.extra,
        }


def replay_command(suite: str, base: RationalBase, **params) -> str:
    args = ["ratbase", "verify", suite, "-p", str(base.p), "-q", str(base.q)]
    for key, value in params.items():
        if value is None:
            continue
        args += ["--" + key.replace("_", "-"), str(value)]
    return shlex.join(args)


def _campaign(report: SuiteReport, items: Iterable, check: Callable[[object], Optional[dict]],
              jobs: int = 1, replay: Optional[Callable[[object], str]] = None) -> SuiteReport:
    items = list(items)
    jobs = max(1, min(jobs, len(items) or 1))

    def run(shard):
        checked, bad, first = 0, 0, None
        for item in shard:
            checked += 1
            cex = check(item)
            if cex is not None:
                bad += 1
                if first is None:
                    first = dict(cex)
                    if replay is not None:
                        first["replay"] = replay(item)
        return checked, bad, first

    size = max(1, -(-len(items) // jobs))
    shards = [items[i:i + size] for i in range(0, len(items), size)] or [[]]
    if jobs == 1:
        results = [run(s) for s in shards]
    else:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(run, shards))
    for checked, bad, first in results:
        report.checked += checked
        report.violations += bad
        if report.first_counterexample is None and first is not None:
            report.first_counterexample = first
    return report


def _range(params) -> range:
    return range(params.get("n_min", 0), params["n_max"] + 1)


def _single(suite, base, params):
    # replay one state of a range suite
    def replay(n):
        extra = {k: v for k, v in params.items() if k not in ("n_min", "n_max", "jobs")}
        return replay_command(suite, base, n_min=n, n_max=n, **extra)
    return replay


def suite_mpq_correct(base, params):
    k = params["k"]

    def check(n):
        image = apply_stream(base, minimal_word(base, n)).digits(k)
        target = minimal_word(base, n + 1).digits(k)
        if image != target:
            pos = next(i for i, (x, y) in enumerate(zip(image, target)) if x != y)
            return {"n": n, "position": pos, "image": format_word(image),
                    "expected": format_word(target)}
        return None

    return check, _range(params)


def suite_that_complete(base, params):
    k = params["k"]

    def check(n):
        r = verify_that_complete(base, n, k)
        return None if r.holds else r.detail

    return check, _range(params)


def suite_dpq_to_spq(base, params):
    k = params["k"]

    def check(n):
        r = verify_dpq_to_spq(base, n, k)
        return None if r.holds else r.detail

    return check, _range(params)


def suite_seqic(base, params):
    def check(n):
        for b in range(base.q):
            found = substitution_candidates(base, n, b)
            if len(found) != 1:
                return {"n": n, "input": b, "candidates": [list(c) for c in found]}
        return None

    return check, _range(params)


def suite_caract_equiv(base, params):
    def check(n):
        for b in range(base.q):
            x, y = step_substitution(base, n, b), step_closed_form(base, n, b)
            if x != y:
                return {"n": n, "input": b, "substitution": list(x), "closed_form": list(y)}
        return None

    return check, _range(params)


def suite_shift(base, params):
    rng = random.Random(params.get("seed", 0))
    samples = []
    for _ in range(params["samples"]):
        n = rng.randint(0, params["n_max"])
        i = rng.randint(0, params["n_max"])
        length = rng.randint(0, params["length"])
        samples.append((n, i, minimal_word(base, n).digits(length)))

    def check(sample):
        n, i, u = sample
        r = verify_shift_property(base, n, i, u)
        if r.holds:
            return None
        return {"n": n, "i": i, "word": format_word(u), "violations": r.violations}

    return check, samples


def suite_cantor(base, params):
    if base.p <= 2 * base.q:
        raise PreconditionViolated(f"cantor needs p > 2q, got {base}")

    def check(n):
        try:
            find_that_unreachable(base, n)
        except InternalInconsistency as exc:
            return {"n": n, "error": str(exc)}
        return None

    return check, _range(params)


def random_that_word(base: RationalBase, rng: random.Random, length: int) -> list[int]:
    """Random walk of the given length from 0 in T-hat."""
    that = tree_That(base)
    s, word = 0, []
    for _ in range(length):
        a, s = rng.choice(that.successors(s))
        word.append(a)
    return word


def suite_val_equal(base, params):
    if base.p >= 2 * base.q - 1:
        raise PreconditionViolated(f"val-equal needs p < 2q - 1, got {base}")
    rng = random.Random(params.get("seed", 0))
    words = [random_that_word(base, rng, rng.randint(0, params["length"]))
             for _ in range(params["samples"])]

    def check(u):
        try:
            value_witness(base, u)
        except Exception as exc:  # any failure is a counterexample
            return {"word": format_word(u), "error": repr(exc)}
        return None

    return check, words


def suite_graph(base, params):
    def check(n):
        same, missing, extra = graphs_coincide_at(base, n)
        if not same:
            return {"n": n, "only_in_that": sorted(missing), "only_in_transducer": sorted(extra)}
        return None

    return check, _range(params)


def graphs_coincide_at(base, n):
    that = {m for _a, m in tree_That(base).successors(n)}
    d = {m for b in range(base.q) for _a, _c, m in substitution_candidates(base, n, b)}
    return that == d, that - d, d - that


_RANGE_SUITES = {
    "mpq-correct": suite_mpq_correct,
    "that-complete": suite_that_complete,
    "dpq-to-spq": suite_dpq_to_spq,
    "seqic": suite_seqic,
    "dpq-caract-equiv": suite_caract_equiv,
    "cantor": suite_cantor,
    "graph": suite_graph,
}


def run_suite(suite: str, base: RationalBase, jobs: int = 1, **overrides) -> SuiteReport:
    """Run a named suite; unknown names raise KeyError, unmet preconditions PreconditionViolated."""
    if suite not in DEFAULTS:
        raise KeyError(suite)
    params = dict(DEFAULTS[suite])
    params.update({k: v for k, v in overrides.items() if v is not None})
    report = SuiteReport(suite, base, params)

    if suite in _RANGE_SUITES:
        check, items = _RANGE_SUITES[suite](base, params)
        _campaign(report, items, check, jobs, _single(suite, base, params))
        if suite == "dpq-to-spq":
            bad = omega_m_kernel(base)
            report.checked += len(base.balanced_alphabet)
            report.violations += len(bad)
            report.extra["omega_m_kernel_failures"] = bad
        if suite == "graph":
            same, _, _ = graphs_coincide(base, params["n_max"])
            report.extra["edge_sets_equal"] = same
        return report

    if suite == "shift":
        check, items = suite_shift(base, params)
        return _campaign(report, items, check, jobs,
                         lambda _s: replay_command(suite, base, **params))
    if suite == "val-equal":
        check, items = suite_val_equal(base, params)
        return _campaign(report, items, check, jobs,
                         lambda _s: replay_command(suite, base, **params))
    if suite == "mpq-cc":
        return _mpq_cc(report, base, params, jobs)
    if suite == "density":
        return _density(report, base, params)
    raise AssertionError(suite)


def _mpq_cc(report, base, params, jobs):
    # forward direction: every (prefix of w(n), prefix of w(n+1)) is a run from 0
    k = params["k"]

    def check(n):
        u = minimal_word(base, n).digits(k)
        v = minimal_word(base, n + 1).digits(k)
        for length in range(k + 1):
            image, _ = apply(base, 0, u[:length])
            if image != v[:length]:
                return {"n": n, "length": length, "image": format_word(image),
                        "expected": format_word(v[:length])}
        return None

    _campaign(report, _range(params), check, jobs, _single("mpq-cc", base, params))
    # converse, budgeted: a run from 0 on u should come from some n
    rng = random.Random(params.get("seed", 0))
    found, missing = 0, []
    for _ in range(params["samples"]):
        u = [rng.randrange(base.q) for _ in range(rng.randint(0, params["length"]))]
        v, _ = apply(base, 0, u)
        n = run_search(base, u, v, params["budget"])
        if n is None:
            missing.append(format_word(u))
        else:
            found += 1
    report.extra["converse_found"] = found
    report.extra["converse_not_found_within_budget"] = missing
    return report


def _density(report, base, params):
    n_max = params["n_max"]
    r = density_report(base, n_max, params.get("k"))
    report.extra["report"] = r.as_dict()
    report.checked = n_max + 1
    report.violations = r.outside_ambient
    if r.certificate is not None and not r.certificate["valid"]:
        report.violations += 1
        report.first_counterexample = {"certificate": r.certificate}
    if base.p < 2 * base.q and n_max >= 100:
        coarse = density_report(base, n_max // 100, r.k)
        report.extra["coarse_n_max"] = n_max // 100
        report.extra["coarse_max_gap_float"] = float(coarse.max_gap)
        report.extra["gap_decreased"] = r.max_gap < coarse.max_gap
    return report
