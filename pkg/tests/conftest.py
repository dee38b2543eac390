"""Shared hypothesis strategies and the acceptance summary report."""

from __future__ import annotations

import random

from hypothesis import settings
from hypothesis import strategies as st

from lamlab import debruijn as db
from lamlab import explicit as es
from lamlab.random_terms import random_es
from lamlab.terms import App, Lam, Var, VarName

settings.register_profile("lamlab", max_examples=200, deadline=None)
settings.load_profile("lamlab")

names = st.builds(VarName, st.sampled_from("xyz"), st.integers(0, 2))


def named_terms(max_leaves: int = 12, var_names=names):
    return st.recursive(
        st.builds(Var, var_names),
        lambda sub: st.one_of(st.builds(App, sub, sub), st.builds(Lam, var_names, sub)),
        max_leaves=max_leaves,
    )


def db_terms(max_index: int = 5, max_leaves: int = 12):
    return st.recursive(
        st.builds(db.Index, st.integers(1, max_index)),
        lambda sub: st.one_of(st.builds(db.App, sub, sub), st.builds(db.Lam, sub)),
        max_leaves=max_leaves,
    )


def es_terms(max_index: int = 4, max_leaves: int = 10, metas: bool = False):
    leaves = st.builds(es.Index, st.integers(1, max_index))
    if metas:
        leaves = leaves | st.builds(es.Meta, st.sampled_from(["X", "Y", "Z"]))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(es.App, sub, sub),
            st.builds(es.Lam, sub),
            st.builds(es.Sigma, st.integers(1, 3), sub, sub),
            st.builds(es.Phi, st.integers(1, 3), st.integers(0, 3), sub),
        ),
        max_leaves=max_leaves,
    )


def closed_peaks(seed, count=300, max_size=10):
    """One-step peaks ``b <- t -> c`` from random closed terms of size <= ``max_size``."""
    rng = random.Random(seed)
    terms = 0
    while terms < count:
        t = random_es(rng, rng.randint(2, max_size), closed=True)
        if es.size(t) > max_size:
            continue
        terms += 1
        succ = es.successors(t, es.Ruleset.LAMBDA_S)
        for i, b in enumerate(succ):
            for c in succ[i + 1 :]:
                yield t, b, c


# ---------------------------------------------------------------------------
# acceptance summary: one PASS/FAIL line per numbered criterion


_CRITERIA: dict[int, dict] = {}
_NODE_CRITERION: dict[str, int] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "criterion(number, title, tolerance): test backing a numbered acceptance criterion"
    )


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        number, title, tolerance = mark.args
        entry = _CRITERIA.setdefault(number, {"title": title, "tolerance": tolerance, "tests": 0, "failed": []})
        entry["tests"] += 1
        _NODE_CRITERION[item.nodeid] = number


def pytest_runtest_logreport(report):
    number = _NODE_CRITERION.get(report.nodeid)
    if number is None:
        return
    entry = _CRITERIA[number]
    if report.when == "call":
        entry.setdefault("ran", 0)
        entry["ran"] += 1
    if report.failed or (report.when == "call" and report.skipped):
        entry["failed"].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        complete = entry.get("ran", 0) == entry["tests"]
        ok = complete and not entry["failed"]
        status = "PASS" if ok else "FAIL"
        line = f"[{status}] criterion {number:2d}: {entry['title']} (tolerance: {entry['tolerance']})"
        if entry["failed"]:
            line += f" failing: {', '.join(entry['failed'])}"
        elif not complete:
            line += " (not all tests ran)"
        terminalreporter.write_line(line)
