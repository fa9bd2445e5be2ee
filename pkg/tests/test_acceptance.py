"""Acceptance criteria 1-10, one test each.

Every test prints a single line ``criterion N PASS|FAIL (elapsed / limit) title: detail``
to the terminal, even under output capture.  Run this file alone with
``pytest tests/test_acceptance.py -v`` or as a script.
"""

import sys
import time

import pytest

from tordiff.algebra import make_algebra, morphism
from tordiff.field import CoeffField
from tordiff.kaehler import is_torsion, omega_presentation, prune, pullback, torsion_submodule
from tordiff.poly import format_poly
from tordiff.scenarios import run_scenario
from tordiff.selfcheck import (
    derivation_suite,
    gb_suite,
    syzygy_bruteforce_suite,
    torsion_bruteforce_suite,
    torsion_exhaustive_suite,
)

F2 = CoeffField(2)


def emit(line, capsys=None):
    if capsys is None:
        print(line)
        return
    with capsys.disabled():
        sys.stdout.write("\n" + line + "\n")


def criterion(n, title, limit, fn, capsys=None):
    """``fn`` returns ``(ok, detail)``; the per-instance time limit is applied inside when needed."""
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # an engine error is a failed criterion, reported with its message
        ok, detail = False, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        ok, detail = False, f"{detail}; over the {limit} s limit"
    bound = f"{limit} s" if limit is not None else "per instance"
    emit(f"criterion {n:>2} {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s / {bound}) {title}: {detail}", capsys)
    return ok


def scenario_checks(name, params, ids, limit=None):
    """Run a scenario and require the named checks (all checks if ``ids`` is None) to pass."""
    t0 = time.perf_counter()
    report = run_scenario(name, params)
    elapsed = time.perf_counter() - t0
    checks = [c for c in report.checks if ids is None or c.id in ids]
    missing = set(ids or ()) - {c.id for c in checks}
    bad = [c.id for c in checks if c.status != "pass"] + sorted(missing)
    if limit is not None and elapsed >= limit:
        bad.append(f"time {elapsed:.2f} s >= {limit} s")
    return not bad, bad, {c.id: c.witness for c in checks}


def whitney():
    return make_algebra(F2, ["x", "y", "z"], ["y^2 - x*z^2"], "image of F2[u^2, u*z, z]")


# ---------------------------------------------------------------------------


def c1():
    ok, bad, w = scenario_checks("whitney_torsion", {"p": 2}, ["torsion_generator", "quotient_free_rank_2"])
    M = omega_presentation(whitney())
    T = torsion_submodule(M)
    Q = prune(T.quotient).module
    direct = (T.describe() == ["z^2 * dx = 0"] and format_poly(T.generators[0].witness) == "z^2"
              and Q.is_free and Q.rank == 2)
    return ok and direct, f"{w.get('torsion_generator')}; quotient free of rank {Q.rank}" + (f"; failed {bad}" if bad else "")


def c2():
    ok, bad, w = scenario_checks("whitney_torsion", {"p": 2}, ["pullback_dx", "pullback_not_torsion"])
    L = make_algebra(F2, ["x"])
    d = pullback(morphism(whitney(), L, ["x", "0", "0"]))
    img = d.apply(d.source.gen("dx"))
    direct = d.target.equal(img, d.target.gen("dx")) and is_torsion(img, d.target) is None
    return ok and direct, f"dx -> {d.target.format(img)}, is_torsion absent" + (f"; failed {bad}" if bad else "")


def c3():
    ok, bad, w = scenario_checks("whitney_cdh", {"p": 2}, ["d_u2_zero", "pullback_kills_dx"])
    U = make_algebra(F2, ["u", "z"])
    d = pullback(morphism(whitney(), U, ["u^2", "u*z", "z"]))
    direct = not d.apply(d.source.gen("dx"))
    return ok and direct, f"{w.get('pullback_kills_dx')}" + (f"; failed {bad}" if bad else "")


def c4():
    ok, bad, w = scenario_checks("whitney_cdh", {"p": 2}, ["beta_zero", "kernel_element_nonzero"])
    return ok, f"{w.get('beta_zero')}; {w.get('kernel_element_nonzero')}" + (f"; failed {bad}" if bad else "")


def sweep(name, grid, limit):
    failed = []
    for params in grid:
        ok, bad, _ = scenario_checks(name, params, None, limit)
        if not ok:
            failed.append((params, bad))
    return not failed, f"{len(grid)} instances" + (f"; failed {failed}" if failed else " all pass")


def c5():
    return sweep("h_vanishing", [{"p": p, "m": p, "a": "x"} for p in (2, 3, 5)], 1)


def c6():
    return sweep("sdh_failure", [{"p": p, "n": n} for p in (2, 3, 5) for n in range(1, 5)], 5)


def c7():
    return sweep("salt_failure", [{"p": p, "n": n} for p in (2, 3) for n in (2, 3, 4)], 10)


def c8():
    return sweep("nilpotent_torsion", [{"p": p} for p in (2, 3, 5, 7)], 1)


def c9():
    ok, bad, w = scenario_checks("hyperplane_criterion", {"p": 2}, None)
    return ok, f"{w.get('injective_on_torsion')}" + (f"; failed {bad}" if bad else "")


def c10():
    suites = [
        gb_suite(0, 100),
        derivation_suite(0, 100),
        syzygy_bruteforce_suite(count=60),
        torsion_bruteforce_suite(),
        torsion_exhaustive_suite(),
    ]
    bad = [f"{s.name}: {s.failures[:3]}" for s in suites if not s.passed]
    return not bad, "; ".join(str(s) for s in suites) + (f"; failed {bad}" if bad else "")


CRITERIA = [
    (1, "Whitney torsion generated by dx, annihilator z^2, quotient free of rank 2", 1, c1),
    (2, "pull-back of dx to F2[x] is dx and not torsion", 1, c2),
    (3, "blow-up kills dx: d(u^2) = 0", 1, c3),
    (4, "cdh-torsion: beta(0 ⊕ dx) = 0 with zero blow-up component", 1, c4),
    (5, "h-vanishing of dx for p in 2, 3, 5 and m = p", 1, c5),
    (6, "sdh failure for p in 2, 3, 5 and n in 1..4", None, c6),
    (7, "s-alt failure for p in 2, 3 and n in 2..4", None, c7),
    (8, "torsion on k[x,y]/(x^2, x*y) is not torsion on k[x]/(x^2)", 1, c8),
    (9, "hyperplane criterion on Whitney with h = x - z", 2, c9),
    (10, "engine property suites", 60, c10),
]


@pytest.mark.parametrize("n,title,limit,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, title, limit, fn, capsys):
    assert criterion(n, title, limit, fn, capsys)


if __name__ == "__main__":
    results = [criterion(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
