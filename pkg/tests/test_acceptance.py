"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line (also collected into the pytest
terminal summary) and then asserts on the same condition.
"""

import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from gravbounds import bounds, specfun
from gravbounds.bounds import SystemParams, gaussian_objective
from gravbounds.cli import main
from gravbounds.errors import NoMinimumError
from gravbounds.jacobi import build_geometry, check_representability
from gravbounds.sweep import read_csv
from gravbounds.verify import (
    nr_oscillator_check,
    onebody_gaussian_upper,
    optimize_scale,
    triangle_inequality_sample,
)

PINNED_SPECTRAL = {0.1: 0.9949476260992882, 0.3: 0.9505822917911646, 0.45: 0.8736301494374696}


def report(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2} {title}: {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def raw(N, v):
    return SystemParams.raw(N, float(v))


def test_criterion_01_g_identity():
    t0 = time.perf_counter()
    xs = np.geomspace(1e-3, 50.0, 50)
    dev = max(abs(specfun.g(x) - specfun.g_quadrature(x)) / specfun.g(x) for x in xs)
    elapsed = time.perf_counter() - t0
    report(1, "g identity", dev <= 1e-8 and elapsed < 1.0, f"max rel dev {dev:.2e} (tol 1e-8), {elapsed:.3f}s (< 1s)")


def test_criterion_02_n2_coincidence():
    vs = np.linspace(0.0, 1.0, 102)[1:-1]
    dev = max(abs(bounds.simple_lower(raw(2, v)).value - bounds.improved_lower(raw(2, v)).value) for v in vs)
    tol = 1e-12 * 2 * 1.0
    report(2, "N = 2 coincidence", dev <= tol, f"max |SL - L| {dev:.2e} over 100 v (tol {tol:.0e})")


def test_criterion_03_ordering():
    bad = []
    for N in range(3, 11):
        for v in np.linspace(0.0, 1.0 / (N - 1), 52)[1:-1]:
            p = raw(N, v)
            sl = bounds.simple_lower(p).value
            il = bounds.improved_lower(p).value
            gu = bounds.gaussian_upper(p).value
            if not (sl < il < gu):
                bad.append((N, float(v)))
    report(3, "bound ordering", not bad, f"SL < L < U on 8 x 50 points, {len(bad)} violations")


def test_criterion_04_martin_roy_dominates():
    vs = np.linspace(0.0, 0.5, 102)[1:-1]
    gaps = [bounds.martin_roy_lower(1.0, v).value - bounds.herbst_lower(1.0, v).value for v in vs]
    report(4, "Martin-Roy >= Herbst", min(gaps) > 0, f"min gap {min(gaps):.3e} over 100 v in (0, 0.5)")


def test_criterion_05_small_coupling_parabolas():
    spreads = []
    for N in (2, 5, 20):
        lam = (N - 1) / N
        lower, upper = [], []
        for c in (0.05, 0.1, 0.2):
            p = SystemParams.rescaled(N, c)
            lower.append(abs(bounds.improved_lower(p).value / N - (1 - lam * c * c / 16)) / c**4)
            upper.append(abs(bounds.gaussian_upper(p).value / N - (1 - lam * c * c / (6 * math.pi))) / c**4)
        for ratios in (lower, upper):
            spreads.append(max(ratios) / min(ratios) - 1)
    worst = max(spreads)
    report(5, "small-coupling parabolas", worst < 0.5, f"max spread of residual/c^4 {worst:.2%} (< 50%)")


def test_criterion_06_free_limit():
    worst = 0.0
    for N in (2, 5, 50):
        p = raw(N, 1e-6)
        for fn in (bounds.simple_lower, bounds.improved_lower, bounds.gaussian_upper):
            worst = max(worst, abs(fn(p).value / N - 1))
    report(6, "free limit", worst <= 1e-3, f"max |E/(N m) - 1| {worst:.2e} at v = 1e-6 (tol 1e-3)")


def test_criterion_07_minimizer_vs_grid():
    worst = 0.0
    mus = np.arange(1e-4, 60.0, 1e-4)
    for N, v in ((2, 0.5), (5, 0.2), (6, 0.1)):
        a = math.sqrt(N * (N - 1) / 2) * v
        grid_min = N * math.sqrt(2 / math.pi) * float(np.min(gaussian_objective(mus, a)))
        value = bounds.gaussian_upper(raw(N, v)).value
        worst = max(worst, abs(value - grid_min) / grid_min)
    signals = []
    for a in (0.0, 2.0, 2.5):
        try:
            bounds.minimize_gaussian_objective(a)
            signals.append(False)
        except NoMinimumError:
            signals.append(True)
    ok = worst <= 1e-6 and all(signals)
    report(7, "minimizer vs grid", ok, f"max rel dev {worst:.2e} (tol 1e-6); no-minimum raised for a = 0, 2, 2.5: {all(signals)}")


def test_criterion_08_spectral_sandwich():
    t0 = time.perf_counter()
    ok = True
    parts = []
    for v, pinned in PINNED_SPECTRAL.items():
        res = optimize_scale(1.0, v, 40)
        energies = [e for _, e in res.history]
        lower = bounds.martin_roy_lower(1.0, v).value
        upper = onebody_gaussian_upper(1.0, v).value
        monotone = all(b <= a + 1e-12 for a, b in zip(energies, energies[1:]))
        ok = ok and lower <= res.energy <= upper and monotone and abs(res.energy - pinned) <= 1e-8
        parts.append(f"v={v} E={res.energy:.10f}")
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 60
    report(8, "spectral sandwich", ok, f"{'; '.join(parts)}; {elapsed:.1f}s (< 60s)")


def test_criterion_09_jacobi_and_triangle():
    dev = 0.0
    ok = True
    for N in range(2, 51):
        rep = check_representability(build_geometry(N))
        dev = max(dev, rep.max_deviation)
        ok = ok and rep.ok
    tri = triangle_inequality_sample(5, 1.0, 100_000, seed=42)
    ok = ok and dev <= 1e-12 and tri.violations == 0
    report(9, "Jacobi identities and triangle sampler", ok, f"identity dev {dev:.2e} (N <= 50); {tri.violations} violations in 1e5 samples")


def test_criterion_10_oscillator_ratio():
    devs = {N: abs(nr_oscillator_check(N).ratio - math.sqrt(2)) for N in range(2, 21)}
    worst = max(devs, key=devs.get)
    report(
        10,
        "oscillator ratio = sqrt(2)",
        max(devs.values()) <= 1e-12,
        f"max |ratio - sqrt(2)| {devs[worst]:.3e} at N = {worst} (tol 1e-12); ratio at N = 20 is {nr_oscillator_check(20).ratio:.12f}",
    )


def _figure(capsys, flag):
    assert main(["sweep", flag]) == 0
    first = capsys.readouterr().out
    assert main(["sweep", flag]) == 0
    second = capsys.readouterr().out
    return first, second


def _figure_problems(recs):
    problems = []
    curves = {}
    for r in recs:
        if r["valid"]:
            curves.setdefault((r["N"], r["kind"]), []).append((r["coupling"], r["value"]))
    for key, pts in curves.items():
        values = [val for _, val in sorted(pts)]
        if not all(b < a for a, b in zip(values, values[1:])):
            problems.append(f"{key} not strictly decreasing")
    points = {}
    for r in recs:
        if r["valid"]:
            points.setdefault((r["N"], r["coupling"]), {})[r["kind"]] = r["value"]
    for (N, c), vals in points.items():
        sl, il, gu = (vals.get(k) for k in ("simple_lower", "improved_lower", "gaussian_upper"))
        if N == 2 and sl is not None and il is not None and abs(sl - il) > 1e-12 * N:
            problems.append(f"N=2 c={c} SL != L")
        if N > 2 and sl is not None and il is not None and not sl < il:
            problems.append(f"N={N} c={c} SL >= L")
        if il is not None and gu is not None and not il < gu:
            problems.append(f"N={N} c={c} L >= U")
    return problems


@pytest.mark.parametrize("flag", ["--figure1", "--figure2"])
def test_criterion_11_figure_reproduction(capsys, flag):
    first, second = _figure(capsys, flag)
    recs = read_csv(first)
    problems = _figure_problems(recs)
    if first != second:
        problems.append("runs differ")
    detail = f"{len(recs)} rows, byte-identical: {first == second}, {len(problems)} problems"
    if problems:
        detail += f" (first: {problems[0]})"
    report(11, f"figure reproduction {flag}", not problems, detail)
