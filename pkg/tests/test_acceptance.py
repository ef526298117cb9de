"""Acceptance criteria, one test each; every test logs a PASS/FAIL line."""

import math
import random
import time

import pytest

from battery import positive_codimension, random_alpha, random_instances, small_battery
from toric_height.engine import canonical_height
from toric_height.geometry import toric_degree
from toric_height.oracle import mahler_hypersurface_height, mc_polycircle
from toric_height.toric import binomial_generators, lift_config, validate_config

BATTERY = small_battery()
CONIC = validate_config([(0,), (1,), (2,)])


def _battery_with_alpha(seed=2024):
    rng = random.Random(seed)
    return [(A, random_alpha(rng, A.n + 1)) for A in positive_codimension(BATTERY)]


def _regression_battery():
    desk = [
        (CONIC, (1, 1, 1)), (CONIC, (2, 1, 1)), (CONIC, (3, 1, 1)),
        (CONIC, (1, 1, 2)), (CONIC, (2, 3, 5)),
        (validate_config([(0,), (1,), (2,), (3,)]), (2, 3, 5, 7)),
        (validate_config([(0, 0), (1, 0), (0, 1), (1, 1)]), (2, 3, 5, 7)),
    ]
    return desk + random_instances(20, seed=5, max_n=5)


def _record(log, tag, ok, detail):
    line = f"{tag}: {'PASS' if ok else 'FAIL'}  {detail}"
    log.append(line)
    print(line)
    return ok


def test_ac1_zero_height_law(acceptance_log):
    start = time.perf_counter()
    nonzero = []
    for A in BATTERY:
        h = canonical_height(A, [1] * (A.n + 1)).value
        if not h.is_zero():
            nonzero.append((A.points, str(h)))
    elapsed = time.perf_counter() - start
    ok = not nonzero and elapsed < 60
    dims = sorted({A.d for A in BATTERY})
    _record(acceptance_log, "AC1 zero-height law (exact)", ok,
            f"{len(BATTERY)} configs, d in {dims}, n <= {max(A.n for A in BATTERY)}, "
            f"{len(nonzero)} nonzero, {elapsed:.1f} s (limit 60 s)")
    assert ok, nonzero[:5]


def test_ac2_terminal_height_zero(acceptance_log):
    traces = 0
    bad = []
    for A, alpha in _battery_with_alpha() + random_instances(50, seed=3):
        rep = canonical_height(A, alpha)
        for ev in rep.chain[-1:]:
            traces += 1
            if not ev.next_height.is_zero():
                bad.append(A.points)
    ok = not bad
    _record(acceptance_log, "AC2 base case h(P^n) = 0 (exact)", ok,
            f"{traces} traces, {len(bad)} with nonzero terminal height")
    assert ok


def test_ac3_conic(acceptance_log):
    (g,) = binomial_generators(CONIC)
    plus, minus = g.homogenized()
    gens_ok = {plus, minus} == {(0, 2, 0), (1, 0, 1)}
    deg = toric_degree(CONIC)
    ok = gens_ok and deg == 2
    _record(acceptance_log, "AC3 conic generators and degree (exact)", ok,
            f"generator {g}, toric_degree {deg}")
    assert ok


def test_ac4_mass_balance(acceptance_log):
    start = time.perf_counter()
    instances = random_instances(220, seed=4, max_n=5)
    steps = 0
    bad = []
    for A, alpha in instances:
        rep = canonical_height(A, alpha)
        for ev in rep.chain:
            steps += 1
            total = sum(v.local_degree for v in ev.measure.atoms)
            if total != toric_degree(ev.step.lifted):
                bad.append((A.points, alpha, total))
    elapsed = time.perf_counter() - start
    ok = not bad and len(instances) >= 200 and elapsed < 300
    _record(acceptance_log, "AC4 mass balance (exact integer)", ok,
            f"{len(instances)} instances, {steps} steps, {len(bad)} imbalanced, "
            f"{elapsed:.1f} s (limit 300 s)")
    assert ok, bad[:3]


@pytest.mark.slow
def test_ac5_jensen_vs_monte_carlo(acceptance_log):
    start = time.perf_counter()
    checked = 0
    worst = 0.0
    bad = []
    for A, alpha in _regression_battery():
        rep = canonical_height(A, alpha)
        for ev in rep.chain:
            for i, (v, c) in enumerate(zip(ev.measure.atoms, ev.contributions)):
                est = mc_polycircle(v, ev.step.section, ev.step.lifted, rep.alpha,
                                    samples=10**6, seed=1000 + i, workers=4)
                checked += 1
                ratio = abs(float(c) - est.mean) / est.tolerance()
                worst = max(worst, ratio)
                if not est.agrees(c):
                    bad.append((A.points, alpha, float(c), est.mean, est.stderr))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 600
    _record(acceptance_log, "AC5 Jensen vs Monte Carlo (3 stderr, 1e6 samples)", ok,
            f"{checked} vertices, worst |diff|/tol {worst:.2f}, {len(bad)} outside, "
            f"{elapsed:.1f} s (limit 600 s)")
    assert ok, bad


@pytest.mark.parametrize("alpha", [(2, 1, 1), (3, 1, 1), (1, 1, 2)])
def test_ac6_hypersurface_diagnostic(acceptance_log, alpha):
    rep = canonical_height(CONIC, alpha)
    mh = mahler_hypersurface_height(CONIC, alpha, samples=10**6, seed=6)
    tol = max(3 * mh.stderr, 1e-3)
    diff = abs(mh.value - float(rep.value))
    ok = diff <= tol
    _record(acceptance_log, f"AC6 Mahler diagnostic alpha={alpha}", ok,
            f"engine {rep.value} = {float(rep.value):.6f}, oracle {mh.value:.6f}, "
            f"|diff| {diff:.2e} <= {tol:.2e}")
    assert ok


def test_ac6_disagreement_is_reported(acceptance_log):
    from toric_height.cli import compute, parse_problem
    problem = parse_problem({"points": [[0], [1], [2]], "alpha": ["2", "2", "2"],
                             "checks": ["mahler"], "mc": {"samples": 10**5}})
    rep = compute(problem)
    kinds = [f["kind"] for f in rep.findings]
    ok = "mahler_disagreement" in kinds and "section_content" in kinds
    _record(acceptance_log, "AC6 disagreement surfaces as a finding", ok,
            f"alpha=(2,2,2): engine {float(rep.value):.4f}, findings {kinds}")
    assert ok


def test_ac7_integrality(acceptance_log):
    runs = 0
    expressible = 0
    violations = []
    for A, alpha in _battery_with_alpha() + random_instances(100, seed=8):
        rep = canonical_height(A, alpha)
        runs += 1
        if rep.height.alpha_basis is not None:
            expressible += 1
            if not rep.height.integral:
                violations.append([f for f in rep.findings
                                   if f["kind"] == "integrality_violation"])
    ok = not violations
    _record(acceptance_log, "AC7 integrality of b", ok,
            f"{runs} exact runs, {expressible} expressible, "
            f"{len(violations)} counterexample candidates")
    assert ok, violations[:3]


def test_ac8_homogeneity(acceptance_log):
    checked = 0
    bad = []
    for A, alpha in _battery_with_alpha(seed=99):
        h = canonical_height(A, alpha).value
        for m in (2, 3):
            checked += 1
            hm = canonical_height(A, [a ** m for a in alpha]).value
            if hm != h * m:
                bad.append((A.points, alpha, m))
    ok = not bad
    _record(acceptance_log, "AC8 homogeneity h(alpha^m) = m h (exact)", ok,
            f"{checked} checks over m in (2, 3), {len(bad)} failures")
    assert ok, bad[:3]
