"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import random
import time
from fractions import Fraction
from itertools import combinations

from conftest import random_network, random_networks
from nafnet import build_network
from nafnet.fields import LEVI_CIVITA, tau, truncation
from nafnet.ladder import (
    DIVERGING,
    LadderSpec,
    build_finite_ladder,
    cl_preset,
    exhaustion_sequence,
    ladder_closed_form,
    lc_limit,
    lc_preset,
    residual_series,
)
from nafnet.network import admittance_identities, dirichlet_energy, effective_admittance, solve_dirichlet
from nafnet.transforms import delta_y, parallel_series_law, reduce_network, series_law, star_mesh, y_delta

F = Fraction
t = tau()


def test_ac01_levi_civita_inversion(record_criterion):
    start = time.perf_counter()
    inv = (3 - 4 * t + t**2).inverse()
    coefficients_ok = all(inv.coefficient(i - 1) == F(1, 2) - F(1, 2 * 3**i) for i in range(1, 31))
    first_three = [inv.coefficient(k) for k in range(3)] == [F(1, 3), F(4, 9), F(13, 27)]
    elapsed = time.perf_counter() - start
    ok = coefficients_ok and first_three and elapsed < 1
    record_criterion("AC1 inversion of 3 - 4t + t^2, i = 1..30", ok, f"{elapsed:.3f} s")
    assert ok


def _applicable_transforms(net):
    for x in net.interior:
        nbrs = net.neighbors(x)
        if len(nbrs) >= 2:
            yield "star_mesh", star_mesh(net, x)
        if len(nbrs) == 2:
            a, c = sorted(nbrs)
            if c in net.neighbors(a):
                yield "parallel_series", parallel_series_law(net, x)
            else:
                yield "series", series_law(net, x)
        if len(nbrs) == 3:
            yield "y_delta", y_delta(net, x)
    for a, b, c in combinations(net.vertices, 3):
        if b in net.neighbors(a) and c in net.neighbors(b) and c in net.neighbors(a):
            yield "delta_y", delta_y(net, a, b, c, "new")


def test_ac02_transform_invariance(record_criterion):
    start = time.perf_counter()
    counts = {}
    failures = 0
    for net in random_networks(220, seed=2024):
        v = solve_dirichlet(net)
        peff = effective_admittance(net, v)
        for kind, out in _applicable_transforms(net):
            counts[kind] = counts.get(kind, 0) + 1
            w = solve_dirichlet(out)
            if effective_admittance(out, w) != peff or any(w[x] != v[x] for x in out.vertices if x in v):
                failures += 1
    elapsed = time.perf_counter() - start
    every_kind = set(counts) == {"star_mesh", "series", "parallel_series", "y_delta", "delta_y"}
    ok = failures == 0 and every_kind and elapsed < 30
    detail = ", ".join(f"{k} x{n}" for k, n in sorted(counts.items())) + f"; {elapsed:.1f} s"
    record_criterion("AC2 transforms preserve potentials and P_eff on 220 networks", ok, detail)
    assert ok


def test_ac03_y_delta_round_trip(record_criterion):
    rng = random.Random(303)
    bad = 0
    for _ in range(120):
        w = [F(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(3)]
        s = build_network([("d", "a", w[0]), ("d", "b", w[1]), ("d", "c", w[2])], "a", ["b", "c"])
        tri = build_network([("a", "b", w[0]), ("b", "c", w[1]), ("a", "c", w[2])], "a", ["c"])
        bad += delta_y(y_delta(s, "d"), "a", "b", "c", "d") != s
        bad += y_delta(delta_y(tri, "a", "b", "c", "d"), "d") != tri
    ok = bad == 0
    record_criterion("AC3 Y-Delta / Delta-Y round trip on 120 stars and 120 triangles", ok, f"{bad} mismatches")
    assert ok


def test_ac04_admittance_identities(record_criterion):
    nets = random_networks(150, seed=404)
    nets += [build_finite_ladder(LadderSpec(1, 1), n) for n in range(1, 8)]
    nets += [build_finite_ladder(spec, n) for spec in (lc_preset(), cl_preset()) for n in range(1, 5)]
    bad = sum(not admittance_identities(net, solve_dirichlet(net)).all_equal for net in nets)
    ok = bad == 0
    record_criterion(f"AC4 four expressions for P_eff agree on {len(nets)} networks", ok, f"{bad} disagreements")
    assert ok


def test_ac05_thomson_bound(record_criterion):
    rng = random.Random(505)
    violations = equalities = 0
    networks = 0
    while networks < 25:
        net = random_network(rng)
        if not net.interior:
            continue
        networks += 1
        v = solve_dirichlet(net)
        peff = effective_admittance(net, v)
        if dirichlet_energy(net, v) != peff:
            violations += 1
        for _ in range(100):
            f = dict(v)
            for x in net.interior:
                f[x] = v[x] + F(rng.randint(-5, 5), rng.randint(1, 9)) if rng.random() < 0.7 else v[x]
            e = dirichlet_energy(net, f)
            if e < peff:
                violations += 1
            elif e == peff:
                equalities += 1
                violations += f != dict(v)
    ok = violations == 0
    record_criterion("AC5 energy >= P_eff for 100 test functions on 25 networks", ok,
                     f"{violations} violations, {equalities} equalities all at the solution")
    assert ok


def test_ac06_monotonicity(record_criterion):
    start = time.perf_counter()
    q = exhaustion_sequence(LadderSpec(1, 1), 20)
    q_ok = q.admittances[:3] == (1, F(2, 3), F(5, 8)) and all(d <= 0 for d in q.differences)
    lc = exhaustion_sequence(lc_preset(), 20)
    cl = exhaustion_sequence(cl_preset(), 20)
    lc_ok = all(d.sign() <= 0 for d in lc.differences)
    cl_ok = all(d.sign() <= 0 for d in cl.differences)
    ok = q_ok and lc_ok and cl_ok and q.monotone and lc.monotone and cl.monotone
    record_criterion("AC6 P_eff(n+1) <= P_eff(n), n = 1..20, rationals and both presets", ok,
                     f"{time.perf_counter() - start:.1f} s")
    assert ok


def test_ac07_closed_form(record_criterion):
    lc_bad = 0
    spec = lc_preset()
    with truncation(window=48):
        for n in range(1, 11):
            direct = effective_admittance(build_finite_ladder(spec, n))
            lc_bad += not ladder_closed_form(spec, n).agrees_with(direct)
    q_bad = 0
    for m in (F(2), F(3), F(1, 2), F(4, 3)):
        for alpha in (F(1), F(3, 7)):
            spec = LadderSpec(alpha, alpha * (m - 1) ** 2 / m)
            for n in range(1, 11):
                q_bad += ladder_closed_form(spec, n) != effective_admittance(build_finite_ladder(spec, n))
    ok = lc_bad == 0 and q_bad == 0
    record_criterion("AC7 closed form equals direct solve, n = 1..10", ok,
                     f"LC preset {lc_bad} mismatches, square-discriminant rationals {q_bad}")
    assert ok


def test_ac08_lc_convergence(record_criterion):
    start = time.perf_counter()
    spec = lc_preset()
    leading, matches, compared = [], True, []
    with truncation(window=4 * 5 + 8):
        limit = lc_limit(spec)
        for n in range(1, 6):
            diff = effective_admittance(build_finite_ladder(spec, n)) - limit
            leading.append(diff.leading())
            matches &= diff.agrees_with(residual_series(spec, n))
            compared.append(len(diff.terms))
    elapsed = time.perf_counter() - start
    ok = leading == [(4 * n - 1, 1) for n in range(1, 6)] and matches and min(compared) > 1 and elapsed < 10
    record_criterion("AC8 P_eff(n) - limit ~ t^(4n-1), n = 1..5, window 28", ok,
                     f"valuations {[int(v) for v, _ in leading]}, terms compared {compared}, {elapsed:.2f} s")
    assert ok


def test_ac09_cl_divergence(record_criterion):
    report = exhaustion_sequence(cl_preset(), 9)
    vals_ok = list(report.difference_valuations) == [-1] * 8
    # differences are negative (monotonicity); their size exceeds t
    big = all(abs(d) > t for d in report.differences)
    ok = vals_ok and report.verdict == DIVERGING and big
    record_criterion("AC9 CL differences have valuation -1, n = 1..8; verdict diverging", ok,
                     f"verdict {report.verdict}, |diff| > t: {big}")
    assert ok


def test_ac10_elimination_equivalence(record_criterion):
    bad = 0
    for net in random_networks(60, seed=1010):
        bad += effective_admittance(reduce_network(net)) != effective_admittance(net)
    t_nets = [build_finite_ladder(spec, 4) for spec in (lc_preset(), cl_preset())]
    for net in t_nets:
        bad += not LEVI_CIVITA.agree(effective_admittance(reduce_network(net)), effective_admittance(net))
    ok = bad == 0
    record_criterion("AC10 full star-mesh reduction matches the solver on 62 networks", ok, f"{bad} mismatches")
    assert ok
