"""Exit criteria. Each test records one PASS/FAIL line, shown in the terminal summary."""

import csv
import io as stdio
import json
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from maxmin import io
from maxmin.apps import GeoDataset, load_fixture, solve_geolocation, solve_quadratic_energy
from maxmin.errors import NoSolutionError
from maxmin.linalg import null_space, pseudoinverse, stack_operators
from maxmin.oracle import oracle_generalized_eig, oracle_sphere_sampling
from maxmin.solver import existence_check, ratio_value, solve, solve_case1
from maxmin.suppvec import supporting_vectors
from maxmin.cli import run

INNER = {"Córdoba", "Baza", "Bélmez", "S. Yeguas"}


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def case1_instance(rng):
    n = int(rng.integers(1, 6))
    return rng.standard_normal((int(rng.integers(1, 9)), n)), rng.standard_normal((int(rng.integers(n, 9)), n))


def case2_instance(rng):
    n = int(rng.integers(2, 7))
    r = int(rng.integers(1, n))
    F = rng.standard_normal((r, n))
    B = rng.standard_normal((int(rng.integers(r, 9)), r)) @ F
    A = rng.standard_normal((int(rng.integers(1, 9)), r)) @ F
    return A, B


def same_subspace_angle(U, V):
    if U.shape[1] != V.shape[1]:
        return np.inf
    # largest principal angle via its sine; arccos of cosines near 1 bottoms out at ~1.5e-8
    sin = np.linalg.norm(V - U @ (U.T @ V), 2)
    return float(np.arcsin(min(1.0, sin)))


def on_ray(xs, x):
    return any(np.allclose(s, x, rtol=1e-9, atol=1e-9) for s in xs)


def test_01_penrose_suite():
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for i in range(200):
        m, n = (int(v) for v in rng.integers(1, 9, size=2))
        if i % 4 == 3:
            k = int(rng.integers(1, min(m, n) + 1))
            B = rng.standard_normal((m, k)) @ rng.standard_normal((k, n))
        else:
            B = rng.standard_normal((m, n))
        P = pseudoinverse(B)
        res = max(
            np.linalg.norm(B @ P @ B - B),
            np.linalg.norm(P @ B @ P - P),
            np.linalg.norm((B @ P).T - B @ P),
            np.linalg.norm((P @ B).T - P @ B),
        )
        worst = max(worst, res / max(1.0, np.linalg.norm(B)))
    elapsed = time.perf_counter() - start
    record(1, "Penrose identities", worst <= 1e-9 and elapsed < 5,
           f"worst scaled residual {worst:.2e} (<= 1e-9), {elapsed:.2f}s (< 5s)")


def test_02_existence_both_directions():
    rng = np.random.default_rng(2)
    start = time.perf_counter()
    solvable = unsolvable = 0
    problems = []
    for i in range(100):
        n = int(rng.integers(2, 7))
        r = int(rng.integers(1, n))
        F = rng.standard_normal((r, n))
        B = rng.standard_normal((int(rng.integers(r, 9)), r)) @ F
        if i % 2 == 0:
            A = rng.standard_normal((int(rng.integers(1, 9)), r)) @ F
        else:
            A = rng.standard_normal((int(rng.integers(n, 9)), n))
        ok = existence_check(A, B)
        if ok != (i % 2 == 0):
            problems.append(f"instance {i}: existence_check={ok}")
            continue
        if ok:
            solvable += 1
            sol = solve(A, B)
            if not all(abs(np.linalg.norm(B @ x) - 1.0) <= 1e-8 for x in sol.solutions):
                problems.append(f"instance {i}: boundary not attained")
        else:
            unsolvable += 1
            try:
                solve(A, B)
                problems.append(f"instance {i}: solve returned")
            except NoSolutionError:
                pass
            K = null_space(B)
            x0 = K[:, int(np.argmax(np.linalg.norm(A @ K, axis=0)))]
            steps = np.arange(1, 1001)
            ax = np.array([np.linalg.norm(A @ (t * x0)) for t in steps])
            bx = np.array([np.linalg.norm(B @ (t * x0)) for t in steps])
            growing = np.all(np.diff(ax) > 0) and ax[-1] >= 1000 * ax[0] * (1 - 1e-12)
            if not (growing and bx.max() <= 1e-10):
                problems.append(f"instance {i}: witness failed (max ||B nx0|| {bx.max():.1e})")
    elapsed = time.perf_counter() - start
    record(2, "existence iff ker(B) in ker(A)", not problems and elapsed < 10,
           f"{solvable} solvable / {unsolvable} unsolvable, {len(problems)} problems {problems[:2]}, {elapsed:.2f}s (< 10s)")


def test_03_oracle_equivalence():
    rng = np.random.default_rng(3)
    start = time.perf_counter()
    worst_rel = 0.0
    worst_gap = -np.inf
    for i in range(500):
        A, B = case1_instance(rng)
        value = solve_case1(A, B).optimal_value
        ref = oracle_generalized_eig(A, B)
        worst_rel = max(worst_rel, abs(value - ref) / max(ref, 1e-300))
        lb, _ = oracle_sphere_sampling(A, B, samples=1000, refine_steps=20, seed=i)
        worst_gap = max(worst_gap, lb - value)
    elapsed = time.perf_counter() - start
    record(3, "oracle equivalence (500 Case-1)", worst_rel <= 1e-8 and worst_gap <= 1e-9 and elapsed < 30,
           f"max rel diff {worst_rel:.2e} (<= 1e-8), max(lower bound - value) {worst_gap:.2e} (<= 1e-9), {elapsed:.2f}s (< 30s)")


def test_04_case2_quotient():
    rng = np.random.default_rng(4)
    worst_rel = worst_move = 0.0
    cases = set()
    for _ in range(100):
        A, B = case2_instance(rng)
        sol = solve(A, B)
        cases.add(sol.case_used)
        idx = sol.selected_indices
        ref = oracle_generalized_eig(A[:, idx], B[:, idx])
        worst_rel = max(worst_rel, abs(sol.optimal_value - ref) / ref)
        K = null_space(B)
        for x in sol.solutions:
            z = x + K @ rng.standard_normal(K.shape[1])
            worst_move = max(worst_move, np.linalg.norm(A @ z - A @ x), np.linalg.norm(B @ z - B @ x))
    ok = worst_rel <= 1e-8 and worst_move <= 1e-10 and cases == {"case2"}
    record(4, "Case-2 quotient reduction", ok,
           f"max rel diff {worst_rel:.2e} (<= 1e-8), max kernel shift effect {worst_move:.2e} (<= 1e-10)")


def test_05_reformulation_equivalence():
    rng = np.random.default_rng(5)
    worst_excess = -np.inf
    worst_ray = 0.0
    for i in range(50):
        A, B = case1_instance(rng) if i % 2 == 0 else case2_instance(rng)
        x0 = solve(A, B).x0
        best = ratio_value(A, B, x0)
        X = rng.standard_normal((A.shape[1], 10_000))
        # same quantity as ratio_value, vectorized over the probes
        probes = np.linalg.norm(A @ X, axis=0) / np.linalg.norm(B @ X, axis=0)
        worst_excess = max(worst_excess, float(probes.max()) - best)
        for t in (0.5, 2.0, 10.0):
            worst_ray = max(worst_ray, abs(ratio_value(A, B, t * x0) - best))
    record(5, "ratio reformulation equivalence", worst_excess <= 1e-8 and worst_ray <= 1e-10,
           f"max(probe - optimum) {worst_excess:.2e} (<= 1e-8), ray variation {worst_ray:.2e} (<= 1e-10)")


def test_06_supporting_vector_special_case():
    rng = np.random.default_rng(6)
    worst_lam = worst_angle = 0.0
    used = 0
    for i in range(100):
        m = int(rng.integers(2, 9))
        M = rng.standard_normal((m, 2))
        if i % 10 == 0:
            M[:, 1] = np.linalg.qr(M)[0][:, 1] * np.linalg.norm(M[:, 0])
        M[:, 1] *= np.linalg.norm(M[:, 0]) / np.linalg.norm(M[:, 1])
        fast = supporting_vectors([M])
        slow = supporting_vectors([M], closed_form=False)
        used += fast.used_special_case
        a1, a2 = M[:, 0], M[:, 1]
        closed = a1 @ a1 + abs(a1 @ a2)
        worst_lam = max(worst_lam, abs(closed - slow.lambda_max), abs(fast.lambda_max - slow.lambda_max))
        worst_angle = max(worst_angle, same_subspace_angle(fast.basis, slow.basis))
    record(6, "two-column closed form", used == 100 and worst_lam <= 1e-10 and worst_angle <= 1e-8,
           f"{used}/100 took closed form, max lambda diff {worst_lam:.2e} (<= 1e-10), max angle {worst_angle:.2e} (<= 1e-8)")


def test_07_quadratic_energy():
    rng = np.random.default_rng(7)
    worst_con = worst_rel = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 11))
        E1 = rng.standard_normal((int(rng.integers(1, 21)), n))
        E2 = rng.standard_normal((int(rng.integers(1, 21)), n))
        G = rng.standard_normal((n, n))
        L = G.T @ G + np.eye(n)
        sol = solve_quadratic_energy(E1, E2, L)
        for psi in sol.solutions:
            worst_con = max(worst_con, abs(np.linalg.norm(E2 @ psi) ** 2 + psi @ L @ psi - 1.0))
        ref = oracle_generalized_eig(E1, stack_operators([E2, np.linalg.cholesky(L).T]))
        worst_rel = max(worst_rel, abs(sol.optimal_value - ref) / ref)
    record(7, "quadratic-energy pipeline", worst_con <= 1e-8 and worst_rel <= 1e-8,
           f"max constraint error {worst_con:.2e} (<= 1e-8), max rel diff {worst_rel:.2e} (<= 1e-8)")


def test_08_geolocation_fixture():
    start = time.perf_counter()
    report = solve_geolocation(load_fixture())
    elapsed = time.perf_counter() - start
    ok = (
        len(report.sites) == 16
        and all(np.isfinite(s.score) for s in report.sites)
        and "Almuñécar" in report.ranking[:3]
        and set(report.ranking[-4:]) == INNER
        and elapsed < 1
    )
    record(8, "geolocation ranking", ok,
           f"top3 {report.ranking[:3]}, bottom4 {report.ranking[-4:]}, {elapsed * 1000:.1f}ms (< 1s)")


def test_09_scaling_covariance():
    rng = np.random.default_rng(9)
    worst_val = 0.0
    rays_ok = True
    for i in range(50):
        A, B = case1_instance(rng) if i % 2 == 0 else case2_instance(rng)
        base = solve(A, B)
        for c in (0.5, 3.0):
            sa, sb = solve(c * A, B), solve(A, c * B)
            worst_val = max(
                worst_val,
                abs(sa.optimal_value - abs(c) * base.optimal_value) / base.optimal_value,
                abs(sb.optimal_value - base.optimal_value / abs(c)) / base.optimal_value,
            )
            rays_ok &= all(on_ray(sa.solutions, x) and on_ray(sb.solutions, x / c) for x in base.solutions)
    record(9, "scaling covariance", worst_val <= 1e-9 and rays_ok,
           f"max rel value error {worst_val:.2e} (<= 1e-9), solution rays {'match' if rays_ok else 'MISMATCH'}")


def _cli(argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_10_cli_round_trip(tmp_path):
    rng = np.random.default_rng(10)
    counter = iter(range(10_000))
    failures = []

    def put(M):
        path = tmp_path / f"m{next(counter)}.csv"
        io.write_matrix(path, np.asarray(M, dtype=float))
        return path

    def expect(label, argv, code, payload=None, stdout_has=None):
        out_json = tmp_path / f"o{next(counter)}.json"
        got, out, err = _cli(argv + (["--json", out_json] if payload is not None else []))
        if got != code:
            failures.append(f"{label}: exit {got} != {code} ({err.strip()})")
            return
        if stdout_has and stdout_has not in out:
            failures.append(f"{label}: stdout lacks {stdout_has!r}")
        if payload is not None:
            doc = json.loads(out_json.read_text(encoding="utf-8"))
            if doc != payload:
                failures.append(f"{label}: JSON differs from in-process result")

    I2 = np.eye(2)
    RD = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    E = np.array([[1.0, 0.0], [0.0, 0.0]])
    A_rd = rng.standard_normal((4, 2))

    # existence
    expect("check trivial kernel", ["check", put(A_rd), put(RD)], 0, stdout_has="solvable: true")
    expect("check violated", ["check", put(I2), put(E)], 0, stdout_has="solvable: false")
    expect("check equal kernels", ["check", put([[2, 0], [0, 0]]), put(E)], 0, stdout_has="solvable: true")

    # solver
    solve_cases = [
        ("diag", np.diag([3.0, 1.0]), np.diag([1.0, 2.0])),
        ("scaled identity", I2, 2 * I2),
        ("left inverse", RD, RD),
        ("quotient", E, E),
        ("full rank", rng.standard_normal((4, 3)), rng.standard_normal((5, 3))),
    ]
    for label, A, B in solve_cases:
        expect(f"solve {label}", ["solve", put(A), put(B)], 0, solve(A, B).to_dict())
    expect("solve diag value", ["solve", put(np.diag([3.0, 1.0])), put(np.diag([1.0, 2.0]))], 0, stdout_has="optimal_value: 3")
    expect("solve no-solution", ["solve", put(I2), put(E)], 1)
    _, _, err = _cli(["solve", put(I2), put(E)])
    if err.strip() != "ERROR: no-solution: ker(B) not contained in ker(A)":
        failures.append(f"no-solution message: {err.strip()!r}")

    # supporting vectors
    for label, mats in [
        ("equal norms", [np.array([[1.0, 1.0], [1.0, -1.0]])]),
        ("identity", [np.eye(3)]),
        ("family", [np.diag([1.0, 0.0]), np.diag([0.0, 2.0])]),
    ]:
        res = supporting_vectors(mats)
        payload = {**res.to_dict(), "tolerances": solve(I2, I2).tolerances}
        expect(f"suppvec {label}", ["suppvec", *[put(M) for M in mats]], 0, payload)

    # quadratic energy
    G = rng.standard_normal((8, 8))
    energy_cases = [
        ("hand", np.array([[1.0, 0.0]]), np.array([[0.0, 1.0]]), I2),
        ("zero E2", rng.standard_normal((3, 4)), np.zeros((1, 4)), np.eye(4)),
        ("random", rng.standard_normal((20, 8)), rng.standard_normal((20, 8)), G.T @ G + np.eye(8)),
    ]
    for label, E1, E2, L in energy_cases:
        # the CLI reads L back from CSV; use that exact matrix in-process too
        Lp = put(L)
        sol = solve_quadratic_energy(E1, E2, io.read_matrix(Lp))
        expect(f"energy {label}", ["energy", put(E1), put(E2), Lp], 0, sol.to_dict())

    # geolocation
    scatter = tmp_path / "scatter.csv"
    expect("geoloc fixture", ["geoloc", "--fixture", "--scatter", scatter], 0,
           solve_geolocation(load_fixture()).to_dict())
    with open(scatter, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh))
    top3 = [r["site"] for r in sorted(rows, key=lambda r: -float(r["score"]))[:3]]
    if len(rows) != 16 or "Almuñécar" not in top3:
        failures.append(f"scatter: {len(rows)} rows, top3 {top3}")

    W = rng.standard_normal((5, 3))
    for label, data in [
        ("identical seasons", GeoDataset([f"s{i}" for i in range(5)], W, W.copy())),
        ("dominant site", GeoDataset(["hot-winter", "b", "c"],
                                     [[10, 10, 10], [1, 2, 1], [2, 1, 2]], [[0, 0, 0], [5, 6, 5], [6, 5, 6]])),
    ]:
        path = tmp_path / f"g{next(counter)}.csv"
        io.write_geo_csv(path, data)
        expect(f"geoloc {label}", ["geoloc", path], 0, solve_geolocation(io.read_geo_csv(path)).to_dict())

    # usage and parse errors
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n")
    expect("parse error", ["solve", bad, put(I2)], 2)
    expect("usage error", ["solve"], 2)
    expect("bad tol", ["solve", put(I2), put(I2), "--tol", "-1"], 2)

    record(10, "CLI round trip", not failures, f"{len(failures)} failures {failures[:3]}")
