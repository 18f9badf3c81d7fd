"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the verdict lines;
every tolerance is fixed here, nothing is calibrated at runtime.
"""

import itertools
import json
import math

import numpy as np

from tvkit import (OperatorPath, PhiSpec, SampledPath, c_p_const, choose_sequences,
                   gen_alpha_stable, gen_fixture, improved_ly_check,
                   irregularity_check, irregularity_constant, ly_constant,
                   oscillation, p_tv_seminorm, p_variation,
                   partition_deviation_bound, phi_value, phi_variation, rs_sum,
                   sandwich, step_approx, step_integral, subsequence_sup_brute,
                   sum_by_parts_sides, linear_approx, ttv, ttv_brute, tv_p_norm,
                   young_bound_S)

from conftest import ALL_NORMS, random_pair_shared_times, random_path, random_step_pair

SQRT3 = math.sqrt(3.0)


def verdict(num: int, label: str, ok: bool, detail: str = "") -> None:
    print(f"criterion {num:02d} [{'PASS' if ok else 'FAIL'}] {label}"
          + (f"  ({detail})" if detail else ""))
    assert ok, f"criterion {num:02d} failed: {label} {detail}"


def test_criterion_01_stepsplit_reference_values():
    ss = gen_fixture("stepSplit")
    ok = True
    for delta in (0.0, 0.25, 0.5, 1.0, 1.5, 2.5):
        want = max(1.0 - delta, 0.0) + max(2.0 - delta, 0.0)
        ok &= abs(ttv(ss, delta) - want) <= 1e-12
    ok &= abs(p_tv_seminorm(ss, 2.0).value ** 2 - 9.0 / 8.0) <= 1e-12
    ok &= abs(p_tv_seminorm(ss.restrict(-1.0, 0.0), 2.0).value ** 2 - 0.25) <= 1e-12
    ok &= abs(p_tv_seminorm(ss.restrict(0.0, 1.0), 2.0).value ** 2 - 1.0) <= 1e-12
    verdict(1, "stepSplit truncated variation and squared seminorms", ok)


def test_criterion_02_circle3_gap():
    c3 = gen_fixture("circle3")
    sw = sandwich(c3, SQRT3, (2.0,))
    ok = ttv(c3, SQRT3) == 0.0
    ok &= sw.lower == 0.0 and sw.lower < sw.witness_tv
    verdict(2, "circle3 vanishing truncated variation with strict sandwich gap", ok,
            f"lower={sw.lower} witness={sw.witness_tv:.6f}")


def test_criterion_03_threshold_supremum_identity():
    rng = np.random.default_rng(3)
    u = np.linspace(0.0, 1.0, 1_000_000)
    worst = 0.0
    for _ in range(1000):
        x = float(rng.uniform(1e-3, 10.0))
        p = float(rng.uniform(1.05, 4.0))
        deltas = x * u
        grid_max = float(np.max(deltas ** (p - 1.0) * (x - deltas)))
        closed = c_p_const(p) * x ** p
        worst = max(worst, abs(grid_max - closed) / closed)
    ok = worst <= 1e-7
    verdict(3, "closed-form threshold supremum vs 1e6-point grid scans", ok,
            f"worst rel err {worst:.2e}")


def test_criterion_04_oracle_equivalence():
    rng = np.random.default_rng(4)
    ok = True
    for _ in range(200):
        n = int(rng.integers(2, 13))
        d = int(rng.choice([1, 3]))
        path = random_path(rng, n=n, d=d, norm=ALL_NORMS[rng.integers(0, 3)])
        c = float(rng.uniform(0.0, 1.2 * max(oscillation(path), 0.1)))
        ok &= abs(ttv(path, c) - ttv_brute(path, c)) <= 1e-12
        p = float(rng.uniform(1.0, 3.5))
        ok &= abs(p_variation(path, p)
                  - subsequence_sup_brute(path, lambda x: x ** p)) <= 1e-12
        phi = PhiSpec.family(1, 1.0 + float(rng.uniform(0.1, 2.0)),
                             1.0 + float(rng.uniform(0.1, 2.0)))
        ok &= abs(phi_variation(path, phi)
                  - subsequence_sup_brute(path, lambda x: float(phi_value(phi, x)))) <= 1e-12
    from tvkit import fixed_partition_seminorm
    for _ in range(200):
        m = int(rng.integers(1, 13))
        xs = rng.uniform(0.0, 3.0, m)
        p = float(rng.uniform(1.05, 3.5))
        best = 0.0
        for r in range(1, m + 1):
            cp = c_p_const(p) * r ** (1.0 - p)
            for sub in itertools.combinations(xs, r):
                best = max(best, cp * sum(sub) ** p)
        ok &= abs(fixed_partition_seminorm(xs, p) - best ** (1.0 / p)) <= 1e-12
    verdict(4, "dynamic programs match 2^n enumerations (>=200 paths each)", ok)


def test_criterion_05_greedy_approximants():
    rng = np.random.default_rng(5)
    lams = (1.5, 2.0, 3.0, 10.0)
    violations = 0
    for _ in range(500):
        path = random_path(rng, n=int(rng.integers(2, 32)), d=int(rng.integers(1, 4)),
                           norm=ALL_NORMS[rng.integers(0, 3)])
        c = float(rng.uniform(0.05, 2.0 * max(oscillation(path), 0.2)))
        step = step_approx(path, c)
        lin = linear_approx(path, c)
        if step.sup_distance > 0.5 * c + 1e-12:
            violations += 1
        if lin.sup_distance > c + 1e-12:
            violations += 1
        if lin.tv != step.tv:
            violations += 1
        for lam in lams:
            bound = lam * ttv(path, (lam - 1.0) * c / (2.0 * lam))
            if step.tv > bound + 1e-9 * (1.0 + bound):
                violations += 1
    verdict(5, "greedy approximant accuracy and variation bounds (500 paths)",
            violations == 0, f"{violations} violations")


def test_criterion_06_seminorm_axioms():
    rng = np.random.default_rng(6)
    ok = True
    for _ in range(500):
        f, h = random_pair_shared_times(rng, n=int(rng.integers(2, 15)),
                                        d=int(rng.integers(1, 3)))
        total = SampledPath(f.times, f.values + h.values, f.norm)
        alpha = float(rng.uniform(0.1, 4.0))
        for p in (1.1, 1.5, 2.0, 3.0):
            fv = p_tv_seminorm(f, p).value
            hv = p_tv_seminorm(h, p).value
            ok &= p_tv_seminorm(total, p).value <= fv + hv + 1e-10
            ok &= abs(p_tv_seminorm(f.scaled(alpha), p).value - alpha * fv) \
                <= 1e-10 * (1.0 + alpha * fv)
            ok &= fv <= p_variation(f, p) ** (1.0 / p) + 1e-10
            lower = float(f.norm_of(f.values[0])) \
                + c_p_const(p) ** (1.0 / p) * oscillation(f)
            ok &= tv_p_norm(f, p) >= lower - 1e-10
    verdict(6, "seminorm triangle, homogeneity, comparison, lower bound (500 pairs)", ok)


def test_criterion_07_abel_identity():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(500):
        n = int(rng.integers(1, 21))
        d = int(rng.integers(1, 5))
        lhs, rhs = sum_by_parts_sides(rng.normal(size=(n + 1, d, d)),
                                      rng.normal(size=(n + 1, d)))
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    verdict(7, "summation-by-parts identity on 500 random datasets",
            worst <= 1e-12, f"worst gap {worst:.2e}")


def test_criterion_08_majorant_dominates():
    rng = np.random.default_rng(8)
    violations = 0
    for _ in range(500):
        f, g = random_step_pair(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        seqs = choose_sequences(1.5, 1.5, f, g)
        s = young_bound_S(f, g, seqs, tail_tol=1e-9)
        drift = f.values[0] @ (g.values[-1] - g.values[0])
        dev = float(np.abs(step_integral(f, g) - drift).max())
        if dev > s:
            violations += 1
        if seqs.mode != "zero":
            m = int(rng.integers(1, 9))
            pts = np.concatenate(([0.0], np.sort(rng.uniform(0.0, 1.0, m - 1)), [1.0])) \
                if m > 1 else np.array([0.0, 1.0])
            tags = rng.uniform(pts[:-1], pts[1:])
            ds = [seqs.eta(k) for k in range(7)]
            es = [seqs.theta(k) for k in range(7)]
            bound = partition_deviation_bound(f, g, pts, tags, ds, es)
            tagged_dev = float(np.abs(rs_sum(f, g, pts, tags) - drift).max())
            if tagged_dev > bound:
                violations += 1
    verdict(8, "two-sided majorant and per-partition bounds (500 step pairs)",
            violations == 0, f"{violations} violations")


def test_criterion_09_variation_product_bound():
    rng = np.random.default_rng(9)
    violations = 0
    for _ in range(200):
        f, g = random_step_pair(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        if improved_ly_check(f, g, 1.5, 1.5).ratio > 1.0:
            violations += 1
    base = np.random.SeedSequence(99)
    for trial_seed in base.spawn(20):
        s1, s2 = trial_seed.spawn(2)
        f = OperatorPath.from_scalar_path(gen_alpha_stable(512, 1.8, seed=s1))
        g = gen_alpha_stable(512, 1.8, seed=s2)
        rep = improved_ly_check(f, g, 1.9, 1.9, tol=1e-3, completion="linear")
        if rep.ratio > 1.0:
            violations += 1
    verdict(9, "variation-product inequality (200 step + 20 heavy-tail trials)",
            violations == 0, f"{violations} violations")


def test_criterion_10_seminorm_transfer_bound():
    rng = np.random.default_rng(10)
    violations = 0
    for _ in range(200):
        f, g = random_step_pair(rng, int(rng.integers(1, 9)), int(rng.integers(1, 9)))
        if irregularity_check(f, g, 1.5, 1.5).ratio > 1.0:
            violations += 1
    verdict(10, "indefinite-integral seminorm inequality (200 step pairs)",
            violations == 0, f"{violations} violations")


def test_criterion_11_constant_cauchy_contract():
    ok = True
    for p in (1.2, 1.5, 1.8):
        tol = 1e-6
        c1, c2 = ly_constant(p, p, tol), ly_constant(p, p, tol / 2.0)
        d1, d2 = irregularity_constant(p, p, tol), irregularity_constant(p, p, tol / 2.0)
        ok &= abs(c1 - c2) < tol * c1
        ok &= abs(d1 - d2) < tol * d1
    verdict(11, "explicit constants obey the halving-tolerance contract", ok)


def test_criterion_12_weighted_variation_trend():
    phi = PhiSpec.family(1, 2.0, 2.0)
    vphi = []
    vq = {}
    for n in (2 ** 4, 2 ** 6, 2 ** 8, 2 ** 10):
        path = gen_fixture("logSeq", p=2.0, n=n)
        vphi.append(phi_variation(path, phi))
        vq[n] = p_variation(path, 2.5)
    increasing = all(a < b for a, b in zip(vphi, vphi[1:]))
    tenfold = vphi[-1] > 10.0 * vphi[0]
    q_growth = vq[2 ** 10] / vq[2 ** 8] - 1.0
    stabilised = q_growth < 0.05
    detail = (f"weighted variation {vphi[0]:.3f} -> {vphi[-1]:.3f} "
              f"(x{vphi[-1] / vphi[0]:.2f}); 2.5-variation grew {100 * q_growth:.1f}% "
              f"over the last step")
    verdict(12, "weighted-variation growth vs p-variation stabilisation trend",
            increasing and tenfold and stabilised, detail)


def test_criterion_13_cli_reproducibility(capsys):
    from tvkit.cli import run
    for args in (["seminorm", "--fixture", "stepSplit", "--p", "2"],
                 ["ly-check", "--gen", "alpha-stable", "--alpha", "1.8", "--n", "48",
                  "--p", "1.9", "--q", "1.9", "--seed", "11", "--tol", "1e-2"]):
        assert run(args) == 0
        first = capsys.readouterr().out
        assert run(args) == 0
        second = capsys.readouterr().out
        ok = first == second and len(first) > 0
        if not ok:
            verdict(13, "byte-identical reports for identical seeded invocations", False)
    report = json.loads(second)
    verdict(13, "byte-identical reports for identical seeded invocations",
            report["ly"]["ratio"] <= 1.0)
