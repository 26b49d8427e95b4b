"""Exit criteria, one test per criterion, each at its pinned tolerance and time budget."""

import itertools
import math
import time

import numpy as np
from scipy.spatial import Delaunay

from unicov import (
    apply,
    canonical_bloch_vector,
    canonical_coefficients,
    cloning_output,
    cloning_params,
    entangled_output,
    entangling_params,
    entropy_minimizer,
    epsilon_separation,
    fidelity_maximizer,
    partial_trace,
    partial_transpose_min_eig,
    positivity_flags,
    region_scan,
    trace_distance,
    von_neumann_entropy,
)
from unicov.bloch import random_pure_bloch_vector
from unicov.cli import main
from unicov.covmap import MapParams, physical_margin
from unicov.suites import run_suite


def test_1_cloning_fidelity(criterion):
    t0 = time.perf_counter()
    worst_p, worst_state = 0.0, 0.0
    for N in range(2, 11):
        rho = apply(cloning_params(N), canonical_bloch_vector(N))
        worst_p = max(worst_p, abs(rho[0, 0].real - 2 / (N + 1)))
        worst_state = max(worst_state, np.abs(rho - cloning_output(N)).max())
    dt = time.perf_counter() - t0
    ok = worst_p < 1e-12 and worst_state < 1e-12 and dt < 1
    criterion(ok, f"|P11 - 2/(N+1)| <= {worst_p:.1e}, state diff {worst_state:.1e}, {dt:.2f}s")
    assert ok


def test_2_entangler_state(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(0)
    worst_entry, worst_td = 0.0, 0.0
    for N in range(2, 9):
        target = entangled_output(N)
        outs = [apply(entangling_params(N), random_pure_bloch_vector(N, rng)) for _ in range(20)]
        worst_entry = max(worst_entry, max(np.abs(o - target).max() for o in outs))
        worst_td = max(worst_td, max(trace_distance(a, b)
                                     for a, b in itertools.combinations(outs, 2)))
    dt = time.perf_counter() - t0
    ok = worst_entry < 1e-12 and worst_td < 1e-10 and dt < 10
    criterion(ok, f"entrywise {worst_entry:.1e}, pairwise trace distance {worst_td:.1e}, {dt:.2f}s")
    assert ok


def test_3_entropy(criterion):
    t0 = time.perf_counter()
    worst_s, worst_gap = 0.0, 0.0
    for N in range(2, 33):
        S = von_neumann_entropy(entangled_output(N))
        worst_s = max(worst_s, abs(S - math.log(N * (N - 1) / 2)))
        gap = math.log(N**2) - S
        worst_gap = max(worst_gap, abs(gap - (math.log(2) + math.log(N / (N - 1)))))
    dt = time.perf_counter() - t0
    ok = worst_s < 1e-9 and worst_gap < 1e-9 and dt < 30
    criterion(ok, f"|S - ln C(N,2)| <= {worst_s:.1e}, gap error {worst_gap:.1e}, {dt:.2f}s")
    assert ok


def test_4_marginals(criterion):
    worst = max(np.abs(partial_trace(entangled_output(N), k) - np.eye(N) / N).max()
                for N in range(2, 9) for k in (1, 2))
    ok = worst < 1e-12
    criterion(ok, f"max |Tr_k rho - 1/N| = {worst:.1e}")
    assert ok


def test_5_ppt(criterion):
    observed = {N: partial_transpose_min_eig(entangled_output(N)) for N in range(2, 9)}
    errors = {N: abs(v + 1 / (N * (N - 1))) for N, v in observed.items()}
    ok = max(errors.values()) < 1e-10
    bad = [N for N, e in errors.items() if e >= 1e-10]
    detail = "min PT eigenvalue = -1/[N(N-1)] for N=2..8"
    if bad:
        detail = (f"mismatch for N={bad}: observed "
                  + ", ".join(f"N={N}: {observed[N]:.6f} (expected {-1 / (N * (N - 1)):.6f})"
                              for N in bad[:3]) + " ...")
    criterion(ok, detail)
    assert ok


def test_6_epsilon_separation(criterion):
    values = [epsilon_separation(entangled_output(N)) for N in range(2, 9)]
    ok = all(v == 1.0 for v in values)
    criterion(ok, f"epsilon = {values}")
    assert ok


def test_7_fig1_region(criterion):
    t0 = time.perf_counter()
    scan = region_scan(3, 0.0, (-0.3, 0.3), (-0.3, 0.3), 201)
    X, Y = np.meshgrid(scan.xs, scan.ys, indexing="ij")
    phys = scan.physical

    # discrete convexity: every grid point inside the hull of physical points is physical
    hull = Delaunay(np.column_stack([X[phys], Y[phys]]))
    inside = hull.find_simplex(np.column_stack([X.ravel(), Y.ravel()]), tol=1e-12) >= 0
    convex = not np.any(inside & ~phys.ravel())

    # (0, -1/6): every constraint active, and on the boundary of the scanned set
    flags = positivity_flags(canonical_coefficients(MapParams(3, 0.0, 0.0, -1 / 6)))
    ix = np.searchsorted(scan.xs, 0.0)
    iy = np.searchsorted(scan.ys, -1 / 6)
    cell = phys[ix - 1:ix + 1, iy - 1:iy + 1]
    on_boundary = cell.any() and not cell.all()
    # exact boundary: arbitrarily small steps leave the region
    eps = 1e-9
    steps = [physical_margin(3, 0.0, dx, -1 / 6 + dy) >= -1e-12
             for dx, dy in itertools.product((-eps, 0, eps), repeat=2)]
    on_boundary = on_boundary and any(steps) and not all(steps)

    disagreements = len(scan.disagreements(1e-9))
    dt = time.perf_counter() - t0
    ok = (convex and abs(flags.margin) < 1e-12 and flags.physical and on_boundary
          and disagreements == 0 and dt < 20)
    criterion(ok, f"convex={convex}, margin(0,-1/6)={flags.margin:.1e}, boundary={on_boundary}, "
                  f"oracle disagreements={disagreements}, {int(phys.sum())} physical, {dt:.2f}s")
    assert ok


def test_8_oracle_optimality(criterion):
    t0 = time.perf_counter()
    ent = entropy_minimizer(3, 400)
    dx, dy = ent["cell"]
    ent_ok = (abs(ent["beta_m11"]) <= dx and abs(ent["C"] + 1 / 6) <= dy
              and abs(ent["coarse_beta_m11"]) <= dx and abs(ent["coarse_C"] + 1 / 6) <= dy
              and abs(ent["entropy"] - math.log(3)) < 2e-3)

    clo = fidelity_maximizer(3, 400)
    target = cloning_params(3)
    expected = (target.alpha * 3, target.beta * 3, target.C)
    clo_ok = all(abs(p - e) <= c for p, e, c in zip(clo.point, expected, clo.cell))
    clo_ok = clo_ok and all(abs(p - e) <= c for p, e, c in zip(clo.coarse_point, expected, clo.cell))
    dt = time.perf_counter() - t0
    ok = ent_ok and clo_ok and dt < 120
    criterion(ok, f"entropy argmin ({ent['beta_m11']:.2e}, {ent['C']:.6f}) S={ent['entropy']:.6f}; "
                  f"M11 argmax {tuple(round(v, 6) for v in clo.point)} "
                  f"M11={-clo.value:.9f}; {dt:.1f}s")
    assert ok


def test_9_property_suites(criterion, capsys):
    names = ["covariance", "linearity", "permutation", "algebra", "roundtrip"]
    codes = {s: main(["verify", "--suite", s, "--n", "3", "--trials", "100", "--seed", "0"])
             for s in names}
    capsys.readouterr()
    results = {s: run_suite(s, 3, 100, 0) for s in names}
    tolerances = {"covariance": 1e-10, "linearity": 1e-12, "permutation": 1e-12,
                  "algebra": 1e-12, "roundtrip": 1e-12}
    ok = all(codes[s] == 0 and results[s].max_deviation < tolerances[s] for s in names)
    ok = ok and all(len(results[s].deviations) == 100 for s in ("covariance", "linearity"))
    criterion(ok, ", ".join(f"{s} {results[s].max_deviation:.1e}" for s in names))
    assert ok
