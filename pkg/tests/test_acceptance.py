"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run ``pytest tests/test_acceptance.py -v`` and read the "acceptance criteria"
section at the end of the output.
"""

import itertools
import json
import math
import random
import time

import sympy as sp

from conftest import ACCEPTANCE, admissible_bases, classical_wronskian, perturbed_basis, random_uni, uni_to_sympy
from geodesic_smt.algebra.gaussian import GaussianRational
from geodesic_smt.algebra.polynomial import HomogeneousPolynomial
from geodesic_smt.algebra.univariate import UniPolynomial
from geodesic_smt.cli import main
from geodesic_smt.connection import (
    LinearSystemBasis,
    chart_restrict,
    check_euler_property,
    check_homogeneity_degree,
    defining_residuals,
    polar_degree,
    solve_christoffel,
)
from geodesic_smt.curve import ProjectiveCurve, connection_wronskian, zero_order_inequality_check
from geodesic_smt.errors import SingularSystem
from geodesic_smt.nevanlinna import DivisorOnDisk, RadiusGrid, fmt_residual, min_inequality
from geodesic_smt.theorems import (
    SMTConfig,
    diagonal_section,
    prop1_check,
    smt_verify,
    uniqueness_thresholds,
)

GRID50 = RadiusGrid.spaced(2, 100, 50, "log")


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    assert ok, f"criterion {n}: {detail}"


def H(text, n, d=None):
    return HomogeneousPolynomial.parse(text, n, d)


def curve(*comps):
    return ProjectiveCurve.parse(list(comps))


def random_linear_basis(k: int, seed: int) -> LinearSystemBasis:
    rng = random.Random(seed)
    while True:
        S = [H(" + ".join(f"{rng.randint(-4, 4)}*X{i}" for i in range(k + 1)), k + 1, 1) for _ in range(k + 1)]
        try:
            return LinearSystemBasis(k, 1, tuple(S))
        except (SingularSystem, ValueError):
            continue


def test_criterion_01_defining_equation_exact():
    start = time.perf_counter()
    bases = admissible_bases()
    bases += [perturbed_basis(k, d, 100 + k * d) for k, d in [(3, 3), (2, 3)]]
    bad = []
    for b in bases:
        tensor = solve_christoffel(b)
        for mu, s in enumerate(b.S):
            if not all(r.is_zero() for row in defining_residuals(tensor, s) for r in row):
                bad.append((b.k, b.d, mu))
    elapsed = time.perf_counter() - start
    record(1, not bad and len(bases) >= 10 and elapsed < 60,
           f"{len(bases)} bases, nonzero residuals {bad}, {elapsed:.1f} s")


def test_criterion_02_flat_specialization():
    rng = random.Random(2)
    cases = 0
    mismatches = []
    nonflat = []
    for n in range(24):
        k = 1 + n % 3
        basis = LinearSystemBasis.coordinates(k) if n % 2 == 0 else random_linear_basis(k, n)
        tensor = solve_christoffel(basis)
        if not tensor.is_flat():
            nonflat.append(n)
        comps = [random_uni(rng, rng.randint(0, 1))] + [random_uni(rng, rng.randint(1, 4)) for _ in range(k)]
        f = ProjectiveCurve(tuple(comps))
        W = connection_wronskian(f, chart_restrict(tensor, 0))
        ours = uni_to_sympy(W.value.num) / uni_to_sympy(W.value.den)
        if sp.cancel(ours - classical_wronskian(f)) != 0:
            mismatches.append(n)
        cases += 1
    record(2, cases >= 20 and not mismatches and not nonflat,
           f"{cases} curves, non-flat bases {nonflat}, Wronskian mismatches {mismatches}")


def test_criterion_03_polar_degree():
    wrong = []
    for k in (1, 2, 3):
        for d in (1, 2, 3):
            deg = polar_degree(solve_christoffel(LinearSystemBasis.fermat(k, d))).degree
            if deg != (k + 1) * (d - 1):
                wrong.append((k, d, deg))
    over = []
    for b in admissible_bases():
        if b.delta.degree > (b.k + 1) * (b.d - 1):
            over.append((b.k, b.d))
    record(3, not wrong and not over, f"Fermat mismatches {wrong}, bound violations {over}")


def test_criterion_04_homogeneity_and_euler():
    bad_degree, bad_euler = [], []
    worst = 0.0
    for b in admissible_bases():
        tensor = solve_christoffel(b)
        if not check_homogeneity_degree(tensor):
            bad_degree.append((b.k, b.d))
        rep = check_euler_property(tensor, samples=100, seed=4, tol=1e-8)
        worst = max(worst, rep.worst_residual, rep.worst_rank_ratio)
        if not rep.holds or rep.samples != 100:
            bad_euler.append((b.k, b.d))
    record(4, not bad_degree and not bad_euler,
           f"degree failures {bad_degree}, Euler failures {bad_euler}, worst residual {worst:.1e}")


FMT_PAIRS = [
    (["1", "z"], "X1"),
    (["1", "z"], "X0 - X1"),
    (["1", "z"], "X0"),
    (["1", "z^2 + 1"], "X1 + 3*X0"),
    (["z - 1", "z^3 + 2*z"], "X0 + X1"),
    (["1", "z", "z^2"], "X0 + X1 + X2"),
    (["z", "z^2 - 1", "1"], "X1^2 - X0*X2"),
    (["1", "z^3"], "X0^2 + X1^2"),
    (["1", "z - 3", "z^2 + z"], "X0^3 + X1^3 + X2^3"),
    (["1 + z", "z^2", "z^3 - 1", "1"], "X0 - 2*X1 + X2 - X3"),
    (["1", "z^5 - z"], "X1^2 - 4*X0^2"),
    (["2*z + 1", "z^4", "z + i"], "X0*X1 + X2^2"),
]


def test_criterion_05_fmt_residual():
    spreads = []
    for comps, sigma in FMT_PAIRS:
        f = curve(*comps)
        res = fmt_residual(f, H(sigma, f.k + 1), GRID50, tol=1e-9)
        spreads.append(max(res) - min(res))
    record(5, len(spreads) >= 10 and max(spreads) < 0.1,
           f"{len(spreads)} pairs, worst spread {max(spreads):.2e}")


def test_criterion_06_smt_property_suite():
    scenarios = {
        "cartan P1": SMTConfig(LinearSystemBasis.coordinates(1),
                               [H(s, 2) for s in ("X1", "X1 - X0", "X0")], curve("1", "z"), GRID50),
        "flat k=2": SMTConfig(LinearSystemBasis.coordinates(2),
                              [H(s, 3) for s in ("X0", "X1", "X2", "X0 + X1 + X2")],
                              curve("1", "z", "z^2"), GRID50),
        "fermat k=1 d=2": SMTConfig(LinearSystemBasis.fermat(1, 2),
                                    [H(s, 2, 2) for s in ("X0^2 - 4*X1^2", "X0^2 + 4*X1^2", "X0^2 - 9*X1^2",
                                                          "X0^2 + 9*X1^2", "X0^2 - 16*X1^2", "X0^2 + 16*X1^2")],
                                    curve("1", "z"), GRID50),
    }
    mins = {}
    for name, cfg in scenarios.items():
        rep = smt_verify(cfg)
        mins[name] = min(m for r, m in zip(rep.radii, rep.margin) if 2 <= r <= 100)
    record(6, all(m >= 0 for m in mins.values()),
           "min margins " + ", ".join(f"{k}: {v:.3f}" for k, v in mins.items()))


def _zero_order_configs():
    one = LinearSystemBasis.coordinates(1)
    two = LinearSystemBasis.coordinates(2)
    three = LinearSystemBasis.coordinates(3)
    f12 = LinearSystemBasis.fermat(1, 2)
    f22 = LinearSystemBasis.fermat(2, 2)
    out = []
    for a in range(2, 7):
        out.append((one, ["1", f"z^{a}"], "X1", 0))
    for a in range(2, 5):
        out.append((one, ["1", f"(z - 1)^{a}"], "X1", 1))
    # divisors must be smooth (a doubled line such as X1^2 violates the hypothesis)
    for a in range(2, 5):
        out.append((f12, ["1", f"1 + z^{a}"], "X0^2 - X1^2", 0))
    for a, b in ((3, 4), (3, 5), (4, 7), (5, 6)):
        out.append((two, ["1", f"z^{a}", f"z^{b}"], "X1", 0))
    out.append((two, ["1", "1 + z^3", "z"], "X1 - X0", 0))
    out.append((two, ["1", "z^2", "(z - i)^3"], "X2", GaussianRational(0, 1)))
    for a, b in ((3, 3), (4, 4), (3, 5)):
        out.append((f22, ["1", f"1 + z^{a}", f"1 + z^{b}"], "X0^2 + X1^2 - 2*X2^2", 0))
    out.append((three, ["1", "z^4", "z^5", "z^7"], "X1", 0))
    out.append((three, ["1", "z", "z^5", "z^6"], "X2", 0))
    return out


def test_criterion_07_zero_order_inequality():
    configs = _zero_order_configs()
    failures, checked = [], 0
    cube = None
    for basis, comps, sigma, z0 in configs:
        f = curve(*comps)
        tensor = solve_christoffel(basis)
        res = zero_order_inequality_check(f, chart_restrict(tensor, 0), basis.delta,
                                          H(sigma, basis.k + 1, basis.d), z0)
        if res.ord_sigma < basis.k + 1:
            failures.append((comps, "order below k+1"))
        elif not res.holds:
            failures.append((comps, res.ord_lhs, res.ord_sigma))
        checked += 1
        if comps == ["1", "z^3"] and basis.k == 1 and basis.d == 1:
            cube = (res.ord_sigma, res.ord_lhs)
    record(7, checked >= 20 and not failures and cube == (3, 2),
           f"{checked} configurations, failures {failures}, (1,z^3): ord sigma/lhs = {cube}")


def test_criterion_08_thresholds():
    a = all(uniqueness_thresholds(k, 1, 0).row("thm5curve_ii").min_q == 2 * k + 3 for k in range(1, 11))
    b = uniqueness_thresholds(1, 1, 0).row("thm5_i").bound == 4
    c = uniqueness_thresholds(1, 1, 0).row("dulock_ru").bound == sp.Rational(37, 2)
    d = all(uniqueness_thresholds(k, dd, 0).row("hilbert_upper").bound == math.comb(k + dd, dd)
            for k in range(1, 8) for dd in range(1, 8))
    record(8, a and b and c and d, f"(a) {a} (b) {b} (c) {c} (d) {d}")


SHARING_PAIRS = [
    (["1", "z"], ["1", "z^2"], ["X1"]),
    (["1", "z"], ["1", "z^3"], ["X1", "X0"]),
    (["1", "z^2 - 1"], ["1", "(z^2 - 1)^2"], ["X1"]),
    (["1", "z", "z^2"], ["1", "z^2", "z^3"], ["X1", "X2"]),
    (["1", "z"], ["1 + z", "z"], ["X1"]),
    (["z", "1"], ["z", "1 + z^2"], ["X0"]),
    (["1", "z - 2", "z"], ["1", "(z - 2)^2", "z^2 - 2"], ["X1"]),
]


def test_criterion_09_proposition_one():
    spreads = []
    for fc, gc, sig in SHARING_PAIRS:
        f, g = curve(*fc), curve(*gc)
        rep = prop1_check(f, g, [H(s, f.k + 1) for s in sig], GRID50)
        spreads.append(rep.negative_spread)
    rng = random.Random(9)
    diag_ok = True
    for _ in range(100):
        k = rng.randint(1, 4)
        a = {(m, l): GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
             for m, l in itertools.combinations(range(k + 1), 2)}
        a[(0, 1)] = GaussianRational(1)
        p = [GaussianRational(rng.randint(-9, 9), rng.randint(-9, 9)) / rng.randint(1, 5) for _ in range(k + 1)]
        diag_ok &= diagonal_section(a, p, p) == 0
    record(9, len(spreads) >= 5 and max(spreads) < 0.1 and diag_ok,
           f"{len(spreads)} pairs, worst negative spread {max(spreads):.2e}, diagonal exact {diag_ok}")


def test_criterion_10_min_inequality_and_truncation():
    exhaustive = all(min_inequality(a, b, k) for k in range(1, 11) for a in range(21) for b in range(21))
    z = UniPolynomial.z()
    one = UniPolynomial.constant(1)
    fixtures = [z ** 3, z * (z - 2 * one) ** 2, (z - one) ** 4 * (z + 3 * one), z ** 2 + one,
                (z ** 2 - 2 * one) ** 3 * z, (z - one) ** 5 * (z + one) ** 2 * z ** 4]
    ordered = True
    for p in fixtures:
        div = DivisorOnDisk.of(p)
        for r in (1.0, 1.5, 2.0, 10.0, 100.0):
            for k in range(1, 6):
                n1, nk, n = div.counting(r, 1), div.counting(r, k), div.counting(r)
                ordered &= n1 <= nk <= n and nk <= k * n1 * (1 + 1e-15)
    record(10, exhaustive and ordered, f"min-inequality {exhaustive}, truncation ordering {ordered}")


def test_criterion_11_cli_determinism_and_exit_codes(tmp_path, capsys):
    cartan = {"basis": {"k": 1, "d": 1, "S": ["X0", "X1"]}, "curve": ["1", "z"],
              "sigmas": ["X1", [-1, 1], "X0"], "grid": {"rMin": 2, "rMax": 100, "count": 20}}
    path = tmp_path / "cartan.json"
    path.write_text(json.dumps(cartan))
    blobs = []
    for n in range(2):
        out = tmp_path / f"run{n}"
        main(["--out", str(out), "--format", "both", "smt", "verify", str(path)])
        blobs.append((out / "smt_verify.json").read_bytes() + (out / "smt_verify.csv").read_bytes())
    deterministic = blobs[0] == blobs[1]

    def fixture(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)

    matrix = [
        (["smt", "verify", str(path)], 0),
        (["thresholds", "--k", "1", "--d", "1", "--c", "0"], 0),
        (["connection", "build", fixture("fermat.json", {"k": 2, "d": 3, "kind": "fermat"})], 0),
        (["connection", "check", fixture("bad.json", {"k": 1, "d": 1, "S": ["X0", "X1"], "gamma": [
            {"lam": 0, "i": 0, "j": 0, "num": "X1", "den": "X0^2"}]})], 1),
        (["connection", "build", fixture("dup.json", {"k": 1, "d": 2, "S": ["X0^2", "X0^2"]})], 2),
        (["smt", "verify", fixture("deg.json", dict(cartan, basis={"k": 2, "d": 1, "kind": "coordinates"},
                                                    curve=["1", "z", "2*z"],
                                                    sigmas=["X0", "X1", "X2", "X0 + X1 + X2"]))], 2),
        (["smt", "verify", fixture("malformed.json", "{\"basis\": ")], 2),
        (["thresholds", "--k", "0", "--d", "1"], 2),
        (["uniqueness", "run", fixture("same.json", dict(cartan, curves=[["1", "z"], ["1", "z"]]))], 2),
    ]
    wrong = []
    for argv, expected in matrix:
        code = main(argv)
        if code != expected:
            wrong.append((argv[:2], code, expected))
    capsys.readouterr()
    record(11, deterministic and not wrong, f"byte-identical {deterministic}, exit-code mismatches {wrong}")
