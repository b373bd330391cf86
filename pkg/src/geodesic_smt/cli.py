"""Command-line front end.

Every command reads a JSON scenario (except ``thresholds``), runs the
matching library operation and writes a deterministic report.  Exit status:
0 when every verdict passes, 1 when some verdict fails, 2 on parse errors and
violated hypotheses.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .algebra.gaussian import GaussianRational
from .algebra.polynomial import HomogeneousPolynomial, Polynomial
from .algebra.rational import RationalFunction
from .connection import (
    LinearSystemBasis,
    check_euler_property,
    check_homogeneity_degree,
    chart_restrict,
    polar_degree,
    solve_christoffel,
    verify_geodesic_identity,
)
from .curve import ProjectiveCurve, chart_zero_sets, connection_wronskian, zero_order_inequality_check
from .errors import DegreeMismatch, GeodesicSMTError, HypothesisError, ParseError
from .nevanlinna import QUAD_TOL, RadiusGrid, evaluate_table, growth_index
from .theorems import (
    DEFAULT_EPSILON,
    SMTConfig,
    smt_verify,
    theorem5_harness,
    uniqueness_thresholds,
)

EXIT_PASS, EXIT_FAIL, EXIT_HYPOTHESIS = 0, 1, 2
CSV_DIGITS = 12


class ScenarioError(GeodesicSMTError):
    """Malformed scenario document (exit 2)."""


# -- scenario loading -----------------------------------------------------
def load_json(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"{path}: top level must be an object")
    return doc


def _resolve_basis_ref(doc: dict, base_dir: Path) -> dict:
    basis = doc.get("basis")
    if isinstance(basis, str):
        ref = base_dir / basis
        if not ref.exists():
            raise ScenarioError(f"basis file {basis!r} does not exist")
        basis = load_json(str(ref))
        basis = basis.get("basis", basis)
    return basis


def canonical_scenario(doc: dict, base_dir: Path) -> dict:
    """Scenario with referenced files inlined (the thing that gets hashed)."""
    out = dict(doc)
    if "basis" in doc:
        out["basis"] = _resolve_basis_ref(doc, base_dir)
    out.pop("outputs", None)
    return out


def digest(doc: dict) -> str:
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _field(doc: dict, name: str, kind=None, where: str = "scenario"):
    if name not in doc:
        raise ScenarioError(f"{where}: missing field {name!r}")
    value = doc[name]
    if kind is not None and not isinstance(value, kind):
        raise ScenarioError(f"{where}: field {name!r} has the wrong type")
    return value


def _parse_labeled(label: str, fn, *args):
    try:
        return fn(*args)
    except ParseError as exc:
        raise ParseError(f"{label}: {exc.message}", exc.line, exc.column) from None
    except DegreeMismatch as exc:
        raise DegreeMismatch(f"{label}: {exc}") from None


def build_basis(doc: dict) -> LinearSystemBasis:
    if not isinstance(doc, dict):
        raise ScenarioError("basis must be an object or a file name")
    k = _field(doc, "k", int, "basis")
    d = doc.get("d", 1)
    kind = doc.get("kind")
    if kind == "coordinates":
        return LinearSystemBasis.coordinates(k)
    if kind == "fermat":
        return LinearSystemBasis.fermat(k, d)
    if kind is not None:
        raise ScenarioError(f"basis: unknown kind {kind!r}")
    texts = _field(doc, "S", list, "basis")
    polys = tuple(_parse_labeled(f"basis.S[{i}]", HomogeneousPolynomial.parse, str(t), k + 1, d)
                  for i, t in enumerate(texts))
    return LinearSystemBasis(k, d, polys)


def build_curve(texts, label: str = "curve") -> ProjectiveCurve:
    if not isinstance(texts, list) or not texts:
        raise ScenarioError(f"{label} must be a nonempty list of component strings")
    return _parse_labeled(label, ProjectiveCurve.parse, [str(t) for t in texts])


def build_sigmas(items, k: int, basis: LinearSystemBasis | None) -> list[Polynomial]:
    if not isinstance(items, list) or not items:
        raise ScenarioError("sigmas must be a nonempty list")
    out = []
    for j, item in enumerate(items):
        label = f"sigmas[{j}]"
        if isinstance(item, list):
            if basis is None:
                raise ScenarioError(f"{label}: span coefficients need a basis")
            if len(item) != k + 1:
                raise ScenarioError(f"{label}: need {k + 1} span coefficients")
            coeffs = [_parse_labeled(label, GaussianRational.coerce, c if not isinstance(c, float) else repr(c))
                      for c in item]
            out.append(basis.member(coeffs))
        else:
            degree = basis.d if basis is not None else None
            out.append(_parse_labeled(label, HomogeneousPolynomial.parse, str(item), k + 1, degree))
    return out


def build_grid(doc: dict) -> RadiusGrid:
    g = _field(doc, "grid", dict)
    R = g.get("R")
    R = math.inf if R is None else float(R)
    try:
        return RadiusGrid.spaced(float(g.get("rMin", 2.0)), float(g.get("rMax", 100.0)),
                                 int(g.get("count", 50)), g.get("spacing", "log"), R)
    except ValueError as exc:
        raise ScenarioError(f"grid: {exc}") from None


# -- formatting -----------------------------------------------------------
def jsonable(x):
    if isinstance(x, np.generic):
        x = x.item()
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, (GaussianRational, Polynomial, RationalFunction)):
        return str(x)
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


def fmt_csv(x) -> str:
    if isinstance(x, float):
        return f"{x:.{CSV_DIGITS}g}"
    return str(x)


def table_csv(columns: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt_csv(v) for v in row])
    return buf.getvalue()


class Report:
    def __init__(self, command: str, input_digest: str | None):
        self.command = command
        self.input_digest = input_digest
        self.verdicts: dict = {}
        self.data: dict = {}
        self.table: tuple[list[str], list[list]] | None = None
        self.warnings: list = []
        self.notes: list = []

    @property
    def passed(self) -> bool:
        return all(bool(v) for v in self.verdicts.values())

    def to_json(self) -> str:
        body = {
            "tool": "geodesic-smt",
            "version": __version__,
            "command": self.command,
            "inputDigest": self.input_digest,
            "passed": self.passed,
            "verdicts": self.verdicts,
            "warnings": self.warnings,
            "notes": self.notes,
            **self.data,
        }
        if self.table is not None:
            cols, rows = self.table
            body["table"] = {"columns": cols, "rows": rows}
        return json.dumps(jsonable(body), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        if self.table is None:
            return ""
        return table_csv(*self.table)


def emit(report: Report, args) -> None:
    stem = report.command.replace(" ", "_")
    outputs = []
    if args.format in ("json", "both"):
        outputs.append((f"{stem}.json", report.to_json()))
    if args.format in ("csv", "both") and report.table is not None:
        outputs.append((f"{stem}.csv", report.to_csv()))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in outputs:
            (out / name).write_text(text)
        print(f"{report.command}: {'pass' if report.passed else 'fail'} -> {out}")
    else:
        for _, text in outputs:
            sys.stdout.write(text)


# -- commands -------------------------------------------------------------
def _scenario(args) -> tuple[dict, str, Path]:
    doc = load_json(args.file)
    base = Path(args.file).resolve().parent
    canon = canonical_scenario(doc, base)
    return canon, digest(canon), base


def _supplied_tensor(tensor, entries):
    """Replace Christoffel entries with user-supplied {lam, i, j, num, den} objects."""
    n = tensor.k + 1
    for e in entries:
        lam, i, j = int(e["lam"]), int(e["i"]), int(e["j"])
        label = f"gamma[{lam}][{i}][{j}]"
        num = _parse_labeled(label, Polynomial.parse, str(e.get("num", "0")), n)
        den = _parse_labeled(label, Polynomial.parse, str(e.get("den", "1")), n)
        tensor = tensor.copy_with(lam, i, j, RationalFunction(num, den))
    return tensor


def _connection_report(args, full: bool) -> Report:
    doc, dig, base = _scenario(args)
    basis = build_basis(doc.get("basis", doc))
    tensor = solve_christoffel(basis)
    if not full and "gamma" in doc:
        tensor = _supplied_tensor(tensor, doc["gamma"])
    rep = Report("connection build" if full else "connection check", dig)
    rep.verdicts["homogeneity"] = check_homogeneity_degree(tensor)
    euler = check_euler_property(tensor, samples=int(doc.get("samples", 100)), seed=args.seed)
    rep.verdicts["euler"] = euler.holds
    geo = [verify_geodesic_identity(tensor, s) for s in basis.S]
    rep.verdicts["geodesic"] = all(g.holds for g in geo)
    polar = polar_degree(tensor)
    rep.verdicts["polarDegree"] = polar.degree <= polar.bound
    rep.data["delta"] = str(basis.delta)
    rep.data["deltaDegree"] = polar.degree
    rep.data["polarBound"] = polar.bound
    rep.data["eulerResidual"] = euler.worst_residual
    rep.data["eulerRankRatio"] = euler.worst_rank_ratio
    if full:
        rep.data["gamma"] = [
            {"lam": lam, "i": i, "j": j, "value": str(g)}
            for (lam, i, j), g in tensor.entries() if not g.is_zero()
        ]
        rep.data["flat"] = tensor.is_flat()
    rep.data["geodesicFailures"] = [
        {"mu": mu, "i": i, "j": j, "residual": r} for mu, g in enumerate(geo) for i, j, r in g.nonzero
    ]
    rows = [[f"S_{mu}", int(g.holds)] for mu, g in enumerate(geo)]
    rep.table = (["member", "geodesic"], rows)
    return rep


def cmd_connection_build(args) -> Report:
    return _connection_report(args, True)


def cmd_connection_check(args) -> Report:
    return _connection_report(args, False)


def cmd_curve_wronskian(args) -> Report:
    doc, dig, _ = _scenario(args)
    basis = build_basis(_field(doc, "basis"))
    curve = build_curve(_field(doc, "curve"))
    if curve.k != basis.k:
        raise ScenarioError("curve and basis live in different projective spaces")
    tensor = solve_christoffel(basis)
    chart = int(doc.get("chart", curve.default_chart()))
    W = connection_wronskian(curve, chart_restrict(tensor, chart))
    rep = Report("curve wronskian", dig)
    rep.data["chart"] = chart
    rep.data["wronskian"] = str(W.value)
    rep.data["identicallyZero"] = W.identically_zero
    rep.data["chartZeroSets"] = chart_zero_sets(curve, tensor)
    rows = []
    for n, item in enumerate(doc.get("zeroOrder", [])):
        label = f"zeroOrder[{n}]"
        sigma = _parse_labeled(label, HomogeneousPolynomial.parse, str(item["sigma"]), basis.k + 1, basis.d)
        z0 = item.get("z0", "0")
        z0 = _parse_labeled(label, GaussianRational.coerce, str(z0))
        res = zero_order_inequality_check(curve, chart_restrict(tensor, chart), basis.delta, sigma, z0, W)
        rows.append([str(sigma), str(z0), res.ord_sigma, res.ord_lhs, int(res.vacuous), int(res.holds)])
        rep.verdicts[label] = res.holds
    rep.table = (["sigma", "z0", "ordSigma", "ordLhs", "vacuous", "holds"], rows)
    return rep


def cmd_nevanlinna_eval(args) -> Report:
    doc, dig, _ = _scenario(args)
    curve = build_curve(_field(doc, "curve"))
    basis = build_basis(doc["basis"]) if "basis" in doc else None
    sigmas = build_sigmas(_field(doc, "sigmas"), curve.k, basis)
    grid = build_grid(doc)
    trunc = doc.get("truncation", curve.k)
    vals = evaluate_table(curve, sigmas, grid, int(trunc), args.quad_tol)
    rep = Report("nevanlinna eval", dig)
    rep.data["anchor"] = vals.anchor
    rows = []
    for j, s in enumerate(sigmas):
        spread = max(vals.residual[j]) - min(vals.residual[j])
        rep.verdicts[f"fmt[{j}]"] = spread < 0.1
        rep.data.setdefault("residualSpread", []).append(spread)
        for n, r in enumerate(vals.radii):
            rows.append([j, r, vals.T[n], vals.m[j][n], vals.N[j][n], vals.Nk[j][n], vals.residual[j][n]])
    rep.table = (["sigma", "r", "T", "m", "N", "Nk", "residual"], rows)
    return rep


def _smt_config(doc: dict, args, curve_field: str = "curve") -> SMTConfig:
    basis = build_basis(_field(doc, "basis"))
    curve = build_curve(_field(doc, curve_field))
    if curve.k != basis.k:
        raise ScenarioError("curve and basis live in different projective spaces")
    sigmas = build_sigmas(_field(doc, "sigmas"), basis.k, basis)
    grid = build_grid(doc)
    gi = growth_index(grid.R, doc.get("growthIndex"))
    eps = float(doc.get("epsilon", args.epsilon))
    return SMTConfig(basis, sigmas, curve, grid, eps, gi, args.quad_tol,
                     float(doc.get("logConstant", 0.0)), doc.get("chart"), args.seed)


def cmd_smt_verify(args) -> Report:
    doc, dig, _ = _scenario(args)
    cfg = _smt_config(doc, args)
    res = smt_verify(cfg)
    rep = Report("smt verify", dig)
    rep.verdicts["smt"] = res.overall
    rep.data["coefficient"] = res.coefficient
    rep.data["modes"] = res.verdicts
    rep.data["fittedConstant"] = res.fitted_constant
    rep.data["anchor"] = res.anchor
    rep.data["epsilon"] = cfg.epsilon
    rep.data["growthIndex"] = cfg.growth.value
    rep.warnings = res.warnings
    rep.notes = res.notes
    rows = [[r, T, l, n, e, rh, m, int(m >= 0)]
            for r, T, l, n, e, rh, m in zip(res.radii, res.T, res.lhs, res.nk_sum,
                                            res.error_term, res.rhs, res.margin)]
    rep.table = (["r", "T", "lhs", "NkSum", "errorTermPrincipal", "rhs", "margin", "nonnegative"], rows)
    return rep


def cmd_uniqueness_run(args) -> Report:
    doc, dig, _ = _scenario(args)
    curves = _field(doc, "curves", list)
    if len(curves) != 2:
        raise ScenarioError("uniqueness needs exactly two curves")
    basis = build_basis(_field(doc, "basis"))
    f = build_curve(curves[0], "curves[0]")
    g = build_curve(curves[1], "curves[1]")
    if f.k != basis.k or g.k != basis.k:
        raise ScenarioError("curves and basis live in different projective spaces")
    sigmas = build_sigmas(_field(doc, "sigmas"), basis.k, basis)
    grid = build_grid(doc)
    c = growth_index(grid.R, doc.get("growthIndex")).value
    if f.same_point_as(g):
        from .errors import CurvesIdentical

        raise CurvesIdentical("f and g define the same map; nothing to test")
    h = theorem5_harness(f, g, basis, sigmas, grid, c, float(doc.get("epsilon", args.epsilon)),
                         args.quad_tol, enforce_sharing=True, seed=args.seed)
    rep = Report("uniqueness run", dig)
    rep.verdicts.update(h.passed)
    rep.data["verdict"] = h.verdict
    rep.data["q"] = h.q
    rep.data["threshold"] = h.threshold
    rep.data["classes"] = h.groups.classes
    rep.data["pairing"] = h.groups.pairing
    rep.data["sharingPoints"] = h.prop1.sharing_points
    rep.warnings = h.warnings
    rows = []
    for n, r in enumerate(h.radii):
        rows.append([r, h.smt_f.margin[n], h.smt_g.margin[n], h.domination_margin[n],
                     h.prop1.margin[n], h.combined_margin[n]])
    rep.table = (["r", "smtMarginF", "smtMarginG", "domination", "prop1", "combined"], rows)
    return rep


def cmd_thresholds(args) -> Report:
    if args.k < 1 or args.d < 1:
        raise ScenarioError("need --k >= 1 and --d >= 1")
    try:
        c = Fraction(args.c)
    except ValueError:
        raise ScenarioError(f"--c: not a number: {args.c!r}") from None
    if c < 0:
        raise ScenarioError("need --c >= 0")
    table = uniqueness_thresholds(args.k, args.d, c)
    rep = Report("thresholds", digest({"k": args.k, "d": args.d, "c": str(c)}))
    rows = [[r.name, str(r.bound), r.relation, "" if r.min_q is None else r.min_q, r.formula]
            for r in table.rows]
    rep.table = (["name", "bound", "relation", "minQ", "formula"], rows)
    if args.csv:
        Path(args.csv).write_text(rep.to_csv())
    return rep


def print_threshold_table(rep: Report) -> None:
    cols, rows = rep.table
    widths = [max(len(str(x)) for x in col) for col in zip(cols, *rows)]
    for row in [cols, *rows]:
        print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)).rstrip())


# -- argument parsing -----------------------------------------------------
def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # Accepted before or after the subcommand; the copy on subcommands uses
    # SUPPRESS so it does not overwrite a value given before the subcommand.
    def default(value):
        return argparse.SUPPRESS if suppress else value

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=default(None), help="directory for report files (default: stdout)")
    common.add_argument("--format", choices=["json", "csv", "both"], default=default("json"))
    common.add_argument("--epsilon", type=float, default=default(DEFAULT_EPSILON))
    common.add_argument("--quad-tol", type=float, default=default(QUAD_TOL))
    common.add_argument("--seed", type=int, default=default(0))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    p = argparse.ArgumentParser(prog="geodesic-smt", parents=[_global_flags(suppress=False)],
                                description="Connections, Wronskians and Nevanlinna checks for polynomial curves.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="group", required=True)

    conn = sub.add_parser("connection", help="build or check the connection of a basis")
    csub = conn.add_subparsers(dest="action", required=True)
    for name, fn in (("build", cmd_connection_build), ("check", cmd_connection_check)):
        sp = csub.add_parser(name, parents=[common])
        sp.add_argument("file")
        sp.set_defaults(func=fn)

    cur = sub.add_parser("curve", help="connection Wronskian of a curve")
    cursub = cur.add_subparsers(dest="action", required=True)
    sp = cursub.add_parser("wronskian", parents=[common])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_curve_wronskian)

    nev = sub.add_parser("nevanlinna", help="evaluate T, m, N, N_k on a grid")
    nsub = nev.add_subparsers(dest="action", required=True)
    sp = nsub.add_parser("eval", parents=[common])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_nevanlinna_eval)

    smt = sub.add_parser("smt", help="verify the second main theorem inequality")
    ssub = smt.add_subparsers(dest="action", required=True)
    sp = ssub.add_parser("verify", parents=[common])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_smt_verify)

    uni = sub.add_parser("uniqueness", help="run the uniqueness harness on two curves")
    usub = uni.add_subparsers(dest="action", required=True)
    sp = usub.add_parser("run", parents=[common])
    sp.add_argument("file")
    sp.set_defaults(func=cmd_uniqueness_run)

    th = sub.add_parser("thresholds", parents=[common], help="print uniqueness thresholds")
    th.add_argument("--k", type=int, required=True)
    th.add_argument("--d", type=int, required=True)
    th.add_argument("--c", default="0")
    th.add_argument("--csv", help="also write the table to this CSV file")
    th.set_defaults(func=cmd_thresholds)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_HYPOTHESIS if exc.code else EXIT_PASS
    try:
        report = args.func(args)
    except ParseError as exc:
        print(f"error: parse error at line {exc.line}, column {exc.column}: {exc.message}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except HypothesisError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (ScenarioError, ValueError, KeyError, TypeError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    if args.func is cmd_thresholds and not args.out and args.format == "json":
        print_threshold_table(report)
    else:
        emit(report, args)
    return EXIT_PASS if report.passed else EXIT_FAIL


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
