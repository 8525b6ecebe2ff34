"""Command-line front end: build representations, verify axioms, sweep grids.

Four subcommands share one configuration surface:

``rep``
    Build a single truncated representation and print its matrices.
``verify``
    Run the selected check families at one parameter point and report
    every check with its expected outcome.  The conjugation checks carry
    expectations of both signs: at unimodular q the coproduct and antipode
    compatibility of the canonical involution must *fail* in the standard
    flavor, and at real q the canonical involution must fail outright
    while the imaginary family passes.  Exit code 0 means every observed
    outcome matched its expectation.
``sweep``
    Repeat the verification over an epsilon and/or k grid and emit one
    row per point (CSV by default).
``symbolic``
    Run the normal-ordering identities on Laurent coefficients alone,
    with no matrices involved.

Exit codes: 0 all expectations met, 1 a check violated its expectation,
2 invalid or degenerate parameters.  The environment variable ``QOSC_TOL``
overrides the default tolerances; an explicit ``--tol`` wins over both.
JSON output is byte-deterministic for a fixed configuration.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from .algcheck import (
    DEFAULT_TOL,
    CheckReport,
    casimir,
    check_defining_relations,
    check_ladder_identities,
)
from .errors import (
    DegenerateParameter,
    DimensionTooLarge,
    ModeMismatch,
    ParityViolation,
    QoscError,
)
from .hopfstar import (
    COASSOC_CAP,
    Flavor,
    check_hopf_axioms,
    check_star_structure,
    involution,
    parity_metric,
    with_flavor,
)
from .jsonio import cnum, dumps, params_to_json, rep_to_json, report_to_json
from .normform import DEFAULT_SYMBOLIC_TOL, N_MAX_CAP, check_identities_symbolic
from .qcore import Mode, QParams, make_params
from .repbuild import MAX_K, Rep, build_rep, choose_branch
from .sumap import check_equivalence, check_su2, to_su2

CHECK_FAMILIES = (
    "algebra",
    "ladder",
    "casimir",
    "hopf",
    "star:canonical",
    "star:imaginary",
    "suq2",
    "symbolic",
)

# Verification entries pair a report with the outcome the theory demands.
Entry = tuple[CheckReport, str]

# Canonical involution arms that must fail when the wrong flavor is forced
# at |q| = 1 (the N components stay compatible, the ladder ones do not).
_UNI_STANDARD_FAILS = frozenset(
    {
        "coproduct_standard_a",
        "coproduct_standard_abar",
        "antipode_standard_a",
        "antipode_standard_abar",
    }
)

# At real q the canonical involution is not even an algebra *-structure on
# the built representation, and its nonstandard compatibility breaks in
# every component that feels the complex gamma.
_REAL_CANONICAL_FAILS = frozenset(
    {
        "star_matrix_a",
        "star_matrix_abar",
        "star_matrix_N",
        "coproduct_nonstandard_a",
        "coproduct_nonstandard_abar",
        "coproduct_nonstandard_N",
        "counit_N",
        "antipode_nonstandard_a",
        "antipode_nonstandard_abar",
        "antipode_nonstandard_N",
    }
)

_CSV_COLUMNS = (
    "mode",
    "epsilon",
    "l",
    "k",
    "status",
    "casimir_re",
    "casimir_im",
    "res_algebra",
    "res_ladder",
    "res_hopf",
    "res_star",
    "res_suq2",
)

_RESIDUAL_COLUMN = {
    "algebra": "res_algebra",
    "ladder": "res_ladder",
    "hopf": "res_hopf",
    "star:canonical": "res_star",
    "star:imaginary": "res_star",
    "suq2": "res_suq2",
}


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation parameters shared by every subcommand."""

    mode: Mode
    epsilons: tuple[float, ...]
    l: Optional[int]  # None = choose the branch automatically
    ks: tuple[int, ...]
    checks: tuple[str, ...]
    tol: float
    sym_tol: float
    fmt: str
    out: Optional[str]
    n_max: int
    tamper: float = 0.0

    @property
    def epsilon(self) -> float:
        return self.epsilons[0]

    @property
    def k(self) -> int:
        return self.ks[0]


# ---------------------------------------------------------------------------
# check family runners


def _prefixed(label: str, report: CheckReport) -> CheckReport:
    return dataclasses.replace(report, name=f"{label}.{report.name}")


def _star_arms(rep: Rep, family: str) -> list[tuple[str, Any, Any, frozenset]]:
    params = rep.params
    if family == "star:canonical":
        canonical = involution("canonical", params)
        if params.mode is Mode.UNIMODULAR:
            return [
                ("canonical", canonical, None, frozenset()),
                (
                    "canonical_standard",
                    with_flavor(canonical, Flavor.STANDARD),
                    None,
                    _UNI_STANDARD_FAILS,
                ),
            ]
        return [("canonical", canonical, None, _REAL_CANONICAL_FAILS)]
    if params.mode is Mode.UNIMODULAR:
        raise ModeMismatch("star:imaginary checks exist only for real q")
    return [
        ("imaginary_minus", involution("imaginary_minus", params), None, frozenset()),
        (
            "imaginary_plus",
            involution("imaginary_plus", params),
            parity_metric(rep.dim),
            frozenset(),
        ),
    ]


def _run_star(rep: Rep, family: str, tol: float) -> list[Entry]:
    entries: list[Entry] = []
    for label, inv, metric, expected_fails in _star_arms(rep, family):
        for report in check_star_structure(rep, inv, tol, metric=metric):
            expected = "fail" if report.name in expected_fails else "pass"
            entries.append((_prefixed(label, report), expected))
    return entries


def _family_runs(family: str, rep: Rep, cfg: RunConfig) -> list[Entry]:
    if family == "algebra":
        return [(r, "pass") for r in check_defining_relations(rep, cfg.tol)]
    if family == "ladder":
        n_max = min(cfg.n_max, rep.k + 1)
        return [(r, "pass") for r in check_ladder_identities(rep, n_max, cfg.tol)]
    if family == "casimir":
        return [(r, "pass") for r in casimir(rep, cfg.tol).reports]
    if family == "hopf":
        return [(r, "pass") for r in check_hopf_axioms(rep, cfg.tol)]
    if family in ("star:canonical", "star:imaginary"):
        return _run_star(rep, family, cfg.tol)
    if family == "suq2":
        triple = to_su2(rep)
        reports = list(check_su2(triple, cfg.tol)) + [check_equivalence(rep, cfg.tol)]
        return [(r, "pass") for r in reports]
    if family == "symbolic":
        reports = check_identities_symbolic(
            rep.params, cfg.n_max, cfg.sym_tol, tamper=cfg.tamper
        )
        return [(r, "pass") for r in reports]
    raise ValueError(f"unknown check family {family!r}")


def _entries_match(entries: Sequence[Entry]) -> bool:
    return all((expected == "pass") == report.passed for report, expected in entries)


# ---------------------------------------------------------------------------
# parameter resolution and validation


def _resolve_params(cfg: RunConfig, epsilon: float) -> QParams:
    l = choose_branch(cfg.mode, epsilon) if cfg.l is None else cfg.l
    return make_params(cfg.mode, epsilon, l)


def _validate_selection(cfg: RunConfig) -> None:
    if "star:imaginary" in cfg.checks and cfg.mode is Mode.UNIMODULAR:
        raise ModeMismatch("star:imaginary checks exist only for real q")
    k_max = max(cfg.ks)
    if k_max > MAX_K:
        raise DimensionTooLarge(f"k={k_max} exceeds the cap {MAX_K}")
    if "hopf" in cfg.checks and (k_max + 1) ** 3 > COASSOC_CAP:
        raise DimensionTooLarge(
            f"hopf coassociativity at k={k_max} needs dimension {(k_max + 1) ** 3} "
            f"> cap {COASSOC_CAP}; drop hopf from --checks or lower k"
        )


# ---------------------------------------------------------------------------
# output assembly


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    with open(cfg.out, "w", newline="") as fh:
        fh.write(text)


def _report_params(params: QParams, k: Optional[int]) -> dict[str, Any]:
    doc = params_to_json(params)
    if k is not None:
        doc["k"] = k
    return doc


def _verify_doc(params: QParams, k: int, entries: Sequence[Entry], scalar: complex) -> dict[str, Any]:
    return {
        "params": _report_params(params, k),
        "checks": [report_to_json(r, expected=e) for r, e in entries],
        "casimir": cnum(scalar),
    }


def _verify_text(doc: dict[str, Any]) -> str:
    p = doc["params"]
    lines = [
        "mode={mode} epsilon={epsilon:.12g} l={l} k={k}".format(**p),
        f"casimir = {doc['casimir'][0]:.12g} {doc['casimir'][1]:+.12g}i",
    ]
    bad = 0
    for chk in doc["checks"]:
        observed = "pass" if chk["pass"] else "fail"
        marker = "ok " if observed == chk["expected"] else "BAD"
        bad += marker == "BAD"
        lines.append(
            f"{marker} {chk['name']:<42} residual={chk['residual']:.3e} "
            f"tol={chk['tolerance']:.1e} expected={chk['expected']} observed={observed}"
        )
    lines.append(f"result: {'ok' if bad == 0 else f'{bad} unexpected outcome(s)'}")
    return "\n".join(lines) + "\n"


def _symbolic_text(doc: dict[str, Any]) -> str:
    p = doc["params"]
    lines = [f"mode={p['mode']} epsilon={p['epsilon']:.12g} n_max={doc['n_max']}"]
    for chk in doc["checks"]:
        marker = "ok " if chk["pass"] else "BAD"
        lines.append(
            f"{marker} {chk['name']:<24} defect={chk['residual']:.3e} tol={chk['tolerance']:.1e}"
        )
    failed = sum(not chk["pass"] for chk in doc["checks"])
    lines.append(f"result: {'ok' if failed == 0 else f'{failed} nonzero defect(s)'}")
    return "\n".join(lines) + "\n"


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _csv_text(rows: Sequence[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_COLUMNS)
    for row in rows:
        writer.writerow([_csv_cell(row[col]) for col in _CSV_COLUMNS])
    return buf.getvalue()


def _table_text(rows: Sequence[dict[str, Any]]) -> str:
    def short(col: str, value: Any) -> str:
        if value is None:
            return "-"
        if isinstance(value, float):
            return format(value, ".6g" if col in ("epsilon", "casimir_re", "casimir_im") else ".2e")
        return str(value)

    cells = [list(_CSV_COLUMNS)] + [
        [short(col, row[col]) for col in _CSV_COLUMNS] for row in rows
    ]
    widths = [max(len(line[i]) for line in cells) for i in range(len(_CSV_COLUMNS))]
    return "\n".join(
        "  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
        for line in cells
    ) + "\n"


def _rep_text(rep: Rep) -> str:
    def matrix_lines(name: str, m) -> list[str]:
        body = [
            "  [" + ", ".join(f"{m[i, j]:.12g}" for j in range(m.shape[1])) + "]"
            for i in range(m.shape[0])
        ]
        return [f"{name} ="] + body

    p = rep.params
    lines = [
        f"mode={p.mode.value} epsilon={p.epsilon:.12g} l={p.l} k={rep.k}",
        f"nu0 = {rep.nu0:.12g}",
        f"lambda = [{', '.join(format(lam, '.12g') for lam in rep.lambdas)}]",
    ]
    for name, m in (("A", rep.A), ("Abar", rep.Abar), ("N", rep.Nmat)):
        lines.extend(matrix_lines(name, m))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# subcommands


def cmd_build(cfg: RunConfig) -> int:
    rep = build_rep(_resolve_params(cfg, cfg.epsilon), cfg.k)
    if cfg.fmt == "json":
        _emit(cfg, dumps(rep_to_json(rep)) + "\n")
    else:
        _emit(cfg, _rep_text(rep))
    return 0


def _run_point(cfg: RunConfig, epsilon: float, k: int) -> tuple[QParams, Rep, complex, dict[str, list[Entry]]]:
    params = _resolve_params(cfg, epsilon)
    rep = build_rep(params, k)
    scalar = casimir(rep, cfg.tol).scalar
    by_family = {family: _family_runs(family, rep, cfg) for family in cfg.checks}
    return params, rep, scalar, by_family


def _aggregate_row(
    cfg: RunConfig, epsilon: float, k: int
) -> tuple[dict[str, Any], Optional[dict[str, list[Entry]]], Optional[QParams]]:
    row: dict[str, Any] = {col: None for col in _CSV_COLUMNS}
    row.update(mode=cfg.mode.value, epsilon=epsilon, k=k, status="ok")
    try:
        params = _resolve_params(cfg, epsilon)
        rep = build_rep(params, k)
    except DegenerateParameter:
        row["status"] = "skipped:singular"
        return row, None, None
    except ParityViolation:
        row["status"] = "skipped:parity"
        return row, None, None
    row["l"] = params.l
    scalar = casimir(rep, cfg.tol).scalar
    row["casimir_re"], row["casimir_im"] = scalar.real, scalar.imag
    by_family: dict[str, list[Entry]] = {}
    singular = False
    for family in cfg.checks:
        try:
            entries = _family_runs(family, rep, cfg)
        except DegenerateParameter:
            if family != "suq2":
                raise
            singular = True  # su map rejected at a singular locus; other checks stand
            continue
        by_family[family] = entries
        column = _RESIDUAL_COLUMN.get(family)
        if column is not None:
            passing = [r.residual for r, e in entries if e == "pass"]
            if passing:
                worst = max(passing)
                prior = row[column]
                row[column] = worst if prior is None else max(prior, worst)
    mismatch = not all(_entries_match(entries) for entries in by_family.values())
    row["status"] = "fail" if mismatch else ("skipped:singular" if singular else "ok")
    return row, by_family, params


def cmd_verify(cfg: RunConfig) -> int:
    _validate_selection(cfg)
    params, _, scalar, by_family = _run_point(cfg, cfg.epsilon, cfg.k)
    entries = [entry for family in cfg.checks for entry in by_family[family]]
    doc = _verify_doc(params, cfg.k, entries, scalar)
    if cfg.fmt == "json":
        _emit(cfg, dumps(doc) + "\n")
    elif cfg.fmt == "csv":
        row, _, _ = _aggregate_row(cfg, cfg.epsilon, cfg.k)
        _emit(cfg, _csv_text([row]))
    else:
        _emit(cfg, _verify_text(doc))
    return 0 if _entries_match(entries) else 1


def cmd_sweep(cfg: RunConfig) -> int:
    _validate_selection(cfg)
    rows = [
        _aggregate_row(cfg, epsilon, k)[0] for epsilon in cfg.epsilons for k in cfg.ks
    ]
    if cfg.fmt == "csv":
        _emit(cfg, _csv_text(rows))
    elif cfg.fmt == "json":
        _emit(cfg, dumps({"rows": [dict(zip(_CSV_COLUMNS, (r[c] for c in _CSV_COLUMNS))) for r in rows]}) + "\n")
    else:
        _emit(cfg, _table_text(rows))
    if all(row["status"].startswith("skipped") for row in rows):
        print("error: every grid point was skipped as singular or parity-violating", file=sys.stderr)
        return 2
    return 1 if any(row["status"] == "fail" for row in rows) else 0


def cmd_symbolic(cfg: RunConfig) -> int:
    params = _resolve_params(cfg, cfg.epsilon)
    reports = check_identities_symbolic(params, cfg.n_max, cfg.sym_tol, tamper=cfg.tamper)
    doc = {
        "params": _report_params(params, None),
        "n_max": cfg.n_max,
        "checks": [report_to_json(r, expected="pass") for r in reports],
    }
    _emit(cfg, dumps(doc) + "\n" if cfg.fmt == "json" else _symbolic_text(doc))
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# argument parsing


def _parse_l(raw: str) -> Optional[int]:
    if raw == "auto":
        return None
    try:
        return int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or 'auto', got {raw!r}")


def _parse_k_range(raw: str) -> tuple[int, ...]:
    if ".." in raw:
        lo_text, hi_text = raw.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty k range {raw!r}")
        return tuple(range(lo, hi + 1))
    return (int(raw),)


def _parse_grid(raw: str) -> tuple[float, ...]:
    parts = raw.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {raw!r}")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"degenerate grid {raw!r}")
    count = int((hi - lo) / step + 1e-9) + 1
    return tuple(lo + i * step for i in range(count))


def _parse_checks(raw: str) -> tuple[str, ...]:
    tokens = [t.strip() for t in raw.split(",") if t.strip()]
    unknown = [t for t in tokens if t not in CHECK_FAMILIES]
    if unknown:
        raise argparse.ArgumentTypeError(
            f"unknown checks {unknown}; valid: {', '.join(CHECK_FAMILIES)}"
        )
    if not tokens:
        raise argparse.ArgumentTypeError("empty check list")
    # normalize to the canonical family order so reports are deterministic
    return tuple(f for f in CHECK_FAMILIES if f in tokens)


def _default_checks(mode: Mode) -> tuple[str, ...]:
    if mode is Mode.UNIMODULAR:
        return tuple(f for f in CHECK_FAMILIES if f != "star:imaginary")
    return CHECK_FAMILIES


def _env_tol() -> Optional[float]:
    raw = os.environ.get("QOSC_TOL")
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError:
        raise ValueError(f"QOSC_TOL is not a number: {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qosc",
        description="build and verify truncated q-oscillator representations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, formats: tuple[str, ...], default_fmt: str) -> None:
        p.add_argument("--mode", required=True, choices=[m.value for m in Mode])
        p.add_argument("--l", type=_parse_l, default=None, metavar="INT|auto",
                       help="branch integer; 'auto' picks the parity-correct branch (default)")
        p.add_argument("--tol", type=float, default=None, help="override check tolerance")
        p.add_argument("--format", choices=formats, default=default_fmt)
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")

    p_rep = sub.add_parser("rep", help="build one representation and print it")
    add_common(p_rep, ("json", "text"), "json")
    p_rep.add_argument("--epsilon", type=float, required=True)
    p_rep.add_argument("--k", type=int, required=True, help="highest state index (dimension k+1)")

    p_verify = sub.add_parser("verify", help="run check families at one parameter point")
    add_common(p_verify, ("json", "csv", "text"), "json")
    p_verify.add_argument("--epsilon", type=float, required=True)
    p_verify.add_argument("--k", type=int, required=True)
    p_verify.add_argument("--checks", type=_parse_checks, default=None,
                          help="comma-separated subset of: " + ", ".join(CHECK_FAMILIES))
    p_verify.add_argument("--n-max", type=int, default=8,
                          help="ladder/symbolic identity depth (capped at k+1 and 16)")

    p_sweep = sub.add_parser("sweep", help="verify over an epsilon and/or k grid")
    add_common(p_sweep, ("csv", "json", "text"), "csv")
    grid = p_sweep.add_mutually_exclusive_group(required=True)
    grid.add_argument("--epsilon", type=float)
    grid.add_argument("--epsilon-grid", type=_parse_grid, metavar="LO:HI:STEP")
    p_sweep.add_argument("--k", type=_parse_k_range, required=True, metavar="INT|LO..HI")
    p_sweep.add_argument("--checks", type=_parse_checks, default=None,
                         help="comma-separated subset of: " + ", ".join(CHECK_FAMILIES))
    p_sweep.add_argument("--n-max", type=int, default=8)

    p_sym = sub.add_parser("symbolic", help="check normal-ordering identities on coefficients")
    add_common(p_sym, ("json", "text"), "json")
    p_sym.add_argument("--epsilon", type=float, required=True)
    p_sym.add_argument("--n-max", type=int, default=8, help=f"identity depth, at most {N_MAX_CAP}")
    p_sym.add_argument("--tamper-delta", type=float, default=0.0,
                       help="debug: offset the rewrite coefficient to force failures")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    env_tol = _env_tol()
    explicit = args.tol if args.tol is not None else env_tol
    if explicit is not None and explicit <= 0:
        raise ValueError(f"tolerance must be positive, got {explicit}")
    tol = explicit if explicit is not None else DEFAULT_TOL
    sym_tol = explicit if explicit is not None else DEFAULT_SYMBOLIC_TOL

    mode = Mode(args.mode)
    if args.command == "sweep":
        epsilons = args.epsilon_grid if args.epsilon_grid is not None else (args.epsilon,)
        ks = args.k
    else:
        epsilons = (args.epsilon,)
        ks = (args.k,) if args.command in ("rep", "verify") else (0,)

    checks = getattr(args, "checks", None)
    if checks is None:
        checks = _default_checks(mode)

    n_max = getattr(args, "n_max", 8)
    if not 1 <= n_max <= N_MAX_CAP:
        raise ValueError(f"n_max={n_max} outside 1..{N_MAX_CAP}")

    return RunConfig(
        mode=mode,
        epsilons=tuple(epsilons),
        l=args.l,
        ks=tuple(ks),
        checks=tuple(checks),
        tol=tol,
        sym_tol=sym_tol,
        fmt=args.format,
        out=args.out,
        n_max=n_max,
        tamper=getattr(args, "tamper_delta", 0.0),
    )


_COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "rep": cmd_build,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "symbolic": cmd_symbolic,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return _COMMANDS[args.command](cfg)
    except QoscError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
