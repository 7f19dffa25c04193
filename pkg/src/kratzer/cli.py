"""Command-line front end.

Subcommands: levels, spectrum, aim, verify, compare. Exit codes: 0 success,
1 domain/physics errors, 2 usage errors. All numeric output is serialized
at 17 significant digits with LF line endings, so identical inputs produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from pathlib import Path

from .aim import aim_solve
from .core import (
    EtaMode,
    MoleculeParams,
    QuantumState,
    CODATA2018,
    compute_beta,
    compute_gamma,
    compute_kappa,
    energy_level,
    energy_to_wavenumber,
    load_molecule,
)
from .errors import ConfigurationError, KratzerError
from .oracle import verification_report
from .spectro import compare_experiment, fundamental_band, load_band_centers
from . import __version__

_FORMATS = ("csv", "json", "text")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as exceptions, not sys.exit."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _nonneg_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = _nonneg_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {value}")
    return value


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return ""
    return str(value)


def _json_scalar(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    if value is None:
        return "null"
    if isinstance(value, int):
        return str(value)
    out = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{out}"'


def _json_render(value, indent: int = 0) -> str:
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        body = ",\n".join(f'{inner}"{k}": {_json_render(v, indent + 2)}' for k, v in value.items())
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        body = ",\n".join(f"{inner}{_json_render(v, indent + 2)}" for v in value)
        return "[\n" + body + "\n" + pad + "]"
    return _json_scalar(value)


def emit_table(rows, format: str = "csv", headers: list[str] | None = None) -> str:
    """Serialize homogeneous rows (dicts sharing one key set) bit-stably.

    Floats are written with 17 significant digits in every format; JSON is
    assembled textually so the same digits appear there as in the CSV.
    """
    if format not in _FORMATS:
        raise ConfigurationError(f"unknown table format {format!r}")
    if headers is None:
        headers = list(rows[0].keys()) if rows else []
    if format == "csv":
        lines = [",".join(headers)]
        lines.extend(",".join(_format_value(row[h]) for h in headers) for row in rows)
        return "\n".join(lines) + "\n"
    if format == "json":
        return _json_render([{h: row[h] for h in headers} for row in rows]) + "\n"
    cells = [[_format_value(row[h]) for h in headers] for row in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.extend(
        "  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells
    )
    return "\n".join(lines) + "\n"


def _resolve_molecule_path(name: str) -> Path:
    path = Path(name)
    if path.exists():
        return path
    if "/" not in name and "\\" not in name:
        bundled = resources.files("kratzer").joinpath(f"data/{name}")
        if bundled.is_file():
            return Path(str(bundled))
    raise ConfigurationError(f"molecule file not found: {name}")


def _load_params(args) -> MoleculeParams:
    eta = EtaMode(args.eta) if getattr(args, "eta", None) else None
    dimension = getattr(args, "dimension", None)
    return load_molecule(_resolve_molecule_path(args.molecule), eta_mode=eta, N=dimension)


def _cmd_levels(args) -> tuple[str, int]:
    params = _load_params(args)
    rows = []
    for v in range(args.v_max + 1):
        for J in range(args.j_max + 1):
            E = energy_level(QuantumState(n=v, l=J, N=params.N), params)
            rows.append(
                {
                    "v": v,
                    "J": J,
                    "energy_eV": E / CODATA2018.eV,
                    "wavenumber_cm1": energy_to_wavenumber(E),
                }
            )
    return emit_table(rows, args.format), 0


def _cmd_spectrum(args) -> tuple[str, int]:
    params = _load_params(args)
    report = fundamental_band(params, args.j_max)
    line_rows = [
        {
            "branch": t.branch,
            "J_lower": t.J,
            "J_upper": t.J_up,
            "wavenumber_cm1": t.wavenumber,
        }
        for t in sorted(report.lines(), key=lambda t: t.wavenumber)
    ]
    if args.format == "csv":
        return emit_table(line_rows, "csv"), 0
    if args.format == "json":
        known = load_band_centers()
        experiment = known.get(report.molecule)
        ratio = (experiment / report.center) if experiment else None
        payload = {
            "molecule": report.molecule,
            "center_theory": report.center,
            "center_experiment": experiment,
            "ratio": ratio,
            "flags": ["more_than_twice"] if ratio is not None and ratio > 2 else [],
            "lines": line_rows,
        }
        return _json_render(payload) + "\n", 0
    head = (
        f"molecule: {report.molecule}\n"
        f"band center: {report.center:.17g} cm^-1\n"
    )
    return head + emit_table(line_rows, "text"), 0


def _cmd_aim(args) -> tuple[str, int]:
    if args.molecule is not None:
        params = _load_params(args)
        kappa = compute_kappa(params)
        N = params.N
    else:
        kappa = args.kappa
        N = 3
    gamma = compute_gamma(kappa, args.l, N)
    result = aim_solve(kappa, gamma, N, args.n_max, y0=args.y0)
    rows = []
    for n, (root, k_used) in enumerate(zip(result.roots, result.iterations_used)):
        closed = compute_beta(n, kappa, gamma, N)
        rows.append(
            {
                "n": n,
                "beta_aim": root,
                "beta_closed_form": closed,
                "abs_delta": abs(root - closed),
                "iterations": k_used,
            }
        )
    return emit_table(rows, args.format), 0


def _cmd_verify(args) -> tuple[str, int]:
    params = _load_params(args)
    rows, ok = verification_report(
        params,
        n_max=args.n_max,
        l_max=args.l_max,
        tolerance=args.tolerance,
        points=args.points,
    )
    printable = [
        {
            "N": r["N"],
            "n": r["n"],
            "l": r["l"],
            "E_closed": r["E_closed"] / CODATA2018.eV,
            "E_oracle": r["E_oracle"] / CODATA2018.eV,
            "rel_err": r["rel_err"],
            "grid_points": r["grid_points"],
        }
        for r in rows
    ]
    if not ok:
        breaches = sum(1 for r in rows if r["rel_err"] >= args.tolerance)
        sys.stderr.write(
            f"kratzer: verification failed: {breaches} of {len(rows)} states "
            f"exceed tolerance {args.tolerance:g}\n"
        )
    return emit_table(printable, args.format), 0 if ok else 1


def _cmd_compare(args) -> tuple[str, int]:
    params = _load_params(args)
    report = fundamental_band(params, args.j_max)
    if args.experimental is not None:
        experiment = args.experimental
    else:
        centers = load_band_centers()
        if params.name not in centers:
            raise ConfigurationError(
                f"no bundled experimental band center for {params.name!r}; pass --experimental"
            )
        experiment = centers[params.name]
    c = compare_experiment(report, experiment)
    row = {
        "molecule": c.molecule,
        "center_theory_cm1": c.center_theory,
        "center_experiment_cm1": c.center_experiment,
        "ratio": c.ratio,
        "abs_deviation_cm1": c.abs_deviation,
        "rel_deviation": c.rel_deviation,
        "more_than_twice": c.more_than_twice,
    }
    if args.format == "json":
        payload = dict(row)
        payload["flags"] = ["more_than_twice"] if c.more_than_twice else []
        return _json_render(payload) + "\n", 0
    return emit_table([row], args.format), 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="kratzer", description=__doc__)
    parser.add_argument("--version", action="version", version=f"kratzer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, *, eta=True, dimension=False):
        if eta:
            p.add_argument("--eta", choices=("kratzer", "modified"),
                           help="energy-shift convention (default: molecule file)")
        if dimension:
            p.add_argument("--dimension", type=_positive_int, metavar="N",
                           help="spatial dimension override")
        p.add_argument("--format", choices=_FORMATS, default=None)
        p.add_argument("--output", metavar="FILE", help="write to FILE instead of stdout")

    p = sub.add_parser("levels", help="closed-form level table E_{v,J}")
    p.add_argument("--molecule", required=True)
    p.add_argument("--v-max", type=_nonneg_int, default=2)
    p.add_argument("--j-max", type=_nonneg_int, default=2)
    add_common(p, dimension=True)
    p.set_defaults(handler=_cmd_levels, default_format="csv")

    p = sub.add_parser("spectrum", help="fundamental-band P/R line list")
    p.add_argument("--molecule", required=True)
    p.add_argument("--j-max", type=_positive_int, default=5)
    add_common(p)
    p.set_defaults(handler=_cmd_spectrum, default_format="text")

    p = sub.add_parser("aim", help="iterative beta roots vs the closed form")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--molecule")
    group.add_argument("--kappa", type=_positive_float)
    p.add_argument("--l", type=_nonneg_int, default=0)
    p.add_argument("--n-max", type=_nonneg_int, default=5)
    p.add_argument("--y0", type=_positive_float, default=1.0)
    add_common(p, eta=False)
    p.set_defaults(handler=_cmd_aim, default_format="text")

    p = sub.add_parser("verify", help="finite-difference check of the closed form")
    p.add_argument("--molecule", required=True)
    p.add_argument("--n-max", type=_nonneg_int, default=3)
    p.add_argument("--l-max", type=_nonneg_int, default=3)
    p.add_argument("--tolerance", type=_positive_float, default=1e-6)
    p.add_argument("--points", type=_positive_int, default=20001)
    add_common(p, dimension=True)
    p.set_defaults(handler=_cmd_verify, default_format="csv")

    p = sub.add_parser("compare", help="predicted vs experimental band center")
    p.add_argument("--molecule", required=True)
    p.add_argument("--j-max", type=_positive_int, default=5)
    p.add_argument("--experimental", type=_positive_float, metavar="CM1",
                   help="experimental band center override, cm^-1")
    add_common(p)
    p.set_defaults(handler=_cmd_compare, default_format="text")

    return parser


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return 2
    if args.format is None:
        args.format = args.default_format
    try:
        text, code = args.handler(args)
    except ConfigurationError as exc:
        sys.stderr.write(f"kratzer: {exc}\n")
        return 2
    except KratzerError as exc:
        sys.stderr.write(f"kratzer: {exc}\n")
        return 1
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run(sys.argv[1:]))
