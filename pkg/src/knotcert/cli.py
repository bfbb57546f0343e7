"""Command-line frontend.

    knotcert invariants  (--pd TEXT | --file PATH | --family SPEC) [--mark E] [--cap N]
    knotcert states      (--pd TEXT | --file PATH | --family SPEC) [--mark E]
    knotcert verify-pcsc --family kt|conway|kt:r,n [--r a..b] [--n a..b] [--workers W]
    knotcert skein-check --family kt|conway [--r R] [--n a..b]

Every subcommand takes ``--format human|json|csv``.  Exit status is 0 on
success, 1 when a check is inconclusive or fails, and 2 on bad input.
``KNOTCERT_WORKERS`` sets the default process count for ``verify-pcsc``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .diagram import Diagram, DiagramError, MarkedDiagram, parse_pd
from .families import (
    CONWAY,
    KT,
    PRESENTATIONS,
    PRETZEL,
    FamilyId,
    clasp_skein_triple,
    conway_coefficients,
    family_diagram,
    kt_coefficients,
    parse_family,
    pretzel_diagram,
)
from .jones import DEFAULT_CROSSING_CAP, CrossingCapExceeded, derivatives_at_one, jones, q_to_t, skein_defect
from .kauffman import StateCache
from .laurent import LaurentPoly
from .pcsc import verify_grid
from .skein import alexander_skein
from .thickness import thickness_bound

EXIT_OK = 0
EXIT_INCONCLUSIVE = 1
EXIT_INPUT = 2

WORKERS_ENV = "KNOTCERT_WORKERS"
FORMATS = ("human", "json", "csv")
_RANGE_FLAGS = ("--r", "--n")


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    pd: str | None = None
    file: str | None = None
    family: str | None = None
    mark: int | None = None
    cap: int = DEFAULT_CROSSING_CAP
    fmt: str = "human"
    workers: int = 1
    r: str | None = None
    n: str | None = None
    presentation: str = "reduced"

    def __post_init__(self):
        sources = [s for s in (self.pd, self.file, self.family) if s is not None]
        if self.subcommand in ("invariants", "states") and len(sources) != 1:
            raise InputError("give exactly one of --pd, --file, --family")
        if self.cap <= 0:
            raise InputError("--cap must be positive")
        if self.workers <= 0:
            raise InputError("--workers must be positive")


def parse_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    a, sep, b = text.partition("..")
    try:
        lo = int(a)
        hi = int(b) if sep else lo
    except ValueError:
        raise InputError(f"bad range {text!r}; expected a..b") from None
    return range(lo, hi + 1)


def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{WORKERS_ENV} must be an integer, got {raw!r}") from None
    return value


# input --------------------------------------------------------------------


def load_diagram(cfg: RunConfig) -> Diagram:
    if cfg.pd is not None:
        return parse_pd(cfg.pd)
    if cfg.file is not None:
        try:
            text = Path(cfg.file).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read {cfg.file}: {exc.strerror}") from None
        return parse_pd(text, name=Path(cfg.file).stem)
    try:
        fid = parse_family(cfg.family)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return family_diagram(fid, cfg.presentation)


# reports ------------------------------------------------------------------


def _poly(p, var: str) -> str:
    return p.to_str(var)


def invariants_report(d: Diagram, mark: int | None, cap: int) -> dict:
    """Every invariant the package computes for one diagram, as plain data."""
    report: dict = {
        "diagram": {
            "name": d.name,
            "pd": d.pd_string(),
            "crossings": d.n_crossings,
            "components": d.components,
            "writhe": d.writhe(),
            "faces": len(d.faces) if d.n_crossings else 2,
        }
    }
    delta_skein = alexander_skein(d)
    v = jones(d, cap)
    report["jones"] = {
        "q": _poly(v, "q"),
        "t": _poly(q_to_t(v), "t"),
        "derivatives_q": list(derivatives_at_one(v, 3)),
        "derivatives_t": list(derivatives_at_one(q_to_t(v), 3)) if d.components == 1 else None,
    }
    alex: dict = {"skein": _poly(delta_skein, "t")}
    if d.components != 1:
        alex.update(state_sum=None, agree=None, states=None)
        report["alexander"] = alex
        report["thickness"] = None
        return report
    if d.n_crossings == 0:
        alex.update(state_sum="1", agree=delta_skein == 1, states=1)
        report["alexander"] = alex
        report["thickness"] = {"delta_spread": 0, "B_D": 0, "bound": 0, "marked_edge": None}
        return report
    md = _marked(d, mark)
    cache = StateCache(md)
    res = cache.alexander
    alex.update(state_sum=_poly(res.polynomial, "t"), agree=res.polynomial == delta_skein, states=res.n_states)
    report["alexander"] = alex
    tb = thickness_bound(md)
    report["thickness"] = {"delta_spread": tb.complex_thickness, "B_D": tb.bad_domains, "bound": tb.bound,
                           "marked_edge": md.marked_edge}
    return report


def _marked(d: Diagram, mark: int | None) -> MarkedDiagram:
    try:
        return MarkedDiagram(d, mark)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def states_report(d: Diagram, mark: int | None) -> dict:
    if d.components != 1:
        raise InputError("Kauffman states are defined for knots; this diagram is a link")
    if d.n_crossings == 0:
        return {"marked_edge": None, "states": [{"assignment": {}, "M": 0, "A": "0", "delta": "0"}],
                "bigraded": [{"M": 0, "A": "0", "count": 1}]}
    md = _marked(d, mark)
    cache = StateCache(md)
    table = [{"M": m, "A": str(a), "count": k} for (m, a), k in sorted(cache.table.dims.items())]
    return {"marked_edge": md.marked_edge, "states": [s.to_dict() for s in cache.states], "bigraded": table}


def skein_report(family: str, r: int, n_values: Sequence[int], cap: int) -> dict:
    """Check ``(K(r, n), K(r, n - 1), pretzel)`` as a Jones skein triple for each ``n``.

    For ``n != 0`` the triple is also produced by switching and smoothing one
    clasp crossing of the clasp presentation, and both halves are compared
    with the family members they should be.
    """
    coeffs = kt_coefficients(r) if family == KT else conway_coefficients(r)
    v0 = jones(pretzel_diagram(*coeffs), cap)

    def member(n):
        return jones(family_diagram(FamilyId(family, (r, n))), cap)

    rows = []
    for n in n_values:
        row = {"family": family, "r": r, "n": n,
               "invariant_triple": skein_defect(member(n), member(n - 1), v0).is_zero()}
        if n:
            t = clasp_skein_triple(family, r, n)
            jp, jm, j0 = jones(t.plus, cap), jones(t.minus, cap), jones(t.zero, cap)
            row["clasp_triple"] = skein_defect(jp, jm, j0).is_zero()
            row["clasp_members_match"] = jp == member(t.plus_n) and jm == member(t.minus_n)
            row["clasp_smoothing_is_pretzel"] = j0 == v0
            row["alexander_triple"] = (
                alexander_skein(t.plus) - alexander_skein(t.minus) == _ALEX_Z * alexander_skein(t.zero)
            )
        rows.append(row)
    return {"pretzel": {"coefficients": list(coeffs), "jones_q": _poly(v0, "q")}, "rows": rows}


# Conway variable z = t^(1/2) - t^(-1/2), doubled exponents
_ALEX_Z = LaurentPoly({1: 1, -1: -1})


# rendering ----------------------------------------------------------------


def _human(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_human(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, dict):
                lines.append(pad + "- " + ", ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    return lines


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _flatten(obj, prefix: str = "") -> list[tuple[str, object]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out.extend(_flatten(v, f"{prefix}.{k}" if prefix else k))
        return out
    if isinstance(obj, list) and not _flat_list(obj):
        out = []
        for i, v in enumerate(obj):
            out.extend(_flatten(v, f"{prefix}[{i}]"))
        return out
    return [(prefix, obj)]


def _csv_rows(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({k: ("" if v is None else _scalar(v)) for k, v in row.items()})
    return buf.getvalue()


def _csv_keyvalue(obj) -> str:
    return _csv_rows([{"key": k, "value": v} for k, v in _flatten(obj)])


def emit(obj, fmt: str, out, csv_rows: list[dict] | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        out.write(_csv_rows(csv_rows) if csv_rows is not None else _csv_keyvalue(obj))
    else:
        out.write("\n".join(_human(obj)) + "\n")


# commands -----------------------------------------------------------------


def cmd_invariants(cfg: RunConfig, out) -> int:
    report = invariants_report(load_diagram(cfg), cfg.mark, cfg.cap)
    emit(report, cfg.fmt, out)
    return EXIT_INCONCLUSIVE if report["alexander"]["agree"] is False else EXIT_OK


def cmd_states(cfg: RunConfig, out) -> int:
    report = states_report(load_diagram(cfg), cfg.mark)
    rows = [{"state": i, "M": s["M"], "A": s["A"], "delta": s["delta"],
             "assignment": " ".join(f"{c}:{a['face']}/{a['quadrant']}" for c, a in s["assignment"].items())}
            for i, s in enumerate(report["states"])]
    if cfg.fmt == "human":
        out.write(f"marked edge: {_scalar(report['marked_edge'])}\n")
        out.write(f"states: {len(rows)}\n")
        for row in rows:
            out.write(f"  #{row['state']}: M={row['M']} A={row['A']} delta={row['delta']}  {row['assignment']}\n")
        out.write("bigraded counts:\n")
        for cell in report["bigraded"]:
            out.write(f"  M={cell['M']} A={cell['A']}: {cell['count']}\n")
    else:
        emit(report, cfg.fmt, out, csv_rows=rows)
    return EXIT_OK


def _grid_family(cfg: RunConfig) -> tuple[str, range, range]:
    if cfg.family is None:
        raise InputError("verify-pcsc needs --family")
    text = cfg.family.strip().lower()
    plain = {"kt": KT, "conway": CONWAY, "c": CONWAY}
    if text in plain:
        if cfg.r is None or cfg.n is None:
            raise InputError("give --r and --n ranges, or a single point like kt:2,1")
        return plain[text], parse_range(cfg.r), parse_range(cfg.n)
    try:
        fid = parse_family(cfg.family)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if fid.family == PRETZEL:
        raise InputError("verify-pcsc covers the KT and Conway families")
    r = parse_range(cfg.r) if cfg.r is not None else range(fid.r, fid.r + 1)
    n = parse_range(cfg.n) if cfg.n is not None else range(fid.n, fid.n + 1)
    return fid.family, r, n


def cmd_verify_pcsc(cfg: RunConfig, out) -> int:
    family, r_range, n_range = _grid_family(cfg)
    grid = verify_grid(family, r_range, n_range, cfg.workers)
    if cfg.fmt == "json":
        out.write(grid.to_json() + "\n")
    elif cfg.fmt == "csv":
        out.write(grid.to_csv())
    else:
        for row, cert in zip(grid.rows(), grid.certificates):
            e = cert.evidence
            detail = ""
            if e.th_bound is not None:
                detail = f" th<={e.th_bound} B_D={e.B_D} g={e.genus} V''(1)={_scalar(e.V2_at_1)} V'''(1)={_scalar(e.V3_at_1)}"
            if e.closed_form_agrees is not None:
                detail += f" closed_form_agrees={e.closed_form_agrees}"
            out.write(f"{family} r={row['r']} n={row['n']} -> {cert.knot}: {cert.verdict} [{cert.criterion}]{detail}\n")
        s = grid.summary
        out.write(f"total={s['total']} " + " ".join(f"{k}={v}" for k, v in s["verdicts"].items()) + "\n")
        if s["criteria"]:
            out.write("criteria: " + " ".join(f"{k}={v}" for k, v in s["criteria"].items()) + "\n")
        notes = sorted({note for c in grid.certificates for note in c.provenance_notes})
        for note in notes:
            out.write(f"note: {note}\n")
    return EXIT_OK if grid.ok else EXIT_INCONCLUSIVE


def cmd_skein_check(cfg: RunConfig, out) -> int:
    text = (cfg.family or "kt").strip().lower()
    families = {"kt": KT, "conway": CONWAY, "c": CONWAY}
    if text not in families:
        raise InputError("skein-check takes --family kt or --family conway")
    r_values = parse_range(cfg.r) if cfg.r is not None else range(2, 3)
    if len(r_values) != 1:
        raise InputError("skein-check takes a single --r value")
    n_values = parse_range(cfg.n) if cfg.n is not None else range(1, 4)
    report = skein_report(families[text], r_values[0], n_values, cfg.cap)
    emit(report, cfg.fmt, out, csv_rows=report["rows"])
    ok = all(v for row in report["rows"] for k, v in row.items() if isinstance(v, bool))
    return EXIT_OK if ok else EXIT_INCONCLUSIVE


COMMANDS = {
    "invariants": cmd_invariants,
    "states": cmd_states,
    "verify-pcsc": cmd_verify_pcsc,
    "skein-check": cmd_skein_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="knotcert", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--pd", help="PD code, e.g. 'X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]' or 'U'")
        p.add_argument("--file", help="file holding a PD code")
        p.add_argument("--family", help="kt:r,n, conway:r,n, pretzel:a,b,...; bare kt/conway with ranges")
        p.add_argument("--presentation", choices=PRESENTATIONS, default="reduced")
        p.add_argument("--r", help="r range a..b (inclusive)")
        p.add_argument("--n", help="n range a..b (inclusive)")
        p.add_argument("--mark", type=int, help="edge label carrying the marked point")
        p.add_argument("--cap", type=int, default=DEFAULT_CROSSING_CAP, help="crossing cap for the bracket")
        p.add_argument("--format", dest="fmt", choices=FORMATS, default="human")
        p.add_argument("--workers", type=int, default=None, help=f"process count (default ${WORKERS_ENV} or 1)")
    return parser


def _glue_ranges(argv: Sequence[str]) -> list[str]:
    """Turn ``--r -5..5`` into ``--r=-5..5`` so argparse does not read ``-5..5`` as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_ranges(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        workers = args.workers if args.workers is not None else _default_workers()
        cfg = RunConfig(args.subcommand, args.pd, args.file, args.family, args.mark, args.cap, args.fmt,
                        workers, args.r, args.n, args.presentation)
        return COMMANDS[cfg.subcommand](cfg, out)
    except (InputError, DiagramError, CrossingCapExceeded, ValueError) as exc:
        print(f"knotcert: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
