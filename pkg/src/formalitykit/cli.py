"""Command line front end: JSON in, deterministic JSON/CSV/human out.

Exit codes: 0 for any computed verdict (including inapplicable criteria
and infeasible instances with witnesses), 2 for input validation
problems, 3 for resource cap refusals. Reports echo the tool version and
the full input for reproducibility; identical inputs produce byte
identical output (keys sorted, canonical rational strings, no
timestamps).
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import __version__
from .configurations import (
    ConfigGraph,
    PoincarePolynomial,
    kunneth_hom,
    normalize_shifts,
    sign_assignment,
)
from .errors import InputValidationError, ResourceCapError
from .fields import FieldSpec
from .formality import (
    FormalityCertificate,
    certify_config_pn,
    certify_config_spherical,
    certify_single,
    cy_normalize,
    verify_certificate,
)
from .graded import algebra_from_json_dict, algebra_to_json_dict, build_configuration_algebra
from .hochschild import DEFAULT_MAX_WORDS, hh_bar, kadeishvili_scan
from .presentations import presentation_from_json_dict, tor_term

MODE_NAMES = {"relative": "relative_normalized", "absolute": "absolute"}


@dataclass(frozen=True)
class RunConfig:
    field_spec: FieldSpec
    max_words: int
    max_truncation: int
    output_format: str
    threads: int

    def __post_init__(self):
        if self.max_words <= 0 or self.max_truncation <= 0 or self.threads <= 0:
            raise InputValidationError("resource caps must be positive")


def _threads_from_env() -> int:
    raw = os.environ.get("FORMALITYKIT_THREADS", "1")
    try:
        val = int(raw)
    except ValueError:
        raise InputValidationError(f"FORMALITYKIT_THREADS must be an integer, got {raw!r}")
    if val < 1:
        raise InputValidationError("FORMALITYKIT_THREADS must be >= 1")
    return val


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputValidationError(f"{path}: no such file")
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"{path}: malformed JSON: {exc}")


def _parse_int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    out: List[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo, hi = chunk.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(chunk))
    return out


def _report(command: str, echo: dict, result: dict) -> dict:
    return {
        "tool": {"name": "formalitykit", "version": __version__},
        "command": command,
        "input": echo,
        "result": result,
    }


def _emit(report: dict, cfg: RunConfig, rows_key: Optional[str] = None) -> str:
    if cfg.output_format == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if cfg.output_format == "csv":
        if rows_key is None:
            raise InputValidationError("csv output is only available for table commands")
        rows = report["result"][rows_key]
        buf = io.StringIO()
        if rows:
            header = list(rows[0].keys())
            buf.write(",".join(header) + "\n")
            for row in rows:
                buf.write(",".join(_csv_cell(row.get(h)) for h in header) + "\n")
        return buf.getvalue()
    if cfg.output_format == "human":
        return _human(report)
    raise InputValidationError(f"unknown output format {cfg.output_format!r}")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ";".join(str(v) for v in value)
    return str(value)


def _human(report: dict) -> str:
    result = report["result"]
    lines = [f"formalitykit {__version__} :: {report['command']}"]
    if "verdict" in result:
        lines.append(f"verdict: {result['verdict']}")
        for hyp in result.get("hypotheses", []):
            mark = "ok" if hyp["ok"] else "FAILED"
            lines.append(f"  hypothesis {hyp['name']}: {mark} (actual {hyp.get('actual')})")
        for item in result.get("evidence", []):
            lines.append(f"  [{item['method']}] {item.get('display', '')}")
        for note in result.get("notes", []):
            lines.append(f"  note: {note}")
    else:
        for key in sorted(result):
            lines.append(f"{key}: {json.dumps(result[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="formalitykit",
        description="exact computations with graded algebras: Hochschild "
        "cohomology, Tor terms, and formality certificates",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="rationals", help="rationals or fp:P")
    common.add_argument("--max-words", type=int, default=DEFAULT_MAX_WORDS)
    common.add_argument("--max-truncation", type=int, default=512)
    common.add_argument("--format", default="json", choices=("json", "csv", "human"))
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(group, name, **kw):
        kw.setdefault("parents", [common])
        return group.add_parser(name, **kw)

    p = add_parser(sub, "hh", help="one Hochschild cohomology dimension")
    p.add_argument("--algebra", required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", default="relative", choices=tuple(MODE_NAMES))
    p.add_argument("--cocycles", action="store_true")

    p = add_parser(sub, "scan", help="Kadeishvili diagonal scan up to qmax")
    p.add_argument("--algebra", required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--mode", default="relative", choices=tuple(MODE_NAMES))

    p = add_parser(sub, "tor", help="graded dimensions of one Tor term")
    p.add_argument("--pres", required=True)
    p.add_argument("--q", type=int, required=True)

    p = add_parser(sub, "certify", help="emit a formality certificate")
    csub = p.add_subparsers(dest="family", required=True)
    c = add_parser(csub, "single")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c = add_parser(csub, "pn-config")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--h", type=int, required=True)
    c = add_parser(csub, "spherical")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--hmin", type=int, required=True)
    c.add_argument("--hmax", type=int, required=True)

    p = add_parser(sub, "recheck", help="replay a certificate's evidence")
    p.add_argument("--cert", required=True)

    p = add_parser(sub, "normalize", help="shift normalization of a configuration graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--nk", type=int, required=True)

    p = add_parser(sub, "signs", help="parity sign assignment on a graph")
    p.add_argument("--graph", required=True)

    p = add_parser(sub, "kunneth", help="graded symmetric/exterior power of hom data")
    p.add_argument("--poincare", required=True)
    p.add_argument("--n", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--same", action="store_true")
    group.add_argument("--different", action="store_true")

    p = add_parser(sub, "build-config", help="build a configuration algebra as JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--preset", default="orthogonal", choices=("orthogonal", "zigzag"))

    p = add_parser(sub, "sweep", help="batch certificates over a parameter grid")
    ssub = p.add_subparsers(dest="grid", required=True)
    s = add_parser(ssub, "pn")
    s.add_argument("--n", required=True, help="list like 1..4 or 2,3")
    s.add_argument("--k", required=True)
    s.add_argument("--h", type=int, default=None, help="fixed arrow degree; default nk/2")
    s = add_parser(ssub, "spherical")
    s.add_argument("--k", required=True)

    return parser


def _cmd_hh(args, cfg: RunConfig):
    data = _load_json(args.algebra)
    A = algebra_from_json_dict(data)
    mode = MODE_NAMES[args.mode]
    res = hh_bar(
        A, None, args.p, args.q, mode=mode, want_cocycles=args.cocycles,
        max_words=cfg.max_words,
    )
    result = {
        "p": res.p,
        "q": res.q,
        "dim": res.dim,
        "mode": res.mode,
        "slice_dims": list(res.slice_dims),
    }
    if args.cocycles:
        result["cocycles"] = [
            [{"word": list(w), "value": m, "coeff": c} for (w, m, c) in rep]
            for rep in (res.cocycles or ())
        ]
    echo = {"algebra": data, "p": args.p, "q": args.q, "mode": args.mode}
    return _report("hh", echo, result), None


def _cmd_scan(args, cfg: RunConfig):
    data = _load_json(args.algebra)
    A = algebra_from_json_dict(data)
    table = kadeishvili_scan(A, args.qmax, mode=MODE_NAMES[args.mode], max_words=cfg.max_words)
    result = {
        "qmax": args.qmax,
        "table": [{"q": q, "dim": table[q]} for q in sorted(table)],
        "all_zero": all(v == 0 for v in table.values()),
    }
    echo = {"algebra": data, "qmax": args.qmax, "mode": args.mode}
    return _report("scan", echo, result), None


def _cmd_tor(args, cfg: RunConfig):
    data = _load_json(args.pres)
    pres = presentation_from_json_dict(data)
    if pres.truncation > cfg.max_truncation:
        raise ResourceCapError(
            f"presentation truncation {pres.truncation} exceeds the cap {cfg.max_truncation}"
        )
    space = tor_term(pres, args.q)
    result = {
        "q": args.q,
        "dims": [{"degree": d, "dim": n} for d, n in sorted(space.dims().items())],
        "total_dim": space.total_dim(),
    }
    return _report("tor", {"pres": data, "q": args.q}, result), None


def _cmd_certify(args, cfg: RunConfig):
    if args.family == "single":
        cert = certify_single(args.n, args.k)
        echo = {"family": "single", "n": args.n, "k": args.k}
    elif args.family == "pn-config":
        cert = certify_config_pn(args.n, args.k, args.h)
        echo = {"family": "pn-config", "n": args.n, "k": args.k, "h": args.h}
    else:
        cert = certify_config_spherical(args.k, args.hmin, args.hmax)
        echo = {"family": "spherical", "k": args.k, "hmin": args.hmin, "hmax": args.hmax}
    return _report("certify", echo, cert.to_json_dict()), None


def _cmd_recheck(args, cfg: RunConfig):
    data = _load_json(args.cert)
    if isinstance(data, dict) and "result" in data and "format" not in data:
        data = data["result"]  # accept a whole certify report
    cert = FormalityCertificate.from_json_dict(data)
    report = verify_certificate(cert)
    return _report("recheck", {"cert": data}, report.to_json_dict()), None


def _cmd_normalize(args, cfg: RunConfig):
    gdata = _load_json(args.graph)
    graph = ConfigGraph.from_json_dict(gdata)
    res = normalize_shifts(graph, args.nk)
    result = {"feasible": res.feasible, "h": res.h}
    if res.feasible:
        result["shifts"] = {str(v): s for v, s in sorted(res.shifts.items(), key=lambda kv: str(kv[0]))}
    else:
        result["witness_cycle"] = [str(v) for v in res.witness_cycle]
    if res.uses_cycle_extension:
        result["extension"] = "cycle holonomy conditions extend the tree case"
    return _report("normalize", {"graph": gdata, "nk": args.nk}, result), None


def _cmd_signs(args, cfg: RunConfig):
    gdata = _load_json(args.graph)
    graph = ConfigGraph.from_json_dict(gdata)
    res = sign_assignment(graph)
    result = {"feasible": res.feasible}
    if res.feasible:
        result["signs"] = {str(v): s for v, s in sorted(res.signs.items(), key=lambda kv: str(kv[0]))}
    else:
        result["witness_cycle"] = [str(v) for v in res.witness_cycle]
    if res.uses_cycle_extension:
        result["extension"] = "cycle parity conditions extend the tree case"
    return _report("signs", {"graph": gdata}, result), None


def _cmd_kunneth(args, cfg: RunConfig):
    pdata = _load_json(args.poincare)
    poly = PoincarePolynomial.from_json_dict(pdata)
    out = kunneth_hom(poly, args.n, same_linearization=args.same, field_spec=cfg.field_spec)
    result = {
        "n": args.n,
        "same_linearization": bool(args.same),
        "power": out.to_json_dict(),
    }
    echo = {"poincare": pdata, "n": args.n, "same": bool(args.same)}
    return _report("kunneth", echo, result), None


def _cmd_build_config(args, cfg: RunConfig):
    gdata = _load_json(args.graph)
    graph = ConfigGraph.from_json_dict(gdata)
    A = build_configuration_algebra(graph, args.n, args.k, args.h, args.preset, cfg.field_spec)
    echo = {"graph": gdata, "n": args.n, "k": args.k, "h": args.h, "preset": args.preset}
    return _report("build-config", echo, {"algebra": algebra_to_json_dict(A)}), None


def _cmd_sweep(args, cfg: RunConfig):
    rows = []
    if args.grid == "pn":
        for n in sorted(_parse_int_list(args.n)):
            for k in sorted(_parse_int_list(args.k)):
                row = {"n": n, "k": k}
                if args.h is not None:
                    h = args.h
                    row["h"] = h
                    row["gcd_ok"] = None
                elif (n * k) % 2 == 0:
                    norm = cy_normalize(n, k)
                    h = norm["h"]
                    row["h"] = h
                    row["gcd_ok"] = norm["gcd_ok"]
                else:
                    row.update(
                        {"h": None, "gcd_ok": None, "verdict": "CriterionInapplicable",
                         "failed_hypotheses": ["nk even"]}
                    )
                    rows.append(row)
                    continue
                cert = certify_config_pn(n, k, h)
                row["verdict"] = cert.verdict
                row["failed_hypotheses"] = cert.failed_hypotheses()
                rows.append(row)
        echo = {"grid": "pn", "n": args.n, "k": args.k, "h": args.h}
    else:
        for k in sorted(_parse_int_list(args.k)):
            cert = certify_config_spherical(k, k // 2, k)
            rows.append(
                {
                    "k": k,
                    "h_min": k // 2,
                    "h_max": k,
                    "verdict": cert.verdict,
                    "failed_hypotheses": cert.failed_hypotheses(),
                }
            )
        echo = {"grid": "spherical", "k": args.k}
    return _report("sweep", echo, {"rows": rows}), "rows"


_HANDLERS = {
    "hh": _cmd_hh,
    "scan": _cmd_scan,
    "tor": _cmd_tor,
    "certify": _cmd_certify,
    "recheck": _cmd_recheck,
    "normalize": _cmd_normalize,
    "signs": _cmd_signs,
    "kunneth": _cmd_kunneth,
    "build-config": _cmd_build_config,
    "sweep": _cmd_sweep,
}


def dispatch(argv: List[str], stdout=None) -> int:
    """Parse argv, run the command, print the report; returns the exit code."""
    stdout = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = RunConfig(
            field_spec=FieldSpec.parse(args.field),
            max_words=args.max_words,
            max_truncation=args.max_truncation,
            output_format=args.format,
            threads=_threads_from_env(),
        )
        handler = _HANDLERS[args.command]
        report, rows_key = handler(args, cfg)
        report["input"]["field"] = cfg.field_spec.tag()
        report["input"]["threads"] = cfg.threads
        stdout.write(_emit(report, cfg, rows_key))
        return 0
    except ResourceCapError as exc:
        sys.stderr.write(f"resource cap: {exc}\n")
        return 3
    except InputValidationError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2


def main() -> None:
    raise SystemExit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
