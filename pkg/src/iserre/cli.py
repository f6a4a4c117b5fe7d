"""Command line front end.

Exit codes: 0 when every claim passes, 1 when some claim fails, 2 on usage
or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import identities as ids
from . import suite
from .bfree import presentation as pres
from .report import Report, document, dumps
from .scalar import SpecializationPole, UnboundSymbol, parse_scalar
from .ualg import serre
from .ualg.cartan import InvalidCartan
from .ualg.engine import EngineError

MUTATE_ENV = "ISERRE_TEST_MUTATE_T"
THREADS_ENV = "ISERRE_THREADS"


class UsageError(ValueError):
    pass


def parse_range(text: str) -> list[int]:
    """'a:b' (inclusive), 'a' or 'a,b,c'."""
    try:
        if "," in text:
            return [int(x) for x in text.split(",") if x.strip()]
        if ":" in text[1:]:
            i = text.index(":", 1)
            lo, hi = int(text[:i]), int(text[i + 1:])
            if lo > hi:
                raise UsageError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError as e:
        raise UsageError(f"bad range {text!r}") from e


def read_config(path: str) -> dict:
    """Flat 'key = value' file; '#' starts a comment."""
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as e:
        raise UsageError(f"cannot read config {path!r}: {e}") from e
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def params_from_config(cfg: dict) -> pres.IqgParams:
    try:
        if "cartan" in cfg:
            cartan = [[int(x) for x in row.split(",")] for row in cfg["cartan"].split(";")]
        elif "a12" in cfg:
            a12 = int(cfg["a12"])
            cartan = [[2, a12], [a12, 2]]
        else:
            raise UsageError("config needs 'cartan' or 'a12'")
        n = len(cartan)

        def ints(key, default):
            if key not in cfg:
                return default
            vals = [int(x) for x in cfg[key].split(",")]
            if len(vals) != n:
                raise UsageError(f"{key} needs {n} entries")
            return tuple(vals)

        def scalars(key):
            if key not in cfg:
                return None
            vals = [parse_scalar(x) for x in cfg[key].split(",")]
            if len(vals) != n:
                raise UsageError(f"{key} needs {n} entries")
            return tuple(vals)

        tau = ints("tau", None)
        if tau is not None:
            tau = tuple(t - 1 for t in tau)
        images = {k[4:]: parse_scalar(v) for k, v in cfg.items() if k.startswith("bar.")}
        p = pres.IqgParams(cartan, eps=ints("eps", None), tau=tau, sigma=scalars("sigma"),
                           kappa=scalars("kappa"), parity=ints("parity", None), bar_images=images)
        p.validate()
        return p
    except (ValueError, IndexError) as e:
        if isinstance(e, UsageError):
            raise
        raise UsageError(str(e)) from e


def _truthy(v: str) -> bool:
    return v.strip().lower() in ("1", "true", "yes", "on")


# -- commands -----------------------------------------------------------------------


def cells_identity(a) -> list:
    if a.kind == "t":
        mutate = os.environ.get(MUTATE_ENV) == "1"
        cells = [("t_cell", (w, u, l, mutate)) for w in parse_range(a.w) for u in parse_range(a.u)
                 for l in parse_range(a.l) if u + l >= 1 and u >= 0 and l >= 0]
        if not cells:
            raise UsageError("no grid point with u, l >= 0 and u + l >= 1")
        return cells
    if a.kind == "g":
        cells = [("g_cell", (w, u, l, p0, p1, p2)) for w in parse_range(a.w) for u in parse_range(a.u)
                 for l in parse_range(a.l) for p0 in parse_range(a.p0) for p1 in parse_range(a.p1)
                 for p2 in parse_range(a.p2) if u >= 0 and l >= 1]
        if not cells:
            raise UsageError("no grid point with u >= 0 and l >= 1")
        return cells
    ws = parse_range(a.w)
    cells = [("h_cell", (u, p1, p2, ws)) for u in parse_range(a.u) for p1 in parse_range(a.p1)
             for p2 in parse_range(a.p2) if u >= 0]
    if not cells:
        raise UsageError("no grid point with u >= 0")
    return cells


def cells_recursion(a) -> list:
    rules = ids.RULES if a.rule == "all" else [a.rule]
    for r in rules:
        if r not in ids.RULES:
            raise UsageError(f"unknown rule {r!r}; choose from {', '.join(ids.RULES)} or all")
    return [("recursion_cell", (r, args, k)) for r in rules
            for args, k in ids.sample_recursion_args(r, a.samples, a.seed)]


def cells_proof(a) -> list:
    if a.args:
        vals = [int(x) for x in a.args.split(",")]
        if len(vals) != 6:
            raise UsageError("--args needs w,u,l,p0,p1,p2")
        if vals[2] < 1 or vals[1] < 0:
            raise UsageError("replay needs l >= 1 and u >= 0")
        return [("replay_cell", (tuple(vals),))]
    return [("replay_cell", (tuple(x),)) for x in ids.sample_replay_args(a.samples, a.seed)]


def _lams(a):
    return [None] if a.lam is None else parse_range(a.lam)


def _cases(a12, case):
    cases = serre.cases_for(a12)
    if case:
        if case not in serre.CASES:
            raise UsageError(f"unknown case {case!r}")
        return [case] if case in cases else []
    return cases


def cells_iserre(a) -> list:
    cells = [("iserre_cell", (x, c, lam, a.eps1)) for x in parse_range(a.a12) for c in _cases(x, a.case)
             for lam in _lams(a)]
    if not cells:
        raise UsageError("no (a12, case) combination applies")
    return cells


def cells_bridge(a) -> list:
    cells = []
    for x in parse_range(a.a12):
        for c in _cases(x, a.case):
            cells.append(("bridge_cell", (x, c, a.eps1)))
            if a.eps1 == 1:
                cells.append(("s_relation_cell", (x, c)))
    if not cells:
        raise UsageError("no (a12, case) combination applies")
    return cells


def cells_idp(a) -> list:
    ps = [0, 1] if a.parity == "both" else [int(a.parity)]
    return [("idp_cell", (m, p, -p, lam, a.eps1)) for p in ps for m in parse_range(a.m) for lam in _lams(a)]


def cells_simple(name):
    def build(a):
        return [(name, (x,)) for x in parse_range(a.a12)]
    return build


def cells_rescale(a) -> list:
    return [("rescale_cell", (x, p)) for x in parse_range(a.a12) for p in (0, 1)]


def cells_varpi(a) -> list:
    return [("varpi_serre_cell", (x,)) for x in parse_range(a.a12)] + [("varpi_rank1_cell", (a.max_power,))]


def cells_confluence(a) -> list:
    return [("confluence_cell", (x, a.samples, a.seed)) for x in parse_range(a.a12)]


def cells_all(a) -> list:
    cells = []
    for k in sorted(suite.CRITERIA):
        cells += suite.criterion_cells(k, a.seed)
    return cells


def run_bar(a, cfg) -> list[Report]:
    p = params_from_config(cfg)
    enforce = _truthy(cfg.get("enforce_conditions", "true"))
    return [pres.bar_check(p, enforce_conditions=enforce)]


def run_q1(a, cfg) -> tuple[list[Report], list]:
    p = params_from_config(cfg)
    value = Fraction(cfg.get("q1.sigma", "1"))
    presentation = pres.emit_presentation(p)
    try:
        rows = pres.specialize_presentation_q1(presentation, value)
        return [Report("q1", {"sigma": str(value)}, True)], rows
    except (SpecializationPole, UnboundSymbol) as e:
        return [Report("q1", {"sigma": str(value)}, False, str(e))], []


# -- parser ------------------------------------------------------------------


def _common(defaults: bool) -> argparse.ArgumentParser:
    # shared options, accepted before or after the subcommand
    sup = {} if defaults else {"default": argparse.SUPPRESS}
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), **({"default": None} if defaults else sup))
    p.add_argument("--seed", type=int, **({"default": None} if defaults else sup))
    p.add_argument("--threads", type=int, **({"default": None} if defaults else sup))
    p.add_argument("--timings", action="store_true", **({"default": False} if defaults else sup))
    p.add_argument("--config", help="flat key = value file", **({"default": None} if defaults else sup))
    p.add_argument("--output", help="write the report here instead of stdout",
                   **({"default": None} if defaults else sup))
    return p


RANGE_OPTS = {"--w", "--u", "--l", "--p0", "--p1", "--p2", "--a12", "--m", "--lam", "--args"}


def _glue_negative(argv: list[str]) -> list[str]:
    """Turn '--a12 -4:-1' into '--a12=-4:-1' so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in RANGE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and len(argv[i + 1]) > 1 and argv[i + 1][1].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iserre", description="Exact checks of iSerre relations.",
                                 parents=[_common(True)])
    common = _common(False)
    raw_sub = ap.add_subparsers(dest="command", required=True)

    class _Sub:
        def add_parser(self, name, **kw):
            return raw_sub.add_parser(name, parents=[common], **kw)

    sub = _Sub()

    p = sub.add_parser("identity")
    p.add_argument("kind", choices=("t", "g", "h"))
    p.add_argument("--w", default="-8:8")
    p.add_argument("--u", default="0:6")
    p.add_argument("--l", default="0:6")
    p.add_argument("--p0", default="0")
    p.add_argument("--p1", default="0")
    p.add_argument("--p2", default="0")

    p = sub.add_parser("recursion")
    p.add_argument("--rule", default="all")
    p.add_argument("--samples", type=int, default=200)

    p = sub.add_parser("proof")
    p.add_argument("action", choices=("replay",))
    p.add_argument("--args", default=None, help="w,u,l,p0,p1,p2")
    p.add_argument("--samples", type=int, default=100)

    for name in ("iserre", "bridge"):
        p = sub.add_parser(name)
        p.add_argument("--a12", default="-4:-1")
        p.add_argument("--case", default=None)
        p.add_argument("--eps1", type=int, default=1)
        if name == "iserre":
            p.add_argument("--lam", default=None, help="concrete lambda range; symbolic if omitted")

    p = sub.add_parser("idp")
    p.add_argument("--m", default="0:8")
    p.add_argument("--parity", choices=("0", "1", "both"), default="both")
    p.add_argument("--compare", action="store_true", help="engine against closed form (always on)")
    p.add_argument("--lam", default=None)
    p.add_argument("--eps1", type=int, default=1)

    for name in ("convert", "parity", "rescale"):
        p = sub.add_parser(name)
        p.add_argument("--a12", default="-4:-1" if name == "convert" else "-6:0")

    p = sub.add_parser("varpi")
    p.add_argument("--a12", default="-6:0")
    p.add_argument("--max-power", type=int, default=6)

    p = sub.add_parser("confluence")
    p.add_argument("--a12", default="-3:-1")
    p.add_argument("--samples", type=int, default=1000)

    for name in ("present", "bar", "q1"):
        p = sub.add_parser(name)
        p.add_argument("config_file", nargs="?", default=None)

    sub.add_parser("all")
    return ap


BUILDERS = {
    "identity": cells_identity,
    "recursion": cells_recursion,
    "proof": cells_proof,
    "iserre": cells_iserre,
    "bridge": cells_bridge,
    "idp": cells_idp,
    "convert": cells_simple("convert_cell"),
    "parity": cells_simple("parity_cell"),
    "rescale": cells_rescale,
    "varpi": cells_varpi,
    "confluence": cells_confluence,
    "all": cells_all,
}


def _config_dict(a) -> dict:
    skip = {"config", "output", "format", "timings", "threads", "config_file"}
    return {k: v for k, v in sorted(vars(a).items()) if k not in skip and v is not None}


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _text_report(command: str, reports: list[Report], timings: bool) -> str:
    lines = []
    for r in reports:
        args = json.dumps(r.args, sort_keys=True)
        line = f"{'PASS' if r.passed else 'FAIL'} {r.claim} {args}"
        if timings and r.millis is not None:
            line += f" [{r.millis:.1f} ms]"
        if r.witness is not None:
            line += f"\n    witness: {r.witness}"
        lines.append(line)
    failed = sum(not r.passed for r in reports)
    lines.append(f"{command}: {len(reports) - failed}/{len(reports)} passed")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = build_parser()
    argv = _glue_negative(list(sys.argv[1:] if argv is None else argv))
    try:
        a = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        cfg = read_config(a.config) if a.config else {}
        if getattr(a, "config_file", None):
            cfg.update(read_config(a.config_file))
        fmt = a.format or cfg.get("format", "text")
        if fmt not in ("text", "json"):
            raise UsageError(f"unknown format {fmt!r}")
        a.seed = a.seed if a.seed is not None else int(cfg.get("seed", 0))
        threads = a.threads or int(cfg.get("threads", 0)) or int(os.environ.get(THREADS_ENV, "1") or 1)
        timings = a.timings or _truthy(cfg.get("timings", "false"))
        extra = None
        if a.command == "present":
            presentation = pres.emit_presentation(params_from_config(cfg))
            doc = {"schema": 1, "command": "present", "presentation": presentation.to_json()}
            _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", a.output)
            return 0
        if a.command == "bar":
            reports = run_bar(a, cfg)
        elif a.command == "q1":
            reports, extra = run_q1(a, cfg)
        else:
            cells = BUILDERS[a.command](a)
            reports = suite.run_cells(cells, threads)
    except (UsageError, ids.DomainError, EngineError, InvalidCartan, pres.InvalidParams) as e:
        print(f"iserre: error: {e}", file=sys.stderr)
        return 2
    config = _config_dict(a)
    if fmt == "json":
        doc = document(a.command, config, reports, timings)
        if extra is not None:
            doc["specialized"] = extra
        _emit(dumps(doc), a.output)
    else:
        text = _text_report(a.command, reports, timings)
        if extra:
            text += json.dumps(extra, indent=2) + "\n"
        _emit(text, a.output)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
