"""Command-line front end.

Exit codes: 0 every selected check passed, 1 some check failed, 2 usage
or configuration error.  Output is JSON unless ``--text`` is given.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .algebra import AlgebraParams, Hb, basis, bracket, parse_element
from .module import ConfigurationError, ModuleParams, RankOneModule, gamma_active, kappa_active
from .poly import Polynomial, parse_polynomial
from .probe import (
    BOUNDED,
    PROOF,
    MalformedOracle,
    check_t_submodule,
    contains_one,
    generation_closure,
    is_simple_expected,
    recover_parameters,
    submodule_saturation,
)
from .scalar import parse_rational
from .verify import SUITES, CheckWindow, Entry, Report, _describe, default_grid, generators, run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_CONFIG_KEYS = {"algebra", "module", "window", "suites", "probes", "closure", "fixture", "seed"}
_WINDOW_KEYS = {"i_range", "m_max", "deg_max"}
_PROBE_KEYS = {"seed", "degree_cap", "iter_cap"}
_CLOSURE_KEYS = {"depth_cap", "index_bound", "height_bound", "generator_index_bound", "full_generating_set"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    algebra: AlgebraParams | None = None
    module: ModuleParams | None = None
    window: dict = field(default_factory=dict)
    suites: list[str] = field(default_factory=lambda: list(SUITES))
    probes: list[dict] = field(default_factory=list)
    closure: dict = field(default_factory=dict)
    fixture: str | None = None
    seed: int = 0

    @classmethod
    def from_json(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise UsageError("config must be a JSON object")
        unknown = set(data) - _CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        try:
            if "algebra" in data:
                cfg.algebra = AlgebraParams.from_json(data["algebra"])
            if "module" in data:
                cfg.module = ModuleParams.from_json(data["module"])
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad parameters: {exc}") from exc
        window = data.get("window", {})
        if set(window) - _WINDOW_KEYS:
            raise UsageError(f"unknown window keys: {sorted(set(window) - _WINDOW_KEYS)}")
        cfg.window = dict(window)
        if "suites" in data:
            bad = [s for s in data["suites"] if s not in SUITES]
            if bad:
                raise UsageError(f"unknown suites {bad}; choose from {list(SUITES)}")
            cfg.suites = list(data["suites"])
        for p in data.get("probes", []):
            if set(p) - _PROBE_KEYS:
                raise UsageError(f"unknown probe keys: {sorted(set(p) - _PROBE_KEYS)}")
        cfg.probes = list(data.get("probes", []))
        closure = data.get("closure", {})
        if set(closure) - _CLOSURE_KEYS:
            raise UsageError(f"unknown closure keys: {sorted(set(closure) - _CLOSURE_KEYS)}")
        cfg.closure = dict(closure)
        fixture = data.get("fixture")
        if fixture not in (None, "corrupted"):
            raise UsageError(f"unknown fixture {fixture!r}")
        cfg.fixture = fixture
        cfg.seed = int(data.get("seed", 0))
        return cfg


def _load_config(args) -> RunConfig:
    if args.config is None:
        cfg = RunConfig()
    else:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        cfg = RunConfig.from_json(data)
    try:
        if any(getattr(args, k, None) is not None for k in ("a", "b", "epsilon")):
            base = cfg.algebra or AlgebraParams(0, 0, 1)
            cfg.algebra = AlgebraParams(
                parse_rational(args.a) if args.a is not None else base.a,
                parse_rational(args.b) if args.b is not None else base.b,
                args.epsilon if args.epsilon is not None else base.epsilon,
            )
        mod_flags = ("lam", "alpha", "beta", "gamma", "kappa")
        if any(getattr(args, k, None) is not None for k in mod_flags):
            base = cfg.module or ModuleParams(1, 0, 0)
            kappa, window = base.kappa, base.kappa_window
            if getattr(args, "kappa", None) is not None:
                kappa, window = _parse_kappa(args.kappa)
            cfg.module = ModuleParams(
                parse_rational(args.lam) if args.lam is not None else base.lam,
                parse_rational(args.alpha) if args.alpha is not None else base.alpha,
                parse_rational(args.beta) if args.beta is not None else base.beta,
                parse_rational(args.gamma) if args.gamma is not None else base.gamma,
                kappa,
                window,
            )
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad parameters: {exc}") from exc
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    for key, flag in (("m_max", "m_max"), ("deg_max", "deg_max")):
        if getattr(args, flag, None) is not None:
            cfg.window[key] = getattr(args, flag)
    if getattr(args, "i_max", None) is not None:
        cfg.window["i_range"] = [-args.i_max, args.i_max]
    return cfg


def _parse_kappa(text: str):
    """``"lo:hi"`` window, optionally followed by ``;i=v,i=v``."""
    head, _, tail = text.partition(";")
    lo, _, hi = head.partition(":")
    window = (int(lo), int(hi))
    table = {}
    if tail:
        for item in tail.split(","):
            i, _, v = item.partition("=")
            table[int(i)] = parse_rational(v)
    return table, window


def _window(cfg: RunConfig) -> CheckWindow:
    if cfg.algebra is not None and cfg.module is not None:
        grid = ((cfg.algebra, cfg.module),)
    elif cfg.algebra is None and cfg.module is None:
        grid = default_grid()
    else:
        raise UsageError("give both algebra and module parameters, or neither for the default grid")
    w = cfg.window
    try:
        return CheckWindow(
            tuple(w.get("i_range", (-3, 3))),
            int(w.get("m_max", 3)),
            int(w.get("deg_max", 5)),
            grid,
        )
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc


def _module(cfg: RunConfig) -> RankOneModule:
    if cfg.algebra is None or cfg.module is None:
        raise UsageError("algebra and module parameters are required")
    try:
        return RankOneModule(cfg.algebra, cfg.module)
    except ConfigurationError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, payload: dict, text: str):
    if args.text:
        print(text)
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


def _emit_reports(args, reports: Sequence[Report], extra: dict | None = None) -> int:
    ok = all(r.ok for r in reports)
    payload = {"ok": ok, "reports": [r.to_json() for r in reports]}
    if extra:
        payload.update(extra)
    _emit(args, payload, "\n".join(r.to_text() for r in reports))
    return EXIT_OK if ok else EXIT_FAIL


# -- subcommands -------------------------------------------------------------


def cmd_bracket(args) -> int:
    cfg = _load_config(args)
    ap = cfg.algebra or AlgebraParams(0, 0, 1)
    try:
        x, y = parse_element(args.x), parse_element(args.y)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    z = bracket(ap, x, y)
    _emit(args, {"algebra": ap.to_json(), "result": z.to_json(), "text": z.to_text()}, z.to_text())
    return EXIT_OK


def cmd_act(args) -> int:
    cfg = _load_config(args)
    M = _module(cfg)
    try:
        x = parse_element(args.x)
        f = parse_polynomial(args.f)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    try:
        g = M.act(x, f)
    except (ConfigurationError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, {"result": g.to_json(), "text": g.to_text()}, g.to_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    suites = args.suite or cfg.suites
    bad = [s for s in suites if s not in SUITES]
    if bad:
        raise UsageError(f"unknown suites {bad}")
    w = _window(cfg)
    corrupted = args.corrupted or cfg.fixture == "corrupted"
    reports = run_suites(w, suites, seed=cfg.seed, corrupted=corrupted)
    return _emit_reports(args, reports, {"seed": cfg.seed, "fixture": "corrupted" if corrupted else None})


def probe_report(ap: AlgebraParams, mp: ModuleParams, probes: Sequence[dict], w: CheckWindow) -> list[Report]:
    """Saturation probes judged against the simplicity predicate."""
    M = RankOneModule(ap, mp)
    out = []
    if mp.alpha == 0 and mp.gamma == 0 and not mp.kappa_nonzero():
        out.append(check_t_submodule(ap, mp, w))
    simple = is_simple_expected(ap, mp)
    rep = Report("saturation", meta={"simple_expected": simple, "params": _describe(ap, mp)})
    for pr in probes or [{"seed": "t^2+1"}]:
        seed = parse_polynomial(str(pr.get("seed", "t^2+1")))
        span = submodule_saturation(
            ap, mp, seed, degree_cap=pr.get("degree_cap"), iter_cap=int(pr.get("iter_cap", 50)), module=M
        )
        found = contains_one(span)
        in_t = seed.coeff(0) == 0
        if simple:
            ok = found
            check = "1 in span (simple)"
        elif in_t:
            ok = all(r.coeff(0) == 0 for r in span.rows)
            check = "span stays in t Omega (not simple)"
        else:
            ok = True
            check = "informational"
        note = PROOF if found else BOUNDED
        e = Entry(check, f"seed={seed}, cap={span.degree_cap}, iter_cap={pr.get('iter_cap', 50)}", ok, len(span.rows), None if ok else f"rows={[r.to_text() for r in span.rows]}", note)
        rep.entries.append(e)
        rep.meta.setdefault("spans", []).append(span.to_json())
    out.append(rep)
    return out


def cmd_probe(args) -> int:
    cfg = _load_config(args)
    w = _window(cfg)
    reports = []
    for ap, mp in w.param_grid:
        reports += probe_report(ap, mp, cfg.probes, w)
    return _emit_reports(args, reports)


def cmd_recover(args) -> int:
    cfg = _load_config(args)
    M = _module(cfg)
    try:
        got = recover_parameters(cfg.algebra, M.act_basis, cfg.module.kappa_window)
    except MalformedOracle as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_FAIL
    same = got == cfg.module
    payload = {"recovered": got.to_json(), "matches_config": same}
    _emit(args, payload, f"recovered {got.to_json()} ({'matches' if same else 'DIFFERS from'} config)")
    return EXIT_OK if same else EXIT_FAIL


def cmd_gen_check(args) -> int:
    cfg = _load_config(args)
    ap = cfg.algebra or AlgebraParams(0, 0, 1)
    c = cfg.closure
    gi = int(c.get("generator_index_bound", 2))
    full = bool(c.get("full_generating_set", not args.small))
    gens = generators(ap, range(-gi, gi + 1))
    if not full:
        gens = [g for g in gens if not (g.kind == "H" and g.m == 1)]
    ib = int(c.get("index_bound", 2))
    hb = int(c.get("height_bound", 3))
    targets = [basis(k, i, m) for k in "LH" for i in range(-ib, ib + 1) for m in range(hb + 1)]
    if ap.epsilon == -1 and ap.b == 1 and not full:
        expect = {Hb(0, 1): False}
    else:
        expect = {t: True for t in targets}
    rep = generation_closure(ap, gens, targets, int(c.get("depth_cap", 4)), ib, hb, expect)
    return _emit_reports(args, [rep])


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="text", action="store_false", help="JSON output (default)")
    fmt.add_argument("--text", dest="text", action="store_true", help="human-readable output")
    common.set_defaults(text=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--a")
    common.add_argument("--b")
    common.add_argument("--epsilon", type=int, choices=(1, -1))
    common.add_argument("--lambda", dest="lam")
    common.add_argument("--alpha")
    common.add_argument("--beta")
    common.add_argument("--gamma")
    common.add_argument("--kappa", help='window and values, e.g. "-4:4;1=2,-1=1/3"')
    common.add_argument("--i-max", type=int)
    common.add_argument("--m-max", type=int)
    common.add_argument("--deg-max", type=int)

    parser = argparse.ArgumentParser(prog="hvalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="bracket of two elements")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("act", parents=[common], help="act with an element on a polynomial")
    p.add_argument("x")
    p.add_argument("f")
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=SUITES)
    p.add_argument("--corrupted", action="store_true", help="use the perturbed negative-control fixture")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe", parents=[common], help="submodule saturation probes")
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("recover", parents=[common], help="recover module parameters from the action")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("gen-check", parents=[common], help="bracket closure of the generating set")
    p.add_argument("--small", action="store_true", help="omit H[i,1] from the generators")
    p.set_defaults(func=cmd_gen_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hvalg {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
