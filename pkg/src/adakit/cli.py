"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass

from .algebra import load_algebra
from .analysis import CERTIFIED, analyze
from .decompose import is_indecomposable
from .filtration import FiltrationError, happel_check, maximal_filtration, simple_connectedness
from .hochschild import DEFAULT_DEGREE_CAP, HARD_DEGREE_CAP, CochainTooLarge, hochschild_record, pi1_export
from .homology import DEFAULT_CAP
from .knit import DEFAULT_BUDGET, DEFAULT_MAX_DIM, knit
from .parts import Membership
from .quiver import AlgebraFileError
from .rep import parse_rep
from .report import build_report, dumps, render_analysis_dot, render_dot

log = logging.getLogger("adakit")

MAX_MODULES = 10000
MAX_DIM = 512

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNCERTIFIED = 3


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    path: str
    budget: int = DEFAULT_BUDGET
    max_dim: int = DEFAULT_MAX_DIM
    pd_cap: int = DEFAULT_CAP
    degree_cap: int = DEFAULT_DEGREE_CAP
    seeds: str = "both"
    json_out: str | None = None
    dot_out: str | None = None
    verbose: int = 0
    sections: bool = True

    def validate(self):
        if not 1 <= self.budget <= MAX_MODULES:
            raise ConfigError(f"budget must lie in 1..{MAX_MODULES}")
        if not 1 <= self.max_dim <= MAX_DIM:
            raise ConfigError(f"max-dim must lie in 1..{MAX_DIM}")
        if not 0 <= self.degree_cap <= HARD_DEGREE_CAP:
            raise ConfigError(f"degree cap must lie in 0..{HARD_DEGREE_CAP}")
        if self.pd_cap < 1:
            raise ConfigError("pd cap must be positive")
        return self


def _default_budget():
    env = os.environ.get("ADAKIT_BUDGET")
    if env is None:
        return DEFAULT_BUDGET
    try:
        return int(env)
    except ValueError:
        raise ConfigError(f"ADAKIT_BUDGET is not an integer: {env!r}")


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(cfg: RunConfig):
    try:
        return load_algebra(cfg.path)
    except AlgebraFileError as e:
        if e.line is None:
            raise ConfigError(e.message) from None
        raise ConfigError(f"{cfg.path}:{e.line}: {e.message}") from None


def _load_module(path, A):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        return parse_rep(text, A, label=os.path.splitext(os.path.basename(path))[0])
    except AlgebraFileError as e:
        where = path if e.line is None else f"{path}:{e.line}"
        raise ConfigError(f"{where}: {e.message}") from None


def full_report(A, cfg: RunConfig):
    an = analyze(A, budget=cfg.budget, max_dim=cfg.max_dim, seeds=cfg.seeds, cap=cfg.pd_cap,
                 sections=cfg.sections)
    log.info("window: %d modules, %s; classification %s", len(an.window),
             "complete" if an.window.complete else "incomplete", an.classification.kind)
    extra = []
    records = {}
    rec = pi1 = filt = happel = simply = None
    try:
        rec = hochschild_record(A, cfg.degree_cap)
        records[A.fingerprint()] = rec
    except CochainTooLarge as e:
        extra.append(f"Hochschild cochains too large: {e}")
    pi1 = pi1_export(A)
    try:
        filt = maximal_filtration(A, an, cap=cfg.pd_cap)
        if not filt.refused and rec is not None:
            happel = happel_check(filt, cfg.degree_cap, records)
    except (FiltrationError, CochainTooLarge) as e:
        extra.append(f"filtration failed: {e}")
    if rec is not None:
        simply = simple_connectedness(an, rec, filt)
    log.info("hochschild %s", None if rec is None else rec.dims)
    report = build_report(an, rec, filt, happel, simply, pi1)
    report["warnings"] = sorted(set(report["warnings"]) | set(extra))
    return an, report


def cmd_analyze(cfg: RunConfig, strict: bool = False) -> int:
    A = _load(cfg)
    an, report = full_report(A, cfg)
    text = dumps(report)
    if cfg.json_out:
        _write(cfg.json_out, text)
    else:
        cls = report["classification"]
        print(f"{A.name}: {cls['kind']} ({cls['confidence']})")
        for w in report["warnings"]:
            print(f"  warning: {w}")
    if cfg.dot_out:
        _write(cfg.dot_out, render_analysis_dot(an))
    if strict and an.classification.confidence != CERTIFIED:
        return EXIT_UNCERTIFIED
    return EXIT_OK


def cmd_membership(cfg: RunConfig, label: str) -> int:
    A = _load(cfg)
    W = knit(A, seeds=cfg.seeds, budget=cfg.budget, max_dim=cfg.max_dim)
    eng = Membership(W, cap=cfg.pd_cap)
    path = label[1:] if label.startswith("@") else label
    if label.startswith("@") or os.path.isfile(path):
        M = _load_module(path, A)
        if not is_indecomposable(M):
            raise ConfigError(f"{label}: module is not indecomposable")
        left, right = eng.verdict(M, "L"), eng.verdict(M, "R")
        name = M.label
    else:
        i = W.index_of(label)
        if i is None:
            raise ConfigError(f"module {label!r} not found in the knitted window ({len(W)} modules)")
        M, left, right, name = W.nodes[i].module, eng.left(i), eng.right(i), W.label(i)
    out = {"module": name, "dims": M.dimvec(), "L": left.to_json(), "R": right.to_json()}
    _write(cfg.json_out or "-", json.dumps(out, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_knit(cfg: RunConfig) -> int:
    A = _load(cfg)
    W = knit(A, seeds=cfg.seeds, budget=cfg.budget, max_dim=cfg.max_dim)
    if cfg.dot_out:
        _write(cfg.dot_out, render_dot(W))
    print(f"{len(W)} modules, {len(W.arrows)} irreducible maps, "
          f"{'complete' if W.complete else 'incomplete'}")
    for c in W.components():
        print("  " + " ".join(W.label(i) for i in c))
    return EXIT_OK


def cmd_hochschild(cfg: RunConfig) -> int:
    A = _load(cfg)
    rec = hochschild_record(A, cfg.degree_cap)
    _write(cfg.json_out or "-", json.dumps(rec.to_json(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_filtration(cfg: RunConfig) -> int:
    A = _load(cfg)
    an = analyze(A, budget=cfg.budget, max_dim=cfg.max_dim, seeds=cfg.seeds, cap=cfg.pd_cap)
    filt = maximal_filtration(A, an, cap=cfg.pd_cap)
    out = filt.to_json()
    if not filt.refused:
        out["happel"] = [h.to_json() for h in happel_check(filt, cfg.degree_cap)]
    _write(cfg.json_out or "-", json.dumps(out, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_pi1(cfg: RunConfig) -> int:
    A = _load(cfg)
    _write(cfg.json_out or "-", json.dumps(pi1_export(A).to_json(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="adakit", description="Left and right parts of bound quiver algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, window=True):
        sp.add_argument("file", help="algebra file (.alg)")
        sp.add_argument("--json", dest="json_out", metavar="PATH", help="write JSON here ('-' for stdout)")
        sp.add_argument("-v", "--verbose", action="count", default=0)
        if window:
            sp.add_argument("--budget", type=int, default=None, help="window size in modules")
            sp.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
            sp.add_argument("--pd-cap", type=int, default=DEFAULT_CAP)
            sp.add_argument("--seeds", choices=["projectives", "injectives", "both"], default="both")

    a = sub.add_parser("analyze", help="full pipeline report")
    common(a)
    a.add_argument("--dot", dest="dot_out", metavar="PATH")
    a.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    a.add_argument("--no-sections", action="store_true",
                   help="classify only: skip Sigma, component structure and middle part")
    a.add_argument("--strict-certify", action="store_true",
                   help="exit 3 when the classification is only window-limited")

    m = sub.add_parser("membership", help="left/right part verdicts for one module")
    common(m)
    m.add_argument("--module", required=True, help="module label or alias (e.g. P4), or @file.rep")

    k = sub.add_parser("knit", help="knit the AR window")
    common(k)
    k.add_argument("--from", dest="from_", choices=["projectives", "injectives", "both"], default=None)
    k.add_argument("--dot", dest="dot_out", metavar="PATH")

    h = sub.add_parser("hochschild", help="Hochschild cohomology dimensions")
    common(h, window=False)
    h.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)

    f = sub.add_parser("filtration", help="maximal filtration and Happel checks")
    common(f)
    f.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)

    q = sub.add_parser("pi1", help="fundamental group presentation")
    common(q, window=False)
    return p


def _config(ns) -> RunConfig:
    budget = getattr(ns, "budget", None)
    cfg = RunConfig(path=ns.file, budget=budget if budget is not None else _default_budget(),
                    max_dim=getattr(ns, "max_dim", DEFAULT_MAX_DIM),
                    pd_cap=getattr(ns, "pd_cap", DEFAULT_CAP),
                    degree_cap=getattr(ns, "degree_cap", DEFAULT_DEGREE_CAP),
                    seeds=getattr(ns, "from_", None) or getattr(ns, "seeds", "both"),
                    json_out=ns.json_out, dot_out=getattr(ns, "dot_out", None), verbose=ns.verbose,
                    sections=not getattr(ns, "no_sections", False))
    return cfg.validate()


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(ns.verbose, 2), format="%(name)s: %(message)s")
    try:
        cfg = _config(ns)
        if ns.command == "analyze":
            return cmd_analyze(cfg, strict=ns.strict_certify)
        if ns.command == "membership":
            return cmd_membership(cfg, ns.module)
        if ns.command == "knit":
            return cmd_knit(cfg)
        if ns.command == "hochschild":
            return cmd_hochschild(cfg)
        if ns.command == "filtration":
            return cmd_filtration(cfg)
        return cmd_pi1(cfg)
    except ConfigError as e:
        print(f"adakit: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as e:
        print(f"adakit: error: {e.filename or ''}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
