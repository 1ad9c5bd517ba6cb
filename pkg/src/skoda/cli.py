"""Command-line front end: ``skoda <command> [options]``.

Exit codes: 0 ok, 1 usage or parse error, 2 falsification alarm, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from importlib import resources
from pathlib import Path

from . import config as config_mod
from .blowup import build_blowup, cech_complex
from .bs import l_complex
from .closure import closure_generators, closure_verdict
from .complexes import check_d_squared
from .errors import ResourceCapExceeded, SkodaError
from .ideal import Ideal, ideal_member
from .parse import parse_list
from .ring import RingPresentation
from .workbench import (FAILS, HOLDS, bir_preclosure_member, bs_check, counterexample_suite,
                        main_theorem_verify, theorem_model)

EXIT_OK, EXIT_USAGE, EXIT_ALARM, EXIT_CAP = 0, 1, 2, 3


class UsageError(SkodaError):
    pass


def _emit(obj, args, text=None):
    if args.json or text is None:
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _load_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _ring(args, cfg, inline=None) -> RingPresentation:
    if inline is not None:
        return RingPresentation.from_descriptor(inline)
    if getattr(args, "ring", None):
        return RingPresentation.from_descriptor(_load_json(args.ring))
    if getattr(args, "vars", None):
        return RingPresentation(cfg.field, [v.strip() for v in args.vars.split(",") if v.strip()], cfg.order)
    raise UsageError("give a ring with --ring FILE or --vars x,y,...")


def _instance_ring(inst, base_dir):
    r = inst.get("ring")
    if isinstance(r, str):
        return RingPresentation.from_descriptor(_load_json(Path(base_dir) / r))
    if isinstance(r, dict):
        return RingPresentation.from_descriptor(r)
    raise UsageError("instance needs a ring descriptor")


# --- commands -------------------------------------------------------------------

def cmd_gb(args, cfg):
    R = _ring(args, cfg)
    I = Ideal(R, parse_list(args.ideal, R))
    gb = [str(g) for g in I.groebner_basis()]
    _emit({"ring": R.descriptor(), "gb": gb}, args, "\n".join(gb))
    return EXIT_OK


def cmd_member(args, cfg):
    R = _ring(args, cfg)
    I = Ideal(R, parse_list(args.ideal, R))
    h = R(args.element)
    res = ideal_member(h, I)
    _emit({"element": str(h), "ideal": [str(g) for g in I.gens], "member": res}, args, str(res).lower())
    return EXIT_OK


def cmd_icl(args, cfg):
    R = _ring(args, cfg)
    J = Ideal(R, parse_list(args.ideal, R))
    if args.element:
        v = closure_verdict(R(args.element), J, args.m)
        _emit({"verdict": v.to_json()}, args, v.status)
        return EXIT_OK
    gens = closure_generators(J, args.m, args.candidate or None)
    out = {"ideal": [str(g) for g in J.gens], "m": args.m,
           "generators": [{"expr": str(g), "certificate": v.certificate} for g, v in gens],
           "rejected": [str(g) for g in gens.rejected]}
    _emit(out, args, "\n".join(str(g) for g, _ in gens))
    return EXIT_OK


def cmd_lcomplex(args, cfg):
    R = _ring(args, cfg)
    f = parse_list(args.gens, R)
    C = l_complex(f, args.k)
    out = C.to_json()
    out["d_squared_zero"] = check_d_squared(C)
    _emit(out, args, f"ranks {C.ranks}, d^2 = 0: {out['d_squared_zero']}")
    return EXIT_OK


def cmd_blowup(args, cfg):
    R = _ring(args, cfg)
    f = parse_list(args.charts, R)
    center = parse_list(args.center, R) if args.center else f
    M = build_blowup(R, center, f, args.power)
    C = cech_complex(M)
    out = M.to_json()
    out["cech"] = C.to_json()
    _emit(out, args, "\n".join(f"chart {i + 1}: {c.ring}" for i, c in enumerate(M.charts)))
    return EXIT_OK


def _run_bs_check(inst, base_dir, timing=False):
    R = _instance_ring(inst, base_dir)
    J = Ideal(R, [R(s) for s in inst["J"]])
    if "n" in inst and inst["n"] != len(J.gens):
        raise UsageError("instance n does not match the number of J generators")
    cg = inst.get("closure_gens")
    report = bs_check(J, int(inst["k"]), cg)
    out = report.to_json(timing)
    expected = inst.get("expected")
    out["expected"] = expected
    out["as_expected"] = expected is None or expected == report.overall
    # on a polynomial ring a failing containment would contradict the theorem
    alarm = report.overall == FAILS and not R.relations and expected != FAILS
    return out, (EXIT_ALARM if alarm or not out["as_expected"] else EXIT_OK)


def _run_verify_main(inst, base_dir, timing=False):
    R = _instance_ring(inst, base_dir)
    f = [R(s) for s in inst["f"]]
    t0 = time.perf_counter()
    res = main_theorem_verify(R(inst["h"]), f, int(inst["k"]), inst.get("certificate"))
    out = res.to_json()
    if timing:
        out["timing_seconds"] = round(time.perf_counter() - t0, 3)
    out["as_expected"] = res.ok
    return out, (EXIT_OK if res.ok else EXIT_ALARM)


def _run_bir(inst, base_dir, timing=False):
    R = _instance_ring(inst, base_dir)
    J = Ideal(R, [R(s) for s in inst["J"]])
    k = int(inst["k"])
    h = R(inst["h"])
    model = theorem_model(h, list(J.gens), k, inst.get("certificate"))
    ok, info = bir_preclosure_member(h, J, k, model, detail=True)
    out = {"h": str(h), "J": [str(g) for g in J.gens], "k": k, "member": ok, "route": info["route"]}
    if "witness" in info:
        out["witness"] = info["witness"]
    expected = inst.get("expected")
    out["as_expected"] = expected is None or expected == ok
    return out, (EXIT_OK if out["as_expected"] else EXIT_ALARM)


def _run_counterexample(inst, base_dir, timing=False):
    report = counterexample_suite(rederive=inst.get("rederive", True))
    out = report.to_json(timing)
    out["expected"] = inst.get("expected", FAILS)
    ok = report.overall == out["expected"] and all(report.checks.values())
    out["as_expected"] = ok
    return out, (EXIT_OK if ok else EXIT_ALARM)


RUNNERS = {
    "bs-check": _run_bs_check,
    "verify-main": _run_verify_main,
    "bir-member": _run_bir,
    "counterexample": _run_counterexample,
}


def _instance_cmd(kind):
    def run(args, cfg):
        inst = _load_json(args.instance)
        out, code = RUNNERS[kind](inst, Path(args.instance).parent, args.timing)
        text = None
        if kind == "bs-check":
            text = f"{out['overall']}" + (f" (failing: {', '.join(out['failing'])})" if out["failing"] else "")
        elif kind == "verify-main":
            text = out["status"]
        elif kind == "bir-member":
            text = str(out["member"]).lower()
        _emit(out, args, text)
        return code
    return run


def _corpus_item(job):
    path, cfg = job
    cfg.apply()
    inst = _load_json(path)
    kind = inst.get("command", "bs-check")
    try:
        out, code = RUNNERS[kind](inst, Path(path).parent)
    except ResourceCapExceeded as exc:
        return {"instance": Path(path).name, "command": kind, "outcome": "resource_cap", "detail": str(exc)}, EXIT_CAP
    outcome = "expected" if code == EXIT_OK else "falsification_alarm"
    entry = {"instance": Path(path).name, "command": kind, "outcome": outcome}
    for key in ("overall", "status", "member"):
        if key in out:
            entry[key] = out[key]
    return entry, code


def default_manifest() -> Path:
    return Path(str(resources.files("skoda.data").joinpath("corpus/manifest.json")))


def cmd_corpus(args, cfg):
    manifest = Path(args.manifest) if args.manifest else default_manifest()
    data = _load_json(manifest)
    files = data["instances"] if isinstance(data, dict) else data
    paths = [str(manifest.parent / p) for p in files]
    jobs = [(p, cfg) for p in paths]
    workers = args.workers or cfg.workers
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_corpus_item, jobs))
    else:
        results = [_corpus_item(j) for j in jobs]
    entries = [r[0] for r in results]
    codes = [r[1] for r in results]
    counts = {"total": len(entries),
              "expected": sum(c == EXIT_OK for c in codes),
              "falsification_alarm": sum(c == EXIT_ALARM for c in codes),
              "resource_cap": sum(c == EXIT_CAP for c in codes)}
    summary = "all verdicts expected" if counts["expected"] == counts["total"] else "unexpected verdicts"
    out = {"manifest": manifest.name, "results": entries, "counts": counts, "summary": summary}
    lines = [f"{e['instance']}: {e['outcome']}" for e in entries] + [summary]
    _emit(out, args, "\n".join(lines))
    if counts["falsification_alarm"]:
        return EXIT_ALARM
    if counts["resource_cap"]:
        return EXIT_CAP
    return EXIT_OK


# --- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", metavar="FILE", help="ring descriptor JSON file")
    common.add_argument("--vars", help="comma-separated variables (polynomial ring over the config field)")
    common.add_argument("--config", metavar="FILE", help="config JSON (default: $SKODA_CONFIG)")
    common.add_argument("--cap-pairs", type=int, metavar="N")
    common.add_argument("--cap-degree", type=int, metavar="N")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings in reports")
    common.add_argument("--workers", type=int, metavar="N")

    p = argparse.ArgumentParser(prog="skoda", description="Briancon-Skoda workbench")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    s.add_argument("ideal", help='generators, e.g. "x^2-1, x*y-1"')
    s.set_defaults(func=cmd_gb)

    s = sub.add_parser("member", parents=[common], help="ideal membership")
    s.add_argument("element")
    s.add_argument("ideal")
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("icl", parents=[common], help="integral closure generators or a membership verdict")
    s.add_argument("ideal")
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--element", help="decide membership of this element instead")
    s.add_argument("--candidate", action="append", help="user-supplied candidate generator (repeatable)")
    s.set_defaults(func=cmd_icl)

    s = sub.add_parser("lcomplex", parents=[common], help="the L-complex L^k(f)")
    s.add_argument("gens")
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(func=cmd_lcomplex)

    s = sub.add_parser("blowup", parents=[common], help="blowup charts and Cech data")
    s.add_argument("--charts", required=True, help="chart generators f_i")
    s.add_argument("--center", help="center generators (default: the chart generators)")
    s.add_argument("--power", type=int, default=1)
    s.set_defaults(func=cmd_blowup)

    for name, helptext in (("bs-check", "containment check on an instance file"),
                           ("verify-main", "vanishing witness on an instance file"),
                           ("bir-member", "pre-closure membership on an instance file")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("instance")
        s.set_defaults(func=_instance_cmd(name))

    s = sub.add_parser("corpus", parents=[common], help="run a manifest of instances")
    s.add_argument("manifest", nargs="?", help="manifest JSON (default: the shipped corpus)")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = config_mod.resolve(args.config)
        if args.cap_pairs is not None:
            cfg = replace(cfg, max_pairs=args.cap_pairs)
        if args.cap_degree is not None:
            cfg = replace(cfg, max_degree=args.cap_degree)
        if args.workers is not None:
            cfg = replace(cfg, workers=args.workers)
        cfg.validate().apply()
        return args.func(args, cfg)
    except ResourceCapExceeded as exc:
        print(f"skoda: {exc}", file=sys.stderr)
        return EXIT_CAP
    except SkodaError as exc:
        print(f"skoda: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
