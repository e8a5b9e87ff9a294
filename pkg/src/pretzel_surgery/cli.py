"""Command-line front end.

Subcommands: alexander, slopes, group, prove, search, verify-all. JSON on
stdout is the contract; ``--format text`` is for people.

Exit codes: 0 success; 1 verify-all failure; 2 invalid input, invariant
violation or failed derivation; 3 proof-script parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import acceptance, edgepaths, poly
from .prover import ProverContext, builtin_script_fixedpoint, builtin_script_main, check_script
from .prover.dsl import ParseError, parse_script
from .prover.search import search
from .prover.verifier import verify
from .words import (SurgeryContext, exponent_sums, h1_order, homology_class, longitude, relator,
                    surgery_presentation)

log = logging.getLogger("pretzel_surgery")

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_INVALID = 2
EXIT_PARSE = 3
DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    s: int | None = None
    p: int | None = None
    q: int | None = None
    pretzel: tuple[int, ...] | None = None
    format: str = "json"
    script: str | None = None
    seed: int = DEFAULT_SEED
    max_steps: int = 3
    max_word_len: int = 1
    denominator_bound: int | None = None
    lemma: str = "main"
    s_range: tuple[int, int] = (3, 12)

    def context(self) -> SurgeryContext:
        if None in (self.s, self.p, self.q):
            raise UsageError("--s, --p and --q are all required")
        try:
            return SurgeryContext(self.s, self.p, self.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def need_s(self) -> int:
        if self.s is None:
            raise UsageError("--s is required")
        if self.s < 3:
            raise UsageError(f"s must be >= 3, got {self.s}")
        return self.s


def emit(data, cfg: RunConfig, text: str | None = None) -> None:
    if cfg.format == "text" and text is not None:
        print(text)
    else:
        print(json.dumps(data, indent=2))


# --- alexander -------------------------------------------------------------------------


def cmd_alexander(cfg: RunConfig) -> int:
    if cfg.pretzel is not None:
        plist = list(cfg.pretzel)
    else:
        plist = [2, 3, 2 * cfg.need_s() + 1]
    try:
        q = poly.pretzel_q(plist)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report: dict = {
        "pretzel": plist,
        "polynomial": q.to_json_list(),
        "degree": q.degree,
        "reciprocal": poly.is_reciprocal(q),
        "simple": poly.simple_roots(q),
        "hyperbolicity_condition": poly.hyperbolicity_condition(plist),
        "unit_circle_roots": None,
        "cyclotomic_factors": [],
        "salem_profile": None,
    }
    if plist[0] == 2:
        report["alexander"] = poly.alexander_minus2_pretzel(plist).to_json_list()
    if report["reciprocal"] and report["simple"]:
        report["unit_circle_roots"] = poly.count_unit_circle_roots(q)
    factors, rem = poly.strip_cyclotomic(q)
    report["cyclotomic_factors"] = [[n, m] for n, m in factors]
    report["remainder"] = rem.to_json_list()
    if rem.degree >= 1:
        report["salem_profile"] = poly.salem_profile(rem).as_dict()
    lines = [
        f"Q{tuple(plist)} = {q}",
        f"  degree {q.degree}, reciprocal {report['reciprocal']}, simple roots {report['simple']}",
        f"  sum 1/p_i < k-2: {report['hyperbolicity_condition']}",
        f"  roots on the unit circle: {report['unit_circle_roots']}",
        f"  cyclotomic factors: {', '.join(f'Phi_{n}^{m}' for n, m in factors) or 'none'}",
    ]
    if "alexander" in report:
        lines.insert(1, f"  Alexander polynomial: {poly.alexander_minus2_pretzel(plist)}")
    if report["salem_profile"] is not None:
        prof = report["salem_profile"]
        lines.append(f"  remainder {rem}: Salem {prof['is_salem']} "
                     f"(>1: {prof['n_real_gt1']}, in (0,1): {prof['n_real_in_01']}, "
                     f"circle: {prof['n_unit_circle']})")
    emit(report, cfg, "\n".join(lines))
    return EXIT_OK


# --- slopes ------------------------------------------------------------------------------


def slope_invariants(table: edgepaths.SlopeTable) -> list[str]:
    problems = []
    zeros = [(e.signs, e.system_type) for e in table.entries if e.slope == 0]
    if zeros != [("+++", "III")]:
        problems.append(f"zero entries at {zeros}, expected only +++/III")
    missing = [(e.signs, e.system_type) for e in table.entries if e.slope is None]
    if missing != [("+++", "II")]:
        problems.append(f"non-admissible cells {missing}, expected only +++/II")
    if any(v.denominator != 1 or v % 2 for v in table.values()):
        problems.append("slopes must be even integers")
    if not edgepaths.is_monochromatic(edgepaths.seifert_system(table.s)):
        problems.append("Seifert system is not monochromatic")
    return problems


def cmd_slopes(cfg: RunConfig) -> int:
    s = cfg.need_s()
    table = edgepaths.slope_table(s)
    problems = slope_invariants(table)
    report: dict = {
        "s": s,
        "fractions": [str(f) for f in edgepaths.montesinos_fractions(s)],
        "table": table.to_json(),
        "distinct_values": edgepaths.count_type23_slope_values(s),
        "invariants_ok": not problems,
        "problems": problems,
    }
    text = table.to_text()
    if cfg.denominator_bound is not None:
        if cfg.denominator_bound < 1:
            raise UsageError("--denominator-bound must be positive")
        scan = edgepaths.type1_scan(s, cfg.denominator_bound)
        report["type1"] = [r.to_json() for r in scan]
        report["type1_all_positive"] = all(r.slope > 0 for r in scan)
        text += f"\n\nType I (denominator <= {cfg.denominator_bound}):"
        for r in scan:
            text += f"\n  {r.signs} at u = {r.u}: slope {r.slope}"
        if not report["type1_all_positive"]:
            problems.append("non-positive type I slope")
    emit(report, cfg, text)
    return EXIT_OK if not problems else EXIT_INVALID


# --- group -------------------------------------------------------------------------------


def cmd_group(cfg: RunConfig) -> int:
    s = cfg.need_s()
    r, lw = relator(s), longitude(s)
    report: dict = {
        "s": s,
        "relator": str(r),
        "relator_length": r.length,
        "relator_exponent_sums": list(exponent_sums(r)),
        "relator_homology_class": homology_class(r),
        "longitude": str(lw),
        "longitude_length": lw.length,
        "longitude_exponent_sums": list(exponent_sums(lw)),
        "longitude_homology_class": homology_class(lw),
        "meridian": "c",
    }
    problems = []
    if report["relator_homology_class"] != 0 or report["longitude_homology_class"] != 0:
        problems.append("relator and longitude must be null-homologous")
    if cfg.p is not None or cfg.q is not None:
        ctx = cfg.context()
        pres = surgery_presentation(ctx)
        report["surgery_relators"] = [str(w) for w in pres.relators]
        report["surgery_relator_lengths"] = [w.length for w in pres.relators]
        report["h1"] = h1_order(ctx)
        report["slope_at_least_2s_plus_3"] = ctx.slope_ok
        if report["h1"] != ctx.p:
            problems.append(f"|H1| = {report['h1']} differs from p = {ctx.p}")
    report["invariants_ok"] = not problems
    lines = [f"relator R_{s}   = {r}   (length {r.length})",
             f"longitude L_{s} = {lw}   (length {lw.length}, homology class "
             f"{report['longitude_homology_class']})"]
    if "h1" in report:
        lines.append(f"|H1| = {report['h1']}")
    emit(report, cfg, "\n".join(lines))
    return EXIT_OK if not problems else EXIT_INVALID


# --- prove -------------------------------------------------------------------------------


def cmd_prove(cfg: RunConfig) -> int:
    if cfg.script is not None:
        try:
            text = Path(cfg.script).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read script: {exc}") from None
        try:
            script = parse_script(text)
        except ParseError as exc:
            emit({"result": "parse_error", "line": exc.line, "column": exc.column,
                  "message": str(exc)}, cfg, f"parse error: {exc}")
            return EXIT_PARSE
        if script.context is None:
            ctx = cfg.context()
            script.context = (ctx.s, ctx.p, ctx.q)
        elif cfg.s is not None and (cfg.s, cfg.p, cfg.q) != script.context:
            raise UsageError("script context line disagrees with --s/--p/--q")
        try:
            context = script.prover_context()
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        cert = check_script(script, context)
    elif cfg.lemma == "fixedpoint":
        s = cfg.need_s()
        try:
            cert = builtin_script_fixedpoint(s, cfg.p, cfg.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        cert = builtin_script_main(cfg.context())
    data = cert.to_json()
    ok_indep, reason = verify(data)
    data["independent_check"] = {"accepted": ok_indep, "reason": reason}
    if cert.is_bot:
        text = f"BOT certified in {len(cert.steps)} steps; independent check: {reason}"
    elif cert.failure is not None:
        text = f"derivation failed: {cert.failure}"
    else:
        text = f"every step checks but no contradiction is reached; last judgment: {cert.final}"
    emit(data, cfg, text)
    return EXIT_OK if cert.is_bot and ok_indep else EXIT_INVALID


def cmd_search(cfg: RunConfig) -> int:
    ctx = cfg.context()
    if cfg.max_steps < 0 or cfg.max_word_len < 0:
        raise UsageError("budgets must be non-negative")
    cert = search(ProverContext.for_surgery(ctx.s, ctx.p, ctx.q), cfg.max_steps, cfg.max_word_len)
    if cert is None:
        emit({"result": "exhausted", "max_steps": cfg.max_steps,
              "max_word_len": cfg.max_word_len}, cfg, "exhausted")
        return EXIT_INVALID
    emit(cert.to_json(), cfg, f"BOT found in {len(cert.steps)} steps")
    return EXIT_OK


# --- verify-all --------------------------------------------------------------------------


def cmd_verify_all(cfg: RunConfig) -> int:
    lo, hi = cfg.s_range
    s_values = range(lo, hi + 1)
    if s_values and (lo < 3 or hi > 12):
        raise UsageError("--s-range must lie within 3..12")
    results = acceptance.run_all(s_values, seed=cfg.seed,
                                 progress=lambda r: log.info("%s", r.line()))
    text_lines = [r.line() for r in results]
    passed = all(r.passed for r in results)
    summary = {"s_range": [lo, hi], "seed": cfg.seed, "passed": passed,
               "criteria": [r.to_json() for r in results]}
    # timings vary run to run; keep JSON byte-stable unless asked for text
    if cfg.format == "json":
        for c in summary["criteria"]:
            c.pop("seconds")
    emit(summary, cfg, "\n".join(text_lines) or "nothing to run")
    return EXIT_OK if passed else EXIT_SUITE_FAILED


# --- argument parsing --------------------------------------------------------------------


def _plist(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return out


def _srange(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")


COMMANDS = {
    "alexander": cmd_alexander,
    "slopes": cmd_slopes,
    "group": cmd_group,
    "prove": cmd_prove,
    "search": cmd_search,
    "verify-all": cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--s", type=int)
    common.add_argument("--p", type=int)
    common.add_argument("--q", type=int)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="pretzel-surgery",
                                     description="Computations for surgeries on (-2,3,2s+1) pretzel knots.")
    sub = parser.add_subparsers(dest="command", required=True)
    a = sub.add_parser("alexander", parents=[common], help="pretzel polynomial and root analysis")
    a.add_argument("--pretzel", type=_plist, help="explicit odd-length list, e.g. 2,3,7")
    sl = sub.add_parser("slopes", parents=[common], help="type II/III slope table")
    sl.add_argument("--denominator-bound", type=int, help="also scan type I systems")
    sub.add_parser("group", parents=[common], help="presentation and homology checks")
    pr = sub.add_parser("prove", parents=[common], help="check a proof script")
    pr.add_argument("--script", help="proof script file; default is the shipped script")
    pr.add_argument("--lemma", choices=("main", "fixedpoint"), default="main")
    se = sub.add_parser("search", parents=[common], help="bounded forward-chaining search")
    se.add_argument("--max-steps", type=int, default=3)
    se.add_argument("--max-word-len", type=int, default=1)
    va = sub.add_parser("verify-all", parents=[common], help="run the acceptance suite")
    va.add_argument("--s-range", type=_srange, default=(3, 12), help="e.g. 3..6")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    fields = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**fields)
    try:
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
