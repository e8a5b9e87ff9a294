"""The reproducibility suite: one check per published claim, each with a pass/fail verdict."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterable

from . import edgepaths, poly
from .prover import builtin_script_fixedpoint, builtin_script_main
from .prover.soundness import default_seed_certificates, fuzz_mutations, fuzz_rules
from .prover.verifier import verify
from .words import SurgeryContext, h1_order, homology_class, longitude

NOT_ADMISSIBLE = None

TOLERANCE = {
    1: "exact count, runtime < 10s",
    2: "exact",
    3: "exact, cell for cell",
    4: "strict > 0, exact rationals",
    5: "exact iff, runtime < 30s",
    6: "exact",
    7: "exact, 200 contexts",
    8: "0 violations on a 1000-point grid (order 1e-9, equality 1e-7), 0 accepted mutants",
}


def published_slope_list(s: int) -> dict[tuple[str, str], int | None]:
    """The published Slope List as a function of s."""
    rows = {
        "+++": (NOT_ADMISSIBLE, 0),
        "++-": (4 * s + 4, 4 * s + 2),
        "+-+": (8, 6),
        "+--": (4 * s + 8, 4 * s + 8),
        "-++": (6, 4),
        "-+-": (4 * s + 6, 4 * s + 6),
        "--+": (10, 10),
        "---": (4 * s + 10, 4 * s + 12),
    }
    return {(k, t): v[i] for k, v in rows.items() for i, t in enumerate(("II", "III"))}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    data: dict = field(default_factory=dict)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        tol = TOLERANCE.get(self.number, "")
        return (f"[{mark}] criterion {self.number}: {self.name} [tolerance: {tol}] "
                f"({self.seconds:.2f}s) {self.detail}").rstrip()

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed,
                "tolerance": TOLERANCE.get(self.number, ""),
                "detail": self.detail, "seconds": round(self.seconds, 3)}


def criterion_1(s_values: Iterable[int]) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    for s in s_values:
        n = poly.count_unit_circle_roots(poly.pretzel_q([2, 3, 2 * s + 1]))
        if n != 2 * s + 2:
            bad.append(f"s={s}: {n} != {2 * s + 2}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    detail = "; ".join(bad) if bad else "2s+2 roots on |x|=1 for every s"
    return CriterionResult(1, "unit-circle roots of Q(2,3,2s+1)", ok, detail, dt)


def criterion_2(s_values: Iterable[int]) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    for s in s_values:
        q = poly.pretzel_q([2, 3, 2 * s + 1])
        if poly.poly_gcd(q, q.derivative()).degree != 0:
            bad.append(f"s={s}: repeated root")
        if not poly.is_reciprocal(q) or q.degree != 2 * s + 4:
            bad.append(f"s={s}: not reciprocal of degree {2 * s + 4}")
        _, rem = poly.strip_cyclotomic(q)
        prof = poly.salem_profile(rem)
        if not (prof.n_real_gt1 == 1 and prof.n_real_in_01 == 1 and prof.n_other == 0
                and prof.n_unit_circle == rem.degree - 2 and prof.all_simple):
            bad.append(f"s={s}: remainder profile {prof.as_dict()}")
    dt = time.perf_counter() - t0
    return CriterionResult(2, "simple roots, reciprocity, Salem remainder", not bad,
                           "; ".join(bad), dt)


def criterion_3(s_values: Iterable[int]) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    for s in s_values:
        table = edgepaths.slope_table(s)
        want = published_slope_list(s)
        for (signs, typ), v in want.items():
            got = table.cell(signs, typ)
            if got != v:
                bad.append(f"s={s} {signs}/{typ}: {got} != {v}")
        zeros = [(e.signs, e.system_type) for e in table.entries if e.slope == 0]
        if zeros != [("+++", "III")]:
            bad.append(f"s={s}: zero entries at {zeros}")
        if not edgepaths.is_monochromatic(edgepaths.seifert_system(s)):
            bad.append(f"s={s}: Seifert system not monochromatic")
    dt = time.perf_counter() - t0
    return CriterionResult(3, "slope table matches the published list", not bad,
                           "; ".join(bad[:5]), dt)


def criterion_4(s_values: Iterable[int], bounds: Iterable[int] = range(2, 13)) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    seen = 0
    for s in s_values:
        for b in bounds:
            for res in edgepaths.type1_scan(s, b):
                seen += 1
                if res.slope <= 0:
                    bad.append(f"s={s} bound={b} {res.signs} u={res.u}: slope {res.slope}")
    dt = time.perf_counter() - t0
    detail = "; ".join(bad[:5]) if bad else f"{seen} type I slopes, all > 0"
    return CriterionResult(4, "type I slopes are positive", not bad, detail, dt, {"count": seen})


def surgery_grid(s_values: Iterable[int], q_values: Iterable[int] = (1, 2, 3)):
    for s in s_values:
        for q in q_values:
            base = (2 * s + 3) * q
            for p in range(base - 2, base + 5):
                if gcd(p, q) == 1:
                    yield s, p, q


def criterion_5(s_values: Iterable[int]) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    n = 0
    for s, p, q in surgery_grid(s_values):
        n += 1
        cert = builtin_script_main((s, p, q))
        expect = p >= (2 * s + 3) * q
        ok_indep, reason = verify(cert.to_json())
        if cert.is_bot != expect or ok_indep != expect:
            bad.append(f"({s},{p},{q}): kernel {cert.result}, verifier {reason}")
            continue
        if not expect:
            f = cert.failure
            failing = [st for st in cert.steps if not st.verified]
            if f is None or f.rule != "R-KPOW-SIGN" or failing[0].id != f.step_id:
                bad.append(f"({s},{p},{q}): failure not at the k-power step: {f}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    detail = "; ".join(bad[:5]) if bad else f"{n} contexts"
    return CriterionResult(5, "main certificates verify iff p >= (2s+3)q", ok, detail, dt,
                           {"contexts": n})


def criterion_6(s_values: Iterable[int]) -> CriterionResult:
    t0 = time.perf_counter()
    bad = []
    for s in s_values:
        cert = builtin_script_fixedpoint(s)
        ok_indep, reason = verify(cert.to_json())
        if not cert.is_bot or not ok_indep:
            bad.append(f"s={s}: {cert.result}, verifier {reason}")
    dt = time.perf_counter() - t0
    return CriterionResult(6, "fixed-point certificates close every branch", not bad,
                           "; ".join(bad), dt)


def criterion_7(n: int = 200, seed: int = 0) -> CriterionResult:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    bad = []
    done = 0
    while done < n:
        s = rng.randint(3, 50)
        q = rng.randint(1, 40)
        p = rng.randint(1, 400)
        if gcd(p, q) != 1:
            continue
        done += 1
        ctx = SurgeryContext(s, p, q)
        if h1_order(ctx) != p:
            bad.append(f"h1{(s, p, q)} = {h1_order(ctx)}")
        if homology_class(longitude(s)) != 0:
            bad.append(f"longitude({s}) not null-homologous")
    dt = time.perf_counter() - t0
    return CriterionResult(7, "|H1| = p and null-homologous longitude", not bad,
                           "; ".join(bad[:5]), dt)


def criterion_8(seed: int = 0, n_rules: int = 10_000, n_mutants: int = 1000) -> CriterionResult:
    t0 = time.perf_counter()
    rules = fuzz_rules(n_rules, seed=seed)
    muts = fuzz_mutations(default_seed_certificates(), n_mutants, seed=seed)
    dt = time.perf_counter() - t0
    ok = (rules.instances == n_rules and not rules.violations
          and muts.mutants == n_mutants and not muts.accepted_by_verifier)
    detail = (f"{rules.instances} rule instances, {len(rules.violations)} violations; "
              f"{muts.mutants} mutants, {len(muts.accepted_by_verifier)} accepted by verifier")
    return CriterionResult(8, "soundness fuzz and mutation rejection", ok, detail, dt)


def run_all(s_values: Iterable[int] = range(3, 13), seed: int = 0,
            progress: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    """Run every criterion restricted to ``s_values``; an empty range runs nothing."""
    s_values = sorted(set(s_values))
    if not s_values:
        return []
    if s_values[0] < 3 or s_values[-1] > 12:
        raise ValueError("s range must lie within 3..12")
    jobs = [
        lambda: criterion_1(s_values),
        lambda: criterion_2(s_values),
        lambda: criterion_3(s_values),
        lambda: criterion_4([s for s in s_values if s <= 6]),
        lambda: criterion_5([s for s in s_values if s <= 8]),
        lambda: criterion_6([s for s in s_values if s <= 8]),
        lambda: criterion_7(seed=seed),
        lambda: criterion_8(seed=seed),
    ]
    out = []
    for job in jobs:
        res = job()
        if progress:
            progress(res)
        out.append(res)
    return out
