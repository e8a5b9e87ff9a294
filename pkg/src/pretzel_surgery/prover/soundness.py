"""Fuzz harnesses for the kernel and the independent verifier.

``fuzz_rules`` interprets c, l, k as random increasing piecewise-linear
bijections of the line and feeds the kernel premises that are true for
those maps by construction (sign facts from products of displacing maps,
equalities from c = k^q, point facts read off at a fixed point x0). Each
conclusion the kernel accepts is then evaluated on a grid.

``fuzz_mutations`` perturbs one rule name, premise or argument of a valid
certificate, keeps the mutants the kernel refuses, and asks the verifier
to refuse them too.
"""

from __future__ import annotations

import copy
import json
import random
from dataclasses import dataclass, field

import numpy as np

from ..words import IDENTITY, Word
from .judgments import FLIP_REL, SIGN_KINDS, Judgment, eq, pt
from .kernel import (RULES, ProverContext, RuleError, _RuleEnv, certificate_from_json,
                     check_script, lookup_rule)
from .verifier import verify

GRID_LO, GRID_HI = -15.0, 15.0


class PLMap:
    """Increasing piecewise-linear bijection of R, slope 1 outside its breakpoints."""

    def __init__(self, xs, ys):
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        if np.any(np.diff(self.xs) <= 0) or np.any(np.diff(self.ys) <= 0):
            raise ValueError("breakpoints must increase")

    @staticmethod
    def _eval(x, xs, ys):
        y = np.interp(x, xs, ys)
        y = np.where(x < xs[0], x + (ys[0] - xs[0]), y)
        return np.where(x > xs[-1], x + (ys[-1] - xs[-1]), y)

    def __call__(self, x):
        return self._eval(x, self.xs, self.ys)

    def inverse(self, x):
        return self._eval(x, self.ys, self.xs)


def random_map(rng: np.random.Generator, kind: str, x0: float | None = None) -> PLMap:
    """``kind`` is "pos" (x < f(x) everywhere), "neg", or "fix" (f(x0) = x0)."""
    n = int(rng.integers(4, 9))
    xs = np.sort(rng.uniform(GRID_LO + 1, GRID_HI - 1, n))
    while np.any(np.diff(xs) < 0.3):
        xs = np.sort(rng.uniform(GRID_LO + 1, GRID_HI - 1, n))
    if kind == "fix":
        if x0 is None:
            raise ValueError("fix maps need x0")
        xs = np.sort(np.append(xs[np.abs(xs - x0) > 0.3], x0))
    gaps = np.diff(xs)
    lo, hi = {"pos": (0.1, 1.5), "neg": (-1.5, -0.1), "fix": (-1.5, 1.5)}[kind]
    while True:
        d = np.empty(len(xs))
        d[0] = rng.uniform(lo, hi)
        for i, g in enumerate(gaps, start=1):
            d[i] = np.clip(d[i - 1] + rng.uniform(-0.8 * g, 0.8 * g), lo, hi)
        if kind == "fix":
            d[np.searchsorted(xs, x0)] = 0.0
        # slope of every piece stays at least 0.1
        if np.all(np.diff(xs + d) > 0.1 * gaps):
            break
    return PLMap(xs, xs + d)


@dataclass
class Model:
    """Maps for l and k; c acts as k^q so that c = k^q holds exactly."""

    maps: dict
    types: dict
    q: int
    x0: float
    fixed: set = field(default_factory=set)

    def apply_gen(self, g: str, e: int, x):
        if g == "c":
            return self.apply_gen("k", e * self.q, x)
        f = self.maps[g]
        for _ in range(abs(e)):
            x = f(x) if e > 0 else f.inverse(x)
        return x

    def act(self, w: Word, x):
        for g, e in reversed(w.blocks):
            x = self.apply_gen(g, e, x)
        return x


def random_model(rng: np.random.Generator) -> Model:
    x0 = float(rng.uniform(-3, 3))
    types = {}
    maps = {}
    for g in ("k", "l"):
        kind = str(rng.choice(["pos", "neg", "fix"]))
        types[g] = kind
        maps[g] = random_map(rng, kind, x0)
    q = int(rng.integers(1, 4))
    types["c"] = types["k"]
    fixed = {g for g in ("c", "k", "l") if types[g] == "fix"}
    return Model(maps, types, q, x0, fixed)


# --- true-by-construction premises ----------------------------------------------------

_TOL = 1e-9


def _rand_word(r: random.Random, max_len: int = 3, gens="clk") -> Word:
    blocks = [(r.choice(gens), r.choice([-2, -1, 1, 2])) for _ in range(r.randint(0, max_len))]
    return Word(blocks)


def _positive_word(r: random.Random, m: Model, allow_empty: bool) -> Word | None:
    letters = [(g, 1 if m.types[g] == "pos" else -1) for g in "clk" if m.types[g] != "fix"]
    if not letters:
        return IDENTITY if allow_empty else None
    n = r.randint(0 if allow_empty else 1, 3)
    w = Word()
    for _ in range(n):
        g, s = r.choice(letters)
        w = w * Word.gen(g, s * r.randint(1, 2))
    if w.is_identity() and not allow_empty:
        return None
    v = _rand_word(r, 2)
    return v * w * v.inverse()


def true_sign(r: random.Random, m: Model, kind: str) -> Judgment | None:
    strict = kind in ("POS", "NEG")
    w = _positive_word(r, m, not strict)
    if w is None:
        return None
    if kind in ("NEG", "NPOS"):
        w = w.inverse()
    return Judgment(kind, subject=w)


def true_eq(r: random.Random, m: Model) -> Judgment:
    a, b = _rand_word(r, 2), _rand_word(r, 2)
    choice = r.randrange(3)
    if choice == 0:
        w = a * b
        return eq(w, w)
    left, right = a * Word.gen("c") * b, a * Word.gen("k", m.q) * b
    return eq(left, right) if choice == 1 else eq(right, left)


def true_pt(r: random.Random, m: Model, u: Word | None = None) -> Judgment | None:
    if m.fixed and r.random() < 0.4:
        g = r.choice(sorted(m.fixed))
        return pt(Word.gen(g, r.choice([-2, -1, 1, 2])), "=", IDENTITY)
    u = _rand_word(r) if u is None else u
    v = _rand_word(r)
    a, b = float(m.act(u, m.x0)), float(m.act(v, m.x0))
    if u == v:
        return pt(u, "=", v)
    if abs(a - b) < 1e-6:
        return None
    return pt(u, "<" if a < b else ">", v)


def holds(j: Judgment, m: Model, grid: np.ndarray) -> bool:
    if j.kind in SIGN_KINDS:
        disp = m.act(j.subject, grid) - grid
        if j.kind in ("NEG", "NPOS"):
            disp = -disp
        return bool(np.all(disp > _TOL)) if j.kind in ("POS", "NEG") else bool(np.all(disp > -_TOL))
    if j.kind == "EQ":
        return bool(np.all(np.abs(m.act(j.left, grid) - m.act(j.right, grid)) < 1e-7))
    if j.kind == "PT":
        a, b = float(m.act(j.left, m.x0)), float(m.act(j.right, m.x0))
        if j.rel == "=":
            return abs(a - b) < 1e-7
        return a < b - _TOL if j.rel == "<" else a > b + _TOL
    return False  # BOT never holds


# rule name -> premise generators; each returns a tuple of judgments or None
def _premises(name: str, r: random.Random, m: Model):
    def sign(kind=None):
        return true_sign(r, m, kind or r.choice(SIGN_KINDS))

    if name in ("R-POW", "R-CONJ", "R-INV"):
        return (sign(),)
    if name == "R-MUL":
        pol = r.choice([("POS", "NNEG"), ("NEG", "NPOS")])
        return (sign(r.choice(pol)), sign(r.choice(pol)))
    if name == "R-EQSUBST":
        # the left side must carry a true sign: use the sign of k^q = c when known
        if m.types["k"] == "fix":
            return None
        w = Word.gen("k", m.q) if r.random() < 0.5 else Word.gen("c")
        pos_like = m.types["k"] == "pos"
        kind = r.choice(["POS", "NNEG"] if pos_like else ["NEG", "NPOS"])
        e = eq(w, Word.gen("c") if w == Word.gen("k", m.q) else Word.gen("k", m.q))
        return (Judgment(kind, subject=w), e)
    if name == "R-KPOW-SIGN":
        return (sign(r.choice(["POS", "NEG"])),)
    if name == "R-CONTRA":
        return (sign(), r.choice([sign(), true_eq(r, m)]))
    if name == "R-EQ-REFL":
        return ()
    if name in ("R-EQ-SYM", "R-EQ-CONG", "R-EQ-POW"):
        return (true_eq(r, m),)
    if name == "R-EQ-TRANS":
        a = true_eq(r, m)
        b = r.choice([eq(a.right, a.right), eq(a.right, a.left)])
        return (a, b)
    if name == "R-EQ-MUL":
        return (true_eq(r, m), true_eq(r, m))
    if name in ("R-PT-APPLY", "R-PT-SYM", "R-PT-POW"):
        return (true_pt(r, m),)
    if name == "R-PT-TRANS":
        a = true_pt(r, m)
        if a is None:
            return None
        b = true_pt(r, m, a.right)
        return (a, b)
    if name == "R-PT-EQSUBST":
        e = true_eq(r, m)
        a = true_pt(r, m, e.left)
        if a is not None and a.rel != "=" and r.random() < 0.5:
            a = pt(a.right, FLIP_REL[a.rel], a.left)
        return (a, e)
    return None


def _args(name: str, r: random.Random):
    if name in ("R-POW", "R-EQ-POW", "R-PT-POW"):
        return (r.randint(-2, 3),)
    if name in ("R-CONJ", "R-EQ-REFL", "R-PT-APPLY"):
        return (_rand_word(r),)
    if name == "R-EQ-CONG":
        return (_rand_word(r), _rand_word(r))
    if name == "R-KPOW-SIGN":
        return (r.randint(-3, 3), r.choice([-1, 1]))
    if name == "R-PT-EQSUBST":
        return (r.choice([0, 1]),)
    return ()


FUZZ_RULES = tuple(r.name for r in RULES
                   if r.name not in ("R-EQ-REL", "R-PT-ASSUME", "R-PT-CASES", "R-PT-GLOBALFIX"))


@dataclass
class FuzzReport:
    instances: int = 0
    attempts: int = 0
    violations: list = field(default_factory=list)
    by_rule: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.instances > 0 and not self.violations


def fuzz_rules(n: int = 10_000, seed: int = 0, grid_points: int = 1000,
               n_models: int = 64, overrides: dict | None = None) -> FuzzReport:
    """Apply ``n`` accepted relator-free rule instances under random monotone maps.

    ``overrides`` maps rule names to replacement rule functions, which lets
    a test plant a broken rule and watch the harness catch it.
    """
    overrides = overrides or {}
    rng = np.random.default_rng(seed)
    r = random.Random(seed)
    models = [random_model(rng) for _ in range(n_models)]
    grid = np.linspace(GRID_LO, GRID_HI, grid_points)
    env = _RuleEnv(False, ("c", "l"))
    report = FuzzReport(by_rule={name: 0 for name in FUZZ_RULES})
    while report.instances < n:
        report.attempts += 1
        if report.attempts > 200 * n:
            raise RuntimeError("fuzzer cannot generate enough accepted instances")
        m = models[r.randrange(len(models))]
        name = FUZZ_RULES[r.randrange(len(FUZZ_RULES))]
        prem = _premises(name, r, m)
        if prem is None or any(p is None for p in prem):
            continue
        if not all(holds(p, m, grid) for p in prem):
            # construction guarantees truth; a failure here is a harness bug
            raise AssertionError(f"premise generator produced a false premise for {name}: {prem}")
        args = _args(name, r)
        try:
            j = overrides.get(name, lookup_rule(name).fn)(prem, args, env)
        except RuleError:
            continue
        report.instances += 1
        report.by_rule[name] += 1
        if not holds(j, m, grid):
            report.violations.append({"rule": name, "premises": [str(p) for p in prem],
                                      "args": [str(a) for a in args], "conclusion": str(j)})
    return report


# --- mutation fuzz ---------------------------------------------------------------------


@dataclass
class MutationReport:
    mutants: int = 0
    tried: int = 0
    neutral: int = 0
    accepted_by_verifier: list = field(default_factory=list)
    kinds: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.mutants > 0 and not self.accepted_by_verifier


def _mutate(cert: dict, r: random.Random) -> tuple[str, dict] | None:
    out = copy.deepcopy(cert)
    steps = out["steps"]
    i = r.randrange(len(steps))
    st = steps[i]
    kind = r.choice(["rule", "premise", "arg"])
    if kind == "rule":
        st["rule"] = r.choice([x.name for x in RULES if x.name != st["rule"]])
    elif kind == "premise":
        if not st["premises"]:
            return None
        pool = list(out["axioms"]) + [s["id"] for s in steps[:i]]
        k = r.randrange(len(st["premises"]))
        choices = [p for p in pool if p != st["premises"][k]]
        if not choices:
            return None
        st["premises"][k] = r.choice(choices)
    else:
        if not st["args"]:
            return None
        k = r.randrange(len(st["args"]))
        a = st["args"][k]
        if isinstance(a, int):
            st["args"][k] = a + r.choice([-2, -1, 1, 2])
        elif a in FLIP_REL:
            st["args"][k] = r.choice([x for x in FLIP_REL if x != a])
        else:
            w = Word(_parse(a).blocks + _rand_word(r, 2).blocks)
            if str(w) == a:
                return None
            st["args"][k] = str(w)
    return kind, out


def _parse(text: str) -> Word:
    from ..words import parse_word
    return parse_word(text)


def _kernel_rejects(cert: dict) -> bool:
    script, context, _ = certificate_from_json(cert)
    return not check_script(script, context).is_bot


def fuzz_mutations(certificates: list[dict], n: int = 1000, seed: int = 0) -> MutationReport:
    """Collect ``n`` kernel-rejected mutants and check that the verifier rejects each."""
    r = random.Random(seed)
    report = MutationReport()
    base = [json.loads(json.dumps(c)) for c in certificates]
    for c in base:
        ok, reason = verify(c)
        if not ok:
            raise ValueError(f"seed certificate is not valid: {reason}")
    while report.mutants < n:
        report.tried += 1
        if report.tried > 50 * n:
            raise RuntimeError("mutation fuzzer cannot find enough breaking mutants")
        got = _mutate(base[r.randrange(len(base))], r)
        if got is None:
            continue
        kind, mutant = got
        try:
            rejected = _kernel_rejects(mutant)
        except (ValueError, KeyError):
            rejected = True
        if not rejected:
            report.neutral += 1
            continue
        report.mutants += 1
        report.kinds[kind] = report.kinds.get(kind, 0) + 1
        ok, _ = verify(mutant)
        if ok:
            report.accepted_by_verifier.append(mutant)
    return report


def default_seed_certificates() -> list[dict]:
    from .scripts import builtin_script_fixedpoint, builtin_script_main, main_script, mirror

    mirrored = check_script(mirror(main_script(3, 9, 1)),
                            ProverContext.for_surgery(3, 9, 1, sign=-1))
    return [builtin_script_main((3, 9, 1)).to_json(),
            builtin_script_main((4, 23, 2)).to_json(),
            mirrored.to_json(),
            builtin_script_fixedpoint(3).to_json()]


__all__ = ["PLMap", "random_map", "random_model", "Model", "holds", "fuzz_rules", "FuzzReport",
           "fuzz_mutations", "MutationReport", "default_seed_certificates"]
