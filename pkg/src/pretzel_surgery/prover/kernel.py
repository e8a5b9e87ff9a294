"""The rule kernel: contexts, scripts, certificates and the checker.

Rules are purely syntactic. Each one takes premise judgments plus word or
integer arguments and either returns the conclusion or raises
:class:`RuleError`. Every rule is sign-generic, so a derivation under
POS(k) mirrors to one under NEG(k) by swapping kinds and relations.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence, Union

from ..words import (IDENTITY, K, SurgeryContext, Word, insert_relator, longitude,
                     meridian, relator)
from .judgments import (BOT, FLIP_REL, MIRROR_KIND, SIGN_KINDS, Hypothesis, Judgment, eq,
                        mirror_judgment, pt, sign_kind)

log = logging.getLogger(__name__)

Arg = Union[Word, int, str]


class RuleError(Exception):
    """A rule was applied outside its side conditions."""


class ScriptError(Exception):
    """A step failed to check; carries where and why."""

    def __init__(self, index: int, step_id: str, rule: str, reason: str):
        super().__init__(f"step {index} ({step_id}, {rule}): {reason}")
        self.index = index
        self.step_id = step_id
        self.rule = rule
        self.reason = reason


# --- contexts ---------------------------------------------------------------

GLOBALFIX = "globalfix"


@dataclass(frozen=True)
class ProverContext:
    """Axioms available to a script.

    For a surgery context the axioms are ``ax_k`` (POS k, or NEG k when
    ``sign`` is -1), ``ax_c`` (c = k^q), ``ax_L`` (L = k^-p), ``ax_R``
    (relator = 1), ``fixk`` (k.x0 = x0) and the rule-enabling ``globalfix``.
    """

    surgery: SurgeryContext | None = None
    sign: int = 1
    extra: tuple[tuple[str, Judgment | None], ...] = ()
    generators: tuple[str, ...] = ("c", "l")

    @classmethod
    def for_surgery(cls, s: int, p: int, q: int, sign: int = 1) -> ProverContext:
        return cls(SurgeryContext(s, p, q), sign)

    @classmethod
    def custom(cls, axioms: dict[str, Judgment | None],
               generators: Sequence[str] = ("c", "l")) -> ProverContext:
        return cls(None, 1, tuple(axioms.items()), tuple(generators))

    def axioms(self) -> dict[str, Judgment | None]:
        out: dict[str, Judgment | None] = {}
        if self.surgery is not None:
            ctx = self.surgery
            kind = "POS" if self.sign > 0 else "NEG"
            out["ax_k"] = Judgment(kind, subject=K)
            out["ax_c"] = eq(meridian(), K ** ctx.q)
            out["ax_L"] = eq(longitude(ctx.s), K ** (-ctx.p))
            out["ax_R"] = eq(relator(ctx.s), IDENTITY)
            out["fixk"] = pt(K, "=", IDENTITY)
            out[GLOBALFIX] = None
        out.update(self.extra)
        return out

    def mirrored(self) -> ProverContext:
        extra = tuple((n, mirror_judgment(j) if j else None) for n, j in self.extra)
        return replace(self, sign=-self.sign, extra=extra)

    def to_json(self) -> dict:
        out: dict = {"sign": self.sign, "generators": list(self.generators)}
        if self.surgery is not None:
            out.update(s=self.surgery.s, p=self.surgery.p, q=self.surgery.q)
        if self.extra:
            out["extra"] = {n: (j.to_json() if j else None) for n, j in self.extra}
        return out


# --- scripts and certificates ------------------------------------------------


@dataclass(frozen=True)
class Step:
    id: str
    rule: str
    premises: tuple[str, ...] = ()
    args: tuple[Arg, ...] = ()
    line: int = 0
    column: int = 0


@dataclass
class ProofScript:
    context: tuple[int, int, int] | None = None
    sign: int = 1
    axioms: list[str] = field(default_factory=list)
    steps: list[Step] = field(default_factory=list)
    qed: str | None = None

    def prover_context(self) -> ProverContext:
        if self.context is None:
            raise ValueError("script has no context line")
        return ProverContext.for_surgery(*self.context, sign=self.sign)


@dataclass
class CertStep:
    id: str
    rule: str
    premises: tuple[str, ...]
    args: tuple[Arg, ...]
    judgment: Judgment | None
    verified: bool


def arg_to_json(a: Arg):
    return str(a) if isinstance(a, Word) else a


@dataclass
class Certificate:
    context: ProverContext
    axioms: list[str]
    steps: list[CertStep]
    qed: str | None = None
    failure: ScriptError | None = None

    @property
    def final(self) -> Judgment | None:
        if not self.steps or self.failure is not None:
            return None
        target = self.qed or self.steps[-1].id
        for st in self.steps:
            if st.id == target:
                return st.judgment
        return None

    @property
    def is_bot(self) -> bool:
        """Complete: every step verified and the conclusion is BOT with no open case."""
        j = self.final
        return (self.failure is None and j is not None and j.kind == "BOT"
                and not j.branch and all(st.verified for st in self.steps))

    @property
    def result(self) -> str:
        return "BOT" if self.is_bot else "incomplete"

    def to_json(self) -> dict:
        out = {
            "context": self.context.to_json(),
            "axioms": list(self.axioms),
            "result": self.result,
            "qed": self.qed,
            "steps": [
                {
                    "id": st.id,
                    "rule": st.rule,
                    "premises": list(st.premises),
                    "args": [arg_to_json(a) for a in st.args],
                    "judgment": st.judgment.to_json() if st.judgment else None,
                    "verified": st.verified,
                }
                for st in self.steps
            ],
        }
        if self.failure is not None:
            f = self.failure
            out["failure"] = {"index": f.index, "id": f.step_id, "rule": f.rule,
                              "reason": f.reason}
        return out


# --- rule helpers -------------------------------------------------------------


def _merge(premises: Sequence[Judgment]) -> tuple[Hypothesis, ...]:
    """Deepest hypothesis stack; the others must be prefixes of it."""
    best: tuple[Hypothesis, ...] = ()
    for j in premises:
        if len(j.branch) > len(best):
            best = j.branch
    for j in premises:
        if best[: len(j.branch)] != j.branch:
            raise RuleError("premises come from incompatible case branches")
    return best


def _need(premises, n: int, kinds: Sequence[Sequence[str]] | None = None):
    if len(premises) != n:
        raise RuleError(f"expected {n} premise(s), got {len(premises)}")
    if kinds:
        for i, (j, allowed) in enumerate(zip(premises, kinds)):
            if j.kind not in allowed:
                raise RuleError(f"premise {i + 1} is {j.kind}, expected one of {'/'.join(allowed)}")


def _args(args, *types):
    if len(args) != len(types):
        raise RuleError(f"expected {len(types)} argument(s), got {len(args)}")
    for i, (a, t) in enumerate(zip(args, types)):
        if t is int and (not isinstance(a, int) or isinstance(a, bool)):
            raise RuleError(f"argument {i + 1} must be an integer")
        if t is Word and not isinstance(a, Word):
            raise RuleError(f"argument {i + 1} must be a word")
        if t is str and a not in FLIP_REL:
            raise RuleError(f"argument {i + 1} must be a relation")
    return args


def _signed(kind: str, w: Word, branch) -> Judgment:
    return Judgment(kind, subject=w, branch=branch)


# --- sign rules -----------------------------------------------------------------


def rule_pow(prem, args, ctx):
    _need(prem, 1, [SIGN_KINDS])
    (n,) = _args(args, int)
    j = prem[0]
    floor = 1 if j.strict else 0
    if n < floor:
        raise RuleError(f"power n = {n} must be >= {floor} for {j.kind}")
    return _signed(j.kind, j.subject ** n, j.branch)


def rule_mul(prem, args, ctx):
    _need(prem, 2, [SIGN_KINDS, SIGN_KINDS])
    _args(args)
    a, b = prem
    if a.polarity != b.polarity:
        raise RuleError(f"cannot compose {a.kind} with {b.kind}")
    kind = sign_kind(a.polarity, a.strict or b.strict)
    return _signed(kind, a.subject * b.subject, _merge(prem))


def rule_conj(prem, args, ctx):
    _need(prem, 1, [SIGN_KINDS])
    (w,) = _args(args, Word)
    j = prem[0]
    return _signed(j.kind, w * j.subject * w.inverse(), j.branch)


def rule_inv(prem, args, ctx):
    _need(prem, 1, [SIGN_KINDS])
    _args(args)
    j = prem[0]
    return _signed(MIRROR_KIND[j.kind], j.subject.inverse(), j.branch)


def rule_eqsubst(prem, args, ctx):
    _need(prem, 2, [SIGN_KINDS, ("EQ",)])
    _args(args)
    j, e = prem
    if j.subject != e.left:
        raise RuleError(f"subject {j.subject} does not match left side {e.left}")
    return _signed(j.kind, e.right, _merge(prem))


def rule_kpow_sign(prem, args, ctx):
    _need(prem, 1, [("POS", "NEG")])
    m, direction = _args(args, int, int)
    j = prem[0]
    if direction == -1:
        if m > 0:
            raise RuleError(f"side condition m <= 0 fails: m = {m} > 0")
        kind = sign_kind(-j.polarity, False)
    elif direction == 1:
        if m < 0:
            raise RuleError(f"side condition m >= 0 fails: m = {m} < 0")
        kind = sign_kind(j.polarity, False)
    else:
        raise RuleError("direction must be -1 or +1")
    return _signed(kind, j.subject ** m, j.branch)


def rule_contra(prem, args, ctx):
    _args(args)
    if len(prem) == 1:
        j = prem[0]
        if j.kind == "PT" and j.rel != "=" and j.left == j.right:
            return BOT.with_branch(j.branch)
        raise RuleError("single premise must be a strict point fact between equal words")
    _need(prem, 2)
    a, b = prem
    if a.kind in SIGN_KINDS and b.kind in SIGN_KINDS:
        strict = a if a.strict else b
        other = b if strict is a else a
        if (strict.strict and not other.strict and strict.polarity != other.polarity
                and strict.subject == other.subject):
            return BOT.with_branch(_merge(prem))
        raise RuleError(f"{a} and {b} are not contradictory")
    if a.kind in ("POS", "NEG") and b.kind == "EQ":
        if {b.left, b.right} == {a.subject, IDENTITY} or (a.subject.is_identity()
                                                         and b.left == b.right == IDENTITY):
            return BOT.with_branch(_merge(prem))
        raise RuleError(f"{b} does not identify {a.subject} with 1")
    raise RuleError("R-CONTRA needs (strict sign, opposite non-strict sign) or (strict sign, EQ with 1)")


# --- equality rules -----------------------------------------------------------------


def rule_eq_refl(prem, args, ctx):
    _need(prem, 0)
    (w,) = _args(args, Word)
    return eq(w, w)


def rule_eq_sym(prem, args, ctx):
    _need(prem, 1, [("EQ",)])
    _args(args)
    e = prem[0]
    return Judgment("EQ", left=e.right, right=e.left, branch=e.branch)


def rule_eq_trans(prem, args, ctx):
    _need(prem, 2, [("EQ",), ("EQ",)])
    _args(args)
    a, b = prem
    if a.right != b.left:
        raise RuleError(f"middle words differ: {a.right} vs {b.left}")
    return Judgment("EQ", left=a.left, right=b.right, branch=_merge(prem))


def rule_eq_cong(prem, args, ctx):
    _need(prem, 1, [("EQ",)])
    a, b = _args(args, Word, Word)
    e = prem[0]
    return Judgment("EQ", left=a * e.left * b, right=a * e.right * b, branch=e.branch)


def rule_eq_pow(prem, args, ctx):
    _need(prem, 1, [("EQ",)])
    (n,) = _args(args, int)
    e = prem[0]
    return Judgment("EQ", left=e.left ** n, right=e.right ** n, branch=e.branch)


def rule_eq_mul(prem, args, ctx):
    _need(prem, 2, [("EQ",), ("EQ",)])
    _args(args)
    a, b = prem
    return Judgment("EQ", left=a.left * b.left, right=a.right * b.right, branch=_merge(prem))


def rule_eq_rel(prem, args, ctx):
    _need(prem, 1, [("EQ",)])
    w, position, shift, direction = _args(args, Word, int, int, int)
    e = prem[0]
    if not e.right.is_identity() or e.left.is_identity():
        raise RuleError("premise must be a relator equation R = 1")
    try:
        out = insert_relator(w, e.left, position, shift, direction)
    except ValueError as exc:
        raise RuleError(str(exc)) from None
    return Judgment("EQ", left=w, right=out, branch=e.branch)


# --- pointwise rules -------------------------------------------------------------------


def rule_pt_assume(prem, args, ctx):
    if len(prem) > 1:
        raise RuleError("R-PT-ASSUME takes at most one premise (the parent branch)")
    u, rel, v = _args(args, Word, str, Word)
    parent = prem[0].branch if prem else ()
    return pt(u, rel, v).with_branch(parent + ((u, rel, v),))


def rule_pt_cases(prem, args, ctx):
    _need(prem, 3, [("BOT",)] * 3)
    _args(args)
    heads = []
    for j in prem:
        if not j.branch:
            raise RuleError("case premise has no open hypothesis")
        heads.append((j.branch[:-1], j.branch[-1]))
    parents = {h[0] for h in heads}
    if len(parents) != 1:
        raise RuleError("case premises have different parent branches")
    sides = {(h[1][0], h[1][2]) for h in heads}
    rels = sorted(h[1][1] for h in heads)
    if len(sides) != 1 or rels != sorted(FLIP_REL):
        raise RuleError("premises do not cover the trichotomy <, =, > of one comparison")
    return BOT.with_branch(parents.pop())


def rule_pt_apply(prem, args, ctx):
    _need(prem, 1, [("PT",)])
    (w,) = _args(args, Word)
    j = prem[0]
    return pt(w * j.left, j.rel, w * j.right).with_branch(j.branch)


_COMBINE = {
    ("=", "="): "=", ("=", "<"): "<", ("<", "="): "<", ("<", "<"): "<",
    ("=", ">"): ">", (">", "="): ">", (">", ">"): ">",
}


def rule_pt_trans(prem, args, ctx):
    _need(prem, 2, [("PT",), ("PT",)])
    _args(args)
    a, b = prem
    if a.right != b.left:
        raise RuleError(f"middle words differ: {a.right} vs {b.left}")
    rel = _COMBINE.get((a.rel, b.rel))
    if rel is None:
        raise RuleError(f"cannot chain {a.rel} with {b.rel}")
    return pt(a.left, rel, b.right).with_branch(_merge(prem))


def rule_pt_sym(prem, args, ctx):
    _need(prem, 1, [("PT",)])
    _args(args)
    j = prem[0]
    return pt(j.right, FLIP_REL[j.rel], j.left).with_branch(j.branch)


def rule_pt_pow(prem, args, ctx):
    _need(prem, 1, [("PT",)])
    (n,) = _args(args, int)
    j = prem[0]
    if j.rel != "=" or not j.right.is_identity():
        raise RuleError("premise must be a fixed-point fact u.x0 = x0")
    return pt(j.left ** n, "=", IDENTITY).with_branch(j.branch)


def rule_pt_eqsubst(prem, args, ctx):
    _need(prem, 2, [("PT",), ("EQ",)])
    (side,) = _args(args, int)
    j, e = prem
    if side == 0:
        if j.left != e.left:
            raise RuleError(f"left side {j.left} does not match {e.left}")
        out = pt(e.right, j.rel, j.right)
    elif side == 1:
        if j.right != e.left:
            raise RuleError(f"right side {j.right} does not match {e.left}")
        out = pt(j.left, j.rel, e.right)
    else:
        raise RuleError("side must be 0 (left) or 1 (right)")
    return out.with_branch(_merge(prem))


def rule_pt_globalfix(prem, args, ctx):
    _args(args)
    if not ctx.globalfix:
        raise RuleError("the global-fixed-point axiom is not in scope")
    fixed = set()
    for j in prem:
        if j.kind != "PT" or j.rel != "=":
            raise RuleError("premises must be point equalities")
        if j.right.is_identity():
            fixed.add(j.left)
        elif j.left.is_identity():
            fixed.add(j.right)
        else:
            raise RuleError("premises must have the form g.x0 = x0")
    missing = [g for g in ctx.generators if Word.gen(g) not in fixed]
    if missing:
        raise RuleError(f"no fixed-point fact for generator(s) {', '.join(missing)}")
    return BOT.with_branch(_merge(prem))


@dataclass(frozen=True)
class RuleSpec:
    name: str
    alias: str
    fn: Callable


RULES: tuple[RuleSpec, ...] = (
    RuleSpec("R-POW", "pow", rule_pow),
    RuleSpec("R-MUL", "mul", rule_mul),
    RuleSpec("R-CONJ", "conj", rule_conj),
    RuleSpec("R-INV", "inv", rule_inv),
    RuleSpec("R-EQSUBST", "eqsubst", rule_eqsubst),
    RuleSpec("R-KPOW-SIGN", "kpow", rule_kpow_sign),
    RuleSpec("R-CONTRA", "contra", rule_contra),
    RuleSpec("R-EQ-REFL", "refl", rule_eq_refl),
    RuleSpec("R-EQ-SYM", "sym", rule_eq_sym),
    RuleSpec("R-EQ-TRANS", "trans", rule_eq_trans),
    RuleSpec("R-EQ-CONG", "cong", rule_eq_cong),
    RuleSpec("R-EQ-POW", "eqpow", rule_eq_pow),
    RuleSpec("R-EQ-MUL", "eqmul", rule_eq_mul),
    RuleSpec("R-EQ-REL", "relins", rule_eq_rel),
    RuleSpec("R-PT-ASSUME", "assume", rule_pt_assume),
    RuleSpec("R-PT-CASES", "cases", rule_pt_cases),
    RuleSpec("R-PT-APPLY", "apply", rule_pt_apply),
    RuleSpec("R-PT-TRANS", "pttrans", rule_pt_trans),
    RuleSpec("R-PT-SYM", "ptsym", rule_pt_sym),
    RuleSpec("R-PT-POW", "ptpow", rule_pt_pow),
    RuleSpec("R-PT-EQSUBST", "pteqsubst", rule_pt_eqsubst),
    RuleSpec("R-PT-GLOBALFIX", "globalfix", rule_pt_globalfix),
)

_BY_NAME = {r.name.lower(): r for r in RULES} | {r.alias: r for r in RULES}


def lookup_rule(name: str) -> RuleSpec:
    try:
        return _BY_NAME[name.lower()]
    except KeyError:
        raise KeyError(f"unknown rule {name!r}") from None


@dataclass(frozen=True)
class _RuleEnv:
    globalfix: bool
    generators: tuple[str, ...]


def apply_rule(rule: str, premises: Sequence[Judgment], args: Sequence[Arg],
               context: ProverContext, globalfix: bool = True) -> Judgment:
    """Apply one rule; raises RuleError on any violated side condition."""
    spec = lookup_rule(rule)
    env = _RuleEnv(globalfix and GLOBALFIX in context.axioms(), context.generators)
    return spec.fn(tuple(premises), tuple(args), env)


# --- checking ----------------------------------------------------------------------------


def check_script(script: ProofScript, context: ProverContext | None = None,
                 claimed: Sequence[Judgment | None] | None = None) -> Certificate:
    """Re-verify every step; stop at the first invalid one.

    ``claimed`` optionally lists the judgment each step is supposed to
    produce (as recorded in a certificate); a mismatch is a failure.
    """
    if context is None:
        context = script.prover_context()
    elif script.context is not None:
        sc = script.prover_context()
        if sc.surgery != context.surgery or sc.sign != context.sign:
            raise ValueError("script context line disagrees with the supplied context")
    available = context.axioms()
    known: dict[str, Judgment | None] = {}
    steps: list[CertStep] = []
    failure = None

    def fail(i, st, reason):
        try:
            name = lookup_rule(st.rule).name
        except KeyError:
            name = st.rule
        return ScriptError(i, st.id, name, reason)

    for name in script.axioms:
        if name not in available:
            failure = ScriptError(-1, name, "axiom", f"unknown axiom {name!r}")
            break
        known[name] = available[name]

    globalfix = GLOBALFIX in script.axioms
    for i, st in enumerate(script.steps):
        try:
            rule_name = lookup_rule(st.rule).name
        except KeyError:
            rule_name = st.rule
        if failure is not None:
            steps.append(CertStep(st.id, rule_name, st.premises, st.args, None, False))
            continue
        try:
            spec = lookup_rule(st.rule)
            if st.id in known:
                raise RuleError(f"identifier {st.id!r} already defined")
            prem = []
            for pid in st.premises:
                if pid not in known:
                    raise RuleError(f"unknown premise {pid!r}")
                if known[pid] is None:
                    raise RuleError(f"{pid!r} is not a judgment")
                prem.append(known[pid])
            env = _RuleEnv(globalfix, context.generators)
            j = spec.fn(tuple(prem), tuple(st.args), env)
            if claimed is not None and i < len(claimed) and claimed[i] is not None \
                    and claimed[i] != j:
                raise RuleError(f"recorded judgment {claimed[i]} differs from derived {j}")
        except (RuleError, KeyError) as exc:
            failure = fail(i, st, str(exc).strip("'\""))
            log.debug("check failed: %s", failure)
            steps.append(CertStep(st.id, rule_name, st.premises, st.args, None, False))
            continue
        known[st.id] = j
        steps.append(CertStep(st.id, spec.name, st.premises, st.args, j, True))

    if failure is None and script.qed is not None and script.qed not in known:
        failure = ScriptError(len(script.steps), script.qed, "qed", "qed names an unknown step")
    return Certificate(context, list(script.axioms), steps, script.qed, failure)


def certificate_from_json(data: dict) -> tuple[ProofScript, ProverContext, list[Judgment | None]]:
    """Turn certificate JSON back into a script, its context and the recorded judgments."""
    from ..words import parse_word

    c = data["context"]
    if "s" in c:
        context = ProverContext.for_surgery(c["s"], c["p"], c["q"], c.get("sign", 1))
    else:
        extra = {n: (Judgment.from_json(j) if j else None) for n, j in c.get("extra", {}).items()}
        context = ProverContext.custom(extra, c.get("generators", ("c", "l")))
    steps, claimed = [], []
    for st in data["steps"]:
        args = tuple(parse_word(a) if isinstance(a, str) and a not in FLIP_REL else a
                     for a in st["args"])
        steps.append(Step(st["id"], st["rule"], tuple(st["premises"]), args))
        claimed.append(Judgment.from_json(st["judgment"]) if st.get("judgment") else None)
    script = ProofScript(None, context.sign, list(data["axioms"]), steps, data.get("qed"))
    return script, context, claimed


def recheck_certificate(data: dict) -> Certificate:
    script, context, claimed = certificate_from_json(data)
    if any(j is None for j in claimed):
        cert = check_script(script, context, claimed)
        cert.failure = cert.failure or ScriptError(-1, "-", "-", "certificate has unrecorded judgments")
        return cert
    return check_script(script, context, claimed)
