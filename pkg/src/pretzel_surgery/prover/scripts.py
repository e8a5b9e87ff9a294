"""Shipped proof scripts and the order-reversal mirror.

``main_script`` derives a contradiction from a left order on the surgered
group whenever p/q >= 2s+3. ``fixedpoint_script`` shows that k has no
fixed point. Both are generated per concrete s (the inductions are
unrolled), then checked by the kernel.
"""

from __future__ import annotations

from dataclasses import replace

from ..words import IDENTITY, SurgeryContext, Word, longitude, parse_word
from .judgments import FLIP_REL
from .kernel import Certificate, ProofScript, ProverContext, Step, check_script


def W(text: str) -> Word:
    return parse_word(text)


def c_(n: int) -> Word:
    return Word.gen("c", n)


def l_(n: int) -> Word:
    return Word.gen("l", n)


class ScriptBuilder:
    def __init__(self, context=None, sign: int = 1):
        self.script = ProofScript(context, sign)

    def axiom(self, *names: str) -> None:
        self.script.axioms.extend(names)

    def step(self, sid: str, rule: str, *items) -> str:
        premises = tuple(x for x in items if isinstance(x, str) and x not in FLIP_REL)
        args = tuple(x for x in items if not (isinstance(x, str) and x not in FLIP_REL))
        self.script.steps.append(Step(sid, rule, premises, args))
        return sid

    def done(self, qed: str) -> ProofScript:
        self.script.qed = qed
        return self.script


def _lemma_clc(b: ScriptBuilder, s: int) -> str:
    """POS(c^-1 l^-1 c^-1 l c l), i.e. clc.x < lcl.x for all x."""
    w = W(f"l c l^{s} c l")
    b.step("w_conj", "conj", "pos_c", w.inverse())
    b.step("w_rel", "relins", "ax_R", w.inverse() * c_(1) * w, 2 * s + 6, 0, -1)
    return b.step("clc_lt_lcl", "eqsubst", "w_conj", "w_rel")


def main_script(s: int, p: int, q: int, sign: int = 1) -> ProofScript:
    ctx = SurgeryContext(s, p, q)
    b = ScriptBuilder((s, p, q), sign)
    b.axiom("ax_k", "ax_c", "ax_L", "ax_R")

    # k^q = c, so c moves every point the same way k does
    b.step("pos_kq", "pow", "ax_k", q)
    b.step("kq_eq_c", "sym", "ax_c")
    b.step("pos_c", "eqsubst", "pos_kq", "kq_eq_c")

    clc = _lemma_clc(b, s)

    # c^s l c < l c l^s: step j compares c^(s-j) l c l^j with c^(s-1-j) l c l^(j+1)
    acc = None
    for j in range(s):
        sid = b.step(f"A{j}", "conj", clc, l_(-j))
        acc = sid if acc is None else b.step(f"A{j}_acc", "mul", acc, sid)
    chain_a = acc
    # c l c^s < l^s c l: step j compares l^j (clc) c^(s-1-j) with l^j (lcl) c^(s-1-j)
    acc = None
    for j in range(s):
        sid = b.step(f"B{j}", "conj", clc, c_(-(s - 1 - j)))
        acc = sid if acc is None else b.step(f"B{j}_acc", "mul", acc, sid)
    chain_b = acc

    # k^m c.x <= c.x with m = -p + (2s+3) q; this is the only arithmetic side condition
    m = -p + (2 * s + 3) * q
    b.step("kpow", "kpow", "ax_k", m, -1)
    b.step("kpow_inv", "inv", "kpow")
    b.step("kpow_conj", "conj", "kpow_inv", c_(-1))
    # k^m c = c^(s-2) L c^(s+6) as words
    b.step("e_c1", "eqpow", "ax_c", s - 2)
    b.step("e_c2", "eqpow", "ax_c", s + 5)
    b.step("e_m1", "eqmul", "e_c1", "ax_L")
    b.step("e_m2", "eqmul", "e_m1", "e_c2")
    b.step("e_m3", "cong", "e_m2", IDENTITY, c_(1))
    b.step("e_m4", "eqpow", "e_m3", -1)
    b.step("e_m5", "cong", "e_m4", IDENTITY, c_(1))
    b.step("e_m6", "sym", "e_m5")
    le_c = b.step("big_le_c", "eqsubst", "kpow_conj", "e_m6")

    # c^-s (lcl^s) c (l^s cl) c^-(s+3) > c^-s (c^s lc) c (c l c^s) c^-(s+3) = l c^3 l c^-3
    q1 = W(f"c l^{s} c l c^-{s + 3}")
    b.step("G1", "conj", chain_a, q1.inverse())
    b.step("G2", "conj", chain_b, c_(s + 3))
    b.step("G12", "mul", "G2", "G1")
    b.step("V1_lt_c", "mul", "G12", le_c)
    # l.x < (l c^2 l^-1 c l c^-2).x < (l c^3 l c^-3).x
    b.step("H1", "conj", "pos_c", W("c^2 l^-1"))
    b.step("H2", "conj", clc, c_(3))
    b.step("H12", "mul", "H1", "H2")
    l_lt_c = b.step("l_lt_c", "mul", "H12", "V1_lt_c")

    # cl.x < lclc^-1.x < lc.x < c^-1 lcl.x < cl.x
    b.step("F1", "conj", clc, c_(1))
    b.step("F2", "conj", l_lt_c, c_(1))
    b.step("F3", "conj", clc, IDENTITY)
    b.step("F4", "conj", l_lt_c, W("l^-1 c^-1"))
    b.step("F12", "mul", "F1", "F2")
    b.step("F123", "mul", "F12", "F3")
    b.step("cycle", "mul", "F123", "F4")
    b.step("refl1", "refl", IDENTITY)
    b.step("bot", "contra", "cycle", "refl1")
    return b.done("bot")


def _fixed_branch(b: ScriptBuilder, s: int, tag: str, rel: str) -> str:
    """Close the branch x0 <rel> l.x0 by walking along the longitude."""
    n = 2 * s - 2
    h = b.step(f"{tag}_hyp", "assume", IDENTITY, rel, l_(1))
    # x0 rel l^j x0 for j = 1..s
    pw = h
    for j in range(1, s):
        b.step(f"{tag}_lp{j}", "apply", h, l_(j))
        pw = b.step(f"{tag}_l{j + 1}", "pttrans", pw, f"{tag}_lp{j}")
    ls = pw
    prefix_l = W(f"c^-{n} l")
    prefix_ls = W(f"c^-{n} l c l^{s}")
    prefix_ls2 = W(f"c^-{n} l c l^{s} c l^{s}")
    prefix_full = W(f"c^-{n} l c l^{s} c l^{s} c l")
    links = [
        b.step(f"{tag}_1", "apply", h, c_(-n)),
        b.step(f"{tag}_2", "apply", "one_eq_c", prefix_l),
        b.step(f"{tag}_3", "apply", ls, prefix_l * c_(1)),
        b.step(f"{tag}_4", "apply", "one_eq_c", prefix_ls),
        b.step(f"{tag}_5", "apply", ls, prefix_ls * c_(1)),
        b.step(f"{tag}_6", "apply", "one_eq_c", prefix_ls2),
        b.step(f"{tag}_7", "apply", h, prefix_ls2 * c_(1)),
        b.step(f"{tag}_8", "apply", "one_eq_cbar_tail", prefix_full),
    ]
    chain = b.step(f"{tag}_t0", "pttrans", "one_eq_cbar_head", links[0])
    for i, link in enumerate(links[1:], start=1):
        chain = b.step(f"{tag}_t{i}", "pttrans", chain, link)
    # the far end is the longitude, which is k^-p, which fixes x0
    b.step(f"{tag}_L", "pteqsubst", chain, "ax_L", 1)
    b.step(f"{tag}_close", "pttrans", f"{tag}_L", "kp_fix")
    return b.step(f"{tag}_bot", "contra", f"{tag}_close")


def fixedpoint_script(s: int, p: int | None = None, q: int | None = None,
                      sign: int = 1, globalfix: bool = True) -> ProofScript:
    """k.x0 = x0 is refuted; the x0 > l.x0 branch is the mirror of x0 < l.x0."""
    if p is None:
        p, q = 2 * s + 3, 1
    q = 1 if q is None else q
    SurgeryContext(s, p, q)
    b = ScriptBuilder((s, p, q), sign)
    b.axiom("ax_c", "ax_L", "fixk")
    if globalfix:
        b.axiom("globalfix")
    # c.x0 = k^q.x0 = x0
    b.step("kq_fix", "ptpow", "fixk", q)
    b.step("kq_eq_c", "sym", "ax_c")
    b.step("c_fix", "pteqsubst", "kq_fix", "kq_eq_c", 0)
    b.step("one_eq_c", "ptsym", "c_fix")
    b.step("cbar_head", "ptpow", "c_fix", -(2 * s - 2))
    b.step("one_eq_cbar_head", "ptsym", "cbar_head")
    b.step("cbar_tail", "ptpow", "c_fix", -(2 * s + 9))
    b.step("one_eq_cbar_tail", "ptsym", "cbar_tail")
    b.step("kp_fix", "ptpow", "fixk", -p)

    lt = _fixed_branch(b, s, "lt", "<")
    # mirror image of the "<" branch
    start = len(b.script.steps)
    _fixed_branch(b, s, "gtm", "<")
    mirrored = mirror_steps(b.script.steps[start:], rename=lambda x: x.replace("gtm_", "gt_"))
    del b.script.steps[start:]
    b.script.steps.extend(mirrored)
    gt = "gt_bot"

    b.step("eq_hyp", "assume", IDENTITY, "=", l_(1))
    b.step("l_fix", "ptsym", "eq_hyp")
    eqb = b.step("eq_bot", "globalfix", "c_fix", "l_fix")
    b.step("bot", "cases", lt, eqb, gt)
    return b.done("bot")


# --- mirror --------------------------------------------------------------------------


def mirror_steps(steps, rename=lambda x: x):
    out = []
    for st in steps:
        args = tuple(FLIP_REL[a] if isinstance(a, str) else a for a in st.args)
        out.append(replace(st, id=rename(st.id), premises=tuple(rename(p) for p in st.premises),
                           args=args))
    return out


def mirror(script: ProofScript) -> ProofScript:
    """Reverse the order of the line: POS <-> NEG, NNEG <-> NPOS, < <-> >."""
    return ProofScript(script.context, -script.sign, list(script.axioms),
                       mirror_steps(script.steps), script.qed)


# --- certificates ---------------------------------------------------------------------


def builtin_script_main(ctx: SurgeryContext | tuple, sign: int = 1) -> Certificate:
    s, p, q = (ctx.s, ctx.p, ctx.q) if isinstance(ctx, SurgeryContext) else ctx
    script = main_script(s, p, q, sign)
    return check_script(script, ProverContext.for_surgery(s, p, q, sign))


def builtin_script_fixedpoint(s: int, p: int | None = None, q: int | None = None,
                              globalfix: bool = True) -> Certificate:
    script = fixedpoint_script(s, p, q, globalfix=globalfix)
    return check_script(script, script.prover_context())


__all__ = [
    "main_script", "fixedpoint_script", "mirror", "mirror_steps",
    "builtin_script_main", "builtin_script_fixedpoint", "longitude",
]
