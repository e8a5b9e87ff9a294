import pytest

from pretzel_surgery.prover import (BOT, Judgment, ProofScript, ProverContext, RuleError, Step,
                                    apply_rule, builtin_script_fixedpoint, builtin_script_main,
                                    check_script, eq, fixedpoint_script, main_script, mirror,
                                    neg, pos, pt)
from pretzel_surgery.prover.kernel import RULES, lookup_rule
from pretzel_surgery.prover.verifier import verify
from pretzel_surgery.words import IDENTITY, K, Word, parse_word, relator

W = parse_word
c, l = Word.gen("c"), Word.gen("l")
CTX = ProverContext.for_surgery(3, 9, 1)
NOFIX = ProverContext.custom({"dummy": None})


def J(kind, w):
    return Judgment(kind, subject=W(w) if isinstance(w, str) else w)


def run(rule, prem, args=(), ctx=CTX):
    return apply_rule(rule, prem, args, ctx)


def test_rule_table_complete():
    assert len(RULES) == 22
    names = {r.name for r in RULES}
    for core in ("R-POW", "R-MUL", "R-CONJ", "R-INV", "R-EQSUBST", "R-KPOW-SIGN", "R-CONTRA",
                 "R-PT-APPLY", "R-PT-CASES", "R-PT-GLOBALFIX"):
        assert core in names
    assert lookup_rule("pow").name == "R-POW"
    assert lookup_rule("r-kpow-sign").name == "R-KPOW-SIGN"
    with pytest.raises(KeyError):
        lookup_rule("nope")


# --- sign rules ---


def test_pow():
    assert run("R-POW", [pos(K)], [3]) == pos(K ** 3)
    assert run("R-POW", [J("NNEG", "c")], [0]) == J("NNEG", IDENTITY)
    with pytest.raises(RuleError):
        run("R-POW", [pos(K)], [0])
    with pytest.raises(RuleError):
        run("R-POW", [J("NNEG", "c")], [-1])
    with pytest.raises(RuleError):
        run("R-POW", [eq(c, c)], [2])


def test_mul():
    assert run("R-MUL", [pos(c), pos(c)]) == pos(c ** 2)
    assert run("R-MUL", [pos(c), J("NNEG", "l")]) == pos(c * l)
    assert run("R-MUL", [J("NNEG", "l"), pos(c)]) == pos(l * c)
    assert run("R-MUL", [J("NNEG", "l"), J("NNEG", "c")]) == J("NNEG", "l c")
    with pytest.raises(RuleError):
        run("R-MUL", [pos(c), neg(l)])
    with pytest.raises(RuleError):
        run("R-MUL", [pos(c)])


def test_conj():
    assert run("R-CONJ", [pos(c)], [l]) == pos(W("l c l^-1"))
    with pytest.raises(RuleError):
        run("R-CONJ", [pos(c)], [3])


def test_inv():
    assert run("R-INV", [pos(c * l)]) == neg(W("l^-1 c^-1"))
    assert run("R-INV", [J("NNEG", "c")]) == J("NPOS", "c^-1")
    assert run("R-INV", [neg(W("c^-1"))]) == pos(c)
    with pytest.raises(RuleError):
        run("R-INV", [eq(c, l)])


def test_pow_then_eqsubst_gives_pos_c():
    kq = run("R-POW", [pos(K)], [1])
    c_eq = run("R-EQ-SYM", [CTX.axioms()["ax_c"]])
    assert run("R-EQSUBST", [kq, c_eq]) == pos(c)
    with pytest.raises(RuleError):
        run("R-EQSUBST", [pos(l), c_eq])


def test_kpow_sign():
    # m = -p + (2s+3)q = 0 at the boundary slope
    assert run("R-KPOW-SIGN", [pos(K)], [0, -1]) == J("NPOS", IDENTITY)
    assert run("R-KPOW-SIGN", [pos(K)], [-4, -1]) == J("NPOS", "k^-4")
    assert run("R-KPOW-SIGN", [pos(K)], [2, 1]) == J("NNEG", "k^2")
    assert run("R-KPOW-SIGN", [neg(K)], [-2, -1]) == J("NNEG", "k^-2")
    with pytest.raises(RuleError, match="m <= 0"):
        run("R-KPOW-SIGN", [pos(K)], [1, -1])
    with pytest.raises(RuleError, match="m >= 0"):
        run("R-KPOW-SIGN", [pos(K)], [-1, 1])
    with pytest.raises(RuleError):
        run("R-KPOW-SIGN", [pos(K)], [0, 0])
    with pytest.raises(RuleError):
        run("R-KPOW-SIGN", [J("NNEG", "k")], [0, -1])


def test_contra():
    assert run("R-CONTRA", [pos(c), J("NPOS", "c")]) == BOT
    assert run("R-CONTRA", [J("NPOS", "c"), pos(c)]) == BOT
    assert run("R-CONTRA", [pos(c), eq(c, IDENTITY)]) == BOT
    assert run("R-CONTRA", [pt(c, "<", c)]) == BOT
    with pytest.raises(RuleError):
        run("R-CONTRA", [pos(c), J("NPOS", "l")])
    with pytest.raises(RuleError):
        run("R-CONTRA", [pos(c), J("NNEG", "c")])
    with pytest.raises(RuleError):
        run("R-CONTRA", [pos(c), eq(c, l)])
    with pytest.raises(RuleError):
        run("R-CONTRA", [pt(c, "=", c)])


# --- equality rules ---


def test_eq_rules():
    assert run("R-EQ-REFL", [], [c]) == eq(c, c)
    assert run("R-EQ-SYM", [eq(c, l)]) == eq(l, c)
    assert run("R-EQ-TRANS", [eq(c, l), eq(l, K)]) == eq(c, K)
    with pytest.raises(RuleError):
        run("R-EQ-TRANS", [eq(c, l), eq(c, K)])
    assert run("R-EQ-CONG", [eq(c, l)], [l, c]) == eq(W("l c^2"), W("l^2 c"))
    assert run("R-EQ-POW", [eq(c, K)], [-2]) == eq(W("c^-2"), W("k^-2"))
    assert run("R-EQ-MUL", [eq(c, K), eq(l, l)]) == eq(c * l, K * l)


def test_eq_rel():
    r = relator(3)
    out = run("R-EQ-REL", [eq(r, IDENTITY)], [IDENTITY, 0, 0, 1])
    assert out == eq(IDENTITY, r)
    with pytest.raises(RuleError):
        run("R-EQ-REL", [eq(r, c)], [IDENTITY, 0, 0, 1])
    with pytest.raises(RuleError):
        run("R-EQ-REL", [eq(r, IDENTITY)], [c, 5, 0, 1])


# --- pointwise rules ---


def test_pt_rules():
    a = pt(IDENTITY, "<", l)
    assert run("R-PT-APPLY", [a], [c]) == pt(c, "<", c * l)
    assert run("R-PT-SYM", [a]) == pt(l, ">", IDENTITY)
    assert run("R-PT-TRANS", [a, pt(l, "=", c)]) == pt(IDENTITY, "<", c)
    with pytest.raises(RuleError):
        run("R-PT-TRANS", [a, pt(l, ">", c)])
    assert run("R-PT-POW", [pt(K, "=", IDENTITY)], [-3]) == pt(W("k^-3"), "=", IDENTITY)
    with pytest.raises(RuleError):
        run("R-PT-POW", [a], [2])
    assert run("R-PT-EQSUBST", [a, eq(l, c)], [1]) == pt(IDENTITY, "<", c)
    assert run("R-PT-EQSUBST", [pt(K, "=", IDENTITY), eq(K, c)], [0]) == pt(c, "=", IDENTITY)
    with pytest.raises(RuleError):
        run("R-PT-EQSUBST", [a, eq(l, c)], [0])


def test_pt_cases():
    lt = run("R-PT-ASSUME", [], [IDENTITY, "<", l])
    eqh = run("R-PT-ASSUME", [], [IDENTITY, "=", l])
    gt = run("R-PT-ASSUME", [], [IDENTITY, ">", l])
    bots = [BOT.with_branch(h.branch) for h in (lt, eqh, gt)]
    assert run("R-PT-CASES", bots) == BOT
    with pytest.raises(RuleError):
        run("R-PT-CASES", [bots[0], bots[1], bots[1]])
    with pytest.raises(RuleError):
        run("R-PT-CASES", [BOT, bots[1], bots[2]])


def test_pt_globalfix():
    fix = [pt(c, "=", IDENTITY), pt(IDENTITY, "=", l)]
    assert run("R-PT-GLOBALFIX", fix) == BOT
    with pytest.raises(RuleError, match="generator"):
        run("R-PT-GLOBALFIX", fix[:1])
    with pytest.raises(RuleError, match="not in scope"):
        run("R-PT-GLOBALFIX", fix, ctx=NOFIX)


def test_branches_must_be_compatible():
    a = run("R-PT-ASSUME", [], [IDENTITY, "<", l])
    b = run("R-PT-ASSUME", [], [IDENTITY, ">", l])
    with pytest.raises(RuleError, match="incompatible"):
        run("R-PT-TRANS", [a, pt(l, "=", l).with_branch(b.branch)])


# --- scripts ---


def test_empty_script():
    cert = check_script(ProofScript(), CTX)
    assert cert.steps == [] and not cert.is_bot and cert.result == "incomplete"


def test_main_391():
    cert = builtin_script_main((3, 9, 1))
    assert cert.is_bot
    assert all(st.verified for st in cert.steps)
    assert verify(cert.to_json()) == (True, "ok")


def test_main_4_23_2():
    cert = builtin_script_main((4, 23, 2))
    assert cert.is_bot and verify(cert.to_json())[0]


def test_main_381_fails_at_kpow():
    cert = builtin_script_main((3, 8, 1))
    assert not cert.is_bot
    f = cert.failure
    assert f.rule == "R-KPOW-SIGN"
    assert "m = 1 > 0" in f.reason
    failing = [st for st in cert.steps if not st.verified]
    assert failing[0].id == f.step_id
    assert verify(cert.to_json())[0] is False


def test_kpow_step_is_unique():
    script = main_script(3, 9, 1)
    assert sum(1 for st in script.steps if lookup_rule(st.rule).name == "R-KPOW-SIGN") == 1


def test_unknown_premise_and_duplicate_id():
    bad = ProofScript((3, 9, 1), 1, ["ax_k"], [Step("f1", "pow", ("nope",), (1,))])
    cert = check_script(bad)
    assert cert.failure.index == 0 and "unknown premise" in cert.failure.reason
    dup = ProofScript((3, 9, 1), 1, ["ax_k"],
                      [Step("f1", "pow", ("ax_k",), (1,)), Step("f1", "pow", ("ax_k",), (2,))])
    assert "already defined" in check_script(dup).failure.reason


def test_unknown_axiom():
    cert = check_script(ProofScript((3, 9, 1), 1, ["ax_zzz"], []))
    assert cert.failure is not None


def test_fails_fast():
    script = main_script(3, 9, 1)
    steps = list(script.steps)
    steps[2] = Step(steps[2].id, steps[2].rule, steps[2].premises[::-1] + ("ax_k",),
                    steps[2].args)
    cert = check_script(ProofScript((3, 9, 1), 1, script.axioms, steps, script.qed))
    assert cert.failure.index == 2
    assert not any(st.verified for st in cert.steps[2:])


@pytest.mark.parametrize("s", [3, 5])
def test_fixedpoint(s):
    cert = builtin_script_fixedpoint(s)
    assert cert.is_bot
    assert verify(cert.to_json())[0]
    cases = [st for st in cert.steps if st.rule == "R-PT-CASES"]
    assert len(cases) == 1 and len(cases[0].premises) == 3


def test_fixedpoint_branch_length_linear():
    def lt_len(s):
        return sum(1 for st in fixedpoint_script(s).steps if st.id.startswith("lt_"))
    lens = [lt_len(s) for s in (3, 4, 5, 6)]
    diffs = {b - a for a, b in zip(lens, lens[1:])}
    assert len(diffs) == 1 and diffs.pop() > 0


def test_fixedpoint_without_globalfix():
    cert = builtin_script_fixedpoint(3, globalfix=False)
    assert not cert.is_bot
    assert cert.failure.rule == "R-PT-GLOBALFIX"
    assert cert.failure.step_id == "eq_bot"


# --- mirror ---


def test_mirror_involution():
    for script in (main_script(3, 9, 1), fixedpoint_script(4), ProofScript()):
        assert mirror(mirror(script)) == script


def test_mirror_empty():
    m = mirror(ProofScript())
    assert m.steps == [] and m.axioms == []


@pytest.mark.parametrize("ctx", [(3, 9, 1), (4, 23, 2), (5, 14, 1)])
def test_mirror_main_verifies_under_neg_k(ctx):
    m = mirror(main_script(*ctx))
    cert = check_script(m, ProverContext.for_surgery(*ctx, sign=-1))
    assert cert.is_bot
    assert cert.context.axioms()["ax_k"] == neg(K)
    assert verify(cert.to_json())[0]


def test_mirror_preserves_failure():
    m = mirror(main_script(3, 8, 1))
    cert = check_script(m, ProverContext.for_surgery(3, 8, 1, sign=-1))
    assert not cert.is_bot and cert.failure.rule == "R-KPOW-SIGN"


def test_main_iff_grid_small():
    for s in (3, 4):
        for q in (1, 2):
            base = (2 * s + 3) * q
            for p in range(base - 2, base + 3):
                if p % q == 0 and q > 1:
                    continue
                assert builtin_script_main((s, p, q)).is_bot == (p >= base)
