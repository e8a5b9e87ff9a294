"""A second, deliberately small certificate checker.

It shares nothing with the kernel beyond the JSON format: words are
tuples of signed letter codes, rules are re-implemented from scratch, and
the context axioms are rebuilt from (s, p, q). A certificate passes only
if every recorded judgment is re-derived exactly and the last one is an
unconditional contradiction.
"""

from __future__ import annotations

import re

_CODE = {"c": 1, "l": 2, "k": 3}
_NAME = {v: k for k, v in _CODE.items()}
_FLIP = {"<": ">", ">": "<", "=": "="}
_OPP = {"POS": "NEG", "NEG": "POS", "NNEG": "NPOS", "NPOS": "NNEG"}


class Reject(Exception):
    pass


def red(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inv(w):
    return tuple(-x for x in reversed(w))


def power(w, n):
    base = w if n >= 0 else inv(w)
    return red(base * abs(n))


def gen(g, n=1):
    return power((_CODE[g],), n)


def word(text):
    if text.strip() == "1":
        return ()
    out = []
    for tok in text.split():
        m = re.fullmatch(r"([clk])(?:\^(-?\d+))?", tok)
        if not m:
            raise Reject(f"bad word token {tok!r}")
        out.extend(gen(m.group(1), int(m.group(2) or 1)))
    return red(out)


def show(w):
    if not w:
        return "1"
    blocks = []
    for x in w:
        g = _NAME[abs(x)]
        d = 1 if x > 0 else -1
        if blocks and blocks[-1][0] == g:
            blocks[-1][1] += d
        else:
            blocks.append([g, d])
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in blocks)


def judgment(d):
    """Normal form: (kind, words..., branch)."""
    br = tuple((word(u), r, word(v)) for u, r, v in d.get("branch", []))
    k = d["kind"]
    if k in _OPP:
        return (k, word(d["subject"]), br)
    if k == "EQ":
        return (k, word(d["left"]), word(d["right"]), br)
    if k == "PT":
        return (k, word(d["left"]), d["rel"], word(d["right"]), br)
    if k == "BOT":
        return (k, br)
    raise Reject(f"unknown kind {k}")


def branch_of(js):
    deep = max((j[-1] for j in js), key=len, default=())
    for j in js:
        if deep[: len(j[-1])] != j[-1]:
            raise Reject("incompatible branches")
    return deep


def relator(s):
    return red(gen("c") + gen("l") + gen("c") + gen("l", -1) + gen("c", -1) + gen("l", -s)
               + gen("c", -1) + gen("l", -1) + gen("c") + gen("l") + gen("c") + gen("l", s - 1))


def longitude(s):
    return red(gen("c", -(2 * s - 2)) + gen("l") + gen("c") + gen("l", s) + gen("c")
               + gen("l", s) + gen("c") + gen("l") + gen("c", -(2 * s + 9)))


def axioms(ctx):
    out = {}
    if "s" in ctx:
        s, p, q = ctx["s"], ctx["p"], ctx["q"]
        if s < 3 or p < 1 or q < 1:
            raise Reject("invalid context")
        out["ax_k"] = ("POS" if ctx.get("sign", 1) > 0 else "NEG", gen("k"), ())
        out["ax_c"] = ("EQ", gen("c"), gen("k", q), ())
        out["ax_L"] = ("EQ", longitude(s), gen("k", -p), ())
        out["ax_R"] = ("EQ", relator(s), (), ())
        out["fixk"] = ("PT", gen("k"), "=", (), ())
        out["globalfix"] = None
    for name, j in ctx.get("extra", {}).items():
        out[name] = judgment(j) if j else None
    return out


def _sign(pol, strict):
    return ("POS" if strict else "NNEG") if pol > 0 else ("NEG" if strict else "NPOS")


def _pol(k):
    return 1 if k in ("POS", "NNEG") else -1


def _strict(k):
    return k in ("POS", "NEG")


def derive(rule, P, A, gfix, gens):
    """Re-derive one conclusion. P: premise normal forms, A: raw JSON args."""
    kinds = [p[0] for p in P]
    signs = ("POS", "NNEG", "NEG", "NPOS")

    def want(n, *ks):
        if len(P) != n or any(k not in allowed for k, allowed in zip(kinds, ks)):
            raise Reject(f"{rule}: bad premises {kinds}")

    def W(i):
        if i >= len(A) or not isinstance(A[i], str) or A[i] in _FLIP:
            raise Reject(f"{rule}: argument {i} must be a word")
        return word(A[i])

    def I(i):
        if i >= len(A) or not isinstance(A[i], int) or isinstance(A[i], bool):
            raise Reject(f"{rule}: argument {i} must be an integer")
        return A[i]

    def nargs(n):
        if len(A) != n:
            raise Reject(f"{rule}: expected {n} args")

    br = branch_of(P) if P and rule != "R-PT-CASES" else ()
    if rule == "R-POW":
        want(1, signs); nargs(1)
        n = I(0)
        if n < (1 if _strict(kinds[0]) else 0):
            raise Reject("power too small")
        return (kinds[0], power(P[0][1], n), br)
    if rule == "R-MUL":
        want(2, signs, signs); nargs(0)
        if _pol(kinds[0]) != _pol(kinds[1]):
            raise Reject("mixed polarity")
        k = _sign(_pol(kinds[0]), _strict(kinds[0]) or _strict(kinds[1]))
        return (k, red(P[0][1] + P[1][1]), br)
    if rule == "R-CONJ":
        want(1, signs); nargs(1)
        w = W(0)
        return (kinds[0], red(w + P[0][1] + inv(w)), br)
    if rule == "R-INV":
        want(1, signs); nargs(0)
        return (_OPP[kinds[0]], inv(P[0][1]), br)
    if rule == "R-EQSUBST":
        want(2, signs, ("EQ",)); nargs(0)
        if P[0][1] != P[1][1]:
            raise Reject("subject mismatch")
        return (kinds[0], P[1][2], br)
    if rule == "R-KPOW-SIGN":
        want(1, ("POS", "NEG")); nargs(2)
        m, d = I(0), I(1)
        if d == -1 and m <= 0:
            k = _sign(-_pol(kinds[0]), False)
        elif d == 1 and m >= 0:
            k = _sign(_pol(kinds[0]), False)
        else:
            raise Reject(f"exponent {m} violates direction {d}")
        return (k, power(P[0][1], m), br)
    if rule == "R-CONTRA":
        nargs(0)
        if len(P) == 1:
            j = P[0]
            if j[0] == "PT" and j[2] != "=" and j[1] == j[3]:
                return ("BOT", br)
            raise Reject("not a strict self-comparison")
        want(2, signs, signs + ("EQ",))
        a, b = P
        if b[0] == "EQ":
            if _strict(a[0]) and {b[1], b[2]} == {a[1], ()}:
                return ("BOT", br)
            raise Reject("EQ does not kill subject")
        ss = [j for j in P if _strict(j[0])]
        ws = [j for j in P if not _strict(j[0])]
        if len(ss) == 1 and len(ws) == 1 and _pol(ss[0][0]) != _pol(ws[0][0]) and a[1] == b[1]:
            return ("BOT", br)
        raise Reject("not contradictory")
    if rule == "R-EQ-REFL":
        want(0); nargs(1)
        w = W(0)
        return ("EQ", w, w, ())
    if rule == "R-EQ-SYM":
        want(1, ("EQ",)); nargs(0)
        return ("EQ", P[0][2], P[0][1], br)
    if rule == "R-EQ-TRANS":
        want(2, ("EQ",), ("EQ",)); nargs(0)
        if P[0][2] != P[1][1]:
            raise Reject("middle mismatch")
        return ("EQ", P[0][1], P[1][2], br)
    if rule == "R-EQ-CONG":
        want(1, ("EQ",)); nargs(2)
        a, b = W(0), W(1)
        return ("EQ", red(a + P[0][1] + b), red(a + P[0][2] + b), br)
    if rule == "R-EQ-POW":
        want(1, ("EQ",)); nargs(1)
        n = I(0)
        return ("EQ", power(P[0][1], n), power(P[0][2], n), br)
    if rule == "R-EQ-MUL":
        want(2, ("EQ",), ("EQ",)); nargs(0)
        return ("EQ", red(P[0][1] + P[1][1]), red(P[0][2] + P[1][2]), br)
    if rule == "R-EQ-REL":
        want(1, ("EQ",)); nargs(4)
        r = P[0][1]
        if P[0][2] != () or not r:
            raise Reject("premise is not R = 1")
        w, pos, shift, d = W(0), I(1), I(2), I(3)
        if d not in (1, -1) or not 0 <= pos <= len(w):
            raise Reject("bad insertion")
        rr = r if d == 1 else inv(r)
        if not 0 <= shift < len(rr):
            raise Reject("bad shift")
        rot = rr[shift:] + rr[:shift]
        return ("EQ", w, red(w[:pos] + rot + w[pos:]), br)
    if rule == "R-PT-ASSUME":
        if len(P) > 1 or len(A) != 3 or A[1] not in _FLIP:
            raise Reject("bad assume")
        u, v = W(0), W(2)
        parent = P[0][-1] if P else ()
        return ("PT", u, A[1], v, parent + ((u, A[1], v),))
    if rule == "R-PT-CASES":
        want(3, ("BOT",), ("BOT",), ("BOT",)); nargs(0)
        brs = [j[-1] for j in P]
        if any(not b for b in brs):
            raise Reject("closed branch")
        parents = {b[:-1] for b in brs}
        heads = [b[-1] for b in brs]
        if len(parents) != 1 or len({(h[0], h[2]) for h in heads}) != 1 \
                or sorted(h[1] for h in heads) != ["<", "=", ">"]:
            raise Reject("not a trichotomy")
        return ("BOT", parents.pop())
    if rule == "R-PT-APPLY":
        want(1, ("PT",)); nargs(1)
        w = W(0)
        j = P[0]
        return ("PT", red(w + j[1]), j[2], red(w + j[3]), br)
    if rule == "R-PT-TRANS":
        want(2, ("PT",), ("PT",)); nargs(0)
        a, b = P
        if a[3] != b[1]:
            raise Reject("middle mismatch")
        rels = {a[2], b[2]}
        if rels == {"<", ">"}:
            raise Reject("opposite relations")
        rel = "=" if rels == {"="} else (rels - {"="}).pop()
        return ("PT", a[1], rel, b[3], br)
    if rule == "R-PT-SYM":
        want(1, ("PT",)); nargs(0)
        j = P[0]
        return ("PT", j[3], _FLIP[j[2]], j[1], br)
    if rule == "R-PT-POW":
        want(1, ("PT",)); nargs(1)
        j = P[0]
        if j[2] != "=" or j[3] != ():
            raise Reject("not a fixed point fact")
        return ("PT", power(j[1], I(0)), "=", (), br)
    if rule == "R-PT-EQSUBST":
        want(2, ("PT",), ("EQ",)); nargs(1)
        j, e = P
        side = I(0)
        if side == 0 and j[1] == e[1]:
            return ("PT", e[2], j[2], j[3], br)
        if side == 1 and j[3] == e[1]:
            return ("PT", j[1], j[2], e[2], br)
        raise Reject("side mismatch")
    if rule == "R-PT-GLOBALFIX":
        nargs(0)
        if not gfix:
            raise Reject("global fix not assumed")
        fixed = set()
        for j in P:
            if j[0] != "PT" or j[2] != "=":
                raise Reject("need equalities")
            if j[3] == ():
                fixed.add(j[1])
            elif j[1] == ():
                fixed.add(j[3])
            else:
                raise Reject("not a fixed point fact")
        if any(gen(g) not in fixed for g in gens):
            raise Reject("some generator not fixed")
        return ("BOT", br)
    raise Reject(f"unknown rule {rule!r}")


def verify(cert: dict) -> tuple[bool, str]:
    """(accepted, reason)."""
    try:
        ctx = cert["context"]
        ax = axioms(ctx)
        known = {}
        for name in cert["axioms"]:
            if name not in ax:
                raise Reject(f"unknown axiom {name}")
            known[name] = ax[name]
        gfix = "globalfix" in cert["axioms"]
        gens = ctx.get("generators", ["c", "l"])
        last = None
        for i, st in enumerate(cert["steps"]):
            if st["id"] in known:
                raise Reject(f"step {i}: duplicate id")
            prem = []
            for pid in st["premises"]:
                if known.get(pid) is None:
                    raise Reject(f"step {i}: bad premise {pid!r}")
                prem.append(known[pid])
            got = derive(st["rule"], prem, st["args"], gfix, gens)
            if st.get("judgment") is None or judgment(st["judgment"]) != got:
                raise Reject(f"step {i}: recorded judgment is not what {st['rule']} derives")
            known[st["id"]] = got
            last = st["id"]
        target = cert.get("qed") or last
        if target is None or known.get(target) != ("BOT", ()):
            raise Reject("no unconditional contradiction")
        return True, "ok"
    except Reject as exc:
        return False, str(exc)
    except (KeyError, TypeError, ValueError) as exc:
        return False, f"malformed certificate: {exc}"
