"""Bounded forward chaining over the rule set.

Each round applies every rule, in the order of ``RULES``, to every tuple
of known facts (oldest first) with every candidate argument (words in
shortlex order, then small integers). New judgments are appended in the
order they are found, so the whole run is deterministic. The first
unconditional BOT ends the search; its ancestry is replayed through the
kernel to produce the certificate.

Case splits (R-PT-ASSUME, R-PT-CASES) are not explored: forward chaining
has no way to choose a useful hypothesis.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

from ..words import Word
from .judgments import Judgment
from .kernel import (GLOBALFIX, RULES, Certificate, ProofScript, ProverContext, RuleError, Step,
                     _RuleEnv, check_script)

log = logging.getLogger(__name__)

SMALL_INTS = (-1, 0, 1, 2)
SKIPPED = ("R-PT-ASSUME", "R-PT-CASES")

# rule name -> (premise count, argument shapes); "w" word, "i" small int
_SHAPES = {
    "R-POW": ((1,), ("i",)),
    "R-MUL": ((2,), ()),
    "R-CONJ": ((1,), ("w",)),
    "R-INV": ((1,), ()),
    "R-EQSUBST": ((2,), ()),
    "R-KPOW-SIGN": ((1,), ("i", "dir")),
    "R-CONTRA": ((1, 2), ()),
    "R-EQ-REFL": ((0,), ("w",)),
    "R-EQ-SYM": ((1,), ()),
    "R-EQ-TRANS": ((2,), ()),
    "R-EQ-CONG": ((1,), ("w", "w")),
    "R-EQ-POW": ((1,), ("i",)),
    "R-EQ-MUL": ((2,), ()),
    "R-EQ-REL": ((1,), ("relins",)),
    "R-PT-APPLY": ((1,), ("w",)),
    "R-PT-TRANS": ((2,), ()),
    "R-PT-SYM": ((1,), ()),
    "R-PT-POW": ((1,), ("i",)),
    "R-PT-EQSUBST": ((2,), ("side",)),
    "R-PT-GLOBALFIX": ((1, 2), ()),
}


def shortlex_words(generators, max_len: int) -> list[Word]:
    letters = [(g, e) for g in generators for e in (1, -1)]
    out = {Word()}
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            for x in letters:
                if w and w[-1] == (x[0], -x[1]):
                    continue
                nxt.append(w + (x,))
        out.update(Word(w) for w in nxt)
        frontier = nxt
    return sorted(out, key=Word.shortlex_key)


@dataclass
class _Fact:
    id: str
    judgment: Judgment
    rule: str | None = None
    premises: tuple[str, ...] = ()
    args: tuple = ()


def _arg_tuples(shape, words, prem):
    pools = []
    for kind in shape:
        if kind == "w":
            pools.append(words)
        elif kind == "i":
            pools.append(SMALL_INTS)
        elif kind == "dir":
            pools.append((-1, 1))
        elif kind == "side":
            pools.append((0, 1))
        elif kind == "relins":
            r = prem[0].left if prem and prem[0].kind == "EQ" else None
            if r is None or not prem[0].right.is_identity():
                return []
            return [(w, pos, shift, d) for w in words for pos in range(w.length + 1)
                    for d in (1, -1) for shift in range(r.length)]
    return list(itertools.product(*pools))


def search(context: ProverContext, max_steps: int, max_word_len: int,
           max_facts: int = 20000) -> Certificate | None:
    """First BOT reachable in ``max_steps`` rounds, or None when the budget is exhausted."""
    if max_steps <= 0:
        return None
    axioms = context.axioms()
    globalfix = GLOBALFIX in axioms
    env = _RuleEnv(globalfix, context.generators)
    facts: list[_Fact] = [_Fact(n, j) for n, j in axioms.items() if j is not None]
    seen = {f.judgment for f in facts}
    gens = sorted({g for f in facts for w in f.judgment.words() for g in w.generators()}
                  | set(context.generators), key="clk".index)
    words = shortlex_words(gens, max_word_len)
    rules = [r for r in RULES if r.name not in SKIPPED]
    counter = itertools.count(1)
    fresh_from = 0

    for rnd in range(1, max_steps + 1):
        old = len(facts)
        snapshot = list(facts)
        for spec in rules:
            arities, shape = _SHAPES[spec.name]
            for n in arities:
                for combo in itertools.product(range(old), repeat=n):
                    # only combinations touching last round's facts are new
                    if rnd > 1 and (n == 0 or max(combo) < fresh_from):
                        continue
                    prem = tuple(snapshot[i].judgment for i in combo)
                    for args in _arg_tuples(shape, words, prem) if shape else [()]:
                        try:
                            j = spec.fn(prem, tuple(args), env)
                        except RuleError:
                            continue
                        if j in seen:
                            continue
                        seen.add(j)
                        fact = _Fact(f"f{next(counter)}", j, spec.name,
                                     tuple(snapshot[i].id for i in combo), tuple(args))
                        facts.append(fact)
                        if j.kind == "BOT" and not j.branch:
                            log.debug("BOT in round %d after %d facts", rnd, len(facts))
                            return _certificate(context, facts, fact)
                        if len(facts) >= max_facts:
                            log.debug("fact budget exhausted in round %d", rnd)
                            return None
        fresh_from = old
        if len(facts) == old:
            return None
    return None


def _certificate(context: ProverContext, facts: list[_Fact], goal: _Fact) -> Certificate:
    by_id = {f.id: f for f in facts}
    needed: list[str] = []

    def visit(fid):
        if fid in needed:
            return
        for p in by_id[fid].premises:
            visit(p)
        needed.append(fid)

    visit(goal.id)
    axioms = [fid for fid in needed if by_id[fid].rule is None]
    if any(by_id[fid].rule == "R-PT-GLOBALFIX" for fid in needed):
        axioms.append(GLOBALFIX)
    order = {f.id: i for i, f in enumerate(facts)}
    derived = sorted((fid for fid in needed if by_id[fid].rule is not None), key=order.get)
    steps = [Step(fid, by_id[fid].rule, by_id[fid].premises, by_id[fid].args) for fid in derived]
    script = ProofScript(None, context.sign, axioms, steps, goal.id)
    return check_script(script, context)
