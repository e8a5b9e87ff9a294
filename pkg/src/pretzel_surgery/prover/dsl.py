"""Text format for proof scripts.

One statement per line; ``#`` starts a comment::

    context s=3 p=9 q=1
    axiom ax_k
    step f1 = pow ax_k 1
    step f2 = conj f1 [l c^-1]
    step h = assume [1] < [l]
    qed f9

After the rule name come premise identifiers, then arguments: integers,
word literals in square brackets, or one of the relations ``<``, ``=``, ``>``.
An optional ``sign=-`` on the context line selects the NEG(k) orientation.
"""

from __future__ import annotations

import re

from ..words import Word, WordSyntaxError, parse_word
from .judgments import FLIP_REL
from .kernel import ProofScript, Step, lookup_rule


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_IDENT = r"[A-Za-z_][A-Za-z0-9_.]*"
_ARG = re.compile(r"\s*(?:(?P<word>\[[^\]]*\])|(?P<int>-?\d+)(?![A-Za-z_])|(?P<rel>[<=>])"
                  rf"|(?P<ident>{_IDENT}))")
_STEP = re.compile(rf"step\s+(?P<id>{_IDENT})\s*=\s*(?P<rule>[A-Za-z][A-Za-z0-9_-]*)")
_CONTEXT = re.compile(r"context((?:\s+[a-z]+=\S+)*)\s*$")


def _parse_context(body: str, lineno: int):
    fields = {}
    for item in body.split():
        key, _, value = item.partition("=")
        fields[key] = value
    try:
        s, p, q = (int(fields.pop(k)) for k in ("s", "p", "q"))
    except (KeyError, ValueError):
        raise ParseError("context needs integer s=, p=, q=", lineno, 1) from None
    sign = 1
    if "sign" in fields:
        raw = fields.pop("sign")
        if raw not in ("+", "-", "+1", "-1"):
            raise ParseError(f"bad sign {raw!r}", lineno, 1)
        sign = -1 if raw.startswith("-") else 1
    if fields:
        raise ParseError(f"unknown context field(s) {sorted(fields)}", lineno, 1)
    return (s, p, q), sign


def _parse_step(raw: str, lineno: int, indent: int) -> Step:
    m = _STEP.match(raw)
    if not m:
        raise ParseError("expected 'step <id> = <rule> ...'", lineno, indent + 1)
    rule = m.group("rule")
    try:
        lookup_rule(rule)
    except KeyError:
        raise ParseError(f"unknown rule {rule!r}", lineno, indent + m.start("rule") + 1) from None
    premises: list[str] = []
    args: list = []
    pos = m.end()
    while pos < len(raw):
        if not raw[pos:].strip():
            break
        a = _ARG.match(raw, pos)
        col = indent + pos + 1 + (len(raw[pos:]) - len(raw[pos:].lstrip()))
        if not a:
            raise ParseError(f"unexpected token {raw[pos:].split()[0]!r}", lineno, col)
        if a.group("ident"):
            if args:
                raise ParseError("premise identifiers must precede arguments", lineno, col)
            premises.append(a.group("ident"))
        elif a.group("word"):
            text = a.group("word")[1:-1]
            try:
                args.append(parse_word(text))
            except WordSyntaxError as exc:
                raise ParseError(f"malformed word literal: {exc}", lineno,
                                 col + exc.column) from None
        elif a.group("int"):
            args.append(int(a.group("int")))
        else:
            args.append(a.group("rel"))
        pos = a.end()
    return Step(m.group("id"), rule, tuple(premises), tuple(args), lineno, indent + 1)


def parse_script(text: str) -> ProofScript:
    script = ProofScript()
    for lineno, line in enumerate(text.splitlines(), start=1):
        raw = line.split("#", 1)[0].rstrip()
        stripped = raw.lstrip()
        if not stripped:
            continue
        indent = len(raw) - len(stripped)
        head = stripped.split()[0]
        if head == "context":
            if script.context is not None:
                raise ParseError("duplicate context line", lineno, indent + 1)
            if not _CONTEXT.match(stripped):
                raise ParseError("malformed context line", lineno, indent + 1)
            script.context, script.sign = _parse_context(stripped[len("context"):], lineno)
        elif head == "axiom":
            names = stripped.split()[1:]
            if len(names) != 1 or not re.fullmatch(_IDENT, names[0]):
                raise ParseError("expected 'axiom <name>'", lineno, indent + 1)
            script.axioms.append(names[0])
        elif head == "step":
            script.steps.append(_parse_step(stripped, lineno, indent))
        elif head == "qed":
            names = stripped.split()[1:]
            if len(names) != 1:
                raise ParseError("expected 'qed <id>'", lineno, indent + 1)
            script.qed = names[0]
        else:
            raise ParseError(f"unknown statement {head!r}", lineno, indent + 1)
    return script


def format_arg(a) -> str:
    if isinstance(a, Word):
        return f"[{a}]"
    if isinstance(a, str) and a in FLIP_REL:
        return a
    return str(a)


def format_script(script: ProofScript) -> str:
    lines = []
    if script.context is not None:
        s, p, q = script.context
        ctx = f"context s={s} p={p} q={q}"
        if script.sign < 0:
            ctx += " sign=-"
        lines.append(ctx)
    lines.extend(f"axiom {a}" for a in script.axioms)
    for st in script.steps:
        parts = [f"step {st.id} = {st.rule}", *st.premises, *(format_arg(a) for a in st.args)]
        lines.append(" ".join(parts))
    if script.qed is not None:
        lines.append(f"qed {script.qed}")
    return "\n".join(lines) + "\n"
