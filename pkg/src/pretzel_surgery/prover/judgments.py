"""Judgments about words acting on the real line.

Sign judgments read "for every x": POS w is x < w.x, NNEG w is x <= w.x,
NEG and NPOS are the reverses. EQ is equality in the group. PT records a
relation between u.x0 and v.x0 at one symbolic point x0. BOT is a
contradiction. Every judgment carries the stack of case hypotheses it
was derived under.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..words import Word, parse_word

SIGN_KINDS = ("POS", "NNEG", "NEG", "NPOS")
KINDS = SIGN_KINDS + ("EQ", "BOT", "PT")
RELATIONS = ("<", "=", ">")

POLARITY = {"POS": 1, "NNEG": 1, "NEG": -1, "NPOS": -1}
STRICT = {"POS": True, "NEG": True, "NNEG": False, "NPOS": False}
MIRROR_KIND = {"POS": "NEG", "NEG": "POS", "NNEG": "NPOS", "NPOS": "NNEG",
               "EQ": "EQ", "BOT": "BOT", "PT": "PT"}
FLIP_REL = {"<": ">", ">": "<", "=": "="}


def sign_kind(polarity: int, strict: bool) -> str:
    if polarity > 0:
        return "POS" if strict else "NNEG"
    return "NEG" if strict else "NPOS"


Hypothesis = tuple[Word, str, Word]


@dataclass(frozen=True)
class Judgment:
    kind: str
    subject: Word | None = None
    left: Word | None = None
    right: Word | None = None
    rel: str | None = None
    branch: tuple[Hypothesis, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown judgment kind {self.kind!r}")
        if self.kind in SIGN_KINDS and self.subject is None:
            raise ValueError(f"{self.kind} needs a subject")
        if self.kind in ("EQ", "PT") and (self.left is None or self.right is None):
            raise ValueError(f"{self.kind} needs two sides")
        if self.kind == "PT" and self.rel not in RELATIONS:
            raise ValueError(f"bad relation {self.rel!r}")

    @property
    def polarity(self) -> int:
        return POLARITY[self.kind]

    @property
    def strict(self) -> bool:
        return STRICT[self.kind]

    def with_branch(self, branch: tuple[Hypothesis, ...]) -> Judgment:
        return Judgment(self.kind, self.subject, self.left, self.right, self.rel, branch)

    def words(self) -> list[Word]:
        return [w for w in (self.subject, self.left, self.right) if w is not None]

    def __str__(self) -> str:
        if self.kind in SIGN_KINDS:
            body = f"{self.kind}({self.subject})"
        elif self.kind == "EQ":
            body = f"EQ({self.left} = {self.right})"
        elif self.kind == "PT":
            body = f"PT({self.left} . x0 {self.rel} {self.right} . x0)"
        else:
            body = "BOT"
        if self.branch:
            hyps = ", ".join(f"{u} {r} {v}" for u, r, v in self.branch)
            body += f" [under {hyps}]"
        return body

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind in SIGN_KINDS:
            out["subject"] = str(self.subject)
        elif self.kind in ("EQ", "PT"):
            out["left"] = str(self.left)
            out["right"] = str(self.right)
            if self.kind == "PT":
                out["rel"] = self.rel
        out["branch"] = [[str(u), r, str(v)] for u, r, v in self.branch]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Judgment:
        def w(key):
            return parse_word(data[key]) if key in data else None

        branch = tuple((parse_word(u), r, parse_word(v)) for u, r, v in data.get("branch", ()))
        return cls(data["kind"], w("subject"), w("left"), w("right"), data.get("rel"), branch)


def pos(w: Word) -> Judgment:
    return Judgment("POS", subject=w)


def neg(w: Word) -> Judgment:
    return Judgment("NEG", subject=w)


def eq(u: Word, v: Word) -> Judgment:
    return Judgment("EQ", left=u, right=v)


def pt(u: Word, rel: str, v: Word) -> Judgment:
    return Judgment("PT", left=u, right=v, rel=rel)


BOT = Judgment("BOT")


def mirror_judgment(j: Judgment) -> Judgment:
    branch = tuple((u, FLIP_REL[r], v) for u, r, v in j.branch)
    rel = FLIP_REL[j.rel] if j.rel else None
    return Judgment(MIRROR_KIND[j.kind], j.subject, j.left, j.right, rel, branch)
