"""Monotone edgepaths in the Hatcher-Oertel diagram for the (-2, 3, 2s+1) pretzel knot.

A vertex p/q sits at u = (q-1)/q, v = p/q; the integers form the border
u = 0 and <inf> sits at u = -1. Edges join Farey neighbours. Paths here
always move right to left (u strictly decreasing).

Twist convention: each edge moving down in v counts +2, each edge moving
up counts -2, partial edges count fractionally, motion along the border
u = 0 counts like any other edge, and the final edge to <inf> counts 0.
Slopes are twists measured against the Seifert system (all up, type III).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

SIGN_TRIPLES = ("+++", "++-", "+-+", "+--", "-++", "-+-", "--+", "---")
TYPES = ("II", "III")

C_INF0 = "C_inf0"
C_INF1 = "C_inf1"
C_10 = "C_10"


@dataclass(frozen=True, order=True)
class Vertex:
    """p/q in lowest terms with q >= 1, or <inf> when q == 0."""

    p: int
    q: int

    def __post_init__(self):
        if self.q == 0:
            if self.p != 1:
                raise ValueError("infinity is stored as 1/0")
            return
        if self.q < 0:
            raise ValueError("denominator must be positive")
        if Fraction(self.p, self.q).denominator != self.q:
            raise ValueError(f"{self.p}/{self.q} is not reduced")

    @classmethod
    def of(cls, x) -> Vertex:
        if x == "inf":
            return INF
        f = Fraction(x)
        return cls(f.numerator, f.denominator)

    @property
    def is_inf(self) -> bool:
        return self.q == 0

    @property
    def is_integer(self) -> bool:
        return self.q == 1

    @property
    def value(self) -> Fraction:
        if self.is_inf:
            raise ValueError("<inf> has no value")
        return Fraction(self.p, self.q)

    @property
    def u(self) -> Fraction:
        return Fraction(-1) if self.is_inf else Fraction(self.q - 1, self.q)

    @property
    def v(self) -> Fraction:
        return self.value

    @property
    def parity(self) -> tuple[int, int]:
        return (self.p % 2, self.q % 2)

    def adjacent(self, other: Vertex) -> bool:
        return abs(self.p * other.q - self.q * other.p) == 1

    def __str__(self) -> str:
        if self.is_inf:
            return "inf"
        return str(self.p) if self.q == 1 else f"{self.p}/{self.q}"


INF = Vertex(1, 0)


@dataclass(frozen=True)
class Edge:
    a: Vertex
    b: Vertex

    def __post_init__(self):
        if not self.a.adjacent(self.b):
            raise ValueError(f"<{self.a}, {self.b}> is not an edge of the diagram")

    @property
    def color(self) -> str:
        return edge_color(self)

    def direction(self) -> int:
        """+1 when v increases from a to b, -1 when it decreases, 0 for an edge to <inf>."""
        if self.a.is_inf or self.b.is_inf:
            return 0
        return 1 if self.b.value > self.a.value else -1

    def __str__(self) -> str:
        return f"<{self.a}, {self.b}>"


def edge_color(e: Edge) -> str:
    classes = {e.a.parity, e.b.parity}
    if classes == {(1, 0), (0, 1)}:
        return C_INF0
    if classes == {(1, 0), (1, 1)}:
        return C_INF1
    if classes == {(1, 1), (0, 1)}:
        return C_10
    raise AssertionError(f"edge {e} has no parity class")


def farey_parents(v: Vertex) -> tuple[Vertex, Vertex]:
    """The two neighbours of v with smaller denominator, larger value first."""
    if v.is_inf or v.q < 2:
        raise ValueError(f"{v} has no Farey parents")
    s1 = pow(v.p, -1, v.q)
    r1 = (v.p * s1 - 1) // v.q
    a = Vertex.of(Fraction(r1, s1))
    b = Vertex.of(Fraction(v.p - r1, v.q - s1))
    return (a, b) if a.value > b.value else (b, a)


@dataclass(frozen=True)
class EdgePath:
    """A u-decreasing path, optionally ending part way along one more edge.

    ``vertical`` is a signed number of unit steps along the border u = 0
    taken from the integer end vertex; it is kept apart from ``edges`` so
    the Farey part stays strictly u-decreasing.
    """

    start: Vertex
    edges: tuple[Edge, ...] = ()
    partial: tuple[Edge, Fraction] | None = None
    direction: int = 0
    vertical: int = 0

    def __post_init__(self):
        at = self.start
        for e in self.edges:
            if e.a != at:
                raise ValueError(f"edge {e} does not continue the path at {at}")
            if not e.b.u < e.a.u:
                raise ValueError(f"edge {e} does not decrease u")
            d = e.direction()
            if d and self.direction and d != self.direction:
                raise ValueError("path is not monotone")
            at = e.b
        if self.partial is not None:
            e, frac = self.partial
            if e.a != at or not 0 < frac < 1 or not e.b.u < e.a.u:
                raise ValueError("bad partial edge")
        if self.vertical and not at.is_integer:
            raise ValueError("vertical motion only along the integer border")

    @property
    def end(self) -> Vertex:
        return self.edges[-1].b if self.edges else self.start

    @property
    def is_constant(self) -> bool:
        return not self.edges and self.partial is None and not self.vertical

    def end_point(self) -> tuple[Fraction, Fraction]:
        """(u, v) of the far end, including any partial edge or border motion."""
        end = self.end
        if self.partial is not None:
            e, t = self.partial
            return (e.a.u + t * (e.b.u - e.a.u), e.a.v + t * (e.b.v - e.a.v))
        if end.is_inf:
            return (Fraction(-1), Fraction(0))
        return (end.u, end.v + self.vertical)

    def vertical_edges(self) -> list[Edge]:
        z = self.end.p
        step = 1 if self.vertical > 0 else -1
        return [Edge(Vertex(z + i * step, 1), Vertex(z + (i + 1) * step, 1))
                for i in range(abs(self.vertical))]

    def all_edges(self) -> list[Edge]:
        out = list(self.edges) + self.vertical_edges()
        if self.partial is not None:
            out.append(self.partial[0])
        return out

    def __str__(self) -> str:
        parts = [str(self.start)] + [str(e.b) for e in self.edges]
        text = " -> ".join(parts)
        if self.partial is not None:
            e, t = self.partial
            text += f" -> ({t} of the way to {e.b})"
        if self.vertical:
            text += f" then {self.vertical:+d} along the border"
        return text


def twist(path: EdgePath) -> Fraction:
    up = down = Fraction(0)
    for e in path.edges:
        d = e.direction()
        if d > 0:
            up += 1
        elif d < 0:
            down += 1
    if path.partial is not None:
        e, t = path.partial
        if e.direction() > 0:
            up += t
        else:
            down += t
    if path.vertical > 0:
        up += path.vertical
    else:
        down -= path.vertical
    return 2 * (down - up)


def is_monochromatic(obj: EdgePath | EdgePathSystem) -> bool:
    """Each path uses at most one color."""
    paths = obj.paths if isinstance(obj, EdgePathSystem) else (obj,)
    return all(len({edge_color(e) for e in p.all_edges()}) <= 1 for p in paths)


def montesinos_fractions(s: int) -> tuple[Fraction, Fraction, Fraction]:
    if s < 3:
        raise ValueError("s must be at least 3")
    return (Fraction(-1, 2), Fraction(1, 3), Fraction(1, 2 * s + 1))


def _sign(sign) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"bad direction {sign!r}")


def monotone_path(start: Vertex, sign, target_type: str) -> EdgePath:
    d = _sign(sign)
    if target_type not in TYPES:
        raise ValueError(f"target type must be II or III, not {target_type!r}")
    if start.is_inf or start.is_integer:
        raise ValueError("monotone paths start at a non-integer vertex")
    edges = []
    at = start
    while not at.is_integer:
        up, down = farey_parents(at)
        nxt = up if d > 0 else down
        edges.append(Edge(at, nxt))
        at = nxt
    if target_type == "III":
        edges.append(Edge(at, INF))
    return EdgePath(start, tuple(edges), None, d)


def allowed_vertical(path: EdgePath) -> tuple[bool, bool]:
    """Whether the border may be followed (upward, downward) from a type II end.

    Going from z toward z +/- 1 is refused when the last vertex before z is
    also adjacent to z +/- 1: the path would run along two sides of one
    triangle and fail to be minimal.
    """
    if not path.edges:
        return (True, True)
    prev, z = path.edges[-1].a, path.edges[-1].b
    ok_up = not prev.adjacent(Vertex(z.p + 1, 1))
    ok_down = not prev.adjacent(Vertex(z.p - 1, 1))
    return (ok_up, ok_down)


@dataclass(frozen=True)
class EdgePathSystem:
    paths: tuple[EdgePath, ...]
    system_type: str
    admissible: bool
    reason: str = ""
    signs: str = ""

    def twist(self) -> Fraction:
        return sum((twist(p) for p in self.paths), Fraction(0))

    def end_v_sum(self) -> Fraction:
        return sum((p.end_point()[1] for p in self.paths), Fraction(0))

    def to_json(self) -> dict:
        return {
            "signs": self.signs,
            "type": self.system_type,
            "admissible": self.admissible,
            "reason": self.reason,
            "paths": [str(p) for p in self.paths],
        }


def _check_paths(paths: Sequence[EdgePath]) -> str:
    for p in paths:
        dirs = {e.direction() for e in p.edges} - {0}
        if len(dirs) > 1:
            return f"path from {p.start} is not monotone"
    return ""


def build_system(s: int, signs: str, system_type: str) -> EdgePathSystem:
    if len(signs) != 3 or any(c not in "+-" for c in signs):
        raise ValueError(f"bad sign triple {signs!r}")
    fracs = montesinos_fractions(s)
    paths = [monotone_path(Vertex.of(f), c, system_type) for f, c in zip(fracs, signs)]
    bad = _check_paths(paths)
    if bad:
        return EdgePathSystem(tuple(paths), system_type, False, bad, signs)
    if system_type == "III":
        return EdgePathSystem(tuple(paths), "III", True, "", signs)
    # type II: the ends must be moved along the border until their values sum to 0
    need = -sum(p.end.p for p in paths)
    if need == 0:
        return EdgePathSystem(tuple(paths), "II", True, "", signs)
    want_up = need > 0
    for i, p in enumerate(paths):
        ok_up, ok_down = allowed_vertical(p)
        if (want_up and ok_up) or (not want_up and ok_down):
            paths[i] = EdgePath(p.start, p.edges, None, p.direction, need)
            return EdgePathSystem(tuple(paths), "II", True, "", signs)
    where = "up" if want_up else "down"
    return EdgePathSystem(tuple(paths), "II", False,
                          f"ends sum to {-need}; no path may continue {where} the border",
                          signs)


def seifert_system(s: int) -> EdgePathSystem:
    return build_system(s, "+++", "III")


@dataclass(frozen=True)
class SlopeEntry:
    signs: str
    system_type: str
    slope: Fraction | None
    reason: str = ""

    def to_json(self) -> dict:
        slope: object = "not_admissible"
        if self.slope is not None:
            slope = int(self.slope) if self.slope.denominator == 1 else str(self.slope)
        return {"sign_triple": self.signs, "type": self.system_type, "slope": slope}


@dataclass(frozen=True)
class SlopeTable:
    s: int
    entries: tuple[SlopeEntry, ...] = field(default=())

    def cell(self, signs: str, system_type: str) -> Fraction | None:
        for e in self.entries:
            if e.signs == signs and e.system_type == system_type:
                return e.slope
        raise KeyError((signs, system_type))

    def values(self) -> list[Fraction]:
        return [e.slope for e in self.entries if e.slope is not None]

    def to_json(self) -> list[dict]:
        return [e.to_json() for e in self.entries]

    def to_text(self) -> str:
        def fmt(x):
            return "Not admissible" if x is None else str(x)

        rows = [("Directions", "Type II", "Type III")]
        for signs in SIGN_TRIPLES:
            rows.append((signs, fmt(self.cell(signs, "II")), fmt(self.cell(signs, "III"))))
        widths = [max(len(r[i]) for r in rows) for i in range(3)]
        lines = [f"Slope list, s = {self.s}"]
        for r in rows:
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
        return "\n".join(lines)


def slope_table(s: int, order: Iterable[tuple[str, str]] | None = None) -> SlopeTable:
    """Slopes of every monotone type II/III system; ``order`` only changes evaluation order."""
    tau0 = seifert_system(s).twist()
    cells = list(order) if order is not None else list(itertools.product(SIGN_TRIPLES, TYPES))
    found = {}
    for signs, typ in cells:
        system = build_system(s, signs, typ)
        slope = system.twist() - tau0 if system.admissible else None
        found[(signs, typ)] = SlopeEntry(signs, typ, slope, system.reason)
    entries = tuple(found[k] for k in itertools.product(SIGN_TRIPLES, TYPES))
    for e in entries:
        if e.slope is not None and (e.slope.denominator != 1 or e.slope % 2):
            raise AssertionError(f"slope {e.slope} at {e.signs}/{e.system_type} is not even")
    return SlopeTable(s, entries)


def count_type23_slope_values(s: int) -> int:
    return len(set(slope_table(s).values()))


# --- type I -------------------------------------------------------------------------


@dataclass(frozen=True)
class TypeIResult:
    signs: str
    u: Fraction
    paths: tuple[EdgePath, ...]
    slope: Fraction

    def to_json(self) -> dict:
        return {"signs": self.signs, "u": str(self.u), "paths": [str(p) for p in self.paths],
                "slope": str(self.slope)}


def _truncate(path: EdgePath, u0: Fraction) -> EdgePath:
    """The part of ``path`` to the right of u = u0, for 0 < u0 < 1.

    Right of its start vertex a path is constant: it sits on the horizontal
    edge through p/q, so its v-coordinate stays p/q.
    """
    if u0 >= path.start.u:
        return EdgePath(path.start, (), None, 0)
    done = []
    for e in path.edges:
        if u0 == e.b.u:
            return EdgePath(path.start, tuple(done + [e]), None, path.direction)
        if e.b.u < u0 < e.a.u:
            t = (e.a.u - u0) / (e.a.u - e.b.u)
            return EdgePath(path.start, tuple(done), (e, t), path.direction)
        done.append(e)
    raise ValueError(f"u = {u0} is not inside the strip")


def _end_v(path: EdgePath, u0: Fraction) -> Fraction:
    if u0 <= 0:
        return Fraction(path.end.p)
    return _truncate(path, u0).end_point()[1]


def type1_scan(s: int, denominator_bound: int) -> list[TypeIResult]:
    """Monotone systems ending at a common u in (0, 1) whose end values sum to 0.

    Each end value is piecewise affine in u with breaks at vertex
    u-coordinates, so the ending equation is solved exactly piece by
    piece. Solutions are kept when u has denominator at most
    ``denominator_bound``. Constant paths are written ``0`` in the sign
    string; systems reached from several sign triples are reported once.
    """
    fracs = montesinos_fractions(s)
    tau0 = seifert_system(s).twist()
    seen = set()
    out = []
    for signs in SIGN_TRIPLES:
        full = [monotone_path(Vertex.of(f), c, "II") for f, c in zip(fracs, signs)]
        cuts = sorted({Fraction(0), Fraction(1)} | {p.start.u for p in full}
                      | {e.b.u for p in full for e in p.edges})
        solutions = set()
        for lo, hi in zip(cuts, cuts[1:]):
            a = sum(_end_v(p, lo) for p in full)
            b = sum(_end_v(p, hi) for p in full)
            if a == b:
                if a == 0:
                    solutions.update(_grid(lo, hi, denominator_bound))
                continue
            u0 = lo + (hi - lo) * a / (a - b)
            if lo <= u0 <= hi:
                solutions.add(u0)
        for u0 in sorted(solutions):
            if not 0 < u0 < 1 or u0.denominator > denominator_bound:
                continue
            paths = tuple(_truncate(p, u0) for p in full)
            assert sum(p.end_point()[1] for p in paths) == 0
            label = "".join("0" if p.is_constant else c for p, c in zip(paths, signs))
            if (label, u0) in seen:
                continue
            seen.add((label, u0))
            tau = sum((twist(p) for p in paths), Fraction(0))
            out.append(TypeIResult(label, u0, paths, tau - tau0))
    return out


def _grid(lo: Fraction, hi: Fraction, bound: int):
    for d in range(1, bound + 1):
        for n in range(0, d + 1):
            x = Fraction(n, d)
            if lo <= x <= hi:
                yield x
