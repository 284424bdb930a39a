"""Constructors for the named graph families and the closed-form extremal values.

``star_product(r, parts)`` builds ``K_r * (K_{s1} u ... u K_{st})``: the
lowest vertex of ``K_r`` (label 0) is joined to the lowest vertex of each
part clique. A part of size 1 is a ``K_1``, so every extremal family here is
one call.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import MAX_VERTICES, Graph, GraphError, new_graph


def _clique_edges(start: int, size: int) -> list[tuple[int, int]]:
    return [(start + i, start + j) for i in range(size) for j in range(i + 1, size)]


def star_product(r: int, parts: list[int]) -> Graph:
    if r < 1:
        raise GraphError(f"hub clique order must be >= 1, got {r}")
    if any(s < 1 for s in parts):
        raise GraphError(f"part clique orders must be >= 1, got {parts}")
    n = r + sum(parts)
    if n > MAX_VERTICES:
        raise GraphError(f"star product has {n} vertices, cap is {MAX_VERTICES}")
    edges = _clique_edges(0, r)
    start = r
    for s in parts:
        edges += _clique_edges(start, s)
        edges.append((0, start))
        start += s
    return new_graph(n, edges)


def path(n: int) -> Graph:
    if n < 0:
        raise GraphError("path order must be non-negative")
    return new_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle order must be >= 3, got {n}")
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 0:
        raise GraphError("complete graph order must be non-negative")
    return new_graph(n, _clique_edges(0, n))


def star(t: int) -> Graph:
    """``K_{1,t}`` with center 0."""
    if t < 0:
        raise GraphError("star must have a non-negative number of leaves")
    return new_graph(t + 1, [(0, i) for i in range(1, t + 1)])


def units(s: int, t: int) -> Graph:
    """``s K_1 u t K_2``: isolated vertices first, then the edges."""
    if s < 0 or t < 0:
        raise GraphError("unit counts must be non-negative")
    return new_graph(s + 2 * t, [(s + 2 * i, s + 2 * i + 1) for i in range(t)])


def spider(legs: list[int]) -> Graph:
    """Center 0 with a pendant path of each given length."""
    if any(k < 1 for k in legs):
        raise GraphError("spider legs must have length >= 1")
    edges = []
    nxt = 1
    for k in legs:
        prev = 0
        for _ in range(k):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return new_graph(nxt, edges)


def make_F(n: int) -> list[Graph]:
    """Maximizers of d over connected graphs of order ``n``; two graphs at n=6."""
    if n < 2:
        raise GraphError(f"F_n needs n >= 2, got {n}")
    if n % 2:
        return [star_product(1, [2] * ((n - 1) // 2))]
    if n == 6:
        return [path(6), star_product(2, [2, 2])]
    return [star_product(2, [2] * ((n - 2) // 2))]


def make_U(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"U_n needs n >= 3, got {n}")
    if n == 6:
        return star_product(1, [3, 2])
    return star_product(3, [2] * ((n - 3) // 2) + [1] * ((n + 1) % 2))


def make_T(n: int) -> Graph:
    if n < 9:
        raise GraphError(f"T_n is defined for n >= 9, got {n}")
    if n % 2:
        return star_product(1, [1, 1] + [2] * ((n - 3) // 2))
    return star_product(1, [1, 1, 1] + [2] * ((n - 4) // 2))


def _exact(value: Fraction) -> int:
    if value.denominator != 1:
        raise ArithmeticError(f"closed form is not an integer: {value}")
    return int(value)


def f_closed(n: int) -> int:
    if n < 2:
        raise ValueError(f"f(n) needs n >= 2, got {n}")
    if n % 2:
        return _exact(2 ** (n - 1) + (n + 3) * Fraction(2) ** ((n - 5) // 2))
    return _exact(2 ** (n - 1) + (n + 6) * Fraction(2) ** ((n - 6) // 2))


def h_closed(n: int) -> int:
    if n < 3:
        raise ValueError(f"h(n) needs n >= 3, got {n}")
    if n == 6:
        return 42
    if n % 2:
        return _exact(2 ** (n - 1) + (n + 9) * Fraction(2) ** ((n - 7) // 2))
    return _exact(2 ** (n - 1) + (n + 12) * Fraction(2) ** ((n - 8) // 2))


_STANDARD = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "star": star,
    "units": units,
}


def make_standard(kind: str, *args: int) -> Graph:
    try:
        build = _STANDARD[kind]
    except KeyError:
        raise GraphError(f"unknown standard family {kind!r}") from None
    return build(*args)


@dataclass(frozen=True)
class FamilySpec:
    """A named family member in the text form ``kind:key=value,...``.

    Positional values fill the kind's parameters in order, and a list-valued
    parameter (``parts``) absorbs the bare values that follow it::

        path:9   F:6,i=1   U:10   T:9   units:s=2,t=1
        star-product:r=1,parts=2,2,2,2
    """

    kind: str
    params: tuple = field(default_factory=tuple)

    SIGNATURES = {
        "path": ("n",),
        "cycle": ("n",),
        "complete": ("n",),
        "star": ("t",),
        "units": ("s", "t"),
        "spider": ("legs",),
        "star-product": ("r", "parts"),
        "F": ("n", "i"),
        "U": ("n",),
        "T": ("n",),
    }
    LISTS = {"parts", "legs"}
    DEFAULTS = {"i": 0, "parts": ()}

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        m = re.fullmatch(r"\s*([A-Za-z][\w-]*)\s*(?::(.*))?", text)
        if not m:
            raise ValueError(f"bad family spec {text!r}")
        kind = m.group(1)
        if kind not in cls.SIGNATURES:
            raise ValueError(f"unknown family kind {kind!r}; known: {', '.join(cls.SIGNATURES)}")
        names = cls.SIGNATURES[kind]
        values: dict[str, object] = {}
        current = None
        pos = 0
        body = (m.group(2) or "").strip()
        for tok in filter(None, (t.strip() for t in body.split(","))) if body else ():
            if "=" in tok:
                key, raw = (x.strip() for x in tok.split("=", 1))
                if key not in names:
                    raise ValueError(f"{kind} has no parameter {key!r}")
                current = key
            else:
                raw = tok
                if current in cls.LISTS:
                    key = current
                else:
                    while pos < len(names) and names[pos] in values:
                        pos += 1
                    if pos >= len(names):
                        raise ValueError(f"too many values for {kind}")
                    key = current = names[pos]
            try:
                num = int(raw)
            except ValueError:
                raise ValueError(f"parameter {key!r} needs an integer, got {raw!r}") from None
            if key in cls.LISTS:
                values[key] = tuple(values.get(key, ())) + (num,)
            elif key in values:
                raise ValueError(f"parameter {key!r} given twice")
            else:
                values[key] = num
        for name in names:
            if name not in values:
                if name not in cls.DEFAULTS:
                    raise ValueError(f"{kind} needs parameter {name!r}")
                values[name] = cls.DEFAULTS[name]
        return cls(kind, tuple((name, values[name]) for name in names))

    def get(self, name: str):
        return dict(self.params)[name]

    def build(self) -> Graph:
        p = dict(self.params)
        k = self.kind
        if k == "star-product":
            return star_product(p["r"], list(p["parts"]))
        if k == "spider":
            return spider(list(p["legs"]))
        if k == "F":
            members = make_F(p["n"])
            if not 0 <= p["i"] < len(members):
                raise GraphError(f"F_{p['n']} has {len(members)} member(s)")
            return members[p["i"]]
        if k == "U":
            return make_U(p["n"])
        if k == "T":
            return make_T(p["n"])
        return make_standard(k, *(p[name] for name in self.SIGNATURES[k]))

    def to_text(self) -> str:
        parts = []
        for name, value in self.params:
            if isinstance(value, tuple):
                if value:
                    parts.append(f"{name}=" + ",".join(map(str, value)))
            else:
                parts.append(f"{name}={value}")
        return f"{self.kind}:" + ",".join(parts)
