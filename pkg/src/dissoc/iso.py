"""Canonical labeling and exhaustive generation of small graphs.

A canonical code is the graph6 string of a canonical relabeling, so two
graphs share a code exactly when they are isomorphic. Three routes are
used, picked by an isomorphism-invariant test:

* trees: AHU encoding rooted at the center (any order);
* connected unicyclic graphs: lexicographically least rotation/reflection
  of the rooted-tree encodings hanging off the cycle (any order);
* everything else: individualization-refinement search returning the least
  graph6 string among the leaves, with automorphism pruning (n <= 12).
"""

from __future__ import annotations

import logging
from typing import Iterable, Iterator, Optional, Union

from .graph import (
    Graph,
    Graph6Error,
    _from_adj,
    bits_of,
    component_masks,
    emit_graph6,
    parse_graph6,
)

log = logging.getLogger(__name__)

GENERAL_CANON_MAX = 12
TREE_GEN_MAX = 18
UNICYCLIC_GEN_MAX = 14

# Known tree counts by order (OEIS A000055), used only as a cross-check.
TREE_COUNTS = (1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159,
               7741, 19320, 48629, 123867)


def canonical_code(g: Graph) -> str:
    """Isomorphism-invariant graph6 code of ``g``."""
    m = g.num_edges
    if g.n >= 1 and m <= g.n and len(component_masks(g)) == 1:
        if m == g.n - 1:
            return emit_graph6(_tree_canonical_form(g))
        return emit_graph6(_unicyclic_canonical_form(g))
    if g.n > GENERAL_CANON_MAX:
        raise ValueError(
            f"general canonical labeling is limited to {GENERAL_CANON_MAX} vertices; "
            f"got a {g.n}-vertex graph that is neither a tree nor unicyclic"
        )
    return _search_canonical(g)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_code(g) == canonical_code(h)


# -- rooted tree encodings ---------------------------------------------------

def _rooted(adj, root: int, blocked: int) -> tuple[str, list[int]]:
    """AHU string of the tree hanging from ``root`` (never entering ``blocked``)
    plus its vertices in canonical preorder."""
    parent = {root: -1}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for u in bits_of(adj[v] & ~blocked):
            if u != parent[v]:
                parent[u] = v
                order.append(u)
                stack.append(u)
    enc: dict[int, str] = {}
    kids: dict[int, list[int]] = {v: [] for v in order}
    for v in reversed(order):
        ch = sorted(kids[v], key=enc.__getitem__)
        kids[v] = ch
        enc[v] = "(" + "".join(enc[c] for c in ch) + ")"
        if parent[v] >= 0:
            kids[parent[v]].append(v)
    pre = []
    stack = [root]
    while stack:
        v = stack.pop()
        pre.append(v)
        stack.extend(reversed(kids[v]))
    return enc[root], pre


def _tree_centers(g: Graph) -> list[int]:
    alive = (1 << g.n) - 1
    deg = g.degrees()
    while alive.bit_count() > 2:
        leaves = [v for v in bits_of(alive) if deg[v] <= 1]
        for v in leaves:
            alive &= ~(1 << v)
        for v in leaves:
            for u in bits_of(g.adj[v] & alive):
                deg[u] -= 1
    return list(bits_of(alive))


def _relabel_by_order(g: Graph, order: list[int]) -> Graph:
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    adj = [0] * g.n
    for v in range(g.n):
        m = 0
        for u in bits_of(g.adj[v]):
            m |= 1 << pos[u]
        adj[pos[v]] = m
    return _from_adj(adj)


def tree_encoding(g: Graph) -> str:
    """Center-rooted AHU string; equal for isomorphic trees."""
    centers = _tree_centers(g)
    if len(centers) == 1:
        return _rooted(g.adj, centers[0], 0)[0]
    a, b = centers
    ea = _rooted(g.adj, a, 1 << b)[0]
    eb = _rooted(g.adj, b, 1 << a)[0]
    return "[" + min(ea, eb) + max(ea, eb) + "]"


def _tree_canonical_form(g: Graph) -> Graph:
    centers = _tree_centers(g)
    if len(centers) == 1:
        order = _rooted(g.adj, centers[0], 0)[1]
    else:
        a, b = centers
        ea, pa = _rooted(g.adj, a, 1 << b)
        eb, pb = _rooted(g.adj, b, 1 << a)
        order = pa + pb if ea <= eb else pb + pa
    return _relabel_by_order(g, order)


def _unicyclic_canonical_form(g: Graph) -> Graph:
    deg = g.degrees()
    alive = (1 << g.n) - 1
    stack = [v for v in range(g.n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        alive &= ~(1 << v)
        for u in bits_of(g.adj[v] & alive):
            deg[u] -= 1
            if deg[u] == 1:
                stack.append(u)
    start = (alive & -alive).bit_length() - 1
    cycle = [start]
    prev = -1
    cur = start
    while True:
        nxt = [u for u in bits_of(g.adj[cur] & alive) if u != prev]
        step = nxt[0]
        if step == start:
            break
        cycle.append(step)
        prev, cur = cur, step
        if len(cycle) > g.n:
            raise AssertionError("cycle walk did not close")
    hang = [_rooted(g.adj, c, alive) for c in cycle]
    k = len(cycle)
    best = None
    for direction in (1, -1):
        for r in range(k):
            idx = [(r + direction * i) % k for i in range(k)]
            key = tuple(hang[i][0] for i in idx)
            if best is None or key < best[0]:
                best = (key, idx)
    order = []
    for i in best[1]:
        order.extend(hang[i][1])
    return _relabel_by_order(g, order)


# -- general individualization-refinement ------------------------------------

def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement, splitting in an order-invariant way."""
    changed = True
    while changed:
        changed = False
        for s in range(len(cells)):
            wmask = 0
            for w in cells[s]:
                wmask |= 1 << w
            out = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for x in cell:
                    groups.setdefault((adj[x] & wmask).bit_count(), []).append(x)
                if len(groups) == 1:
                    out.append(cell)
                else:
                    out.extend(groups[k] for k in sorted(groups))
                    changed = True
            if changed:
                cells = out
                break
    return cells


def _leaf_code(adj, order: list[int]) -> str:
    return emit_graph6(_relabel_by_order(_from_adj(list(adj)), order))


def _orbit_reps(autos: list[list[int]], prefix: list[int], cell: list[int]) -> dict[int, int]:
    parent = {x: x for x in cell}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in autos:
        if any(gamma[p] != p for p in prefix):
            continue
        for x in cell:
            y = gamma[x]
            if y in parent:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
    return {x: find(x) for x in cell}


def _search_canonical(g: Graph) -> str:
    adj = g.adj
    if g.n == 0:
        return emit_graph6(g)
    start = _refine(adj, [list(range(g.n))])
    best: list = [None, None]  # code, leaf order
    autos: list[list[int]] = []

    def visit(cells: list[list[int]], prefix: list[int]) -> None:
        target = None
        for c in cells:
            if len(c) > 1 and (target is None or len(c) < len(target)):
                target = c
        if target is None:
            order = [c[0] for c in cells]
            code = _leaf_code(adj, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            elif code == best[0]:
                gamma = [0] * g.n
                for a, b in zip(best[1], order):
                    gamma[a] = b
                autos.append(gamma)
            return
        ti = next(i for i, c in enumerate(cells) if c is target)
        done: set[int] = set()
        for x in sorted(target):
            if done:
                reps = _orbit_reps(autos, prefix, target)
                if reps[x] in {reps[y] for y in done}:
                    continue
            rest = [y for y in target if y != x]
            child = cells[:ti] + [[x], rest] + cells[ti + 1:]
            visit(_refine(adj, child), prefix + [x])
            done.add(x)

    visit(start, [])
    return best[0]


# -- generation ---------------------------------------------------------------

def _level_sequence_graph(levels: list[int]) -> Graph:
    n = len(levels)
    adj = [0] * n
    stack: list[int] = []
    for i, lv in enumerate(levels):
        while stack and levels[stack[-1]] >= lv:
            stack.pop()
        if stack:
            p = stack[-1]
            adj[i] |= 1 << p
            adj[p] |= 1 << i
        stack.append(i)
    return _from_adj(adj)


def _next_rooted(seq: list[int], p: Optional[int] = None) -> Optional[list[int]]:
    # Beyer-Hedetniemi successor on rooted level sequences.
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split_first_subtree(seq: list[int]) -> tuple[list[int], list[int]]:
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    first = [x - 1 for x in seq[1:m]]
    rest = [0] + seq[m:]
    return first, rest


def _free_tree_sequences(n: int) -> Iterator[list[int]]:
    """Level sequences of free trees, one per isomorphism class (WROM)."""
    seq: Optional[list[int]] = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        first, rest = _split_first_subtree(seq)
        h1, h2 = max(first), max(rest)
        ok = h2 >= h1 and not (
            h2 == h1 and (len(first) > len(rest) or (len(first) == len(rest) and first > rest))
        )
        if ok:
            yield seq
            seq = _next_rooted(seq)
        else:
            p = len(first)
            nxt = _next_rooted(seq, p)
            if seq[p] > 2:
                h = max(_split_first_subtree(nxt)[0])
                tail = list(range(1, h + 2))
                nxt[-len(tail):] = tail
            seq = nxt


def generate_trees(n: int) -> Iterator[Graph]:
    """All free trees on ``n`` vertices up to isomorphism, ascending canonical code.

    Each yielded graph is the canonical representative of its class.
    """
    if not 1 <= n <= TREE_GEN_MAX:
        raise ValueError(f"tree order must be in 1..{TREE_GEN_MAX}, got {n}")
    if n <= 2:
        yield _from_adj([0] * n) if n == 1 else _from_adj([2, 1])
        return
    codes = sorted(canonical_code(_level_sequence_graph(s)) for s in _free_tree_sequences(n))
    for code in codes:
        yield parse_graph6(code)


def generate_unicyclic(n: int) -> Iterator[Graph]:
    """Connected unicyclic graphs on ``n`` vertices up to isomorphism.

    Every tree gets every missing edge in turn; results are deduplicated by
    canonical code and yielded in ascending code order.
    """
    if not 3 <= n <= UNICYCLIC_GEN_MAX:
        raise ValueError(f"unicyclic order must be in 3..{UNICYCLIC_GEN_MAX}, got {n}")
    seen: set[str] = set()
    for t in generate_trees(n):
        adj = list(t.adj)
        for u in range(n):
            for v in range(u + 1, n):
                if adj[u] >> v & 1:
                    continue
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                seen.add(emit_graph6(_unicyclic_canonical_form(_from_adj(adj))))
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
    for code in sorted(seen):
        yield parse_graph6(code)


def generate_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """All graphs on ``n`` vertices up to isomorphism, by one-vertex extension.

    Practical for ``n <= 7`` (1044 graphs on seven vertices).
    """
    if not 0 <= n <= 8:
        raise ValueError(f"graph order must be in 0..8, got {n}")
    level = {emit_graph6(_from_adj([]))}
    for k in range(n):
        nxt: set[str] = set()
        for code in level:
            h = parse_graph6(code)
            for nb in range(1 << k):
                adj = list(h.adj)
                for u in bits_of(nb):
                    adj[u] |= 1 << k
                adj.append(nb)
                nxt.add(_search_canonical(_from_adj(adj)))
        level = nxt
    for code in sorted(level):
        g = parse_graph6(code)
        if connected and len(component_masks(g)) > 1:
            continue
        yield g


class Graph6StreamError(ValueError):
    def __init__(self, line_no: int, cause: Graph6Error):
        super().__init__(f"line {line_no}: {cause}")
        self.line_no = line_no
        self.cause = cause


def read_graph6_stream(
    source: Iterable[Union[str, bytes]],
    strict: bool = True,
    errors: Optional[list[Graph6StreamError]] = None,
) -> Iterator[Graph]:
    """Parse graph6 lines in order, skipping blank lines.

    A malformed line raises :class:`Graph6StreamError` when ``strict``;
    otherwise it is logged, appended to ``errors`` if given, and skipped.
    """
    for no, raw in enumerate(source, start=1):
        line = raw.decode("ascii", errors="replace") if isinstance(raw, bytes) else raw
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except Graph6Error as exc:
            err = Graph6StreamError(no, exc)
            if strict:
                raise err from exc
            log.warning("skipping malformed graph6 %s", err)
            if errors is not None:
                errors.append(err)
