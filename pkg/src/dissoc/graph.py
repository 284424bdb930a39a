"""Small immutable simple graphs stored as per-vertex neighbor bitsets.

Vertices are ``0..n-1``. Every operation returns a new :class:`Graph`;
deleting vertices relabels the survivors by ascending original label.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

MAX_VERTICES = 126


class GraphError(ValueError):
    """Invalid graph construction or vertex reference."""


class Graph6Error(ValueError):
    """Malformed graph6 text. ``offset`` is the byte where parsing failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise GraphError(f"vertex {v} has a neighbor out of range")
            if nb >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            w = nb
            while w:
                low = w & -w
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
                w ^= low

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    @property
    def num_edges(self) -> int:
        return sum(nb.bit_count() for nb in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [nb.bit_count() for nb in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, nb in enumerate(self.adj):
            for v in bits_of(nb >> (u + 1) << (u + 1)):
                out.append((u, v))
        return out

    def neighbors(self, v: int) -> list[int]:
        return list(bits_of(self.adj[v]))


@dataclass(frozen=True)
class VertexSet:
    """A subset of the vertices of an ``n``-vertex graph."""

    n: int
    bits: int

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise GraphError(f"vertex set {self.bits:#x} not within 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in vertices:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range for n={n}")
            bits |= 1 << v
        return cls(n, bits)

    def __iter__(self) -> Iterator[int]:
        return bits_of(self.bits)

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.bits >> v & 1)

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self)})"


VertexLike = Union[VertexSet, Iterable[int]]


def bits_of(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask(g: Graph, s: VertexLike) -> int:
    if isinstance(s, VertexSet):
        if s.n != g.n:
            raise GraphError("vertex set belongs to a graph of a different order")
        return s.bits
    return VertexSet.of(g.n, s).bits


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def new_graph(n: int, edges: Iterable[tuple[int, int]] = ()) -> Graph:
    """Build a graph on ``n`` vertices; repeated edges collapse."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def _from_adj(adj: list[int]) -> Graph:
    # Trusted internal constructor; skips the symmetry walk.
    g = object.__new__(Graph)
    object.__setattr__(g, "n", len(adj))
    object.__setattr__(g, "adj", tuple(adj))
    return g


def induced_subgraph(g: Graph, keep: int) -> Graph:
    """Subgraph induced by the bitmask ``keep``, relabeled in ascending order."""
    if keep == (1 << g.n) - 1:
        return g
    order = list(bits_of(keep))
    index = {v: i for i, v in enumerate(order)}
    adj = []
    for v in order:
        nb = 0
        for u in bits_of(g.adj[v] & keep):
            nb |= 1 << index[u]
        adj.append(nb)
    return _from_adj(adj)


def delete_vertices(g: Graph, s: VertexLike) -> Graph:
    full = (1 << g.n) - 1
    return induced_subgraph(g, full & ~_mask(g, s))


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not in graph")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return _from_adj(adj)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    if g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) already present")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return _from_adj(adj)


def neighborhood(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return VertexSet(g.n, g.adj[v])


def closed_neighborhood(g: Graph, v: int) -> VertexSet:
    _check_vertex(g, v)
    return VertexSet(g.n, g.adj[v] | 1 << v)


def component_masks(g: Graph) -> list[int]:
    """Vertex bitmasks of the connected components, by smallest member."""
    out = []
    left = (1 << g.n) - 1
    adj = g.adj
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            for v in bits_of(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        out.append(seen)
        left &= ~seen
    return out


def components(g: Graph) -> list[Graph]:
    return [induced_subgraph(g, m) for m in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return len(component_masks(g)) <= 1


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.num_edges == g.n - 1 and is_connected(g)


def are_true_twins(g: Graph, u: int, v: int) -> bool:
    """``N[u] == N[v]``; implies ``u`` and ``v`` are adjacent."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError("twin test needs two distinct vertices")
    return g.adj[u] | 1 << u == g.adj[v] | 1 << v


def are_false_twins(g: Graph, u: int, v: int) -> bool:
    """``N(u) == N(v)``; implies ``u`` and ``v`` are not adjacent."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    if u == v:
        raise GraphError("twin test needs two distinct vertices")
    return g.adj[u] == g.adj[v]


def cycle_space_dim(g: Graph) -> int:
    """``|E| - |V| + (number of components)``; equals ``|E| - |V| + 1`` when connected."""
    return g.num_edges - g.n + len(component_masks(g))


def pendant_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if g.degree(v) == 1]


def pendant_neighbors(g: Graph, v: int) -> list[int]:
    return [u for u in bits_of(g.adj[v]) if g.degree(u) == 1]


def is_quasi_pendant(g: Graph, v: int) -> bool:
    return g.degree(v) >= 2 and bool(pendant_neighbors(g, v))


def disjoint_union(*graphs: Graph) -> Graph:
    adj: list[int] = []
    for h in graphs:
        off = len(adj)
        adj.extend(nb << off for nb in h.adj)
    if len(adj) > MAX_VERTICES:
        raise GraphError(f"union has {len(adj)} vertices, cap is {MAX_VERTICES}")
    return _from_adj(adj)


def relabel(g: Graph, perm: list[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError("relabeling is not a permutation of the vertices")
    adj = [0] * g.n
    for v, nb in enumerate(g.adj):
        m = 0
        for u in bits_of(nb):
            m |= 1 << perm[u]
        adj[perm[v]] = m
    return _from_adj(adj)


# graph6: size field, then the upper triangle column by column
# (x(0,1), x(0,2), x(1,2), x(0,3), ...) packed big-endian into 6-bit groups.

def emit_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(n + 63)
    else:
        head = "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    chunks = []
    acc = 0
    k = 0
    adj = g.adj
    for j in range(1, n):
        col = adj[j]
        for i in range(j):
            acc = acc << 1 | (col >> i & 1)
            k += 1
            if k == 6:
                chunks.append(chr(acc + 63))
                acc = k = 0
    if k:
        chunks.append(chr((acc << (6 - k)) + 63))
    return head + "".join(chunks)


def parse_graph6(line: Union[str, bytes]) -> Graph:
    if isinstance(line, bytes):
        line = line.decode("ascii", errors="replace")
    text = line.rstrip("\r\n")
    pos = 0
    if text.startswith(">>graph6<<"):
        pos = len(">>graph6<<")
    for i in range(pos, len(text)):
        if not 63 <= ord(text[i]) <= 126:
            raise Graph6Error(f"invalid graph6 character {text[i]!r}", i)
    if pos >= len(text):
        raise Graph6Error("missing size field", pos)
    if text[pos] != "~":
        n = ord(text[pos]) - 63
        pos += 1
    else:
        if pos + 1 < len(text) and text[pos + 1] == "~":
            raise Graph6Error("8-byte size field exceeds the vertex cap", pos)
        if pos + 4 > len(text):
            raise Graph6Error("truncated 4-byte size field", len(text))
        n = 0
        for c in text[pos + 1 : pos + 4]:
            n = n << 6 | (ord(c) - 63)
        if n <= 62:
            raise Graph6Error("non-minimal 4-byte size field", pos)
        pos += 4
    if n > MAX_VERTICES:
        raise Graph6Error(f"graph has {n} vertices, cap is {MAX_VERTICES}", pos - 1)
    nbits = n * (n - 1) // 2
    need = -(-nbits // 6)
    body = text[pos:]
    if len(body) < need:
        raise Graph6Error(f"expected {need} adjacency bytes, found {len(body)}", len(text))
    if len(body) > need:
        raise Graph6Error("trailing data after adjacency bytes", pos + need)
    value = 0
    for c in body:
        value = value << 6 | (ord(c) - 63)
    pad = need * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits", len(text) - 1)
    value >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return _from_adj(adj)
