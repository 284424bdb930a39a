"""Exact counting of dissociation sets.

A dissociation set induces a subgraph of maximum degree at most one. Two
independent routes are provided: :func:`count_brute` scans every subset,
:func:`count_recursive` applies the pivot deletion identity

    d(G) = d(G - v) + d(G - N[v]) + sum_{u in N(v)} d(G - (N[u] | N[v]))

on connected components, multiplying over components and memoizing per
component by canonical code.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Union

import numpy as np

from .graph import (
    Graph,
    VertexSet,
    _mask,
    bits_of,
    component_masks,
    emit_graph6,
    induced_subgraph,
)
from .iso import GENERAL_CANON_MAX, canonical_code

BRUTE_MAX = 26
COUNT_BITS = 128

# Below this order a plain Python subset loop beats numpy's per-call overhead.
_PY_SCAN_MAX = 14
_CHUNK = 1 << 20


def is_dissociation_set(g: Graph, s: Union[VertexSet, Iterable[int]]) -> bool:
    mask = _mask(g, s)
    for v in bits_of(mask):
        inside = g.adj[v] & mask
        if inside & (inside - 1):
            return False
    return True


def _is_dissoc_mask(adj, mask: int) -> bool:
    m = mask
    while m:
        low = m & -m
        inside = adj[low.bit_length() - 1] & mask
        if inside & (inside - 1):
            return False
        m ^= low
    return True


def _check_brute_bound(g: Graph) -> None:
    if g.n > BRUTE_MAX:
        raise ValueError(
            f"subset enumeration is limited to {BRUTE_MAX} vertices (2^{BRUTE_MAX} subsets); "
            f"got {g.n}"
        )


def _valid_mask_chunks(g: Graph) -> Iterator[np.ndarray]:
    """Ascending arrays of dissociation-set bitmasks, scanned in chunks."""
    total = 1 << g.n
    adj = [np.uint32(a) for a in g.adj]
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(total, start + _CHUNK), dtype=np.uint32)
        bad = np.zeros(masks.shape, dtype=bool)
        for v in range(g.n):
            member = (masks >> np.uint32(v)) & np.uint32(1)
            bad |= member.astype(bool) & (np.bitwise_count(masks & adj[v]) > 1)
        yield masks[~bad]


def count_brute(g: Graph) -> int:
    """Number of subsets (the empty set included) that are dissociation sets."""
    _check_brute_bound(g)
    if g.n <= _PY_SCAN_MAX:
        adj = g.adj
        return sum(1 for mask in range(1 << g.n) if _is_dissoc_mask(adj, mask))
    return sum(int(chunk.size) for chunk in _valid_mask_chunks(g))


@dataclass(frozen=True)
class DissocPolynomial:
    """Coefficients ``coeffs[k]`` = number of dissociation sets of size ``k``."""

    coeffs: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def total(self) -> int:
        return sum(self.coeffs)

    def __str__(self) -> str:
        return " ".join(map(str, self.coeffs))


def dissociation_polynomial(g: Graph) -> DissocPolynomial:
    _check_brute_bound(g)
    coeffs = [0] * (g.n + 1)
    if g.n <= _PY_SCAN_MAX:
        adj = g.adj
        for mask in range(1 << g.n):
            if _is_dissoc_mask(adj, mask):
                coeffs[mask.bit_count()] += 1
    else:
        for chunk in _valid_mask_chunks(g):
            hist = np.bincount(np.bitwise_count(chunk), minlength=g.n + 1)
            for k, c in enumerate(hist.tolist()):
                coeffs[k] += c
    return DissocPolynomial(tuple(coeffs))


def enumerate_dissociation_sets(g: Graph) -> Iterator[VertexSet]:
    """Every dissociation set once, in ascending bitmask order.

    Vertices are decided from the highest label down, excluding before
    including, so leaves come out in numeric order; partial sets that are
    already invalid are pruned (the property is hereditary).
    """
    _check_brute_bound(g)
    n, adj = g.n, g.adj

    def rec(v: int, chosen: int) -> Iterator[int]:
        if v < 0:
            yield chosen
            return
        yield from rec(v - 1, chosen)
        with_v = chosen | 1 << v
        inside = adj[v] & with_v
        if inside & (inside - 1):
            return
        for u in bits_of(inside):
            nu = adj[u] & with_v
            if nu & (nu - 1):
                return
        yield from rec(v - 1, with_v)

    for mask in rec(n - 1, 0):
        yield VertexSet(n, mask)


def path_count(n: int) -> int:
    """d(P_n) from d(P_n) = d(P_{n-1}) + d(P_{n-2}) + d(P_{n-3}); d(P_0) = 1."""
    if n < 0:
        raise ValueError("path order must be non-negative")
    seq = [1, 2, 4, 7]
    while len(seq) <= n:
        seq.append(seq[-1] + seq[-2] + seq[-3])
    return seq[n]


class MemoTable:
    """Component canonical code -> dissociation count.

    Safe to share between threads: inserts are idempotent, and a second
    insert of a different value for the same key raises.
    """

    def __init__(self):
        self._data: dict[str, int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return len(self._data)

    def __contains__(self, key: str) -> bool:
        return key in self._data

    def get(self, key: str) -> Optional[int]:
        value = self._data.get(key)
        if value is None:
            self.misses += 1
        else:
            self.hits += 1
        return value

    def put(self, key: str, value: int) -> int:
        with self._lock:
            old = self._data.setdefault(key, value)
        if old != value:
            raise RuntimeError(f"memo conflict for {key!r}: {old} != {value}")
        return old


def component_key(g: Graph) -> str:
    """Memo key for a connected component.

    Canonical code wherever the canonizer covers the component; beyond that
    the labeled graph6 string, which still names a single isomorphism class.
    """
    if g.n <= GENERAL_CANON_MAX or g.num_edges <= g.n:
        return canonical_code(g)
    return emit_graph6(g)


PivotRule = Callable[[tuple, int], int]


def max_degree_pivot(adj: tuple, mask: int) -> int:
    """Highest degree inside ``mask``; smallest label wins ties."""
    best, best_deg = -1, -1
    for v in bits_of(mask):
        d = (adj[v] & mask).bit_count()
        if d > best_deg:
            best, best_deg = v, d
    return best


def random_pivot(rng: random.Random) -> PivotRule:
    def pick(adj: tuple, mask: int) -> int:
        return rng.choice(list(bits_of(mask)))
    return pick


def count_recursive(
    g: Graph,
    memo: Optional[MemoTable] = None,
    pivot: PivotRule = max_degree_pivot,
) -> int:
    """Exact d(G) by the pivot deletion identity with component factorization."""
    if memo is None:
        memo = MemoTable()
    adj = g.adj
    local: dict[int, int] = {}

    def count_set(mask: int) -> int:
        total = 1
        for comp in component_masks_of(mask):
            total *= count_connected(comp)
        return total

    def component_masks_of(mask: int) -> list[int]:
        out = []
        left = mask
        while left:
            seen = frontier = left & -left
            while frontier:
                nxt = 0
                for v in bits_of(frontier):
                    nxt |= adj[v]
                frontier = nxt & left & ~seen
                seen |= frontier
            out.append(seen)
            left &= ~seen
        return out

    def count_connected(comp: int) -> int:
        size = comp.bit_count()
        if size == 1:
            return 2
        if size == 2:
            return 4
        hit = local.get(comp)
        if hit is not None:
            return hit
        key = component_key(induced_subgraph(g, comp))
        value = memo.get(key)
        if value is None:
            v = pivot(adj, comp)
            nv = adj[v] & comp
            closed_v = nv | 1 << v
            value = count_set(comp & ~(1 << v)) + count_set(comp & ~closed_v)
            for u in bits_of(nv):
                value += count_set(comp & ~(closed_v | adj[u] | 1 << u))
            if value > 1 << size:
                raise ArithmeticError(f"count {value} exceeds 2^{size}")
            memo.put(key, value)
        local[comp] = value
        return value

    result = count_set((1 << g.n) - 1)
    if result >> COUNT_BITS:
        raise OverflowError(f"count does not fit in {COUNT_BITS} bits")
    return result


def count(g: Graph, memo: Optional[MemoTable] = None) -> int:
    """Production counter; alias of :func:`count_recursive`."""
    return count_recursive(g, memo)


def component_factors(g: Graph, memo: Optional[MemoTable] = None) -> list[int]:
    return [count_recursive(induced_subgraph(g, m), memo) for m in component_masks(g)]
