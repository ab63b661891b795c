"""Core graph types and the transformations between them.

All four structures are immutable: adjacency is stored as tuples of Python
ints used as bit vectors (bit j of ``adj[i]`` is the (i, j) entry), so every
neighborhood test is a couple of word operations.  Vertices are 0-indexed
throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Literal, Optional, Sequence

Side = Literal["X", "Y"]


def _mask_from_bits(bits: Iterable[int]) -> int:
    mask = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"matrix entries must be 0 or 1, got {b!r}")
        mask |= b << j
    return mask


def _bits(mask: int, width: int) -> tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(width))


def bit_indices(mask: int) -> tuple[int, ...]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class BipartiteGraph:
    """Two-sided graph with color classes X and Y and a 0/1 bi-adjacency.

    ``adj[i]`` is the neighborhood of x_i as a bit mask over Y.
    """

    x_size: int
    y_size: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.x_size < 0 or self.y_size < 0:
            raise ValueError("side sizes must be non-negative")
        if len(self.adj) != self.x_size:
            raise ValueError(f"expected {self.x_size} rows, got {len(self.adj)}")
        limit = 1 << self.y_size
        for i, row in enumerate(self.adj):
            if not 0 <= row < limit:
                raise ValueError(f"row {i} has bits outside the {self.y_size} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], y_size: Optional[int] = None) -> "BipartiteGraph":
        if y_size is None:
            y_size = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != y_size:
                raise ValueError("ragged bi-adjacency matrix")
        return cls(len(rows), y_size, tuple(_mask_from_bits(r) for r in rows))

    @classmethod
    def from_edges(cls, x_size: int, y_size: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        rows = [0] * x_size
        for i, j in edges:
            if not (0 <= i < x_size and 0 <= j < y_size):
                raise ValueError(f"edge ({i},{j}) out of range")
            rows[i] |= 1 << j
        return cls(x_size, y_size, tuple(rows))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def x_neighbors(self, i: int) -> int:
        """Neighborhood of x_i as a bit mask over Y."""
        return self.adj[i]

    def y_neighbors(self, j: int) -> int:
        """Neighborhood of y_j as a bit mask over X."""
        mask = 0
        for i, row in enumerate(self.adj):
            mask |= (row >> j & 1) << i
        return mask

    def columns(self) -> tuple[int, ...]:
        return tuple(self.y_neighbors(j) for j in range(self.y_size))

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_bits(row, self.y_size) for row in self.adj)

    def transpose(self) -> "BipartiteGraph":
        """Swap the two sides."""
        return BipartiteGraph(self.y_size, self.x_size, self.columns())


@dataclass(frozen=True)
class SplitGraph:
    """Graph partitioned into a clique K and a stable set I.

    Only the K-I cross edges are stored; K-K edges are implicit.
    ``cross[v]`` is the I-neighborhood of the v-th clique vertex.
    """

    k_size: int
    i_size: int
    cross: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.k_size < 0 or self.i_size < 0:
            raise ValueError("part sizes must be non-negative")
        if len(self.cross) != self.k_size:
            raise ValueError(f"expected {self.k_size} rows, got {len(self.cross)}")
        limit = 1 << self.i_size
        for v, row in enumerate(self.cross):
            if not 0 <= row < limit:
                raise ValueError(f"row {v} has bits outside the {self.i_size} columns")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], i_size: Optional[int] = None) -> "SplitGraph":
        if i_size is None:
            i_size = len(rows[0]) if rows else 0
        return cls(len(rows), i_size, tuple(_mask_from_bits(r) for r in rows))

    def i_neighbors(self, v: int) -> int:
        """I-neighborhood of clique vertex v, as a mask over I."""
        return self.cross[v]

    def k_neighbors(self, u: int) -> int:
        """Neighborhood of stable vertex u, as a mask over K."""
        mask = 0
        for v, row in enumerate(self.cross):
            mask |= (row >> u & 1) << v
        return mask

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_bits(row, self.i_size) for row in self.cross)


@dataclass(frozen=True)
class GeneralGraph:
    """Simple undirected graph; ``adj[v]`` is the neighborhood mask of v."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.adj)}")
        limit = 1 << self.n
        for v, row in enumerate(self.adj):
            if not 0 <= row < limit:
                raise ValueError(f"row {v} out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(self.n):
            for w in range(v + 1, self.n):
                if (self.adj[v] >> w & 1) != (self.adj[w] >> v & 1):
                    raise ValueError(f"adjacency not symmetric at ({v},{w})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "GeneralGraph":
        rows = [0] * n
        for v, w in edges:
            if v == w:
                raise ValueError(f"self-loop at vertex {v}")
            if not (0 <= v < n and 0 <= w < n):
                raise ValueError(f"edge ({v},{w}) out of range")
            rows[v] |= 1 << w
            rows[w] |= 1 << v
        return cls(n, tuple(rows))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "GeneralGraph":
        return cls(len(rows), tuple(_mask_from_bits(r) for r in rows))

    def has_edge(self, v: int, w: int) -> bool:
        return bool(self.adj[v] >> w & 1)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def closed_neighbors(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(_bits(row, self.n) for row in self.adj)


@dataclass(frozen=True)
class Hypergraph:
    """Vertex count plus an ordered family of hyperedges (masks over vertices)."""

    n: int
    edges: tuple[int, ...]

    def __post_init__(self) -> None:
        limit = 1 << self.n
        for i, e in enumerate(self.edges):
            if not 0 <= e < limit:
                raise ValueError(f"hyperedge {i} has vertices outside 0..{self.n - 1}")

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "Hypergraph":
        masks = []
        for s in sets:
            mask = 0
            for v in s:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} out of range")
                mask |= 1 << v
            masks.append(mask)
        return cls(n, tuple(masks))

    def edge_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(bit_indices(e)) for e in self.edges)

    def column(self, v: int) -> int:
        """Incidence column of vertex v: the mask of hyperedges containing v."""
        mask = 0
        for i, e in enumerate(self.edges):
            mask |= (e >> v & 1) << i
        return mask


# ---------------------------------------------------------------------------
# Transformations


def mirror(b: BipartiteGraph) -> BipartiteGraph:
    """Bipartite complement: flip every cross pair, keep the color classes."""
    full = (1 << b.y_size) - 1
    return BipartiteGraph(b.x_size, b.y_size, tuple(row ^ full for row in b.adj))


def split_side(b: BipartiteGraph, side: Side) -> SplitGraph:
    """Complete the chosen side to a clique; the other side becomes stable."""
    if side == "X":
        return SplitGraph(b.x_size, b.y_size, b.adj)
    if side == "Y":
        return SplitGraph(b.y_size, b.x_size, b.columns())
    raise ValueError(f"side must be 'X' or 'Y', got {side!r}")


def bip(g: SplitGraph) -> BipartiteGraph:
    """Forget the clique edges: K becomes X, I becomes Y."""
    return BipartiteGraph(g.k_size, g.i_size, g.cross)


def mirror_split(g: SplitGraph) -> SplitGraph:
    """Complement the cross edges, keeping the split partition."""
    full = (1 << g.i_size) - 1
    return SplitGraph(g.k_size, g.i_size, tuple(row ^ full for row in g.cross))


def mirror_hypergraph(h: Hypergraph) -> Hypergraph:
    """Replace every hyperedge by its complement in the vertex set."""
    full = (1 << h.n) - 1
    return Hypergraph(h.n, tuple(e ^ full for e in h.edges))


def complement(g: GeneralGraph) -> GeneralGraph:
    full = (1 << g.n) - 1
    return GeneralGraph(g.n, tuple((row ^ full) & ~(1 << v) for v, row in enumerate(g.adj)))


def to_general(g: "SplitGraph | BipartiteGraph") -> GeneralGraph:
    """Flatten to a plain graph; the K (or X) vertices come first."""
    if isinstance(g, BipartiteGraph):
        n = g.x_size + g.y_size
        rows = [row << g.x_size for row in g.adj]
        rows.extend(g.y_neighbors(j) for j in range(g.y_size))
        return GeneralGraph(n, tuple(rows))
    if isinstance(g, SplitGraph):
        n = g.k_size + g.i_size
        kfull = (1 << g.k_size) - 1
        rows = [(g.cross[v] << g.k_size) | (kfull & ~(1 << v)) for v in range(g.k_size)]
        rows.extend(g.k_neighbors(u) for u in range(g.i_size))
        return GeneralGraph(n, tuple(rows))
    raise TypeError(f"cannot flatten {type(g).__name__}")


def induced(g: "GeneralGraph | BipartiteGraph", subset) -> "GeneralGraph | BipartiteGraph":
    """Induced subgraph with indices compacted.

    For a GeneralGraph, ``subset`` is an iterable of vertices.  For a
    BipartiteGraph it is a pair ``(x_subset, y_subset)``; side membership is
    preserved.
    """
    if isinstance(g, GeneralGraph):
        verts = list(subset)
        for v in verts:
            if not 0 <= v < g.n:
                raise IndexError(f"vertex {v} out of range")
        return GeneralGraph.from_edges(
            len(verts),
            (
                (a, b)
                for a, va in enumerate(verts)
                for b, vb in enumerate(verts)
                if a < b and g.has_edge(va, vb)
            ),
        )
    if isinstance(g, BipartiteGraph):
        xs, ys = subset
        xs = list(xs)
        ys = list(ys)
        for i in xs:
            if not 0 <= i < g.x_size:
                raise IndexError(f"X-vertex {i} out of range")
        for j in ys:
            if not 0 <= j < g.y_size:
                raise IndexError(f"Y-vertex {j} out of range")
        rows = []
        for i in xs:
            row = 0
            for jj, j in enumerate(ys):
                row |= (g.adj[i] >> j & 1) << jj
            rows.append(row)
        return BipartiteGraph(len(xs), len(ys), tuple(rows))
    raise TypeError(f"cannot take induced subgraph of {type(g).__name__}")


def delete_bipartite_vertex(b: BipartiteGraph, side: Side, index: int) -> BipartiteGraph:
    """Remove one vertex from the given side."""
    if side == "X":
        return induced(b, ([i for i in range(b.x_size) if i != index], range(b.y_size)))
    return induced(b, (range(b.x_size), [j for j in range(b.y_size) if j != index]))


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms (small instances only)


def _degree_multiset(masks: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(m.bit_count() for m in masks))


def _bip_iso_fixed(a: BipartiteGraph, b: BipartiteGraph) -> bool:
    """Isomorphism test with X mapping to X and Y mapping to Y."""
    if (a.x_size, a.y_size) != (b.x_size, b.y_size):
        return False
    if _degree_multiset(a.adj) != _degree_multiset(b.adj):
        return False
    acols, bcols = a.columns(), b.columns()
    if _degree_multiset(acols) != _degree_multiset(bcols):
        return False

    # Backtrack over X-bijections, pruning on the multiset of partial column
    # signatures; once X is fully mapped, a Y-bijection exists iff the full
    # column multisets coincide.
    deg_b: dict[int, list[int]] = {}
    for v, row in enumerate(b.adj):
        deg_b.setdefault(row.bit_count(), []).append(v)

    order = sorted(range(a.x_size), key=lambda i: -a.adj[i].bit_count())
    image: list[int] = []
    used = [False] * b.x_size

    def signatures(cols: Sequence[int], xs: Sequence[int]) -> tuple[int, ...]:
        sigs = []
        for col in cols:
            sig = 0
            for pos, x in enumerate(xs):
                sig |= (col >> x & 1) << pos
            sigs.append(sig)
        return tuple(sorted(sigs))

    def extend(depth: int) -> bool:
        if depth == len(order):
            return True
        u = order[depth]
        for v in deg_b.get(a.adj[u].bit_count(), ()):
            if used[v]:
                continue
            used[v] = True
            image.append(v)
            if signatures(acols, order[: depth + 1]) == signatures(bcols, image):
                if extend(depth + 1):
                    used[v] = False
                    image.pop()
                    return True
            used[v] = False
            image.pop()
        return False

    return extend(0)


def iso_bipartite(a: BipartiteGraph, b: BipartiteGraph, allow_side_swap: bool = False) -> bool:
    """Bipartite isomorphism for small instances (backtracking search).

    Relabels within each side; with ``allow_side_swap`` the two sides may also
    be exchanged.  Intended for graphs with at most ~16 vertices per side; no
    effort is made to be fast beyond that.
    """
    if _bip_iso_fixed(a, b):
        return True
    if allow_side_swap and _bip_iso_fixed(a, b.transpose()):
        return True
    return False


def iso_general(a: GeneralGraph, b: GeneralGraph) -> bool:
    """Isomorphism of small simple graphs by degree-pruned backtracking."""
    if a.n != b.n or a.edge_count() != b.edge_count():
        return False
    if _degree_multiset(a.adj) != _degree_multiset(b.adj):
        return False
    order = sorted(range(a.n), key=lambda v: -a.degree(v))
    image = [-1] * a.n
    used = [False] * b.n

    def extend(depth: int) -> bool:
        if depth == a.n:
            return True
        u = order[depth]
        for v in range(b.n):
            if used[v] or a.degree(u) != b.degree(v):
                continue
            ok = True
            for prev in order[:depth]:
                if a.has_edge(u, prev) != b.has_edge(v, image[prev]):
                    ok = False
                    break
            if ok:
                image[u] = v
                used[v] = True
                if extend(depth + 1):
                    return True
                used[v] = False
                image[u] = -1
        return False

    return extend(0)


def canonical_bipartite(b: BipartiteGraph, allow_side_swap: bool = True) -> tuple:
    """Lexicographically minimal row matrix over admissible permutations.

    Rows can be permuted freely, so for a fixed column order the minimum is
    the sorted row tuple; minimize that over all column orders (and over the
    transpose when side swap is admissible).  Used to deduplicate enumeration
    output; exponential in the column count.
    """
    best = None
    for mat in (b, b.transpose()) if allow_side_swap else (b,):
        rows = mat.rows()
        inner = None
        for perm in itertools.permutations(range(mat.y_size)):
            cand = tuple(sorted(tuple(row[j] for j in perm) for row in rows))
            if inner is None or cand < inner:
                inner = cand
        key = (mat.x_size, mat.y_size, inner)
        if best is None or key < best:
            best = key
    assert best is not None
    return best
