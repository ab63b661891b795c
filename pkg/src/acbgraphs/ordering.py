"""Doubly lexical orderings of 0/1 matrices and the Gamma pattern.

A Gamma is a 2x2 submatrix with three 1s and a 0 in the bottom-right corner,
read through the row and column permutations.  The reading convention used
for "doubly lexical" here: row vectors are compared with the LAST column of
the column order as most significant digit and must be non-decreasing from
top to bottom; column vectors symmetrically, with the last row as most
significant, non-decreasing left to right.  The convention is pinned down
empirically by the exhaustive equivalence tests against induced-cycle search
(see the test suite).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import BipartiteGraph, bit_indices


class OrderingInternalError(RuntimeError):
    """An ordering routine produced output that failed its own self-check."""


@dataclass(frozen=True)
class OrderedMatrix:
    """A 0/1 matrix together with explicit row and column permutations.

    ``row_order[p]`` is the original row shown at permuted position p.
    """

    matrix: tuple[tuple[int, ...], ...]
    row_order: tuple[int, ...]
    col_order: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.matrix)
        m = len(self.matrix[0]) if self.matrix else 0
        for row in self.matrix:
            if len(row) != m:
                raise ValueError("ragged matrix")
            if any(e not in (0, 1) for e in row):
                raise ValueError("entries must be 0/1")
        if sorted(self.row_order) != list(range(n)):
            raise ValueError("row_order is not a permutation")
        if sorted(self.col_order) != list(range(m)):
            raise ValueError("col_order is not a permutation")

    @property
    def n_rows(self) -> int:
        return len(self.matrix)

    @property
    def n_cols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def permuted(self) -> tuple[tuple[int, ...], ...]:
        """The matrix as displayed, i.e. read through both permutations."""
        return tuple(
            tuple(self.matrix[r][c] for c in self.col_order) for r in self.row_order
        )


def _permuted_row_masks(m: OrderedMatrix) -> list[int]:
    """Permuted rows as bit masks; bit p is the entry in permuted column p."""
    out = []
    for r in m.row_order:
        row = m.matrix[r]
        mask = 0
        for p, c in enumerate(m.col_order):
            mask |= row[c] << p
        out.append(mask)
    return out


def find_gamma(m: OrderedMatrix) -> Optional[tuple[int, int, int, int]]:
    """A Gamma witness (i, i', j, j') in permuted coordinates, or None.

    Witness semantics: permuted rows i < i' and columns j < j' with entries
    (i,j) = (i,j') = (i',j) = 1 and (i',j') = 0.
    """
    masks = _permuted_row_masks(m)
    n = len(masks)
    for a in range(n):
        ra = masks[a]
        if ra.bit_count() < 2:
            continue
        for b in range(a + 1, n):
            rb = masks[b]
            common = ra & rb
            if not common:
                continue
            missing = ra & ~rb
            if not missing:
                continue
            j = (common & -common).bit_length() - 1
            jp = missing.bit_length() - 1
            if j < jp:
                return (a, b, j, jp)
    return None


def is_gamma_free(m: OrderedMatrix) -> bool:
    return find_gamma(m) is None


def _row_key(matrix, col_order):
    def key(r):
        row = matrix[r]
        return tuple(row[c] for c in reversed(col_order))

    return key


def _col_key(matrix, row_order):
    def key(c):
        return tuple(matrix[r][c] for r in reversed(row_order))

    return key


def is_doubly_lexical(m: OrderedMatrix) -> bool:
    """Validate the double-lexicality predicate under the module convention."""
    rk = _row_key(m.matrix, list(m.col_order))
    keys = [rk(r) for r in m.row_order]
    if any(keys[i] > keys[i + 1] for i in range(len(keys) - 1)):
        return False
    ck = _col_key(m.matrix, list(m.row_order))
    keys = [ck(c) for c in m.col_order]
    return all(keys[i] <= keys[i + 1] for i in range(len(keys) - 1))


def doubly_lexical_order(matrix: Sequence[Sequence[int]]) -> OrderedMatrix:
    """A doubly lexical ordering of a 0/1 matrix.

    Alternately stable-sorts the row order against the current column order
    and vice versa.  Every adjacent swap performed by either sort strictly
    increases the matrix read as one long word (most significant: last
    column, read bottom to top), so the loop terminates; at the fixed point
    both orders are sorted, which is the definition.
    """
    mat = tuple(tuple(row) for row in matrix)
    n = len(mat)
    m = len(mat[0]) if mat else 0
    row_order = list(range(n))
    col_order = list(range(m))
    cap = n * m + n + m + 8
    for _ in range(cap):
        new_rows = sorted(row_order, key=_row_key(mat, col_order))
        new_cols = sorted(col_order, key=_col_key(mat, new_rows))
        if new_rows == row_order and new_cols == col_order:
            break
        row_order, col_order = new_rows, new_cols
    else:
        raise OrderingInternalError("alternating sort did not converge")
    result = OrderedMatrix(mat, tuple(row_order), tuple(col_order))
    if not is_doubly_lexical(result):
        raise OrderingInternalError("produced ordering is not doubly lexical")
    return result


def exists_gamma_free_ordering(matrix: Sequence[Sequence[int]]) -> bool:
    """Exhaustive convention-independent check for a Gamma-free ordering.

    For each column permutation, placing row a above row b is forbidden iff
    the pair forms a Gamma (some common 1 left of a 1 of a missing in b); a
    compatible row order exists iff the forced "must precede" relation is
    acyclic.  Exhaustive over column permutations of the smaller dimension;
    limited to 36 cells.
    """
    mat = [tuple(row) for row in matrix]
    n = len(mat)
    m = len(mat[0]) if mat else 0
    if n * m > 36:
        raise ValueError(f"matrix too large for exhaustive search: {n}x{m}")
    if m > n:  # Gamma is preserved under transposition; permute the smaller side
        mat = [tuple(mat[i][j] for i in range(n)) for j in range(m)]
        n, m = m, n
    if n == 0 or m == 0:
        return True

    full_rows = [tuple(row) for row in mat]
    for perm in itertools.permutations(range(m)):
        masks = []
        for row in full_rows:
            mask = 0
            for p, c in enumerate(perm):
                mask |= row[c] << p
            masks.append(mask)
        # must_precede[a] = set of rows that have to come before row a
        must_precede: list[int] = [0] * n
        ok = True
        for a in range(n):
            for b in range(n):
                if a == b:
                    continue
                common = masks[a] & masks[b]
                missing = masks[a] & ~masks[b]
                if common and missing:
                    j = (common & -common).bit_length() - 1
                    jp = missing.bit_length() - 1
                    if j < jp:
                        # 'a above b' would form a Gamma, so b must precede a
                        must_precede[a] |= 1 << b
                        if must_precede[b] >> a & 1:
                            ok = False
                            break
            if not ok:
                break
        if not ok:
            continue
        # cycle check on the must-precede digraph
        state = [0] * n  # 0 unvisited, 1 on stack, 2 done

        def acyclic(v: int) -> bool:
            state[v] = 1
            for w in bit_indices(must_precede[v]):
                if state[w] == 1:
                    return False
                if state[w] == 0 and not acyclic(w):
                    return False
            state[v] = 2
            return True

        if all(state[v] == 2 or acyclic(v) for v in range(n)):
            return True
    return False


def _two_chain_partition(columns: Sequence[int]) -> tuple[list[int], list[int]]:
    """Partition column indices into two containment chains, or raise.

    Two neighborhoods are in conflict iff incomparable; the conflict graph of
    a family of width <= 2 is bipartite and its color classes are chains.  An
    odd conflict cycle therefore certifies width > 2.
    """
    k = len(columns)

    def comparable(a: int, b: int) -> bool:
        return columns[a] & ~columns[b] == 0 or columns[b] & ~columns[a] == 0

    color = [-1] * k
    for start in range(k):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in range(k):
                if w != v and not comparable(v, w):
                    if color[w] == -1:
                        color[w] = 1 - color[v]
                        queue.append(w)
                    elif color[w] == color[v]:
                        raise ValueError("Y-side neighborhoods need more than two chains")
    chain_a = [j for j in range(k) if color[j] == 0]
    chain_b = [j for j in range(k) if color[j] == 1]
    return chain_a, chain_b


def gamma_free_from_chains(b: BipartiteGraph) -> OrderedMatrix:
    """Gamma-free ordering built from the two Y-neighborhood chains.

    Requires the Y-neighborhoods to split into two containment chains
    (equivalently, completing X yields an interval graph).  Y is ordered as
    the first chain ascending then the second descending, which makes every
    X-row a consecutive run of 1s; X is then ordered by the right endpoint of
    that run.  For permuted rows p < p' the run of p' ends no earlier than
    the run of p, so no 0 can sit bottom-right of three 1s.
    """
    cols = b.columns()
    chain_a, chain_b = _two_chain_partition(cols)
    chain_a.sort(key=lambda j: (cols[j].bit_count(), j))
    chain_b.sort(key=lambda j: (-cols[j].bit_count(), j))
    col_order = chain_a + chain_b

    def row_span(i: int) -> tuple[int, int]:
        row = b.adj[i]
        positions = [p for p, j in enumerate(col_order) if row >> j & 1]
        if not positions:
            return (-1, -1)
        return (positions[-1], positions[0])

    row_order = sorted(range(b.x_size), key=lambda i: (*row_span(i), i))
    result = OrderedMatrix(b.rows(), tuple(row_order), tuple(col_order))
    witness = find_gamma(result)
    if witness is not None:
        raise OrderingInternalError(f"chain construction produced a Gamma at {witness}")
    return result


def serialize_ordered(m: OrderedMatrix) -> str:
    lines = [f"om {m.n_rows} {m.n_cols}"]
    lines.append("rows: " + " ".join(str(r) for r in m.row_order))
    lines.append("cols: " + " ".join(str(c) for c in m.col_order))
    lines += ["".join(str(e) for e in row) for row in m.matrix]
    return "\n".join(lines) + "\n"


def parse_ordered(text: str) -> OrderedMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    header = lines[0].split()
    if header[0] != "om" or len(header) != 3:
        raise ValueError("expected 'om <rows> <cols>' header")
    n, m = int(header[1]), int(header[2])
    if not lines[1].startswith("rows: ") and lines[1] != "rows:":
        raise ValueError("expected 'rows:' line")
    if not lines[2].startswith("cols: ") and lines[2] != "cols:":
        raise ValueError("expected 'cols:' line")
    row_order = tuple(int(f) for f in lines[1].split()[1:])
    col_order = tuple(int(f) for f in lines[2].split()[1:])
    matrix = tuple(tuple(int(ch) for ch in line) for line in lines[3 : 3 + n])
    if len(matrix) != n or any(len(r) != m for r in matrix):
        raise ValueError("matrix block has wrong shape")
    return OrderedMatrix(matrix, row_order, col_order)
