"""Plain-text serialization of the four core types.

Formats (ASCII, newline-terminated, ``#`` starts a comment line):

    bip <x_size> <y_size>     followed by x_size rows of y_size '0'/'1' chars
    split <k_size> <i_size>   followed by k_size rows (the cross matrix)
    graph <n>                 followed by n rows; symmetric, zero diagonal
    hyp <n> <m>               followed by m lines of 0-based vertex indices
                              (an empty line is an empty hyperedge)

Serialization is canonical: fixed field order, one row per line, trailing
newline.  ``parse(serialize(g)) == g`` for every value.
"""

from __future__ import annotations

from .core import BipartiteGraph, GeneralGraph, Hypergraph, SplitGraph, bit_indices

GraphValue = "BipartiteGraph | SplitGraph | GeneralGraph | Hypergraph"


class ParseError(ValueError):
    """Malformed input text; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _content_lines(text: str):
    """Yield (line_number, content) skipping comment lines, keeping blanks."""
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line.lstrip().startswith("#"):
            continue
        yield num, line


def _parse_header(lines, expected_counts: dict[str, int]):
    for num, line in lines:
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind not in expected_counts:
            raise ParseError(num, f"unknown header {kind!r}")
        want = expected_counts[kind]
        if len(fields) != 1 + want:
            raise ParseError(num, f"{kind} header needs {want} size field(s)")
        try:
            sizes = [int(f) for f in fields[1:]]
        except ValueError:
            raise ParseError(num, f"non-integer size in {kind} header") from None
        if any(s < 0 for s in sizes):
            raise ParseError(num, "sizes must be non-negative")
        return num, kind, sizes
    raise ParseError(0, "empty input")


def _read_matrix_rows(lines, count: int, width: int, header_line: int):
    rows = []
    last = header_line
    for num, line in lines:
        if not line:
            raise ParseError(num, f"row {len(rows) + 1} has wrong length (expected {width}, got 0)")
        if len(line) != width:
            raise ParseError(
                num, f"row {len(rows) + 1} has wrong length (expected {width}, got {len(line)})"
            )
        mask = 0
        for j, ch in enumerate(line):
            if ch == "1":
                mask |= 1 << j
            elif ch != "0":
                raise ParseError(num, f"row {len(rows) + 1} has non-0/1 character {ch!r}")
        rows.append(mask)
        last = num
        if len(rows) == count:
            return rows, last
    raise ParseError(last + 1, f"expected {count} rows, got {len(rows)}")


def _expect_end(lines):
    for num, line in lines:
        if line:
            raise ParseError(num, "trailing content after matrix rows")


ALL_HEADERS = {"bip": 2, "split": 2, "graph": 1, "hyp": 2}


def parse(text: str):
    """Parse any of the four formats, detected from the header line."""
    lines = iter(_content_lines(text))
    num, kind, sizes = _parse_header(lines, ALL_HEADERS)
    if kind == "bip":
        x, y = sizes
        rows, _ = _read_matrix_rows(lines, x, y, num)
        _expect_end(lines)
        return BipartiteGraph(x, y, tuple(rows))
    if kind == "split":
        k, i = sizes
        rows, _ = _read_matrix_rows(lines, k, i, num)
        _expect_end(lines)
        return SplitGraph(k, i, tuple(rows))
    if kind == "graph":
        (n,) = sizes
        rows, last = _read_matrix_rows(lines, n, n, num)
        _expect_end(lines)
        try:
            return GeneralGraph(n, tuple(rows))
        except ValueError as exc:
            raise ParseError(last, str(exc)) from None
    # hyp
    n, m = sizes
    edges = []
    last = num
    got = 0
    for lnum, line in lines:
        if got == m:
            if line:
                raise ParseError(lnum, "trailing content after hyperedges")
            continue
        mask = 0
        for field in line.split():
            try:
                v = int(field)
            except ValueError:
                raise ParseError(lnum, f"non-integer vertex {field!r}") from None
            if not 0 <= v < n:
                raise ParseError(lnum, f"vertex {v} out of range 0..{n - 1}")
            mask |= 1 << v
        edges.append(mask)
        got += 1
        last = lnum
    if got != m:
        raise ParseError(last + 1, f"expected {m} hyperedges, got {got}")
    return Hypergraph(n, tuple(edges))


def parse_bipartite(text: str) -> BipartiteGraph:
    g = parse(text)
    if not isinstance(g, BipartiteGraph):
        raise ParseError(1, "expected a 'bip' header")
    return g


def parse_split(text: str) -> SplitGraph:
    g = parse(text)
    if not isinstance(g, SplitGraph):
        raise ParseError(1, "expected a 'split' header")
    return g


def parse_general(text: str) -> GeneralGraph:
    g = parse(text)
    if not isinstance(g, GeneralGraph):
        raise ParseError(1, "expected a 'graph' header")
    return g


def parse_hypergraph(text: str) -> Hypergraph:
    g = parse(text)
    if not isinstance(g, Hypergraph):
        raise ParseError(1, "expected a 'hyp' header")
    return g


def _matrix_lines(rows, width: int) -> list[str]:
    return ["".join("1" if mask >> j & 1 else "0" for j in range(width)) for mask in rows]


def serialize(g) -> str:
    """Canonical text form of any of the four types."""
    if isinstance(g, BipartiteGraph):
        lines = [f"bip {g.x_size} {g.y_size}"] + _matrix_lines(g.adj, g.y_size)
    elif isinstance(g, SplitGraph):
        lines = [f"split {g.k_size} {g.i_size}"] + _matrix_lines(g.cross, g.i_size)
    elif isinstance(g, GeneralGraph):
        lines = [f"graph {g.n}"] + _matrix_lines(g.adj, g.n)
    elif isinstance(g, Hypergraph):
        lines = [f"hyp {g.n} {len(g.edges)}"]
        lines += [" ".join(str(v) for v in bit_indices(e)) for e in g.edges]
    else:
        raise TypeError(f"cannot serialize {type(g).__name__}")
    return "\n".join(lines) + "\n"
