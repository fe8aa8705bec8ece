from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, final

from ._errors import GraphFormatError
from ._graph import Graph

if TYPE_CHECKING:
    from collections.abc import Iterator, Mapping

COLORING_MAGIC = "cfcolor"
COLORING_VERSION = "v1"


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _build(n: int, edges: list[tuple[int, int]], lines: list[int], labels: list[str] | None = None) -> Graph:
    seen: set[tuple[int, int]] = set()
    for (u, v), lineno in zip(edges, lines, strict=True):
        if u == v:
            msg = f"self-loop at vertex {labels[u] if labels else u}"
            raise GraphFormatError(msg, lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            msg = f"repeated edge {key}"
            raise GraphFormatError(msg, lineno)
        seen.add(key)
    return Graph(n, edges, labels=labels)


def parse_edge_list(text: str) -> Graph:
    """Parses a whitespace-separated edge list.

    Each line holds `u v` for an edge or a single token declaring a vertex, which
    is how isolated vertices are written. Lines starting with `#` are comments.
    Tokens are labels, numbered densely in order of first appearance, so a
    1-based or sparse numbering gains no phantom vertices. The label table is
    kept on the graph unless every label already equals its index.

    Raises:
        GraphFormatError: If a line is malformed, is a self-loop or repeats an edge.
    """
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for lineno, tokens in _lines(text):
        if len(tokens) > 2:
            msg = f"expected 'u v' or a single vertex, got {len(tokens)} tokens"
            raise GraphFormatError(msg, lineno)
        ids = [index.setdefault(t, len(index)) for t in tokens]
        if len(ids) == 2:
            edges.append((ids[0], ids[1]))
            edge_lines.append(lineno)
    labels: list[str] | None = list(index)
    if labels == [str(i) for i in range(len(index))]:
        labels = None
    return _build(len(index), edges, edge_lines, labels)


def emit_edge_list(g: Graph) -> str:
    """Formats `g` as an edge list that `parse_edge_list` reads back unchanged."""
    out: list[str] = []
    if g.labels is not None:
        # Declaring every label up front pins the first-appearance numbering.
        out.extend(g.labels)
        out.extend(f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges())
        return "".join(f"{line}\n" for line in out)
    next_id = 0
    for u, v in g.edges():
        if v >= next_id:
            # Unseen vertices below v are declared so v reads back as index v.
            if not (u == next_id and v == u + 1):
                out.extend(str(x) for x in range(next_id, v))
            next_id = v + 1
        out.append(f"{u} {v}")
    out.extend(str(x) for x in range(next_id, g.n))
    return "".join(f"{line}\n" for line in out)


def parse_dimacs(text: str) -> Graph:
    """Parses a DIMACS `.col` graph with a `p edge n m` header and 1-based `e u v` lines.

    Raises:
        GraphFormatError: If the header is missing or repeated, a vertex is out
            of range, an edge is a self-loop or repeated, or the edge count does
            not match the header.
    """
    n: int | None = None
    m = 0
    edges: list[tuple[int, int]] = []
    edge_lines: list[int] = []
    for lineno, tokens in _lines(text):
        match tokens[0]:
            case "c":
                continue
            case "p":
                if n is not None:
                    msg = "repeated problem line"
                    raise GraphFormatError(msg, lineno)
                if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                    msg = "expected 'p edge <n> <m>'"
                    raise GraphFormatError(msg, lineno)
                n, m = _int(tokens[2], lineno), _int(tokens[3], lineno)
            case "e":
                if n is None:
                    msg = "edge before problem line"
                    raise GraphFormatError(msg, lineno)
                if len(tokens) != 3:
                    msg = "expected 'e <u> <v>'"
                    raise GraphFormatError(msg, lineno)
                u, v = _int(tokens[1], lineno), _int(tokens[2], lineno)
                for x in (u, v):
                    if not 1 <= x <= n:
                        msg = f"vertex {x} out of range 1..{n}"
                        raise GraphFormatError(msg, lineno)
                edges.append((u - 1, v - 1))
                edge_lines.append(lineno)
            case other:
                msg = f"unknown line type {other!r}"
                raise GraphFormatError(msg, lineno)
    if n is None:
        msg = "missing problem line"
        raise GraphFormatError(msg)
    if len(edges) != m:
        msg = f"header declares {m} edges but {len(edges)} were read"
        raise GraphFormatError(msg)
    return _build(n, edges, edge_lines)


def emit_dimacs(g: Graph) -> str:
    """Formats `g` in DIMACS `.col` form."""
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "".join(f"{line}\n" for line in lines)


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        msg = f"expected an integer, got {token!r}"
        raise GraphFormatError(msg, lineno) from None


def is_dimacs(text: str) -> bool:
    """Returns whether `text` looks like DIMACS rather than an edge list."""
    for _, tokens in _lines(text):
        if tokens[0] == "c":
            continue
        return tokens[0] == "p"
    return False


def read_graph(path: str | Path) -> Graph:
    """Reads a graph file, detecting DIMACS by its problem line."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_dimacs(text) if is_dimacs(text) else parse_edge_list(text)


def write_graph(g: Graph, path: str | Path, *, dimacs: bool = False) -> None:
    """Writes a graph file as an edge list, or DIMACS when `dimacs` is set."""
    Path(path).write_text(emit_dimacs(g) if dimacs else emit_edge_list(g), encoding="utf-8")


@final
@dataclass(frozen=True, slots=True)
class ColoringEntry:
    """One vertex line of a coloring record."""

    vertex: int
    flat: int
    first: int
    second: int
    witness: int | None


@final
@dataclass(frozen=True, slots=True)
class ColoringRecord:
    """A coloring as stored on disk.

    The text form is a `cfcolor v1 <n> <palette>` header, optional `# key=value`
    metadata lines, then `v <vertex> <flat> <first> <second> <witness>` per
    vertex, where a witness of `-` means none was recorded.
    """

    entries: tuple[ColoringEntry, ...]
    metadata: Mapping[str, str] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def palette(self) -> int:
        return len({e.flat for e in self.entries})

    def flat_colors(self) -> list[int]:
        return [e.flat for e in self.entries]

    def pair_colors(self) -> list[tuple[int, int]]:
        return [(e.first, e.second) for e in self.entries]

    def witnesses(self) -> list[int | None]:
        return [e.witness for e in self.entries]

    def emit(self) -> str:
        lines = [f"{COLORING_MAGIC} {COLORING_VERSION} {self.n} {self.palette}"]
        lines.extend(f"# {key}={value}" for key, value in self.metadata.items())
        lines.extend(
            f"v {e.vertex} {e.flat} {e.first} {e.second} "
            f"{'-' if e.witness is None else e.witness}"
            for e in self.entries
        )
        return "".join(f"{line}\n" for line in lines)


def parse_coloring(text: str) -> ColoringRecord:
    """Parses a coloring record written by `ColoringRecord.emit`.

    Raises:
        GraphFormatError: If the header is wrong, a vertex line is malformed or
            the vertices are not exactly `0..n-1`.
    """
    lines = text.splitlines()
    if not lines:
        msg = "empty coloring file"
        raise GraphFormatError(msg)
    header = lines[0].split()
    if len(header) != 4 or header[0] != COLORING_MAGIC or header[1] != COLORING_VERSION:
        msg = f"expected '{COLORING_MAGIC} {COLORING_VERSION} <n> <palette>' header"
        raise GraphFormatError(msg, 1)
    n = _int(header[2], 1)
    metadata: dict[str, str] = {}
    entries: dict[int, ColoringEntry] = {}
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].strip().partition("=")
            if sep:
                metadata[key.strip()] = value.strip()
            continue
        tokens = line.split()
        if len(tokens) != 6 or tokens[0] != "v":
            msg = "expected 'v <vertex> <flat> <first> <second> <witness>'"
            raise GraphFormatError(msg, lineno)
        vertex, flat, first, second = (_int(t, lineno) for t in tokens[1:5])
        witness = None if tokens[5] == "-" else _int(tokens[5], lineno)
        if not 0 <= vertex < n:
            msg = f"vertex {vertex} out of range 0..{n - 1}"
            raise GraphFormatError(msg, lineno)
        if vertex in entries:
            msg = f"vertex {vertex} colored twice"
            raise GraphFormatError(msg, lineno)
        entries[vertex] = ColoringEntry(vertex, flat, first, second, witness)
    if len(entries) != n:
        msg = f"header declares {n} vertices but {len(entries)} were colored"
        raise GraphFormatError(msg)
    return ColoringRecord(tuple(entries[v] for v in range(n)), metadata)
