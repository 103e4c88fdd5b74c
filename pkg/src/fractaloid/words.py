"""Reduced-word arithmetic of the graph groupoid.

The elements are: the absorbing empty word, one unit word per vertex, and
admissible arc paths in the shadowed graph with no adjacent mutually-inverse
pair. Products are partial: composing words whose range and source disagree
yields the empty word, and cancellation at the junction can only shorten a
product, never kill it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphError, LimitError, ParameterError
from .graphs import DirectedGraph, EdgeRecord, ShadowedGraph, SignedEdge

DEFAULT_MAX_WORDS = 1_000_000


@dataclass(frozen=True, eq=False)
class ReducedWord:
    """A reduced element of the graph groupoid.

    Exactly one of three shapes: empty (vertex is None, no letters), a vertex
    unit, or a nonempty reduced arc path. Equality and hashing are structural
    on the shape and letter sequence; the graph reference is carried only to
    reject cross-graph products.
    """

    graph: DirectedGraph
    vertex: str | None = None
    letters: tuple[SignedEdge, ...] = ()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self.vertex == other.vertex and self.letters == other.letters

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((self.vertex, self.letters))
            object.__setattr__(self, "_hash", cached)
        return cached

    def __post_init__(self) -> None:
        if self.vertex is not None and self.letters:
            raise GraphError("a word is a vertex or a path, not both")
        if self.vertex is not None:
            self.graph.require_vertex(self.vertex)
        for i, arc in enumerate(self.letters):
            if not self.graph.contains_edge(arc.edge):
                raise GraphError(
                    f"letter {arc.token!r} does not belong to graph {self.graph.name!r}"
                )
            if i > 0:
                prev = self.letters[i - 1]
                if prev.target != arc.source:
                    raise GraphError(
                        f"letters {prev.token!r}.{arc.token!r} are not admissible"
                    )
                if prev.edge == arc.edge and prev.inverted != arc.inverted:
                    raise GraphError(
                        f"letters {prev.token!r}.{arc.token!r} are not reduced"
                    )

    @property
    def is_empty(self) -> bool:
        return self.vertex is None and not self.letters

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    @property
    def is_path(self) -> bool:
        return bool(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self)


def _trusted_word(
    graph: DirectedGraph, vertex: str | None, letters: tuple[SignedEdge, ...]
) -> ReducedWord:
    # Constructor bypassing revalidation, for operations whose outputs are
    # reduced and admissible by construction.
    word = object.__new__(ReducedWord)
    object.__setattr__(word, "graph", graph)
    object.__setattr__(word, "vertex", vertex)
    object.__setattr__(word, "letters", letters)
    return word


def empty_word(graph: DirectedGraph) -> ReducedWord:
    return ReducedWord(graph)

def vertex_word(graph: DirectedGraph, v: str) -> ReducedWord:
    return ReducedWord(graph, vertex=v)

def path_word(graph: DirectedGraph, letters: Iterable[SignedEdge]) -> ReducedWord:
    letters = tuple(letters)
    if not letters:
        raise ParameterError("a path word needs at least one letter")
    return ReducedWord(graph, letters=letters)


def format_word(word: ReducedWord) -> str:
    """Report format: `0` for empty, `(v)` for units, `e1.e2~` for paths."""
    if word.is_empty:
        return "0"
    if word.is_vertex:
        return f"({word.vertex})"
    return ".".join(arc.token for arc in word.letters)


def source_range(word: ReducedWord) -> tuple[str, str] | None:
    """Source and range vertices; None for the empty word."""
    if word.is_empty:
        return None
    if word.is_vertex:
        return (word.vertex, word.vertex)
    return (word.letters[0].source, word.letters[-1].target)


def reduce_word(graph: DirectedGraph, letters: Sequence[SignedEdge]) -> ReducedWord:
    """Reduce a raw letter sequence with the cancellation stack.

    Letters are pushed left to right; a letter that is mutually inverse with
    the top of the stack pops it instead. Any inadmissible junction makes the
    whole product empty. An emptied stack leaves the unit at the source of
    the first letter.
    """
    letters = tuple(letters)
    if not letters:
        raise ParameterError("reduce requires a nonempty letter sequence")
    for arc in letters:
        if not graph.contains_edge(arc.edge):
            raise GraphError(
                f"letter {arc.token!r} does not belong to graph {graph.name!r}"
            )
    start = letters[0].source
    stack: list[SignedEdge] = []
    for arc in letters:
        current = stack[-1].target if stack else start
        if arc.source != current:
            return empty_word(graph)
        if stack and stack[-1].edge == arc.edge and stack[-1].inverted != arc.inverted:
            stack.pop()
        else:
            stack.append(arc)
    if not stack:
        return _trusted_word(graph, start, ())
    return _trusted_word(graph, None, tuple(stack))


def _require_same_graph(w1: ReducedWord, w2: ReducedWord) -> None:
    if w1.graph is not w2.graph and w1.graph != w2.graph:
        raise GraphError(
            f"cannot combine words over graphs {w1.graph.name!r} and {w2.graph.name!r}"
        )


def multiply(w1: ReducedWord, w2: ReducedWord) -> ReducedWord:
    """Partial product. Both factors are already reduced, so cancellation can
    happen only across the junction (and may cascade inward from it)."""
    _require_same_graph(w1, w2)
    graph = w1.graph
    if w1.is_empty or w2.is_empty:
        return empty_word(graph)
    if w1.is_vertex:
        src = source_range(w2)[0]
        return w2 if src == w1.vertex else empty_word(graph)
    if w2.is_vertex:
        return w1 if w1.letters[-1].target == w2.vertex else empty_word(graph)
    if w1.letters[-1].target != w2.letters[0].source:
        return empty_word(graph)
    i = len(w1.letters) - 1
    j = 0
    while (
        i >= 0
        and j < len(w2.letters)
        and w1.letters[i].edge == w2.letters[j].edge
        and w1.letters[i].inverted != w2.letters[j].inverted
    ):
        i -= 1
        j += 1
    remaining = w1.letters[: i + 1] + w2.letters[j:]
    if not remaining:
        return _trusted_word(graph, w1.letters[0].source, ())
    return _trusted_word(graph, None, remaining)


def inverse(word: ReducedWord) -> ReducedWord:
    """Empty and vertex words are self-inverse; a path reverses with every
    letter's orientation flipped."""
    if not word.is_path:
        return word
    flipped = tuple(arc.inverse() for arc in reversed(word.letters))
    return _trusted_word(word.graph, None, flipped)


def enumerate_words(
    shadowed: ShadowedGraph, max_len: int, *, max_words: int = DEFAULT_MAX_WORDS
) -> list[ReducedWord]:
    """All vertex words plus all reduced path words of length <= max_len.

    Order is deterministic: vertex words in declaration order, then each
    length level sorted lexicographically by letter tokens.
    """
    if max_len < 0:
        raise ParameterError(f"max_len must be >= 0, got {max_len}")
    graph = shadowed.base
    words: list[ReducedWord] = [vertex_word(graph, v) for v in graph.vertices]
    level: list[tuple[SignedEdge, ...]] = [(arc,) for arc in shadowed.arcs]
    length = 1
    while length <= max_len and level:
        level.sort(key=lambda letters: tuple(a.token for a in letters))
        if len(words) + len(level) > max_words:
            raise LimitError(
                f"word enumeration exceeded the {max_words}-word budget "
                f"at length {length}"
            )
        words.extend(_trusted_word(graph, None, letters) for letters in level)
        nxt = []
        for letters in level:
            last = letters[-1]
            for arc in shadowed.arcs_from(last.target):
                if arc.edge == last.edge and arc.inverted != last.inverted:
                    continue
                nxt.append(letters + (arc,))
        level = nxt
        length += 1
    return words


class EdgeBlockType(enum.Enum):
    """Which kind of generated block an edge contributes to the groupoid
    algebra: a loop generates a copy of the integers (a group block), a
    non-loop generates a 2x2 matrix block."""

    LOOP = "loop"
    NON_LOOP = "non-loop"


def edge_block_type(edge: EdgeRecord) -> EdgeBlockType:
    return EdgeBlockType.LOOP if edge.is_loop else EdgeBlockType.NON_LOOP
