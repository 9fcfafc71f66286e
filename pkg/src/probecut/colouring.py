"""Red-blue d-colouring machinery: validation, the forcing-rule closure,
branch enumeration over partial assignments, and exact completion of
colourings whose uncoloured remainder is an independent set.

A red-blue d-colouring assigns every vertex red or blue so that both
colours occur and every vertex has at most d neighbours of the opposite
colour; the bichromatic edges then form a d-cut.  The perfect variant
requires exactly d opposite-coloured neighbours everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import PartialColouring, PreconditionViolation
from .graph import Graph, is_connected, iter_bits

RED = "red"
BLUE = "blue"

Colour = Optional[str]
Colouring = Sequence[Colour]


class _RejectedType:
    """Sentinel: the precoloured pair admits no valid extension."""

    _instance: "_RejectedType | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Rejected"


REJECTED = _RejectedType()


@dataclass(frozen=True)
class PrecolouredPair:
    """Disjoint vertex sets forced red (x) and blue (y)."""

    x: frozenset[int]
    y: frozenset[int]

    def __post_init__(self):
        if self.x & self.y:
            raise ValueError("precoloured sets must be disjoint")

    @staticmethod
    def of(x: Iterable[int] = (), y: Iterable[int] = ()) -> "PrecolouredPair":
        return PrecolouredPair(frozenset(x), frozenset(y))


@dataclass(frozen=True)
class CutCertificate:
    """A validated d-cut: the total colouring, its bichromatic edge set,
    the budget d, whether it is perfect, and the cut size."""

    colouring: tuple[str, ...]
    cut: frozenset[tuple[int, int]]
    d: int
    perfect: bool
    size: int


@dataclass(frozen=True)
class Violation:
    """Why a colouring was not accepted; ``vertex`` is None for
    whole-colouring failures such as a monochromatic assignment."""

    vertex: Optional[int]
    reason: str


def _require_total(g: Graph, colouring: Colouring) -> None:
    if len(colouring) != g.n:
        raise PartialColouring(
            f"colouring has {len(colouring)} entries for n={g.n}"
        )
    for v, c in enumerate(colouring):
        if c not in (RED, BLUE):
            raise PartialColouring(f"vertex {v} is uncoloured")


def masks_of(colouring: Colouring) -> tuple[int, int]:
    """(red mask, blue mask) of a total colouring."""
    x = y = 0
    for v, c in enumerate(colouring):
        if c == RED:
            x |= 1 << v
        elif c == BLUE:
            y |= 1 << v
    return x, y


def colouring_of(n: int, x: int, y: int) -> tuple[Colour, ...]:
    """Per-vertex colours from red/blue masks; None where uncoloured."""
    return tuple(
        RED if (x >> v) & 1 else BLUE if (y >> v) & 1 else None
        for v in range(n)
    )


def cut_edges(g: Graph, colouring: Colouring) -> frozenset[tuple[int, int]]:
    """The bichromatic edges of a total colouring."""
    _require_total(g, colouring)
    return frozenset(
        (u, v) for (u, v) in g.edges() if colouring[u] != colouring[v]
    )


def validate_colouring(
    g: Graph, colouring: Colouring, d: int, require_perfect: bool = False
) -> Union[CutCertificate, Violation]:
    """Check a total colouring against the d-cut conditions.

    Accepts iff every vertex has at most d (exactly d when perfect is
    required) opposite-coloured neighbours and both colours occur.  On
    failure the report names the first offending vertex in id order.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    _require_total(g, colouring)
    x, y = masks_of(colouring)
    for v in range(g.n):
        opposite = y if (x >> v) & 1 else x
        k = (g.adj_bits[v] & opposite).bit_count()
        if k > d:
            return Violation(
                v, f"vertex {v} has {k} opposite-coloured neighbours (max {d})"
            )
        if require_perfect and k != d:
            return Violation(
                v,
                f"vertex {v} has {k} != {d} opposite-coloured neighbours",
            )
    if x == 0 or y == 0:
        return Violation(None, "colouring is monochromatic")
    cut = cut_edges(g, colouring)
    return CutCertificate(
        colouring=tuple(colouring),
        cut=cut,
        d=d,
        perfect=require_perfect,
        size=len(cut),
    )


def process_masks(
    adj_bits: Sequence[int], n: int, x: int, y: int, d: int
) -> Optional[tuple[int, int]]:
    """Mask-level forcing closure; None means rejected.

    Rule: an uncoloured vertex with more than d neighbours in one colour
    class joins that class.  Once no rule applies, any vertex adjacent to
    more than d vertices of each class rejects the pair.
    """
    full = (1 << n) - 1
    while True:
        changed = False
        m = full & ~(x | y)
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            av = adj_bits[v]
            in_x = (av & x).bit_count() > d
            in_y = (av & y).bit_count() > d
            if in_x and in_y:
                return None
            if in_x:
                x |= 1 << v
                changed = True
            elif in_y:
                y |= 1 << v
                changed = True
        if not changed:
            break
    for v in range(n):
        av = adj_bits[v]
        if (av & x).bit_count() > d and (av & y).bit_count() > d:
            return None
    return x, y


def colour_process(
    g: Graph, pair: PrecolouredPair, d: int
) -> Union[PrecolouredPair, _RejectedType]:
    """Grow a precoloured pair to its forcing-rule closure, or reject.

    The closure is inflationary and idempotent, and a total colouring is a
    valid extension of the input pair iff it is one of the closure.  A
    vertex forced into both classes rejects immediately; the two-sided
    overload check runs once the growth rules are exhausted, which makes
    the outcome independent of rule application order.
    """
    x0 = sum(1 << v for v in pair.x)
    y0 = sum(1 << v for v in pair.y)
    res = process_masks(g.adj_bits, g.n, x0, y0, d)
    if res is None:
        return REJECTED
    return PrecolouredPair(
        frozenset(iter_bits(res[0])), frozenset(iter_bits(res[1]))
    )


def local_masks_valid(
    adj_bits: Sequence[int], x: int, y: int, d: int
) -> bool:
    """No coloured vertex exceeds d opposite neighbours among coloured ones."""
    for v in iter_bits(x):
        if (adj_bits[v] & y).bit_count() > d:
            return False
    for v in iter_bits(y):
        if (adj_bits[v] & x).bit_count() > d:
            return False
    return True


def enumerate_seed_colourings(
    g: Graph, base: PrecolouredPair, frontier: Iterable[int], d: int
) -> Iterator[PrecolouredPair]:
    """All red/blue assignments to the uncoloured frontier vertices.

    Each assignment is merged with the base pair and yielded if it passes
    the local check (no coloured vertex has more than d opposite-coloured
    neighbours among coloured vertices).  Frontier vertices already in the
    base keep their colour.  Enumeration is a binary counter over the
    frontier in ascending id order, red before blue, so the stream order
    matches depth-first search with red tried first.
    """
    x0 = sum(1 << v for v in base.x)
    y0 = sum(1 << v for v in base.y)
    todo = [v for v in sorted(set(frontier)) if not ((x0 | y0) >> v) & 1]
    k = len(todo)
    adj = g.adj_bits
    for counter in range(1 << k):
        x, y = x0, y0
        for i, v in enumerate(todo):
            if (counter >> (k - 1 - i)) & 1:
                y |= 1 << v
            else:
                x |= 1 << v
        if local_masks_valid(adj, x, y, d):
            yield PrecolouredPair(
                frozenset(iter_bits(x)), frozenset(iter_bits(y))
            )


def max_bipartite_matching(
    left: Iterable, right: Iterable, edges: Iterable[tuple]
) -> dict:
    """Maximum-cardinality bipartite matching as a left -> right dict.

    Augmenting-path search; left vertices are processed in sorted order and
    neighbours tried in sorted order, so the result is deterministic.
    """
    left_list = sorted(left)
    right_set = set(right)
    adj: dict = {l: [] for l in left_list}
    for l, r in edges:
        if l not in adj or r not in right_set:
            raise ValueError(f"edge {(l, r)} not inside left x right")
        adj[l].append(r)
    for l in adj:
        adj[l].sort()
    match_left: dict = {}
    match_right: dict = {}

    def augment(l, visited: set) -> bool:
        for r in adj[l]:
            if r in visited:
                continue
            visited.add(r)
            if r not in match_right or augment(match_right[r], visited):
                match_left[l] = r
                match_right[r] = l
                return True
        return False

    for l in left_list:
        augment(l, set())
    return match_left


def _completion_setup(g: Graph, pair: PrecolouredPair):
    """Shared precondition checks for the completion routines."""
    x = sum(1 << v for v in pair.x)
    y = sum(1 << v for v in pair.y)
    full = (1 << g.n) - 1
    u_mask = full & ~(x | y)
    adj = g.adj_bits
    for u in iter_bits(u_mask):
        if adj[u] & u_mask:
            raise PreconditionViolation(
                "uncoloured vertices are not independent"
            )
        if (adj[u] & x).bit_count() > 1 or (adj[u] & y).bit_count() > 1:
            raise PreconditionViolation(
                f"vertex {u} has more than one coloured neighbour per colour;"
                " pair is not colour-processed for d=1"
            )
    if not is_connected(g):
        raise PreconditionViolation("graph must be connected")
    return x, y, u_mask


def _residuals(adj: Sequence[int], x: int, y: int) -> dict[int, int]:
    """Remaining opposite-neighbour budget of every coloured vertex (d=1)."""
    res = {}
    for w in iter_bits(x):
        res[w] = 1 - (adj[w] & y).bit_count()
    for w in iter_bits(y):
        res[w] = 1 - (adj[w] & x).bit_count()
    return res


def complete_independent_max_cut(
    g: Graph, pair: PrecolouredPair
) -> Optional[CutCertificate]:
    """Extend a processed pair over an independent uncoloured set,
    maximising the number of bichromatic edges (d=1).

    Every uncoloured vertex has at most one red and at most one blue
    neighbour, all coloured.  Giving it the colour opposite to a neighbour
    gains one cut edge and consumes that neighbour's unit budget, so the
    optimum is a maximum matching between uncoloured vertices and the
    coloured neighbours whose budget is still free.  Vertices seeing both
    colours gain one edge either way and must be matched; if they cannot
    all be matched no valid extension exists.  Returns None when no
    extension passes validation.
    """
    x, y, u_mask = _completion_setup(g, pair)
    adj = g.adj_bits
    res = _residuals(adj, x, y)
    forced: list[int] = []
    optional: list[int] = []
    for u in iter_bits(u_mask):
        rx = adj[u] & x
        ry = adj[u] & y
        if rx and ry:
            forced.append(u)
        elif rx or ry:
            optional.append(u)
        # an isolated uncoloured vertex only occurs for n == 1; the final
        # validation rejects it
    cand: dict[int, list[int]] = {}
    for u in forced + optional:
        cand[u] = [
            w for w in iter_bits(adj[u] & (x | y)) if res.get(w, 0) == 1
        ]
    match_left: dict[int, int] = {}
    match_right: dict[int, int] = {}

    def augment(u: int, visited: set) -> bool:
        for w in cand[u]:
            if w in visited:
                continue
            visited.add(w)
            if w not in match_right or augment(match_right[w], visited):
                match_left[u] = w
                match_right[w] = u
                return True
        return False

    for u in forced:
        if not augment(u, set()):
            return None
    for u in optional:
        augment(u, set())

    for u in iter_bits(u_mask):
        w = match_left.get(u)
        if w is not None:
            # take the colour opposite to the matched neighbour
            if (x >> w) & 1:
                y |= 1 << u
            else:
                x |= 1 << u
        else:
            nbrs = adj[u] & (x | y)
            if nbrs and nbrs & x == 0:
                y |= 1 << u
            else:
                x |= 1 << u
    result = validate_colouring(g, colouring_of(g.n, x, y), 1, False)
    return result if isinstance(result, CutCertificate) else None


def complete_independent_perfect(
    g: Graph, pair: PrecolouredPair
) -> Optional[CutCertificate]:
    """Extend a processed pair over an independent uncoloured set to a
    perfect cut (every vertex exactly one opposite neighbour), or None.

    Uncoloured vertices with a single neighbour are forced to the opposite
    colour first.  Each remaining one sees exactly one red and one blue
    neighbour and must hand its single cut edge to a neighbour that still
    needs one, so a matching of the remainder into the budget-free
    neighbours decides the branch; the final validation is the only
    acceptance test.
    """
    x, y, u_mask = _completion_setup(g, pair)
    adj = g.adj_bits
    for u in iter_bits(u_mask):
        coloured = adj[u] & (x | y)
        if coloured.bit_count() == 1:
            w = coloured.bit_length() - 1
            if (x >> w) & 1:
                y |= 1 << u
            else:
                x |= 1 << u
            u_mask &= ~(1 << u)
    if not local_masks_valid(adj, x, y, 1):
        return None
    res = _residuals(adj, x, y)
    remaining = sorted(iter_bits(u_mask))
    cand = {
        u: [w for w in iter_bits(adj[u]) if res.get(w, 0) == 1]
        for u in remaining
    }
    match_left: dict[int, int] = {}
    match_right: dict[int, int] = {}

    def augment(u: int, visited: set) -> bool:
        for w in cand[u]:
            if w in visited:
                continue
            visited.add(w)
            if w not in match_right or augment(match_right[w], visited):
                match_left[u] = w
                match_right[w] = u
                return True
        return False

    for u in remaining:
        if not augment(u, set()):
            return None
    for u in remaining:
        w = match_left[u]
        if (x >> w) & 1:
            y |= 1 << u
        else:
            x |= 1 << u
    result = validate_colouring(g, colouring_of(g.n, x, y), 1, True)
    return result if isinstance(result, CutCertificate) else None
