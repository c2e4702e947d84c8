"""
The non-commuting graph of a finite group and its clique number ω(G).

The exact search is a branch and bound over Python integers used as
bitsets. Candidate sets are greedily coloured and a branch is cut as soon as
the clique so far plus the number of colours left cannot beat the incumbent.

Elements with the same centralizer commute with each other and have the same
neighbours, so a clique holds at most one of them. The search therefore runs
on one representative (the smallest element index) per centralizer.
"""
import logging
from dataclasses import dataclass
from dataclasses import field
from typing import Dict
from typing import Iterator
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from ncgroups.exceptions import TimeBudgetExceeded
from ncgroups.exceptions import TooLarge
from ncgroups.groups import IDENTITY
from ncgroups.groups import Group
from ncgroups.types import DEFAULT_SETTINGS
from ncgroups.types import Settings
from ncgroups.utils import Deadline
from ncgroups.utils import iter_bits
from ncgroups.utils import popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NoncommutingGraph:
    """
    ``vertices[i]`` is a parent element index and ``adjacency[i]`` the bitset
    of vertex positions ``j`` such that the two elements do not commute.
    """

    parent: Group
    vertices: Tuple[int, ...]
    adjacency: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def degree(self, i: int) -> int:
        return popcount(self.adjacency[i])

    @property
    def edge_count(self) -> int:
        return sum(self.degree(i) for i in range(len(self))) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Vertex position pairs ``(i, j)`` with ``i < j``."""
        for i, neighbours in enumerate(self.adjacency):
            for j in iter_bits(neighbours >> (i + 1)):
                yield i, i + 1 + j

    def reduced(self) -> "NoncommutingGraph":
        """One vertex per distinct centralizer, the smallest element kept."""
        kept: Dict[int, int] = {}
        for i, neighbours in enumerate(self.adjacency):
            kept.setdefault(neighbours, i)
        positions = sorted(kept.values())
        return _induced(self, positions)


def _induced(graph: NoncommutingGraph, positions: Sequence[int]) -> NoncommutingGraph:
    adjacency = tuple(
        sum(
            1 << new
            for new, j in enumerate(positions)
            if graph.adjacency[i] >> j & 1
        )
        for i in positions
    )
    return NoncommutingGraph(
        graph.parent, tuple(graph.vertices[i] for i in positions), adjacency
    )


def build_graph(G: Group) -> NoncommutingGraph:
    vertices = tuple(g for g in range(G.order) if g not in G.center)
    adjacency = tuple(
        sum(1 << j for j, b in enumerate(vertices) if not G.commutes(a, b))
        for a in vertices
    )
    return NoncommutingGraph(G, vertices, adjacency)


@dataclass(frozen=True)
class CliqueWitness:
    elements: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)

    def labels(self, G: Group) -> List[str]:
        return [G.label(g) for g in self.elements]


@dataclass(frozen=True)
class OmegaResult:
    """
    The clique number with its witness. A non-exact result comes from an
    interrupted search: ``size`` is then a lower bound and ``upper_bound`` the
    best bound proven.
    """

    size: int
    witness: CliqueWitness
    exact: bool = True
    upper_bound: Optional[int] = None

    def __post_init__(self):
        if self.upper_bound is None:
            object.__setattr__(self, "upper_bound", self.size)


def verify_clique(G: Group, elements: Sequence[int]) -> bool:
    """Re-check, without the graph, that the elements pairwise fail to commute."""
    if not elements or len(set(elements)) != len(elements):
        return False
    if any(not 0 <= g < G.order for g in elements):
        return False
    if len(elements) == 1:
        return True
    return all(
        not G.commutes(a, b)
        for position, a in enumerate(elements)
        for b in elements[position + 1 :]
    )


@dataclass
class _CliqueSearch:
    adjacency: Sequence[int]
    deadline: Deadline
    recolor: bool
    best: List[int] = field(default_factory=list)
    nodes: int = 0
    root_colours: Dict[int, int] = field(default_factory=dict)

    def colour_sort(self, candidates: int) -> List[Tuple[int, int]]:
        """Greedy colouring; ``(vertex, colour)`` pairs by ascending colour."""
        coloured: List[Tuple[int, int]] = []
        uncoloured = candidates
        colour = 0
        while uncoloured:
            colour += 1
            available = uncoloured
            while available:
                low = available & -available
                v = low.bit_length() - 1
                available &= ~self.adjacency[v] & ~low
                uncoloured &= ~low
                coloured.append((v, colour))
        return coloured

    def root_sort(self, candidates: int) -> List[Tuple[int, int]]:
        """Reuse the root colouring: bound = number of distinct colours so far."""
        ordered = sorted(
            iter_bits(candidates), key=lambda v: (self.root_colours[v], v)
        )
        result: List[Tuple[int, int]] = []
        seen = set()
        for v in ordered:
            seen.add(self.root_colours[v])
            result.append((v, len(seen)))
        return result

    def expand(self, clique: List[int], candidates: int, root: bool = False) -> None:
        self.nodes += 1
        if self.deadline.expired:
            raise _Interrupted()

        if root or self.recolor:
            coloured = self.colour_sort(candidates)
            if root:
                self.root_colours = dict(coloured)
        else:
            coloured = self.root_sort(candidates)

        for v, colour in reversed(coloured):
            if len(clique) + colour <= len(self.best):
                return
            extended = clique + [v]
            remaining = candidates & self.adjacency[v]
            if remaining:
                self.expand(extended, remaining)
            elif len(extended) > len(self.best):
                self.best = extended
            candidates &= ~(1 << v)


class _Interrupted(Exception):
    pass


def _greedy_clique(adjacency: Sequence[int]) -> List[int]:
    clique: List[int] = []
    common = (1 << len(adjacency)) - 1
    for v in range(len(adjacency)):
        if common >> v & 1:
            clique.append(v)
            common &= adjacency[v]
    return clique


def _search_order(graph: NoncommutingGraph) -> List[int]:
    """Descending degree, ties by element index."""
    return sorted(
        range(len(graph)), key=lambda i: (-graph.degree(i), graph.vertices[i])
    )


def omega(G: Group, settings: Settings = DEFAULT_SETTINGS) -> OmegaResult:
    """
    The exact clique number of the non-commuting graph with a witness.

    Abelian groups have ω = 1 with witness ``{identity}``.

    :raises TimeBudgetExceeded: when ``settings.time_budget`` runs out; the
        exception carries the bracketed bounds and the best clique found.
    """
    if G.is_abelian:
        return OmegaResult(1, CliqueWitness((IDENTITY,)))

    reduced = build_graph(G).reduced()
    graph = _induced(reduced, _search_order(reduced))
    search = _CliqueSearch(
        adjacency=graph.adjacency,
        deadline=Deadline(settings.time_budget),
        recolor=len(graph) <= settings.recolor_limit,
    )
    search.best = _greedy_clique(graph.adjacency)

    try:
        search.expand([], (1 << len(graph)) - 1, root=True)
    except _Interrupted:
        upper_bound = max(search.root_colours.values(), default=len(graph))
        witness = tuple(sorted(graph.vertices[v] for v in search.best))
        logger.warning(
            "Clique search on %s stopped after %d nodes: %d <= omega <= %d",
            G.name,
            search.nodes,
            len(witness),
            upper_bound,
        )
        raise TimeBudgetExceeded(len(witness), upper_bound, witness)

    witness = tuple(sorted(graph.vertices[v] for v in search.best))
    logger.debug(
        "omega(%s) = %d after %d nodes on %d reduced vertices",
        G.name,
        len(witness),
        search.nodes,
        len(graph),
    )
    return OmegaResult(len(witness), CliqueWitness(witness))


def omega_or_bounds(G: Group, settings: Settings = DEFAULT_SETTINGS) -> OmegaResult:
    """Like :func:`omega`, returning a non-exact result instead of raising."""
    try:
        return omega(G, settings)
    except TimeBudgetExceeded as err:
        return OmegaResult(
            err.lower_bound,
            CliqueWitness(err.witness),
            exact=False,
            upper_bound=err.upper_bound,
        )


def omega_bruteforce(G: Group, settings: Settings = DEFAULT_SETTINGS) -> int:
    """
    Exhaustive clique number over every pairwise non-commuting subset of the
    non-central elements. Only usable on small groups.

    :raises TooLarge: above ``settings.bruteforce_limit`` non-central elements.
    """
    noncentral = [g for g in range(G.order) if g not in G.center]
    if len(noncentral) > settings.bruteforce_limit:
        raise TooLarge(
            f"{len(noncentral)} non-central elements, "
            f"the brute-force limit is {settings.bruteforce_limit}"
        )
    if not noncentral:
        return 1

    best = 1

    def grow(chosen: List[int], start: int) -> None:
        nonlocal best
        best = max(best, len(chosen))
        for position in range(start, len(noncentral)):
            g = noncentral[position]
            if all(not G.commutes(g, c) for c in chosen):
                grow(chosen + [g], position + 1)

    grow([], 0)
    return best


def export_dimacs(graph: NoncommutingGraph) -> str:
    """The graph in DIMACS edge format, vertices numbered from 1."""
    lines = [
        f"c non-commuting graph of {graph.parent.name or 'G'}",
        f"p edge {len(graph)} {graph.edge_count}",
        *(f"e {i + 1} {j + 1}" for i, j in graph.edges()),
    ]
    return "\n".join(lines) + "\n"
