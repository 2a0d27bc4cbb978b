"""k-dimensional Weisfeiler-Leman refinement and pair distinguishing.

Dimension 1 is classic color refinement seeded with (color, degree); higher
dimensions color k-tuples, starting from each tuple's isomorphism type and
appending, per round, the multiset over all vertices v of the color vectors
obtained by substituting v at each position.  Colors are densely renumbered
in sorted signature order every round, and a pair of graphs shares one
renumbering table so that counting tuples per color is meaningful.
"""

from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_TUPLE_BUDGET = 3_000_000


@dataclass
class ColoredGraph:
    n: int
    adjacency: list      # adjacency[v] = sorted list of neighbors (0-based)
    colors: list

    @property
    def num_edges(self):
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]


def colored_graph_from_edges(n, edges, colors=None):
    adjacency = [[] for _ in range(n)]
    for (u, v) in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    for a in adjacency:
        a.sort()
    return ColoredGraph(n, adjacency, list(colors) if colors else [0] * n)


def relabel(graph, permutation):
    """Isomorphic copy under vertex permutation (old -> new labels)."""
    colors = [0] * graph.n
    for old, new in enumerate(permutation):
        colors[new] = graph.colors[old]
    edges = [(permutation[u], permutation[v]) for (u, v) in graph.edges()]
    return colored_graph_from_edges(graph.n, edges, colors)


@dataclass
class WlColoring:
    dimension: int
    rounds: list          # per-round list: tuple-index -> dense color id
    class_counts: list
    iteration_number: int
    stabilized: bool

    @property
    def final(self):
        return self.rounds[-1]


class _Renumber:
    """Shared dense renumbering of signatures, in first-seen order per round;
    canonical because signatures are processed in sorted order."""

    def __init__(self):
        self.table = {}

    def assign(self, signatures):
        for sig in sorted(set(signatures)):
            if sig not in self.table:
                self.table[sig] = len(self.table)
        return [self.table[sig] for sig in signatures]


def _tuples_initial(graph, k):
    """Isomorphism type of each k-tuple: colors, equalities, adjacencies."""
    n = graph.n
    adj = [set(a) for a in graph.adjacency]
    sigs = []
    for t in range(n ** k):
        tup = []
        rem = t
        for _ in range(k):
            tup.append(rem % n)
            rem //= n
        tup.reverse()
        eq = tuple(tup[i] == tup[j] for i in range(k) for j in range(i + 1, k))
        ad = tuple(tup[j] in adj[tup[i]]
                   for i in range(k) for j in range(i + 1, k))
        cols = tuple(graph.colors[v] for v in tup)
        sigs.append((cols, eq, ad))
    return sigs


def _refine_once_k(graph, k, coloring):
    """One k-WL round: append the substitution multiset to each tuple color."""
    n = graph.n
    strides = [n ** (k - 1 - j) for j in range(k)]
    sigs = []
    for t in range(n ** k):
        digits = []
        rem = t
        for j in range(k):
            digits.append(rem // strides[j] % n)
        base = [t - digits[j] * strides[j] for j in range(k)]
        rows = []
        for v in range(n):
            rows.append(tuple(coloring[base[j] + v * strides[j]]
                              for j in range(k)))
        rows.sort()
        sigs.append((coloring[t], tuple(rows)))
    return sigs


def _refine_once_1(graph, coloring):
    sigs = []
    for v in range(graph.n):
        neigh = sorted(coloring[w] for w in graph.adjacency[v])
        sigs.append((coloring[v], tuple(neigh)))
    return sigs


def _joint_refine(graphs, k, max_rounds, budget):
    """Run refinement jointly over several graphs with one color table.

    Yields (round_index, per-graph colorings) starting at round 0 and stops
    after the round where the joint partition stabilizes.
    """
    for g in graphs:
        if g.n ** k > budget:
            raise BudgetExceeded(f"{g.n}^{k} tuples exceed budget {budget}")
    renumber = _Renumber()
    if k == 1:
        sigs = [[(g.colors[v], len(g.adjacency[v])) for v in range(g.n)]
                for g in graphs]
    else:
        sigs = [_tuples_initial(g, k) for g in graphs]
    flat = [sig for gs in sigs for sig in gs]
    colored = renumber.assign(flat)
    colorings = _unflatten(colored, sigs)
    yield 0, colorings

    num_classes = len(set(colored))
    rnd = 0
    while max_rounds is None or rnd < max_rounds:
        rnd += 1
        renumber = _Renumber()
        if k == 1:
            sigs = [_refine_once_1(g, col) for g, col in zip(graphs, colorings)]
        else:
            sigs = [_refine_once_k(g, k, col)
                    for g, col in zip(graphs, colorings)]
        flat = [sig for gs in sigs for sig in gs]
        colored = renumber.assign(flat)
        new_colorings = _unflatten(colored, sigs)
        new_classes = len(set(colored))
        yield rnd, new_colorings
        if new_classes == num_classes:
            return
        if new_classes < num_classes:
            raise AssertionError("refinement merged classes")
        num_classes = new_classes
        colorings = new_colorings


def _unflatten(flat, shaped):
    out, pos = [], 0
    for gs in shaped:
        out.append(flat[pos:pos + len(gs)])
        pos += len(gs)
    return out


def wl_refine(graph, k, max_rounds=None, budget=DEFAULT_TUPLE_BUDGET):
    """Refine to stabilization (or max_rounds); reports the iteration number,
    the least t whose round-(t+1) coloring splits no class."""
    rounds, counts = [], []
    last_round = 0
    for rnd, (coloring,) in _joint_refine([graph], k, max_rounds, budget):
        rounds.append(coloring)
        counts.append(len(set(coloring)))
        last_round = rnd
    stabilized = len(counts) >= 2 and counts[-1] == counts[-2]
    iteration = last_round - 1 if stabilized else last_round
    return WlColoring(k, rounds, counts, iteration, stabilized)


@dataclass
class DistinguishResult:
    distinguished_round: int       # None if not distinguished
    rounds_run: int
    history: list                  # (round, classes_G, classes_H, flag)

    @property
    def distinguished(self):
        return self.distinguished_round is not None


def wl_distinguish(G, H, k, max_rounds=None, budget=DEFAULT_TUPLE_BUDGET):
    """Least round at which some color's tuple count differs between G and H."""
    history = []
    found = None
    rounds_run = 0
    for rnd, (cg, ch) in _joint_refine([G, H], k, max_rounds, budget):
        rounds_run = rnd
        counts_g = _color_counts(cg)
        counts_h = _color_counts(ch)
        flag = counts_g != counts_h
        history.append((rnd, len(counts_g), len(counts_h), flag))
        if flag and found is None:
            found = rnd
            break
    return DistinguishResult(found, rounds_run, history)


def _color_counts(coloring):
    counts = {}
    for c in coloring:
        counts[c] = counts.get(c, 0) + 1
    return counts


# -- file format ---------------------------------------------------------------


def export_colored_graph(graph):
    lines = [f"cgraph {graph.n} {graph.num_edges}"]
    for v in range(graph.n):
        lines.append(f"v {v} {graph.colors[v]}")
    for (u, v) in graph.edges():
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def import_colored_graph(text):
    from .errors import ParseError
    n = None
    colors, edges = {}, []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "cgraph":
            n = int(parts[1])
        elif parts[0] == "v":
            colors[int(parts[1])] = int(parts[2])
        elif parts[0] == "e":
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise ParseError(line_no, f"unknown record {parts[0]!r}")
    if n is None:
        raise ParseError(0, "missing cgraph header")
    return colored_graph_from_edges(
        n, edges, [colors.get(v, 0) for v in range(n)])


def distinguish_report_rows(result):
    return [(rnd, cg, ch, int(flag)) for (rnd, cg, ch, flag) in result.history]
