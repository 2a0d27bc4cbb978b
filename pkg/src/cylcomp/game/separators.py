"""Separators, periodic paths, virtual cordons, and criticality.

All queries are against a compressed cylinder.  For a row set I the quantity
g_I = gcd(m_i : i in I) controls periodicity: cop positions are closed into
the g_I-periodic set they generate, and crossing paths repeat with period
g_I.  Minimal vertex separators span fewer columns than their size, so the
cordon search only ever inspects windows of k+c consecutive columns.
"""

from dataclasses import dataclass
from itertools import combinations, product

from ..cylinder import edge
from ..errors import SearchBudgetExceeded


def rows_of(W, i):
    return [v for v in W if v[0] == i]


def unique_rows(cc, W):
    """Rows holding at most one cop (given every row is occupied)."""
    return [i for i in range(1, cc.k + 1) if len(rows_of(W, i)) <= 1]


def periodized_columns(cc, W, I):
    """Per row in I, the set of columns blocked by the g_I-closure of W."""
    g = cc.params.g(I)
    blocked = {}
    for i in I:
        residues = {a % g for (row, a) in W if row == i}
        blocked[i] = residues
    return blocked, g


def _interval_rows(cc, start, length):
    return tuple((start + d - 1) % cc.k + 1 for d in range(length))


def cyclic_row_intervals(cc, max_len):
    """All cyclic row intervals of size 1..max_len, deterministically ordered."""
    seen, out = set(), []
    for length in range(1, min(max_len, cc.k) + 1):
        for start in range(1, cc.k + 1):
            rows = _interval_rows(cc, start, length)
            key = frozenset(rows)
            if key not in seen:
                seen.add(key)
                out.append(rows)
    return out


def _window_graph(cc, I, cols):
    """Induced subgraph on rows I and the given column range, as adjacency."""
    I = list(I)
    rows = set(I)
    verts = [(i, a) for i in I for a in cols]
    adj = {v: [] for v in verts}
    lo, hi = cols[0], cols[-1]
    for i, a in verts:
        if a > lo:
            adj[(i, a)].append((i, a - 1))
        if a < hi:
            adj[(i, a)].append((i, a + 1))
        for j in ({3 - i} if cc.k == 2 else {(i - 2) % cc.k + 1, i % cc.k + 1}):
            if j in rows and j != i:
                adj[(i, a)].append((j, a))
    return adj


def _bfs_crosses(adj, sources, targets, blocked):
    frontier = [v for v in sources if v not in blocked]
    seen = set(frontier)
    targets = set(targets)
    while frontier:
        nxt = []
        for v in frontier:
            if v in targets:
                return True
            for w in adj[v]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return any(t in seen for t in targets)


def is_I_separating(cc, W, I):
    """No I-periodic path crosses the cylinder avoiding the closure of W.

    Decided on one abstract period: the periodized cop set repeats with
    period g_I, so a window of g_I+1 columns carries all the information.
    With fewer cops than g_I on the rows of I the window anchors at a free
    column and plain reachability decides; otherwise the full periodic-path
    pattern search runs.
    """
    blocked_res, g = periodized_columns(cc, W, I)
    free = _free_residue(cc, I, blocked_res, g)
    if free is not None:
        cols = list(range(free, free + g + 1))
        adj = _window_graph(cc, I, cols)
        blocked = {(i, a) for (i, a) in adj if (a % g) in blocked_res[i]}
        sources = [(i, free) for i in I]
        targets = [(i, free + g) for i in I]
        return not _bfs_crosses(adj, sources, targets, blocked)
    return _find_pattern(cc, W, I, anchor=1) is None


def _free_residue(cc, I, blocked_res, g):
    for b in range(g):
        if all(b not in blocked_res[i] for i in I):
            return b if b > 0 else g  # use column g for residue 0
    return None


def _find_pattern(cc, W, I, anchor=1):
    """One-period pattern of an I-periodic path, by DFS in a g_I+1 window.

    A pattern is a simple path from column `anchor` to column `anchor+g`
    that starts and ends in the same row, touches the start column only
    once (so consecutive copies glue into a simple path), and avoids the
    periodized cop set.  Only needed when no column is fully free; with a
    free column the good-period construction below is used instead.
    """
    blocked_res, g = periodized_columns(cc, W, I)
    cols = list(range(anchor, anchor + g + 1))
    adj = _window_graph(cc, I, cols)
    blocked = {(i, a) for (i, a) in adj if (a % g) in blocked_res[i]}

    lo, hi = anchor, anchor + g
    for start_row in sorted(I):
        start = (start_row, lo)
        if start in blocked:
            continue
        path = [start]
        on_path = {start}

        def dfs():
            v = path[-1]
            if v == (start_row, hi):
                return True
            for w in adj[v]:
                # visiting the start column again would break the periodic
                # gluing of consecutive pattern copies
                if w in on_path or w in blocked or w[1] == lo:
                    continue
                path.append(w)
                on_path.add(w)
                if dfs():
                    return True
                on_path.discard(w)
                path.pop()
            return False

        if dfs():
            return list(path)
    return None


def _good_period_pattern(cc, W, I, free):
    """Pattern from a crossing path of the good period anchored at `free`.

    Breadth-first search finds a window crossing; truncating it between its
    last visit of the free column and its first visit of the far column
    makes it single-touch, and a vertical run along the (free) far column
    returns it to its start row.
    """
    blocked_res, g = periodized_columns(cc, W, I)
    cols = list(range(free, free + g + 1))
    adj = _window_graph(cc, I, cols)
    blocked = {(i, a) for (i, a) in adj if (a % g) in blocked_res[i]}
    lo, hi = free, free + g

    predecessor = {}
    frontier = [(i, lo) for i in I if (i, lo) not in blocked]
    seen = set(frontier)
    goal = None
    while frontier and goal is None:
        nxt = []
        for v in frontier:
            if v[1] == hi:
                goal = v
                break
            for w in adj[v]:
                if w not in seen and w not in blocked:
                    seen.add(w)
                    predecessor[w] = v
                    nxt.append(w)
        frontier = nxt
    if goal is None:
        return None

    walk = [goal]
    while walk[-1] in predecessor:
        walk.append(predecessor[walk[-1]])
    walk.reverse()
    last_lo = max(idx for idx, v in enumerate(walk) if v[1] == lo)
    first_hi = min(idx for idx, v in enumerate(walk)
                   if v[1] == hi and idx >= last_lo)
    pattern = walk[last_lo:first_hi + 1]

    start_row, end_row = pattern[0][0], pattern[-1][0]
    if end_row != start_row:
        run = _column_run(adj, hi, end_row, start_row)
        if run is None:
            return _find_pattern(cc, W, I, anchor=1)
        pattern.extend(run[1:])
    return pattern


def _column_run(adj, column, from_row, to_row):
    """Shortest walk between two rows inside one (free) column."""
    predecessor = {}
    frontier = [(from_row, column)]
    seen = {frontier[0]}
    while frontier:
        nxt = []
        for v in frontier:
            if v == (to_row, column):
                walk = [v]
                while walk[-1] in predecessor:
                    walk.append(predecessor[walk[-1]])
                walk.reverse()
                return walk
            for w in adj[v]:
                if w[1] == column and w not in seen:
                    seen.add(w)
                    predecessor[w] = v
                    nxt.append(w)
        frontier = nxt
    return None


def _free_column_pattern_or_none(cc, W, I):
    """Decide pattern existence, constructively where possible."""
    blocked_res, g = periodized_columns(cc, W, I)
    free = _free_residue(cc, I, blocked_res, g)
    if free is not None:
        return _good_period_pattern(cc, W, I, free), True
    return _find_pattern(cc, W, I, anchor=1), False


def find_I_periodic_path(cc, W, I):
    """A full-width I-periodic path avoiding the closure of W, or None.

    With a free column the pattern is built from that good period
    (breadth-first search, truncation, and a vertical return run); it is
    then repeated from the first hit of column 1 to the first hit of the
    last column.
    """
    pattern, _ = _free_column_pattern_or_none(cc, W, I)
    if pattern is None:
        return None
    _, g = periodized_columns(cc, W, I)
    return _extend_pattern(cc, pattern, g)


def _extend_pattern(cc, pattern, g):
    """Periodically extend a one-period pattern across the whole cylinder.

    Extends outward from the anchor copy, stopping at the first visit of
    column 1 on the left and of the last column on the right.
    """
    width = cc.width

    def shifted(t):
        return [(i, a + t * g) for (i, a) in pattern]

    lo_t = -(pattern[0][1] // g) - 2
    hi_t = (width - pattern[0][1]) // g + 2
    walk = []
    anchor_pos = None
    for t in range(lo_t, hi_t + 1):
        seg = shifted(t)
        if walk and walk[-1] == seg[0]:
            seg = seg[1:]
        if t == 0:
            anchor_pos = len(walk)
        walk.extend(seg)
    left = next(i for i in range(anchor_pos, -1, -1) if walk[i][1] == 1)
    right = next(i for i in range(anchor_pos, len(walk)) if walk[i][1] == width)
    clipped = walk[left:right + 1]
    assert all(1 <= v[1] <= width for v in clipped)
    assert len(set(clipped)) == len(clipped), "extension is not simple"
    return clipped


def path_edges(path):
    return frozenset(edge(u, v) for u, v in zip(path, path[1:]))


def is_a_separating(cc, W, a, interval_mode=True):
    """a-separating: I-separating for every I with 1 <= |I| <= a.

    Interval mode quantifies over cyclic row intervals (what the strategy
    uses); strict mode quantifies over all row subsets.
    """
    if interval_mode:
        row_sets = cyclic_row_intervals(cc, a)
    else:
        row_sets = [rows for size in range(1, min(a, cc.k) + 1)
                    for rows in combinations(range(1, cc.k + 1), size)]
    return all(is_I_separating(cc, W, I) for I in row_sets)


# -- vertex separators on the full cylinder -----------------------------------


def is_vertex_separator(cc, S):
    """S blocks every path from column 1 to the last column."""
    S = set(S)
    adj = cc.graph.adjacency
    sources = [(i, 1) for i in range(1, cc.k + 1)]
    targets = {(i, cc.width) for i in range(1, cc.k + 1)}
    frontier = [v for v in sources if v not in S]
    seen = set(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            if v in targets:
                return False
            for w in adj[v]:
                if w not in seen and w not in S:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return not (seen & targets)


def diam(S):
    cols = [a for (_, a) in S]
    return max(cols) - min(cols) if cols else 0


def horizontal_distance(A_cols, B_cols):
    return min(abs(a - b) for a in A_cols for b in B_cols)


@dataclass
class CordonQueryResult:
    separating: dict
    witness: frozenset
    minimal_cordons: tuple


def _vclass_columns(cc, v):
    """Columns of all vertices equivalent to v (same row)."""
    members = cc.compression.vertex_members[cc.compression.vertex_class[v]]
    return sorted(a for (_, a) in members)


def minimal_virtual_cordons(cc, W, budget=200_000):
    """All inclusion-minimal virtual cordons of W.

    A virtual cordon is a vertex separator with at most |W_i| vertices on
    each row i and, on rows where W has a single cop, only vertices from
    that cop's class.  Minimal separators span at most |S|-1 <= k+c-1
    columns, so candidates are enumerated inside sliding column windows
    anchored at the class columns of a least-populated unique row.
    """
    k = cc.k
    span = k + cc.params.c
    per_row = {i: rows_of(W, i) for i in range(1, k + 1)}
    if any(not per_row[i] for i in per_row):
        return []
    uniq = [i for i in per_row if len(per_row[i]) == 1]
    if not uniq:
        return []
    allowed_uniq = {i: _vclass_columns(cc, per_row[i][0]) for i in uniq}
    pivot = min(uniq, key=lambda i: len(allowed_uniq[i]))

    anchors = set()
    for col in allowed_uniq[pivot]:
        for d in range(span):
            anchors.add(max(1, min(col - d, cc.width - span + 1)))
    candidates = set()
    checked = 0
    for a in sorted(anchors):
        window = range(a, min(a + span, cc.width + 1))
        choices = []
        feasible = True
        for i in range(1, k + 1):
            if i in uniq:
                opts = [frozenset([(i, col)])
                        for col in allowed_uniq[i] if col in window]
            else:
                cols = [(i, col) for col in window]
                budget_i = min(len(per_row[i]), len(cols))
                opts = [frozenset(sub) for size in range(1, budget_i + 1)
                        for sub in combinations(cols, size)]
            if not opts:
                feasible = False
                break
            choices.append(opts)
        if not feasible:
            continue
        count = 1
        for opts in choices:
            count *= len(opts)
        checked += count
        if checked > budget:
            raise SearchBudgetExceeded("cordon window enumeration too large")
        for parts in product(*choices):
            S = frozenset().union(*parts)
            if S not in candidates and is_vertex_separator(cc, S):
                candidates.add(S)

    minimal = []
    for S in sorted(candidates, key=lambda s: (len(s), sorted(s))):
        if any(m < S for m in minimal):
            continue
        if all(not is_vertex_separator(cc, S - {v}) for v in S):
            minimal.append(S)
    return minimal


def find_virtual_cordon(cc, W, budget=200_000):
    cordons = minimal_virtual_cordons(cc, W, budget=budget)
    return cordons[0] if cordons else None


def is_critical(cc, W, interval_mode=True, budget=200_000):
    """Critical: (c+1)-separating and admitting a virtual cordon."""
    if not is_a_separating(cc, W, cc.params.c + 1, interval_mode=interval_mode):
        return False
    return find_virtual_cordon(cc, W, budget=budget) is not None


def cordon_query(cc, W, max_interval=None, interval_mode=True):
    """Bundled query: per-interval separation plus the cordon inventory."""
    max_interval = max_interval or (cc.params.c + 1)
    separating = {I: is_I_separating(cc, W, I)
                  for I in cyclic_row_intervals(cc, max_interval)}
    cordons = minimal_virtual_cordons(cc, W)
    return CordonQueryResult(
        separating=separating,
        witness=cordons[0] if cordons else None,
        minimal_cordons=tuple(cordons),
    )
