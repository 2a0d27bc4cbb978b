"""Random restrictions collapsing an indexing lift back to its source.

A restriction fixes one pointer per block (x[i,j_i] = 1, the rest 0), sets
the chaining variables so every encoder clause holds, assigns the
non-selected y values uniformly, and leaves y[i,j_i] free.  The restricted
lift is the source formula after renaming z_i to y[i,j_i]; restricting a
refutation keeps it a refutation and cannot increase its depth.
"""

import random
from dataclasses import dataclass

from .errors import VariableDomainMismatch
from .resolution import Axiom, Resolve, ResolutionProof, Weaken
from .tseitin import Cnf


@dataclass(frozen=True)
class Restriction:
    pointers: tuple      # j_i per block, 1-based
    y_values: tuple      # per block: tuple of (j, value) for j != j_i

    def free_variable(self, bmap, i):
        return bmap.y(i, self.pointers[i - 1])


def sample_restriction(bmap, seed):
    rng = random.Random(seed)
    pointers, y_values = [], []
    for _i in range(1, bmap.num_blocks + 1):
        j = rng.randrange(1, bmap.gadget_size + 1)
        pointers.append(j)
        y_values.append(tuple(
            (other, rng.randrange(2))
            for other in range(1, bmap.gadget_size + 1) if other != j))
    return Restriction(tuple(pointers), tuple(y_values))


def restriction_assignment(bmap, restriction):
    """The full variable map fixed by the restriction (free y's absent).

    Chaining variable s[i,t] is set exactly when the selected pointer lies
    beyond position t+1, which satisfies every clause of the chain encoding.
    """
    value = {}
    m = bmap.gadget_size
    for i in range(1, bmap.num_blocks + 1):
        j_sel = restriction.pointers[i - 1]
        for j in range(1, m + 1):
            value[bmap.x(i, j)] = 1 if j == j_sel else 0
        for (j, bit) in restriction.y_values[i - 1]:
            value[bmap.y(i, j)] = bit
        for t in range(1, bmap.ext_per_block + 1):
            value[bmap.ext(i, t)] = 1 if j_sel >= t + 2 else 0
    return value


def restriction_to_text(restriction):
    lines = []
    for i, (j, yv) in enumerate(zip(restriction.pointers,
                                    restriction.y_values), start=1):
        bits = "".join(str(b) for (_, b) in yv)
        lines.append(f"block {i} ptr {j} y {bits}")
    return "\n".join(lines) + "\n"


def _restrict_clause(clause, value):
    """None when satisfied, else the surviving literals."""
    out = []
    for lit in clause:
        var = abs(lit)
        if var in value:
            if value[var] == (1 if lit > 0 else 0):
                return None
            continue
        out.append(lit)
    return frozenset(out)


def _rename_literal(lit, bmap, restriction):
    var = abs(lit)
    kind, _ = bmap.kind_of(var)
    assert kind == "y", "only selected y variables survive a restriction"
    block = bmap.block_of(var)
    return block if lit > 0 else -block


def apply_restriction_cnf(cnf, bmap, restriction):
    """Restricted formula, renamed back to one variable per block."""
    if cnf.num_vars != bmap.num_vars:
        raise VariableDomainMismatch(
            f"{cnf.num_vars} variables vs block map {bmap.num_vars}")
    value = restriction_assignment(bmap, restriction)
    clauses = []
    for clause in cnf.clauses:
        restricted = _restrict_clause(clause, value)
        if restricted is None:
            continue
        clauses.append(frozenset(
            _rename_literal(lit, bmap, restriction) for lit in restricted))
    return Cnf(bmap.num_blocks, clauses)


def apply_restriction_proof(proof, cnf, bmap, restriction, restricted_cnf):
    """Restrict a refutation of the lift into one of the renamed source.

    Satisfied clauses disappear; a resolution whose pivot was assigned
    falls back to the surviving premise.  Depth never increases.
    """
    value = restriction_assignment(bmap, restriction)
    clause_index = {}
    for i, clause in enumerate(restricted_cnf.clauses):
        clause_index.setdefault(clause, i)

    steps = []
    mapping = {}    # old index -> ("sat", None) or ("step", new index)

    def emit(step):
        steps.append(step)
        return len(steps) - 1

    for idx, step in enumerate(proof.steps):
        if isinstance(step, Axiom):
            restricted = _restrict_clause(step.clause, value)
            if restricted is None:
                mapping[idx] = ("sat", None)
                continue
            renamed = frozenset(_rename_literal(l, bmap, restriction)
                                for l in restricted)
            mapping[idx] = ("step", emit(Axiom(clause_index[renamed], renamed)))
        elif isinstance(step, Weaken):
            mapping[idx] = mapping[step.source]
        else:
            pivot_val = value.get(step.pivot)
            left_kind, left_id = mapping[step.left]
            right_kind, right_id = mapping[step.right]
            if pivot_val == 1:
                mapping[idx] = mapping[step.right]
            elif pivot_val == 0:
                mapping[idx] = mapping[step.left]
            elif left_kind == "sat" or right_kind == "sat":
                mapping[idx] = ("sat", None)
            else:
                pivot = _rename_literal(step.pivot, bmap, restriction)
                left_clause = steps[left_id].clause
                right_clause = steps[right_id].clause
                if pivot not in left_clause:
                    mapping[idx] = ("step", left_id)
                elif -pivot not in right_clause:
                    mapping[idx] = ("step", right_id)
                else:
                    resolvent = frozenset((left_clause - {pivot})
                                          | (right_clause - {-pivot}))
                    mapping[idx] = ("step", emit(
                        Resolve(left_id, right_id, pivot, resolvent)))
    kind, final = mapping[len(proof.steps) - 1]
    assert kind == "step" and steps[final].clause == frozenset()
    keep, stack = set(), [final]
    while stack:
        cur = stack.pop()
        if cur in keep:
            continue
        keep.add(cur)
        step = steps[cur]
        if isinstance(step, Resolve):
            stack.extend((step.left, step.right))
    order = sorted(keep)
    remap = {old: new for new, old in enumerate(order)}
    pruned = []
    for old in order:
        step = steps[old]
        if isinstance(step, Resolve):
            step = Resolve(remap[step.left], remap[step.right],
                           step.pivot, step.clause)
        pruned.append(step)
    return ResolutionProof(pruned)


# -- width after restriction -----------------------------------------------------


def restricted_width(clause, bmap, restriction):
    value = restriction_assignment(bmap, restriction)
    restricted = _restrict_clause(clause, value)
    return 0 if restricted is None else len(restricted)


def exact_width_distribution(clause, bmap):
    """Distribution of the restricted width by enumerating all restrictions
    of the mentioned blocks (feasible for one or two blocks)."""
    from itertools import product as iproduct
    assert all(bmap.kind_of(abs(l))[0] == "y" for l in clause), \
        "exact enumeration expects a clause over y variables"
    blocks = sorted({bmap.block_of(abs(l)) for l in clause})
    m = bmap.gadget_size
    per_block = []
    for _ in blocks:
        options = []
        for j in range(1, m + 1):
            for bits in iproduct((0, 1), repeat=m - 1):
                options.append((j, bits))
        per_block.append(options)
    counts, total = {}, 0
    for combo in iproduct(*per_block):
        pointers, y_values = [], []
        pos = 0
        for i in range(1, bmap.num_blocks + 1):
            if i in blocks:
                j, bits = combo[pos]
                pos += 1
                pointers.append(j)
                others = [o for o in range(1, m + 1) if o != j]
                y_values.append(tuple(zip(others, bits)))
            else:
                pointers.append(1)
                y_values.append(tuple((o, 0) for o in range(2, m + 1)))
        w = restricted_width(clause, bmap,
                             Restriction(tuple(pointers), tuple(y_values)))
        counts[w] = counts.get(w, 0) + 1
        total += 1
    return {w: c / total for w, c in counts.items()}


def wilson_interval(successes, trials, z=3.0):
    if trials == 0:
        return (0.0, 1.0)
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * ((phat * (1 - phat) / trials
                 + z * z / (4 * trials * trials)) ** 0.5) / denom
    return (max(0.0, center - half), min(1.0, center + half))


def restriction_width_tail(clause, bmap, trials, seed):
    """Monte Carlo tail of the restricted width against (2/(m+1))^w.

    Returns rows (w, empirical tail, bound, wilson low, wilson high).
    """
    m = bmap.gadget_size
    widths = []
    for t in range(trials):
        rho = sample_restriction(bmap, seed * 1_000_003 + t)
        widths.append(restricted_width(clause, bmap, rho))
    max_w = max(widths, default=0)
    rows = []
    for w in range(1, max(2, max_w + 1)):
        hits = sum(1 for x in widths if x >= w)
        low, high = wilson_interval(hits, trials)
        rows.append((w, hits / trials, (2.0 / (m + 1)) ** w, low, high))
    return rows
