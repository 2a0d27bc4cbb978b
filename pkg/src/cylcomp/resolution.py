"""Resolution proofs: trace model, checker, normalization, and exact oracles.

A proof is a sequence of steps (axiom, resolve, weaken), each carrying its
clause.  The checker recomputes every step.  Width counts axioms; depth is
the longest path in the derivation DAG, counting weakening edges, which
makes the depth oracle's lower bounds valid for both rule sets.
"""

import heapq
from dataclasses import dataclass

from .errors import (NotARefutation, ParseError, ResourceBudgetExceeded,
                     UnsoundStep)


@dataclass(frozen=True)
class Axiom:
    clause_index: int
    clause: frozenset


@dataclass(frozen=True)
class Resolve:
    left: int
    right: int
    pivot: int
    clause: frozenset


@dataclass(frozen=True)
class Weaken:
    source: int
    clause: frozenset


@dataclass
class ResolutionProof:
    steps: list

    @property
    def size(self):
        return len(self.steps)

    @property
    def width(self):
        return max((len(s.clause) for s in self.steps), default=0)

    def premises(self, idx):
        step = self.steps[idx]
        if isinstance(step, Resolve):
            return (step.left, step.right)
        if isinstance(step, Weaken):
            return (step.source,)
        return ()

    @property
    def depth(self):
        depths = []
        for idx, _ in enumerate(self.steps):
            prem = self.premises(idx)
            depths.append(1 + max(depths[p] for p in prem) if prem else 0)
        return max(depths, default=0)


@dataclass(frozen=True)
class ProofMetrics:
    size: int
    width: int
    depth: int


def _is_tautological(clause):
    return any(-lit in clause for lit in clause)


def resolve_clauses(left, right, pivot):
    """Resolvent of left (containing pivot) and right (containing -pivot)."""
    return frozenset((left - {pivot}) | (right - {-pivot}))


def check_refutation(cnf, proof):
    """Validate every step and return (size, width, depth) metrics."""
    if not proof.steps:
        raise NotARefutation("empty proof")
    for idx, step in enumerate(proof.steps):
        if isinstance(step, Axiom):
            if not 0 <= step.clause_index < len(cnf.clauses):
                raise UnsoundStep(idx, "axiom index out of range")
            if step.clause != cnf.clauses[step.clause_index]:
                raise UnsoundStep(idx, "axiom clause mismatch")
        elif isinstance(step, Resolve):
            for ref in (step.left, step.right):
                if not 0 <= ref < idx:
                    raise UnsoundStep(idx, "premise does not precede step")
            if step.pivot <= 0:
                raise UnsoundStep(idx, "pivot must be a positive variable")
            left = proof.steps[step.left].clause
            right = proof.steps[step.right].clause
            if step.pivot not in left:
                raise UnsoundStep(idx, "left premise lacks positive pivot")
            if -step.pivot not in right:
                raise UnsoundStep(idx, "right premise lacks negative pivot")
            resolvent = resolve_clauses(left, right, step.pivot)
            if _is_tautological(resolvent):
                raise UnsoundStep(idx, "tautological resolvent")
            if step.clause != resolvent:
                raise UnsoundStep(idx, "stored clause is not the resolvent")
        elif isinstance(step, Weaken):
            if not 0 <= step.source < idx:
                raise UnsoundStep(idx, "premise does not precede step")
            source = proof.steps[step.source].clause
            if not source <= step.clause:
                raise UnsoundStep(idx, "weakening drops literals")
            if _is_tautological(step.clause):
                raise UnsoundStep(idx, "tautological weakening")
        else:
            raise UnsoundStep(idx, f"unknown step kind {type(step).__name__}")
        for lit in step.clause:
            if lit == 0 or abs(lit) > cnf.num_vars:
                raise UnsoundStep(idx, "literal outside variable range")
    if proof.steps[-1].clause:
        raise NotARefutation("final clause is not empty")
    return ProofMetrics(proof.size, proof.width, proof.depth)


def eliminate_weakening(proof):
    """Drop weakening steps, shrinking clauses; prune unreachable steps.

    Size, width, and depth never increase.  Every surviving clause is a
    subset of the original step's clause.
    """
    new_steps = []
    redirect = {}  # old index -> new index
    for idx, step in enumerate(proof.steps):
        if isinstance(step, Axiom):
            redirect[idx] = len(new_steps)
            new_steps.append(step)
        elif isinstance(step, Weaken):
            redirect[idx] = redirect[step.source]
        else:
            li, ri = redirect[step.left], redirect[step.right]
            left, right = new_steps[li].clause, new_steps[ri].clause
            if step.pivot not in left:
                redirect[idx] = li
            elif -step.pivot not in right:
                redirect[idx] = ri
            else:
                redirect[idx] = len(new_steps)
                new_steps.append(Resolve(li, ri, step.pivot,
                                         resolve_clauses(left, right, step.pivot)))
    # prune to the ancestors of the final step
    final = redirect[len(proof.steps) - 1]
    keep = set()
    stack = [final]
    while stack:
        cur = stack.pop()
        if cur in keep:
            continue
        keep.add(cur)
        step = new_steps[cur]
        if isinstance(step, Resolve):
            stack.extend((step.left, step.right))
    order = sorted(keep)
    remap = {old: new for new, old in enumerate(order)}
    pruned = []
    for old in order:
        step = new_steps[old]
        if isinstance(step, Resolve):
            step = Resolve(remap[step.left], remap[step.right],
                           step.pivot, step.clause)
        pruned.append(step)
    return ResolutionProof(pruned)


def semantic_replay(cnf, proof, max_vars=20):
    """Check each non-axiom clause is implied by its premises (toy sizes)."""
    from itertools import product
    for idx, step in enumerate(proof.steps):
        prem = proof.premises(idx)
        if not prem:
            continue
        involved = sorted({abs(l) for p in prem for l in proof.steps[p].clause}
                          | {abs(l) for l in step.clause})
        if len(involved) > max_vars:
            raise ResourceBudgetExceeded("semantic replay too large")
        for bits in product((0, 1), repeat=len(involved)):
            val = dict(zip(involved, bits))
            def sat(clause):
                return any(val[abs(l)] == (1 if l > 0 else 0) for l in clause)
            if all(sat(proof.steps[p].clause) for p in prem) and not sat(step.clause):
                return idx
    return None


# -- exact oracles ------------------------------------------------------------


def _saturate_width(cnf, w, budget):
    """Closure of the width-<=w clauses of cnf under resolution.

    Weakening never helps derive the empty clause, so it is omitted; the
    verdict is unchanged.  Returns the closed set, or raises on budget.
    """
    active = set()
    for clause in cnf.clauses:
        if len(clause) <= w and not _is_tautological(clause):
            active.add(clause)
    by_literal = {}
    for clause in active:
        for lit in clause:
            by_literal.setdefault(lit, set()).add(clause)
    queue = list(active)
    while queue:
        clause = queue.pop()
        for lit in clause:
            for other in list(by_literal.get(-lit, ())):
                if lit > 0:
                    resolvent = resolve_clauses(clause, other, lit)
                else:
                    resolvent = resolve_clauses(other, clause, -lit)
                if len(resolvent) > w or _is_tautological(resolvent):
                    continue
                if resolvent not in active:
                    active.add(resolvent)
                    if len(active) > budget:
                        raise ResourceBudgetExceeded(
                            f"width-{w} closure exceeded {budget} clauses")
                    for l2 in resolvent:
                        by_literal.setdefault(l2, set()).add(resolvent)
                    queue.append(resolvent)
    return active


def min_refutation_width(cnf, cap, budget=500_000):
    """Least w <= cap whose width-w closure contains the empty clause.

    Returns None (unknown) if no width up to `cap` suffices.
    """
    for w in range(cap + 1):
        if frozenset() in _saturate_width(cnf, w, budget):
            return w
    return None


def exhaustive_min_width(cnf, max_vars=4):
    """Independent width oracle: Dijkstra over the whole clause space.

    The cost of deriving a clause is the max clause width on the derivation
    path; feasible only for a handful of variables.
    """
    if cnf.num_vars > max_vars:
        raise ResourceBudgetExceeded("clause space too large")
    best = {}
    heap = []
    for clause in cnf.clauses:
        if not _is_tautological(clause):
            cost = len(clause)
            if cost < best.get(clause, 10 ** 9):
                best[clause] = cost
                heapq.heappush(heap, (cost, sorted(clause)))
    done = set()
    while heap:
        cost, lits = heapq.heappop(heap)
        clause = frozenset(lits)
        if clause in done or cost > best.get(clause, 10 ** 9):
            continue
        done.add(clause)
        if clause == frozenset():
            return cost
        for other in list(done):
            for lit in clause:
                if -lit in other:
                    if lit > 0:
                        resolvent = resolve_clauses(clause, other, lit)
                    else:
                        resolvent = resolve_clauses(other, clause, -lit)
                    if _is_tautological(resolvent):
                        continue
                    new_cost = max(cost, best[other], len(resolvent))
                    if new_cost < best.get(resolvent, 10 ** 9):
                        best[resolvent] = new_cost
                        heapq.heappush(heap, (new_cost, sorted(resolvent)))
    return None


def _minimalize(clauses):
    """Inclusion-minimal elements of a clause set."""
    ordered = sorted(clauses, key=len)
    minimal = []
    for clause in ordered:
        if not any(m <= clause for m in minimal):
            minimal.append(clause)
    return set(minimal)


def min_depth_at_width(cnf, w, cap, budget=500_000):
    """Least t such that the empty clause appears in the level-t closure
    D_t at width w (D_0 = axioms, D_{t+1} adds width-<=w resolvents).

    Subsumption-minimal level sets are tracked; this preserves the level at
    which the empty clause first appears.  Weakening cannot lower it.
    Returns None when no width-w refutation exists or `cap` is passed.
    """
    current = _minimalize(c for c in cnf.clauses
                          if len(c) <= w and not _is_tautological(c))
    if frozenset() in current:
        return 0
    for t in range(1, cap + 1):
        new = set(current)
        items = sorted(current, key=sorted)
        for i, a in enumerate(items):
            for b in items[i:]:
                for lit in a:
                    if -lit in b:
                        if lit > 0:
                            resolvent = resolve_clauses(a, b, lit)
                        else:
                            resolvent = resolve_clauses(b, a, -lit)
                        if len(resolvent) <= w and not _is_tautological(resolvent):
                            new.add(resolvent)
                            if len(new) > budget:
                                raise ResourceBudgetExceeded(
                                    "depth fixpoint exceeded budget")
        new = _minimalize(new)
        if frozenset() in new:
            return t
        if new == current:
            return None
        current = new
    return None


# -- trace format -------------------------------------------------------------


def proof_to_trace(cnf, proof):
    lines = [f"p res {cnf.num_vars} {len(proof.steps)}"]
    for step in proof.steps:
        lits = " ".join(str(l) for l in sorted(step.clause, key=lambda l: (abs(l), l < 0)))
        lits = (lits + " 0") if lits else "0"
        if isinstance(step, Axiom):
            lines.append(f"a {step.clause_index + 1} {lits}")
        elif isinstance(step, Resolve):
            lines.append(f"r {step.left + 1} {step.right + 1} {step.pivot} {lits}")
        else:
            lines.append(f"w {step.source + 1} {lits}")
    return "\n".join(lines) + "\n"


def trace_to_proof(text):
    steps = []
    header_seen = False
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if parts[1:2] != ["res"] or len(parts) != 4:
                raise ParseError(line_no, f"bad header {raw!r}")
            header_seen = True
            continue
        if not header_seen:
            raise ParseError(line_no, "step before header")
        try:
            kind = parts[0]
            nums = [int(tok) for tok in parts[1:]]
        except (IndexError, ValueError):
            raise ParseError(line_no, f"bad step line {raw!r}")
        if not nums or nums[-1] != 0:
            raise ParseError(line_no, "step not zero-terminated")
        if kind == "a":
            steps.append(Axiom(nums[0] - 1, frozenset(nums[1:-1])))
        elif kind == "r":
            steps.append(Resolve(nums[0] - 1, nums[1] - 1, nums[2],
                                 frozenset(nums[3:-1])))
        elif kind == "w":
            steps.append(Weaken(nums[0] - 1, frozenset(nums[1:-1])))
        else:
            raise ParseError(line_no, f"unknown step kind {kind!r}")
    return ResolutionProof(steps)
