"""Tseitin formulas on charged graphs and their compressed projections.

Each vertex contributes the 2^(deg-1) clauses forcing the parity of its
incident edge variables to equal its charge; the formula is unsatisfiable
exactly when the total charge is odd.  Compressing substitutes one variable
per edge class, which turns the clause sets of equivalent vertices into the
same clauses; we keep one copy per vertex class.
"""

from dataclasses import dataclass
from itertools import product

from .errors import (ChargeNotClassConstant, DegreeTooLarge, ParseError,
                     TooManyVariables)

MAX_DEGREE = 30
MAX_BRUTE_FORCE_VARS = 26


@dataclass
class Cnf:
    num_vars: int
    clauses: list
    names: dict = None
    clause_origin: list = None  # optional per-clause provenance tag

    @property
    def width(self):
        return max((len(c) for c in self.clauses), default=0)

    @property
    def clause_count(self):
        return len(self.clauses)

    @property
    def width_sum(self):
        """Total number of literals; the size measure that weights by width."""
        return sum(len(c) for c in self.clauses)

    def variables(self):
        return range(1, self.num_vars + 1)


@dataclass
class TseitinInstance:
    graph: object
    charge: dict

    @property
    def total_charge(self):
        return sum(self.charge.get(v, 0) for v in self.graph.vertices) % 2


def single_odd_charge(graph, odd_vertex):
    return TseitinInstance(graph, {odd_vertex: 1})


def _parity_clauses(variables, charge):
    """All clauses over `variables` ruling out assignments of wrong parity."""
    clauses = []
    for bits in product((0, 1), repeat=len(variables)):
        if sum(bits) % 2 != charge:
            clauses.append(frozenset(
                v if b == 0 else -v for v, b in zip(variables, bits)))
    return clauses


def build_tseitin(instance):
    graph = instance.graph
    clauses, origin = [], []
    for v in graph.vertices:
        if graph.degree(v) > MAX_DEGREE:
            raise DegreeTooLarge(f"vertex {v} has degree {graph.degree(v)}")
        variables = [graph.edge_index[e] + 1 for e in graph.incident_edges(v)]
        vertex_clauses = _parity_clauses(variables, instance.charge.get(v, 0))
        clauses.extend(vertex_clauses)
        origin.extend([v] * len(vertex_clauses))
    names = {graph.edge_index[e] + 1: f"edge {e[0]}-{e[1]}" for e in graph.edges}
    return Cnf(graph.num_edges, clauses, names=names, clause_origin=origin)


def compress_tseitin(instance, compression):
    """One variable per edge class; one clause set per vertex class."""
    graph = instance.graph
    for members in compression.vertex_members:
        charges = {instance.charge.get(v, 0) for v in members}
        if len(charges) > 1:
            raise ChargeNotClassConstant(f"class of {members[0]} mixes charges")
    clauses, origin = [], []
    for cid, members in enumerate(compression.vertex_members):
        rep = members[0]
        variables = [compression.edge_class[e] + 1
                     for e in graph.incident_edges(rep)]
        if len(set(variables)) != len(variables):
            # Parity clauses over a repeated class variable would degenerate;
            # this cannot happen on the cylinder compression.
            raise RuntimeError(
                f"vertex {rep} has two incident edges in one class")
        vertex_clauses = _parity_clauses(variables, instance.charge.get(rep, 0))
        clauses.extend(vertex_clauses)
        origin.extend([cid] * len(vertex_clauses))
    names = {}
    for eid, members in enumerate(compression.edge_members):
        u, v = members[0]
        names[eid + 1] = f"eclass {eid} rep {u[0]},{u[1]}-{v[0]},{v[1]} x{len(members)}"
    return Cnf(compression.num_edge_classes, clauses, names=names,
               clause_origin=origin)


def compressed_cylinder_tseitin(cc, odd_vertex=(1, 1)):
    """The compressed Tseitin instance with a single odd charge."""
    instance = single_odd_charge(cc.graph, odd_vertex)
    return instance, compress_tseitin(instance, cc.compression)


@dataclass
class NicenessCertificate:
    is_nice: bool
    falsified_classes: tuple
    falsified_representatives: tuple = ()


def check_niceness(instance, compression, candidate):
    """Certify that `candidate` (total, on edge-class variables) violates the
    parity constraint at exactly one vertex class and charges are
    class-constant."""
    graph = instance.graph
    for members in compression.vertex_members:
        if len({instance.charge.get(v, 0) for v in members}) > 1:
            return NicenessCertificate(False, ())
    falsified = []
    for cid, members in enumerate(compression.vertex_members):
        rep = members[0]
        total = sum(candidate[compression.edge_class[e] + 1]
                    for e in graph.incident_edges(rep)) % 2
        if total != instance.charge.get(rep, 0):
            falsified.append(cid)
    reps = tuple(compression.vertex_members[cid][0] for cid in falsified)
    return NicenessCertificate(len(falsified) == 1, tuple(falsified), reps)


def brute_force_satisfiable(cnf):
    """Exhaustive truth-table check, bit-parallel over all assignments.

    Variable i is represented by the 2^n-bit mask whose bit `a` is the value
    of variable i in assignment `a`; a clause's satisfying set is the union
    of its literal masks.
    """
    n = cnf.num_vars
    if n > MAX_BRUTE_FORCE_VARS:
        raise TooManyVariables(f"{n} variables exceeds {MAX_BRUTE_FORCE_VARS}")
    total = 1 << n
    full = (1 << total) - 1
    masks = []
    for i in range(n):
        block = ((1 << (1 << i)) - 1) << (1 << i)
        period = 1 << (i + 1)
        mask = block
        while period < total:
            mask |= mask << period
            period <<= 1
        masks.append(mask & full)
    satisfying = full
    for clause in cnf.clauses:
        sat = 0
        for lit in clause:
            m = masks[abs(lit) - 1]
            sat |= m if lit > 0 else full & ~m
        satisfying &= sat
        if satisfying == 0:
            return False
    return satisfying != 0


def export_dimacs(cnf):
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for clause in cnf.clauses:
        lits = sorted(clause, key=lambda l: (abs(l), l < 0))
        lines.append(" ".join(str(l) for l in lits) + " 0")
    return "\n".join(lines) + "\n"


def import_dimacs(text):
    num_vars = None
    clauses = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(line_no, f"bad problem line: {raw!r}")
            try:
                num_vars, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, f"bad problem line: {raw!r}")
            continue
        if num_vars is None:
            raise ParseError(line_no, "clause before problem line")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(line_no, f"bad literal in {raw!r}")
        if not lits or lits[-1] != 0:
            raise ParseError(line_no, "clause not zero-terminated")
        lits = lits[:-1]
        if any(l == 0 or abs(l) > num_vars for l in lits):
            raise ParseError(line_no, "literal out of range")
        clauses.append(frozenset(lits))
    if num_vars is None:
        raise ParseError(0, "missing problem line")
    return Cnf(num_vars, clauses)


def export_name_table(cnf):
    if not cnf.names:
        return ""
    lines = [f"var {i} {cnf.names[i]}" for i in sorted(cnf.names)]
    return "\n".join(lines) + "\n"
