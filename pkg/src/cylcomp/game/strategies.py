"""Controllers: the scripted robber, both cop strategies, and random play.

The robber keeps to cop-free columns in the two ears and monitors the
cops' virtual cordons.  While the cop set is not critical it drifts within
its part; the round the cops first become critical it commits to the side
whose distance to every minimal virtual cordon is at least L/2 - (k+c), and
afterwards it stays there.  Moves themselves come from the parity solver,
which finds some class-closed edge set to the chosen target.
"""

import random

from ..errors import StrategyStuck
from .engine import CompressibleMove
from .moves import MoveSolver
from .separators import is_critical, minimal_virtual_cordons


class Controller:
    def reset(self, cc, num_cops, seed):
        self.cc = cc
        self.num_cops = num_cops
        self.rng = random.Random(seed)

    def observe_landing(self, state, lifted, signal, move):
        pass

    def choose_lift(self, state):
        return next(i for i, p in enumerate(state.cop_positions) if p is not None)


def _part_columns(cc, side):
    r, width = cc.params.ear_length, cc.width
    return range(1, r + 1) if side == "left" else range(width - r + 1, width + 1)


def _free_column(cc, cops, side):
    occupied = {a for (_, a) in cops}
    for a in _part_columns(cc, side):
        if a not in occupied:
            return a
    return None


class ScriptedRobber(Controller):
    """The three-case strategy maintaining the two survival invariants."""

    def __init__(self, start=(1, 1), interval_mode=True):
        self.start = start
        self.interval_mode = interval_mode

    def reset(self, cc, num_cops, seed):
        super().reset(cc, num_cops, seed)
        self.solver = MoveSolver(cc)

    def start_vertex(self):
        return self.start

    def _target_column(self, state, w_minus, w_plus):
        cc = self.cc
        side = "left" if state.robber[1] <= cc.params.ear_length else "right"
        crit_minus = is_critical(cc, w_minus, interval_mode=self.interval_mode)
        crit_plus = crit_minus or is_critical(
            cc, w_plus, interval_mode=self.interval_mode)

        if not crit_plus or crit_minus:
            # stay on the current side: either nothing is critical yet, or we
            # already committed when the cops first became critical
            return side, _free_column(cc, w_plus, side)

        # the cops become critical this round: pick the far side once
        cordons = minimal_virtual_cordons(cc, w_plus)
        cols = sorted({a for S in cordons for (_, a) in S})
        r, width = cc.params.ear_length, cc.width
        d_left = min((c - r for c in cols), default=width)
        d_right = min((width - r + 1 - c for c in cols), default=width)
        far = "left" if d_left >= d_right else "right"
        return far, _free_column(cc, w_plus, far)

    def _guaranteed_rounds(self, state):
        """Rounds the strategy must survive; only promised against at most
        k+c cops."""
        params = self.cc.params
        if state.num_cops > params.k + params.c:
            return 0
        return ((params.middle_length - 2 * params.ear_length)
                // (8 * (params.k + params.c)))

    def _try_columns(self, w1, columns, avoid_sets):
        k = self.cc.k
        for avoid in avoid_sets:
            for column in columns:
                if column == w1[1]:
                    row_order = [w1[0] % k + 1] + [
                        i for i in range(1, k + 1) if i != w1[0] % k + 1]
                else:
                    row_order = [w1[0]] + [i for i in range(1, k + 1)
                                           if i != w1[0]]
                for row in row_order:
                    w2 = (row, column)
                    if w2 == w1:
                        continue
                    edges = self.solver.find_move(avoid, w1, w2)
                    if edges is not None:
                        return CompressibleMove(edges, w1, w2)
        return None

    def move(self, state):
        cc = self.cc
        w1 = state.robber
        w_minus = set(state.landed)
        w_plus = w_minus | {state.signal}
        side, column = self._target_column(state, w_minus, w_plus)

        if column is not None:
            move = self._try_columns(w1, [column], (w_plus, w_minus))
            if move is not None:
                return move
        # scripted target unreachable: any free column of the current part,
        # then anything legal at all; concede only past the guaranteed budget
        fallback = [a for a in _part_columns(cc, side)
                    if all(v[1] != a for v in w_plus)]
        move = self._try_columns(w1, fallback, (w_plus, w_minus))
        if move is None:
            everything = [a for a in range(1, cc.width + 1)
                          if all(v[1] != a for v in w_minus)]
            move = self._try_columns(w1, everything, (w_minus,))
        if move is not None:
            if state.round <= self._guaranteed_rounds(state):
                raise StrategyStuck(
                    f"round {state.round}: scripted target unreachable from {w1}")
            return move
        if state.round <= self._guaranteed_rounds(state):
            raise StrategyStuck(f"round {state.round}: no legal move from {w1}")
        return None


class RandomRobber(Controller):
    """Legal but aimless: random targets fed to the parity solver."""

    def __init__(self, start=(1, 1), attempts=40):
        self.start = start
        self.attempts = attempts

    def reset(self, cc, num_cops, seed):
        super().reset(cc, num_cops, seed)
        self.solver = MoveSolver(cc)

    def start_vertex(self):
        return self.start

    def move(self, state):
        w1 = state.robber
        w_minus = set(state.landed)
        vertices = self.cc.graph.vertices
        for _ in range(self.attempts):
            w2 = vertices[self.rng.randrange(len(vertices))]
            if w2 == w1:
                continue
            edges = self.solver.find_move(w_minus, w1, w2)
            if edges is not None:
                return CompressibleMove(edges, w1, w2)
        return None


class LockstepCops(Controller):
    """Occupy the middle column, then march a staircase front at the robber.

    The front keeps one cop per row across two adjacent columns at all
    times, so it stays a vertex separator while it advances one row per
    round; the spare cop feeds the pipeline.
    """

    def reset(self, cc, num_cops, seed):
        super().reset(cc, num_cops, seed)
        self.mid = (cc.width + 1) // 2
        self.occupied_rows = 0
        self.front = None        # column fully occupied (or being left)
        self.new_col = None      # column being occupied
        self.rows_moved = 0

    def _direction(self, state):
        return 1 if state.robber[1] > self.front else -1

    def choose_lift(self, state):
        # all cops landed: retire the doubled row behind the front
        if self.rows_moved >= self.cc.k:
            # the full column has shifted; roll the front and re-aim
            retire = (self.cc.k, self.front)
            self.front = self.new_col
            self.new_col = None
            self.rows_moved = 0
        else:
            retire = (self.rows_moved, self.front)
        return state.cop_positions.index(retire)

    def signal(self, state):
        if self.occupied_rows < self.cc.k:
            return (self.occupied_rows + 1, self.mid)
        if self.front is None:
            self.front = self.mid
        if self.new_col is None:
            step = self._direction(state)
            self.new_col = min(max(self.front + step, 1), self.cc.width)
        return (self.rows_moved + 1, self.new_col)

    def observe_landing(self, state, lifted, signal, move):
        if self.occupied_rows < self.cc.k:
            self.occupied_rows += 1
            return
        self.rows_moved += 1


class RandomCops(Controller):
    def choose_lift(self, state):
        landed = [i for i, p in enumerate(state.cop_positions) if p is not None]
        return landed[self.rng.randrange(len(landed))]

    def signal(self, state):
        vertices = self.cc.graph.vertices
        return vertices[self.rng.randrange(len(vertices))]


class RefutationCops(Controller):
    """Walk a refutation of the compressed Tseitin formula from the empty
    clause, keeping a total assignment that falsifies only the robber's
    class and one cop per variable of the current clause.

    With width(proof)+1 cops this wins within depth+1 rounds; with fewer
    cops the association bookkeeping degrades but play stays legal.
    """

    def __init__(self, tau, proof, nice_assignment=None):
        self.tau = tau
        self.proof = proof
        self.nice_assignment = nice_assignment

    def reset(self, cc, num_cops, seed):
        super().reset(cc, num_cops, seed)
        self.steps = self.proof.steps
        self.current = len(self.steps) - 1
        if self.nice_assignment is None:
            self.alpha = {v: 0 for v in range(1, self.tau.num_vars + 1)}
        else:
            self.alpha = dict(self.nice_assignment)
        self.assoc = {}
        self.alpha_history = []
        # canonical vertex incident to each edge-class variable
        comp = cc.compression
        self.signal_vertex = {}
        for eid, members in enumerate(comp.edge_members):
            self.signal_vertex[eid + 1] = min(min(e) for e in members)

    def _current_step(self):
        return self.steps[self.current]

    def choose_lift(self, state):
        step = self._current_step()
        needed = {self.assoc[v] for v in map(abs, step.clause) if v in self.assoc}
        landed = [i for i, p in enumerate(state.cop_positions) if p is not None]
        candidates = [i for i in landed if i not in needed]
        if candidates:
            return candidates[0]
        victim = landed[-1]
        self.assoc = {v: c for v, c in self.assoc.items() if c != victim}
        return victim

    def signal(self, state):
        step = self._current_step()
        if hasattr(step, "pivot"):
            return self.signal_vertex[step.pivot]
        return state.robber  # axiom endgame: corner the robber

    def observe_landing(self, state, lifted, signal, move):
        comp = self.cc.compression
        flipped = {comp.edge_class[e] for e in move.edges}
        for eid in flipped:
            self.alpha[eid + 1] ^= 1
        self.alpha_history.append(dict(self.alpha))
        step = self._current_step()
        if hasattr(step, "pivot"):
            self.assoc[step.pivot] = lifted
            if self.alpha[step.pivot] == 0:
                self.current = step.left   # positive pivot literal falsified
            else:
                self.current = step.right
