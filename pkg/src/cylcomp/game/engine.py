"""Compressed Cop-Robber game engine: referee, state machine, transcripts.

A round runs signal -> move -> landing.  The robber's move is validated
against the cop position after the lift (G1); the landing then happens and
capture is checked against vertex classes.  Illegal play is recorded as a
loss for the offending side rather than raised.
"""

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CompressibleMove:
    edges: frozenset
    source: tuple
    target: tuple


@dataclass(frozen=True)
class Violation:
    rule: str
    detail: str

    def __str__(self):
        return f"{self.rule}: {self.detail}"


def validate_compressible_move(compression, cop_vertices, move):
    """Check conditions G2a (class closure), G2b (cop avoidance), and G2c
    (parity flips exactly at the endpoint classes).  Returns None if legal.
    """
    M = move.edges
    w1, w2 = move.source, move.target
    if not M:
        return Violation("G2c", "empty move cannot flip any parity")
    if w1 == w2:
        return Violation("G2c", "source and target coincide")

    eclass = compression.edge_class
    in_M = set(M)
    for e in M:
        if e not in eclass:
            return Violation("G2a", f"unknown edge {e}")
        for member in compression.edge_members[eclass[e]]:
            if member not in in_M:
                return Violation("G2a", f"class of {e} not fully included")

    degree = {}
    for (u, v) in M:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1

    cops = set(cop_vertices)
    for u in degree:
        if u in cops:
            return Violation("G2b", f"move touches cop position {u}")

    vclass = compression.vertex_class
    flip_classes = {vclass[w1], vclass[w2]}
    if w1 not in degree or w2 not in degree:
        return Violation("G2c", "move does not touch both endpoints")
    for u, deg in degree.items():
        odd = deg % 2 == 1
        if odd != (vclass[u] in flip_classes):
            return Violation("G2c", f"parity mismatch at {u}")
    return None


@dataclass
class RoundRecord:
    round: int
    lifted: int
    signal: tuple
    move_edges: tuple
    robber: tuple
    cop_positions: tuple


@dataclass
class Transcript:
    num_cops: int
    start: tuple
    seed: int
    rounds: list = field(default_factory=list)
    verdict: str = ""
    end_round: int = 0

    def to_json(self):
        payload = {
            "num_cops": self.num_cops,
            "start": list(self.start),
            "seed": self.seed,
            "verdict": self.verdict,
            "end_round": self.end_round,
            "rounds": [
                {
                    "round": rec.round,
                    "lifted": rec.lifted,
                    "signal": list(rec.signal),
                    "move_edges": [[list(u), list(v)] for (u, v) in rec.move_edges],
                    "robber": list(rec.robber),
                    "cop_positions": [list(p) if p else None
                                      for p in rec.cop_positions],
                }
                for rec in self.rounds
            ],
        }
        return json.dumps(payload, indent=1, sort_keys=True)


@dataclass
class GameState:
    """What both players see mid-round."""
    cc: object
    num_cops: int
    cop_positions: list       # vertex or None (lifted)
    robber: tuple
    round: int
    signal: tuple = None

    @property
    def landed(self):
        return [p for p in self.cop_positions if p is not None]

    @property
    def landed_with_signal(self):
        return self.landed + ([self.signal] if self.signal else [])


def _captured(compression, cop_positions, robber):
    target = compression.vertex_class[robber]
    return any(p is not None and compression.vertex_class[p] == target
               for p in cop_positions)


def run_match(cc, cop_controller, robber_controller, num_cops,
              max_rounds, seed=0):
    """Play a full match; illegal moves terminate with a loss for that side."""
    compression = cc.compression
    cop_controller.reset(cc, num_cops, seed)
    robber_controller.reset(cc, num_cops, seed)
    robber = robber_controller.start_vertex()
    positions = [None] * num_cops
    transcript = Transcript(num_cops=num_cops, start=robber, seed=seed)

    for rnd in range(1, max_rounds + 1):
        state = GameState(cc, num_cops, list(positions), robber, rnd)

        lifted = next((i for i, p in enumerate(positions) if p is None), None)
        if lifted is None:
            lifted = cop_controller.choose_lift(state)
            if not (0 <= lifted < num_cops) or positions[lifted] is None:
                transcript.verdict = "illegal-cop"
                transcript.end_round = rnd
                return transcript
            positions[lifted] = None

        state = GameState(cc, num_cops, list(positions), robber, rnd)
        signal = cop_controller.signal(state)
        if signal not in compression.vertex_class:
            transcript.verdict = "illegal-cop"
            transcript.end_round = rnd
            return transcript
        state.signal = signal

        move = robber_controller.move(state)
        if move is None:
            transcript.rounds.append(RoundRecord(
                rnd, lifted, signal, (), robber, tuple(positions)))
            transcript.verdict = "capture"
            transcript.end_round = rnd
            return transcript
        violation = validate_compressible_move(
            compression, [p for p in positions if p is not None], move)
        if violation is not None or move.source != robber:
            transcript.verdict = "illegal-robber"
            transcript.end_round = rnd
            return transcript
        robber = move.target

        positions[lifted] = signal
        cop_controller.observe_landing(state, lifted, signal, move)
        transcript.rounds.append(RoundRecord(
            rnd, lifted, signal, tuple(sorted(move.edges)), robber,
            tuple(positions)))
        if _captured(compression, positions, robber):
            transcript.verdict = "capture"
            transcript.end_round = rnd
            return transcript

    transcript.verdict = "survived"
    transcript.end_round = max_rounds
    return transcript


def replay_transcript(cc, transcript):
    """Re-validate every recorded move; returns the reproduced verdict."""
    compression = cc.compression
    positions = [None] * transcript.num_cops
    robber = transcript.start
    for rec in transcript.rounds:
        positions[rec.lifted] = None
        landed = [p for p in positions if p is not None]
        if not rec.move_edges:
            return "capture"
        move = CompressibleMove(frozenset(rec.move_edges), robber, rec.robber)
        if validate_compressible_move(compression, landed, move) is not None:
            return "illegal-robber"
        robber = rec.robber
        positions[rec.lifted] = rec.signal
        if _captured(compression, positions, robber):
            return "capture"
    return transcript.verdict if transcript.verdict == "survived" else "unfinished"


def transcript_from_json(text):
    payload = json.loads(text)

    def vert(x):
        return tuple(x)

    transcript = Transcript(
        num_cops=payload["num_cops"],
        start=vert(payload["start"]),
        seed=payload["seed"],
        verdict=payload["verdict"],
        end_round=payload["end_round"],
    )
    for rec in payload["rounds"]:
        transcript.rounds.append(RoundRecord(
            rec["round"],
            rec["lifted"],
            vert(rec["signal"]),
            tuple((vert(u), vert(v)) for (u, v) in rec["move_edges"]),
            vert(rec["robber"]),
            tuple(vert(p) if p else None for p in rec["cop_positions"]),
        ))
    return transcript
