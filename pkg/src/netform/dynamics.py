"""Edge classification and the asynchronous stochastic edge dynamics.

Each round samples one typed ordered pair uniformly from the 2*n*(n-1)
possibilities and applies the strict add/remove rule for its owner: an
absent edge is added iff adding it strictly increases the owner's utility,
a present edge is removed iff removing it strictly increases it.

Runs are driven by Python's ``random.Random`` (MT19937) seeded with the
64-bit seed recorded in the trace, so a trace replays bit-identically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .errors import TraceError
from .model import (ALL_OTHERS, BidirectedNetwork, Mode, Params, TargetSets,
                    _bfs)

RNG_ID = "python-random-mt19937"


class EdgeKind(Enum):
    SPEAKING = "s"
    LISTENING = "l"


class Classification(Enum):
    ADDABLE = "addable"
    REMOVABLE = "removable"
    STAY_PRESENT = "stay_present"
    STAY_ABSENT = "stay_absent"


class MoveKind(Enum):
    ADD_SPEAKING = "+s"
    REMOVE_SPEAKING = "-s"
    ADD_LISTENING = "+l"
    REMOVE_LISTENING = "-l"
    NO_CHANGE = "."


_MUTATING = {MoveKind.ADD_SPEAKING, MoveKind.REMOVE_SPEAKING,
             MoveKind.ADD_LISTENING, MoveKind.REMOVE_LISTENING}


@dataclass(frozen=True, slots=True)
class Move:
    kind: MoveKind
    edge_kind: EdgeKind  # what was sampled, also for NO_CHANGE
    u: int
    v: int
    step_index: int

    @property
    def mutating(self) -> bool:
        return self.kind in _MUTATING


@dataclass
class Trace:
    seed: int
    params: Params
    initial: BidirectedNetwork
    moves: List[Move]
    final: BidirectedNetwork
    converged: bool
    steps_sampled: int
    targets: TargetSets = ALL_OTHERS
    rng_id: str = RNG_ID


@dataclass(frozen=True)
class PotentialMeasure:
    complete_pairs: int
    edge_count: int
    value: int


def _owner_reach_count(net, params, targets, kind: EdgeKind, u: int) -> int:
    # Toggling an outgoing speaking edge of u can only change u's forward
    # reach, and toggling an outgoing listening edge of u only its backward
    # reach: a shortest live path never revisits its endpoint, so edges
    # incident to u in the other role cannot appear on it.
    if kind is EdgeKind.SPEAKING:
        return targets.speak_count(u, _bfs(net, params.k, u, True, params.mode))
    return targets.listen_count(u, _bfs(net, params.k, u, False, params.mode))


def classify(net: BidirectedNetwork, params: Params, targets: TargetSets,
             kind: EdgeKind, u: int, v: int) -> Classification:
    """Addable/removable status of the typed edge (u, v) for its owner u."""
    net._check_pair(u, v)
    if kind is EdgeKind.LISTENING and params.mode is Mode.DIRECTED:
        # Listening is implicit and free in the reduced model; toggling a
        # listening edge never strictly changes any utility.
        return (Classification.STAY_PRESENT if net.has_listening(u, v)
                else Classification.STAY_ABSENT)

    if kind is EdgeKind.SPEAKING:
        present = net.has_speaking(u, v)
        cost = params.c_s
        add, remove = net.add_speaking, net.remove_speaking
    else:
        present = net.has_listening(u, v)
        cost = params.c_l
        add, remove = net.add_listening, net.remove_listening

    base = _owner_reach_count(net, params, targets, kind, u)
    if present:
        remove(u, v)
        alt = _owner_reach_count(net, params, targets, kind, u)
        add(u, v)
        lost = base - alt
        return Classification.REMOVABLE if lost < cost else Classification.STAY_PRESENT
    add(u, v)
    alt = _owner_reach_count(net, params, targets, kind, u)
    remove(u, v)
    gain = alt - base
    return Classification.ADDABLE if gain > cost else Classification.STAY_ABSENT


def iter_typed_pairs(n: int):
    for kind in (EdgeKind.SPEAKING, EdgeKind.LISTENING):
        for u in range(n):
            for v in range(n):
                if u != v:
                    yield kind, u, v


def find_witness(net: BidirectedNetwork, params: Params,
                 targets: TargetSets = ALL_OTHERS
                 ) -> Optional[Tuple[EdgeKind, int, int, Classification]]:
    """First addable or removable typed edge in deterministic order, or None."""
    for kind, u, v in iter_typed_pairs(net.n):
        cls = classify(net, params, targets, kind, u, v)
        if cls in (Classification.ADDABLE, Classification.REMOVABLE):
            return (kind, u, v, cls)
    return None


def scan_witnesses(net: BidirectedNetwork, params: Params,
                   targets: TargetSets = ALL_OTHERS
                   ) -> List[Tuple[EdgeKind, int, int, Classification]]:
    return [(kind, u, v, cls)
            for kind, u, v in iter_typed_pairs(net.n)
            for cls in [classify(net, params, targets, kind, u, v)]
            if cls in (Classification.ADDABLE, Classification.REMOVABLE)]


def step(net: BidirectedNetwork, params: Params, targets: TargetSets,
         rng: random.Random, step_index: int = 0) -> Move:
    """One dynamics round.  Mutates ``net`` when the sampled edge fires."""
    n = net.n
    kind = EdgeKind.SPEAKING if rng.randrange(2) == 0 else EdgeKind.LISTENING
    u = rng.randrange(n)
    v = rng.randrange(n - 1)
    if v >= u:
        v += 1
    cls = classify(net, params, targets, kind, u, v)
    if cls is Classification.ADDABLE:
        if kind is EdgeKind.SPEAKING:
            net.add_speaking(u, v)
            return Move(MoveKind.ADD_SPEAKING, kind, u, v, step_index)
        net.add_listening(u, v)
        return Move(MoveKind.ADD_LISTENING, kind, u, v, step_index)
    if cls is Classification.REMOVABLE:
        if kind is EdgeKind.SPEAKING:
            net.remove_speaking(u, v)
            return Move(MoveKind.REMOVE_SPEAKING, kind, u, v, step_index)
        net.remove_listening(u, v)
        return Move(MoveKind.REMOVE_LISTENING, kind, u, v, step_index)
    return Move(MoveKind.NO_CHANGE, kind, u, v, step_index)


def run(initial: BidirectedNetwork, params: Params,
        targets: TargetSets = ALL_OTHERS, seed: int = 0,
        max_steps: Optional[int] = None,
        scan_interval: Optional[int] = None) -> Trace:
    """Run the dynamics until a full scan finds nothing addable or removable,
    or until max_steps.  Non-convergence is reported, never raised."""
    n = initial.n
    if max_steps is None:
        max_steps = 50 * n ** 6
    if scan_interval is None:
        scan_interval = max(1, 2 * n * (n - 1))
    if max_steps < 1 or scan_interval < 1:
        raise ValueError("max_steps and scan_interval must be >= 1")
    net = initial.copy()
    rng = random.Random(seed)
    moves: List[Move] = []
    converged = find_witness(net, params, targets) is None
    steps = 0
    while not converged and steps < max_steps:
        moves.append(step(net, params, targets, rng, steps))
        steps += 1
        if steps % scan_interval == 0:
            converged = find_witness(net, params, targets) is None
    return Trace(seed=seed, params=params, initial=initial.copy(), moves=moves,
                 final=net, converged=converged, steps_sampled=steps,
                 targets=targets)


def replay(trace: Trace) -> BidirectedNetwork:
    """Re-apply the trace's moves; raises TraceError on any inconsistency."""
    net = trace.initial.copy()
    try:
        for mv in trace.moves:
            if mv.kind is MoveKind.ADD_SPEAKING:
                net.add_speaking(mv.u, mv.v)
            elif mv.kind is MoveKind.REMOVE_SPEAKING:
                net.remove_speaking(mv.u, mv.v)
            elif mv.kind is MoveKind.ADD_LISTENING:
                net.add_listening(mv.u, mv.v)
            elif mv.kind is MoveKind.REMOVE_LISTENING:
                net.remove_listening(mv.u, mv.v)
    except ValueError as exc:
        raise TraceError(f"inconsistent move {mv}: {exc}") from exc
    if net != trace.final:
        raise TraceError("replayed final network differs from recorded final")
    return net


@dataclass(frozen=True)
class NeverReaddResult:
    ok: bool
    applicable: bool

    def __bool__(self):
        return self.ok


def never_readd_check(trace: Trace) -> NeverReaddResult:
    """Validates that once both halves of a pair (u, v) -- the speaking edge
    (u, v) and the listening edge (v, u) -- are simultaneously absent, neither
    half is ever added later in the trace.  Only meaningful for bidirected
    runs with strictly positive costs."""
    if (trace.params.mode is Mode.DIRECTED
            or trace.params.c_s <= 0 or trace.params.c_l <= 0):
        return NeverReaddResult(ok=True, applicable=False)
    net = trace.initial.copy()
    dead = {(u, v) for u in range(net.n) for v in range(net.n)
            if u != v and not net.has_speaking(u, v)
            and not net.has_listening(v, u)}
    for mv in trace.moves:
        try:
            if mv.kind is MoveKind.ADD_SPEAKING:
                if (mv.u, mv.v) in dead:
                    return NeverReaddResult(ok=False, applicable=True)
                net.add_speaking(mv.u, mv.v)
            elif mv.kind is MoveKind.ADD_LISTENING:
                # listening edge (u, v) is the second half of pair (v, u)
                if (mv.v, mv.u) in dead:
                    return NeverReaddResult(ok=False, applicable=True)
                net.add_listening(mv.u, mv.v)
            elif mv.kind is MoveKind.REMOVE_SPEAKING:
                net.remove_speaking(mv.u, mv.v)
                if not net.has_listening(mv.v, mv.u):
                    dead.add((mv.u, mv.v))
            elif mv.kind is MoveKind.REMOVE_LISTENING:
                net.remove_listening(mv.u, mv.v)
                if not net.has_speaking(mv.v, mv.u):
                    dead.add((mv.v, mv.u))
        except ValueError as exc:
            raise TraceError(f"inconsistent move {mv}: {exc}") from exc
    if net != trace.final:
        raise TraceError("trace does not replay to its recorded final network")
    return NeverReaddResult(ok=True, applicable=True)


def potential(net: BidirectedNetwork) -> PotentialMeasure:
    """Complete-pair count plus total edge count (convergence instrumentation).
    A pair (u, v) is complete when u speaks to v and v listens back."""
    p = sum(1 for (u, v) in net.speaking if net.has_listening(v, u))
    m = len(net.speaking) + len(net.listening)
    return PotentialMeasure(complete_pairs=p, edge_count=m, value=p + m)
