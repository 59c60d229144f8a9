"""Structural metrics on the live-pair graph and stable-structure search."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .dynamics import run
from .model import (ALL_OTHERS, BidirectedNetwork, INF, Mode, Params,
                    TargetSets)
from .scc import strongly_connected_components


def live_pairs(net: BidirectedNetwork, mode: Mode) -> List[Tuple[int, int]]:
    return sorted((u, v) for u in range(net.n)
                  for v in net.successors(u, mode))


def undirected_projection(net: BidirectedNetwork, mode: Mode) -> List[set]:
    """Adjacency of the simple undirected graph whose edges are unordered
    pairs live in at least one direction."""
    adj = [set() for _ in range(net.n)]
    for u, v in live_pairs(net, mode):
        adj[u].add(v)
        adj[v].add(u)
    return adj


def diameter(net: BidirectedNetwork, mode: Mode):
    """Longest shortest live path between distinct vertices; INF when not
    strongly connected."""
    worst = 0
    for s in range(net.n):
        dist = {s: 0}
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for x in frontier:
                for y in net.successors(x, mode):
                    if y not in dist:
                        dist[y] = d
                        nxt.append(y)
            frontier = nxt
        if len(dist) < net.n:
            return INF
        worst = max(worst, max(dist.values()))
    return worst


@dataclass
class StructureMetrics:
    clustering: Fraction
    scc_sizes: Dict[int, int]  # component size -> count
    reciprocity: Fraction
    out_speak_hist: Dict[int, int]
    in_speak_hist: Dict[int, int]
    out_listen_hist: Dict[int, int]
    in_listen_hist: Dict[int, int]
    polarization: Optional[Fraction]


def _hist(values) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for v in values:
        out[v] = out.get(v, 0) + 1
    return out


def clustering_coefficient(net: BidirectedNetwork, mode: Mode) -> Fraction:
    """Global clustering (transitivity) of the undirected live projection."""
    adj = undirected_projection(net, mode)
    closed = 0
    wedges = 0
    for v in range(net.n):
        deg = len(adj[v])
        wedges += deg * (deg - 1) // 2
        for a in adj[v]:
            for b in adj[v]:
                if a < b and b in adj[a]:
                    closed += 1
    return Fraction(closed, wedges) if wedges else Fraction(0)


def _groups_from_targets(net: BidirectedNetwork, targets: TargetSets
                         ) -> Optional[List[frozenset]]:
    if not targets.speak:
        return None
    groups = []
    for v in range(net.n):
        tset = targets.speak.get(v)
        groups.append(None if tset is None else frozenset(tset) | {v})
    return groups


def metrics(net: BidirectedNetwork, params: Params,
            targets: TargetSets = ALL_OTHERS) -> StructureMetrics:
    mode = params.mode
    pairs = live_pairs(net, mode)
    comps = strongly_connected_components(
        net.n, lambda v: net.successors(v, mode))
    reciprocity = (Fraction(sum(1 for (u, v) in net.speaking
                                if net.has_speaking(v, u)), len(net.speaking))
                   if net.speaking else Fraction(0))
    groups = _groups_from_targets(net, targets)
    polarization = None
    if groups is not None and pairs:
        crossing = sum(1 for (u, v) in pairs if groups[u] != groups[v])
        polarization = Fraction(crossing, len(pairs))
    return StructureMetrics(
        clustering=clustering_coefficient(net, mode),
        scc_sizes=_hist(len(c) for c in comps),
        reciprocity=reciprocity,
        out_speak_hist=_hist(net.out_speak(v) for v in range(net.n)),
        in_speak_hist=_hist(net.in_speak(v) for v in range(net.n)),
        out_listen_hist=_hist(net.out_listen(v) for v in range(net.n)),
        in_listen_hist=_hist(net.in_listen(v) for v in range(net.n)),
        polarization=polarization,
    )


class StructureFamily(Enum):
    OPEN_CLOSED_TRIANGLE = "open-closed-triangle"
    POLARIZED = "polarized"
    BROADCAST = "broadcast"


def has_open_and_closed_triangle(net: BidirectedNetwork, mode: Mode) -> bool:
    adj = undirected_projection(net, mode)
    closed = False
    open_ = False
    for v in range(net.n):
        for a in adj[v]:
            for b in adj[v]:
                if a < b:
                    if b in adj[a]:
                        closed = True
                    else:
                        open_ = True
        if closed and open_:
            return True
    return closed and open_


def _family_predicate(family: StructureFamily, net, params, targets) -> bool:
    if family is StructureFamily.OPEN_CLOSED_TRIANGLE:
        return has_open_and_closed_triangle(net, params.mode)
    if family is StructureFamily.POLARIZED:
        if not net.speaking:
            return False
        m = metrics(net, params, targets)
        return m.polarization is not None and m.polarization < Fraction(1, 10)
    if family is StructureFamily.BROADCAST:
        comps = strongly_connected_components(
            net.n, lambda v: net.successors(v, params.mode))
        return 2 * max(len(c) for c in comps) >= net.n and bool(net.speaking)
    raise ValueError(f"unknown family {family!r}")


def structure_search(family: StructureFamily, params: Params,
                     budget: int, targets: TargetSets = ALL_OTHERS,
                     ns: Sequence[int] = (4, 5, 6, 7, 8),
                     seed: int = 0,
                     max_steps_per_run: int = 4000
                     ) -> Optional[BidirectedNetwork]:
    """Random-restart search over dynamics fixed points for a STABLE network
    exhibiting the named structure.  The budget counts network states
    examined (every dynamics step plus every start); returns the first hit
    or None once the budget is exhausted."""
    rng = random.Random(seed)
    spent = 0
    attempt = 0
    while spent < budget:
        n = ns[attempt % len(ns)]
        attempt += 1
        start = _random_start(n, params.mode, rng)
        spent += 1
        trace = run(start, params, targets,
                    seed=rng.getrandbits(63),
                    max_steps=min(max_steps_per_run, max(1, budget - spent)),
                    scan_interval=2 * n * (n - 1))
        spent += trace.steps_sampled
        if trace.converged and _family_predicate(family, trace.final, params,
                                                 targets):
            return trace.final
    return None


def _random_start(n: int, mode: Mode, rng: random.Random) -> BidirectedNetwork:
    net = BidirectedNetwork(n)
    p = rng.choice((0.15, 0.3, 0.5))
    for u in range(n):
        for v in range(n):
            if u != v and rng.random() < p:
                net.add_speaking(u, v)
    if mode is Mode.BIDIRECTED:
        for u in range(n):
            for v in range(n):
                if u != v and rng.random() < p:
                    net.add_listening(u, v)
    return net
