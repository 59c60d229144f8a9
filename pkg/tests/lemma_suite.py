"""Shared invariant suite used by the property tests and the acceptance run.

Each function returns a list of violation labels (empty = all invariants
hold) so bulk runs can report exactly which claim broke and where.  Every
predicate is stated under the strict add/remove semantics (add iff gain
strictly exceeds cost, remove iff loss strictly below cost), so a few of the
component-graph claims carry an explicit cost-regime condition: at c <= 1 a
singleton leaf may legally keep incoming edges, and a removable-free graph
with an addable edge need not contain a large component.
"""

from netform import (ALL_OTHERS, INF, BidirectedNetwork, Classification,
                     EdgeKind, Mode, Params, all_complete, classify,
                     is_bi_pairwise_stable, is_stable, speaking_reach,
                     strip_removables)
from netform.scc import condensation


def _live_strongly_connected(net: BidirectedNetwork, mode: Mode) -> bool:
    comps, _, _ = condensation(net.n, lambda v: net.successors(v, mode))
    return len(comps) == 1


def bidirected_violations(net: BidirectedNetwork, params: Params) -> list:
    """Invariants of the full (speaking + listening) game:

    - pairwise stability implies stability;
    - with both costs positive, stable or pairwise-stable networks are
      complete (every speaking edge has its return listening edge);
    - a speaking edge with no return listening edge is dead weight and is
      always removable when speaking costs anything;
    - a stable, strongly connected network is pairwise stable (unbounded
      horizon: no joint addition can create new reach).
    """
    out = []
    rep = is_bi_pairwise_stable(net, params)
    if rep.bi_pairwise and not rep.stable:
        out.append("pairwise-implies-stable")
    if params.c_s > 0 and params.c_l > 0:
        if rep.stable and not all_complete(net):
            out.append("stable-implies-complete")
        if rep.bi_pairwise and not all_complete(net):
            out.append("pairwise-implies-complete")
    if params.c_s > 0:
        for (v, w) in net.speaking:
            if not net.has_listening(w, v):
                cls = classify(net, params, ALL_OTHERS,
                               EdgeKind.SPEAKING, v, w)
                if cls is not Classification.REMOVABLE:
                    out.append(f"dead-edge-removable:{v}->{w}")
    if (params.k == INF and rep.stable and rep.bi_pairwise is False
            and _live_strongly_connected(net, params.mode)):
        out.append("stable-scc-implies-pairwise")
    return out


def directed_violations(net: BidirectedNetwork, params: Params) -> list:
    """Invariants of the unbounded-horizon speaking-only reduction used by
    the convergence-path construction:

    - an addable edge always crosses two strongly connected components;
    - the component graph is acyclic;
    - the head of a non-removable edge reaches at least c vertices
      (counting itself);
    - with no removable edge, every leaf component is a single vertex or
      large (> c vertices); above unit cost the singleton is edgeless;
    - above unit cost, no removable edge plus an addable edge forces a
      large component to exist;
    - any edge into a large component from a vertex that does not reach it
      is addable;
    - stripping removable edges never increases the large-component count.
    """
    if params.mode is not Mode.DIRECTED or params.k != INF or params.c_s <= 0:
        raise ValueError("directed suite needs directed mode, k=inf, c_s > 0")
    out = []
    c = params.c_s
    n = net.n
    comps, comp_of, dag = condensation(n, lambda v: net._speak_out[v])
    if _topo_order(len(comps), dag) is None:
        out.append("component-graph-acyclic")

    reach = {u: speaking_reach(net, params, u) for u in range(n)}
    removable = set()
    addable = []
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            cls = classify(net, params, ALL_OTHERS, EdgeKind.SPEAKING, u, v)
            if cls is Classification.ADDABLE:
                addable.append((u, v))
                if comp_of[u] == comp_of[v]:
                    out.append(f"addable-crosses-components:{u}->{v}")
            elif cls is Classification.REMOVABLE:
                removable.add((u, v))
            elif net.has_speaking(u, v) and 1 + len(reach[v]) < c:
                out.append(f"unremovable-head-reaches-c:{u}->{v}")

    large = {i for i, comp in enumerate(comps) if len(comp) > c}
    if not removable:
        non_leaves = {a for a, _ in dag}
        for i, comp in enumerate(comps):
            if i in non_leaves or i in large:
                continue
            if len(comp) > 1:
                out.append(f"leaf-singleton-or-large:{sorted(comp)}")
            elif c > 1:
                v = next(iter(comp))
                if net._speak_in[v] or net._speak_out[v]:
                    out.append(f"leaf-singleton-edgeless:{v}")
        if addable and c > 1 and not large:
            out.append("addable-needs-large-component")

    for i in large:
        comp = set(comps[i])
        for u in range(n):
            if u in comp or comp & ({u} | reach[u]):
                continue
            for v in comp:
                cls = classify(net, params, ALL_OTHERS,
                               EdgeKind.SPEAKING, u, v)
                if cls is not Classification.ADDABLE:
                    out.append(f"edge-into-large-addable:{u}->{v}")

    before = len(large)
    stripped, _ = strip_removables(net, params)
    s_comps, _, _ = condensation(n, lambda v: stripped._speak_out[v])
    if sum(1 for comp in s_comps if len(comp) > c) > before:
        out.append("strip-large-count-nonincreasing")
    return out


def _topo_order(num: int, dag) -> list:
    indeg = {i: 0 for i in range(num)}
    succ = {i: [] for i in range(num)}
    for a, b in dag:
        indeg[b] += 1
        succ[a].append(b)
    ready = [i for i in range(num) if indeg[i] == 0]
    order = []
    while ready:
        i = ready.pop()
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                ready.append(j)
    return order if len(order) == num else None
