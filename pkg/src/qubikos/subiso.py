"""Complete subgraph-embedding search: does an interaction graph fit a device?"""

from __future__ import annotations

from .graphs import CouplingGraph, InteractionGraph


def _counting_obstruction(pattern_degrees: list[int], host_degrees: list[int]) -> bool:
    """True when degree tallies alone rule out any embedding.

    An embedding sends a vertex of degree k to a host vertex of degree >= k,
    injectively, so for every k the host must offer at least as many vertices
    of degree >= k as the pattern demands.
    """
    max_deg = max(pattern_degrees, default=0)
    for k in range(1, max_deg + 1):
        need = sum(1 for d in pattern_degrees if d >= k)
        have = sum(1 for d in host_degrees if d >= k)
        if need > have:
            return True
    return False


def find_embedding(pattern: InteractionGraph, host: CouplingGraph) -> dict[int, int] | None:
    """Find an injective map of pattern vertices onto host vertices preserving edges.

    Complete: returns None only when no embedding exists. The search assigns
    vertices in descending pattern-degree order (ties by index) and tries host
    candidates in ascending index, so the returned witness is deterministic.
    Isolated pattern vertices are placed on the lowest unused host vertices.
    """
    if pattern.num_qubits > host.num_qubits:
        return None
    if len(pattern.edges) > len(host.edges):
        return None
    degs = pattern.degrees()
    host_degs = [host.degree(p) for p in range(host.num_qubits)]
    if _counting_obstruction(degs, host_degs):
        return None

    active = [v for v in range(pattern.num_qubits) if degs[v] > 0]
    order = sorted(active, key=lambda v: (-degs[v], v))
    adj: dict[int, set[int]] = {v: set() for v in active}
    for a, b in pattern.edges:
        adj[a].add(b)
        adj[b].add(a)
    host_adj_bits = [0] * host.num_qubits
    for p in range(host.num_qubits):
        for q in host.neighbors(p):
            host_adj_bits[p] |= 1 << q
    deg_ok_bits = [0] * (max(degs, default=0) + 1)
    for k in range(len(deg_ok_bits)):
        mask = 0
        for p in range(host.num_qubits):
            if host_degs[p] >= k:
                mask |= 1 << p
        deg_ok_bits[k] = mask

    assigned: dict[int, int] = {}
    used = 0

    def candidates(v: int) -> int:
        mask = deg_ok_bits[degs[v]] & ~used
        for n in adj[v]:
            if n in assigned:
                mask &= host_adj_bits[assigned[n]]
        return mask

    def backtrack(idx: int) -> bool:
        nonlocal used
        if idx == len(order):
            return True
        v = order[idx]
        mask = candidates(v)
        while mask:
            p = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            assigned[v] = p
            used |= 1 << p
            if backtrack(idx + 1):
                return True
            del assigned[v]
            used &= ~(1 << p)
        return False

    if not backtrack(0):
        return None
    spare = iter(p for p in range(host.num_qubits) if not used >> p & 1)
    for v in range(pattern.num_qubits):
        if v not in assigned:
            assigned[v] = next(spare)
    return dict(sorted(assigned.items()))


def embedding_is_valid(pattern: InteractionGraph, host: CouplingGraph, emb: dict[int, int]) -> bool:
    """Check injectivity and that every pattern edge lands on a host edge."""
    if len(set(emb.values())) != len(emb):
        return False
    return all(
        a in emb and b in emb and host.has_edge(emb[a], emb[b]) for a, b in pattern.edges
    )
