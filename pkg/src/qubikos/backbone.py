"""Chain sections into one serialized gate stream.

Each section must come out as a gate sequence where every gate sits on a
dependency path from the section's first gate (the re-emitted previous
special gate) to its last (the special gate). Dependencies come from shared
qubits, so the requirement is: every gate shares a qubit with some earlier
gate and with some later gate.

That is an st-ordering of the gates' adjacency structure (gates adjacent
when they share a qubit): first gate s, last gate t, everyone else needs a
neighbor on both sides. Such an ordering exists exactly when that structure
plus a helper s-t link is biconnected, and an ear-insertion sweep both
detects failure and builds the order. When it fails, `connect_section`
patches the section with extra executable gates until it succeeds; a
double-emission fallback remains for the case where no patch exists.
"""

from __future__ import annotations

from collections import deque

from .graphs import CouplingGraph, Mapping, QubikosError, normalize_edge
from .sections import SectionGraph

Pair = tuple[int, int]


def _components(edges) -> list[set[int]]:
    adj: dict[int, set[int]] = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    comps = []
    seen: set[int] = set()
    for root in sorted(adj):
        if root in seen:
            continue
        comp = {root}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for nxt in adj[node]:
                if nxt not in comp:
                    comp.add(nxt)
                    queue.append(nxt)
        seen |= comp
        comps.append(comp)
    return comps


def _bridge_path(
    coupling: CouplingGraph,
    mapping: Mapping,
    sources: set[int],
    goals: set[int],
    skip_pairs: frozenset[Pair] = frozenset(),
) -> list[Pair]:
    """Shortest physical path from any source program qubit's location to any
    goal qubit's location, returned as executable program pairs. Hops whose
    program pair is in `skip_pairs` are not taken, so the result never just
    re-traces a gate the caller already has."""
    src_phys = sorted(mapping.physical(q) for q in sources)
    goal_phys = {mapping.physical(q) for q in goals}
    parent: dict[int, int | None] = {p: None for p in src_phys}
    queue = deque(src_phys)
    hit = None
    while queue:
        node = queue.popleft()
        if node in goal_phys:
            hit = node
            break
        for nxt in coupling.neighbors(node):
            if nxt in parent:
                continue
            pair = normalize_edge(mapping.program(node), mapping.program(nxt))
            if pair in skip_pairs:
                continue
            parent[nxt] = node
            queue.append(nxt)
    if hit is None:
        raise QubikosError("no physical path between the gate groups")
    path = [hit]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return [
        normalize_edge(mapping.program(a), mapping.program(b))
        for a, b in zip(path, path[1:])
    ]


def _connect_with(
    coupling: CouplingGraph,
    mapping: Mapping,
    gates: list[Pair],
    extra: Pair,
) -> list[Pair]:
    """Grow the gate list until the gates plus one extra pair form a single
    connected edge set. Added gates are executable under the mapping."""
    gate_set = set(gates)
    while True:
        comps = _components([*gate_set, extra])
        if len(comps) <= 1:
            return sorted(gate_set)
        rest = set().union(*comps[1:])
        for pair in _bridge_path(coupling, mapping, comps[0], rest):
            if pair not in gate_set and pair != extra:
                gate_set.add(pair)


def _share_adjacency(items: list[Pair]) -> list[set[int]]:
    """Adjacency between gate positions: two gates are neighbors when they
    share a qubit. Duplicate pairs still get distinct positions."""
    at: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(items):
        at.setdefault(a, []).append(i)
        at.setdefault(b, []).append(i)
    adj: list[set[int]] = [set() for _ in items]
    for group in at.values():
        for i in group:
            adj[i].update(g for g in group if g != i)
    return adj


def _st_order(
    adj: list[set[int]], s: int, t: int
) -> tuple[list[int] | None, list[int]]:
    """Order all nodes so s is first, t is last, and every other node has a
    neighbor earlier and a neighbor later. Built by placing an s-t path and
    then folding in each dangling region as an ear between two placed nodes.
    When a region clings to the placed part through a single node, no such
    order exists; that region is returned as the failure witness."""
    n = len(adj)
    parent: dict[int, int | None] = {s: None}
    queue = deque([s])
    while queue:
        node = queue.popleft()
        if node == t:
            break
        for nxt in sorted(adj[node]):
            if nxt not in parent:
                parent[nxt] = node
                queue.append(nxt)
    if t not in parent:
        return None, sorted(set(range(n)) - set(parent))
    order = [t]
    while parent[order[-1]] is not None:
        order.append(parent[order[-1]])
    order.reverse()
    placed = set(order)
    while len(placed) < n:
        root = min(v for v in range(n) if v not in placed)
        comp = {root}
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for nxt in adj[node]:
                if nxt not in placed and nxt not in comp:
                    comp.add(nxt)
                    queue.append(nxt)
        anchors = sorted({p for u in comp for p in adj[u] if p in placed})
        if len(anchors) < 2:
            return None, sorted(comp)
        x, y = anchors[0], anchors[1]
        u1 = min(u for u in comp if x in adj[u])
        u2 = min(u for u in comp if y in adj[u])
        walk: dict[int, int | None] = {u1: None}
        queue = deque([u1])
        while queue:
            node = queue.popleft()
            if node == u2:
                break
            for nxt in sorted(adj[node]):
                if nxt in comp and nxt not in walk:
                    walk[nxt] = node
                    queue.append(nxt)
        ear = [u2]
        while walk[ear[-1]] is not None:
            ear.append(walk[ear[-1]])
        ear.reverse()
        pos = {v: i for i, v in enumerate(order)}
        if pos[x] < pos[y]:
            order[pos[x] + 1 : pos[x] + 1] = ear
        else:
            order[pos[y] + 1 : pos[y] + 1] = list(reversed(ear))
        placed |= set(ear)
    return order, []


def _find_order(
    items: list[Pair], has_prior: bool, rng=None
) -> tuple[list[Pair] | None, list[int]]:
    """Try to st-order the items (last item fixed as t). With a prior gate the
    first item is fixed as s; otherwise any body gate may lead, tried in
    sorted or rng-shuffled order."""
    adj = _share_adjacency(items)
    t = len(items) - 1
    if has_prior:
        starts = [0]
    else:
        starts = list(range(t))
        if rng is not None:
            rng.shuffle(starts)
    witness: list[int] = []
    for s in starts:
        order, failed = _st_order(adj, s, t)
        if order is not None:
            return [items[i] for i in order], []
        if not witness:
            witness = failed
    return None, witness


def connect_section(
    coupling: CouplingGraph,
    mapping: Mapping,
    section: SectionGraph,
    prior_special: Pair | None,
) -> SectionGraph:
    """Grow the section's gates until they are connected with the prior
    special gate and with their own special gate, and until they admit the
    single-emission order. Every added gate is executable in place, which
    leaves both embedding properties intact."""
    gates = list(section.gates)
    if prior_special is not None:
        gates = _connect_with(coupling, mapping, gates, prior_special)
    gates = _connect_with(coupling, mapping, gates, section.special)
    for _ in range(4 * coupling.num_qubits):
        head = [prior_special] if prior_special is not None else []
        items = [*head, *gates, section.special]
        order, stuck = _find_order(items, prior_special is not None)
        if order is not None:
            break
        stuck_set = set(stuck)
        inside = {q for i in stuck for q in items[i]}
        outside = {
            q for i, pair in enumerate(items) if i not in stuck_set for q in pair
        } - inside
        # A second, independent attachment for the stuck gates: a corridor of
        # fresh executable gates from their qubits to the rest of the section.
        try:
            corridor = _bridge_path(
                coupling, mapping, inside, outside, frozenset(items)
            )
        except QubikosError:
            break
        new = [p for p in corridor if p not in set(items)]
        if not new:
            break
        gates = sorted({*gates, *new})
    return section.with_gates(sorted(gates))


def _two_pass(body: list[Pair], first: Pair | None, last: Pair) -> list[Pair]:
    """Fallback ordering that emits each body gate twice: once spreading out
    from the start, once converging on the special gate."""

    def sweep(root: Pair, pool: list[Pair]) -> list[Pair]:
        verts = set(root)
        rest = list(pool)
        out = []
        while rest:
            idx = next(i for i, p in enumerate(rest) if set(p) & verts)
            pair = rest.pop(idx)
            out.append(pair)
            verts |= set(pair)
        return out

    forward = sweep(first, body) if first is not None else []
    backward = sweep(last, body)
    backward.reverse()
    head = [first] if first is not None else []
    return [*head, *forward, *backward, last]


def order_section(
    section: SectionGraph, prior_special: Pair | None, rng
) -> list[Pair]:
    """Serialize one section: re-emit the prior special gate, stream the
    section gates, finish with the special gate. Every gate ends up on a
    dependency path from the start of the section to its special gate."""
    body = sorted(section.gates)
    head = [prior_special] if prior_special is not None else []
    items = [*head, *body, section.special]
    seq, _ = _find_order(items, prior_special is not None, rng)
    if seq is None:
        seq = _two_pass(body, prior_special, section.special)
    if not sequence_is_serialized(seq, require_prefix=prior_special is not None):
        raise QubikosError("section ordering failed to serialize")
    return seq


def sequence_is_serialized(pairs: list[Pair], require_prefix: bool = True) -> bool:
    """Check the dependency chains a section ordering must provide: every gate
    is an ancestor of the last gate, and (when `require_prefix`) a descendant
    of the first."""
    if not pairs:
        return False
    if require_prefix:
        verts = set(pairs[0])
        for pair in pairs[1:]:
            if not (set(pair) & verts):
                return False
            verts |= set(pair)
    verts = set(pairs[-1])
    for pair in reversed(pairs[:-1]):
        if not (set(pair) & verts):
            return False
        verts |= set(pair)
    return True
