"""Independent brute-force implementations used as test oracles.

These re-derive the extension semantics directly from the data model and
recompute every round from scratch over all members, with no worklist and
no sharing with the library's optimized code paths.
"""

from __future__ import annotations

from flowcomplex import Direction, FlowComplex, OrbitKind, RefKind


def _wing(fc: FlowComplex, sid: str, forward: bool) -> set[str]:
    out = set()
    for o in fc.orbit_classes:
        ref = o.alpha if forward else o.omega
        if ref is not None and ref.kind is RefKind.SING and ref.ids == (sid,):
            out.add(o.id)
    return out


def _limit_saddle(fc: FlowComplex, xid: str, forward: bool) -> str | None:
    if xid in fc.sing_by_id:
        return xid if fc.sing_by_id[xid].is_saddle else None
    orb = fc.orbit_by_id.get(xid)
    if orb is None:
        return None
    ref = orb.omega if forward else orb.alpha
    if ref is not None and ref.kind is RefKind.SING and fc.is_saddle(ref.ids[0]):
        return ref.ids[0]
    return None


def _one_sided(fc: FlowComplex, start: str, forward: bool) -> tuple[frozenset[str], bool]:
    members = {start}
    self_readded = False
    while True:
        payload: set[str] = set()
        for oid in members:
            sid = _limit_saddle(fc, oid, forward)
            if sid is not None:
                payload |= {sid} | _wing(fc, sid, forward)
        if start in payload:
            self_readded = True
        grown = members | payload
        if grown == members:
            return frozenset(members), self_readded
        members = grown


def naive_extended_orbit(fc: FlowComplex, start: str, direction: Direction) -> tuple[frozenset[str], bool]:
    """Full-recompute fixpoint; returns (members, self_readded)."""
    if direction is Direction.FORWARD:
        return _one_sided(fc, start, True)
    if direction is Direction.BACKWARD:
        return _one_sided(fc, start, False)
    fm, fs = _one_sided(fc, start, True)
    bm, bs = _one_sided(fc, start, False)
    return fm | bm, fs or bs


def expand_once(fc: FlowComplex, members: frozenset[str], forward: bool) -> frozenset[str]:
    """One expansion round applied to an arbitrary member set."""
    payload: set[str] = set(members)
    for oid in members:
        sid = _limit_saddle(fc, oid, forward)
        if sid is not None:
            payload |= {sid} | _wing(fc, sid, forward)
    return frozenset(payload)


def reachability_members(fc: FlowComplex, start: str, forward: bool) -> frozenset[str]:
    """Reachable set in the bipartite saddle/separatrix digraph.

    Nodes are saddles and orbit classes; an orbit points to the saddle it
    limits onto, and a saddle points to every class on its outgoing side.
    """
    edges: dict[str, set[str]] = {}
    for o in fc.orbit_classes:
        into = o.omega if forward else o.alpha
        if into is not None and into.kind is RefKind.SING and fc.is_saddle(into.ids[0]):
            edges.setdefault(o.id, set()).add(into.ids[0])
        outof = o.alpha if forward else o.omega
        if outof is not None and outof.kind is RefKind.SING and fc.is_saddle(outof.ids[0]):
            edges.setdefault(outof.ids[0], set()).add(o.id)
    seen = {start}
    stack = [start]
    while stack:
        node = stack.pop()
        for nxt in edges.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return frozenset(seen)
