"""Extended orbits: the saddle-closure fixpoint and its generalizations.

The forward extension of a seed repeatedly adjoins, for every member whose
omega limit is a single saddle, that saddle together with its unstable set
(all classes emanating from it).  The backward extension mirrors this with
alpha limits and stable sets.  A two-sided extension is the union of the
two one-sided fixpoints, not a joint closure; the membership relation is
reflexive and symmetric but need not be transitive.

Generalized extensions replace single saddles by declared isolated saddle
sets, expanding whenever a member's limit set is contained in such a set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence, Union

from .model import (
    AccumulationSchema,
    FamilyKind,
    FlowComplex,
    FlowComplexError,
    OrbitKind,
    PointKind,
    PreconditionError,
    RefKind,
    SchemaKind,
    Shape,
    closure_of,
)


class InvalidSaddleSetError(FlowComplexError, ValueError):
    """A declared saddle set fails the admission conditions."""


class Direction(str, Enum):
    FORWARD = "fwd"
    BACKWARD = "bwd"
    BOTH = "both"


SEED_ROUND = 0


@dataclass(frozen=True)
class ExtendedOrbitSet:
    """Result of the extension fixpoint from a single seed.

    ``added_round`` maps each member to the expansion round that first added
    it (0 for the seed).  ``self_readded`` records whether some expansion
    payload contained the seed again; points strictly earlier on the seed's
    own orbit then re-approach it, which is what the recurrence classifiers
    consume.  ``depth`` counts the rounds that added at least one new member.
    """

    start: str
    direction: Direction
    members: frozenset[str]
    added_round: Mapping[str, int]
    depth: int
    self_readded: bool


def unstable_set(fc: FlowComplex, sid: str) -> frozenset[str]:
    """All orbit classes whose alpha limit is exactly the saddle ``sid``."""
    fc.require(sid)
    if not fc.is_saddle(sid):
        raise PreconditionError(f"{sid!r} is not a saddle")
    return frozenset(
        o.id
        for o in fc.orbit_classes
        if o.alpha is not None and o.alpha.kind is RefKind.SING and o.alpha.ids == (sid,)
    )


def stable_set(fc: FlowComplex, sid: str) -> frozenset[str]:
    """All orbit classes whose omega limit is exactly the saddle ``sid``."""
    fc.require(sid)
    if not fc.is_saddle(sid):
        raise PreconditionError(f"{sid!r} is not a saddle")
    return frozenset(
        o.id
        for o in fc.orbit_classes
        if o.omega is not None and o.omega.kind is RefKind.SING and o.omega.ids == (sid,)
    )


def _saddle_limit(fc: FlowComplex, xid: str, forward: bool) -> Optional[str]:
    """The single saddle that ``xid`` limits onto in the given time direction, if any.

    A saddle point limits onto itself, which is what lets extension sweep
    through the separatrices of a saddle taken as a seed.
    """
    if xid in fc.sing_by_id:
        return xid if fc.is_saddle(xid) else None
    orb = fc.orbit_by_id.get(xid)
    if orb is None:
        return None
    ref = orb.omega if forward else orb.alpha
    if ref is not None and ref.kind is RefKind.SING and fc.is_saddle(ref.ids[0]):
        return ref.ids[0]
    return None


def _one_sided_extension(fc: FlowComplex, start: str, forward: bool) -> ExtendedOrbitSet:
    wing = unstable_set if forward else stable_set
    members: set[str] = {start}
    added_round: dict[str, int] = {start: SEED_ROUND}
    self_readded = False
    depth = 0
    frontier = [start]
    rnd = 0
    while frontier:
        rnd += 1
        payload: list[str] = []
        for oid in sorted(frontier):
            sid = _saddle_limit(fc, oid, forward)
            if sid is not None:
                payload.append(sid)
                payload.extend(sorted(wing(fc, sid)))
        if start in payload:
            self_readded = True
        fresh = []
        for pid in payload:
            if pid not in members:
                members.add(pid)
                added_round[pid] = rnd
                fresh.append(pid)
        if fresh:
            depth = rnd
        frontier = fresh
    return ExtendedOrbitSet(
        start=start,
        direction=Direction.FORWARD if forward else Direction.BACKWARD,
        members=frozenset(members),
        added_round=added_round,
        depth=depth,
        self_readded=self_readded,
    )


def extended_orbit(fc: FlowComplex, start: str, direction: Direction = Direction.BOTH) -> ExtendedOrbitSet:
    """Least fixpoint of the saddle expansion rule from ``start``.

    The two-sided result is the union of the forward and backward fixpoints;
    rounds from the two runs are merged by taking the earlier one.
    """
    fc.require(start)
    direction = Direction(direction)
    if direction is Direction.FORWARD:
        return _one_sided_extension(fc, start, forward=True)
    if direction is Direction.BACKWARD:
        return _one_sided_extension(fc, start, forward=False)
    fwd = _one_sided_extension(fc, start, forward=True)
    bwd = _one_sided_extension(fc, start, forward=False)
    added: dict[str, int] = dict(bwd.added_round)
    for oid, rnd in fwd.added_round.items():
        added[oid] = min(rnd, added.get(oid, rnd))
    return ExtendedOrbitSet(
        start=start,
        direction=Direction.BOTH,
        members=fwd.members | bwd.members,
        added_round=added,
        depth=max(fwd.depth, bwd.depth),
        self_readded=fwd.self_readded or bwd.self_readded,
    )


def member_closure(fc: FlowComplex, xid: str) -> frozenset[str]:
    """Closure of ``xid`` viewed as one generic member of its bundle.

    A family id inside an extended orbit stands for a single generic member
    (a periodic orbit or one closed extended orbit), which is already
    closed; the region closure of the family would wrongly glue the whole
    bundle into one block.
    """
    if xid in fc.family_by_id:
        return frozenset({xid})
    return closure_of(fc, xid)


def orbit_set_closure(fc: FlowComplex, members: Iterable[str]) -> frozenset[str]:
    """Closure of an extended-orbit member set, aware of declared saddle chains.

    If the set contains the sample pattern of a saddle chain, the real
    object continues down the infinite chain, so its closure picks up the
    declared target.
    """
    out: set[str] = set()
    for mid in members:
        out.update(member_closure(fc, mid))
    changed = True
    while changed:
        changed = False
        for schema in fc.accumulation_schemas:
            if schema.kind is not SchemaKind.SADDLE_CHAIN:
                continue
            if set(schema.samples) <= out and not schema.target <= out:
                for tid in schema.target:
                    out.update(member_closure(fc, tid))
                changed = True
    return frozenset(out)


def orbit_set_is_closed(fc: FlowComplex, members: Iterable[str]) -> bool:
    mset = frozenset(members)
    return orbit_set_closure(fc, mset) <= mset


def is_extended_periodic(fc: FlowComplex, xid: str) -> bool:
    """A compact extended orbit that is more than a single point.

    Its members may only be proper orbits, periodic orbits, saddles, or
    family bundles of such, and the member set must already be closed.
    """
    fc.require(xid)
    ext = extended_orbit(fc, xid, Direction.BOTH)
    singleton_point = len(ext.members) == 1 and next(iter(ext.members)) in fc.sing_by_id and fc.sing_by_id[
        next(iter(ext.members))
    ].shape is Shape.POINT
    if singleton_point:
        return False
    for mid in ext.members:
        if fc.is_saddle(mid) or mid in fc.family_by_id:
            continue
        if mid in fc.sing_by_id:
            return False
        if fc.orbit_by_id[mid].kind not in (OrbitKind.PERIODIC, OrbitKind.PROPER):
            return False
    return orbit_set_is_closed(fc, ext.members)


class CycleSide(str, Enum):
    ALPHA = "alpha"
    OMEGA = "omega"


@dataclass(frozen=True)
class LimitCycle:
    cycle: frozenset[str]
    witness: str
    side: CycleSide


def _is_closed_curve_union(fc: FlowComplex, ids: frozenset[str]) -> bool:
    # periodic orbits stand alone; proper arcs must concatenate through the
    # saddles of the set into circles (balanced in/out degree at each saddle)
    indeg: dict[str, int] = {}
    outdeg: dict[str, int] = {}
    for mid in ids:
        if fc.is_saddle(mid):
            indeg.setdefault(mid, 0)
            outdeg.setdefault(mid, 0)
            continue
        orb = fc.orbit_by_id.get(mid)
        if orb is None:
            return False
        if orb.kind is OrbitKind.PERIODIC:
            continue
        if orb.kind is not OrbitKind.PROPER:
            return False
        for ref, deg in ((orb.alpha, outdeg), (orb.omega, indeg)):
            if ref is None or ref.kind is not RefKind.SING:
                return False
            end = ref.ids[0]
            if end not in ids or not fc.is_saddle(end):
                return False
            deg[end] = deg.get(end, 0) + 1
    for sid in indeg:
        if indeg[sid] != outdeg[sid] or indeg[sid] < 1:
            return False
    return True


def extended_limit_cycles(fc: FlowComplex) -> list[LimitCycle]:
    """Non-singleton unions of closed curves inside an extended orbit that are
    the declared alpha or omega limit of an orbit class outside them."""
    candidates: set[frozenset[str]] = set()
    for o in fc.orbit_classes:
        for ref in (o.alpha, o.omega):
            if ref is None:
                continue
            if ref.kind is RefKind.SET:
                candidates.add(ref.resolved())
            elif ref.kind is RefKind.ORBIT:
                target = fc.orbit_by_id.get(ref.ids[0])
                if target is not None and target.kind is OrbitKind.PERIODIC:
                    candidates.add(frozenset(ref.ids))
    results: list[LimitCycle] = []
    for gamma in sorted(candidates, key=sorted):
        if len(gamma) == 1 and next(iter(gamma)) in fc.sing_by_id:
            continue
        if not _is_closed_curve_union(fc, gamma):
            continue
        contained = any(gamma <= extended_orbit(fc, mid, Direction.BOTH).members for mid in sorted(gamma))
        if not contained:
            continue
        witnesses: list[tuple[str, CycleSide]] = []
        for o in fc.orbit_classes:
            if o.id in gamma:
                continue
            if o.alpha is not None and o.alpha.resolved() == gamma:
                witnesses.append((o.id, CycleSide.ALPHA))
            if o.omega is not None and o.omega.resolved() == gamma:
                witnesses.append((o.id, CycleSide.OMEGA))
        if witnesses:
            wid, side = min(witnesses)
            results.append(LimitCycle(cycle=gamma, witness=wid, side=side))
    return results


@dataclass(frozen=True)
class SaddleSetVerdict:
    verdict: bool
    witness: Optional[str] = None


def _require_invariant_closed(fc: FlowComplex, members: frozenset[str]) -> None:
    for mid in sorted(members):
        fc.require(mid)
        escape = closure_of(fc, mid) - members
        if escape:
            raise PreconditionError(f"set is not invariant-closed: closure of {mid} adds {sorted(escape)}")


def _escapes(fc: FlowComplex, wid: str, members: frozenset[str]) -> bool:
    # recurrent pieces re-exit every small neighborhood of a proper subset
    # they merely graze; a proper orbit escapes when both ends clear the set
    if wid in fc.family_by_id:
        return fc.family_by_id[wid].kind is FamilyKind.PERIODIC_ANNULUS
    orb = fc.orbit_by_id.get(wid)
    if orb is None:
        return False
    if orb.kind in (OrbitKind.PERIODIC, OrbitKind.LOCALLY_DENSE, OrbitKind.EXCEPTIONAL):
        return True
    ends: set[str] = set()
    for ref in (orb.alpha, orb.omega):
        if ref is not None:
            ends.update(ref.ids)
    return not (ends & members)


def _accumulates(fc: FlowComplex, wid: str, members: frozenset[str]) -> bool:
    fam = fc.family_by_id.get(wid)
    if fam is not None:
        return any(not shrinks and (bset & members) for bset, shrinks in fam.boundaries())
    orb = fc.orbit_by_id.get(wid)
    if orb is not None and orb.kind in (OrbitKind.PERIODIC, OrbitKind.LOCALLY_DENSE, OrbitKind.EXCEPTIONAL):
        if closure_of(fc, wid) & members:
            return True
    for schema in fc.accumulation_schemas:
        if schema.target <= members and wid in schema.samples:
            return True
    return False


def is_saddle_set(fc: FlowComplex, members: Iterable[str]) -> SaddleSetVerdict:
    """Grazed-and-left criterion: some witness outside the set accumulates on
    it while escaping every small neighborhood in both time directions."""
    mset = frozenset(members)
    _require_invariant_closed(fc, mset)
    for wid in sorted(fc.all_ids - mset):
        if _accumulates(fc, wid, mset) and _escapes(fc, wid, mset):
            return SaddleSetVerdict(True, wid)
    return SaddleSetVerdict(False, None)


def is_isolated(fc: FlowComplex, members: Iterable[str]) -> bool:
    """Isolated from minimal sets: no declared accumulation of minimal sets
    (a singularity sequence, or a family sequence of shrinking annuli)
    converges into the set from outside."""
    mset = frozenset(members)
    _require_invariant_closed(fc, mset)
    for schema in fc.accumulation_schemas:
        if not schema.target <= mset or set(schema.samples) <= mset:
            continue
        if schema.kind is SchemaKind.SINGULARITY_SEQUENCE:
            return False
        if schema.kind is SchemaKind.FAMILY_SEQUENCE:
            fams = [fc.family_by_id.get(s) for s in schema.samples]
            if all(
                f is not None and f.kind is FamilyKind.PERIODIC_ANNULUS and (f.shrinks0 or f.shrinks1)
                for f in fams
            ):
                return False
    return True


def validate_isolated_saddle_set(fc: FlowComplex, members: Iterable[str]) -> None:
    """Admission check for a set used in generalized extension.

    A single saddle point is always admitted (the degenerate case the
    generalization extends); other sets must pass both the saddle-set
    criterion and the isolation check.
    """
    mset = frozenset(members)
    if len(mset) == 1 and fc.is_saddle(next(iter(mset))):
        return
    try:
        _require_invariant_closed(fc, mset)
    except PreconditionError as exc:
        raise InvalidSaddleSetError(str(exc)) from exc
    if not is_saddle_set(fc, mset).verdict:
        raise InvalidSaddleSetError(f"{sorted(mset)} fails the saddle-set criterion")
    if not is_isolated(fc, mset):
        raise InvalidSaddleSetError(f"{sorted(mset)} is not isolated from minimal sets")


SaddleSetLike = Union[str, frozenset, set, tuple]


def _resolve_saddle_sets(fc: FlowComplex, saddle_sets: Iterable[SaddleSetLike]) -> list[frozenset[str]]:
    resolved: list[frozenset[str]] = []
    for item in saddle_sets:
        if isinstance(item, str):
            decl = fc.decl_by_id.get(item)
            if decl is None:
                raise InvalidSaddleSetError(f"no declared saddle set named {item!r}")
            resolved.append(decl.members)
        else:
            resolved.append(frozenset(item))
    for mset in resolved:
        validate_isolated_saddle_set(fc, mset)
    return sorted(resolved, key=sorted)


def _limit_ids(fc: FlowComplex, xid: str, forward: bool) -> Optional[frozenset[str]]:
    if xid in fc.sing_by_id:
        return frozenset({xid})
    orb = fc.orbit_by_id.get(xid)
    if orb is None:
        return None
    ref = orb.omega if forward else orb.alpha
    return None if ref is None else ref.resolved()


def _one_sided_generalized(
    fc: FlowComplex, start: str, forward: bool, sets: Sequence[frozenset[str]]
) -> ExtendedOrbitSet:
    entering: dict[int, frozenset[str]] = {}
    for i, fset in enumerate(sets):
        # classes whose limit on the approach side is contained in the set
        entering[i] = frozenset(
            o.id
            for o in fc.orbit_classes
            if (ref := (o.alpha if forward else o.omega)) is not None and ref.resolved() <= fset
        )
    members: set[str] = {start}
    added_round: dict[str, int] = {start: SEED_ROUND}
    self_readded = False
    depth = 0
    frontier = [start]
    rnd = 0
    while frontier:
        rnd += 1
        payload: list[str] = []
        for oid in sorted(frontier):
            limits = _limit_ids(fc, oid, forward)
            if limits is None:
                continue
            for i, fset in enumerate(sets):
                if limits <= fset:
                    payload.extend(sorted(fset))
                    payload.extend(sorted(entering[i]))
        if start in payload:
            self_readded = True
        fresh = []
        for pid in payload:
            if pid not in members:
                members.add(pid)
                added_round[pid] = rnd
                fresh.append(pid)
        if fresh:
            depth = rnd
        frontier = fresh
    return ExtendedOrbitSet(
        start=start,
        direction=Direction.FORWARD if forward else Direction.BACKWARD,
        members=frozenset(members),
        added_round=added_round,
        depth=depth,
        self_readded=self_readded,
    )


def generalized_extended_orbit(
    fc: FlowComplex,
    start: str,
    direction: Direction = Direction.BOTH,
    saddle_sets: Iterable[SaddleSetLike] = (),
) -> ExtendedOrbitSet:
    """Extension fixpoint with single saddles replaced by the given isolated
    saddle sets (declared set ids, or explicit id collections).

    Expansion triggers when a member's limit set on the approach side is
    contained in one of the sets; the whole set and every class whose
    departure-side limit is contained in it are then adjoined.
    """
    fc.require(start)
    direction = Direction(direction)
    sets = _resolve_saddle_sets(fc, saddle_sets)
    if direction is Direction.FORWARD:
        return _one_sided_generalized(fc, start, True, sets)
    if direction is Direction.BACKWARD:
        return _one_sided_generalized(fc, start, False, sets)
    fwd = _one_sided_generalized(fc, start, True, sets)
    bwd = _one_sided_generalized(fc, start, False, sets)
    added: dict[str, int] = dict(bwd.added_round)
    for oid, rnd in fwd.added_round.items():
        added[oid] = min(rnd, added.get(oid, rnd))
    return ExtendedOrbitSet(
        start=start,
        direction=Direction.BOTH,
        members=fwd.members | bwd.members,
        added_round=added,
        depth=max(fwd.depth, bwd.depth),
        self_readded=fwd.self_readded or bwd.self_readded,
    )


def generalized_saddle_sets(fc: FlowComplex) -> list[SaddleSetLike]:
    """The expansion sets used by generalized recurrence: every singleton
    saddle plus every declared set whose isolated flag is true.

    Declared sets are cross-checked against the computed criteria; an
    inconsistent declaration is an error.
    """
    sets: list[SaddleSetLike] = [frozenset({sid}) for sid in sorted(fc.saddle_ids)]
    for decl in fc.saddle_set_decls:
        verdict = is_saddle_set(fc, decl.members)
        if not verdict.verdict:
            raise InvalidSaddleSetError(f"declared set {decl.id!r} fails the saddle-set criterion")
        if is_isolated(fc, decl.members) != decl.isolated:
            raise InvalidSaddleSetError(f"declared set {decl.id!r} has an inconsistent isolated flag")
        if decl.isolated:
            sets.append(decl.members)
    return sets
