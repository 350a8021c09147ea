"""Deciders for the recurrence hierarchy and singularity character.

Every decision is a pure function of a validated flow complex.  Flow-level
verdicts carry a witness (an id set plus the rule that fired) whenever they
are negative, so reports are auditable.  A shared per-complex cache keeps
repeated extension and closure queries cheap when a full report or the
theorem harness is assembled.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .model import (
    FamilyKind,
    FlowComplex,
    OrbitClass,
    OrbitKind,
    PointKind,
    PreconditionError,
    RefKind,
    SchemaKind,
    Shape,
    closure_of,
)
from .orbits import (
    Direction,
    ExtendedOrbitSet,
    extended_orbit,
    generalized_extended_orbit,
    generalized_saddle_sets,
    member_closure,
    orbit_set_closure,
    orbit_set_is_closed,
)


@dataclass(frozen=True)
class Witness:
    ids: tuple[str, ...]
    rule: str

    def describe(self) -> str:
        return f"{self.rule}: {', '.join(self.ids)}"


@dataclass(frozen=True)
class Verdict:
    verdict: bool
    witness: Optional[Witness] = None

    def __bool__(self) -> bool:
        return self.verdict


@dataclass(frozen=True)
class ClassificationReport:
    non_wandering: Verdict
    recurrent: Verdict
    extended_recurrent: Verdict
    extended_pap: Verdict
    extended_r_closed: Verdict
    regular: Verdict
    generalized_recurrent: Verdict

    FIELDS = (
        "non_wandering",
        "recurrent",
        "extended_recurrent",
        "extended_pap",
        "extended_r_closed",
        "regular",
        "generalized_recurrent",
    )

    def as_dict(self) -> dict[str, dict]:
        out: dict[str, dict] = {}
        for name in self.FIELDS:
            v: Verdict = getattr(self, name)
            entry: dict = {"verdict": v.verdict}
            if v.witness is not None:
                entry["witness"] = {"ids": list(v.witness.ids), "rule": v.witness.rule}
            out[name] = entry
        return out


class DichotomyCase(str, Enum):
    NON_SADDLE_SINGULARITY_IN_CLOSURE = "NonSaddleSingularityInClosure"
    MEETS_LOCALLY_DENSE = "MeetsLocallyDense"
    VIOLATION = "Violation"


def _dense_kinds() -> tuple[OrbitKind, OrbitKind]:
    return (OrbitKind.LOCALLY_DENSE, OrbitKind.EXCEPTIONAL)


class Classifier:
    """Cached per-complex classification engine.

    The module-level functions below are the public surface; they build a
    throwaway instance.  Report assembly and the theorem harness reuse one
    instance so extension fixpoints and closures are computed once.
    """

    def __init__(self, fc: FlowComplex):
        self.fc = fc
        self._ext: dict[tuple[str, Direction], ExtendedOrbitSet] = {}
        self._closure: dict[str, frozenset[str]] = {}
        self._blocks: Optional[dict[str, frozenset[str]]] = None
        self._gen: Optional[dict[tuple[str, Direction], ExtendedOrbitSet]] = None
        self._gen_sets: Optional[list] = None

    # -- cached primitives -------------------------------------------------

    def ext(self, xid: str, direction: Direction) -> ExtendedOrbitSet:
        key = (xid, direction)
        if key not in self._ext:
            self._ext[key] = extended_orbit(self.fc, xid, direction)
        return self._ext[key]

    def closure(self, xid: str) -> frozenset[str]:
        if xid not in self._closure:
            self._closure[xid] = closure_of(self.fc, xid)
        return self._closure[xid]

    def gen_ext(self, xid: str, direction: Direction) -> ExtendedOrbitSet:
        if self._gen is None:
            self._gen = {}
            self._gen_sets = generalized_saddle_sets(self.fc)
        key = (xid, direction)
        if key not in self._gen:
            self._gen[key] = generalized_extended_orbit(self.fc, xid, direction, self._gen_sets)
        return self._gen[key]

    def blocks(self) -> dict[str, frozenset[str]]:
        """Closure of the two-sided extended orbit of every id, with family
        ids standing for one generic member."""
        if self._blocks is None:
            self._blocks = {
                xid: orbit_set_closure(self.fc, self.ext(xid, Direction.BOTH).members)
                for xid in self.fc.all_ids
            }
        return self._blocks

    # -- pointwise recurrence ----------------------------------------------

    def positively_recurrent(self, xid: str) -> bool:
        return self._recurrent(xid, forward=True)

    def negatively_recurrent(self, xid: str) -> bool:
        return self._recurrent(xid, forward=False)

    def _recurrent(self, xid: str, forward: bool) -> bool:
        fc = self.fc
        fc.require(xid)
        if xid in fc.sing_by_id:
            return True
        fam = fc.family_by_id.get(xid)
        if fam is not None:
            return fam.kind is FamilyKind.PERIODIC_ANNULUS
        orb = fc.orbit_by_id[xid]
        if orb.kind is OrbitKind.PERIODIC:
            return True
        if orb.kind is OrbitKind.PROPER:
            return False
        # dense classes come back on the side whose end is not pinned to a limit
        pinned = orb.omega if forward else orb.alpha
        return pinned is None

    def extended_recurrent_point(self, xid: str, forward: bool, generalized: bool = False) -> bool:
        fc = self.fc
        if self._recurrent(xid, forward):
            return True
        fam = fc.family_by_id.get(xid)
        if fam is not None:
            # a closed-extended-orbit region declares that each member is a
            # compact extended orbit, whose points re-approach themselves
            return fam.kind is FamilyKind.CLOSED_EXTENDED_REGION
        direction = Direction.FORWARD if forward else Direction.BACKWARD
        ext = self.gen_ext(xid, direction) if generalized else self.ext(xid, direction)
        if ext.self_readded:
            return True
        for oid in sorted(ext.members):
            if ext.added_round[oid] > 0 and xid in self.closure(oid):
                return True
        return False

    # -- flow-level verdicts -------------------------------------------------

    def _universe(self) -> list[str]:
        return sorted(self.fc.all_ids)

    def recurrent_flow(self) -> Verdict:
        for xid in self._universe():
            if not (self.positively_recurrent(xid) and self.negatively_recurrent(xid)):
                return Verdict(False, Witness((xid,), "non-recurrent-point"))
        return Verdict(True)

    def extended_recurrent(self) -> Verdict:
        for xid in self._universe():
            for forward in (True, False):
                if not self.extended_recurrent_point(xid, forward):
                    rule = "not-extended-positively-recurrent" if forward else "not-extended-negatively-recurrent"
                    return Verdict(False, Witness((xid,), rule))
        return Verdict(True)

    def generalized_recurrent(self) -> Verdict:
        for xid in self._universe():
            for forward in (True, False):
                if not self.extended_recurrent_point(xid, forward, generalized=True):
                    rule = (
                        "not-generalized-positively-recurrent"
                        if forward
                        else "not-generalized-negatively-recurrent"
                    )
                    return Verdict(False, Witness((xid,), rule))
        return Verdict(True)

    def nonwandering(self) -> Verdict:
        """Every proper non-closed class needs a declared route into the
        closure of the recurrent part; there is no benefit of the doubt."""
        fc = self.fc
        dense_ids = [o.id for o in fc.orbit_classes if o.kind in _dense_kinds()]
        annulus_boundaries: list[frozenset[str]] = [
            bset
            for fam in fc.families
            if fam.kind is FamilyKind.PERIODIC_ANNULUS
            for bset, _ in fam.boundaries()
        ]
        seq_targets = [
            s.target for s in fc.accumulation_schemas if s.kind is SchemaKind.FAMILY_SEQUENCE
        ]
        for o in fc.orbit_classes:
            if o.kind is not OrbitKind.PROPER:
                continue
            in_dense_closure = any(o.id in self.closure(d) for d in dense_ids)
            in_family_boundary = any(o.id in bset for bset in annulus_boundaries)
            in_seq_target = any(o.id in t for t in seq_targets)
            if not (in_dense_closure or in_family_boundary or in_seq_target):
                return Verdict(False, Witness((o.id,), "wandering-proper-class"))
        return Verdict(True)

    def extended_pap(self) -> Verdict:
        """The closures of extended orbits must pairwise coincide or be disjoint."""
        blocks = self.blocks()
        ids = self._universe()
        for i, x in enumerate(ids):
            bx = blocks[x]
            for y in ids[i + 1 :]:
                by = blocks[y]
                if bx & by and bx != by:
                    return Verdict(False, Witness((x, y), "block-overlap"))
        return Verdict(True)

    def _usc_witness(self) -> Optional[Witness]:
        """Symbolic upper semicontinuity of the block decomposition.

        Family members converge onto each non-shrinking boundary, so every
        boundary member's block must absorb the whole boundary set.  A fixed
        continuum in such a boundary always breaks this: its points carry
        singleton blocks, which cannot absorb the continuum they sit in.
        Schema samples converge onto the target, so each target member's
        block must absorb the target together with whatever all sample
        blocks share.
        """
        blocks = self.blocks()
        for fam in self.fc.families:
            for bset, shrinks in fam.boundaries():
                if shrinks:
                    continue
                for bid in sorted(bset):
                    sing = self.fc.sing_by_id.get(bid)
                    if sing is not None and sing.shape is not Shape.POINT:
                        return Witness((fam.id, bid), "continuum-in-limit")
                    if not bset <= blocks[bid]:
                        return Witness((fam.id, bid), "family-boundary-not-absorbed")
        for schema in self.fc.accumulation_schemas:
            # what every instance's block carries along persists in the limit;
            # a single declared instance gives no evidence of a shared part
            shared: frozenset[str] = frozenset()
            if len(schema.samples) >= 2:
                shared = blocks[schema.samples[0]]
                for sid in schema.samples[1:]:
                    shared = shared & blocks[sid]
            limit = schema.target | shared
            for tid in sorted(schema.target):
                if not limit <= blocks[tid]:
                    return Witness((schema.id, tid), "schema-limit-not-absorbed")
        return None

    def extended_r_closed(self) -> Verdict:
        pap = self.extended_pap()
        if not pap.verdict:
            return Verdict(False, pap.witness)
        usc = self._usc_witness()
        if usc is not None:
            return Verdict(False, usc)
        return Verdict(True)

    def regular(self) -> Verdict:
        for s in self.fc.singular_sets:
            if s.shape is not Shape.POINT or s.kind not in (
                PointKind.CENTER,
                PointKind.SADDLE,
                PointKind.SINK,
                PointKind.SOURCE,
            ):
                return Verdict(False, Witness((s.id,), "degenerate-singularity"))
        for schema in self.fc.accumulation_schemas:
            if schema.kind in (SchemaKind.SADDLE_CHAIN, SchemaKind.SINGULARITY_SEQUENCE):
                return Verdict(False, Witness((schema.id,), "singularity-accumulation"))
        return Verdict(True)

    def report(self) -> ClassificationReport:
        return ClassificationReport(
            non_wandering=self.nonwandering(),
            recurrent=self.recurrent_flow(),
            extended_recurrent=self.extended_recurrent(),
            extended_pap=self.extended_pap(),
            extended_r_closed=self.extended_r_closed(),
            regular=self.regular(),
            generalized_recurrent=self.generalized_recurrent(),
        )

    # -- singularity character and dichotomy ---------------------------------

    def extended_center(self, sid: str) -> bool:
        fc = self.fc
        fc.require(sid)
        sing = fc.sing_by_id.get(sid)
        if sing is None or sing.shape is not Shape.POINT:
            raise PreconditionError(f"{sid!r} is not a point singularity")
        if sing.kind is PointKind.CENTER:
            return True
        for fam in fc.families:
            for bset, shrinks in fam.boundaries():
                if shrinks and bset == frozenset({sid}):
                    return True
        return False

    def dichotomy(self, xid: str) -> DichotomyCase:
        fc = self.fc
        if not self.extended_recurrent().verdict:
            raise PreconditionError("dichotomy requires an extended recurrent flow")
        members = self.ext(xid, Direction.BOTH).members
        if orbit_set_is_closed(fc, members):
            raise PreconditionError(f"extended orbit of {xid!r} is closed")
        closure = orbit_set_closure(fc, members)
        for sid in sorted(closure):
            sing = fc.sing_by_id.get(sid)
            if sing is not None and not sing.is_saddle:
                return DichotomyCase.NON_SADDLE_SINGULARITY_IN_CLOSURE
        for o in fc.orbit_classes:
            if o.kind is OrbitKind.LOCALLY_DENSE and (self.closure(o.id) & members):
                return DichotomyCase.MEETS_LOCALLY_DENSE
        return DichotomyCase.VIOLATION


# -- public functions --------------------------------------------------------


def is_positively_recurrent(fc: FlowComplex, xid: str) -> bool:
    return Classifier(fc).positively_recurrent(xid)


def is_negatively_recurrent(fc: FlowComplex, xid: str) -> bool:
    return Classifier(fc).negatively_recurrent(xid)


def is_extended_positively_recurrent(fc: FlowComplex, xid: str) -> bool:
    return Classifier(fc).extended_recurrent_point(xid, forward=True)


def is_extended_negatively_recurrent(fc: FlowComplex, xid: str) -> bool:
    return Classifier(fc).extended_recurrent_point(xid, forward=False)


def is_recurrent(fc: FlowComplex) -> Verdict:
    return Classifier(fc).recurrent_flow()


def is_extended_recurrent(fc: FlowComplex) -> Verdict:
    return Classifier(fc).extended_recurrent()


def is_nonwandering(fc: FlowComplex) -> Verdict:
    return Classifier(fc).nonwandering()


def is_extended_pap(fc: FlowComplex) -> Verdict:
    return Classifier(fc).extended_pap()


def is_extended_r_closed(fc: FlowComplex) -> Verdict:
    return Classifier(fc).extended_r_closed()


def is_regular(fc: FlowComplex) -> bool:
    return Classifier(fc).regular().verdict


def is_extended_center(fc: FlowComplex, sid: str) -> bool:
    return Classifier(fc).extended_center(sid)


def is_generalized_recurrent(fc: FlowComplex) -> Verdict:
    return Classifier(fc).generalized_recurrent()


def dichotomy_check(fc: FlowComplex, xid: str) -> DichotomyCase:
    return Classifier(fc).dichotomy(xid)


def classification_report(fc: FlowComplex) -> ClassificationReport:
    return Classifier(fc).report()
