import pytest

from flowcomplex import (
    DichotomyCase,
    Family,
    FamilyKind,
    FlowComplex,
    OrbitClass,
    OrbitKind,
    PointKind,
    PreconditionError,
    Shape,
    SingularSet,
    SurfaceInfo,
    TheoremStatus,
    classification_report,
    dichotomy_check,
    is_extended_center,
    is_extended_negatively_recurrent,
    is_extended_pap,
    is_extended_positively_recurrent,
    is_extended_r_closed,
    is_extended_recurrent,
    is_generalized_recurrent,
    is_negatively_recurrent,
    is_nonwandering,
    is_positively_recurrent,
    is_regular,
    random_complex,
    verify_theorems,
)


def _two_center_sphere():
    return FlowComplex.build(
        SurfaceInfo(0, True, 0),
        singular_sets=[
            SingularSet("c1", Shape.POINT, PointKind.CENTER),
            SingularSet("c2", Shape.POINT, PointKind.CENTER),
        ],
        families=[
            Family("f", FamilyKind.PERIODIC_ANNULUS, frozenset({"c1"}), frozenset({"c2"}), True, True)
        ],
    )


def test_pointwise_recurrence_rules(gallery_complexes):
    limit_cycle = gallery_complexes["sphere_limit_cycle"]
    assert is_positively_recurrent(limit_cycle, "g")
    meridian = gallery_complexes["sphere_meridian"]
    assert not is_positively_recurrent(meridian, "m")
    genus2 = gallery_complexes["genus2_mixed"]
    assert is_positively_recurrent(genus2, "g11")
    # a semi-proper dense leaf is recurrent only on its unpinned side
    assert is_positively_recurrent(genus2, "u1")
    assert not is_negatively_recurrent(genus2, "u1")
    assert is_negatively_recurrent(genus2, "w1")
    assert not is_positively_recurrent(genus2, "w1")


def test_extended_pointwise_recurrence(gallery_complexes):
    meridian = gallery_complexes["sphere_meridian"]
    assert not is_extended_positively_recurrent(meridian, "m")
    genus2 = gallery_complexes["genus2_mixed"]
    assert is_extended_positively_recurrent(genus2, "a2")
    assert is_extended_negatively_recurrent(genus2, "a2")
    assert is_extended_negatively_recurrent(genus2, "u1")
    assert is_extended_positively_recurrent(genus2, "s1")


def test_extended_recurrent_verdicts(gallery_complexes):
    assert is_extended_recurrent(gallery_complexes["genus2_mixed"]).verdict
    assert is_extended_recurrent(gallery_complexes["genus2_double_irrational"]).verdict
    verdict = is_extended_recurrent(gallery_complexes["sphere_meridian"])
    assert not verdict.verdict
    assert verdict.witness is not None and verdict.witness.ids == ("m",)


def test_nonwandering_verdicts(gallery_complexes):
    assert is_nonwandering(gallery_complexes["sphere_meridian"]).verdict
    cycle = is_nonwandering(gallery_complexes["sphere_limit_cycle"])
    assert not cycle.verdict and cycle.witness.ids[0] in ("u", "w")
    assert not is_nonwandering(gallery_complexes["halfdisk_sphere"]).verdict


def test_family_sequence_route_makes_pinched_circle_nonwandering():
    from flowcomplex import AccumulationSchema, LimitRef, SchemaKind

    def build_torus(with_schema: bool) -> FlowComplex:
        schemas = []
        if with_schema:
            schemas.append(
                AccumulationSchema(
                    "row", SchemaKind.FAMILY_SEQUENCE, samples=("f1", "f2"), target=frozenset({"q0", "z0"})
                )
            )
        return FlowComplex.build(
            SurfaceInfo(1, True, 0),
            singular_sets=[SingularSet("q0", Shape.POINT, PointKind.OTHER)],
            orbit_classes=[
                OrbitClass("z0", OrbitKind.PROPER, LimitRef.sing("q0"), LimitRef.sing("q0")),
                OrbitClass("g1", OrbitKind.PERIODIC),
                OrbitClass("g2", OrbitKind.PERIODIC),
            ],
            families=[
                Family("f1", FamilyKind.PERIODIC_ANNULUS, frozenset({"g1"}), frozenset({"g2"})),
                Family("f2", FamilyKind.PERIODIC_ANNULUS, frozenset({"g2"}), frozenset({"g1"})),
            ],
            accumulation_schemas=schemas,
        )

    from flowcomplex import validate

    with_route = build_torus(True)
    without_route = build_torus(False)
    assert validate(with_route).ok and validate(without_route).ok
    assert is_nonwandering(with_route).verdict
    assert not is_nonwandering(without_route).verdict


def test_extended_pap_verdicts(gallery_complexes):
    double_irr = is_extended_pap(gallery_complexes["genus2_double_irrational"])
    assert not double_irr.verdict
    assert double_irr.witness is not None and double_irr.witness.rule == "block-overlap"
    assert is_extended_pap(_two_center_sphere()).verdict
    assert is_extended_pap(gallery_complexes["double_center_sphere"]).verdict


def test_extended_r_closed_verdicts(gallery_complexes):
    assert is_extended_r_closed(gallery_complexes["double_center_sphere"]).verdict
    assert not is_extended_r_closed(gallery_complexes["genus2_double_irrational"]).verdict
    assert is_extended_r_closed(_two_center_sphere()).verdict


def test_regularity(gallery_complexes):
    assert is_regular(gallery_complexes["genus2_mixed"])
    assert not is_regular(gallery_complexes["sphere_meridian"])
    assert not is_regular(gallery_complexes["nested_saddles_disk"])
    assert not is_regular(gallery_complexes["halfdisk_sphere"])


def test_extended_center(gallery_complexes):
    dc = gallery_complexes["double_center_sphere"]
    assert is_extended_center(dc, "nec1")   # a plain center
    assert is_extended_center(dc, "pn")     # shrinking boundary of compact extended orbits
    assert is_extended_center(dc, "ps")
    plus = gallery_complexes["plus_saddle"]
    assert not is_extended_center(plus, "s")
    with pytest.raises(PreconditionError):
        is_extended_center(gallery_complexes["halfdisk_sphere"], "seg")


def test_generalized_recurrence(gallery_complexes):
    assert is_generalized_recurrent(gallery_complexes["halfdisk_sphere"]).verdict
    comb = is_generalized_recurrent(gallery_complexes["comb_torus"])
    assert not comb.verdict and comb.witness.ids == ("z0",)
    # extended recurrence implies generalized recurrence
    for name in ("genus2_mixed", "genus2_double_irrational", "nested_saddles_disk", "double_center_sphere"):
        assert is_generalized_recurrent(gallery_complexes[name]).verdict, name


def test_dichotomy_cases(gallery_complexes):
    assert dichotomy_check(gallery_complexes["genus2_mixed"], "c1") is DichotomyCase.MEETS_LOCALLY_DENSE
    nested = gallery_complexes["nested_saddles_disk"]
    assert dichotomy_check(nested, "a1") is DichotomyCase.NON_SADDLE_SINGULARITY_IN_CLOSURE


def test_dichotomy_preconditions(gallery_complexes):
    with pytest.raises(PreconditionError):
        dichotomy_check(gallery_complexes["sphere_meridian"], "m")  # not extended recurrent
    with pytest.raises(PreconditionError):
        dichotomy_check(gallery_complexes["double_center_sphere"], "nlo1")  # closed extension


def test_dichotomy_never_violates_on_random_sweep():
    for seed in range(300):
        fc = random_complex(seed)
        if not is_extended_recurrent(fc).verdict:
            continue
        from flowcomplex import Direction, extended_orbit, orbit_set_is_closed

        for xid in sorted(fc.all_ids):
            if orbit_set_is_closed(fc, extended_orbit(fc, xid, Direction.BOTH).members):
                continue
            assert dichotomy_check(fc, xid) is not DichotomyCase.VIOLATION


def test_report_witnesses_accompany_false_verdicts(gallery_complexes):
    for fc in gallery_complexes.values():
        report = classification_report(fc)
        for name in report.FIELDS:
            verdict = getattr(report, name)
            if not verdict.verdict:
                assert verdict.witness is not None, name
                assert verdict.witness.ids


def test_theorem_harness_on_genus2(gallery_complexes):
    results = verify_theorems(gallery_complexes["genus2_mixed"])
    by_name = {r.theorem: r for r in results}
    assert by_name["extended-recurrence-implies-nonwandering"].status is TheoremStatus.HOLDS
    assert by_name["regularity-equivalence"].status is TheoremStatus.HOLDS
    assert by_name["regular-orbit-closure-dichotomy"].status is TheoremStatus.HOLDS
    assert all(r.status is not TheoremStatus.VIOLATION for r in results)


def test_theorem_harness_limit_cycle(gallery_complexes):
    results = verify_theorems(gallery_complexes["sphere_limit_cycle"])
    by_name = {r.theorem: r for r in results}
    assert by_name["limit-cycles-force-wandering"].status is TheoremStatus.HOLDS
    assert by_name["genus-zero-equivalence"].status is TheoremStatus.HOLDS


def test_theorem_harness_on_double_center(gallery_complexes):
    results = {r.theorem: r for r in verify_theorems(gallery_complexes["double_center_sphere"])}
    for name in (
        "rclosed-implies-partition",
        "rclosed-singularity-structure",
        "partition-implies-extended-recurrence",
        "closed-extended-orbit-equivalence",
    ):
        assert results[name].status is TheoremStatus.HOLDS, name


def test_five_way_equivalence_positive_case():
    from flowcomplex import SizeParams

    seen_true = False
    for seed in range(40):
        fc = random_complex(seed, SizeParams(profile="sphere-regular"))
        results = {r.theorem: r for r in verify_theorems(fc, ["genus-zero-equivalence"])}
        res = results["genus-zero-equivalence"]
        assert res.status is TheoremStatus.HOLDS
        if is_extended_r_closed(fc).verdict:
            seen_true = True
    assert seen_true


def test_unknown_theorem_name_is_an_error(gallery_complexes):
    with pytest.raises(ValueError):
        verify_theorems(gallery_complexes["plus_saddle"], ["no-such-check"])


def test_strictness_witnesses(gallery_complexes):
    meridian = classification_report(gallery_complexes["sphere_meridian"])
    assert meridian.non_wandering.verdict and not meridian.extended_recurrent.verdict
    double_irr = classification_report(gallery_complexes["genus2_double_irrational"])
    assert double_irr.extended_recurrent.verdict and not double_irr.extended_pap.verdict
    halfdisk = classification_report(gallery_complexes["halfdisk_sphere"])
    assert halfdisk.generalized_recurrent.verdict and not halfdisk.non_wandering.verdict
    comb = classification_report(gallery_complexes["comb_torus"])
    assert comb.non_wandering.verdict and not comb.generalized_recurrent.verdict
