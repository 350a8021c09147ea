import pytest

from flowcomplex import (
    GALLERY,
    GalleryError,
    SizeParams,
    build,
    classification_report,
    gallery_names,
    random_complex,
    validate,
)


def test_gallery_names_are_stable():
    assert gallery_names() == (
        "sphere_meridian",
        "genus2_mixed",
        "nested_saddles_disk",
        "genus2_double_irrational",
        "double_center_sphere",
        "sphere_limit_cycle",
        "plus_saddle",
        "halfdisk_sphere",
        "comb_torus",
    )


@pytest.mark.parametrize("entry", GALLERY, ids=lambda e: e.name)
def test_expected_partial_reports_match(entry):
    fc = build(entry.name, None)
    assert validate(fc).ok
    report = classification_report(fc)
    for key, expected in entry.expected.items():
        assert getattr(report, key).verdict == expected, key


def test_unknown_entry_and_bad_params():
    with pytest.raises(GalleryError):
        build("klein_bottle_special", None)
    with pytest.raises(GalleryError):
        build("comb_torus", {"n": 1})
    with pytest.raises(GalleryError):
        build("nested_saddles_disk", {"n": 0})
    with pytest.raises(GalleryError):
        build("double_center_sphere", {"n": 0})
    with pytest.raises(GalleryError):
        build("sphere_meridian", {"n": 3})


def test_smallest_truncations_build():
    assert validate(build("nested_saddles_disk", {"n": 2})).ok
    assert validate(build("comb_torus", {"n": 2})).ok
    assert validate(build("double_center_sphere", {"n": 1})).ok


def test_builders_are_deterministic():
    for entry in GALLERY:
        assert build(entry.name, None) == build(entry.name, None)


def test_random_complex_deterministic_in_seed():
    for seed in (0, 1, 17, 999):
        assert random_complex(seed) == random_complex(seed)
    assert random_complex(0, SizeParams(profile="sphere")) == random_complex(0, SizeParams(profile="sphere"))


def test_random_complex_validates_across_seeds():
    for seed in range(250):
        fc = random_complex(seed)
        assert validate(fc).ok, seed


def test_random_profiles():
    with pytest.raises(ValueError):
        random_complex(0, SizeParams(profile="moebius"))
    fc = random_complex(5, SizeParams(profile="torus-irrational"))
    assert fc.surface.genus == 1
