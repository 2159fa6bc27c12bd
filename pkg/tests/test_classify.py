import pytest

from modules.classify.audibility import COMPACT_NOTE, SCOPE, audibility_report, compact_weakly_locally_symmetric
from modules.classify.tables import (
    PROPERTY_NAMES,
    classify,
    classify_algebra,
    irreducible_dim,
    realizable,
    scan_cases,
)
from modules.errors import InvalidInputError, InvalidPairError
from modules.heisalg.algebra import build_algebra


def _profile(kind, p, q):
    return classify_algebra(build_algebra(kind, p, q)).to_dict()


@pytest.mark.parametrize("m,expected", [(1, 2), (2, 4), (3, 4), (4, 8), (7, 8), (8, 16), (9, 32), (15, 128)])
def test_irreducible_dimensions(m, expected):
    assert irreducible_dim(m) == expected


def test_irreducible_dimension_needs_a_center():
    with pytest.raises(InvalidInputError):
        irreducible_dim(0)


def test_realizability():
    assert realizable(7, 16, False)
    assert not realizable(7, 8, False)
    assert not realizable(5, 16, False)
    assert realizable(5, 16, True)
    assert not realizable(3, 6, True)
    with pytest.raises(InvalidInputError):
        classify(1, 3, True)


@pytest.mark.parametrize("kind,p,q,expected", [
    ("octonion", 1, 0, (True, True, True, True)),
    ("octonion", 2, 0, (True, True, True, True)),
    ("octonion", 1, 1, (False, False, False, False)),
    ("octonion", 3, 0, (False, False, False, True)),
    ("octonion", 2, 1, (False, False, False, False)),
    ("quaternion", 1, 1, (True, True, True, True)),
    ("quaternion", 4, 2, (True, True, True, True)),
])
def test_algebra_profiles(kind, p, q, expected):
    profile = _profile(kind, p, q)
    assert tuple(profile[name] for name in PROPERTY_NAMES) == expected


def test_narrow_weak_symmetry_excludes_one_dimensional_center():
    profile = classify(1, 4, True)
    assert profile.weakly_symmetric_broad
    assert not profile.weakly_symmetric_narrow


def test_scan_invariants():
    cases = scan_cases()
    for dim_z, dim_v, iso in cases:
        assert realizable(dim_z, dim_v, iso)
        if dim_z % 4 != 3:
            assert iso
        profile = classify(dim_z, dim_v, iso)
        assert profile.weakly_symmetric_broad == profile.commutative
        assert not profile.weakly_symmetric_narrow or profile.weakly_symmetric_broad
        assert not profile.commutative or profile.go_space


def test_commutative_cases_with_large_center():
    rows = {case for case in scan_cases() if case[0] >= 4 and classify(*case).commutative}
    assert rows == {(5, 8, True), (6, 8, True), (7, 8, True), (7, 16, True)}


def test_go_beyond_commutative():
    rows = {case for case in scan_cases() if classify(*case).go_space and not classify(*case).commutative}
    assert rows == {(7, 24, True)}


# -------------------------
# Audibility
# -------------------------

def test_octonion_11_vs_20_hides_every_property():
    report = audibility_report(build_algebra("o", 1, 1), build_algebra("o", 2, 0))
    assert report.isospectral and not report.locally_isometric
    assert report.inaudible_properties == list(PROPERTY_NAMES)
    assert report.scope == SCOPE


def test_octonion_21_vs_30_hides_go_property():
    report = audibility_report(build_algebra("o", 2, 1), build_algebra("o", 3, 0))
    assert report.inaudible_properties == ["go_space"]


def test_quaternion_pair_hides_nothing():
    report = audibility_report(build_algebra("h", 1, 1), build_algebra("h", 2, 0))
    assert report.isospectral
    assert report.inaudible_properties == []


def test_swapped_pair_is_locally_isometric():
    report = audibility_report(build_algebra("o", 1, 2), build_algebra("o", 2, 1))
    assert report.locally_isometric
    assert report.inaudible_properties == []


def test_non_isospectral_pair_reports_differences_only():
    report = audibility_report(build_algebra("o", 1, 1), build_algebra("o", 3, 0))
    assert not report.isospectral
    assert report.inaudible_properties == []
    assert report.differing_properties == ["go_space"]


def test_audibility_is_symmetric():
    a, b = build_algebra("o", 2, 1), build_algebra("o", 3, 0)
    ab, ba = audibility_report(a, b), audibility_report(b, a)
    assert ab.inaudible_properties == ba.inaudible_properties
    assert ab.isospectral == ba.isospectral


def test_mixed_kinds_rejected():
    with pytest.raises(InvalidPairError):
        audibility_report(build_algebra("o", 1, 1), build_algebra("h", 2, 0))


def test_report_dict_carries_compact_section():
    data = audibility_report(build_algebra("o", 1, 1), build_algebra("o", 2, 0)).to_dict()
    assert data["compact"] == {
        "isospectral": True,
        "locally_isometric": False,
        "weakly_locally_symmetric": [False, True],
        "inaudible_properties": ["weakly_locally_symmetric"],
        "note": COMPACT_NOTE,
    }
    assert data["profiles"][1]["commutative"] is True


def test_compact_weak_local_symmetry_only_where_settled():
    assert compact_weakly_locally_symmetric(build_algebra("o", 2, 0)) is True
    assert compact_weakly_locally_symmetric(build_algebra("o", 1, 1)) is False
    assert compact_weakly_locally_symmetric(build_algebra("h", 2, 0)) is None
    quaternion = audibility_report(build_algebra("h", 1, 1), build_algebra("h", 2, 0))
    assert quaternion.compact_inaudible_properties == []
    assert "dimension 23" in COMPACT_NOTE
