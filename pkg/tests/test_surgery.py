import itertools

import pytest

from knotsurgery import (
    InvalidSlopeError,
    SurgerySlope,
    Word,
    abelianization,
    build_family,
    cable_link_group,
    count_homomorphisms,
    dehn_surgery_group,
    double_complement_group,
    family_manifest,
    half_complement_group,
    presentation_from_json,
    quotient_by_relators,
    standard_suite,
    tietze_simplify,
)
from knotsurgery.surgery import CABLE_LONGITUDE, CABLE_MERIDIAN, LONGITUDE, MERIDIAN

from conftest import naive_hom_count


def test_slope_validation():
    SurgerySlope(0, 1)
    SurgerySlope(-3, 2)
    with pytest.raises(InvalidSlopeError):
        SurgerySlope(1, 0)
    with pytest.raises(InvalidSlopeError):
        SurgerySlope(2, 4)
    with pytest.raises(InvalidSlopeError):
        SurgerySlope(0, 5)


def test_unknot_surgery_is_lens_space(unknot):
    group = dehn_surgery_group(unknot, SurgerySlope(2, 5))
    invariants = abelianization(group)
    assert invariants.free_rank == 0 and invariants.torsion == (5,)


def test_meridian_filling_kills_everything(trefoil, fig8, unknot, suite_small):
    for kp in (unknot, trefoil, fig8):
        group = dehn_surgery_group(kp, SurgerySlope(0, 1))
        simplified = tietze_simplify(group)
        for target in suite_small:
            assert count_homomorphisms(simplified, target) == 1


def test_trefoil_surgery_count_against_naive_enumeration(trefoil, suite_small):
    group = dehn_surgery_group(trefoil, SurgerySlope(1, 1))
    s3 = next(t for t in suite_small if t.name == "S3")
    # oracle: enumerate all |S3|^2 images of the unsimplified presentation
    assert count_homomorphisms(group, s3) == naive_hom_count(group, s3)


def test_cable_link_group_unknot_hopf_shadow(unknot):
    labeled = cable_link_group(unknot, SurgerySlope(0, 1))
    p = labeled.presentation
    assert p.names == ("x1", "mu", "lam")
    # relators: [mu, lam] and x mu^-1
    assert len(p.relators) == 2
    invariants = abelianization(p)
    assert invariants.free_rank == 2 and not invariants.torsion
    assert labeled.label(MERIDIAN) == Word.generator(1)
    assert labeled.label(LONGITUDE) == Word.generator(2)
    assert labeled.label(CABLE_MERIDIAN) == unknot.meridian
    assert labeled.label(CABLE_LONGITUDE) == unknot.longitude


def test_cable_link_group_trefoil_linking(trefoil):
    labeled = cable_link_group(trefoil, SurgerySlope(1, 1))
    invariants = abelianization(labeled.presentation)
    assert invariants.free_rank == 2 and not invariants.torsion


def test_cable_quotient_matches_surgery_spectra(fig8):
    slope = SurgerySlope(2, 3)
    labeled = cable_link_group(fig8, slope)
    collapsed = quotient_by_relators(
        labeled.presentation, [labeled.label(MERIDIAN), labeled.label(LONGITUDE)]
    )
    surgery = dehn_surgery_group(fig8, slope)
    suite = [t for t in standard_suite() if t.name in ("S3", "S4", "S5", "A5")]
    left = tietze_simplify(collapsed)
    right = tietze_simplify(surgery)
    for target in suite:
        assert count_homomorphisms(left, target) == count_homomorphisms(right, target)


@pytest.mark.parametrize("p,q,reference_braid", [(2, 3, "1 1 1"), (2, 5, "1 1 1 1 1")])
def test_cable_of_unknot_is_torus_knot(unknot, suite_full, p, q, reference_braid):
    # independent certification of the cable amalgam: filling the companion
    # meridian of the unknot's (p, q)-cable leaves the (p, q) torus knot group
    from knotsurgery import parse_braid, wirtinger_from_braid

    labeled = cable_link_group(unknot, SurgerySlope(p, q))
    torus_knot = tietze_simplify(
        quotient_by_relators(labeled.presentation, [labeled.label(MERIDIAN)])
    )
    reference = tietze_simplify(wirtinger_from_braid(parse_braid(reference_braid)).group)
    for target in suite_full:
        assert count_homomorphisms(torus_knot, target) == count_homomorphisms(
            reference, target
        ), target.name


@pytest.mark.parametrize("p,q", [(1, 1), (1, 2), (2, 1), (-3, 2)])
def test_mirror_braid_flips_slope_sign(trefoil, suite_full, p, q):
    # the reversed-sign braid presents the mirror knot; surgery along (p, q)
    # on one side must match (-p, q) on the other
    from knotsurgery import parse_braid, wirtinger_from_braid

    mirror = wirtinger_from_braid(parse_braid("-1 -1 -1"))
    left = tietze_simplify(dehn_surgery_group(mirror, SurgerySlope(p, q)))
    right = tietze_simplify(dehn_surgery_group(trefoil, SurgerySlope(-p, q)))
    for target in suite_full:
        assert count_homomorphisms(left, target) == count_homomorphisms(
            right, target
        ), target.name


def test_half_complement_unknot(unknot):
    group = half_complement_group(unknot, SurgerySlope(1, 3))
    invariants = abelianization(group)
    assert invariants.free_rank == 0 and invariants.torsion == (3,)


def test_half_abelianization_always_matches_surgery(trefoil, fig8, unknot):
    for kp, slope in itertools.product(
        (unknot, trefoil, fig8),
        (SurgerySlope(1, 1), SurgerySlope(2, 3), SurgerySlope(-1, 2), SurgerySlope(5, 1)),
    ):
        assert abelianization(half_complement_group(kp, slope)) == abelianization(
            dehn_surgery_group(kp, slope)
        )


def test_half_spectra_match_surgery_trefoil(trefoil, suite_full):
    slope = SurgerySlope(1, 2)
    left = tietze_simplify(half_complement_group(trefoil, slope))
    right = tietze_simplify(dehn_surgery_group(trefoil, slope))
    for target in suite_full:
        assert count_homomorphisms(left, target) == count_homomorphisms(right, target)


def test_double_equals_half(fig8):
    slope = SurgerySlope(3, 2)
    assert double_complement_group(fig8, slope) == half_complement_group(fig8, slope)


def test_double_h1_is_z_mod_q(fig8):
    for q in (1, 2, 3, 4, 5):
        slope = SurgerySlope(1, q)
        invariants = abelianization(double_complement_group(fig8, slope))
        assert invariants.free_rank == 0
        assert invariants.torsion == ((q,) if q > 1 else ())


def test_fig8_small_p_distinct(fig8_family_run):
    # q=1, p in {2, 3}: separated only deep into the escalation list
    assert (2, 3) in fig8_family_run["resolution"]
    target, left, right = fig8_family_run["resolution"][(2, 3)]
    assert left != right


def test_build_family_filters_and_reports(fig8):
    result = build_family(fig8, 2, [1, 2, 3])
    assert [m.slope.p for m in result.members] == [1, 3]
    assert result.skipped == (2,)


def test_build_family_order_independence(trefoil):
    forward = build_family(trefoil, 3, [1, 2, 4])
    backward = build_family(trefoil, 3, [4, 2, 1])
    assert {m.slope.p: m.presentation for m in forward.members} == {
        m.slope.p: m.presentation for m in backward.members
    }


def test_family_q1_members_have_trivial_h1(fig8):
    result = build_family(fig8, 1, range(1, 7))
    assert len(result.members) == 6
    for member in result.members:
        assert abelianization(member.presentation).is_trivial


def test_family_manifest_round_trip(trefoil):
    result = build_family(trefoil, 2, [1, 3])
    records = family_manifest(result)
    assert [r["p"] for r in records] == [1, 3]
    assert all(r["q"] == 2 for r in records)
    for record, member in zip(records, result.members):
        rebuilt = presentation_from_json(record["presentation"])
        assert rebuilt == member.presentation
        assert set(record["labels"]) == {
            MERIDIAN,
            LONGITUDE,
            CABLE_MERIDIAN,
            CABLE_LONGITUDE,
        }
