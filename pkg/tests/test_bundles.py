import random
from fractions import Fraction

import pytest

from quiverbundles import linalg
from quiverbundles.bundles import (
    SplitBundle,
    TwistData,
    TwistedQuiverBundle,
    base_locus,
    degree_vector,
    fiber_at,
    generated_subsheaf_summary,
    generation_matrix,
    hn_filtration_split,
    hn_step_indices,
    is_stable_quasimap,
    moment_residual_sheaf,
    residual_is_zero,
    subbundle_is_arrow_invariant,
    validate,
)
from quiverbundles.polynomials import HomogPoly, poly_mat_is_zero
from quiverbundles.quivers import HypothesisError, TorusElement
from quiverbundles.representations import is_stable_framed, moment

from _builders import (
    ADHM_DOUBLE,
    ADHM_TWIST,
    adhm_bundle,
    chain_bundle,
    form,
)

ZERO = HomogPoly.zero()
ONE = HomogPoly.constant(1)
S = HomogPoly.monomial(1, 0)
T = HomogPoly.monomial(1, 1)
ST = S * T


def test_validate_consistent_instance():
    e = adhm_bundle(
        [1, 0],
        b1=[[ZERO, ONE], [ZERO, ZERO]],
        iota=[[form(1, 2, 3)], [ONE]],
    )
    report = validate(e)
    assert report.valid


def test_validate_flags_twist_pairing():
    bad_twist = TwistData.of({"loop+": -1, "loop-": 1, "frame+": 0, "frame-": -2})
    e = TwistedQuiverBundle(
        ADHM_DOUBLE,
        {"0": SplitBundle((0,)), "1": SplitBundle((0,))},
        bad_twist,
        {
            "loop+": ((ZERO,),),
            "loop-": ((ZERO,),),
            "frame+": ((ONE,),),
            "frame-": ((ZERO,),),
        },
    )
    report = validate(e)
    assert not report.valid
    assert any("loop" in v and "pairing" in v for v in report.violations)


def test_validate_names_bad_entry():
    e = adhm_bundle([1, 0], iota=[[ONE], [ONE]])  # row 0 must have degree 1
    report = validate(e)
    assert not report.valid
    assert any("'frame+'" in v and "(0, 0)" in v for v in report.violations)


def test_validate_flags_forced_zero_entry():
    e = adhm_bundle([0, 0], b1=[[ZERO, ZERO], [ONE, ZERO]])  # degree -1 slot
    report = validate(e)
    assert any("must vanish" in v for v in report.violations)


def test_moment_residual_scalar_cases():
    e = adhm_bundle([3], iota=[[form(3, 1, 0, 0, 2)]])
    assert residual_is_zero(e)
    zero_e = adhm_bundle([2])
    assert residual_is_zero(zero_e)


def test_moment_residual_detects_noncommuting_loops():
    # degrees (2,1,0): B entries live one degree step down; the commutator
    # has a constant entry in the corner
    b1 = [
        [ZERO, ONE, ZERO],
        [ZERO, ZERO, ONE],
        [ZERO, ZERO, ZERO],
    ]
    b2 = [
        [ZERO, ONE, ZERO],
        [ZERO, ZERO, ZERO],
        [ZERO, ZERO, ZERO],
    ]
    e = adhm_bundle([2, 1, 0], b1=b1, b2=b2)
    assert validate(e).valid
    res = moment_residual_sheaf(e)
    assert not poly_mat_is_zero(res["1"])
    assert res["1"][0][2] == HomogPoly.constant(-1)


def test_degree_vector_examples():
    assert degree_vector(adhm_bundle([2, 1]))["1"] == 3
    assert degree_vector(adhm_bundle([0, 0, 0]))["1"] == 0
    e = chain_bundle([1], [-1, 4])
    beta = degree_vector(e)
    assert beta["1"] == 1 and beta["2"] == 3


def test_fiber_at_evaluates_forms():
    e = adhm_bundle([2], iota=[[ST]])
    assert fiber_at(e, (1, 1)).x["frame+"] == ((Fraction(1),),)
    assert fiber_at(e, (1, 0)).x["frame+"] == ((Fraction(0),),)
    with pytest.raises(ValueError):
        fiber_at(e, (0, 0))


def test_fiber_of_constant_bundle_is_constant_rep():
    e = adhm_bundle([0, 0], iota=[[ONE], [HomogPoly.constant(2)]])
    f1 = fiber_at(e, (1, 5))
    f2 = fiber_at(e, (3, -2))
    assert f1.x == f2.x


def test_base_locus_st_example():
    e = adhm_bundle([2], iota=[[ST]])
    report = base_locus(e)
    assert report.stable
    assert report.polynomial == ST
    assert is_stable_quasimap(e)
    # base points are exactly [1:0] and [0:1]
    assert not is_stable_framed(fiber_at(e, (1, 0))).stable
    assert not is_stable_framed(fiber_at(e, (0, 1))).stable
    assert is_stable_framed(fiber_at(e, (1, 1))).stable


def test_base_locus_zero_framing():
    e = adhm_bundle([2])
    report = base_locus(e)
    assert not report.stable
    assert report.polynomial.is_zero()
    assert not is_stable_quasimap(e)


def test_base_locus_constant_section_empty():
    e = adhm_bundle([0], iota=[[ONE]])
    report = base_locus(e)
    assert report.stable
    assert report.polynomial.degree == 0


def test_base_locus_requires_zero_residual():
    b1 = [[ZERO, ONE, ZERO], [ZERO, ZERO, ONE], [ZERO, ZERO, ZERO]]
    b2 = [[ZERO, ONE, ZERO], [ZERO, ZERO, ZERO], [ZERO, ZERO, ZERO]]
    e = adhm_bundle([2, 1, 0], b1=b1, b2=b2)
    with pytest.raises(HypothesisError):
        base_locus(e)


def test_base_locus_two_summand_word_generation():
    # generation needs the loop word: iota alone has rank 1
    e = adhm_bundle(
        [2, 0],
        b1=[[ZERO, T], [ZERO, ZERO]],
        iota=[[S * S], [ONE]],
    )
    assert validate(e).valid
    report = base_locus(e)
    assert report.stable
    assert report.polynomial == T
    assert not is_stable_framed(fiber_at(e, (1, 0))).stable
    assert is_stable_framed(fiber_at(e, (1, 2))).stable


def test_stability_agrees_with_fibers_at_random_points():
    rng = random.Random(6)
    e = adhm_bundle(
        [2, 0],
        b1=[[ZERO, T], [ZERO, ZERO]],
        iota=[[form(2, 1, -1, 2)], [ONE]],
    )
    report = base_locus(e)
    assert report.stable
    for _ in range(10):
        z = (1, Fraction(rng.randint(-20, 20)))
        fiber_ok = is_stable_framed(fiber_at(e, z)).stable
        on_locus = report.polynomial.evaluate(*z) == 0
        assert fiber_ok == (not on_locus)


def test_residual_zero_implies_fiber_moment_zero():
    e = adhm_bundle(
        [2, 0],
        b1=[[ZERO, T], [ZERO, ZERO]],
        b2=[[ZERO, S], [ZERO, ZERO]],
        iota=[[S * S], [ONE]],
    )
    assert residual_is_zero(e)
    for z in [(1, 0), (1, 3), (2, 5), (0, 1)]:
        res = moment(fiber_at(e, z))
        assert all(linalg.is_zero_matrix(m) for m in res.values())


def test_fiber_stability_invariant_under_torus_rescaling():
    from quiverbundles.representations import torus_act

    e = adhm_bundle([2], iota=[[ST]])
    for z in [(1, 1), (1, 0), (2, 3)]:
        fiber = fiber_at(e, z)
        verdict = is_stable_framed(fiber).stable
        t = TorusElement.symplectic(ADHM_DOUBLE, {"loop": Fraction(5, 3), "frame": 7})
        assert is_stable_framed(torus_act(t, fiber)).stable == verdict


def test_generation_matrix_prunes_parallel_columns():
    # b2 proportional to b1 contributes no new generation columns
    e = adhm_bundle(
        [2, 0],
        b1=[[ZERO, T], [ZERO, ZERO]],
        b2=[[ZERO, T.scaled(3)], [ZERO, ZERO]],
        iota=[[S * S], [ONE]],
    )
    assert validate(e).valid
    matrix, twists = generation_matrix(e, "1")
    assert len(twists) == 2


def test_generated_subsheaf_full_when_stable():
    e = adhm_bundle(
        [2, 0],
        b1=[[ZERO, T], [ZERO, ZERO]],
        iota=[[S * S], [ONE]],
    )
    summary = generated_subsheaf_summary(e)
    assert summary.rank("1") == 2
    assert summary.degree("1") == 2


def test_generated_subsheaf_saturated_proper_piece():
    # iota lands in the degree-2 summand; the generated subsheaf saturates
    # the image to the full O(2) line
    e = adhm_bundle([2, 0], iota=[[S * S], [ZERO]])
    summary = generated_subsheaf_summary(e)
    assert summary.rank("1") == 1
    assert summary.degree("1") == 2


def test_generated_subsheaf_zero_when_no_framing_image():
    e = adhm_bundle([1])
    summary = generated_subsheaf_summary(e)
    assert summary.rank("1") == 0
    assert summary.degree("1") == 0


def test_hn_filtration_examples():
    e = adhm_bundle([2, 0])
    strata = hn_filtration_split(e)
    assert [st.slope for st in strata] == [2, 0]
    assert strata[0].piece_at("1") == (0,)
    assert strata[1].piece_at("0") == (0,)

    e2 = adhm_bundle([1, 1, 1])
    assert len(hn_filtration_split(e2)) == 2  # degree 1 stratum + framing degree 0
    e3 = chain_bundle([1], [1, 1])
    strata3 = hn_filtration_split(e3)
    assert [st.slope for st in strata3] == [1, 0]

    e4 = adhm_bundle([3, -1])
    strata4 = hn_filtration_split(e4)
    assert [st.slope for st in strata4] == [3, 0, -1]
    assert strata4[1].piece_at("0") == (0,)  # framing sits in the slope-0 stratum


def test_hn_strata_concatenate_to_whole():
    e = adhm_bundle([3, 0, -1, 3])
    strata = hn_filtration_split(e)
    slopes = [st.slope for st in strata]
    assert slopes == sorted(slopes, reverse=True)
    step = hn_step_indices(strata, len(strata), e.double.vertices)
    for v in e.double.vertices:
        assert step[v] == tuple(range(e.bundles[v].rank))


def test_subbundle_invariance_check():
    e = adhm_bundle(
        [2, 0],
        b1=[[ZERO, T], [ZERO, ZERO]],
        iota=[[S * S], [ONE]],
    )
    strata = hn_filtration_split(e)
    top = hn_step_indices(strata, 1, e.double.vertices)
    assert subbundle_is_arrow_invariant(e, top)
    # selecting only the low summand is not invariant: b1 maps it upward
    low = {"0": (), "1": (1,)}
    assert not subbundle_is_arrow_invariant(e, low)
