"""Witness synthesis and verification tests."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from haarnull.measures import (
    CylinderSet,
    FiniteMeasureZ,
    PointMassTail,
    ProductMeasureSpec,
    UniformTail,
    UnsupportedDepthError,
    measure_of,
    uniform_product_spec,
)
from haarnull.report import BUDGET_EXCEEDED, FAIL, PASS
from haarnull.witness import (
    DEFICIENCY_LOWER_BOUND,
    SynthesisTrace,
    choose_uniform_sizes,
    is_witness_prefix,
    shift_to_nonpositive,
    synthesize_witness,
    verify_restrict_normalize,
)


@st.composite
def coordinate_measures(draw, max_radius=3, max_shift=3):
    radius = draw(st.integers(0, max_radius))
    shift = draw(st.integers(-max_shift, max_shift))
    points = {shift - radius, shift}
    for z in range(shift - radius + 1, shift):
        if draw(st.booleans()):
            points.add(z)
    weights = {z: draw(st.integers(1, 9)) for z in sorted(points)}
    total = sum(weights.values())
    return FiniteMeasureZ({z: Fraction(w, total) for z, w in weights.items()})


@st.composite
def specs(draw, max_depth=4):
    depth = draw(st.integers(1, max_depth))
    return ProductMeasureSpec(
        tuple(draw(coordinate_measures()) for _ in range(depth))
    )


def coin_at(offset):
    return FiniteMeasureZ(
        {offset: Fraction(1, 2), offset - 1: Fraction(1, 2)}
    )


class TestSizeRule:
    def test_pinned_sizes(self):
        assert choose_uniform_sizes((0,)) == (1,)
        assert choose_uniform_sizes((3,)) == (12,)
        assert choose_uniform_sizes((1, 1, 1, 1)) == (4, 8, 16, 32)
        assert choose_uniform_sizes((3, 0, 1)) == (12, 1, 16)

    def test_negative_radius_rejected(self):
        with pytest.raises(ValueError):
            choose_uniform_sizes((1, -1))

    @given(st.lists(st.integers(0, 6), min_size=1, max_size=8))
    def test_rule_dominates_radius(self, radii):
        sizes = choose_uniform_sizes(radii)
        for n, (m, N) in enumerate(zip(radii, sizes)):
            assert N > 2 * m
            assert Fraction(m, N + 1) <= Fraction(1, 1 << (n + 2))


class TestShift:
    def test_prefix_shifted_to_zero_max(self):
        spec = ProductMeasureSpec((coin_at(5), coin_at(-2)))
        shifted, shifts = shift_to_nonpositive(spec)
        assert shifts == (5, -2)
        for m in shifted.prefix:
            assert m.max_support == 0
            assert m.min_support == -1

    def test_tail_handling(self):
        prefix = (coin_at(0),)
        assert shift_to_nonpositive(ProductMeasureSpec(prefix))[0].tail is None
        assert shift_to_nonpositive(
            ProductMeasureSpec(prefix, PointMassTail(7))
        )[0].tail == PointMassTail(0)
        assert shift_to_nonpositive(
            ProductMeasureSpec(prefix, UniformTail(0))
        )[0].tail == PointMassTail(0)
        assert (
            shift_to_nonpositive(ProductMeasureSpec(prefix, UniformTail(2)))[
                0
            ].tail
            is None
        )

    @given(specs())
    def test_shift_is_idempotent(self, spec):
        shifted, _ = shift_to_nonpositive(spec)
        again, shifts = shift_to_nonpositive(shifted)
        assert again.prefix == shifted.prefix
        assert shifts == tuple(0 for _ in spec.prefix)


class TestSynthesize:
    def test_pinned_depth_one(self):
        spec = ProductMeasureSpec((coin_at(0),))
        trace = synthesize_witness(spec)
        assert trace.shifts == (0,)
        assert trace.radii == (1,)
        assert trace.sizes == (4,)
        assert trace.witness == (3,)
        assert trace.scale_partial == (Fraction(5, 4),)
        assert trace.deficiency_partial == (Fraction(4, 5),)

    def test_pinned_depth_four(self):
        spec = ProductMeasureSpec(tuple(coin_at(0) for _ in range(4)))
        trace = synthesize_witness(spec)
        assert trace.sizes == (4, 8, 16, 32)
        assert trace.deficiency_partial[-1] == Fraction(16384, 25245)

    @given(specs())
    def test_invariants(self, spec):
        trace = synthesize_witness(spec)
        d = trace.depth
        assert d == spec.depth
        scale = Fraction(1)
        for n in range(d):
            assert trace.sizes[n] > 2 * trace.radii[n]
            assert trace.witness[n] == trace.sizes[n] - trace.radii[n]
            assert trace.witness[n] >= 1
            scale *= Fraction(trace.sizes[n] + 1, trace.witness[n] + 1)
            assert trace.scale_partial[n] == scale
        for n in range(1, d):
            assert trace.deficiency_partial[n] <= trace.deficiency_partial[n - 1]
        assert trace.deficiency_partial[-1] >= DEFICIENCY_LOWER_BOUND

    def test_constructor_rejects_inconsistent_columns(self):
        good = synthesize_witness(ProductMeasureSpec((coin_at(0),)))
        with pytest.raises(ValueError):
            SynthesisTrace(
                good.shifts,
                good.radii,
                good.sizes,
                (good.witness[0] + 1,),
                good.scale_partial,
                good.deficiency_partial,
            )
        with pytest.raises(ValueError):
            SynthesisTrace(
                good.shifts,
                good.radii,
                good.sizes,
                good.witness,
                (Fraction(1),),
                good.deficiency_partial,
            )
        with pytest.raises(ValueError):
            SynthesisTrace(
                good.shifts + (0,),
                good.radii,
                good.sizes,
                good.witness,
                good.scale_partial,
                good.deficiency_partial,
            )

    def test_constructor_rejects_small_sizes(self):
        with pytest.raises(ValueError):
            SynthesisTrace(
                (0,), (2,), (4,), (2,), (Fraction(5, 3),), (Fraction(3, 5),)
            )

    def test_deficiency_certificate(self):
        partial = Fraction(1)
        for n in range(41):
            partial *= 1 - Fraction(1, 1 << (n + 2))
        assert partial * (1 - Fraction(1, 1 << 41)) > DEFICIENCY_LOWER_BOUND
        assert DEFICIENCY_LOWER_BOUND == Fraction(57, 100)


class TestVerifyRestrictNormalize:
    def test_pinned_depth_one_instance(self):
        mu = ProductMeasureSpec((coin_at(0),))
        trace = synthesize_witness(mu)
        report = verify_restrict_normalize(mu, trace, CylinderSet(1, ((2,),)))
        assert report.status == PASS
        assert report.lhs == {
            "smoothed_equals_flat_on_box": Fraction(1, 5),
            "scaling_recovers_witness": Fraction(1, 4),
            "flat_box_mass_reciprocal": Fraction(4, 5),
            "restrict_normalize_quotient": Fraction(1, 4),
        }
        assert report.lhs == report.rhs

    @settings(deadline=None, max_examples=60)
    @given(st.data())
    def test_random_instances_pass(self, data):
        spec = data.draw(specs())
        trace = synthesize_witness(spec)
        shifted, _ = shift_to_nonpositive(spec)
        d = data.draw(st.integers(0, trace.depth))
        prefixes = data.draw(
            st.lists(
                st.tuples(
                    *[st.integers(-2, trace.witness[n] + 2) for n in range(d)]
                ),
                min_size=0,
                max_size=6,
            )
        )
        report = verify_restrict_normalize(
            shifted, trace, CylinderSet(d, tuple(prefixes))
        )
        assert report.status == PASS
        assert report.lhs == report.rhs

    def test_unshifted_spec_rejected(self):
        spec = ProductMeasureSpec((coin_at(2),))
        trace = synthesize_witness(spec)
        with pytest.raises(ValueError):
            verify_restrict_normalize(spec, trace, CylinderSet(1, ((0,),)))

    def test_radius_mismatch_rejected(self):
        mu = ProductMeasureSpec((coin_at(0),))
        other = synthesize_witness(
            ProductMeasureSpec(
                (FiniteMeasureZ({-2: Fraction(1, 2), 0: Fraction(1, 2)}),)
            )
        )
        with pytest.raises(ValueError):
            verify_restrict_normalize(mu, other, CylinderSet(1, ((0,),)))

    def test_depth_guard(self):
        mu = ProductMeasureSpec((coin_at(0),))
        trace = synthesize_witness(mu)
        with pytest.raises(UnsupportedDepthError):
            verify_restrict_normalize(mu, trace, CylinderSet(2, ((0, 0),)))


class TestIsWitnessPrefix:
    def test_two_prefix_example(self):
        cyl = CylinderSet(2, ((0, 0), (1, 2)))
        report = is_witness_prefix((1, 1), cyl)
        assert report.status == FAIL
        assert report.counterexample == {"x": (-1, -2), "measure": Fraction(1, 4)}
        assert report.parameters["window"] == ((-1, 1), (-2, 1))
        untranslated = measure_of(uniform_product_spec((1, 1)), cyl)
        assert untranslated == Fraction(1, 4)

    def test_counterexample_is_lex_least(self):
        cyl = CylinderSet(1, ((4,),))
        report = is_witness_prefix((2,), cyl)
        assert report.status == FAIL
        assert report.counterexample["x"] == (-4,)

    def test_empty_set_passes(self):
        report = is_witness_prefix((2, 2), CylinderSet.empty(2))
        assert report.status == PASS
        assert report.parameters["translates_checked"] == 0

    def test_budget_exceeded(self):
        # window [-3, 3]: seven translates, over a budget of two
        report = is_witness_prefix((3,), CylinderSet(1, ((0,), (3,))), budget=2)
        assert report.status == BUDGET_EXCEEDED
        assert report.parameters["translates_required"] == 7
        assert report.parameters["budget"] == 2

    def test_validation(self):
        with pytest.raises(ValueError):
            is_witness_prefix((0,), CylinderSet(1, ((0,),)))
        with pytest.raises(ValueError):
            is_witness_prefix((1, 1), CylinderSet(1, ((0,),)))

    @given(st.data())
    def test_counterexample_measure_is_positive_and_exact(self, data):
        d = data.draw(st.integers(1, 3))
        wit = tuple(data.draw(st.integers(1, 3)) for _ in range(d))
        prefixes = data.draw(
            st.lists(
                st.tuples(*[st.integers(-2, 4) for _ in range(d)]),
                min_size=1,
                max_size=4,
            )
        )
        cyl = CylinderSet(d, tuple(prefixes))
        report = is_witness_prefix(wit, cyl)
        assert report.status == FAIL
        x = report.counterexample["x"]
        spec = uniform_product_spec(wit)
        assert report.counterexample["measure"] == measure_of(
            spec, cyl.translate(x)
        )
        assert report.counterexample["measure"] > 0
