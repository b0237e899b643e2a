"""Exact-arithmetic tests for measures, product specs, and cylinder sets."""

from fractions import Fraction
from itertools import product as iter_product

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
    box_intersection_measure,
    box_measure,
    convolve,
    dirac,
    lattice_points,
    materialize,
    measure_of,
    support_box,
    translate_measure,
    translate_set,
    uniform,
    uniform_product_spec,
)


@st.composite
def finite_measures(draw, lo=-6, hi=6, max_points=5):
    support = draw(
        st.lists(st.integers(lo, hi), min_size=1, max_size=max_points, unique=True)
    )
    weights = [draw(st.integers(1, 9)) for _ in support]
    total = sum(weights)
    return FiniteMeasureZ(
        {z: Fraction(w, total) for z, w in zip(support, weights)}
    )


@st.composite
def small_specs(draw, max_depth=3):
    depth = draw(st.integers(1, max_depth))
    return ProductMeasureSpec(
        tuple(draw(finite_measures(lo=-3, hi=3, max_points=3)) for _ in range(depth))
    )


def cylinders_in(spec, draw_entries):
    """Strategy for cylinder sets over the support region of a spec."""
    box = support_box(spec)
    entry = [st.integers(lo - 1, hi + 1) for lo, hi in box]
    prefix = st.tuples(*entry)
    return st.lists(prefix, min_size=0, max_size=draw_entries).map(
        lambda ps: CylinderSet(spec.depth, tuple(ps))
    )


def enumeration_measure(spec, cyl):
    """Oracle: enumerate the whole support lattice and sum matching masses."""
    supports = [spec.coordinate(n).support for n in range(cyl.depth)]
    members = set(cyl.prefixes)
    total = Fraction(0)
    for point in iter_product(*supports):
        if point in members:
            mass = Fraction(1)
            for n, v in enumerate(point):
                mass *= spec.coordinate(n).mass(v)
            total += mass
    return total


class TestFiniteMeasure:
    def test_uniform_weights(self):
        m = uniform(2)
        assert m.weights == {0: Fraction(1, 3), 1: Fraction(1, 3), 2: Fraction(1, 3)}
        assert m.support == (0, 1, 2)

    def test_uniform_rejects_negative_size(self):
        with pytest.raises(ValueError):
            uniform(-1)

    def test_dirac(self):
        assert dirac(-4).weights == {-4: Fraction(1)}

    def test_total_mass_must_be_one(self):
        with pytest.raises(ValueError):
            FiniteMeasureZ({0: Fraction(1, 2)})

    def test_empty_support_rejected(self):
        with pytest.raises(ValueError):
            FiniteMeasureZ({})

    def test_negative_mass_rejected(self):
        with pytest.raises(ValueError):
            FiniteMeasureZ({0: Fraction(3, 2), 1: Fraction(-1, 2)})

    def test_noninteger_point_rejected(self):
        with pytest.raises(ValueError):
            FiniteMeasureZ({0.5: Fraction(1)})

    def test_zero_mass_points_dropped(self):
        m = FiniteMeasureZ({0: Fraction(1), 7: Fraction(0)})
        assert m.support == (0,)

    def test_interval_mass(self):
        m = uniform(3)
        assert m.interval_mass(1, 2) == Fraction(1, 2)
        assert m.interval_mass(4, 9) == 0
        assert m.interval_mass(-5, 5) == 1

    @given(finite_measures())
    def test_hashable_and_equal_by_weights(self, m):
        clone = FiniteMeasureZ(dict(m.weights))
        assert clone == m
        assert hash(clone) == hash(m)


class TestConvolve:
    def test_two_fair_coins(self):
        got = convolve(uniform(1), uniform(1))
        assert got.weights == {
            0: Fraction(1, 4),
            1: Fraction(1, 2),
            2: Fraction(1, 4),
        }

    @given(finite_measures(), finite_measures())
    def test_mass_and_support_extremes(self, p, q):
        r = convolve(p, q)
        assert sum(r.weights.values()) == 1
        assert r.min_support == p.min_support + q.min_support
        assert r.max_support == p.max_support + q.max_support

    @given(finite_measures(), finite_measures())
    def test_commutative(self, p, q):
        assert convolve(p, q) == convolve(q, p)

    @settings(max_examples=25)
    @given(
        finite_measures(max_points=3),
        finite_measures(max_points=3),
        finite_measures(max_points=3),
    )
    def test_associative(self, p, q, r):
        assert convolve(convolve(p, q), r) == convolve(p, convolve(q, r))

    @given(finite_measures())
    def test_point_mass_at_zero_is_identity(self, p):
        assert convolve(p, dirac(0)) == p

    @given(finite_measures(), st.integers(-5, 5))
    def test_point_mass_convolution_translates(self, p, k):
        assert convolve(p, dirac(k)) == translate_measure(p, -k)


class TestTranslateMeasure:
    @given(finite_measures(), st.integers(-5, 5))
    def test_roundtrip(self, p, s):
        assert translate_measure(translate_measure(p, s), -s) == p

    @given(finite_measures(), st.integers(-5, 5))
    def test_support_moves_opposite_to_shift(self, p, s):
        assert translate_measure(p, s).max_support == p.max_support - s

    def test_pointwise_semantics(self):
        p = FiniteMeasureZ({2: Fraction(1, 3), 5: Fraction(2, 3)})
        q = translate_measure(p, 2)
        assert q.mass(0) == Fraction(1, 3)
        assert q.mass(3) == Fraction(2, 3)


class TestProductSpec:
    def test_coordinate_resolution(self):
        spec = ProductMeasureSpec((uniform(1),), UniformTail(2))
        assert spec.coordinate(0) == uniform(1)
        assert spec.coordinate(5) == uniform(2)

    def test_point_mass_tail(self):
        spec = ProductMeasureSpec((), PointMassTail(-1))
        assert spec.coordinate(9) == dirac(-1)

    def test_no_tail_raises_beyond_prefix(self):
        spec = ProductMeasureSpec((uniform(1),))
        with pytest.raises(UnsupportedDepthError):
            spec.coordinate(1)

    def test_resolvable_to(self):
        spec = ProductMeasureSpec((uniform(1),))
        assert spec.resolvable_to(1)
        assert not spec.resolvable_to(2)
        assert ProductMeasureSpec((), UniformTail(0)).resolvable_to(10)

    def test_materialize_extends_prefix(self):
        spec = ProductMeasureSpec((uniform(1),), UniformTail(3))
        deep = materialize(spec, 3)
        assert deep.depth == 3
        assert deep.prefix[2] == uniform(3)
        assert deep.tail == UniformTail(3)

    def test_materialize_without_tail_raises(self):
        with pytest.raises(UnsupportedDepthError):
            materialize(ProductMeasureSpec((uniform(1),)), 2)

    def test_uniform_product_spec(self):
        spec = uniform_product_spec((1, 2))
        assert spec.prefix == (uniform(1), uniform(2))

    def test_prefix_entries_validated(self):
        with pytest.raises(ValueError):
            ProductMeasureSpec(({0: 1},))


class TestCylinderSet:
    def test_canonical_sorted_dedup(self):
        c = CylinderSet(2, ((1, 0), (0, 0), (1, 0)))
        assert c.prefixes == ((0, 0), (1, 0))
        assert c.size == 2

    def test_depth_checked(self):
        with pytest.raises(ValueError):
            CylinderSet(2, ((1,),))
        with pytest.raises(ValueError):
            CylinderSet(-1, ())

    def test_empty_and_whole_space(self):
        assert CylinderSet.empty(3).is_empty
        whole = CylinderSet.whole_space()
        assert whole.depth == 0 and whole.prefixes == ((),)

    def test_union_intersect(self):
        a = CylinderSet(1, ((0,), (1,)))
        b = CylinderSet(1, ((1,), (2,)))
        assert a.union(b).prefixes == ((0,), (1,), (2,))
        assert a.intersect(b).prefixes == ((1,),)

    def test_depth_mismatch_raises(self):
        with pytest.raises(ValueError):
            CylinderSet(1, ((0,),)).union(CylinderSet(2, ()))

    def test_translate_roundtrip(self):
        c = CylinderSet(2, ((0, 3), (1, -1)))
        moved = translate_set(c, (2, -2))
        assert moved.prefixes == ((2, 1), (3, -3))
        assert translate_set(moved, (-2, 2)) == c

    def test_translate_length_checked(self):
        with pytest.raises(ValueError):
            translate_set(CylinderSet(2, ((0, 0),)), (1,))

    def test_expand(self):
        c = CylinderSet(1, ((5,),))
        grown = c.expand(((0, 1),))
        assert grown.depth == 2
        assert grown.prefixes == ((5, 0), (5, 1))


class TestMeasureOf:
    @given(small_specs())
    def test_whole_space_has_mass_one(self, spec):
        whole = CylinderSet.whole_space().expand(support_box(spec))
        assert measure_of(spec, whole) == 1

    @given(small_specs())
    def test_empty_has_mass_zero(self, spec):
        assert measure_of(spec, CylinderSet.empty(spec.depth)) == 0

    def test_depth_guard(self):
        spec = ProductMeasureSpec((uniform(1),))
        with pytest.raises(UnsupportedDepthError):
            measure_of(spec, CylinderSet(2, ((0, 0),)))

    @settings(deadline=None)
    @given(st.data())
    def test_against_enumeration_oracle(self, data):
        spec = data.draw(small_specs())
        cyl = data.draw(cylinders_in(spec, 6))
        assert measure_of(spec, cyl) == enumeration_measure(spec, cyl)

    @settings(deadline=None)
    @given(st.data())
    def test_additivity(self, data):
        spec = data.draw(small_specs())
        a = data.draw(cylinders_in(spec, 4))
        b = data.draw(cylinders_in(spec, 4))
        lhs = measure_of(spec, a.union(b)) + measure_of(spec, a.intersect(b))
        assert lhs == measure_of(spec, a) + measure_of(spec, b)

    @settings(deadline=None)
    @given(st.data())
    def test_monotone_under_union(self, data):
        spec = data.draw(small_specs())
        a = data.draw(cylinders_in(spec, 4))
        b = data.draw(cylinders_in(spec, 4))
        assert measure_of(spec, a.union(b)) >= measure_of(spec, a)

    @given(small_specs(), st.data())
    def test_translation_moves_mass(self, spec, data):
        cyl = data.draw(cylinders_in(spec, 4))
        shift = tuple(
            data.draw(st.integers(-2, 2)) for _ in range(spec.depth)
        )
        shifted_spec = ProductMeasureSpec(
            tuple(
                translate_measure(m, -s) for m, s in zip(spec.prefix, shift)
            ),
            spec.tail,
        )
        assert measure_of(spec, cyl) == measure_of(
            shifted_spec, translate_set(cyl, shift)
        )


class TestBoxes:
    def test_support_box(self):
        spec = ProductMeasureSpec(
            (FiniteMeasureZ({-2: Fraction(1, 2), 1: Fraction(1, 2)}), uniform(3))
        )
        assert support_box(spec) == ((-2, 1), (0, 3))

    @given(small_specs())
    def test_box_measure_matches_expansion(self, spec):
        box = support_box(spec)
        whole = CylinderSet.whole_space().expand(box)
        assert box_measure(spec, box) == measure_of(spec, whole) == 1

    def test_box_measure_clips(self):
        spec = uniform_product_spec((3,))
        assert box_measure(spec, ((1, 2),)) == Fraction(1, 2)
        assert box_measure(spec, ((4, 9),)) == 0

    def test_box_measure_depth_guard(self):
        with pytest.raises(UnsupportedDepthError):
            box_measure(uniform_product_spec((1,)), ((0, 1), (0, 1)))

    @settings(deadline=None)
    @given(st.data())
    def test_box_intersection_matches_materialized(self, data):
        spec = data.draw(small_specs())
        d = spec.depth
        box = tuple(
            (m.min_support, m.max_support) for m in spec.prefix
        )
        shallow = data.draw(st.integers(0, d))
        cyl = data.draw(
            st.lists(
                st.tuples(
                    *[st.integers(lo - 1, hi + 1) for lo, hi in box[:shallow]]
                ),
                min_size=0,
                max_size=4,
            ).map(lambda ps: CylinderSet(shallow, tuple(ps)))
        )
        inside = CylinderSet(
            shallow,
            tuple(
                s
                for s in cyl.prefixes
                if all(lo <= v <= hi for v, (lo, hi) in zip(s, box))
            ),
        )
        materialized = inside.expand(box[shallow:])
        assert box_intersection_measure(spec, cyl, box) == measure_of(
            spec, materialized
        )

    def test_box_intersection_depth_guards(self):
        spec = uniform_product_spec((1, 1))
        with pytest.raises(ValueError):
            box_intersection_measure(
                spec, CylinderSet(2, ((0, 0),)), ((0, 1),)
            )
        with pytest.raises(UnsupportedDepthError):
            box_intersection_measure(
                spec, CylinderSet(1, ((0,),)), ((0, 1), (0, 1), (0, 1))
            )

    def test_lattice_points_lex_order(self):
        box = ((0, 1), (-1, 0))
        assert list(lattice_points(box)) == [
            (0, -1),
            (0, 0),
            (1, -1),
            (1, 0),
        ]
