"""Witness-sequence synthesis for compactly supported product measures.

The pipeline: shift every coordinate measure so its support sits in
[-radius, 0] with max exactly 0, pick a per-coordinate uniform smoothing
size larger than twice the radius (with a depth-independent positive lower
bound on the running product of (1 - radius/(size+1))), and read off the
witness entries size - radius.

`verify_restrict_normalize` checks, as exact rational identities at the
spec's depth, the facts that make the construction work: convolving the
shifted measure with the uniform product flattens it on the witness support
box, scaling by the partial density constant recovers the witness measure
there, the box mass under the plain uniform product is the reciprocal of
that constant, and the restrict-and-normalize quotient reproduces the
witness measure.  `is_witness_prefix` brute-forces the defining property of
a witness prefix over the exhaustive translation window.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .measures import (
    CylinderSet,
    PointMassTail,
    ProductMeasureSpec,
    UniformTail,
    UnsupportedDepthError,
    box_intersection_measure,
    box_measure,
    convolve,
    lattice_points,
    measure_of,
    translate_measure,
    translate_set,
    uniform,
    uniform_product_spec,
)
from .report import BUDGET_EXCEEDED, FAIL, PASS, VerificationReport

__all__ = [
    "DEFICIENCY_LOWER_BOUND",
    "DEFAULT_BUDGET",
    "SynthesisTrace",
    "shift_to_nonpositive",
    "choose_uniform_sizes",
    "synthesize_witness",
    "verify_restrict_normalize",
    "is_witness_prefix",
]

# Lower bound for the infinite product prod_{n>=0} (1 - 2^-(n+2)), whose
# partial products dominate every deficiency product the size rule can
# produce.  The product evaluates to 0.57757619017...; the exact
# partial-product-times-tail-bound certificate lives in the test suite.
DEFICIENCY_LOWER_BOUND = Fraction(57, 100)

# Default cap on brute-force translate evaluations.
DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class SynthesisTrace:
    """Per-coordinate record of one synthesis run at depth d.

    shifts[n]   translation applied to coordinate n to make its support end at 0
    radii[n]    support radius after shifting (support is [-radii[n], 0])
    sizes[n]    uniform smoothing size, always > 2 * radii[n]
    witness[n]  sizes[n] - radii[n], the synthesized witness entry
    scale_partial[k]       running product of (sizes[n]+1)/(witness[n]+1), n <= k
    deficiency_partial[k]  running product of (1 - radii[n]/(sizes[n]+1)), n <= k

    The deficiency partials are nonincreasing and stay above
    DEFICIENCY_LOWER_BOUND; construction re-derives both partial-product
    columns and rejects inconsistent data.
    """

    shifts: tuple[int, ...]
    radii: tuple[int, ...]
    sizes: tuple[int, ...]
    witness: tuple[int, ...]
    scale_partial: tuple[Fraction, ...]
    deficiency_partial: tuple[Fraction, ...]

    def __post_init__(self):
        shifts = tuple(int(v) for v in self.shifts)
        radii = tuple(int(v) for v in self.radii)
        sizes = tuple(int(v) for v in self.sizes)
        witness = tuple(int(v) for v in self.witness)
        scale = tuple(Fraction(v) for v in self.scale_partial)
        defic = tuple(Fraction(v) for v in self.deficiency_partial)
        d = len(shifts)
        if not (len(radii) == len(sizes) == len(witness) == d):
            raise ValueError("per-coordinate columns have unequal lengths")
        if not (len(scale) == len(defic) == d):
            raise ValueError("partial-product columns have unequal lengths")
        running_scale = Fraction(1)
        running_defic = Fraction(1)
        for n in range(d):
            if radii[n] < 0:
                raise ValueError(f"radius {radii[n]} at coordinate {n} is negative")
            if sizes[n] <= 2 * radii[n]:
                raise ValueError(
                    f"size {sizes[n]} at coordinate {n} is not > 2*{radii[n]}"
                )
            if witness[n] != sizes[n] - radii[n]:
                raise ValueError(
                    f"witness entry {witness[n]} at coordinate {n} "
                    f"is not size - radius = {sizes[n] - radii[n]}"
                )
            running_scale *= Fraction(sizes[n] + 1, witness[n] + 1)
            running_defic *= 1 - Fraction(radii[n], sizes[n] + 1)
            if scale[n] != running_scale:
                raise ValueError(f"scale partial at {n} is inconsistent")
            if defic[n] != running_defic:
                raise ValueError(f"deficiency partial at {n} is inconsistent")
            if defic[n] < DEFICIENCY_LOWER_BOUND:
                raise ValueError(
                    f"deficiency partial {defic[n]} at {n} dips below "
                    f"{DEFICIENCY_LOWER_BOUND}"
                )
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "sizes", sizes)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "scale_partial", scale)
        object.__setattr__(self, "deficiency_partial", defic)

    @property
    def depth(self) -> int:
        return len(self.shifts)

    def to_json_dict(self) -> dict:
        from .serialization import fraction_to_str

        return {
            "shifts": list(self.shifts),
            "radii": list(self.radii),
            "sizes": list(self.sizes),
            "witness": list(self.witness),
            "scale_partial": [fraction_to_str(q) for q in self.scale_partial],
            "deficiency_partial": [
                fraction_to_str(q) for q in self.deficiency_partial
            ],
        }


def shift_to_nonpositive(
    spec: ProductMeasureSpec,
) -> tuple[ProductMeasureSpec, tuple[int, ...]]:
    """Translate each prefix coordinate so its support max becomes 0.

    Returns the shifted spec and the per-coordinate shifts (each the old
    support maximum).  A point-mass tail shifts to the point mass at 0; a
    uniform tail of size 0 is the same thing.  A uniform tail of positive
    size has no nonpositive counterpart among the tail policies, so the
    returned spec drops it and stays exact only to its prefix depth.
    """
    shifted = []
    shifts = []
    for m in spec.prefix:
        ell = m.max_support
        shifted.append(translate_measure(m, ell) if ell != 0 else m)
        shifts.append(ell)
    if spec.tail is None:
        tail = None
    elif isinstance(spec.tail, PointMassTail):
        tail = PointMassTail(0)
    elif isinstance(spec.tail, UniformTail) and spec.tail.k == 0:
        tail = PointMassTail(0)
    else:
        tail = None
    return ProductMeasureSpec(tuple(shifted), tail), tuple(shifts)


def choose_uniform_sizes(radii: Sequence[int]) -> tuple[int, ...]:
    """Pick smoothing sizes: size(n) = max(2*radii[n] + 1, 2^(n+2) * radii[n]).

    This guarantees size(n) > 2*radii[n] and radii[n]/(size(n)+1) <= 2^-(n+2),
    so every partial product of (1 - radii[n]/(size(n)+1)) stays above the
    depth-independent constant DEFICIENCY_LOWER_BOUND.
    """
    sizes = []
    for n, m in enumerate(radii):
        m = int(m)
        if m < 0:
            raise ValueError(f"radius {m} at coordinate {n} is negative")
        sizes.append(max(2 * m + 1, (1 << (n + 2)) * m))
    return tuple(sizes)


def synthesize_witness(spec: ProductMeasureSpec) -> SynthesisTrace:
    """Run the full pipeline on a spec with finitely supported coordinates.

    Shifts the prefix coordinates nonpositive, reads off the support radii,
    applies the size rule, and fills in the witness entries and both
    partial-product columns.
    """
    shifted, shifts = shift_to_nonpositive(spec)
    radii = tuple(-m.min_support for m in shifted.prefix)
    sizes = choose_uniform_sizes(radii)
    witness = tuple(s - m for s, m in zip(sizes, radii))
    scale_partial = []
    deficiency_partial = []
    running_scale = Fraction(1)
    running_defic = Fraction(1)
    for n in range(len(radii)):
        running_scale *= Fraction(sizes[n] + 1, witness[n] + 1)
        running_defic *= 1 - Fraction(radii[n], sizes[n] + 1)
        scale_partial.append(running_scale)
        deficiency_partial.append(running_defic)
    return SynthesisTrace(
        shifts, radii, sizes, witness, tuple(scale_partial), tuple(deficiency_partial)
    )


def _check_shifted(mu: ProductMeasureSpec, trace: SynthesisTrace) -> None:
    if mu.depth != trace.depth:
        raise ValueError(
            f"spec depth {mu.depth} does not match trace depth {trace.depth}"
        )
    for n, m in enumerate(mu.prefix):
        if m.max_support != 0:
            raise ValueError(
                f"coordinate {n} has support max {m.max_support}; "
                "shift the spec nonpositive first"
            )
        if -m.min_support != trace.radii[n]:
            raise ValueError(
                f"coordinate {n} has radius {-m.min_support}, "
                f"trace says {trace.radii[n]}"
            )


def verify_restrict_normalize(
    mu: ProductMeasureSpec, trace: SynthesisTrace, X: CylinderSet
) -> VerificationReport:
    """Check the four flattening identities exactly at the trace's depth.

    With nu the coordinatewise convolution of mu with the uniform product of
    the trace's sizes, flat that uniform product itself, wit the uniform
    product of the witness entries, B the witness support box, and scale the
    depth-d density constant:

      smoothed_equals_flat_on_box   nu(X & B)  = flat(X & B)
      scaling_recovers_witness      wit(X & B) = scale * flat(X & B)
      flat_box_mass_reciprocal      flat(B)    = 1 / scale
      restrict_normalize_quotient   wit(X)     = nu(X & B) / nu(B)

    All four are exact rational equalities; the report carries both sides.
    """
    _check_shifted(mu, trace)
    d = mu.depth
    if X.depth > d:
        raise UnsupportedDepthError(
            f"cylinder depth {X.depth} exceeds the verification depth {d}"
        )
    flat = uniform_product_spec(trace.sizes)
    wit = uniform_product_spec(trace.witness)
    smooth = ProductMeasureSpec(
        tuple(convolve(m, uniform(k)) for m, k in zip(mu.prefix, trace.sizes))
    )
    box = tuple((0, w) for w in trace.witness)
    scale = trace.scale_partial[-1] if d else Fraction(1)

    nu_xb = box_intersection_measure(smooth, X, box)
    flat_xb = box_intersection_measure(flat, X, box)
    wit_xb = box_intersection_measure(wit, X, box)
    flat_b = box_measure(flat, box)
    nu_b = box_measure(smooth, box)
    wit_x = measure_of(wit, X)

    lhs = {
        "smoothed_equals_flat_on_box": nu_xb,
        "scaling_recovers_witness": wit_xb,
        "flat_box_mass_reciprocal": flat_b,
        "restrict_normalize_quotient": wit_x,
    }
    rhs = {
        "smoothed_equals_flat_on_box": flat_xb,
        "scaling_recovers_witness": scale * flat_xb,
        "flat_box_mass_reciprocal": 1 / scale,
        "restrict_normalize_quotient": nu_xb / nu_b,
    }
    failing = [name for name in lhs if lhs[name] != rhs[name]]
    return VerificationReport(
        claim="restrict-and-normalize",
        status=FAIL if failing else PASS,
        depth=d,
        lhs=lhs,
        rhs=rhs,
        counterexample={"identities": failing} if failing else None,
        parameters={
            "radii": trace.radii,
            "sizes": trace.sizes,
            "witness": trace.witness,
            "scale": scale,
            "cylinders": X.size,
        },
    )


def is_witness_prefix(
    witness: Sequence[int], cyl: CylinderSet, budget: int = DEFAULT_BUDGET
) -> VerificationReport:
    """Check that every translate of cyl is null for the witness's uniform product.

    Scans x over the exhaustive window (per coordinate n, x(n) in
    [-max_s s(n), witness[n] - min_s s(n)]; outside it the translate misses
    the support box entirely) and evaluates the translate's measure exactly.
    Any nonzero value is returned as a counterexample.  At finite depth any
    nonempty set admits one; the scan's value is in agreeing with the naive
    full-lattice oracle and in feeding the encoded-set checks.
    """
    wit = tuple(int(v) for v in witness)
    for n, w in enumerate(wit):
        if w < 1:
            raise ValueError(f"witness entry {w} at coordinate {n} is not >= 1")
    if cyl.depth != len(wit):
        raise ValueError(
            f"cylinder depth {cyl.depth} does not match witness length {len(wit)}"
        )
    d = len(wit)
    if cyl.is_empty:
        return VerificationReport(
            claim="witness-prefix",
            status=PASS,
            depth=d,
            parameters={"translates_checked": 0, "budget": budget},
        )
    windows = tuple(
        (
            -max(s[n] for s in cyl.prefixes),
            wit[n] - min(s[n] for s in cyl.prefixes),
        )
        for n in range(d)
    )
    total = 1
    for lo, hi in windows:
        total *= hi - lo + 1
    if total > budget:
        return VerificationReport(
            claim="witness-prefix",
            status=BUDGET_EXCEEDED,
            depth=d,
            parameters={
                "window": windows,
                "translates_required": total,
                "budget": budget,
            },
        )
    spec = uniform_product_spec(wit)
    for x in lattice_points(windows):
        value = measure_of(spec, translate_set(cyl, x))
        if value != 0:
            return VerificationReport(
                claim="witness-prefix",
                status=FAIL,
                depth=d,
                lhs=value,
                rhs=Fraction(0),
                counterexample={"x": x, "measure": value},
                parameters={"window": windows, "budget": budget},
            )
    return VerificationReport(
        claim="witness-prefix",
        status=PASS,
        depth=d,
        parameters={
            "window": windows,
            "translates_checked": total,
            "budget": budget,
        },
    )
