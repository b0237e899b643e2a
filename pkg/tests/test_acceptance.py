"""Acceptance gate: the nine release criteria, one test each.

Each test prints its criterion's one-line verdict (run pytest with -s or -v
plus -rA to see them) and fails with the recorded detail if the criterion
does not pass.  Seeds follow the same derivation as `run_all(seed=42)`.
"""

from haarnull.acceptance import (
    criterion_codec_roundtrip,
    criterion_coding_recurrences,
    criterion_convolution_oracle,
    criterion_deficiency_bound,
    criterion_encoded_set_checks,
    criterion_order_isomorphism,
    criterion_restrict_normalize,
    criterion_separation_gap,
    criterion_witness_prefix_oracle,
)

SEED = 42


def sub_seed(index: int) -> int:
    return SEED * 1_000_003 + index


def check(result):
    print(result.line())
    assert result.passed, result.detail


def test_01_codec_roundtrip_under_five_seconds():
    check(criterion_codec_roundtrip(limit=10**6, time_limit=5.0))


def test_02_order_isomorphism():
    check(criterion_order_isomorphism(limit=10**6))


def test_03_coding_recurrences():
    check(criterion_coding_recurrences(max_size=10**4))


def test_04_separation_gap_with_tightness():
    check(criterion_separation_gap(max_size=20))


def test_05_restrict_normalize_suite_under_sixty_seconds():
    check(criterion_restrict_normalize(sub_seed(5), instances=100, time_limit=60.0))


def test_06_convolution_oracle():
    check(criterion_convolution_oracle(sub_seed(6), pairs=1000))


def test_07_deficiency_bound():
    check(criterion_deficiency_bound(sub_seed(7), sequences=100))


def test_08_encoded_set_checks_with_negative_control():
    check(criterion_encoded_set_checks(sub_seed(8), datasets=100, budget=10**7))


def test_09_witness_prefix_oracle():
    check(criterion_witness_prefix_oracle(sub_seed(9), instances=50, budget=10**7))
