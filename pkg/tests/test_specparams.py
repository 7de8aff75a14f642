"""Parameter validation, classification, and the exact structural maps."""

import json
import math

import pytest

from nlfrac import (
    DerivativeSpec,
    InvalidSpecError,
    RegionLabel,
    classify,
    kernel_basis,
    laplace_form,
    reduce_spec,
    require_valid,
    surviving_directions,
    triangle_region,
    validate,
)

from conftest import CAPUTO_1, HILFER_1, HILFER_RED, RL_1, TRULY_2L


def test_partial_sums_and_exponents():
    spec = DerivativeSpec(3, 0.4, (0.5, 0.6, 0.7))
    assert spec.s == pytest.approx((0.5, 1.1, 1.8))
    assert spec.sigma == pytest.approx((-0.1, -0.5, -0.8))
    # trailing integral order completes the chain to n
    assert spec.trailing_order == pytest.approx(3 - 0.4 - 1.8)


def test_sigma_lies_in_unit_band_for_valid_specs():
    rep = validate(TRULY_2L)
    assert rep.valid
    for sg in rep.sigma:
        assert -1.0 < sg <= 0.0


@pytest.mark.parametrize("alpha", [0.0, -0.2, 1.5])
def test_alpha_out_of_range_is_invalid(alpha):
    rep = validate(DerivativeSpec(1, alpha, (0.2,)))
    assert not rep.valid
    assert rep.failures


def test_non_finite_entries_never_construct():
    with pytest.raises(InvalidSpecError):
        DerivativeSpec(1, float("nan"), (0.2,))
    with pytest.raises(InvalidSpecError):
        DerivativeSpec(1, 0.5, (float("inf"),))


def test_negative_gamma_is_invalid():
    assert not validate(DerivativeSpec(2, 0.5, (-0.1, 0.5))).valid


def test_partial_sum_cap_is_invalid():
    # the cap alpha + s_k <= k binds at every k separately
    assert validate(DerivativeSpec(2, 0.5, (0.5, 0.9))).valid
    assert not validate(DerivativeSpec(2, 0.9, (0.9, 1.0))).valid
    # first cap fine, second one broken
    rep = validate(DerivativeSpec(2, 0.5, (0.4, 1.6)))
    assert not rep.valid
    assert any("s_2" in msg for msg in rep.failures)
    assert not any("s_1" in msg for msg in rep.failures)


def test_gamma_length_must_match_level():
    with pytest.raises(InvalidSpecError):
        require_valid(DerivativeSpec(2, 0.5, (0.5,)))


def test_require_valid_returns_the_report():
    assert require_valid(TRULY_2L).valid


def test_truly_nth_level_flag():
    assert validate(TRULY_2L).truly_nth_level
    # gamma_2 = 1 merges two stages
    assert not validate(HILFER_RED).truly_nth_level
    # alpha + s_2 <= 1 drops the level
    assert not validate(DerivativeSpec(2, 0.6, (0.1, 0.2))).truly_nth_level


def test_cm_admissibility_flag():
    assert validate(DerivativeSpec(2, 0.5, (0.5, 0.6))).cm_admissible
    assert not validate(DerivativeSpec(2, 0.9, (0.05, 0.1))).cm_admissible
    assert validate(CAPUTO_1).cm_admissible


def test_reduce_spec_low_order_band():
    red = reduce_spec(DerivativeSpec(2, 0.6, (0.1, 0.2)))
    assert red.n == 1
    assert red.alpha == pytest.approx(0.6)
    assert red.gamma[0] == pytest.approx(0.1)


def test_reduce_spec_unit_gamma_merge():
    red = reduce_spec(HILFER_RED)
    assert red.n == 1
    assert red.gamma[0] == pytest.approx(0.1)


def test_reduce_spec_fixed_point_on_truly_nth():
    assert reduce_spec(TRULY_2L) == TRULY_2L


def test_surviving_directions():
    assert surviving_directions(TRULY_2L) == (1, 2)
    assert surviving_directions(HILFER_RED) == (2,)


def test_classify_labels():
    assert classify(RL_1).label == "RiemannLiouville"
    assert classify(CAPUTO_1).label == "Caputo"
    assert classify(HILFER_1).label == "Hilfer(0.2)"
    assert classify(TRULY_2L).label == "TrulyNthLevel(n=2)"


def test_classify_merge_note():
    cls = classify(HILFER_RED)
    assert cls.label.startswith("Hilfer(0.1")
    assert any("merged" in note for note in cls.notes)
    assert cls.equivalent.n == 1


def test_classify_hilfer_type_interpolates():
    assert classify(RL_1).hilfer_type == pytest.approx(0.0)
    assert classify(CAPUTO_1).hilfer_type == pytest.approx(0.4)


def test_triangle_region_vertices_and_edges():
    a = 0.6
    assert triangle_region(a, (0.0, 1.0)) is RegionLabel.RL_VERTEX
    assert triangle_region(a, (1 - a, 1.0)) is RegionLabel.CAPUTO_VERTEX
    assert triangle_region(a, (1 - a, a)) is RegionLabel.TRULY_2L_VERTEX
    assert triangle_region(a, (0.1, 1.0)) is RegionLabel.HILFER_EDGE
    assert triangle_region(a, (0.2, 0.9)) is RegionLabel.INTERIOR
    assert triangle_region(a, (0.3, 0.7)) is RegionLabel.HYPOTENUSE_EDGE
    assert triangle_region(a, (1 - a, 0.8)) is RegionLabel.GAMMA1_MAX_EDGE
    assert triangle_region(a, (0.2, 0.5)) is RegionLabel.OUTSIDE
    assert triangle_region(a, (2.0, 2.0)) is RegionLabel.OUTSIDE


def test_kernel_basis_matches_exponents():
    basis = kernel_basis(TRULY_2L)
    assert len(basis) == 2
    exps = sorted(t[1] for b in basis for t in b.terms)
    assert exps == pytest.approx(sorted(TRULY_2L.sigma))


def test_kernel_basis_drops_dead_directions():
    basis = kernel_basis(HILFER_RED)
    assert len(basis) == 1


def test_laplace_form_frozen_example():
    lf = laplace_form(TRULY_2L, (1.0, 2.0))
    assert lf.alpha == pytest.approx(0.6)
    got = sorted(lf.terms, key=lambda t: t[1])
    assert got[0][0] == pytest.approx(1.0)
    assert got[0][1] == pytest.approx(-0.4)
    assert got[1][0] == pytest.approx(2.0)
    assert got[1][1] == pytest.approx(0.0)


def test_laplace_form_rejects_wrong_arity():
    with pytest.raises(Exception):
        laplace_form(TRULY_2L, (1.0,))


def test_dict_json_roundtrip():
    d = TRULY_2L.to_dict()
    assert DerivativeSpec.from_dict(d) == TRULY_2L
    assert DerivativeSpec.from_dict(json.loads(json.dumps(d))) == TRULY_2L


def test_validation_report_to_dict_is_json_ready():
    rep = validate(DerivativeSpec(2, 0.9, (0.9, 1.0)))
    text = json.dumps(rep.to_dict())
    assert "valid" in text


def test_random_valid_specs_have_decreasing_sigma(rng):
    # truly nth-level means strictly interleaved kernel exponents
    for _ in range(200):
        n = int(rng.integers(1, 5))
        alpha = float(rng.uniform(0.05, 0.999))
        gamma = []
        s = 0.0
        ok = True
        for k in range(1, n + 1):
            lo = max(0.0, (k - 1) + 1e-3 - alpha - s)
            hi = min(1.0 - 1e-3, k - alpha - s)
            if hi <= lo:
                ok = False
                break
            g = float(rng.uniform(lo, hi))
            gamma.append(g)
            s += g
        if not ok:
            continue
        rep = validate(DerivativeSpec(n, alpha, tuple(gamma)))
        if not rep.truly_nth_level:
            continue
        sig = rep.sigma
        assert all(a > b for a, b in zip(sig, sig[1:]))
