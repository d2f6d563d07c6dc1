import json

import pytest

from formalitykit.configurations import ConfigGraph
from formalitykit.errors import InputValidationError
from formalitykit.formality import (
    CERTIFIED,
    INAPPLICABLE,
    INCONCLUSIVE,
    FormalityCertificate,
    certify_config_pn,
    certify_config_spherical,
    certify_single,
    cy_normalize,
    mirrored_degree_inequality,
    verify_certificate,
)
from formalitykit.graded import build_configuration_algebra, truncated_poly
from formalitykit.hochschild import kadeishvili_scan


# -- single object family -------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 4, 6])
@pytest.mark.parametrize("k", [1, 2, 3, 6])
def test_single_always_certifies(n, k):
    cert = certify_single(n, k)
    assert cert.verdict == CERTIFIED
    assert verify_certificate(cert).ok


def test_single_instantiated_values():
    cert = certify_single(2, 2)
    even = next(e for e in cert.evidence if e["covers"]["parity"] == "even")
    # hom target degree 2 - q + i(n+1)k at q = 4 (i = 2) evaluates to 10 > 4
    assert even["value_at_base"] == 10
    assert even["band_max"] == 4
    odd = next(e for e in cert.evidence if e["covers"]["parity"] == "odd")
    assert odd["covers"]["i_min"] == 1
    assert odd["value_at_base"] == 2 * 2 + 2 * 2 - 1  # nk + 2k - 1


def test_single_rejects_bad_input():
    with pytest.raises(InputValidationError):
        certify_single(0, 2)


def test_single_certificate_matches_direct_scan():
    for (n, k) in [(1, 2), (2, 2), (1, 4)]:
        assert certify_single(n, k).verdict == CERTIFIED
        assert all(v == 0 for v in kadeishvili_scan(truncated_poly(n, k), 5).values())


# -- pn configuration family ------------------------------------------------------


def test_pn_222_certifies_with_chain_values():
    cert = certify_config_pn(2, 2, 2)
    assert cert.verdict == CERTIFIED
    even = next(
        e for e in cert.evidence if e["method"] == "DegreeBound" and e["covers"]["parity"] == "even"
    )
    odd = next(
        e for e in cert.evidence if e["method"] == "DegreeBound" and e["covers"]["parity"] == "odd"
    )
    assert even["chain"]["values"] == [6, 6, 8, 8]
    assert odd["chain"]["values"] == [7, 7, 8, 10]
    assert even["lhs_at_base"] < even["rhs_at_base"]
    assert odd["lhs_at_base"] < odd["rhs_at_base"]
    gcd_item = next(e for e in cert.evidence if e["method"] == "GcdDivisibility")
    assert gcd_item["gcd"] == 2 and gcd_item["holds"]
    assert verify_certificate(cert).ok


def test_pn_gcd_hypothesis_failure():
    cert = certify_config_pn(3, 2, 3)
    assert cert.verdict == INAPPLICABLE
    assert cert.failed_hypotheses() == ["gcd(k, h) > 1"]
    assert verify_certificate(cert).ok


def test_pn_window_hypothesis_failure():
    cert = certify_config_pn(2, 2, 5)  # h > nk
    assert cert.verdict == INAPPLICABLE
    assert "h <= nk" in cert.failed_hypotheses()


def test_pn_certificate_implies_scan_vanishes():
    # soundness spot check against the direct computation, both presets
    g = ConfigGraph.make([1, 2], [(1, 2)])
    assert certify_config_pn(2, 2, 2).verdict == CERTIFIED
    for preset in ("orthogonal", "zigzag"):
        A = build_configuration_algebra(g, 2, 2, 2, preset)
        assert all(v == 0 for v in kadeishvili_scan(A, 5).values()), preset


def test_certificates_sound_on_larger_graphs():
    # certified families scan to zero on a path and on an even cycle
    path3 = ConfigGraph.make([1, 2, 3], [(1, 2), (2, 3)])
    cycle4 = ConfigGraph.make([1, 2, 3, 4], [(1, 2), (2, 3), (3, 4), (4, 1)])
    assert certify_config_pn(2, 2, 2).verdict == CERTIFIED
    for g in (path3, cycle4):
        A = build_configuration_algebra(g, 2, 2, 2, "orthogonal")
        assert all(v == 0 for v in kadeishvili_scan(A, 5).values())
    assert certify_config_spherical(4, 2, 4).verdict == CERTIFIED
    B = build_configuration_algebra(path3, 1, 4, 2, "orthogonal")
    assert all(v == 0 for v in kadeishvili_scan(B, 5).values())


def test_pn_single_vertex_consistency():
    # whenever the configuration family certifies, the single object
    # certificate must certify the same (n, k)
    for n in range(2, 5):
        for k in range(2, 5):
            for h in range(1, 2 * n * k):
                cert = certify_config_pn(n, k, h)
                if cert.verdict == CERTIFIED:
                    assert certify_single(n, k).verdict == CERTIFIED


# -- spherelike configuration family ------------------------------------------------


@pytest.mark.parametrize("k", [4, 6, 7, 8, 9])
def test_spherical_certifies_from_four_up_except_boundary(k):
    cert = certify_config_spherical(k, k // 2, k)
    assert cert.verdict == CERTIFIED
    assert verify_certificate(cert).ok


def test_spherical_small_k_inapplicable_with_remark():
    cert = certify_config_spherical(3, 1, 3)
    assert cert.verdict == INAPPLICABLE
    assert cert.failed_hypotheses() == ["k >= 4"]
    assert any("k in {2, 3}" in note for note in cert.notes)
    assert verify_certificate(cert).ok


def test_spherical_k5_boundary_is_inconclusive_with_recorded_failure():
    """k = 5 with h_min = 2: the q = 3 comparison evaluates 6 < 6 and the
    obstruction is real (see the triangle computation in the Hochschild
    tests), so the honest verdict is Inconclusive, never CertifiedFormal."""
    cert = certify_config_spherical(5, 2, 5)
    assert cert.verdict == INCONCLUSIVE
    failing = [e for e in cert.evidence if not e["holds"]]
    assert len(failing) == 1
    assert failing[0]["covers"] == {"parity": "odd", "p_min": 1}
    assert failing[0]["lhs_at_base"] == 6 and failing[0]["rhs_at_base"] == 6
    # the tail beyond q = 3 is still certified
    tails = [e for e in cert.evidence if e["holds"] and e["covers"].get("parity") == "odd"]
    assert tails and tails[0]["covers"]["p_min"] == 2
    assert verify_certificate(cert).ok


def test_spherical_k5_with_larger_arrows_certifies():
    cert = certify_config_spherical(5, 3, 5)
    assert cert.verdict == CERTIFIED
    assert verify_certificate(cert).ok


def test_spherical_instantiation_k6():
    cert = certify_config_spherical(6, 3, 6)
    odd = next(e for e in cert.evidence if e["covers"].get("parity") == "odd")
    # q = 3 at p = 1 with h = 3: maxdeg(A)+1 = 7 <= 2h+2 = 8 < 2h+h = 9
    assert odd["chain"]["values"] == [7, 8, 9]
    assert odd["lhs_at_base"] == 7 and odd["rhs_at_base"] == 9


def test_spherical_verdict_monotone_under_window_enlargement():
    # growing [h_min, h_max] inside the allowed window never flips a
    # certified verdict to inapplicable
    for k in (4, 5, 6, 7):
        floor_half = k // 2
        verdicts = {}
        for h_min in range(floor_half, k + 1):
            for h_max in range(h_min, k + 1):
                verdicts[(h_min, h_max)] = certify_config_spherical(k, h_min, h_max).verdict
        for (a, b), v in verdicts.items():
            for (a2, b2), v2 in verdicts.items():
                if a2 <= a and b <= b2 and v == CERTIFIED:
                    assert v2 != INAPPLICABLE


# -- normalization helper --------------------------------------------------------


def test_cy_normalize_values():
    assert cy_normalize(2, 2) == {"h": 2, "gcd_ok": True}
    assert cy_normalize(3, 4) == {"h": 6, "gcd_ok": True}
    assert cy_normalize(3, 2) == {"h": 3, "gcd_ok": False}


def test_cy_normalize_sufficiency_pattern():
    # "n even or k divisible by 4" forces the flag for k >= 2
    for n in range(1, 7):
        for k in range(2, 9):
            if (n * k) % 2 != 0:
                continue
            out = cy_normalize(n, k)
            if n % 2 == 0 or k % 4 == 0:
                assert out["gcd_ok"], (n, k)


def test_cy_normalize_odd_total_degree_errors():
    with pytest.raises(InputValidationError):
        cy_normalize(3, 3)


def test_mirrored_mode_smoke():
    # experimental mirrored comparison for non-positively graded data
    assert mirrored_degree_inequality(-4, 3, -6)
    assert not mirrored_degree_inequality(-4, 3, -3)


# -- re-checker hardening ----------------------------------------------------------


def test_recheck_detects_tampered_value():
    cert = certify_config_pn(2, 2, 2).to_json_dict()
    cert["evidence"][0]["rhs_at_base"] += 1
    assert not verify_certificate(FormalityCertificate.from_json_dict(cert)).ok


def test_recheck_detects_tampered_verdict():
    cert = certify_config_spherical(5, 2, 5).to_json_dict()
    cert["verdict"] = CERTIFIED
    assert not verify_certificate(FormalityCertificate.from_json_dict(cert)).ok


def test_recheck_detects_tampered_hypothesis():
    cert = certify_config_pn(3, 2, 3).to_json_dict()
    cert["hypotheses"][-1]["ok"] = True
    report = verify_certificate(FormalityCertificate.from_json_dict(cert))
    assert not report.ok


def test_recheck_detects_dropped_coverage():
    cert = certify_config_pn(2, 2, 2).to_json_dict()
    cert["evidence"] = [e for e in cert["evidence"] if e["method"] != "GcdDivisibility"]
    assert not verify_certificate(FormalityCertificate.from_json_dict(cert)).ok


def test_certificate_json_round_trip():
    cert = certify_config_spherical(6, 3, 6)
    data = json.loads(json.dumps(cert.to_json_dict()))
    back = FormalityCertificate.from_json_dict(data)
    assert back.verdict == cert.verdict
    assert verify_certificate(back).ok
