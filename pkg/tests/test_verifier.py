import copy

import pytest

from pretzel_surgery.prover import (builtin_script_fixedpoint, builtin_script_main, check_script,
                                    main_script, mirror)
from pretzel_surgery.prover.kernel import ProverContext
from pretzel_surgery.prover.verifier import verify


@pytest.fixture(scope="module")
def good():
    mirrored = check_script(mirror(main_script(3, 9, 1)),
                            ProverContext.for_surgery(3, 9, 1, sign=-1))
    return [builtin_script_main((3, 9, 1)).to_json(), builtin_script_main((5, 27, 2)).to_json(),
            mirrored.to_json(), builtin_script_fixedpoint(4).to_json()]


def test_accepts_valid(good):
    for cert in good:
        assert verify(cert) == (True, "ok")


def test_rejects_tampered_judgment(good):
    cert = copy.deepcopy(good[0])
    st = next(s for s in cert["steps"] if s["judgment"]["kind"] == "POS")
    st["judgment"]["kind"] = "NEG"
    ok, reason = verify(cert)
    assert not ok and "recorded judgment" in reason


def test_rejects_truncated(good):
    cert = copy.deepcopy(good[0])
    cert["steps"] = cert["steps"][:-1]
    cert["qed"] = None
    assert verify(cert) == (False, "no unconditional contradiction")


def test_rejects_missing_axiom(good):
    cert = copy.deepcopy(good[3])
    cert["axioms"].remove("globalfix")
    assert not verify(cert)[0]


def test_rejects_wrong_context(good):
    cert = copy.deepcopy(good[0])
    cert["context"]["p"] = 8
    assert not verify(cert)[0]


def test_rejects_sign_flip(good):
    cert = copy.deepcopy(good[2])
    cert["context"]["sign"] = 1
    assert not verify(cert)[0]


def test_rejects_failed_certificate():
    assert not verify(builtin_script_main((3, 8, 1)).to_json())[0]


def test_malformed_input():
    ok, reason = verify({"steps": []})
    assert not ok and reason.startswith("malformed")
    ok, _ = verify({"context": {"s": 3, "p": 9, "q": 1}, "axioms": [], "steps": []})
    assert not ok
