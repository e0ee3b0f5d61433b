import math

import numpy as np
import pytest

from nuext.classify import THEOREM_REGISTRY, Verdict, classify, pair_extreme
from nuext.errors import ZeroOperatorError
from nuext.linalg import random_unitary
from nuext.radius import radius_value

from conftest import rand_matrix, rand_nonunitary_normaloid, rand_phase


def test_verdict_validation():
    with pytest.raises(ValueError):
        Verdict("Maybe", "Thm2.1")
    with pytest.raises(ValueError):
        Verdict("Extreme", "Thm9.9")
    with pytest.raises(ValueError):
        Verdict("NotExtreme", "Thm2.1")  # witness required


def test_registry_is_closed():
    assert "Thm2.18-gap" in THEOREM_REGISTRY
    assert "no-theorem" in THEOREM_REGISTRY


def test_zero_operator_rejected():
    with pytest.raises(ZeroOperatorError):
        classify(np.zeros((2, 2)))


def test_unit_scalar_extreme():
    v = classify(np.array([[3.0 - 4.0j]]) / 5.0)
    assert v.kind == "Extreme"


def test_example_extreme_2x2():
    v = classify(np.array([[1, 1j], [1j, -1]], dtype=complex))
    assert v.kind == "Extreme" and v.theorem == "Thm2.14"


def test_example_not_extreme_2x2():
    v = classify(np.array([[1, 0.5], [-0.5, -1]], dtype=complex))
    assert v.kind == "NotExtreme"
    assert v.verification is not None and v.verification.passed


def test_example_diag_1_m1():
    v = classify(np.diag([1.0, -1.0]).astype(complex))
    assert v.kind == "NotExtreme" and v.theorem == "Lemma2.4"
    assert np.allclose(v.witness.A, np.array([[1, 1j], [1j, -1]]), atol=1e-12)
    assert np.allclose(v.witness.B, np.conj(v.witness.A.T), atol=1e-12)


def test_example_diag_blocks_4x4():
    v = classify(np.diag([1.0, 1.0, -1.0, -1.0]).astype(complex))
    assert v.kind == "NotExtreme"
    assert v.verification.passed


def test_shear_route():
    v = classify(np.array([[1.0, 2.0], [0.0, 1.0]], dtype=complex))
    assert v.kind == "NotExtreme" and v.theorem == "Lemma2.15"
    assert abs(v.witness.t - 0.5) <= 1e-12
    # scale-adjusted scalar part: w(T) = 2, canonical scalar part is 2I
    assert np.allclose(v.witness.A * v.scale, 2.0 * np.eye(2), atol=1e-9)


def test_gap_instance_abstains():
    r = 1.0 / math.sqrt(2.0)
    v = classify(np.array([[1.0, r], [-r, 0.0]], dtype=complex))
    assert v.kind == "Unknown" and v.theorem == "Thm2.18-gap"


def test_pair_criterion_cases():
    assert pair_extreme(1.0, 1.0)
    assert pair_extreme(1.0, 1j)
    assert pair_extreme(np.exp(0.3j), np.exp(1.1j))
    assert not pair_extreme(1.0, -1.0)
    assert not pair_extreme(1j, -1j)
    assert not pair_extreme(1.0, 0.5)
    assert not pair_extreme(np.exp(0.2j), -np.exp(0.2j))


def test_unitary_2x2_matches_pair_criterion(rng):
    for _ in range(60):
        u = random_unitary(2, rng)
        d = np.linalg.eigvals(u)
        v = classify(u)
        want = pair_extreme(d[0], d[1])
        if v.kind == "Unknown":
            continue  # abstention is allowed near the tolerance bands
        assert (v.kind == "Extreme") == want, (d, v.theorem, v.notes)


def test_nonunitary_normaloid_not_extreme(rng):
    for _ in range(40):
        n = int(rng.integers(2, 5))
        t = rand_nonunitary_normaloid(rng, n)
        v = classify(t)
        assert v.kind == "NotExtreme"
        assert v.verification.passed


def test_scale_invariance_of_kind(rng):
    for _ in range(20):
        t = rand_matrix(rng, 2)
        c = rng.uniform(0.1, 5.0) * rand_phase(rng)
        v1 = classify(t)
        v2 = classify(c * t)
        assert v1.kind == v2.kind and v1.theorem == v2.theorem


def test_unitary_invariance_of_kind(rng):
    for _ in range(20):
        t = rand_matrix(rng, 3)
        u = random_unitary(3, rng)
        v1 = classify(t)
        v2 = classify(np.conj(u.T) @ t @ u)
        assert v1.kind == v2.kind


def test_witness_scale_convention(rng):
    # witness decomposes T / w(T); scale reports w(T)
    t = 3.0 * np.diag([1.0, -1.0]).astype(complex)
    v = classify(t)
    assert abs(v.scale - 3.0) <= 1e-9
    mid = v.witness.t * v.witness.A + (1 - v.witness.t) * v.witness.B
    assert np.allclose(v.scale * mid, t, atol=1e-8)


def test_no_not_extreme_without_passing_witness(rng):
    for _ in range(150):
        n = int(rng.integers(1, 5))
        t = rand_matrix(rng, n)
        v = classify(t)
        if v.kind == "NotExtreme":
            assert v.witness is not None
            assert v.verification is not None and v.verification.passed
        if v.kind == "Unknown":
            assert v.witness is None


def test_block_upper_pattern_route(rng):
    a = rand_matrix(rng, 2)
    a = a / np.linalg.norm(a, 2)
    if np.min(np.linalg.svd(a, compute_uv=False)) > 0.97:
        a[0, 0] *= 0.5
        a = a / np.linalg.norm(a, 2)
    t = np.block(
        [
            [(0.2 + 0.1j) * np.eye(2), a],
            [np.zeros((2, 2)), (-0.4 + 0.8j) * np.eye(2)],
        ]
    ).astype(complex)
    v = classify(t)
    assert v.kind == "NotExtreme"
    assert v.verification.passed


def test_normal_antipodal_phase_rotated():
    d = np.array([np.exp(0.7j), -np.exp(0.7j), np.exp(0.1j)])
    v = classify(np.diag(d))
    assert v.kind == "NotExtreme"
    assert v.verification.passed


def test_extreme_unitary_diag():
    v = classify(np.diag([1.0, 1j, np.exp(0.4j)]))
    assert v.kind == "Extreme"


def test_radius_one_normalization_notes():
    v = classify(np.diag([2.0, -2.0]).astype(complex))
    assert "scale" in v.notes
    assert abs(v.scale - 2.0) <= 1e-9


def test_identity_extreme_any_n():
    for n in (1, 2, 3, 5):
        assert classify(np.eye(n, dtype=complex)).kind == "Extreme"


def test_not_unitary_diag_not_extreme():
    v = classify(np.diag([1.0, 0.5]).astype(complex))
    assert v.kind == "NotExtreme" and v.verification.passed
