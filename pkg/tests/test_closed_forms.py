import math

import numpy as np
import pytest

from nuext.closedforms import (
    WtFamily,
    radius_block,
    radius_collinear,
    radius_johnson,
    radius_wt_family,
    triangularize_wt,
)
from nuext.errors import (
    DegenerateDiscriminantError,
    EqualEigenvaluesError,
    ModulusMismatchError,
    NotCollinearError,
)
from nuext.linalg import frobenius, is_unitary
from nuext.radius import radius_value


def tri(l1, l2, z):
    return np.array([[l1, z], [0.0, l2]], dtype=complex)


def test_block_vs_sweep_oracle(rng):
    for _ in range(300):
        l1 = complex(rng.standard_normal(), rng.standard_normal())
        l2 = complex(rng.standard_normal(), rng.standard_normal())
        an = abs(rng.standard_normal())
        z = an * np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        got, geo = radius_block(l1, l2, an)
        assert abs(got - radius_value(tri(l1, l2, z))) <= 1e-7
        if geo is not None:
            assert geo.stationarity_residual() <= 1e-8
            x, y = geo.point(geo.phi0)
            assert abs(math.hypot(x, y) - got) <= 1e-9


def test_block_true_block_sizes(rng):
    # the radius depends on the corner block only through its norm
    for m in (1, 2, 3):
        l1, l2 = 0.4 + 0.2j, -0.3 + 0.9j
        a = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
        an = float(np.linalg.norm(a, 2))
        big = np.block(
            [
                [l1 * np.eye(m, dtype=complex), a],
                [np.zeros((m, m), dtype=complex), l2 * np.eye(m, dtype=complex)],
            ]
        )
        got, _geo = radius_block(l1, l2, an)
        assert abs(got - radius_value(big)) <= 1e-7


def test_block_degenerate_equal_eigenvalues():
    got, geo = radius_block(0.7j, 0.7j, 0.5)
    assert geo is None
    assert abs(got - (0.7 + 0.25)) <= 1e-12


def test_collinear_vs_sweep_oracle(rng):
    for _ in range(300):
        r1 = rng.standard_normal()
        r2 = rng.standard_normal()
        ph = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        l1, l2 = r1 * ph, r2 * ph
        z = complex(rng.standard_normal(), rng.standard_normal())
        assert abs(radius_collinear(l1, l2, z) - radius_value(tri(l1, l2, z))) <= 1e-7


def test_collinear_rejects_noncollinear():
    with pytest.raises(NotCollinearError):
        radius_collinear(1.0, 1j, 0.5)


def test_johnson_vs_sweep_oracle(rng):
    done = 0
    while done < 300:
        r = rng.uniform(0.1, 2.0)
        p1, p2 = rng.uniform(0.0, 2.0 * math.pi, 2)
        l1, l2 = r * np.exp(1j * p1), r * np.exp(1j * p2)
        if abs(l1 - l2) < 1e-6:
            continue
        z = complex(rng.standard_normal(), rng.standard_normal())
        assert abs(radius_johnson(l1, l2, z) - radius_value(tri(l1, l2, z))) <= 1e-7
        done += 1


def test_johnson_rejections():
    with pytest.raises(ModulusMismatchError):
        radius_johnson(1.0, 0.5, 1.0)
    with pytest.raises(EqualEigenvaluesError):
        radius_johnson(1.0, 1.0, 1.0)


def test_wt_family_regions(rng):
    for _ in range(200):
        a = rng.uniform(-0.95, 0.95)
        pick = rng.uniform()
        if pick < 0.5:
            q = rng.uniform((1 - a) ** 2 * 1.001, 2 * (1 - a))  # region (i)
        else:
            q = rng.uniform(1e-4, (1 - a) ** 2 * 0.999)  # region (ii)
        fam = WtFamily(a, 0.5 * math.sqrt(q) * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        assert radius_wt_family(fam) == 1.0
        assert abs(radius_value(fam.matrix()) - 1.0) <= 1e-7


def test_wt_family_outside_regions_returns_none():
    # 4|alpha|^2 > 2(1-a): the family radius exceeds 1, no formula applies
    fam = WtFamily(0.0, 0.9)
    assert radius_wt_family(fam) is None
    assert radius_value(fam.matrix()) > 1.0 + 1e-6


def test_wt_family_region_boundary_closed():
    # 4|alpha|^2 = 2(1-a) is included in region (i)
    fam = WtFamily(0.0, 1.0 / math.sqrt(2.0))
    assert radius_wt_family(fam) == 1.0
    assert abs(radius_value(fam.matrix()) - 1.0) <= 1e-8


def test_triangularize_wt_both_branches(rng):
    for _ in range(100):
        a = rng.uniform(-0.9, 0.9)
        am = rng.uniform(0.05, 1.2)
        if abs(4 * am * am - (1 - a) ** 2) < 1e-3:
            continue
        fam = WtFamily(a, am * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        u, form = triangularize_wt(fam)
        assert is_unitary(u, 1e-9)
        assert frobenius(np.conj(u.T) @ fam.matrix() @ u - form.matrix()) <= 1e-9
        if fam.discriminant() > 0:
            assert abs(form.lambda1 - np.conj(form.lambda2)) <= 1e-9
        else:
            assert abs(form.lambda1.imag) <= 1e-12 and abs(form.lambda2.imag) <= 1e-12


def test_triangularize_wt_degenerate_rejected():
    with pytest.raises(DegenerateDiscriminantError):
        triangularize_wt(WtFamily(0.0, 0.5))


def test_wt_family_validation():
    with pytest.raises(ValueError):
        WtFamily(1.0, 0.5)
    with pytest.raises(ValueError):
        WtFamily(0.0, 0.0)


def test_collinear_and_johnson_agree_with_block(rng):
    for _ in range(200):
        ph = np.exp(1j * rng.uniform(0.0, 2.0 * math.pi))
        l1, l2 = rng.standard_normal() * ph, rng.standard_normal() * ph
        zm = abs(rng.standard_normal())
        got, _ = radius_block(l1, l2, zm)
        assert abs(radius_collinear(l1, l2, zm) - got) <= 1e-9
    done = 0
    while done < 200:
        r = rng.uniform(0.1, 2.0)
        p1, p2 = rng.uniform(0.0, 2.0 * math.pi, 2)
        l1, l2 = r * np.exp(1j * p1), r * np.exp(1j * p2)
        if abs(l1 - l2) < 1e-6:
            continue
        zm = abs(rng.standard_normal())
        got, _ = radius_block(l1, l2, zm)
        assert abs(radius_johnson(l1, l2, zm) - got) <= 1e-9
        done += 1


def test_block_zero_corner_and_probe_dominance(rng):
    got, _ = radius_block(0.3 + 1.1j, -0.8, 0.0)
    assert abs(got - max(abs(0.3 + 1.1j), 0.8)) <= 1e-12
    for _ in range(50):
        l1 = complex(rng.standard_normal(), rng.standard_normal())
        l2 = complex(rng.standard_normal(), rng.standard_normal())
        an = abs(rng.standard_normal())
        got, geo = radius_block(l1, l2, an)
        if geo is None:
            continue
        assert geo.a_axis >= geo.b_axis >= 0.0
        # the returned value dominates 360 probe points of the ellipse
        for phi in np.linspace(0.0, 2.0 * math.pi, 360, endpoint=False):
            x, y = geo.point(phi)
            assert math.hypot(x, y) <= got + 1e-10


def test_triangular_form_radius_matches_original(rng):
    for _ in range(100):
        a = rng.uniform(-0.9, 0.9)
        am = rng.uniform(0.05, 1.2)
        if abs(4 * am * am - (1 - a) ** 2) < 1e-3:
            continue
        fam = WtFamily(a, am * np.exp(1j * rng.uniform(0, 2 * math.pi)))
        _u, form = triangularize_wt(fam)
        got, _ = radius_block(form.lambda1, form.lambda2, abs(form.zeta))
        assert abs(got - radius_value(fam.matrix())) <= 1e-8


def test_triangularize_wt_stated_instances():
    # real-eigenvalue branch: diagonal ((1+R)/2, (1-R)/2), R = 0.6, corner 2*conj(alpha)
    _u, form = triangularize_wt(WtFamily(0.0, 0.4))
    assert abs(form.lambda1 - 0.8) <= 1e-12 and abs(form.lambda2 - 0.2) <= 1e-12
    assert abs(form.zeta - 0.8) <= 1e-12
    # conjugate-pair branch: lambda = (1 + iK)/2, K = sqrt(0.44)
    _u, form = triangularize_wt(WtFamily(0.0, 0.6))
    k = math.sqrt(0.44)
    assert abs(form.lambda1 - 0.5 * (1 + 1j * k)) <= 1e-12
    assert abs(form.lambda2 - np.conj(form.lambda1)) <= 1e-12
