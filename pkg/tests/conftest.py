import numpy as np
import pytest

from nuext.linalg import random_complex_matrix, random_unitary


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


def rand_matrix(rng, n):
    return random_complex_matrix(n, rng)


def rand_unitary(rng, n):
    return random_unitary(n, rng)


def rand_normal(rng, n, unitary=False, max_mod=1.0):
    """Random normal matrix with spectral moduli <= max_mod, max attained."""
    if unitary:
        mods = np.ones(n)
    else:
        mods = rng.uniform(0.1, 0.95, n)
        mods[int(rng.integers(n))] = 1.0
    d = max_mod * mods * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, n))
    q = random_unitary(n, rng)
    return q @ np.diag(d) @ np.conj(q.T), d


def rand_nonunitary_normaloid(rng, n):
    """Normal (hence normaloid) with some eigenvalue modulus strictly < 1."""
    while True:
        t, d = rand_normal(rng, n, unitary=False)
        if np.min(np.abs(d)) < 0.97:
            return t


def rand_phase(rng):
    return np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))


def gen_kadison_input(rng):
    """Non-unitary normaloid with w = 1 exactly by construction."""
    n = int(rng.integers(2, 5))
    return rand_nonunitary_normaloid(rng, n)


def gen_selfadjoint_input(rng):
    return (1.0, -1.0) if rng.uniform() < 0.5 else (-1.0, 1.0)


def gen_shear_input(rng):
    b = complex(rng.standard_normal(), rng.standard_normal())
    z = complex(rng.standard_normal(), rng.standard_normal())
    while abs(b) < 1e-3:
        b = complex(rng.standard_normal(), rng.standard_normal())
    while abs(z) < 1e-3:
        z = complex(rng.standard_normal(), rng.standard_normal())
    return b, z


def gen_offdiag_canon(rng, case):
    """Canonical frame with (a, alpha) eligible for the requested case."""
    from nuext.witness import CanonicalForm2x2

    a = -1.0 if case == "basis-a-minus-1" else float(rng.uniform(-0.9, 0.9))
    if case == "II":
        am = rng.uniform(0.05, 0.95) * 0.5 * (1.0 - a)
    elif case == "III":
        q = rng.uniform(1.02 * (1.0 - a) ** 2, 0.98 * 2.0 * (1.0 - a))
        am = 0.5 * np.sqrt(q)
    else:
        am = rng.uniform(0.05, 0.95)
    u = random_unitary(2, rng)
    return CanonicalForm2x2(
        u[:, 0].copy(), u[:, 1].copy(), am * rand_phase(rng), complex(a), rand_phase(rng)
    )


def gen_block_upper_input(rng):
    # m = 1 would force an isometric (scalar, norm-1) corner, so use m >= 2
    m = int(rng.integers(2, 4))
    while True:
        a = random_complex_matrix(m, rng)
        a = a / np.linalg.norm(a, 2)
        if np.min(np.linalg.svd(a, compute_uv=False)) < 0.97:
            break
    l1 = complex(rng.standard_normal(), rng.standard_normal())
    l2 = complex(rng.standard_normal(), rng.standard_normal())
    return l1, l2, a


def gen_blockdiag_input(rng):
    """A radius-1 block with a kadison witness plus a smaller companion."""
    from nuext.witness import kadison_split

    block = rand_nonunitary_normaloid(rng, 2)
    w_block = kadison_split(block)
    k = int(rng.integers(1, 3))
    other = random_complex_matrix(k, rng)
    from nuext.radius import radius_value

    other = other * (rng.uniform(0.2, 0.9) / radius_value(other))
    return w_block, block, other


ACCEPTANCE_RESULTS = []


def record_criterion(num, name, ok):
    ACCEPTANCE_RESULTS.append((num, name, bool(ok)))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for num, name, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(
            f"  criterion {num} ({name}): {'PASS' if ok else 'FAIL'}"
        )
