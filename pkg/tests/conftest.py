import pytest

from qcspec.fem import principal_eigenvalue


@pytest.fixture(scope="session")
def fem_solve():
    """Session-wide cache of FEM eigenvalue runs (they dominate suite runtime)."""
    cache = {}

    def run(family, rings, tol=1e-10):
        key = (repr(family), rings, tol)
        if key not in cache:
            cache[key] = principal_eigenvalue(family, rings=rings, tol=tol)
        return cache[key]

    return run
