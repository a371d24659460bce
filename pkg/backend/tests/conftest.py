import pytest

from core.bundle import MapPair


@pytest.fixture
def make_pair():
    """Pair (f, s_{+1} o p) with differences (q, r)."""

    def build(domain: str, codomain: str, q: int, r: int) -> MapPair:
        return MapPair.from_differences(domain, codomain, q, r)

    return build


@pytest.fixture(scope="session")
def grid_bounds():
    # grid for the closed forms
    return 50, 50


@pytest.fixture(scope="session", params=[12, pytest.param(50, marks=pytest.mark.slow)], ids=lambda b: f"bound{b}")
def geometry_bounds(request):
    # exact root solving is slower; the 12 grid covers every case of the formulas
    return request.param, request.param
