import pytest

from ellpairs.lattice import LatticeTriangle

DELTA1 = LatticeTriangle.from_abc(2, 5, 8)
DELTA2 = LatticeTriangle.from_abc(5, 12, 20)
DELTA3 = LatticeTriangle.from_abc(5, 18, 45)
TRIANGLES = [(DELTA1, 4), (DELTA2, 10), (DELTA3, 15)]


@pytest.fixture(params=TRIANGLES, ids=["delta1", "delta2", "delta3"])
def triangle_m(request):
    return request.param
