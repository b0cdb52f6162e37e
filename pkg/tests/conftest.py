import pytest

from stairmaj.kernels import backends


@pytest.fixture(params=backends(), ids=lambda m: m.BACKEND)
def backend(request):
    """Each importable kernel backend in turn."""
    return request.param
