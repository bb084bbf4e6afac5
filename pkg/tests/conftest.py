import sys
from pathlib import Path

import pytest

from midi_index import _backend

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(params=_backend.available())
def backend(request):
    """Run the test once per kernel backend."""
    with _backend.use(request.param):
        yield request.param
