import dataclasses

import pytest

from hbjacobi.tolerances import TOL


@pytest.fixture(autouse=True)
def _restore_tolerances():
    saved = dataclasses.asdict(TOL)
    yield
    for name, value in saved.items():
        setattr(TOL, name, value)
