import random

import pytest

from app.modules.generators.instances import block_example, grid_matrix
from app.modules.tensor_model.tensor import SparseTensor


def dense(rows):
    return SparseTensor.from_dense(rows)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def block():
    """5x5 three-triangle matrix (values 1..15) and its drawn column decomposition."""
    return block_example()


@pytest.fixture
def grid3():
    return grid_matrix(3)


@pytest.fixture
def identity4():
    return SparseTensor((4, 4), {(i, i): 1 for i in range(4)})


@pytest.fixture
def tensor_file(tmp_path):
    """Write text to a temp file and return its path."""

    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
