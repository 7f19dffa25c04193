import numpy as np
import pytest
from importlib import resources
from pathlib import Path

from kratzer import MoleculeParams, load_molecule


def bundled(name: str) -> Path:
    return Path(str(resources.files("kratzer").joinpath(f"data/{name}")))


@pytest.fixture(scope="session")
def hcl() -> MoleculeParams:
    return load_molecule(bundled("hcl.json"))


@pytest.fixture(scope="session")
def h2() -> MoleculeParams:
    return load_molecule(bundled("h2.json"))


@pytest.fixture(scope="session")
def natural() -> MoleculeParams:
    return MoleculeParams.natural()


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20260817)
