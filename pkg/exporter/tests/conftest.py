import shutil

import pytest

ARITHMETIC_WORD = "CeBCdcbCDaC"   # genus 2, torsion 5, census s861(3,1)


def scripted_spec(**overrides):
    spec = {
        "volume": 4.4153,
        "homology": [5, 0],
        "amphicheiral": False,
        "census": "s861(3,1)",
        "num_generators": 2,
        "relators": ["aaaaa"],
        "geodesics": [
            [0.58, 1.2, 1, "b"],
            [0.93, -0.7, 1, "aB"],
            [1.31, 0.4, 1, "a"],
            [2.05, 3.0, 2, "bb"],
            [9.4, 0.1, 1, "abbb"],
        ],
        "hyperbolic": True,
    }
    spec.update(overrides)
    return spec


@pytest.fixture
def spec():
    return scripted_spec()


@pytest.fixture(scope="session")
def gapcert_cli():
    path = shutil.which("gapcert")
    if path is None:
        pytest.skip("the primary 'gapcert' CLI is not on PATH")
    return path
