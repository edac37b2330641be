import pytest

from diffpath import PlateScenario, derive_coefficients, table1_water


@pytest.fixture(scope="session")
def water():
    return table1_water()


@pytest.fixture(scope="session")
def coeffs(water):
    return derive_coefficients(water)


@pytest.fixture(scope="session")
def scenario():
    return PlateScenario(approach_velocity=0.2, wall_temperature=25.0,
                         freestream_temperature=20.0, heated_start=0.05,
                         tracking_start=0.10)
