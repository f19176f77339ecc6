import pytest

from tsrkit import load_fixture


@pytest.fixture(scope="session")
def T_a():
    return load_fixture("T_a")


@pytest.fixture(scope="session")
def T_b():
    return load_fixture("T_b")


@pytest.fixture(scope="session")
def T_c():
    return load_fixture("T_c")


@pytest.fixture(scope="session")
def M_med():
    return load_fixture("M_med")


@pytest.fixture(scope="session")
def CE_left():
    return load_fixture("CE_left")


@pytest.fixture(scope="session")
def CE_right():
    return load_fixture("CE_right")
