"""Session fixtures: the automata from fixtures/ parsed once."""

from __future__ import annotations

import pytest

from helpers import load_fixture


@pytest.fixture(scope="session")
def bool2():
    return load_fixture("bool2.bta")


@pytest.fixture(scope="session")
def and1():
    return load_fixture("and1.bta")


@pytest.fixture(scope="session")
def abc():
    return load_fixture("abc.bta")


@pytest.fixture(scope="session")
def abc_codet():
    return load_fixture("abc_codet.bta")


@pytest.fixture(scope="session")
def star():
    return load_fixture("star.bta")


@pytest.fixture(scope="session")
def bool2r():
    return load_fixture("bool2r.tta")
