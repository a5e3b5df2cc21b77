import time

import pytest

from matsuo.groups import (
    hall_quotient_presentation,
    su32_quotient_presentation,
    todd_coxeter,
)


def _timed_enumeration(presentation):
    start = time.monotonic()
    table = todd_coxeter(presentation)
    assert table.complete
    table.enumeration_seconds = time.monotonic() - start
    return table


@pytest.fixture(scope="session")
def su32_table():
    return _timed_enumeration(su32_quotient_presentation())


@pytest.fixture(scope="session")
def su32_group(su32_table):
    return su32_table.group()


@pytest.fixture(scope="session")
def hall_table():
    return _timed_enumeration(hall_quotient_presentation())


@pytest.fixture(scope="session")
def hall_group(hall_table):
    return hall_table.group()
