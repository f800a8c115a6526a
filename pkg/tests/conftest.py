from fractions import Fraction

import pytest

from jetlct.poly import MonomialIdeal, parse_ideal


@pytest.fixture
def cusp():
    return parse_ideal("u^2 - v^3")


@pytest.fixture
def x2y3():
    return MonomialIdeal.from_exponents(2, [(2, 0), (0, 3)])


def F(s) -> Fraction:
    return Fraction(s)


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
