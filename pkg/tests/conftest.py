import pytest

from ringclass.polynomial import IntPoly

# known minimal polynomials, descending coefficients
SEXTIC_DK4_N13 = IntPoly.from_descending([1, 10, 46, 108, 122, 38, -1])
J_POLY_DK4_N13 = IntPoly.from_descending([
    1, -10368, 44789760, -103195607040, 133741506723840,
    -92442129447518208, 26623333280885243904])
SEPTIC_DK7_N7 = IntPoly.from_descending([1, 21, 175, 679, 1162, 490, 588, 7])
QUARTIC_DK7_N6 = IntPoly.from_descending([1, -35, 198, 4060, 1])
SEXTIC_DK24_N3 = IntPoly.from_descending([1, 234, 39015, 1335852, 14036895, -4833270, 729])

EXAMPLES = {
    (-4, 13): SEXTIC_DK4_N13,
    (-7, 7): SEPTIC_DK7_N7,
    (-7, 6): QUARTIC_DK7_N6,
    (-24, 3): SEXTIC_DK24_N3,
}


@pytest.fixture(autouse=True)
def _no_user_cache(monkeypatch):
    monkeypatch.delenv("RINGCLASS_CACHE", raising=False)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
