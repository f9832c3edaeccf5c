import random

import pytest

from d1u.diffcalc import GroupFunction
from d1u.groups import AbelianGroup, enumerate_abelian_groups

_ACCEPTANCE: list[tuple[str, str, str]] = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    class Recorder:
        def __call__(self, name: str, ok: bool, detail: str = "") -> None:
            _ACCEPTANCE.append((name, "PASS" if ok else "FAIL", detail))
            assert ok, f"{name}: {detail}"

    return Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {name}  {detail}")


def random_function(rng: random.Random, max_d: int = 24, max_order: int = 30) -> GroupFunction:
    d = rng.randint(2, max_d)
    n = rng.randint(1, max_order)
    g = rng.choice(enumerate_abelian_groups(n))
    values = tuple(tuple(rng.randrange(m) for m in g.factors) for _ in range(d))
    return GroupFunction(d, g, values)


def squares(q: int) -> GroupFunction:
    return GroupFunction.cyclic(q, q, [x * x for x in range(q)])


@pytest.fixture
def z5_square():
    return squares(5)


@pytest.fixture
def z4_identity():
    return GroupFunction(4, AbelianGroup([4]), ((0,), (1,), (2,), (3,)))
