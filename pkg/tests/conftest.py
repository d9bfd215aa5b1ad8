import random

import pytest

from subcad.parser import parse_input, parse_order
from subcad.poly import MultiPoly

ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)


@pytest.fixture
def acceptance(request):
    """Records one PASS/FAIL line per criterion for the terminal summary."""
    sink = request.config.stash[ACCEPTANCE_KEY]

    def record(number: int, ok: bool, detail: str) -> bool:
        line = "criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
        sink.append(line)
        print(line)
        return ok

    return record


def poly(text, order_text):
    order = parse_order(order_text)
    (p,) = parse_input(text, order)
    return p


@pytest.fixture(scope="session")
def circle():
    order = parse_order("[y,x]")
    return parse_input("[x^2+y^2-1]", order), order


@pytest.fixture(scope="session")
def ec_example():
    order = parse_order("[x,y]")
    return parse_input("[x^2+y^2-1, [x*y-1/4, x^3-y^2]]", order), order


@pytest.fixture(scope="session")
def five_var():
    order = parse_order("[a,b,c,d,e]")
    return parse_input("[a*e+b*d+c*e+d+e]", order), order


def random_poly(rng: random.Random, nvars: int, degree: int, lo: int = -5, hi: int = 5,
                terms: tuple[int, int] = (2, 5)) -> MultiPoly:
    """Random polynomial with total degree at most ``degree``."""
    while True:
        coeffs = {}
        for _ in range(rng.randint(*terms)):
            exps = []
            left = degree
            for _ in range(nvars):
                e = rng.randint(0, left)
                exps.append(e)
                left -= e
            rng.shuffle(exps)
            coeffs[tuple(exps)] = rng.randint(lo, hi)
        p = MultiPoly.from_terms([(e, c) for e, c in coeffs.items() if c])
        if not p.is_constant:
            return p
