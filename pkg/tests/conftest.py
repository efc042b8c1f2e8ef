import sympy
import pytest

from formring.gbengine import Ideal
from formring.polycore import Ring


def ideal(names, *gens):
    R = Ring(tuple(names))
    return Ideal(R, [R(g) for g in gens])


def as_sympy(f, syms):
    """Independent conversion through the textual form."""
    text = str(f).replace("^", "**")
    return sympy.sympify(text, locals=dict(zip(f.ring.variables, syms)))


def sympy_reduced_gb(I, order="grevlex"):
    syms = sympy.symbols(" ".join(I.ring.variables))
    if not isinstance(syms, tuple):
        syms = (syms,)
    polys = [as_sympy(g, syms) for g in I.gens]
    G = sympy.groebner(polys, *syms, order=order, domain="QQ")
    return sorted((sympy.expand(g) for g in G.exprs), key=sympy.srepr), syms


def ours_as_sympy(basis, syms):
    return sorted((sympy.expand(as_sympy(g, syms)) for g in basis), key=sympy.srepr)


@pytest.fixture
def xyz():
    return Ring(("x", "y", "z"))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
