import sympy as sp

from treerenorm.coeff_series import LaurentSeries, SymPoly

z, L, tau, u = sp.symbols("z L tau u")


def poly_to_sympy(p: SymPoly):
    out = sp.Integer(0)
    for (pi2, l, t, uu), c in p.items():
        out += sp.Rational(int(c.numerator), int(c.denominator)) * sp.pi ** (2 * pi2) * L**l * tau**t * u**uu
    return out


def series_to_sympy(s: LaurentSeries):
    return sp.expand(sum((poly_to_sympy(c) * z**k for k, c in s.coeffs.items()), sp.Integer(0)))


def sympy_coeffs(expr, lo: int, hi: int) -> dict:
    """Laurent coefficients of ``expr`` at ``z = 0`` for powers lo..hi."""
    ser = sp.series(expr, z, 0, hi + 1).removeO()
    ser = sp.expand(ser)
    return {k: sp.simplify(ser.coeff(z, k)) for k in range(lo, hi + 1)}


def assert_matches_sympy(s: LaurentSeries, expr, lo: int, hi: int):
    got = series_to_sympy(s.truncate(hi))
    want = sympy_coeffs(expr, lo, hi)
    for k in range(lo, hi + 1):
        assert sp.simplify(sp.expand(got).coeff(z, k) - want[k]) == 0, f"z^{k}"


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
