from fractions import Fraction

from hypothesis import settings, strategies as st

from arfcurves.series import QQ, FieldSpec, PowerSeries

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

F7 = FieldSpec.prime(7)

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def series(draw, precision=12, field=QQ, min_order=0, unit=False):
    n = draw(st.integers(0, 5))
    exps = draw(st.lists(st.integers(min_order, precision), min_size=n, max_size=n))
    coeffs = {}
    for e in exps:
        c = draw(small_fractions) if field is QQ else draw(st.integers(0, field.characteristic - 1))
        coeffs[e] = c
    if unit:
        coeffs[0] = draw(small_fractions.filter(lambda x: x != 0)) if field is QQ else \
            draw(st.integers(1, field.characteristic - 1))
    return PowerSeries(coeffs, precision, field)


def Q(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
