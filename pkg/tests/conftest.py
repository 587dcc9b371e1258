import os
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tpush.algebra import MPoly

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def term_strategy(n, qrange=(-2, 2), trange=(-3, 3), xmax=2):
    return st.tuples(
        st.integers(*qrange),
        st.integers(*trange),
        st.tuples(*[st.integers(0, xmax)] * n),
        small_rationals.filter(lambda c: c != 0),
    )


@st.composite
def mpolys(draw, n=2, max_terms=4, q=True, **kw):
    if not q:
        kw["qrange"] = (0, 0)
    terms = draw(st.lists(term_strategy(n, **kw), max_size=max_terms))
    return MPoly.from_terms(n, (((qe, te, xs), c) for qe, te, xs, c in terms))


@st.composite
def nonzero_mpolys(draw, n=2, **kw):
    p = draw(mpolys(n, **kw))
    if p.is_zero():
        p = MPoly.one(n)
    return p


def rational_point(draw_t, draw_x, n):
    t = Fraction(draw_t)
    return t, [Fraction(v) for v in draw_x]


# criterion id -> list of (ok, detail), filled by test_acceptance
ACCEPTANCE = {}
CRITERIA = {
    "C1": "main theorem, n=2 hand instance (exact)",
    "C2": "eigenvector identity symbolic, n=3, |lambda|<=4 (exact)",
    "C3": "eigenvector identity at 20 rational points, n=4 |lambda|<=4 and (2,1,0,0,0) (exact)",
    "C4": "F* vanishing solve at q=1 equals queue recursion, n<=4, |mu|<=4 (exact)",
    "C5": "Step-1/Step-2 kernels equal queue weights (exact)",
    "C6": "symmetrization and factorization of P*, n<=4, |lambda|<=4 (exact)",
    "C7": "lumping: kernel cells and stationary masses (exact)",
    "C8": "Hecke / Knop-Sahi / shape-permuting regeneration (exact)",
    "C9": "E*, product formula, Okounkov=JT, two-column, e* scaling (exact)",
    "C10": "density closed forms vs stationary sums (exact)",
    "C11": "Step-0 bell sums and denominator, n<=5 (exact)",
    "C12": "Monte Carlo TV < 0.02 and chi-square p > 1e-3",
    "C13": "CLI JSON byte-identical across runs",
}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title in CRITERIA.items():
        rows = ACCEPTANCE.get(cid)
        if rows is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(ok for ok, _ in rows) else "FAIL"
        terminalreporter.write_line(f"{cid:<4} {status:<8} {title}")
        for ok, detail in rows or []:
            if not ok:
                terminalreporter.write_line(f"       failed: {detail}")
