import hypothesis.strategies as st

from poly.cpoly import CPoly


def unit_box_strategy():
    """Complex numbers with real and imaginary parts in [-1, 1]."""
    part = st.floats(-1, 1, allow_nan=False)
    return st.builds(complex, part, part)


def product_poly_strategy(m, max_degree=3, max_terms=6):
    """Polynomials in z1..zm of degree at most `max_degree` in each variable,
    with coefficients in the unit box."""
    exponents = st.tuples(*[st.integers(0, max_degree)] * m)
    return st.lists(st.tuples(exponents, unit_box_strategy()), min_size=1, max_size=max_terms).map(
        lambda terms: sum((CPoly.monomial(dict(zip(range(1, m + 1), e)), c) for e, c in terms), CPoly()))


def lift_case_strategy(max_m=3, max_n=2):
    """Triples (m, n, polynomial in z1..zm)."""
    return st.integers(1, max_m).flatmap(
        lambda m: st.tuples(st.just(m), st.integers(0, max_n), product_poly_strategy(m)))
