import hypothesis.strategies as st

from decogauss.evolution import GaussianDensityMatrix
from decogauss.units import METER


@st.composite
def valid_states(draw, max_ratio=1e4, max_b=50.0):
    """Positive Gaussian density matrices: C > 0, A = ratio*C with ratio >= 1,
    B unconstrained."""
    c = draw(st.floats(1e-2, 1e2))
    ratio = draw(st.floats(1.0, max_ratio))
    b = draw(st.floats(-max_b, max_b))
    return GaussianDensityMatrix(c * ratio, b, c, METER)


def o1_states():
    """States with O(1) coefficients, suitable for quadrature cross-checks."""
    return valid_states(max_ratio=20.0, max_b=2.0)
