from hypothesis import strategies as st

from wgreedy.core import SparseVector

coeffs = st.floats(min_value=-50, max_value=50, allow_nan=False, allow_infinity=False)


def vectors(max_index=8, max_size=6, ties=False):
    values = st.sampled_from([-2.0, -1.0, 1.0, 2.0]) if ties else coeffs
    return st.dictionaries(st.integers(1, max_index), values, max_size=max_size).map(SparseVector)


def index_sets(max_index=8, max_size=4):
    return st.frozensets(st.integers(1, max_index), max_size=max_size)
