from hypothesis import strategies as st

from linarr.tree import prufer_decode


@st.composite
def trees(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    code = draw(st.lists(st.integers(1, n), min_size=n - 2, max_size=n - 2))
    return prufer_decode(code, n)


@st.composite
def trees_with_arrangement(draw, min_n=2, max_n=12):
    t = draw(trees(min_n, max_n))
    perm = draw(st.permutations(list(range(1, t.n + 1))))
    return t, perm


@st.composite
def relabelled(draw, min_n=2, max_n=12):
    t = draw(trees(min_n, max_n))
    perm = draw(st.permutations(list(range(1, t.n + 1))))
    return t, perm
