from hypothesis import strategies as st

from synthcomp.murec import Comp, Mu, PrimRec, Proj, Succ, Term, Zero

small = st.integers(min_value=0, max_value=5)

leaves = st.one_of(
    st.builds(Zero, k=small),
    st.just(Succ()),
    st.builds(Proj, i=small, k=small),
)


def _extend(children: st.SearchStrategy[Term]) -> st.SearchStrategy[Term]:
    return st.one_of(
        st.builds(Comp, f=children, gs=st.lists(children, max_size=3).map(tuple)),
        st.builds(PrimRec, f=children, g=children),
        st.builds(Mu, f=children),
    )


terms = st.recursive(leaves, _extend, max_leaves=12)

# Terms without minimisation, which always converge given enough fuel.
total_terms = st.recursive(
    leaves,
    lambda children: st.one_of(
        st.builds(Comp, f=children, gs=st.lists(children, max_size=3).map(tuple)),
        st.builds(PrimRec, f=children, g=children),
    ),
    max_leaves=8,
)

bool_lists = st.lists(st.booleans(), max_size=12).map(tuple)
