from hypothesis import strategies as st

from upcut.fuzzy import FuzzyMap
from upcut.order.generate import all_lattices, default_names
from upcut.order.lattice import FiniteLattice
from upcut.order.poset import build_poset, Poset


# Every lattice with at most four elements, one per isomorphism class.
SMALL_LATTICES = tuple(lattice for n in range(1, 5) for lattice in all_lattices(n))


@st.composite
def posets(draw: st.DrawFn, max_size: int = 5) -> Poset:
    """
    Draw a poset by relating randomly chosen pairs of a natural labeling, then
    shuffle the names so that declaration order and order relation differ.
    """
    n = draw(st.integers(min_value=0, max_value=max_size))
    names = draw(st.permutations(default_names(n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_poset(names, [(names[i], names[j]) for i, j in chosen])


def lattices() -> st.SearchStrategy[FiniteLattice]:
    return st.sampled_from(SMALL_LATTICES)


@st.composite
def fuzzy_maps(draw: st.DrawFn, max_size: int = 4) -> FuzzyMap:
    space = draw(posets(max_size))
    scale = draw(lattices())
    values = draw(
        st.lists(
            st.sampled_from(scale.elements), min_size=len(space), max_size=len(space)
        )
    )
    return FuzzyMap(space, scale, dict(zip(space.elements, values)))
