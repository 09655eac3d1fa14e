import pytest

from weylgroupoid import CartanScheme, WeylGroupoid, generate_roots, parse_scheme_file


class Fixture:
    def __init__(self, name):
        self.raw = parse_scheme_file(name)
        self.scheme = CartanScheme.from_raw(self.raw)
        self.roots = generate_roots(self.scheme)
        self.G = WeylGroupoid(self.scheme, self.roots)


@pytest.fixture(scope="session")
def bruhat():
    return Fixture("bruhat")


@pytest.fixture(scope="session")
def a2():
    return Fixture("a2")


@pytest.fixture(scope="session")
def b2():
    return Fixture("b2")


@pytest.fixture(scope="session")
def a1():
    return Fixture("a1")


def word(G, labels, source):
    """Morphism from 1-based labels, read as in sigma_{i1}...sigma_{ik}^source."""
    return G.from_word([G.scheme.index_of(i) for i in labels], source)


_cache = {}


def bruhat_groupoid():
    """Shared groupoid for hypothesis tests (function-scoped fixtures do not mix with @given)."""
    if "G" not in _cache:
        _cache["G"] = Fixture("bruhat").G
    return _cache["G"]
