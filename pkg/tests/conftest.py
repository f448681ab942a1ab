import pytest

from asymptotics.profile import build_base
from numerics.precision import PrecisionContext
from search.corpus import load_corpus


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(60)


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def capparelli(corpus):
    return corpus.family("capparelli")


@pytest.fixture(scope="session")
def mod9(corpus):
    return corpus.family("mod9")


@pytest.fixture(scope="session")
def capparelli_base(capparelli, ctx):
    return build_base(capparelli.A, capparelli.J, ctx)


@pytest.fixture(scope="session")
def mod9_base(mod9, ctx):
    return build_base(mod9.A, mod9.J, ctx)
