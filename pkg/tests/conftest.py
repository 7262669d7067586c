import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import groups  # noqa: E402

from orbichi.classify import classify_finite_subgroups  # noqa: E402


@pytest.fixture(scope="session")
def kummer():
    return groups.kummer_group()


@pytest.fixture(scope="session")
def s3():
    return groups.s3_group()


@pytest.fixture(scope="session")
def a5():
    return groups.a5_group()


@pytest.fixture(scope="session")
def c4_t6():
    return groups.c4_t6_group()


@pytest.fixture(scope="session")
def c2c2_t6():
    return groups.c2c2_t6_group()


@pytest.fixture(scope="session")
def kummer_cl(kummer):
    return classify_finite_subgroups(kummer)


@pytest.fixture(scope="session")
def s3_cl(s3):
    return classify_finite_subgroups(s3)


@pytest.fixture(scope="session")
def a5_cl(a5):
    return classify_finite_subgroups(a5)


@pytest.fixture(scope="session")
def c4_cl(c4_t6):
    return classify_finite_subgroups(c4_t6)


@pytest.fixture(scope="session")
def c2c2_cl(c2c2_t6):
    return classify_finite_subgroups(c2c2_t6)


@pytest.fixture(scope="session")
def corpus():
    return groups.corpus_groups()


@pytest.fixture(scope="session")
def corpus_classified(corpus):
    return [(label, classify_finite_subgroups(g)) for label, g in corpus]
