import pytest

from leaguestats.corpus import data_path, load_embedded_corpus


@pytest.fixture(scope="session")
def corpus():
    return load_embedded_corpus()


@pytest.fixture(scope="session")
def season0910(corpus):
    return corpus["2009/10"]


@pytest.fixture
def season_text():
    """Raw text of a shipped season file."""

    def read(season):
        return data_path(f"epl_{season.replace('/', '_')}.csv").read_text(encoding="utf-8")

    return read
