import random
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

import accessfold
from accessfold.instance import load_instance

settings.register_profile(
    "repo", derandomize=True, max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

CORPUS = Path(accessfold.__file__).parent / "corpus"


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20240601, help="seed for the randomized instance tests")


@pytest.fixture
def rng(request):
    return random.Random(request.config.getoption("--seed"))


@pytest.fixture(scope="session")
def corpus():
    return {p.stem: load_instance(p) for p in sorted(CORPUS.glob("*.json"))}


def corpus_path(name: str) -> Path:
    return CORPUS / f"{name}.json"
