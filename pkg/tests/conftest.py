"""
Shared fixtures: the reference graph catalogue and a per-session classification cache.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from agents.classifier_agent import ClassifierAgent
from services.fixture_service import FixtureService


@pytest.fixture(scope="session")
def fixtures():
    return FixtureService()


@pytest.fixture(scope="session")
def classified():
    """classified(n, i) -> (ClassificationRow, members), computed once per session."""
    agent = ClassifierAgent({"workers": 1})
    cache = {}

    def get(n, i):
        if (n, i) not in cache:
            cache[(n, i)] = agent.classify(n, i, force=True)
        return cache[(n, i)]

    return get
