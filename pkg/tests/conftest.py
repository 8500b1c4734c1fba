"""Shared fixtures: small theories and curated finite doctrines"""
import json
import random
from pathlib import Path

import pytest

from cli.files import FiniteDoctrineFile, parse_theory
from config.config import get_settings
from doctrines.subsets import SubsetsDoctrine

FIXTURES = Path(__file__).parent / "fixtures"


def load_theory(name: str, **bounds):
    return parse_theory((FIXTURES / name).read_text(encoding="utf-8"), **bounds)


def load_finite(name: str):
    data = json.loads((FIXTURES / f"{name}.json").read_text(encoding="utf-8"))
    return FiniteDoctrineFile.model_validate(data).to_doctrine()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def fix_ab():
    return load_theory("fix_ab.thy", instantiation_depth=2, model_bound=3)


@pytest.fixture
def fix_empty():
    return load_theory("fix_empty.thy", instantiation_depth=2, model_bound=3)


@pytest.fixture
def fix_empty_r0():
    return load_theory("fix_empty_r0.thy", instantiation_depth=2, model_bound=3)


@pytest.fixture
def finite():
    return load_finite


@pytest.fixture
def subsets():
    return SubsetsDoctrine()


@pytest.fixture
def rng():
    return random.Random(get_settings().seed)
