"""Shared fixtures: corpus presentations and small helpers."""

import os
import sys

# Add the repository root to path when running the tests directly
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

import pytest

from qforge.exactlinear import FieldDescriptor, Tensor
from qforge.parsers import build_presentation, load_presentation

Q = FieldDescriptor.RATIONALS
QI = FieldDescriptor.GAUSSIAN_RATIONALS


def load(name):
    """(PresentationFile, QuadraticPresentation) for a corpus entry."""
    pf = load_presentation(name)
    return pf, build_presentation(pf)


def tensor(field, terms):
    """Tensor from {word: int coefficient}."""
    degree = len(next(iter(terms)))
    return Tensor.from_dict(field, degree, {w: field.convert(c) for w, c in terms.items()})


@pytest.fixture
def corpus():
    return load
