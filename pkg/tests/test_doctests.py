"""Run the docstring examples of every module as tests."""

import doctest

import pytest

import schubgb.groebner
import schubgb.gvd
import schubgb.idealgen
import schubgb.permcomb
import schubgb.polycore
import schubgb.verifier

MODULES = [
    schubgb.permcomb,
    schubgb.polycore,
    schubgb.idealgen,
    schubgb.groebner,
    schubgb.gvd,
    schubgb.verifier,
]


@pytest.mark.parametrize("module", MODULES, ids=lambda m: m.__name__)
def test_doctests(module):
    result = doctest.testmod(module)
    assert result.failed == 0
