import random
from fractions import Fraction

import pytest

from beadedjacobi.contraction import LinkingTable, SurgeryDatum, TrilinearForm
from beadedjacobi.laurent import TRIVIAL_CONTEXT, LaurentPoly, validate_alexander

CONTEXT_TEXTS = ["1", "t - 1 + t^-1", "1/2 + 1/2 t", "t^2 - 3t + 5 - 3t^-1 + t^-2"]


def make_context(text):
    return validate_alexander(LaurentPoly.parse(text))


@pytest.fixture(params=CONTEXT_TEXTS, ids=["trivial", "trefoil", "odd-shift", "deg2"])
def ctx(request):
    return make_context(request.param)


@pytest.fixture
def rng():
    return random.Random(20261015)


def kronecker_datum(shifts=(0, 0), context=TRIVIAL_CONTEXT):
    """Two genus-3 handlebodies, I(1,2,3) = 1 on both, and lk = 1 exactly
    between curves with the same index in different handlebodies."""
    form = TrilinearForm(3, {(1, 2, 3): 1})
    entries = {((1, j), (2, k)): (1 if j == k else 0) for j in (1, 2, 3) for k in (1, 2, 3)}
    entries.update({((a, j), (a, k)): 0 for a in (1, 2) for j in (1, 2, 3) for k in (1, 2, 3) if j <= k})
    return SurgeryDatum(1, [form, form], list(shifts), LinkingTable(entries, context), context)


@pytest.fixture
def kronecker():
    return kronecker_datum()


def frac(x):
    return Fraction(x)
