from __future__ import annotations

import pytest

from equising.germ import CurveGerm
from equising.textio import parse_poly

GERM_VARS = ("u", "v")
PROJ_VARS = ("x", "y", "z")


def germ(s):
    return CurveGerm(parse_poly(s, GERM_VARS))


def gpoly(s):
    return parse_poly(s, GERM_VARS)


def ppoly(s):
    return parse_poly(s, PROJ_VARS)


# local equations of the singularities appearing in the example corpus
CORPUS_GERMS = {
    "node": "u*v",
    "cusp": "u^2 - v^3",
    "ordinary3": "u^3 - v^3",
    "A19": "u^2 - v^20",
    "A35": "u^9 + (u + v^4)^2",
    "A31": "u^9 + u^8 + (u + v^4)^2",
    "three_cusps": "u^7 + v^7 + (u - v)^2*u^2*v^2",
}

# the example curves of the applications section
CORPUS_CURVES = {
    "product7": "(x^4 - x^2*z^2 + y^2*z^2 + y^3*z)*y*(x + 2*y + z)*(x - 2*y - z)",
    "deep9": "x^9 + z*(x*z^3 + y^4)^2",
    "deformed9": "x^9 + z*x^8 + z*(x*z^3 + y^4)^2",
    "tricusp7": "x^7 + y^7 + (x - y)^2*x^2*y^2*z",
}


@pytest.fixture(scope="session")
def corpus_germs():
    return {k: germ(v) for k, v in CORPUS_GERMS.items()}


@pytest.fixture(scope="session")
def corpus_curves():
    from equising.hilbert import ProjectiveCurve

    return {k: ProjectiveCurve(ppoly(v)) for k, v in CORPUS_CURVES.items()}
