import json
import pathlib

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from weylchar.weyl import AlgebraSignature, PolyElement, WeylElement

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROOT = pathlib.Path(__file__).resolve().parent.parent
SCHEMA_DIR = ROOT / "docs" / "schemas"

SIGNATURES = [AlgebraSignature(n, p) for n in (1, 2) for p in (2, 3, 5)]


@st.composite
def monomials(draw, sig, max_degree=4):
    d = draw(st.integers(0, max_degree))
    slots = draw(st.lists(st.integers(0, sig.nvars - 1), min_size=d, max_size=d))
    m = [0] * sig.nvars
    for s in slots:
        m[s] += 1
    return tuple(m)


@st.composite
def elements(draw, sig=None, cls=WeylElement, max_degree=4, max_terms=4, nonzero=False):
    if sig is None:
        sig = draw(st.sampled_from(SIGNATURES))
    terms = draw(st.dictionaries(monomials(sig, max_degree), st.integers(0, sig.p - 1),
                                 max_size=max_terms))
    e = cls(sig, terms)
    if nonzero and not e:
        e = cls.one(sig)
    return e


@st.composite
def element_tuples(draw, k, cls=WeylElement, max_degree=4, max_terms=4, nonzero=False):
    sig = draw(st.sampled_from(SIGNATURES))
    return tuple(draw(elements(sig, cls, max_degree, max_terms, nonzero)) for _ in range(k))


@pytest.fixture(scope="session")
def schema_registry():
    from referencing import Registry, Resource

    resources = []
    for path in SCHEMA_DIR.glob("*.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


@pytest.fixture(scope="session")
def validate(schema_registry):
    import jsonschema

    def check(name, instance):
        schema = json.loads((SCHEMA_DIR / f"{name}.json").read_text())
        jsonschema.Draft202012Validator(schema, registry=schema_registry).validate(instance)

    return check
