import json

import pytest
from hypothesis import given, settings, strategies as st

from mpareto.errors import InstanceError, ParameterError
from mpareto.instances import (
    dumps, from_document, gen_gmatroid, gen_matroid_linear, gen_separable, loads, read_instance,
    regenerate, to_document, write_instance,
)
from mpareto.functions import enumerate_dom
from mpareto.instances import build_oracle
from mpareto.rng import SplitMix64
from mpareto.verifiers import verify_gmatroid

from conftest import FIXTURES


def test_splitmix_reference_values():
    # first outputs for seed 0 of the reference SplitMix64
    rng = SplitMix64(0)
    assert [rng.next_u64() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F]


def test_randint_range():
    rng = SplitMix64(7)
    draws = [rng.randint(2, 4) for _ in range(200)]
    assert set(draws) == {2, 3, 4}


def test_generator_examples():
    assert len(gen_matroid_linear(1, 3, 2).objective.bases) == 3
    inst = gen_matroid_linear(1, 3, matroid="partition", blocks=[[0, 1], [2]], quotas=[1, 1])
    assert inst.objective.bases == ((0, 2), (1, 2))
    assert gen_matroid_linear(5, 4, 2, b_density=0.0).b == (0, 0, 0, 0)
    assert len(enumerate_dom(build_oracle(gen_separable(3, 3, 0)))) == 1
    full = gen_separable(1, 2, 2, mode="range", r_lo=0, r_hi=4)
    assert len(enumerate_dom(build_oracle(full))) == 9


def test_gmatroid_sources():
    ind = gen_gmatroid(1, 3, 1, source="independent", r=2)
    assert len(ind.family) == 7 and () in ind.family
    win = gen_gmatroid(1, 4, 2, source="window", lam=[1, 0], xi=[2, 1])
    assert verify_gmatroid(win.family, 4).passed


@pytest.mark.parametrize("call", [
    lambda: gen_matroid_linear(1, 3, 5),
    lambda: gen_matroid_linear(1, 13, 2),
    lambda: gen_separable(1, 7, 1),
    lambda: gen_separable(1, 2, 1, mode="eq", r=9),
    lambda: gen_gmatroid(1, 4, 5),
])
def test_bad_parameters(call):
    with pytest.raises(ParameterError):
        call()


def _any_instance(seed):
    k = seed % 3
    if k == 0:
        return gen_matroid_linear(seed, 2 + seed % 6, 1 + seed % 2, matroid="partition" if seed % 2 else "uniform")
    if k == 1:
        return gen_separable(seed, 1 + seed % 4, seed % 4, mode="range" if seed % 2 else "eq", extra_linear=seed % 5 == 0)
    return gen_gmatroid(seed, 2 + seed % 6, 1 + seed % 2, source=["bases", "independent", "window"][seed % 3])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 1_000_000))
def test_round_trip_and_regeneration(seed):
    inst = _any_instance(seed)
    assert loads(dumps(inst)) == inst
    assert dumps(regenerate(inst)) == dumps(inst)
    assert dumps(_any_instance(seed)) == dumps(inst)


def test_write_read(tmp_path):
    inst = gen_matroid_linear(3, 4, 2)
    write_instance(inst, tmp_path / "x.json")
    assert read_instance(tmp_path / "x.json") == inst


def test_fixture_round_trip():
    for path in FIXTURES.glob("*.json"):
        assert dumps(read_instance(path)) == path.read_text()


def _doc(name):
    return json.loads((FIXTURES / f"{name}.json").read_text())


def test_field_path_errors():
    doc = _doc("inst_b")
    del doc["b"]
    with pytest.raises(InstanceError, match=r"^b: required"):
        from_document(doc)
    doc = _doc("inst_c")
    doc["categories"]["of"][2] = 7
    with pytest.raises(InstanceError, match=r"categories\.of\[2\]"):
        from_document(doc)
    doc = _doc("inst_c")
    doc["family"][0] = [0, 9]
    with pytest.raises(InstanceError, match=r"family\[0\]\[1\]"):
        from_document(doc)


def test_schema_version_rejected():
    doc = _doc("inst_a")
    doc["schema_version"] = "2"
    with pytest.raises(InstanceError, match="schema_version"):
        from_document(doc)


def test_parse_error_position():
    with pytest.raises(InstanceError, match="line 2 column"):
        loads('{\n  "kind": }')


def test_canonical_serialization():
    text = dumps(gen_matroid_linear(2, 3, 2))
    assert text.endswith("\n") and ": " not in text
    assert text == json.dumps(to_document(loads(text)), sort_keys=True, separators=(",", ":")) + "\n"
