from __future__ import annotations

from fractions import Fraction

import pytest

from maxminlp import (
    Assignment,
    GeneratorParams,
    InputError,
    ParseError,
    builtin_instance,
    degree_bounds,
    parse_assignment,
    parse_instance,
    random_instance,
    serialize_assignment,
    serialize_instance,
    validate,
)

PRELIM_TEXT = """\
maxmin 1
agent 1
agent 2
agent 3
agent 4
agent 5
party k1 : 1
party k2 : 2 3
resource i1 : 1 2
resource i2 : 1 3
resource i3 : 3 4
resource i4 : 4 5
"""


def test_parse_prelim_counts():
    inst = parse_instance(PRELIM_TEXT)
    assert len(inst.agents) == 5
    assert len(inst.parties) == 2
    assert len(inst.resources) == 4


def test_parse_accepts_comments_and_blanks():
    text = "# heading\n\nmaxmin 1\nagent a  # trailing\nparty k : a\nresource i : a\n"
    inst = parse_instance(text)
    assert inst.agents == ("a",)


def test_parse_empty_input():
    with pytest.raises(ParseError, match="no header"):
        parse_instance("")


def test_parse_missing_header():
    with pytest.raises(ParseError, match="header"):
        parse_instance("agent a\n")


def test_parse_undeclared_reference():
    text = "maxmin 1\nagent a\nparty k1 : v9\nresource i : a\n"
    with pytest.raises(ParseError, match="v9"):
        parse_instance(text)


def test_parse_duplicate_agent():
    with pytest.raises(ParseError, match="twice"):
        parse_instance("maxmin 1\nagent a\nagent a\n")


def test_parse_duplicate_party_id():
    text = "maxmin 1\nagent a\nparty k : a\nparty k : a\nresource i : a\n"
    with pytest.raises(ParseError, match="twice"):
        parse_instance(text)


def test_parse_duplicate_member():
    with pytest.raises(ParseError, match="duplicate"):
        parse_instance("maxmin 1\nagent a\nparty k : a a\n")


def test_parse_bad_id():
    with pytest.raises(ParseError, match="bad id"):
        parse_instance("maxmin 1\nagent a!\n")


def test_parse_reports_line_numbers():
    try:
        parse_instance("maxmin 1\nagent a\nparty k :\n")
    except ParseError as exc:
        assert exc.line == 3
    else:
        pytest.fail("expected ParseError")


def test_serialize_parse_round_trip_builtins():
    for name in ("isp", "prelim"):
        inst = builtin_instance(name)
        assert parse_instance(serialize_instance(inst)) == inst


def test_serialize_is_canonical():
    inst = parse_instance(PRELIM_TEXT)
    text = serialize_instance(inst)
    assert text == PRELIM_TEXT
    assert serialize_instance(parse_instance(text)) == text


def test_serialize_deterministic(prelim):
    assert serialize_instance(prelim) == serialize_instance(prelim)


def test_serialize_orders_members_by_declaration():
    text = "maxmin 1\nagent b\nagent a\nparty k : a b\nresource i : a b\n"
    inst = parse_instance(text)
    assert inst.parties["k"] == ("b", "a")
    assert "party k : b a" in serialize_instance(inst)


def test_builtin_counts():
    isp = builtin_instance("isp")
    assert (len(isp.agents), len(isp.parties), len(isp.resources)) == (14, 7, 5)
    prelim = builtin_instance("prelim")
    assert (len(prelim.agents), len(prelim.parties), len(prelim.resources)) == (5, 2, 4)


def test_builtin_unknown_name():
    with pytest.raises(InputError, match="nope"):
        builtin_instance("nope")


def _params(seed: int, **overrides) -> GeneratorParams:
    fields = dict(
        n_agents=20,
        max_vi=4,
        max_vk=2,
        max_iv=2,
        max_kv=1,
        n_parties=16,
        n_resources=20,
        seed=seed,
    )
    fields.update(overrides)
    return GeneratorParams(**fields)


def test_random_instance_deterministic():
    assert random_instance(_params(7)) == random_instance(_params(7))


def test_random_instance_singleton():
    inst = random_instance(
        GeneratorParams(
            n_agents=1, max_vi=1, max_vk=1, max_iv=1, max_kv=1,
            n_parties=1, n_resources=1, seed=3,
        )
    )
    assert inst.agents == ("v1",)
    assert list(inst.parties.values()) == [("v1",)]
    assert list(inst.resources.values()) == [("v1",)]


def test_random_instance_respects_caps():
    inst = random_instance(_params(11))
    bounds = degree_bounds(inst)
    assert bounds.delta_vk <= 2
    assert bounds.delta_vi <= 4
    assert bounds.delta_iv <= 2
    assert bounds.delta_kv <= 1


def test_random_instances_valid_over_many_seeds():
    # 1000 seeds: always valid, always within the requested caps.
    for seed in range(1000):
        inst = random_instance(_params(seed, n_agents=1 + seed % 25))
        assert validate(inst) == []
        bounds = degree_bounds(inst)
        assert bounds.delta_vi <= 4 and bounds.delta_vk <= 2
        assert bounds.delta_iv <= 2 and bounds.delta_kv <= 1


def test_parse_serialize_identity_random_instances():
    for seed in range(50):
        inst = random_instance(_params(seed + 500, n_agents=1 + seed % 15))
        assert parse_instance(serialize_instance(inst)) == inst


def test_generator_rejects_bad_params():
    with pytest.raises(InputError):
        GeneratorParams(
            n_agents=0, max_vi=1, max_vk=1, max_iv=1, max_kv=1,
            n_parties=1, n_resources=1, seed=0,
        )
    with pytest.raises(InputError):
        GeneratorParams(
            n_agents=1, max_vi=0, max_vk=1, max_iv=1, max_kv=1,
            n_parties=1, n_resources=1, seed=0,
        )


def test_assignment_round_trip():
    x = Assignment({"a": Fraction(1, 2), "b": 0})
    text = serialize_assignment(x, Fraction(1, 2))
    parsed, omega = parse_assignment(text)
    assert parsed == x
    assert omega == Fraction(1, 2)
    assert "x a 1/2" in text and "x b 0/1" in text and text.endswith("omega 1/2\n")


def test_assignment_rejects_unreduced_rational():
    with pytest.raises(ParseError, match="lowest terms"):
        parse_assignment("x a 2/4\nomega 1/1\n")


def test_assignment_rejects_duplicate_agent():
    with pytest.raises(ParseError, match="twice"):
        parse_assignment("x a 1/2\nx a 1/2\nomega 1/2\n")


def test_assignment_requires_omega():
    with pytest.raises(ParseError, match="omega"):
        parse_assignment("x a 1/2\n")


def test_assignment_rejects_negative():
    with pytest.raises(ParseError, match="negative"):
        parse_assignment("x a -1/2\nomega 0/1\n")
