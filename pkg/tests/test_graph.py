import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wugnet.graph import (
    ACTION,
    ATTRIBUTE,
    CATEGORY,
    IS,
    OBJECT,
    SLOT1,
    SLOT2,
    ConceptNetwork,
    EdgeRuleError,
    NetworkFormatError,
    diff_networks,
    network_from_text,
    network_to_text,
)


@pytest.fixture
def net():
    return ConceptNetwork()


def test_add_concept_is_idempotent(net):
    a = net.add_concept("bird", OBJECT)
    b = net.add_concept("bird", OBJECT)
    assert a is b
    assert len(net) == 1


def test_same_name_different_kind_is_a_new_node(net):
    obj = net.add_concept("chicken", OBJECT)
    cat = net.add_concept("chicken", CATEGORY)
    assert obj != cat
    assert len(net) == 2


def test_category_node_starts_with_no_members(net):
    animal = net.add_concept("animal", CATEGORY)
    assert net.members_of(animal) == []


@pytest.mark.parametrize("bad", ["", "Bird", "b!rd", "3dogs", "two words"])
def test_malformed_names_rejected(net, bad):
    with pytest.raises(ValueError):
        net.add_concept(bad, OBJECT)


def test_unknown_kind_rejected(net):
    with pytest.raises(ValueError):
        net.add_concept("bird", "thing")


def test_observation_strengths_plateau(net):
    cookie = net.add_concept("cookie", OBJECT)
    green = net.add_concept("green", ATTRIBUTE)
    assert net.observe_association(cookie, green, IS) == pytest.approx(0.2)
    assert net.observe_association(cookie, green, IS) == pytest.approx(0.36)
    assert net.observe_association(cookie, green, IS) == pytest.approx(0.488)


def test_closed_form_matches_iterated_update(net):
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    expected = 0.0
    for k in range(1, 51):
        got = net.observe_association(a, b, IS)
        expected = expected + 0.2 * (1.0 - expected)  # independent replay
        assert got == expected
        assert abs(got - (1.0 - 0.8 ** k)) < 1e-12


def test_learning_rate_is_configurable():
    net = ConceptNetwork(learning_rate=0.5)
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    assert net.observe_association(a, b, IS) == pytest.approx(0.5)
    assert net.observe_association(a, b, IS) == pytest.approx(0.75)


def test_observation_is_a_fixed_point_at_one(net):
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    net.set_strength(a, b, IS, 1.0)
    assert net.observe_association(a, b, IS) == 1.0


def test_assert_generic_maximizes_and_sticks(net):
    a = net.add_concept("watermelon", OBJECT)
    g = net.add_concept("green", ATTRIBUTE)
    net.observe_association(a, g, IS)
    assert net.get_strength(a, g, IS) == pytest.approx(0.2)
    assert net.assert_generic(a, g, IS) == 1.0
    assert net.assert_generic(a, g, IS) == 1.0
    assert net.observe_association(a, g, IS) == 1.0
    assert net.edge(a, g, IS).generic_origin


def test_generic_from_zero(net):
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", CATEGORY)
    assert net.assert_generic(a, b, IS) == 1.0


def test_label_kind_validation(net):
    obj = net.add_concept("ball", OBJECT)
    color = net.add_concept("red", ATTRIBUTE)
    verb = net.add_concept("roll", ACTION)
    with pytest.raises(EdgeRuleError):
        net.observe_association(obj, color, SLOT1)
    with pytest.raises(EdgeRuleError):
        net.observe_association(obj, obj, IS)
    with pytest.raises(EdgeRuleError):
        net.assert_generic(obj, verb, IS)
    # the valid pairings
    net.observe_association(obj, verb, SLOT2)
    net.observe_association(obj, color, IS)


def test_get_strength_missing_edge_is_zero(net):
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    assert net.get_strength(a, b, IS) == 0.0


def test_neighbors_sorted_and_empty_for_fresh_node(net):
    bird = net.add_concept("bird", OBJECT)
    assert net.neighbors(bird) == []
    fly = net.add_concept("fly", ACTION)
    animal = net.add_concept("animal", CATEGORY)
    net.assert_generic(bird, animal, IS)
    net.observe_association(bird, fly, SLOT1)
    targets = [(t.name, label) for t, label, _ in net.neighbors(bird)]
    assert targets == [("animal", IS), ("fly", SLOT1)]


def test_members_of_collects_is_edges(net):
    animal = net.add_concept("animal", CATEGORY)
    for name in ("dog", "cat"):
        net.assert_generic(net.add_concept(name, OBJECT), animal, IS)
    assert [m.name for m in net.members_of(animal)] == ["cat", "dog"]


def test_members_of_rejects_non_category(net):
    dog = net.add_concept("dog", OBJECT)
    with pytest.raises(ValueError):
        net.members_of(dog)


def test_shared_node_appears_in_both_categories(net):
    chicken = net.add_concept("chicken", OBJECT)
    animal = net.add_concept("animal", CATEGORY)
    food = net.add_concept("food", CATEGORY)
    net.assert_generic(chicken, animal, IS)
    net.assert_generic(chicken, food, IS)
    assert chicken in net.members_of(animal)
    assert chicken in net.members_of(food)


def test_set_strength_validates(net):
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    with pytest.raises(ValueError):
        net.set_strength(a, b, IS, 1.5)
    with pytest.raises(ValueError):
        net.set_strength(a, b, IS, 0.5, generic=True)


# -- persistence ---------------------------------------------------------

def test_empty_network_round_trips():
    net = ConceptNetwork()
    assert network_from_text(network_to_text(net)) == net


def test_small_network_round_trips_losslessly(net):
    cookie = net.add_concept("cookie", OBJECT)
    green = net.add_concept("green", ATTRIBUTE)
    animal = net.add_concept("animal", CATEGORY)
    net.observe_association(cookie, green, IS)
    net.observe_association(cookie, green, IS)
    net.assert_generic(cookie, animal, IS)
    loaded = network_from_text(network_to_text(net))
    assert loaded == net
    c2 = loaded.require("cookie", OBJECT)
    g2 = loaded.require("green", ATTRIBUTE)
    assert loaded.get_strength(c2, g2, IS) == net.get_strength(cookie, green, IS)


def test_truncated_edge_line_reports_position():
    text = "conceptnet v1\nnode object cookie\nedge object/cookie is\n"
    with pytest.raises(NetworkFormatError) as err:
        network_from_text(text)
    assert err.value.line == 3


@pytest.mark.parametrize("text,line", [
    ("node object cookie\n", 1),                      # missing header
    ("conceptnet v1\nnode widget cookie\n", 2),       # unknown kind
    ("conceptnet v1\nnoise\n", 2),                    # unknown line type
    ("conceptnet v1\nnode object a\nnode object a\n", 3),
    ("conceptnet v1\nedge object/a is attribute/b 0.5 generic:0\n", 2),
])
def test_malformed_files_name_the_line(text, line):
    with pytest.raises(NetworkFormatError) as err:
        network_from_text(text)
    assert err.value.line == line


def test_comments_and_blank_lines_ignored():
    text = "# saved network\nconceptnet v1\n\nnode object dog\n# trailing\n"
    net = network_from_text(text)
    assert net.get("dog", OBJECT) is not None


def test_diff_networks_reports_weight_changes(net):
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    net.observe_association(a, b, IS)
    other = net.copy()
    assert diff_networks(net, other) == []
    other.assert_generic(a, b, IS)
    changes = diff_networks(net, other)
    assert len(changes) == 1 and changes[0].startswith("~edge object/a is attribute/b")


# -- properties ----------------------------------------------------------

@given(st.integers(min_value=1, max_value=60))
def test_monotone_convergence(k):
    net = ConceptNetwork()
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    prev = 0.0
    for _ in range(k):
        w = net.observe_association(a, b, IS)
        assert prev < w <= 1.0
        prev = w
    assert abs(prev - (1.0 - 0.8 ** k)) < 1e-12


@settings(max_examples=50)
@given(st.lists(st.sampled_from(["observe", "generic"]), min_size=1, max_size=40))
def test_weights_stay_in_bounds_under_any_interleaving(ops):
    net = ConceptNetwork()
    a = net.add_concept("a", OBJECT)
    b = net.add_concept("b", ATTRIBUTE)
    saw_generic = False
    for op in ops:
        if op == "observe":
            w = net.observe_association(a, b, IS)
        else:
            w = net.assert_generic(a, b, IS)
            saw_generic = True
        assert 0.0 <= w <= 1.0
        if saw_generic:
            assert net.get_strength(a, b, IS) == 1.0


@settings(max_examples=30)
@given(st.lists(
    st.tuples(st.sampled_from(["observe", "generic"]),
              st.sampled_from(["a", "b", "c"]),
              st.sampled_from(["x", "y"])),
    max_size=30))
def test_identical_op_sequences_build_identical_networks(ops):
    nets = []
    for _ in range(2):
        net = ConceptNetwork()
        srcs = {n: net.add_concept(n, OBJECT) for n in ("a", "b", "c")}
        dsts = {n: net.add_concept(n, ATTRIBUTE) for n in ("x", "y")}
        for op, s, d in ops:
            if op == "observe":
                net.observe_association(srcs[s], dsts[d], IS)
            else:
                net.assert_generic(srcs[s], dsts[d], IS)
        nets.append(net)
    assert nets[0] == nets[1]
