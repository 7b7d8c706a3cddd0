import pymis


def test_parse_print_roundtrip():
    model = pymis.family("ttc", 2)
    text = str(model)
    again = pymis.Model.parse(text)
    assert str(again) == text


def test_validate_clean():
    ok, messages = pymis.validate(pymis.family("dc1", 3))
    assert ok, messages


def test_unfold_counts():
    unfolding = pymis.unfold(pymis.family("ttc", 1))
    assert unfolding.state_count > 0
    assert unfolding.transition_count >= unfolding.state_count


def test_check_invariant():
    holds, trace = pymis.check_invariant(
        pymis.family("ttc", 2), "not (in_tunnel_1 and in_tunnel_2)"
    )
    assert holds and trace is None
    holds, trace = pymis.check_invariant(
        pymis.family("ttc_sabotaged", 2), "not (in_tunnel_1 and in_tunnel_2)"
    )
    assert not holds and trace


def test_epistemic_anonymity():
    assert pymis.epistemic_check(
        pymis.family("dc1", 3),
        "C_1",
        "counter_done and paid_by_crypto and not paid_1",
        "paid_2",
    )


def test_metrics_and_openness():
    model = pymis.family("ttc", 2)
    assert pymis.interaction_complexity(model) > 0
    assert pymis.global_complexity(model) > 0
    cost, sound = pymis.expansion_cost("dc1", 3)
    assert (cost, sound) == (54, True)


def test_family_names():
    assert pymis.family_names() == ["ttc", "dc1", "dc2", "dc0"]
