import pytest

from ydforge.catalog import build_sweedler, golden_cells
from ydforge.coqt import braiding_bicomodule, check_br_axioms, check_ybe
from ydforge.hopf_core import check_bialgebra, check_hopf, multiply
from ydforge.matched_pairs import (
    ActionTensor,
    action_from_dict,
    action_to_dict,
    actions_from_braiding,
    actions_from_R,
    actions_from_comodule_braiding,
    braiding_from_actions,
    check_colinearity_equivalences,
    check_matched_pair,
    check_mp3_counterexample,
    double_cross_product,
    extract_actions,
    trivial_actions,
)


def _act(entry, action, row, col):
    return action.act_vec(entry.element(row), entry.element(col))


@pytest.mark.parametrize("table", ["left_action", "right_action"])
def test_sweedler_action_tables(h4, h4_actions, table):
    action = h4_actions[0] if table == "left_action" else h4_actions[1]
    cells = golden_cells(h4, table)
    assert len(cells) == 16
    for cell in cells:
        assert _act(h4, action, cell.row, cell.col) == cell.expected, (cell.row, cell.col)


def test_sweedler_actions_form_a_matched_pair(h4, h4_actions):
    report = check_matched_pair(h4.hopf, *h4_actions, require_star=True, require_mp5=True)
    assert report.passed, report.failed()


def test_trivial_actions_fail_only_star(h4):
    H = h4.hopf
    report = check_matched_pair(H, *trivial_actions(H), require_star=True, require_mp5=True)
    assert report.failed() == ["star"]
    assert report["star"].witness_labels(H) == ["g", "x"]


@pytest.mark.parametrize("k", ["k", 0])
def test_comodule_braiding_actions_break_mp3(k):
    entry = build_sweedler(k)
    H = entry.hopf
    report = check_mp3_counterexample(H, entry.R)
    assert report.flags["mp3_differs"]
    assert not report["mp.3"].passed
    # a⇀(bc) against (a1⇀b1)((a2↼b2)⇀c) at a = b = c = g: 1 on the left, -1 on the right
    left, right = actions_from_comodule_braiding(H, entry.R)
    g = H.index("g")
    lhs = left.act_vec({g: H.field.one}, H.product(g, g))
    rhs = {}
    for (a1, a2), ca in H.comul[g].items():
        for (b1, b2), cb in H.comul[g].items():
            for r, v in multiply(H, left.act(a1, b1), left.act_vec(right.act(a2, b2), {g: H.field.one})).items():
                rhs[r] = rhs.get(r, H.field.zero) + ca * cb * v
    assert lhs == {H.index("1"): H.field.one}
    assert rhs == {H.index("1"): -H.field.one}


def _lemma_truth(H, left, right):
    sigma = braiding_from_actions(H, left, right)
    br = check_br_axioms(H, sigma)
    br_ok = all(br[name].passed for name in ("br.1", "br.2", "br.3", "br.4"))
    mp = check_matched_pair(H, left, right)
    mp_ok = all(mp[name].passed for name in ("mp.1", "mp.2", "mp.3", "mp.4"))
    return br_ok, mp_ok


def test_braiding_axioms_iff_matched_pair(h4, h4_actions):
    H = h4.hopf
    assert _lemma_truth(H, *h4_actions) == (True, True)
    left, right = h4_actions
    g, x = H.index("g"), H.index("x")
    values = dict(left.values)
    values[(g, x)] = {x: H.field.one}  # the correct value is -x
    corrupted = ActionTensor(H, "left", values)
    assert _lemma_truth(H, corrupted, right) == (False, False)


def test_colinearity_conditions_share_a_truth_value(h4, h4_actions, c2, dual_s3, e2):
    for entry, actions in ((h4, h4_actions), (c2, None), (dual_s3, None), (e2, None)):
        if actions is None:
            actions = actions_from_R(entry.hopf, entry.R)
        report = check_colinearity_equivalences(entry.hopf, *actions)
        assert report.flags["equivalent"], (entry.name, report.failed())


def test_actions_round_trip_through_braiding(h4, h4_actions):
    H = h4.hopf
    sigma = braiding_bicomodule(H, h4.R)
    left, right = actions_from_braiding(H, sigma)
    assert left.equals(h4_actions[0]) and right.equals(h4_actions[1])
    rebuilt = braiding_from_actions(H, left, right)
    assert rebuilt.equals(sigma)
    assert extract_actions(H, rebuilt)[0].equals(left)


def test_double_cross_product_is_a_16_dimensional_hopf_algebra(h4, h4_actions):
    D = double_cross_product(h4.hopf, *h4_actions)
    assert D.dim == 16
    assert check_bialgebra(D).passed
    assert check_hopf(D).passed


def test_action_json_round_trip(h4, h4_actions):
    for act in h4_actions:
        assert action_from_dict(h4.hopf, action_to_dict(act)).equals(act)


def test_ybe_holds_for_sweedler(h4):
    assert check_ybe(h4.hopf, h4.R).passed
