import pytest

from antiham import Digraph, OrientedWalk, TwoFactorCert, gen_complete, verify_two_factor, verify_walk

C4 = Digraph(4, [(0, 1), (2, 1), (2, 3), (0, 3)])


def test_accepts_anti_directed_cycle():
    w = OrientedWalk.alternating([0, 1, 2, 3], "cycle")
    v = verify_walk(C4, w, anti_directed=True, spanning=True)
    assert v and v.reason is None


@pytest.mark.parametrize("walk,flags,reason", [
    (OrientedWalk((0, 1, 2, 4), (True, False, True, False), "cycle"), {}, "out of range"),
    (OrientedWalk((0, 1, 0, 3), (True, False, True, False), "cycle"), {}, "repeated"),
    (OrientedWalk((0, 1), (True, False), "cycle"), {}, "at least 3"),
    (OrientedWalk((0, 1, 2, 3), (True, True, True, True), "cycle"), {}, "missing arc"),
    (OrientedWalk((0, 1, 2), (True, False), "path"), {"spanning": True}, "covers 3 of 4"),
    (OrientedWalk((0, 1, 2), (True, False), "path"), {"proper": True}, "even number"),
    (OrientedWalk((1, 2, 3, 0), (False, True, False), "path"), {"proper": True}, "forward"),
    (OrientedWalk((0, 1, 2, 3), (True, False, True, False), "cycle"), {"proper": True}, "paths only"),
    (OrientedWalk((0, 1, 2, 3), (True, False, True, False), "cycle"), {"directed": True}, "not directed"),
])
def test_rejections_name_the_predicate(walk, flags, reason):
    v = verify_walk(C4, walk, **flags)
    assert not v and reason in v.reason


def test_directed_path_is_not_anti_directed():
    D = gen_complete(4)
    w = OrientedWalk.directed([0, 1, 2, 3], "path")
    assert verify_walk(D, w)
    assert not verify_walk(D, w, anti_directed=True)
    odd = OrientedWalk.alternating([0, 1, 2], "cycle")
    assert "even length" in verify_walk(D, odd, anti_directed=True).reason


def test_two_factor_verdicts():
    D = gen_complete(8)
    a = OrientedWalk.alternating([0, 1, 2, 3], "cycle")
    b = OrientedWalk.alternating([4, 5, 6, 7], "cycle")
    assert verify_two_factor(D, TwoFactorCert((a, b)))
    assert "not covered" in verify_two_factor(D, TwoFactorCert((a,))).reason
    assert "reuses" in verify_two_factor(D, TwoFactorCert((a, a))).reason
    p = OrientedWalk.alternating([4, 5, 6, 7], "path")
    assert "not a cycle" in verify_two_factor(D, TwoFactorCert((a, p))).reason
