import json
import random
from fractions import Fraction

import pytest

from svq.config import (
    Configuration,
    ConfigurationError,
    Labeling,
    SurfaceSurgery,
    combined_m,
    configuration_from_json,
    configuration_from_text,
    configuration_to_json,
    count_labelings,
    labeling_count,
    m_c,
    m_s,
    m_t,
)
from svq.families import enumerate_principal, to_configuration
from svq.strata import AbelianStratum, BoundaryStratum, QuadStratum, principal

from synth import random_configuration

Q3 = principal(3, 3)


def cfg(**kw):
    base = dict(ambient=Q3, boundary=BoundaryStratum((principal(2, 2),)), q1=1)
    base.update(kw)
    return Configuration(**base)


def test_m_c():
    assert m_c(cfg(graph_type_a=True)) == 4
    assert m_c(cfg()) == 16
    three = Configuration(ambient=Q3, boundary=BoundaryStratum((QuadStratum([-1] * 4),)), q1=3)
    assert m_c(three) == 256


def test_m_t():
    assert m_t(cfg()) == 1
    assert m_t(cfg(q1=0, q2=1, thick_symmetry_orders=(1,))) == 1
    two_thick = Configuration(ambient=Q3, boundary=BoundaryStratum((QuadStratum([2, -1, -1]),)), q2=2,
                              thick_symmetry_orders=(2, 2))
    assert m_t(two_thick) == 4


def test_m_s_torus_with_two_rays():
    # the configuration C3 of Q(1^3, -1^3): the torus boundary H(0) has trivial holonomy
    c = Configuration(
        ambient=Q3,
        boundary=BoundaryStratum((QuadStratum([-1] * 4), AbelianStratum([0]))),
        q2=1,
        thick_symmetry_orders=(1,),
        surgery=(SurfaceSurgery("nontrivial", (1,)), SurfaceSurgery("trivial", (2,))),
        gamma_factors=(1, 2),
    )
    assert m_s(c) == 1
    assert combined_m(c) == 16


def test_m_s_hyperelliptic_analog():
    for k1, k2 in [(1, 3), (3, 5), (2, 4)]:
        surg = SurfaceSurgery("nontrivial", (k1, k2))
        assert surg.k_factor() == k1 * k2
    assert SurfaceSurgery("trivial", (2, 4)).k_factor() == 2 * 1 * 2
    assert SurfaceSurgery("trivial", (1,)).k_factor() == 1


def test_all_principal_configurations_have_unit_m_s():
    for k, l in [(3, 3), (4, 4), (5, 1), (5, 5), (6, 2), (7, 3)]:
        for pc in enumerate_principal(k, l):
            c = to_configuration(pc)
            assert m_s(c) == 1
            expected_m = {"C1": 4, "C2": 16, "C3": 16, "C4": 16}[pc.family]
            assert combined_m(c) == expected_m


def test_count_labelings_worked_example():
    amb = QuadStratum([9, 9, 2, 2, -1, -1])
    lab = Labeling(((-1, -1, 9), (9, 2)), ((2,),), symmetry_halving=True)
    assert labeling_count(amb, lab) == 2


def test_count_labelings_families():
    for k, l in [(3, 3), (4, 4), (5, 5), (6, 2)]:
        for pc in enumerate_principal(k, l):
            assert count_labelings(to_configuration(pc)) == pc.multiplicity
        c2 = next(pc for pc in enumerate_principal(k, l) if pc.family == "C2")
        assert c2.multiplicity == Fraction(k * (k - 1), 2)


def test_count_labelings_distinct_orders():
    amb = QuadStratum([6, 3, 2, 1])
    lab = Labeling(((6, 3), (2,)), ((1,),))
    assert labeling_count(amb, lab) == 1


def test_labeling_must_partition_ambient():
    with pytest.raises(ConfigurationError):
        labeling_count(Q3, Labeling(((1, 1),), ((1, -1, -1),)))


def test_overrides():
    c = cfg(m_s_override="3/2", n_override=5, gamma_override=2)
    assert m_s(c) == Fraction(3, 2)
    assert count_labelings(c) == 5
    with pytest.raises(ConfigurationError):
        m_s(cfg())
    with pytest.raises(ConfigurationError):
        count_labelings(cfg())


def test_validation():
    with pytest.raises(ConfigurationError):
        cfg(q1=0)
    with pytest.raises(ConfigurationError):
        cfg(q1=2)  # dimension bookkeeping
    with pytest.raises(ConfigurationError):
        cfg(q1=0, q2=1, thick_symmetry_orders=(3,))
    with pytest.raises(ConfigurationError):
        cfg(q1=0, q2=1)
    with pytest.raises(ConfigurationError):
        cfg(gamma_factors=(3,))
    with pytest.raises(ConfigurationError):
        cfg(surgery=(SurfaceSurgery("nontrivial", (1,)),) * 2)
    with pytest.raises(ConfigurationError):
        SurfaceSurgery("twisted", (1,))
    with pytest.raises(ConfigurationError):
        cfg(m_s_override=0)
    empty = dict(ambient=QuadStratum([2, 2]), boundary=BoundaryStratum(), q1=3)
    Configuration(**empty)
    with pytest.raises(ConfigurationError):
        Configuration(**empty, m_s_override=1)
    with pytest.raises(ConfigurationError):
        Configuration(**empty, surgery=(SurfaceSurgery("nontrivial", (1,)),))


def test_random_configurations_satisfy_bookkeeping():
    rnd = random.Random(7)
    for _ in range(300):
        c = random_configuration(rnd)
        assert c.ambient.dim - c.boundary.dim == c.q + 1


def test_constants_multiplicative_over_unions():
    rnd = random.Random(11)
    for _ in range(100):
        a = [SurfaceSurgery(rnd.choice(("trivial", "nontrivial")), (rnd.randint(1, 5),)) for _ in range(rnd.randint(1, 3))]
        b = [SurfaceSurgery(rnd.choice(("trivial", "nontrivial")), (rnd.randint(1, 5), rnd.randint(1, 5)))
             for _ in range(rnd.randint(1, 3))]

        def k(ss):
            out = Fraction(1)
            for s in ss:
                out *= s.k_factor()
            return out

        assert k(a + b) == k(a) * k(b)
    for q, q_ in [(1, 2), (2, 3)]:
        assert 4 ** (q + q_) == 4 ** q * 4 ** q_


def test_twice_labelings_is_integer():
    rnd = random.Random(3)
    for _ in range(200):
        orders = [rnd.choice((-1, 1, 2, 3, 5)) for _ in range(rnd.randint(1, 7))]
        while sum(orders) % 4 or sum(orders) < -4:
            orders.append(-1 if sum(orders) % 4 else 1)
        amb = QuadStratum(orders)
        groups = [[] for _ in range(rnd.randint(1, 4))]
        for o in amb.orders:
            rnd.choice(groups).append(o)
        split = rnd.randint(0, len(groups))
        lab = Labeling(tuple(map(tuple, groups[:split])), tuple(map(tuple, groups[split:])), rnd.random() < 0.5)
        n = labeling_count(amb, lab)
        assert n > 0 and (2 * n).denominator == 1
        if not lab.symmetry_halving:
            assert n.denominator == 1


def test_json_round_trip():
    for k, l in [(3, 3), (5, 1), (4, 4)]:
        for pc in enumerate_principal(k, l):
            c = to_configuration(pc)
            text = json.dumps(configuration_to_json(c))
            assert configuration_from_text(text) == c
    c = cfg(m_s_override="3/2", n_override=5, gamma_override=2, name="x")
    assert configuration_from_json(configuration_to_json(c)) == c


@pytest.mark.parametrize(
    "doc",
    [
        {"ambient": "1,1,1,-1,-1,-1"},
        {"ambient": "1,1,1,-1,-1,-1", "boundary": [], "q1": 1, "bogus": 0},
        {"ambient": "1,1,1,-1,-1,-1", "boundary": [{"kind": "cubic", "stratum": "0"}], "q1": 1},
        {"ambient": "1,1", "boundary": [], "q1": 1},
        {"ambient": "1,1,-1,-1", "boundary": [{"kind": "quadratic", "stratum": "-1,-1,-1,-1"}], "q1": 1, "M_s": 1.5},
        {"ambient": "1,1,-1,-1", "boundary": "none", "q1": 1},
    ],
)
def test_json_strict(doc):
    with pytest.raises(ConfigurationError):
        configuration_from_json(doc)
    with pytest.raises(ConfigurationError):
        configuration_from_text("{not json")
