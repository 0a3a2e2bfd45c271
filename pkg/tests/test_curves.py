"""Curve configurations, divisor arithmetic and Kodaira recognition."""

import random

import pytest

from k3cert.curves import (
    ConfigError,
    DivisorClass,
    FiberError,
    classify_fiber,
    component_group,
    is_fiber_class,
    kinds_compatible,
    make_config,
    pairing,
    theta_constraints,
)
from k3cert.exactlinalg import det_exact
from k3cert.lattices import discriminant_group, gram_of


def cycle_config(n, prefix="v"):
    names = [f"{prefix}{i}" for i in range(n)]
    meets = [(names[i], names[(i + 1) % n], 1) for i in range(n)]
    return make_config(names, meets), names


def chain_config(names):
    return make_config(names, [(a, b, 1) for a, b in zip(names, names[1:])])


def test_pairing_basics():
    cfg, names = cycle_config(4)
    one = DivisorClass.from_dict(cfg, {names[0]: 1})
    assert pairing(one, one, cfg) == -2
    e = DivisorClass.from_dict(cfg, {n: 1 for n in names})
    assert pairing(e, e, cfg) == 0


def test_config_validation():
    with pytest.raises(ConfigError):
        make_config(["a", "a"], [])
    with pytest.raises(ConfigError):
        make_config(["a", "b"], [("a", "c", 1)])
    with pytest.raises(ConfigError):
        make_config(["a", "b"], [("a", "a", 1)])
    with pytest.raises(ConfigError):
        make_config(["a", "b"], [("a", "b", -1)])


def test_classify_cycles():
    for n in (3, 6, 16):
        cfg, names = cycle_config(n)
        fiber = classify_fiber(cfg, names)
        assert fiber.kind == f"I{n}"
        assert set(fiber.multiplicities.values()) == {1}


def test_classify_double_bond():
    cfg = make_config(["a", "b"], [("a", "b", 2)])
    fiber = classify_fiber(cfg, ["a", "b"])
    assert fiber.kind == "I2/III"
    assert fiber.multiplicities == {"a": 1, "b": 1}
    assert kinds_compatible("I2", fiber.kind)
    assert kinds_compatible("III", fiber.kind)
    assert not kinds_compatible("I3", fiber.kind)


def test_classify_i0star():
    names = ["c", "f1", "f2", "f3", "f4"]
    cfg = make_config(names, [("c", f, 1) for f in names[1:]])
    fiber = classify_fiber(cfg, names)
    assert fiber.kind == "I0*"
    assert fiber.multiplicities["c"] == 2


def test_classify_ibstar_17_chain():
    # D~16 shape: 13-node multiplicity-2 chain with two leaves at each end
    chain = [f"m{i}" for i in range(13)]
    names = chain + ["p1", "p2", "q1", "q2"]
    meets = [(a, b, 1) for a, b in zip(chain, chain[1:])]
    meets += [("p1", "m0", 1), ("p2", "m0", 1), ("q1", "m12", 1), ("q2", "m12", 1)]
    cfg = make_config(names, meets)
    fiber = classify_fiber(cfg, names)
    assert fiber.kind == "I12*"
    mults = sorted(fiber.multiplicities.values())
    assert mults == [1, 1, 1, 1] + [2] * 13


def test_classify_affine_e_shapes():
    # IV*: central node, three arms of length 2
    names = ["c", "a1", "a2", "b1", "b2", "d1", "d2"]
    meets = [("c", "a1", 1), ("a1", "a2", 1), ("c", "b1", 1), ("b1", "b2", 1),
             ("c", "d1", 1), ("d1", "d2", 1)]
    cfg = make_config(names, meets)
    fiber = classify_fiber(cfg, names)
    assert fiber.kind == "IV*"
    assert fiber.multiplicities["c"] == 3
    assert sorted(fiber.multiplicities.values()) == [1, 1, 1, 2, 2, 2, 3]

    # III*: chain of 7 with branch at the middle
    chain = [f"x{i}" for i in range(7)]
    cfg2 = make_config(chain + ["y"],
                       [(a, b, 1) for a, b in zip(chain, chain[1:])] + [("x3", "y", 1)])
    assert classify_fiber(cfg2, chain + ["y"]).kind == "III*"

    # II*: chain of 8 with branch at position 5 (arm lengths 1, 2, 5)
    chain = [f"z{i}" for i in range(8)]
    cfg3 = make_config(chain + ["w"],
                       [(a, b, 1) for a, b in zip(chain, chain[1:])] + [("z5", "w", 1)])
    fiber = classify_fiber(cfg3, chain + ["w"])
    assert fiber.kind == "II*"
    assert max(fiber.multiplicities.values()) == 6


def test_classify_rejects_non_fibers():
    cfg = chain_config(["a", "b", "c"])
    with pytest.raises(FiberError):
        classify_fiber(cfg, ["a", "b", "c"])  # A3 chain: negative definite
    cfg2 = make_config(["a", "b"], [])
    with pytest.raises(FiberError):
        classify_fiber(cfg2, ["a", "b"])  # disconnected


def test_classify_permutation_invariant():
    rng = random.Random(7)
    cfg, names = cycle_config(8)
    for _ in range(10):
        shuffled = names[:]
        rng.shuffle(shuffled)
        assert classify_fiber(cfg, shuffled).kind == "I8"


def test_is_fiber_class():
    cfg, names = cycle_config(6)
    e = DivisorClass.from_dict(cfg, {n: 1 for n in names})
    ok, fiber, _ = is_fiber_class(e, cfg)
    assert ok and fiber.kind == "I6"
    ok2, _, diag2 = is_fiber_class(e.scale(2), cfg)
    assert not ok2 and "multiplicity" in diag2
    chain3 = chain_config(["a", "b", "c"])
    bad = DivisorClass.from_dict(chain3, {"a": 1, "b": 1, "c": 1})
    ok3, _, diag3 = is_fiber_class(bad, chain3)
    assert not ok3 and "-2" in diag3


def test_component_groups():
    assert component_group(_fiber("I6")) == [6]
    assert component_group(_fiber("I2/III")) == [2]
    assert component_group(_fiber("II*")) == []
    assert component_group(_fiber("III*")) == [2]
    assert component_group(_fiber("IV*")) == [3]
    assert component_group(_fiber("I6*")) == [2, 2]
    assert component_group(_fiber("I7*")) == [4]


def _fiber(kind):
    from k3cert.curves import KodairaFiber
    return KodairaFiber(kind, {})


@pytest.mark.parametrize("kind,root", [
    ("I6", "A5"), ("I4", "A3"), ("II*", "E8"), ("III*", "E7"),
    ("IV*", "E6"), ("I0*", "D4"), ("I2*", "D6"), ("I12*", "D16"),
])
def test_component_group_order_matches_root_discriminant(kind, root):
    order = 1
    for d in component_group(_fiber(kind)):
        order *= d
    disc = 1
    for d in discriminant_group(gram_of(root)):
        disc *= d
    assert order == disc
    assert disc == abs(det_exact(gram_of(root).gram_rows()))


def test_theta_constraints():
    cfg = make_config(
        ["C1", "C2", "H", "H'"],
        [("C1", "H", 1), ("C2", "H", 1), ("C2", "H'", 2), ("H", "H'", 2)])
    f = DivisorClass.from_dict(cfg, {"H": 1, "H'": 1})
    assert theta_constraints(cfg, ("C1", "C2"), [("F", f)]) == []
    # break C.H = 2
    cfg_bad = make_config(
        ["C1", "C2", "H", "H'"],
        [("C1", "H", 1), ("C2", "H", 1), ("C1", "H'", 1),
         ("C2", "H'", 2), ("H", "H'", 2)])
    problems = theta_constraints(cfg_bad, ("C1", "C2"), [])
    assert any("H'" in p for p in problems)
    # meeting fixed curves
    cfg_meet = make_config(["C1", "C2", "H"],
                           [("C1", "C2", 1), ("C1", "H", 1), ("C2", "H", 1)])
    problems = theta_constraints(cfg_meet, ("C1", "C2"), [])
    assert any("C1" in p and "C2" in p for p in problems)
