"""Configurations of (-2)-curves, divisor classes and Kodaira fiber
recognition from weighted dual graphs.

A fiber support is accepted when its restricted intersection matrix has
inertia (0, r-1, 1); the primitive positive kernel vector gives the
component multiplicities, and the graph shape decides the Kodaira kind.
Two curves meeting twice cannot be told apart from a tangential meeting
at the lattice level, so a 2-component fiber is reported as "I2/III".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .exactlinalg import inertia, kernel_basis


class ConfigError(ValueError):
    pass


class FiberError(ValueError):
    pass


@dataclass(frozen=True)
class CurveConfig:
    curve_names: tuple
    inter: tuple  # symmetric tuple-of-tuples, diagonal -2

    def index(self, name):
        try:
            return self.curve_names.index(name)
        except ValueError:
            raise ConfigError(f"unknown curve {name!r}") from None

    def meet(self, a, b):
        return self.inter[self.index(a)][self.index(b)]

    @property
    def size(self):
        return len(self.curve_names)


def make_config(names, meetings):
    """Build a CurveConfig from curve names and (name, name, k) triples.

    Unlisted pairs meet 0 times; the diagonal is fixed at -2.
    """
    names = list(names)
    if len(set(names)) != len(names):
        raise ConfigError("duplicate curve names")
    n = len(names)
    pos = {c: i for i, c in enumerate(names)}
    m = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b, k in meetings:
        if a not in pos or b not in pos:
            missing = a if a not in pos else b
            raise ConfigError(f"unknown curve {missing!r}")
        if a == b:
            raise ConfigError(f"diagonal of {a!r} is fixed at -2")
        if k < 0:
            raise ConfigError("intersection numbers are nonnegative off the diagonal")
        i, j = pos[a], pos[b]
        m[i][j] = m[j][i] = k
    return CurveConfig(tuple(names), tuple(tuple(r) for r in m))


@dataclass(frozen=True)
class DivisorClass:
    coeffs: tuple  # parallel to cfg.curve_names

    @classmethod
    def from_dict(cls, cfg, d):
        v = [0] * cfg.size
        for name, c in d.items():
            v[cfg.index(name)] = c
        return cls(tuple(v))

    def to_dict(self, cfg):
        return {n: c for n, c in zip(cfg.curve_names, self.coeffs) if c}

    def support(self, cfg):
        return [n for n, c in zip(cfg.curve_names, self.coeffs) if c]

    def is_effective(self):
        return all(c >= 0 for c in self.coeffs)

    def __add__(self, other):
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, k):
        return DivisorClass(tuple(k * c for c in self.coeffs))


def pairing(d1, d2, cfg):
    """Intersection number D1 . D2 in the configuration."""
    if len(d1.coeffs) != cfg.size or len(d2.coeffs) != cfg.size:
        raise ConfigError("divisor class is not indexed by this configuration")
    total = 0
    for i, a in enumerate(d1.coeffs):
        if a:
            row = cfg.inter[i]
            for j, b in enumerate(d2.coeffs):
                if b:
                    total += a * row[j] * b
    return total


@dataclass(frozen=True)
class KodairaFiber:
    kind: str                 # "I_n" as "In", "I_b*" as "Ib*", "II*", "III*", "IV*", "I2/III"
    multiplicities: dict = field(compare=False)

    @property
    def component_count(self):
        return len(self.multiplicities)


def _adjacency(cfg, support):
    adj = {c: [] for c in support}
    for a in support:
        ia = cfg.index(a)
        for b in support:
            if a < b:
                k = cfg.inter[ia][cfg.index(b)]
                if k > 0:
                    adj[a].append((b, k))
                    adj[b].append((a, k))
    return adj


def _connected(adj, support):
    if not support:
        return False
    seen = {support[0]}
    stack = [support[0]]
    while stack:
        c = stack.pop()
        for b, _ in adj[c]:
            if b not in seen:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(support)


def classify_fiber(cfg, support):
    """Kodaira type of a connected configuration of (-2)-curves.

    Returns a KodairaFiber whose multiplicities span the kernel of the
    restricted intersection matrix.  Raises FiberError when the support
    is not the dual graph of a fiber.
    """
    support = list(support)
    if not support:
        raise FiberError("empty support")
    adj = _adjacency(cfg, support)
    if not _connected(adj, support):
        raise FiberError("support is not connected")
    idx = [cfg.index(c) for c in support]
    sub = [[cfg.inter[i][j] for j in idx] for i in idx]
    r = len(support)
    n_plus, n_minus, n_zero = inertia(sub)
    if (n_plus, n_minus, n_zero) != (0, r - 1, 1):
        raise FiberError(
            f"intersection matrix has inertia {(n_plus, n_minus, n_zero)}, "
            f"not the fiber signature (0, {r-1}, 1)")
    kern = kernel_basis(sub)
    assert len(kern) == 1
    mult = kern[0]
    if all(x <= 0 for x in mult):
        mult = [-x for x in mult]
    if any(x <= 0 for x in mult):
        raise FiberError("kernel vector is not positive")
    g = 0
    for x in mult:
        g = gcd(g, x)
    mult = [x // g for x in mult]
    mults = dict(zip(support, mult))

    simple_degrees = {c: len(adj[c]) for c in support}

    if r == 2:
        # double bond, both multiplicity 1
        return KodairaFiber("I2/III", mults)
    if all(k == 1 for c in support for _, k in adj[c]):
        if all(simple_degrees[c] == 2 for c in support):
            return KodairaFiber(f"I{r}", mults)
        # trees: affine A/D/E shapes
        leaves = [c for c in support if simple_degrees[c] == 1]
        branch = [c for c in support if simple_degrees[c] >= 3]
        if any(simple_degrees[c] > 4 for c in support):
            raise FiberError("vertex degree exceeds 4: not an affine ADE diagram")
        if len(branch) == 1 and simple_degrees[branch[0]] == 4:
            if r != 5:
                raise FiberError("degree-4 vertex only occurs in I0*")
            return KodairaFiber("I0*", mults)
        if len(branch) == 2 and all(simple_degrees[c] == 3 for c in branch):
            b = r - 5
            expected = {c: (1 if c in leaves else 2) for c in support}
            if mults != expected:
                raise FiberError("multiplicities do not match an I_b* diagram")
            return KodairaFiber(f"I{b}*", mults)
        if len(branch) == 1 and simple_degrees[branch[0]] == 3:
            arms = sorted(_arm_lengths(adj, branch[0]))
            if arms == [2, 2, 2] and r == 7:
                return KodairaFiber("IV*", mults)
            if arms == [1, 3, 3] and r == 8:
                return KodairaFiber("III*", mults)
            if arms == [1, 2, 5] and r == 9:
                return KodairaFiber("II*", mults)
            raise FiberError(f"arm lengths {arms} match no affine E diagram")
        raise FiberError("shape matches no affine ADE diagram")
    raise FiberError("multiple bond in a configuration of more than 2 curves")


def _arm_lengths(adj, center):
    lengths = []
    for start, _ in adj[center]:
        length = 1
        prev, cur = center, start
        while True:
            nxt = [b for b, _ in adj[cur] if b != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        lengths.append(length)
    return lengths


def is_fiber_class(d, cfg):
    """Check that an effective divisor is a primitive fiber class.

    Returns (ok, fiber_or_None, diagnostics).
    """
    if not d.is_effective():
        raise FiberError("divisor class is not effective")
    supp = d.support(cfg)
    if not supp:
        return False, None, "empty divisor"
    sq = pairing(d, d, cfg)
    if sq != 0:
        return False, None, f"self-intersection {sq} != 0"
    try:
        fiber = classify_fiber(cfg, supp)
    except FiberError as e:
        return False, None, str(e)
    for name in supp:
        if d.coeffs[cfg.index(name)] != fiber.multiplicities[name]:
            return False, fiber, (
                f"coefficient of {name} is {d.coeffs[cfg.index(name)]}, "
                f"fiber multiplicity is {fiber.multiplicities[name]} (non-primitive or wrong class)")
    return True, fiber, f"fiber of type {fiber.kind}"


def component_group(fiber):
    """Component group of the smooth locus, as a list of cyclic orders."""
    kind = fiber.kind
    if kind == "I2/III":
        return [2]
    if kind == "II*":
        return []
    if kind == "III*":
        return [2]
    if kind == "IV*":
        return [3]
    if kind.endswith("*"):
        b = int(kind[1:-1])
        return [4] if b % 2 else [2, 2]
    if kind.startswith("I"):
        n = int(kind[1:])
        return [n]
    raise ValueError(f"unclassified fiber kind {kind!r}")


def kinds_compatible(expected, actual):
    """Whether a record's fiber label matches the classifier verdict.

    I2 and III are lattice-indistinguishable and both match "I2/III".
    """
    if expected == actual:
        return True
    if actual == "I2/III" and expected in ("I2", "III", "I2/III"):
        return True
    return False


def theta_constraints(cfg, fixed_curves, fiber_classes=()):
    """Constraints on the fixed locus of the NS-trivial involution.

    fixed_curves C_1..C_k must be pairwise disjoint; every other curve H
    meets their sum exactly twice; every given fiber class F meets the
    sum exactly 4 times.  Returns a list of violation strings (empty on
    success).
    """
    problems = []
    for i, a in enumerate(fixed_curves):
        for b in fixed_curves[i + 1:]:
            if cfg.meet(a, b) != 0:
                problems.append(f"fixed curves {a} and {b} meet ({cfg.meet(a, b)})")
    csum = DivisorClass.from_dict(cfg, {c: 1 for c in fixed_curves})
    fixed = set(fixed_curves)
    for h in cfg.curve_names:
        if h in fixed:
            continue
        hcls = DivisorClass.from_dict(cfg, {h: 1})
        v = pairing(csum, hcls, cfg)
        if v != 2:
            problems.append(f"C.{h} = {v}, expected 2")
    for label, f in fiber_classes:
        v = pairing(csum, f, cfg)
        if v != 4:
            problems.append(f"C.{label} = {v}, expected 4")
    return problems
