"""Elliptic-fibration arithmetic: Shioda-Tate rank, Mordell-Weil
positivity criteria, the height pairing and the two-fibration
inertia-group certificate.

The local height contributions are the standard table for each Kodaira
type; they ship as data together with self-consistency checks in the
test suite, since the constructions here never restate them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import DivisorClass, FiberError, is_fiber_class, pairing


class EvidenceError(ValueError):
    pass


@dataclass(frozen=True)
class MWEvidence:
    kind: str   # shioda-tate | lemma54-case1 | lemma54-case2 | height-positive | additive-same-component
    detail: str = ""
    data: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class EvidenceFailure:
    clause: str
    detail: str


@dataclass(frozen=True)
class FiberInModel:
    """One reducible fiber of a fibration: its Kodaira type, the named
    components with multiplicities, and which component each declared
    section meets."""
    fiber: object                    # KodairaFiber
    section_meets: dict              # section name -> component name


@dataclass(frozen=True)
class FibrationModel:
    rho: int
    fiber_class: DivisorClass
    zero_section: str
    sections: tuple
    reducible_fibers: tuple          # of FiberInModel
    cfg: object = None               # CurveConfig, when sections are named curves

    def validate(self, cfg):
        if self.zero_section not in self.sections:
            raise EvidenceError("zero section is not among the declared sections")
        for s in self.sections:
            v = pairing(DivisorClass.from_dict(cfg, {s: 1}), self.fiber_class, cfg)
            if v != 1:
                raise EvidenceError(f"section {s} meets the fiber class {v} times, not 1")


def shioda_tate_rank(rho, component_counts):
    """rho - 2 - sum(m_v - 1) over reducible fibers with m_v components.

    This equals the Mordell-Weil rank when the fiber list is complete;
    a negative result signals an impossible fiber list.
    """
    if rho < 2:
        raise ValueError("Picard number must be >= 2 for an elliptic surface")
    rank = rho - 2 - sum(m - 1 for m in component_counts)
    if rank < 0:
        raise ValueError(
            f"fiber list is inconsistent: Shioda-Tate rank would be {rank}")
    return rank


def lemma54_check(e, cfg, fixed_curves, rho):
    """Mordell-Weil positivity from the structure of one fiber class.

    Case 1: every fixed curve lies in Supp E and r < rho - 1.
    Case 2: all but one fixed curve lie in Supp E, the missing one is
    orthogonal to E, and r < rho - 2.
    Returns MWEvidence or EvidenceFailure naming the violated clause.
    """
    ok, fiber, diag = is_fiber_class(e, cfg)
    if not ok:
        raise FiberError(f"not a fiber class: {diag}")
    supp = set(e.support(cfg))
    k = len(fixed_curves)
    inside = [c for c in fixed_curves if c in supp]
    r = len(supp)
    if len(inside) == k:
        if r < rho - 1:
            return MWEvidence(
                "lemma54-case1",
                f"all {k} fixed curves in Supp E, r={r} < rho-1={rho-1}",
                {"r": r, "k": k, "rho": rho})
        return EvidenceFailure("case1:r<rho-1", f"r={r} is not < rho-1={rho-1}")
    if len(inside) == k - 1:
        missing = [c for c in fixed_curves if c not in supp][0]
        ce = pairing(DivisorClass.from_dict(cfg, {missing: 1}), e, cfg)
        if ce != 0:
            return EvidenceFailure(
                "case2:missing-orthogonal",
                f"missing fixed curve {missing} has C.E={ce}, expected 0")
        if r < rho - 2:
            return MWEvidence(
                "lemma54-case2",
                f"{k-1} of {k} fixed curves in Supp E, {missing}.E=0, r={r} < rho-2={rho-2}",
                {"r": r, "k": k, "rho": rho, "missing": missing})
        return EvidenceFailure("case2:r<rho-2", f"r={r} is not < rho-2={rho-2}")
    return EvidenceFailure(
        "fixed-curves-in-support",
        f"{len(inside)} of {k} fixed curves in Supp E, need k or k-1")


def _star_b(kind):
    return int(kind[1:-1])


def _cycle_order(fiber, cfg):
    """Components of an I_n fiber in cyclic order."""
    comps = list(fiber.multiplicities)
    adj = {c: [] for c in comps}
    for i, a in enumerate(comps):
        for b in comps[i + 1:]:
            if cfg.meet(a, b) > 0:
                adj[a].append(b)
                adj[b].append(a)
    order = [comps[0]]
    prev = None
    while len(order) < len(comps):
        nxt = [b for b in adj[order[-1]] if b != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _star_leaf_sides(fiber, cfg):
    """For an I_b* fiber, the mult-1 leaves grouped by the branch vertex
    they attach to.  Returns a dict leaf -> side id (0 or 1)."""
    comps = list(fiber.multiplicities)
    leaves = [c for c, m in fiber.multiplicities.items() if m == 1]
    branch = []
    for c in comps:
        deg = sum(1 for b in comps if b != c and cfg.meet(c, b) > 0)
        if deg >= 3:
            branch.append(c)
    sides = {}
    if len(branch) == 1:  # I0*
        for leaf in leaves:
            sides[leaf] = 0
    else:
        for leaf in leaves:
            for s, bc in enumerate(branch):
                if cfg.meet(leaf, bc) > 0:
                    sides[leaf] = s
    return sides


def _local_contribution(fim, cfg, p, q):
    """contr_v(P, Q) for one reducible fiber; p and q are section names.

    Sections must sit on multiplicity-1 components.  The zero section's
    component is the identity component.
    """
    fiber = fim.fiber
    kind = fiber.kind
    for s in (p, q):
        if s not in fim.section_meets:
            raise EvidenceError(f"no incidence recorded for section {s}")
        comp = fim.section_meets[s]
        if fiber.multiplicities.get(comp) != 1:
            raise EvidenceError(
                f"section {s} meets component {comp} of multiplicity "
                f"{fiber.multiplicities.get(comp)}, sections meet multiplicity-1 components")
    zero_comp = fim.section_meets[fim.zero_name]
    cp = fim.section_meets[p]
    cq = fim.section_meets[q]
    if cp == zero_comp or cq == zero_comp:
        return Fraction(0)
    if kind == "II*":
        return Fraction(0)
    if kind == "III*":
        return Fraction(3, 2)
    if kind == "IV*":
        return Fraction(4, 3) if cp == cq else Fraction(2, 3)
    if kind == "I2/III":
        # lattice-indistinguishable I2 and III share contr 1/2 only for III;
        # I2 gives i(n-i)/n = 1/2 as well
        return Fraction(1, 2)
    if kind.endswith("*"):
        b = _star_b(kind)
        sides = _star_leaf_sides(fiber, cfg)
        zs = sides[zero_comp]
        near = lambda c: sides[c] == zs
        if cp == cq:
            return Fraction(1) if near(cp) else Fraction(1) + Fraction(b, 4)
        if near(cp) != near(cq):
            return Fraction(1, 2)
        if near(cp):
            # two distinct near non-identity components only exist for b = 0
            return Fraction(1, 2)
        return Fraction(2 + b, 4)
    if kind.startswith("I"):
        n = int(kind[1:])
        order = _cycle_order(fiber, cfg)
        zi = order.index(zero_comp)
        i = (order.index(cp) - zi) % n
        j = (order.index(cq) - zi) % n
        i, j = min(i, j), max(i, j)
        return Fraction(i * (n - j), n)
    raise ValueError(f"no contribution entry for fiber kind {kind!r}")


def height_pairing(model, cfg, p, q=None):
    """Height <P, Q> on the Mordell-Weil group (K3: chi = 2).

    <P,Q> = chi + (P.O) + (Q.O) - (P.Q) - sum_v contr_v(P,Q); for the
    quadratic form Q = P this is 4 + 2(P.O) - sum contr_v(P) because
    P.P = -2 on a K3.
    """
    if q is None:
        q = p
    for s in (p, q):
        if s not in model.sections:
            raise EvidenceError(f"{s} is not a declared section")
    dp = DivisorClass.from_dict(cfg, {p: 1})
    dq = DivisorClass.from_dict(cfg, {q: 1})
    do = DivisorClass.from_dict(cfg, {model.zero_section: 1})
    total = Fraction(2) + pairing(dp, do, cfg) + pairing(dq, do, cfg) - pairing(dp, dq, cfg)
    for fim in model.reducible_fibers:
        total -= _local_contribution(_WithZero(fim, model.zero_section), cfg, p, q)
    return total


class _WithZero:
    """FiberInModel plus the fibration's zero section name."""

    def __init__(self, fim, zero_name):
        self.fiber = fim.fiber
        self.section_meets = fim.section_meets
        self.zero_name = zero_name


def infinite_order_certificate(model, cfg, p):
    """Evidence that section P has infinite order in the Mordell-Weil group.

    Positive height certifies it outright.  Failing that, at an additive
    fiber a torsion section and the zero section map into the component
    group injectively, so P and O meeting the SAME component of an
    additive fiber certifies non-torsion for P != O.
    """
    if p == model.zero_section:
        raise EvidenceError("P must differ from the zero section")
    h = height_pairing(model, cfg, p)
    if h > 0:
        return MWEvidence("height-positive", f"<P,P> = {h}", {"height": h})
    for fim in model.reducible_fibers:
        kind = fim.fiber.kind
        additive = kind.endswith("*")
        if additive and p in fim.section_meets and model.zero_section in fim.section_meets:
            if fim.section_meets[p] == fim.section_meets[model.zero_section]:
                return MWEvidence(
                    "additive-same-component",
                    f"P and O meet component {fim.section_meets[p]} of the {kind} fiber",
                    {"component": fim.section_meets[p], "kind": kind})
    return EvidenceFailure(
        "infinite-order",
        f"height <P,P> = {h} is not positive and no additive fiber has P, O "
        "on the same component")


@dataclass(frozen=True)
class Decomposition:
    """E = D + a*R + b*C with a, b > 0 and D effective (possibly zero)."""
    e: DivisorClass
    d: DivisorClass
    a: int
    r_curve: str
    b: int
    c_curve: str

    def check_shape(self, cfg):
        if self.a <= 0 or self.b <= 0:
            raise EvidenceError("decomposition needs a > 0 and b > 0")
        if not self.d.is_effective():
            raise EvidenceError("D part of the decomposition must be effective")
        rebuilt = self.d + DivisorClass.from_dict(cfg, {self.r_curve: self.a}) \
            + DivisorClass.from_dict(cfg, {self.c_curve: self.b})
        if rebuilt != self.e:
            raise EvidenceError("decomposition does not sum to E")


@dataclass(frozen=True)
class TriplePointWitness:
    """Input evidence for C ∩ R1 ∩ R2 != 0 when R1 != R2.

    kind "declared": an asserted common point; consistency demands all
    three pairwise intersection numbers are positive.
    kind "fixed-pivot": the pivot C is pointwise fixed by an automorphism
    g with R2 = g(R1); any point of C ∩ R1 then lies on R2 as well, so
    consistency demands only C.R1 > 0 and C.R2 > 0.
    """
    kind: str
    note: str = ""


@dataclass(frozen=True)
class Cor32Verdict:
    passed: bool
    checks: tuple   # (name, ok, detail)


def cor32_verify(dec1, dec2, ev1, ev2, cfg, witness=None):
    """Verify the two-fibration certificate for a positive-entropy
    inertia group element.

    Checks: both E_i are fiber classes; the Mordell-Weil evidence items
    are valid; E1.E2 > 0 (two isotropic classes are proportional only if
    their product vanishes); the pivot differs from R1, R2; and the
    common-point condition on C, R1, R2.
    """
    checks = []

    def add(name, ok, detail):
        checks.append((name, bool(ok), detail))

    for i, dec in enumerate((dec1, dec2), 1):
        try:
            dec.check_shape(cfg)
            add(f"decomposition-E{i}", True, "E = D + a*R + b*C with a,b > 0")
        except EvidenceError as exc:
            add(f"decomposition-E{i}", False, str(exc))
    if dec1.c_curve != dec2.c_curve:
        add("same-pivot", False, "the two decompositions name different pivot curves")
    else:
        add("same-pivot", True, f"both decompositions pivot on {dec1.c_curve}")
    for i, dec in enumerate((dec1, dec2), 1):
        try:
            ok, fiber, diag = is_fiber_class(dec.e, cfg)
        except FiberError as exc:
            ok, fiber, diag = False, None, str(exc)
        add(f"fiber-class-E{i}", ok, diag)
    for i, ev in enumerate((ev1, ev2), 1):
        if isinstance(ev, MWEvidence):
            add(f"mw-evidence-E{i}", True, f"{ev.kind}: {ev.detail}")
        else:
            add(f"mw-evidence-E{i}", False, f"{ev.clause}: {ev.detail}")
    prod = pairing(dec1.e, dec2.e, cfg)
    add("non-proportional", prod > 0, f"E1.E2 = {prod}")
    c = dec1.c_curve
    r1, r2 = dec1.r_curve, dec2.r_curve
    add("pivot-distinct", c != r1 and c != r2, f"C={c}, R1={r1}, R2={r2}")
    dc = DivisorClass.from_dict(cfg, {c: 1})
    if r1 == r2:
        v = pairing(dc, DivisorClass.from_dict(cfg, {r1: 1}), cfg)
        add("common-point", v > 0, f"R1 = R2 and C.R1 = {v}")
    else:
        if witness is None:
            add("common-point", False, "R1 != R2 but no triple-point witness declared")
        else:
            cr1 = pairing(dc, DivisorClass.from_dict(cfg, {r1: 1}), cfg)
            cr2 = pairing(dc, DivisorClass.from_dict(cfg, {r2: 1}), cfg)
            if witness.kind == "fixed-pivot":
                ok = cr1 > 0 and cr2 > 0
                add("common-point", ok,
                    f"fixed-pivot witness: C.R1 = {cr1}, C.R2 = {cr2} ({witness.note})")
            else:
                rr = pairing(DivisorClass.from_dict(cfg, {r1: 1}),
                             DivisorClass.from_dict(cfg, {r2: 1}), cfg)
                ok = cr1 > 0 and cr2 > 0 and rr > 0
                add("common-point", ok,
                    f"declared witness: C.R1 = {cr1}, C.R2 = {cr2}, R1.R2 = {rr}")
    return Cor32Verdict(all(ok for _, ok, _ in checks), tuple(checks))
