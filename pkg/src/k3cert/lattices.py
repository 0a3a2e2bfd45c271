"""Even lattices given by Gram matrices.

Grammar for lattice expressions (ASCII):

    expr  := term ('+' term)*
    term  := atom twist? power?
    atom  := 'U' | 'A'int | 'D'int | 'E'int
    twist := '(' int ')'
    power := '^' int

A/D/E atoms are NEGATIVE definite root lattices: -2 on the diagonal and
+1 on Dynkin-adjacent pairs.  Node order is the chain first, then the
branch node(s): for D_m the chain e1..e_{m-1} with the fork node e_m
attached to e_{m-2}; for E_n the chain e1..e_{n-1} with e_n attached
to e3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlinalg import (
    det_exact,
    inertia,
    is_symmetric,
    smith_normal_form,
    mat_mul,
    transpose,
)


class LatticeParseError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Atom:
    family: str  # 'U', 'A', 'D', 'E'
    index: int   # 0 for U

@dataclass(frozen=True)
class Twist:
    inner: "LatticeExpr"
    factor: int

@dataclass(frozen=True)
class Power:
    inner: "LatticeExpr"
    exponent: int

@dataclass(frozen=True)
class Sum:
    parts: tuple


LatticeExpr = object  # Atom | Twist | Power | Sum


def parse_lattice_expr(text):
    """Parse a lattice expression; raises LatticeParseError with byte offset."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_int():
        nonlocal pos
        start = pos
        if pos < n and text[pos] == '-':
            pos += 1
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start or (pos == start + 1 and text[start] == '-'):
            raise LatticeParseError("expected integer", start)
        return int(text[start:pos])

    def parse_term():
        nonlocal pos
        skip_ws()
        if pos >= n:
            raise LatticeParseError("expected lattice atom", pos)
        ch = text[pos]
        start = pos
        if ch == 'U':
            pos += 1
            node = Atom('U', 0)
        elif ch in ('A', 'D', 'E'):
            pos += 1
            idx = parse_int()
            if ch == 'A' and idx < 1:
                raise LatticeParseError("A_l needs l >= 1", start)
            if ch == 'D' and idx < 4:
                raise LatticeParseError("D_m needs m >= 4", start)
            if ch == 'E' and idx not in (6, 7, 8):
                raise LatticeParseError("E_n needs n in {6,7,8}", start)
            node = Atom(ch, idx)
        else:
            raise LatticeParseError(f"unknown atom {ch!r}", pos)
        skip_ws()
        if pos < n and text[pos] == '(':
            pos += 1
            tstart = pos
            k = parse_int()
            if k == 0:
                raise LatticeParseError("twist factor must be nonzero", tstart)
            skip_ws()
            if pos >= n or text[pos] != ')':
                raise LatticeParseError("expected ')'", pos)
            pos += 1
            node = Twist(node, k)
        skip_ws()
        if pos < n and text[pos] == '^':
            pos += 1
            pstart = pos
            k = parse_int()
            if k < 1:
                raise LatticeParseError("power must be >= 1", pstart)
            node = Power(node, k)
        return node

    skip_ws()
    parts = [parse_term()]
    skip_ws()
    while pos < n and text[pos] == '+':
        pos += 1
        parts.append(parse_term())
        skip_ws()
    if pos < n:
        raise LatticeParseError(f"unexpected character {text[pos]!r}", pos)
    return parts[0] if len(parts) == 1 else Sum(tuple(parts))


def _root_gram(family, idx):
    if family == 'U':
        return [[0, 1], [1, 0]], ['u1', 'u2']
    if family == 'A':
        m = idx
        g = [[-2 if i == j else 0 for j in range(m)] for i in range(m)]
        for i in range(m - 1):
            g[i][i + 1] = g[i + 1][i] = 1
        return g, [f'a{i+1}' for i in range(m)]
    if family == 'D':
        m = idx
        g = [[-2 if i == j else 0 for j in range(m)] for i in range(m)]
        for i in range(m - 2):
            g[i][i + 1] = g[i + 1][i] = 1
        g[m - 3][m - 1] = g[m - 1][m - 3] = 1
        return g, [f'd{i+1}' for i in range(m)]
    if family == 'E':
        m = idx
        g = [[-2 if i == j else 0 for j in range(m)] for i in range(m)]
        for i in range(m - 2):
            g[i][i + 1] = g[i + 1][i] = 1
        g[2][m - 1] = g[m - 1][2] = 1
        return g, [f'e{i+1}' for i in range(m)]
    raise ValueError(family)


def _block_diag(blocks):
    size = sum(len(b) for b in blocks)
    out = [[0] * size for _ in range(size)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


@dataclass(frozen=True)
class GramLattice:
    gram: tuple          # tuple of tuples of ints
    basis_labels: tuple

    @property
    def rank(self):
        return len(self.gram)

    def gram_rows(self):
        return [list(r) for r in self.gram]


def make_lattice(gram, labels=None):
    if not is_symmetric(gram):
        raise ValueError("Gram matrix must be symmetric")
    for i in range(len(gram)):
        if gram[i][i] % 2:
            raise ValueError("lattice is not even: odd diagonal entry")
    if labels is None:
        labels = [f'v{i+1}' for i in range(len(gram))]
    return GramLattice(tuple(tuple(r) for r in gram), tuple(labels))


def gram(expr):
    """Gram lattice of a parsed expression."""
    def build(node, prefix):
        if isinstance(node, Atom):
            g, labels = _root_gram(node.family, node.index)
            return g, [prefix + l for l in labels]
        if isinstance(node, Twist):
            g, labels = build(node.inner, prefix)
            return [[node.factor * x for x in row] for row in g], labels
        if isinstance(node, Power):
            gs, ls = [], []
            for k in range(node.exponent):
                g, labels = build(node.inner, f"{prefix}{k+1}.")
                gs.append(g)
                ls.extend(labels)
            return _block_diag(gs), ls
        if isinstance(node, Sum):
            gs, ls = [], []
            for k, part in enumerate(node.parts):
                g, labels = build(part, f"{prefix}s{k+1}.")
                gs.append(g)
                ls.extend(labels)
            return _block_diag(gs), ls
        raise TypeError(node)

    g, labels = build(expr, "")
    return make_lattice(g, labels)


def gram_of(text):
    return gram(parse_lattice_expr(text))


class DegenerateLatticeError(ValueError):
    pass


class NotTwoElementaryError(ValueError):
    pass


def discriminant_group(lat):
    """Elementary divisors > 1 of the Gram matrix, i.e. L*/L as cyclic orders."""
    g = lat.gram_rows()
    if det_exact(g) == 0:
        raise DegenerateLatticeError("degenerate lattice has no finite discriminant group")
    d, _, _ = smith_normal_form(g)
    return [d[i][i] for i in range(lat.rank) if d[i][i] > 1]


@dataclass(frozen=True)
class TwoElementaryInvariants:
    rank: int
    a: int
    delta: int


def _disc_form_value(lift, g):
    """q(x) = x.x of a rational lift, reduced into [0, 2) of Q/2Z."""
    n = len(g)
    val = Fraction(0)
    for i in range(n):
        for j in range(n):
            val += lift[i] * g[i][j] * lift[j]
    return val % 2


def two_elementary_invariants(lat):
    """(rank, a, delta) of a 2-elementary even lattice.

    delta = 0 iff the discriminant quadratic form is integer valued on
    all of L*/L.  Generators of L*/L and their rational lifts are read
    off the Smith transform: if U G V = D then the rows of U^{-1}... we
    use the columns of V directly: G * (V e_i / d_i) has integer inner
    products with L, so v_i / d_i generate L*/L.
    """
    g = lat.gram_rows()
    n = lat.rank
    if det_exact(g) == 0:
        raise DegenerateLatticeError("degenerate lattice")
    d, u, v = smith_normal_form(g)
    divisors = [d[i][i] for i in range(n)]
    for di in divisors:
        if di not in (1, 2):
            raise NotTwoElementaryError(
                f"discriminant group has a factor of order {di}, not 2-elementary")
    a = sum(1 for di in divisors if di == 2)
    # Generators: columns of U^T scaled by 1/d_i.  From U G V = D,
    # G (V e_i) = U^{-1} D e_i = d_i * (U^{-1} e_i), so x_i := (U^{-1} e_i)/1...
    # Work instead with y_i := column i of V: G y_i = d_i u_i' where u_i' is
    # integral; then y_i / d_i pairs integrally with... directly: dual basis
    # vectors are the columns of G^{-1}; L*/L generators can be taken as
    # (1/d_i) * y_i with y_i the i-th column of V, since V is unimodular and
    # G V = U^{-1} D.
    delta = 0
    order2 = [i for i in range(n) if divisors[i] == 2]
    for i in order2:
        lift = [Fraction(v[r][i], divisors[i]) for r in range(n)]
        if _disc_form_value(lift, g).denominator != 1:
            delta = 1
            break
    # delta also forced by mixed terms? For 2-elementary groups q(x+y) - q(x) - q(y)
    # = 2 b(x,y) in 2Z iff b(x,y) in Z... b can be half-integral, but q integer on
    # generators plus q(x+y) = q(x)+q(y)+2b(x,y) means integrality must be checked
    # on sums too when b is half-integral.
    if delta == 0:
        for ii in range(len(order2)):
            for jj in range(ii + 1, len(order2)):
                i, j = order2[ii], order2[jj]
                lift = [Fraction(v[r][i] + v[r][j], 2) for r in range(n)]
                if _disc_form_value(lift, g).denominator != 1:
                    delta = 1
                    break
            if delta:
                break
    return TwoElementaryInvariants(rank=n, a=a, delta=delta)


class ParityError(ValueError):
    pass


def fixed_locus_component_count(rank, a):
    """k = (rank - a + 2) / 2 for a 2-elementary K3 with rank + a = 22."""
    if rank < a:
        raise ParityError("rank must be >= a")
    if (rank + a) % 2:
        raise ParityError("rank + a must be even")
    return (rank - a + 2) // 2


def lattice_info(text):
    """Rank, signature, determinant, discriminant group and, when the
    lattice is 2-elementary, (rank, a, delta) — used by the CLI."""
    lat = gram_of(text)
    g = lat.gram_rows()
    det = det_exact(g)
    sig = inertia(g)
    info = {
        "expr": text,
        "rank": lat.rank,
        "signature": {"plus": sig[0], "minus": sig[1], "zero": sig[2]},
        "det": det,
    }
    if det != 0:
        dg = discriminant_group(lat)
        info["discriminant_group"] = dg
        if all(x == 2 for x in dg):
            inv = two_elementary_invariants(lat)
            info["two_elementary"] = {"rank": inv.rank, "a": inv.a, "delta": inv.delta}
            if (inv.rank + inv.a) % 2 == 0 and inv.rank >= inv.a:
                info["fixed_locus_components"] = fixed_locus_component_count(inv.rank, inv.a)
    return info


def congruent_gram(lat, s):
    """Gram of the same bilinear form in the basis given by integer matrix s."""
    g = lat.gram_rows()
    return mat_mul(transpose(s), mat_mul(g, s))
