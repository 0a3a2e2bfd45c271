"""Text formats for curve configurations, divisors and fibration models.

Config files are UTF-8 text, one directive per line, '#' starts a
comment.  Directives, in any order (curves: must precede uses):

    curves: NAME NAME ...
    meets: NAME NAME K              # unlisted pairs meet 0 times
    divisor LABEL: NAME=INT ...
    fibration: fiber=LABEL zero=NAME rho=INT
    sections: NAME NAME ...
    rfiber LABEL: NAME=COMPONENT ...   # reducible fiber + section incidence

The diagonal of the intersection matrix is implied -2.  An `rfiber`
line names a previously declared divisor; its support is classified and
the NAME=COMPONENT pairs say which component each section meets.

Isometry files for the entropy command are whitespace-separated
integers: first n, then the n*n entries of G row by row, then the n*n
entries of M.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import DivisorClass, classify_fiber, make_config
from .fibration import FiberInModel, FibrationModel


class FileFormatError(ValueError):
    def __init__(self, message, line_no):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class ParsedConfig:
    cfg: object
    divisors: dict          # label -> DivisorClass
    model: object           # FibrationModel or None


def _parse_assignments(rest, line_no, value_parser):
    out = {}
    for tok in rest.split():
        if "=" not in tok:
            raise FileFormatError(f"expected NAME=VALUE, got {tok!r}", line_no)
        name, _, val = tok.partition("=")
        try:
            out[name] = value_parser(val)
        except ValueError:
            raise FileFormatError(f"bad value in {tok!r}", line_no) from None
    return out


def parse_config_text(text):
    names = None
    meets = []
    raw_divisors = {}
    fibration = None
    sections = []
    rfibers = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("curves:"):
            if names is not None:
                raise FileFormatError("duplicate curves: line", line_no)
            names = line[len("curves:"):].split()
            if not names:
                raise FileFormatError("curves: line lists no curves", line_no)
        elif line.startswith("meets:"):
            parts = line[len("meets:"):].split()
            if len(parts) != 3:
                raise FileFormatError("meets: needs NAME NAME K", line_no)
            try:
                k = int(parts[2])
            except ValueError:
                raise FileFormatError(f"bad multiplicity {parts[2]!r}", line_no) from None
            meets.append((parts[0], parts[1], k, line_no))
        elif line.startswith("divisor "):
            head, _, rest = line[len("divisor "):].partition(":")
            label = head.strip()
            if not label:
                raise FileFormatError("divisor needs a label", line_no)
            if label in raw_divisors:
                raise FileFormatError(f"duplicate divisor {label!r}", line_no)
            raw_divisors[label] = (_parse_assignments(rest, line_no, int), line_no)
        elif line.startswith("fibration:"):
            if fibration is not None:
                raise FileFormatError("duplicate fibration: line", line_no)
            kv = _parse_assignments(line[len("fibration:"):], line_no, str)
            for key in ("fiber", "zero", "rho"):
                if key not in kv:
                    raise FileFormatError(f"fibration: missing {key}=", line_no)
            try:
                rho = int(kv["rho"])
            except ValueError:
                raise FileFormatError(f"bad rho {kv['rho']!r}", line_no) from None
            fibration = (kv["fiber"], kv["zero"], rho, line_no)
        elif line.startswith("sections:"):
            sections = line[len("sections:"):].split()
        elif line.startswith("rfiber "):
            head, _, rest = line[len("rfiber "):].partition(":")
            label = head.strip()
            rfibers.append((label, _parse_assignments(rest, line_no, str), line_no))
        else:
            raise FileFormatError(f"unknown directive {line.split()[0]!r}", line_no)

    if names is None:
        raise FileFormatError("missing curves: line", 0)
    try:
        cfg = make_config(names, [(a, b, k) for a, b, k, _ in meets])
    except ValueError as exc:
        raise FileFormatError(str(exc), meets[0][3] if meets else 0) from None

    divisors = {}
    for label, (coeffs, line_no) in raw_divisors.items():
        try:
            divisors[label] = DivisorClass.from_dict(cfg, coeffs)
        except ValueError as exc:
            raise FileFormatError(str(exc), line_no) from None

    model = None
    if fibration is not None:
        flabel, zero, rho, line_no = fibration
        if flabel not in divisors:
            raise FileFormatError(f"fiber divisor {flabel!r} not declared", line_no)
        if not sections:
            raise FileFormatError("fibration: needs a sections: line", line_no)
        fims = []
        for rlabel, incidence, rline in rfibers:
            if rlabel not in divisors:
                raise FileFormatError(f"rfiber divisor {rlabel!r} not declared", rline)
            support = divisors[rlabel].support(cfg)
            try:
                fiber = classify_fiber(cfg, support)
            except ValueError as exc:
                raise FileFormatError(f"rfiber {rlabel}: {exc}", rline) from None
            fims.append(FiberInModel(fiber, incidence))
        model = FibrationModel(
            rho=rho, fiber_class=divisors[flabel], zero_section=zero,
            sections=tuple(sections), reducible_fibers=tuple(fims), cfg=cfg)
    return ParsedConfig(cfg, divisors, model)


def parse_config_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def parse_isometry_text(text):
    toks = text.split()
    try:
        vals = [int(t) for t in toks]
    except ValueError as exc:
        raise FileFormatError(f"non-integer token: {exc}", 0) from None
    if not vals:
        raise FileFormatError("empty isometry file", 0)
    n = vals[0]
    if n <= 0 or len(vals) != 1 + 2 * n * n:
        raise FileFormatError(
            f"expected 1 + 2*n^2 integers for n = {n}, got {len(vals)}", 0)
    body = vals[1:]
    g = [body[i * n:(i + 1) * n] for i in range(n)]
    m = [body[n * n + i * n: n * n + (i + 1) * n] for i in range(n)]
    return g, m


def parse_isometry_file(path):
    with open(path, encoding="utf-8") as fh:
        return parse_isometry_text(fh.read())


def dump_config(cfg, divisors=(), comments=()):
    """Emit a configuration (and labeled divisors) in the file format."""
    lines = [f"# {c}" for c in comments]
    lines.append("curves: " + " ".join(cfg.curve_names))
    n = cfg.size
    for i in range(n):
        for j in range(i + 1, n):
            v = cfg.inter[i][j]
            if v:
                lines.append(f"meets: {cfg.curve_names[i]} {cfg.curve_names[j]} {v}")
    for label, d in divisors:
        parts = " ".join(f"{name}={c}" for name, c in zip(cfg.curve_names, d.coeffs) if c)
        lines.append(f"divisor {label}: {parts}")
    return "\n".join(lines) + "\n"


def dump_case(inst):
    """Emit one case instance so external tools can re-check it."""
    comments = [f"case {inst.case_id}"
                + (f" (param {inst.param})" if inst.param is not None else "")]
    if inst.triple:
        comments.append(f"NS = {inst.ns_expr}, (rho,a,delta) = {inst.triple}, k = {inst.k}")
    comments.extend(inst.encoding_flags)
    divisors = [("E1", inst.e1), ("E2", inst.e2)]
    text = dump_config(inst.cfg, divisors, comments)
    extra = []
    if inst.fixed_curves:
        extra.append("# fixed curves: " + " ".join(inst.fixed_curves))
    for label, kind, support in inst.phi_fibers:
        extra.append(f"# phi fiber {label} ({kind}): " + " ".join(support))
    if inst.mw_plan[0] != "lemma54":
        kind, zero, sec, incidence = inst.mw_plan
        extra.append(f"fibration: fiber=E1 zero={zero} rho={inst.rho}")
        extra.append(f"sections: {zero} {sec}")
        pairs = " ".join(f"{s}={c}" for s, c in sorted(incidence.items()))
        extra.append(f"rfiber E1: {pairs}")
    if extra:
        text += "\n".join(extra) + "\n"
    return text
