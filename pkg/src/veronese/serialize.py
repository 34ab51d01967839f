"""Text formats: germ files (line based) and trace files (JSON).

A germ file looks like::

    format_version 1
    kind germ
    n 2
    q 2
    T 7
    component 1,0
    term 1,0 1/1
    component 0,1
    ...

``kind raw`` files carry arbitrary component lists; their ``component`` lines hold
an optional label (``-`` when absent).  Blank lines and ``#`` comments are
ignored.  Coefficients are always printed as ``p/q``; integers are accepted on
input, but fractions must be in lowest terms with a positive denominator.
"""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from math import gcd

from .errors import DomainError
from .germ import Germ, RawGerm, is_q_regular
from .jets import HomogeneousPoly, MJet, coordinate_indices
from .projective import Homography
from .reduction import (
    Certificate,
    ReducedGerm,
    extract_P,
    pivot,
    pivot_j,
    solve_distinguished,
    verify_certificate,
    witness_holds,
)

FORMAT_VERSION = 1
_HEADER = ("format_version", "kind", "n", "q", "T")
_RATIONAL = re.compile(r"^(-?\d+)(?:/(\d+))?$")


class GermFileError(DomainError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def frac_str(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.match(text)
    if not m:
        raise DomainError(f"{text!r} is not a rational p/q")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise DomainError(f"{text!r} has a zero denominator")
    if gcd(num, den) != 1:
        raise DomainError(f"{text!r} is not in lowest terms")
    return Fraction(num, den)


def _ints(text: str) -> tuple:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise DomainError(f"{text!r} is not a comma-separated integer list") from None
    if any(x < 0 for x in out):
        raise DomainError(f"{text!r} has a negative entry")
    return out


def _exp_str(e) -> str:
    return ",".join(str(x) for x in e)


# ---------------------------------------------------------------------------
# germ files


def format_germ(g, q: int | None = None) -> str:
    """Canonical text of a ``Germ`` or of a ``RawGerm`` (which then needs ``q``)."""
    if isinstance(g, Germ):
        kind, q, labels = "germ", g.q, g.alphas
    else:
        if q is None:
            raise DomainError("raw germ files record the intended order q")
        kind, labels = "raw", g.labels
    lines = [f"format_version {FORMAT_VERSION}", f"kind {kind}", f"n {g.n}", f"q {q}", f"T {g.T}"]
    for i, x in enumerate(g.components):
        label = _exp_str(labels[i]) if labels is not None else "-"
        lines.append(f"component {label}")
        for e, c in x.sorted_terms():
            lines.append(f"term {_exp_str(e)} {frac_str(c)}")
    return "\n".join(lines) + "\n"


def parse_germ(text: str):
    """Parse germ-file text; returns ``(germ, q)`` with ``germ`` a Germ or RawGerm."""
    header = {}
    comps = []  # [label, {exp: coeff}, lineno]
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        key = parts[0]
        try:
            if len(header) < len(_HEADER):
                want = _HEADER[len(header)]
                if key != want:
                    raise DomainError(f"expected header field {want!r}, found {key!r}")
                if len(parts) != 2:
                    raise DomainError(f"{want} takes exactly one value")
                if key == "kind":
                    if parts[1] not in ("germ", "raw"):
                        raise DomainError(f"kind must be 'germ' or 'raw', not {parts[1]!r}")
                    header[key] = parts[1]
                else:
                    try:
                        header[key] = int(parts[1])
                    except ValueError:
                        raise DomainError(f"{key} must be an integer") from None
                    if key == "format_version" and header[key] != FORMAT_VERSION:
                        raise DomainError(f"unsupported format_version {header[key]}")
                    if key in ("n", "q", "T") and header[key] < 1:
                        raise DomainError(f"{key} must be positive")
                continue
            n, T = header["n"], header["T"]
            if key == "component":
                if len(parts) != 2:
                    raise DomainError("component takes one label")
                label = None if parts[1] == "-" else _ints(parts[1])
                if label is not None and len(label) != n:
                    raise DomainError(f"label {parts[1]} does not have {n} entries")
                comps.append([label, {}, lineno])
            elif key == "term":
                if not comps:
                    raise DomainError("term before any component")
                if len(parts) != 3:
                    raise DomainError("term takes an exponent and a coefficient")
                e = _ints(parts[1])
                if len(e) != n:
                    raise DomainError(f"exponent {parts[1]} does not have {n} entries")
                if not 1 <= sum(e) <= T:
                    raise DomainError(f"term degree {sum(e)} outside 1..T={T}")
                c = parse_rational(parts[2])
                if not c:
                    raise DomainError("zero coefficients are not written")
                terms = comps[-1][1]
                if e in terms:
                    raise DomainError(f"duplicate exponent {parts[1]}")
                terms[e] = c
            else:
                raise DomainError(f"unknown record {key!r}")
        except GermFileError:
            raise
        except DomainError as exc:
            raise GermFileError(lineno, str(exc)) from None
    if len(header) < len(_HEADER):
        raise GermFileError(0, f"missing header field {_HEADER[len(header)]!r}")
    n, q, T, kind = header["n"], header["q"], header["T"], header["kind"]
    jets = [MJet(n, T, terms) for _, terms, _ in comps]
    if kind == "germ":
        alphas = coordinate_indices(n, q)
        if len(comps) != len(alphas):
            raise GermFileError(comps[-1][2] if comps else 0,
                                f"germ files need {len(alphas)} components, found {len(comps)}")
        for (label, _, lineno), a in zip(comps, alphas):
            if label != a:
                raise GermFileError(lineno, f"component {label} out of canonical order (expected {_exp_str(a)})")
        try:
            return Germ(n, q, T, jets), q
        except DomainError as exc:
            raise GermFileError(0, str(exc)) from None
    labels = [c[0] for c in comps]
    if all(label is None for label in labels):
        labels = None
    elif any(label is None for label in labels):
        lineno = next(c[2] for c in comps if c[0] is None)
        raise GermFileError(lineno, "either every component has a label or none does")
    try:
        return RawGerm(n, T, jets, labels), q
    except DomainError as exc:
        raise GermFileError(0, str(exc)) from None


def read_germ(path: str):
    with open(path, encoding="utf-8") as fh:
        return parse_germ(fh.read())


def digest(g, q: int) -> str:
    return hashlib.sha256(format_germ(g, q).encode()).hexdigest()


# ---------------------------------------------------------------------------
# JSON encodings


def terms_json(terms) -> list:
    items = terms.items() if isinstance(terms, dict) else terms
    return [[list(e), frac_str(c)] for e, c in sorted(items, key=lambda kv: (sum(kv[0]), [-x for x in kv[0]]))]


def terms_from_json(data) -> dict:
    return {tuple(e): parse_rational(c) for e, c in data}


def poly_json(p: HomogeneousPoly) -> dict:
    return {"degree": p.degree, "terms": terms_json(p.terms)}


def poly_from_json(data, n: int) -> HomogeneousPoly:
    return HomogeneousPoly(n, data["degree"], terms_from_json(data["terms"]))


def jet_json(x: MJet) -> list:
    return terms_json(x.terms)


def jet_from_json(data, n: int, T: int) -> MJet:
    return MJet(n, T, terms_from_json(data))


def germ_json(g: Germ) -> list:
    return [{"alpha": list(a), "terms": jet_json(x)} for a, x in g.items()]


def germ_from_json(data, n: int, q: int, T: int) -> Germ:
    return Germ(n, q, T, {tuple(c["alpha"]): jet_from_json(c["terms"], n, T) for c in data})


def homography_json(h: Homography) -> dict:
    return {"A": [[frac_str(x) for x in row] for row in h.A], "b": [frac_str(x) for x in h.b]}


def homography_from_json(data) -> Homography:
    return Homography([[parse_rational(x) for x in row] for row in data["A"]],
                      [parse_rational(x) for x in data["b"]])


def _groups_json(P) -> dict:
    return {
        "q1": [{"alpha": list(a), "P": poly_json(p)} for a, p in P.q1.items()],
        "q2": [{"alpha": list(a), "P": poly_json(p)} for a, p in P.q2.items()],
    }


def _value_json(v):
    if isinstance(v, HomogeneousPoly):
        return {"type": "poly", "value": poly_json(v)}
    if isinstance(v, Germ):
        return {"type": "final-germ"}
    if isinstance(v, bool):
        return {"type": "bool", "value": v}
    if isinstance(v, int):
        return {"type": "int", "value": v}
    if isinstance(v, Fraction):
        return {"type": "rational", "value": frac_str(v)}
    if isinstance(v, (list, tuple)):
        return {"type": "list", "value": [_value_json(x) for x in v]}
    raise DomainError(f"cannot serialize certificate data of type {type(v).__name__}")


def _value_from_json(d, n: int, final: Germ | None):
    t = d["type"]
    if t == "poly":
        return poly_from_json(d["value"], n)
    if t == "final-germ":
        return final
    if t in ("int", "bool"):
        return d["value"]
    if t == "rational":
        return parse_rational(d["value"])
    if t == "list":
        return tuple(_value_from_json(x, n, final) for x in d["value"])
    raise DomainError(f"unknown certificate value type {t!r}")


def certificate_json(c: Certificate | None):
    if c is None:
        return None
    return {
        "identity": c.identity,
        "kind": c.kind,
        "r": c.r,
        "kappa": c.kappa,
        "alpha": list(c.alpha) if c.alpha is not None else None,
        "j": c.j,
        "statement": c.statement,
        "data": {k: _value_json(v) for k, v in c.data.items()},
    }


def certificate_from_json(d, n: int, final: Germ | None = None) -> Certificate | None:
    if d is None:
        return None
    return Certificate(
        d["identity"], d["kind"], d["r"], d["kappa"],
        tuple(d["alpha"]) if d["alpha"] is not None else None, d["j"],
        {k: _value_from_json(v, n, final) for k, v in d["data"].items()},
        d["statement"],
    )


def _stage_json(s) -> dict:
    norm = s.normalization
    sol = s.solve.solution
    diag = s.solve.diagnostics
    return {
        "r": s.r,
        "verdict": s.verdict,
        "P_before": _groups_json(s.P_before),
        "P_after": _groups_json(s.P_after),
        "normalization": None if norm is None else {
            "G": poly_json(norm.G),
            "H": [poly_json(h) for h in norm.H],
            "A": poly_json(norm.A),
            "B": poly_json(norm.B) if norm.B is not None else None,
            "g_unique": norm.g_unique,
            "anodine": [[frac_str(x) for x in row] for row in norm.anodine],
        },
        "solution": None if sol is None else {
            "a": [poly_json(a) for a in sol.a],
            "c": {str(k): poly_json(c) for k, c in sol.c.items()},
        },
        "certificate": certificate_json(s.solve.certificate),
        "alpha_equations_consistent": all(ok for *_, ok in diag["eliminated"]),
        "nonzero": [list(a) for a, _ in s.nonzero],
    }


def trace_json(trace, raw, q: int, decision=None) -> dict:
    """Machine-readable trace; ``raw`` is the input germ (for the digest)."""
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "trace",
        "n": trace.n,
        "q": trace.q,
        "T": trace.T,
        "input_sha256": digest(raw, q),
        "verdict": trace.verdict,
        "message": trace.message,
        "stages": [_stage_json(s) for s in trace.stages],
        "witness": None if trace.homography is None else {
            "homography": homography_json(trace.homography),
            "psi": [jet_json(x) for x in trace.reparametrization],
        },
        "final": None if trace.final is None else germ_json(trace.final),
        "certificate": certificate_json(trace.certificate),
    }
    if decision is not None:
        doc["decision"] = {
            "verdict": decision.kind,
            "message": decision.message,
            "certificate": certificate_json(decision.certificate),
            "failing_directions": [[frac_str(x) for x in s] for s in decision.failing_directions],
        }
    return doc


def write_json(doc, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# replay


def verify_trace(doc: dict, raw, q: int) -> list:
    """Re-check a trace against its input without rerunning the pipeline.

    Returns a list of problems; empty means the trace verifies.
    """
    problems = []
    if doc.get("kind") != "trace" or doc.get("format_version") != FORMAT_VERSION:
        return ["not a version-1 trace file"]
    n, T = doc["n"], doc["T"]
    if (n, doc["q"], T) != (raw.n, q, raw.T):
        return [f"trace shape (n={n}, q={doc['q']}, T={T}) does not match the germ file"]
    if doc["input_sha256"] != digest(raw, q):
        problems.append("input digest differs from the germ file")
    verdict = doc["verdict"]
    if verdict == "not-q-regular":
        if is_q_regular(raw, q):
            problems.append("trace claims non-regularity but the germ is q-regular")
        return problems
    final = germ_from_json(doc["final"], n, q, T)
    h = homography_from_json(doc["witness"]["homography"])
    psi = [jet_from_json(x, n, T) for x in doc["witness"]["psi"]]
    if not witness_holds(raw, h, psi, final):
        problems.append("witness does not map the input to the recorded germ")
    if verdict == "reduced":
        for i in range(n):
            e = tuple(int(k == i) for k in range(n))
            if final[e] != MJet.monomial(n, T, e):
                problems.append(f"final weight-1 coordinate x_{e} is not s{i + 1}")
        for a in final.alphas:
            o = final.residual(a).order()
            if o is not None and o < q + 3:
                problems.append(f"final residual of x_{a} starts in degree {o} < q+3")
        if any(s["verdict"] != "advance" for s in doc["stages"]):
            problems.append("reduced trace contains a failed stage")
    elif verdict == "not-property-P":
        cert = certificate_from_json(doc["certificate"], n, final)
        if cert is None:
            problems.append("failure without a certificate")
            return problems
        try:
            P = extract_P(ReducedGerm(final, cert.r))
        except DomainError as exc:
            problems.append(f"recorded germ is not reduced at order {cert.r}: {exc}")
            return problems
        problems.extend(_certificate_matches(cert, P, n))
        again = solve_distinguished(P).certificate
        if again is None or (again.identity, again.kind, again.alpha, again.j) != (cert.identity, cert.kind, cert.alpha, cert.j):
            problems.append("re-solving the recorded stage does not reproduce the certificate")
        if not verify_certificate(cert, n):
            problems.append(f"identity ({cert.identity}) is not violated by the recorded data")
    else:
        problems.append(f"unknown verdict {verdict!r}")
    return problems


def _certificate_matches(cert: Certificate, P, n: int) -> list:
    """The polynomials quoted in a certificate must be the germ's own ``P_alpha``."""
    k = cert.kappa
    want = {}
    if "P_k" in cert.data:
        want["P_k"] = pivot(n, k)
    if "P_kj" in cert.data:
        want["P_kj"] = pivot_j(n, k, cert.j)
    if "P_alpha" in cert.data:
        want["P_alpha"] = cert.alpha
    out = []
    for key, alpha in want.items():
        try:
            actual = P.get(alpha)
        except KeyError:
            out.append(f"certificate cites x_{alpha}, which is not in a stage group")
            continue
        if actual != cert.data[key]:
            out.append(f"certificate {key} differs from the recorded P_{alpha}")
    if k is not None and k not in (P.w1, P.w2):
        out.append(f"certificate weight {k} is not a stage weight")
    return out
