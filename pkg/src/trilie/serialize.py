"""JSON and LaTeX emitters plus the lossless document round trip.

Every rational number is serialized as an exact string "p/q" (never a
float), variables as "x_3_1", "x_0", "e_1_2", "f", "b_1_2", and all key
orders are fixed, so regenerated output is byte-identical for a fixed job.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .algebra import GammaTuple, classify, kappa
from .basis import BasisMember, InvariantBasis, PowerProduct, basis_kind
from .coadjoint import InvarianceCertificate
from .poly import (Monomial, Polynomial, RationalFunction, mono_cmp, parse_var_name,
                   var_latex, var_name)


def frac_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def poly_terms_json(p: Polynomial) -> List[dict]:
    out = []
    for mono, coeff in p.sorted_terms():
        out.append({"coeff": frac_str(coeff),
                    "monomial": {var_name(v): e for v, e in mono}})
    return out


def poly_from_terms_json(terms: List[dict]) -> Polynomial:
    acc: Dict[Monomial, Fraction] = {}
    for t in terms:
        mono = tuple(sorted((parse_var_name(name), int(e))
                            for name, e in t["monomial"].items()))
        acc[mono] = acc.get(mono, Fraction(0)) + Fraction(t["coeff"])
    return Polynomial(acc)


def member_json(mem: BasisMember) -> dict:
    if mem.role == "minor":
        return {"type": "polynomial", "role": "minor", "k": mem.k,
                "terms": poly_terms_json(mem.polynomial)}
    if mem.role == "central":
        if mem.polynomial is not None:
            return {"type": "polynomial", "role": "central",
                    "terms": poly_terms_json(mem.polynomial)}
        return {"type": "rational", "role": "central",
                "num": poly_terms_json(mem.rational.num),
                "den": poly_terms_json(mem.rational.den)}
    return {"type": "power_product", "role": "power",
            "factors": {str(k): frac_str(r) for k, r in mem.power.factors()}}


def member_from_json(obj: dict, n: int) -> BasisMember:
    role = obj["role"]
    if obj["type"] == "polynomial":
        return BasisMember(role, k=obj.get("k"),
                           polynomial=poly_from_terms_json(obj["terms"]))
    if obj["type"] == "rational":
        return BasisMember(role, rational=RationalFunction(
            poly_from_terms_json(obj["num"]), poly_from_terms_json(obj["den"])))
    factors = {int(k): Fraction(v) for k, v in obj["factors"].items()}
    return BasisMember(role, power=PowerProduct(n, factors))


@dataclass
class BasisDocument:
    """Header data, typed members and certificates of one generated basis."""

    n: int
    gamma: Tuple[Fraction, ...]
    case: str
    k0: Optional[int]
    alphas: Dict[int, Fraction]
    kind: str
    cardinality: int
    variables: str
    cleared: bool
    members: List[BasisMember] = field(default_factory=list)
    certificates: List[dict] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasisDocument):
            return NotImplemented
        if (self.n, self.gamma, self.case, self.k0, self.alphas, self.kind,
                self.cardinality, self.variables, self.cleared,
                self.certificates, self.checks) != \
           (other.n, other.gamma, other.case, other.k0, other.alphas, other.kind,
                other.cardinality, other.variables, other.cleared,
                other.certificates, other.checks):
            return False
        if len(self.members) != len(other.members):
            return False
        for a, b in zip(self.members, other.members):
            if (a.role, a.k) != (b.role, b.k):
                return False
            if (a.polynomial, a.rational) != (b.polynomial, b.rational):
                return False
            if (a.power is None) != (b.power is None):
                return False
            if a.power is not None and a.power.exponents != b.power.exponents:
                return False
        return True


def document_for_basis(basis: InvariantBasis,
                       certificates: Optional[List[InvarianceCertificate]] = None,
                       checks: Optional[Dict[str, bool]] = None) -> BasisDocument:
    cls = basis.classification
    return BasisDocument(
        n=basis.gamma.n,
        gamma=basis.gamma.gamma,
        case=basis.case,
        k0=cls.k0,
        alphas=dict(cls.alphas),
        kind=basis.kind,
        cardinality=basis.cardinality,
        variables=basis.variables,
        cleared=basis.cleared,
        members=list(basis.members),
        certificates=[certificate_json(c) for c in certificates or []],
        checks=dict(checks or {}),
    )


def certificate_json(cert: InvarianceCertificate) -> dict:
    entries = []
    for e in sorted(cert.entries, key=lambda e: e.operator):
        if e.kind == "residue":
            entries.append({"operator": e.operator, "residue": str(e.residue)})
        else:
            value = "none" if e.balance is None else frac_str(e.balance)
            entries.append({"operator": e.operator, "weight_balance": value})
    return {"subject": cert.subject, "ok": cert.ok, "entries": entries}


def emit_json(doc: BasisDocument) -> str:
    payload = {
        "n": doc.n,
        "gamma": [frac_str(q) for q in doc.gamma],
        "case": doc.case,
        "k0": doc.k0,
        "alphas": {str(k): frac_str(a) for k, a in sorted(doc.alphas.items())},
        "kind": doc.kind,
        "cardinality": doc.cardinality,
        "vars": doc.variables,
        "cleared": doc.cleared,
        "members": [member_json(m) for m in doc.members],
        "certificates": doc.certificates,
        "checks": doc.checks,
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_json(text: str) -> BasisDocument:
    obj = json.loads(text)
    return BasisDocument(
        n=obj["n"],
        gamma=tuple(Fraction(q) for q in obj["gamma"]),
        case=obj["case"],
        k0=obj["k0"],
        alphas={int(k): Fraction(v) for k, v in obj["alphas"].items()},
        kind=obj["kind"],
        cardinality=obj["cardinality"],
        variables=obj["vars"],
        cleared=obj["cleared"],
        members=[member_from_json(m, obj["n"]) for m in obj["members"]],
        certificates=obj["certificates"],
        checks=obj["checks"],
    )


# ---------------------------------------------------------------------------
# LaTeX
# ---------------------------------------------------------------------------

def frac_latex(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return sign + r"\frac{%d}{%d}" % (abs(q.numerator), q.denominator)


def poly_latex(p: Polynomial) -> str:
    if p.is_zero:
        return "0"
    chunks: List[str] = []
    for mono, coeff in p.sorted_terms():
        neg = coeff < 0
        mag = -coeff if neg else coeff
        body = "".join(var_latex(v) if e == 1 else "%s^{%d}" % (var_latex(v), e)
                       for v, e in mono)
        if not mono:
            body = frac_latex(mag)
        elif mag != 1:
            body = frac_latex(mag) + body
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append(("-" if neg else "+") + body)
    return "".join(chunks)


def minor_latex(n: int, k: int, variables: str) -> str:
    kap = kappa(n, k)
    if variables == "algebra":
        return r"\left|\mathcal{E}^{1,%d}_{%d,%d}\right|" % (k, kap, n)
    return r"\left|X^{%d,%d}_{1,%d}\right|" % (kap, n, k)


def _exp_latex(r: Fraction) -> str:
    if r == 1:
        return ""
    return "^{%s}" % (frac_str(r))


def member_latex(mem: BasisMember, n: int, variables: str) -> str:
    if mem.role == "minor":
        return minor_latex(n, mem.k, variables)
    if mem.role == "power":
        return "".join(minor_latex(n, k, variables) + _exp_latex(r)
                       for k, r in mem.power.factors())
    if mem.polynomial is not None:
        return poly_latex(mem.polynomial)
    rf = mem.rational
    quot = r"\frac{%s}{%s}" % (poly_latex(rf.num), poly_latex(rf.den))
    return quot


def emit_latex(doc: BasisDocument) -> str:
    if not doc.members:
        return r"\varnothing" + "\n"
    lines = []
    for mem in doc.members:
        if mem.role == "central" and mem.rational is not None:
            # present the x_0 / f member as leading variable plus the quotient
            lines.append(_central_latex(mem.rational, doc.variables))
        else:
            lines.append(member_latex(mem, doc.n, doc.variables))
    return ",\\quad ".join(lines) + "\n"


def _central_latex(rf: RationalFunction, variables: str) -> str:
    from .poly import F, X0
    lead = X0 if variables == "dual" else F
    lead_poly = Polynomial.variable(lead) * rf.den
    rest = RationalFunction(rf.num - lead_poly, rf.den)
    lead_tex = var_latex(lead)
    if rest.is_zero:
        return lead_tex
    if rest.den.is_one:
        body = poly_latex(rest.num)
        joiner = "" if body.startswith("-") else "+"
        return lead_tex + joiner + body
    return lead_tex + "+" + r"\frac{%s}{%s}" % (poly_latex(rest.num),
                                                poly_latex(rest.den))


def emit_text(doc: BasisDocument) -> str:
    lines = [f"n = {doc.n}, gamma = ({', '.join(frac_str(q) for q in doc.gamma)})",
             f"case = {doc.case}, kind = {doc.kind}, members = {doc.cardinality}"]
    if doc.k0 is not None:
        alphas = ", ".join(f"alpha_{k}={frac_str(a)}"
                           for k, a in sorted(doc.alphas.items()))
        lines.append(f"k0 = {doc.k0}" + (f", {alphas}" if alphas else ""))
    for pos, mem in enumerate(doc.members):
        if mem.power is not None:
            body = " * ".join(f"Delta_{k}^({frac_str(r)})"
                              for k, r in mem.power.factors())
        elif mem.polynomial is not None:
            body = str(mem.polynomial)
        else:
            body = str(mem.rational)
        lines.append(f"[{pos}] {mem.role}: {body}")
    for cert in doc.certificates:
        lines.append(f"certificate {cert['subject']}: "
                     + ("ok" if cert["ok"] else "FAILED"))
    for name, ok in doc.checks.items():
        lines.append(f"check {name}: " + ("ok" if ok else "FAILED"))
    return "\n".join(lines) + "\n"
