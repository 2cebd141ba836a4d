"""Infinitesimal coadjoint operators and exact certification utilities.

For each basis element a the operator acts on functions of the dual
coordinates as

    Xhat_a F = sum_b (sum_c c^c_ab x_c) dF/dx_b,

where c^c_ab are the structure constants and x_c is the dual coordinate of
basis element c.  The kernel of all operators is the space of invariants,
which is sign-convention independent; relative weights reported by
``relative_weight`` are tied to this fixed convention.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (GammaTuple, Idx, StructureConstants, basis_indices,
                      dim_algebra, dual_var, idx_name)
from .poly import Polynomial, RationalFunction, Var, X0, x_var

JOBS_ENV = "TRILIE_JOBS"


class DegenerateSamplingError(RuntimeError):
    """Every sampled point hit a vanishing denominator."""


def dual_variable_list(n: int) -> List[Var]:
    out = [X0]
    out.extend(x_var(i, j) for j in range(1, n) for i in range(j + 1, n + 1))
    out.sort()
    return out


@dataclass
class CoadjointOperator:
    """One infinitesimal operator: variable -> linear coefficient polynomial."""

    source: Idx
    action: Dict[Var, Polynomial]

    @property
    def name(self) -> str:
        return idx_name(self.source)

    @property
    def is_zero(self) -> bool:
        return not self.action

    def apply(self, p: Polynomial,
              grads: Optional[Dict[Var, Polynomial]] = None) -> Polynomial:
        if grads is None:
            grads = p.gradient()
        out = Polynomial.zero()
        for v, coeff in self.action.items():
            dp = grads.get(v)
            if dp is not None:
                out = out + coeff * dp
        return out


def build_operators(g: GammaTuple) -> List[CoadjointOperator]:
    sc = StructureConstants(g)
    ops = []
    for a in sc.indices:
        action: Dict[Var, Polynomial] = {}
        for b in sc.indices:
            br = sc.table[(a, b)]
            if not br:
                continue
            coeff = Polynomial.zero()
            for c, q in br.items():
                coeff = coeff + Polynomial.variable(dual_var(c)) * q
            if not coeff.is_zero:
                action[dual_var(b)] = coeff
        ops.append(CoadjointOperator(a, action))
    return ops


# ---------------------------------------------------------------------------
# invariance certificates
# ---------------------------------------------------------------------------

@dataclass
class CertificateEntry:
    operator: str
    kind: str                      # "residue" or "weight_balance"
    residue: Optional[Polynomial] = None
    balance: Optional[Fraction] = None

    @property
    def ok(self) -> bool:
        if self.kind == "residue":
            return self.residue is not None and self.residue.is_zero
        return self.balance == 0


@dataclass
class InvarianceCertificate:
    subject: str
    entries: List[CertificateEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def _residue(op: CoadjointOperator, num: Polynomial, den: Polynomial,
             grads_num, grads_den) -> Polynomial:
    d_num = op.apply(num, grads_num)
    if den.is_one:
        return d_num
    d_den = op.apply(den, grads_den)
    if d_den.is_zero:
        return d_num
    w = d_den.divide_exact(den)
    if w is not None:
        # residue of the quotient rule divided by the nonzero factor den
        return d_num - w * num
    return den * d_num - num * d_den


def _map_maybe_parallel(fn, items):
    jobs = int(os.environ.get(JOBS_ENV, "1") or "1")
    if jobs > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def check_invariant(F: Union[Polynomial, RationalFunction],
                    ops: Sequence[CoadjointOperator],
                    subject: str = "") -> InvarianceCertificate:
    """Exact residues of Xhat_a F for every operator; all must vanish."""
    if isinstance(F, Polynomial):
        F = RationalFunction(F)
    num, den = F.num, F.den
    grads_num = num.gradient()
    grads_den = den.gradient()

    def one(op: CoadjointOperator) -> CertificateEntry:
        r = _residue(op, num, den, grads_num, grads_den)
        return CertificateEntry(op.name, "residue", residue=r)

    cert = InvarianceCertificate(subject or str(F))
    cert.entries = _map_maybe_parallel(one, list(ops))
    return cert


def relative_weight(F: Polynomial, op: CoadjointOperator) -> Optional[Fraction]:
    """Scalar chi with Xhat_a F = chi * F, or None when F is not relative."""
    if F.is_zero:
        raise ValueError("relative weight of the zero polynomial")
    d = op.apply(F)
    if d.is_zero:
        return Fraction(0)
    q = d.divide_exact(F)
    if q is not None and q.is_constant:
        return q.constant_value()
    return None


# ---------------------------------------------------------------------------
# counting oracle and functional independence
# ---------------------------------------------------------------------------

def _rank(rows: List[List[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = Fraction(1) / prow[col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                f *= inv
                row = rows[r]
                for c in range(col, ncols):
                    row[c] -= f * prow[c]
        rank += 1
        col += 1
    return rank


def count_invariants_oracle(g: GammaTuple, trials: int = 3, seed: int = 0) -> int:
    """dim(g) minus the generic rank of the structure matrix M(x)_ab.

    The rank is taken as the maximum over random rational points (exact
    arithmetic), never symbolically.
    """
    if trials < 1:
        raise ValueError("need trials >= 1")
    sc = StructureConstants(g)
    idxs = sc.indices
    entries: Dict[Tuple[int, int], Polynomial] = {}
    for ia, a in enumerate(idxs):
        for ib, b in enumerate(idxs):
            br = sc.table[(a, b)]
            if br:
                p = Polynomial.zero()
                for c, q in br.items():
                    p = p + Polynomial.variable(dual_var(c)) * q
                if not p.is_zero:
                    entries[(ia, ib)] = p
    variables = dual_variable_list(g.n)
    rng = random.Random(seed)
    best = 0
    dim = dim_algebra(g.n)
    for _ in range(trials):
        point = {v: Fraction(rng.randint(-1000, 1000)) for v in variables}
        rows = [[Fraction(0)] * dim for _ in range(dim)]
        for (ia, ib), p in entries.items():
            rows[ia][ib] = p.evaluate(point)
        best = max(best, _rank(rows))
    return dim - best


def gradient_row(member, point: Dict[Var, Fraction],
                 variables: Sequence[Var]) -> List[Fraction]:
    """Row of the Jacobian at a point, up to a harmless nonzero scaling.

    Polynomials contribute their gradient, quotients the numerator of the
    quotient rule, and objects exposing ``gradient_row`` (formal power
    products) are delegated to.
    """
    if isinstance(member, Polynomial):
        grads = member.gradient()
        return [grads[v].evaluate(point) if v in grads else Fraction(0)
                for v in variables]
    if isinstance(member, RationalFunction):
        dv = member.den.evaluate(point)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        nv = member.num.evaluate(point)
        gn = member.num.gradient()
        gd = member.den.gradient()
        row = []
        for v in variables:
            a = gn[v].evaluate(point) if v in gn else Fraction(0)
            b = gd[v].evaluate(point) if v in gd else Fraction(0)
            row.append(dv * a - nv * b)
        return row
    return member.gradient_row(point, variables)


def functional_independence(members: Sequence, g: GammaTuple,
                            seed: int = 0, retries: int = 10) -> bool:
    """Jacobian rank test at random rational points.

    True as soon as one point realizes full rank.  A point where every
    member evaluates cleanly but the rank is deficient is evidence of
    dependence, so False is returned after the retry budget; if no point
    evaluates at all the sampling is reported as degenerate.
    """
    members = list(members)
    if not members:
        return True
    variables = dual_variable_list(g.n)
    rng = random.Random(seed)
    sampled = 0
    for _ in range(retries):
        point = {v: Fraction(rng.randint(-1000, 1000)) for v in variables}
        try:
            rows = [gradient_row(m, point, variables) for m in members]
        except ZeroDivisionError:
            continue
        sampled += 1
        if _rank(rows) == len(members):
            return True
    if sampled == 0:
        raise DegenerateSamplingError("no sample point avoided the singular locus")
    return False
