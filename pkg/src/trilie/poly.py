"""Exact sparse multivariate polynomial arithmetic over the rationals.

This is the computational kernel of the package: minors, coadjoint residues
and lifted invariants all reduce to exact arithmetic on these values.

Variables are small tuples produced by the ``*_var`` constructors, so a
single polynomial may mix dual coordinates x_ij, the scalar x_0, algebra
coordinates e_ij, the diagonal element f and group parameters b_ij.  The
tuple encoding makes the canonical variable order

    x_0 < x_ij (lex) < e_ij (lex) < f < b_ij (lex)

plain tuple comparison.  Coefficients are ``fractions.Fraction``.  All values
are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

Var = Tuple[int, ...]
# Monomial: ((var, exponent), ...) sorted by var, exponents > 0.
Monomial = Tuple[Tuple[Var, int], ...]

MONO_ONE: Monomial = ()

X0: Var = (0,)
F: Var = (3,)


def x_var(i: int, j: int) -> Var:
    """Dual coordinate x_ij, i > j (pairs with the basis element e_ji)."""
    if not 1 <= j < i:
        raise ValueError(f"x_{i}_{j}: need 1 <= j < i")
    return (1, i, j)


def e_var(i: int, j: int) -> Var:
    """Algebra coordinate e_ij, i < j."""
    if not 1 <= i < j:
        raise ValueError(f"e_{i}_{j}: need 1 <= i < j")
    return (2, i, j)


def b_var(i: int, j: int) -> Var:
    """Group parameter b_ij, i < j (entry of an upper triangular matrix)."""
    if not 1 <= i < j:
        raise ValueError(f"b_{i}_{j}: need 1 <= i < j")
    return (4, i, j)


_KIND_NAMES = {0: "x", 1: "x", 2: "e", 3: "f", 4: "b"}


def var_name(v: Var) -> str:
    """Plain-text / JSON name: x_0, x_3_1, e_1_2, f, b_1_2."""
    if v == X0:
        return "x_0"
    if v == F:
        return "f"
    return f"{_KIND_NAMES[v[0]]}_{v[1]}_{v[2]}"


def var_latex(v: Var) -> str:
    if v == X0:
        return "x_{0}"
    if v == F:
        return "f"
    kind = _KIND_NAMES[v[0]]
    if kind == "e":
        return "e_{%d%d}" % (v[1], v[2])
    return "%s_{%d%d}" % (kind, v[1], v[2])


def parse_var_name(name: str) -> Var:
    if name == "x_0":
        return X0
    if name == "f":
        return F
    kind, i, j = name.split("_")
    code = {"x": 1, "e": 2, "b": 4}[kind]
    return (code, int(i), int(j))


# ---------------------------------------------------------------------------
# monomials
# ---------------------------------------------------------------------------

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out: List[Tuple[Var, int]] = []
    ia = ib = 0
    la, lb = len(a), len(b)
    while ia < la and ib < lb:
        va, ea = a[ia]
        vb, eb = b[ib]
        if va == vb:
            out.append((va, ea + eb))
            ia += 1
            ib += 1
        elif va < vb:
            out.append(a[ia])
            ia += 1
        else:
            out.append(b[ib])
            ib += 1
    out.extend(a[ia:])
    out.extend(b[ib:])
    return tuple(out)


def mono_from_pairs(pairs: Iterable[Tuple[Var, int]]) -> Monomial:
    acc: Dict[Var, int] = {}
    for v, e in pairs:
        acc[v] = acc.get(v, 0) + e
    return tuple(sorted((v, e) for v, e in acc.items() if e))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_cmp(a: Monomial, b: Monomial) -> int:
    """Lexicographic monomial order; earlier variables are more significant."""
    ia = ib = 0
    la, lb = len(a), len(b)
    while ia < la or ib < lb:
        if ia < la and ib < lb:
            va, ea = a[ia]
            vb, eb = b[ib]
            if va == vb:
                if ea != eb:
                    return 1 if ea > eb else -1
                ia += 1
                ib += 1
            elif va < vb:
                return 1
            else:
                return -1
        elif ia < la:
            return 1
        else:
            return -1
    return 0


def mono_quotient(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """a / b, or None when b does not divide a."""
    out: List[Tuple[Var, int]] = []
    ia = ib = 0
    la, lb = len(a), len(b)
    while ib < lb:
        if ia >= la:
            return None
        va, ea = a[ia]
        vb, eb = b[ib]
        if va < vb:
            out.append(a[ia])
            ia += 1
        elif va == vb:
            if ea < eb:
                return None
            if ea > eb:
                out.append((va, ea - eb))
            ia += 1
            ib += 1
        else:
            return None
    out.extend(a[ia:])
    return tuple(out)


def mono_str(m: Monomial) -> str:
    if not m:
        return "1"
    parts = []
    for v, e in m:
        parts.append(var_name(v) if e == 1 else f"{var_name(v)}^{e}")
    return "*".join(parts)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Sparse polynomial {monomial: Fraction} in canonical form.

    Canonical means: no zero coefficients are stored, monomials store no zero
    exponents, and iteration orders are derived from the fixed monomial
    order, so equal polynomials are structurally equal.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, Fraction]] = None):
        clean: Dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    clean[mono] = Fraction(coeff)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls._raw({MONO_ONE: Fraction(1)})

    @classmethod
    def const(cls, c) -> "Polynomial":
        c = Fraction(c)
        return cls._raw({MONO_ONE: c} if c else {})

    @classmethod
    def variable(cls, v: Var) -> "Polynomial":
        return cls._raw({((v, 1),): Fraction(1)})

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_one(self) -> bool:
        return self.terms == {MONO_ONE: Fraction(1)}

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and MONO_ONE in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return self.terms.get(MONO_ONE, Fraction(0))

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=0)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = -c
            else:
                s = s - c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    def __rsub__(self, other) -> "Polynomial":
        return _coerce(other) - self

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Polynomial.zero()
            return Polynomial._raw({m: v * c for m, v in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero()
        out: Dict[Monomial, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                s = out.get(m)
                if s is None:
                    out[m] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- calculus -----------------------------------------------------------

    def derivative(self, v: Var) -> "Polynomial":
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for pos, (mv, e) in enumerate(m):
                if mv == v:
                    if e == 1:
                        dm = m[:pos] + m[pos + 1:]
                    else:
                        dm = m[:pos] + ((mv, e - 1),) + m[pos + 1:]
                    s = out.get(dm)
                    nc = c * e
                    out[dm] = nc if s is None else s + nc
                    if out[dm] == 0:
                        del out[dm]
                    break
                if mv > v:
                    break
        return Polynomial._raw(out)

    def gradient(self) -> Dict[Var, "Polynomial"]:
        """All nonzero partial derivatives in one pass over the terms."""
        out: Dict[Var, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            for pos, (mv, e) in enumerate(m):
                if e == 1:
                    dm = m[:pos] + m[pos + 1:]
                else:
                    dm = m[:pos] + ((mv, e - 1),) + m[pos + 1:]
                d = out.setdefault(mv, {})
                s = d.get(dm)
                nc = c * e
                d[dm] = nc if s is None else s + nc
                if d[dm] == 0:
                    del d[dm]
        return {v: Polynomial._raw(d) for v, d in out.items() if d}

    def evaluate(self, point: Mapping[Var, Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val *= point[v] ** e
            total += val
        return total

    def rename(self, mapping: Mapping[Var, Var]) -> "Polynomial":
        """Substitute variables by variables (used for x_ij -> e_ji)."""
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            nm = mono_from_pairs((mapping.get(v, v), e) for v, e in m)
            s = out.get(nm)
            out[nm] = c if s is None else s + c
            if out[nm] == 0:
                del out[nm]
        return Polynomial._raw(out)

    # -- division -----------------------------------------------------------

    def leading(self) -> Tuple[Monomial, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        best = None
        for m in self.terms:
            if best is None or mono_cmp(m, best) > 0:
                best = m
        return best, self.terms[best]

    def divide_exact(self, other: "Polynomial") -> Optional["Polynomial"]:
        """Return q with self == q * other, or None if no such q exists."""
        if not isinstance(other, Polynomial):
            other = Polynomial.const(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading()
        rem = dict(self.terms)
        quot: Dict[Monomial, Fraction] = {}
        while rem:
            rm = None
            for m in rem:
                if rm is None or mono_cmp(m, rm) > 0:
                    rm = m
            qm = mono_quotient(rm, lm)
            if qm is None:
                return None
            qc = rem[rm] / lc
            quot[qm] = qc
            for m, c in other.terms.items():
                t = mono_mul(qm, m)
                s = rem.get(t)
                nc = qc * c
                if s is None:
                    rem[t] = -nc
                else:
                    s = s - nc
                    if s:
                        rem[t] = s
                    else:
                        del rem[t]
        return Polynomial._raw(quot)

    # -- rendering ----------------------------------------------------------

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        import functools
        return sorted(self.terms.items(),
                      key=functools.cmp_to_key(lambda a, b: mono_cmp(a[0], b[0])),
                      reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks: List[str] = []
        for m, c in self.sorted_terms():
            neg = c < 0
            mag = -c if neg else c
            if m == MONO_ONE:
                body = str(mag)
            elif mag == 1:
                body = mono_str(m)
            else:
                body = f"{mag}*{mono_str(m)}"
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(chunks)

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _coerce(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial.const(x)
    return NotImplemented


def poly_divide_exact(a: Polynomial, b: Polynomial) -> Optional[Polynomial]:
    return a.divide_exact(b)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------

def determinant(rows: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant by cofactor expansion with memoized minors.

    Dense symbolic entries defeat elimination pivots, so plain recursive
    expansion with sharing of sub-minors (keyed by the remaining column set)
    is the right tool at this scale (up to ~8x8).
    """
    m = len(rows)
    for r in rows:
        if len(r) != m:
            raise ValueError("determinant of a non-square matrix")
    if m == 0:
        return Polynomial.one()
    memo: Dict[Tuple[int, ...], Polynomial] = {}

    def minor(cols: Tuple[int, ...]) -> Polynomial:
        r = m - len(cols)
        if not cols:
            return Polynomial.one()
        cached = memo.get(cols)
        if cached is not None:
            return cached
        acc = Polynomial.zero()
        for pos, c in enumerate(cols):
            entry = rows[r][c]
            if entry.is_zero:
                continue
            sub = minor(cols[:pos] + cols[pos + 1:])
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[cols] = acc
        return acc

    return minor(tuple(range(m)))


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Quotient of polynomials, kept with a monic denominator.

    Full gcd reduction is deliberately not attempted; equality is decided
    exactly by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Optional[Polynomial] = None):
        if den is None:
            den = Polynomial.one()
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            self.num = Polynomial.zero()
            self.den = Polynomial.one()
            return
        _, lc = den.leading()
        if lc != 1:
            inv = Fraction(1) / lc
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: Polynomial) -> "RationalFunction":
        return cls(p)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_one

    def __add__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den,
                                self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den - other.num * self.den,
                                self.den * other.den)

    def __rsub__(self, other) -> "RationalFunction":
        return _coerce_rf(other) - self

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            return RationalFunction(self.num * other, self.den)
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _coerce_rf(other) / self

    def __eq__(self, other) -> bool:
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    def evaluate(self, point: Mapping[Var, Fraction]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        if self.den.is_one:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    if isinstance(x, (int, Fraction)):
        return RationalFunction(Polynomial.const(x))
    return NotImplemented


# ---------------------------------------------------------------------------
# polynomials with a formal exponential grade
# ---------------------------------------------------------------------------

class ExpScalar:
    """Finite sum of P_q * u^q with rational grades q and polynomial P_q.

    u^q stands for the exponential e^(q*eps) of the one group parameter that
    never appears as a variable itself; the product rule is purely additive
    on grades, which keeps all identities free of transcendental rewriting.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Optional[Mapping[Fraction, Polynomial]] = None):
        clean: Dict[Fraction, Polynomial] = {}
        if parts:
            for q, p in parts.items():
                if not p.is_zero:
                    clean[Fraction(q)] = p
        self.parts = clean

    @classmethod
    def _raw(cls, parts: Dict[Fraction, Polynomial]) -> "ExpScalar":
        s = cls.__new__(cls)
        s.parts = parts
        return s

    @classmethod
    def zero(cls) -> "ExpScalar":
        return cls._raw({})

    @classmethod
    def one(cls) -> "ExpScalar":
        return cls._raw({Fraction(0): Polynomial.one()})

    @classmethod
    def from_poly(cls, p: Polynomial, grade=0) -> "ExpScalar":
        if p.is_zero:
            return cls.zero()
        return cls._raw({Fraction(grade): p})

    @classmethod
    def u(cls, grade) -> "ExpScalar":
        return cls._raw({Fraction(grade): Polynomial.one()})

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other) -> "ExpScalar":
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.parts)
        for q, p in other.parts.items():
            s = out.get(q)
            s = p if s is None else s + p
            if s.is_zero:
                out.pop(q, None)
            else:
                out[q] = s
        return ExpScalar._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "ExpScalar":
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "ExpScalar":
        return _coerce_exp(other) - self

    def __neg__(self) -> "ExpScalar":
        return ExpScalar._raw({q: -p for q, p in self.parts.items()})

    def __mul__(self, other) -> "ExpScalar":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ExpScalar.zero()
            return ExpScalar._raw({q: p * other for q, p in self.parts.items()})
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        out: Dict[Fraction, Polynomial] = {}
        for qa, pa in self.parts.items():
            for qb, pb in other.parts.items():
                q = qa + qb
                prod = pa * pb
                s = out.get(q)
                s = prod if s is None else s + prod
                if s.is_zero:
                    out.pop(q, None)
                else:
                    out[q] = s
        return ExpScalar._raw(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _coerce_exp(other)
        if other is NotImplemented:
            return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        raise TypeError("ExpScalar is not hashable")

    def derivative(self, v: Var) -> "ExpScalar":
        return ExpScalar({q: p.derivative(v) for q, p in self.parts.items()})

    def grades(self) -> List[Fraction]:
        return sorted(self.parts)

    def coefficient(self, grade) -> Polynomial:
        return self.parts.get(Fraction(grade), Polynomial.zero())

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        chunks = []
        for q in self.grades():
            p = self.parts[q]
            if q == 0:
                chunks.append(f"({p})")
            else:
                chunks.append(f"({p})*u^({q})")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"ExpScalar({self})"


def _coerce_exp(x):
    if isinstance(x, ExpScalar):
        return x
    if isinstance(x, Polynomial):
        return ExpScalar.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return ExpScalar.from_poly(Polynomial.const(x))
    return NotImplemented
