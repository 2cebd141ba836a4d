"""Structure layer for the solvable triangular Lie algebras handled here.

The algebra for a parameter tuple gamma of length n has the canonical basis
e_ij (1 <= i < j <= n, the strictly upper triangular matrix units) together
with one diagonal element f acting like diag(gamma_1, ..., gamma_n):

    [e_ij, e_pq] = delta_pj e_iq - delta_iq e_pj
    [f, e_ij]    = (gamma_i - gamma_j) e_ij

Two tuples describe isomorphic algebras iff they agree up to an affine map
gamma -> lam*gamma + mu (lam != 0) combined with an optional mirror
reflection, which is why classification data must be invariant under both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .poly import F, Var, X0, e_var, x_var

# Basis index: ("e", i, j) with i < j, or ("f",).  Plain tuple comparison
# realizes the fixed basis order e_ij (lex) < f.
Idx = Tuple
F_IDX: Idx = ("f",)


class AllEqualGammaError(ValueError):
    """The diagonal parameter tuple is proportional to the identity."""


class DimensionMismatchError(ValueError):
    pass


def e_idx(i: int, j: int) -> Idx:
    if not 1 <= i < j:
        raise ValueError(f"e_{i}_{j}: need 1 <= i < j")
    return ("e", i, j)


def idx_name(a: Idx) -> str:
    if a == F_IDX:
        return "f"
    return f"e_{a[1]}_{a[2]}"


def basis_indices(n: int) -> List[Idx]:
    out = [("e", i, j) for i in range(1, n) for j in range(i + 1, n + 1)]
    out.append(F_IDX)
    return out


def dual_var(a: Idx) -> Var:
    """Dual coordinate of a basis element: e_ij <-> x_ji, f <-> x_0."""
    if a == F_IDX:
        return X0
    return x_var(a[2], a[1])


def algebra_var(a: Idx) -> Var:
    if a == F_IDX:
        return F
    return e_var(a[1], a[2])


def dim_algebra(n: int) -> int:
    return n * (n - 1) // 2 + 1


def kappa(n: int, k: int) -> int:
    """Conjugate index n - k + 1."""
    return n - k + 1


@dataclass(frozen=True)
class GammaTuple:
    """The n diagonal parameters, exact rationals, not all equal."""

    n: int
    gamma: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need n >= 2")
        if len(self.gamma) != self.n:
            raise DimensionMismatchError("gamma length differs from n")
        if len(set(self.gamma)) == 1:
            raise AllEqualGammaError("gamma proportional to the identity is excluded")

    @classmethod
    def of(cls, values) -> "GammaTuple":
        g = tuple(Fraction(v) for v in values)
        return cls(len(g), g)

    @classmethod
    def parse(cls, text: str) -> "GammaTuple":
        return cls.of(part.strip() for part in text.split(","))

    def g(self, i: int) -> Fraction:
        """1-based access gamma_i."""
        return self.gamma[i - 1]

    def reflect(self) -> "GammaTuple":
        return GammaTuple(self.n, tuple(reversed(self.gamma)))

    def normalize(self) -> "GammaTuple":
        """Shift to trace zero; idempotent and classification preserving."""
        mean = sum(self.gamma, Fraction(0)) / self.n
        return GammaTuple(self.n, tuple(v - mean for v in self.gamma))


def bracket(a: Idx, b: Idx, g: GammaTuple) -> Dict[Idx, Fraction]:
    """Bracket of two basis elements as {basis index: coefficient}."""
    n = g.n
    for idx in (a, b):
        if idx != F_IDX and not (1 <= idx[1] < idx[2] <= n):
            raise ValueError(f"index {idx} out of range for n={n}")
    if a == F_IDX and b == F_IDX:
        return {}
    if a == F_IDX:
        i, j = b[1], b[2]
        c = g.g(i) - g.g(j)
        return {b: c} if c else {}
    if b == F_IDX:
        i, j = a[1], a[2]
        c = g.g(j) - g.g(i)
        return {a: c} if c else {}
    i, j = a[1], a[2]
    p, q = b[1], b[2]
    out: Dict[Idx, Fraction] = {}
    if p == j:
        out[e_idx(i, q)] = out.get(e_idx(i, q), Fraction(0)) + 1
    if i == q:
        key = e_idx(p, j)
        out[key] = out.get(key, Fraction(0)) - 1
    return {k: v for k, v in out.items() if v}


def bracket_combo(ca: Dict[Idx, Fraction], cb: Dict[Idx, Fraction],
                  g: GammaTuple) -> Dict[Idx, Fraction]:
    """Bilinear extension of the bracket to linear combinations."""
    out: Dict[Idx, Fraction] = {}
    for a, qa in ca.items():
        for b, qb in cb.items():
            for c, qc in bracket(a, b, g).items():
                s = out.get(c, Fraction(0)) + qa * qb * qc
                if s:
                    out[c] = s
                else:
                    out.pop(c, None)
    return out


class StructureConstants:
    """Materialized bracket table for one gamma tuple."""

    def __init__(self, g: GammaTuple):
        self.gamma = g
        self.indices = basis_indices(g.n)
        self.table: Dict[Tuple[Idx, Idx], Dict[Idx, Fraction]] = {}
        for a in self.indices:
            for b in self.indices:
                self.table[(a, b)] = bracket(a, b, g)

    def antisymmetry_ok(self) -> bool:
        for a in self.indices:
            for b in self.indices:
                ab = self.table[(a, b)]
                ba = self.table[(b, a)]
                if set(ab) != set(ba):
                    return False
                if any(ab[c] != -ba[c] for c in ab):
                    return False
        return True

    def jacobi_ok(self) -> bool:
        g = self.gamma
        idxs = self.indices
        for ia in range(len(idxs)):
            for ib in range(ia + 1, len(idxs)):
                for ic in range(ib + 1, len(idxs)):
                    a, b, c = idxs[ia], idxs[ib], idxs[ic]
                    acc: Dict[Idx, Fraction] = {}
                    for x, yz in ((a, (b, c)), (b, (c, a)), (c, (a, b))):
                        inner = self.table[yz]
                        for d, q in bracket_combo({x: Fraction(1)}, inner, g).items():
                            s = acc.get(d, Fraction(0)) + q
                            if s:
                                acc[d] = s
                            else:
                                acc.pop(d, None)
                    if acc:
                        return False
        return True


@dataclass(frozen=True)
class GammaClassification:
    """Case data: singular flag, first asymmetric index k0 and the exponents.

    singular means gamma_k == gamma_(n-k+1) for every k up to floor(n/2); in
    that case k0 is None and alphas is empty.  Otherwise k0 is the least k
    breaking the symmetry and alphas maps k in k0+1..floor(n/2) to

        alpha_k = - sum_{i=k0..k} (gamma_{n-i+1} - gamma_i)
                    / (gamma_{n-k0+1} - gamma_{k0}).
    """

    singular: bool
    k0: Optional[int]
    alphas: Dict[int, Fraction]

    def expected_count(self, n: int) -> int:
        return n // 2 + 1 if self.singular else n // 2 - 1


def classify(g: GammaTuple) -> GammaClassification:
    n = g.n
    m = n // 2
    k0 = None
    for k in range(1, m + 1):
        if g.g(k) != g.g(kappa(n, k)):
            k0 = k
            break
    if k0 is None:
        return GammaClassification(True, None, {})
    denom = g.g(kappa(n, k0)) - g.g(k0)
    # self-consistency: the formula gives alpha_{k0} = -1
    assert -(g.g(kappa(n, k0)) - g.g(k0)) / denom == -1
    alphas: Dict[int, Fraction] = {}
    for k in range(k0 + 1, m + 1):
        s = sum((g.g(kappa(n, i)) - g.g(i) for i in range(k0, k + 1)), Fraction(0))
        alphas[k] = -s / denom
    return GammaClassification(False, k0, alphas)


def secondary_diagonal_commutes(g: GammaTuple) -> bool:
    """Whether [f, e_k,kappa] = 0 for every k up to floor(n/2)."""
    n = g.n
    for k in range(1, n // 2 + 1):
        if bracket(F_IDX, e_idx(k, kappa(n, k)), g):
            return False
    return True


def _affine_witness(src: Tuple[Fraction, ...], dst: Tuple[Fraction, ...]):
    """Solve dst = lam*src + mu from the first non-constant position pair."""
    i0 = 0
    i1 = next((i for i in range(len(src)) if src[i] != src[i0]), None)
    if i1 is None:
        return None
    lam = (dst[i1] - dst[i0]) / (src[i1] - src[i0])
    if lam == 0:
        return None
    mu = dst[i0] - lam * src[i0]
    if all(dst[i] == lam * src[i] + mu for i in range(len(src))):
        return lam, mu
    return None


def gamma_equivalent(g1: GammaTuple, g2: GammaTuple):
    """Equivalence test with witness (lam, mu, reflected) when it holds."""
    if g1.n != g2.n:
        raise DimensionMismatchError("tuples of different length")
    w = _affine_witness(g1.gamma, g2.gamma)
    if w is not None:
        return True, (w[0], w[1], False)
    w = _affine_witness(tuple(reversed(g1.gamma)), g2.gamma)
    if w is not None:
        return True, (w[0], w[1], True)
    return False, None
