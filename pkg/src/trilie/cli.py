"""Command line front end.

Commands
    gen        build the invariant basis and print it (json, latex or text)
    verify     build plus exact certification (residues, weights, independence)
    classify   case data, exponents, basis kind and expected counts
    count      counting oracle: dimension minus generic rank at random points
    lifted     lifted-invariant checks (matrix identity, duality, center test)
    lemma2     submatrix determinant identities for all admissible k
    normcheck  normalization subsystems with the solved expressions
    symcheck   enveloping-algebra checks (commutation, constants, operator basis)

Output is deterministic for a fixed job (including --seed) and goes to
standard output; failures print machine-readable error JSON and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .algebra import (AllEqualGammaError, GammaTuple, classify, dim_algebra,
                      gamma_equivalent, secondary_diagonal_commutes)
from .basis import (basis_kind, build_basis, certify_basis, clear_denominators,
                    transport_to_dual)
from .coadjoint import build_operators, count_invariants_oracle
from .enveloping import (IdentityFailureError, build_operator_basis,
                         constant_summand_pairs, idx_name, minor_variables_commute,
                         symmetrized_member_matches, verify_constant_summand)
from .lifted import (LiftedFrame, b1n_derivatives_vanish, lemma2_identities,
                     lifted_invariants, matrix_lifted_invariants, scalar_via_duality,
                     verify_conjugation_identity, verify_normalization_solution)
from .serialize import (document_for_basis, emit_json, emit_latex, emit_text,
                        frac_str)


@dataclass
class JobSpec:
    command: str
    n: int
    gamma: List[Fraction]
    variables: str = "dual"
    fmt: str = "json"
    seed: int = 0
    cleared: bool = False


class CliError(Exception):
    def __init__(self, kind: str, message: str, code: int = 2):
        super().__init__(message)
        self.kind = kind
        self.code = code


def _parse_gamma(spec: JobSpec) -> GammaTuple:
    try:
        g = GammaTuple.of(spec.gamma)
    except AllEqualGammaError as exc:
        raise CliError("DomainError", str(exc))
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError("ParseError", str(exc))
    if g.n != spec.n:
        raise CliError("ParseError", f"gamma has {g.n} entries, expected {spec.n}")
    return g


def _print_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def cmd_gen(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    basis = build_basis(g, spec.variables)
    if spec.cleared:
        if basis.case != "singular":
            raise CliError("DomainError",
                           "--cleared applies to the singular case only")
        basis = clear_denominators(basis)
    doc = document_for_basis(basis)
    if spec.fmt == "json":
        sys.stdout.write(emit_json(doc))
    elif spec.fmt == "latex":
        sys.stdout.write(emit_latex(doc))
    else:
        sys.stdout.write(emit_text(doc))
    return 0


def cmd_verify(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    basis = build_basis(g, spec.variables)
    if spec.cleared and basis.case == "singular":
        basis = clear_denominators(basis)
    ops = build_operators(g)
    certs, independent = certify_basis(basis, ops, seed=spec.seed)
    oracle = count_invariants_oracle(g, seed=spec.seed)
    checks = {
        "all_residues_zero": all(c.ok for c in certs),
        "functionally_independent": independent,
        "cardinality_matches_oracle": basis.cardinality == oracle,
    }
    if spec.variables == "algebra":
        dual = build_basis(g, "dual")
        transported = transport_to_dual(basis)
        same = all(
            (a.polynomial, a.rational) == (b.polynomial, b.rational)
            and (a.power.exponents if a.power else None)
            == (b.power.exponents if b.power else None)
            for a, b in zip(transported.members,
                            (clear_denominators(dual) if basis.cleared else dual).members))
        checks["algebra_matches_dual"] = same
    doc = document_for_basis(basis, certs, checks)
    if spec.fmt == "json":
        sys.stdout.write(emit_json(doc))
    elif spec.fmt == "latex":
        sys.stdout.write(emit_latex(doc))
    else:
        sys.stdout.write(emit_text(doc))
    if not all(checks.values()):
        raise CliError("VerificationFailure", "a certificate or check failed", code=1)
    return 0


def cmd_classify(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    cls = classify(g)
    normalized = g.normalize()
    equivalent, _ = gamma_equivalent(g, normalized)
    _print_json({
        "n": g.n,
        "gamma": [frac_str(q) for q in g.gamma],
        "case": "singular" if cls.singular else "regular",
        "k0": cls.k0,
        "alphas": {str(k): frac_str(a) for k, a in sorted(cls.alphas.items())},
        "kind": basis_kind(g),
        "expected_cardinality": cls.expected_count(g.n),
        "secondary_diagonal_commutes": secondary_diagonal_commutes(g),
        "normalized_gamma": [frac_str(q) for q in normalized.gamma],
        "normalized_equivalent": equivalent,
    })
    return 0


def cmd_count(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    count = count_invariants_oracle(g, seed=spec.seed)
    cls = classify(g)
    payload = {
        "n": g.n,
        "gamma": [frac_str(q) for q in g.gamma],
        "dim": dim_algebra(g.n),
        "count": count,
        "expected": cls.expected_count(g.n),
        "seed": spec.seed,
    }
    if spec.fmt == "text":
        sys.stdout.write(f"{count}\n")
    else:
        _print_json(payload)
    if count != payload["expected"]:
        raise CliError("VerificationFailure", "oracle disagrees with the case count",
                       code=1)
    return 0


def cmd_lifted(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    frame = LiftedFrame.generic(g)
    inv = lifted_invariants(frame)
    mat = matrix_lifted_invariants(frame)
    matrix_ok = all(inv.entry(i, j) == mat[(i, j)]
                    for i in range(2, g.n + 1) for j in range(1, i))
    duality_ok = inv.scalar == scalar_via_duality(frame)
    conj_ok = verify_conjugation_identity(frame, inv)
    center_free = b1n_derivatives_vanish(frame, inv)
    payload = {
        "n": g.n,
        "gamma": [frac_str(q) for q in g.gamma],
        "inverse_exact": frame.check_inverse(),
        "matrix_formula_matches_conjugation": matrix_ok,
        "scalar_formula_matches_duality": duality_ok,
        "conjugation_identity": conj_ok,
        "gamma1_equals_gamman": g.g(1) == g.g(g.n),
        "b1n_inessential": center_free,
    }
    _print_json(payload)
    ok = (payload["inverse_exact"] and matrix_ok and duality_ok and conj_ok
          and center_free == payload["gamma1_equals_gamman"])
    if not ok:
        raise CliError("VerificationFailure", "a lifted-invariant check failed",
                       code=1)
    return 0


def cmd_lemma2(spec: JobSpec) -> int:
    n = spec.n
    results = [{"k": k, "ok": lemma2_identities(n, k)} for k in range(2, n)]
    _print_json({"n": n, "results": results})
    if not all(r["ok"] for r in results):
        raise CliError("VerificationFailure", "a determinant identity failed", code=1)
    return 0


def cmd_normcheck(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    report = verify_normalization_solution(g)
    _print_json({
        "n": g.n,
        "gamma": [frac_str(q) for q in g.gamma],
        "subsystems": [{"subsystem": r.subsystem, "k": r.k,
                        "status": "ok" if r.ok else "failed",
                        "equations": r.checked}
                       for r in report.results],
    })
    if not report.all_ok:
        raise CliError("VerificationFailure", "a normalization subsystem failed",
                       code=1)
    return 0


def cmd_symcheck(spec: JobSpec) -> int:
    g = _parse_gamma(spec)
    cls = classify(g)
    commute = {str(k): minor_variables_commute(g, k)
               for k in range(1, g.n // 2 + 1)}
    constants = []
    if cls.singular:
        for k, irange in sorted(constant_summand_pairs(g).items()):
            if not irange:
                constants.append({"k": k, "status": "vacuous"})
                continue
            for i in irange:
                try:
                    c = verify_constant_summand(g, k, i)
                    constants.append({"k": k, "i": i, "c": frac_str(c)})
                except IdentityFailureError as exc:
                    constants.append({"k": k, "i": i, "status": "failed",
                                      "residual": str(exc.residual)})
    members, powers = build_operator_basis(g)
    payload = {
        "n": g.n,
        "gamma": [frac_str(q) for q in g.gamma],
        "minor_variables_commute": commute,
        "constant_summands": constants,
        "operator_members": [str(m) for m in members],
        "power_members": [{str(k): frac_str(r) for k, r in p.factors()}
                          for p in powers],
        "member_matches_symmetrized": (symmetrized_member_matches(g)
                                       if cls.singular else None),
    }
    _print_json(payload)
    ok = all(commute.values()) and all("residual" not in c for c in constants)
    if cls.singular:
        ok = ok and payload["member_matches_symmetrized"]
    if not ok:
        raise CliError("VerificationFailure", "a symmetrization check failed", code=1)
    return 0


_COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "classify": cmd_classify,
    "count": cmd_count,
    "lifted": cmd_lifted,
    "lemma2": cmd_lemma2,
    "normcheck": cmd_normcheck,
    "symcheck": cmd_symcheck,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trilie",
                                     description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("-n", type=int, required=True)
        if name != "lemma2":
            p.add_argument("--gamma", required=True,
                           help="comma separated exact rationals, e.g. 1,0,1 or 1/2,-3/2")
        p.add_argument("--vars", choices=("dual", "algebra"), default="dual")
        p.add_argument("--format", choices=("json", "latex", "text"), default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cleared", action="store_true")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    gamma_text = getattr(args, "gamma", None)
    try:
        if gamma_text is not None:
            try:
                gamma = [Fraction(part.strip()) for part in gamma_text.split(",")]
            except (ValueError, ZeroDivisionError) as exc:
                raise CliError("ParseError", f"bad gamma {gamma_text!r}: {exc}")
        else:
            gamma = []
        if args.n < 2:
            raise CliError("DomainError", "need n >= 2")
        spec = JobSpec(args.command, args.n, gamma, args.vars, args.format,
                       args.seed, args.cleared)
        return _COMMANDS[args.command](spec)
    except CliError as exc:
        sys.stdout.write(json.dumps(
            {"error": {"type": exc.kind, "message": str(exc)}}, indent=2) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
