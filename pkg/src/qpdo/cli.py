"""Command-line front end: ``qpdo <command> [options]``.

Exit status: 0 success, 2 malformed arguments, 3 unknown command,
4 invalid involution parameters, 5 expression or scalar parse error,
6 a requested check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .algebra import Element, bracket, graded_decompose, homogeneous_weight
from .bilinear import (
    FormSpec,
    adjoint_window_check,
    basis_vector,
    block_symmetry_signs,
    gram_matrix,
    nondegeneracy_partners,
)
from .involutions import InvalidParamsError, InvolutionParams, sigma_apply, sigma_apply_oracle, validate_params
from .parser import ParseError, parse_element, parse_scalar
from .scalar import FieldElement
from .subalgebras import FixedSubalgebraSpec, graded_basis, weight_range
from .verify import check_involution, monomial_window

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN, EXIT_PARAMS, EXIT_PARSE, EXIT_CHECK = 0, 2, 3, 4, 5, 6

COMMANDS = (
    "eval",
    "bracket",
    "weight",
    "sigma",
    "check-involution",
    "validate-params",
    "fixed-basis",
    "dim-table",
    "gram",
    "adjoint-check",
)

PARAM_KEYS = ("N", "n", "epsilon", "A", "B", "r", "c")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass
class SessionConfig:
    N: int
    params: Optional[InvolutionParams]
    output: str = "text"


def read_config(path: str) -> Dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliError(EXIT_USAGE, f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            if key not in PARAM_KEYS:
                raise CliError(EXIT_USAGE, f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


def _scalar(text: str, what: str) -> FieldElement:
    try:
        return parse_scalar(text)
    except (ParseError, ArithmeticError) as exc:
        raise CliError(EXIT_PARSE, f"cannot parse {what} {text!r}: {exc}") from exc


def _int(text, what: str) -> int:
    try:
        return int(str(text).lstrip("+"))
    except ValueError:
        raise CliError(EXIT_USAGE, f"{what} must be an integer, got {text!r}") from None


def build_params(values: Dict[str, str]) -> InvolutionParams:
    if "N" not in values:
        raise CliError(EXIT_USAGE, "N is required")
    N = _int(values["N"], "N")
    n = _int(values.get("n", N), "n")
    eps = _scalar(values.get("epsilon", "1"), "epsilon")
    if values.get("A") is not None:
        eps = _scalar(values["A"], "A")
    B = _scalar(values.get("B", "q"), "B")
    r = _int(values.get("r", 0), "r")
    if values.get("c") is not None:
        raw = [s for s in str(values["c"]).split(",") if s.strip()]
        c = [_scalar(s.strip(), "c entry") for s in raw]
    else:
        c = [FieldElement.coerce(1)] * (N - 1)
    if N < 1:
        raise CliError(EXIT_USAGE, "N must be positive")
    return InvolutionParams(N, n, eps, B, r, tuple(c))


def _session(args) -> SessionConfig:
    values: Dict[str, str] = {}
    if args.config:
        try:
            values.update(read_config(args.config))
        except OSError as exc:
            raise CliError(EXIT_USAGE, f"cannot read config: {exc}") from exc
    for key in PARAM_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    p = build_params(values) if "N" in values else None
    if p is None:
        raise CliError(EXIT_USAGE, "N is required (flag --N or config key N)")
    return SessionConfig(p.N, p, args.output)


def _require_valid(p: InvolutionParams) -> None:
    rep = validate_params(p)
    if not rep.ok:
        raise CliError(EXIT_PARAMS, "invalid parameters: " + "; ".join(f"{e.constraint}: {e.detail}" for e in rep.failures()))


def _parse(text: str, N: int) -> Element:
    try:
        return parse_element(text, N)
    except ParseError as exc:
        raise CliError(EXIT_PARSE, f"parse error: {exc}") from exc
    except ArithmeticError as exc:
        raise CliError(EXIT_PARSE, f"cannot evaluate {text!r}: {exc}") from exc


def _exprs(args, count: int) -> List[str]:
    ex = args.expr or []
    if len(ex) != count:
        raise CliError(EXIT_USAGE, f"{args.command} needs exactly {count} --expr argument(s), got {len(ex)}")
    return ex


def element_json(a: Element) -> List[list]:
    return [[k, m, i, j, str(c)] for (k, m, i, j), c in a.items()]


# --- commands -----------------------------------------------------------------
# each returns (text lines, json result, exit code)


def cmd_eval(args, s: SessionConfig):
    (src,) = _exprs(args, 1)
    a = _parse(src, s.N)
    return [str(a)], {"terms": element_json(a)}, EXIT_OK


def cmd_bracket(args, s):
    x, y = (_parse(t, s.N) for t in _exprs(args, 2))
    b = bracket(x, y)
    return [str(b)], {"terms": element_json(b)}, EXIT_OK


def cmd_weight(args, s):
    (src,) = _exprs(args, 1)
    a = _parse(src, s.N)
    w = homogeneous_weight(a)
    if w is not None:
        return [str(w)], {"weight": w}, EXIT_OK
    bands = graded_decompose(a)
    return ([f"{w}: {x}" for w, x in bands.items()],
            {"weight": None, "bands": {str(w): element_json(x) for w, x in bands.items()}}, EXIT_OK)


def cmd_sigma(args, s):
    _require_valid(s.params)
    (src,) = _exprs(args, 1)
    a = _parse(src, s.N)
    img = (sigma_apply_oracle if args.oracle else sigma_apply)(s.params, a)
    return [str(img)], {"terms": element_json(img)}, EXIT_OK


def cmd_check_involution(args, s):
    _require_valid(s.params)
    rep = check_involution(s.params, args.kmax, args.mmax)
    res = {
        "ok": rep.ok,
        "monomials": rep.checked_monomials,
        "pairs": rep.checked_pairs,
        "involutive_failures": [list(k) for k in rep.involutive],
        "anti_multiplicative_failures": [[list(a), list(b)] for a, b in rep.anti_multiplicative],
        "graded_failures": [list(k) for k in rep.graded],
    }
    lines = [("PASS: " if rep.ok else "FAIL: ") + rep.summary()]
    return lines, res, EXIT_OK if rep.ok else EXIT_CHECK


def cmd_validate(args, s):
    rep = validate_params(s.params)
    lines = [f"{e.status:4}  {e.constraint}" + (f"  ({e.detail})" if e.detail else "") for e in rep.entries]
    lines.append("valid" if rep.ok else "invalid")
    return lines, {"valid": rep.ok, "constraints": rep.to_list()}, EXIT_OK if rep.ok else EXIT_PARAMS


def _fspec(args, s) -> FixedSubalgebraSpec:
    _require_valid(s.params)
    try:
        return FixedSubalgebraSpec(s.params, args.zmin, args.zmax, args.tmin, args.tmax)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc


def cmd_fixed_basis(args, s):
    spec = _fspec(args, s)
    weights = [args.weight] if args.weight is not None else list(weight_range(spec))
    lines, res = [], {}
    for w in weights:
        basis = graded_basis(spec, w)
        if not basis and args.weight is None:
            continue
        lines.append(f"weight {w}: dim {len(basis)}")
        lines += [f"  {x}" for x in basis]
        res[str(w)] = [element_json(x) for x in basis]
    return lines, {"bases": res}, EXIT_OK


def cmd_dim_table(args, s):
    spec = _fspec(args, s)
    table = {w: len(graded_basis(spec, w)) for w in weight_range(spec)}
    return [f"{w}\t{d}" for w, d in table.items()], {"dims": {str(w): d for w, d in table.items()}}, EXIT_OK


def _form(args, s) -> FormSpec:
    p = s.params
    sign = args.sign if args.sign is not None else (1 if p.epsilon == FieldElement.coerce(1) else -1)
    variant = args.variant or ("nN" if p.full else "n<N")
    if args.transpose and not variant.startswith("T-"):
        variant = "T-" + variant
    try:
        return FormSpec(sign, variant, p.N, p.n, p.cvec)
    except ValueError as exc:
        raise CliError(EXIT_USAGE, str(exc)) from exc


def cmd_gram(args, s):
    spec = _form(args, s)
    U = args.U
    basis = [(u, c) for c in range(1, spec.N + 1) for u in range(-U, U + 1)]
    G = gram_matrix(spec, [basis_vector(spec.N, *b) for b in basis])
    entries = [
        (basis[a], basis[b], G[a][b]) for a in range(len(basis)) for b in range(len(basis)) if G[a][b]
    ]
    signs = block_symmetry_signs(spec, U)
    partners = nondegeneracy_partners(spec, U)
    missing = [k for k, v in partners.items() if v is None]
    name = {1: "symmetric", -1: "antisymmetric", None: "neither"}
    lines = [f"form sign {spec.sign:+d}, variant {spec.variant}, window |u| <= {U}, basis size {len(basis)}"]
    lines += [f"  block {blk}: {name[v]}" for blk, v in signs.items()]
    lines.append(f"  nondegenerate on window: {'yes' if not missing else 'no, missing ' + str(missing)}")
    lines += [f"  B(z^{u} e{p}, z^{v} e{q}) = {x}" for (u, p), (v, q), x in entries]
    res = {
        "form": {"sign": spec.sign, "variant": spec.variant, "N": spec.N, "n": spec.n},
        "basis": [list(b) for b in basis],
        "entries": [[list(a), list(b), str(x)] for a, b, x in entries],
        "block_signs": signs,
        "nondegenerate": not missing,
    }
    return lines, res, EXIT_OK


def cmd_adjoint(args, s):
    _require_valid(s.params)
    p = s.params
    if p.epsilon not in (FieldElement.coerce(1), FieldElement.coerce(-1)):
        raise CliError(EXIT_PARAMS, "adjoint-check needs a sign +-1 (normalized parameters)")
    spec = _form(args, s)
    if args.expr:
        ops = [_parse(t, p.N) for t in args.expr]
    else:
        ops = [Element(p.N, {k: 1}) for k in monomial_window(p.N, args.kmax, args.mmax)]
    failures = []
    for L in ops:
        for h, g in adjoint_window_check(p, spec, L, args.U):
            failures.append((L, h, g))
    ok = not failures
    lines = [f"{'PASS' if ok else 'FAIL'}: {len(ops)} operator(s), vectors |u| <= {args.U}, form {spec.variant} sign {spec.sign:+d}"]
    lines += [f"  L = {L}, h = z^{h[0]} e{h[1]}, g = z^{g[0]} e{g[1]}" for L, h, g in failures[:20]]
    res = {"ok": ok, "operators": len(ops), "failures": [[str(L), list(h), list(g)] for L, h, g in failures]}
    return lines, res, EXIT_OK if ok else EXIT_CHECK


HANDLERS = {
    "eval": cmd_eval,
    "bracket": cmd_bracket,
    "weight": cmd_weight,
    "sigma": cmd_sigma,
    "check-involution": cmd_check_involution,
    "validate-params": cmd_validate,
    "fixed-basis": cmd_fixed_basis,
    "dim-table": cmd_dim_table,
    "gram": cmd_gram,
    "adjoint-check": cmd_adjoint,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value parameter file")
    common.add_argument("--output", choices=("text", "json"), default="text")
    for key in PARAM_KEYS:
        common.add_argument(f"--{key}", dest=key, default=None)
    common.add_argument("--expr", action="append", help="expression (repeat for bracket)")

    parser = argparse.ArgumentParser(prog="qpdo", description="Matrix quantum pseudodifferential operators.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "sigma":
            sp.add_argument("--oracle", action="store_true", help="use the generator extension")
        if name in ("check-involution", "adjoint-check"):
            sp.add_argument("--kmax", type=int, default=2)
            sp.add_argument("--mmax", type=int, default=2)
        if name in ("fixed-basis", "dim-table"):
            sp.add_argument("--zmin", type=int, default=-2)
            sp.add_argument("--zmax", type=int, default=2)
            sp.add_argument("--tmin", type=int, default=-3)
            sp.add_argument("--tmax", type=int, default=3)
        if name == "fixed-basis":
            sp.add_argument("--weight", type=int, default=None)
        if name in ("gram", "adjoint-check"):
            sp.add_argument("--U", type=int, default=4 if name == "gram" else 3)
            sp.add_argument("--sign", type=int, choices=(1, -1), default=None)
            sp.add_argument("--variant", choices=("nN", "n<N", "T-nN", "T-n<N"), default=None)
            sp.add_argument("--transpose", action="store_true")
    return parser


def _emit(command: str, s: Optional[SessionConfig], lines, result, output: str, out) -> None:
    if output == "json":
        doc = {"command": command, "params": s.params.to_dict() if s and s.params else None, "result": result}
        out.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        for line in lines:
            out.write(line + "\n")


def _glue_negative_values(argv: List[str]) -> List[str]:
    """Turn ``--c -1,1`` into ``--c=-1,1`` so argparse does not read the value as a flag."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and argv[i + 1].startswith("-") and not argv[i + 1].startswith("--")):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    out = out or sys.stdout
    err = err or sys.stderr
    if argv and not argv[0].startswith("-") and argv[0] not in COMMANDS:
        err.write(f"qpdo: unknown command {argv[0]!r}; choose from {', '.join(COMMANDS)}\n")
        return EXIT_UNKNOWN
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    s = None
    try:
        s = _session(args)
        lines, result, code = HANDLERS[args.command](args, s)
    except CliError as exc:
        if args.output == "json":
            _emit(args.command, s, [], {"error": str(exc), "exit": exc.code}, "json", out)
        err.write(f"qpdo {args.command}: {exc}\n")
        return exc.code
    except InvalidParamsError as exc:
        err.write(f"qpdo {args.command}: invalid parameters: {exc}\n")
        return EXIT_PARAMS
    _emit(args.command, s, lines, result, args.output, out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
