"""Command-line front end: ``arfcurves <family> <command> [options]``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error
or malformed input.  ``--json`` prints ``{command, config, result}`` (plus
``error`` on failure) with every number exact.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import arfring, kernels, oracles
from .branch import (
    DEFAULT_MAX_STEPS,
    Branch,
    branch_characters,
    branch_multiplicity_sequence,
    branch_normalize,
)
from .errors import ArfError, InputError, PrecisionError
from .semigroup import (
    NumericalSemigroup,
    arf_characters,
    arf_closure,
    character_stability,
    chars_to_multseq,
    check_characters,
    msq_to_semigroup,
    parse_int_list,
    sg_arf_closure,
    sg_from_generators,
    sg_is_arf,
)
from .series import DEFAULT_PRECISION, FieldSpec, parse_series

MIN_PRECISION = 8


@dataclass(frozen=True)
class CliConfig:
    field: FieldSpec
    precision: int = DEFAULT_PRECISION
    output: str = "text"
    max_steps: int = DEFAULT_MAX_STEPS

    def to_json(self) -> dict:
        return {
            "field": self.field.selector,
            "precision": self.precision,
            "output": self.output,
            "max_steps": self.max_steps,
        }


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _show(s: NumericalSemigroup) -> str:
    if s.is_full():
        return "N"
    top = s.conductor + 2
    return "{" + ",".join(map(str, s.members_up_to(top))) + ",...}"


def _sg_json(s: NumericalSemigroup) -> dict:
    out = s.to_json()
    out["text"] = _show(s)
    return out


def _semigroup_arg(args) -> NumericalSemigroup:
    return sg_from_generators(parse_int_list(args.gens))


def _branch_arg(text: str, cfg: CliConfig) -> Branch:
    return Branch.parse(text, cfg.field, cfg.precision)


def _gens_arg(text: str, cfg: CliConfig):
    return list(_branch_arg(text, cfg).coords)


# -- handlers: each returns (json result, text lines) --------------------------

def _semigroup_closure(args, cfg):
    s = _semigroup_arg(args)
    seq = sg_arf_closure(s)
    closure = msq_to_semigroup(seq)
    res = {"input": _sg_json(s), "multiplicities": seq.to_json(), "closure": _sg_json(closure)}
    lines = [f"multiplicity sequence: {seq}", f"closure: {_show(closure)}"]
    if s.nu != 1:
        lines.append(f"note: generators were divided by their gcd {s.nu}")
    return res, lines


def _semigroup_is_arf(args, cfg):
    s = _semigroup_arg(args)
    ok = sg_is_arf(s)
    return {"semigroup": _sg_json(s), "is_arf": ok}, [f"{_show(s)} is Arf: {'yes' if ok else 'no'}"]


def _semigroup_characters(args, cfg):
    s = _semigroup_arg(args)
    target = arf_closure(s) if args.closure else s
    chi = arf_characters(target)
    return ({"semigroup": _sg_json(target), "characters": list(chi)},
            [f"characters: {{{','.join(map(str, chi))}}}"])


def _prepared_branch(args, cfg):
    b = _branch_arg(args.branch, cfg)
    nu = 1
    if args.normalize:
        b, nu = branch_normalize(b)
    return b, nu


def _branch_multseq(args, cfg):
    b, nu = _prepared_branch(args, cfg)
    seq, trace = branch_multiplicity_sequence(b, cfg.max_steps)
    res = {"branch": b.to_json(), "nu": nu, "multiplicities": seq.to_json(),
           "trace": trace.to_json()}
    lines = [f"multiplicity sequence: {seq}"]
    lines += _trace_lines(b, trace)
    return res, lines


def _trace_lines(b, trace):
    f = b.field
    lines = []
    for i, step in enumerate(trace.steps, 1):
        shifts = ",".join(f.render(c) for c in step.recenter)
        lines.append(f"  blow-up {i}: multiplicity {step.multiplicity}, "
                     f"pivot x{step.pivot + 1}, recenter ({shifts})")
    lines.append(f"  final: {trace.final}")
    return lines


def _branch_blowup_trace(args, cfg):
    b, nu = _prepared_branch(args, cfg)
    _, trace = branch_multiplicity_sequence(b, cfg.max_steps)
    return {"branch": b.to_json(), "nu": nu, "trace": trace.to_json()}, _trace_lines(b, trace)


def _branch_characters(args, cfg):
    b, nu = _prepared_branch(args, cfg)
    chi = branch_characters(b, cfg.max_steps)
    return ({"branch": b.to_json(), "nu": nu, "characters": list(chi)},
            [f"characters: {{{','.join(map(str, chi))}}}"])


def _branch_embed_dim(args, cfg):
    b, nu = _prepared_branch(args, cfg)
    base = arfring.ring_base(arfring.ring_arf_closure(list(b.coords), cfg.precision))
    return ({"branch": b.to_json(), "nu": nu, "embedding_dimension": base.dimension,
             "base": base.to_json()},
            [f"embedding dimension: {base.dimension}",
             f"base characters: {{{','.join(map(str, base.characters))}}}"])


def _ring_orders(args, cfg):
    basis = arfring.ring_order_basis(_gens_arg(args.gens, cfg), cfg.precision)
    sg = basis.semigroup()
    res = basis.to_json()
    res["semigroup"] = _sg_json(sg)
    return res, [f"W(H): {_show(sg)}", f"generators: {list(sg.generators)}",
                 f"conductor: {basis.conductor}"]


def _ring_closure(args, cfg):
    chain = arfring.ring_arf_closure(_gens_arg(args.gens, cfg), cfg.precision)
    res = chain.to_json()
    res["closure_orders"] = _sg_json(chain.closure_semigroup())
    res["characters"] = list(arfring.ring_characters(chain))
    lines = [f"level multiplicities: {chain.multiplicity_sequence}",
             f"W(*H): {_show(chain.closure_semigroup())}",
             f"characters: {{{','.join(map(str, res['characters']))}}}"]
    if args.member is not None:
        x = parse_series(args.member, cfg.field, cfg.precision)
        inside = arfring.closure_membership(x, chain)
        res["member"] = {"element": x.to_text(), "in_closure": inside}
        lines.append(f"{x.to_text()} in *H: {'yes' if inside else 'no'}")
    return res, lines


def _ring_base(args, cfg):
    chain = arfring.ring_arf_closure(_gens_arg(args.gens, cfg), cfg.precision)
    base = arfring.ring_base(chain, args.level)
    res = base.to_json()
    res["level"] = args.level
    lines = [f"base characters: {{{','.join(map(str, base.characters))}}}",
             f"dimension: {base.dimension}"]
    lines += [f"  X{i}: {x.to_text()}" for i, x in enumerate(base.elements, 1)]
    return res, lines


def _chars_to_multseq(args, cfg):
    chi = check_characters(parse_int_list(args.chars))
    seq = chars_to_multseq(chi)
    return ({"characters": list(chi), "multiplicities": seq.to_json(),
             "closure": _sg_json(msq_to_semigroup(seq))},
            [f"multiplicity sequence: {seq}"])


def _chars_realize(args, cfg):
    rep = arfring.realize_characters(parse_int_list(args.chars), cfg.precision, cfg.field)
    yes = "yes" if rep.reproduces else "no"
    return rep.to_json(), [
        f"branch: {rep.branch}",
        f"recomputed characters: {{{','.join(map(str, rep.recomputed))}}}",
        f"subset of requested: {'yes' if rep.subset else 'no'}",
        f"characters reproduce: {yes}",
    ]


def _chars_stability(args, cfg):
    chi = check_characters(parse_int_list(args.chars))
    ok = character_stability(chi, args.extra)
    return ({"characters": list(chi), "extra": args.extra, "stable": ok},
            [f"adding {args.extra} keeps the multiplicity sequence: {'yes' if ok else 'no'}"])


def _verify_closure(args, cfg):
    import itertools

    checked, mismatches = 0, []
    start = time.perf_counter()
    pool = range(2, args.max_gen + 1)
    for k in range(1, args.max_size + 1):
        for gens in itertools.combinations(pool, k):
            s = sg_from_generators(gens)
            if s.nu != 1:
                continue
            checked += 1
            if arf_closure(s) != oracles.oracle_arf_closure_fixedpoint(s):
                mismatches.append(list(gens))
    return _verify_result(checked, mismatches, start, kernels.BACKEND)


def _verify_characters(args, cfg):
    checked, mismatches = 0, []
    start = time.perf_counter()
    for s in oracles.oracle_enumerate_arf_semigroups(args.bound):
        checked += 1
        if arf_characters(s) != oracles.oracle_minimal_character_search(s):
            mismatches.append(list(s.elements))
    return _verify_result(checked, mismatches, start, kernels.BACKEND)


def _verify_ring(args, cfg):
    gens = _gens_arg(args.gens, cfg)
    basis = arfring.ring_order_basis(gens, cfg.precision)
    linear = oracles.oracle_ring_orders_linear(gens, args.degree, cfg.precision)
    extra = sorted(e for e in linear if e not in basis)
    res = {"oracle_orders": sorted(linear), "fast_orders": list(basis.achieved),
           "oracle_not_in_fast": extra, "agree": not extra}
    return res, [f"oracle orders: {sorted(linear)}",
                 f"oracle orders inside W(H): {'yes' if not extra else 'no ' + str(extra)}"]


def _verify_enumerate(args, cfg):
    sgs = oracles.oracle_enumerate_arf_semigroups(args.bound)
    return ({"bound": args.bound, "count": len(sgs), "semigroups": [_sg_json(s) for s in sgs]},
            [f"{len(sgs)} Arf semigroups with conductor <= {args.bound}"]
            + [f"  {_show(s)}" for s in sgs])


def _verify_result(checked, mismatches, start, backend):
    ok = not mismatches
    res = {"checked": checked, "mismatches": mismatches, "agree": ok, "backend": backend,
           "seconds": round(time.perf_counter() - start, 3)}
    return res, [f"checked {checked} cases: {'all agree' if ok else f'{len(mismatches)} mismatches'}"]


# -- argument parsing ----------------------------------------------------------

def _prec(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < MIN_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must be >= {MIN_PRECISION}")
    return n


def _positive(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return n


def _field(value: str) -> FieldSpec:
    try:
        return FieldSpec.parse(value)
    except ArfError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--field", type=_field, default=argparse.SUPPRESS,
                        help="coefficient field: q (rationals) or f<p> (default q)")
    common.add_argument("--prec", type=_prec, default=argparse.SUPPRESS,
                        help=f"series precision (default {DEFAULT_PRECISION})")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print JSON instead of text")
    common.add_argument("--max-steps", type=_positive, default=argparse.SUPPRESS,
                        help=f"blow-up limit (default {DEFAULT_MAX_STEPS})")

    p = _Parser(prog="arfcurves", parents=[common],
                description="Arf closures, characters and multiplicity sequences of curve branches.")
    fam = p.add_subparsers(dest="family", metavar="family", required=True, parser_class=_Parser)

    def cmd(sub, name, fn, help_):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.set_defaults(handler=fn)
        return c

    sg = fam.add_parser("semigroup", help="numerical semigroups")
    sgs = sg.add_subparsers(dest="command", metavar="command", required=True, parser_class=_Parser)
    for name, fn, help_ in [("closure", _semigroup_closure, "Arf closure and multiplicity sequence"),
                            ("is-arf", _semigroup_is_arf, "test the Arf property"),
                            ("characters", _semigroup_characters, "characters of an Arf semigroup")]:
        c = cmd(sgs, name, fn, help_)
        c.add_argument("--gens", required=True, help="comma-separated generators, e.g. 3,7")
        if name == "characters":
            c.add_argument("--closure", action="store_true",
                           help="take the Arf closure first instead of requiring an Arf semigroup")

    br = fam.add_parser("branch", help="parameterized branches")
    brs = br.add_subparsers(dest="command", metavar="command", required=True, parser_class=_Parser)
    for name, fn, help_ in [("multseq", _branch_multseq, "multiplicity sequence with blow-up trace"),
                            ("characters", _branch_characters, "characters of the branch"),
                            ("embed-dim", _branch_embed_dim, "smallest embedding dimension"),
                            ("blowup-trace", _branch_blowup_trace, "the blow-up steps only")]:
        c = cmd(brs, name, fn, help_)
        c.add_argument("branch", help='coordinates, e.g. "t^2, t^5"')
        c.add_argument("--normalize", action="store_true",
                       help="divide exponents by their gcd before blowing up")

    rg = fam.add_parser("ring", help="subrings k[[phi_1..phi_n]] of k[[t]]")
    rgs = rg.add_subparsers(dest="command", metavar="command", required=True, parser_class=_Parser)
    c = cmd(rgs, "orders", _ring_orders, "order semigroup W(H)")
    c.add_argument("gens", help='generators, e.g. "t^4, t^6+t^7"')
    c = cmd(rgs, "closure", _ring_closure, "Arf closure chain and W(*H)")
    c.add_argument("gens")
    c.add_argument("--member", help="also decide membership of this series in *H")
    c = cmd(rgs, "base", _ring_base, "base, base characters and dimension")
    c.add_argument("gens")
    c.add_argument("--level", type=int, default=0, help="use the level ring *H_h")

    ch = fam.add_parser("chars", help="character sets")
    chs = ch.add_subparsers(dest="command", metavar="command", required=True, parser_class=_Parser)
    c = cmd(chs, "to-multseq", _chars_to_multseq, "multiplicity sequence of *<chi>")
    c.add_argument("chars")
    c = cmd(chs, "realize", _chars_realize, "monomial branch on chi and a round-trip check")
    c.add_argument("chars")
    c = cmd(chs, "stability", _chars_stability, "does adding a closure member change anything?")
    c.add_argument("chars")
    c.add_argument("--extra", type=int, required=True)

    vf = fam.add_parser("verify", help="cross-check fast paths against brute-force oracles")
    vfs = vf.add_subparsers(dest="command", metavar="command", required=True, parser_class=_Parser)
    c = cmd(vfs, "closure-oracle", _verify_closure, "semigroup closure vs fixed-point saturation")
    c.add_argument("--max-gen", type=_positive, default=15)
    c.add_argument("--max-size", type=_positive, default=3)
    c = cmd(vfs, "characters-oracle", _verify_characters, "characters vs exhaustive search")
    c.add_argument("--bound", type=_positive, default=16)
    c = cmd(vfs, "ring-oracle", _verify_ring, "W(H) vs monomial span")
    c.add_argument("gens")
    c.add_argument("--degree", type=_positive, default=4)
    c = cmd(vfs, "enumerate", _verify_enumerate, "list Arf semigroups")
    c.add_argument("--bound", type=_positive, default=8)
    return p


def _config(args) -> CliConfig:
    return CliConfig(
        field=getattr(args, "field", FieldSpec.rationals()),
        precision=getattr(args, "prec", DEFAULT_PRECISION),
        output="json" if getattr(args, "json", False) else "text",
        max_steps=getattr(args, "max_steps", DEFAULT_MAX_STEPS),
    )


def _emit(payload, lines, as_json: bool, out):
    if as_json:
        out.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def cli_run(argv, out=None, err=None) -> int:
    """Run one invocation; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        if as_json:
            _emit({"command": None, "config": None, "result": None,
                   "error": {"category": "usage", "message": str(exc)}}, [], True, out)
        else:
            err.write(f"{exc}\n")
        return 2
    cfg = _config(args)
    command = f"{args.family} {args.command}"
    payload = {"command": command, "config": cfg.to_json()}
    try:
        result, lines = args.handler(args, cfg)
    except ArfError as exc:
        error = {"category": exc.category, "message": str(exc)}
        if isinstance(exc, PrecisionError):
            error["suggestion"] = f"--prec {2 * cfg.precision}"
        payload.update(result=None, error=error)
        if as_json:
            _emit(payload, [], True, out)
        else:
            hint = f" (try {error['suggestion']})" if "suggestion" in error else ""
            err.write(f"error [{exc.category}]: {exc}{hint}\n")
        return 2 if isinstance(exc, InputError) else 1
    payload["result"] = result
    _emit(payload, lines, as_json, out)
    return 0


def main(argv=None) -> int:
    return cli_run(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
