"""Command-line front end: ``chevparab <command> [flags]``.

Exit codes: 0 success or finitely presented, 1 verification failure or not
finitely presented, 2 unknown or refused, 64 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Sequence

from .chevmodel import structure_constants, structure_constants_csv
from .classify import example_1_2, pipeline
from .parab import ParabolicSpec, blocks_to_I, profile
from .presgen import (
    RefusalError,
    Truncation,
    present_borel_finite,
    present_kernel,
    present_parabolic_case1,
    present_parabolic_nvb,
    present_unipotent,
    rank_one_template,
)
from .ringspec import Arithmetic, RingSpec, load_ring, toral_constant, toral_pair
from .rootsys import Root, RootSystem, RootSystemType, build_root_system
from .verify import verify_filtration, verify_presentation, verify_retract

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        raise UsageError(f"{self.prog}: {message}")


def _emit(obj) -> None:
    if isinstance(obj, str):
        sys.stdout.write(obj if obj.endswith("\n") else obj + "\n")
    else:
        sys.stdout.write(json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2, sort_keys=True) + "\n")


def _root_system(args) -> RootSystem:
    try:
        return build_root_system(RootSystemType.parse(args.type, args.rank))
    except (ValueError, KeyError) as e:
        raise UsageError(f"bad root system type {args.type!r}: {e}") from None


def _parse_I(rs: RootSystem, text: str) -> frozenset[int]:
    text = text.strip().lower()
    if text in ("", "none", "borel", "empty"):
        return frozenset()
    if text in ("long", "short"):
        if rs.simply_laced:
            raise UsageError(f"{rs.type} is simply laced; 'long'/'short' does not pick a simple root")
        if rs.rank != 2:
            raise UsageError("'long'/'short' are only accepted for rank-two types; give indices")
        want = rs.is_long if text == "long" else rs.is_short
        return frozenset(i for i, s in enumerate(rs.simples) if want(s))
    try:
        idx = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"--I expects comma-separated indices, 'long' or 'short', got {text!r}") from None
    bad = [i for i in idx if not 1 <= i <= rs.rank]
    if bad:
        raise UsageError(f"simple root indices {bad} outside 1..{rs.rank}")
    return frozenset(i - 1 for i in idx)


def _spec(args, rs: RootSystem, required: bool = True) -> ParabolicSpec:
    if args.blocks is not None and args.I is not None:
        raise UsageError("give either --I or --blocks, not both")
    if args.blocks is not None:
        try:
            blocks = [int(b) for b in args.blocks.split(",")]
            return blocks_to_I(rs, blocks)
        except ValueError as e:
            raise UsageError(str(e)) from None
    if args.I is None:
        if required:
            raise UsageError("this command needs --I or --blocks")
        return ParabolicSpec(rs, frozenset())
    return ParabolicSpec(rs, _parse_I(rs, args.I))


def _ring(args) -> RingSpec:
    try:
        ring = load_ring(args.ring, q=args.q, char=args.char, S=args.S)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.S is not None and ring.arithmetic is not None and ring.arithmetic.S_size != args.S:
        ring = dataclasses.replace(ring, arithmetic=Arithmetic(ring.char, args.S))
    return ring


def _parse_root(rs: RootSystem, text: str) -> Root:
    try:
        return rs.root(text)
    except (ValueError, KeyError) as e:
        raise UsageError(f"{text!r} is not a root of {rs.type}: {e}") from None


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_roots(args) -> int:
    rs = _root_system(args)
    _emit(
        {
            "type": str(rs.type),
            "rank": rs.rank,
            "count": len(rs.roots),
            "roots": [r.name() for r in rs.roots],
            "positive": [r.name() for r in rs.positive],
            "simple": [r.name() for r in rs.simples],
            "highest_root": rs.highest_root.name(),
            "cartan": rs.cartan,
            "gram": rs.gram,
            "long": [r.name() for r in rs.positive if rs.is_long(r)] if not rs.simply_laced else [],
        }
    )
    return EXIT_OK


def cmd_structconsts(args) -> int:
    rs = _root_system(args)
    table = structure_constants(rs)
    keep = (lambda a, b: True) if args.all else (lambda a, b: a.is_positive and b.is_positive)
    if args.format == "csv":
        lines = structure_constants_csv(rs).splitlines()
        out = [lines[0]]
        for line in lines[1:]:
            a, b = line.split(",")[:2]
            if keep(Root.from_name(a, rs.rank), Root.from_name(b, rs.rank)):
                out.append(line)
        _emit("\n".join(out) + "\n")
        return EXIT_OK
    rows = []
    for a in rs.roots:
        for b in rs.roots:
            if keep(a, b):
                for t in table.get((a, b), []):
                    rows.append({"a": a.name(), "b": b.name(), "m": t.m, "n": t.n, "root": t.root.name(), "C": t.C})
    _emit({"type": str(rs.type), "constants": rows})
    return EXIT_OK


def cmd_parabolic_info(args) -> int:
    rs = _root_system(args)
    spec = _spec(args, rs, required=False)
    if args.n is not None and not spec.is_borel:
        raise UsageError("--n only applies to the Borel (empty I)")
    try:
        prof = profile(spec, args.n)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _emit(prof.to_json())
    return EXIT_OK


def cmd_toral(args) -> int:
    rs = _root_system(args)
    if args.a or args.b:
        if not (args.a and args.b):
            raise UsageError("give both --a and --b")
        a, b = _parse_root(rs, args.a), _parse_root(rs, args.b)
        if a == b or a == -b:
            raise UsageError("toral pairs need distinct, non-opposite roots")
        pairs = [toral_pair(rs, a, b)]
    else:
        pairs = [toral_pair(rs, a, b) for a in rs.simples for b in rs.simples if a != b]
    _emit({"type": str(rs.type), "toral_constant": toral_constant(rs), "pairs": [p.to_json() for p in pairs]})
    return EXIT_OK


BUILDERS = ("unipotent", "kernel", "borel", "case1", "nvb")


def _build(args, rs: RootSystem, ring: RingSpec):
    spec = _spec(args, rs, required=False)
    trunc = Truncation.parse(args.truncate) if args.truncate else Truncation()
    b = args.builder
    if b == "unipotent":
        return present_unipotent(spec, ring, trunc)
    if b == "kernel":
        return present_kernel(spec, ring, trunc)
    if b == "borel":
        tpl = None if ring.borel2_fp == "yes" or not args.template else rank_one_template(ring)
        return present_borel_finite(rs, ring, tpl)
    if b == "case1":
        return present_parabolic_case1(spec, ring)
    return present_parabolic_nvb(spec, ring)


def cmd_present(args) -> int:
    rs = _root_system(args)
    ring = _ring(args)
    p = _build(args, rs, ring)
    _emit(p.to_text() if args.format == "text" else json.loads(p.dumps()))
    return EXIT_OK


def cmd_verify(args) -> int:
    rs = _root_system(args)
    ring = _ring(args)
    out: dict = {"type": str(rs.type), "ring": ring.name, "seed": args.seed}
    ok = True
    if args.retract or args.filtration:
        spec = _spec(args, rs, required=False)
        if args.retract:
            rep = verify_retract(spec, ring, samples=args.samples, seed=args.seed, n=args.n)
            out["retract"] = rep.to_json()
            ok &= rep.ok
        if args.filtration:
            rep = verify_filtration(spec, ring)
            out["filtration"] = rep.to_json()
            ok &= rep.ok
    else:
        p = _build(args, rs, ring)
        rep = verify_presentation(p, args.model, sample=args.sample, seed=args.seed)
        out["presentation"] = rep.to_json()
        out["counts"] = p.counts()
        ok = rep.ok
    out["ok"] = ok
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    rs = _root_system(args)
    ring = _ring(args)
    spec = _spec(args, rs, required=False)
    st = pipeline(spec, ring, args.le_status)
    _emit({"type": str(rs.type), "I": sorted(i + 1 for i in spec.I), "ring": ring.name, **st.to_json()})
    return st.exit_code


def cmd_example(args) -> int:
    ring = _ring(args)
    p1, p2 = example_1_2(ring)
    _emit({"ring": ring.name, "P1": p1.to_json(), "P2": p2.to_json()})
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="chevparab", description="Root systems, Chevalley groups and parabolic presentations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, ring=False, spec=False):
        sp.add_argument("--type", required=True, help="root system type, e.g. A2, B3, G2")
        sp.add_argument("--rank", type=int, default=None, help="rank when --type is a bare letter")
        if spec:
            sp.add_argument("--I", default=None, help="simple root indices (1-based), or long/short")
            sp.add_argument("--blocks", default=None, help="type-A block sizes n1,n2,...")
        if ring:
            sp.add_argument("--ring", default="Z", help="preset name (Z, Z_laurent, F5_laurent, OS, ...) or JSON file")
            sp.add_argument("--q", type=int, default=5, help="field size for Fq presets")
            sp.add_argument("--char", type=int, default=None, help="characteristic for the OS preset")
            sp.add_argument("--S", type=int, default=None, help="|S| for S-arithmetic rings")

    s = sub.add_parser("roots", help="list the roots")
    common(s)
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("structconsts", help="commutator structure constants")
    common(s)
    s.add_argument("--all", action="store_true", help="all ordered root pairs, not only positive ones")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    s.set_defaults(func=cmd_structconsts)

    s = sub.add_parser("parabolic-info", help="root sets attached to a parabolic")
    common(s, spec=True)
    s.add_argument("--n", type=int, default=None, help="Borel only: simple root kept in the extended Levi part")
    s.set_defaults(func=cmd_parabolic_info)

    s = sub.add_parser("toral", help="toral pairs and the toral constant")
    common(s)
    s.add_argument("--a", default=None)
    s.add_argument("--b", default=None)
    s.set_defaults(func=cmd_toral)

    for name, func in (("present", cmd_present), ("verify", cmd_verify)):
        s = sub.add_parser(name, help="emit a presentation" if name == "present" else "check relators or structure")
        common(s, ring=True, spec=True)
        s.add_argument("--builder", choices=BUILDERS, default="unipotent")
        s.add_argument("--truncate", default=None, help="bounds such as T=8,exp=3")
        s.add_argument("--template", action="store_true", help="borel: use the rank-one template blocks")
        s.add_argument("--format", choices=("json", "text"), default="json")
        s.set_defaults(func=func)
        if name == "verify":
            s.add_argument("--model", choices=("adjoint", "sln"), default="adjoint")
            s.add_argument("--sample", type=int, default=None, help="check a random subset of this size")
            s.add_argument("--seed", type=int, default=0)
            s.add_argument("--retract", action="store_true")
            s.add_argument("--filtration", action="store_true")
            s.add_argument("--samples", type=int, default=20, help="sampled words for the retract check")
            s.add_argument("--n", type=int, default=None, help="Borel retract: kept simple root")

    s = sub.add_parser("classify", help="finite presentability verdict")
    common(s, ring=True, spec=True)
    s.add_argument("--le-status", choices=("yes", "no", "unknown"), default=None)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("example-1-2", help="the two SL12 block parabolics")
    s.add_argument("--ring", default="Z_laurent")
    s.add_argument("--q", type=int, default=5)
    s.add_argument("--char", type=int, default=None)
    s.add_argument("--S", type=int, default=None)
    s.set_defaults(func=cmd_example)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("choose a command: " + ", ".join(
                ["roots", "structconsts", "parabolic-info", "toral", "present", "verify", "classify", "example-1-2"]))
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE
    except RefusalError as e:
        sys.stderr.write(f"refused: {e}\n")
        _emit({"refused": True, "reason": str(e)})
        return EXIT_UNKNOWN
    except ValueError as e:
        sys.stderr.write(f"usage error: {e}\n")
        return EXIT_USAGE


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
