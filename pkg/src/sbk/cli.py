"""Command-line front end: ``sbk <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad word, parameters in
an open range, failed certificate) and 2 on a usage error.  ``--json``
switches every subcommand to a single JSON document on stdout.  The
environment variable ``SBK_SEED`` seeds random sampling.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import actions, exactalg, homs, nilquot, presentations, reps
from .errors import ContextError, SbkError
from .words import GroupContext

SCHEMA_PREFIX = "sbk"


def _emit(args, payload: dict, text: str, schema: str) -> None:
    if args.json:
        payload = {"schema": f"{SCHEMA_PREFIX}/{schema}/v1", **payload}
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _seed() -> int:
    raw = os.environ.get("SBK_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise ContextError(f"SBK_SEED must be an integer, got {raw!r}") from None


def _context(args) -> GroupContext:
    group = args.group
    if group is None:
        raise ContextError("--group is required")
    if "(" in group:
        return GroupContext.parse(group)
    g, k, n = args.g, args.k, args.n

    def need(**vals):
        missing = [key for key, v in vals.items() if v is None]
        if missing:
            raise ContextError(f"group {group} needs --{' --'.join(missing)}")

    if group in ("Gg", "Hg", "Kg"):
        need(g=g)
        return GroupContext.gamma3(group, g)
    if group == "ArtinB":
        need(n=n)
        return GroupContext.artin(n)
    if group == "SurfaceB":
        need(g=g, n=n)
        return GroupContext.surface(g, n)
    if group == "FiberB":
        need(k=k, g=g, n=n)
        return GroupContext.fiber(k, g, n)
    if group == "MixedB":
        need(k=k, n=n, g=g)
        return GroupContext.mixed(k, n, g)
    if group == "FreeF":
        need(n=n)
        return GroupContext.free(n)
    raise ContextError(f"unknown group {group!r}")


def _presentation(ctx: GroupContext) -> presentations.Presentation:
    f, p = ctx.family, ctx.params
    if f == "ArtinB":
        return presentations.artin_presentation(*p)
    if f == "SurfaceB":
        return presentations.surface_presentation(*p)
    if f == "FiberB":
        return presentations.sbgs_presentation(*p)
    if f == "MixedB":
        return presentations.mixed_presentation(*p)
    if f == "Gamma3":
        return presentations.gamma3_presentation(*p)
    raise ContextError(f"no presentation for {ctx}")


def _assignment(items: list[str] | None) -> dict[str, Fraction]:
    out = {}
    for item in items or []:
        for part in item.split(","):
            name, sep, value = part.partition("=")
            if not sep:
                raise ContextError(f"--eval expects name=value, got {part!r}")
            try:
                out[name.strip()] = Fraction(value.strip())
            except ValueError:
                raise ContextError(f"bad value in {part!r}") from None
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_parse(args) -> int:
    ctx = _context(args)
    w = ctx.word(args.word)
    _emit(args, {"context": str(ctx), "word": str(w), "length": len(w)}, str(w), "word")
    return 0


def cmd_nf(args) -> int:
    ctx = _context(args)
    if ctx.family != "Gamma3":
        raise ContextError("nf works in Gg, Hg or Kg")
    G = nilquot.make_group(*ctx.params)
    x = nilquot.c2_project(ctx.word(args.word), G)
    _emit(args, x.to_json(), str(x), "element")
    return 0


def cmd_project(args) -> int:
    h = homs.named_hom(args.map, args.g, args.k, args.n)
    src = h.source
    w = src.word(args.word)
    image = h(w)
    if isinstance(h, presentations.WordMap):
        payload = {"map": args.map, "source": str(src), "target": str(h.target), "image": str(image)}
        _emit(args, payload, str(image), "projection")
        return 0
    text = h.target.format(image)
    payload = {"map": args.map, "source": str(src), "target": str(h.target), "image": text}
    if isinstance(image, nilquot.Class2Element):
        payload["element"] = image.to_json()
    elif isinstance(image, tuple):
        payload["vector"] = dict(zip(h.target.names, image))
    _emit(args, payload, text, "projection")
    return 0


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ContextError(f"--{' --'.join(missing)} required")


def cmd_act(args) -> int:
    _need(args, "k", "n", "g")
    mixed = GroupContext.mixed(args.k, args.n, args.g)
    fiber = GroupContext.fiber(args.k, args.g, args.n)
    beta = mixed.word(args.beta)
    image = actions.act_word(beta, fiber.word(args.word))
    payload = {"beta": str(beta), "word": args.word, "image": str(image)}
    if args.k >= 3 and args.n >= 3:
        payload["image_normal_form"] = str(homs.make_anko_projection(args.g, args.k, args.n)(image))
    _emit(args, payload, str(image), "action")
    return 0


def cmd_induced(args) -> int:
    _need(args, "k", "n", "g")
    m = actions.induced_on_K(args.beta, args.k, args.n, args.g)
    text = "\n".join(f"{y} -> {v}" for y, v in m.images.items())
    payload = m.to_json()
    payload["is_identity"] = m.is_identity()
    _emit(args, payload, text, "induced")
    return 0


def cmd_obstruction(args) -> int:
    _need(args, "k", "n", "g")
    rep = actions.linear_extension_obstruction(args.g, args.k, args.n)
    text = (
        f"induced(B1)(a1) = {rep.image_normal_form}; zeta exponent {rep.zeta_exponent}; "
        f"zeta of infinite order: {rep.zeta_infinite_order}; obstruction: {'yes' if rep.obstructed else 'no'}"
    )
    _emit(args, rep.to_json(), text, "obstruction")
    return 0 if rep.obstructed else 1


def _matrix_output(args, M: reps.RepMatrix, label: str) -> int:
    if args.eval:
        vals = reps.specialize(M, _assignment(args.eval))
        rows = [[reps.fraction_text(x) for x in row] for row in vals]
        payload = {"representation": label, "n": M.n, "specialized": True, "entries": rows}
    else:
        rows = [[str(p) for p in row] for row in M.entries]
        payload = {"representation": label, "n": M.n, "specialized": False, "variables": list(M.variables), "entries": rows}
    text = "\n".join("[" + ", ".join(r) + "]" for r in rows)
    _emit(args, payload, text, "matrix")
    return 0


def cmd_burau(args) -> int:
    _need(args, "n")
    b = GroupContext.artin(args.n).word(args.word)
    M = reps.burau_reduced(b) if args.reduced else reps.burau_unreduced(b)
    return _matrix_output(args, M, "burau_reduced" if args.reduced else "burau")


def cmd_gassner(args) -> int:
    _need(args, "n")
    M = reps.gassner(GroupContext.artin(args.n).word(args.word))
    if args.identify:
        M = reps.gassner_to_burau(M)
    return _matrix_output(args, M, "gassner")


def cmd_abelian(args) -> int:
    ctx = _context(args)
    if ctx.family == "Gamma3" and args.derived:
        d = nilquot.derived_subgroup(nilquot.make_group(*ctx.params))
    else:
        d = exactalg.abelian_invariants(_presentation(ctx))
    payload = {"context": str(ctx), "derived": bool(args.derived), **d.to_json()}
    _emit(args, payload, str(d), "abelian")
    return 0


def _verify_presentation(args) -> int:
    ctx = _context(args)
    P = _presentation(ctx)
    roundtrip = presentations.Presentation.from_json(json.loads(P.dumps())).relators == P.relators
    perm_ok = True
    if ctx.family in ("ArtinB", "SurfaceB", "FiberB", "MixedB"):
        perm_ok = all(presentations.underlying_permutation(r).is_identity() for r in P.relators)
    ok = roundtrip and perm_ok
    payload = {"context": str(ctx), "generators": len(P.generators), "relators": len(P.relators),
               "roundtrip": roundtrip, "relators_in_permutation_kernel": perm_ok, "passed": ok}
    text = f"{ctx}: {len(P.generators)} generators, {len(P.relators)} relators, {'ok' if ok else 'FAILED'}"
    _emit(args, payload, text, "verify")
    return 0 if ok else 1


def _verify_hom(args) -> int:
    h = homs.named_hom(args.map, args.g, args.k, args.n)  # raises VerificationError on failure
    if isinstance(h, presentations.WordMap):
        raise ContextError("iota is a word-level map; there is nothing to verify")
    report = h.report
    payload = report.to_json()
    payload["passed"] = report.passed
    _emit(args, payload, f"{h.name}: {len(report.checks)} relators, all map to the identity", "verify")
    return 0


def _certify_batch(params) -> list[dict]:
    k, n, g = params
    return [r.to_json() for r in actions.certify_action(k, n, g)]


def _verify_action(args) -> int:
    _need(args, "k", "n", "g")
    records = _certify_batch((args.k, args.n, args.g))
    failed = [r for r in records if r["certificate"] != "pass"]
    payload = {"k": args.k, "n": args.n, "g": args.g, "records": len(records), "failures": failed, "passed": not failed}
    text = f"{len(records)} (acting letter, fiber relator) pairs certified, {len(failed)} failures"
    _emit(args, payload, text, "verify")
    return 0 if not failed else 1


def cmd_verify(args) -> int:
    return {"presentation": _verify_presentation, "hom": _verify_hom, "action": _verify_action}[args.what](args)


def _diagram_batch(params) -> dict:
    g, k, n, count, seed = params
    return homs.check_lifting_diagram(g, k, n, count, random.Random(seed)).to_json()


def cmd_diagram(args) -> int:
    _need(args, "k", "n", "g")
    seed = _seed()
    jobs = max(1, args.jobs)
    sizes = [args.samples // jobs + (i < args.samples % jobs) for i in range(jobs)]
    batches = [(args.g, args.k, args.n, size, seed + i) for i, size in enumerate(sizes) if size]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_diagram_batch, batches))
    else:
        results = [_diagram_batch(b) for b in batches]
    failed = [r for r in results if not r["passed"]]
    payload = {"g": args.g, "k": args.k, "n": args.n, "samples": args.samples, "seed": seed,
               "passed": not failed, "counterexample": failed[0]["counterexample"] if failed else None}
    text = f"lifting square on {args.samples} random disc words: " + ("pass" if not failed else f"FAIL at {payload['counterexample']}")
    _emit(args, payload, text, "diagram")
    return 0 if not failed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--group", help="ArtinB, SurfaceB, FiberB, MixedB, FreeF, Gg, Hg, Kg, or e.g. 'SurfaceB(1,3)'")
    common.add_argument("--g", type=int, help="genus")
    common.add_argument("--k", type=int, help="fiber strands")
    common.add_argument("--n", type=int, help="strands / punctures")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sampling batches")

    p = argparse.ArgumentParser(
        prog="sbk",
        description="Exact computations in Artin and surface braid groups and their class-2 quotients.",
        epilog="Words: s<i> a<i> b<i> z<j> S<i> A<i> B<i> x<i>, exponents ^k, '*' or spaces, [u,v], parentheses, 1.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse and freely reduce a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("nf", parents=[common], help="normal form in Gg, Hg or Kg")
    s.add_argument("word")
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("project", parents=[common], help="apply a named map")
    s.add_argument("--map", required=True, choices=sorted(homs.CLI_NAMES))
    s.add_argument("word")
    s.set_defaults(func=cmd_project)

    s = sub.add_parser("act", parents=[common], help="act on a fiber word by a word in S, A, B letters")
    s.add_argument("beta")
    s.add_argument("word")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("induced", parents=[common], help="induced automorphism of Kg for an acting letter")
    s.add_argument("beta", help="S<i>, A<i> or B<i>, optionally ^-1")
    s.set_defaults(func=cmd_induced)

    s = sub.add_parser("obstruction", parents=[common], help="the linear-extension obstruction")
    s.set_defaults(func=cmd_obstruction)

    for name, func in (("burau", cmd_burau), ("gassner", cmd_gassner)):
        s = sub.add_parser(name, parents=[common], help=f"{name} matrix of an Artin braid word")
        s.add_argument("word")
        s.add_argument("--eval", action="append", metavar="VAR=VALUE", help="specialize variables (exact rationals)")
        if name == "burau":
            s.add_argument("--reduced", action="store_true", help="experimental reduced form")
        else:
            s.add_argument("--identify", action="store_true", help="set every t_i to t")
        s.set_defaults(func=func)

    s = sub.add_parser("abelian", parents=[common], help="abelian invariants of a presentation")
    s.add_argument("--derived", action="store_true", help="for Gg/Hg/Kg: the derived subgroup instead")
    s.set_defaults(func=cmd_abelian)

    s = sub.add_parser("verify", parents=[common], help="verify a presentation, a named map, or the action")
    s.add_argument("what", choices=("presentation", "hom", "action"))
    s.add_argument("--map", choices=sorted(homs.CLI_NAMES))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("diagram", parents=[common], help="check the lifting square on random disc words")
    s.add_argument("--samples", type=int, default=1000)
    s.set_defaults(func=cmd_diagram)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify" and args.what == "hom" and not args.map:
        parser.print_usage(sys.stderr)
        print("sbk: error: verify hom needs --map", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except SbkError as exc:
        print(f"sbk: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
