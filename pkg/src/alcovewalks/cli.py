"""Command line front end.

Subcommands:
  paths   enumerate folded paths of a type word, emit JSON
  count   per-endpoint count polynomials (optionally evaluated at q)
  verify  canned verification suites (currently: example8)
  oracle  finite-field brute force vs enumerator comparison
  render  SVG of the wall arrangement with optional walk overlays

Exit codes: 0 success, 1 verification failure, 2 bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import example8
from .affine import AffineWeylGroup, WordError, element_from_json, parse_word
from .cartan import CartanError, from_label, validate_cartan
from .folding import cells_by_endpoint, enumerate_folded_paths, paths_to_json
from .loopgroup import brute_force_cells
from .render import SceneSpec, render_arrangement


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alcovewalks",
        description="Folded alcove walks, cell point counts, and their matrix verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--type",
            required=True,
            help='Cartan type label ("A2") or JSON matrix ("[[2,-1],[-1,2]]")',
        )
        p.add_argument("--word", required=True, help="comma separated letters, e.g. 2,1,0")
        p.add_argument("--allow-nonreduced", action="store_true")
        p.add_argument("--jobs", type=int, default=1)

    end_help = 'endpoint as a word ("2,1,0") or {translation, finite_word} JSON'
    p_paths = sub.add_parser("paths", help="enumerate folded paths as JSON")
    common(p_paths)
    p_paths.add_argument("--end", help=f"only paths ending here; {end_help}")
    p_paths.add_argument("--out", help="write JSON here instead of stdout")

    p_count = sub.add_parser("count", help="count polynomials by endpoint")
    common(p_count)
    p_count.add_argument("--end", help=f"only this endpoint; {end_help}")
    p_count.add_argument("--q", type=int, help="also evaluate at this q")

    p_verify = sub.add_parser("verify", help="run a canned verification suite")
    p_verify.add_argument("suite", choices=["example8"])

    p_oracle = sub.add_parser("oracle", help="brute force tallies vs count polynomials")
    common(p_oracle)
    p_oracle.add_argument("--p", type=int, required=True, help="prime for the label field")
    p_oracle.add_argument(
        "--field",
        choices=["rational", "fp"],
        default="fp",
        help="label field; the brute force needs a finite one, so only fp runs",
    )

    p_render = sub.add_parser("render", help="render the arrangement to SVG")
    p_render.add_argument("--type", required=True, help="Cartan type label or JSON matrix")
    p_render.add_argument("--radius", type=int, default=2)
    p_render.add_argument("--word", help="overlay the walk of this word")
    p_render.add_argument("--end", help="with --word: overlay the folded paths ending here")
    p_render.add_argument("--out", required=True)
    return parser


def _datum_for(text: str):
    if text.lstrip().startswith("["):
        try:
            matrix = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CartanError(f"cannot parse matrix JSON: {exc}") from exc
        return validate_cartan(matrix)
    return from_label(text)


def _group_for(label: str) -> AffineWeylGroup:
    return AffineWeylGroup(_datum_for(label))


def _parse_endpoint(group, text: str):
    """An endpoint is a word ("2,1,0") or {translation, finite_word} JSON."""
    if text.lstrip().startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise WordError(f"cannot parse endpoint JSON: {exc}") from exc
        return element_from_json(group, doc)
    return group.from_word(parse_word(text))


def _endpoint_filter(group, args):
    if getattr(args, "end", None) is None:
        return None
    return _parse_endpoint(group, args.end)


def _cmd_paths(args) -> int:
    group = _group_for(args.type)
    cells = cells_by_endpoint(group, parse_word(args.word), args.allow_nonreduced, args.jobs)
    target = _endpoint_filter(group, args)
    if target is not None:
        cells = {end: cell for end, cell in cells.items() if end == target}
    doc = paths_to_json(
        group,
        parse_word(args.word),
        cells,
        nonreduced=args.allow_nonreduced and not group.is_reduced(parse_word(args.word)),
    )
    text = canonical_json(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_count(args) -> int:
    group = _group_for(args.type)
    word = parse_word(args.word)
    cells = cells_by_endpoint(group, word, args.allow_nonreduced, args.jobs)
    target = _endpoint_filter(group, args)
    if target is not None:
        if target not in cells:
            print("0")
            return 0
        line = str(cells[target].count)
        if args.q is not None:
            line += f" = {cells[target].count.evaluate(args.q)} at q={args.q}"
        print(line)
        return 0
    for end, cell in cells.items():
        end_word = ",".join(str(i) for i in group.reduced_word(end)) or "-"
        line = f"{end_word}\t{cell.count}"
        if args.q is not None:
            line += f"\t{cell.count.evaluate(args.q)}"
        print(line)
    return 0


def _cmd_verify(args) -> int:
    failures = 0
    for name, ok, detail in example8.run_checks():
        status = "ok" if ok else "FAIL"
        print(f"{status}: {name}" + (f" ({detail})" if detail else ""))
        failures += 0 if ok else 1
    if failures:
        print(f"{failures} assertion(s) failed")
        return 1
    print("all assertions passed")
    return 0


def _cmd_oracle(args) -> int:
    if args.field != "fp":
        raise WordError("brute force enumeration needs a finite label field; use --field fp")
    group = _group_for(args.type)
    word = parse_word(args.word)
    cells = cells_by_endpoint(group, word, args.allow_nonreduced, args.jobs)
    tallies = brute_force_cells(group.datum, word, args.p, jobs=args.jobs)
    mismatches = 0
    ends = sorted(set(cells) | set(tallies), key=group.canonical_key)
    print(f"endpoint\tpolynomial\tq={args.p}\tbrute")
    for end in ends:
        poly = cells[end].count if end in cells else None
        want = poly.evaluate(args.p) if poly is not None else 0
        got = tallies.get(end, 0)
        flag = "" if want == got else "\tMISMATCH"
        mismatches += 0 if want == got else 1
        end_word = ",".join(str(i) for i in group.reduced_word(end)) or "-"
        print(f"{end_word}\t{poly if poly is not None else '0'}\t{want}\t{got}{flag}")
    if mismatches:
        print(f"{mismatches} endpoint(s) disagree")
        return 1
    print("oracle agrees with the enumerator")
    return 0


def _cmd_render(args) -> int:
    datum = _datum_for(args.type)
    group = AffineWeylGroup(datum)
    overlays = ()
    if args.word:
        word = parse_word(args.word)
        if args.end:
            target = _parse_endpoint(group, args.end)
            matching = [
                p
                for p in enumerate_folded_paths(group, word)
                if p.endpoint == target
            ]
            if not matching:
                print("no folded path has that endpoint", file=sys.stderr)
                return 1
            overlays = tuple(matching)
        else:
            walk = [group.identity()]
            for i in word:
                walk.append(walk[-1] * group.simple_reflection(i))
            overlays = (tuple(walk),)
    spec = SceneSpec(datum=datum, radius=args.radius, overlays=overlays)
    with open(args.out, "w") as fh:
        fh.write(render_arrangement(spec))
    return 0


_COMMANDS = {
    "paths": _cmd_paths,
    "count": _cmd_count,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CartanError, WordError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
