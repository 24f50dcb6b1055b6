"""Command line front end.

Squares travel as JSON documents:

    {"order": 3, "width": 4, "alphabet": "012", "rows": [["1221", ...], ...]}

Cells are always strings so that leading zeros survive serialisation. A CSV
variant is accepted on input only: a first line "# <order>,<width>" followed
by one CSV record per row (quote cells to keep spreadsheet tools from eating
leading zeros).

Exit codes: 0 success, 1 a requested property does not hold (or a transform
hit a digit with no image), 2 bad input or usage, 3 search exhausted or out
of budget with nothing found.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass

from . import generate, sevenseg, verify
from .core import (Alphabet, NonMirrorableDigit, NonRotatableDigit,
                   ShapeMismatch, Square, decompose, mirror_square,
                   rotate_square)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_SEARCH = 3


class DocumentError(ValueError):
    """Anything wrong with an input document; the message says what and where."""


@dataclass
class SquareDocument:
    """The serialised form of a square."""

    order: int
    width: int
    rows: list[list[str]]
    alphabet: str | None = None

    @classmethod
    def from_square(cls, square: Square) -> "SquareDocument":
        return cls(order=square.order, width=square.width,
                   rows=square.to_strings(),
                   alphabet=str(square.alphabet) if square.alphabet else None)

    @classmethod
    def from_json_dict(cls, obj: object) -> "SquareDocument":
        if not isinstance(obj, dict):
            raise DocumentError("top level must be a JSON object")
        for key in ("order", "width", "rows"):
            if key not in obj:
                raise DocumentError(f"missing key {key!r}")
        order, width, rows = obj["order"], obj["width"], obj["rows"]
        if not isinstance(order, int) or order < 1:
            raise DocumentError(f"order must be a positive integer, got {order!r}")
        if not isinstance(width, int) or width < 1:
            raise DocumentError(f"width must be a positive integer, got {width!r}")
        alphabet = obj.get("alphabet")
        if alphabet is not None and (not isinstance(alphabet, str)
                                     or not alphabet.isdigit()):
            raise DocumentError(f"alphabet must be a digit string, got {alphabet!r}")
        if not isinstance(rows, list) or len(rows) != order:
            raise DocumentError(f"rows must be a list of {order} rows")
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != order:
                raise DocumentError(f"row {i} must be a list of {order} cells")
            for j, cell in enumerate(row):
                if not isinstance(cell, str) or not cell.isdigit():
                    raise DocumentError(
                        f"cell ({i}, {j}) must be a digit string, got {cell!r}")
                if len(cell) != width:
                    raise DocumentError(
                        f"cell ({i}, {j}) is {len(cell)} digits wide, "
                        f"expected {width}")
                if alphabet is not None:
                    stray = set(cell) - set(alphabet)
                    if stray:
                        raise DocumentError(
                            f"cell ({i}, {j}) uses digits {sorted(stray)} "
                            f"outside alphabet {alphabet!r}")
        return cls(order=order, width=width, rows=rows, alphabet=alphabet)

    def to_square(self) -> Square:
        alphabet = Alphabet.from_string(self.alphabet) if self.alphabet else None
        return Square.from_strings(self.rows, alphabet)

    def to_json_dict(self) -> dict:
        out: dict = {"order": self.order, "width": self.width}
        if self.alphabet is not None:
            out["alphabet"] = self.alphabet
        out["rows"] = self.rows
        return out


def parse_document(text: str, source: str = "<input>") -> SquareDocument:
    """Parse a JSON or CSV square document (the first character decides)."""
    head = text.lstrip()[:1]
    if head == "{":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(
                f"{source}: invalid JSON at line {exc.lineno}, "
                f"column {exc.colno}: {exc.msg}") from None
        try:
            return SquareDocument.from_json_dict(obj)
        except DocumentError as exc:
            raise DocumentError(f"{source}: {exc}") from None
    if head == "#":
        try:
            return _parse_csv(text)
        except DocumentError as exc:
            raise DocumentError(f"{source}: {exc}") from None
    raise DocumentError(
        f"{source}: expected '{{' (JSON) or '# order,width' (CSV), "
        f"got {head!r}")


def _parse_csv(text: str) -> SquareDocument:
    lines = text.splitlines()
    header = lines[0].lstrip("#").strip()
    parts = [p.strip() for p in header.split(",")]
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise DocumentError(
            f"line 1: header must be '# order,width', got {lines[0]!r}")
    order, width = int(parts[0]), int(parts[1])
    body = [ln for ln in lines[1:] if ln.strip()]
    rows = list(csv.reader(io.StringIO("\n".join(body))))
    if len(rows) != order:
        raise DocumentError(f"expected {order} data rows, got {len(rows)}")
    cleaned = [[cell.strip() for cell in row] for row in rows]
    return SquareDocument.from_json_dict(
        {"order": order, "width": width, "rows": cleaned})


def load_document(path: str) -> SquareDocument:
    if path == "-":
        return parse_document(sys.stdin.read(), "<stdin>")
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), path)


def _write_output(text: str, path: str) -> None:
    if path == "-":
        print(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _styled(text: str, code: str) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\x1b[{code}m{text}\x1b[0m"


def _verdict(ok: bool) -> str:
    return _styled("PASS", "32") if ok else _styled("FAIL", "31")


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_verify(args: argparse.Namespace) -> int:
    square = load_document(args.square).to_square()
    rep = verify.report(square)
    checks: list[tuple[str, bool]] = []
    if args.magic:
        checks.append(("magic", rep.magic))
    if args.bimagic:
        checks.append(("bimagic", rep.bimagic))
    if args.pandiagonal:
        checks.append(("pandiagonal", rep.pandiagonal))
    if args.pandiagonal_bimagic:
        checks.append(("pandiagonal-bimagic", rep.pandiagonal_bimagic))
    if args.blocks is not None:
        try:
            common = verify.check_blocks(square, args.blocks)
        except verify.BadBlockSize as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        checks.append((f"blocks {args.blocks}", common is not None))
    if args.distinct:
        checks.append(("distinct", rep.entries.distinct))
    if args.palindromic:
        checks.append(("palindromic", rep.entries.palindromic))
    if args.rotation_closed:
        checks.append(("rotation-closed", rep.entries.rotation_closed))

    if args.format == "json":
        payload = rep.as_dict()
        if checks:
            payload["checks"] = [{"name": name, "ok": ok} for name, ok in checks]
        print(json.dumps(payload, indent=2))
    else:
        print(f"order: {rep.order}")
        print(f"width: {rep.width}")
        print(f"s1: {rep.s1 if rep.s1 is not None else '-'}")
        print(f"s2: {rep.s2 if rep.s2 is not None else '-'}")
        print(f"magic: {_yesno(rep.magic)}")
        print(f"bimagic: {_yesno(rep.bimagic)}")
        print(f"pandiagonal: {_yesno(rep.pandiagonal)}")
        print(f"pandiagonal-bimagic: {_yesno(rep.pandiagonal_bimagic)}")
        for k, common in rep.blocks:
            print(f"block {k}: {common if common is not None else 'none'}")
        ent = rep.entries
        print(f"entries: palindromic={_yesno(ent.palindromic)} "
              f"distinct={_yesno(ent.distinct)} "
              f"rotation-closed={_yesno(ent.rotation_closed)}")
        if args.lines:
            print("lines:")
            for ln in rep.lines:
                print(f"  {ln.label}: sum={ln.total} squares={ln.square_total}")
        for name, ok in checks:
            print(f"check {name}: {_verdict(ok)}")
    return EXIT_OK if all(ok for _, ok in checks) else EXIT_PROPERTY


def _parse_line_sums(raw: str, width: int) -> tuple[int, ...]:
    parts = [p.strip() for p in raw.split(",")]
    try:
        values = tuple(int(p) for p in parts)
    except ValueError:
        raise DocumentError(f"--line-sum must be integers, got {raw!r}") from None
    if len(values) == 1:
        return values * width
    if len(values) != width:
        raise DocumentError(
            f"--line-sum needs 1 or {width} values, got {len(values)}")
    return values


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        alphabet = Alphabet.from_string(args.alphabet)
        line_sums = None
        if args.line_sum is not None:
            line_sums = _parse_line_sums(args.line_sum, args.width)
        elif not args.bimagic:
            raise DocumentError("--line-sum is required unless --bimagic is set")
        spec = generate.SearchSpec(
            order=args.order,
            width=args.width,
            alphabet=alphabet,
            line_sums=line_sums,
            pandiagonal=args.pandiagonal,
            distinct=args.distinct,
            palindromic=args.palindromic,
            bimagic=args.bimagic,
            limit=args.limit,
            seed=args.seed,
            budget_ms=args.budget_ms,
            deterministic=args.deterministic,
        )
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        squares = list(generate.gen_square(spec))
    except generate.Unsatisfiable as exc:
        print(f"no squares: {exc}", file=sys.stderr)
        return EXIT_SEARCH
    except generate.BudgetExhausted as exc:
        print(f"out of budget: {exc}", file=sys.stderr)
        return EXIT_SEARCH

    docs = [SquareDocument.from_square(sq).to_json_dict() for sq in squares]
    if args.format == "json":
        _write_output(json.dumps(docs, indent=2), args.out)
    else:
        chunks = [json.dumps(d, indent=2) for d in docs]
        _write_output("\n---\n".join(chunks), args.out)
    return EXIT_OK


def cmd_transform(args: argparse.Namespace) -> int:
    square = load_document(args.square).to_square()
    try:
        if args.rotate180:
            result = rotate_square(square)
        else:
            result = mirror_square(square)
    except (NonRotatableDigit, NonMirrorableDigit) as exc:
        print(f"cannot transform: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    doc = SquareDocument.from_square(result).to_json_dict()
    _write_output(json.dumps(doc, indent=2), args.out)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    square = load_document(args.square).to_square()
    art = sevenseg.render_square(square)
    if args.compact:
        art = "\n".join(line for line in art.split("\n") if line.strip())
    _write_output(art, args.out)
    return EXIT_OK


def cmd_decompose(args: argparse.Namespace) -> int:
    square = load_document(args.square).to_square()
    stack = decompose(square)
    layers = []
    for p, grid in enumerate(stack.layers):
        plane = Square.from_strings([[str(d) for d in row] for row in grid])
        layers.append({
            "place": p,
            "scale": 10 ** (stack.width - 1 - p),
            "line_sum": verify.check_magic(plane),
            "rows": [list(row) for row in grid],
        })
    if args.format == "json":
        print(json.dumps({"order": stack.order, "width": stack.width,
                          "layers": layers}, indent=2))
    else:
        for entry in layers:
            common = entry["line_sum"]
            print(f"layer {entry['place']}: scale {entry['scale']}, "
                  f"line sum {common if common is not None else '-'}")
            for row in entry["rows"]:
                print("  " + " ".join(str(d) for d in row))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitsquares",
        description="Generate, transform, verify and draw digit squares.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="report and check properties of a square")
    p.add_argument("square", help="path to a JSON or CSV document, or -")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--magic", action="store_true")
    p.add_argument("--bimagic", action="store_true")
    p.add_argument("--pandiagonal", action="store_true")
    p.add_argument("--pandiagonal-bimagic", action="store_true",
                   dest="pandiagonal_bimagic")
    p.add_argument("--blocks", type=int, metavar="K",
                   help="require all aligned KxK blocks to share one sum")
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--palindromic", action="store_true")
    p.add_argument("--rotation-closed", action="store_true",
                   dest="rotation_closed")
    p.add_argument("--lines", action="store_true",
                   help="also print every line's sum and squared sum")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="search for squares")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--width", type=int, default=1)
    p.add_argument("--alphabet", default="012")
    p.add_argument("--line-sum", dest="line_sum",
                   help="target per digit place: one value or width "
                        "comma-separated values")
    p.add_argument("--pandiagonal", action="store_true")
    p.add_argument("--distinct", action="store_true")
    p.add_argument("--palindromic", action="store_true")
    p.add_argument("--bimagic", action="store_true",
                   help="order 9, width 4 bimagic construction")
    p.add_argument("--limit", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-ms", dest="budget_ms", type=int)
    p.add_argument("--deterministic", action="store_true",
                   help="lexicographic order instead of seeded shuffling")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("transform", help="rotate or mirror a square")
    p.add_argument("square")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--rotate180", action="store_true")
    group.add_argument("--mirror", action="store_true")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("render", help="draw a square as seven-segment ASCII")
    p.add_argument("square")
    p.add_argument("--compact", action="store_true",
                   help="drop the blank lines between square rows")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("decompose", help="split a square into digit planes")
    p.add_argument("square")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decompose)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ShapeMismatch, verify.InvalidState) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
