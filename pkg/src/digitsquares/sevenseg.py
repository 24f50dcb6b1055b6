"""Seven-segment ASCII art: rendering digit squares and rotating the page.

Every digit occupies a 3x3 character cell built from the classic segments
a (top), b (top right), c (bottom right), d (bottom), e (bottom left),
f (top left) and g (middle):

     _        a
    |_|     f g b
    |_|     e d c

Digits of one code word are separated by one blank column, code words in a
square row by two, and square rows by one blank line. All lines are
right-trimmed.

A half turn of the page permutes the segments (a<->d, b<->e, c<->f, g is
fixed). The digit 1 needs one extra convention: its two right-edge bars land
on the left edge after the turn, where the eye still reads a 1, so a lone
left-edge bar pair is normalised back to the right edge. With that rule,
rotating the rendering of a square of rotation-safe digits gives exactly the
rendering of the rotated square.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CodeWord, Square


class MalformedBlock(ValueError):
    """Text handed to rotate_text that is not a seven-segment rendering."""


_SEGMENT_NAMES = frozenset("abcdefg")

_ROTATED_SEGMENT = {"a": "d", "b": "e", "c": "f",
                    "d": "a", "e": "b", "f": "c", "g": "g"}

_DIGIT_SEGMENTS = {
    0: "abcdef",
    1: "bc",
    2: "abdeg",
    3: "abcdg",
    4: "bcfg",
    5: "acdfg",
    6: "acdefg",
    7: "abc",
    8: "abcdefg",
    9: "abcdfg",
}


@dataclass(frozen=True)
class SegmentGlyph:
    """The set of lit segments in one 3x3 character cell."""

    segments: frozenset[str]

    def __post_init__(self):
        bad = self.segments - _SEGMENT_NAMES
        if bad:
            raise ValueError(f"unknown segments: {sorted(bad)}")

    @classmethod
    def for_digit(cls, digit: int) -> "SegmentGlyph":
        if digit not in _DIGIT_SEGMENTS:
            raise ValueError(f"no glyph for {digit!r}")
        return cls(frozenset(_DIGIT_SEGMENTS[digit]))

    def rotate(self) -> "SegmentGlyph":
        """The glyph after a half turn, with the lone-bar normalisation."""
        turned = frozenset(_ROTATED_SEGMENT[s] for s in self.segments)
        if turned == frozenset("ef"):
            turned = frozenset("bc")
        return SegmentGlyph(turned)

    def lines(self) -> tuple[str, str, str]:
        on = self.segments
        return (
            " " + ("_" if "a" in on else " ") + " ",
            ("|" if "f" in on else " ")
            + ("_" if "g" in on else " ")
            + ("|" if "b" in on else " "),
            ("|" if "e" in on else " ")
            + ("_" if "d" in on else " ")
            + ("|" if "c" in on else " "),
        )


GLYPHS = {d: SegmentGlyph.for_digit(d) for d in _DIGIT_SEGMENTS}


def _word_lines(glyphs: list[SegmentGlyph]) -> list[str]:
    per_glyph = [g.lines() for g in glyphs]
    return [" ".join(cell[r] for cell in per_glyph) for r in range(3)]


def _trim(lines: list[str]) -> str:
    return "\n".join(line.rstrip() for line in lines)


def render_codeword(word: CodeWord) -> str:
    """Three right-trimmed lines of ASCII for one code word."""
    return _trim(_word_lines([GLYPHS[d] for d in word.digits]))


def render_square(square: Square) -> str:
    """The whole square as ASCII, one blank line between square rows."""
    out: list[str] = []
    for i, row in enumerate(square.cells):
        if i > 0:
            out.append("")
        word_blocks = [_word_lines([GLYPHS[d] for d in c.digits]) for c in row]
        for r in range(3):
            out.append("  ".join(block[r] for block in word_blocks))
    return _trim(out)


def _parse_cell(lines: list[str], top: int, left: int) -> SegmentGlyph:
    # chart of which character is legal where in a 3x3 cell
    spots = {
        (0, 0): (" ", None), (0, 1): ("_", "a"), (0, 2): (" ", None),
        (1, 0): ("|", "f"), (1, 1): ("_", "g"), (1, 2): ("|", "b"),
        (2, 0): ("|", "e"), (2, 1): ("_", "d"), (2, 2): ("|", "c"),
    }
    lit = set()
    for (dr, dc), (char, segment) in spots.items():
        got = lines[top + dr][left + dc]
        if got == " ":
            continue
        if got != char or segment is None:
            raise MalformedBlock(
                f"unexpected {got!r} at line {top + dr + 1}, "
                f"column {left + dc + 1}")
        lit.add(segment)
    if not lit:
        raise MalformedBlock(
            f"blank digit cell at line {top + 1}, column {left + 1}")
    return SegmentGlyph(frozenset(lit))


def _fit_width(width: int, words: int) -> tuple[int, int]:
    """Recover (digits per word, untrimmed width) from a trimmed line width.

    Right-trimming can eat up to two columns of the last cell (a glyph lit
    only on its left edge), never more, and valid widths are at least four
    apart, so rounding up to the next fitting width is unambiguous.
    """
    if words == 1:
        for w in range(width, width + 4):
            if w % 4 == 3:
                return (w + 1) // 4, w
    else:
        for w in range(width, width + 4 * words + 1):
            if (w + 2 - words) % (4 * words) == 0:
                digits = (w + 2 - words) // (4 * words)
                if digits >= 1:
                    return digits, w
    raise MalformedBlock(
        f"line width {width} does not fit {words} code words")


def rotate_text(block: str) -> str:
    """Rotate a seven-segment rendering by 180 degrees, as text.

    The block must have come out of render_codeword or render_square (or be
    laid out the same way). For squares whose digits all survive a half turn
    this commutes with the digit-level rotation: rotating the text equals
    rendering the rotated square.
    """
    if block.endswith("\n"):
        block = block[:-1]
    raw = block.split("\n")
    if len(raw) % 4 != 3:
        raise MalformedBlock(
            f"{len(raw)} lines do not split into 3-line bands")
    bands = (len(raw) + 1) // 4
    for idx in range(3, len(raw), 4):
        if raw[idx].strip():
            raise MalformedBlock(f"line {idx + 1} should be blank")
    for line in raw:
        extra = set(line) - {" ", "_", "|"}
        if extra:
            raise MalformedBlock(f"unexpected characters: {sorted(extra)}")

    # geometry: each band holds as many code words as there are bands
    words = bands
    digits, width = _fit_width(max(len(line) for line in raw), words)
    lines = [line.ljust(width) for line in raw]
    word_span = 4 * digits - 1

    grid: list[list[list[SegmentGlyph]]] = []
    for b in range(bands):
        top = b * 4
        row: list[list[SegmentGlyph]] = []
        for wi in range(words):
            left = wi * (word_span + 2)
            row.append([_parse_cell(lines, top, left + 4 * p)
                        for p in range(digits)])
        grid.append(row)
    # everything between the cells must be empty space
    covered = set()
    for wi in range(words):
        left = wi * (word_span + 2)
        for p in range(digits):
            covered.update(range(left + 4 * p, left + 4 * p + 3))
    for b in range(bands):
        for dr in range(3):
            line = lines[b * 4 + dr]
            for col in range(width):
                if col not in covered and line[col] != " ":
                    raise MalformedBlock(
                        f"unexpected {line[col]!r} at line {b * 4 + dr + 1}, "
                        f"column {col + 1}")

    flipped: list[str] = []
    for b in range(bands - 1, -1, -1):
        if flipped:
            flipped.append("")
        # reverse the whole band's digit cells, then regroup into words
        cells = [g for word in grid[b] for g in word]
        cells = [g.rotate() for g in reversed(cells)]
        blocks = [_word_lines(cells[wi * digits:(wi + 1) * digits])
                  for wi in range(words)]
        for r in range(3):
            flipped.append("  ".join(block[r] for block in blocks))
    return _trim(flipped)
