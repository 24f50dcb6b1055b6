"""Fixed-width digit strings, squares of them, and digit-level transforms.

Cells are code words: sequences of decimal digits in which leading zeros are
significant ("0110" is four digits wide and is not the same cell as "110").
All arithmetic on cells is exact integer arithmetic on their decimal values;
nothing in this package goes through floating point.

The two transforms that matter are geometric. Rotating a square by a half
turn reads every cell upside down, which on a seven-segment display means
reversing the digit order and substituting each digit by its rotated image
(6 and 9 swap, 0/1/2/5/8 are fixed). Mirroring reflects left to right, under
which 2 and 5 swap and 0/1/8 are fixed. Digits without an image under the
relevant map make the transform fail, loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence


class NonRotatableDigit(ValueError):
    """A digit with no image under the half-turn digit map.

    ``position`` is the index of the offending digit inside its code word.
    When the failure happens while transforming a whole square, ``row`` and
    ``col`` locate the offending cell.
    """

    def __init__(self, position: int, digit: int,
                 row: int | None = None, col: int | None = None):
        self.position = position
        self.digit = digit
        self.row = row
        self.col = col
        where = f"digit {digit} at position {position}"
        if row is not None:
            where += f" in cell ({row}, {col})"
        super().__init__(f"{where} does not survive a 180 degree rotation")


class NonMirrorableDigit(ValueError):
    """A digit with no image under the mirror digit map."""

    def __init__(self, position: int, digit: int,
                 row: int | None = None, col: int | None = None):
        self.position = position
        self.digit = digit
        self.row = row
        self.col = col
        where = f"digit {digit} at position {position}"
        if row is not None:
            where += f" in cell ({row}, {col})"
        super().__init__(f"{where} does not survive mirroring")


class ShapeMismatch(ValueError):
    """Layers, cells or blocks whose dimensions do not agree."""


@dataclass(frozen=True)
class DigitMap:
    """A partial digit-to-digit substitution.

    Only digits in the domain can be transformed; asking for any other digit
    is an error at a higher level (the caller knows the position and raises
    the specific exception). The two maps shipped with this module are
    involutions, and ``is_involution`` lets tests pin that down.
    """

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        table = dict(self.pairs)
        if len(table) != len(self.pairs):
            raise ValueError("duplicate digit in map domain")
        for k, v in table.items():
            if not (0 <= k <= 9 and 0 <= v <= 9):
                raise ValueError(f"digit out of range in map: {k} -> {v}")
        object.__setattr__(self, "_table", table)

    def __contains__(self, digit: int) -> bool:
        return digit in self._table

    def __getitem__(self, digit: int) -> int:
        return self._table[digit]

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(self._table)

    def is_involution(self) -> bool:
        return all(self._table.get(v) == k for k, v in self._table.items())


#: Digits that read as a digit again after a half turn of the display.
ROTATION_180 = DigitMap(((0, 0), (1, 1), (2, 2), (5, 5), (6, 9), (8, 8), (9, 6)))

#: Digits that read as a digit again in a mirror. In the mirror 2 becomes 5.
MIRROR = DigitMap(((0, 0), (1, 1), (2, 5), (5, 2), (8, 8)))


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of decimal digits a square draws its cells from."""

    digits: tuple[int, ...] = (0, 1, 2)

    def __post_init__(self):
        if not self.digits:
            raise ValueError("alphabet must not be empty")
        if len(set(self.digits)) != len(self.digits):
            raise ValueError(f"alphabet has repeated digits: {self.digits}")
        for d in self.digits:
            if not isinstance(d, int) or not 0 <= d <= 9:
                raise ValueError(f"not a decimal digit: {d!r}")
        object.__setattr__(self, "_members", frozenset(self.digits))

    @classmethod
    def from_string(cls, text: str) -> "Alphabet":
        """Parse an alphabet from a digit string such as "012"."""
        if not text.isdigit():
            raise ValueError(f"alphabet must be decimal digits, got {text!r}")
        return cls(tuple(int(c) for c in text))

    def __contains__(self, digit: int) -> bool:
        return digit in self._members

    def __iter__(self) -> Iterator[int]:
        return iter(self.digits)

    def __len__(self) -> int:
        return len(self.digits)

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits)

    @property
    def min_digit(self) -> int:
        return min(self.digits)

    @property
    def max_digit(self) -> int:
        return max(self.digits)


@dataclass(frozen=True, order=True)
class CodeWord:
    """A fixed-width digit string. Width is part of the identity."""

    digits: tuple[int, ...]

    def __post_init__(self):
        if not self.digits:
            raise ValueError("code word must have at least one digit")
        for d in self.digits:
            if not isinstance(d, int) or not 0 <= d <= 9:
                raise ValueError(f"not a decimal digit: {d!r}")

    @classmethod
    def from_string(cls, text: str) -> "CodeWord":
        if not text or not text.isdigit():
            raise ValueError(f"not a digit string: {text!r}")
        return cls(tuple(int(c) for c in text))

    def __str__(self) -> str:
        return "".join(str(d) for d in self.digits)

    @property
    def width(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        # exact: 4-digit words stay below 10**4, Python ints never overflow
        v = 0
        for d in self.digits:
            v = v * 10 + d
        return v

    def reverse(self) -> "CodeWord":
        return CodeWord(self.digits[::-1])

    def is_palindrome(self) -> bool:
        return self.digits == self.digits[::-1]


@dataclass(frozen=True)
class Square:
    """An n x n grid of code words, all the same width.

    ``alphabet`` is optional metadata: when present, every digit of every
    cell must belong to it. Searches attach it; hand-built squares may not.
    """

    cells: tuple[tuple[CodeWord, ...], ...]
    alphabet: Alphabet | None = None

    def __post_init__(self):
        n = len(self.cells)
        if n < 1:
            raise ShapeMismatch("square must have at least one row")
        for i, row in enumerate(self.cells):
            if len(row) != n:
                raise ShapeMismatch(
                    f"row {i} has {len(row)} cells, expected {n}")
        w = self.cells[0][0].width
        for i, row in enumerate(self.cells):
            for j, cell in enumerate(row):
                if cell.width != w:
                    raise ShapeMismatch(
                        f"cell ({i}, {j}) has width {cell.width}, expected {w}")
        if self.alphabet is not None:
            for i, row in enumerate(self.cells):
                for j, cell in enumerate(row):
                    for d in cell.digits:
                        if d not in self.alphabet:
                            raise ValueError(
                                f"digit {d} in cell ({i}, {j}) outside "
                                f"alphabet {self.alphabet}")

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]],
                     alphabet: Alphabet | None = None) -> "Square":
        cells = tuple(tuple(CodeWord.from_string(c) for c in row)
                      for row in rows)
        return cls(cells, alphabet)

    @property
    def order(self) -> int:
        return len(self.cells)

    @property
    def width(self) -> int:
        return self.cells[0][0].width

    def to_strings(self) -> list[list[str]]:
        return [[str(c) for c in row] for row in self.cells]

    def entries(self) -> list[CodeWord]:
        """All cells in row-major order (a multiset, not a set)."""
        return [c for row in self.cells for c in row]


@dataclass(frozen=True)
class LayerStack:
    """A square split into digit planes.

    ``layers[p][i][j]`` is the digit at place ``p`` (most significant first)
    of the cell at row ``i``, column ``j``. Stacking the planes back up is
    exact: cell value = sum over p of layer digit * 10**(width-1-p).
    """

    layers: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        if not self.layers:
            raise ShapeMismatch("need at least one layer")
        n = len(self.layers[0])
        for p, layer in enumerate(self.layers):
            if len(layer) != n:
                raise ShapeMismatch(
                    f"layer {p} has order {len(layer)}, expected {n}")
            for i, row in enumerate(layer):
                if len(row) != n:
                    raise ShapeMismatch(
                        f"layer {p} row {i} has {len(row)} entries, "
                        f"expected {n}")
                for d in row:
                    if not isinstance(d, int) or not 0 <= d <= 9:
                        raise ValueError(f"not a decimal digit: {d!r}")

    @property
    def order(self) -> int:
        return len(self.layers[0])

    @property
    def width(self) -> int:
        return len(self.layers)


def rotate_codeword(word: CodeWord, digit_map: DigitMap = ROTATION_180) -> CodeWord:
    """Read a code word upside down: reverse it, substitute every digit.

    Raises NonRotatableDigit at the first digit (left to right) outside the
    map's domain.
    """
    for pos, d in enumerate(word.digits):
        if d not in digit_map:
            raise NonRotatableDigit(pos, d)
    return CodeWord(tuple(digit_map[d] for d in reversed(word.digits)))


def mirror_codeword(word: CodeWord, digit_map: DigitMap = MIRROR) -> CodeWord:
    """Read a code word in a mirror: reverse it, substitute every digit."""
    for pos, d in enumerate(word.digits):
        if d not in digit_map:
            raise NonMirrorableDigit(pos, d)
    return CodeWord(tuple(digit_map[d] for d in reversed(word.digits)))


def rotate_square(square: Square, digit_map: DigitMap = ROTATION_180) -> Square:
    """Turn the whole square by 180 degrees.

    Cell (i, j) of the result is the rotated cell (n-1-i, n-1-j) of the
    input, so the page reads the same way after physically turning it.
    """
    n = square.order
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            src = square.cells[n - 1 - i][n - 1 - j]
            try:
                row.append(rotate_codeword(src, digit_map))
            except NonRotatableDigit as exc:
                raise NonRotatableDigit(exc.position, exc.digit,
                                        row=n - 1 - i, col=n - 1 - j) from None
        rows.append(tuple(row))
    return Square(tuple(rows), _mapped_alphabet(square.alphabet, digit_map))


def mirror_square(square: Square, digit_map: DigitMap = MIRROR) -> Square:
    """Reflect the square left to right, mirroring every cell."""
    n = square.order
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            src = square.cells[i][n - 1 - j]
            try:
                row.append(mirror_codeword(src, digit_map))
            except NonMirrorableDigit as exc:
                raise NonMirrorableDigit(exc.position, exc.digit,
                                         row=i, col=n - 1 - j) from None
        rows.append(tuple(row))
    return Square(tuple(rows), _mapped_alphabet(square.alphabet, digit_map))


def _mapped_alphabet(alphabet: Alphabet | None,
                     digit_map: DigitMap) -> Alphabet | None:
    # the image square draws from the image alphabet ({0,1,2} mirrors to {0,1,5})
    if alphabet is None:
        return None
    return Alphabet(tuple(sorted(digit_map[d] for d in alphabet)))


def decompose(square: Square) -> LayerStack:
    """Split a square into its digit planes, most significant place first."""
    n, w = square.order, square.width
    layers = tuple(
        tuple(tuple(square.cells[i][j].digits[p] for j in range(n))
              for i in range(n))
        for p in range(w))
    return LayerStack(layers)


def recompose(stack: LayerStack) -> Square:
    """Stack digit planes back into a square of code words."""
    n, w = stack.order, stack.width
    cells = tuple(
        tuple(CodeWord(tuple(stack.layers[p][i][j] for p in range(w)))
              for j in range(n))
        for i in range(n))
    return Square(cells)


def palindromic_extend(square: Square) -> Square:
    """Replace every cell w by w followed by its reverse.

    The result has doubled width and every cell is a palindrome. Line sums
    scale exactly: a square with all line sums equal to S at width d has
    line sums S * (10**d + 1) after extension.
    """
    cells = tuple(
        tuple(CodeWord(c.digits + c.digits[::-1]) for c in row)
        for row in square.cells)
    return Square(cells, square.alphabet)
