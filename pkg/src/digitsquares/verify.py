"""Property checks for digit squares: sums, squared sums, diagonals, blocks.

Everything here is read-only and exact. A check that fails is a normal
result (None or False), not an exception; exceptions are reserved for
questions that do not make sense (pandiagonality of a non-magic square,
block size that does not divide the order).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import CodeWord, ROTATION_180, Square


class InvalidState(ValueError):
    """A check was asked of a square that lacks its prerequisite property."""


class BadBlockSize(ValueError):
    """Block size must divide the order and lie between 1 and the order."""


class NotDivisible(ArithmeticError):
    """A derived mean is not an integer; carries the exact rational value."""

    def __init__(self, numerator: int, denominator: int):
        self.numerator = numerator
        self.denominator = denominator
        self.remainder = numerator % denominator
        self.exact = Fraction(numerator, denominator)
        super().__init__(
            f"{numerator} is not divisible by {denominator} "
            f"(exact value {self.exact}, remainder {self.remainder})")


@dataclass(frozen=True)
class LineSum:
    """One line of a square: its label, digit sum and sum of squares."""

    label: str
    total: int
    square_total: int


def _line(label: str, cells: Sequence[CodeWord]) -> LineSum:
    values = [c.value for c in cells]
    return LineSum(label, sum(values), sum(v * v for v in values))


def line_sums(square: Square) -> list[LineSum]:
    """Sums over the n rows, n columns and both main diagonals, in that order."""
    n = square.order
    out = [_line(f"row {i}", square.cells[i]) for i in range(n)]
    out += [_line(f"col {j}", [square.cells[i][j] for i in range(n)])
            for j in range(n)]
    out.append(_line("diag main", [square.cells[i][i] for i in range(n)]))
    out.append(_line("diag anti", [square.cells[i][n - 1 - i] for i in range(n)]))
    return out


def _broken_diagonals(square: Square) -> list[LineSum]:
    # wrap-around diagonals; offsets 0 reproduce the two main diagonals
    n = square.order
    out = []
    for k in range(n):
        out.append(_line(f"broken+{k}",
                         [square.cells[i][(i + k) % n] for i in range(n)]))
        out.append(_line(f"broken-{k}",
                         [square.cells[i][(k - i) % n] for i in range(n)]))
    return out


def check_magic(square: Square) -> int | None:
    """The common line sum if all 2n+2 lines agree, else None."""
    lines = line_sums(square)
    totals = {ln.total for ln in lines}
    return totals.pop() if len(totals) == 1 else None


def check_bimagic(square: Square) -> tuple[int, int] | None:
    """(S1, S2) if all lines agree on both the sum and the sum of squares."""
    lines = line_sums(square)
    totals = {ln.total for ln in lines}
    square_totals = {ln.square_total for ln in lines}
    if len(totals) == 1 and len(square_totals) == 1:
        return totals.pop(), square_totals.pop()
    return None


def check_pandiagonal(square: Square, bimagic: bool = False) -> bool:
    """Whether every wrap-around diagonal matches the square's line sums.

    Pandiagonality is defined relative to S1, so a square that is not magic
    has no answer here: that raises InvalidState. With ``bimagic=True`` the
    squared sums of the broken diagonals must match S2 as well, and the
    square itself must be bimagic to begin with.
    """
    if bimagic:
        pair = check_bimagic(square)
        if pair is None:
            raise InvalidState("square is not bimagic")
        s1, s2 = pair
        return all(ln.total == s1 and ln.square_total == s2
                   for ln in _broken_diagonals(square))
    s1 = check_magic(square)
    if s1 is None:
        raise InvalidState("square is not magic")
    return all(ln.total == s1 for ln in _broken_diagonals(square))


def check_blocks(square: Square, k: int) -> int | None:
    """The common sum of all aligned k x k blocks, or None if they differ."""
    n = square.order
    if k < 1 or k > n or n % k != 0:
        raise BadBlockSize(f"block size {k} does not tile a square of order {n}")
    sums = set()
    for bi in range(0, n, k):
        for bj in range(0, n, k):
            sums.add(sum(square.cells[bi + di][bj + dj].value
                         for di in range(k) for dj in range(k)))
    return sums.pop() if len(sums) == 1 else None


@dataclass(frozen=True)
class EntryProperties:
    """Cell-level facts that do not depend on any line sums."""

    palindromic: bool
    distinct: bool
    rotation_closed: bool


def entry_properties(square: Square) -> EntryProperties:
    entries = square.entries()
    palindromic = all(c.is_palindrome() for c in entries)
    distinct = len(set(entries)) == len(entries)
    closed = all(d in ROTATION_180 for c in entries for d in c.digits)
    if closed:
        rotated = Counter(CodeWord(tuple(ROTATION_180[d]
                                         for d in reversed(c.digits)))
                          for c in entries)
        closed = rotated == Counter(entries)
    return EntryProperties(palindromic, distinct, closed)


@dataclass(frozen=True)
class PythagorasResult:
    a: int
    b: int
    c: int
    left: int
    right: int

    @property
    def holds(self) -> bool:
        return self.left == self.right


def pythagoras_check(a: int, b: int, c: int) -> PythagorasResult:
    """Exact check of a**2 + b**2 == c**2 for three line sums."""
    return PythagorasResult(a, b, c, a * a + b * b, c * c)


def s2_from_multiset(entries: Iterable[CodeWord | int], order: int) -> int:
    """The forced S2 of any bimagic square of this order using these cells.

    In a bimagic square every row carries the same sum of squared values, so
    S2 must equal the total over all n*n cells divided by n. This needs only
    the multiset of entries, which makes it an oracle: a claimed S2 that
    disagrees with it cannot be realised by any arrangement.

    Raises NotDivisible (with the exact rational) when the division fails,
    which already proves no bimagic arrangement exists.
    """
    values = [e.value if isinstance(e, CodeWord) else int(e) for e in entries]
    if len(values) != order * order:
        raise ValueError(
            f"need {order * order} entries for order {order}, got {len(values)}")
    total = sum(v * v for v in values)
    if total % order != 0:
        raise NotDivisible(total, order)
    return total // order


@dataclass(frozen=True)
class PropertyReport:
    """Everything the verifier can say about one square."""

    order: int
    width: int
    s1: int | None
    s2: int | None
    magic: bool
    bimagic: bool
    pandiagonal: bool
    pandiagonal_bimagic: bool
    blocks: tuple[tuple[int, int | None], ...]
    entries: EntryProperties
    lines: tuple[LineSum, ...]

    def as_dict(self) -> dict:
        return {
            "order": self.order,
            "width": self.width,
            "s1": self.s1,
            "s2": self.s2,
            "magic": self.magic,
            "bimagic": self.bimagic,
            "pandiagonal": self.pandiagonal,
            "pandiagonal_bimagic": self.pandiagonal_bimagic,
            "blocks": [{"size": k, "sum": s} for k, s in self.blocks],
            "entries": {
                "palindromic": self.entries.palindromic,
                "distinct": self.entries.distinct,
                "rotation_closed": self.entries.rotation_closed,
            },
            "lines": [{"label": ln.label, "sum": ln.total,
                       "square_sum": ln.square_total} for ln in self.lines],
        }


def report(square: Square) -> PropertyReport:
    """Run every check that applies and collect the results."""
    n = square.order
    lines = tuple(line_sums(square))
    s1 = check_magic(square)
    pair = check_bimagic(square)
    s2 = pair[1] if pair else None
    pandiagonal = s1 is not None and check_pandiagonal(square)
    pan_bimagic = pair is not None and check_pandiagonal(square, bimagic=True)
    blocks = tuple((k, check_blocks(square, k))
                   for k in range(2, n + 1) if n % k == 0)
    return PropertyReport(
        order=n,
        width=square.width,
        s1=s1,
        s2=s2,
        magic=s1 is not None,
        bimagic=pair is not None,
        pandiagonal=pandiagonal,
        pandiagonal_bimagic=pan_bimagic,
        blocks=blocks,
        entries=entry_properties(square),
        lines=lines,
    )


@dataclass(frozen=True)
class ClaimAudit:
    """One circulated constant checked against an independently computed value."""

    label: str
    claimed: tuple[int, ...]
    computed: int
    consistent: tuple[bool, ...]
    note: str


def _all_words(width: int) -> list[CodeWord]:
    words = [()]
    for _ in range(width):
        words = [w + (d,) for w in words for d in (0, 1, 2)]
    return [CodeWord(w) for w in words]


def audit_published_values() -> list[ClaimAudit]:
    """Recompute the S2 constants quoted for the order-9 family from scratch.

    Each entry multiset below is forced by the construction (all 81 words
    over {0, 1, 2}, their palindromic extensions, or their three-digit
    palindrome recoding), so s2_from_multiset pins S2 before any square is
    even built. Two different four-digit values circulate; the eight-digit
    value in circulation ends in 0 while the exact sum ends in 5.
    """
    audits = []

    words4 = _all_words(4)
    s2_4 = s2_from_multiset(words4, 9)
    audits.append(ClaimAudit(
        label="order 9, width 4, cells = all 81 words over {0,1,2}",
        claimed=(17169395, 17169495),
        computed=s2_4,
        consistent=(17169395 == s2_4, 17169495 == s2_4),
        note="two values circulate for the same square; only one is attainable",
    ))

    extended = [CodeWord(w.digits + w.digits[::-1]) for w in words4]
    s2_8 = s2_from_multiset(extended, 9)
    audits.append(ClaimAudit(
        label="order 9, width 8, cells = palindromic extensions of the above",
        claimed=(1717172174949490,),
        computed=s2_8,
        consistent=(1717172174949490 == s2_8,),
        note="the quoted value ends in 0, the exact sum of squares forces 5",
    ))

    paired = [CodeWord((a1, a0, a1, b1, b0, b1))
              for a1 in (0, 1, 2) for a0 in (0, 1, 2)
              for b1 in (0, 1, 2) for b0 in (0, 1, 2)]
    s2_6 = s2_from_multiset(paired, 9)
    audits.append(ClaimAudit(
        label="order 9, width 6, cells = paired three-digit palindromes",
        claimed=(172916950695,),
        computed=s2_6,
        consistent=(172916950695 == s2_6,),
        note="exact agreement",
    ))

    return audits
