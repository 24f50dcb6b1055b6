"""Search and construction of digit squares.

The workhorse is a digit-plane search: a square of width d with constant
per-place line sums s_p is a stack of d single-digit layers, each of which
is itself a (possibly pandiagonal) magic square over the alphabet. Layers
are found by row-major backtracking with the last column and last row forced
by the running sums, and full squares are built as the lazy product of one
layer stream per place. The resulting line sum is exact:

    S1 = sum over places p of s_p * 10**(d-1-p)

so a 9x9 square over {0, 1, 2} with every layer summing to 9 has S1 = 9999.

Bimagic squares come from a separate algebraic construction over GF(3) and
are re-verified, not assumed, before they are handed out.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import verify
from .core import (Alphabet, CodeWord, LayerStack, ShapeMismatch, Square,
                   palindromic_extend, recompose)


class Unsatisfiable(RuntimeError):
    """The requested squares provably do not exist, or the search space is spent."""


class BudgetExhausted(RuntimeError):
    """The time budget ran out before the first square was found."""


class OracleTooLarge(ValueError):
    """A brute-force enumeration was asked for more states than the cap allows."""


class _DeadlineHit(Exception):
    # internal cancellation signal; never escapes this module
    pass


_ORACLE_CAP = 10 ** 8


@dataclass(frozen=True)
class Layer:
    """One digit plane: an order-n grid of single digits."""

    grid: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.grid)
        if n < 1:
            raise ShapeMismatch("layer must have at least one row")
        for i, row in enumerate(self.grid):
            if len(row) != n:
                raise ShapeMismatch(f"layer row {i} has {len(row)} entries, "
                                    f"expected {n}")
            for d in row:
                if not isinstance(d, int) or not 0 <= d <= 9:
                    raise ValueError(f"not a decimal digit: {d!r}")

    @property
    def order(self) -> int:
        return len(self.grid)


@dataclass(frozen=True)
class SearchSpec:
    """What to search for.

    ``line_sums`` gives the target line sum of each digit plane, most
    significant place first; all 2n+2 lines of every plane (and every
    wrap-around diagonal, when ``pandiagonal`` is set) must hit it.
    With ``bimagic`` the only supported shape is order 9, width 4 over
    {0, 1, 2}, and ``line_sums`` defaults to (9, 9, 9, 9).

    ``deterministic`` makes the stream the lexicographically ordered one;
    otherwise the branching order is shuffled by a generator seeded from
    ``seed``, which is still reproducible run to run.
    """

    order: int
    width: int
    alphabet: Alphabet = Alphabet()
    line_sums: tuple[int, ...] | None = None
    pandiagonal: bool = False
    distinct: bool = False
    palindromic: bool = False
    bimagic: bool = False
    limit: int = 1
    seed: int = 0
    budget_ms: int | None = None
    deterministic: bool = False

    def __post_init__(self):
        if self.order < 3:
            raise ValueError(f"order must be at least 3, got {self.order}")
        if self.width < 1:
            raise ValueError(f"width must be at least 1, got {self.width}")
        if self.limit < 1:
            raise ValueError(f"limit must be at least 1, got {self.limit}")
        if self.budget_ms is not None and self.budget_ms < 0:
            raise ValueError("budget must not be negative")
        if self.bimagic:
            if (self.order, self.width) != (9, 4):
                raise ValueError("bimagic search supports only order 9, width 4")
            if tuple(sorted(self.alphabet.digits)) != (0, 1, 2):
                raise ValueError("bimagic search supports only the {0,1,2} alphabet")
            if self.palindromic:
                raise ValueError("bimagic and palindromic cannot be combined "
                                 "(extend a bimagic square instead)")
            if self.pandiagonal:
                raise ValueError("bimagic search does not offer pandiagonality")
            if self.line_sums is None:
                object.__setattr__(self, "line_sums", (9, 9, 9, 9))
            elif self.line_sums != (9, 9, 9, 9):
                raise ValueError("bimagic squares over {0,1,2} force line sums "
                                 "(9, 9, 9, 9)")
        else:
            if self.line_sums is None:
                raise ValueError("line_sums is required")
            if len(self.line_sums) != self.width:
                raise ValueError(f"need {self.width} line sums, "
                                 f"got {len(self.line_sums)}")
        if self.palindromic and self.width % 2 != 0:
            raise ValueError("palindromic cells need an even width")

    @property
    def s1(self) -> int:
        """The line sum every emitted square will have."""
        return sum(s * 10 ** (self.width - 1 - p)
                   for p, s in enumerate(self.line_sums))


def _deadline_from(budget_ms: int | None) -> float | None:
    return None if budget_ms is None else time.monotonic() + budget_ms / 1000.0


def _layer_stream(order: int, alphabet: Alphabet, line_sum: int,
                  pandiagonal: bool = False,
                  rng: random.Random | None = None,
                  deadline: float | None = None) -> Iterator[Layer]:
    """Backtracking enumeration of single-digit magic layers.

    The last cell of each row and the whole last row are forced by the
    running sums, so only an (n-1) x (n-1) corner is branched on. With
    ascending digit order the emission is lexicographic by row-major grid.
    """
    n, s = order, line_sum
    digits = sorted(alphabet.digits)
    lo, hi = digits[0], digits[-1]
    if s < n * lo or s > n * hi:
        return
    grid = [[lo] * n for _ in range(n)]
    row_sum = [0] * n
    col_sum = [0] * n
    # wrap-around diagonal classes: plus is (j - i) mod n, minus is (i + j) mod n
    dplus = [0] * n
    dminus = [0] * n
    dplus_cnt = [0] * n
    dminus_cnt = [0] * n
    if pandiagonal:
        plus_tracked = minus_tracked = set(range(n))
    else:
        plus_tracked = {0}          # the main diagonal
        minus_tracked = {n - 1}     # the anti diagonal

    def place(i: int, j: int, d: int) -> bool:
        # returns False (after undoing nothing) when a bound is already violated
        grid[i][j] = d
        row_sum[i] += d
        col_sum[j] += d
        kp, km = (j - i) % n, (i + j) % n
        dplus[kp] += d
        dplus_cnt[kp] += 1
        dminus[km] += d
        dminus_cnt[km] += 1
        ok = (_fits(row_sum[i], n - 1 - j, s, lo, hi)
              and _fits(col_sum[j], n - 1 - i, s, lo, hi))
        if ok and kp in plus_tracked:
            ok = _fits(dplus[kp], n - dplus_cnt[kp], s, lo, hi)
        if ok and km in minus_tracked:
            ok = _fits(dminus[km], n - dminus_cnt[km], s, lo, hi)
        if not ok:
            unplace(i, j, d)
        return ok

    def unplace(i: int, j: int, d: int) -> None:
        row_sum[i] -= d
        col_sum[j] -= d
        kp, km = (j - i) % n, (i + j) % n
        dplus[kp] -= d
        dplus_cnt[kp] -= 1
        dminus[km] -= d
        dminus_cnt[km] -= 1

    members = set(digits)

    def choices() -> list[int]:
        if rng is None:
            return digits
        picked = digits[:]
        rng.shuffle(picked)
        return picked

    def fill(i: int, j: int) -> Iterator[Layer]:
        if deadline is not None and time.monotonic() > deadline:
            raise _DeadlineHit
        if i == n - 1:
            # the bottom row is forced cell by cell by the column sums
            forced = [s - col_sum[jj] for jj in range(n)]
            if any(d not in members for d in forced):
                return
            for jj, d in enumerate(forced):
                if not place(n - 1, jj, d):
                    for kk in range(jj):
                        unplace(n - 1, kk, forced[kk])
                    return
            if (all(dplus[k] == s for k in plus_tracked)
                    and all(dminus[k] == s for k in minus_tracked)):
                yield Layer(tuple(tuple(r) for r in grid))
            for jj, d in enumerate(forced):
                unplace(n - 1, jj, d)
            return
        if j == n - 1:
            d = s - row_sum[i]
            if d not in members:
                return
            if place(i, j, d):
                yield from fill(i + 1, 0)
                unplace(i, j, d)
            return
        for d in choices():
            if place(i, j, d):
                yield from fill(i, j + 1)
                unplace(i, j, d)

    yield from fill(0, 0)


def _fits(partial: int, remaining: int, target: int, lo: int, hi: int) -> bool:
    return partial + remaining * lo <= target <= partial + remaining * hi


def gen_layers(order: int, alphabet: Alphabet, line_sum: int,
               pandiagonal: bool = False,
               rng: random.Random | None = None) -> Iterator[Layer]:
    """All single-digit layers with every line summing to ``line_sum``.

    The stream is empty when no layer exists (no exception). Without an
    ``rng`` the order is deterministic and lexicographic; with one, the
    branching order is shuffled but the set of layers is the same.
    """
    return _layer_stream(order, alphabet, line_sum,
                         pandiagonal=pandiagonal, rng=rng)


def stack_layers(layers: Sequence[Layer]) -> Square:
    """Stack digit planes (most significant first) into a square."""
    if not layers:
        raise ShapeMismatch("need at least one layer")
    orders = {layer.order for layer in layers}
    if len(orders) != 1:
        raise ShapeMismatch(f"layer orders differ: {sorted(orders)}")
    return recompose(LayerStack(tuple(layer.grid for layer in layers)))


def _prefix_distinct_ok(grids: list[tuple[tuple[int, ...], ...]], order: int,
                        places_left: int, alphabet_size: int) -> bool:
    # cells sharing a digit prefix must still be separable by the remaining
    # places: a group larger than alphabet_size**places_left is hopeless
    budget = alphabet_size ** places_left
    groups: dict[tuple[int, ...], int] = {}
    for i in range(order):
        for j in range(order):
            key = tuple(g[i][j] for g in grids)
            c = groups.get(key, 0) + 1
            if c > budget:
                return False
            groups[key] = c
    return True


def _reverify(square: Square, spec: SearchSpec) -> None:
    # emitted squares are re-verified, not assumed correct by construction
    if verify.check_magic(square) != spec.s1:
        raise AssertionError(f"generated square is not magic with S1={spec.s1}")
    props = verify.entry_properties(square)
    if spec.pandiagonal and not verify.check_pandiagonal(square):
        raise AssertionError("generated square is not pandiagonal")
    if spec.distinct and not props.distinct:
        raise AssertionError("generated square has repeated cells")
    if spec.palindromic and not props.palindromic:
        raise AssertionError("generated square has non-palindromic cells")


def gen_square(spec: SearchSpec) -> Iterator[Square]:
    """Squares matching the spec, built as a product of layer streams.

    Provably empty requests raise Unsatisfiable immediately; a search that
    finishes without a single square raises it at the end. If the time
    budget runs out before the first square, BudgetExhausted is raised;
    after the first, the stream simply ends early.
    """
    if spec.bimagic:
        return bimagic_search(spec)
    n = spec.order
    lo, hi = spec.alphabet.min_digit, spec.alphabet.max_digit
    for p, s in enumerate(spec.line_sums):
        if not n * lo <= s <= n * hi:
            raise Unsatisfiable(
                f"line sum {s} at place {p} is outside [{n * lo}, {n * hi}] "
                f"for order {n} over {spec.alphabet}")
    if spec.palindromic:
        for p in range(spec.width):
            if spec.line_sums[p] != spec.line_sums[spec.width - 1 - p]:
                raise Unsatisfiable(
                    "palindromic cells force mirror-symmetric line sums, "
                    f"got {spec.line_sums}")
    if spec.distinct:
        pool = len(spec.alphabet) ** (spec.width // 2 if spec.palindromic
                                      else spec.width)
        if pool < n * n:
            raise Unsatisfiable(
                f"only {pool} distinct cells are available but {n * n} are needed")
    return _square_stream(spec)


def _square_stream(spec: SearchSpec) -> Iterator[Square]:
    n = spec.order
    deadline = _deadline_from(spec.budget_ms)
    if spec.palindromic:
        search_width = spec.width // 2
        sums = spec.line_sums[:search_width]
    else:
        search_width = spec.width
        sums = spec.line_sums
    asize = len(spec.alphabet)
    grids: list[tuple[tuple[int, ...], ...]] = []

    def rng_for(place: int) -> random.Random | None:
        if spec.deterministic:
            return None
        return random.Random(spec.seed * 65537 + place)

    def rec(place: int) -> Iterator[Square]:
        if place == search_width:
            base = recompose(LayerStack(tuple(grids)))
            if spec.palindromic:
                base = palindromic_extend(base)
            square = Square(base.cells, spec.alphabet)
            _reverify(square, spec)
            yield square
            return
        for layer in _layer_stream(n, spec.alphabet, sums[place],
                                   pandiagonal=spec.pandiagonal,
                                   rng=rng_for(place), deadline=deadline):
            grids.append(layer.grid)
            if (not spec.distinct
                    or _prefix_distinct_ok(grids, n, search_width - place - 1,
                                           asize)):
                yield from rec(place + 1)
            grids.pop()

    emitted = 0
    try:
        for square in rec(0):
            yield square
            emitted += 1
            if emitted >= spec.limit:
                return
    except _DeadlineHit:
        if emitted == 0:
            raise BudgetExhausted(
                f"no square found within {spec.budget_ms} ms") from None
        return
    if emitted == 0:
        raise Unsatisfiable("search space exhausted without finding a square")


def _det2(p: tuple[int, int], q: tuple[int, int]) -> int:
    return (p[0] * q[1] - p[1] * q[0]) % 3


def _rows_compatible(r: tuple[int, ...], s: tuple[int, ...]) -> bool:
    # every line of the 9x9 square (rows, columns, both main diagonals)
    # must see each pair of digit values of these two planes equally often;
    # over GF(3) that is four 2x2 determinants being nonzero
    ur, vr = (r[0], r[1]), (r[2], r[3])
    us, vs = (s[0], s[1]), (s[2], s[3])
    if _det2(ur, us) == 0 or _det2(vr, vs) == 0:
        return False
    plus_r = ((ur[0] + vr[0]) % 3, (ur[1] + vr[1]) % 3)
    plus_s = ((us[0] + vs[0]) % 3, (us[1] + vs[1]) % 3)
    if _det2(plus_r, plus_s) == 0:
        return False
    minus_r = ((ur[0] - vr[0]) % 3, (ur[1] - vr[1]) % 3)
    minus_s = ((us[0] - vs[0]) % 3, (us[1] - vs[1]) % 3)
    return _det2(minus_r, minus_s) != 0


def _det4(m: tuple[tuple[int, ...], ...]) -> int:
    total = 0
    for perm in itertools.permutations(range(4)):
        sign = 1
        seen = list(perm)
        for a in range(4):
            for b in range(a + 1, 4):
                if seen[a] > seen[b]:
                    sign = -sign
        term = sign
        for row, col in enumerate(perm):
            term *= m[row][col]
        total += term
    return total % 3


def _coefficient_rows() -> list[tuple[int, int, int, int]]:
    # rows whose i0 and j0 coefficients are not both zero; that is what makes
    # every aligned 3x3 block contain each digit value three times
    rows = []
    for r in itertools.product(range(3), repeat=4):
        if (r[1], r[3]) != (0, 0):
            rows.append(r)
    return rows


def _matrix_valid(rows: tuple[tuple[int, int, int, int], ...]) -> bool:
    for a in range(4):
        for b in range(a + 1, 4):
            if not _rows_compatible(rows[a], rows[b]):
                return False
    return _det4(rows) != 0


def _square_from_matrix(matrix: tuple[tuple[int, int, int, int], ...],
                        offsets: tuple[int, int, int, int]) -> Square:
    cells = []
    for i in range(9):
        i1, i0 = divmod(i, 3)
        row = []
        for j in range(9):
            j1, j0 = divmod(j, 3)
            x = (i1, i0, j1, j0)
            digs = tuple(
                (sum(c * v for c, v in zip(mrow, x)) + off) % 3
                for mrow, off in zip(matrix, offsets))
            row.append(CodeWord(digs))
        cells.append(tuple(row))
    return Square(tuple(cells), Alphabet((0, 1, 2)))


def bimagic_search(spec: SearchSpec) -> Iterator[Square]:
    """Order-9, width-4 bimagic squares over {0, 1, 2}.

    Each cell's four digits are linear functions over GF(3) of the base-3
    coordinates of its row and column. Choosing the coefficient matrix so
    that every pair of digit planes covers all nine value pairs uniformly on
    every line makes all 20 line sums 9999 and all squared sums equal; the
    block condition on the low coordinates gives every aligned 3x3 block the
    sum 9999 as well, and invertibility makes all 81 cells distinct. Every
    candidate is still re-verified before it is emitted.
    """
    if (spec.order, spec.width) != (9, 4):
        raise ValueError("bimagic search supports only order 9, width 4")
    expected_s2 = verify.s2_from_multiset(
        [CodeWord(w) for w in itertools.product((0, 1, 2), repeat=4)], 9)
    deadline = _deadline_from(spec.budget_ms)
    emitted = 0
    seen: set[tuple] = set()
    try:
        for matrix, offsets in _bimagic_candidates(spec, deadline):
            square = _square_from_matrix(matrix, offsets)
            key = square.cells
            if key in seen:
                continue
            seen.add(key)
            if verify.check_bimagic(square) != (9999, expected_s2):
                continue
            if verify.check_blocks(square, 3) != 9999:
                continue
            if not verify.entry_properties(square).distinct:
                continue
            yield square
            emitted += 1
            if emitted >= spec.limit:
                return
    except _DeadlineHit:
        if emitted == 0:
            raise BudgetExhausted(
                f"no bimagic square found within {spec.budget_ms} ms") from None
        return
    if emitted == 0:
        raise Unsatisfiable("bimagic family exhausted")


def _bimagic_candidates(spec: SearchSpec, deadline: float | None
                        ) -> Iterator[tuple[tuple, tuple]]:
    rows = _coefficient_rows()
    if spec.deterministic:
        # lexicographic over coefficient matrices, zero offsets
        for r0 in rows:
            if deadline is not None and time.monotonic() > deadline:
                raise _DeadlineHit
            for r1 in rows:
                if not _rows_compatible(r0, r1):
                    continue
                for r2 in rows:
                    if deadline is not None and time.monotonic() > deadline:
                        raise _DeadlineHit
                    if not (_rows_compatible(r0, r2)
                            and _rows_compatible(r1, r2)):
                        continue
                    for r3 in rows:
                        m = (r0, r1, r2, r3)
                        if (_rows_compatible(r0, r3)
                                and _rows_compatible(r1, r3)
                                and _rows_compatible(r2, r3)
                                and _det4(m) != 0):
                            yield m, (0, 0, 0, 0)
        return
    rng = random.Random(spec.seed)
    while True:
        if deadline is not None and time.monotonic() > deadline:
            raise _DeadlineHit
        m = tuple(rng.choice(rows) for _ in range(4))
        if _matrix_valid(m):
            offsets = tuple(rng.randrange(3) for _ in range(4))
            yield m, offsets


def compose_blocks(blocks: Sequence[Sequence[Square]]) -> Square:
    """Tile a grid of equally sized squares into one larger square."""
    m = len(blocks)
    if m < 1:
        raise ShapeMismatch("need at least one block")
    for bi, brow in enumerate(blocks):
        if len(brow) != m:
            raise ShapeMismatch(f"block row {bi} has {len(brow)} blocks, "
                                f"expected {m}")
    k = blocks[0][0].order
    w = blocks[0][0].width
    for bi, brow in enumerate(blocks):
        for bj, block in enumerate(brow):
            if block.order != k:
                raise ShapeMismatch(f"block ({bi}, {bj}) has order "
                                    f"{block.order}, expected {k}")
            if block.width != w:
                raise ShapeMismatch(f"block ({bi}, {bj}) has width "
                                    f"{block.width}, expected {w}")
    n = m * k
    cells = tuple(
        tuple(blocks[i // k][j // k].cells[i % k][j % k] for j in range(n))
        for i in range(n))
    alphabets = {block.alphabet for brow in blocks for block in brow}
    alphabet = alphabets.pop() if len(alphabets) == 1 else None
    return Square(cells, alphabet)


def brute_force_squares(order: int, alphabet: Alphabet,
                        line_sum: int) -> list[Square]:
    """Every width-1 magic square by exhaustive enumeration, sorted.

    This is the independent oracle the layer search is tested against; it
    shares no code path with the backtracking. The state count is capped so
    nobody asks it for more than it can honestly enumerate.
    """
    states = len(alphabet) ** (order * order)
    if states > _ORACLE_CAP:
        raise OracleTooLarge(f"{states} grids exceeds the cap of {_ORACLE_CAP}")
    found = []
    for flat in itertools.product(sorted(alphabet.digits), repeat=order * order):
        cells = tuple(
            tuple(CodeWord((flat[i * order + j],)) for j in range(order))
            for i in range(order))
        square = Square(cells, alphabet)
        if verify.check_magic(square) == line_sum:
            found.append(square)
    found.sort(key=lambda sq: sq.to_strings())
    return found
