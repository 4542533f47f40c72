"""Overpartition objects, constrained enumeration, and the splitting injections.

An overpartition is a partition in which the first occurrence of each
distinct part size may be overlined.  Canonical form stores parts in
non-increasing size order with the overlined copy (if any) ahead of the
non-overlined copies of the same size.

Restricted sets follow the convention forced by the splitting maps and the
counting identities they certify:

  * "no 1's" / "no 2's" forbids *non-overlined* parts of that size; an
    overlined 1 or 2 is still allowed.  (Removing one non-overlined 2 from
    any overpartition containing one is then a bijection onto weight n-2,
    which is exactly the decomposition the inductive arguments use.)
  * k-regular forbids parts divisible by k outright, overlined or not.

The maps f1 (with its even-k variant), f2 and f3 split an overpartition of
a+b into a pair of smaller overpartitions; exhaustive enumeration checks
injectivity and codomain membership, and explicit unattained codomain
elements witness strictness of the count inequalities.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional


class OverpartitionError(ValueError):
    """Raised when an input violates a map's precondition."""


class UnsupportedCaseError(OverpartitionError):
    """Raised for inputs whose handling the splitting rules leave open."""


Part = tuple[int, bool]  # (size, overlined)


def _canonical(parts) -> tuple[Part, ...]:
    return tuple(sorted(parts, key=lambda p: (-p[0], not p[1])))


@dataclass(frozen=True)
class Overpartition:
    """Canonical multiset of parts with per-size overline flags."""

    parts: tuple[Part, ...]

    def __post_init__(self):
        parts = _canonical((int(s), bool(o)) for s, o in self.parts)
        seen_over = set()
        for s, o in parts:
            if s < 1:
                raise OverpartitionError(f"part sizes must be positive, got {s}")
            if o:
                if s in seen_over:
                    raise OverpartitionError(f"size {s} overlined more than once")
                seen_over.add(s)
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(s for s, _ in self.parts)

    def count_plain(self, size: int) -> int:
        """Number of non-overlined copies of ``size``."""
        return sum(1 for s, o in self.parts if s == size and not o)

    def has_overlined(self, size: int) -> bool:
        return (size, True) in self.parts

    def remove(self, *removed: Part) -> "Overpartition":
        parts = list(self.parts)
        for p in removed:
            parts.remove(p)  # raises ValueError if absent
        return Overpartition(tuple(parts))

    def __str__(self) -> str:
        return (
            "("
            + ",".join(f"{s}~" if o else str(s) for s, o in self.parts)
            + ")"
        )


EMPTY = Overpartition(())


@dataclass(frozen=True)
class Constraint:
    """Membership restriction for an overpartition set."""

    k_regular: Optional[int] = None
    forbid_ones: bool = False
    forbid_twos: bool = False

    def __post_init__(self):
        if self.k_regular is not None and self.k_regular < 2:
            raise OverpartitionError(f"k must be >= 2, got {self.k_regular}")

    def allows_size(self, size: int) -> bool:
        return self.k_regular is None or size % self.k_regular != 0

    def allows_plain(self, size: int) -> bool:
        """Whether a non-overlined copy of ``size`` is permitted."""
        if not self.allows_size(size):
            return False
        if self.forbid_ones and size == 1:
            return False
        if self.forbid_twos and size == 2:
            return False
        return True

    def satisfied_by(self, op: Overpartition) -> bool:
        for s, o in op.parts:
            if not self.allows_size(s):
                return False
            if not o and not self.allows_plain(s):
                return False
        return True


@dataclass(frozen=True)
class SplitPair:
    left: Overpartition
    right: Overpartition


@lru_cache(maxsize=None)
def enumerate_overpartitions(
    n: int, constraint: Constraint = Constraint()
) -> tuple[Overpartition, ...]:
    """All overpartitions of n satisfying the constraint, canonically ordered."""
    if n < 0:
        raise OverpartitionError(f"n must be >= 0, got {n}")

    def gen(remaining: int, max_size: int) -> Iterator[tuple[Part, ...]]:
        if remaining == 0:
            yield ()
            return
        for s in range(min(remaining, max_size), 0, -1):
            if not constraint.allows_size(s):
                continue
            for mult in range(1, remaining // s + 1):
                for over in (True, False):
                    plain = mult - (1 if over else 0)
                    if over is False and plain == 0:
                        continue
                    if plain and not constraint.allows_plain(s):
                        continue
                    head = ((s, True),) * (1 if over else 0) + ((s, False),) * plain
                    for rest in gen(remaining - s * mult, s - 1):
                        yield head + rest

    ops = [Overpartition(p) for p in gen(n, n)]
    ops.sort(key=lambda op: op.parts)
    return tuple(ops)


def count_overpartitions(n: int, constraint: Constraint = Constraint()) -> int:
    """Count by brute-force partition enumeration, independent of the q-series.

    Walks all restricted partitions (no overlines) and multiplies the number
    of admissible overline choices per distinct size: 2 normally; if the
    non-overlined copies of a size are forbidden, only the single-overlined
    configuration survives.
    """
    if n < 0:
        raise OverpartitionError(f"n must be >= 0, got {n}")
    memo: dict[tuple[int, int], int] = {}

    def walk(remaining: int, max_size: int) -> int:
        if remaining == 0:
            return 1
        key = (remaining, max_size)
        if key in memo:
            return memo[key]
        total = 0
        for s in range(min(remaining, max_size), 0, -1):
            if not constraint.allows_size(s):
                continue
            plain_ok = constraint.allows_plain(s)
            for mult in range(1, remaining // s + 1):
                if plain_ok:
                    choices = 2
                elif mult == 1:
                    choices = 1  # single overlined copy only
                else:
                    break
                total += choices * walk(remaining - s * mult, s - 1)
        memo[key] = total
        return total

    return walk(n, n)


def _split_trailing_ones(op: Overpartition):
    """Decompose parts as (rest of size >= 2, overlined-1 flag r, plain-1 count s)."""
    rest = [p for p in op.parts if p[0] > 1]
    r = 1 if op.has_overlined(1) else 0
    s = op.count_plain(1)
    return rest, r, s


def _ones(count: int) -> list[Part]:
    return [(1, False)] * count


def f2_map(op: Overpartition, k: int) -> SplitPair:
    """Split an overpartition of a+1 with no plain 2's into (weight a, weight 1)."""
    c = Constraint(k_regular=k, forbid_twos=True)
    if not c.satisfied_by(op):
        raise OverpartitionError(f"{op} is not {k}-regular with no 2's")
    if op.weight < 1:
        raise OverpartitionError("domain requires positive weight")
    rest, r, s = _split_trailing_ones(op)
    if s >= 1:
        left = op.remove((1, False))
        right = Overpartition(((1, False),))
    elif r == 0:
        size, over = rest[-1]
        head = rest[:-1]
        if over:
            left = Overpartition(tuple(head) + ((1, True),) + tuple(_ones(size - 2)))
        else:
            left = Overpartition(tuple(head) + tuple(_ones(size - 1)))
        right = Overpartition(((1, True),))
    else:  # s == 0, r == 1: drop the overlined 1
        left = Overpartition(tuple(rest))
        right = Overpartition(((1, True),))
    return SplitPair(left, right)


def f3_map(op: Overpartition, k: int) -> SplitPair:
    """Split an overpartition of a+2 with no plain 2's into (weight a, weight 2)."""
    c = Constraint(k_regular=k, forbid_twos=True)
    if not c.satisfied_by(op):
        raise OverpartitionError(f"{op} is not {k}-regular with no 2's")
    if op.weight < 2:
        raise OverpartitionError("domain requires weight >= 2")
    rest, r, s = _split_trailing_ones(op)
    two = Overpartition(((2, False),))
    two_over = Overpartition(((2, True),))
    one_one = Overpartition(((1, False), (1, False)))
    over1_one = Overpartition(((1, True), (1, False)))

    if s >= 2:
        return SplitPair(op.remove((1, False), (1, False)), two)
    if s == 1 and r == 1:
        return SplitPair(Overpartition(tuple(rest)), two_over)

    size, over = rest[-1]
    head = tuple(rest[:-1])
    if s == 1 and r == 0:
        left_tail = (
            ((1, True),) + tuple(_ones(size - 2)) if over else tuple(_ones(size - 1))
        )
        # the lone plain 1 is also consumed
        return SplitPair(Overpartition(head + left_tail), one_one)
    if s == 0 and r == 0:
        if (size, over) == (2, True):
            return SplitPair(Overpartition(head), one_one)
        if over:
            return SplitPair(
                Overpartition(head + ((1, True),) + tuple(_ones(size - 3))), over1_one
            )
        return SplitPair(Overpartition(head + tuple(_ones(size - 2))), over1_one)
    # s == 0, r == 1
    if over:
        return SplitPair(
            Overpartition(head + ((1, True),) + tuple(_ones(size - 2))), two_over
        )
    return SplitPair(Overpartition(head + tuple(_ones(size - 1))), two_over)


def f1_map(op: Overpartition, k: int, a: int, b: int) -> SplitPair:
    """Split an overpartition of a+b with no plain 1's or 2's into
    (weight a, no plain 1's) x (weight b, no plain 2's).

    Implemented for k >= 5; the construction is case analysis on the
    residue of the slack y at the split index.  For k in {2,3,4} the rules
    are not spelled out and verification falls back to cardinality
    comparison (see :func:`verify_lemma`).
    """
    if k in (2, 3, 4):
        raise UnsupportedCaseError(f"split rules unavailable for k={k}")
    if a < 1 or b < 1:
        raise OverpartitionError("need a, b >= 1")
    c = Constraint(k_regular=k, forbid_ones=True, forbid_twos=True)
    if not c.satisfied_by(op):
        raise OverpartitionError(f"{op} is not {k}-regular with no 1's and no 2's")
    if op.weight != a + b:
        raise OverpartitionError(f"weight {op.weight} != a+b = {a + b}")

    ps = list(op.parts)
    t = len(ps)
    # i = max{j : lambda_j + ... + lambda_t >= b}  (1-based)
    tail = 0
    i = 1
    for j in range(t, 0, -1):
        tail += ps[j - 1][0]
        if tail >= b:
            i = j
            break
    tail_after = sum(s for s, _ in ps[i:])
    x = b - tail_after
    size_i, over_i = ps[i - 1]
    y = size_i - x
    assert x >= 1 and 0 <= y < size_i

    even = k % 2 == 0
    m = k // 2  # k = 2m (even) or 2m+1 (odd)

    prefix = tuple(ps[: i - 1])
    suffix = tuple(ps[i:])
    right_x = Overpartition(suffix + tuple(_ones(x)))

    def left(*extra: Part) -> Overpartition:
        return Overpartition(prefix + tuple(extra))

    def left_repl(*extra: Part) -> Overpartition:
        # drop lambda_{i-1} as well; used by the y=1 plain-lambda_i cases
        return Overpartition(tuple(ps[: i - 2]) + tuple(extra))

    # even-k overrides
    if even and y == k:
        if over_i:
            return SplitPair(left((m, True), (m, False)), right_x)
        return SplitPair(left((m, False), (m, False)), right_x)
    if (
        even
        and y == 1
        and not over_i
        and i >= 2
        and ps[i - 2][0] >= k + 2
    ):
        s1, o1 = ps[i - 2]
        extra = ((s1 - k, o1),) + tuple([(2, False)] * m) + ((1, True),)
        return SplitPair(left_repl(*extra), right_x)

    if y == 0:
        return SplitPair(
            Overpartition(prefix), Overpartition(((size_i, over_i),) + suffix)
        )

    if y == 1:
        if over_i:
            return SplitPair(left((1, True)), right_x)
        if i < 2:
            raise UnsupportedCaseError(
                "y=1 with a plain leading part has no stated rule"
            )
        s1, o1 = ps[i - 2]
        if s1 >= k + 2:
            extra = ((s1 - k, o1),) + tuple([(2, False)] * (m + 1))
        elif s1 % 2 == 1:  # s1 = 2c+1 in [3, k+1]
            cc = (s1 - 1) // 2
            if o1:
                extra = ((2, True),) + tuple([(2, False)] * cc)
            else:
                extra = tuple([(2, False)] * (cc + 1))
        else:  # s1 = 2c in [4, k+1]
            cc = s1 // 2
            if o1:
                extra = ((2, True),) + tuple([(2, False)] * (cc - 1)) + ((1, True),)
            else:
                extra = tuple([(2, False)] * cc) + ((1, True),)
        return SplitPair(left_repl(*extra), right_x)

    if y == k:  # odd k here; even k handled above
        if size_i >= k + 2:
            return SplitPair(left((m + 1, over_i), (m, False)), right_x)
        # size_i == k+1 forces x == 1
        assert x == 1, "split slack must be 1 when the split part is k+1"
        right_one = Overpartition(suffix + ((1, False),))
        if over_i:
            extra = ((2, True),) + tuple([(2, False)] * (m - 1)) + ((1, True),)
        else:
            extra = tuple([(2, False)] * m) + ((1, True),)
        return SplitPair(left(*extra), right_one)

    if y % k == 0:  # y >= 2k
        j = size_i % k
        if j <= k - 2:
            return SplitPair(left((y - (k - j), over_i), (k - j, False)), right_x)
        return SplitPair(left((y - 1, over_i), (1, True)), right_x)

    # y ≡ 1 (mod k) with y >= k+1, or residue in 2..k-1 with y >= 2:
    # move the slack into the left as a single part, keeping the overline
    return SplitPair(left((y, over_i)), right_x)


@dataclass
class VerificationReport:
    """Outcome of an exhaustive lemma check at one (k, a, b) grid point."""

    lemma: str
    k: int
    a: int
    b: int
    lhs: int
    rhs: int
    strict: bool
    holds: bool
    injective: Optional[bool] = None
    codomain_ok: Optional[bool] = None
    unattained_witness: Optional[str] = None
    mode: str = "map"
    unsupported: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "k": self.k,
            "a": self.a,
            "b": self.b,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "strict": self.strict,
            "holds": self.holds,
            "injective": self.injective,
            "codomain_ok": self.codomain_ok,
            "unattained_witness": self.unattained_witness,
            "mode": self.mode,
            "unsupported": self.unsupported,
            "notes": self.notes,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_images(
    report: VerificationReport,
    pairs: list[tuple[Overpartition, SplitPair]],
    left_constraint: Constraint,
    right_constraint: Constraint,
    a: int,
    b: int,
) -> None:
    seen = {}
    injective = True
    codomain_ok = True
    for src, pair in pairs:
        if pair.left.weight != a or pair.right.weight != b:
            report.notes.append(f"weight violation at {src}")
            codomain_ok = False
        elif not left_constraint.satisfied_by(pair.left) or not (
            right_constraint.satisfied_by(pair.right)
        ):
            # distinctness of images is still meaningful even when an image
            # falls outside the stated codomain (happens for k=2, where the
            # split-off part 2 is itself divisible by k)
            report.notes.append(f"codomain violation at {src}")
            codomain_ok = False
        key = (pair.left.parts, pair.right.parts)
        if key in seen:
            report.notes.append(f"collision: {seen[key]} and {src}")
            injective = False
        seen[key] = src
    report.injective = injective
    report.codomain_ok = codomain_ok


def _f2_witness(k: int, a: int, images: set) -> Optional[str]:
    """An element (mu; 1~) with mu containing exactly one plain 1 below a
    larger part: never attained by f2."""
    right = Overpartition(((1, True),))
    for mu in enumerate_overpartitions(a, Constraint(k_regular=k, forbid_twos=True)):
        if mu.count_plain(1) == 1 and not mu.has_overlined(1) and any(
            s > 1 for s, _ in mu.parts
        ):
            if (mu.parts, right.parts) in images:
                return None  # would contradict the construction; caller flags
            return f"({mu}; {right})"
    return None


def _f3_witness(k: int, a: int, images: set) -> Optional[str]:
    """An element (mu; 1~,1) with mu free of size-1 parts: never attained by f3."""
    right = Overpartition(((1, True), (1, False)))
    for mu in enumerate_overpartitions(a, Constraint(k_regular=k, forbid_twos=True)):
        if all(s > 1 for s, _ in mu.parts):
            if (mu.parts, right.parts) in images:
                return None
            return f"({mu}; {right})"
    return None


def verify_lemma(
    lemma_id: str, k: int, a: int, b: Optional[int] = None
) -> VerificationReport:
    """Exhaustively verify one splitting lemma instance.

    lemma_id is one of "2.1", "2.2", "2.3", "2.4".  For "2.2"/"2.3" the
    right weight is fixed (1 resp. 2) and ``b`` may be omitted.
    """
    if k < 2:
        raise OverpartitionError(f"k must be >= 2, got {k}")
    if a < 1:
        raise OverpartitionError(f"a must be >= 1, got {a}")
    no2 = Constraint(k_regular=k, forbid_twos=True)
    no1 = Constraint(k_regular=k, forbid_ones=True)
    no12 = Constraint(k_regular=k, forbid_ones=True, forbid_twos=True)
    free = Constraint(k_regular=k)

    if lemma_id == "2.2":
        b = 1 if b is None else b
        if b != 1:
            raise OverpartitionError("lemma 2.2 fixes b = 1")
        lhs = count_overpartitions(a, no2) * count_overpartitions(1, free)
        rhs = count_overpartitions(a + 1, no2)
        report = VerificationReport("2.2", k, a, 1, lhs, rhs, True, lhs > rhs)
        domain = enumerate_overpartitions(a + 1, no2)
        pairs = [(op, f2_map(op, k)) for op in domain]
        _check_images(report, pairs, no2, free, a, 1)
        images = {(p.left.parts, p.right.parts) for _, p in pairs}
        report.unattained_witness = _f2_witness(k, a, images)
        return report

    if lemma_id == "2.3":
        b = 2 if b is None else b
        if b != 2:
            raise OverpartitionError("lemma 2.3 fixes b = 2")
        lhs = count_overpartitions(a, no2) * count_overpartitions(2, free)
        rhs = count_overpartitions(a + 2, no2)
        report = VerificationReport("2.3", k, a, 2, lhs, rhs, True, lhs > rhs)
        domain = enumerate_overpartitions(a + 2, no2)
        pairs = [(op, f3_map(op, k)) for op in domain]
        _check_images(report, pairs, no2, free, a, 2)
        images = {(p.left.parts, p.right.parts) for _, p in pairs}
        report.unattained_witness = _f3_witness(k, a, images)
        return report

    if b is None:
        raise OverpartitionError(f"lemma {lemma_id} needs explicit b")
    if b < 1:
        raise OverpartitionError(f"b must be >= 1, got {b}")

    if lemma_id == "2.1":
        lhs = count_overpartitions(a, no1) * count_overpartitions(b, no2)
        rhs = count_overpartitions(a + b, no12)
        report = VerificationReport("2.1", k, a, b, lhs, rhs, False, lhs >= rhs)
        if k in (2, 3, 4):
            report.mode = "cardinality"
            return report
        domain = enumerate_overpartitions(a + b, no12)
        pairs = []
        for op in domain:
            try:
                pairs.append((op, f1_map(op, k, a, b)))
            except UnsupportedCaseError:
                report.unsupported += 1
        _check_images(report, pairs, no1, no2, a, b)
        if report.unsupported:
            report.mode = "map+cardinality"
        return report

    if lemma_id == "2.4":
        if b < 3 or a + b < k + 1:
            raise OverpartitionError("lemma 2.4 needs b >= 3 and a+b >= k+1")
        lhs = count_overpartitions(a, no2) * count_overpartitions(b, free)
        rhs = count_overpartitions(a + b, no2)
        return VerificationReport(
            "2.4", k, a, b, lhs, rhs, True, lhs > rhs, mode="cardinality"
        )

    raise OverpartitionError(f"unknown lemma id {lemma_id!r}")
