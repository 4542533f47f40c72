"""Exact inequality verification and interval Q-ratio bounds.

Log-subadditivity, log-concavity, and the third-order Turan inequality are
decided by exact big-integer comparisons; the two-sided bounds on the
ratio Q_k(n) = p(n-1) p(n+1) / p(n)^2 are evaluated as printed polynomials
in 1/mu_k with outward-rounded intervals; the sufficiency criterion
connecting consecutive Q values to the Turan inequality is decided with
exact rational arithmetic (the square-root comparison is resolved by
squaring).  A threshold scanner reports observed minimal thresholds next
to the published ones rather than assuming the published values are tight.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .numerics import (
    Interval,
    PrecisionExhausted,
    default_precision,
    mu,
    pi,
)
from .qseries import pk, warm_cache


class InequalityError(ValueError):
    """Raised on contract violations in inequality checks."""


MAX_PRECISION = 384

PROPERTIES = ("logconcave", "turan3", "subadd")

# published validity thresholds for log-concavity and third-order Turan
LOGCONCAVE_THRESHOLDS = {2: 21, 3: 4, 4: 5, 5: 6, 6: 1, 7: 1, 8: 1, 9: 1}
TURAN3_THRESHOLDS = {2: 65, 3: 23, 4: 28, 5: 26, 6: 11, 7: 22, 8: 23, 9: 10}

# published validity thresholds (in n) for the Q-ratio bound rows
QBOUND_THRESHOLDS = {
    2: 5652,
    3: 365,
    4: 455,
    5: 1120,
    6: 2055,
    7: 1230,
    8: 10422,
    9: 8187,
}

# Q-bound rows: both bounds share 1 - A pi^4/mu^3 + B pi^4/mu^4; the lower
# bound subtracts c5/mu^5 + c6/mu^6, the upper subtracts d5/mu^5 and adds
# (d6 + e pi^8)/mu^6.  Entries: (A, B, c5, c6, d5, d6, e).
_QB_TABLE: dict[int, tuple[Fraction, Fraction, int, int, int, int, Fraction]] = {
    2: (Fraction(1, 16), Fraction(3, 16), 7, 130, 6, 120, Fraction(1, 256)),
    3: (Fraction(1, 9), Fraction(1, 3), 13, 200, 6, 146, Fraction(1, 81)),
    4: (Fraction(9, 64), Fraction(27, 64), 16, 300, 15, 150, Fraction(81, 4096)),
    5: (Fraction(4, 25), Fraction(12, 25), 18, 400, 17, 400, Fraction(0)),
    6: (Fraction(25, 144), Fraction(25, 48), 20, 441, 19, 441, Fraction(0)),
    7: (Fraction(9, 49), Fraction(27, 49), 21, 500, 20, 500, Fraction(0)),
    8: (Fraction(49, 256), Fraction(147, 256), 21, 505, 20, 505, Fraction(0)),
    9: (Fraction(16, 81), Fraction(16, 27), 22, 524, 21, 529, Fraction(0)),
}


def check_subadditivity(k: int, a: int, b: int) -> bool:
    """Exact strict log-subadditivity p(a) p(b) > p(a+b)."""
    if k < 2:
        raise InequalityError(f"k must be >= 2, got {k}")
    if not (a >= b >= 1):
        raise InequalityError(f"need a >= b >= 1, got a={a}, b={b}")
    if a + b < k:
        raise InequalityError(f"need a + b >= k, got {a}+{b} < {k}")
    return pk(k, a) * pk(k, b) > pk(k, a + b)


@dataclass(frozen=True)
class QRatio:
    """Exact ratio p(n-1) p(n+1) / p(n)^2."""

    k: int
    n: int
    value: Fraction


def q_ratio(k: int, n: int) -> QRatio:
    if n < 1:
        raise InequalityError(f"n must be >= 1, got {n}")
    value = Fraction(pk(k, n - 1) * pk(k, n + 1), pk(k, n) ** 2)
    return QRatio(k, n, value)


def check_logconcave(k: int, n: int, strict: bool = True) -> bool:
    """Exact log-concavity p(n)^2 > p(n-1) p(n+1) (or >= when strict=False).

    Strict is the default; exact equality occurs at a handful of small n
    (e.g. 24^2 = 16 * 36 at k=3, n=6), where only the weak form holds.
    """
    if n < 1:
        raise InequalityError(f"n must be >= 1, got {n}")
    lhs = pk(k, n) ** 2
    rhs = pk(k, n - 1) * pk(k, n + 1)
    return lhs > rhs if strict else lhs >= rhs


def logconcave_equality(k: int, n: int) -> bool:
    """True iff p(n)^2 equals p(n-1) p(n+1) exactly."""
    if n < 1:
        raise InequalityError(f"n must be >= 1, got {n}")
    return pk(k, n) ** 2 == pk(k, n - 1) * pk(k, n + 1)


def check_turan3(k: int, n: int) -> bool:
    """Exact strict third-order Turan inequality at index n."""
    if n < 1:
        raise InequalityError(f"n must be >= 1, got {n}")
    a0, a1, a2, a3 = (pk(k, n - 1), pk(k, n), pk(k, n + 1), pk(k, n + 2))
    return 4 * (a1 * a1 - a0 * a2) * (a2 * a2 - a1 * a3) > (a1 * a2 - a0 * a3) ** 2


def q_bounds(
    k: int, n: int, precision: Optional[int] = None
) -> tuple[Interval, Interval]:
    """Enclosures of the printed lower/upper polynomials bounding Q_k(n)."""
    if k not in _QB_TABLE:
        raise InequalityError(f"Q bounds available for k in 2..9, got {k}")
    threshold = QBOUND_THRESHOLDS[k]
    if n < threshold:
        raise InequalityError(
            f"Q bounds for k={k} require n >= {threshold}, got {n}"
        )
    precision = default_precision() if precision is None else precision
    A, B, c5, c6, d5, d6, e = _QB_TABLE[k]
    m = mu(k, n, precision).value
    p4 = pi(precision).pow_int(4)
    inv3 = 1 / m.pow_int(3)
    inv4 = 1 / m.pow_int(4)
    inv5 = 1 / m.pow_int(5)
    inv6 = 1 / m.pow_int(6)
    shared = 1 - p4 * A * inv3 + p4 * B * inv4
    lower = shared - c5 * inv5 - c6 * inv6
    upper = shared - d5 * inv5 + (d6 + e * pi(precision).pow_int(8)) * inv6
    return lower, upper


def verify_q_containment(k: int, n: int, precision: Optional[int] = None) -> bool:
    """Definitely L(n) < Q_k(n) < R(n), escalating precision as needed."""
    q = q_ratio(k, n).value
    precision = default_precision() if precision is None else precision
    while True:
        lower, upper = q_bounds(k, n, precision)
        if q <= lower.lo or upper.hi <= q:
            return False
        if lower.hi < q < upper.lo:
            return True
        if precision >= MAX_PRECISION:
            raise PrecisionExhausted(
                f"Q containment for k={k}, n={n} inconclusive at {precision} bits"
            )
        precision = min(2 * precision, MAX_PRECISION)


def jia_criterion(u: Fraction, v: Fraction) -> bool:
    """Sufficiency criterion: 15/16 <= u < v < 1 and u + sqrt((1-u)^3) > v.

    Decided exactly: with v > u both sides of the square-root comparison
    are positive, so it reduces to (v - u)^2 < (1 - u)^3.
    """
    u, v = Fraction(u), Fraction(v)
    if not (0 < u < 1 and 0 < v < 1):
        return False
    if not (Fraction(15, 16) <= u < v):
        return False
    return (v - u) ** 2 < (1 - u) ** 3


@dataclass(frozen=True)
class ThresholdReport:
    """Observed versus published validity threshold for one (k, property)."""

    k: int
    property: str
    paper_threshold: int
    observed_min_threshold: int
    horizon: int
    exceptions_below: tuple = ()
    equalities: tuple = ()

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "property": self.property,
            "paper_threshold": self.paper_threshold,
            "observed_min_threshold": self.observed_min_threshold,
            "horizon": self.horizon,
            "exceptions_below": list(self.exceptions_below),
            "equalities": list(self.equalities),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def scan_thresholds(k: int, property: str, horizon: int) -> ThresholdReport:
    """Minimal n0 <= horizon with the property holding on [n0, horizon].

    All failures below n0 are listed.  For log-concavity the scan uses the
    weak form (>=) for failures and lists the exact-equality points
    separately, since equality genuinely occurs at a few small n.  For
    "subadd" the scan runs over all pairs a >= b >= 1 with
    k <= a+b <= horizon; exceptions are (a, b) pairs and n0 is the
    smallest total beyond which no pair fails.
    """
    if property not in PROPERTIES:
        raise InequalityError(f"property must be one of {PROPERTIES}")
    if property == "subadd":
        if horizon < k:
            raise InequalityError(f"horizon {horizon} below minimal total {k}")
        warm_cache(k, horizon)
        exceptions = []
        for total in range(k, horizon + 1):
            for b in range(1, total // 2 + 1):
                a = total - b
                if not check_subadditivity(k, a, b):
                    exceptions.append((a, b))
        observed = max((a + b for a, b in exceptions), default=k - 1) + 1
        return ThresholdReport(
            k, property, k, observed, horizon, tuple(exceptions)
        )

    paper = (
        LOGCONCAVE_THRESHOLDS[k] if property == "logconcave" else TURAN3_THRESHOLDS[k]
    )
    if horizon < paper:
        raise InequalityError(
            f"horizon {horizon} below published threshold {paper} for k={k}"
        )
    warm_cache(k, horizon + 2)
    equalities: tuple = ()
    if property == "logconcave":
        failures = [
            n for n in range(1, horizon + 1) if not check_logconcave(k, n, strict=False)
        ]
        equalities = tuple(
            n for n in range(1, horizon + 1) if logconcave_equality(k, n)
        )
    else:
        failures = [n for n in range(1, horizon + 1) if not check_turan3(k, n)]
    observed = (failures[-1] + 1) if failures else 1
    return ThresholdReport(
        k, property, paper, observed, horizon, tuple(failures), equalities
    )
