"""Truncation units, residual norms, and approximate-identity selection.

The indicator of {1..k} is the canonical candidate approximate identity for
the ideal of functions vanishing at ∞.  The residual ||f - e_k f|| splits
exactly into three nonnegative pieces: the uniform norm of the truncated
tail, the weighted jump sum beyond k, and the boundary term
alpha_k * |f(k+1)|.  This module computes those residuals per tier, samples
them as diagnostic tables, and selects index subsequences whose residuals
provably vanish: either the indices on the weight arms attaining a finite
liminf (giving a norm-bounded selection), or the indices attaining their own
running tail infimum (which always exist once the weights diverge).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    DyadicDecay,
    Element,
    EventuallyConstant,
    NormResult,
    RuleBased,
    dyadic_jump_tail,
    DEFAULT_HORIZON,
    format_rational,
)
from .errors import HorizonExhausted, NotInMInfinityError
from .weights import Constant, WeightClassification, WeightFamily, eventual_form

_UNIT_WEIGHTS = Constant(Fraction(1))

DEFAULT_SELECTION_COUNT = 8
DEFAULT_SEARCH_BOUND = 1 << 40

KIND_BOUNDED_BAI = "bounded_bai"
KIND_RUNNING_MIN = "running_min"


@dataclass(frozen=True)
class AiSelection:
    """A selected subsequence of truncation indices with their exact norms.

    norms[i] = 1 + alpha_{indices[i]}.  For bounded_bai selections, liminf
    and slack record the threshold liminf + slack that every selected weight
    satisfies, so max(norms) <= 1 + liminf + slack holds exactly.
    """

    kind: str
    indices: tuple[int, ...]
    norms: tuple[Fraction, ...]
    liminf: Fraction | None = None
    slack: Fraction | None = None

    def to_obj(self) -> dict:
        obj: dict = {
            "kind": self.kind,
            "indices": list(self.indices),
            "norms": [format_rational(v) for v in self.norms],
        }
        if self.liminf is not None:
            obj["liminf"] = format_rational(self.liminf)
        if self.slack is not None:
            obj["slack"] = format_rational(self.slack)
        return obj


@dataclass(frozen=True)
class DiagnosticRow:
    """Residual and boundary quantities sampled at one truncation index."""

    index: int
    residual: NormResult
    alpha_next: Fraction  # alpha_{n_k} * |f(n_k + 1)|
    alpha_self: Fraction  # alpha_{n_k} * |f(n_k)|

    def to_obj(self) -> dict:
        return {
            "n_k": self.index,
            "residual": self.residual.to_obj(),
            "alpha_next": format_rational(self.alpha_next),
            "alpha_self": format_rational(self.alpha_self),
        }


def diagnostics_to_csv(rows: list[DiagnosticRow]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n_k", "residual_lo", "residual_hi", "alpha_next", "alpha_self"])
    for row in rows:
        writer.writerow(
            [
                row.index,
                format_rational(row.residual.lo),
                format_rational(row.residual.hi),
                format_rational(row.alpha_next),
                format_rational(row.alpha_self),
            ]
        )
    return out.getvalue()


def prefix_indicator(k: int) -> EventuallyConstant:
    """The indicator of {1, ..., k}: ones up to k, zero beyond and at ∞."""
    if k < 1:
        raise ValueError("index must be >= 1")
    return EventuallyConstant((Fraction(1),) * k, Fraction(0))


def _require_vanishes_at_infinity(f: Element) -> None:
    if f.limit_value() != 0:
        raise NotInMInfinityError("the element must vanish at infinity")


def residual_norm(
    f: Element, w: WeightFamily, k: int, horizon: int | None = None
) -> NormResult:
    """||f - e_k f|| split into its three exact pieces.

    Exact for the eventually-constant and dyadic tiers; a certified interval
    for rule-based elements.
    """
    if k < 1:
        raise ValueError("index must be >= 1")
    _require_vanishes_at_infinity(f)
    third = w.at(k) * abs(f.at(k + 1))

    if isinstance(f, EventuallyConstant):
        n = len(f.prefix)
        sup_term = max(
            (abs(f.at(j)) for j in range(k + 1, n + 1)), default=Fraction(0)
        )
        jumps = Fraction(0)
        for j in range(k + 1, n + 1):
            jumps += w.at(j) * abs(f.at(j + 1) - f.at(j))
        return NormResult.exact(sup_term + jumps + third)

    if isinstance(f, DyadicDecay):
        # values are nonincreasing, so the truncated tail's sup is f(k+1)
        return NormResult.exact(f.at(k + 1) + dyadic_jump_tail(w, k + 1) + third)

    if isinstance(f, RuleBased):
        h = DEFAULT_HORIZON if horizon is None else horizon
        sup_lo = max(abs(f.at(j)) for j in range(k + 1, k + h + 2))
        # the limit is 0 here, so the unweighted variation tail bounds the
        # remaining values outright
        sup_hi = max(sup_lo, f.tail_bound(k + h + 2, _UNIT_WEIGHTS))
        jumps_lo = Fraction(0)
        prev = f.at(k + 1)
        for j in range(k + 1, k + h + 2):
            nxt = f.at(j + 1)
            jumps_lo += w.at(j) * abs(nxt - prev)
            prev = nxt
        jumps_hi = jumps_lo + f.tail_bound(k + h + 2, w)
        return NormResult.bounds(sup_lo + jumps_lo + third, sup_hi + jumps_hi + third, h)

    raise TypeError(f"unknown element tier: {type(f).__name__}")


def residual_oracle(f: EventuallyConstant, w: WeightFamily, k: int) -> NormResult:
    """The same residual through the generic algebra path: ||f - e_k * f||.

    Independent of residual_norm's term-wise evaluation; the two must agree
    exactly on the exact tier.
    """
    if not isinstance(f, EventuallyConstant):
        raise NotInMInfinityError("the oracle path is defined on the exact tier")
    _require_vanishes_at_infinity(f)
    return (f - prefix_indicator(k) * f).norm(w)


def residual_diagnostics(
    f: Element, w: WeightFamily, indices: list[int], horizon: int | None = None
) -> list[DiagnosticRow]:
    """Sample the residual and the two boundary quantities at given indices."""
    _require_vanishes_at_infinity(f)
    rows = []
    for n in indices:
        rows.append(
            DiagnosticRow(
                index=n,
                residual=residual_norm(f, w, n, horizon),
                alpha_next=w.at(n) * abs(f.at(n + 1)),
                alpha_self=w.at(n) * abs(f.at(n)),
            )
        )
    return rows


def _next_running_min(w: WeightFamily, at_or_after: int) -> int:
    # indices strictly between at_or_after and the attaining index of the
    # tail infimum sit above their own tail infimum, so the attainer is the
    # next index equal to it
    t = w.tail_infimum(at_or_after)
    assert t.attained_at is not None
    return t.attained_at


def _next_attaining(w: WeightFamily, liminf: Fraction, at_or_after: int) -> int:
    """Next index on a constant arm whose value is the liminf (or an exact hit
    inside the explicit prefix region)."""
    ef = eventual_form(w)
    for j in range(at_or_after, ef.start):
        if w.at(j) == liminf:
            return j
    base = max(at_or_after, ef.start)
    candidates = [
        ef.first_in_class(r, base)
        for r, (a, b) in enumerate(ef.arms)
        if b == 0 and a == liminf
    ]
    return min(candidates)


def _next_within_slack(
    w: WeightFamily, threshold: Fraction, at_or_after: int
) -> int:
    ef = eventual_form(w)
    limit = max(at_or_after, ef.start) + 2 * ef.modulus + 1
    for j in range(at_or_after, limit + 1):
        if w.at(j) <= threshold:
            return j
    raise AssertionError("an attaining arm guarantees a hit within one modulus")


def select_ai_subsequence(
    w: WeightFamily, count: int, slack: Fraction | None = None
) -> AiSelection:
    """Select truncation indices forming an approximate identity for the
    ideal at ∞.

    Divergent weights: the indices attaining their own running tail infimum
    (kind running_min).  Finite liminf: a norm-bounded selection (kind
    bounded_bai) — by default the whole initial segment when the weights are
    bounded, otherwise the indices attaining the liminf; an explicit slack
    switches to the literal filter alpha_n <= liminf + slack.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    cls = w.classify()
    if cls.liminf is None:
        indices = _collect(lambda lo: _next_running_min(w, lo), count)
        return AiSelection(
            kind=KIND_RUNNING_MIN,
            indices=indices,
            norms=tuple(1 + w.at(n) for n in indices),
        )

    liminf = cls.liminf
    if slack is not None:
        slack = Fraction(slack)
        if slack < 0:
            raise ValueError("slack must be >= 0")
        threshold = liminf + slack
        indices = _collect(lambda lo: _next_within_slack(w, threshold, lo), count)
        used_slack = slack
    elif cls.sup is not None:
        # bounded weights: the whole sequence is already norm bounded
        indices = tuple(range(1, count + 1))
        used_slack = cls.sup - liminf
    else:
        indices = _collect(lambda lo: _next_attaining(w, liminf, lo), count)
        used_slack = Fraction(0)
    return AiSelection(
        kind=KIND_BOUNDED_BAI,
        indices=indices,
        norms=tuple(1 + w.at(n) for n in indices),
        liminf=liminf,
        slack=used_slack,
    )


def _collect(next_fn, count: int) -> tuple[int, ...]:
    out: list[int] = []
    lo = 1
    for _ in range(count):
        n = next_fn(lo)
        out.append(n)
        lo = n + 1
    return tuple(out)


def _next_selected(
    w: WeightFamily, cls: WeightClassification, at_or_after: int
) -> int:
    if cls.liminf is None:
        return _next_running_min(w, at_or_after)
    if cls.sup is not None:
        return at_or_after
    return _next_attaining(w, cls.liminf, at_or_after)


def ditkin_approximation(
    f: Element,
    w: WeightFamily,
    tol: Fraction,
    horizon: int | None = None,
    search_bound: int = DEFAULT_SEARCH_BOUND,
) -> tuple[int, NormResult]:
    """A truncation index k with certified residual ||f - e_k f|| <= tol.

    The factor e_k * f always lies in the product of the two ideals at ∞, so
    the pair (k, residual) witnesses the factor approximation.  On the exact
    tier the support index already gives f = e_k f and residual zero.  On the
    certified tiers, candidate indices are drawn from the selected
    subsequence at doubling thresholds until the residual's certified upper
    bound meets tol.
    """
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    _require_vanishes_at_infinity(f)

    if isinstance(f, EventuallyConstant):
        k = max(f.support, 1)
        return k, residual_norm(f, w, k, horizon)

    cls = w.classify()
    threshold = 1
    last = None
    while threshold <= search_bound:
        k = _next_selected(w, cls, threshold)
        if k != last:
            last = k
            res = residual_norm(f, w, k, horizon)
            if res.hi <= tol:
                return k, res
        threshold *= 2
    raise HorizonExhausted(
        f"no selected index up to {search_bound} certifies a residual <= {tol}"
    )
