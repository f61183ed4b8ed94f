"""Functions on the one-point compactification of the naturals, with norms.

An element is a continuous function on N ∪ {∞} represented in one of three
tiers: eventually constant (the exact tier, closed under pointwise algebra),
the built-in dyadic staircase (exact norms via geometric closed forms), or
rule-based (exact pointwise values plus certified tail bounds, yielding
rational interval results).  The norm is the uniform norm plus the weighted
sum of consecutive differences; every result is an exact rational or a
certified rational interval, never a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import (
    DivergentVariationError,
    MissingTailBound,
    SchemaError,
    UndecidableMembership,
    UnsupportedOperandKind,
)
from .weights import (
    Constant,
    WeightFamily,
    eventual_form,
    format_rational,
    parse_rational,
)

DEFAULT_HORIZON = 1 << 16


class _Infinity:
    """The added point of the compactification; a singleton sentinel."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


def parse_point(obj: object, path: str = "point") -> int | _Infinity:
    """A point of N ∪ {∞} from JSON: a positive integer or the string "inf"."""
    if isinstance(obj, bool):
        raise SchemaError(f"{path}: expected a natural number or \"inf\"")
    if isinstance(obj, int):
        if obj < 1:
            raise SchemaError(f"{path}: naturals start at 1, got {obj}")
        return obj
    if isinstance(obj, str) and obj.strip().lower() in {"inf", "infinity", "∞"}:
        return INFINITY
    raise SchemaError(f"{path}: expected a natural number or \"inf\", got {obj!r}")


def format_point(p: int | _Infinity) -> object:
    return "inf" if p is INFINITY else p


@dataclass(frozen=True)
class NormResult:
    """An exact rational norm value, or a certified interval [lo, hi].

    Exact results behave as the degenerate interval [v, v]; intervals record
    the scan horizon that produced them.
    """

    lo: Fraction
    hi: Fraction
    horizon: int | None = None

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def exact(cls, value) -> "NormResult":
        v = Fraction(value)
        return cls(v, v, None)

    @classmethod
    def bounds(cls, lo, hi, horizon: int) -> "NormResult":
        return cls(Fraction(lo), Fraction(hi), horizon)

    @property
    def is_exact(self) -> bool:
        return self.horizon is None and self.lo == self.hi

    @property
    def value(self) -> Fraction:
        if not self.is_exact:
            raise ValueError("not an exact result")
        return self.lo

    def __add__(self, other: "NormResult") -> "NormResult":
        if self.is_exact and other.is_exact:
            return NormResult.exact(self.lo + other.lo)
        horizons = [h for h in (self.horizon, other.horizon) if h is not None]
        return NormResult(self.lo + other.lo, self.hi + other.hi, max(horizons))

    def scaled(self, c) -> "NormResult":
        m = abs(Fraction(c))
        return NormResult(self.lo * m, self.hi * m, self.horizon)

    def to_obj(self) -> dict:
        if self.is_exact:
            return {"exact": format_rational(self.lo)}
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "horizon": self.horizon,
        }


def norm_result_from_obj(obj: object, path: str = "norm") -> NormResult:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    if "exact" in obj:
        return NormResult.exact(parse_rational(obj["exact"], f"{path}.exact"))
    try:
        return NormResult.bounds(
            parse_rational(obj["lo"], f"{path}.lo"),
            parse_rational(obj["hi"], f"{path}.hi"),
            int(obj["horizon"]),
        )
    except KeyError as exc:
        raise SchemaError(f"{path}: interval needs lo, hi, horizon") from exc


@dataclass(frozen=True)
class ClosedSet:
    """A representable closed subset of N ∪ {∞}.

    Every point of N is isolated, so the closed sets we can name are finite
    subsets of N, optionally together with ∞.
    """

    points: tuple[int, ...] = ()
    with_infinity: bool = False

    def __post_init__(self):
        pts = tuple(sorted(set(int(p) for p in self.points)))
        if any(p < 1 for p in pts):
            raise ValueError("closed-set points must be naturals >= 1")
        object.__setattr__(self, "points", pts)

    def contains(self, p) -> bool:
        if p is INFINITY:
            return self.with_infinity
        return p in self.points

    @property
    def max_finite(self) -> int:
        """Largest finite point, or 0 when there is none."""
        return self.points[-1] if self.points else 0

    def to_obj(self) -> dict:
        return {"points": list(self.points), "with_infinity": self.with_infinity}


def closed_set_from_obj(obj: object, path: str = "excluded") -> ClosedSet:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object")
    pts = obj.get("points", [])
    if not isinstance(pts, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in pts):
        raise SchemaError(f"{path}.points: expected a list of naturals")
    try:
        return ClosedSet(tuple(pts), bool(obj.get("with_infinity", False)))
    except ValueError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class IdealSpec:
    """One of the vanishing ideals attached to a closed set.

    neighbourhood=False is the ideal of functions vanishing on the set;
    neighbourhood=True asks for vanishing on a neighbourhood of it.  At
    isolated points the two coincide; at ∞ a neighbourhood is cofinite, so
    the neighbourhood ideal consists of the eventually-zero functions.
    """

    zero_set: ClosedSet
    neighbourhood: bool

    @classmethod
    def m_at(cls, point) -> "IdealSpec":
        return cls(_singleton(point), neighbourhood=False)

    @classmethod
    def j_at(cls, point) -> "IdealSpec":
        return cls(_singleton(point), neighbourhood=True)

    @classmethod
    def i_of(cls, zero_set: ClosedSet) -> "IdealSpec":
        return cls(zero_set, neighbourhood=False)

    @classmethod
    def j_of(cls, zero_set: ClosedSet) -> "IdealSpec":
        return cls(zero_set, neighbourhood=True)


def _singleton(point) -> ClosedSet:
    if point is INFINITY:
        return ClosedSet((), with_infinity=True)
    return ClosedSet((int(point),), with_infinity=False)


class Element:
    """A continuous function on N ∪ {∞}; see the concrete tiers below."""

    def at(self, p) -> Fraction:
        raise NotImplementedError

    def limit_value(self) -> Fraction:
        return self.at(INFINITY)

    def scale(self, c) -> "Element":
        raise NotImplementedError

    def sup_norm(self, horizon: int | None = None) -> NormResult:
        raise NotImplementedError

    def weighted_variation(self, w: WeightFamily, horizon: int | None = None) -> NormResult:
        raise NotImplementedError

    def norm(self, w: WeightFamily, horizon: int | None = None) -> NormResult:
        return self.sup_norm(horizon) + self.weighted_variation(w, horizon)

    def in_ideal(self, spec: IdealSpec) -> bool:
        raise UndecidableMembership(
            "membership is only decidable for eventually-constant and dyadic elements"
        )

    def _binary(self, other, op) -> "EventuallyConstant":
        if not (isinstance(self, EventuallyConstant) and isinstance(other, EventuallyConstant)):
            raise UnsupportedOperandKind(
                "pointwise arithmetic is closed only on eventually-constant elements"
            )
        n = max(len(self.prefix), len(other.prefix))
        values = [op(self.at(j), other.at(j)) for j in range(1, n + 1)]
        return EventuallyConstant(tuple(values), op(self.tail, other.tail))

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __mul__(self, other):
        if isinstance(other, Element):
            return self._binary(other, lambda x, y: x * y)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)


@dataclass(frozen=True)
class EventuallyConstant(Element):
    """f(n) = prefix[n-1] up to the prefix length, then a constant tail.

    The canonical form trims trailing prefix entries equal to the tail, so
    structural equality coincides with pointwise equality.
    """

    prefix: tuple[Fraction, ...] = ()
    tail: Fraction = Fraction(0)

    def __post_init__(self):
        pre = tuple(Fraction(v) for v in self.prefix)
        t = Fraction(self.tail)
        while pre and pre[-1] == t:
            pre = pre[:-1]
        object.__setattr__(self, "prefix", pre)
        object.__setattr__(self, "tail", t)

    def at(self, p) -> Fraction:
        if p is INFINITY:
            return self.tail
        n = int(p)
        if n < 1:
            raise ValueError("points of N start at 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.tail

    @property
    def is_eventually_zero(self) -> bool:
        return self.tail == 0

    @property
    def support(self) -> int:
        """Largest n with f(n) != 0 (0 for the zero element); needs tail 0."""
        if self.tail != 0:
            raise ValueError("support is only defined for eventually-zero elements")
        return len(self.prefix)

    def scale(self, c) -> "EventuallyConstant":
        c = Fraction(c)
        return EventuallyConstant(tuple(c * v for v in self.prefix), c * self.tail)

    def sup_norm(self, horizon: int | None = None) -> NormResult:
        best = abs(self.tail)
        for v in self.prefix:
            best = max(best, abs(v))
        return NormResult.exact(best)

    def weighted_variation(self, w: WeightFamily, horizon: int | None = None) -> NormResult:
        # all jumps sit inside the prefix; the difference at n = len(prefix)
        # steps onto the tail value
        total = Fraction(0)
        for n in range(1, len(self.prefix) + 1):
            total += w.at(n) * abs(self.at(n + 1) - self.at(n))
        return NormResult.exact(total)

    def in_ideal(self, spec: IdealSpec) -> bool:
        for p in spec.zero_set.points:
            if self.at(p) != 0:
                return False
        if spec.zero_set.with_infinity and self.tail != 0:
            return False
        # a neighbourhood of ∞ is cofinite, so the J-condition there asks for
        # an eventually-zero function, which for this tier is again tail == 0
        return True


ZERO = EventuallyConstant((), Fraction(0))
ONE = EventuallyConstant((), Fraction(1))


@dataclass(frozen=True)
class DyadicDecay(Element):
    """The staircase f(j) = 2^{-k} on the block 2^{k-1} <= j < 2^k, f(∞) = 0.

    Its jumps sit exactly at the block edges j = 2^k - 1, which makes every
    weighted-variation quantity a finite combination of geometric series.
    """

    def at(self, p) -> Fraction:
        if p is INFINITY:
            return Fraction(0)
        n = int(p)
        if n < 1:
            raise ValueError("points of N start at 1")
        return Fraction(1, 1 << n.bit_length())

    def scale(self, c) -> Element:
        c = Fraction(c)
        if c == 0:
            return ZERO
        if c == 1:
            return self
        base = self
        return RuleBased(
            value_at=lambda n: c * base.at(n),
            limit=Fraction(0),
            tail_variation_bound=lambda start, w: abs(c) * dyadic_jump_tail(w, start),
        )

    def sup_norm(self, horizon: int | None = None) -> NormResult:
        # block values halve, so the first block value f(1) = 1/2 is the sup
        return NormResult.exact(Fraction(1, 2))

    def weighted_variation(self, w: WeightFamily, horizon: int | None = None) -> NormResult:
        return NormResult.exact(dyadic_jump_tail(w, 1))

    def in_ideal(self, spec: IdealSpec) -> bool:
        if spec.zero_set.points:
            return False  # strictly positive on all of N
        if spec.zero_set.with_infinity and spec.neighbourhood:
            return False  # vanishes at ∞ but is never eventually zero
        return True


def dyadic_jump_tail(w: WeightFamily, start: int) -> Fraction:
    """Exact sum of alpha_j * |Δf(j)| over the dyadic jumps j = 2^k - 1 >= start.

    Each jump contributes alpha_{2^k-1} * 2^{-(k+1)}.  Beyond the weight
    family's eventual form, the residue of 2^k - 1 evolves by r -> 2r + 1
    (mod M), so the weights met by the jumps are eventually periodic: the sum
    is a finite part plus a geometric series, both exact.  Raises
    DivergentVariationError when a growing arm recurs in the cycle, in which
    case the series has no finite value at all.
    """
    if start < 1:
        raise ValueError("start must be >= 1")
    ef = eventual_form(w)
    k = 1
    while (1 << k) - 1 < start:
        k += 1
    total = Fraction(0)
    while (1 << k) - 1 < ef.start:
        total += w.at((1 << k) - 1) * Fraction(1, 1 << (k + 1))
        k += 1
    seen: dict[int, tuple[int, Fraction]] = {}
    r = ((1 << k) - 1) % ef.modulus
    while r not in seen:
        seen[r] = (k, total)
        a, b = ef.arms[r]
        total += (a + b * ((1 << k) - 1)) * Fraction(1, 1 << (k + 1))
        k += 1
        r = (2 * r + 1) % ef.modulus
    k1, total_at_entry = seen[r]
    cycle_states = [s for s, (ks, _) in seen.items() if ks >= k1]
    if any(ef.arms[s][1] > 0 for s in cycle_states):
        raise DivergentVariationError(
            "weighted variation of the dyadic element diverges for this family: "
            "a growing arm recurs on the jump indices"
        )
    period = k - k1
    one_cycle = total - total_at_entry
    # sum over all repetitions of the cycle: one_cycle / (1 - 2^{-period})
    scale = Fraction(1 << period, (1 << period) - 1)
    return total_at_entry + one_cycle * scale


class RuleBased(Element):
    """Interval-tier element: exact pointwise values plus certified tails.

    value_at(n) must return the exact rational f(n); limit is f(∞).
    tail_variation_bound(start, weights) returns an upper bound for the
    weighted jump sum from `start` on, or None when it cannot certify one for
    that family.  Bounds must shrink consistently under refinement:
    bound(s) >= (exact partial sum from s to t-1) + bound(t); exact tails and
    geometric envelopes satisfy this.  An unweighted certificate (for the
    constant-1 family) is mandatory — it is what bounds the values themselves
    near ∞ — and is checked at construction.
    """

    def __init__(
        self,
        value_at: Callable[[int], Fraction],
        limit,
        tail_variation_bound: Callable[[int, WeightFamily], Fraction | None],
    ):
        self._value_at = value_at
        self.limit = Fraction(limit)
        self._tail_bound = tail_variation_bound
        if self._tail_bound(1, _UNIT_WEIGHTS) is None:
            raise MissingTailBound(
                "rule-based elements must certify an unweighted variation tail"
            )

    def at(self, p) -> Fraction:
        if p is INFINITY:
            return self.limit
        n = int(p)
        if n < 1:
            raise ValueError("points of N start at 1")
        return Fraction(self._value_at(n))

    def tail_bound(self, start: int, w: WeightFamily) -> Fraction:
        b = self._tail_bound(start, w)
        if b is None:
            raise MissingTailBound(
                "no certified variation tail for this weight family"
            )
        return Fraction(b)

    def scale(self, c) -> Element:
        c = Fraction(c)
        if c == 0:
            return ZERO
        inner_value, inner_bound, limit = self._value_at, self._tail_bound, self.limit

        def bound(start: int, w: WeightFamily) -> Fraction | None:
            b = inner_bound(start, w)
            return None if b is None else abs(c) * b

        return RuleBased(lambda n: c * inner_value(n), c * limit, bound)

    def sup_norm(self, horizon: int | None = None) -> NormResult:
        h = DEFAULT_HORIZON if horizon is None else horizon
        lo = abs(self.limit)
        for j in range(1, h + 1):
            lo = max(lo, abs(self.at(j)))
        # beyond the scan, |f(j)| <= |limit| + (unweighted variation tail)
        hi = max(lo, abs(self.limit) + self.tail_bound(h + 1, _UNIT_WEIGHTS))
        return NormResult.bounds(lo, hi, h)

    def weighted_variation(self, w: WeightFamily, horizon: int | None = None) -> NormResult:
        h = DEFAULT_HORIZON if horizon is None else horizon
        partial = Fraction(0)
        prev = self.at(1)
        for n in range(1, h + 1):
            nxt = self.at(n + 1)
            partial += w.at(n) * abs(nxt - prev)
            prev = nxt
        return NormResult.bounds(partial, partial + self.tail_bound(h + 1, w), h)


_UNIT_WEIGHTS = Constant(Fraction(1))


def element_to_obj(f: Element) -> dict:
    if isinstance(f, EventuallyConstant):
        return {
            "kind": "eventually_constant",
            "prefix": [format_rational(v) for v in f.prefix],
            "tail": format_rational(f.tail),
        }
    if isinstance(f, DyadicDecay):
        return {"kind": "dyadic_decay"}
    raise SchemaError("rule-based elements have no serialized form")


def element_from_obj(obj: object, path: str = "element") -> Element:
    if not isinstance(obj, dict):
        raise SchemaError(f"{path}: expected an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind == "eventually_constant":
        pre_obj = obj.get("prefix", [])
        if not isinstance(pre_obj, list):
            raise SchemaError(f"{path}.prefix: expected a list")
        pre = tuple(parse_rational(v, f"{path}.prefix[{i}]") for i, v in enumerate(pre_obj))
        tail = parse_rational(obj.get("tail", "0"), f"{path}.tail")
        return EventuallyConstant(pre, tail)
    if kind == "dyadic_decay":
        return DyadicDecay()
    raise SchemaError(
        f"{path}.kind: unknown tag {kind!r} (expected eventually_constant or dyadic_decay)"
    )
