"""Regularity classification of the algebra attached to a weight family.

Which regularity properties hold is decided entirely by the exact weight
classification: the strong Ditkin property, a bounded approximate identity
in the ideal at ∞, and pointwise-bounded relative units are all equivalent
to the weights not diverging to infinity, while a uniform (point-free)
relative-unit bound is equivalent to the weights being bounded, with bound
2*sup + 1.  The report carries machine-checkable witnesses on both sides:
a norm-bounded truncation subsequence when one exists, and points where the
local identity's norm exceeds successive thresholds when no uniform bound
can exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    ClosedSet,
    DyadicDecay,
    Element,
    EventuallyConstant,
    INFINITY,
    element_to_obj,
    format_point,
)
from .approx_identity import (
    AiSelection,
    DEFAULT_SELECTION_COUNT,
    prefix_indicator,
    select_ai_subsequence,
)
from .errors import InvalidExcludedSet, NotDivergentError
from .weights import (
    Constant,
    Interleave,
    Linear,
    WeightClassification,
    WeightFamily,
    eventual_form,
    format_rational,
)

# what each report field rests on; "established" fields hold for every family
# in this class and are recorded rather than recomputed
CITATIONS = {
    "ditkin": "established: every algebra in this family satisfies Ditkin's condition",
    "strongly_regular": "established: Ditkin's condition implies strong regularity",
    "spectral_synthesis": (
        "established: on this one-point compactification, Ditkin algebras have spectral synthesis"
    ),
    "separable": "established: every algebra in this family is separable",
    "strong_ditkin": "computed: equivalent to the weights not diverging to infinity",
    "m_infinity_has_bai": (
        "computed: the ideal at infinity has a bounded approximate identity "
        "exactly when the weight liminf is finite"
    ),
    "bru_bade": (
        "computed: pointwise-bounded relative units exist exactly when the weight liminf is finite"
    ),
    "bru_dales": (
        "computed: a uniform relative-unit bound exists exactly when the weights are bounded"
    ),
    "dales_bound": "computed: 2 * sup + 1 bounds every relative-unit witness when the weights are bounded",
    "bade_witness": (
        "computed: truncation subsequence with norms 1 + alpha_n bounded by 1 + liminf + slack"
    ),
    "unboundedness_witness": (
        "computed: the identity of the ideal at n has norm at least alpha_n, "
        "so unbounded weights defeat any uniform bound"
    ),
}


@dataclass(frozen=True)
class PropertyReport:
    """Truth values plus witnesses for the regularity properties."""

    classification: WeightClassification
    ditkin: bool
    strongly_regular: bool
    spectral_synthesis: bool
    separable: bool
    strong_ditkin: bool
    m_infinity_has_bai: bool
    bru_bade: bool
    bru_dales: bool
    dales_bound: Fraction | None
    bade_witness: AiSelection | None
    unboundedness_witness: tuple[tuple[int, Fraction], ...] | None

    def to_obj(self) -> dict:
        return {
            "ditkin": self.ditkin,
            "strongly_regular": self.strongly_regular,
            "spectral_synthesis": self.spectral_synthesis,
            "separable": self.separable,
            "strong_ditkin": self.strong_ditkin,
            "m_infinity_has_bai": self.m_infinity_has_bai,
            "bru_bade": self.bru_bade,
            "bru_dales": self.bru_dales,
            "dales_bound": (
                format_rational(self.dales_bound) if self.dales_bound is not None else None
            ),
            "bade_witness": self.bade_witness.to_obj() if self.bade_witness else None,
            "unboundedness_witness": (
                [[n, format_rational(a)] for n, a in self.unboundedness_witness]
                if self.unboundedness_witness is not None
                else None
            ),
            "classification": self.classification.to_obj(),
            "citations": dict(CITATIONS),
        }


def property_report(
    w: WeightFamily, witness_count: int = DEFAULT_SELECTION_COUNT
) -> PropertyReport:
    cls = w.classify()
    liminf_finite = cls.liminf is not None
    bounded = cls.sup is not None
    return PropertyReport(
        classification=cls,
        ditkin=True,
        strongly_regular=True,
        spectral_synthesis=True,
        separable=True,
        strong_ditkin=liminf_finite,
        m_infinity_has_bai=liminf_finite,
        bru_bade=liminf_finite,
        bru_dales=bounded,
        dales_bound=(2 * cls.sup + 1) if bounded else None,
        bade_witness=(
            select_ai_subsequence(w, witness_count) if liminf_finite else None
        ),
        unboundedness_witness=(
            None if bounded else _unboundedness_points(w, witness_count)
        ),
    )


def _first_index_above(w: WeightFamily, threshold: Fraction) -> int:
    """Smallest n with alpha_n > threshold; exists whenever w is unbounded."""
    ef = eventual_form(w)
    for j in range(1, ef.start):
        if w.at(j) > threshold:
            return j
    candidates = []
    for r, (a, b) in enumerate(ef.arms):
        if b == 0:
            if a > threshold:
                candidates.append(ef.first_in_class(r, ef.start))
        else:
            # a + b*n > threshold from n = floor((threshold - a)/b) + 1 on
            first = max(int((threshold - a) / b) + 1, 1)
            candidates.append(ef.first_in_class(r, max(first, ef.start)))
    return min(candidates)


def _unboundedness_points(
    w: WeightFamily, count: int
) -> tuple[tuple[int, Fraction], ...]:
    rows = []
    for i in range(count):
        threshold = Fraction(1 << i)
        n = _first_index_above(w, threshold)
        rows.append((n, w.at(n)))
    return tuple(rows)


@dataclass(frozen=True)
class RelativeUnitWitness:
    """An element of the local vanishing ideal that is 1 on the excluded set."""

    point: object
    excluded_set_max: int
    element: Element
    norm: Fraction

    def to_obj(self) -> dict:
        return {
            "point": format_point(self.point),
            "excluded_set_max": self.excluded_set_max,
            "element": element_to_obj(self.element),
            "norm": format_rational(self.norm),
        }


def relative_unit_witness(
    w: WeightFamily, point, excluded: ClosedSet
) -> RelativeUnitWitness:
    """A relative unit at `point` for the compact set `excluded`, with its
    exact norm.

    At ∞ the witness is the cheapest truncation indicator covering the set:
    the earliest index at or past max(excluded) attaining the tail infimum.
    At a finite point x it is 1 - delta_x, the identity of the vanishing
    ideal at x, whose norm is 1 + alpha_{x-1} + alpha_x (1 + alpha_1 when
    x = 1).
    """
    if point is INFINITY:
        if excluded.with_infinity:
            raise InvalidExcludedSet(
                "a compact set excluded at infinity must stay inside N"
            )
        base = max(excluded.max_finite, 1)
        t = w.tail_infimum(base)
        assert t.attained_at is not None
        k = t.attained_at
        return RelativeUnitWitness(
            point=INFINITY,
            excluded_set_max=excluded.max_finite,
            element=prefix_indicator(k),
            norm=1 + w.at(k),
        )

    x = int(point)
    if x < 1:
        raise InvalidExcludedSet("points of N start at 1")
    if excluded.contains(x):
        raise InvalidExcludedSet(f"the excluded set must not contain the point {x}")
    element = EventuallyConstant(
        (Fraction(1),) * (x - 1) + (Fraction(0),), Fraction(1)
    )
    if x == 1:
        norm = 1 + w.at(1)
    else:
        norm = 1 + w.at(x - 1) + w.at(x)
    return RelativeUnitWitness(
        point=x,
        excluded_set_max=excluded.max_finite,
        element=element,
        norm=norm,
    )


def dyadic_counterexample() -> tuple[WeightFamily, Element]:
    """The built-in pair for which the full truncation sequence fails to be
    an approximate identity: weights 1 on odd indices and n/2 on even ones,
    against the dyadic staircase."""
    w = Interleave((Linear(Fraction(0), Fraction(1, 2)), Constant(Fraction(1))))
    return w, DyadicDecay()


def unbounded_nondivergent_family(
    divergent_part: WeightFamily, bounded_value: Fraction
) -> WeightFamily:
    """Interleave a constant with a divergent family: unbounded weights whose
    liminf stays finite, so the algebra is strong Ditkin without a uniform
    relative-unit bound."""
    if divergent_part.classify().liminf is not None:
        raise NotDivergentError("the growing part must diverge to infinity")
    return Interleave((Constant(Fraction(bounded_value)), divergent_part))
