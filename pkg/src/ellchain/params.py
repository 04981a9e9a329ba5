"""Parameter arithmetic: Euclidean decomposition, the Brill-Noether number,
and classification into the four construction regimes.

Everything here is exact integer arithmetic. A tuple (g, r, d, k) is the
genus, the bundle rank, the bundle degree and the dimension of the section
space. The constructions require k > r; the Brill-Noether count itself is
defined for any integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import gcd

from .errors import HypothesisFailed, KLERegime, ParameterError


@dataclass(frozen=True)
class Params:
    """Input tuple: genus g >= 2, rank r >= 1, degree d >= 0, sections k >= 1."""

    g: int
    r: int
    d: int
    k: int

    def __post_init__(self) -> None:
        for name in ("g", "r", "d", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ParameterError(f"{name} must be an integer, got {value!r}")
        if self.g < 2:
            raise ParameterError(f"genus must be >= 2, got g={self.g}")
        if self.r < 1:
            raise ParameterError(f"rank must be >= 1, got r={self.r}")
        if self.d < 0:
            raise ParameterError(f"degree must be >= 0, got d={self.d}")
        if self.k < 1:
            raise ParameterError(f"section count must be >= 1, got k={self.k}")


def rho_value(g: int, r: int, d: int, k: int) -> int:
    """Brill-Noether number r^2(g-1) + 1 - k(k - d + r(g-1)), for any integers.

    May be negative. Exact; no overflow concerns with Python integers.
    """
    return r * r * (g - 1) + 1 - k * (k - d + r * (g - 1))


def brill_noether_rho(p: Params) -> int:
    return rho_value(p.g, p.r, p.d, p.k)


@dataclass(frozen=True)
class Decomposition:
    """Euclidean data: d = r*d1 + d2, k = r*k1 + k2, h = gcd(d, r) = d/dbar = r/rbar."""

    d1: int
    d2: int
    k1: int
    k2: int
    h: int
    rbar: int
    dbar: int


def decompose(p: Params) -> Decomposition:
    d1, d2 = divmod(p.d, p.r)
    k1, k2 = divmod(p.k, p.r)
    h = gcd(p.d, p.r)
    dec = Decomposition(d1=d1, d2=d2, k1=k1, k2=k2, h=h, rbar=p.r // h, dbar=p.d // h)
    # h | r and h | d force h | d2; cheap sanity guard.
    if d2 % h != 0:
        raise ParameterError(f"gcd inconsistency for {p}: h={h} does not divide d2={d2}")
    return dec


class Case(str, Enum):
    """The four construction regimes.

    LARGE_SECTIONS: d + r(1-g) >= k (a generic bundle already has k sections).
    SMALL_A:        d2 < k2.
    SMALL_B:        d2 >= k2, d2 != 0.
    SMALL_C:        d2 = k2 = 0.
    LARGE_SECTIONS takes precedence over the small cases.
    """

    LARGE_SECTIONS = "large_sections"
    SMALL_A = "small_a"
    SMALL_B = "small_b"
    SMALL_C = "small_c"


@dataclass(frozen=True)
class HypothesisCheck:
    """One inequality `value >= min_pass`, with its evaluated left side.

    slack = value - min_pass + 1: positive iff the inequality holds, and it
    counts how far the left side sits above the first failing value.
    """

    name: str
    statement: str
    value: int
    min_pass: int

    @property
    def satisfied(self) -> bool:
        return self.value >= self.min_pass

    @property
    def slack(self) -> int:
        return self.value - self.min_pass + 1

    def describe(self) -> str:
        verdict = "holds" if self.satisfied else "fails"
        return (
            f"{self.name} {verdict}: {self.statement} = {self.value} "
            f"{'>=' if self.satisfied else '<'} {self.min_pass}"
        )


@dataclass(frozen=True)
class Classification:
    """Case tag plus the record of every hypothesis inequality evaluated."""

    case: Case
    checks: tuple[HypothesisCheck, ...]

    @property
    def main_check(self) -> HypothesisCheck:
        return self.checks[0]


def classify(p: Params) -> Classification:
    """Classify a tuple with k > r into its construction regime.

    Raises KLERegime for k <= r and HypothesisFailed when the regime's
    inequality (or its auxiliary deficiency condition) does not hold. The
    returned record keeps every evaluated check, auxiliary ones included,
    rather than assuming any implication between them.
    """
    if p.k <= p.r:
        raise KLERegime(f"k <= r regime not covered (k={p.k}, r={p.r})")
    g, r = p.g, p.r
    dec = decompose(p)
    d1, d2, k1, k2 = dec.d1, dec.d2, dec.k1, dec.k2

    surplus = p.d + r * (1 - g)
    ls_check = HypothesisCheck(
        name="section_surplus",
        statement=f"d + r*(1-g) = {p.d} + {r}*(1-{g})",
        value=surplus,
        min_pass=p.k,
    )
    if ls_check.satisfied:
        return Classification(Case.LARGE_SECTIONS, (ls_check,))

    if d2 < k2:
        case = Case.SMALL_A
        checks = (
            HypothesisCheck(
                name="(***)",
                statement=f"g - (k1+1)*(g-d1+k1) = {g} - {k1 + 1}*{g - d1 + k1}",
                value=g - (k1 + 1) * (g - d1 + k1),
                min_pass=1,
            ),
            HypothesisCheck(
                name="generic_bundle_deficit",
                statement=f"g - d1 + k1 = {g} - {d1} + {k1}",
                value=g - d1 + k1,
                min_pass=1,
            ),
        )
    elif d2 != 0:
        case = Case.SMALL_B
        checks = (
            HypothesisCheck(
                name="(*)",
                statement=f"g - (k1+1)*(g-d1+k1-1) = {g} - {k1 + 1}*{g - d1 + k1 - 1}",
                value=g - (k1 + 1) * (g - d1 + k1 - 1),
                min_pass=1,
            ),
            HypothesisCheck(
                name="generic_bundle_deficit",
                statement=f"g + k1 - d1 = {g} + {k1} - {d1}",
                value=g + k1 - d1,
                min_pass=2,
            ),
        )
    else:
        case = Case.SMALL_C
        checks = (
            HypothesisCheck(
                name="(**)",
                statement=f"g - k1*(g-d1+k1-1) = {g} - {k1}*{g - d1 + k1 - 1}",
                value=g - k1 * (g - d1 + k1 - 1),
                min_pass=2,  # strict "> 1"
            ),
        )

    for check in checks:
        if not check.satisfied:
            raise HypothesisFailed(check.describe(), failed=check, checks=checks)
    return Classification(case, checks)
