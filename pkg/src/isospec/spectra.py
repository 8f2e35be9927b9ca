"""Closed-form Laplace spectra with exact arithmetic.

Round spheres of rational squared radius, their antipodal quotients, and
the fiber-rescaled spectrum of the circle bundle carried by the quotient
3-sphere (the Berger deformation) are all computed over ``Fraction``, so
eigenvalue ordering and multiplicity bookkeeping never hit float ties.
Floats appear only when a caller asks for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Union

RationalLike = Union[Fraction, int, str]

__all__ = [
    "AmbiguousSplit",
    "BoundInterval",
    "EigenvalueAssumption",
    "IncompleteSplit",
    "Inconsistent",
    "IndexOutOfRange",
    "Spectrum",
    "SplitEntry",
    "SubmersionSplit",
    "UndeterminedLevel",
    "Verdict",
    "antipodal_quotient_spectrum",
    "conclude_first_eigenvalue",
    "g6_11_bound_interval",
    "harmonic_multiplicity",
    "hopf_split_s3_quotient",
    "minimal_dimension_eigenvalue_record",
    "rescaled_fiber_spectrum",
    "sphere_spectrum",
]


class IndexOutOfRange(LookupError):
    """A multiplicity-expanded eigenvalue index exceeds the computed range."""


class IncompleteSplit(RuntimeError):
    """The submersion split does not determine the requested spectral range."""


class AmbiguousSplit(RuntimeError):
    """Dimension bookkeeping of a split level is underdetermined."""


class Inconsistent(RuntimeError):
    """A certificate contradicts the assumption it is combined with."""


def harmonic_multiplicity(n: int, k: int) -> int:
    """Dimension of degree-k spherical harmonics on the n-sphere.

    C(n+k, k) - C(n+k-2, k-2); covers n = 1 (answer 2 for k >= 1) and the
    degenerate degrees k = 0, 1 without special-casing.
    """
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    if k < 0:
        raise ValueError("harmonic degree must be >= 0")
    if k < 2:
        return 1 if k == 0 else n + 1
    return comb(n + k, k) - comb(n + k - 2, k - 2)


@dataclass(frozen=True)
class Spectrum:
    """Sorted (eigenvalue, multiplicity) pairs up to a harmonic-degree cutoff."""

    entries: tuple[tuple[Fraction, int], ...]
    cutoff: int
    label: str = ""

    def __post_init__(self):
        values = [e for e, _ in self.entries]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError("eigenvalues must be strictly increasing")
        if any(m < 1 for _, m in self.entries):
            raise ValueError("multiplicities must be positive")

    def kth_eigenvalue(self, k: int) -> Fraction:
        """k-th nonzero eigenvalue, counted with multiplicity, 1-based.

        The zero eigenvalue is not counted: on the 13-sphere the first
        nonzero eigenvalue 13 has multiplicity 14, so indices 1..14 give
        13 and index 15 gives 28.
        """
        if k < 1:
            raise IndexOutOfRange("index is 1-based")
        seen = 0
        for value, mult in self.entries:
            if value == 0:
                continue
            seen += mult
            if k <= seen:
                return value
        raise IndexOutOfRange(
            f"index {k} exceeds the {seen} nonzero eigenvalues below cutoff {self.cutoff}"
        )

    def first_nonzero(self) -> tuple[Fraction, int]:
        for value, mult in self.entries:
            if value != 0:
                return value, mult
        raise IndexOutOfRange("no nonzero eigenvalue below the cutoff")

    def multiplicity_of(self, value: RationalLike) -> int:
        value = Fraction(value)
        for v, m in self.entries:
            if v == value:
                return m
        return 0

    def as_floats(self) -> list[tuple[float, int]]:
        return [(float(v), m) for v, m in self.entries]


def sphere_spectrum(n: int, r2: RationalLike, degree_cutoff: int) -> Spectrum:
    """Spectrum of the round n-sphere of radius r, with r² = ``r2`` rational.

    Eigenvalues k(k + n - 1)/r² for harmonic degree k = 0..cutoff with the
    standard multiplicities.  The radius enters only through its square,
    which is rational in every case handled here.
    """
    r2 = Fraction(r2)
    if r2 <= 0:
        raise ValueError("squared radius must be positive")
    entries = tuple(
        (Fraction(k * (k + n - 1), 1) / r2, harmonic_multiplicity(n, k))
        for k in range(degree_cutoff + 1)
    )
    return Spectrum(entries, degree_cutoff, label=f"sphere(n={n}, r2={r2})")


def antipodal_quotient_spectrum(n: int, r2: RationalLike, degree_cutoff: int) -> Spectrum:
    """Spectrum of the antipodal quotient: even harmonic degrees survive."""
    r2 = Fraction(r2)
    full = sphere_spectrum(n, r2, degree_cutoff)
    entries = tuple(
        (value, mult)
        for k, (value, mult) in enumerate(full.entries)
        if k % 2 == 0
    )
    return Spectrum(entries, degree_cutoff, label=f"quotient(n={n}, r2={r2})")


@dataclass(frozen=True)
class SplitEntry:
    """One resolved summand λ = b + φ of a submersion eigenvalue."""

    total_eigenvalue: Fraction
    base_part: Fraction
    fiber_part: Fraction
    dimension: int


@dataclass(frozen=True)
class UndeterminedLevel:
    """A total eigenvalue whose (b, φ) bookkeeping is not pinned down.

    ``max_fiber_part`` bounds the fiber contribution from above, which is
    enough to bound the rescaled eigenvalue from below.
    """

    eigenvalue: Fraction
    multiplicity: int
    max_fiber_part: Fraction


@dataclass(frozen=True)
class SubmersionSplit:
    """Vertical/horizontal decomposition data of a warped circle bundle."""

    total_label: str
    fiber: Spectrum
    base: Spectrum
    splittings: tuple[SplitEntry, ...]
    undetermined: tuple[UndeterminedLevel, ...]
    cutoff: int

    def splitting_at(self, value: RationalLike) -> tuple[SplitEntry, ...]:
        value = Fraction(value)
        found = tuple(s for s in self.splittings if s.total_eigenvalue == value)
        if found:
            return found
        for level in self.undetermined:
            if level.eigenvalue == value:
                raise AmbiguousSplit(
                    f"the split of eigenvalue {value} (multiplicity "
                    f"{level.multiplicity}) is not determined; only the bound "
                    f"fiber part <= {level.max_fiber_part} is available"
                )
        raise IndexOutOfRange(f"{value} is not an eigenvalue below the cutoff")


def hopf_split_s3_quotient(cutoff: int) -> SubmersionSplit:
    """Split the quotient 3-sphere spectrum along the Hopf circle bundle.

    Total space: the antipodal quotient of the radius-√2 3-sphere.  Fibers
    are circles of radius √2/2, the base is the 2-sphere of radius √2/2.
    Fiber eigenvalues are 2j², so a total eigenvalue λ splits as λ = b + φ
    with φ ∈ {0, 2, 8, ...}.

    Only the first two levels are forced: λ = 0 is the constants, and for
    λ = 4 the fiber part can only be 0 or 2, with the φ = 0 summand being
    the pullbacks of the 3-dimensional base eigenspace, leaving dimension
    6 for φ = 2.  From λ = 12 on the admissible φ grow too fast for the
    counting argument, so those levels are recorded as undetermined with
    the bound φ ≤ max{2j² ≤ λ}.
    """
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2 to see the first split level")
    total = antipodal_quotient_spectrum(3, 2, cutoff)
    fiber = sphere_spectrum(1, Fraction(1, 2), cutoff)
    base = sphere_spectrum(2, Fraction(1, 2), cutoff)

    splittings = []
    undetermined = []
    for value, mult in total.entries:
        if value == 0:
            splittings.append(SplitEntry(value, Fraction(0), Fraction(0), 1))
        elif value == 4:
            pullback_dim = base.multiplicity_of(4)
            splittings.append(SplitEntry(value, Fraction(4), Fraction(0), pullback_dim))
            splittings.append(
                SplitEntry(value, Fraction(2), Fraction(2), mult - pullback_dim)
            )
        else:
            j = 0
            while 2 * (j + 1) ** 2 <= value:
                j += 1
            undetermined.append(UndeterminedLevel(value, mult, Fraction(2 * j * j)))
    return SubmersionSplit(
        total_label=total.label,
        fiber=fiber,
        base=base,
        splittings=tuple(splittings),
        undetermined=tuple(undetermined),
        cutoff=cutoff,
    )


def rescaled_fiber_spectrum(
    split: SubmersionSplit,
    t_squared: RationalLike,
    max_eigenvalue: RationalLike | None = None,
) -> Spectrum:
    """Spectrum of the fiber-rescaled metric from a submersion split.

    Rescaling the fiber by t maps each summand λ = b + φ to b + φ/t²; the
    scale enters only through t², passed exactly.  For t² = 1 this is the
    identity on the total spectrum, undetermined levels included.  For any
    other t² the result is certified only below the smallest rescaled value
    the undetermined levels could reach; asking beyond that certification
    raises :class:`IncompleteSplit`.
    """
    t2 = Fraction(t_squared)
    if t2 <= 0:
        raise ValueError("t_squared must be positive")

    if t2 == 1:
        aggregated: dict[Fraction, int] = {}
        for s in split.splittings:
            key = s.base_part + s.fiber_part
            aggregated[key] = aggregated.get(key, 0) + s.dimension
        for level in split.undetermined:
            aggregated[level.eigenvalue] = (
                aggregated.get(level.eigenvalue, 0) + level.multiplicity
            )
        entries = tuple(sorted(aggregated.items()))
        spectrum = Spectrum(entries, split.cutoff, label=f"{split.total_label} (t2=1)")
        if max_eigenvalue is not None:
            bound = Fraction(max_eigenvalue)
            entries = tuple((v, m) for v, m in entries if v <= bound)
            spectrum = Spectrum(entries, split.cutoff, label=spectrum.label)
        return spectrum

    # An undetermined level λ rescales to λ - φ(1 - 1/t²) ≥ λ - φ_max(1 - 1/t²)
    # when t² > 1; for t² < 1 rescaling only raises it, so λ itself bounds.
    shrink = max(Fraction(0), 1 - 1 / t2)
    certified = None
    for level in split.undetermined:
        low = level.eigenvalue - level.max_fiber_part * shrink
        certified = low if certified is None else min(certified, low)

    aggregated = {}
    for s in split.splittings:
        key = s.base_part + s.fiber_part / t2
        aggregated[key] = aggregated.get(key, 0) + s.dimension

    if max_eigenvalue is not None:
        bound = Fraction(max_eigenvalue)
        if certified is not None and bound >= certified:
            raise IncompleteSplit(
                f"rescaled spectrum is certified only below {certified}; "
                f"requested eigenvalues up to {bound}"
            )
        entries = tuple(
            (v, m) for v, m in sorted(aggregated.items()) if v <= bound
        )
    else:
        entries = tuple(
            (v, m) for v, m in sorted(aggregated.items())
            if certified is None or v < certified
        )
    return Spectrum(entries, split.cutoff, label=f"{split.total_label} (t2={t2})")


@dataclass(frozen=True)
class BoundInterval:
    """Two-sided first-eigenvalue bound with its machine-checkable trace."""

    lower: Fraction
    upper: Fraction
    sphere_head: tuple[tuple[Fraction, int], ...]
    pullback_obstruction: Fraction
    obstruction_exceeds_upper: bool

    def __iter__(self):
        yield self.lower
        yield self.upper


def g6_11_bound_interval() -> BoundInterval:
    """First-eigenvalue interval [3, 5] for the 5-dimensional focal case.

    Upper bound: a minimal submanifold of the unit sphere has its dimension
    as an eigenvalue, so λ₁ ≤ 5.  Lower bound: a first eigenfunction pulled
    back purely from the base of the quotient fibration would force
    λ₁ ≥ λ₁(antipodal quotient of the radius-(√3/2) 2-sphere) = 8 > 5,
    a contradiction, so the fiber contributes and λ₁ is bounded below by
    the first nonzero eigenvalue 3 of the unit 3-sphere.
    """
    unit_s3 = sphere_spectrum(3, 1, 4)
    base_quotient = antipodal_quotient_spectrum(2, Fraction(3, 4), 4)
    obstruction, _ = base_quotient.first_nonzero()
    return BoundInterval(
        lower=unit_s3.first_nonzero()[0],
        upper=Fraction(5),
        sphere_head=unit_s3.entries[:3],
        pullback_obstruction=obstruction,
        obstruction_exceeds_upper=obstruction > 5,
    )


@dataclass(frozen=True)
class EigenvalueAssumption:
    """Externally supplied spectral fact, tagged as assumed in all reports.

    For a closed minimal submanifold of dimension d and codimension c in
    the unit sphere, the ambient coordinates restrict to eigenfunctions
    with eigenvalue d, spanning a space of dimension d + c + 1.
    """

    eigenvalue: int
    multiplicity_at_least: int
    status: str = field(default="assumed")
    note: str = field(
        default="restricted ambient coordinates of a minimal submanifold"
    )


def minimal_dimension_eigenvalue_record(dim: int, codim_claim: int) -> EigenvalueAssumption:
    if dim < 1 or codim_claim < 1:
        raise ValueError("dimension and codimension must be positive")
    return EigenvalueAssumption(
        eigenvalue=dim,
        multiplicity_at_least=dim + codim_claim + 1,
    )


@dataclass(frozen=True)
class Verdict:
    """Outcome of combining a ratio certificate with spectral facts."""

    passed: bool
    lambda1: int | None
    multiplicity: int | None
    detail: str


def conclude_first_eigenvalue(cert, assumption: EigenvalueAssumption) -> Verdict:
    """Pin down λ₁ from an index-k lower bound plus an assumed eigenvalue.

    ``cert`` must expose ``implied_bound`` (a lower bound for the k-th
    eigenvalue of the submanifold) and ``target_index`` (that k).  If the
    assumed eigenvalue d occupies at least m slots and λ_{m+1} > d, then no
    eigenvalue below d fits (it would push copies of d past index m+1), so
    λ₁ = d with multiplicity exactly m.
    """
    m = assumption.multiplicity_at_least
    k = cert.target_index
    if cert.implied_bound <= assumption.eigenvalue:
        raise Inconsistent(
            f"bound {cert.implied_bound} does not exceed the assumed "
            f"eigenvalue {assumption.eigenvalue}"
        )
    if k <= m:
        raise Inconsistent(
            f"eigenvalue index {k} lies inside the assumed multiplicity {m}, "
            f"yet the bound exceeds the assumed eigenvalue"
        )
    if k == m + 1:
        return Verdict(
            passed=True,
            lambda1=assumption.eigenvalue,
            multiplicity=m,
            detail=(
                f"eigenvalue {assumption.eigenvalue} fills indices 1..{m} and "
                f"index {k} exceeds it: first eigenvalue {assumption.eigenvalue}, "
                f"multiplicity {m}"
            ),
        )
    return Verdict(
        passed=False,
        lambda1=None,
        multiplicity=None,
        detail=f"index {k} exceeds assumed multiplicity + 1 = {m + 1}; inconclusive",
    )
