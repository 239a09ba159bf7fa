"""Model constants, domain geometry, and interface flux functionals.

The model tracks six population densities on a rectangular habitat
``[-ell, L] x [0, 1]`` split at the vertical interface ``x = 0`` into an
infected strip (x < 0) and a susceptible strip (x > 0): juvenile vectors,
adult vectors, and mammalian hosts, one copy per strip.  Each species
diffuses with side-dependent coefficients, reacts through survival,
maturation, fecundity and vertical-transmission terms, and crosses the
interface with an asymmetric probability ``p`` (skew crossing), which at
the PDE level becomes a weighted-flux matching condition

    p * d_minus * du_I/dx(0, y) = (1 - p) * d_plus * du_S/dx(0, y).

This module holds every scalar constant of the model, validates them,
derives the interface flux weights, evaluates the five interface source
flows exchanged between the strips, and checks the spectral admissibility
bound on the host reaction gain.  Everything here is an immutable value or
a pure function; instances can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

PI_SQUARED = math.pi ** 2

SPECIES = ("juvenile", "adult", "host")


class ParameterError(ValueError):
    """A model constant violates its admissible range."""


class HostBoundError(ValueError):
    """Host reaction gain exceeds the first Dirichlet eigenvalue budget."""


@dataclass(frozen=True)
class ModelParameters:
    """All demographic, diffusion, transmission and geometry constants.

    The ``_minus`` suffix refers to the infected strip (x < 0), ``_plus``
    to the susceptible strip (x > 0).  Defaults form a documented example
    set chosen for plausibility and admissibility; they are not field
    estimates.
    """

    # survival probabilities, dimensionless in [0, 1]
    sigma_J_minus: float = 0.70
    sigma_J_plus: float = 0.75
    sigma_A_minus: float = 0.85
    sigma_A_plus: float = 0.80
    sigma_H_minus: float = 0.90
    sigma_H_plus: float = 0.90
    # juvenile -> adult transition probabilities
    tau_minus: float = 0.10
    tau_plus: float = 0.12
    # fecundities, >= 0
    f_A_minus: float = 1.5
    f_A_plus: float = 1.4
    f_H_minus: float = 0.4
    f_H_plus: float = 0.5
    # vertical transmission rate per host female, >= 0
    nu: float = 0.05
    # infection rates, >= 0 (zero disables the corresponding coupling)
    Lambda_J: float = 0.30
    Lambda_A: float = 0.25
    Lambda_H: float = 0.20
    # diffusion coefficients, > 0
    d_J_minus: float = 0.8
    d_J_plus: float = 1.0
    d_A_minus: float = 1.2
    d_A_plus: float = 1.1
    d_H_minus: float = 0.9
    d_H_plus: float = 1.0
    # interface crossing probabilities, strictly inside (0, 1)
    p_J: float = 0.45
    p_A: float = 0.55
    p_H: float = 0.50
    # strip widths, > 0
    ell: float = 1.0
    L: float = 1.0

    def __post_init__(self):
        probs = {
            "sigma_J_minus": self.sigma_J_minus,
            "sigma_J_plus": self.sigma_J_plus,
            "sigma_A_minus": self.sigma_A_minus,
            "sigma_A_plus": self.sigma_A_plus,
            "sigma_H_minus": self.sigma_H_minus,
            "sigma_H_plus": self.sigma_H_plus,
            "tau_minus": self.tau_minus,
            "tau_plus": self.tau_plus,
        }
        for name, value in probs.items():
            if not 0.0 <= value <= 1.0:
                raise ParameterError(f"{name}={value!r} must lie in [0, 1]")
        for name in ("p_J", "p_A", "p_H"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ParameterError(
                    f"{name}={value!r} must lie strictly inside (0, 1)"
                )
        for name in ("f_A_minus", "f_A_plus", "f_H_minus", "f_H_plus", "nu"):
            value = getattr(self, name)
            if value < 0.0:
                raise ParameterError(f"{name}={value!r} must be >= 0")
        # Zero infection rates are accepted so decoupled fixtures can be
        # expressed; negative rates never are.
        for name in ("Lambda_J", "Lambda_A", "Lambda_H"):
            value = getattr(self, name)
            if value < 0.0:
                raise ParameterError(f"{name}={value!r} must be >= 0")
        positives = (
            "d_J_minus", "d_J_plus", "d_A_minus", "d_A_plus",
            "d_H_minus", "d_H_plus", "ell", "L",
        )
        for name in positives:
            value = getattr(self, name)
            if not value > 0.0:
                raise ParameterError(f"{name}={value!r} must be > 0")

    # -- derived interface flux weights ---------------------------------
    # Asymmetric crossing with probability p on the infected side and
    # 1 - p on the susceptible side weights each one-sided flux by
    # p * d_minus and (1 - p) * d_plus; all six weights are > 0.

    @property
    def juvenile_weight_I(self) -> float:
        return self.p_J * self.d_J_minus

    @property
    def juvenile_weight_S(self) -> float:
        return (1.0 - self.p_J) * self.d_J_plus

    @property
    def adult_weight_I(self) -> float:
        return self.p_A * self.d_A_minus

    @property
    def adult_weight_S(self) -> float:
        return (1.0 - self.p_A) * self.d_A_plus

    @property
    def host_weight_I(self) -> float:
        return self.p_H * self.d_H_minus

    @property
    def host_weight_S(self) -> float:
        return (1.0 - self.p_H) * self.d_H_plus

    def host_bound_operands(self) -> tuple[float, float]:
        """Per-side host reaction gain divided by host diffusivity.

        These are the two quantities whose maximum must stay below the
        first Dirichlet eigenvalue pi**2 for the dispersal operator to be
        spectrally admissible.
        """
        minus = (self.sigma_H_minus * (1.0 + self.nu * self.f_H_minus) - 1.0) \
            / self.d_H_minus
        plus = (self.sigma_H_plus * (1.0 + self.f_H_plus) - 1.0) / self.d_H_plus
        return minus, plus


@dataclass(frozen=True)
class SpeciesCoefficients:
    """Scalar data of one species' two-strip elliptic problem.

    The resolvent equation for a single species reads, per strip,

        d * Lap(u) - (lambda + c) * u = rhs,

    where ``c`` is the negated net linear reaction gain read off the
    diagonal of the dispersal operator, together with the interface flux
    weights entering the skew matching condition.
    """

    species: str
    d_minus: float
    d_plus: float
    c_minus: float
    c_plus: float
    weight_I: float
    weight_S: float

    def __post_init__(self):
        if self.species not in SPECIES:
            raise ParameterError(f"unknown species {self.species!r}")
        for name in ("d_minus", "d_plus", "weight_I", "weight_S"):
            if not getattr(self, name) > 0.0:
                raise ParameterError(f"{name} must be > 0")


def species_coefficients(params: ModelParameters, species: str) -> SpeciesCoefficients:
    """Diffusion, reaction and interface-weight scalars for one species.

    juvenile:  c = 1 - (1 - tau) * sigma_J      weights (p_J d_J-, (1-p_J) d_J+)
    adult:     c = 1 - sigma_A                  weights (p_A d_A-, (1-p_A) d_A+)
    host:      c- = 1 - sigma_H-(1 + nu f_H-),  weights (p_H d_H-, (1-p_H) d_H+)
               c+ = 1 - sigma_H+(1 + f_H+)
    """
    if species == "juvenile":
        return SpeciesCoefficients(
            species=species,
            d_minus=params.d_J_minus,
            d_plus=params.d_J_plus,
            c_minus=1.0 - (1.0 - params.tau_minus) * params.sigma_J_minus,
            c_plus=1.0 - (1.0 - params.tau_plus) * params.sigma_J_plus,
            weight_I=params.juvenile_weight_I,
            weight_S=params.juvenile_weight_S,
        )
    if species == "adult":
        return SpeciesCoefficients(
            species=species,
            d_minus=params.d_A_minus,
            d_plus=params.d_A_plus,
            c_minus=1.0 - params.sigma_A_minus,
            c_plus=1.0 - params.sigma_A_plus,
            weight_I=params.adult_weight_I,
            weight_S=params.adult_weight_S,
        )
    if species == "host":
        return SpeciesCoefficients(
            species=species,
            d_minus=params.d_H_minus,
            d_plus=params.d_H_plus,
            c_minus=1.0 - params.sigma_H_minus * (1.0 + params.nu * params.f_H_minus),
            c_plus=1.0 - params.sigma_H_plus * (1.0 + params.f_H_plus),
            weight_I=params.host_weight_I,
            weight_S=params.host_weight_S,
        )
    raise ParameterError(f"unknown species {species!r}")


@dataclass(frozen=True)
class HostBoundReport:
    """Outcome of the host growth-bound check with both operands."""

    operand_minus: float
    operand_plus: float
    r0: float
    passed: bool


def default_r0(params: ModelParameters, margin: float = 1e-6) -> float:
    """Smallest convenient admissibility budget for the given constants.

    Only the existence of some positive budget below pi**2 matters, so the
    default is ``max(host operands, 0) + margin``.  Raises if even that
    exceeds pi**2, i.e. no admissible budget exists.
    """
    minus, plus = params.host_bound_operands()
    r0 = max(minus, plus, 0.0) + margin
    if r0 >= PI_SQUARED:
        raise HostBoundError(
            "no admissible budget exists: host reaction gain "
            f"max({minus:.6g}, {plus:.6g}) >= pi**2"
        )
    return r0


def check_host_bound(params: ModelParameters, r0: float) -> HostBoundReport:
    """Check that the host reaction gain stays within the budget ``r0``.

    Passes iff max of the two per-side operands is <= r0.  ``r0`` itself
    must lie in (0, pi**2); equality with pi**2 is already inadmissible.
    """
    if not 0.0 < r0 < PI_SQUARED:
        raise ParameterError(f"r0={r0!r} must lie in (0, pi**2)")
    minus, plus = params.host_bound_operands()
    return HostBoundReport(
        operand_minus=minus,
        operand_plus=plus,
        r0=r0,
        passed=max(minus, plus) <= r0,
    )


def require_host_bound(params: ModelParameters, r0: float | None = None) -> HostBoundReport:
    """Like :func:`check_host_bound` but raising on failure.

    With ``r0=None`` the most permissive budget just below pi**2 is used,
    so a raise means the constants are inadmissible for every budget.
    """
    budget = (PI_SQUARED - 1e-6) if r0 is None else r0
    report = check_host_bound(params, budget)
    if not report.passed:
        raise HostBoundError(
            "host reaction gain "
            f"max({report.operand_minus:.6g}, {report.operand_plus:.6g}) "
            f"exceeds budget r0={budget:.6g}"
        )
    return report


@dataclass(frozen=True)
class TraceFluxes:
    """The five interface source flows, one value (or array) per y-point.

    Direction infected -> susceptible strip:
      newborn_juveniles   susceptible offspring of infected adult vectors
      newborn_hosts       susceptible offspring of infected hosts
    Direction susceptible -> infected strip:
      infected_hosts      susceptible hosts becoming infected
      infected_adults     susceptible adult vectors becoming infected
      infected_juveniles  susceptible juvenile vectors becoming infected
    """

    newborn_juveniles: object
    newborn_hosts: object
    infected_hosts: object
    infected_adults: object
    infected_juveniles: object

    def as_tuple(self):
        return (
            self.newborn_juveniles,
            self.newborn_hosts,
            self.infected_hosts,
            self.infected_adults,
            self.infected_juveniles,
        )


def trace_fluxes(params: ModelParameters, dj_I, da_I, dh_I, dj_S, da_S, dh_S) -> TraceFluxes:
    """Evaluate the five interface flows from the six one-sided x-derivatives.

    Arguments are the interface traces of du/dx for (juvenile, adult, host)
    on the infected side followed by the susceptible side; scalars and
    numpy arrays (one value per y-point) are both accepted.  The functional
    is linear in the derivative vector.
    """
    p = params
    newborn_juveniles = p.f_A_minus * p.sigma_A_minus * p.d_A_minus * da_I
    newborn_hosts = (1.0 - p.nu) * p.f_H_minus * p.sigma_H_minus * p.d_H_minus * dh_I
    # The susceptible-side host terms share the factor sigma_H+ d_H+ and
    # combine to (1 + f_H+); kept combined to spare float operations.
    infected_hosts = (
        p.sigma_H_plus * p.d_H_plus * (1.0 + p.f_H_plus) * dh_S + newborn_hosts
    )
    infected_adults = (
        p.tau_plus * p.sigma_J_plus * p.d_J_plus * dj_S
        + p.sigma_A_plus * p.d_A_plus * da_S
    )
    infected_juveniles = (
        (1.0 - p.tau_plus) * p.sigma_J_plus * p.d_J_plus * dj_S
        + p.f_A_plus * p.sigma_A_plus * p.d_A_plus * da_S
        + newborn_juveniles
    )
    return TraceFluxes(
        newborn_juveniles=newborn_juveniles,
        newborn_hosts=newborn_hosts,
        infected_hosts=infected_hosts,
        infected_adults=infected_adults,
        infected_juveniles=infected_juveniles,
    )
