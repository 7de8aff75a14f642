"""Parameter calculus for nth-level fractional derivatives.

A level-n derivative of order ``alpha`` in (0, 1] with type vector
``gamma = (gamma_1, ..., gamma_n)`` is the operator composition

    D = (I^g1 d/dx)(I^g2 d/dx) ... (I^gn d/dx) I^(n - alpha - s_n)

applied right to left, where I^mu is the Riemann-Liouville integral of
order mu and s_k = gamma_1 + ... + gamma_k.  The admissible region is

    gamma_k >= 0  and  alpha + s_k <= k   for k = 1..n.

This module owns the spec container and everything that can be decided
from the parameters alone: validation, classification against the named
one-level operators (Riemann-Liouville, Caputo, Hilfer), reduction of
degenerate specs to an equivalent lower level, kernel exponents
sigma_k = alpha + s_k - k, the Laplace-domain shape, and the n = 2
parameter triangle.  No function evaluation happens here.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

from .errors import InvalidSpecError

# slack for all boundary comparisons on parameters
TOL = 1e-12

__all__ = [
    "TOL",
    "DerivativeSpec",
    "ValidationReport",
    "SpecKind",
    "SpecClass",
    "RegionLabel",
    "ProjectorCoeffs",
    "LaplaceForm",
    "validate",
    "require_valid",
    "classify",
    "reduce_spec",
    "surviving_directions",
    "triangle_region",
    "kernel_basis",
    "laplace_form",
]


@dataclass(frozen=True)
class DerivativeSpec:
    """Level, order and type vector of an nth-level fractional derivative.

    Construction only checks structure (level >= 1, len(gamma) == n,
    finite floats).  Whether the parameters satisfy the admissibility
    constraints is a separate question answered by validate().
    """

    n: int
    alpha: float
    gamma: tuple[float, ...]

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise InvalidSpecError(f"level n must be an int, got {type(self.n).__name__}")
        if self.n < 1:
            raise InvalidSpecError(f"level n must be >= 1, got {self.n}")
        try:
            gam = tuple(float(g) for g in self.gamma)
        except (TypeError, ValueError) as exc:
            raise InvalidSpecError(f"gamma must be a sequence of numbers: {exc}") from exc
        object.__setattr__(self, "gamma", gam)
        object.__setattr__(self, "alpha", float(self.alpha))
        if len(gam) != self.n:
            raise InvalidSpecError(
                f"gamma has {len(gam)} entries but the level is n={self.n}"
            )
        if not math.isfinite(self.alpha) or any(not math.isfinite(g) for g in gam):
            raise InvalidSpecError("alpha and gamma entries must be finite")

    @property
    def s(self) -> tuple[float, ...]:
        """Partial sums s_k = gamma_1 + ... + gamma_k, k = 1..n."""
        out = []
        acc = 0.0
        for g in self.gamma:
            acc += g
            out.append(acc)
        return tuple(out)

    @property
    def sigma(self) -> tuple[float, ...]:
        """Kernel exponents sigma_k = alpha + s_k - k, k = 1..n.

        For a valid spec each sigma_k lies in (-1, 0] and the sequence is
        nonincreasing in k.  sigma_n = alpha + s_n - n is minus the order
        of the innermost (rightmost) integral factor, shifted by zero.
        """
        return tuple(self.alpha + sk - k for k, sk in enumerate(self.s, start=1))

    @property
    def trailing_order(self) -> float:
        """Order n - alpha - s_n of the innermost integral factor."""
        return self.n - self.alpha - self.s[-1]

    def to_dict(self) -> dict:
        return {"n": self.n, "alpha": self.alpha, "gamma": list(self.gamma)}

    @classmethod
    def from_dict(cls, d: dict) -> "DerivativeSpec":
        try:
            return cls(int(d["n"]), float(d["alpha"]), tuple(d["gamma"]))
        except KeyError as exc:
            raise InvalidSpecError(f"missing spec field {exc}") from exc

    def json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a spec against the admissibility constraints.

    valid            all constraints hold (within TOL slack)
    truly_nth_level  valid, alpha + s_n > n - 1, and gamma_k < 1 for k >= 2;
                     such a spec does not reduce to a lower level
    cm_admissible    valid and s_k >= k - 1 for all k; derivatives in this
                     subregion propagate complete monotonicity to
                     relaxation solutions with nonnegative coefficients
    """

    valid: bool
    truly_nth_level: bool
    cm_admissible: bool
    s: tuple[float, ...]
    sigma: tuple[float, ...]
    failures: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "truly_nth_level": self.truly_nth_level,
            "cm_admissible": self.cm_admissible,
            "s": list(self.s),
            "sigma": list(self.sigma),
            "failures": list(self.failures),
        }


def validate(spec: DerivativeSpec) -> ValidationReport:
    """Check the constraint set 0 < alpha <= 1, gamma_k >= 0, alpha + s_k <= k."""
    failures = []
    if not spec.alpha > 0.0:
        failures.append(f"alpha must be positive, got {spec.alpha:g}")
    elif spec.alpha > 1.0 + TOL:
        failures.append(f"alpha must lie in (0, 1], got {spec.alpha:g}")
    s = spec.s
    for k, (g, sk) in enumerate(zip(spec.gamma, s), start=1):
        if g < -TOL:
            failures.append(f"gamma_{k} must be >= 0, got {g:g}")
        if spec.alpha + sk > k + TOL:
            failures.append(
                f"alpha + s_{k} = {spec.alpha + sk:g} exceeds {k}"
            )
    valid = not failures
    truly = (
        valid
        and spec.alpha + s[-1] > spec.n - 1 + TOL
        and all(g < 1.0 - TOL for g in spec.gamma[1:])
    )
    cm = valid and all(sk >= k - 1 - TOL for k, sk in enumerate(s, start=1))
    return ValidationReport(valid, truly, cm, s, spec.sigma, tuple(failures))


def require_valid(spec: DerivativeSpec) -> ValidationReport:
    """validate(), raising InvalidSpecError when any constraint fails."""
    report = validate(spec)
    if not report.valid:
        raise InvalidSpecError("; ".join(report.failures))
    return report


# ---------------------------------------------------------------------------
# reduction of degenerate specs

def _reduction(spec: DerivativeSpec):
    """Reduce a valid spec until it is truly at its level or reaches n = 1.

    Two rewrites preserve the operator while lowering the level by one:

    * trailing rule: when alpha + s_n <= n - 1 the innermost pair
      (I^gn d/dx) I^(n-alpha-s_n) collapses into I^(n-1-alpha-s_{n-1})
      of the (n-1)-level spec obtained by dropping gamma_n; kernel
      direction n disappears.
    * merge rule: when gamma_k >= 1 for some k >= 2, the factor
      I^(g_{k-1}) d/dx I^(g_k) rewrites as I^(g_{k-1}+g_k-1) d/dx,
      so positions k-1 and k fuse into one factor with type
      gamma_{k-1} + gamma_k - 1; kernel direction k-1 disappears and
      the fused factor keeps direction k's exponent.

    Applied greedily, innermost first.  Returns (terminal spec,
    surviving 1-based direction indices of the original spec, notes).
    """
    gam = list(spec.gamma)
    alpha = spec.alpha
    surviving = list(range(1, spec.n + 1))
    notes = []
    while True:
        n = len(gam)
        if n == 1:
            break
        s_n = math.fsum(gam)
        if alpha + s_n <= n - 1 + TOL:
            notes.append(
                f"dropped trailing type gamma_{surviving[-1]} (alpha + s_n <= n - 1)"
            )
            del gam[-1]
            del surviving[-1]
            continue
        # largest k >= 2 with gamma_k >= 1, innermost first
        k = None
        for j in range(n, 1, -1):
            if gam[j - 1] >= 1.0 - TOL:
                k = j
                break
        if k is None:
            break
        notes.append(
            f"merged types at positions {surviving[k - 2]},{surviving[k - 1]} (gamma >= 1)"
        )
        gam[k - 2] = gam[k - 2] + gam[k - 1] - 1.0
        del gam[k - 1]
        del surviving[k - 2]
    terminal = DerivativeSpec(len(gam), alpha, tuple(gam))
    return terminal, tuple(surviving), tuple(notes)


def reduce_spec(spec: DerivativeSpec) -> DerivativeSpec:
    """Equivalent spec at the lowest level (may be the input itself)."""
    require_valid(spec)
    terminal, _, _ = _reduction(spec)
    return terminal


def surviving_directions(spec: DerivativeSpec) -> tuple[int, ...]:
    """1-based original direction indices that remain after reduction.

    The kernel of the reduced operator is spanned by the power functions
    of these directions; the dropped directions carry zero coefficient in
    every projector and solution formula.
    """
    require_valid(spec)
    _, surviving, _ = _reduction(spec)
    return surviving


# ---------------------------------------------------------------------------
# classification

class SpecKind(enum.Enum):
    RIEMANN_LIOUVILLE = "RiemannLiouville"
    CAPUTO = "Caputo"
    HILFER = "Hilfer"
    TRULY_NTH_LEVEL = "TrulyNthLevel"
    REDUCED = "Reduced"


@dataclass(frozen=True)
class SpecClass:
    """Classification of a spec against the named operator families.

    kind         which family the spec (after reduction) belongs to
    equivalent   terminal spec of the reduction; equals the input when
                 the spec is already truly at its level
    hilfer_type  the single type parameter for one-level kinds, else None
    notes        human-readable record of the reduction steps taken
    """

    kind: SpecKind
    equivalent: DerivativeSpec
    hilfer_type: float | None = None
    notes: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        if self.kind is SpecKind.RIEMANN_LIOUVILLE:
            return "RiemannLiouville"
        if self.kind is SpecKind.CAPUTO:
            return "Caputo"
        if self.kind is SpecKind.HILFER:
            return f"Hilfer({self.hilfer_type:g})"
        if self.kind is SpecKind.TRULY_NTH_LEVEL:
            return f"TrulyNthLevel(n={self.equivalent.n})"
        return f"ReducedToLevel(n={self.equivalent.n})"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "label": self.label,
            "equivalent": self.equivalent.to_dict(),
            "hilfer_type": self.hilfer_type,
            "notes": list(self.notes),
        }


def classify(spec: DerivativeSpec) -> SpecClass:
    """Name the operator family of a valid spec.

    One-level specs (directly or after reduction) split by their type
    parameter: gamma_1 = 0 is Riemann-Liouville, gamma_1 = 1 - alpha is
    Caputo, anything between is the Hilfer derivative of that type.
    A spec that survives reduction at level n >= 2 is truly nth-level;
    one that reduces to an intermediate level 2 <= n' < n is Reduced.
    Idempotent: classifying the equivalent spec gives the same kind.
    """
    require_valid(spec)
    terminal, _, notes = _reduction(spec)
    if terminal.n == 1:
        g1 = terminal.gamma[0]
        if abs(g1) <= TOL:
            return SpecClass(SpecKind.RIEMANN_LIOUVILLE, terminal, 0.0, notes)
        if abs(g1 - (1.0 - terminal.alpha)) <= TOL:
            return SpecClass(SpecKind.CAPUTO, terminal, g1, notes)
        return SpecClass(SpecKind.HILFER, terminal, g1, notes)
    if terminal.n == spec.n:
        return SpecClass(SpecKind.TRULY_NTH_LEVEL, terminal, None, notes)
    return SpecClass(SpecKind.REDUCED, terminal, None, notes)


# ---------------------------------------------------------------------------
# the n = 2 parameter triangle

class RegionLabel(enum.Enum):
    RL_VERTEX = "RL-vertex"
    CAPUTO_VERTEX = "Caputo-vertex"
    TRULY_2L_VERTEX = "Truly2L-vertex"
    HILFER_EDGE = "Hilfer-edge"
    GAMMA1_MAX_EDGE = "gamma1-max-edge"
    HYPOTENUSE_EDGE = "hypotenuse-edge"
    INTERIOR = "interior"
    OUTSIDE = "outside"


def triangle_region(alpha: float, gamma: tuple[float, float]) -> RegionLabel:
    """Locate an n = 2 type vector inside the admissible triangle.

    For level 2 the constraints carve out the closed triangle

        0 <= gamma_1 <= 1 - alpha,  gamma_1 + gamma_2 >= 1,  gamma_2 <= 1

    with vertices (0, 1) Riemann-Liouville, (1-alpha, 1) Caputo, and
    (1-alpha, alpha) the extreme truly-two-level point.  Vertices take
    precedence over edges, edges over the interior; all comparisons use
    the package TOL.  Points violating any constraint are OUTSIDE.
    Note the triangle covers the specs with alpha + s_2 > 1 (the rest of
    the admissible square reduces to level one by the trailing rule);
    its gamma_2 = 1 edge holds the specs equivalent to one-level Hilfer
    derivatives of type gamma_1.
    """
    if not (0.0 < alpha <= 1.0 + TOL):
        return RegionLabel.OUTSIDE
    g1, g2 = float(gamma[0]), float(gamma[1])
    b = 1.0 - alpha
    if g1 < -TOL or g1 > b + TOL or g2 > 1.0 + TOL or g1 + g2 < 1.0 - TOL or g2 < -TOL:
        return RegionLabel.OUTSIDE
    at_left = g1 <= TOL
    at_right = abs(g1 - b) <= TOL
    at_top = abs(g2 - 1.0) <= TOL
    on_hyp = abs(g1 + g2 - 1.0) <= TOL
    if at_left and at_top:
        return RegionLabel.RL_VERTEX
    if at_right and at_top:
        return RegionLabel.CAPUTO_VERTEX
    if at_right and abs(g2 - alpha) <= TOL:
        return RegionLabel.TRULY_2L_VERTEX
    if at_top:
        return RegionLabel.HILFER_EDGE
    if at_right:
        return RegionLabel.GAMMA1_MAX_EDGE
    if on_hyp or at_left:
        # at_left with g2 < 1 forces g1 + g2 ~ 1 by the constraints
        return RegionLabel.HYPOTENUSE_EDGE
    return RegionLabel.INTERIOR


# ---------------------------------------------------------------------------
# kernel and Laplace shape

@dataclass(frozen=True)
class ProjectorCoeffs:
    """Coefficients of the kernel projection of a function.

    p[k] multiplies x^sigma[k]; both tuples run over the surviving
    directions of the spec the projection was computed for.
    """

    p: tuple[float, ...]
    sigma: tuple[float, ...]

    def to_dict(self) -> dict:
        return {"p": list(self.p), "sigma": list(self.sigma)}


@dataclass(frozen=True)
class LaplaceForm:
    """Shape of the Laplace transform of D y for y with kernel data a.

    transform(D y)(lam) = lam^alpha * Y(lam) - sum_k a_k lam^(k - s_k - 1),
    stored as (coefficient, exponent) pairs.  Directions killed by
    reduction carry coefficient 0 but keep their slot, so the tuple
    always has n entries.
    """

    alpha: float
    terms: tuple[tuple[float, float], ...]

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "terms": [{"coeff": c, "exponent": e} for c, e in self.terms],
        }


def kernel_basis(spec: DerivativeSpec):
    """Power functions x^sigma_k spanning the kernel of the operator.

    Returned as a tuple of PowerSum objects, one per surviving direction,
    ordered by direction index (exponents strictly decreasing for a
    truly nth-level spec).  The kernel dimension equals the terminal
    level of the reduction.
    """
    from . import powerlaw

    require_valid(spec)
    terminal, _, _ = _reduction(spec)
    return tuple(powerlaw.PowerSum.monomial(1.0, sig) for sig in terminal.sigma)


def laplace_form(spec: DerivativeSpec, a: tuple[float, ...]) -> LaplaceForm:
    """Laplace-domain initial-value terms of the operator applied to y.

    a_k is the value at 0+ of the kth intermediate composition (the
    quantity whose product with 1/Gamma(sigma_k+1) gives the projector
    coefficient).  Exponents are k - s_k - 1 = -1 - (sigma_k - alpha),
    all in [alpha - 1, n - 1].  Entries for directions removed by
    reduction are forced to coefficient 0.
    """
    require_valid(spec)
    if len(a) != spec.n:
        raise InvalidSpecError(
            f"expected {spec.n} kernel values, got {len(a)}"
        )
    alive = set(surviving_directions(spec))
    s = spec.s
    terms = tuple(
        (float(a[k - 1]) if k in alive else 0.0, k - s[k - 1] - 1.0)
        for k in range(1, spec.n + 1)
    )
    return LaplaceForm(spec.alpha, terms)
