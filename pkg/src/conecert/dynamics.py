"""Decision engine for cone-preserving linear maps.

Given an invertible rational map that preserves a pointed cone in both
directions, this module decides whether the map admits an interior
eigenvector with a positive rational scaling factor q, and assembles a
certificate: the scaling factor, the witness vector, the spectral projector
onto the q-eigenspace, and the two spectral flags (all eigenvalue moduli
equal q, and semisimplicity) that characterize power boundedness of the
normalized iterates in both directions.

The degree calculus helpers (q^dim relations, the product formula across an
equivariant dominant map, and the invariant-subvariety contradiction on
covered-by-torus spaces) live here as exact big-integer arithmetic.
"""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cones import ConeLike, ConeOracle, Membership, PolyhedralCone, membership
from .errors import (
    DimensionMismatchError,
    InternalCheckError,
    InvarianceNotVerifiedError,
    IrrationalCandidateOnlyError,
    NoIntegerRootError,
    NotPowerBoundedError,
    RankDeficientError,
    ShapeMismatchError,
    SingularMatrixError,
)
from .exactalg import (
    QMatrix,
    QPoly,
    char_poly,
    min_poly,
    modulus_equals,
    primitive_vector,
    roots_with_multiplicity,
    spectral_projector,
    vec_add,
    vec_scale,
    vector,
)
from .exactalg.qpoly import _frac

Vector = tuple[Fraction, ...]

ORACLE_BATTERY_SIZE = 32
ORACLE_BATTERY_SEED = 90017
WITNESS_RETRY_BUDGET = 16


# -- invariance -----------------------------------------------------------------


def verify_invariance(m: QMatrix, c: PolyhedralCone) -> bool:
    """Exact check that m and its inverse both map the cone into itself."""
    if not m.is_square:
        raise DimensionMismatchError("map must be square")
    if m.cols != c.ambient_dim:
        raise DimensionMismatchError("map and cone dimensions differ")
    if m.det() == 0:
        raise SingularMatrixError("cone map must be invertible")
    minv = m.inverse()
    for g in c.generators:
        if membership(c, m.apply(g)) is Membership.OUTSIDE:
            return False
        if membership(c, minv.apply(g)) is Membership.OUTSIDE:
            return False
    return True


def _oracle_invariance_battery(m: QMatrix, oracle: ConeOracle,
                               seed: int = ORACLE_BATTERY_SEED,
                               count: int = ORACLE_BATTERY_SIZE) -> bool:
    """Spot-check invariance on the interior sample and a seeded point battery."""
    if m.det() == 0:
        raise SingularMatrixError("cone map must be invertible")
    minv = m.inverse()
    points = [oracle.interior_sample()]
    points += oracle.sample_points(random.Random(seed), count)
    for p in points:
        if not oracle.contains(m.apply(p)):
            return False
        if not oracle.contains(minv.apply(p)):
            return False
    return True


@dataclass(frozen=True)
class ConeMap:
    """An invertible map together with the cone it preserves.

    `invariance` records how invariance was established: "generators-exact"
    for polyhedral cones (checked on every generator, both directions) or
    "sampled-battery" for oracle cones (interior sample plus a documented
    battery of deterministic pseudo-random cone points).
    """

    matrix: QMatrix
    cone: ConeLike
    invariance: Optional[str]

    @staticmethod
    def create(matrix: QMatrix, cone: ConeLike) -> "ConeMap":
        if isinstance(cone, PolyhedralCone):
            ok = verify_invariance(matrix, cone)
            return ConeMap(matrix, cone, "generators-exact" if ok else None)
        if matrix.rows != cone.dim:
            raise DimensionMismatchError("map and oracle dimensions differ")
        ok = _oracle_invariance_battery(matrix, cone)
        return ConeMap(matrix, cone, "sampled-battery" if ok else None)

    @property
    def invariance_checked(self) -> bool:
        return self.invariance is not None


# -- spectral power boundedness ----------------------------------------------------


def is_power_bounded(m: QMatrix, q) -> bool:
    """Whether sup over all integers i of |m^i| / q^i is finite.

    Spectrally characterized: the minimal polynomial must be square free
    (the map is diagonalizable) and every eigenvalue must have modulus
    exactly q, certified through the algebraic-number kernel.
    """
    q = _frac(q)
    if q <= 0:
        raise ValueError("q must be positive")
    if m.det() == 0:
        raise SingularMatrixError("power boundedness needs an invertible map")
    mu = min_poly(m)
    if not mu.is_square_free():
        return False
    return all(modulus_equals(root, q) for root, _ in roots_with_multiplicity(mu))


# -- polarization decision ------------------------------------------------------------


class PolarizationStatus(enum.Enum):
    POLARIZED = "polarized"
    NOT_POLARIZED = "not_polarized"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class PolarizationCertificate:
    """Witnessed verdict: matrix * witness = q * witness with witness interior.

    The projector is the exact spectral projector onto the q-eigenspace; the
    two flags restate the spectral facts that make the normalized iterates
    bounded in both directions. `q_is_integer` is checked against the
    integrality of the map rather than assumed. For a cone spanning a proper
    subspace, the projector acts on span coordinates and the eigenvalues
    transverse to the span are reported via `transverse_char_poly` without
    further interpretation.
    """

    q: Fraction
    q_is_integer: bool
    witness: Vector
    projector: QMatrix
    eigenvalue_moduli_all_q: bool
    semisimple: bool
    invariance: str
    cone_kind: str
    transverse_char_poly: Optional[QPoly] = None


@dataclass(frozen=True)
class PolarizationResult:
    status: PolarizationStatus
    certificate: Optional[PolarizationCertificate] = None
    reason: str = ""

    @property
    def is_polarized(self) -> bool:
        return self.status is PolarizationStatus.POLARIZED


def _restrict_to_span(m: QMatrix, cone: PolyhedralCone) -> tuple[QMatrix, Optional[QPoly]]:
    """Matrix of m on the cone's span, plus the transverse factor of char(m)."""
    if cone.is_full_dimensional:
        return m, None
    emb = QMatrix.from_columns([vector(b) for b in cone.span_basis])
    cols = []
    for j in range(emb.cols):
        image = m.apply(emb.column(j))
        coeff = emb.solve(image)
        if coeff is None:
            raise InvarianceNotVerifiedError("map does not preserve the cone's span")
        cols.append(coeff)
    m_span = QMatrix.from_columns(cols)
    transverse = char_poly(m).exact_div(char_poly(m_span))
    return m_span, transverse


def interior_eigenvector(cm: ConeMap, q) -> Optional[Vector]:
    """A strictly interior eigenvector for q, or None.

    The spectral projector applied to the interior sample is tried first.
    For polyhedral cones a None answer is conclusive: if the projected
    sample is not interior then the q-eigenspace misses the relative
    interior entirely, because a facet vanishing on the projected sample
    vanishes on the projection of every cone point. For oracle cones the
    search perturbs the sample a bounded number of times and a None answer
    only reports that the budget ran out.
    """
    q = _frac(q)
    if not cm.invariance_checked:
        raise InvarianceNotVerifiedError("cone invariance has not been verified")

    if isinstance(cm.cone, PolyhedralCone):
        cone = cm.cone
        m_span, _ = _restrict_to_span(cm.matrix, cone)
        if not is_power_bounded(m_span, q):
            raise NotPowerBoundedError(f"normalized iterates unbounded at q = {q}")
        proj = spectral_projector(m_span, q)
        emb = QMatrix.from_columns([vector(b) for b in cone.span_basis])
        sample_local = emb.solve(cone.interior_sample())
        candidate = emb.apply(proj.apply(sample_local))
        if membership(cone, candidate) is Membership.INTERIOR:
            return primitive_vector(candidate)
        return None

    oracle = cm.cone
    if not is_power_bounded(cm.matrix, q):
        raise NotPowerBoundedError(f"normalized iterates unbounded at q = {q}")
    proj = spectral_projector(cm.matrix, q)
    sample = oracle.interior_sample()
    candidate = proj.apply(sample)
    if oracle.strictly_contains(candidate):
        return primitive_vector(candidate)
    dim = oracle.dim
    for k in range(1, WITNESS_RETRY_BUDGET + 1):
        basis_vec = tuple(Fraction(1 if i == (k - 1) % dim else 0) for i in range(dim))
        perturbed = vec_add(sample, vec_scale(basis_vec, Fraction(1, 2 ** k)))
        candidate = proj.apply(perturbed)
        if oracle.strictly_contains(candidate):
            return primitive_vector(candidate)
    return None


def _positive_rational_eigenvalues(cp: QPoly) -> tuple[list[Fraction], Optional[QPoly]]:
    """Positive rational roots ascending, plus a positive irrational real root's
    minimal polynomial if one exists."""
    rationals = []
    irrational_witness = None
    for root, _ in roots_with_multiplicity(cp):
        if root.is_rational:
            if root.rational_value > 0:
                rationals.append(root.rational_value)
        elif root.is_real and irrational_witness is None:
            # an irrational root is never zero, so refinement separates its sign
            r = root
            while r.box[0] < 0 < r.box[1]:
                r = r.refine()
            if r.box[0] >= 0:
                irrational_witness = root.minpoly
    return sorted(rationals), irrational_witness


def decide_polarization(cm: ConeMap) -> PolarizationResult:
    """Decide whether the cone map has an interior eigenvector, with certificate.

    Candidate scaling factors are the positive rational eigenvalues of the
    map (restricted to the cone's span), tried in ascending order; at most
    one of them can make the map power bounded. When a positive real
    eigenvalue exists but none of them is rational, the case is surfaced as
    IrrationalCandidateOnly rather than silently dropped.
    """
    if not cm.invariance_checked:
        raise InvarianceNotVerifiedError("cone invariance has not been verified")

    polyhedral = isinstance(cm.cone, PolyhedralCone)
    if polyhedral:
        m_eff, transverse = _restrict_to_span(cm.matrix, cm.cone)
        cone_kind = "polyhedral"
    else:
        m_eff, transverse = cm.matrix, None
        cone_kind = cm.cone.description

    cp = char_poly(m_eff)
    candidates, irrational = _positive_rational_eigenvalues(cp)

    bounded_q = None
    for q in candidates:
        if is_power_bounded(m_eff, q):
            bounded_q = q
            break

    if bounded_q is None:
        if irrational is not None:
            raise IrrationalCandidateOnlyError(irrational)
        return PolarizationResult(
            PolarizationStatus.NOT_POLARIZED,
            reason="no positive rational eigenvalue makes the map power bounded")

    witness = interior_eigenvector(cm, bounded_q)
    if witness is None:
        if polyhedral:
            return PolarizationResult(
                PolarizationStatus.NOT_POLARIZED,
                reason=f"eigenspace of q = {bounded_q} misses the cone interior "
                       f"(exact polyhedral check)")
        return PolarizationResult(
            PolarizationStatus.INCONCLUSIVE,
            reason=f"power bounded at q = {bounded_q} but the witness search "
                   f"budget was exhausted")

    projector = spectral_projector(m_eff, bounded_q)
    q_is_integer = bounded_q.denominator == 1
    if cm.matrix.is_integer and not q_is_integer:  # pragma: no cover
        raise InternalCheckError(
            "integer pullback produced a non-integer scaling factor")
    cert = PolarizationCertificate(
        q=bounded_q,
        q_is_integer=q_is_integer,
        witness=witness,
        projector=projector,
        eigenvalue_moduli_all_q=True,
        semisimple=True,
        invariance=cm.invariance,
        cone_kind=cone_kind,
        transverse_char_poly=transverse,
    )
    _check_certificate(cm, cert, m_eff)
    return PolarizationResult(PolarizationStatus.POLARIZED, certificate=cert)


def _check_certificate(cm: ConeMap, cert: PolarizationCertificate,
                       m_eff: QMatrix) -> None:
    """Re-verify the certificate identities exactly before returning it."""
    m = cm.matrix
    if m.apply(cert.witness) != vec_scale(cert.witness, cert.q):
        raise InternalCheckError("witness is not an eigenvector")
    if isinstance(cm.cone, PolyhedralCone):
        if membership(cm.cone, cert.witness) is not Membership.INTERIOR:
            raise InternalCheckError("witness is not interior")
    else:
        if not cm.cone.strictly_contains(cert.witness):
            raise InternalCheckError("witness is not interior")
    p = cert.projector
    if p * p != p:
        raise InternalCheckError("projector is not idempotent")
    if m_eff * p != p * m_eff or m_eff * p != p.scale(cert.q):
        raise InternalCheckError("projector does not intertwine the map at q")


# -- degree calculus -------------------------------------------------------------------


def integer_nth_root(value: int, n: int) -> Optional[int]:
    """Exact n-th root of a positive integer, or None."""
    if value < 1 or n < 1:
        return None
    lo, hi = 1, max(2, value)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid ** n
        if p == value:
            return mid
        if p < value:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def q_from_degree(deg: int, n: int) -> int:
    """The integer q with q^n = deg (deg f = q^dim for a polarized map)."""
    if deg < 1 or n < 1:
        raise ValueError("degree and dimension must be positive")
    q = integer_nth_root(deg, n)
    if q is None:
        raise NoIntegerRootError(f"{deg} is not a perfect {n}-th power")
    return q


def restricted_degree(q: int, dim_z: int) -> int:
    """Degree of the restriction to an invariant subvariety: q^dim_z."""
    if q < 1:
        raise ValueError("q must be positive")
    if dim_z < 0:
        raise ValueError("dimension must be nonnegative")
    return q ** dim_z


def product_formula_check(dim_x: int, deg_f: int, dim_y: int, deg_g: int) -> bool:
    """Whether deg_f^dim_y = deg_g^dim_x, the degree relation across an
    equivariant dominant map; a point base (dim_y = 0, deg_g = 1) passes."""
    if dim_x < 0 or dim_y < 0 or deg_f < 1 or deg_g < 1:
        raise ValueError("dimensions must be nonnegative and degrees positive")
    return deg_f ** dim_y == deg_g ** dim_x


class AbelianInvariantVerdict(enum.Enum):
    CONSISTENT = "consistent"
    CONTRADICTION = "contradiction"


def abelian_invariant_check(q: int, dim_x: int, dim_z: int) -> AbelianInvariantVerdict:
    """Degree arithmetic behind 'no invariant proper subvariety':

    on a space covered by a torus the restriction to an invariant subvariety
    keeps full degree q^dim_x, but an ample restriction forces q^dim_z.
    Those agree only at q = 1, so q > 1 is a contradiction.
    """
    if not 0 <= dim_z < dim_x:
        raise ValueError("need 0 <= dim_z < dim_x")
    if q < 1:
        raise ValueError("q must be positive")
    full = q ** dim_x
    restricted = q ** dim_z
    return (AbelianInvariantVerdict.CONSISTENT if full == restricted
            else AbelianInvariantVerdict.CONTRADICTION)


def verify_intertwining(m_x: QMatrix, p: QMatrix, m_y: QMatrix) -> bool:
    """Whether m_x p = p m_y exactly for an injection p of the smaller space."""
    if p.rows != m_x.rows or p.cols != m_y.rows or not m_x.is_square or not m_y.is_square:
        raise ShapeMismatchError("incompatible shapes for intertwining")
    if p.rank() < p.cols:
        raise RankDeficientError("p must have full column rank")
    return m_x * p == p * m_y


def product_endo_degree(a: QMatrix) -> int:
    """Topological degree of the torus-product endomorphism given by an
    integer matrix: det(a) squared."""
    if not a.is_square:
        raise ShapeMismatchError("endomorphism matrix must be square")
    if not a.is_integer:
        raise ValueError("endomorphism matrix must be integral")
    d = a.det()
    if d == 0:
        raise SingularMatrixError("endomorphism matrix must be invertible")
    return int(d * d)


@dataclass(frozen=True)
class DegreeLedger:
    """The exact bookkeeping deg_f = q^dim_x for a polarized map."""

    dim_x: int
    deg_f: int
    q: int

    def __post_init__(self):
        if self.dim_x < 0 or self.deg_f < 1 or self.q < 1:
            raise ValueError("invalid degree data")
        if self.q ** self.dim_x != self.deg_f:
            raise ValueError(f"degree {self.deg_f} is not q^dim = "
                             f"{self.q}^{self.dim_x}")
