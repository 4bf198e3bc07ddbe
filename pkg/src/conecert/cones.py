"""Finitely generated convex cones with exact rational arithmetic.

A cone is built from generators by the double description method, which
yields its facet normals; pointedness is enforced (a cone containing a line
is rejected) and generator sets that span a proper subspace are handled by
working inside their rational span. Everything except the diagnostic
Euclidean distance estimate is exact.
"""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .errors import (
    CapExceededError,
    ContainsLineError,
    DimensionMismatchError,
    EmptyInputError,
    ForeignFaceError,
    InternalCheckError,
    NonConvergenceError,
    NotInConeError,
)
from .exactalg import (
    QMatrix,
    char_poly,
    dot,
    is_zero_vector,
    primitive_vector,
    vec_add,
    vector,
)
from .exactalg.qpoly import _frac

Vector = tuple[Fraction, ...]

MAX_AMBIENT_DIM = 8
MAX_GENERATORS = 64


class Membership(enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


# -- double description core -----------------------------------------------------


def _dual_extreme_rays(constraints: Sequence[Vector], dim: int) -> list[Vector]:
    """Extreme rays of {y : <a, y> >= 0 for all a in constraints}.

    Incremental double description with the combinatorial adjacency test.
    Requires the constraint vectors to span the space, which makes the dual
    cone pointed and every intermediate cone pointed as well.
    """
    # initial simplicial cone from a maximal independent constraint subset
    basis_idx: list[int] = []
    probe: list[Vector] = []
    for i, a in enumerate(constraints):
        cand = probe + [a]
        if QMatrix.from_rows(cand).rank() == len(cand):
            basis_idx.append(i)
            probe = cand
        if len(basis_idx) == dim:
            break
    if len(basis_idx) < dim:
        raise InternalCheckError("constraints do not span the space")

    binv = QMatrix.from_rows([constraints[i] for i in basis_idx]).inverse()
    rays = [primitive_vector(binv.column(j)) for j in range(dim)]
    processed = list(basis_idx)

    def zero_set(r: Vector) -> frozenset[int]:
        return frozenset(i for i in processed if dot(constraints[i], r) == 0)

    for i, a in enumerate(constraints):
        if i in basis_idx:
            continue
        processed.append(i)
        vals = [dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        zero = [r for r, v in zip(rays, vals) if v == 0]
        neg = [(r, v) for r, v in zip(rays, vals) if v < 0]
        if not neg:
            continue
        zsets = {r: zero_set(r) for r in rays}
        new: list[Vector] = []
        seen: set[Vector] = set(zero)
        for rp in pos:
            vp = dot(a, rp)
            for rn, vn in neg:
                common = zsets[rp] & zsets[rn]
                if any(r != rp and r != rn and common <= zsets[r] for r in rays):
                    continue
                cand = primitive_vector(vec_add(vec_scale_ray(rn, vp), vec_scale_ray(rp, -vn)))
                if cand not in seen:
                    seen.add(cand)
                    new.append(cand)
        rays = pos + zero + new
    return sorted(set(rays))


def vec_scale_ray(r: Vector, c: Fraction) -> Vector:
    return tuple(x * c for x in r)


# -- cone types --------------------------------------------------------------------


@dataclass(frozen=True)
class PolyhedralCone:
    """A pointed cone, full dimensional inside the span of its generators.

    `facet_normals` are primitive integer vectors in ambient coordinates;
    together with membership in the span they cut out exactly the cone.
    """

    ambient_dim: int
    generators: tuple[Vector, ...]
    facet_normals: tuple[Vector, ...]
    span_basis: tuple[Vector, ...]      # columns of the embedding, ambient coords
    extreme_ray_indices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.span_basis)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def span_coordinates(self, x: Sequence) -> Optional[Vector]:
        """Coordinates of x in the span basis, or None if x is outside the span."""
        x = vector(x)
        if len(x) != self.ambient_dim:
            raise DimensionMismatchError(
                f"expected dimension {self.ambient_dim}, got {len(x)}")
        emb = QMatrix.from_columns(list(self.span_basis))
        return emb.solve(x)

    def embed(self, xi: Sequence) -> Vector:
        emb = QMatrix.from_columns(list(self.span_basis))
        return emb.apply(xi)

    def interior_sample(self) -> Vector:
        """Sum of the primitive generators; a canonical relative-interior point."""
        acc = tuple(Fraction(0) for _ in range(self.ambient_dim))
        for g in self.generators:
            acc = vec_add(acc, primitive_vector(g))
        return acc

    def contains(self, x: Sequence) -> bool:
        return membership(self, x) is not Membership.OUTSIDE

    def strictly_contains(self, x: Sequence) -> bool:
        return membership(self, x) is Membership.INTERIOR


@dataclass(frozen=True)
class Face:
    """A face of a polyhedral cone, recorded by generators and active facets.

    The face equals the parent cone intersected with the kernels of its
    active facet normals; `generator_indices` lists exactly the parent
    generators lying on it.
    """

    parent: PolyhedralCone
    generator_indices: tuple[int, ...]
    active_facets: tuple[int, ...]

    @property
    def is_improper(self) -> bool:
        return not self.active_facets

    def generators(self) -> tuple[Vector, ...]:
        return tuple(self.parent.generators[i] for i in self.generator_indices)

    @property
    def dim(self) -> int:
        gens = self.generators()
        if not gens:
            return 0
        return QMatrix.from_rows(list(gens)).rank()


@dataclass
class ConeOracle:
    """Membership oracle for cones with no finite facet description.

    `contains` / `strictly_contains` answer exact membership and relative
    interior membership; `interior_sample` is a point with
    strictly_contains(interior_sample()) true. `sample_points` produces a
    deterministic battery of cone points for invariance spot checks.
    """

    dim: int
    contains: Callable[[Sequence], bool]
    strictly_contains: Callable[[Sequence], bool]
    interior_sample: Callable[[], Vector]
    sample_points: Callable[[random.Random, int], list[Vector]]
    description: str = "oracle"


ConeLike = Union[PolyhedralCone, ConeOracle]


# -- construction ---------------------------------------------------------------------


def build_cone(generators: Sequence[Sequence], *,
               max_dim: int = MAX_AMBIENT_DIM,
               max_generators: int = MAX_GENERATORS) -> PolyhedralCone:
    """Cone generated by the given rational vectors.

    Facet normals come from double description; the construction also
    verifies the round trip (the inequality system cuts out exactly the
    generated cone) and rejects cones that contain a line.
    """
    gens = [vector(g) for g in generators]
    gens = [g for g in gens if not is_zero_vector(g)]
    if not gens:
        raise EmptyInputError("need at least one nonzero generator")
    ambient = len(gens[0])
    if any(len(g) != ambient for g in gens):
        raise DimensionMismatchError("generators of mixed dimension")
    if ambient > max_dim:
        raise CapExceededError(f"ambient dimension {ambient} exceeds cap {max_dim}")
    if len(gens) > max_generators:
        raise CapExceededError(f"{len(gens)} generators exceed cap {max_generators}")

    # work inside the rational span
    gen_matrix = QMatrix.from_rows(gens)
    echelon, pivots = gen_matrix._echelon()
    d = len(pivots)
    span_basis = tuple(tuple(echelon[r][c] for c in range(ambient)) for r in range(d))
    emb = QMatrix.from_columns([vector(b) for b in span_basis])
    local = [emb.solve(g) for g in gens]
    if any(loc is None for loc in local):  # pragma: no cover
        raise InternalCheckError("generator outside its own span")

    normals_local = _dual_extreme_rays(local, d)
    if not normals_local or QMatrix.from_rows(normals_local).rank() < d:
        raise ContainsLineError("cone contains a line")

    # round trip: extreme rays of the inequality system must be generator rays
    rays_local = _dual_extreme_rays(normals_local, d)
    prim_local = [primitive_vector(g) for g in local]
    extreme_idx = []
    for r in rays_local:
        try:
            extreme_idx.append(prim_local.index(r))
        except ValueError:
            raise InternalCheckError(
                "double description round trip produced a foreign ray") from None
    # lift normals to ambient coordinates: n_amb = E (E^T E)^{-1} n_loc
    lift = emb * (emb.transpose() * emb).inverse()
    normals = tuple(primitive_vector(lift.apply(n)) for n in normals_local)

    cone = PolyhedralCone(
        ambient_dim=ambient,
        generators=tuple(gens),
        facet_normals=normals,
        span_basis=span_basis,
        extreme_ray_indices=tuple(sorted(extreme_idx)),
    )
    for g in gens:
        if membership(cone, g) is Membership.OUTSIDE:  # pragma: no cover
            raise InternalCheckError("generator violates a computed facet")
    return cone


def membership(c: PolyhedralCone, x: Sequence) -> Membership:
    """Classify x against the cone; Interior means relative interior."""
    xi = c.span_coordinates(x)
    if xi is None:
        return Membership.OUTSIDE
    x = vector(x)
    products = [dot(n, x) for n in c.facet_normals]
    if any(p < 0 for p in products):
        return Membership.OUTSIDE
    if all(p > 0 for p in products):
        return Membership.INTERIOR
    return Membership.BOUNDARY


# -- faces ------------------------------------------------------------------------------


def _active_facets_at(c: PolyhedralCone, x: Vector) -> tuple[int, ...]:
    return tuple(j for j, n in enumerate(c.facet_normals) if dot(n, x) == 0)


def _generators_killed_by(c: PolyhedralCone, facets: Sequence[int]) -> tuple[int, ...]:
    out = []
    for i, g in enumerate(c.generators):
        if all(dot(c.facet_normals[j], g) == 0 for j in facets):
            out.append(i)
    return tuple(out)


def minimal_extremal_face(c: PolyhedralCone, sub_generators: Sequence[Sequence]) -> Face:
    """The unique minimal face of c containing the given subcone.

    The facets active on the sum of the sub-generators (a relative interior
    point of the subcone) are exactly the facets active on the whole
    subcone; the face they cut out is the minimal one.
    """
    subs = [vector(v) for v in sub_generators]
    if not subs:
        raise EmptyInputError("need at least one sub-generator")
    for v in subs:
        if membership(c, v) is Membership.OUTSIDE:
            raise NotInConeError(f"sub-generator {v} lies outside the cone")
    total = subs[0]
    for v in subs[1:]:
        total = vec_add(total, v)
    active = _active_facets_at(c, total)
    gens = _generators_killed_by(c, active)
    return Face(parent=c, generator_indices=gens, active_facets=active)


def enumerate_faces(c: PolyhedralCone) -> list[Face]:
    """All faces (including the apex and the cone itself), deterministic order.

    Enumerates generator subsets and closes each one under the active-facet
    correspondence; faces are ordered by (dimension, generator index list).
    """
    n = len(c.generators)
    if n > 16:
        raise CapExceededError("face enumeration capped at 16 generators")
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    for size in range(n + 1):
        for subset in itertools.combinations(range(n), size):
            sel = [j for j, nrm in enumerate(c.facet_normals)
                   if all(dot(nrm, c.generators[i]) == 0 for i in subset)]
            gens = _generators_killed_by(c, sel)
            if gens not in found:
                found[gens] = tuple(sel)
    faces = [Face(parent=c, generator_indices=g, active_facets=a)
             for g, a in found.items()]
    faces.sort(key=lambda f: (f.dim, f.generator_indices))
    return faces


def _subcone_contains(vs: Sequence[Vector], x: Vector) -> bool:
    """Exact membership of x in cone(vs), via a freshly built subcone."""
    nonzero = [v for v in vs if not is_zero_vector(v)]
    if not nonzero:
        return is_zero_vector(x)
    sub = build_cone(nonzero)
    return membership(sub, x) is not Membership.OUTSIDE


def is_extremal_face(c: PolyhedralCone, f: Union[Face, Sequence[Sequence]],
                     *, pair_checks: int = 32, seed: int = 7) -> bool:
    """Whether f is an extremal face of c (u + v in f forces u, v in f).

    Accepts either a Face of c or an arbitrary proposed subcone given by
    generators. The verdict is certified through the active-facet
    characterization; randomized generator-pair tests are run as a redundant
    property check and any disagreement is an internal error.
    """
    if isinstance(f, Face):
        if f.parent is not c:
            raise ForeignFaceError("face belongs to a different cone")
        gens = list(f.generators())
        certified = (_generators_killed_by(c, f.active_facets) == f.generator_indices
                     and _active_facets_at_all(c, gens) == tuple(f.active_facets))
    else:
        gens = [vector(v) for v in f]
        for v in gens:
            if membership(c, v) is Membership.OUTSIDE:
                raise NotInConeError(f"proposed face generator {v} outside the cone")
        minimal = minimal_extremal_face(c, gens)
        # f is a face iff it coincides with the minimal face containing it
        certified = all(_subcone_contains(gens, c.generators[i])
                        for i in minimal.generator_indices)

    # redundant extremality probe on random cone points
    rng = random.Random(seed)
    if gens:
        for _ in range(pair_checks):
            u = _random_cone_point(c, rng)
            v = _random_cone_point(c, rng)
            if _subcone_contains(gens, vec_add(u, v)):
                if not (_subcone_contains(gens, u) and _subcone_contains(gens, v)):
                    if certified:
                        raise InternalCheckError(
                            "pair test contradicts the facet characterization")
                    return False
    return certified


def _active_facets_at_all(c: PolyhedralCone, points: Sequence[Vector]) -> tuple[int, ...]:
    return tuple(j for j, n in enumerate(c.facet_normals)
                 if all(dot(n, p) == 0 for p in points))


def _random_cone_point(c: PolyhedralCone, rng: random.Random) -> Vector:
    acc = tuple(Fraction(0) for _ in range(c.ambient_dim))
    for g in c.generators:
        acc = vec_add(acc, vec_scale_ray(g, Fraction(rng.randrange(0, 4))))
    return acc


# -- diagnostic distance ------------------------------------------------------------------


def distance_point_to_cone(c: PolyhedralCone, x: Sequence, tol: float,
                           max_iterations: int = 200_000) -> float:
    """Euclidean distance from x to the cone, within absolute tolerance tol.

    Dykstra's alternating projections on the facet half-spaces and the span
    subspace. Float based and diagnostic only; never feeds a certified
    verdict.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = [float(_frac(v)) for v in x]
    if len(x) != c.ambient_dim:
        raise DimensionMismatchError("point dimension mismatch")

    normals = [[float(v) for v in n] for n in c.facet_normals]
    # orthonormal basis of the span for the subspace projection
    basis: list[list[float]] = []
    for b in c.span_basis:
        vb = [float(v) for v in b]
        for e in basis:
            s = sum(p * q for p, q in zip(vb, e))
            vb = [p - s * q for p, q in zip(vb, e)]
        norm = sum(p * p for p in vb) ** 0.5
        if norm > 1e-12:
            basis.append([p / norm for p in vb])

    sets: list[Callable[[list[float]], list[float]]] = []

    def project_span(p: list[float]) -> list[float]:
        out = [0.0] * len(p)
        for e in basis:
            s = sum(a * b for a, b in zip(p, e))
            out = [o + s * b for o, b in zip(out, e)]
        return out

    sets.append(project_span)
    for n in normals:
        nn = sum(v * v for v in n)

        def project_halfspace(p: list[float], n=n, nn=nn) -> list[float]:
            s = sum(a * b for a, b in zip(p, n))
            if s >= 0:
                return p
            return [a - (s / nn) * b for a, b in zip(p, n)]

        sets.append(project_halfspace)

    y = list(x)
    corrections = [[0.0] * len(x) for _ in sets]
    last = None
    iterations = 0
    while iterations < max_iterations:
        moved = 0.0
        for k, proj in enumerate(sets):
            iterations += 1
            shifted = [a + b for a, b in zip(y, corrections[k])]
            ynew = proj(shifted)
            corrections[k] = [a - b for a, b in zip(shifted, ynew)]
            moved = max(moved, max(abs(a - b) for a, b in zip(y, ynew)))
            y = ynew
        dist = sum((a - b) ** 2 for a, b in zip(x, y)) ** 0.5
        if last is not None and abs(dist - last) < tol / 4 and moved < tol / 4:
            return dist
        last = dist
    raise NonConvergenceError(best_bound=last if last is not None else float("inf"))


# -- the positive semidefinite oracle ------------------------------------------------------


def _sym_from_vector(n: int, x: Sequence) -> QMatrix:
    x = vector(x)
    if len(x) != n * (n + 1) // 2:
        raise DimensionMismatchError("wrong length for a flattened symmetric matrix")
    entries = [[Fraction(0)] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i, n):
            entries[i][j] = x[k]
            entries[j][i] = x[k]
            k += 1
    return QMatrix.from_rows(entries)


def _sym_to_vector(m: QMatrix) -> Vector:
    n = m.rows
    return tuple(m.entry(i, j) for i in range(n) for j in range(i, n))


def _is_psd(m: QMatrix) -> bool:
    """Exact PSD test: det(tI - m) must have weakly alternating signs."""
    cp = char_poly(m)
    n = m.rows
    for k in range(1, n + 1):
        # coefficient of t^{n-k} times (-1)^k is the k-th minor sum
        if cp.coeff(n - k) * (-1) ** k < 0:
            return False
    return True


def _is_pd(m: QMatrix) -> bool:
    """Sylvester: all leading principal minors positive."""
    n = m.rows
    for k in range(1, n + 1):
        sub = QMatrix(k, k, [m.entry(i, j) for i in range(k) for j in range(k)])
        if sub.det() <= 0:
            return False
    return True


def psd_cone_oracle(n: int) -> ConeOracle:
    """The cone of positive semidefinite symmetric n x n rational matrices.

    Vectors are upper triangles, row major, with off-diagonal coordinates
    taken against the symmetrized basis elements e_i e_j^T + e_j e_i^T.
    """
    if n < 1:
        raise ValueError("n must be positive")
    dim = n * (n + 1) // 2

    def contains(x: Sequence) -> bool:
        return _is_psd(_sym_from_vector(n, x))

    def strictly_contains(x: Sequence) -> bool:
        return _is_pd(_sym_from_vector(n, x))

    def interior_sample() -> Vector:
        return _sym_to_vector(QMatrix.identity(n))

    def sample_points(rng: random.Random, count: int) -> list[Vector]:
        out = []
        for _ in range(count):
            b = QMatrix(n, n, [rng.randrange(-3, 4) for _ in range(n * n)])
            out.append(_sym_to_vector(b.transpose() * b))
        return out

    return ConeOracle(dim=dim, contains=contains, strictly_contains=strictly_contains,
                      interior_sample=interior_sample, sample_points=sample_points,
                      description=f"psd({n})")
