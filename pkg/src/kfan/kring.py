"""Equivariant K-rings of complete cellular fans, in two exact models.

An element assigns a Laurent polynomial to each maximal cone.  The GKM
model accepts a tuple when the two polynomials across every wall agree
modulo (1 - e^chi) for the wall character chi; the piecewise model accepts
it when the restrictions of neighbouring components agree on every shared
face.  For complete fans the two conditions coincide, and the test suite
exercises that equivalence rather than assuming it.

Free-module structure over the representation ring is computed exactly:
box-truncated member lattices, the ordinary K-ring rank as a stabilized
quotient rank, a filtration basis found by forcing earlier components to
vanish, and a monomial presentation for smooth fans.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .cellular import check_cellular
from .fan import Cone, Fan, all_cones, is_smooth_cone, walls
from .intlat import RowLattice, solve_rational, sparse_kernel_basis
from .laurent import (
    LaurentPoly,
    box_points,
    divides,
    exact_divide,
    face_restrict,
    poly_from_obj,
    poly_to_obj,
    restrict,
)


class GkmElement:
    """Tuple of Laurent polynomials indexed by the maximal cones."""

    __slots__ = ("fan", "components")

    def __init__(self, fan: Fan, components):
        components = tuple(components)
        if len(components) != len(fan.max_cones):
            raise ValueError("need one component per maximal cone")
        for c in components:
            if not isinstance(c, LaurentPoly):
                raise ValueError("components must be Laurent polynomials")
            if c.rank != fan.rank:
                raise ValueError("component rank does not match fan")
        self.fan = fan
        self.components = components

    def _coerce(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return constant_embedding(self.fan, other)
        if isinstance(other, GkmElement):
            if other.fan != self.fan:
                raise ValueError("elements live over different fans")
            return other
        raise TypeError(f"cannot combine GkmElement with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        return GkmElement(self.fan, [a + b for a, b in zip(self.components, other.components)])

    __radd__ = __add__

    def __neg__(self):
        return GkmElement(self.fan, [-a for a in self.components])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + self._coerce(other)

    def __mul__(self, other):
        other = self._coerce(other)
        return GkmElement(self.fan, [a * b for a, b in zip(self.components, other.components)])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return GkmElement(self.fan, [a ** k for a in self.components])

    def __eq__(self, other) -> bool:
        return (isinstance(other, GkmElement) and self.fan == other.fan
                and self.components == other.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def support_radius(self) -> int:
        return max(c.support_radius() for c in self.components)

    def __repr__(self) -> str:
        return f"GkmElement({list(self.components)!r})"


# same data, different membership test
PlpElement = GkmElement


def constant_embedding(fan: Fan, f) -> GkmElement:
    """The diagonal copy of a Laurent polynomial (or integer)."""
    if isinstance(f, int):
        f = LaurentPoly.constant(fan.rank, f)
    return GkmElement(fan, [f] * len(fan.max_cones))


def gkm_check(e: GkmElement) -> tuple:
    """Wall congruences: components across each wall must differ by a
    multiple of (1 - e^chi).  Returns (ok, failures)."""
    failures = []
    for w in walls(e.fan):
        diff = e.components[w.left] - e.components[w.right]
        ok, _ = divides(diff, w.character)
        if not ok:
            failures.append({
                "wall": w.face.ray_indices,
                "left": w.left,
                "right": w.right,
                "character": w.character,
            })
    return not failures, failures


def plp_check(e: GkmElement) -> tuple:
    """Piecewise condition: restrictions of any two components must agree
    on every common face of their cones.  Returns (ok, failures)."""
    failures = []
    cones = e.fan.max_cones
    for i in range(len(cones)):
        for j in range(i + 1, len(cones)):
            for g in all_cones(e.fan):
                if g.is_face_of(cones[i]) and g.is_face_of(cones[j]):
                    ri = restrict(e.components[i], e.fan, g)
                    rj = restrict(e.components[j], e.fan, g)
                    if ri != rj:
                        failures.append({"cones": (i, j), "face": g.ray_indices})
    return not failures, failures


def element_to_obj(e: GkmElement) -> list:
    return [poly_to_obj(c) for c in e.components]


def element_from_obj(fan: Fan, obj) -> GkmElement:
    if not isinstance(obj, list) or len(obj) != len(fan.max_cones):
        raise ValueError("element JSON must list one polynomial per maximal cone")
    return GkmElement(fan, [poly_from_obj(fan.rank, item) for item in obj])


# --- box-truncated member lattices --------------------------------------------


@dataclass(frozen=True)
class MemberSpace:
    """Lattice of GKM members with all exponents in a coordinate box."""

    fan: Fan
    radius: int
    exps: tuple
    basis: tuple  # sparse {variable: coeff} vectors

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def block(self) -> int:
        return len(self.exps)

    def var(self, cone_index: int, exp: tuple) -> int:
        return cone_index * len(self.exps) + self.exps.index(exp)


def _canonical_rep(exp: tuple, chi: tuple) -> tuple:
    p = next(i for i, x in enumerate(chi) if x)
    step = chi[p]
    t = exp[p] // step if step > 0 else -(exp[p] // -step)
    return tuple(e - t * c for e, c in zip(exp, chi))


def member_space(fan: Fan, radius: int) -> MemberSpace:
    """Saturated lattice of box-supported tuples passing every wall
    congruence.  The congruences are integer-linear: within each coset of
    Z*chi the coefficients of the two wall components must have equal sums.
    """
    exps = tuple(box_points(fan.rank, radius))
    index = {e: k for k, e in enumerate(exps)}
    block = len(exps)
    rows = []
    for w in walls(fan):
        classes = {}
        for e in exps:
            classes.setdefault(_canonical_rep(e, w.character), []).append(e)
        for members in classes.values():
            row = {}
            for e in members:
                row[w.left * block + index[e]] = 1
                row[w.right * block + index[e]] = -1
            rows.append(row)
    basis = sparse_kernel_basis(block * len(fan.max_cones), rows)
    return MemberSpace(fan=fan, radius=radius, exps=exps, basis=tuple(basis))


def vector_to_element(space: MemberSpace, vec) -> GkmElement:
    if isinstance(vec, dict):
        items = vec.items()
    else:
        items = ((i, x) for i, x in enumerate(vec))
    comps = [{} for _ in space.fan.max_cones]
    for pos, x in items:
        if not x:
            continue
        comps[pos // space.block][space.exps[pos % space.block]] = x
    return GkmElement(space.fan, [LaurentPoly(space.fan.rank, c) for c in comps])


def element_to_vector(space: MemberSpace, e: GkmElement) -> dict:
    index = {ex: k for k, ex in enumerate(space.exps)}
    vec = {}
    for i, c in enumerate(e.components):
        for exp, coef in c.terms.items():
            if exp not in index:
                raise ValueError("element exponent outside the box")
            vec[i * space.block + index[exp]] = coef
    return vec


def sample_members(space: MemberSpace, count: int, seed: int = 0,
                   coeff_bound: int = 3, max_terms: int = 4) -> list:
    """Random small integer combinations of the member basis."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        vec = {}
        for _ in range(rng.randint(1, max_terms)):
            b = rng.choice(space.basis)
            f = rng.randint(-coeff_bound, coeff_bound)
            for pos, x in b.items():
                v = vec.get(pos, 0) + f * x
                if v:
                    vec[pos] = v
                else:
                    vec.pop(pos, None)
        out.append(vector_to_element(space, vec))
    return out


# --- ordinary K-ring rank ------------------------------------------------------


@dataclass(frozen=True)
class KRankReport:
    rank: Optional[int]
    stabilized_at: Optional[int]
    conclusive: bool
    history: tuple  # (radius, member_dim, ideal_rank, estimate)


def _augmentation_ideal_rank(fan: Fan, space: MemberSpace, inner: MemberSpace) -> int:
    """Rank of the span of (e^u - 1) * t for t in the inner member lattice
    and u running over the radius-1 box, inside the outer box."""
    index = {e: k for k, e in enumerate(space.exps)}
    block = space.block
    lat = RowLattice()
    shifts = [u for u in box_points(fan.rank, 1) if any(u)]
    for u in shifts:
        for b in inner.basis:
            vec = {}
            for pos, x in b.items():
                cone = pos // inner.block
                exp = inner.exps[pos % inner.block]
                shifted = tuple(a + d for a, d in zip(exp, u))
                for target, sign in ((shifted, 1), (exp, -1)):
                    key = cone * block + index[target]
                    v = vec.get(key, 0) + sign * x
                    if v:
                        vec[key] = v
                    else:
                        vec.pop(key, None)
            lat.insert(vec)
    return lat.rank


def ordinary_k_rank(fan: Fan, max_radius: int = 5) -> KRankReport:
    """Rank of the K-ring with the torus action forgotten.

    At box radius d the estimate is dim(members at d) minus the rank of
    (augmentation ideal) * (members at d-1) pushed into the d-box.  The
    radius steps up by one until two successive estimates agree; the common
    value is reported with the radius where stabilization happened.
    """
    history = []
    prev_space = member_space(fan, 0)
    prev_est = None
    for d in range(1, max_radius + 1):
        space = member_space(fan, d)
        ideal_rank = _augmentation_ideal_rank(fan, space, prev_space)
        est = space.dim - ideal_rank
        history.append((d, space.dim, ideal_rank, est))
        if prev_est is not None and est == prev_est:
            return KRankReport(est, d, True, tuple(history))
        prev_est = est
        prev_space = space
    return KRankReport(prev_est, None, False, tuple(history))


# --- filtration basis ----------------------------------------------------------


@dataclass(frozen=True)
class FiltrationBasis:
    v: tuple
    order: tuple        # cell order, maximal cone indices
    elements: tuple     # GkmElement per order position
    radius: int


def _combine_basis(basis, combo: dict) -> dict:
    out = {}
    for k, f in combo.items():
        for pos, x in basis[k].items():
            v = out.get(pos, 0) + f * x
            if v:
                out[pos] = v
            else:
                out.pop(pos, None)
    return out


def build_filtration_basis(fan: Fan, v: Optional[Sequence] = None, seed: int = 0,
                           max_radius: int = 4) -> FiltrationBasis:
    """Module basis adapted to the cell filtration.

    The cells after position p in the order form a closed union, and the
    basis element of position p vanishes on their cones while restricting
    on its own cone to a generator of the ideal of such restrictions.  (The
    opposite orientation, vanishing on earlier cells, admits no generator
    for some cellular structures: the restriction ideal need not be
    principal there.)  Generation is certified by exact division against
    the other kernel vectors; the box radius grows until every position
    yields a certified generator.
    """
    rep = check_cellular(fan, v=v, seed=seed)
    if not rep.verdict:
        raise ValueError(f"fan is not cellular: {rep.failure}")
    order = tuple(rep.order)
    last_error = "no radius attempted"
    for radius in range(1, max_radius + 1):
        space = member_space(fan, radius)
        elements = []
        for pos, i in enumerate(order):
            forced = set()
            for q in order[pos + 1:]:
                forced.update(range(q * space.block, (q + 1) * space.block))
            rows = []
            for p in sorted(forced):
                row = {k: b[p] for k, b in enumerate(space.basis) if p in b}
                if row:
                    rows.append(row)
            combos = sparse_kernel_basis(space.dim, rows)
            vectors = [_combine_basis(space.basis, c) for c in combos]
            diags = []
            for vec in vectors:
                terms = {space.exps[pos2 % space.block]: x for pos2, x in vec.items()
                         if pos2 // space.block == i}
                diags.append(LaurentPoly(fan.rank, terms))
            chosen = None
            for k, d in enumerate(diags):
                if d.is_zero():
                    continue
                if all(g.is_zero() or exact_divide(g, d) is not None for g in diags):
                    chosen = k
                    break
            if chosen is None:
                last_error = f"no dividing generator at order position {pos} (radius {radius})"
                elements = None
                break
            elements.append(vector_to_element(space, vectors[chosen]))
        if elements is not None:
            return FiltrationBasis(v=rep.v, order=order, elements=tuple(elements),
                                   radius=radius)
    raise ValueError(f"filtration basis not found: {last_error}")


def decompose(fan: Fan, basis: FiltrationBasis, t: GkmElement) -> Optional[list]:
    """Coefficients c with t = sum c_p * phi_p, or None when the triangular
    division fails.  Coefficients are Laurent polynomials acting diagonally.

    Positions are peeled from the end of the order: there the remaining
    element is supported on a single basis element's cone."""
    coeffs = [LaurentPoly.zero(fan.rank)] * len(basis.order)
    rem = t
    for pos in reversed(range(len(basis.order))):
        i = basis.order[pos]
        phi = basis.elements[pos]
        target = rem.components[i]
        if target.is_zero():
            continue
        c = exact_divide(target, phi.components[i])
        if c is None:
            return None
        coeffs[pos] = c
        rem = rem - constant_embedding(fan, c) * phi
    if not rem.is_zero():
        return None
    return coeffs


def verify_generation(fan: Fan, basis: FiltrationBasis, samples: int = 25,
                      seed: int = 0, sample_radius: int = 1) -> dict:
    """Decompose random box members against the basis and recompose."""
    space = member_space(fan, sample_radius)
    members = sample_members(space, samples, seed=seed)
    generated = 0
    for t in members:
        coeffs = decompose(fan, basis, t)
        if coeffs is None:
            continue
        total = constant_embedding(fan, 0)
        for c, phi in zip(coeffs, basis.elements):
            total = total + constant_embedding(fan, c) * phi
        if total == t:
            generated += 1
    return {"samples": len(members), "generated": generated,
            "all_generated": generated == len(members)}


# --- monomial presentation for smooth fans -------------------------------------


def is_smooth_fan(fan: Fan) -> bool:
    return all(is_smooth_cone(fan, c) for c in fan.max_cones)


def minimal_nonfaces(fan: Fan) -> list:
    """Inclusion-minimal ray sets spanning no cone of the fan."""
    faces = {frozenset(c.ray_indices) for c in all_cones(fan)}
    n = len(fan.rays)
    out = []
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            fs = frozenset(subset)
            if fs in faces:
                continue
            if all(frozenset(sub) in faces
                   for sub in itertools.combinations(subset, size - 1)):
                out.append(subset)
    return out


@dataclass(frozen=True)
class SRPresentation:
    n_generators: int
    relations: tuple  # dicts: {"kind": "nonface", "rays": ...} or {"kind": "character", "u": ...}


def sr_presentation(fan: Fan) -> SRPresentation:
    """Relations of the monomial presentation: one product (1 - X_j) per
    minimal nonface, and one per lattice character identifying the
    representation-ring action with a monomial in the generators."""
    if not is_smooth_fan(fan):
        raise ValueError("monomial presentation requires a smooth fan")
    rels = [{"kind": "nonface", "rays": nf} for nf in minimal_nonfaces(fan)]
    for i in range(fan.rank):
        u = tuple(1 if j == i else 0 for j in range(fan.rank))
        rels.append({"kind": "character", "u": u})
    return SRPresentation(n_generators=len(fan.rays), relations=tuple(rels))


def sr_to_plp(fan: Fan) -> tuple:
    """Generator images: X_j maps to the piecewise unit that is e^{m} on
    cones containing ray j (m the dual character of the ray there) and 1
    elsewhere.  Returns (generators, certificate) with the certificate
    recording every exponent used."""
    if not is_smooth_fan(fan):
        raise ValueError("monomial presentation requires a smooth fan")
    xs = []
    certificate = {}
    zero = tuple([0] * fan.rank)
    for j in range(len(fan.rays)):
        comps = []
        for k, sigma in enumerate(fan.max_cones):
            if j in sigma.ray_indices:
                pos = sigma.ray_indices.index(j)
                target = [1 if r == pos else 0 for r in range(len(sigma.ray_indices))]
                # rows of the system pair u against each ray of sigma
                a = fan.ray_matrix(sigma).transpose()
                sol = solve_rational(a, target)
                if any(x.denominator != 1 for x in sol):
                    raise ValueError("dual character is not integral")
                u = tuple(int(x) for x in sol)
                comps.append(LaurentPoly.monomial(u))
                certificate[(k, j)] = u
            else:
                comps.append(LaurentPoly.one(fan.rank))
                certificate[(k, j)] = zero
        xs.append(GkmElement(fan, comps))
    return xs, certificate


def relation_image(fan: Fan, xs, rel: dict) -> GkmElement:
    """Image of a relation under the generator assignment; zero when the
    presentation holds."""
    if rel["kind"] == "nonface":
        out = constant_embedding(fan, 1)
        for j in rel["rays"]:
            out = out * (constant_embedding(fan, 1) - xs[j])
        return out
    if rel["kind"] == "character":
        u = tuple(rel["u"])
        out = constant_embedding(fan, 1)
        for j in range(len(fan.rays)):
            a = sum(ui * vi for ui, vi in zip(u, fan.rays[j]))
            out = out * (xs[j] ** a)
        return out - constant_embedding(fan, LaurentPoly.monomial(u))
    raise ValueError(f"unknown relation kind {rel.get('kind')!r}")


def _signed_compositions(n_slots: int, max_total: int):
    for total in range(max_total + 1):
        for cuts in itertools.combinations(range(total + n_slots - 1), n_slots - 1):
            parts = []
            prev = -1
            for c in list(cuts) + [total + n_slots - 1]:
                parts.append(c - prev - 1)
                prev = c
            for signs in itertools.product((1, -1), repeat=n_slots):
                vec = tuple(p * s for p, s in zip(parts, signs))
                if all(p or s == 1 for p, s in zip(parts, signs)):
                    yield vec


def sr_surjectivity_probe(fan: Fan, max_degree: int = 3, mult_radius: int = 1,
                          sample_radius: int = 1, samples: int = 25,
                          seed: int = 0) -> dict:
    """Monomials of bounded total degree in the generators, multiplied by a
    small box of characters, must span every sampled member over Z."""
    xs, _ = sr_to_plp(fan)
    images = []
    for powers in _signed_compositions(len(fan.rays), max_degree):
        img = constant_embedding(fan, 1)
        for j, a in enumerate(powers):
            if a:
                img = img * (xs[j] ** a)
        images.append(img)
    shift_box = box_points(fan.rank, mult_radius)
    need = max(img.support_radius() for img in images) + mult_radius
    need = max(need, sample_radius)
    big = member_space(fan, need)
    index = {e: k for k, e in enumerate(big.exps)}
    lat = RowLattice()
    for img in images:
        for w in shift_box:
            vec = {}
            for i, comp in enumerate(img.components):
                for exp, coef in comp.terms.items():
                    shifted = tuple(a + b for a, b in zip(exp, w))
                    key = i * big.block + index[shifted]
                    v = vec.get(key, 0) + coef
                    if v:
                        vec[key] = v
                    else:
                        vec.pop(key, None)
            lat.insert(vec)
    space = member_space(fan, sample_radius)
    members = sample_members(space, samples, seed=seed)
    hits = 0
    for t in members:
        vec = element_to_vector(big, t)
        if lat.contains(vec):
            hits += 1
    return {"monomials": len(images), "samples": len(members), "hits": hits,
            "all_hit": hits == len(members)}
