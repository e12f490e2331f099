"""Eigengroups of monic polynomials over finite fields.

The eigengroup G_f of a monic nonscalar f in K[x] consists of the affine
substitutions sigma_{lam,mu}: x -> lam*x + mu with sigma(f) = c*f for some
nonzero scalar c (necessarily c = lam^deg f).  Computations run over the
splitting field L of f, which stands in for the algebraic closure: once f
has two distinct roots, every eigen-substitution permutes them and an affine
map is pinned by two points, so all of G_f(closure) is already L-rational.

Structure of the group (with all data L-rational):

* f = (x - nu)^d  ->  the torus T_nu = {x -> lam*(x - nu) + nu}, infinite
  over the closure.
* otherwise G_f = Sh_V x| <sigma_{lam_n, (1-lam_n) nu}> is finite: Sh_V is
  the group of shifts by the shift space V of f, extended by a cyclic group
  of order n prime to p fixing nu.

The closed-form computation proceeds in five steps: single-root check, a
triviality fast path (cross-checked against the structured search, never
trusted alone), the shift space V, the V = 0 search for (nu, i, n, g) with
f = (x-nu)^i g((x-nu)^n), and the V != 0 search for the eigenform
f = f_V(x-nu)^i * g(f_V(x-nu)^n) through the additive polynomial f_V.

Descent to a subfield F_{p^j} of L intersects V with the subfield and finds
the minimal power of the cyclic generator that can be corrected into the
subfield by a shift from V.  Canonical choices throughout: nu is the packed
minimum of its V-coset, lambda_n is the canonical primitive root of unity,
bases are echelonized; identical inputs produce identical descriptors.

The inverse problem (realize a prescribed subgroup H as G_f) is solved by
explicit witness polynomials per subgroup shape, and every structured result
can be compared against `eigengroup_bruteforce`, the independent oracle that
simply tries all (lam, mu).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd

from .errors import DomainError, InternalCheckError
from .gf import FieldDesc, FieldTower, FpSpan, divisors, primitive_root_of_unity
from .poly import (
    Poly,
    contract_exponents,
    decompose_through,
    exponent_decomp,
    exponent_gcd,
    f_V,
    lift_poly,
    multiplier_field,
    roots_in_ext,
    roots_with_multiplicity,
    space_basis,
    span_values,
    splitting_tower,
    verify_fp_subspace,
)

DEFAULT_BRUTE_CAP = 1 << 10


def _brute_cap() -> int:
    return int(os.environ.get("ORECALC_BRUTE_CAP", DEFAULT_BRUTE_CAP))


def _require_monic_nonscalar(f: Poly) -> None:
    if f.degree < 1:
        raise DomainError("eigengroup computations need a nonscalar polynomial")
    if not f.is_monic():
        raise DomainError("eigengroup computations need a monic polynomial")


def _elt_json(field: FieldDesc, v: int | None):
    if v is None:
        return None
    if field.m == 1:
        return v
    return list(field.unpack(v))


def _poly_json(g: Poly | None):
    if g is None:
        return None
    return [_elt_json(g.field, c) for c in g.c]


# ---------------------------------------------------------------------------
# Affine substitutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineAut:
    """The substitution sigma_{lam,mu}: x -> lam*x + mu with lam != 0.

    Products compose substitutions left to right:
    (s1 * s2)(x) = s1(s2(x)) as ring maps, i.e. lam = lam1*lam2 and
    mu = lam2*mu1 + mu2, matching sigma^i_{lam,(1-lam)nu} sigma_{1,v}
    = sigma_{lam^i, (1-lam^i)nu + v}.
    """

    field: FieldDesc
    lam: int
    mu: int

    def __post_init__(self):
        if self.lam == 0:
            raise DomainError("affine substitution needs lam != 0")

    @classmethod
    def identity(cls, field: FieldDesc) -> "AffineAut":
        return cls(field, 1, 0)

    @property
    def pair(self) -> tuple[int, int]:
        return (self.lam, self.mu)

    def __mul__(self, other: "AffineAut") -> "AffineAut":
        if other.field is not self.field:
            raise DomainError("mixed-field composition of substitutions")
        F = self.field
        return AffineAut(
            F, F.mul(self.lam, other.lam), F.add(F.mul(other.lam, self.mu), other.mu)
        )

    def inverse(self) -> "AffineAut":
        F = self.field
        li = F.inv(self.lam)
        return AffineAut(F, li, F.neg(F.mul(li, self.mu)))

    def power(self, j: int) -> "AffineAut":
        F = self.field
        if j < 0:
            return self.inverse().power(-j)
        if self.lam == 1:
            return AffineAut(F, 1, F.mul(self.mu, j % F.p))
        lj = F.pow(self.lam, j)
        ratio = F.div(F.sub(1, lj), F.sub(1, self.lam))
        return AffineAut(F, lj, F.mul(ratio, self.mu))

    def order(self) -> int:
        F = self.field
        if self.lam != 1:
            return F.order_of(self.lam)
        return F.p if self.mu else 1

    def fixed_point(self) -> int:
        """The unique fixed value for lam != 1."""
        F = self.field
        if self.lam == 1:
            raise DomainError("shifts have no fixed point")
        return F.div(self.mu, F.sub(1, self.lam))

    def apply(self, f: Poly) -> Poly:
        if f.field is not self.field:
            raise DomainError("substitution field does not match the polynomial")
        return f.compose_affine(self.lam, self.mu)

    def eigenvalue_on(self, f: Poly) -> int | None:
        """Packed c with f(lam*x+mu) = c*f, or None; c = lam^deg f if any."""
        F = self.field
        c = F.pow(self.lam, f.degree)
        if self.apply(f) == f.scale_value(c):
            return c
        return None

    def describe(self) -> dict:
        return {"lambda": _elt_json(self.field, self.lam), "mu": _elt_json(self.field, self.mu)}

    def __repr__(self):
        F = self.field
        ls = "x" if self.lam == 1 else f"{_elt_json(F, self.lam)}*x"
        if self.mu == 0:
            return f"x -> {ls}"
        return f"x -> {ls} + {_elt_json(F, self.mu)}"


# ---------------------------------------------------------------------------
# Shift spaces
# ---------------------------------------------------------------------------


class ShiftSpace:
    """The F_p-space of shifts delta with delta + R(f) = R(f) as multisets,
    with delta constrained to the subfield F_{p^level} of the splitting field."""

    def __init__(self, tower: FieldTower, level: int, basis: tuple[int, ...]):
        self.tower = tower
        self.level = level
        self.basis = tuple(basis)
        self._values = None
        self._e = None

    def __eq__(self, other):
        return (
            isinstance(other, ShiftSpace)
            and self.tower is other.tower
            and self.level == other.level
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"ShiftSpace(dim={self.dim}, level={self.level})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def values(self) -> tuple[int, ...]:
        if self._values is None:
            self._values = span_values(self.tower.ext, self.basis)
        return self._values

    @property
    def e(self) -> int | None:
        """Multiplier exponent: largest e with F_{p^e} V <= V (None for V = 0)."""
        if self.dim == 0:
            return None
        if self._e is None:
            self._e = multiplier_field(self.tower.ext, self.values())
        return self._e


def shift_space(f: Poly, level: int | None = None, tower: FieldTower | None = None) -> ShiftSpace:
    """Shift space of f at the given subfield level (default: the whole of L)."""
    _require_monic_nonscalar(f)
    rm = roots_with_multiplicity(f, tower)
    tower = rm.tower
    if len(rm.pairs) == 1:
        raise DomainError("shift space needs at least two distinct roots")
    if level is None:
        level = tower.M
    if tower.M % level:
        raise DomainError("shift level must divide the splitting degree")
    L = tower.ext
    mult = rm.as_multiset()
    distinct = rm.distinct()
    cands = {L.sub(r, r2) for r in distinct for r2 in distinct if r != r2}
    qual = {0}
    for delta in cands:
        if level < tower.M and not tower.in_subfield(delta, level):
            continue
        if all(mult.get(L.add(r, delta)) == m for r, m in rm.pairs):
            qual.add(delta)
    vals = tuple(sorted(qual))
    if span_values(L, vals) != vals:
        raise InternalCheckError("qualifying shifts failed to form a subspace")
    return ShiftSpace(tower, level, space_basis(L, vals))


# ---------------------------------------------------------------------------
# Group descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EigengroupDesc:
    """G_f presented over the field F_{p^level} inside the splitting tower.

    kind "torus": T_nu (all x -> lam*(x-nu)+nu); infinite when over_closure.
    kind "finite": Sh_V x| <sigma_{lambda_n,(1-lambda_n)nu}>; the trivial
    group is the finite descriptor with n = 1 and empty basis.
    kind "full": every substitution over the level field (normalized form of
    a finite descriptor with V the whole level field and n = p^level - 1).

    All packed values (nu, lambda_n, v_basis) live in the level field.
    """

    kind: str
    tower: FieldTower
    level: int
    over_closure: bool
    nu: int
    n: int
    lambda_n: int
    v_basis: tuple[int, ...]

    @property
    def level_field(self) -> FieldDesc:
        return self.tower.level(self.level).desc

    def is_trivial(self) -> bool:
        return self.kind == "finite" and self.n == 1 and not self.v_basis

    def v_values(self) -> tuple[int, ...]:
        return span_values(self.level_field, self.v_basis)

    def order(self) -> int | None:
        """Group order; None means infinite."""
        if self.over_closure and self.kind in ("torus", "full"):
            return None
        F = self.level_field
        if self.kind == "torus":
            return F.q - 1
        if self.kind == "full":
            return F.q * (F.q - 1)
        return self.n * F.p ** len(self.v_basis)

    def generators(self) -> list[AffineAut]:
        F = self.level_field
        out = []
        if self.kind == "torus":
            g0 = primitive_root_of_unity(F.q - 1, F).val if F.q > 2 else 1
            if g0 != 1:
                out.append(AffineAut(F, g0, F.mul(F.sub(1, g0), self.nu)))
            return out
        if self.kind in ("finite", "full") and self.n > 1:
            out.append(
                AffineAut(F, self.lambda_n, F.mul(F.sub(1, self.lambda_n), self.nu))
            )
        vb = self.v_basis if self.kind == "finite" else space_basis(F, tuple(F.elements()))
        for v in vb:
            out.append(AffineAut(F, 1, v))
        return out

    def elements(self) -> list[AffineAut]:
        """All group elements over the level field, sorted; infinite rejected."""
        if self.order() is None:
            raise DomainError(
                "the group over the closure is infinite; descend to a finite level first"
            )
        F = self.level_field
        pairs = set()
        if self.kind == "torus":
            for lam in F.units():
                pairs.add((lam, F.mul(F.sub(1, lam), self.nu)))
        elif self.kind == "full":
            for lam in F.units():
                for mu in F.elements():
                    pairs.add((lam, mu))
        else:
            vv = self.v_values()
            lam = 1
            for _ in range(self.n):
                base = F.mul(F.sub(1, lam), self.nu)
                for v in vv:
                    pairs.add((lam, F.add(base, v)))
                lam = F.mul(lam, self.lambda_n)
        out = [AffineAut(F, l, m) for l, m in sorted(pairs)]
        if len(out) != self.order():
            raise InternalCheckError("element enumeration does not match the order formula")
        return out

    def element_pairs(self) -> set[tuple[int, int]]:
        return {a.pair for a in self.elements()}

    def describe(self) -> dict:
        F = self.level_field
        order = self.order()
        return {
            "kind": self.kind,
            "nu": _elt_json(F, self.nu if self.kind != "full" else 0),
            "n": self.n,
            "lambda_n": _elt_json(F, self.lambda_n) if self.kind != "torus" else None,
            "V_basis": [_elt_json(F, v) for v in self.v_basis],
            "order": "infinite" if order is None else order,
        }


def _trivial_desc(tower: FieldTower, level: int, over_closure: bool) -> EigengroupDesc:
    return EigengroupDesc("finite", tower, level, over_closure, 0, 1, 1, ())


def group_elements(desc: EigengroupDesc) -> list[AffineAut]:
    return desc.elements()


# ---------------------------------------------------------------------------
# Eigenforms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Eigenform:
    """Canonical presentation of f from which G_f is read off.

    case "A10": f = f_V(x-nu)^i * g(f_V(x-nu)^n)   (g may be 1)
    case "A11": f = (x-nu)^i * g((x-nu)^n)         (V = 0)
    case "B11": f = g(f_V(x))^(p^s)                (shifts only)
    case "single_root": f = (x-nu)^i with i = deg f
    case "none": trivial group, f kept as is

    All parts live over the splitting field; nu is the packed minimum of its
    V-coset and (nu, i, g) is unique in cases A10/A11.
    """

    case: str
    f: Poly
    tower: FieldTower
    nu: int
    i: int
    n: int
    s: int
    g: Poly | None
    v_values: tuple[int, ...]
    lambda_n: int

    def expand(self) -> Poly:
        L = self.tower.ext
        if self.case == "none":
            return lift_poly(self.f, self.tower)
        if self.case == "single_root":
            return Poly.from_values(L, (L.neg(self.nu), 1)) ** self.i
        if self.case == "A11":
            w = Poly.from_values(L, (L.neg(self.nu), 1))
            return w**self.i * self.g.compose(w**self.n)
        if self.case == "A10":
            w = f_V(L, self.v_values).compose_affine(1, L.neg(self.nu))
            return w**self.i * self.g.compose(w**self.n)
        if self.case == "B11":
            p = L.p
            return self.g.compose(f_V(L, self.v_values)) ** (p**self.s)
        raise InternalCheckError(f"unknown eigenform case {self.case!r}")

    def verify(self) -> None:
        """Round-trip to f and check the stated eigenvalue law exactly."""
        L = self.tower.ext
        fe = lift_poly(self.f, self.tower)
        if self.expand() != fe:
            raise InternalCheckError("eigenform does not expand back to f")
        if self.case in ("A10", "A11"):
            gen = AffineAut(L, self.lambda_n, L.mul(L.sub(1, self.lambda_n), self.nu))
            if gen.apply(fe) != fe.scale_value(L.pow(self.lambda_n, self.i)):
                raise InternalCheckError("eigenvalue law sigma(f) = lambda_n^i f fails")
        elif self.case == "single_root":
            lam = primitive_root_of_unity(L.q - 1, L).val if L.q > 2 else 1
            gen = AffineAut(L, lam, L.mul(L.sub(1, lam), self.nu))
            if gen.apply(fe) != fe.scale_value(L.pow(lam, self.i)):
                raise InternalCheckError("torus eigenvalue law fails")
        elif self.case == "B11":
            for v in self.v_values:
                if fe.compose_affine(1, v) != fe:
                    raise InternalCheckError("shift invariance of the eigenform fails")

    def describe(self) -> dict:
        L = self.tower.ext
        return {
            "case": self.case,
            "i": self.i,
            "nu": _elt_json(L, self.nu) if self.case not in ("none", "B11") else None,
            "n": self.n,
            "g": _poly_json(self.g),
            "s": self.s,
            "V_basis": [_elt_json(L, v) for v in space_basis(L, self.v_values)]
            if self.v_values
            else [],
        }


# ---------------------------------------------------------------------------
# The closed-form algorithm over the splitting field
# ---------------------------------------------------------------------------


def _gcd_p_part(w: Poly) -> int:
    """Prime-to-p part of the exponent gcd of a nonconstant polynomial."""
    g = exponent_gcd(w)
    if g == 0:
        raise InternalCheckError("exponent gcd of a constant polynomial")
    p = w.field.p
    while g % p == 0:
        g //= p
    return g


def _strip_valuation(w: Poly) -> tuple[int, Poly]:
    i = w.valuation()
    return i, Poly.from_values(w.field, w.c[i:])


def _unity_root(n: int, field: FieldDesc) -> int:
    try:
        return primitive_root_of_unity(n, field).val
    except DomainError as exc:
        raise InternalCheckError(
            f"required root of unity of order {n} missing from the splitting field"
        ) from exc


def _verify_finite_generators(desc: EigengroupDesc, fe: Poly) -> None:
    """Every stored generator must send f to a scalar multiple of f."""
    for gen in desc.generators():
        if gen.eigenvalue_on(fe) is None:
            raise InternalCheckError("claimed generator is not an eigen-substitution")


@dataclass(frozen=True)
class EigengroupResult:
    f: Poly
    tower: FieldTower
    closure: EigengroupDesc
    eigenform: Eigenform

    def descend(self, level: int | None = None) -> EigengroupDesc:
        return eigengroup_descend(self.closure, level)

    def base_elements(self) -> list[AffineAut]:
        return self.descend().elements()


def eigengroup_closed(f: Poly, tower: FieldTower | None = None) -> EigengroupResult:
    """G_f over the splitting field L together with the eigenform of f."""
    _require_monic_nonscalar(f)
    if tower is None:
        tower = splitting_tower(f)
    rm = roots_with_multiplicity(f, tower)
    L, M, p = tower.ext, tower.M, f.field.p
    fe = lift_poly(f, tower)
    d = f.degree
    ed = exponent_decomp(f)
    s, f1 = ed.s, ed.f1
    f1e = lift_poly(f1, tower)
    distinct = rm.distinct()

    # Step 1: a single distinct root gives the torus.
    if len(distinct) == 1:
        nu = distinct[0]
        desc = EigengroupDesc("torus", tower, M, True, nu, 0, 1, ())
        form = Eigenform("single_root", f, tower, nu, d, 0, s, None, (), 1)
        form.verify()
        return EigengroupResult(f, tower, desc, form)

    f1d_roots = roots_in_ext(f1.derivative(), tower)

    # Step 3 (computed early; it is also condition (c) of the fast path).
    ss = shift_space(f, tower=tower)
    v_vals = ss.values()

    # Step 2: triviality fast path; re-derived structurally below and the two
    # answers must agree.
    c11 = len(v_vals) == 1
    if c11:
        for nu in distinct:
            _, w = _strip_valuation(f1e.compose_affine(1, nu))
            if not w.is_constant() and _gcd_p_part(w) != 1:
                c11 = False
                break
    if c11:
        for nu in f1d_roots:
            if f1e.eval_value(nu) != 0:
                sh = f1e.compose_affine(1, nu)
                if _gcd_p_part(sh) != 1:
                    c11 = False
                    break

    if len(v_vals) == 1:
        # Step 4: V = 0, search for the unique centre of a cyclic part.
        cands = list(distinct)
        seen = set(distinct)
        cands.extend(r for r in f1d_roots if r not in seen)
        hits = []
        for nu in cands:
            i, w = _strip_valuation(fe.compose_affine(1, nu))
            if w.is_constant():
                raise InternalCheckError("stripped shift became constant off the torus case")
            n = _gcd_p_part(w)
            if n >= 2:
                hits.append((nu, i, w, n))
        if not hits:
            if not c11:
                raise InternalCheckError("triviality fast path disagrees: search found nothing")
            desc = _trivial_desc(tower, M, True)
            form = Eigenform("none", f, tower, 0, 0, 1, s, None, (), 1)
            form.verify()
            return EigengroupResult(f, tower, desc, form)
        if c11:
            raise InternalCheckError("triviality fast path disagrees: search found a generator")
        if len(hits) != 1:
            raise InternalCheckError("the eigenroot of a cyclic eigengroup must be unique")
        nu, i, w, n = hits[0]
        g = contract_exponents(w, n)
        lam = _unity_root(n, L)
        desc = EigengroupDesc("finite", tower, M, True, nu, n, lam, ())
        form = Eigenform("A11", f, tower, nu, i, n, s, g, (), lam)
        form.verify()
        _verify_finite_generators(desc, fe)
        return EigengroupResult(f, tower, desc, form)

    # Step 5: V != 0.
    if c11:
        raise InternalCheckError("triviality fast path disagrees: shift space is nonzero")
    e = multiplier_field(L, v_vals)
    fv = f_V(L, v_vals)
    big_g = decompose_through(f1e, fv)
    if big_g is None:
        raise InternalCheckError("f1 must be a polynomial in f_V once V shifts f")
    gvals = sorted({fv.eval_value(r) for r in distinct})

    if len(gvals) == 1:
        # All roots form one V-coset: f1 = f_V(x-nu)^j.
        nu = min(distinct)
        if len(distinct) != len(v_vals):
            raise InternalCheckError("single-coset case must have |V| distinct roots")
        j = f1.degree // len(v_vals)
        w = fv.compose_affine(1, L.neg(nu))
        if w**j != f1e:
            raise InternalCheckError("single-coset eigenform reconstruction failed")
        n = p**e - 1
        if n == 1:
            desc = EigengroupDesc("finite", tower, M, True, 0, 1, 1, ss.basis)
            form = Eigenform("B11", f, tower, 0, 0, 1, s, big_g, v_vals, 1)
        else:
            lam = _unity_root(n, L)
            desc = EigengroupDesc("finite", tower, M, True, nu, n, lam, ss.basis)
            form = Eigenform("A10", f, tower, nu, (p**s) * j, n, s, Poly.one(L), v_vals, lam)
        form.verify()
        _verify_finite_generators(desc, fe)
        return EigengroupResult(f, tower, desc, form)

    # Several cosets of roots: search the centres nu among roots of f1 and
    # of f1', reading everything through w = f_V(x - nu).
    cands = list(distinct)
    seen = set(distinct)
    cands.extend(r for r in f1d_roots if r not in seen)
    hits = []
    for nu in cands:
        g_sh = big_g.compose_affine(1, fv.eval_value(nu))
        i_nu, g_nu = _strip_valuation(g_sh)
        if g_nu.is_constant():
            raise InternalCheckError("stripped eigenfactor became constant with several cosets")
        n_nu = gcd(p**e - 1, _gcd_p_part(g_nu))
        if n_nu >= 2:
            hits.append((nu, i_nu, g_nu, n_nu))
    if not hits:
        desc = EigengroupDesc("finite", tower, M, True, 0, 1, 1, ss.basis)
        form = Eigenform("B11", f, tower, 0, 0, 1, s, big_g, v_vals, 1)
        form.verify()
        _verify_finite_generators(desc, fe)
        return EigengroupResult(f, tower, desc, form)
    first = hits[0]
    for nu, i_nu, g_nu, n_nu in hits[1:]:
        if (i_nu, g_nu, n_nu) != (first[1], first[2], first[3]):
            raise InternalCheckError("inconsistent eigenform data across candidate centres")
        if fv.eval_value(L.sub(nu, first[0])) != 0:
            raise InternalCheckError("candidate centres must lie in a single V-coset")
    nu0, i_nu, g_nu, n = first
    nu = min(L.add(nu0, v) for v in v_vals)
    g1 = contract_exponents(g_nu, n)
    lam = _unity_root(n, L)
    desc = EigengroupDesc("finite", tower, M, True, nu, n, lam, ss.basis)
    form = Eigenform("A10", f, tower, nu, (p**s) * i_nu, n, s, g1 ** (p**s), v_vals, lam)
    form.verify()
    _verify_finite_generators(desc, fe)
    return EigengroupResult(f, tower, desc, form)


def eigengroup(f: Poly, tower: FieldTower | None = None) -> EigengroupResult:
    return eigengroup_closed(f, tower)


# ---------------------------------------------------------------------------
# Descent to a subfield
# ---------------------------------------------------------------------------


def eigengroup_descend(desc: EigengroupDesc, level: int | None = None) -> EigengroupDesc:
    """Intersect a closure descriptor with the substitutions over F_{p^level}."""
    tower = desc.tower
    if not desc.over_closure:
        raise DomainError("descent starts from a descriptor over the splitting field")
    if level is None:
        level = tower.k
    if level < 1 or tower.M % level:
        raise DomainError("descent level must divide the splitting degree")
    L = tower.ext
    lvl = tower.level(level)
    lower = lambda v: lvl.lower(v).val  # noqa: E731

    if desc.kind == "torus":
        if tower.in_subfield(desc.nu, level):
            return EigengroupDesc("torus", tower, level, False, lower(desc.nu), 0, 1, ())
        return _trivial_desc(tower, level, False)
    if desc.kind == "full":
        raise InternalCheckError("full descriptors are a descent-side normal form only")

    vk_vals = tuple(v for v in desc.v_values() if tower.in_subfield(v, level))
    vk_basis = space_basis(lvl.desc, tuple(sorted(lower(v) for v in vk_vals)))

    n_k, lam_k, nu_k = 1, 1, 0
    if desc.n > 1:
        span = FpSpan(L.p, L.m)
        vb = list(desc.v_basis)
        for b in vb:
            span.add(L.unpack(b))
        sub_vals = tower.subfield_values(level)
        for wv in sub_vals:
            span.add(L.unpack(wv))
        gens = vb + list(sub_vals)
        for i2 in divisors(desc.n):
            if i2 == desc.n:
                continue
            lam2 = L.pow(desc.lambda_n, i2)
            if not tower.in_subfield(lam2, level):
                continue
            target = L.mul(L.sub(1, lam2), desc.nu)
            coords = span.coords(L.unpack(target))
            if coords is None:
                continue
            vpart = 0
            for c, gv in zip(coords[: len(vb)], vb):
                vpart = L.add(vpart, L.mul(gv, c % L.p))
            mu2 = L.sub(target, vpart)
            if not tower.in_subfield(mu2, level):
                raise InternalCheckError("descent shift correction left the subfield")
            n_k = desc.n // i2
            lam_k = lower(lam2)
            nu_k = lower(L.div(mu2, L.sub(1, lam2)))
            break

    F = lvl.desc
    if n_k == 1 and not vk_basis:
        return _trivial_desc(tower, level, False)
    out = EigengroupDesc("finite", tower, level, False, nu_k if n_k > 1 else 0, n_k, lam_k, vk_basis)
    if len(vk_basis) == F.m and n_k == F.q - 1:
        out = EigengroupDesc("full", tower, level, False, 0, n_k, lam_k, vk_basis)
    return out


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _taylor_shift_vals(coeffs: list[int], F: FieldDesc, mu: int) -> list[int]:
    b = list(coeffs)
    if mu == 0:
        return b
    n = len(b)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            b[j] = F.add(b[j], F.mul(b[j + 1], mu))
    return b


def _eigen_pairs(coeffs, F: FieldDesc, values=None) -> set[tuple[int, int]]:
    d = len(coeffs) - 1
    vals = sorted(values) if values is not None else list(F.elements())
    units = [v for v in vals if v]
    fvals = list(coeffs)
    out = set()
    for mu in vals:
        b = _taylor_shift_vals(fvals, F, mu)
        for lam in units:
            pw = 1
            ok = True
            for j in range(d, -1, -1):
                if b[j] != F.mul(pw, fvals[j]):
                    ok = False
                    break
                pw = F.mul(pw, lam)
            if ok:
                out.add((lam, mu))
    return out


def eigengroup_bruteforce(f: Poly, field: FieldDesc | None = None) -> list[AffineAut]:
    """All sigma_{lam,mu} over f's field with sigma(f) proportional to f.

    Exhaustive over lam in F^x, mu in F; the independent oracle for every
    structured computation.
    """
    _require_monic_nonscalar(f)
    if field is None:
        field = f.field
    if field is not f.field:
        raise DomainError("brute force runs over the coefficient field of f")
    if field.q > _brute_cap():
        raise DomainError(
            f"field of size {field.q} exceeds the brute-force cap {_brute_cap()}"
        )
    return [AffineAut(field, l, m) for l, m in sorted(_eigen_pairs(f.c, field))]


def eigengroup_bruteforce_in_tower(f: Poly, tower: FieldTower, level: int) -> set[tuple[int, int]]:
    """Brute-force eigen-substitution pairs with lam, mu in F_{p^level} <= L.

    Pairs are returned as packed values of the level field.
    """
    _require_monic_nonscalar(f)
    if tower.M % level:
        raise DomainError("level must divide the splitting degree")
    sub = tower.subfield_values(level)
    if len(sub) > _brute_cap():
        raise DomainError(
            f"subfield of size {len(sub)} exceeds the brute-force cap {_brute_cap()}"
        )
    fe = lift_poly(f, tower)
    lvl = tower.level(level)
    pairs = _eigen_pairs(fe.c, tower.ext, sub)
    return {(lvl.lower(l).val, lvl.lower(m).val) for l, m in pairs}


# ---------------------------------------------------------------------------
# The inverse problem
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupSpec:
    """A prescribed subgroup H of the affine substitutions over a finite field.

    kinds: "trivial"; "cyclic" (order n fixing nu); "shift" (Sh_V, with
    realization variant "a" = additive image trick or "b" = double-coset
    trick needing V proper); "shift_cyclic" (Sh_V x| cyclic of order n at
    nu); "torus" (T_nu); "full".
    """

    kind: str
    field: FieldDesc
    n: int = 1
    nu: int = 0
    v_basis: tuple[int, ...] = ()
    variant: str = "a"

    def v_values(self) -> tuple[int, ...]:
        return span_values(self.field, self.v_basis)

    def validate(self) -> "SubgroupSpec":
        F = self.field
        if self.kind not in ("trivial", "cyclic", "shift", "shift_cyclic", "torus", "full"):
            raise DomainError(f"unsupported subgroup kind {self.kind!r}")
        if self.kind == "cyclic":
            if self.n < 1:
                raise DomainError("cyclic subgroup order must be positive")
            if self.n > 1 and (F.q - 1) % self.n:
                raise DomainError(f"no primitive root of unity of order {self.n} in the field")
        if self.kind in ("shift", "shift_cyclic"):
            if not self.v_basis or set(self.v_values()) == {0}:
                raise DomainError("shift subgroup needs a nonzero space V")
            verify_fp_subspace(F, self.v_values())
        if self.kind == "shift" and self.variant not in ("a", "b"):
            raise DomainError("shift realization variant must be 'a' or 'b'")
        if self.kind == "shift" and self.variant == "b" and len(self.v_values()) == F.q:
            raise DomainError("variant 'b' needs V proper in the field")
        if self.kind == "shift_cyclic" and self.n > 1:
            e = multiplier_field(F, self.v_values())
            if (F.p**e - 1) % self.n:
                raise DomainError(
                    f"cyclic order {self.n} does not divide p^e - 1 = {F.p**e - 1} "
                    "for the multiplier field of V"
                )
        return self

    def elements(self) -> list[AffineAut]:
        self.validate()
        F = self.field
        pairs = set()
        if self.kind == "trivial" or (self.kind == "cyclic" and self.n == 1):
            pairs.add((1, 0))
        elif self.kind == "cyclic":
            lam1 = primitive_root_of_unity(self.n, F).val
            lam = 1
            for _ in range(self.n):
                pairs.add((lam, F.mul(F.sub(1, lam), self.nu)))
                lam = F.mul(lam, lam1)
        elif self.kind == "shift" or (self.kind == "shift_cyclic" and self.n == 1):
            for v in self.v_values():
                pairs.add((1, v))
        elif self.kind == "shift_cyclic":
            lam1 = primitive_root_of_unity(self.n, F).val
            vv = self.v_values()
            lam = 1
            for _ in range(self.n):
                base = F.mul(F.sub(1, lam), self.nu)
                for v in vv:
                    pairs.add((lam, F.add(base, v)))
                lam = F.mul(lam, lam1)
        elif self.kind == "torus":
            for lam in F.units():
                pairs.add((lam, F.mul(F.sub(1, lam), self.nu)))
        else:
            for lam in F.units():
                for mu in F.elements():
                    pairs.add((lam, mu))
        return [AffineAut(F, l, m) for l, m in sorted(pairs)]


def inverse_eigengroup(spec: SubgroupSpec) -> Poly:
    """A monic f over the base field whose K-rational eigengroup is exactly H."""
    spec.validate()
    F = spec.field
    x = Poly.x(F)
    kind = spec.kind
    if kind == "cyclic" and spec.n == 1:
        kind = "trivial"
    if kind == "shift_cyclic" and spec.n == 1:
        kind = "shift"
    if kind == "trivial":
        return x * (x + 1) ** 2
    if kind == "cyclic":
        return Poly.from_values(F, (F.neg(spec.nu), 1)) ** spec.n - 1
    if kind == "shift":
        vv = spec.v_values()
        fv = f_V(F, vv)
        if spec.variant == "a":
            image = {fv.eval_value(a) for a in F.elements()}
            off = [r for r in F.elements() if r not in image]
            if not off:
                raise InternalCheckError("additive map with nonzero kernel cannot be onto")
            return fv - Poly.from_values(F, (off[0],))
        nu_aux = min(v for v in F.elements() if v not in set(vv))
        shifted = fv.compose_affine(1, F.neg(nu_aux))
        return fv * shifted * shifted
    if kind == "shift_cyclic":
        vv = spec.v_values()
        e = multiplier_field(F, vv)
        fv_sh = f_V(F, vv).compose_affine(1, F.neg(spec.nu))
        if spec.n == F.p**e - 1:
            return fv_sh
        return fv_sh**spec.n + 1
    if kind == "torus":
        return Poly.from_values(F, (F.neg(spec.nu), 1))
    if kind == "full":
        return Poly.from_values(F, [0, F.neg(1)] + [0] * (F.q - 2) + [1])
    raise DomainError(f"unsupported subgroup kind {spec.kind!r}")
