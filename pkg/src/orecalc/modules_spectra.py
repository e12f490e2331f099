"""Simple modules over Lambda(f) and the prime spectrum bookkeeping.

Lambda(f) is free of rank p^2 over its centre Z = K[z1, z2], so simple
modules are attached to maximal ideals of Z and split into two families:

* on the locus f = 0: for an irreducible factor p_i of f the quotient
  Lambda/(p_i) collapses to F_i[y] with F_i = K[x]/(p_i) (the derivation
  vanishes), and the simple module L(p_i, q) = F_i[y]/(q) has x acting as
  the root class of p_i and y as the companion matrix of q; the dimension
  over F_i is deg q.

* off the locus: a maximal ideal m = (x^p - xi, z2 - rho) of Z with
  f(xi^(1/p)) != 0 gives a p-dimensional simple module on the basis
  {y^i 1}, with x acting through the explicit binomial table
  x . y^i 1 = xi^(1/p) y^i 1 + sum_{j<i} C(i,j) (-1)^(i-j)
  (delta^(i-j-1) f)(xi^(1/p)) y^j 1 and y acting as the cyclic shift whose
  top column reduces y^p through z2 = y^p - c(x) y, i.e. y^p = rho + c(x) y
  on the module.  rho is the z2-coordinate of the maximal ideal throughout
  (the y^p-coordinate differs from it by c(xi^(1/p)) times the y-eigenvalue
  and is not used).

The x-action table is never trusted as typed: it is re-derived from scratch
by reducing x * y^i modulo the left ideal generated by x - xi^(1/p) and
z2 - rho (commuting x past y^i with the binomial rewrite rule and recursing
on the lower-order terms), and the two matrices must agree exactly.

Simplicity checks are Burnside-style word spans.  Off f the centre acts by
the scalars (xi, rho) and the word algebra must fill the full p x p matrix
ring.  On f the image algebra F_i[Y] is a field, not a matrix ring, so the
honest criteria are: word span of dimension deg q, and every basis vector
cyclic under the action.

The spectrum of Lambda: minimal primes are the irreducible factors p_i of f
(computed through Frobenius orbits of the roots), the height-one completely
prime layer is the same list, and maximal ideals of Z off V(f^p) are
enumerated as Frobenius orbits of points (xi, rho) up to a residue degree
bound.  Krull and global dimension are both the constant 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .eigengroup import _elt_json, _poly_json
from .errors import DomainError, InternalCheckError
from .gf import FieldDesc, tower_over
from .ore import OreAlgebra
from .poly import (
    Poly,
    is_irreducible,
    lift_poly,
    lower_poly,
    roots_in_ext,
    roots_with_multiplicity,
    splitting_tower,
)

# ---------------------------------------------------------------------------
# Dense exact matrices (row-major tuples of packed values)
# ---------------------------------------------------------------------------


def mat_id(F: FieldDesc, d: int):
    return tuple(tuple(1 if r == c else 0 for c in range(d)) for r in range(d))


def mat_zero(F: FieldDesc, d: int):
    return tuple((0,) * d for _ in range(d))


def mat_add(F: FieldDesc, A, B):
    return tuple(tuple(F.add(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_sub(F: FieldDesc, A, B):
    return tuple(tuple(F.sub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def mat_scale(F: FieldDesc, A, s: int):
    return tuple(tuple(F.mul(a, s) for a in row) for row in A)


def mat_mul(F: FieldDesc, A, B):
    d = len(A)
    Bt = tuple(zip(*B))
    out = []
    for r in range(d):
        Ar = A[r]
        row = []
        for c in range(d):
            acc = 0
            for a, b in zip(Ar, Bt[c]):
                if a and b:
                    acc = F.add(acc, F.mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(F: FieldDesc, A, v):
    return tuple(
        _dot(F, row, v) for row in A
    )


def _dot(F: FieldDesc, row, v):
    acc = 0
    for a, b in zip(row, v):
        if a and b:
            acc = F.add(acc, F.mul(a, b))
    return acc


def mat_pow(F: FieldDesc, A, e: int):
    out = mat_id(F, len(A))
    b = A
    while e:
        if e & 1:
            out = mat_mul(F, out, b)
        b = mat_mul(F, b, b)
        e >>= 1
    return out


def mat_poly(F: FieldDesc, g: Poly, A):
    """g(A) by Horner; g's field must be F."""
    d = len(A)
    out = mat_zero(F, d)
    for c in reversed(g.c):
        out = mat_mul(F, A, out)
        if c:
            out = mat_add(F, out, mat_scale(F, mat_id(F, d), c))
    return out


def is_scalar_mat(F: FieldDesc, A, s: int) -> bool:
    return A == mat_scale(F, mat_id(F, len(A)), s)


class _Span:
    """Row space over F with online Gaussian elimination on packed vectors."""

    def __init__(self, F: FieldDesc, width: int):
        self.F = F
        self.rows: list[tuple[int, ...]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def add(self, vec) -> bool:
        F = self.F
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                c = v[piv]
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        piv = next((i for i, a in enumerate(v) if a), None)
        if piv is None:
            return False
        inv = F.inv(v[piv])
        self.rows.append(tuple(F.mul(a, inv) for a in v))
        self.pivots.append(piv)
        return True

    def contains(self, vec) -> bool:
        F = self.F
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            if v[piv]:
                c = v[piv]
                v = [F.sub(a, F.mul(c, b)) for a, b in zip(v, row)]
        return not any(v)


def word_span_dim(F: FieldDesc, X, Y, cap: int | None = None) -> int:
    """Dimension of the algebra spanned by words in X and Y (with identity)."""
    d = len(X)
    span = _Span(F, d * d)
    frontier = [mat_id(F, d)]
    flat = lambda M: tuple(v for row in M for v in row)  # noqa: E731
    span.add(flat(frontier[0]))
    limit = cap if cap is not None else d * d
    while frontier and span.dim < limit:
        new = []
        for W in frontier:
            for A in (X, Y):
                WA = mat_mul(F, A, W)
                if span.add(flat(WA)):
                    new.append(WA)
        frontier = new
    return span.dim


def all_basis_vectors_cyclic(F: FieldDesc, X, Y) -> bool:
    d = len(X)
    for i in range(d):
        e = tuple(1 if r == i else 0 for r in range(d))
        span = _Span(F, d)
        span.add(e)
        frontier = [e]
        while frontier and span.dim < d:
            new = []
            for v in frontier:
                for A in (X, Y):
                    w = mat_vec(F, A, v)
                    if span.add(w):
                        new.append(w)
            frontier = new
        if span.dim != d:
            return False
    return True


# ---------------------------------------------------------------------------
# Simple modules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SimpleModuleSpec:
    """A simple Lambda(f)-module given by exact matrices.

    kind "on_f": L(p_i, q) = F_i[y]/(q) over F_i = K[x]/(p_i); dim = deg q.
    kind "off_f": Lambda/Lambda(x - xi^(1/p), z2 - rho); dim = p; xi and rho
    are the central characters of z1 = x^p and z2 (rho is the z2-coordinate).
    """

    kind: str
    f: Poly
    field: FieldDesc
    dim: int
    X: tuple
    Y: tuple
    xi: int | None = None
    rho: int | None = None
    p_i: Poly | None = None
    q: Poly | None = None

    def central_character(self) -> tuple[int, int] | None:
        return (self.xi, self.rho) if self.kind == "off_f" else None

    def describe(self) -> dict:
        F = self.field
        return {
            "kind": self.kind,
            "dim": self.dim,
            "X": [[_elt_json(F, v) for v in row] for row in self.X],
            "Y": [[_elt_json(F, v) for v in row] for row in self.Y],
            "xi": _elt_json(F, self.xi) if self.xi is not None else None,
            "rho": _elt_json(F, self.rho) if self.rho is not None else None,
            "p_i": _poly_json(self.p_i),
            "q": _poly_json(self.q),
        }


def _require_monic_nonscalar(f: Poly) -> None:
    if f.degree < 1 or not f.is_monic():
        raise DomainError("a monic nonscalar polynomial is required")


def simple_module_on_f(f: Poly, p_i: Poly, q: Poly) -> SimpleModuleSpec:
    """L(p_i, q) for p_i | f irreducible and q irreducible over F_i = K[x]/(p_i).

    For deg p_i > 1 the residue field F_i is realized as the canonical
    extension field and q must be given over it.
    """
    _require_monic_nonscalar(f)
    K = f.field
    if p_i.field is not K:
        raise DomainError("p_i must be over the coefficient field of f")
    if p_i.degree < 1 or not p_i.is_monic() or not is_irreducible(p_i):
        raise DomainError("p_i must be monic irreducible")
    if not (f % p_i).is_zero():
        raise DomainError("p_i does not divide f")
    e = p_i.degree
    if e == 1:
        F = K
        xbar = K.neg(p_i.c[0])
        fe, pie = f, p_i
        c_e = OreAlgebra(f).c_poly
    else:
        tower = tower_over(K, K.m * e)
        F = tower.ext
        roots = roots_in_ext(p_i, tower)
        if len(roots) != e:
            raise InternalCheckError("irreducible p_i must split in its residue field")
        xbar = roots[0]
        fe, pie = lift_poly(f, tower), lift_poly(p_i, tower)
        c_e = lift_poly(OreAlgebra(f).c_poly, tower)
    if q.field is not F:
        raise DomainError("q must be over the residue field K[x]/(p_i)")
    if q.degree < 1 or not q.is_monic() or not is_irreducible(q):
        raise DomainError("q must be monic irreducible over the residue field")

    d = q.degree
    X = mat_scale(F, mat_id(F, d), xbar)
    Y = []
    for r in range(d):
        row = []
        for c in range(d):
            if c < d - 1:
                row.append(1 if r == c + 1 else 0)
            else:
                row.append(F.neg(q.coeff(r).val))
        Y.append(tuple(row))
    Y = tuple(Y)

    # defining relation and residue relations
    lhs = mat_sub(F, mat_mul(F, Y, X), mat_mul(F, X, Y))
    if lhs != mat_poly(F, fe, X):
        raise InternalCheckError("YX - XY != f(X) on the constructed module")
    if mat_poly(F, pie, X) != mat_zero(F, d):
        raise InternalCheckError("p_i(X) != 0")
    if mat_poly(F, q, Y) != mat_zero(F, d):
        raise InternalCheckError("q(Y) != 0")

    # central characters: z1 acts as xbar^p, z2 as (y^p - c(xbar) y) mod q
    p = F.p
    if not is_scalar_mat(F, mat_pow(F, X, p), F.pow(xbar, p)):
        raise InternalCheckError("z1 = x^p does not act as a scalar")
    z2_mat = mat_sub(F, mat_pow(F, Y, p), mat_scale(F, Y, c_e.eval_value(xbar)))
    ypoly = Poly.from_values(F, [0] * p + [1]) - Poly.from_values(
        F, (0, c_e.eval_value(xbar))
    )
    if mat_poly(F, ypoly % q, Y) != z2_mat:
        raise InternalCheckError("z2 action is not multiplication by its residue class")

    # simplicity: the image algebra is the field F_i[y]/(q)
    if word_span_dim(F, X, Y) != d:
        raise InternalCheckError("word span of the commutative image must be deg q")
    if not all_basis_vectors_cyclic(F, X, Y):
        raise InternalCheckError("a basis vector fails to generate the module")

    return SimpleModuleSpec("on_f", f, F, d, X, Y, p_i=p_i, q=q)


def simple_module_off_f(f: Poly, xi, rho) -> SimpleModuleSpec:
    """The p-dimensional simple module at m = (x^p - xi, z2 - rho), off V(f^p)."""
    _require_monic_nonscalar(f)
    K = f.field
    xi = K.element(xi).val
    rho = K.element(rho).val
    p = K.p
    a = K.pth_root(xi)
    if f.eval_value(a) == 0:
        raise DomainError("the maximal ideal lies on V(f^p): f(xi^(1/p)) = 0")

    # closed-form x-action table; phi_t = delta^t(f) with delta(g) = f g'
    phis = [f]
    for _ in range(max(0, p - 2)):
        phis.append(f * phis[-1].derivative())
    phi_vals = [g.eval_value(a) for g in phis]  # phi_t = delta^t(f), t = 0..p-2

    X = [[0] * p for _ in range(p)]
    for i in range(p):
        X[i][i] = a
        for j in range(i):
            t = i - j
            cb = comb(i, j) % p
            sign = K.neg(phi_vals[t - 1]) if t % 2 else phi_vals[t - 1]
            X[j][i] = K.mul(cb, sign) if cb else 0
    X = tuple(tuple(row) for row in X)

    # independent re-derivation: reduce x*y^i modulo the left ideal
    # generated by x - a (and z2 - rho, which never enters below y^p)
    # via x y^i = y^i x - sum_{t>=1} C(i,t) delta^t(x) y^(i-t) and
    # delta^t(x) = delta^(t-1)(f), then recurse on the polynomial actions.
    Xr = [[0] * p for _ in range(p)]

    def apply_poly_partial(g: Poly, col: int):
        """g(X) e_col using the already-built columns (col < current i)."""
        vec = [0] * p
        for c in reversed(g.c):
            nxt = [0] * p
            for idx, val in enumerate(vec):
                if val:
                    for r in range(p):
                        if Xr[r][idx]:
                            nxt[r] = K.add(nxt[r], K.mul(Xr[r][idx], val))
            vec = nxt
            if c:
                vec[col] = K.add(vec[col], c)
        return vec

    for i in range(p):
        col = [0] * p
        col[i] = a
        for t in range(1, i + 1):
            cb = comb(i, t) % p
            if not cb:
                continue
            contrib = apply_poly_partial(phis[t - 1], i - t)
            for r in range(p):
                if contrib[r]:
                    col[r] = K.sub(col[r], K.mul(cb, contrib[r]))
        for r in range(p):
            Xr[r][i] = col[r]
    if tuple(tuple(row) for row in Xr) != X:
        raise InternalCheckError("x-action table disagrees with the ideal reduction")

    # y-action: cyclic shift with y^p = rho + c(x) y on the module
    alg = OreAlgebra(f)
    c_poly = alg.c_poly
    c_of_X = mat_poly(K, c_poly, X)
    Y = [[0] * p for _ in range(p)]
    for i in range(p - 1):
        Y[i + 1][i] = 1
    Y[0][p - 1] = rho
    for r in range(p):
        Y[r][p - 1] = K.add(Y[r][p - 1], c_of_X[r][1])
    Y = tuple(tuple(row) for row in Y)

    lhs = mat_sub(K, mat_mul(K, Y, X), mat_mul(K, X, Y))
    if lhs != mat_poly(K, f, X):
        raise InternalCheckError("YX - XY != f(X) on the constructed module")
    if not is_scalar_mat(K, mat_pow(K, X, p), xi):
        raise InternalCheckError("x^p does not act as xi")
    z2_mat = mat_sub(K, mat_pow(K, Y, p), mat_mul(K, c_of_X, Y))
    if not is_scalar_mat(K, z2_mat, rho):
        raise InternalCheckError("z2 does not act as rho")
    if word_span_dim(K, X, Y) != p * p:
        raise InternalCheckError("word span must be the full matrix algebra off f")
    if not all_basis_vectors_cyclic(K, X, Y):
        raise InternalCheckError("a basis vector fails to generate the module")

    return SimpleModuleSpec("off_f", f, K, p, X, Y, xi=xi, rho=rho)


# ---------------------------------------------------------------------------
# Spectrum
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumDesc:
    f: Poly
    min_primes: tuple[tuple[Poly, int], ...]
    max_off_f: tuple[tuple[int, int, int], ...]  # (residue degree, xi, rho)
    degree_bound: int

    @property
    def ht1(self) -> tuple[Poly, ...]:
        return tuple(p for p, _ in self.min_primes)

    @property
    def krull_dim(self) -> int:
        return 2

    @property
    def global_dim(self) -> int:
        return 2

    def spec_c(self) -> list[str]:
        out = ["0"]
        out.extend(f"({p_i!r})" for p_i, _ in self.min_primes)
        out.extend(
            f"({p_i!r}, q): q monic irreducible over K[x]/({p_i!r}) in y"
            for p_i, _ in self.min_primes
        )
        return out

    def describe(self) -> dict:
        K = self.f.field
        entries = []
        for j, xi, rho in self.max_off_f:
            Fj = tower_over(K, K.m * j).ext
            entries.append(
                {"degree": j, "xi": _elt_json(Fj, xi), "rho": _elt_json(Fj, rho)}
            )
        return {
            "min_primes": [
                {"poly": _poly_json(p_i), "mult": n} for p_i, n in self.min_primes
            ],
            "ht1": [_poly_json(p_i) for p_i in self.ht1],
            "spec_c": self.spec_c(),
            "max_off_f": entries,
            "krull_dim": self.krull_dim,
            "global_dim": self.global_dim,
        }


def factor_into_irreducibles(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities via Frobenius orbits."""
    _require_monic_nonscalar(f)
    K = f.field
    tower = splitting_tower(f)
    rm = roots_with_multiplicity(f, tower)
    L = tower.ext
    mult = rm.as_multiset()
    remaining = set(rm.distinct())
    factors = []
    while remaining:
        v = min(remaining)
        orbit = [v]
        w = L.frob(v, tower.k)
        while w != v:
            orbit.append(w)
            w = L.frob(w, tower.k)
        prod = Poly.one(L)
        for w in orbit:
            if w not in remaining or mult[w] != mult[v]:
                raise InternalCheckError("Frobenius orbit is not multiplicity-stable")
            remaining.discard(w)
            prod = prod * Poly.from_values(L, (L.neg(w), 1))
        p_i = lower_poly(prod, tower)
        if not is_irreducible(p_i):
            raise InternalCheckError("orbit polynomial failed the irreducibility test")
        factors.append((p_i, mult[v]))
    check = Poly.one(K)
    for p_i, n in factors:
        check = check * p_i**n
    if check != f:
        raise InternalCheckError("factorization does not reconstruct f")
    factors.sort(key=lambda t: (t[0].degree, t[0].c))
    return factors


def spectrum(f: Poly, degree_bound: int = 1) -> SpectrumDesc:
    """Minimal primes, height-one layer, and maximal ideals of the centre
    off V(f^p) up to the residue degree bound."""
    _require_monic_nonscalar(f)
    if degree_bound < 0:
        raise DomainError("degree bound must be nonnegative")
    K = f.field
    factors = factor_into_irreducibles(f)
    for p_i, _ in factors:
        if not ((f * p_i.derivative()) % p_i).is_zero():
            raise InternalCheckError("factor is not normal: p_i does not divide f p_i'")

    fp = Poly.from_values(K, (K.frob(c) for c in f.c))  # f^p = fp(x^p)
    points = []
    for j in range(1, degree_bound + 1):
        tw = tower_over(K, K.m * j)
        Fj = tw.ext
        fpj = lift_poly(fp, tw)
        proper = [t for t in range(1, j) if j % t == 0]
        for xi in Fj.elements():
            if fpj.eval_value(xi) == 0:
                continue
            for rho in Fj.elements():
                if any(
                    tw.in_subfield(xi, tw.k * t) and tw.in_subfield(rho, tw.k * t)
                    for t in proper
                ):
                    continue
                w = (Fj.frob(xi, tw.k), Fj.frob(rho, tw.k))
                is_min = True
                while w != (xi, rho):
                    if w < (xi, rho):
                        is_min = False
                        break
                    w = (Fj.frob(w[0], tw.k), Fj.frob(w[1], tw.k))
                if is_min:
                    points.append((j, xi, rho))
    return SpectrumDesc(f, tuple(factors), tuple(points), degree_bound)
