"""Exact arithmetic in finite fields F_{p^m} and explicit subfield towers.

Representation
--------------
An element of F_{p^m} = F_p[t]/(modulus) is the coefficient vector
(c_0, ..., c_{m-1}) of its residue w.r.t. the power basis 1, t, ..., t^{m-1},
packed into the integer c_0 + c_1 p + ... + c_{m-1} p^{m-1}.  Packing gives a
canonical total order on elements (used wherever a deterministic choice is
needed) and O(1) hashing.  FieldDesc works on packed integers; FqElement is
the thin operator-overloading wrapper around (field, value).

Moduli default to the lexicographically smallest monic irreducible of the
required degree (scanning packed values upward), so field construction is
reproducible across runs.  Multiplication, inversion and powering go through
discrete-log tables built from the smallest multiplicative generator; fields
too large for tables (q > 2^16) fall back to direct polynomial arithmetic.

A FieldTower fixes a base K = F_{p^k} inside an extension L = F_{p^M},
k | M, with the embedding stored explicitly: for every level j | M the image
of the canonical degree-j generator is the packed-smallest root of its
modulus in L.  All subfield tests, lifts and lowerings go through the tower,
never through implicit coercions.
"""

from __future__ import annotations

import os

from .errors import DomainError, InternalCheckError

_LOG_TABLE_LIMIT = 1 << 16

# Default desk-scale caps; overridable per call or via the environment.
DEFAULT_P_CAP = 13
DEFAULT_Q_CAP = 1 << 20


def _p_cap() -> int:
    return int(os.environ.get("ORECALC_P_CAP", DEFAULT_P_CAP))


def _q_cap() -> int:
    return int(os.environ.get("ORECALC_Q_CAP", DEFAULT_Q_CAP))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


# ---------------------------------------------------------------------------
# Bootstrap polynomial arithmetic over F_p on plain coefficient lists
# (low degree first).  Only used to validate/choose moduli and to multiply in
# fields without log tables.
# ---------------------------------------------------------------------------


def _fp_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out)


def _fp_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lb) % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _fp_trim(a)
    return a


def _fp_is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg(f)/2."""
    d = len(f) - 1
    if d < 1:
        return False
    for deg in range(1, d // 2 + 1):
        for v in range(p**deg):
            g = _unpack_int(v, deg, p) + [1]
            if not _fp_mod(f, g, p):
                return False
    return True


def _unpack_int(v: int, m: int, p: int) -> list[int]:
    out = []
    for _ in range(m):
        v, r = divmod(v, p)
        out.append(r)
    return out


_MODULUS_CACHE: dict[tuple[int, int], tuple[int, ...]] = {}


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Packed-smallest monic irreducible of degree m over F_p."""
    key = (p, m)
    hit = _MODULUS_CACHE.get(key)
    if hit is not None:
        return hit
    for v in range(p**m):
        cand = _unpack_int(v, m, p) + [1]
        if _fp_is_irreducible(cand, p):
            mod = tuple(cand)
            _MODULUS_CACHE[key] = mod
            return mod
    raise InternalCheckError(f"no irreducible of degree {m} over F_{p}")


# ---------------------------------------------------------------------------
# Field descriptors
# ---------------------------------------------------------------------------


class FieldDesc:
    """F_{p^m} with a fixed modulus; all methods operate on packed values."""

    def __init__(self, p: int, m: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._pw = tuple(p**i for i in range(m + 1))
        self._has_tables = self.q <= _LOG_TABLE_LIMIT
        if self._has_tables:
            self._digits = [tuple(_unpack_int(v, m, p)) for v in range(self.q)]
            self._neg = [self.pack(tuple((-d) % p for d in dig)) for dig in self._digits]
            self._build_log_tables()
        else:
            self._digits = None
            self._neg = None
            self.generator = self._find_generator()

    # -- construction helpers ------------------------------------------------

    def _mul_slow(self, a: int, b: int) -> int:
        pa = _unpack_int(a, self.m, self.p)
        pb = _unpack_int(b, self.m, self.p)
        prod = _fp_mul(pa, pb, self.p)
        prod = _fp_mod(prod, list(self.modulus), self.p)
        return sum(c * self._pw[i] for i, c in enumerate(prod))

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.q - 1
        if n == 1:
            return 1
        primes = prime_factors(n)
        for g in range(2, self.q):
            if all(self._pow_slow(g, n // r) != 1 for r in primes):
                return g
        raise InternalCheckError("no multiplicative generator found")

    def _build_log_tables(self) -> None:
        self.generator = self._find_generator()
        q1 = self.q - 1
        exp = [1] * q1
        cur = 1
        for i in range(1, q1):
            cur = self._mul_slow(cur, self.generator)
            exp[i] = cur
        log = [0] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    # -- packing -------------------------------------------------------------

    def pack(self, coeffs) -> int:
        v = 0
        for i, c in enumerate(coeffs):
            v += (c % self.p) * self._pw[i]
        return v

    def unpack(self, v: int) -> tuple[int, ...]:
        if self._digits is not None:
            return self._digits[v]
        return tuple(_unpack_int(v, self.m, self.p))

    # -- arithmetic on packed values ------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        da, db, p = self.unpack(a), self.unpack(b), self.p
        v = 0
        for i in range(self.m):
            v += ((da[i] + db[i]) % p) * self._pw[i]
        return v

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self._neg is not None:
            return self._neg[a]
        return self.pack(tuple((-d) % self.p for d in self.unpack(a)))

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._has_tables:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("inverse of zero")
        if self._has_tables:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._pow_slow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise DomainError("inverse of zero")
        if self._has_tables:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        if e < 0:
            a, e = self._pow_slow(a, self.q - 2), -e
        return self._pow_slow(a, e % (self.q - 1)) if e else 1

    def frob(self, a: int, t: int = 1) -> int:
        """a^(p^t)."""
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, t, self.q - 1) if self.q > 2 else 1)

    def pth_root(self, a: int) -> int:
        """The unique b with b^p = a (Frobenius is bijective)."""
        return self.frob(a, self.m - 1) if self.m > 1 else a

    def order_of(self, a: int) -> int:
        if a == 0:
            raise DomainError("multiplicative order of zero")
        n = self.q - 1
        for r in prime_factors(n):
            while n % r == 0 and self.pow(a, n // r) == 1:
                n //= r
        return n

    # -- element interface -----------------------------------------------------

    def element(self, x) -> "FqElement":
        if isinstance(x, FqElement):
            if x.field is not self:
                raise DomainError("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FqElement(self, x % self.p)
        return FqElement(self, self.pack(x))

    def from_value(self, v: int) -> "FqElement":
        return FqElement(self, v)

    @property
    def zero(self) -> "FqElement":
        return FqElement(self, 0)

    @property
    def one(self) -> "FqElement":
        return FqElement(self, 1)

    @property
    def gen(self) -> "FqElement":
        """The residue class of t (zero when m == 1 and modulus is t)."""
        return FqElement(self, self._pw[1] if self.m > 1 else (-self.modulus[0]) % self.p)

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    def __repr__(self) -> str:
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def describe(self) -> dict:
        return {"p": self.p, "degree": self.m, "modulus": list(self.modulus)}


_FIELD_CACHE: dict[tuple[int, int, tuple[int, ...]], FieldDesc] = {}


def GF(p: int, m: int = 1, modulus=None, *, p_cap: int | None = None, q_cap: int | None = None) -> FieldDesc:
    """Cached field constructor; identical arguments return the same object."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if m < 1:
        raise DomainError("extension degree must be >= 1")
    if p > (p_cap if p_cap is not None else _p_cap()):
        raise DomainError(f"characteristic {p} exceeds the configured cap")
    if p**m > (q_cap if q_cap is not None else _q_cap()):
        raise DomainError(f"field size {p}^{m} exceeds the configured cap")
    if modulus is None:
        mod = canonical_modulus(p, m)
    else:
        mod = tuple(c % p for c in modulus)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise DomainError("modulus must be monic of the stated degree")
        if not _fp_is_irreducible(list(mod), p):
            raise DomainError("modulus is reducible")
    key = (p, m, mod)
    field = _FIELD_CACHE.get(key)
    if field is None:
        field = FieldDesc(p, m, mod)
        _FIELD_CACHE[key] = field
    return field


class FqElement:
    """A field element: a FieldDesc plus a packed value."""

    __slots__ = ("field", "val")

    def __init__(self, field: FieldDesc, val: int):
        self.field = field
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.unpack(self.val)

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field is not self.field:
                raise DomainError("mixed-field arithmetic is not defined")
            return other.val
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.add(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.sub(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.sub(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.mul(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.div(self.val, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FqElement(self.field, self.field.div(v, self.val))

    def __pow__(self, e: int):
        return FqElement(self.field, self.field.pow(self.val, e))

    def __neg__(self):
        return FqElement(self.field, self.field.neg(self.val))

    def __bool__(self):
        return self.val != 0

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field is other.field and self.val == other.val
        if isinstance(other, int):
            return self.val == other % self.field.p and self.val < self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.val))

    def __repr__(self):
        if self.field.m == 1:
            return str(self.val)
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


# ---------------------------------------------------------------------------
# F_p linear algebra on digit vectors (used for subfields, shift spaces,
# descent).  Vectors are sequences of ints mod p.
# ---------------------------------------------------------------------------


class FpSpan:
    """Incrementally echelonized F_p-span with coordinate recovery.

    Maintains full reduced echelon form: every stored row vanishes at the
    pivot columns of all other rows, so a single reduction pass is exact.
    Each row also records its expression over the generators fed to add(),
    so coords() can rewrite span members over the original generators.
    """

    def __init__(self, p: int, dim: int):
        self.p = p
        self.dim = dim
        self.gens: list[tuple[int, ...]] = []
        # rows: (pivot index, vector, combination over self.gens)
        self._rows: list[tuple[int, list[int], list[int]]] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> list[tuple[int, ...]]:
        return [tuple(vec) for _, vec, _ in self._rows]

    def _reduce(self, vec) -> tuple[list[int], list[int]]:
        p = self.p
        v = [c % p for c in vec]
        combo = [0] * len(self.gens)
        for piv, row, rcombo in self._rows:
            c = v[piv]
            if c:
                for i in range(self.dim):
                    v[i] = (v[i] - c * row[i]) % p
                for i, rc in enumerate(rcombo):
                    combo[i] = (combo[i] + c * rc) % p
        return v, combo

    def add(self, vec) -> bool:
        """Add a generator; returns True when it enlarges the span."""
        p = self.p
        vec = tuple(c % p for c in vec)
        v, combo = self._reduce(vec)  # vec = v + combo . gens
        self.gens.append(vec)
        combo.append(0)
        for piv in range(self.dim):
            if v[piv]:
                inv = pow(v[piv], p - 2, p)
                row = [(x * inv) % p for x in v]
                # row = inv*vec - inv*(combo . gens), vec being the new gen
                rcombo = [(-x * inv) % p for x in combo]
                rcombo[-1] = inv % p
                ngens = len(self.gens)
                rows = []
                for piv2, row2, rcombo2 in self._rows:
                    c2 = row2[piv]
                    if c2:
                        row2 = [(a - c2 * b) % p for a, b in zip(row2, row)]
                        padded = list(rcombo2) + [0] * (ngens - len(rcombo2))
                        rcombo2 = [(a - c2 * b) % p for a, b in zip(padded, rcombo)]
                    rows.append((piv2, row2, rcombo2))
                rows.append((piv, row, rcombo))
                rows.sort(key=lambda r: r[0])
                self._rows = rows
                return True
        return False

    def contains(self, vec) -> bool:
        v, _ = self._reduce(vec)
        return not any(v)

    def coords(self, vec) -> list[int] | None:
        """Coefficients over the generator list, or None if outside the span."""
        v, combo = self._reduce(vec)
        if any(v):
            return None
        return combo


def fp_nullspace(rows: list[list[int]], p: int) -> list[list[int]]:
    """Basis of the right null space of the matrix given by rows."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(mat)):
            if mat[i][c] % p:
                sel = i
                break
        if sel is None:
            continue
        mat[r], mat[sel] = mat[sel], mat[r]
        inv = pow(mat[r][c] % p, p - 2, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c] % p
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-mat[ri][fc]) % p
        out.append(v)
    return out


# ---------------------------------------------------------------------------
# Roots of unity and subfield predicates
# ---------------------------------------------------------------------------


def min_field_of_unity(n: int, p: int) -> int:
    """Smallest m with n | p^m - 1 (the degree hosting a primitive n-th root)."""
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return 1
    if n % p == 0:
        raise DomainError(f"no primitive {n}-th roots of unity in characteristic {p}")
    m, r = 1, p % n
    while r != 1:
        r = (r * p) % n
        m += 1
    return m


def primitive_root_of_unity(n: int, field: FieldDesc) -> FqElement:
    """Canonical element of multiplicative order exactly n."""
    if n < 1:
        raise DomainError("n must be positive")
    if (field.q - 1) % n != 0:
        raise DomainError(f"{field!r} has no element of order {n}")
    return FqElement(field, field.pow(field.generator, (field.q - 1) // n))


def in_subfield(a: FqElement, k: int) -> bool:
    """Whether a lies in F_{p^k} <= its field; requires k | m."""
    if a.field.m % k != 0:
        raise DomainError(f"F_{{p^{k}}} is not a subfield of {a.field!r}")
    return a.field.frob(a.val, k) == a.val


def pth_root(a: FqElement) -> FqElement:
    return FqElement(a.field, a.field.pth_root(a.val))


# ---------------------------------------------------------------------------
# Towers
# ---------------------------------------------------------------------------


class TowerLevel:
    """A subfield F_{p^j} of the tower's extension with an explicit embedding."""

    def __init__(self, tower: "FieldTower", j: int, desc: FieldDesc):
        self.tower = tower
        self.j = j
        self.desc = desc
        ext = tower.ext
        if desc is ext:
            self.gen_img = desc.gen.val
            self.pows = tuple(ext.pow(self.gen_img, i) for i in range(j))
            self._solver = None
            return
        vals = tower.subfield_values(j)
        roots = [v for v in vals if _eval_fp_poly(desc.modulus, v, ext) == 0]
        if len(roots) != j:
            raise InternalCheckError("embedding root count mismatch")
        self.gen_img = min(roots)
        self.pows = tuple(ext.pow(self.gen_img, i) for i in range(j))
        solver = FpSpan(ext.p, ext.m)
        for pw in self.pows:
            solver.add(ext.unpack(pw))
        if solver.rank != j:
            raise InternalCheckError("embedded power basis is degenerate")
        self._solver = solver

    def lift(self, a) -> int:
        """Packed ext-value of a level element (FqElement of desc or packed int)."""
        val = a.val if isinstance(a, FqElement) else a
        if self.desc is self.tower.ext:
            return val
        dig = self.desc.unpack(val)
        ext = self.tower.ext
        out = 0
        for c, pw in zip(dig, self.pows):
            if c:
                out = ext.add(out, ext.mul(c, pw))
        return out

    def lower(self, v: int) -> FqElement:
        """The level element whose lift is v; DomainError when v is outside."""
        if self.desc is self.tower.ext:
            return FqElement(self.desc, v)
        coords = self._solver.coords(self.tower.ext.unpack(v))
        if coords is None:
            raise DomainError("value does not lie in the requested subfield")
        return FqElement(self.desc, self.desc.pack(coords))


def _eval_fp_poly(coeffs, v: int, field: FieldDesc) -> int:
    """Evaluate a polynomial with prime-subfield coefficients at a packed value."""
    acc = 0
    for c in reversed(coeffs):
        acc = field.add(field.mul(acc, v), c % field.p)
    return acc


class FieldTower:
    """Base K = F_{p^k} explicitly embedded in L = F_{p^M}, k | M."""

    def __init__(self, base: FieldDesc, ext_degree: int):
        if ext_degree % base.m != 0:
            raise DomainError("extension degree must be a multiple of the base degree")
        self.base = base
        self.p = base.p
        self.ext = base if ext_degree == base.m else GF(base.p, ext_degree)
        self._levels: dict[int, TowerLevel] = {}
        self._subfield_cache: dict[int, tuple[int, ...]] = {}
        self.root_cache: dict = {}

    @property
    def k(self) -> int:
        return self.base.m

    @property
    def M(self) -> int:
        return self.ext.m

    def level(self, j: int) -> TowerLevel:
        if self.M % j != 0:
            raise DomainError(f"F_{{p^{j}}} is not a subfield of F_{{p^{self.M}}}")
        lvl = self._levels.get(j)
        if lvl is None:
            desc = self.base if j == self.k else (self.ext if j == self.M else GF(self.p, j))
            lvl = TowerLevel(self, j, desc)
            self._levels[j] = lvl
        return lvl

    def lift(self, a: FqElement) -> int:
        """Packed ext-value of a base element."""
        if a.field is self.ext:
            return a.val
        if a.field is not self.base:
            raise DomainError("lift expects a base-field element")
        return self.level(self.k).lift(a)

    def lower(self, v: int, j: int | None = None) -> FqElement:
        return self.level(self.k if j is None else j).lower(v)

    def in_subfield(self, v: int, j: int) -> bool:
        if self.M % j != 0:
            raise DomainError(f"F_{{p^{j}}} is not a subfield of F_{{p^{self.M}}}")
        return self.ext.frob(v, j) == v

    def subfield_values(self, j: int) -> tuple[int, ...]:
        """Sorted packed ext-values of the subfield F_{p^j}, via Frobenius fixed points."""
        hit = self._subfield_cache.get(j)
        if hit is not None:
            return hit
        if self.M % j != 0:
            raise DomainError(f"F_{{p^{j}}} is not a subfield of F_{{p^{self.M}}}")
        ext = self.ext
        if j == self.M:
            vals = tuple(range(ext.q))
            self._subfield_cache[j] = vals
            return vals
        # kernel of (Frobenius^j - id) as an F_p-linear map on L
        cols = []
        for i in range(ext.m):
            basis_val = ext._pw[i]
            img = ext.sub(ext.frob(basis_val, j), basis_val)
            cols.append(ext.unpack(img))
        rows = [[cols[i][r] for i in range(ext.m)] for r in range(ext.m)]
        kern = fp_nullspace(rows, ext.p)
        if len(kern) != j:
            raise InternalCheckError("subfield dimension mismatch")
        vals = {0}
        for b in kern:
            bval = ext.pack(b)
            cur = list(vals)
            step = 0
            for _ in range(1, ext.p):
                step = ext.add(step, bval)
                vals.update(ext.add(v, step) for v in cur)
        out = tuple(sorted(vals))
        if len(out) != ext.p**j:
            raise InternalCheckError("subfield enumeration mismatch")
        self._subfield_cache[j] = out
        return out


_TOWER_CACHE: dict[tuple[int, tuple, int], FieldTower] = {}


def tower_over(base: FieldDesc, ext_degree: int) -> FieldTower:
    key = (base.p, (base.m, base.modulus), ext_degree)
    tw = _TOWER_CACHE.get(key)
    if tw is None:
        tw = FieldTower(base, ext_degree)
        _TOWER_CACHE[key] = tw
    return tw
