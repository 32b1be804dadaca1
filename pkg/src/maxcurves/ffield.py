"""Exact arithmetic in F_{q^2} = F_{p^{2m}} with the subfield ladder F_p < F_q < F_{q^2}.

A :class:`FieldCtx` fixes a monic irreducible modulus of degree 2m over F_p and
represents every element canonically by its coefficient vector in the power
basis, packed into a single integer base p (the coefficient of x^i is digit i).
The subfield F_q is recognised analytically, via x^q == x, instead of through a
second basis, so there is exactly one representation per element.

Multiplication goes through discrete exp/log tables built once per context
from a fixed generator of the multiplicative group; addition goes through a
half-width lookup table.  Every arithmetic call on packed values is then a few
list indexings, which keeps exhaustive scans over all of F_{q^2} x F_{q^2}
affordable in pure Python for fields up to a few hundred thousand elements.
"""

from __future__ import annotations

from math import gcd
from typing import Iterator, Sequence, Union


class FieldError(Exception):
    """Base class for field construction and arithmetic errors."""


class NonPrime(FieldError):
    """The requested characteristic is not a prime number."""


class ReducibleModulus(FieldError):
    """The supplied modulus polynomial factors over F_p."""


class ZeroRadicand(FieldError):
    """d-th roots of zero were requested."""


class FieldMismatch(FieldError):
    """Elements of two different field contexts were combined."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Decompose q = p^m with p prime, or raise ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    p = ps[0]
    m = 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def _unpack(v: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        v, r = divmod(v, p)
        out.append(r)
    return out


def _pack(digits: Sequence[int], p: int) -> int:
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num modulo the monic polynomial den, little-endian mod p."""
    num = [c % p for c in num]
    dd = len(den) - 1
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            num[k] = 0
            for i in range(dd):
                num[k - dd + i] = (num[k - dd + i] - c * den[i]) % p
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return num


def poly_is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= deg/2."""
    deg = len(coeffs) - 1
    if deg < 1 or coeffs[-1] % p != 1:
        return False
    for ddeg in range(1, deg // 2 + 1):
        for w in range(p**ddeg):
            den = _unpack(w, p, ddeg) + [1]
            rem = _poly_mod(list(coeffs), den, p)
            if all(c == 0 for c in rem):
                return False
    return True


def smallest_irreducible(p: int, deg: int) -> tuple[int, ...]:
    """The monic irreducible of degree deg over F_p with smallest packed coefficients."""
    for w in range(p**deg):
        cand = tuple(_unpack(w, p, deg) + [1])
        if poly_is_irreducible(cand, p):
            return cand
    raise RuntimeError(f"no irreducible polynomial of degree {deg} over F_{p}")


def poly_str(coeffs: Sequence[int], var: str = "x") -> str:
    """Readable form of a little-endian coefficient vector, highest power first."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            xs = var if e == 1 else f"{var}^{e}"
            parts.append(xs if c == 1 else f"{c}*{xs}")
    return "+".join(parts) if parts else "0"


def _build_half_add(p: int, m: int) -> list[list[int]]:
    q = p**m
    if m == 1:
        return [[(a + b) % p for b in range(p)] for a in range(p)]
    digs = [_unpack(v, p, m) for v in range(q)]
    tab = []
    for a in range(q):
        da = digs[a]
        row = [0] * q
        for b in range(q):
            db = digs[b]
            acc = 0
            mult = 1
            for i in range(m):
                s = da[i] + db[i]
                if s >= p:
                    s -= p
                acc += s * mult
                mult *= p
            row[b] = acc
        tab.append(row)
    return tab


class FieldCtx:
    """Arithmetic context for F_{p^{2m}} with distinguished subfield F_{p^m}.

    Contexts are immutable after construction; the lazily built lookup tables
    are idempotent, so one context can be shared freely between workers.  The
    "raw" methods operate on packed integer values in [0, p^{2m}); the element
    API wraps them in :class:`FieldElement`.
    """

    __slots__ = (
        "p", "m", "q", "deg", "size", "modulus",
        "_key", "_half_add", "_half_neg",
        "_exp", "_log", "_pow_tables", "_buckets",
    )

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NonPrime(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree m must be positive")
        self.p = p
        self.m = m
        self.q = p**m
        self.deg = 2 * m
        self.size = p**self.deg
        if modulus is None:
            modulus = smallest_irreducible(p, self.deg)
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != self.deg + 1 or modulus[-1] != 1:
                raise ValueError(
                    f"modulus must be monic of degree {self.deg} over F_{p}")
            if not poly_is_irreducible(modulus, p):
                raise ReducibleModulus(
                    f"{poly_str(modulus)} factors over F_{p}")
        self.modulus = tuple(modulus)
        self._key = (p, m, self.modulus)
        self._half_add = _build_half_add(p, m)
        self._half_neg = [
            _pack([(p - d) % p for d in _unpack(v, p, m)], p)
            for v in range(self.q)
        ]
        self._exp: list[int] | None = None
        self._log: list[int] | None = None
        self._pow_tables: dict[int, list[int]] = {}
        self._buckets: dict[int, dict[int, tuple[int, ...]]] = {}

    # -- raw arithmetic on packed values ------------------------------------

    def add_raw(self, a: int, b: int) -> int:
        q = self.q
        h = self._half_add
        return h[a % q][b % q] + h[a // q][b // q] * q

    def neg_raw(self, a: int) -> int:
        q = self.q
        n = self._half_neg
        return n[a % q] + n[a // q] * q

    def sub_raw(self, a: int, b: int) -> int:
        return self.add_raw(a, self.neg_raw(b))

    def _school_mul(self, a: int, b: int) -> int:
        """Schoolbook product mod the modulus; used only to bootstrap tables."""
        p = self.p
        deg = self.deg
        da = _unpack(a, p, deg)
        db = _unpack(b, p, deg)
        prod = [0] * (2 * deg - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    if bj:
                        prod[i + j] = (prod[i + j] + ai * bj) % p
        mod = self.modulus
        for k in range(2 * deg - 2, deg - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                off = k - deg
                for t in range(deg):
                    prod[off + t] = (prod[off + t] - c * mod[t]) % p
        return _pack(prod[:deg], p)

    def _school_pow(self, v: int, e: int) -> int:
        r = 1
        b = v
        while e:
            if e & 1:
                r = self._school_mul(r, b)
            b = self._school_mul(b, b)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        n = self.size - 1
        fs = prime_factors(n)
        for cand in range(2, self.size):
            if all(self._school_pow(cand, n // r) != 1 for r in fs):
                return cand
        raise RuntimeError("multiplicative group has no generator; not a field?")

    def _ensure_log(self) -> None:
        if self._exp is not None:
            return
        n = self.size - 1
        g = self._find_generator()
        exp = [1] * n
        cur = 1
        for i in range(1, n):
            cur = self._school_mul(cur, g)
            exp[i] = cur
        if self._school_mul(cur, g) != 1:
            raise RuntimeError("generator order mismatch")
        log = [0] * self.size
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp
        self._log = log

    def mul_raw(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            self._ensure_log()
        t = self._log[a] + self._log[b]
        n = self.size - 1
        if t >= n:
            t -= n
        return self._exp[t]

    def inv_raw(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.size}")
        if self._exp is None:
            self._ensure_log()
        n = self.size - 1
        return self._exp[(n - self._log[a]) % n]

    def pow_raw(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow_raw(self.inv_raw(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is None:
            self._ensure_log()
        n = self.size - 1
        return self._exp[(self._log[a] * e) % n]

    def in_base_raw(self, a: int) -> bool:
        """Whether the value lies in the subfield F_q, i.e. a^q == a."""
        return self.pow_raw(a, self.q) == a

    def pow_table(self, e: int) -> list[int]:
        """Cached table v -> v^e over the whole field."""
        tab = self._pow_tables.get(e)
        if tab is None:
            tab = [self.pow_raw(v, e) for v in range(self.size)]
            self._pow_tables[e] = tab
        return tab

    def power_buckets(self, d: int) -> dict[int, tuple[int, ...]]:
        """Cached map c -> all nonzero v with v^d == c (ascending)."""
        buckets = self._buckets.get(d)
        if buckets is None:
            tab = self.pow_table(d)
            tmp: dict[int, list[int]] = {}
            for v in range(1, self.size):
                tmp.setdefault(tab[v], []).append(v)
            buckets = {c: tuple(vs) for c, vs in tmp.items()}
            self._buckets[d] = buckets
        return buckets

    # -- element API ---------------------------------------------------------

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def from_val(self, val: int) -> "FieldElement":
        if not 0 <= val < self.size:
            raise ValueError(f"packed value {val} out of range for F_{self.size}")
        return FieldElement(self, val)

    def element(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        """Coerce an int (prime-field constant) or coefficient vector."""
        if isinstance(value, FieldElement):
            if value.ctx._key != self._key:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.deg:
            raise ValueError(f"coefficient vector longer than {self.deg}")
        coeffs += [0] * (self.deg - len(coeffs))
        return FieldElement(self, _pack(coeffs, self.p))

    def elements(self) -> Iterator["FieldElement"]:
        """All field elements in canonical packed order."""
        for v in range(self.size):
            yield FieldElement(self, v)

    def generator(self) -> "FieldElement":
        """The generator of the multiplicative group the log tables are built on."""
        self._ensure_log()
        return FieldElement(self, self._exp[1])

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldCtx) and other._key == self._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={poly_str(self.modulus)})"


class FieldElement:
    """An element of a :class:`FieldCtx` in canonical packed form.

    Equality is coefficient-wise; names render as polynomials in `a`, the
    residue class of x modulo the field's defining polynomial.
    """

    __slots__ = ("ctx", "val")

    def __init__(self, ctx: FieldCtx, val: int):
        self.ctx = ctx
        self.val = val

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_unpack(self.val, self.ctx.p, self.ctx.deg))

    def _coerce(self, other) -> int | None:
        if isinstance(other, FieldElement):
            if other.ctx._key != self.ctx._key:
                raise FieldMismatch("elements of different fields")
            return other.val
        if isinstance(other, int):
            return other % self.ctx.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.add_raw(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub_raw(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.sub_raw(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul_raw(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul_raw(self.val, self.ctx.inv_raw(v)))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return FieldElement(self.ctx, self.ctx.mul_raw(v, self.ctx.inv_raw(self.val)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg_raw(self.val))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow_raw(self.val, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv_raw(self.val))

    def frobenius(self) -> "FieldElement":
        """x -> x^q, the generator of Gal(F_{q^2} / F_q)."""
        return FieldElement(self.ctx, self.ctx.pow_raw(self.val, self.ctx.q))

    def __bool__(self) -> bool:
        return self.val != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return other.ctx._key == self.ctx._key and other.val == self.val
        if isinstance(other, int):
            return self.val == other % self.ctx.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.val, self.ctx._key))

    def __repr__(self) -> str:
        return self.__str__()

    def __str__(self) -> str:
        return poly_str(self.coeffs, var="a")


_FIELD_CACHE: dict[tuple, FieldCtx] = {}


def make_field(p: int, m: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Build (or fetch a cached copy of) the context for F_{p^{2m}}.

    With no modulus, the lexicographically smallest monic irreducible of
    degree 2m is chosen, so repeated runs agree across machines.  A supplied
    modulus must be monic of degree 2m; it is reduced mod p and checked for
    irreducibility by exhaustive trial division.
    """
    if not is_prime(p):
        raise NonPrime(f"characteristic {p} is not prime")
    key_mod = None if modulus is None else tuple(int(c) % p for c in modulus)
    key = (p, m, key_mod)
    ctx = _FIELD_CACHE.get(key)
    if ctx is None:
        ctx = FieldCtx(p, m, key_mod)
        _FIELD_CACHE[key] = ctx
        _FIELD_CACHE[(p, m, ctx.modulus)] = ctx
    return ctx


def in_subfield(x: FieldElement) -> bool:
    """Whether x lies in the subfield F_q, decided by x^q == x."""
    return x.ctx.in_base_raw(x.val)


def roots_of_unity(ctx: FieldCtx, d: int) -> frozenset[FieldElement]:
    """All x in F_{q^2} with x^d = 1; there are gcd(d, q^2 - 1) of them."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    ctx._ensure_log()
    n = ctx.size - 1
    c = gcd(d, n)
    step = n // c
    return frozenset(FieldElement(ctx, ctx._exp[step * i]) for i in range(c))


def dth_roots(c: FieldElement, d: int) -> frozenset[FieldElement]:
    """All x in F_{q^2} with x^d = c, for c != 0; empty when c is not a d-th power."""
    if d < 1:
        raise ValueError("d must be a positive integer")
    if c.val == 0:
        raise ZeroRadicand("d-th roots of zero are not tracked; factor them out")
    ctx = c.ctx
    vals = ctx.power_buckets(d).get(c.val, ())
    return frozenset(FieldElement(ctx, v) for v in vals)


def element_of_order(ctx: FieldCtx, d: int) -> FieldElement:
    """The smallest (in packed order) element of exact multiplicative order d."""
    n = ctx.size - 1
    if d < 1 or n % d:
        raise ValueError(f"no element of order {d} in a group of order {n}")
    ctx._ensure_log()
    step = n // d
    vals = [ctx._exp[(step * k) % n] for k in range(1, d + 1) if gcd(k, d) == 1]
    return FieldElement(ctx, min(vals))
