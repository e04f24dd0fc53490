"""Polynomials over F_q, the delta integer codec, factorials and valuations.

A polynomial is a tuple of coefficient indices in ascending power order with
no trailing zeros.  delta(f) = sum i_j q^j packs those indices into a natural
number; it is a bijection onto N and induces the total order used everywhere
("g < f" always means delta(g) < delta(f)).

Heavy products keep three lanes: carryless integer arithmetic for q = 2,
numpy convolutions for larger prime fields, and a schoolbook loop for
extension fields (which only ever appear at small sizes here).
"""

import numpy as np

from .config import delta_cap
from .errors import CapExceeded, DomainError, FieldMismatch, ParseError


# ---------------------------------------------------------------------------
# carryless integer helpers (q = 2); a polynomial is its delta code

def _c2_mul(a, b):
    if a == 0 or b == 0:
        return 0
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def _c2_divmod(a, b):
    bl = b.bit_length()
    q = 0
    d = a.bit_length() - bl
    while d >= 0:
        a ^= b << d
        q |= 1 << d
        d = a.bit_length() - bl
    return q, a


def _c2_mod(a, b):
    bl = b.bit_length()
    d = a.bit_length() - bl
    while d >= 0:
        a ^= b << d
        d = a.bit_length() - bl
    return a


def _int2_from_coeffs(coeffs):
    if not coeffs:
        return 0
    return int("".join("1" if c else "0" for c in reversed(coeffs)), 2)


def _coeffs_from_int2(x):
    if x == 0:
        return ()
    return tuple(1 if ch == "1" else 0 for ch in reversed(bin(x)[2:]))


# ---------------------------------------------------------------------------

class Poly:
    """Immutable polynomial over a FieldSpec."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        q = spec.q
        for c in coeffs:
            if not isinstance(c, int) or not 0 <= c < q:
                raise DomainError(f"coefficient index {c!r} out of range for q={q}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec):
        return cls(spec, ())

    @classmethod
    def one(cls, spec):
        return cls(spec, (1,))

    @classmethod
    def const(cls, spec, c):
        return cls(spec, (c,))

    @classmethod
    def t(cls, spec):
        return cls(spec, (0, 1))

    @classmethod
    def t_power(cls, spec, n):
        return cls(spec, (0,) * n + (1,))

    @classmethod
    def from_delta(cls, spec, m):
        if m < 0:
            raise DomainError("delta codes are natural numbers")
        q = spec.q
        if q == 2:
            return cls(spec, _coeffs_from_int2(m))
        coeffs = []
        while m:
            m, r = divmod(m, q)
            coeffs.append(r)
        return cls(spec, coeffs)

    # -- basic structure ------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def sign(self):
        """Leading coefficient index (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def delta(self):
        q = self.spec.q
        if q == 2:
            return _int2_from_coeffs(self.coeffs)
        m = 0
        for c in reversed(self.coeffs):
            m = m * q + c
        return m

    def monic(self):
        """Return (unit_index, monic_polynomial) with f = unit * monic part."""
        if self.is_zero:
            return 0, self
        lead = self.coeffs[-1]
        if lead == 1:
            return 1, self
        inv = self.spec.inv(lead)
        mul = self.spec.mul
        return lead, Poly(self.spec, tuple(mul(inv, c) for c in self.coeffs))

    # -- operators ------------------------------------------------------------

    def _same(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.spec != self.spec:
            raise FieldMismatch("operands from different fields")

    def __add__(self, other):
        return poly_add(self, other)

    def __sub__(self, other):
        return poly_sub(self, other)

    def __neg__(self):
        neg = self.spec.neg
        return Poly(self.spec, tuple(neg(c) for c in self.coeffs))

    def __mul__(self, other):
        return poly_mul(self, other)

    def __pow__(self, e):
        return poly_pow(self, e)

    def __divmod__(self, other):
        return poly_divrem(self, other)

    def __floordiv__(self, other):
        return poly_divrem(self, other)[0]

    def __mod__(self, other):
        return poly_divrem(self, other)[1]

    def __eq__(self, other):
        return (isinstance(other, Poly) and other.spec == self.spec
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __lt__(self, other):
        return poly_compare(self, other) < 0

    def __le__(self, other):
        return poly_compare(self, other) <= 0

    def __gt__(self, other):
        return poly_compare(self, other) > 0

    def __ge__(self, other):
        return poly_compare(self, other) >= 0

    def __bool__(self):
        return bool(self.coeffs)

    # -- formatting -----------------------------------------------------------

    def literal(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                t = "t" if k == 1 else f"t^{k}"
                terms.append(t if c == 1 else f"{c}*{t}")
        return "+".join(terms)

    def __repr__(self):
        return f"Poly({self.spec.literal()}, {self.literal()!r})"

    @classmethod
    def parse(cls, spec, text):
        """Parse 't^3+2*t+1' (or a JSON coefficient array '[1,2,0,1]')."""
        import json
        import re

        text = text.strip()
        if text.startswith("["):
            try:
                arr = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad coefficient array: {exc}") from None
            if not isinstance(arr, list) or not all(isinstance(c, int) for c in arr):
                raise ParseError("coefficient array must hold integers")
            if any(not 0 <= c < spec.q for c in arr):
                raise ParseError(f"coefficient index out of range for q={spec.q}")
            return cls(spec, arr)
        term_re = re.compile(r"^(?:a?(\d+)\*?)?(t)?(?:\^(\d+))?$")
        acc = {}
        for raw in text.replace(" ", "").split("+"):
            m = term_re.match(raw)
            if not m or raw == "":
                raise ParseError(f"bad polynomial term: {raw!r}")
            c_txt, tvar, k_txt = m.groups()
            if c_txt is None and tvar is None:
                raise ParseError(f"bad polynomial term: {raw!r}")
            if k_txt is not None and tvar is None:
                raise ParseError(f"bad polynomial term: {raw!r}")
            c = int(c_txt) if c_txt is not None else 1
            if not 0 <= c < spec.q:
                raise ParseError(f"coefficient index {c} out of range for q={spec.q}")
            k = (int(k_txt) if k_txt is not None else 1) if tvar else 0
            acc[k] = spec.add(acc.get(k, 0), c)
        n = max(acc)
        return cls(spec, tuple(acc.get(i, 0) for i in range(n + 1)))


# ---------------------------------------------------------------------------
# arithmetic

def poly_add(f, g):
    f._same(g)
    spec = f.spec
    a, b = f.coeffs, g.coeffs
    if len(a) < len(b):
        a, b = b, a
    add = spec.add
    out = list(a)
    for i, c in enumerate(b):
        out[i] = add(out[i], c)
    return Poly(spec, out)


def poly_sub(f, g):
    f._same(g)
    spec = f.spec
    sub = spec.sub
    n = max(len(f.coeffs), len(g.coeffs))
    fa, ga = f.coeffs, g.coeffs
    out = [sub(fa[i] if i < len(fa) else 0, ga[i] if i < len(ga) else 0)
           for i in range(n)]
    return Poly(spec, out)


def poly_mul(f, g):
    f._same(g)
    spec = f.spec
    if f.is_zero or g.is_zero:
        return Poly.zero(spec)
    if spec.q == 2:
        return Poly(spec, _coeffs_from_int2(
            _c2_mul(_int2_from_coeffs(f.coeffs), _int2_from_coeffs(g.coeffs))))
    a, b = f.coeffs, g.coeffs
    if spec.k == 1 and len(a) * len(b) > 256:
        arr = np.convolve(np.asarray(a, dtype=np.int64),
                          np.asarray(b, dtype=np.int64)) % spec.p
        return Poly(spec, arr.tolist())
    if spec.k == 1:
        p = spec.p
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return Poly(spec, out)
    mul, add = spec.mul, spec.add
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = add(out[i + j], mul(ai, bj))
    return Poly(spec, out)


def poly_pow(f, e):
    if e < 0:
        raise DomainError("negative polynomial power")
    result = Poly.one(f.spec)
    base = f
    while e:
        if e & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        e >>= 1
    return result


def poly_divrem(f, g):
    """Euclidean division: f = quo*g + rem with deg rem < deg g."""
    f._same(g)
    spec = f.spec
    if g.is_zero:
        raise DomainError("division by the zero polynomial")
    if f.degree < g.degree:
        return Poly.zero(spec), f
    if spec.q == 2:
        quo, rem = _c2_divmod(_int2_from_coeffs(f.coeffs), _int2_from_coeffs(g.coeffs))
        return (Poly(spec, _coeffs_from_int2(quo)),
                Poly(spec, _coeffs_from_int2(rem)))
    a = f.coeffs
    b = g.coeffs
    db = len(b) - 1
    if spec.k == 1 and db > 24 and len(a) > 64:
        return _divrem_np(spec, a, b)
    if spec.k == 1:
        p = spec.p
        inv_lead = pow(b[-1], p - 2, p)
        work = list(a)
        quo = [0] * (len(a) - db)
        for i in range(len(a) - 1 - db, -1, -1):
            c = work[i + db]
            if c:
                c = c * inv_lead % p
                quo[i] = c
                for j in range(db):
                    if b[j]:
                        work[i + j] = (work[i + j] - c * b[j]) % p
        return Poly(spec, quo), Poly(spec, work[:db])
    mul, sub, inv = spec.mul, spec.sub, spec.inv
    inv_lead = inv(b[-1])
    work = list(a)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = work[i + db]
        if c:
            c = mul(c, inv_lead)
            quo[i] = c
            for j in range(db):
                if b[j]:
                    work[i + j] = sub(work[i + j], mul(c, b[j]))
    return Poly(spec, quo), Poly(spec, work[:db])


def _divrem_np(spec, a, b):
    p = spec.p
    db = len(b) - 1
    work = np.asarray(a, dtype=np.int64).copy()
    low = np.asarray(b[:db], dtype=np.int64)
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = int(work[i + db])
        if c:
            c = c * inv_lead % p
            quo[i] = c
            work[i:i + db] = (work[i:i + db] - c * low) % p
    return Poly(spec, quo), Poly(spec, work[:db].tolist())


def poly_gcd(f, g):
    """Monic greatest common divisor (zero if both inputs are zero)."""
    f._same(g)
    while not g.is_zero:
        f, g = g, poly_divrem(f, g)[1]
    if f.is_zero:
        return f
    return f.monic()[1]


def poly_powmod(f, e, mod):
    if e < 0:
        raise DomainError("negative exponent in powmod")
    if mod.is_zero:
        raise DomainError("zero modulus in powmod")
    result = poly_divrem(Poly.one(f.spec), mod)[1]
    base = poly_divrem(f, mod)[1]
    while e:
        if e & 1:
            result = poly_divrem(poly_mul(result, base), mod)[1]
        base = poly_divrem(poly_mul(base, base), mod)[1]
        e >>= 1
    return result


# ---------------------------------------------------------------------------
# codec and order

def delta(f):
    return f.delta


def delta_inv(spec, m):
    return Poly.from_delta(spec, m)


def poly_compare(f, g):
    """Trichotomy in the delta order, digit by digit (no big integers)."""
    f._same(g)
    a, b = f.coeffs, g.coeffs
    if len(a) != len(b):
        return -1 if len(a) < len(b) else 1
    for i in range(len(a) - 1, -1, -1):
        if a[i] != b[i]:
            return -1 if a[i] < b[i] else 1
    return 0


# ---------------------------------------------------------------------------
# factorials

def _const_factorial(spec, i):
    """Factorial of the constant a_i: the product of (a_i - a_m) over m < i."""
    out = 1
    for m in range(i):
        out = spec.mul(out, spec.sub(i, m))
    return out


def factorial_direct(f, cap=None):
    """Product of (f - g) over all g with delta(g) < delta(f); empty = 1."""
    spec = f.spec
    m = f.delta
    limit = delta_cap() if cap is None else cap
    if m > limit:
        raise CapExceeded(f"delta(f)={m} exceeds the factorial cap {limit}")
    q = spec.q
    if m == 0:
        return Poly.one(spec)
    if q == 2:
        fcode = m
        prod = 1
        for g in range(m):
            prod = _c2_mul(prod, fcode ^ g)
        return Poly(spec, _coeffs_from_int2(prod))
    if spec.k == 1:
        p = spec.p
        width = len(f.coeffs)
        ms = np.arange(m, dtype=np.int64)
        cols = []
        scale = 1
        for _ in range(width):
            cols.append((ms // scale) % q)
            scale *= q
        gdig = np.stack(cols, axis=1)
        fdig = np.asarray(f.coeffs, dtype=np.int64)
        rows = (fdig - gdig) % p
        prod = np.ones(1, dtype=np.int64)
        for r in range(m):
            row = rows[r]
            nz = np.nonzero(row)[0]
            top = int(nz[-1]) if nz.size else -1
            # g < f always leaves f - g nonzero, so top >= 0
            prod = np.convolve(prod, row[:top + 1]) % p
        return Poly(spec, prod.tolist())
    out = Poly.one(spec)
    for g in range(m):
        out = poly_mul(out, poly_sub(f, Poly.from_delta(spec, g)))
    return out


_MONIC_PROD_CACHE = {}


def monic_product(spec, j):
    """Product of all monic polynomials of degree exactly j (cached)."""
    key = (spec, j)
    got = _MONIC_PROD_CACHE.get(key)
    if got is not None:
        return got
    q = spec.q
    out = Poly.one(spec)
    for m in range(q ** j, 2 * q ** j):
        out = poly_mul(out, Poly.from_delta(spec, m))
    _MONIC_PROD_CACHE[key] = out
    return out


def factorial_product(f, cap=None):
    """Factorial via the closed product formula over the digits of f.

    f! equals (product of constant factorials of the digits) times, for each
    power j >= 1, the product of all monic degree-j polynomials raised to the
    j-th digit of f.
    """
    spec = f.spec
    m = f.delta
    limit = delta_cap() if cap is None else cap
    if m > limit:
        raise CapExceeded(f"delta(f)={m} exceeds the factorial cap {limit}")
    if m == 0:
        return Poly.one(spec)
    unit = 1
    for c in f.coeffs:
        unit = spec.mul(unit, _const_factorial(spec, c))
    out = Poly.const(spec, unit)
    for j in range(1, len(f.coeffs)):
        i_j = f.coeffs[j]
        if i_j:
            out = poly_mul(out, poly_pow(monic_product(spec, j), i_j))
    return out


# ---------------------------------------------------------------------------
# valuations

def valuation(P, h):
    """Largest e with P^e dividing h (P nonconstant, h nonzero)."""
    P._same(h)
    if P.degree < 1:
        raise DomainError("valuation needs a nonconstant P")
    if h.is_zero:
        raise DomainError("valuation of the zero polynomial")
    P = P.monic()[1]
    if poly_divrem(h, P)[1]:
        return 0
    # binary ladder: strip the largest power of P whose square still fits
    powers = [P]
    while 2 * powers[-1].degree <= h.degree:
        powers.append(poly_mul(powers[-1], powers[-1]))
    e = 0
    for i in range(len(powers) - 1, -1, -1):
        pw = powers[i]
        if pw.degree <= h.degree:
            quo, rem = poly_divrem(h, pw)
            if rem.is_zero:
                h = quo
                e += 1 << i
    return e


def valuation_of_factorial(d, delta_f, q):
    """Valuation of f! at any irreducible of degree d, from delta(f) alone.

    Equals the sum over j >= 1 of floor(delta_f / q^(d*j)).
    """
    if d < 1:
        raise DomainError("irreducible degree must be >= 1")
    if delta_f < 0:
        raise DomainError("delta codes are natural numbers")
    total = 0
    step = q ** d
    m = delta_f // step
    while m:
        total += m
        m //= step
    return total
