"""Finite field F_q, q = p^k, with elements encoded as integer indices.

The element of index i is the vector of base-p digits of i read in the power
basis of the defining modulus: i = sum v_j p^j encodes v_0 + v_1 x + ... For
prime fields (k = 1) the index is simply the residue, so a_0 = 0 and a_1 = 1
in every field.  All arithmetic takes and returns indices.
"""

import re
from dataclasses import dataclass
from functools import lru_cache

from .config import q_cap
from .errors import DomainError, ParseError

# extension fields up to this order get full q x q lookup tables (built lazily)
TABLE_LIMIT = 1024

# Conway polynomials, ascending coefficients, for the default small extensions.
DEFAULT_MODULI = {
    4: (1, 1, 1),          # x^2+x+1
    8: (1, 1, 0, 1),       # x^3+x+1
    9: (2, 2, 1),          # x^2+2x+2
    16: (1, 1, 0, 0, 1),   # x^4+x+1
    25: (2, 4, 1),         # x^2+4x+2
    27: (1, 2, 0, 1),      # x^3+2x+1
}


# ---------------------------------------------------------------------------
# dense mod-p polynomial helpers (coefficient lists, ascending), used for
# modulus validation and extension-field arithmetic

def _pp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out)


def _pp_rem(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(a) - 1 - db, -1, -1):
        c = a[i + db]
        if c:
            c = c * inv_lead % p
            for j in range(db):
                if b[j]:
                    a[i + j] = (a[i + j] - c * b[j]) % p
            a[i + db] = 0
    del a[db:]
    return _pp_trim(a)


def _pp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _pp_rem(a, b, p)
    return a


def _pp_powmod(a, e, m, p):
    result = [1]
    base = _pp_rem(a, m, p)
    while e:
        if e & 1:
            result = _pp_rem(_pp_mul(result, base, p), m, p)
        base = _pp_rem(_pp_mul(base, base, p), m, p)
        e >>= 1
    return result


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _pp_sub(a, b, p):
    n = max(len(a), len(b))
    return _pp_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                     for i in range(n)])


def _pp_is_irreducible(m, p):
    """Rabin test for a monic polynomial over F_p (ascending coeff list)."""
    d = len(m) - 1
    if d < 1:
        return False
    x = [0, 1]
    # x^(p^d) == x (mod m), and x^(p^(d/r)) - x coprime to m for prime r | d
    h = _pp_powmod(x, p ** d, m, p)
    if _pp_sub(h, x, p):
        return False
    for r in _prime_factors(d):
        g = _pp_powmod(x, p ** (d // r), m, p)
        diff = _pp_sub(g, x, p)
        if len(_pp_gcd(m, diff, p)) != 1:
            return False
    return True


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """Immutable description of F_q; all element operations live here."""

    p: int
    k: int
    q: int
    modulus: tuple  # ascending coefficients over F_p, length k+1; None for k=1

    # -- encoding ----------------------------------------------------------

    def digits(self, i):
        """Base-p digit vector (length k) of the element with index i."""
        v = []
        for _ in range(self.k):
            i, r = divmod(i, self.p)
            v.append(r)
        return v

    def index(self, v):
        i = 0
        for d in reversed(v):
            i = i * self.p + d
        return i

    def _check(self, *elems):
        for a in elems:
            if not 0 <= a < self.q:
                raise DomainError(f"element index {a} out of range for q={self.q}")

    # -- arithmetic on indices ---------------------------------------------

    def add(self, a, b):
        self._check(a, b)
        if self.k == 1:
            return (a + b) % self.p
        return _ops(self).add(a, b)

    def sub(self, a, b):
        self._check(a, b)
        if self.k == 1:
            return (a - b) % self.p
        return _ops(self).sub(a, b)

    def neg(self, a):
        self._check(a)
        if self.k == 1:
            return (-a) % self.p
        return _ops(self).neg(a)

    def mul(self, a, b):
        self._check(a, b)
        if self.k == 1:
            return (a * b) % self.p
        return _ops(self).mul(a, b)

    def inv(self, a):
        self._check(a)
        if a == 0:
            raise DomainError("inversion of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return _ops(self).inv(a)

    def pow(self, a, e):
        self._check(a)
        if e < 0:
            return self.pow(self.inv(a), -e)
        if self.k == 1:
            return pow(a, e, self.p) if a or e == 0 else 0
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # -- formatting ---------------------------------------------------------

    def element_str(self, i):
        self._check(i)
        return str(i) if self.k == 1 else f"a{i}"

    def parse_element(self, text):
        text = text.strip()
        m = re.fullmatch(r"a(\d+)", text) or re.fullmatch(r"(\d+)", text)
        if not m:
            raise ParseError(f"bad element literal: {text!r}")
        i = int(m.group(1))
        if not 0 <= i < self.q:
            raise ParseError(f"element index {i} out of range for q={self.q}")
        return i

    def literal(self):
        if self.k == 1:
            return f"q={self.q}"
        return f"q={self.q},modulus={modulus_str(self.modulus)}"


class _Ops:
    """Extension-field arithmetic; tables when q is small enough."""

    def __init__(self, spec):
        p, k, q, mod = spec.p, spec.k, spec.q, list(spec.modulus)
        self.spec = spec
        if q <= TABLE_LIMIT:
            digs = [spec.digits(i) for i in range(q)]
            add_t = [[0] * q for _ in range(q)]
            for a in range(q):
                da = digs[a]
                for b in range(a, q):
                    s = spec.index([(x + y) % p for x, y in zip(da, digs[b])])
                    add_t[a][b] = s
                    add_t[b][a] = s
            neg_t = [spec.index([(-x) % p for x in digs[a]]) for a in range(q)]
            mul_t = [[0] * q for _ in range(q)]
            for a in range(1, q):
                da = _pp_trim(list(digs[a]))
                row = mul_t[a]
                for b in range(a, q):
                    v = _pp_rem(_pp_mul(da, _pp_trim(list(digs[b])), p), mod, p)
                    v += [0] * (k - len(v))
                    m_ = spec.index(v)
                    row[b] = m_
                    mul_t[b][a] = m_
            inv_t = [0] * q
            for a in range(1, q):
                for b in range(1, q):
                    if mul_t[a][b] == 1:
                        inv_t[a] = b
                        break
            self.add_t, self.neg_t, self.mul_t, self.inv_t = add_t, neg_t, mul_t, inv_t
            self.add = lambda a, b: add_t[a][b]
            self.sub = lambda a, b: add_t[a][neg_t[b]]
            self.neg = lambda a: neg_t[a]
            self.mul = lambda a, b: mul_t[a][b]
            self.inv = lambda a: inv_t[a]
        else:
            self.add = lambda a, b: self._direct_add(a, b, 1)
            self.sub = lambda a, b: self._direct_add(a, b, -1)
            self.neg = lambda a: self._direct_neg(a)
            self.mul = lambda a, b: self._direct_mul(a, b)
            self.inv = lambda a: spec.pow(a, q - 2)

    def _direct_add(self, a, b, sgn):
        s = self.spec
        return s.index([(x + sgn * y) % s.p for x, y in zip(s.digits(a), s.digits(b))])

    def _direct_neg(self, a):
        s = self.spec
        return s.index([(-x) % s.p for x in s.digits(a)])

    def _direct_mul(self, a, b):
        s = self.spec
        v = _pp_rem(_pp_mul(_pp_trim(s.digits(a)), _pp_trim(s.digits(b)), s.p),
                    list(s.modulus), s.p)
        v += [0] * (s.k - len(v))
        return s.index(v)


@lru_cache(maxsize=None)
def _ops(spec):
    return _Ops(spec)


@lru_cache(maxsize=None)
def tables(spec):
    """Flat uint16 operation tables for the census kernels (q <= TABLE_LIMIT).

    Returns dict with 'mul' and 'sub' as q*q row-major array('H').
    """
    from array import array

    q = spec.q
    if q > TABLE_LIMIT:
        raise DomainError(f"operation tables unsupported for q={q} > {TABLE_LIMIT}")
    mul = array("H", bytes(2 * q * q))
    sub = array("H", bytes(2 * q * q))
    for a in range(q):
        base = a * q
        for b in range(q):
            mul[base + b] = spec.mul(a, b)
            sub[base + b] = spec.sub(a, b)
    return {"mul": mul, "sub": sub}


# ---------------------------------------------------------------------------
# construction and literals

def make_field(p, k=1, modulus=None):
    """Build a FieldSpec for F_{p^k}; modulus defaults to a fixed table entry."""
    if not _is_prime(p):
        raise DomainError(f"p={p} is not prime")
    if k < 1:
        raise DomainError(f"k={k} must be >= 1")
    q = p ** k
    if q > q_cap():
        from .errors import CapExceeded

        raise CapExceeded(f"q={q} exceeds the configured field cap {q_cap()}")
    if k == 1:
        if modulus is not None:
            raise DomainError("modulus is only meaningful for extension fields (k > 1)")
        return FieldSpec(p=p, k=1, q=q, modulus=None)
    if modulus is None:
        if q not in DEFAULT_MODULI:
            raise DomainError(
                f"no default modulus for q={q}; pass one explicitly")
        modulus = DEFAULT_MODULI[q]
    modulus = tuple(c % p for c in modulus)
    if len(modulus) != k + 1 or modulus[-1] != 1:
        raise DomainError("modulus must be monic of degree k")
    if not _pp_is_irreducible(list(modulus), p):
        raise DomainError("modulus is reducible over F_p")
    return FieldSpec(p=p, k=k, q=q, modulus=modulus)


def _prime_power(q):
    """Decompose q = p^k or raise."""
    if q < 2:
        raise DomainError(f"q={q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            k = 0
            m = q
            while m % p == 0:
                m //= p
                k += 1
            if m != 1:
                raise DomainError(f"q={q} is not a prime power")
            return p, k
        p += 1
    return q, 1


def field_from_q(q, modulus=None):
    p, k = _prime_power(q)
    return make_field(p, k, modulus)


_MOD_TERM = re.compile(r"^(?:(\d+)\*?)?(x)?(?:\^(\d+))?$")


def parse_modulus(text, p):
    """Parse a defining-polynomial literal like 'x^2+2x+2' over F_p."""
    coeffs = {}
    deg = 0
    for raw in text.replace(" ", "").split("+"):
        m = _MOD_TERM.match(raw)
        if not m or raw == "":
            raise ParseError(f"bad modulus term: {raw!r}")
        c_txt, xvar, k_txt = m.groups()
        if k_txt is not None and xvar is None:
            raise ParseError(f"bad modulus term: {raw!r}")
        if c_txt is None and xvar is None:
            raise ParseError(f"bad modulus term: {raw!r}")
        c = int(c_txt) if c_txt is not None else 1
        k = (int(k_txt) if k_txt is not None else 1) if xvar else 0
        coeffs[k] = (coeffs.get(k, 0) + c) % p
        deg = max(deg, k)
    return tuple(coeffs.get(i, 0) for i in range(deg + 1))


def modulus_str(modulus):
    terms = []
    for k in range(len(modulus) - 1, -1, -1):
        c = modulus[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            x = "x" if k == 1 else f"x^{k}"
            terms.append(x if c == 1 else f"{c}{x}")
    return "+".join(terms) if terms else "0"


def parse_field(literal):
    """Parse 'q=9,modulus=x^2+2x+2' (modulus part optional)."""
    q = None
    modulus_txt = None
    for part in literal.replace(" ", "").split(","):
        if not part:
            continue
        if "=" not in part:
            raise ParseError(f"bad field literal part: {part!r}")
        key, _, val = part.partition("=")
        if key == "q":
            try:
                q = int(val)
            except ValueError:
                raise ParseError(f"bad q value: {val!r}") from None
        elif key == "modulus":
            modulus_txt = val
        else:
            raise ParseError(f"unknown field literal key: {key!r}")
    if q is None:
        raise ParseError("field literal must set q")
    p, k = _prime_power(q)
    modulus = parse_modulus(modulus_txt, p) if modulus_txt is not None else None
    return make_field(p, k, modulus)


# thin functional aliases matching the operation names

def fe_add(spec, a, b):
    return spec.add(a, b)


def fe_mul(spec, a, b):
    return spec.mul(a, b)


def fe_neg(spec, a):
    return spec.neg(a)


def fe_inv(spec, a):
    return spec.inv(a)
