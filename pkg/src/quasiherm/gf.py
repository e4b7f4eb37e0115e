"""Exact arithmetic in GF(q) and GF(q^2) for odd prime powers q.

Elements of GF(q^2) = GF(p^(2e)) are plain integer codes.  The code of
the element c_0 + c_1*x + ... + c_(2e-1)*x^(2e-1) in GF(p)[x]/(f) is the
base-p integer sum(c_i * p^i), so the codes 0..p-1 are the prime-field
constants and the code p is the class of x.  The modulus f is the
lexicographically least monic polynomial of degree 2e (ordered by the
base-p code of its low coefficients) for which x generates the
multiplicative group, so x itself is the canonical primitive element xi.

All arithmetic is table-driven: add/mul are dense (q^2 x q^2) numpy
arrays so that bulk operations over point arrays are single gathers.
GF(q) is the fixed field of the Frobenius x -> x^q, located by
exhaustion; it is closed under the same tables.

Distinguished constants fixed at construction:
  xi      canonical primitive element of GF(q^2)* (always the code p),
  s       least non-square of GF(q) in code order,
  i_elem  least element of GF(q^2) with i_elem^2 = s (then i^q = -i).
"""

from __future__ import annotations

import numpy as np

MAX_Q = 13  # largest supported q; sweeps beyond this are not desk-scale


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factor_prime_power(q: int):
    """Return (p, e) with q = p^e, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"q={q} is not a prime power")
            return p, e
    raise ValueError(f"q={q} is not a prime power")


def _poly_mul_x_mod(coeffs, f_low, p):
    """Multiply a coefficient list by x modulo x^d + f_low(x) over GF(p)."""
    d = len(coeffs)
    lead = coeffs[d - 1]
    out = [0] * d
    for i in range(d - 1):
        out[i + 1] = coeffs[i]
    if lead:
        for i in range(d):
            out[i] = (out[i] - lead * f_low[i]) % p
    return out


def _code_of(coeffs, p):
    c = 0
    for digit in reversed(coeffs):
        c = c * p + digit
    return c


class FieldCtx:
    """Lookup-table realization of GF(q) inside GF(q^2), q = p^e odd."""

    def __init__(self, p: int, e: int):
        if not is_prime(p) or p == 2:
            raise ValueError(f"p={p} must be an odd prime")
        q = p**e
        if q > MAX_Q:
            raise ValueError(f"q={q} exceeds the supported bound {MAX_Q}")
        self.p = p
        self.e = e
        self.q = q
        self.q2 = q * q
        self.n = self.q2 - 1  # order of the multiplicative group

        self._build_exp_log()
        self._build_tables()
        self._build_constants()

    # -- construction -------------------------------------------------

    def _build_exp_log(self):
        p, d, q2 = self.p, 2 * self.e, self.q2
        for fcode in range(p**d):
            f_low = [(fcode // p**i) % p for i in range(d)]
            # walk x^k mod f; f is primitive iff the walk first returns
            # to 1 at step exactly q2-1 (then the quotient is a field)
            exp = np.zeros(q2 - 1, dtype=np.int16)
            exp[0] = 1
            coeffs = [0] * d
            coeffs[min(1, d - 1)] = 1  # the element x
            ok = True
            for k in range(1, q2 - 1):
                code = _code_of(coeffs, p)
                if code == 1:
                    ok = False
                    break
                exp[k] = code
                coeffs = _poly_mul_x_mod(coeffs, f_low, p)
            if ok and _code_of(coeffs, p) == 1:
                self.prim_poly = tuple(f_low) + (1,)  # low-to-high incl. monic lead
                self.exp = exp
                log = np.full(q2, -1, dtype=np.int32)
                log[exp] = np.arange(q2 - 1)
                self.log = log
                return
        raise RuntimeError(f"no primitive polynomial found for GF({p}^{d})")

    def _build_tables(self):
        p, q2, n = self.p, self.q2, self.n
        d = 2 * self.e
        codes = np.arange(q2)
        digits = np.zeros((q2, d), dtype=np.int16)
        rest = codes.copy()
        for i in range(d):
            digits[:, i] = rest % p
            rest //= p
        self.digits = digits
        pw = p ** np.arange(d)
        self.add_t = (((digits[:, None, :] + digits[None, :, :]) % p) * pw).sum(
            axis=2
        ).astype(np.int16)

        mul = np.zeros((q2, q2), dtype=np.int16)
        la = self.log[1:]  # logs of nonzero codes
        mul[1:, 1:] = self.exp[(la[:, None] + la[None, :]) % n]
        self.mul_t = mul

        self.neg_t = self.mul_t[p - 1].copy()  # multiply by -1
        inv = np.zeros(q2, dtype=np.int16)
        inv[self.exp] = self.exp[(-np.arange(n)) % n]
        self.inv_t = inv

        frob = np.zeros(q2, dtype=np.int16)
        frob[self.exp] = self.exp[(np.arange(n) * self.q) % n]
        self.frob_t = frob

        self.norm_t = self.pow_table(self.q + 1)
        self.trace_t = self.add_t[codes, frob[codes]].astype(np.int16)

        sq = np.zeros(q2, dtype=bool)
        sq[0] = True  # zero counts as a square; Box_q callers must test nonzero
        sq[self.exp[np.arange(0, n, 2)]] = True
        self.is_square_t = sq

        self.in_gfq = frob == codes
        self.gfq_codes = np.flatnonzero(self.in_gfq).astype(np.int16)

    def _build_constants(self):
        self.xi = int(self.exp[1])
        half = (self.q - 1) // 2
        s = None
        for c in self.gfq_codes:
            if c and self.pow(int(c), half) != 1:
                s = int(c)
                break
        assert s is not None
        self.s = s
        i_elem = None
        for c in range(self.q2):
            if int(self.mul_t[c, c]) == s:
                i_elem = c
                break
        assert i_elem is not None
        self.i_elem = i_elem

        # decomposition x = x0 + i*x1 with x0, x1 in GF(q)
        x0 = np.zeros(self.q2, dtype=np.int16)
        x1 = np.zeros(self.q2, dtype=np.int16)
        for a in self.gfq_codes:
            ia = int(self.mul_t[self.i_elem, a])
            for b in self.gfq_codes:
                code = int(self.add_t[b, ia])
                x0[code] = b
                x1[code] = a
        self.x0_t = x0
        self.x1_t = x1

    # -- scalar operations ---------------------------------------------

    def add(self, a, b):
        return int(self.add_t[a, b])

    def sub(self, a, b):
        return int(self.add_t[a, self.neg_t[b]])

    def neg(self, a):
        return int(self.neg_t[a])

    def mul(self, a, b):
        return int(self.mul_t[a, b])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inversion of zero in GF(q^2)")
        return int(self.inv_t[a])

    def pow(self, a, m: int):
        if a == 0:
            if m > 0:
                return 0
            raise ZeroDivisionError("0 cannot be raised to a non-positive power")
        return int(self.exp[(int(self.log[a]) * m) % self.n])

    def frobenius(self, a):
        return int(self.frob_t[a])

    def norm(self, a):
        return int(self.norm_t[a])

    def trace(self, a):
        return int(self.trace_t[a])

    def is_square(self, a) -> bool:
        return bool(self.is_square_t[a])

    def is_square_q(self, a) -> bool:
        """Squareness within GF(q) (a must lie in GF(q))."""
        if not self.in_gfq[a]:
            raise ValueError(f"code {a} is not in GF({self.q})")
        return a == 0 or self.pow(a, (self.q - 1) // 2) == 1

    def components(self, a):
        """Return (x0, x1) with a = x0 + i_elem*x1 and x0, x1 in GF(q)."""
        return int(self.x0_t[a]), int(self.x1_t[a])

    def from_components(self, x0, x1):
        return int(self.add_t[x0, self.mul_t[self.i_elem, x1]])

    def pow_table(self, m: int) -> np.ndarray:
        """Vector of x^m over all codes (0^m = 0, requires m >= 1)."""
        assert m >= 1
        t = np.zeros(self.q2, dtype=np.int16)
        t[self.exp] = self.exp[(np.arange(self.n) * m) % self.n]
        return t

    def elem_str(self, a) -> str:
        x0, x1 = self.components(a)
        k = "0" if a == 0 else f"xi^{int(self.log[a])}"
        return f"{a} ({k}; {x0}+i*{x1})"

    def __repr__(self):
        return f"FieldCtx(p={self.p}, e={self.e}, q={self.q})"


_FIELD_CACHE: dict = {}


def make_field(p: int, e: int = 1) -> FieldCtx:
    """Build (or fetch the cached) field context for GF((p^e)^2)."""
    key = (p, e)
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FieldCtx(p, e)
    return _FIELD_CACHE[key]


def field_for_q(q: int) -> FieldCtx:
    p, e = factor_prime_power(q)
    return make_field(p, e)
