"""Finite field towers F_p <= F_q <= F_{q^t} <= F_{q^n}.

A :class:`FieldTower` realises F_{q^n} (q = p^h) as F_p[x]/(f) for a
primitive polynomial f of degree h*n.  Field elements are plain ints: the
base-p integer c_0 + c_1 p + ... + c_{hn-1} p^{hn-1} of the coefficient
vector of the residue polynomial, so ``0`` is zero and ``1`` is one.  This
integer is also the serialisation of an element.

Multiplication, inversion and powers go through the log/antilog tables of
the primitive root g = x mod f.  In characteristic 2 addition is XOR; in
odd characteristic it uses a Zech logarithm table.

F_q and all intermediate fields F_{q^t} are subfields of the one table;
nothing is embedded.  The F_q-coordinates used for linear algebra are taken
with respect to the basis 1, g, ..., g^{n-1} of F_{q^n} over F_q.

:class:`Felt` wraps an int together with its tower for interactive use;
the algorithms in the rest of the package work on the raw ints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, isprime

from .errors import (
    CapExceededError,
    MixedTowerError,
    NonPrimeError,
    NotPrimitiveError,
    PreconditionError,
    ValidationError,
)

DEFAULT_SIZE_CAP = 1 << 24


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


# -- polynomials over F_p: coefficient lists, lowest degree first ----------


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    m = len(mod) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d]
        if c:
            for i in range(m + 1):
                prod[d - m + i] = (prod[d - m + i] - c * mod[i]) % p
    out = prod[:m]
    return out + [0] * (m - len(out))


def _poly_x_pow(e: int, mod: list[int], p: int) -> list[int]:
    m = len(mod) - 1
    result = [1] + [0] * (m - 1)
    base = _poly_mulmod([0, 1], [1], mod, p) if m > 1 else [(-mod[0]) % p]
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return result


def is_primitive(modulus: list[int] | tuple[int, ...], p: int) -> bool:
    """Exponent test: x has multiplicative order p^m - 1 modulo ``modulus``.

    ``modulus`` is monic, given as [c_0, ..., c_m].  An element of order
    p^m - 1 forces the quotient ring to be a field, so irreducibility is
    implied.
    """
    mod = [c % p for c in modulus]
    m = len(mod) - 1
    if m < 1 or mod[-1] != 1 or mod[0] == 0:
        return False
    order = p**m - 1
    one = [1] + [0] * (m - 1)
    if _poly_x_pow(order, mod, p) != one:
        return False
    return all(_poly_x_pow(order // r, mod, p) != one for r in factorint(order))


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Smallest primitive monic polynomial of degree m.

    Candidates are ordered by the base-p integer with digits
    (c_{m-1}, ..., c_0), i.e. by sum(c_i p^i).
    """
    for idx in range(p**m):
        coeffs = []
        v = idx
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        if coeffs[0] == 0:
            continue
        if is_primitive(coeffs + [1], p):
            return tuple(coeffs + [1])
    raise NotPrimitiveError(f"no primitive polynomial of degree {m} over F_{p}")  # unreachable


def _mat_inv_mod_p(mat: list[list[int]], p: int) -> list[list[int]]:
    size = len(mat)
    aug = [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(mat)]
    for col in range(size):
        piv = next(r for r in range(col, size) if aug[r][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [(x - c * y) % p for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


@dataclass(frozen=True)
class FieldAut:
    """The automorphism a -> a^(p^j) of a field of degree ``degree`` over F_p."""

    j: int
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "j", self.j % self.degree)

    def compose(self, other: FieldAut) -> FieldAut:
        return FieldAut(self.j + other.j, self.degree)

    __mul__ = compose

    def inverse(self) -> FieldAut:
        return FieldAut(-self.j, self.degree)

    @property
    def is_identity(self) -> bool:
        return self.j == 0


class FieldTower:
    """F_{q^n} with q = p^h, as a single table-driven field.

    Parameters
    ----------
    p : int
        Characteristic (prime).
    h : int
        Degree of F_q over F_p.
    n : int
        Degree of F_{q^n} over F_q.
    modulus : sequence of int, optional
        Monic primitive polynomial of degree h*n as [c_0, ..., c_{hn}].
        Defaults to :func:`default_modulus`.
    size_cap : int
        Largest admissible field order.
    """

    def __init__(self, p: int, h: int, n: int, modulus=None, size_cap: int = DEFAULT_SIZE_CAP):
        for name, v in (("p", p), ("h", h), ("n", n)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ValidationError(f"{name} must be a positive integer, got {v!r}")
        if not isprime(p):
            raise NonPrimeError(f"characteristic p={p} is not prime")
        m = h * n
        order = p**m
        if order > size_cap:
            raise CapExceededError(f"field order {p}^{m} = {order} exceeds cap {size_cap}")
        if modulus is None:
            modulus = default_modulus(p, m)
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != m + 1:
                raise ValidationError(f"modulus must have {m + 1} coefficients, got {len(modulus)}")
            if any(not 0 <= c < p for c in modulus) or modulus[-1] != 1:
                raise ValidationError(f"modulus must be monic with coefficients in [0, {p})")
            if not is_primitive(modulus, p):
                raise NotPrimitiveError(f"modulus {list(modulus)} is not primitive over F_{p}")

        self.p, self.h, self.n, self.m = p, h, n, m
        self.q = p**h
        self.order = order
        self.N = order - 1
        self.modulus = modulus
        self.size_cap = size_cap
        self.key = (p, h, n, modulus)
        self.binary = p == 2 and h == 1
        self._pw = [p**i for i in range(m + 1)]
        self._build_tables()
        self.g = self.exp[1 % self.N]
        # number of F_q-projective points of F_{q^n}; g^proj generates F_q^*
        self.proj = self.N // (self.q - 1)
        self.fq = [0] + [self.exp[j * self.proj] for j in range(self.q - 1)]
        self.fq_nonzero = self.fq[1:]
        self._fq_set = frozenset(self.fq)
        self._frob = [pow(p, j, self.N) if self.N > 1 else 0 for j in range(m)]
        self._coord_cache: dict[int, tuple[int, ...]] = {}
        if h > 1:
            self._setup_fq_coords()

    # -- construction ------------------------------------------------------

    def _build_tables(self):
        p, m, N = self.p, self.m, self.N
        exp = [0] * (2 * N)
        log = [-1] * self.order
        mod = self.modulus
        if p == 2:
            modcode = sum(c << i for i, c in enumerate(mod))
            top = 1 << m
            v = 1
            for i in range(N):
                exp[i] = v
                log[v] = i
                v <<= 1
                if v & top:
                    v ^= modcode
        else:
            pw = self._pw
            coef = [1] + [0] * (m - 1)
            for i in range(N):
                v = sum(c * pw[j] for j, c in enumerate(coef) if c)
                exp[i] = v
                log[v] = i
                t = coef[-1]
                coef = [0] + coef[:-1]
                if t:
                    coef = [(c - t * mod[j]) % p for j, c in enumerate(coef)]
        exp[N:] = exp[:N]
        self.exp = exp
        self.log = log
        if p != 2:
            # zech[i] = log(1 + g^i), -1 when 1 + g^i = 0
            zech = [0] * N
            for i in range(N):
                v = exp[i]
                w = v - (p - 1) if v % p == p - 1 else v + 1
                zech[i] = log[w]
            self._zech = zech

    def _setup_fq_coords(self):
        # F_p-basis beta^j g^i of F_{q^n}, beta a primitive element of F_q
        p, h, n = self.p, self.h, self.n
        beta = self.exp[self.proj]
        self._beta_pows = [self.power(beta, j) for j in range(h)]
        cols = []
        for i in range(n):
            gi = self.power(self.g, i)
            for j in range(h):
                cols.append(self.digits(self.mul(self._beta_pows[j], gi)))
        mat = [[cols[c][r] for c in range(self.m)] for r in range(self.m)]
        self._coord_inv = _mat_inv_mod_p(mat, p)

    # -- serialisation -----------------------------------------------------

    def spec(self) -> dict:
        return {"p": self.p, "h": self.h, "n": self.n, "modulus": list(self.modulus)}

    @classmethod
    def from_spec(cls, spec: dict, size_cap: int = DEFAULT_SIZE_CAP) -> FieldTower:
        return build_tower(spec["p"], spec["h"], spec["n"], spec.get("modulus"), size_cap=size_cap)

    def __repr__(self):
        return f"FieldTower(p={self.p}, h={self.h}, n={self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __reduce__(self):
        return (build_tower, (self.p, self.h, self.n, self.modulus, self.size_cap))

    def check_same(self, other: FieldTower):
        if other is not self and other.key != self.key:
            raise MixedTowerError(f"{self!r} and {other!r} differ")

    def check(self, a: int) -> int:
        if not isinstance(a, int) or not 0 <= a < self.order:
            raise ValidationError(f"{a!r} is not an element code of {self!r}")
        return a

    @property
    def log_table(self) -> list[int]:
        return self.log

    @property
    def antilog_table(self) -> list[int]:
        return self.exp[: self.N]

    # -- arithmetic on element codes --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        d = self.log[b] - la
        if d < 0:
            d += self.N
        z = self._zech[d]
        if z < 0:
            return 0
        return self.exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or a == 0:
            return a
        return self.exp[self.log[a] + self.N // 2]

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[self.N - self.log[a]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        d = self.log[a] - self.log[b]
        return self.exp[d + self.N if d < 0 else d]

    def power(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self.exp[self.log[a] * e % self.N]

    def frobenius(self, a: int, sigma) -> int:
        """a^(p^j) for the automorphism ``sigma`` (a FieldAut or the int j)."""
        j = sigma.j if isinstance(sigma, FieldAut) else sigma
        if a == 0:
            return 0
        return self.exp[self.log[a] * self._frob[j % self.m] % self.N]

    def q_power(self, a: int, i: int = 1) -> int:
        """a^(q^i)."""
        return self.frobenius(a, self.h * i)

    def automorphisms(self) -> list[FieldAut]:
        return [FieldAut(j, self.m) for j in range(self.m)]

    def prime_field(self, c: int) -> int:
        """The element c mod p of the prime field."""
        return c % self.p

    def elements(self):
        return range(self.order)

    def nonzero(self):
        return range(1, self.order)

    def random(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.order)

    # -- subfields ---------------------------------------------------------

    def _check_divisor(self, t: int):
        if not isinstance(t, int) or t < 1 or self.n % t:
            raise PreconditionError(f"{t} does not divide n={self.n}")

    def subfield_generator(self, t: int) -> int:
        """A primitive element of F_{q^t}; it generates F_{q^t} over F_q."""
        self._check_divisor(t)
        return self.exp[self.N // (self.q**t - 1)]

    def in_subfield(self, a: int, t: int) -> bool:
        """Whether a lies in F_{q^t}; t must divide n."""
        if a == 0:
            return True
        return self.log[a] * (self.q**t - 1) % self.N == 0

    def subfield_elements(self, t: int) -> list[int]:
        self._check_divisor(t)
        step = self.N // (self.q**t - 1)
        return [0] + [self.exp[j * step] for j in range(self.q**t - 1)]

    def degree_over_base(self, a: int) -> int:
        """dim_{F_q} F_q(a): the least t | n with a^(q^t) = a."""
        for t in divisors(self.n):
            if self.in_subfield(a, t):
                return t
        raise AssertionError("unreachable")

    def _check_rel(self, a: int, frm: int, to: int):
        self._check_divisor(frm)
        if to < 1 or frm % to:
            raise PreconditionError(f"{to} does not divide {frm}")
        if not self.in_subfield(a, frm):
            raise PreconditionError(f"element {a} is not in the subfield of degree {frm}")

    def rel_trace(self, a: int, frm: int, to: int) -> int:
        """Tr_{F_{q^frm}/F_{q^to}}(a) = sum of a^(q^(to*i)), i < frm/to."""
        self._check_rel(a, frm, to)
        s, x = 0, a
        for _ in range(frm // to):
            s = self.add(s, x)
            x = self.q_power(x, to)
        return s

    def rel_norm(self, a: int, frm: int, to: int) -> int:
        """N_{F_{q^frm}/F_{q^to}}(a) = a^((q^frm - 1)/(q^to - 1))."""
        self._check_rel(a, frm, to)
        return self.power(a, (self.q**frm - 1) // (self.q**to - 1))

    # -- coordinates -------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        """F_p digits of the code, c_0 first."""
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds) -> int:
        return sum(int(c) * w for c, w in zip(ds, self._pw))

    def coords(self, a: int) -> tuple[int, ...]:
        """F_q-coordinates of a in the basis 1, g, ..., g^(n-1).

        Each coordinate is an element code of F_q (for h = 1 these are the
        ints 0..p-1).
        """
        if self.h == 1:
            if self.binary:
                return tuple((a >> i) & 1 for i in range(self.n))
            return tuple(self.digits(a))
        c = self._coord_cache.get(a)
        if c is None:
            d = self.digits(a)
            p, h = self.p, self.h
            flat = [sum(r * x for r, x in zip(row, d)) % p for row in self._coord_inv]
            out = []
            for i in range(self.n):
                v = 0
                for j in range(h):
                    if flat[i * h + j]:
                        v = self.add(v, self.mul(flat[i * h + j], self._beta_pows[j]))
                out.append(v)
            c = self._coord_cache[a] = tuple(out)
        return c

    def uncoords(self, v) -> int:
        v = list(v)
        if len(v) != self.n:
            raise ValidationError(f"coordinate vector must have length {self.n}, got {len(v)}")
        if any(not isinstance(c, int) or c not in self._fq_set for c in v):
            raise ValidationError(f"coordinates must be F_q element codes: {v}")
        if self.h == 1:
            return self.from_digits(v)
        s, gi = 0, 1
        for c in v:
            s = self.add(s, self.mul(c, gi))
            gi = self.mul(gi, self.g)
        return s

    def coord(self, a: int, i: int) -> int:
        if self.binary:
            return (a >> i) & 1
        if self.h == 1:
            return a // self._pw[i] % self.p
        return self.coords(a)[i]

    def lead(self, a: int) -> tuple[int, int]:
        """(index, value) of the first nonzero F_q-coordinate of a != 0."""
        if self.binary:
            return (a & -a).bit_length() - 1, 1
        if self.h == 1:
            i = 0
            p = self.p
            while a % p == 0:
                a //= p
                i += 1
            return i, a % p
        for i, c in enumerate(self.coords(a)):
            if c:
                return i, c
        raise ValueError("zero has no leading coordinate")

    def is_fq(self, a: int) -> bool:
        return a in self._fq_set

    # -- wrapping ------------------------------------------------------------

    def elem(self, code: int) -> Felt:
        return Felt(self, self.check(code))

    def gen(self) -> Felt:
        return Felt(self, self.g)


@lru_cache(maxsize=None)
def _cached_tower(p, h, n, modulus, size_cap):
    return FieldTower(p, h, n, modulus, size_cap)


def build_tower(p: int, h: int, n: int, modulus=None, size_cap: int = DEFAULT_SIZE_CAP) -> FieldTower:
    """Build (or fetch a cached) :class:`FieldTower`."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_tower(p, h, n, modulus, size_cap)


@dataclass(frozen=True)
class Felt:
    """An element of a :class:`FieldTower`, with operator overloading."""

    tower: FieldTower
    code: int

    def _other(self, other) -> int:
        if isinstance(other, Felt):
            self.tower.check_same(other.tower)
            return other.code
        if isinstance(other, int):
            return self.tower.check(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return Felt(self.tower, self.tower.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        return Felt(self.tower, self.tower.sub(self.code, self._other(other)))

    def __rsub__(self, other):
        return Felt(self.tower, self.tower.sub(self._other(other), self.code))

    def __neg__(self):
        return Felt(self.tower, self.tower.neg(self.code))

    def __mul__(self, other):
        return Felt(self.tower, self.tower.mul(self.code, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Felt(self.tower, self.tower.div(self.code, self._other(other)))

    def __rtruediv__(self, other):
        return Felt(self.tower, self.tower.div(self._other(other), self.code))

    def __pow__(self, e: int):
        return Felt(self.tower, self.tower.power(self.code, e))

    def inverse(self) -> Felt:
        return Felt(self.tower, self.tower.inv(self.code))

    def frobenius(self, sigma) -> Felt:
        return Felt(self.tower, self.tower.frobenius(self.code, sigma))

    def degree(self) -> int:
        return self.tower.degree_over_base(self.code)

    def trace(self, frm: int, to: int = 1) -> Felt:
        return Felt(self.tower, self.tower.rel_trace(self.code, frm, to))

    def norm(self, frm: int, to: int = 1) -> Felt:
        return Felt(self.tower, self.tower.rel_norm(self.code, frm, to))

    def coords(self) -> tuple[int, ...]:
        return self.tower.coords(self.code)

    @property
    def log(self) -> int | None:
        return None if self.code == 0 else self.tower.log[self.code]

    def __int__(self):
        return self.code

    __index__ = __int__

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, Felt):
            return self.tower == other.tower and self.code == other.code
        if isinstance(other, int):
            return self.code == other
        return NotImplemented

    def __hash__(self):
        return hash((self.tower.key, self.code))

    def __repr__(self):
        return "0" if self.code == 0 else f"g^{self.tower.log[self.code]}"


def element_arith(a: Felt, b: Felt | None, kind: str) -> Felt:
    """Dispatch one of add|sub|mul|div|inv|neg|pow on Felts (b is the int exponent for pow)."""
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "inv":
        return a.inverse()
    if kind == "neg":
        return -a
    if kind == "pow":
        return a**b
    raise ValidationError(f"unknown arithmetic kind {kind!r}")
