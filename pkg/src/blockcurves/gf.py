"""Arithmetic in F_{p^n} for small prime powers.

Elements are plain ints in [0, q): the base-p digits of the index are the
coefficients of the residue polynomial, so 0 and 1 are the additive and
multiplicative identities in every field.  Fields up to 2**16 get dense
exp/log tables for multiplication; larger fields (only reachable through
embedding targets) fall back to direct polynomial arithmetic behind the
same interface.

Embeddings between F_q and F_{q^m} are computed by root search for the
source modulus in the target field.  Root choices are made through a
per-characteristic lattice so that composite embeddings agree with direct
ones along any tower (see `_embedding_root`).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SIZE_GUARD = 1 << 20
TABLE_MAX = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^n} with its defining modulus.

    `modulus` is the monic irreducible polynomial of degree n over F_p with
    the smallest integer encoding (sum of c_i * p**i over the non-leading
    coefficients); it is degenerate (t itself) when n == 1.
    """

    p: int
    n: int
    q: int
    modulus: tuple[int, ...]

    def __repr__(self):
        return f"FieldSpec(q={self.q})" if self.n > 1 else f"FieldSpec(p={self.p})"


# ---------------------------------------------------------------------------
# modulus construction

def _poly_from_index(v: int, p: int, n: int) -> list[int]:
    """Monic degree-n polynomial whose non-leading coefficients encode v."""
    coeffs = []
    for _ in range(n):
        coeffs.append(v % p)
        v //= p
    coeffs.append(1)
    return coeffs


def _fp_polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_polymod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * mi) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(poly, p) -> bool:
    """Exhaustive trial division by monic factors of degree <= deg/2."""
    n = len(poly) - 1
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for v in range(p ** deg):
            cand = _poly_from_index(v, p, deg)
            if not _fp_polymod(poly, cand, p):
                return False
    return True


def make_field(p: int, n: int) -> FieldSpec:
    """Build F_{p^n}; modulus is the smallest-encoding monic irreducible."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    q = p ** n
    if q > SIZE_GUARD:
        raise ValueError(f"field size {q} exceeds guard {SIZE_GUARD}")
    if n == 1:
        return FieldSpec(p, 1, p, (0, 1))
    for v in range(q):
        cand = _poly_from_index(v, p, n)
        if _is_irreducible(cand, p):
            return FieldSpec(p, n, q, tuple(cand))
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# element arithmetic

def _digits(x: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(x % p)
        x //= p
    return out


def _undigits(ds, p) -> int:
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


class _Tables:
    """Per-field arithmetic context (exp/log for q <= TABLE_MAX)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        p, n, q = spec.p, spec.n, spec.q
        self.has_tables = q <= TABLE_MAX
        if self.has_tables:
            gen = self._find_generator()
            exp = [1] * (2 * (q - 1))
            log = [0] * q
            acc = 1
            for i in range(q - 2 + 1):
                exp[i] = acc
                log[acc] = i
                acc = self._raw_mul(acc, gen)
            for i in range(q - 1, 2 * (q - 1)):
                exp[i] = exp[i - (q - 1)]
            self.exp = exp
            self.log = log
            self.generator = gen
        self._np_add = None
        self._np_mul = None

    # raw polynomial mult mod modulus (used to build tables / big fields)
    def _raw_mul(self, a: int, b: int) -> int:
        spec = self.spec
        p, n = spec.p, spec.n
        if n == 1:
            return (a * b) % p
        da = _digits(a, p, n)
        db = _digits(b, p, n)
        prod = [0] * (2 * n - 1)
        for i, ai in enumerate(da):
            if ai:
                for j, bj in enumerate(db):
                    prod[i + j] = (prod[i + j] + ai * bj) % p
        red = _fp_polymod(prod, list(spec.modulus), p)
        red += [0] * (n - len(red))
        return _undigits(red[:n], p)

    def _find_generator(self) -> int:
        q = self.spec.q
        fac = []
        m = q - 1
        f = 2
        while f * f <= m:
            if m % f == 0:
                fac.append(f)
                while m % f == 0:
                    m //= f
            f += 1
        if m > 1:
            fac.append(m)
        for g in range(1, q):
            if all(self._raw_pow(g, (q - 1) // ell) != 1 for ell in fac):
                return g
        raise AssertionError("no generator found")

    def _raw_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._raw_mul(r, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return r

    def add(self, a: int, b: int) -> int:
        spec = self.spec
        if spec.p == 2:
            return a ^ b
        if spec.n == 1:
            return (a + b) % spec.p
        p = spec.p
        out = 0
        mult = 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        spec = self.spec
        if spec.p == 2:
            return a
        if spec.n == 1:
            return (-a) % spec.p
        p = spec.p
        out = 0
        mult = 1
        while a:
            out += ((-(a % p)) % p) * mult
            a //= p
            mult *= p
        return out

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.has_tables:
            return self.exp[self.log[a] + self.log[b]]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self.has_tables:
            q = self.spec.q
            return self.exp[(q - 1 - self.log[a]) % (q - 1)]
        return self._raw_pow(a, self.spec.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self.has_tables:
            return self.exp[(self.log[a] * e) % (self.spec.q - 1)]
        return self._raw_pow(a, e)

    # numpy tables for the compiled/vectorised kernels
    def np_tables(self):
        """(add, mul, inv, neg) dense tables as read-only uint16 arrays."""
        if self._np_add is None:
            q = self.spec.q
            if q > 4096:
                raise ValueError(f"kernel tables not built for q={q} > 4096")
            add = np.empty((q, q), dtype=np.uint16)
            mul = np.empty((q, q), dtype=np.uint16)
            inv = np.zeros(q, dtype=np.uint16)
            neg = np.zeros(q, dtype=np.uint16)
            for a in range(q):
                for b in range(a, q):
                    s = self.add(a, b)
                    m = self.mul(a, b)
                    add[a, b] = add[b, a] = s
                    mul[a, b] = mul[b, a] = m
                if a:
                    inv[a] = self.inv(a)
                neg[a] = self.neg(a)
            for arr in (add, mul, inv, neg):
                arr.setflags(write=False)
            self._np_add = (add, mul, inv, neg)
        return self._np_add


@lru_cache(maxsize=None)
def _tables_for(spec: FieldSpec) -> _Tables:
    return _Tables(spec)


def tables(spec: FieldSpec) -> _Tables:
    return _tables_for(spec)


def add(spec, a, b):
    return _tables_for(spec).add(a, b)


def neg(spec, a):
    return _tables_for(spec).neg(a)


def sub(spec, a, b):
    t = _tables_for(spec)
    return t.add(a, t.neg(b))


def mul(spec, a, b):
    return _tables_for(spec).mul(a, b)


def inv(spec, a):
    return _tables_for(spec).inv(a)


def power(spec, a, e):
    return _tables_for(spec).pow(a, e)


_OPS = {
    "add": lambda t, ops: t.add(*ops),
    "mul": lambda t, ops: t.mul(*ops),
    "neg": lambda t, ops: t.neg(*ops),
    "inv": lambda t, ops: t.inv(*ops),
    "pow": lambda t, ops: t.pow(*ops),
}


def field_arith(spec: FieldSpec, op: str, *operands: int) -> int:
    """Dispatch interface over {add, mul, neg, inv, pow}."""
    if op not in _OPS:
        raise ValueError(f"unknown op {op!r}")
    for x in operands[:1] if op == "pow" else operands:
        if not (0 <= x < spec.q):
            raise ValueError(f"operand {x} out of range for q={spec.q}")
    return _OPS[op](_tables_for(spec), operands)


def elements(spec: FieldSpec):
    return range(spec.q)


# ---------------------------------------------------------------------------
# embeddings
#
# For fixed characteristic p we keep a lattice of chosen generator images
# rho[(d, m)] = image in F_{p^m} of the canonical generator of F_{p^d}.
# Whole columns (all divisors d of m at once, largest first) are built in a
# single deterministic pass: the first choice is free (smallest root), every
# later choice must restrict to the images already induced on subfields.
# This makes all embedding triangles commute, so towers compose exactly.

_embed_roots: dict[int, dict[tuple[int, int], int]] = {}


def _modulus_roots(p: int, d: int, target: FieldSpec) -> list[int]:
    """All roots in `target` of the degree-d canonical modulus, by index."""
    mod = make_field(p, d).modulus
    t = _tables_for(target)
    roots = []
    for x in range(target.q):
        acc = 0
        for c in reversed(mod):
            acc = t.add(t.mul(acc, x), c)
        if acc == 0:
            roots.append(x)
            if len(roots) == d:
                break
    return roots


def _apply_root(p: int, d: int, x: int, root: int, target: FieldSpec) -> int:
    """Image of x in F_{p^d} under the embedding sending the generator to root."""
    t = _tables_for(target)
    acc = 0
    for c in reversed(_digits(x, p, d)):
        acc = t.add(t.mul(acc, root), c)
    return acc


def _build_column(p: int, m: int) -> None:
    """Choose coherent generator images rho[(d, m)] for every divisor d | m."""
    lattice = _embed_roots.setdefault(p, {})
    target = make_field(p, m)
    divisors = sorted((d for d in range(2, m) if m % d == 0), reverse=True)
    for d in divisors:
        if (d, m) in lattice:
            continue
        # make sure the source field's own sub-lattice exists
        for e in (e for e in range(2, d) if d % e == 0):
            if (e, d) not in lattice:
                _build_column(p, d)
                break
        chosen = None
        for root in _modulus_roots(p, d, target):
            ok = True
            for e in (e for e in range(2, d) if d % e == 0):
                want = lattice.get((e, m))
                if want is not None and _apply_root(p, d, lattice[(e, d)], root, target) != want:
                    ok = False
                    break
            if ok:
                chosen = root
                break
        if chosen is None:
            raise AssertionError(f"no coherent root for F_{p}^{d} -> F_{p}^{m}")
        lattice[(d, m)] = chosen
        # induce images for all proper subfields through this choice
        for e in (e for e in range(2, d) if d % e == 0):
            if (e, m) not in lattice:
                lattice[(e, m)] = _apply_root(p, d, lattice[(e, d)], chosen, target)


def _embedding_root(p: int, d: int, m: int) -> int:
    lattice = _embed_roots.setdefault(p, {})
    if (d, m) not in lattice:
        _build_column(p, m)
    return lattice[(d, m)]


def embed(source: FieldSpec, x: int, target: FieldSpec) -> int:
    """Embed x from F_q into F_{q^m}; errors if target is not a power of q."""
    if not (0 <= x < source.q):
        raise ValueError(f"element {x} out of range for q={source.q}")
    if target.p != source.p or target.n % source.n != 0:
        raise ValueError(f"F_{target.q} is not an extension of F_{source.q}")
    if target.n == source.n:
        return x
    if source.n == 1:
        return x  # prime subfield: 0..p-1 are the same constants
    root = _embedding_root(source.p, source.n, target.n)
    return _apply_root(source.p, source.n, x, root, target)
