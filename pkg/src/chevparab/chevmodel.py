"""Chevalley basis, exact matrix models of elementary subgroups and commutator constants.

The structure constants ``N(a, b)`` with ``[X_a, X_b] = N(a, b) X_{a+b}`` are fixed
by declaring every extraspecial pair positive and propagating through the
standard identities.  Group elements live in two concrete models:

* the adjoint model, acting on the Lie algebra in the basis ``X_a`` (roots in
  root order) followed by ``H_1, ..., H_r``;
* for type ``A_{n-1}``, the natural ``SL_n`` model with ``e_ij(r) = I + r E_ij``,
  aligned to the same Chevalley basis through a recorded sign map.

Commutators are ``[g, h] = g h g^-1 h^-1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import factorial
from typing import Iterable, Iterator, Sequence

from .laurent import CoefficientRing, LPoly
from .rootsys import Root, RootSystem, build_root_system


# --------------------------------------------------------------------------
# Sparse matrices over an exact ring
# --------------------------------------------------------------------------


class ModelMatrix:
    """Sparse square matrix stored column-wise: ``cols[j][i]`` is entry ``(i, j)``."""

    __slots__ = ("dim", "cols", "p")

    def __init__(self, dim: int, cols: dict[int, dict[int, LPoly]], p: int = 0):
        self.dim = dim
        self.cols = cols
        self.p = p

    @classmethod
    def identity(cls, dim: int, p: int = 0) -> "ModelMatrix":
        one = LPoly.const(1, p)
        return cls(dim, {j: {j: one} for j in range(dim)}, p)

    def __matmul__(self, other: "ModelMatrix") -> "ModelMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        a = self.cols
        out: dict[int, dict[int, LPoly]] = {}
        for j, bcol in other.cols.items():
            col: dict[int, LPoly] = {}
            for k, bkj in bcol.items():
                acol = a.get(k)
                if not acol:
                    continue
                if bkj.is_one():
                    for i, aik in acol.items():
                        prev = col.get(i)
                        col[i] = aik if prev is None else prev + aik
                else:
                    for i, aik in acol.items():
                        v = aik * bkj
                        prev = col.get(i)
                        col[i] = v if prev is None else prev + v
            col = {i: v for i, v in col.items() if v.terms}
            if col:
                out[j] = col
        return ModelMatrix(self.dim, out, self.p)

    def entry(self, i: int, j: int) -> LPoly:
        return self.cols.get(j, {}).get(i, LPoly.const(0, self.p))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModelMatrix):
            return NotImplemented
        return self.dim == other.dim and self.cols == other.cols

    def is_identity(self) -> bool:
        if len(self.cols) != self.dim:
            return False
        for j, col in self.cols.items():
            if len(col) != 1 or j not in col or not col[j].is_one():
                return False
        return True

    def differences(self, other: "ModelMatrix") -> list[tuple[int, int]]:
        out = []
        for j in set(self.cols) | set(other.cols):
            c1, c2 = self.cols.get(j, {}), other.cols.get(j, {})
            for i in set(c1) | set(c2):
                if c1.get(i) != c2.get(i):
                    out.append((i, j))
        return sorted(out)

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def to_rows(self) -> list[list[str]]:
        return [[str(self.entry(i, j)) for j in range(self.dim)] for i in range(self.dim)]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "p": self.p,
            "entries": [
                [i, j, str(v)] for j in sorted(self.cols) for i, v in sorted(self.cols[j].items())
            ],
        }

    def __repr__(self) -> str:
        return f"ModelMatrix(dim={self.dim}, nnz={self.nnz()})"


# --------------------------------------------------------------------------
# Chevalley basis
# --------------------------------------------------------------------------


@dataclass
class ChevalleyBasis:
    """Structure constants of a Chevalley basis and the derived integer ``ad`` matrices."""

    rs: RootSystem
    N: dict[tuple[Root, Root], int]
    extraspecial: dict[Root, tuple[Root, Root]]

    @cached_property
    def dim(self) -> int:
        return len(self.rs.roots) + self.rs.rank

    def x_index(self, a: Root) -> int:
        return self.rs.index(a)

    def h_index(self, i: int) -> int:
        return len(self.rs.roots) + i

    def bracket_constant(self, a: Root, b: Root) -> int:
        return self.N.get((a, b), 0)

    @cached_property
    def brackets(self) -> dict[tuple[Root, Root], tuple[Root, int]]:
        return {(a, b): (a + b, n) for (a, b), n in self.N.items()}

    @cached_property
    def cartan_action(self) -> dict[tuple[Root, Root], int]:
        """``(b, a)`` for simple ``a`` and any root ``b``: the weight of ``H_a`` on ``X_b``."""
        rs = self.rs
        return {(a, b): rs.cartan_int(b, a) for a in rs.simples for b in rs.roots}

    def string_length(self, a: Root, b: Root) -> int:
        """Largest ``m`` with ``b - m a`` a root."""
        m = 0
        while (b - (m + 1) * a) in self.rs:
            m += 1
        return m

    # ad matrices over ℤ as {col: {row: int}} -------------------------------
    def ad_x(self, a: Root) -> dict[int, dict[int, int]]:
        return self._ad_x_cache[a]

    @cached_property
    def _ad_x_cache(self) -> dict[Root, dict[int, dict[int, int]]]:
        rs = self.rs
        out = {}
        for a in rs.roots:
            cols: dict[int, dict[int, int]] = {}
            for b in rs.roots:
                j = self.x_index(b)
                if b == -a:
                    cc = rs.coroot_coeffs(a)
                    col = {self.h_index(i): c for i, c in enumerate(cc) if c}
                else:
                    n = self.N.get((a, b), 0)
                    col = {self.x_index(a + b): n} if n else {}
                if col:
                    cols[j] = col
            for i, s in enumerate(rs.simples):
                w = -rs.cartan_int(a, s)
                if w:
                    cols[self.h_index(i)] = {self.x_index(a): w}
            out[a] = cols
        return out

    def ad_h(self, i: int) -> dict[int, dict[int, int]]:
        rs = self.rs
        s = rs.simples[i]
        return {
            self.x_index(b): {self.x_index(b): rs.cartan_int(b, s)}
            for b in rs.roots
            if rs.cartan_int(b, s)
        }

    def bracket_vectors(self, u: dict[int, int], v: dict[int, int]) -> dict[int, int]:
        """Lie bracket of two integer vectors in the Chevalley basis."""
        out: dict[int, int] = {}
        for i, ci in u.items():
            ad = self._basis_ad(i)
            for j, cj in v.items():
                for k, ck in ad.get(j, {}).items():
                    out[k] = out.get(k, 0) + ci * cj * ck
        return {k: c for k, c in out.items() if c}

    def _basis_ad(self, i: int) -> dict[int, dict[int, int]]:
        n = len(self.rs.roots)
        if i < n:
            return self.ad_x(self.rs.roots[i])
        return self.ad_h(i - n)

    def jacobi_failures(self) -> list[tuple[int, int, int]]:
        """Basis triples violating the Jacobi identity (empty for a valid table)."""
        bad = []
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(j + 1, d):
                    ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
                    t1 = self.bracket_vectors(ei, self.bracket_vectors(ej, ek))
                    t2 = self.bracket_vectors(ej, self.bracket_vectors(ek, ei))
                    t3 = self.bracket_vectors(ek, self.bracket_vectors(ei, ej))
                    tot: dict[int, int] = {}
                    for t in (t1, t2, t3):
                        for key, c in t.items():
                            tot[key] = tot.get(key, 0) + c
                    if any(tot.values()):
                        bad.append((i, j, k))
        return bad

    @cached_property
    def exp_terms(self) -> dict[Root, list[dict[int, dict[int, int]]]]:
        """For each root, the integer matrices ``(ad X_a)^k / k!`` for ``k >= 1``."""
        out = {}
        for a in self.rs.roots:
            ad = self.ad_x(a)
            terms = []
            power = ad
            k = 1
            while power:
                fk = factorial(k)
                scaled = {}
                for j, col in power.items():
                    sc = {}
                    for i, c in col.items():
                        q, r = divmod(c, fk)
                        if r:
                            raise AssertionError("ad exponential is not integral")
                        sc[i] = q
                    scaled[j] = sc
                terms.append(scaled)
                power = _int_matmul(ad, power)
                k += 1
            out[a] = terms
        return out


def _int_matmul(a: dict[int, dict[int, int]], b: dict[int, dict[int, int]]) -> dict[int, dict[int, int]]:
    out: dict[int, dict[int, int]] = {}
    for j, bcol in b.items():
        col: dict[int, int] = {}
        for k, bkj in bcol.items():
            for i, aik in a.get(k, {}).items():
                col[i] = col.get(i, 0) + aik * bkj
        col = {i: c for i, c in col.items() if c}
        if col:
            out[j] = col
    return out


def _structure_constants_N(rs: RootSystem) -> tuple[dict[tuple[Root, Root], int], dict[Root, tuple[Root, Root]]]:
    N: dict[tuple[Root, Root], int] = {}
    extraspecial: dict[Root, tuple[Root, Root]] = {}
    norm = rs.norm

    def p_of(a: Root, b: Root) -> int:
        m = 0
        while (b - (m + 1) * a) in rs:
            m += 1
        return m

    def get(a: Root, b: Root) -> int:
        s = a + b
        if s not in rs:
            return 0
        if a.is_positive and b.is_positive:
            return N[(a, b)]
        if not a.is_positive and not b.is_positive:
            return -get(-a, -b)
        # mixed signs: use the cyclic identity for a + b + (-s) = 0
        c = s
        if a.is_positive:  # b negative
            if c.is_positive:
                # N(a,b)/|c|^2 = N(b,-c)/|a|^2, both b and -c negative
                return _exact(Fraction(norm(c), norm(a)) * get(b, -c))
            return _exact(Fraction(norm(c), norm(b)) * get(-c, a))
        # a negative, b positive: N(a,b) = -N(b,a)
        return -get(b, a)

    for xi in rs.positive:
        if xi in rs.simples:
            continue
        pairs = [
            (a, xi - a)
            for a in rs.positive
            if (xi - a) in rs and (xi - a).is_positive and a < (xi - a)
        ]
        a0, b0 = pairs[0]
        extraspecial[xi] = (a0, b0)
        n0 = p_of(a0, b0) + 1
        N[(a0, b0)] = n0
        N[(b0, a0)] = -n0
        for a, b in pairs[1:]:
            total = Fraction(0)
            if (b - a0) in rs:
                total += Fraction(get(b, -a0) * get(a, -b0), norm(b - a0))
            if (a - a0) in rs:
                total += Fraction(get(-a0, a) * get(b, -b0), norm(a - a0))
            val = _exact(Fraction(norm(xi), n0) * total)
            N[(a, b)] = val
            N[(b, a)] = -val

    full: dict[tuple[Root, Root], int] = {}
    for a in rs.roots:
        for b in rs.roots:
            if a != -b and (a + b) in rs:
                full[(a, b)] = get(a, b)
    return full, extraspecial


def _exact(q: Fraction) -> int:
    if q.denominator != 1:
        raise AssertionError(f"non-integral structure constant {q}")
    return int(q)


_CB_CACHE: dict[str, ChevalleyBasis] = {}


def chevalley_basis(rs: RootSystem | str) -> ChevalleyBasis:
    """Build (and cache) a Chevalley basis with positive extraspecial signs."""
    if isinstance(rs, str):
        rs = build_root_system(rs)
    key = str(rs.type)
    if key not in _CB_CACHE:
        N, ex = _structure_constants_N(rs)
        cb = ChevalleyBasis(rs, N, ex)
        for (a, b), n in N.items():
            if abs(n) != cb.string_length(a, b) + 1:
                raise AssertionError(f"|N({a},{b})| = {abs(n)} violates the string rule")
        _CB_CACHE[key] = cb
    return _CB_CACHE[key]


# --------------------------------------------------------------------------
# Models
# --------------------------------------------------------------------------


def _as_elem(ring: CoefficientRing, f) -> LPoly:
    return ring.coerce(f) if not isinstance(f, LPoly) else f


class AdjointModel:
    """Root elements, torus elements and Weyl elements acting on the Lie algebra."""

    kind = "adjoint"

    def __init__(self, cb: ChevalleyBasis | RootSystem | str, ring: CoefficientRing | None = None):
        if not isinstance(cb, ChevalleyBasis):
            cb = chevalley_basis(cb)
        self.cb = cb
        self.rs = cb.rs
        self.ring = ring or CoefficientRing()
        self.dim = cb.dim
        self.p = self.ring.p

    def identity(self) -> ModelMatrix:
        return ModelMatrix.identity(self.dim, self.p)

    def x(self, a: Root, f) -> ModelMatrix:
        f = _as_elem(self.ring, f)
        p = self.p
        one = LPoly.const(1, p)
        cols: dict[int, dict[int, LPoly]] = {j: {j: one} for j in range(self.dim)}
        if f.is_zero():
            return ModelMatrix(self.dim, cols, p)
        fk = f
        for term in self.cb.exp_terms[a]:
            for j, col in term.items():
                target = cols[j]
                for i, c in col.items():
                    v = fk * c
                    prev = target.get(i)
                    if prev is None:
                        target[i] = v
                    else:
                        v = prev + v
                        if v.terms:
                            target[i] = v
                        else:
                            del target[i]
            fk = fk * f
        cols = {j: {i: v for i, v in c.items() if v.terms} for j, c in cols.items()}
        return ModelMatrix(self.dim, cols, p)

    def h(self, a: Root, u) -> ModelMatrix:
        u = _as_elem(self.ring, u)
        rs = self.rs
        one = LPoly.const(1, self.p)
        cols = {}
        for b in rs.roots:
            j = self.cb.x_index(b)
            k = rs.cartan_int(b, a)
            cols[j] = {j: u ** k if k else one}
        for i in range(rs.rank):
            j = self.cb.h_index(i)
            cols[j] = {j: one}
        return ModelMatrix(self.dim, cols, self.p)

    def w(self, a: Root) -> ModelMatrix:
        return w_element(self, a)


def x_adj(cb: ChevalleyBasis, a: Root, f, ring: CoefficientRing | None = None) -> ModelMatrix:
    return AdjointModel(cb, ring).x(a, f)


def h_adj(cb: ChevalleyBasis, a: Root, u, ring: CoefficientRing | None = None) -> ModelMatrix:
    return AdjointModel(cb, ring).h(a, u)


def w_element(model, a: Root) -> ModelMatrix:
    """``w_a = x_a(1) x_{-a}(1)^{-1} x_a(1)``."""
    return model.x(a, 1) @ model.x(-a, -1) @ model.x(a, 1)


def type_a_rank(rs: RootSystem) -> int:
    if rs.type.family != "A":
        raise ValueError("the SL_n model exists only for type A")
    return rs.rank + 1


def root_to_ij(a: Root) -> tuple[int, int]:
    """``e_i - e_j`` (zero-based) for a type-A root given in simple-root coordinates."""
    nz = [k for k, c in enumerate(a.coeffs) if c]
    lo, hi = nz[0], nz[-1] + 1
    return (lo, hi) if a.is_positive else (hi, lo)


def x_sln(n: int, i: int, j: int, f, ring: CoefficientRing | None = None) -> ModelMatrix:
    """Elementary matrix ``e_ij(f) = I + f E_ij`` (zero-based indices)."""
    if i == j:
        raise ValueError("e_ii is not elementary")
    ring = ring or CoefficientRing()
    f = _as_elem(ring, f)
    m = ModelMatrix.identity(n, ring.p)
    if f.terms:
        m.cols[j][i] = f
    return m


class SLnModel:
    """``SL_n`` acting on column vectors, with ``x_a(f) = e_ij(sign(a) f)``."""

    kind = "sln"

    def __init__(self, rs: RootSystem | str, ring: CoefficientRing | None = None):
        if isinstance(rs, str):
            rs = build_root_system(rs)
        self.rs = rs
        self.n = type_a_rank(rs)
        self.dim = self.n
        self.ring = ring or CoefficientRing()
        self.p = self.ring.p
        self.signs = sign_map(chevalley_basis(rs))

    def identity(self) -> ModelMatrix:
        return ModelMatrix.identity(self.n, self.p)

    def x(self, a: Root, f) -> ModelMatrix:
        i, j = root_to_ij(a)
        f = _as_elem(self.ring, f)
        return x_sln(self.n, i, j, f * self.signs[a], self.ring)

    def h(self, a: Root, u) -> ModelMatrix:
        i, j = root_to_ij(a)
        u = _as_elem(self.ring, u)
        m = ModelMatrix.identity(self.n, self.p)
        m.cols[i][i] = u
        m.cols[j][j] = u.inverse()
        return m

    def w(self, a: Root) -> ModelMatrix:
        return w_element(self, a)


def sign_map(cb: ChevalleyBasis) -> dict[Root, int]:
    """Signs ``s(a)`` with ``X_a ↦ s(a) E_ij`` a Lie algebra isomorphism onto ``sl_n``.

    Simple roots get ``+1``; ``s(-a) = s(a)``; the rest is forced by the brackets.
    Raises ``AssertionError`` if the adjoint constants are not sign-equivalent
    to the matrix-unit constants.
    """
    rs = cb.rs
    type_a_rank(rs)
    s: dict[Root, int] = {a: 1 for a in rs.simples}
    for g in rs.positive:
        if g in s:
            continue
        a, b = rs.decompose_positive(g)
        s[g] = cb.N[(a, b)] * s[a] * s[b] * _sl_constant(a, b)
    for g in rs.positive:
        s[-g] = s[g]
    for (a, b), n in cb.N.items():
        if n != s[a] * s[b] * s[a + b] * _sl_constant(a, b):
            raise AssertionError(f"sign map inconsistent at ({a}, {b})")
    return s


def _sl_constant(a: Root, b: Root) -> int:
    """``[E_a, E_b] = c E_{a+b}`` for matrix units; returns ``c``."""
    i, j = root_to_ij(a)
    k, l = root_to_ij(b)
    if j == k:
        return 1
    if l == i:
        return -1
    return 0


# --------------------------------------------------------------------------
# Commutator constants
# --------------------------------------------------------------------------


def commutator(g: ModelMatrix, h: ModelMatrix, g_inv: ModelMatrix, h_inv: ModelMatrix) -> ModelMatrix:
    return g @ h @ g_inv @ h_inv


def _pair_roots(rs: RootSystem, a: Root, b: Root) -> list[tuple[int, int, Root]]:
    """Roots ``m a + n b`` (``m, n > 0``) ordered by ``m + n`` then ``m``."""
    out = []
    for total in range(2, 7):
        for m in range(1, total):
            n = total - m
            g = m * a + n * b
            if g in rs:
                out.append((m, n, g))
    return out


def peel(model: AdjointModel, g: ModelMatrix, roots: Sequence[Root]) -> tuple[dict[Root, LPoly], ModelMatrix]:
    """Factor ``g = prod_{c in roots} x_c(f_c) * rest`` reading parameters off ``g(H_i)``.

    ``roots`` must be ordered so that any sum of two or more of them comes
    strictly later.  Returns the parameters and the unexplained remainder
    (the identity when ``g`` lies in the product of the root subgroups).
    """
    rs = model.rs
    cb = model.cb
    params: dict[Root, LPoly] = {}
    cur = g
    for c in roots:
        i = next(k for k, s in enumerate(rs.simples) if rs.cartan_int(c, s))
        w = -rs.cartan_int(c, rs.simples[i])
        hcol = cur.cols.get(cb.h_index(i), {})
        entry = hcol.get(cb.x_index(c))
        if entry is None or entry.is_zero():
            continue
        try:
            f = entry.exact_div_int(w)
        except ValueError:
            return params, cur
        if f * w != entry:
            return params, cur
        params[c] = f
        cur = model.x(c, -f) @ cur
    return params, cur


@dataclass
class CommutatorTerm:
    m: int
    n: int
    root: Root
    C: int


def structure_constants(cb: ChevalleyBasis | RootSystem | str) -> dict[tuple[Root, Root], list[CommutatorTerm]]:
    """``C^{a,b}_{m,n}`` for all ordered pairs ``a != -b``, read from the adjoint model.

    The product on the right of the commutator formula is taken in increasing
    ``m + n``, then increasing ``m``.
    """
    if not isinstance(cb, ChevalleyBasis):
        cb = chevalley_basis(cb)
    key = str(cb.rs.type)
    if key in _SC_CACHE:
        return _SC_CACHE[key]
    rs = cb.rs
    ring = CoefficientRing(0, (), ("r", "s"))
    model = AdjointModel(cb, ring)
    r, s = ring.var("r"), ring.var("s")
    out: dict[tuple[Root, Root], list[CommutatorTerm]] = {}
    for a in rs.roots:
        xa, xai = model.x(a, r), model.x(a, -r)
        for b in rs.roots:
            if a == -b:
                continue
            terms = _pair_roots(rs, a, b)
            if not terms:
                out[(a, b)] = []
                continue
            comm = commutator(xa, model.x(b, s), xai, model.x(b, -s))
            params, rest = peel(model, comm, [t[2] for t in terms])
            if not rest.is_identity():
                raise AssertionError(f"commutator of {a}, {b} leaves the expected root subgroups")
            lst = []
            for m, n, g in terms:
                f = params.get(g)
                if f is None:
                    continue
                mono = ((("r", m), ("s", n)))
                if set(f.terms) != {mono}:
                    raise AssertionError(f"parameter {f} of {g} is not a multiple of r^{m} s^{n}")
                lst.append(CommutatorTerm(m, n, g, f.terms[mono]))
            out[(a, b)] = lst
    _SC_CACHE[key] = out
    return out


_SC_CACHE: dict[str, dict] = {}


def commutator_rhs(model, terms: Iterable[CommutatorTerm], r: LPoly, s: LPoly) -> ModelMatrix:
    out = model.identity()
    for t in terms:
        out = out @ model.x(t.root, (r ** t.m) * (s ** t.n) * t.C)
    return out


@dataclass
class CheckResult:
    ok: bool
    lhs: ModelMatrix
    rhs: ModelMatrix
    mismatches: list[tuple[int, int]] = field(default_factory=list)


def check_commutator(model, a: Root, b: Root, r=None, s=None) -> CheckResult:
    """Compare ``[x_a(r), x_b(s)]`` with the product formula, entry by entry.

    ``r`` and ``s`` default to fresh polynomial indeterminates.
    """
    if a == -b:
        raise ValueError("the commutator formula excludes opposite roots")
    ring = model.ring
    if r is None or s is None:
        ring = ring.extend(poly_vars=("r", "s"))
        model = type(model)(model.cb if isinstance(model, AdjointModel) else model.rs, ring)
        r, s = ring.var("r"), ring.var("s")
    r, s = _as_elem(ring, r), _as_elem(ring, s)
    terms = structure_constants(chevalley_basis(model.rs))[(a, b)]
    lhs = commutator(model.x(a, r), model.x(b, s), model.x(a, -r), model.x(b, -s))
    rhs = commutator_rhs(model, terms, r, s)
    diffs = lhs.differences(rhs)
    return CheckResult(not diffs, lhs, rhs, diffs)


def structure_constants_csv(cb: ChevalleyBasis | RootSystem | str) -> str:
    """CSV with columns ``a,b,m,n,C`` over ordered pairs with a nontrivial commutator."""
    import csv
    import io

    table = structure_constants(cb)
    rs = (cb if isinstance(cb, ChevalleyBasis) else chevalley_basis(cb)).rs
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["a", "b", "m", "n", "C"])
    for a in rs.roots:
        for b in rs.roots:
            for t in table.get((a, b), []):
                w.writerow([a.name(), b.name(), t.m, t.n, t.C])
    return buf.getvalue()


def read_structure_constants_csv(text: str, rank: int) -> dict[tuple[Root, Root], list[CommutatorTerm]]:
    import csv
    import io

    out: dict[tuple[Root, Root], list[CommutatorTerm]] = {}
    for row in csv.DictReader(io.StringIO(text)):
        a, b = Root.from_name(row["a"], rank), Root.from_name(row["b"], rank)
        m, n = int(row["m"]), int(row["n"])
        out.setdefault((a, b), []).append(CommutatorTerm(m, n, m * a + n * b, int(row["C"])))
    return out
