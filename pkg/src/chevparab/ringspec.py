"""Symbolic base-ring descriptors and the unit/additive generating-set machinery.

A :class:`RingSpec` records a finite generating set ``A`` of the unit group
(free and torsion generators), additive generators ``T0`` with ``x0 = 1``,
finiteness facts, and a concrete :class:`~chevparab.laurent.CoefficientRing`
in which generators can be evaluated for matrix checks.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Literal, Sequence, Union

from .laurent import CoefficientRing, LPoly
from .rootsys import Root, RootSystem, RootSystemType

Tri = Literal["yes", "no", "unknown"]
TRI_VALUES = ("yes", "no", "unknown")


@dataclass(frozen=True, order=True)
class UnitElement:
    """Exponent vector over the unit generators ``A``."""

    exps: tuple[int, ...]

    def __mul__(self, other: "UnitElement") -> "UnitElement":
        return UnitElement(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __pow__(self, k: int) -> "UnitElement":
        return UnitElement(tuple(a * k for a in self.exps))

    def is_one(self) -> bool:
        return not any(self.exps)


@dataclass(frozen=True, order=True)
class TElem:
    """An element ``u * x_i`` with ``u`` a unit and ``x_i`` an additive generator."""

    unit: UnitElement
    gen: int


@dataclass(frozen=True)
class FormalTerm:
    """``a * w^(2k) * u * x_gen``."""

    a: int
    w: UnitElement
    k: int
    u: UnitElement
    gen: int


@dataclass(frozen=True)
class Arithmetic:
    char: int
    S_size: int

    def __post_init__(self):
        if self.S_size < 1:
            raise ValueError("|S| must be at least 1")
        if self.char < 0:
            raise ValueError("characteristic must be non-negative")


# Product table entry: (a, unit exponents, generator index)
TableEntry = tuple[int, tuple[int, ...], int]


@dataclass(frozen=True)
class RingSpec:
    name: str
    unit_gens: tuple[str, ...]
    unit_orders: tuple[int | None, ...]
    char: int = 0
    additive_gens: tuple[str, ...] = ("1",)
    coeff: CoefficientRing | None = None
    unit_values: tuple[str, ...] | None = None
    additive_values: tuple[str, ...] | None = None
    invertible_primes: tuple[int, ...] | Literal["all"] = ()
    parabolics_fg: Tri = "unknown"
    borel2_fp: Tri = "unknown"
    levi_fp: Tri = "unknown"
    arithmetic: Arithmetic | None = None
    product_table: tuple[tuple[tuple[int, int, int, int], tuple[TableEntry, ...]], ...] = ()
    additively_generated: bool = True
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.unit_gens) != len(self.unit_orders):
            raise ValueError("unit generator names and orders differ in length")
        if not self.additive_gens or self.additive_gens[0] != "1":
            raise ValueError("the additive generators must start with x0 = 1")
        for flag in (self.parabolics_fg, self.borel2_fp, self.levi_fp):
            if flag not in TRI_VALUES:
                raise ValueError(f"flag value {flag!r} not in {TRI_VALUES}")
        if self.borel2_fp == "yes" and self.parabolics_fg == "no":
            raise ValueError("a finitely presented rank-one Borel contradicts parabolics_fg = no")
        if self.arithmetic is not None and self.arithmetic.char != self.char:
            raise ValueError("arithmetic data disagrees with the characteristic")
        if self.coeff is not None and self.coeff.p != self.char:
            raise ValueError("coefficient ring characteristic disagrees with char")

    # unit group ----------------------------------------------------------
    @property
    def rank_A(self) -> int:
        return len(self.unit_gens)

    @property
    def unit_free_rank(self) -> int:
        return sum(1 for o in self.unit_orders if o is None)

    @property
    def unit_torsion(self) -> list[int]:
        return [o for o in self.unit_orders if o is not None]

    def unit(self, exps: Sequence[int]) -> UnitElement:
        """Canonical unit: torsion exponents reduced into ``[0, order)``."""
        if len(exps) != self.rank_A:
            raise ValueError("wrong number of unit exponents")
        return UnitElement(tuple(e % o if o else e for e, o in zip(exps, self.unit_orders)))

    def one(self) -> UnitElement:
        return UnitElement((0,) * self.rank_A)

    def gen_unit(self, i: int, e: int = 1) -> UnitElement:
        return self.unit(tuple(e if j == i else 0 for j in range(self.rank_A)))

    def umul(self, a: UnitElement, b: UnitElement) -> UnitElement:
        return self.unit((a * b).exps)

    def upow(self, a: UnitElement, k: int) -> UnitElement:
        return self.unit((a ** k).exps)

    def box_rep(self, e: int, order: int | None, c: int) -> int | None:
        """Representative of exponent ``e`` inside ``[-c, c]`` (None if impossible)."""
        if order is None:
            return e if -c <= e <= c else None
        e %= order
        if e <= c:
            return e
        if order - e <= c:
            return e - order
        return None

    def in_box(self, u: UnitElement, c: int) -> bool:
        return all(self.box_rep(e, o, c) is not None for e, o in zip(u.exps, self.unit_orders))

    def box(self, c: int) -> list[UnitElement]:
        """``A^[c]``: canonical units whose exponents all admit representatives in ``[-c, c]``."""
        axes = []
        for o in self.unit_orders:
            if o is None:
                axes.append(range(-c, c + 1))
            else:
                axes.append(sorted({e % o for e in range(-c, c + 1)}))
        units = [UnitElement(tuple(p)) for p in itertools.product(*axes)]
        return sorted(units, key=self._unit_key)

    def _unit_key(self, u: UnitElement) -> tuple:
        reps = [self.box_rep(e, o, 1 << 30) for e, o in zip(u.exps, self.unit_orders)]
        return (sum(abs(r) for r in reps), tuple(abs(r) for r in reps), tuple(reps))

    def t_tilde(self, c: int) -> list[TElem]:
        """``T~ = A^[c] * T0``."""
        return [TElem(u, i) for i in range(len(self.additive_gens)) for u in self.box(c)]

    def t_truncated(self, max_T: int, max_exponent: int) -> list[TElem]:
        """First ``max_T`` elements of ``T = <A> * T0`` with free exponents bounded by ``max_exponent``."""
        elems = self.t_tilde(max_exponent)
        elems.sort(key=lambda t: (self._unit_key(t.unit), t.gen))
        return elems[:max_T]

    # evaluation ------------------------------------------------------------
    def require_coeff(self) -> CoefficientRing:
        if self.coeff is None:
            raise ValueError(f"ring {self.name} has no concrete coefficient model")
        return self.coeff

    @cached_property
    def _unit_gen_values(self) -> tuple[LPoly, ...]:
        cr = self.require_coeff()
        vals = self.unit_values or self.unit_gens
        return tuple(cr.parse(v) for v in vals)

    @cached_property
    def _additive_values(self) -> tuple[LPoly, ...]:
        cr = self.require_coeff()
        vals = self.additive_values or self.additive_gens
        return tuple(cr.parse(v) for v in vals)

    def unit_value(self, u: UnitElement) -> LPoly:
        cr = self.require_coeff()
        out = cr.one()
        for g, e in zip(self._unit_gen_values, u.exps):
            if e:
                out = out * g ** e
        return out

    def gen_value(self, i: int) -> LPoly:
        return self._additive_values[i]

    def t_value(self, t: TElem) -> LPoly:
        return self.unit_value(t.unit) * self.gen_value(t.gen)

    def unit_gen_value(self, i: int) -> LPoly:
        return self._unit_gen_values[i]

    def integer_unit(self, n: int, c: int | None = None) -> UnitElement | None:
        """The unit element equal to the integer ``n`` (searching a box), or None."""
        if self.coeff is None:
            return None
        target = self.coeff.const(n)
        if target.is_zero() or not self.coeff.is_unit(target):
            return None
        bound = c if c is not None else max([o for o in self.unit_orders if o] + [2])
        for u in self.box(bound):
            if any(e and o is None for e, o in zip(u.exps, self.unit_orders)):
                continue
            if self.unit_value(u) == target:
                return u
        return None

    def torsion_scalar(self, u: UnitElement) -> int:
        """Integer value of the torsion part of ``u`` (which must be a constant)."""
        part = UnitElement(tuple(e if o else 0 for e, o in zip(u.exps, self.unit_orders)))
        v = self.unit_value(part)
        if not v.is_constant():
            raise ValueError("torsion unit generators must evaluate to constants")
        return v.constant_value()

    # additive relations ----------------------------------------------------
    def additive_relations(self, elems: Sequence[TElem]) -> list[list[tuple[TElem, int]]]:
        """ℤ-linear relations ``sum a_i t_i = 0`` among ``elems`` as lists of ``(t_i, a_i)``.

        Elements sharing free exponents and generator differ by a torsion scalar;
        each is tied to the group's first element, and in characteristic ``p``
        the first element has order ``p``.
        """
        groups: dict[tuple, list[TElem]] = {}
        for t in elems:
            free = tuple(e if o is None else 0 for e, o in zip(t.unit.exps, self.unit_orders))
            groups.setdefault((free, t.gen), []).append(t)
        out = []
        for key in sorted(groups):
            grp = groups[key]
            rep = grp[0]
            c0 = self.torsion_scalar(rep.unit)
            for t in grp[1:]:
                ct = self.torsion_scalar(t.unit)
                if self.char:
                    k = ct * pow(c0, -1, self.char) % self.char
                else:
                    if c0 not in (1, -1):
                        raise ValueError("torsion units over ℤ must be ±1")
                    k = ct * c0
                out.append([(t, 1), (rep, -k)])
            if self.char:
                out.append([(rep, self.char)])
        return out

    # product expressions ---------------------------------------------------
    def table_entry(self, i: int, j: int, m: int, n: int) -> tuple[TableEntry, ...]:
        if len(self.additive_gens) == 1 and i == j == 0:
            return ((1, self.one().exps, 0),)
        for key, val in self.product_table:
            if key == (i, j, m, n):
                return val
        raise KeyError(f"ring {self.name} has no product table entry p(x{i}^{m}, x{j}^{n})")

    # predicates --------------------------------------------------------------
    def is_invertible_prime(self, q: int) -> bool:
        if self.char:
            return q % self.char != 0
        if self.invertible_primes == "all":
            return True
        return q in self.invertible_primes

    # serialisation -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "name": self.name,
            "unit_gens": list(self.unit_gens),
            "unit_orders": list(self.unit_orders),
            "unit_values": list(self.unit_values) if self.unit_values else None,
            "additive_gens": list(self.additive_gens),
            "additive_values": list(self.additive_values) if self.additive_values else None,
            "char": self.char,
            "coeff": self.coeff.to_json() if self.coeff else None,
            "invertible_primes": self.invertible_primes if self.invertible_primes == "all" else list(self.invertible_primes),
            "flags": {"parabolics_fg": self.parabolics_fg, "borel2_fp": self.borel2_fp, "levi_fp": self.levi_fp},
            "arithmetic": (
                {"char": self.arithmetic.char, "S_size": self.arithmetic.S_size} if self.arithmetic else None
            ),
            "product_table": [
                {"key": list(k), "terms": [[a, list(e), l] for a, e, l in v]} for k, v in self.product_table
            ],
            "additively_generated": self.additively_generated,
            "unit_free_rank": self.unit_free_rank,
            "unit_torsion": self.unit_torsion,
            "notes": list(self.notes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RingSpec":
        flags = data.get("flags", {})
        arith = data.get("arithmetic")
        inv = data.get("invertible_primes", [])
        return cls(
            name=data["name"],
            unit_gens=tuple(data["unit_gens"]),
            unit_orders=tuple(data["unit_orders"]),
            char=int(data.get("char", 0)),
            additive_gens=tuple(data.get("additive_gens", ["1"])),
            coeff=CoefficientRing.from_json(data["coeff"]) if data.get("coeff") else None,
            unit_values=tuple(data["unit_values"]) if data.get("unit_values") else None,
            additive_values=tuple(data["additive_values"]) if data.get("additive_values") else None,
            invertible_primes="all" if inv == "all" else tuple(inv),
            parabolics_fg=flags.get("parabolics_fg", "unknown"),
            borel2_fp=flags.get("borel2_fp", "unknown"),
            levi_fp=flags.get("levi_fp", "unknown"),
            arithmetic=Arithmetic(arith["char"], arith["S_size"]) if arith else None,
            product_table=tuple(
                (tuple(e["key"]), tuple((a, tuple(x), l) for a, x, l in e["terms"]))
                for e in data.get("product_table", [])
            ),
            additively_generated=data.get("additively_generated", True),
            notes=tuple(data.get("notes", ())),
        )


# --------------------------------------------------------------------------
# Presets
# --------------------------------------------------------------------------


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = {q for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))}
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError(f"no primitive root mod {p}")


def _check_prime(q: int) -> None:
    if q < 2 or any(q % d == 0 for d in range(2, int(q ** 0.5) + 1)):
        raise ValueError(f"q = {q} must be prime (prime powers are not modelled)")


def ring_Z() -> RingSpec:
    return RingSpec(
        name="Z",
        unit_gens=("-1",),
        unit_orders=(2,),
        coeff=CoefficientRing(0),
        parabolics_fg="yes",
        borel2_fp="yes",
        levi_fp="yes",
        arithmetic=Arithmetic(0, 1),
    )


def ring_Z_laurent() -> RingSpec:
    return RingSpec(
        name="Z_laurent",
        unit_gens=("-1", "t"),
        unit_orders=(2, None),
        coeff=CoefficientRing(0, ("t",)),
        parabolics_fg="yes",
        borel2_fp="no",
        levi_fp="unknown",
        notes=("rank-one Borel over Z[t,t^-1] is not finitely presented",),
    )


def ring_Fq_poly(q: int = 5) -> RingSpec:
    _check_prime(q)
    g = _primitive_root(q)
    return RingSpec(
        name=f"F{q}_poly",
        unit_gens=(str(g),),
        unit_orders=(q - 1,),
        char=q,
        additive_gens=("1", "t"),
        coeff=CoefficientRing(q, (), ("t",)),
        parabolics_fg="no",
        borel2_fp="no",
        additively_generated=False,
        notes=("parabolic subgroups over F_q[t] are not finitely generated",),
    )


def ring_Fq_laurent(q: int = 5) -> RingSpec:
    _check_prime(q)
    g = _primitive_root(q)
    return RingSpec(
        name=f"F{q}_laurent",
        unit_gens=(str(g), "t"),
        unit_orders=(q - 1, None),
        char=q,
        coeff=CoefficientRing(q, ("t",)),
        parabolics_fg="yes",
        borel2_fp="no",
        arithmetic=Arithmetic(q, 2),
        notes=("S-integers of F_q(t) with |S| = 2",),
    )


def ring_OS(char: int, S_size: int) -> RingSpec:
    """Abstract ring of S-integers known only through ``(char, |S|)``."""
    arith = Arithmetic(char, S_size)
    if char == 0:
        b2 = "yes"
        pfg = "yes"
    else:
        b2 = "yes" if S_size >= 3 else "no"
        pfg = "yes" if S_size > 1 else "unknown"
    return RingSpec(
        name=f"OS(char={char},S={S_size})",
        unit_gens=(),
        unit_orders=(),
        char=char,
        coeff=None,
        parabolics_fg=pfg,
        borel2_fp=b2,
        arithmetic=arith,
    )


PRESETS = ("Z", "Z_laurent", "Fq_poly", "Fq_laurent", "OS")


def preset(name: str, q: int = 5, char: int | None = None, S: int | None = None) -> RingSpec:
    """Look up a preset by name; ``F7_laurent``-style names fix ``q`` inline."""
    import re

    m = re.fullmatch(r"F(\d+)_(poly|laurent)", name)
    if m:
        q = int(m.group(1))
        name = f"Fq_{m.group(2)}"
    if name == "Z":
        return ring_Z()
    if name == "Z_laurent":
        return ring_Z_laurent()
    if name == "Fq_poly":
        return ring_Fq_poly(q)
    if name == "Fq_laurent":
        return ring_Fq_laurent(q)
    if name == "OS":
        if char is None or S is None:
            raise ValueError("the OS preset needs both a characteristic and |S|")
        return ring_OS(char, S)
    raise ValueError(f"unknown ring preset {name!r}; choose from {PRESETS} or a JSON file")


def load_ring(ref: str, **kw) -> RingSpec:
    path = Path(ref)
    if path.suffix == ".json" and path.exists():
        return RingSpec.from_json(json.loads(path.read_text()))
    return preset(ref, **kw)


# --------------------------------------------------------------------------
# Unit decomposition and product expressions
# --------------------------------------------------------------------------


def unit_decompose(ring: RingSpec, v: UnitElement, c: int) -> tuple[UnitElement, int, UnitElement]:
    """Write ``v = w^(2k) * u`` with ``u`` in ``A^[c]``.

    Free exponents split by parity; torsion exponents stay in ``u`` whenever
    they fit the box and are otherwise split the same way.
    """
    if c < 1:
        raise ValueError("the box bound must be at least 1")
    ks: list[int] = []
    us: list[int] = []
    for e, o in zip(v.exps, ring.unit_orders):
        if o is not None:
            rep = ring.box_rep(e, o, c)
            if rep is not None:
                ks.append(0)
                us.append(rep)
                continue
            e = ring.box_rep(e, o, o)  # symmetric representative
            if e > o // 2:
                e -= o
        k, r = divmod(e, 2)
        ks.append(k)
        us.append(r)
    u = ring.unit(us)
    nz = [i for i, k in enumerate(ks) if k]
    if not nz:
        return ring.one(), 0, u
    if len(nz) == 1:
        i = nz[0]
        return ring.gen_unit(i), ks[i], u
    return ring.unit(ks), 1, u


def unit_recombine(ring: RingSpec, w: UnitElement, k: int, u: UnitElement) -> UnitElement:
    return ring.umul(ring.upow(w, 2 * k), u)


FormalRingElement = list  # list[tuple[int, UnitElement, int]] as (coefficient, unit, generator)


def as_formal(x: TElem | FormalRingElement | Sequence) -> list[tuple[int, UnitElement, int]]:
    if isinstance(x, TElem):
        return [(1, x.unit, x.gen)]
    out = []
    for item in x:
        if isinstance(item, TElem):
            out.append((1, item.unit, item.gen))
        elif isinstance(item, FormalTerm):
            raise TypeError("recombine FormalTerm values before passing them as arguments")
        else:
            a, u, g = item
            out.append((a, u, g))
    return out


def product_expr(
    ring: RingSpec, r, s, m: int, n: int, c: int
) -> list[FormalTerm]:
    """The fixed expression ``p(r^m, s^n)`` as terms ``a * w^(2k) * u * x``.

    ``r`` and ``s`` are :class:`TElem` values or lists of ``(a, unit, gen)``;
    a sum may only be raised to the first power (additivity).
    """
    if m < 1 or n < 1:
        raise ValueError("exponents must be positive")
    rt, st = as_formal(r), as_formal(s)
    if len(rt) > 1 and m != 1 or len(st) > 1 and n != 1:
        raise ValueError("powers of sums are not expanded; pass single terms")
    out: list[FormalTerm] = []
    for a1, u1, i in rt:
        for a2, u2, j in st:
            for b, e, l in ring.table_entry(i, j, m, n):
                unit = ring.umul(ring.umul(ring.upow(u1, m), ring.upow(u2, n)), ring.unit(e))
                coef = a1 ** m * a2 ** n * b
                if coef == 0:
                    continue
                w, k, u = unit_decompose(ring, unit, c)
                out.append(FormalTerm(coef, w, k, u, l))
    return out


def formal_value(ring: RingSpec, terms: Iterable[FormalTerm]) -> LPoly:
    cr = ring.require_coeff()
    total = cr.zero()
    for t in terms:
        unit = unit_recombine(ring, t.w, t.k, t.u)
        total = total + ring.unit_value(unit) * ring.gen_value(t.gen) * t.a
    return total


# --------------------------------------------------------------------------
# Toral pairs and constants
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ToralPair:
    """A one-parameter torus ``h(u) = prod h_root(u)^exp`` fixing ``X_a`` and scaling ``X_b`` by ``u^n``."""

    a: Root
    b: Root
    kind: Literal["orthogonal", "bystander", "combination"]
    n: int
    factors: tuple[tuple[Root, int], ...]
    p: int | None = None
    q: int | None = None

    def weight_on(self, rs: RootSystem, g: Root) -> int:
        return sum(e * rs.cartan_int(g, r) for r, e in self.factors)

    def to_json(self) -> dict:
        return {
            "a": self.a.name(),
            "b": self.b.name(),
            "kind": self.kind,
            "n": self.n,
            "factors": [[r.name(), e] for r, e in self.factors],
            "p": self.p,
            "q": self.q,
        }


PQ_BOUND = 12


def toral_candidates(rs: RootSystem, a: Root, b: Root, bound: int = PQ_BOUND) -> list[ToralPair]:
    if a == b or a == -b:
        raise ValueError("toral pairs need two distinct, non-opposite roots")
    out: list[ToralPair] = []
    ab = rs.cartan_int(a, b)
    ba = rs.cartan_int(b, a)
    if ab == 0:
        out.append(ToralPair(a, b, "orthogonal", 2, ((b, 1),)))
    for g in rs.positive + rs.negative:
        if rs.cartan_int(a, g) == 0 and rs.cartan_int(b, g) != 0:
            out.append(ToralPair(a, b, "bystander", rs.cartan_int(b, g), ((g, 1),)))
    for p in range(-bound, bound + 1):
        for q in range(-bound, bound + 1):
            if p == 0 or q == 0 or 2 * p - q * ab != 0:
                continue
            n = p * ba - 2 * q
            if n:
                out.append(ToralPair(a, b, "combination", n, ((b, -q), (a, p)), p, q))
    return out


_KIND_RANK = {"orthogonal": 0, "bystander": 1, "combination": 2}


def toral_pair(rs: RootSystem, a: Root, b: Root) -> ToralPair:
    """The construction with the smallest ``|n|`` (ties: kind, then enumeration order).

    Bystanders are tried over positive roots before negative ones.
    """
    cands = toral_candidates(rs, a, b)
    best = min(enumerate(cands), key=lambda ic: (abs(ic[1].n), _KIND_RANK[ic[1].kind], ic[0]))[1]
    _check_toral(rs, best)
    return best


def _check_toral(rs: RootSystem, t: ToralPair) -> None:
    if t.weight_on(rs, t.a) != 0:
        raise AssertionError(f"toral pair {t} does not centralise X_a")
    if t.weight_on(rs, t.b) != t.n:
        raise AssertionError(f"toral pair {t} scales X_b by the wrong power")
    if t.kind == "combination":
        if 2 * t.p - t.q * rs.cartan_int(t.a, t.b) != 0:
            raise AssertionError("2p - q(a,b) != 0")
        if t.n != t.p * rs.cartan_int(t.b, t.a) - 2 * t.q:
            raise AssertionError("n != p(b,a) - 2q")


_TC_CACHE: dict[str, int] = {}


def toral_constant(rs: RootSystem) -> int:
    """Maximum over root pairs of the minimal ``|n|``; ``A1`` is fixed at 2."""
    key = str(rs.type)
    if key in _TC_CACHE:
        return _TC_CACHE[key]
    if rs.type.family == "A" and rs.rank == 1:
        val = 2
    else:
        val = 0
        for a in rs.roots:
            for b in rs.roots:
                if a != b and a != -b:
                    val = max(val, abs(toral_pair(rs, a, b).n))
    _TC_CACHE[key] = val
    return val


# --------------------------------------------------------------------------
# NVB / QG
# --------------------------------------------------------------------------


def _family(rs: RootSystem | RootSystemType) -> str:
    t = rs.type if isinstance(rs, RootSystem) else rs
    return t.family


def nvb(ring: RingSpec, rs: RootSystem | RootSystemType) -> bool:
    fam = _family(rs)
    if fam in "ADE":
        return True
    if fam in "BCF":
        return ring.is_invertible_prime(2)
    return ring.is_invertible_prime(2) and ring.is_invertible_prime(3)


def qg(ring: RingSpec, rs: RootSystem | RootSystemType) -> Tri:
    if ring.borel2_fp == "yes" or nvb(ring, rs):
        return "yes"
    return ring.borel2_fp
