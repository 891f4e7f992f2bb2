"""Generator/relator data for unipotent radicals, kernels, Borel and parabolic subgroups.

Symbols come in three kinds.  ``x`` is a root element ``x_γ(t)`` (schematic
presentations and extended-Levi generators), ``xt`` is a tilde generator
``x̃_γ(t)`` with ``t`` in the finite set ``T̃ = A^[c]·T0``, and ``h`` is a
torus generator ``h_α(v)`` with ``α`` simple and ``v`` a generator of ``A``.
Torus elements ``h_δ(u)`` for other roots or units are spelled out as words
in the simple ones using coroot coordinates.

Every relator carries one family tag from :data:`FAMILIES`.  Only soundness
of the relators is checked elsewhere (in :mod:`chevparab.verify`); nothing
here proves that a relator set is defining.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .chevmodel import CommutatorTerm, structure_constants
from .parab import ParabolicSpec, adj, alvl, profile
from .ringspec import (
    RingSpec,
    TElem,
    UnitElement,
    nvb,
    toral_constant,
    unit_decompose,
)
from .rootsys import Root, RootSystem

FAMILIES = (
    "unipotent_commutator",
    "additive",
    "torus",
    "rank_one_block",
    "torus_conjugation",
    "levi_kernel_commutator",
    "kernel_commutator",
    "structure_constant_power",
    "structure_constant_torus",
    "levi_block_stub",
)

SCHEMA_VERSION = 1

_KIND_ORDER = {"h": 0, "x": 1, "xt": 2}


class RefusalError(ValueError):
    """The input lies outside what a builder (or decision rule) covers."""


@dataclass(frozen=True)
class GenSymbol:
    kind: str
    root: Root
    arg: Union[TElem, int]

    def __post_init__(self):
        if self.kind not in _KIND_ORDER:
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if (self.kind == "h") != isinstance(self.arg, int):
            raise TypeError("h symbols take a unit-generator index, x/xt symbols a T-element")

    def sort_key(self) -> tuple:
        a = (self.arg,) if isinstance(self.arg, int) else (self.arg.gen, self.arg.unit.exps)
        return (_KIND_ORDER[self.kind], self.root.sort_key(), a)

    def __lt__(self, other: "GenSymbol") -> bool:
        return self.sort_key() < other.sort_key()

    def label(self, ring: RingSpec) -> str:
        if self.kind == "h":
            return f"h[{self.root.name()}]({ring.unit_gens[self.arg]})"
        return f"{self.kind}[{self.root.name()}]({telem_label(ring, self.arg)})"

    def to_json(self) -> dict:
        out = {"kind": self.kind, "root": list(self.root.coeffs)}
        if isinstance(self.arg, int):
            out["unit_gen"] = self.arg
        else:
            out["unit"] = list(self.arg.unit.exps)
            out["gen"] = self.arg.gen
        return out

    @classmethod
    def from_json(cls, d: dict) -> "GenSymbol":
        root = Root(tuple(d["root"]))
        if d["kind"] == "h":
            return cls("h", root, int(d["unit_gen"]))
        return cls(d["kind"], root, TElem(UnitElement(tuple(d["unit"])), int(d["gen"])))


def unit_label(ring: RingSpec, u: UnitElement) -> str:
    parts = []
    for name, e in zip(ring.unit_gens, u.exps):
        if e == 0:
            continue
        base = f"({name})" if name.startswith("-") else name
        parts.append(base if e == 1 else f"{base}^{e}")
    return "*".join(parts) or "1"


def telem_label(ring: RingSpec, t: TElem) -> str:
    u = unit_label(ring, t.unit)
    if t.gen == 0:
        return u
    x = ring.additive_gens[t.gen]
    return x if u == "1" else f"{u}*{x}"


Letter = tuple[GenSymbol, int]


class Word:
    """A freely reduced word over generator symbols."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        out: list[list] = []
        for sym, e in letters:
            if e == 0:
                continue
            if out and out[-1][0] == sym:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([sym, e])
        self.letters: tuple[Letter, ...] = tuple((s, e) for s, e in out)

    @classmethod
    def gen(cls, sym: GenSymbol, e: int = 1) -> "Word":
        return cls([(sym, e)])

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        return Word(base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def symbols(self) -> set[GenSymbol]:
        return {s for s, _ in self.letters}

    def __repr__(self) -> str:
        return "Word(" + " ".join(f"{s.kind}[{s.root.name()}]^{e}" for s, e in self.letters) + ")"


def comm(a: Word, b: Word) -> Word:
    """``[a, b] = a b a⁻¹ b⁻¹``."""
    return a * b * a.inverse() * b.inverse()


def commutator_expand(w1: Word, w2: Word) -> Word:
    """Rewrite ``[w1, w2]`` once as ``a[b, w2]a⁻¹[a, w2]`` where ``a`` is the first letter of ``w1``.

    The first letter is split off with exponent ``±1``; an empty ``w1``
    gives ``[w1, w2]`` back unchanged.
    """
    if not w1:
        return comm(w1, w2)
    sym, e = w1.letters[0]
    step = 1 if e > 0 else -1
    a = Word.gen(sym, step)
    b = Word([(sym, e - step)] + list(w1.letters[1:]))
    return a * comm(b, w2) * a.inverse() * comm(a, w2)


@dataclass(frozen=True)
class Truncation:
    """Bounds for the schematic presentations: ``|T|`` and the free unit exponents."""

    max_T: int = 8
    max_exponent: int = 3

    @classmethod
    def parse(cls, text: str) -> "Truncation":
        """``"T=8,exp=3"`` style bounds."""
        vals = {}
        for part in filter(None, (p.strip() for p in text.split(","))):
            k, _, v = part.partition("=")
            vals[k.strip()] = int(v)
        return cls(vals.get("T", cls.max_T), vals.get("exp", cls.max_exponent))


@dataclass
class Presentation:
    rs: RootSystem
    ring: RingSpec
    generators: list[GenSymbol]
    relators: list[Word]
    tags: list[str]
    finite: bool
    levels: list[int | None] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.tags) != len(self.relators):
            raise ValueError("one family tag per relator")
        bad = set(self.tags) - set(FAMILIES)
        if bad:
            raise ValueError(f"unknown family tags {sorted(bad)}")
        if not self.levels:
            self.levels = [None] * len(self.relators)
        if self.finite:
            gens = set(self.generators)
            for w in self.relators:
                missing = w.symbols() - gens
                if missing:
                    raise ValueError(f"relator mentions unlisted generators {sorted(missing)[:3]}")

    @property
    def provenance(self) -> list[tuple[int, str]]:
        return list(enumerate(self.tags))

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for t in self.tags:
            out[t] = out.get(t, 0) + 1
        return out

    def by_family(self, tag: str) -> list[Word]:
        return [w for w, t in zip(self.relators, self.tags) if t == tag]

    def to_json(self) -> dict:
        index = {g: i for i, g in enumerate(self.generators)}
        return {
            "schema_version": SCHEMA_VERSION,
            "type": str(self.rs.type),
            "ring": self.ring.name,
            "finite": self.finite,
            "metadata": self.metadata,
            "generators": [dict(g.to_json(), label=g.label(self.ring)) for g in self.generators],
            "relators": [
                {
                    "family": t,
                    "level": lv,
                    "letters": [[index[s], e] for s, e in w.letters],
                }
                for w, t, lv in zip(self.relators, self.tags, self.levels)
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    def to_text(self) -> str:
        """Plain format: ``g<i> = label`` lines, then one relator per line as ``g1*g2^-1*...``."""
        index = {g: i for i, g in enumerate(self.generators)}
        lines = [f"# {self.rs.type} over {self.ring.name}; finite={str(self.finite).lower()}"]
        lines.append(f"generators {len(self.generators)}")
        for g, i in index.items():
            lines.append(f"g{i} = {g.label(self.ring)}")
        lines.append(f"relators {len(self.relators)}")
        for w, t in zip(self.relators, self.tags):
            body = "*".join(f"g{index[s]}" if e == 1 else f"g{index[s]}^{e}" for s, e in w.letters)
            lines.append(f"{body or '1'}  # {t}")
        return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# Builder plumbing
# --------------------------------------------------------------------------


class _Builder:
    def __init__(
        self,
        rs: RootSystem,
        ring: RingSpec,
        c: int | None,
        constants: Mapping[tuple[Root, Root], list[CommutatorTerm]] | None,
    ):
        self.rs = rs
        self.ring = ring
        self.c = c if c is not None else toral_constant(rs)
        self.C = constants if constants is not None else structure_constants(rs)
        self.gens: dict[GenSymbol, None] = {}
        self.relators: list[Word] = []
        self.tags: list[str] = []
        self.levels: list[int | None] = []

    # symbols ---------------------------------------------------------------
    def sym(self, kind: str, root: Root, t: TElem) -> Word:
        s = GenSymbol(kind, root, t)
        self.gens.setdefault(s)
        return Word.gen(s)

    def h_gen(self, i: int, a: int) -> Word:
        s = GenSymbol("h", self.rs.simples[i], a)
        self.gens.setdefault(s)
        return Word.gen(s)

    def h_word(self, root: Root, u: UnitElement | Sequence[int], k: int = 1) -> Word:
        """``h_root(u)^k`` as a word in the simple torus generators."""
        exps = u.exps if isinstance(u, UnitElement) else tuple(u)
        letters = []
        for j, cj in enumerate(self.rs.coroot_coeffs(root)):
            if not cj:
                continue
            for a, e in enumerate(exps):
                if e:
                    letters.append((self._hsym(j, a), cj * e * k))
        return Word(letters)

    def _hsym(self, j: int, a: int) -> GenSymbol:
        s = GenSymbol("h", self.rs.simples[j], a)
        self.gens.setdefault(s)
        return s

    def add(self, w: Word, tag: str, level: int | None = None) -> None:
        if not w:
            return
        self.relators.append(w)
        self.tags.append(tag)
        self.levels.append(level)

    # product expressions ----------------------------------------------------
    def product_terms(self, t1: TElem, t2: TElem, m: int, n: int) -> list[tuple[int, UnitElement, int]]:
        """``p(t1^m, t2^n)`` as ``(a, unit, generator)`` with the unit left whole."""
        ring = self.ring
        out = []
        for b, e, l in ring.table_entry(t1.gen, t2.gen, m, n):
            unit = ring.umul(ring.umul(ring.upow(t1.unit, m), ring.upow(t2.unit, n)), ring.unit(e))
            if b:
                out.append((b, unit, l))
        return out

    def zeta(self, delta: Root, C: int, terms, kind: str, boxed: bool) -> Word:
        """Right-hand factor for the root ``delta``.

        With ``boxed`` each unit is split as ``w^(2k) u`` and the factor becomes
        ``h_δ(w)^k x̃_δ(u x)^(aC) h_δ(w)^(-k)``; otherwise ``x_δ(unit x)^(aC)``.
        """
        out = Word()
        for a, unit, l in terms:
            if not boxed:
                out = out * (self.sym(kind, delta, TElem(unit, l)) ** (a * C))
                continue
            w, k, u = unit_decompose(self.ring, unit, self.c)
            hw = self.h_word(delta, w, k)
            out = out * hw * (self.sym(kind, delta, TElem(u, l)) ** (a * C)) * hw.inverse()
        return out

    def commutator_relator(
        self, g: Root, e: Root, t1: TElem, t2: TElem, kinds: tuple[str, str], rhs_kind: str, boxed: bool
    ) -> Word:
        lhs = comm(self.sym(kinds[0], g, t1), self.sym(kinds[1], e, t2))
        rhs = Word()
        for term in self.C.get((g, e), []):
            rhs = rhs * self.zeta(term.root, term.C, self.product_terms(t1, t2, term.m, term.n), rhs_kind, boxed)
        return lhs * rhs.inverse()

    # families -------------------------------------------------------------
    def commutator_family(
        self,
        left: Sequence[Root],
        right: Sequence[Root],
        t_left: Sequence[TElem],
        t_right: Sequence[TElem],
        kinds: tuple[str, str],
        rhs_kind: str,
        tag: str,
        boxed: bool,
        same_root: bool,
        level=None,
    ) -> None:
        """Commutator relators for root pairs ``(γ, η)``.

        When both root lists coincide, each unordered pair is emitted once
        (``γ < η``) and, if ``same_root``, ``γ = η`` with ``t1 < t2``.
        """
        symmetric = list(left) == list(right) and kinds[0] == kinds[1]
        for g in left:
            for e in right:
                if g == -e:
                    continue
                if symmetric and e < g:
                    continue
                if g == e and not (symmetric and same_root):
                    continue
                lv = level(g, e) if level else None
                for i, t1 in enumerate(t_left):
                    for j, t2 in enumerate(t_right):
                        if g == e and j <= i:
                            continue
                        self.add(self.commutator_relator(g, e, t1, t2, kinds, rhs_kind, boxed), tag, lv)

    def additive_family(self, roots: Sequence[Root], elems: Sequence[TElem], kind: str, tag: str, level=None) -> None:
        rels = self.ring.additive_relations(elems)
        for g in roots:
            for rel in rels:
                w = Word()
                for t, a in rel:
                    w = w * (self.sym(kind, g, t) ** a)
                self.add(w, tag, level(g) if level else None)

    def torus_family(self, tag: str = "torus") -> None:
        """Torsion and pairwise commutation of the simple torus generators."""
        ring, r = self.ring, self.rs.rank
        for i in range(r):
            for a, o in enumerate(ring.unit_orders):
                self.h_gen(i, a)
                if o is not None:
                    self.add(self.h_gen(i, a) ** o, tag)
        pairs = [(i, a) for i in range(r) for a in range(ring.rank_A)]
        for (i, a), (j, b) in itertools.combinations(pairs, 2):
            self.add(comm(self.h_gen(i, a), self.h_gen(j, b)), tag)

    def conj_exponent(self, u: UnitElement, a: int, e: int) -> tuple[int, UnitElement]:
        """``k`` and ``u'`` in ``A^[c]`` with ``v^e u = v^(2k) u'`` for the generator ``v = A[a]``."""
        ring = self.ring
        o = ring.unit_orders[a]
        total = u.exps[a] + e
        if o is None:
            k = total // 2 if total >= 0 else -((-total) // 2)
        else:
            k = 0
        for cand in sorted(range(-abs(total) - 2, abs(total) + 3), key=lambda q: (abs(q - k), abs(q))):
            exps = list(u.exps)
            exps[a] = total - 2 * cand
            up = ring.unit(exps)
            if ring.in_box(up, self.c):
                return cand, up
        raise AssertionError("no box representative for the conjugated unit")

    def torus_conjugation_family(
        self, roots: Sequence[Root], elems: Sequence[TElem], kind: str, tag: str, skip_own: bool
    ) -> None:
        """``h_α(v) x̃_γ(u x) h_α(v)⁻¹ = h_γ(v)^k x̃_γ(u' x) h_γ(v)^(-k)`` for simple ``α``.

        With ``skip_own`` the instances with ``α = ±γ`` are left to the rank-one blocks.
        """
        rs = self.rs
        for g in roots:
            for i, al in enumerate(rs.simples):
                if skip_own and al in (g, -g):
                    continue
                e = rs.cartan_int(g, al)
                for a in range(self.ring.rank_A):
                    ha = self.h_gen(i, a)
                    for t in elems:
                        k, up = self.conj_exponent(t.unit, a, e)
                        gen_exps = [0] * self.ring.rank_A
                        gen_exps[a] = 1
                        hk = self.h_word(g, gen_exps, k)
                        lhs = ha * self.sym(kind, g, t) * ha.inverse()
                        rhs = hk * self.sym(kind, g, TElem(up, t.gen)) * hk.inverse()
                        self.add(lhs * rhs.inverse(), tag)

    def rank_one_block(self, g: Root, elems: Sequence[TElem], tag: str = "rank_one_block") -> None:
        """The rank-one Borel template copied onto the root ``g``."""
        ring = self.ring
        box = set(elems)
        for t1, t2 in itertools.combinations(elems, 2):
            self.add(comm(self.sym("xt", g, t1), self.sym("xt", g, t2)), tag)
        self.additive_family([g], elems, "xt", tag)
        for a in range(ring.rank_A):
            v = [0] * ring.rank_A
            v[a] = 1
            hv = self.h_word(g, v)
            for t in elems:
                t2 = TElem(ring.umul(t.unit, ring.gen_unit(a, 2)), t.gen)
                if t2 in box:
                    self.add(hv * self.sym("xt", g, t) * hv.inverse() * self.sym("xt", g, t2).inverse(), tag)
        for a, o in enumerate(ring.unit_orders):
            if o is not None:
                v = [0] * ring.rank_A
                v[a] = o
                self.add(self.h_word(g, v), tag)
        for a, b in itertools.combinations(range(ring.rank_A), 2):
            va = [1 if j == a else 0 for j in range(ring.rank_A)]
            vb = [1 if j == b else 0 for j in range(ring.rank_A)]
            self.add(comm(self.h_word(g, va), self.h_word(g, vb)), tag)

    def levi_block_stub(self, le_roots: Sequence[Root], elems: Sequence[TElem]) -> None:
        """Placeholder for a presentation of the extended Levi factor.

        It holds the torus relators and the torus action on the Levi root
        generators, so that every generator the other families use is defined.
        """
        tag = "levi_block_stub"
        self.torus_family(tag)
        self.torus_conjugation_family(le_roots, elems, "x", tag, skip_own=False)

    def presentation(self, finite: bool, metadata: dict) -> Presentation:
        gens = sorted(self.gens)
        meta = dict(metadata)
        meta["c"] = self.c
        counts: dict[str, int] = {}
        for t in self.tags:
            counts[t] = counts.get(t, 0) + 1
        meta["counts"] = counts
        return Presentation(self.rs, self.ring, gens, self.relators, self.tags, finite, self.levels, meta)


def _spec_meta(spec: ParabolicSpec, ring: RingSpec, builder: str) -> dict:
    return {
        "builder": builder,
        "type": str(spec.rs.type),
        "I": sorted(i + 1 for i in spec.I),
        "ring": ring.name,
    }


# --------------------------------------------------------------------------
# Schematic presentations
# --------------------------------------------------------------------------


def _schematic(
    spec: ParabolicSpec,
    ring: RingSpec,
    roots: list[Root],
    truncation: Truncation,
    builder: str,
    level=None,
    constants=None,
) -> Presentation:
    b = _Builder(spec.rs, ring, truncation.max_exponent, constants)
    T = ring.t_truncated(truncation.max_T, truncation.max_exponent)
    for g in roots:
        for t in T:
            b.sym("x", g, t)
    lv2 = (lambda g, e: level(g) + level(e)) if level else None
    b.commutator_family(roots, roots, T, T, ("x", "x"), "x", "unipotent_commutator", False, True, lv2)
    b.additive_family(roots, T, "x", "additive", level)
    meta = _spec_meta(spec, ring, builder)
    meta["truncation"] = {"max_T": truncation.max_T, "max_exponent": truncation.max_exponent, "T_size": len(T)}
    meta["roots"] = [g.name() for g in roots]
    p = b.presentation(False, meta)
    return p


def present_unipotent(
    spec: ParabolicSpec, ring: RingSpec, truncation: Truncation = Truncation(), constants=None
) -> Presentation:
    """Truncated canonical presentation of the unipotent radical ``U_I``."""
    prof = profile(spec)
    roots = sorted(prof.unipotent_roots)
    return _schematic(spec, ring, roots, truncation, "unipotent", constants=constants)


def present_kernel(
    spec: ParabolicSpec, ring: RingSpec, truncation: Truncation = Truncation(), constants=None
) -> Presentation:
    """Truncated canonical presentation of the kernel ``K_I``, relators tagged by level."""
    if spec.is_borel:
        raise ValueError("the kernel presentation needs I ≠ ∅; use present_unipotent for the Borel")
    prof = profile(spec)
    roots = prof.kernel_order()
    return _schematic(spec, ring, roots, truncation, "kernel", lambda g: alvl(spec, g), constants)


# --------------------------------------------------------------------------
# Finite presentations
# --------------------------------------------------------------------------


def _nvb_box(rs: RootSystem, ring: RingSpec) -> int:
    """Smallest box containing the toral constant and the units ``±1, ±2, ±3`` the builder needs."""
    c = toral_constant(rs)
    for n in _nontrivial_constants(rs):
        for val in (n, -n):
            u = ring.integer_unit(val, c=max(ring.unit_torsion + [2]))
            if u is None:
                raise RefusalError(f"the structure constant {val} is not a unit of {ring.name}")
            need = max((abs(ring.box_rep(e, o, 1 << 30)) for e, o in zip(u.exps, ring.unit_orders)), default=0)
            c = max(c, need)
    return c


def _nontrivial_constants(rs: RootSystem) -> list[int]:
    vals = {t.C for terms in structure_constants(rs).values() for t in terms}
    return sorted(v for v in vals if v != 1)


def rank_one_template(ring: RingSpec, c: int = 2) -> Presentation:
    """The rank-one Borel relators on ``A1`` (torus relators plus the root block)."""
    from .rootsys import build_root_system

    rs = build_root_system("A1")
    b = _Builder(rs, ring, c, None)
    b.torus_family()
    b.rank_one_block(rs.simples[0], ring.t_tilde(c))
    return b.presentation(True, {"builder": "rank_one_template", "type": "A1", "ring": ring.name})


def _transport_block(b: _Builder, g: Root, template: Presentation) -> None:
    """Copy a rank-one presentation onto the root ``g`` (formal replacement of ``α0`` by ``g``)."""
    a0 = template.rs.simples[0]
    for w, tag in zip(template.relators, template.tags):
        out = Word()
        for s, e in w.letters:
            if s.kind == "h":
                if s.root != a0:
                    raise ValueError("per-root presentations must live on a single root")
                v = [0] * b.ring.rank_A
                v[s.arg] = 1
                out = out * b.h_word(g, v, e)
            else:
                out = out * (b.sym("xt", g, s.arg) ** e)
        b.add(out, "rank_one_block")


def present_borel_finite(
    rs: RootSystem,
    ring: RingSpec,
    per_root_pres: Mapping[Root, Presentation] | Presentation | None = None,
    c: int | None = None,
    constants=None,
) -> Presentation:
    """Finite presentation of the Borel subgroup built from per-root blocks.

    ``per_root_pres`` may be a single rank-one presentation (used for every
    positive root) or a map from positive roots to such presentations.
    """
    if per_root_pres is None and ring.borel2_fp != "yes":
        raise RefusalError(
            f"the rank-one Borel over {ring.name} is not known to be finitely presented "
            f"(borel2_fp = {ring.borel2_fp}); supply per-root presentations"
        )
    b = _Builder(rs, ring, c, constants)
    elems = ring.t_tilde(b.c)
    pos = list(rs.positive)
    b.torus_family()
    for g in pos:
        for t in elems:
            b.sym("xt", g, t)
        if per_root_pres is None:
            b.rank_one_block(g, elems)
        else:
            tpl = per_root_pres if isinstance(per_root_pres, Presentation) else per_root_pres[g]
            _transport_block(b, g, tpl)
    b.torus_conjugation_family(pos, elems, "xt", "torus_conjugation", skip_own=True)
    b.commutator_family(pos, pos, elems, elems, ("xt", "xt"), "xt", "kernel_commutator", True, False)
    meta = {"builder": "borel_finite", "type": str(rs.type), "I": [], "ring": ring.name, "T_tilde_size": len(elems)}
    return b.presentation(True, meta)


def _parabolic_common(spec: ParabolicSpec, ring: RingSpec, b: _Builder, same_root: bool, blocks: bool):
    prof = profile(spec)
    kernel = prof.kernel_order()
    le = sorted(prof.levi_roots | frozenset(r for r in prof.le_roots if r.is_positive))
    elems = ring.t_tilde(b.c)
    lvl = lambda g: alvl(spec, g)
    b.levi_block_stub(le, elems)
    for g in kernel:
        for t in elems:
            b.sym("xt", g, t)
        if blocks:
            b.rank_one_block(g, elems)
    b.torus_conjugation_family(kernel, elems, "xt", "torus_conjugation", skip_own=blocks)
    b.commutator_family(
        le, kernel, elems, elems, ("x", "xt"), "xt", "levi_kernel_commutator", True, False,
        lambda a, g: lvl(g),
    )
    b.commutator_family(
        kernel, kernel, elems, elems, ("xt", "xt"), "xt", "kernel_commutator", True, same_root,
        lambda g, e: lvl(g) + lvl(e),
    )
    return prof, kernel, le, elems


def present_parabolic_case1(spec: ParabolicSpec, ring: RingSpec, c: int | None = None, constants=None) -> Presentation:
    """Finite presentation when the rank-one Borel over the ring is finitely presented."""
    if spec.is_borel:
        raise ValueError("I must be non-empty; use present_borel_finite for the Borel")
    if ring.borel2_fp != "yes":
        raise RefusalError(f"this builder needs a finitely presented rank-one Borel (borel2_fp = {ring.borel2_fp})")
    b = _Builder(spec.rs, ring, c, constants)
    prof, kernel, le, elems = _parabolic_common(spec, ring, b, same_root=False, blocks=True)
    meta = _spec_meta(spec, ring, "parabolic_case1")
    meta.update(T_tilde_size=len(elems), kernel_roots=[g.name() for g in kernel], le_roots=[g.name() for g in le])
    return b.presentation(True, meta)


def is_exceptional(spec: ParabolicSpec) -> bool:
    """``G2`` with ``I`` a single long simple root."""
    rs = spec.rs
    return rs.type.family == "G" and len(spec.I) == 1 and rs.is_long(rs.simples[next(iter(spec.I))])


def present_parabolic_nvb(spec: ParabolicSpec, ring: RingSpec, c: int | None = None, constants=None) -> Presentation:
    """Finite presentation when the structure constants are units (the NVB branch)."""
    rs = spec.rs
    if spec.is_borel:
        raise ValueError("I must be non-empty; use present_borel_finite for the Borel")
    if is_exceptional(spec):
        raise RefusalError("G2 with I a long simple root is the excluded case (a long root in type G2)")
    if not nvb(ring, rs):
        raise RefusalError(f"{ring.name} is very bad for {rs.type}: some structure constant is not a unit")
    b = _Builder(rs, ring, c if c is not None else _nvb_box(rs, ring), constants)
    prof, kernel, le, elems = _parabolic_common(spec, ring, b, same_root=True, blocks=False)
    gens_T0 = range(len(ring.additive_gens))
    one = ring.one()
    for C in _nontrivial_constants(rs):
        uC = ring.integer_unit(C, c=max(ring.unit_torsion + [2]))
        uinv = ring.unit(tuple(-e for e in uC.exps))
        for d in kernel:
            for i in gens_T0:
                lhs = b.sym("xt", d, TElem(uinv, i)) ** C
                b.add(lhs * b.sym("xt", d, TElem(one, i)).inverse(), "structure_constant_power")
        for d in kernel:
            for al in rs.roots:
                if rs.cartan_int(d, al) != 1:
                    continue
                h = b.h_word(al, uC)
                for i in gens_T0:
                    w = h * b.sym("xt", d, TElem(uinv, i)) * h.inverse() * b.sym("xt", d, TElem(one, i)).inverse()
                    b.add(w, "structure_constant_torus")
    meta = _spec_meta(spec, ring, "parabolic_nvb")
    meta.update(T_tilde_size=len(elems), kernel_roots=[g.name() for g in kernel], le_roots=[g.name() for g in le])
    return b.presentation(True, meta)


def parse_presentation(text: str, rs: RootSystem, ring: RingSpec) -> Presentation:
    """Inverse of :meth:`Presentation.dumps`."""
    d = json.loads(text)
    gens = [GenSymbol.from_json(g) for g in d["generators"]]
    rels, tags, levels = [], [], []
    for r in d["relators"]:
        rels.append(Word((gens[i], e) for i, e in r["letters"]))
        tags.append(r["family"])
        levels.append(r["level"])
    return Presentation(rs, ring, gens, rels, tags, d["finite"], levels, d["metadata"])
