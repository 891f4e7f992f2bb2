"""Exact oracles: evaluate words in matrix models and check presentations, retracts and filtrations."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .chevmodel import AdjointModel, ModelMatrix, SLnModel, chevalley_basis, peel
from .laurent import CoefficientRing, LPoly
from .parab import ParabolicSpec, alvl, profile
from .presgen import GenSymbol, Presentation, Word
from .ringspec import RingSpec, TElem
from .rootsys import Root, RootSystem


def make_model(kind: str, rs: RootSystem, coeff: CoefficientRing):
    if kind == "adjoint":
        return AdjointModel(chevalley_basis(rs), coeff)
    if kind == "sln":
        return SLnModel(rs, coeff)
    raise ValueError(f"unknown model {kind!r} (adjoint or sln)")


class Evaluator:
    """Maps generator letters to matrices, caching each ``(symbol, exponent)``.

    ``assignment`` may override the value of a T-element or of a unit
    generator (keyed by its index); unit values must be units.
    """

    def __init__(self, model, ring: RingSpec, assignment: Mapping | None = None):
        self.model = model
        self.ring = ring
        self.assignment = dict(assignment or {})
        self._cache: dict[tuple[GenSymbol, int], ModelMatrix] = {}

    def value(self, sym: GenSymbol) -> LPoly:
        if sym.arg in self.assignment:
            return self.model.ring.coerce(self.assignment[sym.arg])
        if sym.kind == "h":
            return self.ring.unit_gen_value(sym.arg)
        return self.ring.t_value(sym.arg)

    def letter(self, sym: GenSymbol, e: int) -> ModelMatrix:
        key = (sym, e)
        m = self._cache.get(key)
        if m is None:
            v = self.value(sym)
            if sym.kind == "h":
                if not self.model.ring.is_unit(v):
                    raise ValueError(f"h-argument {v} of {sym} is not a unit")
                m = self.model.h(sym.root, v ** e)
            else:
                m = self.model.x(sym.root, v * e)
            self._cache[key] = m
        return m

    def __call__(self, w: Word) -> ModelMatrix:
        out = self.model.identity()
        for sym, e in w.letters:
            out = out @ self.letter(sym, e)
        return out


def eval_word(w: Word, model, ring: RingSpec, assignment: Mapping | None = None) -> ModelMatrix:
    """The product matrix of ``w``; ``model`` is a model object or ``"adjoint"``/``"sln"``."""
    if isinstance(model, str):
        raise TypeError("pass a model object; build one with make_model")
    return Evaluator(model, ring, assignment)(w)


@dataclass
class Report:
    total: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.passed == self.total and not self.failures

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "passed": self.passed,
            "ok": self.ok,
            "failures": self.failures,
            **self.details,
        }


def verify_presentation(
    p: Presentation,
    model: str | object = "adjoint",
    assignment: Mapping | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> Report:
    """Evaluate relators and record each one that is not the identity.

    All relators are checked unless ``sample`` caps the number, in which
    case a seeded random subset is used.
    """
    if isinstance(model, str):
        model = make_model(model, p.rs, p.ring.require_coeff())
    ev = Evaluator(model, p.ring, assignment)
    idx = list(range(len(p.relators)))
    if sample is not None and sample < len(idx):
        idx = sorted(random.Random(seed).sample(idx, sample))
    rep = Report(details={"model": model.kind, "seed": seed, "sampled": sample is not None})
    for i in idx:
        rep.total += 1
        if ev(p.relators[i]).is_identity():
            rep.passed += 1
        else:
            rep.failures.append({"index": i, "family": p.tags[i], "level": p.levels[i]})
    return rep


# --------------------------------------------------------------------------
# Retract and filtration
# --------------------------------------------------------------------------


def _symbolic_model(rs: RootSystem, ring: RingSpec) -> tuple[AdjointModel, CoefficientRing]:
    base = ring.require_coeff()
    coeff = base.extend(laurent_vars=("u",), poly_vars=("r", "s"))
    return AdjointModel(chevalley_basis(rs), coeff), coeff


def in_product(model: AdjointModel, g: ModelMatrix, roots: Sequence[Root]) -> tuple[bool, dict[Root, LPoly]]:
    """Whether ``g`` factors as an ordered product of root elements over ``roots``."""
    params, rest = peel(model, g, roots)
    return rest.is_identity(), params


def _le_generators(prof) -> list[Root]:
    pos_le = [r for r in prof.le_roots if r.is_positive]
    return sorted(set(prof.levi_roots) | set(pos_le))


def verify_retract(
    spec: ParabolicSpec,
    ring: RingSpec,
    samples: int = 20,
    seed: int = 0,
    n: int | None = None,
) -> Report:
    """Check the split ``P = K ⋊ LE`` in the adjoint model.

    Part (a) is symbolic: each kernel root element ``x_γ(s)`` conjugated by
    every extended-Levi root element ``x_α(r)`` and torus element ``h_β(u)``
    must factor over the kernel roots.  Part (b) samples words in the
    generators and checks that ``w · π(w)⁻¹`` lies in the kernel, where ``π``
    deletes kernel letters.
    """
    if spec.is_borel and n is None:
        raise ValueError("the Borel variant needs the index n of the kept simple root")
    rs = spec.rs
    prof = profile(spec, n if spec.is_borel else None)
    kernel = prof.kernel_order()
    le = _le_generators(prof)
    model, coeff = _symbolic_model(rs, ring)
    r, s, u = coeff.var("r"), coeff.var("s"), coeff.var("u")
    rep = Report(details={"spec": spec.label(), "kernel": [g.name() for g in kernel], "le": [a.name() for a in le]})

    def check(label: str, g: ModelMatrix) -> None:
        rep.total += 1
        ok, _ = in_product(model, g, kernel)
        if ok:
            rep.passed += 1
        else:
            rep.failures.append({"check": label})

    for g in kernel:
        xg = model.x(g, s)
        for a in le:
            check(f"x_{a.name()}(r) x_{g.name()}(s) x_{a.name()}(-r)", model.x(a, r) @ xg @ model.x(a, -r))
        for b in rs.simples:
            check(f"h_{b.name()}(u) x_{g.name()}(s) h_{b.name()}(u)^-1", model.h(b, u) @ xg @ model.h(b, u.inverse()))

    # (b) sampled words; the inverse of pi(w) is accumulated letter by letter
    rng = random.Random(seed)
    values = [ring.t_value(t) for t in ring.t_tilde(1)]
    units = [ring.unit_gen_value(i) for i in range(ring.rank_A)]
    kset = set(kernel)
    for k in range(samples):
        w, pw_inv = model.identity(), model.identity()
        for _ in range(rng.randint(2, 6)):
            if rng.random() < 0.2 and units:
                b = rng.choice(rs.simples)
                v = rng.choice(units) ** rng.choice((1, -1))
                w = w @ model.h(b, v)
                pw_inv = model.h(b, v.inverse()) @ pw_inv
            else:
                root = rng.choice(kernel + le)
                f = rng.choice(values) * rng.choice((1, -1, 2))
                w = w @ model.x(root, f)
                if root not in kset:
                    pw_inv = model.x(root, -f) @ pw_inv
        check(f"sample {k}: w * pi(w)^-1", w @ pw_inv)
    return rep


def verify_filtration(spec: ParabolicSpec, ring: RingSpec) -> Report:
    """Check that commutators of kernel generators at levels ``j1, j2`` land at level ``≥ j1 + j2``."""
    if spec.is_borel:
        raise ValueError("the adjacency filtration needs I ≠ ∅")
    rs = spec.rs
    prof = profile(spec)
    kernel = prof.kernel_order()
    model, coeff = _symbolic_model(rs, ring)
    r, s = coeff.var("r"), coeff.var("s")
    lv = {g: alvl(spec, g) for g in kernel}
    rep = Report(details={"spec": spec.label(), "levels": {g.name(): lv[g] for g in kernel}})
    for g in kernel:
        for e in kernel:
            rep.total += 1
            c = model.x(g, r) @ model.x(e, s) @ model.x(g, -r) @ model.x(e, -s)
            ok, params = in_product(model, c, kernel)
            low = [d for d in params if lv[d] < lv[g] + lv[e]]
            if ok and not low:
                rep.passed += 1
            else:
                rep.failures.append(
                    {"pair": [g.name(), e.name()], "factored": ok, "below_level": [d.name() for d in low]}
                )
    return rep
