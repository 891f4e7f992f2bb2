"""Finite-presentability decisions for parabolic subgroups, with reason trails.

Two decision procedures are exposed.  :func:`theorem_a` reduces the
question over a general ring to the extended Levi factor; :func:`theorem_b`
answers it for S-arithmetic rings from ``(char, |S|)`` and the Levi ranks.
Imported facts (Borel-Serre, Abels, Behr, Bux, Stallings, Nagao) are rules in
:data:`RULES`, each cited by name rather than re-proved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

from .parab import ParabolicSpec, blocks_to_I, levi_components, nonadj, retracts_onto_almost_borel
from .presgen import RefusalError, is_exceptional
from .ringspec import Arithmetic, RingSpec, qg
from .rootsys import RootSystemType

Verdict = Literal["finitely_presented", "not_finitely_presented", "equivalent_to_LE", "unknown"]
VERDICTS = ("finitely_presented", "not_finitely_presented", "equivalent_to_LE", "unknown")

EXIT_CODES = {"finitely_presented": 0, "not_finitely_presented": 1, "equivalent_to_LE": 2, "unknown": 2}

# rule tag -> (citation, statement)
RULES: dict[str, tuple[str, str]] = {
    "standing_fg": (
        "Nagao",
        "parabolic subgroups must be finitely generated; over rings like F_q[t] they are not",
    ),
    "retract_necessity": (
        "Stallings",
        "a retract of a finitely presented group is finitely presented, and the extended Levi factor is a retract",
    ),
    "exceptional_g2_long_root": (
        "open case",
        "G2 with I a single long root and a rank-one Borel not known to be finitely presented is not covered",
    ),
    "qg_equivalence": (
        "Levi reduction",
        "over a QG ring the parabolic is finitely presented exactly when its extended Levi factors are",
    ),
    "levi_equivalence_simply_laced": (
        "Levi reduction",
        "for a maximal parabolic of a simply-laced system the extended Levi factor is the Levi factor",
    ),
    "not_quite_good": (
        "QG hypothesis",
        "the ring is neither NVB for the root system nor has a finitely presented rank-one Borel",
    ),
    "char0_always_fp": ("Borel-Serre; Abels", "S-arithmetic parabolics in characteristic 0 are finitely presented"),
    "function_field_single_place": (
        "open case",
        "function fields with |S| = 1 are outside the hypothesis and remain open",
    ),
    "almost_borel_threshold": (
        "Bux",
        "a parabolic retracting onto an almost Borel group is finitely presented iff |S| >= 3",
    ),
    "levi_rank_threshold": (
        "Behr",
        "otherwise the Levi factor decides: finitely presented iff d = min_i |S| rk(Phi_i) >= 3",
    ),
    "nvb_missing": ("NVB hypothesis", "the rank criterion needs the field to be NVB for the root system"),
    "supplied_levi_fact": ("K-theory input", "finite presentability of the Levi factor is supplied as a known fact"),
    "almost_borel_retract": (
        "Stallings",
        "the extended Levi factor retracts onto the rank-one Borel, which is not finitely presented",
    ),
}


@dataclass(frozen=True)
class Reason:
    rule: str
    citation: str
    text: str

    def to_json(self) -> dict:
        return {"rule": self.rule, "citation": self.citation, "text": self.text}


def reason(rule: str, extra: str = "") -> Reason:
    cite, text = RULES[rule]
    return Reason(rule, cite, f"{text}{'; ' + extra if extra else ''}")


@dataclass
class FPStatus:
    verdict: Verdict
    reasons: list[Reason] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == "unknown" and not self.reasons:
            raise ValueError("an unknown verdict must name its blocking condition")

    @property
    def rules(self) -> list[str]:
        return [r.rule for r in self.reasons]

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reasons": [r.to_json() for r in self.reasons], **self.data}


_TRI = ("yes", "no", "unknown")


def theorem_a(spec: ParabolicSpec, ring: RingSpec, le_status: str) -> FPStatus:
    """Reduce finite presentability of ``P_I(R)`` to that of the extended Levi factor.

    Precedence: the standing finite-generation assumption, then retract
    necessity (``le_status = no``), then the excluded G2 case, then QG.
    """
    if le_status not in _TRI:
        raise ValueError(f"le_status must be one of {_TRI}")
    if ring.parabolics_fg != "yes":
        raise RefusalError(
            f"{RULES['standing_fg'][1]} (parabolics_fg = {ring.parabolics_fg} for {ring.name}) [Nagao]"
        )
    rs = spec.rs
    if le_status == "no":
        return FPStatus("not_finitely_presented", [reason("retract_necessity")])
    if is_exceptional(spec) and ring.borel2_fp != "yes":
        return FPStatus("unknown", [reason("exceptional_g2_long_root", f"borel2_fp = {ring.borel2_fp}")])
    q = qg(ring, rs)
    if q != "yes":
        return FPStatus("unknown", [reason("not_quite_good", f"qg = {q}")])
    reasons = [reason("qg_equivalence")]
    if rs.simply_laced and len(spec.I) == rs.rank - 1:
        reasons.append(reason("levi_equivalence_simply_laced"))
    verdict: Verdict = "finitely_presented" if le_status == "yes" else "equivalent_to_LE"
    return FPStatus(verdict, reasons)


def default_nvb(rstype: RootSystemType, char: int) -> bool:
    """A field of characteristic ``char`` is NVB unless 2 (B, C, F4, G2) or 3 (G2) vanishes in it."""
    if rstype.family in "BCF":
        return char != 2
    if rstype.family == "G":
        return char not in (2, 3)
    return True


def theorem_b(
    spec: ParabolicSpec,
    arithmetic: Arithmetic,
    levi_ranks: Sequence[int] | None = None,
    nvb_flag: bool | None = None,
) -> FPStatus:
    """Decide finite presentability of S-arithmetic subgroups of ``P_I``.

    ``levi_ranks`` defaults to the ranks of the connected components of ``I``.
    """
    if levi_ranks is None:
        levi_ranks = [len(c) for c in levi_components(spec)]
    if any(r < 1 for r in levi_ranks):
        raise ValueError("Levi component ranks must be positive")
    char, S = arithmetic.char, arithmetic.S_size
    data = {"char": char, "S_size": S}
    if char == 0:
        return FPStatus("finitely_presented", [reason("char0_always_fp")], data)
    if S == 1:
        cite, text = RULES["function_field_single_place"]
        raise RefusalError(f"{text} [{cite}]")
    if retracts_onto_almost_borel(spec):
        ok = S >= 3
        data["branch"] = "almost_borel"
        return FPStatus(
            "finitely_presented" if ok else "not_finitely_presented",
            [reason("almost_borel_threshold", f"|S| = {S}")],
            data,
        )
    if nvb_flag is None:
        nvb_flag = default_nvb(spec.rs.type, char)
    data["branch"] = "levi_rank"
    if not nvb_flag:
        return FPStatus("unknown", [reason("nvb_missing", f"char = {char}")], data)
    d = min(S * r for r in levi_ranks)
    data["d"] = d
    return FPStatus(
        "finitely_presented" if d >= 3 else "not_finitely_presented",
        [reason("levi_rank_threshold", f"d = {d}")],
        data,
    )


def le_status_from_ring(spec: ParabolicSpec, ring: RingSpec) -> tuple[str, list[Reason]]:
    """What the ring flags say about the extended Levi factor."""
    if retracts_onto_almost_borel(spec) and ring.borel2_fp == "no":
        return "no", [reason("almost_borel_retract")]
    if not nonadj(spec) and ring.levi_fp != "unknown":
        return ring.levi_fp, [reason("supplied_levi_fact", f"levi_fp = {ring.levi_fp}")]
    return "unknown", []


def pipeline(spec: ParabolicSpec, ring: RingSpec, le_status: str | None = None) -> FPStatus:
    """The combined decision used by the command line.

    S-arithmetic rings go through :func:`theorem_b`; otherwise the Levi status
    (given or derived from ring flags) is fed to :func:`theorem_a`.
    """
    if le_status is None and ring.arithmetic is not None:
        return theorem_b(spec, ring.arithmetic)
    pre: list[Reason] = []
    if le_status is None:
        le_status, pre = le_status_from_ring(spec, ring)
    st = theorem_a(spec, ring, le_status)
    st.reasons = pre + st.reasons
    return st


EXAMPLE_BLOCKS = {"P1": (1, 5, 1, 5), "P2": (5, 1, 1, 5)}


def example_1_2(ring: RingSpec) -> tuple[FPStatus, FPStatus]:
    """The two block-parabolics of ``SL_12``.

    Over ``Z[t, t⁻¹]`` the Levi factor of ``P1`` is taken as finitely
    presented (a supplied fact); ``P2`` fails through its rank-one Borel
    retract.  Over a characteristic-0 ring of S-integers both are decided by
    :func:`theorem_b`.
    """
    p1 = blocks_to_I("A11", EXAMPLE_BLOCKS["P1"])
    p2 = blocks_to_I("A11", EXAMPLE_BLOCKS["P2"])
    if ring.arithmetic is not None and ring.arithmetic.char == 0:
        return theorem_b(p1, ring.arithmetic), theorem_b(p2, ring.arithmetic)
    if ring.name != "Z_laurent":
        raise ValueError("this example is stated over Z[t,t^-1] (or a characteristic-0 ring of S-integers)")
    if nonadj(p1):
        raise AssertionError("P1 should have every simple root adjacent to I")
    s1 = theorem_a(p1, ring, "yes")
    s1.reasons.insert(0, reason("supplied_levi_fact", "Levi factor of P1 over Z[t,t^-1]"))
    le2, pre = le_status_from_ring(p2, ring)
    s2 = theorem_a(p2, ring, le2)
    s2.reasons = pre + s2.reasons
    for s, name in ((s1, "P1"), (s2, "P2")):
        s.data["blocks"] = list(EXAMPLE_BLOCKS[name])
    s1.data["I"] = sorted(i + 1 for i in p1.I)
    s2.data["I"] = sorted(i + 1 for i in p2.I)
    return s1, s2

