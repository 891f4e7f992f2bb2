"""Parabolic subsets ``I ⊆ Δ`` and the root sets they determine."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .rootsys import Root, RootSystem, build_root_system


@dataclass(frozen=True)
class ParabolicSpec:
    rs: RootSystem
    I: frozenset[int]  # zero-based indices into Δ

    def __post_init__(self):
        bad = [i for i in self.I if not 0 <= i < self.rs.rank]
        if bad:
            raise ValueError(f"simple root indices {sorted(i + 1 for i in bad)} outside Δ of {self.rs.type}")

    @classmethod
    def from_indices(cls, rs: RootSystem | str, indices: Iterable[int]) -> "ParabolicSpec":
        """Build from one-based simple root indices."""
        if isinstance(rs, str):
            rs = build_root_system(rs)
        return cls(rs, frozenset(i - 1 for i in indices))

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(self.rs.simples[i] for i in sorted(self.I))

    @property
    def is_borel(self) -> bool:
        return not self.I

    def label(self) -> str:
        inside = ",".join(str(i + 1) for i in sorted(self.I))
        return f"{self.rs.type}/I={{{inside}}}"

    def __hash__(self) -> int:
        return hash((str(self.rs.type), self.I))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParabolicSpec) and str(self.rs.type) == str(other.rs.type) and self.I == other.I


def blocks_to_I(rs: RootSystem | str, blocks: Sequence[int]) -> ParabolicSpec:
    """Block-diagonal shape ``(n_1, ..., n_k)`` of ``SL_n`` to the parabolic subset.

    The simple roots sitting on block boundaries (cumulative sums) are removed.
    """
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if rs.type.family != "A":
        raise ValueError("block shapes describe parabolics of type A only")
    if any(b <= 0 for b in blocks) or sum(blocks) != rs.rank + 1:
        raise ValueError(f"block sizes {tuple(blocks)} must be positive and sum to {rs.rank + 1}")
    cuts, acc = set(), 0
    for b in blocks[:-1]:
        acc += b
        cuts.add(acc - 1)  # α_acc, zero-based
    return ParabolicSpec(rs, frozenset(i for i in range(rs.rank) if i not in cuts))


def adj(spec: ParabolicSpec) -> frozenset[int]:
    rs = spec.rs
    return frozenset(
        j for j in range(rs.rank) if j not in spec.I and any(rs.adjacent(i, j) for i in spec.I)
    )


def nonadj(spec: ParabolicSpec) -> frozenset[int]:
    return frozenset(range(spec.rs.rank)) - spec.I - adj(spec)


def ext(spec: ParabolicSpec) -> frozenset[int]:
    return spec.I | nonadj(spec)


def components(rs: RootSystem, idx: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of a set of simple roots in the Dynkin diagram."""
    left = set(idx)
    out = []
    while left:
        start = min(left)
        comp = {start}
        stack = [start]
        while stack:
            i = stack.pop()
            for j in list(left):
                if j not in comp and rs.adjacent(i, j):
                    comp.add(j)
                    stack.append(j)
        left -= comp
        out.append(frozenset(comp))
    return sorted(out, key=min)


def levi_components(spec: ParabolicSpec) -> list[frozenset[int]]:
    return components(spec.rs, spec.I)


def levi_roots(spec: ParabolicSpec) -> frozenset[Root]:
    """``Φ_I``."""
    return frozenset(spec.rs.subsystem(spec.simple_roots))


def _subsystem_of(rs: RootSystem, idx: Iterable[int]) -> frozenset[Root]:
    return frozenset(rs.subsystem([rs.simples[i] for i in idx]))


def alvl(spec: ParabolicSpec, g: Root) -> int:
    """Sum of the coefficients of ``g`` on ``Adj(I)``."""
    return sum(g.coeffs[j] for j in adj(spec))


def adj_decompose(spec: ParabolicSpec, a: Root) -> tuple[Root, Root]:
    """Write a simple ``a ∈ Adj(I)`` as ``-δ + (δ + a)`` with ``δ`` the first adjacent root of ``I``."""
    rs = spec.rs
    k = rs.simple_index(a)
    if k not in adj(spec):
        raise ValueError(f"{a} is not in Adj(I)")
    i = min(i for i in spec.I if rs.adjacent(i, k))
    d = rs.simples[i]
    return -d, d + a


def retracts_onto_almost_borel(spec: ParabolicSpec) -> bool:
    return spec.is_borel or bool(nonadj(spec))


@dataclass(frozen=True)
class ParabolicProfile:
    spec: ParabolicSpec
    adj: frozenset[int]
    nonadj: frozenset[int]
    ext: frozenset[int]
    levi_components: tuple[frozenset[int], ...]
    levi_roots: frozenset[Root]
    le_roots: frozenset[Root]
    kernel_roots: frozenset[Root]
    unipotent_roots: frozenset[Root]
    borel_index: int | None = None

    def ordered(self, roots: Iterable[Root]) -> list[Root]:
        return sorted(roots)

    def kernel_order(self) -> list[Root]:
        """Kernel roots by ``alvl``, then root order (products land strictly later)."""
        if self.spec.is_borel:
            return sorted(self.kernel_roots)
        return sorted(self.kernel_roots, key=lambda g: (alvl(self.spec, g), g.sort_key()))

    def to_json(self) -> dict:
        names = lambda rs_: [r.name() for r in sorted(rs_)]
        one = lambda idx: sorted(i + 1 for i in idx)
        out = {
            "type": str(self.spec.rs.type),
            "I": one(self.spec.I),
            "adj": one(self.adj),
            "nonadj": one(self.nonadj),
            "ext": one(self.ext),
            "levi_components": [one(c) for c in self.levi_components],
            "levi_roots": names(self.levi_roots),
            "le_roots": names(self.le_roots),
            "kernel_roots": names(self.kernel_roots),
            "unipotent_roots": names(self.unipotent_roots),
            "retracts_onto_almost_borel": retracts_onto_almost_borel(self.spec),
        }
        if self.borel_index is not None:
            out["borel_index"] = self.borel_index + 1
        if not self.spec.is_borel:
            out["alvl"] = {g.name(): alvl(self.spec, g) for g in sorted(self.kernel_roots)}
        return out


def profile(spec: ParabolicSpec, n: int | None = None) -> ParabolicProfile:
    """Root-set profile.  For the Borel case ``n`` (one-based) picks the simple root kept in the LE part."""
    rs = spec.rs
    pos = frozenset(rs.positive)
    phi_i = levi_roots(spec)
    a, na, e = adj(spec), nonadj(spec), ext(spec)
    bidx = None
    if spec.is_borel:
        if n is None:
            le = frozenset()
            kernel = pos
        else:
            if not 1 <= n <= rs.rank:
                raise ValueError(f"simple root index {n} outside Δ")
            bidx = n - 1
            le = frozenset({rs.simples[bidx]})
            kernel = pos - le
    else:
        le = phi_i | (_subsystem_of(rs, na) & pos)
        kernel = pos - _subsystem_of(rs, e)
    return ParabolicProfile(
        spec=spec,
        adj=a,
        nonadj=na,
        ext=e,
        levi_components=tuple(levi_components(spec)),
        levi_roots=phi_i,
        le_roots=le,
        kernel_roots=kernel,
        unipotent_roots=pos - phi_i,
        borel_index=bidx,
    )


def partition_ok(prof: ParabolicProfile) -> bool:
    """``Φ⁺ = kernel ⊔ (LE ∩ Φ⁺)`` and ``unipotent = Φ⁺ ∖ Φ_I``."""
    rs = prof.spec.rs
    pos = frozenset(rs.positive)
    le_pos = frozenset(r for r in prof.le_roots if r.is_positive)
    if prof.kernel_roots & le_pos:
        return False
    if prof.kernel_roots | le_pos != pos:
        return False
    return prof.unipotent_roots == pos - prof.levi_roots


def all_subsets(rank: int) -> list[frozenset[int]]:
    return [frozenset(i for i in range(rank) if mask >> i & 1) for mask in range(1 << rank)]
