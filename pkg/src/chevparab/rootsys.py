"""Irreducible reduced root systems in simple-root coordinates.

Roots are built by closing the simple roots under simple reflections, using an
integral Gram matrix for each Dynkin family (Bourbaki numbering).  The Cartan
integer of a pair is ``(a, b) = 2<a, b> / <b, b>``.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


@dataclass(frozen=True)
class RootSystemType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 2,
            "D": n >= 3,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }.get(f)
        if not ok:
            raise ValueError(f"unsupported root system type {f}{n}")

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> "RootSystemType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d*)\s*", text)
        if not m:
            raise ValueError(f"cannot parse root system type {text!r}")
        fam = m.group(1).upper()
        n = int(m.group(2)) if m.group(2) else rank
        if n is None:
            raise ValueError(f"rank missing for type {text!r}")
        if rank is not None and m.group(2) and int(m.group(2)) != rank:
            raise ValueError(f"conflicting ranks in {text!r} and {rank}")
        return cls(fam, n)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


@dataclass(frozen=True)
class Root:
    """A vector in simple-root coordinates (roots and their sums/differences)."""

    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rmul__(self, k: int) -> "Root":
        return Root(tuple(k * c for c in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sort_key(self) -> tuple:
        return (self.height, tuple(-c for c in self.coeffs))

    def __lt__(self, other: "Root") -> bool:
        return self.sort_key() < other.sort_key()

    def name(self) -> str:
        """Human-readable name such as ``a1+a2`` or ``-2a1-3a2``."""
        parts = []
        for i, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{mag}a{i}")
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s

    @classmethod
    def from_name(cls, text: str, rank: int) -> "Root":
        text = text.replace(" ", "")
        if not re.fullmatch(r"([+-]?\d*a\d+)+", text):
            raise ValueError(f"cannot parse root name {text!r}")
        coeffs = [0] * rank
        for sign, mag, idx in re.findall(r"([+-]?)(\d*)a(\d+)", text):
            i = int(idx) - 1
            if not 0 <= i < rank:
                raise ValueError(f"simple root index {idx} out of range in {text!r}")
            coeffs[i] += (-1 if sign == "-" else 1) * (int(mag) if mag else 1)
        return cls(tuple(coeffs))

    def __str__(self) -> str:
        return self.name()

    def __repr__(self) -> str:
        return f"Root({self.name()})"


def _gram_matrix(t: RootSystemType) -> list[list[int]]:
    """Integral Gram matrix <a_i, a_j> of the simple roots."""
    n = t.rank
    g = [[0] * n for _ in range(n)]

    def link(i: int, j: int, v: int) -> None:
        g[i][j] = g[j][i] = v

    f = t.family
    if f == "A":
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 1):
            link(i, i + 1, -1)
    elif f == "B":  # a_n short
        for i in range(n):
            g[i][i] = 4
        g[n - 1][n - 1] = 2
        for i in range(n - 1):
            link(i, i + 1, -2)
    elif f == "C":  # a_n long
        for i in range(n):
            g[i][i] = 2
        g[n - 1][n - 1] = 4
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 2, n - 1, -2)
    elif f == "D":
        for i in range(n):
            g[i][i] = 2
        for i in range(n - 2):
            link(i, i + 1, -1)
        link(n - 3, n - 1, -1)
    elif f == "E":
        for i in range(n):
            g[i][i] = 2
        link(0, 2, -1)
        link(1, 3, -1)
        for i in range(2, n - 1):
            link(i, i + 1, -1)
    elif f == "F":  # a1, a2 long; a3, a4 short
        g[0][0] = g[1][1] = 4
        g[2][2] = g[3][3] = 2
        link(0, 1, -2)
        link(1, 2, -2)
        link(2, 3, -1)
    elif f == "G":  # a1 short, a2 long
        g[0][0], g[1][1] = 2, 6
        link(0, 1, -3)
    return g


class RootSystem:
    """A root system with its total order: height first, then Δ-order on coefficients."""

    def __init__(self, rstype: RootSystemType | str):
        if isinstance(rstype, str):
            rstype = RootSystemType.parse(rstype)
        self.type = rstype
        self.rank = rstype.rank
        self.gram = _gram_matrix(rstype)
        n = self.rank
        self.simples: tuple[Root, ...] = tuple(
            Root(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)
        )
        self.cartan = [[self.cartan_int(a, b) for b in self.simples] for a in self.simples]
        self.roots: tuple[Root, ...] = tuple(sorted(self._closure()))
        self._index = {r: i for i, r in enumerate(self.roots)}
        self.positive: tuple[Root, ...] = tuple(r for r in self.roots if r.is_positive)
        self.negative: tuple[Root, ...] = tuple(r for r in self.roots if not r.is_positive)
        self._check_invariants()

    # bilinear data ------------------------------------------------------
    def inner(self, a: Root, b: Root) -> int:
        g = self.gram
        return sum(
            ai * g[i][j] * bj
            for i, ai in enumerate(a.coeffs) if ai
            for j, bj in enumerate(b.coeffs) if bj
        )

    def norm(self, a: Root) -> int:
        return self.inner(a, a)

    def cartan_int(self, a: Root, b: Root) -> int:
        """``(a, b) = 2<a, b>/<b, b>``."""
        num = 2 * self.inner(a, b)
        den = self.inner(b, b)
        q, r = divmod(num, den)
        if r:
            raise ValueError(f"non-integral Cartan integer for {a}, {b}")
        return q

    def reflect(self, a: Root, b: Root) -> Root:
        """``r_a(b) = b - (b, a) a``."""
        return b - self.cartan_int(b, a) * a

    def _closure(self) -> set[Root]:
        seen = set(self.simples)
        queue = deque(self.simples)
        while queue:
            r = queue.popleft()
            for s in self.simples:
                x = self.reflect(s, r)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return seen

    def _check_invariants(self) -> None:
        for r in self.roots:
            if not (all(c >= 0 for c in r.coeffs) or all(c <= 0 for c in r.coeffs)):
                raise AssertionError(f"root {r} has mixed-sign coefficients")
            if -r not in self._index:
                raise AssertionError(f"root {r} missing its negative")
            for k in (2, 3):
                if k * r in self._index:
                    raise AssertionError(f"non-reduced multiple of {r}")

    # membership and order -------------------------------------------------
    def is_root(self, v: Root | Sequence[int]) -> bool:
        if not isinstance(v, Root):
            v = Root(tuple(v))
        return v in self._index

    def root(self, v: Root | Sequence[int] | str) -> Root:
        if isinstance(v, str):
            v = Root.from_name(v, self.rank)
        elif not isinstance(v, Root):
            v = Root(tuple(v))
        if v not in self._index:
            raise ValueError(f"{v} is not a root of {self.type}")
        return v

    def index(self, r: Root) -> int:
        return self._index[r]

    def simple_index(self, r: Root) -> int:
        """Zero-based position of a simple root in Δ."""
        return self.simples.index(r)

    def __len__(self) -> int:
        return len(self.roots)

    def __contains__(self, r: object) -> bool:
        return r in self._index

    @cached_property
    def lengths(self) -> tuple[int, ...]:
        return tuple(sorted({self.norm(r) for r in self.roots}))

    def is_long(self, r: Root) -> bool:
        return self.norm(r) == self.lengths[-1]

    def is_short(self, r: Root) -> bool:
        return len(self.lengths) > 1 and self.norm(r) == self.lengths[0]

    @property
    def simply_laced(self) -> bool:
        return len(self.lengths) == 1

    @cached_property
    def highest_root(self) -> Root:
        return self.positive[-1]

    def coroot_coeffs(self, a: Root) -> tuple[int, ...]:
        """Coordinates of the coroot of ``a`` in the basis of simple coroots."""
        out = []
        na = self.norm(a)
        for i, c in enumerate(a.coeffs):
            q, r = divmod(c * self.gram[i][i], na)
            if r:
                raise AssertionError("non-integral coroot coordinates")
            out.append(q)
        return tuple(out)

    def adjacent(self, i: int, j: int) -> bool:
        """Whether simple roots ``i`` and ``j`` (zero-based) are joined in the Dynkin diagram."""
        return i != j and self.gram[i][j] != 0

    # decompositions -------------------------------------------------------
    def decompose_positive(self, g: Root) -> tuple[Root, Root]:
        """Split a positive non-simple root as ``a + b`` with ``a`` the first possible simple root."""
        if g not in self._index or not g.is_positive:
            raise ValueError(f"{g} is not a positive root")
        if g in self.simples:
            raise ValueError(f"{g} is simple")
        for a in self.simples:
            b = g - a
            if b in self._index and b.is_positive:
                return a, b
        raise AssertionError(f"no decomposition for {g}")

    def weyl_route_to_simple(self, g: Root) -> tuple[list[Root], Root]:
        """Shortest sequence of simple reflections taking ``g`` into Δ.

        Breadth-first search expanding reflections in Δ-order; the first simple
        root dequeued wins.  Returns ``(reflections, landing_root)`` where the
        reflections are applied left to right.
        """
        g = self.root(g)
        parent: dict[Root, tuple[Root, Root] | None] = {g: None}
        queue = deque([g])
        simples = set(self.simples)
        while queue:
            r = queue.popleft()
            if r in simples:
                path = []
                cur = r
                while parent[cur] is not None:
                    prev, refl = parent[cur]
                    path.append(refl)
                    cur = prev
                return path[::-1], r
            for s in self.simples:
                x = self.reflect(s, r)
                if x not in parent:
                    parent[x] = (r, s)
                    queue.append(x)
        raise AssertionError("Weyl orbit misses Δ")

    def in_span(self, xs: Iterable[Root], v: Root) -> bool:
        return _in_lattice(_hnf([list(x.coeffs) for x in xs]), list(v.coeffs))

    def subsystem(self, xs: Iterable[Root]) -> tuple[Root, ...]:
        """``Φ ∩ span_ℤ(X)`` in root order."""
        basis = _hnf([list(x.coeffs) for x in xs])
        return tuple(r for r in self.roots if _in_lattice(basis, list(r.coeffs)))

    # serialisation --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "type": str(self.type),
            "simples": [list(s.coeffs) for s in self.simples],
            "positive": [list(r.coeffs) for r in self.positive],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "RootSystem":
        rs = cls(RootSystemType.parse(data["type"]))
        given = [tuple(c) for c in data.get("positive", [])]
        if given and given != [r.coeffs for r in rs.positive]:
            raise ValueError("positive roots in JSON disagree with the type")
        return rs

    def __repr__(self) -> str:
        return f"RootSystem({self.type})"


def _hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row echelon form over ℤ (Euclidean elimination); returns nonzero rows."""
    rows = [r[:] for r in rows if any(r)]
    if not rows:
        return []
    ncols = len(rows[0])
    out: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        piv = [r for r in rows if r[col]]
        if not piv:
            col += 1
            continue
        while len([r for r in rows if r[col]]) > 1:
            nz = sorted((r for r in rows if r[col]), key=lambda r: abs(r[col]))
            p = nz[0]
            for r in nz[1:]:
                q = r[col] // p[col]
                for k in range(ncols):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        p = next(r for r in rows if r[col])
        if p[col] < 0:
            p[:] = [-x for x in p]
        out.append(p)
        rows = [r for r in rows if r is not p]
        col += 1
    return out


def _in_lattice(basis: list[list[int]], v: list[int]) -> bool:
    v = v[:]
    for row in basis:
        col = next(i for i, x in enumerate(row) if x)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


_CACHE: dict[str, RootSystem] = {}


def build_root_system(rstype: RootSystemType | str) -> RootSystem:
    """Cached constructor."""
    key = str(rstype if isinstance(rstype, RootSystemType) else RootSystemType.parse(rstype))
    if key not in _CACHE:
        _CACHE[key] = RootSystem(key)
    return _CACHE[key]
