"""Labeled set partitions, set partitions, and set compositions.

These are the index sets for every basis in the package.  A *labeled set
partition* of [n] = {1, ..., n} is a set of arcs i -(a)-> j with i < j and a
nonzero label a, such that no two arcs share a left endpoint and no two arcs
share a right endpoint.  Equivalently: a strictly upper-triangular matrix with
at most one nonzero entry in each row and each column.  Forgetting the labels,
the connected components of the arc diagram are the blocks of an ordinary set
partition of [n]; with all labels equal to 1 this is a bijection.

Positions are 1-based throughout.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator, Sequence


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def check_prime(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"q must be a prime >= 2, got {q}")


class Arc(tuple):
    """An arc left -(label)-> right with 1 <= left < right and label >= 1."""

    __slots__ = ()

    def __new__(cls, left: int, right: int, label: int):
        if not (1 <= left < right):
            raise ValueError(f"arc endpoints must satisfy 1 <= left < right, got ({left}, {right})")
        if label < 1:
            raise ValueError(f"arc label must be a nonzero field residue >= 1, got {label}")
        return tuple.__new__(cls, (left, right, label))

    @property
    def left(self) -> int:
        return self[0]

    @property
    def right(self) -> int:
        return self[1]

    @property
    def label(self) -> int:
        return self[2]

    def __repr__(self) -> str:
        return f"{self.left}-{self.label}-{self.right}"


class LabeledSetPartition:
    """An element of S_n(q): arcs with distinct lefts and distinct rights.

    Immutable; equality and hashing are determined by (n, sorted arcs), with
    arcs kept in (left, right) lexicographic order.
    """

    __slots__ = ("n", "arcs", "_hash")

    def __init__(self, n: int, arcs: Iterable[Arc | tuple[int, int, int]] = ()):
        if n < 0:
            raise ValueError(f"size must be nonnegative, got {n}")
        normalized = sorted(Arc(*a) for a in arcs)
        lefts = [a.left for a in normalized]
        rights = [a.right for a in normalized]
        for a in normalized:
            if a.right > n:
                raise ValueError(f"arc {a!r} exceeds ground set [1, {n}]")
        if len(set(lefts)) != len(lefts):
            raise ValueError(f"arcs share a left endpoint: {normalized}")
        if len(set(rights)) != len(rights):
            raise ValueError(f"arcs share a right endpoint: {normalized}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "arcs", tuple(normalized))
        object.__setattr__(self, "_hash", hash((n, self.arcs)))

    def __setattr__(self, name, value):
        raise AttributeError("LabeledSetPartition is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LabeledSetPartition)
            and self.n == other.n
            and self.arcs == other.arcs
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LabeledSetPartition") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.n, len(self.arcs), self.arcs)

    def __repr__(self) -> str:
        return f"LabeledSetPartition({self.to_text()!r})"

    def lefts(self) -> frozenset[int]:
        return frozenset(a.left for a in self.arcs)

    def rights(self) -> frozenset[int]:
        return frozenset(a.right for a in self.arcs)

    def max_label(self) -> int:
        return max((a.label for a in self.arcs), default=1)

    def shift(self, k: int) -> "LabeledSetPartition":
        """Translate all positions by +k, enlarging the ground set to [n + k]."""
        return LabeledSetPartition(
            self.n + k, ((a.left + k, a.right + k, a.label) for a in self.arcs)
        )

    def relabel_positions(self, mapping: dict[int, int], n: int) -> "LabeledSetPartition":
        return LabeledSetPartition(
            n, ((mapping[a.left], mapping[a.right], a.label) for a in self.arcs)
        )

    def to_text(self) -> str:
        arcs = ", ".join(f"{a.left}-{a.label}-{a.right}" for a in self.arcs)
        return f"{self.n}; {arcs}" if arcs else f"{self.n};"

    @classmethod
    def from_text(cls, text: str) -> "LabeledSetPartition":
        """Parse the "n; i-a-j, i-a-j" form, e.g. "5; 1-1-2, 3-2-5"."""
        head, _, tail = text.partition(";")
        n = int(head.strip())
        arcs = []
        for chunk in tail.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            left, label, right = (int(part) for part in chunk.split("-"))
            arcs.append((left, right, label))
        return cls(n, arcs)

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [[a.left, a.right, a.label] for a in self.arcs]}

    @classmethod
    def from_json(cls, data: dict) -> "LabeledSetPartition":
        return cls(int(data["n"]), [tuple(arc) for arc in data["arcs"]])


class SetPartition:
    """A partition of [n] into disjoint nonempty blocks covering [n].

    Blocks are stored sorted internally and ordered by their minima.
    """

    __slots__ = ("n", "blocks", "_hash")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        normalized = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0]))
        seen: list[int] = []
        for block in normalized:
            if not block:
                raise ValueError("blocks must be nonempty")
            seen.extend(block)
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"blocks {normalized} do not partition [1, {n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", normalized)
        object.__setattr__(self, "_hash", hash((n, normalized)))

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "SetPartition") -> bool:
        return (self.n, self.blocks) < (other.n, other.blocks)

    def __repr__(self) -> str:
        return f"SetPartition({self.to_text()!r})"

    def num_blocks(self) -> int:
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        for block in self.blocks:
            if i in block:
                return block
        raise KeyError(i)

    def refines(self, other: "SetPartition") -> bool:
        """True when every block of self is contained in a block of other."""
        if self.n != other.n:
            raise ValueError("size mismatch")
        location = {i: idx for idx, block in enumerate(other.blocks) for i in block}
        return all(len({location[i] for i in block}) == 1 for block in self.blocks)

    def to_text(self) -> str:
        if self.n == 0:
            return "/"
        if self.n <= 9:
            return "|".join("".join(str(i) for i in b) for b in self.blocks)
        return "|".join(",".join(str(i) for i in b) for b in self.blocks)

    @classmethod
    def from_text(cls, text: str) -> "SetPartition":
        """Parse "135|24" (digits) or "1,3,5|2,4" (comma-separated) forms."""
        text = text.strip()
        if text in ("", "/"):
            return cls(0, [])
        blocks = []
        for part in text.split("|"):
            part = part.strip()
            if "," in part:
                block = [int(x) for x in part.split(",")]
            else:
                block = [int(ch) for ch in part]
            blocks.append(block)
        n = sum(len(b) for b in blocks)
        return cls(n, blocks)


class SetComposition:
    """An ordered list of disjoint nonempty subsets covering [n]."""

    __slots__ = ("n", "parts", "_hash")

    def __init__(self, parts: Iterable[Iterable[int]]):
        normalized = tuple(tuple(sorted(p)) for p in parts)
        seen: list[int] = []
        for part in normalized:
            if not part:
                raise ValueError("parts must be nonempty")
            seen.extend(part)
        n = len(seen)
        if sorted(seen) != list(range(1, n + 1)):
            raise ValueError(f"parts {normalized} do not partition an interval [1, n]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "parts", normalized)
        object.__setattr__(self, "_hash", hash(normalized))

    def __setattr__(self, name, value):
        raise AttributeError("SetComposition is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, SetComposition) and self.parts == other.parts

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SetComposition({self.to_text()!r})"

    def to_text(self) -> str:
        if self.n == 0:
            return "/"
        if self.n <= 9:
            return "|".join("".join(str(i) for i in p) for p in self.parts)
        return "|".join(",".join(str(i) for i in p) for p in self.parts)

    @classmethod
    def from_text(cls, text: str) -> "SetComposition":
        text = text.strip()
        if text in ("", "/"):
            return cls([])
        parts = []
        for part in text.split("|"):
            part = part.strip()
            if "," in part:
                parts.append([int(x) for x in part.split(",")])
            else:
                parts.append([int(ch) for ch in part])
        return cls(parts)

    @classmethod
    def from_interval_sizes(cls, sizes: Sequence[int]) -> "SetComposition":
        """The composition whose parts are consecutive intervals of the given sizes."""
        parts = []
        start = 1
        for size in sizes:
            parts.append(range(start, start + size))
            start += size
        return cls(parts)


# ---------------------------------------------------------------------------
# operations


def enumerate_labeled_partitions(n: int, q: int) -> list[LabeledSetPartition]:
    """All of S_n(q) in the canonical order: by arc count, then arc list.

    The count is the Bell number B_n for q = 2 and, in general, the sum of
    (q-1)^(#arcs) over all arc-position patterns.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    check_prime(q)
    positions = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    patterns: list[tuple[tuple[int, int], ...]] = []

    def extend(start: int, chosen: list[tuple[int, int]], lefts: set[int], rights: set[int]):
        patterns.append(tuple(chosen))
        for idx in range(start, len(positions)):
            i, j = positions[idx]
            if i in lefts or j in rights:
                continue
            chosen.append((i, j))
            lefts.add(i)
            rights.add(j)
            extend(idx + 1, chosen, lefts, rights)
            chosen.pop()
            lefts.discard(i)
            rights.discard(j)

    extend(0, [], set(), set())
    result = []
    for pattern in patterns:
        for labels in itertools.product(range(1, q), repeat=len(pattern)):
            result.append(
                LabeledSetPartition(n, ((i, j, a) for (i, j), a in zip(pattern, labels)))
            )
    result.sort(key=LabeledSetPartition.sort_key)
    return result


def underlying_set_partition(lam: LabeledSetPartition) -> SetPartition:
    """Blocks are the connected components of the arc diagram, labels ignored."""
    parent = {i: i for i in range(1, lam.n + 1)}

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in lam.arcs:
        parent[find(a.left)] = find(a.right)
    components: dict[int, list[int]] = {}
    for i in range(1, lam.n + 1):
        components.setdefault(find(i), []).append(i)
    return SetPartition(lam.n, components.values())


def arc_encoding(sp: SetPartition) -> LabeledSetPartition:
    """The inverse of ``underlying_set_partition`` on S_n(2): consecutive block
    members joined by arcs labeled 1."""
    arcs = []
    for block in sp.blocks:
        for a, b in zip(block, block[1:]):
            arcs.append((a, b, 1))
    return LabeledSetPartition(sp.n, arcs)


def concat(lam: LabeledSetPartition, mu: LabeledSetPartition) -> LabeledSetPartition:
    """Place mu to the right of lam: mu's positions are shifted by lam.n."""
    shifted = mu.shift(lam.n)
    return LabeledSetPartition(lam.n + mu.n, lam.arcs + shifted.arcs)


def concat_set_partitions(lam: SetPartition, mu: SetPartition) -> SetPartition:
    shifted = [[i + lam.n for i in block] for block in mu.blocks]
    return SetPartition(lam.n + mu.n, list(lam.blocks) + shifted)


def straighten(lam: LabeledSetPartition, J: SetComposition) -> list[LabeledSetPartition]:
    """Split lam along the parts of J, relabeling each part onto an initial segment.

    Every arc must have both endpoints inside a single part of J; an arc
    straddling two parts is an error.
    """
    if J.n != lam.n:
        raise ValueError(f"composition of [{J.n}] does not match partition of [{lam.n}]")
    part_index = {i: k for k, part in enumerate(J.parts) for i in part}
    split: list[list[tuple[int, int, int]]] = [[] for _ in J.parts]
    for a in lam.arcs:
        if part_index[a.left] != part_index[a.right]:
            raise ValueError(f"arc {a!r} straddles two parts of {J!r}")
        split[part_index[a.left]].append(a)
    out = []
    for part, arcs in zip(J.parts, split):
        relabel = {pos: idx + 1 for idx, pos in enumerate(part)}
        out.append(
            LabeledSetPartition(len(part), ((relabel[a[0]], relabel[a[1]], a[2]) for a in arcs))
        )
    return out


def unstraighten(mu: LabeledSetPartition, A: Iterable[int], n: int) -> LabeledSetPartition:
    """Embed mu into [n] along the order-preserving bijection [|A|] -> A."""
    positions = sorted(A)
    if len(positions) != mu.n:
        raise ValueError(f"subset of size {len(positions)} cannot carry a partition of [{mu.n}]")
    if positions and not (1 <= positions[0] and positions[-1] <= n):
        raise ValueError(f"subset {positions} not contained in [1, {n}]")
    return LabeledSetPartition(
        n, ((positions[a.left - 1], positions[a.right - 1], a.label) for a in mu.arcs)
    )


def restrict_arcs(lam: LabeledSetPartition, A: Iterable[int]) -> LabeledSetPartition:
    """Keep exactly the arcs with both endpoints in A; positions unchanged."""
    members = set(A)
    return LabeledSetPartition(
        lam.n, (a for a in lam.arcs if a.left in members and a.right in members)
    )


def common_refinement(rho: SetPartition, sigma: SetPartition) -> SetPartition:
    """Blockwise intersection: the finest partition coarsened by both arguments."""
    if rho.n != sigma.n:
        raise ValueError(f"size mismatch: {rho.n} vs {sigma.n}")
    blocks = []
    for b1 in rho.blocks:
        s1 = set(b1)
        for b2 in sigma.blocks:
            inter = s1.intersection(b2)
            if inter:
                blocks.append(inter)
    return SetPartition(rho.n, blocks)


def set_partitions_of(items: Sequence) -> Iterator[list[list]]:
    """All partitions of the given items into nonempty blocks."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions_of(rest):
        for i in range(len(sub)):
            yield sub[:i] + [[first] + sub[i]] + sub[i + 1 :]
        yield [[first]] + sub


def all_set_partitions(n: int) -> list[SetPartition]:
    out = [SetPartition(n, blocks) for blocks in set_partitions_of(range(1, n + 1))]
    out.sort(key=lambda sp: (sp.num_blocks(), sp.blocks))
    return out


def coarsenings(lam: SetPartition) -> list[SetPartition]:
    """Every partition obtained by merging blocks of lam, including lam itself."""
    out = set()
    for grouping in set_partitions_of(range(len(lam.blocks))):
        merged = []
        for group in grouping:
            block: list[int] = []
            for idx in group:
                block.extend(lam.blocks[idx])
            merged.append(block)
        out.add(SetPartition(lam.n, merged))
    return sorted(out, key=lambda sp: (sp.num_blocks(), sp.blocks))


def refinements(lam: SetPartition) -> list[SetPartition]:
    """Every partition whose blocks subdivide the blocks of lam."""
    per_block = [list(set_partitions_of(block)) for block in lam.blocks]
    out = []
    for choice in itertools.product(*per_block):
        blocks: list[list[int]] = []
        for sub in choice:
            blocks.extend(sub)
        out.append(SetPartition(lam.n, blocks))
    return sorted(set(out), key=lambda sp: (sp.num_blocks(), sp.blocks))


def crossing_statistic(lam: LabeledSetPartition) -> int:
    """Number of crossing arc pairs: i -> k and j -> l with i < j < k < l."""
    count = 0
    for a, b in itertools.combinations(lam.arcs, 2):
        i, k = a.left, a.right
        j, l = b.left, b.right
        if i < j < k < l or j < i < l < k:
            count += 1
    return count
