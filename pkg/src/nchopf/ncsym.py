"""Symmetric functions in noncommuting variables, plain and colored.

Three layers:

* the monomial basis m (tag "m") and the coarsening-sum basis p (tag "p"),
  both indexed by set partitions (stored in the labels-1 arc encoding);
* the colored monomial basis (tag "m_colored"), indexed by a set partition
  plus one color per position from a cyclic group of order r;
* the labeled basis k (tag "k_colored"), indexed by labeled set partitions:
  k of a labeled partition is the sum of colored monomials on its underlying
  partition whose color differences along arcs match the arc labels through
  a fixed identification of the nonzero field residues with the color group
  (smallest primitive root mod q as generator, r = q - 1).

The k product and coproduct are computed by expanding into colored monomials,
operating there, and collecting back; closure of the k-span is checked at
collection time.  The map ``ch`` identifies the superclass-function algebra
with this picture: kappa indices map to m (q = 2) or k (q > 2) indices.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from .cyclotomic import CycRational
from .elements import (
    AlgebraElement,
    BasisIndex,
    TensorElement,
    coproduct,
    product,
    register_basis,
)
from .setpartitions import (
    LabeledSetPartition,
    SetPartition,
    arc_encoding,
    check_prime,
    coarsenings,
    concat_set_partitions,
    underlying_set_partition,
)


# ---------------------------------------------------------------------------
# colored indices and the field/color identification


class ColoredIndex:
    """A set partition of [n] with one color (an exponent mod r) per position."""

    __slots__ = ("partition", "colors", "r", "_hash")

    def __init__(self, partition: SetPartition, colors: Iterable[int], r: int):
        if r < 1:
            raise ValueError(f"color group order must be >= 1, got {r}")
        if partition.n == 0:
            r = 1  # the empty index is shared by every color group
        colors = tuple(int(c) % r for c in colors)
        if len(colors) != partition.n:
            raise ValueError(f"expected {partition.n} colors, got {len(colors)}")
        object.__setattr__(self, "partition", partition)
        object.__setattr__(self, "colors", colors)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "_hash", hash((partition, colors, r)))

    def __setattr__(self, name, value):
        raise AttributeError("ColoredIndex is immutable")

    @property
    def n(self) -> int:
        return self.partition.n

    def max_label(self) -> int:
        return 1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ColoredIndex)
            and self.partition == other.partition
            and self.colors == other.colors
            and self.r == other.r
        )

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "ColoredIndex") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return (self.partition.n, self.partition.blocks, self.colors)

    def __repr__(self) -> str:
        return f"ColoredIndex({self.partition.to_text()!r}, colors={list(self.colors)}, r={self.r})"

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.partition.blocks],
            "colors": list(self.colors),
            "r": self.r,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ColoredIndex":
        blocks = [tuple(b) for b in data["blocks"]]
        n = sum(len(b) for b in blocks)
        return cls(SetPartition(n, blocks), data["colors"], int(data["r"]))


def primitive_root(q: int) -> int:
    """The smallest generator of the multiplicative group mod q."""
    check_prime(q)
    if q == 2:
        return 1
    for g in range(2, q):
        seen = set()
        x = 1
        for _ in range(q - 1):
            x = (x * g) % q
            seen.add(x)
        if len(seen) == q - 1:
            return g
    raise AssertionError(f"no primitive root found for prime {q}")


def discrete_log_table(q: int) -> dict[int, int]:
    """Exponents identifying the nonzero residues mod q with Z/(q-1)."""
    g = primitive_root(q)
    table = {}
    x = 1
    for e in range(q - 1):
        table[x] = e
        x = (x * g) % q
    return table


# ---------------------------------------------------------------------------
# the m and p bases (set partitions, labels-1 arc encoding)


def _partition_of(idx: BasisIndex) -> SetPartition:
    return underlying_set_partition(idx.partition)


def m_element(q: int, sp: SetPartition, coeff=1) -> AlgebraElement:
    return AlgebraElement.monomial(q, "m", arc_encoding(sp), coeff)


def p_element(q: int, sp: SetPartition, coeff=1) -> AlgebraElement:
    return AlgebraElement.monomial(q, "p", arc_encoding(sp), coeff)


def _merged_partitions(lam: SetPartition, mu: SetPartition):
    """Partitions of [lam.n + mu.n] whose restriction to the two intervals is
    exactly lam | mu: one per partial matching of lam-blocks with mu-blocks."""
    shifted = [tuple(i + lam.n for i in block) for block in mu.blocks]
    la, lb = len(lam.blocks), len(shifted)
    n = lam.n + mu.n
    for s in range(min(la, lb) + 1):
        for chosen in itertools.combinations(range(la), s):
            for targets in itertools.permutations(range(lb), s):
                match = dict(zip(chosen, targets))
                blocks = []
                for i, block in enumerate(lam.blocks):
                    if i in match:
                        blocks.append(block + shifted[match[i]])
                    else:
                        blocks.append(block)
                used = set(match.values())
                blocks.extend(b for j, b in enumerate(shifted) if j not in used)
                yield SetPartition(n, blocks)


def _m_product(q: int, a: BasisIndex, b: BasisIndex) -> AlgebraElement:
    terms = {}
    for nu in _merged_partitions(_partition_of(a), _partition_of(b)):
        idx = BasisIndex("m", nu.n, arc_encoding(nu))
        if idx in terms:
            raise AssertionError(f"monomial product produced {idx!r} twice")
        terms[idx] = 1
    return AlgebraElement(q, "m", terms)


def _block_subset_splits(sp: SetPartition):
    """All splits of the blocks into (selected, complement), each side
    relabeled onto an initial segment."""
    blocks = sp.blocks
    for size in range(len(blocks) + 1):
        for chosen in itertools.combinations(range(len(blocks)), size):
            chosen_set = set(chosen)
            yield (
                _standardize_blocks([blocks[i] for i in chosen]),
                _standardize_blocks(
                    [blocks[i] for i in range(len(blocks)) if i not in chosen_set]
                ),
            )


def _standardize_blocks(blocks: list[tuple[int, ...]]) -> SetPartition:
    ground = sorted(i for block in blocks for i in block)
    relabel = {pos: r + 1 for r, pos in enumerate(ground)}
    return SetPartition(len(ground), [[relabel[i] for i in block] for block in blocks])


def _split_coproduct(q: int, a: BasisIndex, tag: str) -> TensorElement:
    terms: dict[tuple[BasisIndex, BasisIndex], CycRational] = {}
    one = CycRational.one(q)
    for left, right in _block_subset_splits(_partition_of(a)):
        key = (
            BasisIndex(tag, left.n, arc_encoding(left)),
            BasisIndex(tag, right.n, arc_encoding(right)),
        )
        terms[key] = terms.get(key, CycRational.zero(q)) + one
    return TensorElement(q, tag, terms)


def _p_product(q: int, a: BasisIndex, b: BasisIndex) -> AlgebraElement:
    merged = concat_set_partitions(_partition_of(a), _partition_of(b))
    return p_element(q, merged)


register_basis("m", product=_m_product, coproduct=lambda q, a: _split_coproduct(q, a, "m"))
register_basis("p", product=_p_product, coproduct=lambda q, a: _split_coproduct(q, a, "p"))


_M_IN_P_CACHE: dict[SetPartition, dict[SetPartition, int]] = {}


def _m_in_p(sp: SetPartition) -> dict[SetPartition, int]:
    """Coefficients of one monomial element on the p basis, by the triangular
    recursion m = p - sum of strictly coarser monomials."""
    cached = _M_IN_P_CACHE.get(sp)
    if cached is not None:
        return cached
    out = {sp: 1}
    for coarser in coarsenings(sp):
        if coarser == sp:
            continue
        for target, coeff in _m_in_p(coarser).items():
            out[target] = out.get(target, 0) - coeff
            if out[target] == 0:
                del out[target]
    _M_IN_P_CACHE[sp] = out
    return out


def m_to_p(x: AlgebraElement) -> AlgebraElement:
    if x.basis != "m":
        raise ValueError(f"expected an m element, got basis {x.basis!r}")
    out = AlgebraElement.zero(x.q, "p")
    for idx, coeff in x.terms.items():
        for target, c in _m_in_p(_partition_of(idx)).items():
            out = out + p_element(x.q, target, coeff * c)
    return out


def p_to_m(x: AlgebraElement) -> AlgebraElement:
    """p of a partition is the sum of m over all its coarsenings."""
    if x.basis != "p":
        raise ValueError(f"expected a p element, got basis {x.basis!r}")
    out = AlgebraElement.zero(x.q, "m")
    for idx, coeff in x.terms.items():
        for coarser in coarsenings(_partition_of(idx)):
            out = out + m_element(x.q, coarser, coeff)
    return out


def product_m(lam: SetPartition, mu: SetPartition, q: int = 2) -> AlgebraElement:
    return product(m_element(q, lam), m_element(q, mu))


def coproduct_m(lam: SetPartition, q: int = 2) -> TensorElement:
    return coproduct(m_element(q, lam))


def product_p(lam: SetPartition, mu: SetPartition, q: int = 2) -> AlgebraElement:
    return product(p_element(q, lam), p_element(q, mu))


def coproduct_p(lam: SetPartition, q: int = 2) -> TensorElement:
    return coproduct(p_element(q, lam))


# ---------------------------------------------------------------------------
# colored monomials


def colored_element(q: int, idx: ColoredIndex, coeff=1) -> AlgebraElement:
    if idx.n > 0 and idx.r != q - 1:
        raise ValueError(f"color group of order {idx.r} does not match q = {q}")
    return AlgebraElement(q, "m_colored", {BasisIndex("m_colored", idx.n, idx): coeff})


def _colored_product(q: int, a: BasisIndex, b: BasisIndex) -> AlgebraElement:
    ia: ColoredIndex = a.partition
    ib: ColoredIndex = b.partition
    colors = ia.colors + ib.colors
    r = max(q - 1, 1)
    terms = {}
    for nu in _merged_partitions(ia.partition, ib.partition):
        idx = BasisIndex("m_colored", nu.n, ColoredIndex(nu, colors, r))
        terms[idx] = 1
    return AlgebraElement(q, "m_colored", terms)


def _colored_coproduct(q: int, a: BasisIndex) -> TensorElement:
    idx: ColoredIndex = a.partition
    blocks = idx.partition.blocks
    terms: dict[tuple[BasisIndex, BasisIndex], CycRational] = {}
    one = CycRational.one(q)
    for size in range(len(blocks) + 1):
        for chosen in itertools.combinations(range(len(blocks)), size):
            chosen_set = set(chosen)
            left = _colored_restriction(idx, [blocks[i] for i in chosen])
            right = _colored_restriction(
                idx, [blocks[i] for i in range(len(blocks)) if i not in chosen_set]
            )
            key = (
                BasisIndex("m_colored", left.n, left),
                BasisIndex("m_colored", right.n, right),
            )
            terms[key] = terms.get(key, CycRational.zero(q)) + one
    return TensorElement(q, "m_colored", terms)


def _colored_restriction(idx: ColoredIndex, blocks: list[tuple[int, ...]]) -> ColoredIndex:
    ground = sorted(i for block in blocks for i in block)
    relabel = {pos: r + 1 for r, pos in enumerate(ground)}
    partition = SetPartition(len(ground), [[relabel[i] for i in block] for block in blocks])
    colors = tuple(idx.colors[pos - 1] for pos in ground)
    return ColoredIndex(partition, colors, idx.r)


register_basis("m_colored", product=_colored_product, coproduct=_colored_coproduct,
               unit_key=lambda: ColoredIndex(SetPartition(0, []), (), 1))


# ---------------------------------------------------------------------------
# the k basis: expansion, collection, structure maps


def expand_k_in_colored_m(lam: LabeledSetPartition, q: int) -> AlgebraElement:
    """One colored monomial per admissible coloring: along every arc the color
    difference equals the discrete log of the label; one free color per block,
    so a partition with t blocks expands into (q-1)^t terms."""
    check_prime(q)
    r = q - 1
    sp = underlying_set_partition(lam)
    dlog = discrete_log_table(q)
    offset = {block[0]: 0 for block in sp.blocks}
    for arc in lam.arcs:  # arcs sorted by left endpoint: offsets propagate along each block
        offset[arc.right] = (offset[arc.left] + dlog[arc.label]) % r
    terms = {}
    for base_colors in itertools.product(range(r), repeat=len(sp.blocks)):
        colors = [0] * lam.n
        for block, base in zip(sp.blocks, base_colors):
            for member in block:
                colors[member - 1] = (base + offset[member]) % r
        idx = ColoredIndex(sp, colors, r)
        terms[BasisIndex("m_colored", lam.n, idx)] = 1
    return AlgebraElement(q, "m_colored", terms)


def _labeled_from_colored(idx: ColoredIndex, q: int) -> LabeledSetPartition:
    """The unique labeled partition whose expansion contains this colored
    monomial: labels are exponentials of color differences along the blocks."""
    g = primitive_root(q)
    r = q - 1
    arcs = []
    for block in idx.partition.blocks:
        for a, b in zip(block, block[1:]):
            e = (idx.colors[b - 1] - idx.colors[a - 1]) % r
            arcs.append((a, b, pow(g, e, q) if q > 2 else 1))
    return LabeledSetPartition(idx.n, arcs)


def collect_k(x: AlgebraElement, q: int) -> AlgebraElement:
    """Rewrite a colored-monomial element on the k basis, verifying membership."""
    if x.basis != "m_colored":
        raise ValueError(f"expected a colored-monomial element, got basis {x.basis!r}")
    groups: dict[LabeledSetPartition, dict[BasisIndex, CycRational]] = {}
    for idx, coeff in x.terms.items():
        lam = _labeled_from_colored(idx.partition, q)
        groups.setdefault(lam, {})[idx] = coeff
    terms = {}
    for lam, present in groups.items():
        expected = set(expand_k_in_colored_m(lam, q).terms)
        coeffs = set(present.values())
        if set(present) != expected or len(coeffs) != 1:
            raise ValueError(f"element is not in the span of the labeled basis near {lam!r}")
        terms[BasisIndex("k_colored", lam.n, lam)] = coeffs.pop()
    return AlgebraElement(q, "k_colored", terms)


def collect_k_tensor(t: TensorElement, q: int) -> TensorElement:
    if t.basis != "m_colored":
        raise ValueError(f"expected a colored-monomial tensor, got basis {t.basis!r}")
    groups: dict[tuple, dict[tuple, CycRational]] = {}
    for (li, ri), coeff in t.terms.items():
        pair = (_labeled_from_colored(li.partition, q), _labeled_from_colored(ri.partition, q))
        groups.setdefault(pair, {})[(li, ri)] = coeff
    terms = {}
    for (lam_l, lam_r), present in groups.items():
        expected = {
            (el, er)
            for el in expand_k_in_colored_m(lam_l, q).terms
            for er in expand_k_in_colored_m(lam_r, q).terms
        }
        coeffs = set(present.values())
        if set(present) != expected or len(coeffs) != 1:
            raise ValueError(
                f"tensor is not in the span of the labeled basis near {lam_l!r} (x) {lam_r!r}"
            )
        key = (
            BasisIndex("k_colored", lam_l.n, lam_l),
            BasisIndex("k_colored", lam_r.n, lam_r),
        )
        terms[key] = coeffs.pop()
    return TensorElement(q, "k_colored", terms)


def _k_product(q: int, a: BasisIndex, b: BasisIndex) -> AlgebraElement:
    expanded = product(
        expand_k_in_colored_m(a.partition, q), expand_k_in_colored_m(b.partition, q)
    )
    return collect_k(expanded, q)


def _k_coproduct(q: int, a: BasisIndex) -> TensorElement:
    return collect_k_tensor(coproduct(expand_k_in_colored_m(a.partition, q)), q)


register_basis("k_colored", product=_k_product, coproduct=_k_coproduct)


def k_element(q: int, lam: LabeledSetPartition, coeff=1) -> AlgebraElement:
    return AlgebraElement.monomial(q, "k_colored", lam, coeff)


def product_k(mu: LabeledSetPartition, nu: LabeledSetPartition, q: int) -> AlgebraElement:
    return product(k_element(q, mu), k_element(q, nu))


def coproduct_k(lam: LabeledSetPartition, q: int) -> TensorElement:
    return coproduct(k_element(q, lam))


# ---------------------------------------------------------------------------
# the characteristic map out of the superclass-function algebra


def ch(x: AlgebraElement) -> AlgebraElement:
    """Send each kappa index to the m index of its underlying partition when
    q = 2, and to the k index with the same labeled partition when q > 2."""
    if x.basis != "kappa":
        raise ValueError(f"ch is defined on kappa elements, got basis {x.basis!r}")
    if x.q == 2:
        terms = {
            BasisIndex("m", idx.grade, arc_encoding(underlying_set_partition(idx.partition))): c
            for idx, c in x.terms.items()
        }
        return AlgebraElement(x.q, "m", terms)
    terms = {BasisIndex("k_colored", idx.grade, idx.partition): c for idx, c in x.terms.items()}
    return AlgebraElement(x.q, "k_colored", terms)


# ---------------------------------------------------------------------------
# truncated word expansion (test utility for the monomial product)


def expand_monomials_truncated(sp: SetPartition, num_variables: int) -> set[tuple[int, ...]]:
    """All words in the given number of noncommuting variables whose
    letter-equality pattern is exactly sp (distinct blocks, distinct letters)."""
    blocks = sp.blocks
    words = set()
    for letters in itertools.permutations(range(num_variables), len(blocks)):
        word = [0] * sp.n
        for block, letter in zip(blocks, letters):
            for member in block:
                word[member - 1] = letter
        words.add(tuple(word))
    return words
