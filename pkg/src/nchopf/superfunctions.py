"""The Hopf algebra of superclass functions of the unitriangular groups.

Superclass functions of UT_n(q) for all n at once, on two bases indexed by
labeled set partitions: the superclass indicator functions (basis tag
"kappa") and the supercharacters (basis tag "chi").  The kappa basis carries
the combinatorial product and coproduct; the chi basis routes through kappa
via exact supercharacter-table inversion, one table per grade.

Products concatenate ground sets and coproducts split them:

* kappa product: all ways of adding connecting arcs from the first block of
  positions to the second, keeping left and right endpoints distinct;
* kappa coproduct: all two-colorings of the positions such that no arc is
  split, each side relabeled onto an initial segment.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
import threading
from fractions import Fraction
from pathlib import Path

from .cyclotomic import CycRational, solve_linear_system, invert_matrix, theta
from .elements import (
    AlgebraElement,
    BasisIndex,
    TensorElement,
    coproduct,
    product,
    register_basis,
)
from .limits import DEFAULT_TABLE_BOUND, BoundExceededError
from .setpartitions import (
    LabeledSetPartition,
    check_prime,
    enumerate_labeled_partitions,
)

TABLE_FORMAT_VERSION = 1


def group_order(n: int, q: int) -> int:
    return q ** (n * (n - 1) // 2)


# ---------------------------------------------------------------------------
# kappa basis structure maps


def kappa_element(q: int, lam: LabeledSetPartition, coeff=1) -> AlgebraElement:
    return AlgebraElement.monomial(q, "kappa", lam, coeff)


def chi_element(q: int, lam: LabeledSetPartition, coeff=1) -> AlgebraElement:
    return AlgebraElement.monomial(q, "chi", lam, coeff)


def _kappa_product(q: int, a: BasisIndex, b: BasisIndex) -> AlgebraElement:
    return AlgebraElement(q, "kappa", connecting_arc_sums(q, a.partition, b.partition))


def connecting_arc_sums(
    q: int, mu: LabeledSetPartition, nu: LabeledSetPartition
) -> dict[BasisIndex, int]:
    """Indices of the kappa product: mu, nu placed side by side plus every
    admissible set of labeled arcs crossing from [k] to [k+1, k+m]."""
    k = mu.n
    n = k + nu.n
    shifted = nu.shift(k)
    base = mu.arcs + shifted.arcs
    free_lefts = [i for i in range(1, k + 1) if i not in mu.lefts()]
    free_rights = [j for j in range(k + 1, n + 1) if j not in shifted.rights()]
    terms: dict[BasisIndex, int] = {}
    for s in range(0, min(len(free_lefts), len(free_rights)) + 1):
        for lefts in itertools.combinations(free_lefts, s):
            for rights in itertools.permutations(free_rights, s):
                for labels in itertools.product(range(1, q), repeat=s):
                    crossing = tuple(zip(lefts, rights, labels))
                    lam = LabeledSetPartition(n, base + crossing)
                    terms[BasisIndex("kappa", n, lam)] = 1
    return terms


def _straighten_pair(
    lam: LabeledSetPartition, subset: tuple[int, ...]
) -> tuple[LabeledSetPartition, LabeledSetPartition]:
    members = set(subset)
    complement = tuple(i for i in range(1, lam.n + 1) if i not in members)
    left_map = {pos: r + 1 for r, pos in enumerate(subset)}
    right_map = {pos: r + 1 for r, pos in enumerate(complement)}
    left_arcs, right_arcs = [], []
    for arc in lam.arcs:
        if arc.left in members:
            left_arcs.append((left_map[arc.left], left_map[arc.right], arc.label))
        else:
            right_arcs.append((right_map[arc.left], right_map[arc.right], arc.label))
    return (
        LabeledSetPartition(len(subset), left_arcs),
        LabeledSetPartition(len(complement), right_arcs),
    )


def kappa_coproduct_terms(q: int, lam: LabeledSetPartition) -> TensorElement:
    n = lam.n
    terms: dict[tuple[BasisIndex, BasisIndex], CycRational] = {}
    one = CycRational.one(q)
    positions = range(1, n + 1)
    for size in range(n + 1):
        for subset in itertools.combinations(positions, size):
            members = set(subset)
            if any((arc.left in members) != (arc.right in members) for arc in lam.arcs):
                continue
            left, right = _straighten_pair(lam, subset)
            key = (BasisIndex("kappa", size, left), BasisIndex("kappa", n - size, right))
            terms[key] = terms.get(key, CycRational.zero(q)) + one
    return TensorElement(q, "kappa", terms)


# ---------------------------------------------------------------------------
# supercharacter values and tables


def supercharacter_degree(lam: LabeledSetPartition, q: int) -> int:
    """Value at the identity: the product of q^(right - left - 1) over arcs."""
    exponent = sum(a.right - a.left - 1 for a in lam.arcs)
    return q**exponent


def supercharacter_value(
    lam: LabeledSetPartition, mu: LabeledSetPartition, q: int
) -> CycRational:
    """The value of the supercharacter of lam on the superclass of mu.

    Zero whenever some arc i -> k of lam has a mu-arc leaving i or entering k
    strictly inside (i, k).  Otherwise an integer power of q (positions
    strictly under lam's arcs, discounted by mu-arcs nested strictly inside
    lam-arcs) times a product of character values over coincident arcs.
    """
    if lam.n != mu.n:
        raise ValueError(f"size mismatch: {lam.n} vs {mu.n}")
    check_prime(q)
    mu_arcs = mu.arcs
    for a in lam.arcs:
        for b in mu_arcs:
            if b.left == a.left and a.left < b.right < a.right:
                return CycRational.zero(q)
            if b.right == a.right and a.left < b.left < a.right:
                return CycRational.zero(q)
    under = sum(a.right - a.left - 1 for a in lam.arcs)
    nested = sum(
        1
        for a in lam.arcs
        for b in mu_arcs
        if a.left < b.left and b.right < a.right
    )
    exponent = under - nested
    if exponent < 0:
        raise AssertionError(
            f"negative q-exponent {exponent} for {lam!r}, {mu!r}: nesting exceeds cover count"
        )
    value = CycRational.from_rational(q, Fraction(q) ** exponent)
    for a in lam.arcs:
        for b in mu_arcs:
            if a.left == b.left and a.right == b.right:
                value = value * theta(q, (a.label * b.label) % q)
    return value


class SupercharTable:
    """The full supercharacter table of UT_n(q) plus superclass sizes.

    Rows are supercharacters, columns superclasses, both in the canonical
    enumeration order of the index set.
    """

    def __init__(self, n, q, order, values, class_sizes):
        self.n = n
        self.q = q
        self.order = tuple(order)
        self.values = tuple(tuple(row) for row in values)
        self.class_sizes = tuple(int(s) for s in class_sizes)
        self._index = {lam: i for i, lam in enumerate(self.order)}
        self._inverse = None
        if len(self.values) != len(self.order) or any(
            len(row) != len(self.order) for row in self.values
        ):
            raise ValueError("table shape does not match index order")
        if len(self.class_sizes) != len(self.order):
            raise ValueError("class size vector does not match index order")

    @property
    def group_order(self) -> int:
        return group_order(self.n, self.q)

    def index(self, lam: LabeledSetPartition) -> int:
        return self._index[lam]

    def value(self, lam: LabeledSetPartition, mu: LabeledSetPartition) -> CycRational:
        return self.values[self._index[lam]][self._index[mu]]

    def class_size(self, mu: LabeledSetPartition) -> int:
        return self.class_sizes[self._index[mu]]

    def inverse(self) -> tuple[tuple[CycRational, ...], ...]:
        """Exact inverse of the value matrix; cached after the first call."""
        if self._inverse is None:
            self._inverse = tuple(tuple(row) for row in invert_matrix(self.values))
        return self._inverse

    def validate_basic(self) -> None:
        if self.order and self.order[0].arcs:
            raise ValueError("canonical order must start with the empty partition")
        if sum(self.class_sizes) != self.group_order:
            raise ValueError("superclass sizes do not sum to the group order")
        for i, lam in enumerate(self.order):
            expected = supercharacter_degree(lam, self.q)
            if self.values[i][0] != expected:
                raise ValueError(f"degree of row {lam!r} is not {expected}")

    def to_json(self) -> dict:
        return {
            "format": TABLE_FORMAT_VERSION,
            "n": self.n,
            "q": self.q,
            "order": [lam.to_json() for lam in self.order],
            "values": [[v.to_json() for v in row] for row in self.values],
            "class_sizes": list(self.class_sizes),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SupercharTable":
        return cls(
            int(data["n"]),
            int(data["q"]),
            [LabeledSetPartition.from_json(item) for item in data["order"]],
            [[CycRational.from_json(v) for v in row] for row in data["values"]],
            data["class_sizes"],
        )


_TABLE_CACHE: dict[tuple[int, int], SupercharTable] = {}
_TABLE_LOCK = threading.Lock()


def default_cache_dir() -> Path:
    env = os.environ.get("NCHOPF_CACHE_DIR")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "nchopf"


def _table_path(n: int, q: int, cache_dir: Path) -> Path:
    return cache_dir / f"supercharacter-table-v{TABLE_FORMAT_VERSION}-n{n}-q{q}.json"


def _compute_table(n: int, q: int) -> SupercharTable:
    order = enumerate_labeled_partitions(n, q)
    values = [
        [supercharacter_value(lam, mu, q) for mu in order] for lam in order
    ]
    # Weighted orthogonality against the trivial character pins the sizes:
    # sum_mu size(mu) * chi^lam(mu) = |G| * delta(lam, empty).
    size = len(order)
    total = group_order(n, q)
    rhs = [CycRational.zero(q)] * size
    rhs[0] = CycRational.from_rational(q, total)
    solved = solve_linear_system(values, rhs)
    sizes = []
    for lam, value in zip(order, solved):
        rational = value.rational_value()
        if rational.denominator != 1 or rational <= 0:
            raise AssertionError(f"superclass size for {lam!r} is not a positive integer: {rational}")
        sizes.append(int(rational))
    table = SupercharTable(n, q, order, values, sizes)
    table.validate_basic()
    return table


def supercharacter_table(
    n: int,
    q: int,
    *,
    bound: int = DEFAULT_TABLE_BOUND,
    cache_dir: str | os.PathLike | None = None,
    use_disk_cache: bool = True,
) -> SupercharTable:
    """The supercharacter table of UT_n(q), cached in memory and on disk."""
    check_prime(q)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n > bound:
        raise BoundExceededError(f"table for n={n} exceeds the configured bound {bound}")
    key = (n, q)
    with _TABLE_LOCK:
        if key in _TABLE_CACHE:
            return _TABLE_CACHE[key]
    directory = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = _table_path(n, q, directory)
    table = None
    if use_disk_cache and path.is_file():
        try:
            table = SupercharTable.from_json(json.loads(path.read_text()))
        except (ValueError, KeyError, json.JSONDecodeError):
            table = None  # stale or corrupt cache entry; recompute
    if table is None:
        table = _compute_table(n, q)
        if use_disk_cache:
            _write_atomically(path, json.dumps(table.to_json()))
    with _TABLE_LOCK:
        _TABLE_CACHE.setdefault(key, table)
        return _TABLE_CACHE[key]


def _write_atomically(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", dir=path.parent, prefix=path.name, suffix=".tmp", delete=False
    )
    try:
        handle.write(text)
        handle.close()
        os.replace(handle.name, path)
    except BaseException:
        handle.close()
        if os.path.exists(handle.name):
            os.unlink(handle.name)
        raise


def clear_table_cache() -> None:
    with _TABLE_LOCK:
        _TABLE_CACHE.clear()


# ---------------------------------------------------------------------------
# basis change and inner product


def chi_to_kappa(x: AlgebraElement, **table_options) -> AlgebraElement:
    """chi^lam = sum_mu table[lam][mu] kappa_mu, per grade."""
    if x.basis != "chi":
        raise ValueError(f"expected a chi element, got basis {x.basis!r}")
    out = AlgebraElement.zero(x.q, "kappa")
    for idx, coeff in x.terms.items():
        table = supercharacter_table(idx.grade, x.q, **table_options)
        row = table.values[table.index(idx.partition)]
        terms = {
            BasisIndex("kappa", idx.grade, mu): coeff * row[j]
            for j, mu in enumerate(table.order)
        }
        out = out + AlgebraElement(x.q, "kappa", terms)
    return out


def kappa_to_chi(x: AlgebraElement, **table_options) -> AlgebraElement:
    """Inverse basis change via exact table inversion, per grade."""
    if x.basis != "kappa":
        raise ValueError(f"expected a kappa element, got basis {x.basis!r}")
    out = AlgebraElement.zero(x.q, "chi")
    for idx, coeff in x.terms.items():
        table = supercharacter_table(idx.grade, x.q, **table_options)
        row = table.inverse()[table.index(idx.partition)]
        terms = {
            BasisIndex("chi", idx.grade, lam): coeff * row[j]
            for j, lam in enumerate(table.order)
        }
        out = out + AlgebraElement(x.q, "chi", terms)
    return out


def _chi_product(q: int, a: BasisIndex, b: BasisIndex) -> AlgebraElement:
    ka = chi_to_kappa(AlgebraElement(q, "chi", {a: 1}))
    kb = chi_to_kappa(AlgebraElement(q, "chi", {b: 1}))
    return kappa_to_chi(product(ka, kb))


def _chi_coproduct(q: int, a: BasisIndex) -> TensorElement:
    inner = coproduct(chi_to_kappa(AlgebraElement(q, "chi", {a: 1})))
    out = TensorElement.zero(q, "chi")
    for (left, right), coeff in inner.terms.items():
        chi_left = kappa_to_chi(AlgebraElement(q, "kappa", {left: 1}))
        chi_right = kappa_to_chi(AlgebraElement(q, "kappa", {right: 1}))
        out = out + TensorElement.tensor(chi_left, chi_right).scale(coeff)
    return out


def inner_product(x: AlgebraElement, y: AlgebraElement, **table_options) -> CycRational:
    """The class-function inner product, conjugate-linear in its second slot.

    Computed per grade as (1/|G|) sum over superclasses of
    size * x(superclass) * conj(y(superclass)); cross-grade pairs give 0.
    """
    if x.q != y.q:
        raise ValueError(f"q mismatch: {x.q} vs {y.q}")
    q = x.q
    if x.basis == "chi":
        x = chi_to_kappa(x, **table_options)
    if y.basis == "chi":
        y = chi_to_kappa(y, **table_options)
    if x.basis != "kappa" or y.basis != "kappa":
        raise ValueError("inner products are defined for kappa/chi elements")
    total = CycRational.zero(q)
    for n in sorted(x.grades() & y.grades()):
        table = supercharacter_table(n, q, **table_options)
        scale = Fraction(1, table.group_order)
        for j, mu in enumerate(table.order):
            idx = BasisIndex("kappa", n, mu)
            cx = x.terms.get(idx)
            cy = y.terms.get(idx)
            if cx is None or cy is None:
                continue
            total = total + cx * cy.conj() * CycRational.from_rational(
                q, scale * table.class_sizes[j]
            )
    return total


# ---------------------------------------------------------------------------
# filtration by arc length


def filtration_membership(lam: LabeledSetPartition, k: int) -> bool:
    """True when every arc has length right - left at most k."""
    return all(a.right - a.left <= k for a in lam.arcs)


def is_linear_index(lam: LabeledSetPartition) -> bool:
    """True when every arc joins adjacent positions (length exactly 1)."""
    return all(a.right - a.left == 1 for a in lam.arcs)


def interval_chain(k: int) -> LabeledSetPartition:
    """The chain 1 -> 2 -> ... -> k with unit labels, on ground set [k]."""
    return LabeledSetPartition(k, ((i, i + 1, 1) for i in range(1, k)))


register_basis("kappa", product=_kappa_product, coproduct=lambda q, a: kappa_coproduct_terms(q, a.partition))
register_basis("chi", product=_chi_product, coproduct=_chi_coproduct)
