"""Finitely generated semigroups given in closed form.

Every model exposes the same small surface: ``multiply``, ``generators``,
``names`` (generator labels), ``monoid``, ``format``/``parse`` for the
canonical text form of an element, and ``to_dict`` for the JSON document.

Elements are plain hashable values in canonical form:

* presented semigroups: normal-form letter tuples
* integer-tuple semigroups (``Z^k``, ``N_0^k``): an ``int`` when ``k == 1``,
  otherwise a tuple of ints
* grid-flag semigroups: ``(x_1, ..., x_k, f)`` with ``f`` in ``{0, 1}``
* Rees matrix semigroups: ``(i, g, lam)`` with 1-based ``i`` and ``lam``
* products: pairs; duals: elements of the base; finite tables: ints

Elements are ordered by the length of their text form, then the text itself
(see :func:`element_key`).
"""

from __future__ import annotations

import ast
import copy
import itertools
import string
from typing import Any, Sequence

from .words import Alphabet, RewriteRule, RewriteSystem

__all__ = [
    "Semigroup",
    "PresentedSemigroup",
    "IntegerTupleSemigroup",
    "GridFlagSemigroup",
    "ReesMatrixSemigroup",
    "ProductSemigroup",
    "DualSemigroup",
    "FiniteTableSemigroup",
    "ElementError",
    "multiply",
    "dual_spec",
    "rees_generating_set",
    "is_idempotent",
    "element_key",
    "spec_from_dict",
    "default_names",
]


class ElementError(ValueError):
    """An element does not belong to the semigroup it was used with."""


def default_names(count: int) -> tuple[str, ...]:
    if count <= 26:
        return tuple(string.ascii_lowercase[:count])
    return tuple(f"g{i}" for i in range(count))


class Semigroup:
    kind = "abstract"
    monoid = False

    def __init__(self, generators, names=None):
        gens = []
        for g in generators:
            if g not in gens:
                gens.append(g)
        if not gens:
            raise ValueError("a semigroup needs at least one generator")
        self.generators = tuple(gens)
        self.names = tuple(names) if names is not None else default_names(len(gens))
        if len(self.names) != len(self.generators):
            raise ValueError("one name per generator required")
        self.alphabet = Alphabet(self.names)

    # subclasses implement these
    def multiply(self, x, y):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def _body(self) -> dict:
        raise NotImplementedError

    def identity(self):
        return None

    @property
    def is_group(self) -> bool:
        return False

    def inverse(self, x):
        raise ElementError(f"{self.kind} semigroup is not a group")

    def to_dict(self) -> dict:
        d = {"kind": self.kind}
        d.update(self._body())
        d["names"] = list(self.names)
        return d

    def check(self, x):
        if not self.contains(x):
            raise ElementError(f"{x!r} is not an element of this {self.kind} semigroup")
        return x

    def key(self, x):
        s = self.format(x)
        return (len(s), s)

    def evaluate(self, letters: Sequence[int]):
        """Product of the generators indexed by ``letters``."""
        if not letters:
            e = self.identity()
            if e is None or not self.monoid:
                raise ElementError("empty product in a semigroup without identity")
            return e
        acc = self.generators[letters[0]]
        for i in letters[1:]:
            acc = self.multiply(acc, self.generators[i])
        return acc

    def with_generators(self, generators, names=None) -> "Semigroup":
        """Same multiplication, different generating set."""
        new = copy.copy(self)
        Semigroup.__init__(new, [self.check(g) for g in generators], names)
        return new

    def __eq__(self, other):
        return type(self) is type(other) and self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash(repr(self.to_dict()))

    def __repr__(self):
        return f"{type(self).__name__}({self.to_dict()!r})"


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def _tuplify(x):
    if isinstance(x, list):
        return tuple(_tuplify(v) for v in x)
    return x


def _fmt_tuple(t) -> str:
    if isinstance(t, tuple):
        return "(" + ",".join(_fmt_tuple(v) for v in t) + ")"
    return str(t)


def element_key(spec: Semigroup, x):
    return spec.key(x)


class PresentedSemigroup(Semigroup):
    """Semigroup (or monoid) defined by a shortlex-reducing rewriting system.

    The rewriting system is trusted to be complete; use
    :meth:`RewriteSystem.is_locally_confluent` to certify it.
    """

    kind = "presented"

    def __init__(self, system: RewriteSystem, monoid: bool = True, names=None):
        self.system = system
        self.monoid = monoid
        gens = [system.normal_form((i,)) for i in range(len(system.alphabet))]
        super().__init__(gens, names if names is not None else system.alphabet.symbols)
        self._word_alphabet = system.alphabet

    def multiply(self, x, y):
        return self.system.normal_form(x + y)

    def identity(self):
        return () if self.monoid else None

    def contains(self, x) -> bool:
        if not isinstance(x, tuple):
            return False
        n = len(self.system.alphabet)
        if not all(isinstance(i, int) and 0 <= i < n for i in x):
            return False
        return (bool(x) or self.monoid) and self.system.is_irreducible(x)

    def format(self, x) -> str:
        return self._word_alphabet.format(x) if x else "ε"

    def parse(self, text: str):
        w = self.system.normal_form(self._word_alphabet.parse(text))
        return self.check(w)

    def _body(self):
        fmt = self._word_alphabet.format
        d = {
            "alphabet": list(self._word_alphabet.symbols),
            "rules": [[fmt(r.lhs), fmt(r.rhs)] for r in self.system.rules],
            "monoid": self.monoid,
        }
        letters = tuple(self.system.normal_form((i,)) for i in range(len(self._word_alphabet)))
        if self.generators != letters:
            d["generators"] = [self.format(g) for g in self.generators]
        return d


class IntegerTupleSemigroup(Semigroup):
    """Subsemigroup of ``Z^k`` under addition, generated by integer tuples.

    Covers ``N_0^k`` (non-negative generators), ``Z^k`` (generators closed
    under negation, then :attr:`is_group` holds), and mixed families such as
    ``Z^2 x N_0``.
    """

    kind = "commutative_monoid"

    def __init__(self, k: int, generators, monoid: bool = True, names=None):
        if k < 1:
            raise ValueError("dimension must be positive")
        self.k = k
        gens = [self._coerce(g) for g in generators]
        self.monoid = monoid
        super().__init__(gens, names)
        vecs = [self._vec(g) for g in self.generators]
        # coordinates that can never go negative / positive
        self._nonneg = [all(v[c] >= 0 for v in vecs) for c in range(k)]
        self._nonpos = [all(v[c] <= 0 for v in vecs) for c in range(k)]

    def _coerce(self, g):
        if isinstance(g, int) and not isinstance(g, bool):
            g = (g,)
        g = tuple(int(v) for v in g)
        if len(g) != self.k:
            raise ValueError(f"generator {g} does not have dimension {self.k}")
        return g[0] if self.k == 1 else g

    def _vec(self, x):
        return (x,) if self.k == 1 else x

    def multiply(self, x, y):
        if self.k == 1:
            return x + y
        return tuple(a + b for a, b in zip(x, y))

    def identity(self):
        return 0 if self.k == 1 else (0,) * self.k

    @property
    def is_group(self) -> bool:
        gens = set(self.generators)
        zero = self.identity()
        return all(self._neg(g) in gens or g == zero for g in self.generators)

    def _neg(self, x):
        return -x if self.k == 1 else tuple(-v for v in x)

    def inverse(self, x):
        if not self.is_group:
            return super().inverse(x)
        return self._neg(x)

    def contains(self, x) -> bool:
        if self.k == 1:
            if not isinstance(x, int) or isinstance(x, bool):
                return False
            v = (x,)
        else:
            if not (isinstance(x, tuple) and len(x) == self.k and all(isinstance(c, int) for c in x)):
                return False
            v = x
        if not self.monoid and not self.is_group and v == (0,) * self.k:
            return False
        return all((not nn or c >= 0) and (not np_ or c <= 0)
                   for c, nn, np_ in zip(v, self._nonneg, self._nonpos))

    def format(self, x) -> str:
        return str(x) if self.k == 1 else _fmt_tuple(x)

    def parse(self, text: str):
        v = ast.literal_eval(text.strip())
        if isinstance(v, list):
            v = tuple(v)
        return self.check(v)

    def _body(self):
        return {"k": self.k, "generators": [_jsonable(g) for g in self.generators], "monoid": self.monoid}


class GridFlagSemigroup(Semigroup):
    """``Z^k x {0,1}``: integer coordinates add, the flag multiplies as a real number."""

    kind = "grid_flag"

    def __init__(self, k: int, generators, monoid: bool = False, names=None):
        self.k = k
        gens = []
        for g in generators:
            g = tuple(int(v) for v in g)
            if len(g) != k + 1 or g[-1] not in (0, 1):
                raise ValueError(f"grid_flag generator {g} must be k integers plus a 0/1 flag")
            gens.append(g)
        self.monoid = monoid
        super().__init__(gens, names)

    def multiply(self, x, y):
        return tuple(a + b for a, b in zip(x[:-1], y[:-1])) + (x[-1] * y[-1],)

    def identity(self):
        return (0,) * self.k + (1,)

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == self.k + 1
                and all(isinstance(c, int) for c in x) and x[-1] in (0, 1))

    def format(self, x) -> str:
        return _fmt_tuple(x)

    def parse(self, text: str):
        v = ast.literal_eval(text.strip())
        return self.check(tuple(v))

    def _body(self):
        return {"k": self.k, "generators": [list(g) for g in self.generators], "monoid": self.monoid}


class ReesMatrixSemigroup(Semigroup):
    """``M[G; I, Lambda; P]`` with ``|I| = n``, ``|Lambda| = m`` and ``P`` an ``m x n`` matrix.

    Multiplication is ``(i, g, lam)(j, h, mu) = (i, g p[lam][j] h, mu)``.
    Without explicit generators, :func:`rees_generating_set` is used.
    """

    kind = "rees_matrix"

    def __init__(self, group: Semigroup, n: int, m: int, P, X=None, generators=None, names=None):
        if n < 1 or m < 1:
            raise ValueError("index sets must be non-empty")
        P = [[group.check(_tuplify(v)) for v in row] for row in P]
        if len(P) != m or any(len(row) != n for row in P):
            raise ValueError(f"sandwich matrix must have shape {m}x{n} (|Lambda| x |I|)")
        self.group, self.n, self.m = group, n, m
        self.P = tuple(tuple(row) for row in P)
        self.X = tuple(group.check(_tuplify(x)) for x in X) if X is not None else None
        if generators is None:
            if self.X is None:
                raise ValueError("rees_matrix needs either X or explicit generators")
            generators = _rees_generators(group, n, m, self.P, self.X)
        gens = [self._coerce(g) for g in generators]
        super().__init__(gens, names)

    def _coerce(self, g):
        g = _tuplify(g)
        if not (isinstance(g, tuple) and len(g) == 3):
            raise ValueError(f"Rees element {g!r} must be a triple")
        return self.check(g)

    def multiply(self, x, y):
        i, g, lam = x
        j, h, mu = y
        G = self.group
        return (i, G.multiply(G.multiply(g, self.P[lam - 1][j - 1]), h), mu)

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == 3 and isinstance(x[0], int)
                and isinstance(x[2], int) and 1 <= x[0] <= self.n and 1 <= x[2] <= self.m
                and self.group.contains(x[1]))

    def format(self, x) -> str:
        i, g, lam = x
        return f"({i},{self.group.format(g)},{lam})"

    def parse(self, text: str):
        return self._coerce(ast.literal_eval(text.strip()))

    def _body(self):
        d = {
            "group": self.group.to_dict(),
            "n": self.n,
            "m": self.m,
            "P": [[_jsonable(v) for v in row] for row in self.P],
            "generators": [_jsonable(g) for g in self.generators],
        }
        if self.X is not None:
            d["X"] = [_jsonable(x) for x in self.X]
        return d


def _rees_generators(group: Semigroup, n, m, P, X):
    if not group.is_group:
        raise ElementError("Rees generating set needs a group (inverses of sandwich entries)")
    e = group.identity()
    if e not in X:
        raise ValueError("the group generating set X must contain the identity")
    out = set()
    for x in X:
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            for lam, mu in itertools.product(range(1, m + 1), repeat=2):
                out.add((i, group.multiply(group.inverse(P[mu - 1][j - 1]), x), lam))
    fmt = lambda t: f"({t[0]},{group.format(t[1])},{t[2]})"
    return sorted(out, key=lambda t: (len(fmt(t)), fmt(t)))


def rees_generating_set(spec: ReesMatrixSemigroup, X=None) -> list:
    """``{(i, p[mu][j]^-1 x, lam)}`` over ``x in X``, ``i, j in I``, ``lam, mu in Lambda``."""
    if not isinstance(spec, ReesMatrixSemigroup):
        raise ElementError("rees_generating_set needs a rees_matrix spec")
    X = spec.X if X is None else tuple(spec.group.check(_tuplify(x)) for x in X)
    if X is None:
        raise ValueError("no group generating set X given")
    return _rees_generators(spec.group, spec.n, spec.m, spec.P, X)


class ProductSemigroup(Semigroup):
    kind = "product"

    def __init__(self, left: Semigroup, right: Semigroup, generators=None, names=None):
        self.left, self.right = left, right
        self.monoid = left.monoid and right.monoid
        if generators is None:
            if self.monoid:
                e1, e2 = left.identity(), right.identity()
                generators = [(a, e2) for a in left.generators] + [(e1, b) for b in right.generators]
            else:
                generators = list(itertools.product(left.generators, right.generators))
        gens = [self.check(tuple(_tuplify(g)) if isinstance(g, list) else g) for g in generators]
        super().__init__(gens, names)

    def multiply(self, x, y):
        return (self.left.multiply(x[0], y[0]), self.right.multiply(x[1], y[1]))

    def identity(self):
        return (self.left.identity(), self.right.identity()) if self.monoid else None

    @property
    def is_group(self):
        return self.left.is_group and self.right.is_group

    def inverse(self, x):
        return (self.left.inverse(x[0]), self.right.inverse(x[1]))

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == 2
                and self.left.contains(x[0]) and self.right.contains(x[1]))

    def format(self, x) -> str:
        return f"<{self.left.format(x[0])}|{self.right.format(x[1])}>"

    def parse(self, text: str):
        text = text.strip()
        if not (text.startswith("<") and text.endswith(">")):
            raise ElementError(f"product element {text!r} must look like <x|y>")
        inner, depth = text[1:-1], 0
        for pos, ch in enumerate(inner):
            if ch == "<":
                depth += 1
            elif ch == ">":
                depth -= 1
            elif ch == "|" and depth == 0:
                return self.check((self.left.parse(inner[:pos]), self.right.parse(inner[pos + 1:])))
        raise ElementError(f"product element {text!r} has no top-level '|'")

    def _body(self):
        return {
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
            "generators": [[_jsonable(a), _jsonable(b)] for a, b in self.generators],
        }


class DualSemigroup(Semigroup):
    """The dual ``S*``: same set, ``x * y = y x``, same generators."""

    kind = "dual"

    def __init__(self, base: Semigroup, generators=None, names=None):
        self.base = base
        self.monoid = base.monoid
        gens = base.generators if generators is None else [base.check(_tuplify(g)) for g in generators]
        if names is None and generators is None:
            names = base.names
        super().__init__(gens, names)

    def multiply(self, x, y):
        return self.base.multiply(y, x)

    def identity(self):
        return self.base.identity()

    @property
    def is_group(self):
        return self.base.is_group

    def inverse(self, x):
        return self.base.inverse(x)

    def contains(self, x) -> bool:
        return self.base.contains(x)

    def format(self, x) -> str:
        return self.base.format(x)

    def parse(self, text: str):
        return self.base.parse(text)

    def _body(self):
        return {"base": self.base.to_dict(), "generators": [_jsonable(g) for g in self.generators]}


class FiniteTableSemigroup(Semigroup):
    """Finite semigroup on ``{0, ..., n-1}`` given by its Cayley table."""

    kind = "finite_table"

    def __init__(self, table, generators=None, monoid: bool = False, names=None):
        t = [list(map(int, row)) for row in table]
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise ValueError("multiplication table must be square and non-empty")
        if any(not 0 <= v < n for row in t for v in row):
            raise ValueError("table entries out of range")
        for x, y, z in itertools.product(range(n), repeat=3):
            if t[t[x][y]][z] != t[x][t[y][z]]:
                raise ValueError(f"table is not associative at ({x}, {y}, {z})")
        self.table = tuple(tuple(row) for row in t)
        self.size = n
        self._identity = next(
            (e for e in range(n) if all(t[e][x] == x and t[x][e] == x for x in range(n))), None
        )
        if monoid and self._identity is None:
            raise ValueError("monoid flag set but the table has no identity")
        self.monoid = monoid
        gens = list(range(n)) if generators is None else [int(g) for g in generators]
        super().__init__(gens, names)
        if self._closure() != set(range(n)):
            raise ValueError("generators do not generate the whole table")

    def _closure(self):
        seen = set(self.generators)
        if self.monoid:
            seen.add(self._identity)
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = self.table[x][g]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return seen

    def multiply(self, x, y):
        return self.table[x][y]

    def identity(self):
        return self._identity

    @property
    def is_group(self):
        e = self._identity
        if e is None:
            return False
        return all(any(self.table[x][y] == e for y in range(self.size)) for x in range(self.size))

    def inverse(self, x):
        if not self.is_group:
            return super().inverse(x)
        return next(y for y in range(self.size) if self.table[x][y] == self._identity)

    def contains(self, x) -> bool:
        return isinstance(x, int) and not isinstance(x, bool) and 0 <= x < self.size

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        return self.check(int(text))

    def _body(self):
        return {"table": [list(r) for r in self.table], "generators": list(self.generators),
                "monoid": self.monoid}


def multiply(spec: Semigroup, x, y):
    """Canonical product of two elements, checking both belong to ``spec``."""
    return spec.multiply(spec.check(x), spec.check(y))


def dual_spec(spec: Semigroup) -> DualSemigroup:
    return DualSemigroup(spec)


def is_idempotent(spec: Semigroup, x) -> bool:
    return spec.multiply(x, x) == x


def spec_from_dict(d: dict) -> Semigroup:
    """Build a semigroup from its JSON document (see ``Semigroup.to_dict``)."""
    if not isinstance(d, dict) or "kind" not in d:
        raise ValueError("spec document needs a 'kind' field")
    kind = d["kind"]
    names = d.get("names")
    if kind == "presented":
        rules = d.get("rules", [])
        symbols = d.get("alphabet")
        if symbols is None:
            symbols = sorted({ch for rule in rules for side in rule for ch in side})
            if not symbols:
                raise ValueError("presented: give 'alphabet' when there are no rules")
        alphabet = Alphabet(tuple(symbols))
        parsed = []
        for pos, rule in enumerate(rules):
            if len(rule) != 2:
                raise ValueError(f"rules[{pos}]: expected [lhs, rhs]")
            try:
                parsed.append(RewriteRule(alphabet.parse(rule[0]), alphabet.parse(rule[1])))
            except ValueError as exc:
                raise ValueError(f"rules[{pos}]: {exc}") from None
        system = RewriteSystem(alphabet, tuple(parsed), int(d.get("max_steps", 10**6)))
        spec = PresentedSemigroup(system, bool(d.get("monoid", True)), None)
        if "generators" in d:
            return spec.with_generators([spec.parse(w) for w in d["generators"]], names)
        return spec.with_generators(spec.generators, names) if names is not None else spec
    if kind == "commutative_monoid":
        return IntegerTupleSemigroup(int(d["k"]), d["generators"], bool(d.get("monoid", True)), names)
    if kind == "grid_flag":
        return GridFlagSemigroup(int(d["k"]), d["generators"], bool(d.get("monoid", False)), names)
    if kind == "rees_matrix":
        group = spec_from_dict(d["group"])
        P = d.get("P")
        if not isinstance(P, list) or not all(isinstance(r, list) for r in P):
            raise ValueError("rees_matrix: 'P' must be a list of rows")
        return ReesMatrixSemigroup(group, int(d["n"]), int(d["m"]), P, d.get("X"),
                                   d.get("generators"), names)
    if kind == "product":
        return ProductSemigroup(spec_from_dict(d["left"]), spec_from_dict(d["right"]),
                                d.get("generators"), names)
    if kind == "dual":
        return DualSemigroup(spec_from_dict(d["base"]), d.get("generators"), names)
    if kind == "finite_table":
        return FiniteTableSemigroup(d["table"], d.get("generators"), bool(d.get("monoid", False)), names)
    raise ValueError(f"unknown spec kind {kind!r}")
