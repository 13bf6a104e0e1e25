"""Words over a finite alphabet and shortlex string rewriting.

A :class:`RewriteSystem` holds rules ``lhs -> rhs`` with ``rhs`` strictly
shortlex-smaller than ``lhs``, which guarantees termination.  Reduction is
deterministic (leftmost occurrence, first matching rule), and
:meth:`RewriteSystem.critical_pairs` checks local confluence, which together
with termination certifies that the system is complete.

Example:

    >>> sys = RewriteSystem.from_strings("ab", [("aba", "b"), ("bba", "abb")])
    >>> sys.format(sys.normal_form(sys.parse("bbaa")))
    'aabb'
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

__all__ = [
    "Alphabet",
    "Word",
    "RewriteRule",
    "RewriteSystem",
    "CriticalPair",
    "ConfluenceReport",
    "AlphabetMismatch",
    "StepBudgetExceeded",
    "shortlex_less",
    "shortlex_key",
]

DEFAULT_MAX_STEPS = 10**6


class AlphabetMismatch(ValueError):
    pass


class StepBudgetExceeded(RuntimeError):
    """Raised when rewriting does not terminate within ``max_steps``."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(self.symbols))
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"alphabet symbols not distinct: {self.symbols}")
        for s in self.symbols:
            if not s or any(ch in s for ch in ".;=<>|") or s in ("1", "ε"):
                raise ValueError(f"bad generator name {s!r}")

    def __len__(self):
        return len(self.symbols)

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"unknown generator {symbol!r}; alphabet is {self.symbols}") from None

    def parse(self, text: str) -> tuple[int, ...]:
        """Letters of ``text``: plain characters, or ``.``-separated names."""
        text = text.strip()
        if text in ("", "1", "ε"):
            return ()
        if self.single_char and "." not in text:
            return tuple(self.index(ch) for ch in text)
        return tuple(self.index(part) for part in text.split("."))

    def format(self, letters: Sequence[int]) -> str:
        sep = "" if self.single_char else "."
        return sep.join(self.symbols[i] for i in letters)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        n = len(self.alphabet)
        for i in self.letters:
            if not 0 <= i < n:
                raise ValueError(f"letter index {i} out of range for {self.alphabet.symbols}")

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str) -> "Word":
        return cls(alphabet, alphabet.parse(text))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch("cannot concatenate words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def __str__(self):
        return self.alphabet.format(self.letters)


def shortlex_key(letters: Sequence[int]) -> tuple:
    return (len(letters), tuple(letters))


def shortlex_less(u: Word, v: Word) -> bool:
    """True iff ``u`` is shorter than ``v``, or equally long and lexicographically smaller."""
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch("shortlex comparison across alphabets")
    return shortlex_key(u.letters) < shortlex_key(v.letters)


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs:
            raise ValueError("rule left-hand side must be non-empty")
        if not shortlex_key(self.rhs) < shortlex_key(self.lhs):
            raise ValueError(f"rule {self.lhs} -> {self.rhs} is not shortlex-reducing")


@dataclass(frozen=True)
class CriticalPair:
    overlap: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    rules: tuple[int, int]


@dataclass(frozen=True)
class ConfluenceReport:
    confluent: bool
    pairs_checked: int
    unjoinable: tuple[CriticalPair, ...]

    def __bool__(self):
        return self.confluent


def _encode(letters: Iterable[int]) -> str:
    # letters packed into a str so that str.find does the occurrence search
    return "".join(chr(0x100 + i) for i in letters)


def _decode(s: str) -> tuple[int, ...]:
    return tuple(ord(ch) - 0x100 for ch in s)


@dataclass(frozen=True)
class RewriteSystem:
    alphabet: Alphabet
    rules: tuple[RewriteRule, ...] = ()
    max_steps: int = DEFAULT_MAX_STEPS
    _enc: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")
        n = len(self.alphabet)
        for r in self.rules:
            if any(not 0 <= i < n for i in r.lhs + r.rhs):
                raise AlphabetMismatch(f"rule {r} uses letters outside the alphabet")
        object.__setattr__(
            self, "_enc", tuple((_encode(r.lhs), _encode(r.rhs)) for r in self.rules)
        )

    @classmethod
    def from_strings(cls, symbols, rules, max_steps: int = DEFAULT_MAX_STEPS) -> "RewriteSystem":
        alphabet = Alphabet(tuple(symbols))
        parsed = [RewriteRule(alphabet.parse(l), alphabet.parse(r)) for l, r in rules]
        return cls(alphabet, tuple(parsed), max_steps)

    def parse(self, text: str) -> tuple[int, ...]:
        return self.alphabet.parse(text)

    def format(self, letters: Sequence[int]) -> str:
        return self.alphabet.format(letters)

    def _reduce_encoded(self, s: str) -> str:
        steps = 0
        while True:
            t = self._single_step(s)
            if t is None:
                return s
            steps += 1
            if steps > self.max_steps:
                raise StepBudgetExceeded(f"no normal form within {self.max_steps} steps")
            s = t

    def normal_form(self, w) -> tuple[int, ...]:
        """Irreducible form of ``w`` (a :class:`Word` or a letter tuple)."""
        letters = w.letters if isinstance(w, Word) else tuple(w)
        if isinstance(w, Word) and w.alphabet != self.alphabet:
            raise AlphabetMismatch("word is over a different alphabet")
        return _decode(self._reduce_encoded(_encode(letters)))

    def rewrite_steps(self, w: Sequence[int]) -> list[tuple[int, ...]]:
        """The full leftmost reduction sequence starting at ``w``."""
        s = _encode(w)
        out = [tuple(w)]
        while True:
            t = self._single_step(s)
            if t is None:
                return out
            if len(out) > self.max_steps:
                raise StepBudgetExceeded(f"no normal form within {self.max_steps} steps")
            s = t
            out.append(_decode(s))

    def _single_step(self, s: str):
        best_pos, best = -1, None
        for lhs, rhs in self._enc:
            pos = s.find(lhs)
            if pos != -1 and (best_pos == -1 or pos < best_pos):
                best_pos, best = pos, (lhs, rhs)
        if best is None:
            return None
        lhs, rhs = best
        return s[:best_pos] + rhs + s[best_pos + len(lhs):]

    def is_irreducible(self, w: Sequence[int]) -> bool:
        s = _encode(w)
        return not any(lhs in s for lhs, _ in self._enc)

    def one_step_reducts(self, w: Sequence[int]) -> set[tuple[int, ...]]:
        """Every word reachable from ``w`` by rewriting one occurrence of one rule."""
        out = set()
        w = tuple(w)
        for r in self.rules:
            k = len(r.lhs)
            for i in range(len(w) - k + 1):
                if w[i:i + k] == r.lhs:
                    out.add(w[:i] + r.rhs + w[i + k:])
        return out

    def critical_pairs(self) -> list[CriticalPair]:
        """All critical pairs from proper overlaps and inclusions of left-hand sides."""
        pairs = []
        for i, r1 in enumerate(self.rules):
            l1 = r1.lhs
            for j, r2 in enumerate(self.rules):
                l2 = r2.lhs
                # suffix of l1 overlapping a prefix of l2
                for k in range(1, min(len(l1), len(l2))):
                    if l1[-k:] == l2[:k]:
                        overlap = l1 + l2[k:]
                        pairs.append(CriticalPair(overlap, r1.rhs + l2[k:], l1[:-k] + r2.rhs, (i, j)))
                # l2 strictly inside l1
                if i != j and len(l2) <= len(l1):
                    for p in range(len(l1) - len(l2) + 1):
                        if l1[p:p + len(l2)] == l2:
                            pairs.append(
                                CriticalPair(l1, r1.rhs, l1[:p] + r2.rhs + l1[p + len(l2):], (i, j))
                            )
        return pairs

    def is_locally_confluent(self) -> ConfluenceReport:
        bad = []
        pairs = self.critical_pairs()
        for cp in pairs:
            a, b = self.normal_form(cp.left), self.normal_form(cp.right)
            if a != b:
                bad.append(CriticalPair(cp.overlap, a, b, cp.rules))
        return ConfluenceReport(not bad, len(pairs), tuple(bad))
