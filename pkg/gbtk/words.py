"""Words in pi_1 of theta graphs and in free groups.

A theta word over ``Θ_n`` is a sequence of letters ``γ(i, j)^{±1}``. Its
normal form comes from the free group of rank ``n`` via
``γ(i, j) ↦ x_i x_j^{-1}``, which is injective on ``π₁(Θ_n, v∞)``; a
theta word is trivial exactly when its encoding freely reduces to the
empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .graph import Graph, valence


Letter = Tuple[int, int, int]
"""``(i, j, exponent)`` for ``γ(i, j)^exponent``."""

_THETA_TOKEN = re.compile(r"^g(?:(\d)(\d)|\((\d+),(\d+)\))(?:\^(-?1))?$")
_FREE_TOKEN = re.compile(r"^x(\d+)(?:\^(-?1))?$")
_IDENTITY_TOKENS = {"", "1", "e"}


@dataclass(frozen=True)
class ThetaWord:
    n: int
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"theta graph needs at least 2 arms, got n={self.n}")
        for i, j, exponent in self.letters:
            if not (1 <= i <= self.n and 1 <= j <= self.n) or i == j:
                raise ValueError(f"invalid generator g({i},{j}) for n={self.n}")
            if exponent not in (1, -1):
                raise ValueError(f"letter exponent must be ±1, got {exponent}")

    @classmethod
    def identity(cls, n: int) -> "ThetaWord":
        return cls(n, ())

    @classmethod
    def gamma(cls, n: int, i: int, j: int, exponent: int = 1) -> "ThetaWord":
        return cls(n, ((i, j, exponent),))

    @classmethod
    def product(cls, n: int, pairs: Iterable[Tuple[int, int]]) -> "ThetaWord":
        """γ(i1, j1) γ(i2, j2) ... from index pairs."""
        return cls(n, tuple((i, j, 1) for i, j in pairs))

    def _check_same(self, other: "ThetaWord") -> None:
        if other.n != self.n:
            raise ValueError(f"cannot combine words over Θ_{self.n} and Θ_{other.n}")

    def __mul__(self, other: "ThetaWord") -> "ThetaWord":
        self._check_same(other)
        return ThetaWord(self.n, self.letters + other.letters)

    def inverse(self) -> "ThetaWord":
        return ThetaWord(self.n, tuple((i, j, -e) for i, j, e in reversed(self.letters)))

    def __pow__(self, power: int) -> "ThetaWord":
        base = self if power >= 0 else self.inverse()
        return ThetaWord(self.n, base.letters * abs(power))

    def conjugate(self, by: "ThetaWord") -> "ThetaWord":
        """``by · self · by⁻¹``."""
        return by * self * by.inverse()

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_theta_word(self)


@dataclass(frozen=True)
class FreeWord:
    """Word in ``x_1 .. x_rank``; letter ``+i`` is ``x_i`` and ``-i`` is ``x_i^{-1}``."""

    rank: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"free group rank must be positive, got {self.rank}")
        for letter in self.letters:
            if letter == 0 or abs(letter) > self.rank:
                raise ValueError(f"letter {letter} out of range for rank {self.rank}")

    @property
    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self.letters, self.letters[1:]))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        if other.rank != self.rank:
            raise ValueError(f"cannot multiply words of rank {self.rank} and {other.rank}")
        return reduce(FreeWord(self.rank, self.letters + other.letters))

    def inverse(self) -> "FreeWord":
        return FreeWord(self.rank, tuple(-a for a in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_free_word(self)


@dataclass(frozen=True)
class ProductWord:
    """Element of ∏_v π₁(Θ_{d(v)}, v∞), one theta word per essential vertex."""

    components: Dict[str, ThetaWord] = field(default_factory=dict)

    def check(self, g: Graph) -> None:
        for v, word in self.components.items():
            if word.n != valence(g, v):
                raise ValueError(
                    f"component at {v!r} lives over Θ_{word.n} but d({v})={valence(g, v)}"
                )

    def is_trivial(self) -> bool:
        return all(is_trivial(w) for w in self.components.values())

    def __mul__(self, other: "ProductWord") -> "ProductWord":
        if set(self.components) != set(other.components):
            raise ValueError("product words index different vertex sets")
        return ProductWord({v: self.components[v] * other.components[v] for v in self.components})


def reduce_letters(letters: Iterable[int]) -> Tuple[int, ...]:
    """Free reduction of signed letters (stack based, linear time)."""
    stack: List[int] = []
    for letter in letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def reduce(w: FreeWord) -> FreeWord:
    return FreeWord(w.rank, reduce_letters(w.letters))


def encode(w: ThetaWord) -> FreeWord:
    """Reduced image under γ(i, j) ↦ x_i x_j^{-1}."""
    raw: List[int] = []
    for i, j, exponent in w.letters:
        if exponent == 1:
            raw.extend((i, -j))
        else:
            raw.extend((j, -i))
    return FreeWord(w.n, reduce_letters(raw))


def is_trivial(w: ThetaWord) -> bool:
    return not encode(w).letters


# Triviality is invariant under conjugation.
is_conjugate_trivial = is_trivial


def abelianize(w: ThetaWord) -> Tuple[int, ...]:
    """Exponent sums of ``encode(w)`` in x_1 .. x_n; always sums to zero."""
    counts = np.zeros(w.n + 1, dtype=np.int64)
    letters = np.asarray(encode(w).letters, dtype=np.int64)
    if letters.size:
        np.add.at(counts, np.abs(letters), np.sign(letters))
    return tuple(int(c) for c in counts[1:])


def _basis_path(i: int, j: int) -> List[int]:
    # γ(i, j) over the basis b_m = γ(m, m+1)
    if i < j:
        return list(range(i, j))
    return [-m for m in range(i - 1, j - 1, -1)]


def free_generator_decomposition(w: ThetaWord) -> Tuple[int, ...]:
    """Reduced word in the free basis b_m = γ(m, m+1), 1 ≤ m ≤ n-1.

    Letter ``+m`` is ``b_m`` and ``-m`` its inverse. Reduced encodings alternate
    ``x_a x_b^{-1}``, so each such pair reads back as γ(a, b).
    """
    letters = encode(w).letters
    basis: List[int] = []
    for t in range(0, len(letters), 2):
        a, b = letters[t], -letters[t + 1]
        if a <= 0 or b <= 0:
            raise ValueError(f"encoding of {w} does not alternate; not in the image of π₁(Θ_n)")
        basis.extend(_basis_path(a, b))
    return reduce_letters(basis)


def from_basis(n: int, basis_word: Sequence[int]) -> ThetaWord:
    """Theta word for a word in the basis b_m = γ(m, m+1)."""
    return ThetaWord(n, tuple((abs(m), abs(m) + 1, 1 if m > 0 else -1) for m in basis_word))


def embed(w: ThetaWord, n: int) -> ThetaWord:
    """Image under the inclusion Θ_{w.n} → Θ_n induced by {1..w.n} ⊆ {1..n}."""
    if n < w.n:
        raise ValueError(f"cannot embed Θ_{w.n} into Θ_{n}")
    return ThetaWord(n, w.letters)


def _exponent_suffix(exponent: int) -> str:
    return "" if exponent == 1 else "^-1"


def format_theta_word(w: ThetaWord) -> str:
    if not w.letters:
        return "1"
    tokens = []
    for i, j, exponent in w.letters:
        name = f"g{i}{j}" if i < 10 and j < 10 else f"g({i},{j})"
        tokens.append(name + _exponent_suffix(exponent))
    return " ".join(tokens)


def parse_theta_word(text: str, n: int) -> ThetaWord:
    """Parse ``"g12 g23^-1"``; ``g(10,11)`` spells two-digit indices."""
    if text.strip() in _IDENTITY_TOKENS:
        return ThetaWord.identity(n)
    letters: List[Letter] = []
    for token in text.split():
        match = _THETA_TOKEN.match(token)
        if match is None:
            raise ValueError(f"cannot parse theta letter {token!r}")
        i = int(match.group(1) or match.group(3))
        j = int(match.group(2) or match.group(4))
        exponent = int(match.group(5) or 1)
        letters.append((i, j, exponent))
    return ThetaWord(n, tuple(letters))


def format_free_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"x{abs(a)}" + ("" if a > 0 else "^-1") for a in w.letters)


def parse_free_word(text: str, rank: int) -> FreeWord:
    """Parse ``"x1 x2^-1"`` without reducing it."""
    if text.strip() in _IDENTITY_TOKENS:
        return FreeWord(rank, ())
    letters: List[int] = []
    for token in text.split():
        match = _FREE_TOKEN.match(token)
        if match is None:
            raise ValueError(f"cannot parse free letter {token!r}")
        index = int(match.group(1))
        letters.append(index if int(match.group(2) or 1) == 1 else -index)
    return FreeWord(rank, tuple(letters))


def format_basis_word(basis_word: Sequence[int]) -> str:
    if not basis_word:
        return "1"
    return " ".join(f"b{abs(m)}" + ("" if m > 0 else "^-1") for m in basis_word)
