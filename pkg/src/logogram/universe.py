"""Fixed-length word universes ("slices") and cylinder operators.

A slice restricts a reference set of words to one length L over one
alphabet, which makes every quantifier in the calculus exhaustively
checkable. Words are packed into integers (base k, position 1 most
significant) so that ascending integer order is exactly the canonical
lexicographic order; partial strings restricted to a slice are packed the
same way in base k+1 with digit 0 for blank.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Iterator

from .strings import Alphabet, PartialString

# Hard cap on materialized universes; desk-scale analyses stay far below it.
MAX_UNIVERSE = 1 << 22

Pairs = tuple[tuple[int, int], ...]  # ((position, letter index), ...)


class DegenerateSliceError(ValueError):
    """The slice has no words satisfying its membership predicate."""


class Slice:
    """All words of one length over one alphabet, filtered by membership.

    ``membership`` may be ``"all"``, an explicit collection of words (texts
    or total strings), or a predicate on words. Slices are immutable;
    derived tables are cached on first use.
    """

    def __init__(self, alphabet: Alphabet, length: int,
                 membership: str | Iterable | Callable[[PartialString], bool] = "all",
                 label: str = ""):
        if length < 1:
            raise ValueError("length must be >= 1")
        k = len(alphabet)
        if k ** length > MAX_UNIVERSE:
            raise ValueError(f"universe of {k}^{length} words exceeds the supported size")
        self.alphabet = alphabet
        self.length = length
        self.label = label or f"{''.join(alphabet)}^{length}"
        self._word_weights = tuple(k ** (length - p) for p in range(1, length + 1))
        self._code_weights = tuple((k + 1) ** (length - p) for p in range(1, length + 1))
        self._e_ints: tuple[int, ...] | None = None
        self._e_set: frozenset[int] | None = None
        if membership == "all":
            self._kind = "all"
            self._predicate = None
        elif callable(membership):
            self._kind = "predicate"
            self._predicate = membership
        else:
            self._kind = "explicit"
            ints = sorted({self.int_of_word(self._as_word(w)) for w in membership})
            if not ints:
                raise DegenerateSliceError(f"{self.label}: empty word set")
            self._e_ints = tuple(ints)
            self._e_set = frozenset(ints)
            self._predicate = None

    def _as_word(self, w) -> PartialString:
        if isinstance(w, PartialString):
            return w
        return PartialString.parse(w, self.alphabet)

    # -- word packing ----------------------------------------------------

    @property
    def total_words(self) -> int:
        return len(self.alphabet) ** self.length

    @property
    def is_full(self) -> bool:
        return self._kind == "all"

    def int_of_word(self, word: PartialString) -> int:
        if word.domain != tuple(range(1, self.length + 1)):
            raise ValueError(f"not a word of length {self.length}: {word!r}")
        value = 0
        for (p, ch), w in zip(word.pairs, self._word_weights):
            value += self.alphabet.index(ch) * w
        return value

    def word_of_int(self, value: int) -> PartialString:
        letters = self.alphabet.letters
        k = len(letters)
        cells = []
        for p in range(self.length, 0, -1):
            value, d = divmod(value, k)
            cells.append((p, letters[d]))
        return PartialString(tuple(reversed(cells)))

    def text_of_int(self, value: int) -> str:
        letters = self.alphabet.letters
        k = len(letters)
        cells = []
        for _ in range(self.length):
            value, d = divmod(value, k)
            cells.append(letters[d])
        return "".join(reversed(cells))

    def word(self, text: str) -> PartialString:
        """Parse a total word of this slice from text."""
        ps = PartialString.parse(text, self.alphabet)
        if len(text) != self.length or len(ps) != self.length:
            raise ValueError(f"not a word of length {self.length}: {text!r}")
        return ps

    # -- membership ------------------------------------------------------

    def _materialize(self) -> None:
        if self._e_ints is not None:
            return
        if self._kind == "all":
            self._e_ints = tuple(range(self.total_words))
        else:
            self._e_ints = tuple(
                i for i in range(self.total_words)
                if self._predicate(self.word_of_int(i)))
            if not self._e_ints:
                raise DegenerateSliceError(f"{self.label}: membership predicate rejects every word")
            self._e_set = frozenset(self._e_ints)

    def word_ints(self) -> tuple[int, ...]:
        self._materialize()
        return self._e_ints

    def e_set(self) -> frozenset[int] | None:
        """Membership as a set of packed words, or None for a full cube."""
        if self._kind == "all":
            return None
        self._materialize()
        return self._e_set

    def word_count(self) -> int:
        return len(self.word_ints())

    def contains_int(self, value: int) -> bool:
        if self._kind == "all":
            return 0 <= value < self.total_words
        return value in self.e_set()

    def contains(self, word: PartialString) -> bool:
        return self.contains_int(self.int_of_word(word))

    # -- partial strings against this slice ------------------------------

    def pairs_of(self, string: PartialString) -> Pairs | None:
        """Packed (position, letter index) pairs, or None when the string
        cannot occur in any word of this length (position or letter out of
        range)."""
        out = []
        for p, ch in string.pairs:
            if p > self.length or ch not in self.alphabet:
                return None
            out.append((p, self.alphabet.index(ch)))
        return tuple(out)

    def string_of_pairs(self, pairs: Pairs) -> PartialString:
        letters = self.alphabet.letters
        return PartialString(tuple((p, letters[d]) for p, d in pairs))

    def code_of_pairs(self, pairs: Pairs) -> int:
        return sum((d + 1) * self._code_weights[p - 1] for p, d in pairs)

    def pairs_of_code(self, code: int) -> Pairs:
        base = len(self.alphabet) + 1
        out = []
        for p in range(self.length, 0, -1):
            code, d = divmod(code, base)
            if d:
                out.append((p, d - 1))
        return tuple(reversed(out))

    def iter_completions(self, pairs: Pairs) -> Iterator[int]:
        """All words of the full cube extending the given pairs, ascending."""
        base = sum(d * self._word_weights[p - 1] for p, d in pairs)
        defined = {p for p, _ in pairs}
        free = [self._word_weights[p - 1] for p in range(1, self.length + 1)
                if p not in defined]
        if not free:
            yield base
            return
        k = len(self.alphabet)
        for combo in product(range(k), repeat=len(free)):
            value = base
            for d, w in zip(combo, free):
                value += d * w
            yield value

    def render(self, string: PartialString) -> str:
        return string.render(self.length)

    # -- serialization ----------------------------------------------------

    def descriptor(self) -> dict:
        doc: dict = {
            "alphabet": list(self.alphabet.letters),
            "length": self.length,
            "label": self.label,
        }
        if self._kind == "all":
            doc["membership"] = "all"
        elif self._kind == "predicate":
            doc["membership"] = {"adapter": self.label}
        else:
            doc["membership"] = [self.text_of_int(i) for i in self.word_ints()]
        return doc

    @classmethod
    def from_descriptor(cls, doc: dict) -> "Slice":
        alphabet = Alphabet.of(doc["alphabet"])
        membership = doc.get("membership", "all")
        if isinstance(membership, dict):
            raise ValueError("adapter-backed slices must be rebuilt by their adapter")
        return cls(alphabet, int(doc["length"]), membership, doc.get("label", ""))

    def __repr__(self) -> str:
        return f"Slice({self.label!r}, length={self.length})"


def full_slice(alphabet: Alphabet, length: int, label: str = "") -> Slice:
    return Slice(alphabet, length, "all", label)


# -- the cylinder operators ---------------------------------------------


def enumerate_words(slc: Slice) -> Iterator[PartialString]:
    """Words of the slice in canonical (lexicographic) order."""
    for i in slc.word_ints():
        yield slc.word_of_int(i)


def in_sigma_infinity(string: PartialString, slc: Slice) -> bool:
    """True when at least one word of the slice extends the string."""
    pairs = slc.pairs_of(string)
    if pairs is None:
        return False
    e = slc.e_set()
    if e is None:
        return True
    return any(i in e for i in slc.iter_completions(pairs))


def extensions_in_e(string: PartialString, slc: Slice) -> Iterator[PartialString]:
    """The words of the slice extending the string, canonical order."""
    if string.size > slc.length:
        raise ValueError(f"string of size {string.size} exceeds slice length {slc.length}")
    pairs = slc.pairs_of(string)
    if pairs is None:
        return
    e = slc.e_set()
    for i in slc.iter_completions(pairs):
        if e is None or i in e:
            yield slc.word_of_int(i)


def expand_ints(strings: Iterable[PartialString], slc: Slice) -> frozenset[int]:
    """Packed words of the slice that extend at least one of the strings."""
    e = slc.e_set()
    out: set[int] = set()
    for s in strings:
        pairs = slc.pairs_of(s)
        if pairs is None:
            continue
        for i in slc.iter_completions(pairs):
            if e is None or i in e:
                out.add(i)
    return frozenset(out)


def expand(strings: Iterable[PartialString], slc: Slice) -> tuple[PartialString, ...]:
    """The relative cylinder of a string set: every word of the slice that
    extends some member. Strings that cannot occur in the slice contribute
    nothing."""
    return tuple(slc.word_of_int(i) for i in sorted(expand_ints(strings, slc)))
