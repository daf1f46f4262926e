"""Words in the Hessian/Cayleyan semigroup and their evaluation.

A ``Word`` is a string over ``{h, c}``.  Evaluation is a homomorphism into
composition: ``psi(uv) = psi(u) o psi(v)``, so the rightmost letter acts
first and the "last letter" of a word is the one applied first.

``WordHI`` spells the same elements over ``{h, i}`` using ``c = h i``.
"""

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import check_budget
from .exactnum import SNumber, snum_hessian, snum_iota
from .maps import CAYLEYAN, HESSIAN, IOTA
from .ratmap import INF, compose, taylor_at_fixpoint

__all__ = [
    "Word", "WordHI", "NormalForm", "psi", "psi_hi", "normal_form",
    "predicted_leading", "measured_leading", "to_hi", "from_hi",
    "ends_with_h", "s_trajectory", "all_words", "all_hi_words",
    "collision_scan", "CollisionReport", "map_digest", "DEFAULT_MAX_LEN",
]

DEFAULT_MAX_LEN = 6
START = SNumber.finite(Fraction(-1), -1)  # -2^(-1/3)


class Word(str):
    """Nonempty string over ``{h, c}``; rightmost letter acts first."""

    def __new__(cls, s):
        s = str(s)
        if not s or set(s) - {"h", "c"}:
            raise ValueError(f"not a word over {{h, c}}: {s!r}")
        return super().__new__(cls, s)

    @property
    def e(self):
        return len(self)

    @property
    def ec(self):
        return self.count("c")

    @property
    def eh(self):
        return self.count("h")


class WordHI(str):
    """Reduced word over ``{h, i}`` (no ``ii``)."""

    def __new__(cls, s):
        s = str(s)
        if not s or set(s) - {"h", "i"}:
            raise ValueError(f"not a word over {{h, i}}: {s!r}")
        if "ii" in s:
            raise ValueError(f"word is not reduced: {s!r}")
        return super().__new__(cls, s)


def reduce_hi(s):
    """Cancel ``ii`` pairs."""
    out = []
    for ch in s:
        if ch == "i" and out and out[-1] == "i":
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def to_hi(w):
    return WordHI(reduce_hi(Word(w).replace("c", "hi")))


def from_hi(w):
    w = WordHI(w)
    if w[0] == "i":
        raise ValueError("a word starting with i has no {h, c} spelling")
    return Word(w.replace("hi", "c"))


# ---------------------------------------------------------------------------
# evaluation

_LETTERS = {"h": HESSIAN, "c": CAYLEYAN, "i": IOTA}


@lru_cache(maxsize=4096)
def _psi(s):
    if len(s) == 1:
        return _LETTERS[s]
    check_budget()
    return compose(_LETTERS[s[0]], _psi(s[1:]))


def psi(w):
    """Exact map of a word over ``{h, c}``, degree ``3**len(w)``."""
    return _psi(str(Word(w)))


def psi_hi(w):
    return _psi(str(WordHI(w)))


def map_digest(f):
    """Short stable hash of a normalized map's coefficients."""
    h = hashlib.sha256()
    for c in f.den.coeffs + f.num.coeffs:
        c = int(c)
        h.update(c.to_bytes(c.bit_length() // 8 + 1, "little", signed=True))
        h.update(b",")
    return h.hexdigest()[:16]


# ---------------------------------------------------------------------------
# normal form and leading coefficient at infinity


@dataclass(frozen=True)
class NormalForm:
    """Exponents of ``h^a0 c h^a1 ... c h^ak``."""

    exponents: tuple

    def word(self):
        return Word("c".join("h" * a for a in self.exponents))


def normal_form(w):
    return NormalForm(tuple(len(seg) for seg in Word(w).split("c")))


def predicted_leading(w):
    """``(order, |coefficient|)`` of ``psi(w)`` at infinity in the chart ``u = 1/l``.

    The order is ``2**e(c)`` and the magnitude ``(3/2)**(2**e(c) - 1) * 3**sum(2**i a_i)``.
    With no ``c`` this is the multiplier ``3**e(h)`` of an order-one fixpoint.
    """
    w = Word(w)
    a = normal_form(w).exponents
    order = 2 ** w.ec
    mag = Fraction(3, 2) ** (order - 1) * 3 ** sum(2 ** i * ai for i, ai in enumerate(a))
    return order, mag


def measured_leading(w):
    """``(order, coefficient)`` read off the exact expansion of ``psi(w)`` at infinity."""
    w = Word(w)
    f = psi(w)
    td = taylor_at_fixpoint(f, INF, max_order=2 ** w.ec + 1)
    if td.a != 0:
        return 1, td.a
    return td.h, td.b


# ---------------------------------------------------------------------------
# the ends-with-h detector


def s_trajectory(w):
    """Values of the letters of ``w`` applied right to left, starting at ``-2^(-1/3)``."""
    if isinstance(w, Word) or not set(w) <= {"h", "i"}:
        w = to_hi(w)
    w = WordHI(w)
    s = START
    out = [s]
    for letter in reversed(w):
        s = snum_hessian(s) if letter == "h" else snum_iota(s)
        out.append(s)
    return out


def ends_with_h(w):
    """True iff the image of ``-2^(-1/3)`` is ``0`` or infinity.

    This happens exactly when the first letter applied is ``h``.
    """
    return s_trajectory(w)[-1].kind != "finite"


# ---------------------------------------------------------------------------
# enumeration


def all_words(max_len, min_len=1):
    """Words ordered by length, then lexicographically (``c < h``)."""
    for n in range(min_len, max_len + 1):
        for t in product("ch", repeat=n):
            yield Word("".join(t))


def all_hi_words(max_len):
    """Reduced ``{h, i}`` words of length ``<= max_len`` not starting with ``i``."""
    for n in range(1, max_len + 1):
        for t in product("hi", repeat=n):
            s = "".join(t)
            if s[0] == "h" and "ii" not in s:
                yield WordHI(s)


@dataclass
class CollisionReport:
    max_len: int
    n_words: int
    n_distinct: int
    collisions: list = field(default_factory=list)
    digests: dict = field(default_factory=dict)

    @property
    def free(self):
        return not self.collisions


def collision_scan(max_len=DEFAULT_MAX_LEN, bound=DEFAULT_MAX_LEN):
    """Evaluate every word up to ``max_len`` and report equal maps."""
    if max_len > bound:
        from .errors import ResourceBoundError
        raise ResourceBoundError(f"max_len {max_len} exceeds the bound {bound}")
    groups = {}
    words = list(all_words(max_len))
    for w in words:
        f = psi(w)
        groups.setdefault(hash(f), []).append((w, f))
    collisions = []
    distinct = 0
    for bucket in groups.values():
        reps = []
        for w, f in bucket:
            for w2, f2 in reps:
                if f == f2:
                    collisions.append((w2, w))
                    break
            else:
                reps.append((w, f))
        distinct += len(reps)
    collisions.sort()
    digests = {w: map_digest(psi(w)) for w in words}
    return CollisionReport(max_len, len(words), distinct, collisions, digests)
