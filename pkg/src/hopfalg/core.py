"""Sparse linear algebra over exact rationals and the convolution calculus.

Every vector in the library is a :class:`LinComb`: a finitely supported map
from canonical basis keys to ``fractions.Fraction``.  Basis keys can be
anything hashable with a deterministic ``str`` form; two frozen key types are
provided here, :class:`TensorWord` (ordered words, deconcatenation coalgebra)
and :class:`SymWord` (multiset words, unshuffle coalgebra).  On top of these
the module implements the reduced-coproduct iterates, the conilpotency
filtration, convolution of linear maps, the convolution logarithm and the
family of Eulerian idempotents.

No floating point number is ever produced; equality of values is exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator

Scalar = Fraction

#: Default truncation bound on word degree.
DEFAULT_BOUND = 6


class DegreeBoundError(Exception):
    """Raised when an operation would exceed the configured degree bound."""


def _coeff(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"scalars must be exact rationals, got {type(value).__name__}")


class LinComb:
    """Finitely supported map from basis keys to exact rational coefficients.

    Instances are immutable by convention: all operations return fresh
    objects and never alias the internal term map.  Zero coefficients are
    never stored, so equality of term maps is equality of vectors.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        data: dict = {}
        if terms:
            for key, value in terms.items():
                coeff = _coeff(value)
                if coeff:
                    data[key] = coeff
        self._terms = data

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LinComb":
        return LinComb()

    @staticmethod
    def of(key: Any, coeff: Any = 1) -> "LinComb":
        c = _coeff(coeff)
        return LinComb({key: c}) if c else LinComb()

    @staticmethod
    def from_terms(pairs: Iterable[tuple[Any, Any]]) -> "LinComb":
        data: dict = {}
        for key, value in pairs:
            c = data.get(key, Fraction(0)) + _coeff(value)
            if c:
                data[key] = c
            elif key in data:
                del data[key]
        out = LinComb()
        out._terms = data
        return out

    # -- access --------------------------------------------------------

    def items(self) -> Iterator[tuple[Any, Fraction]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[Any, Fraction]]:
        """Terms sorted by the canonical key order (lexicographic on str)."""
        return sorted(self._terms.items(), key=lambda kv: str(kv[0]))

    def coefficient(self, key: Any) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def support(self) -> set:
        return set(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "LinComb") -> "LinComb":
        data = dict(self._terms)
        for key, value in other._terms.items():
            c = data.get(key, Fraction(0)) + value
            if c:
                data[key] = c
            elif key in data:
                del data[key]
        out = LinComb()
        out._terms = data
        return out

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __neg__(self) -> "LinComb":
        out = LinComb()
        out._terms = {k: -v for k, v in self._terms.items()}
        return out

    def scale(self, scalar: Any) -> "LinComb":
        c = _coeff(scalar)
        if not c:
            return LinComb()
        out = LinComb()
        out._terms = {k: c * v for k, v in self._terms.items()}
        return out

    def __rmul__(self, scalar: Any) -> "LinComb":
        return self.scale(scalar)

    # -- linear extension ------------------------------------------------

    def apply(self, f: Callable[[Any], "LinComb"]) -> "LinComb":
        """Extend ``f`` (defined on basis keys) linearly to this vector."""
        out = LinComb.zero()
        for key, value in self._terms.items():
            out = out + f(key).scale(value)
        return out

    def map_keys(self, g: Callable[[Any], Any]) -> "LinComb":
        return LinComb.from_terms((g(k), v) for k, v in self._terms.items())

    def __repr__(self) -> str:
        return f"LinComb({lc_text(self)})"


def lc_multi(factors: list[LinComb], combine: Callable[..., Any]) -> LinComb:
    """Multilinear expansion: combine one key from each factor into a new key."""
    out: dict = {}
    for picks in itertools.product(*(list(f.items()) for f in factors)):
        keys = tuple(p[0] for p in picks)
        coeff = math.prod((p[1] for p in picks), start=Fraction(1))
        key = combine(*keys)
        c = out.get(key, Fraction(0)) + coeff
        if c:
            out[key] = c
        elif key in out:
            del out[key]
    result = LinComb()
    result._terms = out
    return result


def as_lincomb(value: Any) -> LinComb:
    """Coerce a bare basis key into the corresponding one-term vector."""
    return value if isinstance(value, LinComb) else LinComb.of(value)


# ---------------------------------------------------------------------------
# Word types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class TensorWord:
    """Ordered word of generator keys; the basis of the tensor coalgebra."""

    letters: tuple = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def concat(self, other: "TensorWord") -> "TensorWord":
        return TensorWord(self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "()"
        return ".".join(str(l) for l in self.letters)


@dataclass(frozen=True, order=True)
class SymWord:
    """Multiset word of generator keys, stored sorted; basis of S(V).

    The stored tuple is sorted by ``(str(key), key-ish)`` so the
    representation is independent of input order.
    """

    letters: tuple = ()

    @staticmethod
    def make(letters: Iterable) -> "SymWord":
        return SymWord(tuple(sorted(letters, key=lambda l: (str(l), repr(l)))))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def union(self, other: "SymWord") -> "SymWord":
        return SymWord.make(self.letters + other.letters)

    def counts(self) -> list[tuple[Any, int]]:
        out: list[tuple[Any, int]] = []
        for letter in self.letters:
            if out and out[-1][0] == letter:
                out[-1] = (letter, out[-1][1] + 1)
            else:
                out.append((letter, 1))
        return out

    def __str__(self) -> str:
        return "{" + ",".join(str(l) for l in self.letters) + "}"


EMPTY_WORD = TensorWord()
EMPTY_SYM = SymWord()


def deconcat(word: TensorWord) -> LinComb:
    """Deconcatenation coproduct: all two-block splittings of the word."""
    n = len(word.letters)
    return LinComb.from_terms(
        ((TensorWord(word.letters[:i]), TensorWord(word.letters[i:])), 1)
        for i in range(n + 1)
    )


def unshuffle(word: SymWord) -> LinComb:
    """Unshuffle coproduct on multiset words.

    A letter of multiplicity m contributes a binomial(m, k) factor when k
    copies go to the left leg, so single letters are primitive and the
    result is cocommutative.
    """
    counts = word.counts()
    out: list[tuple[Any, int]] = []
    for choice in itertools.product(*(range(m + 1) for _, m in counts)):
        coeff = 1
        left: list = []
        right: list = []
        for (letter, m), k in zip(counts, choice):
            coeff *= math.comb(m, k)
            left.extend([letter] * k)
            right.extend([letter] * (m - k))
        out.append(((SymWord.make(left), SymWord.make(right)), coeff))
    return LinComb.from_terms(out)


def symmetrize(word: TensorWord) -> LinComb:
    """Sum over all n! permuted words (no 1/n! factor, repeats accumulate)."""
    return LinComb.from_terms(
        (TensorWord(p), 1) for p in itertools.permutations(word.letters))


# ---------------------------------------------------------------------------
# Linear maps and the convolution algebra
# ---------------------------------------------------------------------------


@dataclass
class LinearMap:
    """A linear endomap given by its action on basis keys."""

    on_key: Callable[[Any], LinComb]
    name: str = ""

    def __call__(self, value: Any) -> LinComb:
        return as_lincomb(value).apply(self.on_key)

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda k: other.on_key(k).apply(self.on_key),
                         name=f"{self.name}∘{other.name}")

    def __add__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda k: self.on_key(k) + other.on_key(k))

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(lambda k: self.on_key(k) - other.on_key(k))

    def scale(self, scalar: Any) -> "LinearMap":
        return LinearMap(lambda k: self.on_key(k).scale(scalar))


IDENTITY = LinearMap(lambda k: LinComb.of(k), name="id")


@dataclass
class HopfModel:
    """A graded bialgebra presented by its structure maps on basis keys.

    ``product(a, b)`` and ``coproduct(a)`` act on basis keys and return
    vectors (the coproduct over pair keys ``(left, right)``).  ``unit`` is
    the basis key of 1 and ``grade`` the degree function used both for the
    truncation bound and for termination arguments.
    """

    product: Callable[[Any, Any], LinComb]
    coproduct: Callable[[Any], LinComb]
    unit: Any
    grade: Callable[[Any], int]
    bound: int = DEFAULT_BOUND

    # -- plumbing -------------------------------------------------------

    def check_degree(self, degree: int) -> None:
        if degree > self.bound:
            raise DegreeBoundError(
                f"degree {degree} exceeds the truncation bound {self.bound}")

    def product_lc(self, a: LinComb, b: LinComb) -> LinComb:
        return _bilinear(self.product, a, b)

    def coproduct_lc(self, a: LinComb) -> LinComb:
        return as_lincomb(a).apply(self.coproduct)

    def counit(self, a: Any) -> Fraction:
        return as_lincomb(a).coefficient(self.unit)

    def unit_map(self) -> LinearMap:
        """The convolution unit eta∘epsilon."""
        unit = self.unit
        return LinearMap(
            lambda k: LinComb.of(unit) if k == unit else LinComb.zero(),
            name="ηε")

    # -- reduced coproduct calculus --------------------------------------

    def reduced(self, key: Any) -> LinComb:
        """Reduced coproduct on a basis key; zero on the unit."""
        if key == self.unit:
            return LinComb.zero()
        unit = self.unit
        full = self.coproduct(key)
        return LinComb.from_terms(
            (pair, c) for pair, c in full.items()
            if pair[0] != unit and pair[1] != unit)

    def reduced_iterate(self, n: int, value: Any) -> LinComb:
        """The n-fold cooperation obtained by iterating the reduced coproduct.

        Values are vectors over n-tuples of basis keys.  For n = 1 this is
        the projection away from the unit, so primitives are exactly the
        elements killed by the n = 2 iterate.
        """
        if n < 1:
            raise ValueError("n must be >= 1")
        lc = as_lincomb(value)
        current = LinComb.from_terms(
            ((k,), c) for k, c in lc.items() if k != self.unit)
        for _ in range(n - 1):
            current = current.apply(self._split_first)
        return current

    def _split_first(self, keys: tuple) -> LinComb:
        head, rest = keys[0], keys[1:]
        return self.reduced(head).map_keys(lambda pair: pair + rest)

    def filtration_degree(self, value: Any) -> int:
        """Least r such that every iterate beyond the r-fold one vanishes."""
        lc = as_lincomb(value)
        if lc.is_zero():
            raise ValueError("the zero vector has no filtration degree")
        current = self.reduced_iterate(1, lc)
        if current.is_zero():
            return 0
        r = 1
        while True:
            current = current.apply(self._split_first)
            if current.is_zero():
                return r
            r += 1
            if r > self.bound + 1:
                raise DegreeBoundError(
                    f"no vanishing iterate below bound {self.bound}: "
                    "input does not look conilpotent")

    # -- convolution ------------------------------------------------------

    def convolve(self, f: LinearMap, g: LinearMap) -> LinearMap:
        def on_key(key: Any) -> LinComb:
            out = LinComb.zero()
            for (left, right), c in self.coproduct(key).items():
                out = out + _bilinear(self.product, f(left), g(right)).scale(c)
            return out
        return LinearMap(on_key, name=f"{f.name}⋆{g.name}")

    def conv_log(self) -> LinearMap:
        """First Eulerian idempotent: the convolution logarithm of Id.

        The k-th convolution power of Id - ηε is the k-fold product of the
        k-fold reduced coproduct, so the series is the alternating sum of
        folded iterates with 1/k coefficients; it terminates at the
        filtration degree of the argument.
        """
        def on_key(key: Any) -> LinComb:
            if key == self.unit:
                return LinComb.zero()
            total = LinComb.zero()
            current = self.reduced_iterate(1, key)
            k = 1
            while not current.is_zero():
                folded = current.apply(self._fold_product)
                total = total + folded.scale(Fraction((-1) ** (k + 1), k))
                current = current.apply(self._split_first)
                k += 1
                if k > self.bound + 2:
                    raise DegreeBoundError(
                        "convolution logarithm did not terminate below "
                        f"bound {self.bound}")
            return total
        return LinearMap(on_key, name="e1")

    def _fold_product(self, keys: tuple) -> LinComb:
        acc = LinComb.of(keys[0])
        for key in keys[1:]:
            acc = acc.apply(lambda a: self.product(a, key))
        return acc

    def eulerian(self, i: int) -> LinearMap:
        """The i-th Eulerian idempotent (e1 convolved with itself i times / i!)."""
        if i < 1:
            raise ValueError("i must be >= 1")
        e1 = self.conv_log()
        power = e1
        for _ in range(i - 1):
            power = self.convolve(power, e1)
        return power.scale(Fraction(1, math.factorial(i)))


def _bilinear(op: Callable[[Any, Any], LinComb], a: LinComb, b: LinComb) -> LinComb:
    out = LinComb.zero()
    for ka, ca in a.items():
        for kb, cb in b.items():
            out = out + op(ka, kb).scale(ca * cb)
    return out


def bilinear(op: Callable[[Any, Any], LinComb], a: Any, b: Any) -> LinComb:
    """Extend a basis-level binary operation bilinearly."""
    return _bilinear(op, as_lincomb(a), as_lincomb(b))


# ---------------------------------------------------------------------------
# Ready-made models
# ---------------------------------------------------------------------------


def tensor_model(grade: Callable[[Any], int] = lambda _: 1,
                 bound: int = DEFAULT_BOUND) -> HopfModel:
    """Tensor coalgebra with deconcatenation and the shuffle product."""
    def product(u: TensorWord, v: TensorWord) -> LinComb:
        return shuffle_product(u, v)

    return HopfModel(product=product, coproduct=deconcat, unit=EMPTY_WORD,
                     grade=lambda w: sum(grade(l) for l in w.letters),
                     bound=bound)


def polynomial_model(grade: Callable[[Any], int] = lambda _: 1,
                     bound: int = DEFAULT_BOUND) -> HopfModel:
    """S(V) with the polynomial product and the unshuffle coproduct."""
    def product(u: SymWord, v: SymWord) -> LinComb:
        return LinComb.of(u.union(v))

    return HopfModel(product=product, coproduct=unshuffle, unit=EMPTY_SYM,
                     grade=lambda w: sum(grade(l) for l in w.letters),
                     bound=bound)


def shuffle_product(u: TensorWord, v: TensorWord) -> LinComb:
    """Sum over all interleavings of the two words."""
    p, q = len(u.letters), len(v.letters)
    out = []
    for positions in itertools.combinations(range(p + q), p):
        pos = set(positions)
        word, iu, iv = [], 0, 0
        for i in range(p + q):
            if i in pos:
                word.append(u.letters[iu]); iu += 1
            else:
                word.append(v.letters[iv]); iv += 1
        out.append((TensorWord(tuple(word)), 1))
    return LinComb.from_terms(out)


# ---------------------------------------------------------------------------
# Exact linear algebra on vectors
# ---------------------------------------------------------------------------


def vectors_rank(vectors: list[LinComb]) -> int:
    """Rank of a family of vectors, by fraction-exact Gaussian elimination."""
    rows = [dict(v.items()) for v in vectors if not v.is_zero()]
    rank = 0
    pivots: list[tuple[Any, dict]] = []
    for row in rows:
        for pivot_key, pivot_row in pivots:
            coeff = row.get(pivot_key)
            if coeff:
                factor = coeff / pivot_row[pivot_key]
                for k, v in pivot_row.items():
                    c = row.get(k, Fraction(0)) - factor * v
                    if c:
                        row[k] = c
                    elif k in row:
                        del row[k]
        if row:
            pivot_key = sorted(row, key=str)[0]
            pivots.append((pivot_key, row))
            rank += 1
    return rank


def solve_linear_system(equations: list[tuple[dict, Fraction]]
                        ) -> dict | None:
    """Solve a sparse exact linear system; free unknowns are set to zero.

    Each equation is (coefficients-by-unknown, right-hand side).  Returns an
    assignment for every unknown that appears, or ``None`` when the system
    is inconsistent.
    """
    variables = sorted({v for coeffs, _ in equations for v in coeffs}, key=str)
    index = {v: i for i, v in enumerate(variables)}
    rows = []
    for coeffs, rhs in equations:
        row = [Fraction(0)] * (len(variables) + 1)
        for var, c in coeffs.items():
            row[index[var]] = _coeff(c)
        row[-1] = _coeff(rhs)
        rows.append(row)
    pivot_cols: list[int] = []
    r = 0
    for col in range(len(variables)):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][-1]:
            return None
    solution = {v: Fraction(0) for v in variables}
    for i, col in enumerate(pivot_cols):
        solution[variables[col]] = rows[i][-1]
    return solution


def invert_on_basis(domain: list, image: Callable[[Any], LinComb]
                    ) -> Callable[[LinComb], LinComb]:
    """Invert a linear map given by images of a basis.

    ``image`` must be injective with the same finite dimension on both
    sides; the returned callable maps vectors in the image space back to
    vectors over ``domain``.  Raises ``ValueError`` if the map is singular.
    """
    columns = [image(key) for key in domain]
    out_keys = sorted({k for col in columns for k in col.support()}, key=str)
    n = len(domain)
    if len(out_keys) != n:
        raise ValueError(
            f"cannot invert: {n} basis vectors span {len(out_keys)} output keys")
    index = {k: i for i, k in enumerate(out_keys)}
    # augmented matrix [A | I] with A[i][j] = coefficient of out_keys[i] in column j
    matrix = [[Fraction(0)] * (2 * n) for _ in range(n)]
    for j, col in enumerate(columns):
        for key, coeff in col.items():
            matrix[index[key]][j] = coeff
    for i in range(n):
        matrix[i][n + i] = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if matrix[r][col]), None)
        if pivot is None:
            raise ValueError("cannot invert: matrix is singular")
        matrix[col], matrix[pivot] = matrix[pivot], matrix[col]
        inv = 1 / matrix[col][col]
        matrix[col] = [v * inv for v in matrix[col]]
        for r in range(n):
            if r != col and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [a - factor * b
                             for a, b in zip(matrix[r], matrix[col])]

    def inverse(vector: LinComb) -> LinComb:
        out = LinComb.zero()
        for key, coeff in vector.items():
            if key not in index:
                raise ValueError(f"key {key} outside the image space")
            i = index[key]
            out = out + LinComb.from_terms(
                (domain[j], matrix[j][n + i]) for j in range(n)).scale(coeff)
        return out

    return inverse


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def lc_text(lc: LinComb, key_text: Callable[[Any], str] = str) -> str:
    """Render ``c1*KEY1 + c2*KEY2`` with terms in canonical key order."""
    if lc.is_zero():
        return "0"
    parts: list[str] = []
    for key, coeff in sorted(lc.items(), key=lambda kv: key_text(kv[0])):
        text = key_text(key)
        mag = abs(coeff)
        body = text if mag == 1 else f"{mag}*{text}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def lc_json(lc: LinComb, key_text: Callable[[Any], str] = str) -> dict:
    """Structured form mirroring the text grammar one-to-one."""
    return {
        "terms": [
            {"coeff": str(coeff), "key": key_text(key)}
            for key, coeff in sorted(lc.items(), key=lambda kv: key_text(kv[0]))
        ]
    }


def pair_text(pair: tuple, key_text: Callable[[Any], str] = str) -> str:
    return f"{key_text(pair[0])} (x) {key_text(pair[1])}"
