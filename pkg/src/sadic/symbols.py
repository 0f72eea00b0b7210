"""Alphabets, words, non-erasing morphisms and their incidence matrices.

A word is a ``bytes`` object whose items are letter indices into an
:class:`Alphabet`; the empty word is ``b""``. Alphabets are therefore limited
to 256 letters.
"""

from dataclasses import dataclass, field
from itertools import product

from . import kernels


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    letters: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        letters = tuple(str(x) for x in self.letters)
        if not letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(letters)) != len(letters):
            raise ValueError(f"duplicate letter names in {letters}")
        if len(letters) > 256:
            raise ValueError("at most 256 letters are supported")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(letters)})

    @property
    def d(self):
        return len(self.letters)

    def __len__(self):
        return len(self.letters)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"letter {name!r} not in alphabet {self.letters}") from None

    @property
    def single_char(self):
        return all(len(x) == 1 for x in self.letters)

    def parse(self, text):
        """Read a word from its string form (see :meth:`format`)."""
        if text == "":
            return b""
        if self.single_char and "." not in text:
            names = list(text)
        else:
            names = text.split(".")
        return bytes(self.index(x) for x in names)

    def format(self, word):
        sep = "" if self.single_char else "."
        return sep.join(self.letters[i] for i in word)

    def check(self, word):
        if any(i >= self.d for i in word):
            raise AlphabetMismatch(f"word {tuple(word)} has letters outside {self.letters}")

    def words(self, length):
        """All words of the given length, in lexicographic index order."""
        return [bytes(t) for t in product(range(self.d), repeat=length)]


def letter_counts(word, alphabet):
    """Vector of letter counts of ``word`` in the basis order of ``alphabet``."""
    counts = [0] * alphabet.d
    for i in word:
        counts[i] += 1
    return tuple(counts)


def count_occurrences(w, u):
    """|w|_u: overlapping occurrences of the non-empty word ``u`` in ``w``."""
    if len(u) == 0:
        raise ValueError("occurrences of the empty word are not defined")
    return kernels.count_overlapping(bytes(w), bytes(u))


@dataclass(frozen=True)
class Morphism:
    """Non-erasing monoid morphism ``source* -> target*``.

    ``images[i]`` is the image of source letter ``i``.
    """

    source: Alphabet
    target: Alphabet
    images: tuple

    def __post_init__(self):
        images = tuple(bytes(x) for x in self.images)
        if len(images) != self.source.d:
            raise ValueError(
                f"{len(images)} images given for {self.source.d} source letters")
        for a, img in zip(self.source.letters, images):
            if not img:
                raise ValueError(f"image of {a!r} is empty (morphisms must be non-erasing)")
            self.target.check(img)
        object.__setattr__(self, "images", images)

    @classmethod
    def from_strings(cls, source, target, images):
        """Build from letter names, e.g. ``Morphism.from_strings("ab", "ab", {"a": "ab", "b": "a"})``."""
        src = source if isinstance(source, Alphabet) else Alphabet(tuple(source))
        tgt = target if isinstance(target, Alphabet) else Alphabet(tuple(target))
        if not isinstance(images, dict):
            images = dict(zip(src.letters, images))
        missing = set(src.letters) - set(images)
        if missing:
            raise ValueError(f"no image given for {sorted(missing)}")
        return cls(src, tgt, tuple(tgt.parse(images[a]) for a in src.letters))

    @classmethod
    def identity(cls, alphabet):
        return cls(alphabet, alphabet, tuple(bytes([i]) for i in range(alphabet.d)))

    def __call__(self, w):
        return apply_morphism(self, w)

    def image(self, name):
        return self.images[self.source.index(name)]

    @property
    def min_length(self):
        """⟨σ⟩, the shortest letter image length."""
        return min(len(x) for x in self.images)

    @property
    def lengths(self):
        return tuple(len(x) for x in self.images)

    def is_letter_to_letter(self):
        return all(len(x) == 1 for x in self.images)

    def to_dict(self):
        return {
            "source": list(self.source.letters),
            "target": list(self.target.letters),
            "images": {a: self.target.format(img)
                       for a, img in zip(self.source.letters, self.images)},
        }

    @classmethod
    def from_dict(cls, data):
        return cls.from_strings(data["source"], data["target"], data["images"])

    def __str__(self):
        return ", ".join(f"{a}->{self.target.format(img)}"
                         for a, img in zip(self.source.letters, self.images))


def apply_morphism(sigma, w):
    w = bytes(w)
    sigma.source.check(w)
    images = sigma.images
    return b"".join([images[i] for i in w])


def compose(sigma2, sigma1):
    """The morphism ``sigma2 ∘ sigma1`` (apply ``sigma1`` first)."""
    if sigma1.target != sigma2.source:
        raise AlphabetMismatch(
            f"cannot compose: {sigma1.target.letters} is not {sigma2.source.letters}")
    return Morphism(sigma1.source, sigma2.target,
                    tuple(apply_morphism(sigma2, img) for img in sigma1.images))


def incidence_matrix(sigma):
    """M(σ) as a tuple of rows; entry [i][j] = |σ(a_j)|_{b_i}."""
    cols = [letter_counts(img, sigma.target) for img in sigma.images]
    return tuple(tuple(col[i] for col in cols) for i in range(sigma.target.d))


def essential_occurrences(sigma, w, u):
    """⌊σ(w)⌋_u: occurrences of ``u`` in σ(w) starting inside the image of the
    first letter of ``w`` and ending inside the image of its last letter."""
    w, u = bytes(w), bytes(u)
    if not w or not u:
        raise ValueError("w and u must be non-empty")
    sigma.source.check(w)
    sigma.target.check(u)
    image = apply_morphism(sigma, w)
    first = len(sigma.images[w[0]])
    last = len(sigma.images[w[-1]])
    n, m = len(image), len(u)
    count = 0
    for p in range(min(first, n - m + 1)):
        if p + m - 1 >= n - last and image[p:p + m] == u:
            count += 1
    return count


@dataclass(frozen=True)
class SubdivisionDecomposition:
    """σ = α ∘ π with π the subdivision morphism and α letter-to-letter.

    The subdivision alphabet lists the pairs ``a(k)`` (k counted from 1) in
    source letter order; ``pairs[x] = (i, k)`` for subdivision letter ``x``
    with ``k`` zero-based.
    """

    sigma: Morphism
    alphabet: Alphabet
    pi: Morphism
    alpha: Morphism
    pairs: tuple


def subdivision_decomposition(sigma):
    names, pairs, starts = [], [], []
    for i, (a, img) in enumerate(zip(sigma.source.letters, sigma.images)):
        starts.append(len(pairs))
        for k in range(len(img)):
            names.append(f"{a}({k + 1})")
            pairs.append((i, k))
    sub = Alphabet(tuple(names))
    pi = Morphism(sigma.source, sub, tuple(
        bytes(range(s, s + len(img))) for s, img in zip(starts, sigma.images)))
    alpha = Morphism(sub, sigma.target, tuple(
        bytes([sigma.images[i][k]]) for i, k in pairs))
    return SubdivisionDecomposition(sigma, sub, pi, alpha, tuple(pairs))


def hat_word(decomp, w):
    """Shortest source word ŵ whose π-image contains ``w``; ``None`` if absent.

    Every subdivision letter names its source letter and offset, so ŵ is read
    off directly: consecutive letters must continue the current block or open
    a new block at offset 0.
    """
    w = bytes(w)
    if not w:
        raise ValueError("w must be non-empty")
    decomp.alphabet.check(w)
    pairs = decomp.pairs
    lengths = decomp.sigma.lengths
    i0, k0 = pairs[w[0]]
    letters = [i0]
    cur_i, cur_k = i0, k0
    for x in w[1:]:
        i, k = pairs[x]
        if cur_k + 1 < lengths[cur_i]:
            if (i, k) != (cur_i, cur_k + 1):
                return None
        else:
            if k != 0:
                return None
            letters.append(i)
        cur_i, cur_k = i, k
    return bytes(letters)


def primitive_root(w):
    """(root, exponent) with ``w == root * exponent`` and ``root`` primitive."""
    w = bytes(w)
    n = len(w)
    if n == 0:
        raise ValueError("empty word has no primitive root")
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p], n // p
    raise AssertionError("unreachable")


def cyclic_count(w, u):
    """Start positions i in [0, |w|) at which ``u`` occurs in w^∞."""
    w, u = bytes(w), bytes(u)
    if not w or not u:
        raise ValueError("w and u must be non-empty")
    reps = (len(u) - 1) // len(w) + 2
    ext = (w * reps)[:len(w) + len(u) - 1]
    return kernels.count_overlapping(ext, u)


def is_proper_power(w):
    return primitive_root(w)[1] >= 2


def are_conjugate(u, v):
    """True when ``v`` is a cyclic rotation of ``u``."""
    return len(u) == len(v) and bytes(v) in bytes(u) * 2


def canonical_rotation(w):
    """Lexicographically least rotation; a canonical name for a necklace."""
    w = bytes(w)
    return min(w[i:] + w[:i] for i in range(len(w))) if w else w
