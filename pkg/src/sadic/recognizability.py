"""Bounded-window recognizability scans and periodic-point checks.

A marker is a pair (a, k): a position of an image word that is the k-th
letter (from 0) of the image σ(a) of a source letter. A scan at radius R
collects every image window of radius R around a marker position, for every
admitted source word that supplies enough context on both sides, and asks
whether the window determines the marker.

Verdicts are three-valued:

* ``CLEAR``: no window at radius R is shared by two markers. Then every
  position of an image point is desubstituted by its radius-R window.
* ``WITNESS``: two distinct markers share a window, and they still share one
  at the largest radius the table supports (checked by explicit expansion).
* ``UNKNOWN``: collisions at radius R that the larger windows separate.
"""

from dataclasses import dataclass, field

from .language import InsufficientDepth
from .symbols import apply_morphism, are_conjugate, primitive_root

CLEAR = "CLEAR"
WITNESS = "WITNESS"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class MarkerConfig:
    letter: int
    offset: int
    source: bytes
    position: int

    def describe(self, sigma):
        src = sigma.source
        return (f"marker ({src.letters[self.letter]}, {self.offset}) in source word "
                f"{src.format(self.source)} at position {self.position}")


@dataclass
class RecognizabilityVerdict:
    kind: str
    radius: int
    radius_checked: int
    markers: tuple = ()
    window: bytes = b""
    window_checked: bytes = b""
    collisions: int = 0
    notes: list = field(default_factory=list)

    def text(self, sigma):
        lines = [f"verdict: {self.kind}", f"radius: {self.radius}",
                 f"radius checked: {self.radius_checked}"]
        if self.kind == WITNESS:
            for m in self.markers:
                lines.append(m.describe(sigma))
            lines.append(f"shared window (radius {self.radius}): "
                         f"{sigma.target.format(self.window)}")
            lines.append(f"shared window (radius {self.radius_checked}): "
                         f"{sigma.target.format(self.window_checked)}")
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"

    def to_dict(self, sigma):
        return {
            "verdict": self.kind,
            "radius": self.radius,
            "radius_checked": self.radius_checked,
            "collisions": self.collisions,
            "markers": [
                {"letter": sigma.source.letters[m.letter], "offset": m.offset,
                 "source_word": sigma.source.format(m.source), "position": m.position}
                for m in self.markers],
            "window": sigma.target.format(self.window),
            "window_checked": sigma.target.format(self.window_checked),
            "notes": self.notes,
        }


def _has_short_period(w):
    """Period p with 2p <= |w|."""
    n = len(w)
    return any(w[p:] == w[:n - p] for p in range(1, n // 2 + 1))


def source_radius(sigma, R):
    """Source letters needed on each side to supply R image letters."""
    k = sigma.min_length
    return -(-R // k)


def required_table_length(sigma, R):
    return 2 * source_radius(sigma, R) + 2


def _windows(sigma, table, R, aperiodic_only):
    q = source_radius(sigma, R)
    m = 2 * q + 1
    longer = table.words.get(m + 1, frozenset())
    ext_left = {w[1:] for w in longer}
    ext_right = {w[:-1] for w in longer}
    images = sigma.images
    out = {}
    for W in sorted(table.words.get(m, ())):
        if W not in ext_left or W not in ext_right:
            continue
        image = apply_morphism(sigma, W)
        start = len(apply_morphism(sigma, W[:q]))
        a = W[q]
        for k in range(len(images[a])):
            p = start + k
            window = image[p - R:p + R + 1]
            if aperiodic_only and _has_short_period(window):
                continue
            slot = out.setdefault(window, {})
            slot.setdefault((a, k), MarkerConfig(a, k, W, q))
    return out


def _collisions(windows):
    return {w: slot for w, slot in windows.items() if len(slot) > 1}


def recognizability_scan(sigma, table, R, aperiodic_only=False):
    if table.alphabet != sigma.source:
        raise ValueError("table alphabet differs from the morphism source")
    if R < 0:
        raise ValueError("radius must be non-negative")
    need = required_table_length(sigma, R)
    if table.L < need:
        raise InsufficientDepth(f"table length {table.L} < required {need} for radius {R}")
    coll = _collisions(_windows(sigma, table, R, aperiodic_only))
    notes = ["aperiodic-only mode: periodic windows discarded"] if aperiodic_only else []
    if not coll:
        return RecognizabilityVerdict(CLEAR, R, R, notes=notes)
    r_max = R
    while required_table_length(sigma, r_max + 1) <= table.L:
        r_max += 1
    deep = _collisions(_windows(sigma, table, r_max, aperiodic_only))
    if deep:
        window = min(deep, key=lambda w: (len(w), w))
        slot = deep[window]
        m1, m2 = sorted(slot.values(), key=lambda m: (m.letter, m.offset))[:2]
        centre = len(window) // 2
        return RecognizabilityVerdict(
            WITNESS, R, r_max, (m1, m2), window[centre - R:centre + R + 1], window,
            len(coll), notes)
    notes.append(f"{len(coll)} colliding windows at radius {R} are separated at radius {r_max}")
    return RecognizabilityVerdict(UNKNOWN, R, r_max, collisions=len(coll), notes=notes)


def first_clear_radius(sigma, table, max_radius, aperiodic_only=False):
    """Least R <= max_radius with a CLEAR verdict, and the verdicts seen."""
    seen = []
    for R in range(max_radius + 1):
        if required_table_length(sigma, R) > table.L:
            break
        v = recognizability_scan(sigma, table, R, aperiodic_only)
        seen.append(v)
        if v.kind == CLEAR:
            return R, seen
    return None, seen


@dataclass
class ShiftPeriodReport:
    word_proper_power: bool
    image_proper_power: bool

    @property
    def preserved(self):
        return self.word_proper_power == self.image_proper_power


def shift_period_check(sigma, w):
    w = bytes(w)
    if not w:
        raise ValueError("empty word")
    image = apply_morphism(sigma, w)
    return ShiftPeriodReport(primitive_root(w)[1] >= 2, primitive_root(image)[1] >= 2)


@dataclass
class OrbitCollisionReport:
    root: bytes
    root_other: bytes
    collision: bool


def orbit_collision_on_periodic(sigma, w, w2):
    """Do σ(w)^∞ and σ(w2)^∞ lie in one shift orbit although w^∞ and w2^∞ do not?"""
    w, w2 = bytes(w), bytes(w2)
    if not w or not w2:
        raise ValueError("empty word")
    if are_conjugate(primitive_root(w)[0], primitive_root(w2)[0]):
        raise ValueError("inputs already lie in the same shift orbit")
    r1 = primitive_root(apply_morphism(sigma, w))[0]
    r2 = primitive_root(apply_morphism(sigma, w2))[0]
    return OrbitCollisionReport(r1, r2, are_conjugate(r1, r2))


def distinguished_factor(table, letter, count=3, others=2):
    """A factor where ``letter`` occurs exactly ``count`` times and every
    other letter at most ``others`` times, or None."""
    for k in range(1, table.L + 1):
        for w in table.of_length(k):
            if w.count(letter) != count:
                continue
            if all(w.count(b) <= others for b in set(w) if b != letter):
                return w
    return None
