"""Generic Garside-group arithmetic.

Everything is parametric over a GarsideStructure: simple-element lattice
operations, left normal forms, the tau/partial maps, conjugation, tuples,
intervals, and the word/JSON input-output formats.

Conventions used throughout:

- a simple element's payload is a 0-indexed one-line permutation tuple;
- ``compose(s, t)`` applies ``s`` first, then ``t``, so a word read left to
  right is ``compose`` folded left to right;
- ``conjugate(g, x)`` is ``x^-1 * g * x``;
- an Element is ``Delta^p * F_1 ... F_l`` in left normal form, with no
  factor equal to the identity or to Delta.
"""

from __future__ import annotations

import math
import struct

from .errors import (
    BadParameter,
    DimensionMismatch,
    IndexOutOfRange,
    StructureMismatch,
)

# Payloads are plain tuples; this alias marks intent in signatures.
Simple = tuple

_MISS = object()
# Pair-operation memo caches are bounded so that long benchmark runs cannot
# grow them past a few tens of MB per structure.
_MEMO_LIMIT = 400_000

_HDR = struct.Struct(">qI")


class GarsideStructure:
    """A concrete Garside presentation: atoms, Delta, simple arithmetic.

    Subclasses supply the payload-level primitives (lengths, divisibility,
    meets, tau, encodings); complements, joins, pair renormalization and the
    partial maps are generic, derived from those primitives, and memoized.

    Instances are immutable in all observable respects and are obtained from
    cached factory functions, so identity comparison (``is``) is the
    same-structure test.
    """

    name: str
    n: int
    atoms: tuple
    delta: Simple
    identity: Simple
    delta_atom_length: int
    tau_order: int
    n_simples: int

    def __init__(self) -> None:
        self.n_atoms = len(self.atoms)
        self._memo_renorm: dict = {}
        self._memo_comp_r: dict = {}
        self._memo_comp_l: dict = {}
        self._memo_join_r: dict = {}
        self._memo_join_l: dict = {}
        self._memo_tau_enc: dict = {}

    def __repr__(self) -> str:
        return f"<{self.name} structure on B_{self.n}>"

    # ------------------------------------------------------------------
    # payload-level primitives shared by both built-in structures
    # ------------------------------------------------------------------

    @staticmethod
    def compose(s: Simple, t: Simple) -> Simple:
        """Product of one-line permutations: apply ``s`` first, then ``t``."""
        return tuple(t[i] for i in s)

    @staticmethod
    def inverse_perm(s: Simple) -> Simple:
        out = [0] * len(s)
        for i, v in enumerate(s):
            out[v] = i
        return tuple(out)

    # ------------------------------------------------------------------
    # subclass responsibilities
    # ------------------------------------------------------------------

    def simple_len(self, s: Simple) -> int:
        """Number of atoms in any expression of the simple ``s``."""
        raise NotImplementedError

    def is_simple(self, s: Simple) -> bool:
        """Payload validity: membership of the permutation in Div(Delta)."""
        raise NotImplementedError

    def left_divides(self, s: Simple, t: Simple) -> bool:
        raise NotImplementedError

    def meet_left(self, s: Simple, t: Simple) -> Simple:
        raise NotImplementedError

    def meet_right(self, s: Simple, t: Simple) -> Simple:
        raise NotImplementedError

    def tau_pow(self, s: Simple, k: int) -> Simple:
        raise NotImplementedError

    def left_descent_atoms(self, s: Simple) -> tuple:
        """0-based indices of atoms that left-divide ``s``."""
        raise NotImplementedError

    def right_descent_atoms(self, s: Simple) -> tuple:
        """0-based indices of atoms that right-divide ``s``."""
        raise NotImplementedError

    def encode_simple(self, s: Simple) -> bytes:
        raise NotImplementedError

    def decode_simple(self, data: bytes) -> Simple:
        raise NotImplementedError

    def simple_to_letters(self, s: Simple) -> list:
        """1-based atom indices whose left-to-right product is ``s``."""
        raise NotImplementedError

    def parse_word(self, text: str) -> list:
        """Text word -> list of signed 1-based atom indices."""
        raise NotImplementedError

    def format_word(self, letters) -> str:
        raise NotImplementedError

    # ------------------------------------------------------------------
    # derived simple-element operations
    # ------------------------------------------------------------------

    def right_divides(self, t: Simple, s: Simple) -> bool:
        """Whether ``t`` is right-divisible by ``s`` (t >= s)."""
        u = self.compose(t, self.inverse_perm(s))
        if self.simple_len(u) + self.simple_len(s) != self.simple_len(t):
            return False
        return self.is_simple(u)

    def product_if_simple(self, s: Simple, t: Simple):
        """``s*t`` when it stays in Div(Delta), else None."""
        u = self.compose(s, t)
        if self.simple_len(s) + self.simple_len(t) != self.simple_len(u):
            return None
        if not self.is_simple(u):
            return None
        return u

    def partial1(self, s: Simple) -> Simple:
        """The right complement s\\Delta, satisfying s * partial1(s) = Delta."""
        return self.compose(self.inverse_perm(s), self.delta)

    def partial_inv1(self, s: Simple) -> Simple:
        """The left complement Delta/s, satisfying partial_inv1(s) * s = Delta."""
        return self.compose(self.delta, self.inverse_perm(s))

    def partial_pow(self, s: Simple, k: int) -> Simple:
        # partial^2 = tau, and partial commutes with tau, so any power
        # reduces to at most one explicit complement.
        q, rem = divmod(k, 2)
        t = self.tau_pow(s, q)
        if rem:
            t = self.partial1(t)
        return t

    def join_right(self, s: Simple, t: Simple) -> Simple:
        """s v t, the least common right multiple within Div(Delta)."""
        if s == t:
            return s
        key = (s, t)
        cache = self._memo_join_r
        hit = cache.get(key, _MISS)
        if hit is not _MISS:
            return hit
        res = self.partial_inv1(
            self.meet_right(self.partial1(s), self.partial1(t))
        )
        if len(cache) < _MEMO_LIMIT:
            cache[key] = res
        return res

    def join_left(self, s: Simple, t: Simple) -> Simple:
        """s v~ t, the least common left multiple within Div(Delta)."""
        if s == t:
            return s
        key = (s, t)
        cache = self._memo_join_l
        hit = cache.get(key, _MISS)
        if hit is not _MISS:
            return hit
        res = self.partial1(
            self.meet_left(self.partial_inv1(s), self.partial_inv1(t))
        )
        if len(cache) < _MEMO_LIMIT:
            cache[key] = res
        return res

    def comp_right(self, s: Simple, t: Simple) -> Simple:
        """s\\t, with s * (s\\t) = s v t."""
        identity = self.identity
        if s == identity:
            return t
        if s == t:
            return identity
        key = (s, t)
        cache = self._memo_comp_r
        hit = cache.get(key, _MISS)
        if hit is not _MISS:
            return hit
        res = self.compose(self.inverse_perm(s), self.join_right(s, t))
        if len(cache) < _MEMO_LIMIT:
            cache[key] = res
        return res

    def comp_left(self, s: Simple, t: Simple) -> Simple:
        """t/s, with (t/s) * s = t v~ s."""
        identity = self.identity
        if s == identity:
            return t
        if s == t:
            return identity
        key = (s, t)
        cache = self._memo_comp_l
        hit = cache.get(key, _MISS)
        if hit is not _MISS:
            return hit
        res = self.compose(self.join_left(s, t), self.inverse_perm(s))
        if len(cache) < _MEMO_LIMIT:
            cache[key] = res
        return res

    def renorm_pair(self, s: Simple, t: Simple):
        """One left-weighting step on the factor pair (s, t).

        Returns None when the pair is already left-weighted, else the
        rebalanced pair (s*m, m^-1*t) for m = partial(s) ^ t, which a single
        maximal transfer makes left-weighted.
        """
        if t == self.identity or s == self.delta:
            return None
        key = (s, t)
        cache = self._memo_renorm
        hit = cache.get(key, _MISS)
        if hit is not _MISS:
            return hit
        m = self.meet_left(self.partial1(s), t)
        if m == self.identity:
            res = None
        else:
            res = (self.compose(s, m), self.compose(self.inverse_perm(m), t))
        if len(cache) < _MEMO_LIMIT:
            cache[key] = res
        return res

    def atom_index(self, letter) -> int:
        """1-based signed letter validation -> 0-based atom index."""
        i = letter if letter > 0 else -letter
        if not 1 <= i <= self.n_atoms:
            raise IndexOutOfRange(
                f"atom index {letter} out of range for {self.n_atoms} atoms"
            )
        return i - 1

    def delta_letters(self) -> list:
        return list(self.simple_to_letters(self.delta))


# ----------------------------------------------------------------------
# Elements
# ----------------------------------------------------------------------


class Element:
    """A group element in left normal form Delta^inf * factors[0] * ...

    Instances are immutable; construct through make_element or the
    arithmetic functions, which maintain the normal-form invariants.
    """

    __slots__ = ("st", "inf", "factors")

    def __init__(self, st: GarsideStructure, inf: int, factors: tuple):
        self.st = st
        self.inf = inf
        self.factors = factors

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    @property
    def cl(self) -> int:
        return len(self.factors)

    def is_identity(self) -> bool:
        return self.inf == 0 and not self.factors

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Element)
            and self.st is other.st
            and self.inf == other.inf
            and self.factors == other.factors
        )

    def __hash__(self) -> int:
        return hash((self.inf, self.factors))

    def __repr__(self) -> str:
        return (
            f"Element({self.st.name} B_{self.st.n}, inf={self.inf},"
            f" cl={len(self.factors)})"
        )


class TupleElement:
    """An r-vector of Elements over one structure: the unit of
    simultaneous conjugation."""

    __slots__ = ("st", "entries")

    def __init__(self, st: GarsideStructure, entries: tuple):
        if not entries:
            raise BadParameter("a TupleElement needs at least one entry")
        for e in entries:
            if e.st is not st:
                raise StructureMismatch("tuple entries from different structures")
        self.st = st
        self.entries = entries

    @property
    def r(self) -> int:
        return len(self.entries)

    @property
    def inf_vec(self) -> tuple:
        return tuple(e.inf for e in self.entries)

    @property
    def sup_vec(self) -> tuple:
        return tuple(e.sup for e in self.entries)

    def prefix(self, i: int) -> "TupleElement":
        return TupleElement(self.st, self.entries[:i])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TupleElement)
            and self.st is other.st
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"TupleElement(r={len(self.entries)}, {self.st.name} B_{self.st.n})"


class Interval:
    """A coordinatewise inf/sup box [lo, hi]; hi entries may be math.inf."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = tuple(lo)
        hi = tuple(hi)
        if len(lo) != len(hi):
            raise DimensionMismatch("interval lo/hi lengths differ")
        for a, b in zip(lo, hi):
            if not isinstance(a, int):
                raise BadParameter("interval lower bounds must be integers")
            if not (isinstance(b, int) or b == math.inf):
                raise BadParameter("interval upper bounds must be integers or inf")
            if a > b:
                raise BadParameter(f"empty interval bound: {a} > {b}")
        self.lo = lo
        self.hi = hi

    @property
    def r(self) -> int:
        return len(self.lo)

    def contains(self, a: TupleElement) -> bool:
        return in_interval(a, self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Interval)
            and self.lo == other.lo
            and self.hi == other.hi
        )

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        return f"Interval(lo={self.lo}, hi={self.hi})"


def box_of(a: TupleElement) -> Interval:
    """The tightest interval containing ``a``: [inf a, sup a]."""
    return Interval(a.inf_vec, a.sup_vec)


def in_interval(a: TupleElement, iv: Interval) -> bool:
    if len(a.entries) != iv.r:
        raise DimensionMismatch(
            f"tuple dimension {len(a.entries)} vs interval dimension {iv.r}"
        )
    for e, lo, hi in zip(a.entries, iv.lo, iv.hi):
        if e.inf < lo:
            return False
        if e.inf + len(e.factors) > hi:
            return False
    return True


# ----------------------------------------------------------------------
# normal-form engine
# ----------------------------------------------------------------------


def _normalize(st: GarsideStructure, inf: int, parts: list, dirty=None) -> Element:
    """Left-weight a factor sequence in place and strip Delta/identity.

    ``parts`` is a mutable list of simples; ``dirty`` lists the adjacent-pair
    positions that may violate left-weighting (None means all of them).
    Rebalancing a pair can only disturb its neighbors, so a worklist over
    positions reaches the fixpoint; Delta factors bubble to the front and
    identity factors to the back as a byproduct of the generic step.
    """
    npairs = len(parts) - 1
    if dirty is None:
        stack = list(range(npairs - 1, -1, -1))
    else:
        stack = [i for i in dirty if 0 <= i < npairs]
    renorm = st.renorm_pair
    cache = st._memo_renorm
    while stack:
        i = stack.pop()
        # inline memo hit; renorm_pair caches None for weighted pairs
        res = cache.get((parts[i], parts[i + 1]), _MISS)
        if res is _MISS:
            res = renorm(parts[i], parts[i + 1])
        if res is None:
            continue
        parts[i], parts[i + 1] = res
        if i > 0:
            stack.append(i - 1)
        if i + 1 < npairs:
            stack.append(i + 1)
    delta = st.delta
    identity = st.identity
    start = 0
    end = len(parts)
    while start < end and parts[start] == delta:
        start += 1
    while end > start and parts[end - 1] == identity:
        end -= 1
    return Element(st, inf + start, tuple(parts[start:end]))


def simple_element(st: GarsideStructure, s: Simple) -> Element:
    """The Element represented by one simple payload."""
    if s == st.identity:
        return Element(st, 0, ())
    if s == st.delta:
        return Element(st, 1, ())
    return Element(st, 0, (s,))


def identity_element(st: GarsideStructure) -> Element:
    return Element(st, 0, ())


def delta_power(st: GarsideStructure, k: int) -> Element:
    return Element(st, k, ())


def _check_same(a, b) -> None:
    if a.st is not b.st:
        raise StructureMismatch(f"{a.st!r} vs {b.st!r}")


def multiply(a: Element, b: Element) -> Element:
    """The group product a*b, renormalized."""
    _check_same(a, b)
    st = a.st
    if not a.factors:
        return Element(st, a.inf + b.inf, b.factors)
    if not b.factors:
        if b.inf == 0:
            return a
        k = b.inf
        return Element(
            st, a.inf + k, tuple(st.tau_pow(f, k) for f in a.factors)
        )
    # Delta^p F  *  Delta^m H  =  Delta^(p+m) tau^m(F) H; both factor runs
    # are left-weighted already, so only the junction pair starts dirty.
    k = b.inf
    if k:
        parts = [st.tau_pow(f, k) for f in a.factors]
    else:
        parts = list(a.factors)
    junction = len(parts) - 1
    parts.extend(b.factors)
    return _normalize(st, a.inf + b.inf, parts, (junction,))


def inverse(a: Element) -> Element:
    """The group inverse, from the reversed complement run.

    The tau-shifted complements of a left-weighted run are again
    left-weighted (and never Delta or identity), so no renormalization
    pass is needed.
    """
    st = a.st
    l = len(a.factors)
    if l == 0:
        return Element(st, -a.inf, ())
    p = a.inf
    parts = tuple(
        st.tau_pow(st.partial_inv1(a.factors[l - 1 - j]), -(l - 1 - j) - p)
        for j in range(l)
    )
    return Element(st, -p - l, parts)


def tau_power(a, k: int, structure: GarsideStructure | None = None):
    """tau^k of an Element, TupleElement, or raw simple payload."""
    if isinstance(a, TupleElement):
        return TupleElement(
            a.st, tuple(tau_power(e, k) for e in a.entries)
        )
    if isinstance(a, Element):
        st = a.st
        return Element(st, a.inf, tuple(st.tau_pow(f, k) for f in a.factors))
    if structure is None:
        raise BadParameter("tau_power on a raw simple needs the structure")
    return structure.tau_pow(a, k)


def conjugate(g, x: Element):
    """g^x = x^-1 * g * x, entrywise on tuples."""
    if isinstance(g, TupleElement):
        _check_same(g, x)
        xi = inverse(x)
        return TupleElement(
            g.st, tuple(multiply(multiply(xi, e), x) for e in g.entries)
        )
    _check_same(g, x)
    return multiply(multiply(inverse(x), g), x)


def conjugate_by_simple(g: Element, s: Simple) -> Element:
    """g^s for a simple payload s, via one seeded renormalization pass."""
    st = g.st
    if s == st.identity:
        return g
    if s == st.delta:
        return tau_power(g, 1)
    # s^-1 Delta^p F_1..F_l s = Delta^(p-1) tau^p(Delta/s) F_1..F_l s
    p = g.inf
    parts = [st.tau_pow(st.partial_inv1(s), p)]
    parts.extend(g.factors)
    parts.append(s)
    dirty = (0, len(parts) - 2)
    return _normalize(st, p - 1, parts, dirty)


def conjugate_tuple_by_simple(v: TupleElement, s: Simple) -> TupleElement:
    return TupleElement(
        v.st, tuple(conjugate_by_simple(e, s) for e in v.entries)
    )


def exp_sum(a: Element) -> int:
    """Exponent sum of any atom word for ``a``: a conjugation invariant."""
    st = a.st
    return a.inf * st.delta_atom_length + sum(
        st.simple_len(f) for f in a.factors
    )


def delta_meet(x: Element) -> Element:
    """Delta ^ x, the prefix-order meet of Delta with ``x``.

    By left-invariance Delta ^ x = Delta^m ((Delta^(1-m)) ^ z) with
    m = min(inf x, 1) and z = Delta^(-m) x positive; the meet of a
    positive element with Delta^k is the first k normal-form factors.
    """
    st = x.st
    if x.inf >= 1:
        return delta_power(st, 1)
    keep = 1 - x.inf
    if len(x.factors) <= keep:
        return x
    return Element(st, x.inf, x.factors[:keep])


def make_element(word, structure: GarsideStructure) -> Element:
    """Left normal form of a word of signed 1-based atom indices.

    ``word`` may also be a text word in the structure's format.
    """
    if isinstance(word, str):
        word = structure.parse_word(word)
    st = structure
    out = Element(st, 0, ())
    for letter in word:
        idx = st.atom_index(letter)
        atom = st.atoms[idx]
        if letter > 0:
            piece = simple_element(st, atom)
        else:
            comp = st.partial_inv1(atom)
            if comp == st.identity:
                piece = Element(st, -1, ())
            else:
                piece = Element(st, -1, (comp,))
        out = multiply(out, piece)
    return out


def element_to_word(a: Element) -> list:
    """A word of signed 1-based atom indices multiplying out to ``a``."""
    st = a.st
    word: list = []
    if a.inf > 0:
        word.extend(st.delta_letters() * a.inf)
    elif a.inf < 0:
        inv_delta = [-i for i in reversed(st.delta_letters())]
        word.extend(inv_delta * (-a.inf))
    for f in a.factors:
        word.extend(st.simple_to_letters(f))
    return word


def lattice(s: Simple, t: Simple, op: str, structure: GarsideStructure) -> Simple:
    """Lattice operations on Div(Delta): meets both-sided, joins both-sided."""
    if op == "meet_left":
        return structure.meet_left(s, t)
    if op == "meet_right":
        return structure.meet_right(s, t)
    if op == "join_right":
        return structure.join_right(s, t)
    if op == "join_left":
        return structure.join_left(s, t)
    raise BadParameter(f"unknown lattice op {op!r}")


def complement(s: Simple, t: Simple, side: str, structure: GarsideStructure) -> Simple:
    """Right: s\\t with s*(s\\t) = s v t. Left: t/s with (t/s)*s = t v~ s."""
    if side == "right":
        return structure.comp_right(s, t)
    if side == "left":
        return structure.comp_left(s, t)
    raise BadParameter(f"unknown complement side {side!r}")


def partial(s: Simple, k: int, structure: GarsideStructure) -> Simple:
    """partial^k on simples; partial^1(s) = s\\Delta and partial^2 = tau."""
    return structure.partial_pow(s, k)


# ----------------------------------------------------------------------
# canonical encodings and serialization
# ----------------------------------------------------------------------


def encode_element(a: Element) -> bytes:
    st = a.st
    head = _HDR.pack(a.inf, len(a.factors))
    return head + b"".join(st.encode_simple(f) for f in a.factors)


def decode_element(st: GarsideStructure, data: bytes, offset: int = 0):
    """Inverse of encode_element; returns (Element, next offset)."""
    inf, cl = _HDR.unpack_from(data, offset)
    offset += _HDR.size
    n = st.n
    factors = []
    for _ in range(cl):
        factors.append(st.decode_simple(data[offset : offset + n]))
        offset += n
    return Element(st, inf, tuple(factors)), offset


def encode_tuple(a: TupleElement) -> bytes:
    return b"".join(encode_element(e) for e in a.entries)


def decode_tuple(st: GarsideStructure, r: int, data: bytes) -> TupleElement:
    offset = 0
    entries = []
    for _ in range(r):
        e, offset = decode_element(st, data, offset)
        entries.append(e)
    return TupleElement(st, tuple(entries))


def element_to_json(a: Element) -> dict:
    st = a.st
    return {
        "inf": a.inf,
        "factors": [list(st.encode_simple(f)) for f in a.factors],
    }


def element_from_json(obj: dict, structure: GarsideStructure) -> Element:
    factors = tuple(
        structure.decode_simple(bytes(part)) for part in obj["factors"]
    )
    return Element(structure, int(obj["inf"]), factors)


def validate_element(a: Element) -> None:
    """Assert the normal-form invariants; test helper, raises AssertionError."""
    st = a.st
    for f in a.factors:
        assert st.is_simple(f), f"factor {f} is not simple"
        assert f != st.identity, "identity factor in normal form"
        assert f != st.delta, "Delta factor in normal form"
    for s, t in zip(a.factors, a.factors[1:]):
        assert st.renorm_pair(s, t) is None, f"pair {s},{t} not left-weighted"
