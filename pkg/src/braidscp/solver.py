"""Conjugacy computations for tuples over a Garside structure.

Everything here works on the simultaneous conjugation action
``v ^ x = (x^-1 v_1 x, ..., x^-1 v_r x)`` and on interval constraints
``lo[k] <= inf(v_k)`` and ``sup(v_k) <= hi[k]``:

* ``conj_to_interval`` drags a tuple toward a target interval, one simple
  conjugation per step (simultaneous cycling/decycling).
* ``min_simple`` / ``minimal_simple_set`` compute the minimal simple
  elements whose conjugation keeps a tuple inside an interval.
* ``orbit_in_interval`` closes a tuple under those conjugations, giving
  the finite set ``a^G ∩ [lo, hi]`` with conjugating witnesses.
* ``lex_minimal_interval`` shrinks the interval coordinate by coordinate
  to the lexicographically minimal one meeting the conjugacy class, and
  ``invariant_set`` builds the class invariants (LSS, LSSS, LSSS_prime)
  on top of it.
* ``scp_decide`` / ``scp_search`` answer the simultaneous conjugacy
  problem, with witnesses.

Growth side conventions: "right" grows conjugators by prefix order
(``v ^ s`` with ``x`` left-dividing ``s``), "left" by suffix order
(``s v s^-1`` with ``x`` right-dividing ``s``).
"""

from __future__ import annotations

import math
from collections import deque
from typing import NamedTuple

from .braids import enumerate_simples
from .core import (
    _HDR,
    Element,
    Interval,
    TupleElement,
    conjugate,
    conjugate_by_simple,
    conjugate_tuple_by_simple,
    decode_tuple,
    delta_power,
    encode_tuple,
    exp_sum,
    identity_element,
    in_interval,
    inverse,
    multiply,
    simple_element,
    tau_power,
)
from .errors import (
    BadParameter,
    BadTarget,
    DimensionMismatch,
    NoneExists,
    NotInInterval,
    StructureMismatch,
    Truncated,
    ZeroLengthFactor,
)

DEFAULT_CAP = 100_000


class SlidingTarget:
    """A one-step shrink request relative to a tuple's own inf/sup box."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = tuple(lo)
        hi = tuple(hi)
        if len(lo) != len(hi):
            raise DimensionMismatch(
                f"target bounds have lengths {len(lo)} and {len(hi)}")
        for m in lo + hi:
            if not isinstance(m, int):
                raise BadParameter("sliding target bounds must be integers")
        self.lo = lo
        self.hi = hi

    def __repr__(self) -> str:
        return f"SlidingTarget({self.lo}, {self.hi})"


class ConjResult(NamedTuple):
    conjugator: Element
    success: bool
    image: TupleElement


class MinimalIntervalResult(NamedTuple):
    interval: Interval
    conjugator: Element
    variant: str
    image: TupleElement


class InvariantResult(NamedTuple):
    orbit: "OrbitSet"
    minimal: MinimalIntervalResult


class OrbitSet:
    """Closure of a base tuple under in-interval conjugations.

    ``members`` maps the canonical encoding of each member to a pair
    ``(tuple, witness)`` with ``conjugate(base, witness) = tuple``; it is
    None when the orbit was computed in size-only mode.
    """

    __slots__ = ("base", "interval", "members", "size", "truncated", "mod_tau")

    def __init__(self, base, interval, members, size, truncated, mod_tau):
        self.base = base
        self.interval = interval
        self.members = members
        self.size = size
        self.truncated = truncated
        self.mod_tau = mod_tau

    def __len__(self) -> int:
        return self.size

    def __contains__(self, v) -> bool:
        if self.members is None:
            raise BadParameter("orbit was computed in size-only mode")
        key = encode_tuple(v) if isinstance(v, TupleElement) else v
        return key in self.members

    def keys(self):
        if self.members is None:
            raise BadParameter("orbit was computed in size-only mode")
        return self.members.keys()

    def __repr__(self) -> str:
        return (f"<orbit of size {self.size}"
                f"{' (truncated)' if self.truncated else ''}"
                f"{' mod tau' if self.mod_tau else ''}>")


def _conjugate_tuple_by_inverse_simple(v: TupleElement, h) -> TupleElement:
    """v |-> h v h^-1 for a simple h, via h g h^-1 = tau^-1(partial(h)^-1 g partial(h))."""
    st = v.st
    dh = st.partial1(h)
    return TupleElement(
        st, tuple(tau_power(conjugate_by_simple(g, dh), -1) for g in v.entries))


def sliding_element(a: TupleElement, target: SlidingTarget):
    """Simple element x whose left conjugation a |-> x a x^-1 performs one
    simultaneous cyclic sliding toward the target interval.

    Per coordinate, a raised lower bound contributes the twisted inverse
    complement of the first normal-form factor (cycling) and a lowered
    upper bound contributes the last factor (decycling); the pieces are
    combined by right-lcm. Returns the identity when no bound moved.
    """
    st = a.st
    if len(target.lo) != a.r:
        raise DimensionMismatch(
            f"target has {len(target.lo)} coordinates, tuple has {a.r}")
    x = st.identity
    for j in range(a.r):
        g = a.entries[j]
        dp = target.lo[j] - g.inf
        dq = g.sup - target.hi[j]
        if dp not in (0, 1) or dq not in (0, 1):
            raise BadTarget(
                f"coordinate {j}: target [{target.lo[j]}, {target.hi[j]}] is "
                f"not a one-step shrink of [{g.inf}, {g.sup}]")
        if dp:
            first = g.factors[0] if g.factors else st.identity
            x = st.join_left(x, st.tau_pow(st.partial_inv1(first), -g.inf))
        if dq:
            if not g.factors:
                raise ZeroLengthFactor(
                    f"coordinate {j} has canonical length 0; no factor to slide")
            x = st.join_left(x, g.factors[-1])
    return x


def conj_to_interval(a: TupleElement, iv: Interval, max_steps=None) -> ConjResult:
    """Conjugate a toward iv by at most max_steps simple steps.

    Each step left-conjugates by the right-lcm of the per-coordinate
    sliding pieces (cycling where inf is short, decycling where sup is
    long; sup conditions are skipped for infinite bounds). Stops early
    when no coordinate contributes a piece. The conjugator y satisfies
    image = conjugate(a, inverse(y)).
    """
    st = a.st
    if a.r != iv.r:
        raise DimensionMismatch(f"tuple has {a.r} coordinates, interval {iv.r}")
    if max_steps is None:
        max_steps = st.delta_atom_length - 1
    c = a
    y = identity_element(st)
    steps = 0
    while steps < max_steps and not in_interval(c, iv):
        h = st.identity
        for k, g in enumerate(c.entries):
            if g.inf < iv.lo[k]:
                first = g.factors[0] if g.factors else st.identity
                h = st.join_left(h, st.tau_pow(st.partial_inv1(first), -g.inf))
            hi = iv.hi[k]
            if hi != math.inf and g.sup > hi and g.factors:
                h = st.join_left(h, g.factors[-1])
        if h == st.identity:
            break
        y = multiply(simple_element(st, h), y)
        c = _conjugate_tuple_by_inverse_simple(c, h)
        steps += 1
    return ConjResult(y, in_interval(c, iv), c)


class _IntervalCtx:
    """Precompiled membership conditions for conjugating v inside iv.

    A conjugate of v by a simple s stays in iv iff, for every compiled
    condition (shift, seq), the complement fold of tau^shift(s) through
    seq divides s on the growth side. Coordinates with slack (strict
    inequality or infinite bound) impose no condition, since one simple
    conjugation moves inf and sup by at most one.
    """

    __slots__ = ("st", "side", "conds")

    def __init__(self, v: TupleElement, iv: Interval, side: str):
        st = v.st
        self.st = st
        self.side = side
        right = side == "right"
        conds = []
        for k, g in enumerate(v.entries):
            lo = iv.lo[k]
            hi = iv.hi[k]
            if g.inf == lo:
                if right:
                    conds.append((lo, g.factors))
                else:
                    conds.append(
                        (-lo, tuple(st.tau_pow(f, -lo)
                                    for f in reversed(g.factors))))
            if hi != math.inf and g.sup == hi:
                if right:
                    w = multiply(delta_power(st, hi), inverse(g))
                    assert not w.inf
                    conds.append((-hi, w.factors))
                else:
                    w = multiply(inverse(g), delta_power(st, hi))
                    assert not w.inf
                    conds.append((hi, tuple(reversed(w.factors))))
        self.conds = conds

    def defect(self, s):
        """Join of the corrections s must absorb; identity iff s is valid."""
        st = self.st
        if self.side == "right":
            comp, join = st.comp_right, st.join_right
            cache = st._memo_comp_r
        else:
            comp, join = st.comp_left, st.join_left
            cache = st._memo_comp_l
        ident = st.identity
        total = ident
        for shift, seq in self.conds:
            u = st.tau_pow(s, shift)
            for f in seq:
                # inline memo hit; comp never caches a None value
                hit = cache.get((f, u))
                u = comp(f, u) if hit is None else hit
                if u == ident:
                    break
            if u == ident:
                continue
            d = comp(s, u)
            if d != ident:
                total = join(total, d)
        return total

    def grow(self, x):
        """Minimal valid simple above x on the growth side."""
        st = self.st
        s = x
        for _ in range(st.delta_atom_length + 1):
            d = self.defect(s)
            if d == st.identity:
                return s
            grown = (st.product_if_simple(s, d) if self.side == "right"
                     else st.product_if_simple(d, s))
            if grown is None:
                raise NoneExists(
                    "no simple conjugator keeps the tuple in the interval")
            s = grown
        raise NoneExists("conjugator growth failed to stabilize below delta")


def _check_side(side: str) -> None:
    if side not in ("right", "left"):
        raise BadParameter(f"side must be 'right' or 'left', got {side!r}")


def min_simple(v: TupleElement, iv: Interval, x, side: str = "right"):
    """The minimal simple s divided by x on the growth side with the
    conjugate of v by s (right: v^s, left: s v s^-1) still inside iv."""
    _check_side(side)
    if not in_interval(v, iv):
        raise NotInInterval("tuple is outside the interval")
    return _IntervalCtx(v, iv, side).grow(x)


def minimal_simple_set(v: TupleElement, iv: Interval, side: str = "right") -> list:
    """All minimal simples whose conjugation keeps v inside iv.

    Grows one candidate per atom, then drops a candidate when another
    atom of larger index, or one whose candidate was already kept,
    divides it on the growth side; at most one survivor per distinct
    minimal element remains.
    """
    _check_side(side)
    if not in_interval(v, iv):
        raise NotInInterval("tuple is outside the interval")
    st = v.st
    ctx = _IntervalCtx(v, iv, side)
    mins = [ctx.grow(x) for x in st.atoms]
    descent = (st.left_descent_atoms if side == "right"
               else st.right_descent_atoms)
    kept: set = set()
    out = []
    for i, r in enumerate(mins):
        ok = True
        for j in descent(r):
            if j != i and (j > i or j in kept):
                ok = False
                break
        if ok:
            kept.add(i)
            out.append(r)
    return out


def _tau_enc(st, payload: bytes) -> bytes:
    """Encoded tau(s) from encoded s, memoized per structure."""
    out = st._memo_tau_enc.get(payload)
    if out is None:
        out = st.encode_simple(st.tau_pow(st.decode_simple(payload), 1))
        st._memo_tau_enc[payload] = out
    return out


def _tau_canonical(v: TupleElement):
    """(k, tau^k(v), key) for the encode-minimal member of v's tau orbit.

    tau fixes infimum and canonical length, so the shifted encodings share
    v's headers and only factor payloads move; comparing candidate keys at
    the byte level defers Element construction to the winning shift.
    """
    st = v.st
    heads = []
    coords = []
    for e in v.entries:
        heads.append(_HDR.pack(e.inf, len(e.factors)))
        coords.append([st.encode_simple(f) for f in e.factors])
    key0 = b"".join(h + b"".join(c) for h, c in zip(heads, coords))
    best_k, best_key = 0, key0
    cur = coords
    for k in range(1, st.tau_order):
        cur = [[_tau_enc(st, b) for b in c] for c in cur]
        key = b"".join(h + b"".join(c) for h, c in zip(heads, cur))
        if key == key0:
            break
        if key < best_key:
            best_k, best_key = k, key
    if best_k == 0:
        return 0, v, key0
    return best_k, tau_power(v, best_k), best_key


def orbit_in_interval(a: TupleElement, iv: Interval, *, use_minimal: bool = True,
                      cap: int = DEFAULT_CAP, mod_tau: bool = False,
                      collect: str = "full", stop_key: bytes | None = None,
                      side: str = "right") -> OrbitSet:
    """Breadth-first closure of {a} under in-interval conjugation.

    Edges conjugate by the minimal simple elements of the popped member
    (or by every simple when use_minimal is false, keeping only images
    inside iv). With mod_tau, members are stored as the encode-minimal
    representatives of their tau orbits, witnesses adjusted by the
    matching delta power. collect="size" skips member and witness
    storage and only counts. A stop_key returns as soon as that encoding
    is inserted (the set is then deliberately partial). Exceeding cap
    sets truncated and stops; the size never passes cap.
    """
    st = a.st
    _check_side(side)
    if a.r != iv.r:
        raise DimensionMismatch(f"tuple has {a.r} coordinates, interval {iv.r}")
    if not in_interval(a, iv):
        raise NotInInterval("base tuple is outside the interval")
    if collect not in ("full", "size"):
        raise BadParameter(f"collect must be 'full' or 'size', got {collect!r}")
    if cap < 1:
        raise BadParameter("cap must be at least 1")
    full = collect == "full"

    if not use_minimal:
        all_simples = [s for s in enumerate_simples(st) if s != st.identity]

    if mod_tau:
        k0, start, key0 = _tau_canonical(a)
        wit0 = delta_power(st, k0)
    else:
        start, key0 = a, encode_tuple(a)
        wit0 = identity_element(st)

    members = {key0: (start, wit0)} if full else None
    seen = {key0}
    size = 1
    truncated = False
    if stop_key == key0:
        return OrbitSet(a, iv, members, size, truncated, mod_tau)

    queue = deque((key0,))
    while queue:
        key = queue.popleft()
        if full:
            v, wit = members[key]
        else:
            v = decode_tuple(st, a.r, key)
        gens = (minimal_simple_set(v, iv, side) if use_minimal else all_simples)
        stop = False
        for s in gens:
            if side == "right":
                u = conjugate_tuple_by_simple(v, s)
            else:
                u = _conjugate_tuple_by_inverse_simple(v, s)
            if not in_interval(u, iv):
                continue
            if mod_tau:
                k, u, ukey = _tau_canonical(u)
            else:
                ukey = encode_tuple(u)
            if ukey in seen:
                continue
            if size >= cap:
                truncated = True
                stop = True
                break
            seen.add(ukey)
            size += 1
            if full:
                s_el = simple_element(st, s)
                wu = multiply(wit, s_el if side == "right" else inverse(s_el))
                if mod_tau and k:
                    wu = multiply(wu, delta_power(st, k))
                members[ukey] = (u, wu)
            queue.append(ukey)
            if ukey == stop_key:
                stop = True
                break
        if stop:
            break
    return OrbitSet(a, iv, members, size, truncated, mod_tau)


def mod_tau_reduce(oset: OrbitSet) -> OrbitSet:
    """Collapse an orbit's members to one representative per tau orbit.

    Keeps the encode-minimal member of each tau orbit, composing the
    witness with the delta power that reaches it.
    """
    if oset.members is None:
        raise BadParameter("orbit was computed in size-only mode")
    if oset.mod_tau:
        return oset
    st = oset.base.st
    members = {}
    for v, w in oset.members.values():
        k, vc, key = _tau_canonical(v)
        if key not in members:
            members[key] = (vc, multiply(w, delta_power(st, k)) if k else w)
    return OrbitSet(oset.base, oset.interval, members, len(members),
                    oset.truncated, True)


def lex_minimal_interval(a: TupleElement, variant: str = "lex") -> MinimalIntervalResult:
    """Shrink a's interval to the lexicographically minimal one meeting a^G.

    Every attempt asks conj_to_interval (bounded by one delta's worth of
    sliding steps) for a one-step shrink on the prefix tuple; failure
    certifies the shrunk interval misses the class, success commits the
    conjugation to the full tuple. Variant "lex" alternates raise-inf /
    lower-sup per coordinate; "lex_prime" raises every inf first (sup
    unconstrained), then lowers every sup with all inf bounds held.
    """
    if variant not in ("lex", "lex_prime"):
        raise BadParameter(f"variant must be 'lex' or 'lex_prime', got {variant!r}")
    st = a.st
    max_steps = st.delta_atom_length - 1
    state = {"cur": a, "conj": identity_element(st)}

    def attempt(i: int, lo: tuple, hi: tuple) -> bool:
        res = conj_to_interval(state["cur"].prefix(i + 1), Interval(lo, hi),
                               max_steps)
        if res.success:
            yinv = inverse(res.conjugator)
            state["cur"] = conjugate(state["cur"], yinv)
            state["conj"] = multiply(state["conj"], yinv)
        return res.success

    def raise_inf(i: int, lo_prefix: tuple, hi: tuple) -> int:
        while attempt(i, lo_prefix + (state["cur"].entries[i].inf + 1,), hi):
            pass
        return state["cur"].entries[i].inf

    def lower_sup(i: int, lo: tuple, hi_prefix: tuple, floor: int,
                  pad: tuple = ()) -> int:
        while (state["cur"].entries[i].sup > floor
               and attempt(i + len(pad), lo,
                           hi_prefix + (state["cur"].entries[i].sup - 1,) + pad)):
            pass
        return state["cur"].entries[i].sup

    lo_bounds: list = []
    hi_bounds: list = []
    if variant == "lex":
        for i in range(a.r):
            lo_i = raise_inf(i, tuple(lo_bounds),
                             tuple(hi_bounds) + (math.inf,))
            lo_bounds.append(lo_i)
            hi_bounds.append(lower_sup(i, tuple(lo_bounds), tuple(hi_bounds),
                                       lo_i))
    else:
        for i in range(a.r):
            lo_bounds.append(raise_inf(i, tuple(lo_bounds),
                                       (math.inf,) * (i + 1)))
        # Sup lowering targets the whole tuple: every committed inf bound
        # stays in force (tail sups padded with inf), otherwise trailing
        # coordinates drift below their lo bounds between phases.
        for i in range(a.r):
            hi_bounds.append(lower_sup(i, tuple(lo_bounds), tuple(hi_bounds),
                                       lo_bounds[i],
                                       (math.inf,) * (a.r - i - 1)))

    return MinimalIntervalResult(Interval(tuple(lo_bounds), tuple(hi_bounds)),
                                 state["conj"], variant, state["cur"])


_KIND_VARIANTS = {"LSSS": "lex", "LSSS_prime": "lex_prime", "LSS": "lex_prime"}
_KIND_ALIASES = {"lsss": "LSSS", "lsssp": "LSSS_prime", "lsss_prime": "LSSS_prime",
                 "lss": "LSS"}


def normalize_kind(kind: str) -> str:
    canon = _KIND_ALIASES.get(kind.lower())
    if canon is None:
        raise BadParameter(
            f"unknown invariant kind {kind!r}; expected LSS, LSSS or LSSS_prime")
    return canon


def invariant_set_detail(a: TupleElement, kind: str, *, use_minimal: bool = True,
                         cap: int = DEFAULT_CAP, mod_tau: bool = False,
                         collect: str = "full") -> InvariantResult:
    """invariant_set plus the minimal-interval search that produced it."""
    kind = normalize_kind(kind)
    res = lex_minimal_interval(a, _KIND_VARIANTS[kind])
    iv = res.interval
    if kind == "LSS":
        iv = Interval(iv.lo, (math.inf,) * a.r)
    orbit = orbit_in_interval(res.image, iv, use_minimal=use_minimal, cap=cap,
                              mod_tau=mod_tau, collect=collect)
    return InvariantResult(orbit, res)


def invariant_set(a: TupleElement, kind: str, *, use_minimal: bool = True,
                  cap: int = DEFAULT_CAP, mod_tau: bool = False,
                  collect: str = "full") -> OrbitSet:
    """The conjugacy-class invariant set of kind LSS, LSSS or LSSS_prime.

    Computes the kind's minimal interval (lex for LSSS, lex_prime for
    LSSS_prime and LSS, the latter with sup bounds dropped to infinity),
    conjugates a into it, and returns the orbit inside it.
    """
    return invariant_set_detail(a, kind, use_minimal=use_minimal, cap=cap,
                                mod_tau=mod_tau, collect=collect).orbit


def _scp_witness(a: TupleElement, c: TupleElement, *, use_minimal: bool = True,
                 cap: int = DEFAULT_CAP, mod_tau: bool = False):
    if a.st is not c.st:
        raise StructureMismatch("tuples live over different structures")
    if a.r != c.r:
        raise DimensionMismatch(f"tuples have lengths {a.r} and {c.r}")
    for ga, gc in zip(a.entries, c.entries):
        if exp_sum(ga) != exp_sum(gc):
            return None
    ra = lex_minimal_interval(a, "lex")
    rc = lex_minimal_interval(c, "lex")
    if ra.interval != rc.interval:
        return None
    st = a.st
    if mod_tau:
        kc, _, ckey = _tau_canonical(rc.image)
    else:
        kc, ckey = 0, encode_tuple(rc.image)
    oset = orbit_in_interval(ra.image, ra.interval, use_minimal=use_minimal,
                             cap=cap, mod_tau=mod_tau, stop_key=ckey)
    hit = oset.members.get(ckey)
    if hit is None:
        if oset.truncated:
            raise Truncated(
                f"membership undecided: orbit exceeded cap {cap}")
        return None
    x = multiply(ra.conjugator, hit[1])
    if kc:
        x = multiply(x, delta_power(st, -kc))
    return multiply(x, inverse(rc.conjugator))


def scp_decide(a: TupleElement, c: TupleElement, *, use_minimal: bool = True,
               cap: int = DEFAULT_CAP, mod_tau: bool = False) -> bool:
    """Whether some single x conjugates every a_k to the matching c_k.

    Rejects cheaply on mismatched per-coordinate exponent sums or
    mismatched lex-minimal intervals, otherwise tests membership of c's
    in-interval representative in a's orbit. Raises Truncated when the
    orbit hits cap before deciding.
    """
    return _scp_witness(a, c, use_minimal=use_minimal, cap=cap,
                        mod_tau=mod_tau) is not None


def scp_search(a: TupleElement, c: TupleElement, *, use_minimal: bool = True,
               cap: int = DEFAULT_CAP, mod_tau: bool = False):
    """An Element x with conjugate(a, x) = c, or None when no x exists.

    Same procedure and Truncated behavior as scp_decide, composing the
    witness from the two minimal-interval conjugators and the orbit
    edge witnesses.
    """
    return _scp_witness(a, c, use_minimal=use_minimal, cap=cap, mod_tau=mod_tau)
