"""Key-recovery reductions of four protocol problems to the search SCP.

Each protocol hides a shared value behind conjugations or one-sided
multiplications by elements of commuting subgroups.  Every recovery here
asks a search-SCP oracle for a single simultaneous conjugator of a tuple
built from public data, then reassembles the shared value from the
answer.  The algebra only needs *some* valid conjugator: tuples carry
enough fixed coordinates (subgroup and centralizer generators) to force
any answer into the right coset.

Instance generators produce deterministic test instances on split strand
blocks: braids on disjoint blocks commute, which realizes the commuting
subgroup pairs the problems assume.  Centralizer generating sets are
supplied as inputs, never computed; they are sanity-checked by pairwise
commutation at generation time.
"""

from __future__ import annotations

import random
from typing import Callable, NamedTuple, Optional

from .core import (
    Element,
    GarsideStructure,
    TupleElement,
    conjugate,
    delta_power,
    identity_element,
    inverse,
    multiply,
    simple_element,
)
from .errors import BadParameter, OracleFailed, StructureMismatch

Oracle = Callable[[TupleElement, TupleElement], Optional[Element]]


class SubgroupSpec:
    """A subgroup given by a finite generating sequence of Elements."""

    __slots__ = ("generators",)

    def __init__(self, generators):
        generators = tuple(generators)
        if not generators:
            raise BadParameter("a subgroup needs at least one generator")
        st = generators[0].st
        for g in generators:
            if g.st is not st:
                raise StructureMismatch(
                    "subgroup generators live over different structures")
        self.generators = generators

    @property
    def st(self) -> GarsideStructure:
        return self.generators[0].st

    @property
    def r(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        return f"SubgroupSpec(<{self.r} generators over {self.st.name}>)"


class CountingOracle:
    """Wrap an oracle callable, counting invocations for reporting."""

    __slots__ = ("fn", "calls")

    def __init__(self, fn: Oracle):
        self.fn = fn
        self.calls = 0

    def __call__(self, base: TupleElement, target: TupleElement):
        self.calls += 1
        return self.fn(base, target)


def _ask(oracle: Oracle, base: TupleElement, target: TupleElement) -> Element:
    x = oracle(base, target)
    if x is None:
        raise OracleFailed("search-SCP oracle returned no conjugator")
    if conjugate(base, x) != target:
        raise OracleFailed("search-SCP oracle returned an invalid conjugator")
    return x


def dh_recover(g: Element, B: SubgroupSpec, g_a: Element, g_b: Element,
               oracle: Oracle) -> Element:
    """Shared value g^(ab) from the public data of the two-sided
    conjugation key exchange.

    The tuple pins B's generators, so the oracle's answer commutes with
    all of B and conjugates g exactly as the private a does; applying it
    to g^b therefore lands on g^(ab).
    """
    st = g.st
    base = TupleElement(st, (g,) + B.generators)
    target = TupleElement(st, (g_a,) + B.generators)
    a_t = _ask(oracle, base, target)
    return conjugate(g_b, a_t)


def double_coset_recover(g: Element, A1: SubgroupSpec, A2: SubgroupSpec,
                         B1: SubgroupSpec, B2: SubgroupSpec,
                         u: Element, v: Element, oracle: Oracle) -> Element:
    """Shared value a1*b1*g*a2*b2 from u = a1*g*a2 and v = b1*g*b2.

    For b in B1, b^(g a2) equals b^u and is computable from public data.
    The oracle equation fixes B2's generators and moves the conjugated
    B1 generators, so its answer acts like a2 on them; the pair
    (u*(g*answer)^-1, answer) then replaces (a1, a2) in the product.
    """
    del A1, A2  # public data; the construction consumes only B1 and B2
    st = g.st
    b1_g = tuple(conjugate(b, g) for b in B1.generators)
    b1_u = tuple(conjugate(b, u) for b in B1.generators)
    base = TupleElement(st, b1_g + B2.generators)
    target = TupleElement(st, b1_u + B2.generators)
    a2_t = _ask(oracle, base, target)
    a1_t = multiply(u, inverse(multiply(g, a2_t)))
    return multiply(multiply(a1_t, v), a2_t)


def commutator_recover(A: SubgroupSpec, B: SubgroupSpec,
                       CA: SubgroupSpec, CB: SubgroupSpec,
                       conjA, conjB, oracle: Oracle) -> Element:
    """Commutator [a, b] from A^b and B^a in the commutator key exchange.

    conjA holds A's generators conjugated by the private b, conjB holds
    B's generators conjugated by the private a.  CA and CB must generate
    the centralizers of A and B; they are inputs, not computed.  Pinning
    CB forces the first answer to commute with everything that the
    second answer's defect from a lies in, which makes the assembled
    commutator exact.
    """
    st = A.st
    conjA = tuple(conjA)
    conjB = tuple(conjB)
    if len(conjA) != A.r or len(conjB) != B.r:
        raise BadParameter("conjugated generator tuples must match the "
                           "subgroup generating sets in length")
    b_t = _ask(oracle,
               TupleElement(st, A.generators + CB.generators),
               TupleElement(st, conjA + CB.generators))
    a_t = _ask(oracle,
               TupleElement(st, B.generators + CA.generators),
               TupleElement(st, conjB + CA.generators))
    return multiply(multiply(inverse(a_t), inverse(b_t)),
                    multiply(a_t, b_t))


def centralizer_protocol_recover(g: Element, C: SubgroupSpec,
                                 D_cent: SubgroupSpec, u: Element,
                                 v: Element, oracle: Oracle) -> Element:
    """Shared value a1*b1*g*a2*b2 for the centralizer key exchange.

    Here u = a1*g*a2 with C <= Cent(a1) and a2 in D, v = b1*g*b2 with
    b1 in C and b2 centralized by D_cent's group.  For c in C, c^(g a2)
    equals c^u.  The oracle's answer fixes D_cent's generators, hence
    commutes with b2, and acts on C's conjugated generators like a2.
    """
    st = g.st
    c_g = tuple(conjugate(c, g) for c in C.generators)
    c_u = tuple(conjugate(c, u) for c in C.generators)
    base = TupleElement(st, c_g + D_cent.generators)
    target = TupleElement(st, c_u + D_cent.generators)
    a2_t = _ask(oracle, base, target)
    a1_t = multiply(u, inverse(multiply(g, a2_t)))
    return multiply(multiply(a1_t, v), a2_t)


# ----------------------------------------------------------------------
# instance generation
# ----------------------------------------------------------------------

_PROBLEMS = {
    "dh": "dh",
    "dcp": "double_coset",
    "double_coset": "double_coset",
    "commutator": "commutator",
    "centralizer": "centralizer",
}


class ProblemInstance(NamedTuple):
    problem: str
    structure: GarsideStructure
    public: dict
    truth: Element
    private: dict


def normalize_problem(problem: str) -> str:
    canon = _PROBLEMS.get(problem.lower())
    if canon is None:
        raise BadParameter(
            f"unknown problem {problem!r}; expected dh, double_coset (dcp), "
            "commutator or centralizer")
    return canon


def _sigma(st: GarsideStructure, i: int) -> Element:
    """The positive band swapping strands i-1 and i (1-based i)."""
    perm = list(range(st.n))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return simple_element(st, tuple(perm))


def _sigma_range(st: GarsideStructure, lo: int, hi: int):
    """Elements sigma_lo .. sigma_(hi-1); empty when the range is."""
    return tuple(_sigma(st, i) for i in range(lo, hi))


def _block_twist(st: GarsideStructure, lo: int, width: int) -> Element:
    """Full twist of the strand block [lo, lo+width): central in it."""
    half = identity_element(st)
    for d in range(1, width):
        for j in range(d, 0, -1):
            half = multiply(half, _sigma(st, lo + j))
    return multiply(half, half)


def _word_in(rng: random.Random, gens, st, length: int) -> Element:
    out = identity_element(st)
    for _ in range(length):
        gen = gens[rng.randrange(len(gens))]
        out = multiply(out, gen if rng.random() < 0.5 else inverse(gen))
    return out


def _global_word(rng: random.Random, st: GarsideStructure,
                 length: int) -> Element:
    gens = [simple_element(st, a) for a in st.atoms]
    return _word_in(rng, gens, st, length)


def _commutes(x: Element, y: Element) -> bool:
    return multiply(x, y) == multiply(y, x)


def _check_commuting(gens_a, gens_b, what: str) -> None:
    for x in gens_a:
        for y in gens_b:
            if not _commutes(x, y):
                raise BadParameter(f"instance construction broke [{what}] = 1")


def gen_instance(problem: str, structure: GarsideStructure,
                 params: dict | None = None, seed: int = 0) -> ProblemInstance:
    """A deterministic problem instance on split strand blocks.

    params: n is implied by the structure; "length" sets the word length
    of all private and public random words (default 6).  The strand set
    splits at m = n // 2: the left block carries strands 0..m-1, the
    right block strands m..n-1, and braids of the two blocks commute.
    Requires n >= 4 so both blocks hold a nonempty generating set.
    """
    problem = normalize_problem(problem)
    params = dict(params or {})
    length = params.pop("length", 6)
    if params:
        raise BadParameter(f"unknown instance parameters: {sorted(params)}")
    st = structure
    n = st.n
    if n < 4:
        raise BadParameter("split-strand instances need at least 4 strands")
    if not isinstance(length, int) or length < 0:
        raise BadParameter("length must be a nonnegative integer")
    m = n // 2
    rng = random.Random(seed)

    left = _sigma_range(st, 1, m)            # block on strands 0..m-1
    right = _sigma_range(st, m + 1, n)       # block on strands m..n-1
    _check_commuting(left, right, "left block, right block")
    twist_left = _block_twist(st, 0, m)
    twist_right = _block_twist(st, m - 1, n - m + 1)
    center = delta_power(st, st.tau_order)

    if problem == "dh":
        g = _global_word(rng, st, length)
        a = _word_in(rng, left, st, length)
        b = _word_in(rng, right, st, length)
        g_a = conjugate(g, a)
        g_b = conjugate(g, b)
        truth = conjugate(g_a, b)
        public = {"g": g, "B": SubgroupSpec(right), "g_a": g_a, "g_b": g_b}
        return ProblemInstance(problem, st, public, truth,
                               {"a": a, "b": b})

    if problem == "double_coset":
        g = _global_word(rng, st, length)
        a1 = _word_in(rng, left, st, length)
        a2 = _word_in(rng, left, st, length)
        b1 = _word_in(rng, right, st, length)
        b2 = _word_in(rng, right, st, length)
        u = multiply(multiply(a1, g), a2)
        v = multiply(multiply(b1, g), b2)
        truth = multiply(multiply(multiply(a1, b1), g), multiply(a2, b2))
        public = {"g": g,
                  "A1": SubgroupSpec(left), "A2": SubgroupSpec(left),
                  "B1": SubgroupSpec(right), "B2": SubgroupSpec(right),
                  "u": u, "v": v}
        return ProblemInstance(problem, st, public, truth,
                               {"a1": a1, "a2": a2, "b1": b1, "b2": b2})

    if problem == "commutator":
        # Overlapping blocks: B also uses strand m-1, so A and B do not
        # commute and the commutator is informative.
        a_gens = left
        b_gens = _sigma_range(st, m, n)
        ca = _sigma_range(st, m + 1, n) + (twist_left, center)
        cb = _sigma_range(st, 1, m - 1) + (twist_right, center)
        _check_commuting(a_gens, ca, "A, Cent(A)")
        _check_commuting(b_gens, cb, "B, Cent(B)")
        a = _word_in(rng, a_gens, st, length)
        b = _word_in(rng, b_gens, st, length)
        conjA = tuple(conjugate(x, b) for x in a_gens)
        conjB = tuple(conjugate(x, a) for x in b_gens)
        truth = multiply(multiply(inverse(a), inverse(b)), multiply(a, b))
        public = {"A": SubgroupSpec(a_gens), "B": SubgroupSpec(b_gens),
                  "CA": SubgroupSpec(ca), "CB": SubgroupSpec(cb),
                  "conjA": conjA, "conjB": conjB}
        return ProblemInstance(problem, st, public, truth,
                               {"a": a, "b": b})

    # centralizer protocol: a1 and a2 live in the left block, C is the
    # right block (commutes with a1), and b2 is drawn from the supplied
    # generators of the left block's centralizer so that any valid
    # oracle answer commutes with it.
    g = _global_word(rng, st, length)
    a1 = _word_in(rng, left, st, length)
    a2 = _word_in(rng, left, st, length)
    c_gens = right
    e_gens = _sigma_range(st, m + 1, n) + (twist_left, center)
    _check_commuting((a1,), c_gens, "a1, C")
    _check_commuting(left, e_gens, "D, Cent(D)")
    b1 = _word_in(rng, c_gens, st, length)
    b2 = _word_in(rng, e_gens, st, length)
    u = multiply(multiply(a1, g), a2)
    v = multiply(multiply(b1, g), b2)
    truth = multiply(multiply(multiply(a1, b1), g), multiply(a2, b2))
    public = {"g": g, "C": SubgroupSpec(c_gens),
              "D_cent": SubgroupSpec(e_gens), "u": u, "v": v}
    return ProblemInstance(problem, st, public, truth,
                           {"a1": a1, "a2": a2, "b1": b1, "b2": b2})


def run_recovery(problem: str, public: dict, oracle: Oracle) -> Element:
    """Dispatch a public-data dict to the problem's recovery routine."""
    problem = normalize_problem(problem)
    if problem == "dh":
        return dh_recover(public["g"], public["B"], public["g_a"],
                          public["g_b"], oracle)
    if problem == "double_coset":
        return double_coset_recover(public["g"], public["A1"], public["A2"],
                                    public["B1"], public["B2"], public["u"],
                                    public["v"], oracle)
    if problem == "commutator":
        return commutator_recover(public["A"], public["B"], public["CA"],
                                  public["CB"], public["conjA"],
                                  public["conjB"], oracle)
    return centralizer_protocol_recover(public["g"], public["C"],
                                        public["D_cent"], public["u"],
                                        public["v"], oracle)
