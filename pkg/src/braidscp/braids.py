"""The two built-in Garside structures on the braid group B_N.

Artin (half-twist) structure: simples are the N! permutations, atoms are
the adjacent transpositions, Delta is the order-reversing permutation.

Band-generator structure: simples are the noncrossing partitions of
{1..N} (Catalan(N) of them), stored as the permutation whose cycles
traverse each block in increasing order; atoms are all transpositions
a_(t,s) with t > s, and Delta is the N-cycle i -> i+1.
"""

from __future__ import annotations

import math
from functools import lru_cache

from .core import GarsideStructure, Simple
from .errors import BadParameter, IndexOutOfRange, TooLarge


class ArtinStructure(GarsideStructure):
    def __init__(self, n: int):
        if n < 2:
            raise BadParameter(f"need at least 2 strands, got {n}")
        self.name = "artin"
        self.n = n
        self.identity = tuple(range(n))
        self.delta = tuple(range(n - 1, -1, -1))
        atoms = []
        for i in range(n - 1):
            p = list(range(n))
            p[i], p[i + 1] = p[i + 1], p[i]
            atoms.append(tuple(p))
        self.atoms = tuple(atoms)
        self.delta_atom_length = n * (n - 1) // 2
        self.tau_order = 1 if n == 2 else 2
        self.n_simples = math.factorial(n)
        self._sorted_range = list(range(n))
        super().__init__()

    def __reduce__(self):
        return (artin_structure, (self.n,))

    def simple_len(self, s: Simple) -> int:
        count = 0
        for i in range(len(s) - 1):
            si = s[i]
            for j in range(i + 1, len(s)):
                if si > s[j]:
                    count += 1
        return count

    def is_simple(self, s: Simple) -> bool:
        return len(s) == self.n and sorted(s) == self._sorted_range

    def product_if_simple(self, s: Simple, t: Simple):
        # Every permutation is simple here; only length additivity matters.
        u = self.compose(s, t)
        if self.simple_len(s) + self.simple_len(t) != self.simple_len(u):
            return None
        return u

    def right_divides(self, t: Simple, s: Simple) -> bool:
        u = self.compose(t, self.inverse_perm(s))
        return self.simple_len(u) + self.simple_len(s) == self.simple_len(t)

    def left_divides(self, s: Simple, t: Simple) -> bool:
        # s divides t on the left iff every inversion of s is one of t.
        n = self.n
        for i in range(n - 1):
            si = s[i]
            ti = t[i]
            for j in range(i + 1, n):
                if si > s[j] and ti < t[j]:
                    return False
        return True

    def meet_left(self, s: Simple, t: Simple) -> Simple:
        """Greedy common-descent extension; any maximal chain of common
        left divisors reaches the gcd, so the scan order is free."""
        if s == t:
            return s
        n = self.n
        us = list(s)
        ut = list(t)
        m = list(range(n))
        minv = list(range(n))
        stack = [
            i for i in range(n - 1) if us[i] > us[i + 1] and ut[i] > ut[i + 1]
        ]
        while stack:
            i = stack.pop()
            if us[i] > us[i + 1] and ut[i] > ut[i + 1]:
                us[i], us[i + 1] = us[i + 1], us[i]
                ut[i], ut[i + 1] = ut[i + 1], ut[i]
                pi, pi1 = minv[i], minv[i + 1]
                m[pi], m[pi1] = i + 1, i
                minv[i], minv[i + 1] = pi1, pi
                if i > 0:
                    stack.append(i - 1)
                if i < n - 2:
                    stack.append(i + 1)
        return tuple(m)

    def meet_right(self, s: Simple, t: Simple) -> Simple:
        return self.inverse_perm(
            self.meet_left(self.inverse_perm(s), self.inverse_perm(t))
        )

    def tau_pow(self, s: Simple, k: int) -> Simple:
        if k % 2 == 0 or self.n == 2:
            return s
        n = self.n
        return tuple(n - 1 - s[n - 1 - i] for i in range(n))

    def left_descent_atoms(self, s: Simple) -> tuple:
        return tuple(i for i in range(self.n - 1) if s[i] > s[i + 1])

    def right_descent_atoms(self, s: Simple) -> tuple:
        inv = self.inverse_perm(s)
        return tuple(i for i in range(self.n - 1) if inv[i] > inv[i + 1])

    def encode_simple(self, s: Simple) -> bytes:
        return bytes(s)

    def decode_simple(self, data: bytes) -> Simple:
        return tuple(data)

    def simple_to_letters(self, s: Simple) -> list:
        letters = []
        cur = list(s)
        n = self.n
        while True:
            for i in range(n - 1):
                if cur[i] > cur[i + 1]:
                    letters.append(i + 1)
                    cur[i], cur[i + 1] = cur[i + 1], cur[i]
                    break
            else:
                return letters

    def parse_word(self, text: str) -> list:
        letters = []
        for tok in text.split():
            try:
                v = int(tok)
            except ValueError:
                raise IndexOutOfRange(f"bad letter {tok!r}") from None
            if v == 0 or abs(v) > self.n_atoms:
                raise IndexOutOfRange(f"letter {v} out of range")
            letters.append(v)
        return letters

    def format_word(self, letters) -> str:
        return " ".join(str(v) for v in letters)


class BKLStructure(GarsideStructure):
    def __init__(self, n: int):
        if n < 2:
            raise BadParameter(f"need at least 2 strands, got {n}")
        self.name = "bkl"
        self.n = n
        self.identity = tuple(range(n))
        self.delta = tuple((i + 1) % n for i in range(n))
        pairs = []
        for t in range(2, n + 1):
            for s in range(1, t):
                pairs.append((t, s))
        self.atom_pairs = tuple(pairs)
        atoms = []
        for t, s in pairs:
            p = list(range(n))
            p[t - 1], p[s - 1] = p[s - 1], p[t - 1]
            atoms.append(tuple(p))
        self.atoms = tuple(atoms)
        self._pair_to_index = {pr: i for i, pr in enumerate(pairs)}
        self.delta_atom_length = n - 1
        self.tau_order = 1 if n == 2 else n
        self.n_simples = math.comb(2 * n, n) // (n + 1)
        self._memo_labels: dict = {}
        super().__init__()

    def __reduce__(self):
        return (bkl_structure, (self.n,))

    def _labels(self, s: Simple) -> bytes:
        """Block labeling: lab[i] = the minimum of the cycle through i."""
        lab = self._memo_labels.get(s)
        if lab is None:
            n = self.n
            raw = [-1] * n
            for i in range(n):
                if raw[i] >= 0:
                    continue
                raw[i] = i
                j = s[i]
                while j != i:
                    raw[j] = i
                    j = s[j]
            lab = bytes(raw)
            self._memo_labels[s] = lab
        return lab

    def simple_len(self, s: Simple) -> int:
        n = len(s)
        seen = [False] * n
        cycles = 0
        for i in range(n):
            if not seen[i]:
                cycles += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = s[j]
        return n - cycles

    def is_simple(self, s: Simple) -> bool:
        # Each cycle must traverse its block in increasing order from the
        # minimum, and the blocks must be mutually noncrossing.
        n = self.n
        if len(s) != n:
            return False
        lab = [-1] * n
        maxlab = {}
        for i in range(n):
            if lab[i] >= 0:
                continue
            lab[i] = i
            prev = i
            j = s[i]
            while j != i:
                if not 0 <= j < n or j < prev or lab[j] >= 0:
                    return False
                lab[j] = i
                prev = j
                j = s[j]
            maxlab[i] = prev
        stack = []
        for i in range(n):
            lb = lab[i]
            if lb == i:
                stack.append(lb)
            if stack[-1] != lb:
                return False
            if i == maxlab[lb]:
                stack.pop()
        return True

    def left_divides(self, s: Simple, t: Simple) -> bool:
        # Divisibility of noncrossing simples is block refinement.
        labt = self._labels(t)
        for i, si in enumerate(s):
            if labt[si] != labt[i]:
                return False
        return True

    def meet_left(self, s: Simple, t: Simple) -> Simple:
        if s == t:
            return s
        ls = self._labels(s)
        lt = self._labels(t)
        groups: dict = {}
        for i in range(self.n):
            groups.setdefault((ls[i], lt[i]), []).append(i)
        out = [0] * self.n
        for g in groups.values():
            m = len(g)
            for k in range(m):
                out[g[k]] = g[(k + 1) % m]
        return tuple(out)

    def meet_right(self, s: Simple, t: Simple) -> Simple:
        # Left and right divisibility coincide on noncrossing simples
        # (conjugation invariance of the reflection length), so the two
        # meets are the same operation.
        return self.meet_left(s, t)

    def right_divides(self, t: Simple, s: Simple) -> bool:
        return self.left_divides(s, t)

    def tau_pow(self, s: Simple, k: int) -> Simple:
        n = self.n
        k %= n
        if k == 0:
            return s
        out = [0] * n
        for i in range(n):
            out[(i + k) % n] = (s[i] + k) % n
        return tuple(out)

    def left_descent_atoms(self, s: Simple) -> tuple:
        lab = self._labels(s)
        return tuple(
            idx
            for idx, (t, u) in enumerate(self.atom_pairs)
            if lab[t - 1] == lab[u - 1]
        )

    def right_descent_atoms(self, s: Simple) -> tuple:
        return self.left_descent_atoms(s)

    def encode_simple(self, s: Simple) -> bytes:
        return self._labels(s)

    def decode_simple(self, data: bytes) -> Simple:
        groups: dict = {}
        for i, lb in enumerate(data):
            groups.setdefault(lb, []).append(i)
        out = [0] * self.n
        for g in groups.values():
            m = len(g)
            for k in range(m):
                out[g[k]] = g[(k + 1) % m]
        return tuple(out)

    def simple_to_letters(self, s: Simple) -> list:
        lab = self._labels(s)
        blocks: dict = {}
        for i in range(self.n):
            blocks.setdefault(lab[i], []).append(i)
        letters = []
        for lb in sorted(blocks):
            block = blocks[lb]
            for k in range(len(block) - 1, 0, -1):
                pair = (block[k] + 1, block[k - 1] + 1)
                letters.append(self._pair_to_index[pair] + 1)
        return letters

    def parse_word(self, text: str) -> list:
        letters = []
        for tok in text.split():
            neg = tok.startswith("-")
            body = tok[1:] if neg else tok
            if not (body.startswith("(") and body.endswith(")")):
                raise IndexOutOfRange(f"bad band letter {tok!r}")
            try:
                t, s = (int(x) for x in body[1:-1].split(","))
            except ValueError:
                raise IndexOutOfRange(f"bad band letter {tok!r}") from None
            idx = self._pair_to_index.get((t, s))
            if idx is None:
                raise IndexOutOfRange(f"no band generator {tok!r}")
            letters.append(-(idx + 1) if neg else idx + 1)
        return letters

    def format_word(self, letters) -> str:
        out = []
        for v in letters:
            t, s = self.atom_pairs[abs(v) - 1]
            out.append(f"{'-' if v < 0 else ''}({t},{s})")
        return " ".join(out)


@lru_cache(maxsize=None)
def artin_structure(n: int) -> ArtinStructure:
    """The classical (half-twist) Garside structure on B_n."""
    if not isinstance(n, int) or n < 2:
        raise BadParameter(f"strand count must be an integer >= 2, got {n!r}")
    if n > 255:
        raise BadParameter("strand count above 255 is not supported")
    return ArtinStructure(n)


@lru_cache(maxsize=None)
def bkl_structure(n: int) -> BKLStructure:
    """The band-generator (dual) Garside structure on B_n."""
    if not isinstance(n, int) or n < 2:
        raise BadParameter(f"strand count must be an integer >= 2, got {n!r}")
    if n > 255:
        raise BadParameter("strand count above 255 is not supported")
    return BKLStructure(n)


def structure_for(token: str, n: int) -> GarsideStructure:
    if token == "artin":
        return artin_structure(n)
    if token == "bkl":
        return bkl_structure(n)
    raise BadParameter(f"unknown structure token {token!r}")


def enumerate_simples(structure: GarsideStructure) -> list:
    """The full simple set as the closure of the atoms under \\ and v.

    A test oracle only: refuses predicted sizes above 10**6, and production
    code never iterates all simples.
    """
    if structure.n_simples > 1_000_000:
        raise TooLarge(
            f"{structure!r} has {structure.n_simples} simples; refusing"
        )
    st = structure
    simples = {st.identity, st.delta}
    simples.update(st.atoms)
    frontier = list(simples)
    while frontier:
        new = []
        current = list(simples)
        for s in frontier:
            for t in current:
                c1 = st.comp_right(s, t)
                c2 = st.comp_right(t, s)
                join = st.compose(s, c1)
                for u in (c1, c2, join):
                    if u not in simples:
                        simples.add(u)
                        new.append(u)
        frontier = new
    return sorted(simples, key=st.encode_simple)
