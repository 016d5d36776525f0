"""Root systems, reflection groups and the noncrossing partition interval.

Group elements are exact integer matrices acting on the root lattice in
the simple-root basis.  Reflection length is the rank of w - id, the
absolute order is decided by length additivity, and the interval below
the Coxeter element is enumerated by breadth-first search so the full
group is never materialized.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import identity, mat_inverse, mat_mul, mat_sub, mat_vec, rank


class NotARoot(ValueError):
    pass


class NotInInterval(ValueError):
    pass


class WrongSeries(ValueError):
    pass


_E_RANKS = (6, 7, 8)
_POSITIVE_COUNTS = {"E": {6: 36, 7: 63, 8: 120}}


@dataclass(frozen=True)
class DynkinType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in ("A", "D", "E"):
            raise ValueError(f"unknown series {self.series!r}")
        if self.series == "A" and self.rank < 1:
            raise ValueError("series A needs rank >= 1")
        if self.series == "D" and self.rank < 4:
            raise ValueError("series D needs rank >= 4")
        if self.series == "E" and self.rank not in _E_RANKS:
            raise ValueError("series E needs rank in {6, 7, 8}")

    @property
    def coxeter_number(self):
        if self.series == "A":
            return self.rank + 1
        if self.series == "D":
            return 2 * self.rank - 2
        return {6: 12, 7: 18, 8: 30}[self.rank]

    @property
    def exponent_bound(self):
        """h - 1, the largest exponent."""
        return self.coxeter_number - 1

    def __str__(self):
        return f"{self.series}{self.rank}"


def arrows(delta):
    """Arrows of the fixed orientation, 1-based vertex pairs (source, target).

    A_n is linear 1 -> 2 -> ... -> n.  D_n is linear with the fork at
    n-2 pointing to n-1 and n.  E types point the branch node 3 at 2, 4
    and 5, with 2 -> 1 and the long tail 5 -> 6 (-> 7 -> 8).
    """
    n = delta.rank
    if delta.series == "A":
        return tuple((i, i + 1) for i in range(1, n))
    if delta.series == "D":
        chain = tuple((i, i + 1) for i in range(1, n - 2))
        return chain + ((n - 2, n - 1), (n - 2, n))
    out = [(2, 1), (3, 2), (3, 4), (3, 5), (5, 6)]
    for v in range(7, n + 1):
        out.append((v - 1, v))
    return tuple(out)


@dataclass(frozen=True)
class GroupElement:
    matrix: tuple

    def __mul__(self, other):
        return GroupElement(mat_mul(self.matrix, other.matrix))

    def inverse(self):
        return GroupElement(mat_inverse(self.matrix))

    def __call__(self, v):
        return mat_vec(self.matrix, v)


class RootSystem:
    """Positive roots, Euler/symmetric forms and simple reflections."""

    def __init__(self, delta):
        self.delta = delta
        n = delta.rank
        self.rank = n
        self.arrows = arrows(delta)
        euler = [[int(i == j) for j in range(n)] for i in range(n)]
        for (a, b) in self.arrows:
            euler[a - 1][b - 1] -= 1
        self.euler_form = tuple(tuple(row) for row in euler)
        self.sym_form = tuple(
            tuple(euler[i][j] + euler[j][i] for j in range(n)) for i in range(n)
        )
        self.simples = tuple(
            tuple(int(i == j) for j in range(n)) for i in range(n)
        )
        self.positives = self._close_roots()
        self._simple_reflections = tuple(
            self._reflection_matrix(s) for s in self.simples
        )
        self.cox = GroupElement(
            _product([self._simple_reflections[i - 1] for i in self._exceptional_order()])
        )
        # the product over an exceptional ordering of the simples is the
        # Coxeter transformation of the Euler form: it sends the dimension
        # vector of each projective to minus that of the matching injective
        euler_inv = mat_inverse(self.euler_form)
        expected = tuple(
            tuple(-x for x in row)
            for row in mat_mul(euler_inv, tuple(zip(*self.euler_form)))
        )
        assert self.cox.matrix == expected
        self.identity = GroupElement(identity(n))
        self._length_cache = {}
        self._roots_below_cache = {}
        self._nc_cache = None

    # -- construction ------------------------------------------------

    def pairing(self, v, w):
        """Symmetrized bilinear form (v, w)."""
        return sum(
            v[i] * self.sym_form[i][j] * w[j]
            for i in range(self.rank)
            for j in range(self.rank)
        )

    def _reflection_matrix(self, v):
        n = self.rank
        cv = mat_vec(self.sym_form, v)
        return tuple(
            tuple(int(i == j) - v[i] * cv[j] for j in range(n)) for i in range(n)
        )

    def _close_roots(self):
        n = self.rank
        refls = [self._reflection_matrix(s) for s in self.simples]
        roots = set(self.simples)
        frontier = set(self.simples)
        while frontier:
            new = set()
            for v in frontier:
                for m in refls:
                    w = mat_vec(m, v)
                    if w not in roots and tuple(-x for x in w) not in roots:
                        new.add(w)
            roots |= new
            frontier = new
        positives = sorted(v for v in roots if all(x >= 0 for x in v))
        expected = self._expected_positive_count()
        assert len(positives) == expected, (self.delta, len(positives))
        assert all(self.pairing(v, v) == 2 for v in positives)
        return tuple(positives)

    def _expected_positive_count(self):
        n = self.rank
        if self.delta.series == "A":
            return n * (n + 1) // 2
        if self.delta.series == "D":
            return n * (n - 1)
        return _POSITIVE_COUNTS["E"][n]

    def _exceptional_order(self):
        """Topological order of the quiver; makes the simples exceptional."""
        n = self.rank
        outgoing = {i: [] for i in range(1, n + 1)}
        indeg = {i: 0 for i in range(1, n + 1)}
        for (a, b) in self.arrows:
            outgoing[a].append(b)
            indeg[b] += 1
        ready = sorted(i for i in indeg if indeg[i] == 0)
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for w in outgoing[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
            ready.sort()
        assert len(order) == n
        return order

    # -- basic queries -----------------------------------------------

    def simple_reflection(self, i):
        """Reflection in the i-th simple root, 1-based."""
        return GroupElement(self._simple_reflections[i - 1])

    def normalize_root(self, v):
        """Return (positive root, sign) for a root vector v."""
        if all(x >= 0 for x in v):
            return v, 1
        return tuple(-x for x in v), -1


def _product(mats):
    out = mats[0]
    for m in mats[1:]:
        out = mat_mul(out, m)
    return out


@lru_cache(maxsize=None)
def build_root_system(delta):
    return RootSystem(delta)


def reflection(rs, v):
    v = tuple(v)
    if v not in rs.positives:
        raise NotARoot(f"{v} is not a positive root of {rs.delta}")
    return GroupElement(rs._reflection_matrix(v))


def coxeter_element(rs):
    return rs.cox


def absolute_length(rs, w):
    m = w.matrix
    cached = rs._length_cache.get(m)
    if cached is None:
        cached = rank(mat_sub(m, identity(rs.rank)))
        rs._length_cache[m] = cached
    return cached


def leq_absolute(rs, u, w):
    """u <= w in absolute order, by the length-additivity criterion."""
    lu = absolute_length(rs, u)
    lw = absolute_length(rs, w)
    if lu > lw:
        return False
    uw = GroupElement(mat_mul(mat_inverse(u.matrix), w.matrix))
    return lu + absolute_length(rs, uw) == lw


def enumerate_nc(rs):
    """All w with id <= w <= cox, ordered by reflection length then matrix."""
    if rs._nc_cache is not None:
        return rs._nc_cache
    n = rs.rank
    eye = identity(n)
    coxm = rs.cox.matrix
    refls = [rs._reflection_matrix(v) for v in rs.positives]
    out = [rs.identity]
    seen = {eye}
    layer = [(eye, eye)]
    for depth in range(1, n + 1):
        nxt = []
        for w, winv in layer:
            for t in refls:
                wt = mat_mul(w, t)
                if wt in seen:
                    continue
                if rank(mat_sub(wt, eye)) != depth:
                    continue
                wtinv = mat_mul(t, winv)
                if depth + rank(mat_sub(mat_mul(wtinv, coxm), eye)) != n:
                    continue
                seen.add(wt)
                rs._length_cache[wt] = depth
                nxt.append((wt, wtinv))
        layer = nxt
        out.extend(GroupElement(w) for w, _ in sorted(layer))
    rs._nc_cache = tuple(out)
    return rs._nc_cache


def in_nc(rs, w):
    return leq_absolute(rs, w, rs.cox)


def roots_below(rs, w):
    """Positive roots whose reflections lie below w in absolute order.

    This is the root-set model of the subcategory attached to w: the
    dimension vectors of its indecomposables.
    """
    m = w.matrix
    cached = rs._roots_below_cache.get(m)
    if cached is not None:
        return cached
    if not in_nc(rs, w):
        raise NotInInterval(f"element is not in the interval below cox({rs.delta})")
    lw = absolute_length(rs, w)
    out = []
    for v in rs.positives:
        sv = rs._reflection_matrix(v)
        if 1 + rank(mat_sub(mat_mul(sv, m), identity(rs.rank))) == lw:
            out.append(v)
    result = frozenset(out)
    rs._roots_below_cache[m] = result
    return result


# -- permutation specializations --------------------------------------


def type_a_as_permutation(rs, w):
    """Image of w in the symmetric group on [n+1], as a tuple of images.

    The simple reflection s_i maps to the transposition (i, i+1).
    """
    if rs.delta.series != "A":
        raise WrongSeries("permutation model needs series A")
    n = rs.rank
    cols = list(zip(*w.matrix))
    # u_j = image of the j-th simple root in the ambient standard basis
    us = []
    for j in range(n):
        u = [0] * (n + 1)
        for k in range(n):
            u[k] += cols[j][k]
            u[k + 1] -= cols[j][k]
        us.append(u)
    # c_j = sum_{k >= j} u_k expresses image(e_j) - image(e_{n+1})
    cs = [[0] * (n + 1) for _ in range(n + 2)]
    for j in range(n, 0, -1):
        cs[j] = [a + b for a, b in zip(cs[j + 1], us[j - 1])]
    total = [sum(cs[j][i] for j in range(1, n + 2)) for i in range(n + 1)]
    base = []
    for i in range(n + 1):
        num = 1 - total[i]
        assert num % (n + 1) == 0
        base.append(num // (n + 1))
    perm = []
    for j in range(1, n + 2):
        img = [base[i] + cs[j][i] for i in range(n + 1)]
        assert sorted(img) == [0] * n + [1]
        perm.append(img.index(1) + 1)
    return tuple(perm)


def _standard_basis_change(rs):
    """Columns are the simple roots of D_n in signed-coordinate form."""
    n = rs.rank
    b = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        b[i][i] = 1
        b[i + 1][i] = -1
    b[n - 2][n - 1] = 1
    b[n - 1][n - 1] = 1
    return tuple(tuple(row) for row in b)


def type_d_as_signed_permutation(rs, w):
    """Image of w as a signed permutation, a dict on {±1, ..., ±n}.

    s_i maps to ((i, i+1)) for i < n and s_n to ((-(n-1), n)).
    """
    if rs.delta.series != "D":
        raise WrongSeries("signed permutation model needs series D")
    n = rs.rank
    b = getattr(rs, "_coord_change", None)
    if b is None:
        b = _standard_basis_change(rs)
        binv = _frac_inverse(b)
        rs._coord_change = b
        rs._coord_change_inv = binv
    binv = rs._coord_change_inv
    wb = mat_mul(b, w.matrix)
    std = tuple(
        tuple(sum(Fraction(wb[i][k]) * binv[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
    perm = {}
    for j in range(n):
        col = [std[i][j] for i in range(n)]
        nz = [(i, x) for i, x in enumerate(col) if x != 0]
        assert len(nz) == 1 and abs(nz[0][1]) == 1, "not a signed permutation"
        i, sign = nz[0]
        perm[j + 1] = (i + 1) * int(sign)
        perm[-(j + 1)] = -(i + 1) * int(sign)
    return perm


def _frac_inverse(m):
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for c in range(n):
        piv = next(i for i in range(c, n) if a[i][c] != 0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
        s = a[c][c]
        a[c] = [x / s for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(tuple(row[n:]) for row in a)


def permutation_cycles(perm):
    """Disjoint cycles (length > 1) of a permutation given as a dict or tuple."""
    if isinstance(perm, tuple):
        mapping = {i + 1: perm[i] for i in range(len(perm))}
    else:
        mapping = dict(perm)
    seen = set()
    cycles = []
    for start in sorted(mapping, key=lambda x: (abs(x), x < 0)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = mapping[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = mapping[cur]
        if len(cyc) > 1:
            cycles.append(tuple(cyc))
    return tuple(cycles)


def group_element_to_json(rs, w):
    doc = {
        "series": rs.delta.series,
        "rank": rs.rank,
        "matrix": [list(row) for row in w.matrix],
    }
    if rs.delta.series == "A":
        doc["cycles"] = [list(c) for c in permutation_cycles(type_a_as_permutation(rs, w))]
    elif rs.delta.series == "D":
        doc["cycles"] = [list(c) for c in permutation_cycles(type_d_as_signed_permutation(rs, w))]
    return doc
