"""Cartan data, finite-type root data, dominance order, Weyl orbits, and
saturated sets of dominant weights.

Weights are plain integer tuples in the chosen basis of the weight lattice X;
conversions to the simple-root basis solve exact linear systems.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .linalg import rref


class QFieldLite:
    zero = Fraction(0)
    one = Fraction(1)


_QF = QFieldLite()


class CartanDatum:
    """A finite index set with a symmetric integer bilinear form."""

    def __init__(self, form):
        self.form = tuple(tuple(int(x) for x in row) for row in form)
        self.rank = len(self.form)

    def d(self, i):
        return self.form[i][i] // 2

    def cartan_entry(self, i, j):
        """2(i,j)/(i,i) as an exact integer (may be a check failure if not)."""
        num = 2 * self.form[i][j]
        den = self.form[i][i]
        return Fraction(num, den)

    def validate(self):
        errors = []
        n = self.rank
        for row in self.form:
            if len(row) != n:
                errors.append("form matrix is not square")
                return errors
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    errors.append(f"form not symmetric at ({i},{j})")
        for i in range(n):
            if self.form[i][i] <= 0 or self.form[i][i] % 2 != 0:
                errors.append(f"diagonal entry ({i},{i}) = {self.form[i][i]} "
                              "not a positive even integer")
        for i in range(n):
            for j in range(n):
                if i != j:
                    c = self.cartan_entry(i, j)
                    if c.denominator != 1 or c > 0:
                        errors.append(
                            f"2(i,j)/(i,i) at ({i},{j}) is {c}, "
                            "not a nonpositive integer")
        if not errors and not self.is_finite_type():
            errors.append("form matrix is not positive definite "
                          "(not finite type)")
        return errors

    def is_finite_type(self):
        """Positive definiteness via leading principal minors."""
        n = self.rank
        for k in range(1, n + 1):
            sub = [row[:k] for row in self.form[:k]]
            if _int_det(sub) <= 0:
                return False
        return True


def _int_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _int_det(minor)
    return total


class RootDatum:
    """Lattices X, Y with a perfect pairing and simple roots/coroots.

    pairing: rankY x rankX integer matrix; <h, lam> = h^T . pairing . lam.
    simple_roots[i] lives in X, simple_coroots[i] in Y.
    """

    def __init__(self, cartan, pairing, simple_roots, simple_coroots,
                 name=None):
        self.cartan = cartan
        self.pairing = tuple(tuple(int(x) for x in row) for row in pairing)
        self.rank_y = len(self.pairing)
        self.rank_x = len(self.pairing[0]) if self.pairing else 0
        self.simple_roots = tuple(tuple(int(x) for x in a)
                                  for a in simple_roots)
        self.simple_coroots = tuple(tuple(int(x) for x in h)
                                    for h in simple_coroots)
        self.rank = cartan.rank
        self.name = name
        self._alpha_solver = None
        self._positive_roots = None

    # -- pairing and reflections ---------------------------------------

    def pair(self, h, lam):
        """<h, lam> for a coweight vector h and weight lam."""
        return sum(h[a] * self.pairing[a][b] * lam[b]
                   for a in range(self.rank_y) for b in range(self.rank_x))

    def pair_i(self, i, lam):
        return self.pair(self.simple_coroots[i], lam)

    def is_dominant(self, lam):
        return all(self.pair_i(i, lam) >= 0 for i in range(self.rank))

    def reflect(self, i, lam):
        c = self.pair_i(i, lam)
        alpha = self.simple_roots[i]
        return tuple(x - c * a for x, a in zip(lam, alpha))

    def reflect_coweight(self, i, h):
        c = sum(h[a] * self.pairing[a][b] * self.simple_roots[i][b]
                for a in range(self.rank_y) for b in range(self.rank_x))
        hi = self.simple_coroots[i]
        return tuple(x - c * a for x, a in zip(h, hi))

    # -- validation -----------------------------------------------------

    def validate(self):
        report = list(self.cartan.validate())
        r = self.rank
        if len(self.simple_roots) != r or len(self.simple_coroots) != r:
            report.append("number of simple roots/coroots differs from the "
                          "Cartan rank")
            return report
        if self.rank_x != self.rank_y:
            report.append("pairing not perfect: X and Y have different ranks")
        else:
            d = _int_det([list(row) for row in self.pairing])
            if abs(d) != 1:
                report.append(f"pairing not perfect: determinant {d}")
        for i in range(r):
            for j in range(r):
                expect = self.cartan.cartan_entry(i, j)
                got = self.pair_i(i, self.simple_roots[j])
                if Fraction(got) != expect:
                    report.append(
                        f"<h_{i}, alpha_{j}> = {got}, expected {expect}")
        if _rank_of(self.simple_roots) != r:
            report.append("simple roots not linearly independent")
        if _rank_of(self.simple_coroots) != r:
            report.append("simple coroots not linearly independent")
        return report

    # -- alpha coordinates ----------------------------------------------

    def alpha_coords(self, vec):
        """Coordinates of vec in the simple-root basis, or None when vec is
        outside the rational span.  Entries are Fractions."""
        if self._alpha_solver is None:
            cols = self.simple_roots
            mat = [[Fraction(cols[j][i]) for j in range(self.rank)]
                   for i in range(self.rank_x)]
            self._alpha_solver = mat
        mat = self._alpha_solver
        aug = [row[:] + [Fraction(vec[i])] for i, row in enumerate(mat)]
        rows, pivots = rref(aug, _QF)
        if self.rank in pivots:
            return None
        coords = [Fraction(0)] * self.rank
        for r_, c in enumerate(pivots):
            coords[c] = rows[r_][self.rank]
        return tuple(coords)

    def dominance_leq(self, lam, mu):
        """lam <= mu in the dominance order."""
        diff = tuple(m - l for l, m in zip(lam, mu))
        coords = self.alpha_coords(diff)
        if coords is None:
            return False
        return all(c.denominator == 1 and c >= 0 for c in coords)

    def height(self, lam):
        """Sum of alpha-coordinates of lam - w0(lam), for dominant lam."""
        w0 = self.antidominant(lam)
        diff = tuple(a - b for a, b in zip(lam, w0))
        coords = self.alpha_coords(diff)
        total = sum(coords)
        assert total.denominator == 1
        return int(total)

    # -- Weyl orbits -----------------------------------------------------

    def weyl_orbit(self, lam):
        """Closure of {lam} under the simple reflections."""
        seen = {tuple(lam)}
        frontier = [tuple(lam)]
        while frontier:
            nxt = []
            for mu in frontier:
                for i in range(self.rank):
                    nu = self.reflect(i, mu)
                    if nu not in seen:
                        seen.add(nu)
                        nxt.append(nu)
            frontier = nxt
        return seen

    def antidominant(self, lam):
        """The minimal element of the orbit (image under the longest Weyl
        element when lam is dominant)."""
        mu = tuple(lam)
        while True:
            for i in range(self.rank):
                if self.pair_i(i, mu) > 0:
                    mu = self.reflect(i, mu)
                    break
            else:
                return mu

    def dominant_representative(self, lam):
        mu = tuple(lam)
        while True:
            for i in range(self.rank):
                if self.pair_i(i, mu) < 0:
                    mu = self.reflect(i, mu)
                    break
            else:
                return mu

    # -- positive roots ---------------------------------------------------

    def positive_roots(self):
        """All positive (root, coroot) pairs, ordered by height then lex."""
        if self._positive_roots is not None:
            return self._positive_roots
        pairs = {(self.simple_roots[i], self.simple_coroots[i])
                 for i in range(self.rank)}
        frontier = list(pairs)
        while frontier:
            nxt = []
            for root, coroot in frontier:
                for i in range(self.rank):
                    cand = (self.reflect(i, root),
                            self.reflect_coweight(i, coroot))
                    if cand not in pairs:
                        coords = self.alpha_coords(cand[0])
                        if coords and all(c >= 0 for c in coords):
                            pairs.add(cand)
                            nxt.append(cand)
            frontier = nxt

        def key(pair):
            coords = self.alpha_coords(pair[0])
            return (sum(coords), pair[0])

        self._positive_roots = sorted(pairs, key=key)
        return self._positive_roots

    def rho(self):
        """Half-sum of positive roots, with Fraction coordinates."""
        total = [Fraction(0)] * self.rank_x
        for root, _ in self.positive_roots():
            for k, x in enumerate(root):
                total[k] += Fraction(x, 2)
        return tuple(total)

    # -- saturation --------------------------------------------------------

    def saturate(self, generators):
        """The smallest saturated subset of X+ containing the generators."""
        gens = [tuple(g) for g in generators]
        for g in gens:
            if not self.is_dominant(g):
                raise ValueError(f"generator {g} is not dominant")
        out = set()
        for mu in gens:
            w0mu = self.antidominant(mu)
            bounds = self.alpha_coords(
                tuple(a - b for a, b in zip(mu, w0mu)))
            ibounds = [int(b) for b in bounds]
            for ns in _box(ibounds):
                lam = list(mu)
                for i, n in enumerate(ns):
                    for k, a in enumerate(self.simple_roots[i]):
                        lam[k] -= n * a
                lam = tuple(lam)
                if self.is_dominant(lam):
                    out.add(lam)
        return SaturatedSet(self, out)

    # -- invariant form ----------------------------------------------------

    def invariant_form(self, lam, mu):
        """W-invariant form on the rational span, normalized so that
        (alpha_i, alpha_j) = (i, j)."""
        coords = self.alpha_coords(mu)
        if coords is not None:
            return sum(c * self.cartan.d(j) * self.pair_i(j, lam)
                       for j, c in enumerate(coords))
        coords = self.alpha_coords(lam)
        if coords is not None:
            return sum(c * self.cartan.d(j) * self.pair_i(j, mu)
                       for j, c in enumerate(coords))
        raise ValueError("form undetermined: neither argument lies in the "
                         "span of the simple roots")

    def __repr__(self):
        return f"RootDatum({self.name or 'custom'})"

    def key(self):
        """Deterministic identity for caching and memo tables."""
        return (self.cartan.form, self.pairing, self.simple_roots,
                self.simple_coroots)


def _rank_of(vectors):
    mat = [[Fraction(x) for x in v] for v in vectors]
    return len(rref(mat, _QF)[1])


def _box(bounds):
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for tail in _box(bounds[1:]):
            yield (head,) + tail


class SaturatedSet:
    """A finite saturated set of dominant weights, in deterministic order."""

    def __init__(self, datum, elements, check=True):
        self.datum = datum
        elems = {tuple(e) for e in elements}
        if check:
            if not elems:
                raise ValueError("saturated set must be nonempty")
            for e in elems:
                if not datum.is_dominant(e):
                    raise ValueError(f"element {e} is not dominant")
        self.elements = tuple(sorted(
            elems, key=lambda w: (datum.height(w), w)))
        self._weights = None

    def __contains__(self, w):
        return tuple(w) in set(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        return (isinstance(other, SaturatedSet)
                and self.datum.key() == other.datum.key()
                and set(self.elements) == set(other.elements))

    def __hash__(self):
        return hash((self.datum.key(), frozenset(self.elements)))

    def issubset(self, other):
        return set(self.elements) <= set(other.elements)

    def union(self, other):
        return SaturatedSet(self.datum,
                            set(self.elements) | set(other.elements),
                            check=False)

    def is_saturated(self):
        """Re-verify downward closure by exhaustive dominance tests."""
        have = set(self.elements)
        for mu in self.elements:
            for lam in self.datum.saturate([mu]):
                if lam not in have:
                    return False
        return True

    def orbit_weights(self):
        """The union of Weyl orbits of the elements (the weights supporting
        the idempotents)."""
        if self._weights is None:
            out = set()
            for lam in self.elements:
                out |= self.datum.weyl_orbit(lam)
            self._weights = frozenset(out)
        return self._weights

    def height(self):
        return max(self.datum.height(lam) for lam in self.elements)

    def key(self):
        return (self.datum.key(), self.elements)

    def __repr__(self):
        return f"SaturatedSet({list(self.elements)})"


def simply_connected(cartan, name=None):
    """Root datum with weight basis the fundamental weights and identity
    pairing; simple roots are the columns of the Cartan matrix."""
    r = cartan.rank
    pairing = [[1 if a == b else 0 for b in range(r)] for a in range(r)]
    roots = []
    for j in range(r):
        col = []
        for i in range(r):
            c = cartan.cartan_entry(i, j)
            if c.denominator != 1:
                raise ValueError("Cartan matrix entries must be integers")
            col.append(int(c))
        roots.append(tuple(col))
    coroots = [tuple(1 if b == i else 0 for b in range(r)) for i in range(r)]
    return RootDatum(cartan, pairing, roots, coroots, name=name)


# -- presets ----------------------------------------------------------------


@lru_cache(maxsize=None)
def preset(name):
    """Shipping root data: A1, A1adj, A1xA1, A2, B2.

    All are simply connected (weight basis = fundamental weights, identity
    pairing) except A1adj, whose weight lattice is the root lattice.
    """
    if name == "A1":
        return RootDatum(CartanDatum([[2]]), [[1]], [(2,)], [(1,)], name="A1")
    if name == "A1adj":
        return RootDatum(CartanDatum([[2]]), [[1]], [(1,)], [(2,)],
                         name="A1adj")
    if name == "A1xA1":
        return RootDatum(CartanDatum([[2, 0], [0, 2]]),
                         [[1, 0], [0, 1]],
                         [(2, 0), (0, 2)], [(1, 0), (0, 1)], name="A1xA1")
    if name == "A2":
        return RootDatum(CartanDatum([[2, -1], [-1, 2]]),
                         [[1, 0], [0, 1]],
                         [(2, -1), (-1, 2)], [(1, 0), (0, 1)], name="A2")
    if name == "B2":
        return RootDatum(CartanDatum([[4, -2], [-2, 2]]),
                         [[1, 0], [0, 1]],
                         [(2, -2), (-1, 2)], [(1, 0), (0, 1)], name="B2")
    raise KeyError(f"unknown preset {name!r}")


PRESET_NAMES = ("A1", "A1adj", "A1xA1", "A2", "B2")


def dominant_weights_up_to_height(datum, bound):
    """All dominant weights of height <= bound, sorted by (height, lex).

    Enumerates nonnegative fundamental-weight-like combinations by breadth:
    a dominant weight is determined by its pairings with the simple coroots,
    which are bounded once the height is bounded.
    """
    out = []
    # search over pairing vectors (n_1..n_r); height grows with each n_i
    r = datum.rank
    # map a pairing vector to a weight: solve <h_i, lam> = n_i; the solution
    # is unique since the pairing is perfect and rank_x == r for all presets
    # of full rank; general data are handled by solving the linear system.
    max_n = bound  # heights are >= the pairing values for these data
    for ns in _box([max_n] * r):
        lam = _weight_from_pairings(datum, ns)
        if lam is None:
            continue
        if datum.height(lam) <= bound:
            out.append(lam)
    return sorted(set(out), key=lambda w: (datum.height(w), w))


def _weight_from_pairings(datum, ns):
    """An integral weight lam with <h_i, lam> = ns[i], or None."""
    rows = [[Fraction(sum(h[a] * datum.pairing[a][b]
                          for a in range(datum.rank_y)))
             for b in range(datum.rank_x)]
            for h in datum.simple_coroots]
    aug = [row[:] + [Fraction(n)] for row, n in zip(rows, ns)]
    out_rows, pivots = rref(aug, _QF)
    if datum.rank_x in pivots:
        return None
    lam = [Fraction(0)] * datum.rank_x
    for r_, c in enumerate(pivots):
        lam[c] = out_rows[r_][datum.rank_x]
    if any(x.denominator != 1 for x in lam):
        return None
    return tuple(int(x) for x in lam)
