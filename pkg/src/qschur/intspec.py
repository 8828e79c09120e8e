"""Integral forms over Z[v,v^-1] via verified lattice bases, exact
specialization v -> xi, the specialized inverse system, and empirical
kernel probes."""

from __future__ import annotations

from .laurent import LaurentPoly, RatFunc, RatFuncField, is_integral, qint
from .linalg import (SparseEchelon, det_unit_check, identity, is_zero_matrix,
                     mat_eq, mat_mul, mat_sub, rref, zeros)
from .rings import RingPoint, evaluate
from .rootdata import dominant_weights_up_to_height
from .weylmod import weyl_module

_F = RatFuncField


class LatticeError(ValueError):
    """Raised when a module admits no supported integral lattice basis."""


class LatticeBasis:
    """A basis of divided-power monomial images with verified unit
    transition determinant and integral generator matrices.

    A monomial is a tuple of (index, exponent) pairs with distinct adjacent
    indices, applied right to left to the highest-weight vector.

    Two independent greedy selections (differing in enumeration order) must
    span the same lattice with a unit transition determinant; this pins the
    lattice itself, not just a spanning set.
    """

    def __init__(self, module):
        self.module = module
        chosen = _greedy_select(module, reverse=False)
        # deterministic order: module weight order, monomials as discovered
        self.monomials = []
        cols = []
        for nu in module.weights:
            for mono, vec in chosen[nu]:
                self.monomials.append(mono)
                cols.append(vec)
        # change of basis C: lattice coords -> module coords (columns)
        n = module.dim
        self.C = [[cols[j][i] for j in range(n)] for i in range(n)]
        self._c_inv = _invert(self.C)
        self._integral_cache = {}
        self.weight_of_col = []
        for nu in module.weights:
            self.weight_of_col.extend([nu] * len(chosen[nu]))
        self._verify_unit_transition()

    def _verify_unit_transition(self):
        """An alternate greedy selection must express in this basis with
        entries in Z[v,v^-1] and unit determinant."""
        module = self.module
        alt = _greedy_select(module, reverse=True)
        cols = []
        for nu in module.weights:
            for _, vec in alt[nu]:
                cols.append(vec)
        n = module.dim
        C2 = [[cols[j][i] for j in range(n)] for i in range(n)]
        T = mat_mul(self._c_inv, C2, _F)
        for r_, row in enumerate(T):
            for c_, x in enumerate(row):
                if is_integral(x) is None:
                    raise LatticeError(
                        "unsupported lattice: alternate-basis transition "
                        f"entry ({r_},{c_}) is {x.to_string()}, not in "
                        "Z[v,v^-1]")
        det = det_unit_check(T, _F)
        p = is_integral(det)
        if p is None or not p.is_unit():
            raise LatticeError(
                f"transition determinant {det.to_string()} is not a unit "
                "of Z[v,v^-1]")

    def nilpotency(self, sign, i):
        """Largest k with a nonzero k-th divided power (0 for the zero
        action)."""
        k = 0
        while True:
            mat = self.module.divided_power_matrix(sign, i, k + 1)
            if is_zero_matrix(mat, _F):
                return k
            k += 1

    def integral_matrix(self, sign, i, k):
        """The k-th divided power in the lattice basis, entries in
        Z[v,v^-1]; raises LatticeError on an offending entry."""
        key = (1 if sign > 0 else -1, i, k)
        cached = self._integral_cache.get(key)
        if cached is not None:
            return cached
        mat = self.module.divided_power_matrix(sign, i, k)
        latt = mat_mul(self._c_inv, mat_mul(mat, self.C, _F), _F)
        out = []
        for r_, row in enumerate(latt):
            orow = []
            for c_, x in enumerate(row):
                p = is_integral(x)
                if p is None:
                    raise LatticeError(
                        "unsupported lattice: entry "
                        f"({r_},{c_}) of E^({k}) (sign {key[0]}, index {i}) "
                        f"is {x.to_string()}, not in Z[v,v^-1]")
                orow.append(p)
            out.append(orow)
        self._integral_cache[key] = out
        return out

    def check_integrality(self, max_power=None):
        """Verify every divided-power generator matrix has entries in
        Z[v,v^-1]; returns the list of checked (sign, i, k) triples."""
        checked = []
        for sign in (1, -1):
            for i in range(self.module.datum.rank):
                kmax = self.nilpotency(sign, i)
                if max_power is not None:
                    kmax = min(kmax, max_power)
                for k in range(1, kmax + 1):
                    self.integral_matrix(sign, i, k)
                    checked.append((sign, i, k))
        return checked


def _greedy_select(module, reverse=False):
    """Greedy rank-extending selection of divided-power monomial images,
    grouped by weight.  `reverse` flips the generator enumeration order to
    produce an independent second selection."""
    datum = module.datum
    r = datum.rank
    chosen = {nu: [] for nu in module.weights}
    picked = 0
    echelons = {nu: SparseEchelon(_F) for nu in module.weights}

    def block_vec(nu, vec):
        off = module.offsets[nu]
        return {k: vec[off + k] for k in range(module.dims[nu])
                if not vec[off + k].is_zero()}

    hw = [_F.zero] * module.dim
    hw[module.offsets[module.lam]] = _F.one
    frontier = [((), tuple(hw), module.lam)]
    echelons[module.lam].insert(block_vec(module.lam, hw))
    chosen[module.lam].append(((), tuple(hw)))
    picked += 1
    indices = list(range(r))
    if reverse:
        indices.reverse()
    while frontier:
        nxt = []
        for mono, vec, nu in sorted(frontier):
            for i in indices:
                if mono and mono[0][0] == i:
                    continue
                alpha = datum.simple_roots[i]
                steps = []
                a = 1
                while True:
                    target = tuple(x - a * al for x, al in zip(nu, alpha))
                    if target not in module.offsets:
                        break
                    mat = module.divided_power_matrix(-1, i, a)
                    nv = _apply(mat, vec)
                    if all(x.is_zero() for x in nv):
                        break
                    steps.append((a, target, tuple(nv)))
                    a += 1
                if reverse:
                    steps.reverse()
                for a, target, nv in steps:
                    nm = ((i, a),) + mono
                    nxt.append((nm, nv, target))
                    if echelons[target].insert(block_vec(target, nv)):
                        chosen[target].append((nm, nv))
                        picked += 1
        frontier = nxt
    if picked != module.dim:
        raise LatticeError(
            f"monomial images span rank {picked} < dim {module.dim} "
            f"for highest weight {module.lam}")
    return chosen


def _apply(mat, vec):
    n = len(mat)
    out = [_F.zero] * n
    for i in range(n):
        row = mat[i]
        acc = _F.zero
        for j, x in enumerate(vec):
            if not x.is_zero():
                y = row[j]
                if not y.is_zero():
                    acc = acc + y * x
        out[i] = acc
    return out


def _invert(mat):
    n = len(mat)
    aug = [row[:] + identity(n, _F)[i] for i, row in enumerate(mat)]
    rows, pivots = rref(aug, _F)
    if pivots != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in rows]


_lattice_cache = {}


def lattice_basis(module):
    key = (module.datum.key(), module.lam)
    lb = _lattice_cache.get(key)
    if lb is None:
        lb = LatticeBasis(module)
        _lattice_cache[key] = lb
    return lb


# -- specialized algebras ----------------------------------------------------


class SpecElement:
    """Block-matrix element of a specialized algebra."""

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra, blocks):
        self.algebra = algebra
        self.blocks = tuple(blocks)

    def __add__(self, other):
        f = self.algebra.field
        return SpecElement(self.algebra, [
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
            for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        return SpecElement(self.algebra, [
            mat_sub(a, b) for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return SpecElement(self.algebra,
                           [[[-x for x in row] for row in b]
                            for b in self.blocks])

    def __mul__(self, other):
        f = self.algebra.field
        if not isinstance(other, SpecElement):
            return self.scale(other)
        return SpecElement(self.algebra, [
            mat_mul(a, b, f) for a, b in zip(self.blocks, other.blocks)])

    def scale(self, c):
        return SpecElement(self.algebra,
                           [[[c * x for x in row] for row in b]
                            for b in self.blocks])

    def is_zero(self):
        f = self.algebra.field
        return all(is_zero_matrix(b, f) for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, SpecElement):
            return NotImplemented
        return all(mat_eq(a, b) for a, b in zip(self.blocks, other.blocks))

    def flatten(self):
        zero = self.algebra.field.zero
        out = {}
        off = 0
        for b in self.blocks:
            n = len(b)
            for r, row in enumerate(b):
                for c, x in enumerate(row):
                    if x != zero:
                        out[off + r * n + c] = x
            off += n * n
        return out


class SpecializedSchur:
    """The realized image of the integral form of a truncated algebra after
    specializing v to xi.

    At a root of unity the realized algebra may be a proper quotient of the
    base-changed integral form; only the realized dimension is computed and
    reported, never identified with the abstract base change.
    """

    def __init__(self, pi, point: RingPoint):
        self.pi = pi
        self.point = point
        self.field = point.field
        self.datum = pi.datum
        self.modules = [weyl_module(self.datum, lam) for lam in pi]
        self.lattices = [lattice_basis(m) for m in self.modules]
        self.orbit = pi.orbit_weights()
        self.block_dims = [m.dim for m in self.modules]
        self.generic_dim = sum(d * d for d in self.block_dims)
        self._dp_cache = {}
        self._basis = None
        self._dimension = None

    def _spec(self, poly: LaurentPoly):
        val = poly.evaluate(self.point.xi_pow)
        return self.field.zero if val is None else val

    def divided_power(self, sign, i, k):
        key = (1 if sign > 0 else -1, i, k)
        el = self._dp_cache.get(key)
        if el is None:
            blocks = []
            for lb in self.lattices:
                kmax = lb.nilpotency(sign, i)
                n = lb.module.dim
                if k > kmax:
                    blocks.append(zeros(n, n, self.field))
                else:
                    mat = lb.integral_matrix(sign, i, k)
                    blocks.append([[self._spec(x) for x in row]
                                   for row in mat])
            el = SpecElement(self, blocks)
            self._dp_cache[key] = el
        return el

    def generator(self, sign, i):
        return self.divided_power(sign, i, 1)

    def zero(self):
        return SpecElement(self,
                           [zeros(d, d, self.field)
                            for d in self.block_dims])

    def one(self):
        return SpecElement(self,
                           [identity(d, self.field)
                            for d in self.block_dims])

    def idempotent(self, lam):
        lam = tuple(lam)
        if lam not in self.orbit:
            return self.zero()
        blocks = []
        for lb in self.lattices:
            m = lb.module
            b = zeros(m.dim, m.dim, self.field)
            for idx, nu in enumerate(lb.weight_of_col):
                if nu == lam:
                    b[idx][idx] = self.field.one
            blocks.append(b)
        return SpecElement(self, blocks)

    def k_element(self, h):
        h = tuple(h)
        blocks = []
        for lb in self.lattices:
            m = lb.module
            b = zeros(m.dim, m.dim, self.field)
            for idx, nu in enumerate(lb.weight_of_col):
                b[idx][idx] = self.point.xi_pow(self.datum.pair(h, nu))
            blocks.append(b)
        return SpecElement(self, blocks)

    def evaluate_symbol(self, sym):
        kind = sym[0]
        if kind == "E":
            return self.generator(sym[1], sym[2])
        if kind == "Ed":
            return self.divided_power(sym[1], sym[2], sym[3])
        if kind == "K":
            return self.k_element(sym[1])
        if kind == "1":
            return self.idempotent(sym[1])
        raise ValueError(f"unknown symbol {sym!r}")

    def evaluate_expr(self, expr):
        out = self.zero()
        for word, c in expr.terms.items():
            el = self.one()
            for sym in word:
                el = el * self.evaluate_symbol(sym)
                if el.is_zero():
                    break
            out = out + el.scale(evaluate(c, self.point))
        return out

    # -- dimension --------------------------------------------------------

    def _generators(self):
        gens = []
        for sign in (1, -1):
            for i in range(self.datum.rank):
                kmax = max(lb.nilpotency(sign, i) for lb in self.lattices)
                for k in range(1, kmax + 1):
                    gens.append(self.divided_power(sign, i, k))
        return gens

    def basis(self):
        """Span closure over R, seeded with the idempotents and closed under
        left multiplication by all divided powers."""
        if self._basis is not None:
            return self._basis
        ech = SparseEchelon(self.field)
        basis = []
        queue = []
        for lam in sorted(self.orbit):
            el = self.idempotent(lam)
            if ech.insert(el.flatten()):
                basis.append(el)
                queue.append(el)
        gens = self._generators()
        while queue:
            el = queue.pop(0)
            for g in gens:
                prod = g * el
                if ech.insert(prod.flatten()):
                    basis.append(prod)
                    queue.append(prod)
        self._basis = basis
        self._dimension = len(basis)
        return basis

    def dimension(self):
        if self._dimension is None:
            self.basis()
        return self._dimension

    # -- relation suite over R --------------------------------------------

    def verify_relations(self):
        report = []
        datum = self.datum
        r = datum.rank
        orbit = sorted(self.orbit)

        def entry(name, ok, witness=None):
            report.append({"relation": name, "ok": bool(ok),
                           "witness": witness})

        total = self.zero()
        ok = True
        for lam in orbit:
            total = total + self.idempotent(lam)
            for mu in orbit:
                prod = self.idempotent(lam) * self.idempotent(mu)
                expect = self.idempotent(lam) if lam == mu else self.zero()
                if not (prod == expect):
                    ok = False
        entry("a:orthogonality", ok)
        entry("a:completeness", total == self.one())

        ok = True
        for i in range(r):
            alpha = datum.simple_roots[i]
            for sign in (1, -1):
                g = self.generator(sign, i)
                for lam in orbit:
                    shifted = tuple(x + sign * a for x, a in zip(lam, alpha))
                    if not (g * self.idempotent(lam)
                            == self.idempotent(shifted) * g):
                        ok = False
        entry("b:intertwine", ok)

        ok = True
        for i in range(r):
            for j in range(r):
                lhs = (self.generator(1, i) * self.generator(-1, j)
                       - self.generator(-1, j) * self.generator(1, i))
                rhs = self.zero()
                if i == j:
                    d = datum.cartan.d(i)
                    for lam in orbit:
                        n = datum.pair_i(i, lam)
                        if n != 0:
                            rhs = rhs + self.idempotent(lam).scale(
                                self._spec(qint(n, d)))
                if not (lhs == rhs):
                    ok = False
        entry("c:commutator", ok)

        ok = True
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                n = 1 - datum.pair_i(i, datum.simple_roots[j])
                for sign in (1, -1):
                    total_s = self.zero()
                    for s in range(n + 1):
                        term = (self.divided_power(sign, i, s)
                                * self.generator(sign, j)
                                * self.divided_power(sign, i, n - s))
                        if (n - s) % 2 == 1:
                            term = -term
                        total_s = total_s + term
                    if not total_s.is_zero():
                        ok = False
        entry("d:serre", ok)
        return report

    def key(self):
        return (self.pi.key(), repr(self.point))

    def __repr__(self):
        return f"SpecializedSchur(pi={list(self.pi)}, {self.point!r})"


_spec_cache = {}


def specialize_schur(pi, point):
    key = (pi.key(), id(point.field), repr(point.xi))
    alg = _spec_cache.get(key)
    if alg is None:
        alg = SpecializedSchur(pi, point)
        _spec_cache[key] = alg
    return alg


class RTruncationMap:
    """Block restriction between specialized algebras."""

    def __init__(self, target_pi, source_pi, point):
        if not target_pi.issubset(source_pi):
            raise ValueError("target saturated set is not contained in the "
                             "source")
        self.source = specialize_schur(source_pi, point)
        self.target = specialize_schur(target_pi, point)
        self._indices = [list(source_pi).index(lam) for lam in target_pi]

    def apply(self, x):
        return SpecElement(self.target, [x.blocks[k] for k in self._indices])

    def verify(self):
        report = []
        src, tgt = self.source, self.target

        def entry(name, ok, witness=None):
            report.append({"check": name, "ok": bool(ok), "witness": witness})

        for sign in (1, -1):
            for i in range(src.datum.rank):
                entry(f"generator({'+' if sign > 0 else '-'}{i})",
                      self.apply(src.generator(sign, i))
                      == tgt.generator(sign, i))
        for lam in sorted(src.orbit):
            entry(f"idempotent{lam}",
                  self.apply(src.idempotent(lam)) == tgt.idempotent(lam))
        entry("unit", self.apply(src.one()) == tgt.one())
        ech = SparseEchelon(src.field)
        for b in src.basis():
            ech.insert(self.apply(b).flatten())
        entry("surjective", ech.rank == tgt.dimension(),
              {"image_rank": ech.rank, "target_dim": tgt.dimension()})
        return report


def r_truncation_map(target_pi, source_pi, point):
    return RTruncationMap(target_pi, source_pi, point)


class RLimitElement:
    """Coherent family valued in specialized algebras."""

    __slots__ = ("datum", "point", "_evaluator", "memo")

    def __init__(self, datum, point, evaluator):
        self.datum = datum
        self.point = point
        self._evaluator = evaluator
        self.memo = {}

    def at(self, pi):
        key = pi.key()
        val = self.memo.get(key)
        if val is None:
            val = self._evaluator(pi)
            self.memo[key] = val
        return val


def r_theta_dot(datum, expr, point):
    """Componentwise image of a modified-form expression over R."""
    if not expr.is_modified():
        raise ValueError("expression is not in the modified form")
    return RLimitElement(
        datum, point,
        lambda pi: specialize_schur(pi, point).evaluate_expr(expr))


def verify_r_coherence(element, chain, point):
    links = []
    ok = True
    for small, large in zip(chain, chain[1:]):
        f = r_truncation_map(small, large, point)
        passed = f.apply(element.at(large)) == element.at(small)
        ok = ok and passed
        links.append({"pi": list(small), "pi_prime": list(large),
                      "ok": passed})
    return {"ok": ok, "links": links}


# -- kernel probe ------------------------------------------------------------


def kernel_probe_RU(datum, degree_bound, height_bound, point):
    """Joint kernel of the images of bounded divided-power words across the
    schedule of saturated sets, as a nonincreasing dimension sequence.

    Empirical evidence only; a zero terminal kernel at bounded degree never
    proves injectivity.
    """
    alphabet = []
    for sign in (1, -1):
        for i in range(datum.rank):
            for k in range(1, degree_bound + 1):
                alphabet.append(("Ed", sign, i, k))
    for h in datum.simple_coroots:
        alphabet.append(("K", tuple(h)))

    words = [()]
    layer = [()]
    for _ in range(degree_bound):
        layer = [w + (sym,) for w in layer for sym in alphabet]
        words.extend(layer)

    field = point.field
    history = []
    kernel_dim = len(words)
    rows = []  # accumulated constraint rows: one per matrix entry per pi
    for mu in dominant_weights_up_to_height(datum, height_bound):
        pi = datum.saturate([mu])
        S = specialize_schur(pi, point)
        # image vectors of all words in this component
        cols = []
        for w in words:
            el = S.one()
            for sym in w:
                el = el * S.evaluate_symbol(sym)
                if el.is_zero():
                    break
            cols.append(el.flatten())
        entries = sorted({k for col in cols for k in col})
        for ent in entries:
            rows.append([col.get(ent, field.zero) for col in cols])
        if rows:
            from .linalg import rank as _rank
            kernel_dim = len(words) - _rank(rows, field)
        history.append({"pi": list(pi), "kernel_dim": kernel_dim})
    return {"word_count": len(words), "history": history,
            "final_kernel_dim": kernel_dim}
