"""Generalized q-Schur algebras realized on direct sums of highest-weight
modules, with presentation checks and the truncation maps of the inverse
system."""

from __future__ import annotations

from .laurent import LaurentPoly, RatFunc, RatFuncField, qint
from .linalg import (SparseEchelon, identity, is_zero_matrix, mat_eq, mat_mul,
                     mat_sub, zeros)
from .weylmod import weyl_module

_F = RatFuncField


class SchurElement:
    """An element, stored as one exact matrix per block (one block per
    highest weight of the saturated set)."""

    __slots__ = ("algebra", "blocks")

    def __init__(self, algebra, blocks):
        self.algebra = algebra
        self.blocks = tuple(blocks)

    def __add__(self, other):
        self._check(other)
        return SchurElement(self.algebra, [
            [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
            for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        self._check(other)
        return SchurElement(self.algebra, [
            mat_sub(a, b) for a, b in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return SchurElement(self.algebra,
                            [[[-x for x in row] for row in b]
                             for b in self.blocks])

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(other)
        self._check(other)
        return SchurElement(self.algebra, [
            mat_mul(a, b, _F) for a, b in zip(self.blocks, other.blocks)])

    def __rmul__(self, other):
        if isinstance(other, (int, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc(c)
        return SchurElement(self.algebra,
                            [[[c * x for x in row] for row in b]
                             for b in self.blocks])

    def is_zero(self):
        return all(is_zero_matrix(b, _F) for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, SchurElement):
            return NotImplemented
        return (self.algebra.pi == other.algebra.pi
                and all(mat_eq(a, b)
                        for a, b in zip(self.blocks, other.blocks)))

    def _check(self, other):
        if self.algebra is not other.algebra:
            if self.algebra.pi != other.algebra.pi:
                raise ValueError("elements of different algebras")

    def flatten(self):
        """Sparse dict (linear index) -> coefficient, for span computations."""
        out = {}
        off = 0
        for b in self.blocks:
            n = len(b)
            for r, row in enumerate(b):
                for c, x in enumerate(row):
                    if not x.is_zero():
                        out[off + r * n + c] = x
            off += n * n
        return out

    def __repr__(self):
        return f"SchurElement(pi={list(self.algebra.pi)})"


class SchurAlgebra:
    """The image of the quantized enveloping algebra on the direct sum of
    the highest-weight modules indexed by a finite saturated set."""

    def __init__(self, pi):
        self.pi = pi
        self.datum = pi.datum
        self.modules = [weyl_module(self.datum, lam) for lam in pi]
        self.orbit = pi.orbit_weights()
        self.block_dims = [m.dim for m in self.modules]
        self.expected_dim = sum(d * d for d in self.block_dims)
        self._basis = None
        self._dimension = None
        self._gen_cache = {}
        self._idem_cache = {}

    # -- elements ---------------------------------------------------------

    def zero(self):
        return SchurElement(self, [zeros(d, d, _F) for d in self.block_dims])

    def one(self):
        return SchurElement(self, [identity(d, _F) for d in self.block_dims])

    def generator(self, sign, i):
        key = (1 if sign > 0 else -1, i)
        el = self._gen_cache.get(key)
        if el is None:
            el = SchurElement(self, [m.generator_matrix(sign, i)
                                     for m in self.modules])
            self._gen_cache[key] = el
        return el

    def divided_power(self, sign, i, k):
        return SchurElement(self, [m.divided_power_matrix(sign, i, k)
                                   for m in self.modules])

    def idempotent(self, lam):
        """The weight projector; the zero element when lam is outside the
        orbit of the saturated set."""
        lam = tuple(lam)
        el = self._idem_cache.get(lam)
        if el is not None:
            return el
        if lam not in self.orbit:
            el = self.zero()
        else:
            blocks = []
            for m in self.modules:
                b = zeros(m.dim, m.dim, _F)
                if lam in m.offsets:
                    off = m.offsets[lam]
                    for t in range(m.dims[lam]):
                        b[off + t][off + t] = _F.one
                blocks.append(b)
            el = SchurElement(self, blocks)
        self._idem_cache[lam] = el
        return el

    def k_element(self, h):
        """K_h = sum over orbit weights of v^<h,lam> 1_lam."""
        h = tuple(h)
        blocks = []
        for m in self.modules:
            blocks.append(m.k_matrix(h))
        return SchurElement(self, blocks)

    # -- word evaluation ---------------------------------------------------

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

    def evaluate_word(self, word):
        out = self.one()
        for sym in word:
            out = out * self.evaluate_symbol(sym)
            if out.is_zero():
                break
        return out

    def evaluate_expr(self, expr):
        """Image of a formal word expression under the quotient map."""
        out = self.zero()
        for word, c in expr.terms.items():
            out = out + self.evaluate_word(word).scale(c)
        return out

    # -- dimension by span closure ----------------------------------------

    def basis(self):
        """Echelonized spanning basis of the realized algebra, computed by
        closing the span of the idempotents under left multiplication by the
        generators."""
        if self._basis is not None:
            return self._basis
        ech = SparseEchelon(_F)
        basis = []
        queue = []
        for lam in sorted(self.orbit):
            el = self.idempotent(lam)
            if ech.insert(el.flatten()):
                basis.append(el)
                queue.append(el)
        gens = [self.generator(s, i)
                for s in (1, -1) for i in range(self.datum.rank)]
        while queue:
            el = queue.pop(0)
            for g in gens:
                prod = g * el
                if ech.insert(prod.flatten()):
                    basis.append(prod)
                    queue.append(prod)
        self._basis = basis
        self._dimension = len(basis)
        if self._dimension != self.expected_dim:
            raise RuntimeError(
                f"density violated: span closure rank {self._dimension} "
                f"!= sum of squared block dimensions {self.expected_dim}")
        return basis

    def dimension(self):
        if self._dimension is None:
            self.basis()
        return self._dimension

    # -- presentation checks -----------------------------------------------

    def verify_presentation(self):
        """Exact checks of the defining relations; returns a list of
        {relation, ok, witness} entries."""
        report = []
        datum = self.datum
        r = datum.rank
        orbit = sorted(self.orbit)

        def entry(name, ok, witness=None):
            report.append({"relation": name, "ok": bool(ok),
                           "witness": witness})

        # (a) orthogonal idempotents summing to the identity
        total = self.zero()
        ok_a = True
        for lam in orbit:
            total = total + self.idempotent(lam)
            for mu in orbit:
                prod = self.idempotent(lam) * self.idempotent(mu)
                expect = self.idempotent(lam) if lam == mu else self.zero()
                if not (prod == expect):
                    ok_a = False
                    entry("a:orthogonality", False, {"lam": lam, "mu": mu})
        if ok_a:
            entry("a:orthogonality", True)
        entry("a:completeness", total == self.one())

        # (b)/(b') idempotent intertwining with the convention outside W.pi
        ok_b = True
        for i in range(r):
            alpha = datum.simple_roots[i]
            for sign in (1, -1):
                g = self.generator(sign, i)
                for lam in orbit:
                    shifted = tuple(x + sign * a for x, a in zip(lam, alpha))
                    lhs = g * self.idempotent(lam)
                    rhs = self.idempotent(shifted) * g
                    if not (lhs == rhs):
                        ok_b = False
                        entry("b:intertwine", False,
                              {"i": i, "sign": sign, "lam": lam})
        if ok_b:
            entry("b:intertwine", True)

        # (c) commutator identity
        ok_c = True
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
                                RatFunc.from_poly(qint(n, d)))
                if not (lhs == rhs):
                    ok_c = False
                    entry("c:commutator", False, {"i": i, "j": j})
        if ok_c:
            entry("c:commutator", True)

        # (d) quantum Serre relations in divided-power form
        ok_d = True
        for i in range(r):
            for j in range(r):
                if i == j:
                    continue
                n = 1 - datum.pair_i(i, datum.simple_roots[j])
                for sign in (1, -1):
                    total_s = self.zero()
                    for s in range(n + 1):
                        sp = n - s
                        term = (self.divided_power(sign, i, s)
                                * self.generator(sign, j)
                                * self.divided_power(sign, i, sp))
                        if sp % 2 == 1:
                            term = -term
                        total_s = total_s + term
                    if not total_s.is_zero():
                        ok_d = False
                        entry("d:serre", False,
                              {"i": i, "j": j, "sign": sign})
        if ok_d:
            entry("d:serre", True)
        return report

    def key(self):
        return self.pi.key()

    def __repr__(self):
        return f"SchurAlgebra(pi={list(self.pi)})"


_algebra_cache = {}


def build_schur(pi):
    """Cached pure construction of the algebra for a saturated set."""
    key = pi.key()
    alg = _algebra_cache.get(key)
    if alg is None:
        alg = SchurAlgebra(pi)
        _algebra_cache[key] = alg
    return alg


class TruncationMap:
    """Block restriction from the algebra of a larger saturated set onto the
    algebra of a smaller one."""

    def __init__(self, target_pi, source_pi):
        if not target_pi.issubset(source_pi):
            raise ValueError("target saturated set is not contained in the "
                             "source")
        self.target_pi = target_pi
        self.source_pi = source_pi
        self.source = build_schur(source_pi)
        self.target = build_schur(target_pi)
        self._indices = [list(source_pi).index(lam) for lam in target_pi]

    def apply(self, x):
        if x.algebra.pi != self.source_pi:
            raise ValueError("element does not belong to the source algebra")
        return SchurElement(self.target,
                            [x.blocks[k] for k in self._indices])

    def verify(self, sample_products=True):
        """Checks that the map is a surjective algebra homomorphism sending
        generators to generators; returns a report list."""
        report = []
        src, tgt = self.source, self.target

        def entry(name, ok, witness=None):
            report.append({"check": name, "ok": bool(ok), "witness": witness})

        for sign in (1, -1):
            for i in range(src.datum.rank):
                ok = self.apply(src.generator(sign, i)) == tgt.generator(
                    sign, i)
                entry(f"generator({'+' if sign > 0 else '-'}{i})", ok)
        for lam in sorted(src.orbit):
            image = self.apply(src.idempotent(lam))
            expect = tgt.idempotent(lam)  # zero when lam leaves the orbit
            entry(f"idempotent{lam}", image == expect)
        entry("unit", self.apply(src.one()) == tgt.one())

        if sample_products:
            gens = [src.generator(s, i)
                    for s in (1, -1) for i in range(src.datum.rank)]
            basis = src.basis()
            ok_mul = True
            for g in gens:
                for b in basis:
                    if not (self.apply(g * b)
                            == self.apply(g) * self.apply(b)):
                        ok_mul = False
            entry("multiplicative", ok_mul)

        # surjectivity: images of the source basis span the target
        ech = SparseEchelon(_F)
        for b in src.basis():
            ech.insert(self.apply(b).flatten())
        entry("surjective", ech.rank == tgt.dimension(),
              {"image_rank": ech.rank, "target_dim": tgt.dimension()})
        return report


def truncation_map(target_pi, source_pi):
    return TruncationMap(target_pi, source_pi)
