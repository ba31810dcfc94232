"""A-infinity functors: composition, strict inverses, log/exp and flows.

Functor components F_k have shifted parity zero, so coalgebra morphisms are
applied without Koszul signs.  The exp/log correspondence between pointed
functors (F_1 = id) and order-two cochains is exact arity by arity because
F-hat minus the identity strictly lowers word length.
"""

from __future__ import annotations

from fractions import Fraction

from ceikit import linalg
from ceikit.cochain import Cochain, add_term, bracket, coderivation_apply
from ceikit.poly import Poly


class Functor:
    """A-infinity (pre-)functor given by sparse components F_k."""

    def __init__(self, src, dst, obj_map, comps, name=""):
        self.src = src
        self.dst = dst
        self.obj_map = dict(obj_map)
        self.name = name
        self.comps = {}
        for k, table in comps.items():
            clean = {}
            for word, outs in table.items():
                outs = {o: c for o, c in outs.items() if c}
                if outs:
                    clean[tuple(word)] = outs
            if clean:
                self.comps[k] = clean

    @classmethod
    def identity(cls, cat):
        table = {(i,): {i: Fraction(1)} for i in range(len(cat.basis))}
        return cls(cat, cat, {x: x for x in cat.objects}, {1: table}, name="id")

    def apply(self, word):
        table = self.comps.get(len(word))
        if not table:
            return {}
        return table.get(tuple(word), {})

    def apply_comb(self, comb):
        """Multilinear component F applied to a word combination."""
        out = {}
        for word, coeff in comb.items():
            for o, c in self.apply(word).items():
                add_term(out, o, c * coeff)
        return out

    def linear_block(self, x, y):
        """Matrix of F_1 on hom(x, y) as a SparseMatrix."""
        rows = self.src.hom_basis(x, y)
        cols = self.dst.hom_basis(self.obj_map[x], self.obj_map[y])
        pos = {o: j for j, o in enumerate(cols)}
        entries = {}
        for i, a in enumerate(rows):
            for o, c in self.apply((a,)).items():
                entries[(pos[o], i)] = c
        return linalg.SparseMatrix(len(cols), len(rows), entries)

    def is_pointed(self):
        """F_1 = id on every hom space (and identity on objects)."""
        if any(self.obj_map[x] != x for x in self.src.objects):
            return False
        table = self.comps.get(1, {})
        n = len(self.src.basis)
        if len(table) != n:
            return False
        return all(table.get((i,)) == {i: Fraction(1)} for i in range(n))

    def is_unital(self):
        for obj, u in self.src.units.items():
            target = self.dst.units.get(self.obj_map[obj])
            if self.apply((u,)) != {target: Fraction(1)}:
                return False
        for k, table in self.comps.items():
            if k < 2:
                continue
            for word in table:
                if any(self.src.is_unit(i) for i in word):
                    return False
        return True

    def map_coeffs(self, fn):
        comps = {}
        for k, table in self.comps.items():
            comps[k] = {w: {o: fn(c) for o, c in outs.items()} for w, outs in table.items()}
        return Functor(self.src, self.dst, self.obj_map, comps, name=self.name)

    def at_time(self, t):
        """Evaluate a Poly-coefficient family at a parameter value."""
        return self.map_coeffs(lambda c: c.eval(t) if isinstance(c, Poly) else Fraction(c))

    def __repr__(self):
        sizes = {k: len(t) for k, t in sorted(self.comps.items())}
        return f"Functor({self.name!r}, entries={sizes})"


def hat_apply(f, comb):
    """Coalgebra morphism F-hat on a combination of bar words."""
    out = {}
    for word, coeff in comb.items():
        _hat_word(f, word, 0, (), coeff, out)
    return out


def _hat_word(f, word, pos, acc, coeff, out):
    n = len(word)
    if pos == n:
        add_term(out, acc, coeff)
        return
    for size in range(1, n - pos + 1):
        outs = f.apply(word[pos:pos + size])
        if not outs:
            continue
        for o, c in outs.items():
            _hat_word(f, word, pos + size, acc + (o,), coeff * c, out)


def corestrict_functor_equation(f, word):
    """F(m-hat(w)) - m(F-hat(w)): zero for every word iff F is a functor."""
    m_src = Cochain.structure(f.src)
    m_dst = Cochain.structure(f.dst)
    lhs = f.apply_comb(coderivation_apply(m_src, {tuple(word): Fraction(1)}))
    rhs = {}
    for u, c in hat_apply(f, {tuple(word): Fraction(1)}).items():
        for o, v in m_dst.apply(u).items():
            add_term(rhs, o, v * c)
    for o, c in rhs.items():
        add_term(lhs, o, -c)
    return lhs


def is_functor(f, cutoff=None):
    cutoff = cutoff if cutoff is not None else min(f.src.cutoff, f.dst.cutoff)
    for n in range(1, cutoff + 1):
        for word in f.src.chains(n):
            if corestrict_functor_equation(f, word):
                return False
    return True


def compose_functors(f, g, cutoff=None):
    """f after g; components by the coalgebra formula, truncated."""
    if g.dst is not f.src:
        raise ValueError("codomain of g must be the domain of f")
    cutoff = cutoff if cutoff is not None else min(g.src.cutoff, f.dst.cutoff)
    comps = {}
    for n in range(1, cutoff + 1):
        table = {}
        for word in g.src.chains(n):
            outs = f.apply_comb(hat_apply(g, {word: Fraction(1)}))
            if outs:
                table[word] = outs
        if table:
            comps[n] = table
    obj_map = {x: f.obj_map[g.obj_map[x]] for x in g.src.objects}
    return Functor(g.src, f.dst, obj_map, comps, name=f"{f.name}.{g.name}")


def invert_functor(f, cutoff=None):
    """Strict inverse of a functor with bijective object map and invertible F_1."""
    cutoff = cutoff if cutoff is not None else min(f.src.cutoff, f.dst.cutoff)
    inv_obj = {}
    for x, y in f.obj_map.items():
        if y in inv_obj:
            raise ValueError("object map not injective")
        inv_obj[y] = x
    if set(inv_obj) != set(f.dst.objects):
        raise ValueError("object map not surjective")

    # invert every F_1 block
    g1 = {}
    for x in f.src.objects:
        for y in f.src.objects:
            rows = f.src.hom_basis(x, y)
            if not rows:
                continue
            block = f.linear_block(x, y)
            cols = f.dst.hom_basis(f.obj_map[x], f.obj_map[y])
            for j, b in enumerate(cols):
                e = [Fraction(0)] * len(cols)
                e[j] = Fraction(1)
                sol = linalg.solve(block, e)
                if sol is None:
                    raise ValueError("F_1 is singular")
                g1[(b,)] = {rows[i]: sol[i] for i in range(len(rows)) if sol[i]}
    g = Functor(f.dst, f.src, inv_obj, {1: g1}, name=f"{f.name}^-1")

    for n in range(2, cutoff + 1):
        table = {}
        for u in f.dst.chains(n):
            # substitute w = F_1^{-1}(u) letterwise
            ws = {(): Fraction(1)}
            for letter in u:
                new = {}
                for prefix, c in ws.items():
                    for o, v in g.apply((letter,)).items():
                        new[prefix + (o,)] = c * v
                ws = new
            acc = {}
            for w, cw in ws.items():
                for u2, c2 in hat_apply(f, {w: cw}).items():
                    if len(u2) < n:
                        for o, v in g.apply_comb({u2: c2}).items():
                            add_term(acc, o, -v)
            if acc:
                table[u] = acc
        if table:
            g.comps[n] = table
    return g


def functor_log(f, cutoff=None):
    """log of a pointed functor: the order-two cochain Z with exp(Z-hat) = F-hat."""
    if not f.is_pointed():
        raise ValueError("log requires F_1 = id")
    cat = f.src
    cutoff = cutoff if cutoff is not None else cat.cutoff
    comps = {}
    for n in range(2, cutoff + 1):
        table = {}
        for word in cat.chains(n):
            comb = {word: Fraction(1)}
            acc = {}
            j = 1
            while comb:
                # comb = G^j(word) with G = F-hat - id
                nxt = hat_apply(f, comb)
                for w, c in comb.items():
                    add_term(nxt, w, -c)
                comb = nxt
                sign = Fraction(1 if j % 2 else -1, j)
                for w, c in comb.items():
                    if len(w) == 1:
                        add_term(acc, w[0], sign * c)
                j += 1
                if j > n:
                    break
            if acc:
                table[word] = acc
        if table:
            comps[n] = table
    return Cochain(cat, 0, comps)


def flow(z, cutoff=None):
    """Flow F^t of a one-parameter family of order-two cochains.

    z has Poly (or constant) coefficients; returns the family F^t with
    F^0 = id and dF^t/dt = Z^t o F^t-hat, by exact arity-by-arity
    integration.
    """
    cat = z.cat
    if z.order is not None and z.order < 2:
        raise ValueError("flow requires a cochain of order at least two")
    cutoff = cutoff if cutoff is not None else cat.cutoff
    zp = z.map_coeffs(lambda c: c if isinstance(c, Poly) else Poly.const(c))
    comps = {1: {(i,): {i: Poly.const(1)} for i in range(len(cat.basis))}}
    f = Functor(cat, cat, {x: x for x in cat.objects}, comps, name="flow")
    for n in range(2, cutoff + 1):
        table = {}
        for word in cat.chains(n):
            rhs = {}
            for u, c in hat_apply(f, {word: Poly.const(1)}).items():
                for o, v in zp.apply(u).items():
                    add_term(rhs, o, v * c)
            if rhs:
                table[word] = {o: c.integrate() for o, c in rhs.items()}
        if table:
            f.comps[n] = table
    return f


def pullback_structure(f, cat, cutoff=None):
    """New category on f's domain with operations F-hat^{-1} o m-hat o F-hat."""
    from ceikit.category import AInftyCategory

    if cat is not f.dst:
        raise ValueError("pullback target must be the functor codomain")
    cutoff = cutoff if cutoff is not None else min(f.src.cutoff, cat.cutoff)
    g = invert_functor(f, cutoff)
    m = Cochain.structure(cat)
    ops = {}
    src = f.src
    for n in range(1, cutoff + 1):
        table = {}
        for word in src.chains(n):
            comb = coderivation_apply(m, hat_apply(f, {word: Fraction(1)}))
            outs = g.apply_comb(comb)
            if outs:
                table[word] = outs
        if table:
            ops[n] = table
    hom = {pair: [(src.basis[i].name, src.basis[i].parity) for i in basis]
           for pair, basis in src.hom.items()}
    out = AInftyCategory(src.objects, hom, {}, cutoff=cutoff,
                         name=f"{cat.name}^{f.name}")
    out.ops = ops
    out.units = dict(src.units)
    return out


def check_cyclic_functor(f, cutoff=None):
    """Cyclicity of f between cyclic categories.

    <F_1 x, F_1 y> = <x, y> together with the vanishing of
    sum_i <F_i(x_1..x_i), F_{n-i}(x_{i+1}..x_n)> for n >= 3.
    """
    src, dst = f.src, f.dst
    cutoff = cutoff if cutoff is not None else min(src.cutoff, dst.cutoff)
    for a in range(len(src.basis)):
        ba = src.basis[a]
        for b in src.hom_basis(ba.dst, ba.src):
            want = src.pair(a, b)
            got = Fraction(0)
            for oa, ca in f.apply((a,)).items():
                for ob, cb in f.apply((b,)).items():
                    got += ca * cb * dst.pair(oa, ob)
            if got != want:
                return False
    for n in range(3, cutoff + 1):
        for word in src.chains(n):
            if src.basis[word[0]].src != src.basis[word[-1]].dst:
                continue
            total = Fraction(0)
            for i in range(1, n):
                for oa, ca in f.apply(word[:i]).items():
                    for ob, cb in f.apply(word[i:]).items():
                        total += ca * cb * dst.pair(oa, ob)
            if total:
                return False
    return True


def pseudo_isotopy_from_functor(f, cutoff=None):
    """Pseudo-isotopy m(t) + l(t)dt joining f's domain and codomain structures.

    f must be pointed (F_1 = id) between minimal categories on the same
    objects and homs.  Returns (m_t, l_t): m_t is a Poly-coefficient cochain
    with m(0) = m_src, m(1) = m_dst, and dm/dt = [m(t), l] holds identically;
    l = log(f-hat^{-1}) is constant in t.
    """
    cutoff = cutoff if cutoff is not None else min(f.src.cutoff, f.dst.cutoff)
    if not f.src.minimal or not f.dst.minimal:
        raise ValueError("pseudo-isotopy requires minimal endpoints")
    finv = invert_functor(f, cutoff)
    # transport to the common underlying hom spaces: indices agree by position
    xi = functor_log(_reindex(finv, f.src), cutoff)
    ft = flow(xi, cutoff)                 # exp(t xi-hat)
    ft_inv = flow(xi.scaled(-1), cutoff)  # exp(-t xi-hat)
    m_src = Cochain.structure(f.src)
    comps = {}
    for n in range(1, cutoff + 1):
        table = {}
        for word in f.src.chains(n):
            comb = coderivation_apply(
                m_src.map_coeffs(Poly.const),
                hat_apply(ft, {word: Poly.const(1)}))
            outs = ft_inv.apply_comb(comb)
            outs = {o: c for o, c in outs.items() if c}
            if outs:
                table[word] = outs
        if table:
            comps[n] = table
    m_t = Cochain(f.src, 1, comps)
    return m_t, xi


def _reindex(f, cat):
    """View a functor between equal-shaped categories as an endofunctor of cat."""
    return Functor(cat, cat, {x: x for x in cat.objects}, f.comps, name=f.name)


def check_pseudo_isotopy(m_t, l_t, m0, m1, cutoff=None):
    """The defining identities of a minimal pseudo-isotopy, exactly in t."""
    cat = m_t.cat
    cutoff = cutoff if cutoff is not None else cat.cutoff
    at0 = m_t.map_coeffs(lambda c: c.eval(0) if isinstance(c, Poly) else Fraction(c))
    at1 = m_t.map_coeffs(lambda c: c.eval(1) if isinstance(c, Poly) else Fraction(c))
    if at0 != m0 or at1 != m1:
        return False
    deriv = m_t.map_coeffs(lambda c: c.derivative() if isinstance(c, Poly) else Poly())
    lp = l_t.map_coeffs(lambda c: c if isinstance(c, Poly) else Poly.const(c))
    rhs = bracket(m_t, lp, cutoff)
    diff = deriv - rhs
    return all(not t for t in diff.comps.values())
