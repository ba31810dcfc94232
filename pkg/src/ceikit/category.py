"""Z/2-graded A-infinity categories with exact structure constants.

Conventions (used consistently by every module):

* parities are Z/2; the shifted parity of a morphism x is sp(x) = |x| + 1.
* all Koszul signs are computed in shifted parities; the operations m_k all
  have odd shifted parity, so |m_k(x_1..x_k)|' = |x_1|' + .. + |x_k|' + 1.
* for a strictly associative product the translation is
  m_2(x, y) = (-1)^{|x|} x.y, hence m_2(1, x) = x and m_2(x, 1) = (-1)^{|x|} x.
* a cyclic pairing satisfies <v, w> = -(-1)^{sp(v) sp(w)} <w, v> and makes
  the (n+1)-linear forms <m_n(x_1..x_n), x_{n+1}> invariant under cyclic
  rotation with the same shifted Koszul signs.

Morphisms are indexed by integers into a global ordered basis; words are
tuples of such indices.  A bar word (x_1, .., x_n) is a composable chain; a
Hochschild word (x_0, x_1, .., x_n) closes up cyclically, with
x_i in hom(X_{i-1}, X_i) and x_0 in hom(X_n, X_0).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class BasisElement:
    src: str
    dst: str
    name: str
    parity: int


class AInftyCategory:
    """Finite Z/2-graded A-infinity category given by structure constants.

    hom maps ordered object pairs to lists of (name, parity); pairs not
    listed are zero-dimensional.  ops[k][word] is a dict {output: coeff}
    describing m_k on basis words.  units maps objects to the index of a
    designated even basis element of hom(X, X).  The pairing, when present,
    is a dict {(a, b): coeff} for <a, b> with a in hom(X, Y), b in hom(Y, X),
    homogeneous of parity ``pairing_parity``.
    """

    def __init__(self, objects, hom, ops, units=None, pairing=None,
                 pairing_parity=None, cutoff=8, name=""):
        self.objects = tuple(objects)
        self.name = name
        self.cutoff = cutoff
        self.hom = {}
        self.basis = []
        self._index = {}
        for pair, basis in hom.items():
            x, y = pair
            if x not in self.objects or y not in self.objects:
                raise ValueError(f"hom pair {pair} references unknown object")
            entries = []
            for bname, parity in basis:
                idx = len(self.basis)
                self.basis.append(BasisElement(x, y, bname, parity & 1))
                self._index[(x, y, bname)] = idx
                entries.append(idx)
            self.hom[pair] = entries
        self.ops = {}
        for k, table in ops.items():
            clean = {}
            for word, outs in table.items():
                word = tuple(word)
                if len(word) != k:
                    raise ValueError(f"m_{k} entry with word of length {len(word)}")
                if not self.is_chain(word):
                    raise ValueError(f"m_{k} entry on non-composable word {word}")
                outs_clean = {}
                for out, coeff in outs.items():
                    coeff = Fraction(coeff)
                    if not coeff:
                        continue
                    b = self.basis[out]
                    if b.src != self.basis[word[0]].src or b.dst != self.basis[word[-1]].dst:
                        raise ValueError(f"m_{k}{word} output {out} in wrong hom space")
                    outs_clean[out] = coeff
                if outs_clean:
                    clean[word] = outs_clean
            if clean:
                self.ops[k] = clean
        self.units = dict(units or {})
        for obj, u in self.units.items():
            b = self.basis[u]
            if b.src != obj or b.dst != obj or b.parity != 0:
                raise ValueError(f"unit of {obj} must be an even endomorphism")
        self.pairing = None
        self.pairing_parity = None
        if pairing is not None:
            self.pairing = {k: Fraction(v) for k, v in pairing.items() if Fraction(v)}
            self.pairing_parity = pairing_parity
            self._validate_pairing()

    # -- basic queries -------------------------------------------------

    def index(self, obj_src, obj_dst, name):
        return self._index[(obj_src, obj_dst, name)]

    def el(self, name):
        """Look up a basis element by bare name (must be unique)."""
        hits = [i for i, b in enumerate(self.basis) if b.name == name]
        if len(hits) != 1:
            raise KeyError(f"basis name {name!r} matches {len(hits)} elements")
        return hits[0]

    def src(self, i):
        return self.basis[i].src

    def dst(self, i):
        return self.basis[i].dst

    def parity(self, i):
        return self.basis[i].parity

    def sp(self, i):
        """Shifted parity |x|' = |x| + 1 mod 2."""
        return self.basis[i].parity ^ 1

    def word_sp(self, word):
        s = 0
        for i in word:
            s ^= self.basis[i].parity ^ 1
        return s

    def hom_basis(self, x, y):
        return self.hom.get((x, y), [])

    def is_chain(self, word):
        """Composable bar word x_1 .. x_n (n >= 1)."""
        if not word:
            return False
        for a, b in zip(word, word[1:]):
            if self.basis[a].dst != self.basis[b].src:
                return False
        return True

    def is_cyclic_word(self, word):
        """Hochschild word (x_0; x_1, .., x_n)."""
        if not word:
            return False
        if len(word) == 1:
            b = self.basis[word[0]]
            return b.src == b.dst
        x0 = self.basis[word[0]]
        if not self.is_chain(word[1:]):
            return False
        return x0.dst == self.basis[word[1]].src and x0.src == self.basis[word[-1]].dst

    def chains(self, n, cyclic=False):
        """All composable basis words of length n (cyclically closed if asked)."""
        out = []

        def extend(word):
            if len(word) == n:
                if not cyclic or self.basis[word[0]].src == self.basis[word[-1]].dst:
                    out.append(tuple(word))
                return
            last = self.basis[word[-1]].dst
            for y in self.objects:
                for i in self.hom_basis(last, y):
                    word.append(i)
                    extend(word)
                    word.pop()

        for i in range(len(self.basis)):
            extend([i])
        return out

    def hochschild_words(self, n):
        """Cyclic words (x_0; x_1..x_n) of length n (n interior letters)."""
        return self.chains(n + 1, cyclic=True)

    def apply_m(self, word):
        """m_{len(word)} on a basis word, as {output index: coeff}."""
        table = self.ops.get(len(word))
        if table is None:
            return {}
        return table.get(tuple(word), {})

    @property
    def minimal(self):
        return 1 not in self.ops

    def is_unit(self, i):
        b = self.basis[i]
        return self.units.get(b.src) == i and b.src == b.dst

    def pair(self, a, b):
        if self.pairing is None:
            raise ValueError("category has no pairing")
        return self.pairing.get((a, b), Fraction(0))

    def copairing(self, x, y):
        """Basis expansion of the inverse pairing on hom(X,Y) x hom(Y,X).

        Returns a list of (a, b, coeff) with sum_ab coeff.(a ox b) the tensor
        inverse to the pairing block, i.e. sum coeff.<v, a>.<b, w> = <v, w>.
        """
        from ceikit import linalg

        rows = self.hom_basis(x, y)
        cols = self.hom_basis(y, x)
        if len(rows) != len(cols):
            raise ValueError(f"pairing block hom({x},{y}) not square")
        n = len(rows)
        mat = {}
        for i, a in enumerate(rows):
            for j, b in enumerate(cols):
                v = self.pair(a, b)
                if v:
                    mat[(i, j)] = v
        m = linalg.SparseMatrix(n, n, mat)
        out = []
        for j in range(n):
            e = [Fraction(0)] * n
            e[j] = Fraction(1)
            col = linalg.solve(m, e)
            if col is None:
                raise ValueError(f"degenerate pairing block hom({x},{y})")
            for i in range(n):
                if col[i]:
                    out.append((cols[i], rows[j], col[i]))
        return out

    # -- validation ----------------------------------------------------

    def _validate_pairing(self):
        d = self.pairing_parity
        for (a, b), v in self.pairing.items():
            ba, bb = self.basis[a], self.basis[b]
            if ba.src != bb.dst or ba.dst != bb.src:
                raise ValueError(f"pairing entry <{ba.name},{bb.name}> not composable")
            if d is not None and (ba.parity + bb.parity) % 2 != d:
                raise ValueError("pairing not parity homogeneous")

    def with_pairing(self, pairing, parity):
        """Copy of the category carrying the given pairing."""
        hom = {pair: [(self.basis[i].name, self.basis[i].parity) for i in basis]
               for pair, basis in self.hom.items()}
        out = AInftyCategory(self.objects, hom, {}, cutoff=self.cutoff, name=self.name)
        out.ops = {k: dict(t) for k, t in self.ops.items()}
        out.units = dict(self.units)
        out.pairing = {k: Fraction(v) for k, v in pairing.items() if Fraction(v)}
        out.pairing_parity = parity
        out._validate_pairing()
        return out

    def __repr__(self):
        nm = f" {self.name!r}" if self.name else ""
        return (f"AInftyCategory({nm} objects={len(self.objects)}, "
                f"dim={len(self.basis)}, cutoff={self.cutoff})")


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckReport:
    ok: bool
    detail: str = ""

    def __bool__(self):
        return self.ok


def check_degrees(cat):
    """Every m_k entry shifts total shifted parity by one."""
    for k, table in cat.ops.items():
        for word, outs in table.items():
            want = cat.word_sp(word) ^ 1
            for out in outs:
                if cat.sp(out) != want:
                    return CheckReport(False, f"m_{k}{word} -> {out} breaks parity")
    return CheckReport(True)


def check_unitality(cat):
    """Strict unitality for the designated units, up to the arity cutoff."""
    if not cat.units:
        return CheckReport(False, "no units declared")
    for obj, u in cat.units.items():
        for y in cat.objects:
            for x in cat.hom_basis(obj, y):
                got = cat.apply_m((u, x))
                if got != {x: Fraction(1)}:
                    return CheckReport(False, f"m_2(1_{obj}, {cat.basis[x].name}) wrong")
            for x in cat.hom_basis(y, obj):
                got = cat.apply_m((x, u))
                want = Fraction(-1) if cat.parity(x) else Fraction(1)
                if got != {x: want}:
                    return CheckReport(False, f"m_2({cat.basis[x].name}, 1_{obj}) wrong")
    for k, table in cat.ops.items():
        if k < 3:
            continue
        for word, outs in table.items():
            if any(cat.is_unit(i) for i in word) and outs:
                return CheckReport(False, f"m_{k} does not kill units at {word}")
    return CheckReport(True)


def gerstenhaber_square(cat):
    """The cochain m o m (half the bracket [m, m]), arity by arity.

    Returns {arity: {word: {output: coeff}}} holding only nonzero entries;
    the A-infinity relations hold exactly up to the cutoff iff it is empty.
    """
    result = {}
    for r, outer_table in cat.ops.items():
        for outer_word, outer_outs in outer_table.items():
            for i in range(r):
                y = outer_word[i]
                prefix_sp = cat.word_sp(outer_word[:i])
                sign = -1 if prefix_sp else 1
                for j, inner_table in cat.ops.items():
                    n = r - 1 + j
                    if n > cat.cutoff:
                        continue
                    for inner_word, inner_outs in inner_table.items():
                        c_in = inner_outs.get(y)
                        if c_in is None:
                            continue
                        word = outer_word[:i] + inner_word + outer_word[i + 1:]
                        for out, c_out in outer_outs.items():
                            coeff = sign * c_out * c_in
                            slot = result.setdefault(n, {}).setdefault(word, {})
                            new = slot.get(out, Fraction(0)) + coeff
                            if new:
                                slot[out] = new
                            else:
                                slot.pop(out, None)
    for n in list(result):
        result[n] = {w: o for w, o in result[n].items() if o}
        if not result[n]:
            del result[n]
    return result


def check_ainfty(cat):
    """A-infinity relations (and degree homogeneity) up to the cutoff."""
    deg = check_degrees(cat)
    if not deg:
        return deg
    bad = gerstenhaber_square(cat)
    if bad:
        n = min(bad)
        word = min(bad[n])
        names = ",".join(cat.basis[i].name for i in word)
        return CheckReport(False, f"relation fails at arity {n} on ({names})")
    return CheckReport(True)


def cyclicity_form(cat, n):
    """The (n+1)-linear form <m_n(x_1..x_n), x_{n+1}> on basis words."""
    table = cat.ops.get(n, {})
    form = {}
    for word, outs in table.items():
        for out, c in outs.items():
            b = cat.basis[out]
            for z in cat.hom_basis(b.dst, b.src):
                v = cat.pairing.get((out, z))
                if v:
                    form[word + (z,)] = form.get(word + (z,), Fraction(0)) + c * v
    return {w: v for w, v in form.items() if v}


def pairing_report(cat):
    """Shifted symmetry and blockwise nondegeneracy of the pairing."""
    from ceikit import linalg

    if cat.pairing is None:
        return CheckReport(False, "no pairing present")
    for (a, b), v in cat.pairing.items():
        back = cat.pairing.get((b, a), Fraction(0))
        sign = -1 if (cat.sp(a) & cat.sp(b)) == 0 else 1
        if back != sign * v:
            return CheckReport(False, "pairing not symmetric in the shifted convention")
    for x in cat.objects:
        for y in cat.objects:
            rows = cat.hom_basis(x, y)
            cols = cat.hom_basis(y, x)
            if len(rows) != len(cols):
                return CheckReport(False, f"hom({x},{y}) and hom({y},{x}) sizes differ")
            if not rows:
                continue
            mat = {}
            for i, a in enumerate(rows):
                for j, b in enumerate(cols):
                    v = cat.pairing.get((a, b))
                    if v:
                        mat[(i, j)] = v
            if linalg.rank(linalg.SparseMatrix(len(rows), len(cols), mat)) != len(rows):
                return CheckReport(False, f"pairing degenerate on hom({x},{y})")
    return CheckReport(True)


def check_cyclic(cat):
    """Cyclic invariance of <m_n(x_1..x_n), x_{n+1}> for all n <= cutoff."""
    if cat.pairing is None:
        return CheckReport(False, "no pairing present")
    if not cat.minimal:
        return CheckReport(False, "category is not minimal")
    rep = pairing_report(cat)
    if not rep:
        return rep
    for n in sorted(cat.ops):
        form = cyclicity_form(cat, n)
        for word, value in form.items():
            last = word[-1]
            rot = (last,) + word[:-1]
            sign = -1 if (cat.sp(last) and cat.word_sp(word[:-1])) else 1
            if form.get(rot, Fraction(0)) != sign * value:
                names = ",".join(cat.basis[i].name for i in word)
                return CheckReport(False, f"cyclicity fails at arity {n} on ({names})")
    return CheckReport(True)


# ---------------------------------------------------------------------------
# fixtures


def ground_field(scale=1, cutoff=8):
    """The ground field K as a one-object category, <1,1> = scale."""
    unit_ops = {2: {("1", "1"): {"1": 1}}}
    cat = _from_names(
        objects=["*"],
        hom={("*", "*"): [("1", 0)]},
        ops=unit_ops,
        units={"*": "1"},
        pairing={("1", "1"): Fraction(scale)},
        pairing_parity=0,
        cutoff=cutoff,
        name="K",
    )
    return cat


def two_points(cutoff=8):
    """K^2: two objects, hom = K.1 each, zero homs across; even pairing."""
    return _from_names(
        objects=["P", "Q"],
        hom={("P", "P"): [("1P", 0)], ("Q", "Q"): [("1Q", 0)],
             ("P", "Q"): [], ("Q", "P"): []},
        ops={2: {("1P", "1P"): {"1P": 1}, ("1Q", "1Q"): {"1Q": 1}}},
        units={"P": "1P", "Q": "1Q"},
        pairing={("1P", "1P"): 1, ("1Q", "1Q"): 1},
        pairing_parity=0,
        cutoff=cutoff,
        name="K2",
    )


def dual_numbers(cutoff=8):
    """E = K[x]/(x^2) with even x and pairing <1,x> = <x,1> = 1."""
    return _from_names(
        objects=["*"],
        hom={("*", "*"): [("1", 0), ("x", 0)]},
        ops={2: {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1},
                 ("x", "1"): {"x": 1}}},
        units={"*": "1"},
        pairing={("1", "x"): 1, ("x", "1"): 1},
        pairing_parity=0,
        cutoff=cutoff,
        name="E",
    )


def clifford_one(cutoff=8):
    """Cl_1 = K[eps], eps odd, m_2(eps,eps) = 1/2, <1,eps> = 1."""
    return _from_names(
        objects=["*"],
        hom={("*", "*"): [("1", 0), ("e", 1)]},
        ops={2: {("1", "1"): {"1": 1}, ("1", "e"): {"e": 1},
                 ("e", "1"): {"e": -1}, ("e", "e"): {"1": Fraction(1, 2)}}},
        units={"*": "1"},
        pairing={("1", "e"): 1, ("e", "1"): -1},
        pairing_parity=1,
        cutoff=cutoff,
        name="Cl1",
    )


def _from_names(objects, hom, ops, units, pairing, pairing_parity, cutoff, name):
    """Build a category from name-keyed tables (fixture convenience)."""
    tmp = AInftyCategory(objects, hom, {}, cutoff=cutoff, name=name)

    def ix(nm):
        return tmp.el(nm)

    ops_ix = {}
    for k, table in ops.items():
        ops_ix[k] = {tuple(ix(nm) for nm in word): {ix(o): c for o, c in outs.items()}
                     for word, outs in table.items()}
    units_ix = {obj: ix(nm) for obj, nm in units.items()}
    pairing_ix = None
    if pairing is not None:
        pairing_ix = {(ix(a), ix(b)): v for (a, b), v in pairing.items()}
    return AInftyCategory(objects, hom, ops_ix, units_ix, pairing_ix,
                          pairing_parity, cutoff, name)
