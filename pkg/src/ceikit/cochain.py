"""Hochschild cochains, coderivations and the Gerstenhaber bracket.

A cochain phi is a family of multilinear components phi_k mapping composable
basis words of length k to hom(X_0, X_k), stored sparsely.  Coefficients may
be Fractions or Poly (one-parameter families); everything here only adds and
multiplies them.

Sign rule: inserting an operator of shifted parity s after a prefix of
shifted parity p costs (-1)^{s p}.  The structure cochain m has s = 1, flow
generators have s = 0.
"""

from __future__ import annotations

from fractions import Fraction


def add_term(table, key, coeff):
    new = table.get(key, 0) + coeff
    if new:
        table[key] = new
    else:
        table.pop(key, None)


class Cochain:
    """Sparse Hochschild cochain over a category."""

    def __init__(self, cat, sparity, comps=None):
        self.cat = cat
        self.sparity = sparity & 1
        self.comps = {}
        if comps:
            for k, table in comps.items():
                clean = {}
                for word, outs in table.items():
                    outs = {o: c for o, c in outs.items() if c}
                    if outs:
                        clean[tuple(word)] = outs
                if clean:
                    self.comps[k] = clean

    @classmethod
    def structure(cls, cat):
        """The A-infinity operations m as a cochain (odd shifted parity)."""
        return cls(cat, 1, cat.ops)

    def apply(self, word):
        table = self.comps.get(len(word))
        if not table:
            return {}
        return table.get(tuple(word), {})

    @property
    def order(self):
        ks = [k for k, t in self.comps.items() if t]
        return min(ks) if ks else None

    def is_zero(self):
        return not any(self.comps.values())

    def is_reduced(self):
        """Vanishes whenever any argument is a declared unit."""
        for table in self.comps.values():
            for word in table:
                if any(self.cat.is_unit(i) for i in word):
                    return False
        return True

    def scaled(self, c):
        out = {}
        for k, table in self.comps.items():
            out[k] = {w: {o: c * v for o, v in outs.items()} for w, outs in table.items()}
        return Cochain(self.cat, self.sparity, out)

    def __add__(self, other):
        if self.sparity != other.sparity:
            raise ValueError("cannot add cochains of different parity")
        out = {}
        for src in (self.comps, other.comps):
            for k, table in src.items():
                dst = out.setdefault(k, {})
                for w, outs in table.items():
                    slot = dst.setdefault(w, {})
                    for o, c in outs.items():
                        add_term(slot, o, c)
        return Cochain(self.cat, self.sparity, out)

    def __sub__(self, other):
        return self + other.scaled(-1)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.sparity == other.sparity
                and self.comps == other.comps)

    def map_coeffs(self, fn):
        out = {}
        for k, table in self.comps.items():
            out[k] = {w: {o: fn(c) for o, c in outs.items()} for w, outs in table.items()}
        return Cochain(self.cat, self.sparity, out)

    def __repr__(self):
        sizes = {k: len(t) for k, t in sorted(self.comps.items())}
        return f"Cochain(sparity={self.sparity}, entries={sizes})"


def coderivation_apply(phi, comb):
    """Extend phi to a coderivation of the bar coalgebra and apply it.

    comb is a {bar word: coeff} combination; the result sums phi over every
    consecutive slot with the Koszul sign of moving phi past the prefix.
    """
    cat = phi.cat
    out = {}
    for word, coeff in comb.items():
        n = len(word)
        for i in range(n):
            prefix_sp = cat.word_sp(word[:i])
            sign = -1 if (prefix_sp and phi.sparity) else 1
            for k in phi.comps:
                if i + k > n:
                    continue
                outs = phi.apply(word[i:i + k])
                if not outs:
                    continue
                rest = word[i + k:]
                for o, c in outs.items():
                    add_term(out, word[:i] + (o,) + rest, sign * c * coeff)
    return out


def compose(phi, psi, cutoff=None):
    """Gerstenhaber product phi o psi, truncated at the arity cutoff."""
    cat = phi.cat
    cutoff = cutoff if cutoff is not None else cat.cutoff
    comps = {}
    for r, outer in phi.comps.items():
        for outer_word, outer_outs in outer.items():
            for i in range(r):
                y = outer_word[i]
                sign = -1 if (cat.word_sp(outer_word[:i]) and psi.sparity) else 1
                for j, inner in psi.comps.items():
                    n = r - 1 + j
                    if n > cutoff:
                        continue
                    for inner_word, inner_outs in inner.items():
                        c_in = inner_outs.get(y)
                        if not c_in:
                            continue
                        word = outer_word[:i] + inner_word + outer_word[i + 1:]
                        slot = comps.setdefault(n, {}).setdefault(word, {})
                        for o, c_out in outer_outs.items():
                            add_term(slot, o, sign * c_out * c_in)
    return Cochain(cat, (phi.sparity + psi.sparity) & 1, comps)


def bracket(phi, psi, cutoff=None):
    """Gerstenhaber bracket [phi, psi] = phi o psi -+ psi o phi."""
    first = compose(phi, psi, cutoff)
    second = compose(psi, phi, cutoff)
    sign = -1 if (phi.sparity and psi.sparity) else 1
    return first - second.scaled(sign)


def differential(z, cutoff=None):
    """delta(z) = [m, z] for the structure cochain m of z's category."""
    return bracket(Cochain.structure(z.cat), z, cutoff)
