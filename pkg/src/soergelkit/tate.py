"""Toy semisimple Tate categories: bounded complexes of rational vector
spaces and their internally graded refinements.

An ungraded object is a bounded complex of finite-dimensional spaces.  A
graded object keeps one such complex per internal degree g; differentials
never mix internal degrees, so a graded complex is literally a finite
direct sum of layers.  The one-dimensional object with internal degree g
placed in cohomological position c is written simple(c, g); the twist
convention puts the p-th twist of the unit in internal degree -p.

Bookkeeping rules, locked by the worked witness below:

* [q] moves a class from position c to c - q;
* the weight of a simple at (c, g) is c - 2g;
* the collapse functor sends the layer at internal degree g to the same
  complex shifted by [2g], so a simple at (c, g) lands in position c - 2g.

The collapse witness: the twist of the unit placed at (c, g) = (-2, -1)
has weight 0 and collapses to the unit in position 0, so collapse respects
weight but not cohomological position.

Truncations minimise first (every complex here splits up to homotopy), then
select simples by position (t) or by weight (w); on ungraded complexes the
two selections coincide.  Axiom checkers verify nesting, Hom-orthogonality
and split decomposition triangles on finite samples.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .linalg import QMatrix, kernel_basis, rank


class Complex:
    """A bounded complex of finite-dimensional rational vector spaces."""

    __slots__ = ("dims", "diffs")

    def __init__(self, dims, diffs=None, validate: bool = True):
        self.dims = {int(c): int(m) for c, m in dims.items() if m}
        ds: dict[int, QMatrix] = {}
        for c, mat in (diffs or {}).items():
            c = int(c)
            if mat.rows != self.dims.get(c + 1, 0) or mat.cols != self.dims.get(c, 0):
                raise ValueError(f"differential at position {c} has wrong shape")
            if not mat.is_zero():
                ds[c] = mat
        self.diffs = ds
        if validate:
            self.validate()

    def validate(self) -> None:
        for c in self.diffs:
            nxt = self.diffs.get(c + 1)
            if nxt is not None and not (nxt * self.diffs[c]).is_zero():
                raise AssertionError(f"differential does not square to zero at position {c}")

    def positions(self) -> tuple[int, ...]:
        return tuple(sorted(self.dims))

    def dim_at(self, c: int) -> int:
        return self.dims.get(c, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def diff(self, c: int) -> QMatrix:
        mat = self.diffs.get(c)
        if mat is None:
            return QMatrix.zero(self.dim_at(c + 1), self.dim_at(c))
        return mat

    def is_minimal(self) -> bool:
        return not self.diffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        return self.dims == other.dims and self.diffs == other.diffs

    def __hash__(self):
        raise TypeError("Complex is unhashable")

    def shift(self, q: int) -> "Complex":
        """The shift [q]: component at c moves to c - q, differential signed."""
        sign = -1 if q % 2 else 1
        return Complex(
            {c - q: m for c, m in self.dims.items()},
            {c - q: mat.scale(sign) for c, mat in self.diffs.items()},
            validate=False,
        )

    def direct_sum(self, other: "Complex") -> "Complex":
        dims = dict(self.dims)
        for c, m in other.dims.items():
            dims[c] = dims.get(c, 0) + m
        diffs = {}
        for c in set(self.dims) | set(other.dims):
            a, b = self.diff(c), other.diff(c)
            if (a.rows + b.rows) == 0 or (a.cols + b.cols) == 0:
                continue
            rows = [a.row(r) + [Fraction(0)] * b.cols for r in range(a.rows)]
            rows += [[Fraction(0)] * a.cols + b.row(r) for r in range(b.rows)]
            diffs[c] = QMatrix(a.rows + b.rows, a.cols + b.cols, rows)
        return Complex(dims, diffs, validate=False)

    def cohomology_dims(self) -> dict[int, int]:
        ranks = {c: rank(mat) for c, mat in self.diffs.items()}
        out = {}
        for c, m in self.dims.items():
            h = m - ranks.get(c, 0) - ranks.get(c - 1, 0)
            if h < 0:
                raise AssertionError("negative cohomology dimension; complex is corrupt")
            if h:
                out[c] = h
        return out

    def minimize(self) -> "Complex":
        """The homotopy-equivalent complex with zero differential."""
        return Complex(self.cohomology_dims(), {}, validate=False)


class GradedComplex:
    """A complex of internally graded spaces, stored layer by layer."""

    __slots__ = ("layers",)

    def __init__(self, layers):
        self.layers = {int(g): layer for g, layer in layers.items() if layer.total_dim()}

    @classmethod
    def zero(cls) -> "GradedComplex":
        return cls({})

    def internal_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.layers))

    def layer(self, g: int) -> Complex:
        return self.layers.get(g, Complex({}))

    def components(self) -> dict[tuple[int, int], int]:
        """Dimensions keyed by (position, internal degree)."""
        out = {}
        for g, layer in sorted(self.layers.items()):
            for c, m in sorted(layer.dims.items()):
                out[(c, g)] = m
        return out

    def total_dim(self) -> int:
        return sum(layer.total_dim() for layer in self.layers.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedComplex):
            return NotImplemented
        return self.layers == other.layers

    def __hash__(self):
        raise TypeError("GradedComplex is unhashable")

    def shift(self, q: int) -> "GradedComplex":
        return GradedComplex({g: layer.shift(q) for g, layer in self.layers.items()})

    def twist(self, p: int) -> "GradedComplex":
        """The p-th twist: internal degrees drop by p (the unit twisted once
        sits in internal degree -1)."""
        return GradedComplex({g - p: layer for g, layer in self.layers.items()})

    def twist_shift(self, p: int) -> "GradedComplex":
        """Twist by p combined with the shift [2p]; weight-preserving."""
        return self.twist(p).shift(2 * p)

    def direct_sum(self, other: "GradedComplex") -> "GradedComplex":
        layers = dict(self.layers)
        for g, layer in other.layers.items():
            layers[g] = layers[g].direct_sum(layer) if g in layers else layer
        return GradedComplex(layers)

    def minimize(self) -> "GradedComplex":
        return GradedComplex({g: layer.minimize() for g, layer in self.layers.items()})

    def is_minimal(self) -> bool:
        return all(layer.is_minimal() for layer in self.layers.values())


def simple(c: int, g: int) -> GradedComplex:
    """The one-dimensional graded object at position c, internal degree g."""
    return GradedComplex({g: Complex({c: 1})})


def simple_ungraded(c: int) -> Complex:
    return Complex({c: 1})


def weight_of(c: int, g: int) -> int:
    """Weight of the simple at (c, g)."""
    return c - 2 * g


def iota_collapse(x: GradedComplex) -> Complex:
    """Collapse the internal grading: layer g is shifted by [2g] and summed.

    Sends the simple at (-2, -1) (the twisted-and-shifted unit) to the unit
    in position 0; functorial for direct sums and shifts.
    """
    out = Complex({})
    for g in x.internal_degrees():
        out = out.direct_sum(x.layers[g].shift(2 * g))
    return out


# -- truncations -------------------------------------------------------------


def t_truncate_leq(x, m: int):
    """Keep cohomology in positions <= m (computed after minimising)."""
    if isinstance(x, GradedComplex):
        return GradedComplex({g: t_truncate_leq(layer, m) for g, layer in x.layers.items()})
    minimal = x.minimize()
    return Complex({c: d for c, d in minimal.dims.items() if c <= m}, {}, validate=False)


def t_truncate_geq(x, m: int):
    if isinstance(x, GradedComplex):
        return GradedComplex({g: t_truncate_geq(layer, m) for g, layer in x.layers.items()})
    minimal = x.minimize()
    return Complex({c: d for c, d in minimal.dims.items() if c >= m}, {}, validate=False)


def w_truncate_leq(x, m: int):
    """Keep simples of weight <= m; on ungraded complexes the weight of a
    simple in position c is c, so this agrees with the t-truncation."""
    if isinstance(x, GradedComplex):
        return GradedComplex(
            {
                g: Complex(
                    {c: d for c, d in layer.minimize().dims.items() if weight_of(c, g) <= m},
                    {},
                    validate=False,
                )
                for g, layer in x.layers.items()
            }
        )
    minimal = x.minimize()
    return Complex({c: d for c, d in minimal.dims.items() if c <= m}, {}, validate=False)


def w_truncate_geq(x, m: int):
    if isinstance(x, GradedComplex):
        return GradedComplex(
            {
                g: Complex(
                    {c: d for c, d in layer.minimize().dims.items() if weight_of(c, g) >= m},
                    {},
                    validate=False,
                )
                for g, layer in x.layers.items()
            }
        )
    minimal = x.minimize()
    return Complex({c: d for c, d in minimal.dims.items() if c >= m}, {}, validate=False)


# -- homotopy Homs -----------------------------------------------------------


def _hom_complex_dim(x: Complex, y: Complex, k: int) -> int:
    return sum(x.dim_at(c) * y.dim_at(c + k) for c in x.positions())


def _hom_differential(x: Complex, y: Complex, k: int) -> QMatrix:
    """The map Hom^k -> Hom^{k+1}, f -> d_Y f - (-1)^k f d_X, as a matrix."""
    src_layout = [(c, y.dim_at(c + k), x.dim_at(c)) for c in x.positions() if y.dim_at(c + k)]
    tgt_layout = [(c, y.dim_at(c + k + 1), x.dim_at(c)) for c in x.positions() if y.dim_at(c + k + 1)]
    src_index = {}
    pos = 0
    for c, rows, cols in src_layout:
        for r in range(rows):
            for s in range(cols):
                src_index[(c, r, s)] = pos
                pos += 1
    n_src = pos
    tgt_index = {}
    pos = 0
    for c, rows, cols in tgt_layout:
        for r in range(rows):
            for s in range(cols):
                tgt_index[(c, r, s)] = pos
                pos += 1
    n_tgt = pos
    data = [[Fraction(0)] * n_src for _ in range(n_tgt)]
    sign = -1 if k % 2 else 1
    for c in x.positions():
        dy = y.diff(c + k)
        dx = x.diff(c)
        for r in range(y.dim_at(c + k + 1)):
            for s in range(x.dim_at(c)):
                row_idx = tgt_index.get((c, r, s))
                if row_idx is None:
                    continue
                row = data[row_idx]
                for t in range(y.dim_at(c + k)):
                    coeff = dy.data[r][t]
                    if coeff:
                        row[src_index[(c, t, s)]] += coeff
                for t in range(x.dim_at(c + 1)):
                    coeff = dx.data[t][s]
                    if coeff:
                        idx = src_index.get((c + 1, r, t))
                        if idx is not None:
                            row[idx] -= sign * coeff
    return QMatrix(n_tgt, n_src, data)


def hom_homotopy(x, y, k: int = 0) -> int:
    """Dimension of chain maps x -> y[k] modulo homotopy."""
    if isinstance(x, GradedComplex) and isinstance(y, GradedComplex):
        return sum(
            hom_homotopy(x.layer(g), y.layer(g), k)
            for g in set(x.internal_degrees()) | set(y.internal_degrees())
        )
    if isinstance(x, GradedComplex) or isinstance(y, GradedComplex):
        raise TypeError("cannot mix graded and ungraded complexes in Hom")
    d_k = _hom_differential(x, y, k)
    cycles = len(kernel_basis(d_k))
    d_prev = _hom_differential(x, y, k - 1)
    return cycles - rank(d_prev)


# -- axiom checkers ----------------------------------------------------------


def check_t_axioms(sample) -> dict:
    """Verify the truncation axioms on a finite sample of complexes.

    Checks nesting of the aisles, Hom-vanishing from the lower to the upper
    part, and that every object splits as lower part plus upper part.
    """
    return _check_axioms(sample, t_truncate_leq, t_truncate_geq, upper_from=1)


def check_w_axioms(sample) -> dict:
    """Same battery for the weight-style truncations (orthogonality runs
    from the upper part to the strictly lower part)."""
    return _check_axioms(sample, w_truncate_leq, w_truncate_geq, upper_from=1, weight_style=True)


def _check_axioms(sample, trunc_leq, trunc_geq, upper_from: int, weight_style: bool = False) -> dict:
    sample = list(sample)
    nesting = True
    orthogonality = True
    decomposition = True
    for x in sample:
        lower0 = trunc_leq(x, 0)
        lower1 = trunc_leq(x, 1)
        if _dims_of(lower0) | _dims_of(lower1) != _dims_of(lower1):
            nesting = False
        upper = trunc_geq(x, upper_from)
        mx = x.minimize()
        if _merge_dims(lower0, upper) != _dims_of(mx):
            decomposition = False
    for x in sample:
        for y in sample:
            if weight_style:
                a = trunc_geq(x, 0)
                b = trunc_leq(y, -1)
            else:
                a = trunc_leq(x, 0)
                b = trunc_geq(y, 1)
            if hom_homotopy(a, b, 0) != 0:
                orthogonality = False
    return {
        "cases": len(sample),
        "pairs": len(sample) ** 2,
        "nesting": nesting,
        "orthogonality": orthogonality,
        "decomposition": decomposition,
        "all_pass": nesting and orthogonality and decomposition,
    }


def _dims_of(x) -> set:
    if isinstance(x, GradedComplex):
        return {(c, g, m) for (c, g), m in x.components().items()}
    return {(c, None, m) for c, m in x.dims.items()}


def _merge_dims(a, b) -> set:
    if isinstance(a, GradedComplex):
        merged: dict[tuple[int, int], int] = {}
        for (c, g), m in list(a.components().items()) + list(b.components().items()):
            merged[(c, g)] = merged.get((c, g), 0) + m
        return {(c, g, m) for (c, g), m in merged.items()}
    merged2: dict[int, int] = {}
    for src in (a, b):
        for c, m in src.dims.items():
            merged2[c] = merged2.get(c, 0) + m
    return {(c, None, m) for c, m in merged2.items()}


# -- random generators -------------------------------------------------------


def _random_unimodular(rng: random.Random, n: int) -> QMatrix:
    lower = [[Fraction(1 if i == j else rng.randint(-1, 1) if i > j else 0) for j in range(n)] for i in range(n)]
    upper = [[Fraction(1 if i == j else rng.randint(-1, 1) if i < j else 0) for j in range(n)] for i in range(n)]
    return QMatrix(n, n, lower) * QMatrix(n, n, upper)


def random_minimized_complex(rng: random.Random, max_pos: int = 3, max_dim: int = 2) -> Complex:
    dims = {}
    for c in range(-max_pos, max_pos + 1):
        d = rng.randint(0, max_dim)
        if d and rng.random() < 0.6:
            dims[c] = d
    return Complex(dims, {}, validate=False)


def random_complex(rng: random.Random, max_pos: int = 3, max_dim: int = 2) -> Complex:
    """A random complex with honest differentials and known homotopy type:
    simples plus contractible two-term pieces, conjugated by unimodular
    base changes."""
    out = random_minimized_complex(rng, max_pos, max_dim)
    for _ in range(rng.randint(0, 3)):
        c = rng.randint(-max_pos, max_pos - 1)
        out = out.direct_sum(Complex({c: 1, c + 1: 1}, {c: QMatrix.identity(1)}, validate=False))
    changes = {c: _random_unimodular(rng, out.dim_at(c)) for c in out.positions()}
    inverses = {}
    for c, mat in changes.items():
        from .linalg import solve

        cols = []
        for j in range(mat.rows):
            unit = [Fraction(1 if i == j else 0) for i in range(mat.rows)]
            cols.append(solve(mat, unit))
        inverses[c] = QMatrix(
            mat.rows, mat.rows, [[cols[j][i] for j in range(mat.rows)] for i in range(mat.rows)]
        )
    diffs = {}
    for c in out.positions():
        if out.dim_at(c + 1):
            mat = changes[c + 1] * out.diff(c) * inverses[c]
            if not mat.is_zero():
                diffs[c] = mat
    return Complex(out.dims, diffs)


def random_graded_complex(rng: random.Random, max_g: int = 2, **kw) -> GradedComplex:
    layers = {}
    for g in range(-max_g, max_g + 1):
        if rng.random() < 0.5:
            layer = random_complex(rng, **kw)
            if layer.total_dim():
                layers[g] = layer
    return GradedComplex(layers)
