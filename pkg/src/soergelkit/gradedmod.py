"""Finite-dimensional graded modules over the coinvariant algebra.

A module is a graded vector space together with one matrix per variable
mapping each degree-d component to the degree-(d+2) component.  The
matrices must commute pairwise and every elementary symmetric polynomial of
them must vanish, which is exactly what makes the space a module over the
quotient ring; :meth:`GradedModule.validate` checks both and module
constructors run it, so a broken construction never propagates.

Graded Hom spaces are computed degreewise by solving the commutation
equations exactly; the ungraded Hom dimension is computed by an independent
solve of the unrestricted system, which gives the degrading comparison a
second route rather than summing the graded answer by construction.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .coinvariant import CoinvariantRing
from .laurent import LaurentPoly
from .linalg import QMatrix, SpanSolver, kernel_basis
from .multipoly import MultiPoly


class GradedModule:
    """A graded module over the coinvariant algebra of rank n."""

    __slots__ = ("ring", "dims", "actions")

    def __init__(self, ring: CoinvariantRing, dims, actions, validate: bool = True):
        self.ring = ring
        self.dims = {int(d): int(m) for d, m in dims.items() if m}
        acts: dict[tuple[int, int], QMatrix] = {}
        for (i, d), mat in actions.items():
            if mat.rows != self.dim_at(d + 2) or mat.cols != self.dim_at(d):
                raise ValueError(f"action block for x_{i} at degree {d} has wrong shape")
            if not mat.is_zero():
                acts[(int(i), int(d))] = mat
        self.actions = acts
        if validate:
            self.validate()

    # -- bookkeeping ---------------------------------------------------------

    def degrees(self) -> tuple[int, ...]:
        return tuple(sorted(self.dims))

    def dim_at(self, d: int) -> int:
        return self.dims.get(d, 0)

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def character(self) -> LaurentPoly:
        return LaurentPoly({d: m for d, m in self.dims.items()})

    def action(self, i: int, d: int) -> QMatrix:
        mat = self.actions.get((i, d))
        if mat is None:
            return QMatrix.zero(self.dim_at(d + 2), self.dim_at(d))
        return mat

    def total_offsets(self) -> dict[int, int]:
        off = {}
        pos = 0
        for d in self.degrees():
            off[d] = pos
            pos += self.dims[d]
        return off

    def total_action(self, i: int) -> QMatrix:
        n = self.total_dim()
        off = self.total_offsets()
        data = [[Fraction(0)] * n for _ in range(n)]
        for d in self.degrees():
            blk = self.actions.get((i, d))
            if blk is None or d + 2 not in self.dims:
                continue
            r0, c0 = off[d + 2], off[d]
            for r in range(blk.rows):
                row = data[r0 + r]
                for c in range(blk.cols):
                    row[c0 + c] = blk.data[r][c]
        return QMatrix(n, n, data)

    # -- constructors ----------------------------------------------------------

    def shift(self, k: int) -> "GradedModule":
        """Lower all degrees by k (characters pick up v^-k)."""
        return GradedModule(
            self.ring,
            {d - k: m for d, m in self.dims.items()},
            {(i, d - k): mat for (i, d), mat in self.actions.items()},
            validate=False,
        )

    def direct_sum(self, other: "GradedModule") -> "GradedModule":
        if self.ring is not other.ring:
            raise ValueError("direct sum across different rings")
        dims = dict(self.dims)
        for d, m in other.dims.items():
            dims[d] = dims.get(d, 0) + m
        actions = {}
        for i in range(1, self.ring.n + 1):
            for d in set(self.degrees()) | set(other.degrees()):
                a, b = self.action(i, d), other.action(i, d)
                if a.rows + b.rows == 0 or a.cols + b.cols == 0:
                    continue
                rows = []
                for r in range(a.rows):
                    rows.append(a.row(r) + [Fraction(0)] * b.cols)
                for r in range(b.rows):
                    rows.append([Fraction(0)] * a.cols + b.row(r))
                actions[(i, d)] = QMatrix(a.rows + b.rows, a.cols + b.cols, rows)
        return GradedModule(self.ring, dims, actions, validate=False)

    # -- module axioms ---------------------------------------------------------

    def validate(self) -> None:
        """Check commutation and the vanishing of e_k of the actions."""
        n = self.ring.n
        for i, j in combinations(range(1, n + 1), 2):
            for d in self.degrees():
                lhs = self.action(i, d + 2) * self.action(j, d)
                rhs = self.action(j, d + 2) * self.action(i, d)
                if lhs != rhs:
                    raise AssertionError(f"actions of x_{i} and x_{j} do not commute at degree {d}")
        for k in range(1, n + 1):
            for d in self.degrees():
                total = QMatrix.zero(self.dim_at(d + 2 * k), self.dim_at(d))
                for subset in combinations(range(1, n + 1), k):
                    prod = None
                    deg = d
                    for i in subset:
                        step = self.action(i, deg)
                        prod = step if prod is None else step * prod
                        deg += 2
                    total = total + prod
                if not total.is_zero():
                    raise AssertionError(f"e_{k} of the actions does not vanish at degree {d}")

    def poly_action(self, p: MultiPoly) -> dict[int, QMatrix]:
        """Blocks of the action of a homogeneous polynomial, degree by degree.

        Well defined on the quotient because e_k of the actions vanishes.
        """
        parts = p.homogeneous_parts()
        if len(parts) > 1:
            raise ValueError("poly_action expects a homogeneous polynomial")
        if not parts:
            return {d: QMatrix.zero(self.dim_at(d), self.dim_at(d)) for d in self.degrees()}
        deg, part = next(iter(parts.items()))
        out = {}
        for d in self.degrees():
            rows = self.dim_at(d + 2 * deg)
            total = QMatrix.zero(rows, self.dim_at(d))
            for a, x in part.terms():
                prod = QMatrix.identity(self.dim_at(d))
                cur = d
                for i, e in enumerate(a, start=1):
                    for _ in range(e):
                        prod = self.action(i, cur) * prod
                        cur += 2
                total = total + prod.scale(x)
            out[d] = total
        return out


class ModuleMap:
    """A homogeneous map of graded modules, given by one block per degree.

    A block at d maps the source degree-d component to the target component
    in degree d + degree.
    """

    __slots__ = ("source", "target", "degree", "blocks")

    def __init__(self, source: GradedModule, target: GradedModule, degree: int, blocks):
        self.source = source
        self.target = target
        self.degree = int(degree)
        blks: dict[int, QMatrix] = {}
        for d, mat in blocks.items():
            d = int(d)
            if mat.rows != target.dim_at(d + self.degree) or mat.cols != source.dim_at(d):
                raise ValueError(f"map block at degree {d} has wrong shape")
            if not mat.is_zero():
                blks[d] = mat
        self.blocks = blks

    @classmethod
    def zero(cls, source: GradedModule, target: GradedModule, degree: int) -> "ModuleMap":
        return cls(source, target, degree, {})

    @classmethod
    def identity(cls, module: GradedModule) -> "ModuleMap":
        return cls(
            module,
            module,
            0,
            {d: QMatrix.identity(module.dim_at(d)) for d in module.degrees()},
        )

    def block(self, d: int) -> QMatrix:
        mat = self.blocks.get(d)
        if mat is None:
            return QMatrix.zero(self.target.dim_at(d + self.degree), self.source.dim_at(d))
        return mat

    def is_zero(self) -> bool:
        return not self.blocks

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleMap):
            return NotImplemented
        return (
            self.source is other.source
            and self.target is other.target
            and self.degree == other.degree
            and self.blocks == other.blocks
        )

    def __hash__(self):
        raise TypeError("ModuleMap is unhashable")

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        if self.degree != other.degree or self.source is not other.source or self.target is not other.target:
            raise ValueError("incompatible maps in addition")
        blocks = {}
        for d in set(self.blocks) | set(other.blocks):
            blocks[d] = self.block(d) + other.block(d)
        return ModuleMap(self.source, self.target, self.degree, blocks)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return self + other.scale(-1)

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(
            self.source, self.target, self.degree, {d: m.scale(c) for d, m in self.blocks.items()}
        )

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target is not self.source:
            raise ValueError("maps are not composable")
        deg = self.degree + other.degree
        blocks = {}
        for d in other.source.degrees():
            mat = self.block(d + other.degree) * other.block(d)
            if not mat.is_zero():
                blocks[d] = mat
        return ModuleMap(other.source, self.target, deg, blocks)

    def check_commutes(self) -> None:
        """Assert the map commutes with every variable action."""
        for i in range(1, self.source.ring.n + 1):
            for d in self.source.degrees():
                lhs = self.target.action(i, d + self.degree) * self.block(d)
                rhs = self.block(d + 2) * self.source.action(i, d)
                if lhs != rhs:
                    raise AssertionError(f"map fails to commute with x_{i} at degree {d}")

    def to_total(self) -> QMatrix:
        """The map as a single matrix on totalised bases (degree ascending)."""
        rows, cols = self.target.total_dim(), self.source.total_dim()
        t_off, s_off = self.target.total_offsets(), self.source.total_offsets()
        data = [[Fraction(0)] * cols for _ in range(rows)]
        for d, blk in self.blocks.items():
            r0 = t_off.get(d + self.degree)
            c0 = s_off.get(d)
            if r0 is None or c0 is None:
                continue
            for r in range(blk.rows):
                row = data[r0 + r]
                for c in range(blk.cols):
                    row[c0 + c] = blk.data[r][c]
        return QMatrix(rows, cols, data)


def trivial_module(ring: CoinvariantRing) -> GradedModule:
    """The one-dimensional module in degree 0 with all variables acting by 0."""
    return GradedModule(ring, {0: 1}, {})


def hom_graded(M: GradedModule, N: GradedModule, degree: int) -> list[ModuleMap]:
    """A basis of the degree-``degree`` maps commuting with all actions."""
    if M.ring is not N.ring:
        raise ValueError("Hom between modules over different rings")
    n = M.ring.n
    var_index: dict[tuple[int, int, int], int] = {}
    layout = []
    count = 0
    for a in M.degrees():
        rows, cols = N.dim_at(a + degree), M.dim_at(a)
        if rows and cols:
            for r in range(rows):
                for c in range(cols):
                    var_index[(a, r, c)] = count
                    count += 1
            layout.append((a, rows, cols))
    if count == 0:
        return []
    eq_rows: list[list[Fraction]] = []
    for i in range(1, n + 1):
        for a in M.degrees():
            out_rows = N.dim_at(a + degree + 2)
            cols = M.dim_at(a)
            if out_rows == 0 or cols == 0:
                continue
            act_n = N.action(i, a + degree)
            act_m = M.action(i, a)
            for r in range(out_rows):
                for c in range(cols):
                    row = [Fraction(0)] * count
                    touched = False
                    for k in range(N.dim_at(a + degree)):
                        coeff = act_n.data[r][k]
                        if coeff:
                            row[var_index[(a, k, c)]] += coeff
                            touched = True
                    for k in range(M.dim_at(a + 2)):
                        coeff = act_m.data[k][c]
                        if coeff:
                            idx = var_index.get((a + 2, r, k))
                            if idx is not None:
                                row[idx] -= coeff
                                touched = True
                    if touched:
                        eq_rows.append(row)
    if eq_rows:
        vectors = kernel_basis(QMatrix.from_rows(eq_rows))
    else:
        vectors = [
            [Fraction(1 if t == s else 0) for s in range(count)] for t in range(count)
        ]
    maps = []
    for vec in vectors:
        blocks = {}
        for a, rows, cols in layout:
            blk = [[vec[var_index[(a, r, c)]] for c in range(cols)] for r in range(rows)]
            blocks[a] = QMatrix(rows, cols, blk)
        maps.append(ModuleMap(M, N, degree, blocks))
    return maps


def hom_degree_range(M: GradedModule, N: GradedModule) -> range:
    """Degrees at which a graded map could be nonzero."""
    if not M.dims or not N.dims:
        return range(0)
    lo = min(N.degrees()) - max(M.degrees())
    hi = max(N.degrees()) - min(M.degrees())
    return range(lo, hi + 1)


def graded_hom_poly(M: GradedModule, N: GradedModule) -> LaurentPoly:
    """Graded dimension of Hom(M, N) as a Laurent polynomial in v."""
    return LaurentPoly({d: len(hom_graded(M, N, d)) for d in hom_degree_range(M, N)})


def hom_ungraded_dim(M: GradedModule, N: GradedModule) -> int:
    """Dimension of all module maps with no degree restriction.

    Solved on totalised bases as an independent route; the graded count
    must agree with this by the degrading principle.
    """
    if M.ring is not N.ring:
        raise ValueError("Hom between modules over different rings")
    rows_n, cols_m = N.total_dim(), M.total_dim()
    count = rows_n * cols_m
    if count == 0:
        return 0
    eq_rows = []
    for i in range(1, M.ring.n + 1):
        a_n = N.total_action(i)
        a_m = M.total_action(i)
        for r in range(rows_n):
            for c in range(cols_m):
                row = [Fraction(0)] * count
                touched = False
                for k in range(rows_n):
                    coeff = a_n.data[r][k]
                    if coeff:
                        row[k * cols_m + c] += coeff
                        touched = True
                for k in range(cols_m):
                    coeff = a_m.data[k][c]
                    if coeff:
                        row[r * cols_m + k] -= coeff
                        touched = True
                if touched:
                    eq_rows.append(row)
    if not eq_rows:
        return count
    return len(kernel_basis(QMatrix.from_rows(eq_rows)))


def kernel_module(e: ModuleMap) -> tuple[GradedModule, ModuleMap]:
    """The kernel of a degree-0 endomorphism, with its inclusion map.

    The kernel of a map commuting with the actions is a submodule; its
    action blocks are found by solving against the kernel basis, which is
    exact and raises if the map was not actually a module map.
    """
    if e.degree != 0 or e.source is not e.target:
        raise ValueError("kernel_module expects a degree-0 endomorphism")
    M = e.source
    basis: dict[int, list[list[Fraction]]] = {}
    dims = {}
    for d in M.degrees():
        vecs = kernel_basis(e.block(d))
        if vecs:
            basis[d] = vecs
            dims[d] = len(vecs)
    solvers = {d: SpanSolver(vecs, M.dim_at(d)) for d, vecs in basis.items()}
    actions = {}
    for i in range(1, M.ring.n + 1):
        for d, vecs in basis.items():
            tgt = basis.get(d + 2)
            act = M.action(i, d)
            images = [act.times_vector(v) for v in vecs]
            if tgt is None:
                if any(any(x for x in img) for img in images):
                    raise AssertionError("kernel is not action-stable")
                continue
            cols = [solvers[d + 2].coords(img) for img in images]
            actions[(i, d)] = QMatrix(
                len(tgt), len(vecs), [[cols[j][r] for j in range(len(vecs))] for r in range(len(tgt))]
            )
    K = GradedModule(M.ring, dims, actions, validate=False)
    inclusion = ModuleMap(
        K,
        M,
        0,
        {
            d: QMatrix(M.dim_at(d), len(vecs), [[vecs[j][r] for j in range(len(vecs))] for r in range(M.dim_at(d))])
            for d, vecs in basis.items()
        },
    )
    return K, inclusion
