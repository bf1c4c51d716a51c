"""Bott-Samelson induction and indecomposable summands.

For a simple reflection s, induction sends a module M to the tensor product
of the coinvariant algebra C with M over the s-invariant subalgebra,
shifted one grading step down so that self-dual characters stay self-dual.
The tensor product is built as an explicit quotient of the full tensor
space C (x) M: the relation subspace is spanned by

    (c f) (x) m  -  c (x) (f m)

over basis elements c of C, basis elements m of M and algebra generators f
of the positive-degree invariants; products of generators reduce to
generator instances by telescoping, so this span is the full relation
space.  Freeness of C over the invariants forces the result to have
exactly twice the dimension of M, and the constructor raises otherwise.

Iterating induction along a word starting from the one-dimensional module
gives the Bott-Samelson module of the word.  Its indecomposable summands
D_w are extracted by a peel loop: the Hecke-algebra product of canonical
generators predicts the summand multiset, and every predicted summand is
split off by finding a projection and an inclusion whose composite is a
nonzero scalar.  Oracle and linear algebra verify each other; a predicted
summand that cannot be split is a hard error.  Scalar-valued peeling is
sound because degree-zero endomorphisms of each D_w are one-dimensional,
which is asserted whenever a composite endomorphism is read off.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coinvariant import CoinvariantRing, coinvariant_ring
from .gradedmod import (
    GradedModule,
    ModuleMap,
    hom_degree_range,
    hom_graded,
    kernel_module,
    trivial_module,
)
from .hecke import HeckeAlgebra, HeckeElement, hecke_algebra
from .laurent import LaurentPoly
from .linalg import QMatrix, SizeCapError, SpanSolver, dimension_cap, rref
from .weyl import Perm, Word, WeylGroup, format_perm, length, weyl_group


class DecompositionError(RuntimeError):
    """A predicted splitting could not be realised by exact linear algebra."""


class Decomposition:
    """Summands (w, k), each a copy of D_w with degrees lowered by k,
    together with the orthogonal idempotents realising the splitting."""

    __slots__ = ("module", "summands", "idempotents")

    def __init__(self, module: GradedModule, summands, idempotents):
        self.module = module
        self.summands = tuple(summands)
        self.idempotents = tuple(idempotents)

    def multiset(self) -> tuple[tuple[Perm, int], ...]:
        return tuple(sorted(self.summands, key=lambda t: (length(t[0]), t[0], t[1])))

    def __repr__(self) -> str:
        inner = ", ".join(f"(D[{format_perm(w)}], {k})" for w, k in self.multiset())
        return f"Decomposition[{inner}]"


def _scalar_of_endo(comp: ModuleMap, module: GradedModule) -> Fraction:
    """Read a degree-0 endomorphism as a scalar; raises when it is not one."""
    if comp.is_zero():
        return Fraction(0)
    d0 = module.degrees()[0]
    c = comp.block(d0).entry(0, 0)
    if comp != ModuleMap.identity(module).scale(c):
        raise DecompositionError(
            "degree-0 endomorphism is not scalar; the summand is not indecomposable"
        )
    return c


class SoergelCategory:
    """Per-rank context: coinvariant ring, group, Hecke oracle, module caches."""

    def __init__(self, n: int):
        self.n = n
        self.group: WeylGroup = weyl_group(n)
        self.ring: CoinvariantRing = coinvariant_ring(n)
        self.hecke: HeckeAlgebra = hecke_algebra(n)
        self._bs: dict[Word, GradedModule] = {}
        self._indec: dict[Perm, GradedModule] = {}
        self._hom: dict[tuple[Perm, Perm, int], tuple[ModuleMap, ...]] = {}

    # -- induction ----------------------------------------------------------

    def trivial(self) -> GradedModule:
        return trivial_module(self.ring)

    def induct(self, i: int, M: GradedModule) -> GradedModule:
        ring = self.ring
        if M.ring is not ring:
            raise ValueError("module belongs to a different ring")
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"simple reflection index {i} out of range for rank {self.n}")
        if ring.dim * M.total_dim() > dimension_cap():
            raise SizeCapError(
                f"intermediate tensor space of dimension {ring.dim * M.total_dim()} "
                f"exceeds the cap {dimension_cap()}"
            )

        # ordered basis of C (x) M, degree by degree: (module degree, module
        # index, ring basis index)
        tensor_basis: dict[int, list[tuple[int, int, int]]] = {}
        for dm in M.degrees():
            for mi in range(M.dim_at(dm)):
                for ci in range(ring.dim):
                    d = dm + ring.basis_degree(ci)
                    tensor_basis.setdefault(d, []).append((dm, mi, ci))
        tensor_pos = {
            d: {key: p for p, key in enumerate(keys)} for d, keys in tensor_basis.items()
        }

        relations: dict[int, list[list[Fraction]]] = {}
        for g in ring.invariant_generators(i):
            dg = g.degree()
            g_on_m = M.poly_action(g.lift())
            g_times_basis = [(g * ring.basis_element(ci)).coords for ci in range(ring.dim)]
            for dm in M.degrees():
                gm_block = g_on_m[dm]
                for ci in range(ring.dim):
                    d = dm + ring.basis_degree(ci) + dg
                    if d not in tensor_basis:
                        continue
                    pos = tensor_pos[d]
                    prod_coords = g_times_basis[ci]
                    for mi in range(M.dim_at(dm)):
                        row = [Fraction(0)] * len(tensor_basis[d])
                        touched = False
                        for cj, x in prod_coords.items():
                            row[pos[(dm, mi, cj)]] += x
                            touched = True
                        for mj in range(M.dim_at(dm + dg)):
                            x = gm_block.data[mj][mi]
                            if x:
                                row[pos[(dm + dg, mj, ci)]] -= x
                                touched = True
                        if touched:
                            relations.setdefault(d, []).append(row)

        # reduce the relation span per degree; free coordinates give the
        # quotient basis and a projection
        reducers: dict[int, tuple[list[list[Fraction]], tuple[int, ...], list[int]]] = {}
        quot_dims: dict[int, int] = {}
        for d, keys in tensor_basis.items():
            rows = relations.get(d)
            if rows:
                res = rref(QMatrix.from_rows(rows))
                reduced = [res.matrix.row(k) for k in range(res.rank)]
                pivots = res.pivots
            else:
                reduced, pivots = [], ()
            pivot_set = set(pivots)
            free = [j for j in range(len(keys)) if j not in pivot_set]
            reducers[d] = (reduced, pivots, free)
            if free:
                quot_dims[d] = len(free)

        def project(d: int, vec: list[Fraction]) -> list[Fraction]:
            reduced, pivots, free = reducers[d]
            v = list(vec)
            for r, pc in enumerate(pivots):
                x = v[pc]
                if x:
                    row = reduced[r]
                    for j in range(pc, len(v)):
                        if row[j]:
                            v[j] -= x * row[j]
            return [v[j] for j in free]

        # the variables act on the ring tensor factor
        var_times_basis = [
            [(ring.variable(l) * ring.basis_element(ci)).coords for ci in range(ring.dim)]
            for l in range(1, ring.n + 1)
        ]
        actions: dict[tuple[int, int], QMatrix] = {}
        for l in range(1, ring.n + 1):
            prods = var_times_basis[l - 1]
            for d in sorted(quot_dims):
                if quot_dims.get(d + 2, 0) == 0:
                    continue
                _, _, free = reducers[d]
                keys = tensor_basis[d]
                pos_up = tensor_pos[d + 2]
                cols = []
                for j in free:
                    dm, mi, ci = keys[j]
                    vec = [Fraction(0)] * len(tensor_basis[d + 2])
                    for cj, x in prods[ci].items():
                        vec[pos_up[(dm, mi, cj)]] += x
                    cols.append(project(d + 2, vec))
                rows_out = quot_dims[d + 2]
                actions[(l, d)] = QMatrix(
                    rows_out,
                    len(free),
                    [[cols[j][r] for j in range(len(free))] for r in range(rows_out)],
                )

        quotient = GradedModule(ring, quot_dims, actions, validate=True)
        if quotient.total_dim() != 2 * M.total_dim():
            raise AssertionError(
                f"induction produced dimension {quotient.total_dim()}, "
                f"expected {2 * M.total_dim()}"
            )
        return quotient.shift(1)

    def bott_samelson(self, word: Word) -> GradedModule:
        """Iterated induction along the word, starting from the trivial module."""
        word = tuple(word)
        cached = self._bs.get(word)
        if cached is not None:
            return cached
        if not word:
            module = self.trivial()
        else:
            module = self.induct(word[-1], self.bott_samelson(word[:-1]))
        self._bs[word] = module
        return module

    # -- Hom spaces -----------------------------------------------------------

    def hom_basis(self, x: Perm, y: Perm, degree: int) -> tuple[ModuleMap, ...]:
        """Cached basis of degree-``degree`` maps D_x -> D_y."""
        key = (x, y, degree)
        cached = self._hom.get(key)
        if cached is None:
            cached = tuple(hom_graded(self.indecomposable(x), self.indecomposable(y), degree))
            self._hom[key] = cached
        return cached

    def hom_poly(self, x: Perm, y: Perm) -> LaurentPoly:
        """Graded dimension of Hom(D_x, D_y)."""
        dx, dy = self.indecomposable(x), self.indecomposable(y)
        return LaurentPoly({d: len(self.hom_basis(x, y, d)) for d in hom_degree_range(dx, dy)})

    # -- oracle -----------------------------------------------------------------

    def expected_summands(self, word: Word) -> list[tuple[Perm, int]]:
        """Summand multiset predicted by the canonical-generator product.

        The coefficient of v^j in the expansion coefficient at x predicts a
        copy of D_x with degrees lowered by -j.
        """
        expansion = self.hecke.kl_expand(self.hecke.product_bs(tuple(word)))
        out = []
        for x in sorted(expansion, key=lambda w: (length(w), w)):
            for j, c in expansion[x].items():
                if c.denominator != 1 or c < 0:
                    raise DecompositionError(
                        f"oracle multiplicity {c} at {format_perm(x)} is not a nonnegative integer"
                    )
                out.extend([(x, -j)] * int(c))
        return sorted(out, key=lambda t: (length(t[0]), t[0], t[1]))

    # -- decomposition ------------------------------------------------------------

    def _try_peel(self, M: GradedModule, x: Perm, k: int):
        """Split one copy of D_x with shift k off M, or return None."""
        dx = self.indecomposable(x)
        inclusions = hom_graded(dx, M, -k)
        if not inclusions:
            return None
        projections = hom_graded(M, dx, k)
        for j in inclusions:
            for p in projections:
                c = _scalar_of_endo(p.compose(j), dx)
                if c:
                    idem = j.compose(p).scale(Fraction(1) / c)
                    complement, inc, proj = kernel_module_with_projection(idem)
                    return idem, complement, inc, proj
        return None

    def decompose(self, M: GradedModule, expected=None) -> Decomposition:
        """Peel M into shifted indecomposables.

        With ``expected`` (a list of (x, k) pairs) the peel follows the
        oracle prediction; otherwise candidates are searched by character
        containment over all indecomposables of the rank.  Failure to
        realise a splitting raises :class:`DecompositionError`.
        """
        summands: list[tuple[Perm, int]] = []
        idempotents: list[ModuleMap] = []
        cur = M
        inc_chain = ModuleMap.identity(M)
        proj_chain = ModuleMap.identity(M)

        def record(x, k, idem_local, complement, inc, proj):
            nonlocal cur, inc_chain, proj_chain
            idem_global = inc_chain.compose(idem_local).compose(proj_chain)
            summands.append((x, k))
            idempotents.append(idem_global)
            inc_chain = inc_chain.compose(inc)
            proj_chain = proj.compose(proj_chain)
            cur = complement

        if expected is not None:
            for x, k in expected:
                res = self._try_peel(cur, x, k)
                if res is None:
                    raise DecompositionError(
                        f"predicted summand (D[{format_perm(x)}], {k}) could not be split off"
                    )
                record(x, k, *res)
        else:
            while cur.total_dim():
                progressed = False
                for x in sorted(self.group.elements(), key=lambda w: (-length(w), w)):
                    dx_char = self.indecomposable(x).character()
                    char = cur.character()
                    for k in _candidate_shifts(dx_char, char):
                        res = self._try_peel(cur, x, k)
                        if res is not None:
                            record(x, k, *res)
                            progressed = True
                            break
                    if progressed:
                        break
                if not progressed:
                    raise DecompositionError(
                        "module is not a direct sum of shifted indecomposables"
                    )
        if cur.total_dim():
            raise DecompositionError(
                f"peel left a remainder of dimension {cur.total_dim()}"
            )
        got = LaurentPoly.zero()
        for x, k in summands:
            got = got + self.indecomposable(x).character().shift(-k)
        if got != M.character():
            raise DecompositionError("summand characters do not add up to the module character")
        return Decomposition(M, summands, idempotents)

    def indecomposable(self, w: Perm) -> GradedModule:
        """The summand D_w, peeled from the Bott-Samelson module of a
        reduced word of w; cached per rank."""
        cached = self._indec.get(w)
        if cached is not None:
            return cached
        if length(w) == 0:
            module = self.trivial()
        else:
            word = self.group.a_reduced_word(w)
            bs = self.bott_samelson(word)
            expected = self.expected_summands(word)
            if (w, 0) not in expected:
                raise DecompositionError(
                    f"oracle does not predict D[{format_perm(w)}] inside its own word"
                )
            rest = list(expected)
            rest.remove((w, 0))
            cur = bs
            for x, k in rest:
                res = self._try_peel(cur, x, k)
                if res is None:
                    raise DecompositionError(
                        f"predicted summand (D[{format_perm(x)}], {k}) could not be split off "
                        f"while extracting D[{format_perm(w)}]"
                    )
                cur = res[1]
            module = cur
            if not module.character().is_symmetric():
                raise DecompositionError(
                    f"D[{format_perm(w)}] came out with a non-self-dual character"
                )
        self._indec[w] = module
        if len(hom_graded(module, module, 0)) != 1:
            del self._indec[w]
            raise DecompositionError(
                f"degree-0 endomorphisms of D[{format_perm(w)}] are not scalars"
            )
        return module

    def hecke_class(self, M: GradedModule, expected=None) -> HeckeElement:
        """The canonical-basis combination matching the decomposition of M."""
        dec = self.decompose(M, expected=expected)
        out = self.hecke.zero()
        for x, k in dec.summands:
            out = out + self.hecke.kl_basis(x).scale(LaurentPoly.v(-k))
        return out

    def endo_algebra(self, summands) -> "EndoAlgebra":
        return EndoAlgebra(self, summands)


def _candidate_shifts(dx_char: LaurentPoly, char: LaurentPoly):
    """Shifts k for which v^-k (character of D_x) fits under ``char``."""
    if not char or not dx_char:
        return
    for k in range(dx_char.min_exp() - char.min_exp(), dx_char.max_exp() - char.max_exp() - 1, -1):
        shifted = dx_char.shift(-k)
        if all(shifted.coeff(e) <= char.coeff(e) for e, _ in shifted.items()):
            yield k


def kernel_module_with_projection(e: ModuleMap):
    """Kernel of a degree-0 idempotent with inclusion and the projection
    along the image."""
    K, inc = kernel_module(e)
    M = e.source
    solvers = {
        d: SpanSolver([inc.block(d).col(j) for j in range(K.dim_at(d))], M.dim_at(d))
        for d in K.degrees()
    }
    blocks = {}
    for d in M.degrees():
        kdim = K.dim_at(d)
        mdim = M.dim_at(d)
        if kdim == 0:
            continue
        comp = QMatrix.identity(mdim) - e.block(d)
        cols = [solvers[d].coords(comp.col(j)) for j in range(mdim)]
        blocks[d] = QMatrix(kdim, mdim, [[cols[j][r] for j in range(mdim)] for r in range(kdim)])
    proj = ModuleMap(M, K, 0, blocks)
    return K, inc, proj


class EndoAlgebra:
    """The endomorphism algebra of a direct sum of shifted indecomposables.

    The basis is graded by map degree; composition is tabulated exactly.
    Records are (source slot, target slot, degree, map).
    """

    def __init__(self, cat: SoergelCategory, summands):
        self.cat = cat
        self.summands = [(tuple(w), int(k)) for w, k in summands]
        if not self.summands:
            raise ValueError("endomorphism algebra of an empty sum")
        self.modules = [cat.indecomposable(w).shift(k) for w, k in self.summands]
        self.basis: list[tuple[int, int, int, ModuleMap]] = []
        self._block_index: dict[tuple[int, int], list[int]] = {}
        for a, ma in enumerate(self.modules):
            for b, mb in enumerate(self.modules):
                for d in hom_degree_range(ma, mb):
                    maps = hom_graded(ma, mb, d)
                    if (a, b, d) == (a, a, 0) and len(maps) == 1:
                        maps = [ModuleMap.identity(ma)]
                    for m in maps:
                        self._block_index.setdefault((a, b), []).append(len(self.basis))
                        self.basis.append((a, b, d, m))
        self._solvers: dict[tuple[int, int], tuple[list[int], SpanSolver]] = {}
        for (a, b), idxs in self._block_index.items():
            vecs = [_flatten(self.basis[i][3].to_total()) for i in idxs]
            dim = self.modules[b].total_dim() * self.modules[a].total_dim()
            self._solvers[(a, b)] = (idxs, SpanSolver(vecs, dim))
        self.table: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        for i, (a1, b1, _, m1) in enumerate(self.basis):
            for j, (a2, b2, _, m2) in enumerate(self.basis):
                if a1 != b2:
                    continue
                comp = m1.compose(m2)
                idxs, solver = self._solvers[(a2, b1)]
                coords = solver.coords(_flatten(comp.to_total()))
                entry = tuple((idxs[t], c) for t, c in enumerate(coords) if c)
                self.table[(i, j)] = entry

    @property
    def dim(self) -> int:
        return len(self.basis)

    def idempotent_index(self, a: int) -> int:
        for i in self._block_index.get((a, a), []):
            _, _, d, m = self.basis[i]
            if d == 0 and m == ModuleMap.identity(self.modules[a]):
                return i
        raise ValueError(f"no identity basis element for slot {a}")

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, _, d, _ in self.basis:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def block_poly(self, a: int, b: int) -> LaurentPoly:
        """Graded dimension of the (a -> b) Hom block."""
        out: dict[int, int] = {}
        for i in self._block_index.get((a, b), []):
            d = self.basis[i][2]
            out[d] = out.get(d, 0) + 1
        return LaurentPoly(out)

    def compose_indices(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Structure constants of basis[i] after basis[j]; empty if not composable."""
        return self.table.get((i, j), ())


def _flatten(m: QMatrix) -> list[Fraction]:
    return [x for row in m.data for x in row]


@lru_cache(maxsize=None)
def soergel_category(n: int) -> SoergelCategory:
    """Shared per-rank category (add-only caches, safe concurrent reads)."""
    return SoergelCategory(n)
