"""The acceptance battery: every headline guarantee of the package as one
runnable criterion, exact arithmetic throughout (tolerance zero).

Each criterion returns a result record with the checked numbers; the
battery is deterministic given the seed, so two runs produce identical
reports byte for byte.  The same functions back the command line
``selftest`` and the acceptance test module.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import product

from .dualalg import dual_algebra
from .formal import formal_category
from .gradedmod import graded_hom_poly, hom_ungraded_dim
from .soergel import soergel_category
from .tate import (
    check_t_axioms,
    check_w_axioms,
    iota_collapse,
    random_complex,
    random_graded_complex,
    simple,
    t_truncate_geq,
    t_truncate_leq,
    w_truncate_geq,
    w_truncate_leq,
    weight_of,
)
from .weyl import length

#: Curated rank-4 words for the oracle agreement run; all stay far below
#: the dimension cap (the largest has dimension 32).
CURATED_RANK4_WORDS = (
    (1, 2, 1),
    (2, 3, 2),
    (1, 3, 2, 1),
    (1, 2, 3, 2, 1),
    (1, 2, 1, 2, 1),
    (2, 1, 3, 2, 3),
)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{self.number:>2}] {status}  {self.name}"


def criterion_1_coinvariant_dimensions() -> CriterionResult:
    from .coinvariant import coinvariant_ring

    expected = {2: 2, 3: 6, 4: 24}
    dims = {}
    palindromic = True
    for n, want in expected.items():
        ring = coinvariant_ring(n)
        dims[str(n)] = ring.dim
        graded = ring.graded_dims()
        top = max(graded)
        palindromic = palindromic and all(graded[d] == graded[top - d] for d in graded)
    passed = palindromic and all(dims[str(n)] == want for n, want in expected.items())
    return CriterionResult(
        1,
        "coinvariant dimensions 2, 6, 24 with palindromic gradings",
        passed,
        {"dims": dims, "palindromic": palindromic},
    )


def criterion_2_demazure_calculus() -> CriterionResult:
    from .coinvariant import coinvariant_ring
    from .weyl import simple_reflection

    squares = braids = leibniz = 0
    ok = True
    for n in (2, 3, 4):
        ring = coinvariant_ring(n)
        basis = [ring.basis_element(i) for i in range(ring.dim)]
        for i in range(1, n):
            for c in basis:
                ok = ok and not ring.demazure(i, ring.demazure(i, c))
                squares += 1
        for i in range(1, n - 1):
            for c in basis:
                lhs = ring.demazure(i, ring.demazure(i + 1, ring.demazure(i, c)))
                rhs = ring.demazure(i + 1, ring.demazure(i, ring.demazure(i + 1, c)))
                ok = ok and lhs == rhs
                braids += 1
        for i in range(1, n):
            s = simple_reflection(i, n)
            for c in basis:
                sc = ring.weyl_act(s, c)
                dc = ring.demazure(i, c)
                for d in basis:
                    lhs = ring.demazure(i, c * d)
                    rhs = dc * d + sc * ring.demazure(i, d)
                    ok = ok and lhs == rhs
                    leibniz += 1
    return CriterionResult(
        2,
        "divided-difference calculus on the full staircase basis up to rank 4",
        ok,
        {"squares": squares, "braids": braids, "leibniz": leibniz},
    )


def criterion_3_bott_samelson_oracle() -> CriterionResult:
    checked = {"3": 0, "4": 0}
    ok = True
    cat3 = soergel_category(3)
    words3 = [w for l in range(5) for w in product((1, 2), repeat=l)]
    for word in words3:
        expected = cat3.expected_summands(word)
        dec = cat3.decompose(cat3.bott_samelson(word), expected=expected)
        ok = ok and dec.multiset() == tuple(
            sorted(expected, key=lambda t: (length(t[0]), t[0], t[1]))
        )
        checked["3"] += 1
    cat4 = soergel_category(4)
    for word in CURATED_RANK4_WORDS:
        expected = cat4.expected_summands(word)
        dec = cat4.decompose(cat4.bott_samelson(word), expected=expected)
        ok = ok and dec.multiset() == tuple(
            sorted(expected, key=lambda t: (length(t[0]), t[0], t[1]))
        )
        checked["4"] += 1
    return CriterionResult(
        3,
        "induced-module decompositions match the canonical-basis products",
        ok,
        {"words_checked": checked},
    )


def criterion_4_hom_formula() -> CriterionResult:
    cat = soergel_category(3)
    pairs = 0
    ok = True
    for x in cat.group.elements():
        for y in cat.group.elements():
            lhs = cat.hom_poly(x, y)
            rhs = cat.hecke.pairing(cat.hecke.kl_basis(x), cat.hecke.kl_basis(y))
            ok = ok and lhs == rhs
            pairs += 1
    return CriterionResult(
        4,
        "graded Hom dimensions equal the algebra pairing on all rank-3 pairs",
        ok,
        {"pairs": pairs},
    )


def criterion_5_degrading(seed: int) -> CriterionResult:
    module_pairs = 0
    ok = True
    for n in (2, 3):
        cat = soergel_category(n)
        modules = [cat.indecomposable(w) for w in cat.group.elements()]
        words = [(1,), (1, 1)] if n == 2 else [(1, 2), (2, 2), (1, 2, 1)]
        modules += [cat.bott_samelson(w) for w in words]
        for m in modules:
            for nn in modules:
                ok = ok and hom_ungraded_dim(m, nn) == graded_hom_poly(m, nn).at_one()
                module_pairs += 1
    complex_pairs = 0
    for n in (2, 3):
        fc = formal_category(n)
        rng = random.Random(seed + n)
        for _ in range(8):
            x = fc.random_complex(rng, max_positions=3, max_gens=2)
            y = fc.random_complex(rng, max_positions=3, max_gens=2)
            for k in (0, 1):
                lhs = fc.hom_homotopy(fc.iota_formal(x), fc.iota_formal(y), k)
                rhs = sum(fc.hom_homotopy(x, fc.twist(y, t), k) for t in range(-10, 11))
                ok = ok and lhs == rhs
                complex_pairs += 1
    return CriterionResult(
        5,
        "ungraded Hom equals the sum of graded Homs, for modules and complexes",
        ok,
        {"module_pairs": module_pairs, "complex_pairs": complex_pairs},
    )


def criterion_6_endomorphism_ring() -> CriterionResult:
    ok = True
    dims = {}
    for n in (2, 3):
        cat = soergel_category(n)
        d = cat.indecomposable(cat.group.longest_element())
        end_poly = graded_hom_poly(d, d)
        ok = ok and end_poly == cat.ring.poincare()
        dims[str(n)] = str(end_poly)
    return CriterionResult(
        6,
        "endomorphisms of the big summand have the ring's graded dimensions",
        ok,
        {"graded_dims": dims},
    )


def criterion_7_tate_structures(seed: int) -> CriterionResult:
    ok = True
    # fixed witness: the twisted-shifted unit has weight 0 everywhere but
    # moves from t-degree -2 to t-degree 0 under the collapse
    x = simple(-2, -1)
    ok = ok and weight_of(-2, -1) == 0
    ok = ok and t_truncate_leq(x, -2) == x
    collapsed = iota_collapse(x)
    ok = ok and t_truncate_leq(collapsed, -1).total_dim() == 0
    ok = ok and t_truncate_geq(collapsed, 0) == collapsed

    rng = random.Random(seed)
    weight_cases = 0
    for _ in range(200):
        g = random_graded_complex(rng, max_g=2, max_pos=2).minimize()
        weights = [weight_of(c, gg) for (c, gg) in g.components()]
        if not weights:
            continue
        positions = list(iota_collapse(g).minimize().dims)
        ok = ok and (max(weights) <= 0) == (max(positions) <= 0)
        ok = ok and (min(weights) >= 0) == (min(positions) >= 0)
        weight_cases += 1

    trunc_cases = 0
    for _ in range(1000):
        c = random_complex(rng, max_pos=3).minimize()
        for m in (-2, -1, 0, 1, 2):
            ok = ok and t_truncate_leq(c, m) == w_truncate_leq(c, m)
            ok = ok and t_truncate_geq(c, m) == w_truncate_geq(c, m)
        trunc_cases += 1

    t_report = check_t_axioms([random_graded_complex(rng, max_g=1, max_pos=2) for _ in range(5)])
    w_report = check_w_axioms([random_graded_complex(rng, max_g=1, max_pos=2) for _ in range(5)])
    ok = ok and t_report["all_pass"] and w_report["all_pass"]
    return CriterionResult(
        7,
        "collapse is weight-exact, fails t-exactness at the witness, and "
        "the two ungraded truncations coincide",
        ok,
        {
            "weight_cases": weight_cases,
            "truncation_cases": trunc_cases,
            "t_axioms": t_report,
            "w_axioms": w_report,
        },
    )


def criterion_8_duality_square(seed: int, cases_per_rank: int = 500) -> CriterionResult:
    ok = True
    counts = {}
    for n in (2, 3):
        fc = formal_category(n)
        rng = random.Random(seed + n)
        failures = 0
        for _ in range(cases_per_rank):
            x = fc.random_complex(rng)
            if not (fc.dsquare_check(x) and fc.square_check(x)):
                failures += 1
        counts[str(n)] = {"cases": cases_per_rank, "failures": failures}
        ok = ok and failures == 0
    return CriterionResult(
        8,
        "the graded and ungraded duality square commutes on the random corpus",
        ok,
        {"ranks": counts},
    )


def criterion_9_dual_homological() -> CriterionResult:
    ok = True
    details = {}
    alg2 = dual_algebra(2)
    details["dim_rank2"] = alg2.dim
    ok = ok and alg2.dim == 5
    euler_ok = {}
    for n in (2, 3):
        alg = dual_algebra(n)
        same = alg.euler_matrix() == alg.inverse_cartan()
        euler_ok[str(n)] = same
        ok = ok and same
    details["euler_equals_inverse_cartan"] = euler_ok
    koszul = {}
    for n in (1, 2, 3):
        report = dual_algebra(n).koszulity_check()
        koszul[str(n)] = report
        ok = ok and report["koszul"]
    details["koszulity"] = koszul
    return CriterionResult(
        9,
        "dual algebra dimension, Euler inversion of the Cartan matrix, "
        "and Koszulity of the Ext grading",
        ok,
        {k: details[k] for k in sorted(details)},
    )


def _seeded_subreport(seed: int) -> str:
    """Serialised results of the seeded criteria; used for the determinism
    check, which reruns them and compares bytes."""
    results = [
        criterion_5_degrading(seed),
        criterion_7_tate_structures(seed),
        criterion_8_duality_square(seed, cases_per_rank=25),
    ]
    payload = [
        {"number": r.number, "name": r.name, "passed": r.passed, "details": r.details}
        for r in results
    ]
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def criterion_10_determinism(seed: int) -> CriterionResult:
    first = _seeded_subreport(seed)
    second = _seeded_subreport(seed)
    ok = first == second
    return CriterionResult(
        10,
        "seeded reruns of the randomised criteria are byte-identical",
        ok,
        {"bytes": len(first), "identical": ok},
    )


def run_battery(seed: int = 42) -> list[CriterionResult]:
    """All acceptance criteria in order."""
    return [
        criterion_1_coinvariant_dimensions(),
        criterion_2_demazure_calculus(),
        criterion_3_bott_samelson_oracle(),
        criterion_4_hom_formula(),
        criterion_5_degrading(seed),
        criterion_6_endomorphism_ring(),
        criterion_7_tate_structures(seed),
        criterion_8_duality_square(seed),
        criterion_9_dual_homological(),
        criterion_10_determinism(seed),
    ]


def battery_report(results) -> dict:
    return {
        "criteria": [
            {
                "number": r.number,
                "name": r.name,
                "passed": r.passed,
                "details": r.details,
            }
            for r in results
        ],
        "passed": sum(1 for r in results if r.passed),
        "total": len(results),
        "all_passed": all(r.passed for r in results),
    }
