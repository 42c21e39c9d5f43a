"""Instance checks of the structural statements about (strongly) n-torsion clean rings.

Every check derives its own hypothesis from the ring, so ``run_suite`` can be
pointed at any finite ring. A failing check always carries a witness made of
element encodings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import sympy

from . import analysis as A
from .rings import FieldRing, ProductRing, RingElem
from .torsion import torsion_clean_index

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class CheckResult:
    check_id: str
    ring: str
    status: str
    witness: dict | None = None
    detail: str = ""

    def to_dict(self):
        return {"check": self.check_id, "ring": self.ring, "status": self.status,
                "witness": self.witness, "detail": self.detail}


def _lit(R, x):
    x = int(x)
    return {"enc": x, "literal": RingElem(R, x).literal()}


def _strong_index(R):
    return torsion_clean_index(R, strong=True).index


def _plain_index(R):
    return torsion_clean_index(R, strong=False).index


def _identity_violations(R, n):
    a = R.carrier()
    one = R.one_enc
    lhs = R.mul(R.sub(R.power(a, n), one), R.sub(R.power(R.sub(a, one), n), one))
    return np.flatnonzero(lhs != 0)


def check_identity_eq(R, n):
    bad = _identity_violations(R, n)
    if len(bad):
        return CheckResult("identity-eq", R.spec, FAIL, {"a": _lit(R, bad[0]), "n": n},
                           f"(a^{n}-1)((a-1)^{n}-1) != 0 for {len(bad)} elements")
    return CheckResult("identity-eq", R.spec, PASS, None, f"identity holds for all {R.size} elements at n={n}")


def check_unique_clean_on_radical_units(R):
    J = A.jacobson_encs(R)
    x = R.add(R.one_enc, J)
    umask = A.unit_mask(R)
    counts = np.zeros(len(J), dtype=np.int64)
    extra = {}
    for e in A.idempotent_encs(R):
        ok = umask[R.sub(x, int(e))]
        counts += ok
        if e != 0:
            for i in np.flatnonzero(ok):
                extra.setdefault(int(i), int(e))
    bad = np.flatnonzero(counts != 1)
    if len(bad):
        i = int(bad[0])
        return CheckResult("unique-clean-radical", R.spec, FAIL,
                           {"j": _lit(R, J[i]), "e": _lit(R, extra.get(i, 0))},
                           f"1+j has {counts[i]} clean decompositions")
    return CheckResult("unique-clean-radical", R.spec, PASS, None,
                       f"each of the {len(J)} units 1+j has the single decomposition 0+(1+j)")


def check_lemma_reduced(R, n):
    if n is None or n % 2 == 0:
        return CheckResult("lemma-reduced", R.spec, NA, None, f"n={n} is not odd")
    if len(_identity_violations(R, n)):
        return CheckResult("lemma-reduced", R.spec, NA, None, f"identity fails at n={n}")
    a = R.carrier()
    sq0 = np.flatnonzero((R.mul(a, a) == 0) & (a != 0))
    J = A.jacobson_encs(R)
    if len(sq0):
        return CheckResult("lemma-reduced", R.spec, FAIL, {"x": _lit(R, sq0[0])}, "nonzero x with x^2 = 0")
    if len(J) > 1:
        return CheckResult("lemma-reduced", R.spec, FAIL, {"j": _lit(R, J[1])}, "J(R) != 0")
    if R.char != 2:
        return CheckResult("lemma-reduced", R.spec, FAIL, {"one": _lit(R, R.one_enc)}, f"char = {R.char}")
    return CheckResult("lemma-reduced", R.spec, PASS, None, f"char 2, reduced, J = 0 at odd n={n}")


def check_theorem_pi(R):
    n = _strong_index(R)
    if n is None:
        return CheckResult("thm-pi", R.spec, NA, None, "no strong decomposition")
    J = A.jacobson_encs(R)
    k = A.jacobson_nil_index(R)
    c = R.char
    attained = J[R.power(J, k - 1) != 0] if k > 1 else J[:1]
    if not k < c**n:
        return CheckResult("thm-pi", R.spec, FAIL, {"j": _lit(R, attained[0])}, f"nil index {k} >= {c}^{n}")
    if sympy.isprime(c):  # an algebra over its prime field
        if k > n:
            return CheckResult("thm-pi", R.spec, FAIL, {"j": _lit(R, attained[0])}, f"nil index {k} > n={n}")
        w = A.abelian_witness(R)
        if w is not None and n % c != 0:
            return CheckResult("thm-pi", R.spec, FAIL, {"e": _lit(R, w[0].enc), "r": _lit(R, w[1].enc)},
                               f"non-central idempotent while char {c} does not divide n={n}")
    return CheckResult("thm-pi", R.spec, PASS, None, f"nil index of J is {k}, char {c}, strong n={n}")


def _coset_labels(R):
    """Least element of each coset x + J(R)."""
    key = "coset_labels"
    if key not in R._memo:
        a = R.carrier()
        lab = a.copy()
        for j in A.jacobson_encs(R)[1:]:
            lab = np.minimum(lab, R.add(a, int(j)))
        R._memo[key] = lab
    return R._memo[key]


def _quotient_facts(R):
    """Idempotent lifting and quotient structure modulo J(R), on coset representatives."""
    Jm = A.jacobson_mask(R)
    lab = _coset_labels(R)
    reps = np.unique(lab)
    lifts = reps[Jm[R.sub(R.mul(reps, reps), reps)]]  # a with a^2 - a in J
    counts = np.bincount(lab[A.idempotent_encs(R)], minlength=R.size)[lifts]
    gens = np.array(R.additive_generators(), dtype=np.int64)
    comm = lambda x, y: Jm[R.sub(R.mul(x, y), R.mul(y, x))]
    quotient_abelian = all(comm(lifts, int(b)).all() for b in gens)
    quotient_commutative = bool(comm(gens[:, None], gens[None, :]).all())
    nonJ = reps[~Jm[reps]]
    quotient_reduced = not Jm[R.mul(nonJ, nonJ)].any()
    return {
        "lifts": lifts,
        "counts": counts,
        "unique": bool(np.all(counts == 1)),
        "quotient_abelian": bool(quotient_abelian),
        "quotient_commutative": quotient_commutative,
        "quotient_reduced": bool(quotient_reduced),
        "quotient_boolean": bool(Jm[R.sub(R.mul(reps, reps), reps)].all()),
    }


def check_idempotent_lifting(R):
    f = _quotient_facts(R)
    lhs = A.is_abelian(R)
    rhs = f["unique"] and f["quotient_abelian"]
    detail = f"abelian={lhs}, unique lifting={f['unique']}, R/J abelian={f['quotient_abelian']}"
    if lhs != rhs:
        bad = f["lifts"][f["counts"] != 1]
        witness = {"a": _lit(R, bad[0])} if len(bad) else {"abelian_witness": [w.enc for w in A.abelian_witness(R) or []]}
        return CheckResult("idempotent-lifting", R.spec, FAIL, witness, detail)
    return CheckResult("idempotent-lifting", R.spec, PASS, None, detail)


def check_theorem_ab(R):
    f = _quotient_facts(R)
    lhs = A.is_abelian(R)
    A.jacobson_nil_index(R)  # raises NotNil if J were not nil
    rhs = f["unique"] and f["quotient_commutative"] and f["quotient_reduced"]
    detail = (f"abelian={lhs}; J nil of index {A.jacobson_nil_index(R)}, unique lifting={f['unique']}, "
              f"R/J commutative={f['quotient_commutative']}, R/J reduced={f['quotient_reduced']}")
    if lhs != rhs:
        w = A.abelian_witness(R)
        return CheckResult("thm-ab", R.spec, FAIL, {"abelian_witness": [x.enc for x in w] if w else None}, detail)
    return CheckResult("thm-ab", R.spec, PASS, None, detail)


def check_theorem_stn(R):
    return CheckResult("thm-stn", R.spec, NA, None,
                       "finite rings are strongly clean with a unit group of finite exponent; "
                       "the equivalence only has content for infinite rings")


def check_prop_fields(specs):
    specs = list(specs)
    R = FieldRing(specs[0]) if len(specs) == 1 else ProductRing([FieldRing(F) for F in specs])
    expected = math.lcm(*(F.q - 1 for F in specs))
    got = (_plain_index(R), _strong_index(R))
    detail = f"plain={got[0]}, strong={got[1]}, LCM(|F_i|-1)={expected}"
    if got != (expected, expected):
        return CheckResult("prop-fields", R.spec, FAIL, {"indices": list(got), "expected": expected}, detail)
    return CheckResult("prop-fields", R.spec, PASS, None, detail)


def _field_factors(R):
    if isinstance(R, FieldRing):
        return [R.F]
    if isinstance(R, ProductRing) and all(isinstance(f, FieldRing) for f in R.factors):
        return [f.F for f in R.factors]
    return None


def _field_corner_split(R):
    """(all corners fields of char 2, corner sizes, commutative) via primitive central idempotents."""
    prims = A.primitive_central_idempotents(R)
    sizes = [len(A.corner(R, e.enc)) for e in prims]
    fields = all(A.corner_is_field(R, e.enc) and int(R.add(e.enc, e.enc)) == 0 for e in prims)
    total = 0
    for e in prims:
        total = int(R.add(total, e.enc))
    splits = total == R.one_enc and math.prod(sizes) == R.size
    return fields and splits and A.is_commutative(R), sizes


def check_theorem_comm(R):
    n = _strong_index(R)
    orders = A.unit_orders(R)[A.unit_encs(R)]
    all_odd = bool(np.all(orders % 2 == 1))
    if not ((n is not None and n % 2 == 1) or all_odd):
        even = A.unit_encs(R)[orders % 2 == 0]
        return CheckResult("thm-comm", R.spec, NA, {"even_order_unit": _lit(R, even[0])},
                           f"strong index {n} even and a unit of even order exists")
    target = n if n is not None else A.unit_group_exponent(R)
    c1 = n is not None and n % 2 == 1
    c2 = all_odd and int(orders.max()) <= target and bool(np.any(orders == target))
    fields, sizes = _field_corner_split(R)
    c3 = fields and math.lcm(*(s - 1 for s in sizes)) == target
    detail = f"n={n}; odd strong index={c1}; odd bounded orders with one of order n={c2}; char-2 field split {sizes}={c3}"
    if not (c1 == c2 == c3):
        return CheckResult("thm-comm", R.spec, FAIL, {"corner_sizes": sizes}, detail)
    return CheckResult("thm-comm", R.spec, PASS, None, detail)


def check_lemma_L(R):
    m = R.char
    s = A.jacobson_nil_index(R) - 1
    Jm = A.jacobson_mask(R)
    E = A.unit_group_exponent(R)
    us = A.unit_encs(R)
    pw = us.copy()
    checked = 0
    for t in range(1, E + 1):
        hit = Jm[R.sub(pw, R.one_enc)]
        if hit.any():
            checked += int(hit.sum())
            good = R.power(pw[hit], m**s) == R.one_enc
            if not good.all():
                u = us[hit][~good][0]
                return CheckResult("lemma-L", R.spec, FAIL, {"u": _lit(R, u), "t": t},
                                   f"u^{t}-1 in J but u^({t}*{m}^{s}) != 1")
        pw = R.mul(pw, us)
    return CheckResult("lemma-L", R.spec, PASS, None, f"m={m}, s={s}: {checked} (u, t) pairs with u^t-1 in J checked")


def check_corollary_uu(R):
    f = _quotient_facts(R)
    if not f["quotient_boolean"]:
        return CheckResult("cor-uu", R.spec, NA, None, "R/J(R) is not boolean")
    E = A.unit_group_exponent(R)
    n = _plain_index(R)
    detail = f"exp(U)={E}, plain index={n}"
    if E & (E - 1) or n != E:
        return CheckResult("cor-uu", R.spec, FAIL, {"exponent": E, "index": n}, detail)
    return CheckResult("cor-uu", R.spec, PASS, None, detail)


def check_prop_units(R):
    if not A.units_equal_one_plus_J(R):
        return CheckResult("prop-units", R.spec, NA, None, "U(R) != 1 + J(R)")
    E = A.unit_group_exponent(R)
    got = (_plain_index(R), _strong_index(R))
    boolean = _quotient_facts(R)["quotient_boolean"]
    detail = f"plain={got[0]}, strong={got[1]}, exp(U)={E}, R/J boolean={boolean}"
    if got != (E, E) or not boolean:
        return CheckResult("prop-units", R.spec, FAIL, {"indices": list(got), "exponent": E}, detail)
    return CheckResult("prop-units", R.spec, PASS, None, detail)


def check_lemma_descrip(R):
    E = A.unit_group_exponent(R)
    reps = [torsion_clean_index(R, strong=s) for s in (False, True)]
    for rep in reps:
        if rep.index is None:
            continue
        lcm = math.lcm(*(o for _, o in rep.witnesses)) if rep.witnesses else 1
        if E % rep.index or lcm != rep.index:
            return CheckResult("lemma-descrip", R.spec, FAIL,
                               {"mode": rep.mode, "index": rep.index, "exponent": E, "witnesses": rep.witnesses},
                               f"{rep.mode} index {rep.index} vs exp(U)={E}, witness LCM {lcm}")
    n = reps[0].index
    if A.is_commutative(R) and not np.any(A.unit_orders(R) == n):
        return CheckResult("lemma-descrip", R.spec, FAIL, {"index": n}, f"commutative but no unit of order {n}")
    return CheckResult("lemma-descrip", R.spec, PASS, None,
                       f"plain={reps[0].index}, strong={reps[1].index} divide exp(U)={E}")


def _suite_prop_fields(R):
    specs = _field_factors(R)
    if specs is None:
        return CheckResult("prop-fields", R.spec, NA, None, "not a product of fields")
    return check_prop_fields(specs)


def _suite_identity(R):
    n = _strong_index(R)
    if n is None:
        return CheckResult("identity-eq", R.spec, NA, None, "no strong decomposition")
    return check_identity_eq(R, n)


CHECKS = {
    "lemma-descrip": check_lemma_descrip,
    "identity-eq": _suite_identity,
    "unique-clean-radical": check_unique_clean_on_radical_units,
    "lemma-reduced": lambda R: check_lemma_reduced(R, _strong_index(R)),
    "thm-pi": check_theorem_pi,
    "idempotent-lifting": check_idempotent_lifting,
    "prop-units": check_prop_units,
    "cor-uu": check_corollary_uu,
    "lemma-L": check_lemma_L,
    "thm-ab": check_theorem_ab,
    "thm-stn": check_theorem_stn,
    "prop-fields": _suite_prop_fields,
    "thm-comm": check_theorem_comm,
}


def run_suite(R, only=None):
    ids = list(CHECKS) if only is None else [only]
    unknown = [i for i in ids if i not in CHECKS]
    if unknown:
        raise KeyError(f"unknown check id {unknown[0]!r}; known: {', '.join(CHECKS)}")
    return [CHECKS[i](R) for i in ids]
