"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line.

All comparisons are exact (rational arithmetic), so no tolerances appear
below. Sample counts and seeds are pinned.
"""
import io
import random


from graded_workbench import cli
from graded_workbench import crystalline as C
from graded_workbench import dynsys as D
from graded_workbench import gallery as GAL
from graded_workbench import graded as G
from graded_workbench import skew as S
from graded_workbench.exact import Poly, is_subspace_of, subspace_equal, subspace_intersect
from graded_workbench.groups import direct_product, make_cyclic

SEED = 20240101
IDEAL_SAMPLES = 100
SKEW_SAMPLES = 50
DYN_ELEMENTS = 200
PI_PAIRS = 100
WEYL_BOUND = 4
PRINCIPAL_SAMPLES = 100
SWEEP_GROUPS = {
    "Z2": make_cyclic(2),
    "Z3": make_cyclic(3),
    "Z4": make_cyclic(4),
    "Z2xZ2": direct_product(make_cyclic(2), make_cyclic(2)),
}
# graded gallery entries that are finite-dimensional and strongly graded
FINITE_STRONG = [("m3-z2", None), ("gauss-z2", None), ("laurent-group-ring", 3), ("laurent-group-ring", 4), ("swap-skew", None)]


def _ring(name, n=None):
    doc = GAL.gallery(name, n)
    return cli.build_graded(doc)


def _sweep():
    for gname, grp in SWEEP_GROUPS.items():
        for n in range(1, 6):
            for act in S.enumerate_actions(grp, n):
                spec = S.function_skew_spec(grp, act)
                yield gname, n, spec, S.build(spec)


def test_criterion_1_m3_gallery(criterion):
    r, _ = _ring("m3-z2")
    fails = []
    if G.validate_graded(r):
        fails.append("validate")
    if not G.is_strongly_graded(r).strongly_graded:
        fails.append("strong")
    v1 = G.has_invertible_homogeneous(r, 1)
    if v1.invertible or v1.method != "exact-symbolic" or not v1.determinant.is_zero():
        fails.append("crossed product")
    if G.is_crossed_product(r):
        fails.append("crossed product (all g)")
    cre, zre = G.neutral_commutant(r), G.center_of_neutral(r)
    if not (subspace_equal(cre, zre) and cre.dim == 2):
        fails.append("C_R(R0) = Z(R0), dim 2")
    idx = {lab: (g, r.labels[g].index(lab)) for g in (0, 1) for lab in r.labels[g]}
    pou = G.PartitionOfUnity(1, [(r.basis_vector(*idx[a]), r.basis_vector(*idx[b])) for a, b in GAL.M3_DISPLAYED_PARTITION])
    if not pou.verify(r):
        fails.append("displayed partition of unity")
    gs = G.subalgebra_g_simplicity(r, zre, SEED)
    ideals = gs["nontrivial_ideals"]
    if not (len(ideals) == 2 and not any(i["invariant"] for i in ideals) and gs["permutations"]["1"] == [1, 0]):
        fails.append("two swapped ideals in Z(R0)")
    criterion(1, not fails, "M3 gallery exact checks" + (f"; failed: {fails}" if fails else " (7/7)"))


def test_criterion_2_canonical_action(criterion):
    bad = []
    for name, n in FINITE_STRONG:
        r, _ = _ring(name, n)
        props = G.verify_canonical_action_properties(r)
        if not (props["i_relation"] and props["ii_action"] and props["iii_fixed_is_center"]):
            bad.append((name, n, props["failures"][:2]))
    criterion(2, not bad, f"properties (i)-(iii) exact on {len(FINITE_STRONG)} instances" + (f"; failed: {bad}" if bad else ""))


def test_criterion_3_ideal_intersections(criterion):
    bad = []
    total = 0
    for name, n in FINITE_STRONG:
        r, _ = _ring(name, n)
        e = r.group.identity
        re_ = r.component_subspace(e)
        cre = G.neutral_commutant(r)
        czre = G.commutant_of_center_of_neutral(r)
        commutative = is_subspace_of(re_, cre)
        for x, ideal in G.sample_ideals(r, IDEAL_SAMPLES, SEED):
            total += 1
            if ideal.is_zero():
                bad.append((name, "zero ideal sampled"))
            if subspace_intersect(ideal, czre).is_zero():
                bad.append((name, "misses C_R(Z(R_e))"))
            if commutative and subspace_intersect(ideal, cre).is_zero():
                bad.append((name, "misses C_R(R_e)"))
    criterion(3, not bad, f"{total} sampled ideals, {len(bad)} failures")


def test_criterion_4_skew_equivalence(criterion):
    count = 0
    bad = []
    for gname, n, spec, r in _sweep():
        count += 1
        e = spec.group.identity
        w = S.find_commutation_witness(spec)
        commutant_bigger = not subspace_equal(G.neutral_commutant(r), r.component_subspace(e))
        if (w is not None) != commutant_bigger:
            bad.append((gname, n, "witness/commutant mismatch"))
        if w is not None:
            ideal, avoids = S.witness_ideal(spec, r, w)
            if not avoids or ideal.is_zero():
                bad.append((gname, n, "witness ideal meets R_e"))
        else:
            for x, ideal in G.sample_ideals(r, SKEW_SAMPLES, SEED):
                if subspace_intersect(ideal, r.component_subspace(e)).is_zero():
                    bad.append((gname, n, "sampled ideal misses R_e"))
                    break
    ok = not bad and count == 63
    criterion(4, ok, f"{count} skew instances (|X|<=5), {len(bad)} exceptions" + (f": {bad[:3]}" if bad else ""))


def test_criterion_5_simplicity(criterion):
    count = 0
    bad = []
    for gname, n, spec, r in _sweep():
        count += 1
        rep = S.verdict_simple(spec, r, samples=SKEW_SAMPLES, seed=SEED)
        expected = S.is_action_free(spec) and S.is_action_transitive(spec)
        if rep.simple != expected:
            bad.append((gname, n, "verdict"))
        if rep.simple:
            if rep.sampling["full_closures"] != SKEW_SAMPLES:
                bad.append((gname, n, "closure not full"))
        else:
            wit = rep.witness or {}
            if not wit.get("verified_proper_nonzero"):
                bad.append((gname, n, "no verified proper ideal"))
            # re-check the emitted ideal independently
            basis = [G.GradedElement.from_json(v).vector(r) for v in wit["ideal"]["basis"]]
            ideal = G.span(basis, r.dim)
            if ideal.is_zero() or ideal.is_full() or not G.is_ideal(r, ideal):
                bad.append((gname, n, "emitted ideal fails recheck"))
    ok = not bad and count == 63
    criterion(5, ok, f"{count} skew instances, simple <=> free and transitive, {len(bad)} exceptions" + (f": {bad[:3]}" if bad else ""))


def test_criterion_6_gauss(criterion):
    r, spec = _ring("gauss-z2")
    rep = S.verdict_simple(spec, r, samples=SKEW_SAMPLES, seed=SEED)
    ok = rep.simple is True and rep.g_simple is True and rep.max_commutative is False
    criterion(6, ok, f"rational Gauss ring: simple={rep.simple} g_simple={rep.g_simple} max_commutative={rep.max_commutative} ({rep.evidence_kind})")


def test_criterion_7_weyl(criterion):
    d = C.weyl_instance()
    ax = C.check_axioms(d, WEYL_BOUND)
    tf = C.check_torsion_free(d, WEYL_BOUND)
    alpha_ok = d.alpha(1, -1) == Poly.z() and d.alpha(-1, 1) == Poly.z() - Poly.const(1)
    gs = C.conclude_g_simplicity(d)
    samp = C.principal_ideal_sampling(PRINCIPAL_SAMPLES, SEED)
    rep = C.weyl_report(WEYL_BOUND, PRINCIPAL_SAMPLES, SEED)
    witness_ok = rep["non_simple_witness"] == {"principal": Poly.z().to_json()} and gs["plain_simple"] is False
    parts = {
        "axioms": ax["pass"],
        "inverse_identity": ax["checks"]["inverse_identity"]["pass"],
        "torsion_free": tf["pass"],
        "alpha": alpha_ok,
        "g_simple": gs["g_simple"] is True,
        "principal_non_invariant": samp["invariant_count"] == 0 and samp["samples"] == PRINCIPAL_SAMPLES,
        "witness_z": witness_ok,
    }
    ok = all(parts.values())
    criterion(7, ok, "Weyl suite at bound 4: " + ", ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in parts.items()))


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def _perm_of_cycle_type(parts):
    h = []
    start = 0
    for k in parts:
        h.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple(h)


def test_criterion_8_dynamical_systems(criterion):
    rng = random.Random(SEED)
    bad = []
    systems = 0
    members = 0
    for n in range(1, 8):
        for parts in _partitions(n):
            d = D.FiniteDynSystem(n, _perm_of_cycle_type(parts))
            systems += 1
            single = len(D.orbits(d)) == 1
            if not (D.is_minimal(d) == single == D.is_z_simple_coefficients(d)):
                bad.append((parts, "minimal/orbit/Z-simple"))
            if D.is_top_free(d):
                bad.append((parts, "top-free"))
            for k in range(DYN_ELEMENTS):
                a = D.random_crossed(d, rng)
                if k % 2:
                    # project half the samples into the commutant so both answers occur
                    a = D.CrossedElement(n, {m: tuple(c if x in D.per_n(d, m) else 0 for x, c in enumerate(f))
                                             for m, f in a.parts.items()})
                by_criterion = D.commutant_membership(d, a)
                members += by_criterion
                if by_criterion != D.commutes_with_functions(d, a):
                    bad.append((parts, "commutant criterion"))
                    break
    pis = {}
    for p in (1, 2, 3, 5):
        d = D.FiniteDynSystem(p, tuple((i + 1) % p for i in range(p)))
        v = D.verify_pi(d, PI_PAIRS, SEED)
        pis[p] = v["pass"] and v["u1_power_is_t"] and v["window_dim_covered"] == v["window_dim_expected"]
        if not pis[p]:
            bad.append((p, "pi"))
    ok = not bad and systems == 44
    criterion(8, ok, f"{systems} cycle types (|X|<=7), {systems * DYN_ELEMENTS} commutant samples ({members} members), "
                     f"pi exact for p in {sorted(pis)}; {len(bad)} failures" + (f": {bad[:3]}" if bad else ""))


def _cli_bytes(argv):
    buf = io.StringIO()
    code = cli.run(argv, stdout=buf)
    return code, buf.getvalue()


def test_criterion_9_determinism(criterion, tmp_path):
    single = tmp_path / "single-orbit-4.json"
    single.write_text('{"x_size": 4, "h": [1, 2, 3, 0]}')
    runs = [["gallery", name] for name in GAL.names()]
    runs += [["gallery", "laurent-group-ring", "--n", "5", "--seed", "7"],
             ["dynsys", "--input", str(single), "--verify-pi", "50", "--seed", "3"],
             ["weyl", "--bound", "3", "--samples", "20", "--seed", "11"]]
    mismatched = []
    codes = []
    for argv in runs:
        c1, out1 = _cli_bytes(argv)
        c2, out2 = _cli_bytes(argv)
        codes.append(c1)
        if out1 != out2 or c1 != c2:
            mismatched.append(" ".join(argv))
    ok = not mismatched and all(c == 0 for c in codes)
    criterion(9, ok, f"{len(runs)} reports byte-identical across two runs, all exit 0" + (f"; mismatched: {mismatched}" if mismatched else ""))
