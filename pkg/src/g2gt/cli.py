"""Command line: algebra, lattice, series, relations, rep and verify pipelines.

Exit status 0 when every enabled verification passes, 1 on a verification
failure, 2 on bad flags.  Reports go to stdout; when G2GT_OUT names a
directory they are also written there, together with any figures.
"""
import argparse
import logging
import os
import sys
from pathlib import Path

OUT_ENV = "G2GT_OUT"


def nonneg_int(s):
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {v}")
    return v


def pos_int(s):
    v = nonneg_int(s)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def parser():
    p = argparse.ArgumentParser(prog="g2gt", description="Gelfand-Tsetlin bases for g2")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="group", required=True)

    a = sub.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    a.add_parser("check")

    lt = sub.add_parser("lattice").add_subparsers(dest="cmd", required=True)
    e = lt.add_parser("emit")
    e.add_argument("--flavor", choices=("gl8", "o8", "g2"), default="g2")

    se = sub.add_parser("series").add_subparsers(dest="cmd", required=True)
    b = se.add_parser("build")
    b.add_argument("--gamma", required=True, type=Path)
    from .series import FLAVORS
    b.add_argument("--flavor", required=True, choices=FLAVORS)
    b.add_argument("--s", default="", help="for j_g2: comma list n:k of basis index and power")
    b.add_argument("--sector", default=None, help="alpha,beta: grades 1,7 of degree alpha and 2,6 of degree beta")

    re_ = sub.add_parser("relations").add_subparsers(dest="cmd", required=True)
    c = re_.add_parser("certify")
    c.add_argument("--samples", type=pos_int, default=20)
    c.add_argument("--seed", type=int, default=7)
    c.add_argument("--fault", choices=("omega",), default=None)

    rp = sub.add_parser("rep").add_subparsers(dest="cmd", required=True)
    r = rp.add_parser("build")
    r.add_argument("--alpha", type=nonneg_int, required=True)
    r.add_argument("--beta", type=nonneg_int, required=True)
    r.add_argument("--gt", action="store_true")
    r.add_argument("--casimirs", action="store_true")
    r.add_argument("--matrices", default="", help="comma list of H1,H2,X1..X6,Y1..Y6 or 'all'")
    r.add_argument("--figure", action="store_true", help="write a weight diagram PNG")

    v = sub.add_parser("verify").add_subparsers(dest="cmd", required=True)
    va = v.add_parser("all")
    va.add_argument("--samples", type=pos_int, default=20)
    va.add_argument("--seed", type=int, default=7)
    va.add_argument("--fault", choices=("omega",), default=None)
    va.add_argument("--jobs", type=pos_int, default=1)
    va.add_argument("--only", default="", help="comma list of criterion numbers")
    return p


def out_dir():
    d = os.environ.get(OUT_ENV)
    if not d:
        return None
    path = Path(d)
    path.mkdir(parents=True, exist_ok=True)
    return path


def emit(rep, name):
    text = rep.text()
    sys.stdout.write(text)
    d = out_dir()
    if d is not None:
        (d / f"{name}.txt").write_text(text)
    return 0 if rep.ok else 1


# ---------------------------------------------------------------- commands

def cmd_algebra_check(args):
    from . import algebra as alg
    from .report import Report
    rep = Report("algebra check")
    model = alg.build_split_octonions()
    bad = alg.check_model(model)
    rep.check("octonion_model", not bad, f"{len(bad)} failures")
    g = alg.derivation_algebra(model)
    rep.field("dimension", len(g.basis))
    rep.check("dimension_14", len(g.basis) == 14)
    rep.add("roots (Dynkin labels, simple-root coordinates):")
    for r, M in g.roots:
        rep.add(f"{r} {g.root_in_simple(r)} {'positive' if g.is_upper(M) else 'negative'}", 1)
    rep.add("invariant tensors:")
    for k in range(3, 9):
        T = alg.invariant_tensor(model, k)
        inv = all(not alg.tensor_action(M, T) for M in g.basis)
        rep.add(f"omega_{k}: {len(T)} entries", 1)
        for X in sorted(T):
            rep.add(f"{list(X)} {T[X]}", 2)
        rep.check(f"omega_{k}_invariant", inv)
    return emit(rep, "algebra_check")


def cmd_lattice_emit(args):
    from . import lattice as L
    from .report import Report, fmt_vec
    lat = L.build_lattice(args.flavor)
    rep = Report(f"lattice emit flavor={args.flavor}")
    for kind in ("v", "u", "d"):
        gens = lat.families.get(kind, [])
        rep.add(f"generators {kind}: {len(gens)}")
        for b in gens:
            rep.add(f"{b.tag} sign={b.sign} {fmt_vec(b.vec)}", 1)
    rep.field("rank", lat.rank)
    rep.field("k1 k2 k3", " ".join(str(k) for k in lat.k))
    rep.add("basis:")
    for n, b in enumerate(lat.basis):
        rep.add(f"{n} {b.kind} {b.tag}", 1)
    rep.add("r-vectors:")
    for n, r in enumerate(lat.r_basis):
        rep.add(f"{n} {fmt_vec(r)}", 1)
    rep.add("hnf:")
    for row in lat.ech.hnf():
        rep.add(" ".join(f"{k}:{c}" for k, c in row), 1)
    rep.field("conserved grade blocks", lat.conserved)
    rep.field("broken grade blocks", {k: (b.kind, b.tag) for k, b in sorted(lat.broken.items())})
    same, _ = lat.hnf_check()
    rep.add("verification:")
    rep.check("hnf_basis_equals_generators", same)
    rep.check("rank_is_k_sum", sum(lat.k) == lat.rank)
    return emit(rep, f"lattice_{args.flavor}")


def read_gamma(path):
    """Lines 'i1,i2,...: c'; blank lines and lines starting with # ignored."""
    from . import lattice as L
    from .indexsets import canonicalize
    pairs = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        left, right = line.split(":")
        idx = tuple(int(x) for x in left.replace("[", "").replace("]", "").split(","))
        key, s = canonicalize(idx)
        if not s:
            raise ValueError(f"repeated index in {left}")
        pairs.append((key, int(right)))
    return L.vec(pairs)


def cmd_series_build(args):
    from . import lattice as L
    from . import series as S
    from .report import Report, fmt_vec
    try:
        gamma = read_gamma(args.gamma)
        s = {}
        for part in filter(None, args.s.split(",")):
            n, k = part.split(":")
            s[int(n)] = int(k)
        sector = None
        if args.sector:
            a, b = (int(x) for x in args.sector.split(","))
            sector = L.gl8_sector(a, b) if args.flavor.endswith("gl8") else L.irrep_sector(a, b)
    except (OSError, ValueError, KeyError) as e:
        print(f"g2gt: error: {e}", file=sys.stderr)
        return 2
    rep = Report(f"series build flavor={args.flavor}")
    rep.field("gamma", fmt_vec(gamma))
    try:
        p = S.build(gamma, args.flavor, s=s, sector=sector)
    except S.NonTermination as e:
        rep.add("verification:")
        rep.check("termination", False, str(e))
        return emit(rep, f"series_{args.flavor}")
    rep.field("terms", len(p))
    rep.add("polynomial:")
    rep.poly(p, 1)
    rep.add("verification:")
    rep.check("computed", True)
    return emit(rep, f"series_{args.flavor}")


def cmd_relations_certify(args):
    from . import relations as R
    from .report import Report
    from .verify import corrupted_omegas
    omegas = corrupted_omegas() if args.fault == "omega" else None
    rep = Report(f"relations certify samples={args.samples} seed={args.seed} fault={args.fault or 'none'}")
    table, (ctrl, violated) = R.certify(args.samples, args.seed, omegas=omegas)
    for kind in sorted(table):
        n, fails = table[kind]
        rep.add(f"{kind}: {n} relations, {len(fails)} failing")
        for label, e in fails:
            rep.add(f"counterexample {label} sample {e}", 1)
    rep.add(f"o8 control: {len(ctrl)} root elements, {violated} specific relations violated")
    rep.add("verification:")
    for kind in sorted(table):
        rep.check(f"{kind}_vanish", not table[kind][1])
    rep.check("o8_control_detected", violated > 0)
    return emit(rep, "relations_certify")


def g2_names():
    from . import algebra as alg
    _, g = alg.default_algebra()
    names = {"H1": g.basis[0], "H2": g.basis[1]}
    for n, (_, M) in enumerate(g.positive_roots()):
        names[f"X{n + 1}"] = M
    for n, (_, M) in enumerate(g.negative_roots()):
        names[f"Y{n + 1}"] = M
    return names


def cmd_rep_build(args):
    from . import linalg as la
    from . import poly as P
    from . import representation as Rp
    from .report import Report, fmt_vec
    names = g2_names()
    wanted = [n for n in args.matrices.split(",") if n]
    if wanted == ["all"]:
        wanted = list(names)
    unknown = [n for n in wanted if n not in names]
    if unknown:
        print(f"g2gt: error: unknown generator names {unknown}", file=sys.stderr)
        return 2
    a, b_ = args.alpha, args.beta
    rep = Report(f"rep build alpha={a} beta={b_}")
    dim = Rp.weyl_dimension(a, b_)
    rep.field("weyl dimension", dim)
    b = Rp.build_irrep(a, b_)
    rep.field("literal diagrams", len(b.literal_diagrams))
    for d in b.literal_diagrams:
        rep.add(fmt_vec(d.gamma), 1)
    rep.field("basis size", len(b.basis))
    rep.field("rejected candidates", b.skipped)
    rep.add("basis:")
    for n, (d, f) in enumerate(zip(b.diagrams, b.basis)):
        rep.add(f"basis {n} from gl8 diagram {fmt_vec(d)}", 1)
        rep.poly(f, 2)
    rep.matrix("gram", b.gram)
    for name in wanted:
        rep.matrix(f"matrix {name}", Rp.generator_matrix(names[name], b))
    if args.gt:
        Rp.gt_basis(b)
        rep.add("gt basis:")
        for n, f in enumerate(b.gt):
            rep.add(f"gt {n} weight {Rp.weight_of(f)}", 1)
            rep.poly(f, 2)
        rep.add("eigen table:")
        for row in b.eigen_table:
            vals = " ".join(f"{k}={P.fmt_q(row[k]) if row[k] is not None else 'none'}"
                            for k in ("C2_sl3", "C3_sl3", "C2_g2"))
            rep.add(f"gt {row['index']} {vals}", 1)
    cas = {}
    if args.casimirs:
        for w in ("C2_g2", "C6_g2", "C2_sl3", "C3_sl3"):
            cas[w] = Rp.casimir_matrix(w, b)
        rep.add("casimirs:")
        for w, M in cas.items():
            s = Rp.scalar_of(M)
            rep.field(w, f"scalar {P.fmt_q(s)}" if s is not None else "not scalar", 1)
        rep.field("quadratic form oracle", P.fmt_q(Rp.casimir_oracle(a, b_)), 1)
    rep.add("verification:")
    rep.check("literal_diagram_count", len(b.literal_diagrams) == dim,
              f"{len(b.literal_diagrams)} vs {dim}")
    rep.check("basis_count", len(b.basis) == dim)
    rep.check("highest_vector", not Rp.check_highest_vector(a, b_) and Rp.hv_in_span(b))
    rep.check("gram_nonsingular", la.det(b.gram) != 0 if b.gram else True)
    if args.gt:
        n = len(b.gt)
        rep.check("gt_orthogonal", all(P.pairing(b.gt[i], b.gt[j]) == 0
                                       for i in range(n) for j in range(i)))
        rep.check("gt_eigenvectors", all(None not in (r["C2_sl3"], r["C3_sl3"], r["C2_g2"])
                                         for r in b.eigen_table))
        rep.check("sl3_blocks", Rp.eigen_blocks(b) == Rp.sl3_branching(b),
                  f"{Rp.eigen_blocks(b)} vs {Rp.sl3_branching(b)}")
    if args.casimirs and dim > 1:
        rep.check("c2_scalar", Rp.scalar_of(cas["C2_g2"]) is not None)
    if args.figure:
        from . import plotting
        if b.gt is None:
            Rp.gt_basis(b)
        groups = [(P.fmt_q(r["C2_sl3"]) if r["C2_sl3"] is not None else "?") for r in b.eigen_table]
        path = (out_dir() or Path(".")) / f"weights_{a}_{b_}.png"
        plotting.weight_diagram(Rp.weights_of_build(b), groups, f"V({a},{b_})", path)
        rep.field("figure", path.name)
    return emit(rep, f"rep_{a}_{b_}")


def cmd_verify_all(args):
    from . import verify as V
    from .report import Report
    try:
        only = {int(x) for x in args.only.split(",") if x}
    except ValueError:
        print("g2gt: error: --only takes criterion numbers", file=sys.stderr)
        return 2
    ctx = V.Context(args.samples, args.seed, args.fault, args.jobs)
    rep = Report("verify all")
    rep.field("config", f"samples={args.samples} seed={args.seed} fault={args.fault or 'none'}")
    results = V.run_all(ctx, only or None)
    for c in results:
        rep.add(f"criterion {c.number} {c.name}: {c.status}")
        for w in c.witness:
            rep.add(w, 1)
    rep.add("table:")
    for c in results:
        rep.check(f"criterion_{c.number}", c.status == "PASS", c.name)
    npass = sum(c.status == "PASS" for c in results)
    rep.field("summary", f"{npass} passed, {len(results) - npass} failed")
    return emit(rep, "verify_all")


COMMANDS = {
    ("algebra", "check"): cmd_algebra_check,
    ("lattice", "emit"): cmd_lattice_emit,
    ("series", "build"): cmd_series_build,
    ("relations", "certify"): cmd_relations_certify,
    ("rep", "build"): cmd_rep_build,
    ("verify", "all"): cmd_verify_all,
}


def main(argv=None):
    args = parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    return COMMANDS[(args.group, args.cmd)](args)


if __name__ == "__main__":
    sys.exit(main())
