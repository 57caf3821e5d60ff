"""Command-line front end.

Exit codes: 0 success, 1 negative mathematical verdict, 2 input error.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import intlin, io, ratlin
from .avhs import (ConnectionPresentation, GWData, amodel_presentation, associativity_defect,
                   calabi_yau_diamond, flatness_defect, griffiths_defect, phi_problems,
                   residue, topological_mirror_test, vhs_isomorphism_defect)
from .errors import InputError, InvariantError, MirrorLatError
from .lattice import (e8, hyperbolic_plane, induced_gram, isotropic_to_standard, k3_lattice,
                      orthogonal_complement, quotient_basis, quotient_by_isotropic)
from .mukai import (ChernInput, MukaiLattice, euler_pairing, mirror_hodge_structure,
                    mirror_map_vector, moduli_dimension, mukai_vector)
from .series import TruncatedSeries, smat_identity
from .tduality import PureCycle, annihilator, fiber_lattice, leray_filtration_check, t_dual_cycle
from .weights import jordan_type, weight_filtration, weight_filtration_defects

PROG = "mirrorlat"

BUILTIN_H2 = {
    "U": hyperbolic_plane,
    "E8": e8,
    "K3": k3_lattice,
}


class Session:
    """Per-run state: the report under construction and loaded inputs."""

    def __init__(self, argv):
        self.report = io.RunReport([PROG] + list(argv))

    def load(self, path, kind=None):
        text, raw = io.read_text(path)
        self.report.digests[path] = io.digest(raw)
        return io.loads(text, path)

    def value(self, path, kind=None):
        return io.parse_value(self.load(path), kind)


class Verdict(Exception):
    """Raised by a command to signal a negative mathematical answer."""


# -- argument helpers ---------------------------------------------------------

def parse_int_vector(text, names=None):
    """'1,0,-2' -> [1, 0, -2]; names from --set expand in place."""
    names = names or {}
    out = []
    for tok in _split_top(text):
        tok = tok.strip()
        if tok in names:
            out.extend(names[tok])
        elif tok.startswith("["):
            out.extend(parse_int_vector(tok[1:-1], names))
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise InputError(f"cannot read {tok!r} in vector {text!r}") from None
    return out


def _split_top(text):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if depth:
        raise InputError(f"unbalanced brackets in {text!r}")
    parts.append(cur)
    return [p for p in parts if p.strip()] if text.strip() else []


def parse_matrix(text):
    """'1,2;3,4' -> [[1,2],[3,4]]."""
    return [parse_int_vector(row) for row in text.split(";") if row.strip()]


def parse_names(assignments):
    names = {}
    for a in assignments or []:
        if "=" not in a:
            raise InputError(f"--set expects name=v1,v2,..., got {a!r}")
        key, val = a.split("=", 1)
        names[key.strip()] = parse_int_vector(val)
    return names


def parse_mukai_arg(L, text, names):
    """Mukai vector from 'a,beta,c' (beta a --set name or bracket list) or full coordinates."""
    toks = [t.strip() for t in _split_top(text)]
    m = L.h2.rank
    if len(toks) == 3 and (toks[1] in names or toks[1].startswith("[")):
        beta = parse_int_vector(toks[1], names)
        if len(beta) != m:
            raise InputError(f"beta has {len(beta)} entries, H^2 has rank {m}")
        return L.vector([int(toks[0])] + beta + [int(toks[2])])
    coords = parse_int_vector(text, names)
    if len(coords) != m + 2:
        raise InputError(f"Mukai vector needs {m + 2} coordinates, got {len(coords)}")
    return L.vector(coords)


# -- lattice ------------------------------------------------------------------

def _lattice(sess, args):
    if args.input:
        return sess.value(args.input, "lattice")
    name = args.builtin or "U"
    if name.startswith("mukai-"):
        h2 = name[len("mukai-"):]
        if h2 not in BUILTIN_H2:
            raise InputError(f"unknown builtin lattice {name!r}")
        return MukaiLattice(BUILTIN_H2[h2]()).lattice
    if name not in BUILTIN_H2:
        raise InputError(f"unknown builtin lattice {name!r}")
    return BUILTIN_H2[name]()


def cmd_lattice_pair(sess, args):
    L = _lattice(sess, args)
    u, v = L.check(parse_int_vector(args.u)), L.check(parse_int_vector(args.v))
    R = sess.report
    R.results["pairing"] = L.pair(u, v)
    R.check("symmetric", L.pair(u, v) == L.pair(v, u))


def cmd_lattice_snf(sess, args):
    if args.matrix:
        M = parse_matrix(args.matrix)
        ncols = len(M[0]) if M else 0
    else:
        L = _lattice(sess, args)
        M = [list(r) for r in L.gram]
        ncols = L.rank
    U, D, V = intlin.smith_normal_form(M, ncols)
    R = sess.report
    R.results.update({"U": U, "D": D, "V": V,
                      "invariant_factors": intlin.invariant_factors(M, ncols)})
    R.check("D = U M V", intlin.matmul(intlin.matmul(U, M), V) == D if M else True)
    diag = [D[i][i] for i in range(min(len(D), ncols)) if D[i][i]]
    R.check("divisibility chain", all(b % a == 0 for a, b in zip(diag, diag[1:])))


def cmd_lattice_complement(sess, args):
    L = _lattice(sess, args)
    v = L.check(parse_int_vector(args.v))
    C = orthogonal_complement(L, v)
    R = sess.report
    R.results["basis"] = [list(b) for b in C.canonical()]
    R.results["rank"] = C.rank
    R.check("orthogonal", all(L.pair(b, v) == 0 for b in C.basis))
    R.check("saturated", C.is_saturated())


def cmd_lattice_quotient(sess, args):
    L = _lattice(sess, args)
    v = L.check(parse_int_vector(args.v))
    lifts = quotient_basis(L, v)
    Q = quotient_by_isotropic(L, v)
    R = sess.report
    R.results["lifts"] = [list(b) for b in lifts]
    R.results["quotient"] = Q
    R.check("lifts orthogonal to v", all(L.pair(b, v) == 0 for b in lifts))
    R.check("induced gram", induced_gram(L, lifts) == Q.gram)


def cmd_lattice_standardize(sess, args):
    L = _lattice(sess, args)
    v = L.check(parse_int_vector(args.v))
    t = L.check(parse_int_vector(args.t))
    tp = L.check(parse_int_vector(args.t_partner)) if args.t_partner else None
    g = isotropic_to_standard(L, v, t, t_partner=tp)
    R = sess.report
    R.results["isometry"] = [list(r) for r in g.matrix]
    R.check("g(v) = t", g(v) == t)
    R.check("g^T G g = G", g.is_isometry())


# -- mukai --------------------------------------------------------------------

def _mukai_lattice(sess, args):
    name = args.h2
    if name in BUILTIN_H2:
        return MukaiLattice(BUILTIN_H2[name]())
    return MukaiLattice(sess.value(name, "lattice"))


def _mukai_v(sess, args, L, names, which="v"):
    text = getattr(args, which)
    if text is None:
        raise InputError(f"--{which} is required")
    return parse_mukai_arg(L, text, names)


def _vec_json(v):
    return {"alpha": v.alpha, "beta": list(v.beta), "gamma": v.gamma}


def cmd_mukai_vec(sess, args):
    L = _mukai_lattice(sess, args)
    names = parse_names(args.set)
    c1 = parse_int_vector(args.c1, names) if args.c1 else [0] * L.h2.rank
    if len(c1) != L.h2.rank:
        raise InputError(f"c1 has {len(c1)} entries, H^2 has rank {L.h2.rank}")
    v = mukai_vector(ChernInput(args.rank, tuple(c1), args.c2), L)
    R = sess.report
    R.results["mukai_vector"] = _vec_json(v)
    R.check("v.v even", L.pair(v, v) % 2 == 0)


def cmd_mukai_chi(sess, args):
    L = _mukai_lattice(sess, args)
    names = parse_names(args.set)
    v = _mukai_v(sess, args, L, names)
    w = _mukai_v(sess, args, L, names, "w") if args.w else v
    R = sess.report
    R.results["chi"] = euler_pairing(L, v, w)
    R.check("chi = -<v,w>", R.results["chi"] == -L.pair(v, w))


def cmd_mukai_dim(sess, args):
    L = _mukai_lattice(sess, args)
    v = _mukai_v(sess, args, L, parse_names(args.set))
    d = moduli_dimension(L, v)
    R = sess.report
    R.results["dimension"] = d
    R.check("dimension even", d % 2 == 0)


def cmd_mukai_mirror(sess, args):
    L = _mukai_lattice(sess, args)
    v = _mukai_v(sess, args, L, parse_names(args.set))
    g = mirror_map_vector(L, v)
    R = sess.report
    R.results["isometry"] = [list(r) for r in g.matrix]
    R.results["image"] = _vec_json(L.vector(g(L.coords(v))))
    R.check("g(v) = (0,0,1)", g(L.coords(v)) == L.coords(L.point_class()))
    R.check("g^T G g = G", g.is_isometry())


def cmd_mukai_hodge(sess, args):
    L = _mukai_lattice(sess, args)
    v = _mukai_v(sess, args, L, parse_names(args.set))
    if not args.period:
        raise InputError("--period is required")
    omega = sess.value(args.period, "period")
    Q, image = mirror_hodge_structure(L, omega, v)
    R = sess.report
    R.results["quotient"] = Q
    R.results["period"] = image
    rr = ratlin_pair(Q, image.re, image.re) - ratlin_pair(Q, image.im, image.im)
    R.check("Omega'.Omega' = 0", rr == 0 and ratlin_pair(Q, image.re, image.im) == 0)
    R.check("Omega'.conj(Omega') > 0",
            ratlin_pair(Q, image.re, image.re) + ratlin_pair(Q, image.im, image.im) > 0)


def ratlin_pair(L, u, v):
    return sum((a * b for a, b in zip(u, ratlin.matvec(L.gram, v))), Fraction(0))


# -- qcoh ---------------------------------------------------------------------

def _qcoh_doc(sess, args):
    if not args.input:
        raise InputError("--in is required")
    doc = sess.load(args.input)
    return doc, io.parse_value(doc)


def _degree(args, doc, default=2):
    if args.degree is not None:
        D = args.degree
    elif isinstance(doc, dict) and "cutoff" in doc:
        D = io._int(doc["cutoff"], "cutoff")
    else:
        D = default
    if D < 0:
        raise InputError("--degree must be nonnegative")
    return D


def _gw(sess, args):
    doc, G = _qcoh_doc(sess, args)
    if not isinstance(G, GWData):
        raise InputError("this command needs a GW data file")
    return doc, G


def _require_valid_gw(G):
    problems = phi_problems(G)
    if problems:
        raise InvariantError("valid GW data", problems[0])


def _presentation(sess, args):
    doc, X = _qcoh_doc(sess, args)
    D = _degree(args, doc)
    if isinstance(X, GWData):
        _require_valid_gw(X)
        return amodel_presentation(X, D), D
    if isinstance(X, ConnectionPresentation):
        return X, min(D, X.cutoff)
    raise InputError("expected GW data or a connection presentation")


def _defect_json(d):
    return {k: (list(v) if isinstance(v, tuple) else v) for k, v in d.items()}


def cmd_qcoh_validate(sess, args):
    _, G = _gw(sess, args)
    problems = phi_problems(G)
    R = sess.report
    R.results["valid"] = not problems
    if problems:
        R.results["problems"] = problems
    if not R.check("phi valid", not problems):
        raise Verdict


def cmd_qcoh_flat(sess, args):
    doc, G = _gw(sess, args)
    _require_valid_gw(G)
    D = _degree(args, doc)
    d = flatness_defect(amodel_presentation(G, D))
    R = sess.report
    R.results["degree"] = D
    R.results["flat"] = d is None
    if d is not None:
        R.results["first_failure"] = _defect_json(d)
        raise Verdict


def cmd_qcoh_assoc(sess, args):
    doc, G = _gw(sess, args)
    _require_valid_gw(G)
    D = _degree(args, doc)
    d = associativity_defect(G, D)
    R = sess.report
    R.results["degree"] = D
    R.results["associative"] = d is None
    if d is not None:
        R.results["first_failure"] = _defect_json(d)
        raise Verdict


def cmd_qcoh_residues(sess, args):
    doc, G = _gw(sess, args)
    _require_valid_gw(G)
    D = _degree(args, doc)
    P = amodel_presentation(G, D)
    R = sess.report
    R.results["residues"] = [residue(G, j) for j in range(G.space.r)]
    R.check("N_j(0) = ad(e^j)", P.residues() == [G.space.ad(j) for j in range(G.space.r)])


def cmd_qcoh_weights(sess, args):
    doc, X = _qcoh_doc(sess, args)
    if isinstance(X, GWData):
        _require_valid_gw(X)
        ops = [X.space.ad(j) for j in range(X.space.r)]
        center = X.space.n if args.center is None else args.center
    elif isinstance(X, ConnectionPresentation):
        ops = X.residues()
        center = 0 if args.center is None else args.center
    else:
        raise InputError("expected GW data or a connection presentation")
    if args.direction is not None:
        if not 1 <= args.direction <= len(ops):
            raise InputError(f"--direction must be between 1 and {len(ops)}")
        N = ops[args.direction - 1]
    else:
        dim = len(ops[0]) if ops else 0
        N = [[sum((M[i][j] for M in ops), Fraction(0)) for j in range(dim)] for i in range(dim)]
    W = weight_filtration(N, center)
    R = sess.report
    R.results["center"] = center
    R.results["jordan_type"] = list(jordan_type(N))
    R.results["levels"] = {str(k): W(k) for k in range(W.low, W.high + 1)}
    R.results["jumps"] = W.jumps()
    R.check("weight filtration properties", not weight_filtration_defects(N, W))


def cmd_qcoh_griffiths(sess, args):
    P, D = _presentation(sess, args)
    d = griffiths_defect(P, D)
    R = sess.report
    R.results["griffiths"] = d is None
    if d is not None:
        R.results["failure"] = d
        raise Verdict


def cmd_qcoh_compare(sess, args):
    doc, _ = None, None
    if not args.input:
        raise InputError("--in is required")
    doc = sess.load(args.input)
    if not isinstance(doc, dict) or doc.get("type") != "comparison":
        raise InputError("compare expects a document with \"type\": \"comparison\"")
    D = _degree(args, doc)

    def side(key):
        X = io.parse_value(io._require(doc, key, "comparison"))
        if isinstance(X, GWData):
            _require_valid_gw(X)
            return amodel_presentation(X, D)
        if isinstance(X, ConnectionPresentation):
            return X
        raise InputError(f"comparison.{key}: expected GW data or a presentation")

    PA, PB = side("a"), side("b")
    r = PA.nvars
    if "gauge" in doc:
        gauge = io.parse_series_matrix(doc["gauge"], r, D, "gauge")
    else:
        gauge = smat_identity(PA.dim, r, D)
    if "coord_map" in doc:
        coord = [io.parse_series(s, r, D, f"coord_map[{i}]")
                 for i, s in enumerate(io._list(doc["coord_map"], "coord_map"))]
    else:
        coord = [TruncatedSeries.variable(r, D, j) for j in range(r)]
    levels = io._ints(doc["levels"], "levels") if "levels" in doc else None
    d = vhs_isomorphism_defect(PA, PB, gauge, coord, D, levels)
    R = sess.report
    R.results["degree"] = D
    R.results["isomorphic"] = d is None
    R.results["residue_jordan_types"] = {
        "a": [list(jordan_type(M)) for M in PA.residues()],
        "b": [list(jordan_type(M)) for M in PB.residues()],
    }
    if d is not None:
        R.results["failure"] = d
        raise Verdict


# -- tori ---------------------------------------------------------------------

def _cycles(sess, args):
    if args.input:
        doc = sess.load(args.input)
        items = doc.get("cycles") if isinstance(doc, dict) and "cycles" in doc else [doc]
        return doc, [io.parse_value(c, "cycle") for c in io._list(items, "cycles")]
    if args.n is None or args.basis is None:
        raise InputError("give --in, or --n and --basis")
    basis = parse_matrix(args.basis)
    k = args.n - len(basis) if args.k is None else args.k
    return None, [PureCycle(args.n, fiber_lattice(args.n, basis), k, args.multiplicity)]


def cmd_tori_ann(sess, args):
    _, cycles = _cycles(sess, args)
    R = sess.report
    out = []
    for W in cycles:
        A = annihilator(W.fiber)
        out.append([list(b) for b in A.canonical()])
        R.check("phi(s) = 0", all(sum(a * s for a, s in zip(x, y)) == 0
                                 for x in A.basis for y in W.fiber.basis))
        R.check("rank(Ann) = n - rank(S)", A.rank == W.n - W.fiber.rank)
    R.results["annihilators"] = out


def cmd_tori_dual(sess, args):
    _, cycles = _cycles(sess, args)
    R = sess.report
    duals = [t_dual_cycle(W) for W in cycles]
    R.results["duals"] = duals
    R.check("degree = 2k", all(c.degree == 2 * W.base_dim for W, c in zip(cycles, duals)))


def cmd_tori_leray(sess, args):
    doc, cycles = _cycles(sess, args)
    if isinstance(doc, dict) and "images" in doc:
        images = [io.parse_value(c, "dual_class") for c in io._list(doc["images"], "images")]
    else:
        images = [t_dual_cycle(W) for W in cycles]
    ok = leray_filtration_check(cycles, images)
    R = sess.report
    R.results["levels"] = [W.base_dim for W in cycles]
    R.results["degrees"] = [c.degree for c in images]
    R.results["leray_compatible"] = ok
    if not ok:
        raise Verdict


# -- mirrortest ---------------------------------------------------------------

def _diamond(sess, arg, n):
    if arg.endswith(".json"):
        return sess.value(arg, "diamond")
    nums = parse_int_vector(arg)
    if len(nums) not in (1, 2):
        raise InputError(f"expected 'h11' or 'h11,h{n - 1}1', got {arg!r}")
    return calabi_yau_diamond(n, *nums)


def cmd_mirrortest_hodge(sess, args):
    hX = _diamond(sess, args.x, args.n)
    hY = _diamond(sess, args.y, args.n)
    ok = topological_mirror_test(hX, hY)
    R = sess.report
    R.results["mirror"] = ok
    if not ok:
        raise Verdict


# -- parser -------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog=PROG, description="Exact lattice and Hodge-theoretic mirror checks.")
    p.add_argument("--format", choices=["text", "machine"], default="text")
    top = p.add_subparsers(dest="group", required=True)

    def sub(group, name, fn, help_):
        s = group.add_parser(name, help=help_)
        s.add_argument("--format", choices=["text", "machine"], default=argparse.SUPPRESS)
        s.set_defaults(fn=fn)
        return s

    lat = top.add_parser("lattice", help="integer lattice operations").add_subparsers(dest="cmd", required=True)

    def lattice_opts(s):
        s.add_argument("--in", dest="input", help="lattice JSON file")
        s.add_argument("--builtin", help="U, E8, K3, mukai-U or mukai-K3")
        return s

    s = lattice_opts(sub(lat, "pair", cmd_lattice_pair, "pairing of two vectors"))
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s = lattice_opts(sub(lat, "snf", cmd_lattice_snf, "Smith normal form"))
    s.add_argument("--matrix", help="rows separated by ';' (defaults to the Gram matrix)")
    s = lattice_opts(sub(lat, "complement", cmd_lattice_complement, "orthogonal complement of v"))
    s.add_argument("--v", required=True)
    s = lattice_opts(sub(lat, "quotient", cmd_lattice_quotient, "v-perp / v for isotropic v"))
    s.add_argument("--v", required=True)
    s = lattice_opts(sub(lat, "standardize", cmd_lattice_standardize, "isometry taking v to t"))
    s.add_argument("--v", required=True)
    s.add_argument("--t", required=True)
    s.add_argument("--t-partner", dest="t_partner")

    muk = top.add_parser("mukai", help="Mukai lattice calculus").add_subparsers(dest="cmd", required=True)

    def mukai_opts(s):
        s.add_argument("--h2", default="K3", help="U, E8, K3 or a lattice JSON file")
        s.add_argument("--set", action="append", metavar="NAME=V",
                       help="name an H^2 vector for use in --v, --w, --c1")
        return s

    s = mukai_opts(sub(muk, "vec", cmd_mukai_vec, "Mukai vector from rank, c1, c2"))
    s.add_argument("--rank", type=int, default=0)
    s.add_argument("--c1")
    s.add_argument("--c2", type=int, default=0)
    s = mukai_opts(sub(muk, "chi", cmd_mukai_chi, "Euler pairing"))
    s.add_argument("--v", required=True)
    s.add_argument("--w")
    s = mukai_opts(sub(muk, "dim", cmd_mukai_dim, "moduli dimension"))
    s.add_argument("--v", required=True)
    s = mukai_opts(sub(muk, "mirror", cmd_mukai_mirror, "isometry taking v to (0,0,1)"))
    s.add_argument("--v", required=True)
    s = mukai_opts(sub(muk, "hodge", cmd_mukai_hodge, "mirror Hodge structure v-perp / v"))
    s.add_argument("--v", required=True)
    s.add_argument("--period", help="period JSON file")

    q = top.add_parser("qcoh", help="A-model connection checks").add_subparsers(dest="cmd", required=True)
    for name, fn, help_ in (("validate", cmd_qcoh_validate, "validate GW data"),
                            ("flat", cmd_qcoh_flat, "flatness of the connection"),
                            ("assoc", cmd_qcoh_assoc, "associativity of the quantum product"),
                            ("residues", cmd_qcoh_residues, "residues ad(e^j)"),
                            ("weights", cmd_qcoh_weights, "monodromy weight filtration"),
                            ("griffiths", cmd_qcoh_griffiths, "Griffiths transversality"),
                            ("compare", cmd_qcoh_compare, "gauge equivalence of two presentations")):
        s = sub(q, name, fn, help_)
        s.add_argument("--in", dest="input")
        s.add_argument("--degree", type=int)
        if name == "weights":
            s.add_argument("--center", type=int)
            s.add_argument("--direction", type=int, help="use N_j(0) instead of the sum")

    t = top.add_parser("tori", help="T-duality of pure cycles").add_subparsers(dest="cmd", required=True)
    for name, fn, help_ in (("ann", cmd_tori_ann, "annihilator of the fiber lattice"),
                            ("dual", cmd_tori_dual, "T-dual class"),
                            ("leray", cmd_tori_leray, "Leray filtration check")):
        s = sub(t, name, fn, help_)
        s.add_argument("--in", dest="input", help="cycle JSON file, or {\"cycles\": [...]}")
        s.add_argument("--n", type=int)
        s.add_argument("--basis", help="fiber basis, rows separated by ';'")
        s.add_argument("--k", type=int)
        s.add_argument("--multiplicity", type=int, default=1)

    mt = top.add_parser("mirrortest", help="mirror tests").add_subparsers(dest="cmd", required=True)
    s = sub(mt, "hodge-numbers", cmd_mirrortest_hodge, "topological mirror test")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--x", required=True, help="'h11,h21' or a diamond JSON file")
    s.add_argument("--y", required=True)
    return p


def run(argv):
    """Run a command; return (report, exit code, error message or None)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, int(exc.code or 0), None
    sess = Session(argv)
    try:
        args.fn(sess, args)
    except Verdict:
        return sess.report, 1, None
    except InvariantError as exc:
        return None, 2, f"invariant violated: {exc}"
    except (MirrorLatError, json.JSONDecodeError) as exc:
        return None, 2, f"error: {exc}"
    code = 0 if sess.report.passed else 1
    return sess.report, code, None


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    report, code, err = run(argv)
    if err:
        print(err, file=sys.stderr)
    if report is not None:
        fmt = _format(argv)
        sys.stdout.write(io.emit_report(report, fmt))
    return code


def _format(argv):
    fmt = "text"
    for i, a in enumerate(argv):
        if a == "--format" and i + 1 < len(argv):
            fmt = argv[i + 1]
        elif a.startswith("--format="):
            fmt = a.split("=", 1)[1]
    return fmt


if __name__ == "__main__":
    sys.exit(main())
