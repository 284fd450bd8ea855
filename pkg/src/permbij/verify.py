"""Exhaustive verification suites.

Each suite returns a :class:`SuiteResult`; failures carry reproducible
``permbij map`` invocations where a single word is to blame.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations

from . import genfun
from .bijections import SHORT_SOURCE, SHORT_TARGET, SOURCE, TARGET, _alpha, _beta, _phi, _psi, classify
from .classes import THIRTEEN, PERMUTATION_CLASSES, class_count
from .errors import StructureError
from .invseq import enumerate_inversion_class, inv_statistics, lehmer_code, ms_code
from .permcore import avoiders, format_word, inverse, statistics
from .properties import (
    alpha_adjacency_iff,
    alpha_lrmax_pair_breaks,
    alpha_relative_order_kept,
    phi_descent_at_max_kept,
    phi_descent_breaks,
    top_block_empty,
)

WORKERS_ENV = "PERMBIJ_WORKERS"
ALPHA_KEPT = ("ides", "lrmax", "lrmin", "rlmax", "iar")
PHI_KEPT = ("br", "ides", "lrmax", "lrmin", "iar")
MAX_EXAMPLES = 5


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def map_command(bijection: str, w) -> str:
    return f'permbij map --bijection {bijection} --input "{format_word(w)}"'


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    checked: int = 0
    lines: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)

    def check(self, ok: bool, line: str, counterexample: str | None = None):
        self.passed &= bool(ok)
        self.lines.append(("PASS " if ok else "FAIL ") + line)
        if not ok and counterexample:
            self.counterexamples.append(counterexample)

    def note(self, line: str):
        self.lines.append("NOTE " + line)

    def report(self) -> str:
        head = f"{self.name}: {'PASS' if self.passed else 'FAIL'} ({self.checked} objects checked)"
        body = [head] + ["  " + s for s in self.lines]
        if self.counterexamples:
            body.append("  first counterexamples:")
            body += ["    " + c for c in self.counterexamples[:MAX_EXAMPLES]]
        return "\n".join(body)


# ---------------------------------------------------------------------------
# per-word sweeps, partitioned by first letter


def _chunks(words) -> list:
    out: dict = {}
    for w in words:
        out.setdefault(w[0] if w else 0, []).append(w)
    return [out[k] for k in sorted(out)]


def _run_chunks(fn, chunks, workers: int) -> list:
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, chunks))
    return [fn(c) for c in chunks]


def _merge(parts) -> dict:
    total: dict = {}
    for part in parts:
        for k, v in part.items():
            if isinstance(v, Counter):
                total.setdefault(k, Counter()).update(v)
            elif isinstance(v, list):
                total.setdefault(k, []).extend(v)
            elif isinstance(v, set):
                total.setdefault(k, set()).update(v)
            else:
                total[k] = total.get(k, 0) + v
    return total


def _alpha_chunk(words) -> dict:
    out = {
        "words": 0, "roundtrip": [], "stats": [], "classify": [], "order": [], "iff": [],
        "pairs_literal": [], "pairs_corrected": [], "tags": Counter(), "images": set(),
    }
    for w in words:
        out["words"] += 1
        a = _alpha(w)
        out["images"].add(a)
        if _beta(a) != w:
            out["roundtrip"].append(w)
        sw, sa = statistics(w), statistics(a)
        if any(getattr(sw, k) != getattr(sa, k) for k in ALPHA_KEPT):
            out["stats"].append(w)
        try:
            tag = classify(w, "source", check=False).tag
        except StructureError:
            out["classify"].append(w)
            continue
        out["tags"][tag] += 1
        if not alpha_relative_order_kept(w, a, tag):
            out["order"].append(w)
        if not alpha_adjacency_iff(w, a, tag):
            out["iff"].append(w)
        if alpha_lrmax_pair_breaks(w, a, tag, literal=True):
            out["pairs_literal"].append(w)
        if alpha_lrmax_pair_breaks(w, a, tag, literal=False):
            out["pairs_corrected"].append(w)
    return out


def _beta_chunk(words) -> dict:
    out = {"words": 0, "roundtrip": [], "classify": [], "tags": Counter(), "images": set()}
    for v in words:
        out["words"] += 1
        b = _beta(v)
        out["images"].add(b)
        if _alpha(b) != v:
            out["roundtrip"].append(v)
        try:
            out["tags"][classify(v, "target", check=False).tag] += 1
        except StructureError:
            out["classify"].append(v)
    return out


def _phi_chunk(words) -> dict:
    out = {"words": 0, "roundtrip": [], "stats": [], "before_max": [], "at_max": [], "images": set()}
    for w in words:
        out["words"] += 1
        im = _phi(w)
        out["images"].add(im)
        if _psi(im) != w:
            out["roundtrip"].append(w)
        sw, si = statistics(w), statistics(im)
        if any(getattr(sw, k) != getattr(si, k) for k in PHI_KEPT):
            out["stats"].append(w)
        if phi_descent_breaks(w, through_max=False, image=im):
            out["before_max"].append(w)
        kept = phi_descent_at_max_kept(w, im)
        if kept is not None and kept == top_block_empty(w):
            out["at_max"].append(w)
    return out


def _psi_chunk(words) -> dict:
    out = {"words": 0, "roundtrip": [], "images": set()}
    for v in words:
        out["words"] += 1
        im = _psi(v)
        out["images"].add(im)
        if _phi(im) != v:
            out["roundtrip"].append(v)
    return out


_SWEEP_CACHE: dict = {}


def sweep(kind: str, n: int, workers: int = 1) -> dict:
    """Merged per-word report of one map over its whole class at length n."""
    key = (kind, n)
    if key not in _SWEEP_CACHE:
        fn, pats = {
            "alpha": (_alpha_chunk, SOURCE),
            "beta": (_beta_chunk, TARGET),
            "phi": (_phi_chunk, SHORT_SOURCE),
            "psi": (_psi_chunk, SHORT_TARGET),
        }[kind]
        words = avoiders(n, pats)
        report = _merge(_run_chunks(fn, _chunks(words), workers))
        report.setdefault("words", 0)
        report["image_ok"] = report.pop("images", set()) == set(
            avoiders(n, {"alpha": TARGET, "beta": SOURCE, "phi": SHORT_TARGET, "psi": SHORT_SOURCE}[kind])
        )
        _SWEEP_CACHE[key] = report
    return _SWEEP_CACHE[key]


def _first(bij: str, words) -> str | None:
    return map_command(bij, min(words)) if words else None


# ---------------------------------------------------------------------------
# suites


def suite_roundtrip(n_max: int, workers: int = 1) -> SuiteResult:
    res = SuiteResult("roundtrip")
    for n in range(1, n_max + 1):
        for kind, inv in (("alpha", "beta"), ("beta", "alpha"), ("phi", "psi"), ("psi", "phi")):
            r = sweep(kind, n, workers)
            res.checked += r["words"]
            bad = r["roundtrip"]
            res.check(not bad and r["image_ok"],
                      f"n={n} {inv}({kind}(w)) = w on {r['words']} words, image is the target class",
                      _first(kind, bad))
    return res


def suite_statistics(n_max: int, workers: int = 1) -> SuiteResult:
    res = SuiteResult("statistic-preservation")
    for n in range(1, n_max + 1):
        a = sweep("alpha", n, workers)
        p = sweep("phi", n, workers)
        res.checked += a["words"] + p["words"]
        res.check(not a["stats"], f"n={n} alpha keeps ({', '.join(ALPHA_KEPT)})", _first("alpha", a["stats"]))
        res.check(not p["stats"], f"n={n} phi keeps ({', '.join(PHI_KEPT)})", _first("phi", p["stats"]))
    return res


def suite_structure(n_max: int, workers: int = 1) -> SuiteResult:
    """Case classification, relative order and the adjacency iff for alpha;
    descent adjacency for phi."""
    res = SuiteResult("structure")
    for n in range(1, n_max + 1):
        a = sweep("alpha", n, workers)
        b = sweep("beta", n, workers)
        p = sweep("phi", n, workers)
        res.checked += a["words"] + b["words"] + p["words"]
        res.check(not a["classify"] and not b["classify"], f"n={n} every word of both classes gets one case tag",
                  _first("alpha", a["classify"] or b["classify"]))
        res.check(not a["order"], f"n={n} alpha keeps the order of the letters at l_(s-1), l_s, r_2",
                  _first("alpha", a["order"]))
        res.check(not a["iff"], f"n={n} adjacency of the last two relevant maxima in alpha(w) iff consecutive in w",
                  _first("alpha", a["iff"]))
        res.check(not p["before_max"], f"n={n} phi keeps descents before the maximum adjacent",
                  _first("phi", p["before_max"]))
        res.check(not p["at_max"], f"n={n} phi keeps the descent after the maximum iff the top block is non-empty",
                  _first("phi", p["at_max"]))
    return res


def suite_adjacency(n_max: int, workers: int = 1) -> SuiteResult:
    """Adjacency of w_{l_i} w_{l_i+1} under alpha with the published index
    bounds; the corrected bounds are reported alongside."""
    res = SuiteResult("adjacency")
    for n in range(1, n_max + 1):
        a = sweep("alpha", n, workers)
        res.checked += a["words"]
        lit, cor = a["pairs_literal"], a["pairs_corrected"]
        res.check(not lit, f"n={n} published bounds: {len(lit)} of {a['words']} words break a pair",
                  _first("alpha", lit))
        res.note(f"n={n} with the s-2 descent bound on rlmax=1 words: {len(cor)} words break a pair")
    return res


def suite_thirteen_classes(n_max: int) -> SuiteResult:
    res = SuiteResult("conjecture-13")
    for n in range(1, n_max + 1):
        counts = {k: class_count(k, n) for k in THIRTEEN}
        res.checked += sum(counts.values())
        res.check(len(set(counts.values())) == 1, f"n={n} all thirteen classes have {sorted(set(counts.values()))}")
    return res


def suite_succession(n_max: int, direct_max: int = 7) -> SuiteResult:
    res = SuiteResult("succession-vs-bruteforce")
    for n in range(1, min(n_max, direct_max) + 1):
        bad, top_always = [], True
        seqs = enumerate_inversion_class(n)
        for e in seqs:
            ks = genfun.legal_extensions(e)
            top_always &= n in ks
            children = sorted(genfun.parameters(e + (k,)) for k in ks)
            if children != genfun.successors(genfun.parameters(e)):
                bad.append(e)
        res.checked += len(seqs)
        res.check(not bad, f"n={n} direct extensions match the succession rule on {len(seqs)} sequences",
                  f"sequence {bad[0]}" if bad else None)
        res.check(top_always, f"n={n} appending the entry n is always legal")
    for n in range(1, n_max + 1):
        brute = class_count("I201210", n)
        tree = genfun.count_by_succession(n)
        res.check(brute == tree, f"n={n} succession count {tree} = brute force {brute}")
    return res


def suite_algebraic(n_max: int) -> SuiteResult:
    res = SuiteResult("algebraic-equation")
    cf = genfun.closed_form_coefficients(n_max)
    sc = genfun.succession_counts(n_max)
    res.checked = n_max
    res.check(cf[1:] == sc, f"closed form matches the succession counts through n={n_max}")
    f_top = min(n_max, 20)
    res.check([genfun.f_value(n) for n in range(1, f_top + 1)] == sc[:f_top], f"f_n(1,1) matches through n={f_top}")
    res.check(n_max >= 2 and genfun.verify_algebraic_equation(n_max), f"quadratic equation residual is zero through t^{n_max}")
    return res


def suite_saturation(n_max: int) -> SuiteResult:
    res = SuiteResult("saturation-equation")
    res.checked = n_max
    res.check(genfun.verify_satu_equation(n_max, "printed"), f"kernel form as published, through t^{n_max + 1}")
    for form in ("corrected", "unsimplified"):
        ok = genfun.verify_satu_equation(n_max, form)
        res.note(f"{form} form: {'holds' if ok else 'fails'}")
    return res


def suite_block_equations(n_max: int) -> SuiteResult:
    res = SuiteResult("section-2.1")
    res.checked = n_max
    printed = genfun.block_equation_checks(n_max)
    for k in ("S", "B", "combined"):
        res.check(printed[k], f"{k} identity as published, through z^{n_max}")
    fixed = genfun.block_equation_checks(n_max, corrected=True)
    res.note("with lrmin weight q on the identity term: " + ", ".join(f"{k} {'holds' if v else 'fails'}" for k, v in fixed.items()))
    return res


def _dist(words, key) -> Counter:
    return Counter(key(statistics(w)) for w in words)


def suite_coding(n_max: int) -> SuiteResult:
    """ms_code triple transfer, restriction to the (201,210) class and the
    distribution identities, with rlmin on the permutation side."""
    res = SuiteResult("coding")
    g = PERMUTATION_CLASSES["C45312"]
    bc = PERMUTATION_CLASSES["C24153"]
    tgt = PERMUTATION_CLASSES["C31425"]
    src = PERMUTATION_CLASSES["C31245"]
    for n in range(1, n_max + 1):
        perms = list(permutations(range(1, n + 1)))
        res.checked += len(perms)
        bad = []
        codes = set()
        for p in perms:
            e = ms_code(p)
            codes.add(e)
            s, r = statistics(p), inv_statistics(e)
            if (s.exc, len(s.rlmin), s.lmaxz) != (r.rep, r.rlmin, r.zero):
                bad.append(p)
        res.check(not bad and len(codes) == len(perms), f"n={n} ms_code is a bijection carrying (exc, rlmin, lmaxz) to (rep, rlmin, zero)",
                  map_command("ms", bad[0]) if bad else None)
        res.check(len({lehmer_code(p) for p in perms}) == len(perms), f"n={n} lehmer_code is a bijection")
        inv = enumerate_inversion_class(n)
        gw = avoiders(n, g)
        res.check({ms_code(p) for p in gw} == set(inv), f"n={n} ms_code maps C45312 onto I_n(201,210)")
        istats = [inv_statistics(e) for e in inv]
        rep_side = Counter((r.rep, r.rlmin, r.zero) for r in istats)
        rl = _dist(gw, lambda s: (s.exc, len(s.rlmin), s.lmaxz))
        lr = _dist(gw, lambda s: (s.exc, len(s.lrmin), s.lmaxz))
        res.check(rl == rep_side, f"n={n} (exc, rlmin, lmaxz) on C45312 ~ (rep, rlmin, zero)")
        res.note(f"n={n} same with lrmin: {'holds' if lr == rep_side else 'fails'}")
        bw = avoiders(n, bc)
        dist_side = Counter((r.dist, r.rlmin, r.zero) for r in istats)
        bdist = _dist(bw, lambda s: (len(s.ides), len(s.rlmax), len(s.lrmax)))
        res.check(bdist == dist_side, f"n={n} (ides, rlmax, lrmax) on C24153 ~ (dist, rlmin, zero)")
        iasc = _dist(bw, lambda s: (s.iasc, len(s.rlmax), len(s.lrmax)))
        res.check(rl == iasc, f"n={n} (exc, rlmin, lmaxz) on C45312 ~ (iasc, rlmax, lrmax) on C24153")
        tw = avoiders(n, tgt)
        res.check(sorted(inverse(p) for p in bw) == sorted(tw), f"n={n} inversion maps C24153 onto C31425")
        res.check(iasc == _dist(tw, lambda s: (s.asc, len(s.rlmax), len(s.rlmin))), f"n={n} (iasc, rlmax, lrmax) ~ (asc, rlmax, rlmin) on C31425")
        refine = _dist(avoiders(n, src), lambda s: len(s.rlmax))
        res.check(_dist(gw, lambda s: len(s.rlmin)) == refine, f"n={n} rlmin on C45312 ~ rlmax on C31245")
        res.note(f"n={n} same with lrmin: {'holds' if _dist(gw, lambda s: len(s.lrmin)) == refine else 'fails'}")
    return res


SUITES = {
    "roundtrip": suite_roundtrip,
    "statistic-preservation": suite_statistics,
    "structure": suite_structure,
    "adjacency": suite_adjacency,
    "succession-vs-bruteforce": suite_succession,
    "algebraic-equation": suite_algebraic,
    "saturation-equation": suite_saturation,
    "conjecture-13": suite_thirteen_classes,
    "section-2.1": suite_block_equations,
    "coding": suite_coding,
}
PARALLEL = {"roundtrip", "statistic-preservation", "structure", "adjacency"}


def run_suite(name: str, n_max: int, workers: int = 1) -> SuiteResult:
    fn = SUITES[name]
    return fn(n_max, workers) if name in PARALLEL else fn(n_max)
