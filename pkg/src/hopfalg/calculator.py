"""Evaluation front end: parse, compute, serialize, one algebra at a time.

The functions here are the single implementation behind both the HTTP
service and the command line.  Every result is returned as a canonical text
form together with the structured term list that mirrors it one-to-one.
"""

from __future__ import annotations

from typing import Any, Callable

from hopfalg import checks, diptdend, grammar, prelie, trees, zoo
from hopfalg.core import (
    DegreeBoundError,
    LinComb,
    SymWord,
    TensorWord,
    lc_json,
    lc_text,
    pair_text,
    unshuffle,
)
from hopfalg.grammar import Scanner
from hopfalg.multibrace import brace_compose


class UsageError(ValueError):
    """Bad family, verb or argument shape (exit code two territory)."""


ENUM_FAMILIES = ("pt", "pbt", "put", "ut", "perm", "sp-poset")


def enumerate_family(family: str, n: int, connected: bool = False) -> dict:
    if family not in ENUM_FAMILIES:
        raise UsageError(f"unknown family {family!r}; choose from {ENUM_FAMILIES}")
    if family == "perm":
        if not 1 <= n <= 6:
            raise DegreeBoundError("permutations are enumerated for 1 <= n <= 6")
        import itertools
        items = [str(trees.Permutation(w))
                 for w in itertools.permutations(range(1, n + 1))]
    elif family == "sp-poset":
        items = [trees.poset_text(p)
                 for p in trees.series_parallel_posets(n, connected)]
    else:
        items = [str(t) for t in trees.enumerate_family(family, n)]
    return {"family": family, "n": n, "connected": connected,
            "count": len(items), "items": items}


def _split_top_level(text: str) -> list[str]:
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch.isspace() and depth == 0:
            if current:
                parts.append("".join(current))
                current = []
        else:
            current.append(ch)
    if current:
        parts.append("".join(current))
    return parts


def _parse_generator(text: str) -> int:
    sc = Scanner(text)
    sc.skip_ws()
    sc.expect("x")
    value = sc.integer()
    sc.done()
    return value


def _parse_forest_or_tree(text: str) -> SymWord:
    """Forests may be given as a single bare rooted-tree literal."""
    if text.lstrip().startswith("["):
        return SymWord.make([grammar.parse_rooted_tree(text)])
    return grammar.parse_forest(text)


def _render(lc: LinComb, key_text: Callable[[Any], str]) -> dict:
    return {"result": lc_text(lc, key_text=key_text),
            "terms": lc_json(lc, key_text=key_text)["terms"]}


def _pair(key_text: Callable[[Any], str]) -> Callable[[Any], str]:
    return lambda pair: pair_text(pair, key_text=key_text)


def evaluate(algebra: str, expression: str, maxdeg: int = 6,
             context: dict | None = None) -> dict:
    """Evaluate ``<verb> <args>`` in the named algebra.

    The ``lie`` algebra accepts an optional context holding a Lie algebra in
    the JSON bracket-table format; without one, the built-in free nilpotent
    fixture on three generators is used.
    """
    handlers = {
        "dipt": _eval_dipt,
        "dend": _eval_dend,
        "mr": _eval_mr,
        "qsym": _eval_qsym,
        "fdb": _eval_fdb,
        "gl": _eval_gl,
        "ck": _eval_ck,
        "brace-operad": _eval_operad,
    }
    expression = expression.strip()
    if not expression:
        raise UsageError("empty expression")
    verb, _, rest = expression.partition(" ")
    if algebra == "lie":
        out = _eval_lie(verb, rest.strip(), maxdeg, context)
    elif algebra in handlers:
        out = handlers[algebra](verb, rest.strip(), maxdeg)
    else:
        raise UsageError(f"unknown algebra {algebra!r}; "
                         f"choose from {sorted(handlers) + ['lie']}")
    out.update({"algebra": algebra, "expression": expression})
    return out


def _eval_lie(verb: str, rest: str, maxdeg: int, context: dict | None) -> dict:
    if context:
        lie = prelie.lie_from_json(context)
    else:
        lie = prelie.free_nilpotent_lie(3, 3)
    key_text = lambda i: lie.names[i]
    args = _split_top_level(rest)
    indices = []
    for a in args:
        sc = Scanner(a)
        sc.skip_ws()
        sc.expect("x")
        indices.append(sc.integer() - 1)
        sc.done()
    if any(not 0 <= i < lie.dim for i in indices):
        raise UsageError(f"generator index outside 1..{lie.dim}")
    if verb == "bracket":
        if len(indices) != 2:
            raise UsageError("bracket takes two generators, e.g. x1 x2")
        return _render(lie.bracket(indices[0], indices[1]), key_text)
    if verb in ("smb11", "smb12", "smb21"):
        p, q = int(verb[3]), int(verb[4])
        if len(indices) != p + q:
            raise UsageError(f"{verb} takes {p + q} generators")
        M = prelie.lie_to_smb(lie, max(maxdeg, 4))
        value = M.eval(p, q, tuple(indices[:p]), tuple(indices[p:]))
        return _render(value, key_text)
    raise UsageError(f"lie supports bracket, smb11, smb12, smb21; got {verb!r}")


def _eval_dipt(verb: str, rest: str, maxdeg: int) -> dict:
    key_text = diptdend.mono_text
    if verb in ("product", "succ"):
        parts = [p.strip() for p in rest.split(",")]
        if len(parts) != 2:
            raise UsageError("dipt products take two comma-separated monomials")
        a, b = (grammar.parse_dipt_monomial(p) for p in parts)
        if diptdend.mono_degree(a) + diptdend.mono_degree(b) > maxdeg:
            raise DegreeBoundError("product degree exceeds the bound")
        op = diptdend.dipt_star if verb == "product" else diptdend.dipt_succ
        return _render(op(LinComb.of(a), LinComb.of(b)), key_text)
    if verb == "coproduct":
        mono = grammar.parse_dipt_monomial(rest)
        if diptdend.mono_degree(mono) > maxdeg:
            raise DegreeBoundError("coproduct degree exceeds the bound")
        return _render(diptdend.dipt_coproduct_mono(mono), _pair(key_text))
    raise UsageError(f"dipt supports product, succ, coproduct; got {verb!r}")


def _eval_dend(verb: str, rest: str, maxdeg: int) -> dict:
    key_text = str
    args = _split_top_level(rest)
    if verb in ("product", "prec", "succ"):
        if len(args) != 2:
            raise UsageError(f"{verb} takes two trees")
        a, b = (grammar.parse_dend_tree(p) for p in args)
        if a.internal + b.internal > maxdeg:
            raise DegreeBoundError("product degree exceeds the bound")
        op = {"product": diptdend.dend_star, "prec": diptdend.dend_prec,
              "succ": diptdend.dend_succ}[verb]
        return _render(op(LinComb.of(a), LinComb.of(b)), key_text)
    if len(args) != 1:
        raise UsageError(f"{verb} takes one tree")
    t = grammar.parse_dend_tree(args[0])
    if t.internal > maxdeg:
        raise DegreeBoundError("degree exceeds the bound")
    if verb == "coproduct":
        return _render(diptdend.dend_coproduct_key(t), _pair(key_text))
    if verb == "e":
        return _render(diptdend.dend_idempotent(LinComb.of(t),
                                                bound=max(maxdeg, 6)), key_text)
    raise UsageError(f"dend supports product, prec, succ, coproduct, e; "
                     f"got {verb!r}")


def _eval_mr(verb: str, rest: str, maxdeg: int) -> dict:
    key_text = str
    args = _split_top_level(rest)
    binary = {"product": zoo.mr_product, "succ": zoo.mr_succ,
              "prec": zoo.mr_prec}
    if verb in binary:
        if len(args) != 2:
            raise UsageError(f"{verb} takes two permutations")
        a, b = (grammar.parse_permutation(p) for p in args)
        if a.size + b.size > maxdeg + 2:
            raise DegreeBoundError("degree exceeds the bound")
        return _render(binary[verb](LinComb.of(a), LinComb.of(b)), key_text)
    if verb in ("coproduct", "e", "e1"):
        if len(args) != 1:
            raise UsageError(f"{verb} takes one permutation")
        sigma = grammar.parse_permutation(args[0])
        if sigma.size > maxdeg + 2:
            raise DegreeBoundError("degree exceeds the bound")
        if verb == "coproduct":
            return _render(zoo.mr_coproduct_key(sigma), _pair(key_text))
        fn = zoo.mr_e_dend if verb == "e" else zoo.mr_e_inf
        return _render(fn(LinComb.of(sigma), bound=max(maxdeg, 6)), key_text)
    if verb in ("phi", "theta"):
        letters = tuple(grammar.parse_permutation(p) for p in args)
        word = TensorWord(letters)
        if sum(s.size for s in letters) > maxdeg + 2:
            raise DegreeBoundError("degree exceeds the bound")
        fn = zoo.mr_phi if verb == "phi" else zoo.mr_theta
        return _render(fn(word, bound=max(maxdeg, 6)), key_text)
    raise UsageError("mr supports product, succ, prec, coproduct, e, e1, "
                     f"phi, theta; got {verb!r}")


def _eval_qsym(verb: str, rest: str, maxdeg: int) -> dict:
    key_text = grammar.qsym_text
    args = _split_top_level(rest)
    if verb == "product":
        if len(args) != 2:
            raise UsageError("product takes two composition keys")
        a, b = (grammar.parse_qsym_key(p) for p in args)
        if sum(a) + sum(b) > max(maxdeg, 8):
            raise DegreeBoundError("degree exceeds the bound")
        return _render(zoo.qsym_product(LinComb.of(a), LinComb.of(b)), key_text)
    if verb == "coproduct":
        if len(args) != 1:
            raise UsageError("coproduct takes one composition key")
        key = grammar.parse_qsym_key(args[0])
        return _render(zoo.qsym_coproduct(key), _pair(key_text))
    raise UsageError(f"qsym supports product, coproduct; got {verb!r}")


def _eval_fdb(verb: str, rest: str, maxdeg: int) -> dict:
    args = _split_top_level(rest)
    if verb == "coproduct":
        if len(args) != 1:
            raise UsageError("coproduct takes one generator or monomial")
        mono = grammar.parse_fdb_monomial(args[0])
        if zoo.fdb_monomial_weight(mono) > max(maxdeg, 6):
            raise DegreeBoundError("weight exceeds the bound")
        if len(mono.letters) == 1:
            value = zoo.fdb_coproduct(mono.letters[0]).map_keys(
                lambda pair: (pair[0], SymWord.make([pair[1]])))
        else:
            value = zoo.fdb_delta_monomial(mono)
        return _render(value, _pair(grammar.fdb_monomial_text))
    if verb == "prelie":
        if len(args) != 2:
            raise UsageError("prelie takes two generators, e.g. x2 x3")
        p, q = (_parse_generator(a) for a in args)
        return _render(zoo.fdb_prelie(p, q), lambda n: f"x{n}")
    raise UsageError(f"fdb supports coproduct, prelie; got {verb!r}")


def _eval_gl(verb: str, rest: str, maxdeg: int) -> dict:
    key_text = str
    args = _split_top_level(rest)
    bound = max(maxdeg, 6)
    if verb == "product":
        if len(args) != 2:
            raise UsageError("product takes two forests")
        a, b = (_parse_forest_or_tree(p) for p in args)
        return _render(prelie.gl_product(a, b, bound=bound), key_text)
    if len(args) != 1:
        raise UsageError(f"{verb} takes one forest")
    forest = _parse_forest_or_tree(args[0])
    if verb == "coproduct":
        return _render(unshuffle(forest), _pair(key_text))
    if verb == "e1":
        model = prelie.gl_model(bound)
        return _render(model.conv_log()(LinComb.of(forest)), key_text)
    raise UsageError(f"gl supports product, coproduct, e1; got {verb!r}")


def _eval_ck(verb: str, rest: str, maxdeg: int) -> dict:
    key_text = str
    args = _split_top_level(rest)
    if verb == "product":
        if len(args) != 2:
            raise UsageError("product takes two forests")
        a, b = (_parse_forest_or_tree(p) for p in args)
        return _render(LinComb.of(a.union(b)), key_text)
    if verb == "coproduct":
        if len(args) != 1:
            raise UsageError("coproduct takes one forest")
        forest = _parse_forest_or_tree(args[0])
        if sum(t.vertices for t in forest.letters) > max(maxdeg, 6):
            raise DegreeBoundError("degree exceeds the bound")
        return _render(prelie.ck_coproduct_forest(forest), _pair(key_text))
    raise UsageError(f"ck supports product, coproduct; got {verb!r}")


def _eval_operad(verb: str, rest: str, maxdeg: int) -> dict:
    if verb != "compose":
        raise UsageError(f"brace-operad supports compose; got {verb!r}")
    import re
    match = re.split(r"\s+o(\d+)\s+", rest)
    if len(match) != 3:
        raise UsageError(
            "compose syntax: TREE x PERM o<i> TREE x PERM")
    mu = grammar.parse_operad_element(match[0])
    nu = grammar.parse_operad_element(match[2])
    index = int(match[1])
    if mu.arity + nu.arity - 1 > max(maxdeg, 6):
        raise DegreeBoundError("composition arity exceeds the bound")
    composed = brace_compose(mu, index, nu)
    key_text = lambda pair: f"{pair[0]} x {pair[1]}"
    return {"result": lc_text(composed.terms, key_text=key_text),
            "terms": lc_json(composed.terms, key_text=key_text)["terms"],
            "arity": composed.arity}


TABLES = ("dimensions", "catalan", "supercatalan", "series-parallel")


def table(name: str) -> dict:
    """Numeric rows, recomputed and compared against their expected values."""
    if name == "catalan":
        computed = trees.dims_dend(5)
        rows = [{"label": "catalan", "values": computed,
                 "expected": [1, 2, 5, 14, 42]}]
        note = "binary-tree counts by internal vertices"
    elif name == "supercatalan":
        computed = [len(trees.planar_trees(n + 1)) for n in range(1, 6)]
        rows = [{"label": "supercatalan", "values": computed,
                 "expected": [1, 3, 11, 45, 197]}]
        note = ("reduced planar trees; the row lists sizes shifted by one "
                "leaf (the library grades by leaves, with sizes 1, 1, 3, 11, ...)")
    elif name == "series-parallel":
        d = [trees.count_series_parallel(n) for n in range(1, 6)]
        f = [trees.count_series_parallel(n, True) for n in range(1, 6)]
        rows = [{"label": "all", "values": d,
                 "expected": [1, 3, 19, 195, 2791]},
                {"label": "connected", "values": f,
                 "expected": [1, 2, 12, 122, 1740]}]
        note = "labeled series-parallel posets"
    elif name == "dimensions":
        rows = [
            {"label": "dend", "values": trees.dims_dend(5),
             "expected": [1, 2, 5, 14, 42]},
            {"label": "dipt", "values": trees.dims_dipt(5),
             "expected": [1, 2, 6, 22, 90]},
            {"label": "mb", "values": trees.dims_mb(5),
             "expected": [1, 1, 3, 11, 45]},
            {"label": "brace", "values": trees.dims_brace(5),
             "expected": [1, 1, 2, 5, 14]},
            {"label": "prelie", "values": trees.dims_prelie(5),
             "expected": [1, 1, 2, 4, 9]},
            {"label": "prelie-labeled",
             "values": [trees.count_labeled_rooted_trees(n) for n in range(1, 6)],
             "expected": [n ** (n - 1) for n in range(1, 6)]},
            {"label": "comas",
             "values": [trees.count_series_parallel(n) for n in range(1, 6)],
             "expected": [1, 3, 19, 195, 2791]},
            {"label": "smb",
             "values": [trees.count_series_parallel(n, True) for n in range(1, 6)],
             "expected": [1, 2, 12, 122, 1740]},
        ]
        note = "graded dimensions of the one-generator free algebras"
    else:
        raise UsageError(f"unknown table {name!r}; choose from {TABLES}")
    ok = all(r["values"] == r["expected"] for r in rows)
    return {"name": name, "rows": rows, "note": note, "passed": ok}


def run_check(suite: str, maxdeg: int | None = None, seed: int = 0) -> dict:
    try:
        report = checks.run_suite(suite, maxdeg=maxdeg, seed=seed)
    except KeyError as exc:
        raise UsageError(
            f"unknown suite {suite!r}; choose from "
            f"{sorted(checks.SUITES) + ['sr111', 'sr112', 'sr121', 'sr211', 'all']}"
        ) from exc
    return {
        "suite": report.suite,
        "passed": report.passed,
        "checks": [{"id": c.id, "status": "pass" if c.ok else "fail",
                    "witness": c.witness} for c in report.checks],
    }
