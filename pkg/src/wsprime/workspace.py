"""Workspace files: declarations, queries and emit targets.

One statement per line, ``#`` starts a comment.  Parsing resolves every name
and builds the structures, so a document that parses is ready to execute.
Errors carry 1-based line and column numbers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from wsprime import __version__
from wsprime.classify import METHODS, classify
from wsprime.construct import (
    AmalgamationBundle,
    _PairBundle,
    build_duplication,
    build_idealization,
)
from wsprime.errors import AlgebraError, UnknownElement
from wsprime.harness.corpus import KINDS, CorpusSpec
from wsprime.harness.search import PREDICATES, search
from wsprime.harness.suite import LEDGER, run_theorem_suite
from wsprime.modules import (
    FiniteModule,
    ModuleHom,
    Submodule,
    direct_sum,
    module_from_table_file,
    quotient_module,
    regular_module,
    span_submodule,
)
from wsprime.report import module_record, plain, ring_record, subset_record
from wsprime.rings import (
    FiniteRing,
    Ideal,
    MultClosedSet,
    RingHom,
    make_cyclic_ring,
    make_mult_set,
    make_product_ring,
    natural_hom,
    quotient_ring,
    span_ideal,
)

REPORT_VERSION = 1


class WorkspaceError(Exception):
    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line, self.col, self.message = line, col, message


@dataclass
class Token:
    text: str
    col: int
    kind: str = "word"      # word | list | sym


@dataclass
class Declaration:
    kind: str
    name: str
    line: int
    value: object


@dataclass
class Query:
    kind: str
    line: int
    args: dict


@dataclass
class WorkspaceDocument:
    declarations: list = field(default_factory=list)
    queries: list = field(default_factory=list)
    emits: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    base_dir: Path = Path(".")

    def names(self) -> dict:
        return {d.name: d for d in self.declarations}


# ---------------------------------------------------------------- tokenizer


def _scan_group(line: str, i: int, lineno: int) -> int:
    """Index just past the parenthesised group starting at i."""
    depth = 0
    for j in range(i, len(line)):
        if line[j] == "(":
            depth += 1
        elif line[j] == ")":
            depth -= 1
            if depth == 0:
                return j + 1
    raise WorkspaceError(lineno, i + 1, "unbalanced parenthesis")


def _scan_list(line: str, i: int, lineno: int) -> tuple[list[str], int]:
    """Parse '[a, b, ...]' starting at i; items may be labels like (1,2) or [3]."""
    items: list[str] = []
    j = i + 1
    cur = ""
    while j < len(line):
        ch = line[j]
        if ch == "]":
            if cur.strip():
                items.append(cur.strip())
            return items, j + 1
        if ch == ",":
            if not cur.strip():
                raise WorkspaceError(lineno, j + 1, "empty list item")
            items.append(cur.strip())
            cur = ""
            j += 1
            continue
        if ch == "(":
            end = _scan_group(line, j, lineno)
            cur += line[j:end]
            j = end
            continue
        if ch == "[":
            end = line.find("]", j)
            if end < 0:
                break
            cur += line[j:end + 1]
            j = end + 1
            continue
        cur += ch
        j += 1
    raise WorkspaceError(lineno, i + 1, "unterminated list")


def tokenize(line: str, lineno: int) -> list[Token]:
    toks = []
    i = 0
    while i < len(line):
        ch = line[i]
        if ch == "#":
            break
        if ch.isspace():
            i += 1
            continue
        if ch == "[":
            items, end = _scan_list(line, i, lineno)
            toks.append(Token(items, i + 1, "list"))
            i = end
            continue
        if line.startswith("->", i):
            toks.append(Token("->", i + 1, "sym"))
            i += 2
            continue
        if ch == "=":
            toks.append(Token("=", i + 1, "sym"))
            i += 1
            continue
        if ch == "(":
            end = _scan_group(line, i, lineno)
            toks.append(Token(line[i:end], i + 1))
            i = end
            continue
        j = i
        while j < len(line) and not line[j].isspace() and line[j] not in "=[#":
            if line.startswith("->", j):
                break
            j += 1
        toks.append(Token(line[i:j], i + 1))
        i = j
    return toks


# ------------------------------------------------------------------- parser

_TYPES = {"ring": FiniteRing, "hom": RingHom, "ideal": Ideal, "mset": MultClosedSet,
          "module": FiniteModule, "modhom": ModuleHom, "submodule": Submodule,
          "corpus": CorpusSpec}


class _Parser:
    def __init__(self, base_dir: Path):
        self.doc = WorkspaceDocument(base_dir=base_dir)
        self.scope: dict[str, Declaration] = {}
        self.projections: dict[int, ModuleHom] = {}
        self.bundles: dict[int, object] = {}

    # token helpers
    def _take(self, toks, pos, lineno, what="token"):
        if pos >= len(toks):
            col = toks[-1].col + len(str(toks[-1].text)) if toks else 1
            raise WorkspaceError(lineno, col, f"expected {what}")
        return toks[pos]

    def _expect(self, toks, pos, lineno, text):
        tok = self._take(toks, pos, lineno, repr(text))
        if tok.text != text:
            raise WorkspaceError(lineno, tok.col, f"expected {text!r}, found {tok.text!r}")
        return tok

    def _end(self, toks, pos, lineno):
        if pos < len(toks):
            raise WorkspaceError(lineno, toks[pos].col, f"unexpected {toks[pos].text!r}")

    def _ref(self, tok: Token, lineno: int, kind: str):
        if tok.kind != "word":
            raise WorkspaceError(lineno, tok.col, f"expected a {kind} name")
        decl = self.scope.get(tok.text)
        if decl is None:
            raise WorkspaceError(lineno, tok.col, f"unresolved name {tok.text!r}")
        if decl.kind != kind:
            raise WorkspaceError(lineno, tok.col,
                                 f"type mismatch: {tok.text!r} is a {decl.kind}, expected a {kind}")
        return decl.value

    def _int(self, tok: Token, lineno: int) -> int:
        try:
            return int(tok.text)
        except (TypeError, ValueError):
            raise WorkspaceError(lineno, tok.col, f"expected an integer, found {tok.text!r}") from None

    def _list(self, tok: Token, lineno: int) -> list[str]:
        if tok.kind != "list":
            raise WorkspaceError(lineno, tok.col, "expected a bracketed list")
        return tok.text

    def _elements(self, tok: Token, lineno: int, host) -> list[int]:
        out = []
        for item in self._list(tok, lineno):
            try:
                out.append(host.index_of(item))
            except UnknownElement:
                try:
                    out.append(host.check_index(int(item)))
                except (ValueError, UnknownElement):
                    raise WorkspaceError(lineno, tok.col,
                                         f"{item!r} is not an element of {host.label}") from None
        return out

    def _declare(self, kind, tok: Token, lineno: int, value):
        name = tok.text
        if tok.kind != "word" or not (name[:1].isalpha() or name[:1] == "_"):
            raise WorkspaceError(lineno, tok.col, f"bad name {name!r}")
        if name in self.scope:
            first = self.scope[name].line
            raise WorkspaceError(lineno, tok.col,
                                 f"duplicate name {name!r} (line {lineno}; first declared on line {first})")
        decl = Declaration(kind, name, lineno, value)
        self.scope[name] = decl
        self.doc.declarations.append(decl)

    # statements
    def statement(self, toks: list[Token], lineno: int) -> None:
        head = toks[0]
        handler = getattr(self, f"_st_{head.text}", None)
        if handler is None or head.kind != "word":
            raise WorkspaceError(lineno, head.col, f"unknown statement {head.text!r}")
        try:
            handler(toks, lineno)
        except WorkspaceError:
            raise
        except (AlgebraError, ValueError) as exc:
            raise WorkspaceError(lineno, head.col, f"{type(exc).__name__}: {exc}") from None

    def _st_ring(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "=")
        how = self._take(toks, 3, ln, "a ring constructor")
        if how.text == "zn":
            n = self._int(self._take(toks, 4, ln, "N"), ln)
            if n < 2:
                raise WorkspaceError(ln, toks[4].col, "zn needs N >= 2")
            r, end = make_cyclic_ring(n), 5
        elif how.text == "product":
            a = self._ref(self._take(toks, 4, ln, "a ring"), ln, "ring")
            b = self._ref(self._take(toks, 5, ln, "a ring"), ln, "ring")
            r, end = make_product_ring(a, b), 6
        elif how.text == "quotient":
            base = self._ref(self._take(toks, 4, ln, "a ring"), ln, "ring")
            ideal = self._ref(self._take(toks, 5, ln, "an ideal"), ln, "ideal")
            if ideal.host is not base:
                raise WorkspaceError(ln, toks[5].col, "type mismatch: ideal is not in that ring")
            r, end = quotient_ring(base, ideal)[0], 6
        elif how.text == "idealization":
            base = self._ref(self._take(toks, 4, ln, "a ring"), ln, "ring")
            mod = self._ref(self._take(toks, 5, ln, "a module"), ln, "module")
            bundle = build_idealization(base, mod)
            r, end = bundle.ring, 6
        elif how.text == "duplication":
            base = self._ref(self._take(toks, 4, ln, "a ring"), ln, "ring")
            ideal = self._ref(self._take(toks, 5, ln, "an ideal"), ln, "ideal")
            bundle = build_duplication(base, ideal, regular_module(base))
            r, end = bundle.ring, 6
        elif how.text == "amalgamation":
            f = self._ref(self._take(toks, 4, ln, "a hom"), ln, "hom")
            ideal = self._ref(self._take(toks, 5, ln, "an ideal"), ln, "ideal")
            phi = self._ref(self._take(toks, 6, ln, "a modhom"), ln, "modhom")
            bundle = AmalgamationBundle(f, ideal, phi)
            r, end = bundle.ring, 7
        else:
            raise WorkspaceError(ln, how.col, f"unknown ring constructor {how.text!r}")
        self._end(toks, end, ln)
        if how.text in ("idealization", "duplication", "amalgamation"):
            self.bundles[id(r)] = bundle
        self._declare("ring", name, ln, r)

    def _st_hom(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "=")
        a = self._ref(self._take(toks, 3, ln, "a ring"), ln, "ring")
        self._expect(toks, 4, ln, "->")
        b = self._ref(self._take(toks, 5, ln, "a ring"), ln, "ring")
        how = self._take(toks, 6, ln, "natural or table")
        if how.text == "natural":
            h, end = natural_hom(a, b), 7
        elif how.text == "table":
            img = self._elements(self._take(toks, 7, ln, "a list"), ln, b)
            h, end = RingHom(a, b, img), 8
        else:
            raise WorkspaceError(ln, how.col, f"expected natural or table, found {how.text!r}")
        self._end(toks, end, ln)
        self._declare("hom", name, ln, h)

    def _st_ideal(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "of")
        r = self._ref(self._take(toks, 3, ln, "a ring"), ln, "ring")
        self._expect(toks, 4, ln, "=")
        self._expect(toks, 5, ln, "gen")
        gens = self._elements(self._take(toks, 6, ln, "a list"), ln, r)
        self._end(toks, 7, ln)
        self._declare("ideal", name, ln, span_ideal(r, gens))

    def _st_mset(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "of")
        r = self._ref(self._take(toks, 3, ln, "a ring"), ln, "ring")
        self._expect(toks, 4, ln, "=")
        elems = self._elements(self._take(toks, 5, ln, "a list"), ln, r)
        self._end(toks, 6, ln)
        if not elems:
            raise WorkspaceError(ln, toks[5].col, "a multiplicatively closed set must be nonempty")
        s = make_mult_set(r, elems)
        if s.contains_zero:
            self.doc.warnings.append({"line": ln, "column": toks[5].col, "kind": "contains_zero",
                                      "message": f"closure of {name.text} contains 0"})
        self._declare("mset", name, ln, s)

    def _st_module(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "of")
        r = self._ref(self._take(toks, 3, ln, "a ring"), ln, "ring")
        self._expect(toks, 4, ln, "=")
        how = self._take(toks, 5, ln, "a module constructor")
        end = 6
        if how.text == "regular":
            m = regular_module(r)
        elif how.text == "carrier":
            bundle = self.bundles.get(id(r))
            if not isinstance(bundle, _PairBundle):
                raise WorkspaceError(ln, how.col, "carrier needs a duplication or amalgamation ring")
            m = bundle.module
        elif how.text == "product":
            a = self._ref(self._take(toks, 6, ln, "a module"), ln, "module")
            b = self._ref(self._take(toks, 7, ln, "a module"), ln, "module")
            if a.ring is not r or b.ring is not r:
                raise WorkspaceError(ln, toks[6].col, "type mismatch: factors must be modules over "
                                     f"{toks[3].text}")
            m, end = direct_sum(a, b), 8
        elif how.text == "quotient":
            base = self._ref(self._take(toks, 6, ln, "a module"), ln, "module")
            sub = self._ref(self._take(toks, 7, ln, "a submodule"), ln, "submodule")
            if sub.host is not base or base.ring is not r:
                raise WorkspaceError(ln, toks[7].col, "type mismatch: submodule is not in that module")
            m, proj = quotient_module(base, sub)
            self.projections[id(m)] = proj
            end = 8
        elif how.text == "table":
            path = self._take(toks, 6, ln, "a file path")
            full = self.doc.base_dir / path.text
            try:
                m = module_from_table_file(r, full)
            except OSError as exc:
                raise WorkspaceError(ln, path.col, f"cannot read {path.text}: {exc.strerror}") from None
            end = 7
        else:
            raise WorkspaceError(ln, how.col, f"unknown module constructor {how.text!r}")
        self._end(toks, end, ln)
        self._declare("module", name, ln, m)

    def _st_modhom(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "=")
        a = self._ref(self._take(toks, 3, ln, "a module"), ln, "module")
        self._expect(toks, 4, ln, "->")
        b = self._ref(self._take(toks, 5, ln, "a module"), ln, "module")
        how = self._take(toks, 6, ln, "natural or table")
        if how.text == "natural":
            h = self._natural_modhom(a, b, ln, how.col)
            end = 7
        elif how.text == "table":
            img = self._elements(self._take(toks, 7, ln, "a list"), ln, b)
            ring_map = None if a.ring is b.ring else natural_hom(a.ring, b.ring)
            h, end = ModuleHom(a, b, img, ring_map), 8
        else:
            raise WorkspaceError(ln, how.col, f"expected natural or table, found {how.text!r}")
        self._end(toks, end, ln)
        self._declare("modhom", name, ln, h)

    def _natural_modhom(self, a, b, ln, col) -> ModuleHom:
        proj = self.projections.get(id(b))
        if proj is not None and proj.domain is a:
            return proj
        if a is b:
            return ModuleHom(a, a, np.arange(a.order), validate=False)
        if a.recipe[0] == "regular" and b.recipe[0] == "regular":
            f = natural_hom(a.ring, b.ring)
            return ModuleHom(a, b, f.image, f)
        raise WorkspaceError(ln, col, "no natural map between these modules")

    def _st_submodule(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "of")
        m = self._ref(self._take(toks, 3, ln, "a module"), ln, "module")
        self._expect(toks, 4, ln, "=")
        self._expect(toks, 5, ln, "gen")
        gens = self._elements(self._take(toks, 6, ln, "a list"), ln, m)
        self._end(toks, 7, ln)
        self._declare("submodule", name, ln, span_submodule(m, gens))

    def _st_corpus(self, toks, ln):
        name = self._take(toks, 1, ln, "a name")
        self._expect(toks, 2, ln, "=")
        kw = {}
        pos = 3
        keys = {"max_ring": "max_ring_order", "max_module": "max_module_order", "seed": "seed"}
        while pos < len(toks):
            key = toks[pos]
            if key.text in keys:
                kw[keys[key.text]] = self._int(self._take(toks, pos + 1, ln, "a number"), ln)
            elif key.text == "kinds":
                kinds = self._list(self._take(toks, pos + 1, ln, "a list"), ln)
                bad = [k for k in kinds if k not in KINDS]
                if bad:
                    raise WorkspaceError(ln, toks[pos + 1].col, f"unknown ring kinds {bad}")
                kw["kinds"] = tuple(kinds)
            else:
                raise WorkspaceError(ln, key.col, f"unknown corpus field {key.text!r}")
            pos += 2
        try:
            spec = CorpusSpec(**kw)
        except ValueError as exc:
            raise WorkspaceError(ln, toks[0].col, str(exc)) from None
        self._declare("corpus", name, ln, spec)

    def _st_emit(self, toks, ln):
        self._expect(toks, 1, ln, "json")
        path = self._take(toks, 2, ln, "a path")
        self._end(toks, 3, ln)
        self.doc.emits.append(self.doc.base_dir / path.text)

    def _st_query(self, toks, ln):
        kind = self._take(toks, 1, ln, "classify, theorems or search")
        if kind.text == "classify":
            sub = self._ref(self._take(toks, 2, ln, "a submodule"), ln, "submodule")
            sset = self._ref(self._take(toks, 3, ln, "a multiplicative set"), ln, "mset")
            if sset.host is not sub.host.ring:
                raise WorkspaceError(ln, toks[3].col, "type mismatch: set is over a different ring")
            method = "definitional"
            if len(toks) > 4:
                opt = toks[4]
                key, _, val = opt.text.partition("=") if opt.kind == "word" else ("", "", "")
                if opt.kind == "word" and key == "method" and not val and len(toks) > 6:
                    val = toks[6].text
                    self._end(toks, 7, ln)
                elif key == "method" and val:
                    self._end(toks, 5, ln)
                elif len(toks) > 5 and opt.text == "method" and toks[5].text == "=":
                    val = self._take(toks, 6, ln, "a method").text
                    self._end(toks, 7, ln)
                else:
                    raise WorkspaceError(ln, opt.col, f"unexpected {opt.text!r}")
                if val not in METHODS:
                    raise WorkspaceError(ln, opt.col, f"unknown method {val!r}; expected {METHODS}")
                method = val
            args = {"N": (toks[2].text, sub), "S": (toks[3].text, sset), "method": method}
        elif kind.text == "theorems":
            ids_tok = self._take(toks, 2, ln, "a theorem list")
            ids = [t.strip().upper() for t in self._list(ids_tok, ln)]
            bad = [t for t in ids if t not in LEDGER]
            if bad:
                raise WorkspaceError(ln, ids_tok.col, f"unknown theorem ids {bad}")
            self._expect(toks, 3, ln, "corpus")
            which = self._take(toks, 4, ln, "default or a corpus name")
            self._end(toks, 5, ln)
            spec = None if which.text == "default" else self._ref(which, ln, "corpus")
            args = {"ids": ids, "corpus": which.text, "spec": spec}
        elif kind.text == "search":
            pred = self._take(toks, 2, ln, "a predicate")
            if pred.text not in PREDICATES and not pred.text.startswith("custom:"):
                raise WorkspaceError(ln, pred.col, f"unknown predicate {pred.text!r}")
            bounds = self._bounds(toks[3:], ln)
            args = {"predicate": pred.text, "bounds": bounds}
        else:
            raise WorkspaceError(ln, kind.col, f"unknown query {kind.text!r}")
        self.doc.queries.append(Query(kind.text, ln, args))

    def _bounds(self, toks, ln) -> dict:
        out = {}
        i = 0
        while i < len(toks):
            tok = toks[i]
            key, eq, val = tok.text.partition("=") if tok.kind == "word" else ("", "", "")
            if not eq:
                # key = value with spaces, or key=[...]
                if i + 2 < len(toks) and toks[i + 1].text == "=":
                    key, val = tok.text, toks[i + 2].text
                    i += 3
                elif tok.kind == "word" and tok.text.endswith("=") and i + 1 < len(toks):
                    key, val = tok.text[:-1], toks[i + 1].text
                    i += 2
                else:
                    raise WorkspaceError(ln, tok.col, f"expected key=value, found {tok.text!r}")
            else:
                i += 1
            if key in ("max_ring", "max_module", "seed"):
                try:
                    out[key] = int(val)
                except (TypeError, ValueError):
                    raise WorkspaceError(ln, tok.col, f"{key} needs an integer") from None
            elif key == "kinds":
                kinds = val if isinstance(val, list) else str(val).split("+")
                bad = [k for k in kinds if k not in KINDS]
                if bad:
                    raise WorkspaceError(ln, tok.col, f"unknown ring kinds {bad}")
                out[key] = tuple(kinds)
            elif key == "fields":
                if val not in ("true", "false"):
                    raise WorkspaceError(ln, tok.col, "fields takes true or false")
                out[key] = val == "true"
            else:
                raise WorkspaceError(ln, tok.col, f"unknown bound {key!r}")
        return out


def parse_workspace(text: str, base_dir: str | Path = ".") -> WorkspaceDocument:
    parser = _Parser(Path(base_dir))
    for lineno, line in enumerate(text.splitlines(), start=1):
        toks = tokenize(line, lineno)
        if toks:
            parser.statement(toks, lineno)
    return parser.doc


def load_workspace(path: str | Path) -> WorkspaceDocument:
    path = Path(path)
    return parse_workspace(path.read_text(encoding="utf-8"), path.parent)


# ---------------------------------------------------------------- execution


@dataclass
class RunConfig:
    jobs: int = 1
    max_ring: int | None = None
    max_module: int | None = None
    timings: bool = False

    def spec(self, base: CorpusSpec | None = None) -> CorpusSpec:
        spec = base or CorpusSpec()
        kw = {}
        if self.max_ring is not None:
            kw["max_ring_order"] = self.max_ring
        if self.max_module is not None:
            kw["max_module_order"] = self.max_module
        return spec.with_bounds(**kw) if kw else spec

    def as_dict(self) -> dict:
        # jobs is deliberately absent: it must not change the report
        return {"max_ring": self.max_ring, "max_module": self.max_module, "timings": self.timings}


def _element_pair(host_r, host_m, pair) -> dict:
    r, x = pair
    return {"r": int(r), "m": int(x), "r_label": host_r.labels[r], "m_label": host_m.labels[x]}


def _classify_record(args):
    (n_name, n), (s_name, s) = args["N"], args["S"]
    rep = classify(n, s, args["method"])
    m = n.host
    counter = {}
    for key, val in rep.counterexamples.items():
        if key in ("prime", "weakly_prime"):
            counter[key] = _element_pair(m.ring, m, val)
        else:
            rec = _element_pair(m.ring, m, val[1:])
            rec["s"], rec["s_label"] = int(val[0]), m.ring.labels[val[0]]
            counter[key] = rec
    ws = list(rep.weakly_s_prime_witnesses or ())
    sp = list(rep.s_prime_witnesses or ())
    result = {"prime": rep.prime, "weakly_prime": rep.weakly_prime, "s_prime": rep.s_prime,
              "weakly_s_prime": rep.weakly_s_prime, "disjoint": rep.disjoint,
              "method": rep.method, "witnesses": ws}
    witnesses = {"weakly_s_prime": ws, "s_prime": sp,
                 "weakly_s_prime_labels": [m.ring.labels[t] for t in ws],
                 "s_prime_labels": [m.ring.labels[t] for t in sp]}
    inputs = {"N": subset_record(n, n_name), "S": subset_record(s, s_name)}
    notes = [] if rep.disjoint else ["(N:M) meets S, so the S-relative verdicts are not applicable"]
    return inputs, result, witnesses, (counter or None), notes, False


def _theorems_record(args, cfg: RunConfig):
    spec = cfg.spec(args["spec"])
    results = run_theorem_suite(args["ids"], spec, jobs=cfg.jobs)
    recs = [r.as_dict(cfg.timings) for r in results]
    failing = [r for r in results if r.counterexample_count]
    first = None
    if failing:
        first = {"theorem_id": failing[0].theorem_id, "instance": failing[0].counterexamples[0]}
    notes = [f"{r.theorem_id}: {t}" for r in results for t in r.interpretation_notes]
    inputs = {"ids": args["ids"], "corpus": args["corpus"], "spec": spec.as_dict()}
    result = {"results": recs, "all_passed": not failing,
              "failing": [r.theorem_id for r in failing]}
    return inputs, result, None, first, notes, bool(failing)


def _search_record(args, cfg: RunConfig):
    bounds = dict(args["bounds"])
    fields_only = bounds.pop("fields", False)
    kw = {}
    if "max_ring" in bounds:
        kw["max_ring_order"] = bounds["max_ring"]
    if "max_module" in bounds:
        kw["max_module_order"] = bounds["max_module"]
    if "kinds" in bounds:
        kw["kinds"] = bounds["kinds"]
    if "seed" in bounds:
        kw["seed"] = bounds["seed"]
    spec = cfg.spec().with_bounds(**kw)
    hit = search(args["predicate"], spec, fields_only=fields_only)
    inputs = {"predicate": args["predicate"], "bounds": plain(args["bounds"]), "spec": spec.as_dict()}
    if hit is None:
        return inputs, {"found": False, "instance": None}, None, None, [], False
    inst = hit.as_dict()
    witnesses = {"weakly_s_prime": inst["verdicts"]["weakly_s_prime_witnesses"],
                 "s_prime": inst["verdicts"]["s_prime_witnesses"]}
    return inputs, {"found": True, "instance": inst}, witnesses, None, [], False


def execute(doc: WorkspaceDocument, cfg: RunConfig | None = None) -> tuple[dict, int]:
    """Run every query in order; returns the report and the exit code."""
    cfg = cfg or RunConfig()
    queries = []
    worst = 0
    for k, q in enumerate(doc.queries, start=1):
        t0 = time.perf_counter()
        rec = {"id": f"q{k}", "kind": q.kind, "line": q.line, "inputs": None, "result": None,
               "witnesses": None, "counterexample": None, "interpretation_notes": [], "error": None}
        try:
            if q.kind == "classify":
                out = _classify_record(q.args)
            elif q.kind == "theorems":
                out = _theorems_record(q.args, cfg)
            else:
                out = _search_record(q.args, cfg)
            inputs, result, witnesses, counter, notes, failed = out
            rec.update(inputs=inputs, result=result, witnesses=witnesses, counterexample=counter,
                       interpretation_notes=notes)
            if failed:
                worst = max(worst, 1)
        except (AlgebraError, ValueError) as exc:
            rec["error"] = {"type": type(exc).__name__, "message": str(exc)}
            worst = max(worst, 1)
        rec["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 1) if cfg.timings else None
        queries.append(rec)
    report = {
        "version": REPORT_VERSION,
        "tool_config": {"tool": "wsprime", "tool_version": __version__, **cfg.as_dict()},
        "declarations": [_declaration_record(d) for d in doc.declarations],
        "warnings": doc.warnings,
        "queries": queries,
    }
    return plain(report), worst


def _declaration_record(d: Declaration) -> dict:
    v = d.value
    if isinstance(v, FiniteRing):
        rec = ring_record(v, d.name)
    elif isinstance(v, FiniteModule):
        rec = module_record(v, d.name)
    elif isinstance(v, (Ideal, Submodule, MultClosedSet)):
        rec = subset_record(v, d.name)
    elif isinstance(v, (RingHom, ModuleHom)):
        rec = {"type": d.kind, "name": d.name, "domain": v.domain.label,
               "codomain": v.codomain.label, "image": v.image.tolist()}
    else:
        rec = {"type": "corpus", "name": d.name, "spec": v.as_dict()}
    rec["line"] = d.line
    return rec


def suite_document() -> WorkspaceDocument:
    doc = WorkspaceDocument()
    doc.queries.append(Query("theorems", 0, {"ids": list(LEDGER), "corpus": "default", "spec": None}))
    return doc
